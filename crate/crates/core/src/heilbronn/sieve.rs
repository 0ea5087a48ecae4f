//! The per-conductor scan.

use serde::{Deserialize, Serialize};

use super::{check_condition1, forbidden_residues, size_clause, SieveOutcome, SurvivorReason, Verdict, Witness};
use crate::character::{CharValue, CharacterEngine};
use crate::primes::PrimeList;
use crate::{Error, Result};

/// How far the scan got: `q1`, `q2` and `r` as found, `None` if not reached.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchState {
    pub q1: Option<u64>,
    pub q2: Option<u64>,
    pub r: Option<u64>,
}

/// Run the scan for one conductor `f`.
///
/// Primes are taken from `primes` in ascending order while below `f`. The
/// first two with `chi != 1` become `q1` and `q2`; after that the first `p`
/// with `chi(p) = chi(q2)^-1` and `p mod q1^2` outside the forbidden set is
/// `r`. Every emitted witness is re-checked with [`check_condition1`].
pub fn sieve_conductor<E: CharacterEngine + ?Sized>(
    f: u64,
    ell: u32,
    primes: &PrimeList,
    engine: &E,
) -> Result<SieveOutcome> {
    let spec = engine.spec();
    if spec.f() != f || spec.ell() != ell {
        return Err(Error::Usage(format!(
            "engine is for (f={}, l={}), asked to sieve (f={f}, l={ell})",
            spec.f(),
            spec.ell()
        )));
    }

    let mut search = SearchState::default();
    let mut evals = 0u32;
    let mut zeta = CharValue::ONE;
    let mut forbidden: Vec<u64> = Vec::new();
    let mut q1_sq = 1u64;

    for &p in primes.iter().take_while(|&&p| p < f) {
        let chi = engine.eval(p);
        evals += 1;
        match (search.q1, search.q2) {
            (None, _) => {
                if !chi.is_one() {
                    search.q1 = Some(p);
                    q1_sq = p * p;
                }
            }
            (Some(q1), None) => {
                if !chi.is_one() {
                    search.q2 = Some(p);
                    zeta = chi.inverse(ell);
                    forbidden = forbidden_residues(f, q1, p)?;
                }
            }
            (Some(_), Some(_)) => {
                if chi == zeta && forbidden.binary_search(&(p % q1_sq)).is_err() {
                    search.r = Some(p);
                    break;
                }
            }
        }
    }

    let verdict = match search {
        SearchState {
            q1: Some(q1),
            q2: Some(q2),
            r: Some(r),
        } => {
            if size_clause(f, q1, q2, r) {
                if !check_condition1(f, ell, q1, q2, r, engine) {
                    return Err(Error::Invariant(format!(
                        "witness f={f}, q1={q1}, q2={q2}, r={r} failed re-validation"
                    )));
                }
                Verdict::Eliminated(Witness { f, ell, q1, q2, r })
            } else {
                Verdict::Survivor(SurvivorReason::SizeClauseFailed)
            }
        }
        _ => Verdict::Survivor(SurvivorReason::RanOutOfPrimes),
    };
    Ok(SieveOutcome {
        f,
        verdict,
        search,
        evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{make_spec, PowModEngine, TableEngine};
    use crate::eisenstein::CubicEngine;
    use crate::primes::sieve_eratosthenes;

    fn run(f: u64, ell: u32, primes: &PrimeList) -> SieveOutcome {
        let e = PowModEngine::new(&make_spec(f, ell).unwrap());
        sieve_conductor(f, ell, primes, &e).unwrap()
    }

    #[test]
    fn small_cubic_examples() {
        let primes = sieve_eratosthenes(1000).unwrap();
        assert!(run(157, 3, &primes).is_survivor());
        let out = run(163, 3, &primes);
        let w = out.witness().unwrap();
        assert_eq!((w.q1, w.q2, w.r), (2, 3, 7));
        assert_eq!(out.evals, 4);
        assert_eq!(out.record().verdict, "eliminated");
    }

    #[test]
    fn size_clause_failure_is_reported() {
        let primes = sieve_eratosthenes(1000).unwrap();
        // 1597 is the largest cubic survivor; r exists but is too large
        let out = run(1597, 3, &primes);
        assert_eq!(out.verdict, Verdict::Survivor(SurvivorReason::SizeClauseFailed));
        assert!(out.search.r.is_some());
        assert_eq!(out.record().verdict, "survivor:size-clause-failed");
    }

    #[test]
    fn short_prime_list_never_misses() {
        // with only the primes up to 5 the scan cannot reach r = 7
        let primes = sieve_eratosthenes(5).unwrap();
        let out = run(163, 3, &primes);
        assert_eq!(out.verdict, Verdict::Survivor(SurvivorReason::RanOutOfPrimes));
        assert_eq!(out.search, SearchState { q1: Some(2), q2: Some(3), r: None });
    }

    #[test]
    fn known_witnesses_near_ten_to_ten() {
        let primes = sieve_eratosthenes(1000).unwrap();
        let cases = [
            (9_999_999_673u64, 5, 7, 17, 7),
            (9_999_999_679, 2, 3, 19, 8),
            (9_999_999_703, 2, 3, 11, 5),
            (9_999_999_727, 7, 11, 19, 8),
            (9_999_999_769, 3, 5, 37, 12),
            (9_999_999_781, 2, 5, 7, 4),
            (9_999_999_787, 3, 5, 29, 10),
            (9_999_999_817, 2, 3, 13, 6),
            (9_999_999_943, 5, 7, 19, 8),
            (9_999_999_967, 5, 7, 11, 5),
        ];
        for (f, q1, q2, r, evals) in cases {
            let e = CubicEngine::new(&make_spec(f, 3).unwrap()).unwrap();
            let out = sieve_conductor(f, 3, &primes, &e).unwrap();
            let w = out.witness().unwrap();
            assert_eq!((w.q1, w.q2, w.r), (q1, q2, r), "f={f}");
            assert_eq!(out.evals, evals, "f={f}");
        }
    }

    #[test]
    fn engine_mismatch_is_a_usage_error() {
        let primes = sieve_eratosthenes(100).unwrap();
        let e = PowModEngine::new(&make_spec(163, 3).unwrap());
        assert!(matches!(sieve_conductor(157, 3, &primes, &e), Err(Error::Usage(_))));
        assert!(matches!(sieve_conductor(163, 5, &primes, &e), Err(Error::Usage(_))));
    }

    #[test]
    fn engines_give_identical_outcomes() {
        let primes = sieve_eratosthenes(10_000).unwrap();
        for f in (7..5000u64).filter(|&f| f % 3 == 1 && crate::primes::is_prime(f)) {
            let spec = make_spec(f, 3).unwrap();
            let a = sieve_conductor(f, 3, &primes, &PowModEngine::new(&spec)).unwrap();
            let b = sieve_conductor(f, 3, &primes, &TableEngine::build(&spec, &primes).unwrap()).unwrap();
            let c = sieve_conductor(f, 3, &primes, &CubicEngine::new(&spec).unwrap()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }
}
