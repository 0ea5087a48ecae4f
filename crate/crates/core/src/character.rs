//! A fixed primitive Dirichlet character of odd prime order `l` modulo a
//! prime conductor `f`, and three interchangeable ways to evaluate it.
//!
//! Values are stored as exponents of a fixed primitive `l`-th root of unity,
//! never as complex numbers. The canonical character is pinned down by the
//! residue `w = n0^((f-1)/l) mod f` for the least `n0 >= 2` with `w != 1`:
//! `chi(n) = Root(j)` exactly when `n^((f-1)/l) = w^j (mod f)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::eisenstein::CubicEngine;
use crate::primes::{is_prime, ModContext, PrimeList};
use crate::{Error, Result};

/// Largest conductor for which a lookup table is built unless overridden by
/// the `NESIEVE_TABLE_MAX` environment variable.
pub const DEFAULT_TABLE_MAX: u64 = 10_000_000;

pub const TABLE_MAX_ENV: &str = "NESIEVE_TABLE_MAX";

/// Table cap from the environment, falling back to [`DEFAULT_TABLE_MAX`].
pub fn table_limit() -> u64 {
    std::env::var(TABLE_MAX_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TABLE_MAX)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    /// `zeta^e` with `e` in `[0, l)`.
    Root(u32),
}

impl CharValue {
    pub const ONE: CharValue = CharValue::Root(0);

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            Self::Zero => None,
            Self::Root(e) => Some(e),
        }
    }

    pub fn inverse(self, ell: u32) -> Self {
        match self {
            Self::Zero => Self::Zero,
            Self::Root(e) => Self::Root((ell - e) % ell),
        }
    }

    pub fn mul(self, other: Self, ell: u32) -> Self {
        match (self, other) {
            (Self::Root(a), Self::Root(b)) => Self::Root((a + b) % ell),
            _ => Self::Zero,
        }
    }

    /// The complex value, for character-sum magnitudes only.
    pub fn to_complex(self, ell: u32) -> Complex64 {
        match self {
            Self::Zero => Complex64::new(0.0, 0.0),
            Self::Root(e) => Complex64::from_polar(1.0, TAU * e as f64 / ell as f64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    f: u64,
    ell: u32,
    w: u64,
}

impl CharacterSpec {
    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// The canonical root `w`, a primitive `l`-th root of unity mod `f`.
    pub fn w(&self) -> u64 {
        self.w
    }

    /// `(f - 1) / l`
    pub fn power(&self) -> u64 {
        (self.f - 1) / self.ell as u64
    }

    /// `[w^0, w^1, ..., w^(l-1)] mod f`
    pub fn root_powers(&self) -> Vec<u64> {
        let ctx = ModContext::new(self.f);
        std::iter::successors(Some(1u64), |&x| Some(ctx.mul(x, self.w)))
            .take(self.ell as usize)
            .collect()
    }
}

/// Validate `(f, l)` and fix the canonical root.
pub fn make_spec(f: u64, ell: u32) -> Result<CharacterSpec> {
    if ell == 2 || !is_prime(ell as u64) {
        return Err(Error::Precondition(format!("l = {ell} is not an odd prime")));
    }
    if f >= 1 << 63 {
        return Err(Error::Range(format!("conductor {f} exceeds 2^63")));
    }
    if !is_prime(f) {
        return Err(Error::Precondition(format!("conductor {f} is not prime")));
    }
    if f % ell as u64 != 1 {
        return Err(Error::NoCharacter { f, ell });
    }
    let ctx = ModContext::new(f);
    let e = (f - 1) / ell as u64;
    // at most (f-1)/l residues satisfy n^e = 1, so this terminates
    let w = (2..f)
        .map(|n| ctx.pow(n, e))
        .find(|&x| x != 1)
        .expect("an l-th power non-residue exists below f");
    Ok(CharacterSpec { f, ell, w })
}

/// Evaluation contract shared by every engine: all engines built from the
/// same [`CharacterSpec`] agree pointwise.
pub trait CharacterEngine {
    fn spec(&self) -> &CharacterSpec;

    fn eval(&self, n: u64) -> CharValue;
}

/// Which engine to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Table,
    PowMod,
    Cubic,
}

impl std::fmt::Display for EngineKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Table => "table",
            Self::PowMod => "powmod",
            Self::Cubic => "cubic",
        })
    }
}

/// Lookup table of exponents indexed by residue.
#[derive(Clone, Debug)]
pub struct TableEngine {
    spec: CharacterSpec,
    table: Vec<u8>,
}

impl TableEngine {
    pub fn build(spec: &CharacterSpec, primes: &PrimeList) -> Result<Self> {
        Self::build_with_limit(spec, primes, table_limit())
    }

    pub fn build_with_limit(spec: &CharacterSpec, primes: &PrimeList, limit: u64) -> Result<Self> {
        let f = spec.f;
        if f > limit {
            return Err(Error::Resource {
                what: "lookup table size",
                requested: f,
                limit,
            });
        }
        if spec.ell > u8::MAX as u32 {
            return Err(Error::Unsupported(format!(
                "lookup table stores exponents in a byte; l = {} is too large",
                spec.ell
            )));
        }
        let g = primitive_root(f, primes)?;
        let ctx = ModContext::new(f);
        let ell = spec.ell;
        let powmod = PowModEngine::new(spec);
        let step = powmod.eval(g).exponent().expect("g is a unit");

        let mut table = vec![0u8; f as usize];
        let mut x = 1u64;
        let mut e = 0u32;
        for _ in 0..f - 1 {
            table[x as usize] = e as u8;
            x = ctx.mul(x, g);
            e += step;
            if e >= ell {
                e -= ell;
            }
        }
        Ok(Self {
            spec: spec.clone(),
            table,
        })
    }
}

impl CharacterEngine for TableEngine {
    fn spec(&self) -> &CharacterSpec {
        &self.spec
    }

    #[inline]
    fn eval(&self, n: u64) -> CharValue {
        let r = n % self.spec.f;
        if r == 0 {
            CharValue::Zero
        } else {
            CharValue::Root(self.table[r as usize] as u32)
        }
    }
}

/// Least primitive root of the prime `f`, using `primes` to factor `f - 1`.
pub fn primitive_root(f: u64, primes: &PrimeList) -> Result<u64> {
    if f == 2 {
        return Ok(1);
    }
    let factors = primes.distinct_factors(f - 1)?;
    let ctx = ModContext::new(f);
    (2..f)
        .find(|&g| factors.iter().all(|&q| ctx.pow(g, (f - 1) / q) != 1))
        .ok_or_else(|| Error::Precondition(format!("{f} has no primitive root; not prime?")))
}

/// `chi(n)` via one modular exponentiation and a lookup among the `l`
/// powers of `w`.
#[derive(Clone, Debug)]
pub struct PowModEngine {
    spec: CharacterSpec,
    ctx: ModContext,
    power: u64,
    // (w^j mod f, j), sorted by residue
    roots: Vec<(u64, u32)>,
}

impl PowModEngine {
    pub fn new(spec: &CharacterSpec) -> Self {
        let mut roots: Vec<(u64, u32)> = spec
            .root_powers()
            .into_iter()
            .enumerate()
            .map(|(j, r)| (r, j as u32))
            .collect();
        roots.sort_unstable();
        Self {
            spec: spec.clone(),
            ctx: ModContext::new(spec.f),
            power: spec.power(),
            roots,
        }
    }
}

impl CharacterEngine for PowModEngine {
    fn spec(&self) -> &CharacterSpec {
        &self.spec
    }

    fn eval(&self, n: u64) -> CharValue {
        let r = self.ctx.reduce(n);
        if r == 0 {
            return CharValue::Zero;
        }
        let x = self.ctx.pow(r, self.power);
        let i = self
            .roots
            .binary_search_by_key(&x, |&(v, _)| v)
            .expect("n^((f-1)/l) is an l-th root of unity");
        CharValue::Root(self.roots[i].1)
    }
}

/// Any of the three engines behind one concrete type.
#[derive(Clone, Debug)]
pub enum Engine {
    Table(TableEngine),
    PowMod(PowModEngine),
    Cubic(CubicEngine),
}

impl Engine {
    pub fn build(kind: EngineKind, spec: &CharacterSpec, primes: &PrimeList) -> Result<Self> {
        Ok(match kind {
            EngineKind::Table => Self::Table(TableEngine::build(spec, primes)?),
            EngineKind::PowMod => Self::PowMod(PowModEngine::new(spec)),
            EngineKind::Cubic => Self::Cubic(CubicEngine::new(spec)?),
        })
    }

    pub fn kind(&self) -> EngineKind {
        match self {
            Self::Table(_) => EngineKind::Table,
            Self::PowMod(_) => EngineKind::PowMod,
            Self::Cubic(_) => EngineKind::Cubic,
        }
    }
}

impl CharacterEngine for Engine {
    fn spec(&self) -> &CharacterSpec {
        match self {
            Self::Table(e) => e.spec(),
            Self::PowMod(e) => e.spec(),
            Self::Cubic(e) => e.spec(),
        }
    }

    #[inline]
    fn eval(&self, n: u64) -> CharValue {
        match self {
            Self::Table(e) => e.eval(n),
            Self::PowMod(e) => e.eval(n),
            Self::Cubic(e) => e.eval(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSumResult {
    /// `counts[e]` = number of `n` in the interval with `chi(n) = zeta^e`.
    pub counts: Vec<u64>,
    pub magnitude: f64,
}

impl IntervalSumResult {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// The character sum over the integers `n` in `(start, start + len]`.
pub fn interval_sum<E: CharacterEngine + ?Sized>(engine: &E, start: u64, len: u64) -> IntervalSumResult {
    let ell = engine.spec().ell();
    let mut counts = vec![0u64; ell as usize];
    for n in start + 1..=start + len {
        if let CharValue::Root(e) = engine.eval(n) {
            counts[e as usize] += 1;
        }
    }
    let sum: Complex64 = counts
        .iter()
        .enumerate()
        .map(|(e, &c)| CharValue::Root(e as u32).to_complex(ell) * c as f64)
        .sum();
    IntervalSumResult {
        counts,
        magnitude: sum.norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::{gcd, sieve_eratosthenes};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn primes() -> PrimeList {
        sieve_eratosthenes(10_000).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(make_spec(7, 3).unwrap().w(), 4);
        assert_eq!(make_spec(13, 3).unwrap().w(), 3);
        assert!(matches!(make_spec(11, 3), Err(Error::NoCharacter { f: 11, ell: 3 })));
        assert!(make_spec(7, 2).is_err());
        assert!(make_spec(21, 5).is_err());
    }

    #[test]
    fn spec_w_is_nontrivial_root() {
        for (f, ell) in [(31, 3), (31, 5), (29, 7), (23, 11), (9_999_999_673, 3)] {
            let spec = make_spec(f, ell).unwrap();
            assert_ne!(spec.w(), 1);
            assert_eq!(ModContext::new(f).pow(spec.w(), ell as u64), 1);
        }
    }

    #[test]
    fn table_engine_on_seven() {
        let spec = make_spec(7, 3).unwrap();
        let t = TableEngine::build(&spec, &primes()).unwrap();
        let cubes: Vec<u64> = (1..7u64).map(|n| n * n * n % 7).collect();
        for n in 1..7u64 {
            assert_eq!(t.eval(n).is_one(), cubes.contains(&n), "n = {n}");
        }
        assert_eq!(t.eval(1), CharValue::ONE);
        assert_eq!(t.eval(6), CharValue::ONE);
        assert_ne!(t.eval(2), CharValue::ONE);
        assert_eq!(t.eval(7), CharValue::Zero);
    }

    #[test]
    fn table_engine_respects_limit() {
        let spec = make_spec(9_999_999_673, 3).unwrap();
        let base = sieve_eratosthenes(100_000).unwrap();
        assert!(matches!(
            TableEngine::build_with_limit(&spec, &base, DEFAULT_TABLE_MAX),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn powmod_examples() {
        let s7 = PowModEngine::new(&make_spec(7, 3).unwrap());
        assert_eq!(s7.eval(2), CharValue::Root(1));
        assert_eq!(s7.eval(6), CharValue::ONE);
        assert_eq!(s7.eval(14), CharValue::Zero);
        let s13 = PowModEngine::new(&make_spec(13, 3).unwrap());
        assert_eq!(s13.eval(5), CharValue::ONE);
    }

    #[test]
    fn table_agrees_with_powmod_and_values_are_equidistributed() {
        let p = primes();
        for ell in [3u32, 5, 7] {
            for &f in p.iter().filter(|&&f| f % ell as u64 == 1) {
                let spec = make_spec(f, ell).unwrap();
                let table = TableEngine::build(&spec, &p).unwrap();
                let pm = PowModEngine::new(&spec);
                let mut counts = vec![0u64; ell as usize];
                for n in 0..2 * f {
                    let v = table.eval(n);
                    assert_eq!(v, pm.eval(n), "f = {f}, l = {ell}, n = {n}");
                    if n > 0 && n < f {
                        counts[v.exponent().unwrap() as usize] += 1;
                    }
                }
                assert!(counts.iter().all(|&c| c == (f - 1) / ell as u64), "f = {f}");
            }
        }
    }

    #[test]
    fn multiplicativity_fuzz() {
        let p = primes();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let candidates: Vec<(u64, u32)> = [3u32, 5, 7, 11]
            .iter()
            .flat_map(|&ell| {
                p.iter()
                    .copied()
                    .filter(move |&f| f > 50 && f % ell as u64 == 1)
                    .map(move |f| (f, ell))
            })
            .collect();
        for _ in 0..10_000 {
            let (f, ell) = candidates[rng.gen_range(0..candidates.len())];
            let e = PowModEngine::new(&make_spec(f, ell).unwrap());
            let m = rng.gen_range(1..f);
            let n = rng.gen_range(1..f);
            assert_eq!(e.eval(m * n % f), e.eval(m).mul(e.eval(n), ell));
        }
    }

    #[test]
    fn inverse_pairs_with_value() {
        let ell = 7;
        for e in 0..ell {
            let v = CharValue::Root(e);
            assert_eq!(v.mul(v.inverse(ell), ell), CharValue::ONE);
        }
        assert_eq!(CharValue::Zero.inverse(ell), CharValue::Zero);
    }

    #[test]
    fn primitive_roots() {
        let p = primes();
        assert_eq!(primitive_root(7, &p).unwrap(), 3);
        assert_eq!(primitive_root(13, &p).unwrap(), 2);
        assert_eq!(primitive_root(9973, &p).unwrap(), 11);
    }

    #[test]
    fn interval_sum_examples() {
        let p = primes();
        let t7 = TableEngine::build(&make_spec(7, 3).unwrap(), &p).unwrap();
        assert!(interval_sum(&t7, 0, 6).magnitude < 1e-12);
        let full = interval_sum(&t7, 0, 7);
        assert!(full.magnitude < 1e-12);
        assert_eq!(full.total(), 6);

        let t31 = TableEngine::build(&make_spec(31, 3).unwrap(), &p).unwrap();
        let got = interval_sum(&t31, 0, 10);
        // direct complex oracle from the defining power residue
        let spec = make_spec(31, 3).unwrap();
        let w = spec.w();
        let mut z = Complex64::new(0.0, 0.0);
        for n in 1..=10u64 {
            let x = ModContext::new(31).pow(n, 10);
            let j = (0..3).find(|&j| ModContext::new(31).pow(w, j) == x).unwrap();
            z += Complex64::from_polar(1.0, TAU * j as f64 / 3.0);
        }
        assert!((got.magnitude - z.norm()).abs() < 1e-12);
        assert_eq!(got.total(), 10);
    }

    #[test]
    fn interval_sum_counts_bounded() {
        let p = primes();
        let t = TableEngine::build(&make_spec(61, 5).unwrap(), &p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let start = rng.gen_range(0..500);
            let len = rng.gen_range(1..300);
            let r = interval_sum(&t, start, len);
            let coprime = (start + 1..=start + len).filter(|&n| gcd(n, 61) == 1).count() as u64;
            assert_eq!(r.total(), coprime);
            assert!(r.magnitude <= coprime as f64 + 1e-9);
        }
    }
}
