//! Explicit constants: Burgess-type character sum constants `C(r)`, the
//! auxiliary `D(k)`, `E(k)`, `E'(k)`, the conductor bounds `C_l` beyond
//! which no field is norm-Euclidean, the two special-case thresholds, and
//! brute-force checks of two elementary prime lemmas.
//!
//! Everything is computed in `f64` and rounded up at the last printed digit.
//! `log` is the natural logarithm.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::primes::{is_prime, sieve_eratosthenes};
use crate::{Error, Result};

/// Decimal with four places, stored in ten-thousandths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fixed4(pub u64);

impl Fixed4 {
    /// Smallest multiple of `1e-4` that is `>= x`.
    pub fn round_up(x: f64) -> Self {
        assert!(x.is_finite() && x >= 0.0, "Fixed4 needs a finite non-negative value, got {x}");
        Self((x * 1e4).ceil() as u64)
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 1e4
    }
}

impl fmt::Display for Fixed4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:04}", self.0 / 10_000, self.0 % 10_000)
    }
}

/// Five significant figures, `mantissa * 10^(exp - 4)` with
/// `10000 <= mantissa <= 99999`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sci5 {
    pub mantissa: u32,
    pub exp: i32,
}

impl Sci5 {
    /// Round a positive `x` up to five significant figures.
    pub fn round_up(x: f64) -> Self {
        assert!(x.is_finite() && x > 0.0, "Sci5 needs a finite positive value, got {x}");
        let mut exp = x.log10().floor() as i32;
        let mut m = (x / 10f64.powi(exp - 4)).ceil();
        // log10 can land one off near powers of ten
        if m < 10_000.0 {
            exp -= 1;
            m = (x / 10f64.powi(exp - 4)).ceil();
        }
        if m >= 100_000.0 {
            exp += 1;
            m = (x / 10f64.powi(exp - 4)).ceil();
        }
        Self {
            mantissa: m as u32,
            exp,
        }
    }

    pub fn value(self) -> f64 {
        self.mantissa as f64 * 10f64.powi(self.exp - 4)
    }
}

impl fmt::Display for Sci5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:04}e{}", self.mantissa / 10_000, self.mantissa % 10_000, self.exp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BurgessParams {
    pub r: u32,
    pub d: f64,
    pub p0: f64,
}

impl BurgessParams {
    pub const D: f64 = 11.0;
    pub const P0: f64 = 2e4;

    /// `d = 11`, `p0 = 2 * 10^4`.
    pub fn standard(r: u32) -> Self {
        Self {
            r,
            d: Self::D,
            p0: Self::P0,
        }
    }
}

/// `C(r) = max(C1, C2, 1)` rounded up, where `C1` solves
/// `C^r p0^(1/4 - 1/(4r)) (log p0)^(1/2) = 4 d (d + 1) r` and
/// `C2 = ((d + 1)(2r - 1)(4r - 1))^(1/(2r)) / (1 - 2 / d^(1 - 1/r))`.
pub fn burgess_c(params: BurgessParams) -> Result<Fixed4> {
    let BurgessParams { r, d, p0 } = params;
    if r < 2 {
        return Err(Error::Precondition(format!("r = {r} must be at least 2")));
    }
    if d.is_nan() || d <= 4.0 || d.is_infinite() {
        return Err(Error::Precondition(format!("d = {d} must exceed 4")));
    }
    if p0.is_nan() || p0 < 2.0 || p0.is_infinite() {
        return Err(Error::Precondition(format!("p0 = {p0} must be at least 2")));
    }
    let rf = r as f64;
    let c1 = (4.0 * d * (d + 1.0) * rf / (p0.powf(0.25 - 0.25 / rf) * p0.ln().sqrt())).powf(1.0 / rf);
    let c2 = ((d + 1.0) * (2.0 * rf - 1.0) * (4.0 * rf - 1.0)).powf(0.5 / rf) / (1.0 - 2.0 / d.powf(1.0 - 1.0 / rf));
    Ok(Fixed4::round_up(c1.max(c2).max(1.0)))
}

/// `C(r)` with the standard parameters.
pub fn burgess_c_standard(r: u32) -> Result<Fixed4> {
    burgess_c(BurgessParams::standard(r))
}

/// `K1 (1 + 1/C) C / K2` rounded up, with `K1 = (1 + q1^(1/k - 1))(1 + q2^(1/k - 1))`
/// and `K2 = (1 - 1/q1)(1 - 1/q2)`.
pub fn d_constant(k: u32, q1min: u64, q2min: u64, c: Fixed4) -> Result<Fixed4> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    if !(q1min < q2min && is_prime(q1min) && is_prime(q2min)) {
        return Err(Error::Precondition(format!(
            "need primes q1 < q2, got {q1min}, {q2min}"
        )));
    }
    if c.0 == 0 {
        return Err(Error::Precondition("C must be positive".into()));
    }
    let e = 1.0 / k as f64 - 1.0;
    let (q1, q2) = (q1min as f64, q2min as f64);
    let k1 = (1.0 + q1.powf(e)) * (1.0 + q2.powf(e));
    let k2 = (1.0 - 1.0 / q1) * (1.0 - 1.0 / q2);
    let c = c.value();
    Ok(Fixed4::round_up(k1 * (1.0 + 1.0 / c) * c / k2))
}

/// Which lower bounds on `(q1, q2)` a `D` constant assumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DSet {
    /// `(2, 3)`
    One,
    /// `(101, 103)`
    Two,
}

impl DSet {
    pub fn primes(self) -> (u64, u64) {
        match self {
            Self::One => (2, 3),
            Self::Two => (101, 103),
        }
    }
}

/// `D(k)` for the given set, built on the rounded `C(k)`.
pub fn d_standard(set: DSet, k: u32) -> Result<Fixed4> {
    let (q1, q2) = set.primes();
    d_constant(k, q1, q2, burgess_c_standard(k)?)
}

/// `E(k) = 18.9 D2(k)^k`, five significant figures, rounded up.
pub fn e_constant(k: u32) -> Result<Sci5> {
    let d2 = d_standard(DSet::Two, k)?.value();
    Ok(Sci5::round_up(18.9 * d2.powi(k as i32)))
}

/// `E'(k) = 932 * 711 * D1(k)^k`, five significant figures, rounded up.
pub fn eprime_constant(k: u32) -> Result<Sci5> {
    let d1 = d_standard(DSet::One, k)?.value();
    Ok(Sci5::round_up(932.0 * 711.0 * d1.powi(k as i32)))
}

/// The `k` used for degree `l`: 5 for `l = 3`, 4 for `3 < l < 61`, else 3.
pub fn k_rule(ell: u32) -> u32 {
    match ell {
        3 => 5,
        l if l < 61 => 4,
        _ => 3,
    }
}

/// `(1/4 - 1/(4k)) log f - [log E(k) + k log(l - 1) + (7/2) log log f]`
/// as a function of `L = log f`; non-negative iff the bound holds.
fn db_margin(log_e: f64, ell: u32, k: u32, log_f: f64) -> f64 {
    let kf = k as f64;
    (0.25 - 0.25 / kf) * log_f - (log_e + kf * ((ell - 1) as f64).ln() + 3.5 * log_f.ln())
}

fn check_k(k: u32) -> Result<()> {
    if (2..=8).contains(&k) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("k = {k} outside 2..=8")))
    }
}

/// `E(k) (l - 1)^k (log f)^(7/2) <= f^(1/4 - 1/(4k))`, compared on a log scale.
pub fn check_db_inequality(ell: u32, k: u32, f: f64) -> Result<bool> {
    check_k(k)?;
    if f.is_nan() || f <= 1.0 {
        return Ok(false);
    }
    check_db_inequality_log(ell, k, f.ln())
}

/// [`check_db_inequality`] with `log f` given directly, for `f` beyond `f64`.
pub fn check_db_inequality_log(ell: u32, k: u32, log_f: f64) -> Result<bool> {
    check_k(k)?;
    if ell < 2 {
        return Err(Error::Precondition(format!("l = {ell} must be at least 2")));
    }
    if log_f.is_nan() || log_f <= 0.0 {
        return Ok(false);
    }
    let log_e = e_constant(k)?.value().ln();
    Ok(db_margin(log_e, ell, k, log_f) >= 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClResult {
    pub ell: u32,
    pub k: u32,
    /// `log10` of the crossing point `f*`.
    pub log10_crossing: f64,
    /// Smallest `t` with `10^t >= f*`.
    pub tight_exponent: u32,
    /// Reported bound `C_l = 10^exponent`, one order above the tight power.
    pub exponent: u32,
}

/// Largest `log f` the crossing search will consider.
pub const CL_SEARCH_MAX_LOG10: f64 = 200.0;

/// Relative tolerance of the bisection on `log f`.
pub const CL_TOLERANCE: f64 = 1e-9;

/// Locate the crossing of the bound for degree `l` with `k = k_rule(l)`.
///
/// As a function of `L = log f` the margin has derivative `a - 7/(2L)` with
/// `a = 1/4 - 1/(4k)`, so it decreases up to `L0 = 7/(2a)` and increases
/// after. The search starts at `L0` and the crossing is unique past it. The
/// result is checked at both reported powers of ten and on a grid above them.
pub fn cl_bound(ell: u32) -> Result<ClResult> {
    if ell < 3 || !is_prime(ell as u64) {
        return Err(Error::Precondition(format!("l = {ell} is not an odd prime")));
    }
    let k = k_rule(ell);
    let log_e = e_constant(k)?.value().ln();
    let margin = |l: f64| db_margin(log_e, ell, k, l);
    let l_max = CL_SEARCH_MAX_LOG10 * std::f64::consts::LN_10;

    let a = 0.25 - 0.25 / k as f64;
    let mut lo = 3.5 / a;
    if margin(lo) >= 0.0 {
        return Err(Error::Solver(format!("bound already holds at its minimum for l = {ell}")));
    }
    let mut hi = lo * 2.0;
    while margin(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > l_max {
            return Err(Error::Solver(format!(
                "no crossing below 10^{CL_SEARCH_MAX_LOG10} for l = {ell}"
            )));
        }
    }
    while (hi - lo) > CL_TOLERANCE * hi {
        let mid = 0.5 * (lo + hi);
        if margin(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let log10_crossing = hi / std::f64::consts::LN_10;
    let tight_exponent = log10_crossing.ceil() as u32;
    let exponent = tight_exponent + 1;

    for t in [tight_exponent, exponent] {
        if !check_db_inequality_log(ell, k, t as f64 * std::f64::consts::LN_10)? {
            return Err(Error::Solver(format!("bound fails at 10^{t} for l = {ell}")));
        }
    }
    let mut t = tight_exponent as f64;
    while t <= CL_SEARCH_MAX_LOG10 {
        if margin(t * std::f64::consts::LN_10) < 0.0 {
            return Err(Error::Solver(format!("bound fails at 10^{t} for l = {ell}")));
        }
        t += 0.25;
    }
    Ok(ClResult {
        ell,
        k,
        log10_crossing,
        tight_exponent,
        exponent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialCase {
    /// `72 (l - 1) f^(1/2) log(4f) + 35 <= f`
    One,
    /// `507 (l - 1) f^(1/2) log(9f) + 448 <= f`
    Two,
}

impl TryFrom<u8> for SpecialCase {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(Error::Usage(format!("no special case {n}; expected 1 or 2"))),
        }
    }
}

/// `f - [c (l - 1) f^(1/2) log(m f) + s]` for the case.
pub fn special_margin(case: SpecialCase, ell: u32, f: f64) -> f64 {
    let (c, m, s) = match case {
        SpecialCase::One => (72.0, 4.0, 35.0),
        SpecialCase::Two => (507.0, 9.0, 448.0),
    };
    f - (c * (ell - 1) as f64 * f.sqrt() * (m * f).ln() + s)
}

/// Least integer `f0` with the case's inequality holding for every `f >= f0`.
///
/// The margin is negative at `f = 1` and its derivative
/// `1 - c (l - 1)(log(m f) + 2) / (2 sqrt f)` changes sign once, so there is a
/// single crossing; integer bisection finds it. The result is checked at
/// `f0`, `f0 - 1` and on a geometric grid above `f0`.
pub fn special_threshold(case: SpecialCase, ell: u32) -> Result<u64> {
    if ell < 3 || !is_prime(ell as u64) {
        return Err(Error::Precondition(format!("l = {ell} is not an odd prime")));
    }
    let holds = |f: u64| special_margin(case, ell, f as f64) >= 0.0;
    let mut lo = 1u64;
    let mut hi = 2u64;
    while !holds(hi) {
        lo = hi;
        hi = hi
            .checked_mul(2)
            .filter(|&h| h < 1 << 62)
            .ok_or_else(|| Error::Solver(format!("no special threshold below 2^62 for l = {ell}")))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let f0 = hi;
    if holds(f0 - 1) {
        return Err(Error::Solver(format!("special threshold for l = {ell} is not sharp")));
    }
    let mut g = f0 as f64;
    for _ in 0..200 {
        if special_margin(case, ell, g) < 0.0 {
            return Err(Error::Solver(format!("special inequality fails again at {g:e} for l = {ell}")));
        }
        g *= 1.25;
    }
    Ok(f0)
}

/// Largest value of the prime-sum ratio on `[2, X]` and where it occurs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PisumReport {
    pub x: u64,
    pub max_ratio: f64,
    pub argmax: u64,
    /// `max_ratio < 1/3`
    pub holds: bool,
}

pub const PISUM_X_MAX: u64 = 10_000_000;

/// Maximum over `2 <= X' <= X` of `(1/pi(X')) * sum_{p <= X'} (pi(p) - 1)/p`.
///
/// Both the count and the sum only move at primes, so the maximum is taken
/// over primes `X'`.
pub fn verify_pisum(x: u64) -> Result<PisumReport> {
    if x > PISUM_X_MAX {
        return Err(Error::Resource {
            what: "prime-sum limit",
            requested: x,
            limit: PISUM_X_MAX,
        });
    }
    if x < 2 {
        return Err(Error::Precondition(format!("X = {x} has no primes below it")));
    }
    let primes = sieve_eratosthenes(x)?;
    let mut sum = 0.0f64;
    let mut best = (f64::NEG_INFINITY, 2u64);
    for (i, &p) in primes.iter().enumerate() {
        sum += i as f64 / p as f64;
        let ratio = sum / (i + 1) as f64;
        if ratio > best.0 {
            best = (ratio, p);
        }
    }
    Ok(PisumReport {
        x,
        max_ratio: best.0,
        argmax: best.1,
        holds: best.0 < 1.0 / 3.0,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoprimeLemmaReport {
    pub qmax: u64,
    /// Primes checked against the `2.1 log q` form (all but 2, 3, 7).
    pub checked_21: u64,
    pub failures_21: Vec<u64>,
    /// Primes checked against the `3 log q` form (all but 2, 3).
    pub checked_3: u64,
    pub failures_3: Vec<u64>,
}

impl CoprimeLemmaReport {
    pub fn is_clean(&self) -> bool {
        self.failures_21.is_empty() && self.failures_3.is_empty()
    }
}

pub const COPRIME_QMAX: u64 = 1_000_000;

/// Product of the primes `p < bound`, saturating.
fn primorial_below(primes: &[u64], bound: f64) -> u128 {
    primes
        .iter()
        .take_while(|&&p| (p as f64) < bound)
        .fold(1u128, |acc, &p| acc.saturating_mul(p as u128))
}

/// For every prime `q <= qmax`, check that the primes below `c log q`
/// multiply to more than `q - 1`, so no `u < q` is divisible by all of them.
/// Done for `c = 2.1` (q not 2, 3, 7) and `c = 3` (q not 2, 3).
pub fn verify_prime_coprime_lemma(qmax: u64) -> Result<CoprimeLemmaReport> {
    if qmax > COPRIME_QMAX {
        return Err(Error::Resource {
            what: "coprime lemma limit",
            requested: qmax,
            limit: COPRIME_QMAX,
        });
    }
    let mut report = CoprimeLemmaReport {
        qmax,
        ..Default::default()
    };
    if qmax < 2 {
        return Ok(report);
    }
    let primes = sieve_eratosthenes(qmax)?;
    let small = sieve_eratosthenes(100)?;
    for &q in primes.iter() {
        let log_q = (q as f64).ln();
        let need = (q - 1) as u128;
        if ![2, 3, 7].contains(&q) {
            report.checked_21 += 1;
            if primorial_below(small.as_slice(), 2.1 * log_q) <= need {
                report.failures_21.push(q);
            }
        }
        if ![2, 3].contains(&q) {
            report.checked_3 += 1;
            if primorial_below(small.as_slice(), 3.0 * log_q) <= need {
                report.failures_3.push(q);
            }
        }
    }
    Ok(report)
}

/// `(r, C(r))` for `r = 2..=15`.
pub fn c_burgess_table() -> Result<Vec<(u32, Fixed4)>> {
    (2..=15).map(|r| Ok((r, burgess_c_standard(r)?))).collect()
}

/// `(k, D(k))` for `k = 2..=15`.
pub fn d_table(set: DSet) -> Result<Vec<(u32, Fixed4)>> {
    (2..=15).map(|k| Ok((k, d_standard(set, k)?))).collect()
}

/// `(k, E(k), E'(k))` for `k = 2..=8`.
pub fn e_table() -> Result<Vec<(u32, Sci5, Sci5)>> {
    (2..=8)
        .map(|k| Ok((k, e_constant(k)?, eprime_constant(k)?)))
        .collect()
}

/// [`cl_bound`] for every odd prime below 100.
pub fn c_ell_table() -> Result<Vec<ClResult>> {
    (3..100u32)
        .filter(|&l| is_prime(l as u64))
        .map(cl_bound)
        .collect()
}

/// `(l, f0 for case 1, f0 for case 2)` for `l = 3, 5, 7`.
pub fn special_table() -> Result<Vec<(u32, u64, u64)>> {
    [3, 5, 7]
        .into_iter()
        .map(|l| {
            Ok((
                l,
                special_threshold(SpecialCase::One, l)?,
                special_threshold(SpecialCase::Two, l)?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed4_formatting_and_rounding() {
        assert_eq!(Fixed4::round_up(10.03651).to_string(), "10.0366");
        assert_eq!(Fixed4::round_up(1.77).to_string(), "1.7700");
        assert_eq!(Fixed4::round_up(0.00001).to_string(), "0.0001");
        assert_eq!(Fixed4(123_4567).to_string(), "123.4567");
    }

    #[test]
    fn sci5_formatting_and_rounding() {
        assert_eq!(Sci5::round_up(3493.51).to_string(), "3.4936e3");
        assert_eq!(Sci5::round_up(99999.5).to_string(), "1.0000e5");
        assert_eq!(Sci5::round_up(1000.0).to_string(), "1.0000e3");
        assert_eq!(Sci5::round_up(0.012345).to_string(), "1.2345e-2");
    }

    #[test]
    fn burgess_constants() {
        assert_eq!(burgess_c_standard(2).unwrap().to_string(), "10.0366");
        assert_eq!(burgess_c_standard(15).unwrap().to_string(), "1.7700");
        assert!(matches!(
            burgess_c(BurgessParams { r: 2, d: 4.0, p0: 2e4 }),
            Err(Error::Precondition(_))
        ));
        // the second branch grows with d
        let big = burgess_c(BurgessParams { r: 2, d: 1e3, p0: 2e4 }).unwrap();
        let bigger = burgess_c(BurgessParams { r: 2, d: 2e3, p0: 2e4 }).unwrap();
        assert!(bigger > big);
    }

    #[test]
    fn burgess_constants_decrease() {
        let t = c_burgess_table().unwrap();
        assert_eq!(t.len(), 14);
        assert!(t.windows(2).all(|w| w[0].1 > w[1].1));
    }

    #[test]
    fn d_constants() {
        let c2 = Fixed4(100_366);
        assert_eq!(d_constant(2, 2, 3, c2).unwrap().to_string(), "89.1550");
        assert_eq!(d_constant(2, 101, 103, c2).unwrap().to_string(), "13.5958");
        assert_eq!(d_constant(8, 2, 3, Fixed4(22_721)).unwrap().to_string(), "20.9692");
        assert!(d_constant(2, 3, 2, c2).is_err());
        assert!(d_constant(1, 2, 3, c2).is_err());
    }

    #[test]
    fn e_constants() {
        assert_eq!(e_constant(2).unwrap().to_string(), "3.4936e3");
        assert_eq!(e_constant(3).unwrap().to_string(), "5.5369e3");
        assert_eq!(e_constant(5).unwrap().to_string(), "2.8503e4");
        let ep = eprime_constant(2).unwrap().value();
        let direct = 932.0 * 711.0 * 89.155f64.powi(2);
        assert!(ep >= direct && ep < direct * 1.0001);
    }

    #[test]
    fn db_inequality_examples() {
        assert!(check_db_inequality(3, 5, 1e70).unwrap());
        assert!(!check_db_inequality(3, 5, 1e10).unwrap());
        assert!(check_db_inequality_log(97, 3, 300.0 * std::f64::consts::LN_10).unwrap());
        assert!(check_db_inequality(3, 9, 1e70).is_err());
    }

    #[test]
    fn cl_bound_examples() {
        let c3 = cl_bound(3).unwrap();
        assert_eq!(c3.k, 5);
        assert!((c3.log10_crossing - 68.234).abs() < 1e-3);
        assert_eq!((c3.tight_exponent, c3.exponent), (69, 70));
        let c97 = cl_bound(97).unwrap();
        assert_eq!(c97.k, 3);
        assert_eq!(c97.exponent, 110);
        assert!(!check_db_inequality_log(3, 5, 68.0 * std::f64::consts::LN_10).unwrap());
        assert!(cl_bound(9).is_err());
    }

    #[test]
    fn k_rule_boundaries() {
        assert_eq!(k_rule(3), 5);
        assert_eq!(k_rule(5), 4);
        assert_eq!(k_rule(59), 4);
        assert_eq!(k_rule(61), 3);
        assert_eq!(k_rule(97), 3);
    }

    #[test]
    fn special_thresholds() {
        let t1 = special_threshold(SpecialCase::One, 3).unwrap();
        assert_eq!(t1, 5_986_671);
        assert!(t1 < 10_000_000);
        let t2 = special_threshold(SpecialCase::Two, 3).unwrap();
        assert!(special_margin(SpecialCase::Two, 3, t2 as f64) >= 0.0);
        assert!(special_margin(SpecialCase::Two, 3, (t2 - 1) as f64) < 0.0);
        assert!(special_threshold(SpecialCase::One, 5).unwrap() > t1);
        assert!(SpecialCase::try_from(3).is_err());
    }

    #[test]
    fn pisum_small_cases() {
        let r = verify_pisum(2).unwrap();
        assert_eq!((r.max_ratio, r.argmax), (0.0, 2));
        // primes 2, 3, 5, 7: (0 + 1/3 + 2/5 + 3/7) / 4 = 61/210
        let r = verify_pisum(10).unwrap();
        assert!((r.max_ratio - 61.0 / 210.0).abs() < 1e-15);
        assert_eq!(r.argmax, 7);
        assert!(verify_pisum(100).unwrap().holds);
        assert!(verify_pisum(PISUM_X_MAX + 1).is_err());
    }

    #[test]
    fn coprime_lemma_small_cases() {
        let r = verify_prime_coprime_lemma(1000).unwrap();
        assert!(r.is_clean(), "{r:?}");
        // 2.1 log 7 < 5, so only 2 and 3 are available and 6 = 7 - 1
        let small = sieve_eratosthenes(100).unwrap();
        assert_eq!(primorial_below(small.as_slice(), 2.1 * 7f64.ln()), 6);
        assert_eq!(primorial_below(small.as_slice(), 2.1 * 11f64.ln()), 30);
    }

    proptest! {
        #[test]
        fn rounding_never_goes_down(x in 1e-3f64..1e12) {
            prop_assert!(Fixed4::round_up(x).value() >= x * (1.0 - 1e-15));
            let s = Sci5::round_up(x);
            prop_assert!(s.value() >= x * (1.0 - 1e-15));
            prop_assert!(s.value() <= x * (1.0 + 1.1e-4));
            prop_assert!((10_000..100_000).contains(&s.mantissa));
        }

        #[test]
        fn db_inequality_is_monotone_past_the_bound(ell_idx in 0usize..24, extra in 0.0f64..100.0) {
            let ells: Vec<u32> = (3..100u32).filter(|&l| is_prime(l as u64)).collect();
            let ell = ells[ell_idx];
            let c = cl_bound(ell).unwrap();
            let log_f = (c.exponent as f64 + extra) * std::f64::consts::LN_10;
            prop_assert!(check_db_inequality_log(ell, c.k, log_f).unwrap());
        }
    }
}
