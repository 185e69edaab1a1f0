//! Exact arithmetic in ℚ(j), j = e^{2πi/3}.
//!
//! Elements are stored in the power basis `a + b·j` with arbitrary-precision
//! rationals. Products are reduced with `j² = -1 - j`, so no `j²` component is
//! ever stored.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `a + b·j` of the Eisenstein rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive cube root of unity.
    pub fn j() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::one() }
    }

    /// `j^k` for any integer `k`.
    pub fn j_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::j(),
            _ => Self::from_ints(-1, -1),
        }
    }

    pub fn from_int(a: i64) -> Self {
        Scalar { a: BigRational::from_integer(BigInt::from(a)), b: BigRational::zero() }
    }

    /// `a + b·j` with integer parts.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Scalar { a: BigRational::from_integer(BigInt::from(a)), b: BigRational::from_integer(BigInt::from(b)) }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero() }
    }

    /// Rational part in the power basis.
    pub fn re_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `j` in the power basis.
    pub fn j_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation `j ↦ j²`, a field automorphism fixing ℚ.
    pub fn conj(&self) -> Self {
        // a + b·j² = (a - b) - b·j
        Scalar { a: &self.a - &self.b, b: -&self.b }
    }

    /// Field norm `x · conj(x) = a² - ab + b²`, always rational and non-negative.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Scalar { a: c.a / &n, b: c.b / n })
    }

    /// Floating-point image under `j = (-1 + i√3)/2`, as (re, im).
    pub fn embed_complex(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Scalar { a: &self.a * r, b: &self.b * r }
    }

    /// Whether the canonical rendering needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero() && *self != Scalar::j_pow(2)
    }

    /// True for negative rationals, so printers can emit `- x` instead of `+ -x`.
    pub fn is_negative_rational(&self) -> bool {
        self.b.is_zero() && self.a.is_negative()
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return fmt_rational(&self.a, f);
        }
        if *self == Scalar::j_pow(2) {
            return f.write_str("j^2");
        }
        if *self == -Scalar::j_pow(2) {
            return f.write_str("-j^2");
        }
        if !self.a.is_zero() {
            fmt_rational(&self.a, f)?;
            f.write_str(if self.b.is_negative() { " - " } else { " + " })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        let b = self.b.abs();
        if !b.is_one() {
            fmt_rational(&b, f)?;
            f.write_str("*")?;
        }
        f.write_str("j")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + bj)(c + dj) = ac + (ad + bc)j + bd j², with j² = -1 - j
        let bd = &self.b * &rhs.b;
        Scalar { a: &self.a * &rhs.a - &bd, b: &self.a * &rhs.b + &self.b * &rhs.a - bd }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Adds `c` to the entry for `k`, dropping the entry when it cancels.
pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}
