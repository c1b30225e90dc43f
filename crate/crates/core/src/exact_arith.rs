//! Exact rationals and Gaussian rationals, plus the Pochhammer and
//! Gamma-ratio helpers used by the Gegenbauer layer.
//!
//! Text form: `p/q` for reals, `p/q+r/s*i` for complex values, always in
//! lowest terms. `r/s*i` alone is used when the real part vanishes.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Floor of a rational.
pub fn rational_floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

fn render_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type GR = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The integer value, if this is a real integer that fits in `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_real() && self.re.is_integer() {
            self.re.numer().to_i64()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `i^e` for any integer `e`.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    /// Floor of a real value.
    pub fn floor(&self) -> Result<BigInt> {
        if !self.is_real() {
            return Err(Error::NonReal(self.to_string()));
        }
        Ok(rational_floor(&self.re))
    }

    /// Floor as `i64`; panics only if the value is astronomically large.
    pub fn floor_i64(&self) -> Result<i64> {
        Ok(self.floor()?.to_i64().expect("floor out of i64 range"))
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", render_rational(&self.re));
        }
        let im = render_rational(&self.im);
        if self.re.is_zero() {
            return write!(f, "{im}*i");
        }
        if self.im.is_negative() {
            write!(f, "{}{}*i", render_rational(&self.re), im)
        } else {
            write!(f, "{}+{}*i", render_rational(&self.re), im)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(Self::real).ok_or_else(err);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_s {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        let re = if re_s.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_s).ok_or_else(err)?
        };
        Ok(GaussianRational { re, im })
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &r.re, im: &self.im + &r.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &r.re, im: &self.im - &r.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, r: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && r.im.is_zero() {
            return GaussianRational::real(&self.re * &r.re);
        }
        GaussianRational {
            re: &self.re * &r.re - &self.im * &r.im,
            im: &self.re * &r.im + &self.im * &r.re,
        }
    }
}

/// Panics on division by zero, like the primitive types.
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, r: &GaussianRational) -> GaussianRational {
        self.checked_div(r).expect("division by zero")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $f(self, r: GaussianRational) -> GaussianRational {
                (&self).$f(&r)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $f(self, r: &GaussianRational) -> GaussianRational {
                (&self).$f(r)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $f(self, r: GaussianRational) -> GaussianRational {
                self.$f(&r)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, r: &GaussianRational) {
        self.re += &r.re;
        self.im += &r.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, r: &GaussianRational) {
        self.re -= &r.re;
        self.im -= &r.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, r: &GaussianRational) {
        *self = &*self * r;
    }
}

/// Pochhammer symbol `(x)_n = x(x+1)...(x+n-1)`.
pub fn rising_factorial(x: &GR, n: u32) -> GR {
    let mut acc = GR::one();
    let mut y = x.clone();
    let one = GR::one();
    for _ in 0..n {
        acc = &acc * &y;
        y = &y + &one;
    }
    acc
}

/// `Gamma(x+n)/Gamma(x)` read as a rational function of `x`.
///
/// For `n < 0` this is `1/(x+n)_{-n}`, which fails with a pole when the
/// product vanishes.
pub fn gamma_ratio(x: &GR, n: i64) -> Result<GR> {
    if n >= 0 {
        return Ok(rising_factorial(x, n as u32));
    }
    let base = x + &GR::from_int(n);
    let den = rising_factorial(&base, (-n) as u32);
    den.inv()
        .map_err(|_| Error::Pole(format!("Gamma({x}{n:+})/Gamma({x})")))
}

pub fn factorial(n: u32) -> GR {
    rising_factorial(&GR::one(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GR {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(g("3/4"), GR::from_frac(3, 4));
        assert_eq!(g("-6/8"), GR::from_frac(-3, 4));
        assert_eq!(g("1/2+1/3*i"), GR::new(rat(1, 2), rat(1, 3)));
        assert_eq!(g("1/2-i"), GR::new(rat(1, 2), rat(-1, 1)));
        assert_eq!(g("i"), GR::i());
        assert_eq!(g("-i"), -GR::i());
        assert_eq!(g("-2/3*i"), GR::new(rat(0, 1), rat(-2, 3)));
        assert_eq!(g(" -5 "), GR::from_int(-5));
        assert!("1/0".parse::<GR>().is_err());
        assert!("abc".parse::<GR>().is_err());
        assert!("".parse::<GR>().is_err());
    }

    #[test]
    fn render_forms() {
        assert_eq!(GR::new(rat(2, 4), rat(-1, 3)).to_string(), "1/2-1/3*i");
        assert_eq!(GR::i().to_string(), "1*i");
        assert_eq!(GR::from_int(-7).to_string(), "-7");
        assert_eq!(GR::zero().to_string(), "0");
    }

    #[test]
    fn rising_and_gamma_ratio() {
        assert_eq!(rising_factorial(&GR::from_int(3), 4), GR::from_int(360));
        assert_eq!(rising_factorial(&GR::from_int(-2), 3), GR::zero());
        assert_eq!(rising_factorial(&GR::from_int(5), 0), GR::one());
        // Gamma(-3+2)/Gamma(-3) limit: (-3)(-2) = 6
        assert_eq!(gamma_ratio(&GR::from_int(-3), 2).unwrap(), GR::from_int(6));
        // Gamma(-3)/Gamma(0) limit: 1/((-3)(-2)(-1))
        assert_eq!(gamma_ratio(&GR::from_int(0), -3).unwrap(), GR::from_frac(-1, 6));
        assert!(matches!(gamma_ratio(&GR::from_int(1), -1), Err(Error::Pole(_))));
    }

    #[test]
    fn floor_values() {
        assert_eq!(g("-7/2").floor().unwrap(), BigInt::from(-4));
        assert_eq!(g("7/2").floor().unwrap(), BigInt::from(3));
        assert!(matches!(g("1+i").floor(), Err(Error::NonReal(_))));
    }

    fn arb_gr() -> impl Strategy<Value = GR> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(a, b, c, d)| GR::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(x in arb_gr()) {
            prop_assert_eq!(x.to_string().parse::<GR>().unwrap(), x);
        }

        #[test]
        fn field_axioms(x in arb_gr(), y in arb_gr(), z in arb_gr()) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
        }

        #[test]
        fn rising_recurrence(x in arb_gr(), n in 0u32..8) {
            let lhs = rising_factorial(&x, n + 1);
            let rhs = &rising_factorial(&x, n) * &(&x + &GR::from_int(n as i64));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gamma_ratio_composes(x in arb_gr(), n in 0i64..6) {
            // Gamma(x)/Gamma(x+n) * Gamma(x+n)/Gamma(x) = 1 away from poles
            let up = gamma_ratio(&x, n).unwrap();
            if let Ok(down) = gamma_ratio(&(&x + &GR::from_int(n)), -n) {
                prop_assert_eq!(&up * &down, GR::one());
            }
        }
    }
}
