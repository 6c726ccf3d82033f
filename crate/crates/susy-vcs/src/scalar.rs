//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! All symbolic operator algebra in this crate runs over `Gaussian`
//! (complex numbers with rational real and imaginary parts), so identity
//! checks decide equality exactly instead of comparing floats.

use alloc::string::String;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Complex number with rational components; closed under +, -, *, /.
pub type Gaussian = Complex<Rat>;

/// Rational from an integer pair. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Gaussian rational from rational parts.
pub fn gauss(re: Rat, im: Rat) -> Gaussian {
    Complex::new(re, im)
}

/// Real Gaussian rational n/d.
pub fn gauss_rat(n: i64, d: i64) -> Gaussian {
    Complex::new(rat(n, d), Rat::zero())
}

/// Purely imaginary Gaussian rational (n/d)i.
pub fn gauss_im(n: i64, d: i64) -> Gaussian {
    Complex::new(Rat::zero(), rat(n, d))
}

/// The imaginary unit.
pub fn gauss_i() -> Gaussian {
    gauss_im(1, 1)
}

/// The Gaussian rational 1.
pub fn gauss_one() -> Gaussian {
    Complex::new(Rat::one(), Rat::zero())
}

/// The Gaussian rational 0.
pub fn gauss_zero() -> Gaussian {
    Complex::new(Rat::zero(), Rat::zero())
}

/// Error from parsing a rational string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRatError {
    /// The text is not of the form `p` or `p/q` with integer p, q.
    Malformed(String),
    /// The denominator is zero.
    ZeroDenominator,
}

impl core::fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseRatError::Malformed(s) => write!(f, "malformed rational literal {s:?}"),
            ParseRatError::ZeroDenominator => write!(f, "rational literal has zero denominator"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseRatError {}

/// Parses `"p"` or `"p/q"` (optionally signed) into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    use alloc::string::ToString;
    let s = s.trim();
    let malformed = || ParseRatError::Malformed(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| malformed())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseRatError::ZeroDenominator);
    }
    Ok(Rat::new(n, d))
}

/// Rational to nearest f64.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Human-readable Gaussian rational, e.g. `3/4`, `-i`, `1/2+3i`, `1/2-3/5i`.
pub fn gauss_display(g: &Gaussian) -> String {
    let mut out = String::new();
    let re_zero = g.re.is_zero();
    let im_zero = g.im.is_zero();
    if re_zero && im_zero {
        return String::from("0");
    }
    if !re_zero {
        let _ = write!(out, "{}", g.re);
    }
    if !im_zero {
        if g.im.is_one() {
            let _ = write!(out, "{}i", if re_zero { "" } else { "+" });
        } else if (-g.im.clone()).is_one() {
            let _ = write!(out, "-i");
        } else if g.im.is_positive() && !re_zero {
            let _ = write!(out, "+{}i", g.im);
        } else {
            let _ = write!(out, "{}i", g.im);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat(" 7 / 2 ").unwrap(), rat(7, 2));
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(parse_rat("1/0"), Err(ParseRatError::ZeroDenominator)));
        assert!(matches!(parse_rat("x"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(parse_rat("1/2/3"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(parse_rat("1.5"), Err(ParseRatError::Malformed(_))));
    }

    #[test]
    fn gaussian_arithmetic_is_exact() {
        let a = gauss(rat(1, 2), rat(1, 3));
        let b = gauss(rat(1, 2), rat(-1, 3));
        let p = a.clone() * b.clone();
        assert_eq!(p, gauss(rat(13, 36), rat(0, 1)));
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn display_forms() {
        assert_eq!(gauss_display(&gauss_zero()), "0");
        assert_eq!(gauss_display(&gauss_rat(3, 4)), "3/4");
        assert_eq!(gauss_display(&gauss_im(-1, 1)), "-i");
        assert_eq!(gauss_display(&gauss(rat(1, 2), rat(3, 1))), "1/2+3i");
        assert_eq!(gauss_display(&gauss(rat(1, 2), rat(-3, 5))), "1/2-3/5i");
    }
}
