//! Exact scalars: rationals and Gaussian rationals `a + bi`, `a, b ∈ ℚ`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `re + i·im` with arbitrary-precision rational parts. `BigRational` keeps
/// both parts reduced with a positive denominator.
pub type GaussianRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gq(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn from_rational(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

pub fn from_int(n: i64) -> GaussianRational {
    from_rational(int(n))
}

pub fn imag_unit() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn zero() -> GaussianRational {
    GaussianRational::zero()
}

pub fn one() -> GaussianRational {
    GaussianRational::one()
}

pub trait GaussianExt {
    fn is_real(&self) -> bool;
    fn is_imaginary(&self) -> bool;
    /// `|z|²`, exact.
    fn abs_sqr(&self) -> Rational;
}

impl GaussianExt for GaussianRational {
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    fn abs_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form: `0`, `-3/2`, `i`, `-2/3i`, `1/2+5i`, `1-i`.
pub fn format_scalar(z: &GaussianRational) -> String {
    let im_part = |q: &Rational| -> String {
        if q.abs().is_one() {
            "i".to_string()
        } else {
            format!("{}i", format_rational(&q.abs()))
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_rational(&z.re),
        (true, false) => {
            let sign = if z.im.is_negative() { "-" } else { "" };
            format!("{sign}{}", im_part(&z.im))
        }
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{sign}{}", format_rational(&z.re), im_part(&z.im))
        }
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
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Inverse of [`format_scalar`]; also accepts whitespace and a leading `+`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let bad = || Error::Parse(format!("not a Gaussian rational: {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    if !s.ends_with('i') {
        return parse_rational(s.trim_start_matches('+'))
            .map(from_rational)
            .ok_or_else(bad);
    }
    let body = &s[..s.len() - 1];
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re_txt, im_txt) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_txt.is_empty() {
        Rational::zero()
    } else {
        parse_rational(re_txt.trim_start_matches('+')).ok_or_else(bad)?
    };
    let im = match im_txt {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        t => parse_rational(t.trim_start_matches('+')).ok_or_else(bad)?,
    };
    Ok(gq(re, im))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Writes `value` as `a² + b²` with `a, b` rational, when possible.
///
/// Returns `None` when no rational solution exists, or when the cleared
/// integer `num·den` exceeds the search bound (`u64` with square root below
/// `2³²`).
pub fn sum_of_two_rational_squares(value: &Rational) -> Option<(Rational, Rational)> {
    if value.is_negative() {
        return None;
    }
    if value.is_zero() {
        return Some((Rational::zero(), Rational::zero()));
    }
    // a² + b² = n/m  <=>  (am)² + (bm)² = nm
    let m = value.denom().clone();
    let target = value.numer() * &m;
    let target: u64 = u64::try_from(target).ok()?;
    if !is_sum_of_two_squares(target) {
        return None;
    }
    let mut x = integer_sqrt(target);
    loop {
        let rest = target - x * x;
        let y = integer_sqrt(rest);
        if y * y == rest {
            let m = BigRational::from_integer(m);
            return Some((
                BigRational::from_integer(BigInt::from(x)) / &m,
                BigRational::from_integer(BigInt::from(y)) / &m,
            ));
        }
        if x == 0 {
            return None;
        }
        x -= 1;
    }
}

fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Fermat: `n` is a sum of two squares iff every prime `≡ 3 (mod 4)`
/// divides it to an even power.
pub fn is_sum_of_two_squares(mut n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if p % 4 == 3 && e % 2 == 1 {
            return false;
        }
        p += 1;
    }
    n % 4 != 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_agree() {
        let cases = [
            (gq(rat(1, 2), int(0)), "1/2"),
            (gq(int(0), int(-3)), "-3i"),
            (gq(int(0), int(1)), "i"),
            (gq(rat(1, 2), rat(-1, 3)), "1/2-1/3i"),
            (gq(int(-1), int(1)), "-1+i"),
            (zero(), "0"),
        ];
        for (z, s) in cases {
            assert_eq!(format_scalar(&z), s);
            assert_eq!(parse_scalar(s).unwrap(), z);
        }
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let z = gq(rat(3, 7), rat(-2, 5));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn denominators_stay_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn two_squares() {
        assert!(is_sum_of_two_squares(5));
        assert!(!is_sum_of_two_squares(3));
        assert!(is_sum_of_two_squares(9));
        assert!(!is_sum_of_two_squares(21));
        let (a, b) = sum_of_two_rational_squares(&rat(1, 4)).unwrap();
        assert_eq!(a, rat(1, 2));
        assert_eq!(b, int(0));
        assert!(sum_of_two_rational_squares(&rat(1, 3)).is_none());
        let (a, b) = sum_of_two_rational_squares(&rat(5, 9)).unwrap();
        assert_eq!(&a * &a + &b * &b, rat(5, 9));
    }

    #[test]
    fn perfect_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }
}
