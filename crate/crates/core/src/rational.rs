//! Exact rational arithmetic helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in reduced form.
pub type Rational = num_rational::BigRational;

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or an integer. Decimal and float literals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidMeasure(format!("`{text}` is not a rational literal (expected p/q or an integer)"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for numerators/denominators beyond f64 range.
        let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Solves `A x = b` exactly by Gaussian elimination with partial pivoting on
/// the first non-zero entry. Returns `None` when `A` is singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..n {
                let delta = &factor * &a[col][j];
                a[r][j] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(b)
}

pub(crate) fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1/3").unwrap(), ratio(-1, 3));
        for bad in ["0.5", "1e3", "1/0", "", "1/-2", "a/b", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format(&ratio(5, 8)), "5/8");
        assert_eq!(format(&int(1)), "1");
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let x = solve(a, vec![int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(singular, vec![int(1), int(2)]).is_none());
    }

    proptest::proptest! {
        #[test]
        fn solution_satisfies_system(entries in proptest::collection::vec(-5i64..=5, 9), rhs in proptest::collection::vec(-5i64..=5, 3)) {
            let a: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| int(entries[3 * i + j])).collect()).collect();
            let b: Vec<Rational> = rhs.iter().map(|&x| int(x)).collect();
            if let Some(x) = solve(a.clone(), b.clone()) {
                for i in 0..3 {
                    let lhs: Rational = (0..3).map(|j| &a[i][j] * &x[j]).sum();
                    proptest::prop_assert_eq!(&lhs, &b[i]);
                }
            }
        }
    }
}
