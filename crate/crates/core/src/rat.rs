//! Exact arbitrary-precision rationals.
//!
//! `Rat` is the workhorse for everything that must be exact: breakpoints,
//! partial-fraction coefficients, floor evaluations. Values are always kept
//! in lowest terms with a positive denominator (guaranteed by `num-rational`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub type Rat = BigRational;

/// Exact rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact floor of a rational as a big integer.
pub fn rat_floor(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Fractional part in [0, 1).
pub fn frac_part(x: &Rat) -> Rat {
    x - Rat::from_integer(rat_floor(x))
}

/// x^k for signed k (k < 0 requires x != 0).
pub fn rat_powi(x: &Rat, k: i32) -> Rat {
    if k >= 0 {
        num_traits::pow::pow(x.clone(), k as usize)
    } else {
        num_traits::pow::pow(x.clone(), (-k) as usize).recip()
    }
}

/// True when the rational is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Decimal rendering with the given number of fractional digits, truncated
/// toward zero. Used by reports; exactness is never routed through this.
pub fn to_decimal(x: &Rat, digits: usize) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (ax.numer() * &scale).div_floor(ax.denom());
    let (int_part, frac_part) = scaled.div_rem(&scale);
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer as _;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn floor_matches_integer_division() {
        assert_eq!(rat_floor(&rat(7, 2)), BigInt::from(3));
        assert_eq!(rat_floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(rat_floor(&rat(-8, 2)), BigInt::from(-4));
        assert_eq!(rat_floor(&rat(0, 5)), BigInt::from(0));
    }

    #[test]
    fn frac_part_in_unit_interval() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..500 {
            let x = rat(rng.gen_range(-10_000..10_000), rng.gen_range(1..500));
            let f = frac_part(&x);
            assert!(!f.is_negative() && f < rat_int(1));
            assert!(is_integer(&(&x - &f)));
        }
    }

    #[test]
    fn arithmetic_agrees_with_integers() {
        // Rat arithmetic restricted to integers must agree with i128 arithmetic.
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10_000 {
            let a = rng.gen_range(-1_000_000i64..1_000_000);
            let b = rng.gen_range(-1_000_000i64..1_000_000);
            let (ra, rb) = (rat_int(a), rat_int(b));
            assert_eq!(&ra + &rb, rat_int(a + b));
            assert_eq!(&ra - &rb, rat_int(a - b));
            assert_eq!(
                (&ra * &rb).numer().clone(),
                BigInt::from(a as i128 * b as i128)
            );
            if b != 0 {
                assert_eq!(rat_floor(&(&ra / &rb)), BigInt::from(a.div_floor(&b)));
            }
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 4), 3), "0.250");
        assert_eq!(to_decimal(&rat(-1, 3), 5), "-0.33333");
        assert_eq!(to_decimal(&rat(22, 7), 0), "3");
    }
}
