//! Nonnegative magnitude bounds with upward-rounded arithmetic.
//!
//! `Bound` represents `mant * 2^exp` with a 64-bit mantissa and an unbounded
//! binary exponent. All operations round up, so a `Bound` computed from
//! conservative inputs stays conservative. This is the carrier for the
//! absolute-error field of `HPReal`; it never underflows to zero the way an
//! `f64` error budget would.

use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug)]
pub struct Bound {
    mant: u64, // normalized: top bit set, unless the bound is exactly zero
    exp: i64,
}

impl Bound {
    pub const ZERO: Bound = Bound { mant: 0, exp: 0 };

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    /// 2^e.
    pub fn pow2(e: i64) -> Self {
        Bound { mant: 1 << 63, exp: e - 63 }
    }

    fn normalize(mant: u128, exp: i64) -> Self {
        if mant == 0 {
            return Self::ZERO;
        }
        let bits = 128 - mant.leading_zeros() as i64;
        if bits <= 64 {
            let shift = 64 - bits;
            Bound { mant: (mant << shift) as u64, exp: exp - shift }
        } else {
            let shift = (bits - 64) as u32;
            let dropped = mant & ((1u128 << shift) - 1);
            let mut m = (mant >> shift) as u64;
            if dropped != 0 {
                // round up; a carry past 64 bits halves the mantissa exactly
                if m == u64::MAX {
                    return Bound { mant: 1 << 63, exp: exp + shift as i64 + 1 };
                }
                m += 1;
            }
            Bound { mant: m, exp: exp + shift as i64 }
        }
        .renorm()
    }

    fn renorm(self) -> Self {
        if self.mant == 0 {
            return Self::ZERO;
        }
        let lz = self.mant.leading_zeros() as i64;
        Bound { mant: self.mant << lz, exp: self.exp - lz }
    }

    pub fn from_u64(v: u64, exp: i64) -> Self {
        Self::normalize(v as u128, exp)
    }

    /// Upper bound for |n| * 2^exp.
    pub fn from_bigint_mag(n: &BigInt, exp: i64) -> Self {
        let mag = n.abs();
        let bits = mag.bits() as i64;
        if bits == 0 {
            return Self::ZERO;
        }
        if bits <= 64 {
            let (_, digits) = mag.to_u64_digits();
            return Self::normalize(digits[0] as u128, exp);
        }
        // keep top 64 bits, round up
        let shift = (bits - 64) as u64;
        let top: BigInt = &mag >> shift;
        let (_, digits) = top.to_u64_digits();
        let mut m = digits[0];
        if &(&top << shift) != &mag {
            if m == u64::MAX {
                return Bound { mant: 1 << 63, exp: exp + shift as i64 + 1 };
            }
            m += 1;
        }
        Bound { mant: m, exp: exp + shift as i64 }.renorm()
    }

    /// Lower bound for |n| * 2^exp (truncates instead of rounding up).
    pub fn from_bigint_mag_down(n: &BigInt, exp: i64) -> Self {
        let mag = n.abs();
        let bits = mag.bits() as i64;
        if bits == 0 {
            return Self::ZERO;
        }
        if bits <= 64 {
            let (_, digits) = mag.to_u64_digits();
            return Self::normalize(digits[0] as u128, exp);
        }
        let shift = (bits - 64) as u64;
        let top: BigInt = &mag >> shift;
        let (_, digits) = top.to_u64_digits();
        Bound { mant: digits[0], exp: exp + shift as i64 }.renorm()
    }

    /// Saturating lower-bound subtraction: a value certainly >= self - other.
    /// Returns zero when the difference cannot be certified positive.
    pub fn sub_down(self, other: Self) -> Self {
        if other.is_zero() {
            return self;
        }
        if self.cmp_mag(&other) != Ordering::Greater {
            return Self::ZERO;
        }
        let shift = self.exp - other.exp; // >= 0 is not guaranteed; handle both
        let (a, b, exp) = if shift >= 0 {
            if shift >= 64 {
                // other < self's ulp; drop one ulp to stay a lower bound
                return Bound { mant: self.mant - 1, exp: self.exp }.renorm();
            }
            ((self.mant as u128) << shift, other.mant as u128, other.exp)
        } else {
            ((self.mant as u128) << 0, (other.mant as u128) >> (-shift).min(127), self.exp)
        };
        let mut diff = a.saturating_sub(b);
        if shift < 0 {
            // we shifted `other` down (dropping bits makes it smaller, which
            // would overestimate the difference); compensate by one ulp
            diff = diff.saturating_sub(1);
        }
        Self::normalize_down(diff, exp)
    }

    fn normalize_down(mant: u128, exp: i64) -> Self {
        if mant == 0 {
            return Self::ZERO;
        }
        let bits = 128 - mant.leading_zeros() as i64;
        if bits <= 64 {
            let shift = 64 - bits;
            Bound { mant: (mant << shift) as u64, exp: exp - shift }
        } else {
            let shift = (bits - 64) as u32;
            Bound { mant: (mant >> shift) as u64, exp: exp + shift as i64 }
        }
        .renorm()
    }

    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let shift = hi.exp - lo.exp;
        if shift >= 128 {
            // lo is far below hi's ulp; bump by one ulp to stay an upper bound
            return Self::normalize(hi.mant as u128 + 1, hi.exp);
        }
        let lo_shifted = (lo.mant as u128) >> shift;
        let dropped = shift > 0 && (lo.mant as u128) & ((1u128 << shift.min(127)) - 1) != 0;
        let sum = hi.mant as u128 + lo_shifted + if dropped { 1 } else { 0 };
        Self::normalize(sum, hi.exp)
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        let prod = (self.mant as u128) * (other.mant as u128);
        Self::normalize(prod, self.exp + other.exp)
    }

    /// Upper bound of self / div, where `div` must be a LOWER bound of the
    /// true divisor (positive).
    pub fn div(self, div: Self) -> Self {
        assert!(!div.is_zero(), "division by zero lower bound");
        if self.is_zero() {
            return Self::ZERO;
        }
        // ceil((m1 << 64) / m2) * 2^(e1 - e2 - 64)
        let num = (self.mant as u128) << 64;
        let d = div.mant as u128;
        let q = num / d;
        let q = if q * d != num { q + 1 } else { q };
        Self::normalize(q, self.exp - div.exp - 64)
    }

    pub fn scale_pow2(self, k: i64) -> Self {
        if self.is_zero() {
            return self;
        }
        Bound { mant: self.mant, exp: self.exp + k }
    }

    pub fn max(self, other: Self) -> Self {
        if self.cmp_mag(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn cmp_mag(&self, other: &Self) -> Ordering {
        if self.is_zero() || other.is_zero() {
            return (!self.is_zero()).cmp(&!other.is_zero());
        }
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => self.mant.cmp(&other.mant),
            ord => ord,
        }
    }

    /// True if self <= 2^e.
    pub fn le_pow2(&self, e: i64) -> bool {
        self.cmp_mag(&Bound::pow2(e)) != Ordering::Greater
    }

    /// Lossy conversion for reporting. Saturates instead of under/overflowing.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.exp > 960 {
            return f64::INFINITY;
        }
        if self.exp < -1140 {
            return f64::MIN_POSITIVE;
        }
        self.mant as f64 * (self.exp as f64).exp2()
    }

    /// log2 upper bound, for diagnostics.
    pub fn log2_ceil(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + 64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_above(b: Bound, v: f64) {
        let bf = b.to_f64();
        assert!(bf >= v * (1.0 - 1e-12), "{bf} vs {v}");
        assert!(bf <= v * (1.0 + 1e-9) + 1e-300, "{bf} not tight vs {v}");
    }

    #[test]
    fn add_and_mul_are_upper_bounds() {
        let a = Bound::from_u64(3, 0);
        let b = Bound::from_u64(5, -1);
        close_above(a.add(b), 5.5);
        close_above(a.mul(b), 7.5);
    }

    #[test]
    fn far_apart_addition_stays_above() {
        let big = Bound::pow2(100);
        let tiny = Bound::pow2(-500);
        let s = big.add(tiny);
        assert_eq!(s.cmp_mag(&big), Ordering::Greater);
        assert!(s.le_pow2(101));
    }

    #[test]
    fn div_rounds_up() {
        let a = Bound::from_u64(1, 0);
        let d = Bound::from_u64(3, 0);
        let q = a.div(d);
        assert!(q.to_f64() >= 1.0 / 3.0);
        assert!(q.to_f64() <= 1.0 / 3.0 + 1e-15);
    }

    #[test]
    fn bigint_magnitude() {
        let n = BigInt::from(u128::MAX) * BigInt::from(12345u32);
        let b = Bound::from_bigint_mag(&n, -10);
        let approx = 2.0f64.powi(128) * 12345.0 / 1024.0;
        assert!(b.to_f64() >= approx * (1.0 - 1e-12));
        assert!(b.to_f64() <= approx * (1.0 + 1e-9));
    }

    #[test]
    fn no_underflow_to_zero() {
        let mut t = Bound::pow2(-100_000);
        t = t.mul(Bound::pow2(-100_000));
        assert!(!t.is_zero());
        assert!(t.le_pow2(-199_999));
    }
}
