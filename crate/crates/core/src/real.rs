//! Configurable-precision reals with a tracked absolute error bound.
//!
//! An `HPReal` is a point value `mant * 2^exp` (BigInt mantissa, at most
//! `prec` bits) together with a conservative bound `err` on the distance to
//! the true quantity it stands for. Every operation propagates `err` upward;
//! comparisons that the bound cannot decide come back as `None` rather than
//! being resolved silently.

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::rat::Rat;
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub const DEFAULT_PRECISION_BITS: u32 = 192;

#[derive(Clone, Debug)]
pub struct HPReal {
    mant: BigInt,
    exp: i64,
    err: Bound,
    prec: u32,
}

impl HPReal {
    pub fn zero(prec: u32) -> Self {
        HPReal { mant: BigInt::zero(), exp: 0, err: Bound::zero(), prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        let mut r = HPReal { mant: BigInt::from(n), exp: 0, err: Bound::zero(), prec };
        r.round_to_prec();
        r
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        let mut r = HPReal { mant: n, exp: 0, err: Bound::zero(), prec };
        r.round_to_prec();
        r
    }

    pub fn from_rat(x: &Rat, prec: u32) -> Self {
        let p = x.numer();
        let q = x.denom();
        if p.is_zero() {
            return Self::zero(prec);
        }
        let k = prec as i64 + 2 - (p.bits() as i64 - q.bits() as i64);
        let (num, den) = if k >= 0 { (p << k as u64, q.clone()) } else { (p.clone(), q << (-k) as u64) };
        let mant = num / den; // truncates toward zero
        let mut r = HPReal { mant, exp: -k, err: Bound::pow2(-k), prec };
        r.round_to_prec();
        r
    }

    /// Dyadic rationals convert without error.
    pub fn from_pow2(e: i64, prec: u32) -> Self {
        HPReal { mant: BigInt::from(1), exp: e, err: Bound::zero(), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn err_bound(&self) -> Bound {
        self.err
    }

    pub fn widen_err(&mut self, extra: Bound) {
        self.err = self.err.add(extra);
    }

    /// Re-round to a different working precision (raising it is lossless).
    pub fn to_prec(&self, prec: u32) -> Self {
        let mut r = self.clone();
        r.prec = prec;
        r.round_to_prec();
        r
    }

    fn round_to_prec(&mut self) {
        let bits = self.mant.bits();
        if bits <= self.prec as u64 {
            return;
        }
        let shift = bits - self.prec as u64;
        let neg = self.mant.sign() == Sign::Minus;
        let mut mag = self.mant.magnitude().clone();
        let half_up = (&mag >> (shift - 1)) & num_bigint::BigUint::from(1u32);
        mag >>= shift;
        if !half_up.is_zero() {
            mag += 1u32; // round to nearest, ties away from zero
        }
        self.mant = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
        self.exp += shift as i64;
        self.err = self.err.add(Bound::pow2(self.exp - 1));
    }

    /// Upper bound of the point magnitude |mant| * 2^exp.
    pub fn point_mag_upper(&self) -> Bound {
        Bound::from_bigint_mag(&self.mant, self.exp)
    }

    /// Lower bound of the magnitude of the true value.
    pub fn true_mag_lower(&self) -> Bound {
        Bound::from_bigint_mag_down(&self.mant, self.exp).sub_down(self.err)
    }

    /// Upper bound of the magnitude of the true value.
    pub fn true_mag_upper(&self) -> Bound {
        self.point_mag_upper().add(self.err)
    }

    pub fn is_point_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn neg(&self) -> Self {
        HPReal { mant: -&self.mant, exp: self.exp, err: self.err, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        HPReal { mant: self.mant.abs(), exp: self.exp, err: self.err, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.mant.is_zero() {
            let mut r = other.clone();
            r.prec = prec;
            r.err = r.err.add(self.err);
            return r;
        }
        if other.mant.is_zero() {
            let mut r = self.clone();
            r.prec = prec;
            r.err = r.err.add(other.err);
            return r;
        }
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = other.exp + other.mant.bits() as i64;
        let (hi, lo) = if top_a >= top_b { (self, other) } else { (other, self) };
        if top_a.abs_diff(top_b) as u64 > prec as u64 + 8 {
            // the small operand sits entirely below the working precision
            let mut r = hi.clone();
            r.prec = prec;
            r.err = r.err.add(lo.true_mag_upper());
            r.round_to_prec();
            return r;
        }
        let e = self.exp.min(other.exp);
        let mant = (&self.mant << (self.exp - e) as u64) + (&other.mant << (other.exp - e) as u64);
        let mut r = HPReal { mant, exp: e, err: self.err.add(other.err), prec };
        r.round_to_prec();
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let err = self
            .err
            .mul(other.point_mag_upper())
            .add(self.point_mag_upper().mul(other.err))
            .add(self.err.mul(other.err));
        let mut r = HPReal { mant: &self.mant * &other.mant, exp: self.exp + other.exp, err, prec };
        r.round_to_prec();
        r
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let err = self.err.mul(Bound::from_u64(k.unsigned_abs(), 0));
        let mut r =
            HPReal { mant: &self.mant * BigInt::from(k), exp: self.exp, err, prec: self.prec };
        r.round_to_prec();
        r
    }

    pub fn scale_pow2(&self, k: i64) -> Self {
        HPReal { mant: self.mant.clone(), exp: self.exp + k, err: self.err.scale_pow2(k), prec: self.prec }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let prec = self.prec.max(other.prec);
        let den_low = other.true_mag_lower();
        if den_low.is_zero() {
            return Err(Error::Indeterminate("divisor not bounded away from zero".into()));
        }
        if self.mant.is_zero() {
            // quotient point is 0; only the error term survives
            let err = self.err.div(den_low);
            return Ok(HPReal { mant: BigInt::zero(), exp: 0, err, prec });
        }
        let k = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let (num, den) = if k >= 0 {
            (&self.mant << k as u64, other.mant.clone())
        } else {
            (self.mant.clone(), &other.mant << (-k) as u64)
        };
        let q = num / den;
        let exp = self.exp - other.exp - k;
        let trunc = Bound::pow2(exp);
        let prop = self.err.add(self.point_mag_upper().div(Bound::from_bigint_mag_down(
            &other.mant,
            other.exp,
        )).mul(other.err)).div(den_low);
        let mut r = HPReal { mant: q, exp, err: trunc.add(prop), prec };
        r.round_to_prec();
        Ok(r)
    }

    pub fn recip(&self) -> Result<Self> {
        HPReal::from_int(1, self.prec).div(self)
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return HPReal::from_int(1, self.prec);
        }
        let mut base = self.clone();
        let mut acc: Option<HPReal> = None;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Certified sign of the true value: `None` when the error interval
    /// straddles zero.
    pub fn sign_certified(&self) -> Option<Ordering> {
        if self.mant.is_zero() {
            return if self.err.is_zero() { Some(Ordering::Equal) } else { None };
        }
        if self.true_mag_lower().is_zero() {
            return None;
        }
        Some(if self.mant.is_positive() { Ordering::Greater } else { Ordering::Less })
    }

    /// Certified comparison; `None` when the error intervals overlap.
    pub fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        self.sub(other).sign_certified()
    }

    /// True when the error intervals of self and other intersect.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.cmp_certified(other).map_or(true, |o| o == Ordering::Equal)
    }

    /// Natural logarithm. Requires the true value to be certifiably positive.
    pub fn ln(&self) -> Result<Self> {
        let low = self.true_mag_lower();
        if self.mant.sign() != Sign::Plus || low.is_zero() {
            return Err(Error::Domain("ln requires a certifiably positive argument".into()));
        }
        let wprec = self.prec + 32;
        // v = f * 2^E with f in [1, 2)
        let bits = self.mant.bits() as i64;
        let e_top = self.exp + bits - 1;
        let f = HPReal { mant: self.mant.clone(), exp: -(bits - 1), err: Bound::zero(), prec: wprec };
        let mut acc = atanh_series(&f)?.scale_pow2(1);
        if e_top != 0 {
            acc = acc.add(&ln2(wprec).mul_i64(e_top));
        }
        // fold the input error through the derivative bound 1/|x|
        let fold = self.err.div(low);
        let mut r = acc;
        r.err = r.err.add(fold);
        r.prec = self.prec;
        r.round_to_prec();
        Ok(r)
    }

    /// Decimal rendering of the point value, truncated to `frac_digits`.
    pub fn to_decimal(&self, frac_digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(frac_digits);
        let scaled_num = &self.mant * &scale;
        let scaled: BigInt = if self.exp >= 0 {
            scaled_num << self.exp as u64
        } else {
            scaled_num >> (-self.exp) as u64
        };
        let neg = scaled.is_negative();
        let mag = scaled.magnitude();
        let ten = num_bigint::BigUint::from(10u32).pow(frac_digits);
        let int_part = mag / &ten;
        let frac = mag % &ten;
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = frac_digits as usize)
        }
    }

    /// Lossy f64 view of the point value, for logs and coarse screens.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        let (top, shift) = if bits > 53 {
            let s = bits - 53;
            let t: BigInt = &self.mant >> s;
            (t, s as i64)
        } else {
            (self.mant.clone(), 0)
        };
        let tf = top.to_string().parse::<f64>().unwrap_or(0.0);
        tf * ((self.exp + shift) as f64).exp2()
    }
}

/// atanh((f-1)/(f+1)) for f in [1, 2), i.e. ln(f)/2 via the series
/// u + u^3/3 + u^5/5 + ... with u in [0, 1/3).
fn atanh_series(f: &HPReal) -> Result<HPReal> {
    let prec = f.prec();
    let one = HPReal::from_int(1, prec);
    let u = f.sub(&one).div(&f.add(&one))?;
    if u.is_point_zero() && u.err_bound().is_zero() {
        return Ok(HPReal::zero(prec));
    }
    let u2 = u.mul(&u);
    let mut pow = u.clone();
    let mut acc = u.clone();
    let target = -(prec as i64) - 8;
    let mut k = 1u32;
    loop {
        pow = pow.mul(&u2);
        k += 2;
        let term = pow.div(&HPReal::from_int(k as i64, prec))?;
        acc = acc.add(&term);
        if term.true_mag_upper().le_pow2(target) {
            // geometric tail: ratio u^2 < 1/9, so the tail is < term / 8
            let tail = term.true_mag_upper().scale_pow2(-3);
            let mut r = acc;
            r.widen_err(tail);
            return Ok(r);
        }
        if k > 16 * prec {
            return Err(Error::Internal("atanh series failed to converge".into()));
        }
    }
}

/// ln 2 = 2 atanh(1/3), cached per working precision.
pub fn ln2(prec: u32) -> HPReal {
    static CACHE: OnceLock<Mutex<HashMap<u32, HPReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let wprec = prec + 16;
    let u = HPReal::from_rat(&crate::rat::rat(1, 3), wprec);
    let u2 = u.mul(&u);
    let mut pow = u.clone();
    let mut acc = u.clone();
    let mut k = 1u32;
    loop {
        pow = pow.mul(&u2);
        k += 2;
        let term = pow.div(&HPReal::from_int(k as i64, wprec)).expect("exact divisor");
        acc = acc.add(&term);
        if term.true_mag_upper().le_pow2(-(wprec as i64) - 8) {
            acc.widen_err(term.true_mag_upper().scale_pow2(-3));
            break;
        }
    }
    let mut result = acc.scale_pow2(1);
    result.prec = prec;
    result.round_to_prec();
    cache.lock().unwrap().insert(prec, result.clone());
    result
}
