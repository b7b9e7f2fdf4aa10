//! Desk-scale exact construction of the rational functions R_n (zeta side)
//! and their beta analogues: evaluation, partial fractions, linear-form
//! coefficients, direct series values, Phi_n factors, and the integrality
//! suite.
//!
//! Everything here except `direct_series_*` is exact rational arithmetic;
//! divisibility checks are exact divisibility tests on big integers.

use crate::collection::{BetaCollection, ZetaCollection};
use crate::error::{Error, Result};
use crate::floor::FloorMatrix;
use crate::rat::{rat, rat_int, Rat};
use crate::real::HPReal;
use crate::tables::NumberTables;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Maximum number of partial-fraction coefficients accepted at desk scale.
const DESK_GUARD: i64 = 1_000_000;

/// A rational function written as const * prod(t + c) / prod(t + e).
/// The common rising-factorial block of numerator and denominator is never
/// materialized: the factor lists come from the cancelled form.
#[derive(Clone, Debug)]
pub struct LinearFactors {
    constant: Rat,
    numerator: Vec<Rat>,
    denominator: Vec<Rat>,
}

fn factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// R_n(t) for a zeta collection, with (t)_{m2 n + 1} cancelled against the
/// theta = 1 rising factorial.
pub fn build_zeta_r(c: &ZetaCollection, n: u32) -> Result<LinearFactors> {
    c.validate()?;
    if n == 0 || n % 2 != 0 {
        return Err(Error::Precondition(format!("n must be a positive even integer, got {n}")));
    }
    let n = n as i64;
    let (m1, m2) = (c.m1, c.m2);
    let g_len = (2 * m1 + m2) * n;
    let mut constant = Rat::from_integer(
        BigInt::from(2).pow(2 * g_len as u32) * BigInt::from(3).pow(3 * g_len as u32),
    );
    for &dj in &c.deltas {
        constant *= Rat::from_integer(factorial((m2 - 2 * dj) * n));
    }
    constant /= Rat::from_integer(factorial(n)).pow((8 * m1 + 3 * m2) as i32);
    constant *= rat_int(2); // (2t + m2 n) = 2 (t + m2 n / 2)

    let mut numerator = Vec::new();
    numerator.push(rat(m2 * n, 2));
    for theta in [rat(1, 2), rat(1, 3), rat(2, 3)] {
        for r in 0..g_len {
            numerator.push(rat_int(-m1 * n + r) + &theta);
        }
    }
    for r in 0..m1 * n {
        numerator.push(rat_int(-m1 * n + r)); // left factor of the theta=1 block
        numerator.push(rat_int(m2 * n + 1 + r)); // right factor
    }
    let mut denominator = Vec::new();
    for &dj in &c.deltas {
        for k in dj * n..=(m2 - dj) * n {
            denominator.push(rat_int(k));
        }
    }
    Ok(LinearFactors { constant, numerator, denominator })
}

/// The beta-side rational function with its 4^(h0-1) normalization.
pub fn build_beta_r(c: &BetaCollection, n: u32) -> Result<LinearFactors> {
    c.validate()?;
    if n == 0 || n % 2 != 0 {
        return Err(Error::Precondition(format!("n must be a positive even integer, got {n}")));
    }
    let n = n as i64;
    let h0 = c.eta0 * n + 1;
    let mut constant = Rat::from_integer(BigInt::from(4).pow((h0 - 1) as u32));
    for &ej in &c.etas {
        constant *= Rat::from_integer(factorial((c.eta0 - 2 * ej) * n));
    }
    constant /= Rat::from_integer(factorial(n)).pow(c.eta0 as i32);
    constant *= rat_int(2); // (2t + h0) = 2 (t + h0/2)

    let mut numerator = Vec::new();
    numerator.push(rat(h0, 2));
    for r in 1..h0 {
        numerator.push(rat_int(r));
    }
    let mut denominator = Vec::new();
    for &ej in &c.etas {
        for k in 0..=(c.eta0 - 2 * ej) * n {
            denominator.push(rat_int(ej * n + k) + rat(1, 2));
        }
    }
    Ok(LinearFactors { constant, numerator, denominator })
}

impl LinearFactors {
    /// Exact evaluation away from poles.
    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let mut num = self.constant.clone();
        for c in &self.numerator {
            num *= t + c;
        }
        let mut den = Rat::one();
        for e in &self.denominator {
            let f = t + e;
            if f.is_zero() {
                return Err(Error::Internal(format!("eval at a denominator zero t = {t}")));
            }
            den *= f;
        }
        Ok(num / den)
    }

    /// Evaluation in HPReal, factor by factor; used by the series sums.
    pub fn eval_hp(&self, t: &Rat, prec: u32) -> Result<HPReal> {
        let mut num = HPReal::from_rat(&self.constant, prec);
        for c in &self.numerator {
            num = num.mul(&HPReal::from_rat(&(t + c), prec));
        }
        let mut den = HPReal::from_int(1, prec);
        for e in &self.denominator {
            den = den.mul(&HPReal::from_rat(&(t + e), prec));
        }
        num.div(&den)
    }

    /// Laurent coefficients at t = -pole: returns (order d, [a_1, ..., a_d])
    /// with a_i the coefficient of (t + pole)^-i. Returns order 0 when there
    /// is no pole.
    ///
    /// Every linear factor is expanded as an integer-scaled power series in
    /// u = t + pole (scale 6 clears the halves and thirds), the nonzero
    /// denominator factors are inverted as a series, and the products are
    /// truncated at order d - 1.
    fn laurent_at(&self, pole: &Rat) -> (usize, Vec<Rat>) {
        let t0 = -pole.clone();
        let six = BigInt::from(6);
        let mut num_zeros = 0usize;
        let mut den_zeros = 0usize;
        let mut npoly: Vec<BigInt> = vec![BigInt::one()];
        let mut dpoly: Vec<BigInt> = vec![BigInt::one()];
        let mut scale_pow: i64 = 0; // net power of 6 pulled out

        // first pass: pole order
        for e in &self.denominator {
            if &t0 + e == Rat::zero() {
                den_zeros += 1;
            }
        }
        for c in &self.numerator {
            if &t0 + c == Rat::zero() {
                num_zeros += 1;
            }
        }
        if den_zeros <= num_zeros {
            return (0, Vec::new());
        }
        let d = den_zeros - num_zeros;

        let trunc = d - 1;
        let mul_linear = |poly: &mut Vec<BigInt>, a0: BigInt| {
            // poly *= (a0 + 6u), truncated
            let top = poly.len().min(trunc);
            let mut out = vec![BigInt::zero(); (poly.len() + 1).min(trunc + 1)];
            for (i, p) in poly.iter().enumerate() {
                if i <= trunc {
                    out[i] += p * &a0;
                }
                if i + 1 <= top {
                    out[i + 1] += p * &six;
                }
            }
            *poly = out;
        };
        for c in &self.numerator {
            let v = (&t0 + c) * rat_int(6);
            debug_assert!(v.denom().is_one());
            if v.is_zero() {
                continue;
            }
            scale_pow -= 1;
            mul_linear(&mut npoly, v.numer().clone());
        }
        for e in &self.denominator {
            let v = (&t0 + e) * rat_int(6);
            debug_assert!(v.denom().is_one());
            if v.is_zero() {
                continue;
            }
            scale_pow += 1;
            mul_linear(&mut dpoly, v.numer().clone());
        }

        // series inverse of dpoly with integer numerators over d0^(m+1):
        // q_0 = 1, q_m = -sum_{j>=1} dpoly[j] q_{m-j} d0^(j-1)
        let d0 = dpoly[0].clone();
        let mut q: Vec<BigInt> = vec![BigInt::one()];
        for m in 1..=trunc {
            let mut acc = BigInt::zero();
            let mut d0_pow = BigInt::one();
            for j in 1..=m.min(dpoly.len() - 1) {
                acc += &dpoly[j] * &q[m - j] * &d0_pow;
                d0_pow *= &d0;
            }
            q.push(-acc);
        }
        // series = npoly * inv, over the common denominator d0^(trunc+1)
        let mut ser_num = vec![BigInt::zero(); trunc + 1];
        for (i, p) in npoly.iter().enumerate().take(trunc + 1) {
            for (j, qq) in q.iter().enumerate() {
                if i + j > trunc {
                    break;
                }
                // inv[j] = q[j] / d0^(j+1); lift to d0^(trunc+1)
                ser_num[i + j] += p * qq * d0.pow((trunc - j) as u32);
            }
        }
        let den_common = Rat::from_integer(d0.pow(trunc as u32 + 1));
        let scale = &self.constant * crate::rat::rat_powi(&rat_int(6), scale_pow as i32);
        let mut coeffs = Vec::with_capacity(d);
        for i in 1..=d {
            coeffs.push(&scale * Rat::from_integer(ser_num[d - i].clone()) / &den_common);
        }
        (d, coeffs)
    }
}

/// Exact coefficients of the partial-fraction decomposition, indexed by pole
/// order i and shift k.
#[derive(Clone, Debug)]
pub struct PartialFractionTable {
    pub family: crate::floor::Family,
    pub n: u32,
    pub k_min: i64,
    pub k_max: i64,
    pub i_max: u32,
    coeffs: BTreeMap<(u32, i64), Rat>,
}

impl PartialFractionTable {
    /// a_{i,k}; zero for absent entries.
    pub fn a(&self, i: u32, k: i64) -> Rat {
        self.coeffs.get(&(i, k)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, i64), &Rat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Reconstruct the function value from the table at a non-pole point.
    /// For the beta family the poles sit at half-integers k + 1/2.
    pub fn reconstruct(&self, t: &Rat) -> Result<Rat> {
        let half = if self.family == crate::floor::Family::Beta { rat(1, 2) } else { Rat::zero() };
        let mut acc = Rat::zero();
        for (&(i, k), a) in &self.coeffs {
            let base = t + rat_int(k) + &half;
            if base.is_zero() {
                return Err(Error::Pole { order: i, k });
            }
            acc += a / crate::rat::rat_powi(&base, i as i32);
        }
        Ok(acc)
    }
}

/// Partial fractions of R_n for the zeta family: poles at t = -k for
/// k in [delta_min n, (m2 - delta_min) n], order up to s+1.
pub fn partial_fractions_zeta(c: &ZetaCollection, n: u32) -> Result<PartialFractionTable> {
    let r = build_zeta_r(c, n)?;
    let dmin = c.delta_min();
    let k_min = dmin * n as i64;
    let k_max = (c.m2 - dmin) * n as i64;
    let count = (k_max - k_min + 1) * (c.s as i64 + 1);
    if count > DESK_GUARD {
        return Err(Error::TooLarge(format!("{count} coefficients exceed the desk guard")));
    }
    let mut coeffs = BTreeMap::new();
    for k in k_min..=k_max {
        let (_, cs) = r.laurent_at(&rat_int(k));
        for (idx, a) in cs.into_iter().enumerate() {
            if !a.is_zero() {
                coeffs.insert((idx as u32 + 1, k), a);
            }
        }
    }
    Ok(PartialFractionTable {
        family: crate::floor::Family::Zeta,
        n,
        k_min,
        k_max,
        i_max: c.s + 1,
        coeffs,
    })
}

/// Partial fractions of the beta-side function: poles at t = -(k + 1/2) for
/// k in [N, h0 - N - 1], order up to s.
pub fn partial_fractions_beta(c: &BetaCollection, n: u32) -> Result<PartialFractionTable> {
    let r = build_beta_r(c, n)?;
    let h0 = c.eta0 * n as i64 + 1;
    let nn = c.eta_min() * n as i64;
    let k_min = nn;
    let k_max = h0 - nn - 1;
    let count = (k_max - k_min + 1) * c.s as i64;
    if count > DESK_GUARD {
        return Err(Error::TooLarge(format!("{count} coefficients exceed the desk guard")));
    }
    let mut coeffs = BTreeMap::new();
    for k in k_min..=k_max {
        let pole = rat_int(k) + rat(1, 2);
        let (_, cs) = r.laurent_at(&pole);
        for (idx, a) in cs.into_iter().enumerate() {
            if !a.is_zero() {
                coeffs.insert((idx as u32 + 1, k), a);
            }
        }
    }
    Ok(PartialFractionTable {
        family: crate::floor::Family::Beta,
        n,
        k_min,
        k_max,
        i_max: c.s,
        coeffs,
    })
}

/// Exact R_n(t) for the zeta family. Errors with the pole data when t is a
/// pole of the decomposition.
pub fn eval_r_zeta(c: &ZetaCollection, n: u32, t: &Rat) -> Result<Rat> {
    let r = build_zeta_r(c, n)?;
    let dmin = c.delta_min();
    if t.denom().is_one() && t.is_negative() {
        let k = -t.numer().clone();
        if let Ok(k) = i64::try_from(&k) {
            if dmin * n as i64 <= k && k <= (c.m2 - dmin) * n as i64 {
                let mut order =
                    c.deltas.iter().filter(|&&dj| dj * n as i64 <= k && k <= (c.m2 - dj) * n as i64).count()
                        as u32;
                if 2 * k == c.m2 * n as i64 {
                    order -= 1; // the (2t + m2 n) zero cancels one order
                }
                return Err(Error::Pole { order, k });
            }
        }
    }
    r.eval(t)
}

/// Exact beta-side evaluation; poles live at half-integers.
pub fn eval_r_beta(c: &BetaCollection, n: u32, t: &Rat) -> Result<Rat> {
    let r = build_beta_r(c, n)?;
    let h0 = c.eta0 * n as i64 + 1;
    let nn = c.eta_min() * n as i64;
    let shifted = t + rat(1, 2);
    if shifted.denom().is_one() && shifted.is_negative() {
        if let Ok(k) = i64::try_from(&(-shifted.numer().clone())) {
            if nn <= k && k <= h0 - nn - 1 {
                let mut order = c
                    .etas
                    .iter()
                    .filter(|&&ej| ej * n as i64 <= k && k <= (c.eta0 - ej) * n as i64)
                    .count() as u32;
                if 2 * k + 1 == h0 {
                    order -= 1;
                }
                return Err(Error::Pole { order, k });
            }
        }
    }
    r.eval(t)
}

/// The linear-form coefficients rho_i and rho_{0,theta} of the zeta side.
#[derive(Clone, Debug)]
pub struct LinearFormCoefficients {
    /// rho_i for odd i in [3, s].
    pub rho: BTreeMap<u32, Rat>,
    /// rho_{0,theta} for theta in {1, 1/2, 1/3, 2/3}.
    pub rho0: Vec<(Rat, Rat)>,
}

pub const THETAS: [(i64, i64); 4] = [(1, 1), (1, 2), (1, 3), (2, 3)];

/// rho_i = sum_k a_{i,k} and the triple-sum rho_{0,theta}, all exact.
pub fn linear_form_coefficients(table: &PartialFractionTable) -> Result<LinearFormCoefficients> {
    if table.family != crate::floor::Family::Zeta {
        return Err(Error::Precondition(
            "linear-form coefficients are defined for the zeta family only".into(),
        ));
    }
    let mut rho = BTreeMap::new();
    for i in (3..=table.i_max.saturating_sub(1)).step_by(2) {
        let mut acc = Rat::zero();
        for k in table.k_min..=table.k_max {
            acc += table.a(i, k);
        }
        rho.insert(i, acc);
    }
    // rho_{0,theta} = -sum_k sum_{l=0..k} sum_i a_{i,k}/(l+theta)^i; swap the
    // sums so each l sees the suffix sum S_i(l) = sum_{k >= l} a_{i,k}
    let mut suffix: Vec<Vec<Rat>> = Vec::with_capacity(table.i_max as usize);
    for i in 1..=table.i_max {
        let mut acc = Rat::zero();
        let mut col: Vec<Rat> = Vec::with_capacity((table.k_max - table.k_min + 1) as usize);
        for k in (table.k_min..=table.k_max).rev() {
            acc += table.a(i, k);
            col.push(acc.clone());
        }
        col.reverse(); // col[k - k_min] = sum_{k' >= k} a_{i,k'}
        suffix.push(col);
    }
    let mut rho0 = Vec::new();
    for (tn, td) in THETAS {
        let theta = rat(tn, td);
        let mut acc = Rat::zero();
        for l in 0..=table.k_max {
            let idx = (l.max(table.k_min) - table.k_min) as usize;
            let base = &theta + rat_int(l);
            let inv = base.recip();
            let mut pw = inv.clone();
            for i in 1..=table.i_max {
                let s = &suffix[i as usize - 1][idx];
                if !s.is_zero() {
                    acc += s * &pw;
                }
                if i < table.i_max {
                    pw *= &inv;
                }
            }
        }
        rho0.push((theta, -acc));
    }
    Ok(LinearFormCoefficients { rho, rho0 })
}

/// Direct series S_{n,theta} = sum_{t>=1} R_n(t+theta) with a certified
/// comparison-test tail bound.
pub fn direct_series_zeta(c: &ZetaCollection, n: u32, theta: &Rat, prec: u32) -> Result<HPReal> {
    let r = build_zeta_r(c, n)?;
    let wprec = prec + 16;
    let mut acc = HPReal::zero(wprec);
    let mut recent: Vec<crate::bound::Bound> = Vec::new(); // |t^2 R(t+theta)| upper bounds
    let mut t: i64 = 1;
    let target = -(wprec as i64) - 8;
    loop {
        let point = theta + rat_int(t);
        let term = r.eval_hp(&point, wprec)?;
        acc = acc.add(&term);
        let quad = term.mul(&HPReal::from_rat(&(&point * &point), wprec));
        recent.push(quad.true_mag_upper());
        if recent.len() > 10 {
            recent.remove(0);
        }
        let small = term.true_mag_upper().le_pow2(target);
        let decreasing =
            recent.len() == 10 && recent.windows(2).all(|w| w[1].cmp_mag(&w[0]) != std::cmp::Ordering::Greater);
        if small && decreasing {
            break;
        }
        t += 1;
        if t > 4_000_000 {
            return Err(Error::Internal("series did not reach the tail regime".into()));
        }
    }
    // tail <= C * sum_{u > t} 1/(u+theta)^2 <= C / t with C = 2 max |u^2 R|
    let cbound = recent.iter().fold(crate::bound::Bound::zero(), |a, b| a.max(*b)).scale_pow2(1);
    let tail = cbound.div(crate::bound::Bound::from_bigint_mag_down(&BigInt::from(t), 0));
    let mut out = acc.to_prec(prec);
    out.widen_err(tail);
    Ok(out)
}

/// Alternating beta-side series r~_n = sum_{v>=0} (-1)^v R~_n(v), with the
/// alternating-series remainder as the tail bound.
pub fn direct_series_beta(c: &BetaCollection, n: u32, prec: u32) -> Result<HPReal> {
    let r = build_beta_r(c, n)?;
    let wprec = prec + 16;
    let mut acc = HPReal::zero(wprec);
    let mut prev: Option<crate::bound::Bound> = None;
    let mut v: i64 = 0;
    let target = -(wprec as i64) - 8;
    let mut decreasing_seen = 0u32;
    loop {
        let term = r.eval_hp(&rat_int(v), wprec)?;
        acc = if v % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        let mag = term.true_mag_upper();
        if let Some(p) = prev {
            if mag.cmp_mag(&p) != std::cmp::Ordering::Greater {
                decreasing_seen += 1;
            } else {
                decreasing_seen = 0;
            }
        }
        if mag.le_pow2(target) && decreasing_seen >= 8 {
            // remainder of an alternating series with decreasing terms
            let mut out = acc.to_prec(prec);
            out.widen_err(mag);
            return Ok(out);
        }
        prev = Some(mag);
        v += 1;
        if v > 4_000_000 {
            return Err(Error::Internal("alternating series did not reach the tail regime".into()));
        }
    }
}

/// The prime-power factor Phi_n with its per-prime exponents nu0(frac(n/p)).
#[derive(Clone, Debug)]
pub struct PhiFactor {
    pub n: u32,
    /// (p, nu0(n/p)) over the family's prime window, ascending.
    pub exponents: Vec<(u64, i64)>,
    /// The assembled product, rational in case any exponent is negative.
    pub value: Rat,
}

enum EitherCollection<'a> {
    Zeta(&'a ZetaCollection),
    Beta(&'a BetaCollection),
}

fn phi_factor_impl(which: EitherCollection, n: u32) -> Result<PhiFactor> {
    let (matrix, lo_sq, hi) = match which {
        EitherCollection::Zeta(c) => {
            let m = FloorMatrix::zeta(c)?;
            let lo = 3 * (2 * c.m1 + c.m2) * n as i64; // p > sqrt of this
            let hi = c.m_scale() * n as i64;
            (m, lo as u64, hi as u64)
        }
        EitherCollection::Beta(c) => {
            let m = FloorMatrix::beta(c)?;
            let h0 = c.eta0 * n as i64 + 1;
            let hi = c.m_scale() * n as i64; // M~ = h0 - 2N - 1
            (m, 2 * h0 as u64, hi as u64)
        }
    };
    let tables = NumberTables::build(hi.max(2), 1);
    let mut exponents = Vec::new();
    let mut value = Rat::one();
    for p in tables.primes_in(lo_sq, hi) {
        let x = rat((n as i64).rem_euclid(p as i64), p as i64);
        let e = matrix.nu0_at(&x);
        let e_i64 = i64::try_from(&e).map_err(|_| Error::Internal("nu0 exponent overflow".into()))?;
        exponents.push((p, e_i64));
        value *= crate::rat::rat_powi(&rat_int(p as i64), e_i64 as i32);
    }
    Ok(PhiFactor { n, exponents, value })
}

pub fn phi_factor_zeta(c: &ZetaCollection, n: u32) -> Result<PhiFactor> {
    phi_factor_impl(EitherCollection::Zeta(c), n)
}

pub fn phi_factor_beta(c: &BetaCollection, n: u32) -> Result<PhiFactor> {
    phi_factor_impl(EitherCollection::Beta(c), n)
}

/// One named exact check of the integrality suite.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn is_integer_rat(x: &Rat) -> bool {
    x.denom().is_one()
}

fn check_entries(name: &'static str, it: impl Iterator<Item = Rat>) -> CheckResult {
    let mut checked = 0;
    let mut failures = 0;
    for v in it {
        checked += 1;
        if !is_integer_rat(&v) {
            failures += 1;
        }
    }
    CheckResult { name, passed: failures == 0, checked, failures }
}

/// The zeta-side integrality suite. Weak checks need only even n; the
/// Phi_n-sharpened checks additionally require n > s^2 and are skipped (not
/// failed) unless `strong` is set, in which case a violated precondition is
/// an error.
pub fn integrality_suite_zeta(c: &ZetaCollection, n: u32, strong: bool) -> Result<SuiteReport> {
    let table = partial_fractions_zeta(c, n)?;
    let m_big = c.m_scale() * n as i64;
    let d_top = ((c.m2 - c.delta_min()) * n as i64 + 1) as u64;
    let tables = NumberTables::build(2, d_top);
    let d_m = tables.d(m_big as u64);
    let s1 = c.s + 1;
    let mut checks = Vec::new();

    // (a) D^(s+1-i) a_{i,k} integral (even n suffices)
    checks.push(check_entries(
        "weak-a: D^(s+1-i) a_{i,k}",
        table.entries().map(|(&(i, _), a)| a * Rat::from_integer(d_m.pow(s1 - i))),
    ));

    if strong {
        if n as i64 <= (c.s as i64) * (c.s as i64) {
            return Err(Error::Precondition(format!(
                "strong checks require n > s^2 (n = {n}, s^2 = {})",
                c.s * c.s
            )));
        }
        let phi = phi_factor_zeta(c, n)?;
        let lf = linear_form_coefficients(&table)?;

        // (b) Phi^-1 D^(s+1-i) a_{i,k}
        checks.push(check_entries(
            "strong-b: Phi^-1 D^(s+1-i) a_{i,k}",
            table
                .entries()
                .map(|(&(i, _), a)| a * Rat::from_integer(d_m.pow(s1 - i)) / &phi.value),
        ));
        // (c) Phi^-1 D^(s+1-i) rho_i for odd i
        checks.push(check_entries(
            "strong-c: Phi^-1 D^(s+1-i) rho_i",
            lf.rho
                .iter()
                .map(|(&i, r)| r * Rat::from_integer(d_m.pow(s1 - i)) / &phi.value),
        ));
        // (d) Phi^-1 D^(s+1) rho_{0,theta} for theta != 1
        checks.push(check_entries(
            "strong-d: Phi^-1 D^(s+1) rho_0_theta",
            lf.rho0
                .iter()
                .filter(|(th, _)| th != &rat_int(1))
                .map(|(_, r)| r * Rat::from_integer(d_m.pow(s1)) / &phi.value),
        ));
        // (e) rho_{0,1} against the product of D_{M_j}, deltas sorted
        // ascending as the lemma assumes
        let mut sorted = c.deltas.clone();
        sorted.sort_unstable();
        let mut prod = BigInt::one();
        for &dj in &sorted {
            let mj = m_big.max((c.m2 - dj) * n as i64) + 1;
            prod *= tables.d(mj as u64);
        }
        let rho01 = &lf.rho0.iter().find(|(th, _)| th == &rat_int(1)).expect("theta=1 present").1;
        checks.push(check_entries(
            "strong-e: (Phi^-1 prod D_Mj) rho_0_1",
            std::iter::once(*rho01 * Rat::from_integer(prod) / &phi.value),
        ));
    }
    Ok(SuiteReport { checks })
}

/// The beta-side integrality check Phi~^-1 d_M~^(s-i) a~_{i,k}.
pub fn integrality_suite_beta(c: &BetaCollection, n: u32, strong: bool) -> Result<SuiteReport> {
    let table = partial_fractions_beta(c, n)?;
    let m_t = c.m_scale() * n as i64;
    let tables = NumberTables::build(2, m_t as u64);
    let d_m = tables.d(m_t as u64);
    let mut checks = Vec::new();
    if strong {
        if n as i64 <= (c.s as i64) * (c.s as i64) {
            return Err(Error::Precondition(format!(
                "strong checks require n > s^2 (n = {n}, s^2 = {})",
                c.s * c.s
            )));
        }
        let phi = phi_factor_beta(c, n)?;
        checks.push(check_entries(
            "strong-f: Phi~^-1 d_M~^(s-i) a~_{i,k}",
            table
                .entries()
                .map(|(&(i, _), a)| a * Rat::from_integer(d_m.pow(c.s - i)) / &phi.value),
        ));
    } else {
        checks.push(check_entries(
            "weak-f: d_M~^(s-i) a~_{i,k}",
            table.entries().map(|(&(i, _), a)| a * Rat::from_integer(d_m.pow(c.s - i))),
        ));
    }
    Ok(SuiteReport { checks })
}

/// Primitive integer solution of w1 + 2^i w2 + 3^i w3 = 0 for i in {i1, i2},
/// normalized so the first nonzero entry is positive. The construction is
/// the cross product of the two constraint rows.
pub fn elimination_weights(i1: u32, i2: u32) -> Result<(BigInt, BigInt, BigInt)> {
    if i1 < 3 || i2 <= i1 || i1 % 2 == 0 || i2 % 2 == 0 {
        return Err(Error::Precondition(format!(
            "need odd 3 <= i1 < i2, got ({i1}, {i2})"
        )));
    }
    let (p2a, p3a) = (BigInt::from(2).pow(i1), BigInt::from(3).pow(i1));
    let (p2b, p3b) = (BigInt::from(2).pow(i2), BigInt::from(3).pow(i2));
    let w1 = &p2a * &p3b - &p3a * &p2b;
    let w2 = &p3a - &p3b;
    let w3 = &p2b - &p2a;
    let g = num_integer::gcd(num_integer::gcd(w1.clone(), w2.clone()), w3.clone());
    let (mut w1, mut w2, mut w3) = (w1 / &g, w2 / &g, w3 / &g);
    let lead = if !w1.is_zero() { &w1 } else if !w2.is_zero() { &w2 } else { &w3 };
    if lead.is_negative() {
        w1 = -w1;
        w2 = -w2;
        w3 = -w3;
    }
    Ok((w1, w2, w3))
}
