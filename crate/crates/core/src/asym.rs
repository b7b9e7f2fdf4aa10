//! The analytic side of the certificates: the saddle-point root x0, the
//! growth constant C2, and the beta-side growth limit.
//!
//! Monotonicity of u and of f on the relevant ranges is what the paper's
//! proof establishes, so plain bisection with certified sign tests is enough
//! everywhere; no derivative-based stepping is used.

use crate::collection::{BetaCollection, ZetaCollection};
use crate::error::{Error, Result};
use crate::rat::{rat, rat_int, Rat};
use crate::real::HPReal;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::cmp::Ordering;

/// Root locations and growth constants for one zeta collection.
#[derive(Clone, Debug)]
pub struct AsymptoticProfile {
    /// Unique positive solution of f(x) = 1.
    pub x0: HPReal,
    /// Unique positive root of u (the minimum of f).
    pub x1: HPReal,
    /// C2 = sum_j max(m2 - 2 delta_min, m2 - delta_j) + log g(x0).
    pub c2: HPReal,
    pub log_g: HPReal,
}

/// f(x) = ((2m1+m2+x)/x)^4 * (m1+x)/(m1+m2+x) * prod (m1+dj+x)/(m1+m2-dj+x).
pub fn eval_f(c: &ZetaCollection, x: &HPReal) -> Result<HPReal> {
    if x.sign_certified() != Some(Ordering::Greater) {
        return Err(Error::Domain("f requires x > 0".into()));
    }
    let prec = x.prec();
    let shifted = |k: i64| HPReal::from_int(k, prec).add(x);
    let mut v = shifted(2 * c.m1 + c.m2).div(x)?.powi(4);
    v = v.mul(&shifted(c.m1)).div(&shifted(c.m1 + c.m2))?;
    for &dj in &c.deltas {
        v = v.mul(&shifted(c.m1 + dj)).div(&shifted(c.m1 + c.m2 - dj))?;
    }
    Ok(v)
}

/// u(x), the numerator of f'/f scaled by x(2m1+m2+x); strictly increasing on
/// (0, inf) with u(0+) = -4(2m1+m2) and u(inf) = (s-2)m2 - 8m1 - 2 sum(delta).
pub fn eval_u(c: &ZetaCollection, x: &HPReal) -> Result<HPReal> {
    if x.sign_certified() != Some(Ordering::Greater) {
        return Err(Error::Domain("u requires x > 0".into()));
    }
    let prec = x.prec();
    let one = HPReal::from_int(1, prec);
    let shifted = |k: i64| HPReal::from_int(k, prec).add(x);
    let pull = |p: i64, q: i64| -> Result<HPReal> {
        // 1 - p*q / ((p+x)(q+x))
        let denom = shifted(p).mul(&shifted(q));
        Ok(one.sub(&HPReal::from_int(p * q, prec).div(&denom)?))
    };
    let mut v = HPReal::from_int(-4 * (2 * c.m1 + c.m2), prec);
    v = v.add(&pull(c.m1, c.m1 + c.m2)?.mul_i64(c.m2));
    for &dj in &c.deltas {
        v = v.add(&pull(c.m1 + dj, c.m1 + c.m2 - dj)?.mul_i64(c.m2 - 2 * dj));
    }
    Ok(v)
}

/// log g(x), computed termwise in log space; g itself overflows any
/// fixed-range float for the published parameters.
pub fn eval_log_g(c: &ZetaCollection, x: &HPReal) -> Result<HPReal> {
    if x.sign_certified() != Some(Ordering::Greater) {
        return Err(Error::Domain("log g requires x > 0".into()));
    }
    let prec = x.prec();
    let shifted_ln = |k: i64| HPReal::from_int(k, prec).add(x).ln();
    let mut v = HPReal::from_int(108, prec).ln()?.mul_i64(2 * c.m1 + c.m2);
    for &dj in &c.deltas {
        let w = c.m2 - 2 * dj;
        if w > 1 {
            v = v.add(&HPReal::from_int(w, prec).ln()?.mul_i64(w));
        }
    }
    v = v.add(&shifted_ln(2 * c.m1 + c.m2)?.mul_i64(4 * (2 * c.m1 + c.m2)));
    v = v.add(&shifted_ln(c.m1)?.mul_i64(c.m1));
    v = v.sub(&shifted_ln(c.m1 + c.m2)?.mul_i64(c.m1 + c.m2));
    for &dj in &c.deltas {
        v = v.add(&shifted_ln(c.m1 + dj)?.mul_i64(c.m1 + dj));
        v = v.sub(&shifted_ln(c.m1 + c.m2 - dj)?.mul_i64(c.m1 + c.m2 - dj));
    }
    Ok(v)
}

/// (f, u, log g) at one point.
pub fn eval_fug(c: &ZetaCollection, x: &HPReal) -> Result<(HPReal, HPReal, HPReal)> {
    Ok((eval_f(c, x)?, eval_u(c, x)?, eval_log_g(c, x)?))
}

/// Certified bisection on dyadic rationals. `sign_at` must be certifiably
/// positive at `lo` and negative at `hi` (direction handled by caller via
/// negation). Narrows until the bracket is below 2^target_log2 or a sign
/// becomes indeterminate; returns (bracket midpoint, final width).
fn bisect<F>(mut lo: Rat, mut hi: Rat, target_log2: i64, mut sign_at: F) -> Result<(Rat, Rat)>
where
    F: FnMut(&Rat) -> Result<Option<Ordering>>,
{
    let two = rat_int(2);
    loop {
        let width = &hi - &lo;
        if width <= crate::rat::rat_powi(&two, target_log2 as i32) {
            return Ok(((&lo + &hi) / &two, width));
        }
        let mid = (&lo + &hi) / &two;
        match sign_at(&mid)? {
            Some(Ordering::Greater) => lo = mid,
            Some(Ordering::Less) => hi = mid,
            Some(Ordering::Equal) | None => {
                // cannot certify further narrowing; stop with what we have
                return Ok(((&lo + &hi) / &two, width));
            }
        }
    }
}

fn rat_to_hp_with_width(x: &Rat, width: &Rat, prec: u32) -> HPReal {
    let mut v = HPReal::from_rat(x, prec);
    v.widen_err(HPReal::from_rat(width, 64).true_mag_upper());
    v
}

/// Locates x1 (root of u) and x0 (root of f - 1), then fills in C2.
pub fn find_x0(c: &ZetaCollection, precision_bits: u32) -> Result<AsymptoticProfile> {
    c.validate()?;
    let wprec = precision_bits + 64;
    let target = -(precision_bits as i64) / 2 - 8;
    let eps = crate::rat::rat_powi(&rat_int(2), -(precision_bits as i32));

    // u is increasing: find a sign change by doubling
    let mut hi = rat_int(1);
    for _ in 0..64 {
        let s = eval_u(c, &HPReal::from_rat(&hi, wprec))?.sign_certified();
        if s == Some(Ordering::Greater) {
            break;
        }
        hi = &hi * rat_int(2);
    }
    let u_hi = eval_u(c, &HPReal::from_rat(&hi, wprec))?.sign_certified();
    if u_hi != Some(Ordering::Greater) {
        return Err(Error::Internal("no sign change for u; feasibility validation bug".into()));
    }
    let u_lo = eval_u(c, &HPReal::from_rat(&eps, wprec))?.sign_certified();
    if u_lo != Some(Ordering::Less) {
        return Err(Error::Internal("u(0+) not negative; feasibility validation bug".into()));
    }
    // bisect -u so the positive side sits at lo
    let (x1_mid, x1_width) = bisect(eps.clone(), hi, target, |x| {
        Ok(eval_u(c, &HPReal::from_rat(x, wprec))?.sign_certified().map(Ordering::reverse))
    })?;
    let x1 = rat_to_hp_with_width(&x1_mid, &x1_width, precision_bits);

    // f - 1 is certifiably positive near 0 and negative at the left edge of
    // the x1 bracket (f is decreasing up to x1 and f(x0) = 1 with x0 < x1)
    let f_right = &x1_mid - &x1_width;
    let one = HPReal::from_int(1, wprec);
    let f_at = |x: &Rat| -> Result<Option<Ordering>> {
        Ok(eval_f(c, &HPReal::from_rat(x, wprec))?.sub(&one).sign_certified())
    };
    if f_at(&eps)? != Some(Ordering::Greater) {
        return Err(Error::Internal("f(0+) - 1 not positive; feasibility validation bug".into()));
    }
    if f_at(&f_right)? != Some(Ordering::Less) {
        return Err(Error::Internal("f - 1 not negative near x1; feasibility validation bug".into()));
    }
    let (x0_mid, x0_width) = bisect(eps, f_right, target, f_at)?;
    let x0 = rat_to_hp_with_width(&x0_mid, &x0_width, precision_bits);

    let log_g = eval_log_g(c, &x0.to_prec(wprec))?.to_prec(precision_bits);
    let dmin = c.delta_min();
    let shift: i64 = c.deltas.iter().map(|&dj| (c.m2 - 2 * dmin).max(c.m2 - dj)).sum();
    let c2 = HPReal::from_int(shift, precision_bits).add(&log_g);
    Ok(AsymptoticProfile { x0, x1, c2, log_g })
}

/// Log of the beta-side growth limit of the alternating sums, with a flag
/// recording whether the stationarity reduction had to be abandoned for the
/// multi-start coordinate-ascent fallback.
#[derive(Clone, Debug)]
pub struct BetaGrowth {
    pub log_limit: HPReal,
    pub fallback_used: bool,
}

/// Critical coordinate t_j as a function of the product P, from the
/// first-order conditions of the growth objective.
fn t_of_p(c: &BetaCollection, j: usize, p: &Rat) -> Rat {
    let ej = rat_int(c.etas[j]);
    let rest = rat_int(c.eta0 - c.etas[j]);
    (&ej - &rest * p) / (&rest - &ej * p)
}

fn product_gap(c: &BetaCollection, p: &Rat) -> Rat {
    let mut prod = rat_int(1);
    for j in 0..c.etas.len() {
        prod *= t_of_p(c, j, p);
    }
    prod - p
}

/// Objective (without the eta0 log(4 eta0) shift) at a rational point.
fn beta_objective_hp(c: &BetaCollection, ts: &[Rat], prec: u32) -> Result<HPReal> {
    let mut v = HPReal::zero(prec);
    let mut prod = rat_int(1);
    for (j, t) in ts.iter().enumerate() {
        let t_hp = HPReal::from_rat(t, prec);
        let one_minus = HPReal::from_rat(&(rat_int(1) - t), prec);
        v = v.add(&t_hp.ln()?.mul_i64(c.etas[j]));
        v = v.add(&one_minus.ln()?.mul_i64(c.eta0 - 2 * c.etas[j]));
        prod *= t;
    }
    let lp = HPReal::from_rat(&(rat_int(1) + prod), prec);
    v = v.sub(&lp.ln()?.mul_i64(c.eta0));
    Ok(v)
}

/// lim (r_n)^(1/n) in log form: eta0 log(4 eta0) + max of the product-form
/// objective over [0,1]^s, found through the scalar fixed point P = prod t_j(P).
pub fn beta_r_limit(c: &BetaCollection, precision_bits: u32) -> Result<BetaGrowth> {
    c.validate()?;
    let wprec = precision_bits + 32;

    // P_max: smallest positive zero of a numerator; all t_j positive below it
    let p_max = c
        .etas
        .iter()
        .map(|&e| rat(e, c.eta0 - e))
        .min()
        .expect("nonempty etas");

    // gap(0) > 0, gap(P_max) = -P_max < 0; bisect with exact rational signs
    let solved = (|| -> Option<Rat> {
        if !product_gap(c, &rat_int(0)).is_positive() {
            return None;
        }
        if !product_gap(c, &p_max).is_negative() {
            return None;
        }
        let mut lo = rat_int(0);
        let mut hi = p_max.clone();
        for _ in 0..(precision_bits as usize + 16) {
            let mid = (&lo + &hi) / rat_int(2);
            if product_gap(c, &mid).is_positive() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((&lo + &hi) / rat_int(2))
    })();

    if let Some(p_star) = solved {
        let ts: Vec<Rat> = (0..c.etas.len()).map(|j| t_of_p(c, j, &p_star)).collect();
        if ts.iter().all(|t| t.is_positive() && *t < rat_int(1)) {
            let base = HPReal::from_int(4 * c.eta0, wprec).ln()?.mul_i64(c.eta0);
            let val = base.add(&beta_objective_hp(c, &ts, wprec)?);
            return Ok(BetaGrowth { log_limit: val.to_prec(precision_bits), fallback_used: false });
        }
    }

    // fallback: seeded multi-start coordinate ascent in f64, then a single
    // high-precision evaluation at the best point found
    let ts = coordinate_ascent_f64(c, 10, 0xbeef_cafe);
    let ts_rat: Vec<Rat> = ts
        .iter()
        .map(|&t| {
            let scaled = (t * (1u64 << 53) as f64) as i64;
            rat(scaled.clamp(1, (1i64 << 53) - 1), 1i64 << 53)
        })
        .collect();
    let base = HPReal::from_int(4 * c.eta0, wprec).ln()?.mul_i64(c.eta0);
    let mut val = base.add(&beta_objective_hp(c, &ts_rat, wprec)?).to_prec(precision_bits);
    // the optimizer location is only f64-accurate; widen accordingly
    val.widen_err(crate::bound::Bound::pow2(-40));
    Ok(BetaGrowth { log_limit: val, fallback_used: true })
}

fn beta_objective_f64(c: &BetaCollection, ts: &[f64]) -> f64 {
    let mut v = 0.0;
    let mut prod = 1.0;
    for (j, &t) in ts.iter().enumerate() {
        v += c.etas[j] as f64 * t.ln() + (c.eta0 - 2 * c.etas[j]) as f64 * (1.0 - t).ln();
        prod *= t;
    }
    v - c.eta0 as f64 * (1.0 + prod).ln()
}

/// Multi-start coordinate ascent with per-coordinate golden-section search.
/// This is the independent oracle the stationarity reduction is validated
/// against; it is also the production fallback.
pub fn coordinate_ascent_f64(c: &BetaCollection, starts: u32, seed: u64) -> Vec<f64> {
    let golden = 0.618_033_988_749_894_9_f64;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..starts {
        let mut ts: Vec<f64> = (0..c.etas.len()).map(|_| rng.gen_range(0.05..0.95)).collect();
        for _ in 0..200 {
            let mut moved = 0.0f64;
            for j in 0..ts.len() {
                let (mut a, mut b) = (1e-12, 1.0 - 1e-12);
                let mut c1 = b - golden * (b - a);
                let mut c2 = a + golden * (b - a);
                let eval = |t: f64, ts: &mut Vec<f64>| {
                    let old = ts[j];
                    ts[j] = t;
                    let v = beta_objective_f64(c, ts);
                    ts[j] = old;
                    v
                };
                let mut f1 = eval(c1, &mut ts);
                let mut f2 = eval(c2, &mut ts);
                for _ in 0..90 {
                    if f1 > f2 {
                        b = c2;
                        c2 = c1;
                        f2 = f1;
                        c1 = b - golden * (b - a);
                        f1 = eval(c1, &mut ts);
                    } else {
                        a = c1;
                        c1 = c2;
                        f1 = f2;
                        c2 = a + golden * (b - a);
                        f2 = eval(c2, &mut ts);
                    }
                }
                let t_new = 0.5 * (a + b);
                moved = moved.max((t_new - ts[j]).abs());
                ts[j] = t_new;
            }
            if moved < 1e-13 {
                break;
            }
        }
        let v = beta_objective_f64(c, &ts);
        if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
            best = Some((v, ts));
        }
    }
    best.expect("at least one start").1
}
