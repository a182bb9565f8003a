//! Numeric evaluation of the probability-bound chain behind the randomized
//! target construction, and the degree-based chromatic bound formulas.
//!
//! The summand f(j) = 2 * exp(-c * 2^-j) * c^(((t-j)(t-2)+1)/2 + j) spans
//! hundreds of thousands of orders of magnitude, so everything is computed
//! through its logarithm in extended precision and only converted to `f64`
//! at the boundary (underflowing to 0 or overflowing to infinity where the
//! true value leaves the `f64` range; the `ln_*` accessors stay finite).

use astro_float::{BigFloat, Consts, RoundingMode};

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn to_f64(x: &BigFloat) -> f64 {
    format!("{}", x).parse().unwrap_or(f64::NAN)
}

/// ln f(j) = ln 2 - c * 2^-j + (((t-j)(t-2)+1)/2 + j) * ln c, in extended
/// precision. The exponent of c is carried as an exact doubled integer.
fn ln_f_big(j: u32, t: u32, c: u64, cc: &mut Consts) -> BigFloat {
    assert!(t >= 2, "t must be >= 2");
    assert!(j < t, "j must satisfy 0 <= j <= t-1");
    assert!(c >= 1, "c must be >= 1");
    let ln2 = bf(2.0).ln(PREC, RM, cc);
    let x = bf(c as f64).div(&bf(2f64.powi(j as i32)), PREC, RM);
    let doubled_exp = (t as i64 - j as i64) * (t as i64 - 2) + 1 + 2 * j as i64;
    let k = bf(doubled_exp as f64).div(&bf(2.0), PREC, RM);
    let ln_c = bf(c as f64).ln(PREC, RM, cc);
    ln2.sub(&x, PREC, RM).add(&k.mul(&ln_c, PREC, RM), PREC, RM)
}

/// The j-th summand of the bad-event union bound.
pub fn bound_summand_f(j: u32, t: u32, c: u64) -> f64 {
    let mut cc = Consts::new().unwrap();
    let ln = ln_f_big(j, t, c, &mut cc);
    to_f64(&ln.exp(PREC, RM, &mut cc))
}

/// Natural log of the j-th summand; finite even where the summand itself
/// leaves the `f64` range.
pub fn bound_summand_ln_f(j: u32, t: u32, c: u64) -> f64 {
    let mut cc = Consts::new().unwrap();
    to_f64(&ln_f_big(j, t, c, &mut cc))
}

/// Union-bound evaluation: the summed bad-event probability bound, its
/// closed-form majorant 2 * 1.001 * (t^3 (t-1)^3 2^(3t) / e^(4t-2))^((t-1)/2),
/// and whether the sum is below 1 (the verdict is computed, not assumed:
/// at small t the bound exceeds 1).
#[derive(Clone, Copy, Debug)]
pub struct BadEventBound {
    pub sum: f64,
    pub ln_sum: f64,
    pub closed_form: f64,
    pub ln_closed_form: f64,
    pub below_one: bool,
}

pub fn bad_event_bound(t: u32, c: u64) -> BadEventBound {
    assert!(t >= 2, "t must be >= 2");
    let mut cc = Consts::new().unwrap();
    let mut sum = bf(0.0);
    for j in 0..t {
        let f = ln_f_big(j, t, c, &mut cc).exp(PREC, RM, &mut cc);
        sum = sum.add(&f, PREC, RM);
    }
    // Closed form, also through its logarithm.
    let tf = t as f64;
    let ln_base = 3.0 * tf.ln() + 3.0 * (tf - 1.0).ln() + 3.0 * tf * std::f64::consts::LN_2;
    let ln_base = bf(ln_base).sub(&bf(4.0 * tf - 2.0), PREC, RM);
    let half = bf((t - 1) as f64).div(&bf(2.0), PREC, RM);
    let factor = bf(2.0).mul(&bf(1001.0).div(&bf(1000.0), PREC, RM), PREC, RM);
    let ln_cf = ln_base.mul(&half, PREC, RM).add(&factor.ln(PREC, RM, &mut cc), PREC, RM);
    let cf = ln_cf.exp(PREC, RM, &mut cc);
    let below_one = matches!(sum.cmp(&bf(1.0)), Some(o) if o < 0);
    BadEventBound {
        sum: to_f64(&sum),
        ln_sum: to_f64(&sum.ln(PREC, RM, &mut cc)),
        closed_form: to_f64(&cf),
        ln_closed_form: to_f64(&ln_cf),
        below_one,
    }
}

/// The degree-family chromatic bounds (2^(delta/2 - 1), (delta-1)^2 *
/// 2^(delta-1) + 2).
pub fn theorem_bounds(delta: u32) -> crate::error::Result<(f64, u128)> {
    if delta < 3 {
        return Err(crate::error::Error::InvalidParameter(
            "delta must be >= 3".into(),
        ));
    }
    if delta > 120 {
        return Err(crate::error::Error::InvalidParameter(
            "delta too large for exact upper bound".into(),
        ));
    }
    let lower = 2f64.powf(delta as f64 / 2.0 - 1.0);
    let d = delta as u128;
    let upper = (d - 1) * (d - 1) * (1u128 << (d - 1)) + 2;
    Ok((lower, upper))
}
