use serde::{Deserialize, Serialize};

use super::dd::CDd;
use super::near_integer;
use crate::{Error, Result, C64};

/// Truncation policy for power series: a series stops once a term falls
/// below `abs_tol` or below `rel_tol` times the running sum, whichever
/// happens first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { max_terms: 500, abs_tol: 1e-14, rel_tol: 1e-12 }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if max_terms == 0 || !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(Error::domain("series control needs max_terms ≥ 1 and positive tolerances"));
        }
        Ok(SeriesControl { max_terms, abs_tol, rel_tol })
    }

    fn threshold(&self, sum: C64) -> f64 {
        self.abs_tol.max(self.rel_tol * sum.norm())
    }
}

/// Kummer's confluent hypergeometric function `Φ(a; b; x) = ₁F₁(a; b; x)`
/// with the default [`SeriesControl`].
pub fn kummer_phi(a: C64, b: C64, x: C64) -> Result<C64> {
    kummer_phi_with(a, b, x, &SeriesControl::default())
}

/// Taylor series for `Φ(a; b; x)`. For `Re x < 0` the series is summed
/// after Kummer's transformation `Φ(a;b;x) = eˣ Φ(b−a; b; −x)`, which keeps
/// the terms from alternating.
pub fn kummer_phi_with(a: C64, b: C64, x: C64, ctrl: &SeriesControl) -> Result<C64> {
    if b.im == 0.0 && b.re <= 0.0 && near_integer(b.re, 0.0) {
        return Err(Error::domain(format!("Φ(a; b; x) undefined for b = {}", b.re)));
    }
    let a_is_poly = a.im == 0.0 && a.re <= 0.0 && near_integer(a.re, 0.0);
    if x.re < 0.0 && !a_is_poly {
        Ok(x.exp() * taylor(b - a, b, -x, ctrl)?)
    } else {
        taylor(a, b, x, ctrl)
    }
}

/// Largest term over the sum beyond which the f64 series is redone in
/// double-double arithmetic.
const CANCELLATION_LIMIT: f64 = 1e4;

fn taylor(a: C64, b: C64, x: C64, ctrl: &SeriesControl) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut biggest = 1.0f64;
    for m in 0..ctrl.max_terms {
        let mf = m as f64;
        let ratio = (a + mf) * x / ((b + mf) * (mf + 1.0));
        term *= ratio;
        sum += term;
        biggest = biggest.max(term.norm());
        if term == C64::new(0.0, 0.0) {
            break;
        }
        let next_ratio = (a + mf + 1.0) * x / ((b + mf + 1.0) * (mf + 2.0));
        if term.norm() <= ctrl.threshold(sum) && next_ratio.norm() < 1.0 {
            break;
        }
        if m + 1 == ctrl.max_terms {
            return Err(Error::SeriesNonConvergence { max_terms: ctrl.max_terms });
        }
    }
    if biggest > CANCELLATION_LIMIT * sum.norm() {
        return taylor_dd(a, b, x, ctrl);
    }
    Ok(sum)
}

/// Same series with terms and sum carried in double-double, for arguments
/// (large imaginary part, mostly) where the terms dwarf the result.
fn taylor_dd(a: C64, b: C64, x: C64, ctrl: &SeriesControl) -> Result<C64> {
    let (a, b, x) = (CDd::from_c64(a), CDd::from_c64(b), CDd::from_c64(x));
    let mut term = CDd::from_c64(C64::new(1.0, 0.0));
    let mut sum = term;
    for m in 0..ctrl.max_terms {
        let mf = m as f64;
        let den = b.add_f64(mf) * CDd::from_c64(C64::new(mf + 1.0, 0.0));
        term = term * a.add_f64(mf) * x / den;
        sum = sum + term;
        let (t, s) = (term.to_c64(), sum.to_c64());
        if t == C64::new(0.0, 0.0) {
            return Ok(s);
        }
        let ratio_next = (a.add_f64(mf + 1.0).to_c64() * x.to_c64()).norm() / ((b.add_f64(mf + 1.0).to_c64()).norm() * (mf + 2.0));
        // the f64 stopping rule is sound here: only the sum's accuracy changed
        if t.norm() <= 1e-4 * ctrl.threshold(s) && ratio_next < 1.0 {
            return Ok(s);
        }
    }
    Err(Error::SeriesNonConvergence { max_terms: ctrl.max_terms })
}
