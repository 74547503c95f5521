use std::f64::consts::PI;

use super::near_integer;
use crate::quadrature::{keyhole_integrate, QuadratureSpec};
use crate::{Error, Result, C64, I};

/// Loop-integral form of the Beta function,
/// `(1 / 2i sin π(2k−1)) ∮ tⁿ (t−1)^{2k−2} dt`, integrated numerically over
/// the keyhole loop of `spec`. Equals `B(n+1, 2k−1)`, including its analytic
/// continuation to `k < 1/2`.
pub fn beta_contour_weight(n: usize, k: f64, spec: &QuadratureSpec) -> Result<C64> {
    if !(k > 0.0) {
        return Err(Error::InvalidIndex { k, reason: "k must be positive" });
    }
    if near_integer(2.0 * k, 1e-12) {
        return Err(Error::InvalidIndex {
            k,
            reason: "the loop integral needs 2k − 1 ∉ ℤ (k not an integer or half-integer)",
        });
    }
    spec.validate()?;
    let y = 2.0 * k - 1.0;
    let nf = n as f64;
    let loop_integral = keyhole_integrate(spec, |t, log_tm1| {
        let tn = if n == 0 { C64::new(1.0, 0.0) } else { t.powf(nf) };
        tn * ((y - 1.0) * log_tm1).exp()
    });
    Ok(loop_integral / (2.0 * I * (PI * y).sin()))
}
