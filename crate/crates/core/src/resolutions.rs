//! Numerical checks of the resolutions of the identity: the disk measure
//! (`k > 1/2`), the Barut–Girardello plane measure (`k > 0`) and the
//! keyhole-contour resolution that also covers `0 < k < 1/2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analytic::{eval_g_unchecked, ExtendedDiskFunction};
use crate::linalg::CMatrix;
use crate::quadrature::{keyhole_nodes, tanh_sinh, trapezoid_angles};
use crate::specfun::{bessel_k, gamma_real};
use crate::su11::{disk_weights, BargmannIndex, CoefficientState};
use crate::{Error, QuadratureSpec, Result, C64, I};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Matrix of `⟨m,k| Î |n,k⟩` compared with the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub k: f64,
    pub dimension_checked: usize,
    pub max_offdiag: f64,
    pub max_diag_error: f64,
    /// Row-major `[re, im]` entries.
    pub matrix: Vec<Vec<[f64; 2]>>,
    /// `⟨0|Î|0⟩` through the contour alone, a check on the loop's phase
    /// convention (weak resolution only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase_check: Option<[f64; 2]>,
}

impl IdentityReport {
    pub(crate) fn from_matrix(k: BargmannIndex, m: &CMatrix) -> Self {
        let n = m.rows();
        let mut max_offdiag = 0.0f64;
        let mut max_diag_error = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    max_diag_error = max_diag_error.max((m[(i, j)] - 1.0).norm());
                } else {
                    max_offdiag = max_offdiag.max(m[(i, j)].norm());
                }
            }
        }
        let matrix = (0..n).map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        IdentityReport { k: k.value(), dimension_checked: n, max_offdiag, max_diag_error, matrix, phase_check: None }
    }

    pub fn max_error(&self) -> f64 {
        self.max_offdiag.max(self.max_diag_error)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_error() <= tol
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        let [re, im] = self.matrix[i][j];
        C64::new(re, im)
    }
}

fn basis_states(k: BargmannIndex, m: usize) -> Vec<CoefficientState> {
    (0..m).map(|n| CoefficientState::basis(k, n, m - 1)).collect()
}

fn common_k(states: &[CoefficientState]) -> Result<(BargmannIndex, usize)> {
    let first = states.first().ok_or_else(|| Error::domain("no states given"))?;
    if states.iter().any(|s| s.k() != first.k()) {
        return Err(Error::domain("all states must share the same k"));
    }
    Ok((first.k(), states.iter().map(|s| s.coeffs().len()).max().unwrap_or(1)))
}

/// Adds `w · ⟨v_i|x⟩⟨x|v_j⟩` for basis overlaps `left_n = ⟨n|x⟩`-side and
/// `right_n = ⟨x|n⟩`-side values.
fn accumulate(gram: &mut CMatrix, states: &[CoefficientState], w: C64, left: &[C64], right: &[C64]) {
    let bra: Vec<C64> = states.iter().map(|s| s.coeffs().iter().zip(left).map(|(c, l)| c.conj() * l).sum()).collect();
    let ket: Vec<C64> = states.iter().map(|s| s.coeffs().iter().zip(right).map(|(c, r)| c * r).sum()).collect();
    for (i, b) in bra.iter().enumerate() {
        let wb = w * b;
        for (j, kt) in ket.iter().enumerate() {
            gram[(i, j)] += wb * kt;
        }
    }
}

/// `⟨v_i| ∫dμ(ζ) |ζ⟩⟨ζ| |v_j⟩` with `dμ = (2k−1)/π · d²ζ / (1−|ζ|²)²`.
/// Radial tanh-sinh in `t = |ζ|²` with exact `1 − t`, angular trapezoid.
pub fn disk_gram(states: &[CoefficientState], quad: &QuadratureSpec) -> Result<CMatrix> {
    quad.validate()?;
    let (k, len) = common_k(states)?;
    let kv = k.value();
    if kv <= 0.5 {
        return Err(Error::InvalidIndex { k: kv, reason: "the disk measure needs k > 1/2; use the weak resolution" });
    }
    let w = disk_weights(k, len);
    let angles: Vec<(f64, f64)> = trapezoid_angles(quad.angular_nodes).collect();
    let mut gram = CMatrix::zeros(states.len(), states.len());
    let mut left = vec![ZERO; len];
    for node in tanh_sinh(quad.radial_nodes, 0.0, 1.0) {
        let t = node.x;
        let one_minus = node.from_right;
        // d²ζ = ½ dt dφ; |ζ,k⟩ carries (1−t)^k on each side
        let radial = (2.0 * kv - 1.0) / PI * 0.5 * one_minus.powf(2.0 * kv - 2.0) * node.weight;
        let r = t.sqrt();
        for &(phi, wphi) in &angles {
            let zeta = C64::from_polar(r, phi);
            let mut p = C64::new(1.0, 0.0);
            for (l, wn) in left.iter_mut().zip(&w) {
                *l = wn * p;
                p *= zeta;
            }
            let right: Vec<C64> = left.iter().map(|c| c.conj()).collect();
            accumulate(&mut gram, states, C64::new(radial * wphi, 0.0), &left, &right);
        }
    }
    Ok(gram)
}

pub fn disk_identity_check(k: BargmannIndex, m: usize, quad: &QuadratureSpec) -> Result<IdentityReport> {
    let gram = disk_gram(&basis_states(k, m), quad)?;
    Ok(IdentityReport::from_matrix(k, &gram))
}

/// Same Gram matrix for the plane measure
/// `dμ = (2/π) K_{2k−1}(2|z|) I_{2k−1}(2|z|) d²z`, cut off at `|z| = R`.
///
/// The `I_{2k−1}` of the measure cancels the normalization of `|z,k⟩`, so
/// the integrand is `(2/π) K_{2k−1}(2r) r^{2k} zᵐ z̄ⁿ / √(m!Γ(m+2k) n!Γ(n+2k))`.
pub fn bg_gram(states: &[CoefficientState], quad: &QuadratureSpec) -> Result<CMatrix> {
    quad.validate()?;
    let (k, len) = common_k(states)?;
    let two_k = 2.0 * k.value();
    let nu = two_k - 1.0;
    let cutoff = quad.plane_cutoff;
    let mut u = Vec::with_capacity(len);
    let mut cur = 1.0 / gamma_real(two_k)?.sqrt();
    for n in 0..len {
        u.push(cur);
        cur /= ((n as f64 + 1.0) * (n as f64 + two_k)).sqrt();
    }
    let radial_density = |r: f64| -> Result<f64> { Ok(2.0 / PI * bessel_k(nu, 2.0 * r)? * r.powf(two_k)) };
    // largest basis term at the cutoff, times the ~1/2 decay length of K
    let top = (len - 1) as f64;
    let tail = radial_density(cutoff)? * cutoff.powf(2.0 * top) * u[len - 1] * u[len - 1] * 2.0 * PI * 0.5;
    if tail > 1e-10 {
        return Err(Error::Quadrature(format!("plane cutoff R = {cutoff} leaves a tail of {tail:e}")));
    }
    let angles: Vec<(f64, f64)> = trapezoid_angles(quad.angular_nodes).collect();
    let mut gram = CMatrix::zeros(states.len(), states.len());
    let mut left = vec![ZERO; len];
    for node in tanh_sinh(quad.radial_nodes, 0.0, cutoff) {
        let r = node.x;
        let radial = radial_density(r)? * node.weight;
        if radial == 0.0 {
            continue;
        }
        for &(phi, wphi) in &angles {
            let z = C64::from_polar(r, phi);
            let mut p = C64::new(1.0, 0.0);
            for (l, un) in left.iter_mut().zip(&u) {
                *l = un * p;
                p *= z;
            }
            let right: Vec<C64> = left.iter().map(|c| c.conj()).collect();
            accumulate(&mut gram, states, C64::new(radial * wphi, 0.0), &left, &right);
        }
    }
    Ok(gram)
}

pub fn bg_identity_check(k: BargmannIndex, m: usize, quad: &QuadratureSpec) -> Result<IdentityReport> {
    let gram = bg_gram(&basis_states(k, m), quad)?;
    Ok(IdentityReport::from_matrix(k, &gram))
}

/// Constant in front of the keyhole integral, `−(2k−1) e^{2πik} / (4πi sin 2πk)`.
pub fn weak_prefactor(k: BargmannIndex) -> Result<C64> {
    if k.is_weak_special() {
        return Err(Error::InvalidIndex { k: k.value(), reason: "the weak resolution needs 2k not an integer" });
    }
    let kv = k.value();
    Ok(-(2.0 * kv - 1.0) * C64::from_polar(1.0, 2.0 * PI * kv) / (4.0 * PI * I * (2.0 * PI * kv).sin()))
}

/// `log(1 − t)` continued along the loop from `log(t − 1)`, so that
/// `e^{2πik}(1 − t)^{2k−2} = (t − 1)^{2k−2}`.
fn log_one_minus(log_t_minus_1: C64) -> C64 {
    log_t_minus_1 - I * PI
}

/// Gram matrix through the keyhole loop.
///
/// The coherent states are continued off the disk by `|ζ|² → t`,
/// `(1−|ζ|²)^k → (1−t)^k` and `ζ̄ → t/ζ`, with `ζ = √t e^{iφ}`.
pub fn weak_gram(states: &[CoefficientState], quad: &QuadratureSpec) -> Result<CMatrix> {
    quad.validate()?;
    let (k, len) = common_k(states)?;
    let pref = weak_prefactor(k)?;
    let kv = k.value();
    let w = disk_weights(k, len);
    let angles: Vec<(f64, f64)> = trapezoid_angles(quad.angular_nodes).collect();
    let mut gram = CMatrix::zeros(states.len(), states.len());
    let mut left = vec![ZERO; len];
    let mut right = vec![ZERO; len];
    for node in keyhole_nodes(quad) {
        let t = node.t;
        let kernel = pref * ((2.0 * kv - 2.0) * log_one_minus(node.log_t_minus_1)).exp() * node.weight;
        let root = t.sqrt();
        for &(phi, wphi) in &angles {
            let zeta = root * C64::from_polar(1.0, phi);
            let zeta_bar = if zeta == ZERO { ZERO } else { t / zeta };
            let (mut p, mut q) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
            for n in 0..len {
                left[n] = w[n] * p;
                right[n] = w[n] * q;
                p *= zeta;
                q *= zeta_bar;
            }
            accumulate(&mut gram, states, kernel * wphi, &left, &right);
        }
    }
    Ok(gram)
}

pub fn weak_identity_check(k: BargmannIndex, m: usize, quad: &QuadratureSpec) -> Result<IdentityReport> {
    let gram = weak_gram(&basis_states(k, m), quad)?;
    let mut report = IdentityReport::from_matrix(k, &gram);
    let pref = weak_prefactor(k)?;
    let lowest: C64 = keyhole_nodes(quad)
        .iter()
        .map(|n| n.weight * ((2.0 * k.value() - 2.0) * log_one_minus(n.log_t_minus_1)).exp())
        .sum::<C64>()
        * pref
        * (2.0 * PI);
    report.phase_check = Some([lowest.re, lowest.im]);
    Ok(report)
}

/// `⟨Ψ₁|Ψ₂⟩` through the loop integral of `G₁* G₂` against
/// `(1−t)^{2k−2}`. Needs both disk functions to converge past `√(1+r)`.
pub fn weak_scalar_product(
    s1: &ExtendedDiskFunction,
    s2: &ExtendedDiskFunction,
    quad: &QuadratureSpec,
) -> Result<C64> {
    quad.validate()?;
    let k = s1.state.k();
    if s2.state.k() != k {
        return Err(Error::domain("both states must share the same k"));
    }
    let pref = weak_prefactor(k)?;
    let reach = (1.0 + quad.contour_radius).sqrt();
    for s in [s1, s2] {
        if s.radius_estimate <= reach {
            return Err(Error::OutsideRadius { modulus: reach, radius: s.radius_estimate });
        }
    }
    // G₁* continued: Σ C̄ₙ wₙ (t/ζ)ⁿ is the disk function of the conjugated coefficients
    let conj1 = CoefficientState::new(k, s1.state.coeffs().iter().map(|c| c.conj()).collect())?;
    let kv = k.value();
    let angles: Vec<(f64, f64)> = trapezoid_angles(quad.angular_nodes).collect();
    let mut sum = ZERO;
    for node in keyhole_nodes(quad) {
        let t = node.t;
        let kernel = ((2.0 * kv - 2.0) * log_one_minus(node.log_t_minus_1)).exp() * node.weight;
        let root = t.sqrt();
        let mut inner = ZERO;
        for &(phi, wphi) in &angles {
            let zeta = root * C64::from_polar(1.0, phi);
            let zeta_bar = if zeta == ZERO { ZERO } else { t / zeta };
            inner += wphi * eval_g_unchecked(&conj1, zeta_bar) * eval_g_unchecked(&s2.state, zeta);
        }
        sum += kernel * inner;
    }
    Ok(pref * sum)
}
