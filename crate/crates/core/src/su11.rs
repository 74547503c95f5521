//! Representation-space model: Bargmann index, truncated coefficient
//! states over `|n,k⟩`, generator actions and SU(1,1) group elements.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::specfun::near_integer;
use crate::{Error, Result, C64};

/// Default starting truncation for adaptive constructors.
pub const DEFAULT_TRUNCATION: usize = 128;
/// Hard cap for adaptive truncation growth.
pub const MAX_TRUNCATION: usize = 4096;
/// Relative weight `|C_N|² / Σ|C_n|²` a constructor must reach at the top.
pub const TAIL_TOLERANCE: f64 = 1e-20;

const NORMALIZED_TOL: f64 = 1e-10;
const TRUNCATION_WARN: f64 = 1e-10;
/// States with at most this many nonzero coefficients are treated as
/// polynomials (infinite convergence radius).
const ROOT_TEST_WINDOW: usize = 32;
const RADIUS_CAP: f64 = 1e6;
/// Terms below this fraction of the largest `|C_n w_n|` are rounding noise.
const SIGNIFICANCE_FLOOR: f64 = 1e-13;

/// Label `k > 0` of a positive discrete-series representation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BargmannIndex(f64);

impl BargmannIndex {
    pub const QUARTER: BargmannIndex = BargmannIndex(0.25);
    pub const THREE_QUARTERS: BargmannIndex = BargmannIndex(0.75);

    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k > 0.0 {
            Ok(BargmannIndex(k))
        } else {
            Err(Error::InvalidIndex { k, reason: "k must be a positive real number" })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Integer or half-integer `k`, where the keyhole resolution is undefined.
    pub fn is_weak_special(self) -> bool {
        near_integer(2.0 * self.0, 1e-12)
    }

    /// Eigenvalue `k(k − 1)` of the Casimir operator.
    pub fn casimir(self) -> f64 {
        self.0 * (self.0 - 1.0)
    }
}

impl TryFrom<f64> for BargmannIndex {
    type Error = Error;
    fn try_from(k: f64) -> Result<Self> {
        BargmannIndex::new(k)
    }
}

impl From<BargmannIndex> for f64 {
    fn from(k: BargmannIndex) -> f64 {
        k.0
    }
}

/// `w_n = √(Γ(n+2k) / (n! Γ(2k)))` for `n < len`, the weights of the
/// monomials in the unit-disk function.
pub fn disk_weights(k: BargmannIndex, len: usize) -> Vec<f64> {
    let two_k = 2.0 * k.value();
    let mut w = Vec::with_capacity(len);
    let mut cur = 1.0;
    for n in 0..len {
        w.push(cur);
        cur *= ((n as f64 + two_k) / (n as f64 + 1.0)).sqrt();
    }
    w
}

/// A state `Σ C_n |n,k⟩` truncated at `N = coeffs.len() − 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "StateJson", try_from = "StateJson")]
pub struct CoefficientState {
    k: BargmannIndex,
    coeffs: Vec<C64>,
    truncation_loss: f64,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    k: f64,
    coeffs: Vec<[f64; 2]>,
}

impl From<CoefficientState> for StateJson {
    fn from(s: CoefficientState) -> Self {
        StateJson { k: s.k.value(), coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect() }
    }
}

impl TryFrom<StateJson> for CoefficientState {
    type Error = Error;
    fn try_from(j: StateJson) -> Result<Self> {
        let coeffs = j.coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect();
        CoefficientState::new(BargmannIndex::new(j.k)?, coeffs)
    }
}

impl CoefficientState {
    pub fn new(k: BargmannIndex, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a coefficient state needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::domain("coefficients must be finite"));
        }
        Ok(CoefficientState { k, coeffs, truncation_loss: 0.0 })
    }

    pub(crate) fn from_parts(k: BargmannIndex, coeffs: Vec<C64>) -> Self {
        CoefficientState { k, coeffs, truncation_loss: 0.0 }
    }

    /// Basis vector `|n,k⟩` inside a space truncated at `truncation`.
    pub fn basis(k: BargmannIndex, n: usize, truncation: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); truncation.max(n) + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Self::from_parts(k, coeffs)
    }

    pub fn zero(k: BargmannIndex, truncation: usize) -> Self {
        Self::from_parts(k, vec![C64::new(0.0, 0.0); truncation + 1])
    }

    pub fn k(&self) -> BargmannIndex {
        self.k
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Highest retained level `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORMALIZED_TOL
    }

    /// Weight `Σ|C_n|²` dropped off the top by operations on this state.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    /// `⟨self|other⟩ = Σ C̄ₙ Dₙ` over the common levels.
    pub fn inner(&self, other: &CoefficientState) -> C64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::domain("cannot normalize the zero state"));
        }
        Ok(self.map(|c| c / n))
    }

    pub fn scaled(&self, factor: C64) -> Self {
        self.map(|c| c * factor)
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        CoefficientState {
            k: self.k,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
            truncation_loss: self.truncation_loss,
        }
    }

    /// Same state padded with zeros or cut to the new truncation.
    pub fn with_truncation(&self, truncation: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(truncation + 1, C64::new(0.0, 0.0));
        CoefficientState { k: self.k, coeffs, truncation_loss: self.truncation_loss }
    }

    /// Relative weight of the top coefficient.
    pub fn tail_weight(&self) -> f64 {
        let total = self.norm_sqr();
        if total == 0.0 {
            0.0
        } else {
            self.coeffs[self.truncation()].norm_sqr() / total
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| c.norm_sqr() > 0.0).count()
    }

    /// True for states treated as polynomials in `ζ`; see
    /// [`radius_estimate`](Self::radius_estimate).
    pub fn is_finite_support(&self) -> bool {
        self.nonzero_count() <= ROOT_TEST_WINDOW
    }

    /// Estimated convergence radius of `G(ζ) = Σ C_n w_n ζⁿ`.
    ///
    /// `exp(−b)` from a least-squares fit `ln|C_n w_n| ≈ a + b n + c ln n`
    /// over the last 32 terms that stand above the rounding floor, clamped
    /// to `[1, 1e6]`. The `ln n` column absorbs the algebraic factor that a
    /// singularity `(1 − ζ/R)^{−p}` puts on the coefficients. Short states count as polynomials and get `1e6`, as do
    /// series that sink below the floor before three usable terms remain.
    pub fn radius_estimate(&self) -> f64 {
        if self.is_finite_support() {
            return RADIUS_CAP;
        }
        let w = disk_weights(self.k, self.coeffs.len());
        let t: Vec<f64> = self.coeffs.iter().zip(&w).map(|(c, w)| c.norm() * w).collect();
        let floor = SIGNIFICANCE_FLOOR * t.iter().copied().fold(0.0, f64::max);
        let pts: Vec<(f64, f64)> = t
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v > floor)
            .take(ROOT_TEST_WINDOW)
            .map(|(n, &v)| (n as f64, v.ln()))
            .collect();
        if pts.len() < 3 {
            return RADIUS_CAP;
        }
        let slope = fit_slope(&pts);
        if !slope.is_finite() {
            return RADIUS_CAP;
        }
        (-slope).exp().clamp(1.0, RADIUS_CAP)
    }

    /// `K₊|n,k⟩ = √((n+1)(n+2k)) |n+1,k⟩`. The truncation is kept, so the
    /// top coefficient is dropped and its weight recorded.
    pub fn apply_k_plus(&self) -> Self {
        let two_k = 2.0 * self.k.value();
        let len = self.coeffs.len();
        let mut out = vec![C64::new(0.0, 0.0); len];
        for n in 0..len - 1 {
            let nf = n as f64;
            out[n + 1] = self.coeffs[n] * ((nf + 1.0) * (nf + two_k)).sqrt();
        }
        let top = len as f64 - 1.0;
        let dropped = (self.coeffs[len - 1] * ((top + 1.0) * (top + two_k)).sqrt()).norm_sqr();
        let total = self.norm_sqr();
        if total > 0.0 && dropped > TRUNCATION_WARN * total {
            log::warn!("K₊ dropped weight {dropped:e} at truncation N = {}", len - 1);
        }
        CoefficientState { k: self.k, coeffs: out, truncation_loss: self.truncation_loss + dropped }
    }

    /// `K₋|n,k⟩ = √(n(n+2k−1)) |n−1,k⟩`.
    pub fn apply_k_minus(&self) -> Self {
        let two_k = 2.0 * self.k.value();
        let len = self.coeffs.len();
        let mut out = vec![C64::new(0.0, 0.0); len];
        for n in 1..len {
            let nf = n as f64;
            out[n - 1] = self.coeffs[n] * (nf * (nf + two_k - 1.0)).sqrt();
        }
        CoefficientState { k: self.k, coeffs: out, truncation_loss: self.truncation_loss }
    }

    /// `K₃|n,k⟩ = (n+k) |n,k⟩`.
    pub fn apply_k3(&self) -> Self {
        let k = self.k.value();
        let coeffs = self.coeffs.iter().enumerate().map(|(n, &c)| c * (n as f64 + k)).collect();
        CoefficientState { k: self.k, coeffs, truncation_loss: self.truncation_loss }
    }

    /// `‖(K₃² − ½(K₊K₋ + K₋K₊))ψ − k(k−1)ψ‖`, using
    /// `K₁² + K₂² = ½(K₊K₋ + K₋K₊)`.
    pub fn casimir_residual(&self) -> f64 {
        let k3k3 = self.apply_k3().apply_k3();
        let pm = self.apply_k_minus().apply_k_plus();
        let mp = self.apply_k_plus().apply_k_minus();
        let c = self.k.casimir();
        k3k3.coeffs
            .iter()
            .zip(&pm.coeffs)
            .zip(&mp.coeffs)
            .zip(&self.coeffs)
            .map(|(((a, b), d), s)| (a - 0.5 * (b + d) - c * s).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Coefficient `b` of `y ≈ a + b x + c ln x`, falling back to a straight
/// line when the three columns are too close to dependent.
fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for &(x, y) in pts {
        let r = [1.0, x, x.max(1.0).ln()];
        for i in 0..3 {
            aty[i] += r[i] * y;
            for j in 0..3 {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    let det3 = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let det = det3(&ata);
    if pts.len() >= 4 && det.abs() > 1e-12 * ata[0][0] * ata[1][1] * ata[2][2] {
        let mut m = ata;
        for i in 0..3 {
            m[i][1] = aty[i];
        }
        return det3(&m) / det;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    sxy / sxx
}

/// Evaluates `build(len)` with growing truncation (doubling from `start`)
/// until the top coefficient carries less than [`TAIL_TOLERANCE`] of the
/// total weight.
pub(crate) fn grow_truncation(
    k: BargmannIndex,
    start: usize,
    mut build: impl FnMut(usize) -> Result<Vec<C64>>,
) -> Result<CoefficientState> {
    let mut n = start.max(1);
    loop {
        let state = CoefficientState::from_parts(k, build(n + 1)?);
        if state.tail_weight() < TAIL_TOLERANCE || state.norm_sqr() == 0.0 {
            return Ok(state);
        }
        if n >= MAX_TRUNCATION {
            return Err(Error::TruncationLimit { limit: MAX_TRUNCATION });
        }
        n = (2 * n).min(MAX_TRUNCATION);
    }
}

/// Hyperbolic coordinates `(τ, φ)` of a point on the upper sheet of the
/// two-sheet hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicParams {
    pub tau: f64,
    pub phi: f64,
}

impl HyperbolicParams {
    pub fn new(tau: f64, phi: f64) -> Result<Self> {
        if !(tau >= 0.0) || !phi.is_finite() {
            return Err(Error::domain(format!("need τ ≥ 0 and finite φ, got ({tau}, {phi})")));
        }
        Ok(HyperbolicParams { tau, phi: phi.rem_euclid(2.0 * PI) })
    }

    /// Displacement amplitude `ξ = −(τ/2) e^{−iφ}` of `exp(ξK₊ − ξ̄K₋)`.
    pub fn xi(&self) -> C64 {
        -0.5 * self.tau * C64::from_polar(1.0, -self.phi)
    }

    /// Coherent-state label `ζ = −tanh(τ/2) e^{−iφ}`, always inside the unit disk.
    pub fn zeta(&self) -> C64 {
        -(0.5 * self.tau).tanh() * C64::from_polar(1.0, -self.phi)
    }
}

/// SU(1,1) element `[[a, b], [b̄, ā]]` with `|a|² − |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    a: C64,
    b: C64,
}

impl GroupElement {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if (det - 1.0).abs() > 1e-12 * a.norm_sqr().max(1.0) {
            return Err(Error::domain(format!("|a|² − |b|² = {det}, expected 1")));
        }
        Ok(GroupElement { a, b })
    }

    pub fn identity() -> Self {
        GroupElement { a: C64::new(1.0, 0.0), b: C64::new(0.0, 0.0) }
    }

    /// `a = cosh(τ/2)`, `b = sinh(τ/2) e^{iφ}`.
    pub fn from_hyperbolic(p: HyperbolicParams) -> Self {
        let h = 0.5 * p.tau;
        GroupElement { a: C64::new(h.cosh(), 0.0), b: h.sinh() * C64::from_polar(1.0, p.phi) }
    }

    /// Element acting as `exp(ξK₊ − ξ̄K₋)`: `a = cosh|ξ|`,
    /// `b = −(ξ̄/|ξ|) sinh|ξ|`. Its vacuum image is the coherent state with
    /// label `(ξ/|ξ|) tanh|ξ|`.
    pub fn from_displacement(xi: C64) -> Self {
        let r = xi.norm();
        if r == 0.0 {
            return Self::identity();
        }
        GroupElement { a: C64::new(r.cosh(), 0.0), b: -(xi.conj() / r) * r.sinh() }
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn inverse(&self) -> Self {
        GroupElement { a: self.a.conj(), b: -self.b }
    }

    /// Matrix product `self · other`; as Möbius maps this is
    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupElement) -> Self {
        GroupElement {
            a: self.a * other.a + self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    /// `ζ ↦ (aζ + b) / (b̄ζ + ā)`.
    pub fn mobius(&self, zeta: C64) -> C64 {
        (self.a * zeta + self.b) / (self.b.conj() * zeta + self.a.conj())
    }

    /// Label `−b̄/ā` of the coherent state this element makes from the vacuum.
    pub fn coherent_label(&self) -> C64 {
        -self.b.conj() / self.a.conj()
    }

    pub fn determinant_defect(&self) -> f64 {
        (self.a.norm_sqr() - self.b.norm_sqr() - 1.0).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: f64) -> BargmannIndex {
        BargmannIndex::new(v).unwrap()
    }

    #[test]
    fn index_validation() {
        assert!(BargmannIndex::new(0.0).is_err());
        assert!(BargmannIndex::new(-1.0).is_err());
        assert!(k(0.5).is_weak_special());
        assert!(k(2.0).is_weak_special());
        assert!(!k(0.3).is_weak_special());
    }

    #[test]
    fn k_plus_on_basis() {
        let s = CoefficientState::basis(k(0.25), 0, 8).apply_k_plus();
        assert!((s.coeffs()[1].re - 0.5f64.sqrt()).abs() < 1e-15);
        let s = CoefficientState::basis(k(1.0), 1, 8).apply_k_plus();
        assert!((s.coeffs()[2].re - 6f64.sqrt()).abs() < 1e-15);
        let z = CoefficientState::zero(k(1.0), 8).apply_k_plus();
        assert_eq!(z.norm_sqr(), 0.0);
    }

    #[test]
    fn k_plus_records_dropped_weight() {
        let s = CoefficientState::basis(k(1.0), 4, 4).apply_k_plus();
        assert_eq!(s.norm_sqr(), 0.0);
        assert!((s.truncation_loss() - 5.0 * 6.0).abs() < 1e-12);
    }

    #[test]
    fn k_minus_on_basis() {
        let s = CoefficientState::basis(k(0.25), 0, 8).apply_k_minus();
        assert_eq!(s.norm_sqr(), 0.0);
        let s = CoefficientState::basis(k(0.25), 2, 8).apply_k_minus();
        assert!((s.coeffs()[1].re - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn k3_diagonal() {
        let s = CoefficientState::basis(k(0.75), 3, 8).apply_k3();
        assert!((s.coeffs()[3].re - 3.75).abs() < 1e-15);
        let s = CoefficientState::basis(k(0.25), 0, 8).apply_k3();
        assert!((s.coeffs()[0].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn casimir_on_lowest_state() {
        for v in [0.25, 0.75] {
            let s = CoefficientState::basis(k(v), 0, 8);
            assert!(s.casimir_residual() < 1e-12);
        }
    }

    #[test]
    fn hyperbolic_group_elements() {
        let g = GroupElement::from_hyperbolic(HyperbolicParams::new(0.0, 1.3).unwrap());
        assert_eq!(g, GroupElement::identity());
        let g = GroupElement::from_hyperbolic(HyperbolicParams::new(2.0, 0.0).unwrap());
        assert!((g.a().re - 1.543_080_6).abs() < 1e-7);
        assert!((g.b().re - 1.175_201_2).abs() < 1e-7);
        let g = GroupElement::from_hyperbolic(HyperbolicParams::new(1.0, PI / 2.0).unwrap());
        assert!((g.b() - C64::new(0.0, 0.5f64.sinh())).norm() < 1e-15);
        assert!((g.a().re - 0.5f64.cosh()).abs() < 1e-15);
    }

    #[test]
    fn labels_agree_between_parameterizations() {
        let p = HyperbolicParams::new(1.7, 0.9).unwrap();
        let from_tau = GroupElement::from_hyperbolic(p);
        let from_xi = GroupElement::from_displacement(p.xi());
        assert!((from_tau.a() - from_xi.a()).norm() < 1e-14);
        assert!((from_tau.b() - from_xi.b()).norm() < 1e-14);
        assert!((from_tau.coherent_label() - p.zeta()).norm() < 1e-14);
    }

    #[test]
    fn inverse_and_identity() {
        let g = GroupElement::from_hyperbolic(HyperbolicParams::new(1.1, 2.0).unwrap());
        let e = g.compose(&g.inverse());
        assert!((e.a() - 1.0).norm() < 1e-12 && e.b().norm() < 1e-12);
        assert_eq!(g.compose(&GroupElement::identity()), g);
    }

    #[test]
    fn group_element_rejects_bad_determinant() {
        assert!(GroupElement::new(C64::new(1.0, 0.0), C64::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn json_schema() {
        let s = CoefficientState::new(k(0.25), vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j, serde_json::json!({"k": 0.25, "coeffs": [[0.6, 0.0], [0.0, 0.8]]}));
        let back: CoefficientState = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<CoefficientState>(r#"{"k": -1, "coeffs": [[1,0]]}"#).is_err());
    }

    #[test]
    fn radius_of_polynomial_is_capped() {
        let s = CoefficientState::new(k(0.3), vec![C64::new(1.0, 0.0); 5]).unwrap();
        assert_eq!(s.radius_estimate(), 1e6);
    }

    #[test]
    fn radius_of_geometric_series() {
        // C_n w_n = 0.5ⁿ has radius 2
        let len = 80;
        let w = disk_weights(k(0.7), len);
        let coeffs = (0..len).map(|n| C64::new(0.5f64.powi(n as i32) / w[n], 0.0)).collect();
        let s = CoefficientState::new(k(0.7), coeffs).unwrap();
        assert!((s.radius_estimate() - 2.0).abs() < 1e-9);
    }
}
