//! The disk picture `G(ζ;k)` and the Barut–Girardello picture `F(z;k)` of a
//! coefficient state, the Laplace transform joining them, overlaps between
//! the two families of coherent states, and the SU(1,1) action in each
//! picture.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::quadrature::exp_sinh_log;
use crate::specfun::{bessel_i, gamma_real, laguerre_assoc};
use crate::su11::{disk_weights, grow_truncation, BargmannIndex, CoefficientState, GroupElement};
use crate::{Error, QuadratureSpec, Result, C64, I};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(C64);

impl DiskPoint {
    pub fn new(zeta: C64) -> Result<Self> {
        if zeta.norm() < 1.0 {
            Ok(DiskPoint(zeta))
        } else {
            Err(Error::domain(format!("|ζ| = {} is not inside the unit disk", zeta.norm())))
        }
    }

    pub fn zeta(self) -> C64 {
        self.0
    }
}

/// A state whose disk function converges beyond the unit circle.
#[derive(Debug, Clone)]
pub struct ExtendedDiskFunction {
    pub state: CoefficientState,
    pub radius_estimate: f64,
}

impl ExtendedDiskFunction {
    pub fn new(state: CoefficientState) -> Self {
        let radius_estimate = state.radius_estimate();
        ExtendedDiskFunction { state, radius_estimate }
    }

    /// Membership in the space of functions holomorphic on `|ζ| < 1 + ε`.
    pub fn extends_past(&self, eps: f64) -> bool {
        self.radius_estimate >= 1.0 + eps
    }

    pub fn eval(&self, zeta: C64) -> Result<C64> {
        eval_g(&self.state, zeta)
    }
}

fn one_minus_sqr(r: f64) -> f64 {
    (1.0 - r) * (1.0 + r)
}

/// Coefficients `C_n = (1−|ζ|²)^k w_n ζⁿ` of the Perelomov coherent state,
/// starting from truncation `n` and growing as needed.
pub fn perelomov_coefficients(zeta: C64, k: BargmannIndex, n: usize) -> Result<CoefficientState> {
    DiskPoint::new(zeta)?;
    let two_k = 2.0 * k.value();
    let c0 = one_minus_sqr(zeta.norm()).powf(k.value());
    grow_truncation(k, n, |len| {
        let mut out = Vec::with_capacity(len);
        let mut c = C64::new(c0, 0.0);
        for j in 0..len {
            out.push(c);
            c *= zeta * ((j as f64 + two_k) / (j as f64 + 1.0)).sqrt();
        }
        Ok(out)
    })
}

/// Barut–Girardello normalization `z^{k−1/2} / √I_{2k−1}(2|z|)` with the
/// principal branch.
fn bg_prefactor(z: C64, k: BargmannIndex) -> Result<C64> {
    let i = bessel_i(2.0 * k.value() - 1.0, 2.0 * z.norm())?;
    let p = z.powf(k.value() - 0.5) / i.sqrt();
    if p.re.is_finite() && p.im.is_finite() {
        Ok(p)
    } else {
        Err(Error::domain(format!("normalization overflows at |z| = {}", z.norm())))
    }
}

/// Coefficients `C_n = z^{k−1/2} zⁿ / √(I_{2k−1}(2|z|) n! Γ(n+2k))` of the
/// Barut–Girardello state, the eigenstate of `K₋` with eigenvalue `z`.
pub fn bg_coefficients(z: C64, k: BargmannIndex, n: usize) -> Result<CoefficientState> {
    if z == ZERO {
        return Ok(CoefficientState::basis(k, 0, n));
    }
    let two_k = 2.0 * k.value();
    let c0 = bg_prefactor(z, k)? / gamma_real(two_k)?.sqrt();
    grow_truncation(k, n, |len| {
        let mut out = Vec::with_capacity(len);
        let mut c = c0;
        for j in 0..len {
            out.push(c);
            let jf = j as f64;
            c *= z / ((jf + 1.0) * (jf + two_k)).sqrt();
        }
        Ok(out)
    })
}

/// `G(ζ;k) = Σ C_n w_n ζⁿ`.
pub fn eval_g(s: &CoefficientState, zeta: C64) -> Result<C64> {
    let radius = s.radius_estimate();
    if zeta.norm() >= radius {
        return Err(Error::OutsideRadius { modulus: zeta.norm(), radius });
    }
    Ok(eval_g_unchecked(s, zeta))
}

pub(crate) fn eval_g_unchecked(s: &CoefficientState, zeta: C64) -> C64 {
    let two_k = 2.0 * s.k().value();
    let mut p = ONE;
    let mut sum = ZERO;
    for (n, c) in s.coeffs().iter().enumerate() {
        sum += c * p;
        let nf = n as f64;
        p *= zeta * ((nf + two_k) / (nf + 1.0)).sqrt();
    }
    sum
}

/// `F(z;k) = Σ C_n zⁿ / √(n! Γ(n+2k))`, an entire function.
pub fn eval_f(s: &CoefficientState, z: C64) -> C64 {
    let two_k = 2.0 * s.k().value();
    let mut p = C64::new(1.0 / gamma_real(two_k).expect("2k > 0").sqrt(), 0.0);
    let mut sum = ZERO;
    for (n, c) in s.coeffs().iter().enumerate() {
        sum += c * p;
        let nf = n as f64;
        p *= z / ((nf + 1.0) * (nf + two_k)).sqrt();
    }
    sum
}

/// Closed-form overlap `⟨ζ̄,k|z,k⟩ = z^{k−1/2}(1−|ζ|²)^k e^{zζ} / √(I_{2k−1}(2|z|) Γ(2k))`.
///
/// At `z = 0` the value is the limit along the convention
/// `|z=0,k⟩ = |0,k⟩`, which is `(1−|ζ|²)^k`; for `k < 1/2` the branch of
/// `z^{k−1/2}` makes this a domain error.
pub fn overlap_perelomov_bg(zeta: C64, z: C64, k: BargmannIndex) -> Result<C64> {
    DiskPoint::new(zeta)?;
    let c = one_minus_sqr(zeta.norm()).powf(k.value());
    if z == ZERO {
        if k.value() < 0.5 {
            return Err(Error::domain("z^{k-1/2} has a branch point at z = 0 for k < 1/2"));
        }
        return Ok(C64::new(c, 0.0));
    }
    Ok(bg_prefactor(z, k)? * c * (z * zeta).exp() / gamma_real(2.0 * k.value())?.sqrt())
}

/// The state whose disk function is `G(gζ) (b̄ζ + ā)^{−2k}`.
///
/// Coefficients come from a DFT of that function on the unit circle, which
/// the Möbius map preserves, so the input only needs a radius above 1.
pub fn mobius_transform_g(s: &CoefficientState, g: &GroupElement) -> Result<CoefficientState> {
    let radius = s.radius_estimate();
    if radius <= 1.0 {
        return Err(Error::OutsideRadius { modulus: 1.0, radius });
    }
    let k = s.k();
    let two_k = 2.0 * k.value();
    let (a, b) = (g.a(), g.b());
    let transformed = |zeta: C64| {
        let jac = a.conj().powf(-two_k) * (ONE + b.conj() / a.conj() * zeta).powf(-two_k);
        eval_g_unchecked(s, g.mobius(zeta)) * jac
    };
    grow_truncation(k, s.truncation(), |len| {
        let p = 4 * len;
        let roots: Vec<C64> = (0..p).map(|j| C64::from_polar(1.0, -2.0 * PI * j as f64 / p as f64)).collect();
        let samples: Vec<C64> = roots.iter().map(|r| transformed(r.conj())).collect();
        let w = disk_weights(k, len);
        Ok((0..len)
            .map(|n| {
                let a_n: C64 = samples.iter().enumerate().map(|(j, v)| v * roots[(n * j) % p]).sum();
                a_n / (p as f64 * w[n])
            })
            .collect())
    })
}

/// `G(1/ρ;k)` as the Laplace transform of `F`, for `Re ρ > 0`, `|ρ| > 1`.
pub fn laplace_f_to_g(s: &CoefficientState, rho: C64, quad: &QuadratureSpec) -> Result<C64> {
    if !(rho.re > 0.0 && rho.norm() > 1.0) {
        return Err(Error::domain(format!("Laplace transform needs Re ρ > 0 and |ρ| > 1, got {rho}")));
    }
    laplace_half_line(s.k(), rho, |z| eval_f(s, z), quad.laplace_nodes)
}

/// `ρ^{2k}/√Γ(2k) ∫₀^∞ z^{2k−1} f(z) e^{−ρz} dz` along the ray `z = u/ρ`,
/// which turns it into `1/√Γ(2k) ∫₀^∞ u^{2k−1} f(u/ρ) e^{−u} du`. For
/// polynomial `f` this continues the transform to every `ρ ≠ 0`.
pub(crate) fn laplace_half_line(
    k: BargmannIndex,
    rho: C64,
    f: impl Fn(C64) -> C64,
    nodes: usize,
) -> Result<C64> {
    let two_k = 2.0 * k.value();
    // far enough left that u^{2k} < 1e-16, far enough right for e^{-u} < 1e-300
    let t_lo = -(2.0 / PI * (40.0 / two_k).min(700.0)).asinh();
    let t_hi = (2.0 / PI * 700f64.ln()).asinh();
    let mut sum = ZERO;
    let mut scale = 0.0f64;
    let mut last = 0.0;
    for (ln_u, w) in exp_sinh_log(nodes, t_lo, t_hi) {
        let u = ln_u.exp();
        let term = w * (two_k * ln_u - u).exp() * f(C64::new(u, 0.0) / rho);
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::Quadrature(format!("Laplace integrand overflowed at u = {u:e}")));
        }
        sum += term;
        scale = scale.max(term.norm());
        last = term.norm();
    }
    if last > 1e-14 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Quadrature("Laplace integrand has not decayed at the cutoff".into()));
    }
    Ok(sum / gamma_real(two_k)?.sqrt())
}

/// `F(z;k)` recovered from `G` by the inverse Laplace transform, for
/// `Re z > 0`.
pub fn inverse_laplace_g_to_f(s: &CoefficientState, z: C64, quad: &QuadratureSpec) -> Result<C64> {
    bromwich_inverse(s.k(), z, |zeta| eval_g_unchecked(s, zeta), quad.bromwich_nodes)
}

/// `F(z)` after a full trip through the disk picture: `G` is produced by
/// the Laplace integral of `F` (continued to the whole contour), then
/// inverted. Only exact for states with finitely many coefficients.
pub fn laplace_roundtrip_f(s: &CoefficientState, z: C64, quad: &QuadratureSpec) -> Result<C64> {
    let k = s.k();
    let failed = std::cell::Cell::new(None);
    let g = |zeta: C64| match laplace_half_line(k, zeta.inv(), |u| eval_f(s, u), quad.laplace_nodes) {
        Ok(v) => v,
        Err(e) => {
            failed.set(Some(e));
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let value = bromwich_inverse(k, z, g, quad.bromwich_nodes);
    match failed.into_inner() {
        Some(e) => Err(e),
        None => value,
    }
}

/// `√Γ(2k) z^{1−2k} (1/2πi) ∫ ρ^{−2k} g(1/ρ) e^{ρz} dρ`, evaluated in
/// the rotated variable `σ = ρz` as `√Γ(2k) (1/2πi) ∫ σ^{−2k} g(z/σ) e^σ dσ`
/// on the hyperbola `σ(u) = μ(1 − sin(π/4 − iu))`.
///
/// `|σ|` is smallest at `u = 0`, where it equals `max(2|z|, 2)`, so `g` is
/// only sampled on `|ζ| ≤ 1/2`. `Re σ` falls monotonically along both arms
/// and the trapezoid rule in `u` converges geometrically.
pub(crate) fn bromwich_inverse(
    k: BargmannIndex,
    z: C64,
    g: impl Fn(C64) -> C64,
    nodes: usize,
) -> Result<C64> {
    if !(z.re > 0.0) {
        return Err(Error::domain(format!("inverse Laplace transform needs Re z > 0, got {z}")));
    }
    let two_k = 2.0 * k.value();
    let alpha = FRAC_PI_4;
    let mu = (2.0 * z.norm()).max(2.0) / (1.0 - alpha.sin());
    let sigma = |u: f64| mu * (ONE - (C64::new(alpha, -u)).sin());
    let dsigma = |u: f64| I * mu * C64::new(alpha, -u).cos();
    // e^{Re σ} has dropped by e^{-50} from its peak at the cutoff
    let cut = (1.0 + 50.0 / (mu * alpha.sin())).acosh();
    let n = nodes.max(8);
    let h = 2.0 * cut / (n - 1) as f64;
    let mut sum = ZERO;
    for j in 0..n {
        let u = -cut + j as f64 * h;
        let s = sigma(u);
        let w = if j == 0 || j == n - 1 { 0.5 * h } else { h };
        sum += w * s.powf(-two_k) * g(z / s) * s.exp() * dsigma(u);
    }
    let value = gamma_real(two_k)?.sqrt() * sum / (2.0 * PI * I);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Quadrature(format!("inverse Laplace sum is not finite at z = {z}")))
    }
}

/// `F` of the transformed state, summed through the Laguerre kernel
/// `R_n(z) = (b/ā)ⁿ n! L_n^{2k−1}(−z/(āb))` with prefactor
/// `e^{−b̄z/ā} / ā^{2k}`. Pure rotations (`b = 0`) go through
/// [`bg_rotation_transform`].
pub fn bg_su11_transform(s: &CoefficientState, g: &GroupElement, z: C64) -> Result<C64> {
    let (a, b) = (g.a(), g.b());
    if b.norm() < 1e-12 {
        return Err(Error::domain("b = 0: use the rotation transform"));
    }
    let two_k = 2.0 * s.k().value();
    let ratio = b / a.conj();
    let x = -z / (a.conj() * b);
    let mut v = 1.0 / gamma_real(two_k)?.sqrt();
    let mut pow = ONE;
    let mut sum = ZERO;
    for (n, c) in s.coeffs().iter().enumerate() {
        if *c != ZERO {
            sum += c * pow * v * laguerre_assoc(n, two_k - 1.0, x);
        }
        let nf = n as f64;
        v *= ((nf + 1.0) / (nf + two_k)).sqrt();
        pow *= ratio;
    }
    Ok((-b.conj() * z / a.conj()).exp() / a.conj().powf(two_k) * sum)
}

/// Rotation subgroup `g = (a, 0)` with `|a| = 1`: `F ↦ ā^{−2k} F(az/ā)`.
pub fn bg_rotation_transform(s: &CoefficientState, a: C64, z: C64) -> Result<C64> {
    if (a.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!("rotation needs |a| = 1, got {}", a.norm())));
    }
    Ok(a.conj().powf(-2.0 * s.k().value()) * eval_f(s, a * z / a.conj()))
}

/// `β± = (β₁ ± iβ₂)/2`.
pub fn beta_pm(beta1: C64, beta2: C64) -> (C64, C64) {
    (0.5 * (beta1 + I * beta2), 0.5 * (beta1 - I * beta2))
}

/// Linear ODE `Σ_j p_j(x) f^{(j)}(x) = 0`; `coeffs[j]` holds `p_j` in
/// ascending powers of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeCoefficients {
    pub coeffs: Vec<Vec<C64>>,
}

impl OdeCoefficients {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn poly(&self, j: usize, x: C64) -> C64 {
        self.coeffs[j].iter().rev().fold(ZERO, |acc, c| acc * x + c)
    }

    /// `Σ_j p_j(x) derivs[j]`, with `derivs = [f(x), f'(x), …]`.
    pub fn residual(&self, x: C64, derivs: &[C64]) -> C64 {
        (0..=self.order()).map(|j| self.poly(j, x) * derivs[j]).sum()
    }
}

fn check_beta(beta: [C64; 3]) -> Result<()> {
    if beta.iter().all(|b| *b == ZERO) {
        Err(Error::domain("all β vanish"))
    } else {
        Ok(())
    }
}

/// Eigenvalue problem `(β₁K₁ + β₂K₂ + β₃K₃)ψ = λψ` in the disk picture:
/// `(β₊ + β₃ζ + β₋ζ²)G' + (2kβ₋ζ + kβ₃ − λ)G = 0`.
pub fn build_eigen_ode_disk(
    beta1: C64,
    beta2: C64,
    beta3: C64,
    lambda: C64,
    k: BargmannIndex,
) -> Result<OdeCoefficients> {
    check_beta([beta1, beta2, beta3])?;
    let (bp, bm) = beta_pm(beta1, beta2);
    let k = k.value();
    Ok(OdeCoefficients { coeffs: vec![vec![k * beta3 - lambda, 2.0 * k * bm], vec![bp, beta3, bm]] })
}

/// Same problem in the Barut–Girardello picture:
/// `β₊zF'' + (β₃z + 2kβ₊)F' + (β₋z + kβ₃ − λ)F = 0`.
pub fn build_eigen_ode_bg(
    beta1: C64,
    beta2: C64,
    beta3: C64,
    lambda: C64,
    k: BargmannIndex,
) -> Result<OdeCoefficients> {
    check_beta([beta1, beta2, beta3])?;
    let (bp, bm) = beta_pm(beta1, beta2);
    let k = k.value();
    Ok(OdeCoefficients {
        coeffs: vec![vec![k * beta3 - lambda, bm], vec![2.0 * k * bp, beta3], vec![ZERO, bp]],
    })
}
