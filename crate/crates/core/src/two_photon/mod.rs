//! The two-photon realization `K₊ = a†²/2`, `K₋ = a²/2`,
//! `K₃ = (aa† + a†a)/4` on the boson Fock space. Even Fock states carry
//! `k = 1/4`, odd ones `k = 3/4`.

mod spectrum;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analytic::{beta_pm, eval_f, perelomov_coefficients};
use crate::specfun::kummer_phi;
use crate::su11::{BargmannIndex, CoefficientState, DEFAULT_TRUNCATION, MAX_TRUNCATION, TAIL_TOLERANCE};
use crate::{Error, Result, C64};

pub use spectrum::{
    brute_force_eigen, brute_force_matrix, brute_force_spectrum, displace, displacement_matrix, eigenfunction_gd,
    eigenvector_parity, params_to_squeeze, squeeze, spectrum_analytic, squeezed_resolution_check, HamiltonianParams,
    SpectrumLevel, SpectrumResult, SqueezeParams,
};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

pub const K_EVEN: BargmannIndex = BargmannIndex::QUARTER;
pub const K_ODD: BargmannIndex = BargmannIndex::THREE_QUARTERS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    KPlus,
    KMinus,
    K3,
}

/// State `Σ C_n |n⟩` on the Fock space, truncated at `M = len − 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullFockState {
    #[serde(with = "pairs")]
    coeffs: Vec<C64>,
}

mod pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("a Fock state needs at least one coefficient"));
        }
        Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl FullFockState {
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a Fock state needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::domain("coefficients must be finite"));
        }
        Ok(FullFockState { coeffs })
    }

    pub fn basis(n: usize, truncation: usize) -> Self {
        let mut coeffs = vec![ZERO; truncation.max(n) + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        FullFockState { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-10
    }

    pub fn inner(&self, other: &FullFockState) -> C64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    /// Interleaves even (`k = 1/4`) and odd (`k = 3/4`) components.
    pub fn from_split(even: &CoefficientState, odd: &CoefficientState) -> Self {
        let len = (2 * even.coeffs().len()).max(2 * odd.coeffs().len());
        let mut coeffs = vec![ZERO; len];
        for (n, c) in even.coeffs().iter().enumerate() {
            coeffs[2 * n] = *c;
        }
        for (n, c) in odd.coeffs().iter().enumerate() {
            coeffs[2 * n + 1] = *c;
        }
        FullFockState { coeffs }
    }

    /// `Σ C_n αⁿ / √n!`.
    pub fn bargmann(&self, alpha: C64) -> C64 {
        let mut p = C64::new(1.0, 0.0);
        let mut sum = ZERO;
        for (n, c) in self.coeffs.iter().enumerate() {
            sum += c * p;
            p *= alpha / ((n + 1) as f64).sqrt();
        }
        sum
    }
}

/// A Fock state cut into its two irreducible components, with
/// `C_{2n} = even_n` and `C_{2n+1} = odd_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonSplit {
    pub even: CoefficientState,
    pub odd: CoefficientState,
    pub ne: f64,
    pub no: f64,
}

pub fn split_even_odd(psi: &FullFockState) -> TwoPhotonSplit {
    let even: Vec<C64> = psi.coeffs.iter().step_by(2).copied().collect();
    let mut odd: Vec<C64> = psi.coeffs.iter().skip(1).step_by(2).copied().collect();
    if odd.is_empty() {
        odd.push(ZERO);
    }
    let even = CoefficientState::from_parts(K_EVEN, even);
    let odd = CoefficientState::from_parts(K_ODD, odd);
    TwoPhotonSplit { ne: even.norm_sqr(), no: odd.norm_sqr(), even, odd }
}

/// `S(ξ)|0⟩` with `ζ = (ξ/|ξ|) tanh|ξ|`: the `k = 1/4` Perelomov state on
/// even Fock levels.
pub fn squeezed_vacuum(zeta: C64) -> Result<FullFockState> {
    let s = perelomov_coefficients(zeta, K_EVEN, DEFAULT_TRUNCATION)?;
    Ok(FullFockState::from_split(&s, &CoefficientState::zero(K_ODD, 0)))
}

/// `S(ξ)|1⟩`, the `k = 3/4` Perelomov state on odd Fock levels.
pub fn squeezed_one_photon(zeta: C64) -> Result<FullFockState> {
    let s = perelomov_coefficients(zeta, K_ODD, DEFAULT_TRUNCATION)?;
    Ok(FullFockState::from_split(&CoefficientState::zero(K_EVEN, 0), &s))
}

/// Even or odd cat state `(|α⟩ ± |−α⟩)/√(2(1 ± e^{−2|α|²}))`, an
/// eigenstate of `a²` with eigenvalue `α²`.
///
/// It coincides with the Barut–Girardello state at `z = α²/2` up to the
/// phase of `z^{k−1/2}`.
pub fn even_odd_coherent(alpha: C64, parity: Parity) -> Result<FullFockState> {
    let r2 = alpha.norm_sqr();
    let norm = match parity {
        Parity::Even => 2.0 * (1.0 + (-2.0 * r2).exp()),
        Parity::Odd => {
            if alpha.norm() < 1e-6 {
                return Err(Error::domain("the odd cat state is undefined at α = 0"));
            }
            -2.0 * (-2.0 * r2).exp_m1()
        }
    };
    let first = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let scale = 2.0 * (-0.5 * r2).exp() / norm.sqrt();
    let mut m = DEFAULT_TRUNCATION;
    loop {
        let mut coeffs = vec![ZERO; m + 1];
        let mut p = C64::new(scale, 0.0);
        for (n, c) in coeffs.iter_mut().enumerate() {
            if n % 2 == first {
                *c = p;
            }
            p *= alpha / ((n + 1) as f64).sqrt();
        }
        let total: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let tail = coeffs[m - 1].norm_sqr().max(coeffs[m].norm_sqr());
        if tail < TAIL_TOLERANCE * total {
            return FullFockState::new(coeffs);
        }
        if m >= MAX_TRUNCATION {
            return Err(Error::TruncationLimit { limit: MAX_TRUNCATION });
        }
        m = (2 * m).min(MAX_TRUNCATION);
    }
}

/// Bargmann function through the two Barut–Girardello functions at
/// `z = α²/2`: `B(α) = π^{1/4}[F_e(α²/2) + (α/√2) F_o(α²/2)]`, where the
/// component functions carry their own norms `√N_e`, `√N_o`.
pub fn bargmann_synthesis(split: &TwoPhotonSplit, alpha: C64) -> C64 {
    let z = 0.5 * alpha * alpha;
    PI.powf(0.25) * (eval_f(&split.even, z) + alpha / 2f64.sqrt() * eval_f(&split.odd, z))
}

/// Solution of the Barut–Girardello eigenvalue equation
/// `(β₁K₁ + β₂K₂ + β₃K₃)F = λF` in Kummer form, with `Δ = √(β₃² − β₁² − β₂²)`
/// and `s = (Δ − β₃)/(2β₊)`:
///
/// * even: `e^{sz} Φ(k − λ/Δ; 2k; −Δz/β₊)`
/// * odd: `e^{sz} (2z)^{1−2k} Φ(1 − k − λ/Δ; 2 − 2k; −Δz/β₊)`
pub fn kummer_eigen_solution(beta: [C64; 3], lambda: C64, k: BargmannIndex, branch: Parity, z: C64) -> Result<C64> {
    let (bp, _) = beta_pm(beta[0], beta[1]);
    if bp.norm() < 1e-14 {
        return Err(Error::domain("β₊ = 0 makes the Kummer form degenerate"));
    }
    let delta = (beta[2] * beta[2] - beta[0] * beta[0] - beta[1] * beta[1]).sqrt();
    if delta.norm() < 1e-14 {
        return Err(Error::domain("Δ = 0 makes the Kummer form degenerate"));
    }
    let kv = k.value();
    let s = (delta - beta[2]) / (2.0 * bp);
    let x = -delta * z / bp;
    match branch {
        Parity::Even => Ok((s * z).exp() * kummer_phi(kv - lambda / delta, C64::new(2.0 * kv, 0.0), x)?),
        Parity::Odd => {
            let pre = (s * z).exp() * (2.0 * z).powf(1.0 - 2.0 * kv);
            Ok(pre * kummer_phi(1.0 - kv - lambda / delta, C64::new(2.0 - 2.0 * kv, 0.0), x)?)
        }
    }
}

fn lower(v: &[C64], eta: C64) -> Vec<C64> {
    (0..v.len())
        .map(|n| {
            let up = if n + 1 < v.len() { v[n + 1] * ((n + 1) as f64).sqrt() } else { ZERO };
            up - eta * v[n]
        })
        .collect()
}

fn raise(v: &[C64], eta: C64) -> Vec<C64> {
    (0..v.len())
        .map(|n| {
            let down = if n > 0 { v[n - 1] * (n as f64).sqrt() } else { ZERO };
            down - eta.conj() * v[n]
        })
        .collect()
}

/// Displaced generators `K₊(η) = ½(a† − η̄)²`, `K₋(η) = ½(a − η)²`,
/// `K₃(η) = ½(a† − η̄)(a − η) + ¼`. Weight pushed past the truncation is
/// dropped with a warning.
pub fn displaced_generator_apply(which: Generator, eta: C64, psi: &FullFockState) -> FullFockState {
    let v = &psi.coeffs;
    let top = v.len() - 1;
    if top >= 1 && (v[top].norm_sqr() + v[top - 1].norm_sqr()) > 1e-20 * psi.norm_sqr().max(f64::MIN_POSITIVE) {
        if which != Generator::KMinus {
            log::warn!("displaced generator applied without two levels of headroom at M = {top}");
        }
    }
    let coeffs = match which {
        Generator::KPlus => raise(&raise(v, eta), eta).into_iter().map(|c| 0.5 * c).collect(),
        Generator::KMinus => lower(&lower(v, eta), eta).into_iter().map(|c| 0.5 * c).collect(),
        Generator::K3 => {
            raise(&lower(v, eta), eta).into_iter().zip(v).map(|(c, x)| 0.5 * c + 0.25 * x).collect()
        }
    };
    FullFockState { coeffs }
}
