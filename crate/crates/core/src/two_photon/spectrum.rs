//! The squeezed and displaced oscillator
//! `H = ω(a†a + ½) + (g/2)a†² + (ḡ/2)a² + f a† + f̄ a`: closed-form spectrum,
//! eigenfunctions in the disk picture, and a Fock-space diagonalization
//! to check them against.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{K_EVEN, K_ODD};
use crate::linalg::{expm, expmv, hermitian_eigen, CMatrix, HermitianEigen};
use crate::resolutions::{weak_gram, IdentityReport};
use crate::su11::{disk_weights, grow_truncation, BargmannIndex, CoefficientState, DEFAULT_TRUNCATION};
use crate::{Error, QuadratureSpec, Result, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const HEADROOM: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    pub omega: f64,
    pub g: C64,
    pub f: C64,
}

impl HamiltonianParams {
    pub fn new(omega: f64, g: C64, f: C64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain(format!("ω must be positive, got {omega}")));
        }
        if !(g.re.is_finite() && g.im.is_finite() && f.re.is_finite() && f.im.is_finite()) {
            return Err(Error::domain("g and f must be finite"));
        }
        Ok(HamiltonianParams { omega, g, f })
    }

    /// `ω² − |g|²`, refusing the continuous-spectrum regime.
    fn discrete_gap_sqr(&self) -> Result<f64> {
        let d2 = (self.omega - self.g.norm()) * (self.omega + self.g.norm());
        if d2 > 0.0 {
            Ok(d2)
        } else {
            Err(Error::ContinuousSpectrum { omega: self.omega, g_abs: self.g.norm() })
        }
    }

    /// `Δ = √(ω² − |g|²)`.
    pub fn big_delta(&self) -> Result<f64> {
        Ok(self.discrete_gap_sqr()?.sqrt())
    }

    /// Displacement `η = (g f̄ − ω f)/(ω² − |g|²)`, the solution of
    /// `ωη + gη̄ = −f`.
    pub fn eta(&self) -> Result<C64> {
        Ok((self.g * self.f.conj() - self.omega * self.f) / self.discrete_gap_sqr()?)
    }

    /// Energy shift `δ = (ω|f|² − Re(g f̄²))/(ω² − |g|²)`.
    pub fn delta(&self) -> Result<f64> {
        let fb = self.f.conj();
        Ok((self.omega * self.f.norm_sqr() - (self.g * fb * fb).re) / self.discrete_gap_sqr()?)
    }

    /// `χ = (ω − Δ)/g`, written as `ḡ/(ω + Δ)` so it stays finite at `g = 0`.
    pub fn chi(&self) -> Result<C64> {
        Ok(self.g.conj() / (self.omega + self.big_delta()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub l: usize,
    pub k: f64,
    /// Fock label `n = 2l + 2k − 1/2` of the matching squeezed displaced state.
    pub n: usize,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub levels: Vec<SpectrumLevel>,
    pub eta: C64,
    pub delta: f64,
    pub chi: C64,
    pub s: f64,
    pub theta: f64,
    /// Level spacing `2Δ` within one series.
    pub gap: f64,
}

impl SpectrumResult {
    /// CSV with header `l,k,n,E_analytic,E_bruteforce,abs_err`. The brute
    /// force columns stay empty where `brute` has no eigenvalue `n`.
    pub fn to_csv(&self, brute: Option<&[f64]>) -> String {
        let mut out = String::from("l,k,n,E_analytic,E_bruteforce,abs_err\n");
        for lv in &self.levels {
            let _ = write!(out, "{},{},{},{:.16e},", lv.l, lv.k, lv.n, lv.energy);
            match brute.and_then(|b| b.get(lv.n)) {
                Some(e) => {
                    let _ = writeln!(out, "{:.16e},{:.16e}", e, (e - lv.energy).abs());
                }
                None => out.push_str(",\n"),
            }
        }
        out
    }
}

/// Squeezing `ξ₀ = (s/2)e^{iθ}` and displacement `η` with
/// `ω/Δ = cosh s`, `g/Δ = −sinh s e^{iθ}`, `f/Δ = η(sinh s e^{i(θ−2ϑ)} − cosh s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParams {
    pub s: f64,
    pub theta: f64,
    pub eta: C64,
}

impl SqueezeParams {
    pub fn xi0(&self) -> C64 {
        C64::from_polar(0.5 * self.s, self.theta)
    }
}

/// Inverts the `(s, θ, η)` parameterization.
///
/// `η` is found by solving `f = −ωη − gη̄` as a real 2×2 system and is
/// cross-checked against [`HamiltonianParams::eta`].
pub fn params_to_squeeze(h: &HamiltonianParams) -> Result<SqueezeParams> {
    let big_delta = h.big_delta()?;
    let s = (h.omega / big_delta).acosh();
    let theta = if h.g.norm() == 0.0 { 0.0 } else { (-h.g).arg().rem_euclid(2.0 * PI) };
    // (ω + g_r) x + g_i y = −f_r ;  g_i x + (ω − g_r) y = −f_i
    let (gr, gi) = (h.g.re, h.g.im);
    let det = h.omega * h.omega - gr * gr - gi * gi;
    if det.abs() < 1e-300 {
        return Err(Error::domain("the displacement cannot be recovered from f"));
    }
    let x = (-h.f.re * (h.omega - gr) + h.f.im * gi) / det;
    let y = (-h.f.im * (h.omega + gr) + h.f.re * gi) / det;
    let eta = C64::new(x, y);
    let other = h.eta()?;
    let scale = 1.0 + eta.norm();
    if (eta - other).norm() > 1e-10 * scale {
        return Err(Error::domain(format!("η from the squeeze parameterization {eta} differs from {other}")));
    }
    Ok(SqueezeParams { s, theta, eta })
}

/// `E_l(k) = 2Δ(k + l) − δ` for `k ∈ {1/4, 3/4}`, `l = 0..=l_max`,
/// sorted by energy.
pub fn spectrum_analytic(h: &HamiltonianParams, l_max: usize) -> Result<SpectrumResult> {
    let big_delta = h.big_delta()?;
    let delta = h.delta()?;
    let sq = params_to_squeeze(h)?;
    let mut levels = Vec::with_capacity(2 * (l_max + 1));
    for l in 0..=l_max {
        for (k, parity) in [(0.25, 0), (0.75, 1)] {
            levels.push(SpectrumLevel { l, k, n: 2 * l + parity, energy: 2.0 * big_delta * (k + l as f64) - delta });
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(SpectrumResult { levels, eta: sq.eta, delta, chi: h.chi()?, s: sq.s, theta: sq.theta, gap: 2.0 * big_delta })
}

/// Coefficients over `D(η)|n,k⟩` of the eigenstate with disk function
/// `G_D(ζ) ∝ (ζ + χ)^l (1 + χ̄ζ)^{−2k−l}`.
///
/// The second factor is a binomial series with radius `1/|χ| > 1`. The
/// result is normalized with its first nonzero coefficient real positive.
pub fn eigenfunction_gd(h: &HamiltonianParams, l: usize, k: BargmannIndex) -> Result<CoefficientState> {
    let chi = h.chi()?;
    let exponent = -2.0 * k.value() - l as f64;
    let binom_l: Vec<C64> = {
        let mut b = Vec::with_capacity(l + 1);
        let mut c = 1.0;
        for j in 0..=l {
            b.push(c * chi.powi((l - j) as i32));
            c = c * (l - j) as f64 / (j + 1) as f64;
        }
        b
    };
    let raw = grow_truncation(k, DEFAULT_TRUNCATION.max(2 * l), |len| {
        let mut q = Vec::with_capacity(len);
        let mut cur = C64::new(1.0, 0.0);
        for m in 0..len {
            q.push(cur);
            cur *= (exponent - m as f64) / (m + 1) as f64 * chi.conj();
        }
        let w = disk_weights(k, len);
        Ok((0..len)
            .map(|n| {
                let g: C64 = (0..=n.min(l)).map(|j| binom_l[j] * q[n - j]).sum();
                g / w[n]
            })
            .collect())
    })?;
    let norm = raw.norm_sqr().sqrt();
    let biggest = raw.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = raw.coeffs().iter().find(|c| c.norm() > 1e-14 * biggest).copied().unwrap_or(C64::new(1.0, 0.0));
    let state = raw.scaled(lead.conj() / (lead.norm() * norm));
    let radius = state.radius_estimate();
    if radius <= 1.0 {
        return Err(Error::OutsideRadius { modulus: 1.0, radius });
    }
    Ok(state)
}

/// Matrix of `H` on Fock levels `0..=m`.
pub fn brute_force_matrix(h: &HamiltonianParams, m: usize) -> CMatrix {
    let mut a = CMatrix::zeros(m + 1, m + 1);
    for n in 0..=m {
        let nf = n as f64;
        a[(n, n)] = C64::new(h.omega * (nf + 0.5), 0.0);
        if n + 1 <= m {
            let v = h.f * (nf + 1.0).sqrt();
            a[(n + 1, n)] = v;
            a[(n, n + 1)] = v.conj();
        }
        if n + 2 <= m {
            let v = 0.5 * h.g * ((nf + 1.0) * (nf + 2.0)).sqrt();
            a[(n + 2, n)] = v;
            a[(n, n + 2)] = v.conj();
        }
    }
    a
}

pub fn brute_force_eigen(h: &HamiltonianParams, m: usize) -> Result<HermitianEigen> {
    if m < 64 {
        return Err(Error::domain(format!("brute-force truncation M = {m} is below 64")));
    }
    hermitian_eigen(&brute_force_matrix(h, m))
}

/// Ascending eigenvalues of the truncated Fock matrix. Only the lower part
/// is converged; for `ω ≤ |g|` nothing is.
pub fn brute_force_spectrum(h: &HamiltonianParams, m: usize) -> Result<Vec<f64>> {
    Ok(brute_force_eigen(h, m)?.values)
}

fn displacement_generator(v: &[C64], eta: C64) -> Vec<C64> {
    let len = v.len();
    (0..len)
        .map(|n| {
            let create = if n > 0 { eta * (n as f64).sqrt() * v[n - 1] } else { ZERO };
            let annihilate = if n + 1 < len { eta.conj() * ((n + 1) as f64).sqrt() * v[n + 1] } else { ZERO };
            create - annihilate
        })
        .collect()
}

/// `D(η)v` on Fock levels, with 32 levels of headroom that are cut off
/// afterwards.
pub fn displace(v: &[C64], eta: C64) -> Vec<C64> {
    let mut ext = v.to_vec();
    ext.resize(v.len() + HEADROOM, ZERO);
    let bound = 2.0 * eta.norm() * (ext.len() as f64).sqrt();
    let mut out = expmv(|x| displacement_generator(x, eta), &ext, bound);
    out.truncate(v.len());
    out
}

/// `S(ξ)v = exp((ξa†² − ξ̄a²)/2) v` on Fock levels, with headroom.
pub fn squeeze(v: &[C64], xi: C64) -> Vec<C64> {
    let mut ext = v.to_vec();
    ext.resize(v.len() + 4 * HEADROOM, ZERO);
    let len = ext.len();
    let gen = |x: &[C64]| -> Vec<C64> {
        (0..len)
            .map(|n| {
                let nf = n as f64;
                let up = if n >= 2 { xi * (nf * (nf - 1.0)).sqrt() * x[n - 2] } else { ZERO };
                let down = if n + 2 < len { xi.conj() * ((nf + 1.0) * (nf + 2.0)).sqrt() * x[n + 2] } else { ZERO };
                0.5 * (up - down)
            })
            .collect()
    };
    let bound = xi.norm() * len as f64;
    let mut out = expmv(gen, &ext, bound);
    out.truncate(v.len());
    out
}

/// Dense `D(η)` on levels `0..size`, built on `size + 32` levels.
pub fn displacement_matrix(eta: C64, size: usize) -> CMatrix {
    let n = size + HEADROOM;
    let mut gen = CMatrix::zeros(n, n);
    for j in 0..n - 1 {
        let s = ((j + 1) as f64).sqrt();
        gen[(j + 1, j)] = eta * s;
        gen[(j, j + 1)] = -eta.conj() * s;
    }
    expm(&gen).top_left(size)
}

/// Weights `(even, odd)` of `D(−η)v`: the parity of an eigenvector once
/// the displacement is undone.
pub fn eigenvector_parity(v: &[C64], eta: C64) -> (f64, f64) {
    let w = displace(v, -eta);
    let even = w.iter().step_by(2).map(|c| c.norm_sqr()).sum();
    let odd = w.iter().skip(1).step_by(2).map(|c| c.norm_sqr()).sum();
    (even, odd)
}

/// Matrix of the combined squeezed-state contour resolution on Fock levels
/// `0..2m`: the `k = 1/4` loop on even levels plus the `k = 3/4` loop (whose
/// prefactor carries the opposite sign) on odd ones, conjugated by `D(η)`.
pub fn squeezed_resolution_check(m: usize, eta: C64, quad: &QuadratureSpec) -> Result<IdentityReport> {
    let sector = if eta == ZERO { m } else { m + HEADROOM / 2 };
    let size = 2 * sector;
    let basis = |k| (0..sector).map(|n| CoefficientState::basis(k, n, sector - 1)).collect::<Vec<_>>();
    let even = weak_gram(&basis(K_EVEN), quad)?;
    let odd = weak_gram(&basis(K_ODD), quad)?;
    let mut full = CMatrix::zeros(size, size);
    for i in 0..sector {
        for j in 0..sector {
            full[(2 * i, 2 * j)] = even[(i, j)];
            full[(2 * i + 1, 2 * j + 1)] = odd[(i, j)];
        }
    }
    if eta != ZERO {
        let d = displacement_matrix(eta, size);
        // rows near the cut lose weight by construction; only the block read back must be unitary
        let unitarity = d.matmul(&d.adjoint()).top_left(2 * m).add(&CMatrix::identity(2 * m).scale(C64::new(-1.0, 0.0))).norm1();
        if unitarity > 1e-9 {
            return Err(Error::Quadrature(format!("displacement matrix is not unitary: {unitarity:e}")));
        }
        full = d.matmul(&full).matmul(&d.adjoint());
    }
    let block = full.top_left(2 * m);
    // reported under the even-sector index; the matrix spans both sectors
    Ok(IdentityReport::from_matrix(K_EVEN, &block))
}
