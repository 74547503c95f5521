//! Quadrature rules and the node configuration shared by every integral in
//! the crate: Gauss–Legendre panels, tanh-sinh for endpoint-singular
//! integrands, the periodic trapezoid rule, and the keyhole loop around
//! `t = 1`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64, I};

/// Node configuration for disk, half-line, Bromwich and keyhole integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Tanh-sinh nodes for radial integrals (disk and plane measures).
    pub radial_nodes: usize,
    /// Trapezoid nodes for every angular integral.
    pub angular_nodes: usize,
    /// Radius of the circle around `t = 1` in the keyhole loop.
    pub contour_radius: f64,
    /// Gauss–Legendre nodes on each of the three keyhole pieces.
    pub segment_nodes: usize,
    /// Radial cutoff for integrals over the whole `z` plane.
    pub plane_cutoff: f64,
    /// Exp-sinh nodes for the half-line Laplace integral.
    pub laplace_nodes: usize,
    /// Trapezoid nodes on the inverse-Laplace contour.
    pub bromwich_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            radial_nodes: 256,
            angular_nodes: 256,
            contour_radius: 0.4,
            segment_nodes: 256,
            plane_cutoff: 60.0,
            laplace_nodes: 512,
            bromwich_nodes: 256,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("radial_nodes", self.radial_nodes),
            ("angular_nodes", self.angular_nodes),
            ("segment_nodes", self.segment_nodes),
            ("laplace_nodes", self.laplace_nodes),
            ("bromwich_nodes", self.bromwich_nodes),
        ];
        for (name, n) in counts {
            if n < 8 {
                return Err(Error::domain(format!("{name} = {n} is below the minimum of 8")));
            }
        }
        if !(self.contour_radius > 0.0 && self.contour_radius < 1.0) {
            return Err(Error::domain(format!(
                "contour radius {} must lie in (0, 1)",
                self.contour_radius
            )));
        }
        if !(self.plane_cutoff > 0.0) {
            return Err(Error::domain(format!("plane cutoff {} must be positive", self.plane_cutoff)));
        }
        Ok(())
    }

    /// Same configuration with every node count doubled.
    pub fn refined(&self) -> Self {
        QuadratureSpec {
            radial_nodes: 2 * self.radial_nodes,
            angular_nodes: 2 * self.angular_nodes,
            segment_nodes: 2 * self.segment_nodes,
            laplace_nodes: 2 * self.laplace_nodes,
            bromwich_nodes: 2 * self.bromwich_nodes,
            ..*self
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// Gauss–Legendre rule mapped onto `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

/// A tanh-sinh node on `[a, b]` with both endpoint distances kept exact,
/// so integrands like `(b - x)^{-1/2}` can be evaluated without
/// cancellation near the endpoint.
#[derive(Debug, Clone, Copy)]
pub struct TanhSinhNode {
    pub x: f64,
    pub from_left: f64,
    pub from_right: f64,
    pub weight: f64,
}

const TANH_SINH_TMAX: f64 = 4.0;

/// Tanh-sinh rule with `n` nodes (rounded up to odd) on `[a, b]`.
pub fn tanh_sinh(n: usize, a: f64, b: f64) -> Vec<TanhSinhNode> {
    let per_side = (n.max(3) - 1).div_ceil(2);
    let h = TANH_SINH_TMAX / per_side as f64;
    let half = 0.5 * (b - a);
    let mut nodes = Vec::with_capacity(2 * per_side + 1);
    for j in -(per_side as i64)..=(per_side as i64) {
        let t = j as f64 * h;
        let s = FRAC_PI_2 * t.sinh();
        let one_plus = 2.0 / (1.0 + (-2.0 * s).exp());
        let one_minus = 2.0 / (1.0 + (2.0 * s).exp());
        let cs = s.cosh();
        let w = h * FRAC_PI_2 * t.cosh() / (cs * cs);
        if w == 0.0 || one_plus == 0.0 || one_minus == 0.0 {
            continue;
        }
        nodes.push(TanhSinhNode {
            x: a + half * one_plus,
            from_left: half * one_plus,
            from_right: half * one_minus,
            weight: half * w,
        });
    }
    nodes
}

/// Exp-sinh rule on `(0, ∞)` in log form: pairs `(ln x, w)` such that
/// `∫₀^∞ f(x) dx ≈ Σ w · x · f(x)`, for `t` in `[t_lo, t_hi]` with `n` nodes.
///
/// Returning `ln x` lets callers form `x^p` for tiny `x` without underflow.
pub fn exp_sinh_log(n: usize, t_lo: f64, t_hi: f64) -> Vec<(f64, f64)> {
    let n = n.max(2);
    let h = (t_hi - t_lo) / (n - 1) as f64;
    (0..n)
        .map(|j| {
            let t = t_lo + j as f64 * h;
            (FRAC_PI_2 * t.sinh(), h * FRAC_PI_2 * t.cosh())
        })
        .collect()
}

/// Equispaced angles for the periodic trapezoid rule, with weight `2π/n`.
pub fn trapezoid_angles(n: usize) -> impl Iterator<Item = (f64, f64)> {
    let w = 2.0 * PI / n as f64;
    (0..n).map(move |j| (j as f64 * w, w))
}

/// A point on the keyhole loop: `t`, the branch-fixed `log(t − 1)` with
/// `arg(t − 1) ∈ [−π, π]`, and the quadrature weight already multiplied by
/// `dt`.
#[derive(Debug, Clone, Copy)]
pub struct KeyholeNode {
    pub t: C64,
    pub log_t_minus_1: C64,
    pub weight: C64,
}

/// Nodes of the loop that runs from `0` to `1 − r` below the real axis,
/// once around `t = 1` counter-clockwise on the circle of radius `r`, and
/// back to `0` above the axis.
pub fn keyhole_nodes(spec: &QuadratureSpec) -> Vec<KeyholeNode> {
    let r = spec.contour_radius;
    let seg = gauss_legendre_on(spec.segment_nodes, 0.0, 1.0 - r);
    let mut nodes = Vec::with_capacity(3 * spec.segment_nodes);

    // below the cut, outward: arg(t - 1) = -π
    for &(x, w) in &seg {
        nodes.push(KeyholeNode {
            t: C64::new(x, 0.0),
            log_t_minus_1: C64::new((1.0 - x).ln(), -PI),
            weight: C64::new(w, 0.0),
        });
    }
    for (theta, w) in gauss_legendre_on(spec.segment_nodes, -PI, PI) {
        let e = C64::from_polar(1.0, theta);
        nodes.push(KeyholeNode {
            t: 1.0 + r * e,
            log_t_minus_1: C64::new(r.ln(), theta),
            weight: I * r * e * w,
        });
    }
    // above the cut, inward: arg(t - 1) = +π, dt negative
    for &(x, w) in seg.iter().rev() {
        nodes.push(KeyholeNode {
            t: C64::new(x, 0.0),
            log_t_minus_1: C64::new((1.0 - x).ln(), PI),
            weight: C64::new(-w, 0.0),
        });
    }
    nodes
}

/// `∮ f(t, log(t−1)) dt` over the keyhole loop.
pub fn keyhole_integrate(spec: &QuadratureSpec, mut f: impl FnMut(C64, C64) -> C64) -> C64 {
    keyhole_nodes(spec)
        .iter()
        .map(|n| n.weight * f(n.t, n.log_t_minus_1))
        .sum()
}
