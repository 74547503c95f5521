//! Browser demo: the two-photon spectrum, a disk-function heatmap and the
//! weak-contour weight as functions of the user's inputs.
//!
//! Every export returns a flat `Float64Array` so the page can draw it
//! without any glue beyond `wasm-bindgen`.

use su11::analytic::{bg_coefficients, eval_g, perelomov_coefficients};
use su11::resolutions::{weak_identity_check, weak_prefactor};
use su11::two_photon::{brute_force_spectrum, spectrum_analytic, HamiltonianParams};
use su11::{BargmannIndex, CoefficientState, Complex64, QuadratureSpec};
use wasm_bindgen::prelude::*;

fn js(e: su11::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Rows of `[n, k, E_analytic, E_bruteforce]` for `l ≤ lmax`; the dense
/// check uses `m + 1` Fock levels.
#[wasm_bindgen]
pub fn spectrum(omega: f64, g_re: f64, g_im: f64, f_re: f64, f_im: f64, lmax: usize, m: usize) -> Result<Vec<f64>, JsError> {
    let h = HamiltonianParams::new(omega, Complex64::new(g_re, g_im), Complex64::new(f_re, f_im)).map_err(js)?;
    let analytic = spectrum_analytic(&h, lmax).map_err(js)?;
    let brute = brute_force_spectrum(&h, m).map_err(js)?;
    let mut out = Vec::with_capacity(4 * analytic.levels.len());
    for lv in &analytic.levels {
        out.extend([lv.n as f64, lv.k, lv.energy, brute.get(lv.n).copied().unwrap_or(f64::NAN)]);
    }
    Ok(out)
}

fn demo_state(kind: &str, k: f64, re: f64, im: f64) -> su11::Result<CoefficientState> {
    let k = BargmannIndex::new(k)?;
    let p = Complex64::new(re, im);
    match kind {
        "perelomov" => perelomov_coefficients(p, k, 128),
        "bg" => bg_coefficients(p, k, 128),
        "basis" => Ok(CoefficientState::basis(k, re.max(0.0).round() as usize, 0)),
        other => Err(su11::Error::Domain(format!("unknown state kind {other:?}"))),
    }
}

/// `(1 − |ζ|²)^{2k} |G(ζ)|²` on a `size × size` grid over `[−1, 1]²`, row
/// by row from the top; NaN outside the disk. `kind` is `perelomov`
/// (parameter ζ), `bg` (parameter z) or `basis` (parameter n in `re`).
#[wasm_bindgen]
pub fn husimi_grid(kind: &str, k: f64, re: f64, im: f64, size: usize) -> Result<Vec<f64>, JsError> {
    let s = demo_state(kind, k, re, im).map_err(js)?;
    let two_k = 2.0 * s.k().value();
    let mut out = Vec::with_capacity(size * size);
    let step = 2.0 / size as f64;
    for row in 0..size {
        let y = 1.0 - (row as f64 + 0.5) * step;
        for col in 0..size {
            let x = -1.0 + (col as f64 + 0.5) * step;
            let r2 = x * x + y * y;
            if r2 >= 1.0 {
                out.push(f64::NAN);
                continue;
            }
            let g = eval_g(&s, Complex64::new(x, y)).map_err(js)?;
            out.push((1.0 - r2).powf(two_k) * g.norm_sqr());
        }
    }
    Ok(out)
}

/// Rows of `[k, |c(k)|, Re I₀, Im I₀, err]` for `steps` values of k in
/// `[k_min, k_max]`: `c(k)` is the constant in front of the keyhole
/// integral, `I₀` the lowest diagonal entry through the contour (1 when the
/// phases are right) and `err` the identity error on the first `m` states.
/// Rows with 2k an integer are NaN.
#[wasm_bindgen]
pub fn weak_sweep(k_min: f64, k_max: f64, steps: usize, m: usize) -> Result<Vec<f64>, JsError> {
    let quad = QuadratureSpec { radial_nodes: 64, angular_nodes: 2 * m.max(4), segment_nodes: 96, ..Default::default() };
    let mut out = Vec::with_capacity(5 * steps);
    for i in 0..steps {
        let kv = if steps == 1 { k_min } else { k_min + (k_max - k_min) * i as f64 / (steps - 1) as f64 };
        let k = BargmannIndex::new(kv).map_err(js)?;
        match (weak_prefactor(k), weak_identity_check(k, m, &quad)) {
            (Ok(c), Ok(report)) => {
                let [re, im] = report.phase_check.unwrap_or([f64::NAN; 2]);
                out.extend([kv, c.norm(), re, im, report.max_error()]);
            }
            _ => out.extend([kv, f64::NAN, f64::NAN, f64::NAN, f64::NAN]),
        }
    }
    Ok(out)
}
