use std::f64::consts::PI;

use crate::{Error, Result, C64};

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Γ(z)` for `Re z ≥ 1/2` (principal-branch Lanczos form).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(z) on the complex plane, using reflection for `Re z < 1/2`.
pub fn gamma(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI / (s * gamma(1.0 - z)?))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(C64::new(x, 0.0))?.re)
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln Γ requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps us on the Lanczos side
        Ok(ln_gamma_right(C64::new(x + 1.0, 0.0)).re - x.ln())
    } else {
        Ok(ln_gamma_right(C64::new(x, 0.0)).re)
    }
}

/// Euler Beta function `Γ(x)Γ(y)/Γ(x+y)` for real arguments, continued
/// analytically to negative non-integer `y`.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    let num = gamma_real(x)? * gamma_real(y)?;
    let den = gamma(C64::new(x + y, 0.0));
    match den {
        Ok(d) => Ok(num / d.re),
        // 1/Γ vanishes at its poles
        Err(Error::GammaPole(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `1/Γ(1+μ)`, `1/Γ(1−μ)` and the Temme combinations
/// `γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ)) / 2μ`, `γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2`
/// for `|μ| ≤ 1/2`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let gampl = 1.0 / gamma_real(1.0 + mu).expect("1 + μ > 0");
    let gammi = 1.0 / gamma_real(1.0 - mu).expect("1 - μ > 0");
    let gam2 = 0.5 * (gammi + gampl);
    let gam1 = if mu.abs() < 1e-3 {
        // Taylor coefficients of 1/Γ(1+μ): odd part only
        const C2: f64 = 0.577_215_664_901_532_9;
        const C4: f64 = -0.042_002_635_034_095_2;
        const C6: f64 = -0.042_197_734_555_544_3;
        let m2 = mu * mu;
        -(C2 + m2 * (C4 + m2 * C6))
    } else {
        (gammi - gampl) / (2.0 * mu)
    };
    (gam1, gam2, gampl, gammi)
}
