use std::f64::consts::PI;

use super::gamma::{gamma_real, temme_gammas};
use crate::{Error, Result};

const SERIES_LIMIT: f64 = 15.0;
const EPS: f64 = 1e-16;
const MAXIT: usize = 10_000;

/// Modified Bessel function of the first kind `I_ν(x)` for real `ν > −1`
/// and `x ≥ 0`.
///
/// Ascending series up to `x = 15` (all terms positive, so no
/// cancellation), Hankel's asymptotic expansion beyond.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(Error::domain(format!("I_ν requires ν > -1, got {nu}")));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(format!("I_ν requires x ≥ 0, got {x}")));
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::domain(format!("I_ν(0) diverges for ν = {nu} < 0")))
        };
    }
    if x <= SERIES_LIMIT {
        Ok(bessel_i_series(nu, x))
    } else {
        Ok(bessel_i_asymptotic(nu, x))
    }
}

fn bessel_i_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) / gamma_real(nu + 1.0).expect("ν + 1 > 0");
    let mut sum = term;
    for m in 0..MAXIT {
        let mf = m as f64;
        term *= q / ((mf + 1.0) * (mf + 1.0 + nu));
        sum += term;
        if term <= EPS * sum {
            break;
        }
    }
    sum
}

fn bessel_i_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() >= last {
            // asymptotic series started to diverge
            break;
        }
        sum += term;
        last = term.abs();
        if last < EPS * sum.abs() {
            break;
        }
    }
    x.exp() / (2.0 * PI * x).sqrt() * sum
}

/// Modified Bessel function of the second kind `K_ν(x)` for real `ν`,
/// `x > 0`.
///
/// Temme's series for `x < 2` and Steed's continued fraction otherwise,
/// evaluated at `|ν| − round(|ν|)` and recurred upward. Both branches are
/// uniform in `ν`, so integer orders need no special casing.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("K_ν requires x > 0, got {x}")));
    }
    let nu = nu.abs();
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let (mut rkmu, mut rk1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::SeriesNonConvergence { max_terms: MAXIT });
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 2..=MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::SeriesNonConvergence { max_terms: MAXIT });
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    for i in 1..=nl {
        let next = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = next;
    }
    Ok(rkmu)
}
