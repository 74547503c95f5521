use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use su11::analytic::{
    bg_coefficients, bg_rotation_transform, bg_su11_transform, eval_f, eval_g, inverse_laplace_g_to_f,
    laplace_f_to_g, laplace_roundtrip_f, mobius_transform_g, perelomov_coefficients,
};
use su11::resolutions::{bg_identity_check, disk_identity_check, weak_identity_check, IdentityReport};
use su11::two_photon::{
    brute_force_spectrum, even_odd_coherent, spectrum_analytic, split_even_odd, squeezed_one_photon,
    squeezed_resolution_check, squeezed_vacuum, HamiltonianParams, Parity,
};
use su11::{BargmannIndex, CoefficientState, Complex64, ErrorKind, GroupElement, HyperbolicParams};

use crate::{CheckArgs, CheckKind, Direction, SpectrumArgs, StateArgs, StateKind, TransformArgs};

const CHECK_TOL: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    Lib(su11::Error),
    Io(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Domain => 2,
                ErrorKind::Convergence => 3,
                ErrorKind::Regime => 4,
            },
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<su11::Error> for CliError {
    fn from(e: su11::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Lib(su11::Error::Domain(msg.into()))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => writeln!(std::io::stdout().lock(), "{text}").map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))
}

fn require(v: Option<Complex64>, flag: &str) -> CliResult<Complex64> {
    v.ok_or_else(|| domain(format!("--{flag} is required for this state")))
}

fn build_state(a: &StateArgs) -> CliResult<CoefficientState> {
    let k = BargmannIndex::new(a.k)?;
    let state = match a.kind {
        StateKind::Perelomov => perelomov_coefficients(require(a.zeta, "zeta")?, k, a.truncation)?,
        StateKind::Bg => bg_coefficients(require(a.z, "z")?, k, a.truncation)?,
        StateKind::SqueezedVacuum => split_even_odd(&squeezed_vacuum(require(a.zeta, "zeta")?)?).even,
        StateKind::SqueezedOne => split_even_odd(&squeezed_one_photon(require(a.zeta, "zeta")?)?).odd,
        StateKind::EvenCat => split_even_odd(&even_odd_coherent(require(a.alpha, "alpha")?, Parity::Even)?).even,
        StateKind::OddCat => split_even_odd(&even_odd_coherent(require(a.alpha, "alpha")?, Parity::Odd)?).odd,
        StateKind::Random => {
            if a.terms == 0 {
                return Err(domain("--terms must be at least 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let v = (0..a.terms).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            CoefficientState::new(k, v)?.normalized()?
        }
    };
    Ok(state)
}

pub fn state(a: &StateArgs) -> CliResult {
    let s = build_state(a)?;
    emit(a.out.as_deref(), &to_json(&s)?)?;
    eprintln!(
        "k = {:.16e}, N = {}, norm = {:.16e}, radius_estimate = {:.16e}",
        s.k().value(),
        s.truncation(),
        s.norm_sqr().sqrt(),
        s.radius_estimate()
    );
    Ok(())
}

pub fn check(a: &CheckArgs) -> CliResult {
    let quad = a.quad.spec();
    let result = (|| -> su11::Result<IdentityReport> {
        let k = BargmannIndex::new(a.k);
        match a.which {
            CheckKind::Disk => disk_identity_check(k?, a.m, &quad),
            CheckKind::Bg => bg_identity_check(k?, a.m, &quad),
            CheckKind::Weak => weak_identity_check(k?, a.m, &quad),
            CheckKind::Squeezed => squeezed_resolution_check(a.m, a.eta.unwrap_or_default(), &quad),
        }
    })();
    match result {
        Ok(report) => {
            emit(a.out.as_deref(), &to_json(&report)?)?;
            let err = report.max_error();
            eprintln!("max_offdiag = {:.16e}, max_diag_error = {:.16e}", report.max_offdiag, report.max_diag_error);
            if err <= CHECK_TOL {
                Ok(())
            } else {
                Err(CliError::Failed(format!("identity off by {err:.16e} > {CHECK_TOL:e}")))
            }
        }
        Err(e) => {
            emit(a.out.as_deref(), &to_json(&serde_json::json!({ "error": e.to_string() }))?)?;
            Err(e.into())
        }
    }
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult {
    let h = HamiltonianParams::new(a.omega, Complex64::new(a.g_re, a.g_im), Complex64::new(a.f_re, a.f_im))?;
    let analytic = spectrum_analytic(&h, a.lmax)?;
    let brute = brute_force_spectrum(&h, a.m)?;
    emit(a.out.as_deref(), analytic.to_csv(Some(&brute)).trim_end())?;
    let converged = a.m / 6;
    let worst = analytic
        .levels
        .iter()
        .filter(|lv| lv.n <= converged)
        .map(|lv| (brute[lv.n] - lv.energy).abs())
        .fold(0.0, f64::max);
    eprintln!("gap = {:.16e}, max |ΔE| over n ≤ {converged} = {worst:.16e}", analytic.gap);
    if worst <= CHECK_TOL {
        Ok(())
    } else {
        Err(CliError::Failed(format!("analytic and brute-force levels differ by {worst:.16e}")))
    }
}

#[derive(Serialize)]
struct Row {
    point: [f64; 2],
    value: [f64; 2],
    cross: [f64; 2],
    diff: f64,
}

#[derive(Serialize)]
struct TransformTable {
    direction: String,
    rows: Vec<Row>,
    max_diff: f64,
}

fn parse_points(s: &str) -> CliResult<Vec<Complex64>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| crate::parse_complex(p).map_err(domain))
        .collect()
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn transform(a: &TransformArgs) -> CliResult {
    let text = fs::read_to_string(&a.state).map_err(|e| CliError::Io(format!("cannot read {}: {e}", a.state.display())))?;
    let s: CoefficientState =
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{} is not a state file: {e}", a.state.display())))?;
    let quad = a.quad.spec();
    quad.validate()?;
    let g = GroupElement::from_hyperbolic(HyperbolicParams::new(a.tau, a.phi)?);
    let c = Complex64::new;
    let default_points = match a.direction {
        Direction::F2g => vec![c(2.0, 0.0), c(1.5, 0.5), c(3.0, -1.0)],
        Direction::Mobius => vec![c(0.0, 0.0), c(0.3, 0.2), c(0.0, -0.5)],
        _ => vec![c(0.5, 0.0), c(1.0, 0.5), c(2.0, -1.0)],
    };
    let points = match &a.points {
        Some(p) => parse_points(p)?,
        None => default_points,
    };
    let moved = match a.direction {
        Direction::Mobius | Direction::BgLaguerre => Some(mobius_transform_g(&s, &g)?),
        _ => None,
    };
    let two_k = 2.0 * s.k().value();
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let (value, cross) = match a.direction {
            Direction::F2g => (laplace_f_to_g(&s, p, &quad)?, eval_g(&s, p.inv())?),
            Direction::G2f => (inverse_laplace_g_to_f(&s, p, &quad)?, eval_f(&s, p)),
            Direction::Roundtrip => (laplace_roundtrip_f(&s, p, &quad)?, eval_f(&s, p)),
            Direction::Mobius => {
                let (ga, gb) = (g.a(), g.b());
                let multiplier = ga.conj().powf(-two_k) * (Complex64::new(1.0, 0.0) + gb.conj() / ga.conj() * p).powf(-two_k);
                (eval_g(moved.as_ref().unwrap(), p)?, eval_g(&s, g.mobius(p))? * multiplier)
            }
            Direction::BgLaguerre => {
                let direct = if g.b().norm() < 1e-12 { bg_rotation_transform(&s, g.a(), p)? } else { bg_su11_transform(&s, &g, p)? };
                (direct, eval_f(moved.as_ref().unwrap(), p))
            }
        };
        rows.push(Row { point: pair(p), value: pair(value), cross: pair(cross), diff: (value - cross).norm() });
    }
    let max_diff = rows.iter().map(|r| r.diff).fold(0.0, f64::max);
    let table = TransformTable { direction: format!("{:?}", a.direction).to_lowercase(), rows, max_diff };
    emit(a.out.as_deref(), &to_json(&table)?)?;
    eprintln!("max_diff = {max_diff:.16e}");
    Ok(())
}
