//! `su11` command-line front end.
//!
//! Exit codes: 0 pass, 1 tolerance check failed, 2 domain error (also used
//! by clap for malformed arguments), 3 convergence error, 4 regime error,
//! 5 I/O.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use su11::{Complex64, QuadratureSpec};

#[derive(Parser, Debug)]
#[command(name = "su11", version, about = "SU(1,1) coherent states, analytic representations and the two-photon oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a state and write its coefficient JSON.
    ///
    /// perelomov: orbit of the lowest state through the unit-disk label ζ.
    /// bg: eigenstate of the lowering generator with eigenvalue z.
    /// squeezed-vacuum, squeezed-one: squeezing applied to |0⟩ or |1⟩, written
    /// as their k = 1/4 or k = 3/4 component.
    /// even-cat, odd-cat: |α⟩ ± |−α⟩, eigenstates of a², written as their
    /// k = 1/4 or k = 3/4 component.
    /// random: normalized state with uniformly drawn coefficients.
    State(StateArgs),
    /// Check an identity resolution on the first M basis states.
    ///
    /// disk: area integral over the unit disk (k > 1/2).
    /// bg: integral over the plane with the Bessel-K density.
    /// weak: keyhole-contour form valid for k < 1/2 (k not integer or half-integer).
    /// squeezed: the two weak resolutions for k = 1/4 and 3/4 combined on the
    /// Fock space, optionally conjugated by a displacement.
    ///
    /// Exit 0 iff the largest deviation from the identity is ≤ 1e-6.
    Check(CheckArgs),
    /// Energy levels of H = ω(a†a + 1/2) + (g/2)a†² + (ḡ/2)a² + f a† + f̄ a.
    ///
    /// The closed form E = 2Δ(k + l) − δ with Δ = √(ω² − |g|²) is printed
    /// next to a dense diagonalization on M + 1 Fock levels. Exit 0 iff
    /// the two agree to 1e-6 on levels n ≤ M/6, exit 4 when ω ≤ |g|.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Evaluate a transform of a stored state and compare with a second route.
    ///
    /// f2g: disk function at 1/ρ as a Laplace integral of the entire
    /// function, against the power series. g2f: entire function by inverse
    /// Laplace transform of the disk function, against the series.
    /// roundtrip: both transforms in sequence. mobius: disk function after
    /// the group action, against the pulled-back function times its
    /// multiplier. bg-laguerre: entire function after the group action via
    /// the Laguerre kernel, against the disk route.
    Transform(TransformArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum StateKind {
    Perelomov,
    Bg,
    SqueezedVacuum,
    SqueezedOne,
    EvenCat,
    OddCat,
    Random,
}

#[derive(Args, Debug)]
struct StateArgs {
    kind: StateKind,
    /// Bargmann index (ignored by the two-photon kinds).
    #[arg(long, default_value_t = 0.25)]
    k: f64,
    /// Disk label, `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    zeta: Option<Complex64>,
    /// Lowering eigenvalue, `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Option<Complex64>,
    /// Cat amplitude, `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Option<Complex64>,
    /// Starting truncation; constructors grow it until the tail is negligible.
    #[arg(long, default_value_t = 128)]
    truncation: usize,
    /// Number of coefficients of a random state.
    #[arg(long, default_value_t = 5)]
    terms: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; JSON goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum CheckKind {
    Disk,
    Bg,
    Weak,
    Squeezed,
}

#[derive(Args, Debug)]
struct CheckArgs {
    which: CheckKind,
    #[arg(long, default_value_t = 0.75)]
    k: f64,
    /// Number of basis states (per parity for `squeezed`).
    #[arg(long = "M", default_value_t = 6)]
    m: usize,
    /// Displacement for `squeezed`, `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    eta: Option<Complex64>,
    #[command(flatten)]
    quad: QuadArgs,
    /// Report file; JSON goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    omega: f64,
    g_re: f64,
    g_im: f64,
    f_re: f64,
    f_im: f64,
    #[arg(long, default_value_t = 10)]
    lmax: usize,
    /// Highest Fock level of the brute-force matrix (at least 64).
    #[arg(long = "M", default_value_t = 256)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Direction {
    F2g,
    G2f,
    Roundtrip,
    Mobius,
    BgLaguerre,
}

#[derive(Args, Debug)]
struct TransformArgs {
    direction: Direction,
    /// Coefficient JSON as written by `state`.
    #[arg(long)]
    state: PathBuf,
    /// Sample points `re,im;re,im;...` (ρ for f2g, ζ for mobius, z otherwise).
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Group element from hyperbolic coordinates: a = cosh(τ/2), b = sinh(τ/2)e^{iφ}.
    #[arg(long, default_value_t = 0.0)]
    tau: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Node-count overrides; unset fields keep the defaults.
#[derive(Args, Debug, Clone)]
struct QuadArgs {
    #[arg(long)]
    radial_nodes: Option<usize>,
    #[arg(long)]
    angular_nodes: Option<usize>,
    #[arg(long)]
    segment_nodes: Option<usize>,
    #[arg(long)]
    contour_radius: Option<f64>,
    #[arg(long)]
    laplace_nodes: Option<usize>,
    #[arg(long)]
    bromwich_nodes: Option<usize>,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        let mut q = QuadratureSpec::default();
        if let Some(v) = self.radial_nodes {
            q.radial_nodes = v;
        }
        if let Some(v) = self.angular_nodes {
            q.angular_nodes = v;
        }
        if let Some(v) = self.segment_nodes {
            q.segment_nodes = v;
        }
        if let Some(v) = self.contour_radius {
            q.contour_radius = v;
        }
        if let Some(v) = self.laplace_nodes {
            q.laplace_nodes = v;
        }
        if let Some(v) = self.bromwich_nodes {
            q.bromwich_nodes = v;
        }
        q
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::State(a) => commands::state(&a),
        Command::Check(a) => commands::check(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Transform(a) => commands::transform(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("su11: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
