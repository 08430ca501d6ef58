//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::channels::{amplitude_damping, apply_on_b};
use crate::error::{Error, Result};
use crate::io::{read_state, StateFile};
use crate::msc::{msc_general, msc_two_qubit, Measurement, MscOptions, MscResult};
use crate::qcore::{BlochVector, DensityMatrix, Subsystem};
use crate::states;
use crate::steering::qse;
use crate::verify::{run_check, VerifyConfig, CHECK_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "steercoh",
    version,
    about = "Maximal steered coherence and steering ellipsoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximal steered coherence of a state file or family member.
    Msc(StateArgs),
    /// Steering ellipsoid of Bob's qubit.
    Qse(StateArgs),
    /// `C` along a Bob-side channel sweep, as CSV.
    Sweep(SweepArgs),
    /// Write a family member as a state file.
    Gen(StateArgs),
    /// Run the self-checks.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Family {
    Werner,
    RhoP,
    ClassicalC,
    MaximallyObese,
    Chord,
    Dlc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ChannelKind {
    AmplitudeDamping,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    p: Option<f64>,
    /// Angle in radians; `0.2pi` and `pi` are accepted.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
}

#[derive(Args, Debug)]
struct OptimizerArgs {
    /// Lattice size of the measurement-direction search.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Objective improvement at which refinement stops.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// State file (JSON).
    path: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Amplitude damping applied to Bob's qubit first.
    #[arg(long)]
    gamma: Option<f64>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    path: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value = "amplitude-damping")]
    channel: ChannelKind,
    /// Number of evenly spaced channel strengths in [0, 1].
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only these checks.
    #[arg(long)]
    only: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Accepts `1.3`, `pi`, `0.2pi`, `pi/4`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let bad = || format!("cannot parse angle `{s}`");
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_angle(num)?;
        let den: f64 = den.trim().parse().map_err(|_| bad())?;
        return Ok(num / den);
    }
    if let Some(coef) = s.strip_suffix("pi") {
        let coef = coef.trim().trim_end_matches('*');
        let c: f64 = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse().map_err(|_| bad())?,
        };
        return Ok(c * std::f64::consts::PI);
    }
    s.parse().map_err(|_| bad())
}

fn need(name: &str, v: Option<f64>) -> Result<f64> {
    v.ok_or_else(|| Error::ParameterOutOfRange(format!("--{name} is required for this family")))
}

fn build_family(args: &FamilyArgs) -> Result<states::StateFamilyResult> {
    let family = args
        .family
        .ok_or_else(|| Error::Parse("give a state file or --family".into()))?;
    match family {
        Family::Werner => states::werner(need("p", args.p)?),
        Family::RhoP => states::rho_p(need("p", args.p)?, need("theta", args.theta)?),
        Family::ClassicalC => states::rho_c(need("t", args.t)?),
        Family::MaximallyObese => states::maximally_obese(need("b", args.b)?),
        Family::Chord => states::chord_symmetric(need("b", args.b)?),
        Family::Dlc => states::dlc_perpendicular(need("b", args.b)?, need("theta", args.theta)?),
    }
}

fn load(path: &Option<PathBuf>, family: &FamilyArgs) -> Result<DensityMatrix> {
    match path {
        Some(p) => read_state(p),
        None => Ok(build_family(family)?.state),
    }
}

fn damped(rho: DensityMatrix, gamma: Option<f64>) -> Result<DensityMatrix> {
    match gamma {
        Some(g) => apply_on_b(&rho, &amplitude_damping(g)?),
        None => Ok(rho),
    }
}

fn options(o: &OptimizerArgs) -> MscOptions {
    let mut opts = MscOptions::default();
    if let Some(g) = o.grid {
        opts.grid_points = g.max(8);
    }
    if let Some(s) = o.seed {
        opts.seed = s;
    }
    if let Some(t) = o.tol {
        opts.tolerance = t;
    }
    opts
}

fn compute_msc(rho: &DensityMatrix, opts: &MscOptions) -> Result<MscResult> {
    if rho.bipartite_dims()? == (2, 2) {
        msc_two_qubit(rho, opts)
    } else {
        msc_general(rho, opts)
    }
}

fn fmt_vec(v: BlochVector) -> String {
    format!("({:.9}, {:.9}, {:.9})", v.x, v.y, v.z)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_msc(args: &StateArgs) -> Result<i32> {
    let rho = damped(load(&args.path, &args.family)?, args.gamma)?;
    let res = compute_msc(&rho, &options(&args.optimizer))?;
    let mut text = format!("msc          {:.9}\n", res.value);
    match &res.measurement {
        Measurement::Bloch(m) => text += &format!("measurement  {}\n", fmt_vec(*m)),
        Measurement::Vector(v) => {
            let parts: Vec<String> = v.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
            text += &format!("measurement  [{}]\n", parts.join(", "));
        }
    }
    if res.steered_state.dim() == 2 {
        text += &format!(
            "steered      {}\n",
            fmt_vec(BlochVector::of_state(&res.steered_state)?)
        );
    }
    text += &format!("degenerate   {}\n", res.degenerate_path);
    if res.ill_conditioned {
        text += "warning      Bob's eigenvalue gap is small; the basis is ill-conditioned\n";
    }
    text += &format!("converged    {}\n", res.converged);
    emit(&args.out, &text)?;
    Ok(if res.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

fn cmd_qse(args: &StateArgs) -> Result<i32> {
    let rho = damped(load(&args.path, &args.family)?, args.gamma)?;
    let e = qse(&rho)?;
    let b = BlochVector::of_state(&rho.partial_trace(Subsystem::B)?)?;
    let mut text = format!("center       {}\n", fmt_vec(e.center));
    text += &format!(
        "semiaxes     ({:.9}, {:.9}, {:.9})\n",
        e.semiaxes[0], e.semiaxes[1], e.semiaxes[2]
    );
    for (k, axis) in e.frame.iter().enumerate() {
        text += &format!("axis{}        {}\n", k + 1, fmt_vec(*axis));
    }
    text += &format!("bob          {}\n", fmt_vec(b));
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let rho = load(&args.path, &args.family)?;
    if args.grid < 2 {
        return Err(Error::ParameterOutOfRange(
            "--grid needs at least 2 points".into(),
        ));
    }
    let mut opts = MscOptions::default();
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    if let Some(t) = args.tol {
        opts.tolerance = t;
    }
    let n = args.grid;
    let mut text = String::from("gamma,msc\n");
    let mut converged = true;
    for i in 0..n {
        let gamma = i as f64 / (n - 1) as f64;
        let channel = match args.channel {
            ChannelKind::AmplitudeDamping => amplitude_damping(gamma)?,
        };
        let res = msc_two_qubit(&apply_on_b(&rho, &channel)?, &opts)?;
        converged &= res.converged;
        text += &format!("{gamma},{}\n", res.value);
    }
    emit(&args.out, &text)?;
    Ok(if converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn cmd_gen(args: &StateArgs) -> Result<i32> {
    let rho = damped(load(&args.path, &args.family)?, args.gamma)?;
    let text = StateFile::from_density(&rho).to_json() + "\n";
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let mut cfg = VerifyConfig::default();
    if let Some(s) = args.seed {
        cfg.seed = s;
        cfg.opts.seed = s;
    }
    let selected: Vec<&str> = if args.only.is_empty() {
        CHECK_IDS.to_vec()
    } else {
        args.only.iter().map(String::as_str).collect()
    };
    if let Some(bad) = selected.iter().find(|id| !CHECK_IDS.contains(id)) {
        return Err(Error::Parse(format!(
            "unknown check `{bad}`; known: {}",
            CHECK_IDS.join(", ")
        )));
    }
    let mut all = true;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for id in selected {
        let report = run_check(id, &cfg).expect("known id")?;
        all &= report.passed;
        let _ = writeln!(
            out,
            "[{}] {:<18} deviation {:.3e}  tolerance {:.0e}",
            if report.passed { "PASS" } else { "FAIL" },
            report.id,
            report.deviation,
            report.tolerance
        );
        for line in &report.lines {
            let _ = writeln!(out, "       {line}");
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DidNotConverge(_) => EXIT_NOT_CONVERGED,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Msc(a) => cmd_msc(a),
        Command::Qse(a) => cmd_qse(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        let pi = std::f64::consts::PI;
        assert_eq!(parse_angle("0.2pi").unwrap(), 0.2 * pi);
        assert_eq!(parse_angle("pi").unwrap(), pi);
        assert_eq!(parse_angle("pi/2").unwrap(), pi / 2.0);
        assert_eq!(parse_angle("-0.5pi").unwrap(), -0.5 * pi);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert!(parse_angle("half").is_err());
    }

    #[test]
    fn missing_family_parameter_is_an_input_error() {
        assert_eq!(run(["steercoh", "msc", "--family", "werner"]), EXIT_INPUT);
        assert_eq!(run(["steercoh", "msc"]), EXIT_INPUT);
    }

    #[test]
    fn unknown_check_is_an_input_error() {
        assert_eq!(run(["steercoh", "verify", "--only", "nope"]), EXIT_INPUT);
    }
}
