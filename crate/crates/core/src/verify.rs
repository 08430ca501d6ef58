//! Self-checks comparing numerical results with closed forms and invariants.
//!
//! Each check reports the worst deviation it measured against a fixed
//! tolerance.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{amplitude_damping, apply_on_b, semi_classical, KrausChannel};
use crate::error::Result;
use crate::msc::{msc_general, msc_oracle, msc_two_qubit, MscOptions};
use crate::qcore::{pauli_decompose, BlochVector, ComplexMatrix, DensityMatrix};
use crate::random;
use crate::states::{
    chord_state, classical_state, damped_rho_c_msc, dlc_perpendicular, dlc_state, maximally_obese,
    pure_schmidt, rho_c, rho_p, werner,
};
use crate::steering::{qse, PovmElement};

pub const CHECK_IDS: [&str; 10] = [
    "closed-form",
    "damping-classical",
    "fig2-ratios",
    "fig2-sweep",
    "thm1",
    "thm2",
    "properties",
    "oracle",
    "degenerate",
    "dlc",
];

/// The four prolate-spheroid parameter pairs and their printed axis ratios.
pub const RHO_P_PAIRS: [(f64, f64, f64); 4] = [
    (0.9, 0.2 * PI, 0.980),
    (0.9, 0.1 * PI, 0.859),
    (0.7, 0.1 * PI, 0.629),
    (0.5, 0.1 * PI, 0.496),
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub opts: MscOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20_170_701,
            opts: MscOptions::default(),
        }
    }
}

impl VerifyConfig {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: &'static str,
    pub passed: bool,
    /// Worst measured deviation, in the check's own units.
    pub deviation: f64,
    pub tolerance: f64,
    pub lines: Vec<String>,
}

impl CheckReport {
    fn new(id: &'static str, tolerance: f64) -> Self {
        Self {
            id,
            passed: true,
            deviation: 0.0,
            tolerance,
            lines: Vec::new(),
        }
    }

    /// Records `deviation` and fails the check if it exceeds the tolerance.
    fn observe(&mut self, deviation: f64) {
        self.deviation = self.deviation.max(deviation);
        if deviation.is_nan() || deviation > self.tolerance {
            self.passed = false;
        }
    }

    fn require(&mut self, ok: bool, line: String) {
        if !ok {
            self.passed = false;
        }
        self.lines.push(line);
    }
}

pub fn run_check(id: &str, cfg: &VerifyConfig) -> Option<Result<CheckReport>> {
    Some(match id {
        "closed-form" => closed_form(cfg),
        "damping-classical" => damping_classical(cfg),
        "fig2-ratios" => semiaxis_ratios(),
        "fig2-sweep" => prolate_sweeps(cfg),
        "thm1" => channel_monotonicity(cfg),
        "thm2" => canonical_bound(cfg),
        "properties" => properties(cfg),
        "oracle" => oracle(cfg),
        "degenerate" => degenerate(cfg),
        "dlc" => dlc(cfg),
        _ => return None,
    })
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn msc(rho: &DensityMatrix, cfg: &VerifyConfig) -> Result<f64> {
    Ok(msc_two_qubit(rho, &cfg.opts)?.value)
}

/// Optimizer against the closed forms on 20-point grids.
pub fn closed_form(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("closed-form", 1e-6);
    let mut fams: Vec<(&str, Vec<(f64, crate::states::StateFamilyResult)>)> = Vec::new();
    fams.push((
        "werner",
        linspace(0.0, 1.0, 20)
            .map(|p| Ok((p, werner(p)?)))
            .collect::<Result<_>>()?,
    ));
    let mut rp = Vec::new();
    for p in linspace(0.1, 0.9, 5) {
        for theta in linspace(0.1 * PI, 0.9 * PI, 4) {
            rp.push((p, rho_p(p, theta)?));
        }
    }
    fams.push(("rho_p", rp));
    fams.push((
        "maximally-obese",
        linspace(0.0, 0.95, 20)
            .map(|b| Ok((b, maximally_obese(b)?)))
            .collect::<Result<_>>()?,
    ));
    fams.push((
        "classical",
        linspace(0.05, 0.95, 20)
            .map(|t| Ok((t, rho_c(t)?)))
            .collect::<Result<_>>()?,
    ));
    for (name, members) in fams {
        let mut worst: f64 = 0.0;
        for (_, fam) in &members {
            let want = fam.analytic_msc.expect("closed form");
            worst = worst.max((msc(&fam.state, cfg)? - want).abs());
        }
        r.observe(worst);
        r.lines.push(format!(
            "{name:<16} {} points  max |dev| = {worst:.3e}",
            members.len()
        ));
    }
    Ok(r)
}

/// Bob-side amplitude damping of `rho_c(t)`.
pub fn damping_classical(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("damping-classical", 1e-6);
    for t in [0.6, 0.75, 0.9] {
        let state = rho_c(t)?.state;
        let mut worst: f64 = 0.0;
        let mut ends = [0.0; 2];
        for (i, gamma) in linspace(0.0, 1.0, 101).enumerate() {
            let v = msc(&apply_on_b(&state, &amplitude_damping(gamma)?)?, cfg)?;
            worst = worst.max((v - damped_rho_c_msc(t, gamma)).abs());
            match i {
                0 => ends[0] = v,
                100 => ends[1] = v,
                _ => {}
            }
        }
        r.observe(worst);
        r.require(
            ends[0].abs() <= 1e-9 && ends[1].abs() <= 1e-9,
            format!(
                "t = {t:<4}  max |dev| = {worst:.3e}  C(0) = {:.1e}  C(1) = {:.1e}",
                ends[0], ends[1]
            ),
        );
    }
    Ok(r)
}

/// `c3/c1` of the numerically computed ellipsoids.
pub fn semiaxis_ratios() -> Result<CheckReport> {
    let mut r = CheckReport::new("fig2-ratios", 1e-3);
    for (p, theta, want) in RHO_P_PAIRS {
        let e = qse(&rho_p(p, theta)?.state)?;
        let ratio = e.semiaxes[2] / e.semiaxes[0];
        r.observe((ratio - want).abs());
        r.lines.push(format!(
            "p = {p}  theta = {:.1}pi  c3/c1 = {ratio:.4}  expected {want:.3}",
            theta / PI
        ));
    }
    Ok(r)
}

/// `C` along a damping sweep of `state`.
pub fn damping_sweep(state: &DensityMatrix, gammas: &[f64], opts: &MscOptions) -> Result<Vec<f64>> {
    gammas
        .iter()
        .map(|&g| Ok(msc_two_qubit(&apply_on_b(state, &amplitude_damping(g)?)?, opts)?.value))
        .collect()
}

/// Local increase under damping, growing as the ellipsoid gets more prolate.
pub fn prolate_sweeps(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("fig2-sweep", 0.0);
    let gammas: Vec<f64> = linspace(0.0, 1.0, 101).collect();
    let mut margins = Vec::new();
    for (p, theta, _) in RHO_P_PAIRS {
        let curve = damping_sweep(&rho_p(p, theta)?.state, &gammas, &cfg.opts)?;
        let (arg, top) = curve
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let margin = top - curve[0];
        r.require(
            margin >= 1e-4,
            format!(
                "p = {p}  theta = {:.1}pi  C(0) = {:.6}  max = {top:.6} at gamma = {:.2}  margin = {margin:.5}",
                theta / PI,
                curve[0],
                gammas[arg]
            ),
        );
        margins.push(margin);
    }
    let monotone = margins.windows(2).all(|w| w[1] > w[0]);
    r.require(monotone, format!("margins increase with prolateness: {monotone}"));
    Ok(r)
}

fn random_semi_classical(rng: &mut ChaCha8Rng) -> Result<KrausChannel> {
    let basis = random::random_basis(rng, 2)?;
    let u = random::random_unitary(rng, 2);
    let f0 = ComplexMatrix::diagonal(&[rng.gen::<f64>(), rng.gen::<f64>()]).conjugate_by(&u);
    let f1 = &ComplexMatrix::identity(2) - &f0;
    semi_classical(&basis, &[PovmElement::new(f0)?, PovmElement::new(f1)?])
}

/// Local unital channels never raise `C`, semi-classical ones destroy it,
/// amplitude damping creates it.
pub fn channel_monotonicity(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("thm1", 1e-6);
    let mut rng = cfg.rng(5);
    let states: Vec<DensityMatrix> = (0..200)
        .map(|_| random::random_state(&mut rng, &[2, 2]))
        .collect::<Result<_>>()?;
    let before: Vec<f64> = states.iter().map(|s| msc(s, cfg)).collect::<Result<_>>()?;
    let mut worst = f64::MIN;
    for _ in 0..50 {
        let ch = random::random_unital_channel(&mut rng)?;
        for (s, c0) in states.iter().zip(&before) {
            worst = worst.max(msc(&apply_on_b(s, &ch)?, cfg)? - c0);
        }
    }
    r.observe(worst.max(0.0));
    r.lines.push(format!(
        "unital: 50 channels x 200 states, max increase {worst:.3e}"
    ));

    let mut sc_worst: f64 = 0.0;
    for s in states.iter().take(100) {
        let ch = random_semi_classical(&mut rng)?;
        sc_worst = sc_worst.max(msc(&apply_on_b(s, &ch)?, cfg)?);
    }
    r.require(
        sc_worst <= 1e-8,
        format!("semi-classical: 100 states, max C {sc_worst:.3e}"),
    );

    let created = msc(&apply_on_b(&rho_c(0.75)?.state, &amplitude_damping(0.5)?)?, cfg)?;
    r.require(
        created > 0.01,
        format!("damping on rho_c(0.75), gamma = 0.5: C = {created:.6}"),
    );
    Ok(r)
}

/// Chord with midpoint `b`, perpendicular to it, and a random `psi`.
pub fn random_chord(rng: &mut ChaCha8Rng) -> Result<crate::states::StateFamilyResult> {
    let dir = random::random_bloch(rng).normalized().unwrap_or(BlochVector::Z);
    let b: f64 = rng.gen_range(0.05..0.95);
    let (w, _) = dir.orthonormal_complement();
    let half = (1.0 - b * b).sqrt();
    let u = dir * b + w * half;
    let v = dir * b - w * half;
    let psi = random::random_pure(rng, 2);
    chord_state(&psi, &crate::qcore::spinor(u), &crate::qcore::spinor(v))
}

/// `C <= c1 <= sqrt(1 - b^2)` on canonical states, with equality on chords.
pub fn canonical_bound(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("thm2", 1e-8);
    let mut rng = cfg.rng(6);
    let (mut worst_c, mut worst_axis) = (f64::MIN, f64::MIN);
    for _ in 0..100 {
        let rho = random::random_canonical_state(&mut rng)?;
        let e = qse(&rho)?;
        let b = pauli_decompose(&rho)?.bob().norm();
        worst_c = worst_c.max(msc(&rho, cfg)? - e.semiaxes[0]);
        worst_axis = worst_axis.max(e.semiaxes[0] - (1.0 - b * b).sqrt());
    }
    r.observe(worst_c.max(0.0));
    r.observe(worst_axis.max(0.0));
    r.lines
        .push(format!("100 canonical states: max(C - c1) = {worst_c:.3e}"));
    r.lines.push(format!(
        "                      max(c1 - sqrt(1-b^2)) = {worst_axis:.3e}"
    ));

    let mut sat: f64 = 0.0;
    for _ in 0..20 {
        let fam = random_chord(&mut rng)?;
        sat = sat.max((msc(&fam.state, cfg)? - fam.analytic_msc.expect("chord value")).abs());
    }
    r.require(
        sat <= 1e-6,
        format!("20 chord states: max |C - sqrt(1-b^2)| = {sat:.3e}"),
    );
    Ok(r)
}

fn random_classical(rng: &mut ChaCha8Rng, da: usize, db: usize) -> Result<DensityMatrix> {
    let raw: Vec<f64> = (0..db).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let alice = (0..db)
        .map(|_| random::random_state(rng, &[da]))
        .collect::<Result<Vec<_>>>()?;
    let basis = random::random_basis(rng, db)?;
    Ok(classical_state(&weights, &alice, &basis)?.state)
}

/// Zero on classical states, local-unitary invariance, maximal on pure
/// full-Schmidt-rank states.
pub fn properties(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("properties", 1e-6);
    let mut rng = cfg.rng(7);

    let mut classical: f64 = 0.0;
    for _ in 0..20 {
        classical = classical.max(msc(&random_classical(&mut rng, 2, 2)?, cfg)?);
    }
    for _ in 0..3 {
        classical = classical.max(msc_general(&random_classical(&mut rng, 2, 3)?, &cfg.opts)?.value);
    }
    r.require(classical <= 1e-8, format!("classical: max C = {classical:.3e}"));

    let mut discordant = f64::INFINITY;
    for _ in 0..20 {
        discordant = discordant.min(msc_oracle(&random::random_state(&mut rng, &[2, 2])?, 2000)?);
    }
    r.require(
        discordant >= 1e-4,
        format!("random states: min oracle bound = {discordant:.3e}"),
    );

    let mut lu: f64 = 0.0;
    for _ in 0..100 {
        let rho = random::random_state(&mut rng, &[2, 2])?;
        let ua = random::random_unitary(&mut rng, 2);
        let ub = random::random_unitary(&mut rng, 2);
        lu = lu.max((msc(&rho.local_unitary(&ua, &ub)?, cfg)? - msc(&rho, cfg)?).abs());
    }
    r.observe(lu);
    r.lines
        .push(format!("local unitaries: 100 states, max |dC| = {lu:.3e}"));

    let mut pure: f64 = 0.0;
    for d in [2usize, 3] {
        for _ in 0..3 {
            let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(0.1..1.0)).collect();
            let n = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            let lambda: Vec<f64> = raw.iter().map(|x| x / n).collect();
            let ua = random::random_unitary(&mut rng, d);
            let ub = random::random_unitary(&mut rng, d);
            let fam = pure_schmidt(&lambda, &ua, &ub)?;
            let value = if d == 2 {
                msc(&fam.state, cfg)?
            } else {
                msc_general(&fam.state, &cfg.opts)?.value
            };
            pure = pure.max((value - (d - 1) as f64).abs());
        }
    }
    r.observe(pure);
    r.lines.push(format!(
        "pure full Schmidt rank, d = 2, 3: max |C - (d-1)| = {pure:.3e}"
    ));
    Ok(r)
}

/// Optimizer never below the grid oracle; close to it on closed forms.
pub fn oracle(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("oracle", 1e-3);
    let mut states: Vec<DensityMatrix> = Vec::new();
    for p in [0.3, 0.7, 1.0] {
        states.push(werner(p)?.state);
    }
    for (p, theta) in [(0.5, 0.5 * PI), (0.9, 0.2 * PI), (0.5, 0.1 * PI), (0.7, 0.7 * PI)] {
        states.push(rho_p(p, theta)?.state);
    }
    for b in [0.0, 0.36, 0.64, 0.9] {
        states.push(maximally_obese(b)?.state);
    }
    for t in [0.25, 0.75] {
        states.push(rho_c(t)?.state);
    }
    let closed_form = states.len();
    let mut rng = cfg.rng(8);
    for _ in 0..20 {
        states.push(random::random_state(&mut rng, &[2, 2])?);
    }

    let mut below = f64::MIN;
    let mut gap: f64 = 0.0;
    for (i, s) in states.iter().enumerate() {
        let v = msc(s, cfg)?;
        let o = msc_oracle(s, 10_000)?;
        below = below.max(o - v);
        if i < closed_form {
            gap = gap.max((v - o).abs());
        }
    }
    r.observe(gap);
    r.require(
        below <= 1e-9,
        format!("{} states: max(oracle - optimizer) = {below:.3e}", states.len()),
    );
    r.lines.push(format!(
        "{closed_form} closed-form states at resolution 1e4: max gap {gap:.3e}"
    ));
    Ok(r)
}

/// Werner states through the infimum-over-bases branch.
pub fn degenerate(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("degenerate", 1e-4);
    for p in [0.3, 0.7, 1.0] {
        let res = msc_two_qubit(&werner(p)?.state, &cfg.opts)?;
        r.observe((res.value - p).abs());
        r.require(
            res.degenerate_path,
            format!(
                "p = {p}  C = {:.9}  degenerate branch: {}",
                res.value, res.degenerate_path
            ),
        );
    }
    Ok(r)
}

/// Random segment ellipsoids against their bounds, and the unit-reaching
/// family.
///
/// The lower bound `b1 sin(theta1)` is reported separately for obtuse
/// segments, where it does not hold once `b` moves towards an end of the
/// segment.
pub fn dlc(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut r = CheckReport::new("dlc", 1e-6);
    let mut rng = cfg.rng(10);
    let (mut acute_low, mut upper) = (f64::MIN, f64::MIN);
    let (mut obtuse, mut obtuse_bad, mut obtuse_low) = (0, 0, f64::MIN);
    let mut n = 0;
    while n < 50 {
        let b1 = random::random_bloch(&mut rng);
        let b2 = random::random_bloch(&mut rng);
        let q = rng.gen_range(0.05..0.95);
        let fam = match dlc_state(b1, b2, q) {
            Ok(f) => f,
            Err(crate::error::Error::RadialSegment) => continue,
            Err(e) => return Err(e),
        };
        n += 1;
        let bounds = fam.msc_bounds.expect("bounds");
        let v = msc(&fam.state, cfg)?;
        upper = upper.max(v - bounds.upper);
        if bounds.strict_upper {
            acute_low = acute_low.max(bounds.lower - v);
        } else {
            obtuse += 1;
            obtuse_low = obtuse_low.max(bounds.lower - v);
            if bounds.lower - v > r.tolerance {
                obtuse_bad += 1;
            }
        }
    }
    r.observe(acute_low.max(0.0));
    r.observe(upper.max(0.0));
    r.lines.push(format!(
        "50 random segments: worst upper-bound excess {upper:.3e}"
    ));
    r.lines.push(format!(
        "{} acute segments: worst lower-bound shortfall {acute_low:.3e}",
        50 - obtuse
    ));
    r.require(
        obtuse_bad == 0,
        format!(
            "{obtuse} obtuse segments: {obtuse_bad} below the lower bound, worst shortfall {obtuse_low:.3e}"
        ),
    );

    let mut lowest = f64::INFINITY;
    for b2 in [0.2, 0.5, 0.8, 1.0] {
        lowest = lowest.min(msc(&dlc_perpendicular(b2, 0.75 * PI)?.state, cfg)?);
    }
    r.require(
        lowest >= 0.99,
        format!("b1 = 1, theta = 0.75pi: min C = {lowest:.9}"),
    );
    Ok(r)
}
