//! Command-line front end.
//!
//! Exit status: 0 when every check passed, 1 when the verdict is negative,
//! 2 on usage or validation errors.

pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry2::{lengths_member, slice_scan, tetra2_member, EdgeLengths};
use crate::lr::{coupling_feasible, first_horn_violation, horn_row_col_check, HORN_REL_TOL};
use crate::partitions::enumerate_partitions;
use crate::probability::{eig_est_bound, eig_sep_bound, schur_weyl_dist, sw_bhattacharyya};
use crate::schurweyl::{all_groups, haar_expectation_check, SixJEngine, SixJLabel, DEFAULT_DIM_CAP};
use crate::symfunc::Spectrum;
use crate::symmetry::{generate_group, relations, to_nonnegative};
use crate::tetra::{
    asymptotics_scan, distance_d, entropic_check, random_tetra_sample, tet_distance_bound, tet_inequality_check, AsymptoticsRow, Budget,
    DistanceMode, SpectrumTuple, Witness, SLACK_TOL, TRACE_TOL,
};
use report::{g12, write_text, Report};

/// Environment variable naming the 6j cache directory.
pub const CACHE_ENV: &str = "TETRA_HORN_CACHE_DIR";

/// Objective below which `D` certifies membership.
pub const MEMBER_TOL: f64 = 1e-6;
pub const ENTROPY_TOL: f64 = 1e-12;
pub const HAAR_REL_TOL: f64 = 0.05;

#[derive(Parser, Debug)]
#[command(name = "tetra-horn", version, about = "Tetrahedral Horn problem toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// 6j disk cache directory (overrides the environment variable)
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Largest tensor dimension n^k
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    pub cap: u128,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// JSON sidecar path
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree-k inequalities and/or the distance bound for a tuple file
    CheckTetra(CheckTetraArgs),
    /// 6j norms for one label or every label of a degree
    Sixj(SixjArgs),
    /// Row/column inequalities and coupling feasibility for (a, b, c)
    Horn(HornArgs),
    /// n = 2 slice of the edge-length space
    Slice(SliceArgs),
    /// The 48-element symmetry group, optionally applied to a tuple
    Symmetry(SymmetryArgs),
    /// 6j norms along rounded and maximizing label sequences
    Asymptotics(AsymptoticsArgs),
    /// Schur–Weyl histogram of a spectrum
    Sample(SampleArgs),
    /// Entropic inequality on random member tuples
    Entropy(EntropyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckMode {
    Inequalities,
    Distance,
    Both,
}

#[derive(Args, Debug)]
pub struct CheckTetraArgs {
    #[arg(long)]
    pub tuple: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value_t = CheckMode::Both)]
    pub mode: CheckMode,
    /// Apply the minimal non-negativity shift first
    #[arg(long)]
    pub shift: bool,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2000)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SLACK_TOL)]
    pub slack_tol: f64,
}

#[derive(Args, Debug)]
pub struct SixjArgs {
    #[arg(long, conflicts_with = "k")]
    pub label: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Monte-Carlo orbit samples for the expectation check on `--label`
    #[arg(long, requires_all = ["label", "a", "b", "d"])]
    pub samples: Option<usize>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct HornArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub c: String,
    /// Check one degree
    #[arg(long, conflicts_with = "kmax")]
    pub k: Option<usize>,
    /// Scan degrees 1..=kmax for the first violation
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Also decide coupling feasibility at each checked degree
    #[arg(long)]
    pub coupling: bool,
}

#[derive(Args, Debug)]
pub struct SliceArgs {
    #[arg(long)]
    pub la: f64,
    #[arg(long)]
    pub lb: f64,
    #[arg(long)]
    pub ld: f64,
    #[arg(long, default_value_t = 0.0)]
    pub min: f64,
    #[arg(long, default_value_t = 18.0)]
    pub max: f64,
    #[arg(long, default_value_t = 61)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SymmetryArgs {
    #[arg(long)]
    pub tuple: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub tuple: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "3,6,9,12")]
    pub k: Vec<usize>,
    #[arg(long)]
    pub shift: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub k: usize,
    /// Second spectrum of equal trace for the separation bound
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

enum Verdict {
    Pass,
    Negative,
}

impl Verdict {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Negative
        }
    }

    fn word(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Negative => "negative",
        }
    }

    fn code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Negative => 1,
        }
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(what: &str, s: &str) -> Result<T> {
    s.parse().map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Spectra on the command line may omit the brackets.
fn spectrum(what: &str, s: &str) -> Result<Spectrum> {
    let t = s.trim();
    if t.starts_with('[') {
        parse(what, t)
    } else {
        parse(what, &format!("[{t}]"))
    }
}

fn read_tuple(path: &Path, shift: bool, rep: &mut Report) -> Result<SpectrumTuple> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut t: SpectrumTuple = text.parse()?;
    t.check_trace_valid()?;
    if shift {
        let s = to_nonnegative(&t)?;
        rep.line(format!("shift x={} y={} z={}", g12(s.shift.0), g12(s.shift.1), g12(s.shift.2)));
        for v in &s.violations {
            rep.line(format!("min-eigenvalue filter violated: {v}"));
        }
        t = s.tuple;
    }
    Ok(t)
}

fn engine(g: &Global, n: usize, rep: &mut Report) -> Result<SixJEngine> {
    match &g.cache_dir {
        Some(dir) => {
            rep.config("cache_dir", dir.display());
            SixJEngine::with_cache_dir(n, g.cap, dir)
        }
        None => Ok(SixJEngine::new(n, g.cap)),
    }
}

fn check_tetra(g: &Global, a: &CheckTetraArgs, rep: &mut Report) -> Result<Verdict> {
    rep.config("tuple", a.tuple.display());
    rep.config("kmax", a.kmax);
    rep.config("mode", format!("{:?}", a.mode).to_lowercase());
    rep.config("shift", a.shift);
    rep.config("cap", g.cap);
    rep.seed(a.seed);
    rep.tolerance("slack", a.slack_tol);
    rep.tolerance("trace", TRACE_TOL);
    rep.tolerance("member", MEMBER_TOL);
    let t = read_tuple(&a.tuple, a.shift, rep)?;
    let n = t.n();
    let tr_e = t.e.trace();
    let mut ok = true;
    let mut passed_ks = Vec::new();
    if a.mode != CheckMode::Distance {
        t.check_nonnegative()?;
        let eng = engine(g, n, rep)?;
        rep.line("k triples min_slack verdict worst_alpha worst_beta worst_delta");
        let mut rows = Vec::new();
        for k in 1..=a.kmax {
            let r = tet_inequality_check(&t, k, &eng)?;
            let pass = r.min_slack >= -a.slack_tol;
            let w = r.worst().expect("at least one triple");
            rep.line(format!(
                "{k} {} {} {} {} {} {}",
                r.records.len(),
                g12(r.min_slack),
                if pass { "pass" } else { "fail" },
                w.alpha,
                w.beta,
                w.delta
            ));
            rows.push(json!({"k": k, "min_slack": r.min_slack, "pass": pass}));
            if pass {
                passed_ks.push(k);
            }
            ok &= pass;
        }
        rep.put("inequalities", rows);
        rep.cache(eng.stats());
    }
    if a.mode != CheckMode::Inequalities {
        let budget = Budget { restarts: a.restarts, iters: a.iters, seed: a.seed };
        let mut orbit_obj = f64::INFINITY;
        for mode in [DistanceMode::Orbit, DistanceMode::Free] {
            let c = distance_d(&t, mode, &budget)?;
            let res: Vec<String> = c.residuals.iter().map(|r| g12(*r)).collect();
            rep.line(format!(
                "distance mode={mode} objective={} normalized={} converged={} residuals={}",
                g12(c.objective),
                g12(c.objective / tr_e),
                c.converged,
                res.join(",")
            ));
            rep.put(&format!("distance_{mode}"), c.objective);
            if mode == DistanceMode::Orbit {
                orbit_obj = c.objective;
            }
        }
        let member = orbit_obj <= MEMBER_TOL;
        rep.line(format!("distance certifies membership: {member}"));
        for &k in &passed_ks {
            let bound = tet_distance_bound(k, n);
            let within = orbit_obj / tr_e <= bound;
            rep.line(format!("distance bound k={k} bound={} holds={within}", g12(bound)));
            ok &= within;
        }
        if a.mode == CheckMode::Distance {
            ok &= member;
        }
    }
    Ok(Verdict::from_ok(ok))
}

fn sixj(g: &Global, a: &SixjArgs, rep: &mut Report) -> Result<Verdict> {
    rep.config("n", a.n);
    rep.config("cap", g.cap);
    let eng = engine(g, a.n, rep)?;
    rep.line("label inf_norm two_norm_sq rank_left rank_right");
    let mut ok = true;
    let mut records = Vec::new();
    let mut emit = |rep: &mut Report, r: &crate::schurweyl::SixJRecord| {
        rep.line(format!("{} {} {} {} {}", r.label, g12(r.inf_norm), g12(r.two_norm_sq), r.rank_left, r.rank_right));
        records.push(json!({"label": r.label.to_string(), "inf_norm": r.inf_norm, "two_norm_sq": r.two_norm_sq,
            "rank_left": r.rank_left, "rank_right": r.rank_right}));
    };
    match (&a.label, a.k) {
        (Some(l), _) => {
            rep.config("label", l);
            let label: SixJLabel = parse("label", l)?;
            let r = eng.get(&label)?;
            emit(rep, &r);
            if let Some(samples) = a.samples {
                rep.seed(a.seed);
                rep.tolerance("haar_relative", HAAR_REL_TOL);
                let sp = |s: &Option<String>, w| spectrum(w, s.as_deref().unwrap_or_default());
                let h = haar_expectation_check(&label, &sp(&a.a, "a")?, &sp(&a.b, "b")?, &sp(&a.d, "d")?, samples, a.seed, g.cap)?;
                let pass = h.passed(HAAR_REL_TOL);
                rep.line(format!(
                    "haar samples={samples} estimate={} std_error={} target={} relative_error={} pass={pass}",
                    g12(h.estimate),
                    g12(h.std_error),
                    g12(h.target),
                    g12(h.rel_error)
                ));
                ok &= pass;
            }
        }
        (None, Some(k)) => {
            rep.config("k", k);
            let groups = all_groups(k, a.n);
            eng.prefetch(&groups)?;
            for (al, be, de, ep) in groups {
                for r in eng.group(&al, &be, &de, &ep)? {
                    if r.rank_left > 0 && r.rank_right > 0 {
                        emit(rep, &r);
                    }
                }
            }
        }
        (None, None) => return Err(Error::InvalidParameter("either --label or --k is required".into())),
    }
    rep.put("records", records);
    rep.cache(eng.stats());
    Ok(Verdict::from_ok(ok))
}

fn horn(a: &HornArgs, rep: &mut Report) -> Result<Verdict> {
    let (x, y, z) = (spectrum("a", &a.a)?, spectrum("b", &a.b)?, spectrum("c", &a.c)?);
    rep.config("a", &x);
    rep.config("b", &y);
    rep.config("c", &z);
    rep.tolerance("horn_relative", HORN_REL_TOL);
    let ks: Vec<usize> = match (a.k, a.kmax) {
        (Some(k), _) => vec![k],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => return Err(Error::InvalidParameter("either --k or --kmax is required".into())),
    };
    rep.config("degrees", format!("{}..={}", ks[0], ks[ks.len() - 1]));
    rep.line("k family alpha beta_or_gamma lhs rhs slack");
    let mut ok = true;
    let mut first = None;
    if let (None, Some(m)) = (a.k, a.kmax) {
        if let Some(r) = first_horn_violation(&x, &y, &z, m)? {
            first = Some(r.k);
        }
    }
    for &k in &ks {
        if first.is_some_and(|f| k > f) {
            break;
        }
        let r = horn_row_col_check(&x, &y, &z, k)?;
        for row in &r.rows {
            let al = row.alpha.as_ref().map_or("-".to_string(), |p| p.to_string());
            rep.line(format!("{k} {} {al} {} {} {} {}", row.family, row.beta_or_gamma, g12(row.lhs), g12(row.rhs), g12(row.slack)));
        }
        ok &= r.passed();
        if a.coupling {
            let c = coupling_feasible(&x, &y, &z, k)?;
            rep.line(format!("coupling k={k} feasible={} flow={}", c.feasible, g12(c.flow)));
            ok &= c.feasible;
        }
    }
    rep.line(format!("first_violation {}", first.map_or("none".into(), |k| k.to_string())));
    rep.put("first_violation", first.map_or(serde_json::Value::Null, |k| k.into()));
    Ok(Verdict::from_ok(ok))
}

fn slice(a: &SliceArgs, rep: &mut Report) -> Result<Verdict> {
    rep.config("la", g12(a.la));
    rep.config("lb", g12(a.lb));
    rep.config("ld", g12(a.ld));
    rep.config("min", g12(a.min));
    rep.config("max", g12(a.max));
    rep.config("steps", a.steps);
    let grid = slice_scan(a.la, a.lb, a.ld, a.min, a.max, a.steps)?;
    let mut text = String::from("lc le lf triangle cm member\n");
    let (mut tri, mut mem, mut bad) = (0usize, 0usize, 0usize);
    for r in &grid {
        text.push_str(&format!("{} {} {} {} {} {}\n", g12(r.lc), g12(r.le), g12(r.lf), r.triangle as u8, g12(r.cm), r.member as u8));
        tri += r.triangle as usize;
        mem += r.member as usize;
        bad += (r.member && !r.triangle) as usize;
    }
    match &a.out {
        Some(p) => {
            rep.config("out", p.display());
            write_text(p, &text)?;
        }
        None => rep.line(text.trim_end()),
    }
    rep.line(format!("points {} triangle {tri} member {mem} member_outside_triangle {bad}", grid.len()));
    rep.put("points", grid.len());
    rep.put("triangle", tri);
    rep.put("member", mem);
    Ok(Verdict::from_ok(bad == 0))
}

fn symmetry(a: &SymmetryArgs, rep: &mut Report) -> Result<Verdict> {
    let group = generate_group()?;
    rep.line(format!("order {}", group.len()));
    for (name, holds) in relations() {
        rep.line(format!("relation {name} {}", if holds { "holds" } else { "fails" }));
    }
    for g in &group {
        rep.line(format!("element {g}"));
    }
    rep.put("order", group.len());
    let mut ok = true;
    if let Some(path) = &a.tuple {
        rep.config("tuple", path.display());
        let t = read_tuple(path, false, rep)?;
        let base = (t.n() == 2).then(|| tetra2_member(&t)).transpose()?;
        for g in &group {
            let img = g.apply(&t);
            let slots: Vec<String> = img.slots().iter().map(|s| s.to_string()).collect();
            let verdict = match (&base, t.n()) {
                (Some(b), 2) => {
                    let m = tetra2_member(&img)?;
                    ok &= m.member == b.member;
                    format!(" member={}", m.member)
                }
                _ => String::new(),
            };
            rep.line(format!("image {g} {}{verdict}", slots.join(" ")));
        }
    }
    Ok(Verdict::from_ok(ok))
}

fn asymptotics(g: &Global, a: &AsymptoticsArgs, rep: &mut Report) -> Result<Verdict> {
    rep.config("tuple", a.tuple.display());
    rep.config("k", a.k.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
    rep.config("cap", g.cap);
    rep.seed(a.seed);
    rep.tolerance("member", MEMBER_TOL);
    let t = read_tuple(&a.tuple, a.shift, rep)?;
    t.check_nonnegative()?;
    let eng = engine(g, t.n(), rep)?;
    let cert = distance_d(&t, DistanceMode::Orbit, &Budget { seed: a.seed, ..Budget::default() })?;
    let member = cert.objective <= MEMBER_TOL;
    rep.line(format!("distance objective={} member={member}", g12(cert.objective)));
    let witness = member.then(|| Witness { x: cert.a.clone(), y: cert.b.clone(), z: cert.d.clone() });
    let r = asymptotics_scan(&t, &a.k, &eng, witness.as_ref())?;
    rep.line(format!("rank_e {}", r.rank_e));
    rep.line("k rounded_label rounded_norm rounded_scaled max_label max_norm max_scaled");
    let mut ok = true;
    for row in &r.rows {
        let (ml, mn, ms) = match &row.best {
            Some((m, norm)) => {
                let s = AsymptoticsRow::scaled(*norm, row.k, r.rank_e);
                ok &= s >= 1.0;
                (m.label.to_string(), g12(*norm), g12(s))
            }
            None => ("-".into(), "-".into(), "-".into()),
        };
        rep.line(format!(
            "{} {} {} {} {ml} {mn} {ms}",
            row.k,
            row.rounded,
            g12(row.rounded_norm),
            g12(AsymptoticsRow::scaled(row.rounded_norm, row.k, r.rank_e))
        ));
    }
    let opt = |x: Option<f64>| x.map_or("none".into(), g12);
    rep.line(format!("raw_slope {}", opt(r.raw_slope)));
    rep.line(format!("compensated_slope {}", opt(r.compensated_slope)));
    if !r.zero_norm_ks.is_empty() {
        rep.line(format!("zero_norm_k {:?}", r.zero_norm_ks));
    }
    if !member {
        ok = r.compensated_slope.is_some_and(|s| s < 0.0);
    }
    rep.put("member", member);
    rep.put("raw_slope", r.raw_slope);
    rep.put("compensated_slope", r.compensated_slope);
    rep.cache(eng.stats());
    Ok(Verdict::from_ok(ok))
}

fn sample(a: &SampleArgs, rep: &mut Report) -> Result<Verdict> {
    let x = spectrum("x", &a.x)?;
    rep.config("x", &x);
    rep.config("k", a.k);
    let d = schur_weyl_dist(&x, a.k)?;
    rep.line("lambda, probability, eig_est_bound");
    let mut ok = true;
    for (lam, p) in d.partitions.iter().zip(d.dist.weights()) {
        let bound = eig_est_bound(lam, &x, x.len())?;
        ok &= *p <= bound * (1.0 + 1e-12);
        rep.line(format!("{lam}, {}, {}", g12(*p), g12(bound)));
    }
    rep.line(format!("total {}", g12(d.dist.total())));
    if let Some(ys) = &a.y {
        let y = spectrum("y", ys)?;
        rep.config("y", &y);
        let bc = sw_bhattacharyya(&x, &y, a.k)?;
        let bound = eig_sep_bound(&x, &y, a.k, x.len())?;
        ok &= bc <= bound * (1.0 + 1e-12);
        rep.line(format!("sw_bhattacharyya {} eig_sep_bound {}", g12(bc), g12(bound)));
    }
    rep.put("partitions", enumerate_partitions(a.k, x.len()).len());
    Ok(Verdict::from_ok(ok))
}

fn entropy(a: &EntropyArgs, rep: &mut Report) -> Result<Verdict> {
    rep.config("samples", a.samples);
    rep.config("n", a.n);
    rep.seed(a.seed);
    rep.tolerance("margin", ENTROPY_TOL);
    let mut min_margin = f64::INFINITY;
    let mut violations = 0usize;
    for i in 0..a.samples {
        let s = random_tetra_sample(a.n, a.seed.wrapping_mul(0x9E37_79B9).wrapping_add(i as u64))?;
        let m = entropic_check(&s.tuple)?;
        min_margin = min_margin.min(m);
        violations += (m < -ENTROPY_TOL) as usize;
    }
    rep.line(format!("min_margin {}", g12(min_margin)));
    rep.line(format!("violations {violations}"));
    rep.put("min_margin", min_margin);
    rep.put("violations", violations);
    Ok(Verdict::from_ok(violations == 0))
}

fn lengths_line(t: &SpectrumTuple) -> Option<String> {
    let l = crate::geometry2::edge_lengths(t).ok()?;
    let m = lengths_member(&EdgeLengths(l.0));
    Some(format!("n2 lengths {} cm={} member={}", l.0.map(g12).join(","), g12(m.cm), m.member))
}

fn run(cli: Cli) -> Result<(Verdict, Report)> {
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        // a pool that was already installed keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    if cli.global.cap == 0 {
        return Err(Error::InvalidParameter("--cap must be positive".into()));
    }
    let g = &cli.global;
    let name = match &cli.command {
        Command::CheckTetra(_) => "check-tetra",
        Command::Sixj(_) => "sixj",
        Command::Horn(_) => "horn",
        Command::Slice(_) => "slice",
        Command::Symmetry(_) => "symmetry",
        Command::Asymptotics(_) => "asymptotics",
        Command::Sample(_) => "sample",
        Command::Entropy(_) => "entropy",
    };
    let mut rep = Report::new(name);
    let r = &mut rep;
    let v = match &cli.command {
        Command::CheckTetra(a) => {
            let v = check_tetra(g, a, r)?;
            if let Ok(t) = std::fs::read_to_string(&a.tuple).map_err(Error::from).and_then(|s| s.parse::<SpectrumTuple>()) {
                if let Some(l) = lengths_line(&t) {
                    r.line(l);
                }
            }
            v
        }
        Command::Sixj(a) => sixj(g, a, r)?,
        Command::Horn(a) => horn(a, r)?,
        Command::Slice(a) => slice(a, r)?,
        Command::Symmetry(a) => symmetry(a, r)?,
        Command::Asymptotics(a) => asymptotics(g, a, r)?,
        Command::Sample(a) => sample(a, r)?,
        Command::Entropy(a) => entropy(a, r)?,
    };
    Ok((v, rep))
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (report_path, json_path) = (cli.global.report.clone(), cli.global.json.clone());
    match run(cli) {
        Ok((v, rep)) => {
            let text = rep.render(v.word());
            let written = match &report_path {
                Some(p) => write_text(p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
            .and_then(|_| match &json_path {
                Some(p) => write_text(p, &format!("{:#}\n", rep.sidecar(v.word()))),
                None => Ok(()),
            });
            match written {
                Ok(()) => v.code(),
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
