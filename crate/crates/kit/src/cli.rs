use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use thurston_core::cube::{analyze, Completion};
use thurston_core::envelope::{envelope_series, run_sweep, uniform_steps, SweepGrid};
use thurston_core::pants::{
    delta_closed, oracle_frame, shear_coords, Layout, LiftChoice, PantsMetric,
    PantsTriangulation, Twist, TwistSigns,
};
use thurston_core::stretch::{
    stretch_point, twist_width_closed, twist_width_with, DeltaMethod, Direction, FNPoint,
    StretchSpec, Surface, WidthConvention,
};

use crate::config::{parse_list, parse_triple, Config};
use crate::output::{ensure_dir, num, write_csv, write_json, write_text};
use crate::report::{reconcile, render_markdown};
use crate::KitError;

#[derive(Debug, Parser)]
#[command(name = "thurston-kit", version, about = "Twist, envelope and stretch-vector computations")]
pub struct Cli {
    /// key=value config file (falls back to $THURSTON_KIT_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for CSV/JSON artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Twist offset at one cuff: closed form, development, and their difference.
    Delta(DeltaArgs),
    /// Shear coordinates of a pants triangulation.
    Shear(PantsArgs),
    /// Fenchel-Nielsen coordinates after a stretch.
    Stretch(StretchArgs),
    /// Twist gap between the left and right backward stretches.
    TwistWidth(WidthArgs),
    /// Envelope bound sweep over (l0, t).
    Sweep(SweepArgs),
    /// Distance estimates between the left and right backward stretches.
    Envelope(EnvelopeArgs),
    /// Genus-two stretch-vector cloud and its hull.
    Cube(CubeArgs),
    /// Closed forms versus development, written as a reconciliation report.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    #[value(name = "3sym")]
    ThreeSym,
    #[value(name = "2sym")]
    TwoSym,
    Asym,
}

#[derive(Debug, Args)]
pub struct PantsArgs {
    #[arg(long = "type", value_enum)]
    pub kind: TypeArg,
    /// Cuff carrying four leaf ends (1-based); defaults to the evaluated cuff
    /// for 2sym and the next cuff for asym.
    #[arg(long)]
    pub around: Option<usize>,
    /// Cuff lengths `l1,l2,l3`.
    #[arg(long, value_parser = triple)]
    pub l: [f64; 3],
    #[arg(long, value_parser = signs, default_value = "LLL")]
    pub signs: TwistSigns,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[command(flatten)]
    pub pants: PantsArgs,
    /// Cuff to evaluate (1-based).
    #[arg(long, default_value_t = 1)]
    pub cuff: usize,
    #[arg(long, value_enum, default_value = "gamma2")]
    pub lift: LiftArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LiftArg {
    Gamma2,
    Gamma3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    S11,
    S04,
    S2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Oracle,
}

#[derive(Debug, Args)]
pub struct StretchArgs {
    #[arg(long, value_enum, default_value = "s11")]
    pub surface: SurfaceArg,
    /// Curve lengths, comma separated.
    #[arg(long, value_parser = list)]
    pub l: Floats,
    /// Curve twists, comma separated (default zero).
    #[arg(long, value_parser = list)]
    pub twist: Option<Floats>,
    /// Twist direction of the uniform completion.
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    #[arg(long, value_enum, default_value = "backward")]
    pub direction: DirectionArg,
    #[arg(long)]
    pub t: f64,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Reconciled,
    Printed,
}

#[derive(Debug, Args)]
pub struct WidthArgs {
    #[arg(long)]
    pub l0: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, value_enum, default_value = "reconciled")]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value = "s11")]
    pub surface: SurfaceArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Default,
    Config,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "config")]
    pub grid: GridArg,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub max_q: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_step: Option<f64>,
    #[arg(long)]
    pub max_q: Option<u32>,
    /// `l0` values, comma separated.
    #[arg(long, value_parser = list)]
    pub l0: Option<Floats>,
}

#[derive(Debug, Args)]
pub struct CubeArgs {
    #[arg(long, value_parser = triple)]
    pub lengths: Option<[f64; 3]>,
    #[arg(long, value_parser = triple)]
    pub twists: Option<[f64; 3]>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub tol: Option<f64>,
}

fn triple(s: &str) -> Result<[f64; 3], String> {
    parse_triple("value", s).map_err(|e| e.to_string())
}

/// Comma-separated reals taken as one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Floats(pub Vec<f64>);

fn list(s: &str) -> Result<Floats, String> {
    parse_list("value", s).map(Floats).map_err(|e| e.to_string())
}

fn signs(s: &str) -> Result<TwistSigns, String> {
    s.parse().map_err(|e: thurston_core::Error| e.to_string())
}

fn cuff_index(k: usize, what: &str) -> Result<usize, KitError> {
    if !(1..=3).contains(&k) {
        return Err(KitError::Usage(format!("{what} must be 1, 2 or 3")));
    }
    Ok(k - 1)
}

fn triangulation(a: &PantsArgs, cuff: usize) -> Result<PantsTriangulation, KitError> {
    let around = a.around.map(|k| cuff_index(k, "--around")).transpose()?;
    let layout = match a.kind {
        TypeArg::ThreeSym => {
            if around.is_some() {
                return Err(KitError::Usage("--around does not apply to 3sym".into()));
            }
            Layout::ThreeSym
        }
        TypeArg::TwoSym => match around {
            Some(k) if k != cuff => {
                return Err(KitError::Usage("2sym is evaluated at its four-ended cuff".into()))
            }
            _ => Layout::TwoSym(cuff),
        },
        TypeArg::Asym => match around {
            Some(k) if k == cuff => {
                return Err(KitError::Usage("asym is evaluated away from the four-ended cuff".into()))
            }
            Some(k) => Layout::TwoSym(k),
            None => Layout::TwoSym((cuff + 1) % 3),
        },
    };
    Ok(PantsTriangulation::new(layout, a.signs)?)
}

fn surface_of(s: SurfaceArg) -> Surface {
    match s {
        SurfaceArg::S11 => Surface::S11,
        SurfaceArg::S04 => Surface::S04,
        SurfaceArg::S2 => Surface::S2,
    }
}

fn method_of(m: MethodArg) -> DeltaMethod {
    match m {
        MethodArg::Closed => DeltaMethod::ClosedForm,
        MethodArg::Oracle => DeltaMethod::Oracle,
    }
}

fn io_err(e: std::io::Error) -> KitError {
    KitError::Io(e.to_string())
}

/// Runs `cli`, writing human-readable output to `w`.
pub fn run(cli: &Cli, w: &mut dyn Write) -> Result<(), KitError> {
    let cfg = Config::resolve(cli.config.as_deref())?;
    let out = cli.out.clone().unwrap_or_else(|| cfg.out.clone());
    match &cli.command {
        Command::Delta(a) => cmd_delta(a, w),
        Command::Shear(a) => cmd_shear(a, w),
        Command::Stretch(a) => cmd_stretch(a, w),
        Command::TwistWidth(a) => cmd_twist_width(a, w),
        Command::Sweep(a) => cmd_sweep(a, &cfg, &out, w),
        Command::Envelope(a) => cmd_envelope(a, &cfg, &out, w),
        Command::Cube(a) => cmd_cube(a, &cfg, &out, w),
        Command::OracleCheck(a) => cmd_oracle_check(a, &cfg, &out, w),
    }
}

fn cmd_delta(a: &DeltaArgs, w: &mut dyn Write) -> Result<(), KitError> {
    let cuff = cuff_index(a.cuff, "--cuff")?;
    let t = triangulation(&a.pants, cuff)?;
    let p = PantsMetric::from_array(a.pants.l)?;
    let choice = match a.lift {
        LiftArg::Gamma2 => LiftChoice::Gamma2,
        LiftArg::Gamma3 => LiftChoice::Gamma3,
    };
    let closed = delta_closed(&p, &t, cuff, choice)?;
    let oracle = oracle_frame(&p, &t, cuff, choice)?.delta;
    writeln!(w, "triangulation {} {} cuff {}", t.layout, t.signs, a.cuff).map_err(io_err)?;
    writeln!(w, "closed {}", num(closed)).map_err(io_err)?;
    writeln!(w, "oracle {}", num(oracle)).map_err(io_err)?;
    writeln!(w, "diff {}", num(closed - oracle)).map_err(io_err)
}

fn cmd_shear(a: &PantsArgs, w: &mut dyn Write) -> Result<(), KitError> {
    let cuff = a.around.map(|k| cuff_index(k, "--around")).transpose()?.unwrap_or(0);
    let t = match a.kind {
        TypeArg::ThreeSym => triangulation(a, 0)?,
        _ => PantsTriangulation::new(Layout::TwoSym(cuff), a.signs)?,
    };
    let p = PantsMetric::from_array(a.l)?;
    writeln!(w, "triangulation {} {}", t.layout, t.signs).map_err(io_err)?;
    for (leaf, s) in shear_coords(&p, &t).iter() {
        writeln!(w, "{leaf} {}", num(s)).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_stretch(a: &StretchArgs, w: &mut dyn Write) -> Result<(), KitError> {
    let surface = surface_of(a.surface);
    let twists = a.twist.clone().map_or_else(|| vec![0.0; surface.curve_count()], |f| f.0);
    let x = FNPoint::new(surface, a.l.0.clone(), twists)?;
    let side = if a.side == SideArg::Left { Twist::Left } else { Twist::Right };
    let dir = if a.direction == DirectionArg::Forward { Direction::Forward } else { Direction::Backward };
    let spec = StretchSpec::uniform(surface, side, dir, a.t)?;
    let y = match a.method {
        MethodArg::Closed => stretch_point(&x, &spec)?,
        MethodArg::Oracle => {
            let tw = (0..surface.curve_count())
                .map(|c| {
                    thurston_core::stretch::twist_along_stretch_with(&x, &spec, c, method_of(a.method))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let k = spec.signed_time().exp();
            FNPoint::new(surface, x.lengths().iter().map(|l| l * k).collect(), tw)?
        }
    };
    let join = |v: &[f64]| v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(",");
    writeln!(w, "lengths {}", join(y.lengths())).map_err(io_err)?;
    writeln!(w, "twists {}", join(y.twists())).map_err(io_err)
}

fn cmd_twist_width(a: &WidthArgs, w: &mut dyn Write) -> Result<(), KitError> {
    let conv = match a.convention {
        ConventionArg::Reconciled => WidthConvention::Reconciled,
        ConventionArg::Printed => WidthConvention::Printed,
    };
    let closed = twist_width_closed(a.l0, a.t, conv)?;
    let (surface, x) = match a.surface {
        SurfaceArg::S11 => (Surface::S11, FNPoint::s11(2.0 * a.l0, 0.0)?),
        SurfaceArg::S04 => (Surface::S04, FNPoint::s04(4.0 * a.l0, 0.0)?),
        SurfaceArg::S2 => return Err(KitError::Usage("twist-width needs s11 or s04".into())),
    };
    let lam = StretchSpec::uniform(surface, Twist::Left, Direction::Backward, a.t)?;
    let nu = StretchSpec::uniform(surface, Twist::Right, Direction::Backward, a.t)?;
    let dev = twist_width_with(&x, &lam, &nu, 0, DeltaMethod::ClosedForm)?;
    let orc = twist_width_with(&x, &lam, &nu, 0, DeltaMethod::Oracle)?;
    writeln!(w, "closed {}", num(closed)).map_err(io_err)?;
    writeln!(w, "developed {}", num(dev)).map_err(io_err)?;
    writeln!(w, "oracle {}", num(orc)).map_err(io_err)?;
    writeln!(w, "diff {}", num(closed - orc)).map_err(io_err)
}

#[derive(Serialize)]
struct RegimeJson {
    regime: &'static str,
    count: usize,
    sup: Option<f64>,
    argmax_l0: Option<f64>,
    argmax_t: Option<f64>,
}

#[derive(Serialize)]
struct SweepJson {
    epsilon: f64,
    max_q: u32,
    rows: usize,
    global_bounded: bool,
    empirical_b: f64,
    regimes: Vec<RegimeJson>,
}

fn cmd_sweep(a: &SweepArgs, cfg: &Config, out: &Path, w: &mut dyn Write) -> Result<(), KitError> {
    let base = match a.grid {
        GridArg::Default => SweepGrid::default_grid(),
        GridArg::Config => cfg.sweep_grid()?,
    };
    let g = SweepGrid::new(
        base.l0().to_vec(),
        base.t().to_vec(),
        a.epsilon.unwrap_or(base.epsilon()),
        a.max_q.unwrap_or(base.max_q()),
    )
    .map_err(|e| KitError::Usage(e.to_string()))?;
    let r = run_sweep(&g)?;
    ensure_dir(out)?;
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|x| vec![num(x.l0), num(x.t), x.regime.name().into(), num(x.bound_value)])
        .collect();
    write_csv(&out.join("sweep.csv"), &["l0", "t", "regime", "bound_value"], &rows)?;
    let summary = SweepJson {
        epsilon: r.epsilon,
        max_q: r.max_q,
        rows: r.rows.len(),
        global_bounded: r.global_bounded,
        empirical_b: r.empirical_b,
        regimes: r
            .summaries
            .iter()
            .map(|s| RegimeJson {
                regime: s.regime.name(),
                count: s.count,
                sup: s.sup,
                argmax_l0: s.argmax.map(|p| p.0),
                argmax_t: s.argmax.map(|p| p.1),
            })
            .collect(),
    };
    write_json(&out.join("sweep_summary.json"), &summary)?;
    writeln!(w, "rows {}", r.rows.len()).map_err(io_err)?;
    writeln!(w, "global_bounded {}", r.global_bounded).map_err(io_err)?;
    writeln!(w, "empirical_b {}", num(r.empirical_b)).map_err(io_err)
}

#[derive(Serialize)]
struct EnvelopeCurve {
    l0: f64,
    max_lr: f64,
    max_rl: f64,
    /// Larger of the two estimates at the final time.
    value_at_t_max: f64,
    /// Largest estimate at times up to half the final time.
    max_first_half: f64,
}

#[derive(Serialize)]
struct EnvelopeJson {
    max_q: u32,
    t_max: f64,
    empirical_b: f64,
    finite: bool,
    /// Largest estimate at the final time, over all curves.
    value_at_t_max: f64,
    /// Largest estimate at times up to half the final time, over all curves.
    max_first_half: f64,
    no_growth: bool,
    curves: Vec<EnvelopeCurve>,
}

fn cmd_envelope(a: &EnvelopeArgs, cfg: &Config, out: &Path, w: &mut dyn Write) -> Result<(), KitError> {
    let t_max = a.t_max.unwrap_or(cfg.sweep_t_max);
    let t_step = a.t_step.unwrap_or(cfg.sweep_t_step);
    let max_q = a.max_q.unwrap_or(cfg.max_q);
    let l0s = a.l0.clone().map_or_else(|| cfg.sweep_l0.clone(), |f| f.0);
    if !(t_max >= 0.0) || !(t_step > 0.0) || max_q < 1 || l0s.iter().any(|x| !(*x > 0.0)) {
        return Err(KitError::Usage("need t_max >= 0, t_step > 0, max_q >= 1, l0 > 0".into()));
    }
    let ts = uniform_steps(t_max, t_step);
    let mut rows = Vec::new();
    let mut curves = Vec::new();
    for &l0 in &l0s {
        let series = envelope_series(l0, &ts, max_q)?;
        let both = |p: &thurston_core::envelope::EnvelopePoint| p.dth_lr.max(p.dth_rl);
        let last = series.last().map(both).unwrap_or(f64::NAN);
        let half = series
            .iter()
            .filter(|p| p.t <= 0.5 * t_max + 1e-12)
            .map(both)
            .fold(f64::NEG_INFINITY, f64::max);
        curves.push(EnvelopeCurve {
            l0,
            max_lr: series.iter().map(|p| p.dth_lr).fold(f64::NEG_INFINITY, f64::max),
            max_rl: series.iter().map(|p| p.dth_rl).fold(f64::NEG_INFINITY, f64::max),
            value_at_t_max: last,
            max_first_half: half,
        });
        rows.extend(series.iter().map(|p| vec![num(l0), num(p.t), num(p.dth_lr), num(p.dth_rl)]));
    }
    ensure_dir(out)?;
    write_csv(&out.join("envelope.csv"), &["l0", "t", "dth_lr", "dth_rl"], &rows)?;
    let empirical_b = curves.iter().map(|c| c.max_lr.max(c.max_rl)).fold(f64::NEG_INFINITY, f64::max);
    let at_end = curves.iter().map(|c| c.value_at_t_max).fold(f64::NEG_INFINITY, f64::max);
    let first_half = curves.iter().map(|c| c.max_first_half).fold(f64::NEG_INFINITY, f64::max);
    let summary = EnvelopeJson {
        max_q,
        t_max,
        empirical_b,
        finite: empirical_b.is_finite(),
        value_at_t_max: at_end,
        max_first_half: first_half,
        no_growth: at_end <= first_half + 1e-6,
        curves,
    };
    write_json(&out.join("envelope_summary.json"), &summary)?;
    writeln!(w, "rows {}", rows.len()).map_err(io_err)?;
    writeln!(w, "empirical_b {}", num(summary.empirical_b)).map_err(io_err)?;
    writeln!(w, "no_growth {}", summary.no_growth).map_err(io_err)
}

#[derive(Serialize)]
struct CloudEntry {
    completion: String,
    signs: String,
    layout1: String,
    layout2: String,
    x: f64,
    y: f64,
    z: f64,
}

#[derive(Serialize)]
struct ExtremeEntry {
    index: usize,
    point: [f64; 3],
    completions: Vec<String>,
}

#[derive(Serialize)]
struct HullJson {
    cloud_size: usize,
    distinct_points: usize,
    vertices: usize,
    edges: usize,
    faces: usize,
    extreme_by_min_norm: usize,
    methods_agree: bool,
    extreme: Vec<ExtremeEntry>,
}

fn cmd_cube(a: &CubeArgs, cfg: &Config, out: &Path, w: &mut dyn Write) -> Result<(), KitError> {
    let x = FNPoint::s2(a.lengths.unwrap_or(cfg.base_lengths), a.twists.unwrap_or(cfg.base_twists))?;
    let an = analyze(&x)?;
    let entry = |c: &Completion, v: [f64; 3]| CloudEntry {
        completion: c.to_string(),
        signs: c.signs.to_string(),
        layout1: c.layout1.to_string(),
        layout2: c.layout2.to_string(),
        x: v[0],
        y: v[1],
        z: v[2],
    };
    let cloud: Vec<CloudEntry> = an.cloud.iter().map(|(c, v)| entry(c, v.0)).collect();
    ensure_dir(out)?;
    write_json(&out.join("cube_cloud.json"), &cloud)?;
    let rows: Vec<Vec<String>> = cloud
        .iter()
        .map(|e| vec![e.signs.clone(), e.layout1.clone(), e.layout2.clone(), num(e.x), num(e.y), num(e.z)])
        .collect();
    write_csv(&out.join("cube_cloud.csv"), &["signs", "layout1", "layout2", "x", "y", "z"], &rows)?;
    let (v, e, f) = an.hull.counts();
    let hull = HullJson {
        cloud_size: an.cloud.len(),
        distinct_points: an.distinct.len(),
        vertices: v,
        edges: e,
        faces: f,
        extreme_by_min_norm: an.extreme.len(),
        methods_agree: an.methods_agree(),
        extreme: an
            .hull
            .vertices
            .iter()
            .map(|&i| ExtremeEntry {
                index: i,
                point: an.distinct[i].point,
                completions: an.distinct[i].completions.iter().map(|c| c.to_string()).collect(),
            })
            .collect(),
    };
    write_json(&out.join("cube_hull.json"), &hull)?;
    writeln!(w, "cloud {} distinct {}", an.cloud.len(), an.distinct.len()).map_err(io_err)?;
    writeln!(w, "hull V={v} E={e} F={f}").map_err(io_err)?;
    writeln!(w, "methods_agree {}", an.methods_agree()).map_err(io_err)
}

fn cmd_oracle_check(a: &OracleArgs, cfg: &Config, out: &Path, w: &mut dyn Write) -> Result<(), KitError> {
    let tol = a.tol.unwrap_or(cfg.tol);
    if !(tol > 0.0) {
        return Err(KitError::Usage("--tol must be positive".into()));
    }
    let r = reconcile(tol)?;
    ensure_dir(out)?;
    write_json(&out.join("reconciliation.json"), &r)?;
    write_text(&out.join("reconciliation.md"), &render_markdown(&r))?;
    for f in &r.formulas {
        writeln!(w, "{} residual {} corrected {}", f.name, num(f.max_residual), f.corrected).map_err(io_err)?;
    }
    for i in &r.invariants {
        writeln!(w, "{} {}", i.name, if i.passed { "pass" } else { "FAIL" }).map_err(io_err)?;
    }
    if r.passed {
        Ok(())
    } else {
        Err(KitError::Invariants(r.failures().into_iter().map(String::from).collect()))
    }
}
