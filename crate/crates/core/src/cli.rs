//! Command-line front end. Every command writes to the given sink; errors go
//! to the error sink as `ERROR <code>: <message>` with exit code 2 for bad
//! input and 3 for numerical failure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use crate::catalog::{self, EntryParams, Status, RESIDUAL_TOL, VERIFY_POINTS};
use crate::darboux::{self, DarbouxParams};
use crate::dynamics::{self, BlochState, Trajectory, DEFAULT_SAMPLES, MIN_TOL};
use crate::error::{Error, Result};
use crate::field::{parse_params_arg, Field, FieldSpec, FnField, Params};
use crate::reduction::{self, Angle, ReductionPlan};
use crate::solutions;
use crate::spinor::{CVec3, Spinor};

pub const MAX_TOL: f64 = 1e-3;
pub const DEFAULT_TOL: f64 = 1e-10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "spineq", version, about = "Exact and numerical solutions of i dV/dt = (sigma . F) V")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Field spec JSON file.
    #[arg(long)]
    pub field: Option<PathBuf>,
    /// Catalog entry id (1-26).
    #[arg(long)]
    pub entry: Option<u8>,
    /// Parameter overrides `k=re[,im];...`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, num_args = 2, value_names = ["T0", "T1"], allow_negative_numbers = true)]
    pub window: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integrate the spin equation and write the trajectory.
    Propagate {
        #[command(flatten)]
        common: Common,
        /// Initial spinor `re,im,re,im` (or `re,re` for real components).
        #[arg(long, allow_hyphen_values = true)]
        v0: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Residual check of catalog entries, or of a trajectory file against a field.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Verify all 26 entries concurrently.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = VERIFY_POINTS)]
        points: usize,
        /// Trajectory CSV to check against `--field` or `--entry`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Recover the field from a trajectory CSV.
    Invert {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        /// Gauge value `re,im` multiplying the free direction.
        #[arg(long, allow_hyphen_values = true)]
        gauge: Option<String>,
        /// Use the real-field formula (requires constant norm).
        #[arg(long)]
        real: bool,
    },
    /// Partner field and transformed solution for constant F3 = f.
    Darboux {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Where to write the JSON descriptor; defaults next to `--out`.
        #[arg(long)]
        descriptor: Option<PathBuf>,
    },
    /// Browse the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Integrate the Bloch direction, phase and norm.
    Bloch {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        v0: Option<String>,
    },
    /// Rotate a field about an axis by angle `rate*t + offset`.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Axis `x,y,z` (real components).
        #[arg(long, allow_hyphen_values = true)]
        axis: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        rate: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        offset: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Emit the two Schrodinger potentials of the source field instead.
        #[arg(long)]
        potentials: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    Show {
        id: u8,
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
}

/// Runs with process stdout/stderr and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "ERROR {EXIT_INPUT}: {first}");
            return EXIT_INPUT;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "ERROR {code}: {e}");
            code
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_validation() || matches!(e, Error::Precondition(_)) {
        EXIT_INPUT
    } else {
        EXIT_NUMERIC
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Propagate { common, v0, samples } => propagate(common, v0.as_deref(), *samples, out),
        Command::Verify { common, all, points, input } => verify(common, *all, *points, input.as_deref(), out),
        Command::Invert { common, input, gauge, real } => invert(common, input, gauge.as_deref(), *real, out),
        Command::Darboux { common, samples, descriptor } => darboux_cmd(common, *samples, descriptor.as_deref(), out),
        Command::Catalog { action } => catalog_cmd(action, out),
        Command::Bloch { common, v0 } => bloch_cmd(common, v0.as_deref(), out),
        Command::Reduce { common, axis, rate, offset, samples, potentials } => {
            reduce_cmd(common, axis, *rate, *offset, *samples, *potentials, out)
        }
    }
}

// ---------------------------------------------------------------- helpers

pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn check_tol(tol: f64) -> Result<()> {
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Error::Invalid(format!("--tol must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {tol:e}")));
    }
    Ok(())
}

fn window_of(c: &Common) -> Result<Option<(f64, f64)>> {
    match c.window.as_deref() {
        None => Ok(None),
        Some([a, b]) if a.is_finite() && b.is_finite() && a < b => Ok(Some((*a, *b))),
        Some(w) => Err(Error::Invalid(format!("--window needs t0 < t1, got {w:?}"))),
    }
}

fn require_window(c: &Common) -> Result<(f64, f64)> {
    window_of(c)?.ok_or_else(|| Error::Invalid("--window t0 t1 is required".into()))
}

fn params_of(c: &Common) -> Result<Params> {
    c.params.as_deref().map(parse_params_arg).transpose().map(Option::unwrap_or_default)
}

fn parse_numbers(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("{what}: `{x}` is not a number"))))
        .collect()
}

/// `re,im,re,im` or `re,re`.
pub fn parse_spinor(s: &str) -> Result<Spinor> {
    match parse_numbers(s, "--v0")?.as_slice() {
        [a, b] => Ok(Spinor::from_real(*a, *b)),
        [a, b, c, d] => Ok(Spinor::new(C64::new(*a, *b), C64::new(*c, *d))),
        _ => Err(Error::Invalid("--v0 takes re,re or re,im,re,im".into())),
    }
}

fn parse_complex(s: &str, what: &str) -> Result<C64> {
    match parse_numbers(s, what)?.as_slice() {
        [a] => Ok(C64::new(*a, 0.0)),
        [a, b] => Ok(C64::new(*a, *b)),
        _ => Err(Error::Invalid(format!("{what} takes re or re,im"))),
    }
}

/// The field selected by `--field` or `--entry`, with `--params` applied.
struct Source {
    field: Box<dyn Field>,
    entry: Option<(u8, Params)>,
}

fn source_of(c: &Common) -> Result<Source> {
    let params = params_of(c)?;
    match (&c.field, c.entry) {
        (Some(_), Some(_)) => Err(Error::Invalid("give either --field or --entry, not both".into())),
        (Some(path), None) => {
            let spec = FieldSpec::load(path)?;
            let field: Box<dyn Field> = if params.is_empty() {
                Box::new(spec)
            } else {
                Box::new(FnField(move |t| spec.eval_with(t, &params)))
            };
            Ok(Source { field, entry: None })
        }
        (None, Some(id)) => {
            let e = catalog::entry(id)?;
            let resolved = e.resolve_params(&params)?;
            e.validate(&EntryParams::from_map(&resolved)?)?;
            Ok(Source { field: Box::new(FieldSpec::catalog(id, resolved.clone())?), entry: Some((id, resolved)) })
        }
        (None, None) => Err(Error::Invalid("one of --field or --entry is required".into())),
    }
}

fn entry_window(id: u8, params: &Params) -> Result<(f64, f64)> {
    let e = catalog::entry(id)?;
    Ok(e.default_window(&EntryParams::from_map(params)?))
}

fn initial_spinor(src: &Source, v0: Option<&str>, t0: f64) -> Result<Spinor> {
    match (v0, &src.entry) {
        (Some(s), _) => parse_spinor(s),
        (None, Some((id, p))) => catalog::entry_solution(*id, p, t0),
        (None, None) => Err(Error::Invalid("--v0 is required with --field".into())),
    }
}

fn uniform(w: (f64, f64), n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Invalid("need at least 2 samples".into()));
    }
    Ok((0..n).map(|k| w.0 + (w.1 - w.0) * k as f64 / (n - 1) as f64).collect())
}

/// Writes to `--out` when given, else to `out`.
fn emit(path: Option<&Path>, out: &mut dyn Write, body: &str) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            f.write_all(body.as_bytes())?;
            f.flush()?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn c_json(z: C64) -> Value {
    json!([fmt_f(z.re), fmt_f(z.im)])
}

fn trajectory_json(tr: &Trajectory) -> Value {
    json!({
        "t": tr.times.iter().map(|&t| fmt_f(t)).collect::<Vec<_>>(),
        "v": tr.states.iter().map(|v| json!([c_json(v.v1), c_json(v.v2)])).collect::<Vec<_>>(),
        "F": tr.fields.iter().map(|f| f.components().iter().map(|z| c_json(*z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "norm": tr.norms_sqr().iter().map(|n| fmt_f(n.sqrt())).collect::<Vec<_>>(),
    })
}

fn render_trajectory(tr: &Trajectory, format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => tr.to_csv_string(),
        Format::Json => serde_json::to_string_pretty(&trajectory_json(tr))? + "\n",
    })
}

// --------------------------------------------------------------- commands

fn propagate(c: &Common, v0: Option<&str>, samples: usize, out: &mut dyn Write) -> Result<i32> {
    check_tol(c.tol)?;
    let src = source_of(c)?;
    let w = match (window_of(c)?, &src.entry) {
        (Some(w), _) => w,
        (None, Some((id, p))) => entry_window(*id, p)?,
        (None, None) => require_window(c)?,
    };
    let v = initial_spinor(&src, v0, w.0)?;
    let tr = dynamics::propagate_at(src.field.as_ref(), v, w.0, &uniform(w, samples)?, c.tol)?;
    emit(c.out.as_deref(), out, &render_trajectory(&tr, c.format)?)?;
    Ok(EXIT_OK)
}

fn report_json(r: &catalog::VerifyReport) -> Value {
    json!({
        "id": r.id,
        "window": [fmt_f(r.window.0), fmt_f(r.window.1)],
        "points": r.points,
        "max_residual": fmt_f(r.max_residual),
        "passed": r.passed,
        "flagged": r.flagged,
        "amended_residual": r.amended_residual.map(fmt_f),
    })
}

fn verify(c: &Common, all: bool, points: usize, input: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    if all {
        return verify_all(c, points, out);
    }
    if let Some(path) = input {
        let src = source_of(c)?;
        let tr = Trajectory::read_csv(BufReader::new(File::open(path)?))?;
        let r = tr.max_interior_residual(Some(src.field.as_ref()))?;
        let ok = r <= c.tol.max(RESIDUAL_TOL);
        let body = json!({"input": path.display().to_string(), "max_residual": fmt_f(r), "passed": ok});
        emit(c.out.as_deref(), out, &(serde_json::to_string_pretty(&body)? + "\n"))?;
        return Ok(if ok { EXIT_OK } else { EXIT_NUMERIC });
    }
    let id = c.entry.ok_or_else(|| Error::Invalid("verify needs --entry, --all or --input".into()))?;
    let params = params_of(c)?;
    let r = catalog::verify_entry(id, &params, window_of(c)?, points)?;
    emit(c.out.as_deref(), out, &(serde_json::to_string_pretty(&report_json(&r))? + "\n"))?;
    let ok = r.passed || r.amended_residual.is_some_and(|a| a <= RESIDUAL_TOL);
    Ok(if ok { EXIT_OK } else { EXIT_NUMERIC })
}

fn verify_all(c: &Common, points: usize, out: &mut dyn Write) -> Result<i32> {
    let reports = catalog::verify_all(points);
    let mut failed = false;
    let mut rows = Vec::new();
    for (k, r) in reports.iter().enumerate() {
        match r {
            Ok(r) => {
                if !r.flagged && !r.passed {
                    failed = true;
                }
                rows.push(Ok(r));
            }
            Err(e) => {
                failed = true;
                rows.push(Err((k + 1, e.to_string())));
            }
        }
    }
    let body = match c.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| match r {
                    Ok(r) => report_json(r),
                    Err((id, e)) => json!({"id": id, "error": e}),
                })
                .collect();
            serde_json::to_string_pretty(&json!({"entries": v, "passed": !failed}))? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("id,max_residual,passed,flagged,amended_residual\n");
            for r in &rows {
                match r {
                    Ok(r) => s += &format!(
                        "{},{},{},{},{}\n",
                        r.id,
                        fmt_f(r.max_residual),
                        r.passed,
                        r.flagged,
                        r.amended_residual.map(fmt_f).unwrap_or_default()
                    ),
                    Err((id, e)) => s += &format!("{id},,false,,error: {}\n", e.replace(',', ";")),
                }
            }
            s
        }
    };
    emit(c.out.as_deref(), out, &body)?;
    Ok(if failed { EXIT_NUMERIC } else { EXIT_OK })
}

fn invert(c: &Common, input: &Path, gauge: Option<&str>, real: bool, out: &mut dyn Write) -> Result<i32> {
    let tr = Trajectory::read_csv(BufReader::new(File::open(input)?))?;
    let rec = if real {
        if gauge.is_some() {
            return Err(Error::Invalid("--gauge has no meaning with --real".into()));
        }
        solutions::invert_field_selfadjoint(&tr)?
    } else {
        let g = gauge.map(|s| parse_complex(s, "--gauge")).transpose()?.unwrap_or_default();
        solutions::invert_field(&tr, |_| g)?
    };
    emit(c.out.as_deref(), out, &render_trajectory(&rec, c.format)?)?;
    Ok(EXIT_OK)
}

fn get(p: &Params, k: &str, default: C64) -> C64 {
    p.get(k).copied().unwrap_or(default)
}

fn darboux_cmd(c: &Common, samples: usize, descriptor: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let p = params_of(c)?;
    if let Some(k) = p.keys().find(|k| !["f", "R", "phi0", "eps", "p", "q"].contains(&k.as_str())) {
        return Err(Error::Invalid(format!("darboux: unknown parameter `{k}` (use f, R, phi0, eps, p, q)")));
    }
    let (f, r, phi0) = (get(&p, "f", C64::new(0.5, 0.0)), get(&p, "R", C64::new(1.0, 0.0)), get(&p, "phi0", C64::new(0.1, 0.0)));
    let eps = get(&p, "eps", C64::new(0.8, 0.0));
    let (pp, qq) = (get(&p, "p", C64::new(1.0, 0.0)), get(&p, "q", C64::new(1.0, 0.0)));
    let w = window_of(c)?.unwrap_or((0.0, 2.0));
    let ts = uniform(w, samples)?;
    let base = CVec3::new(eps, C64::new(0.0, 0.0), f);
    let v = Trajectory::from_fn(&ts, |t| Ok(darboux::constant_f_solution(f, eps, pp, qq, t)), Some(&base))?;
    let params = DarbouxParams::constant_f(f, r, phi0, &ts)?;
    let partner = darboux::darboux_apply(&v, eps, &params)?;
    let desc = json!({
        "f": c_json(f), "R": c_json(r), "phi0": c_json(phi0), "eps": c_json(eps),
        "p": c_json(pp), "q": c_json(qq),
        "window": [fmt_f(w.0), fmt_f(w.1)],
        "max_residual": fmt_f(partner.max_interior_residual(None)?),
    });
    match c.format {
        Format::Json => {
            let body = json!({"descriptor": desc, "trajectory": trajectory_json(&partner)});
            emit(c.out.as_deref(), out, &(serde_json::to_string_pretty(&body)? + "\n"))?;
        }
        Format::Csv => {
            emit(c.out.as_deref(), out, &partner.to_csv_string())?;
            let target = descriptor.map(Path::to_path_buf).or_else(|| c.out.as_ref().map(|o| o.with_extension("json")));
            if let Some(path) = target {
                std::fs::write(path, serde_json::to_string_pretty(&desc)? + "\n")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn catalog_cmd(action: &CatalogAction, out: &mut dyn Write) -> Result<i32> {
    match action {
        CatalogAction::List { format } => {
            let body = match format {
                Format::Csv => {
                    let mut s = String::from("id,status,field\n");
                    for e in catalog::all() {
                        let status = match e.status {
                            Status::Verified => "verified",
                            Status::Unverified { .. } => "unverified",
                        };
                        s += &format!("{},{},\"{}\"\n", e.id, status, e.field_program().replace('"', "'"));
                    }
                    s
                }
                Format::Json => {
                    let v: Vec<Value> =
                        catalog::all().iter().map(|e| e.descriptor(&e.default_params())).collect();
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            out.write_all(body.as_bytes())?;
        }
        CatalogAction::Show { id, params } => {
            let e = catalog::entry(*id)?;
            let p = params.as_deref().map(parse_params_arg).transpose()?.unwrap_or_default();
            let ep = EntryParams::from_map(&e.resolve_params(&p)?)?;
            e.validate(&ep)?;
            out.write_all((serde_json::to_string_pretty(&e.descriptor(&ep))? + "\n").as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn bloch_cmd(c: &Common, v0: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    check_tol(c.tol)?;
    let src = source_of(c)?;
    let w = match (window_of(c)?, &src.entry) {
        (Some(w), _) => w,
        (None, Some((id, p))) => entry_window(*id, p)?,
        (None, None) => require_window(c)?,
    };
    let v = initial_spinor(&src, v0, w.0)?;
    let path = dynamics::bloch_propagate(src.field.as_ref(), BlochState::from_spinor(&v)?, w, c.tol)?;
    let body = match c.format {
        Format::Csv => {
            let mut s = String::from("t,n1,n2,n3,alpha,norm\n");
            for k in 0..path.times.len() {
                let n = path.n[k];
                let a = path.alpha.as_ref().map(|a| fmt_f(a[k])).unwrap_or_else(|| "nan".into());
                s += &format!(
                    "{},{},{},{},{},{}\n",
                    fmt_f(path.times[k]),
                    fmt_f(n[0]),
                    fmt_f(n[1]),
                    fmt_f(n[2]),
                    a,
                    fmt_f(path.norm[k])
                );
            }
            s
        }
        Format::Json => {
            let body = json!({
                "t": path.times.iter().map(|&t| fmt_f(t)).collect::<Vec<_>>(),
                "n": path.n.iter().map(|n| n.map(fmt_f)).collect::<Vec<_>>(),
                "alpha": path.alpha.as_ref().map(|a| a.iter().map(|&x| fmt_f(x)).collect::<Vec<_>>()),
                "norm": path.norm.iter().map(|&x| fmt_f(x)).collect::<Vec<_>>(),
                "drift": fmt_f(path.drift),
            });
            serde_json::to_string_pretty(&body)? + "\n"
        }
    };
    emit(c.out.as_deref(), out, &body)?;
    Ok(EXIT_OK)
}

pub const FIELD_CSV_HEADER: &str = "t,F1_re,F1_im,F2_re,F2_im,F3_re,F3_im";
pub const POTENTIAL_CSV_HEADER: &str = "t,V1_re,V1_im,V2_re,V2_im";

fn reduce_cmd(
    c: &Common,
    axis: &str,
    rate: f64,
    offset: f64,
    samples: usize,
    potentials: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let src = source_of(c)?;
    let w = match (window_of(c)?, &src.entry) {
        (Some(w), _) => w,
        (None, Some((id, p))) => entry_window(*id, p)?,
        (None, None) => require_window(c)?,
    };
    let ts = uniform(w, samples)?;
    let mut s = String::new();
    if potentials {
        s += POTENTIAL_CSV_HEADER;
        s.push('\n');
        for &t in &ts {
            let (v1, v2) = reduction::to_schrodinger_potentials(src.field.as_ref(), t)?;
            s += &format!("{},{},{},{},{}\n", fmt_f(t), fmt_f(v1.re), fmt_f(v1.im), fmt_f(v2.re), fmt_f(v2.im));
        }
    } else {
        let l = match parse_numbers(axis, "--axis")?.as_slice() {
            [x, y, z] => CVec3::from_real([*x, *y, *z]),
            _ => return Err(Error::Invalid("--axis takes x,y,z".into())),
        };
        let plan = ReductionPlan::new(l, Angle::Linear { rate: C64::new(rate, 0.0), offset: C64::new(offset, 0.0) })?;
        s += FIELD_CSV_HEADER;
        s.push('\n');
        for &t in &ts {
            let f = reduction::reduce_field(src.field.as_ref(), &plan, t)?;
            s += &fmt_f(t);
            for z in f.components() {
                s += &format!(",{},{}", fmt_f(z.re), fmt_f(z.im));
            }
            s.push('\n');
        }
    }
    emit(c.out.as_deref(), out, &s)?;
    Ok(EXIT_OK)
}
