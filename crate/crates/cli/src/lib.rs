//! Command-line front end: reads DDF, space and metric documents, runs one
//! library operation and writes one JSON document (CSV for `trace`).
//!
//! Exit status: `0` on success or a passing check (vacuous passes included),
//! `1` when a check fails or an operation is undefined for its arguments,
//! `2` on usage, I/O, parse and document-schema errors.

pub mod formats;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmetric::{
    baire_check, cantor_check, check_tnorm_axioms, diameter_report, dist_to_h0,
    heine_borel_report, in_h0_ball, levy_distance, subsequence_check, tb_bounded_report,
    theorems::class_name, CheckReport, CompactnessParams, Ddf64, Outcome, PmSpace64, PointSeq,
    Separation, Subset, TNorm, TbMode, TriangleFn,
};
use serde_json::{json, Value};

use formats::{parse_ddf, parse_space, round_numbers, DdfFile, MetricFile, SpaceFile};

/// A failure that prevents an operation from producing its result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad command line.
    Usage(String),
    /// Unreadable, malformed or schema-violating input document.
    Input(String),
    /// Well-formed input on which the requested operation is undefined.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::Input(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Domain(_) => "domain",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<pmetric::Error> for CliError {
    fn from(e: pmetric::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "pmetric", version, about = "Probabilistic metric space toolkit")]
pub struct Cli {
    /// Tolerance for approximate comparisons and sampled axiom checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Radius grid "start:stop:step" for commands that take several radii.
    #[arg(long, global = true, value_parser = |s: &str| parse_grid(s).map(Grid))]
    grid: Option<Grid>,
    /// Load spaces that fail the axioms, with a warning.
    #[arg(long, global = true)]
    no_validate: bool,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Cover,
    Strong,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Modified Levy distance between two DDFs.
    Levy {
        f: PathBuf,
        g: PathBuf,
        /// Fail unless the distance is at most this radius (up to --tol).
        #[arg(long)]
        within: Option<f64>,
    },
    /// Levy distance to H_0, in closed form.
    DistH0 {
        f: PathBuf,
        /// Fail unless F lies in the open H_0-ball of this radius.
        #[arg(long)]
        t: Option<f64>,
    },
    /// Sup-T triangle function of two DDFs.
    Tau {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value = "T_M", value_parser = parse_tnorm)]
        tnorm: TNorm,
        /// Fail unless the result is pointwise below this DDF.
        #[arg(long)]
        leq: Option<PathBuf>,
    },
    /// Convolution of two DDFs.
    Conv {
        f: PathBuf,
        g: PathBuf,
        /// Fail unless the result is pointwise below this DDF.
        #[arg(long)]
        leq: Option<PathBuf>,
    },
    /// Evaluate a t-norm (or its conorm), or spot-check its axioms.
    Tnorm {
        #[arg(value_parser = parse_tnorm)]
        name: TNorm,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        y: Option<f64>,
        #[arg(long)]
        conorm: bool,
        /// Run the sampled axiom check instead of evaluating.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Check the PM-space axioms of a space document.
    Validate { space: PathBuf },
    /// Build the Menger space of a classical metric.
    FromMetric {
        metric: PathBuf,
        #[arg(long, default_value = "T_M", value_parser = parse_tnorm)]
        tnorm: TNorm,
    },
    /// Strong neighbourhood N_p(t).
    Neighborhood {
        space: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Probabilistic diameter of a subset, as a DDF document.
    Diameter {
        space: PathBuf,
        #[command(flatten)]
        subset: SubsetArg,
    },
    /// Bounded, semi-bounded or unbounded.
    Classify {
        space: PathBuf,
        #[command(flatten)]
        subset: SubsetArg,
    },
    /// Total boundedness at --eps or at every radius of --grid.
    TotallyBounded {
        space: PathBuf,
        #[command(flatten)]
        subset: SubsetArg,
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<f64>,
        #[arg(long, value_enum, default_value = "cover")]
        mode: Mode,
    },
    /// Radius whose neighbourhoods separate two points.
    Separate {
        space: PathBuf,
        p: String,
        q: String,
    },
    /// (eps, lam)-Cauchy condition on a finite sequence.
    Cauchy {
        space: PathBuf,
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        el: EpsLam,
    },
    /// (eps, lam)-convergence of a finite sequence.
    Converges {
        space: PathBuf,
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        el: EpsLam,
    },
    /// Theorem checks on a finite space.
    #[command(subcommand)]
    Check(CheckCommand),
    /// CSV traces for plotting.
    #[command(subcommand)]
    Trace(TraceCommand),
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Diameter properties on every subset up to --max-size points.
    Diameter {
        space: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Strong total boundedness on the --grid (or --eps) implies boundedness.
    Tb {
        space: PathBuf,
        #[command(flatten)]
        subset: SubsetArg,
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<f64>,
    },
    /// A Cauchy sequence with a convergent subsequence stays near its limit.
    Subsequence {
        space: PathBuf,
        #[command(flatten)]
        seq: SeqArg,
        /// 1-based positions of the subsequence, increasing.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        el: EpsLam,
    },
    /// Nested closed sets with diameters tending to H_0 meet in one point.
    Cantor {
        space: PathBuf,
        /// One chain element per flag, outermost first.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Open dense sets have a nonempty dense intersection.
    Baire {
        space: PathBuf,
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Compactness characterisations on the supplied sequences and covers.
    HeineBorel {
        space: PathBuf,
        #[command(flatten)]
        subset: SubsetArg,
        /// A sequence of labels; repeat for several.
        #[arg(long = "seq")]
        seqs: Vec<String>,
        /// A cover as ';'-separated sets of ','-separated labels; repeat for several.
        #[arg(long = "cover")]
        covers: Vec<String>,
        #[command(flatten)]
        el: EpsLam,
    },
}

#[derive(Debug, Subcommand)]
enum TraceCommand {
    /// d_L(F_{p_n,p}, H_0) along a sequence.
    Convergence {
        space: PathBuf,
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        to: String,
    },
    /// d_L(D_{S_n}, H_0) along a chain of subsets.
    Chain {
        space: PathBuf,
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct SubsetArg {
    /// Comma-separated labels; defaults to every point.
    #[arg(long)]
    subset: Option<String>,
}

#[derive(Debug, Args)]
struct SeqArg {
    /// Comma-separated labels, repetitions allowed.
    #[arg(long)]
    seq: String,
}

#[derive(Debug, Args)]
struct EpsLam {
    #[arg(long, allow_negative_numbers = true)]
    eps: f64,
    #[arg(long, allow_negative_numbers = true)]
    lam: f64,
}

fn parse_tnorm(s: &str) -> Result<TNorm, String> {
    s.parse().map_err(|e: pmetric::Error| e.to_string())
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
/// A parsed `--grid`; a newtype so clap treats it as one value.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("grid {s:?} is not of the form start:stop:step"));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("grid {s:?}: {e}"));
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite() && start <= stop) {
        return Err(format!("grid {s:?} needs finite start <= stop and step > 0"));
    }
    let count = ((stop - start) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(format!("grid {s:?} has more than 1000000 points"));
    }
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Body {
    Json(Value),
    Csv(String),
}

struct Response {
    body: Body,
    passed: bool,
}

impl Response {
    fn ok(doc: Value) -> Self {
        Response {
            body: Body::Json(doc),
            passed: true,
        }
    }

    fn check(doc: Value, passed: bool) -> Self {
        Response {
            body: Body::Json(doc),
            passed,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Invocation {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Invocation {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut ctx = Context {
        tol: cli.tol,
        grid: cli.grid.clone().map(|g| g.0),
        no_validate: cli.no_validate,
        seed: cli.seed,
        warnings: Vec::new(),
    };
    let result = ctx.execute(cli.command);
    let mut stderr: String = ctx.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(Response { body, passed }) => {
            let stdout = match body {
                Body::Json(doc) => render(doc),
                Body::Csv(text) => text,
            };
            Invocation {
                code: if passed { 0 } else { 1 },
                stdout,
                stderr,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Invocation {
                code: e.exit_code(),
                stdout: render(json!({"error": {"kind": e.kind(), "message": e.to_string()}})),
                stderr,
            }
        }
    }
}

fn render(mut doc: Value) -> String {
    round_numbers(&mut doc);
    let mut text = serde_json::to_string_pretty(&doc).expect("serialisable");
    text.push('\n');
    text
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_ddf(path: &Path) -> Result<Ddf64, CliError> {
    parse_ddf(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn ddf_doc(f: &Ddf64) -> Value {
    serde_json::to_value(DdfFile::from_ddf(f)).expect("serialisable")
}

fn report_doc(r: &CheckReport) -> Value {
    let mut counts = [0usize; 3];
    fn count(r: &CheckReport, counts: &mut [usize; 3]) {
        counts[match r.outcome() {
            Outcome::Pass => 0,
            Outcome::VacuousPass => 1,
            Outcome::Fail => 2,
        }] += 1;
        r.parts().iter().for_each(|p| count(p, counts));
    }
    count(r, &mut counts);
    json!({
        "outcome": r.outcome(),
        "summary": {
            "substantive_passes": counts[0],
            "vacuous_passes": counts[1],
            "failures": counts[2],
        },
        "report": r,
    })
}

fn report_response(r: CheckReport) -> Response {
    let passed = r.passed();
    Response::check(report_doc(&r), passed)
}

fn leq_response(result: &Ddf64, bound: Option<&Path>) -> Result<Response, CliError> {
    match bound {
        None => Ok(Response::ok(ddf_doc(result))),
        Some(path) => {
            let c = load_ddf(path)?;
            let x = result.first_exceedance(&c);
            let mut doc = json!({"leq": x.is_none(), "result": ddf_doc(result)});
            if let Some(x) = x {
                doc["x"] = json!(x);
            }
            Ok(Response::check(doc, x.is_none()))
        }
    }
}

struct Context {
    tol: f64,
    grid: Option<Vec<f64>>,
    no_validate: bool,
    seed: u64,
    warnings: Vec<String>,
}

impl Context {
    fn load_space(&mut self, path: &Path) -> Result<PmSpace64, CliError> {
        let space = parse_space(&read(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let report = space.validate();
        if !report.passed() {
            let witness = serde_json::to_string(report.witnesses()).expect("serialisable");
            let message = format!("{}: PM-space axiom fails: {witness}", path.display());
            if self.no_validate {
                self.warnings.push(message);
            } else {
                return Err(CliError::Domain(message));
            }
        }
        Ok(space)
    }

    fn radii(&self, eps: Option<f64>) -> Result<Vec<f64>, CliError> {
        match (eps, &self.grid) {
            (Some(e), _) => Ok(vec![e]),
            (None, Some(g)) => Ok(g.clone()),
            (None, None) => Err(CliError::Usage("one of --eps or --grid is required".into())),
        }
    }

    fn execute(&mut self, command: Command) -> Result<Response, CliError> {
        match command {
            Command::Levy { f, g, within } => {
                let d = levy_distance(&load_ddf(&f)?, &load_ddf(&g)?);
                match within {
                    None => Ok(Response::ok(json!({"d_L": d}))),
                    Some(r) => {
                        let ok = d <= r + self.tol;
                        Ok(Response::check(json!({"d_L": d, "within": ok}), ok))
                    }
                }
            }
            Command::DistH0 { f, t } => {
                let f = load_ddf(&f)?;
                let d = dist_to_h0(&f);
                match t {
                    None => Ok(Response::ok(json!({"dist_to_h0": d}))),
                    Some(t) => {
                        let inside = in_h0_ball(&f, t)?;
                        Ok(Response::check(json!({"dist_to_h0": d, "in_ball": inside}), inside))
                    }
                }
            }
            Command::Tau { f, g, tnorm, leq } => {
                let tau = TriangleFn::sup_t(tnorm)?;
                let out = tau.apply(&load_ddf(&f)?, &load_ddf(&g)?)?;
                leq_response(&out, leq.as_deref())
            }
            Command::Conv { f, g, leq } => {
                let out = TriangleFn::Convolution.apply(&load_ddf(&f)?, &load_ddf(&g)?)?;
                leq_response(&out, leq.as_deref())
            }
            Command::Tnorm {
                name,
                x,
                y,
                conorm,
                check,
                samples,
            } => {
                if check {
                    return Ok(report_response(check_tnorm_axioms(name, samples, self.tol, self.seed)?));
                }
                let (Some(x), Some(y)) = (x, y) else {
                    return Err(CliError::Usage("--x and --y are required unless --check is given".into()));
                };
                let value = if conorm { name.conorm(x, y)? } else { name.eval(x, y)? };
                Ok(Response::ok(json!({
                    "tnorm": name.name(),
                    "operation": if conorm { "conorm" } else { "tnorm" },
                    "value": value,
                })))
            }
            Command::Validate { space } => {
                let s = parse_space(&read(&space)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", space.display())))?;
                Ok(report_response(s.validate()))
            }
            Command::FromMetric { metric, tnorm } => {
                let file: MetricFile = serde_json::from_str(&read(&metric)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", metric.display())))?;
                file.check()?;
                let s = PmSpace64::from_metric(file.points.clone(), &file.d, tnorm)?;
                Ok(Response::ok(serde_json::to_value(SpaceFile::from_space(&s)).expect("serialisable")))
            }
            Command::Neighborhood { space, point, t } => {
                let s = self.load_space(&space)?;
                let p = point_index(&s, &point)?;
                let ball = s.neighborhood(p, t)?;
                Ok(Response::ok(json!({"point": point, "t": t, "neighborhood": labels_of(&s, &ball)})))
            }
            Command::Diameter { space, subset } => {
                let s = self.load_space(&space)?;
                let a = subset_of(&s, subset.subset.as_deref())?;
                Ok(Response::ok(ddf_doc(&s.prob_diameter(&a)?)))
            }
            Command::Classify { space, subset } => {
                let s = self.load_space(&space)?;
                let a = subset_of(&s, subset.subset.as_deref())?;
                let (class, value) = s.classify_boundedness(&a)?;
                Ok(Response::ok(json!({"class": class_name(class), "s": value})))
            }
            Command::TotallyBounded {
                space,
                subset,
                eps,
                mode,
            } => {
                let s = self.load_space(&space)?;
                let a = subset_of(&s, subset.subset.as_deref())?;
                let mode = match mode {
                    Mode::Cover => TbMode::Cover,
                    Mode::Strong => TbMode::Strong,
                };
                let mut report = CheckReport::pass("totally_bounded");
                let mut failed_at = None;
                let mut parts = Vec::new();
                for e in self.radii(eps)? {
                    let r = s.totally_bounded(&a, e, mode)?;
                    if !r.passed() && failed_at.is_none() {
                        failed_at = Some(e);
                    }
                    parts.push(r.with_witness("eps", e));
                }
                if let Some(e) = failed_at {
                    report = CheckReport::fail("totally_bounded", "eps", e);
                }
                for p in parts {
                    report = report.with_part(p);
                }
                Ok(report_response(report))
            }
            Command::Separate { space, p, q } => {
                let s = self.load_space(&space)?;
                let (i, j) = (point_index(&s, &p)?, point_index(&s, &q)?);
                match s.separate_points(i, j)? {
                    Separation::Separated(t) => Ok(Response::ok(json!({"separated": true, "t": t}))),
                    Separation::NotSeparated(r) => {
                        let mut doc = report_doc(&r);
                        doc["separated"] = json!(false);
                        Ok(Response::check(doc, false))
                    }
                }
            }
            Command::Cauchy { space, seq, el } => {
                let s = self.load_space(&space)?;
                let q = seq_of(&s, &seq.seq)?;
                Ok(report_response(s.is_cauchy(&q, el.eps, el.lam)?))
            }
            Command::Converges { space, seq, to, el } => {
                let s = self.load_space(&space)?;
                let q = seq_of(&s, &seq.seq)?;
                let p = point_index(&s, &to)?;
                Ok(report_response(s.converges(&q, p, el.eps, el.lam)?))
            }
            Command::Check(c) => self.check(c),
            Command::Trace(t) => self.trace(t),
        }
    }

    fn check(&mut self, command: CheckCommand) -> Result<Response, CliError> {
        let report = match command {
            CheckCommand::Diameter { space, max_size } => {
                let s = self.load_space(&space)?;
                diameter_report(&s, max_size)?
            }
            CheckCommand::Tb { space, subset, eps } => {
                let s = self.load_space(&space)?;
                let a = subset_of(&s, subset.subset.as_deref())?;
                tb_bounded_report(&s, &a, &self.radii(eps)?)?
            }
            CheckCommand::Subsequence {
                space,
                seq,
                sub,
                to,
                el,
            } => {
                let s = self.load_space(&space)?;
                let q = seq_of(&s, &seq.seq)?;
                let positions = positions_of(&sub)?;
                let p0 = point_index(&s, &to)?;
                subsequence_check(&s, &q, &positions, p0, el.eps, el.lam)?
            }
            CheckCommand::Cantor { space, sets } => {
                let s = self.load_space(&space)?;
                let chain = sets.iter().map(|t| subset_of(&s, Some(t))).collect::<Result<Vec<_>, _>>()?;
                cantor_check(&s, &chain)?
            }
            CheckCommand::Baire { space, sets } => {
                let s = self.load_space(&space)?;
                let family = sets.iter().map(|t| subset_of(&s, Some(t))).collect::<Result<Vec<_>, _>>()?;
                baire_check(&s, &family)?
            }
            CheckCommand::HeineBorel {
                space,
                subset,
                seqs,
                covers,
                el,
            } => {
                let s = self.load_space(&space)?;
                let e = subset_of(&s, subset.subset.as_deref())?;
                let seqs = seqs.iter().map(|t| seq_of(&s, t)).collect::<Result<Vec<_>, _>>()?;
                let covers = covers
                    .iter()
                    .map(|c| c.split(';').map(|t| subset_of(&s, Some(t))).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let params = CompactnessParams {
                    eps: el.eps,
                    lam: el.lam,
                    eps_grid: self.grid.clone().unwrap_or_else(|| vec![el.eps]),
                };
                heine_borel_report(&s, &e, &seqs, &covers, &params)?
            }
        };
        Ok(report_response(report))
    }

    fn trace(&mut self, command: TraceCommand) -> Result<Response, CliError> {
        let mut out = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Domain(e.to_string());
        match command {
            TraceCommand::Convergence { space, seq, to } => {
                let s = self.load_space(&space)?;
                let q = seq_of(&s, &seq.seq)?;
                let p = point_index(&s, &to)?;
                out.write_record(["n", "point", "levy_to_limit"]).map_err(csv_err)?;
                for (n, &pn) in q.as_slice().iter().enumerate() {
                    let d = formats::round_sig(dist_to_h0(s.dist(pn, p)));
                    out.write_record([(n + 1).to_string(), s.labels()[pn].clone(), d.to_string()])
                        .map_err(csv_err)?;
                }
            }
            TraceCommand::Chain { space, sets } => {
                let s = self.load_space(&space)?;
                out.write_record(["n", "size", "diameter_to_h0"]).map_err(csv_err)?;
                for (n, t) in sets.iter().enumerate() {
                    let a = subset_of(&s, Some(t))?;
                    let d = formats::round_sig(dist_to_h0(&s.prob_diameter(&a)?));
                    out.write_record([(n + 1).to_string(), a.len().to_string(), d.to_string()])
                        .map_err(csv_err)?;
                }
            }
        }
        let bytes = out.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
        Ok(Response {
            body: Body::Csv(String::from_utf8(bytes).expect("csv output is utf-8")),
            passed: true,
        })
    }
}

fn point_index(s: &PmSpace64, label: &str) -> Result<usize, CliError> {
    s.label_index(label.trim())
        .ok_or_else(|| CliError::Domain(format!("unknown point {label:?}")))
}

fn labels_of(s: &PmSpace64, indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&i| s.labels()[i].clone()).collect()
}

fn subset_of(s: &PmSpace64, given: Option<&str>) -> Result<Subset, CliError> {
    match given {
        None => Ok(s.whole()),
        Some(text) => {
            let indices = text
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| point_index(s, t))
                .collect::<Result<Vec<_>, _>>()?;
            Subset::new(indices).map_err(|_| CliError::Domain(format!("empty subset {text:?}")))
        }
    }
}

fn seq_of(s: &PmSpace64, text: &str) -> Result<PointSeq, CliError> {
    let indices = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| point_index(s, t))
        .collect::<Result<Vec<_>, _>>()?;
    PointSeq::new(indices).map_err(|_| CliError::Domain(format!("empty sequence {text:?}")))
}

/// 1-based positions to 0-based.
fn positions_of(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(CliError::Domain(format!("invalid position {t:?} in --sub"))),
        })
        .collect()
}
