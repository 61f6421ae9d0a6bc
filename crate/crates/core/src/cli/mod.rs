//! Command line front end.

mod problem;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

pub use problem::{ProblemFile, ProblemKind};

use crate::error::Error;
use crate::fitting::{fitting_chain, plane_map_invariants, triple_point_invariants, InvariantReport};
use crate::geometry::{source_double_points, DoublePointOptions};
use crate::presentation::{hmp_matrix, HmpOptions, PresentationMatrix};
use crate::ring::Polynomial;
use crate::stdbasis::{Ideal, Vdim};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_FINITE: i32 = 3;
pub const EXIT_DEGREE_CAP: i32 = 4;
pub const EXIT_TIME_LIMIT: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "pushforward", version, about = "Presentation matrices of pushforward modules of finite map germs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a presentation matrix of f_*O_X.
    Presmat(Common),
    /// Print Fitting ideals F_k and their quotient dimensions.
    Fitting {
        #[command(flatten)]
        common: Common,
        /// Comma separated indices; all of 0..=h when omitted.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        k: Vec<i64>,
    },
    /// Print numerical invariants of an equidimensional germ.
    Invariants(Common),
    /// Print the lifted double point ideal and the source double points.
    Doublepoints {
        #[command(flatten)]
        common: Common,
        /// Source variable used as Y for the projection.
        #[arg(long)]
        y_var: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Problem file.
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Seconds before giving up.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Presmat(c) | Command::Invariants(c) => c,
            Command::Fitting { common, .. } | Command::Doublepoints { common, .. } => common,
        }
    }
}

/// A failed command: message and process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::NotFinite => EXIT_NOT_FINITE,
            Error::DegreeCapExceeded { .. } => EXIT_DEGREE_CAP,
            _ => EXIT_OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Run a command, honouring `--time-limit`; returns the text to print.
pub fn run(cli: Cli) -> Result<String, Failure> {
    let Some(limit) = cli.command.common().time_limit else { return execute(&cli.command) };
    if !limit.is_finite() || limit <= 0.0 {
        return Err(Failure { code: EXIT_OTHER, message: format!("invalid time limit {limit}") });
    }
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(execute(&cli.command));
    });
    match rx.recv_timeout(Duration::from_secs_f64(limit)) {
        Ok(result) => result,
        Err(_) => Err(Failure { code: EXIT_TIME_LIMIT, message: format!("time limit of {limit} s exceeded") }),
    }
}

fn load(common: &Common) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| Failure { code: EXIT_OTHER, message: format!("{}: {e}", common.file.display()) })?;
    Ok(ProblemFile::parse(&text)?)
}

fn hmp_options(common: &Common, file: &ProblemFile) -> HmpOptions {
    let defaults = HmpOptions::default();
    HmpOptions {
        max_degree: common.max_degree.or(file.max_degree).unwrap_or(defaults.max_degree),
        threads: common.threads,
        pure_y_powers: file.pure_y_powers,
    }
}

fn execute(command: &Command) -> Result<String, Failure> {
    let common = command.common();
    let file = load(common)?;
    let options = hmp_options(common, &file);
    let out = match command {
        Command::Presmat(_) => {
            let (problem, _) = file.map_problem()?;
            let m = hmp_matrix(&problem, &options)?;
            if common.json {
                json_text(json!({ "generators": strings(m.generators().generators()), "matrix": matrix_json(&m) }))
            } else {
                format!("generators: {}\n{m}", strings(m.generators().generators()).join(", "))
            }
        }
        Command::Fitting { k, .. } => {
            let (problem, _) = file.map_problem()?;
            let m = hmp_matrix(&problem, &options)?;
            let chain = fitting_chain(&m)?;
            let indices: Vec<i64> = if k.is_empty() { (0..=m.size() as i64).collect() } else { k.clone() };
            let ideals: Vec<(i64, Ideal)> = indices
                .iter()
                .map(|&k| {
                    let i = match chain.get(k) {
                        Some(i) => i.clone(),
                        None if k < 0 => Ideal::zero(problem.target()),
                        None => Ideal::unit(problem.target()),
                    };
                    (k, i)
                })
                .collect();
            fitting_output(&ideals, common.json)
        }
        Command::Invariants(_) => {
            if file.kind != ProblemKind::Singular {
                return Err(Error::Unsupported("invariants need `kind = singular`".into()).into());
            }
            let (problem, sigma) = file.map_problem()?;
            let sigma = sigma.expect("singular problems carry det Jf");
            let m = hmp_matrix(&problem, &options)?;
            match file.source.nvars() {
                2 => invariants_output(&plane_map_invariants(&m, &sigma)?, None, common.json),
                3 => invariants_output(&triple_point_invariants(&m, None)?, Some("I_A11 = F_1 (default)"), common.json),
                n => return Err(Error::Unsupported(format!("invariants of germs in {n} variables")).into()),
            }
        }
        Command::Doublepoints { y_var, .. } => {
            let dp = DoublePointOptions {
                y_var: file.y_var_index(y_var.as_deref())?,
                aliases: file.aliases.clone(),
                hmp: options,
            };
            let d = source_double_points(&file.source, &file.map, &dp)?;
            let f1 = d.fitting(1)?;
            let y_name = file.source.variables()[d.y_var].clone();
            let lifted = strings(d.lifted.standard_basis());
            if common.json {
                let mut obj = Map::new();
                obj.insert("lifted".into(), json!(lifted));
                obj.insert("y_var".into(), json!(y_name));
                if let Some(m) = &d.matrix {
                    obj.insert("generators".into(), json!(strings(m.generators().generators())));
                    obj.insert("matrix".into(), matrix_json(m));
                }
                obj.insert("fitting".into(), json!({ "0": ideal_strings(&d.ideal), "1": ideal_strings(&f1) }));
                obj.insert("vdim".into(), json!({ "0": d.ideal.vdim().to_string(), "1": f1.vdim().to_string() }));
                json_text(Value::Object(obj))
            } else {
                let mut s = String::new();
                writeln!(s, "I2 = <{}>", lifted.join(", ")).unwrap();
                writeln!(s, "Y = {y_name}").unwrap();
                match &d.matrix {
                    Some(m) => {
                        writeln!(s, "generators: {}", strings(m.generators().generators()).join(", ")).unwrap();
                        write!(s, "{m}").unwrap();
                    }
                    None => writeln!(s, "no double points").unwrap(),
                }
                writeln!(s, "D(f) = F_0 = {}", ideal_text(&d.ideal)).unwrap();
                writeln!(s, "F_1 = {}", ideal_text(&f1)).unwrap();
                writeln!(s, "vdim F_1 = {}", f1.vdim()).unwrap();
                s
            }
        }
    };
    Ok(out)
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

/// Standard basis of `i`; when `O/i` is finite, tails above `D + 1` are cut,
/// where `D` is the top degree of the quotient basis (`m^(D+1) ⊆ i`).
fn ideal_strings(i: &Ideal) -> Vec<String> {
    let basis = i.standard_basis();
    let kbase = i.kbase();
    if !kbase.finite || i.context().ordering().is_global() {
        return strings(basis);
    }
    let top = kbase.monomials.iter().map(|m| m.degree()).max().unwrap_or(0);
    basis.iter().map(|g| g.truncate(top + 1).monic().to_string()).collect()
}

fn ideal_text(i: &Ideal) -> String {
    format!("<{}>", ideal_strings(i).join(", "))
}

fn matrix_json(m: &PresentationMatrix) -> Value {
    Value::Array(m.entries().iter().map(|row| json!(strings(row))).collect())
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn fitting_output(ideals: &[(i64, Ideal)], as_json: bool) -> String {
    if as_json {
        let mut fitting = Map::new();
        let mut vdim = Map::new();
        for (k, i) in ideals {
            fitting.insert(k.to_string(), json!(ideal_strings(i)));
            vdim.insert(k.to_string(), json!(i.vdim().to_string()));
        }
        return json_text(json!({ "fitting": fitting, "vdim": vdim }));
    }
    let mut s = String::new();
    for (k, i) in ideals {
        writeln!(s, "F_{k} = {}", ideal_text(i)).unwrap();
        writeln!(s, "vdim F_{k} = {}", i.vdim()).unwrap();
    }
    s
}

fn invariants_output(report: &InvariantReport, note: Option<&str>, as_json: bool) -> String {
    if as_json {
        let text = |v: Option<Vdim>| v.map(|v| json!(v.to_string()));
        let mut vdim = Map::new();
        let mut milnor = Map::new();
        for (key, v) in [("F1", report.vdim_f1), ("F2", report.vdim_f2), ("triple_count", report.triple_count)] {
            if let Some(v) = text(v) {
                vdim.insert(key.into(), v);
            }
        }
        for (key, v) in [("sigma", report.mu_sigma), ("delta", report.mu_delta)] {
            if let Some(v) = text(v) {
                milnor.insert(key.into(), v);
            }
        }
        let mut obj = Map::new();
        obj.insert("vdim".into(), Value::Object(vdim));
        if !milnor.is_empty() {
            obj.insert("milnor".into(), Value::Object(milnor));
        }
        if let Some(note) = note {
            obj.insert("note".into(), json!(note));
        }
        return json_text(Value::Object(obj));
    }
    let mut s = report.to_string();
    if let Some(note) = note {
        writeln!(s, "# {note}").unwrap();
    }
    s
}
