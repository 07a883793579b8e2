use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quotcodes::codes::{enumerate_circuits, LinearCode};
use quotcodes::construct::{CodeSpec, Family};
use quotcodes::curve::{build_curve, Curve};
use quotcodes::planegeom::PlaneScheme;

use quotcodes_verify::config::{
    parse_divisor, resolve_point, Config, CurveInstance, OnePointInstance, SchemeInstance, TwoPointInstance,
};
use quotcodes_verify::engine::{census_json, distance, distance_json, distance_text, Census, Ctx};
use quotcodes_verify::report::{exit_status, render, Format};
use quotcodes_verify::{repro, suites, Result, VerifyError};

/// Codes on the curves y^q + y = x^m over GF(q^2): construction, dual
/// distances and claim verification.
#[derive(Parser, Debug)]
#[command(name = "quotcodes", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled instances; defaults to the one in the instance file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, env = "QUOTCODES_THREADS", global = true)]
    threads: Option<usize>,
    /// Include wall-clock times in reports (breaks byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
    /// Largest search size, in candidate column sets, before a step is skipped.
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Instance file replacing the shipped one.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Field, genus, point count and basis sizes of a curve.
    Params(CurveArgs),
    /// Rational points in canonical order.
    Points(CurveArgs),
    /// Generator matrix of a code.
    Build(CodeArgs),
    /// Dual minimum distance with a re-checked witness.
    DualDistance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        wmax: Option<usize>,
    },
    /// All circuits of one size (the dual distance unless --w is given).
    Circuits {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        w: Option<usize>,
        #[arg(long)]
        wmax: Option<usize>,
    },
    /// Runs a claim suite over the instance matrix or the given instance.
    Verify {
        suite: String,
        #[command(flatten)]
        inst: InstArgs,
    },
    /// Reproduces a worked example.
    Repro { example: String },
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Complete,
    Uncomplete,
    OnePoint,
    TwoPoint,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value_t = FamilyArg::Complete)]
    family: FamilyArg,
    #[arg(long)]
    d: Option<u32>,
    /// Divisor or scheme as "point:mult" entries separated by ';'.
    #[arg(long = "E", allow_hyphen_values = true)]
    e: Option<String>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long = "P")]
    p: Option<String>,
}

#[derive(Args, Debug)]
struct InstArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    d: Vec<u32>,
    #[arg(long = "E")]
    e: Option<String>,
    #[arg(long, value_delimiter = ',')]
    r: Vec<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long = "P")]
    p: Option<String>,
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| VerifyError::Usage(format!("--{flag} is required for the {family} family")))
}

impl CodeArgs {
    fn family(&self, curve: &Curve) -> Result<Family> {
        let e = match &self.e {
            Some(s) => parse_divisor(curve, &[s.clone()])?,
            None => Default::default(),
        };
        Ok(match self.family {
            FamilyArg::Complete => Family::Complete { d: need(self.d, "d", "complete")?, e },
            FamilyArg::Uncomplete => Family::Uncomplete { d: need(self.d, "d", "uncomplete")?, e: PlaneScheme::from_divisor(&e) },
            FamilyArg::OnePoint => Family::OnePoint { r: need(self.r, "r", "one-point")? },
            FamilyArg::TwoPoint => Family::TwoPoint {
                a: need(self.a, "a", "two-point")?,
                b: need(self.b, "b", "two-point")?,
                p: resolve_point(curve, &need(self.p.clone(), "P", "two-point")?)?,
            },
        })
    }

    fn build(&self) -> Result<(Curve, CodeSpec, LinearCode)> {
        let curve = build_curve(self.q, self.m)?;
        let spec = CodeSpec::new(&curve, self.family(&curve)?);
        let code = spec.build(&curve)?;
        Ok((curve, spec, code))
    }
}

fn code_json(spec: &CodeSpec, code: &LinearCode) -> Value {
    json!({
        "q": spec.q,
        "m": spec.m,
        "family": spec.family.tag(),
        "n": code.n(),
        "k": code.k(),
    })
}

/// JSON, a `key,value` table, or `key: value` lines.
fn render_value(v: &Value, format: Format) -> String {
    let flat = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            if let Value::Object(map) = v {
                for (k, x) in map {
                    w.write_record([k.as_str(), &flat(x)]).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Txt => match v {
            Value::Object(map) => map.iter().map(|(k, x)| format!("{k}: {}\n", flat(x))).collect(),
            other => format!("{}\n", flat(other)),
        },
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Replaces the instance list of `suite` with the one given on the command line.
fn override_instances(cfg: &mut Config, suite: &str, inst: &InstArgs) -> Result<()> {
    let (Some(q), Some(m)) = (inst.q, inst.m) else {
        if inst.q.is_some() || inst.m.is_some() {
            return Err(VerifyError::Usage("--q and --m go together".into()));
        }
        return Ok(());
    };
    let ds = if inst.d.is_empty() { (1..=m.saturating_sub(2).max(1)).collect() } else { inst.d.clone() };
    match suite {
        "curve" | "prop-2.2" | "lemma-4.1" | "lemma-4.4" | "theorem-4.5" => {
            cfg.curve = vec![CurveInstance { q, m, d: ds }];
        }
        "prop-3.2" | "theorem-5.3" => {
            cfg.scheme = vec![SchemeInstance { q, m, d: ds, e: inst.e.iter().cloned().collect() }];
        }
        "cor-6.5" => {
            if inst.r.is_empty() {
                return Err(VerifyError::Usage("cor-6.5 needs --r".into()));
            }
            cfg.one_point = vec![OnePointInstance { q, m, r: inst.r.clone() }];
        }
        "cor-6.6" => {
            cfg.two_point = vec![TwoPointInstance {
                q,
                m,
                a: need(inst.a, "a", "two-point")?,
                b: need(inst.b, "b", "two-point")?,
                p: need(inst.p.clone(), "P", "two-point")?,
            }];
        }
        "lemma-2.3" => cfg.settings.lemma23_curves = vec![(q, m)],
        "remark-6.4" => cfg.settings.remark64_curves = vec![(q, m)],
        "goppa" => cfg.settings.goppa_curves = vec![(q, m)],
        _ => {}
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| VerifyError::Usage(format!("--threads: {e}")))?;
    }
    let mut cfg = match &cli.config {
        Some(path) => Config::parse(&std::fs::read_to_string(path)?)?,
        None => Config::default_matrix(),
    };
    let mut ctx = Ctx { seed: cli.seed.unwrap_or(cfg.settings.seed), timings: cli.timings, ..Ctx::default() };
    if let Some(b) = cli.budget {
        ctx.budget = b;
    }
    match cli.cmd {
        Cmd::Params(a) => {
            let curve = build_curve(a.q, a.m)?;
            let g = curve.genus();
            let v = json!({
                "q": a.q,
                "m": a.m,
                "field": curve.field().to_string(),
                "c": curve.c(),
                "genus": g,
                "points": curve.points().len(),
                "expected_points": curve.expected_point_count(),
                "hermitian": curve.is_hermitian(),
                "dim_C(d)": (1..=a.m.saturating_sub(2).max(1))
                    .map(|d| (d.to_string(), quotcodes::rrspace::monomial_basis(&curve, (d * a.q) as i64).len()))
                    .collect::<std::collections::BTreeMap<_, _>>(),
            });
            emit(&render_value(&v, cli.format), &cli.out)?;
        }
        Cmd::Points(a) => {
            let curve = build_curve(a.q, a.m)?;
            let text = match cli.format {
                Format::Txt => curve.export_points(),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["index", "point"]).expect("in-memory write");
                    for (i, p) in curve.points().iter().enumerate() {
                        w.write_record([i.to_string(), p.to_string()]).expect("in-memory write");
                    }
                    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
                }
                Format::Json => render_value(
                    &Value::Array(curve.points().iter().map(|p| json!(p.to_string())).collect()),
                    Format::Json,
                ),
            };
            emit(&text, &cli.out)?;
        }
        Cmd::Build(args) => {
            let (_, spec, code) = args.build()?;
            match cli.out {
                Some(path) => {
                    std::fs::write(&path, code.export_text())?;
                    print!("{}", render_value(&code_json(&spec, &code), cli.format));
                }
                None => match cli.format {
                    Format::Txt => print!("{}", code.export_text()),
                    f => {
                        let mut v = code_json(&spec, &code);
                        v["points"] = json!(code.labels().iter().map(|p| p.to_string()).collect::<Vec<_>>());
                        v["matrix"] = json!(code.export_text());
                        print!("{}", render_value(&v, f));
                    }
                },
            }
        }
        Cmd::DualDistance { code: args, wmax } => {
            let (curve, spec, code) = args.build()?;
            let dd = distance(&curve, &code, wmax.unwrap_or(code.k() + 1), ctx.budget);
            let mut v = code_json(&spec, &code);
            v["dual_distance"] = json!(distance_text(&dd));
            v["witness"] = distance_json(&code, &dd);
            emit(&render_value(&v, cli.format), &cli.out)?;
        }
        Cmd::Circuits { code: args, w, wmax } => {
            let (curve, spec, code) = args.build()?;
            let w = match w {
                Some(w) => w,
                None => {
                    let dd = distance(&curve, &code, wmax.unwrap_or(code.k() + 1), ctx.budget);
                    dd.exact().ok_or_else(|| {
                        VerifyError::Usage(format!("dual distance not established ({}); pass --w", distance_text(&dd)))
                    })?
                }
            };
            let (circuits, non_minimal) = enumerate_circuits(&code, w, ctx.budget)?;
            let c = Census { total: circuits.len() as u64, circuits, complete: true, non_minimal };
            let mut v = code_json(&spec, &code);
            v["w"] = json!(w);
            v["codewords"] = json!(c.total * code.field().units() as u64);
            v["census"] = census_json(&code, &c);
            emit(&render_value(&v, cli.format), &cli.out)?;
        }
        Cmd::Verify { suite, inst } => {
            override_instances(&mut cfg, &suite, &inst)?;
            let reports = suites::run_suite(&suite, &cfg, &ctx)?;
            emit(&render(&reports, cli.format), &cli.out)?;
            return Ok(exit_status(&reports) as u8);
        }
        Cmd::Repro { example } => {
            let reports = repro::run_example(&example, &ctx)?;
            emit(&render(&reports, cli.format), &cli.out)?;
            return Ok(exit_status(&reports) as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
