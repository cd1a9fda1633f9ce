//! Command-line interface: classify a parameter triple, enumerate a
//! family, or verify certificates on realized matrices.
//!
//! Exit codes: 0 discrete (or all certificates pass), 1 not discrete
//! (or a certificate fails), 2 parse/usage error, 3 out of scope.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

use kleinian_rp::algebra::ParameterTriple;
use kleinian_rp::classifier::{
    enumerate_family_filtered, EnumerationSpec, Family, IndexChoice, Verdict,
};
use kleinian_rp::config::Config;
use kleinian_rp::presentations::presentation_of;
use kleinian_rp::report::{build_report, fmt_f64, JsonWriter};
use kleinian_rp::verify::{certify_geometry, certify_presentation, certify_sqrt, realize};

#[derive(Parser)]
#[command(name = "kleinian-rp", version, about = "Discreteness of two-generator Kleinian groups with real parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide discreteness of (beta, beta', gamma) and report the
    /// presentation and orbifold of each matched family.
    Classify(ClassifyArgs),
    /// Forward-evaluate a family over index ranges.
    Enumerate(EnumerateArgs),
    /// Classify, realize matrices and check numerical certificates.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// beta = tr^2 f - 4; a number or an expression such as
    /// "sin2:n=5,q=2", "cos2pi:m=7", "golden:+", "(5+1*sqrt5)/2".
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Expression form of beta (alias taking the same syntax).
    #[arg(long, conflicts_with = "beta")]
    beta_expr: Option<String>,
    /// beta' = tr^2 g - 4.
    #[arg(long, allow_hyphen_values = true)]
    beta_prime: Option<String>,
    #[arg(long, conflicts_with = "beta_prime")]
    beta_prime_expr: Option<String>,
    /// gamma = tr[f,g] - 2.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, conflicts_with = "gamma")]
    gamma_expr: Option<String>,
    /// Family-match tolerance (eps_match and the u-matching tolerance).
    #[arg(long)]
    tol: Option<f64>,
    /// Largest finite index searched.
    #[arg(long)]
    p_max: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Family identifier: D1..D3 or P1..P19.
    #[arg(long)]
    family: String,
    /// Index range, repeatable: "m=7..20", "n=5,7,11", or for u/v slots
    /// "u=4,6,inf,inf_bar:0.3". Unset slots use the default grid.
    #[arg(long)]
    range: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    p_max: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertifyWhat {
    Geometry,
    Presentation,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "all")]
    certify: CertifyWhat,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

/// Evaluate a parameter expression so table constants enter exactly:
/// plain floats, "sin2:n=N[,q=Q]" for -4sin^2(pi q/N), "cos2pi:m=M" for
/// 2cos(2pi/M), "golden:+/-" for (sqrt5 +- 1)/2, and rational-linear
/// forms in sqrt5 such as "sqrt5+2" or "(5+1*sqrt5)/2".
fn eval_param(src: &str) -> Result<f64, String> {
    let s = src.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Ok(x);
    }
    if let Some(rest) = s.strip_prefix("sin2:") {
        let mut n: Option<f64> = None;
        let mut q = 1.0f64;
        for part in rest.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("bad sin2 component {part}"))?;
            match k.trim() {
                "n" => n = Some(v.trim().parse().map_err(|_| format!("bad n in {src}"))?),
                "q" => q = v.trim().parse().map_err(|_| format!("bad q in {src}"))?,
                other => return Err(format!("unknown sin2 key {other}")),
            }
        }
        let n = n.ok_or_else(|| format!("sin2 needs n: {src}"))?;
        return Ok(-4.0 * (std::f64::consts::PI * q / n).sin().powi(2));
    }
    if let Some(rest) = s.strip_prefix("cos2pi:") {
        let (k, v) = rest
            .split_once('=')
            .ok_or_else(|| format!("bad cos2pi component {rest}"))?;
        if k.trim() != "m" {
            return Err(format!("cos2pi takes m=..., got {rest}"));
        }
        let m: f64 = v.trim().parse().map_err(|_| format!("bad m in {src}"))?;
        return Ok(2.0 * (2.0 * std::f64::consts::PI / m).cos());
    }
    if let Some(rest) = s.strip_prefix("golden:") {
        return match rest.trim() {
            "+" => Ok((5.0_f64.sqrt() + 1.0) / 2.0),
            "-" => Ok((5.0_f64.sqrt() - 1.0) / 2.0),
            other => Err(format!("golden takes + or -, got {other}")),
        };
    }
    eval_sqrt5_linear(s)
}

/// (a + b*sqrt5)/c with integer a, b, c; parentheses and the divisor are
/// optional, and "sqrt5" alone or with a coefficient is accepted.
fn eval_sqrt5_linear(src: &str) -> Result<f64, String> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = if let Some(inner) = compact.strip_prefix('(') {
        let (body, tail) = inner
            .split_once(')')
            .ok_or_else(|| format!("unbalanced parentheses in {src}"))?;
        let den = tail
            .strip_prefix('/')
            .ok_or_else(|| format!("expected /d after parentheses in {src}"))?;
        let den: f64 = den.parse().map_err(|_| format!("bad divisor in {src}"))?;
        (body.to_string(), den)
    } else {
        (compact, 1.0)
    };
    let mut total = 0.0f64;
    let mut term = String::new();
    let mut sign = 1.0f64;
    let flush = |term: &str, sign: f64, total: &mut f64| -> Result<(), String> {
        if term.is_empty() {
            return Err(format!("empty term in {src}"));
        }
        let value = if term == "sqrt5" {
            5.0_f64.sqrt()
        } else if let Some(coef) = term.strip_suffix("*sqrt5") {
            coef.parse::<f64>().map_err(|_| format!("bad term {term} in {src}"))? * 5.0_f64.sqrt()
        } else {
            term.parse::<f64>().map_err(|_| format!("bad term {term} in {src}"))?
        };
        *total += sign * value;
        Ok(())
    };
    for ch in num.chars() {
        match ch {
            '+' if !term.is_empty() => {
                flush(&term, sign, &mut total)?;
                term.clear();
                sign = 1.0;
            }
            '-' if !term.is_empty() => {
                flush(&term, sign, &mut total)?;
                term.clear();
                sign = -1.0;
            }
            '-' if term.is_empty() => sign = -sign,
            c => term.push(c),
        }
    }
    flush(&term, sign, &mut total)?;
    Ok(total / den)
}

fn load_config(params: &ParamArgs) -> Result<Config, String> {
    let mut cfg = Config::default();
    if let Ok(path) = std::env::var("KLEINIAN_RP_CONFIG") {
        let body = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {path}: {e}"))?;
        cfg.parse_overrides(&body)?;
    }
    if let Some(tol) = params.tol {
        cfg.eps_match = tol;
        cfg.u_tol = tol;
    }
    if let Some(p_max) = params.p_max {
        cfg.p_max = p_max;
    }
    Ok(cfg)
}

fn parse_triple(params: &ParamArgs) -> Result<ParameterTriple, String> {
    let pick = |a: &Option<String>, b: &Option<String>, name: &str| {
        a.clone()
            .or_else(|| b.clone())
            .ok_or_else(|| format!("missing --{name}"))
    };
    let beta_src = pick(&params.beta, &params.beta_expr, "beta")?;
    let bp_src = pick(&params.beta_prime, &params.beta_prime_expr, "beta-prime")?;
    let gamma_src = pick(&params.gamma, &params.gamma_expr, "gamma")?;
    let mut t = ParameterTriple::new(
        eval_param(&beta_src)?,
        eval_param(&bp_src)?,
        eval_param(&gamma_src)?,
    );
    let tag = |src: &str| (src.parse::<f64>().is_err()).then(|| src.to_string());
    t.provenance.beta = tag(&beta_src);
    t.provenance.beta_prime = tag(&bp_src);
    t.provenance.gamma = tag(&gamma_src);
    if !t.is_finite() {
        return Err("parameters must be finite".into());
    }
    Ok(t)
}

fn verdict_exit(verdict: &Verdict) -> ExitCode {
    match verdict {
        Verdict::Discrete { .. } => ExitCode::from(0),
        Verdict::NotDiscrete { .. } => ExitCode::from(1),
        Verdict::OutOfScope { .. } => ExitCode::from(3),
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<ExitCode, String> {
    let cfg = load_config(&args.params)?;
    let triple = parse_triple(&args.params)?;
    let report = build_report(&triple, &cfg);
    match args.format {
        ReportFormat::Json => print!("{}", report.to_json(&cfg)),
        ReportFormat::Text => print!("{}", report.to_text()),
    }
    Ok(verdict_exit(&report.verdict))
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let cfg = load_config(&args.params)?;
    let triple = parse_triple(&args.params)?;
    let mut report = build_report(&triple, &cfg);
    let matches = match &report.verdict {
        Verdict::Discrete { matches } => matches.clone(),
        other => {
            match args.format {
                ReportFormat::Json => print!("{}", report.to_json(&cfg)),
                ReportFormat::Text => print!("{}", report.to_text()),
            }
            return Ok(verdict_exit(other));
        }
    };
    let normalized = report.normalized.clone();
    let pair = realize(&normalized, &cfg).map_err(|e| e.to_string())?;
    let mut all_pass = true;
    for m in &matches {
        let is_intersecting = normalized.gamma > 0.0;
        if args.certify != CertifyWhat::Geometry {
            let pres = presentation_of(m, &cfg).map_err(|e| e.to_string())?;
            let words =
                kleinian_rp::presentations::generator_words(m, &cfg).map_err(|e| e.to_string())?;
            let cert = certify_presentation(&pair, &pres, &words, &cfg);
            all_pass &= cert.pass;
            report
                .certificates
                .push((format!("{}:presentation", m.family), cert));
            if !is_intersecting {
                let cert = certify_sqrt(&pair, m, &cfg).map_err(|e| e.to_string())?;
                all_pass &= cert.pass;
                report
                    .certificates
                    .push((format!("{}:commutator_root", m.family), cert));
            }
        }
        if args.certify != CertifyWhat::Presentation && is_intersecting {
            let cert = certify_geometry(&pair, m, &cfg);
            all_pass &= cert.pass;
            report
                .certificates
                .push((format!("{}:geometry", m.family), cert));
        }
    }
    match args.format {
        ReportFormat::Json => print!("{}", report.to_json(&cfg)),
        ReportFormat::Text => print!("{}", report.to_text()),
    }
    Ok(ExitCode::from(if all_pass { 0 } else { 1 }))
}

/// Parse one --range argument: "name=a..b" or "name=x,y,...". Values in
/// u/v slots may be integers, "inf" or "inf_bar:<d>".
fn apply_range(spec: &mut EnumerationSpec, arg: &str) -> Result<(), String> {
    let (name, body) = arg
        .split_once('=')
        .ok_or_else(|| format!("expected name=range in {arg}"))?;
    let items: Vec<String> = if let Some((a, b)) = body.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {arg}"))?;
        let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in {arg}"))?;
        if b < a {
            return Err(format!("empty range {arg}"));
        }
        (a..=b).map(|x| x.to_string()).collect()
    } else {
        body.split(',').map(|s| s.trim().to_string()).collect()
    };
    match name.trim() {
        "n" => {
            let mut out = Vec::new();
            for item in &items {
                out.push(item.parse().map_err(|_| format!("bad n value {item}"))?);
            }
            spec.n = Some(out);
        }
        "m" => {
            let mut out = Vec::new();
            for item in &items {
                out.push(item.parse().map_err(|_| format!("bad m value {item}"))?);
            }
            spec.m = Some(out);
        }
        "beta_prime" => {
            let mut out = Vec::new();
            for item in &items {
                out.push(item.parse().map_err(|_| format!("bad beta_prime value {item}"))?);
            }
            spec.beta_prime = Some(out);
        }
        // The constructions label the D-family angle index p and the
        // second slot of the even rows q; accept both spellings.
        slot @ ("u" | "v" | "p" | "q") => {
            let mut out = Vec::new();
            for item in &items {
                let choice = if item == "inf" {
                    IndexChoice::Inf
                } else if let Some(d) = item.strip_prefix("inf_bar:") {
                    IndexChoice::InfBar(
                        d.parse().map_err(|_| format!("bad inf_bar distance {item}"))?,
                    )
                } else {
                    IndexChoice::Finite(
                        item.parse().map_err(|_| format!("bad index value {item}"))?,
                    )
                };
                out.push(choice);
            }
            if slot == "u" || slot == "p" {
                spec.u = Some(out);
            } else {
                spec.v = Some(out);
            }
        }
        other => return Err(format!("unknown range name {other}")),
    }
    Ok(())
}

/// The m of a match for tabular output, including the semi-fixed rows.
fn fmt_opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<ExitCode, String> {
    let mut cfg = Config::default();
    if let Ok(path) = std::env::var("KLEINIAN_RP_CONFIG") {
        let body = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {path}: {e}"))?;
        cfg.parse_overrides(&body)?;
    }
    if let Some(tol) = args.tol {
        cfg.eps_match = tol;
        cfg.u_tol = tol;
    }
    if let Some(p_max) = args.p_max {
        cfg.p_max = p_max;
    }
    let family: Family = args.family.parse()?;
    let mut spec = EnumerationSpec::default();
    for r in &args.range {
        apply_range(&mut spec, r)?;
    }
    let rows = enumerate_family_filtered(family, &spec, &cfg).map_err(|e| e.to_string())?;
    match args.format {
        TableFormat::Csv => {
            println!("family,n,t_u,t_v,m,beta,beta_prime,gamma,presentation");
            for (triple, m) in &rows {
                let pres = presentation_of(m, &cfg).map_err(|e| e.to_string())?;
                println!(
                    "{},{},{},{},{},{},{},{},{}",
                    m.family,
                    m.n,
                    fmt_opt(m.t_u()),
                    fmt_opt(m.t_v()),
                    fmt_opt(m.m),
                    fmt_f64(triple.beta),
                    fmt_f64(triple.beta_prime),
                    fmt_f64(triple.gamma),
                    pres.name_text()
                );
            }
        }
        TableFormat::Json => {
            let mut w = JsonWriter::new();
            w.raw("[");
            for (i, (triple, m)) in rows.iter().enumerate() {
                if i > 0 {
                    w.raw(",");
                }
                let pres = presentation_of(m, &cfg).map_err(|e| e.to_string())?;
                w.raw("{\"family\":");
                w.string(&m.family.to_string());
                w.raw(",\"n\":");
                w.raw(&m.n.to_string());
                w.raw(",\"t_u\":");
                w.string(&fmt_opt(m.t_u()));
                w.raw(",\"t_v\":");
                w.string(&fmt_opt(m.t_v()));
                w.raw(",\"m\":");
                w.string(&fmt_opt(m.m));
                w.raw(",\"beta\":");
                w.number(triple.beta);
                w.raw(",\"beta_prime\":");
                w.number(triple.beta_prime);
                w.raw(",\"gamma\":");
                w.number(triple.gamma);
                w.raw(",\"presentation\":");
                w.string(&pres.name_text());
                w.raw("}");
            }
            w.raw("]");
            println!("{}", w.finish());
        }
    }
    Ok(ExitCode::from(0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
