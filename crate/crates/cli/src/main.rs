use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use z3forms::action::{euler_lagrange, field_equation_shape, lagrangian_density};
use z3forms::{CoeffExpr, ComponentTable, Connection, Mode, PairingConfig, Scalar, Symbol};
use z3forms_cli::verify::run_verify;
use z3forms_cli::{evaluate, parse, Context, Value};

#[derive(Parser)]
#[command(name = "z3forms", version, about = "Z3-graded exterior calculus kernel")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Manifold dimension.
    #[arg(long, global = true, env = "Z3FORMS_DIM", default_value_t = 4)]
    dim: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical form of an expression.
    Normalize {
        #[arg(short)]
        e: String,
    },
    /// Apply the differential n times.
    D {
        #[arg(short)]
        e: String,
        #[arg(short, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
    /// Print the Z3 grade (and d-degree for forms).
    Grade {
        #[arg(short)]
        e: String,
    },
    /// Curvature 3-form of a connection: abelian, generic or pure:U.
    Curvature {
        #[arg(long, default_value = "generic")]
        gauge: String,
    },
    /// Quadratic Lagrangian and field equations of an abelian connection.
    Lagrangian {
        #[arg(long, default_value = "mu")]
        mu: String,
    },
    /// Run an identity suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.dim == 0 {
        eprintln!("error: dimension must be at least 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn value_of(src: &str, dim: usize) -> anyhow::Result<Value> {
    let e = parse(src)?;
    Ok(evaluate(&e, &Context::new(dim))?)
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) {
    let mut so = std::io::stdout().lock();
    let _ = so.write_all(text.as_bytes()).and_then(|_| so.flush());
}

fn emit(json: bool, text: String, value: serde_json::Value) {
    if json {
        out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")));
    } else {
        out(&format!("{text}\n"));
    }
}

/// `c1 x1 + c2 x2 + ...` with signs folded in.
fn linear(terms: &[(&Scalar, &str)]) -> String {
    let mut s = String::new();
    for (c, x) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let text = c.to_string();
        let simple = c.is_rational();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) if simple => (true, m.to_string()),
            _ if simple => (false, text),
            _ => (false, format!("({text})")),
        };
        if s.is_empty() {
            s.push_str(if neg { "-" } else { "" });
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            s.push_str(&mag);
            s.push(' ');
        }
        s.push_str(x);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let n = cli.dim;
    match &cli.cmd {
        Cmd::Normalize { e } => {
            let v = value_of(e, n)?;
            emit(cli.json, v.to_string(), json!({ "input": e, "kind": v.kind(), "value": v.to_string() }));
        }
        Cmd::D { e, n: k } => {
            let mut v = value_of(e, n)?;
            for _ in 0..*k {
                v = match v {
                    Value::Form(f) => Value::Form(f.differential()),
                    Value::Matrix(m) => Value::Matrix(m.eta_differential()),
                    Value::Scalar(_) => Value::Scalar(Scalar::zero()),
                    other => anyhow::bail!("d is not defined on a {}", other.kind()),
                };
            }
            emit(cli.json, v.to_string(), json!({ "input": e, "order": k, "value": v.to_string() }));
        }
        Cmd::Grade { e } => {
            let v = value_of(e, n)?;
            let (g, d) = v.grade();
            let text = match &d {
                Some(d) => format!("grade {g}, degree {d}"),
                None => format!("grade {g}"),
            };
            emit(cli.json, text, json!({ "input": e, "kind": v.kind(), "grade": g.to_string(), "degree": d }));
        }
        Cmd::Curvature { gauge } => curvature(cli, gauge)?,
        Cmd::Lagrangian { mu } => lagrangian(cli, mu)?,
        Cmd::Verify { suite, seed, cases } => {
            let report = run_verify(suite, *seed, *cases)?;
            eprintln!("elapsed {:.3}s", report.elapsed.as_secs_f64());
            if cli.json {
                out(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")));
            } else {
                out(&report.to_string());
            }
            return Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail });
        }
    }
    Ok(Outcome::Pass)
}

fn connection(n: usize, gauge: &str) -> anyhow::Result<Connection> {
    Ok(match gauge {
        "abelian" => Connection::abelian(n),
        "generic" => Connection::generic(n),
        g => match g.strip_prefix("pure:") {
            Some(u) if !u.is_empty() && u.chars().all(|c| c.is_ascii_alphanumeric()) => {
                Connection::pure_gauge(n, &Symbol::new(u))
            }
            _ => anyhow::bail!("unknown gauge `{g}`; expected abelian, generic or pure:<symbol>"),
        },
    })
}

fn curvature(cli: &Cli, gauge: &str) -> anyhow::Result<()> {
    let n = cli.dim;
    let conn = connection(n, gauge)?;
    let omega = conn.curvature();
    let t = conn.curvature_components();
    let mut f = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            if !t.t21(i, k).is_zero() {
                f.push((format!("F[{i},{k}]"), t.t21(i, k).to_string()));
            }
        }
    }
    let mut cubic = Vec::new();
    for [i, k, m] in ComponentTable::canonical_triples(n) {
        if !t.t3(i, k, m).is_zero() {
            cubic.push((format!("Omega[{i},{k},{m}]"), t.t3(i, k, m).to_string()));
        }
    }
    let mut text = format!("Omega = {omega}\n");
    for (k, v) in f.iter().chain(&cubic) {
        text.push_str(&format!("{k} = {v}\n"));
    }
    let obj =
        |xs: &[(String, String)]| xs.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>();
    emit(
        cli.json,
        text.trim_end().to_string(),
        json!({ "dim": n, "gauge": gauge, "curvature": omega.to_string(), "is_zero": omega.is_zero(),
                "field_strength": obj(&f), "cubic": obj(&cubic) }),
    );
    Ok(())
}

/// Reads `--mu` as a nonzero rational or a symbol name.
fn mu_value(src: &str) -> anyhow::Result<CoeffExpr> {
    let mode = Mode::Commutative;
    match value_of(src, 1)? {
        Value::Scalar(s) if s.is_zero() => Err(z3forms::Error::ZeroMu.into()),
        Value::Scalar(s) => Ok(CoeffExpr::constant(mode, s)),
        Value::Form(f) => match f.as_coeff() {
            Some(c) if c.len() == 1 && !c.is_constant() => Ok(c.with_mode(mode)),
            _ => anyhow::bail!("--mu must be a rational or a symbol"),
        },
        _ => anyhow::bail!("--mu must be a rational or a symbol"),
    }
}

fn lagrangian(cli: &Cli, mu_src: &str) -> anyhow::Result<()> {
    let n = cli.dim;
    let mu = mu_value(mu_src)?;
    let conn = Connection::abelian(n);
    let report = lagrangian_density(&conn)?;
    let e = euler_lagrange(&conn, &report.density)?;
    let shape = field_equation_shape(&conn, &e);
    let mu_jet = z3forms::Jet::symbol(PairingConfig::mu_symbol());
    let set_mu = |x: &CoeffExpr| x.substitute(|j| (*j == mu_jet).then(|| mu.clone()));
    let density = set_mu(&report.density)?;
    let eqs: Vec<String> = e.iter().map(|x| set_mu(x).map(|y| y.to_string())).collect::<Result<_, _>>()?;
    let opt = |s: &Option<Scalar>| s.as_ref().map_or("none".to_string(), |x| x.to_string());
    let ratio = report.with_ratio(&Scalar::from_int(-2));
    let (alpha, beta) = ratio.as_ref().map_or(("none".into(), "none".into()), |(a, b)| (a.to_string(), b.to_string()));
    let (ea, eg) =
        shape.as_ref().map_or(("none".into(), "none".into()), |s| (s.alpha.to_string(), s.gamma.to_string()));

    let mut text = String::new();
    text.push_str(&format!("L = {density}\n"));
    text.push_str("B = sum (d_i F_mk)^2, C = sum d_k F_mi d_i F_mk, M = sum F_ik^2\n");
    if let (Some(k), Some(m)) = (&report.derivative, &report.mass) {
        text.push_str(&format!("L = {}\n", linear(&[(k, "B"), (m, "mu M")])));
    } else {
        text.push_str("L is not of the form k B + m mu M\n");
    }
    text.push_str(&format!("C = B/2: {}\n", report.mixed_is_half));
    if let Some((a, b)) = &ratio {
        text.push_str(&format!("with ratio -2: {}\n", linear(&[(a, "B"), (b, "C")])));
    }
    text.push_str("reference: 4/3 B - 2/3 C + 4 mu M\n");
    match &shape {
        Some(s) => text.push_str(&format!("E_k = {}\n", linear(&[(&s.alpha, "T1"), (&s.gamma, "mu T3")]))),
        None => text.push_str("E_k does not fit a T1 + c mu T3\n"),
    }
    text.push_str("T1 = sum d_m d_i d_i F_mk, T3 = sum d_i F_ik\n");
    for (k, x) in eqs.iter().enumerate() {
        text.push_str(&format!("E_{} = {x}\n", k + 1));
    }
    emit(
        cli.json,
        text.trim_end().to_string(),
        json!({
            "dim": n, "mu": mu.to_string(), "density": density.to_string(),
            "derivative_coefficient": opt(&report.derivative), "mass_coefficient": opt(&report.mass),
            "mixed_is_half": report.mixed_is_half,
            "ratio_representative": { "B": alpha, "C": beta },
            "reference": { "B": "4/3", "C": "-2/3", "mass": "4" },
            "field_equation_shape": { "T1": ea, "mu_T3": eg },
            "euler_lagrange": eqs,
        }),
    );
    Ok(())
}
