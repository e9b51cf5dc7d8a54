//! Batch interface: exact coefficient tables, named verification suites and
//! series printing, with deterministic machine-readable output.

use crate::heat::{a2_series, lambda_omega_coeffs, lambda_series, wdot_omega_series};
use crate::models::ModelGeometry;
use crate::report::CheckStatus;
use crate::ring::{RingElement, Sym};
use crate::scalar::ExactScalar;
use crate::series::{series_inverse, series_mul, EvenSeries};
use crate::suites::{run_suite, SuiteParams};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "holokernel",
    version,
    about = "Exact verification of building-block combinatorics, model-geometry series and heat coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit exact coefficient tables for a model geometry
    Tables {
        /// model spec: sphere:<n> | hyperbolic:<n> | einstein:n=<int|n>,c=<q|c>
        /// | product:p=<int>,q=<int>,lambda=<q|lambda> | confflat:n=<int>,p=[q,...]
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// json or csv
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite (gjms, models, heat, sphere,
    /// hessians, jets, all)
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// randomization seed; defaults to HOLOKERNEL_SEED or 1
        #[arg(long)]
        seed: Option<u64>,
        /// jet dimension cap for randomized trials
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// family order cap for randomized trials
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// include wall-clock timing (breaks byte-stable output)
        #[arg(long)]
        timings: bool,
    },
    /// Print one exact series for a model geometry
    Series {
        /// one of: v, w, E, scal_gr, a0, a2, L, vdot_over_v
        #[arg(long)]
        expr: String,
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Serialize)]
struct TablesOut {
    model: String,
    order: usize,
    tables: std::collections::BTreeMap<String, Vec<String>>,
    meta: Meta,
}

#[derive(Serialize)]
struct Meta {
    version: String,
    seed: u64,
}

fn parse_rational(s: &str) -> Result<ExactScalar, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| format!("bad rational '{}'", s))?;
        let d: i64 = den.trim().parse().map_err(|_| format!("bad rational '{}'", s))?;
        if d == 0 {
            return Err(format!("zero denominator in '{}'", s));
        }
        Ok(ExactScalar::ratio(n, d))
    } else {
        let n: i64 = s.parse().map_err(|_| format!("bad integer '{}'", s))?;
        Ok(ExactScalar::from_int(n))
    }
}

fn parse_param(s: &str, sym: Sym) -> Result<RingElement, String> {
    if s == sym.name() {
        Ok(RingElement::sym(sym))
    } else {
        Ok(RingElement::from_scalar(parse_rational(s)?))
    }
}

fn kv<'a>(part: &'a str, key: &str) -> Result<&'a str, String> {
    part.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| format!("expected {}=<value>, got '{}'", key, part))
}

/// Parse the flat model-spec grammar.
pub fn parse_model(spec: &str) -> Result<ModelGeometry, String> {
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("model spec needs '<kind>:<params>', got '{}'", spec))?;
    match head {
        "sphere" => {
            let n: i64 = rest.parse().map_err(|_| format!("bad dimension '{}'", rest))?;
            Ok(ModelGeometry::sphere(n))
        }
        "hyperbolic" => {
            let n: i64 = rest.parse().map_err(|_| format!("bad dimension '{}'", rest))?;
            Ok(ModelGeometry::hyperbolic(n))
        }
        "einstein" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err("einstein needs n=<..>,c=<..>".into());
            }
            let n = parse_param(kv(parts[0], "n")?, Sym::N)?;
            let c = parse_param(kv(parts[1], "c")?, Sym::C)?;
            Ok(ModelGeometry::Einstein { n, c })
        }
        "product" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err("product needs p=<..>,q=<..>,lambda=<..>".into());
            }
            let p = parse_param(kv(parts[0], "p")?, Sym::P)?;
            let q = parse_param(kv(parts[1], "q")?, Sym::Q)?;
            let lam = parse_param(kv(parts[2], "lambda")?, Sym::Lam)?;
            Ok(ModelGeometry::Product { p, q, lam })
        }
        "confflat" => {
            let (npart, ppart) = rest
                .split_once(',')
                .ok_or_else(|| "confflat needs n=<int>,p=[..]".to_string())?;
            let n: usize = kv(npart, "n")?
                .parse()
                .map_err(|_| "bad dimension".to_string())?;
            let list = kv(ppart, "p")?;
            let inner = list
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| "eigenvalues need [..] brackets".to_string())?;
            let eigs: Result<Vec<ExactScalar>, String> =
                inner.split(',').map(parse_rational).collect();
            let eigs = eigs?;
            if eigs.len() != n {
                return Err(format!("expected {} eigenvalues, got {}", n, eigs.len()));
            }
            Ok(ModelGeometry::conf_flat(eigs))
        }
        other => Err(format!("unknown model kind '{}'", other)),
    }
}

fn series_strings(s: &EvenSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

fn default_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("HOLOKERNEL_SEED")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn cmd_tables(
    model: &str,
    order: usize,
    format: &str,
    out: &Option<PathBuf>,
    seed: u64,
) -> Result<(), String> {
    let m = parse_model(model)?;
    let (v, w) = m.volume_series(order);
    let omega = wdot_omega_series(&m, order);
    let lambda = lambda_series(&m, order);
    let a2 = a2_series(&m, order);
    if !a2.agree {
        return Err(format!("internal route disagreement: {:?}", a2.discrepancy));
    }
    let ladder = lambda_omega_coeffs(&m, order.clamp(1, 6));
    if !ladder.agree {
        return Err(format!("internal ladder disagreement: {:?}", ladder.discrepancy));
    }
    let mut tables = std::collections::BTreeMap::new();
    tables.insert("v".to_string(), series_strings(&v));
    tables.insert("w".to_string(), series_strings(&w));
    tables.insert("omega".to_string(), series_strings(&omega));
    tables.insert("lambda".to_string(), series_strings(&lambda));
    tables.insert("a0".to_string(), series_strings(&v));
    tables.insert(
        "a2".to_string(),
        series_strings(a2.first_series().unwrap()),
    );
    // numeric spheres also carry the intrinsic conformal-Laplacian table
    if let ModelGeometry::Einstein { n, c } = &m {
        if n.is_constant() && *c == RingElement::ratio(1, 4) {
            use num_traits::ToPrimitive;
            let nv = n
                .constant_term()
                .rational()
                .to_integer()
                .to_i64()
                .ok_or("dimension out of range")?;
            let t = crate::spheres::conformal_sphere_coeffs(nv, 3, crate::spheres::Space::Sphere);
            tables.insert(
                "a_sphere".to_string(),
                t.coeffs.iter().map(|c| c.to_string()).collect(),
            );
        }
    }
    match format {
        "json" => {
            let payload = TablesOut {
                model: model.to_string(),
                order,
                tables,
                meta: Meta {
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    seed,
                },
            };
            emit(
                serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?,
                out,
            )
        }
        "csv" => {
            let mut text = String::from("table,k,value\n");
            for (name, vals) in &tables {
                for (k, val) in vals.iter().enumerate() {
                    text.push_str(&format!("{},{},\"{}\"\n", name, k, val));
                }
            }
            emit(text, out)
        }
        other => Err(format!("unknown format '{}'", other)),
    }
}

fn cmd_series(expr: &str, model: &str, order: usize) -> Result<(), String> {
    let m = parse_model(model)?;
    let series = match expr {
        "v" => m.volume_series(order).0,
        "w" => m.volume_series(order).1,
        "E" => m.e_series(order),
        "scal_gr" => m.scal_gr_series(order),
        "a0" => m.volume_series(order).0,
        "a2" => {
            let r = a2_series(&m, order);
            if !r.agree {
                return Err(format!("route disagreement: {:?}", r.discrepancy));
            }
            r.first_series().unwrap().clone()
        }
        // odd quantities are printed through their even factor:
        // L = rho * S and v./v = r * S
        "L" => m.l_series(order)[0].series.clone(),
        "vdot_over_v" => {
            let (v, _) = m.volume_series(order + 1);
            let vp = v.d_rho();
            series_mul(&vp, &series_inverse(&v.truncate(order)))
                .scale(&RingElement::from_int(2))
        }
        other => return Err(format!("unknown expression '{}'", other)),
    };
    for (k, c) in series.coeffs().iter().enumerate() {
        println!("{}: {}", k, c);
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    params: SuiteParams,
    out: &Option<PathBuf>,
    timings: bool,
) -> Result<bool, String> {
    let started = std::time::Instant::now();
    let mut report = run_suite(suite, params)?;
    if timings {
        report.wall_time_ms = started.elapsed().as_millis() as u64;
    }
    let ok = report.all_pass();
    emit(report.to_json(), out)?;
    for c in &report.checks {
        if c.status == CheckStatus::Fail {
            eprintln!(
                "FAIL {}: {}",
                c.id,
                c.first_discrepancy.as_deref().unwrap_or("")
            );
        }
    }
    Ok(ok)
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Tables {
            model,
            order,
            format,
            out,
        } => cmd_tables(model, *order, format, out, default_seed(None)).map(|_| true),
        Command::Series { expr, model, order } => cmd_series(expr, model, *order).map(|_| true),
        Command::Verify {
            suite,
            seed,
            n,
            order,
            out,
            timings,
        } => {
            let params = SuiteParams {
                seed: default_seed(*seed),
                n_cap: *n,
                order_cap: *order,
            };
            cmd_verify(suite, params, out, *timings)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_grammar() {
        assert!(parse_model("sphere:6").is_ok());
        assert!(parse_model("hyperbolic:5").is_ok());
        assert!(parse_model("einstein:n=4,c=1/4").is_ok());
        assert!(parse_model("einstein:n=n,c=c").is_ok());
        assert!(parse_model("product:p=3,q=3,lambda=1/4").is_ok());
        assert!(parse_model("confflat:n=3,p=[2,0,0]").is_ok());
        assert!(parse_model("torus:3").is_err());
        assert!(parse_model("confflat:n=3,p=[2,0]").is_err());
        assert!(parse_model("einstein:n=4").is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/4").unwrap(), ExactScalar::ratio(1, 4));
        assert_eq!(parse_rational("-3").unwrap(), ExactScalar::from_int(-3));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
