use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use heightlab::bounds::{bogomolov_bounds, default_twist_set, k_split_degree, BoundInput, Variant};
use heightlab::curves::{reduction_type, rational_torsion, CurvePoint, WeierstrassCurve};
use heightlab::heights::{canonical_height, height_difference_bound};
use heightlab::io::{envelope, read_corpus};
use heightlab::lattes::{lattes_from_curve, lattes_height, small_height_sequence};
use heightlab::numeric::rational::rat_to_string;
use heightlab::numeric::real::RealApprox;
use heightlab::ramify::{construct_unramified_point, poly_string, SEARCH_CAP};
use heightlab::verify::{run_suite, Suite, VerifyConfig};
use heightlab::{Error, Result};

#[derive(Parser)]
#[command(name = "heightlab", version, about = "Canonical heights, Lattès maps and effective lower bounds")]
struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "HEIGHTLAB_PRECISION", default_value_t = 128)]
    precision_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CurveArg {
    /// Short model "A,B" for y² = x³ + Ax + B.
    #[arg(long, conflicts_with = "curve_long")]
    curve: Option<String>,
    /// Long model "a1,a2,a3,a4,a6".
    #[arg(long)]
    curve_long: Option<String>,
}

impl CurveArg {
    fn parse(&self) -> Result<WeierstrassCurve> {
        match (&self.curve, &self.curve_long) {
            (Some(s), None) => {
                if s.split(',').count() != 2 {
                    return Err(Error::Parse("--curve takes \"A,B\"".into()));
                }
                WeierstrassCurve::parse(s)
            }
            (None, Some(s)) => {
                if s.split(',').count() != 5 {
                    return Err(Error::Parse("--curve-long takes \"a1,a2,a3,a4,a6\"".into()));
                }
                WeierstrassCurve::parse(s)
            }
            _ => Err(Error::Input("give exactly one of --curve, --curve-long".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and, with --prime, local reduction data.
    CurveInfo {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Canonical height of a rational point.
    Height {
        #[command(flatten)]
        curve: CurveArg,
        /// "x,y" with rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also compute the Lattès height of x(P) and the ratio to ĥ_E(P).
        #[arg(long)]
        lattes: bool,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Evaluate a lower bound with its derivation trace.
    Bound {
        /// 41, 42, 51, 52, 53, 25 or 26.
        #[arg(long)]
        variant: String,
        /// Read h(j), ord(j⁻¹) and ν from a curve at --p.
        #[command(flatten)]
        curve: CurveArg,
        /// Weil height of j, instead of a curve.
        #[arg(long)]
        hj: Option<f64>,
        /// ord_p(1/j).
        #[arg(long, default_value_t = 1)]
        j_ord: u64,
        /// Degree of the base field.
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Ramification index bound.
        #[arg(long, default_value_t = 1)]
        e: u64,
        /// The prime.
        #[arg(long)]
        p: u64,
        /// Residue degree f (variant 26).
        #[arg(long)]
        f_res: Option<u64>,
        /// ν (variant 26).
        #[arg(long)]
        nu: Option<u64>,
        /// Degree k for variant 51; computed from the curve when omitted.
        #[arg(long)]
        k_split: Option<u64>,
    },
    /// Run the acceptance suite; exits nonzero on any failure.
    Verify {
        /// all, numeric, heights, lattes, ramify or bounds.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Height cap for the point search on split curves.
        #[arg(long, default_value_t = 8.0)]
        hmax: f64,
        /// Largest multiple-set size s in the pairing-sum check.
        #[arg(long, default_value_t = 12)]
        smax: usize,
        /// Top level of the preimage tower.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// JSON-lines corpus replacing the bundled one.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Preimage tower of small height over the additive twin at p.
    Counterexample {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Print every level polynomial in full (they reach degree 4^levels).
        #[arg(long)]
        full: bool,
    },
    /// Non-torsion point whose coordinates generate fields unramified at p.
    ConstructPoint {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        prime: u64,
    },
}

fn real(r: &RealApprox) -> Value {
    json!({ "value": r.value, "error": r.error })
}

fn curve_info(e: &WeierstrassCurve, prime: Option<u64>) -> Result<Value> {
    let inv = e.invariants();
    let mut data = json!({
        "a": e.to_record_strings(),
        "b2": rat_to_string(&e.b2), "b4": rat_to_string(&e.b4),
        "b6": rat_to_string(&e.b6), "b8": rat_to_string(&e.b8),
        "c4": rat_to_string(&inv.c4), "c6": rat_to_string(&inv.c6),
        "disc": rat_to_string(&inv.disc),
        "j": rat_to_string(&inv.j),
        "h_j": real(&inv.h_j),
        "torsion_order": rational_torsion(e).len(),
        "height_difference_bound": height_difference_bound(e)?,
    });
    if let Some(p) = prime {
        let red = reduction_type(e, p)?;
        data["reduction"] = json!({
            "p": p,
            "type": red.kind.name(),
            "potential": format!("{:?}", red.potential),
            "kodaira": red.kodaira,
            "ord_min_disc": red.ord_min_disc,
            "component_index_N": red.component_index_n,
            "tamagawa": red.tamagawa,
            "conductor_exponent": red.conductor_exponent,
        });
    }
    Ok(data)
}

fn height_cmd(e: &WeierstrassCurve, point: &str, lattes: bool, eps: f64) -> Result<Value> {
    let p = CurvePoint::parse(point)?;
    if !e.contains(&p) {
        return Err(Error::Input(format!("{point} is not on the curve")));
    }
    let h = canonical_height(e, &p, eps)?;
    let mut data = json!({ "point": point, "canonical_height": real(&h) });
    if lattes {
        let (short, iso) = e.integral_short_model();
        let f = lattes_from_curve(&short)?;
        let x = iso.map_x(&p.as_rational().expect("parsed points are rational").0);
        let hf = lattes_height(&f, Some(&x), eps)?;
        data["lattes_height"] = real(&hf);
        data["lattes_model"] = json!(short.to_record_strings());
        data["ratio"] = if h.value > 0.0 { json!(hf.value / h.value) } else { Value::Null };
    }
    Ok(data)
}

#[allow(clippy::too_many_arguments)]
fn bound_cmd(
    variant: &str,
    curve: &CurveArg,
    hj: Option<f64>,
    j_ord: u64,
    d: u64,
    e: u64,
    p: u64,
    f_res: Option<u64>,
    nu: Option<u64>,
    k_split: Option<u64>,
) -> Result<Value> {
    let variant = Variant::parse(variant)?;
    let has_curve = curve.curve.is_some() || curve.curve_long.is_some();
    let mut input = match (has_curve, hj) {
        (true, None) => BoundInput::from_curve(&curve.parse()?, p)?,
        (false, Some(h)) => {
            let mut i = BoundInput::new(h, j_ord, d, e, p);
            i.f_res = f_res;
            i.nu = nu;
            i
        }
        _ => return Err(Error::Input("give either a curve or --hj".into())),
    };
    if has_curve {
        input.d = d;
        input.e = e;
        if let Some(f) = f_res {
            input.f_res = Some(f);
        }
    }
    input.k_split = k_split;
    let mut k_info = Value::Null;
    if variant == Variant::Inflated51 && input.k_split.is_none() {
        if !has_curve {
            return Err(Error::Input("variant 51 needs --k-split or a curve".into()));
        }
        let k = k_split_degree(&curve.parse()?, p, &default_twist_set(p))?;
        input.k_split = Some(k.k);
        k_info = serde_json::to_value(&k).expect("serializable");
    }
    let report = bogomolov_bounds(&input, variant)?;
    let mut v = serde_json::to_value(&report).expect("serializable");
    if !k_info.is_null() {
        v["k_split_search"] = k_info;
    }
    Ok(v)
}

/// Level polynomials above this degree are summarised unless `--full` is given.
const PRINT_DEGREE: usize = 64;

fn counterexample_cmd(p: u64, levels: usize, full: bool) -> Result<Value> {
    let s = small_height_sequence(p, levels)?;
    let rows: Vec<Value> = s
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "degree": l.degree,
                "minpoly": if full || l.degree <= PRINT_DEGREE { json!(poly_string(&l.poly)) } else {
                    json!(format!("degree {} polynomial, naive height {:.3} (use --full)", l.degree, l.naive_height))
                },
                "hf_ratio": rat_to_string(&l.ratio),
                "hf": real(&l.hf),
                "naive_height": l.naive_height,
                "certificate": format!("{:?}", l.cert.verdict),
                "degenerate": l.degenerate,
            })
        })
        .collect();
    Ok(json!({
        "p": p,
        "bad_curve": s.bad_curve.to_record_strings(),
        "alpha0": rat_to_string(&s.alpha0),
        "hf_alpha0": real(&s.hf_alpha0),
        "twice_seed_height": real(&s.twice_seed_height),
        "ratios_exact": s.ratios_exact(),
        "truncated": s.truncated,
        "levels": rows,
    }))
}

/// Flatten a JSON value into `path → scalar` pairs.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let joined: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), joined.join(" ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A table when the payload has an array of records (`levels`, `results`, `rows`),
/// key/value pairs otherwise.
fn to_csv(data: &Value) -> String {
    let table = ["levels", "results", "rows"].iter().find_map(|k| data.get(*k).and_then(Value::as_array));
    let mut s = String::new();
    match table {
        Some(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|r| {
                    let mut out = Vec::new();
                    flatten("", r, &mut out);
                    out
                })
                .collect();
            let header: Vec<String> = flat[0].iter().map(|(k, _)| k.clone()).collect();
            s += &header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",");
            s.push('\n');
            for row in flat {
                let m: Map<String, Value> = row.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
                let line: Vec<String> =
                    header.iter().map(|h| csv_field(m.get(h).and_then(Value::as_str).unwrap_or(""))).collect();
                s += &line.join(",");
                s.push('\n');
            }
        }
        _ => {
            let mut out = Vec::new();
            flatten("", data, &mut out);
            s += "key,value\n";
            for (k, v) in out {
                s += &format!("{},{}\n", csv_field(&k), csv_field(&v));
            }
        }
    }
    s
}

fn emit(cli: &Cli, kind: &str, data: Value) -> Result<()> {
    let text = match cli.output {
        Format::Json => {
            let mut env = envelope(kind, data);
            env["config"] = json!({ "precision_bits": cli.precision_bits, "seed": cli.seed });
            serde_json::to_string_pretty(&env).expect("serializable") + "\n"
        }
        Format::Csv => to_csv(&data),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::Input(format!("stdout: {e}")))
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if cli.precision_bits < 64 {
        return Err(Error::Input("--precision-bits must be at least 64".into()));
    }
    match &cli.command {
        Command::CurveInfo { curve, prime } => emit(cli, "curve-info", curve_info(&curve.parse()?, *prime)?)?,
        Command::Height { curve, point, lattes, eps } => {
            emit(cli, "height", height_cmd(&curve.parse()?, point, *lattes, *eps)?)?
        }
        Command::Bound { variant, curve, hj, j_ord, d, e, p, f_res, nu, k_split } => emit(
            cli,
            "bound",
            bound_cmd(variant, curve, *hj, *j_ord, *d, *e, *p, *f_res, *nu, *k_split)?,
        )?,
        Command::Verify { suite, hmax, smax, levels, corpus } => {
            let suite = Suite::parse(suite).ok_or_else(|| Error::Input(format!("unknown suite {suite:?}")))?;
            if *smax < 2 {
                return Err(Error::Input("--smax must be at least 2".into()));
            }
            let mut cfg = VerifyConfig { seed: cli.seed, hmax: *hmax, smax: *smax, levels: *levels, ..Default::default() };
            if let Some(path) = corpus {
                cfg.corpus = read_corpus(path)?;
            }
            let results = run_suite(suite, &cfg);
            for r in &results {
                eprintln!("{}", r.line());
            }
            let ok = results.iter().all(|r| r.passed);
            let failures: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            emit(cli, "verify", json!({ "passed": ok, "failures": failures, "results": results }))?;
            return Ok(ok);
        }
        Command::Counterexample { prime, levels, full } => {
            emit(cli, "counterexample", counterexample_cmd(*prime, *levels, *full)?)?
        }
        Command::ConstructPoint { curve, prime } => {
            let e = curve.parse()?;
            let pt = construct_unramified_point(&e, *prime, SEARCH_CAP)?;
            emit(cli, "construct-point", serde_json::to_value(&pt).expect("serializable"))?
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("heightlab: {e}");
            ExitCode::from(match e {
                Error::Input(_) | Error::Parse(_) => 2,
                _ => 1,
            })
        }
    }
}
