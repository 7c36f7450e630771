use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fusionkit::fields::{self, Charge};
use fusionkit::fuchsian::{self, FuchsianSystem};
use fusionkit::fusion;
use fusionkit::graded;
use fusionkit::kac::{self, KacLabel, Level, NSLabel};
use fusionkit::{qdim, suite, Error};

mod render;

use render::{sig10, Format};

#[derive(Parser)]
#[command(name = "fusionkit", version, about = "Neveu-Schwarz fusion rings, quantum dimensions and supporting checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kac table of the NS sector with identification classes.
    Kac {
        #[arg(long, conflicts_with = "level", required_unless_present = "level")]
        m: Option<u32>,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Fusion product of two classes.
    Fuse {
        #[arg(long)]
        level: u32,
        /// Doubled spins `2i,2i'`, or fractions such as `1/2,1/2`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Quantum dimensions from the sine formula and/or Perron-Frobenius.
    Qdim {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value_t = QdimMode::Both)]
        mode: QdimMode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Subfactor index `d(x)²`.
    Index {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        label: String,
    },
    /// Constructible primary fields of one charge.
    Fields {
        #[arg(long)]
        level: u32,
        #[arg(long, value_parser = parse_charge)]
        charge: Charge,
    },
    /// Field graph of one charge on the classes.
    Graph {
        #[arg(long)]
        level: u32,
        #[arg(long, value_parser = parse_charge)]
        charge: Charge,
        /// Exit 1 if the graph is disconnected.
        #[arg(long)]
        check_connected: bool,
    },
    /// Transport data of a Fuchsian system read from JSON.
    Braid {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = BraidCheck::Transport)]
        check: BraidCheck,
    },
    /// Supercommutant checks on a sample graded algebra.
    Graded {
        #[arg(long)]
        example: String,
    },
    /// Full invariant suite.
    Verify {
        #[arg(long, default_value_t = 6)]
        level_max: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QdimMode {
    Closed,
    Pf,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum BraidCheck {
    Duality,
    Transport,
}

fn parse_charge(s: &str) -> Result<Charge, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// One spin component: a doubled integer, or `n/d` with `d ∈ {1, 2}`.
fn parse_spin(s: &str) -> Result<u32, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: u32 = n.trim().parse().map_err(|_| format!("bad spin {s:?}"))?;
            match d.trim() {
                "1" => Ok(2 * n),
                "2" => Ok(n),
                _ => Err(format!("spin {s:?} is not a half-integer")),
            }
        }
        None => s.parse().map_err(|_| format!("bad doubled spin {s:?}")),
    }
}

fn parse_label(s: &str, level: Level) -> Result<NSLabel, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(Failure::Usage(format!("label {s:?} must have two components")));
    };
    let (a, b) = (parse_spin(a).map_err(Failure::Usage)?, parse_spin(b).map_err(Failure::Usage)?);
    NSLabel::from_twice(a, b, level).map_err(|e| Failure::Usage(e.to_string()))
}

enum Failure {
    Usage(String),
    Checks(Value),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Unsupported(_) | Error::Resonance { .. } | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn level(ell: u32) -> Level {
    Level::new(ell)
}

fn label_json(x: &NSLabel) -> Value {
    json!({ "label": x.to_string(), "twice": x.coords() })
}

fn cmd_kac(m: Option<u32>, ell: Option<u32>, format: Format) -> Result<String, Failure> {
    let lv = match (m, ell) {
        (Some(m), _) => Level::from_m(m).map_err(|e| Failure::Usage(e.to_string()))?,
        (None, Some(l)) => level(l),
        (None, None) => return Err(Failure::Usage("pass --m or --level".into())),
    };
    let basis = kac::enumerate_ns_basis(lv);
    let m = lv.m();
    let mut rows = Vec::new();
    for p in 1..m {
        for q in (1..=m + 1).filter(|q| (p + q) % 2 == 0) {
            let label = KacLabel::new(p, q, m)?;
            let ns = label.to_ns();
            let class = kac::canonicalize(&ns);
            let class_index = basis.binary_search(&class).expect("canonical classes form the basis");
            rows.push(json!({
                "p": p,
                "q": q,
                "i": ns.i().to_string(),
                "i_prime": ns.i_prime().to_string(),
                "h": kac::h_ns(&label).to_string(),
                "class": class_index,
                "canonical": class == ns,
            }));
        }
    }
    let classes: Vec<Value> = basis
        .iter()
        .enumerate()
        .map(|(k, x)| json!({ "class": k, "label": x.to_string(), "h": x.weight().to_string() }))
        .collect();
    let record = json!({
        "command": "kac",
        "inputs": { "m": m, "level": lv.ell() },
        "results": { "entries": rows, "classes": classes },
    });
    Ok(format.render(&record, "/results/entries", &["p", "q", "i", "i_prime", "h", "class", "canonical"]))
}

fn cmd_fuse(ell: u32, a: &str, b: &str, format: Format) -> Result<String, Failure> {
    let lv = level(ell);
    let (x, y) = (parse_label(a, lv)?, parse_label(b, lv)?);
    let ring = fusion::build_ns_ring(lv);
    let product = ring.fuse(&kac::canonicalize(&x), &kac::canonicalize(&y))?;
    let results: Vec<Value> = product
        .iter()
        .map(|(z, m)| json!({ "class": z.to_string(), "twice": z.coords(), "multiplicity": m }))
        .collect();
    let record = json!({
        "command": "fuse",
        "inputs": { "level": ell, "a": label_json(&x), "b": label_json(&y) },
        "results": results,
    });
    Ok(format.render(&record, "/results", &["class", "multiplicity"]))
}

fn cmd_qdim(ell: u32, mode: QdimMode, format: Format) -> Result<String, Failure> {
    let lv = level(ell);
    let ring = fusion::build_ns_ring(lv);
    let generator = qdim::alpha_label(lv).unwrap_or(NSLabel::vacuum(lv));
    let pf = match mode {
        QdimMode::Closed => None,
        _ => Some(qdim::pf_dims(&ring, &generator)?),
    };
    let mut max_diff: f64 = 0.0;
    let rows: Vec<Value> = ring
        .basis()
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let closed = qdim::qdim_ns(x);
            let mut row = json!({ "class": x.to_string() });
            if !matches!(mode, QdimMode::Pf) {
                row["closed"] = json!(sig10(closed));
            }
            if let Some(d) = &pf {
                row["pf"] = json!(sig10(d.values[k]));
                if matches!(mode, QdimMode::Both) {
                    let diff = (closed - d.values[k]).abs();
                    max_diff = max_diff.max(diff);
                    row["diff"] = json!(sig10(diff));
                }
            }
            row
        })
        .collect();
    let passed = max_diff <= qdim::DIM_TOLERANCE;
    let mut record = json!({
        "command": "qdim",
        "inputs": { "level": ell, "mode": match mode { QdimMode::Closed => "closed", QdimMode::Pf => "pf", QdimMode::Both => "both" } },
        "results": rows,
        "tolerances": { "dims": qdim::DIM_TOLERANCE, "pf_convergence": qdim::PF_CONVERGENCE },
    });
    if let Some(d) = &pf {
        record["inputs"]["generator"] = json!(generator.to_string());
        record["results_pf"] = json!({ "eigenvalue": sig10(d.eigenvalue), "iterations": d.iterations });
    }
    if matches!(mode, QdimMode::Both) {
        record["checks"] = json!({ "closed_equals_pf": passed });
    }
    let columns: &[&str] = match mode {
        QdimMode::Closed => &["class", "closed"],
        QdimMode::Pf => &["class", "pf"],
        QdimMode::Both => &["class", "closed", "pf", "diff"],
    };
    let out = format.render(&record, "/results", columns);
    if passed {
        Ok(out)
    } else {
        Err(Failure::Checks(json!([{ "check": "closed_equals_pf", "max_diff": max_diff }])))
    }
}

fn cmd_index(ell: u32, label: &str) -> Result<String, Failure> {
    let x = parse_label(label, level(ell))?;
    let record = json!({
        "command": "index",
        "inputs": { "level": ell, "label": label_json(&x) },
        "results": { "class": kac::canonicalize(&x).to_string(), "qdim": sig10(qdim::qdim_ns(&x)), "index": sig10(qdim::subfactor_index(&x)) },
    });
    Ok(render::pretty(&record))
}

fn cmd_fields(ell: u32, charge: Charge) -> Result<String, Failure> {
    let lv = level(ell);
    let pairs = kac::ns_pairs(lv);
    let mut out = Vec::new();
    for source in &pairs {
        for target in &pairs {
            if let Some(sigma) = fields::constructible_sigma(target, source, charge)? {
                out.push(json!({ "source": source.to_string(), "target": target.to_string(), "sigma": sigma.value() }));
            }
        }
    }
    let adjacency: Vec<Value> = kac::enumerate_ns_basis(lv)
        .iter()
        .map(|x| {
            let adj = fields::adjacency_set(x, charge)?;
            Ok(json!({ "class": x.to_string(), "targets": adj.iter().map(|y| y.to_string()).collect::<Vec<_>>() }))
        })
        .collect::<Result<_, Error>>()?;
    let record = json!({
        "command": "fields",
        "inputs": { "level": ell, "charge": charge.to_string(), "charge_label": charge.label(lv)?.to_string() },
        "results": { "fields": out, "adjacency": adjacency },
    });
    Ok(render::pretty(&record))
}

fn cmd_graph(ell: u32, charge: Charge, check_connected: bool) -> Result<String, Failure> {
    let lv = level(ell);
    let basis = kac::enumerate_ns_basis(lv);
    let mut edges = std::collections::BTreeSet::new();
    for (j, x) in basis.iter().enumerate() {
        for y in fields::adjacency_set(x, charge)? {
            let k = basis.binary_search(&y).expect("basis class");
            edges.insert((j.min(k), j.max(k)));
        }
    }
    let connected = fields::charge_graph_connected(lv, charge)?;
    let record = json!({
        "command": "graph",
        "inputs": { "level": ell, "charge": charge.to_string() },
        "results": {
            "vertices": basis.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "edges": edges.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            "connected": connected,
        },
    });
    if check_connected && !connected {
        return Err(Failure::Checks(json!([{ "check": "connected", "level": ell, "charge": charge.to_string() }])));
    }
    Ok(render::pretty(&record))
}

fn cmd_braid(path: &PathBuf, check: BraidCheck) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let sys = FuchsianSystem::from_json(&text)?;
    let tolerances = json!({ "ode_tol": sys.ode_tol, "match_tol": sys.match_tol, "pairing": fuchsian::PAIRING_TOL, "duality": fuchsian::DUALITY_TOL });
    match check {
        BraidCheck::Transport => {
            let tm = fuchsian::transport_matrix(&sys)?;
            let record = json!({
                "command": "braid",
                "inputs": { "system": path.display().to_string(), "check": "transport", "n": sys.dim() },
                "results": {
                    "c": tm.c.iter().map(|row| row.iter().map(|z| [sig10(z[0]), sig10(z[1])]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "residual": sig10(tm.residual),
                    "condition_number": sig10(tm.condition_number),
                    "all_entries_nonzero": tm.all_entries_nonzero,
                },
                "tolerances": tolerances,
            });
            Ok(render::pretty(&record))
        }
        BraidCheck::Duality => {
            let r = fuchsian::duality_report(&sys)?;
            let record = json!({
                "command": "braid",
                "inputs": { "system": path.display().to_string(), "check": "duality", "n": sys.dim() },
                "results": {
                    "pairing_drift": sig10(r.pairing_drift),
                    "gauge_deviation": sig10(r.gauge_deviation),
                    "inverse_transpose_error": sig10(r.inverse_transpose_error),
                },
                "checks": { "duality": r.passed },
                "tolerances": tolerances,
            });
            if r.passed {
                Ok(render::pretty(&record))
            } else {
                Err(Failure::Checks(json!([{ "check": "duality", "report": record["results"] }])))
            }
        }
    }
}

fn cmd_graded(name: &str) -> Result<String, Failure> {
    let r = graded::sample_report(name)?;
    let record = json!({
        "command": "graded",
        "inputs": { "example": name },
        "results": {
            "dim_space": r.dim_space,
            "dim_algebra": r.dim_algebra,
            "dim_commutant": r.dim_commutant,
            "dim_supercommutant": r.dim_supercommutant,
            "naturals_residual": sig10(r.naturals_residual),
        },
        "checks": {
            "naturals": r.naturals_residual < graded::SUBSPACE_TOL,
            "double_commutant": r.double_commutant,
            "double_supercommutant": r.double_supercommutant,
            "klein_identities": r.klein_identities,
        },
        "tolerances": { "subspace": graded::SUBSPACE_TOL, "identities": graded::IDENTITY_TOL },
    });
    if r.passed {
        Ok(render::pretty(&record))
    } else {
        Err(Failure::Checks(record["checks"].clone()))
    }
}

fn seed() -> Result<u64, Failure> {
    match std::env::var("FUSIONKIT_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("FUSIONKIT_SEED={s:?} is not an unsigned integer"))),
        Err(_) => Ok(20_241_014),
    }
}

fn cmd_verify(level_max: u32) -> Result<String, Failure> {
    let cfg = suite::SuiteConfig::new(level_max, seed()?);
    let checks = suite::run(&cfg);
    let failed: Vec<&suite::Check> = checks.iter().filter(|c| !c.passed).collect();
    let record = json!({
        "command": "verify",
        "inputs": { "level_max": level_max, "seed": cfg.seed },
        "results": checks.iter().map(|c| json!({ "module": c.module, "check": c.name, "passed": c.passed })).collect::<Vec<_>>(),
        "summary": { "total": checks.len(), "failed": failed.len() },
    });
    if failed.is_empty() {
        Ok(render::pretty(&record))
    } else {
        println!("{}", render::pretty(&record));
        Err(Failure::Checks(serde_json::to_value(&failed).expect("serializable")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Kac { m, level, format } => cmd_kac(*m, *level, *format),
        Command::Fuse { level, a, b, format } => cmd_fuse(*level, a, b, *format),
        Command::Qdim { level, mode, format } => cmd_qdim(*level, *mode, *format),
        Command::Index { level, label } => cmd_index(*level, label),
        Command::Fields { level, charge } => cmd_fields(*level, *charge),
        Command::Graph { level, charge, check_connected } => cmd_graph(*level, *charge, *check_connected),
        Command::Braid { system, check } => cmd_braid(system, *check),
        Command::Graded { example } => cmd_graded(example),
        Command::Verify { level_max } => cmd_verify(*level_max),
    };
    match outcome {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(list)) => {
            eprintln!("{}", json!({ "failures": list }));
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("{}", json!({ "failures": [{ "error": msg }] }));
            ExitCode::from(1)
        }
    }
}
