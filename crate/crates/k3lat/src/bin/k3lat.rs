//! Thin command-line front end over the k3lat library.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 cap exceeded.

use clap::{Args, Parser, Subcommand};
use k3lat::ambient::{admissible_picard, build_m, even_overlattices, saturation, AmbientError, Configuration};
use k3lat::casebook::{run_all, run_case, ALL_CASE_IDS};
use k3lat::disc::discriminant_group;
use k3lat::lattice::{ade, k3, AdeType, Lattice};
use k3lat::resolution::{parse_terms, resolve_ade, resolve_germ, ResolutionError};
use k3lat::roots::{classify_root_system, enumerate_roots};
use num_bigint::BigInt;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "k3lat", about = "Exact computation with even integral lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LatticeInput {
    /// ADE type, e.g. A3, D5, E8
    #[arg(long)]
    ade: Option<String>,
    /// JSON file with {"gram": [[...]], "labels": [...]}
    #[arg(long)]
    gram: Option<String>,
    /// the K3 lattice U^3 + E8(-1)^2
    #[arg(long)]
    k3: bool,
}

impl LatticeInput {
    fn load(&self) -> Result<Lattice, String> {
        match (&self.ade, &self.gram, self.k3) {
            (Some(t), None, false) => {
                let t = AdeType::parse(t).ok_or_else(|| format!("unknown ADE type {}", t))?;
                Ok(ade(t))
            }
            (None, Some(path), false) => {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let v: serde_json::Value =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                Lattice::from_json(&v)
            }
            (None, None, true) => Ok(k3()),
            _ => Err("give exactly one of --ade, --gram, --k3".into()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a lattice: rank, signature, determinant, Gram matrix
    Lat {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Enumerate roots (vectors of square -2) and classify the root system
    Roots {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Discriminant group and quadratic form
    Disc {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Saturation (primitive hull) of integer vectors inside a lattice:
    /// input JSON {"lattice": {...}, "vectors": [[...], ...]}
    Sat {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Even overlattices: for a configuration file run the admissibility
    /// pipeline, for a plain lattice list all even overlattices
    Overlat {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "text")]
        format: String,
        /// discriminant-group size cap for the enumeration
        #[arg(long, default_value_t = 20_000)]
        cap_disc: usize,
    },
    /// Resolve an ADE double-cover germ and print the exceptional dual graph
    Resolve {
        /// letter A, D, E6, E7 or E8
        #[arg(long = "type")]
        type_: Option<String>,
        /// index n for A_n / D_n
        #[arg(long)]
        n: Option<usize>,
        /// explicit germ factor "c,i,j;c,i,j;..." (repeatable)
        #[arg(long)]
        germ: Vec<String>,
        /// blowup budget for explicit germs
        #[arg(long, default_value_t = 80)]
        cap: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run stored verification cases
    Verify {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn lattice_json(l: &Lattice) -> serde_json::Value {
    let (p, q) = l.signature();
    let mut v = l.to_json();
    v["rank"] = serde_json::json!(l.rank());
    v["signature"] = serde_json::json!([p, q]);
    v["det"] = serde_json::json!(l.det().to_string());
    v
}

fn lattice_text(l: &Lattice) -> String {
    let (p, q) = l.signature();
    let mut out = format!(
        "rank {}  signature ({},{})  det {}\nbasis: {}\ngram:\n",
        l.rank(),
        p,
        q,
        l.det(),
        l.labels.join(" ")
    );
    for i in 0..l.rank() {
        let row: Vec<String> = (0..l.rank()).map(|j| l.gram[(i, j)].to_string()).collect();
        out.push_str(&format!("  [{}]\n", row.join(", ")));
    }
    out
}

fn emit(format: &str, json: serde_json::Value, text: String) -> Result<(), String> {
    match format {
        "json" => {
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(())
        }
        "text" => {
            print!("{}", text);
            Ok(())
        }
        other => Err(format!("unsupported format '{}'", other)),
    }
}

fn run() -> Result<u8, (u8, String)> {
    let cli = Cli::parse();
    let usage = |m: String| (2u8, m);
    match cli.command {
        Command::Lat { input, format } => {
            let l = input.load().map_err(usage)?;
            emit(&format, lattice_json(&l), lattice_text(&l)).map_err(usage)?;
            Ok(0)
        }
        Command::Roots { input, format } => {
            let l = input.load().map_err(usage)?;
            let roots = enumerate_roots(&l);
            let base = classify_root_system(&l, &roots);
            let types: Vec<String> =
                base.component_types().iter().map(|t| t.to_string()).collect();
            let json = serde_json::json!({
                "count": roots.len(),
                "types": types,
                "base": base.to_json(),
            });
            let text = format!("{} roots, root system {}\n", roots.len(), types.join(" + "));
            emit(&format, json, text).map_err(usage)?;
            Ok(0)
        }
        Command::Disc { input, format } => {
            let l = input.load().map_err(usage)?;
            let d = discriminant_group(&l);
            let orders: Vec<String> = d.form.orders.iter().map(|o| o.to_string()).collect();
            let mut text = format!("group Z/{}\n", orders.join(" x Z/"));
            if orders.is_empty() {
                text = "trivial group\n".into();
            }
            for (i, q) in d.form.q_gen.iter().enumerate() {
                text.push_str(&format!("q(g{}) = {}/{} mod 2\n", i + 1, q.numer(), q.denom()));
            }
            emit(&format, d.form.to_json(), text).map_err(usage)?;
            Ok(0)
        }
        Command::Sat { file, format } => {
            let text = std::fs::read_to_string(&file).map_err(|e| usage(e.to_string()))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| usage(e.to_string()))?;
            let amb = Lattice::from_json(v.get("lattice").ok_or_else(|| usage("missing lattice".into()))?)
                .map_err(usage)?;
            let vecs: Vec<Vec<BigInt>> = v
                .get("vectors")
                .and_then(|x| x.as_array())
                .ok_or_else(|| usage("missing vectors".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or("vector rows must be arrays".to_string())
                        .and_then(|r| {
                            r.iter()
                                .map(|x| {
                                    x.as_i64()
                                        .map(BigInt::from)
                                        .or_else(|| x.as_str().and_then(|s| s.parse().ok()))
                                        .ok_or("integer entries expected".to_string())
                                })
                                .collect()
                        })
                })
                .collect::<Result<_, _>>()
                .map_err(usage)?;
            let (sat, basis) = saturation(&amb, &vecs).map_err(|e| (map_ambient(&e), e.to_string()))?;
            let cols: Vec<Vec<String>> = (0..basis.ncols())
                .map(|j| basis.column(j).iter().map(|x| x.to_string()).collect())
                .collect();
            let json = serde_json::json!({
                "saturation": lattice_json(&sat),
                "basis_columns": cols,
            });
            let mut textout = lattice_text(&sat);
            textout.push_str(&format!("basis columns in ambient coordinates: {:?}\n", cols));
            emit(&format, json, textout).map_err(usage)?;
            Ok(0)
        }
        Command::Overlat { file, format, cap_disc } => {
            let text = std::fs::read_to_string(&file).map_err(|e| usage(e.to_string()))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| usage(e.to_string()))?;
            if v.get("degree").is_some() {
                let config = Configuration::from_json(&v).map_err(usage)?;
                let model = build_m(&config).map_err(|e| (map_ambient(&e), e.to_string()))?;
                let reports =
                    admissible_picard(&model, cap_disc).map_err(|e| (map_ambient(&e), e.to_string()))?;
                let rows: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "index": r.candidate.index.to_string(),
                            "det": r.candidate.lattice.det().to_string(),
                            "roots_pass": r.roots_pass,
                            "isotropic_u_pass": r.isotropic_u_pass,
                            "passes": r.passes(),
                        })
                    })
                    .collect();
                let survivors = reports.iter().filter(|r| r.passes()).count();
                let json = serde_json::json!({
                    "m": lattice_json(&model.m),
                    "candidates": rows,
                    "survivors": survivors,
                });
                let mut textout = format!(
                    "M: rank {} det {}\n{} overlattice candidates, {} pass the filters\n",
                    model.m.rank(),
                    model.m.det(),
                    reports.len(),
                    survivors
                );
                for r in &reports {
                    textout.push_str(&format!(
                        "  index {}  det {}  roots {}  isotropic-u {}\n",
                        r.candidate.index,
                        r.candidate.lattice.det(),
                        if r.roots_pass { "ok" } else { "extra" },
                        if r.isotropic_u_pass { "none" } else { "found" },
                    ));
                }
                emit(&format, json, textout).map_err(usage)?;
                Ok(0)
            } else {
                let m = Lattice::from_json(&v).map_err(usage)?;
                let cands =
                    even_overlattices(&m, cap_disc).map_err(|e| (map_ambient(&e), e.to_string()))?;
                let rows: Vec<serde_json::Value> = cands
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "index": c.index.to_string(),
                            "det": c.lattice.det().to_string(),
                        })
                    })
                    .collect();
                let json = serde_json::json!({ "overlattices": rows });
                let mut textout = format!("{} even overlattices\n", cands.len());
                for c in &cands {
                    textout.push_str(&format!("  index {}  det {}\n", c.index, c.lattice.det()));
                }
                emit(&format, json, textout).map_err(usage)?;
                Ok(0)
            }
        }
        Command::Resolve { type_, n, germ, cap, format } => {
            let res = if !germ.is_empty() {
                let factors = germ
                    .iter()
                    .map(|g| parse_terms(g))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| usage(format!("{:?}", e)))?;
                resolve_germ(factors, cap)
            } else {
                let t = match (type_.as_deref(), n) {
                    (Some("A"), Some(n)) if n >= 1 => AdeType::A(n),
                    (Some("D"), Some(n)) if n >= 4 => AdeType::D(n),
                    (Some("E6"), _) => AdeType::E6,
                    (Some("E7"), _) => AdeType::E7,
                    (Some("E8"), _) => AdeType::E8,
                    (Some(s), _) => match AdeType::parse(s) {
                        Some(t) => t,
                        None => return Err(usage(format!("bad type {}", s))),
                    },
                    _ => return Err(usage("give --type (and --n for A/D) or --germ".into())),
                };
                resolve_ade(t)
            };
            let res = res.map_err(|e| match e {
                ResolutionError::CapExceeded => (3u8, "blowup budget exceeded".to_string()),
                other => (2u8, format!("{:?}", other)),
            })?;
            match format.as_str() {
                "dot" => {
                    print!("{}", res.to_dot());
                    Ok(0)
                }
                _ => {
                    let json = res.to_json();
                    let types: Vec<String> =
                        res.upstairs.components.iter().map(|(t, _)| t.to_string()).collect();
                    let text = format!(
                        "{} exceptional curves, type {}, m = {}, deck involution {}\n",
                        res.upstairs.labels.len(),
                        types.join(" + "),
                        res.m,
                        json["iota"].as_str().unwrap_or("?"),
                    );
                    emit(&format, json, text).map_err(usage)?;
                    Ok(0)
                }
            }
        }
        Command::Verify { case, all, format } => {
            let reports = if all {
                run_all()
            } else if let Some(id) = case {
                match run_case(&id) {
                    Some(r) => vec![r],
                    None => {
                        return Err(usage(format!(
                            "unknown case '{}'; known cases: {}",
                            id,
                            ALL_CASE_IDS.join(", ")
                        )))
                    }
                }
            } else {
                return Err(usage("give --case ID or --all".into()));
            };
            let ok = reports.iter().all(|r| r.ok());
            let json = serde_json::json!({
                "ok": ok,
                "cases": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            let text: String = reports.iter().map(|r| r.to_text()).collect();
            emit(&format, json, text).map_err(usage)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn map_ambient(e: &AmbientError) -> u8 {
    match e {
        AmbientError::CapExceeded(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
