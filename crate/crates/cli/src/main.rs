//! Batch front-end: catalog access, censuses, isomorphism queries,
//! irreducibility certificates, moduli classification, and summary table
//! reports. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use olex_core::moduli::{self, Classification, ConstructionPlan};
use olex_core::poly::{
    absolutely_irreducible, find_q_irreducibility_certificate_bounded, newton_polytope, MPoly,
};
use olex_core::symmetry::{automorphism_group, find_isomorphism};
use olex_core::{extend, Arrangement, Catalog};

#[derive(Parser)]
#[command(name = "olex", about = "one-line extensions of (n_3) configurations and their moduli")]
struct Cli {
    /// emit machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// optional key=value config file (recognized key: prime_bound)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// list bundled configurations or show one table
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// double points of an arrangement, with letter labels when bundled
    Doubles { target: String },
    /// automorphism group: order, element-order histogram, generators
    Aut { target: String },
    /// search for an isomorphism witness between two arrangements
    Iso { target_a: String, target_b: String },
    /// orbit representatives of the k-element one-line extensions
    Extend {
        name: String,
        #[arg(long)]
        k: usize,
    },
    /// full extension census over the bundled (10_3) or (9_3) catalog
    Census {
        #[arg(long)]
        k: usize,
        /// run over the three (9_3) configurations instead
        #[arg(long)]
        nine3: bool,
    },
    /// irreducibility certificates for a polynomial file
    Irred { polyfile: String },
    /// moduli presentation (parameters, constraints, nondegeneracy) as JSON
    Moduli {
        target: String,
        #[arg(long, value_name = "PLANFILE")]
        plan: Option<String>,
    },
    /// classify the moduli space of an arrangement
    Classify {
        target: String,
        #[arg(long, value_name = "PLANFILE")]
        plan: Option<String>,
    },
    /// census summary table for k double points
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
    table: u8,
    /// also classify every surviving arrangement and tally the verdicts
    #[arg(long)]
    classify: bool,
}

struct Config {
    prime_bound: u64,
}

fn load_config(path: Option<&str>) -> Result<Config, String> {
    let mut cfg = Config { prime_bound: u64::MAX };
    let Some(path) = path else { return Ok(cfg) };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}: expected key=value, got `{line}`"))?;
        match key.trim() {
            "prime_bound" => {
                cfg.prime_bound = value
                    .trim()
                    .parse()
                    .map_err(|e| format!("{path}: prime_bound: {e}"))?;
            }
            other => return Err(format!("{path}: unknown config key `{other}`")),
        }
    }
    Ok(cfg)
}

/// A target is a file path (arrangement table) or a catalog name like
/// `(10_3)_7` or `(10_3)_7.ADO`.
fn load_arrangement(catalog: &Catalog, target: &str) -> Result<Arrangement, String> {
    if Path::new(target).is_file() {
        let text = std::fs::read_to_string(target).map_err(|e| format!("{target}: {e}"))?;
        return Arrangement::parse_table(&text).map_err(|e| format!("{target}: {e}"));
    }
    catalog.build_named(target).map_err(|e| e.to_string())
}

fn load_plan(path: Option<&str>) -> Result<Option<ConstructionPlan>, String> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    ConstructionPlan::parse(&text)
        .map(Some)
        .map_err(|e| format!("{path}: {e}"))
}

fn double_rows(a: &Arrangement) -> Vec<(String, String, String)> {
    let labels = a.double_labels();
    a.doubles()
        .iter()
        .map(|d| {
            (
                labels.get(d).cloned().unwrap_or_default(),
                a.line_name(d.a).to_owned(),
                a.line_name(d.b).to_owned(),
            )
        })
        .collect()
}

fn map_json(m: &olex_core::symmetry::ArrangementMap, a: &Arrangement, b: &Arrangement) -> serde_json::Value {
    json!({
        "lines": m.line_map.iter().enumerate()
            .map(|(i, &j)| (a.line_name(i), b.line_name(j)))
            .collect::<BTreeMap<_, _>>(),
        "points": m.point_map,
    })
}

fn map_text(m: &olex_core::symmetry::ArrangementMap, a: &Arrangement, b: &Arrangement) -> String {
    let lines: Vec<String> = m
        .line_map
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{}->{}", a.line_name(i), b.line_name(j)))
        .collect();
    let points: Vec<String> = m.point_map.iter().map(|(p, q)| format!("{p}->{q}")).collect();
    format!("lines:  {}\npoints: {}", lines.join(" "), points.join(" "))
}

fn parse_poly_file(path: &str) -> Result<MPoly, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let expr: String = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    // variables are the alphabetic identifiers appearing in the expression
    let mut vars: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in expr.chars().chain([' ']) {
        if ch.is_ascii_alphabetic() || (!cur.is_empty() && ch.is_ascii_digit()) {
            cur.push(ch);
        } else if !cur.is_empty() {
            if !vars.contains(&cur) {
                vars.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
        }
    }
    vars.sort();
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    MPoly::parse(&expr, &refs).map_err(|e| format!("{path}: {e}"))
}

fn run(cli: &Cli) -> Result<(), String> {
    let cfg = load_config(cli.config.as_deref())?;
    let catalog = Catalog::bundled();
    match &cli.cmd {
        Cmd::Catalog { cmd: CatalogCmd::List } => {
            if cli.json {
                let rows: Vec<_> = catalog
                    .entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "lines": e.arrangement.num_lines(),
                            "points": e.arrangement.num_points(),
                            "doubles": e.arrangement.doubles().len(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&json!(rows)).unwrap());
            } else {
                for e in catalog.entries() {
                    println!(
                        "{}  {} lines, {} points, {} doubles",
                        e.name,
                        e.arrangement.num_lines(),
                        e.arrangement.num_points(),
                        e.arrangement.doubles().len()
                    );
                }
            }
        }
        Cmd::Catalog { cmd: CatalogCmd::Show { name } } => {
            let entry = catalog
                .get(name)
                .ok_or_else(|| format!("unknown catalog entry `{name}`"))?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "name": entry.name,
                        "arrangement": entry.arrangement.to_json(),
                        "doubles": double_rows(&entry.arrangement).iter()
                            .map(|(l, a, b)| json!({"label": l, "lines": [a, b]}))
                            .collect::<Vec<_>>(),
                    }))
                    .unwrap()
                );
            } else {
                print!("{}", entry.arrangement.emit_table());
            }
        }
        Cmd::Doubles { target } => {
            let a = load_arrangement(&catalog, target)?;
            let rows = double_rows(&a);
            if cli.json {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|(l, x, y)| json!({"label": l, "lines": [x, y]}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&json!(rows)).unwrap());
            } else {
                for (label, x, y) in &rows {
                    if label.is_empty() {
                        println!("{{{x}, {y}}}");
                    } else {
                        println!("{label} = {{{x}, {y}}}");
                    }
                }
            }
        }
        Cmd::Aut { target } => {
            let a = load_arrangement(&catalog, target)?;
            let g = automorphism_group(&a);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "order": g.order,
                        "element_order_histogram": g.element_order_histogram,
                        "abelian": g.is_abelian(),
                        "generators": g.generators.iter().map(|m| map_json(m, &a, &a)).collect::<Vec<_>>(),
                    }))
                    .unwrap()
                );
            } else {
                println!("order {}", g.order);
                let hist: Vec<String> = g
                    .element_order_histogram
                    .iter()
                    .map(|(o, c)| format!("{o}:{c}"))
                    .collect();
                println!("element orders  {}", hist.join("  "));
                for (i, m) in g.generators.iter().enumerate() {
                    println!("generator {}\n{}", i + 1, map_text(m, &a, &a));
                }
            }
        }
        Cmd::Iso { target_a, target_b } => {
            let a = load_arrangement(&catalog, target_a)?;
            let b = load_arrangement(&catalog, target_b)?;
            match find_isomorphism(&a, &b) {
                Some(m) => {
                    assert!(m.verify(&a, &b));
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "isomorphic": true,
                                "witness": map_json(&m, &a, &b),
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("{}", map_text(&m, &a, &b));
                    }
                }
                None => {
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({"isomorphic": false})).unwrap()
                        );
                    } else {
                        println!("none");
                    }
                }
            }
        }
        Cmd::Extend { name, k } => {
            let entry = catalog
                .get(name)
                .ok_or_else(|| format!("unknown catalog entry `{name}`"))?;
            // ol_ext already picks one representative per automorphism orbit
            let reps = extend::ol_ext(*k, &entry.arrangement).map_err(|e| e.to_string())?;
            let names: Vec<String> = reps
                .iter()
                .map(|ext| entry.extension_name(ext))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json!(names)).unwrap());
            } else {
                for n in &names {
                    println!("{n}");
                }
            }
        }
        Cmd::Census { k, nine3 } => {
            let report = if *nine3 {
                extend::nine3_census(&catalog)
            } else {
                extend::enumerate_census(*k, &catalog)
            }
            .map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                print!("{}", report.to_table());
                for p in report.self_pairs.iter().chain(&report.identified_pairs) {
                    println!("identified  {} = {}", p.removed, p.kept);
                }
            }
        }
        Cmd::Irred { polyfile } => {
            let f = parse_poly_file(polyfile)?;
            let abs = absolutely_irreducible(&f);
            let cert = find_q_irreducibility_certificate_bounded(&f, cfg.prime_bound);
            let hull = newton_polytope(&f).ok();
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "polynomial": f.to_string(),
                        "absolutely_irreducible": format!("{abs:?}"),
                        "rational_certificate": cert.as_ref().map(|(keep, assignment, p)| json!({
                            "kept_variable": f.vars()[*keep],
                            "assignment": assignment.iter()
                                .map(|(i, v)| (f.vars()[*i].clone(), v.to_string()))
                                .collect::<BTreeMap<_, _>>(),
                            "prime": p,
                        })),
                        "newton_vertices": hull.as_ref().map(|h| h.vertices()),
                    }))
                    .unwrap()
                );
            } else {
                println!("polynomial            {f}");
                println!("absolutely irreducible  {abs:?}");
                match &cert {
                    Some((keep, assignment, p)) => {
                        let assigns: Vec<String> = assignment
                            .iter()
                            .map(|(i, v)| format!("{}={v}", f.vars()[*i]))
                            .collect();
                        println!(
                            "rational certificate  keep {}, {}, mod {p}",
                            f.vars()[*keep],
                            assigns.join(" ")
                        );
                    }
                    None => println!("rational certificate  none found"),
                }
                if let Some(h) = &hull {
                    println!("newton vertices       {:?}", h.vertices());
                }
            }
        }
        Cmd::Moduli { target, plan } => {
            let a = load_arrangement(&catalog, target)?;
            let plan = load_plan(plan.as_deref())?;
            let (m, _) =
                moduli::classify_arrangement(&a, plan.as_ref()).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&m.to_json()).unwrap());
        }
        Cmd::Classify { target, plan } => {
            let a = load_arrangement(&catalog, target)?;
            let plan = load_plan(plan.as_deref())?;
            let (m, v) =
                moduli::classify_arrangement(&a, plan.as_ref()).map_err(|e| e.to_string())?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "verdict": v.to_json(),
                        "parameters": m.params,
                        "reduced_constraints": m.reduced.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
                    }))
                    .unwrap()
                );
            } else {
                println!("{v}");
            }
        }
        Cmd::Report(args) => {
            let mut report =
                extend::enumerate_census(args.table as usize, &catalog).map_err(|e| e.to_string())?;
            if args.classify {
                let mut tallies: BTreeMap<String, usize> = BTreeMap::new();
                for name in &report.survivors {
                    let a = catalog.build_named(name).map_err(|e| e.to_string())?;
                    let verdict = match moduli::classify_arrangement(&a, None) {
                        Ok((_, v)) => v,
                        Err(e) => Classification::Unknown(e.to_string()),
                    };
                    *tallies.entry(verdict.tally_key().to_owned()).or_default() += 1;
                }
                report.classification_tallies = tallies;
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                print!("{}", report.to_table());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // die quietly when output is piped into a closed reader
    unsafe { libc::signal(libc::SIGPIPE, libc::SIG_DFL) };
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
