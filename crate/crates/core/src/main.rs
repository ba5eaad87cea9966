use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use necklical::builders::{builtin, load_file};
use necklical::chains::{boundary, render, Chain, Ring, Variant};
use necklical::cube::CubeCell;
use necklical::homology::{basis, homology, stabilization_scan, HomologyRow};
use necklical::path::{one_skeleton, PathModel};
use necklical::suites::{run_suite, Suite, SuiteOptions};
use necklical::word::LoopModel;
use necklical::{Error, Result, SimplicialPresentation};

// stdout line that ends the process quietly when the reader hangs up
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "necklical",
    version,
    about = "Combinatorial loop and path space models of finite simplicial sets"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Builtin complex: sphere:N, wedge:N, boundary-simplex:N, simplex:N, wedge-aab.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Facet list, or a JSON presentation when the name ends in `.json`.
    #[arg(long)]
    file: Option<String>,
}

impl Source {
    fn load(&self) -> Result<SimplicialPresentation> {
        match (&self.builtin, &self.file) {
            (Some(b), _) => builtin(b),
            (None, Some(f)) => load_file(f),
            (None, None) => Err(Error::Io("give a complex with --builtin or --file".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the simplicial identities and print generator counts.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// List generator words of a degree, or the cells of a cube.
    Cells {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value = "norm")]
        variant: String,
        /// List the cells of the cube with this many vertices instead.
        #[arg(long)]
        cube: Option<u32>,
        /// With --cube, use the augmented cube.
        #[arg(long)]
        augmented: bool,
    },
    /// Print the boundary of a word.
    Boundary {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "norm")]
        variant: String,
        #[arg(long, default_value = "z")]
        coeff: String,
    },
    /// Run a property suite: cubical, dsq, leibniz, theorem2, covering or all.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = necklical::random::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Restrict to one variant (de or norm); both by default.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Loop homology in a degree or an inclusive range `a..b`.
    Homology {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        degree: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long, default_value = "norm")]
        variant: String,
        /// Recompute with windows 1..=max-len and report stabilization.
        #[arg(long)]
        scan: bool,
    },
    /// Operate on degree-0 loops.
    Group {
        #[command(flatten)]
        source: Source,
        /// Word literal; printed in reduced form.
        #[arg(long)]
        element: String,
        /// Right factor of a product.
        #[arg(long)]
        compose: Option<String>,
        #[arg(long)]
        invert: bool,
        /// Integer power, negative allowed.
        #[arg(long, allow_negative_numbers = true)]
        power: Option<i64>,
        /// Write the element as a conjugate of a power of a root.
        #[arg(long)]
        power_detect: bool,
    },
    /// Export the covering graph over the 1-skeleton.
    Cover {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// dot, adjacency or summary.
        #[arg(long, default_value = "summary")]
        out: String,
    },
}

fn parse_degrees(text: &str) -> Result<Vec<usize>> {
    let bad = |m: String| Error::Parse {
        line: 1,
        column: 1,
        message: m,
    };
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| bad(format!("bad degree `{s}`: {e}")))
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad(format!("empty degree range `{text}`")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(text)?]),
    }
}

fn print_json(v: &serde_json::Value) {
    out!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn homology_table(rows: &[HomologyRow]) -> String {
    let mut out = format!(
        "{:>6}  {:>5}  {:>7}  {:>7}  {:>8}  {:>9}  {:<12}  {}\n",
        "degree", "ring", "variant", "max_len", "chains", "free_rank", "torsion", "status"
    );
    for r in rows {
        let status = match (r.provisional, r.stabilized) {
            (false, _) => "exact",
            (true, Some(true)) => "stabilized",
            (true, _) => "provisional",
        };
        let torsion = if r.torsion.is_empty() {
            "-".to_string()
        } else {
            r.torsion.join(",")
        };
        out.push_str(&format!(
            "{:>6}  {:>5}  {:>7}  {:>7}  {:>8}  {:>9}  {:<12}  {}\n",
            r.degree,
            r.ring,
            r.variant,
            r.max_len.map_or("-".to_string(), |k| k.to_string()),
            r.chain_rank,
            r.free_rank,
            torsion,
            status
        ));
    }
    out
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Validate { source } => {
            let x = source.load()?;
            let report = x.validate();
            let violations: Vec<String> =
                report.violations.iter().map(ToString::to_string).collect();
            if json {
                print_json(&json!({
                    "name": x.name(),
                    "counts_by_dim": x.counts_by_dim(),
                    "basepoint": x.name_of(x.basepoint()),
                    "valid": report.is_ok(),
                    "violations": violations,
                }));
            } else {
                out!(
                    "{}: generators by dimension {:?}, basepoint {}",
                    x.name(),
                    x.counts_by_dim(),
                    x.name_of(x.basepoint())
                );
                for v in &violations {
                    out!("violation: {v}");
                }
                out!("{}", if report.is_ok() { "valid" } else { "INVALID" });
            }
            Ok(report.is_ok())
        }
        Command::Cells {
            source,
            degree,
            max_len,
            variant,
            cube,
            augmented,
        } => {
            let labels: Vec<String> = match cube {
                Some(n) => CubeCell::enumerate(n, augmented)
                    .iter()
                    .map(|c| format!("{}\t{c}", c.dim()))
                    .collect(),
                None => {
                    let x = source.load()?;
                    let m = LoopModel::new(&x)?;
                    let v: Variant = variant.parse()?;
                    basis(&m, degree, v, max_len)?
                        .iter()
                        .map(|w| format!("{}\t{}", w.len(), m.render(w)))
                        .collect()
                }
            };
            if json {
                print_json(&json!({ "count": labels.len(), "cells": labels }));
            } else {
                for l in &labels {
                    out!("{l}");
                }
                eprintln!("{} cells", labels.len());
            }
            Ok(true)
        }
        Command::Boundary {
            source,
            word,
            variant,
            coeff,
        } => {
            let x = source.load()?;
            let m = LoopModel::new(&x)?;
            let w = m.parse_word(&word)?;
            let c = Chain::word(coeff.parse::<Ring>()?, variant.parse()?, w.clone());
            let d = boundary(&m, &c)?;
            if json {
                print_json(&json!({
                    "word": m.render(&w),
                    "degree": w.degree(),
                    "boundary": render(&m, &d),
                }));
            } else {
                out!("d({}) = {}", m.render(&w), render(&m, &d));
            }
            Ok(true)
        }
        Command::Check {
            source,
            suite,
            degree,
            max_len,
            seed,
            samples,
            variant,
        } => {
            let x = source.load()?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let variants = match variant {
                Some(v) => vec![v.parse()?],
                None => vec![Variant::De, Variant::Normalized],
            };
            let opts = SuiteOptions {
                seed,
                samples,
                degree,
                max_len,
                variants,
                ..SuiteOptions::default()
            };
            let mut reports = Vec::new();
            for s in suites {
                reports.push(run_suite(&x, s, &opts)?);
            }
            let ok = reports.iter().all(|r| r.passed());
            if json {
                print_json(&json!({ "passed": ok, "seed": seed, "reports": reports }));
            } else {
                for r in &reports {
                    out!("{r}");
                }
            }
            Ok(ok)
        }
        Command::Homology {
            source,
            degree,
            max_len,
            coeff,
            variant,
            scan,
        } => {
            let x = source.load()?;
            let m = LoopModel::new(&x)?;
            let ring: Ring = coeff.parse()?;
            let v: Variant = variant.parse()?;
            let mut rows = Vec::new();
            for n in parse_degrees(&degree)? {
                match (scan, max_len) {
                    (true, Some(k)) => {
                        let lens: Vec<usize> = (1..=k).collect();
                        rows.extend(stabilization_scan(&m, n, v, ring, &lens)?);
                    }
                    (true, None) => {
                        return Err(Error::Io("--scan needs --max-len".into()));
                    }
                    (false, k) => rows.push(homology(&m, n, v, ring, k)?),
                }
            }
            if json {
                print_json(&json!({ "complex": x.name(), "rows": rows }));
            } else {
                out!("{}", homology_table(&rows).trim_end_matches('\n'));
            }
            Ok(true)
        }
        Command::Group {
            source,
            element,
            compose,
            invert,
            power,
            power_detect,
        } => {
            let x = source.load()?;
            let m = LoopModel::new(&x)?;
            let w = m.parse_word(&element)?;
            let mut out = vec![("element".to_string(), m.render(&w))];
            if let Some(other) = compose {
                let u = m.parse_word(&other)?;
                out.push(("product".into(), m.render(&m.compose(&w, &u)?)));
            }
            if invert {
                out.push(("inverse".into(), m.render(&m.invert(&w)?)));
            }
            if let Some(k) = power {
                out.push((format!("power {k}"), m.render(&m.power(&w, k)?)));
            }
            if power_detect {
                let p = m.power_decomposition(&w)?;
                out.push(("conjugator".into(), m.render(&p.conjugator)));
                out.push(("root".into(), m.render(&p.root)));
                out.push(("exponent".into(), p.exponent.to_string()));
            }
            if json {
                let map: serde_json::Map<String, serde_json::Value> =
                    out.into_iter().map(|(k, v)| (k, json!(v))).collect();
                print_json(&serde_json::Value::Object(map));
            } else {
                for (k, v) in out {
                    out!("{k}: {v}");
                }
            }
            Ok(true)
        }
        Command::Cover {
            source,
            max_len,
            out,
        } => {
            let x = source.load()?;
            let m = LoopModel::new(&x)?;
            let paths = PathModel::new(&m);
            let g = one_skeleton(&m, max_len)?;
            let failures = g.lifting_failures(&paths);
            let connected = g.is_connected();
            match out.as_str() {
                "dot" => out!("{}", g.to_dot(&paths).trim_end_matches('\n')),
                "adjacency" => out!("{}", g.to_adjacency(&paths).trim_end_matches('\n')),
                "summary" if json => print_json(&json!({
                    "vertices": g.vertices.len(),
                    "edges": g.edges.len(),
                    "boundary_vertices": g.boundary.iter().filter(|b| **b).count(),
                    "connected": connected,
                    "tree": g.is_tree(),
                    "lifting_failures": failures,
                })),
                "summary" => {
                    out!(
                        "{} vertices, {} edges, {} boundary vertices, connected: {}, tree: {}",
                        g.vertices.len(),
                        g.edges.len(),
                        g.boundary.iter().filter(|b| **b).count(),
                        connected,
                        g.is_tree()
                    );
                    for f in &failures {
                        out!("lifting failure: {f}");
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: 1,
                        message: format!(
                            "unknown output `{other}` (expected dot, adjacency or summary)"
                        ),
                    })
                }
            }
            Ok(connected && failures.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
