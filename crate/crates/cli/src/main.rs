use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use latticeforge::campaign::{
    export_lattice_dot, export_lattice_json, export_report_json, run_campaign, run_zxzn_task,
    CheckStatus, CorpusConfig, RunOptions, Verdict, ZxznExpect, ZxznTask,
};
use latticeforge::classify::table_row;
use latticeforge::grp::{build, FiniteGroup, GroupSpec, NamedGroupSpec};
use latticeforge::lattice::{enumerate_subgroups, SubgroupLattice};
use latticeforge::patterns::find_cyclic_diamond;
use latticeforge::zxzn::DEFAULT_WITNESS_CAP;

const EXIT_CONSISTENT: u8 = 0;
const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(
    name = "latticeforge",
    version,
    about = "Subgroup lattices, diamonds and Z x Z_n searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the subgroup lattice of one group.
    Lattice {
        /// Group spec JSON: `{"name": .., "spec": {..}}` or a bare spec.
        #[arg(long)]
        spec: PathBuf,
        /// Write the Hasse diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write subgroups, covers and lattice properties as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification campaign over a corpus config.
    Check {
        /// Corpus config JSON.
        #[arg(long)]
        corpus: PathBuf,
        /// Where to write the JSON report.
        #[arg(long)]
        report: PathBuf,
        /// Omit wall-clock timings so reports are byte-comparable.
        #[arg(long)]
        no_timings: bool,
    },
    /// Search Z x Z_n for generalized cyclic-diamonds with generators up to a bound.
    Hunt {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 16)]
        bound: u64,
        /// Write the witnesses and their properties as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        witness_cap: usize,
    },
    /// Print the minimal non-cyclic / prime generated / unique prime subgroup record.
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_CONSISTENT
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Lattice { spec, dot, json } => lattice_cmd(&spec, dot.as_deref(), json.as_deref()),
        Command::Check {
            corpus,
            report,
            no_timings,
        } => check_cmd(&corpus, &report, !no_timings),
        Command::Hunt {
            n,
            bound,
            json,
            witness_cap,
        } => hunt_cmd(n, bound, json.as_deref(), witness_cap),
        Command::Classify { spec } => classify_cmd(&spec),
    }
}

fn read_group(path: &Path) -> Result<FiniteGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let named = if value.get("spec").is_some() {
        serde_json::from_value::<NamedGroupSpec>(value)
    } else {
        serde_json::from_value::<GroupSpec>(value).map(|s| NamedGroupSpec::new(s.display_name(), s))
    }
    .with_context(|| format!("parsing group spec {}", path.display()))?;
    let g = build(&named.spec).with_context(|| format!("building {}", named.name))?;
    Ok(g.with_name(named.name))
}

fn read_lattice(path: &Path) -> Result<SubgroupLattice> {
    let g = read_group(path)?;
    enumerate_subgroups(&g).with_context(|| format!("enumerating subgroups of {}", g.name()))
}

fn lattice_cmd(spec: &Path, dot: Option<&Path>, json: Option<&Path>) -> Result<u8> {
    let l = read_lattice(spec)?;
    println!(
        "{}: order {}, {} subgroups, {} covers, cyclic={}, distributive={}, modular={}",
        l.group().name(),
        l.group().order(),
        l.len(),
        l.covers().len(),
        l.is_cyclic_group(),
        l.is_distributive(),
        l.is_modular()
    );
    match find_cyclic_diamond(&l) {
        Some(w) => println!("cyclic-diamond: {}", serde_json::to_string(&w)?),
        None => println!("cyclic-diamond: none"),
    }
    if let Some(p) = dot {
        export_lattice_dot(&l, p).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = json {
        export_lattice_json(&l, p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(EXIT_CONSISTENT)
}

fn check_cmd(corpus: &Path, report_path: &Path, timings: bool) -> Result<u8> {
    let text =
        fs::read_to_string(corpus).with_context(|| format!("reading {}", corpus.display()))?;
    let config = CorpusConfig::from_json(&text)?;
    let report = run_campaign(
        &config,
        &RunOptions {
            timings,
            threads: None,
        },
    )?;
    export_report_json(&report, report_path)
        .with_context(|| format!("writing {}", report_path.display()))?;
    let s = &report.summary;
    println!(
        "verdict: {} ({} groups, {} failed, {} errored; {} zxzn tasks, {} failed)",
        serde_json::to_value(report.verdict)?
            .as_str()
            .unwrap_or_default(),
        s.groups,
        s.groups_failed,
        s.groups_errored,
        s.zxzn_tasks,
        s.zxzn_failed
    );
    for g in report
        .groups
        .iter()
        .filter(|g| g.failed() || g.error.is_some())
    {
        if let Some(e) = &g.error {
            println!("  {}: error: {e}", g.name);
        }
        for c in g.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
            println!(
                "  {}: {}: {}",
                g.name,
                c.check,
                c.detail.as_deref().unwrap_or("")
            );
        }
    }
    for z in report.zxzn.iter().filter(|z| !z.consistent) {
        println!(
            "  Z x Z_{} (bound {}): {}",
            z.n,
            z.bound,
            z.detail.as_deref().unwrap_or("")
        );
    }
    Ok(match report.verdict {
        Verdict::AllConsistent => EXIT_CONSISTENT,
        Verdict::CounterexampleFound => EXIT_COUNTEREXAMPLE,
        Verdict::Error => EXIT_INVALID,
    })
}

fn hunt_cmd(n: u64, bound: u64, json: Option<&Path>, witness_cap: usize) -> Result<u8> {
    anyhow::ensure!(n >= 1, "--n must be at least 1");
    anyhow::ensure!(bound >= 1, "--bound must be at least 1");
    let task = ZxznTask {
        n,
        bound,
        expect: ZxznExpect::Unspecified,
        witness_cap: None,
    };
    let result = run_zxzn_task(&task, witness_cap, false);
    if let Some(d) = result
        .detail
        .as_deref()
        .filter(|_| result.witnesses.is_empty() && !result.consistent)
    {
        anyhow::bail!("{d}");
    }
    println!(
        "Z x Z_{n}, generators with 0 <= x <= {bound}: {} witness(es){}",
        result.witness_count,
        if result.witness_count >= witness_cap {
            " (capped)"
        } else {
            ""
        }
    );
    for w in result.witnesses.iter().take(10) {
        let m = &w.witness.middles;
        println!(
            "  top {}  middles <{}> <{}> <{}>  bottom {}",
            w.witness.top, m[0].generator, m[1].generator, m[2].generator, w.witness.bottom
        );
    }
    if result.witnesses.is_empty() {
        println!("  no witness up to bound {bound}");
    }
    if let Some(p) = json {
        let mut s = serde_json::to_string_pretty(&result)?;
        s.push('\n');
        fs::write(p, s).with_context(|| format!("writing {}", p.display()))?;
    }
    if !result.consistent {
        println!("violation: {}", result.detail.as_deref().unwrap_or(""));
        return Ok(EXIT_COUNTEREXAMPLE);
    }
    Ok(EXIT_CONSISTENT)
}

fn classify_cmd(spec: &Path) -> Result<u8> {
    let l = read_lattice(spec)?;
    match table_row(&l) {
        Ok(rec) => {
            println!("{}: {}", l.group().name(), rec.triple_label());
            println!("{}", serde_json::to_string_pretty(&rec)?);
            Ok(EXIT_CONSISTENT)
        }
        Err(e) => {
            println!("{}: {e}", l.group().name());
            Ok(EXIT_COUNTEREXAMPLE)
        }
    }
}
