//! `transys`: build lattices, enumerate transfer systems, run the count
//! regressions and export diagrams.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or IO error,
//! 3 size guard breach.

mod output;
mod source;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use transys::characteristic::{enumerate_interior_operators, fiber_decomposition_of};
use transys::fusion::{bmt_decompose, chi_structure_rank_two, count_tr_chain_fusion, count_tr_fusion, tr_rank_two};
use transys::matchstick::{enumerate_covers_with, validate_cover};
use transys::transfer::enumerate_systems;
use transys::{Error, InteriorOperator, Lattice, Limits, SearchOptions, TrLattice, TransferSystem};

use output::{pairs_text, sink, write_file};
use source::{parse_operand, Source};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Guard(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::Guard(e.to_string()),
            Error::InvariantViolation(_) | Error::ClassificationGap(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "transys", version, about = "Transfer systems on finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List transfer systems, saturated systems, saturated covers or
    /// interior operators of a lattice.
    Enumerate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "transfer")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Run the count regression suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        check: verify::CheckName,
        /// Size parameter of a single check.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Write DOT files into a directory.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "tr-hasse")]
        what: ExportWhat,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Count `Tr(P * Q)` from the operands alone.
    FusionCount {
        /// `chain:3`, `cube:2`, `rect:2x1`, `fuse2:3`, `subcpcp:5`,
        /// `pentagon` or a lattice JSON path.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// `|Tr(Sub(C_p × C_p))|` from the closed form.
    RankTwo {
        #[arg(long)]
        p: u64,
        /// Also enumerate and compare.
        #[arg(long)]
        enumerate: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Structural reports.
    Report {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        report: ReportKind,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Debug, Clone, Args)]
struct RunOpts {
    /// Worker threads for searches.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Raise every size guard to its hard ceiling.
    #[arg(long)]
    unsafe_guard: bool,
    /// Non-reflexive order pairs allowed in a full enumeration.
    #[arg(long)]
    max_pairs: Option<usize>,
}

impl RunOpts {
    fn limits(&self) -> Result<Limits, Failure> {
        let mut limits = if self.unsafe_guard { Limits::HARD } else { Limits::default() };
        if let Some(p) = self.max_pairs {
            if p > Limits::HARD.max_tr_pairs {
                return Err(Failure::Usage(format!(
                    "--max-pairs {p} is above the hard ceiling {}",
                    Limits::HARD.max_tr_pairs
                )));
            }
            limits.max_tr_pairs = p;
        }
        Ok(limits)
    }

    fn jobs(&self) -> Result<usize, Failure> {
        if self.jobs == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        Ok(self.jobs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Transfer,
    Saturated,
    Covers,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    /// Hasse diagram of the lattice itself.
    Lattice,
    /// Hasse diagram of `Tr(P)`.
    TrHasse,
    /// One file per transfer system, all relations drawn.
    Systems,
    /// One file per saturated cover, chosen edges bold over the gray order.
    Covers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    /// Fibers of the characteristic function.
    Fibers,
    /// Block structure of `Tr([2]^{*n})`.
    Bmt,
    /// Fiber sizes over `[2]^{*n}`.
    RankTwo,
}

/// One enumerated item, already re-validated.
enum Item {
    System(TransferSystem),
    Interior(InteriorOperator),
    Cover(transys::SaturatedCover),
}

impl Item {
    fn json(&self) -> serde_json::Value {
        match self {
            Item::System(r) => json!(r.pairs().iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()),
            Item::Cover(q) => json!(q.edges().iter().map(|e| [e.lower, e.upper]).collect::<Vec<_>>()),
            Item::Interior(f) => json!(f.image()),
        }
    }

    fn text(&self) -> String {
        match self {
            Item::System(r) => pairs_text(&r.pairs()),
            Item::Cover(q) => pairs_text(&q.edges().iter().map(|e| (e.lower, e.upper)).collect::<Vec<_>>()),
            Item::Interior(f) => format!("{:?}", f.image()),
        }
    }

    fn dot(&self) -> String {
        match self {
            Item::System(r) => r.to_dot(),
            Item::Cover(q) => q.to_dot(),
            Item::Interior(f) => {
                let l = f.lattice();
                let mut s = String::from("digraph interior {\n  rankdir=BT;\n");
                for x in 0..l.len() {
                    s += &format!("  n{x} -> n{};\n", f.apply(x));
                }
                s + "}\n"
            }
        }
    }
}

fn collect_items(l: &Arc<Lattice>, kind: Kind, run: &RunOpts) -> Result<Vec<Item>, Failure> {
    let limits = run.limits()?;
    let jobs = run.jobs()?;
    let revalidate = |what: &str, ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Failure::Mismatch(format!("enumerated {what} failed re-validation")))
        }
    };
    let mut items = Vec::new();
    match kind {
        Kind::Transfer | Kind::Saturated => {
            let saturated = kind == Kind::Saturated;
            for r in enumerate_systems(l, SearchOptions { saturated, jobs }, &limits)? {
                let ok = TransferSystem::validate(l, &r.pairs()).is_ok() && (!saturated || r.is_saturated());
                revalidate("transfer system", ok)?;
                items.push(Item::System(r));
            }
        }
        Kind::Covers => {
            for q in enumerate_covers_with(l, &limits)? {
                revalidate("saturated cover", validate_cover(l, &q.edges()).is_ok())?;
                items.push(Item::Cover(q));
            }
        }
        Kind::Interior => {
            for f in enumerate_interior_operators(l)? {
                revalidate("interior operator", InteriorOperator::new(l, f.image().to_vec()).is_ok())?;
                items.push(Item::Interior(f));
            }
        }
    }
    Ok(items)
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Transfer => "transfer",
        Kind::Saturated => "saturated",
        Kind::Covers => "covers",
        Kind::Interior => "interior",
    }
}

fn cmd_enumerate(source: &Source, kind: Kind, format: Format, out: Option<&PathBuf>, run: &RunOpts) -> Result<(), Failure> {
    let l = source.build(&run.limits()?)?;
    let items = collect_items(&l, kind, run)?;
    let mut w = sink(out)?;
    match format {
        Format::Json => {
            let doc = json!({
                "lattice": l.to_json(),
                "kind": kind_name(kind),
                "count": items.len(),
                "items": items.iter().map(Item::json).collect::<Vec<_>>(),
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("plain JSON values"))?;
        }
        Format::Table => {
            for (i, item) in items.iter().enumerate() {
                writeln!(w, "{i}\t{}", item.text())?;
            }
            writeln!(w, "{} items", items.len())?;
        }
        Format::Dot => {
            for item in &items {
                write!(w, "{}", item.dot())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(check: verify::CheckName, max: Option<usize>, format: Format, run: &RunOpts) -> Result<(), Failure> {
    let cfg = verify::Config {
        max,
        seed: run.seed,
        jobs: run.jobs()?,
        limits: run.limits()?,
    };
    let outcomes = verify::run(check, &cfg)?;
    let mut w = sink(None)?;
    match format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&outcomes).expect("plain JSON values"))?,
        _ => {
            for o in &outcomes {
                writeln!(w, "{} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.check, o.detail)?;
            }
        }
    }
    w.flush()?;
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).map(|o| o.check.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("failed: {}", failed.join(", "))))
    }
}

fn cmd_export(source: &Source, what: ExportWhat, dir: &PathBuf, run: &RunOpts) -> Result<(), Failure> {
    let limits = run.limits()?;
    let l = source.build(&limits)?;
    std::fs::create_dir_all(dir).map_err(|e| output::io_failure(dir, e))?;
    let mut written = Vec::new();
    match what {
        ExportWhat::Lattice => written.push(write_file(dir, "lattice.dot", &l.hasse_dot())?),
        ExportWhat::TrHasse => {
            let tr = TrLattice::enumerate_with(&l, run.jobs()?, &limits)?;
            written.push(write_file(dir, "tr_hasse.dot", &tr.hasse_dot())?);
        }
        ExportWhat::Systems | ExportWhat::Covers => {
            let kind = if what == ExportWhat::Systems { Kind::Transfer } else { Kind::Covers };
            let prefix = if what == ExportWhat::Systems { "system" } else { "cover" };
            for (i, item) in collect_items(&l, kind, run)?.iter().enumerate() {
                written.push(write_file(dir, &format!("{prefix}_{i:03}.dot"), &item.dot())?);
            }
        }
    }
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_fusion_count(left: &str, right: &str, format: Format) -> Result<(), Failure> {
    let p = Arc::new(parse_operand(left)?);
    let q = Arc::new(parse_operand(right)?);
    let b = count_tr_fusion(&p, &q)?;
    let chains = [left, right].map(|s| s.strip_prefix("chain:").and_then(|n| n.parse::<u64>().ok()));
    let chain_formula = match chains {
        [Some(m), Some(n)] => Some(count_tr_chain_fusion(m, n).to_string()),
        _ => None,
    };
    match format {
        Format::Json => {
            let mut doc = serde_json::to_value(&b).expect("plain JSON values");
            if let Some(c) = &chain_formula {
                doc["chain_formula"] = json!(c);
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("plain JSON values"));
        }
        _ => {
            println!("top\t{}", b.top_term);
            println!("bottom\t{}", b.bottom_term);
            for (a, t) in &b.middle_terms_p {
                println!("left {a}\t{t}");
            }
            for (c, t) in &b.middle_terms_q {
                println!("right {c}\t{t}");
            }
            println!("total\t{}", b.total);
            if let Some(c) = chain_formula {
                println!("chain formula\t{c}");
            }
        }
    }
    if let Some(c) = chains[0].zip(chains[1]).map(|(m, n)| count_tr_chain_fusion(m, n)) {
        if c != b.total.into() {
            return Err(Failure::Mismatch(format!("recursion {} but chain formula {c}", b.total)));
        }
    }
    Ok(())
}

fn cmd_rank_two(p: u64, enumerate: bool, run: &RunOpts) -> Result<(), Failure> {
    let closed = tr_rank_two(p)?;
    println!("{closed}");
    if enumerate {
        let l = Arc::new(Lattice::sub_cp_cp(p)?);
        let direct = enumerate_systems(&l, SearchOptions { saturated: false, jobs: run.jobs()? }, &run.limits()?)?.len();
        println!("enumerated {direct}");
        if closed != direct.into() {
            return Err(Failure::Mismatch(format!("closed form {closed}, enumeration {direct}")));
        }
    }
    Ok(())
}

fn cmd_report(source: &Source, report: ReportKind, format: Format, out: Option<&PathBuf>, run: &RunOpts) -> Result<(), Failure> {
    let limits = run.limits()?;
    let mut w = sink(out)?;
    match report {
        ReportKind::Fibers => {
            let l = source.build(&limits)?;
            let tr = TrLattice::enumerate_with(&l, run.jobs()?, &limits)?;
            let reports: Vec<_> = fiber_decomposition_of(&tr)?.iter().map(|f| f.report()).collect();
            if format == Format::Json {
                writeln!(w, "{}", serde_json::to_string_pretty(&reports).expect("plain JSON values"))?;
            } else {
                writeln!(w, "operator\tsize\tleast\tgreatest")?;
                for r in &reports {
                    let least: Vec<_> = r.least_pairs.iter().map(|p| (p[0], p[1])).collect();
                    let greatest: Vec<_> = r.greatest_pairs.iter().map(|p| (p[0], p[1])).collect();
                    writeln!(w, "{:?}\t{}\t{}\t{}", r.operator, r.size, pairs_text(&least), pairs_text(&greatest))?;
                }
                writeln!(w, "{} fibers, {} systems", reports.len(), tr.len())?;
            }
        }
        ReportKind::Bmt | ReportKind::RankTwo => {
            let n = source
                .n
                .filter(|_| source.family == source::Family::Fuse2)
                .ok_or_else(|| Failure::Usage("this report needs --family fuse2 --n N".into()))?;
            if report == ReportKind::Bmt {
                let d = bmt_decompose(n)?;
                let doc = json!({
                    "n": n,
                    "bottom": d.b_len(),
                    "middle": d.m_len(),
                    "top": d.t_len(),
                    "hasse_edges": d.tr.covers().len(),
                });
                if format == Format::Json {
                    writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("plain JSON values"))?;
                } else {
                    writeln!(w, "bottom\t{}\nmiddle\t{}\ntop\t{}", d.b_len(), d.m_len(), d.t_len())?;
                    writeln!(w, "hasse edges\t{}", d.tr.covers().len())?;
                }
            } else {
                let r = chi_structure_rank_two(n)?;
                if format == Format::Json {
                    writeln!(w, "{}", serde_json::to_string_pretty(&r).expect("plain JSON values"))?;
                } else {
                    writeln!(w, "fibers\t{}\nsaturated\t{}\nsizes\t{:?}", r.fibers, r.saturated, r.fiber_sizes)?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { source, kind, format, out, run } => cmd_enumerate(&source, kind, format, out.as_ref(), &run),
        Command::Verify { check, max, format, run } => cmd_verify(check, max, format, &run),
        Command::Export { source, what, out, run } => cmd_export(&source, what, &out, &run),
        Command::FusionCount { left, right, format } => cmd_fusion_count(&left, &right, format),
        Command::RankTwo { p, enumerate, run } => cmd_rank_two(p, enumerate, &run),
        Command::Report { source, report, format, out, run } => cmd_report(&source, report, format, out.as_ref(), &run),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Mismatch(m) => (1, "mismatch", m),
                Failure::Usage(m) => (2, "usage", m),
                Failure::Io(m) => (2, "io", m),
                Failure::Guard(m) => (3, "guard", m),
            };
            eprintln!("transys: {kind}: {msg}");
            ExitCode::from(code)
        }
    }
}
