use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use stunted_core::homology::reduced_betti;
use stunted_core::report::{conjecture_rows, verify, ConjectureRow, RunReport};
use stunted_core::simplicial::format::SimplicialFile;

#[derive(Parser)]
#[command(name = "stunted", version, about = "Mod-2 Betti numbers of loop spaces of 1-stunted Borel constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced mod-2 Betti numbers of a simplicial set.
    Betti {
        file: PathBuf,
        /// Highest degree; defaults to one below the truncation.
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Compare brute force, Mayer–Vietoris and closed-form Betti numbers.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
        #[arg(long, default_value_t = 6)]
        t_max: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Compare the closed-form loop space Betti numbers with the conjectured series.
    Conjecture {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

fn read_file(path: &Path) -> Result<SimplicialFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SimplicialFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn fixture_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_betti(file: &Path, max_dim: Option<usize>, json: bool) -> Result<ExitCode> {
    let parsed = read_file(file)?;
    let trunc = parsed.set.truncation();
    let max_dim = match max_dim {
        Some(t) => t,
        None if trunc > 0 => trunc - 1,
        None => bail!("truncation 0 certifies no homology"),
    };
    let table = reduced_betti(&parsed.set, max_dim)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{table}");
    }
    Ok(ExitCode::SUCCESS)
}

fn show(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn render_report(r: &RunReport) -> String {
    let mut out = String::new();
    let flag = |h: &stunted_core::report::Hypothesis| if h.holds { "yes" } else { "no" };
    let _ = writeln!(out, "fixture {} (truncation {}), s <= {}, t <= {}", r.fixture, r.truncation, r.s_max, r.t_max);
    let _ = writeln!(out, "section:   {} ({})", flag(&r.section), r.section.detail);
    let _ = writeln!(out, "diagonal:  {} ({})", flag(&r.diagonal), r.diagonal.detail);
    let _ = writeln!(out, "connected: {} ({})", flag(&r.connected), r.connected.detail);
    let _ = writeln!(out, "b(Q) = {:?}, b(A) = {:?}", r.orbit_betti.values(), r.fixed_betti.values());
    let _ = writeln!(out);
    let _ = writeln!(out, "pinched sets b_t(Δ̃_s)");
    let _ = writeln!(out, "{:>3} {:>3} {:>8} {:>8} {:>8}  agree", "s", "t", "brute", "mv", "formula");
    for c in &r.cells {
        let _ = writeln!(
            out,
            "{:>3} {:>3} {:>8} {:>8} {:>8}  {}",
            c.s,
            c.t,
            show(c.brute),
            show(c.mv),
            show(c.formula),
            mark(c.agree)
        );
    }
    if !r.diagonal.holds {
        let _ = writeln!(out, "mv, formula: hypothesis not satisfied");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "loop space b_n");
    if r.loop_rows.is_empty() {
        let _ = writeln!(out, "disabled: {}", if r.section.holds { &r.connected.detail } else { &r.section.detail });
    } else {
        let _ = writeln!(out, "{:>3} {:>8} {:>8} {:>8}  agree", "n", "brute", "mv", "formula");
        for l in &r.loop_rows {
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>8} {:>8}  {}",
                l.n,
                show(l.brute),
                show(l.mv),
                show(l.formula),
                mark(l.agree)
            );
        }
    }
    for note in &r.notes {
        let _ = writeln!(out, "note: {note}");
    }
    let t = &r.timings;
    let _ = writeln!(
        out,
        "\ntimings: brute {:.3}s, mv {:.3}s, formula {:.3}s, total {:.3}s",
        t.brute_secs, t.mv_secs, t.formula_secs, t.total_secs
    );
    let _ = writeln!(out, "{}", if r.all_agree { "all paths agree" } else { "DISAGREEMENT" });
    out
}

#[derive(Serialize)]
struct CsvRecord {
    kind: &'static str,
    s: Option<usize>,
    t: Option<usize>,
    n: Option<usize>,
    brute: Option<u64>,
    mv: Option<u64>,
    formula: Option<u64>,
    agree: bool,
}

fn report_csv(r: &RunReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in &r.cells {
        w.serialize(CsvRecord {
            kind: "pinched",
            s: Some(c.s),
            t: Some(c.t),
            n: None,
            brute: c.brute,
            mv: c.mv,
            formula: c.formula,
            agree: c.agree,
        })?;
    }
    for l in &r.loop_rows {
        w.serialize(CsvRecord {
            kind: "loop",
            s: None,
            t: None,
            n: Some(l.n),
            brute: l.brute,
            mv: l.mv,
            formula: l.formula,
            agree: l.agree,
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cmd_verify(file: &Path, s_max: usize, t_max: usize, format: &Format) -> Result<ExitCode> {
    let parsed = read_file(file)?;
    let Some(involution) = parsed.involution else {
        bail!("{} has no involution; verify needs one", file.display());
    };
    let report = verify(&fixture_name(file), Arc::new(parsed.set), &involution, s_max, t_max)?;
    if format.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else if format.csv {
        print!("{}", report_csv(&report)?);
    } else {
        print!("{}", render_report(&report));
    }
    Ok(if report.all_agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_conjecture(n_max: usize, format: &Format) -> Result<ExitCode> {
    let rows = conjecture_rows(n_max)?;
    if format.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else if format.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.serialize(r)?;
        }
        print!("{}", String::from_utf8(w.into_inner()?)?);
    } else {
        println!("{:>3} {:>12} {:>12}  status", "n", "closed form", "series");
        for r in &rows {
            let status = match (r.asserted, r.matches) {
                (true, true) => "ok",
                (true, false) => "MISMATCH",
                (false, true) => "conjectured (equal)",
                (false, false) => "conjectured (differs)",
            };
            println!("{:>3} {:>12} {:>12}  {status}", r.n, r.closed_form, r.series);
        }
    }
    let ok = rows.iter().filter(|r: &&ConjectureRow| r.asserted).all(|r| r.matches);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Betti { file, max_dim, json } => cmd_betti(file, *max_dim, *json),
        Command::Verify {
            file,
            s_max,
            t_max,
            format,
        } => cmd_verify(file, *s_max, *t_max, format),
        Command::Conjecture { n_max, format } => cmd_conjecture(*n_max as usize, format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
