//! Command-line front end: generate lattices, sweep occupation
//! probabilities, reproduce threshold tables, fit relations, render plots.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use carpet_perc::analysis::{
    connectivity, dimensionality, fit_exponent, fit_quadratic, predict_pc_from_d,
    predict_pc_from_q, PC_SQUARE_NN4, PC_SQUARE_NNN8,
};
use carpet_perc::estimator::{
    estimate_csv_row, estimate_pc, estimate_pc_single, run_sweep, sig6, sweep_csv, SweepGrid,
    ESTIMATE_CSV_HEADER,
};
use carpet_perc::lattice::{
    build_carpet_recursive, build_carpet_tdm, write_mask, write_pgm, CarpetSpec, Family,
};
use carpet_perc::percolation::{
    label_clusters_scan, occupy, write_cluster_ppm, write_config, Connectivity,
};
use carpet_perc::plot::{render_svg, sample_curve, Curve, Plot, Series};
use carpet_perc::reference::{find_row, rows as reference_rows, ReferenceRow};
use carpet_perc::report::{
    baseline_threshold, build_table_report, fit_report, table_report_csv, table_report_text,
    ThresholdSource,
};
use carpet_perc::{Error, Result};

/// Monte Carlo site percolation on Sierpinski-carpet lattices.
#[derive(Parser)]
#[command(name = "carpet-perc", version, about, max_term_width = 100)]
struct Cli {
    /// Worker threads (default: CARPET_PERC_THREADS, or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a carpet lattice; write its site mask and a graymap image
    Gen(GenArgs),
    /// Sweep occupation probabilities and estimate the critical threshold
    Sweep(SweepArgs),
    /// Reproduce a reference threshold table, with refitted relations
    Table(TableArgs),
    /// Fit the threshold-vs-descriptor relations to a CSV of measurements
    Fit(FitArgs),
    /// Render threshold scatter plots (SVG) from estimate CSVs
    Render(RenderArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Subdivision factor of the generator (squares per side)
    #[arg(long)]
    b: u32,
    /// Side length of the removed block (0 keeps the square full)
    #[arg(long)]
    l: u32,
    /// Generator family: central or scattered
    #[arg(long)]
    family: Family,
    /// Construction stages
    #[arg(long, default_value_t = 2)]
    stages: u32,
}

impl SpecArgs {
    fn build(&self) -> Result<CarpetSpec> {
        CarpetSpec::new(self.b, self.l, self.family, self.stages)
    }
}

#[derive(Args)]
struct GridArgs {
    /// Lowest occupation probability in the sweep
    #[arg(long, default_value_t = 0.30)]
    p_min: f64,
    /// Highest occupation probability in the sweep
    #[arg(long, default_value_t = 0.95)]
    p_max: f64,
    /// Spacing of the probability grid
    #[arg(long, default_value_t = 0.01)]
    dp: f64,
    /// Independent runs per grid point
    #[arg(long, default_value_t = 10)]
    runs: u32,
    /// Master seed; all randomness derives from it deterministically
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl GridArgs {
    fn grid(&self) -> SweepGrid {
        SweepGrid {
            p_min: self.p_min,
            p_max: self.p_max,
            dp: self.dp,
            runs: self.runs,
            master_seed: self.seed,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Cross-check the translational construction against the per-cell rule
    #[arg(long)]
    verify: bool,
    /// Also occupy sites at this probability and write the configuration
    /// dump plus a cluster image colored by cluster identity
    #[arg(long)]
    occupy: Option<f64>,
    /// Connectivity rule for cluster coloring (with --occupy)
    #[arg(long, default_value_t = Connectivity::Nnn8)]
    conn: Connectivity,
    /// Seed for --occupy
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Connectivity rule: nn4 or nnn8
    #[arg(long, default_value_t = Connectivity::Nnn8)]
    conn: Connectivity,
    #[command(flatten)]
    grid: GridArgs,
    /// Output directory
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct TableArgs {
    /// Generator family whose reference table to reproduce
    #[arg(long)]
    family: Family,
    /// Connectivity rule: nn4 or nnn8
    #[arg(long, default_value_t = Connectivity::Nnn8)]
    conn: Connectivity,
    /// Restrict to specific rows, e.g. --rows b=13,l=1 (repeatable)
    #[arg(long)]
    rows: Vec<String>,
    /// Use the bundled reference thresholds instead of simulating
    #[arg(long)]
    reference_data: bool,
    #[command(flatten)]
    grid: GridArgs,
    /// Output directory
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    /// Input CSV: sweep, estimate, or table output, or any CSV with a
    /// pc/pc_mean column plus d, q, or b and l columns
    #[arg(long)]
    input: PathBuf,
    /// Baseline square-lattice threshold for the power-law fit
    /// (default: chosen from the file's conn column, else the 8-cell value)
    #[arg(long)]
    baseline: Option<f64>,
    /// Also write the fit reports into this directory
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Input estimate/table CSVs (repeatable)
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    // die quietly when a pipe downstream closes, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    init_threads(cli.threads)?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Table(args) => cmd_table(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Render(args) => cmd_render(args),
    }
}

fn init_threads(flag: Option<usize>) -> Result<()> {
    let n =
        match flag {
            Some(n) => Some(n),
            None => match std::env::var("CARPET_PERC_THREADS") {
                Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                    Error::invalid("CARPET_PERC_THREADS must be a positive integer")
                })?),
                Err(_) => None,
            },
        };
    if let Some(n) = n {
        if n == 0 {
            return Err(Error::invalid("thread count must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let spec = args.spec.build()?;
    let lattice = build_carpet_tdm(&spec)?;
    if args.verify {
        let oracle = build_carpet_recursive(&spec)?;
        if oracle.mask() == lattice.mask() {
            println!("verification: PASS (translational construction matches the per-cell rule)");
        } else {
            println!("verification: FAIL");
            return Err(Error::invalid(
                "translational construction disagrees with the per-cell rule",
            ));
        }
    }
    fs::create_dir_all(&args.out_dir)?;
    let stem = format!(
        "carpet_b{}_l{}_{}_n{}",
        spec.b, spec.l, spec.family, spec.stages
    );
    let mask_path = args.out_dir.join(format!("{stem}.mask"));
    write_mask(BufWriter::new(fs::File::create(&mask_path)?), &lattice)?;
    let pgm_path = args.out_dir.join(format!("{stem}.pgm"));
    write_pgm(BufWriter::new(fs::File::create(&pgm_path)?), &lattice)?;
    println!(
        "lattice: {} x {} sites, {} present",
        lattice.side(),
        lattice.side(),
        lattice.present_count()
    );
    println!("wrote {}", mask_path.display());
    println!("wrote {}", pgm_path.display());

    if let Some(p) = args.occupy {
        let config = occupy(&lattice, p, args.seed)?;
        let labels = label_clusters_scan(&config, args.conn);
        let config_path = args.out_dir.join(format!("{stem}_p{}.config", sig6(p)));
        write_config(BufWriter::new(fs::File::create(&config_path)?), &config)?;
        let ppm_path = args
            .out_dir
            .join(format!("{stem}_p{}_{}.ppm", sig6(p), args.conn));
        write_cluster_ppm(
            BufWriter::new(fs::File::create(&ppm_path)?),
            &config,
            &labels,
        )?;
        println!(
            "occupied {} of {} sites at p = {}: {} clusters under {}",
            config.occupied_count(),
            lattice.present_count(),
            sig6(p),
            labels.cluster_count(),
            args.conn
        );
        println!("wrote {}", config_path.display());
        println!("wrote {}", ppm_path.display());
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let spec = args.spec.build()?;
    let grid = args.grid.grid();
    let lattice = build_carpet_tdm(&spec)?;
    let sweep = run_sweep(&lattice, args.conn, &grid)?;
    let est = estimate_pc(&sweep)?;

    fs::create_dir_all(&args.out_dir)?;
    let stem = format!(
        "b{}_l{}_{}_n{}_{}",
        spec.b, spec.l, spec.family, spec.stages, args.conn
    );
    let sweep_path = args.out_dir.join(format!("sweep_{stem}.csv"));
    fs::write(&sweep_path, sweep_csv(&sweep))?;
    let est_path = args.out_dir.join(format!("estimate_{stem}.csv"));
    fs::write(
        &est_path,
        format!("{ESTIMATE_CSV_HEADER}\n{}\n", estimate_csv_row(&est)),
    )?;

    println!(
        "pc = {} +/- {}  ({} runs, dp = {}, {} grid points)",
        sig6(est.pc_mean),
        sig6(est.pc_stderr),
        est.runs,
        sig6(est.dp),
        sweep.p_grid.len()
    );
    if let Some(v) = est.pc_from_averaged_m {
        println!("threshold of the run-averaged M curve: {}", sig6(v));
    }
    println!("wrote {}", sweep_path.display());
    println!("wrote {}", est_path.display());
    Ok(())
}

/// Parse a row filter like `b=13,l=1`.
fn parse_row_filter(filter: &str) -> Result<(u32, u32)> {
    let mut b = None;
    let mut l = None;
    for part in filter.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("row filter `{filter}`: expected key=value")))?;
        let value: u32 = value.trim().parse().map_err(|_| {
            Error::invalid(format!(
                "row filter `{filter}`: `{}` is not an integer",
                value.trim()
            ))
        })?;
        match key.trim() {
            "b" => b = Some(value),
            "l" => l = Some(value),
            other => {
                return Err(Error::invalid(format!(
                    "row filter `{filter}`: unknown key `{other}` (expected b and l)"
                )))
            }
        }
    }
    match (b, l) {
        (Some(b), Some(l)) => Ok((b, l)),
        _ => Err(Error::invalid(format!(
            "row filter `{filter}` must give both b and l"
        ))),
    }
}

fn cmd_table(args: TableArgs) -> Result<()> {
    let all = reference_rows(args.family);
    let selection: Vec<ReferenceRow> = if args.rows.is_empty() {
        all.to_vec()
    } else {
        args.rows
            .iter()
            .map(|f| {
                let (b, l) = parse_row_filter(f)?;
                find_row(args.family, b, l).copied().ok_or_else(|| {
                    Error::invalid(format!(
                        "no {} reference row with b={b}, l={l}",
                        args.family
                    ))
                })
            })
            .collect::<Result<_>>()?
    };
    let source = if args.reference_data {
        ThresholdSource::Reference
    } else {
        ThresholdSource::Simulated
    };
    let report = build_table_report(
        args.family,
        args.conn,
        &selection,
        &args.grid.grid(),
        source,
    );

    print!("{}", table_report_text(&report));
    fs::create_dir_all(&args.out_dir)?;
    let path = args
        .out_dir
        .join(format!("table_{}_{}.csv", args.family, args.conn));
    fs::write(&path, table_report_csv(&report))?;
    println!("wrote {}", path.display());

    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{} of {} rows failed",
            report.failures.len(),
            selection.len()
        )))
    }
}

/// One threshold measurement pulled out of an input CSV.
struct ThresholdRecord {
    family: Option<String>,
    conn: Option<String>,
    d: Option<f64>,
    q: Option<f64>,
    pc: f64,
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Read threshold records from a CSV. Accepts estimate/table outputs (or any
/// CSV with a pc or pc_mean column plus d, q, or b and l columns) directly;
/// sweep outputs are grouped by lattice and connectivity and estimated
/// first. `#` comment lines and blank lines are skipped.
fn read_thresholds(path: &Path) -> Result<Vec<ThresholdRecord>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "file has no header row"))?;
    let columns: Vec<String> = header.split(',').map(|c| c.trim().to_lowercase()).collect();
    let col = |name: &str| columns.iter().position(|c| c == name);

    if let (Some(ip), Some(irun), Some(im)) = (col("p"), col("run"), col("m")) {
        // sweep layout: estimate a threshold per (lattice, connectivity) group
        let (ib, il) = match (col("b"), col("l")) {
            (Some(ib), Some(il)) => (ib, il),
            _ => {
                return Err(parse_error(
                    path,
                    header_line,
                    "sweep CSV lacks b and l columns",
                ))
            }
        };
        let ifam = col("family");
        let iconn = col("conn");
        let istages = col("n");

        type Key = (u32, u32, String, String, String);
        let mut groups: BTreeMap<Key, Vec<(u32, f64, Option<f64>)>> = BTreeMap::new();
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != columns.len() {
                return Err(parse_error(
                    path,
                    lineno,
                    format!("expected {} fields, found {}", columns.len(), fields.len()),
                ));
            }
            let int = |idx: usize| -> Result<u32> {
                fields[idx].parse().map_err(|_| {
                    parse_error(path, lineno, format!("`{}` is not an integer", fields[idx]))
                })
            };
            let num = |idx: usize| -> Result<f64> {
                fields[idx].parse().map_err(|_| {
                    parse_error(path, lineno, format!("`{}` is not a number", fields[idx]))
                })
            };
            let m = if fields[im].is_empty() {
                None
            } else {
                Some(num(im)?)
            };
            let key = (
                int(ib)?,
                int(il)?,
                ifam.map(|i| fields[i].to_string()).unwrap_or_default(),
                istages.map(|i| fields[i].to_string()).unwrap_or_default(),
                iconn.map(|i| fields[i].to_string()).unwrap_or_default(),
            );
            groups
                .entry(key)
                .or_default()
                .push((int(irun)?, num(ip)?, m));
        }

        let mut records = Vec::new();
        for ((b, l, family, _stages, conn), cells) in groups {
            let mut p_grid: Vec<f64> = cells.iter().map(|c| c.1).collect();
            p_grid.sort_by(f64::total_cmp);
            p_grid.dedup();
            let mut runs: Vec<u32> = cells.iter().map(|c| c.0).collect();
            runs.sort_unstable();
            runs.dedup();

            let mut m_per_run = vec![vec![None; p_grid.len()]; runs.len()];
            for (run, p, m) in cells {
                let ri = runs.binary_search(&run).expect("run id collected above");
                let pi = p_grid
                    .binary_search_by(|x| x.total_cmp(&p))
                    .expect("grid point collected above");
                m_per_run[ri][pi] = m;
            }
            let context =
                |e: Error| Error::invalid(format!("group b={b} l={l} {family} {conn}: {e}"));
            let per_run: Vec<f64> = m_per_run
                .iter()
                .map(|run| estimate_pc_single(&p_grid, run).map_err(context))
                .collect::<Result<_>>()?;
            let pc = per_run.iter().sum::<f64>() / per_run.len() as f64;
            records.push(ThresholdRecord {
                family: (!family.is_empty()).then_some(family),
                conn: (!conn.is_empty()).then_some(conn),
                d: Some(dimensionality(b, l)?),
                q: Some(connectivity(b, l)?),
                pc,
            });
        }
        return Ok(records);
    }

    let ipc = col("pc_mean")
        .or_else(|| col("pc"))
        .ok_or_else(|| parse_error(path, header_line, "no pc or pc_mean column"))?;
    let id = col("d");
    let iq = col("q");
    let ibl = match (col("b"), col("l")) {
        (Some(ib), Some(il)) => Some((ib, il)),
        _ => None,
    };
    if id.is_none() && iq.is_none() && ibl.is_none() {
        return Err(parse_error(
            path,
            header_line,
            "need d, q, or b and l columns alongside the threshold",
        ));
    }
    let ifam = col("family");
    let iconn = col("conn");

    let mut records = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(parse_error(
                path,
                lineno,
                format!("expected {} fields, found {}", columns.len(), fields.len()),
            ));
        }
        let num = |idx: usize| -> Result<f64> {
            fields[idx].parse().map_err(|_| {
                parse_error(path, lineno, format!("`{}` is not a number", fields[idx]))
            })
        };
        let (mut d, mut q) = (id.map(num).transpose()?, iq.map(num).transpose()?);
        if let Some((ib, il)) = ibl {
            let int = |idx: usize| -> Result<u32> {
                fields[idx].parse().map_err(|_| {
                    parse_error(path, lineno, format!("`{}` is not an integer", fields[idx]))
                })
            };
            let (b, l) = (int(ib)?, int(il)?);
            if d.is_none() {
                d = Some(dimensionality(b, l)?);
            }
            if q.is_none() {
                q = Some(connectivity(b, l)?);
            }
        }
        records.push(ThresholdRecord {
            family: ifam.map(|i| fields[i].to_string()),
            conn: iconn.map(|i| fields[i].to_string()),
            d,
            q,
            pc: num(ipc)?,
        });
    }
    Ok(records)
}

fn cmd_fit(args: FitArgs) -> Result<()> {
    let records = read_thresholds(&args.input)?;
    if records.is_empty() {
        return Err(Error::InsufficientData(format!(
            "{} contains no data rows",
            args.input.display()
        )));
    }
    let d_points: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.d.map(|d| (d, r.pc)))
        .collect();
    let q_points: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.q.map(|q| (q, r.pc)))
        .collect();
    let conns: BTreeSet<&str> = records.iter().filter_map(|r| r.conn.as_deref()).collect();
    let baseline = args
        .baseline
        .unwrap_or(if conns.len() == 1 && conns.contains("nn4") {
            PC_SQUARE_NN4
        } else {
            PC_SQUARE_NNN8
        });

    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir)?;
    }
    let mut reports = Vec::new();
    if !d_points.is_empty() {
        let fit = fit_exponent(&d_points, baseline)?;
        reports.push(("fit_power_law.csv", fit_report(&fit, &d_points)));
    }
    if !q_points.is_empty() {
        let fit = fit_quadratic(&q_points)?;
        reports.push(("fit_quadratic.csv", fit_report(&fit, &q_points)));
    }
    for (i, (name, text)) in reports.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{text}");
        if let Some(dir) = &args.out_dir {
            let p = dir.join(name);
            fs::write(&p, text)?;
            println!("# wrote {}", p.display());
        }
    }
    Ok(())
}

fn cmd_render(args: RenderArgs) -> Result<()> {
    let mut records = Vec::new();
    for input in &args.inputs {
        records.extend(read_thresholds(input)?);
    }

    let group_label = |r: &ThresholdRecord| {
        let mut label = r.family.clone().unwrap_or_default();
        if let Some(conn) = &r.conn {
            if !label.is_empty() {
                label.push(' ');
            }
            label.push_str(conn);
        }
        if label.is_empty() {
            label = "data".to_string();
        }
        label
    };

    let mut d_groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let mut q_groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for r in &records {
        if let Some(d) = r.d {
            d_groups.entry(group_label(r)).or_default().push((d, r.pc));
        }
        if let Some(q) = r.q {
            q_groups.entry(group_label(r)).or_default().push((q, r.pc));
        }
    }
    if d_groups.is_empty() && q_groups.is_empty() {
        return Err(Error::InsufficientData(
            "inputs contain no data rows".into(),
        ));
    }

    fs::create_dir_all(&args.out_dir)?;

    let span = |points: &[(f64, f64)]| {
        let min = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        (min, max)
    };
    let baseline_for = |label: &str| {
        if label.contains("nn4") {
            baseline_threshold(Connectivity::Nn4)
        } else {
            baseline_threshold(Connectivity::Nnn8)
        }
    };

    if !d_groups.is_empty() {
        let mut plot = Plot {
            title: "Critical threshold vs fractal dimensionality".into(),
            x_label: "dimensionality D".into(),
            y_label: "critical probability Pc".into(),
            ..Plot::default()
        };
        for (label, points) in &d_groups {
            let baseline = baseline_for(label);
            if let Ok(fit) = fit_exponent(points, baseline) {
                let t = fit.coefficients[0];
                let (lo, hi) = span(points);
                plot.curves.push(Curve {
                    label: format!("{label} fit"),
                    points: sample_curve(
                        |d| predict_pc_from_d(d, baseline, t).unwrap_or(f64::NAN),
                        lo,
                        hi,
                        100,
                    ),
                });
            }
            plot.series.push(Series {
                label: label.clone(),
                points: points.clone(),
            });
        }
        let p = args.out_dir.join("pc_vs_d.svg");
        fs::write(&p, render_svg(&plot)?)?;
        println!("wrote {}", p.display());
    }
    if !q_groups.is_empty() {
        let mut plot = Plot {
            title: "Critical threshold vs connectivity index".into(),
            x_label: "connectivity Q".into(),
            y_label: "critical probability Pc".into(),
            ..Plot::default()
        };
        for (label, points) in &q_groups {
            if let Ok(fit) = fit_quadratic(points) {
                let coeffs = [
                    fit.coefficients[0],
                    fit.coefficients[1],
                    fit.coefficients[2],
                ];
                let (lo, hi) = span(points);
                plot.curves.push(Curve {
                    label: format!("{label} fit"),
                    points: sample_curve(|q| predict_pc_from_q(q, &coeffs), lo, hi, 100),
                });
            }
            plot.series.push(Series {
                label: label.clone(),
                points: points.clone(),
            });
        }
        let p = args.out_dir.join("pc_vs_q.svg");
        fs::write(&p, render_svg(&plot)?)?;
        println!("wrote {}", p.display());
    }
    Ok(())
}
