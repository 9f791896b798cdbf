//! Command-line front end: spectra, energies, partition scans,
//! edge-deletion sweeps, and the built-in verification suite, with JSON,
//! CSV, or table output.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when the verification
//! suite reports a failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use harary::closed_form;
use harary::eigen::{eig_sym, EnergyReport, Method, Spectrum};
use harary::graph::{Graph, PartitionSpec};
use harary::json::to_canonical_string;
use harary::matrix::{self, MatrixKind};
use harary::quotient;
use harary::scan::{self, Family};
use harary::verify;
use harary::{Error, Result};

#[derive(Parser)]
#[command(
    name = "harary",
    version,
    about = "Spectra and energies of distance-derived graph matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the eigenvalues of one graph's matrix, descending.
    ///
    /// CSV columns: index,value
    Spectrum(GraphArgs),
    /// Print the energy report of one graph's matrix.
    ///
    /// CSV columns: matrix,n,method,energy,spectral_radius,negative_sum,
    /// positive,zero,negative
    Energy(GraphArgs),
    /// Enumerate every partition of n vertices into k parts and flag the
    /// reciprocal-distance energy extremes.
    ///
    /// CSV columns: parts,energy,is_min,is_max
    Scan {
        /// Number of vertices
        #[arg(long)]
        n: usize,
        /// Number of parts (2 <= k <= n-1)
        #[arg(long)]
        k: usize,
        /// Output format
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Delete one edge across a parameterized graph family and report the
    /// reciprocal-distance energy change.
    ///
    /// CSV columns: the family parameters, then energy_before,
    /// energy_after,delta,sign,dense_before,dense_after
    Sweep {
        /// Graph family: kqq, kmn or kpqr
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Smallest parameter value
        #[arg(long)]
        from: usize,
        /// Largest parameter value
        #[arg(long)]
        to: usize,
        /// Output format
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the numbered verification checks (all ten by default). Exits
    /// with code 3 if any check fails.
    ///
    /// CSV columns: id,name,passed,detail
    Verify {
        /// Run a single check by id (1-10)
        #[arg(long)]
        only: Option<usize>,
        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Comma-separated part sizes of a complete multipartite graph
    #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
    parts: Option<String>,
    /// Edge-list file: one "u v" pair per line, 0-indexed, '#' comments
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Matrix family: rd, d, a, seidel, cd or rcd
    #[arg(long, default_value = "rd", value_parser = parse_matrix)]
    matrix: MatrixKind,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Override the eigenvalue sign-classification tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

fn parse_matrix(s: &str) -> Result<MatrixKind> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family> {
    s.parse()
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Spectrum(args) => spectrum_cmd(&args)?,
        Command::Energy(args) => energy_cmd(&args)?,
        Command::Scan { n, k, format } => scan_cmd(n, k, format)?,
        Command::Sweep { family, from, to, format } => sweep_cmd(family, from, to, format)?,
        Command::Verify { only, format } => return verify_cmd(only, format),
    }
    Ok(ExitCode::SUCCESS)
}

enum Source {
    Parts(PartitionSpec),
    Graph(Graph),
}

fn load_source(args: &GraphArgs) -> Result<Source> {
    if let Some(text) = &args.parts {
        Ok(Source::Parts(PartitionSpec::parse(text)?))
    } else if let Some(path) = &args.edges {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Ok(Source::Graph(Graph::from_edge_list(&text)?))
    } else {
        unreachable!("clap enforces exactly one graph source")
    }
}

fn dense_spectrum(g: &Graph, kind: MatrixKind) -> Result<Spectrum> {
    let dm = g.apsp()?;
    eig_sym(&matrix::build(kind, g, &dm))
}

/// Full spectrum through the block/quotient assembly; valid for any
/// complete multipartite graph with at least two parts.
fn quotient_spectrum(parts: &PartitionSpec, kind: MatrixKind) -> Result<Spectrum> {
    let (blocks, coupling) = quotient::multipartite_blocks(parts, kind);
    let bs = quotient::validate_blocks(blocks, coupling)?;
    quotient::assemble_spectrum(&bs)
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Dense => "dense",
        Method::Quotient => "quotient",
        Method::ClosedForm => "closed_form",
    }
}

/// Fixed-width float form shared by the CSV output.
fn float_field(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_out() -> csv::Writer<std::io::Stdout> {
    csv::Writer::from_writer(std::io::stdout())
}

fn spectrum_cmd(args: &GraphArgs) -> Result<()> {
    let (n, method, spectrum) = match load_source(args)? {
        Source::Parts(parts) if parts.k() >= 2 => {
            (parts.n(), Method::Quotient, quotient_spectrum(&parts, args.matrix)?)
        }
        Source::Parts(parts) => {
            let g = Graph::complete_multipartite(&parts)?;
            let s = dense_spectrum(&g, args.matrix)?;
            (g.n(), Method::Dense, s)
        }
        Source::Graph(g) => {
            let s = dense_spectrum(&g, args.matrix)?;
            (g.n(), Method::Dense, s)
        }
    };
    match args.format {
        Format::Json => {
            let value = json!({
                "matrix": args.matrix.name(),
                "n": n,
                "method": method_name(method),
                "values": spectrum.values(),
            });
            println!("{}", to_canonical_string(&value));
        }
        Format::Csv => {
            let mut w = csv_out();
            w.write_record(["index", "value"]).expect("stdout");
            for (i, v) in spectrum.values().iter().enumerate() {
                w.write_record([i.to_string(), float_field(*v)]).expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Table => {
            println!("{} matrix on {} vertices ({})", args.matrix.name(), n, method_name(method));
            for (i, v) in spectrum.values().iter().enumerate() {
                println!("{i:>4}  {v:>18.10}");
            }
        }
    }
    Ok(())
}

fn energy_cmd(args: &GraphArgs) -> Result<()> {
    let (n, report) = match load_source(args)? {
        Source::Parts(parts) => match closed_form::multipartite_energy(&parts, args.matrix) {
            Ok(energy) => {
                let spectrum = quotient_spectrum(&parts, args.matrix)?;
                let mut report = EnergyReport::from_spectrum(&spectrum, Method::ClosedForm, args.tol);
                report.energy = energy;
                (parts.n(), report)
            }
            // No closed form for this partition: fall back to the dense path.
            Err(Error::PreconditionViolated(_)) => {
                let g = Graph::complete_multipartite(&parts)?;
                let spectrum = dense_spectrum(&g, args.matrix)?;
                (g.n(), EnergyReport::from_spectrum(&spectrum, Method::Dense, args.tol))
            }
            Err(e) => return Err(e),
        },
        Source::Graph(g) => {
            let spectrum = dense_spectrum(&g, args.matrix)?;
            (g.n(), EnergyReport::from_spectrum(&spectrum, Method::Dense, args.tol))
        }
    };
    match args.format {
        Format::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            let obj = value.as_object_mut().expect("report is an object");
            obj.insert("matrix".into(), json!(args.matrix.name()));
            obj.insert("n".into(), json!(n));
            println!("{}", to_canonical_string(&value));
        }
        Format::Csv => {
            let mut w = csv_out();
            w.write_record([
                "matrix",
                "n",
                "method",
                "energy",
                "spectral_radius",
                "negative_sum",
                "positive",
                "zero",
                "negative",
            ])
            .expect("stdout");
            w.write_record([
                args.matrix.name().to_string(),
                n.to_string(),
                method_name(report.method).to_string(),
                float_field(report.energy),
                float_field(report.spectral_radius),
                float_field(report.negative_sum),
                report.inertia.positive.to_string(),
                report.inertia.zero.to_string(),
                report.inertia.negative.to_string(),
            ])
            .expect("stdout");
            w.flush().expect("stdout");
        }
        Format::Table => {
            println!("matrix           {}", args.matrix.name());
            println!("n                {n}");
            println!("method           {}", method_name(report.method));
            println!("energy           {:.10}", report.energy);
            println!("spectral_radius  {:.10}", report.spectral_radius);
            println!("negative_sum     {:.10}", report.negative_sum);
            println!(
                "inertia          {} positive, {} zero, {} negative",
                report.inertia.positive, report.inertia.zero, report.inertia.negative
            );
        }
    }
    Ok(())
}

fn scan_cmd(n: usize, k: usize, format: Format) -> Result<()> {
    let report = scan::scan(n, k)?;
    let min_energy = report.rows.iter().map(|r| r.energy).fold(f64::INFINITY, f64::min);
    let max_energy = report.rows.iter().map(|r| r.energy).fold(f64::NEG_INFINITY, f64::max);
    match format {
        Format::Json => {
            let value = serde_json::to_value(&report).expect("report serializes");
            println!("{}", to_canonical_string(&value));
        }
        Format::Csv => {
            let mut w = csv_out();
            w.write_record(["parts", "energy", "is_min", "is_max"]).expect("stdout");
            for row in &report.rows {
                w.write_record([
                    row.parts.to_string(),
                    float_field(row.energy),
                    (row.energy == min_energy).to_string(),
                    (row.energy == max_energy).to_string(),
                ])
                .expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Table => {
            println!("partitions of {n} into {k} parts by reciprocal-distance energy");
            for row in &report.rows {
                let mark = if row.energy == min_energy {
                    "  <- min"
                } else if row.energy == max_energy {
                    "  <- max"
                } else {
                    ""
                };
                println!("{:<16} {:>16.10}{mark}", row.parts.to_string(), row.energy);
            }
        }
    }
    Ok(())
}

fn sweep_cmd(family: Family, from: usize, to: usize, format: Format) -> Result<()> {
    let report = scan::edge_deletion_sweep(family, from, to)?;
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            let obj = value.as_object_mut().expect("report is an object");
            obj.insert("param_names".into(), json!(family.param_names()));
            println!("{}", to_canonical_string(&value));
        }
        Format::Csv => {
            let mut w = csv_out();
            let mut header: Vec<String> =
                family.param_names().iter().map(|s| s.to_string()).collect();
            header.extend(
                ["energy_before", "energy_after", "delta", "sign", "dense_before", "dense_after"]
                    .map(String::from),
            );
            w.write_record(&header).expect("stdout");
            for row in &report.rows {
                let mut record: Vec<String> =
                    row.params.iter().map(|p| p.to_string()).collect();
                record.push(float_field(row.energy_before));
                record.push(float_field(row.energy_after));
                record.push(float_field(row.delta));
                record.push(row.sign.to_string());
                record.push(float_field(row.dense_before));
                record.push(float_field(row.dense_after));
                w.write_record(&record).expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Table => {
            println!(
                "{} edge deletion, {} = {from}..{to}",
                family.name(),
                family.param_names().join(",")
            );
            for row in &report.rows {
                let params: Vec<String> = row.params.iter().map(|p| p.to_string()).collect();
                println!(
                    "{:<10} before {:>16.10}  after {:>16.10}  delta {:>13.3e}  sign {:+}",
                    params.join(","),
                    row.energy_before,
                    row.energy_after,
                    row.delta,
                    row.sign
                );
            }
        }
    }
    Ok(())
}

fn verify_cmd(only: Option<usize>, format: Format) -> Result<ExitCode> {
    let reports = match only {
        Some(id) => vec![verify::run(id)?],
        None => verify::run_all(),
    };
    let passed = reports.iter().all(|r| r.passed);
    match format {
        Format::Json => {
            let value = json!({ "checks": reports, "passed": passed });
            println!("{}", to_canonical_string(&value));
        }
        Format::Csv => {
            let mut w = csv_out();
            w.write_record(["id", "name", "passed", "detail"]).expect("stdout");
            for r in &reports {
                w.write_record([
                    r.id.to_string(),
                    r.name.to_string(),
                    r.passed.to_string(),
                    r.detail.clone(),
                ])
                .expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Table => {
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("{:>2} {:<45} {status}: {}", r.id, r.name, r.detail);
            }
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
}
