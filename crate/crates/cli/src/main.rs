use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use exslope::census::{
    batch_verify, infer_transform, mini_dataset, mini_report, parse_csv, verify_datasets, write_csv, CensusRecord,
    CensusReport, FileKind,
};
use exslope::contfrac::{
    cf_equivalent, cf_eval, expansion_of, ht_boundary_slopes, linking_number, two_bridge_equivalent, ContFrac, Fraction,
};
use exslope::cs_norm::{lattice_contradiction, width_at_one, NormData, Parity};
use exslope::dataset::SlopeDataset;
use exslope::families::{catalog, generate, two_bridge_boundary_slopes, FamilyDataset, KnotFamily};
use exslope::slope::Slope;
use exslope::sweep::Exec;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "exslope",
    version,
    about = "Exceptional-surgery and boundary-slope checks for hyperbolic knots"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Negate every slope on ingest (reflect the knot).
    #[arg(long, global = true)]
    mirror: bool,
    /// Only print summaries.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fractions and two-bridge links.
    #[command(subcommand)]
    Cf(CfCommand),
    /// Slope table of a knot family, e.g. `pretzel:-2,3,9`, `twist:3,+`, `torti:3/8,5`.
    Families {
        /// Family descriptor; omit with --list.
        descriptor: Option<String>,
        /// List every tabulated family descriptor.
        #[arg(long)]
        list: bool,
    },
    /// Check both conjectures on datasets.
    Verify(VerifyArgs),
    /// Census files.
    #[command(subcommand)]
    Census(CensusCommand),
    /// Lattice-point width check with the Culler-Shalen norm.
    Norm(NormArgs),
}

#[derive(Subcommand)]
enum CfCommand {
    /// Value of a continued fraction such as `[3,5]`.
    Eval { cf: String },
    /// Simple (all-positive) expansion of a fraction or continued fraction.
    Simplify { value: String },
    /// Whether two fractions or continued fractions give the same two-bridge link.
    Equiv { a: String, b: String },
    /// Boundary slopes of the two-bridge knot.
    HtSlopes {
        value: String,
        /// Report the expansion formula's own sign convention.
        #[arg(long)]
        raw: bool,
    },
    /// Linking number of the two-bridge link.
    Lk { value: String },
}

#[derive(Args)]
struct VerifyArgs {
    /// Family descriptors to generate and check.
    #[arg(long = "family")]
    families: Vec<String>,
    /// Check every tabulated family.
    #[arg(long)]
    catalog: bool,
    /// Census CSV file of the given --kind.
    #[arg(long)]
    csv: Option<String>,
    #[arg(long, default_value = "verified")]
    kind: String,
    /// JSON dataset files (`-` for standard input).
    files: Vec<String>,
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Parse a census CSV file and report bad rows.
    Ingest {
        file: String,
        #[arg(long)]
        kind: String,
    },
    /// Infer the SnapPy-to-standard coordinate change of a record.
    Transform {
        name: String,
        /// Pairs `(snappy,std);(snappy,std)`; otherwise taken from the record.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value = "verified")]
        kind: String,
    },
    /// Verify a census file, or the embedded rows plus every family table.
    Report {
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value = "verified")]
        kind: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Integer,
    Half,
}

#[derive(Args)]
struct NormArgs {
    /// Minimal norm.
    #[arg(long)]
    s: String,
    /// Meridian norm.
    #[arg(long)]
    m: String,
    /// Norm of the filling class.
    #[arg(long)]
    t: String,
    /// Greatest finite boundary slope (least, with --below).
    #[arg(long = "rM", alias = "r-max", allow_hyphen_values = true)]
    r_max: String,
    /// Filling numerator: slope `n` or `n/2`.
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, value_enum, default_value_t = ParityArg::Integer)]
    parity: ParityArg,
    /// The filling slope lies below the least boundary slope.
    #[arg(long)]
    below: bool,
}

/// Failures that map to exit code 1 rather than 2.
struct Verdicts {
    fails: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(v) => {
            print!("{out}");
            let _ = io::stdout().flush();
            if v.fails {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn ok() -> Result<Verdicts> {
    Ok(Verdicts { fails: false })
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn no_csv(f: Format, what: &str) -> Result<()> {
    if f == Format::Csv {
        bail!("csv output is only available for census data, not {what}");
    }
    Ok(())
}

/// A fraction written `b/a` or as a continued fraction `[..]`.
fn parse_value(s: &str) -> Result<(Fraction, Option<ContFrac>)> {
    if s.trim_start().starts_with('[') {
        let cf: ContFrac = s.parse()?;
        Ok((cf_eval(&cf)?, Some(cf)))
    } else {
        Ok((s.parse()?, None))
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<Verdicts> {
    match &cli.command {
        Command::Cf(c) => run_cf(cli, c, out),
        Command::Families { descriptor, list } => run_families(cli, descriptor.as_deref(), *list, out),
        Command::Verify(a) => run_verify(cli, a, out),
        Command::Census(c) => run_census(cli, c, out),
        Command::Norm(a) => run_norm(cli, a, out),
    }
}

fn run_cf(cli: &Cli, c: &CfCommand, out: &mut String) -> Result<Verdicts> {
    no_csv(cli.format, "continued fractions")?;
    let json = cli.format == Format::Json;
    let flip = |f: Fraction| if cli.mirror { f.mirror() } else { f };
    match c {
        CfCommand::Eval { cf } => {
            let mut cf: ContFrac = cf.parse()?;
            if cli.mirror {
                cf = cf.mirror();
            }
            let v = cf_eval(&cf)?;
            *out += &if json {
                to_json(&json!({ "cf": cf, "value": v }))?
            } else {
                format!("{v}\n")
            };
        }
        CfCommand::Simplify { value } => {
            let (f, _) = parse_value(value)?;
            let f = flip(f);
            let cf = expansion_of(f)?;
            *out += &if json {
                to_json(&json!({ "value": f, "cf": cf }))?
            } else {
                format!("{cf}\n")
            };
        }
        CfCommand::Equiv { a, b } => {
            let (fa, ca) = parse_value(a)?;
            let (fb, cb) = parse_value(b)?;
            let eq = match (ca, cb) {
                (Some(x), Some(y)) if x.is_simple() && y.is_simple() => {
                    cf_equivalent(&x, &y).unwrap_or_else(|_| two_bridge_equivalent(fa, fb))
                }
                _ => two_bridge_equivalent(fa, fb),
            };
            *out += &if json {
                to_json(&json!({ "a": fa, "b": fb, "equivalent": eq }))?
            } else {
                format!("{eq}\n")
            };
        }
        CfCommand::HtSlopes { value, raw } => {
            let (f, _) = parse_value(value)?;
            let f = flip(f);
            let h = if *raw {
                ht_boundary_slopes(f)?
            } else {
                two_bridge_boundary_slopes(f)?
            };
            let list: Vec<String> = h.slopes.iter().map(|s| s.to_string()).collect();
            *out += &if json {
                to_json(&json!({ "value": f, "slopes": h.slopes, "all_even": h.all_even.1, "raw": raw }))?
            } else {
                format!("[{}]\n", list.join(", "))
            };
        }
        CfCommand::Lk { value } => {
            let (f, cf) = parse_value(value)?;
            let mut cf = match cf {
                Some(cf) => cf,
                None => expansion_of(f)?,
            };
            if cli.mirror {
                cf = cf.mirror();
            }
            let lk = linking_number(&cf)?;
            *out += &if json {
                to_json(&json!({ "cf": cf, "linking_number": lk }))?
            } else {
                format!("{lk}\n")
            };
        }
    }
    ok()
}

#[derive(Serialize)]
struct FamilyOutput<'a> {
    #[serde(flatten)]
    family: &'a FamilyDataset,
    table: String,
    dataset: SlopeDataset,
}

fn run_families(cli: &Cli, descriptor: Option<&str>, list: bool, out: &mut String) -> Result<Verdicts> {
    no_csv(cli.format, "family tables")?;
    if list {
        let names: Vec<String> = catalog().iter().map(|k| k.to_string()).collect();
        *out += &if cli.format == Format::Json {
            to_json(&names)?
        } else {
            names.join("\n") + "\n"
        };
        return ok();
    }
    let descriptor = descriptor.ok_or_else(|| anyhow!("a family descriptor or --list is required"))?;
    let k: KnotFamily = descriptor.parse()?;
    let mut d = generate(&k)?;
    if cli.mirror {
        d = d.mirror();
    }
    if cli.format == Format::Json {
        let dataset = d.to_dataset()?;
        *out += &to_json(&FamilyOutput {
            family: &d,
            table: d.table_string(),
            dataset,
        })?;
    } else {
        *out += &format!("{}: {}\n", d.name, d.table_string());
        *out += &format!("{}\n", d.annotated_list());
        if !cli.quiet {
            for n in &d.notes {
                *out += &format!("# {n}\n");
            }
        }
    }
    ok()
}

/// JSON inputs accepted by `verify`: one dataset, a list, or the output of
/// `families --format json`.
#[derive(Deserialize)]
#[serde(untagged)]
enum DatasetInput {
    Many(Vec<SlopeDataset>),
    Family { dataset: SlopeDataset },
    One(SlopeDataset),
}

fn emit_report(cli: &Cli, report: &CensusReport, out: &mut String) -> Result<Verdicts> {
    match cli.format {
        Format::Json => *out += &to_json(report)?,
        Format::Csv => {
            *out += "name,conj1,conj1_b1,conj1_b2,conj6,case,conj6_b1,conj6_b2\n";
            let pair = |w: Option<(Slope, Slope)>| {
                w.map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()))
            };
            for r in &report.records {
                let (a1, a2) = pair(r.conj1.witnesses);
                let (b1, b2) = pair(r.conj6.witnesses);
                let case = r.conj6.case_id.map(|c| c.to_string()).unwrap_or_default();
                *out += &format!(
                    "{},{:?},{a1},{a2},{:?},{case},{b1},{b2}\n",
                    r.name, r.conj1.status, r.conj6.status
                );
            }
        }
        Format::Text => {
            if !cli.quiet {
                for r in &report.records {
                    *out += &r.line();
                    *out += "\n";
                }
            }
            *out += &report.summary();
            *out += "\n";
            for e in &report.errors {
                *out += &format!("error: {e}\n");
            }
        }
    }
    Ok(Verdicts {
        fails: report.has_fails(),
    })
}

fn read_census(path: &str, kind: &str, mirror: bool) -> Result<(Vec<CensusRecord>, Vec<String>)> {
    let kind: FileKind = kind.parse()?;
    let (mut records, errors) = parse_csv(&read_input(path)?, kind);
    if mirror {
        records = records.iter().map(|r| r.mirror()).collect();
    }
    Ok((records, errors.iter().map(|e| e.to_string()).collect()))
}

fn run_verify(cli: &Cli, a: &VerifyArgs, out: &mut String) -> Result<Verdicts> {
    let mut datasets = vec![];
    let mut families: Vec<KnotFamily> = a.families.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    if a.catalog {
        families.extend(
            catalog()
                .into_iter()
                .filter(|k| !matches!(k, KnotFamily::TwoBridgeLinkComponent(_))),
        );
    }
    for k in &families {
        datasets.push(generate(k)?.to_dataset()?);
    }
    for f in &a.files {
        let text = read_input(f)?;
        let input: DatasetInput = serde_json::from_str(&text).with_context(|| format!("parsing {f}"))?;
        let items = match input {
            DatasetInput::Many(v) => v,
            DatasetInput::Family { dataset } | DatasetInput::One(dataset) => vec![dataset],
        };
        for d in items {
            datasets.push(d.normalized()?);
        }
    }
    if cli.mirror {
        datasets = datasets.iter().map(|d| d.mirror()).collect();
    }
    let mut census_errors = vec![];
    if let Some(path) = &a.csv {
        let (records, errors) = read_census(path, &a.kind, cli.mirror)?;
        census_errors = errors;
        let r = batch_verify(&records, Exec::default());
        census_errors.extend(r.errors);
        for rec in &records {
            if let Ok(d) = rec.to_dataset(exslope::census::Coords::SnapPy) {
                datasets.push(d);
            }
        }
    }
    if datasets.is_empty() && census_errors.is_empty() {
        bail!("nothing to verify: give --family, --catalog, --csv or JSON files");
    }
    let mut report = verify_datasets(&datasets, Exec::default());
    report.errors = census_errors;
    let v = emit_report(cli, &report, out)?;
    if !report.errors.is_empty() {
        bail!("{} input rows could not be read", report.errors.len());
    }
    Ok(v)
}

fn parse_pairs(s: &str) -> Result<Vec<(Slope, Slope)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let inner = p
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| anyhow!("pair {p:?} is not of the form (snappy,std)"))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| anyhow!("pair {p:?} needs two slopes"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn run_census(cli: &Cli, c: &CensusCommand, out: &mut String) -> Result<Verdicts> {
    match c {
        CensusCommand::Ingest { file, kind } => {
            let (records, errors) = read_census(file, kind, cli.mirror)?;
            match cli.format {
                Format::Json => *out += &to_json(&json!({ "records": records, "errors": errors }))?,
                Format::Csv => *out += &write_csv(&records, kind.parse()?)?,
                Format::Text => {
                    if !cli.quiet {
                        for r in &records {
                            let t = r.transform().map(|t| t.to_string()).unwrap_or_else(|e| e.to_string());
                            *out += &format!("{}  {} slopes  {t}\n", r.name, r.std.len());
                        }
                    }
                    *out += &format!("{} records, {} errors\n", records.len(), errors.len());
                    for e in &errors {
                        *out += &format!("error: {e}\n");
                    }
                }
            }
            if !errors.is_empty() {
                bail!("{} rows could not be read", errors.len());
            }
            ok()
        }
        CensusCommand::Transform {
            name,
            pairs,
            file,
            kind,
        } => {
            no_csv(cli.format, "transforms")?;
            let mut pairs = match pairs {
                Some(p) => parse_pairs(p)?,
                None => {
                    let records = match file {
                        Some(f) => read_census(f, kind, false)?.0,
                        None => mini_dataset(),
                    };
                    let r = records
                        .iter()
                        .find(|r| &r.name == name)
                        .ok_or_else(|| anyhow!("no record named {name}"))?;
                    if r.duplicate_coords {
                        bail!("{name} repeats its standard coordinates; no transform to infer");
                    }
                    r.snappy.iter().zip(&r.std).map(|(x, y)| (x.slope, y.slope)).collect()
                }
            };
            if cli.mirror {
                pairs = pairs.iter().map(|(x, y)| (x.mirror(), y.mirror())).collect();
            }
            let t = infer_transform(&pairs)?;
            *out += &if cli.format == Format::Json {
                to_json(&json!({ "name": name, "epsilon": t.epsilon, "offset": t.offset, "text": t.to_string() }))?
            } else {
                format!("{t}\n")
            };
            ok()
        }
        CensusCommand::Report { file, kind } => {
            let report = match file {
                Some(f) => {
                    let (records, errors) = read_census(f, kind, cli.mirror)?;
                    let mut r = batch_verify(&records, Exec::default());
                    r.errors.splice(0..0, errors);
                    r
                }
                None if cli.mirror => {
                    let records: Vec<CensusRecord> = mini_dataset().iter().map(|r| r.mirror()).collect();
                    let mut ds = vec![];
                    for r in &records {
                        ds.push(r.to_dataset(exslope::census::Coords::SnapPy)?);
                    }
                    for k in catalog()
                        .iter()
                        .filter(|k| !matches!(k, KnotFamily::TwoBridgeLinkComponent(_)))
                    {
                        ds.push(generate(k)?.to_dataset()?.mirror());
                    }
                    verify_datasets(&ds, Exec::default())
                }
                None => mini_report(Exec::default()),
            };
            let v = emit_report(cli, &report, out)?;
            if !report.errors.is_empty() {
                bail!("{} rows could not be read", report.errors.len());
            }
            Ok(v)
        }
    }
}

fn rational(s: &str, what: &str) -> Result<Ratio<i64>> {
    s.trim()
        .parse()
        .map_err(|_| anyhow!("{what} must be a rational like 17/4, got {s:?}"))
}

fn run_norm(cli: &Cli, a: &NormArgs, out: &mut String) -> Result<Verdicts> {
    no_csv(cli.format, "norm checks")?;
    let (s, m, t) = (rational(&a.s, "--s")?, rational(&a.m, "--m")?, rational(&a.t, "--t")?);
    let mut r: Slope = a.r_max.parse()?;
    let mut n = a.n;
    if cli.mirror {
        r = r.mirror();
        n = -n;
    }
    let parity = match a.parity {
        ParityArg::Integer => Parity::IntegerSlope,
        ParityArg::Half => Parity::HalfIntegerSlope,
    };
    let d = if a.below {
        NormData::below(s, m, t, r, n, parity)?
    } else {
        NormData::new(s, m, t, r, n, parity)?
    };
    let w = width_at_one(&d);
    let contradiction = lattice_contradiction(&d);
    *out += &if cli.format == Format::Json {
        to_json(&json!({ "data": d, "width_at_one": w.to_string(), "contradiction": contradiction }))?
    } else {
        format!("w(1) = {w}\ncontradiction: {contradiction}\n")
    };
    ok()
}
