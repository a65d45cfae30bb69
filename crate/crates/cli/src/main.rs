use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use origami::arith::{self, Family, OrbifoldKind, QuadricInstance};
use origami::census::{curve_invariants, cusp_census, cycle_census, word_census};
use origami::io::{self, ExportFormat, InvariantSummary};
use origami::orbit::{self, build_graph, EnumerationMode, Orbit};
use origami::origami::{from_h2_params, monodromy_class, H2Params, StratumSignature};
use origami::sl2z::Alphabet;
use origami::verify::{self, Suite, VerifyConfig};
use origami::{Error, Origami, Result};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "origami", version, about = "SL(2,Z)-orbits of square-tiled surfaces and their invariants")]
struct Cli {
    /// Size of the rayon thread pool.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate orbits and write them to the cache directory.
    Orbit(Select),
    /// Export orbit graphs as DOT, JSON or CSV.
    Graph {
        #[command(flatten)]
        select: Select,
        /// Write DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Word, cusp or cycle census as CSV.
    Census {
        #[command(flatten)]
        select: Select,
        #[arg(long, value_enum, default_value = "words")]
        kind: CensusKind,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_word_len: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// HLK, monodromy and Teichmüller-curve invariants as JSON.
    Invariants {
        #[command(flatten)]
        select: Select,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Arithmetic tables: class numbers, orbifold sets, cusp counts, predicted sizes, quadric points.
    Arith {
        #[arg(long, value_enum)]
        table: Table,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        /// Diagonal coefficients for the quadric table, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<i64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print PASS/FAIL per criterion.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Caps the H(2) ranges.
        #[arg(long)]
        max_n: Option<usize>,
        /// Include brute-force enumerations at n = 10.
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = orbit::DEFAULT_BRUTE_CAP)]
        brute_cap: usize,
        /// Print only the PASS/FAIL lines.
        #[arg(long, short)]
        quiet: bool,
    },
}

#[derive(Args, Clone)]
struct Select {
    #[arg(long, value_enum, default_value = "H2")]
    stratum: StratumArg,
    #[arg(long)]
    n: Option<usize>,
    /// Surface parameters `(w1,h1,t1,w2,h2,t2)` or cycle notation `(..),(..)`.
    #[arg(long)]
    seed: Option<String>,
    /// Keep only orbits with this label.
    #[arg(long)]
    orbit: Option<String>,
    #[arg(long, default_value = "parabolic")]
    generators: Alphabet,
    #[arg(long, default_value_t = orbit::DEFAULT_BRUTE_CAP)]
    brute_cap: usize,
    #[arg(long, env = "ORIGAMI_CACHE_DIR", default_value = "origami-cache")]
    cache_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum StratumArg {
    #[value(name = "H2")]
    H2,
    #[value(name = "H11")]
    H11,
    #[value(name = "H4")]
    H4,
    #[value(name = "H4prym")]
    H4Prym,
    #[value(name = "H6prym")]
    H6Prym,
}

impl StratumArg {
    fn signature(self) -> StratumSignature {
        StratumSignature::new(match self {
            StratumArg::H2 => vec![2],
            StratumArg::H11 => vec![1, 1],
            StratumArg::H4 | StratumArg::H4Prym => vec![4],
            StratumArg::H6Prym => vec![6],
        })
    }

    fn prym_only(self) -> bool {
        matches!(self, StratumArg::H4Prym | StratumArg::H6Prym)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusKind {
    Words,
    Cusps,
    Cycles,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    ClassNumbers,
    H3,
    H2sq,
    Cusps,
    Sizes,
    Quadric,
}

fn usage(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn parse_seed(s: &str) -> Result<Origami> {
    match H2Params::parse(s) {
        Ok(p) => from_h2_params(p),
        Err(_) => Origami::parse(s, None),
    }
}

/// Orbits named by the selection, each with the seed its cache is keyed by.
fn select_orbits(sel: &Select) -> Result<Vec<(Orbit, Origami)>> {
    let stratum = sel.stratum.signature();
    let mut found = match &sel.seed {
        Some(s) => {
            let seed = parse_seed(s)?;
            if seed.stratum()? != stratum {
                return Err(usage(&format!("seed lies in {}, not {stratum}", seed.stratum()?)));
            }
            if sel.n.is_some_and(|n| n != seed.n()) {
                return Err(usage(&format!("seed has {} squares, --n asks for {}", seed.n(), sel.n.unwrap_or(0))));
            }
            let (mut o, _) = io::cached_orbit(Some(&sel.cache_dir), &seed, Alphabet::Parabolic)?;
            orbit::label_orbits(std::slice::from_mut(&mut o));
            if stratum.zero_orders == [2] && seed.n() % 2 == 1 && seed.n() >= 5 {
                o.label = Some(if seed.hlk()?.l0 == 0 { "A" } else { "B" }.to_string());
            }
            vec![(o, seed)]
        }
        None => {
            let n = sel.n.ok_or_else(|| usage("--n or --seed is required"))?;
            let mode = if stratum.zero_orders == [2] { EnumerationMode::Seeded } else { EnumerationMode::Brute };
            let orbits = orbit::enumerate_stratum(n, &stratum, mode, sel.brute_cap)?;
            let mut out = Vec::new();
            for o in orbits {
                let seed = o.origami(0).clone();
                let path = sel.cache_dir.join(io::CacheHeader::for_seed(&seed, &stratum, Alphabet::Parabolic).file_name());
                io::write_orbit_cache(&path, &o, &seed)?;
                out.push((o, seed));
            }
            out
        }
    };
    if sel.stratum.prym_only() {
        found.retain(|(o, _)| o.label.as_deref().is_some_and(|l| l.starts_with("Prym")));
    }
    if let Some(want) = &sel.orbit {
        found.retain(|(o, _)| o.label.as_deref() == Some(want.as_str()));
    }
    for (o, _) in &mut found {
        if o.alphabet != sel.generators {
            *o = o.with_alphabet(sel.generators);
        }
    }
    Ok(found)
}

fn label(o: &Orbit) -> String {
    format!("{} n={} {}", o.stratum, o.n(), o.label.as_deref().unwrap_or("orbit"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => io::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `path` for a single orbit, `stem-<label>.ext` otherwise.
fn per_orbit_path(path: &Path, o: &Orbit, many: bool) -> PathBuf {
    if !many {
        return path.to_path_buf();
    }
    let tag: String = o.label.as_deref().unwrap_or("orbit").chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{tag}.{ext}"),
        None => format!("{stem}-{tag}"),
    };
    path.with_file_name(name)
}

#[derive(Serialize)]
struct SizeRow {
    family: String,
    size: Option<u64>,
    error: Option<String>,
}

fn arith_table(table: Table, d: Option<i64>, n: Option<usize>, coeffs: &[i64], target: Option<i64>, format: Format) -> Result<String> {
    let need_d = || d.ok_or_else(|| usage("--d is required for this table"));
    let need_n = || n.ok_or_else(|| usage("--n is required for this table"));
    let json = matches!(format, Format::Json);
    match table {
        Table::ClassNumbers => {
            let d = need_d()?;
            let rows: Vec<_> = if d < 0 {
                vec![arith::class_numbers(d)?]
            } else {
                (3..=d).map(|k| -k).filter(|k| k.rem_euclid(4) <= 1).map(arith::class_numbers).collect::<Result<_>>()?
            };
            if json { io::summary_json(&rows) } else { io::class_number_csv(&rows) }
        }
        Table::H3 | Table::H2sq => {
            let kind = if matches!(table, Table::H3) { OrbifoldKind::H3 } else { OrbifoldKind::H2Sq };
            let set = arith::orbifold_sets(need_d()?, kind)?;
            if json {
                io::summary_json(&set)
            } else {
                let rows: Vec<Vec<i64>> = set.triples.iter().map(|&(a, b, c)| vec![a, b, c]).collect();
                io::solutions_csv(&["a", "b", "c"], &rows)
            }
        }
        Table::Cusps => {
            let n = need_n()?;
            let rows: Vec<_> = (1..=n).map(|w| arith::t_fixed_count_h2(n, w)).filter(|r| r.as_ref().map_or(true, |c| c.count > 0)).collect::<Result<_>>()?;
            if json { io::summary_json(&rows) } else { io::cusp_count_csv(&rows) }
        }
        Table::Sizes => {
            let mut families = Vec::new();
            if let Some(n) = n {
                let n = n as u64;
                families.extend([Family::H2A { n }, Family::H2B { n }, Family::ZmiaikouAlt { n }, Family::ZmiaikouSym { n }]);
                if let Some(d) = d {
                    families.extend((0..2).map(|epsilon| Family::Duryev { d: d as u64, n, epsilon }));
                }
            }
            if let Some(d) = d {
                families.extend((0..2).map(|epsilon| Family::KappesMoller { d: d as u64, epsilon }));
            }
            if families.is_empty() {
                return Err(usage("--n or --d is required for this table"));
            }
            let rows: Vec<SizeRow> = families
                .into_iter()
                .map(|f| match arith::predicted_orbit_size(f) {
                    Ok(s) => SizeRow { family: format!("{f:?}"), size: Some(s), error: None },
                    Err(e) => SizeRow { family: format!("{f:?}"), size: None, error: Some(e.to_string()) },
                })
                .collect();
            if json {
                io::summary_json(&rows)
            } else {
                let mut s = String::from("family,size,error\n");
                for r in rows {
                    let size = r.size.map(|v| v.to_string()).unwrap_or_default();
                    s.push_str(&format!("\"{}\",{size},{}\n", r.family, r.error.unwrap_or_default()));
                }
                Ok(s)
            }
        }
        Table::Quadric => {
            let target = target.ok_or_else(|| usage("--target is required for the quadric table"))?;
            if coeffs.is_empty() {
                return Err(usage("--coeffs is required for the quadric table"));
            }
            let q = QuadricInstance::diagonal(coeffs, target, false);
            let rows = arith::quadric_solutions(&q);
            if json {
                io::summary_json(&rows)
            } else {
                let names: Vec<String> = (1..=coeffs.len()).map(|i| format!("x{i}")).collect();
                let header: Vec<&str> = names.iter().map(String::as_str).collect();
                io::solutions_csv(&header, &rows)
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global().map_err(|e| Error::Format(e.to_string()))?;
    }
    match cli.command {
        Command::Orbit(sel) => {
            for (o, seed) in select_orbits(&sel)? {
                let path = sel.cache_dir.join(io::CacheHeader::for_seed(&seed, &o.stratum, Alphabet::Parabolic).file_name());
                println!("{}: {} members, cache {}", label(&o), o.len(), path.display());
            }
        }
        Command::Graph { select, dot, format, out } => {
            let orbits = select_orbits(&select)?;
            if orbits.is_empty() {
                return Err(Error::EmptyOrbit);
            }
            let many = orbits.len() > 1;
            for (o, _) in &orbits {
                if let Some(p) = &dot {
                    io::write_text(&per_orbit_path(p, o, many), &io::export_graph(o, ExportFormat::Dot)?)?;
                }
                if dot.is_none() || out.is_some() || format.is_some() {
                    let f = match format.unwrap_or(Format::Json) {
                        Format::Json => ExportFormat::Json,
                        Format::Csv => ExportFormat::Csv,
                        Format::Dot => ExportFormat::Dot,
                    };
                    let text = io::export_graph(o, f)?;
                    match &out {
                        Some(p) => io::write_text(&per_orbit_path(p, o, many), &text)?,
                        None => print!("{text}"),
                    }
                }
            }
        }
        Command::Census { select, kind, max_word_len, out } => {
            let orbits = select_orbits(&select)?;
            let max = max_word_len as usize;
            let text = match kind {
                CensusKind::Words => io::word_census_csv(&orbits.iter().map(|(o, _)| (label(o), word_census(o, max))).collect::<Vec<_>>())?,
                CensusKind::Cusps => io::cusp_csv(&orbits.iter().map(|(o, _)| Ok((label(o), cusp_census(o)?))).collect::<Result<Vec<_>>>()?)?,
                CensusKind::Cycles => io::cycle_csv(&orbits.iter().map(|(o, _)| Ok((label(o), cycle_census(&build_graph(o)?, max)))).collect::<Result<Vec<_>>>()?)?,
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Invariants { select, out } => {
            let rows: Vec<InvariantSummary> = select_orbits(&select)?
                .iter()
                .map(|(o, _)| {
                    let x = o.origami(0);
                    let (curve, curve_error) = match curve_invariants(o) {
                        Ok(c) => (Some(c), None),
                        Err(e) => (None, Some(error_text(&e))),
                    };
                    InvariantSummary {
                        orbit: label(o),
                        n: o.n(),
                        stratum: o.stratum.label(),
                        size: o.len(),
                        hlk: x.hlk().ok().map(|h| h.to_string()),
                        monodromy: Some(format!("{:?}", monodromy_class(x).kind)),
                        curve,
                        curve_error,
                    }
                })
                .collect();
            emit(out.as_deref(), &io::summary_json(&rows)?)?;
        }
        Command::Arith { table, d, n, coeffs, target, format, out } => {
            emit(out.as_deref(), &arith_table(table, d, n, &coeffs, target, format)?)?;
        }
        Command::Verify { suite, max_n, slow, brute_cap, quiet } => {
            let mut cfg = VerifyConfig { brute_cap, ..VerifyConfig::default() };
            if let Some(n) = max_n {
                cfg = cfg.with_max_n(n);
            }
            if !slow {
                cfg = cfg.with_brute_limit(9);
            }
            let results = verify::run_suite(suite, &cfg);
            for r in &results {
                println!("{r}");
                if !quiet {
                    for l in &r.lines {
                        println!("    {l}");
                    }
                }
            }
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} checks pass", results.len());
            return Ok(passed == results.len());
        }
    }
    Ok(true)
}

/// `Variant: message`, naming the library error.
fn error_text(e: &Error) -> String {
    let debug = format!("{e:?}");
    let name = debug.split(|c: char| !c.is_ascii_alphanumeric()).next().unwrap_or("Error");
    format!("{name}: {e}")
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {}", error_text(&e));
            ExitCode::from(2)
        }
    }
}
