//! Orbit caches, graph exports and report tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{ClassNumberResult, CuspCount};
use crate::census::{CurveInvariants, Cusp, WordCount};
use crate::error::{Error, Result};
use crate::orbit::{build_graph, enumerate_orbit, Orbit};
use crate::origami::{canonical_form, digest_of, CanonicalOrigami, Origami, StratumSignature};
use crate::sl2z::Alphabet;

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format_version: u32,
    pub n: usize,
    pub stratum: String,
    pub generators: Alphabet,
    /// Hex digest of the canonical seed.
    pub seed_digest: String,
}

impl CacheHeader {
    pub fn for_seed(seed: &Origami, stratum: &StratumSignature, generators: Alphabet) -> CacheHeader {
        CacheHeader {
            format_version: CACHE_FORMAT_VERSION,
            n: seed.n(),
            stratum: stratum.label(),
            generators,
            seed_digest: format!("{:016x}", digest_of(seed)),
        }
    }

    pub fn file_name(&self) -> String {
        let stratum: String = self.stratum.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        format!("orbit-v{}-{}-n{}-{}-{}.json", self.format_version, stratum, self.n, self.generators, self.seed_digest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCache {
    pub header: CacheHeader,
    pub label: Option<String>,
    pub members: Vec<Origami>,
}

impl OrbitCache {
    pub fn new(orbit: &Orbit, seed: &Origami) -> OrbitCache {
        OrbitCache {
            header: CacheHeader::for_seed(seed, &orbit.stratum, orbit.alphabet),
            label: orbit.label.clone(),
            members: orbit.members.iter().map(|m| m.origami.clone()).collect(),
        }
    }

    /// Rebuilds the orbit, recomputing digests and edges.
    pub fn into_orbit(self) -> Result<Orbit> {
        let stratum = StratumSignature::parse(&self.header.stratum)?;
        let mut members: Vec<CanonicalOrigami> = self.members.iter().map(canonical_form).collect();
        if members.iter().zip(&self.members).any(|(c, m)| &c.origami != m) {
            return Err(Error::Format("cache member not in canonical form".into()));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("cache members not sorted".into()));
        }
        members.shrink_to_fit();
        orbit_from_members(members, self.header.generators, stratum, self.label)
    }
}

fn orbit_from_members(members: Vec<CanonicalOrigami>, alphabet: Alphabet, stratum: StratumSignature, label: Option<String>) -> Result<Orbit> {
    if members.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let other = match alphabet {
        Alphabet::Parabolic => Alphabet::Elliptic,
        Alphabet::Elliptic => Alphabet::Parabolic,
    };
    let base = Orbit { members, alphabet: other, edges: Vec::new(), stratum, label };
    Ok(base.with_alphabet(alphabet))
}

pub fn write_orbit_cache(path: &Path, orbit: &Orbit, seed: &Origami) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let text = serde_json::to_string(&OrbitCache::new(orbit, seed))?;
    fs::write(path, text)?;
    Ok(())
}

/// Reads a cache file; `None` when the header does not match `expected`.
pub fn read_orbit_cache(path: &Path, expected: &CacheHeader) -> Result<Option<Orbit>> {
    let text = fs::read_to_string(path)?;
    let cache: OrbitCache = serde_json::from_str(&text)?;
    if &cache.header != expected {
        return Ok(None);
    }
    cache.into_orbit().map(Some)
}

/// Orbit of `seed`, read from `cache_dir` when present and written there otherwise.
pub fn cached_orbit(cache_dir: Option<&Path>, seed: &Origami, alphabet: Alphabet) -> Result<(Orbit, Option<PathBuf>)> {
    let Some(dir) = cache_dir else {
        return Ok((enumerate_orbit(seed, alphabet)?, None));
    };
    let header = CacheHeader::for_seed(seed, &seed.stratum()?, alphabet);
    let path = dir.join(header.file_name());
    if path.exists() {
        if let Some(orbit) = read_orbit_cache(&path, &header)? {
            return Ok((orbit, Some(path)));
        }
    }
    let orbit = enumerate_orbit(seed, alphabet)?;
    write_orbit_cache(&path, &orbit, seed)?;
    Ok((orbit, Some(path)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExportFormat> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            _ => Err(Error::Parse(format!("unknown format {s}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    stratum: String,
    generators: Alphabet,
    label: Option<String>,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    digest: String,
    origami: Origami,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    label: String,
}

pub fn export_graph(orbit: &Orbit, format: ExportFormat) -> Result<String> {
    let graph = build_graph(orbit)?;
    let mut out = String::new();
    match format {
        ExportFormat::Dot => {
            out.push_str("graph orbit {\n");
            for (i, v) in graph.vertices.iter().enumerate() {
                let _ = writeln!(out, "  {i} [label=\"{}\"];", v.origami);
            }
            for e in &graph.edges {
                let _ = writeln!(out, "  {} -- {} [label=\"{:?}\"];", e.from, e.to, e.label);
            }
            out.push_str("}\n");
        }
        ExportFormat::Json => {
            let g = GraphJson {
                stratum: orbit.stratum.label(),
                generators: orbit.alphabet,
                label: orbit.label.clone(),
                vertices: graph
                    .vertices
                    .iter()
                    .map(|v| VertexJson { digest: format!("{:016x}", v.digest), origami: v.origami.clone() })
                    .collect(),
                edges: graph.edges.iter().map(|e| EdgeJson { from: e.from, to: e.to, label: format!("{:?}", e.label) }).collect(),
            };
            out = serde_json::to_string_pretty(&g)?;
            out.push('\n');
        }
        ExportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["from", "to", "label", "from_digest", "to_digest"])?;
            for e in &graph.edges {
                w.write_record([
                    e.from.to_string(),
                    e.to.to_string(),
                    format!("{:?}", e.label),
                    format!("{:016x}", graph.vertices[e.from].digest),
                    format!("{:016x}", graph.vertices[e.to].digest),
                ])?;
            }
            out = csv_string(w)?;
        }
    }
    Ok(out)
}

/// Inverse of the JSON export.
pub fn import_graph_json(text: &str) -> Result<Orbit> {
    let g: GraphJson = serde_json::from_str(text)?;
    let stratum = StratumSignature::parse(&g.stratum)?;
    let members: Vec<CanonicalOrigami> = g.vertices.iter().map(|v| CanonicalOrigami { origami: v.origami.clone(), digest: digest_of(&v.origami) }).collect();
    for (m, v) in members.iter().zip(&g.vertices) {
        if format!("{:016x}", m.digest) != v.digest {
            return Err(Error::Format(format!("digest mismatch for {}", m.origami)));
        }
    }
    if members.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let names: Vec<String> = (0..2).map(|k| format!("{:?}", g.generators.generators()[k].gen)).collect();
    let mut edges = vec![[usize::MAX; 2]; members.len()];
    for e in &g.edges {
        let k = names.iter().position(|s| *s == e.label).ok_or_else(|| Error::Format(format!("edge label {}", e.label)))?;
        if e.from >= members.len() || e.to >= members.len() {
            return Err(Error::Format("edge endpoint out of range".into()));
        }
        edges[e.from][k] = e.to;
    }
    if edges.iter().any(|e| e.contains(&usize::MAX)) {
        return Err(Error::Format("missing generator edge".into()));
    }
    Ok(Orbit { members, alphabet: g.generators, edges, stratum, label: g.label })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

/// One row per orbit and word.
pub fn word_census_csv(rows: &[(String, Vec<WordCount>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["orbit", "word", "kind", "count", "witnesses"])?;
    for (orbit, counts) in rows {
        for c in counts {
            let wit: Vec<String> = c.witnesses.iter().map(|x| x.to_string()).collect();
            w.write_record([orbit.clone(), c.word.to_string(), c.kind.to_string(), c.count.to_string(), wit.join(" ")])?;
        }
    }
    csv_string(w)
}

/// One row per cusp.
pub fn cusp_csv(rows: &[(String, Vec<Cusp>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["orbit", "width", "cylinders", "params", "representative"])?;
    for (orbit, cusps) in rows {
        for c in cusps {
            w.write_record([
                orbit.clone(),
                c.width.to_string(),
                c.cylinders.to_string(),
                c.params.map(|p| p.to_string()).unwrap_or_default(),
                c.representative.origami.to_string(),
            ])?;
        }
    }
    csv_string(w)
}

/// One row per orbit and cycle length.
pub fn cycle_csv(rows: &[(String, Vec<usize>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["orbit", "length", "count"])?;
    for (orbit, counts) in rows {
        for (i, c) in counts.iter().enumerate() {
            w.write_record([orbit.clone(), (i + 1).to_string(), c.to_string()])?;
        }
    }
    csv_string(w)
}

pub fn class_number_csv(rows: &[ClassNumberResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["discriminant", "h", "units", "h_reduced"])?;
    for r in rows {
        w.write_record([r.d.to_string(), r.h.to_string(), r.unit_count.to_string(), r.h_reduced.to_string()])?;
    }
    csv_string(w)
}

pub fn solutions_csv(header: &[&str], rows: &[Vec<i64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|x| x.to_string()))?;
    }
    csv_string(w)
}

pub fn cusp_count_csv(rows: &[CuspCount]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "width", "count", "hlk", "hlk_count"])?;
    for r in rows {
        for (k, c) in &r.by_hlk {
            w.write_record([r.n.to_string(), r.width.to_string(), r.count.to_string(), k.clone(), c.to_string()])?;
        }
    }
    csv_string(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub orbit: String,
    pub n: usize,
    pub stratum: String,
    pub size: usize,
    pub hlk: Option<String>,
    pub monodromy: Option<String>,
    pub curve: Option<CurveInvariants>,
    pub curve_error: Option<String>,
}

pub fn summary_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> Orbit {
        enumerate_orbit(&Origami::parse("(2,3),(1,2,3)", None).unwrap(), Alphabet::Parabolic).unwrap()
    }

    #[test]
    fn dot_export_of_g3() {
        let dot = export_graph(&g3(), ExportFormat::Dot).unwrap();
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
        assert_eq!(edges.len(), 6);
        let loops = edges
            .iter()
            .filter(|l| {
                let parts: Vec<&str> = l.split_whitespace().collect();
                parts[0] == parts[2]
            })
            .count();
        assert_eq!(loops, 2);
        assert_eq!(dot, export_graph(&g3(), ExportFormat::Dot).unwrap());
    }

    #[test]
    fn json_round_trip() {
        for seed in ["(2,3),(1,2,3)", "(1,2,3,4,5),(3,4,5)"] {
            let o = enumerate_orbit(&Origami::parse(seed, None).unwrap(), Alphabet::Parabolic).unwrap();
            let text = export_graph(&o, ExportFormat::Json).unwrap();
            assert_eq!(import_graph_json(&text).unwrap(), o);
        }
        let e = enumerate_orbit(&Origami::parse("(2,3),(1,2,3)", None).unwrap(), Alphabet::Elliptic).unwrap();
        assert_eq!(import_graph_json(&export_graph(&e, ExportFormat::Json).unwrap()).unwrap(), e);
    }

    #[test]
    fn csv_edge_list() {
        let csv = export_graph(&g3(), ExportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.starts_with("from,to,label"));
    }

    #[test]
    fn empty_orbit_is_an_error() {
        let mut o = g3();
        o.members.clear();
        o.edges.clear();
        assert_eq!(export_graph(&o, ExportFormat::Dot), Err(Error::EmptyOrbit));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("origami-cache-test-{}", std::process::id()));
        let seed = Origami::parse("(1,2,3,4,5),(3,4,5)", None).unwrap();
        let (a, path) = cached_orbit(Some(&dir), &seed, Alphabet::Parabolic).unwrap();
        let path = path.unwrap();
        let first = fs::read(&path).unwrap();
        let (b, _) = cached_orbit(Some(&dir), &seed, Alphabet::Parabolic).unwrap();
        assert_eq!(a, b);
        write_orbit_cache(&path, &b, &seed).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
        let mut header = CacheHeader::for_seed(&seed, &a.stratum, Alphabet::Parabolic);
        header.format_version += 1;
        assert_eq!(read_orbit_cache(&path, &header).unwrap(), None);
        fs::remove_dir_all(&dir).unwrap();
    }
}
