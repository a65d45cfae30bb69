//! Verification suites reproducing the published orbit, invariant and
//! arithmetic data. Each check reports PASS/FAIL with supporting lines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Family, OrbifoldKind};
use crate::census::{self, cycle_census, fixed_by, genus_lower_bound};
use crate::error::{Error, Result};
use crate::orbit::{self, build_graph, check_block_systems, enumerate_orbit, CheckStatus, EnumerationMode, Orbit};
use crate::origami::{canonical_form, from_h2_params, CanonicalOrigami, H2Params, Origami, StratumSignature};
use crate::sl2z::{reduced_words, Alphabet, Letter, Word, WordKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl CheckResult {
    fn from_result(id: &str, title: &str, r: Result<(bool, Vec<String>)>) -> CheckResult {
        let (passed, lines) = r.unwrap_or_else(|e| (false, vec![format!("error: {e}")]));
        CheckResult { id: id.into(), title: title.into(), passed, lines }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title)
    }
}

/// Collects sub-results; the check passes when every recorded line does.
#[derive(Default)]
struct Lines {
    ok: bool,
    lines: Vec<String>,
}

impl Lines {
    fn new() -> Lines {
        Lines { ok: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.ok &= ok;
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, msg.into()));
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.lines.push(format!("info {}", msg.into()));
    }

    fn done(self) -> Result<(bool, Vec<String>)> {
        Ok((self.ok, self.lines))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    H2,
    Prym4,
    Prym6,
    H11,
    H4,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s.to_ascii_lowercase().as_str() {
            "h2" => Ok(Suite::H2),
            "prym4" => Ok(Suite::Prym4),
            "prym6" => Ok(Suite::Prym6),
            "h11" => Ok(Suite::H11),
            "h4" => Ok(Suite::H4),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// H(2) range for HLK, block, curve and genus-bound checks.
    pub h2_max_n: usize,
    /// Largest odd n for H(2) orbit sizes.
    pub h2_size_max_n: usize,
    pub census_max_n: usize,
    pub dual_max_n: usize,
    pub h11_max_n: usize,
    pub prym4_ns: Vec<usize>,
    pub prym6_ns: Vec<usize>,
    pub h4_ns: Vec<usize>,
    pub brute_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            h2_max_n: 12,
            h2_size_max_n: 15,
            census_max_n: 20,
            dual_max_n: 30,
            h11_max_n: 10,
            prym4_ns: (5..=10).collect(),
            prym6_ns: vec![7, 8, 10],
            h4_ns: vec![9, 10],
            brute_cap: orbit::DEFAULT_BRUTE_CAP,
        }
    }
}

impl VerifyConfig {
    /// Caps every H(2) range at `n`.
    pub fn with_max_n(mut self, n: usize) -> Self {
        self.h2_max_n = n;
        self.h2_size_max_n = n;
        self.census_max_n = n;
        self.dual_max_n = n;
        self
    }

    /// Drops brute-force runs above `n` squares.
    pub fn with_brute_limit(mut self, n: usize) -> Self {
        self.h11_max_n = self.h11_max_n.min(n);
        self.prym4_ns.retain(|&k| k <= n);
        self.prym6_ns.retain(|&k| k <= n);
        self.h4_ns.retain(|&k| k <= n);
        self
    }
}

/// Orbits of each stratum and square count, computed once.
pub struct Context {
    pub brute_cap: usize,
    cache: Mutex<BTreeMap<(String, usize), Arc<Vec<Orbit>>>>,
}

impl Context {
    pub fn new(brute_cap: usize) -> Context {
        Context { brute_cap, cache: Mutex::new(BTreeMap::new()) }
    }

    /// All primitive orbits, seeded for H(2) and brute force otherwise.
    pub fn orbits(&self, stratum: &StratumSignature, n: usize) -> Result<Arc<Vec<Orbit>>> {
        let key = (stratum.label(), n);
        let mut cache = self.cache.lock().map_err(|_| Error::Format("poisoned orbit cache".into()))?;
        if let Some(o) = cache.get(&key) {
            return Ok(o.clone());
        }
        let mode = if stratum.zero_orders == [2] { EnumerationMode::Seeded } else { EnumerationMode::Brute };
        let orbits = Arc::new(orbit::enumerate_stratum(n, stratum, mode, self.brute_cap)?);
        cache.insert(key, orbits.clone());
        Ok(orbits)
    }

    pub fn h2(&self, n: usize) -> Result<Arc<Vec<Orbit>>> {
        self.orbits(&StratumSignature::new(vec![2]), n)
    }

    pub fn stratum(&self, s: &str, n: usize) -> Result<Arc<Vec<Orbit>>> {
        self.orbits(&StratumSignature::parse(s)?, n)
    }
}

fn label(o: &Orbit) -> &str {
    o.label.as_deref().unwrap_or("")
}

fn hlk_string(x: &Origami) -> String {
    x.hlk().map(|h| h.to_string()).unwrap_or_else(|e| format!("none ({e})"))
}

fn parse_origami(s: &str) -> Result<Origami> {
    Origami::parse(s, None)
}

fn expected_h2_hlk(n: usize, label: &str) -> &'static str {
    if n.is_multiple_of(2) {
        "(1,[2,2,0])"
    } else if n == 3 || label == "A" {
        "(0,[3,1,1])"
    } else {
        "(2,[1,1,1])"
    }
}

pub const GENERATORS_FIGURE_ONE: &str = "(2,3),(1,2,3)";

pub fn figure_one(_ctx: &Context) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let orbit = enumerate_orbit(&parse_origami(GENERATORS_FIGURE_ONE)?, Alphabet::Parabolic)?;
        l.check(orbit.len() == 3, format!("orbit size {}", orbit.len()));
        for s in ["(2,3),(1,2,3)", "(2,3),(1,2)", "(1,2,3),(2,3)"] {
            l.check(orbit.contains(&parse_origami(s)?), format!("contains {s}"));
        }
        let t = orbit.letter_table(Letter::T);
        let s = orbit.letter_table(Letter::S);
        let fixed = |tab: &[usize]| (0..tab.len()).filter(|&i| tab[i] == i).collect::<Vec<_>>();
        let (tf, sf) = (fixed(&t), fixed(&s));
        l.check(tf.len() == 1 && sf.len() == 1 && tf != sf, "one T-loop and one S-loop at different vertices");
        let pair = |tab: &[usize], f: &[usize]| (0..3).filter(|i| !f.contains(i)).all(|i| tab[i] != i && tab[tab[i]] == i);
        l.check(pair(&t, &tf) && pair(&s, &sf), "T and S each swap the remaining pair");
        let g = build_graph(&orbit)?;
        l.check(g.edges.len() == 6 && g.loops() == 2, format!("{} edges, {} loops", g.edges.len(), g.loops()));
        l.check(g.degrees().iter().all(|&d| d == 4), "4-regular");
        l.done()
    };
    CheckResult::from_result("1", "orbit of ((2,3),(1,2,3))", run())
}

pub fn h2_sizes(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        for n in (5..=cfg.h2_size_max_n).step_by(2) {
            let orbits = ctx.h2(n)?;
            let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
            let want = [
                arith::predicted_orbit_size(Family::H2A { n: n as u64 })? as usize,
                arith::predicted_orbit_size(Family::H2B { n: n as u64 })? as usize,
            ];
            l.check(sizes == want, format!("n={n}: sizes {sizes:?}, predicted A/B {want:?}"));
        }
        for n in (4..=cfg.h2_max_n).step_by(2) {
            let orbits = ctx.h2(n)?;
            let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
            l.check(orbits.len() == 1, format!("n={n}: {} primitive orbit(s), sizes {sizes:?}", orbits.len()));
        }
        l.done()
    };
    CheckResult::from_result("2", "H(2) orbit sizes", run())
}

pub fn h2_hlk(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        for n in 3..=cfg.h2_max_n {
            for o in ctx.h2(n)?.iter() {
                let want = expected_h2_hlk(n, label(o));
                let bad: Vec<String> = o.members.iter().map(|m| hlk_string(&m.origami)).filter(|h| h != want).collect();
                l.check(bad.is_empty(), format!("n={n} {}: {} members, HLK {want}{}", label(o), o.len(), if bad.is_empty() { String::new() } else { format!(", mismatches {bad:?}") }));
            }
        }
        l.done()
    };
    CheckResult::from_result("3", "H(2) HLK classification", run())
}

fn canonical_set(o: &Orbit, idx: &[usize]) -> BTreeSet<CanonicalOrigami> {
    idx.iter().map(|&i| o.members[i].clone()).collect()
}

pub fn five_square_spot_checks(ctx: &Context) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let orbits = ctx.h2(5)?;
        let a = orbits.iter().find(|o| label(o) == "A").ok_or(Error::EmptyOrbit)?;
        let b = orbits.iter().find(|o| label(o) == "B").ok_or(Error::EmptyOrbit)?;
        for (o, p) in [(a, H2Params::new(1, 1, 0, 2, 2, 0)), (b, H2Params::new(1, 1, 0, 2, 2, 1))] {
            let loops = census::parabolic_loops(o);
            l.check(loops == 2, format!("{}: {loops} loops", label(o)));
            let fixed = canonical_set(o, &fixed_by(o, &Word::from(Letter::T)));
            let want: BTreeSet<_> = [canonical_form(&from_h2_params(p)?)].into_iter().collect();
            l.check(fixed == want, format!("{}: T-fixed witness {p}", label(o)));
        }
        let mut width_two = Vec::new();
        for o in [a, b] {
            for c in census::cusp_census(o)? {
                if c.width == 2 {
                    width_two.push((label(o).to_string(), c.params));
                }
            }
        }
        let want = vec![("A".to_string(), Some(H2Params::new(1, 3, 0, 2, 1, 0)))];
        l.check(width_two == want, format!("width-2 cusps {width_two:?}"));
        let arith_two = arith::t_fixed_count_h2(5, 2)?;
        l.check(arith_two.cusps() == 1, format!("ellipse count of width-2 cusps {}", arith_two.cusps()));
        l.done()
    };
    CheckResult::from_result("4", "n=5 loop and cusp spot checks", run())
}

/// `(word, n, orbit label, origami)` fixed-point lists for hyperbolic words.
pub const HYPERBOLIC_FIXED: &[(&str, usize, &str, &str)] = &[
    ("ST", 5, "B", "(1,2,3,4,5),(3,4,5)"),
    ("ST", 5, "B", "(3,4,5),(1,2,3,5,4)"),
    ("ST^2", 4, "single", "(1,2,3,4),(2,3,4)"),
    ("ST^2", 5, "A", "(1,2)(3,4,5),(1,3,2,4,5)"),
    ("ST^2", 7, "A", "(4,5,6,7),(1,2,3,4,7,6,5)"),
    ("S^2T", 4, "single", "(2,3,4),(1,2,4,3)"),
    ("S^2T", 5, "A", "(1,2,3,4,5),(1,4,2)(3,5)"),
    ("S^2T", 7, "A", "(1,2,3,4,5,6,7),(4,5,6,7)"),
    ("S^2T^2", 3, "single", "(2,3),(1,2,3)"),
    ("S^2T^2", 3, "single", "(2,3),(1,2)"),
    ("S^2T^2", 3, "single", "(1,2,3),(2,3)"),
    ("S^2T^2", 4, "single", "(2,3,4),(1,2,3,4)"),
    ("S^2T^2", 4, "single", "(1,2,3,4),(2,4,3)"),
    ("S^2T^2", 5, "A", "(2,3,4,5),(1,2,5,4,3)"),
    ("S^2T^2", 5, "A", "(1,2,3,4,5),(2,3,4,5)"),
    ("S^2T^2", 7, "A", "(1,2)(3,4)(5,6,7),(1,3,5,6)(2,4,7)"),
    ("S^2T^2", 7, "A", "(1,2,3)(4,5,6,7),(1,4)(2,5)(3,7,6)"),
    ("(TS)^-1ST", 5, "B", "(3,4,5),(1,2,3)"),
    ("(TS)^-1ST", 5, "B", "(1,2,3,4,5),(1,2,4,3,5)"),
    ("ST^3", 7, "B", "(1,2,3,4,5,6,7),(3,6,4,7,5)"),
    ("ST^3", 9, "B", "(5,6,7,8,9),(1,2,3,4,5,9,8,7,6)"),
    ("S^3T", 7, "B", "(3,4,5,6,7),(1,2,3,6,4,7,5)"),
    ("S^3T", 9, "B", "(1,2,3,4,5,6,7,8,9),(5,6,7,8,9)"),
];

pub const HYPERBOLIC_WORDS: &[&str] = &["ST", "ST^2", "S^2T", "ST^3", "S^2T^2", "S^3T", "(ST)^2", "(TS)^-1ST"];
pub const PARABOLIC_WORDS: &[&str] = &["T", "S", "T^2", "S^2", "T^3", "S^3", "T^4", "S^4", "ST^-2S"];
pub const ELLIPTIC_WORDS: &[&str] = &["S^-1T", "T^-1ST^-1", "ST^-1S", "S^-1T^3", "T^-1S^3", "S^-1TST", "T^-1STS", "(S^-1T)^2"];

pub fn hyperbolic_census(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let mut listed_ok = true;
        for &(w, n, lab, x) in HYPERBOLIC_FIXED {
            let word: Word = w.parse()?;
            let x = parse_origami(x)?;
            let in_orbit = ctx.h2(n)?.iter().any(|o| label(o) == lab && o.contains(&x));
            listed_ok &= in_orbit && word.apply(&x).is_isomorphic(&x);
        }
        l.check(listed_ok, format!("all {} listed origamis lie in their stated orbit and are fixed by their word", HYPERBOLIC_FIXED.len()));
        let mut large_empty = true;
        for w in HYPERBOLIC_WORDS {
            let word: Word = w.parse()?;
            let mut extra = Vec::new();
            let mut missing = Vec::new();
            for n in 3..=cfg.census_max_n {
                for o in ctx.h2(n)?.iter() {
                    let got = canonical_set(o, &fixed_by(o, &word));
                    let want: BTreeSet<CanonicalOrigami> = HYPERBOLIC_FIXED
                        .iter()
                        .filter(|e| e.0 == *w && e.1 == n && e.2 == label(o))
                        .map(|e| parse_origami(e.3).map(|x| canonical_form(&x)))
                        .collect::<Result<_>>()?;
                    if n >= 13 && !got.is_empty() {
                        large_empty = false;
                    }
                    for g in got.difference(&want) {
                        extra.push(format!("n={n} {}: {}", label(o), g.origami));
                    }
                    for g in want.difference(&got) {
                        missing.push(format!("n={n} {}: {}", label(o), g.origami));
                    }
                }
            }
            let ok = extra.is_empty() && missing.is_empty();
            let mut msg = format!("{w}: fixed sets for 3 <= n <= {} match the list", cfg.census_max_n);
            if !ok {
                msg = format!("{w}: unlisted fixed {extra:?}; listed but not fixed {missing:?}");
            }
            l.check(ok, msg);
        }
        l.check(large_empty, format!("no hyperbolic word of the list fixes an origami for 13 <= n <= {}", cfg.census_max_n));
        l.done()
    };
    CheckResult::from_result("5", "hyperbolic word census", run())
}

pub fn word_lists(_ctx: &Context) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let words = reduced_words(4, Alphabet::Parabolic);
        l.check(words.len() == 25, format!("{} classes of length <= 4", words.len()));
        for (kind, list) in [(WordKind::Hyperbolic, HYPERBOLIC_WORDS), (WordKind::Parabolic, PARABOLIC_WORDS), (WordKind::Elliptic, ELLIPTIC_WORDS)] {
            let ours: BTreeSet<Word> = words.iter().filter(|w| w.info().kind == kind).cloned().collect();
            let parsed: Vec<Word> = list.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let kinds_ok = parsed.iter().all(|w| w.info().kind == kind);
            let theirs: BTreeSet<Word> = parsed.iter().map(|w| w.class_key()).collect();
            l.check(kinds_ok, format!("{kind}: every listed word has {kind} matrix"));
            l.check(
                ours == theirs && theirs.len() == list.len(),
                format!("{kind}: {} classes, list has {} distinct classes", ours.len(), theirs.len()),
            );
        }
        l.done()
    };
    CheckResult::from_result("6", "word classification lists", run())
}

pub fn block_systems(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        for n in 3..=cfg.h2_max_n {
            for o in ctx.h2(n)?.iter() {
                let r = check_block_systems(o);
                let three = r.status(orbit::THREE_BLOCKS);
                let need_three = label(o) != "B";
                let ok = r.passed() && (!need_three || three == Some(CheckStatus::Pass));
                l.check(ok, format!("H(2) n={n} {}: {}", label(o), summarize(&r)));
            }
        }
        let mut sym_orbits = 0;
        let mut sym_ok = true;
        let mut non_minus_i = 0;
        let mut six = Vec::new();
        let mut others = Vec::new();
        for n in 4..=cfg.h2_max_n.min(8) {
            others.push(("H(2)", n));
        }
        for n in 7..=cfg.h11_max_n.min(8) {
            others.push(("H(1,1)", n));
        }
        for n in 5..=8 {
            others.push(("H(4)", n));
        }
        for (s, n) in others {
            for o in ctx.stratum(s, n)?.iter() {
                let r = check_block_systems(o);
                if !r.passed() {
                    l.check(false, format!("{s} n={n} {}: {}", label(o), summarize(&r)));
                    continue;
                }
                if r.status(orbit::PARITY_BLOCKS) == Some(CheckStatus::Pass) {
                    sym_orbits += 1;
                    sym_ok &= r.status(orbit::ONE_CYLINDER_BOUND) == Some(CheckStatus::Pass);
                }
                if r.status(orbit::MINUS_I_PAIRS) == Some(CheckStatus::Pass) {
                    non_minus_i += 1;
                }
                if r.status(orbit::SIX_BLOCKS) == Some(CheckStatus::Pass) {
                    six.push(format!("{s} n={n} {} HLK {}", label(o), hlk_string(o.origami(0))));
                }
            }
        }
        l.check(sym_orbits > 0 && sym_ok, format!("parity blocks and one-cylinder bound hold on {sym_orbits} Sym orbits"));
        l.check(non_minus_i > 0, format!("-I pairing blocks hold on {non_minus_i} orbits without -I"));
        if six.is_empty() {
            l.note("six-block system: no qualifying orbit found");
        } else {
            l.note(format!("six-block system holds on qualifying orbits: {}", six.join("; ")));
        }
        l.done()
    };
    CheckResult::from_result("7", "block systems", run())
}

fn summarize(r: &orbit::BlockReport) -> String {
    r.checks
        .iter()
        .filter(|c| c.status != CheckStatus::NotApplicable)
        .map(|c| format!("{}={:?}{}", c.name, c.status, if c.detail.is_empty() || c.status == CheckStatus::Pass { String::new() } else { format!(" ({})", c.detail) }))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn dual_loop_counts(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let mut bad = Vec::new();
        let mut total = 0;
        for n in 3..=cfg.dual_max_n {
            let predicted = arith::t_fixed_count_h2(n, 1)?;
            let mut census_by_hlk: BTreeMap<String, usize> = BTreeMap::new();
            for o in ctx.h2(n)?.iter() {
                let k = fixed_by(o, &Word::from(Letter::T)).len();
                *census_by_hlk.entry(hlk_string(o.origami(0))).or_insert(0) += k;
            }
            census_by_hlk.retain(|_, v| *v > 0);
            total += predicted.count;
            if census_by_hlk != predicted.by_hlk {
                bad.push(format!("n={n}: census {census_by_hlk:?}, ellipse {:?}", predicted.by_hlk));
            }
        }
        l.check(bad.is_empty(), format!("T-fixed counts agree per HLK class for 3 <= n <= {} ({total} origamis)", cfg.dual_max_n));
        for b in bad {
            l.check(false, b);
        }
        l.done()
    };
    CheckResult::from_result("8", "dual-path loop counts", run())
}

fn prym_orbits(ctx: &Context, stratum: &str, n: usize) -> Result<Vec<Orbit>> {
    Ok(ctx.stratum(stratum, n)?.iter().filter(|o| label(o).starts_with("Prym")).cloned().collect())
}

pub fn curve_invariant_checks(ctx: &Context, cfg: &VerifyConfig, parts: CurveParts) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let mut orbits: Vec<(String, usize, Orbit)> = Vec::new();
        if parts.h2 {
            for n in 3..=cfg.h2_max_n {
                orbits.extend(ctx.h2(n)?.iter().map(|o| ("H(2)".to_string(), n, o.clone())));
            }
        }
        if parts.prym4 {
            for &n in &cfg.prym4_ns {
                orbits.extend(prym_orbits(ctx, "H(4)", n)?.into_iter().map(|o| ("H(4)".to_string(), n, o)));
            }
        }
        if parts.prym6 {
            for &n in &cfg.prym6_ns {
                orbits.extend(prym_orbits(ctx, "H(6)", n)?.into_iter().map(|o| ("H(6)".to_string(), n, o)));
            }
        }
        if parts.h11 {
            for n in 4..=cfg.h11_max_n {
                orbits.extend(ctx.stratum("H(1,1)", n)?.iter().map(|o| ("H(1,1)".to_string(), n, o.clone())));
            }
        }
        for (s, n, o) in &orbits {
            match census::curve_invariants(o) {
                Ok(c) => {
                    let mut ok = c.chi == Ratio::new(-(c.v as i64), 6) && c.genus >= 0;
                    if s == "H(2)" {
                        ok &= c.e3 == 0 && 2 * c.e2 <= n * n;
                    }
                    if s == "H(2)" && *n == 3 {
                        ok &= c.genus == 0;
                    }
                    l.check(ok, format!("{s} n={n} {}: V={} chi={} e2={} e3={} c={} genus={}", label(o), c.v, c.chi, c.e2, c.e3, c.cusps, c.genus));
                }
                Err(e) => l.check(false, format!("{s} n={n} {}: {e}", label(o))),
            }
        }
        l.check(!orbits.is_empty(), format!("{} orbits checked", orbits.len()));
        l.done()
    };
    CheckResult::from_result("9", "curve invariants", run())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveParts {
    pub h2: bool,
    pub prym4: bool,
    pub prym6: bool,
    pub h11: bool,
}

impl CurveParts {
    pub const ALL: CurveParts = CurveParts { h2: true, prym4: true, prym6: true, h11: true };
    pub const NONE: CurveParts = CurveParts { h2: false, prym4: false, prym6: false, h11: false };
}

pub fn h11_orbits(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        for n in 7..=cfg.h11_max_n {
            let orbits = ctx.stratum("H(1,1)", n)?;
            let desc: Vec<String> = orbits.iter().map(|o| format!("{} {}", label(o), o.len())).collect();
            let alt = arith::predicted_orbit_size(Family::ZmiaikouAlt { n: n as u64 })? as usize;
            let sym = arith::predicted_orbit_size(Family::ZmiaikouSym { n: n as u64 })? as usize;
            let find = |lab: &str| orbits.iter().find(|o| label(o) == lab).map(|o| o.len());
            let ok = orbits.len() == 2 && find("Alt") == Some(alt) && find("Sym") == Some(sym);
            l.check(ok, format!("n={n}: orbits [{}], predicted Alt {alt}, Sym {sym}", desc.join(", ")));
        }
        l.done()
    };
    CheckResult::from_result("10", "H(1,1) orbits", run())
}

/// Expected HLK strings of the Prym orbits at `n`.
pub fn expected_prym_hlk(stratum: &str, n: usize) -> Vec<&'static str> {
    match stratum {
        "H(4)" if n % 2 == 1 => vec!["(0,[1,1,1])"],
        "H(4)" if n.is_multiple_of(4) || n == 6 => vec!["(1,[2,0,0])"],
        "H(4)" => vec!["(1,[2,0,0])", "(3,[0,0,0])"],
        "H(6)" if n.is_multiple_of(2) && n >= 8 => vec!["(1,[0,0,0])"],
        _ => vec![],
    }
}

pub fn prym_hlk(ctx: &Context, cfg: &VerifyConfig, h4: bool, h6: bool) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let mut runs = Vec::new();
        if h4 {
            runs.extend(cfg.prym4_ns.iter().map(|&n| ("H(4)", n)));
        }
        if h6 {
            runs.extend(cfg.prym6_ns.iter().map(|&n| ("H(6)", n)));
        }
        for (s, n) in runs {
            let orbits = prym_orbits(ctx, s, n)?;
            let mut got = Vec::new();
            let mut constant = true;
            for o in &orbits {
                let h = hlk_string(o.origami(0));
                constant &= o.members.iter().all(|m| hlk_string(&m.origami) == h);
                got.push(h);
            }
            got.sort();
            let mut want: Vec<String> = expected_prym_hlk(s, n).into_iter().map(String::from).collect();
            want.sort();
            let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
            l.check(constant && got == want, format!("{s} n={n}: Prym orbits {sizes:?} with HLK {got:?}, expected {want:?}"));
        }
        l.done()
    };
    CheckResult::from_result("11", "Prym HLK invariants", run())
}

/// Proper class count by reducing every primitive form with `a ≤ √(|d|/3)·…`
/// through the standard reduction map.
fn class_number_by_reduction(d: i64) -> usize {
    let reduce = |(mut a, mut b, mut c): (i64, i64, i64)| loop {
        if c < a {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        } else if b > a || b <= -a {
            let k = (a - b).div_euclid(2 * a);
            c += a * k * k + b * k;
            b += 2 * a * k;
        } else {
            if a == c && b < 0 {
                b = -b;
            }
            return (a, b, c);
        }
    };
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x.abs()
    };
    let mut seen = BTreeSet::new();
    for a in 1..=-d {
        for b in -a..=a {
            if (b * b - d) % (4 * a) == 0 {
                let c = (b * b - d) / (4 * a);
                if gcd(gcd(a, b), c) == 1 {
                    seen.insert(reduce((a, b, c)));
                }
            }
        }
    }
    seen.len()
}

/// `(d, n, ε, e3)` values of the order-three count.
pub const E3_TABLE: &[(i64, i64, u8, (i64, i64))] = &[
    (4, 1, 0, (1, 1)),
    (7, 1, 0, (1, 1)),
    (2, 3, 0, (1, 2)),
    (5, 3, 0, (1, 1)),
    (3, 3, 0, (1, 1)),
    (5, 1, 0, (0, 1)),
    (7, 1, 1, (0, 1)),
    (6, 2, 0, (0, 1)),
    (9, 1, 0, (0, 1)),
];

/// Which `W^ε_{d²}[1]` an orbit of `d`-square H(1,1) origamis lies on.
fn h11_epsilon(d: usize, hlk: &str) -> Option<u8> {
    match (d % 2, hlk) {
        (1, "(3,[1,1,1])") | (0, "(0,[2,2,2])") => Some(0),
        (1, "(1,[3,1,1])") | (0, "(2,[2,2,0])") => Some(1),
        _ => None,
    }
}

pub fn arithmetic_oracles(ctx: &Context, cfg: &VerifyConfig, with_orbits: bool) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let mut bad = Vec::new();
        let mut count = 0;
        for d in (3..=200).map(|k: i64| -k).filter(|d| d.rem_euclid(4) <= 1) {
            count += 1;
            let h = arith::class_numbers(d)?.h as usize;
            let r = class_number_by_reduction(d);
            if h != r {
                bad.push(format!("h({d}) = {h}, reduction gives {r}"));
            }
        }
        l.check(bad.is_empty(), format!("{count} class numbers for -200 <= D <= -3 agree with form reduction {bad:?}"));
        let odd_empty = (1..=15).step_by(2).all(|n| arith::orbifold_sets(n * n, OrbifoldKind::H2Sq).map(|s| s.count == 0).unwrap_or(false));
        l.check(odd_empty, "H2sq(n^2) is empty for odd n <= 15");
        let h36 = arith::orbifold_sets(36, OrbifoldKind::H2Sq)?.count;
        l.check(h36 == 24, format!("|H2sq(36)| = {h36}"));
        let h17 = arith::orbifold_sets(17, OrbifoldKind::H3)?.triples;
        l.check(h17 == vec![(-7, 0, -9)], format!("H3(17) = {h17:?}"));
        let mut table_ok = true;
        for &(d, n, eps, (p, q)) in E3_TABLE {
            table_ok &= arith::e3_h11(d, n, eps)? == Ratio::new(p, q);
        }
        l.check(table_ok, format!("e3 case table ({} entries)", E3_TABLE.len()));
        if with_orbits {
            for d in 4..=cfg.h11_max_n {
                for o in ctx.stratum("H(1,1)", d)?.iter() {
                    let hlk = hlk_string(o.origami(0));
                    let Some(eps) = h11_epsilon(d, &hlk) else {
                        l.note(format!("d={d} {}: HLK {hlk} outside the W[1] classification", label(o)));
                        continue;
                    };
                    let formula = arith::e3_h11(d as i64, 1, eps)?;
                    let direct = fixed_by(o, &Word::from(Letter::U)).len() as i64;
                    let matches = formula == Ratio::from_integer(direct);
                    l.note(format!(
                        "d={d} eps={eps} {}: e3 formula {formula}, 2*e3 = {}, direct U-fixed {direct}{}",
                        label(o),
                        formula * 2,
                        if matches { "" } else { " (mismatch)" }
                    ));
                }
            }
        }
        l.done()
    };
    CheckResult::from_result("12", "arithmetic oracles", run())
}

pub fn genus_bounds(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        let bound = |o: &Orbit| -> Result<i64> { Ok(genus_lower_bound(o.len(), &cycle_census(&build_graph(o)?, 4), 5)) };
        let g3 = &ctx.h2(3)?[0];
        let b5 = ctx.h2(5)?.iter().find(|o| label(o) == "B").cloned().ok_or(Error::EmptyOrbit)?;
        let (b3, bb) = (bound(g3)?, bound(&b5)?);
        l.check(b3 == 0, format!("n=3: bound {b3}"));
        l.check(bb == 0, format!("n=5 B: bound {bb}"));
        let mut positive = Vec::new();
        for n in 4..=cfg.h2_max_n {
            let mut row = Vec::new();
            for o in ctx.h2(n)?.iter() {
                let b = bound(o)?;
                if b >= 1 && n >= 7 {
                    positive.push(format!("n={n} {}", label(o)));
                }
                row.push(format!("{} V={} bound {b}", label(o), o.len()));
            }
            l.note(format!("n={n}: {}", row.join(", ")));
        }
        l.check(!positive.is_empty(), format!("positive bound for 7 <= n <= {}: {}", cfg.h2_max_n, positive.join(", ")));
        l.done()
    };
    CheckResult::from_result("13", "genus lower bounds", run())
}

fn h4_hyp_expected(n: usize) -> Vec<&'static str> {
    if n % 2 == 1 {
        vec!["(0,[3,3,1])", "(0,[5,1,1])", "(2,[3,1,1])", "(4,[1,1,1])"]
    } else {
        vec!["(1,[2,2,2])", "(1,[4,2,0])", "(3,[2,2,0])"]
    }
}

/// Non-Prym H(4) orbits: two odd-component orbits (Alt and Sym) and the
/// hyperelliptic orbits distinguished by HLK.
pub fn h4_orbits(ctx: &Context, cfg: &VerifyConfig) -> CheckResult {
    let run = || -> Result<(bool, Vec<String>)> {
        let mut l = Lines::new();
        for &n in &cfg.h4_ns {
            let orbits = ctx.stratum("H(4)", n)?;
            let mut odd = Vec::new();
            let mut hyp = Vec::new();
            for o in orbits.iter().filter(|o| !label(o).starts_with("Prym")) {
                let x = o.origami(0);
                match x.hlk() {
                    Ok(h) if h.total_fixed() == 8 => hyp.push(h.to_string()),
                    _ => odd.push(label(o).to_string()),
                }
            }
            odd.sort();
            hyp.sort();
            l.check(odd == ["Alt", "Sym"], format!("n={n}: odd-component orbits {odd:?}"));
            l.check(hyp == h4_hyp_expected(n), format!("n={n}: hyperelliptic HLK {hyp:?}"));
        }
        l.done()
    };
    CheckResult::from_result("H4", "H(4) non-Prym orbits", run())
}

/// The checks of one suite in order.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let ctx = Context::new(cfg.brute_cap);
    run_suite_with(&ctx, suite, cfg)
}

pub fn run_suite_with(ctx: &Context, suite: Suite, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let h2_curve = CurveParts { h2: true, ..CurveParts::NONE };
    match suite {
        Suite::H2 => vec![
            figure_one(ctx),
            h2_sizes(ctx, cfg),
            h2_hlk(ctx, cfg),
            five_square_spot_checks(ctx),
            hyperbolic_census(ctx, cfg),
            word_lists(ctx),
            dual_loop_counts(ctx, cfg),
            curve_invariant_checks(ctx, cfg, h2_curve),
            genus_bounds(ctx, cfg),
        ],
        Suite::Prym4 => vec![
            prym_hlk(ctx, cfg, true, false),
            curve_invariant_checks(ctx, cfg, CurveParts { prym4: true, ..CurveParts::NONE }),
        ],
        Suite::Prym6 => vec![
            prym_hlk(ctx, cfg, false, true),
            curve_invariant_checks(ctx, cfg, CurveParts { prym6: true, ..CurveParts::NONE }),
        ],
        Suite::H11 => vec![
            h11_orbits(ctx, cfg),
            curve_invariant_checks(ctx, cfg, CurveParts { h11: true, ..CurveParts::NONE }),
            arithmetic_oracles(ctx, cfg, true),
        ],
        Suite::H4 => vec![h4_orbits(ctx, cfg), block_systems(ctx, cfg)],
        Suite::All => vec![
            figure_one(ctx),
            h2_sizes(ctx, cfg),
            h2_hlk(ctx, cfg),
            five_square_spot_checks(ctx),
            hyperbolic_census(ctx, cfg),
            word_lists(ctx),
            block_systems(ctx, cfg),
            dual_loop_counts(ctx, cfg),
            curve_invariant_checks(ctx, cfg, CurveParts::ALL),
            h11_orbits(ctx, cfg),
            prym_hlk(ctx, cfg, true, true),
            arithmetic_oracles(ctx, cfg, true),
            genus_bounds(ctx, cfg),
            h4_orbits(ctx, cfg),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig::default().with_max_n(8).with_brute_limit(8)
    }

    #[test]
    fn suite_names() {
        assert_eq!("h2".parse::<Suite>().unwrap(), Suite::H2);
        assert_eq!("ALL".parse::<Suite>().unwrap(), Suite::All);
        assert!("h3".parse::<Suite>().is_err());
    }

    #[test]
    fn figure_one_and_word_lists_pass() {
        let ctx = Context::new(10);
        assert!(figure_one(&ctx).passed);
        let w = word_lists(&ctx);
        assert!(w.passed, "{:?}", w.lines);
    }

    #[test]
    fn small_h2_checks_pass() {
        let ctx = Context::new(10);
        let cfg = small();
        for c in [h2_sizes(&ctx, &cfg), h2_hlk(&ctx, &cfg), five_square_spot_checks(&ctx), dual_loop_counts(&ctx, &cfg)] {
            assert!(c.passed, "{c}: {:?}", c.lines);
        }
    }

    #[test]
    fn prym_expectations() {
        assert_eq!(expected_prym_hlk("H(4)", 10).len(), 2);
        assert_eq!(expected_prym_hlk("H(6)", 7), Vec::<&str>::new());
        let ctx = Context::new(10);
        let cfg = VerifyConfig { prym4_ns: vec![5, 6], prym6_ns: vec![7], ..small() };
        let c = prym_hlk(&ctx, &cfg, true, true);
        assert!(c.passed, "{:?}", c.lines);
    }

    #[test]
    fn reduction_oracle_matches_small_table() {
        assert_eq!(class_number_by_reduction(-23), 3);
        assert_eq!(class_number_by_reduction(-3), 1);
        assert_eq!(class_number_by_reduction(-48), 2);
    }

    #[test]
    fn display() {
        let c = CheckResult { id: "3".into(), title: "x".into(), passed: false, lines: vec![] };
        assert_eq!(c.to_string(), "FAIL 3 x");
    }
}
