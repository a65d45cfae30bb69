//! SL(2,Z)-orbits of origamis, their Schreier graphs and block systems.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{self, canonical_form, CanonicalOrigami, H2Params, MonodromyKind, Origami, StratumSignature};
use crate::perm::Perm;
use crate::sl2z::{apply_word, Alphabet, Gen, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Sorted by `(digest, origami)`.
    pub members: Vec<CanonicalOrigami>,
    pub alphabet: Alphabet,
    /// `edges[i][k]` is the index of the image of member `i` under the `k`-th
    /// generator of the alphabet.
    pub edges: Vec<[usize; 2]>,
    pub stratum: StratumSignature,
    pub label: Option<String>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.members[0].origami.n()
    }

    pub fn origami(&self, i: usize) -> &Origami {
        &self.members[i].origami
    }

    pub fn index_of(&self, x: &Origami) -> Option<usize> {
        self.index_of_canonical(&canonical_form(x))
    }

    pub fn index_of_canonical(&self, c: &CanonicalOrigami) -> Option<usize> {
        self.members.binary_search(c).ok()
    }

    pub fn contains(&self, x: &Origami) -> bool {
        self.index_of(x).is_some()
    }

    /// The action of a letter on member indices.
    pub fn letter_table(&self, l: Letter) -> Vec<usize> {
        let gens = self.alphabet.generators();
        if let Some(k) = gens.iter().position(|g| g.gen == l.gen) {
            let fwd: Vec<usize> = self.edges.iter().map(|e| e[k]).collect();
            if !l.inverse {
                return fwd;
            }
            let mut inv = vec![0; fwd.len()];
            for (i, &j) in fwd.iter().enumerate() {
                inv[j] = i;
            }
            return inv;
        }
        let w = Word::from(l);
        self.members
            .par_iter()
            .map(|m| self.index_of(&apply_word(&w, &m.origami)).expect("orbit is closed under SL(2,Z)"))
            .collect()
    }

    /// The action of a word on member indices; the rightmost letter acts first.
    pub fn word_table(&self, w: &Word) -> Vec<usize> {
        let mut cache: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
        let mut out: Vec<usize> = (0..self.len()).collect();
        for &l in w.letters().iter().rev() {
            let t = cache.entry(l).or_insert_with(|| self.letter_table(l));
            for x in out.iter_mut() {
                *x = t[*x];
            }
        }
        out
    }

    /// The same orbit with edges for the other generator set.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Orbit {
        if alphabet == self.alphabet {
            return self.clone();
        }
        let [a, b] = alphabet.generators();
        let ta = self.letter_table(a);
        let tb = self.letter_table(b);
        Orbit {
            members: self.members.clone(),
            alphabet,
            edges: ta.into_iter().zip(tb).map(|(x, y)| [x, y]).collect(),
            stratum: self.stratum.clone(),
            label: self.label.clone(),
        }
    }
}

/// Breadth-first closure of `seed` under the generators and their inverses.
/// Frontiers are expanded in parallel and committed in sorted order, so the
/// result does not depend on scheduling.
pub fn enumerate_orbit(seed: &Origami, alphabet: Alphabet) -> Result<Orbit> {
    let stratum = seed.stratum()?;
    let letters = alphabet.letters();
    let start = canonical_form(seed);
    let mut seen: HashSet<Origami> = HashSet::new();
    seen.insert(start.origami.clone());
    let mut all = vec![start.clone()];
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut images: Vec<CanonicalOrigami> = frontier
            .par_iter()
            .flat_map_iter(|c| letters.iter().map(move |&l| canonical_form(&apply_word(&Word::from(l), &c.origami))))
            .collect();
        images.par_sort_unstable();
        images.dedup();
        frontier = images.into_iter().filter(|c| seen.insert(c.origami.clone())).collect();
        all.extend(frontier.iter().cloned());
    }
    all.par_sort_unstable();
    let mut orbit = Orbit { members: all, alphabet, edges: Vec::new(), stratum, label: None };
    let gens = alphabet.generators();
    orbit.edges = orbit
        .members
        .par_iter()
        .map(|m| {
            let img = |l: Letter| orbit.index_of(&apply_word(&Word::from(l), &m.origami)).expect("closed");
            [img(gens[0]), img(gens[1])]
        })
        .collect();
    Ok(orbit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnumerationMode {
    Brute,
    Seeded,
}

pub const DEFAULT_BRUTE_CAP: usize = 10;

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - k, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// One permutation per cycle type, with cycles on consecutive symbols.
pub fn cycle_type_representatives(n: usize) -> Vec<Perm> {
    partitions(n, n)
        .into_iter()
        .map(|p| {
            let mut images = vec![0; n];
            let mut start = 0;
            for k in p {
                for i in 0..k {
                    images[start + i] = start + (i + 1) % k;
                }
                start += k;
            }
            Perm::new(images).expect("valid cycles")
        })
        .collect()
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

struct Scratch {
    vinv: Vec<usize>,
    c: Vec<usize>,
    seen: Vec<bool>,
    lens: Vec<usize>,
    stack: Vec<usize>,
}

/// Checks the corner permutation of `(h, v)` against the sorted zero orders.
fn matches_stratum(h: &[usize], hinv: &[usize], v: &[usize], target: &[usize], cycles: usize, s: &mut Scratch) -> bool {
    let n = h.len();
    for (i, &x) in v.iter().enumerate() {
        s.vinv[x] = i;
    }
    for i in 0..n {
        s.c[i] = h[v[hinv[s.vinv[i]]]];
    }
    s.seen.iter_mut().for_each(|x| *x = false);
    s.lens.clear();
    for i in 0..n {
        if s.seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !s.seen[j] {
            s.seen[j] = true;
            j = s.c[j];
            len += 1;
        }
        s.lens.push(len);
        if s.lens.len() > cycles {
            return false;
        }
    }
    if s.lens.len() != cycles {
        return false;
    }
    s.lens.retain(|&l| l >= 2);
    s.lens.sort_unstable_by(|a, b| b.cmp(a));
    s.lens.len() == target.len() && s.lens.iter().zip(target).all(|(&l, &k)| l == k + 1)
}

fn transitive(h: &[usize], v: &[usize], s: &mut Scratch) -> bool {
    s.seen.iter_mut().for_each(|x| *x = false);
    s.stack.clear();
    s.stack.push(0);
    s.seen[0] = true;
    let mut count = 1;
    while let Some(x) = s.stack.pop() {
        for y in [h[x], v[x]] {
            if !s.seen[y] {
                s.seen[y] = true;
                count += 1;
                s.stack.push(y);
            }
        }
    }
    count == h.len()
}

/// All primitive origamis with `n` squares in the stratum, up to isomorphism,
/// by iterating `h` over cycle-type representatives and `v` over `Sym(n)`.
pub fn brute_primitive_origamis(n: usize, stratum: &StratumSignature, cap: usize) -> Result<Vec<CanonicalOrigami>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n == 0 || stratum.zero_orders.iter().map(|k| k + 1).sum::<usize>() > n {
        return Ok(Vec::new());
    }
    let cycles = n + 2 - 2 * stratum.genus;
    let reps = cycle_type_representatives(n);
    let prefix = n.min(2);
    let mut tasks: Vec<(usize, Vec<usize>)> = Vec::new();
    for r in 0..reps.len() {
        if prefix == 1 {
            tasks.push((r, vec![0]));
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    tasks.push((r, vec![a, b]));
                }
            }
        }
    }
    let found: Vec<Vec<(Vec<usize>, Vec<usize>)>> = tasks
        .par_iter()
        .map(|(r, pre)| {
            let h = reps[*r].images();
            let hinv = reps[*r].inverse();
            let hinv = hinv.images();
            let mut s = Scratch {
                vinv: vec![0; n],
                c: vec![0; n],
                seen: vec![false; n],
                lens: Vec::new(),
                stack: Vec::new(),
            };
            let mut rest: Vec<usize> = (0..n).filter(|x| !pre.contains(x)).collect();
            let mut v = vec![0; n];
            v[..pre.len()].copy_from_slice(pre);
            let mut local: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
            loop {
                v[pre.len()..].copy_from_slice(&rest);
                if matches_stratum(h, hinv, &v, &stratum.zero_orders, cycles, &mut s) && transitive(h, &v, &mut s) {
                    let x = Origami::new_unchecked(reps[*r].clone(), Perm::new(v.clone()).expect("permutation"));
                    let c = canonical_form(&x).origami;
                    local.insert((c.h().images().to_vec(), c.v().images().to_vec()));
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            let mut local: Vec<_> = local.into_iter().collect();
            local.sort_unstable();
            local
        })
        .collect();
    let unique: BTreeSet<(Vec<usize>, Vec<usize>)> = found.into_iter().flatten().collect();
    let mut out: Vec<CanonicalOrigami> = unique
        .into_par_iter()
        .filter_map(|(h, v)| {
            let x = Origami::new_unchecked(Perm::new(h).ok()?, Perm::new(v).ok()?);
            x.is_primitive().then(|| canonical_form(&x))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Two-cylinder H(2) origamis of area `n` with primitive monodromy, one per
/// isomorphism class.
pub fn h2_seeds(n: usize) -> Vec<Origami> {
    let mut params = Vec::new();
    for w2 in 2..=n {
        for h2 in 1..=n / w2 {
            for w1 in 1..w2 {
                let rest = n - w2 * h2;
                if rest == 0 || !rest.is_multiple_of(w1) {
                    continue;
                }
                let h1 = rest / w1;
                for t1 in 0..w1 {
                    for t2 in 0..w2 {
                        params.push(H2Params::new(w1, h1, t1, w2, h2, t2));
                    }
                }
            }
        }
    }
    let mut seeds: Vec<CanonicalOrigami> = params
        .par_iter()
        .filter_map(|&p| origami::from_h2_params(p).ok())
        .filter(|x| x.is_primitive())
        .map(|x| canonical_form(&x))
        .collect();
    seeds.sort();
    seeds.dedup();
    seeds.into_iter().map(|c| c.origami).collect()
}

/// Partitions a set of origamis into orbits; every orbit must stay inside the
/// set when `closed` is requested.
pub fn close_seeds(seeds: &[Origami], alphabet: Alphabet, closed: bool) -> Result<Vec<Orbit>> {
    let mut canon: Vec<CanonicalOrigami> = seeds.iter().map(canonical_form).collect();
    canon.sort();
    canon.dedup();
    let universe: HashSet<&Origami> = canon.iter().map(|c| &c.origami).collect();
    let mut covered: HashSet<Origami> = HashSet::new();
    let mut orbits = Vec::new();
    let mut by_pair: Vec<&CanonicalOrigami> = canon.iter().collect();
    by_pair.sort_by(|a, b| a.origami.cmp(&b.origami));
    for c in by_pair {
        if covered.contains(&c.origami) {
            continue;
        }
        let orbit = enumerate_orbit(&c.origami, alphabet)?;
        for m in &orbit.members {
            if closed && !universe.contains(&m.origami) {
                return Err(Error::Format(format!("orbit of {} leaves the enumerated set", c.origami)));
            }
            covered.insert(m.origami.clone());
        }
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.members[0].cmp(&b.members[0])));
    Ok(orbits)
}

/// All primitive orbits in a stratum at `n` squares. Brute mode enumerates
/// every pair; seeded mode closes two-cylinder seeds and exists for H(2) only.
pub fn enumerate_stratum(n: usize, stratum: &StratumSignature, mode: EnumerationMode, cap: usize) -> Result<Vec<Orbit>> {
    let mut orbits = match mode {
        EnumerationMode::Brute => {
            let all = brute_primitive_origamis(n, stratum, cap)?;
            let seeds: Vec<Origami> = all.into_iter().map(|c| c.origami).collect();
            close_seeds(&seeds, Alphabet::Parabolic, true)?
        }
        EnumerationMode::Seeded => {
            if stratum.zero_orders != [2] {
                return Err(Error::BadParams(format!("no seed builder for {stratum}")));
            }
            close_seeds(&h2_seeds(n), Alphabet::Parabolic, false)?
        }
    };
    label_orbits(&mut orbits);
    Ok(orbits)
}

/// Labels H(2) orbits `A`/`B` by size (odd n ≥ 5) or `single`, and other
/// orbits by monodromy and, for H(4) and H(6), by the Prym involution.
pub fn label_orbits(orbits: &mut [Orbit]) {
    let h2_odd_pair = orbits.len() == 2
        && orbits.iter().all(|o| o.stratum.zero_orders == [2] && o.n() % 2 == 1 && o.n() >= 5);
    for (k, o) in orbits.iter_mut().enumerate() {
        let x = &o.members[0].origami;
        let label = if o.stratum.zero_orders == [2] {
            if h2_odd_pair {
                if k == 0 { "A" } else { "B" }.to_string()
            } else {
                "single".to_string()
            }
        } else {
            let mono = match origami::monodromy_class(x).kind {
                MonodromyKind::Alt => "Alt".to_string(),
                MonodromyKind::Sym => "Sym".to_string(),
                MonodromyKind::Other(order) => format!("order {order}"),
            };
            match prym_kind(x) {
                Some(p) => format!("{p} {mono}"),
                None => mono,
            }
        };
        o.label = Some(label);
    }
}

/// `Prym` when some involution realizing `-I` has exactly the fixed-point
/// count of a Prym involution in genus 3 or 4 (4 or 2 points).
pub fn prym_kind(x: &Origami) -> Option<&'static str> {
    let g = x.stratum().ok()?.genus;
    let want = match g {
        3 => 4,
        4 => 2,
        _ => return None,
    };
    let k = x.hlk().ok()?;
    (k.total_fixed() == want).then_some("Prym")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub label: Gen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitGraph {
    pub vertices: Vec<CanonicalOrigami>,
    /// One edge per vertex and generator, in vertex order.
    pub edges: Vec<GraphEdge>,
}

impl OrbitGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.from] += 1;
            d[e.to] += 1;
        }
        d
    }

    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|e| e.from == e.to).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

pub fn build_graph(orbit: &Orbit) -> Result<OrbitGraph> {
    if orbit.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let gens = orbit.alphabet.generators();
    let mut edges = Vec::with_capacity(2 * orbit.len());
    for (i, e) in orbit.edges.iter().enumerate() {
        for k in 0..2 {
            edges.push(GraphEdge { from: i, to: e[k], label: gens[k].gen });
        }
    }
    Ok(OrbitGraph { vertices: orbit.members.clone(), edges })
}

/// Cycle lengths of a permutation of member indices.
pub fn cycle_lengths(table: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; table.len()];
    let mut out = Vec::new();
    for i in 0..table.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = table[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// For orbits whose members all have `-I` symmetry: `R` acts with cycles of
/// length 1 or 2 and `U` with cycles of length 1 or 3.
pub fn elliptic_structure_ok(orbit: &Orbit) -> bool {
    let r = cycle_lengths(&orbit.letter_table(Letter::R));
    let u = cycle_lengths(&orbit.letter_table(Letter::U));
    r.iter().all(|&k| k == 1 || k == 2) && u.iter().all(|&k| k == 1 || k == 3)
}

/// Members whose stratum, primitivity or HLK multiset differs from the first.
pub fn consistency_violations(orbit: &Orbit) -> Vec<String> {
    let first = &orbit.members[0].origami;
    let prim = first.is_primitive();
    let hlk = first.hlk().ok().map(|k| k.key());
    orbit
        .members
        .par_iter()
        .filter_map(|m| {
            let x = &m.origami;
            if x.stratum().ok().as_ref() != Some(&orbit.stratum) {
                return Some(format!("{x}: stratum differs"));
            }
            if x.is_primitive() != prim {
                return Some(format!("{x}: primitivity differs"));
            }
            if x.hlk().ok().map(|k| k.key()) != hlk {
                return Some(format!("{x}: HLK differs"));
            }
            None
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCheck {
    pub name: String,
    pub status: CheckStatus,
    pub block_sizes: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub orbit_size: usize,
    pub checks: Vec<BlockCheck>,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

/// Verifies that `block_of` is a partition into `count` nonempty blocks that
/// `T` and `S` permute as prescribed by `expected(block, generator)`.
fn check_quotient(
    name: &str,
    block_of: &[usize],
    count: usize,
    t: &[usize],
    s: &[usize],
    expected: impl Fn(usize, Gen) -> usize,
) -> BlockCheck {
    let mut sizes = vec![0; count];
    for &b in block_of {
        sizes[b] += 1;
    }
    let mut problems = Vec::new();
    if sizes.contains(&0) {
        problems.push("empty block".to_string());
    }
    for (table, g) in [(t, Gen::T), (s, Gen::S)] {
        for (i, &j) in table.iter().enumerate() {
            let want = expected(block_of[i], g);
            if block_of[j] != want {
                problems.push(format!("{:?} sends member {i} of B{} to B{}, expected B{}", g, block_of[i] + 1, block_of[j] + 1, want + 1));
                break;
            }
        }
    }
    BlockCheck {
        name: name.to_string(),
        status: if problems.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail },
        block_sizes: sizes,
        detail: problems.join("; "),
    }
}

fn not_applicable(name: &str, why: &str) -> BlockCheck {
    BlockCheck { name: name.to_string(), status: CheckStatus::NotApplicable, block_sizes: vec![], detail: why.to_string() }
}

/// Hexagon of six ordered-HLK blocks: `T` swaps the first two entries and
/// `S` the last two.
pub const SIX_BLOCKS: &str = "hlk-six-blocks";
/// Three blocks by the position of the distinct HLK entry.
pub const THREE_BLOCKS: &str = "hlk-three-blocks";
/// Three blocks by the parities of `h` and `v`.
pub const PARITY_BLOCKS: &str = "parity-blocks";
/// Pairs `{X, -I(X)}`.
pub const MINUS_I_PAIRS: &str = "minus-i-pairs";
/// At most half of the one-cylinder members have one vertical cylinder.
pub const ONE_CYLINDER_BOUND: &str = "one-cylinder-bound";

/// Builds every applicable block system of the orbit and checks partition,
/// invariance and quotient dynamics.
pub fn check_block_systems(orbit: &Orbit) -> BlockReport {
    let t = orbit.letter_table(Letter::T);
    let s = orbit.letter_table(Letter::S);
    let xs: Vec<&Origami> = orbit.members.iter().map(|m| &m.origami).collect();
    let mut checks = Vec::new();

    let hlks: Vec<Result<crate::origami::Hlk>> = xs.par_iter().map(|x| x.hlk()).collect();
    let has_minus_i = xs.par_iter().all(|x| x.has_minus_i());
    if has_minus_i {
        if let Some(Err(e)) = hlks.iter().find(|h| h.is_err()) {
            checks.push(BlockCheck {
                name: THREE_BLOCKS.into(),
                status: CheckStatus::Fail,
                block_sizes: vec![],
                detail: format!("HLK unavailable: {e}"),
            });
        } else {
            let hlks: Vec<_> = hlks.into_iter().map(|h| h.expect("checked")).collect();
            let triple = hlks[0].unordered;
            let distinct: BTreeSet<usize> = triple.iter().copied().collect();
            if distinct.len() == 3 {
                let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0], [2, 0, 1], [0, 2, 1]];
                let base = hlks[0].ordered;
                let arr = |p: [usize; 3]| [base[p[0]], base[p[1]], base[p[2]]];
                let blocks: Vec<[usize; 3]> = perms.iter().map(|&p| arr(p)).collect();
                let block_of: Vec<usize> = hlks.iter().map(|h| blocks.iter().position(|b| *b == h.ordered).unwrap_or(0)).collect();
                let swap = |b: [usize; 3], g: Gen| match g {
                    Gen::T => [b[1], b[0], b[2]],
                    _ => [b[0], b[2], b[1]],
                };
                checks.push(check_quotient(SIX_BLOCKS, &block_of, 6, &t, &s, |k, g| {
                    blocks.iter().position(|b| *b == swap(blocks[k], g)).expect("closed")
                }));
            } else {
                checks.push(not_applicable(SIX_BLOCKS, "no qualifying orbit found: HLK triple has a repeated entry"));
            }
            if distinct.len() == 2 {
                let odd = *triple.iter().find(|&&v| triple.iter().filter(|&&w| w == v).count() == 1).expect("distinct entry");
                let block_of: Vec<usize> =
                    hlks.iter().map(|h| h.ordered.iter().position(|&v| v == odd).unwrap_or(0)).collect();
                checks.push(check_quotient(THREE_BLOCKS, &block_of, 3, &t, &s, |k, g| match (k, g) {
                    (0, Gen::S) => 0,
                    (0, _) => 1,
                    (1, Gen::T) => 0,
                    (1, _) => 2,
                    (_, Gen::S) => 1,
                    _ => 2,
                }));
            } else {
                checks.push(not_applicable(THREE_BLOCKS, "HLK triple does not have exactly one distinct entry"));
            }
        }
    } else {
        checks.push(not_applicable(SIX_BLOCKS, "orbit has no -I symmetry"));
        checks.push(not_applicable(THREE_BLOCKS, "orbit has no -I symmetry"));
    }

    let sym = origami::monodromy_class(xs[0]).kind == MonodromyKind::Sym;
    if sym {
        let mut bad = None;
        let block_of: Vec<usize> = xs
            .iter()
            .map(|x| match (x.h().is_even(), x.v().is_even()) {
                (false, true) => 0,
                (false, false) => 1,
                (true, false) => 2,
                (true, true) => {
                    bad = Some(format!("{x}: h and v both even"));
                    0
                }
            })
            .collect();
        let mut c = check_quotient(PARITY_BLOCKS, &block_of, 3, &t, &s, |k, g| match (k, g) {
            (0, Gen::S) => 0,
            (0, _) => 1,
            (1, Gen::T) => 0,
            (1, _) => 2,
            (_, Gen::S) => 1,
            _ => 2,
        });
        if let Some(b) = bad {
            c.status = CheckStatus::Fail;
            c.detail = b;
        }
        checks.push(c);

        let one_cyl: Vec<&&Origami> = xs.iter().filter(|x| x.h().cycle_count() == 1).collect();
        let both = one_cyl.iter().filter(|x| x.v().cycle_count() == 1).count();
        let ok = 2 * both <= one_cyl.len();
        checks.push(BlockCheck {
            name: ONE_CYLINDER_BOUND.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            block_sizes: vec![both, one_cyl.len()],
            detail: format!("{both} of {} one-cylinder members have one vertical cylinder", one_cyl.len()),
        });
    } else {
        checks.push(not_applicable(PARITY_BLOCKS, "monodromy is not symmetric"));
        checks.push(not_applicable(ONE_CYLINDER_BOUND, "monodromy is not symmetric"));
    }

    if !has_minus_i {
        let mi: Vec<Option<usize>> = xs.par_iter().map(|x| orbit.index_of(&x.minus_i())).collect();
        let mut problems = Vec::new();
        for (i, m) in mi.iter().enumerate() {
            match m {
                None => problems.push(format!("-I image of member {i} outside orbit")),
                Some(j) if *j == i => problems.push(format!("member {i} is fixed by -I")),
                Some(j) if mi[*j] != Some(i) => problems.push(format!("-I is not an involution at {i}")),
                _ => {}
            }
            if !problems.is_empty() {
                break;
            }
        }
        if problems.is_empty() {
            for table in [&t, &s] {
                if let Some(i) = (0..xs.len()).find(|&i| mi[table[i]] != Some(table[mi[i].expect("paired")])) {
                    problems.push(format!("pairing not preserved at member {i}"));
                    break;
                }
            }
        }
        checks.push(BlockCheck {
            name: MINUS_I_PAIRS.into(),
            status: if problems.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail },
            block_sizes: vec![2; xs.len() / 2],
            detail: problems.join("; "),
        });
    } else {
        checks.push(not_applicable(MINUS_I_PAIRS, "members have -I symmetry"));
    }

    BlockReport { orbit_size: orbit.len(), checks }
}
