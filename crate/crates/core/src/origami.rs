//! Origamis as transitive permutation pairs `(h, v)`: square `i` has `h(i)` on
//! its right and `v(i)` above it.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::{self, Perm};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OrigamiJson", into = "OrigamiJson")]
pub struct Origami {
    h: Perm,
    v: Perm,
}

#[derive(Serialize, Deserialize)]
struct OrigamiJson {
    n: usize,
    h: Perm,
    v: Perm,
}

impl TryFrom<OrigamiJson> for Origami {
    type Error = Error;
    fn try_from(j: OrigamiJson) -> Result<Origami> {
        if j.h.degree() != j.n {
            return Err(Error::DegreeMismatch(j.n, j.h.degree()));
        }
        Origami::new(j.h, j.v)
    }
}

impl From<Origami> for OrigamiJson {
    fn from(o: Origami) -> OrigamiJson {
        OrigamiJson { n: o.n(), h: o.h, v: o.v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalOrigami {
    pub origami: Origami,
    pub digest: u64,
}

impl PartialOrd for CanonicalOrigami {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalOrigami {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.digest, &self.origami).cmp(&(other.digest, &other.origami))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumSignature {
    /// Zero orders in non-increasing order.
    pub zero_orders: Vec<usize>,
    pub genus: usize,
}

impl StratumSignature {
    pub fn new(mut zero_orders: Vec<usize>) -> StratumSignature {
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        let genus = (zero_orders.iter().sum::<usize>() + 2) / 2;
        StratumSignature { zero_orders, genus }
    }

    /// Parses `H2`, `H11`, `H(1,1)`, `H4`, `H6`, `H(3,1)` and similar.
    pub fn parse(s: &str) -> Result<StratumSignature> {
        let body = s.trim().strip_prefix('H').ok_or_else(|| Error::Parse(s.to_string()))?;
        let body = body.trim_start_matches('(').trim_end_matches(')');
        let orders: Vec<usize> = if body.contains(',') {
            body.split(',').map(|t| t.trim().parse::<usize>()).collect::<std::result::Result<_, _>>()
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or(())).collect::<std::result::Result<_, _>>().map_err(|_| "".parse::<usize>().unwrap_err())
        }
        .map_err(|_| Error::Parse(s.to_string()))?;
        if orders.contains(&0) || orders.iter().sum::<usize>() % 2 == 1 {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(StratumSignature::new(orders))
    }

    /// Number of corner vertices that are cone points plus the minimal square count
    /// needed to realize the stratum.
    pub fn min_squares(&self) -> usize {
        self.zero_orders.iter().map(|k| k + 1).sum::<usize>().max(1)
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.zero_orders.iter().map(|k| k.to_string()).collect();
        format!("H({})", parts.join(","))
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hlk {
    pub l0: usize,
    /// Counts over `(0,½)`, `(½,½)`, `(½,0)` in that order.
    pub ordered: [usize; 3],
    /// The ordered triple sorted non-increasingly.
    pub unordered: [usize; 3],
    /// Cone points fixed by the involution; these are not counted in `l0`.
    pub fixed_cone_points: usize,
}

impl Hlk {
    pub fn new(l0: usize, ordered: [usize; 3], fixed_cone_points: usize) -> Hlk {
        let mut unordered = ordered;
        unordered.sort_unstable_by(|a, b| b.cmp(a));
        Hlk { l0, ordered, unordered, fixed_cone_points }
    }

    /// The orbit-level part `(l0, [l1,l2,l3])`.
    pub fn key(&self) -> (usize, [usize; 3]) {
        (self.l0, self.unordered)
    }

    pub fn total_fixed(&self) -> usize {
        self.l0 + self.ordered.iter().sum::<usize>() + self.fixed_cone_points
    }
}

impl fmt::Display for Hlk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.unordered;
        write!(f, "({},[{},{},{}])", self.l0, a, b, c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cylinder {
    pub width: usize,
    pub height: usize,
    pub twist: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    /// Sorted by `(width, height, twist)`.
    pub cylinders: Vec<Cylinder>,
}

impl CylinderDecomposition {
    pub fn area(&self) -> usize {
        self.cylinders.iter().map(|c| c.width * c.height).sum()
    }
}

/// Surface parameters `(w1,h1,t1,w2,h2,t2)` of a two-cylinder origami in H(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct H2Params {
    pub w1: usize,
    pub h1: usize,
    pub t1: usize,
    pub w2: usize,
    pub h2: usize,
    pub t2: usize,
}

impl H2Params {
    pub fn new(w1: usize, h1: usize, t1: usize, w2: usize, h2: usize, t2: usize) -> H2Params {
        H2Params { w1, h1, t1, w2, h2, t2 }
    }

    pub fn area(&self) -> usize {
        self.w1 * self.h1 + self.w2 * self.h2
    }

    pub fn cusp_width(&self) -> usize {
        let a = self.w1 / self.w1.gcd(&self.h1);
        let b = self.w2 / self.w2.gcd(&self.h2);
        a.lcm(&b)
    }

    pub fn is_cusp_representative(&self) -> bool {
        self.t1 < self.w1.gcd(&self.h1) && self.t2 < self.w2.gcd(&self.h2)
    }

    /// Parses `(w1,h1,t1,w2,h2,t2)`.
    pub fn parse(s: &str) -> Result<H2Params> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<usize> = body
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(s.to_string()))?;
        if v.len() != 6 {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(H2Params::new(v[0], v[1], v[2], v[3], v[4], v[5]))
    }
}

impl fmt::Display for H2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.w1, self.h1, self.t1, self.w2, self.h2, self.t2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonodromyKind {
    Alt,
    Sym,
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monodromy {
    pub kind: MonodromyKind,
    pub order: String,
    pub primitive: bool,
}

impl Origami {
    /// Validates a pair; fails with `NotConnected` when `<h, v>` is intransitive.
    pub fn new(h: Perm, v: Perm) -> Result<Origami> {
        if h.degree() != v.degree() {
            return Err(Error::DegreeMismatch(h.degree(), v.degree()));
        }
        let n = h.degree();
        if n == 0 || !perm::is_transitive(&[h.clone(), v.clone()], n) {
            return Err(Error::NotConnected);
        }
        Ok(Origami { h, v })
    }

    pub(crate) fn new_unchecked(h: Perm, v: Perm) -> Origami {
        Origami { h, v }
    }

    pub fn torus() -> Origami {
        Origami { h: Perm::identity(1), v: Perm::identity(1) }
    }

    /// Parses `(2,3),(1,2,3)` or `((2,3),(1,2,3))`. The degree is the largest
    /// symbol present unless given.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Origami> {
        let mut t = s.trim();
        if t.starts_with("((") && t.ends_with("))") {
            t = &t[1..t.len() - 1];
        }
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| Error::Parse(s.to_string()))?;
        let (hs, vs) = (t[..i].trim(), t[i + 1..].trim());
        let max_symbol = t
            .split(|c: char| !c.is_ascii_digit())
            .filter(|x| !x.is_empty())
            .filter_map(|x| x.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        let n = n.unwrap_or(max_symbol);
        Origami::new(Perm::parse_cycles(n, hs)?, Perm::parse_cycles(n, vs)?)
    }

    pub fn n(&self) -> usize {
        self.h.degree()
    }

    pub fn h(&self) -> &Perm {
        &self.h
    }

    pub fn v(&self) -> &Perm {
        &self.v
    }

    pub fn relabel(&self, sigma: &Perm) -> Origami {
        Origami { h: self.h.conjugate_by(sigma), v: self.v.conjugate_by(sigma) }
    }

    /// `T(h,v) = (h, v h⁻¹)`.
    pub fn act_t(&self) -> Origami {
        Origami { h: self.h.clone(), v: self.v.after(&self.h.inverse()) }
    }

    pub fn act_t_inv(&self) -> Origami {
        Origami { h: self.h.clone(), v: self.v.after(&self.h) }
    }

    /// `S(h,v) = (h v⁻¹, v)`.
    pub fn act_s(&self) -> Origami {
        Origami { h: self.h.after(&self.v.inverse()), v: self.v.clone() }
    }

    pub fn act_s_inv(&self) -> Origami {
        Origami { h: self.h.after(&self.v), v: self.v.clone() }
    }

    /// `-I(h,v) = (h⁻¹, v⁻¹)`.
    pub fn minus_i(&self) -> Origami {
        Origami { h: self.h.inverse(), v: self.v.inverse() }
    }

    /// The commutator `h v h⁻¹ v⁻¹`; its cycles are the bottom-left corners
    /// grouped by vertex.
    pub fn corner(&self) -> Perm {
        self.h.after(&self.v.after(&self.h.inverse().after(&self.v.inverse())))
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.n() == other.n() && canonical_pair(self) == canonical_pair(other)
    }

    pub fn canonical(&self) -> CanonicalOrigami {
        canonical_form(self)
    }

    pub fn stratum(&self) -> Result<StratumSignature> {
        stratum_and_genus(self)
    }

    pub fn is_primitive(&self) -> bool {
        perm::is_primitive(&[self.h.clone(), self.v.clone()], self.n())
    }

    /// Simultaneous conjugators `sigma` with `sigma h sigma⁻¹ = h⁻¹`,
    /// `sigma v sigma⁻¹ = v⁻¹` and `sigma² = id`.
    pub fn involutions(&self) -> Vec<Perm> {
        let hi = self.h.inverse();
        let vi = self.v.inverse();
        perm::pair_conjugators((&self.h, &self.v), (&hi, &vi))
            .expect("equal degrees")
            .into_iter()
            .filter(|s| s.after(s).is_identity())
            .collect()
    }

    pub fn has_minus_i(&self) -> bool {
        let hi = self.h.inverse();
        let vi = self.v.inverse();
        !perm::pair_conjugators((&self.h, &self.v), (&hi, &vi)).expect("equal degrees").is_empty()
    }

    pub fn hlk(&self) -> Result<Hlk> {
        hlk_invariant(self)
    }

    pub fn cylinders(&self) -> CylinderDecomposition {
        cylinder_decomposition(self)
    }

    /// The vertical cylinders, read off the origami `(v, h)` with the roles of
    /// the two directions exchanged.
    pub fn vertical_cylinders(&self) -> CylinderDecomposition {
        cylinder_decomposition(&Origami { h: self.v.clone(), v: self.h.clone() })
    }

    pub fn h2_params(&self) -> Option<H2Params> {
        h2_params(self)
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.v)
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Origami{}", self)
    }
}

pub fn make_origami(h: Perm, v: Perm) -> Result<Origami> {
    Origami::new(h, v)
}

/// Relabeling by breadth-first visit order from `start` along `h, v, h⁻¹, v⁻¹`.
fn relabel_from(h: &[usize], v: &[usize], hi: &[usize], vi: &[usize], start: usize, label: &mut [usize], order: &mut Vec<usize>) {
    let n = h.len();
    label.iter_mut().for_each(|x| *x = usize::MAX);
    order.clear();
    label[start] = 0;
    order.push(start);
    let mut k = 0;
    while k < order.len() {
        let x = order[k];
        k += 1;
        for g in [h, v, hi, vi] {
            let y = g[x];
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
    }
    debug_assert_eq!(order.len(), n);
}

fn canonical_pair(x: &Origami) -> (Vec<usize>, Vec<usize>) {
    let n = x.n();
    let h = x.h.images();
    let v = x.v.images();
    let hi = x.h.inverse();
    let vi = x.v.inverse();
    let mut label = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut cand = (vec![0; n], vec![0; n]);
    for s in 0..n {
        relabel_from(h, v, hi.images(), vi.images(), s, &mut label, &mut order);
        for i in 0..n {
            cand.0[i] = label[h[order[i]]];
            cand.1[i] = label[v[order[i]]];
        }
        match &best {
            Some(b) if (&cand.0, &cand.1) >= (&b.0, &b.1) => {}
            _ => best = Some(cand.clone()),
        }
    }
    best.expect("nonempty origami")
}

pub fn digest_of(x: &Origami) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update((x.n() as u64).to_le_bytes());
    for p in [&x.h, &x.v] {
        for &i in p.images() {
            hasher.update((i as u32).to_le_bytes());
        }
    }
    let out = hasher.finalize();
    u64::from_be_bytes(out[..8].try_into().expect("8 bytes"))
}

/// Lexicographically least `(h, v)` over all breadth-first relabelings.
pub fn canonical_form(x: &Origami) -> CanonicalOrigami {
    let (h, v) = canonical_pair(x);
    let origami = Origami { h: Perm::from_vec_unchecked(h), v: Perm::from_vec_unchecked(v) };
    let digest = digest_of(&origami);
    CanonicalOrigami { origami, digest }
}

pub fn stratum_and_genus(x: &Origami) -> Result<StratumSignature> {
    let c = x.corner();
    let cycles = c.cycles();
    let n = x.n();
    let twice = 2 + n;
    if cycles.len() > twice || (twice - cycles.len()) % 2 == 1 {
        return Err(Error::ParityError { n, vertices: cycles.len() });
    }
    let genus = (twice - cycles.len()) / 2;
    let mut zero_orders: Vec<usize> = cycles.iter().filter(|c| c.len() >= 2).map(|c| c.len() - 1).collect();
    zero_orders.sort_unstable_by(|a, b| b.cmp(a));
    Ok(StratumSignature { zero_orders, genus })
}

pub fn monodromy_class(x: &Origami) -> Monodromy {
    let d = perm::group_describe(&[x.h.clone(), x.v.clone()]).expect("equal degrees");
    let n = x.n();
    let fact: BigUint = (1..=n).fold(BigUint::from(1u32), |a, k| a * BigUint::from(k));
    let kind = if d.order == fact {
        MonodromyKind::Sym
    } else if n >= 2 && d.order.clone() * BigUint::from(2u32) == fact && x.h.is_even() && x.v.is_even() {
        MonodromyKind::Alt
    } else {
        MonodromyKind::Other(d.order.to_string())
    };
    Monodromy { kind, order: d.order.to_string(), primitive: d.primitive }
}

fn hlk_for(x: &Origami, sigma: &Perm, classes: &[usize], cone: &[bool]) -> Hlk {
    let n = x.n();
    let hi = x.h.inverse();
    let vi = x.v.inverse();
    let mut left = 0;
    let mut center = 0;
    let mut bottom = 0;
    for i in 0..n {
        let s = sigma.apply(i);
        if s == hi.apply(i) {
            left += 1;
        }
        if s == i {
            center += 1;
        }
        if s == vi.apply(i) {
            bottom += 1;
        }
    }
    let mut l0 = 0;
    let mut fixed_cone = 0;
    let mut done = vec![false; cone.len()];
    for i in 0..n {
        let k = classes[i];
        if done[k] {
            continue;
        }
        done[k] = true;
        let image = classes[x.v.apply(x.h.apply(sigma.apply(i)))];
        if image == k {
            if cone[k] {
                fixed_cone += 1;
            } else {
                l0 += 1;
            }
        }
    }
    Hlk::new(l0, [left, center, bottom], fixed_cone)
}

/// HLK invariant of an origami with `-I` symmetry. The involution sends
/// `(x,y)` in square `i` to `(1-x,1-y)` in square `sigma(i)`.
pub fn hlk_invariant(x: &Origami) -> Result<Hlk> {
    let sigmas = x.involutions();
    if sigmas.is_empty() {
        return Err(Error::NoInvolution);
    }
    let cycles = x.corner().cycles();
    let mut classes = vec![0; x.n()];
    let mut cone = Vec::with_capacity(cycles.len());
    for (k, c) in cycles.iter().enumerate() {
        for &i in c {
            classes[i] = k;
        }
        cone.push(c.len() >= 2);
    }
    let mut results: Vec<Hlk> = sigmas.iter().map(|s| hlk_for(x, s, &classes, &cone)).collect();
    results.dedup();
    let first = results[0].clone();
    if results.iter().any(|r| *r != first) {
        let mut all: Vec<String> = results.iter().map(|r| format!("{} ordered {:?}", r, r.ordered)).collect();
        all.sort();
        all.dedup();
        if all.len() > 1 {
            return Err(Error::AmbiguousInvolution(all.join("; ")));
        }
    }
    Ok(first)
}

pub fn cylinder_decomposition(x: &Origami) -> CylinderDecomposition {
    cylinders_detailed(x).into_iter().map(|c| c.cylinder).collect::<Vec<_>>().into()
}

impl From<Vec<Cylinder>> for CylinderDecomposition {
    fn from(mut cylinders: Vec<Cylinder>) -> Self {
        cylinders.sort();
        CylinderDecomposition { cylinders }
    }
}

pub(crate) struct CylinderDetail {
    pub cylinder: Cylinder,
}

pub(crate) fn cylinders_detailed(x: &Origami) -> Vec<CylinderDetail> {
    let n = x.n();
    let h = &x.h;
    let v = &x.v;
    let rows = h.cycles();
    let mut row_of = vec![0; n];
    for (r, c) in rows.iter().enumerate() {
        for &i in c {
            row_of[i] = r;
        }
    }
    let mut up: Vec<Option<usize>> = vec![None; rows.len()];
    let mut has_down = vec![false; rows.len()];
    for (r, c) in rows.iter().enumerate() {
        if c.iter().all(|&i| v.apply(h.apply(i)) == h.apply(v.apply(i))) {
            let r2 = row_of[v.apply(c[0])];
            up[r] = Some(r2);
            has_down[r2] = true;
        }
    }
    let mut cyl_of_row = vec![usize::MAX; rows.len()];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for start in 0..rows.len() {
        if has_down[start] {
            continue;
        }
        let mut chain = vec![start];
        let mut r = start;
        while let Some(r2) = up[r] {
            chain.push(r2);
            r = r2;
        }
        chains.push(chain);
    }
    for start in 0..rows.len() {
        if chains.iter().any(|c| c.contains(&start)) {
            continue;
        }
        // rows closing up into a cylinder without boundary
        let mut chain = vec![start];
        let mut r = up[start].expect("boundary-free cylinder");
        while r != start {
            chain.push(r);
            r = up[r].expect("boundary-free cylinder");
        }
        chains.push(chain);
    }
    for (k, c) in chains.iter().enumerate() {
        for &r in c {
            cyl_of_row[r] = k;
        }
    }
    let corner = x.corner();
    let mut is_cone = vec![false; n];
    for c in corner.cycles() {
        if c.len() >= 2 {
            for i in c {
                is_cone[i] = true;
            }
        }
    }
    let vi = v.inverse();
    let mut out = Vec::new();
    for (k, chain) in chains.iter().enumerate() {
        let width = rows[chain[0]].len();
        let height = chain.len();
        let s0 = rows[chain[0]][0];
        let bottom: Vec<usize> = (0..width).scan(s0, |s, _| {
            let cur = *s;
            *s = h.apply(cur);
            Some(cur)
        }).collect();
        let mut top_base = s0;
        for _ in 1..height {
            top_base = v.apply(top_base);
        }
        let top: Vec<usize> = (0..width).scan(top_base, |s, _| {
            let cur = *s;
            *s = h.apply(cur);
            Some(cur)
        }).collect();
        let bottom_sing: Vec<usize> = (0..width).filter(|&p| is_cone[bottom[p]]).collect();
        let top_sing: Vec<usize> = (0..width).filter(|&q| is_cone[v.apply(top[q])]).collect();
        let twist = if bottom_sing.is_empty() || top_sing.is_empty() {
            let target = v.apply(top_base);
            let pos = bottom.iter().position(|&s| s == target).unwrap_or(0);
            (width - pos) % width
        } else {
            let other_bottom: Vec<usize> =
                bottom_sing.iter().copied().filter(|&p| cyl_of_row[row_of[vi.apply(bottom[p])]] != k).collect();
            let other_top: Vec<usize> =
                top_sing.iter().copied().filter(|&q| cyl_of_row[row_of[v.apply(top[q])]] != k).collect();
            let pb = if other_bottom.is_empty() { bottom_sing } else { other_bottom };
            let pt = if other_top.is_empty() { top_sing } else { other_top };
            let mut best = usize::MAX;
            for &b in &pb {
                for &t in &pt {
                    best = best.min((t + width - b) % width);
                }
            }
            best
        };
        out.push(CylinderDetail { cylinder: Cylinder { width, height, twist } });
    }
    out
}

/// The two-cylinder H(2) origami with the given surface parameters. Squares
/// are numbered row-major, bottom cylinder (width `w2`) first; output
/// symbols are 1-based as everywhere else.
pub fn from_h2_params(p: H2Params) -> Result<Origami> {
    let H2Params { w1, h1, t1, w2, h2, t2 } = p;
    if w1 == 0 || h1 == 0 || h2 == 0 {
        return Err(Error::BadParams(format!("{p}: widths and heights must be positive")));
    }
    if w1 >= w2 {
        return Err(Error::BadParams(format!("{p}: need w1 < w2")));
    }
    if t1 >= w1 || t2 >= w2 {
        return Err(Error::BadParams(format!("{p}: twists must satisfy t_i < w_i")));
    }
    let n = p.area();
    let b = |r: usize, c: usize| r * w2 + c;
    let t = |r: usize, c: usize| w2 * h2 + r * w1 + c;
    let mut hh = vec![0; n];
    let mut vv = vec![0; n];
    for r in 0..h2 {
        for c in 0..w2 {
            hh[b(r, c)] = b(r, (c + 1) % w2);
            vv[b(r, c)] = if r + 1 < h2 {
                b(r + 1, c)
            } else {
                let q = (c + w2 - t2) % w2;
                if q < w1 { t(0, q) } else { b(0, q) }
            };
        }
    }
    for r in 0..h1 {
        for c in 0..w1 {
            hh[t(r, c)] = t(r, (c + 1) % w1);
            vv[t(r, c)] = if r + 1 < h1 { t(r + 1, c) } else { b(0, (c + w1 - t1) % w1) };
        }
    }
    Origami::new(Perm::new(hh)?, Perm::new(vv)?)
}

/// Surface parameters of a two-cylinder H(2) origami, `None` otherwise.
pub fn h2_params(x: &Origami) -> Option<H2Params> {
    if x.stratum().ok()?.zero_orders != [2] {
        return None;
    }
    let d = x.cylinders();
    if d.cylinders.len() != 2 {
        return None;
    }
    let (a, b) = (d.cylinders[0], d.cylinders[1]);
    if a.width >= b.width {
        return None;
    }
    Some(H2Params::new(a.width, a.height, a.twist, b.width, b.height, b.twist))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspData {
    pub width: usize,
    pub representative: CanonicalOrigami,
}

/// Cusp width by iterating `T`, with the cusp representative. For two-cylinder
/// H(2) origamis the width is checked against the lcm formula and the
/// representative is the member with `t1 < gcd(w1, h1)` and least `t2`. This
/// is the member with both `t_i < gcd(w_i, h_i)` whenever
/// `w1/gcd(w1,h1)` and `w2/gcd(w2,h2)` are coprime; otherwise no such member
/// need exist.
pub fn cusp_data(x: &Origami) -> Result<CuspData> {
    let start = canonical_form(x);
    let mut members = vec![start.clone()];
    let mut cur = start.origami.act_t();
    loop {
        let c = canonical_form(&cur);
        if c == start {
            break;
        }
        members.push(c.clone());
        cur = c.origami.act_t();
    }
    let width = members.len();
    if let Some(p) = h2_params(x) {
        if p.cusp_width() != width {
            return Err(Error::CuspMismatch(format!("{p}: iterated width {width}, formula {}", p.cusp_width())));
        }
        let g1 = p.w1.gcd(&p.h1);
        let mut reps: Vec<(usize, &CanonicalOrigami)> = members
            .iter()
            .filter_map(|m| m.origami.h2_params().filter(|q| q.t1 < g1).map(|q| (q.t2, m)))
            .collect();
        reps.sort_by_key(|r| r.0);
        if reps.is_empty() || (reps.len() > 1 && reps[0].0 == reps[1].0) {
            return Err(Error::CuspMismatch(format!("{p}: no unique member with t1 < gcd(w1,h1) and least t2")));
        }
        let reps = [reps[0].1];
        return Ok(CuspData { width, representative: reps[0].clone() });
    }
    let representative = members
        .iter()
        .min_by(|a, b| (a.origami.h.images(), a.origami.v.images()).cmp(&(b.origami.h.images(), b.origami.v.images())))
        .expect("nonempty")
        .clone();
    Ok(CuspData { width, representative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Origami {
        Origami::parse(s, None).unwrap()
    }

    #[test]
    fn make_examples() {
        assert!(o("(2,3),(1,2,3)").n() == 3);
        let r = Origami::new(Perm::parse_cycles(3, "(1,2)").unwrap(), Perm::parse_cycles(3, "(1,2)").unwrap());
        assert_eq!(r, Err(Error::NotConnected));
        let t = Origami::new(Perm::identity(1), Perm::identity(1)).unwrap();
        assert_eq!(t.stratum().unwrap(), StratumSignature { zero_orders: vec![], genus: 1 });
    }

    #[test]
    fn parse_forms() {
        assert_eq!(o("((2,3),(1,2,3))"), o("(2,3),(1,2,3)"));
        assert_eq!(o("((1,2)(3,4,5),(1,3,2,4,5))").n(), 5);
        assert_eq!(Origami::parse("(),()", Some(1)).unwrap(), Origami::torus());
        assert!(Origami::parse("(1,2)", None).is_err());
        let json = serde_json::to_string(&o("(2,3),(1,2,3)")).unwrap();
        assert_eq!(json, r#"{"n":3,"h":[1,3,2],"v":[2,3,1]}"#);
        assert_eq!(serde_json::from_str::<Origami>(&json).unwrap(), o("(2,3),(1,2,3)"));
        assert!(serde_json::from_str::<Origami>(r#"{"n":3,"h":[1,2,3],"v":[1,2,3]}"#).is_err());
    }

    #[test]
    fn canonical_examples() {
        let a = o("(1,3,2),(1,2)");
        let b = o("(1,2,3),(2,3)");
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let x = o("(2,3),(1,2,3)");
        let c = canonical_form(&x);
        assert_eq!(canonical_form(&c.origami), c);
    }

    #[test]
    fn stratum_examples() {
        let x = o("(2,3),(1,2,3)");
        assert_eq!(x.corner().cycle_count(), 1);
        assert_eq!(x.stratum().unwrap(), StratumSignature { zero_orders: vec![2], genus: 2 });
        assert_eq!(o("(1,2,3,4,5,6,7),(4,5,6,7)").stratum().unwrap().zero_orders, vec![2]);
        assert_eq!(StratumSignature::parse("H11").unwrap().zero_orders, vec![1, 1]);
        assert_eq!(StratumSignature::parse("H(3,1)").unwrap().zero_orders, vec![3, 1]);
        assert_eq!(StratumSignature::parse("H2").unwrap().genus, 2);
        assert!(StratumSignature::parse("H3").is_err());
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(monodromy_class(&o("(2,3),(1,2,3)")).kind, MonodromyKind::Sym);
        let m = monodromy_class(&o("(1,2,3,4,5),(3,4,5)"));
        assert_eq!(m.kind, MonodromyKind::Alt);
        assert_eq!(m.order, "60");
        let m = monodromy_class(&o("(1,2,3,4),(1,3)"));
        assert_eq!(m.kind, MonodromyKind::Other("8".into()));
        assert!(!m.primitive);
    }

    #[test]
    fn h2_builder_examples() {
        let a = from_h2_params(H2Params::new(1, 1, 0, 2, 2, 0)).unwrap();
        let b = from_h2_params(H2Params::new(1, 1, 0, 2, 2, 1)).unwrap();
        assert_eq!(a.n(), 5);
        assert_eq!(a.stratum().unwrap().zero_orders, vec![2]);
        assert_eq!(a.hlk().unwrap().key(), (0, [3, 1, 1]));
        assert_eq!(b.hlk().unwrap().key(), (2, [1, 1, 1]));
        assert!(canonical_form(&a.act_t()) == canonical_form(&a));
        assert!(matches!(from_h2_params(H2Params::new(2, 1, 2, 3, 1, 0)), Err(Error::BadParams(_))));
        assert!(matches!(from_h2_params(H2Params::new(2, 1, 0, 2, 1, 0)), Err(Error::BadParams(_))));
        let d = a.cylinders();
        assert_eq!(d.cylinders, vec![Cylinder { width: 1, height: 1, twist: 0 }, Cylinder { width: 2, height: 2, twist: 0 }]);
        let c = from_h2_params(H2Params::new(1, 3, 0, 2, 1, 0)).unwrap();
        assert_eq!(cusp_data(&c).unwrap().width, 2);
    }

    #[test]
    fn hlk_sum_counts_all_fixed_points() {
        for p in [H2Params::new(1, 1, 0, 2, 2, 0), H2Params::new(1, 1, 0, 2, 2, 1), H2Params::new(1, 2, 0, 2, 1, 1)] {
            let x = from_h2_params(p).unwrap();
            let k = x.hlk().unwrap();
            assert_eq!(k.total_fixed(), 6, "{p}");
            assert_eq!(k.fixed_cone_points, 1);
        }
    }

    #[test]
    fn hlk_requires_involution() {
        // a genus-3 one-cylinder origami without -I symmetry
        let found = (0..5040usize).find_map(|k| {
            let mut v: Vec<usize> = (0..7).collect();
            let mut k = k;
            for i in (1..7).rev() {
                v.swap(i, k % (i + 1));
                k /= i + 1;
            }
            let x = Origami::new(Perm::new((1..=7).map(|i| i % 7).collect()).unwrap(), Perm::new(v).ok()?).ok()?;
            (!x.has_minus_i()).then_some(x)
        });
        let x = found.expect("an asymmetric origami exists");
        assert_eq!(x.hlk(), Err(Error::NoInvolution));
    }

    #[test]
    fn cusp_examples() {
        let a = from_h2_params(H2Params::new(1, 1, 0, 2, 2, 0)).unwrap();
        assert_eq!(cusp_data(&a).unwrap().width, 1);
        let one_cyl = o("(1,2,3,4),(2,3,4)");
        assert_eq!(one_cyl.cylinders().cylinders.len(), 1);
        assert_eq!(cusp_data(&one_cyl).unwrap().width, 4);
        assert_eq!(H2Params::new(2, 1, 0, 3, 1, 0).cusp_width(), 6);
        let x = from_h2_params(H2Params::new(2, 1, 0, 3, 1, 0)).unwrap();
        assert_eq!(cusp_data(&x).unwrap().width, 6);
    }

    fn random_origami(max_n: usize) -> impl Strategy<Value = Origami> {
        (1..=max_n).prop_flat_map(|n| {
            let p = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (p.clone(), p)
        })
        .prop_filter_map("connected", |(h, v)| Origami::new(Perm::new(h).ok()?, Perm::new(v).ok()?).ok())
    }

    fn random_relabel(max_n: usize) -> impl Strategy<Value = (Origami, Perm)> {
        random_origami(max_n).prop_flat_map(|x| {
            let n = x.n();
            (Just(x), Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|s| Perm::new(s).unwrap()))
        })
    }

    fn h2_param_strategy() -> impl Strategy<Value = H2Params> {
        (1usize..5, 1usize..4, 2usize..7, 1usize..4, 0usize..100, 0usize..100).prop_filter_map("w1<w2", |(w1, h1, w2, h2, a, b)| {
            (w1 < w2).then(|| H2Params::new(w1, h1, a % w1, w2, h2, b % w2))
        })
    }

    proptest! {
        #[test]
        fn canonical_is_relabel_invariant((x, s) in random_relabel(10)) {
            let y = x.relabel(&s);
            prop_assert_eq!(canonical_form(&x), canonical_form(&y));
            let c = canonical_form(&x);
            prop_assert_eq!(canonical_form(&c.origami), c.clone());
            prop_assert!(!perm::pair_conjugators((x.h(), x.v()), (c.origami.h(), c.origami.v())).unwrap().is_empty());
        }

        #[test]
        fn stratum_invariants(x in random_origami(12)) {
            let s = x.stratum().unwrap();
            prop_assert_eq!(s.zero_orders.iter().sum::<usize>() + 2, 2 * s.genus);
            prop_assert_eq!(&x.act_t().stratum().unwrap(), &s);
            prop_assert_eq!(&x.act_s().stratum().unwrap(), &s);
            prop_assert_eq!(x.cylinders().area(), x.n());
        }

        #[test]
        fn h2_builder_round_trip(p in h2_param_strategy()) {
            let x = from_h2_params(p).unwrap();
            prop_assert_eq!(x.stratum().unwrap().zero_orders, vec![2]);
            prop_assert_eq!(h2_params(&x), Some(p));
            let cd = cusp_data(&x).unwrap();
            prop_assert_eq!(cd.width, p.cusp_width());
            let mut y = x.clone();
            for _ in 0..cd.width { y = y.act_t(); }
            prop_assert!(y.is_isomorphic(&x));
        }

        #[test]
        fn hlk_triple_permuted_by_generators(p in h2_param_strategy()) {
            let x = from_h2_params(p).unwrap();
            let k = x.hlk().unwrap();
            for y in [x.act_t(), x.act_s()] {
                let ky = y.hlk().unwrap();
                prop_assert_eq!(ky.key(), k.key());
                prop_assert_eq!(ky.total_fixed(), 6);
            }
            let kt = x.act_t().hlk().unwrap();
            prop_assert_eq!(kt.ordered, [k.ordered[1], k.ordered[0], k.ordered[2]]);
            let ks = x.act_s().hlk().unwrap();
            prop_assert_eq!(ks.ordered, [k.ordered[0], k.ordered[2], k.ordered[1]]);
        }
    }
}
