//! Permutations on `{0..n}` (printed and serialized 1-indexed), permutation
//! group order via a stabilizer chain, block systems and simultaneous
//! conjugator search.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleData {
    /// Cycle lengths in non-increasing order, fixed points included.
    pub cycle_type: Vec<usize>,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescription {
    pub generators: Vec<Perm>,
    pub order: BigUint,
    pub transitive: bool,
    pub primitive: bool,
    pub minimal_blocks: Option<Vec<Vec<usize>>>,
}

impl Perm {
    /// Builds a permutation from 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{:?}", images)));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::new(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from 1-based images, the serialized form.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::NotAPermutation(format!("{:?}", images)));
        }
        Perm::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    /// Builds a permutation of degree `n` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > n || used[x - 1] {
                    return Err(Error::NotAPermutation(format!("{:?}", cycles)));
                }
                used[x - 1] = true;
                images[x - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(1,2)(3,4,5)`; `()` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Perm> {
        let cycles = parse_cycle_list(s)?;
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            r[x] = i;
        }
        Perm { images: r }
    }

    /// `self ∘ q`: apply `q` first, then `self`. Panics on degree mismatch.
    pub fn after(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Perm { images: q.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut r = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            r = base.after(&r);
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles (0-based), fixed points included, each starting at its
    /// least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut c = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                c.push(j);
                j = self.images[j];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for i in 0..n {
            if !seen[i] {
                count += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = self.images[j];
                }
            }
        }
        count
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()).is_multiple_of(2)
    }

    /// `sigma ∘ self ∘ sigma⁻¹`.
    pub fn conjugate_by(&self, sigma: &Perm) -> Perm {
        let mut r = vec![0; self.degree()];
        for i in 0..self.degree() {
            r[sigma.images[i]] = sigma.images[self.images[i]];
        }
        Perm { images: r }
    }
}

pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(p.after(q))
}

pub fn cycle_data(p: &Perm) -> CycleData {
    let mut cycle_type: Vec<usize> = p.cycles().iter().map(|c| c.len()).collect();
    cycle_type.sort_unstable_by(|a, b| b.cmp(a));
    let parity = if (p.degree() - cycle_type.len()).is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    CycleData { cycle_type, parity }
}

fn parse_cycle_list(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(s.to_string()))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(s.to_string()))?;
        let body = &open[..close];
        let items: Vec<&str> =
            body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        if !items.is_empty() {
            let cyc = items
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(s.to_string())))
                .collect::<Result<Vec<_>>>()?;
            out.push(cyc);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() > 1 {
                any = true;
                let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "({})", parts.join(","))?;
            }
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Perm, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// Orbit of `point` under the group generated by `gens`, in discovery order.
pub fn orbit_of(gens: &[Perm], n: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut out = vec![point];
    seen[point] = true;
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        k += 1;
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
    }
    out
}

pub fn is_transitive(gens: &[Perm], n: usize) -> bool {
    n == 0 || orbit_of(gens, n, 0).len() == n
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b`.
    transversal: Vec<Option<Perm>>,
    processed: usize,
}

/// Deterministic Schreier–Sims over the fixed base `0, 1, …, n-1`.
pub struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &[Perm], n: usize) -> StabilizerChain {
        let levels = (0..n)
            .map(|i| {
                let mut transversal = vec![None; n];
                transversal[i] = Some(Perm::identity(n));
                Level { point: i, gens: Vec::new(), orbit: vec![i], transversal, processed: 0 }
            })
            .collect();
        let mut chain = StabilizerChain { n, levels };
        for g in gens {
            if !chain.contains(g) {
                chain.add_generator(0, g.clone());
            }
        }
        chain
    }

    /// Strips `g` through levels `start..`; returns the residue and the level
    /// where it stopped (`n` when fully sifted).
    fn sift(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for j in start..self.n {
            let level = &self.levels[j];
            let b = g.apply(level.point);
            match &level.transversal[b] {
                None => return (g, j),
                Some(u) => g = u.inverse().after(&g),
            }
        }
        (g, self.n)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (r, _) = self.sift(g.clone(), 0);
        r.is_identity()
    }

    fn add_generator(&mut self, i: usize, g: Perm) {
        self.levels[i].gens.push(g);
        let newest = self.levels[i].gens.len() - 1;
        let existing = self.levels[i].processed;
        for k in 0..existing {
            let b = self.levels[i].orbit[k];
            self.process_pair(i, b, newest);
        }
        while self.levels[i].processed < self.levels[i].orbit.len() {
            let k = self.levels[i].processed;
            let b = self.levels[i].orbit[k];
            for s in 0..self.levels[i].gens.len() {
                self.process_pair(i, b, s);
            }
            self.levels[i].processed += 1;
        }
    }

    fn process_pair(&mut self, i: usize, b: usize, s: usize) {
        let gen = self.levels[i].gens[s].clone();
        let ub = self.levels[i].transversal[b].clone().expect("orbit point has a transversal");
        let c = gen.apply(b);
        let sub = gen.after(&ub);
        match &self.levels[i].transversal[c] {
            None => {
                self.levels[i].transversal[c] = Some(sub);
                self.levels[i].orbit.push(c);
            }
            Some(uc) => {
                let schreier = uc.inverse().after(&sub);
                if i + 1 < self.n {
                    let (residue, _) = self.sift(schreier, i + 1);
                    if !residue.is_identity() {
                        self.add_generator(i + 1, residue);
                    }
                }
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}

/// Smallest block containing `a` and `b`, as a union-find root vector.
fn minimal_block(gens: &[Perm], n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut queue = vec![(a, b)];
    let ra = find(&mut parent, a);
    let rb = find(&mut parent, b);
    parent[rb] = ra;
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let gx = g.apply(x);
            let gy = g.apply(y);
            let rx = find(&mut parent, gx);
            let ry = find(&mut parent, gy);
            if rx != ry {
                parent[ry] = rx;
                queue.push((gx, gy));
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

fn blocks_from_roots(roots: &[usize]) -> Vec<Vec<usize>> {
    let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (x, &r) in roots.iter().enumerate() {
        map.entry(r).or_default().push(x);
    }
    let mut blocks: Vec<Vec<usize>> = map.into_values().collect();
    blocks.sort();
    blocks
}

/// Primitivity test: the least block through `{0, k}` must be everything for
/// every `k`. Returns the first nontrivial block system found (0-based).
pub fn find_block_system(gens: &[Perm], n: usize) -> Option<Vec<Vec<usize>>> {
    for k in 1..n {
        let roots = minimal_block(gens, n, 0, k);
        let blocks = blocks_from_roots(&roots);
        if blocks.len() > 1 {
            return Some(blocks);
        }
    }
    None
}

pub fn group_describe(gens: &[Perm]) -> Result<GroupDescription> {
    let n = gens.first().map(|g| g.degree()).ok_or_else(|| Error::Parse("empty generator list".into()))?;
    for g in gens {
        if g.degree() != n {
            return Err(Error::DegreeMismatch(n, g.degree()));
        }
    }
    let chain = StabilizerChain::new(gens, n);
    let transitive = is_transitive(gens, n);
    let (primitive, minimal_blocks) = if !transitive {
        (false, None)
    } else {
        match find_block_system(gens, n) {
            None => (true, None),
            Some(b) => (false, Some(b)),
        }
    };
    Ok(GroupDescription { generators: gens.to_vec(), order: chain.order(), transitive, primitive, minimal_blocks })
}

/// Cheaper primitivity check for a transitive pair, no group order.
pub fn is_primitive(gens: &[Perm], n: usize) -> bool {
    is_transitive(gens, n) && find_block_system(gens, n).is_none()
}

/// All `sigma` with `sigma·a.0·sigma⁻¹ = b.0` and `sigma·a.1·sigma⁻¹ = b.1`,
/// sorted by image sequence.
pub fn pair_conjugators(a: (&Perm, &Perm), b: (&Perm, &Perm)) -> Result<Vec<Perm>> {
    let n = a.0.degree();
    for d in [a.1.degree(), b.0.degree(), b.1.degree()] {
        if d != n {
            return Err(Error::DegreeMismatch(n, d));
        }
    }
    let src = [a.0.clone(), a.1.clone(), a.0.inverse(), a.1.inverse()];
    let dst = [b.0.clone(), b.1.clone(), b.0.inverse(), b.1.inverse()];
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(&src, &dst, &mut sigma, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn search(src: &[Perm; 4], dst: &[Perm; 4], sigma: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
    let n = sigma.len();
    let Some(p) = sigma.iter().position(|&x| x == usize::MAX) else {
        out.push(Perm::from_vec_unchecked(sigma.clone()));
        return;
    };
    for t in 0..n {
        if used[t] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(src, dst, sigma, used, p, t, &mut assigned) {
            search(src, dst, sigma, used, out);
        }
        for x in assigned {
            used[sigma[x]] = false;
            sigma[x] = usize::MAX;
        }
    }
}

fn propagate(
    src: &[Perm; 4],
    dst: &[Perm; 4],
    sigma: &mut [usize],
    used: &mut [bool],
    p: usize,
    t: usize,
    assigned: &mut Vec<usize>,
) -> bool {
    sigma[p] = t;
    used[t] = true;
    assigned.push(p);
    let mut k = assigned.len() - 1;
    while k < assigned.len() {
        let x = assigned[k];
        k += 1;
        for g in 0..4 {
            let y = src[g].apply(x);
            let want = dst[g].apply(sigma[x]);
            if sigma[y] == usize::MAX {
                if used[want] {
                    return false;
                }
                sigma[y] = want;
                used[want] = true;
                assigned.push(y);
            } else if sigma[y] != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn cyc(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    /// Brute-force group closure, the oracle for stabilizer-chain orders.
    fn closure(gens: &[Perm]) -> HashSet<Perm> {
        let n = gens[0].degree();
        let mut seen = HashSet::new();
        let id = Perm::identity(n);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.after(&x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&cyc(3, "(2,3)"), &cyc(3, "(1,2,3)")).unwrap(), cyc(3, "(1,3)"));
        let p = cyc(5, "(1,4)(2,5,3)");
        assert_eq!(compose(&p, &Perm::identity(5)).unwrap(), p);
        assert!(compose(&cyc(3, "(1,2,3)"), &cyc(3, "(1,3,2)")).unwrap().is_identity());
        assert_eq!(compose(&Perm::identity(2), &Perm::identity(3)), Err(Error::DegreeMismatch(2, 3)));
    }

    #[test]
    fn cycle_data_examples() {
        let d = cycle_data(&cyc(5, "(1,2)(3,4,5)"));
        assert_eq!(d.cycle_type, vec![3, 2]);
        assert_eq!(d.parity, Parity::Odd);
        let d = cycle_data(&Perm::identity(4));
        assert_eq!(d.cycle_type, vec![1, 1, 1, 1]);
        assert_eq!(d.parity, Parity::Even);
        let d = cycle_data(&cyc(5, "(1,2,3,4,5)"));
        assert_eq!(d.cycle_type, vec![5]);
        assert_eq!(d.parity, Parity::Even);
    }

    #[test]
    fn parse_and_display() {
        let p = cyc(7, "(1, 2) (3 4 5)");
        assert_eq!(p.to_string(), "(1,2)(3,4,5)");
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert!(Perm::parse_cycles(3, "(1,4)").is_err());
        assert!(Perm::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Perm::parse_cycles(3, "1,2").is_err());
        let json = serde_json::to_string(&cyc(3, "(2,3)")).unwrap();
        assert_eq!(json, "[1,3,2]");
        let back: Perm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cyc(3, "(2,3)"));
        assert!(serde_json::from_str::<Perm>("[1,1,2]").is_err());
    }

    #[test]
    fn group_describe_examples() {
        let d = group_describe(&[cyc(5, "(1,2,3,4,5)"), cyc(5, "(3,4,5)")]).unwrap();
        assert_eq!(d.order, BigUint::from(60u32));
        assert_eq!(closure(&d.generators).len(), 60);
        assert!(d.transitive && d.primitive && d.minimal_blocks.is_none());

        let gens = [cyc(4, "(1,2,3,4)"), cyc(4, "(1,3)")];
        let d = group_describe(&gens).unwrap();
        assert_eq!(d.order, BigUint::from(8u32));
        assert_eq!(closure(&gens).len(), 8);
        assert!(d.transitive && !d.primitive);
        assert_eq!(d.minimal_blocks, Some(vec![vec![0, 2], vec![1, 3]]));

        let d = group_describe(&[cyc(3, "(1,2,3)")]).unwrap();
        assert_eq!(d.order, BigUint::from(3u32));
        assert!(d.transitive && d.primitive);

        let d = group_describe(&[cyc(4, "(1,2)")]).unwrap();
        assert!(!d.transitive && !d.primitive);
        assert_eq!(d.order, BigUint::from(2u32));
    }

    #[test]
    fn symmetric_group_orders() {
        let mut fact = BigUint::from(1u32);
        for n in 2..=30usize {
            fact *= BigUint::from(n);
            let gens = [Perm::new((1..=n).map(|i| i % n).collect()).unwrap(), Perm::from_cycles(n, &[vec![1, 2]]).unwrap()];
            assert_eq!(StabilizerChain::new(&gens, n).order(), fact, "n={n}");
        }
    }

    #[test]
    fn pair_conjugator_examples() {
        let a = (cyc(3, "(1,3,2)"), cyc(3, "(1,2)"));
        let b = (cyc(3, "(1,2,3)"), cyc(3, "(2,3)"));
        let s = pair_conjugators((&a.0, &a.1), (&b.0, &b.1)).unwrap();
        let t = cyc(3, "(1,3)");
        assert_eq!(a.0.conjugate_by(&t), b.0);
        assert_eq!(a.1.conjugate_by(&t), b.1);
        assert!(s.contains(&t));

        let x = (cyc(3, "(2,3)"), cyc(3, "(1,2,3)"));
        let s = pair_conjugators((&x.0, &x.1), (&x.0, &x.1)).unwrap();
        assert!(s.contains(&Perm::identity(3)));

        let s = pair_conjugators((&cyc(2, "(1,2)"), &cyc(2, "(1,2)")), (&cyc(2, "(1,2)"), &Perm::identity(2))).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn conjugators_of_intransitive_pairs() {
        let h = cyc(4, "(1,2)");
        let v = cyc(4, "(3,4)");
        let s = pair_conjugators((&h, &v), (&h, &v)).unwrap();
        // centralizer of <(12),(34)> in S4 fixing both: {id, (12), (34), (12)(34)}
        assert_eq!(s.len(), 4);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
    }

    fn perm_triple(max: usize) -> impl Strategy<Value = (Perm, Perm, Perm)> {
        (1..=max).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n), perm_strategy(n)))
    }

    proptest! {
        #[test]
        fn composition_laws((p, q, r) in perm_triple(12)) {
            prop_assert_eq!(p.after(&q).after(&r), p.after(&q.after(&r)));
            prop_assert_eq!(p.after(&q).inverse(), q.inverse().after(&p.inverse()));
            prop_assert!(p.after(&p.inverse()).is_identity());
        }

        #[test]
        fn order_matches_closure((p, q, _r) in perm_triple(7)) {
            let gens = [p, q];
            let d = group_describe(&gens).unwrap();
            prop_assert_eq!(d.order, BigUint::from(closure(&gens).len()));
        }

        #[test]
        fn blocks_are_invariant((p, q, _r) in perm_triple(10)) {
            let gens = [p, q];
            let n = gens[0].degree();
            if let Some(blocks) = find_block_system(&gens, n) {
                let mut block_of = vec![0; n];
                for (k, b) in blocks.iter().enumerate() {
                    for &x in b { block_of[x] = k; }
                }
                for g in &gens {
                    for b in &blocks {
                        let target = block_of[g.apply(b[0])];
                        prop_assert!(b.iter().all(|&x| block_of[g.apply(x)] == target));
                    }
                }
            }
        }

        #[test]
        fn conjugators_verify((p, q, s) in perm_triple(9)) {
            let b = (p.conjugate_by(&s), q.conjugate_by(&s));
            let found = pair_conjugators((&p, &q), (&b.0, &b.1)).unwrap();
            prop_assert!(found.contains(&s));
            prop_assert_eq!(cycle_data(&p).cycle_type, cycle_data(&b.0).cycle_type);
            for t in &found {
                prop_assert_eq!(&p.conjugate_by(t), &b.0);
                prop_assert_eq!(&q.conjugate_by(t), &b.1);
            }
        }
    }
}
