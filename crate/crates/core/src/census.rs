//! Fixed-word, cusp and short-cycle censuses of orbits, Euler-characteristic
//! genus bounds and Teichmüller-curve invariants.

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{cycle_lengths, elliptic_structure_ok, Orbit, OrbitGraph};
use crate::origami::{cusp_data, CanonicalOrigami, H2Params, Origami};
use crate::sl2z::{reduced_words, Alphabet, Letter, Word, WordKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCount {
    pub word: Word,
    pub kind: WordKind,
    pub count: usize,
    pub witnesses: Vec<Origami>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cusp {
    pub width: usize,
    pub representative: CanonicalOrigami,
    /// Surface parameters of the representative for two-cylinder H(2) cusps.
    pub params: Option<H2Params>,
    pub cylinders: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    pub words: Vec<WordCount>,
    /// `cycles[i]` counts closed cycles of length `i + 1`.
    pub cycles: Vec<usize>,
    pub cusps: Vec<Cusp>,
}

/// Members fixed up to isomorphism by the word.
pub fn fixed_by(orbit: &Orbit, w: &Word) -> Vec<usize> {
    let table = orbit.word_table(w);
    (0..orbit.len()).filter(|&i| table[i] == i).collect()
}

pub fn word_census_for(orbit: &Orbit, words: &[Word]) -> Vec<WordCount> {
    words
        .iter()
        .map(|w| {
            let fixed = fixed_by(orbit, w);
            WordCount {
                word: w.clone(),
                kind: w.info().kind,
                count: fixed.len(),
                witnesses: fixed.iter().map(|&i| orbit.origami(i).clone()).collect(),
            }
        })
        .collect()
}

/// Fixed-origami counts for every reduced word in `T`, `S` up to `max_len`.
pub fn word_census(orbit: &Orbit, max_len: usize) -> Vec<WordCount> {
    word_census_for(orbit, &reduced_words(max_len, Alphabet::Parabolic))
}

/// Partition of the orbit into `T`-orbits.
pub fn cusp_census(orbit: &Orbit) -> Result<Vec<Cusp>> {
    let t = orbit.letter_table(Letter::T);
    let mut seen = vec![false; orbit.len()];
    let mut starts = Vec::new();
    for i in 0..orbit.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut width = 0;
        while !seen[j] {
            seen[j] = true;
            j = t[j];
            width += 1;
        }
        starts.push((i, width));
    }
    let mut cusps: Vec<Cusp> = starts
        .par_iter()
        .map(|&(i, width)| {
            let x = orbit.origami(i);
            let d = cusp_data(x)?;
            if d.width != width {
                return Err(Error::CuspMismatch(format!("{x}: T-cycle {width}, iterated width {}", d.width)));
            }
            let rep = &d.representative.origami;
            Ok(Cusp {
                width,
                params: rep.h2_params(),
                cylinders: rep.cylinders().cylinders.len(),
                representative: d.representative,
            })
        })
        .collect::<Result<_>>()?;
    cusps.sort_by(|a, b| a.width.cmp(&b.width).then_with(|| a.representative.cmp(&b.representative)));
    Ok(cusps)
}

/// Closed cycles of lengths `1..=max_len` in an undirected multigraph, up to
/// rotation and reflection: loops, pairs of parallel edges, and cycles through
/// distinct vertices weighted by the choice of parallel edges.
pub fn cycle_counts(vertices: usize, edges: &[(usize, usize)], max_len: usize) -> Vec<usize> {
    let mut out = vec![0; max_len];
    if max_len == 0 {
        return out;
    }
    let mut mult: std::collections::BTreeMap<(usize, usize), usize> = std::collections::BTreeMap::new();
    for &(a, b) in edges {
        if a == b {
            out[0] += 1;
        } else {
            *mult.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    if max_len >= 2 {
        out[1] = mult.values().map(|&m| m * (m - 1) / 2).sum();
    }
    if max_len < 3 {
        return out;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
    for (&(a, b), &m) in &mult {
        adj[a].push((b, m));
        adj[b].push((a, m));
    }
    let counts: Vec<Vec<usize>> = (0..vertices)
        .into_par_iter()
        .map(|s| {
            let mut local = vec![0usize; max_len];
            let mut on_path = vec![false; vertices];
            on_path[s] = true;
            walk(&adj, s, s, 1, 1, max_len, &mut on_path, &mut local);
            local
        })
        .collect();
    for c in counts {
        for k in 2..max_len {
            out[k] += c[k] / 2;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    at: usize,
    len: usize,
    weight: usize,
    max_len: usize,
    on_path: &mut [bool],
    out: &mut [usize],
) {
    for &(y, m) in &adj[at] {
        if y == start && len >= 3 {
            out[len - 1] += weight * m;
        }
        if y > start && !on_path[y] && len < max_len {
            on_path[y] = true;
            walk(adj, start, y, len + 1, weight * m, max_len, on_path, out);
            on_path[y] = false;
        }
    }
}

pub fn cycle_census(graph: &OrbitGraph, max_len: usize) -> Vec<usize> {
    let edges: Vec<(usize, usize)> = graph.edges.iter().map(|e| (e.from, e.to)).collect();
    cycle_counts(graph.vertices.len(), &edges, max_len)
}

/// Lower bound on the genus of a 4-regular graph on `v` vertices with at most
/// `c[i-1]` faces of length `i` for `i < target`:
/// `max(0, ⌈1 + ((target-4)·v - Σ (target-i)·c_i) / (2·target)⌉)`.
pub fn genus_lower_bound(v: usize, c: &[usize], target: usize) -> i64 {
    let t = target as i64;
    let mut num = (t - 4) * v as i64;
    for (k, &ci) in c.iter().enumerate().take(target.saturating_sub(1)) {
        let i = k as i64 + 1;
        num -= (t - i) * ci as i64;
    }
    let bound = Ratio::new(num, 2 * t) + Ratio::from_integer(1);
    bound.ceil().to_integer().max(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub v: usize,
    pub chi: Ratio<i64>,
    pub e2: usize,
    pub e3: usize,
    pub cusps: usize,
    pub genus: i64,
    pub cusp_widths: Vec<usize>,
}

impl CurveInvariants {
    /// Face counts of the elliptic-generator graph embedding whose faces are
    /// the `R`- and `U`-cycles and one `(RU)^k` face per cusp of width `k`.
    pub fn faces(&self, max_len: usize) -> Vec<usize> {
        let mut f = vec![0; max_len];
        let mut add = |len: usize, k: usize| {
            if len >= 1 && len <= max_len {
                f[len - 1] += k;
            }
        };
        add(1, self.e2 + self.e3);
        add(2, (self.v - self.e2) / 2);
        add(3, (self.v - self.e3) / 3);
        for &w in &self.cusp_widths {
            add(2 * w, 1);
        }
        f
    }

    pub fn genus_lower_bound(&self, target: usize) -> i64 {
        genus_lower_bound(self.v, &self.faces(target.saturating_sub(1)), target)
    }
}

/// `V`, `χ = -V/6`, `e2 = #R-fixed`, `e3 = #U-fixed`, the cusp count and
/// `g = V/12 - e2/4 - e3/3 - c/2 + 1`.
pub fn curve_invariants(orbit: &Orbit) -> Result<CurveInvariants> {
    if orbit.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    if !orbit.members.par_iter().all(|m| m.origami.has_minus_i()) {
        return Err(Error::NotMinusISymmetric);
    }
    if !elliptic_structure_ok(orbit) {
        return Err(Error::Format("R or U cycles of unexpected length".into()));
    }
    let v = orbit.len();
    let r = orbit.letter_table(Letter::R);
    let u = orbit.letter_table(Letter::U);
    let e2 = (0..v).filter(|&i| r[i] == i).count();
    let e3 = (0..v).filter(|&i| u[i] == i).count();
    let mut cusp_widths = cycle_lengths(&orbit.letter_table(Letter::T));
    cusp_widths.sort_unstable();
    let c = cusp_widths.len();
    let g = Ratio::new(v as i64, 12) - Ratio::new(e2 as i64, 4) - Ratio::new(e3 as i64, 3) - Ratio::new(c as i64, 2)
        + Ratio::from_integer(1);
    if !g.is_integer() || g < Ratio::from_integer(0) {
        return Err(Error::NonIntegralGenus(format!("V={v} e2={e2} e3={e3} c={c} gives {g}")));
    }
    Ok(CurveInvariants { v, chi: Ratio::new(-(v as i64), 6), e2, e3, cusps: c, genus: g.to_integer(), cusp_widths })
}

/// `#{T-fixed} + #{S-fixed}`, the loop count of the parabolic graph.
pub fn parabolic_loops(orbit: &Orbit) -> usize {
    fixed_by(orbit, &Word::from(Letter::T)).len() + fixed_by(orbit, &Word::from(Letter::S)).len()
}

/// `lcm` of the cusp widths, the level of a congruence cover if any.
pub fn cusp_width_lcm(cusps: &[Cusp]) -> usize {
    cusps.iter().fold(1, |a, c| a.lcm(&c.width))
}

pub fn face_census(orbit: &Orbit, graph: &OrbitGraph, max_word_len: usize, max_cycle_len: usize) -> Result<FaceCensus> {
    Ok(FaceCensus {
        words: word_census(orbit, max_word_len),
        cycles: cycle_census(graph, max_cycle_len),
        cusps: cusp_census(orbit)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{build_graph, enumerate_orbit};
    use crate::origami::from_h2_params;

    fn o(s: &str) -> Origami {
        Origami::parse(s, None).unwrap()
    }

    fn g3() -> Orbit {
        enumerate_orbit(&o("(2,3),(1,2,3)"), Alphabet::Parabolic).unwrap()
    }

    #[test]
    fn g3_census() {
        let orbit = g3();
        let graph = build_graph(&orbit).unwrap();
        assert_eq!(cycle_census(&graph, 4), vec![2, 2, 0, 0]);
        assert_eq!(genus_lower_bound(3, &[2, 2, 0, 0], 5), 0);
        let cusps = cusp_census(&orbit).unwrap();
        let widths: Vec<usize> = cusps.iter().map(|c| c.width).collect();
        assert_eq!(widths, vec![1, 2]);
        let s2t2 = word_census_for(&orbit, &["S^2T^2".parse().unwrap()]);
        assert_eq!(s2t2[0].count, 3);
        let inv = curve_invariants(&orbit).unwrap();
        assert_eq!((inv.v, inv.e2, inv.e3, inv.cusps, inv.genus), (3, 1, 0, 2, 0));
        assert_eq!(inv.chi, Ratio::new(-1, 2));
    }

    #[test]
    fn bounds() {
        assert_eq!(genus_lower_bound(100, &[0, 0, 0, 0], 5), 11);
        assert_eq!(genus_lower_bound(12, &[0, 6, 0, 0], 5), 1);
        assert_eq!(genus_lower_bound(12, &[0, 9, 0, 0], 5), 0);
    }

    #[test]
    fn path_has_no_cycles() {
        let edges = [(0, 1), (1, 2), (2, 3)];
        assert_eq!(cycle_counts(4, &edges, 6), vec![0; 6]);
        let square = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 1)];
        assert_eq!(cycle_counts(4, &square, 5), vec![0, 1, 0, 2, 0]);
        let k4: Vec<(usize, usize)> = (0..4).flat_map(|a| ((a + 1)..4).map(move |b| (a, b))).collect();
        assert_eq!(cycle_counts(4, &k4, 4), vec![0, 0, 4, 3]);
    }

    #[test]
    fn five_square_loops_and_cusps() {
        let a = enumerate_orbit(&from_h2_params(H2Params::new(1, 1, 0, 2, 2, 0)).unwrap(), Alphabet::Parabolic).unwrap();
        let b = enumerate_orbit(&from_h2_params(H2Params::new(1, 1, 0, 2, 2, 1)).unwrap(), Alphabet::Parabolic).unwrap();
        assert_eq!(parabolic_loops(&a), 2);
        assert_eq!(parabolic_loops(&b), 2);
        let ca = cusp_census(&a).unwrap();
        assert_eq!(ca.iter().map(|c| c.width).sum::<usize>(), 18);
        let w1: Vec<_> = ca.iter().filter(|c| c.width == 1).collect();
        assert_eq!(w1.len(), 1);
        assert_eq!(w1[0].params, Some(H2Params::new(1, 1, 0, 2, 2, 0)));
        let w2: Vec<_> = ca.iter().filter(|c| c.width == 2).collect();
        assert_eq!(w2.len(), 1);
        assert_eq!(w2[0].params, Some(H2Params::new(1, 3, 0, 2, 1, 0)));
        let st = word_census_for(&b, &["ST".parse().unwrap()]);
        assert_eq!(st[0].count, 2);
        for w in ["(1,2,3,4,5),(3,4,5)", "(3,4,5),(1,2,3,5,4)"] {
            assert!(st[0].witnesses.iter().any(|x| x.is_isomorphic(&o(w))));
        }
        let inv = curve_invariants(&b).unwrap();
        assert_eq!(inv.e3, 0);
        assert!(inv.genus >= 0);
        assert_eq!(inv.genus_lower_bound(13), inv.genus.max(0));
    }
}
