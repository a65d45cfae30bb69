//! Lattice points on cusp quadrics, class numbers of binary quadratic forms,
//! orbifold-point sets and closed-form orbit sizes.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::{canonical_form, from_h2_params, H2Params, Origami};
use crate::perm::Perm;

/// `Σ coeff·w_i·w_j = target` over integer boxes `lo_i ≤ w_i ≤ hi_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricInstance {
    /// Monomials `(coeff, i, j)` standing for `coeff·w_i·w_j`.
    pub terms: Vec<(i64, usize, usize)>,
    pub target: i64,
    pub bounds: Vec<(i64, i64)>,
    /// Require `w_1 < w_2 < …`.
    pub increasing: bool,
}

impl QuadricInstance {
    /// `Σ c_i·w_i² = target` with positive `w_i` bounded by `√(target/c_i)`.
    pub fn diagonal(coeffs: &[i64], target: i64, increasing: bool) -> QuadricInstance {
        let terms = coeffs.iter().enumerate().map(|(i, &c)| (c, i, i)).collect();
        let bounds = coeffs.iter().map(|&c| (1, if c > 0 { (target / c).max(0).sqrt() } else { 0 })).collect();
        QuadricInstance { terms, target, bounds, increasing }
    }

    /// `(x+y)w1² + 2y·w1w3 + (y+z)w3² = target` with positive `w1`, `w3`.
    pub fn conic(x: i64, y: i64, z: i64, target: i64) -> QuadricInstance {
        let hi = |c: i64| if c > 0 { (target / c).max(0).sqrt() } else { 0 };
        QuadricInstance {
            terms: vec![(x + y, 0, 0), (2 * y, 0, 1), (y + z, 1, 1)],
            target,
            bounds: vec![(1, hi(x + y)), (1, hi(y + z))],
            increasing: false,
        }
    }

    pub fn evaluate(&self, w: &[i64]) -> i64 {
        self.terms.iter().map(|&(c, i, j)| c * w[i] * w[j]).sum()
    }
}

/// All solutions in the box, in lexicographic order.
pub fn quadric_solutions(q: &QuadricInstance) -> Vec<Vec<i64>> {
    let k = q.bounds.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut w: Vec<i64> = q.bounds.iter().map(|b| b.0).collect();
    if q.bounds.iter().any(|b| b.0 > b.1) {
        return out;
    }
    loop {
        let ordered = !q.increasing || w.windows(2).all(|p| p[0] < p[1]);
        if ordered && q.evaluate(&w) == q.target {
            out.push(w.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if w[i] < q.bounds[i].1 {
                w[i] += 1;
                for j in i + 1..k {
                    w[j] = q.bounds[j].0;
                }
                break;
            }
        }
    }
}

/// The one-cylinder H(2) surface: a row of `a+b+c` squares whose top is glued
/// to its bottom by the segments `C, B, A`, shifted by `t`.
pub fn one_cylinder_h2(a: usize, b: usize, c: usize, t: usize) -> Result<Origami> {
    let n = a + b + c;
    if a == 0 || b == 0 || c == 0 || t >= n {
        return Err(Error::BadParams(format!("one-cylinder ({a},{b},{c},{t})")));
    }
    let h: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let v: Vec<usize> = (0..n)
        .map(|i| {
            let q = (i + n - t) % n;
            if q < c {
                a + b + q
            } else if q < c + b {
                a + (q - c)
            } else {
                q - c - b
            }
        })
        .collect();
    Origami::new(Perm::new(h)?, Perm::new(v)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspCount {
    pub n: usize,
    pub width: usize,
    /// Origamis lying in cusps of this width.
    pub count: usize,
    pub witnesses: Vec<Origami>,
    /// Surface parameters for the two-cylinder witnesses.
    pub params: Vec<Option<H2Params>>,
    /// Witness counts keyed by HLK invariant.
    pub by_hlk: BTreeMap<String, usize>,
}

impl CuspCount {
    pub fn cusps(&self) -> usize {
        self.count / self.width
    }
}

/// Primitive n-square origamis in H(2) lying in cusps of the given width,
/// from lattice points on `x1·a2·w1² + x2·a1·w2² = n·a1·a2` with `w1 < w2`,
/// `a_i | w_i`, `lcm(a1, a2) = width` and `gcd(x_i, a_i) = 1`, each giving
/// `h_i = x_i·w_i/a_i` and `w1·w2` twists. One-cylinder surfaces contribute
/// when every twist gives the same cusp of the requested width.
pub fn t_fixed_count_h2(n: usize, width: usize) -> Result<CuspCount> {
    if n < 3 || width == 0 {
        return Err(Error::BadParams(format!("n={n}, width={width}")));
    }
    let mut params = BTreeSet::new();
    let ni = n as i64;
    for a1 in 1..=width {
        for a2 in 1..=width {
            if a1.lcm(&a2) != width {
                continue;
            }
            let (a1i, a2i) = (a1 as i64, a2 as i64);
            for x1 in 1..=ni {
                for x2 in 1..=ni {
                    if x1.gcd(&a1i) != 1 || x2.gcd(&a2i) != 1 {
                        continue;
                    }
                    let q = QuadricInstance::diagonal(&[x1 * a2i, x2 * a1i], ni * a1i * a2i, true);
                    for s in quadric_solutions(&q) {
                        let (w1, w2) = (s[0] as usize, s[1] as usize);
                        if w1 % a1 != 0 || w2 % a2 != 0 {
                            continue;
                        }
                        let h1 = x1 as usize * w1 / a1;
                        let h2 = x2 as usize * w2 / a2;
                        for t1 in 0..w1 {
                            for t2 in 0..w2 {
                                params.insert(H2Params::new(w1, h1, t1, w2, h2, t2));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut found: Vec<(Origami, Option<H2Params>)> = params
        .into_par_iter()
        .filter_map(|p| {
            let x = from_h2_params(p).ok()?;
            x.is_primitive().then_some((x, Some(p)))
        })
        .collect();
    found.extend(one_cylinder_cusps(n, width)?.into_iter().map(|x| (x, None)));
    let mut seen = BTreeSet::new();
    found.retain(|(x, _)| seen.insert(canonical_form(x)));
    let mut by_hlk = BTreeMap::new();
    for (x, _) in &found {
        let key = match x.hlk() {
            Ok(k) => k.to_string(),
            Err(e) => format!("{e}"),
        };
        *by_hlk.entry(key).or_insert(0) += 1;
    }
    Ok(CuspCount {
        n,
        width,
        count: found.len(),
        params: found.iter().map(|f| f.1).collect(),
        witnesses: found.into_iter().map(|f| f.0).collect(),
        by_hlk,
    })
}

/// Primitive one-cylinder H(2) origamis whose cusp has the given width. The
/// twists of one surface form its cusp.
fn one_cylinder_cusps(n: usize, width: usize) -> Result<Vec<Origami>> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n - a {
            let c = n - a - b;
            let forms: BTreeSet<_> = (0..n).map(|t| one_cylinder_h2(a, b, c, t).map(|x| canonical_form(&x))).collect::<Result<_>>()?;
            if forms.len() != width {
                continue;
            }
            for f in forms {
                if f.origami.stratum()?.zero_orders == [2] && f.origami.is_primitive() {
                    out.push(f.origami);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNumberResult {
    pub d: i64,
    pub h: u64,
    pub unit_count: u64,
    pub h_reduced: Ratio<i64>,
}

pub fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// Class number by counting reduced primitive forms `(a, b, c)` with
/// `|b| ≤ a ≤ c`, `b ≥ 0` when `|b| = a` or `a = c`, and `b² - 4ac = d`.
pub fn class_numbers(d: i64) -> Result<ClassNumberResult> {
    check_discriminant(d)?;
    let dd = -d;
    let mut h = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= dd {
        for b in -a + 1..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    let unit_count = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok(ClassNumberResult { d, h, unit_count, h_reduced: Ratio::new(2 * h as i64, unit_count as i64) })
}

pub fn h_reduced(d: i64) -> Result<Ratio<i64>> {
    Ok(class_numbers(d)?.h_reduced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbifoldKind {
    H3,
    H2Sq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldSet {
    pub d: i64,
    pub kind: OrbifoldKind,
    pub triples: Vec<(i64, i64, i64)>,
    pub count: usize,
}

fn is_fundamental(d: i64) -> bool {
    let sf = |m: i64| (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0);
    match d.rem_euclid(4) {
        1 => sf(d.abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && sf(m.abs())
        }
        _ => false,
    }
}

/// Conductor `f` with `d = f²·d0`, `d0` fundamental; `√d` for square `d`.
pub fn conductor(d: i64) -> Result<i64> {
    if d <= 0 || d.rem_euclid(4) > 1 {
        return Err(Error::InvalidDiscriminant(d));
    }
    let r = d.sqrt();
    if r * r == d {
        return Ok(r);
    }
    let mut f = r;
    while f >= 1 {
        if d % (f * f) == 0 && is_fundamental(d / (f * f)) {
            return Ok(f);
        }
        f -= 1;
    }
    Err(Error::InvalidDiscriminant(d))
}

/// `H3(d) = {2a² - 3b² - c² = d, gcd(a,b,c,f) = 1, -3√d < a < -√d, c < b ≤ 0,
/// 4a - 3b - 3c < 0 or (= 0 and c < 3b)}` and
/// `H2sq(d) = {a² + b² + c² = d, gcd(a,b,c,√d) = 2}` for square `d`.
pub fn orbifold_sets(d: i64, kind: OrbifoldKind) -> Result<OrbifoldSet> {
    if d <= 0 {
        return Err(Error::InvalidDiscriminant(d));
    }
    let mut triples = Vec::new();
    match kind {
        OrbifoldKind::H3 => {
            let f = conductor(d)?;
            let mut a = -1i64;
            while a * a < 9 * d {
                if a * a > d {
                    let mut b = 0i64;
                    while 3 * b * b <= 2 * a * a - d {
                        let c2 = 2 * a * a - 3 * b * b - d;
                        let c = -c2.sqrt();
                        if c * c == c2 && c < b {
                            let s = 4 * a - 3 * b - 3 * c;
                            if (s < 0 || (s == 0 && c < 3 * b)) && a.gcd(&b).gcd(&c).gcd(&f) == 1 {
                                triples.push((a, b, c));
                            }
                        }
                        b -= 1;
                    }
                }
                a -= 1;
            }
        }
        OrbifoldKind::H2Sq => {
            let n = d.sqrt();
            if n * n != d {
                return Err(Error::InvalidDiscriminant(d));
            }
            for a in -n..=n {
                for b in -n..=n {
                    let c2 = d - a * a - b * b;
                    if c2 < 0 {
                        continue;
                    }
                    let c = c2.sqrt();
                    if c * c != c2 {
                        continue;
                    }
                    for c in if c == 0 { vec![0] } else { vec![-c, c] } {
                        if a.gcd(&b).gcd(&c).gcd(&n) == 2 {
                            triples.push((a, b, c));
                        }
                    }
                }
            }
        }
    }
    triples.sort();
    Ok(OrbifoldSet { d, kind, count: triples.len(), triples })
}

/// `e2(n²) = |H2sq(n²)| / 24` for even `n`, else 0.
pub fn e2_square(n: i64) -> Result<Ratio<i64>> {
    if n % 2 == 1 {
        return Ok(Ratio::from_integer(0));
    }
    Ok(Ratio::new(orbifold_sets(n * n, OrbifoldKind::H2Sq)?.count as i64, 24))
}

/// Order-three orbifold points on `W^ε_{d²}[n]`.
pub fn e3_h11(d: i64, n: i64, epsilon: u8) -> Result<Ratio<i64>> {
    let zero = Ratio::from_integer(0);
    if n % 2 == 0 || epsilon != 0 {
        return Ok(zero);
    }
    let half = Ratio::new(1, 2);
    match (d % 3, n) {
        (0, 3) => Ok(half * (Ratio::from_integer(3) * h_reduced(-d * d / 3)? + h_reduced(-3 * d * d)?)),
        (1, 1) | (2, 3) => Ok(half * h_reduced(-3 * d * d)?),
        _ => Ok(zero),
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `∏_{p | n} (1 - p⁻²)`.
pub fn euler_factor(n: u64) -> Ratio<i128> {
    prime_factors(n).into_iter().fold(Ratio::from_integer(1), |acc, p| {
        let p = p as i128;
        acc * Ratio::new(p * p - 1, p * p)
    })
}

/// `|SL(2, Z/n)| = n³ ∏ (1 - p⁻²)`.
pub fn sl2_order(n: u64) -> u128 {
    let r = Ratio::from_integer((n as i128).pow(3)) * euler_factor(n);
    r.to_integer() as u128
}

/// `|PSL(2, Z/n)|`, the quotient by `±I`.
pub fn psl2_order(n: u64) -> u128 {
    let s = sl2_order(n);
    if n <= 2 {
        s
    } else {
        s / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    H2A { n: u64 },
    H2B { n: u64 },
    ZmiaikouAlt { n: u64 },
    ZmiaikouSym { n: u64 },
    Duryev { d: u64, n: u64, epsilon: u8 },
    KappesMoller { d: u64, epsilon: u8 },
}

/// Orbit sizes predicted by closed formulas, evaluated exactly.
pub fn predicted_orbit_size(family: Family) -> Result<u64> {
    let r = |x: i128| Ratio::from_integer(x);
    let value: Ratio<i128> = match family {
        Family::H2A { n } => {
            let m = n as i128;
            Ratio::new(3, 16) * r((m - 1) * m * m) * euler_factor(n)
        }
        Family::H2B { n } => {
            let m = n as i128;
            Ratio::new(3, 16) * r((m - 3) * m * m) * euler_factor(n)
        }
        Family::ZmiaikouAlt { n } => {
            let m = n as i128;
            let base = if n % 2 == 1 { m * m * (m - 3) * (m - 5) } else { m * m * m * (m - 2) };
            Ratio::new(base, 24) * euler_factor(n)
        }
        Family::ZmiaikouSym { n } => {
            let m = n as i128;
            let base = if n % 2 == 1 { m * m * (m - 1) * (m - 3) } else { m * m * (m - 2) * (m - 4) };
            Ratio::new(base, 8) * euler_factor(n)
        }
        Family::Duryev { d, n, epsilon } => {
            let k = if epsilon == 0 { 12 } else { 4 };
            Ratio::new(d as i128 - 1, k * n as i128) * r(psl2_order(d) as i128) * r(sl2_order(n) as i128)
        }
        Family::KappesMoller { d, epsilon } => {
            let m = d as i128;
            let f = if epsilon == 0 { Ratio::new((m - 3) * (m - 5), 12 * m) } else { Ratio::new((m - 1) * (m - 3), 4 * m) };
            f * r(psl2_order(d) as i128)
        }
    };
    if !value.is_integer() || value < r(0) {
        return Err(Error::NonIntegral(format!("{family:?} = {value}")));
    }
    Ok(value.to_integer() as u64)
}
