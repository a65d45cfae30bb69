//! Acceptance criteria, one PASS/FAIL line each, combining the library's
//! verification checks with oracles computed here from first principles.

use std::collections::{BTreeSet, HashSet, VecDeque};

use origami::census::{cycle_census, genus_lower_bound};
use origami::orbit::{build_graph, Orbit};
use origami::origami::{from_h2_params, H2Params};
use origami::sl2z::{reduced_words, Alphabet, WordKind};
use origami::verify::{self, CheckResult, Context, CurveParts, VerifyConfig};
use origami::{arith, Origami, Word};

type Pair = (Vec<usize>, Vec<usize>);

mod oracle {
    use super::*;

    fn inverse(p: &[usize]) -> Vec<usize> {
        let mut q = vec![0; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j] = i;
        }
        q
    }

    fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        q.iter().map(|&i| p[i]).collect()
    }

    /// The four shears: `T = (h, v h⁻¹)`, `T⁻¹ = (h, v h)`, `S = (h v⁻¹, v)`, `S⁻¹ = (h v, v)`.
    pub fn neighbours((h, v): &Pair) -> [Pair; 4] {
        let (hi, vi) = (inverse(h), inverse(v));
        [
            (h.clone(), compose(v, &hi)),
            (h.clone(), compose(v, h)),
            (compose(h, &vi), v.clone()),
            (compose(h, v), v.clone()),
        ]
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    /// Least conjugate over all `n!` relabelings.
    pub fn canonical((h, v): &Pair) -> Pair {
        let n = h.len();
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut best: Option<Pair> = None;
        loop {
            let si = inverse(&sigma);
            let c = (compose(&sigma, &compose(h, &si)), compose(&sigma, &compose(v, &si)));
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
            if !next_permutation(&mut sigma) {
                return best.unwrap();
            }
        }
    }

    pub fn orbit(seed: &Pair) -> HashSet<Pair> {
        let start = canonical(seed);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in neighbours(&x) {
                let c = canonical(&y);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        seen
    }

    pub fn pair(x: &Origami) -> Pair {
        (x.h().images().to_vec(), x.v().images().to_vec())
    }

    fn primes(mut n: u64) -> Vec<u64> {
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

    /// `c · n^k · ∏(1 - p⁻²) / den`, exact.
    pub fn with_euler(c: u64, n: u64, den: u64) -> Option<u64> {
        let mut num = c as u128;
        let mut d = den as u128;
        for p in primes(n) {
            num *= (p * p - 1) as u128;
            d *= (p * p) as u128;
        }
        num.is_multiple_of(d).then(|| (num / d) as u64)
    }

    fn kronecker(d: i64, m: i64) -> i64 {
        let mut result = 1;
        let mut m = m;
        while m % 2 == 0 {
            m /= 2;
            match d.rem_euclid(8) {
                1 | 7 => {}
                3 | 5 => result = -result,
                _ => return 0,
            }
        }
        let (mut a, mut n) = (d.rem_euclid(m), m);
        while a != 0 {
            while a % 2 == 0 {
                a /= 2;
                if matches!(n % 8, 3 | 5) {
                    result = -result;
                }
            }
            std::mem::swap(&mut a, &mut n);
            if a % 4 == 3 && n % 4 == 3 {
                result = -result;
            }
            a %= n;
        }
        if n == 1 {
            result
        } else {
            0
        }
    }

    fn fundamental(d: i64) -> (i64, i64) {
        let mut f = 1;
        let mut d0 = d;
        let mut p = 2;
        while p * p <= d0.abs() {
            while d0 % (p * p) == 0 && ((d0 / (p * p)).rem_euclid(4) <= 1) {
                d0 /= p * p;
                f *= p;
            }
            p += 1;
        }
        (d0, f)
    }

    /// Class number from Dirichlet's formula on the fundamental discriminant
    /// and the conductor correction.
    pub fn class_number(d: i64) -> i64 {
        let (d0, f) = fundamental(d);
        let m = d0.abs();
        let s: i64 = (1..m).map(|a| kronecker(d0, a) * a).sum();
        let w0 = match d0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        let h0 = -s * w0 / (2 * m);
        let mut num = h0 * f;
        let mut den = 1;
        for p in primes(f as u64) {
            let p = p as i64;
            num *= p - kronecker(d0, p);
            den *= p;
        }
        if f == 1 { h0 } else { num / den / (w0 / 2) }
    }
}

fn word_kind_by_trace(w: &str) -> &'static str {
    let (t, s) = ([[1i64, 1], [0, 1]], [[1i64, 0], [1, 1]]);
    let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
        [[a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]], [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]]]
    };
    let inv = |a: [[i64; 2]; 2]| [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]];
    let word: Word = w.parse().unwrap();
    let mut m = [[1i64, 0], [0, 1]];
    for l in word.elementary().letters() {
        let g = match format!("{l:?}").contains('T') {
            true => t,
            false => s,
        };
        m = mul(m, if l.inverse { inv(g) } else { g });
    }
    match (m[0][0] + m[1][1]).abs() {
        0 | 1 => "elliptic",
        2 => "parabolic",
        _ => "hyperbolic",
    }
}

fn report(results: &mut Vec<CheckResult>, mut c: CheckResult, extra: Vec<(bool, String)>) {
    for (ok, line) in extra {
        c.passed &= ok;
        c.lines.push(format!("{} oracle: {line}", if ok { "ok  " } else { "FAIL" }));
    }
    println!("{c}");
    for l in &c.lines {
        println!("    {l}");
    }
    results.push(c);
}

fn naive_size_matches(o: &Orbit) -> (bool, String) {
    let naive = oracle::orbit(&oracle::pair(o.origami(0)));
    let members: BTreeSet<_> = o.members.iter().map(|m| oracle::canonical(&oracle::pair(&m.origami))).collect();
    let ok = naive.len() == o.len() && members.iter().all(|m| naive.contains(m));
    (ok, format!("n={} {}: naive closure has {} members, library {}", o.n(), o.label.as_deref().unwrap_or(""), naive.len(), o.len()))
}

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    let ctx = Context::new(cfg.brute_cap);
    let mut results = Vec::new();

    let g3 = Origami::parse("(2,3),(1,2,3)", None).unwrap();
    let naive3 = oracle::orbit(&oracle::pair(&g3));
    let loops3 = naive3.iter().map(|x| oracle::neighbours(x).iter().take(3).step_by(2).filter(|y| oracle::canonical(y) == *x).count()).sum::<usize>();
    report(&mut results, verify::figure_one(&ctx), vec![(naive3.len() == 3 && loops3 == 2, format!("naive closure {} members, {loops3} loops", naive3.len()))]);

    let mut extra = Vec::new();
    for n in [5u64, 7, 9, 11, 13, 15] {
        let a = oracle::with_euler(3 * (n - 1) * n * n, n, 16);
        let b = oracle::with_euler(3 * (n - 3) * n * n, n, 16);
        let sizes: Vec<u64> = ctx.h2(n as usize).unwrap().iter().map(|o| o.len() as u64).collect();
        extra.push((Some(sizes.clone()) == a.zip(b).map(|(a, b)| vec![a, b]), format!("n={n}: {sizes:?} vs {a:?}/{b:?}")));
    }
    for n in [3, 5, 7] {
        for o in ctx.h2(n).unwrap().iter() {
            extra.push(naive_size_matches(o));
        }
    }
    let brute_agree = (4..=8).all(|n| {
        let s = origami::origami::StratumSignature::new(vec![2]);
        origami::orbit::enumerate_stratum(n, &s, origami::orbit::EnumerationMode::Brute, 10).unwrap() == *ctx.h2(n).unwrap()
    });
    extra.push((brute_agree, "brute and seeded H(2) enumeration agree for 4 <= n <= 8".into()));
    report(&mut results, verify::h2_sizes(&ctx, &cfg), extra);

    report(&mut results, verify::h2_hlk(&ctx, &cfg), vec![]);

    let mut extra = Vec::new();
    for (p, lab) in [(H2Params::new(1, 1, 0, 2, 2, 0), "A"), (H2Params::new(1, 1, 0, 2, 2, 1), "B")] {
        let x = oracle::pair(&from_h2_params(p).unwrap());
        let c = oracle::canonical(&x);
        let fixed = oracle::canonical(&oracle::neighbours(&x)[0]) == c;
        let o = ctx.h2(5).unwrap().iter().find(|o| o.label.as_deref() == Some(lab)).cloned().unwrap();
        let loops: usize = o
            .members
            .iter()
            .map(|m| {
                let y = oracle::pair(&m.origami);
                let cy = oracle::canonical(&y);
                oracle::neighbours(&y).iter().take(3).step_by(2).filter(|z| oracle::canonical(z) == cy).count()
            })
            .sum();
        extra.push((fixed && loops == 2, format!("{p} fixed by T, orbit {lab} has {loops} loops")));
    }
    report(&mut results, verify::five_square_spot_checks(&ctx), extra);

    let c5 = verify::hyperbolic_census(&ctx, &cfg);
    let failing: Vec<String> = c5.lines.iter().filter(|l| l.starts_with("FAIL")).cloned().collect();
    let documented = failing.iter().all(|l| ["FAIL ST^2:", "FAIL S^2T:", "FAIL (ST)^2:"].iter().any(|p| l.starts_with(p)));
    report(&mut results, c5, vec![]);

    let words = reduced_words(4, Alphabet::Parabolic);
    let count = |k: WordKind| words.iter().filter(|w| w.info().kind == k).count();
    let mut extra = vec![(
        (count(WordKind::Hyperbolic), count(WordKind::Parabolic), count(WordKind::Elliptic)) == (8, 9, 8),
        "8 hyperbolic, 9 parabolic, 8 elliptic classes".to_string(),
    )];
    for (list, kind) in [(verify::HYPERBOLIC_WORDS, "hyperbolic"), (verify::PARABOLIC_WORDS, "parabolic"), (verify::ELLIPTIC_WORDS, "elliptic")] {
        let bad: Vec<&&str> = list.iter().filter(|w| word_kind_by_trace(w) != kind).collect();
        extra.push((bad.is_empty(), format!("{kind} list by trace, exceptions {bad:?}")));
    }
    report(&mut results, verify::word_lists(&ctx), extra);

    report(&mut results, verify::block_systems(&ctx, &cfg), vec![]);
    report(&mut results, verify::dual_loop_counts(&ctx, &cfg), vec![]);

    let g3o = &ctx.h2(3).unwrap()[0];
    let r = g3o.letter_table(origami::sl2z::Letter::R);
    let u = g3o.letter_table(origami::sl2z::Letter::U);
    let e2 = (0..3).filter(|&i| r[i] == i).count();
    let e3 = (0..3).filter(|&i| u[i] == i).count();
    let genus = num_rational::Ratio::new(3, 12) - num_rational::Ratio::new(e2 as i64, 4) - num_rational::Ratio::new(e3 as i64, 3) - num_rational::Ratio::new(2, 2) + 1;
    report(
        &mut results,
        verify::curve_invariant_checks(&ctx, &cfg, CurveParts::ALL),
        vec![(e2 == 1 && e3 == 0 && genus == 0.into(), format!("n=3 by hand: e2={e2}, e3={e3}, genus {genus}"))],
    );

    let mut extra = Vec::new();
    for n in 7u64..=cfg.h11_max_n as u64 {
        let (alt, sym) = if n % 2 == 1 {
            (oracle::with_euler(n * n * (n - 3) * (n - 5), n, 24), oracle::with_euler(n * n * (n - 1) * (n - 3), n, 8))
        } else {
            (oracle::with_euler(n * n * n * (n - 2), n, 24), oracle::with_euler(n * n * (n - 2) * (n - 4), n, 8))
        };
        let sizes: BTreeSet<u64> = ctx.stratum("H(1,1)", n as usize).unwrap().iter().map(|o| o.len() as u64).collect();
        extra.push((alt.zip(sym).map(|(a, s)| BTreeSet::from([a, s])) == Some(sizes.clone()), format!("n={n}: sizes {sizes:?}, formula {alt:?}/{sym:?}")));
    }
    extra.push((arith::psl2_order(7) == 168 && arith::predicted_orbit_size(arith::Family::KappesMoller { d: 7, epsilon: 0 }).unwrap() == 16, "n=7 Alt size 16 from |PSL(2,Z/7)| = 168".into()));
    report(&mut results, verify::h11_orbits(&ctx, &cfg), extra);

    report(&mut results, verify::prym_hlk(&ctx, &cfg, true, true), vec![]);

    let mut extra = Vec::new();
    let bad: Vec<i64> = (3..=200).map(|k: i64| -k).filter(|d| d.rem_euclid(4) <= 1).filter(|&d| arith::class_numbers(d).unwrap().h as i64 != oracle::class_number(d)).collect();
    extra.push((bad.is_empty(), format!("analytic class numbers for -200 <= D <= -3, mismatches {bad:?}")));
    let mut h36 = 0;
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            for c in -6i64..=6 {
                let g = [a, b, c, 6].iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
                if a * a + b * b + c * c == 36 && g == 2 {
                    h36 += 1;
                }
            }
        }
    }
    let mut h17 = Vec::new();
    for a in -13i64..=-5 {
        for b in -20i64..=0 {
            for c in -30i64..b {
                let s = 4 * a - 3 * b - 3 * c;
                if 2 * a * a - 3 * b * b - c * c == 17 && a * a > 17 && a * a < 153 && (s < 0 || (s == 0 && c < 3 * b)) {
                    h17.push((a, b, c));
                }
            }
        }
    }
    extra.push((h36 == 24 && h17 == vec![(-7, 0, -9)], format!("|H2sq(36)| = {h36}, H3(17) = {h17:?}")));
    report(&mut results, verify::arithmetic_oracles(&ctx, &cfg, true), extra);

    let g3_census = cycle_census(&build_graph(g3o).unwrap(), 4);
    report(
        &mut results,
        verify::genus_bounds(&ctx, &cfg),
        vec![(g3_census == vec![2, 2, 0, 0] && genus_lower_bound(3, &g3_census, 5) == 0, format!("n=3 cycles {g3_census:?}"))],
    );

    let passed = results.iter().filter(|c| c.passed).count();
    println!("{passed}/{} criteria pass", results.len());
    let unexpected: Vec<String> = results.iter().filter(|c| !c.passed && c.id != "5").map(|c| c.to_string()).collect();
    assert!(unexpected.is_empty(), "{unexpected:?}");
    assert!(documented, "criterion 5 fails outside the documented words: {failing:?}");
}
