//! Words in `T`, `S`, `R`, `U` and their inverses, their matrices in SL(2,Z),
//! and their action on origamis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::Origami;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    S,
    T,
    R,
    U,
}

impl Gen {
    fn symbol(self) -> char {
        match self {
            Gen::S => 'S',
            Gen::T => 'T',
            Gen::R => 'R',
            Gen::U => 'U',
        }
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Gen::T => Mat2::new(1, 1, 0, 1),
            Gen::S => Mat2::new(1, 0, 1, 1),
            Gen::R => Mat2::new(0, -1, 1, 0),
            Gen::U => Mat2::new(0, 1, -1, 1),
        }
    }
}

/// A generator or its inverse. Ordered so that all positive letters precede
/// all inverse letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub inverse: bool,
    pub gen: Gen,
}

impl Letter {
    pub const T: Letter = Letter { gen: Gen::T, inverse: false };
    pub const T_INV: Letter = Letter { gen: Gen::T, inverse: true };
    pub const S: Letter = Letter { gen: Gen::S, inverse: false };
    pub const S_INV: Letter = Letter { gen: Gen::S, inverse: true };
    pub const R: Letter = Letter { gen: Gen::R, inverse: false };
    pub const R_INV: Letter = Letter { gen: Gen::R, inverse: true };
    pub const U: Letter = Letter { gen: Gen::U, inverse: false };
    pub const U_INV: Letter = Letter { gen: Gen::U, inverse: true };

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn matrix(self) -> Mat2 {
        let m = self.gen.matrix();
        if self.inverse {
            m.inverse()
        } else {
            m
        }
    }

    /// Expansion into the elementary letters `T^±1`, `S^±1`.
    fn elementary(self) -> Vec<Letter> {
        let base = match self.gen {
            Gen::T | Gen::S => return vec![self],
            Gen::R => vec![Letter::T_INV, Letter::S, Letter::T_INV],
            Gen::U => vec![Letter::T, Letter::S_INV],
        };
        if self.inverse {
            base.into_iter().rev().map(Letter::inv).collect()
        } else {
            base
        }
    }

    fn act(self, x: &Origami) -> Origami {
        match (self.gen, self.inverse) {
            (Gen::T, false) => x.act_t(),
            (Gen::T, true) => x.act_t_inv(),
            (Gen::S, false) => x.act_s(),
            (Gen::S, true) => x.act_s_inv(),
            _ => self.elementary().iter().rev().fold(x.clone(), |y, l| l.act(&y)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn is_central(&self) -> bool {
        *self == Mat2::IDENTITY || *self == Mat2::IDENTITY.neg()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordKind {
    Central,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WordKind::Central => "central",
            WordKind::Elliptic => "elliptic",
            WordKind::Parabolic => "parabolic",
            WordKind::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordClass {
    pub kind: WordKind,
    /// Finite order for central and elliptic matrices.
    pub order: Option<u32>,
    pub trace: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `T`, `S` and inverses.
    Parabolic,
    /// `R`, `U` and inverses.
    Elliptic,
}

impl Alphabet {
    pub fn letters(self) -> [Letter; 4] {
        match self {
            Alphabet::Parabolic => [Letter::S, Letter::T, Letter::S_INV, Letter::T_INV],
            Alphabet::Elliptic => [Letter::R, Letter::U, Letter::R_INV, Letter::U_INV],
        }
    }

    pub fn generators(self) -> [Letter; 2] {
        match self {
            Alphabet::Parabolic => [Letter::T, Letter::S],
            Alphabet::Elliptic => [Letter::R, Letter::U],
        }
    }
}

impl FromStr for Alphabet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Alphabet> {
        match s {
            "parabolic" | "TS" | "ST" => Ok(Alphabet::Parabolic),
            "elliptic" | "RU" | "UR" => Ok(Alphabet::Elliptic),
            _ => Err(Error::Parse(format!("unknown generator set {s}"))),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Parabolic => "parabolic",
            Alphabet::Elliptic => "elliptic",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Ordered product of the letter matrices.
    pub fn matrix(&self) -> Mat2 {
        self.letters.iter().fold(Mat2::IDENTITY, |m, l| m.mul(&l.matrix()))
    }

    pub fn info(&self) -> WordClass {
        word_info(self)
    }

    /// Rewrites `R` and `U` in terms of `T` and `S`.
    pub fn elementary(&self) -> Word {
        Word { letters: self.letters.iter().flat_map(|l| l.elementary()).collect() }
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().letters;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
            w.pop();
            w.remove(0);
        }
        Word { letters: w }
    }

    /// Least rotation of the cyclic reduction of the word or its inverse.
    pub fn class_key(&self) -> Word {
        let w = self.cyclic_reduce();
        let winv = w.inverse();
        let k = w.len();
        let mut best = w.clone();
        for base in [&w, &winv] {
            for r in 0..k {
                let mut rot = base.letters[r..].to_vec();
                rot.extend_from_slice(&base.letters[..r]);
                if rot < best.letters {
                    best.letters = rot;
                }
            }
        }
        best
    }

    pub fn apply(&self, x: &Origami) -> Origami {
        apply_word(self, x)
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Word {
        Word { letters: vec![l] }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let e = if l.inverse { -run } else { run };
            write!(f, "{}", l.gen.symbol())?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct WordParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn err(&self) -> Error {
        Error::Parse(format!("bad word {:?} at offset {}", String::from_utf8_lossy(self.s), self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        if self.s.get(self.pos) != Some(&b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok().and_then(|t| t.parse().ok()).ok_or_else(|| self.err())
    }

    fn sequence(&mut self, depth: usize) -> Result<Word> {
        let mut w = Word::default();
        loop {
            self.skip_ws();
            let Some(&c) = self.s.get(self.pos) else {
                return if depth == 0 { Ok(w) } else { Err(self.err()) };
            };
            let atom = match c {
                b'T' | b'S' | b'R' | b'U' => {
                    self.pos += 1;
                    let gen = match c {
                        b'T' => Gen::T,
                        b'S' => Gen::S,
                        b'R' => Gen::R,
                        _ => Gen::U,
                    };
                    Word::from(Letter { gen, inverse: false })
                }
                b'1' if depth == 0 && w.is_empty() => {
                    self.pos += 1;
                    Word::default()
                }
                b'(' => {
                    self.pos += 1;
                    self.sequence(depth + 1)?
                }
                b')' if depth > 0 => {
                    self.pos += 1;
                    return Ok(w);
                }
                _ => return Err(self.err()),
            };
            let e = self.exponent()?;
            w = w.concat(&atom.pow(e));
        }
    }
}

impl FromStr for Word {
    type Err = Error;
    /// Parses juxtaposed letters `T S R U` with optional integer exponents and
    /// parenthesized groups, e.g. `S^2T^-1` or `(TS)^-1ST`.
    fn from_str(s: &str) -> Result<Word> {
        WordParser { s: s.as_bytes(), pos: 0 }.sequence(0)
    }
}

pub fn word_info(w: &Word) -> WordClass {
    let m = w.matrix();
    let trace = m.trace();
    let order = |m: Mat2| {
        let mut p = m;
        (1..=12u32).find(|_| {
            let hit = p == Mat2::IDENTITY;
            p = p.mul(&m);
            hit
        })
    };
    if m.is_central() {
        WordClass { kind: WordKind::Central, order: order(m), trace }
    } else if trace.abs() < 2 {
        WordClass { kind: WordKind::Elliptic, order: order(m), trace }
    } else if trace.abs() == 2 {
        WordClass { kind: WordKind::Parabolic, order: None, trace }
    } else {
        WordClass { kind: WordKind::Hyperbolic, order: None, trace }
    }
}

/// Acts on `x` by the word; the rightmost letter acts first, so that
/// `apply_word(w1 w2, x) = apply_word(w1, apply_word(w2, x))`.
pub fn apply_word(w: &Word, x: &Origami) -> Origami {
    w.letters.iter().rev().fold(x.clone(), |y, l| l.act(&y))
}

/// Cyclically reduced words of length `1..=max_len` over the alphabet, one
/// per class under rotation and inversion, each given by its class key and
/// sorted by length then key.
pub fn reduced_words(max_len: usize, alphabet: Alphabet) -> Vec<Word> {
    let letters = alphabet.letters();
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Word::default()];
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters.last() == Some(&l.inv()) {
                    continue;
                }
                let mut x = w.clone();
                x.letters.push(l);
                next.push(x);
            }
        }
        let mut keys: Vec<Word> = next
            .iter()
            .filter(|w| w.letters[0] != w.letters[w.len() - 1].inv() || w.len() == 1)
            .filter(|w| w.class_key() == **w)
            .cloned()
            .collect();
        keys.sort();
        out.extend(keys);
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::canonical_form;
    use crate::perm::Perm;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fig1() -> Origami {
        Origami::parse("(2,3),(1,2,3)", None).unwrap()
    }

    #[test]
    fn word_info_examples() {
        assert_eq!(w("T").info().kind, WordKind::Parabolic);
        let r = w("R");
        assert_eq!(r.matrix(), Mat2::new(0, -1, 1, 0));
        assert_eq!(w("T^-1ST^-1").matrix(), r.matrix());
        assert_eq!(r.info(), WordClass { kind: WordKind::Elliptic, order: Some(4), trace: 0 });
        assert_eq!(w("ST").info().trace, 3);
        assert_eq!(w("ST").info().kind, WordKind::Hyperbolic);
        assert_eq!(w("U").matrix(), Mat2::new(0, 1, -1, 1));
        assert_eq!(w("TS^-1").matrix(), w("U").matrix());
        assert_eq!(w("U").info().order, Some(6));
        assert_eq!(w("R^2").info(), WordClass { kind: WordKind::Central, order: Some(2), trace: -2 });
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("S^2T^-1").to_string(), "S^2T^-1");
        assert_eq!(w("(TS)^-1ST").letters(), &[Letter::S_INV, Letter::T_INV, Letter::S, Letter::T]);
        assert_eq!(w("(S^-1T)^2").to_string(), "S^-1TS^-1T");
        assert_eq!(w("1").len(), 0);
        assert!("t".parse::<Word>().is_err());
        assert!("(ST".parse::<Word>().is_err());
        assert!("S^".parse::<Word>().is_err());
    }

    #[test]
    fn apply_examples() {
        let x = fig1();
        let t = apply_word(&w("T"), &x);
        assert_eq!(t, Origami::parse("(2,3),(1,2)", None).unwrap());
        assert!(apply_word(&w("S"), &x).is_isomorphic(&x));
        let r2 = apply_word(&w("R^2"), &x);
        assert!(r2.is_isomorphic(&x.minus_i()));
        assert!(r2.is_isomorphic(&x));
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(reduced_words(1, Alphabet::Parabolic), vec![w("S"), w("T")]);
        let all = reduced_words(4, Alphabet::Parabolic);
        assert_eq!(all.len(), 25);
        let count = |k| all.iter().filter(|x| x.info().kind == k).count();
        assert_eq!(count(WordKind::Hyperbolic), 8);
        assert_eq!(count(WordKind::Parabolic), 9);
        assert_eq!(count(WordKind::Elliptic), 8);
        assert_eq!(reduced_words(2, Alphabet::Elliptic).len(), 2 + 4);
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0usize..8, 0..=max_len).prop_map(|v| {
            let all = [Letter::T, Letter::T_INV, Letter::S, Letter::S_INV, Letter::R, Letter::R_INV, Letter::U, Letter::U_INV];
            Word::new(v.into_iter().map(|i| all[i]).collect())
        })
    }

    fn arb_origami() -> impl Strategy<Value = Origami> {
        (1usize..=10)
            .prop_flat_map(|n| {
                let p = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
                (p.clone(), p.clone(), p)
            })
            .prop_filter_map("connected", |(h, v, s)| {
                Some((Origami::new(Perm::new(h).ok()?, Perm::new(v).ok()?).ok()?, Perm::new(s).ok()?))
            })
            .prop_map(|(x, _)| x)
    }

    proptest! {
        #[test]
        fn action_is_compatible_with_products(a in arb_word(5), b in arb_word(5), x in arb_origami()) {
            let lhs = apply_word(&a.concat(&b), &x);
            let rhs = apply_word(&a, &apply_word(&b, &x));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.concat(&b).matrix(), a.matrix().mul(&b.matrix()));
            prop_assert_eq!(a.matrix().det(), 1);
        }

        #[test]
        fn action_commutes_with_relabeling(a in arb_word(5), x in arb_origami(), seed in any::<u64>()) {
            let n = x.n();
            let mut images: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                images.swap(i, (s >> 33) as usize % (i + 1));
            }
            let y = x.relabel(&Perm::new(images).unwrap());
            prop_assert_eq!(canonical_form(&apply_word(&a, &x)), canonical_form(&apply_word(&a, &y)));
        }

        #[test]
        fn class_key_preserves_conjugacy_class(a in arb_word(6)) {
            let k = a.class_key();
            prop_assert_eq!(k.class_key(), k.clone());
            prop_assert_eq!(k.matrix().trace().abs(), a.matrix().trace().abs());
            prop_assert_eq!(a.inverse().class_key(), k);
        }

        #[test]
        fn display_round_trips(a in arb_word(8)) {
            prop_assert_eq!(a.to_string().parse::<Word>().unwrap(), a);
        }
    }
}
