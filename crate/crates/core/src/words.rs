//! Free-group words over surface-group generators.
//!
//! [`FreeWord`] is the flat machinery (generators are plain indices) shared
//! with [`crate::presentation`]. [`Word`] wraps it with a genus and the
//! surface generator names `a1, b1, ..., ag, bg`, stored at flat indices
//! `2(i-1)` and `2(i-1)+1`.

use std::fmt;
use std::ops::{Add, Neg};

use crate::error::{Error, Result};

/// A single letter `x` or `x^-1` over a flat generator index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word in a free group with generators indexed by `u32`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    /// Freely reduces `letters` with a single stack pass.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    pub fn generator(g: u32) -> Self {
        FreeWord {
            letters: vec![Letter::new(g, false)],
        }
    }

    /// `g^exp` for any integer exponent.
    pub fn power_of(g: u32, exp: i64) -> Self {
        let l = Letter::new(g, exp < 0);
        FreeWord {
            letters: vec![l; exp.unsigned_abs() as usize],
        }
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

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> FreeWord {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = FreeWord::empty();
        for _ in 0..exp.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Strips matching inverse letters from both ends. The result is
    /// conjugate to `self`.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let l = &self.letters;
        let (mut lo, mut hi) = (0, l.len());
        while hi - lo >= 2 && l[lo].cancels(l[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        FreeWord {
            letters: l[lo..hi].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) if self.letters.len() >= 2 => !f.cancels(l),
            _ => true,
        }
    }

    /// Cyclic rotation moving letter `k` to the front. Assumes the word is
    /// cyclically reduced so the result stays freely reduced.
    pub fn rotate(&self, k: usize) -> FreeWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.letters.len());
        }
        FreeWord { letters }
    }

    /// Signed exponent sums, one slot per generator in `0..generators`.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for l in &self.letters {
            v[l.generator as usize] += l.sign();
        }
        v
    }

    pub fn occurrences(&self, g: u32) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Replaces every letter by the image of its generator (inverted for
    /// inverse letters), then freely reduces.
    pub fn substitute<F: FnMut(u32) -> Option<FreeWord>>(&self, mut image: F) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match image(l.generator) {
                Some(w) => {
                    if l.inverse {
                        out.extend(w.letters.iter().rev().map(|x| x.inv()));
                    } else {
                        out.extend_from_slice(&w.letters);
                    }
                }
                None => out.push(l),
            }
        }
        FreeWord::reduce(out)
    }

    /// Relabels generators; `map` must be defined on every generator present.
    pub fn relabel<F: Fn(u32) -> u32>(&self, map: F) -> FreeWord {
        FreeWord {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(map(l.generator), l.inverse))
                .collect(),
        }
    }

    /// Writes the word with runs compressed to powers (`a2^3`, `a1^-1`).
    /// The empty word prints as `1`.
    pub fn write_with<W, F>(&self, out: &mut W, label: F) -> fmt::Result
    where
        W: fmt::Write,
        F: Fn(u32) -> String,
    {
        if self.letters.is_empty() {
            return out.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign();
            if !first {
                out.write_char(' ')?;
            }
            first = false;
            out.write_str(&label(l.generator))?;
            if run != 1 {
                write!(out, "^{run}")?;
            }
            i = j;
        }
        Ok(())
    }

    pub fn to_string_with<F: Fn(u32) -> String>(&self, label: F) -> String {
        let mut s = String::new();
        self.write_with(&mut s, label).expect("writing to a String");
        s
    }

    /// Parses whitespace-separated tokens `name`, `name^k` (k may be
    /// negative or zero) or the identity `1`. Column numbers in errors are
    /// 1-based offsets into `text` plus `column_offset`.
    pub fn parse_with<F>(text: &str, column_offset: usize, resolve: F) -> Result<FreeWord>
    where
        F: Fn(&str) -> std::result::Result<u32, String>,
    {
        let mut letters = Vec::new();
        for (start, token) in tokens(text) {
            let column = column_offset + start + 1;
            let syntax = |message: String| Error::Syntax {
                line: 1,
                column,
                message,
            };
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp
                        .parse()
                        .map_err(|_| syntax(format!("invalid exponent in `{token}`")))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            if name == "1" {
                continue;
            }
            let g = resolve(name).map_err(syntax)?;
            let l = Letter::new(g, exp < 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(FreeWord::reduce(letters))
    }
}

/// Whitespace tokens with their byte offsets.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    A,
    B,
}

/// One of the standard generators `a_i` or `b_i` of the surface group.
/// Ordered `a1 < b1 < a2 < b2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: u32,
}

impl Generator {
    pub fn a(index: u32) -> Self {
        Generator {
            kind: GeneratorKind::A,
            index,
        }
    }

    pub fn b(index: u32) -> Self {
        Generator {
            kind: GeneratorKind::B,
            index,
        }
    }

    pub fn checked(kind: GeneratorKind, index: u32, genus: u32) -> Result<Self> {
        let g = Generator { kind, index };
        g.check_genus(genus)?;
        Ok(g)
    }

    pub fn check_genus(&self, genus: u32) -> Result<()> {
        if self.index == 0 || self.index > genus {
            return Err(Error::GeneratorOutOfRange {
                symbol: self.to_string(),
                genus,
            });
        }
        Ok(())
    }

    pub fn flat(&self) -> u32 {
        let base = 2 * (self.index - 1);
        match self.kind {
            GeneratorKind::A => base,
            GeneratorKind::B => base + 1,
        }
    }

    pub fn from_flat(flat: u32) -> Self {
        let index = flat / 2 + 1;
        if flat.is_multiple_of(2) {
            Generator::a(index)
        } else {
            Generator::b(index)
        }
    }

    /// The other member of the pair `(a_i, b_i)`.
    pub fn dual(&self) -> Self {
        match self.kind {
            GeneratorKind::A => Generator::b(self.index),
            GeneratorKind::B => Generator::a(self.index),
        }
    }

    /// Parses `a3` / `b12` without a genus check.
    pub fn parse_name(name: &str) -> Option<Self> {
        let kind = match name.as_bytes().first()? {
            b'a' => GeneratorKind::A,
            b'b' => GeneratorKind::B,
            _ => return None,
        };
        let digits = &name[1..];
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        Some(Generator {
            kind,
            index: digits.parse().ok()?,
        })
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.index, self.kind).cmp(&(other.index, other.kind))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::A => write!(f, "a{}", self.index),
            GeneratorKind::B => write!(f, "b{}", self.index),
        }
    }
}

pub fn surface_label(flat: u32) -> String {
    Generator::from_flat(flat).to_string()
}

/// A freely reduced word in the generators of the genus-`g` surface group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    genus: u32,
    free: FreeWord,
}

impl Word {
    pub fn empty(genus: u32) -> Self {
        Word {
            genus,
            free: FreeWord::empty(),
        }
    }

    /// Builds a reduced word from `(generator, ±1)` letters.
    pub fn free_reduce<I>(letters: I, genus: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (Generator, i8)>,
    {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let mut raw = Vec::new();
        for (g, sign) in letters {
            g.check_genus(genus)?;
            raw.push(Letter::new(g.flat(), sign < 0));
        }
        Ok(Word {
            genus,
            free: FreeWord::reduce(raw),
        })
    }

    /// Wraps a flat word; every generator must be below `2 * genus`.
    pub fn from_free(free: FreeWord, genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if let Some(m) = free.max_generator() {
            if m >= 2 * genus {
                return Err(Error::GeneratorOutOfRange {
                    symbol: surface_label(m),
                    genus,
                });
            }
        }
        Ok(Word {
            genus,
            free: FreeWord::reduce(free.letters),
        })
    }

    pub fn parse(text: &str, genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let free = FreeWord::parse_with(text, 0, |name| resolve_surface(name, genus))?;
        Ok(Word { genus, free })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn as_free(&self) -> &FreeWord {
        &self.free
    }

    pub fn into_free(self) -> FreeWord {
        self.free
    }

    pub fn letters(&self) -> impl Iterator<Item = (Generator, i8)> + '_ {
        self.free
            .letters()
            .iter()
            .map(|l| (Generator::from_flat(l.generator), l.sign() as i8))
    }

    pub fn len(&self) -> usize {
        self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        self.free.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_same_genus(self.genus, other.genus)?;
        Ok(Word {
            genus: self.genus,
            free: self.free.concat(&other.free),
        })
    }

    pub fn invert(&self) -> Word {
        Word {
            genus: self.genus,
            free: self.free.inverse(),
        }
    }

    pub fn pow(&self, exp: i64) -> Word {
        Word {
            genus: self.genus,
            free: self.free.pow(exp),
        }
    }

    pub fn cyclic_reduce(&self) -> Word {
        Word {
            genus: self.genus,
            free: self.free.cyclic_reduce(),
        }
    }

    pub fn homology_class(&self) -> HomologyClass {
        HomologyClass {
            coefficients: self.free.exponent_sums(2 * self.genus as usize),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.free.write_with(f, surface_label)
    }
}

pub(crate) fn resolve_surface(name: &str, genus: u32) -> std::result::Result<u32, String> {
    let g = Generator::parse_name(name).ok_or_else(|| format!("unknown generator `{name}`"))?;
    g.check_genus(genus).map_err(|e| e.to_string())?;
    Ok(g.flat())
}

pub(crate) fn check_same_genus(left: u32, right: u32) -> Result<()> {
    if left != right {
        return Err(Error::GenusMismatch { left, right });
    }
    Ok(())
}

/// An element of `H_1(Σ_g) = Z^{2g}` in the basis `(a1, b1, ..., ag, bg)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub coefficients: Vec<i64>,
}

impl HomologyClass {
    pub fn zero(genus: u32) -> Self {
        HomologyClass {
            coefficients: vec![0; 2 * genus as usize],
        }
    }

    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() || !coefficients.len().is_multiple_of(2) {
            return Err(Error::Inconsistent(format!(
                "homology class needs an even, positive length, got {}",
                coefficients.len()
            )));
        }
        Ok(HomologyClass { coefficients })
    }

    pub fn genus(&self) -> u32 {
        (self.coefficients.len() / 2) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    /// Algebraic intersection number with `⟨a_i, b_i⟩ = +1`.
    pub fn intersection(&self, other: &HomologyClass) -> i64 {
        self.coefficients
            .chunks(2)
            .zip(other.coefficients.chunks(2))
            .map(|(x, y)| x[0] * y[1] - x[1] * y[0])
            .sum()
    }
}

impl Add for &HomologyClass {
    type Output = HomologyClass;

    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        HomologyClass {
            coefficients: self
                .coefficients
                .iter()
                .zip(&rhs.coefficients)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;

    fn neg(self) -> HomologyClass {
        HomologyClass {
            coefficients: self.coefficients.iter().map(|x| -x).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn cancellation() {
        let r = Word::free_reduce([(Generator::a(2), 1), (Generator::a(2), -1)], 2).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn beta3_survives_twisting_debris() {
        for n in 1..6 {
            let raw = format!("b2 a2^{n} a2 a2^-{n} b2^-1 a1");
            assert_eq!(w(&raw), w("b2 a2 b2^-1 a1"));
            assert_eq!(w(&raw).to_string(), "b2 a2 b2^-1 a1");
        }
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(
            Word::parse("a3", 2),
            Err(Error::Syntax { column: 1, .. })
        ));
        assert!(matches!(
            Word::free_reduce([(Generator::b(3), 1)], 2),
            Err(Error::GeneratorOutOfRange { .. })
        ));
        assert!(Word::free_reduce([(Generator::b(0), 1)], 2).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("b1 b2").concat(&Word::empty(2)).unwrap(), w("b1 b2"));
        assert!(w("b2 a2").concat(&w("a2^-1 b2^-1")).unwrap().is_empty());
        for n in 1..5 {
            let got = w("b1 b2").concat(&w(&format!("a2^{n}"))).unwrap();
            assert_eq!(got, w(&format!("b1 b2 a2^{n}")));
        }
        assert!(matches!(
            w("a1").concat(&Word::parse("a1", 3).unwrap()),
            Err(Error::GenusMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn invert_examples() {
        assert!(Word::empty(2).invert().is_empty());
        assert_eq!(w("b1 b2").invert().to_string(), "b2^-1 b1^-1");
        let beta4 = w("b2 a2 a1 b1");
        assert_eq!(beta4.invert().invert(), beta4);
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("a1 b2 a1^-1").cyclic_reduce(), w("b2"));
        assert_eq!(w("b2 a2 b2^-1 a1").cyclic_reduce(), w("b2 a2 b2^-1 a1"));
        assert_eq!(w("a1 a2 a1^-1").cyclic_reduce().to_string(), "a2");
    }

    #[test]
    fn homology_examples() {
        assert!(w("a1 b1 a1^-1 b1^-1").homology_class().is_zero());
        assert_eq!(w("b1 b2").homology_class().coefficients, vec![0, 1, 0, 1]);
        assert_eq!(
            w("b2 a2 a1 b1").homology_class().coefficients,
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn printing_compresses_runs() {
        assert_eq!(w("a2 a2 a2").to_string(), "a2^3");
        assert_eq!(w("a2^-2 b1").to_string(), "a2^-2 b1");
        assert_eq!(Word::empty(2).to_string(), "1");
        assert_eq!(w("1").to_string(), "1");
        assert_eq!(w("a1^0 b1").to_string(), "b1");
    }

    #[test]
    fn generator_order() {
        let mut v = vec![
            Generator::b(2),
            Generator::a(2),
            Generator::b(1),
            Generator::a(1),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Generator::a(1),
                Generator::b(1),
                Generator::a(2),
                Generator::b(2)
            ]
        );
    }

    #[test]
    fn bad_tokens() {
        assert!(Word::parse("c1", 2).is_err());
        assert!(Word::parse("a", 2).is_err());
        assert!(Word::parse("a1^x", 2).is_err());
        match Word::parse("a1 b1 q2", 2) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
    }

    fn letters() -> impl Strategy<Value = Vec<(Generator, i8)>> {
        prop::collection::vec(
            (0u32..4, prop::bool::ANY)
                .prop_map(|(f, inv)| (Generator::from_flat(f), if inv { -1 } else { 1 })),
            0..24,
        )
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(raw in letters()) {
            let word = Word::free_reduce(raw, 2).unwrap();
            prop_assert_eq!(Word::parse(&word.to_string(), 2).unwrap(), word);
        }

        #[test]
        fn homology_is_a_homomorphism(u in letters(), v in letters()) {
            let u = Word::free_reduce(u, 2).unwrap();
            let v = Word::free_reduce(v, 2).unwrap();
            let uv = u.concat(&v).unwrap();
            prop_assert_eq!(uv.homology_class(), &u.homology_class() + &v.homology_class());
            prop_assert_eq!(u.invert().homology_class(), -&u.homology_class());
            prop_assert!(u.concat(&u.invert()).unwrap().is_empty());
        }

        #[test]
        fn conjugate_cyclic_reduce(raw in letters(), x in 0u32..4, inv in prop::bool::ANY) {
            let core = Word::free_reduce(raw, 2).unwrap().cyclic_reduce();
            let x = Letter::new(x, inv);
            let l = core.as_free().letters();
            // Conjugating by x stays reduced only if x touches neither end.
            prop_assume!(!l.is_empty());
            prop_assume!(l[0] != x.inv() && *l.last().unwrap() != x);
            let conj = FreeWord::reduce(
                std::iter::once(x).chain(l.iter().copied()).chain(std::iter::once(x.inv())),
            );
            prop_assert_eq!(conj.len(), l.len() + 2);
            prop_assert_eq!(&conj.cyclic_reduce(), core.as_free());
            prop_assert!(conj.cyclic_reduce().is_cyclically_reduced());
        }
    }
}
