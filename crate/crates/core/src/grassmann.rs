//! The Z₃-graded analogue of a Grassmann algebra.
//!
//! Generators `θ^A` have grade 1 and their conjugates `θ̄^A` grade 2. Binary
//! products of like generators are independent, triples obey the cyclic
//! relation `θ^A θ^B θ^C = j θ^B θ^C θ^A` (with `j²` for `θ̄`), and
//! `θ^A θ̄^B = j θ̄^B θ^A`. After the consistency reduction only the classes
//!
//! ```text
//! grade 1: θ, θ̄θ̄     grade 2: θ̄, θθ     grade 0: 1, θθ̄, θθθ, θ̄θ̄θ̄
//! ```
//!
//! survive; every other word is zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grade::{Grade, Z3};
use crate::scalar::{accumulate, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Theta,
    Bar,
}

impl Kind {
    fn grade(self) -> Z3 {
        match self {
            Kind::Theta => Z3::ONE,
            Kind::Bar => Z3::TWO,
        }
    }

    /// Phase picked up per left rotation of a pure triple.
    fn rotation_phase(self) -> i64 {
        match self {
            Kind::Theta => 1,
            Kind::Bar => 2,
        }
    }
}

/// A single generator, `θ^index` or `θ̄^index` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub kind: Kind,
    pub index: usize,
}

impl Letter {
    pub fn theta(index: usize) -> Self {
        Letter { kind: Kind::Theta, index }
    }

    pub fn bar(index: usize) -> Self {
        Letter { kind: Kind::Bar, index }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Theta => write!(f, "th[{}]", self.index),
            Kind::Bar => write!(f, "bth[{}]", self.index),
        }
    }
}

/// An ordered product of generators. The empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord(pub Vec<Letter>);

impl GeneratorWord {
    pub fn grade(&self) -> Z3 {
        self.0.iter().fold(Z3::ZERO, |g, l| g + l.kind.grade())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Rotates a triple to its lexicographically least cyclic representative.
///
/// Returns the number of left rotations applied; the caller owns the phase
/// bookkeeping `w = j^(k·s) · rot_s(w)`. `None` when all three entries agree.
pub(crate) fn least_rotation<T: Ord + Copy>(t: [T; 3]) -> Option<(usize, [T; 3])> {
    if t[0] == t[1] && t[1] == t[2] {
        return None;
    }
    (0..3).map(|s| (s, [t[s], t[(s + 1) % 3], t[(s + 2) % 3]])).min_by(|a, b| a.1.cmp(&b.1))
}

/// Reduces a raw word to `c · canonical` or zero.
fn reduce_word(letters: &[Letter]) -> Option<(Scalar, GeneratorWord)> {
    match letters {
        [] | [_] => Some((Scalar::one(), GeneratorWord(letters.to_vec()))),
        [a, b] => match (a.kind, b.kind) {
            (Kind::Bar, Kind::Theta) => Some((Scalar::j_pow(2), GeneratorWord(vec![*b, *a]))),
            _ => Some((Scalar::one(), GeneratorWord(vec![*a, *b]))),
        },
        [a, b, c] => {
            if a.kind != b.kind || b.kind != c.kind {
                return None;
            }
            let (s, rot) = least_rotation([a.index, b.index, c.index])?;
            let phase = Scalar::j_pow(a.kind.rotation_phase() * s as i64);
            let word = rot.iter().map(|&index| Letter { kind: a.kind, index }).collect();
            Some((phase, GeneratorWord(word)))
        }
        _ => None,
    }
}

/// Linear combination of canonical words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassElement {
    n: usize,
    terms: BTreeMap<GeneratorWord, Scalar>,
}

impl GrassElement {
    pub fn zero(n: usize) -> Self {
        GrassElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut x = Self::zero(n);
        x.add_term(GeneratorWord::default(), c);
        x
    }

    pub fn theta(n: usize, index: usize) -> Result<Self> {
        normalize_word(n, &[Letter::theta(index)])
    }

    pub fn bar(n: usize, index: usize) -> Result<Self> {
        normalize_word(n, &[Letter::bar(index)])
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &GeneratorWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, w: GeneratorWord, c: Scalar) {
        accumulate(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(w.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Bilinear concatenation followed by normalization.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut raw = u.0.clone();
                raw.extend_from_slice(&v.0);
                if let Some((phase, w)) = reduce_word(&raw) {
                    out.add_term(w, &(a * b) * &phase);
                }
            }
        }
        Ok(out)
    }

    pub fn grade(&self) -> Grade {
        Grade::common(self.terms.keys().map(GeneratorWord::grade))
    }
}

impl fmt::Display for GrassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (w.grade(), w.len(), (*w).clone()));
        crate::print::write_sum(f, terms.into_iter().map(|(w, c)| (c, w.to_string(), w.is_empty())))
    }
}

/// Normalizes a raw product of generators on `n` generators.
pub fn normalize_word(n: usize, letters: &[Letter]) -> Result<GrassElement> {
    if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index > n) {
        return Err(Error::IndexOutOfRange { index: l.index, max: n });
    }
    let mut out = GrassElement::zero(n);
    if let Some((c, w)) = reduce_word(letters) {
        out.add_term(w, c);
    }
    Ok(out)
}

/// All canonical nonzero basis words with their grades, unit first.
pub fn enumerate_basis(n: usize) -> Vec<(GeneratorWord, Z3)> {
    let letters: Vec<Letter> = (1..=n).flat_map(|i| [Letter::theta(i), Letter::bar(i)]).collect();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(GeneratorWord::default());
    let mut frontier = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let mut raw: Vec<Letter> = w.clone();
                raw.push(*l);
                if let Some((_, canon)) = reduce_word(&raw) {
                    seen.insert(canon);
                }
                next.push(raw);
            }
        }
        frontier = next;
    }
    let mut out: Vec<_> = seen
        .into_iter()
        .map(|w| {
            let g = w.grade();
            (w, g)
        })
        .collect();
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, ls: &[Letter]) -> GrassElement {
        normalize_word(n, ls).unwrap()
    }

    fn th(i: usize) -> Letter {
        Letter::theta(i)
    }

    fn bth(i: usize) -> Letter {
        Letter::bar(i)
    }

    #[test]
    fn cube_of_generator_vanishes() {
        assert!(word(4, &[th(1), th(1), th(1)]).is_zero());
        assert!(word(4, &[bth(2), bth(2), bth(2)]).is_zero());
    }

    #[test]
    fn four_letter_words_vanish() {
        assert!(word(4, &[th(1), th(2), th(3), th(4)]).is_zero());
    }

    #[test]
    fn triple_rotation_phase() {
        let got = word(3, &[th(2), th(3), th(1)]);
        let want = word(3, &[th(1), th(2), th(3)]).scale(&Scalar::j_pow(2));
        assert_eq!(got, want);
    }

    #[test]
    fn mixed_triples_vanish() {
        assert!(word(3, &[th(1), th(2), bth(3)]).is_zero());
        assert!(word(3, &[bth(1), th(2), th(3)]).is_zero());
        assert!(word(3, &[bth(1), bth(2), th(3)]).is_zero());
    }

    #[test]
    fn bar_theta_reorders() {
        let got = word(2, &[bth(2), th(1)]);
        assert_eq!(got, word(2, &[th(1), bth(2)]).scale(&Scalar::j_pow(2)));
        // θ^A θ̄^B = j θ̄^B θ^A is the same relation read backwards.
        let lhs = word(2, &[th(1), bth(2)]);
        let rhs = word(2, &[bth(2), th(1)]).scale(&Scalar::j());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(normalize_word(2, &[th(3)]), Err(Error::IndexOutOfRange { index: 3, max: 2 }));
        assert!(normalize_word(2, &[th(0)]).is_err());
    }

    #[test]
    fn multiply_examples() {
        let t1 = GrassElement::theta(2, 1).unwrap();
        let t11 = t1.multiply(&t1).unwrap();
        assert!(!t11.is_zero());
        assert!(t1.multiply(&t11).unwrap().is_zero());
        assert_eq!(GrassElement::one(2).multiply(&t11).unwrap(), t11);
        let b1 = GrassElement::bar(2, 1).unwrap();
        let p = t1.multiply(&b1).unwrap();
        assert_eq!(p.grade(), Grade::Homogeneous(Z3::ZERO));
        assert_eq!(p, word(2, &[th(1), bth(1)]));
    }

    #[test]
    fn grades() {
        assert_eq!(word(2, &[th(1), th(2)]).grade(), Grade::Homogeneous(Z3::TWO));
        assert_eq!(word(2, &[bth(1), bth(2)]).grade(), Grade::Homogeneous(Z3::ONE));
        let mixed = word(2, &[th(1)]).add(&word(2, &[th(1), th(2)])).unwrap();
        assert_eq!(mixed.grade(), Grade::Mixed);
    }

    #[test]
    fn dimension_mismatch() {
        let a = GrassElement::one(2);
        let b = GrassElement::one(3);
        assert_eq!(a.multiply(&b), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn display() {
        let x = word(3, &[th(2), th(3), th(1)]);
        assert_eq!(x.to_string(), "j^2 * th[1] th[2] th[3]");
        assert_eq!(GrassElement::zero(2).to_string(), "0");
        assert_eq!(GrassElement::one(2).to_string(), "1");
    }
}
