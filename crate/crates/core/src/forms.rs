//! Z₃-graded exterior forms and the differential `d` with `d³ = 0`.
//!
//! Forms are linear combinations of words that interleave coefficient
//! monomials with the generators `dx^i` (grade 1, d-degree 1) and `d²x^k`
//! (grade 2, d-degree 2). Functions act on the left only, and a product of
//! one-forms is kept as a tensor product: `(ω_i dx^i)(φ_k dx^k)` is not
//! identified with `(ω_i φ_k) dx^i dx^k`.
//!
//! Normalization:
//!
//! * words of total d-degree above 3 vanish (this covers `d²x d²x`);
//! * adjacent coefficient factors multiply in the coefficient algebra;
//! * at degree 3 all coefficients collapse to the left, in order and with no
//!   phase, and the generator word is brought to canonical form using
//!   `dx^i dx^k dx^m = j dx^k dx^m dx^i` (least rotation, all-equal triples
//!   vanish) and `dx^i d²x^k = j d²x^k dx^i`.
//!
//! `d` acts letter by letter with the graded Leibniz rule: crossing a factor
//! of grade `p` costs `j^p`; a coefficient block `C` becomes `Σ_m (∂_m C) dx^m`,
//! `dx^i` becomes `d²x^i`, and `d²x^i` is killed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{CoeffExpr, Mode, Monomial};
use crate::error::{Error, Result};
use crate::grade::{Grade, Z3};
use crate::grassmann::least_rotation;
use crate::scalar::{accumulate, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormGenerator {
    /// `d²x^k`
    Ddx(usize),
    /// `dx^i`
    Dx(usize),
}

impl FormGenerator {
    pub fn degree(self) -> u8 {
        match self {
            FormGenerator::Dx(_) => 1,
            FormGenerator::Ddx(_) => 2,
        }
    }

    pub fn grade(self) -> Z3 {
        match self {
            FormGenerator::Dx(_) => Z3::ONE,
            FormGenerator::Ddx(_) => Z3::TWO,
        }
    }

    pub fn index(self) -> usize {
        match self {
            FormGenerator::Dx(i) | FormGenerator::Ddx(i) => i,
        }
    }
}

impl fmt::Display for FormGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormGenerator::Dx(i) => write!(f, "dx[{i}]"),
            FormGenerator::Ddx(i) => write!(f, "ddx[{i}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Coef(Monomial),
    Gen(FormGenerator),
}

/// A normalized word; see the module docs for the invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormWord(Vec<Item>);

impl FormWord {
    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn degree(&self) -> u8 {
        items_degree(&self.0)
    }

    pub fn grade(&self) -> Z3 {
        self.generators().fold(Z3::ZERO, |g, x| g + x.grade())
    }

    pub fn generators(&self) -> impl Iterator<Item = FormGenerator> + '_ {
        self.0.iter().filter_map(|it| match it {
            Item::Gen(g) => Some(*g),
            Item::Coef(_) => None,
        })
    }

    /// The collapsed left coefficient of a degree-3 word.
    fn leading_coefficient(&self) -> Monomial {
        match self.0.first() {
            Some(Item::Coef(m)) => m.clone(),
            _ => Monomial::unit(),
        }
    }

    fn has_coefficients(&self) -> bool {
        self.0.iter().any(|it| matches!(it, Item::Coef(_)))
    }
}

impl fmt::Display for FormWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, it) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match it {
                Item::Coef(m) => write!(f, "({m})")?,
                Item::Gen(g) => write!(f, "{g}")?,
            }
        }
        Ok(())
    }
}

fn items_degree(items: &[Item]) -> u8 {
    items
        .iter()
        .map(|it| match it {
            Item::Gen(g) => g.degree(),
            Item::Coef(_) => 0,
        })
        .sum()
}

/// Canonical degree-3 generator word with its phase, or `None` if it vanishes.
fn canonical_top(gens: &[FormGenerator]) -> Option<(i64, Vec<FormGenerator>)> {
    use FormGenerator::{Ddx, Dx};
    match gens {
        [Dx(a), Dx(b), Dx(c)] => {
            let (s, r) = least_rotation([*a, *b, *c])?;
            Some((s as i64, r.iter().map(|&i| Dx(i)).collect()))
        }
        [Dx(i), Ddx(k)] => Some((1, vec![Ddx(*k), Dx(*i)])),
        [Ddx(k), Dx(i)] => Some((0, vec![Ddx(*k), Dx(*i)])),
        _ => None,
    }
}

/// Normalizes a raw word to `j^phase · canonical`, or `None` when it vanishes.
pub(crate) fn normalize_items(items: Vec<Item>, mode: Mode) -> Option<(Scalar, FormWord)> {
    let degree = items_degree(&items);
    if degree > 3 {
        return None;
    }
    let mut merged: Vec<Item> = Vec::with_capacity(items.len());
    for it in items {
        match it {
            Item::Coef(m) => match merged.last_mut() {
                Some(Item::Coef(prev)) => *prev = prev.concat(&m, mode),
                _ => merged.push(Item::Coef(m.normalized(mode))),
            },
            g @ Item::Gen(_) => merged.push(g),
        }
    }
    merged.retain(|it| !matches!(it, Item::Coef(m) if m.is_unit()));
    if degree < 3 {
        return Some((Scalar::one(), FormWord(merged)));
    }
    let mut coef = Monomial::unit();
    let mut gens = Vec::with_capacity(3);
    for it in merged {
        match it {
            Item::Coef(m) => coef = coef.concat(&m, mode),
            Item::Gen(g) => gens.push(g),
        }
    }
    let (phase, gens) = canonical_top(&gens)?;
    let mut word = Vec::with_capacity(4);
    if !coef.is_unit() {
        word.push(Item::Coef(coef));
    }
    word.extend(gens.into_iter().map(Item::Gen));
    Some((Scalar::j_pow(phase), FormWord(word)))
}

/// Total degree of a form, or `Mixed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Exact(u8),
    Mixed,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Exact(d) => write!(f, "{d}"),
            Degree::Mixed => f.write_str("mixed"),
        }
    }
}

/// A linear combination of normalized words on an `n`-dimensional manifold.
#[derive(Clone, Debug)]
pub struct Form {
    n: usize,
    mode: Mode,
    terms: BTreeMap<FormWord, Scalar>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for Form {}

impl Form {
    pub fn zero(n: usize, mode: Mode) -> Self {
        Form { n, mode, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, mode: Mode) -> Self {
        Self::from_coeff(n, &CoeffExpr::one(mode))
    }

    /// A degree-0 form.
    pub fn from_coeff(n: usize, c: &CoeffExpr) -> Self {
        let mut out = Self::zero(n, c.mode());
        for (m, v) in c.terms() {
            out.push_raw(vec![Item::Coef(m.clone())], v.clone());
        }
        out
    }

    pub fn generator(n: usize, mode: Mode, g: FormGenerator) -> Result<Self> {
        check_index(n, g.index())?;
        let mut out = Self::zero(n, mode);
        out.push_raw(vec![Item::Gen(g)], Scalar::one());
        Ok(out)
    }

    pub fn dx(n: usize, mode: Mode, i: usize) -> Result<Self> {
        Self::generator(n, mode, FormGenerator::Dx(i))
    }

    pub fn ddx(n: usize, mode: Mode, i: usize) -> Result<Self> {
        Self::generator(n, mode, FormGenerator::Ddx(i))
    }

    /// Normalizes an arbitrary raw word.
    pub fn from_items(n: usize, mode: Mode, items: Vec<Item>) -> Result<Self> {
        for it in &items {
            if let Item::Gen(g) = it {
                check_index(n, g.index())?;
            }
        }
        let mut out = Self::zero(n, mode);
        out.push_raw(items, Scalar::one());
        Ok(out)
    }

    fn push_raw(&mut self, items: Vec<Item>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some((phase, w)) = normalize_items(items, self.mode) {
            accumulate(&mut self.terms, w, &c * &phase);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn has_coefficients(&self) -> bool {
        self.terms.keys().any(FormWord::has_coefficients)
    }

    fn joint(&self, other: &Self) -> Result<Mode> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.mode == other.mode || !other.has_coefficients() {
            Ok(self.mode)
        } else if !self.has_coefficients() {
            Ok(other.mode)
        } else {
            Err(Error::ModeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mode = self.joint(other)?;
        let mut out = Form { mode, ..self.clone() };
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.mode);
        for (w, v) in &self.terms {
            accumulate(&mut out.terms, w.clone(), v * c);
        }
        out
    }

    /// Associative product: concatenate words, then normalize.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mode = self.joint(other)?;
        let mut out = Self::zero(self.n, mode);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut items = u.0.clone();
                items.extend(v.0.iter().cloned());
                out.push_raw(items, a * b);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a coefficient.
    pub fn left_mul(&self, c: &CoeffExpr) -> Result<Self> {
        Self::from_coeff(self.n, c).multiply(self)
    }

    /// The exterior differential.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero(self.n, self.mode);
        for (w, c) in &self.terms {
            if w.degree() >= 3 {
                continue;
            }
            let mut grade = Z3::ZERO;
            for (pos, it) in w.0.iter().enumerate() {
                let phase = c * &Scalar::j_pow(grade.value() as i64);
                let splice = |mid: Vec<Item>| {
                    let mut items = w.0[..pos].to_vec();
                    items.extend(mid);
                    items.extend_from_slice(&w.0[pos + 1..]);
                    items
                };
                match it {
                    Item::Coef(m) => {
                        let block = CoeffExpr::term(self.mode, m.clone(), Scalar::one());
                        for idx in 1..=self.n {
                            for (dm, k) in block.derive(idx).terms() {
                                let mid = vec![Item::Coef(dm.clone()), Item::Gen(FormGenerator::Dx(idx))];
                                out.push_raw(splice(mid), &phase * k);
                            }
                        }
                    }
                    Item::Gen(g) => {
                        if let FormGenerator::Dx(i) = g {
                            out.push_raw(splice(vec![Item::Gen(FormGenerator::Ddx(*i))]), phase);
                        }
                        grade = grade + g.grade();
                    }
                }
            }
        }
        out
    }

    /// `d` applied `k` times.
    pub fn differential_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.differential())
    }

    pub fn grade(&self) -> Grade {
        Grade::common(self.terms.keys().map(FormWord::grade))
    }

    pub fn degree(&self) -> Degree {
        let mut it = self.terms.keys().map(FormWord::degree);
        let Some(first) = it.next() else {
            return Degree::Exact(0);
        };
        if it.all(|d| d == first) {
            Degree::Exact(first)
        } else {
            Degree::Mixed
        }
    }

    pub fn grade_and_degree(&self) -> (Grade, Degree) {
        (self.grade(), self.degree())
    }

    /// Keeps only the terms of the given degree.
    pub fn degree_part(&self, d: u8) -> Self {
        let mut out = Self::zero(self.n, self.mode);
        for (w, c) in &self.terms {
            if w.degree() == d {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        out
    }

    /// The degree-0 part as a coefficient expression.
    pub fn as_coeff(&self) -> Option<CoeffExpr> {
        let mut out = CoeffExpr::zero(self.mode);
        for (w, c) in &self.terms {
            match w.0.as_slice() {
                [] => out.add_term(Monomial::unit(), c.clone()),
                [Item::Coef(m)] => out.add_term(m.clone(), c.clone()),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Coefficient tables of a degree-3 form.
    pub fn components(&self) -> Result<ComponentTable> {
        match self.degree() {
            Degree::Exact(3) => {}
            Degree::Exact(0) if self.is_zero() => {}
            d => return Err(Error::Degree { expected: 3, found: d.to_string() }),
        }
        let mut table = ComponentTable::zero(self.n, self.mode);
        for (w, c) in &self.terms {
            let coef = CoeffExpr::term(self.mode, w.leading_coefficient(), c.clone());
            let gens: Vec<_> = w.generators().collect();
            match gens.as_slice() {
                [FormGenerator::Dx(i), FormGenerator::Dx(k), FormGenerator::Dx(m)] => {
                    let slot = table.t3_index(*i, *k, *m);
                    table.t3[slot] = &table.t3[slot] + &coef;
                }
                [FormGenerator::Ddx(i), FormGenerator::Dx(k)] => {
                    let slot = table.t21_index(*i, *k);
                    table.t21[slot] = &table.t21[slot] + &coef;
                }
                _ => unreachable!("normalized degree-3 word"),
            }
        }
        Ok(table)
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, max: n })
    } else {
        Ok(())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (a.0.grade(), a.0.degree(), a.0).cmp(&(b.0.grade(), b.0.degree(), b.0)));
        crate::print::write_sum(f, terms.into_iter().map(|(w, c)| (c, w.to_string(), w.0.is_empty())))
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.try_add(rhs).expect("incompatible forms")
    }
}

impl Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &-rhs
    }
}

impl Mul<&Form> for &Form {
    type Output = Form;
    fn mul(self, rhs: &Form) -> Form {
        self.multiply(rhs).expect("incompatible forms")
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Form> for Form {
            type Output = Form;
            fn $m(self, rhs: Form) -> Form { (&self).$m(&rhs) }
        }
        impl $tr<&Form> for Form {
            type Output = Form;
            fn $m(self, rhs: &Form) -> Form { (&self).$m(rhs) }
        }
        impl $tr<Form> for &Form {
            type Output = Form;
            fn $m(self, rhs: Form) -> Form { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

/// Components of a degree-3 form: `Σ T3[i,k,m] dx^i dx^k dx^m + Σ T21[i,k] d²x^i dx^k`,
/// with `T3` supported on canonical (least-rotation) triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTable {
    n: usize,
    mode: Mode,
    t3: Vec<CoeffExpr>,
    t21: Vec<CoeffExpr>,
}

impl ComponentTable {
    pub fn zero(n: usize, mode: Mode) -> Self {
        ComponentTable { n, mode, t3: vec![CoeffExpr::zero(mode); n * n * n], t21: vec![CoeffExpr::zero(mode); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn t3_index(&self, i: usize, k: usize, m: usize) -> usize {
        ((i - 1) * self.n + (k - 1)) * self.n + (m - 1)
    }

    fn t21_index(&self, i: usize, k: usize) -> usize {
        (i - 1) * self.n + (k - 1)
    }

    /// Entry on the triple `dx^i dx^k dx^m` (zero off canonical triples).
    pub fn t3(&self, i: usize, k: usize, m: usize) -> &CoeffExpr {
        &self.t3[self.t3_index(i, k, m)]
    }

    /// Entry on `d²x^i dx^k`.
    pub fn t21(&self, i: usize, k: usize) -> &CoeffExpr {
        &self.t21[self.t21_index(i, k)]
    }

    pub fn set_t21(&mut self, i: usize, k: usize, v: CoeffExpr) {
        let slot = self.t21_index(i, k);
        self.t21[slot] = v;
    }

    /// Applies `f` to every entry.
    pub fn map<F: Fn(&CoeffExpr) -> CoeffExpr>(&self, f: F) -> Self {
        ComponentTable {
            n: self.n,
            mode: self.mode,
            t3: self.t3.iter().map(&f).collect(),
            t21: self.t21.iter().map(&f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t3.iter().chain(&self.t21).all(CoeffExpr::is_zero)
    }

    /// Canonical index triples in lexicographic order.
    pub fn canonical_triples(n: usize) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    if least_rotation([i, k, m]).is_some_and(|(s, _)| s == 0) {
                        out.push([i, k, m]);
                    }
                }
            }
        }
        out
    }

    /// Rebuilds the form.
    pub fn to_form(&self) -> Form {
        let n = self.n;
        let mut out = Form::zero(n, self.mode);
        for i in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    let c = self.t3(i, k, m);
                    for (mono, v) in c.terms() {
                        let items = vec![
                            Item::Coef(mono.clone()),
                            Item::Gen(FormGenerator::Dx(i)),
                            Item::Gen(FormGenerator::Dx(k)),
                            Item::Gen(FormGenerator::Dx(m)),
                        ];
                        out.push_raw(items, v.clone());
                    }
                }
                for (mono, v) in self.t21(i, k).terms() {
                    let items = vec![
                        Item::Coef(mono.clone()),
                        Item::Gen(FormGenerator::Ddx(i)),
                        Item::Gen(FormGenerator::Dx(k)),
                    ];
                    out.push_raw(items, v.clone());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Jet, Symbol};

    const NC: Mode = Mode::Noncommutative;
    const N: usize = 4;

    fn dx(i: usize) -> Form {
        Form::dx(N, NC, i).unwrap()
    }

    fn ddx(i: usize) -> Form {
        Form::ddx(N, NC, i).unwrap()
    }

    fn coef(name: &str) -> Form {
        Form::from_coeff(N, &CoeffExpr::symbol(NC, Symbol::new(name)))
    }

    fn jet(name: &str, derivs: &[usize]) -> Form {
        Form::from_coeff(N, &CoeffExpr::jet(NC, Jet::with_derivs(Symbol::new(name), derivs.to_vec())))
    }

    fn x(i: usize) -> Form {
        Form::from_coeff(N, &CoeffExpr::coord(NC, i))
    }

    fn prod(fs: &[Form]) -> Form {
        fs.iter().skip(1).fold(fs[0].clone(), |acc, f| &acc * f)
    }

    #[test]
    fn high_degree_vanishes() {
        assert!(prod(&[dx(1), dx(2), dx(3), dx(4)]).is_zero());
        assert!((&ddx(1) * &ddx(2)).is_zero());
        assert!(prod(&[dx(1), dx(2), ddx(3)]).is_zero());
    }

    // Oracle for the rotation phases: the defining relation w = j·rot(w) must
    // hold between every triple and its left rotation, and all-equal triples
    // must vanish.
    #[test]
    fn rotation_relation_holds_on_all_triples() {
        let j = Scalar::j();
        for i in 1..=3 {
            for k in 1..=3 {
                for m in 1..=3 {
                    let w = prod(&[dx(i), dx(k), dx(m)]);
                    let rot = prod(&[dx(k), dx(m), dx(i)]);
                    assert_eq!(w, rot.scale(&j), "({i},{k},{m})");
                    if i == k && k == m {
                        assert!(w.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_example() {
        let w = prod(&[dx(2), dx(3), dx(1)]);
        assert_eq!(w, prod(&[dx(1), dx(2), dx(3)]).scale(&Scalar::j_pow(2)));
        assert_eq!(w.to_string(), "j^2 * dx[1] dx[2] dx[3]");
    }

    #[test]
    fn cyclic_sum_vanishes() {
        for (m, k, i) in [(1, 2, 3), (2, 2, 1), (3, 1, 4)] {
            let s = &(&prod(&[dx(m), dx(k), dx(i)]) + &prod(&[dx(k), dx(i), dx(m)])) + &prod(&[dx(i), dx(m), dx(k)]);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn mixed_reorder() {
        assert_eq!(&dx(1) * &ddx(2), (&ddx(2) * &dx(1)).scale(&Scalar::j()));
    }

    #[test]
    fn collapse_at_top_degree() {
        let a = coef("A");
        let b = jet("B", &[1]);
        let lhs = &(&a * &dx(3)) * &(&(&b * &dx(1)) * &dx(2));
        let rhs = prod(&[a.clone(), b.clone(), dx(3), dx(1), dx(2)]);
        assert_eq!(lhs, rhs);
        // degree two keeps the interleaving
        let w = &(&a * &dx(1)) * &(&b * &dx(2));
        assert_ne!(w, prod(&[a, b, dx(1), dx(2)]));
    }

    #[test]
    fn leibniz_on_coordinates() {
        let got = (&x(1) * &x(2)).differential();
        let want = &(&x(1) * &dx(2)) + &(&x(2) * &dx(1));
        assert_eq!(got, want);
    }

    #[test]
    fn second_differential_of_function() {
        let f = coef("f");
        let mut want = Form::zero(N, NC);
        for i in 1..=N {
            for k in 1..=N {
                want = &want + &prod(&[jet("f", &[k, i]), dx(k), dx(i)]);
            }
            want = &want + &(&jet("f", &[i]) * &ddx(i));
        }
        assert_eq!(f.differential_n(2), want);
        assert!(f.differential_n(3).is_zero());
    }

    #[test]
    fn second_differential_of_x_dx() {
        for (i, k) in [(1, 2), (3, 1), (2, 2)] {
            let got = (&x(i) * &dx(k)).differential_n(2);
            let want = &(&ddx(i) * &dx(k)) - &(&ddx(k) * &dx(i));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn second_differential_of_one_form() {
        let mut omega = Form::zero(N, NC);
        for k in 1..=N {
            omega = &omega + &(&jet(&format!("w{k}"), &[]) * &dx(k));
        }
        let mut want = Form::zero(N, NC);
        for m in 1..=N {
            for i in 1..=N {
                for k in 1..=N {
                    want = &want + &prod(&[jet(&format!("w{k}"), &[m, i]), dx(m), dx(i), dx(k)]);
                }
            }
        }
        for i in 1..=N {
            for k in 1..=N {
                let anti = &jet(&format!("w{k}"), &[i]) - &jet(&format!("w{i}"), &[k]);
                want = &want + &prod(&[anti, ddx(i), dx(k)]);
            }
        }
        assert_eq!(omega.differential_n(2), want);
    }

    #[test]
    fn grades_and_degrees() {
        assert_eq!((&ddx(1) * &dx(2)).grade_and_degree(), (Grade::Homogeneous(Z3::ZERO), Degree::Exact(3)));
        assert_eq!((&dx(1) * &dx(2)).grade_and_degree(), (Grade::Homogeneous(Z3::TWO), Degree::Exact(2)));
        assert_eq!(coef("f").grade_and_degree(), (Grade::Homogeneous(Z3::ZERO), Degree::Exact(0)));
        assert_eq!((&dx(1) + &dx(1).differential()).degree(), Degree::Mixed);
    }

    #[test]
    fn component_examples() {
        let t = (&ddx(1) * &dx(2)).components().unwrap();
        assert_eq!(t.t21(1, 2), &CoeffExpr::one(NC));
        assert!(t.t3(1, 2, 3).is_zero());
        let w = prod(&[dx(2), dx(3), dx(1)]).scale(&Scalar::j_pow(2));
        let t = w.components().unwrap();
        assert_eq!(t.t3(1, 2, 3), &CoeffExpr::constant(NC, Scalar::j()));
        assert_eq!(t.to_form(), w);
        assert!(matches!(dx(1).components(), Err(Error::Degree { .. })));
    }

    #[test]
    fn index_checks() {
        assert!(Form::dx(2, NC, 3).is_err());
        assert!(Form::ddx(2, NC, 0).is_err());
    }

    #[test]
    fn canonical_triple_count() {
        // (n³ - n)/3 classes
        for n in 1..=4 {
            assert_eq!(ComponentTable::canonical_triples(n).len(), (n * n * n - n) / 3);
        }
    }

    #[test]
    fn display_of_second_differential() {
        let f = Form::from_coeff(2, &CoeffExpr::symbol(NC, Symbol::new("f")));
        assert_eq!(
            f.differential_n(2).to_string(),
            "(f_,1) ddx[1] + (f_,1,1) dx[1] dx[1] + (f_,1,2) dx[1] dx[2] + (f_,1,2) dx[2] dx[1] + (f_,2) ddx[2] + (f_,2,2) dx[2] dx[2]"
        );
        assert_eq!(Form::zero(2, NC).to_string(), "0");
    }
}
