//! The coefficient ("function") algebra.
//!
//! Elements are ℚ(j)-linear combinations of words in jet symbols. A jet is a
//! base symbol together with a sorted multiset of coordinate indices, so
//! partial derivatives commute. Coordinates `x^i` are central with
//! `∂_m x^i = δ^i_m`. A symbol may be declared invertible: `X X⁻¹ = X⁻¹ X = 1`
//! is applied eagerly, and a derivative of `X⁻¹` is rewritten on the spot as
//! `∂_m X⁻¹ = -X⁻¹ (∂_m X) X⁻¹`, so no jet of an inverse is ever stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{accumulate, Scalar};

/// Whether coefficient words commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Commutative,
    Noncommutative,
}

/// A named field symbol, e.g. `f`, `A[2]`, `U`, `Uinv`, `~Phi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    index: Option<usize>,
    bar: bool,
    inverse: bool,
    real: bool,
}

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol { name: name.into(), index: None, bar: false, inverse: false, real: false }
    }

    pub fn indexed(name: &str, index: usize) -> Self {
        Symbol { index: Some(index), ..Self::new(name) }
    }

    /// Marks the symbol as self-conjugate.
    pub fn real(mut self) -> Self {
        self.real = true;
        self.bar = false;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> Option<usize> {
        self.index
    }

    pub fn is_bar(&self) -> bool {
        self.bar
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// The formal inverse `X⁻¹` (or `X` back from `X⁻¹`).
    pub fn inverse(&self) -> Self {
        Symbol { inverse: !self.inverse, ..self.clone() }
    }

    /// The barred partner; real symbols are their own partner.
    pub fn conjugate(&self) -> Self {
        if self.real {
            self.clone()
        } else {
            Symbol { bar: !self.bar, ..self.clone() }
        }
    }

    pub fn barred(&self) -> Self {
        Symbol { bar: true, real: false, ..self.clone() }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bar {
            f.write_str("~")?;
        }
        f.write_str(&self.name)?;
        if self.inverse {
            f.write_str("inv")?;
        }
        if let Some(i) = self.index {
            write!(f, "[{i}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// The coordinate function `x^i`.
    Coord(usize),
    Sym(Symbol),
}

/// A base symbol with commuting partial derivatives applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jet {
    base: Base,
    derivs: Vec<usize>,
}

impl Jet {
    pub fn symbol(sym: Symbol) -> Self {
        Jet { base: Base::Sym(sym), derivs: Vec::new() }
    }

    pub fn coord(i: usize) -> Self {
        Jet { base: Base::Coord(i), derivs: Vec::new() }
    }

    /// `∂_{derivs} sym`. Derivatives of inverse symbols are not jets; build
    /// those through [`CoeffExpr::derive`].
    pub fn with_derivs(sym: Symbol, mut derivs: Vec<usize>) -> Self {
        assert!(!sym.inverse || derivs.is_empty(), "inverse symbols carry no jets");
        derivs.sort_unstable();
        Jet { base: Base::Sym(sym), derivs }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn derivs(&self) -> &[usize] {
        &self.derivs
    }

    pub fn sym(&self) -> Option<&Symbol> {
        match &self.base {
            Base::Sym(s) => Some(s),
            Base::Coord(_) => None,
        }
    }

    fn is_coord(&self) -> bool {
        matches!(self.base, Base::Coord(_))
    }

    fn cancels_with(&self, other: &Jet) -> bool {
        match (&self.base, &other.base) {
            (Base::Sym(a), Base::Sym(b)) => {
                self.derivs.is_empty()
                    && other.derivs.is_empty()
                    && a.inverse != b.inverse
                    && a.name == b.name
                    && a.index == b.index
                    && a.bar == b.bar
            }
            _ => false,
        }
    }

    fn conjugate(&self) -> Jet {
        match &self.base {
            Base::Sym(s) => Jet { base: Base::Sym(s.conjugate()), derivs: self.derivs.clone() },
            Base::Coord(_) => self.clone(),
        }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Coord(i) => write!(f, "x[{i}]")?,
            Base::Sym(s) => write!(f, "{s}")?,
        }
        if !self.derivs.is_empty() {
            f.write_str("_")?;
            for d in &self.derivs {
                write!(f, ",{d}")?;
            }
        }
        Ok(())
    }
}

/// An ordered product of jets; empty is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Jet>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_jets(jets: Vec<Jet>, mode: Mode) -> Self {
        Monomial(jets).normalized(mode)
    }

    pub fn jets(&self) -> &[Jet] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation followed by normalization.
    pub fn concat(&self, other: &Monomial, mode: Mode) -> Monomial {
        let mut jets = self.0.clone();
        jets.extend_from_slice(&other.0);
        Monomial(jets).normalized(mode)
    }

    pub(crate) fn normalized(self, mode: Mode) -> Monomial {
        let mut jets = self.0;
        match mode {
            Mode::Noncommutative => {
                // coordinates are central
                let (mut coords, rest): (Vec<Jet>, Vec<Jet>) = jets.into_iter().partition(Jet::is_coord);
                coords.sort();
                let mut stack: Vec<Jet> = Vec::with_capacity(rest.len());
                for j in rest {
                    if stack.last().is_some_and(|top| top.cancels_with(&j)) {
                        stack.pop();
                    } else {
                        stack.push(j);
                    }
                }
                coords.extend(stack);
                Monomial(coords)
            }
            Mode::Commutative => {
                jets.sort();
                loop {
                    let hit = (0..jets.len())
                        .find_map(|a| (a + 1..jets.len()).find(|&b| jets[a].cancels_with(&jets[b])).map(|b| (a, b)));
                    match hit {
                        Some((a, b)) => {
                            jets.remove(b);
                            jets.remove(a);
                        }
                        None => break,
                    }
                }
                Monomial(jets)
            }
        }
    }

    /// Reversed word with every symbol replaced by its conjugate partner.
    pub fn conjugate(&self, mode: Mode) -> Monomial {
        Monomial(self.0.iter().rev().map(Jet::conjugate).collect()).normalized(mode)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// A linear combination of monomials over ℚ(j).
#[derive(Clone, Debug)]
pub struct CoeffExpr {
    mode: Mode,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for CoeffExpr {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for CoeffExpr {}

impl CoeffExpr {
    pub fn zero(mode: Mode) -> Self {
        CoeffExpr { mode, terms: BTreeMap::new() }
    }

    pub fn constant(mode: Mode, c: Scalar) -> Self {
        Self::term(mode, Monomial::unit(), c)
    }

    pub fn one(mode: Mode) -> Self {
        Self::constant(mode, Scalar::one())
    }

    pub fn term(mode: Mode, m: Monomial, c: Scalar) -> Self {
        let mut out = Self::zero(mode);
        accumulate(&mut out.terms, m.normalized(mode), c);
        out
    }

    pub fn jet(mode: Mode, jet: Jet) -> Self {
        Self::term(mode, Monomial(vec![jet]), Scalar::one())
    }

    pub fn symbol(mode: Mode, sym: Symbol) -> Self {
        Self::jet(mode, Jet::symbol(sym))
    }

    pub fn coord(mode: Mode, i: usize) -> Self {
        Self::jet(mode, Jet::coord(i))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Same terms, reinterpreted (and renormalized) in another mode.
    pub fn with_mode(&self, mode: Mode) -> Self {
        let mut out = Self::zero(mode);
        for (m, c) in &self.terms {
            accumulate(&mut out.terms, m.clone().normalized(mode), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term is a bare scalar (including the zero expression).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_unit)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::unit()))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        accumulate(&mut self.terms, m, c);
    }

    fn joint_mode(&self, other: &Self) -> Result<Mode> {
        if self.mode == other.mode || other.is_constant() {
            Ok(self.mode)
        } else if self.is_constant() {
            Ok(other.mode)
        } else {
            Err(Error::ModeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mode = self.joint_mode(other)?;
        let mut out = if mode == self.mode { self.clone() } else { self.with_mode(mode) };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mode = self.joint_mode(other)?;
        let mut out = Self::zero(mode);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v, mode), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// `∂_m` extended as a derivation over words.
    pub fn derive(&self, m: usize) -> Self {
        let mut out = Self::zero(self.mode);
        for (mono, c) in &self.terms {
            for (pos, jet) in mono.0.iter().enumerate() {
                let dj = derive_jet(jet, m, self.mode);
                if dj.is_zero() {
                    continue;
                }
                let prefix = Monomial(mono.0[..pos].to_vec());
                let suffix = Monomial(mono.0[pos + 1..].to_vec());
                for (inner, k) in &dj.terms {
                    let w = prefix.concat(inner, self.mode).concat(&suffix, self.mode);
                    out.add_term(w, c * k);
                }
            }
        }
        out
    }

    /// Applies `∂` for each index in turn.
    pub fn derive_many(&self, ms: &[usize]) -> Self {
        ms.iter().fold(self.clone(), |acc, &m| acc.derive(m))
    }

    /// Antilinear antiautomorphism: reverse words, conjugate scalars and symbols.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, c) in &self.terms {
            out.add_term(m.conjugate(self.mode), c.conj());
        }
        out
    }

    /// Replaces jets by expressions; jets mapped to `None` are kept.
    pub fn substitute<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&Jet) -> Option<CoeffExpr>,
    {
        let mut out = Self::zero(self.mode);
        for (mono, c) in &self.terms {
            let mut acc = Self::constant(self.mode, c.clone());
            for jet in &mono.0 {
                let piece = f(jet).unwrap_or_else(|| Self::jet(self.mode, jet.clone()));
                acc = acc.try_mul(&piece)?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Partial derivative with respect to a jet treated as an independent
    /// variable. Only meaningful for commuting coefficients.
    pub fn partial_wrt(&self, jet: &Jet) -> Result<Self> {
        if self.mode != Mode::Commutative {
            return Err(Error::Unsupported("jet partial derivatives need commutative coefficients".into()));
        }
        let mut out = Self::zero(self.mode);
        for (mono, c) in &self.terms {
            let count = mono.0.iter().filter(|j| *j == jet).count();
            if count == 0 {
                continue;
            }
            let pos = mono.0.iter().position(|j| j == jet).unwrap_or_default();
            let mut rest = mono.0.clone();
            rest.remove(pos);
            out.add_term(Monomial(rest), c * &Scalar::from_int(count as i64));
        }
        Ok(out)
    }

    /// All jets occurring anywhere in the expression.
    pub fn jets(&self) -> std::collections::BTreeSet<Jet> {
        self.terms.keys().flat_map(|m| m.0.iter().cloned()).collect()
    }
}

fn derive_jet(jet: &Jet, m: usize, mode: Mode) -> CoeffExpr {
    match &jet.base {
        Base::Coord(i) if *i == m => CoeffExpr::one(mode),
        Base::Coord(_) => CoeffExpr::zero(mode),
        Base::Sym(s) if s.inverse => {
            let fwd = s.inverse();
            let w = Monomial(vec![Jet::symbol(s.clone()), Jet::with_derivs(fwd, vec![m]), Jet::symbol(s.clone())]);
            CoeffExpr::term(mode, w, Scalar::from_int(-1))
        }
        Base::Sym(s) => {
            let mut derivs = jet.derivs.clone();
            derivs.push(m);
            CoeffExpr::jet(mode, Jet::with_derivs(s.clone(), derivs))
        }
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        crate::print::write_sum(f, terms.into_iter().map(|(m, c)| (c, m.to_string(), m.is_unit())))
    }
}

impl Add<&CoeffExpr> for &CoeffExpr {
    type Output = CoeffExpr;
    fn add(self, rhs: &CoeffExpr) -> CoeffExpr {
        self.try_add(rhs).expect("coefficient mode mismatch")
    }
}

impl Sub<&CoeffExpr> for &CoeffExpr {
    type Output = CoeffExpr;
    fn sub(self, rhs: &CoeffExpr) -> CoeffExpr {
        self + &-rhs
    }
}

impl Mul<&CoeffExpr> for &CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: &CoeffExpr) -> CoeffExpr {
        self.try_mul(rhs).expect("coefficient mode mismatch")
    }
}

impl Neg for &CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CoeffExpr> for CoeffExpr {
            type Output = CoeffExpr;
            fn $m(self, rhs: CoeffExpr) -> CoeffExpr { (&self).$m(&rhs) }
        }
        impl $tr<&CoeffExpr> for CoeffExpr {
            type Output = CoeffExpr;
            fn $m(self, rhs: &CoeffExpr) -> CoeffExpr { (&self).$m(rhs) }
        }
        impl $tr<CoeffExpr> for &CoeffExpr {
            type Output = CoeffExpr;
            fn $m(self, rhs: CoeffExpr) -> CoeffExpr { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        -&self
    }
}
