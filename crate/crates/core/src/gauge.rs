//! Connections `A = A_i dx^i`, the covariant differential `D = d + A`, gauge
//! transformations and the curvature 3-form
//! `Ω = d²A + d(A²) + A dA + A³ = Ω_ikm dx^i dx^k dx^m + F_ik d²x^i dx^k`.

use crate::coeff::{CoeffExpr, Jet, Mode, Symbol};
use crate::error::{Error, Result};
use crate::forms::{ComponentTable, Form, FormGenerator, Item};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    n: usize,
    mode: Mode,
    a: Vec<CoeffExpr>,
}

impl Connection {
    /// `components[i - 1] = A_i`.
    pub fn new(components: Vec<CoeffExpr>) -> Result<Self> {
        let n = components.len();
        let mode = components.iter().find(|c| !c.is_constant()).map_or(Mode::Noncommutative, CoeffExpr::mode);
        if components.iter().any(|c| !c.is_constant() && c.mode() != mode) {
            return Err(Error::ModeMismatch);
        }
        let a = components.into_iter().map(|c| c.with_mode(mode)).collect();
        Ok(Connection { n, mode, a })
    }

    pub fn zero(n: usize, mode: Mode) -> Self {
        Connection { n, mode, a: vec![CoeffExpr::zero(mode); n] }
    }

    /// Commuting real potentials `A[i]`.
    pub fn abelian(n: usize) -> Self {
        Self::symbolic(n, Mode::Commutative, |i| Symbol::indexed("A", i).real())
    }

    /// Noncommuting potentials `A[i]`.
    pub fn generic(n: usize) -> Self {
        Self::symbolic(n, Mode::Noncommutative, |i| Symbol::indexed("A", i))
    }

    fn symbolic(n: usize, mode: Mode, sym: impl Fn(usize) -> Symbol) -> Self {
        Connection { n, mode, a: (1..=n).map(|i| CoeffExpr::symbol(mode, sym(i))).collect() }
    }

    /// `A_i = U⁻¹ ∂_i U`.
    pub fn pure_gauge(n: usize, u: &Symbol) -> Self {
        Self::zero(n, Mode::Noncommutative).gauge_transform(u)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `A_i`, 1-based.
    pub fn component(&self, i: usize) -> &CoeffExpr {
        &self.a[i - 1]
    }

    pub fn components(&self) -> &[CoeffExpr] {
        &self.a
    }

    pub fn form(&self) -> Form {
        let mut out = Form::zero(self.n, self.mode);
        for (i, c) in self.a.iter().enumerate() {
            let g = Form::generator(self.n, self.mode, FormGenerator::Dx(i + 1)).expect("index in range");
            out = &out + &Form::from_coeff(self.n, c).multiply(&g).expect("same mode");
        }
        out
    }

    /// `Dφ = dφ + Aφ`.
    pub fn covariant_differential(&self, phi: &Form) -> Result<Form> {
        phi.differential().try_add(&self.form().multiply(phi)?)
    }

    /// `D` applied `k` times.
    pub fn covariant_differential_n(&self, phi: &Form, k: usize) -> Result<Form> {
        (0..k).try_fold(phi.clone(), |acc, _| self.covariant_differential(&acc))
    }

    pub fn curvature(&self) -> Form {
        let a = self.form();
        let da = a.differential();
        let a2 = &a * &a;
        let terms = [da.differential(), a2.differential(), &a * &da, &a2 * &a];
        terms.iter().skip(1).fold(terms[0].clone(), |acc, t| &acc + t)
    }

    pub fn curvature_components(&self) -> ComponentTable {
        self.curvature().components().expect("curvature has degree 3")
    }

    /// `F_ik = ∂_iA_k − ∂_kA_i + A_iA_k − A_kA_i`.
    pub fn field_strength(&self, i: usize, k: usize) -> CoeffExpr {
        let (ai, ak) = (self.component(i), self.component(k));
        &(&ai.derive(k).scale(&Scalar::from_int(-1)) + &ak.derive(i)) + &(&(ai * ak) - &(ak * ai))
    }

    /// The raw cubic coefficients
    /// `∂_i∂_kA_m + ∂_iA_k A_m − A_m ∂_iA_k + A_iA_kA_m` of `dx^i dx^k dx^m`.
    pub fn cubic_table(&self) -> TripleTable {
        TripleTable::from_fn(self.n, self.mode, |i, k, m| {
            let (ai, ak, am) = (self.component(i), self.component(k), self.component(m));
            let dak = ak.derive(i);
            &(&(&am.derive_many(&[i, k]) + &(&dak * am)) - &(am * &dak)) + &(&(ai * ak) * am)
        })
    }

    /// `A'_i = U⁻¹ A_i U + U⁻¹ ∂_i U`.
    pub fn gauge_transform(&self, u: &Symbol) -> Self {
        let mode = Mode::Noncommutative;
        self.gauge_transform_with(&CoeffExpr::symbol(mode, u.clone()), &CoeffExpr::symbol(mode, u.inverse()))
    }

    /// Same, with `U` and `U⁻¹` given explicitly.
    pub fn gauge_transform_with(&self, uu: &CoeffExpr, uinv: &CoeffExpr) -> Self {
        let mode = Mode::Noncommutative;
        let (uu, uinv) = (uu.with_mode(mode), uinv.with_mode(mode));
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(idx, ai)| {
                let ai = ai.with_mode(mode);
                &(&(&uinv * &ai) * &uu) + &(&uinv * &uu.derive(idx + 1))
            })
            .collect();
        Connection { n: self.n, mode, a }
    }

    /// `D_iF_km = ∂_iF_km + A_iF_km − F_kmA_i`, stored at `[i, k, m]`.
    pub fn covariant_derivative_f(&self) -> TripleTable {
        let f: Vec<Vec<CoeffExpr>> =
            (1..=self.n).map(|k| (1..=self.n).map(|m| self.field_strength(k, m)).collect()).collect();
        TripleTable::from_fn(self.n, self.mode, |i, k, m| {
            let fkm = &f[k - 1][m - 1];
            let ai = self.component(i);
            &(&fkm.derive(i) + &(ai * fkm)) - &(fkm * ai)
        })
    }

    /// `(1/3)[j D_iF_mk + j² D_kF_mi]` at `[i, k, m]`.
    pub fn covariant_cubic_table(&self) -> TripleTable {
        let df = self.covariant_derivative_f();
        let third = Scalar::from_ratio(1, 3);
        TripleTable::from_fn(self.n, self.mode, |i, k, m| {
            let a = df.get(i, m, k).scale(&Scalar::j());
            let b = df.get(k, m, i).scale(&Scalar::j_pow(2));
            (&a + &b).scale(&third)
        })
    }
}

/// A formal matter field `Φ`: a noncommuting symbol acted on from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatterField {
    value: CoeffExpr,
}

impl MatterField {
    pub fn new(name: &str) -> Self {
        MatterField { value: CoeffExpr::symbol(Mode::Noncommutative, Symbol::new(name)) }
    }

    pub fn value(&self) -> &CoeffExpr {
        &self.value
    }

    pub fn form(&self, n: usize) -> Form {
        Form::from_coeff(n, &self.value)
    }
}

/// Coefficients of all `n³` triples `dx^i dx^k dx^m`, not necessarily canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTable {
    n: usize,
    mode: Mode,
    entries: Vec<CoeffExpr>,
}

impl TripleTable {
    pub fn from_fn(n: usize, mode: Mode, mut f: impl FnMut(usize, usize, usize) -> CoeffExpr) -> Self {
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    entries.push(f(i, k, m).with_mode(mode));
                }
            }
        }
        TripleTable { n, mode, entries }
    }

    /// The `T3` part of a component table, zero off canonical triples.
    pub fn from_components(t: &ComponentTable) -> Self {
        Self::from_fn(t.dim(), t.mode(), |i, k, m| t.t3(i, k, m).clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize, m: usize) -> &CoeffExpr {
        &self.entries[((i - 1) * self.n + (k - 1)) * self.n + (m - 1)]
    }

    pub fn map(&self, f: impl Fn(&CoeffExpr) -> CoeffExpr) -> Self {
        TripleTable { n: self.n, mode: self.mode, entries: self.entries.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CoeffExpr::is_zero)
    }

    /// `S_ikm = (1/3)(X_ikm + j² X_kmi + j X_mik)`; the form `Σ X dx dx dx` is unchanged.
    pub fn cyclic_symmetrize(&self) -> Self {
        let third = Scalar::from_ratio(1, 3);
        let (j, j2) = (Scalar::j(), Scalar::j_pow(2));
        Self::from_fn(self.n, self.mode, |i, k, m| {
            let s = &(self.get(i, k, m) + &self.get(k, m, i).scale(&j2)) + &self.get(m, i, k).scale(&j);
            s.scale(&third)
        })
    }

    /// `Σ X_ikm dx^i dx^k dx^m`.
    pub fn to_form(&self) -> Form {
        let n = self.n;
        let mut out = Form::zero(n, self.mode);
        for i in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    let c = self.get(i, k, m);
                    if c.is_zero() {
                        continue;
                    }
                    let gens = [i, k, m].map(|x| Item::Gen(FormGenerator::Dx(x)));
                    let word = Form::from_items(n, self.mode, gens.to_vec()).expect("index in range");
                    out = &out + &word.left_mul(c).expect("same mode");
                }
            }
        }
        out
    }
}

/// Checks `(1/3)(j a + j² b) = −(a + b)/6 + (i√3/6)(a − b)` monomial by monomial
/// after embedding ℚ(j) in ℂ; returns the largest deviation.
pub fn split_deviation(lhs: &CoeffExpr, a: &CoeffExpr, b: &CoeffExpr) -> f64 {
    let s3 = 3f64.sqrt();
    let mut monos: Vec<_> = lhs.terms().map(|(m, _)| m.clone()).collect();
    monos.extend(a.terms().map(|(m, _)| m.clone()));
    monos.extend(b.terms().map(|(m, _)| m.clone()));
    monos
        .iter()
        .map(|m| {
            let (lr, li) = lhs.coefficient(m).embed_complex();
            let (ar, ai) = a.coefficient(m).embed_complex();
            let (br, bi) = b.coefficient(m).embed_complex();
            // −(a+b)/6 + (i√3/6)(a−b) with complex a, b
            let (sr, si) = (ar + br, ai + bi);
            let (dr, di) = (ar - br, ai - bi);
            let er = -sr / 6.0 - s3 * di / 6.0;
            let ei = -si / 6.0 + s3 * dr / 6.0;
            (lr - er).abs().max((li - ei).abs())
        })
        .fold(0.0, f64::max)
}

/// A jet of `A_i` in a connection built by [`Connection::generic`] or [`Connection::abelian`].
pub fn potential_jet(conn: &Connection, i: usize, derivs: &[usize]) -> CoeffExpr {
    let sym = Symbol::indexed("A", i);
    let sym = if conn.mode() == Mode::Commutative { sym.real() } else { sym };
    CoeffExpr::jet(conn.mode(), Jet::with_derivs(sym, derivs.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_connection_is_flat() {
        assert!(Connection::zero(3, Mode::Noncommutative).curvature().is_zero());
        let phi = MatterField::new("Phi").form(3);
        let c = Connection::zero(3, Mode::Noncommutative);
        assert_eq!(c.covariant_differential(&phi).unwrap(), phi.differential());
    }

    #[test]
    fn abelian_field_strength() {
        let c = Connection::abelian(3);
        let t = c.curvature_components();
        for i in 1..=3 {
            for k in 1..=3 {
                let want = &potential_jet(&c, k, &[i]) - &potential_jet(&c, i, &[k]);
                assert_eq!(t.t21(i, k), &want);
            }
        }
    }

    #[test]
    fn generic_field_strength() {
        let c = Connection::generic(3);
        let t = c.curvature_components();
        for i in 1..=3 {
            for k in 1..=3 {
                assert_eq!(t.t21(i, k), &c.field_strength(i, k));
            }
        }
    }

    #[test]
    fn cubic_table_matches_curvature() {
        for n in 2..=3 {
            let c = Connection::generic(n);
            let t = c.curvature_components();
            let cubic = c.cubic_table().to_form();
            assert_eq!(TripleTable::from_components(&t).to_form(), cubic);
        }
    }

    #[test]
    fn symmetrize_is_projector() {
        let c = Connection::generic(2);
        let s = c.cubic_table().cyclic_symmetrize();
        assert_eq!(s.cyclic_symmetrize(), s);
        assert_eq!(s.to_form(), c.cubic_table().to_form());
    }

    #[test]
    fn abelian_covariant_identity() {
        for n in 2..=3 {
            let c = Connection::abelian(n);
            let lhs = c.cubic_table().cyclic_symmetrize();
            let rhs = c.covariant_cubic_table().cyclic_symmetrize();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn cube_of_covariant_differential() {
        for n in 2..=3 {
            let c = Connection::generic(n);
            let phi = MatterField::new("Phi").form(n);
            let lhs = c.covariant_differential_n(&phi, 3).unwrap();
            assert_eq!(lhs, c.curvature() * &phi);
        }
    }

    #[test]
    fn square_of_covariant_differential() {
        let c = Connection::generic(3);
        let phi = MatterField::new("Phi").form(3);
        let (a, dphi) = (c.form(), phi.differential());
        let want = phi.differential_n(2)
            + a.differential() * &phi
            + (&a * &dphi).scale(&Scalar::j())
            + &a * &dphi
            + &(&a * &a) * &phi;
        assert_eq!(c.covariant_differential_n(&phi, 2).unwrap(), want);
    }

    #[test]
    fn split_of_covariant_table() {
        let c = Connection::generic(2);
        let df = c.covariant_derivative_f();
        let r = c.covariant_cubic_table();
        for (i, k, m) in [(1, 1, 2), (1, 2, 2), (2, 1, 1)] {
            assert!(split_deviation(r.get(i, k, m), df.get(i, m, k), df.get(k, m, i)) < 1e-12);
        }
    }

    #[test]
    fn unit_gauge_leaves_connection() {
        let c = Connection::generic(2);
        let one = CoeffExpr::one(Mode::Noncommutative);
        assert_eq!(c.gauge_transform_with(&one, &one), c);
    }
}
