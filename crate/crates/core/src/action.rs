//! Conjugate forms, the hermitian pairing of 3-forms, the Lagrangian
//! `L = <Ω|Ω>` of an abelian connection and its Euler–Lagrange equations.
//!
//! The conjugation `*` reverses words, maps `dx → δx`, `d²x → δ²x` and
//! conjugates scalars (`j ↦ j²`) and coefficients. A conjugate form is kept
//! through its mirror image under `*`, so all relations among `δx`, `δ²x`
//! are the mirrors of those among `dx`, `d²x`; in particular
//! `δ²x^k δx^i = j² δx^i δ²x^k`.

use std::fmt;

use crate::coeff::{CoeffExpr, Jet, Mode, Monomial, Symbol};
use crate::error::{Error, Result};
use crate::forms::{ComponentTable, Degree, Form, FormGenerator, Item};
use crate::gauge::{potential_jet, Connection};
use crate::scalar::Scalar;

/// A form in `δx^i`, `δ²x^k` with coefficients on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjForm {
    mirror: Form,
}

impl ConjForm {
    /// The conjugate form whose mirror image is `image`.
    pub fn from_mirror(image: Form) -> Self {
        ConjForm { mirror: image }
    }

    /// Normalizes a raw word written left to right in `δ` generators and coefficients.
    pub fn from_items(n: usize, mode: Mode, items: Vec<Item>) -> Result<Self> {
        let mirrored = items
            .into_iter()
            .rev()
            .map(|it| match it {
                Item::Coef(m) => Item::Coef(m.conjugate(mode)),
                g => g,
            })
            .collect();
        Ok(ConjForm { mirror: Form::from_items(n, mode, mirrored)? })
    }

    pub fn zero(n: usize, mode: Mode) -> Self {
        ConjForm { mirror: Form::zero(n, mode) }
    }

    /// `x*` as an ordinary form.
    pub fn mirror(&self) -> &Form {
        &self.mirror
    }

    pub fn is_zero(&self) -> bool {
        self.mirror.is_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(ConjForm { mirror: self.mirror.try_add(&other.mirror)? })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ConjForm { mirror: self.mirror.scale(&c.conj()) }
    }

    /// `(ab)* = b* a*`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        Ok(ConjForm { mirror: other.mirror.multiply(&self.mirror)? })
    }

    pub fn degree(&self) -> Degree {
        self.mirror.degree()
    }

    /// Conjugates back to an ordinary form.
    pub fn conjugate(&self) -> Form {
        self.mirror.clone()
    }
}

impl fmt::Display for ConjForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = self.mirror.mode();
        let mut terms: Vec<(Scalar, String, bool)> = self
            .mirror
            .terms()
            .map(|(w, c)| {
                let body: Vec<String> = w
                    .items()
                    .iter()
                    .rev()
                    .map(|it| match it {
                        Item::Coef(m) => format!("({})", m.conjugate(mode)),
                        Item::Gen(FormGenerator::Dx(i)) => format!("delx[{i}]"),
                        Item::Gen(FormGenerator::Ddx(i)) => format!("ddelx[{i}]"),
                    })
                    .collect();
                (c.conj(), body.join(" "), w.items().is_empty())
            })
            .collect();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        crate::print::write_sum(f, terms.iter().map(|(c, b, u)| (c, b.clone(), *u)))
    }
}

/// `x ↦ x*` for a form of degree 3.
pub fn conjugate_form(x: &Form) -> Result<ConjForm> {
    match x.degree() {
        Degree::Exact(3) => Ok(ConjForm { mirror: x.clone() }),
        Degree::Exact(0) if x.is_zero() => Ok(ConjForm { mirror: x.clone() }),
        d => Err(Error::Degree { expected: 3, found: d.to_string() }),
    }
}

/// The relative weight `μ` of the `d²x dx` sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingConfig {
    mu: CoeffExpr,
}

impl PairingConfig {
    pub fn new(mu: Scalar) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::ZeroMu);
        }
        Ok(PairingConfig { mu: CoeffExpr::constant(Mode::Commutative, mu) })
    }

    /// A formal real parameter `mu`.
    pub fn symbolic() -> Self {
        PairingConfig { mu: CoeffExpr::symbol(Mode::Commutative, Self::mu_symbol()) }
    }

    pub fn mu_symbol() -> Symbol {
        Symbol::new("mu").real()
    }

    pub fn mu(&self) -> &CoeffExpr {
        &self.mu
    }
}

/// The two sectors of a pairing before weighting by `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSectors {
    pub cubic: CoeffExpr,
    pub mixed: CoeffExpr,
}

fn pairing_sectors(w: &ComponentTable, p: &ComponentTable) -> Result<PairingSectors> {
    if w.dim() != p.dim() {
        return Err(Error::DimensionMismatch(w.dim(), p.dim()));
    }
    let n = w.dim();
    let mode = if w.mode() == p.mode() { w.mode() } else { Mode::Noncommutative };
    let mut cubic = CoeffExpr::zero(mode);
    for [i, k, m] in ComponentTable::canonical_triples(n) {
        let term = w.t3(i, k, m).conjugate().with_mode(mode).try_mul(&p.t3(i, k, m).with_mode(mode))?;
        cubic = cubic.try_add(&term)?;
    }
    let mut mixed = CoeffExpr::zero(mode);
    for i in 1..=n {
        for k in 1..=n {
            let term = w.t21(i, k).conjugate().with_mode(mode).try_mul(&p.t21(i, k).with_mode(mode))?;
            mixed = mixed.try_add(&term)?;
        }
    }
    Ok(PairingSectors { cubic, mixed })
}

/// `<ω|φ> = Σ conj(ω_ikm) φ_ikm + μ Σ conj(ψ_ik) χ_ik` over canonical triples.
pub fn scalar_product(w: &Form, p: &Form, cfg: &PairingConfig) -> Result<CoeffExpr> {
    let s = pairing_sectors(&w.components()?, &p.components()?)?;
    let mode = s.cubic.mode();
    s.cubic.try_add(&cfg.mu.with_mode(mode).try_mul(&s.mixed)?)
}

/// The same pairing computed on words: `ω*` against `φ`, pairing each
/// reversed word with its own mirror.
pub fn scalar_product_words(w: &ConjForm, p: &Form, cfg: &PairingConfig) -> Result<CoeffExpr> {
    let img = w.mirror();
    let mode = if img.mode() == p.mode() { p.mode() } else { Mode::Noncommutative };
    let mut out = CoeffExpr::zero(mode);
    for (u, a) in img.terms() {
        for (v, b) in p.terms() {
            let gu: Vec<_> = u.generators().collect();
            let gv: Vec<_> = v.generators().collect();
            if gu != gv || u.degree() != 3 {
                continue;
            }
            let lead = |items: &[Item]| match items.first() {
                Some(Item::Coef(m)) => m.clone(),
                _ => Monomial::unit(),
            };
            let left = CoeffExpr::term(mode, lead(u.items()), a.clone()).conjugate();
            let right = CoeffExpr::term(mode, lead(v.items()), b.clone());
            let mut term = left.try_mul(&right)?;
            if matches!(gu[0], FormGenerator::Ddx(_)) {
                term = cfg.mu.with_mode(mode).try_mul(&term)?;
            }
            out = out.try_add(&term)?;
        }
    }
    Ok(out)
}

/// `<ω|ω>` as `Σ w·s²` with rational weights: each component `P + Qj`
/// contributes `(P − Q/2)² + (3/4)Q²` in its sector.
pub fn sum_of_squares(w: &Form) -> Result<(Squares, Squares)> {
    let t = w.components()?;
    let n = t.dim();
    let split = |c: &CoeffExpr| -> Squares {
        let mut p = CoeffExpr::zero(c.mode());
        let mut q = CoeffExpr::zero(c.mode());
        for (m, v) in c.terms() {
            p = &p + &CoeffExpr::term(c.mode(), m.clone(), Scalar::from_rational(v.re_part().clone()));
            q = &q + &CoeffExpr::term(c.mode(), m.clone(), Scalar::from_rational(v.j_part().clone()));
        }
        let half = Scalar::from_ratio(1, 2);
        vec![(Scalar::one(), &p - &q.scale(&half)), (Scalar::from_ratio(3, 4), q)]
    };
    let cubic = ComponentTable::canonical_triples(n).into_iter().flat_map(|[i, k, m]| split(t.t3(i, k, m))).collect();
    let mut mixed = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            mixed.extend(split(t.t21(i, k)));
        }
    }
    Ok((cubic, mixed))
}

/// Weights and bases of a sum of squares.
pub type Squares = Vec<(Scalar, CoeffExpr)>;

/// Evaluates `Σ w·s²`.
pub fn weighted_squares(terms: &[(Scalar, CoeffExpr)], mode: Mode) -> CoeffExpr {
    terms.iter().fold(CoeffExpr::zero(mode), |acc, (w, s)| &acc + &(s * s).scale(w))
}

/// `F_ik = ∂_iA_k − ∂_kA_i` for the abelian potentials.
pub fn abelian_field_strength(conn: &Connection, i: usize, k: usize) -> CoeffExpr {
    &potential_jet(conn, k, &[i]) - &potential_jet(conn, i, &[k])
}

/// The invariants `B = Σ(∂_iF_mk)²`, `C = Σ ∂_kF_mi ∂_iF_mk`, `M = ΣF_ik²`.
pub fn quadratic_invariants(conn: &Connection) -> [CoeffExpr; 3] {
    let n = conn.dim();
    let f = |i, k| abelian_field_strength(conn, i, k);
    let zero = CoeffExpr::zero(conn.mode());
    let (mut b, mut c, mut m) = (zero.clone(), zero.clone(), zero);
    for i in 1..=n {
        for k in 1..=n {
            for mm in 1..=n {
                let d = f(mm, k).derive(i);
                b = &b + &(&d * &d);
                c = &c + &(&f(mm, i).derive(k) * &d);
            }
            m = &m + &(&f(i, k) * &f(i, k));
        }
    }
    [b, c, m]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianReport {
    /// `<Ω|Ω>` with `μ` kept formal.
    pub density: CoeffExpr,
    /// `κ` in `L|_{μ=0} = κB`; `None` when `L` is not of that shape.
    pub derivative: Option<Scalar>,
    /// `c` in `L − L|_{μ=0} = cμM`.
    pub mass: Option<Scalar>,
    /// Whether `C = B/2` holds exactly, which makes `αB + βC` non-unique.
    pub mixed_is_half: bool,
}

impl LagrangianReport {
    /// The representative `αB + βC` of the derivative sector with `α/β = r`.
    pub fn with_ratio(&self, r: &Scalar) -> Option<(Scalar, Scalar)> {
        let k = self.derivative.as_ref()?;
        let denom = r + &Scalar::from_ratio(1, 2);
        let beta = k * &denom.inv()?;
        Some((r * &beta, beta))
    }
}

/// Fits `target = Σ c_i basis_i` exactly, or returns `None`.
fn fit(target: &CoeffExpr, basis: &[&CoeffExpr]) -> Option<Vec<Scalar>> {
    let monos: Vec<Monomial> = {
        let mut all: Vec<Monomial> = target.terms().map(|(m, _)| m.clone()).collect();
        for b in basis {
            all.extend(b.terms().map(|(m, _)| m.clone()));
        }
        all.sort();
        all.dedup();
        all
    };
    // Gaussian elimination over ℚ(j) on the monomial equations.
    let cols = basis.len();
    let mut rows: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|m| {
            let mut r: Vec<Scalar> = basis.iter().map(|b| b.coefficient(m)).collect();
            r.push(target.coefficient(m));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].inv().expect("nonzero pivot");
        rows[row] = rows[row].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &(&factor * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut out = vec![Scalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = rows[r][cols].clone();
    }
    Some(out)
}

/// `L = <Ω|Ω>` for an abelian connection, with `μ` formal.
pub fn lagrangian_density(conn: &Connection) -> Result<LagrangianReport> {
    if conn.mode() != Mode::Commutative {
        return Err(Error::Unsupported("the Lagrangian needs an abelian connection".into()));
    }
    let t = conn.curvature_components();
    let s = pairing_sectors(&t, &t)?;
    let mu = PairingConfig::symbolic();
    let density = &s.cubic + &(mu.mu() * &s.mixed);
    let [b, c, m] = quadratic_invariants(conn);
    Ok(LagrangianReport {
        density,
        derivative: fit(&s.cubic, &[&b]).map(|v| v[0].clone()),
        mass: fit(&s.mixed, &[&m]).map(|v| v[0].clone()),
        mixed_is_half: c == b.scale(&Scalar::from_ratio(1, 2)),
    })
}

/// `E_k = Σ_J (−1)^{|J|} ∂_J (∂L/∂(A_k)_J)` for `k = 1..n`; `μ` is held constant.
pub fn euler_lagrange(conn: &Connection, lagrangian: &CoeffExpr) -> Result<Vec<CoeffExpr>> {
    let mu = Jet::symbol(PairingConfig::mu_symbol());
    let mu_part = lagrangian.partial_wrt(&mu)?;
    let mu_expr = CoeffExpr::jet(lagrangian.mode(), mu);
    let plain = lagrangian - &(&mu_expr * &mu_part);
    let e0 = variation(conn, &plain)?;
    let e1 = variation(conn, &mu_part)?;
    Ok(e0.iter().zip(&e1).map(|(a, b)| a + &(&mu_expr * b)).collect())
}

fn variation(conn: &Connection, lagrangian: &CoeffExpr) -> Result<Vec<CoeffExpr>> {
    let jets = lagrangian.jets();
    (1..=conn.dim())
        .map(|k| {
            let mut e = CoeffExpr::zero(lagrangian.mode());
            for jet in &jets {
                let Some(sym) = jet.sym() else { continue };
                if sym.name() != "A" || sym.index() != Some(k) {
                    continue;
                }
                let term = lagrangian.partial_wrt(jet)?.derive_many(jet.derivs());
                let sign = if jet.derivs().len() % 2 == 0 { 1 } else { -1 };
                e = &e + &term.scale(&Scalar::from_int(sign));
            }
            Ok(e)
        })
        .collect()
}

/// The three field-equation structures for index `k`:
/// `Σ ∂_m∂_i∂_iF_mk`, `∂_k Σ ∂_i∂_mF_im` and `Σ ∂_iF_ik`.
pub fn field_equation_terms(conn: &Connection, k: usize) -> [CoeffExpr; 3] {
    let n = conn.dim();
    let zero = CoeffExpr::zero(conn.mode());
    let (mut t1, mut t2, mut t3) = (zero.clone(), zero.clone(), zero);
    for i in 1..=n {
        for m in 1..=n {
            t1 = &t1 + &abelian_field_strength(conn, m, k).derive_many(&[m, i, i]);
            t2 = &t2 + &abelian_field_strength(conn, i, m).derive_many(&[k, i, m]);
        }
        t3 = &t3 + &abelian_field_strength(conn, i, k).derive(i);
    }
    [t1, t2, t3]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEquationShape {
    /// `E_k = α T1 + β T2 + γ μ T3` with `T2 ≡ 0`, so `β` is reported as 0.
    pub alpha: Scalar,
    pub gamma: Scalar,
}

/// Fits each `E_k` to `α T1 + γ μ T3` with the same `α`, `γ` for all `k`.
pub fn field_equation_shape(conn: &Connection, e: &[CoeffExpr]) -> Option<FieldEquationShape> {
    let mu = Jet::symbol(PairingConfig::mu_symbol());
    let mut found: Option<FieldEquationShape> = None;
    for (idx, ek) in e.iter().enumerate() {
        let [t1, _, t3] = field_equation_terms(conn, idx + 1);
        let mu_part = ek.partial_wrt(&mu).ok()?;
        let plain = ek - &(&CoeffExpr::jet(ek.mode(), mu.clone()) * &mu_part);
        let a = fit(&plain, &[&t1])?;
        let g = fit(&mu_part, &[&t3])?;
        let shape = FieldEquationShape { alpha: a[0].clone(), gamma: g[0].clone() };
        match &found {
            Some(s) if *s != shape => return None,
            _ => found = Some(shape),
        }
    }
    found
}

/// Substitutes `∂_1A_1 = −Σ_{i≥2} ∂_iA_i` into every jet of `A_1` carrying a `∂_1`.
pub fn lorenz_reduce(conn: &Connection, e: &CoeffExpr) -> Result<CoeffExpr> {
    let n = conn.dim();
    e.substitute(|jet| {
        let sym = jet.sym()?;
        if sym.name() != "A" || sym.index() != Some(1) {
            return None;
        }
        let pos = jet.derivs().iter().position(|&d| d == 1)?;
        let mut out = CoeffExpr::zero(e.mode());
        for i in 2..=n {
            let mut derivs = jet.derivs().to_vec();
            derivs[pos] = i;
            out = &out - &potential_jet(conn, i, &derivs);
        }
        Some(out)
    })
}

/// `Δ^p A_k`.
pub fn laplacian_power(conn: &Connection, k: usize, p: usize) -> CoeffExpr {
    let n = conn.dim();
    let mut out = potential_jet(conn, k, &[]);
    for _ in 0..p {
        out = (1..=n).fold(CoeffExpr::zero(conn.mode()), |acc, i| &acc + &out.derive_many(&[i, i]));
    }
    out
}
