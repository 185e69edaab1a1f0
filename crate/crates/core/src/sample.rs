//! Seeded random inputs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coeff::{CoeffExpr, Jet, Mode, Monomial, Symbol};
use crate::forms::{Form, FormGenerator, Item};
use crate::grade::Z3;
use crate::grassmann::GrassElement;
use crate::matrix::GradedMatrix;
use crate::scalar::Scalar;

/// `a + bj` with small numerators and denominators.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let a = Scalar::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let b = Scalar::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    &a + &(&b * &Scalar::j())
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn matrix<R: Rng>(rng: &mut R) -> GradedMatrix {
    GradedMatrix::new(std::array::from_fn(|_| std::array::from_fn(|_| scalar(rng))))
}

pub fn homogeneous_matrix<R: Rng>(rng: &mut R) -> GradedMatrix {
    matrix(rng).part(Z3::new(rng.gen_range(0..3)))
}

pub fn grass<R: Rng>(rng: &mut R, n: usize) -> GrassElement {
    let mut out = GrassElement::scalar(n, scalar(rng));
    for _ in 0..rng.gen_range(1..=3) {
        let mut word = GrassElement::scalar(n, nonzero_scalar(rng));
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(1..=n);
            let g = if rng.gen_bool(0.5) { GrassElement::theta(n, i) } else { GrassElement::bar(n, i) };
            word = word.multiply(&g.expect("index in range")).expect("same n");
        }
        out = out.add(&word).expect("same n");
    }
    out
}

const NAMES: [&str; 3] = ["f", "g", "h"];

/// A jet of `f`, `g`, `h` (or a coordinate) with at most two derivatives.
pub fn jet<R: Rng>(rng: &mut R, n: usize) -> Jet {
    if rng.gen_ratio(1, 6) {
        return Jet::coord(rng.gen_range(1..=n));
    }
    let sym = Symbol::new(NAMES.choose(rng).expect("nonempty"));
    let derivs = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..=n)).collect();
    Jet::with_derivs(sym, derivs)
}

pub fn monomial<R: Rng>(rng: &mut R, mode: Mode, n: usize) -> Monomial {
    Monomial::from_jets((0..rng.gen_range(1..=2)).map(|_| jet(rng, n)).collect(), mode)
}

pub fn coeff<R: Rng>(rng: &mut R, mode: Mode, n: usize) -> CoeffExpr {
    (0..rng.gen_range(1..=2)).fold(CoeffExpr::zero(mode), |acc, _| {
        &acc + &CoeffExpr::term(mode, monomial(rng, mode, n), nonzero_scalar(rng))
    })
}

fn generator<R: Rng>(rng: &mut R, n: usize, budget: u8) -> FormGenerator {
    let i = rng.gen_range(1..=n);
    if budget >= 2 && rng.gen_ratio(1, 3) {
        FormGenerator::Ddx(i)
    } else {
        FormGenerator::Dx(i)
    }
}

/// A raw word of d-degree `degree`, coefficients interleaved at random.
pub fn word<R: Rng>(rng: &mut R, mode: Mode, n: usize, degree: u8, end_in_generator: bool) -> Vec<Item> {
    let mut items = Vec::new();
    let mut left = degree;
    while left > 0 {
        if rng.gen_bool(0.5) {
            items.push(Item::Coef(monomial(rng, mode, n)));
        }
        let g = generator(rng, n, left);
        left -= g.degree();
        items.push(Item::Gen(g));
    }
    if !end_in_generator && rng.gen_bool(0.3) {
        items.push(Item::Coef(monomial(rng, mode, n)));
    }
    items
}

/// A sum of up to three words of d-degree at most `max_degree`.
pub fn form<R: Rng>(rng: &mut R, mode: Mode, n: usize, max_degree: u8, end_in_generator: bool) -> Form {
    (0..rng.gen_range(1..=3)).fold(Form::zero(n, mode), |acc, _| {
        let d = rng.gen_range(0..=max_degree);
        let end = end_in_generator && d > 0;
        let w = Form::from_items(n, mode, word(rng, mode, n, d, end)).expect("index in range");
        &acc + &w.scale(&nonzero_scalar(rng))
    })
}

/// A sum of degree-3 words.
pub fn top_form<R: Rng>(rng: &mut R, mode: Mode, n: usize) -> Form {
    (0..rng.gen_range(1..=3)).fold(Form::zero(n, mode), |acc, _| {
        let w = Form::from_items(n, mode, word(rng, mode, n, 3, false)).expect("index in range");
        &acc + &w.scale(&nonzero_scalar(rng))
    })
}
