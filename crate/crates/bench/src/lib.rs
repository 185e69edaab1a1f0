//! Fixed inputs for the kernel benchmarks.

use z3forms::{CoeffExpr, Form, GradedMatrix, Jet, Mode, Scalar, Symbol};

/// `Σ_k w_k dx^k` with noncommuting symbolic coefficients.
pub fn one_form(n: usize) -> Form {
    (1..=n).fold(Form::zero(n, Mode::Noncommutative), |acc, k| {
        let c = CoeffExpr::jet(Mode::Noncommutative, Jet::symbol(Symbol::indexed("w", k)));
        &acc + &(&Form::from_coeff(n, &c) * &Form::dx(n, Mode::Noncommutative, k).expect("in range"))
    })
}

/// A dense matrix with entries of every grade.
pub fn dense_matrix() -> GradedMatrix {
    let e = |a, b| Scalar::from_ints(a, b);
    GradedMatrix::new([[e(1, 2), e(-3, 1), e(0, 5)], [e(2, 0), e(1, -1), e(4, 4)], [e(-1, 3), e(7, 0), e(2, 2)]])
}
