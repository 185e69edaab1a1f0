//! Symbolic kernel for the Z₃-graded exterior differential calculus, where the
//! differential satisfies `d³ = 0` but `d² ≠ 0`.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: exact arithmetic in ℚ(j), `j = e^{2πi/3}`;
//! * [`grassmann`]: the ternary Grassmann algebra on `θ^A`, `θ̄^A`;
//! * [`matrix`]: graded 3×3 matrices with `dB = [η, B]`;
//! * [`coeff`]: the coefficient algebra of jets with commuting partials;
//! * [`forms`]: forms over `dx^i`, `d²x^k` and the operator `d`;
//! * [`gauge`]: connections, the curvature 3-form and its components;
//! * [`action`]: conjugate forms, the pairing of 3-forms, the Lagrangian and
//!   its Euler–Lagrange equations.

pub mod action;
pub mod coeff;
pub mod error;
pub mod forms;
pub mod gauge;
pub mod grade;
pub mod grassmann;
pub mod matrix;
mod print;
pub mod sample;
pub mod scalar;

pub use action::{conjugate_form, scalar_product, ConjForm, LagrangianReport, PairingConfig};
pub use coeff::{Base, CoeffExpr, Jet, Mode, Monomial, Symbol};
pub use error::{Error, Result};
pub use forms::{ComponentTable, Degree, Form, FormGenerator, FormWord, Item};
pub use gauge::{split_deviation, Connection, MatterField, TripleTable};
pub use grade::{Grade, Z3};
pub use grassmann::{enumerate_basis, normalize_word, GeneratorWord, GrassElement, Kind, Letter};
pub use matrix::GradedMatrix;
pub use scalar::Scalar;
