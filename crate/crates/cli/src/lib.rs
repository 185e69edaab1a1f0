//! Expression language, canonical printing and randomized identity checks.

pub mod ast;
pub mod eval;
pub mod parser;
pub mod verify;

pub use ast::Expr;
pub use eval::{evaluate, Context, EvalError, Value};
pub use parser::{parse, ParseError};
