//! Evaluation of expressions to normalized values.

use std::fmt;

use thiserror::Error;
use z3forms::{
    conjugate_form, CoeffExpr, ConjForm, Form, FormGenerator, Grade, GradedMatrix, GrassElement, Item, Jet, Mode,
    Monomial, Scalar, Symbol,
};

use crate::ast::{Expr, GenKind, SymbolRef};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Kernel(#[from] z3forms::Error),
    #[error("cannot {op} {left} and {right}")]
    Kinds { op: &'static str, left: &'static str, right: &'static str },
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Scalar(Scalar),
    Grass(GrassElement),
    Matrix(GradedMatrix),
    Form(Form),
    Conj(ConjForm),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Grass(_) => "Grassmann element",
            Value::Matrix(_) => "matrix",
            Value::Form(_) => "form",
            Value::Conj(_) => "conjugate form",
        }
    }

    /// Grade and, for forms, d-degree.
    pub fn grade(&self) -> (Grade, Option<String>) {
        match self {
            Value::Scalar(_) => (Grade::Homogeneous(z3forms::Z3::ZERO), None),
            Value::Grass(g) => (g.grade(), None),
            Value::Matrix(m) => (m.grade_of(), None),
            Value::Form(f) => {
                let (g, d) = f.grade_and_degree();
                (g, Some(d.to_string()))
            }
            Value::Conj(c) => {
                let g = match c.mirror().grade() {
                    Grade::Homogeneous(z) => Grade::Homogeneous(z3forms::Z3::new(-(z.value() as i64))),
                    Grade::Mixed => Grade::Mixed,
                };
                (g, Some(c.degree().to_string()))
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Grass(g) => write!(f, "{g}"),
            Value::Matrix(m) => write!(f, "{m}"),
            Value::Form(x) => write!(f, "{x}"),
            Value::Conj(c) => write!(f, "{c}"),
        }
    }
}

/// Dimension and coefficient mode used for evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub dim: usize,
    pub mode: Mode,
}

impl Context {
    pub fn new(dim: usize) -> Self {
        Context { dim, mode: Mode::Noncommutative }
    }
}

fn symbol(s: &SymbolRef) -> Symbol {
    let mut sym = match s.index {
        Some(i) => Symbol::indexed(&s.name, i),
        None => Symbol::new(&s.name),
    };
    if s.bar {
        sym = sym.barred();
    }
    if s.inverse {
        sym = sym.inverse();
    }
    sym
}

pub fn evaluate(e: &Expr, ctx: &Context) -> Result<Value, EvalError> {
    let n = ctx.dim;
    Ok(match e {
        Expr::Rational(p, q) => {
            let (Ok(p), Ok(q)) = (i64::try_from(*p), i64::try_from(*q)) else {
                return Err(EvalError::Other(format!("literal {p}/{q} is too large")));
            };
            Value::Scalar(Scalar::from_ratio(p, q))
        }
        Expr::J(k) => Value::Scalar(Scalar::j_pow(*k as i64)),
        Expr::Symbol(s) => {
            let jet = Jet::with_derivs(symbol(s), s.derivs.clone());
            Value::Form(Form::from_coeff(n, &CoeffExpr::jet(ctx.mode, jet)))
        }
        Expr::Gen(kind, i) => match kind {
            GenKind::Coord => {
                if *i > n {
                    return Err(z3forms::Error::IndexOutOfRange { index: *i, max: n }.into());
                }
                Value::Form(Form::from_coeff(n, &CoeffExpr::coord(ctx.mode, *i)))
            }
            GenKind::Theta => Value::Grass(GrassElement::theta(n, *i)?),
            GenKind::BarTheta => Value::Grass(GrassElement::bar(n, *i)?),
            GenKind::Dx => Value::Form(Form::dx(n, ctx.mode, *i)?),
            GenKind::Ddx => Value::Form(Form::ddx(n, ctx.mode, *i)?),
            GenKind::Delx => Value::Conj(ConjForm::from_items(n, ctx.mode, vec![Item::Gen(FormGenerator::Dx(*i))])?),
            GenKind::Ddelx => Value::Conj(ConjForm::from_items(n, ctx.mode, vec![Item::Gen(FormGenerator::Ddx(*i))])?),
        },
        Expr::Eta => Value::Matrix(GradedMatrix::eta()),
        Expr::D(inner) => match evaluate(inner, ctx)? {
            Value::Scalar(_) => Value::Scalar(Scalar::zero()),
            Value::Form(f) => Value::Form(f.differential()),
            Value::Matrix(m) => Value::Matrix(m.eta_differential()),
            v => return Err(EvalError::Other(format!("d is not defined on a {}", v.kind()))),
        },
        Expr::Conj(inner) => match evaluate(inner, ctx)? {
            Value::Scalar(s) => Value::Scalar(s.conj()),
            Value::Conj(c) => Value::Form(c.conjugate()),
            Value::Form(f) => match f.as_coeff() {
                Some(c) if !f.is_zero() => Value::Form(Form::from_coeff(n, &c.conjugate())),
                _ => Value::Conj(conjugate_form(&f)?),
            },
            v => return Err(EvalError::Other(format!("conj is not defined on a {}", v.kind()))),
        },
        Expr::Matrix(rows) => {
            if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
                return Err(EvalError::Other("matrix literals must be 3×3".into()));
            }
            let mut entries: [[Scalar; 3]; 3] = Default::default();
            for (r, row) in rows.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    entries[r][c] = match evaluate(x, ctx)? {
                        Value::Scalar(s) => s,
                        v => {
                            return Err(EvalError::Other(format!(
                                "matrix entries must be scalars, found a {}",
                                v.kind()
                            )))
                        }
                    };
                }
            }
            Value::Matrix(GradedMatrix::new(entries))
        }
        Expr::Product(fs) => {
            let mut acc = evaluate(&fs[0], ctx)?;
            for f in &fs[1..] {
                acc = multiply(acc, evaluate(f, ctx)?, ctx)?;
            }
            acc
        }
        Expr::Sum(ts) => {
            let mut acc: Option<Value> = None;
            for (neg, t) in ts {
                let mut v = evaluate(t, ctx)?;
                if *neg {
                    v = multiply(Value::Scalar(Scalar::from_int(-1)), v, ctx)?;
                }
                acc = Some(match acc {
                    None => v,
                    Some(a) => add(a, v, ctx)?,
                });
            }
            acc.expect("nonempty sum")
        }
    })
}

/// A degree-0 form read as a conjugate form with the coefficient on the right.
fn coefficient_as_conj(f: &Form, ctx: &Context) -> Result<ConjForm, EvalError> {
    let c = f.as_coeff().ok_or_else(|| EvalError::Other("only coefficients can multiply a conjugate form".into()))?;
    let mut out = ConjForm::zero(ctx.dim, c.mode());
    for (m, s) in c.terms() {
        let t = ConjForm::from_items(ctx.dim, c.mode(), vec![Item::Coef(m.clone())])?;
        out = out.try_add(&t.scale(s))?;
    }
    Ok(out)
}

fn scalar_value(s: &Scalar, like: &Value, ctx: &Context) -> Result<Value, EvalError> {
    Ok(match like {
        Value::Scalar(_) => Value::Scalar(s.clone()),
        Value::Grass(g) => Value::Grass(GrassElement::scalar(g.generator_count(), s.clone())),
        Value::Matrix(_) => Value::Matrix(GradedMatrix::identity().scale(s)),
        Value::Form(f) => Value::Form(Form::from_coeff(ctx.dim, &CoeffExpr::constant(f.mode(), s.clone()))),
        Value::Conj(_) => {
            let unit = ConjForm::from_items(ctx.dim, ctx.mode, vec![Item::Coef(Monomial::unit())])?;
            Value::Conj(unit.scale(s))
        }
    })
}

pub fn multiply(a: Value, b: Value, ctx: &Context) -> Result<Value, EvalError> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
        (Value::Scalar(s), v) | (v, Value::Scalar(s)) => match v {
            Value::Grass(g) => Value::Grass(g.scale(&s)),
            Value::Matrix(m) => Value::Matrix(m.scale(&s)),
            Value::Form(f) => Value::Form(f.scale(&s)),
            Value::Conj(c) => Value::Conj(c.scale(&s)),
            Value::Scalar(_) => unreachable!(),
        },
        (Value::Grass(x), Value::Grass(y)) => Value::Grass(x.multiply(&y)?),
        (Value::Matrix(x), Value::Matrix(y)) => Value::Matrix(&x * &y),
        (Value::Form(x), Value::Form(y)) => Value::Form(x.multiply(&y)?),
        (Value::Conj(x), Value::Conj(y)) => Value::Conj(x.multiply(&y)?),
        (Value::Conj(x), Value::Form(f)) => Value::Conj(x.multiply(&coefficient_as_conj(&f, ctx)?)?),
        (Value::Form(f), Value::Conj(y)) => Value::Conj(coefficient_as_conj(&f, ctx)?.multiply(&y)?),
        (a, b) => return Err(EvalError::Kinds { op: "multiply", left: a.kind(), right: b.kind() }),
    })
}

pub fn add(a: Value, b: Value, ctx: &Context) -> Result<Value, EvalError> {
    let (a, b) = match (a, b) {
        (Value::Scalar(s), v) if !matches!(v, Value::Scalar(_)) => (scalar_value(&s, &v, ctx)?, v),
        (v, Value::Scalar(s)) if !matches!(v, Value::Scalar(_)) => {
            let s = scalar_value(&s, &v, ctx)?;
            (v, s)
        }
        p => p,
    };
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
        (Value::Grass(x), Value::Grass(y)) => Value::Grass(x.add(&y)?),
        (Value::Matrix(x), Value::Matrix(y)) => Value::Matrix(&x + &y),
        (Value::Form(x), Value::Form(y)) => Value::Form(x.try_add(&y)?),
        (Value::Conj(x), Value::Conj(y)) => Value::Conj(x.try_add(&y)?),
        (a, b) => return Err(EvalError::Kinds { op: "add", left: a.kind(), right: b.kind() }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn norm(src: &str) -> String {
        evaluate(&parse(src).unwrap(), &Context::new(4)).unwrap().to_string()
    }

    #[test]
    fn rotation_phase() {
        assert_eq!(norm("dx[2] dx[3] dx[1]"), "j^2 * dx[1] dx[2] dx[3]");
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(norm("th[1] th[2] bth[3]"), "0");
        assert_eq!(norm("dx[1] - dx[1]"), "0");
    }

    #[test]
    fn matrices_and_conjugates() {
        assert_eq!(norm("d([[1,0,0],[0,1,0],[0,0,1]])"), "[[0, 0, 0],\n [0, 0, 0],\n [0, 0, 0]]");
        assert_eq!(norm("conj(j ddx[1] dx[2])"), "j^2 * delx[2] ddelx[1]");
        assert_eq!(norm("conj(conj(j ddx[1] dx[2]))"), "j * ddx[1] dx[2]");
    }

    #[test]
    fn kind_errors() {
        assert!(evaluate(&parse("th[1] dx[1]").unwrap(), &Context::new(3)).is_err());
        assert!(evaluate(&parse("dx[5]").unwrap(), &Context::new(3)).is_err());
    }
}
