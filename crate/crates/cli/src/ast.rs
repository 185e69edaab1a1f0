//! Expression syntax tree and its printer.

use std::fmt;

/// A symbol reference: `~name`, `nameinv`, optional `[index]`, jet suffix `_,i,k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolRef {
    pub name: String,
    pub bar: bool,
    pub inverse: bool,
    pub index: Option<usize>,
    pub derivs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Coord,
    Theta,
    BarTheta,
    Dx,
    Ddx,
    Delx,
    Ddelx,
}

impl GenKind {
    pub fn keyword(self) -> &'static str {
        match self {
            GenKind::Coord => "x",
            GenKind::Theta => "th",
            GenKind::BarTheta => "bth",
            GenKind::Dx => "dx",
            GenKind::Ddx => "ddx",
            GenKind::Delx => "delx",
            GenKind::Ddelx => "ddelx",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "x" => GenKind::Coord,
            "th" => GenKind::Theta,
            "bth" => GenKind::BarTheta,
            "dx" => GenKind::Dx,
            "ddx" => GenKind::Ddx,
            "delx" => GenKind::Delx,
            "ddelx" => GenKind::Ddelx,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `p` or `p/q`, non-negative.
    Rational(u64, u64),
    /// `j` or `j^k`.
    J(u32),
    Symbol(SymbolRef),
    Gen(GenKind, usize),
    Eta,
    D(Box<Expr>),
    Conj(Box<Expr>),
    Matrix(Vec<Vec<Expr>>),
    Product(Vec<Expr>),
    /// Terms with a leading sign; `true` means subtracted.
    Sum(Vec<(bool, Expr)>),
}

impl fmt::Display for SymbolRef {
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
        if !self.derivs.is_empty() {
            f.write_str("_")?;
            for d in &self.derivs {
                write!(f, ",{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(p, 1) => write!(f, "{p}"),
            Expr::Rational(p, q) => write!(f, "{p}/{q}"),
            Expr::J(1) => f.write_str("j"),
            Expr::J(k) => write!(f, "j^{k}"),
            Expr::Symbol(s) => write!(f, "{s}"),
            Expr::Gen(k, i) => write!(f, "{}[{i}]", k.keyword()),
            Expr::Eta => f.write_str("eta"),
            Expr::D(e) => write!(f, "d({e})"),
            Expr::Conj(e) => write!(f, "conj({e})"),
            Expr::Matrix(rows) => {
                f.write_str("[")?;
                for (r, row) in rows.iter().enumerate() {
                    if r > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for (c, e) in row.iter().enumerate() {
                        if c > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{e}")?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
            Expr::Product(fs) => {
                for (i, e) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match e {
                        Expr::Sum(_) | Expr::Product(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Sum(ts) => {
                for (i, (neg, e)) in ts.iter().enumerate() {
                    match (i, neg) {
                        (0, false) => {}
                        (0, true) => f.write_str("-")?,
                        (_, false) => f.write_str(" + ")?,
                        (_, true) => f.write_str(" - ")?,
                    }
                    match e {
                        Expr::Sum(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}
