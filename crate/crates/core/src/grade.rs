//! Z₃ grades.

use std::fmt;
use std::ops::Add;

/// An element of Z₃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z3(u8);

impl Z3 {
    pub const ZERO: Z3 = Z3(0);
    pub const ONE: Z3 = Z3(1);
    pub const TWO: Z3 = Z3(2);

    pub fn new(v: i64) -> Self {
        Z3(v.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Add for Z3 {
    type Output = Z3;
    fn add(self, rhs: Z3) -> Z3 {
        Z3((self.0 + rhs.0) % 3)
    }
}

impl fmt::Display for Z3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Grade of a possibly inhomogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grade {
    Homogeneous(Z3),
    Mixed,
}

impl Grade {
    /// Folds the grades of individual terms; an empty sequence is grade 0.
    pub fn common<I: IntoIterator<Item = Z3>>(grades: I) -> Grade {
        let mut it = grades.into_iter();
        let Some(first) = it.next() else {
            return Grade::Homogeneous(Z3::ZERO);
        };
        if it.all(|g| g == first) {
            Grade::Homogeneous(first)
        } else {
            Grade::Mixed
        }
    }

    pub fn homogeneous(self) -> Option<Z3> {
        match self {
            Grade::Homogeneous(g) => Some(g),
            Grade::Mixed => None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Homogeneous(g) => write!(f, "{g}"),
            Grade::Mixed => f.write_str("mixed"),
        }
    }
}
