//! Z₃-graded 3×3 matrices over ℚ(j).
//!
//! Entry `(r, c)` carries grade `(c - r) mod 3`: the diagonal is grade 0, the
//! cyclic super-diagonal `(1,2),(2,3),(3,1)` grade 1 and the remaining three
//! positions grade 2. The differential is `dB = ηB - j^b Bη` on each graded
//! part, with `η` the cyclic shift (a grade-1 matrix, `η³ = 1`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grade::{Grade, Z3};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    entries: [[Scalar; 3]; 3],
}

fn entry_grade(r: usize, c: usize) -> Z3 {
    Z3::new(c as i64 - r as i64)
}

impl GradedMatrix {
    pub fn new(entries: [[Scalar; 3]; 3]) -> Self {
        GradedMatrix { entries }
    }

    pub fn zero() -> Self {
        GradedMatrix { entries: Default::default() }
    }

    pub fn identity() -> Self {
        Self::diag(Scalar::one(), Scalar::one(), Scalar::one())
    }

    pub fn diag(a: Scalar, b: Scalar, c: Scalar) -> Self {
        let mut m = Self::zero();
        m.entries[0][0] = a;
        m.entries[1][1] = b;
        m.entries[2][2] = c;
        m
    }

    /// The cyclic shift η = [[0,1,0],[0,0,1],[1,0,0]].
    pub fn eta() -> Self {
        let mut m = Self::zero();
        for r in 0..3 {
            m.entries[r][(r + 1) % 3] = Scalar::one();
        }
        m
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        GradedMatrix { entries: rows.map(|row| row.map(Scalar::from_int)) }
    }

    pub fn entries(&self) -> &[[Scalar; 3]; 3] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        GradedMatrix { entries: self.entries.clone().map(|row| row.map(|x| &x * s)) }
    }

    /// The grade-`g` block pattern of this matrix.
    pub fn part(&self, g: Z3) -> Self {
        let mut m = Self::zero();
        for r in 0..3 {
            for c in 0..3 {
                if entry_grade(r, c) == g {
                    m.entries[r][c] = self.entries[r][c].clone();
                }
            }
        }
        m
    }

    /// Block-pattern grade; the zero matrix reports grade 0.
    pub fn grade_of(&self) -> Grade {
        let mut grades = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                if !self.entries[r][c].is_zero() {
                    grades.push(entry_grade(r, c));
                }
            }
        }
        Grade::common(grades)
    }

    /// `[B, C] = BC - j^{bc} CB` for homogeneous `B`, `C`.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        let b = self.grade_of().homogeneous().ok_or(Error::MixedGrade)?;
        let c = other.grade_of().homogeneous().ok_or(Error::MixedGrade)?;
        let phase = Scalar::j_pow(b.value() as i64 * c.value() as i64);
        Ok(self * other - (other * self).scale(&phase))
    }

    /// `dB = ηB - j^b Bη`, extended linearly over the graded parts.
    pub fn eta_differential(&self) -> Self {
        let eta = Self::eta();
        [Z3::ZERO, Z3::ONE, Z3::TWO]
            .into_iter()
            .map(|g| {
                let p = self.part(g);
                &eta * &p - (&p * &eta).scale(&Scalar::j_pow(g.value() as i64))
            })
            .fold(Self::zero(), |acc, m| acc + m)
    }
}

impl Default for GradedMatrix {
    fn default() -> Self {
        Self::zero()
    }
}

impl Mul<&GradedMatrix> for &GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, rhs: &GradedMatrix) -> GradedMatrix {
        let mut out = GradedMatrix::zero();
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Scalar::zero();
                for k in 0..3 {
                    acc += &(&self.entries[r][k] * &rhs.entries[k][c]);
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }
}

impl Mul for GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, rhs: GradedMatrix) -> GradedMatrix {
        &self * &rhs
    }
}

impl Add<&GradedMatrix> for &GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, rhs: &GradedMatrix) -> GradedMatrix {
        let mut out = self.clone();
        for r in 0..3 {
            for c in 0..3 {
                out.entries[r][c] += &rhs.entries[r][c];
            }
        }
        out
    }
}

impl Add for GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, rhs: GradedMatrix) -> GradedMatrix {
        &self + &rhs
    }
}

impl Sub<&GradedMatrix> for &GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, rhs: &GradedMatrix) -> GradedMatrix {
        self + &(-rhs)
    }
}

impl Sub for GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, rhs: GradedMatrix) -> GradedMatrix {
        &self - &rhs
    }
}

impl Neg for &GradedMatrix {
    type Output = GradedMatrix;
    fn neg(self) -> GradedMatrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.entries.iter().enumerate() {
            if r > 0 {
                f.write_str(",\n ")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
