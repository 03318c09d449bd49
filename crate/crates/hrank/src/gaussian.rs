use std::fmt;

use crate::int::Int;

/// Exact Gaussian integer `re + im*i`.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: Int,
    pub im: Int,
}

impl GaussianInt {
    pub fn new(re: impl Into<Int>, im: impl Into<Int>) -> GaussianInt {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> GaussianInt {
        GaussianInt { re: Int::zero(), im: Int::zero() }
    }

    pub fn one() -> GaussianInt {
        GaussianInt { re: Int::one(), im: Int::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> GaussianInt {
        GaussianInt { re: Int::zero(), im: Int::one() }
    }

    pub fn from_real(re: impl Into<Int>) -> GaussianInt {
        GaussianInt { re: re.into(), im: Int::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> GaussianInt {
        GaussianInt { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> GaussianInt {
        GaussianInt { re: self.re.neg(), im: self.im.neg() }
    }

    /// Field norm `re^2 + im^2`.
    pub fn norm(&self) -> Int {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn add(&self, other: &GaussianInt) -> GaussianInt {
        GaussianInt { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &GaussianInt) -> GaussianInt {
        GaussianInt { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &GaussianInt) -> GaussianInt {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        GaussianInt { re, im }
    }

    /// Division that must be exact in the Gaussian integers.
    pub fn exact_div(&self, other: &GaussianInt) -> GaussianInt {
        let n = other.norm();
        let t = self.mul(&other.conj());
        GaussianInt { re: t.re.exact_div(&n), im: t.im.exact_div(&n) }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense row-major matrix over the Gaussian integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianInt>,
}

impl GaussianIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> GaussianIntMatrix {
        GaussianIntMatrix { rows, cols, data: vec![GaussianInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> GaussianIntMatrix {
        let mut m = GaussianIntMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, GaussianInt::one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianInt,
    ) -> GaussianIntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        GaussianIntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_hermitian(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if *self.get(r, c) != self.get(c, r).conj() {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> GaussianInt {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut t = GaussianInt::zero();
        for k in 0..self.rows {
            t = t.add(self.get(k, k));
        }
        t
    }

    pub fn mul(&self, other: &GaussianIntMatrix) -> GaussianIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = GaussianIntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// Entrywise multiplication by a scalar.
    pub fn scale(&self, v: &GaussianInt) -> GaussianIntMatrix {
        let mut out = self.clone();
        for entry in &mut out.data {
            *entry = entry.mul(v);
        }
        out
    }

    /// Adds `v` to every diagonal entry.
    pub fn add_diag(&self, v: &GaussianInt) -> GaussianIntMatrix {
        assert_eq!(self.rows, self.cols, "diagonal shift of a non-square matrix");
        let mut out = self.clone();
        for k in 0..self.rows {
            let cur = out.get(k, k).add(v);
            out.set(k, k, cur);
        }
        out
    }
}

/// Monic characteristic polynomial with exact integer coefficients.
///
/// `coeffs[i]` is the coefficient of `lambda^(n-i)`, so `coeffs[0] == 1` and
/// the vector has length `n + 1` for an `n x n` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    pub coeffs: Vec<Int>,
}

impl CharPoly {
    /// Matrix dimension the polynomial came from.
    pub fn matrix_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `i` with a nonzero coefficient; for a diagonalizable matrix
    /// this equals the rank.
    pub fn last_nonzero_index(&self) -> usize {
        (0..self.coeffs.len())
            .rev()
            .find(|&i| !self.coeffs[i].is_zero())
            .expect("leading coefficient is 1")
    }

    /// Coefficients rendered as decimal strings, safe for any magnitude.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}
