//! Fixed-size dense complex linear algebra.
//!
//! Everything is sized at compile time (`N = 9` for the atom-photon space,
//! `N = 4` for the photon subspace), so no heap allocation is involved.

use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use num_traits::Float;

use crate::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// `e^{iθ}`
pub fn cis(theta: f64) -> C64 {
    C64::new(Float::cos(theta), Float::sin(theta))
}

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>(pub [[C64; N]; N]);

pub type Matrix4 = Matrix<4>;
pub type Matrix9 = Matrix<9>;

impl<const N: usize> Matrix<N> {
    pub const fn zeros() -> Self {
        Matrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_diagonal(d: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[j][i] = self.0[i][j].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn mul_vec(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// `mⁿ` by repeated squaring; `m⁰ = I`.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Self::identity();
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            n >>= 1;
        }
        result
    }

    pub fn column(&self, j: usize) -> [C64; N] {
        let mut c = [ZERO; N];
        for i in 0..N {
            c[i] = self.0[i][j];
        }
        c
    }

    pub fn column_norm_sqr(&self, j: usize) -> f64 {
        (0..N).map(|i| self.0[i][j].norm_sqr()).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference `max |a_ij − b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Exact element-wise Hermiticity check (no tolerance).
    pub fn is_hermitian(&self) -> bool {
        (0..N).all(|i| (i..N).all(|j| self.0[i][j] == self.0[j][i].conj()))
    }
}

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Matrix<N>) -> Matrix<N> {
        let mut m = Matrix::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

/// Kronecker product of two 2×2 matrices, `a ⊗ b`.
pub fn kron2(a: &Matrix<2>, b: &Matrix<2>) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

pub fn norm_sqr<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

/// `⟨u|v⟩`
pub fn inner<const N: usize>(u: &[C64; N], v: &[C64; N]) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns real eigenvalues (ascending) and the unitary whose columns are the
/// matching eigenvectors, so that `a = V·diag(E)·V†`.
pub fn hermitian_eigen<const N: usize>(a: &Matrix<N>) -> Result<([f64; N], Matrix<N>)> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let mut m = *a;
    let mut v = Matrix::<N>::identity();
    let scale = a.0.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>();
    let tol = f64::EPSILON * f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let off = |m: &Matrix<N>| -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in (i + 1)..N {
                s += m.0[i][j].norm_sqr();
            }
        }
        s
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off(&m) <= tol {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = m.0[p][q];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                // phase that makes the (p,q) element real and positive
                let phase = apq / b;
                let app = m.0[p][p].re;
                let aqq = m.0[q][q].re;
                let theta = (aqq - app) / (2.0 * b);
                let t = if theta >= 0.0 {
                    1.0 / (theta + Float::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + Float::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / Float::sqrt(1.0 + t * t);
                let s = t * c;
                // J = D·R with D = diag(.., e^{-iφ} at q, ..)
                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                for k in 0..N {
                    let akp = m.0[k][p];
                    let akq = m.0[k][q];
                    m.0[k][p] = akp * jpp + akq * jqp;
                    m.0[k][q] = akp * jpq + akq * jqq;
                }
                for k in 0..N {
                    let apk = m.0[p][k];
                    let aqk = m.0[q][k];
                    m.0[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
                    m.0[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                m.0[p][q] = ZERO;
                m.0[q][p] = ZERO;
                m.0[p][p] = C64::new(m.0[p][p].re, 0.0);
                m.0[q][q] = C64::new(m.0[q][q].re, 0.0);

                for k in 0..N {
                    let vkp = v.0[k][p];
                    let vkq = v.0[k][q];
                    v.0[k][p] = vkp * jpp + vkq * jqp;
                    v.0[k][q] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if !converged && off(&m) > tol {
        return Err(Error::NoConvergence);
    }

    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| m.0[i][i].re.total_cmp(&m.0[j][j].re));
    let mut values = [0.0; N];
    let mut vectors = Matrix::<N>::zeros();
    for (new, &old) in order.iter().enumerate() {
        values[new] = m.0[old][old].re;
        for k in 0..N {
            vectors.0[k][new] = v.0[k][old];
        }
    }
    Ok((values, vectors))
}
