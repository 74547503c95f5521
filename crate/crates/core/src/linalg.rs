//! Small dense complex linear algebra: a row-major matrix, a Hermitian
//! eigensolver, the matrix exponential and a matrix-free `exp(A)v`.

use std::ops::{Index, IndexMut};

use crate::{Error, Result, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &CMatrix) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[l * other.cols..(l + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        self.data.chunks(self.cols).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Leading `n × n` block.
    pub fn top_left(&self, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| self[(i, j)])
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Householder reduction to a Hermitian tridiagonal form, a diagonal phase
/// that makes it real symmetric, then implicit QL with eigenvectors.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen> {
    let n = a.rows;
    if n != a.cols {
        return Err(Error::domain("eigensolver needs a square matrix"));
    }
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    for j in 0..n.saturating_sub(2) {
        let xnorm = (j + 1..n).map(|i| h[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(j + 1, j)];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v = vec![ZERO; n];
        v[j + 1] = x0 - alpha;
        for i in j + 2..n {
            v[i] = h[(i, j)];
        }
        let vn = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vn;
        }
        // H ← (I − 2vv*) H (I − 2vv*) = H − v w* − w v*
        let p: Vec<C64> = (0..n).map(|i| (j + 1..n).map(|l| h[(i, l)] * v[l]).sum()).collect();
        let c: C64 = (j + 1..n).map(|i| v[i].conj() * p[i]).sum();
        let w: Vec<C64> = (0..n).map(|i| 2.0 * (p[i] - c.re * v[i])).collect();
        for r in 0..n {
            for s in 0..n {
                h[(r, s)] -= v[r] * w[s].conj() + w[r] * v[s].conj();
            }
        }
        // Q ← Q (I − 2vv*)
        for r in 0..n {
            let qv: C64 = (j + 1..n).map(|l| q[(r, l)] * v[l]).sum();
            for s in j + 1..n {
                q[(r, s)] -= 2.0 * qv * v[s].conj();
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phase = vec![ONE; n];
    for i in 1..n {
        let sub = h[(i, i - 1)];
        e[i] = sub.norm();
        phase[i] = if e[i] == 0.0 { phase[i - 1] } else { phase[i - 1] * sub / e[i] };
    }
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z)?;
    // eigenvectors of the original matrix: Q · diag(phase) · Z
    let mut vectors = CMatrix::zeros(n, n);
    for r in 0..n {
        for l in 0..n {
            let qp = q[(r, l)] * phase[l];
            if qp == ZERO {
                continue;
            }
            for s in 0..n {
                vectors[(r, s)] += qp * z[l][s];
            }
        }
    }
    Ok(HermitianEigen { values: d, vectors })
}

/// Symmetric tridiagonal QL with implicit shifts; `e[i]` couples `i−1` and
/// `i`. On return `d` is sorted ascending and `z` holds eigenvectors in
/// its columns.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::SeriesNonConvergence { max_terms: 60 });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in z.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // selection sort, swapping eigenvector columns along
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in z.iter_mut() {
                row.swap(i, k);
            }
        }
    }
    Ok(())
}

/// `exp(A)` by scaling and squaring with a Taylor polynomial.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.rows;
    let norm = a.norm1();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale(C64::new(0.5f64.powi(squarings as i32), 0.0));
    let mut result = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for j in 1..=24 {
        term = term.matmul(&scaled).scale(C64::new(1.0 / j as f64, 0.0));
        result = result.add(&term);
        if term.norm1() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// `exp(A)v` for an operator given by its action, using Taylor steps of
/// size `1/s` where `s` makes `norm_bound / s ≤ 1/2`.
pub fn expmv(apply: impl Fn(&[C64]) -> Vec<C64>, v: &[C64], norm_bound: f64) -> Vec<C64> {
    let steps = ((2.0 * norm_bound).ceil() as usize).max(1);
    let inv = 1.0 / steps as f64;
    let mut out = v.to_vec();
    for _ in 0..steps {
        let vnorm = out.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let mut term = out.clone();
        let mut acc = out.clone();
        for j in 1..=60 {
            term = apply(&term).into_iter().map(|c| c * (inv / j as f64)).collect();
            let tn = term.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
            if tn <= 1e-17 * vnorm {
                break;
            }
        }
        out = acc;
    }
    out
}
