//! Plain (non-dual) quaternion matrices and their complex adjoint image:
//! the 2x2-block complex expansion, Hermitian eigendecompositions and SVD
//! recovered through the symplectic pairing of complex eigenvectors.

use num_complex::Complex64;

use crate::cmat::CMat;
use crate::dual::Quaternion;

type C = Complex64;

/// Dense row-major quaternion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Quaternion>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows);
        let mut out = QMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..o.cols {
                    out[(i, j)] = out[(i, j)] + a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn adjoint(&self) -> QMat {
        let mut out = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, a: f64) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q.scale(a)).collect(),
        }
    }

    /// Right-multiply each column entry by a real diagonal.
    pub fn mul_diag(&self, d: &[f64]) -> QMat {
        assert_eq!(d.len(), self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = out[(i, j)].scale(d[j]);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Quaternion]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn matvec(&self, x: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Quaternion::ZERO;
                for j in 0..self.cols {
                    acc = acc + self[(i, j)] * x[j];
                }
                acc
            })
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.sub(&self.adjoint()).max_abs() <= tol
    }

    /// Complex adjoint image: each quaternion entry `u + v j` becomes the
    /// 2x2 complex block `[[u, v], [-conj(v), conj(u)]]`, blocks laid out
    /// at interleaved positions.
    pub fn omega_expand(&self) -> CMat {
        let mut out = CMat::zeros(2 * self.rows, 2 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (u, v) = self[(i, j)].complex_parts();
                out[(2 * i, 2 * j)] = u;
                out[(2 * i, 2 * j + 1)] = v;
                out[(2 * i + 1, 2 * j)] = -v.conj();
                out[(2 * i + 1, 2 * j + 1)] = u.conj();
            }
        }
        out
    }

    /// Inverse of `omega_expand` for matrices in its image; reads the
    /// `(u, v)` corner of each 2x2 block.
    pub fn from_omega(cm: &CMat) -> QMat {
        assert!(cm.rows % 2 == 0 && cm.cols % 2 == 0);
        let rows = cm.rows / 2;
        let cols = cm.cols / 2;
        let mut out = QMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] =
                    Quaternion::from_complex_parts(cm[(2 * i, 2 * j)], cm[(2 * i, 2 * j + 1)]);
            }
        }
        out
    }

    /// Eigendecomposition of a Hermitian quaternion matrix: real
    /// eigenvalues in descending order with a unitary quaternion
    /// eigenvector matrix. Works through the complex adjoint image, whose
    /// eigenvalues come in symplectic pairs.
    pub fn herm_eig(&self) -> (Vec<f64>, QMat) {
        assert_eq!(self.rows, self.cols);
        let m = self.rows;
        let (evals, v) = self.omega_expand().herm_eig();
        let scale = evals.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
        // group near-equal eigenvalues so paired copies stay together
        let mut groups: Vec<(usize, usize)> = Vec::new(); // [start, end)
        let mut start = 0;
        for k in 1..=evals.len() {
            if k == evals.len() || (evals[k] - evals[k - 1]).abs() > 1e-8 * scale {
                groups.push((start, k));
                start = k;
            }
        }
        let mut out_vals = Vec::with_capacity(m);
        let mut u = QMat::zeros(m, m);
        let mut col = 0;
        for (s, e) in groups {
            let count = e - s;
            debug_assert!(count % 2 == 0, "adjoint eigenvalues must pair up");
            let mean = evals[s..e].iter().sum::<f64>() / count as f64;
            let mut chosen: Vec<Vec<C>> = Vec::new();
            for k in s..e {
                if chosen.len() == count {
                    break;
                }
                let mut z = v.column(k);
                orthogonalize(&mut z, &chosen);
                let nrm = vec_norm(&z);
                if nrm < 1e-8 {
                    continue;
                }
                for zi in z.iter_mut() {
                    *zi /= C::new(nrm, 0.0);
                }
                let jz = j_partner(&z);
                chosen.push(z);
                chosen.push(jz);
            }
            debug_assert_eq!(chosen.len(), count, "symplectic extraction incomplete");
            for pair in chosen.chunks(2) {
                u.set_column(col, &quaternionize(&pair[0]));
                out_vals.push(mean);
                col += 1;
            }
        }
        (out_vals, u)
    }

    /// SVD of a quaternion matrix: `A = U S V*` with unitary quaternion
    /// `U` (m x m), `V` (n x n) and nonnegative singular values in
    /// descending order (length min(m, n)). Computed on the complex
    /// adjoint image, whose singular pairs come doubled under the
    /// symplectic partner map.
    pub fn svd(&self) -> (QMat, Vec<f64>, QMat) {
        if self.rows < self.cols {
            let (v, s, u) = self.adjoint().svd();
            return (u, s, v);
        }
        let (m, n) = (self.rows, self.cols);
        let w = self.omega_expand();
        let (_, svals, vc) = w.svd();
        let scale = svals.first().copied().unwrap_or(0.0).max(1.0);
        // group near-equal singular values so paired copies stay together
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for k in 1..=svals.len() {
            if k == svals.len() || (svals[k] - svals[k - 1]).abs() > 1e-8 * scale {
                groups.push((start, k));
                start = k;
            }
        }
        let mut sigma = Vec::with_capacity(n);
        let mut v = QMat::zeros(n, n);
        let mut u_cols: Vec<Vec<Quaternion>> = Vec::new();
        let mut col = 0;
        for (s, e) in groups {
            let count = e - s;
            debug_assert!(count % 2 == 0, "adjoint singular values must pair up");
            let mean = svals[s..e].iter().sum::<f64>() / count as f64;
            let mut chosen: Vec<Vec<C>> = Vec::new();
            for k in s..e {
                if chosen.len() == count {
                    break;
                }
                let mut z = vc.column(k);
                orthogonalize(&mut z, &chosen);
                let nrm = vec_norm(&z);
                if nrm < 1e-8 {
                    continue;
                }
                for zi in z.iter_mut() {
                    *zi /= C::new(nrm, 0.0);
                }
                let jz = j_partner(&z);
                chosen.push(z);
                chosen.push(jz);
            }
            debug_assert_eq!(chosen.len(), count, "symplectic extraction incomplete");
            for pair in chosen.chunks(2) {
                let vq = quaternionize(&pair[0]);
                if mean > 1e-12 * scale {
                    let uq: Vec<Quaternion> = self
                        .matvec(&vq)
                        .iter()
                        .map(|q| q.scale(1.0 / mean))
                        .collect();
                    u_cols.push(uq);
                }
                v.set_column(col, &vq);
                sigma.push(mean);
                col += 1;
            }
        }
        let u = complete_unitary(&u_cols, m);
        (u, sigma, v)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.cols + j]
    }
}

/// The antilinear symplectic partner of an interleaved complex column.
pub fn j_partner(z: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); z.len()];
    for i in 0..z.len() / 2 {
        out[2 * i] = -z[2 * i + 1].conj();
        out[2 * i + 1] = z[2 * i].conj();
    }
    out
}

/// Interleaved complex column of length 2m -> quaternion column of length m.
pub fn quaternionize(z: &[C]) -> Vec<Quaternion> {
    (0..z.len() / 2)
        .map(|i| Quaternion::from_complex_parts(z[2 * i], -z[2 * i + 1].conj()))
        .collect()
}

fn vec_norm(z: &[C]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn orthogonalize(z: &mut [C], basis: &[Vec<C>]) {
    // two classical Gram-Schmidt passes for stability
    for _ in 0..2 {
        for b in basis {
            let mut dot = C::new(0.0, 0.0);
            for (zi, bi) in z.iter().zip(b) {
                dot += bi.conj() * zi;
            }
            for (zi, bi) in z.iter_mut().zip(b) {
                *zi -= bi * dot;
            }
        }
    }
}

/// Extend a quaternion-orthonormal column set to a full unitary basis by
/// Gram-Schmidt over the standard basis, picking the candidate with the
/// largest residual each round.
pub fn complete_unitary(cols: &[Vec<Quaternion>], m: usize) -> QMat {
    let mut basis: Vec<Vec<Quaternion>> = cols.to_vec();
    while basis.len() < m {
        let mut best: Option<(f64, Vec<Quaternion>)> = None;
        for k in 0..m {
            let mut cand = vec![Quaternion::ZERO; m];
            cand[k] = Quaternion::ONE;
            q_orthogonalize(&mut cand, &basis);
            let nrm = q_vec_norm(&cand);
            if best.as_ref().map_or(true, |(n, _)| nrm > *n) {
                best = Some((nrm, cand));
            }
        }
        let (nrm, mut cand) = best.unwrap();
        assert!(nrm > 1e-8, "unitary completion degenerate");
        for q in cand.iter_mut() {
            *q = q.scale(1.0 / nrm);
        }
        basis.push(cand);
    }
    let mut u = QMat::zeros(m, m);
    for (j, col) in basis.iter().enumerate() {
        u.set_column(j, col);
    }
    u
}

fn q_vec_norm(v: &[Quaternion]) -> f64 {
    v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

fn q_orthogonalize(v: &mut [Quaternion], basis: &[Vec<Quaternion>]) {
    for _ in 0..2 {
        for b in basis {
            let mut dot = Quaternion::ZERO;
            for (vi, bi) in v.iter().zip(b) {
                dot = dot + bi.conj() * *vi;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = *vi - *bi * dot;
            }
        }
    }
}
