//! Dense complex matrix kernels: LU determinant, Hermitian Jacobi
//! eigendecomposition, one-sided Jacobi SVD and minimum-norm least squares.
//!
//! Everything here is desk-scale (m up to a few dozen); simplicity and
//! determinism win over asymptotics.

use num_complex::Complex64;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let cnum = rows[0].len();
        let mut data = Vec::with_capacity(r * cnum);
        for row in rows {
            assert_eq!(row.len(), cnum);
            data.extend(row);
        }
        CMat {
            rows: r,
            cols: cnum,
            data,
        }
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        assert_eq!(self.cols, o.rows);
        let mut out = CMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, o: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, a: C) -> CMat {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= a;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant by LU with partial pivoting. Works for singular input.
    pub fn det(&self) -> C {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = c(1.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return C::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(piv, j)];
                    a[(piv, j)] = t;
                }
                det = -det;
            }
            det *= a[(k, k)];
            let inv = a[(k, k)].inv();
            for i in k + 1..n {
                let f = a[(i, k)] * inv;
                if f == C::new(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let s = a[(k, j)];
                    a[(i, j)] -= f * s;
                }
            }
        }
        det
    }

    /// Solve `self * X = B` by LU with partial pivoting.
    /// Returns None when the pivot falls below an absolute floor.
    pub fn solve(&self, b: &CMat) -> Option<CMat> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.rows, self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        let floor = 1e-300;
        for k in 0..n {
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best < floor {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(piv, j)];
                    a[(piv, j)] = t;
                }
                for j in 0..x.cols {
                    let t = x[(k, j)];
                    x[(k, j)] = x[(piv, j)];
                    x[(piv, j)] = t;
                }
            }
            let inv = a[(k, k)].inv();
            for i in k + 1..n {
                let f = a[(i, k)] * inv;
                for j in k..n {
                    let s = a[(k, j)];
                    a[(i, j)] -= f * s;
                }
                for j in 0..x.cols {
                    let s = x[(k, j)];
                    x[(i, j)] -= f * s;
                }
            }
        }
        for k in (0..n).rev() {
            let inv = a[(k, k)].inv();
            for j in 0..x.cols {
                let mut s = x[(k, j)];
                for l in k + 1..n {
                    s -= a[(k, l)] * x[(l, j)];
                }
                x[(k, j)] = s * inv;
            }
        }
        Some(x)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
    /// Returns eigenvalues descending and the matching unitary eigenvector
    /// columns.
    pub fn herm_eig(&self) -> (Vec<f64>, CMat) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        // symmetrize to kill representation noise
        for i in 0..n {
            for j in 0..n {
                let h = (a[(i, j)] + a[(j, i)].conj()) * c(0.5);
                a[(i, j)] = h;
                a[(j, i)] = h.conj();
            }
        }
        let mut v = CMat::identity(n);
        let scale = a.frobenius().max(1.0);
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= 1e-14 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq.norm() <= 1e-300 {
                        continue;
                    }
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let phase = apq / c(apq.norm());
                    let tau = (aqq - app) / (2.0 * apq.norm());
                    let t = if tau == 0.0 {
                        1.0
                    } else {
                        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let cc = 1.0 / (1.0 + t * t).sqrt();
                    let ss = t * cc;
                    // plane rotation: J[pp]=c, J[pq]=s*phase, J[qp]=-s*conj(phase), J[qq]=c
                    let jpq = c(ss) * phase;
                    let jqp = -c(ss) * phase.conj();
                    // A <- J^* A J (update columns then rows)
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * c(cc) + aiq * jqp;
                        a[(i, q)] = aip * jpq + aiq * c(cc);
                    }
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = apj * c(cc) + aqj * jqp.conj();
                        a[(q, j)] = apj * jpq.conj() + aqj * c(cc);
                    }
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c(cc) + viq * jqp;
                        v[(i, q)] = vip * jpq + viq * c(cc);
                    }
                }
            }
        }
        let mut idx: Vec<usize> = (0..n).collect();
        let evals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        idx.sort_by(|&i, &j| evals[j].total_cmp(&evals[i]));
        let sorted: Vec<f64> = idx.iter().map(|&i| evals[i]).collect();
        let mut u = CMat::zeros(n, n);
        for (jnew, &jold) in idx.iter().enumerate() {
            for i in 0..n {
                u[(i, jnew)] = v[(i, jold)];
            }
        }
        (sorted, u)
    }

    /// Thin SVD by one-sided Jacobi: `self = U diag(sigma) V^*` with
    /// U (rows x k), sigma descending (k = min(rows, cols)), V (cols x k).
    /// Columns of U for zero singular values are left as zero.
    pub fn svd(&self) -> (CMat, Vec<f64>, CMat) {
        if self.rows < self.cols {
            let (u, s, v) = self.adjoint().svd();
            return (v, s, u);
        }
        let m = self.rows;
        let n = self.cols;
        let mut g = self.clone();
        let mut v = CMat::identity(n);
        let scale = g.frobenius().max(1.0);
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let mut app = 0.0f64;
                    let mut aqq = 0.0f64;
                    let mut apq = C::new(0.0, 0.0);
                    for i in 0..m {
                        app += g[(i, p)].norm_sqr();
                        aqq += g[(i, q)].norm_sqr();
                        apq += g[(i, p)].conj() * g[(i, q)];
                    }
                    if apq.norm() <= 1e-15 * scale * scale * 1e-2
                        || apq.norm_sqr() <= 1e-30 * app * aqq
                    {
                        continue;
                    }
                    rotated = true;
                    let phase = apq / c(apq.norm());
                    let tau = (aqq - app) / (2.0 * apq.norm());
                    let t = if tau == 0.0 {
                        1.0
                    } else {
                        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let cc = 1.0 / (1.0 + t * t).sqrt();
                    let ss = t * cc;
                    let jpq = c(ss) * phase;
                    let jqp = -c(ss) * phase.conj();
                    for i in 0..m {
                        let gip = g[(i, p)];
                        let giq = g[(i, q)];
                        g[(i, p)] = gip * c(cc) + giq * jqp;
                        g[(i, q)] = gip * jpq + giq * c(cc);
                    }
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c(cc) + viq * jqp;
                        v[(i, q)] = vip * jpq + viq * c(cc);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sig: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|i| g[(i, j)].norm_sqr()).sum::<f64>().sqrt())
            .collect();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]));
        let mut u = CMat::zeros(m, n);
        let mut vv = CMat::zeros(n, n);
        let mut sorted = vec![0.0; n];
        for (jnew, &jold) in idx.iter().enumerate() {
            sorted[jnew] = sig[jold];
            if sig[jold] > 1e-14 * scale {
                for i in 0..m {
                    u[(i, jnew)] = g[(i, jold)] / c(sig[jold]);
                }
            }
            for i in 0..n {
                vv[(i, jnew)] = v[(i, jold)];
            }
        }
        sig = sorted;
        (u, sig, vv)
    }

    /// Minimum-norm least-squares solution of `self * x = b` via SVD,
    /// together with the residual norm. `rel_rank_tol` discards singular
    /// values below `rel_rank_tol * sigma_max`.
    pub fn lstsq_min_norm(&self, b: &[C], rel_rank_tol: f64) -> (Vec<C>, f64) {
        assert_eq!(b.len(), self.rows);
        let (u, sig, v) = self.svd();
        let smax = sig.first().copied().unwrap_or(0.0);
        let tol = rel_rank_tol * smax.max(1e-300);
        let k = sig.len();
        let mut x = vec![C::new(0.0, 0.0); self.cols];
        for j in 0..k {
            if sig[j] <= tol {
                continue;
            }
            let mut coef = C::new(0.0, 0.0);
            for i in 0..self.rows {
                coef += u[(i, j)].conj() * b[i];
            }
            coef /= c(sig[j]);
            for i in 0..self.cols {
                x[i] += v[(i, j)] * coef;
            }
        }
        let mut res = 0.0f64;
        for i in 0..self.rows {
            let mut r = b[i];
            for j in 0..self.cols {
                r -= self[(i, j)] * x[j];
            }
            res += r.norm_sqr();
        }
        (x, res.sqrt())
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}
