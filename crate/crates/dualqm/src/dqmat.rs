//! Dual quaternion matrices, their dual-complex adjoint image, the
//! structured 2x2-block subring that image lives in, quasi-determinants,
//! right-eigenpair verification and a block-elimination linear solver.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dcmat::DCMatrix;
use crate::dual::{DualComplex, DualQuaternion, DualReal, Quaternion, TAU_ZERO};
use crate::error::{Error, Result};
use crate::qmat::QMat;

type C = Complex64;

/// Dense row-major dual quaternion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DQMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<DualQuaternion>,
}

#[derive(Serialize, Deserialize)]
struct DQMatrixRepr {
    rows: usize,
    cols: usize,
    scalar: String,
    entries: Vec<DualQuaternion>,
}

impl Serialize for DQMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DQMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            scalar: "dq".into(),
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DQMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DQMatrixRepr::deserialize(d)?;
        if r.scalar != "dq" {
            return Err(D::Error::custom(format!(
                "expected scalar kind \"dq\", found {:?}",
                r.scalar
            )));
        }
        DQMatrix::new(r.rows, r.cols, r.entries)
            .map_err(|e| D::Error::custom(format!("invalid matrix: {e}")))
    }
}

impl DQMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<DualQuaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(DQMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DQMatrix {
            rows,
            cols,
            entries: vec![DualQuaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DQMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = DualQuaternion::ONE;
        }
        m
    }

    pub fn from_parts(st: &QMat, inf: &QMat) -> Self {
        assert_eq!((st.rows, st.cols), (inf.rows, inf.cols));
        DQMatrix {
            rows: st.rows,
            cols: st.cols,
            entries: st
                .data
                .iter()
                .zip(&inf.data)
                .map(|(&s, &i)| DualQuaternion::new(s, i))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> DualQuaternion {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: DualQuaternion) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[DualQuaternion] {
        &self.entries
    }

    pub fn st(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|e| e.st).collect(),
        }
    }

    pub fn inf(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|e| e.inf).collect(),
        }
    }

    pub fn add(&self, o: &DQMatrix) -> DQMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DQMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &DQMatrix) -> DQMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DQMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, o: &DQMatrix) -> DQMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = DQMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..o.cols {
                    let cur = out.entries[i * o.cols + j];
                    out.entries[i * o.cols + j] = cur + a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DQMatrix {
        let mut out = DQMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn matvec(&self, x: &[DualQuaternion]) -> Vec<DualQuaternion> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = DualQuaternion::ZERO;
                for j in 0..self.cols {
                    acc = acc + self.get(i, j) * x[j];
                }
                acc
            })
            .collect()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let d = self.sub(&self.adjoint());
        d.st().max_abs() <= tol && d.inf().max_abs() <= tol
    }

    /// Dual Frobenius norm with the same two-branch rule as the scalar
    /// magnitude: appreciable matrices get the dual square root of the
    /// summed squared magnitudes, infinitesimal ones `||A_in||_F eps`.
    pub fn frobenius(&self) -> DualReal {
        let st_norm = self.st().frobenius();
        if st_norm > TAU_ZERO {
            let mut sum = DualReal::ZERO;
            for e in &self.entries {
                sum = sum + e.abs_sqr();
            }
            let r = sum.st.sqrt();
            DualReal::new(r, sum.inf / (2.0 * r))
        } else {
            DualReal::new(0.0, self.inf().frobenius())
        }
    }

    /// Dual-complex adjoint image as a structured block matrix.
    pub fn omega(&self) -> ZBlockMatrix {
        ZBlockMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|&q| ZBlock::from_dq(q)).collect(),
        }
    }

    /// Quasi-determinant: the determinant of the dual-complex adjoint
    /// image. Real and nonnegative in both parts up to roundoff; the
    /// imaginary components are returned so callers can check them.
    pub fn qdet(&self) -> Result<DualComplex> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "qdet needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.omega().to_dcmatrix().det())
    }

    /// Quasi-determinant of `[[A, 0], [C, B]]` or `[[A, D], [0, B]]`:
    /// the product of the diagonal blocks' quasi-determinants.
    pub fn qdet_block_triangular(a: &DQMatrix, b: &DQMatrix, off: &DQMatrix, lower: bool) -> Result<DualComplex> {
        let ok = if lower {
            off.rows == b.rows && off.cols == a.cols
        } else {
            off.rows == a.rows && off.cols == b.cols
        };
        if !ok {
            return Err(Error::Shape("off-diagonal block not conformable".into()));
        }
        Ok(a.qdet()? * b.qdet()?)
    }

    /// Quasi-characteristic polynomial evaluated at a dual quaternion:
    /// `det_q[lambda I - A]`.
    pub fn q_charpoly_eval(&self, lambda: DualQuaternion) -> Result<DualComplex> {
        if !self.is_square() {
            return Err(Error::Shape("square matrix required".into()));
        }
        let mut shifted = DQMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let mut e = -self.get(i, j);
                if i == j {
                    e = e + lambda;
                }
                shifted.set(i, j, e);
            }
        }
        shifted.qdet()
    }

    /// Dual residual magnitude of `A x - x lambda` for an appreciable `x`,
    /// together with the quasi-characteristic polynomial value at `lambda`.
    /// A vanishing residual implies a vanishing polynomial value when
    /// `lambda` is dual real (central); for noncentral `lambda` only the
    /// residual is a certificate.
    pub fn verify_right_eigenpair(
        &self,
        lambda: DualQuaternion,
        x: &[DualQuaternion],
    ) -> Result<(DualReal, DualComplex)> {
        if !self.is_square() {
            return Err(Error::Shape("square matrix required".into()));
        }
        assert_eq!(x.len(), self.rows);
        let x_st_norm = x.iter().map(|e| e.st.norm_sqr()).sum::<f64>().sqrt();
        if x_st_norm <= TAU_ZERO {
            return Err(Error::NotAppreciable);
        }
        let ax = self.matvec(x);
        let r: Vec<DualQuaternion> = ax
            .iter()
            .zip(x)
            .map(|(&a, &xi)| a - xi * lambda)
            .collect();
        Ok((dq_vec_fnorm(&r), self.q_charpoly_eval(lambda)?))
    }

    /// Solve `A X = B` at the dual quaternion level through block
    /// elimination on the adjoint image.
    pub fn solve(&self, b: &DQMatrix, rule: PivotRule) -> Result<DQMatrix> {
        Ok(solve_zblock(&self.omega(), &b.omega(), rule)?.to_dqmatrix())
    }

    /// Inverse through block elimination on the adjoint image; fails when
    /// the standard part is singular.
    pub fn inverse(&self) -> Result<DQMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("square matrix required".into()));
        }
        let a = self.omega();
        let rhs = DQMatrix::identity(self.rows).omega();
        let x = solve_zblock(&a, &rhs, PivotRule::MaxDet)?;
        Ok(x.to_dqmatrix())
    }
}

/// Dual Frobenius magnitude of a dual quaternion vector.
pub fn dq_vec_fnorm(v: &[DualQuaternion]) -> DualReal {
    let st_norm_sqr: f64 = v.iter().map(|e| e.st.norm_sqr()).sum();
    if st_norm_sqr > TAU_ZERO * TAU_ZERO {
        let mut sum = DualReal::ZERO;
        for e in v {
            sum = sum + e.abs_sqr();
        }
        let r = sum.st.sqrt();
        DualReal::new(r, sum.inf / (2.0 * r))
    } else {
        let in_norm: f64 = v.iter().map(|e| e.inf.norm_sqr()).sum::<f64>().sqrt();
        DualReal::new(0.0, in_norm)
    }
}

/// One structured 2x2 block `[[u, v], [-conj(v), conj(u)]]` over dual
/// complex numbers: the image of a single dual quaternion under the
/// adjoint map. Closure of the ring operations is carried by this type.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZBlock {
    pub u: DualComplex,
    pub v: DualComplex,
}

impl ZBlock {
    pub const ZERO: ZBlock = ZBlock {
        u: DualComplex::ZERO,
        v: DualComplex::ZERO,
    };

    pub const ONE: ZBlock = ZBlock {
        u: DualComplex::ONE,
        v: DualComplex::ZERO,
    };

    pub fn from_dq(q: DualQuaternion) -> ZBlock {
        let (us, vs) = q.st.complex_parts();
        let (ui, vi) = q.inf.complex_parts();
        ZBlock {
            u: DualComplex::new(us, ui),
            v: DualComplex::new(vs, vi),
        }
    }

    pub fn to_dq(&self) -> DualQuaternion {
        DualQuaternion::new(
            Quaternion::from_complex_parts(self.u.st, self.v.st),
            Quaternion::from_complex_parts(self.u.inf, self.v.inf),
        )
    }

    pub fn add(&self, o: &ZBlock) -> ZBlock {
        ZBlock {
            u: self.u + o.u,
            v: self.v + o.v,
        }
    }

    pub fn sub(&self, o: &ZBlock) -> ZBlock {
        ZBlock {
            u: self.u - o.u,
            v: self.v - o.v,
        }
    }

    pub fn neg(&self) -> ZBlock {
        ZBlock {
            u: -self.u,
            v: -self.v,
        }
    }

    pub fn mul(&self, o: &ZBlock) -> ZBlock {
        ZBlock {
            u: self.u * o.u - self.v * o.v.conj(),
            v: self.u * o.v + self.v * o.u.conj(),
        }
    }

    /// Determinant of the standard 2x2 block: `u conj(u) + v conj(v)`, a
    /// dual complex with vanishing imaginary parts.
    pub fn det(&self) -> DualComplex {
        self.u * self.u.conj() + self.v * self.v.conj()
    }

    pub fn is_invertible(&self) -> bool {
        self.det().st.norm() > TAU_ZERO
    }

    pub fn inv(&self) -> Result<ZBlock> {
        Ok(ZBlock::from_dq(self.to_dq().inv()?))
    }
}

/// Matrix over the structured block subring.
#[derive(Clone, Debug, PartialEq)]
pub struct ZBlockMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<ZBlock>,
}

impl ZBlockMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZBlockMatrix {
            rows,
            cols,
            data: vec![ZBlock::ZERO; rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> ZBlock {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: ZBlock) {
        self.data[i * self.cols + j] = b;
    }

    pub fn mul(&self, o: &ZBlockMatrix) -> ZBlockMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = ZBlockMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..o.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur.add(&a.mul(&o.get(k, j))));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &ZBlockMatrix) -> ZBlockMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ZBlockMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Expand each block to its 2x2 dual complex form at interleaved
    /// positions.
    pub fn to_dcmatrix(&self) -> DCMatrix {
        let mut out = vec![DualComplex::ZERO; 4 * self.rows * self.cols];
        let cols2 = 2 * self.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let b = self.get(i, j);
                out[(2 * i) * cols2 + 2 * j] = b.u;
                out[(2 * i) * cols2 + 2 * j + 1] = b.v;
                out[(2 * i + 1) * cols2 + 2 * j] = -b.v.conj();
                out[(2 * i + 1) * cols2 + 2 * j + 1] = b.u.conj();
            }
        }
        DCMatrix::new(2 * self.rows, 2 * self.cols, out).expect("block expansion is well-shaped")
    }

    pub fn to_dqmatrix(&self) -> DQMatrix {
        DQMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|b| b.to_dq()).collect(),
        }
    }
}

/// Pivot selection for the block solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PivotRule {
    /// Row with the largest block determinant standard part.
    MaxDet,
    /// First row whose block is invertible.
    FirstInvertible,
}

/// Solve `A X = B` over the block subring by Gaussian elimination with
/// invertible-block pivoting. Every intermediate value stays inside the
/// subring by construction.
pub fn solve_zblock(a: &ZBlockMatrix, b: &ZBlockMatrix, rule: PivotRule) -> Result<ZBlockMatrix> {
    if a.rows != a.cols {
        return Err(Error::Shape("square system required".into()));
    }
    if b.rows != a.rows {
        return Err(Error::Shape("rhs row count mismatch".into()));
    }
    let n = a.rows;
    let k = b.cols;
    let mut m = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let pivot_row = match rule {
            PivotRule::MaxDet => {
                let mut best: Option<(f64, usize)> = None;
                for r in col..n {
                    let d = m.get(r, col).det().st.norm();
                    if best.map_or(true, |(bd, _)| d > bd) {
                        best = Some((d, r));
                    }
                }
                match best {
                    Some((d, r)) if d > TAU_ZERO => r,
                    _ => return Err(Error::NotInvertible),
                }
            }
            PivotRule::FirstInvertible => (col..n)
                .find(|&r| m.get(r, col).is_invertible())
                .ok_or(Error::NotInvertible)?,
        };
        if pivot_row != col {
            for j in 0..n {
                let t = m.get(col, j);
                m.set(col, j, m.get(pivot_row, j));
                m.set(pivot_row, j, t);
            }
            for j in 0..k {
                let t = rhs.get(col, j);
                rhs.set(col, j, rhs.get(pivot_row, j));
                rhs.set(pivot_row, j, t);
            }
        }
        let pinv = m.get(col, col).inv()?;
        for r in col + 1..n {
            let factor = m.get(r, col).mul(&pinv);
            for j in col..n {
                let val = m.get(r, j).sub(&factor.mul(&m.get(col, j)));
                m.set(r, j, val);
            }
            for j in 0..k {
                let val = rhs.get(r, j).sub(&factor.mul(&rhs.get(col, j)));
                rhs.set(r, j, val);
            }
        }
    }
    // back substitution
    let mut x = ZBlockMatrix::zeros(n, k);
    for col in (0..n).rev() {
        let pinv = m.get(col, col).inv()?;
        for j in 0..k {
            let mut acc = rhs.get(col, j);
            for l in col + 1..n {
                acc = acc.sub(&m.get(col, l).mul(&x.get(l, j)));
            }
            x.set(col, j, pinv.mul(&acc));
        }
    }
    Ok(x)
}

/// `f64` imaginary leakage of a quasi-determinant, for diagnostics.
pub fn qdet_imag_leak(d: DualComplex) -> f64 {
    d.st.im.abs().max(d.inf.im.abs())
}

/// Exact adjoint-image Frobenius identity at scalar level:
/// `||omega(a)||_F = sqrt(2) |a|` in both branches. Returns the two sides.
pub fn omega_fnorm_sides(a: DualQuaternion) -> (DualReal, DualReal) {
    let single = DQMatrix::new(1, 1, vec![a]).expect("1x1");
    let img = single.omega().to_dcmatrix();
    let lhs = img.frobenius();
    let rhs = a.magnitude().scale(std::f64::consts::SQRT_2);
    (lhs, rhs)
}

#[allow(unused)]
fn c(re: f64) -> C {
    C::new(re, 0.0)
}
