//! Dense dual complex matrices: determinants (permanent-expansion oracle and
//! production elimination path), block determinant laws, inverses, and the
//! characteristic polynomial machinery with root classification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmat::CMat;
use crate::dual::{DualComplex, DualReal, Tol, TAU_ZERO};
use crate::error::{Error, Result};
use crate::poly::CPoly;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Dense row-major dual complex matrix, immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct DCMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<DualComplex>,
}

#[derive(Serialize, Deserialize)]
struct DCMatrixRepr {
    rows: usize,
    cols: usize,
    scalar: String,
    entries: Vec<DualComplex>,
}

impl Serialize for DCMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DCMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            scalar: "dc".into(),
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DCMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DCMatrixRepr::deserialize(d)?;
        if r.scalar != "dc" {
            return Err(D::Error::custom(format!(
                "expected scalar kind \"dc\", found {:?}",
                r.scalar
            )));
        }
        DCMatrix::new(r.rows, r.cols, r.entries)
            .map_err(|e| D::Error::custom(format!("invalid matrix: {e}")))
    }
}

impl DCMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<DualComplex>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(DCMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DCMatrix {
            rows,
            cols,
            entries: vec![DualComplex::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DCMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = DualComplex::ONE;
        }
        m
    }

    pub fn from_parts(st: &CMat, inf: &CMat) -> Self {
        assert_eq!((st.rows, st.cols), (inf.rows, inf.cols));
        let entries = st
            .data
            .iter()
            .zip(&inf.data)
            .map(|(&s, &i)| DualComplex::new(s, i))
            .collect();
        DCMatrix {
            rows: st.rows,
            cols: st.cols,
            entries,
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

    pub fn get(&self, i: usize, j: usize) -> DualComplex {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[DualComplex] {
        &self.entries
    }

    /// Standard part as a plain complex matrix.
    pub fn st(&self) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|e| e.st).collect(),
        }
    }

    /// Infinitesimal part as a plain complex matrix.
    pub fn inf(&self) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|e| e.inf).collect(),
        }
    }

    pub fn add(&self, o: &DCMatrix) -> DCMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DCMatrix {
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

    pub fn sub(&self, o: &DCMatrix) -> DCMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DCMatrix {
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

    pub fn mul(&self, o: &DCMatrix) -> DCMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = DCMatrix::zeros(self.rows, o.cols);
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

    pub fn scale(&self, a: DualComplex) -> DCMatrix {
        DCMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| a * e).collect(),
        }
    }

    pub fn transpose(&self) -> DCMatrix {
        let mut out = DCMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn conj(&self) -> DCMatrix {
        DCMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> DCMatrix {
        self.conj().transpose()
    }

    pub fn matvec(&self, x: &[DualComplex]) -> Vec<DualComplex> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = DualComplex::ZERO;
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

    /// Dual Frobenius norm: the appreciable branch takes the dual square
    /// root of the summed squared magnitudes; an infinitesimal matrix gets
    /// `||A_in||_F eps`.
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

    /// Assemble `[[a, b], [c, d]]` from conformable blocks.
    pub fn from_blocks(a: &DCMatrix, b: &DCMatrix, cbl: &DCMatrix, d: &DCMatrix) -> Result<DCMatrix> {
        if a.rows != b.rows || cbl.rows != d.rows || a.cols != cbl.cols || b.cols != d.cols {
            return Err(Error::Shape("nonconformable blocks".into()));
        }
        let rows = a.rows + cbl.rows;
        let cols = a.cols + b.cols;
        let mut out = DCMatrix::zeros(rows, cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.entries[i * cols + j] = a.get(i, j);
            }
            for j in 0..b.cols {
                out.entries[i * cols + a.cols + j] = b.get(i, j);
            }
        }
        for i in 0..cbl.rows {
            for j in 0..cbl.cols {
                out.entries[(a.rows + i) * cols + j] = cbl.get(i, j);
            }
            for j in 0..d.cols {
                out.entries[(a.rows + i) * cols + a.cols + j] = d.get(i, j);
            }
        }
        Ok(out)
    }

    // -----------------------------------------------------------------
    // Determinants
    // -----------------------------------------------------------------

    /// Permutation-expansion determinant: the sum of m! signed products in
    /// dual arithmetic. Guarded oracle path.
    pub fn det_leibniz(&self) -> Result<DualComplex> {
        self.require_square()?;
        let m = self.rows;
        if m > 8 {
            return Err(Error::SizeLimit(format!(
                "permutation expansion limited to m <= 8, got {m}"
            )));
        }
        let mut perm: Vec<usize> = (0..m).collect();
        let mut acc = DualComplex::ZERO;
        permute(&mut perm, 0, &mut |p| {
            let mut term = DualComplex::ONE;
            for (i, &j) in p.iter().enumerate() {
                term = term * self.get(i, j);
            }
            if inversions(p) % 2 == 1 {
                term = -term;
            }
            acc = acc + term;
        });
        Ok(acc)
    }

    /// Production determinant: `det[A_st] + (sum_i det[A(i)]) eps` where
    /// `A(i)` replaces row i of the standard part with row i of the
    /// infinitesimal part. Valid for singular standard parts; each complex
    /// determinant runs partially pivoted elimination. The sum runs in
    /// index order so results are deterministic.
    pub fn det(&self) -> DualComplex {
        assert!(self.is_square(), "det requires a square matrix");
        let m = self.rows;
        let ast = self.st();
        let ain = self.inf();
        let st = ast.det();
        let mut inf = C::new(0.0, 0.0);
        for i in 0..m {
            let mut v = ast.clone();
            for j in 0..m {
                v[(i, j)] = ain[(i, j)];
            }
            inf += v.det();
        }
        DualComplex::new(st, inf)
    }

    /// Full minor/cofactor expansion of `det[A+B]` over all intersection
    /// orders. Exponential cost; guarded.
    pub fn det_sum_expansion(a: &DCMatrix, b: &DCMatrix) -> Result<DualComplex> {
        a.require_square()?;
        if (a.rows, a.cols) != (b.rows, b.cols) {
            return Err(Error::Shape("det_sum_expansion needs equal shapes".into()));
        }
        let m = a.rows;
        if m > 5 {
            return Err(Error::SizeLimit(format!(
                "sum expansion limited to m <= 5, got {m}"
            )));
        }
        let mut acc = a.det_leibniz()?;
        for k in 1..=m {
            for rows in combinations(m, k) {
                for cols in combinations(m, k) {
                    let minor_b = b.submatrix(&rows, &cols).det_leibniz()?;
                    let comp_rows = complement(m, &rows);
                    let comp_cols = complement(m, &cols);
                    let cof = if k == m {
                        DualComplex::ONE
                    } else {
                        a.submatrix(&comp_rows, &comp_cols).det_leibniz()?
                    };
                    let sign: i64 = rows.iter().chain(cols.iter()).map(|&i| i as i64 + 1).sum();
                    let signed = if sign % 2 == 0 { cof } else { -cof };
                    acc = acc + signed * minor_b;
                }
            }
        }
        Ok(acc)
    }

    /// Determinant of a block-triangular matrix `[[A, 0], [C, B]]` or
    /// `[[A, D], [0, B]]`: the product `det[A] det[B]`. The off-diagonal
    /// block only participates in the shape check.
    pub fn det_block_triangular(a: &DCMatrix, b: &DCMatrix, off: &DCMatrix, lower: bool) -> Result<DualComplex> {
        a.require_square()?;
        b.require_square()?;
        let ok = if lower {
            off.rows == b.rows && off.cols == a.cols
        } else {
            off.rows == a.rows && off.cols == b.cols
        };
        if !ok {
            return Err(Error::Shape("off-diagonal block not conformable".into()));
        }
        Ok(a.det() * b.det())
    }

    /// Determinant of `[[A, B], [C, D]]` with invertible `A` via the Schur
    /// complement: `det[A] det[D - C A^-1 B]`.
    pub fn schur_det(a: &DCMatrix, b: &DCMatrix, cbl: &DCMatrix, d: &DCMatrix) -> Result<DualComplex> {
        a.require_square()?;
        d.require_square()?;
        if b.rows != a.rows || b.cols != d.cols || cbl.rows != d.rows || cbl.cols != a.cols {
            return Err(Error::Shape("nonconformable blocks".into()));
        }
        let a_inv = a.inverse()?;
        let schur = d.sub(&cbl.mul(&a_inv).mul(b));
        Ok(a.det() * schur.det())
    }

    /// `A^-1 = A_st^-1 - A_st^-1 A_in A_st^-1 eps` for appreciable det.
    pub fn inverse(&self) -> Result<DCMatrix> {
        self.require_square()?;
        let ast = self.st();
        if ast.det().norm() <= TAU_ZERO {
            return Err(Error::NotInvertible);
        }
        let inv_st = ast
            .solve(&CMat::identity(self.rows))
            .ok_or(Error::NotInvertible)?;
        let inv_in = inv_st.mul(&self.inf()).mul(&inv_st).scale(c(-1.0));
        Ok(DCMatrix::from_parts(&inv_st, &inv_in))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DCMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j));
            }
        }
        DCMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Principal submatrix on the given (sorted, 0-based) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> DCMatrix {
        self.submatrix(idx, idx)
    }

    // -----------------------------------------------------------------
    // Characteristic polynomial machinery
    // -----------------------------------------------------------------

    /// Characteristic polynomial as a `(g, tau)` pair:
    /// `f_A(l_st + l_in eps) = g(l_st) + (l_in g'(l_st) + tau(l_st)) eps`.
    ///
    /// `g` is recovered by exact-degree interpolation of the complex
    /// characteristic polynomial of the standard part at the integer nodes
    /// `0..=m`; `tau` (degree <= m-1) from the infinitesimal part of
    /// `det(l I - A)` at `m` nodes.
    pub fn charpoly(&self) -> CharPoly {
        assert!(self.is_square());
        let m = self.rows;
        let ast = self.st();
        let g_nodes: Vec<f64> = (0..=m).map(|k| k as f64).collect();
        let g_vals: Vec<C> = g_nodes
            .iter()
            .map(|&x| shifted(&ast, x).det())
            .collect();
        let g = CPoly::interpolate(&g_nodes, &g_vals);

        let ain = self.inf();
        let t_nodes: Vec<f64> = (0..m).map(|k| k as f64).collect();
        let t_vals: Vec<C> = t_nodes
            .iter()
            .map(|&x| {
                let base = shifted(&ast, x);
                let mut acc = C::new(0.0, 0.0);
                for i in 0..m {
                    let mut v = base.clone();
                    for j in 0..m {
                        v[(i, j)] = -ain[(i, j)];
                    }
                    acc += v.det();
                }
                acc
            })
            .collect();
        let tau = CPoly::interpolate(&t_nodes, &t_vals);
        CharPoly { g, tau }
    }

    /// `det[A~(i, lambda)]`: the determinant of the standard-part
    /// characteristic matrix with row i (1-based) replaced by its
    /// infinitesimal counterpart carrying `lambda_in` on the diagonal.
    pub fn ai_tilde_det(&self, lambda: DualComplex, i: usize) -> Result<C> {
        self.require_square()?;
        let m = self.rows;
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange(format!("i = {i}, m = {m}")));
        }
        let i = i - 1;
        let ast = self.st();
        let ain = self.inf();
        let mut v = CMat::zeros(m, m);
        for r in 0..m {
            for j in 0..m {
                v[(r, j)] = if r == i {
                    let mut e = -ain[(r, j)];
                    if r == j {
                        e += lambda.inf;
                    }
                    e
                } else {
                    let mut e = -ast[(r, j)];
                    if r == j {
                        e += lambda.st;
                    }
                    e
                };
            }
        }
        Ok(v.det())
    }

    /// Characteristic roots classified per the simple/multiple eigenvalue
    /// dichotomy: a simple root of `g` carries a unique infinitesimal part,
    /// a multiple root is a free epsilon-family when `tau` vanishes there
    /// and admits no root otherwise.
    pub fn char_roots(&self, tol: &Tol) -> Vec<CharRoot> {
        let cp = self.charpoly();
        let gprime = cp.g.derivative();
        let roots = cp.g.roots();
        let clusters = cluster_points(&roots, tol.cluster_rel);
        let deriv_scale = tol.tau_deriv * gprime.max_coeff_norm().max(1.0);
        clusters
            .into_iter()
            .map(|(center, count)| {
                // refine the cluster center: a root of multiplicity k is a
                // simple root of g^(k-1), where Newton converges sharply
                let mut p = cp.g.clone();
                for _ in 1..count {
                    p = p.derivative();
                }
                let dp = p.derivative();
                let mut center = center;
                for _ in 0..50 {
                    let d = dp.eval(center);
                    if d.norm() < 1e-300 {
                        break;
                    }
                    let step = p.eval(center) / d;
                    center -= step;
                    if step.norm() <= 1e-15 * (1.0 + center.norm()) {
                        break;
                    }
                }
                let dg = gprime.eval(center);
                let status = if dg.norm() > deriv_scale {
                    InfStatus::Unique(-cp.tau.eval(center) / dg)
                } else if cp.tau.eval(center).norm() <= tol.tau_zero * cp.tau.max_coeff_norm().max(1.0)
                {
                    InfStatus::Free
                } else {
                    InfStatus::Nonexistent
                };
                CharRoot {
                    lambda_st: center,
                    lambda_in: status,
                }
            })
            .collect()
    }

    /// Complete `(lambda_st, x_st)` to a dual eigenpair by solving the
    /// stacked linear system in `(x_in, lambda_in)` by minimum-norm least
    /// squares.
    pub fn complete_eigenpair(&self, lambda_st: C, x_st: &[C]) -> Result<Completion> {
        self.require_square()?;
        let m = self.rows;
        assert_eq!(x_st.len(), m);
        let ast = self.st();
        let ain = self.inf();
        let xnorm = x_st.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = ast.max_abs().max(1.0) * xnorm.max(1.0);
        // precondition: x_st is a standard-part eigenvector
        let mut res0 = 0.0f64;
        for i in 0..m {
            let mut r = -lambda_st * x_st[i];
            for j in 0..m {
                r += ast[(i, j)] * x_st[j];
            }
            res0 += r.norm_sqr();
        }
        let res0 = res0.sqrt();
        if res0 > 1e-8 * scale {
            return Err(Error::NotAnEigenpair(res0));
        }
        // unknowns (x_in, lambda_in): [A_st - l_st I | -x_st] z = -A_in x_st
        let mut msys = CMat::zeros(m, m + 1);
        for i in 0..m {
            for j in 0..m {
                msys[(i, j)] = ast[(i, j)];
                if i == j {
                    msys[(i, j)] -= lambda_st;
                }
            }
            msys[(i, m)] = -x_st[i];
        }
        let rhs: Vec<C> = (0..m)
            .map(|i| {
                let mut acc = C::new(0.0, 0.0);
                for j in 0..m {
                    acc -= ain[(i, j)] * x_st[j];
                }
                acc
            })
            .collect();
        let (z, res) = msys.lstsq_min_norm(&rhs, 1e-10);
        if res > 1e-8 * scale {
            return Err(Error::NoCompletion(res));
        }
        // lambda_in is unique iff x_st is outside the range of A_st - l_st I
        let shift = {
            let mut s = ast.clone();
            for i in 0..m {
                s[(i, i)] -= lambda_st;
            }
            s
        };
        let (_, span_res) = shift.lstsq_min_norm(x_st, 1e-10);
        let lambda_in_unique = span_res > 1e-8 * xnorm.max(1e-300);
        Ok(Completion {
            lambda_in: z[m],
            x_in: z[..m].to_vec(),
            lambda_in_unique,
        })
    }

    /// Like `complete_eigenpair` but with the infinitesimal eigenvalue part
    /// fixed; fails with `NoCompletion` when the linear system for `x_in`
    /// is inconsistent.
    pub fn complete_eigenpair_fixed(&self, lambda: DualComplex, x_st: &[C]) -> Result<Vec<C>> {
        self.require_square()?;
        let m = self.rows;
        let ast = self.st();
        let ain = self.inf();
        let xnorm = x_st.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = ast.max_abs().max(1.0) * xnorm.max(1.0);
        let mut shift = ast.clone();
        for i in 0..m {
            shift[(i, i)] -= lambda.st;
        }
        let rhs: Vec<C> = (0..m)
            .map(|i| {
                let mut acc = lambda.inf * x_st[i];
                for j in 0..m {
                    acc -= ain[(i, j)] * x_st[j];
                }
                acc
            })
            .collect();
        let (x_in, res) = shift.lstsq_min_norm(&rhs, 1e-10);
        if res > 1e-8 * scale {
            return Err(Error::NoCompletion(res));
        }
        Ok(x_in)
    }

    /// Dual residual magnitude of `A x - lambda x` for an appreciable `x`.
    pub fn verify_eigenpair(&self, lambda: DualComplex, x: &[DualComplex]) -> Result<DualReal> {
        self.require_square()?;
        assert_eq!(x.len(), self.rows);
        let x_st_norm = x.iter().map(|e| e.st.norm_sqr()).sum::<f64>().sqrt();
        if x_st_norm <= TAU_ZERO {
            return Err(Error::NotAppreciable);
        }
        let ax = self.matvec(x);
        let r: Vec<DualComplex> = ax
            .iter()
            .zip(x)
            .map(|(&a, &xi)| a - lambda * xi)
            .collect();
        Ok(dual_vec_fnorm(&r))
    }
}

/// Dual Frobenius magnitude of a dual complex vector.
pub fn dual_vec_fnorm(v: &[DualComplex]) -> DualReal {
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

fn shifted(ast: &CMat, x: f64) -> CMat {
    let m = ast.rows;
    let mut v = ast.scale(c(-1.0));
    for i in 0..m {
        v[(i, i)] += c(x);
    }
    v
}

/// Characteristic polynomial of a dual complex matrix, stored as the
/// complex pair `(g, tau)`.
#[derive(Clone, Debug)]
pub struct CharPoly {
    pub g: CPoly,
    pub tau: CPoly,
}

impl CharPoly {
    /// `g(l_st) + (l_in g'(l_st) + tau(l_st)) eps`
    pub fn eval(&self, lambda: DualComplex) -> DualComplex {
        let g = self.g.eval(lambda.st);
        let dg = self.g.derivative().eval(lambda.st);
        let t = self.tau.eval(lambda.st);
        DualComplex::new(g, lambda.inf * dg + t)
    }
}

/// Infinitesimal-part status of a characteristic root candidate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InfStatus {
    /// Simple root of g: the infinitesimal part is uniquely determined.
    Unique(C),
    /// Multiple root with vanishing tau: every infinitesimal part works.
    Free,
    /// Multiple root with nonvanishing tau: no characteristic root here.
    Nonexistent,
}

/// One characteristic root candidate of a dual complex matrix.
#[derive(Clone, Copy, Debug)]
pub struct CharRoot {
    pub lambda_st: C,
    pub lambda_in: InfStatus,
}

/// Result of completing a standard eigenpair to a dual one.
#[derive(Clone, Debug)]
pub struct Completion {
    pub lambda_in: C,
    pub x_in: Vec<C>,
    pub lambda_in_unique: bool,
}

fn inversions(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

fn complement(m: usize, idx: &[usize]) -> Vec<usize> {
    (0..m).filter(|i| !idx.contains(i)).collect()
}

/// Greedy clustering of complex points under a relative distance threshold.
/// Returns cluster centroids with multiplicities.
pub fn cluster_points(points: &[C], rel: f64) -> Vec<(C, usize)> {
    let mut clusters: Vec<(C, usize)> = Vec::new();
    for &z in points {
        let mut placed = false;
        for (center, count) in clusters.iter_mut() {
            let tol = rel * center.norm().max(1.0);
            if (z - *center).norm() <= tol {
                // running centroid
                let n = *count as f64;
                *center = (*center * c(n) + z) / c(n + 1.0);
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            clusters.push((z, 1));
        }
    }
    clusters
}
