//! Spectral factorizations of dual Hermitian matrices and dual quaternion
//! SVD via first-order perturbation of the standard part, plus the
//! interlacing / determinant inequality theorems packaged as checkable
//! verdicts.

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cmat::CMat;
use crate::dcmat::DCMatrix;
use crate::dqmat::DQMatrix;
use crate::dual::{DualReal, Quaternion, Tol};
use crate::error::{Error, Result};
use crate::qmat::QMat;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Eigendecomposition of a Hermitian dual complex matrix.
#[derive(Clone, Debug)]
pub struct HermEigDc {
    pub u: DCMatrix,
    /// Descending under the total order; standard parts are cluster means.
    pub lambdas: Vec<DualReal>,
    /// Conditioning notes (small but nonzero standard-part gaps).
    pub warnings: Vec<String>,
}

/// Eigendecomposition of a Hermitian dual quaternion matrix.
#[derive(Clone, Debug)]
pub struct HermEigDq {
    pub u: DQMatrix,
    pub lambdas: Vec<DualReal>,
    pub warnings: Vec<String>,
}

/// Singular value decomposition of a dual quaternion matrix.
#[derive(Clone, Debug)]
pub struct DqSvd {
    pub u: DQMatrix,
    pub v: DQMatrix,
    /// Appreciable values first (descending), then positive infinitesimal
    /// ones, then zeros; length min(m, n).
    pub sigmas: Vec<DualReal>,
    /// Appreciable rank: count of appreciable singular values.
    pub r: usize,
    /// Rank: count of nonzero singular values.
    pub s: usize,
    pub warnings: Vec<String>,
}

/// Group indices of a descending real sequence into clusters of
/// relatively-equal values. Returns [start, end) ranges.
fn cluster_ranges(vals: &[f64], rel: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=vals.len() {
        if k == vals.len() {
            out.push((start, k));
            break;
        }
        let scale = vals[start].abs().max(vals[k].abs()).max(1.0);
        if (vals[k] - vals[start]).abs() > rel * scale {
            out.push((start, k));
            start = k;
        }
    }
    out
}

fn gap_warnings(vals: &[f64], clusters: &[(usize, usize)], what: &str) -> Vec<String> {
    let mut warnings = Vec::new();
    for w in clusters.windows(2) {
        let gap = (vals[w[0].0] - vals[w[1].0]).abs();
        if gap < 1e-4 {
            warnings.push(format!(
                "{what} gap {gap:.3e} between distinct clusters; infinitesimal corrections may be ill-conditioned"
            ));
        }
    }
    warnings
}

/// Hermitian eigendecomposition of a dual complex matrix by first-order
/// perturbation: diagonalize the standard part, compress the infinitesimal
/// part onto each eigenvalue cluster, and build the infinitesimal
/// eigenvector correction from the cross-cluster divided differences.
/// The correction matrix is skew-Hermitian, so the returned dual matrix is
/// unitary exactly in dual arithmetic.
pub fn herm_eig_dc(a: &DCMatrix, tol: &Tol) -> Result<HermEigDc> {
    if !a.is_hermitian(1e-8 * matrix_scale_dc(a)) {
        return Err(Error::NotHermitian);
    }
    let m = a.rows();
    let (mu, mut u_st) = a.st().herm_eig();
    let clusters = cluster_ranges(&mu, tol.cluster_rel);
    let warnings = gap_warnings(&mu, &clusters, "eigenvalue");

    // compress the infinitesimal part and diagonalize per cluster
    let a_in = symmetrize(&a.inf());
    let w0 = u_st.adjoint().mul(&a_in).mul(&u_st);
    let mut lambdas = Vec::with_capacity(m);
    for &(s, e) in &clusters {
        let k = e - s;
        let mean = mu[s..e].iter().sum::<f64>() / k as f64;
        let mut block = CMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                block[(i, j)] = w0[(s + i, s + j)];
            }
        }
        let (nu, z) = block.herm_eig();
        // rotate the cluster's eigenvector columns
        let mut cols = CMat::zeros(m, k);
        for i in 0..m {
            for j in 0..k {
                cols[(i, j)] = u_st[(i, s + j)];
            }
        }
        let rotated = cols.mul(&z);
        for i in 0..m {
            for j in 0..k {
                u_st[(i, s + j)] = rotated[(i, j)];
            }
        }
        for &v in &nu {
            lambdas.push(DualReal::new(mean, v));
        }
    }

    // skew-Hermitian first-order correction from the rotated basis
    let w = u_st.adjoint().mul(&a_in).mul(&u_st);
    let cluster_of = index_clusters(&clusters, m);
    let mut s_mat = CMat::zeros(m, m);
    for p in 0..m {
        for q in 0..m {
            if cluster_of[p] != cluster_of[q] {
                s_mat[(p, q)] = w[(p, q)] / c(mu[q] - mu[p]);
            }
        }
    }
    let u_in = u_st.mul(&s_mat);
    Ok(HermEigDc {
        u: DCMatrix::from_parts(&u_st, &u_in),
        lambdas,
        warnings,
    })
}

/// Hermitian eigendecomposition of a dual quaternion matrix. The
/// construction mirrors `herm_eig_dc` at the quaternion level, with the
/// standard-part eigenproblem solved through the complex adjoint image
/// (whose spectrum carries every eigenvalue with even multiplicity).
pub fn herm_eig_dq(a: &DQMatrix, tol: &Tol) -> Result<HermEigDq> {
    if !a.is_hermitian(1e-8 * matrix_scale_dq(a)) {
        return Err(Error::NotHermitian);
    }
    let m = a.rows();
    let (mu, mut u_st) = a.st().herm_eig();
    let clusters = cluster_ranges(&mu, tol.cluster_rel);
    let warnings = gap_warnings(&mu, &clusters, "eigenvalue");

    let a_in = q_symmetrize(&a.inf());
    let w0 = u_st.adjoint().mul(&a_in).mul(&u_st);
    let mut lambdas = Vec::with_capacity(m);
    for &(s, e) in &clusters {
        let k = e - s;
        let mean = mu[s..e].iter().sum::<f64>() / k as f64;
        let mut block = QMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                block[(i, j)] = w0[(s + i, s + j)];
            }
        }
        let (nu, z) = block.herm_eig();
        let mut cols = QMat::zeros(m, k);
        for i in 0..m {
            for j in 0..k {
                cols[(i, j)] = u_st[(i, s + j)];
            }
        }
        let rotated = cols.mul(&z);
        for i in 0..m {
            for j in 0..k {
                u_st[(i, s + j)] = rotated[(i, j)];
            }
        }
        for &v in &nu {
            lambdas.push(DualReal::new(mean, v));
        }
    }

    let w = u_st.adjoint().mul(&a_in).mul(&u_st);
    let cluster_of = index_clusters(&clusters, m);
    let mut s_mat = QMat::zeros(m, m);
    for p in 0..m {
        for q in 0..m {
            if cluster_of[p] != cluster_of[q] {
                s_mat[(p, q)] = w[(p, q)].scale(1.0 / (mu[q] - mu[p]));
            }
        }
    }
    let u_in = u_st.mul(&s_mat);
    // cross-check: the adjoint image's dual spectrum must pair up
    verify_pairing(a, &lambdas, tol)?;
    Ok(HermEigDq {
        u: DQMatrix::from_parts(&u_st, &u_in),
        lambdas,
        warnings,
    })
}

/// Check that every dual eigenvalue computed at the quaternion level
/// appears (at least) twice in the adjoint image's dual complex spectrum.
fn verify_pairing(a: &DQMatrix, lambdas: &[DualReal], tol: &Tol) -> Result<()> {
    let img = a.omega().to_dcmatrix();
    let dc = herm_eig_dc(&img, tol)?;
    let scale = lambdas
        .iter()
        .fold(1.0f64, |m, l| m.max(l.st.abs()).max(l.inf.abs()));
    let mut pool: Vec<DualReal> = dc.lambdas.clone();
    for l in lambdas {
        let mut found = 0;
        pool.retain(|p| {
            if found < 2
                && (p.st - l.st).abs() <= 1e-6 * scale
                && (p.inf - l.inf).abs() <= 1e-5 * scale
            {
                found += 1;
                false
            } else {
                true
            }
        });
        if found != 2 {
            return Err(Error::PairingFailure);
        }
    }
    Ok(())
}

/// SVD of a dual quaternion matrix by first-order perturbation of the
/// standard-part quaternion SVD. Appreciable singular values get their
/// infinitesimal corrections from the Hermitian part of the compressed
/// infinitesimal block; the zero space gets purely infinitesimal singular
/// values from an SVD of the residual block.
pub fn dq_svd(a: &DQMatrix, tol: &Tol) -> Result<DqSvd> {
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);
    let (mut u0, sig0, mut v0) = a.st().svd();
    let smax = sig0.first().copied().unwrap_or(0.0);
    let pos_tol = tol.tau_zero * smax.max(1.0);
    let r = sig0.iter().filter(|&&s| s > pos_tol).count();

    let pos_clusters: Vec<(usize, usize)> = cluster_ranges(&sig0[..r], tol.cluster_rel);
    let mut warnings = gap_warnings(&sig0[..r], &pos_clusters, "singular value");
    if r > 0 && r < k && sig0[r - 1] < 1e-4 * smax.max(1.0) {
        warnings.push(format!(
            "smallest appreciable singular value {:.3e} is close to the zero cluster",
            sig0[r - 1]
        ));
    }

    // rotate positive clusters to diagonalize the Hermitian part of the
    // compressed infinitesimal block
    let a_in = a.inf();
    let mut c_in = u0.adjoint().mul(&a_in).mul(&v0);
    let mut sig_in = vec![0.0f64; k];
    for &(s, e) in &pos_clusters {
        let kc = e - s;
        let mut h = QMat::zeros(kc, kc);
        for i in 0..kc {
            for j in 0..kc {
                let x = c_in[(s + i, s + j)];
                let y = c_in[(s + j, s + i)].conj();
                h[(i, j)] = (x + y).scale(0.5);
            }
        }
        let (nu, z) = h.herm_eig();
        rotate_columns(&mut u0, s, &z);
        rotate_columns(&mut v0, s, &z);
        sig_in[s..e].copy_from_slice(&nu);
    }

    // zero space: purely infinitesimal singular values from the residual
    let mut s_rank = r;
    if r < k {
        let mut c0 = QMat::zeros(m - r, n - r);
        c_in = u0.adjoint().mul(&a_in).mul(&v0);
        for i in 0..m - r {
            for j in 0..n - r {
                c0[(i, j)] = c_in[(r + i, r + j)];
            }
        }
        let (uz, sz, vz) = c0.svd();
        rotate_columns(&mut u0, r, &uz);
        rotate_columns(&mut v0, r, &vz);
        let in_scale = a_in.max_abs().max(1.0);
        for (i, &s) in sz.iter().enumerate() {
            sig_in[r + i] = s;
            if s > tol.tau_zero * in_scale {
                s_rank += 1;
            }
        }
    }

    // first-order corrections of the unitary factors
    c_in = u0.adjoint().mul(&a_in).mul(&v0);
    let sig_u: Vec<f64> = (0..m).map(|p| if p < r { sig0[p] } else { 0.0 }).collect();
    let sig_v: Vec<f64> = (0..n).map(|q| if q < r { sig0[q] } else { 0.0 }).collect();
    let cluster_u = svd_cluster_ids(&pos_clusters, r, m);
    let cluster_v = svd_cluster_ids(&pos_clusters, r, n);
    let mut p_mat = QMat::zeros(m, m);
    let mut q_mat = QMat::zeros(n, n);
    for p in 0..m {
        for q in 0..m {
            if p == q || cluster_u[p] == cluster_u[q] {
                continue;
            }
            let sp = sig_u[p];
            let sq = sig_u[q];
            let cpq = if p < m && q < n {
                c_in[(p, q)]
            } else {
                Quaternion::ZERO
            };
            let cqp_conj = if q < m && p < n {
                c_in[(q, p)].conj()
            } else {
                Quaternion::ZERO
            };
            let denom = sp * sp - sq * sq;
            if denom.abs() > pos_tol * pos_tol {
                p_mat[(p, q)] = (cpq.scale(-sq) + cqp_conj.scale(-sp)).scale(1.0 / denom);
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            if p == q || cluster_v[p] == cluster_v[q] {
                continue;
            }
            let sp = sig_v[p];
            let sq = sig_v[q];
            let cpq = if p < m && q < n {
                c_in[(p, q)]
            } else {
                Quaternion::ZERO
            };
            let cqp_conj = if q < m && p < n {
                c_in[(q, p)].conj()
            } else {
                Quaternion::ZERO
            };
            let denom = sp * sp - sq * sq;
            if denom.abs() > pos_tol * pos_tol {
                q_mat[(p, q)] = (cqp_conj.scale(-sq) + cpq.scale(-sp)).scale(1.0 / denom);
            }
        }
    }
    // within positive clusters: split the skew part evenly
    for &(s, e) in &pos_clusters {
        for p in s..e {
            for q in s..e {
                let sigma = 0.5 * (sig0[p] + sig0[q]);
                let skew = (c_in[(p, q)] - c_in[(q, p)].conj()).scale(0.5);
                p_mat[(p, q)] = skew.scale(0.5 / sigma);
                q_mat[(p, q)] = skew.scale(-0.5 / sigma);
            }
        }
    }

    let u = DQMatrix::from_parts(&u0, &u0.mul(&p_mat));
    let v = DQMatrix::from_parts(&v0, &v0.mul(&q_mat));
    let mut sigmas = Vec::with_capacity(k);
    let mut pos = 0;
    for &(s, e) in &pos_clusters {
        let mean = sig0[s..e].iter().sum::<f64>() / (e - s) as f64;
        for p in s..e {
            sigmas.push(DualReal::new(mean, sig_in[p]));
        }
        pos = e;
    }
    for p in pos..k {
        sigmas.push(DualReal::new(0.0, sig_in[p]));
    }
    Ok(DqSvd {
        u,
        v,
        sigmas,
        r,
        s: s_rank,
        warnings,
    })
}

fn svd_cluster_ids(pos_clusters: &[(usize, usize)], r: usize, len: usize) -> Vec<usize> {
    // ids: one per positive cluster, plus a shared id for the zero space
    let mut ids = vec![pos_clusters.len(); len];
    for (cid, &(s, e)) in pos_clusters.iter().enumerate() {
        for i in s..e.min(len) {
            ids[i] = cid;
        }
    }
    for i in r..len {
        ids[i] = pos_clusters.len();
    }
    ids
}

fn rotate_columns(mat: &mut QMat, offset: usize, z: &QMat) {
    let m = mat.rows;
    let k = z.rows;
    let mut cols = QMat::zeros(m, k);
    for i in 0..m {
        for j in 0..k {
            cols[(i, j)] = mat[(i, offset + j)];
        }
    }
    let rotated = cols.mul(z);
    for i in 0..m {
        for j in 0..z.cols {
            mat[(i, offset + j)] = rotated[(i, j)];
        }
    }
}

fn index_clusters(clusters: &[(usize, usize)], m: usize) -> Vec<usize> {
    let mut ids = vec![0usize; m];
    for (cid, &(s, e)) in clusters.iter().enumerate() {
        for i in s..e {
            ids[i] = cid;
        }
    }
    ids
}

fn symmetrize(a: &CMat) -> CMat {
    a.add(&a.adjoint()).scale(c(0.5))
}

fn q_symmetrize(a: &QMat) -> QMat {
    a.add(&a.adjoint()).scale(0.5)
}

fn matrix_scale_dc(a: &DCMatrix) -> f64 {
    a.st().max_abs().max(a.inf().max_abs()).max(1.0)
}

fn matrix_scale_dq(a: &DQMatrix) -> f64 {
    a.st().max_abs().max(a.inf().max_abs()).max(1.0)
}

/// Rank and appreciable rank of a dual quaternion matrix: `(s, r)`.
pub fn rank_arank(a: &DQMatrix, tol: &Tol) -> Result<(usize, usize)> {
    let svd = dq_svd(a, tol)?;
    Ok((svd.s, svd.r))
}

/// Positive semidefiniteness / definiteness verdict for a Hermitian dual
/// matrix, decided by its dual eigenvalues under the total order.
/// Standard parts within the zero tolerance are classified by their
/// infinitesimal parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PsdVerdict {
    pub psd: bool,
    pub pd: bool,
}

fn classify_psd(lambdas: &[DualReal], tol: &Tol) -> PsdVerdict {
    let scale = lambdas
        .iter()
        .fold(1.0f64, |m, l| m.max(l.st.abs()));
    let zero = tol.tau_zero * scale;
    let mut psd = true;
    let mut pd = true;
    for l in lambdas {
        if l.st > zero {
            continue; // appreciable positive
        }
        pd = false;
        if l.st < -zero || l.inf < -zero {
            psd = false;
        }
    }
    PsdVerdict { psd, pd }
}

pub fn is_psd_dc(a: &DCMatrix, tol: &Tol) -> Result<PsdVerdict> {
    Ok(classify_psd(&herm_eig_dc(a, tol)?.lambdas, tol))
}

pub fn is_psd_dq(a: &DQMatrix, tol: &Tol) -> Result<PsdVerdict> {
    Ok(classify_psd(&herm_eig_dq(a, tol)?.lambdas, tol))
}

// ---------------------------------------------------------------------
// Inequality checkers
// ---------------------------------------------------------------------

/// Outcome of one theorem check on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub theorem: String,
    pub pass: bool,
    /// Each margin is (greater side) - (smaller side); nonnegative within
    /// slack when the inequality holds.
    pub margins: Vec<DualReal>,
    pub instance_digest: String,
}

/// SHA-256 digest of the JSON form of the inputs, for reproducible
/// instance identification.
pub fn digest_of<T: Serialize>(inputs: &T) -> String {
    let json = serde_json::to_vec(inputs).expect("serializable inputs");
    let mut h = Sha256::new();
    h.update(&json);
    format!("{:x}", h.finalize())
}

/// `a <= b` under the total order with numerical slack on each part:
/// equality cases within roundoff must not flip the verdict.
fn dual_le_slack(a: DualReal, b: DualReal, slack: f64) -> bool {
    if b.st - a.st > slack {
        return true;
    }
    if a.st - b.st > slack {
        return false;
    }
    b.inf - a.inf >= -slack
}

fn real_dual_det(a: &DCMatrix) -> DualReal {
    let d = a.det();
    DualReal::new(d.st.re, d.inf.re)
}

/// Interlacing of the eigenvalues of a Hermitian dual complex matrix and
/// one of its principal submatrices:
/// `lambda_{m-k+i}(A) <= lambda_i(A_k) <= lambda_i(A)`.
pub fn sturm_check(a: &DCMatrix, idx: &[usize], tol: &Tol) -> Result<Verdict> {
    let m = a.rows();
    let k = idx.len();
    if k == 0 || k > m || idx.iter().any(|&i| i >= m) || !sorted_unique(idx) {
        return Err(Error::IndexOutOfRange(format!("index set {idx:?}")));
    }
    let full = herm_eig_dc(a, tol)?.lambdas;
    let sub = herm_eig_dc(&a.principal_submatrix(idx), tol)?.lambdas;
    let scale = full
        .iter()
        .fold(1.0f64, |s, l| s.max(l.st.abs()).max(l.inf.abs()));
    let slack = 1e-8 * scale;
    let mut margins = Vec::with_capacity(2 * k);
    let mut pass = true;
    for i in 0..k {
        let upper_ok = dual_le_slack(sub[i], full[i], slack);
        let lower_ok = dual_le_slack(full[m - k + i], sub[i], slack);
        pass &= upper_ok && lower_ok;
        margins.push(full[i] - sub[i]);
        margins.push(sub[i] - full[m - k + i]);
    }
    Ok(Verdict {
        theorem: "sturm-interlacing".into(),
        pass,
        margins,
        instance_digest: digest_of(&(a, idx)),
    })
}

fn sorted_unique(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[0] < w[1])
}

/// Bloomfield-Watson style determinant bounds for a compression of a PSD
/// Hermitian matrix by a partially unitary `X`:
/// `prod lambda_{m-k+i} <= det[X* A X] <= prod lambda_i`.
pub fn bloomfield_watson_check(a: &DCMatrix, x: &DCMatrix, tol: &Tol) -> Result<Verdict> {
    let m = a.rows();
    let k = x.cols();
    if x.rows() != m || k > m {
        return Err(Error::Shape(format!(
            "X must be {m}xk with k <= {m}, got {}x{}",
            x.rows(),
            k
        )));
    }
    let gram = x.adjoint().mul(x);
    let gap = gram.sub(&DCMatrix::identity(k));
    if gap.st().max_abs() > 1e-8 || gap.inf().max_abs() > 1e-6 {
        return Err(Error::NotPartiallyUnitary);
    }
    let eig = herm_eig_dc(a, tol)?;
    if !classify_psd(&eig.lambdas, tol).psd {
        return Err(Error::NotPsd);
    }
    let det = real_dual_det(&x.adjoint().mul(a).mul(x));
    let mut upper = DualReal::ONE;
    let mut lower = DualReal::ONE;
    for i in 0..k {
        upper = upper * eig.lambdas[i];
        lower = lower * eig.lambdas[m - k + i];
    }
    let scale = upper.st.abs().max(upper.inf.abs()).max(1.0);
    let slack = 1e-8 * scale;
    let pass = dual_le_slack(lower, det, slack) && dual_le_slack(det, upper, slack);
    Ok(Verdict {
        theorem: "bloomfield-watson".into(),
        pass,
        margins: vec![det - lower, upper - det],
        instance_digest: digest_of(&(a, x)),
    })
}

/// Determinantal Cauchy-Schwarz: `|det[A* B]|^2 <= det[A* A] det[B* B]`.
pub fn cauchy_schwarz_check(a: &DCMatrix, b: &DCMatrix) -> Result<Verdict> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Shape("A and B must share a shape".into()));
    }
    let lhs = a.adjoint().mul(b).det().abs_sqr();
    let rhs = real_dual_det(&a.adjoint().mul(a)) * real_dual_det(&b.adjoint().mul(b));
    let scale = rhs.st.abs().max(rhs.inf.abs()).max(1.0);
    let pass = dual_le_slack(lhs, rhs, 1e-8 * scale);
    Ok(Verdict {
        theorem: "cauchy-schwarz".into(),
        pass,
        margins: vec![rhs - lhs],
        instance_digest: digest_of(&(a, b)),
    })
}

/// Superadditivity of the determinant on PSD Hermitian matrices:
/// `det[A+B] >= det[A] + det[B]`.
pub fn det_sum_check(a: &DCMatrix, b: &DCMatrix, tol: &Tol) -> Result<Verdict> {
    if !is_psd_dc(a, tol)?.psd || !is_psd_dc(b, tol)?.psd {
        return Err(Error::NotPsd);
    }
    let lhs = real_dual_det(a) + real_dual_det(b);
    let rhs = real_dual_det(&a.add(b));
    let scale = rhs.st.abs().max(rhs.inf.abs()).max(1.0);
    let pass = dual_le_slack(lhs, rhs, 1e-8 * scale);
    Ok(Verdict {
        theorem: "psd-det-superadditive".into(),
        pass,
        margins: vec![rhs - lhs],
        instance_digest: digest_of(&(a, b)),
    })
}

/// Fischer-type block bound for a PSD Hermitian `D = [[A, C], [C*, B]]`:
/// `det[D] <= det[A] det[B]`.
pub fn psd_block_det_check(d: &DCMatrix, split: usize, tol: &Tol) -> Result<Verdict> {
    let m = d.rows();
    if split == 0 || split >= m {
        return Err(Error::IndexOutOfRange(format!("split {split} of {m}")));
    }
    if !is_psd_dc(d, tol)?.psd {
        return Err(Error::NotPsd);
    }
    let head: Vec<usize> = (0..split).collect();
    let tail: Vec<usize> = (split..m).collect();
    let lhs = real_dual_det(d);
    let rhs = real_dual_det(&d.principal_submatrix(&head))
        * real_dual_det(&d.principal_submatrix(&tail));
    let scale = rhs.st.abs().max(rhs.inf.abs()).max(1.0);
    let pass = dual_le_slack(lhs, rhs, 1e-8 * scale);
    Ok(Verdict {
        theorem: "psd-block-det".into(),
        pass,
        margins: vec![rhs - lhs],
        instance_digest: digest_of(&(d, split)),
    })
}

/// Hadamard bound for PSD Hermitian matrices: `det[A] <= prod a_ii`.
pub fn hadamard_check(a: &DCMatrix, tol: &Tol) -> Result<Verdict> {
    if !is_psd_dc(a, tol)?.psd {
        return Err(Error::NotPsd);
    }
    let lhs = real_dual_det(a);
    let mut rhs = DualReal::ONE;
    for i in 0..a.rows() {
        let d = a.get(i, i);
        rhs = rhs * DualReal::new(d.st.re, d.inf.re);
    }
    let scale = rhs.st.abs().max(rhs.inf.abs()).max(1.0);
    let pass = dual_le_slack(lhs, rhs, 1e-8 * scale);
    Ok(Verdict {
        theorem: "psd-hadamard".into(),
        pass,
        margins: vec![rhs - lhs],
        instance_digest: digest_of(&a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{DualComplex, DualQuaternion};

    fn dc(st: f64, inf: f64) -> DualComplex {
        DualComplex::new(c(st), c(inf))
    }

    fn diag_dc(entries: &[(f64, f64)]) -> DCMatrix {
        let n = entries.len();
        let mut data: Vec<DualComplex> = vec![DualComplex::ZERO; n * n];
        for (i, &(s, inf)) in entries.iter().enumerate() {
            data[i * n + i] = dc(s, inf);
        }
        DCMatrix::new(n, n, data).unwrap()
    }

    fn sample_herm_dc(m: usize, seed: u64) -> DCMatrix {
        let g = sample_dc(m, m, seed);
        g.add(&g.adjoint()).scale(dc(0.5, 0.0))
    }

    fn sample_dc(rows: usize, cols: usize, seed: u64) -> DCMatrix {
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let entries = (0..rows * cols)
            .map(|_| {
                DualComplex::new(C::new(next(), next()), C::new(next(), next()))
            })
            .collect();
        DCMatrix::new(rows, cols, entries).unwrap()
    }

    fn reconstruct_dc(eig: &HermEigDc) -> DCMatrix {
        let m = eig.lambdas.len();
        let mut data = vec![DualComplex::ZERO; m * m];
        for (i, l) in eig.lambdas.iter().enumerate() {
            data[i * m + i] = DualComplex::from_dual_real(*l);
        }
        let sig = DCMatrix::new(m, m, data).unwrap();
        eig.u.mul(&sig).mul(&eig.u.adjoint())
    }

    #[test]
    fn herm_eig_dc_diagonal() {
        let a = diag_dc(&[(1.0, 2.0), (3.0, -1.0)]);
        let eig = herm_eig_dc(&a, &Tol::default()).unwrap();
        assert_eq!(eig.lambdas[0], DualReal::new(3.0, -1.0));
        assert_eq!(eig.lambdas[1], DualReal::new(1.0, 2.0));
    }

    #[test]
    fn herm_eig_dc_cluster_identity_in_part() {
        // standard part with a 2-cluster, infinitesimal part = I:
        // compressing the identity is the identity, all corrections are 1
        let mut data = vec![DualComplex::ZERO; 9];
        for (i, &v) in [2.0, 2.0, 5.0].iter().enumerate() {
            data[i * 3 + i] = dc(v, 1.0);
        }
        let a = DCMatrix::new(3, 3, data).unwrap();
        let eig = herm_eig_dc(&a, &Tol::default()).unwrap();
        for l in &eig.lambdas {
            assert!((l.inf - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn herm_eig_dc_reconstruction_random() {
        for seed in [1u64, 2, 3] {
            let a = sample_herm_dc(4, seed);
            let eig = herm_eig_dc(&a, &Tol::default()).unwrap();
            // descending under the total order
            for w in eig.lambdas.windows(2) {
                assert!(w[0].total_cmp(&w[1]) != std::cmp::Ordering::Less);
            }
            // unitary in dual arithmetic
            let gram = eig.u.adjoint().mul(&eig.u).sub(&DCMatrix::identity(4));
            assert!(gram.st().max_abs() < 1e-9, "seed {seed}");
            assert!(gram.inf().max_abs() < 1e-9, "seed {seed}");
            // reconstruction in both parts
            let diff = reconstruct_dc(&eig).sub(&a);
            assert!(diff.st().max_abs() < 1e-8, "seed {seed}");
            assert!(diff.inf().max_abs() < 1e-8, "seed {seed}");
            // det = product of eigenvalues
            let det = real_dual_det(&a);
            let mut prod = DualReal::ONE;
            for l in &eig.lambdas {
                prod = prod * *l;
            }
            assert!((det.st - prod.st).abs() < 1e-8 * prod.st.abs().max(1.0));
            assert!((det.inf - prod.inf).abs() < 1e-7 * prod.inf.abs().max(1.0));
        }
    }

    #[test]
    fn herm_eig_dc_degenerate_cluster_reconstruction() {
        // exactly repeated standard eigenvalues with a nontrivial in-part
        let q = sample_herm_dc(3, 9).st();
        let (_, u) = q.herm_eig();
        // A_st = U diag(2,2,5) U*, A_in arbitrary Hermitian
        let mut d = CMat::zeros(3, 3);
        d[(0, 0)] = c(2.0);
        d[(1, 1)] = c(2.0);
        d[(2, 2)] = c(5.0);
        let ast = u.mul(&d).mul(&u.adjoint());
        let ain = sample_herm_dc(3, 10).st();
        let a = DCMatrix::from_parts(&ast, &ain);
        let a = a.add(&a.adjoint()).scale(dc(0.5, 0.0));
        let eig = herm_eig_dc(&a, &Tol::default()).unwrap();
        let diff = reconstruct_dc(&eig).sub(&a);
        assert!(diff.st().max_abs() < 1e-9);
        assert!(diff.inf().max_abs() < 1e-9);
    }

    #[test]
    fn herm_eig_dc_rejects_non_hermitian() {
        let a = sample_dc(3, 3, 4);
        assert!(matches!(
            herm_eig_dc(&a, &Tol::default()),
            Err(Error::NotHermitian)
        ));
    }

    #[test]
    fn eigenvalues_invariant_under_dual_unitary_conjugation() {
        let a = sample_herm_dc(4, 31);
        let other = sample_herm_dc(4, 32);
        let q = herm_eig_dc(&other, &Tol::default()).unwrap().u;
        let b = q.adjoint().mul(&a).mul(&q);
        let la = herm_eig_dc(&a, &Tol::default()).unwrap().lambdas;
        let lb = herm_eig_dc(&b, &Tol::default()).unwrap().lambdas;
        for (x, y) in la.iter().zip(&lb) {
            assert!((x.st - y.st).abs() < 1e-8);
            assert!((x.inf - y.inf).abs() < 1e-7);
        }
    }

    fn sample_herm_dq(m: usize, seed: u64) -> DQMatrix {
        let g = crate::dqmat::tests::sample(m, m, seed);
        let mut h = g.add(&g.adjoint());
        // halve
        let data: Vec<DualQuaternion> = h.entries().iter().map(|e| e.scale(0.5)).collect();
        h = DQMatrix::new(m, m, data).unwrap();
        h
    }

    fn reconstruct_dq(u: &DQMatrix, lambdas: &[DualReal]) -> DQMatrix {
        let m = lambdas.len();
        let mut data = vec![DualQuaternion::ZERO; m * m];
        for (i, l) in lambdas.iter().enumerate() {
            data[i * m + i] = DualQuaternion::from_dual_real(*l);
        }
        let sig = DQMatrix::new(m, m, data).unwrap();
        u.mul(&sig).mul(&u.adjoint())
    }

    #[test]
    fn herm_eig_dq_two_by_two_j_off_diagonal() {
        // [[0, j], [-j, 0]] is Hermitian with eigenvalues +-1
        let j = DualQuaternion::new(Quaternion::J, Quaternion::ZERO);
        let mut a = DQMatrix::zeros(2, 2);
        a.set(0, 1, j);
        a.set(1, 0, -j);
        let eig = herm_eig_dq(&a, &Tol::default()).unwrap();
        assert!((eig.lambdas[0].st - 1.0).abs() < 1e-10);
        assert!((eig.lambdas[1].st + 1.0).abs() < 1e-10);
        let diff = reconstruct_dq(&eig.u, &eig.lambdas).sub(&a);
        assert!(diff.st().max_abs() < 1e-9 && diff.inf().max_abs() < 1e-9);
    }

    #[test]
    fn herm_eig_dq_reconstruction_random() {
        for seed in [5u64, 6] {
            let a = sample_herm_dq(3, seed);
            let eig = herm_eig_dq(&a, &Tol::default()).unwrap();
            let gram = eig.u.adjoint().mul(&eig.u).sub(&DQMatrix::identity(3));
            assert!(gram.st().max_abs() < 1e-9 && gram.inf().max_abs() < 1e-9);
            let diff = reconstruct_dq(&eig.u, &eig.lambdas).sub(&a);
            assert!(diff.st().max_abs() < 1e-8, "seed {seed}");
            assert!(diff.inf().max_abs() < 1e-8, "seed {seed}");
            // eigenpairs verify as right eigenpairs with vanishing residual
            for (jcol, l) in eig.lambdas.iter().enumerate() {
                let x: Vec<DualQuaternion> =
                    (0..3).map(|i| eig.u.get(i, jcol)).collect();
                let (res, f) = a
                    .verify_right_eigenpair(DualQuaternion::from_dual_real(*l), &x)
                    .unwrap();
                assert!(res.st.abs() < 1e-8 && res.inf.abs() < 1e-7);
                assert!(f.st.norm() < 1e-7 && f.inf.norm() < 1e-6);
            }
            // qdet equals the product of squared eigenvalue magnitudes
            let qd = a.qdet().unwrap();
            let mut prod = DualReal::ONE;
            for l in &eig.lambdas {
                prod = prod * l.abs() * l.abs();
            }
            assert!((qd.st.re - prod.st).abs() < 1e-8 * prod.st.abs().max(1.0));
            assert!((qd.inf.re - prod.inf).abs() < 1e-7 * prod.inf.abs().max(1.0));
        }
    }

    #[test]
    fn dq_svd_reconstruction_and_ranks() {
        let tol = Tol::default();
        for (m, n, seed) in [(3usize, 3usize, 7u64), (4, 2, 8), (2, 4, 9)] {
            let a = crate::dqmat::tests::sample(m, n, seed);
            let svd = dq_svd(&a, &tol).unwrap();
            assert_eq!(svd.sigmas.len(), m.min(n));
            assert_eq!(svd.r, m.min(n));
            assert_eq!(svd.s, m.min(n));
            check_svd_contract(&a, &svd);
        }
    }

    fn check_svd_contract(a: &DQMatrix, svd: &DqSvd) {
        let (m, n) = (a.rows(), a.cols());
        let gu = svd.u.adjoint().mul(&svd.u).sub(&DQMatrix::identity(m));
        assert!(gu.st().max_abs() < 1e-8 && gu.inf().max_abs() < 1e-8);
        let gv = svd.v.adjoint().mul(&svd.v).sub(&DQMatrix::identity(n));
        assert!(gv.st().max_abs() < 1e-8 && gv.inf().max_abs() < 1e-8);
        let mut sig = DQMatrix::zeros(m, n);
        for (i, s) in svd.sigmas.iter().enumerate() {
            sig.set(i, i, DualQuaternion::from_dual_real(*s));
        }
        let rec = svd.u.mul(&sig).mul(&svd.v.adjoint());
        let diff = rec.sub(a);
        assert!(diff.st().max_abs() < 1e-8, "st part off");
        assert!(diff.inf().max_abs() < 1e-8, "inf part off");
    }

    #[test]
    fn dq_svd_trivial_and_infinitesimal() {
        let tol = Tol::default();
        // diag(2, 0) with zero in-part
        let mut a = DQMatrix::zeros(2, 2);
        a.set(0, 0, DualQuaternion::from_real(2.0));
        let svd = dq_svd(&a, &tol).unwrap();
        assert_eq!((svd.r, svd.s), (1, 1));
        assert!((svd.sigmas[0].st - 2.0).abs() < 1e-12);
        assert!(svd.sigmas[1].st == 0.0 && svd.sigmas[1].inf.abs() < 1e-12);
        check_svd_contract(&a, &svd);

        // eps * B: all singular values infinitesimal, equal to sigma(B) eps
        let b = crate::dqmat::tests::sample(3, 3, 11).st();
        let eb = DQMatrix::from_parts(&QMat::zeros(3, 3), &b);
        let svd = dq_svd(&eb, &tol).unwrap();
        assert_eq!(svd.r, 0);
        assert_eq!(svd.s, 3);
        let (_, sb, _) = b.svd();
        for (got, want) in svd.sigmas.iter().zip(&sb) {
            assert!(got.st == 0.0 && (got.inf - want).abs() < 1e-9);
        }
        check_svd_contract(&eb, &svd);

        // zero matrix
        let z = DQMatrix::zeros(2, 3);
        assert_eq!(rank_arank(&z, &tol).unwrap(), (0, 0));
        // identity
        assert_eq!(rank_arank(&DQMatrix::identity(3), &tol).unwrap(), (3, 3));
        // eps I3
        let ei = DQMatrix::from_parts(&QMat::zeros(3, 3), &QMat::identity(3));
        assert_eq!(rank_arank(&ei, &tol).unwrap(), (3, 0));
    }

    #[test]
    fn dq_svd_degenerate_cluster() {
        // repeated singular value 1 (unitary standard part) with random in-part
        let tol = Tol::default();
        let ust = crate::dqmat::tests::sample(3, 3, 13).st();
        let (q, _, _) = ust.svd();
        let ain = crate::dqmat::tests::sample(3, 3, 14).st();
        let a = DQMatrix::from_parts(&q, &ain);
        let svd = dq_svd(&a, &tol).unwrap();
        for s in &svd.sigmas {
            assert!((s.st - 1.0).abs() < 1e-10);
        }
        check_svd_contract(&a, &svd);
    }

    #[test]
    fn dq_svd_sigma_unique_across_gauge() {
        // right-multiplying by a unitary permutes nothing in Sigma
        let tol = Tol::default();
        let a = crate::dqmat::tests::sample(3, 3, 15);
        let w = {
            let h = sample_herm_dq(3, 16);
            herm_eig_dq(&h, &tol).unwrap().u
        };
        let b = a.mul(&w);
        let sa = dq_svd(&a, &tol).unwrap();
        let sb = dq_svd(&b, &tol).unwrap();
        assert_eq!((sa.r, sa.s), (sb.r, sb.s));
        for (x, y) in sa.sigmas.iter().zip(&sb.sigmas) {
            assert!((x.st - y.st).abs() < 1e-8);
            assert!((x.inf - y.inf).abs() < 1e-7);
        }
    }

    #[test]
    fn psd_classification() {
        let tol = Tol::default();
        let a = diag_dc(&[(1.0, 0.0), (0.0, 1.0)]);
        let v = is_psd_dc(&a, &tol).unwrap();
        assert!(v.psd && !v.pd);
        let b = diag_dc(&[(1.0, 0.0), (0.0, -1.0)]);
        let v = is_psd_dc(&b, &tol).unwrap();
        assert!(!v.psd && !v.pd);
        // Gram construction is PSD
        let g = sample_dc(3, 3, 17);
        let gram = g.adjoint().mul(&g);
        assert!(is_psd_dc(&gram, &tol).unwrap().psd);
        // dual quaternion Gram
        let gq = crate::dqmat::tests::sample(3, 3, 18);
        let gramq = gq.adjoint().mul(&gq);
        assert!(is_psd_dq(&gramq, &tol).unwrap().psd);
    }

    #[test]
    fn sturm_diagonal_and_random() {
        let tol = Tol::default();
        let a = diag_dc(&[(5.0, 1.0), (3.0, -2.0), (1.0, 0.5)]);
        let v = sturm_check(&a, &[0, 2], &tol).unwrap();
        assert!(v.pass);
        // k = m gives equality throughout
        let v = sturm_check(&a, &[0, 1, 2], &tol).unwrap();
        assert!(v.pass);
        for m in &v.margins {
            assert!(m.st.abs() < 1e-10 && m.inf.abs() < 1e-9);
        }
        // random Hermitian, all 2-subsets
        let a = sample_herm_dc(5, 19);
        for i in 0..5 {
            for j in i + 1..5 {
                let v = sturm_check(&a, &[i, j], &tol).unwrap();
                assert!(v.pass, "subset ({i},{j})");
            }
        }
        assert!(sturm_check(&a, &[2, 1], &tol).is_err());
    }

    #[test]
    fn bloomfield_watson_cases() {
        let tol = Tol::default();
        let g = sample_dc(4, 4, 20);
        let a = g.adjoint().mul(&g);
        // X = first two columns of the identity
        let mut xdata = vec![DualComplex::ZERO; 8];
        xdata[0] = DualComplex::ONE;
        xdata[5] = DualComplex::ONE;
        let x = DCMatrix::new(4, 2, xdata).unwrap();
        let v = bloomfield_watson_check(&a, &x, &tol).unwrap();
        assert!(v.pass);
        // k = m with dual unitary X: equality on both sides
        let u = herm_eig_dc(&a, &tol).unwrap().u;
        let v = bloomfield_watson_check(&a, &u, &tol).unwrap();
        assert!(v.pass);
        for m in &v.margins {
            assert!(m.st.abs() < 1e-6 && m.inf.abs() < 1e-5);
        }
        // non-unitary X rejected
        let bad = sample_dc(4, 2, 21);
        assert!(matches!(
            bloomfield_watson_check(&a, &bad, &tol),
            Err(Error::NotPartiallyUnitary)
        ));
    }

    #[test]
    fn cauchy_schwarz_cases() {
        let a = sample_dc(4, 2, 22);
        // equality at B = A
        let v = cauchy_schwarz_check(&a, &a).unwrap();
        assert!(v.pass);
        assert!(v.margins[0].st.abs() < 1e-9);
        for seed in 23..28u64 {
            let b = sample_dc(4, 2, seed);
            let v = cauchy_schwarz_check(&a, &b).unwrap();
            assert!(v.pass, "seed {seed}");
        }
    }

    #[test]
    fn psd_det_inequality_cases() {
        let tol = Tol::default();
        let i2 = DCMatrix::identity(2);
        let v = det_sum_check(&i2, &i2, &tol).unwrap();
        assert!(v.pass);
        // margin = det(2I) - 2 = 2
        assert!((v.margins[0].st - 2.0).abs() < 1e-12);
        for seed in 30..35u64 {
            let g1 = sample_dc(3, 3, seed);
            let g2 = sample_dc(3, 3, seed + 100);
            let a = g1.adjoint().mul(&g1);
            let b = g2.adjoint().mul(&g2);
            assert!(det_sum_check(&a, &b, &tol).unwrap().pass, "seed {seed}");
        }
        // block bound, with equality when the off-diagonal block is zero
        let g = sample_dc(4, 4, 40);
        let d = g.adjoint().mul(&g);
        let v = psd_block_det_check(&d, 2, &tol).unwrap();
        assert!(v.pass);
        let blockdiag = {
            let head = d.principal_submatrix(&[0, 1]);
            let tail = d.principal_submatrix(&[2, 3]);
            DCMatrix::from_blocks(&head, &DCMatrix::zeros(2, 2), &DCMatrix::zeros(2, 2), &tail)
                .unwrap()
        };
        let v = psd_block_det_check(&blockdiag, 2, &tol).unwrap();
        assert!(v.pass && v.margins[0].st.abs() < 1e-8);
        // Hadamard
        assert!(hadamard_check(&d, &tol).unwrap().pass);
        // non-PSD rejected
        let neg = diag_dc(&[(1.0, 0.0), (-1.0, 0.0)]);
        assert!(matches!(
            hadamard_check(&neg, &tol),
            Err(Error::NotPsd)
        ));
    }
}
