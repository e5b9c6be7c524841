//! Shared property-suite runners. Each runner draws `n` seeded instances
//! and returns the first failure as an error message, so suites can be
//! asserted individually or aggregated.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;

use dualqm::dcmat::DCMatrix;
use dualqm::dqmat::{DQMatrix, PivotRule};
use dualqm::dual::{DualComplex, DualQuaternion, DualReal, Tol};
use dualqm::gen;
use dualqm::spectra::{
    bloomfield_watson_check, cauchy_schwarz_check, det_sum_check, hadamard_check, herm_eig_dc,
    herm_eig_dq, psd_block_det_check, sturm_check,
};

pub type PropResult = Result<(), String>;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

fn dc_close(a: DualComplex, b: DualComplex, slack: f64) -> bool {
    (a.st - b.st).norm() <= slack && (a.inf - b.inf).norm() <= slack
}

fn dc_scale(v: DualComplex) -> f64 {
    v.st.norm().max(v.inf.norm()).max(1.0)
}

fn with_row(a: &DCMatrix, i: usize, row: &[DualComplex]) -> DCMatrix {
    let mut entries = a.entries().to_vec();
    entries[i * a.cols()..(i + 1) * a.cols()].copy_from_slice(row);
    DCMatrix::new(a.rows(), a.cols(), entries).expect("same shape")
}

fn row_of(a: &DCMatrix, i: usize) -> Vec<DualComplex> {
    (0..a.cols()).map(|j| a.get(i, j)).collect()
}

fn swap_rows(a: &DCMatrix, i: usize, j: usize) -> DCMatrix {
    let b = with_row(a, i, &row_of(a, j));
    with_row(&b, j, &row_of(a, i))
}

fn shifted_dc(a: &DCMatrix, lambda: DualComplex) -> DCMatrix {
    let m = a.rows();
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut e = -a.get(i, j);
            if i == j {
                e = e + lambda;
            }
            entries.push(e);
        }
    }
    DCMatrix::new(m, m, entries).expect("square")
}

pub fn det_multiplicative(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let b = gen::dc_matrix(&mut rng, m, m);
        let lhs = a.mul(&b).det();
        let rhs = a.det() * b.det();
        if !dc_close(lhs, rhs, 1e-9 * dc_scale(rhs)) {
            return Err(format!("det multiplicativity failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn det_matches_leibniz(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let lhs = a.det();
        let rhs = a.det_leibniz().map_err(|e| e.to_string())?;
        if !dc_close(lhs, rhs, 1e-10 * dc_scale(rhs)) {
            return Err(format!("elimination vs permutation det differ at {k}"));
        }
    }
    Ok(())
}

pub fn law_transpose(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let lhs = a.transpose().det();
        let rhs = a.det();
        if !dc_close(lhs, rhs, 1e-10 * dc_scale(rhs)) {
            return Err(format!("transpose law failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn law_row_swap(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let lhs = swap_rows(&a, i, j).det();
        let rhs = -a.det();
        if !dc_close(lhs, rhs, 1e-10 * dc_scale(rhs)) {
            return Err(format!("row swap law failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn law_row_scale(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let i = rng.gen_range(0..m);
        let alpha = gen::dual_complex(&mut rng);
        let row: Vec<DualComplex> = row_of(&a, i).iter().map(|&e| alpha * e).collect();
        let lhs = with_row(&a, i, &row).det();
        let rhs = alpha * a.det();
        if !dc_close(lhs, rhs, 1e-10 * dc_scale(rhs)) {
            return Err(format!("row scaling law failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn law_row_add(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let beta = gen::dual_complex(&mut rng);
        let row: Vec<DualComplex> = row_of(&a, i)
            .iter()
            .zip(row_of(&a, j))
            .map(|(&e, f)| e + beta * f)
            .collect();
        let lhs = with_row(&a, i, &row).det();
        let rhs = a.det();
        if !dc_close(lhs, rhs, 1e-9 * dc_scale(rhs)) {
            return Err(format!("row addition law failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn law_row_additivity(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let base = gen::dc_matrix(&mut rng, m, m);
        let i = rng.gen_range(0..m);
        let r1: Vec<DualComplex> = (0..m).map(|_| gen::dual_complex(&mut rng)).collect();
        let r2: Vec<DualComplex> = (0..m).map(|_| gen::dual_complex(&mut rng)).collect();
        let sum: Vec<DualComplex> = r1.iter().zip(&r2).map(|(&x, &y)| x + y).collect();
        let lhs = with_row(&base, i, &sum).det();
        let rhs = with_row(&base, i, &r1).det() + with_row(&base, i, &r2).det();
        if !dc_close(lhs, rhs, 1e-10 * dc_scale(rhs)) {
            return Err(format!("row additivity law failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn block_laws(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let p = 1 + k % 3;
        let q = 1 + (k / 3) % 3;
        let a = gen::dc_matrix(&mut rng, p, p);
        let b = gen::dc_matrix(&mut rng, q, q);
        let off = gen::dc_matrix(&mut rng, q, p);
        let big = DCMatrix::from_blocks(&a, &DCMatrix::zeros(p, q), &off, &b)
            .map_err(|e| e.to_string())?;
        let lhs = big.det();
        let rhs =
            DCMatrix::det_block_triangular(&a, &b, &off, true).map_err(|e| e.to_string())?;
        if !dc_close(lhs, rhs, 1e-9 * dc_scale(rhs)) {
            return Err(format!("block-triangular law failed at instance {k}"));
        }

        let mut blk = gen::dc_matrix(&mut rng, p, p);
        while blk.st().det().norm() < 1e-2 {
            blk = blk.add(&DCMatrix::identity(p));
        }
        let bb = gen::dc_matrix(&mut rng, p, q);
        let cc = gen::dc_matrix(&mut rng, q, p);
        let dd = gen::dc_matrix(&mut rng, q, q);
        let big = DCMatrix::from_blocks(&blk, &bb, &cc, &dd).map_err(|e| e.to_string())?;
        let lhs = big.det();
        let rhs = DCMatrix::schur_det(&blk, &bb, &cc, &dd).map_err(|e| e.to_string())?;
        if !dc_close(lhs, rhs, 1e-7 * dc_scale(rhs)) {
            return Err(format!("Schur law failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn charpoly_matches_det(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let cp = a.charpoly();
        let lambda = gen::dual_complex(&mut rng).scale(c(2.0));
        let lhs = cp.eval(lambda);
        let rhs = shifted_dc(&a, lambda).det();
        let scale = cp.g.max_coeff_norm().max(cp.tau.max_coeff_norm()).max(1.0);
        if !dc_close(lhs, rhs, 1e-7 * scale) {
            return Err(format!("charpoly evaluation mismatch at instance {k}"));
        }
    }
    Ok(())
}

pub fn charpoly_product_commutes(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let b = gen::dc_matrix(&mut rng, m, m);
        let f_ab = a.mul(&b).charpoly();
        let f_ba = b.mul(&a).charpoly();
        let scale = f_ab
            .g
            .max_coeff_norm()
            .max(f_ab.tau.max_coeff_norm())
            .max(1.0);
        for (x, y) in f_ab
            .g
            .coeffs
            .iter()
            .zip(&f_ba.g.coeffs)
            .chain(f_ab.tau.coeffs.iter().zip(&f_ba.tau.coeffs))
        {
            if (x - y).norm() > 1e-7 * scale {
                return Err(format!("f_AB != f_BA at instance {k}"));
            }
        }
    }
    Ok(())
}

pub fn hermitian_det_is_eigen_product(n: usize, seed: u64) -> PropResult {
    let tol = Tol::default();
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::herm_dc(&mut rng, m);
        let eig = herm_eig_dc(&a, &tol).map_err(|e| e.to_string())?;
        let mut prod = DualReal::ONE;
        for l in &eig.lambdas {
            prod = prod * *l;
        }
        let d = a.det();
        let scale = prod.st.abs().max(prod.inf.abs()).max(1.0);
        if (d.st - c(prod.st)).norm() > 1e-7 * scale
            || (d.inf - c(prod.inf)).norm() > 1e-7 * scale
        {
            return Err(format!("Hermitian det != eigenvalue product at {k}"));
        }
    }
    Ok(())
}

pub fn inverse_det(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let mut a = gen::dc_matrix(&mut rng, m, m);
        while a.st().det().norm() < 1e-2 {
            a = a.add(&DCMatrix::identity(m));
        }
        let lhs = a.inverse().map_err(|e| e.to_string())?.det();
        let rhs = a.det().inv().map_err(|e| e.to_string())?;
        if !dc_close(lhs, rhs, 1e-8 * dc_scale(rhs)) {
            return Err(format!("det of inverse mismatch at instance {k}"));
        }
    }
    Ok(())
}

pub fn unitary_det_unimodular(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let u = gen::unitary_dc(&mut rng, m);
        let d = u.det();
        let got = d * d.conj();
        if !dc_close(got, DualComplex::ONE, 1e-8) {
            return Err(format!("unitary det not unimodular at instance {k}"));
        }
    }
    Ok(())
}

pub fn sturm_suite(n: usize, seed: u64) -> PropResult {
    let tol = Tol::default();
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::herm_dc(&mut rng, m);
        let keep = 1 + rng.gen_range(0..m);
        let mut idx: Vec<usize> = (0..m).collect();
        while idx.len() > keep {
            let drop = rng.gen_range(0..idx.len());
            idx.remove(drop);
        }
        let v = sturm_check(&a, &idx, &tol).map_err(|e| e.to_string())?;
        if !v.pass {
            return Err(format!("Sturm interlacing failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn bw_suite(n: usize, seed: u64) -> PropResult {
    let tol = Tol::default();
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::psd_dc(&mut rng, m);
        let cols = 1 + k % m;
        let x = gen::partial_unitary_dc(&mut rng, m, cols);
        let v = bloomfield_watson_check(&a, &x, &tol).map_err(|e| e.to_string())?;
        if !v.pass {
            return Err(format!("compressed det bounds failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn cs_suite(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::dc_matrix(&mut rng, m, m);
        let b = gen::dc_matrix(&mut rng, m, m);
        let v = cauchy_schwarz_check(&a, &b).map_err(|e| e.to_string())?;
        if !v.pass {
            return Err(format!("Cauchy-Schwarz failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn psd_det_suite(n: usize, seed: u64) -> PropResult {
    let tol = Tol::default();
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::psd_dc(&mut rng, m);
        let b = gen::psd_dc(&mut rng, m);
        for v in [
            det_sum_check(&a, &b, &tol).map_err(|e| e.to_string())?,
            psd_block_det_check(&a, 1 + k % (m - 1), &tol).map_err(|e| e.to_string())?,
            hadamard_check(&a, &tol).map_err(|e| e.to_string())?,
        ] {
            if !v.pass {
                return Err(format!("{} failed at instance {k}", v.theorem));
            }
        }
    }
    Ok(())
}

fn scalar_adjoint(q: DualQuaternion) -> DCMatrix {
    DQMatrix::new(1, 1, vec![q])
        .expect("1x1")
        .omega()
        .to_dcmatrix()
}

fn matrix_close(a: &DCMatrix, b: &DCMatrix, slack: f64) -> bool {
    let d = a.sub(b);
    d.st().max_abs() <= slack && d.inf().max_abs() <= slack
}

pub fn omega_homomorphism(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let sa = gen::dual_quaternion(&mut rng);
        let sb = gen::dual_quaternion(&mut rng);
        let checks = [
            (scalar_adjoint(sa * sb), scalar_adjoint(sa).mul(&scalar_adjoint(sb))),
            (scalar_adjoint(sa + sb), scalar_adjoint(sa).add(&scalar_adjoint(sb))),
            (scalar_adjoint(sa.conj()), scalar_adjoint(sa).adjoint()),
        ];
        for (lhs, rhs) in checks {
            if !matrix_close(&lhs, &rhs, 1e-12) {
                return Err(format!("scalar adjoint identity failed at instance {k}"));
            }
        }
        if sa.st.norm() > 0.1 {
            let lhs = scalar_adjoint(sa.inv().map_err(|e| e.to_string())?);
            let rhs = scalar_adjoint(sa).inverse().map_err(|e| e.to_string())?;
            if !matrix_close(&lhs, &rhs, 1e-9) {
                return Err(format!("adjoint of inverse failed at instance {k}"));
            }
        }
        let m = 2 + k % 3;
        let a = gen::dq_matrix(&mut rng, m, m);
        let b = gen::dq_matrix(&mut rng, m, m);
        let lhs = a.mul(&b).omega().to_dcmatrix();
        let rhs = a.omega().mul(&b.omega()).to_dcmatrix();
        if !matrix_close(&lhs, &rhs, 1e-10 * (1.0 + rhs.frobenius().st)) {
            return Err(format!("matrix adjoint product failed at instance {k}"));
        }
    }
    Ok(())
}

pub fn qdet_multiplicative(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 3;
        let a = gen::dq_matrix(&mut rng, m, m);
        let b = gen::dq_matrix(&mut rng, m, m);
        let lhs = a.mul(&b).qdet().map_err(|e| e.to_string())?;
        let rhs = a.qdet().map_err(|e| e.to_string())? * b.qdet().map_err(|e| e.to_string())?;
        if !dc_close(lhs, rhs, 1e-8 * dc_scale(rhs)) {
            return Err(format!("qdet multiplicativity failed at instance {k}"));
        }
    }
    Ok(())
}

fn dq_block_lower(a: &DQMatrix, b: &DQMatrix, off: &DQMatrix) -> DQMatrix {
    let p = a.rows();
    let q = b.rows();
    let n = p + q;
    let mut big = DQMatrix::zeros(n, n);
    for i in 0..p {
        for j in 0..p {
            big.set(i, j, a.get(i, j));
        }
    }
    for i in 0..q {
        for j in 0..p {
            big.set(p + i, j, off.get(i, j));
        }
        for j in 0..q {
            big.set(p + i, p + j, b.get(i, j));
        }
    }
    big
}

pub fn qdet_block_law(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let p = 1 + k % 2;
        let q = 1 + (k / 2) % 2;
        let a = gen::dq_matrix(&mut rng, p, p);
        let b = gen::dq_matrix(&mut rng, q, q);
        let off = gen::dq_matrix(&mut rng, q, p);
        let lhs = dq_block_lower(&a, &b, &off).qdet().map_err(|e| e.to_string())?;
        let rhs =
            DQMatrix::qdet_block_triangular(&a, &b, &off, true).map_err(|e| e.to_string())?;
        if !dc_close(lhs, rhs, 1e-9 * dc_scale(rhs)) {
            return Err(format!("qdet block law failed at instance {k}"));
        }
    }
    Ok(())
}

/// Similarity invariance of the quasi-characteristic polynomial at central
/// (dual real) sample points, where `lambda I` commutes with the change of
/// basis.
pub fn quasi_charpoly_similarity(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 2;
        let a = gen::dq_matrix(&mut rng, m, m);
        let mut p = gen::dq_matrix(&mut rng, m, m);
        while p.qdet().map_err(|e| e.to_string())?.st.norm() < 0.3 {
            p = gen::dq_matrix(&mut rng, m, m);
        }
        let sim = p.inverse().map_err(|e| e.to_string())?.mul(&a).mul(&p);
        for _ in 0..20 {
            let lambda = DualQuaternion::new(
                dualqm::dual::Quaternion::new(rng.gen_range(-2.0..2.0), 0.0, 0.0, 0.0),
                dualqm::dual::Quaternion::new(rng.gen_range(-2.0..2.0), 0.0, 0.0, 0.0),
            );
            let lhs = a.q_charpoly_eval(lambda).map_err(|e| e.to_string())?;
            let rhs = sim.q_charpoly_eval(lambda).map_err(|e| e.to_string())?;
            if !dc_close(lhs, rhs, 1e-6 * dc_scale(lhs)) {
                return Err(format!("similarity invariance failed at instance {k}"));
            }
        }
    }
    Ok(())
}

pub fn hermitian_qdet_is_eigen_product(n: usize, seed: u64) -> PropResult {
    let tol = Tol::default();
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 3;
        let a = gen::herm_dq(&mut rng, m);
        let eig = herm_eig_dq(&a, &tol).map_err(|e| e.to_string())?;
        let mut prod = DualReal::ONE;
        for l in &eig.lambdas {
            prod = prod * *l * *l;
        }
        let d = a.qdet().map_err(|e| e.to_string())?;
        let scale = prod.st.abs().max(prod.inf.abs()).max(1.0);
        if (d.st - c(prod.st)).norm() > 1e-7 * scale
            || (d.inf - c(prod.inf)).norm() > 1e-7 * scale
        {
            return Err(format!("Hermitian qdet != squared eigen product at {k}"));
        }
    }
    Ok(())
}

pub fn right_eigenpair_annihilates(n: usize, seed: u64) -> PropResult {
    let tol = Tol::default();
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 3;
        let a = gen::herm_dq(&mut rng, m);
        let eig = herm_eig_dq(&a, &tol).map_err(|e| e.to_string())?;
        let col = k % m;
        let x: Vec<DualQuaternion> = (0..m).map(|i| eig.u.get(i, col)).collect();
        let lambda = DualQuaternion::new(
            dualqm::dual::Quaternion::new(eig.lambdas[col].st, 0.0, 0.0, 0.0),
            dualqm::dual::Quaternion::new(eig.lambdas[col].inf, 0.0, 0.0, 0.0),
        );
        let (residual, f_value) = a
            .verify_right_eigenpair(lambda, &x)
            .map_err(|e| e.to_string())?;
        let scale = 1.0 + a.frobenius().st;
        if residual.st > 1e-7 * scale || residual.inf.abs() > 1e-7 * scale {
            return Err(format!("right eigenpair residual too large at {k}"));
        }
        let f_scale = (2.0 * scale).powi(2 * m as i32);
        if f_value.st.norm() > 1e-8 * f_scale || f_value.inf.norm() > 1e-8 * f_scale {
            return Err(format!("quasi charpoly does not vanish at {k}"));
        }
    }
    Ok(())
}

pub fn solve_residual_and_uniqueness(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 4;
        let a = gen::invertible_dq(&mut rng, m);
        let b = gen::dq_matrix(&mut rng, m, 1 + k % 2);
        let x1 = a.solve(&b, PivotRule::MaxDet).map_err(|e| e.to_string())?;
        let x2 = a
            .solve(&b, PivotRule::FirstInvertible)
            .map_err(|e| e.to_string())?;
        let scale = 1.0 + a.frobenius().st * x1.frobenius().st + b.frobenius().st;
        let residual = a.mul(&x1).sub(&b).frobenius();
        if residual.st > 1e-9 * scale || residual.inf.abs() > 1e-9 * scale {
            return Err(format!("solve residual too large at instance {k}"));
        }
        let diff = x1.sub(&x2).frobenius();
        if diff.st > 1e-8 * scale || diff.inf.abs() > 1e-8 * scale {
            return Err(format!("solve not pivot-invariant at instance {k}"));
        }
        // subring closure is structural: the image round-trips exactly
        let round = x1.omega().to_dqmatrix().sub(&x1);
        if round.st().max_abs() != 0.0 || round.inf().max_abs() != 0.0 {
            return Err(format!("block image round trip not exact at {k}"));
        }
    }
    Ok(())
}

pub fn invertibility_iff_appreciable_qdet(n: usize, seed: u64) -> PropResult {
    let mut rng = gen::rng(seed);
    for k in 0..n {
        let m = 2 + k % 3;
        if k % 2 == 0 {
            let a = gen::invertible_dq(&mut rng, m);
            let d = a.qdet().map_err(|e| e.to_string())?;
            if d.st.norm() <= 1e-10 {
                return Err(format!("invertible matrix with vanishing qdet at {k}"));
            }
            let inv = a.inverse().map_err(|e| e.to_string())?;
            let g = a.mul(&inv).sub(&DQMatrix::identity(m));
            if g.st().max_abs() > 1e-8 || g.inf().max_abs() > 1e-8 {
                return Err(format!("inverse residual too large at instance {k}"));
            }
        } else {
            let mut a = gen::dq_matrix(&mut rng, m, m);
            // duplicate the standard part of one row: singular standard part
            for j in 0..m {
                let mut e = a.get(1, j);
                e.st = a.get(0, j).st;
                a.set(1, j, e);
            }
            let d = a.qdet().map_err(|e| e.to_string())?;
            let scale = 1.0 + a.frobenius().st.powi(2 * m as i32);
            if d.st.norm() > 1e-8 * scale {
                return Err(format!("degenerate matrix with appreciable qdet at {k}"));
            }
            if a.inverse().is_ok() {
                return Err(format!("degenerate matrix inverted at instance {k}"));
            }
        }
    }
    Ok(())
}
