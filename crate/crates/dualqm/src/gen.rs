//! Seeded random instance generation for property suites and the CLI
//! check runner. A fixed seed fully determines every instance.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dcmat::DCMatrix;
use crate::dqmat::DQMatrix;
use crate::dual::{DualComplex, DualQuaternion, Quaternion, Tol};
use crate::spectra::{herm_eig_dc, herm_eig_dq};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

pub fn dual_complex(rng: &mut ChaCha8Rng) -> DualComplex {
    DualComplex::new(
        Complex64::new(unit(rng), unit(rng)),
        Complex64::new(unit(rng), unit(rng)),
    )
}

pub fn quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(unit(rng), unit(rng), unit(rng), unit(rng))
}

pub fn dual_quaternion(rng: &mut ChaCha8Rng) -> DualQuaternion {
    DualQuaternion::new(quaternion(rng), quaternion(rng))
}

pub fn dc_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DCMatrix {
    let entries = (0..rows * cols).map(|_| dual_complex(rng)).collect();
    DCMatrix::new(rows, cols, entries).expect("positive dims")
}

pub fn dq_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DQMatrix {
    let entries = (0..rows * cols).map(|_| dual_quaternion(rng)).collect();
    DQMatrix::new(rows, cols, entries).expect("positive dims")
}

/// Hermitian dual complex matrix: `B + B*`.
pub fn herm_dc(rng: &mut ChaCha8Rng, m: usize) -> DCMatrix {
    let b = dc_matrix(rng, m, m);
    b.add(&b.adjoint())
}

/// PSD Hermitian dual complex matrix: `B* B`.
pub fn psd_dc(rng: &mut ChaCha8Rng, m: usize) -> DCMatrix {
    let b = dc_matrix(rng, m, m);
    b.adjoint().mul(&b)
}

/// Hermitian dual quaternion matrix: `B + B*`.
pub fn herm_dq(rng: &mut ChaCha8Rng, m: usize) -> DQMatrix {
    let b = dq_matrix(rng, m, m);
    b.add(&b.adjoint())
}

/// PSD Hermitian dual quaternion matrix: `B* B`.
pub fn psd_dq(rng: &mut ChaCha8Rng, m: usize) -> DQMatrix {
    let b = dq_matrix(rng, m, m);
    b.adjoint().mul(&b)
}

/// Dual unitary complex matrix: eigenvector factor of a random Hermitian.
pub fn unitary_dc(rng: &mut ChaCha8Rng, m: usize) -> DCMatrix {
    let h = herm_dc(rng, m);
    herm_eig_dc(&h, &Tol::default())
        .expect("construction is Hermitian")
        .u
}

/// Partially unitary dual complex matrix: first k columns of a unitary.
pub fn partial_unitary_dc(rng: &mut ChaCha8Rng, m: usize, k: usize) -> DCMatrix {
    let u = unitary_dc(rng, m);
    let mut entries = Vec::with_capacity(m * k);
    for i in 0..m {
        for j in 0..k {
            entries.push(u.get(i, j));
        }
    }
    DCMatrix::new(m, k, entries).expect("positive dims")
}

/// Dual quaternion unitary matrix via a random Hermitian decomposition.
pub fn unitary_dq(rng: &mut ChaCha8Rng, m: usize) -> DQMatrix {
    let h = herm_dq(rng, m);
    herm_eig_dq(&h, &Tol::default())
        .expect("construction is Hermitian")
        .u
}

/// Invertible dual quaternion matrix: random draw, shifted by a multiple
/// of the identity when the standard part is too close to singular.
pub fn invertible_dq(rng: &mut ChaCha8Rng, m: usize) -> DQMatrix {
    let mut a = dq_matrix(rng, m, m);
    loop {
        let d = a.qdet().expect("square").st.norm();
        if d > 1e-6 {
            return a;
        }
        let shift = DQMatrix::identity(m);
        let entries = a
            .entries()
            .iter()
            .zip(shift.entries())
            .map(|(&x, &s)| x + s.scale(2.0))
            .collect();
        a = DQMatrix::new(m, m, entries).expect("positive dims");
    }
}
