//! Exact-rational dual complex arithmetic, used as an oracle for the
//! floating-point determinant paths on small matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Complex number with rational components.
#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        CRat::new(Rat::one(), Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        CRat::new(rat(n, 1), Rat::zero())
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn neg(&self) -> CRat {
        CRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let f = |r: &Rat| {
            let n: f64 = r.numer().to_string().parse().unwrap();
            let d: f64 = r.denom().to_string().parse().unwrap();
            n / d
        };
        (f(&self.re), f(&self.im))
    }
}

/// Dual complex number over exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCRat {
    pub st: CRat,
    pub inf: CRat,
}

impl DualCRat {
    pub fn new(st: CRat, inf: CRat) -> Self {
        DualCRat { st, inf }
    }

    pub fn zero() -> Self {
        DualCRat::new(CRat::zero(), CRat::zero())
    }

    pub fn from_ints(st: i64, inf: i64) -> Self {
        DualCRat::new(CRat::from_int(st), CRat::from_int(inf))
    }

    pub fn add(&self, o: &DualCRat) -> DualCRat {
        DualCRat::new(self.st.add(&o.st), self.inf.add(&o.inf))
    }

    pub fn neg(&self) -> DualCRat {
        DualCRat::new(self.st.neg(), self.inf.neg())
    }

    pub fn mul(&self, o: &DualCRat) -> DualCRat {
        DualCRat::new(
            self.st.mul(&o.st),
            self.st.mul(&o.inf).add(&self.inf.mul(&o.st)),
        )
    }
}

/// Exact Leibniz determinant of a row-major square matrix of dual rationals.
pub fn det_leibniz_exact(entries: &[DualCRat], m: usize) -> DualCRat {
    assert_eq!(entries.len(), m * m);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut acc = DualCRat::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = DualCRat::new(CRat::one(), CRat::zero());
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&entries[i * m + j]);
        }
        if parity(p) {
            term = term.neg();
        }
        acc = acc.add(&term);
    });
    acc
}

fn parity(p: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
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
