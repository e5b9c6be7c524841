//! Scalar arithmetic for quaternions, dual reals, dual complex numbers and
//! dual quaternions.
//!
//! Every dual scalar is a `(standard, infinitesimal)` pair; multiplication
//! truncates the epsilon-squared term by construction, so nilpotency never
//! has to be checked at runtime.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default appreciability threshold: a dual scalar counts as appreciable
/// when the magnitude of its standard part exceeds this.
pub const TAU_ZERO: f64 = 1e-10;

/// Default simple-root threshold scale for characteristic-root classification.
pub const TAU_DERIV: f64 = 1e-8;

/// Default relative tolerance for clustering equal eigenvalues/singular values.
pub const CLUSTER_REL: f64 = 1e-6;

/// Tolerance bundle threaded through the operations that need thresholds.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tol {
    pub tau_zero: f64,
    pub tau_deriv: f64,
    pub cluster_rel: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            tau_zero: TAU_ZERO,
            tau_deriv: TAU_DERIV,
            cluster_rel: CLUSTER_REL,
        }
    }
}

fn sgn(u: f64) -> f64 {
    if u > 0.0 {
        1.0
    } else if u < 0.0 {
        -1.0
    } else {
        0.0
    }
}

// ---------------------------------------------------------------------------
// Quaternion
// ---------------------------------------------------------------------------

/// A real quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub fn from_real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// Complex pair (u, v) with `q = u + v j`.
    pub fn complex_parts(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    pub fn from_complex_parts(u: Complex64, v: Complex64) -> Self {
        Quaternion::new(u.re, u.im, v.re, v.im)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real part of `self * other.conj()`, the Euclidean dot product.
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scale(&self, a: f64) -> Self {
        Quaternion::new(self.w * a, self.x * a, self.y * a, self.z * a)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n <= TAU_ZERO * TAU_ZERO {
            return Err(Error::NotAppreciable);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// Imaginary part as a quaternion with zero real part.
    pub fn imag(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

// ---------------------------------------------------------------------------
// DualReal
// ---------------------------------------------------------------------------

/// A dual real number `st + inf * eps` with `eps^2 = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualReal {
    pub st: f64,
    pub inf: f64,
}

impl DualReal {
    pub const fn new(st: f64, inf: f64) -> Self {
        DualReal { st, inf }
    }

    pub const ZERO: DualReal = DualReal::new(0.0, 0.0);
    pub const ONE: DualReal = DualReal::new(1.0, 0.0);

    pub fn appreciable(&self) -> bool {
        self.st.abs() > TAU_ZERO
    }

    pub fn appreciable_with(&self, tau_zero: f64) -> bool {
        self.st.abs() > tau_zero
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.appreciable() {
            return Err(Error::NotAppreciable);
        }
        let s = 1.0 / self.st;
        Ok(DualReal::new(s, -s * s * self.inf))
    }

    /// Lexicographic total order on (standard, infinitesimal) parts.
    ///
    /// Comparison is exact so that trichotomy and transitivity hold; any
    /// tolerance handling belongs to the verification layer.
    pub fn total_cmp(&self, other: &DualReal) -> Ordering {
        match self.st.total_cmp(&other.st) {
            Ordering::Equal => self.inf.total_cmp(&other.inf),
            o => o,
        }
    }

    /// Absolute value: `|st| + sgn(st) inf eps` when appreciable, else `|inf| eps`.
    pub fn abs(&self) -> DualReal {
        if self.st != 0.0 {
            DualReal::new(self.st.abs(), sgn(self.st) * self.inf)
        } else {
            DualReal::new(0.0, self.inf.abs())
        }
    }

    /// Integer power `st^k + k st^(k-1) inf eps`.
    pub fn powi(&self, k: i32) -> Result<DualReal> {
        if k == 0 {
            return Ok(DualReal::ONE);
        }
        if k < 0 && !self.appreciable() {
            return Err(Error::NotAppreciable);
        }
        let kf = f64::from(k);
        Ok(DualReal::new(
            self.st.powi(k),
            kf * self.st.powi(k - 1) * self.inf,
        ))
    }

    /// Square root of an appreciable positive dual number.
    pub fn sqrt(&self) -> Result<DualReal> {
        if !self.appreciable() || self.st < 0.0 {
            return Err(Error::Domain(
                "sqrt requires an appreciable positive dual number".into(),
            ));
        }
        let r = self.st.sqrt();
        Ok(DualReal::new(r, self.inf / (2.0 * r)))
    }

    pub fn scale(&self, a: f64) -> DualReal {
        DualReal::new(self.st * a, self.inf * a)
    }
}

impl Add for DualReal {
    type Output = DualReal;
    fn add(self, o: DualReal) -> DualReal {
        DualReal::new(self.st + o.st, self.inf + o.inf)
    }
}

impl Sub for DualReal {
    type Output = DualReal;
    fn sub(self, o: DualReal) -> DualReal {
        DualReal::new(self.st - o.st, self.inf - o.inf)
    }
}

impl Neg for DualReal {
    type Output = DualReal;
    fn neg(self) -> DualReal {
        DualReal::new(-self.st, -self.inf)
    }
}

impl Mul for DualReal {
    type Output = DualReal;
    fn mul(self, o: DualReal) -> DualReal {
        DualReal::new(self.st * o.st, self.st * o.inf + self.inf * o.st)
    }
}

// ---------------------------------------------------------------------------
// DualComplex
// ---------------------------------------------------------------------------

/// A dual complex number `st + inf * eps`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualComplex {
    pub st: Complex64,
    pub inf: Complex64,
}

impl DualComplex {
    pub const fn new(st: Complex64, inf: Complex64) -> Self {
        DualComplex { st, inf }
    }

    pub const ZERO: DualComplex = DualComplex::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const ONE: DualComplex = DualComplex::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));

    pub fn from_real(st: f64) -> Self {
        DualComplex::new(Complex64::new(st, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn from_dual_real(d: DualReal) -> Self {
        DualComplex::new(Complex64::new(d.st, 0.0), Complex64::new(d.inf, 0.0))
    }

    pub fn appreciable(&self) -> bool {
        self.st.norm() > TAU_ZERO
    }

    pub fn conj(&self) -> DualComplex {
        DualComplex::new(self.st.conj(), self.inf.conj())
    }

    pub fn inv(&self) -> Result<DualComplex> {
        if !self.appreciable() {
            return Err(Error::NotAppreciable);
        }
        let s = self.st.inv();
        Ok(DualComplex::new(s, -s * self.inf * s))
    }

    /// Squared magnitude as a dual real: `(|st|^2, 2 Re(conj(st) inf))`.
    pub fn abs_sqr(&self) -> DualReal {
        DualReal::new(
            self.st.norm_sqr(),
            2.0 * (self.st.conj() * self.inf).re,
        )
    }

    /// Magnitude as a dual real, the scalar case of the dual Frobenius norm.
    pub fn magnitude(&self) -> DualReal {
        if self.st.norm() != 0.0 {
            let n = self.st.norm();
            DualReal::new(n, (self.st.conj() * self.inf).re / n)
        } else {
            DualReal::new(0.0, self.inf.norm())
        }
    }

    pub fn scale(&self, a: Complex64) -> DualComplex {
        DualComplex::new(self.st * a, self.inf * a)
    }
}

impl Add for DualComplex {
    type Output = DualComplex;
    fn add(self, o: DualComplex) -> DualComplex {
        DualComplex::new(self.st + o.st, self.inf + o.inf)
    }
}

impl Sub for DualComplex {
    type Output = DualComplex;
    fn sub(self, o: DualComplex) -> DualComplex {
        DualComplex::new(self.st - o.st, self.inf - o.inf)
    }
}

impl Neg for DualComplex {
    type Output = DualComplex;
    fn neg(self) -> DualComplex {
        DualComplex::new(-self.st, -self.inf)
    }
}

impl Mul for DualComplex {
    type Output = DualComplex;
    fn mul(self, o: DualComplex) -> DualComplex {
        DualComplex::new(self.st * o.st, self.st * o.inf + self.inf * o.st)
    }
}

// ---------------------------------------------------------------------------
// DualQuaternion
// ---------------------------------------------------------------------------

/// A dual quaternion `st + inf * eps` with noncommutative multiplication.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualQuaternion {
    pub st: Quaternion,
    pub inf: Quaternion,
}

impl DualQuaternion {
    pub const fn new(st: Quaternion, inf: Quaternion) -> Self {
        DualQuaternion { st, inf }
    }

    pub const ZERO: DualQuaternion = DualQuaternion::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: DualQuaternion = DualQuaternion::new(Quaternion::ONE, Quaternion::ZERO);

    pub fn from_real(w: f64) -> Self {
        DualQuaternion::new(Quaternion::from_real(w), Quaternion::ZERO)
    }

    pub fn from_dual_real(d: DualReal) -> Self {
        DualQuaternion::new(Quaternion::from_real(d.st), Quaternion::from_real(d.inf))
    }

    pub fn from_dual_complex(d: DualComplex) -> Self {
        DualQuaternion::new(Quaternion::from_complex(d.st), Quaternion::from_complex(d.inf))
    }

    pub fn appreciable(&self) -> bool {
        self.st.norm() > TAU_ZERO
    }

    pub fn conj(&self) -> DualQuaternion {
        DualQuaternion::new(self.st.conj(), self.inf.conj())
    }

    /// `q^-1 = q_st^-1 - q_st^-1 q_in q_st^-1 eps` for appreciable q.
    pub fn inv(&self) -> Result<DualQuaternion> {
        if !self.appreciable() {
            return Err(Error::NotAppreciable);
        }
        let s = self.st.inv()?;
        Ok(DualQuaternion::new(s, -(s * self.inf * s)))
    }

    /// Magnitude as a dual number:
    /// `|q_st| + (q_st conj(q_in) + q_in conj(q_st)) / (2 |q_st|) eps`
    /// when appreciable, `|q_in| eps` otherwise.
    pub fn magnitude(&self) -> DualReal {
        let n = self.st.norm();
        if n != 0.0 {
            let cross = (self.st * self.inf.conj() + self.inf * self.st.conj()).w;
            DualReal::new(n, cross / (2.0 * n))
        } else {
            DualReal::new(0.0, self.inf.norm())
        }
    }

    /// Squared magnitude as a dual real: `(|st|^2, 2 dot(st, inf))`.
    pub fn abs_sqr(&self) -> DualReal {
        DualReal::new(self.st.norm_sqr(), 2.0 * self.st.dot(&self.inf))
    }

    pub fn scale(&self, a: f64) -> DualQuaternion {
        DualQuaternion::new(self.st.scale(a), self.inf.scale(a))
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.st + o.st, self.inf + o.inf)
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.st - o.st, self.inf - o.inf)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-self.st, -self.inf)
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(
            self.st * o.st,
            self.st * o.inf + self.inf * o.st,
        )
    }
}

// ---------------------------------------------------------------------------
// Serialization: scalars serialize as plain JSON arrays.
// ---------------------------------------------------------------------------

impl Serialize for DualReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.st, self.inf].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DualReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [st, inf] = <[f64; 2]>::deserialize(d)?;
        Ok(DualReal::new(st, inf))
    }
}

impl Serialize for DualComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[self.st.re, self.st.im], [self.inf.re, self.inf.im]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DualComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[[f64; 2]; 2]>::deserialize(d)?;
        Ok(DualComplex::new(
            Complex64::new(v[0][0], v[0][1]),
            Complex64::new(v[1][0], v[1][1]),
        ))
    }
}

impl Serialize for DualQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [
            [self.st.w, self.st.x, self.st.y, self.st.z],
            [self.inf.w, self.inf.x, self.inf.y, self.inf.z],
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DualQuaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[[f64; 4]; 2]>::deserialize(d)?;
        if v.len() != 2 {
            return Err(D::Error::custom("expected [st, inf] pair"));
        }
        Ok(DualQuaternion::new(
            Quaternion::new(v[0][0], v[0][1], v[0][2], v[0][3]),
            Quaternion::new(v[1][0], v[1][1], v[1][2], v[1][3]),
        ))
    }
}
