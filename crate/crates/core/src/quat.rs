//! Quaternion arithmetic, imaginary units and conjugacy spheres.
//!
//! Everything downstream is built over the skew field of quaternions with
//! 64-bit float components. A conjugacy sphere is the orbit of a point under
//! conjugation `p x p⁻¹`; it is determined by the common real part and the
//! common norm of the imaginary part of its members.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative threshold under which the imaginary part counts as zero.
pub(crate) const REAL_AXIS_EPS: f64 = 1e-13;

/// A quaternion `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Scalar (real) part.
    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion with zero scalar part.
    pub fn im(&self) -> Quaternion {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn conj(&self) -> Quaternion {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn im_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// True when the imaginary part is negligible relative to the norm.
    pub fn is_real(&self) -> bool {
        self.im_norm() < REAL_AXIS_EPS * (1.0 + self.norm())
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inverse(&self) -> Result<Quaternion> {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Canonical imaginary unit with `self ∈ C_axis` — the normalized
    /// imaginary part. Real inputs have no axis; callers must branch,
    /// because a real point lies in every slice plane.
    pub fn axis(&self) -> Result<ImUnit> {
        let n = self.im_norm();
        if n < REAL_AXIS_EPS * (1.0 + self.norm()) {
            return Err(Error::RealAxis);
        }
        Ok(ImUnit {
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        })
    }

    /// Orthogonal projection onto the slice plane `C_I`, returned as plane
    /// coordinates `(alpha, beta)` with `π_I(q) = alpha + I·beta`.
    pub fn project_plane(&self, plane: ImUnit) -> (f64, f64) {
        let beta = self.x * plane.x + self.y * plane.y + self.z * plane.z;
        (self.w, beta)
    }

    /// Conjugation orbit invariants: two quaternions lie on the same sphere
    /// iff their real parts and imaginary norms agree.
    pub fn same_sphere(&self, other: &Quaternion, tol: f64) -> bool {
        (self.re() - other.re()).abs() <= tol && (self.im_norm() - other.im_norm()).abs() <= tol
    }

    /// The sphere through this point.
    pub fn sphere(&self) -> Sphere {
        Sphere {
            re: self.re(),
            rad: self.im_norm(),
        }
    }

    pub fn approx_eq(&self, other: &Quaternion, tol: f64) -> bool {
        (*self - *other).norm() <= tol * (1.0 + self.norm().max(other.norm()))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
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
    /// Hamilton product.
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.w, self.x, self.y, self.z)
    }
}

// Wire form is the 4-array [w,x,y,z], matching the polynomial JSON format.
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for c in [self.w, self.x, self.y, self.z] {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QuatVisitor;
        impl<'de> Visitor<'de> for QuatVisitor {
            type Value = Quaternion;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array [w, x, y, z] of four numbers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Quaternion, A::Error> {
                let mut c = [0.0f64; 4];
                for (i, slot) in c.iter_mut().enumerate() {
                    *slot = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(i, &"four numbers"))?;
                }
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &"four numbers"));
                }
                Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
            }
        }
        deserializer.deserialize_seq(QuatVisitor)
    }
}

/// A unit imaginary quaternion; names a slice plane `C_I` (and its square
/// is −1). Stored as the three imaginary components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImUnit {
    x: f64,
    y: f64,
    z: f64,
}

impl ImUnit {
    pub const I: ImUnit = ImUnit { x: 1.0, y: 0.0, z: 0.0 };
    pub const J: ImUnit = ImUnit { x: 0.0, y: 1.0, z: 0.0 };
    pub const K: ImUnit = ImUnit { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`; errors when the vector is too short to carry
    /// a direction.
    pub fn new(x: f64, y: f64, z: f64) -> Result<ImUnit> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 {
            return Err(Error::RealAxis);
        }
        Ok(ImUnit { x: x / n, y: y / n, z: z / n })
    }

    pub fn components(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn dot(&self, other: &ImUnit) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &ImUnit) -> (f64, f64, f64) {
        (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// A deterministic unit orthogonal to `self`.
    pub fn any_orthogonal(&self) -> ImUnit {
        let pivot = if self.x.abs() < 0.9 { ImUnit::I } else { ImUnit::J };
        let (cx, cy, cz) = self.cross(&pivot);
        ImUnit::new(cx, cy, cz).expect("cross with a non-parallel axis is nonzero")
    }

    /// The point `alpha + I·beta` of the slice plane, as a quaternion.
    pub fn embed(&self, alpha: f64, beta: f64) -> Quaternion {
        Quaternion::new(alpha, beta * self.x, beta * self.y, beta * self.z)
    }
}

impl Neg for ImUnit {
    type Output = ImUnit;
    fn neg(self) -> ImUnit {
        ImUnit { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl From<ImUnit> for Quaternion {
    fn from(u: ImUnit) -> Quaternion {
        u.as_quaternion()
    }
}

impl fmt::Display for ImUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(0,{},{},{})", self.x, self.y, self.z)
    }
}

impl Serialize for ImUnit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for c in [self.x, self.y, self.z] {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

/// A conjugacy sphere `S_x`: all quaternions with real part `re` and
/// imaginary norm `rad`. `rad = 0` encodes a single real point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub re: f64,
    pub rad: f64,
}

impl Sphere {
    pub fn new(re: f64, rad: f64) -> Self {
        Sphere { re, rad: rad.abs() }
    }

    /// Squared norm common to all members.
    pub fn norm_sq(&self) -> f64 {
        self.re * self.re + self.rad * self.rad
    }

    /// Norm common to all members.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// The member in direction `u`.
    pub fn point(&self, u: ImUnit) -> Quaternion {
        u.embed(self.re, self.rad)
    }

    pub fn contains(&self, q: &Quaternion, tol: f64) -> bool {
        (q.re() - self.re).abs() <= tol && (q.im_norm() - self.rad).abs() <= tol
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(re={}, rad={})", self.re, self.rad)
    }
}
