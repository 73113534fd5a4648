//! The ring `H[X]` with right-side coefficients.
//!
//! A polynomial is stored densely as `Σ X^k a_k` with the coefficient of
//! `X^k` at index `k`. Multiplication (the star product) treats `X` as
//! commuting with coefficients, so the product is the plain convolution
//! `c_n = Σ a_h·b_k` over `h + k = n`, with the quaternion factors kept in
//! that order. Left evaluation puts the powers on the left: `P(x) = Σ x^h a_h`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{self, Quaternion};

/// Threshold for the realness assertion of the normal polynomial.
const NORMAL_RESIDUE_TOL: f64 = 1e-10;

/// A quaternionic polynomial in canonical trimmed form: the last stored
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly {
    coeffs: Vec<Quaternion>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(a: Quaternion) -> Self {
        QPoly::from_coeffs(vec![a])
    }

    /// Builds from coefficients indexed by degree, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last().is_some_and(Quaternion::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// The monomial `X^k·a`.
    pub fn monomial(k: usize, a: Quaternion) -> Self {
        if a.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![quat::ZERO; k + 1];
        coeffs[k] = a;
        QPoly { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> Quaternion {
        self.coeffs.get(k).copied().unwrap_or(quat::ZERO)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Quaternion> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(quat::ONE)
    }

    /// Largest coefficient norm (0 for the zero polynomial).
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(Quaternion::norm).fold(0.0, f64::max)
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|a| a.x == 0.0 && a.y == 0.0 && a.z == 0.0)
    }

    /// Star product: convolution with the factors multiplied left-to-right.
    pub fn star_mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![quat::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (h, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, &b) in rhs.coeffs.iter().enumerate() {
                out[h + k] = out[h + k] + a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        QPoly::from_coeffs(coeffs)
    }

    /// Left evaluation `Σ x^h a_h` via left-sided Horner:
    /// `a_0 + x·(a_1 + x·(a_2 + …))`.
    pub fn eval_left(&self, x: Quaternion) -> Quaternion {
        let mut acc = quat::ZERO;
        for &a in self.coeffs.iter().rev() {
            acc = x * acc + a;
        }
        acc
    }

    /// Coefficientwise quaternion conjugate `P^c`.
    pub fn conj_poly(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(Quaternion::conj).collect(),
        }
    }

    /// Formal derivative `Σ X^{k-1}·k·a_k`.
    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, &a)| a * (k + 1) as f64)
            .collect();
        QPoly::from_coeffs(coeffs)
    }

    /// The normal polynomial `N(P) = P·P^c`, which is real. The imaginary
    /// residue of the product is asserted below `1e-10·(1 + scale)` so that
    /// algebra bugs surface here instead of propagating.
    pub fn normal_poly(&self) -> Result<RealPoly> {
        let prod = self.star_mul(&self.conj_poly());
        let scale = prod.coeff_scale();
        let threshold = NORMAL_RESIDUE_TOL * (1.0 + scale);
        let residue = prod
            .coeffs
            .iter()
            .map(Quaternion::im_norm)
            .fold(0.0, f64::max);
        if residue > threshold {
            return Err(Error::NormalResidue { residue, threshold });
        }
        Ok(RealPoly::from_coeffs(prod.coeffs.iter().map(|a| a.w).collect()))
    }

    /// The monic polynomial `P·a_d⁻¹` with the same left roots.
    pub fn monicize(&self) -> Result<QPoly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = lead.inverse()?;
        let mut coeffs: Vec<Quaternion> = self.coeffs.iter().map(|&a| a * inv).collect();
        *coeffs.last_mut().expect("nonzero polynomial") = quat::ONE;
        Ok(QPoly { coeffs })
    }

    /// Divides by the real quadratic `Ψ(X) = X² − 2·re·X + sqnorm` (the
    /// characteristic polynomial of the sphere with real part `re` and
    /// squared norm `sqnorm`), returning `(Q, c1, c0)` with
    /// `P = Ψ·Q + X·c1 + c0`. Since `Ψ` is real, `P(y) = y·c1 + c0` for every
    /// `y` on that sphere. Inputs of degree < 2 come back unchanged as the
    /// remainder.
    pub fn divide_by_real_quadratic(&self, re: f64, sqnorm: f64) -> (QPoly, Quaternion, Quaternion) {
        let d = match self.degree() {
            Some(d) if d >= 2 => d,
            _ => return (QPoly::zero(), self.coeff(1), self.coeff(0)),
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![quat::ZERO; d - 1];
        for k in (2..=d).rev() {
            let q = rem[k];
            quot[k - 2] = q;
            rem[k - 1] = rem[k - 1] + q * (2.0 * re);
            rem[k - 2] = rem[k - 2] - q * sqnorm;
        }
        (QPoly::from_coeffs(quot), rem[1], rem[0])
    }

    pub fn approx_eq(&self, other: &QPoly, tol: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let scale = self.coeff_scale().max(other.coeff_scale());
        (0..n).all(|k| (self.coeff(k) - other.coeff(k)).norm() <= tol * (1.0 + scale))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::write_qpoly(f, self)
    }
}

/// A polynomial with real coefficients, index = degree, trimmed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (h, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in rhs.coeffs.iter().enumerate() {
                out[h + k] += a * b;
            }
        }
        RealPoly::from_coeffs(out)
    }

    pub fn derivative(&self) -> RealPoly {
        if self.coeffs.len() <= 1 {
            return RealPoly::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (k + 1) as f64)
            .collect();
        RealPoly::from_coeffs(coeffs)
    }

    /// Embeds into `H[X]` with real coefficients.
    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }

    pub fn approx_eq(&self, other: &RealPoly, tol: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let scale = self.coeff_scale().max(other.coeff_scale());
        (0..n).all(|k| (self.coeff(k) - other.coeff(k)).abs() <= tol * (1.0 + scale))
    }
}

impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a == 1.0 => f.write_str("X")?,
                1 => write!(f, "{a} X")?,
                _ if a == 1.0 => write!(f, "X^{k}")?,
                _ => write!(f, "{a} X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{I, J, K, ONE};

    fn x_minus(a: Quaternion) -> QPoly {
        QPoly::from_coeffs(vec![-a, ONE])
    }

    #[test]
    fn star_product_examples() {
        // (X−i)·(X−j) = X² − X(i+j) + k
        let p = x_minus(I).star_mul(&x_minus(J));
        assert_eq!(p, QPoly::from_coeffs(vec![K, -(I + J), ONE]));
        // reversing the factors flips the constant term: (X−j)·(X−i) = X² − X(i+j) − k
        let q = x_minus(J).star_mul(&x_minus(I));
        assert_eq!(q, QPoly::from_coeffs(vec![-K, -(I + J), ONE]));
        // identity
        let one = QPoly::constant(ONE);
        assert_eq!(p.star_mul(&one), p);
    }

    #[test]
    fn eval_left_examples() {
        let p = x_minus(I).star_mul(&x_minus(J));
        assert!(p.eval_left(I).is_zero());
        // direct expansion: j² − j(i+j) + k = 2k
        assert_eq!(p.eval_left(J), K * 2.0);
        assert_eq!(p.eval_left(quat::ZERO), K);
    }

    #[test]
    fn conj_poly_examples() {
        assert_eq!(x_minus(I).conj_poly(), QPoly::from_coeffs(vec![I, ONE]));
        let real = RealPoly::from_coeffs(vec![1.0, 0.0, 3.0]).to_qpoly();
        assert_eq!(real.conj_poly(), real);
        let p = x_minus(I).star_mul(&x_minus(J));
        assert_eq!(p.conj_poly(), QPoly::from_coeffs(vec![-K, I + J, ONE]));
    }

    #[test]
    fn normal_poly_examples() {
        // N(X−i) = X² + 1
        let n = x_minus(I).normal_poly().unwrap();
        assert_eq!(n, RealPoly::from_coeffs(vec![1.0, 0.0, 1.0]));
        // N(P) = N(P^c)
        let p = QPoly::from_coeffs(vec![I + J, K * 2.0, ONE]);
        let a = p.normal_poly().unwrap();
        let b = p.conj_poly().normal_poly().unwrap();
        assert!(a.approx_eq(&b, 1e-14));
    }

    #[test]
    fn derivative_examples() {
        let p = x_minus(I).star_mul(&x_minus(J));
        assert_eq!(p.derivative(), QPoly::from_coeffs(vec![-(I + J), ONE * 2.0]));
        assert!(p.derivative().eval_left((I + J) * 0.5).is_zero());
        assert!(QPoly::constant(K).derivative().is_zero());
    }

    #[test]
    fn monicize_examples() {
        // (X²i + X)·(−i) = X² − Xi
        let p = QPoly::from_coeffs(vec![quat::ZERO, ONE, I]);
        assert_eq!(p.monicize().unwrap(), QPoly::from_coeffs(vec![quat::ZERO, -I, ONE]));
        // 3X + 6i → X + 2i
        let p = QPoly::from_coeffs(vec![I * 6.0, ONE * 3.0]);
        assert_eq!(p.monicize().unwrap(), QPoly::from_coeffs(vec![I * 2.0, ONE]));
        let monic = x_minus(I).star_mul(&x_minus(J));
        assert_eq!(monic.monicize().unwrap(), monic);
        assert!(QPoly::zero().monicize().is_err());
    }

    #[test]
    fn divide_by_real_quadratic_examples() {
        // X² − X(i+j) + k over X² + 1: Q = 1, c1 = −(i+j), c0 = k − 1
        let p = x_minus(I).star_mul(&x_minus(J));
        let (quot, c1, c0) = p.divide_by_real_quadratic(0.0, 1.0);
        assert_eq!(quot, QPoly::constant(ONE));
        assert_eq!(c1, -(I + J));
        assert_eq!(c0, K - ONE);
        // exact divisor
        let p = RealPoly::from_coeffs(vec![1.0, 0.0, 1.0]).to_qpoly();
        let (quot, c1, c0) = p.divide_by_real_quadratic(0.0, 1.0);
        assert_eq!(quot, QPoly::constant(ONE));
        assert!(c1.is_zero() && c0.is_zero());
        // X³ = (X²+1)·X − X
        let p = QPoly::monomial(3, ONE);
        let (quot, c1, c0) = p.divide_by_real_quadratic(0.0, 1.0);
        assert_eq!(quot, QPoly::monomial(1, ONE));
        assert_eq!(c1, -ONE);
        assert!(c0.is_zero());
    }

    #[test]
    fn division_reconstructs_the_input() {
        let p = QPoly::from_coeffs(vec![I - J, K * 0.5, ONE + I, J * 2.0, ONE]);
        for (re, sq) in [(0.25, 1.5), (-1.0, 1.0), (0.0, 4.0)] {
            let (quot, c1, c0) = p.divide_by_real_quadratic(re, sq);
            let psi = RealPoly::from_coeffs(vec![sq, -2.0 * re, 1.0]).to_qpoly();
            let rebuilt = psi
                .star_mul(&quot)
                .add(&QPoly::from_coeffs(vec![c0, c1]));
            assert!(rebuilt.approx_eq(&p, 1e-12));
        }
    }

    #[test]
    fn remainder_evaluates_the_sphere() {
        let p = QPoly::from_coeffs(vec![I - J, K * 0.5, ONE + I, J * 2.0, ONE]);
        let (_, c1, c0) = p.divide_by_real_quadratic(0.25, 1.5);
        // any y with re = 0.25, |y|² = 1.5 satisfies P(y) = y·c1 + c0
        let rad = (1.5f64 - 0.0625).sqrt();
        for u in [crate::quat::ImUnit::I, crate::quat::ImUnit::new(1.0, 2.0, -1.0).unwrap()] {
            let y = u.embed(0.25, rad);
            let direct = p.eval_left(y);
            let via_rem = y * c1 + c0;
            assert!(direct.approx_eq(&via_rem, 1e-13));
        }
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!(QPoly::from_coeffs(vec![quat::ZERO, quat::ZERO]).degree(), None);
        assert_eq!(QPoly::constant(ONE).degree(), Some(0));
    }

    #[test]
    fn derivative_commutes_with_constant_factor() {
        let p = QPoly::from_coeffs(vec![I, J + K, ONE * 2.0, I - J]);
        let c = QPoly::constant(Quaternion::new(0.3, -1.0, 0.2, 0.9));
        let a = p.star_mul(&c).derivative();
        let b = p.derivative().star_mul(&c);
        assert!(a.approx_eq(&b, 1e-14));
    }
}
