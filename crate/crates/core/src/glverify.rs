//! Gauss-Lucas classification and the obstruction family.
//!
//! A polynomial is Gauss-Lucas when every critical point lies in the
//! circular hull of the roots of its normal polynomial. Degree 2 always
//! qualifies; from degree 3 on there is a concrete family
//! `X^{d−3}·(X−i)·(X−j)·(X−k)` that never does, certified without any root
//! computation by the odd-monomial obstruction: the hull collapses into the
//! imaginary hyperplane while `N(P′)` keeps a critical point off it. The
//! snail containment, by contrast, holds for every polynomial, and
//! `theorem_check` treats any counterexample to it as a library bug.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::croots::real_poly_odd_part;
use crate::error::{Error, Result};
use crate::hull2d;
use crate::qpoly::{QPoly, RealPoly};
use crate::qroots::critical_points;
use crate::quat::{self, ImUnit, Quaternion};
use crate::snail::{snail_contains, SnailConfig, SnailWitness};

/// A point counts as violating only when its hull distance exceeds this
/// multiple of the query tolerance, separating genuine escapes from
/// root-finder noise.
const VIOLATION_FACTOR: f64 = 10.0;

/// Tolerance used to classify perturbed polynomials in the probe.
const PROBE_TOL: f64 = 1e-9;

/// Classification result. The snail fields are filled by [`theorem_check`];
/// [`is_gauss_lucas`] leaves them at their trivial values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GLReport {
    pub is_gauss_lucas: bool,
    /// Critical points outside the circular hull of the normal roots.
    pub violating_points: Vec<Quaternion>,
    pub theorem_holds: bool,
    pub snail_witnesses: Vec<TheoremWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremWitness {
    pub point: Quaternion,
    #[serde(flatten)]
    pub witness: SnailWitness,
}

/// Two hull representatives per critical sphere; the hull is rotation
/// invariant, so these are interchangeable there.
fn hull_representatives(sphere: &crate::quat::Sphere) -> [Quaternion; 2] {
    [
        ImUnit::I.embed(sphere.re, sphere.rad),
        ImUnit::I.embed(sphere.re, -sphere.rad),
    ]
}

/// Eight spread-out representatives per critical sphere for the
/// plane-sensitive snail check: the coordinate axes plus two generic
/// directions.
fn snail_representatives(sphere: &crate::quat::Sphere) -> Vec<Quaternion> {
    let generic1 = ImUnit::new(1.0, 1.0, 1.0).expect("unit");
    let generic2 = ImUnit::new(2.0, -1.0, 2.0).expect("unit");
    [
        ImUnit::I,
        -ImUnit::I,
        ImUnit::J,
        -ImUnit::J,
        ImUnit::K,
        -ImUnit::K,
        generic1,
        generic2,
    ]
    .iter()
    .map(|u| u.embed(sphere.re, sphere.rad))
    .collect()
}

/// Tests the inclusion of all critical points in the circular hull of the
/// normal polynomial's roots (degree ≥ 2).
pub fn is_gauss_lucas(p: &QPoly, tol: f64) -> Result<GLReport> {
    let crits = critical_points(p, tol)?;
    let np = p.normal_poly()?;
    let hull = hull2d::circular_hull(&np)?;

    let mut violating = Vec::new();
    let mut check = |q: Quaternion| {
        if hull.distance((q.re(), q.im_norm())) > VIOLATION_FACTOR * tol {
            violating.push(q);
        }
    };
    for q in &crits.isolated {
        check(*q);
    }
    for s in &crits.spheres {
        for rep in hull_representatives(s) {
            check(rep);
        }
    }
    Ok(GLReport {
        is_gauss_lucas: violating.is_empty(),
        violating_points: violating,
        theorem_holds: true,
        snail_witnesses: Vec::new(),
    })
}

/// The obstruction family member of degree `d ≥ 3` together with the three
/// closed-form expansions the construction must reproduce exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleFamily {
    /// `X^{d−3}·(X−i)·(X−j)·(X−k)` assembled by star products.
    pub built: QPoly,
    /// Closed-form expansion of the member itself.
    pub expected: QPoly,
    /// Closed-form expansion of its derivative.
    pub expected_derivative: QPoly,
    /// Closed-form expansion of the derivative's normal polynomial.
    pub expected_normal_derivative: RealPoly,
}

pub fn counterexample_family(d: usize) -> Result<CounterexampleFamily> {
    if d < 3 {
        return Err(Error::DegreeTooLow { got: d, min: 3 });
    }
    let x_minus = |a: Quaternion| QPoly::from_coeffs(vec![-a, quat::ONE]);
    let built = QPoly::monomial(d - 3, quat::ONE)
        .star_mul(&x_minus(quat::I))
        .star_mul(&x_minus(quat::J))
        .star_mul(&x_minus(quat::K));

    let ipjpk = quat::I + quat::J + quat::K;
    let imjpk = quat::I - quat::J + quat::K;

    let mut coeffs = vec![quat::ZERO; d + 1];
    coeffs[d] = quat::ONE;
    coeffs[d - 1] = -ipjpk;
    coeffs[d - 2] = imjpk;
    coeffs[d - 3] = quat::ONE;
    let expected = QPoly::from_coeffs(coeffs);

    let df = d as f64;
    let mut coeffs = vec![quat::ZERO; d];
    coeffs[d - 1] = quat::ONE * df;
    coeffs[d - 2] = -ipjpk * (df - 1.0);
    coeffs[d - 3] = imjpk * (df - 2.0);
    if d > 3 {
        coeffs[d - 4] = quat::ONE * (df - 3.0);
    }
    let expected_derivative = QPoly::from_coeffs(coeffs);

    let mut coeffs = vec![0.0; 2 * d - 1];
    coeffs[2 * d - 2] = df * df;
    coeffs[2 * d - 4] = 3.0 * (df - 1.0) * (df - 1.0);
    coeffs[2 * d - 5] = -4.0;
    coeffs[2 * d - 6] = 3.0 * (df - 2.0) * (df - 2.0);
    if d > 3 {
        coeffs[2 * d - 8] = (df - 3.0) * (df - 3.0);
    }
    let expected_normal_derivative = RealPoly::from_coeffs(coeffs);

    Ok(CounterexampleFamily {
        built,
        expected,
        expected_derivative,
        expected_normal_derivative,
    })
}

/// Shape test certifying non-membership without any root computation:
/// `N(P)` must equal `X^{2e}·(X²+1)^{d−e}` for some `e < d` and `N(P′)` must
/// carry exactly one odd-degree monomial. Returns `(applies, e)`.
pub fn odd_monomial_obstruction(p: &QPoly, tol: f64) -> Result<(bool, Option<usize>)> {
    let d = match p.degree() {
        Some(d) if d >= 3 => d,
        Some(d) => return Err(Error::DegreeTooLow { got: d, min: 3 }),
        None => return Err(Error::ZeroPolynomial),
    };
    let np = p.normal_poly()?;
    let scale = np.coeff_scale();
    let threshold = tol * (1.0 + scale);

    // lowest degree carrying a coefficient
    let low = np.coeffs().iter().position(|c| c.abs() > threshold);
    let shape_e = match low {
        Some(low) if low % 2 == 0 && low / 2 < d => {
            let e = low / 2;
            let mut shape = RealPoly::from_coeffs(vec![1.0]);
            let quad = RealPoly::from_coeffs(vec![1.0, 0.0, 1.0]);
            for _ in 0..(d - e) {
                shape = shape.mul(&quad);
            }
            let mut shifted = vec![0.0; 2 * e];
            shifted.extend_from_slice(shape.coeffs());
            let shape = RealPoly::from_coeffs(shifted);
            if np.approx_eq(&shape, tol) {
                Some(e)
            } else {
                None
            }
        }
        _ => None,
    };
    let Some(e) = shape_e else {
        return Ok((false, None));
    };
    let np1 = p.derivative().normal_poly()?;
    let odd = real_poly_odd_part(&np1);
    if odd.len() == 1 {
        Ok((true, Some(e)))
    } else {
        Ok((false, None))
    }
}

/// Checks that every critical point belongs to the snail. The containment
/// is a theorem, so a failed check is reported as an error carrying the
/// escaping point, not as a negative result.
pub fn theorem_check(p: &QPoly, cfg: &SnailConfig) -> Result<GLReport> {
    let hull_report = is_gauss_lucas(p, cfg.tol)?;
    let crits = critical_points(p, cfg.tol)?;

    let mut points: Vec<Quaternion> = crits.isolated.clone();
    for s in &crits.spheres {
        points.extend(snail_representatives(s));
    }

    let mut witnesses = Vec::with_capacity(points.len());
    for point in points {
        let membership = snail_contains(p, &point, cfg)?;
        if !membership.member {
            let distance = match membership.witness {
                SnailWitness::Miss { min_distance } => min_distance,
                _ => f64::NAN,
            };
            return Err(Error::TheoremViolation { point, distance });
        }
        witnesses.push(TheoremWitness {
            point,
            witness: membership.witness,
        });
    }
    Ok(GLReport {
        is_gauss_lucas: hull_report.is_gauss_lucas,
        violating_points: hull_report.violating_points,
        theorem_holds: true,
        snail_witnesses: witnesses,
    })
}

/// Uniform quaternion in the closed ball of radius `radius`.
fn ball_sample(rng: &mut ChaCha8Rng, radius: f64) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        );
        if q.norm_sq() <= 1.0 {
            return q * radius;
        }
    }
}

/// Statistical openness witness: perturbs every coefficient by quaternions
/// of norm ≤ `epsilon` and reports the fraction of trials whose
/// classification matches the unperturbed one. Not a proof — a probe.
pub fn perturbation_probe(
    p: &QPoly,
    epsilon: f64,
    n_trials: usize,
    seed: u64,
) -> Result<f64> {
    let baseline = is_gauss_lucas(p, PROBE_TOL)?.is_gauss_lucas;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0usize;
    for _ in 0..n_trials {
        let coeffs: Vec<Quaternion> = p
            .coeffs()
            .iter()
            .map(|&a| a + ball_sample(&mut rng, epsilon))
            .collect();
        let perturbed = QPoly::from_coeffs(coeffs);
        if is_gauss_lucas(&perturbed, PROBE_TOL)?.is_gauss_lucas == baseline {
            agree += 1;
        }
    }
    if n_trials == 0 {
        return Ok(1.0);
    }
    Ok(agree as f64 / n_trials as f64)
}
