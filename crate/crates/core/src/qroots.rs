//! Left roots of quaternionic polynomials.
//!
//! The zero set of `N(P)` is the circularization of the zero set of `P`, so
//! every root of `P` lives on a sphere cut out by a conjugate root pair of
//! `N(P)` (or at a real root). Per sphere, dividing `P` by the sphere's real
//! characteristic quadratic leaves a remainder `X·c1 + c0` that evaluates
//! `P` on the whole sphere: a vanishing remainder means the sphere is
//! entirely roots, otherwise `y = −c0·c1⁻¹` is the single root it carries.
//! Real roots are confirmed by direct evaluation, where the remainder trick
//! degenerates.

use serde::{Deserialize, Serialize};

use crate::croots::{self, CPoly};
use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::quat::{Quaternion, Sphere};

/// Relative tolerance below which a root of `N(P)` counts as real.
const REAL_ROOT_BAND: f64 = 1e-8;

/// Sphere-membership slack for validating extracted candidates. Honest
/// extractions land within ~1e-12 of their sphere; anything near this
/// threshold is numerical junk that must be reported, not returned.
const SPHERE_MEMBER_TOL: f64 = 1e-6;

/// Isolated left roots plus entire root spheres, both sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub isolated: Vec<Quaternion>,
    pub spheres: Vec<Sphere>,
}

impl RootSet {
    /// The conjugate point pairs `(re, ±rad)` covering the whole set: the
    /// complex image of the circularization.
    pub fn circularization(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::new();
        for s in &self.spheres {
            pts.push((s.re, s.rad));
            pts.push((s.re, -s.rad));
        }
        for q in &self.isolated {
            pts.push((q.re(), q.im_norm()));
            pts.push((q.re(), -q.im_norm()));
        }
        pts
    }

    /// Largest norm over all members (isolated points and sphere points).
    pub fn max_norm(&self) -> f64 {
        let iso = self.isolated.iter().map(Quaternion::norm).fold(0.0, f64::max);
        let sph = self.spheres.iter().map(Sphere::norm).fold(0.0, f64::max);
        iso.max(sph)
    }

    pub fn is_empty(&self) -> bool {
        self.isolated.is_empty() && self.spheres.is_empty()
    }
}

/// Scale for left-evaluation residuals at `x`.
fn eval_scale(p: &QPoly, x: &Quaternion) -> f64 {
    let deg = p.degree().unwrap_or(0) as i32;
    p.coeff_scale() * (1.0 + x.norm()).powi(deg)
}

enum Extraction {
    /// The whole sphere is a root.
    Spherical,
    /// The sphere carries exactly one root.
    Point(Quaternion),
    /// The candidate failed validation; carries the best residual seen.
    Failed { candidate: Quaternion, residual: f64 },
}

fn extract_on_sphere(p: &QPoly, sphere: &Sphere, tol: f64) -> Extraction {
    let (_, c1, c0) = p.divide_by_real_quadratic(sphere.re, sphere.norm_sq());
    let deg = p.degree().unwrap_or(0) as i32;
    let rem_scale = p.coeff_scale() * (1.0 + sphere.norm()).powi(deg);
    if c1.norm() <= tol * rem_scale {
        if c0.norm() <= tol * rem_scale {
            return Extraction::Spherical;
        }
        // c1 ≈ 0 but c0 does not vanish: nothing on this sphere can be a root
        return Extraction::Failed {
            candidate: Quaternion::real(f64::NAN),
            residual: c0.norm(),
        };
    }
    let y = -(c0 * c1.inverse().expect("c1 nonzero by the branch above"));
    let residual = p.eval_left(y).norm();
    let member_tol = SPHERE_MEMBER_TOL * (1.0 + sphere.norm());
    if residual <= tol * eval_scale(p, &y) && sphere.contains(&y, member_tol) {
        Extraction::Point(y)
    } else {
        Extraction::Failed { candidate: y, residual }
    }
}

/// Consolidates root fragments of `N(P)`. An m-fold root computed in
/// floating point splits into ~m simple approximations spread over a disc of
/// radius `~eps^(1/m)` — up to ~1e-2 for the multiplicities the normal
/// polynomial produces — far beyond any fixed clustering tolerance, and with
/// spurious imaginary parts that would misclassify real roots as thin
/// spheres. Groups are formed at increasingly coarse scales and a merge is
/// accepted only when the group's weighted mean, polished as an m-fold root
/// (Newton on the (m−1)-th derivative), drives `N` down to its evaluation
/// noise floor: a genuinely m-fold root does, a pair of nearby simple roots
/// does not, so tight-but-honest spheres survive.
fn consolidate_fragments(
    np: &CPoly,
    mut roots: Vec<(num_complex::Complex64, usize)>,
) -> Vec<(num_complex::Complex64, usize)> {
    const LEVELS: [f64; 9] = [1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 5e-2];
    for level in LEVELS {
        if roots.len() <= 1 {
            break;
        }
        let mut merged: Vec<(num_complex::Complex64, usize)> = Vec::new();
        let mut used = vec![false; roots.len()];
        for i in 0..roots.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let mut group = vec![roots[i]];
            let threshold = level * (1.0 + roots[i].0.norm());
            // transitive chaining so a fragment ring merges as one group
            loop {
                let mut grew = false;
                for j in 0..roots.len() {
                    if used[j] {
                        continue;
                    }
                    if group.iter().any(|(z, _)| (*z - roots[j].0).norm() <= threshold) {
                        group.push(roots[j]);
                        used[j] = true;
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
            if group.len() == 1 {
                merged.push(group[0]);
                continue;
            }
            let weight: usize = group.iter().map(|(_, w)| w).sum();
            let center = group
                .iter()
                .map(|(z, w)| z * *w as f64)
                .sum::<num_complex::Complex64>()
                / weight as f64;
            let polished = croots::polish_multiple(np.coeffs(), center, weight);
            if croots::at_noise_floor(np.coeffs(), polished) {
                merged.push((polished, weight));
            } else {
                // not an m-fold root: keep the fragments apart
                merged.extend(group);
            }
        }
        roots = merged;
    }
    roots
}

/// All left roots of `P` (degree ≥ 1), with residuals validated against
/// `tol` scaled by the coefficient norm.
pub fn left_roots(p: &QPoly, tol: f64) -> Result<RootSet> {
    match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeTooLow { got: 0, min: 1 }),
        Some(_) => {}
    }
    let np = p.normal_poly()?;
    let np_c = CPoly::from_real(&np);
    let nroots = croots::complex_roots(&np_c, croots::DEFAULT_CLUSTER_TOL)?;

    // merge the floating-point fragments of multiple roots before reading
    // any structure out of them; real multiple roots regain a clean axis
    // position here
    let fragments: Vec<(num_complex::Complex64, usize)> =
        nroots.iter().map(|r| (r.value, r.multiplicity)).collect();
    let consolidated = consolidate_fragments(&np_c, fragments);

    let mut isolated: Vec<Quaternion> = Vec::new();
    let mut spheres: Vec<Sphere> = Vec::new();
    let mut pending: Vec<Sphere> = Vec::new();

    for &(z, _) in &consolidated {
        if z.im.abs() <= REAL_ROOT_BAND * (1.0 + z.norm()) {
            // candidate real root of P; N(P)(t) = |P(t)|² on the real axis
            let x = Quaternion::real(z.re);
            if p.eval_left(x).norm() <= tol * eval_scale(p, &x) {
                isolated.push(x);
            } else {
                // a conjugate pair squeezed against the real axis
                pending.push(Sphere::new(z.re, z.im.abs()));
            }
        } else if z.im > 0.0 {
            pending.push(Sphere::new(z.re, z.im));
        }
        // lower-half roots are the conjugate mirrors of the upper-half ones
    }

    for cand in pending {
        match extract_on_sphere(p, &cand, tol) {
            Extraction::Spherical => spheres.push(cand),
            Extraction::Point(y) => isolated.push(y),
            Extraction::Failed { candidate, residual } => {
                return Err(Error::SphereValidation {
                    re: cand.re,
                    rad: cand.rad,
                    candidate,
                    residual,
                });
            }
        }
    }

    // at most one isolated root per sphere; duplicates from retries collapse
    let mut dedup: Vec<Quaternion> = Vec::new();
    for y in isolated {
        let scale = 1.0 + y.norm();
        match dedup
            .iter()
            .find(|z| z.same_sphere(&y, SPHERE_MEMBER_TOL * scale))
        {
            None => dedup.push(y),
            Some(z) if (*z - y).norm() <= SPHERE_MEMBER_TOL * scale => {} // same point again
            Some(z) => {
                return Err(Error::DuplicateSphereRoot {
                    re: z.re(),
                    rad: z.im_norm(),
                })
            }
        }
    }
    let mut isolated = dedup;
    // drop any point that sits on a fully spherical root set
    isolated.retain(|y| {
        !spheres
            .iter()
            .any(|s| s.contains(y, SPHERE_MEMBER_TOL * (1.0 + s.norm())))
    });

    // +0.0 collapses negative zeros so they do not perturb the order
    let key = |v: f64| v + 0.0;
    spheres.sort_by(|a, b| key(a.re).total_cmp(&key(b.re)).then(key(a.rad).total_cmp(&key(b.rad))));
    isolated.sort_by(|a, b| {
        key(a.re())
            .total_cmp(&key(b.re()))
            .then(key(a.im_norm()).total_cmp(&key(b.im_norm())))
            .then(key(a.x).total_cmp(&key(b.x)))
            .then(key(a.y).total_cmp(&key(b.y)))
            .then(key(a.z).total_cmp(&key(b.z)))
    });
    Ok(RootSet { isolated, spheres })
}

/// Left roots of the derivative (degree of `P` must be ≥ 2).
pub fn critical_points(p: &QPoly, tol: f64) -> Result<RootSet> {
    match p.degree() {
        Some(d) if d >= 2 => left_roots(&p.derivative(), tol),
        Some(d) => Err(Error::DegreeTooLow { got: d, min: 2 }),
        None => Err(Error::ZeroPolynomial),
    }
}
