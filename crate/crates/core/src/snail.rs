//! Slice projections, per-plane hulls and the Gauss-Lucas snail.
//!
//! For an imaginary unit `I`, the slice polynomial `P^I` keeps only the
//! component of each coefficient inside the plane `C_I`. Its root hull
//! `K_{C_I}(P^I)` is a plane region (the whole plane when `P^I` is constant),
//! and the snail is the union of those regions over all planes. A nonreal
//! point determines its own plane, so membership there is a single exact
//! hull query; real points see every plane and are decided by sampling the
//! sphere of planes with local refinement.

use serde::Serialize;

use crate::croots;
use crate::croots::CPoly;
use crate::error::{Error, Result};
use crate::hull2d::{self, Hull2D};
use crate::qpoly::QPoly;
use crate::quat::{ImUnit, Quaternion};
use crate::util::par_map;

/// Tolerance used for per-plane hull queries inside cross-section scans.
const SECTION_HULL_TOL: f64 = 1e-9;
const SECTION_SCAN_STEPS: usize = 256;
const SECTION_BISECTIONS: usize = 60;
const SECTION_RHO_TOL: f64 = 1e-6;

/// Sampling parameters for real-point membership and related scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnailConfig {
    /// Plane-lattice size for real-point queries.
    pub n_samples: usize,
    /// Membership tolerance (hull collar width).
    pub tol: f64,
    /// Local refinement rounds around the best sampled plane.
    pub refine_depth: usize,
}

impl Default for SnailConfig {
    fn default() -> Self {
        SnailConfig {
            n_samples: 2048,
            tol: 1e-9,
            refine_depth: 2,
        }
    }
}

/// The hull of a slice polynomial inside its plane: a plane region in
/// `(alpha, beta)` coordinates, or the whole plane when the slice is
/// constant.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceHull {
    pub plane: ImUnit,
    pub region: SliceRegion,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SliceRegion {
    AllPlane,
    Hull(Hull2D),
}

impl SliceRegion {
    pub fn distance(&self, p: (f64, f64)) -> f64 {
        match self {
            SliceRegion::AllPlane => 0.0,
            SliceRegion::Hull(h) => h.distance(p),
        }
    }

    pub fn contains(&self, p: (f64, f64), tol: f64) -> bool {
        self.distance(p) <= tol
    }
}

/// How a membership query was settled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "via", rename_all = "snake_case")]
pub enum SnailWitness {
    /// Exact query in the plane the point itself determines.
    Plane { plane: ImUnit },
    /// Accepted at a sampled plane (real query points).
    Sampled { plane: ImUnit },
    /// No plane accepted; smallest hull distance seen.
    Miss { min_distance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnailMembership {
    pub member: bool,
    #[serde(flatten)]
    pub witness: SnailWitness,
}

/// The slice polynomial `P^I`: coefficients projected into `C_I`, read as a
/// complex polynomial in plane coordinates. The degree may drop.
pub fn slice_poly(p: &QPoly, plane: ImUnit) -> CPoly {
    CPoly::from_coeffs(
        p.coeffs()
            .iter()
            .map(|a| {
                let (alpha, beta) = a.project_plane(plane);
                num_complex::Complex64::new(alpha, beta)
            })
            .collect(),
    )
}

/// The per-plane hull `K_{C_I}(P^I)`. Constant slices (including the zero
/// slice) give the whole plane.
pub fn slice_hull(p: &QPoly, plane: ImUnit, tol: f64) -> Result<SliceHull> {
    let slice = slice_poly(p, plane);
    if slice.is_constant() {
        return Ok(SliceHull {
            plane,
            region: SliceRegion::AllPlane,
        });
    }
    let roots = croots::complex_roots(&slice, tol)?;
    let pts: Vec<(f64, f64)> = roots.iter().map(|r| (r.value.re, r.value.im)).collect();
    Ok(SliceHull {
        plane,
        region: SliceRegion::Hull(hull2d::convex_hull(&pts)),
    })
}

/// Quasi-uniform deterministic lattice of `n` imaginary units, one per
/// unoriented plane: a Fibonacci spiral over the open upper hemisphere, so
/// no two samples are antipodal.
pub fn sample_sphere(n: usize) -> Vec<ImUnit> {
    assert!(n >= 1, "sample count must be positive");
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..n)
        .map(|t| {
            let z = (t as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden_angle * t as f64;
            ImUnit::new(r * phi.cos(), r * phi.sin(), z).expect("unit vector")
        })
        .collect()
}

/// Deterministic lattice over the spherical cap of angular radius
/// `cap_angle` around `center`.
fn sample_cap(center: ImUnit, cap_angle: f64, n: usize) -> Vec<ImUnit> {
    let e1 = center.any_orthogonal();
    let (cx, cy, cz) = center.cross(&e1);
    let e2 = ImUnit::new(cx, cy, cz).expect("orthogonal frame");
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let cos_cap = cap_angle.cos();
    (0..n)
        .map(|t| {
            let cos_theta = 1.0 - (1.0 - cos_cap) * (t as f64 + 0.5) / n as f64;
            let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
            let phi = golden_angle * t as f64;
            let (ex, ey, ez) = e1.components();
            let (fx, fy, fz) = e2.components();
            let (ux, uy, uz) = center.components();
            let dir_x = cos_theta * ux + sin_theta * (phi.cos() * ex + phi.sin() * fx);
            let dir_y = cos_theta * uy + sin_theta * (phi.cos() * ey + phi.sin() * fy);
            let dir_z = cos_theta * uz + sin_theta * (phi.cos() * ez + phi.sin() * fz);
            ImUnit::new(dir_x, dir_y, dir_z).expect("unit vector")
        })
        .collect()
}

/// Snail membership of `q` with a witness.
///
/// Nonreal points are settled exactly in their own plane (`beta ≥ 0` by
/// construction, which removes the `±I` double cover). Real points are
/// decided by scanning the plane lattice, then refining around the nearest
/// miss.
pub fn snail_contains(p: &QPoly, q: &Quaternion, cfg: &SnailConfig) -> Result<SnailMembership> {
    match q.axis() {
        Ok(plane) => {
            let hull = slice_hull(p, plane, croots::DEFAULT_CLUSTER_TOL)?;
            let pt = (q.re(), q.im_norm());
            let distance = hull.region.distance(pt);
            if distance <= cfg.tol {
                Ok(SnailMembership {
                    member: true,
                    witness: SnailWitness::Plane { plane },
                })
            } else {
                Ok(SnailMembership {
                    member: false,
                    witness: SnailWitness::Miss { min_distance: distance },
                })
            }
        }
        Err(_) => real_point_membership(p, q.re(), cfg),
    }
}

fn real_point_membership(p: &QPoly, alpha: f64, cfg: &SnailConfig) -> Result<SnailMembership> {
    let lattice = sample_sphere(cfg.n_samples);
    let scan = scan_planes(p, alpha, &lattice, cfg.tol)?;
    if let Some(hit) = scan.hit {
        return Ok(SnailMembership {
            member: true,
            witness: SnailWitness::Sampled { plane: hit },
        });
    }
    let (mut best_plane, mut best_distance) = scan.best;

    // shrink a cap around the best candidate; hull regions vary continuously
    // in the plane for monic inputs, so this converges toward the infimum
    let mut cap = 2.0 * (2.0 / cfg.n_samples as f64).sqrt();
    for _ in 0..cfg.refine_depth {
        let local = sample_cap(best_plane, cap, 64);
        let scan = scan_planes(p, alpha, &local, cfg.tol)?;
        if let Some(hit) = scan.hit {
            return Ok(SnailMembership {
                member: true,
                witness: SnailWitness::Sampled { plane: hit },
            });
        }
        if scan.best.1 < best_distance {
            (best_plane, best_distance) = scan.best;
        }
        cap *= 0.3;
    }
    Ok(SnailMembership {
        member: false,
        witness: SnailWitness::Miss { min_distance: best_distance },
    })
}

struct PlaneScan {
    hit: Option<ImUnit>,
    best: (ImUnit, f64),
}

fn scan_planes(p: &QPoly, alpha: f64, planes: &[ImUnit], tol: f64) -> Result<PlaneScan> {
    let distances: Vec<Result<f64>> = par_map(planes.len(), |idx| {
        let hull = slice_hull(p, planes[idx], croots::DEFAULT_CLUSTER_TOL)?;
        Ok(hull.region.distance((alpha, 0.0)))
    });
    let mut best: Option<(ImUnit, f64)> = None;
    for (plane, dist) in planes.iter().zip(distances) {
        let dist = dist?;
        if dist <= tol {
            return Ok(PlaneScan {
                hit: Some(*plane),
                best: (*plane, dist),
            });
        }
        if best.is_none() || dist < best.expect("set").1 {
            best = Some((*plane, dist));
        }
    }
    let best = best.expect("plane set is never empty");
    Ok(PlaneScan { hit: None, best })
}

/// Norm bound `√(Σ|a_k|²)` on the snail of a monic polynomial.
pub fn snail_radius_bound(p: &QPoly) -> Result<f64> {
    match p.degree() {
        Some(d) if d >= 2 => {}
        Some(d) => return Err(Error::DegreeTooLow { got: d, min: 2 }),
        None => return Err(Error::ZeroPolynomial),
    }
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(p.coeffs().iter().map(|a| a.norm_sq()).sum::<f64>().sqrt())
}

/// Radial profile of the snail section in the imaginary plane spanned by
/// `plane` and a deterministic orthogonal unit: for each polar angle
/// `theta ∈ [0, π]` measured from `+plane`, the outermost radius whose point
/// still belongs to the snail (0 when the ray misses it entirely).
///
/// Each ray lives inside the single plane `cos·I + sin·J`, so membership
/// along it is one hull query per radius; the outer boundary is bracketed by
/// an outward scan and then bisected.
pub fn snail_cross_section(
    p: &QPoly,
    plane: ImUnit,
    theta_steps: usize,
) -> Result<Vec<(f64, f64)>> {
    snail_cross_section_with(p, plane, plane.any_orthogonal(), theta_steps)
}

/// Same as [`snail_cross_section`] with an explicit in-plane orthogonal
/// direction, which pins down the half-plane the angles sweep through.
pub fn snail_cross_section_with(
    p: &QPoly,
    plane: ImUnit,
    ortho: ImUnit,
    theta_steps: usize,
) -> Result<Vec<(f64, f64)>> {
    assert!(theta_steps >= 2, "need at least two angular steps");
    let scan_cap = section_scan_cap(p);
    let rows: Vec<Result<(f64, f64)>> = par_map(theta_steps, |t| {
        let theta = std::f64::consts::PI * t as f64 / (theta_steps - 1) as f64;
        let rho = ray_boundary(p, plane, ortho, theta, scan_cap)?;
        Ok((theta, rho))
    });
    rows.into_iter().collect()
}

/// Outer scan limit: the snail ball bound for monic inputs, a coefficient
/// heuristic otherwise (non-monic snails can be unbounded; the scan then
/// reports the boundary within this cap).
fn section_scan_cap(p: &QPoly) -> f64 {
    snail_radius_bound(p).unwrap_or_else(|_| {
        2.0 * (1.0 + p.coeffs().iter().map(Quaternion::norm).sum::<f64>())
    })
}

fn ray_boundary(
    p: &QPoly,
    plane: ImUnit,
    ortho: ImUnit,
    theta: f64,
    scan_cap: f64,
) -> Result<f64> {
    let (pi, pj) = (plane.components(), ortho.components());
    let (sin_t, cos_t) = theta.sin_cos();
    let dir = ImUnit::new(
        cos_t * pi.0 + sin_t * pj.0,
        cos_t * pi.1 + sin_t * pj.1,
        cos_t * pi.2 + sin_t * pj.2,
    )
    .expect("unit ray direction");
    let hull = slice_hull(p, dir, croots::DEFAULT_CLUSTER_TOL)?;
    let member = |rho: f64| hull.region.contains((0.0, rho), SECTION_HULL_TOL);

    let mut last_inside: Option<usize> = None;
    for i in (0..=SECTION_SCAN_STEPS).rev() {
        if member(scan_cap * i as f64 / SECTION_SCAN_STEPS as f64) {
            last_inside = Some(i);
            break;
        }
    }
    let Some(i) = last_inside else {
        return Ok(0.0);
    };
    if i == SECTION_SCAN_STEPS {
        return Ok(scan_cap);
    }
    let mut lo = scan_cap * i as f64 / SECTION_SCAN_STEPS as f64;
    let mut hi = scan_cap * (i + 1) as f64 / SECTION_SCAN_STEPS as f64;
    for _ in 0..SECTION_BISECTIONS {
        if hi - lo <= SECTION_RHO_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if member(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
