//! Planar convex hulls, membership with a tolerance collar, and membership
//! in the circular hull of a real polynomial's root set.
//!
//! The circular hull of `N(P)` in the quaternions is never built in four
//! dimensions: a conjugate-symmetric planar root set pins it down completely,
//! so membership of `q` reduces to a planar point-in-hull query at
//! `(re q, |im q|)`.

use crate::croots::{self, CPoly};
use crate::error::Result;
use crate::qpoly::RealPoly;
use crate::quat::Quaternion;

pub type Point2 = (f64, f64);

/// A planar convex hull with explicit degenerate forms. Polygon vertices are
/// counterclockwise, starting from the lexicographic minimum.
#[derive(Debug, Clone, PartialEq)]
pub enum Hull2D {
    Empty,
    Point(Point2),
    Segment(Point2, Point2),
    Polygon(Vec<Point2>),
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn dist(a: Point2, b: Point2) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

fn dist_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let (abx, aby) = (b.0 - a.0, b.1 - a.1);
    let len_sq = abx * abx + aby * aby;
    if len_sq == 0.0 {
        return dist(p, a);
    }
    let t = (((p.0 - a.0) * abx + (p.1 - a.1) * aby) / len_sq).clamp(0.0, 1.0);
    dist(p, (a.0 + t * abx, a.1 + t * aby))
}

/// Monotone-chain convex hull. Deterministic; collinear points are dropped
/// so no three consecutive vertices are collinear.
pub fn convex_hull(points: &[Point2]) -> Hull2D {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    match pts.len() {
        0 => return Hull2D::Empty,
        1 => return Hull2D::Point(pts[0]),
        _ => {}
    }
    let scale = pts
        .iter()
        .map(|p| p.0.abs().max(p.1.abs()))
        .fold(0.0, f64::max);
    let eps = 1e-12 * (1.0 + scale * scale);

    let chain = |iter: &mut dyn Iterator<Item = Point2>| -> Vec<Point2> {
        let mut out: Vec<Point2> = Vec::new();
        for p in iter {
            while out.len() >= 2 && cross(out[out.len() - 2], out[out.len() - 1], p) <= eps {
                out.pop();
            }
            out.push(p);
        }
        out
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);

    if lower.len() >= 3 {
        return Hull2D::Polygon(lower);
    }
    // collinear within eps: the segment endpoints are the diameter pair,
    // which the lexicographic chain extremes need not be (a vertical segment
    // with rounding noise in x sorts across, not along, its direction)
    let mut ends = (pts[0], pts[0], 0.0);
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = dist(pts[i], pts[j]);
            if d > ends.2 {
                ends = (pts[i], pts[j], d);
            }
        }
    }
    if ends.2 == 0.0 {
        Hull2D::Point(pts[0])
    } else {
        Hull2D::Segment(ends.0, ends.1)
    }
}

impl Hull2D {
    /// Hull vertices in order (empty for `Empty`).
    pub fn vertices(&self) -> Vec<Point2> {
        match self {
            Hull2D::Empty => Vec::new(),
            Hull2D::Point(p) => vec![*p],
            Hull2D::Segment(a, b) => vec![*a, *b],
            Hull2D::Polygon(v) => v.clone(),
        }
    }

    /// Distance from `p` to the hull: 0 inside or on the boundary,
    /// `+∞` for the empty hull.
    pub fn distance(&self, p: Point2) -> f64 {
        match self {
            Hull2D::Empty => f64::INFINITY,
            Hull2D::Point(a) => dist(p, *a),
            Hull2D::Segment(a, b) => dist_to_segment(p, *a, *b),
            Hull2D::Polygon(v) => {
                let inside = (0..v.len()).all(|i| {
                    let a = v[i];
                    let b = v[(i + 1) % v.len()];
                    cross(a, b, p) >= 0.0
                });
                if inside {
                    0.0
                } else {
                    (0..v.len())
                        .map(|i| dist_to_segment(p, v[i], v[(i + 1) % v.len()]))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// True when `p` is inside, on the boundary, or within the `tol` collar.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.distance(p) <= tol
    }
}

/// Membership of `q` in the circular convex hull of the root set of the real
/// polynomial `np` (degree ≥ 1). This is exact for conjugate-symmetric root
/// sets, which real coefficients guarantee.
pub fn circular_hull_contains(np: &RealPoly, q: &Quaternion, tol: f64) -> Result<bool> {
    Ok(circular_hull_distance(np, q)? <= tol)
}

/// Distance from the planar image of `q` to the hull of the roots of `np`.
pub fn circular_hull_distance(np: &RealPoly, q: &Quaternion) -> Result<f64> {
    let hull = circular_hull(np)?;
    Ok(hull.distance((q.re(), q.im_norm())))
}

/// The planar hull of the complex roots of `np`.
pub fn circular_hull(np: &RealPoly) -> Result<Hull2D> {
    let roots = croots::complex_roots(&CPoly::from_real(np), croots::DEFAULT_CLUSTER_TOL)?;
    let pts: Vec<Point2> = roots.iter().map(|r| (r.value.re, r.value.im)).collect();
    Ok(convex_hull(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{I, J, ONE};

    #[test]
    fn hull_of_triangle_with_interior_point() {
        let h = convex_hull(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.2, 0.2)]);
        assert_eq!(
            h,
            Hull2D::Polygon(vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
        );
        assert!(h.contains((0.25, 0.25), 0.0));
        for p in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.2, 0.2)] {
            assert!(h.contains(p, 1e-12));
        }
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull(&[(0.0, 0.0)]), Hull2D::Point((0.0, 0.0)));
        let seg = convex_hull(&[(0.0, -1.0), (0.0, 2.0)]);
        assert_eq!(seg, Hull2D::Segment((0.0, -1.0), (0.0, 2.0)));
        assert!(seg.contains((0.0, 1.0), 1e-12));
        assert!(!seg.contains((0.5, 0.0), 1e-9));
        assert!(!Hull2D::Empty.contains((0.0, 0.0), 1e9));
        // collinear input with an interior point still collapses to a segment
        let seg = convex_hull(&[(0.0, -1.0), (0.0, 0.5), (0.0, 2.0)]);
        assert_eq!(seg, Hull2D::Segment((0.0, -1.0), (0.0, 2.0)));
    }

    #[test]
    fn circular_hull_examples() {
        // N = (X²+1)²: hull of {±i}; (i+j)/2 has |im| = 1/√2
        let np = RealPoly::from_coeffs(vec![1.0, 0.0, 2.0, 0.0, 1.0]);
        let q = (I + J) * 0.5;
        assert!(circular_hull_contains(&np, &q, 1e-9).unwrap());
        assert!(!circular_hull_contains(&np, &(I * 2.0), 1e-9).unwrap());

        // N = X^4·(X²+1)³ (the d = 5 family): hull is {0}×[−1,1]
        let base = RealPoly::from_coeffs(vec![1.0, 0.0, 1.0]);
        let mut np = RealPoly::from_coeffs(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        for _ in 0..3 {
            np = np.mul(&base);
        }
        let q = ONE * 0.3 + I * 0.1;
        assert!(!circular_hull_contains(&np, &q, 1e-9).unwrap());
        assert!(circular_hull_contains(&np, &(I * 0.99), 1e-9).unwrap());
    }

    #[test]
    fn rotation_invariance() {
        let np = RealPoly::from_coeffs(vec![2.0, -1.0, 0.5, 1.0]);
        let q = Quaternion::new(0.4, 0.3, -0.2, 0.6);
        let expected = circular_hull_contains(&np, &q, 1e-9).unwrap();
        for p in [
            Quaternion::new(1.0, 2.0, -0.5, 0.3),
            Quaternion::new(-0.2, 0.0, 1.0, 4.0),
        ] {
            let rotated = p * q * p.inverse().unwrap();
            assert_eq!(
                circular_hull_contains(&np, &rotated, 1e-9).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn monotone_in_tol() {
        let np = RealPoly::from_coeffs(vec![1.0, 0.0, 1.0]);
        let q = Quaternion::new(0.0, 0.7, 0.0, 0.0);
        if circular_hull_contains(&np, &q, 0.0).unwrap() {
            assert!(circular_hull_contains(&np, &q, 0.5).unwrap());
        }
    }

    /// Support-function oracle for membership in the circular hull of a set
    /// of conjugate root pairs: q is a member iff its planar image never
    /// beats the support of the circularized root spheres in any direction.
    fn support_oracle(spheres: &[(f64, f64)], q: &Quaternion, margin: f64) -> bool {
        let (q0, qv) = (q.re(), q.im_norm());
        for step in 0..3600 {
            let phi = std::f64::consts::TAU * step as f64 / 3600.0;
            let (s, c) = phi.sin_cos();
            let lhs = q0 * c + qv * s;
            let rhs = spheres
                .iter()
                .map(|&(re, rad)| re * c + rad * s.abs())
                .fold(f64::NEG_INFINITY, f64::max);
            if lhs > rhs + margin {
                return false;
            }
        }
        true
    }

    #[test]
    fn membership_matches_support_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            // build a real polynomial from known conjugate pairs
            let n_pairs = rng.random_range(1..=2usize);
            let mut spheres = Vec::new();
            let mut np = RealPoly::from_coeffs(vec![1.0]);
            for _ in 0..n_pairs {
                let re = rng.random_range(-1.0..1.0);
                let rad = rng.random_range(0.0..1.5);
                spheres.push((re, rad));
                np = np.mul(&RealPoly::from_coeffs(vec![re * re + rad * rad, -2.0 * re, 1.0]));
            }
            for _ in 0..20 {
                let q = Quaternion::new(
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                );
                let got = circular_hull_contains(&np, &q, 1e-9).unwrap();
                let deep_inside = support_oracle(&spheres, &q, -1e-3);
                let clearly_outside = !support_oracle(&spheres, &q, 1e-3);
                if deep_inside {
                    assert!(got, "oracle says inside, hull says outside for {q}");
                } else if clearly_outside {
                    assert!(!got, "oracle says outside, hull says inside for {q}");
                }
                // points within the ±1e-3 support band are left unclassified
            }
        }
    }
}
