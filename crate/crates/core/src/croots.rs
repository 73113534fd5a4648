//! Deterministic root finder for complex-coefficient polynomials.
//!
//! Simultaneous Aberth-Ehrlich iteration started on the Cauchy bound circle,
//! followed by guarded Newton polishing and multiplicity detection by
//! clustering. Exact zero trailing coefficients are factored out up front so
//! that high-multiplicity roots at the origin stay exact.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qpoly::RealPoly;

/// Default clustering tolerance for multiplicity detection.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

const MAX_ITERATIONS: u32 = 400;
const RESIDUAL_FACTOR: f64 = 1e-8;

/// A complex polynomial in trimmed dense form, index = degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly {
    coeffs: Vec<Complex64>,
}

impl CPoly {
    pub fn from_coeffs(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn from_real(p: &RealPoly) -> Self {
        CPoly::from_coeffs(p.coeffs().iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() <= 1 {
            return CPoly::from_coeffs(Vec::new());
        }
        CPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, &c)| c * (k + 1) as f64)
                .collect(),
        )
    }
}

/// A located root with its clustered multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All roots of a polynomial, sorted lexicographically by (re, im);
/// multiplicities sum to the degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CRootList {
    roots: Vec<CRoot>,
}

impl CRootList {
    pub fn roots(&self) -> &[CRoot] {
        &self.roots
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CRoot> {
        self.roots.iter()
    }
}

/// Finds all roots of `p` with multiplicities detected by merging roots that
/// lie within `tol·(1 + max|root|)` of each other. Deterministic: identical
/// input bits give identical output bits.
pub fn complex_roots(p: &CPoly, tol: f64) -> Result<CRootList> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };

    // factor out exact zero roots
    let zero_mult = p.coeffs.iter().take_while(|c| c.re == 0.0 && c.im == 0.0).count();
    let reduced = &p.coeffs[zero_mult..];

    let mut raw: Vec<Complex64> = Vec::with_capacity(deg);
    raw.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zero_mult));
    match reduced.len() - 1 {
        0 => {}
        1 => raw.push(-reduced[0] / reduced[1]),
        2 => raw.extend(quadratic_roots(reduced[0], reduced[1], reduced[2])),
        _ => {
            let mut zs = aberth(reduced)?;
            polish(reduced, &mut zs);
            raw.extend(zs);
        }
    }

    let scale = 1.0 + raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut clustered = cluster(&raw, tol * scale);
    for root in &mut clustered {
        if root.multiplicity >= 2 && root.value.norm() > 0.0 {
            root.value = polish_multiple(&p.coeffs, root.value, root.multiplicity);
        }
    }

    // every representative must actually sit on the polynomial
    let coeff_scale = p.coeff_scale();
    for r in &clustered {
        let bound = RESIDUAL_FACTOR * coeff_scale * (1.0 + r.value.norm()).powi(deg as i32);
        let residual = p.eval(r.value).norm();
        if residual > bound {
            return Err(Error::Convergence {
                iterations: MAX_ITERATIONS,
                residual,
                best: clustered.iter().map(|c| c.value).collect(),
            });
        }
    }

    let mut roots = clustered;
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(CRootList { roots })
}

/// Odd-degree monomials of a real polynomial with coefficients above
/// `1e-12·scale`.
pub fn real_poly_odd_part(p: &RealPoly) -> Vec<(usize, f64)> {
    let threshold = 1e-12 * p.coeff_scale();
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(k, c)| k % 2 == 1 && c.abs() > threshold)
        .map(|(k, &c)| (k, c))
        .collect()
}

fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> [Complex64; 2] {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let mut s = disc.sqrt();
    if (c1.conj() * s).re < 0.0 {
        s = -s;
    }
    let q = -(c1 + s) * 0.5;
    if q.norm() > 0.0 {
        [q / c2, c0 / q]
    } else {
        let r = -c1 / (c2 * 2.0);
        [r, r]
    }
}

/// Evaluation together with `Σ|c_j||z|^j`, the scale against which the value
/// is pure rounding noise.
fn eval_with_mag(coeffs: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let zn = z.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
        mag = mag * zn + c.norm();
    }
    (acc, mag)
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = coeffs.len() - 1;
    let lead_norm = coeffs[m].norm();
    let radius = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() / lead_norm;
    let deriv: Vec<Complex64> = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(k, &c)| c * (k + 1) as f64)
        .collect();

    // start on the root bound circle, angles offset off the axes
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.25))
        .collect();

    let mut worst_residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut settled = true;
        worst_residual = 0.0;
        for k in 0..m {
            let zk = z[k];
            let (pv, mag) = eval_with_mag(coeffs, zk);
            worst_residual = worst_residual.max(pv.norm());
            // stop moving a point once its value is below the evaluation
            // noise floor; multiple roots never beat this level
            if pv.norm() <= 4.0 * f64::EPSILON * mag {
                continue;
            }
            let (pd, _) = eval_with_mag(&deriv, zk);
            let ratio = if pd.norm() > 0.0 {
                pv / pd
            } else {
                // stationary point of p: nudge and retry next sweep
                z[k] = zk + Complex64::new(1e-6 * (1.0 + zk.norm()), 1e-6);
                settled = false;
                continue;
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != k {
                    let diff = zk - zj;
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() > 1e-290 { ratio / denom } else { ratio };
            z[k] = zk - step;
            if step.norm() > 1e-14 * (1.0 + zk.norm()) {
                settled = false;
            }
        }
        if settled {
            return Ok(z);
        }
    }
    Err(Error::Convergence {
        iterations: MAX_ITERATIONS,
        residual: worst_residual,
        best: z,
    })
}

/// Refines an `mult`-fold root: it is a simple root of the `(mult−1)`-th
/// derivative, where Newton converges quadratically instead of stalling at
/// the `eps^(1/mult)` noise floor of the original polynomial. Guarded: the
/// iterate is kept only while the derivative residual improves and the point
/// stays near its cluster.
pub(crate) fn polish_multiple(coeffs: &[Complex64], start: Complex64, mult: usize) -> Complex64 {
    if coeffs.len() <= mult {
        return start;
    }
    let mut target: Vec<Complex64> = coeffs.to_vec();
    for _ in 0..(mult - 1) {
        target = target[1..]
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (k + 1) as f64)
            .collect();
    }
    let deriv: Vec<Complex64> = target[1..]
        .iter()
        .enumerate()
        .map(|(k, &c)| c * (k + 1) as f64)
        .collect();
    let leash = 1e-2 * (1.0 + start.norm());
    let mut z = start;
    let (mut best, _) = eval_with_mag(&target, z);
    for _ in 0..30 {
        let (pv, mag) = eval_with_mag(&target, z);
        if pv.norm() <= 4.0 * f64::EPSILON * mag {
            break;
        }
        let (pd, _) = eval_with_mag(&deriv, z);
        if pd.norm() == 0.0 {
            break;
        }
        let candidate = z - pv / pd;
        let (pc, _) = eval_with_mag(&target, candidate);
        if pc.norm() < best.norm() && (candidate - start).norm() <= leash {
            best = pc;
            z = candidate;
        } else {
            break;
        }
    }
    z
}

/// True when the polynomial value at `z` is indistinguishable from rounding
/// noise of its own evaluation.
pub(crate) fn at_noise_floor(coeffs: &[Complex64], z: Complex64) -> bool {
    let (pv, mag) = eval_with_mag(coeffs, z);
    pv.norm() <= 64.0 * f64::EPSILON * mag
}

/// Guarded Newton: take steps only while the residual strictly improves.
fn polish(coeffs: &[Complex64], roots: &mut [Complex64]) {
    let deriv: Vec<Complex64> = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(k, &c)| c * (k + 1) as f64)
        .collect();
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (pv, _) = eval_with_mag(coeffs, *z);
            let (pd, _) = eval_with_mag(&deriv, *z);
            if pd.norm() == 0.0 {
                break;
            }
            let candidate = *z - pv / pd;
            let (pc, _) = eval_with_mag(coeffs, candidate);
            if pc.norm() < pv.norm() {
                *z = candidate;
            } else {
                break;
            }
        }
    }
}

/// Merges points within `tol` into multiplicity clusters (transitively) and
/// represents each cluster by its arithmetic mean, which is well conditioned
/// even when the individual approximations of a multiple root are not.
fn cluster(points: &[Complex64], tol: f64) -> Vec<CRoot> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut sums: Vec<(Complex64, usize)> = vec![(Complex64::new(0.0, 0.0), 0); n];
    for (i, &p) in points.iter().enumerate() {
        let r = find(&mut parent, i);
        sums[r].0 += p;
        sums[r].1 += 1;
    }
    sums.into_iter()
        .filter(|&(_, count)| count > 0)
        .map(|(sum, count)| CRoot {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}
