//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them).

mod common;

use common::{criterion, random_monic, random_qpoly, random_quaternion};
use qlucas_core::bounds::{self, cauchy_c, cauchy_c_complex, cauchy_rho, slice_sup_c};
use qlucas_core::croots::{self, complex_roots, real_poly_odd_part, CPoly};
use qlucas_core::glverify::{
    counterexample_family, is_gauss_lucas, odd_monomial_obstruction, perturbation_probe,
    theorem_check,
};
use qlucas_core::hull2d::{circular_hull_contains, convex_hull};
use qlucas_core::qroots::{critical_points, left_roots};
use qlucas_core::quat::{self, ImUnit, I, J, ONE};
use qlucas_core::snail::{sample_sphere, slice_poly, snail_contains, snail_cross_section, SnailConfig};
use qlucas_core::{QPoly, Quaternion, RealPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn x_minus(a: Quaternion) -> QPoly {
    QPoly::from_coeffs(vec![-a, ONE])
}

fn limacon_cubic() -> QPoly {
    // X³ + 3X + 2i
    QPoly::from_coeffs(vec![I * 2.0, ONE * 3.0, quat::ZERO, ONE])
}

#[test]
fn criterion_01_intro_example() {
    criterion("01 intro example", || {
        let p = x_minus(I).star_mul(&x_minus(J));
        let roots = left_roots(&p, 1e-9).unwrap();
        assert!(roots.spheres.is_empty());
        assert_eq!(roots.isolated.len(), 1);
        assert!((roots.isolated[0] - I).norm() <= 1e-9);

        let crits = critical_points(&p, 1e-9).unwrap();
        assert!(crits.spheres.is_empty());
        assert_eq!(crits.isolated.len(), 1);
        let midpoint = (I + J) * 0.5;
        assert!((crits.isolated[0] - midpoint).norm() <= 1e-9);

        // the circular hull of N(P) contains the critical point…
        let np = p.normal_poly().unwrap();
        assert!(circular_hull_contains(&np, &midpoint, 1e-9).unwrap());

        // …while the naive hull of V(P) = {i} does not
        let naive = convex_hull(&[(0.0, 1.0)]);
        assert!(!naive.contains((midpoint.re(), midpoint.im_norm()), 1e-6));
    });
}

#[test]
fn criterion_02_family_formulas_exact() {
    criterion("02 family formulas exact", || {
        for d in 3..=12usize {
            let fam = counterexample_family(d).unwrap();
            assert_eq!(fam.built, fam.expected, "member expansion, d={d}");
            assert_eq!(
                fam.built.derivative(),
                fam.expected_derivative,
                "derivative expansion, d={d}"
            );
            let np1 = fam.built.derivative().normal_poly().unwrap();
            assert_eq!(np1, fam.expected_normal_derivative, "N(P') expansion, d={d}");
            // the single odd monomial is −4·X^(2d−5)
            assert_eq!(real_poly_odd_part(&np1), vec![(2 * d - 5, -4.0)], "odd part, d={d}");
        }
    });
}

#[test]
fn criterion_03_counterexample_classification() {
    criterion("03 counterexample classification", || {
        for d in 3..=12usize {
            let fam = counterexample_family(d).unwrap();
            let (applies, e) = odd_monomial_obstruction(&fam.built, 1e-9).unwrap();
            assert!(applies, "obstruction must apply at d={d}");
            assert_eq!(e, Some(d - 3), "recovered e, d={d}");

            let report = is_gauss_lucas(&fam.built, 1e-9).unwrap();
            assert!(!report.is_gauss_lucas, "family must fail at d={d}");
            assert!(
                report.violating_points.iter().any(|q| q.re().abs() > 1e-6),
                "a violating point must escape through its real part, d={d}"
            );
        }
    });
}

#[test]
fn criterion_04_theorem_on_random_monic() {
    criterion("04 theorem on 500 random monic", || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = SnailConfig {
            n_samples: 2048,
            tol: 1e-6,
            refine_depth: 2,
        };
        for trial in 0..500 {
            let degree = 2 + (trial % 7);
            let p = random_monic(&mut rng, degree);
            let report = theorem_check(&p, &cfg)
                .unwrap_or_else(|e| panic!("trial {trial} (degree {degree}): {e}"));
            assert!(report.theorem_holds);
        }
    });
}

#[test]
fn criterion_05_limacon_reproduction() {
    criterion("05 limacon reproduction", || {
        let p = limacon_cubic();
        let crits = critical_points(&p, 1e-9).unwrap();
        assert!(crits.isolated.is_empty());
        assert_eq!(crits.spheres.len(), 1);
        assert!(crits.spheres[0].re.abs() <= 1e-9 && (crits.spheres[0].rad - 1.0).abs() <= 1e-9);

        let rows = snail_cross_section(&p, ImUnit::I, 180).unwrap();
        assert_eq!(rows.len(), 180);
        let mut max_dev: f64 = 0.0;
        for &(theta, rho) in &rows {
            max_dev = max_dev.max((rho - 2.0 * (theta / 3.0).cos()).abs());
        }
        assert!(max_dev <= 1e-3, "limaçon deviation {max_dev}");
        assert!((rows[0].1 - 2.0).abs() <= 1e-3, "boundary contact at 2i");
        assert!((rows[179].1 - 1.0).abs() <= 1e-3, "rho(pi) = 1");

        // every sampled snail point stays in the radius-2 imaginary ball
        let np = p.normal_poly().unwrap();
        let ortho = ImUnit::I.any_orthogonal();
        for &(theta, rho) in &rows {
            for r in [rho, 0.5 * rho] {
                let pt = ImUnit::I.as_quaternion() * (r * theta.cos())
                    + ortho.as_quaternion() * (r * theta.sin());
                assert!(pt.re().abs() < 1e-12);
                assert!(
                    circular_hull_contains(&np, &pt, 1e-6).unwrap(),
                    "snail point at theta={theta}, r={r} escapes K(N(P))"
                );
            }
        }

        // −1.5i lies in K(N(P)) but outside the snail
        let probe = I * (-1.5);
        assert!(circular_hull_contains(&np, &probe, 1e-9).unwrap());
        let m = snail_contains(&p, &probe, &SnailConfig::default()).unwrap();
        assert!(!m.member);
    });
}

#[test]
fn criterion_06_degree_two_proposition() {
    criterion("06 degree-2 proposition", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut done = 0;
        while done < 500 {
            let p = random_qpoly(&mut rng, 2);
            let report = is_gauss_lucas(&p, 1e-9).unwrap();
            assert!(report.is_gauss_lucas, "degree 2 is always Gauss-Lucas");

            // recover a factorization root pair and compare midpoints
            let q = p.monicize().unwrap();
            let roots = left_roots(&q, 1e-9).unwrap();
            let x1 = roots
                .isolated
                .first()
                .copied()
                .unwrap_or_else(|| roots.spheres[0].point(ImUnit::I));
            let x2 = -q.coeff(1) - x1;
            // the conjugate of the co-factor root annihilates Q^c
            let qc = q.conj_poly();
            assert!(qc.eval_left(x2.conj()).norm() <= 1e-7 * (1.0 + x2.norm().powi(2)));

            let midpoint = (x1 + x2) * 0.5;
            let crits = critical_points(&p, 1e-9).unwrap();
            let cp = crits
                .isolated
                .first()
                .copied()
                .unwrap_or_else(|| crits.spheres[0].point(ImUnit::I));
            assert!(
                (cp - midpoint).norm() <= 1e-8,
                "critical point {cp} vs midpoint {midpoint}"
            );
            done += 1;
        }
    });
}

#[test]
fn criterion_07_bounds_chain() {
    criterion("07 bounds chain", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..1000 {
            let degree = 1 + (trial % 10);
            let p = random_qpoly(&mut rng, degree);
            let c = cauchy_c(&p);
            let rho = cauchy_rho(&p).unwrap();
            assert!(rho < c, "rho must be strictly below C (trial {trial})");
            let roots = left_roots(&p, 1e-6).unwrap();
            assert!(
                roots.max_norm() <= rho + 1e-6,
                "root norm chain broken at trial {trial}: {} vs {rho}",
                roots.max_norm()
            );
        }
        // closed form for the family derivative
        for d in 3..=15usize {
            let fam = counterexample_family(d).unwrap();
            let c = cauchy_c(&fam.built.derivative());
            let expected = (8.0 * (d * d) as f64 - 24.0 * d as f64 + 24.0).sqrt() / d as f64;
            assert!((c - expected).abs() <= 1e-12, "C(P') closed form at d={d}");
        }
    });
}

#[test]
fn criterion_08_slice_bound_beats_classic() {
    criterion("08 slice bound beats classic", || {
        let sqrt6 = 6.0f64.sqrt();
        for d in 3..=12usize {
            let fam = counterexample_family(d).unwrap();
            let derivative = fam.built.derivative();
            let (estimate, _) = slice_sup_c(&derivative, 4096);
            assert!(
                estimate <= sqrt6 + 1e-9,
                "slice estimate {estimate} above √6 at d={d}"
            );
            if d == 11 || d == 12 {
                let classic = cauchy_c(&derivative);
                assert!(
                    estimate < classic - 1e-6,
                    "slice bound must beat classic at d={d}: {estimate} vs {classic}"
                );
            }
        }
        // C(P^I) matches √(4+4·α₁·α₃) on every sampled plane
        let fam = counterexample_family(5).unwrap();
        for plane in sample_sphere(4096) {
            let c = cauchy_c_complex(&slice_poly(&fam.built, plane));
            let (a1, _, a3) = plane.components();
            let closed_form = (4.0 + 4.0 * a1 * a3).sqrt();
            assert!(
                (c - closed_form).abs() <= 1e-9,
                "slice C mismatch at {plane}: {c} vs {closed_form}"
            );
        }
    });
}

#[test]
fn criterion_09_algebraic_property_suite() {
    criterion("09 algebraic property suite", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // evaluation identity on 1000 random triples
        let mut done = 0;
        while done < 1000 {
            let p = random_qpoly(&mut rng, 1 + (done % 5));
            let q = random_qpoly(&mut rng, 1 + ((done / 5) % 5));
            let x = random_quaternion(&mut rng);
            let px = p.eval_left(x);
            if px.norm() < 1e-3 {
                continue;
            }
            let lhs = p.star_mul(&q).eval_left(x);
            let conj_pt = px.inverse().unwrap() * x * px;
            let rhs = px * q.eval_left(conj_pt);
            let scale = 1.0 + lhs.norm().max(rhs.norm());
            assert!(
                (lhs - rhs).norm() <= 1e-8 * scale,
                "evaluation identity broke: {lhs} vs {rhs}"
            );
            done += 1;
        }
        // and at actual roots of the left factor: (P·Q)(x) = 0 when P(x) = 0
        for trial in 0..100 {
            let x = random_quaternion(&mut rng);
            let p = x_minus(x).star_mul(&random_qpoly(&mut rng, 1 + (trial % 3)));
            let q = random_qpoly(&mut rng, 1 + (trial % 4));
            let value = p.star_mul(&q).eval_left(x);
            assert!(value.norm() <= 1e-10 * (1.0 + x.norm()).powi(8));
        }
        // realness of the normal polynomial (asserted internally)
        for trial in 0..200 {
            let p = random_qpoly(&mut rng, 1 + (trial % 8));
            p.normal_poly().unwrap();
        }
        // circularization consistency between left roots and N(P) roots
        for trial in 0..200 {
            let p = random_qpoly(&mut rng, 1 + (trial % 6));
            let roots = left_roots(&p, 1e-8).unwrap();
            let np = p.normal_poly().unwrap();
            let nroots = complex_roots(&CPoly::from_real(&np), croots::DEFAULT_CLUSTER_TOL).unwrap();
            let circ = roots.circularization();
            for r in nroots.iter() {
                assert!(
                    circ.iter().any(|&(re, im)| {
                        ((re - r.value.re).powi(2) + (im - r.value.im).powi(2)).sqrt() < 1e-5
                    }),
                    "normal root {} unexplained (trial {trial})",
                    r.value
                );
            }
            for &(re, im) in &circ {
                assert!(
                    nroots.iter().any(|r| {
                        ((re - r.value.re).powi(2) + (im - r.value.im).powi(2)).sqrt() < 1e-5
                    }),
                    "spurious circularization point ({re},{im}) (trial {trial})"
                );
            }
        }
    });
}

#[test]
fn criterion_10_snail_example_grids() {
    criterion("10 snail example grids", || {
        let cfg = SnailConfig::default();

        // sn(X² − Xi) is the ball (x₁−1/2)² + x₂² + x₃² ≤ 1/4
        let q = QPoly::from_coeffs(vec![quat::ZERO, -I, ONE]);
        let steps = 10;
        for ix in 0..steps {
            for iy in 0..steps {
                for iz in 0..steps {
                    let x1 = -0.4 + 1.8 * ix as f64 / (steps - 1) as f64;
                    let x2 = -0.8 + 1.6 * iy as f64 / (steps - 1) as f64;
                    let x3 = -0.8 + 1.6 * iz as f64 / (steps - 1) as f64;
                    let ball_radius =
                        ((x1 - 0.5).powi(2) + x2 * x2 + x3 * x3).sqrt();
                    if (ball_radius - 0.5).abs() <= 1e-6 {
                        continue; // boundary collar
                    }
                    let pt = Quaternion::new(0.0, x1, x2, x3);
                    let member = snail_contains(&q, &pt, &cfg).unwrap().member;
                    assert_eq!(
                        member,
                        ball_radius < 0.5,
                        "ball test at ({x1},{x2},{x3})"
                    );
                }
            }
        }

        // sn(X²i + X) is the slab {x₁·i + x₂·j + x₃·k : 0 < x₁ ≤ 1} ∪ {0}
        let p = QPoly::from_coeffs(vec![quat::ZERO, ONE, I]);
        for ix in 0..steps {
            for iy in 0..steps {
                for iz in 0..steps {
                    let x1 = -0.5 + 2.0 * ix as f64 / (steps - 1) as f64;
                    let x2 = -1.0 + 2.0 * iy as f64 / (steps - 1) as f64;
                    let x3 = -1.0 + 2.0 * iz as f64 / (steps - 1) as f64;
                    if x1.abs() <= 1e-6 || (x1 - 1.0).abs() <= 1e-6 {
                        continue; // boundary collar
                    }
                    let pt = Quaternion::new(0.0, x1, x2, x3);
                    if pt.is_real() {
                        continue;
                    }
                    let member = snail_contains(&p, &pt, &cfg).unwrap().member;
                    assert_eq!(
                        member,
                        x1 > 0.0 && x1 < 1.0,
                        "slab test at ({x1},{x2},{x3})"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_11_openness_probes() {
    criterion("11 openness probes", || {
        let fam = counterexample_family(5).unwrap();
        let fraction = perturbation_probe(&fam.built, 1e-3, 50, 0).unwrap();
        assert_eq!(fraction, 1.0, "family member must stay non-Gauss-Lucas");

        let mut coeffs = vec![-ONE];
        coeffs.extend(std::iter::repeat_n(quat::ZERO, 4));
        coeffs.push(ONE);
        let p = QPoly::from_coeffs(coeffs);
        let fraction = perturbation_probe(&p, 1e-3, 50, 0).unwrap();
        assert_eq!(fraction, 1.0, "X⁵−1 must stay Gauss-Lucas");
    });
}

#[test]
fn acceptance_sanity_real_poly_type() {
    // keep the RealPoly import honest: N(P) of the limaçon cubic
    let np = limacon_cubic().normal_poly().unwrap();
    assert_eq!(np, RealPoly::from_coeffs(vec![4.0, 0.0, 9.0, 0.0, 6.0, 0.0, 1.0]));
    // rho for X²+1 exists and respects the chain
    let p = RealPoly::from_coeffs(vec![1.0, 0.0, 1.0]).to_qpoly();
    let report = bounds::verify_root_bound_sampled(&p, 1e-9, 32).unwrap();
    assert!(report.rho.unwrap() <= report.c_of_p);
}
