//! Helpers shared by the integration suites.
#![allow(dead_code)] // each test target uses its own subset

use qlucas_core::{QPoly, Quaternion};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Random polynomial of exactly the given degree with coefficient components
/// uniform in [−1, 1]; the leading coefficient is kept away from zero so the
/// degree is honest.
pub fn random_qpoly(rng: &mut ChaCha8Rng, degree: usize) -> QPoly {
    loop {
        let mut coeffs: Vec<Quaternion> = (0..=degree).map(|_| random_quaternion(rng)).collect();
        if coeffs[degree].norm() < 0.2 {
            continue;
        }
        coeffs.truncate(degree + 1);
        let p = QPoly::from_coeffs(coeffs);
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

/// Random monic polynomial of the given degree.
pub fn random_monic(rng: &mut ChaCha8Rng, degree: usize) -> QPoly {
    let mut coeffs: Vec<Quaternion> = (0..degree).map(|_| random_quaternion(rng)).collect();
    coeffs.push(qlucas_core::quat::ONE);
    QPoly::from_coeffs(coeffs)
}

/// Runs one acceptance criterion, printing a single PASS/FAIL line.
pub fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let outcome = std::panic::catch_unwind(body);
    match &outcome {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(_) => println!("acceptance {name}: FAIL"),
    }
    if let Err(payload) = outcome {
        std::panic::resume_unwind(payload);
    }
}
