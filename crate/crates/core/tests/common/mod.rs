#![allow(dead_code)]

use bcl_core::{PowerSeries, SymbolGBeta};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the closed unit disk.
pub fn unit_disk(rng: &mut impl Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Polynomial with `f(0) = 0`, degree in `1..=max_degree`, coefficients in the unit disk.
pub fn random_h0_poly(rng: &mut impl Rng, max_degree: usize) -> PowerSeries {
    let deg = rng.gen_range(1..=max_degree);
    let mut c = vec![Complex64::new(0.0, 0.0)];
    c.extend((0..deg).map(|_| unit_disk(rng)));
    if c[deg].norm() == 0.0 {
        c[deg] = Complex64::new(1.0, 0.0);
    }
    PowerSeries::new(c).unwrap()
}

/// One to four pole terms at distinct angles, plus a small polynomial `h`.
pub fn random_symbol(rng: &mut impl Rng, beta: f64) -> SymbolGBeta {
    let k = rng.gen_range(1..=4);
    let base = rng.gen_range(0.0..std::f64::consts::TAU);
    let terms: Vec<(Complex64, f64)> = (0..k)
        .map(|j| {
            let mut a = unit_disk(rng) * 2.0;
            if a.norm() < 1e-3 {
                a = Complex64::new(1.0, 0.0);
            }
            // separated angles keep the b_j distinct
            (a, base + j as f64 * 1.3 + rng.gen_range(0.0..0.5))
        })
        .collect();
    let h_deg = rng.gen_range(0..=8);
    let h = PowerSeries::new((0..=h_deg).map(|_| unit_disk(rng) * 0.5).collect()).unwrap();
    SymbolGBeta::from_angles(&terms, beta, h).unwrap()
}
