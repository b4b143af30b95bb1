#![allow(dead_code)]

use nhband::*;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent oracle for exp(A) on 2x2 complex matrices: scaling and
/// squaring with a plain Taylor series. Deliberately ignorant of the
/// closed-form evolution operator it is used to check.
pub fn expm(a: &Matrix2C) -> Matrix2C {
    let norm = a.max_abs();
    let mut s = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        s += 1;
        scale *= 0.5;
    }
    let b = a.scale(Complex64::new(scale, 0.0));
    let mut sum = Matrix2C::identity();
    let mut term = Matrix2C::identity();
    for n in 1..=30 {
        term = (term * b).scale(Complex64::new(1.0 / n as f64, 0.0));
        sum = sum + term;
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}

/// Minimum |E(k)| over a coarse scan; used to reject near-gapless draws.
pub fn min_gap(model: &ChiralTwoBandModel) -> f64 {
    let n = 512;
    let mut min = f64::INFINITY;
    for j in 0..n {
        let k = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        min = min.min(model.dispersion(k).norm());
    }
    min
}

pub fn random_lkc(rng: &mut ChaCha8Rng) -> ChiralTwoBandModel {
    loop {
        let m = build_lkc(ModelParamsLkc {
            u: rng.gen_range(-2.0..2.0),
            j: rng.gen_range(0.5..2.0),
            delta: rng.gen_range(0.5..2.0),
            v: rng.gen_range(-2.0..2.0),
        });
        if min_gap(&m) > 1e-2 {
            return m;
        }
    }
}

pub fn random_nnn_lkc(rng: &mut ChaCha8Rng) -> ChiralTwoBandModel {
    loop {
        let m = build_nnn_lkc(ModelParamsNnnLkc {
            u: rng.gen_range(-1.5..1.5),
            j1: rng.gen_range(0.5..1.5),
            j2: rng.gen_range(0.5..2.0),
            delta1: rng.gen_range(0.5..1.5),
            delta2: rng.gen_range(0.5..2.0),
            v: rng.gen_range(-2.5..2.5),
        });
        if min_gap(&m) > 1e-2 {
            return m;
        }
    }
}

pub fn random_nrssh(rng: &mut ChaCha8Rng) -> ChiralTwoBandModel {
    loop {
        let m = build_nrssh(ModelParamsNrssh {
            j1: rng.gen_range(0.1..2.0),
            j2: rng.gen_range(0.1..2.0),
            gamma: rng.gen_range(0.05..2.0),
        })
        .unwrap();
        if min_gap(&m) > 1e-2 {
            return m;
        }
    }
}

/// A gapped draw from one of the three built-in families.
pub fn random_model(rng: &mut ChaCha8Rng) -> ChiralTwoBandModel {
    match rng.gen_range(0..3) {
        0 => random_lkc(rng),
        1 => random_nnn_lkc(rng),
        _ => random_nrssh(rng),
    }
}

pub fn lkc(u: f64, j: f64, delta: f64, v: f64) -> ChiralTwoBandModel {
    build_lkc(ModelParamsLkc { u, j, delta, v })
}

pub fn nnn(u: f64, j1: f64, j2: f64, delta1: f64, delta2: f64, v: f64) -> ChiralTwoBandModel {
    build_nnn_lkc(ModelParamsNnnLkc {
        u,
        j1,
        j2,
        delta1,
        delta2,
        v,
    })
}

pub fn nrssh(j1: f64, j2: f64, gamma: f64) -> ChiralTwoBandModel {
    build_nrssh(ModelParamsNrssh { j1, j2, gamma }).unwrap()
}
