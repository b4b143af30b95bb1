//! Randomized invariants for the model algebra, the winding routines, the
//! quench machinery, the phase decomposition, and the dilation protocol.

mod common;

use common::*;
use nhband::dynphase::{u_left, u_right};
use nhband::*;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[test]
fn chiral_anticommutation() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let h = m.hamiltonian(k);
        let s = m.chiral_axis().matrix();
        let res = (s * h * s + h).max_abs();
        assert!(res <= 1e-12, "chiral residual {res}");
    }
}

#[test]
fn squared_hamiltonian_is_dispersion() {
    let mut r = rng(12);
    for _ in 0..1000 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let h = m.hamiltonian(k);
        let e = m.dispersion(k);
        let res = (h * h - Matrix2C::identity().scale(e * e)).max_abs();
        assert!(res <= 1e-12, "H^2 residual {res}");
    }
}

#[test]
fn evolution_operator_matches_series_expm() {
    let mut r = rng(13);
    for _ in 0..500 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let e = m.dispersion(k).norm().max(0.1);
        let t = r.gen_range(0.0..20.0 / e);
        let u = m.evolution_operator(k, t);
        let oracle = expm(&m.hamiltonian(k).scale(-I * t));
        // relative tolerance: |cos(Et)| reaches e^|Im E|t, far above 1
        let res = (u - oracle).max_abs() / u.max_abs().max(1.0);
        assert!(res <= 1e-10, "evolution residual {res} at |Et|={}", e * t);
    }
}

#[test]
fn hamiltonian_is_periodic() {
    let mut r = rng(14);
    for _ in 0..300 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let res = (m.hamiltonian(k + 2.0 * PI) - m.hamiltonian(k)).max_abs();
        assert!(res <= 1e-12, "periodicity residual {res}");
    }
}

#[test]
fn winding_is_half_integer_quantized() {
    let mut r = rng(21);
    for family in 0..3 {
        for _ in 0..500 {
            let m = match family {
                0 => random_lkc(&mut r),
                1 => random_nnn_lkc(&mut r),
                _ => random_nrssh(&mut r),
            };
            match winding_number(&m, 4097) {
                Ok(res) => {
                    let doubled = 2.0 * res.w;
                    assert!(
                        (doubled - doubled.round()).abs() <= 1e-6,
                        "2w = {doubled} not near an integer"
                    );
                }
                // a draw can still sit close enough to a boundary for the
                // angle increments to defeat the doubling cap; skip it
                Err(Error::InsufficientGrid { .. }) | Err(Error::GaplessModel { .. }) => {}
                Err(e) => panic!("unexpected winding error {e}"),
            }
        }
    }
}

#[test]
fn winding_methods_agree() {
    let mut r = rng(22);
    for family in 0..3 {
        for _ in 0..100 {
            let m = match family {
                0 => random_lkc(&mut r),
                1 => random_nnn_lkc(&mut r),
                _ => random_nrssh(&mut r),
            };
            let (Ok(a), Ok(b)) = (winding_number(&m, 4097), winding_via_ep_enclosure(&m, 4097))
            else {
                continue;
            };
            assert!(
                (a.w - b.w).abs() <= 1e-6,
                "angle {} vs enclosure {}",
                a.w,
                b.w
            );
        }
    }
}

#[test]
fn winding_is_grid_converged() {
    let mut r = rng(23);
    for _ in 0..100 {
        let m = random_model(&mut r);
        let (Ok(coarse), Ok(fine)) = (winding_number(&m, 1025), winding_number(&m, 4097)) else {
            continue;
        };
        assert!((coarse.w - fine.w).abs() <= 1e-6);
    }
}

#[test]
fn winding_jumps_by_family_step_across_boundary() {
    // LKC along u = 0: boundary at v = Delta
    let w = |v: f64| winding_number(&lkc(0.0, 1.0, 1.0, v), 1025).unwrap().w;
    assert!((w(0.9) - w(1.1) - 1.0).abs() <= 1e-6);
    // NNN LKC at the step between the w = 2 and w = 1 lobes
    let w = |v: f64| winding_number(&nnn(0.5, 1.0, 1.5, 1.0, 1.5, v), 1025).unwrap().w;
    assert!((w(0.4) - w(1.4) - 1.0).abs() <= 1e-6);
    // NRSSH: boundary at gamma = |J1 - J2| = 0.1 between the w = 0 regime
    // (gamma below both gap-closing scales) and the w = 1/2 lobe
    let w = |g: f64| winding_number(&nrssh(0.5, 0.4, g), 1025).unwrap().w;
    assert!((w(0.2) - w(0.05) - 0.5).abs() <= 1e-6);
}

#[test]
fn winding_angle_imaginary_part_closes() {
    // Im phi = -(1/2) ln |z1/z2|; periodicity closes it over the zone
    let mut r = rng(24);
    for _ in 0..200 {
        let m = random_model(&mut r);
        let im_phi = |k: f64| {
            let z1 = m.d_a(k) + I * m.d_b(k);
            let z2 = m.d_a(k) - I * m.d_b(k);
            -0.5 * (z1.norm() / z2.norm()).ln()
        };
        let net = im_phi(PI) - im_phi(-PI);
        assert!(net.abs() <= 1e-8, "imaginary winding {net}");
    }
}

#[test]
fn return_amplitude_is_half_trace_of_evolution() {
    let mut r = rng(31);
    for _ in 0..10_000 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let t = r.gen_range(0.0..5.0);
        let g = return_amplitude(&m, k, t);
        let tr = m.evolution_operator(k, t).trace() * 0.5;
        assert!((g - tr).norm() <= 1e-10);
    }
}

#[test]
fn critical_momenta_are_gapless_candidates() {
    let mut r = rng(32);
    for _ in 0..300 {
        let m = random_model(&mut r);
        let set = critical_set(&m, 1..=4, 1e-9).unwrap();
        let candidates = gapless_momenta(&m, 1e-9).unwrap();
        for fam in &set.families {
            let k = fam.momentum;
            // orthogonality condition h . g = 0 at every critical momentum
            let res = m.h_a(k) * m.g_a(k) + m.h_b(k) * m.g_b(k);
            assert!(res.abs() <= 1e-10, "h.g = {res} at k = {k}");
            assert!(
                candidates.momenta.iter().any(|&k0| (k0 - k).abs() <= 1e-10),
                "critical momentum {k} not among gapless candidates"
            );
        }
    }
}

#[test]
fn critical_times_are_evenly_spaced() {
    let mut r = rng(33);
    for _ in 0..300 {
        let m = random_model(&mut r);
        let set = critical_set(&m, 1..=8, 1e-9).unwrap();
        for fam in &set.families {
            for pair in fam.times.windows(2) {
                let dt = pair[1].1 - pair[0].1;
                assert!((dt - fam.period).abs() <= 1e-9 * fam.period.max(1.0));
            }
        }
    }
}

#[test]
fn rate_function_is_grid_converged_away_from_cusps() {
    let m = lkc(0.0, 1.0, 1.0, 0.3);
    let set = critical_set(&m, 1..=8, 1e-10).unwrap();
    let mut r = rng(34);
    for _ in 0..20 {
        let t = r.gen_range(0.2..8.0);
        let near_cusp = set
            .families
            .iter()
            .flat_map(|f| f.times.iter())
            .any(|&(_, tc)| (t - tc).abs() < 0.05);
        if near_cusp {
            continue;
        }
        let coarse = rate_function(&m, t, 2049).unwrap();
        let fine = rate_function(&m, t, 8193).unwrap();
        assert!((coarse - fine).abs() <= 1e-4, "rate drift at t = {t}");
    }
}

#[test]
fn rate_function_is_even_in_dispersion_branch() {
    // |cos| is even in E, so flipping the branch changes nothing
    let mut r = rng(35);
    for _ in 0..200 {
        let m = random_model(&mut r);
        let t = r.gen_range(0.1..4.0);
        let n_k = 257;
        let dk = 2.0 * PI / n_k as f64;
        let (mut plus, mut minus) = (0.0, 0.0);
        for j in 0..n_k {
            let k = -PI + (j as f64 + 0.5) * dk;
            let e = m.dispersion(k);
            plus += ((e * t).cos().norm()).ln();
            minus += ((-e * t).cos().norm()).ln();
        }
        assert!((plus - minus).abs() <= 1e-12);
    }
}

#[test]
fn closed_form_dynamical_phase_matches_quadrature() {
    let mut r = rng(41);
    for _ in 0..1000 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let t = r.gen_range(0.0..5.0);
        let closed = dynamical_phase_closed(&m, k, t);
        match dynamical_phase_quadrature(&m, k, t, 400) {
            Ok(quad) => assert!(
                (closed - quad).abs() <= 1e-6,
                "closed {closed} vs quadrature {quad}"
            ),
            // draws can land near an exceptional point where the
            // biorthogonal basis degenerates; the closed form still works
            Err(Error::EpDegeneracy { .. }) => {}
            Err(e) => panic!("unexpected quadrature error {e}"),
        }
    }
}

#[test]
fn geometric_phase_parity_by_family() {
    let mut r = rng(42);
    for _ in 0..20 {
        let t = r.gen_range(0.1..4.0);
        for m in [&lkc(0.7, 1.0, 1.0, 0.3), &nnn(0.5, 1.0, 1.5, 1.0, 1.5, 0.4)] {
            for j in 1..40 {
                let k = j as f64 * PI / 40.0;
                let a = geometric_phase(m, k, t).unwrap();
                let b = geometric_phase(m, -k, t).unwrap();
                assert!((a - b).abs() <= 1e-10, "parity residual {}", (a - b).abs());
            }
        }
    }
    // the NRSSH family breaks inversion symmetry
    let m = nrssh(0.5, 0.8, 0.2);
    let mut violated = false;
    for j in 1..40 {
        let k = j as f64 * PI / 40.0;
        let a = geometric_phase(&m, k, 1.0).unwrap();
        let b = geometric_phase(&m, -k, 1.0).unwrap();
        if (a - b).abs() > 1e-6 {
            violated = true;
        }
    }
    assert!(violated, "NRSSH unexpectedly inversion-symmetric");
}

#[test]
fn biorthogonal_trace_identities() {
    let mut r = rng(43);
    let mut checked = 0;
    while checked < 300 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let t = r.gen_range(0.0..4.0);
        let Ok(bio) = biorthogonal_decompose(&m, k) else {
            continue;
        };
        let e = m.dispersion(k);
        let x = 2.0 * e.im * t;
        let core = u_left(&bio, t).adjoint() * u_right(&bio, t);
        let denom = core.trace();
        let numer = (core * m.hamiltonian(k)).trace();
        assert!((denom - Complex64::new(2.0 * x.cosh(), 0.0)).norm() <= 1e-10 * x.cosh().max(1.0));
        assert!((numer - e * 2.0 * x.sinh()).norm() <= 1e-10 * (e.norm() * x.cosh()).max(1.0));
        checked += 1;
    }
}

#[test]
fn initial_density_matrix_cancels_in_trace_ratio() {
    let mut r = rng(44);
    let mut checked = 0;
    while checked < 200 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let t = r.gen_range(0.1..4.0);
        let Ok(bio) = biorthogonal_decompose(&m, k) else {
            continue;
        };
        let core = u_left(&bio, t).adjoint() * u_right(&bio, t);
        let rho0 = Matrix2C::identity().scale(Complex64::new(0.5, 0.0));
        let bare = (core * m.hamiltonian(k)).trace() / core.trace();
        let with_rho = (core * m.hamiltonian(k) * rho0).trace() / (core * rho0).trace();
        assert!((bare - with_rho).norm() <= 1e-12 * bare.norm().max(1.0));
        checked += 1;
    }
}

#[test]
fn dilation_invariants_hold_at_random_momenta() {
    let mut r = rng(51);
    for m in [
        lkc(0.0, 1.0, 1.0, 0.3),
        nnn(0.5, 1.0, 1.5, 1.0, 1.5, 0.4),
        nrssh(0.5, 0.8, 0.2),
    ] {
        for _ in 0..5 {
            let k = r.gen_range(-PI..PI);
            let config = DilationConfig {
                k,
                t_max: 3.0,
                n_steps: 1500,
                ..DilationConfig::default()
            };
            let run = simulate_dilated(&m, &config).unwrap();
            assert!(run.norm_drift <= 1e-8, "norm drift {}", run.norm_drift);
            assert!(
                run.max_infidelity <= 1e-6,
                "infidelity {} at k = {k}",
                run.max_infidelity
            );
            for s in &run.samples {
                assert!(s.plus_residual <= 1e-6);
                assert!(s.herm_residual <= 1e-8);
            }
        }
    }
}

#[test]
fn metric_reconstructs_from_omega() {
    let mut r = rng(52);
    for _ in 0..100 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let t = r.gen_range(0.0..2.0);
        let m0 = 40.0;
        let (Ok(met), Ok(om)) = (metric(&m, k, t, m0), omega(&m, k, t, m0)) else {
            continue;
        };
        let res = (om * om + Matrix2C::identity() - met).max_abs();
        assert!(res <= 1e-8 * m0, "omega^2 + 1 - M residual {res}");
    }
}

#[test]
fn dilated_pauli_coefficients_are_real() {
    let mut r = rng(53);
    for _ in 0..60 {
        let m = random_model(&mut r);
        let k = r.gen_range(-PI..PI);
        let t = r.gen_range(0.0..1.5);
        let Ok(frame) = dilated_hamiltonian(&m, k, t, 40.0, 3.0) else {
            continue;
        };
        let paulis = [
            Matrix2C::identity(),
            Matrix2C::sigma_x(),
            Matrix2C::sigma_y(),
            Matrix2C::sigma_z(),
        ];
        for p in &paulis {
            let a = frame.matrix.pauli_coefficient(p, &Matrix2C::identity());
            let b = frame.matrix.pauli_coefficient(p, &Matrix2C::sigma_z());
            assert!(a.im.abs() <= 1e-10 && b.im.abs() <= 1e-10);
        }
    }
}
