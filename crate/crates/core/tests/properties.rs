//! Randomized property tests over the physics and estimator layers.

use proptest::prelude::*;
use rydar_core::atomic::lambda_ratio;
use rydar_core::prelude::*;
use rydar_core::waveform::{noise_rng, sample_noisy_sinusoid, RecordMetadata};

proptest! {
    #[test]
    fn lambda_ratio_lies_in_unit_interval(
        a in 1e-6f64..1e12,
        b in 1e-6f64..1e12,
    ) {
        let l = lambda_ratio(a, b).unwrap();
        prop_assert!(l > 0.0 && l <= 1.0, "Lambda({a}, {b}) = {l}");
    }

    #[test]
    fn beat_envelope_respects_triangle_bounds(
        a1 in 1e-9f64..1e3,
        ratio in 0.0f64..1.0,
        delta_f in 0.0f64..1e6,
        phi in 0.0f64..std::f64::consts::TAU,
        t in 0.0f64..1.0,
    ) {
        let a2 = ratio * a1;
        let e = beat_envelope_exact(a1, a2, delta_f, phi, t).unwrap();
        prop_assert!(e >= (a1 - a2).abs() - 1e-12 * a1);
        prop_assert!(e <= a1 + a2 + 1e-12 * a1);
    }

    #[test]
    fn snrs_are_positive_and_decrease_with_range(
        r in 10.0f64..1e5,
        factor in 1.1f64..10.0,
    ) {
        let cfg = ExperimentConfig::defaults();
        let c = optical_gain_c(&cfg.atomic, &cfg.constants).unwrap();
        let gq_near = quantum_snr(&cfg.link, &cfg.noise, c, r, &cfg.constants).unwrap();
        let gq_far = quantum_snr(&cfg.link, &cfg.noise, c, r * factor, &cfg.constants).unwrap();
        let bw = cfg.noise.bandwidth;
        let gs_near = classical_snr(&cfg.link, &cfg.classical, bw, r, &cfg.constants).unwrap();
        let gs_far =
            classical_snr(&cfg.link, &cfg.classical, bw, r * factor, &cfg.constants).unwrap();
        prop_assert!(gq_near > 0.0 && gs_near > 0.0);
        prop_assert!(gq_far < gq_near);
        prop_assert!(gs_far < gs_near);
        // The dB gap between receivers is range-independent.
        let gap_near = to_db(gq_near) - to_db(gs_near);
        let gap_far = to_db(gq_far) - to_db(gs_far);
        prop_assert!((gap_near - gap_far).abs() < 1e-9);
    }

    #[test]
    fn received_power_follows_inverse_fourth_power(
        r in 10.0f64..1e5,
        factor in 1.1f64..10.0,
    ) {
        let cfg = ExperimentConfig::defaults();
        let near = received_power(&cfg.link, r).unwrap();
        let far = received_power(&cfg.link, r * factor).unwrap();
        let expect = near / factor.powi(4);
        prop_assert!((far - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn estimator_recovers_noiseless_tones(
        frac in 0.06f64..0.94,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let omega = frac * std::f64::consts::PI;
        let n = 1024;
        let record = SampledWaveform {
            samples: (1..=n).map(|k| (omega * k as f64 + phi).cos()).collect(),
            sample_rate: 60_000.0,
            metadata: RecordMetadata { seed: 0, true_beat_freq: 0.0, true_phase: phi, sigma_z: 0.0 },
        };
        let est = estimate_frequency(&record, 0.02).unwrap();
        prop_assert!((est.omega_hat - omega).abs() < 1e-6);
    }
}

/// The estimator exhibits a threshold: near-efficient at high SNR, far
/// from the bound once the SNR drops below the breakdown region.
#[test]
fn estimator_threshold_behavior() {
    let n = 1024;
    let omega = 0.37 * std::f64::consts::PI;
    let ratio_at = |snr_db: f64| {
        let snr = 10f64.powf(snr_db / 10.0);
        let sigma = (1.0 / (2.0 * snr)).sqrt();
        let mut sum_sq = 0.0;
        let trials = 300;
        for trial in 0..trials {
            let mut rng = noise_rng(derive_seed(99, 3, 0, trial));
            let phi = {
                use rand::Rng;
                rng.random::<f64>() * std::f64::consts::TAU
            };
            let samples = sample_noisy_sinusoid(1.0, omega, phi, n, sigma, &mut rng);
            let record = SampledWaveform {
                samples,
                sample_rate: 60_000.0,
                metadata: RecordMetadata { seed: 0, true_beat_freq: 0.0, true_phase: phi, sigma_z: sigma },
            };
            let e = estimate_frequency(&record, 0.02).unwrap().omega_hat - omega;
            sum_sq += e * e;
        }
        (sum_sq / trials as f64).sqrt() / acrb_omega(snr, n).unwrap().sqrt()
    };

    let high = ratio_at(10.0);
    let low = ratio_at(-25.0);
    assert!(high < 2.0, "no efficiency above threshold: ratio {high}");
    assert!(low > 5.0, "no breakdown below threshold: ratio {low}");
    assert!(low > high);
}
