//! Golden-output regression tests: frozen CSV fixture for the SNR sweep
//! and high-precision spot checks at the decade ranges.

// Oracle values keep every digit the extended-precision computation gave.
#![allow(clippy::excessive_precision)]

use rydar_core::prelude::*;

const GOLDEN_CSV: &str = include_str!("data/golden_snr_sweep.csv");
const GOLDEN_CONFIG: &str = "[sweep]\nr_min_m = 100.0\nr_max_m = 10000.0\npoints = 5\n";

#[test]
fn snr_sweep_matches_golden_csv_exactly() {
    let cfg = parse_config(GOLDEN_CONFIG).unwrap();
    let csv = csv_string(&run_snr_sweep(&cfg).unwrap());
    assert_eq!(csv, GOLDEN_CSV, "SNR sweep CSV drifted from the frozen fixture");
}

#[test]
fn decade_ranges_match_extended_precision_oracle() {
    // dB values computed independently at 50-digit precision from the
    // default scenario parameters.
    let oracle = [
        (100.0, 48.357415402002821, 16.614969892775740),
        (1000.0, 8.3574154020028211, -23.385030107224260),
        (10000.0, -31.642584597997179, -63.385030107224260),
    ];
    let cfg = parse_config(GOLDEN_CONFIG).unwrap();
    let result = run_snr_sweep(&cfg).unwrap();
    for (r, gq_db, gs_db) in oracle {
        let row = result
            .rows
            .iter()
            .find(|row| (row.range_m - r).abs() < 1e-9)
            .unwrap_or_else(|| panic!("no row at {r} m"));
        assert!(
            (row.snr_quantum_db - gq_db).abs() < 1e-9,
            "quantum SNR at {r} m: {} vs oracle {gq_db}",
            row.snr_quantum_db
        );
        assert!(
            (row.snr_classical_db - gs_db).abs() < 1e-9,
            "classical SNR at {r} m: {} vs oracle {gs_db}",
            row.snr_classical_db
        );
    }
}

#[test]
fn golden_fixture_has_expected_shape() {
    let mut lines = GOLDEN_CSV.lines();
    assert_eq!(
        lines.next().unwrap(),
        "range_m,snr_quantum_db,snr_classical_db,rmse_quantum_mps,rmse_classical_mps,\
         acrb_rms_quantum_mps,acrb_rms_classical_mps"
    );
    assert_eq!(lines.count(), 5);
}
