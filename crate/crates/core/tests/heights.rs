//! Observed behaviour of the exact average height against the asymptotic
//! estimates.

use std::f64::consts::PI;

use peakless_core::asymptotics::{
    convergence_report, motzkin_height_reference, predicted_avg_height, ReportKind,
};
use peakless_core::counting::height_distribution;

#[test]
fn ratio_to_prediction_increases() {
    let r = convergence_report(ReportKind::AvgHeight, &[50, 100, 200, 400]).unwrap();
    let q = r.ratios();
    assert!(q.windows(2).all(|w| w[1] > w[0]), "{q:?}");
}

// The exact averages grow like 5^(-1/4) sqrt(pi n), half of the predicted
// constant: the ratio creeps up towards 0.5.
#[test]
fn ratio_approaches_one_half() {
    let ns = [100, 200, 400];
    let ratios: Vec<f64> = ns
        .iter()
        .map(|&n| height_distribution(n).expected_height_float() / predicted_avg_height(n))
        .collect();
    assert!(ratios.iter().all(|&q| q < 0.5), "{ratios:?}");
    assert!(ratios[2] > 0.45, "{ratios:?}");
    let halves: Vec<f64> = ratios.iter().map(|q| (0.5 - q).abs()).collect();
    assert!(halves.windows(2).all(|w| w[1] < w[0]), "{halves:?}");
}

#[test]
fn peakless_paths_are_taller_than_motzkin_reference_at_400() {
    let e = height_distribution(400).expected_height_float();
    // sqrt(400 pi / 3) ~ 20.47; exact peakless mean ~ 21.65
    assert!(e > motzkin_height_reference(400), "{e}");
    assert!((e / (400.0 * PI).sqrt() - 0.6107).abs() < 1e-3, "{e}");
}
