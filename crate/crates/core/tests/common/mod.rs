//! Shared test support: the measure catalog and a brute-force oracle.

#![allow(dead_code)]

pub mod oracle;
pub mod reference;

use tiltmedian::{BaseMeasure, MeasureSpec, TabulatedDensity};

/// Closed-form members used throughout the tests.
pub fn closed_form_specs() -> Vec<MeasureSpec> {
    vec![
        MeasureSpec::standard_normal(),
        MeasureSpec::gaussian(1.0, 2.0),
        MeasureSpec::gaussian(-2.0, 0.5),
        MeasureSpec::perturbed_cosine(0.5),
        MeasureSpec::perturbed_cosine(0.9),
        MeasureSpec::perturbed_quadratic(1.0),
        MeasureSpec::gaussian_mixture(0.5, -1.0, 1.0, 1.0, 1.0),
        MeasureSpec::gaussian_mixture(0.3, -1.0, 0.5, 1.0, 1.5),
    ]
}

/// `g(x) = 1 + 0.3 sin x` tabulated on `[-8, 8]` with step 0.05.
pub fn sample_table() -> TabulatedDensity {
    let xs: Vec<f64> = (0..=320).map(|i| -8.0 + 0.05 * i as f64).collect();
    let gs = xs.iter().map(|x| 1.0 + 0.3 * x.sin()).collect();
    TabulatedDensity::new(xs, gs).expect("valid table")
}

/// Every catalog measure, labelled.
pub fn catalog() -> Vec<(String, BaseMeasure)> {
    let mut out: Vec<(String, BaseMeasure)> = closed_form_specs()
        .into_iter()
        .map(|s| {
            (
                s.to_string(),
                BaseMeasure::build(&s).expect("catalog measure builds"),
            )
        })
        .collect();
    out.push((
        "tabulated(1+0.3sin)".into(),
        BaseMeasure::tabulated(sample_table()).expect("table builds"),
    ));
    out
}
