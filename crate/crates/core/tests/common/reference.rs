//! Frozen oracle values (10^6-interval trapezoid). Regenerate with
//! `cargo test --release --test oracle_values -- --ignored --nocapture`.

/// perturbed_cosine(0.5) at t = 1.
pub const COS_GAP_AT_1: f64 = -0.23375049306212503;
pub const COS_SIGN_AT_1: f64 = 0.18669025393108285;
pub const COS_DERIVA_AT_1: f64 = 0.15023781567742112;
/// perturbed_quadratic(1) at t = 1.
pub const QUAD_GAP_AT_1: f64 = 0.7565451484139452;
pub const QUAD_SIGN_AT_1: f64 = -0.797884560750579;
pub const QUAD_DERIVA_AT_1: f64 = -0.9999999999339539;

/// `(max |residual|, argmax t)` over the 49-point grid on [-6, 6].
pub const COS_GAP_MAX: (f64, f64) = (0.383702924942936, -4.25);
pub const COS_SIGN_MAX: (f64, f64) = (0.22170488096852456, -4.75);
pub const COS_DERIVA_MAX: (f64, f64) = (0.2780625106030359, 0.0);
pub const QUAD_GAP_MAX: (f64, f64) = (0.7565451484144017, -1.0);
pub const QUAD_SIGN_MAX: (f64, f64) = (4.78730736450618, -6.0);
pub const QUAD_DERIVA_MAX: (f64, f64) = (0.999999999967, 0.0);

/// `∫ q(y) cos(y) dy`.
pub const Q_COS_MULTIPLIER: f64 = 0.2752215409275515;

/// Median minus mean of the tilt at t = 1 of gaussian_mixture(0.5,-1,0.5,1,1.5).
pub const MIXTURE_MEAN_MEDIAN_AT_1: f64 = 0.09604441557014987;
