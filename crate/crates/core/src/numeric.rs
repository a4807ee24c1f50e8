//! Small numerical kernels shared by the closed forms and the oracles.

/// Mean position of a Boltzmann-weighted flat band, measured from the band
/// top in units of the band width.
///
/// For weight e^(-beta E) over a band of width delta and x = beta * delta,
///
///   <E> = E_max + delta * band_offset(x),
///
/// with band_offset(x) = 1/(e^(-x) - 1) + 1/x. The function decreases
/// strictly from -1/2 (uniform limit, x -> 0) to -1 (deep-tail limit).
///
/// Both terms diverge like 1/x near zero, so below the crossover the value
/// comes from the series -1/2 - x/12 + x^3/720; the direct form would lose
/// half its digits to cancellation already at x ~ 1e-8.
pub fn band_offset(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 1e-4 {
        -0.5 - x / 12.0 + x * x * x / 720.0
    } else {
        1.0 / f64::exp_m1(-x) + 1.0 / x
    }
}

/// 1 - e^(-x) without cancellation for small x.
pub fn one_minus_exp_neg(x: f64) -> f64 {
    -f64::exp_m1(-x)
}

/// |a - b| relative to the larger magnitude, with a floor so that values
/// that cancel to ~0 are compared on the problem's unit energy scale
/// instead of amplifying roundoff into a spurious mismatch.
pub fn rel_error(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}
