//! Closed-form equilibrium quantities for one structure at one temperature,
//! and the four corner states of the cycle.
//!
//! Two kinds of corner state occur. After an isothermal stroke the medium is
//! in full thermal equilibrium, and `norm` is the ordinary partition
//! function. After a structure change the bound-level occupation stays
//! frozen while the band re-thermalizes internally at the pre-change
//! temperature; `norm` is then the constant that renormalizes the
//! Boltzmann-shaped band to the leftover weight `1 - p0`. Both cases are
//! covered by [`corner_state`] with an explicit `p0`.

use serde::Serialize;

use crate::error::{require_probability, Error, Result};
use crate::medium::LevelStructure;
use crate::numeric::{band_offset, one_minus_exp_neg};

fn require_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            constraint: "inverse temperature must be positive and finite",
        })
    }
}

/// Boltzmann weight of the whole band: integral of e^(-beta E) over
/// [e_min, e_max], in the cancellation-safe factored form.
pub fn band_weight_integral(structure: &LevelStructure, beta: f64) -> Result<f64> {
    require_beta(beta)?;
    let x = beta * structure.broadening();
    Ok((-beta * structure.e_min()).exp() * one_minus_exp_neg(x) / beta)
}

/// Partition function of one structure:
/// e^(-beta e0) + rho * integral of e^(-beta E) over the band.
pub fn partition_function(structure: &LevelStructure, beta: f64) -> Result<f64> {
    require_beta(beta)?;
    let gap_weight = (-beta * structure.delta_gap()).exp();
    let x = beta * structure.broadening();
    let z = (-beta * structure.e0()).exp()
        * (1.0 + structure.rho() / beta * gap_weight * one_minus_exp_neg(x));
    debug_assert!(z > 0.0 && z.is_finite());
    Ok(z)
}

/// Equilibrium occupation of the bound level, e^(-beta e0) / Z.
///
/// Computed as a ratio that never forms the (possibly under- or
/// overflowing) exponentials of absolute energies, so it is invariant
/// under a global energy shift by construction.
pub fn equilibrium_p0(structure: &LevelStructure, beta: f64) -> Result<f64> {
    require_beta(beta)?;
    let gap_weight = (-beta * structure.delta_gap()).exp();
    let x = beta * structure.broadening();
    Ok(1.0 / (1.0 + structure.rho() / beta * gap_weight * one_minus_exp_neg(x)))
}

/// Boltzmann mean energy of the band alone:
/// integral of E e^(-beta E) over integral of e^(-beta E), both over
/// [e_min, e_max]. Always lies strictly inside the band.
pub fn continuum_mean_energy(structure: &LevelStructure, beta: f64) -> Result<f64> {
    require_beta(beta)?;
    let x = beta * structure.broadening();
    Ok(structure.e_max() + structure.broadening() * band_offset(x))
}

/// One endpoint of a stroke: a structure, the temperature its band is
/// shaped at, the (possibly frozen) bound-level occupation, the band
/// normalization constant and the total mean energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CornerState {
    pub structure: LevelStructure,
    pub beta: f64,
    pub p0: f64,
    /// Constant `norm` such that the band weight rho e^(-beta E)/norm
    /// integrates to 1 - p0. Equals the partition function exactly when
    /// p0 is the equilibrium occupation.
    pub norm: f64,
    pub mean_energy: f64,
}

/// Assemble the state of the medium at one cycle corner: band
/// Boltzmann-shaped at `beta` inside `structure`, renormalized so its
/// total weight is `1 - p0`.
pub fn corner_state(structure: &LevelStructure, beta: f64, p0: f64) -> Result<CornerState> {
    require_probability("p0", p0)?;
    let weight = band_weight_integral(structure, beta)?;
    let norm = structure.rho() * weight / (1.0 - p0);
    let band_mean = continuum_mean_energy(structure, beta)?;
    let mean_energy = p0 * structure.e0() + (1.0 - p0) * band_mean;
    debug_assert!(mean_energy >= structure.e0() && mean_energy <= structure.e_max());
    Ok(CornerState {
        structure: *structure,
        beta,
        p0,
        norm,
        mean_energy,
    })
}

/// Invert the equilibrium-occupation relation: find the gap at which a
/// band of the given width and density holds occupation `target_p0` at
/// inverse temperature `beta`.
///
/// Errors with [`Error::UnreachableOccupation`] when the required gap is
/// negative, i.e. no structure with the band at or above the bound level
/// reaches that occupation.
pub fn solve_gap_for_p0(target_p0: f64, broadening: f64, rho: f64, beta: f64) -> Result<f64> {
    require_probability("target_p0", target_p0)?;
    crate::error::require_positive("broadening", broadening)?;
    crate::error::require_positive("rho", rho)?;
    require_beta(beta)?;
    let x = beta * broadening;
    let gap = -(beta * (1.0 - target_p0) / (target_p0 * rho * one_minus_exp_neg(x))).ln() / beta;
    if gap >= 0.0 {
        Ok(gap)
    } else if gap >= -1e-12 {
        // roundoff of the zero-gap case
        Ok(0.0)
    } else {
        Err(Error::UnreachableOccupation { target_p0, gap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson rule; independent oracle for band integrals.
    fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
        let n = 2 * panels;
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }

    fn unit_structure() -> LevelStructure {
        LevelStructure::new(0.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn partition_function_matches_simpson_oracle() {
        // e0 = 0, gap 1, width 1, rho 1, beta 1: band integral over [1, 2]
        let z = partition_function(&unit_structure(), 1.0).unwrap();
        let oracle = 1.0 + simpson(|e| (-e).exp(), 1.0, 2.0, 4000);
        assert!((z - oracle).abs() < 1e-12, "{z} vs {oracle}");
        assert!((z - 1.2325441579348296).abs() < 1e-12);
    }

    #[test]
    fn partition_function_translation_identity() {
        let s = unit_structure();
        for &(c, beta) in &[(0.7, 1.0), (-3.0, 0.3), (12.0, 2.5)] {
            let z0 = partition_function(&s, beta).unwrap();
            let zc = partition_function(&s.shifted(c), beta).unwrap();
            assert!(((zc - (-beta * c).exp() * z0) / z0).abs() < 1e-14);
        }
    }

    #[test]
    fn partition_function_fixed_product_changes_through_band_only() {
        // halve rho, double width at fixed e_min and fixed rho*width
        let wide = LevelStructure::new(0.0, 1.0, 2.0, 0.5).unwrap();
        let z = partition_function(&wide, 1.0).unwrap();
        let oracle = 1.0 + 0.5 * simpson(|e| (-e).exp(), 1.0, 3.0, 4000);
        assert!((z - oracle).abs() < 1e-12);
    }

    #[test]
    fn occupation_matches_oracle_and_shift_invariance() {
        let s = unit_structure();
        let p0 = equilibrium_p0(&s, 1.0).unwrap();
        let z = 1.0 + simpson(|e| (-e).exp(), 1.0, 2.0, 4000);
        assert!((p0 - 1.0 / z).abs() < 1e-12);
        assert!((p0 - 0.81133).abs() < 1e-5);

        let shifted = equilibrium_p0(&s.shifted(17.0), 1.0).unwrap();
        assert_eq!(p0, shifted);
    }

    #[test]
    fn occupation_approaches_one_for_huge_gap() {
        // strictly monotone while still resolvable in f64
        let mut prev = 0.0;
        for &gap in &[1.0, 5.0, 10.0, 20.0] {
            let s = LevelStructure::new(0.0, gap, 1.0, 1.0).unwrap();
            let p0 = equilibrium_p0(&s, 1.0).unwrap();
            assert!(p0 > prev);
            prev = p0;
        }
        let s = LevelStructure::new(0.0, 1000.0, 1.0, 1.0).unwrap();
        assert!(equilibrium_p0(&s, 1.0).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn mean_energy_limits_and_quadrature() {
        // beta*width -> 0: uniform band, mean at the midpoint
        let s = unit_structure();
        let nearly_uniform = continuum_mean_energy(&s, 1e-9).unwrap();
        assert!((nearly_uniform - 1.5).abs() < 1e-9);

        // beta*width -> infinity: exponential tail, e_min + 1/beta
        let beta = 2000.0;
        let tail = continuum_mean_energy(&s, beta).unwrap();
        assert!((tail - (1.0 + 1.0 / beta)).abs() < 1e-9);

        // moderate beta against the Simpson oracle
        let num = simpson(|e| e * (-e).exp(), 1.0, 2.0, 4000);
        let den = simpson(|e| (-e).exp(), 1.0, 2.0, 4000);
        let closed = continuum_mean_energy(&s, 1.0).unwrap();
        assert!(((closed - num / den) / closed).abs() < 1e-12);
        assert!(closed > s.e_min() && closed < s.e_max());
    }

    #[test]
    fn self_consistent_corner_norm_is_partition_function() {
        let s = unit_structure();
        for &beta in &[0.2, 1.0, 5.0] {
            let p0 = equilibrium_p0(&s, beta).unwrap();
            let corner = corner_state(&s, beta, p0).unwrap();
            let z = partition_function(&s, beta).unwrap();
            assert!(((corner.norm - z) / z).abs() < 1e-13);
        }
    }

    #[test]
    fn corner_mean_energy_collapses_to_bound_level() {
        let s = unit_structure();
        let corner = corner_state(&s, 1.0, 1.0 - 1e-12).unwrap();
        assert!((corner.mean_energy - s.e0()).abs() < 1e-11);
    }

    #[test]
    fn frozen_corner_matches_quadrature() {
        // hot-shaped structure at the cold temperature with a frozen p0
        let hot = LevelStructure::new(0.0, 1.0, 2.0, 1.0).unwrap();
        let beta_cold = 1.0;
        let p0 = 0.5;
        let corner = corner_state(&hot, beta_cold, p0).unwrap();
        let num = simpson(|e| e * (-e).exp(), 1.0, 3.0, 8000);
        let den = simpson(|e| (-e).exp(), 1.0, 3.0, 8000);
        let expected = p0 * 0.0 + (1.0 - p0) * num / den;
        assert!((corner.mean_energy - expected).abs() < 1e-11);
        // norm renormalizes the band to weight 1 - p0
        let band_weight = hot.rho() * den / corner.norm;
        assert!((band_weight - (1.0 - p0)).abs() < 1e-11);
    }

    #[test]
    fn gap_solver_round_trips() {
        for &(gap, width, rho, beta) in &[
            (0.3, 1.0, 1.0, 1.0),
            (2.0, 0.5, 3.0, 0.7),
            (0.0, 2.0, 0.2, 4.0),
        ] {
            let s = LevelStructure::new(0.4, gap, width, rho).unwrap();
            let p0 = equilibrium_p0(&s, beta).unwrap();
            let solved = solve_gap_for_p0(p0, width, rho, beta).unwrap();
            assert!((solved - gap).abs() < 1e-12, "{solved} vs {gap}");
        }
    }

    #[test]
    fn gap_solver_agrees_with_bisection() {
        // independent root find on the forward relation
        let (width, rho, beta) = (1.0, 1.0, 1.0);
        let target = 0.9;
        let closed = solve_gap_for_p0(target, width, rho, beta).unwrap();

        let p0_of = |gap: f64| {
            let s = LevelStructure::new(0.0, gap, width, rho).unwrap();
            equilibrium_p0(&s, beta).unwrap()
        };
        let (mut lo, mut hi) = (0.0, 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p0_of(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((closed - 0.5 * (lo + hi)).abs() < 1e-10);
    }

    #[test]
    fn gap_solver_rejects_unreachable_occupation() {
        // p0 = 0.5 at width 1, rho 1, beta 1 sits below the zero-gap occupation
        let err = solve_gap_for_p0(0.5, 1.0, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::UnreachableOccupation { .. }));
    }

    #[test]
    fn gap_solver_monotone_and_divergent_near_one() {
        let mut prev = solve_gap_for_p0(0.85, 1.0, 1.0, 1.0).unwrap();
        for &p0 in &[0.9, 0.99, 0.999999] {
            let gap = solve_gap_for_p0(p0, 1.0, 1.0, 1.0).unwrap();
            assert!(gap > prev);
            prev = gap;
        }
        assert!(prev > 10.0);
    }

    #[test]
    fn non_positive_beta_rejected() {
        let s = unit_structure();
        assert!(partition_function(&s, 0.0).is_err());
        assert!(equilibrium_p0(&s, -1.0).is_err());
        assert!(continuum_mean_energy(&s, f64::NAN).is_err());
    }
}
