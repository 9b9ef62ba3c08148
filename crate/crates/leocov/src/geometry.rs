//! Spherical-shell constellation geometry and the contact-distance
//! distribution of the nearest visible satellite seen from a point on the
//! Earth's surface.
//!
//! Satellites sit uniformly on spheres concentric with the Earth. A
//! satellite is visible from the reference surface point when its distance
//! does not exceed the shell's horizon distance; the nearest-visible
//! distance `D` is therefore defective: with positive probability no
//! satellite is above the horizon and `D` has no finite value. The CDF mass
//! `contact_cdf(inf)` equals the visibility mass, not 1.
//!
//! All lengths are in meters.

use rand::Rng;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arccos argument {0} outside [-1, 1]: inconsistent geometry")]
    Domain(f64),
}

/// Floating-point slack applied before arccos and branch comparisons.
const CLAMP_TOL: f64 = 1e-12;

/// One spherical shell: altitude above the surface and satellite count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    /// Altitude above the Earth's surface [m].
    pub altitude_m: f64,
    /// Number of satellites uniformly distributed on the shell.
    pub count: u32,
}

impl Shell {
    pub fn new(altitude_m: f64, count: u32) -> Result<Self, GeometryError> {
        let s = Shell { altitude_m, count };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !self.altitude_m.is_finite() || self.altitude_m <= 0.0 {
            return Err(GeometryError::InvalidParameter(format!(
                "shell altitude must be positive, got {}",
                self.altitude_m
            )));
        }
        if self.count == 0 {
            return Err(GeometryError::InvalidParameter(
                "shell satellite count must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Orbit radius [m] for the given Earth radius.
    pub fn orbit_radius_m(&self, earth_radius_m: f64) -> f64 {
        earth_radius_m + self.altitude_m
    }
}

/// The full constellation: Earth radius plus one or more shells.
///
/// Shell order is irrelevant: every evaluation accumulates over shells in
/// the stored order, and permuting the shells changes results only through
/// floating-point reassociation (bounded by ~1e-15 relative).
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationConfig {
    /// Earth radius [m].
    pub earth_radius_m: f64,
    pub shells: Vec<Shell>,
}

impl ConstellationConfig {
    pub fn new(earth_radius_m: f64, shells: Vec<Shell>) -> Result<Self, GeometryError> {
        let c = ConstellationConfig {
            earth_radius_m,
            shells,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !self.earth_radius_m.is_finite() || self.earth_radius_m <= 0.0 {
            return Err(GeometryError::InvalidParameter(format!(
                "earth radius must be positive, got {}",
                self.earth_radius_m
            )));
        }
        if self.shells.is_empty() {
            return Err(GeometryError::InvalidParameter(
                "constellation needs at least one shell".into(),
            ));
        }
        for s in &self.shells {
            s.validate()?;
        }
        Ok(())
    }

    /// Smallest altitude across shells [m]; the contact CDF is zero below it.
    pub fn min_altitude_m(&self) -> f64 {
        self.shells
            .iter()
            .map(|s| s.altitude_m)
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest horizon distance across shells [m]; the contact density is
    /// zero beyond it.
    pub fn max_horizon_m(&self) -> f64 {
        self.shells
            .iter()
            .map(|s| horizon_distance_unchecked(s, self.earth_radius_m))
            .fold(0.0, f64::max)
    }
}

/// Which single-shell distance law to evaluate.
///
/// `CapArea` is the distribution of the distance to the nearest of `N`
/// points uniform on the sphere: the cap fraction `(d^2 - a^2)/(4 r_e r)`.
/// `ArcAngle` replaces the cap fraction with the arc fraction
/// `arccos(.)/pi`; the two disagree, and `ArcAngle` exists to reproduce
/// results derived with that form. `CapArea` is the default and is the one
/// validated against the uniform-sphere Monte-Carlo sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistributionVariant {
    ArcAngle,
    #[default]
    CapArea,
}

// ============================================================================
// Horizon geometry
// ============================================================================

/// Maximum distance at which a satellite on the shell is above the horizon
/// of a surface observer: `sqrt(2 r_e a + a^2)`.
pub fn horizon_distance(shell: &Shell, earth_radius_m: f64) -> Result<f64, GeometryError> {
    shell.validate()?;
    if !earth_radius_m.is_finite() || earth_radius_m <= 0.0 {
        return Err(GeometryError::InvalidParameter(format!(
            "earth radius must be positive, got {earth_radius_m}"
        )));
    }
    Ok(horizon_distance_unchecked(shell, earth_radius_m))
}

fn horizon_distance_unchecked(shell: &Shell, re: f64) -> f64 {
    let a = shell.altitude_m;
    (2.0 * re * a + a * a).sqrt()
}

// ============================================================================
// Single-shell distance law
// ============================================================================

/// P(D_i >= d): probability that no satellite on the shell is visible
/// within distance `d`. Constant beyond the horizon distance (satellites
/// below the horizon never count), which is what makes the contact
/// distribution defective.
pub fn shell_ccdf(
    d: f64,
    shell: &Shell,
    earth_radius_m: f64,
    variant: DistributionVariant,
) -> Result<f64, GeometryError> {
    shell.validate()?;
    if !d.is_finite() && d != f64::INFINITY {
        return Err(GeometryError::InvalidParameter(format!("distance {d}")));
    }
    if d < 0.0 {
        return Err(GeometryError::InvalidParameter(format!(
            "distance must be non-negative, got {d}"
        )));
    }
    if !earth_radius_m.is_finite() || earth_radius_m <= 0.0 {
        return Err(GeometryError::InvalidParameter(format!(
            "earth radius must be positive, got {earth_radius_m}"
        )));
    }
    shell_ccdf_inner(d, shell, earth_radius_m, variant)
}

fn shell_ccdf_inner(
    d: f64,
    shell: &Shell,
    re: f64,
    variant: DistributionVariant,
) -> Result<f64, GeometryError> {
    let a = shell.altitude_m;
    if d < a {
        return Ok(1.0);
    }
    let r = re + a;
    let dmax = horizon_distance_unchecked(shell, re);
    let d_eff = d.min(dmax);
    // (d - a)(d + a) avoids the cancellation of d^2 - a^2 near d = a.
    let diff = (d_eff - a) * (d_eff + a);
    let single = match variant {
        DistributionVariant::ArcAngle => {
            let u = 1.0 - diff / (2.0 * re * r);
            1.0 - arccos_clamped(u)? / PI
        }
        DistributionVariant::CapArea => {
            // Cap fraction; at the horizon it reduces to a / (2 r).
            1.0 - diff / (4.0 * re * r)
        }
    };
    Ok(single.clamp(0.0, 1.0).powi(shell.count as i32))
}

fn arccos_clamped(u: f64) -> Result<f64, GeometryError> {
    if u.abs() > 1.0 + CLAMP_TOL || u.is_nan() {
        return Err(GeometryError::Domain(u));
    }
    Ok(u.clamp(-1.0, 1.0).acos())
}

/// Density of the single-shell nearest-visible distance; zero outside
/// `[a_i, d_max]`. At `d = a_i` the `ArcAngle` form has an integrable
/// inverse-square-root singularity and evaluates to `+inf`; branch
/// boundaries otherwise take the value of the interior limit
/// (left-continuous at the horizon).
fn shell_pdf_inner(
    d: f64,
    shell: &Shell,
    re: f64,
    variant: DistributionVariant,
) -> Result<f64, GeometryError> {
    let a = shell.altitude_m;
    let dmax = horizon_distance_unchecked(shell, re);
    if d < a || d > dmax {
        return Ok(0.0);
    }
    let r = re + a;
    let n = shell.count as f64;
    let diff = (d - a) * (d + a);
    match variant {
        DistributionVariant::ArcAngle => {
            let v = diff / (2.0 * re * r);
            let u = 1.0 - v;
            let base = 1.0 - arccos_clamped(u)? / PI;
            // 1 - u^2 = v (2 - v), exact where the direct form cancels.
            let root = (v * (2.0 - v)).max(0.0).sqrt();
            Ok(d * n / (PI * re * r) * base.powi(shell.count as i32 - 1) / root)
        }
        DistributionVariant::CapArea => {
            let base = 1.0 - diff / (4.0 * re * r);
            Ok(d * n / (2.0 * re * r) * base.clamp(0.0, 1.0).powi(shell.count as i32 - 1))
        }
    }
}

// ============================================================================
// Multi-shell contact distribution
// ============================================================================

/// CDF of the nearest-visible-satellite distance over all shells:
/// `1 - prod_i P(D_i >= d)`. Non-decreasing, zero below the lowest
/// altitude, and saturating at the visibility mass (< 1 in general).
pub fn contact_cdf(
    d: f64,
    cfg: &ConstellationConfig,
    variant: DistributionVariant,
) -> Result<f64, GeometryError> {
    cfg.validate()?;
    let mut prod = 1.0;
    for shell in &cfg.shells {
        prod *= shell_ccdf(d, shell, cfg.earth_radius_m, variant)?;
    }
    Ok(1.0 - prod)
}

/// Density of the contact distance in the product-sum form
/// `[prod_i ccdf_i] * [sum_i pdf_i / ccdf_i]`; zero outside the union of
/// the shell supports. Integrates to the visibility mass, not to 1.
pub fn contact_pdf(
    d: f64,
    cfg: &ConstellationConfig,
    variant: DistributionVariant,
) -> Result<f64, GeometryError> {
    cfg.validate()?;
    if !d.is_finite() || d < 0.0 {
        return Err(GeometryError::InvalidParameter(format!("distance {d}")));
    }
    let mut prod = 1.0;
    let mut sum = 0.0;
    for shell in &cfg.shells {
        let ccdf = shell_ccdf_inner(d, shell, cfg.earth_radius_m, variant)?;
        if ccdf == 0.0 {
            // A shell already covers distance d almost surely; no density
            // mass can remain here.
            return Ok(0.0);
        }
        prod *= ccdf;
        sum += shell_pdf_inner(d, shell, cfg.earth_radius_m, variant)? / ccdf;
    }
    Ok(prod * sum)
}

/// Total probability that at least one satellite is above the horizon:
/// `contact_cdf` evaluated past every horizon distance, in closed form.
pub fn visibility_mass(cfg: &ConstellationConfig, variant: DistributionVariant) -> Result<f64, GeometryError> {
    contact_cdf(f64::INFINITY, cfg, variant)
}

// ============================================================================
// Sampling
// ============================================================================

/// Uniform point on the shell's sphere: cos(theta) uniform on [-1, 1],
/// longitude uniform on [0, 2 pi). Returned as Cartesian coordinates [m]
/// centered on the Earth; the reference surface point used throughout the
/// crate is the pole `(0, 0, earth_radius)`.
pub fn sample_satellite<R: Rng + ?Sized>(shell: &Shell, earth_radius_m: f64, rng: &mut R) -> [f64; 3] {
    let r = shell.orbit_radius_m(earth_radius_m);
    let cos_t: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let (sin_p, cos_p) = phi.sin_cos();
    [r * sin_t * cos_p, r * sin_t * sin_p, r * cos_t]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const RE: f64 = 6_371_000.0;

    fn shell(altitude_km: f64, count: u32) -> Shell {
        Shell::new(altitude_km * 1e3, count).unwrap()
    }

    fn single(altitude_km: f64, count: u32) -> ConstellationConfig {
        ConstellationConfig::new(RE, vec![shell(altitude_km, count)]).unwrap()
    }

    // ------------------------------------------------------------------
    // horizon_distance
    // ------------------------------------------------------------------

    #[test]
    fn horizon_at_altitude_equal_radius_is_sqrt3() {
        // 2 re^2 + re^2 = 3 re^2.
        let s = Shell::new(RE, 4).unwrap();
        let d = horizon_distance(&s, RE).unwrap();
        assert!((d - 3f64.sqrt() * RE).abs() <= 1e-6);
    }

    #[test]
    fn horizon_matches_direct_evaluation() {
        // Frozen from sqrt(2 * 6371e3 * a + a^2) evaluated independently.
        let d500 = horizon_distance(&shell(500.0, 1), RE).unwrap();
        assert!((d500 - 2_573_130.389_234_094).abs() < 1e-3, "got {d500}");
        let d1500 = horizon_distance(&shell(1500.0, 1), RE).unwrap();
        assert!((d1500 - 4_622_012.548_663_191).abs() < 1e-3, "got {d1500}");
    }

    #[test]
    fn horizon_rejects_bad_inputs() {
        assert!(Shell::new(-1.0, 5).is_err());
        assert!(Shell::new(500e3, 0).is_err());
        assert!(horizon_distance(&shell(500.0, 1), 0.0).is_err());
    }

    // ------------------------------------------------------------------
    // shell_ccdf
    // ------------------------------------------------------------------

    #[test]
    fn ccdf_is_one_below_altitude() {
        let s = shell(500.0, 10);
        for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
            assert_eq!(shell_ccdf(0.5 * s.altitude_m, &s, RE, variant).unwrap(), 1.0);
            assert_eq!(shell_ccdf(0.0, &s, RE, variant).unwrap(), 1.0);
        }
    }

    #[test]
    fn ccdf_beyond_horizon_arc_angle() {
        let s = shell(500.0, 7);
        let r = RE + s.altitude_m;
        let expect = (1.0 - (RE / r).acos() / PI).powi(7);
        let got = shell_ccdf(1e9, &s, RE, DistributionVariant::ArcAngle).unwrap();
        assert!((got - expect).abs() <= 1e-15, "{got} vs {expect}");
        // Continuous at the horizon.
        let dmax = horizon_distance(&s, RE).unwrap();
        let at = shell_ccdf(dmax, &s, RE, DistributionVariant::ArcAngle).unwrap();
        assert!((at - expect).abs() <= 1e-12);
    }

    #[test]
    fn ccdf_beyond_horizon_cap_area_is_cap_complement() {
        let s = shell(500.0, 3);
        let r = RE + s.altitude_m;
        let expect = (1.0 - s.altitude_m / (2.0 * r)).powi(3);
        let got = shell_ccdf(f64::INFINITY, &s, RE, DistributionVariant::CapArea).unwrap();
        assert!((got - expect).abs() <= 1e-15, "{got} vs {expect}");
    }

    #[test]
    fn ccdf_monotone_in_distance_and_count() {
        let re = RE;
        for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
            let lo = shell(800.0, 12);
            let hi = shell(800.0, 13);
            let dmax = horizon_distance(&lo, re).unwrap();
            let mut prev = 1.0;
            for i in 0..=2000 {
                let d = 1.2 * dmax * i as f64 / 2000.0;
                let c = shell_ccdf(d, &lo, re, variant).unwrap();
                assert!(c <= prev + 1e-15, "ccdf must not increase in d");
                let more = shell_ccdf(d, &hi, re, variant).unwrap();
                assert!(more <= c + 1e-15, "ccdf must not increase in count");
                prev = c;
            }
        }
    }

    // ------------------------------------------------------------------
    // contact_cdf / contact_pdf
    // ------------------------------------------------------------------

    #[test]
    fn cdf_zero_below_lowest_altitude() {
        let cfg =
            ConstellationConfig::new(RE, vec![shell(500.0, 5), shell(1500.0, 10)]).unwrap();
        for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
            assert_eq!(contact_cdf(0.0, &cfg, variant).unwrap(), 0.0);
            assert_eq!(contact_cdf(499e3, &cfg, variant).unwrap(), 0.0);
        }
    }

    #[test]
    fn single_shell_cdf_is_ccdf_complement() {
        let cfg = single(700.0, 20);
        let s = &cfg.shells[0];
        for i in 0..200 {
            let d = 3e6 * i as f64 / 200.0;
            let cdf = contact_cdf(d, &cfg, DistributionVariant::CapArea).unwrap();
            let ccdf = shell_ccdf(d, s, RE, DistributionVariant::CapArea).unwrap();
            assert!((cdf - (1.0 - ccdf)).abs() <= 1e-15);
        }
    }

    #[test]
    fn cdf_properties_on_randomized_configs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e0);
        for _ in 0..8 {
            let n = rng.random_range(1..=3usize);
            let shells: Vec<Shell> = (0..n)
                .map(|_| {
                    shell(
                        rng.random_range(300.0..2000.0),
                        rng.random_range(1..=100u32),
                    )
                })
                .collect();
            let cfg = ConstellationConfig::new(RE, shells).unwrap();
            for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
                let mass = visibility_mass(&cfg, variant).unwrap();
                assert!((0.0..=1.0).contains(&mass));
                let dmax = cfg.max_horizon_m();
                let mut prev = 0.0;
                for i in 0..=1000 {
                    let d = 1.1 * dmax * i as f64 / 1000.0;
                    let c = contact_cdf(d, &cfg, variant).unwrap();
                    assert!(c >= prev - 1e-15, "cdf must not decrease");
                    assert!(c <= mass + 1e-12, "cdf bounded by visibility mass");
                    prev = c;
                }
                assert!((contact_cdf(2.0 * dmax, &cfg, variant).unwrap() - mass).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn pdf_zero_outside_support_and_nonnegative() {
        let cfg =
            ConstellationConfig::new(RE, vec![shell(500.0, 5), shell(1500.0, 10)]).unwrap();
        let top = cfg.max_horizon_m();
        for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
            assert_eq!(contact_pdf(100e3, &cfg, variant).unwrap(), 0.0);
            assert_eq!(contact_pdf(top * 1.001, &cfg, variant).unwrap(), 0.0);
            for i in 1..500 {
                let d = 499e3 + (top - 499e3) * i as f64 / 500.0;
                assert!(contact_pdf(d, &cfg, variant).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn pdf_matches_finite_difference_of_cdf() {
        // Central difference with h = 1 m on interior points, away from the
        // branch boundaries.
        let cfg =
            ConstellationConfig::new(RE, vec![shell(500.0, 8), shell(900.0, 30)]).unwrap();
        let h = 1.0;
        for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
            for d_km in [520.0, 700.0, 950.0, 1400.0, 2100.0, 2500.0, 3300.0] {
                let d = d_km * 1e3;
                let fd = (contact_cdf(d + h, &cfg, variant).unwrap()
                    - contact_cdf(d - h, &cfg, variant).unwrap())
                    / (2.0 * h);
                let pdf = contact_pdf(d, &cfg, variant).unwrap();
                let rel = (fd - pdf).abs() / pdf.abs().max(1e-300);
                assert!(rel < 1e-4, "variant {variant:?} d={d_km} km: fd {fd} pdf {pdf}");
            }
        }
    }

    #[test]
    fn pdf_integrates_to_visibility_mass() {
        use crate::numerics::{integrate, QuadratureSpec, UpperLimit};
        let cfg =
            ConstellationConfig::new(RE, vec![shell(500.0, 8), shell(1200.0, 25)]).unwrap();
        for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
            let cfg2 = cfg.clone();
            let mut breaks: Vec<f64> = cfg
                .shells
                .iter()
                .flat_map(|s| {
                    [
                        s.altitude_m,
                        horizon_distance_unchecked(s, cfg.earth_radius_m),
                    ]
                })
                .collect();
            breaks.sort_by(f64::total_cmp);
            let top = cfg.max_horizon_m();
            let est = integrate(QuadratureSpec {
                integrand: move |d| contact_pdf(d, &cfg2, variant).unwrap(),
                start: cfg.min_altitude_m(),
                breakpoints: breaks,
                end: UpperLimit::Finite(top),
                abs_tol: 1e-8,
                rel_tol: 1e-9,
                max_intervals: 200_000,
            })
            .unwrap();
            let mass = visibility_mass(&cfg, variant).unwrap();
            assert!(
                (est.value - mass).abs() <= 1e-6,
                "variant {variant:?}: integral {} vs mass {mass}",
                est.value
            );
        }
    }

    #[test]
    fn permuting_shells_leaves_cdf_unchanged() {
        let a = shell(500.0, 5);
        let b = shell(900.0, 40);
        let c = shell(1700.0, 12);
        let fwd = ConstellationConfig::new(RE, vec![a, b, c]).unwrap();
        let rev = ConstellationConfig::new(RE, vec![c, a, b]).unwrap();
        for i in 0..300 {
            let d = 5e6 * i as f64 / 300.0;
            let x = contact_cdf(d, &fwd, DistributionVariant::CapArea).unwrap();
            let y = contact_cdf(d, &rev, DistributionVariant::CapArea).unwrap();
            assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }

    // ------------------------------------------------------------------
    // sample_satellite
    // ------------------------------------------------------------------

    #[test]
    fn samples_lie_on_the_sphere() {
        let s = shell(650.0, 1);
        let r = s.orbit_radius_m(RE);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = sample_satellite(&s, RE, &mut rng);
            let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((norm - r).abs() <= 1e-6 * r);
        }
    }

    #[test]
    fn mean_polar_cosine_is_zero() {
        let s = shell(500.0, 1);
        let r = s.orbit_radius_m(RE);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1_000_000;
        let mut acc = 0.0;
        for _ in 0..n {
            acc += sample_satellite(&s, RE, &mut rng)[2] / r;
        }
        let mean = acc / n as f64;
        // Var(cos theta) = 1/3; allow 3 sigma.
        let bound = 3.0 * (1.0f64 / 3.0 / n as f64).sqrt();
        assert!(mean.abs() <= bound, "mean {mean} bound {bound}");
    }

    #[test]
    fn visibility_fraction_matches_cap_area_form() {
        // P(d <= d_max) for one satellite equals the closed-form cap
        // fraction a / (2 r), i.e. one minus the beyond-horizon CCDF.
        let s = shell(500.0, 1);
        let r = s.orbit_radius_m(RE);
        let dmax = horizon_distance(&s, RE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let n = 1_000_000;
        let mut visible = 0u64;
        for _ in 0..n {
            let p = sample_satellite(&s, RE, &mut rng);
            let dx = p[0];
            let dy = p[1];
            let dz = p[2] - RE;
            if (dx * dx + dy * dy + dz * dz).sqrt() <= dmax {
                visible += 1;
            }
        }
        let frac = visible as f64 / n as f64;
        let expect = s.altitude_m / (2.0 * r);
        let sigma = (expect * (1.0 - expect) / n as f64).sqrt();
        assert!(
            (frac - expect).abs() <= 3.0 * sigma,
            "frac {frac} expect {expect}"
        );
    }

    // ------------------------------------------------------------------
    // Property tests
    // ------------------------------------------------------------------

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn ccdf_never_increases_with_distance(
                alt_km in 300.0..2000.0f64,
                count in 1u32..200,
                d1 in 0.0..6e6f64,
                d2 in 0.0..6e6f64,
            ) {
                let s = Shell::new(alt_km * 1e3, count).unwrap();
                let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
                for variant in [DistributionVariant::ArcAngle, DistributionVariant::CapArea] {
                    let a = shell_ccdf(lo, &s, RE, variant).unwrap();
                    let b = shell_ccdf(hi, &s, RE, variant).unwrap();
                    prop_assert!(b <= a + 1e-15);
                }
            }

            #[test]
            fn contact_cdf_permutation_invariant(
                alts in proptest::collection::vec(300.0..2000.0f64, 2..4),
                counts in proptest::collection::vec(1u32..100, 2..4),
                d in 0.0..6e6f64,
            ) {
                let n = alts.len().min(counts.len());
                let shells: Vec<Shell> = (0..n)
                    .map(|i| Shell::new(alts[i] * 1e3, counts[i]).unwrap())
                    .collect();
                let mut rev = shells.clone();
                rev.reverse();
                let cfg = ConstellationConfig::new(RE, shells).unwrap();
                let cfg_rev = ConstellationConfig::new(RE, rev).unwrap();
                let x = contact_cdf(d, &cfg, DistributionVariant::CapArea).unwrap();
                let y = contact_cdf(d, &cfg_rev, DistributionVariant::CapArea).unwrap();
                prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
            }
        }
    }
}
