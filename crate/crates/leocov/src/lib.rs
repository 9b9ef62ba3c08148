//! Coverage analysis for gateway-relayed LEO satellite constellations.
//!
//! Satellites form binomial point processes on concentric spherical shells,
//! gateways form a planar Poisson point process, and a user is covered when
//! both the satellite-gateway hop (shadowed-Rician fading) and the
//! gateway-user hop (Rayleigh fading) clear their SNR thresholds. The crate
//! evaluates the link and end-to-end coverage probabilities two ways:
//!
//! * analytically, from the contact-distance distribution of the nearest
//!   visible satellite and the shadowed-Rician power series
//!   ([`coverage`]), and
//! * by snapshot Monte-Carlo simulation ([`montecarlo`]), which serves as
//!   the oracle for every analytic expression.
//!
//! A distant fiber-connected base station under Rayleigh fading is the
//! baseline the satellite system is compared against; [`coverage`] also
//! solves for the break-even base-station distance and gateway density.
//!
//! [`config`] ingests unit-tagged TOML descriptions of the system and
//! [`experiment`] runs reproducible parameter sweeps that emit CSV tables.

pub mod channel;
pub mod config;
pub mod coverage;
pub mod experiment;
pub mod geometry;
pub mod montecarlo;
pub mod numerics;

pub use channel::{LinkBudget, SRFadingParams, Thresholds};
pub use geometry::{ConstellationConfig, DistributionVariant, Shell};

/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Mean Earth radius [m], the default when a configuration gives none.
pub const MEAN_EARTH_RADIUS_M: f64 = 6_371_000.0;
