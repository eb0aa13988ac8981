//! Spectral side of the coupling: radial Fourier profile, resonance constants,
//! outgoing resolvent and the dispersive decay probe.

pub mod apply;
pub mod decay;
pub mod fgr;
pub mod profile;

pub use apply::{resolvent_apply, ResolventMode};
pub use decay::{dispersive_decay_probe, log_times, DecayReport, Taper};
pub use fgr::{beta_resolvent, fgr_condition_check, fgr_gamma, sphere_integral, FgrReport, ShellParams};
pub use profile::{hat_transform, radial_hat, FrequencySampling, ProfileSource, SpectralProfile, SpectralShape};
