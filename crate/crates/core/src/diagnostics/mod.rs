//! Trajectory diagnostics: damping laws, scattering detector, space-time norms
//! and the localized virial identity. All functions read a finished trajectory.

pub mod damping;
pub mod scatter;
pub mod strichartz;
pub mod table;
pub mod virial;

pub use damping::{
    damping_monitor, envelope_fit, g_decompose, g_pairing, reduced_envelope, z_power_monitor, DampingSeries,
    EnvelopeFit,
};
pub use scatter::{pullback, scattering_defect, ScatterReport};
pub use strichartz::{
    duhamel_accumulate, nakanishi_lower_bound, nakanishi_seminorm, st_power, strichartz_st, DuhamelIntegral,
    NakanishiValue,
};
pub use table::{write_summary, SummaryRecord, Table};
pub use virial::{cutoff, virial_monitor, virial_terms, VirialSeries};
