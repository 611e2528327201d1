//! Dense statevector dynamics: exact spectra and evolution, product-formula
//! schedules, and effective spectra of the resulting unitaries.

mod effective;
mod schedule;
mod spectrum;
mod state;

pub use effective::{effective_spectrum, match_eigenpair, EffectiveSpectrum};
pub use schedule::{
    apply_schedule, query_count, schedule_unitary, suzuki_coefficient, trotter_schedule,
    PauliRotation, QueryCount, RotationSchedule,
};
pub use spectrum::{exact_eigenpairs, exact_evolve, SpectralData};
pub use state::{StateVector, NORM_TOLERANCE};

pub(crate) use state::gaussian_vector;
