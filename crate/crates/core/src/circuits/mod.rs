//! Qudit gates, Clifford checks, state injection and the phase-flip code.

pub mod clifford;
pub mod gates;
pub mod injection;
pub mod phase_flip;
pub mod state;

pub use clifford::{conjugate_to_pauli, is_clifford, qutrit_t_nogo, NogoReport};
pub use gates::{gate, GateName};
pub use injection::{inject_diagonal, inject_qft, InjectionRecord};
pub use phase_flip::{parity_check_circuit, phase_flip_code, phase_flip_codewords, phase_flip_decode};
pub use state::{seeded_rng, DenseState, MeasurementRecord};
