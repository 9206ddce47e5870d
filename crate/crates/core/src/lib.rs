//! Heralded preparation of an entangled two-qubit state on a three-spin
//! Heisenberg star.
//!
//! Two basic spins `S_1`, `S_2` couple through an auxiliary spin `S_c` with
//! isotropic exchange `J` in a field `B`. Starting from `|↑↑↓⟩` the system
//! evolves freely; a readout of `S_c` at `t_f` heralds a two-qubit state of
//! the basic spins. The crate provides
//!
//! - [`hilbert`]: basis conventions, spin operators and the Hamiltonian,
//! - [`spectral`]: the closed-form eigensystem,
//! - [`dynamics`]: the closed-form and numerically propagated evolution,
//! - [`herald`]: the heralded branches and readout-field figures,
//! - [`entangle`]: concurrence, fidelity and the maximal-entanglement solver,
//! - [`sweep`] and [`cli`]: grids, CSV/JSON emission and the command line,
//! - [`jacobi`] and [`phase`]: the numeric oracle and accurate large phases.
//!
//! ```
//! use spinstar::{presets, entangle::{solve_t_ent, SolverMode}};
//!
//! let params = presets::XEF2.params(1.0).unwrap();
//! let sol = solve_t_ent(&params, 0, SolverMode::Exact).unwrap();
//! assert!((sol.t_ent - 0.83).abs() < 0.01);
//! ```

pub mod cli;
pub mod dynamics;
pub mod entangle;
pub mod error;
pub mod herald;
pub mod hilbert;
pub mod jacobi;
pub mod phase;
pub mod presets;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use hilbert::{ComplexAmp, SystemParams, ThreeSpinState, TwoSpinState, UnitMode};
