//! Random-matrix stand-ins for the exact model.
//!
//! `Z` is approximated by a Wishart matrix `A = (α/N) X Xᵀ` whose spectrum
//! tends to the free Poisson law, and the matrix algebra `M_n` by
//! `U (b ⊗ I_{N/n}) Uᵀ` for a Haar-orthogonal `U` drawn once per trial.
//!
//! Every trial draws from its own ChaCha stream `(seed, trial)`, and faer is
//! pinned to sequential kernels, so results are bit-identical whether trials
//! run serially or in parallel.

mod config;
mod error;
mod estimate;
pub mod marchenko_pastur;
mod pair;
mod sampling;
mod spectrum;

pub use config::SimulationConfig;
pub use error::{Result, RmtError};
pub use estimate::MomentEstimate;
pub use pair::{sample_free_pair, FreePairContext};
pub use spectrum::{sample_free_poisson, SpectralSample};
