//! One-way unlocalizable quantum discord, quantum discord and their
//! polygamy deficits for small multipartite pure states.
//!
//! All entropies are in bits. Composite systems use Kronecker order with
//! the first party as the most significant digit.

pub mod correlations;
pub mod entropy;
pub mod error;
pub mod families;
pub mod measurement;
pub mod optimize;
pub mod polygamy;
pub mod rng;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{
    density, eig_hermitian, haar_random_pure, purify, tensor, DensityMatrix, HermitianEigen, StateVector,
    SubsystemLayout, TensorProduct, C64,
};
