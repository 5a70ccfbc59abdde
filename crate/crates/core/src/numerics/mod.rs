//! Complex matrices, Hermitian eigendecomposition, density matrices with
//! partial traces, and spherical quadrature.

mod density_matrix;
mod eigen;
mod matrix;
mod quadrature;

pub use density_matrix::{
    partial_trace, DensityMatrix, Party, CLIP_TOLERANCE, DEFAULT_TOLERANCE,
};
pub use eigen::{eig_hermitian, HermitianEigen, HERMITIAN_TOLERANCE};
pub use matrix::CMatrix;
pub use quadrature::{gauss_legendre, integrate_sphere, QuadratureGrid, SphereNode};
