//! Small-dimension Clifford algebras on a blade basis.
//!
//! Covers the generic `Cl(p,q)` construction for `p + q <= 6`, the 2x2
//! matrix representations of the two bidimensional algebras, the
//! bidimensional Minkowski algebra with its embedding of the hyperbolic
//! ring, Dirac-type operators on sampled planar fields, and the Cauchy
//! kernel flux computations.

mod algebra;
mod field;
mod kernels;

pub use algebra::{
    blade_product, f_inverse, f_map, pauli_check, pauli_iso, pauli_product, BinarySig,
    CliffordError, Multivector, Signature,
};
pub use field::{dirac_apply, hs_analytic_check, hs_analytic_residuals, DiracKind, SampledField};
pub use kernels::{
    euclidean_kernel_dirac_residual, green_flux, hyperbolic_kernel_dirac_residual,
    hyperbolic_kernel_flux, kernel_e, sigma_n,
};
