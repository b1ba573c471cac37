//! Lie algebras over ℚ whose anisotropic roots realize LEARS of null
//! dimension one: matrix algebras, split octonions, graded loop windows,
//! the central extension and the degree derivation.

pub mod cocycle;
pub mod fiber;
pub mod groupalg;
pub mod matrix;
pub mod octonion;
pub mod realize;
pub mod window;

pub use cocycle::Cocycle;
pub use fiber::{build_fiber, Fiber, LoopLabel};
pub use groupalg::{trace_identity_check, GroupElement, TwistedGroupAlgebra};
pub use realize::{realize, Realization};
pub use window::{
    add_degree_derivation, build_loop_algebra, central_extend, jacobi_check, root_decomposition,
    GradedLieWindow, JacobiMode, JacobiReport, RootDecomposition,
};
