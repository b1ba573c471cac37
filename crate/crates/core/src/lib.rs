pub mod classify;
pub mod error;
pub mod lears;
pub mod linalg;
pub mod loopalg;
pub mod qgroup;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod text;

pub use error::{Error, Result};
pub use qgroup::{QSubgroup, ReflectionSpace};
pub use rational::Q;
pub use report::{Check, Report, Status};
pub use rootsys::{RootSystemDesc, RootVector};
