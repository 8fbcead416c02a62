//! Representations of anisotropic scalar- and symmetric tensor-valued
//! functions for the fourteen centrosymmetric point groups in 3D, built from
//! second-order structural tensor sets.

pub mod error;
pub mod expr;
pub mod fit;
pub mod groups;
pub mod iso;
pub mod json;
pub mod linalg;
pub mod model;
pub mod rep;
pub mod rng;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use fit::{fit_linear, FitOptions, FitResult, SampleSet};
pub use groups::{GroupName, PointGroup, StructuralTensorSet};
pub use model::{eval_scalar, eval_tensor, symmetrize_model, CoefficientModel, ModelKind};
pub use rep::{Form, Formulation, Representation};
pub use tensor::{Mat3, SkewTensor2, SymTensor2, Vec3};
pub use verify::{SweepConfig, VerificationReport};
