//! List decoding of generalized Reed-Solomon codes with the Guruswami-Sudan
//! algorithm, with interpolation systems shrunk by a-priori known factors of
//! the interpolation polynomial.

pub mod error;
pub mod gf;
pub mod grs;
pub mod interp;
pub mod listdec;
pub mod plan;
pub mod poly;
pub mod sierpinski;

pub use error::{Error, Result};
pub use gf::{ArithOp, Elem, Field};
pub use grs::{hamming_distance, GrsCode};
pub use listdec::{gsa_decode, z_roots, Candidate, DecodeResult};
pub use plan::{build_plan, derive_params, GsaParams, Mode, PrefactorPlan};
pub use poly::{BivarPoly, Poly};
pub use sierpinski::SierpinskiContext;
