//! Weight distributions of the reducible cyclic codes `C(p, m)` (p prime,
//! m odd) by three independent routes:
//!
//! * the closed form obtained from the spectrum of the Hermitian forms graph,
//! * exponential sums and character sums over the Cayley graph `Cay(G, S)`,
//! * exhaustive codeword enumeration.
//!
//! All arithmetic is exact. Counts use arbitrary-precision integers.

mod arith;
pub mod cayley_spectrum;
pub mod code_construct;
pub mod enumerate;
pub mod error;
pub mod exp_sums;
pub mod finite_field;
pub mod hermitian_graph;

pub use error::{Error, Result};
pub use finite_field::{build_field, CodeParams, FieldCtx, FieldElement, Gf, PolyFp};
