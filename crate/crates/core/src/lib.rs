//! Exact computations around the stable derivation algebra, multiple zeta
//! values and the Drinfel'd associator.

pub mod arith;
pub mod associator;
pub mod braidlie;
pub mod cache;
pub mod cli;
pub mod error;
pub mod fixed;
pub mod freelie;
pub mod mzv;
pub mod ncalg;
pub mod sda;

pub use error::{Error, Result};

// Runs the code blocks of the guide in book/ as doctests, one module per
// chapter so a failure points at its chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/free-lie.md")]
    mod free_lie {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/zeta-values.md")]
    mod zeta_values {}
    #[doc = include_str!("../../../book/src/associator.md")]
    mod associator {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
