//! Exact computations for gauge groups of principal `Sp(n)`-bundles over `S^4`.
//!
//! The crate computes the image of `Phi: KSp~^{-2}(Sigma^3 Q_n) -> H^{4n+2}` from
//! Chern-character data, reads off the order `4n(2n+1)` of the Samelson
//! product `<epsilon, iota_n>`, and evaluates the homotopy invariants and
//! p-local classification criteria that follow from it.
//!
//! ```
//! use sp_gauge::phi::samelson_order_eps_iota;
//!
//! assert_eq!(samelson_order_eps_iota(2).unwrap(), 40u32.into());
//! ```

pub mod arith;
pub mod chdata;
pub mod cli;
pub mod error;
pub mod gauge;
pub mod lattice;
pub mod phi;
pub mod series;

pub use arith::Rational;
pub use error::{Error, Result};
pub use series::Backend;
