//! Algebraic-geometry codes and the arithmetic that makes them beat random codes.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: exact arithmetic in `GF(p^m)`;
//! * [`code`]: linear codes, brute-force minimum distance, Reed–Solomon codes,
//!   the q-ary symmetric channel;
//! * [`bounds`]: entropy, the Gilbert–Varshamov curve and the Singleton,
//!   Plotkin and TVZ lines;
//! * [`elliptic`]: short Weierstrass curves, their group law, point counts,
//!   2-isogenies and supersingularity;
//! * [`agcode`]: one-point Riemann–Roch bases and the codes they generate,
//!   plus genus formulas;
//! * [`modular`]: genus and ramification of `X_0(l)`, supersingular
//!   j-invariants and the point/genus ratio `p - 1` over `F_(p^2)`.
//!
//! The companion guide in `book/` walks through the same material; its code
//! listings are compiled and run as doc-tests of this crate.

pub mod agcode;
pub(crate) mod arith;
pub mod bounds;
pub mod code;
pub mod elliptic;
pub mod field;
pub mod modular;

pub use arith::{is_prime, prime_power};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/codes.md")]
    pub mod codes {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/elliptic.md")]
    pub mod elliptic {}
    #[doc = include_str!("../../../book/src/agcodes.md")]
    pub mod agcodes {}
    #[doc = include_str!("../../../book/src/modular.md")]
    pub mod modular {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
}
