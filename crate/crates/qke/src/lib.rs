//! Quantum key expansion (QKE) from arbitrary classical linear codes.
//!
//! Standard CSS-based key distribution needs dual-containing codes, which are
//! hard to construct with good performance. This crate lifts that constraint:
//! any two classical linear codes of the same length are extended with `c`
//! extra columns into a mutually orthogonal augmented pair, at the cost of a
//! pre-shared key of `c` bits. A run of the protocol then turns `c` secret
//! bits into `m = k1 + k2 + c - n` fresh ones, a net expansion of
//! `k1 + k2 - n` bits over a channel that corrupts at most `t` of the `n`
//! transmitted qubits (or an i.i.d. channel the codes can handle).
//!
//! The crate provides:
//!
//! - [`gf2`] — deterministic dense linear algebra over GF(2);
//! - [`codes`] — classical codes and syndrome decoders (exhaustive
//!   min-weight and belief propagation);
//! - [`augment`] — the augmented parity-check construction and its
//!   dual-basis system;
//! - [`channel`] — simulated noisy channels (adversarial, BSC, Pauli);
//! - [`protocol`] — the idealized and BB84-style key expansion protocols;
//! - [`cli`] — the driver behind the `qke` binary.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod augment;
pub mod channel;
pub mod cli;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod protocol;
pub mod rng;

pub use error::{Error, Result};
