//! Longest common subsequences that exclude a forbidden substring.
//!
//! Given strings `A`, `B` and a pattern `P`, the problem is to find a longest
//! common subsequence of `A` and `B` that does not contain `P` as a
//! contiguous substring. The main solver ([`solve`]) runs a diagonal
//! shortest-prefix dynamic program whose work is bounded by
//! `O(n|Σ| + (L+1)(m-L+1)r)`, where `L` is the answer length. It is fastest
//! when the answer is very short or very close to `m`.
//!
//! The crate also ships three independent reference solvers in [`oracles`]
//! and a deterministic fuzz/bench driver in [`harness`].
//!
//! ```
//! use streclcs::{solve, ProblemInstance};
//!
//! let inst = ProblemInstance::new("abcabac", "acbcaacbaa", "abc").unwrap();
//! let res = solve(&inst, true);
//! assert_eq!(res.length, 5);
//! assert!(inst.validate_witness(res.witness.as_deref().unwrap()));
//! ```

pub mod codec;
pub mod dp;
mod error;
pub mod harness;
pub mod next_tables;
pub mod oracles;

pub use codec::{build_codec, encode_instance, Codec, ProblemInstance, Symbol};
pub use dp::{run_diagonals, solve, Back, DiagonalTable, DpConfig, DpStats, SolveResult, Tables};
pub use error::Error;
pub use next_tables::{failure_function, NextOcc, OverlapAutomaton};

pub type Result<T, E = Error> = std::result::Result<T, E>;
