//! Exact arithmetic for `Z_p`-towers of finite graphs built from voltage
//! assignments with ramification data.
//!
//! Starting from a finite connected multigraph, a prime `p`, one `Z_p`
//! voltage per edge and a ramification exponent per vertex, the crate
//! constructs the derived tower of branched covers, counts spanning
//! trees exactly at every level (Kirchhoff via fraction-free
//! elimination), computes sandpile groups (Smith normal form), assembles
//! the characteristic series `f(T) = det(D - B(T))`, extracts the
//! invariants `mu` and `lambda`, and verifies the asymptotic growth law
//! `ord_p kappa(X_n) = mu p^n + lambda n + nu`.
//!
//! Everything runs over arbitrary-precision integers; the only
//! approximate carrier is the explicitly truncated series ring
//! `Z_p[[T]] mod (p^N, T^M)` used when voltages themselves are only
//! known to finite precision, and results computed there carry a
//! certification flag.
//!
//! The `examples/` directory is the guided tour, one runnable program
//! per capability:
//!
//! ```bash
//! cargo run --example two_loop_bouquet      # a first tower, end to end
//! cargo run --example dumbbell_growth      # growth-law verification
//! cargo run --example spanning_trees       # Kirchhoff vs brute force
//! cargo run --example sandpile_groups      # invariant factors, p-parts
//! cargo run --example series_toolkit       # Laurent/truncated arithmetic
//! cargo run --example covering_maps        # projections and pushforwards
//! cargo run --example immersions           # unramified vs branched levels
//! cargo run --example emit_formats         # DOT and JSON emission
//! ```
//!
//! A thin CLI (`zptower`) wraps the same entry points for JSON input
//! documents; see the README for the document schema.

pub mod error;
pub mod graph;
pub mod input;
pub mod iwasawa;
pub mod matrix;
pub mod oracle;
pub mod padic;
pub mod picard;
pub mod report;
pub mod tower;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{Error, Result};
