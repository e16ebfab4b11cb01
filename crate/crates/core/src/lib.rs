//! Exact combinatorics of finite regular coverings of graphs and of the
//! finite truncations of their inverse towers.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed from
//! explicit multiplication tables, so every check is exact:
//!
//! * [`groups`]: finite groups as tables, homomorphisms, subgroups, quotients
//!   and reduced words in a free group.
//! * [`complex`]: finite connected base graphs, BFS spanning trees and the
//!   induced free basis of the fundamental group.
//! * [`covers`]: covers built from `(φ: F_r → G, K ≤ G)`, the right
//!   (monodromy) and left (deck) actions on the fibre, regularity and the
//!   fibre group.
//! * [`tower`]: chains of epimorphisms `G_{i+1} → G_i`, compatible fibre
//!   tuples, `θ`, the dense-leaf test and the kernel chain.
//! * [`borel`]: the Borel quotient at a level pair, reconstruction of a
//!   tower from fibre data and the bundled verification suite.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod borel;
pub mod complex;
pub mod covers;
mod error;
pub mod groups;
pub mod tower;

pub use error::{Error, Result};
