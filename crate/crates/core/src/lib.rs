//! Construction, enumeration and classification of minimal origamis.
//!
//! A minimal origami of genus `g` is a square-tiled surface made of
//! `N = 2g − 1` unit squares forming one horizontal and one vertical cylinder,
//! with a single cone point of angle `2π(2g − 1)`. Labeling squares so that
//! moving right is `σ_N = (1,2,…,N)`, such a surface is a permutation `τ`
//! (moving up) for which both `τ` and `[τ, σ_N]` are `N`-cycles.
//!
//! * [`perm`]: permutations, cycle notation, group orders
//! * [`construction`]: explicit odd- and even-genus families
//! * [`origami`]: general origamis, invariants and canonical forms
//! * [`sl2z`]: the SL(2,Z) action and orbit enumeration
//! * [`classify`]: σ-conjugacy classes and exhaustive search
//! * [`catalog`]: JSON Lines catalogs, statistics, SVG rendering

pub mod catalog;
pub mod classify;
pub mod construction;
pub mod origami;
pub mod perm;
pub mod sl2z;

pub use origami::{CanonicalForm, Origami, Stratum};
pub use perm::Permutation;
