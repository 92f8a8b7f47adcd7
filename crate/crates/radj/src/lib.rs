//! Lax cubes, commutative squares and zigzag 2-cells over finite categories.
//!
//! The crate is organised by layer:
//!
//! * [`finpres`]: finite 1- and 2-categories given by composition tables.
//! * [`cube`]: faces of the combinatorial cube, parity, boundary pastings and the collapse map.
//! * [`squares`]: commutative squares, signed squares, the `E`/`H` companion squares.
//! * [`zigzag`]: zigzags, rows and stacks of signed squares, normalization and bounded equality.
//! * [`adj_oracle`]: an independent model of the free adjunction used as an oracle.
//! * [`univprop`]: extension of functors along the inclusion into the zigzag construction.
//! * [`strings`]: planar matchings used as a distinctness invariant.
//! * [`render`]: DOT and TikZ emitters.

#![forbid(unsafe_code)]

pub mod adj_oracle;
pub mod cube;
pub mod error;
pub mod finpres;
pub mod fixtures;
pub mod par;
pub mod render;
pub mod squares;
pub mod strings;
pub mod univprop;
pub mod zigzag;

pub use error::{Error, Result};

/// Three-valued verdict of a bounded equality search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Distinct,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Equal => "Equal",
            Verdict::Distinct => "Distinct",
            Verdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}
