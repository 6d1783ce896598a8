//! Constructions and exhaustive decisions for rainbow subgraphs in properly
//! edge-colored complete bipartite graphs.
//!
//! `K_{m,n} ->_R K_{a,b}` holds when every proper edge-coloring of `K_{m,n}`
//! contains a rainbow `K_{a,b}`. Colorings are handled as latin rectangles
//! ([`LatinRectangle`]); a rectangle with no rainbow `a x b` or `b x a`
//! subrectangle is a *blocker*, a certificate that the arrow fails.

pub mod algebra;
pub mod constructions;
pub mod decide;
pub mod fixtures;
pub mod latin;
pub mod rainbow;
pub mod ramsey;

pub use latin::{LatinError, LatinRectangle, SymbolId};
pub use rainbow::{
    find_rainbow, find_rainbow_either, find_rainbow_shape, greedy_rainbow, Orientation,
    OrientedWitness, RainbowError, RainbowQuery, SubrectangleWitness,
};
pub use decide::{decide_arrow, verify_certificate, ArrowDecision, CertificateVerdict, DecideError, SearchConfig};
