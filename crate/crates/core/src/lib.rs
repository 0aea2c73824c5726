//! Counting locally-optimal and strict-gridlock colorings of graphs.
//!
//! A coloring is *locally optimal* when every vertex's color is held by
//! strictly more of its neighbors than any other color. The number of such
//! `k`-colorings is a polynomial in `k`, the LO-polynomial; subtracting the
//! `k` consensus colorings gives the SG-polynomial, which counts strict
//! gridlocks.
//!
//! * [`graph`]: the graph model with voting and non-voting edges.
//! * [`poly`]: exact integer polynomials.
//! * [`engine`]: the recursive subdivision algorithm.
//! * [`oracles`]: brute-force, set-partition and interpolation checks.
//! * [`families`]: named graphs, including the two five-clique graphs.

mod compact;
pub mod engine;
pub mod error;
pub mod families;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod par;
pub mod poly;

pub use engine::{lo_polynomial, sg_from_lo, sg_polynomial, Engine, EngineConfig, LeafRule};
pub use error::{Error, Result};
pub use families::Family;
pub use graph::{Graph, VertexId, VertexRole};
pub use poly::IntPolynomial;
