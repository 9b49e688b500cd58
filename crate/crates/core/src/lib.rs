//! Colorings of fractional powers of graphs: construction, verification and
//! exact search.

pub mod cert;
pub mod color;
pub mod construct;
pub mod error;
pub mod fracpow;
pub mod graph;
pub mod halfedge;
pub mod hunt;
pub mod io;
pub mod matching;
pub mod named;
pub mod oracle;
pub mod search;
