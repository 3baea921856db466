//! Exact verification of bidiagonal triads and construction of
//! tetrahedron-algebra modules from them.

pub mod bd;
pub mod cli;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod sl2;
pub mod spectral;
pub mod synth;
pub mod tet;
