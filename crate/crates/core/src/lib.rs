//! Exact computations with finite-dimensional modules of the q-tetrahedron
//! algebra, q-inverting and q-tridiagonal pairs, and split decompositions.

pub mod exactmath;
pub mod linalg;
pub mod report;
pub mod tetra;
pub mod modrep;
pub mod pairs;
pub mod split;
pub mod gen;
pub mod io;
pub mod cli;
