//! Codes on the plane curves `y^q + y = x^m` over GF(q^2).

pub mod gf;
pub mod linalg;
pub mod poly;
pub mod curve;
pub mod rrspace;
pub mod planegeom;
pub mod codes;
pub mod construct;
