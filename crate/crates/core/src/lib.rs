//! Exact algebra for verifying a Brauer-Manin obstruction to the Hasse
//! principle on a degree-2 K3 surface `w^2 = f(x, y, z)`.

pub mod arith;
pub mod data;
pub mod fourfold;
pub mod groebner;
pub mod interp;
pub mod k3;
pub mod localsolve;
pub mod linalg;
pub mod poly;
