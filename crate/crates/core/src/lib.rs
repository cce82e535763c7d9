//! Simple-homotopy invariants of finite simplicial complexes and simplicial maps.

pub mod cli;
pub mod collapse;
pub mod complex;
pub mod cover;
pub mod groupring;
pub mod homology;
pub mod localprofile;
pub mod random;
pub mod ring;
pub mod simpmap;
pub mod torsion;
