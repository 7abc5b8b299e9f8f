//! Rationally-extended solvable potentials built by first- and second-order
//! supersymmetric quantum mechanics, with a finite-difference verification
//! engine.

pub mod cli;
pub mod numerics;
pub mod potentials;
pub mod specfun;
pub mod susy;
pub mod wavefuncs;
