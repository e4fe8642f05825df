//! Exact construction of commutative subalgebras of maximal transcendence
//! degree in universal enveloping algebras.

pub mod cli;
pub mod construct;
pub mod field;
pub mod invariants;
pub mod liealg;
pub mod pbw;
pub mod polyring;
