//! Symbolic engine for free Poisson Rota–Baxter and free Poisson Nijenhuis
//! algebras: normal forms, expressibility of operator letters, identity
//! checks and concrete models.

pub mod json;
pub mod kernel;
pub mod linalg;
pub mod models;
pub mod nspois;
pub mod poisrb;
pub mod rbcom;
pub mod rblie;
pub mod suites;
pub mod syntax;
