//! Exact computer algebra for punctured-space endomorphisms: polynomial
//! arithmetic, Groebner bases, local degree forms, and their classification
//! over Q and odd prime fields.

pub mod bezoutian;
pub mod cite;
pub mod endo;
pub mod field;
pub mod groebner;
pub mod gw;
pub mod poly;
pub mod square;
