//! Maximum likelihood degrees of Fermat hypersurfaces, computed exactly with
//! Groebner bases over prime fields.

pub mod cli;
pub mod fermat_ideals;
pub mod groebner;
pub mod mldeg;
pub mod partitions;
pub mod polyring;
