//! Multiple flag varieties of finite type.
//!
//! Decides when the diagonal action of `GL(V)` on a product of flag varieties
//! has finitely many orbits, enumerates and realizes those orbits, and computes
//! Hom dimensions, codimensions and the rank order between orbits. Every closed
//! formula has an exact linear-algebra counterpart and a finite-field census
//! to check it against.

pub mod catalog;
pub mod classify;
pub mod composition;
pub mod error;
pub mod exactlin;
pub mod homcalc;
pub mod object;
pub mod oracle;
pub mod orbits;

pub use catalog::{lookup, pi_catalog, pi_catalog_up_to, Family, PiEntry, StandardForm};
pub use classify::{classify_triple, classify_tuple, finite_by_summand_criterion, Classification, TypeLabel};
pub use composition::{enumerate_summands, positive_compositions, reduced_triples, Composition, DimVector};
pub use error::{Error, Result};
pub use homcalc::{gram_hom, hom_dim_formula, hom_dim_linalg, hom_table};
pub use object::{AnyFlagObject, Flag, FlagObject};
pub use orbits::{codim, enumerate_orbits, hasse, hom_order_leq, orbit_representative, Hasse, MultiplicityFamily, OrbitSpace};
pub use oracle::{census, match_orbits, CensusReport, MatchReport};
