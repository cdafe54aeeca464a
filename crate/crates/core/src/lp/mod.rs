//! Exact linear programming: simplex, named systems, projection and facets.

pub mod dd;
pub mod fm;
pub mod simplex;
pub mod system;

pub use dd::{canonicalize, hull_facets, HRep};
pub use fm::{fourier_motzkin, simplify};
pub use simplex::{feasible, is_farkas_certificate, minimize, Feasibility, Optimum};
pub use system::{LinearSystem, Maximum, Relation, Row, RowCertificate, SystemSolution};
