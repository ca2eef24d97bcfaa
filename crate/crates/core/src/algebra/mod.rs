//! Exact (co)homology with explicit generators, induced maps and transports.

mod homology;
mod maps;
mod transport;

pub use homology::{cohomology, homology, matrix_of, GradedGroup, Support, Variance};
pub use maps::{induced_map, SimplicialMapData};
pub(crate) use transport::{pull_along, push_along};
pub use transport::{cochain_transport, kronecker, Kind, Level, Transported};
