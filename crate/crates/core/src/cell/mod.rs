//! Bounded cellular filtrations: finite chains of split inclusions whose
//! level quotients have pure weight.

mod connect;
mod filtration;
mod maps;

pub use connect::{compose_connectivity_check, connectivity, factor_connected_map, ConnectedFactorization, Connectivity};
pub use filtration::{skeletal_filtration, CellFiltration, FiltrationDefect, Level};
pub use maps::{check_wedge_formula, mapping_cylinder_filtration, FiltrationMap, MappingCylinder};
