//! Small finite groups as Cayley tables: catalog constructions, subgroup
//! lattices, Frattini subgroups, homomorphism enumeration and graph
//! subgroups.

mod catalog;
mod fixed_dim;
mod group;
mod homs;
mod lattice;

pub use catalog::{build_catalog, p_group_specs, parse_catalog_spec, CatalogSpec, MAX_CATALOG_ORDER};
pub use fixed_dim::{fixed_dim_rho_tensor, orbit_count, FixedDim, SymmetricProduct};
pub use group::{FiniteGroup, Subgroup};
pub use homs::{graph_of, graph_subgroups, hom_enumeration, normalize1_check, normalize2_check, GraphSubgroup, HomClassReport,
    TransitivityCheck,
};
pub use lattice::{all_subgroups, SubgroupLattice, DEFAULT_LATTICE_BOUND};
