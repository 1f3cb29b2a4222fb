//! Finite ordered simplicial complexes, simplicial maps and the
//! constructions used to build test spaces.
//!
//! The global vertex order is the only orientation convention: every
//! simplex is an increasing vertex list, and coboundary signs, staircase
//! products and cup products are all read off from it.

pub mod builtins;
pub mod certificate;
pub mod complex;
pub mod constructions;
pub mod map;

pub use builtins::{builtin, builtin_facets, BUILTIN_NAMES};
pub use certificate::{is_closed_pseudomanifold, orientable_certificate, OrientedManifoldCertificate};
pub use complex::{validate_simplices, Complex, ComplexError, Diagnostics, Simplex, Violation};
pub use constructions::{
    barycentric_subdivision, boundary_sphere, circle, cone, connected_sum, disjoint_union,
    mapping_torus, point, product, simplex, suspension, torus, Product, Subdivision,
};
pub use map::{MapError, SimplicialMap};
