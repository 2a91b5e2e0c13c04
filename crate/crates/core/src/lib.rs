//! Exact computational geometry of numbers.
//!
//! The crate bundles four related toolkits that all run on arbitrary-precision
//! rational arithmetic and never trust a float for a decision:
//!
//! * [`geometry`] — orientation / in-sphere predicates, circumspheres, the
//!   paraboloid lift and lower convex hulls in dimensions 2 through 5.
//! * [`delone`] — Delone (r,R)-set validation, the empty-sphere growth
//!   procedure, and construction plus independent verification of L-tilings
//!   (Delaunay subdivisions with cocircular cells kept whole).
//! * [`lattice`] — positive quadratic forms as lattice metrics: relevant
//!   vectors, Voronoi cells, lattice Delaunay subdivisions with exact
//!   emptiness certificates, covering radius/density, parallelohedron facet
//!   bounds, and covering-density descent over the cone of forms.
//! * [`cubic`] — the ring Z[∛q]: multiplication, norms, fundamental units,
//!   the cubic Pell analogue qx³ + y³ = 1, and bounded solvers for monic
//!   binary cubic Thue equations.
//!
//! Floats appear only as shadow fields next to the exact values they render
//! (for example [`geometry::Sphere::radius_float`]).
//!
//! [`bruteforce`] holds deliberately naive reference implementations used to
//! cross-check the structured algorithms; they share no code path with them.

pub mod bruteforce;
pub mod cubic;
pub mod delone;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod rational;

pub use rational::Rational;
