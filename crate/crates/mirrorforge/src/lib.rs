//! Computational toolkit for SYZ mirrors of toric del Pezzo surfaces.
//!
//! * [`lattice_toric`]: polytopes, fans, anticanonical sections and the `-1` checks.
//! * [`periods`]: period integrals, affine coordinates and monodromy of the fibration
//!   `W = t1 + t2 + 1/t1 + 1/t2`.
//! * [`affine_structures`]: integral affine manifolds with focus-focus singularities.
//! * [`novikov`]: truncated Novikov series and the `A_n` chart atlases.
//! * [`disc_potentials`]: disc potentials from fan data and wall-crossing.
//! * [`surface_lattice`]: Picard lattices of blowups and singular fibre bookkeeping.

pub mod affine_structures;
pub mod disc_potentials;
pub mod laurent;
pub mod lattice_toric;
pub mod novikov;
pub mod periods;
pub mod repro;
pub mod scalar;
pub mod surface_lattice;
pub mod svg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;

pub use laurent::{Exp, LaurentPolynomial};
pub use scalar::{Coeff, Int, Real};

/// Double precision complex numbers.
pub type C64 = Complex<f64>;
/// Laurent polynomial with machine-integer coefficients.
pub type Laurent = LaurentPolynomial<i64>;
/// Laurent polynomial with arbitrary-precision integer coefficients.
pub type BigLaurent = LaurentPolynomial<BigInt>;
/// Laurent polynomial with rational coefficients.
pub type RatLaurent = LaurentPolynomial<Ratio<i64>>;
/// Polygon with machine-integer rational vertices.
pub type Polytope = lattice_toric::LatticePolytope<i64>;
/// Fan with machine-integer rays.
pub type Fan = lattice_toric::Fan<i64>;
/// Lattice vector with machine-integer coordinates.
pub type Vector2 = lattice_toric::LatticeVector<i64>;
/// Novikov series with rational exponents and rational coefficients.
pub type Series = novikov::NovikovScalar<Ratio<i64>, Ratio<i64>>;
/// Novikov series with complex coefficients and real exponents (tolerance-merged).
pub type ComplexSeries = novikov::NovikovScalar<C64, f64>;


