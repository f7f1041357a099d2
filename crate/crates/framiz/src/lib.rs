//! Exact matrix realizations of framed braid-type algebras.
//!
//! The crate builds the operators `tau_i`, `sigma_i`, `epsilon_{i,j}` (and an
//! optional boundary operator `sigma_0`) on tensor powers of a block-decomposed
//! vector space `V = V_1 + ... + V_d`, where each block carries the standard
//! R-matrix of a quantum group of type GL, SO or SP.  On top of those operators
//! it provides
//!
//! * exact sparse linear algebra (row echelon forms, subalgebra closures,
//!   block decompositions) over two interchangeable coefficient backends:
//!   rational functions over a cyclotomic number field, and large prime fields
//!   with randomly specialized parameters;
//! * the combinatorial dimension formulas the matrix algebras are expected to
//!   realize (block sums, symmetrized fixed-point sums, bounded Bell numbers);
//! * relation checkers for the algebra families that arise this way:
//!   Yokonuma-Hecke, framized Temperley-Lieb, complex reflection TL, framized
//!   BMW, tied braids, and the braids-and-ties quotients, plus the affine and
//!   cyclotomic variants with a boundary module.
//!
//! Everything is verified as an exact matrix identity; no floating point is
//! involved anywhere.

pub mod coeff;
pub mod combinat;
pub mod exactla;
pub mod framed;
pub mod rmat;
pub mod verify;

pub use coeff::{CoeffError, Field, FieldHandle, FieldSpec};
pub use exactla::{LinAlgError, SparseMatrix, SparseVec};
