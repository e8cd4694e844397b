//! Exact computations around generalized free products: word combinatorics,
//! the group ring of `H`, normal forms in amalgams and HNN extensions, and
//! block-typed nilpotent objects.

pub mod freeprod;
pub mod grouph;
pub mod linalg;
pub mod nil;
pub mod scalar;
pub mod words;

pub use num_bigint::BigInt as Integer;
pub use scalar::{Field, Fp, Ring, Scalar};

/// An element of `Z[H]`.
pub type ZH = grouph::ZHElement<Integer>;
/// An element of `A = Z[x_i^{+-1}]`.
pub type A = grouph::LaurentPoly<Integer>;
pub type Relation = grouph::RelationVector<Integer>;
pub type IntNilObject = nil::NilObject<Integer>;
pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
pub type Gf7 = Fp<7>;
