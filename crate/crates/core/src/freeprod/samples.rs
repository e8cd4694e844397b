//! Constructions used throughout the tests and shipped as data files.

use super::amalgam::Amalgam;
use super::embed::Embedding;
use super::group::{FiniteGroup, GroupOracle};
use super::hnn::Hnn;

/// `Z/2 * Z/2 = <s> * <r>`, the infinite dihedral group.
pub fn infinite_dihedral() -> Amalgam {
    let c = GroupOracle::Finite(FiniteGroup::trivial("1"));
    let a = GroupOracle::Finite(FiniteGroup::cyclic("A", "s", 2));
    let b = GroupOracle::Finite(FiniteGroup::cyclic("B", "r", 2));
    let ea = Embedding::new(&c, &a, &[], None).expect("trivial embedding");
    let eb = Embedding::new(&c, &b, &[], None).expect("trivial embedding");
    Amalgam::new("Z2 * Z2", c, [a, b], [ea, eb]).expect("valid amalgam")
}

/// `S_3 *_{Z/2} Z/4`, with `h -> (12)` and `h -> r^2`.
pub fn s3_amalgam() -> Amalgam {
    let c = GroupOracle::Finite(FiniteGroup::cyclic("C", "h", 2));
    let a = GroupOracle::Finite(FiniteGroup::s3());
    let b = GroupOracle::Finite(FiniteGroup::cyclic("Z4", "r", 4));
    let ea = Embedding::new(&c, &a, &[a.parse("(12)").expect("S3 element")], None).expect("h -> (12)");
    let eb = Embedding::new(&c, &b, &[b.parse("r^2").expect("Z4 element")], None).expect("h -> r^2");
    Amalgam::new("S3 *_Z2 Z4", c, [a, b], [ea, eb]).expect("valid amalgam")
}

/// `BS(1, 2)`: base `Z = <a>`, `alpha(c) = a`, `beta(c) = a^2`, so `t^-1 a t = a^2`.
pub fn bs12() -> Hnn {
    let base = GroupOracle::free_abelian("Z", &["a"]);
    let c = GroupOracle::free_abelian("C", &["c"]);
    let alpha = Embedding::new(&c, &base, &[base.parse("a").expect("a")], None).expect("c -> a");
    let beta = Embedding::new(&c, &base, &[base.parse("a^2").expect("a^2")], None).expect("c -> a^2");
    Hnn::new("BS(1,2)", base, c, alpha, beta).expect("valid HNN extension")
}
