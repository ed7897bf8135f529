//! Exact computation of the sequence-of-sequences elements `x~[a]` and the
//! standard monomials `z[a]` of cluster algebras of geometric type, together
//! with the machinery around them:
//!
//! - [`laurent`]: sparse Laurent polynomials over the integers.
//! - [`exchange`]: extended exchange matrices, seed mutation, `Q_B`.
//! - [`elements`]: `S_all`, `S_gcc`, `x~[a]`, `z[a]` and their factorizations.
//! - [`dyck`]: maximal Dyck paths and compatible edge collections.
//! - [`upper`]: membership in the upper bound `U_x`.
//! - [`rank3`]: tau-triples, the canonical grading and the witness `Y`.
//! - [`basis`]: expansion in the standard monomial basis for acyclic seeds.

pub mod basis;
pub mod dyck;
pub mod elements;
pub mod exchange;
pub mod laurent;
pub mod rank3;
pub mod upper;

pub use basis::{expand_standard, BasisError, Expansion};
pub use dyck::{build_dyck, DyckPath, EdgeCollection, Mode};
pub use elements::{xtilde, z_element, BitSeq, Elements, ElementsError, GccTuple};
pub use exchange::{Digraph, ExchangeError, ExtendedMatrix, Seed};
pub use laurent::{Exp, Laurent, LaurentError, Monomial};
pub use rank3::{Rank3Error, Rank3Triple};
pub use upper::{check_ux_membership, MembershipReport};
