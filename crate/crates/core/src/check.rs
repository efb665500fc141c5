//! Verdicts with counterexamples.
//!
//! Every predicate in the crate that can be false reports a [`Check`]: the
//! boolean answer plus, when the answer is `false`, a minimal [`Witness`]
//! naming the object or morphism ids at which the property breaks.

use std::fmt;

use serde::Serialize;

use crate::fincat::{MorId, ObjId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Object at which the property fails.
    Object { object: ObjId },
    /// Morphism at which the property fails.
    Morphism { morphism: MorId },
    /// Two objects, e.g. a pair without a join or a 2-cycle in the preorder.
    ObjectPair { x: ObjId, y: ObjId },
    /// Two distinct morphisms `x -> y` identified by a functor.
    NotFaithful {
        x: ObjId,
        y: ObjId,
        f: MorId,
        g: MorId,
    },
    /// A morphism `F x -> F y` not in the image of `Hom(x, y)`.
    NotFull { x: ObjId, y: ObjId, missing: MorId },
    /// Target object not isomorphic to any image object.
    NotEssentiallySurjective { object: ObjId },
    /// Two morphisms `g, h` with `f g = f h` and `g != h`.
    NotMono { f: MorId, g: MorId, h: MorId },
    /// A morphism `f: x -> r` followed by `g: r -> y` leaving the subcategory at `r`.
    Factorization { f: MorId, g: MorId, through: ObjId },
    /// The induced functor on (co)slices at `object` is not an equivalence.
    SliceNotEquivalent { object: ObjId, cause: Box<Witness> },
    /// The target morphism `morphism` into `F(object)` has no lift.
    LiftMissing { object: ObjId, morphism: MorId },
    /// A component of the fiber over `object` that is not a contractible groupoid.
    FiberNotContractible { object: ObjId, reason: String },
    /// A target morphism leaving the essential image.
    LeavesImage { morphism: MorId },
    /// Free-form description for cases without structured ids.
    Note { detail: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Object { object } => write!(f, "object {object}"),
            Witness::Morphism { morphism } => write!(f, "morphism {morphism}"),
            Witness::ObjectPair { x, y } => write!(f, "objects ({x}, {y})"),
            Witness::NotFaithful { x, y, f: a, g: b } => {
                write!(f, "morphisms {a} and {b} in Hom({x}, {y}) have the same image")
            }
            Witness::NotFull { x, y, missing } => {
                write!(f, "morphism {missing} of Hom(F{x}, F{y}) is not hit")
            }
            Witness::NotEssentiallySurjective { object } => {
                write!(f, "object {object} is not isomorphic to any image object")
            }
            Witness::NotMono { f: m, g, h } => write!(f, "{m}∘{g} = {m}∘{h}"),
            Witness::Factorization { f: a, g: b, through } => {
                write!(f, "{b}∘{a} factors through {through}")
            }
            Witness::SliceNotEquivalent { object, cause } => {
                write!(f, "induced slice functor at {object} fails: {cause}")
            }
            Witness::LiftMissing { object, morphism } => {
                write!(f, "morphism {morphism} into F({object}) has no lift")
            }
            Witness::FiberNotContractible { object, reason } => {
                write!(f, "fiber over {object}: {reason}")
            }
            Witness::LeavesImage { morphism } => {
                write!(f, "morphism {morphism} leaves the essential image")
            }
            Witness::Note { detail } => f.write_str(detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Check {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        match witness {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    }
}
