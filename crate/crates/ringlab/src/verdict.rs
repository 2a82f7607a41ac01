//! Verdicts, witnesses, and witness replay.
//!
//! Every decision procedure in [`crate::predicates`] returns a
//! [`PropertyVerdict`]. When a property fails, the verdict carries a
//! [`Witness`]: the concrete elements that violate the defining
//! implication, each tagged with its quantifier role. [`replay`] checks a
//! witness against the definition from scratch, independently of the scan
//! that produced it, so a reported failure can always be re-verified (and
//! a corrupted or hand-edited witness is rejected).

use crate::ideal::jacobson_radical;
use crate::ring::{Elem, FiniteRing};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;
use thiserror::Error;

/// The ring-theoretic properties the lab can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyName {
    Reduced,
    Reflexive,
    LeftNReflexive,
    RightNReflexive,
    NReflexive,
    WeaklyReflexive,
    NilReflexive,
    Reversible,
    NReversible,
    Symmetric,
    Semicommutative,
    NilSemicommutative,
    Semiprime,
    Rip,
    LeftIdempotentReflexive,
    RightIdempotentReflexive,
    LeftNRightIdempotentReflexive,
    RightNLeftIdempotentReflexive,
    TwoPrimal,
    LeftPqBaer,
    RightPqBaer,
    SlEqualsB,
    SrEqualsB,
}

impl PropertyName {
    pub const ALL: [PropertyName; 23] = [
        PropertyName::Reduced,
        PropertyName::Reflexive,
        PropertyName::LeftNReflexive,
        PropertyName::RightNReflexive,
        PropertyName::NReflexive,
        PropertyName::WeaklyReflexive,
        PropertyName::NilReflexive,
        PropertyName::Reversible,
        PropertyName::NReversible,
        PropertyName::Symmetric,
        PropertyName::Semicommutative,
        PropertyName::NilSemicommutative,
        PropertyName::Semiprime,
        PropertyName::Rip,
        PropertyName::LeftIdempotentReflexive,
        PropertyName::RightIdempotentReflexive,
        PropertyName::LeftNRightIdempotentReflexive,
        PropertyName::RightNLeftIdempotentReflexive,
        PropertyName::TwoPrimal,
        PropertyName::LeftPqBaer,
        PropertyName::RightPqBaer,
        PropertyName::SlEqualsB,
        PropertyName::SrEqualsB,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyName::Reduced => "reduced",
            PropertyName::Reflexive => "reflexive",
            PropertyName::LeftNReflexive => "left_n_reflexive",
            PropertyName::RightNReflexive => "right_n_reflexive",
            PropertyName::NReflexive => "n_reflexive",
            PropertyName::WeaklyReflexive => "weakly_reflexive",
            PropertyName::NilReflexive => "nil_reflexive",
            PropertyName::Reversible => "reversible",
            PropertyName::NReversible => "n_reversible",
            PropertyName::Symmetric => "symmetric",
            PropertyName::Semicommutative => "semicommutative",
            PropertyName::NilSemicommutative => "nil_semicommutative",
            PropertyName::Semiprime => "semiprime",
            PropertyName::Rip => "rip",
            PropertyName::LeftIdempotentReflexive => "left_idempotent_reflexive",
            PropertyName::RightIdempotentReflexive => "right_idempotent_reflexive",
            PropertyName::LeftNRightIdempotentReflexive => "left_n_right_idempotent_reflexive",
            PropertyName::RightNLeftIdempotentReflexive => "right_n_left_idempotent_reflexive",
            PropertyName::TwoPrimal => "two_primal",
            PropertyName::LeftPqBaer => "left_pq_baer",
            PropertyName::RightPqBaer => "right_pq_baer",
            PropertyName::SlEqualsB => "sl_equals_b",
            PropertyName::SrEqualsB => "sr_equals_b",
        }
    }

    /// One-line statement of the defining condition, for `--list` output
    /// and error messages.
    pub fn definition(&self) -> &'static str {
        match self {
            PropertyName::Reduced => "no nonzero nilpotent elements",
            PropertyName::Reflexive => "aRb = 0 implies bRa = 0",
            PropertyName::LeftNReflexive => "aRb = 0 with a nilpotent implies bRa = 0",
            PropertyName::RightNReflexive => "bRa = 0 with a nilpotent implies aRb = 0",
            PropertyName::NReflexive => "left and right N-reflexive",
            PropertyName::WeaklyReflexive => "aRb = 0 implies bRa consists of nilpotents",
            PropertyName::NilReflexive => {
                "aRb inside the nilpotents implies bRa inside the nilpotents"
            }
            PropertyName::Reversible => "ab = 0 implies ba = 0",
            PropertyName::NReversible => "ab = 0 with a nilpotent implies ba = 0",
            PropertyName::Symmetric => "abc = 0 implies acb = 0",
            PropertyName::Semicommutative => "ab = 0 implies aRb = 0",
            PropertyName::NilSemicommutative => "ab = 0 with a, b nilpotent implies aRb = 0",
            PropertyName::Semiprime => "aRa = 0 implies a = 0",
            PropertyName::Rip => "eRf = 0 for idempotents e, f implies fRe = 0",
            PropertyName::LeftIdempotentReflexive => {
                "eRa = 0 with e idempotent implies aRe = 0"
            }
            PropertyName::RightIdempotentReflexive => {
                "aRe = 0 with e idempotent implies eRa = 0"
            }
            PropertyName::LeftNRightIdempotentReflexive => {
                "aRe = 0 with a nilpotent, e idempotent implies eRa = 0"
            }
            PropertyName::RightNLeftIdempotentReflexive => {
                "eRa = 0 with a nilpotent, e idempotent implies aRe = 0"
            }
            PropertyName::TwoPrimal => "the nilpotents coincide with the Jacobson radical",
            PropertyName::LeftPqBaer => {
                "the left annihilator of every principal left ideal is Re for an idempotent e"
            }
            PropertyName::RightPqBaer => {
                "the right annihilator of every principal right ideal is eR for an idempotent e"
            }
            PropertyName::SlEqualsB => "every left semicentral idempotent is central",
            PropertyName::SrEqualsB => "every right semicentral idempotent is central",
        }
    }
}

impl fmt::Display for PropertyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for PropertyName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Error)]
#[error("unknown property `{name}`; known properties: {}", PropertyName::ALL.map(|p| p.as_str()).join(", "))]
pub struct UnknownProperty {
    pub name: String,
}

impl FromStr for PropertyName {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyName::ALL
            .iter()
            .find(|p| p.as_str() == s)
            .copied()
            .ok_or_else(|| UnknownProperty { name: s.to_string() })
    }
}

/// One quantified element of a witness: which role it plays in the
/// violated implication, its index, and its display name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPart {
    pub role: String,
    pub index: u64,
    pub display: String,
}

/// The concrete elements violating a property, in quantifier order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Witness {
    pub parts: Vec<WitnessPart>,
}

impl Witness {
    pub fn new() -> Witness {
        Witness { parts: Vec::new() }
    }

    pub fn with(mut self, role: &str, ring: &FiniteRing, elem: Elem) -> Witness {
        self.parts.push(WitnessPart {
            role: role.to_string(),
            index: elem as u64,
            display: ring.elem_name(elem).to_string(),
        });
        self
    }

    /// The element bound to `role`, if present and in range.
    pub fn get(&self, ring: &FiniteRing, role: &str) -> Option<Elem> {
        self.parts
            .iter()
            .find(|p| p.role == role)
            .filter(|p| (p.index as usize) < ring.order())
            .map(|p| p.index as Elem)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} = {} (#{})", p.role, p.display, p.index)?;
        }
        Ok(())
    }
}

/// Outcome of deciding one property on one ring.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyVerdict {
    /// Property identifier. A plain string so composite checks (bounded
    /// polynomial conditions, ideal characterizations) can report under
    /// their own names.
    pub property: String,
    pub ring: String,
    pub order: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Filled only when timing output is requested; kept out of the JSON
    /// otherwise so repeated runs are byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl PropertyVerdict {
    pub fn pass(property: impl Into<String>, ring: &FiniteRing) -> PropertyVerdict {
        PropertyVerdict {
            property: property.into(),
            ring: ring.name().to_string(),
            order: ring.order(),
            holds: true,
            witness: None,
            elapsed_ms: None,
        }
    }

    pub fn fail(
        property: impl Into<String>,
        ring: &FiniteRing,
        witness: Witness,
    ) -> PropertyVerdict {
        PropertyVerdict {
            property: property.into(),
            ring: ring.name().to_string(),
            order: ring.order(),
            holds: false,
            witness: Some(witness),
            elapsed_ms: None,
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> PropertyVerdict {
        self.elapsed_ms = Some(elapsed.as_millis() as u64);
        self
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {} (order {}): {}",
            self.property,
            self.ring,
            self.order,
            if self.holds { "holds" } else { "fails" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, " [{}]", w)?;
        }
        Ok(())
    }
}

/// Check that `witness` really violates `property` on `ring`, evaluating
/// the definition directly. Returns `false` for malformed witnesses
/// (missing roles, out-of-range indices) as well as for honest
/// non-violations.
pub fn replay(ring: &FiniteRing, property: PropertyName, witness: &Witness) -> bool {
    let w = |role: &str| witness.get(ring, role);
    let zero = ring.zero();
    let nil = |x: Elem| ring.is_nilpotent(x);
    let idem = |x: Elem| ring.mul(x, x) == x;
    // aRb = 0
    let sandwich_zero = |a: Elem, b: Elem| ring.sandwich_zero(a, b);
    // aRb entirely nilpotent
    let sandwich_nil = |a: Elem, b: Elem| ring.elements().all(|r| nil(ring.mul3(a, r, b)));

    match property {
        PropertyName::Reduced => match w("a") {
            Some(a) => a != zero && nil(a),
            None => false,
        },
        PropertyName::Reflexive => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => sandwich_zero(a, b) && ring.mul3(b, r, a) != zero,
            _ => false,
        },
        PropertyName::LeftNReflexive => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => {
                nil(a) && sandwich_zero(a, b) && ring.mul3(b, r, a) != zero
            }
            _ => false,
        },
        PropertyName::RightNReflexive => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => {
                nil(a) && sandwich_zero(b, a) && ring.mul3(a, r, b) != zero
            }
            _ => false,
        },
        // A failure of either side is a failure of the conjunction, so a
        // witness is accepted if it violates the left or the right form.
        PropertyName::NReflexive => {
            replay(ring, PropertyName::LeftNReflexive, witness)
                || replay(ring, PropertyName::RightNReflexive, witness)
        }
        PropertyName::WeaklyReflexive => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => sandwich_zero(a, b) && !nil(ring.mul3(b, r, a)),
            _ => false,
        },
        PropertyName::NilReflexive => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => sandwich_nil(a, b) && !nil(ring.mul3(b, r, a)),
            _ => false,
        },
        PropertyName::Reversible => match (w("a"), w("b")) {
            (Some(a), Some(b)) => ring.mul(a, b) == zero && ring.mul(b, a) != zero,
            _ => false,
        },
        PropertyName::NReversible => match (w("a"), w("b")) {
            (Some(a), Some(b)) => {
                nil(a) && ring.mul(a, b) == zero && ring.mul(b, a) != zero
            }
            _ => false,
        },
        PropertyName::Symmetric => match (w("a"), w("b"), w("c")) {
            (Some(a), Some(b), Some(c)) => {
                ring.mul3(a, b, c) == zero && ring.mul3(a, c, b) != zero
            }
            _ => false,
        },
        PropertyName::Semicommutative => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => {
                ring.mul(a, b) == zero && ring.mul3(a, r, b) != zero
            }
            _ => false,
        },
        PropertyName::NilSemicommutative => match (w("a"), w("b"), w("r")) {
            (Some(a), Some(b), Some(r)) => {
                nil(a) && nil(b) && ring.mul(a, b) == zero && ring.mul3(a, r, b) != zero
            }
            _ => false,
        },
        PropertyName::Semiprime => match w("a") {
            Some(a) => a != zero && sandwich_zero(a, a),
            None => false,
        },
        PropertyName::Rip => match (w("e"), w("f"), w("r")) {
            (Some(e), Some(f), Some(r)) => {
                idem(e) && idem(f) && sandwich_zero(e, f) && ring.mul3(f, r, e) != zero
            }
            _ => false,
        },
        PropertyName::LeftIdempotentReflexive => match (w("e"), w("a"), w("r")) {
            (Some(e), Some(a), Some(r)) => {
                idem(e) && sandwich_zero(e, a) && ring.mul3(a, r, e) != zero
            }
            _ => false,
        },
        PropertyName::RightIdempotentReflexive => match (w("a"), w("e"), w("r")) {
            (Some(a), Some(e), Some(r)) => {
                idem(e) && sandwich_zero(a, e) && ring.mul3(e, r, a) != zero
            }
            _ => false,
        },
        PropertyName::LeftNRightIdempotentReflexive => match (w("a"), w("e"), w("r")) {
            (Some(a), Some(e), Some(r)) => {
                nil(a) && idem(e) && sandwich_zero(a, e) && ring.mul3(e, r, a) != zero
            }
            _ => false,
        },
        PropertyName::RightNLeftIdempotentReflexive => match (w("a"), w("e"), w("r")) {
            (Some(a), Some(e), Some(r)) => {
                nil(a) && idem(e) && sandwich_zero(e, a) && ring.mul3(a, r, e) != zero
            }
            _ => false,
        },
        // In a finite ring the Jacobson radical is nilpotent, so it sits
        // inside the nilpotents; the property can only fail with a
        // nilpotent element outside the radical.
        PropertyName::TwoPrimal => match w("a") {
            Some(a) => nil(a) && !jacobson_radical(ring).contains(a),
            None => false,
        },
        PropertyName::RightPqBaer => match w("a") {
            Some(a) => {
                let ann = ring.right_annihilator(&ring.right_multiples(a));
                !ring
                    .idempotents()
                    .iter()
                    .any(|e| ring.right_multiples(e) == ann)
            }
            None => false,
        },
        PropertyName::LeftPqBaer => match w("a") {
            Some(a) => {
                let ann = ring.left_annihilator(&ring.left_multiples(a));
                !ring
                    .idempotents()
                    .iter()
                    .any(|e| ring.left_multiples(e) == ann)
            }
            None => false,
        },
        PropertyName::SlEqualsB => match (w("e"), w("r")) {
            (Some(e), Some(r)) => {
                idem(e)
                    && ring.elements().all(|s| ring.mul(s, e) == ring.mul3(e, s, e))
                    && ring.mul(e, r) != ring.mul(r, e)
            }
            _ => false,
        },
        PropertyName::SrEqualsB => match (w("e"), w("r")) {
            (Some(e), Some(r)) => {
                idem(e)
                    && ring.elements().all(|s| ring.mul(e, s) == ring.mul3(e, s, e))
                    && ring.mul(e, r) != ring.mul(r, e)
            }
            _ => false,
        },
    }
}
