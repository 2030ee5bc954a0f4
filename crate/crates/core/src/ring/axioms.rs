use std::fmt;

use serde::Serialize;

use super::{Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeIdentity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// The offending elements, in the order they appear in the law.
    pub witness: Vec<Elem>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at (", self.axiom)?;
        for (k, e) in self.witness.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// False for structural rings, whose laws hold by construction.
    pub exhaustive: bool,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustively checks the ring laws of a table ring. Structural kinds pass
/// without checking.
pub fn verify_ring_axioms(ring: &Ring, cap: usize) -> Result<AxiomReport> {
    if !ring.is_table() {
        return Ok(AxiomReport {
            exhaustive: false,
            violation: None,
        });
    }
    let order = ring.order() as usize;
    if order > cap {
        return Err(Error::Capacity {
            what: "axiom check",
            limit: cap,
            reached: order,
        });
    }
    let violation = first_violation(ring);
    Ok(AxiomReport {
        exhaustive: true,
        violation,
    })
}

fn first_violation(r: &Ring) -> Option<AxiomViolation> {
    let fail = |axiom, witness: Vec<Elem>| Some(AxiomViolation { axiom, witness });
    let (zero, one) = (r.zero(), r.one());
    for a in r.elements() {
        if r.add(a, zero) != a || r.add(zero, a) != a {
            return fail(Axiom::AdditiveIdentity, vec![a]);
        }
        if !r.elements().any(|b| r.add(a, b) == zero) {
            return fail(Axiom::AdditiveInverse, vec![a]);
        }
        if r.mul(a, one) != a || r.mul(one, a) != a {
            return fail(Axiom::MultiplicativeIdentity, vec![a]);
        }
    }
    for a in r.elements() {
        for b in r.elements() {
            if r.add(a, b) != r.add(b, a) {
                return fail(Axiom::AdditiveCommutativity, vec![a, b]);
            }
        }
    }
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) {
                    return fail(Axiom::AdditiveAssociativity, vec![a, b, c]);
                }
                if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
                    return fail(Axiom::MultiplicativeAssociativity, vec![a, b, c]);
                }
                if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
                    return fail(Axiom::LeftDistributivity, vec![a, b, c]);
                }
                if r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)) {
                    return fail(Axiom::RightDistributivity, vec![a, b, c]);
                }
            }
        }
    }
    None
}
