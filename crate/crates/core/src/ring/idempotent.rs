//! Exchange-ring idempotents.
//!
//! A finite ring is semiperfect, hence an exchange ring: every `x` admits an
//! idempotent `e = x s` with `1 - e = (1 - x) t`. From that single-element
//! property we build orthogonal decompositions `1 = e_1 + ... + e_m` with
//! `e_i = x_i r_i` for any family with `x_1 + ... + x_m = 1`.
//!
//! The induction peels `e_1` off `x_1` and recurses in the corner ring
//! `f R f`, `f = 1 - e_1`. The corner idempotents `g_i` only lie in `f x_i R`,
//! so they are moved into `x_i R` by conjugating with the unit
//! `u = 1 + e_1 N f`, where `N` sums the lifts `h_i = x_i c_i g_i`.

use serde::Serialize;

use super::{Elem, Ring};
use crate::error::{argument, invariant, Error, Result};

/// `e = x * left` is idempotent and `1 - e = (1 - x) * right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NicholsonWitness {
    pub idempotent: Elem,
    pub left: Elem,
    pub right: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentDecomposition {
    pub inputs: Vec<Elem>,
    pub idempotents: Vec<Elem>,
    /// `idempotents[i] = inputs[i] * witnesses[i]`.
    pub witnesses: Vec<Elem>,
}

impl IdempotentDecomposition {
    /// Checks idempotency, orthogonality, both sums and the witnesses.
    pub fn verify(&self, ring: &Ring) -> Result<()> {
        let m = self.inputs.len();
        if self.idempotents.len() != m || self.witnesses.len() != m {
            return Err(invariant("decomposition length mismatch"));
        }
        if ring.sum(self.inputs.iter().copied()) != ring.one() {
            return Err(invariant("inputs do not sum to 1"));
        }
        if ring.sum(self.idempotents.iter().copied()) != ring.one() {
            return Err(invariant("idempotents do not sum to 1"));
        }
        for (k, (&e, (&x, &r))) in self
            .idempotents
            .iter()
            .zip(self.inputs.iter().zip(&self.witnesses))
            .enumerate()
        {
            if !ring.is_idempotent(e) {
                return Err(invariant(format!("e_{} = {e} is not idempotent", k + 1)));
            }
            if ring.mul(x, r) != e {
                return Err(invariant(format!("e_{} != x_{} r_{}", k + 1, k + 1, k + 1)));
            }
            for (l, &f) in self.idempotents.iter().enumerate() {
                if l != k && ring.mul(e, f) != ring.zero() {
                    return Err(invariant(format!("e_{} e_{} != 0", k + 1, l + 1)));
                }
            }
        }
        Ok(())
    }
}

/// The corner ring `f R f`, a ring with identity `f` (possibly the zero ring).
struct Corner<'r> {
    ring: &'r Ring,
    unit: Elem,
    /// Elements of `f R f` in canonical order.
    elements: Vec<Elem>,
}

impl<'r> Corner<'r> {
    fn whole(ring: &'r Ring) -> Self {
        Corner {
            ring,
            unit: ring.one(),
            elements: ring.elements().collect(),
        }
    }

    fn cut(ring: &'r Ring, f: Elem) -> Self {
        let mut members = vec![false; ring.order() as usize];
        for r in ring.elements() {
            members[ring.mul(ring.mul(f, r), f).index()] = true;
        }
        Corner {
            ring,
            unit: f,
            elements: ring.elements().filter(|e| members[e.index()]).collect(),
        }
    }

    fn first_right_factor(&self, a: Elem, target: Elem) -> Option<Elem> {
        self.elements
            .iter()
            .copied()
            .find(|&s| self.ring.mul(a, s) == target)
    }

    fn nicholson(&self, x: Elem) -> Option<NicholsonWitness> {
        let r = self.ring;
        let complement = r.sub(self.unit, x);
        self.elements
            .iter()
            .copied()
            .filter(|&e| r.is_idempotent(e))
            .find_map(|e| {
                let left = self.first_right_factor(x, e)?;
                let right = self.first_right_factor(complement, r.sub(self.unit, e))?;
                Some(NicholsonWitness {
                    idempotent: e,
                    left,
                    right,
                })
            })
    }

    /// Orthogonal idempotents `g_i = xs_i q_i` in this corner summing to its unit.
    /// Requires `xs` inside the corner with sum equal to the unit.
    fn decompose(&self, xs: &[Elem]) -> Result<Vec<(Elem, Elem)>> {
        let r = self.ring;
        let f = self.unit;
        match xs {
            [] => Err(invariant("empty family in corner")),
            [_] => Ok(vec![(f, f)]),
            [x1, rest @ ..] => {
                let w = self.nicholson(*x1).ok_or(Error::NotExchange(x1.0))?;
                let e1 = w.idempotent;
                let t = w.right;
                let h = r.sub(f, e1);
                let sub = Corner::cut(r, h);
                let images: Vec<Elem> = rest
                    .iter()
                    .map(|&x| r.product_of([h, x, t, h]))
                    .collect();
                let inner = sub.decompose(&images)?;
                // Lift g_i from h x_i R into x_i R.
                let mut lifts = Vec::with_capacity(rest.len());
                let mut c_g = Vec::with_capacity(rest.len());
                for (&x, &(g, q)) in rest.iter().zip(&inner) {
                    let c = r.product_of([t, h, q]);
                    lifts.push(r.product_of([x, c, g]));
                    c_g.push(r.mul(c, g));
                }
                let n_sum = r.sum(lifts.iter().copied());
                let nil = r.product_of([e1, n_sum, h]);
                let u_inv = r.sub(f, nil);
                let mut out = Vec::with_capacity(xs.len());
                out.push((r.mul(e1, u_inv), r.mul(w.left, u_inv)));
                for (&lift, &cg) in lifts.iter().zip(&c_g) {
                    out.push((r.mul(lift, u_inv), r.mul(cg, u_inv)));
                }
                Ok(out)
            }
        }
    }
}

/// The first `(e, s, t)` in canonical order with `e` idempotent, `e = x s`
/// and `1 - e = (1 - x) t`.
pub fn nicholson_idempotent(ring: &Ring, x: Elem) -> Result<NicholsonWitness> {
    ring.check(x)?;
    Corner::whole(ring).nicholson(x).ok_or(Error::NotExchange(x.0))
}

/// Orthogonal idempotents `e_i in x_i R` summing to 1, for `x_1 + ... + x_m = 1`.
///
/// Each witness is the canonically first `r` with `x_i r = e_i`.
pub fn orthogonal_decomposition(ring: &Ring, xs: &[Elem]) -> Result<IdempotentDecomposition> {
    for &x in xs {
        ring.check(x)?;
    }
    if ring.sum(xs.iter().copied()) != ring.one() {
        return Err(argument("orthogonal decomposition needs inputs summing to 1"));
    }
    let corner = Corner::whole(ring);
    let raw = corner.decompose(xs)?;
    let idempotents: Vec<Elem> = raw.iter().map(|&(e, _)| e).collect();
    let witnesses = xs
        .iter()
        .zip(&raw)
        .map(|(&x, &(e, fallback))| corner.first_right_factor(x, e).unwrap_or(fallback))
        .collect();
    let decomposition = IdempotentDecomposition {
        inputs: xs.to_vec(),
        idempotents,
        witnesses,
    };
    decomposition.verify(ring)?;
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    fn e(v: u32) -> Elem {
        Elem(v)
    }

    #[test]
    fn nicholson_examples() {
        let z6 = Ring::modular(6).unwrap();
        let one = nicholson_idempotent(&z6, e(1)).unwrap();
        assert_eq!((one.idempotent, one.left), (e(1), e(1)));
        assert_eq!(nicholson_idempotent(&z6, e(0)).unwrap().idempotent, e(0));
        let w = nicholson_idempotent(&z6, e(3)).unwrap();
        assert_eq!(w.idempotent, e(3));
        assert_eq!(z6.mul(e(3), w.left), e(3));
        assert_eq!(z6.mul(z6.sub(e(1), e(3)), w.right), z6.sub(e(1), e(3)));
    }

    #[test]
    fn nicholson_exhaustive_on_small_rings() {
        for spec in ["Z/2", "Z/4", "Z/6", "Z/12", "UT(2,Z/2)", "Mat(2,Z/2)", "Prod(Z/4,Z/3)", "UT(3,Z/2)"] {
            let r = parse_ring_spec(spec).unwrap();
            for x in r.elements() {
                let w = nicholson_idempotent(&r, x).unwrap();
                assert!(r.is_idempotent(w.idempotent), "{spec} {x}");
                assert_eq!(r.mul(x, w.left), w.idempotent);
                let c = r.sub(r.one(), w.idempotent);
                assert_eq!(r.mul(r.sub(r.one(), x), w.right), c);
            }
        }
    }

    #[test]
    fn already_orthogonal() {
        let z4 = Ring::modular(4).unwrap();
        let d = orthogonal_decomposition(&z4, &[e(1), e(0), e(0)]).unwrap();
        assert_eq!(d.idempotents, vec![e(1), e(0), e(0)]);
    }

    #[test]
    fn z6_pair() {
        let z6 = Ring::modular(6).unwrap();
        let d = orthogonal_decomposition(&z6, &[e(3), e(4)]).unwrap();
        assert_eq!(d.idempotents, vec![e(3), e(4)]);
        assert_eq!(d.witnesses, vec![e(1), e(1)]);
    }

    #[test]
    fn z4_pair() {
        let z4 = Ring::modular(4).unwrap();
        let d = orthogonal_decomposition(&z4, &[e(2), e(3)]).unwrap();
        assert_eq!(d.idempotents, vec![e(0), e(1)]);
        assert_eq!(d.witnesses, vec![e(0), e(3)]);
    }

    #[test]
    fn sum_must_be_one() {
        let z4 = Ring::modular(4).unwrap();
        assert!(matches!(
            orthogonal_decomposition(&z4, &[e(2), e(2)]),
            Err(Error::Argument(_))
        ));
        assert!(orthogonal_decomposition(&z4, &[]).is_err());
    }

    #[test]
    fn noncommutative_triples_exhaustive() {
        for spec in ["UT(2,Z/2)", "Mat(2,Z/2)"] {
            let r = parse_ring_spec(spec).unwrap();
            for a in r.elements() {
                for b in r.elements() {
                    let c = r.sub(r.sub(r.one(), a), b);
                    orthogonal_decomposition(&r, &[a, b, c]).unwrap();
                }
            }
        }
    }

    #[test]
    fn longer_families() {
        let r = parse_ring_spec("Mat(2,Z/2)").unwrap();
        // Five summands: walk a few fixed families.
        for (a, b, c, d) in [(1, 2, 4, 8), (15, 9, 6, 3), (7, 7, 7, 0)] {
            let head = [e(a), e(b), e(c), e(d)];
            let last = r.sub(r.one(), r.sum(head));
            let mut xs = head.to_vec();
            xs.push(last);
            orthogonal_decomposition(&r, &xs).unwrap();
        }
    }
}
