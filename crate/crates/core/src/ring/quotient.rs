use super::{Elem, Ideal, Ring};
use crate::error::{argument, Result};

/// `R / I` realised as a table ring over coset representatives.
///
/// Cosets are numbered in the canonical order of their least representative.
#[derive(Clone, Debug)]
pub struct Quotient {
    target: Ring,
    projection: Vec<Elem>,
    representatives: Vec<Elem>,
}

impl Quotient {
    /// Returns `None` when `I = R`: the quotient is the zero ring, which is not
    /// a ring with `1 != 0`.
    pub fn new(ideal: &Ideal) -> Result<Option<Quotient>> {
        let ring = ideal.ring();
        if ideal.is_whole() {
            return Ok(None);
        }
        let order = ring.order() as usize;
        let mut projection = vec![Elem(u32::MAX); order];
        let mut representatives = Vec::new();
        for x in ring.elements() {
            if projection[x.index()].0 != u32::MAX {
                continue;
            }
            let class = Elem(representatives.len() as u32);
            representatives.push(x);
            for &i in ideal.elements() {
                projection[ring.add(x, i).index()] = class;
            }
        }
        let q = representatives.len();
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for &a in &representatives {
            for &b in &representatives {
                add.push(projection[ring.add(a, b).index()].0);
                mul.push(projection[ring.mul(a, b).index()].0);
            }
        }
        let target = Ring::from_tables(
            q as u32,
            add,
            mul,
            projection[ring.zero().index()].0,
            projection[ring.one().index()].0,
        )?;
        Ok(Some(Quotient {
            target,
            projection,
            representatives,
        }))
    }

    pub fn ring(&self) -> &Ring {
        &self.target
    }

    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x.index()]
    }

    pub fn representative(&self, class: Elem) -> Result<Elem> {
        self.representatives
            .get(class.index())
            .copied()
            .ok_or_else(|| argument(format!("no coset {class}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::verify_ring_axioms;

    #[test]
    fn z4_mod_two_is_f2() {
        let z4 = Ring::modular(4).unwrap();
        let i = Ideal::generated(&z4, &[Elem(2)]).unwrap();
        let q = Quotient::new(&i).unwrap().unwrap();
        assert_eq!(q.ring().order(), 2);
        assert_eq!(q.project(Elem(3)), Elem(1));
        assert_eq!(q.representative(Elem(1)).unwrap(), Elem(1));
        assert!(verify_ring_axioms(q.ring(), 64).unwrap().passed());
    }

    #[test]
    fn whole_ideal_has_no_quotient_ring() {
        let z4 = Ring::modular(4).unwrap();
        assert!(Quotient::new(&Ideal::whole(&z4)).unwrap().is_none());
    }
}
