use std::collections::VecDeque;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Elem, Ring, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};

/// A two-sided ideal, stored as its generators and its full element set.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Elem>,
    members: Vec<bool>,
    elements: Vec<Elem>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ideal", 2)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("elements", &self.elements)?;
        st.end()
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?} in {}", self.elements, self.ring)
    }
}

impl Ideal {
    /// The smallest two-sided ideal containing `gens`, closed with the default cap.
    pub fn generated(ring: &Ring, gens: &[Elem]) -> Result<Ideal> {
        Ideal::generated_with_cap(ring, gens, DEFAULT_ELEMENT_CAP)
    }

    /// Worklist closure under addition, negation and two-sided multiplication.
    pub fn generated_with_cap(ring: &Ring, gens: &[Elem], cap: usize) -> Result<Ideal> {
        for &g in gens {
            ring.check(g)?;
        }
        let mut closure = Closure {
            members: vec![false; ring.order() as usize],
            found: Vec::new(),
            queue: VecDeque::new(),
            cap,
        };
        closure.admit(ring.zero())?;
        for &g in gens {
            closure.admit(g)?;
        }
        while let Some(x) = closure.queue.pop_front() {
            closure.admit(ring.neg(x))?;
            for r in ring.elements() {
                closure.admit(ring.mul(r, x))?;
                closure.admit(ring.mul(x, r))?;
            }
            let mut k = 0;
            while k < closure.found.len() {
                let y = closure.found[k];
                closure.admit(ring.add(x, y))?;
                k += 1;
            }
        }
        let members = closure.members;
        let mut generators: Vec<Elem> = gens.to_vec();
        generators.sort();
        generators.dedup();
        Ok(Ideal::from_members(ring.clone(), generators, members))
    }

    fn from_members(ring: Ring, generators: Vec<Elem>, members: Vec<bool>) -> Ideal {
        let elements = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem(i as u32))
            .collect();
        Ideal {
            ring,
            generators,
            members,
            elements,
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        let mut members = vec![false; ring.order() as usize];
        members[ring.zero().index()] = true;
        Ideal::from_members(ring.clone(), vec![], members)
    }

    pub fn whole(ring: &Ring) -> Ideal {
        Ideal::from_members(
            ring.clone(),
            vec![ring.one()],
            vec![true; ring.order() as usize],
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.get(x.index()).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.ring.order() as usize
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// The ideal generated by both generating sets.
    pub fn join(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Ideal::generated(&self.ring, &gens)
    }
}

struct Closure {
    members: Vec<bool>,
    found: Vec<Elem>,
    queue: VecDeque<Elem>,
    cap: usize,
}

impl Closure {
    fn admit(&mut self, x: Elem) -> Result<()> {
        if !self.members[x.index()] {
            self.members[x.index()] = true;
            self.found.push(x);
            self.queue.push_back(x);
            if self.found.len() > self.cap {
                return Err(Error::Capacity {
                    what: "ideal closure",
                    limit: self.cap,
                    reached: self.found.len(),
                });
            }
        }
        Ok(())
    }
}

/// Every two-sided ideal of a small ring, ordered by size then by element set.
pub fn all_ideals(ring: &Ring, max_order: u32) -> Result<Vec<Ideal>> {
    if ring.order() > max_order {
        return Err(Error::Capacity {
            what: "ideal lattice enumeration",
            limit: max_order as usize,
            reached: ring.order() as usize,
        });
    }
    let mut found = vec![Ideal::zero(ring)];
    let mut k = 0;
    while k < found.len() {
        let current = found[k].clone();
        for x in ring.elements() {
            if current.contains(x) {
                continue;
            }
            let mut gens = current.elements().to_vec();
            gens.push(x);
            let bigger = Ideal::generated(ring, &gens)?;
            if !found.contains(&bigger) {
                found.push(bigger);
            }
        }
        k += 1;
    }
    // Shrink generating sets to a minimal-looking canonical choice.
    let mut out: Vec<Ideal> = found
        .into_iter()
        .map(|ideal| {
            let mut gens: Vec<Elem> = Vec::new();
            let mut span = Ideal::zero(ring);
            for &x in ideal.elements() {
                if !span.contains(x) {
                    gens.push(x);
                    span = Ideal::generated(ring, &gens).expect("within ring order");
                }
            }
            span
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}
