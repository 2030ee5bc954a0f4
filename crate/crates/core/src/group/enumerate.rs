use std::collections::{HashSet, VecDeque};

use super::matrix::{Gl, InvertibleMatrix, Matrix};
use crate::error::{Error, Result};
use crate::ring::{Elem, Ideal};

pub const DEFAULT_GROUP_CAP: usize = 1 << 20;

/// An explicitly enumerated subgroup with its elements in sorted order.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<Matrix>,
    index: HashSet<Matrix>,
    generators: Vec<InvertibleMatrix>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[InvertibleMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index.contains(m)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|m| other.contains(m))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

/// A group enumerated so far, grown one generator at a time.
struct Closure<'a> {
    gl: &'a Gl,
    seen: HashSet<Matrix>,
    order: Vec<Matrix>,
    steps: Vec<Matrix>,
    cap: usize,
}

impl<'a> Closure<'a> {
    fn new(gl: &'a Gl, cap: usize) -> Closure<'a> {
        let e = gl.identity();
        Closure {
            gl,
            seen: HashSet::from([e.clone()]),
            order: vec![e],
            steps: Vec::new(),
            cap,
        }
    }

    fn insert(&mut self, m: Matrix, queue: &mut VecDeque<usize>) -> Result<()> {
        if self.seen.contains(&m) {
            return Ok(());
        }
        if self.seen.len() >= self.cap {
            return Err(Error::Capacity {
                what: "subgroup enumeration",
                limit: self.cap,
                reached: self.seen.len(),
            });
        }
        self.seen.insert(m.clone());
        queue.push_back(self.order.len());
        self.order.push(m);
        Ok(())
    }

    /// Adds `g`; false if it was already an element.
    ///
    /// Old elements are closed under the old steps, so only they times the new
    /// steps and the new elements times every step need computing.
    fn add(&mut self, g: &InvertibleMatrix) -> Result<bool> {
        if self.seen.contains(g.matrix()) {
            return Ok(false);
        }
        let fresh: Vec<Matrix> = [g.matrix(), g.inverse()]
            .into_iter()
            .filter(|m| !self.steps.contains(m))
            .cloned()
            .collect();
        self.steps.extend(fresh.iter().cloned());
        let mut queue = VecDeque::new();
        for k in 0..self.order.len() {
            for s in &fresh {
                let next = self.gl.mul(&self.order[k], s);
                self.insert(next, &mut queue)?;
            }
        }
        while let Some(k) = queue.pop_front() {
            for t in 0..self.steps.len() {
                let next = self.gl.mul(&self.order[k], &self.steps[t]);
                self.insert(next, &mut queue)?;
            }
        }
        Ok(true)
    }

    fn finish(self, generators: Vec<InvertibleMatrix>) -> Subgroup {
        let mut elements = self.order;
        elements.sort();
        Subgroup {
            elements,
            index: self.seen,
            generators,
        }
    }
}

/// Closure of `e` under right multiplication by the generators and their
/// inverses, added one generator at a time.
pub fn enumerate_closure(gl: &Gl, generators: &[InvertibleMatrix], cap: usize) -> Result<Subgroup> {
    let mut c = Closure::new(gl, cap);
    for g in generators {
        c.add(g)?;
    }
    Ok(c.finish(generators.to_vec()))
}

/// The normal closure of `⟨base⟩` under conjugation by `⟨by⟩`.
///
/// Every generator kept is conjugated by each element of `by` and its
/// inverse; conjugates outside the current group become generators.
pub fn normal_closure(
    gl: &Gl,
    base: &[InvertibleMatrix],
    by: &[InvertibleMatrix],
    cap: usize,
) -> Result<Subgroup> {
    let mut c = Closure::new(gl, cap);
    let mut gens = Vec::new();
    for g in base {
        if c.add(g)? {
            gens.push(g.clone());
        }
    }
    let mut k = 0;
    while k < gens.len() {
        for h in by {
            for h in [h.clone(), h.inv()] {
                let conj = gl.conj_inv(&gens[k], &h);
                if c.add(&conj)? {
                    gens.push(conj);
                }
            }
        }
        k += 1;
    }
    Ok(c.finish(gens))
}

/// All nontrivial `t_{ij}(x)`.
pub fn elementary_generators(gl: &Gl) -> Result<Vec<InvertibleMatrix>> {
    let elems: Vec<Elem> = gl.ring().elements().filter(|&x| x != gl.ring().zero()).collect();
    ideal_transvections(gl, &elems)
}

/// All nontrivial `t_{ij}(x)` with `x in I`.
pub fn ideal_elementary_generators(gl: &Gl, ideal: &Ideal) -> Result<Vec<InvertibleMatrix>> {
    let elems: Vec<Elem> = ideal.elements().iter().copied().filter(|&x| x != gl.ring().zero()).collect();
    ideal_transvections(gl, &elems)
}

fn ideal_transvections(gl: &Gl, elems: &[Elem]) -> Result<Vec<InvertibleMatrix>> {
    let n = gl.degree();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &x in elems {
                    out.push(gl.transvection(i, j, x)?);
                }
            }
        }
    }
    Ok(out)
}

/// `t_{ij}(x)^{t_{kl}(y)}` for `x in I` and all `k != l`, `y`, without repeats.
pub fn relative_generators(gl: &Gl, ideal: &Ideal) -> Result<Vec<InvertibleMatrix>> {
    let base = ideal_elementary_generators(gl, ideal)?;
    let conj = elementary_generators(gl)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for b in &base {
        if seen.insert(b.matrix().clone()) {
            out.push(b.clone());
        }
        for c in &conj {
            let m = gl.conj_inv(b, c);
            if seen.insert(m.matrix().clone()) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Transvections plus `diag(u, 1, ..., 1)` for every unit `u != 1`.
pub fn gl_generators(gl: &Gl) -> Result<Vec<InvertibleMatrix>> {
    let mut out = elementary_generators(gl)?;
    for u in gl.ring().units() {
        if u != gl.ring().one() {
            out.push(gl.unit_diagonal(u)?);
        }
    }
    Ok(out)
}
