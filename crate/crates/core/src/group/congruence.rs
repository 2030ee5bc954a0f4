use serde::Serialize;

use super::enumerate::{enumerate_closure, gl_generators, Subgroup};
use super::matrix::{Gl, InvertibleMatrix, Matrix};
use crate::error::Result;
use crate::ring::{Elem, Ideal, Quotient};

/// Where a generator of a level ideal comes from; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LevelOrigin {
    /// The entry `sigma_{ij}`, `i != j`.
    Entry { i: usize, j: usize },
    /// `a sigma_{ii} - sigma_{jj} a`, `i != j`.
    Diagonal { i: usize, j: usize, a: Elem },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelGenerator {
    pub value: Elem,
    pub origin: LevelOrigin,
}

impl Gl {
    /// `sigma_{ij} in I` for `i != j` and `a sigma_{ii} - sigma_{jj} a in I`
    /// for all `i, j` and all `a`.
    pub fn congruence_member(&self, sigma: &Matrix, ideal: &Ideal) -> bool {
        let r = self.ring();
        let n = self.degree();
        for i in 0..n {
            for j in 0..n {
                if i != j && !ideal.contains(sigma.get(i, j)) {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (d, f) = (sigma.get(i, i), sigma.get(j, j));
                if !r.elements().all(|a| ideal.contains(r.sub(r.mul(a, d), r.mul(f, a)))) {
                    return false;
                }
            }
        }
        true
    }

    /// Distinct nonzero values among the off-diagonal entries and the
    /// `a sigma_{ii} - sigma_{jj} a` with `i != j`, each with its first origin.
    ///
    /// For `n >= 2` these generate the same ideal as the family over all `i, j`,
    /// since `sigma_{ii} - sigma_{jj}` is among them.
    pub fn level_generators(&self, sigma: &Matrix) -> Vec<LevelGenerator> {
        let r = self.ring();
        let n = self.degree();
        let mut out: Vec<LevelGenerator> = Vec::new();
        let mut push = |value: Elem, origin| {
            if value != r.zero() && !out.iter().any(|g| g.value == value) {
                out.push(LevelGenerator { value, origin });
            }
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    push(sigma.get(i, j), LevelOrigin::Entry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    for a in r.elements() {
                        let v = r.sub(r.mul(a, sigma.get(i, i)), r.mul(sigma.get(j, j), a));
                        push(v, LevelOrigin::Diagonal { i, j, a });
                    }
                }
            }
        }
        out
    }

    /// The off-diagonal entries and all `a sigma_{ii} - sigma_{jj} a`, without repeats.
    pub fn level_values(&self, sigma: &Matrix) -> Vec<Elem> {
        let r = self.ring();
        let n = self.degree();
        let mut vals = vec![false; r.order() as usize];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    vals[sigma.get(i, j).index()] = true;
                }
                for a in r.elements() {
                    vals[r.sub(r.mul(a, sigma.get(i, i)), r.mul(sigma.get(j, j), a)).index()] = true;
                }
            }
        }
        r.elements().filter(|x| vals[x.index()]).collect()
    }

    /// The ideal generated by the off-diagonal entries and all
    /// `a sigma_{ii} - sigma_{jj} a`.
    pub fn level_ideal(&self, sigma: &Matrix) -> Result<Ideal> {
        Ideal::generated(self.ring(), &self.level_values(sigma))
    }

    pub fn level_ideal_of_set(&self, set: &[InvertibleMatrix]) -> Result<Ideal> {
        let mut ideal = Ideal::zero(self.ring());
        for s in set {
            ideal = ideal.join(&self.level_ideal(s.matrix())?)?;
        }
        Ok(ideal)
    }
}

/// Membership in `C_n(R, I)` from the definition: the image in
/// `GL_n(R/I)` is central.
///
/// Centrality is tested against a generating set of `GL_n(R/I)`, namely all
/// transvections and `diag(u, 1, ..., 1)` for units `u`.
/// [`CenterOracle::validate_generators`] confirms by enumeration that they
/// generate the whole group.
pub struct CenterOracle {
    source: Gl,
    quotient: Option<(Quotient, Gl, Vec<InvertibleMatrix>)>,
}

impl CenterOracle {
    pub fn new(gl: &Gl, ideal: &Ideal) -> Result<CenterOracle> {
        let quotient = match Quotient::new(ideal)? {
            None => None,
            Some(q) => {
                let target = Gl::new(q.ring().clone(), gl.degree())?;
                let gens = gl_generators(&target)?;
                Some((q, target, gens))
            }
        };
        Ok(CenterOracle {
            source: gl.clone(),
            quotient,
        })
    }

    /// The reduction of `sigma` modulo `I`.
    pub fn reduce(&self, sigma: &Matrix) -> Option<Matrix> {
        let (q, target, _) = self.quotient.as_ref()?;
        let n = self.source.degree();
        let mut m = target.zero_matrix();
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, q.project(sigma.get(i, j)));
            }
        }
        Some(m)
    }

    /// Always true when `I = R`: `GL_n` of the zero ring is trivial.
    pub fn is_member(&self, sigma: &Matrix) -> bool {
        let Some((_, target, gens)) = &self.quotient else {
            return true;
        };
        let s = self.reduce(sigma).expect("quotient present");
        gens.iter()
            .all(|g| target.mul(&s, g.matrix()) == target.mul(g.matrix(), &s))
    }

    /// Enumerates the group generated by the centrality generators and returns
    /// it with the brute-force count of invertible matrices over `R/I`.
    pub fn validate_generators(&self, cap: usize) -> Result<Option<(Subgroup, usize)>> {
        let Some((_, target, gens)) = &self.quotient else {
            return Ok(None);
        };
        let group = enumerate_closure(target, gens, cap)?;
        let count = count_invertible(target, cap)?;
        Ok(Some((group, count)))
    }
}

/// Number of invertible `n x n` matrices, by trying every matrix.
pub fn count_invertible(gl: &Gl, cap: usize) -> Result<usize> {
    let r = gl.ring();
    let n = gl.degree();
    let order = r.order() as u64;
    let total = order.checked_pow((n * n) as u32).filter(|&t| t <= cap as u64);
    let Some(total) = total else {
        return Err(crate::error::Error::Capacity {
            what: "invertible matrix count",
            limit: cap,
            reached: usize::MAX,
        });
    };
    let mut count = 0;
    let mut m = gl.zero_matrix();
    for code in 0..total {
        let mut c = code;
        for i in (0..n).rev() {
            for j in (0..n).rev() {
                m.set(i, j, Elem((c % order) as u32));
                c /= order;
            }
        }
        if gl.invert(&m).is_ok() {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{all_ideals, parse_ring_spec, Ring};

    fn z4() -> (Gl, Ideal) {
        let r = Ring::modular(4).unwrap();
        let two = Ideal::generated(&r, &[Elem(2)]).unwrap();
        (Gl::new(r, 3).unwrap(), two)
    }

    #[test]
    fn membership_examples() {
        let (g, two) = z4();
        let mut s = g.identity();
        s.set(0, 1, Elem(2));
        assert!(g.congruence_member(&s, &two));
        let t = g.transvection(0, 1, Elem(1)).unwrap();
        assert!(!g.congruence_member(t.matrix(), &two));
        let scalar = g.diag(&[Elem(3); 3]);
        assert!(g.congruence_member(&scalar, &Ideal::zero(g.ring())));
    }

    #[test]
    fn level_ideal_examples() {
        let (g, two) = z4();
        assert!(g.level_ideal(&g.identity()).unwrap().is_zero());
        let t = g.transvection(0, 1, Elem(2)).unwrap();
        assert_eq!(g.level_ideal(t.matrix()).unwrap(), two);
        assert!(g.level_ideal(&g.diag(&[Elem(3); 3])).unwrap().is_zero());
        assert_eq!(g.level_ideal(&g.diag(&[Elem(3), Elem(1), Elem(1)])).unwrap(), two);
    }

    #[test]
    fn level_ideal_over_noncommutative_scalars() {
        // A scalar matrix with a non-central entry has a nonzero level.
        let r = parse_ring_spec("UT(2,Z/2)").unwrap();
        let g = Gl::new(r.clone(), 3).unwrap();
        let e11 = Elem(0b100);
        let s = g.diag(&[e11; 3]);
        let level = g.level_ideal(&s).unwrap();
        assert!(!level.is_zero());
        assert!(g.congruence_member(&s, &level));
        for ideal in all_ideals(&r, 16).unwrap() {
            assert_eq!(
                g.congruence_member(&s, &ideal),
                level.is_subset(&ideal),
                "{ideal:?}"
            );
        }
    }

    #[test]
    fn center_generators_cover_gl3_f2() {
        let r = Ring::modular(2).unwrap();
        let g = Gl::new(r.clone(), 3).unwrap();
        let oracle = CenterOracle::new(&g, &Ideal::zero(&r)).unwrap();
        let (group, count) = oracle.validate_generators(1 << 12).unwrap().unwrap();
        assert_eq!(group.len(), 168);
        assert_eq!(count, 168);
    }

    #[test]
    fn definitional_test_agrees_on_gl2_z4() {
        let r = Ring::modular(4).unwrap();
        let g = Gl::new(r.clone(), 2).unwrap();
        let all = enumerate_closure(&g, &gl_generators(&g).unwrap(), 1 << 12).unwrap();
        assert_eq!(all.len(), count_invertible(&g, 1 << 12).unwrap());
        for ideal in all_ideals(&r, 16).unwrap() {
            let oracle = CenterOracle::new(&g, &ideal).unwrap();
            for s in all.elements() {
                assert_eq!(oracle.is_member(s), g.congruence_member(s, &ideal));
            }
        }
    }
}
