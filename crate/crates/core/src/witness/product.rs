use serde::Serialize;

use crate::error::{invariant, Result};
use crate::group::{Gl, GroupWord, InvertibleMatrix, Sign};

/// `(sigma^{eval(conj)})^{exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateFactor {
    pub conj: GroupWord,
    pub exp: Sign,
}

/// A product of `E_n(R)`-conjugates of `sigma` and `sigma^{-1}`, with every
/// conjugator kept as a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateProduct {
    pub sigma: InvertibleMatrix,
    pub factors: Vec<ConjugateFactor>,
}

impl ConjugateProduct {
    /// The single factor `sigma`.
    pub fn base(sigma: InvertibleMatrix) -> ConjugateProduct {
        ConjugateProduct {
            sigma,
            factors: vec![ConjugateFactor {
                conj: GroupWord::empty(),
                exp: Sign::Plus,
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn eval(&self, gl: &Gl) -> Result<InvertibleMatrix> {
        let inv = self.sigma.inv();
        let mut acc = gl.identity_invertible();
        for f in &self.factors {
            let c = gl.eval_word(&f.conj)?;
            let s = match f.exp {
                Sign::Plus => &self.sigma,
                Sign::Minus => &inv,
            };
            acc = gl.mul_inv(&acc, &gl.conj_inv(s, &c));
        }
        Ok(acc)
    }

    /// The same product conjugated by `eval(extra)`.
    pub fn conjugated_by(&self, extra: &GroupWord) -> ConjugateProduct {
        ConjugateProduct {
            sigma: self.sigma.clone(),
            factors: self
                .factors
                .iter()
                .map(|f| ConjugateFactor {
                    conj: f.conj.concat(extra),
                    exp: f.exp,
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> ConjugateProduct {
        ConjugateProduct {
            sigma: self.sigma.clone(),
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| ConjugateFactor {
                    conj: f.conj.clone(),
                    exp: f.exp.flip(),
                })
                .collect(),
        }
    }

    pub fn append(&mut self, other: ConjugateProduct) {
        debug_assert_eq!(self.sigma, other.sigma);
        self.factors.extend(other.factors);
    }

    /// Replaces the base of `self` by `inner`, whose value must equal
    /// `self.sigma`. The result is a product of conjugates of `inner.sigma`.
    pub fn substitute(&self, inner: &ConjugateProduct) -> ConjugateProduct {
        let mut factors = Vec::with_capacity(self.len() * inner.len());
        for outer in &self.factors {
            let run: Box<dyn Iterator<Item = &ConjugateFactor>> = match outer.exp {
                Sign::Plus => Box::new(inner.factors.iter()),
                Sign::Minus => Box::new(inner.factors.iter().rev()),
            };
            for f in run {
                factors.push(ConjugateFactor {
                    conj: f.conj.concat(&outer.conj),
                    exp: f.exp.times(outer.exp),
                });
            }
        }
        ConjugateProduct {
            sigma: inner.sigma.clone(),
            factors,
        }
    }

    /// For `self` over `sigma^h`, the same product over `sigma`.
    pub fn rebase(&self, sigma: InvertibleMatrix, h: &GroupWord) -> ConjugateProduct {
        ConjugateProduct {
            sigma,
            factors: self
                .factors
                .iter()
                .map(|f| ConjugateFactor {
                    conj: h.concat(&f.conj),
                    exp: f.exp,
                })
                .collect(),
        }
    }

    /// Errors unless the product evaluates to `target`.
    pub fn check(&self, gl: &Gl, target: &InvertibleMatrix, what: &str) -> Result<()> {
        if self.eval(gl)?.matrix() != target.matrix() {
            return Err(invariant(format!("{what}: conjugate product does not evaluate to its target")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Letter;
    use crate::ring::{Elem, Ring};

    fn setup() -> (Gl, InvertibleMatrix) {
        let g = Gl::new(Ring::modular(4).unwrap(), 3).unwrap();
        let m = g.from_rows(vec![vec![1, 2, 0], vec![3, 1, 1], vec![0, 1, 2]]).unwrap();
        let s = g.invert(&m).unwrap();
        (g, s)
    }

    #[test]
    fn inverse_and_conjugation() {
        let (g, s) = setup();
        let c = GroupWord::new(vec![Letter::new(0, 2, Elem(3)), Letter::new(1, 0, Elem(1))]);
        let mut p = ConjugateProduct::base(s.clone());
        p.append(ConjugateProduct::base(s.clone()).conjugated_by(&c).inverse());
        let v = p.eval(&g).unwrap();
        assert!(g.is_identity(&g.mul(v.matrix(), p.inverse().eval(&g).unwrap().matrix())));
        let h = g.eval_word(&c).unwrap();
        assert_eq!(p.conjugated_by(&c).eval(&g).unwrap(), g.conj_inv(&v, &h));
    }

    #[test]
    fn substitution_and_rebase() {
        let (g, s) = setup();
        let c = GroupWord::single(Letter::new(2, 1, Elem(1)));
        let mut inner = ConjugateProduct::base(s.clone()).conjugated_by(&c);
        inner.append(ConjugateProduct::base(s.clone()).inverse());
        let xi = inner.eval(&g).unwrap();
        let d = GroupWord::single(Letter::new(0, 1, Elem(2)));
        let mut outer = ConjugateProduct::base(xi.clone()).conjugated_by(&d).inverse();
        outer.append(ConjugateProduct::base(xi.clone()));
        let flat = outer.substitute(&inner);
        assert_eq!(flat.len(), 4);
        assert_eq!(flat.eval(&g).unwrap(), outer.eval(&g).unwrap());

        let h = GroupWord::single(Letter::new(1, 0, Elem(3)));
        let twisted = g.conj_inv(&s, &g.eval_word(&h).unwrap());
        let over_twisted = ConjugateProduct::base(twisted).conjugated_by(&d);
        let back = over_twisted.rebase(s, &h);
        assert_eq!(back.eval(&g).unwrap(), over_twisted.eval(&g).unwrap());
    }
}
