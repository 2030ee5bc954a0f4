use serde::Serialize;

use super::product::ConjugateProduct;
use crate::error::{argument, invariant, Result};
use crate::group::{Gl, GroupWord, InvertibleMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionPair {
    pub a: InvertibleMatrix,
    pub b: InvertibleMatrix,
}

/// `(a, b) -> ([a^{-1}, g], [g, b])`.
pub fn reduce_step(gl: &Gl, pair: &ReductionPair, g: &InvertibleMatrix) -> Result<ReductionPair> {
    for m in [&pair.a, &pair.b, g] {
        if m.degree() != gl.degree() {
            return Err(argument("reduction pair and g must have the same degree"));
        }
    }
    Ok(ReductionPair {
        a: gl.commutator(&pair.a.inv(), g),
        b: gl.commutator(g, &pair.b),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionExpansion {
    /// `(a_1, b_1), ..., (a_{k+1}, b_{k+1})`.
    pub chain: Vec<ReductionPair>,
    /// `a_{k+1} b_{k+1}` as `2^k` conjugates of `a_1 b_1` and its inverse.
    pub product: ConjugateProduct,
}

/// Expands `a_{k+1} b_{k+1}` for the chain starting at `(eval(a1), b1)` and
/// reduced by `eval(g_1), ..., eval(g_k)`, using
/// `a_2 b_2 = (a_1 b_1)^{g^{-1} a_1} ((a_1 b_1)^{-1})^{a_1}` at every step.
///
/// Conjugators are words in `a_1` and the `g_i`: `a_{m+1} = a_m^{-1} g_m a_m g_m^{-1}`.
pub fn expand_reduction(
    gl: &Gl,
    a1: &GroupWord,
    b1: &InvertibleMatrix,
    gs: &[GroupWord],
) -> Result<ReductionExpansion> {
    let a1_value = gl.eval_word(a1)?;
    let mut pair = ReductionPair {
        a: a1_value.clone(),
        b: b1.clone(),
    };
    let mut chain = vec![pair.clone()];
    let mut product = ConjugateProduct::base(gl.mul_inv(&a1_value, b1));
    let mut a_word = a1.clone();
    for g in gs {
        let g_value = gl.eval_word(g)?;
        pair = reduce_step(gl, &pair, &g_value)?;
        chain.push(pair.clone());
        let mut next = product.conjugated_by(&g.inverse().concat(&a_word));
        next.append(product.inverse().conjugated_by(&a_word));
        product = next;
        a_word = a_word.inverse().concat(g).concat(&a_word).concat(&g.inverse());
    }
    let direct = gl.mul_inv(&pair.a, &pair.b);
    if product.eval(gl)? != direct {
        return Err(invariant("reduction expansion does not match the chain"));
    }
    if product.len() != 1 << gs.len() {
        return Err(invariant("reduction expansion has the wrong length"));
    }
    Ok(ReductionExpansion { chain, product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Letter;
    use crate::ring::{Elem, Ring};

    fn f2() -> Gl {
        Gl::new(Ring::modular(2).unwrap(), 3).unwrap()
    }

    #[test]
    fn identity_g_gives_identity_pair() {
        let g = f2();
        let t = g.transvection(0, 1, Elem(1)).unwrap();
        let pair = ReductionPair { a: t.clone(), b: t };
        let next = reduce_step(&g, &pair, &g.identity_invertible()).unwrap();
        assert!(g.is_identity(next.a.matrix()) && g.is_identity(next.b.matrix()));
    }

    #[test]
    fn transvection_example() {
        let g = f2();
        let t12 = g.transvection(0, 1, Elem(1)).unwrap();
        let t23 = g.transvection(1, 2, Elem(1)).unwrap();
        let pair = ReductionPair {
            a: t12.clone(),
            b: t12.inv(),
        };
        let next = reduce_step(&g, &pair, &t23).unwrap();
        // [t12^{-1}, t23] = t13(-1) and [t23, t12^{-1}] = [t12^{-1}, t23]^{-1}.
        assert_eq!(next.a, g.transvection(0, 2, Elem(1)).unwrap());
        assert_eq!(next.b, g.commutator(&t23, &t12.inv()));
        assert_eq!(next.b, next.a.inv());
    }

    #[test]
    fn zero_steps_is_a_single_factor() {
        let g = f2();
        let a = GroupWord::single(Letter::new(0, 1, Elem(1)));
        let b = g.perm_matrix(1, 2).unwrap();
        let ex = expand_reduction(&g, &a, &b, &[]).unwrap();
        assert_eq!(ex.product.len(), 1);
        assert_eq!(ex.chain.len(), 1);
    }

    #[test]
    fn one_step_matches_identity() {
        let g = f2();
        let a = GroupWord::single(Letter::new(0, 1, Elem(1)));
        let b = g.perm_matrix(1, 2).unwrap();
        let step = GroupWord::single(Letter::new(2, 0, Elem(1)));
        let ex = expand_reduction(&g, &a, &b, std::slice::from_ref(&step)).unwrap();
        assert_eq!(ex.product.len(), 2);
        let a1 = g.eval_word(&a).unwrap();
        let g1 = g.eval_word(&step).unwrap();
        let direct = g.mul_inv(&g.commutator(&a1.inv(), &g1), &g.commutator(&g1, &b));
        assert_eq!(ex.product.eval(&g).unwrap(), direct);
    }
}
