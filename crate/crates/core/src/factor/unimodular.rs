use super::rank_one::rank_one_word;
use crate::error::{argument, invariant, Result};
use crate::group::{Gl, GroupWord, InvertibleMatrix, Letter, RelativeWord};
use crate::ring::{orthogonal_decomposition, Elem, Ideal};

/// `e + u x v` for a unimodular row `v` (with `v w = 1`), `v u = 0` and `x in I`.
///
/// With `e_i = v_i w_i r_i` orthogonal idempotents summing to 1, the factor
/// `tau(i) = e + u x e_i v` is conjugated by `h = t_ij(-w_i r_i v_j)`, `j` the
/// smallest index other than `i`, into a rank-one matrix with zero entry `j`.
/// The product `tau(1) ... tau(n)` is kept in index order.
pub fn factor_unimodular(
    gl: &Gl,
    u: &[Elem],
    v: &[Elem],
    w: &[Elem],
    x: Elem,
    ideal: &Ideal,
) -> Result<RelativeWord> {
    let r = gl.ring();
    let n = gl.degree();
    if n < 2 {
        return Err(argument("degree must be at least 2"));
    }
    if u.len() != n || v.len() != n || w.len() != n {
        return Err(argument(format!("u, v and w must have length {n}")));
    }
    for &y in u.iter().chain(v).chain(w) {
        r.check(y)?;
    }
    r.check(x)?;
    if !ideal.contains(x) {
        return Err(argument(format!("x = {x} is not in the ideal")));
    }
    if gl.dot(v, u) != r.zero() {
        return Err(argument("v u must be 0"));
    }
    if gl.dot(v, w) != r.one() {
        return Err(argument("v w must be 1"));
    }
    let family: Vec<Elem> = (0..n).map(|k| r.mul(v[k], w[k])).collect();
    let dec = orthogonal_decomposition(r, &family)?;
    let mut word = RelativeWord::empty();
    for i in 0..n {
        let j = if i == 0 { 1 } else { 0 };
        let c = r.product_of([w[i], dec.witnesses[i], v[j]]);
        let mut u2 = u.to_vec();
        u2[i] = r.add(u[i], r.mul(c, u[j]));
        let xe = r.mul(x, dec.idempotents[i]);
        let mut v2: Vec<Elem> = v.iter().map(|&vk| r.mul(xe, vk)).collect();
        v2[j] = r.mul(xe, r.sub(v[j], r.mul(v[i], c)));
        if v2[j] != r.zero() {
            return Err(invariant("conjugated row lost its zero entry"));
        }
        let piece = rank_one_word(gl, &u2, &v2, j, ideal, Some(i))?;
        word.extend(piece.conjugated_by(&GroupWord::single(Letter::new(i, j, c))));
    }
    let target = gl.add(&gl.identity(), &gl.scale_left_outer(u, x, v));
    if gl.eval_relative(&word)?.matrix() != &target {
        return Err(invariant("unimodular word does not evaluate to e + uxv"));
    }
    if word.first_base_outside(ideal).is_some() {
        return Err(invariant("base letter outside the ideal"));
    }
    Ok(word)
}

/// `t_ij(x)^sigma = e + sigma'_{*i} x sigma_{j*}` as a product of conjugates
/// of `I`-elementary transvections.
pub fn factor_conjugated_transvection(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    x: Elem,
    ideal: &Ideal,
) -> Result<RelativeWord> {
    gl.check_pair(i, j)?;
    gl.check(sigma.matrix())?;
    if !ideal.contains(x) {
        return Err(argument(format!("x = {x} is not in the ideal")));
    }
    let u = sigma.inverse().column(i);
    let v = sigma.matrix().row(j);
    let w = sigma.inverse().column(j);
    let word = factor_unimodular(gl, &u, &v, &w, x, ideal)?;
    let target = gl.conj(gl.transvection(i, j, x)?.matrix(), sigma);
    if gl.eval_relative(&word)?.matrix() != &target {
        return Err(invariant("word does not evaluate to the conjugated transvection"));
    }
    Ok(word)
}

impl Gl {
    /// `u x v` for a column `u` and row `v`.
    pub fn scale_left_outer(&self, u: &[Elem], x: Elem, v: &[Elem]) -> crate::group::Matrix {
        let ux: Vec<Elem> = u.iter().map(|&a| self.ring().mul(a, x)).collect();
        self.outer(&ux, v)
    }
}
