use super::rank_one::rank_one_word;
use crate::error::{argument, invariant, Error, Result};
use crate::group::{Gl, GroupWord, InvertibleMatrix, Letter, RelativeFactor, RelativeWord};
use crate::ring::{orthogonal_decomposition, Elem, Ideal, Ring};

/// `[t_ij(x), t_jk(1)] = t_ik(x)` with `j` the smallest index outside `{i, k}`.
pub fn transvection_as_commutator(ring: &Ring, n: usize, i: usize, k: usize, x: Elem) -> Result<GroupWord> {
    if n < 3 {
        return Err(Error::Unsupported("a commutator of transvections needs n >= 3".into()));
    }
    if i >= n || k >= n || i == k {
        return Err(argument(format!("invalid index pair ({}, {})", i + 1, k + 1)));
    }
    ring.check(x)?;
    let j = (0..n).find(|&j| j != i && j != k).expect("n >= 3");
    Ok(GroupWord::commutator(
        &GroupWord::single(Letter::new(i, j, x)),
        &GroupWord::single(Letter::new(j, k, ring.one())),
    ))
}

/// `[t_ij(x), sigma]` for `sigma in C_n(R, I)` as a product of conjugates of
/// `I`-elementary transvections.
///
/// With `e_k = sigma'_jk sigma_kj r_k` orthogonal idempotents summing to 1,
/// `t_ij(x) = prod_k t_ij(x e_k)` and
/// `[t_ij(x), sigma] = tau(n)^{P_{n-1}^{-1}} ... tau(2)^{P_1^{-1}} tau(1)` where
/// `tau(k) = [t_ij(x e_k), sigma]` and `P_m = t_ij(x e_1) ... t_ij(x e_m)`.
pub fn factor_congruence_commutator(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    x: Elem,
    ideal: &Ideal,
) -> Result<RelativeWord> {
    let r = gl.ring();
    let n = gl.degree();
    if n < 2 {
        return Err(argument("degree must be at least 2"));
    }
    gl.check_pair(i, j)?;
    gl.check(sigma.matrix())?;
    r.check(x)?;
    if !gl.congruence_member(sigma.matrix(), ideal) {
        return Err(Error::Precondition("sigma is not in the congruence subgroup of the ideal".into()));
    }
    let s = |a: usize, b: usize| sigma.entry(a, b);
    let si = |a: usize, b: usize| sigma.inv_entry(a, b);
    let family: Vec<Elem> = (0..n).map(|k| r.mul(si(j, k), s(k, j))).collect();
    let dec = orthogonal_decomposition(r, &family)?;
    let (es, rs) = (&dec.idempotents, &dec.witnesses);

    let mut word = RelativeWord::empty();
    for k in (0..n).rev() {
        let xe = r.mul(x, es[k]);
        let tau = if k != j {
            case_off_pivot(gl, sigma, i, j, k, xe, rs[k], ideal)?
        } else {
            case_pivot(gl, sigma, i, j, xe, rs[j], ideal)?
        };
        let undo: GroupWord = (0..k).rev().map(|m| Letter::new(i, j, r.neg(r.mul(x, es[m])))).collect();
        word.extend(tau.conjugated_by(&undo));
    }

    if let Some(pos) = word.first_base_outside(ideal) {
        return Err(invariant(format!("base letter {} lies outside the ideal", word.factors()[pos].base)));
    }
    let t = gl.transvection(i, j, x)?;
    let target = gl.commutator(&t, sigma);
    if gl.eval_relative(&word)? != target {
        return Err(invariant("word does not evaluate to the commutator"));
    }
    Ok(word)
}

/// `tau(k)` for `k != j`: with `xi = t_kl(-sigma_kj r_k sigma'_jl)`,
/// `tau(k) = t_ij(x e_k) (e + u v)^{xi^{-1}}`, `u = -xi^{-1} sigma_{*i}`,
/// `v = x e_k sigma'_{j*} xi`, and `v_l = 0`.
#[allow(clippy::too_many_arguments)]
fn case_off_pivot(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    k: usize,
    xe: Elem,
    rk: Elem,
    ideal: &Ideal,
) -> Result<RelativeWord> {
    let r = gl.ring();
    let n = gl.degree();
    let l = if k == 0 { 1 } else { 0 };
    let c = r.product_of([sigma.entry(k, j), rk, sigma.inv_entry(j, l)]);
    let xi = gl.transvection(k, l, r.neg(c))?;
    let col: Vec<Elem> = sigma.matrix().column(i);
    let u: Vec<Elem> = gl.apply_column(xi.inverse(), &col).into_iter().map(|a| r.neg(a)).collect();
    let row: Vec<Elem> = (0..n).map(|m| r.mul(xe, sigma.inv_entry(j, m))).collect();
    let v = gl.apply_row(&row, xi.matrix());
    let mut word = RelativeWord::new(vec![RelativeFactor::plain(Letter::new(i, j, xe))]);
    word.extend(rank_one_word(gl, &u, &v, l, ideal, None)?.conjugated_by(&GroupWord::single(Letter::new(k, l, c))));
    Ok(word)
}

/// `tau(j)`: with `xi = prod_{l != j} t_jl(-sigma_jj r_j sigma'_jl)`,
/// `tau(j)^xi = [xi^{-1}, t] (e + z e^jj) t_ij(x e_j (1 + z) - sigma_ii x e_j sigma'_jj)
/// prod_{l != i, j} t_lj(-sigma_li x e_j sigma'_jj)` where `t = t_ij(x e_j)` and
/// `z = a b`, `a = sigma_jj r_j sigma'_jj - 1`, `b = sigma_ji x e_j sigma'_jj`.
fn case_pivot(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    xe: Elem,
    rj: Elem,
    ideal: &Ideal,
) -> Result<RelativeWord> {
    let r = gl.ring();
    let n = gl.degree();
    let s = |a: usize, b: usize| sigma.entry(a, b);
    let si = |a: usize, b: usize| sigma.inv_entry(a, b);
    let xi: GroupWord = (0..n)
        .filter(|&l| l != j)
        .map(|l| Letter::new(j, l, r.neg(r.product_of([s(j, j), rj, si(j, l)]))))
        .collect();
    let t = Letter::new(i, j, xe);
    let mut piece = RelativeWord::empty();
    // [xi^{-1}, t] = xi^{-1} xi^{t^{-1}}
    for letter in xi.inverse().letters() {
        piece.push(RelativeFactor::plain(*letter));
    }
    for letter in xi.letters() {
        piece.push(RelativeFactor::conjugated(*letter, GroupWord::single(t.inverse())));
    }
    let a = r.sub(r.product_of([s(j, j), rj, si(j, j)]), r.one());
    let b = r.product_of([s(j, i), xe, si(j, j)]);
    let z = r.mul(a, b);
    let mut u = vec![r.zero(); n];
    u[j] = a;
    let mut v = vec![r.zero(); n];
    v[j] = b;
    let zero_at = if j == 0 { 1 } else { 0 };
    piece.extend(rank_one_word(gl, &u, &v, zero_at, ideal, None)?);
    let y = r.sub(r.mul(xe, r.add(r.one(), z)), r.product_of([s(i, i), xe, si(j, j)]));
    if !ideal.contains(y) {
        return Err(invariant("diagonal correction entry lies outside the ideal"));
    }
    piece.push(RelativeFactor::plain(Letter::new(i, j, y)));
    for l in (0..n).filter(|&l| l != i && l != j) {
        let y = r.neg(r.product_of([s(l, i), xe, si(j, j)]));
        piece.push(RelativeFactor::plain(Letter::new(l, j, y)));
    }
    Ok(piece.conjugated_by(&xi.inverse()))
}
