use super::product::{ConjugateFactor, ConjugateProduct};
use super::reduction::expand_reduction;
use crate::error::{argument, invariant, Error, Result};
use crate::group::{perm_conjugator, Gl, GroupWord, InvertibleMatrix, Letter, Sign};
use crate::ring::{orthogonal_decomposition, Elem};

fn smallest_outside(n: usize, avoid: &[usize]) -> usize {
    (0..n).find(|p| !avoid.contains(p)).expect("n >= 3")
}

/// `t_kl(a y x_i b)` as exactly 8 conjugates of `sigma^{+-1}`, given
/// `y sum_p sigma_ip x_p = 0` and `x_j = 1`.
///
/// `xi = [t_ri(-y), sigma^{-1}]^tau` with `tau = prod_{p != j} t_pj(x_p)` is
/// two conjugates of `sigma^{+-1}`; the pair `(t_ri(-y)^tau, t_ri(y)^{sigma tau})`
/// reduces to a single transvection in two steps, giving four conjugates of
/// `xi^{+-1}`. When `i = j` the steps are `t_is(b), t_ir(a)`; otherwise
/// `t_ji(b), t_jr(a)`. The result is moved to `(k, l)` by a permutation word.
#[allow(clippy::too_many_arguments)]
pub fn extract_transvection_8(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    xs: &[Elem],
    y: Elem,
    (k, l): (usize, usize),
    a: Elem,
    b: Elem,
) -> Result<ConjugateProduct> {
    let r = gl.ring();
    let n = gl.degree();
    if n < 3 {
        return Err(Error::Unsupported("extraction needs n >= 3".into()));
    }
    gl.check_index(i)?;
    gl.check_index(j)?;
    gl.check_pair(k, l)?;
    if xs.len() != n {
        return Err(argument(format!("x must have length {n}")));
    }
    for &v in xs.iter().chain([&y, &a, &b]) {
        r.check(v)?;
    }
    if xs[j] != r.one() {
        return Err(argument(format!("x_{} must be 1", j + 1)));
    }
    let row_sum = r.sum((0..n).map(|p| r.mul(sigma.entry(i, p), xs[p])));
    if r.mul(y, row_sum) != r.zero() {
        return Err(Error::Precondition("y sum_p sigma_ip x_p must be 0".into()));
    }

    let tau: GroupWord = (0..n)
        .filter(|&p| p != j && xs[p] != r.zero())
        .map(|p| Letter::new(p, j, xs[p]))
        .collect();
    let rr = smallest_outside(n, &[i, j]);
    let t = Letter::new(rr, i, r.neg(y));
    let xi_cp = ConjugateProduct {
        sigma: sigma.clone(),
        factors: vec![
            ConjugateFactor {
                conj: GroupWord::single(t.inverse()).concat(&tau),
                exp: Sign::Minus,
            },
            ConjugateFactor {
                conj: tau.clone(),
                exp: Sign::Plus,
            },
        ],
    };
    let tau_value = gl.eval_word(&tau)?;
    let b1 = gl.conj_inv(&gl.conj_inv(&gl.letter_matrix(&t.inverse())?, sigma), &tau_value);

    let (a1, gs, position, value) = if i == j {
        let s = smallest_outside(n, &[i, rr]);
        (
            GroupWord::single(t),
            vec![
                GroupWord::single(Letter::new(i, s, b)),
                GroupWord::single(Letter::new(i, rr, a)),
            ],
            (i, s),
            r.product_of([a, y, b]),
        )
    } else {
        (
            GroupWord::new(vec![Letter::new(rr, j, r.neg(r.mul(y, xs[i]))), t]),
            vec![
                GroupWord::single(Letter::new(j, i, b)),
                GroupWord::single(Letter::new(j, rr, a)),
            ],
            (j, i),
            r.product_of([a, y, xs[i], b]),
        )
    };
    let expansion = expand_reduction(gl, &a1, &b1, &gs)?;
    let xi_value = xi_cp.eval(gl)?;
    if xi_value != expansion.product.sigma {
        return Err(invariant("xi does not match the first reduction pair"));
    }
    let last = expansion.chain.last().expect("non-empty chain");
    if last.a != gl.transvection(position.0, position.1, value)? || !gl.is_identity(last.b.matrix()) {
        return Err(invariant("reduction does not end at (transvection, e)"));
    }
    let pi = perm_conjugator(r, n, position, (k, l))?;
    let product = expansion.product.substitute(&xi_cp).conjugated_by(&pi);
    if product.len() != 8 {
        return Err(invariant("extraction must have exactly 8 factors"));
    }
    product.check(gl, &gl.transvection(k, l, value)?, "eight-factor extraction")?;
    Ok(product)
}

/// `t_kl(a sigma_ij b)` as `16n - 8` conjugates of `sigma^{+-1}`.
///
/// With `e_p = sigma_ip sigma'_pi r_p` orthogonal idempotents summing to 1,
/// `t_kl(a sigma_ij b) = prod_p t_kl(a sigma_ii e_p sigma'_ii r_i sigma_ij b)
/// prod_{p != i} t_kl(a e_p sigma_ij b)`, each factor from [`extract_transvection_8`].
#[allow(clippy::too_many_arguments)]
pub fn extract_entry(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    (k, l): (usize, usize),
    a: Elem,
    b: Elem,
) -> Result<ConjugateProduct> {
    let r = gl.ring();
    let n = gl.degree();
    if n < 3 {
        return Err(Error::Unsupported("extraction needs n >= 3".into()));
    }
    gl.check_pair(i, j)?;
    gl.check_pair(k, l)?;
    r.check(a)?;
    r.check(b)?;
    let s = |p: usize, q: usize| sigma.entry(p, q);
    let si = |p: usize, q: usize| sigma.inv_entry(p, q);
    let family: Vec<Elem> = (0..n).map(|p| r.mul(s(i, p), si(p, i))).collect();
    let dec = orthogonal_decomposition(r, &family)?;
    let (es, rs) = (&dec.idempotents, &dec.witnesses);
    let tail = r.product_of([si(i, i), rs[i], s(i, j)]);

    // x with x_i = 1 and x_p = -sigma'_pi r_p sigma_ii: e_p kills its row sum.
    let off_pivot = |p: usize| {
        let mut xs = vec![r.zero(); n];
        xs[i] = r.one();
        xs[p] = r.neg(r.product_of([si(p, i), rs[p], s(i, i)]));
        xs
    };
    let mut product = ConjugateProduct {
        sigma: sigma.clone(),
        factors: Vec::new(),
    };
    let a_head = r.mul(a, s(i, i));
    for p in 0..n {
        let piece = if p != i {
            extract_transvection_8(gl, sigma, i, i, &off_pivot(p), es[p], (k, l), a_head, r.mul(tail, b))?
        } else {
            let mut xs = vec![r.zero(); n];
            xs[j] = r.one();
            xs[i] = r.neg(tail);
            extract_transvection_8(gl, sigma, i, j, &xs, es[i], (k, l), a_head, r.neg(b))?
        };
        product.append(piece);
    }
    for p in (0..n).filter(|&p| p != i) {
        let piece = extract_transvection_8(gl, sigma, i, i, &off_pivot(p), es[p], (k, l), a, r.mul(s(i, j), b))?;
        product.append(piece);
    }
    let value = r.product_of([a, s(i, j), b]);
    product.check(gl, &gl.transvection(k, l, value)?, "entry extraction")?;
    Ok(product)
}

/// `t_kl(a (c sigma_ii - sigma_jj c) b)` as `48n - 24` conjugates of `sigma^{+-1}`.
///
/// The `(j, i)` entry of `sigma^{t_ji(-c)}` is
/// `c sigma_ii - sigma_jj c + sigma_ji - c sigma_ij c`; the two extra
/// terms are removed with entry extractions on `sigma` itself.
#[allow(clippy::too_many_arguments)]
pub fn extract_diagonal(
    gl: &Gl,
    sigma: &InvertibleMatrix,
    i: usize,
    j: usize,
    (k, l): (usize, usize),
    a: Elem,
    b: Elem,
    c: Elem,
) -> Result<ConjugateProduct> {
    let r = gl.ring();
    if gl.degree() < 3 {
        return Err(Error::Unsupported("extraction needs n >= 3".into()));
    }
    gl.check_pair(i, j)?;
    gl.check_pair(k, l)?;
    r.check(c)?;
    let h = GroupWord::single(Letter::new(j, i, r.neg(c)));
    let twisted = gl.conj_inv(sigma, &gl.eval_word(&h)?);
    let mut product = extract_entry(gl, &twisted, j, i, (k, l), a, b)?.rebase(sigma.clone(), &h);
    product.append(extract_entry(gl, sigma, i, j, (k, l), r.mul(a, c), r.mul(c, b))?);
    product.append(extract_entry(gl, sigma, j, i, (k, l), r.neg(a), b)?);
    let diff = r.sub(r.mul(c, sigma.entry(i, i)), r.mul(sigma.entry(j, j), c));
    let value = r.product_of([a, diff, b]);
    product.check(gl, &gl.transvection(k, l, value)?, "diagonal extraction")?;
    Ok(product)
}
