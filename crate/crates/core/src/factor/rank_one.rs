use crate::error::{argument, invariant, Result};
use crate::group::{Gl, GroupWord, Letter, RelativeFactor, RelativeWord};
use crate::ring::{Elem, Ideal};

/// `e + u v` for a column `u` and row `v` with `v u = 0`, `v_j = 0` and the
/// other entries of `v` in `I`, as
///
/// `(prod_{i != j} t_ji(v_i))^T  prod_{i != j} t_ji((u_j - 1) v_i)`,
/// `T = prod_{i != j} t_ij(-u_i)`.
///
/// Trivial letters are left out. Indices are 0-based.
pub fn factor_rank_one(gl: &Gl, u: &[Elem], v: &[Elem], j: usize, ideal: &Ideal) -> Result<RelativeWord> {
    let word = rank_one_word(gl, u, v, j, ideal, None)?;
    let target = gl.add(&gl.identity(), &gl.outer(u, v));
    if gl.eval_relative(&word)?.matrix() != &target {
        return Err(invariant("rank-one word does not evaluate to e + uv"));
    }
    Ok(word)
}

/// As [`factor_rank_one`] without the final evaluation. The letters of `T`
/// run in increasing row order, except that row `last` comes at the end.
pub(crate) fn rank_one_word(
    gl: &Gl,
    u: &[Elem],
    v: &[Elem],
    j: usize,
    ideal: &Ideal,
    last: Option<usize>,
) -> Result<RelativeWord> {
    let r = gl.ring();
    let n = gl.degree();
    if u.len() != n || v.len() != n {
        return Err(argument(format!("u and v must have length {n}")));
    }
    gl.check_index(j)?;
    for &x in u.iter().chain(v) {
        r.check(x)?;
    }
    if v[j] != r.zero() {
        return Err(argument(format!("v_{} must be 0", j + 1)));
    }
    if let Some(k) = (0..n).find(|&k| k != j && !ideal.contains(v[k])) {
        return Err(argument(format!("v_{} = {} is not in the ideal", k + 1, v[k])));
    }
    if gl.dot(v, u) != r.zero() {
        return Err(argument("v u must be 0"));
    }
    let others: Vec<usize> = (0..n).filter(|&k| k != j).collect();
    let mut rows: Vec<usize> = others.iter().copied().filter(|&k| Some(k) != last).collect();
    if let Some(k) = last.filter(|&k| k != j && k < n) {
        rows.push(k);
    }
    let conj: GroupWord = rows
        .iter()
        .filter(|&&k| u[k] != r.zero())
        .map(|&k| Letter::new(k, j, r.neg(u[k])))
        .collect();
    let mut word = RelativeWord::empty();
    for &k in &others {
        if v[k] != r.zero() {
            word.push(RelativeFactor::conjugated(Letter::new(j, k, v[k]), conj.clone()));
        }
    }
    let shift = r.sub(u[j], r.one());
    for &k in &others {
        let y = r.mul(shift, v[k]);
        if y != r.zero() {
            word.push(RelativeFactor::plain(Letter::new(j, k, y)));
        }
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn setup() -> (Gl, Ideal) {
        let r = Ring::modular(4).unwrap();
        let two = Ideal::generated(&r, &[Elem(2)]).unwrap();
        (Gl::new(r, 3).unwrap(), two)
    }

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn zero_column_gives_identity() {
        let (g, two) = setup();
        let w = factor_rank_one(&g, &elems(&[0, 0, 0]), &elems(&[2, 0, 2]), 1, &two).unwrap();
        assert!(g.is_identity(g.eval_relative(&w).unwrap().matrix()));
    }

    #[test]
    fn unit_pivot_needs_no_conjugator() {
        let (g, two) = setup();
        let w = factor_rank_one(&g, &elems(&[0, 1, 0]), &elems(&[2, 0, 2]), 1, &two).unwrap();
        let expected = RelativeWord::new(vec![
            RelativeFactor::plain(Letter::new(1, 0, Elem(2))),
            RelativeFactor::plain(Letter::new(1, 2, Elem(2))),
        ]);
        assert_eq!(w, expected);
        let mut target = g.identity();
        target.set(1, 0, Elem(2));
        target.set(1, 2, Elem(2));
        assert_eq!(g.eval_relative(&w).unwrap().matrix(), &target);
    }

    #[test]
    fn conjugated_case() {
        let (g, two) = setup();
        let (u, v) = (elems(&[2, 1, 0]), elems(&[2, 0, 0]));
        let w = factor_rank_one(&g, &u, &v, 1, &two).unwrap();
        let target = g.add(&g.identity(), &g.outer(&u, &v));
        assert_eq!(g.eval_relative(&w).unwrap().matrix(), &target);
        assert!(w.len() <= 4);
    }

    #[test]
    fn preconditions() {
        let (g, two) = setup();
        assert!(factor_rank_one(&g, &elems(&[1, 0, 0]), &elems(&[2, 2, 0]), 1, &two).is_err());
        assert!(factor_rank_one(&g, &elems(&[1, 0, 0]), &elems(&[1, 0, 0]), 1, &two).is_err());
        assert!(factor_rank_one(&g, &elems(&[1, 0, 0]), &elems(&[2, 0, 0]), 1, &two).is_err());
    }
}
