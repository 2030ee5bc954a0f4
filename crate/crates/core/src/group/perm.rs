use super::word::{perm_word, GroupWord};
use crate::error::{argument, Error, Result};
use crate::ring::Ring;

/// A word `tau` in generalised permutation matrices with
/// `t_{ij}(x)^tau = t_{i'j'}(x)` for every `x`.
///
/// Conjugation by `p_{ab}` sends index `a` to `b` with sign `+` and fixes
/// indices outside `{a, b}`. Each step moves one index of the current pair
/// while the other avoids `{a, b}`, so no sign is ever picked up. When `j`
/// already sits on the target `i'`, it is first parked on the smallest free
/// index. At most three permutation letters are used.
pub fn perm_conjugator(
    ring: &Ring,
    n: usize,
    (i, j): (usize, usize),
    (ti, tj): (usize, usize),
) -> Result<GroupWord> {
    if n < 3 {
        return Err(Error::Unsupported(
            "moving a transvection needs a free index, so n >= 3".into(),
        ));
    }
    for (a, b) in [(i, j), (ti, tj)] {
        if a >= n || b >= n || a == b {
            return Err(argument(format!("invalid index pair ({}, {})", a + 1, b + 1)));
        }
    }
    let mut word = GroupWord::empty();
    let mut current = (i, j);
    if current.0 != ti {
        if current.1 == ti {
            let free = (0..n).find(|&f| f != current.0 && f != current.1).expect("n >= 3");
            word.extend(&perm_word(ring, current.1, free));
            current.1 = free;
        }
        word.extend(&perm_word(ring, current.0, ti));
        current.0 = ti;
    }
    if current.1 != tj {
        word.extend(&perm_word(ring, current.1, tj));
    }
    Ok(word)
}
