use serde::Serialize;

use super::matrix::Gl;
use crate::error::{Error, Result};
use crate::ring::Elem;

/// Upper bound on `|R|^2 n^4` for an exhaustive relation check.
pub const RELATION_CHECK_CAP: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    R1,
    R2,
    R3,
}

/// The first tuple where a relation fails; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: Relation,
    pub indices: Vec<usize>,
    pub x: Elem,
    pub y: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub ring: String,
    pub n: usize,
    /// Instances checked per relation, in the order R1, R2, R3.
    pub checked: [u64; 3],
    pub failure: Option<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively checks
/// `t_ij(x) t_ij(y) = t_ij(x+y)`,
/// `[t_ij(x), t_hk(y)] = e` for `i != k`, `j != h`, and
/// `[t_ij(x), t_jk(y)] = t_ik(xy)` for `i != k`.
pub fn check_relations(gl: &Gl) -> Result<RelationReport> {
    let n = gl.degree();
    let r = gl.ring();
    let order = r.order() as u64;
    let work = order * order * (n as u64).pow(4);
    if work > RELATION_CHECK_CAP {
        return Err(Error::Capacity {
            what: "relation check",
            limit: RELATION_CHECK_CAP as usize,
            reached: work.min(usize::MAX as u64) as usize,
        });
    }
    let mut report = RelationReport {
        ring: r.to_string(),
        n,
        checked: [0; 3],
        failure: None,
    };
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let xs: Vec<Elem> = r.elements().collect();
    let t = |i, j, x| gl.transvection(i, j, x).expect("valid pair");
    let fail = |relation, indices: &[usize], x, y| {
        Some(RelationFailure {
            relation,
            indices: indices.iter().map(|k| k + 1).collect(),
            x,
            y,
        })
    };
    for &(i, j) in &pairs {
        for &x in &xs {
            for &y in &xs {
                report.checked[0] += 1;
                let lhs = gl.mul(t(i, j, x).matrix(), t(i, j, y).matrix());
                if lhs != *t(i, j, r.add(x, y)).matrix() {
                    report.failure = fail(Relation::R1, &[i, j], x, y);
                    return Ok(report);
                }
            }
        }
    }
    for &(i, j) in &pairs {
        for &(h, k) in &pairs {
            if i == k || j == h {
                continue;
            }
            for &x in &xs {
                for &y in &xs {
                    report.checked[1] += 1;
                    let c = gl.commutator(&t(i, j, x), &t(h, k, y));
                    if !gl.is_identity(c.matrix()) {
                        report.failure = fail(Relation::R2, &[i, j, h, k], x, y);
                        return Ok(report);
                    }
                }
            }
        }
    }
    for &(i, j) in &pairs {
        for k in (0..n).filter(|&k| k != i && k != j) {
            for &x in &xs {
                for &y in &xs {
                    report.checked[2] += 1;
                    let c = gl.commutator(&t(i, j, x), &t(j, k, y));
                    if c != t(i, k, r.mul(x, y)) {
                        report.failure = fail(Relation::R3, &[i, j, k], x, y);
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}
