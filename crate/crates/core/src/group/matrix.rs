use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{argument, Error, Result};
use crate::ring::{Elem, Ring};

/// Cap on `|R|^n` for the column-by-column inverse search.
pub const INVERT_SEARCH_CAP: u64 = 1 << 24;

/// A square matrix of ring elements, row-major. Carries no ring: arithmetic
/// goes through a [`Gl`] context.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(argument("matrix must be square and non-empty"));
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Elem>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// A matrix together with its two-sided inverse; `inv_entry(i, j)` is the
/// `(i, j)` entry of the inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct InvertibleMatrix {
    matrix: Matrix,
    inverse: Matrix,
}

impl InvertibleMatrix {
    /// Trusts the caller that the two matrices are mutually inverse.
    pub(crate) fn from_parts(matrix: Matrix, inverse: Matrix) -> InvertibleMatrix {
        InvertibleMatrix { matrix, inverse }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// The inverse as an invertible matrix.
    pub fn inv(&self) -> InvertibleMatrix {
        InvertibleMatrix {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.matrix.get(i, j)
    }

    pub fn inv_entry(&self, i: usize, j: usize) -> Elem {
        self.inverse.get(i, j)
    }

    pub fn degree(&self) -> usize {
        self.matrix.n
    }
}

/// `GL_n(R)`: the context for exact `n x n` matrix arithmetic over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl {
    ring: Ring,
    n: usize,
}

impl Gl {
    pub fn new(ring: Ring, n: usize) -> Result<Gl> {
        if n == 0 {
            return Err(argument("degree must be at least 1"));
        }
        Ok(Gl { ring, n })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn check(&self, m: &Matrix) -> Result<()> {
        if m.n != self.n {
            return Err(argument(format!("expected a {0}x{0} matrix, got {1}x{1}", self.n, m.n)));
        }
        for &x in &m.entries {
            self.ring.check(x)?;
        }
        Ok(())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(argument(format!("index {} out of range 1..={}", i + 1, self.n)))
        }
    }

    pub fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(argument(format!("indices must differ, got ({0},{0})", i + 1)));
        }
        Ok(())
    }

    pub fn zero_matrix(&self) -> Matrix {
        Matrix {
            n: self.n,
            entries: vec![self.ring.zero(); self.n * self.n],
        }
    }

    pub fn identity(&self) -> Matrix {
        self.diag(&vec![self.ring.one(); self.n])
    }

    pub fn identity_invertible(&self) -> InvertibleMatrix {
        InvertibleMatrix {
            matrix: self.identity(),
            inverse: self.identity(),
        }
    }

    pub fn is_identity(&self, m: &Matrix) -> bool {
        *m == self.identity()
    }

    pub fn diag(&self, d: &[Elem]) -> Matrix {
        let mut m = self.zero_matrix();
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rows(&self, rows: Vec<Vec<u32>>) -> Result<Matrix> {
        let m = Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Elem).collect())
                .collect(),
        )?;
        self.check(&m)?;
        Ok(m)
    }

    /// The matrix unit `e^{ij}`.
    pub fn unit(&self, i: usize, j: usize) -> Matrix {
        let mut m = self.zero_matrix();
        m.set(i, j, self.ring.one());
        m
    }

    pub fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(&x, &y)| self.ring.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(&x, &y)| self.ring.sub(x, y))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let n = self.n;
        let r = &self.ring;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(r.sum((0..n).map(|k| r.mul(a.get(i, k), b.get(k, j)))));
            }
        }
        Matrix { n, entries: out }
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
        factors
            .into_iter()
            .fold(self.identity(), |acc, m| self.mul(&acc, m))
    }

    pub fn mul_inv(&self, a: &InvertibleMatrix, b: &InvertibleMatrix) -> InvertibleMatrix {
        InvertibleMatrix {
            matrix: self.mul(&a.matrix, &b.matrix),
            inverse: self.mul(&b.inverse, &a.inverse),
        }
    }

    /// `column * row`, the rank-one matrix `u v`.
    pub fn outer(&self, u: &[Elem], v: &[Elem]) -> Matrix {
        let mut m = self.zero_matrix();
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.ring.mul(u[i], v[j]));
            }
        }
        m
    }

    /// `row * column`.
    pub fn dot(&self, v: &[Elem], u: &[Elem]) -> Elem {
        self.ring
            .sum(v.iter().zip(u).map(|(&a, &b)| self.ring.mul(a, b)))
    }

    /// `M u` for a column `u`.
    pub fn apply_column(&self, m: &Matrix, u: &[Elem]) -> Vec<Elem> {
        (0..self.n).map(|i| self.dot(&m.row(i), u)).collect()
    }

    /// `v M` for a row `v`.
    pub fn apply_row(&self, v: &[Elem], m: &Matrix) -> Vec<Elem> {
        (0..self.n).map(|j| self.dot(v, &m.column(j))).collect()
    }

    pub fn scale_left(&self, x: Elem, m: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: m.entries.iter().map(|&y| self.ring.mul(x, y)).collect(),
        }
    }

    /// `t_{ij}(x) = e + x e^{ij}`.
    pub fn transvection(&self, i: usize, j: usize, x: Elem) -> Result<InvertibleMatrix> {
        self.check_pair(i, j)?;
        self.ring.check(x)?;
        let mut m = self.identity();
        m.set(i, j, x);
        let mut inv = self.identity();
        inv.set(i, j, self.ring.neg(x));
        Ok(InvertibleMatrix {
            matrix: m,
            inverse: inv,
        })
    }

    /// `p_{ij} = e + e^{ij} - e^{ji} - e^{ii} - e^{jj}`, whose inverse is `p_{ji}`.
    pub fn perm_matrix(&self, i: usize, j: usize) -> Result<InvertibleMatrix> {
        self.check_pair(i, j)?;
        let literal = |a: usize, b: usize| {
            let e = self.identity();
            let e = self.add(&e, &self.unit(a, b));
            let e = self.sub(&e, &self.unit(b, a));
            let e = self.sub(&e, &self.unit(a, a));
            self.sub(&e, &self.unit(b, b))
        };
        Ok(InvertibleMatrix {
            matrix: literal(i, j),
            inverse: literal(j, i),
        })
    }

    /// `diag(u, 1, ..., 1)` for a unit `u`.
    pub fn unit_diagonal(&self, u: Elem) -> Result<InvertibleMatrix> {
        let inv = self
            .ring
            .inverse(u)
            .ok_or_else(|| argument(format!("{u} is not a unit")))?;
        let mut d = vec![self.ring.one(); self.n];
        d[0] = u;
        let mut di = d.clone();
        di[0] = inv;
        Ok(InvertibleMatrix {
            matrix: self.diag(&d),
            inverse: self.diag(&di),
        })
    }

    /// Builds an invertible matrix from a claimed inverse pair, checking both products.
    pub fn pair(&self, matrix: Matrix, inverse: Matrix) -> Result<InvertibleMatrix> {
        self.check(&matrix)?;
        self.check(&inverse)?;
        if !self.is_identity(&self.mul(&matrix, &inverse)) || !self.is_identity(&self.mul(&inverse, &matrix)) {
            return Err(Error::NotInvertible);
        }
        Ok(InvertibleMatrix { matrix, inverse })
    }

    /// Solves `sigma X = e` one column at a time by exhaustive search over
    /// `R^n`, then confirms `X sigma = e`.
    ///
    /// Over a finite ring a right inverse in `M_n(R)` is two-sided, so the
    /// first solution found per column is the only one.
    pub fn invert(&self, sigma: &Matrix) -> Result<InvertibleMatrix> {
        self.check(sigma)?;
        let order = self.ring.order() as u64;
        let space = (0..self.n).try_fold(1u64, |acc, _| {
            acc.checked_mul(order).filter(|&s| s <= INVERT_SEARCH_CAP)
        });
        let space = match space {
            Some(s) => s,
            None => {
                return Err(Error::Capacity {
                    what: "inverse search space",
                    limit: INVERT_SEARCH_CAP as usize,
                    reached: usize::MAX,
                })
            }
        };
        let n = self.n;
        let mut inverse = self.zero_matrix();
        let mut v = vec![self.ring.zero(); n];
        for col in 0..n {
            let mut found = false;
            for code in 0..space {
                let mut c = code;
                for slot in v.iter_mut().rev() {
                    *slot = Elem((c % order) as u32);
                    c /= order;
                }
                let hit = (0..n).all(|i| {
                    let target = if i == col { self.ring.one() } else { self.ring.zero() };
                    self.dot(&sigma.row(i), &v) == target
                });
                if hit {
                    for (i, &x) in v.iter().enumerate() {
                        inverse.set(i, col, x);
                    }
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::NotInvertible);
            }
        }
        if !self.is_identity(&self.mul(&inverse, sigma)) {
            return Err(Error::NotInvertible);
        }
        Ok(InvertibleMatrix {
            matrix: sigma.clone(),
            inverse,
        })
    }

    /// `g^h = h^{-1} g h`.
    pub fn conj(&self, g: &Matrix, h: &InvertibleMatrix) -> Matrix {
        self.product([&h.inverse, g, &h.matrix])
    }

    pub fn conj_inv(&self, g: &InvertibleMatrix, h: &InvertibleMatrix) -> InvertibleMatrix {
        InvertibleMatrix {
            matrix: self.conj(&g.matrix, h),
            inverse: self.conj(&g.inverse, h),
        }
    }

    /// `[g, h] = g h g^{-1} h^{-1}`.
    pub fn commutator(&self, g: &InvertibleMatrix, h: &InvertibleMatrix) -> InvertibleMatrix {
        let m = self.product([&g.matrix, &h.matrix, &g.inverse, &h.inverse]);
        let inv = self.product([&h.matrix, &g.matrix, &h.inverse, &g.inverse]);
        InvertibleMatrix {
            matrix: m,
            inverse: inv,
        }
    }

    /// Right multiplication by the transvection `t_{ij}(x)` in place: column
    /// `j` gains column `i` times `x`.
    pub fn right_transvect(&self, m: &mut Matrix, i: usize, j: usize, x: Elem) {
        for row in 0..self.n {
            let v = self.ring.add(m.get(row, j), self.ring.mul(m.get(row, i), x));
            m.set(row, j, v);
        }
    }
}
