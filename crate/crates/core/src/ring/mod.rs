//! Finite rings with exact arithmetic.
//!
//! Every ring element is an index into the ring's canonical element order.
//! For `Z/m` the index is the residue itself. Structural rings (products,
//! full and upper-triangular matrix rings) encode their components in mixed
//! radix with the first component most significant, so the canonical order is
//! lexicographic in the components. Table rings use the table's own order.

mod axioms;
mod ideal;
mod idempotent;
mod quotient;
mod spec;

pub use axioms::{verify_ring_axioms, Axiom, AxiomReport, AxiomViolation};
pub use ideal::{all_ideals, Ideal};
pub use idempotent::{
    nicholson_idempotent, orthogonal_decomposition, IdempotentDecomposition, NicholsonWitness,
};
pub use quotient::Quotient;
pub use spec::{parse_ring_spec, TableFile};

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};

/// Default cap on the number of elements an exhaustive operation may touch.
pub const DEFAULT_ELEMENT_CAP: usize = 4096;

/// Structural rings up to this order get precomputed operation tables.
const TABLE_THRESHOLD: u32 = 512;

/// Hard limit on the order of any constructible ring.
const MAX_ORDER: u64 = 1 << 24;

/// A ring element: its index in the canonical element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An explicit table ring: addition and multiplication over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    order: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: u32,
    one: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Modular(u32),
    Product(Vec<Ring>),
    Matrix { size: usize, base: Ring },
    UpperTriangular { size: usize, base: Ring },
    Table(TableData),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

#[derive(Debug)]
struct RingInner {
    kind: RingKind,
    order: u32,
    zero: Elem,
    one: Elem,
    tables: Option<Tables>,
    idempotents: OnceLock<Vec<Elem>>,
    units: OnceLock<Vec<Option<Elem>>>,
}

/// A finite associative ring with `1 != 0`. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            RingKind::Modular(m) => write!(f, "Z/{m}"),
            RingKind::Product(parts) => {
                write!(f, "Prod(")?;
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RingKind::Matrix { size, base } => write!(f, "Mat({size},{base})"),
            RingKind::UpperTriangular { size, base } => write!(f, "UT({size},{base})"),
            RingKind::Table(t) => write!(f, "Table[order={}]", t.order),
        }
    }
}

fn decode(mut idx: u32, radix: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % radix;
        idx /= radix;
    }
    out
}

fn decode_mixed(mut idx: u32, radices: &[u32]) -> Vec<u32> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = idx % r;
        idx /= r;
    }
    out
}

fn encode_mixed(digits: impl IntoIterator<Item = u32>, radices: impl IntoIterator<Item = u32>) -> u32 {
    digits
        .into_iter()
        .zip(radices)
        .fold(0u32, |acc, (d, r)| acc * r + d)
}

fn checked_pow(base: u32, exp: usize) -> Result<u32> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc *= base as u64;
        if acc > MAX_ORDER {
            return Err(Error::Capacity {
                what: "ring order",
                limit: MAX_ORDER as usize,
                reached: acc as usize,
            });
        }
    }
    Ok(acc as u32)
}

fn ut_positions(size: usize) -> Vec<(usize, usize)> {
    (0..size)
        .flat_map(|i| (i..size).map(move |j| (i, j)))
        .collect()
}

impl Ring {
    fn build(kind: RingKind) -> Result<Ring> {
        let (order, zero, one) = match &kind {
            RingKind::Modular(m) => {
                if *m < 2 {
                    return Err(argument(format!("Z/{m} is not a ring with 1 != 0")));
                }
                (*m, 0, 1 % *m)
            }
            RingKind::Product(parts) => {
                if parts.is_empty() {
                    return Err(argument("product of zero rings"));
                }
                let mut order: u64 = 1;
                for p in parts {
                    order *= p.order() as u64;
                    if order > MAX_ORDER {
                        return Err(Error::Capacity {
                            what: "ring order",
                            limit: MAX_ORDER as usize,
                            reached: order as usize,
                        });
                    }
                }
                let radices: Vec<u32> = parts.iter().map(Ring::order).collect();
                let zero = encode_mixed(parts.iter().map(|p| p.zero().0), radices.clone());
                let one = encode_mixed(parts.iter().map(|p| p.one().0), radices);
                (order as u32, zero, one)
            }
            RingKind::Matrix { size, base } => {
                if *size == 0 {
                    return Err(argument("matrix ring of size 0"));
                }
                let order = checked_pow(base.order(), size * size)?;
                let r = base.order();
                let zero = encode_mixed(std::iter::repeat_n(base.zero().0, size * size), std::iter::repeat(r));
                let one = encode_mixed(
                    (0..size * size).map(|p| {
                        if p / size == p % size {
                            base.one().0
                        } else {
                            base.zero().0
                        }
                    }),
                    std::iter::repeat(r),
                );
                (order, zero, one)
            }
            RingKind::UpperTriangular { size, base } => {
                if *size == 0 {
                    return Err(argument("upper-triangular ring of size 0"));
                }
                let pos = ut_positions(*size);
                let order = checked_pow(base.order(), pos.len())?;
                let r = base.order();
                let zero = encode_mixed(pos.iter().map(|_| base.zero().0), std::iter::repeat(r));
                let one = encode_mixed(
                    pos.iter()
                        .map(|&(i, j)| if i == j { base.one().0 } else { base.zero().0 }),
                    std::iter::repeat(r),
                );
                (order, zero, one)
            }
            RingKind::Table(t) => (t.order, t.zero, t.one),
        };
        if order < 2 || zero == one {
            return Err(argument("a ring needs at least two elements and 1 != 0"));
        }
        let mut inner = RingInner {
            kind,
            order,
            zero: Elem(zero),
            one: Elem(one),
            tables: None,
            idempotents: OnceLock::new(),
            units: OnceLock::new(),
        };
        if !matches!(inner.kind, RingKind::Table(_)) && order <= TABLE_THRESHOLD {
            let n = order as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..order {
                for b in 0..order {
                    add[a as usize * n + b as usize] = structural_add(&inner.kind, a, b);
                    mul[a as usize * n + b as usize] = structural_mul(&inner.kind, a, b);
                }
            }
            let neg = (0..order).map(|a| structural_neg(&inner.kind, a)).collect();
            inner.tables = Some(Tables { add, mul, neg });
        }
        Ok(Ring(Arc::new(inner)))
    }

    pub fn modular(m: u32) -> Result<Ring> {
        Ring::build(RingKind::Modular(m))
    }

    pub fn product(parts: Vec<Ring>) -> Result<Ring> {
        Ring::build(RingKind::Product(parts))
    }

    pub fn matrix(size: usize, base: Ring) -> Result<Ring> {
        Ring::build(RingKind::Matrix { size, base })
    }

    pub fn upper_triangular(size: usize, base: Ring) -> Result<Ring> {
        Ring::build(RingKind::UpperTriangular { size, base })
    }

    /// Builds a ring from raw tables. Only the shape is validated here; use
    /// [`verify_ring_axioms`] to check the ring laws.
    pub fn from_tables(order: u32, add: Vec<u32>, mul: Vec<u32>, zero: u32, one: u32) -> Result<Ring> {
        let n = order as usize;
        if add.len() != n * n || mul.len() != n * n {
            return Err(argument(format!("tables must have {order}x{order} entries")));
        }
        if add.iter().chain(&mul).any(|&v| v >= order) || zero >= order || one >= order {
            return Err(argument("table entry out of range"));
        }
        Ring::build(RingKind::Table(TableData {
            order,
            add,
            mul,
            zero,
            one,
        }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn is_table(&self) -> bool {
        matches!(self.0.kind, RingKind::Table(_))
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.order
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(argument(format!("element {x} is not in {self} (order {})", self.order())))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.order).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let n = self.0.order as usize;
        match (&self.0.tables, &self.0.kind) {
            (Some(t), _) => Elem(t.add[a.index() * n + b.index()]),
            (None, RingKind::Table(t)) => Elem(t.add[a.index() * n + b.index()]),
            (None, kind) => Elem(structural_add(kind, a.0, b.0)),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.0.order as usize;
        match (&self.0.tables, &self.0.kind) {
            (Some(t), _) => Elem(t.mul[a.index() * n + b.index()]),
            (None, RingKind::Table(t)) => Elem(t.mul[a.index() * n + b.index()]),
            (None, kind) => Elem(structural_mul(kind, a.0, b.0)),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match (&self.0.tables, &self.0.kind) {
            (Some(t), _) => Elem(t.neg[a.index()]),
            (None, RingKind::Table(t)) => {
                let n = t.order as usize;
                // Tables of unverified rings may lack inverses; fall back to zero.
                Elem(
                    (0..t.order)
                        .find(|&b| t.add[a.index() * n + b as usize] == t.zero)
                        .unwrap_or(t.zero),
                )
            }
            (None, kind) => Elem(structural_neg(kind, a.0)),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Left-to-right product of the given elements.
    pub fn product_of(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    /// All idempotents in canonical order.
    pub fn idempotents(&self) -> &[Elem] {
        self.0
            .idempotents
            .get_or_init(|| self.elements().filter(|&e| self.is_idempotent(e)).collect())
    }

    fn unit_table(&self) -> &[Option<Elem>] {
        self.0.units.get_or_init(|| {
            self.elements()
                .map(|a| {
                    self.elements()
                        .find(|&b| self.mul(a, b) == self.one() && self.mul(b, a) == self.one())
                })
                .collect()
        })
    }

    /// Two-sided inverse, if `a` is a unit.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.unit_table()[a.index()]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Units in canonical order.
    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The image of an integer under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let one = if k < 0 { self.neg(self.one()) } else { self.one() };
        (0..k.unsigned_abs()).fold(self.zero(), |acc, _| self.add(acc, one))
    }
}

fn component_rings(kind: &RingKind) -> Option<Vec<&Ring>> {
    match kind {
        RingKind::Product(parts) => Some(parts.iter().collect()),
        _ => None,
    }
}

fn structural_add(kind: &RingKind, a: u32, b: u32) -> u32 {
    match kind {
        RingKind::Modular(m) => ((a as u64 + b as u64) % *m as u64) as u32,
        RingKind::Product(_) => {
            let parts = component_rings(kind).unwrap();
            let radices: Vec<u32> = parts.iter().map(|p| p.order()).collect();
            let da = decode_mixed(a, &radices);
            let db = decode_mixed(b, &radices);
            encode_mixed(
                parts
                    .iter()
                    .zip(da.iter().zip(&db))
                    .map(|(p, (&x, &y))| p.add(Elem(x), Elem(y)).0),
                radices,
            )
        }
        RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } => {
            let len = match kind {
                RingKind::Matrix { .. } => size * size,
                _ => size * (size + 1) / 2,
            };
            let r = base.order();
            let da = decode(a, r, len);
            let db = decode(b, r, len);
            encode_mixed(
                da.iter().zip(&db).map(|(&x, &y)| base.add(Elem(x), Elem(y)).0),
                std::iter::repeat(r),
            )
        }
        RingKind::Table(t) => t.add[a as usize * t.order as usize + b as usize],
    }
}

fn structural_neg(kind: &RingKind, a: u32) -> u32 {
    match kind {
        RingKind::Modular(m) => (*m - a % *m) % *m,
        RingKind::Product(parts) => {
            let radices: Vec<u32> = parts.iter().map(Ring::order).collect();
            let da = decode_mixed(a, &radices);
            encode_mixed(
                parts.iter().zip(&da).map(|(p, &x)| p.neg(Elem(x)).0),
                radices,
            )
        }
        RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } => {
            let len = match kind {
                RingKind::Matrix { .. } => size * size,
                _ => size * (size + 1) / 2,
            };
            let r = base.order();
            encode_mixed(
                decode(a, r, len).into_iter().map(|x| base.neg(Elem(x)).0),
                std::iter::repeat(r),
            )
        }
        RingKind::Table(t) => {
            let n = t.order as usize;
            (0..t.order)
                .find(|&b| t.add[a as usize * n + b as usize] == t.zero)
                .unwrap_or(t.zero)
        }
    }
}

fn structural_mul(kind: &RingKind, a: u32, b: u32) -> u32 {
    match kind {
        RingKind::Modular(m) => ((a as u64 * b as u64) % *m as u64) as u32,
        RingKind::Product(parts) => {
            let radices: Vec<u32> = parts.iter().map(Ring::order).collect();
            let da = decode_mixed(a, &radices);
            let db = decode_mixed(b, &radices);
            encode_mixed(
                parts
                    .iter()
                    .zip(da.iter().zip(&db))
                    .map(|(p, (&x, &y))| p.mul(Elem(x), Elem(y)).0),
                radices,
            )
        }
        RingKind::Matrix { size, base } => {
            let k = *size;
            let r = base.order();
            let da = decode(a, r, k * k);
            let db = decode(b, r, k * k);
            let mut out = Vec::with_capacity(k * k);
            for i in 0..k {
                for j in 0..k {
                    let s = base.sum((0..k).map(|m| base.mul(Elem(da[i * k + m]), Elem(db[m * k + j]))));
                    out.push(s.0);
                }
            }
            encode_mixed(out, std::iter::repeat(r))
        }
        RingKind::UpperTriangular { size, base } => {
            let k = *size;
            let pos = ut_positions(k);
            let r = base.order();
            let da = decode(a, r, pos.len());
            let db = decode(b, r, pos.len());
            let slot = |i: usize, j: usize| pos.iter().position(|&p| p == (i, j)).unwrap();
            let out = pos.iter().map(|&(i, j)| {
                base.sum((i..=j).map(|m| base.mul(Elem(da[slot(i, m)]), Elem(db[slot(m, j)]))))
                    .0
            });
            encode_mixed(out.collect::<Vec<_>>(), std::iter::repeat(r))
        }
        RingKind::Table(t) => t.mul[a as usize * t.order as usize + b as usize],
    }
}
