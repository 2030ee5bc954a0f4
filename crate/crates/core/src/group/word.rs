use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{Gl, InvertibleMatrix, Matrix};
use crate::error::Result;
use crate::ring::{Elem, Ideal, Ring};

/// The exponent of a letter or factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("exponent must be 1 or -1, got {v}")),
        }
    }
}

/// `t_{ij}(x)^{exp}`, with 0-based indices in memory and 1-based in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LetterJson", into = "LetterJson")]
pub struct Letter {
    pub i: usize,
    pub j: usize,
    pub x: Elem,
    pub exp: Sign,
}

#[derive(Serialize, Deserialize)]
struct LetterJson {
    i: usize,
    j: usize,
    x: Elem,
    exp: Sign,
}

impl From<Letter> for LetterJson {
    fn from(l: Letter) -> Self {
        LetterJson {
            i: l.i + 1,
            j: l.j + 1,
            x: l.x,
            exp: l.exp,
        }
    }
}

impl TryFrom<LetterJson> for Letter {
    type Error = String;

    fn try_from(l: LetterJson) -> std::result::Result<Letter, String> {
        if l.i == 0 || l.j == 0 {
            return Err("letter indices are 1-based".into());
        }
        if l.i == l.j {
            return Err(format!("letter indices must differ, got ({0},{0})", l.i));
        }
        Ok(Letter {
            i: l.i - 1,
            j: l.j - 1,
            x: l.x,
            exp: l.exp,
        })
    }
}

impl Letter {
    pub fn new(i: usize, j: usize, x: Elem) -> Letter {
        Letter {
            i,
            j,
            x,
            exp: Sign::Plus,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            exp: self.exp.flip(),
            ..self
        }
    }

    /// The `y` with `t_{ij}(x)^{exp} = t_{ij}(y)`.
    pub fn value(&self, ring: &Ring) -> Elem {
        match self.exp {
            Sign::Plus => self.x,
            Sign::Minus => ring.neg(self.x),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{}({})", self.i + 1, self.j + 1, self.x)?;
        if self.exp == Sign::Minus {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A product of transvection letters, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> GroupWord {
        GroupWord { letters }
    }

    pub fn empty() -> GroupWord {
        GroupWord::default()
    }

    pub fn single(letter: Letter) -> GroupWord {
        GroupWord {
            letters: vec![letter],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn extend(&mut self, other: &GroupWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `[a, b] = a b a^{-1} b^{-1}` as a word.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Merges adjacent letters at the same position (`t_{ij}(x) t_{ij}(y) =
    /// t_{ij}(x + y)`) and drops letters equal to `e`. The result has only
    /// positive exponents.
    pub fn merged(&self, ring: &Ring) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let y = l.value(ring);
            if y == ring.zero() {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.i == l.i && top.j == l.j => {
                    top.x = ring.add(top.x, y);
                    if top.x == ring.zero() {
                        out.pop();
                    }
                }
                _ => out.push(Letter::new(l.i, l.j, y)),
            }
        }
        GroupWord { letters: out }
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        GroupWord {
            letters: iter.into_iter().collect(),
        }
    }
}

/// `p_{ij} = t_{ij}(1) t_{ji}(-1) t_{ij}(1)`.
pub fn perm_word(ring: &Ring, i: usize, j: usize) -> GroupWord {
    GroupWord::new(vec![
        Letter::new(i, j, ring.one()),
        Letter::new(j, i, ring.neg(ring.one())),
        Letter::new(i, j, ring.one()),
    ])
}

/// `(base^{C})^{exp}` with `C = eval(conj)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelativeFactor {
    pub conj: GroupWord,
    pub base: Letter,
    pub exp: Sign,
}

impl RelativeFactor {
    pub fn plain(base: Letter) -> RelativeFactor {
        RelativeFactor {
            conj: GroupWord::empty(),
            base,
            exp: Sign::Plus,
        }
    }

    pub fn conjugated(base: Letter, conj: GroupWord) -> RelativeFactor {
        RelativeFactor {
            conj,
            base,
            exp: Sign::Plus,
        }
    }

    /// The letter `base^{exp}`.
    pub fn signed_base(&self) -> Letter {
        Letter {
            exp: self.base.exp.times(self.exp),
            ..self.base
        }
    }
}

/// A product of conjugates of `I`-elementary transvections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelativeWord {
    factors: Vec<RelativeFactor>,
}

impl RelativeWord {
    pub fn new(factors: Vec<RelativeFactor>) -> RelativeWord {
        RelativeWord { factors }
    }

    pub fn empty() -> RelativeWord {
        RelativeWord::default()
    }

    pub fn factors(&self) -> &[RelativeFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, f: RelativeFactor) {
        self.factors.push(f);
    }

    pub fn extend(&mut self, other: RelativeWord) {
        self.factors.extend(other.factors);
    }

    /// Appends `extra` to every conjugator, so the whole product is
    /// conjugated by `eval(extra)`.
    pub fn conjugated_by(mut self, extra: &GroupWord) -> RelativeWord {
        for f in &mut self.factors {
            f.conj.extend(extra);
        }
        self
    }

    /// Each factor written out as `C^{-1} B C`, with no simplification.
    pub fn expand_literal(&self) -> GroupWord {
        let mut w = GroupWord::empty();
        for f in &self.factors {
            w.extend(&f.conj.inverse());
            w.push(f.signed_base());
            w.extend(&f.conj);
        }
        w
    }

    /// A word in elementary transvections with the same value. Runs of
    /// factors sharing a conjugator become `C^{-1} B_1 ... B_k C`, then
    /// adjacent letters are merged as in [`GroupWord::merged`].
    pub fn expand(&self, ring: &Ring) -> GroupWord {
        let mut w = GroupWord::empty();
        let mut k = 0;
        while k < self.factors.len() {
            let conj = &self.factors[k].conj;
            let mut end = k;
            while end < self.factors.len() && self.factors[end].conj == *conj {
                end += 1;
            }
            w.extend(&conj.inverse());
            for f in &self.factors[k..end] {
                w.push(f.signed_base());
            }
            w.extend(conj);
            k = end;
        }
        w.merged(ring)
    }

    /// Number of elementary letters in [`RelativeWord::expand`].
    pub fn letter_count(&self, ring: &Ring) -> usize {
        self.expand(ring).len()
    }

    /// The first factor whose base entry lies outside `ideal`.
    pub fn first_base_outside(&self, ideal: &Ideal) -> Option<usize> {
        self.factors.iter().position(|f| !ideal.contains(f.base.x))
    }

    pub fn bases_in(&self, ideal: &Ideal) -> bool {
        self.first_base_outside(ideal).is_none()
    }
}

impl Gl {
    pub fn check_letter(&self, l: &Letter) -> Result<()> {
        self.check_pair(l.i, l.j)?;
        self.ring().check(l.x).map(|_| ())
    }

    pub fn check_word(&self, w: &GroupWord) -> Result<()> {
        w.letters().iter().try_for_each(|l| self.check_letter(l))
    }

    pub fn letter_matrix(&self, l: &Letter) -> Result<InvertibleMatrix> {
        self.check_letter(l)?;
        self.transvection(l.i, l.j, l.value(self.ring()))
    }

    /// Left multiplication by `t_{ij}(x)` in place: row `i` gains `x` times row `j`.
    pub fn left_transvect(&self, m: &mut Matrix, i: usize, j: usize, x: Elem) {
        let r = self.ring();
        for col in 0..self.degree() {
            let v = r.add(m.get(i, col), r.mul(x, m.get(j, col)));
            m.set(i, col, v);
        }
    }

    /// The left-to-right product of the letters, with its inverse.
    pub fn eval_word(&self, w: &GroupWord) -> Result<InvertibleMatrix> {
        self.check_word(w)?;
        let mut m = self.identity();
        let mut inv = self.identity();
        for l in w.letters() {
            let y = l.value(self.ring());
            self.right_transvect(&mut m, l.i, l.j, y);
            self.left_transvect(&mut inv, l.i, l.j, self.ring().neg(y));
        }
        Ok(InvertibleMatrix::from_parts(m, inv))
    }

    /// Evaluates every factor as a conjugate matrix, independently of
    /// [`RelativeWord::expand`].
    pub fn eval_relative(&self, w: &RelativeWord) -> Result<InvertibleMatrix> {
        let mut acc = self.identity_invertible();
        for f in w.factors() {
            let c = self.eval_word(&f.conj)?;
            let b = self.letter_matrix(&f.signed_base())?;
            acc = self.mul_inv(&acc, &self.conj_inv(&b, &c));
        }
        Ok(acc)
    }
}
