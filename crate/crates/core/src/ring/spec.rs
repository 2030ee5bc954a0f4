use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{axioms::verify_ring_axioms, Ring, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};

/// On-disk form of a table ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub order: u32,
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
    pub zero: u32,
    pub one: u32,
}

impl TableFile {
    pub fn into_ring(self) -> Result<Ring> {
        let n = self.order as usize;
        let shape_ok = |t: &Vec<Vec<u32>>| t.len() == n && t.iter().all(|row| row.len() == n);
        if !shape_ok(&self.add) || !shape_ok(&self.mul) {
            return Err(Error::Parse(format!("tables must be {n}x{n}")));
        }
        Ring::from_tables(
            self.order,
            self.add.into_iter().flatten().collect(),
            self.mul.into_iter().flatten().collect(),
            self.zero,
            self.one,
        )
    }

    pub fn from_ring(ring: &Ring) -> TableFile {
        let rows = |f: &dyn Fn(super::Elem, super::Elem) -> super::Elem| {
            ring.elements()
                .map(|a| ring.elements().map(|b| f(a, b).0).collect())
                .collect()
        };
        TableFile {
            order: ring.order(),
            add: rows(&|a, b| ring.add(a, b)),
            mul: rows(&|a, b| ring.mul(a, b)),
            zero: ring.zero().0,
            one: ring.one().0,
        }
    }

    /// Reads a table file and checks that it really is a ring.
    pub fn load(path: &Path) -> Result<Ring> {
        let text = std::fs::read_to_string(path)?;
        let table: TableFile = serde_json::from_str(&text)?;
        let ring = table.into_ring()?;
        let report = verify_ring_axioms(&ring, DEFAULT_ELEMENT_CAP)?;
        match report.violation {
            Some(v) => Err(Error::Axiom(v.to_string())),
            None => Ok(ring),
        }
    }
}

/// Parses `Z/<m>`, `Prod(<spec>,...)`, `Mat(<k>,<spec>)`, `UT(<k>,<spec>)` and
/// `Table(<path>)`. Relative table paths resolve against the working directory.
pub fn parse_ring_spec(spec: &str) -> Result<Ring> {
    let mut p = Parser {
        src: spec,
        pos: 0,
    };
    let ring = p.ring()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(ring)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("ring spec `{}` at offset {}: {msg}", self.src, self.pos))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        text.parse().map_err(|_| self.error("number out of range"))
    }

    fn ring(&mut self) -> Result<Ring> {
        if self.eat("Z/") {
            let m = self.number()?;
            Ring::modular(m)
        } else if self.eat("Prod(") {
            let mut parts = vec![self.ring()?];
            while self.eat(",") {
                parts.push(self.ring()?);
            }
            self.expect(")")?;
            Ring::product(parts)
        } else if self.eat("Mat(") {
            let k = self.number()?;
            self.expect(",")?;
            let base = self.ring()?;
            self.expect(")")?;
            Ring::matrix(k as usize, base)
        } else if self.eat("UT(") {
            let k = self.number()?;
            self.expect(",")?;
            let base = self.ring()?;
            self.expect(")")?;
            Ring::upper_triangular(k as usize, base)
        } else if self.eat("Table(") {
            // Paths may contain commas but not an unbalanced `)`.
            let mut depth = 0usize;
            let len = self
                .rest()
                .char_indices()
                .find(|&(_, c)| match c {
                    '(' => {
                        depth += 1;
                        false
                    }
                    ')' if depth == 0 => true,
                    ')' => {
                        depth -= 1;
                        false
                    }
                    _ => false,
                })
                .map(|(i, _)| i)
                .ok_or_else(|| self.error("unterminated Table("))?;
            let path = self.rest()[..len].trim().to_owned();
            self.pos += len + 1;
            TableFile::load(Path::new(&path))
        } else {
            Err(self.error("expected Z/, Prod(, Mat(, UT( or Table("))
        }
    }
}
