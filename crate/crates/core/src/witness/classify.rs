use serde::Serialize;

use super::extract::{extract_diagonal, extract_entry};
use super::product::ConjugateProduct;
use crate::error::{invariant, Error, Result};
use crate::group::{elementary_generators, normal_closure, Gl, InvertibleMatrix, LevelOrigin};
use crate::ring::{Elem, Ideal};

/// `t_kl(value)` as a product of conjugates of one generator; `k, l` are 0-based.
#[derive(Clone, Debug, Serialize)]
pub struct LowerWitness {
    pub generator: usize,
    pub value: Elem,
    pub origin: LevelOrigin,
    pub position: (usize, usize),
    pub product: ConjugateProduct,
}

/// How the level ideal was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LevelSource {
    /// From the generators only: a lower bound on the level of the subgroup.
    Generators,
    /// Compared with the level over every element of the enumerated
    /// `E_n(R)`-normal closure of the generators.
    Enumerated { order: usize, equal: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationCertificate {
    pub generators: Vec<InvertibleMatrix>,
    pub ideal: Ideal,
    /// Membership of each generator in `C_n(R, I)`.
    pub upper_check: Vec<bool>,
    pub lower_witnesses: Vec<LowerWitness>,
    pub level_source: LevelSource,
}

impl ClassificationCertificate {
    /// Re-evaluates every lower witness and repeats the upper check.
    pub fn verify(&self, gl: &Gl) -> Result<()> {
        let ideal = gl.level_ideal_of_set(&self.generators)?;
        if ideal != self.ideal {
            return Err(invariant("certificate ideal differs from the generators' level"));
        }
        for (g, &ok) in self.generators.iter().zip(&self.upper_check) {
            if !ok || !gl.congruence_member(g.matrix(), &self.ideal) {
                return Err(invariant("generator outside the congruence subgroup"));
            }
        }
        for w in &self.lower_witnesses {
            if w.product.sigma != self.generators[w.generator] {
                return Err(invariant("witness built on a different generator"));
            }
            let target = gl.transvection(w.position.0, w.position.1, w.value)?;
            w.product.check(gl, &target, "lower witness")?;
        }
        Ok(())
    }
}

/// Level ideal `I` of the generators, the check that each lies in
/// `C_n(R, I)`, and for every distinct generating value `y` of `I` and every
/// position `(k, l)`, conjugates of a generator multiplying to `t_kl(y)`.
pub fn classify(gl: &Gl, generators: &[InvertibleMatrix]) -> Result<ClassificationCertificate> {
    let n = gl.degree();
    if n < 3 {
        return Err(Error::Unsupported("classification needs n >= 3".into()));
    }
    let r = gl.ring();
    let ideal = gl.level_ideal_of_set(generators)?;
    let upper_check: Vec<bool> = generators
        .iter()
        .map(|g| gl.congruence_member(g.matrix(), &ideal))
        .collect();
    if upper_check.iter().any(|&ok| !ok) {
        return Err(invariant("a generator is outside the congruence subgroup of its own level"));
    }
    let mut lower_witnesses = Vec::new();
    let mut covered: Vec<Elem> = Vec::new();
    for (gi, sigma) in generators.iter().enumerate() {
        for lg in gl.level_generators(sigma.matrix()) {
            if covered.contains(&lg.value) {
                continue;
            }
            covered.push(lg.value);
            for k in 0..n {
                for l in (0..n).filter(|&l| l != k) {
                    let product = match lg.origin {
                        LevelOrigin::Entry { i, j } => extract_entry(gl, sigma, i, j, (k, l), r.one(), r.one())?,
                        LevelOrigin::Diagonal { i, j, a } => {
                            extract_diagonal(gl, sigma, i, j, (k, l), r.one(), r.one(), a)?
                        }
                    };
                    lower_witnesses.push(LowerWitness {
                        generator: gi,
                        value: lg.value,
                        origin: lg.origin,
                        position: (k, l),
                        product,
                    });
                }
            }
        }
    }
    let cert = ClassificationCertificate {
        generators: generators.to_vec(),
        ideal,
        upper_check,
        lower_witnesses,
        level_source: LevelSource::Generators,
    };
    cert.verify(gl)?;
    Ok(cert)
}

/// Enumerates the `E_n(R)`-normal closure `H` of the generators, computes the
/// level over all of `H`, and records whether it equals the generators' level.
pub fn cross_check_level(gl: &Gl, cert: &mut ClassificationCertificate, cap: usize) -> Result<()> {
    let h = normal_closure(gl, &cert.generators, &elementary_generators(gl)?, cap)?;
    let mut values: Vec<Elem> = Vec::new();
    for m in h.elements() {
        for v in gl.level_values(m) {
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    let full = Ideal::generated(gl.ring(), &values)?;
    cert.level_source = LevelSource::Enumerated {
        order: h.len(),
        equal: full == cert.ideal,
    };
    Ok(())
}

/// Why `I` and another ideal `J` cannot both sandwich `H`.
#[derive(Clone, Debug, Serialize)]
pub struct UniquenessEvidence {
    pub other: Ideal,
    pub equal: bool,
    /// `x in I \ J`: `t_12(x) in E_n(R, I) ⊆ H` but `t_12(x)` fails the `C_n(R, J)` test.
    pub in_i_not_j: Option<Elem>,
    /// `x in J \ I`: `t_12(x) in E_n(R, J)` but `t_12(x)` fails the `C_n(R, I)` test.
    pub in_j_not_i: Option<Elem>,
}

impl UniquenessEvidence {
    pub fn distinguished(&self) -> bool {
        self.in_i_not_j.is_some() || self.in_j_not_i.is_some()
    }
}

/// For each `J`, finds an `x` on either side of `I` vs `J` and confirms with the
/// congruence test that `t_12(x)` separates them.
pub fn compare_ideals(gl: &Gl, ideal: &Ideal, others: &[Ideal]) -> Result<Vec<UniquenessEvidence>> {
    let separating = |from: &Ideal, against: &Ideal| -> Result<Option<Elem>> {
        for &x in from.elements() {
            if !against.contains(x) {
                let t = gl.transvection(0, 1, x)?;
                if gl.congruence_member(t.matrix(), against) {
                    return Err(invariant("transvection passes the congruence test of an ideal missing its entry"));
                }
                return Ok(Some(x));
            }
        }
        Ok(None)
    };
    others
        .iter()
        .map(|j| {
            Ok(UniquenessEvidence {
                other: j.clone(),
                equal: j == ideal,
                in_i_not_j: separating(ideal, j)?,
                in_j_not_i: separating(j, ideal)?,
            })
        })
        .collect()
}
