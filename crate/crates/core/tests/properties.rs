//! Property tests: every case is generated from a proptest-chosen seed or
//! element, and checked against an oracle computed here.

use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use exgl::factor::{factor_congruence_commutator, factor_conjugated_transvection};
use exgl::group::{
    elementary_generators, enumerate_closure, gl_generators, ideal_elementary_generators, normal_closure,
    perm_word, CenterOracle, Gl, InvertibleMatrix, Matrix, Subgroup,
};
use exgl::harness::{run_suite, Sampler, SuiteConfig};
use exgl::ring::{all_ideals, nicholson_idempotent, orthogonal_decomposition, parse_ring_spec};
use exgl::witness::{classify, expand_reduction, extract_diagonal, extract_entry, extract_transvection_8};
use exgl::{Elem, Ideal, Ring};

const SPECS: [&str; 6] = ["Z/2", "Z/4", "Z/6", "UT(2,Z/2)", "Prod(Z/2,Z/3)", "Mat(2,Z/2)"];

fn ring(k: usize) -> Ring {
    parse_ring_spec(SPECS[k % SPECS.len()]).unwrap()
}

fn z4_gl() -> &'static (Gl, Ideal) {
    static CELL: OnceLock<(Gl, Ideal)> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = Ring::modular(4).unwrap();
        let two = Ideal::generated(&r, &[Elem(2)]).unwrap();
        (Gl::new(r, 3).unwrap(), two)
    })
}

fn z4_relative() -> &'static Subgroup {
    static CELL: OnceLock<Subgroup> = OnceLock::new();
    CELL.get_or_init(|| {
        let (g, two) = z4_gl();
        normal_closure(g, &ideal_elementary_generators(g, two).unwrap(), &elementary_generators(g).unwrap(), 1 << 12)
            .unwrap()
    })
}

/// All `sum_k a_k g b_k` combinations closed under addition.
fn brute_force_ideal(r: &Ring, gens: &[Elem]) -> HashSet<Elem> {
    let mut terms = HashSet::new();
    for &g in gens {
        for a in r.elements() {
            for b in r.elements() {
                terms.insert(r.mul(r.mul(a, g), b));
            }
        }
    }
    let mut set: HashSet<Elem> = HashSet::from([r.zero()]);
    loop {
        let next: HashSet<Elem> = set
            .iter()
            .flat_map(|&s| terms.iter().map(move |&t| (s, t)))
            .map(|(s, t)| r.add(s, t))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Determinant over a commutative ring by cofactor expansion along row 0.
fn det(r: &Ring, m: &Matrix) -> Elem {
    let n = m.degree();
    if n == 1 {
        return m.get(0, 0);
    }
    let mut acc = r.zero();
    for c in 0..n {
        let mut minor = Vec::new();
        for i in 1..n {
            minor.push((0..n).filter(|&j| j != c).map(|j| m.get(i, j)).collect::<Vec<_>>());
        }
        let term = r.mul(m.get(0, c), det(r, &Matrix::from_rows(minor).unwrap()));
        acc = if c % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exchange_idempotent_for_every_element(k in 0usize..6, x in 0u32..64) {
        let r = ring(k);
        let x = Elem(x % r.order());
        let w = nicholson_idempotent(&r, x).unwrap();
        let e = w.idempotent;
        prop_assert_eq!(r.mul(e, e), e);
        prop_assert_eq!(r.mul(x, w.left), e);
        prop_assert_eq!(r.sub(r.one(), e), r.mul(r.sub(r.one(), x), w.right));
    }

    #[test]
    fn orthogonal_decomposition_of_compositions(k in 0usize..6, raw in prop::collection::vec(0u32..64, 1..5)) {
        let r = ring(k);
        let mut xs: Vec<Elem> = raw.iter().map(|&x| Elem(x % r.order())).collect();
        let partial = r.sum(xs.iter().copied());
        xs.push(r.sub(r.one(), partial));
        let d = orthogonal_decomposition(&r, &xs).unwrap();
        prop_assert_eq!(r.sum(d.idempotents.iter().copied()), r.one());
        for (a, &e) in d.idempotents.iter().enumerate() {
            prop_assert_eq!(r.mul(e, e), e);
            prop_assert_eq!(r.mul(xs[a], d.witnesses[a]), e);
            for (b, &f) in d.idempotents.iter().enumerate() {
                if a != b {
                    prop_assert_eq!(r.mul(e, f), r.zero());
                }
            }
        }
    }

    #[test]
    fn ideal_generation_matches_brute_force(k in 0usize..6, raw in prop::collection::vec(0u32..64, 0..3)) {
        let r = ring(k);
        let gens: Vec<Elem> = raw.iter().map(|&x| Elem(x % r.order())).collect();
        let ideal = Ideal::generated(&r, &gens).unwrap();
        let oracle = brute_force_ideal(&r, &gens);
        prop_assert_eq!(ideal.len(), oracle.len());
        for x in r.elements() {
            prop_assert_eq!(ideal.contains(x), oracle.contains(&x));
        }
        let again = Ideal::generated(&r, ideal.elements()).unwrap();
        prop_assert_eq!(again.elements(), ideal.elements());
    }

    #[test]
    fn permutation_words_evaluate_to_perm_matrices(k in 0usize..6, n in 2usize..5, seed: u64) {
        let r = ring(k);
        let g = Gl::new(r.clone(), n).unwrap();
        let (i, j) = Sampler::new(seed).pair(n);
        let p = g.perm_matrix(i, j).unwrap();
        prop_assert_eq!(g.eval_word(&perm_word(&r, i, j)).unwrap(), p.clone());
        // e + e^{ij} - e^{ji} - e^{ii} - e^{jj}
        for a in 0..n {
            for b in 0..n {
                let expect = match (a, b) {
                    _ if (a, b) == (i, j) => r.one(),
                    _ if (a, b) == (j, i) => r.neg(r.one()),
                    _ if a == b && a != i && a != j => r.one(),
                    _ => r.zero(),
                };
                prop_assert_eq!(p.entry(a, b), expect);
            }
        }
    }

    #[test]
    fn inversion_matches_determinant_oracle(m in 2u32..5, n in 2usize..4, seed: u64) {
        let r = Ring::modular(m).unwrap();
        let g = Gl::new(r.clone(), n).unwrap();
        let s = Sampler::new(seed).matrix(&g);
        match g.invert(&s) {
            Ok(inv) => {
                prop_assert!(r.is_unit(det(&r, &s)));
                prop_assert!(g.is_identity(&g.mul(&s, inv.inverse())));
                prop_assert!(g.is_identity(&g.mul(inv.inverse(), &s)));
            }
            Err(exgl::Error::NotInvertible) => prop_assert!(!r.is_unit(det(&r, &s))),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn congruence_test_matches_center_preimage(seed: u64) {
        let (g, _) = z4_gl();
        let s = Sampler::new(seed).gl(g, 1).unwrap().remove(0);
        for ideal in all_ideals(g.ring(), 16).unwrap() {
            let oracle = CenterOracle::new(g, &ideal).unwrap();
            prop_assert_eq!(oracle.is_member(s.matrix()), g.congruence_member(s.matrix(), &ideal));
        }
    }

    #[test]
    fn conjugated_transvections_factor_within_bound(k in 0usize..4, seed: u64) {
        let r = ring(k);
        let g = Gl::new(r.clone(), 3).unwrap();
        let mut rng = Sampler::new(seed);
        let sigma = rng.gl(&g, 1).unwrap().remove(0);
        let (i, j) = rng.pair(3);
        let ideals = all_ideals(&r, 16).unwrap();
        let ideal = &ideals[rng.index(ideals.len())];
        let x = rng.pick(ideal.elements());
        let w = factor_conjugated_transvection(&g, &sigma, i, j, x, ideal).unwrap();
        let expanded = w.expand(&r);
        let t = g.transvection(i, j, x).unwrap();
        let target = g.mul(&g.mul(sigma.inverse(), t.matrix()), sigma.matrix());
        let value = g.eval_word(&expanded).unwrap();
        prop_assert_eq!(value.matrix(), &target);
        prop_assert!(w.bases_in(ideal));
        prop_assert!(expanded.len() <= 27);
    }

    #[test]
    fn congruence_commutators_land_in_relative_group(seed: u64) {
        let (g, two) = z4_gl();
        let mut rng = Sampler::new(seed);
        let sigma = rng.congruence(g, two, 1).unwrap().remove(0);
        let (i, j) = rng.pair(3);
        let x = rng.elem(g.ring());
        let w = factor_congruence_commutator(g, &sigma, i, j, x, two).unwrap();
        let t = g.transvection(i, j, x).unwrap();
        let direct = g.mul(&g.mul(&g.mul(t.matrix(), sigma.matrix()), t.inverse()), sigma.inverse());
        let value = g.eval_relative(&w).unwrap();
        prop_assert_eq!(value.matrix(), &direct);
        prop_assert!(w.bases_in(two));
        prop_assert!(z4_relative().contains(&direct));
    }

    #[test]
    fn commutators_with_congruence_elements_are_relative(seed: u64) {
        let (g, two) = z4_gl();
        let mut rng = Sampler::new(seed);
        let h = rng.congruence(g, two, 1).unwrap().remove(0);
        let e = g.eval_word(&rng.word(g, 6)).unwrap();
        prop_assert!(z4_relative().contains(g.commutator(&e, &h).matrix()));
    }

    #[test]
    fn reduction_chains_expand_exactly(m in prop::sample::select(vec![2u32, 4]), k in 0usize..4, seed: u64) {
        let g = Gl::new(Ring::modular(m).unwrap(), 3).unwrap();
        let mut rng = Sampler::new(seed);
        let a1 = rng.word(&g, 3);
        let b1 = rng.gl(&g, 1).unwrap().remove(0);
        let gs: Vec<_> = (0..k).map(|_| rng.word(&g, 3)).collect();
        let ex = expand_reduction(&g, &a1, &b1, &gs).unwrap();
        let (mut a, mut b) = (g.eval_word(&a1).unwrap(), b1);
        for w in &gs {
            let x = g.eval_word(w).unwrap();
            let (ai, xi) = (a.inverse().clone(), x.inverse().clone());
            let na = g.mul(&g.mul(&g.mul(&ai, x.matrix()), a.matrix()), &xi);
            let nb = g.mul(&g.mul(&g.mul(x.matrix(), b.matrix()), &xi), b.inverse());
            a = g.invert(&na).unwrap();
            b = g.invert(&nb).unwrap();
        }
        prop_assert_eq!(ex.product.len(), 1 << k);
        let value = ex.product.eval(&g).unwrap();
        prop_assert_eq!(value.matrix(), &g.mul(a.matrix(), b.matrix()));
    }

    #[test]
    fn extraction_counts_and_values(k in 0usize..4, seed: u64) {
        let r = ring(k);
        let g = Gl::new(r.clone(), 3).unwrap();
        let mut rng = Sampler::new(seed);
        let sigma = rng.gl(&g, 1).unwrap().remove(0);
        let (i, j) = rng.pair(3);
        let kl = rng.pair(3);
        let (a, b, c) = (rng.elem(&r), rng.elem(&r), rng.elem(&r));

        let p = extract_entry(&g, &sigma, i, j, kl, a, b).unwrap();
        let want = g.transvection(kl.0, kl.1, r.mul(r.mul(a, sigma.entry(i, j)), b)).unwrap();
        prop_assert!(p.len() <= 40);
        prop_assert_eq!(p.eval(&g).unwrap(), want);

        let p = extract_diagonal(&g, &sigma, i, j, kl, a, b, c).unwrap();
        let inner = r.sub(r.mul(c, sigma.entry(i, i)), r.mul(sigma.entry(j, j), c));
        let want = g.transvection(kl.0, kl.1, r.mul(r.mul(a, inner), b)).unwrap();
        prop_assert!(p.len() <= 120);
        prop_assert_eq!(p.eval(&g).unwrap(), want);

        // y = 0 always satisfies the hypothesis; the count stays exact.
        let mut xs: Vec<Elem> = (0..3).map(|_| rng.elem(&r)).collect();
        xs[j] = r.one();
        let p = extract_transvection_8(&g, &sigma, i, j, &xs, r.zero(), kl, a, b).unwrap();
        prop_assert_eq!(p.len(), 8);
        prop_assert!(g.is_identity(p.eval(&g).unwrap().matrix()));
    }

    #[test]
    fn sandwich_certificates_are_sound(seed: u64) {
        let (g, _) = z4_gl();
        let sigma: InvertibleMatrix = Sampler::new(seed).gl(g, 1).unwrap().remove(0);
        let cert = classify(g, std::slice::from_ref(&sigma)).unwrap();
        let level = g.level_ideal(sigma.matrix()).unwrap();
        prop_assert_eq!(&cert.ideal, &level);
        prop_assert!(g.congruence_member(sigma.matrix(), &level));
        for w in &cert.lower_witnesses {
            let t = g.transvection(w.position.0, w.position.1, w.value).unwrap();
            prop_assert_eq!(w.product.eval(g).unwrap(), t);
            prop_assert!(level.contains(w.value));
        }
        let values: Vec<Elem> = cert.lower_witnesses.iter().map(|w| w.value).collect();
        prop_assert_eq!(Ideal::generated(g.ring(), &values).unwrap(), level);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_are_deterministic(seed: u64, suite in prop::sample::select(vec!["normality", "extraction", "reduction", "idempotents"])) {
        let c = SuiteConfig::new("Z/4", 3).with_ideal(&[2]).with_seed(seed).with_samples(2);
        let a = serde_json::to_vec(&run_suite(suite, &c).unwrap()).unwrap();
        let b = serde_json::to_vec(&run_suite(suite, &c).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn inversion_fails_exactly_outside_the_group() {
    for m in [2, 3, 4] {
        for n in [2, 3] {
            let r = Ring::modular(m).unwrap();
            let g = Gl::new(r, n).unwrap();
            let group = enumerate_closure(&g, &gl_generators(&g).unwrap(), 1 << 20).unwrap();
            let mut rng = Sampler::new(u64::from(m) * 10 + n as u64);
            for _ in 0..300 {
                let s = rng.matrix(&g);
                assert_eq!(g.invert(&s).is_ok(), group.contains(&s));
            }
        }
    }
}
