use exgl::factor::{factor_congruence_commutator, factor_conjugated_transvection, factor_unimodular};
use exgl::group::{elementary_generators, ideal_elementary_generators, normal_closure, Gl};
use exgl::harness::{sample_congruence, sample_gl, Sampler};
use exgl::ring::{all_ideals, parse_ring_spec};
use exgl::{Elem, Ideal};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

fn check_conjugated(spec: &str, n: usize, samples: usize, seed: u64) {
    let r = parse_ring_spec(spec).unwrap();
    let g = Gl::new(r.clone(), n).unwrap();
    let bound = 4 * n * n - 3 * n;
    let mut longest = 0;
    for ideal in all_ideals(&r, 16).unwrap() {
        for sigma in sample_gl(&g, seed, samples).unwrap() {
            for (i, j) in pairs(n) {
                for &x in ideal.elements() {
                    let w = factor_conjugated_transvection(&g, &sigma, i, j, x, &ideal).unwrap();
                    let target = g.conj(g.transvection(i, j, x).unwrap().matrix(), &sigma);
                    let expanded = w.expand(&r);
                    assert_eq!(g.eval_word(&expanded).unwrap().matrix(), &target);
                    assert!(w.bases_in(&ideal));
                    assert!(expanded.len() <= bound, "{spec} n={n}: {} letters", expanded.len());
                    longest = longest.max(expanded.len());
                }
            }
        }
    }
    assert!(longest > 0);
}

#[test]
fn conjugated_transvections_z4() {
    check_conjugated("Z/4", 3, 20, 11);
}

#[test]
fn conjugated_transvections_other_degrees() {
    check_conjugated("Z/4", 2, 20, 5);
    check_conjugated("Z/2", 4, 10, 6);
}

#[test]
fn conjugated_transvections_noncommutative() {
    check_conjugated("UT(2,Z/2)", 3, 10, 12);
    check_conjugated("Z/6", 3, 10, 13);
}

#[test]
fn unimodular_rows_from_random_matrices() {
    let r = parse_ring_spec("UT(2,Z/2)").unwrap();
    let g = Gl::new(r.clone(), 3).unwrap();
    let whole = Ideal::whole(&r);
    let mut s = Sampler::new(3);
    for sigma in sample_gl(&g, 21, 20).unwrap() {
        // Row 0 of sigma is unimodular; any column killed by it works as u.
        let v = sigma.matrix().row(0);
        let w = sigma.inverse().column(0);
        let k = 1 + s.index(2);
        let u = sigma.inverse().column(k);
        let x = s.elem(&r);
        let word = factor_unimodular(&g, &u, &v, &w, x, &whole).unwrap();
        let target = g.add(&g.identity(), &g.scale_left_outer(&u, x, &v));
        assert_eq!(g.eval_relative(&word).unwrap().matrix(), &target);
    }
}

fn check_commutators(spec: &str, samples: usize, seed: u64) {
    let r = parse_ring_spec(spec).unwrap();
    let g = Gl::new(r.clone(), 3).unwrap();
    let mut s = Sampler::new(seed);
    for ideal in all_ideals(&r, 16).unwrap() {
        let sigmas = match sample_congruence(&g, &ideal, seed, samples) {
            Ok(v) => v,
            Err(exgl::Error::Sampling(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        for sigma in sigmas {
            let (i, j) = s.pair(3);
            let x = s.elem(&r);
            let w = factor_congruence_commutator(&g, &sigma, i, j, x, &ideal).unwrap();
            assert!(w.bases_in(&ideal));
            let t = g.transvection(i, j, x).unwrap();
            assert_eq!(g.eval_relative(&w).unwrap(), g.commutator(&t, &sigma));
            assert_eq!(
                g.eval_word(&w.expand(&r)).unwrap().matrix(),
                g.commutator(&t, &sigma).matrix()
            );
        }
    }
}

#[test]
fn congruence_commutators_commutative() {
    check_commutators("Z/4", 50, 31);
    check_commutators("Z/6", 30, 32);
}

#[test]
fn congruence_commutators_noncommutative() {
    check_commutators("UT(2,Z/2)", 40, 33);
}

#[test]
fn commutators_land_in_relative_group() {
    let r = parse_ring_spec("Z/4").unwrap();
    let g = Gl::new(r.clone(), 3).unwrap();
    let two = Ideal::generated(&r, &[Elem(2)]).unwrap();
    let rel = normal_closure(
        &g,
        &ideal_elementary_generators(&g, &two).unwrap(),
        &elementary_generators(&g).unwrap(),
        1 << 12,
    )
    .unwrap();
    for sigma in sample_congruence(&g, &two, 8, 20).unwrap() {
        for (i, j) in pairs(3) {
            for x in r.elements() {
                let w = factor_congruence_commutator(&g, &sigma, i, j, x, &two).unwrap();
                assert!(rel.contains(g.eval_relative(&w).unwrap().matrix()));
            }
        }
    }
}
