use exgl::group::{relative_generators, Gl};
use exgl::harness::{sample_gl, Sampler};
use exgl::ring::all_ideals;
use exgl::witness::{
    classify, compare_ideals, expand_reduction, extract_diagonal, extract_entry, extract_transvection_8,
    reduce_step, ReductionPair,
};
use exgl::{Elem, Error, Ideal, Ring};

fn z4() -> Gl {
    Gl::new(Ring::modular(4).unwrap(), 3).unwrap()
}

#[test]
fn entry_and_diagonal_over_fifty_samples() {
    let g = z4();
    let r = g.ring().clone();
    let mut rng = Sampler::new(50);
    for sigma in sample_gl(&g, 50, 50).unwrap() {
        let (i, j) = rng.pair(3);
        let kl = rng.pair(3);
        let (a, b, c) = (rng.elem(&r), rng.elem(&r), rng.elem(&r));
        let p = extract_entry(&g, &sigma, i, j, kl, a, b).unwrap();
        assert!(p.len() <= 40);
        let want = r.mul(r.mul(a, sigma.entry(i, j)), b);
        assert_eq!(p.eval(&g).unwrap(), g.transvection(kl.0, kl.1, want).unwrap());
        let p = extract_diagonal(&g, &sigma, i, j, kl, a, b, c).unwrap();
        assert!(p.len() <= 120);
        let inner = r.sub(r.mul(c, sigma.entry(i, i)), r.mul(sigma.entry(j, j), c));
        let want = r.mul(r.mul(a, inner), b);
        assert_eq!(p.eval(&g).unwrap(), g.transvection(kl.0, kl.1, want).unwrap());
    }
}

#[test]
fn eight_factor_hypothesis_is_checked() {
    let g = z4();
    let sigma = g.transvection(0, 1, Elem(2)).unwrap();
    // sigma_1* xs = 1 for xs = (1, 0, 0) and y = 1 does not annihilate it.
    let err = extract_transvection_8(&g, &sigma, 0, 0, &[Elem(1), Elem(0), Elem(0)], Elem(1), (0, 1), Elem(1), Elem(1));
    assert!(matches!(err, Err(Error::Precondition(_))));
    let p = extract_transvection_8(&g, &sigma, 0, 1, &[Elem(0), Elem(1), Elem(0)], Elem(2), (2, 0), Elem(1), Elem(1))
        .unwrap();
    assert_eq!(p.len(), 8);
    assert!(g.is_identity(p.eval(&g).unwrap().matrix()));
}

#[test]
fn reduction_chain_of_length_two() {
    let g = Gl::new(Ring::modular(2).unwrap(), 3).unwrap();
    let mut rng = Sampler::new(77);
    let a1 = rng.word(&g, 3);
    let b1 = rng.gl(&g, 1).unwrap().remove(0);
    let gs = vec![rng.word(&g, 3), rng.word(&g, 3)];
    let ex = expand_reduction(&g, &a1, &b1, &gs).unwrap();
    assert_eq!(ex.product.len(), 4);
    let mut pair = ReductionPair { a: g.eval_word(&a1).unwrap(), b: b1 };
    for w in &gs {
        pair = reduce_step(&g, &pair, &g.eval_word(w).unwrap()).unwrap();
    }
    assert_eq!(ex.product.eval(&g).unwrap(), g.mul_inv(&pair.a, &pair.b));
}

#[test]
fn trivial_reduction_steps() {
    let g = z4();
    let e = g.identity_invertible();
    let s = sample_gl(&g, 3, 1).unwrap().remove(0);
    let pair = ReductionPair { a: s.clone(), b: s.clone() };
    let next = reduce_step(&g, &pair, &e).unwrap();
    assert!(g.is_identity(next.a.matrix()) && g.is_identity(next.b.matrix()));
    let pair = ReductionPair { a: e.clone(), b: e.clone() };
    let next = reduce_step(&g, &pair, &s).unwrap();
    assert!(g.is_identity(next.a.matrix()) && g.is_identity(next.b.matrix()));
}

#[test]
fn classification_of_the_relative_group() {
    let g = z4();
    let two = Ideal::generated(g.ring(), &[Elem(2)]).unwrap();
    let cert = classify(&g, &relative_generators(&g, &two).unwrap()).unwrap();
    assert_eq!(cert.ideal, two);
    assert!(cert.upper_check.iter().all(|&b| b));
    cert.verify(&g).unwrap();
    let ideals = all_ideals(g.ring(), 16).unwrap();
    let ev = compare_ideals(&g, &cert.ideal, &ideals).unwrap();
    for e in &ev {
        assert_eq!(e.distinguished(), !e.equal);
        if let Some(x) = e.in_i_not_j {
            assert!(two.contains(x) && !e.other.contains(x));
        }
        if let Some(x) = e.in_j_not_i {
            assert!(!two.contains(x) && e.other.contains(x));
        }
    }
}

#[test]
fn certificates_serialize() {
    let g = z4();
    let cert = classify(&g, &[g.transvection(0, 1, Elem(2)).unwrap()]).unwrap();
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["ideal"]["elements"], serde_json::json!([0, 2]));
    assert_eq!(v["level_source"]["kind"], "generators");
    let w = &v["lower_witnesses"][0];
    assert!(w["product"]["factors"].as_array().unwrap().iter().all(|f| f["conj"].is_array()));
}
