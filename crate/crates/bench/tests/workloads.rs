use extracta::extraction::{extraction_membership, lift};
use extracta::sb::{ideal_contains, standard_basis, SbOptions};
use extracta_bench::{extraction_pair, global_cyclic, local_curve, mixed_block};

#[test]
fn workloads_are_well_formed() {
    for w in [local_curve(), mixed_block()] {
        assert!(w.order.is_control());
        let basis = standard_basis(&w.ideal, &w.order, SbOptions::default()).unwrap();
        assert!(basis.len() >= w.ideal.nonzero_gens().len());
    }
    let w = global_cyclic();
    assert!(w.order.is_global());
    // Newton's identities with e1 = e2 = 0, e3 = 1: p5 = 0 and p3 = 3.
    assert!(ideal_contains(&w.ideal, &w.probe).unwrap());
    let p3 = extracta::parse::parse_polynomial(&w.ring, "x^3 + y^3 + z^3").unwrap();
    assert!(!ideal_contains(&w.ideal, &p3).unwrap());
}

#[test]
fn extraction_pair_answers() {
    let (i, j, probes) = extraction_pair();
    let q = lift(&i, &j).unwrap();
    let answers: Vec<bool> = probes.iter().map(|f| extraction_membership(f, &q).unwrap()).collect();
    assert!(!answers[4], "1 is not in a proper extraction");
}
