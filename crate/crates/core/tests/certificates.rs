use std::collections::BTreeSet;

use linkset_core::assets::{certificate_bundle, witness_diagram};
use linkset_core::catalog::{catalog_graph, catalog_lambda, default_lambda, GRAPH_NAMES};
use linkset_core::certificates::{extend_permutation, CertificateBundle};
use linkset_core::{
    complete_graph, enumerate_pairs, extend_diagram, lift_battery, monte_carlo_sigma, parity_table, psi_pair_map,
    verify_linked, verify_minimal, Edge, Error, LambdaSet, MinimalityBattery, MinorMap, WitnessSpec,
};

#[test]
fn parity_examples() {
    let lam = catalog_lambda("Λ(G8)").unwrap();
    let t = parity_table(lam.host(), &lam).unwrap();
    assert_eq!(t.count(Edge::of(1, 8), Edge::of(4, 5)), Some(2));
    assert_eq!(t.count(Edge::of(4, 5), Edge::of(1, 8)), Some(2));
    assert_eq!(t.count(Edge::of(1, 2), Edge::of(1, 3)), None);
    let k6 = complete_graph(6).unwrap();
    let g33 = LambdaSet::new("Γ_3,3(K6)", k6.clone(), enumerate_pairs(&k6, Some((3, 3)), false)).unwrap();
    let t = parity_table(&k6, &g33).unwrap();
    assert_eq!(t.counts().len(), 45);
    assert!(t.counts().values().all(|&c| c == 2));
    let other = catalog_graph("G9").unwrap();
    assert!(matches!(parity_table(&other, &g33), Err(Error::HostMismatch(_))));
}

#[test]
fn linked_verification_and_parity_failure() {
    let g9 = catalog_graph("G9").unwrap();
    let lam = default_lambda("G9").unwrap();
    let cert = verify_linked(&g9, &lam, &witness_diagram("G9").unwrap()).unwrap();
    assert_eq!(cert.witness_sum(), 1);
    cert.recheck(&g9, &lam).unwrap();
    let k6 = complete_graph(6).unwrap();
    let full = default_lambda("K6").unwrap();
    let w = witness_diagram("K6").unwrap();
    verify_linked(&k6, &full, &w).unwrap();
    let smaller = full.without(&full.pairs()[3], "nine").unwrap();
    let err = verify_linked(&k6, &smaller, &w).unwrap_err();
    assert!(matches!(err, Error::Verification(ref m) if m.contains("parity")), "{err}");
}

#[test]
fn flips_change_only_separating_pairs() {
    let d = witness_diagram("G8").unwrap();
    let lam = default_lambda("G8").unwrap();
    let flip = d.crossings_between(Edge::of(3, 8), Edge::of(4, 6))[0].key.clone();
    let f = d.flip_crossing(&flip).unwrap();
    for p in lam.pairs() {
        let delta = (f.linking_number(p).unwrap() - d.linking_number(p).unwrap()).abs();
        assert_eq!(delta, i64::from(p.separates(Edge::of(3, 8), Edge::of(4, 6))), "{p}");
    }
}

#[test]
fn battery_preconditions() {
    let g = catalog_graph("P10").unwrap();
    let lam = default_lambda("P10").unwrap();
    let bundle = certificate_bundle("P10").unwrap();
    let full = bundle.minimality_battery().unwrap();
    assert!(verify_minimal(&g, &lam, &full).unwrap().passed);
    let short = MinimalityBattery::new(lam.clone(), full.base().clone(), full.specs()[1..].to_vec()).unwrap();
    assert!(matches!(verify_minimal(&g, &lam, &short), Err(Error::InvalidArgument(_))));
    let mut bad = full.specs().to_vec();
    let k = complete_graph(10).unwrap();
    let not_aut = linkset_core::VertexPermutation::from_cycles("(1 2)", k.vertices()).unwrap();
    bad[0] = WitnessSpec {
        sigma: not_aut,
        ..bad[0].clone()
    };
    let wrong = MinimalityBattery::new(lam.clone(), full.base().clone(), bad).unwrap();
    assert!(matches!(verify_minimal(&g, &lam, &wrong), Err(Error::Permutation(_))));
}

#[test]
fn battery_without_flip_fails_for_flipped_targets() {
    let g = catalog_graph("P8").unwrap();
    let lam = default_lambda("P8").unwrap();
    let full = certificate_bundle("P8").unwrap().minimality_battery().unwrap();
    let stripped: Vec<WitnessSpec> = full
        .specs()
        .iter()
        .map(|s| WitnessSpec {
            flips: vec![],
            ..s.clone()
        })
        .collect();
    let b = MinimalityBattery::new(lam.clone(), full.base().clone(), stripped).unwrap();
    let r = verify_minimal(&g, &lam, &b).unwrap();
    assert!(!r.passed);
    let failing: Vec<_> = r.specs.iter().filter(|s| !s.passed).collect();
    let flipped: Vec<_> = full.specs().iter().filter(|s| !s.flips.is_empty()).collect();
    assert_eq!(failing.len(), flipped.len());
}

#[test]
fn unflipped_specs_are_relabelings_of_the_base() {
    for name in GRAPH_NAMES {
        let lam = default_lambda(name).unwrap();
        let b = certificate_bundle(name).unwrap().minimality_battery().unwrap();
        let base = b.base();
        let lks: Vec<i64> = lam.pairs().iter().map(|p| base.linking_number(p).unwrap()).collect();
        for s in b.specs().iter().filter(|s| s.flips.is_empty()) {
            let mut images: Vec<i64> = lam
                .pairs()
                .iter()
                .map(|p| base.linking_number(&linkset_core::apply_permutation(&s.sigma, p).unwrap()).unwrap())
                .collect();
            let mut want = lks.clone();
            images.sort();
            want.sort();
            assert_eq!(images, want, "{name}");
        }
    }
}

#[test]
fn bundles_round_trip() {
    for name in GRAPH_NAMES {
        let b = certificate_bundle(name).unwrap();
        b.check().unwrap();
        let text = serde_json::to_string(&b).unwrap();
        let back: CertificateBundle = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let g = &back.graph;
        let r = verify_minimal(g, &back.lambda, &back.minimality_battery().unwrap()).unwrap();
        assert!(r.passed, "{name}");
        let digest: Vec<_> = back.parity_digest.iter().map(|(k, _)| *k).collect();
        let mut sorted = digest.clone();
        sorted.sort();
        assert_eq!(digest, sorted);
    }
}

#[test]
fn identity_lift_is_unchanged() {
    let b = certificate_bundle("Q7").unwrap();
    let cert = verify_linked(&b.graph, &b.lambda, b.witness().unwrap()).unwrap();
    let battery = b.minimality_battery().unwrap();
    let m = MinorMap::identity(&b.graph);
    let (c2, b2) = lift_battery(&m, &cert, &battery).unwrap();
    assert_eq!(c2.witness(), cert.witness());
    assert_eq!(b2.specs(), battery.specs());
    assert_eq!(b2.lambda().pairs(), battery.lambda().pairs());
    let a = CertificateBundle::new(b2.lambda(), Some(c2.witness()), Some(&b2)).unwrap();
    let o = CertificateBundle::new(battery.lambda(), Some(cert.witness()), Some(&battery)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&o).unwrap());
}

#[test]
fn extension_preserves_verdicts() {
    let b = certificate_bundle("G8").unwrap();
    let d = b.witness().unwrap();
    let m = MinorMap::identity(&b.graph).into_host(complete_graph(8).unwrap()).unwrap();
    let h = extend_diagram(d, &m).unwrap();
    assert_eq!(h.graph(), &complete_graph(8).unwrap());
    let fresh: BTreeSet<Edge> = h.graph().edges().filter(|e| !b.graph.contains_edge(*e)).collect();
    for p in b.lambda.pairs() {
        let q = psi_pair_map(&m, p).unwrap();
        assert_eq!(h.linking_number(&q).unwrap(), d.linking_number(p).unwrap());
        assert_eq!(h.split_certify(&q).unwrap(), d.split_certify(p).unwrap());
        for c in h.inter_crossings(&q) {
            assert!(c.edges().iter().all(|e| !fresh.contains(e)));
        }
    }
    let id = MinorMap::identity(&b.graph);
    assert_eq!(&extend_diagram(d, &id).unwrap(), d);
}

#[test]
fn subdivided_lift_re_verifies() {
    let b = certificate_bundle("G10").unwrap();
    let m = MinorMap::subdivisions(&b.graph, &[(Edge::of(7, 8), 1)], 11)
        .unwrap()
        .into_host(complete_graph(11).unwrap())
        .unwrap();
    let cert = verify_linked(&b.graph, &b.lambda, b.witness().unwrap()).unwrap();
    let (c, lifted) = lift_battery(&m, &cert, &b.minimality_battery().unwrap()).unwrap();
    assert_eq!(lifted.lambda().len(), 18);
    assert_eq!(c.witness_sum(), 1);
    for s in lifted.specs() {
        assert!(s.sigma.is_automorphism_of(lifted.lambda().host()));
    }
    let battery = b.minimality_battery().unwrap();
    let ext = extend_permutation(&battery.specs()[1].sigma, &m).unwrap();
    assert_eq!(ext.apply(11), Some(11));
}

#[test]
fn monte_carlo_detects_parity_failure() {
    let k6 = complete_graph(6).unwrap();
    let full = default_lambda("K6").unwrap();
    let r = monte_carlo_sigma(&k6, &full, 200, 3).unwrap();
    assert!(r.all_one && r.parity_even);
    let again = monte_carlo_sigma(&k6, &full, 200, 3).unwrap();
    assert_eq!(r, again);
    let nine = full.without(&full.pairs()[0], "nine").unwrap();
    let r = monte_carlo_sigma(&k6, &nine, 200, 3).unwrap();
    assert!(!r.parity_even);
    assert_eq!(r.histogram.len(), 2, "{:?}", r.histogram);
}
