mod common;

use common::*;
use drgsym::audit::audit;
use drgsym::automorphisms::are_isomorphic;
use drgsym::certifier::{
    certify, certify_family, complement_transfer, Certificate, CertifyError, CertifyOptions,
    ModeRequest, RuleId, SearchMode, Verdict,
};
use drgsym::graph::Graph;

fn all_pairs() -> CertifyOptions {
    CertifyOptions {
        mode: ModeRequest::AllPairs,
        ..Default::default()
    }
}

#[test]
fn certificates_are_deterministic() {
    for s in [
        "named:coxeter",
        "paley:17",
        "hamming:3,3",
        "named:shrikhande",
        "named:foster",
    ] {
        let a = certify_family(&spec(s), &CertifyOptions::default()).unwrap();
        let b = certify_family(&spec(s), &CertifyOptions::default()).unwrap();
        assert_eq!(a.to_json_pretty(), b.to_json_pretty(), "{s}");
    }
}

#[test]
fn all_pairs_mode_agrees_with_orbit_mode() {
    for s in [
        "paley:9",
        "paley:13",
        "hamming:2,3",
        "hamming:3,3",
        "named:line-petersen",
        "cycle:7",
    ] {
        let orbit = certify_family(&spec(s), &CertifyOptions::default()).unwrap();
        let full = certify_family(&spec(s), &all_pairs()).unwrap();
        assert_eq!(orbit.verdict, full.verdict, "{s}");
        assert_eq!(chain(&orbit), chain(&full), "{s}");
        assert!(audit(&full, &graph(s)).passed(), "{s}");
        let pairs = full
            .applications
            .iter()
            .filter(|a| a.mode == Some(SearchMode::AllPairs));
        for app in pairs {
            let expected = graph(s).distances().pairs_at(app.class).count();
            assert_eq!(app.witnesses.len(), expected);
        }
    }
}

#[test]
fn every_certificate_in_the_corpus_audits() {
    let specs = [
        "named:petersen",
        "named:heawood",
        "named:co-heawood",
        "named:pappus",
        "named:desargues",
        "named:dodecahedron",
        "named:coxeter",
        "named:tutte-8-cage",
        "named:foster",
        "named:biggs-smith",
        "named:shrikhande",
        "named:icosahedron",
        "named:clebsch",
        "named:hoffman-singleton",
        "named:line-petersen",
        "odd:4",
        "odd:5",
        "johnson:6,2",
        "kneser:7,2",
        "crown:3",
        "cycle:8",
        "paley:25",
        "hamming:4,3",
    ];
    for s in specs {
        let (cert, g) = certified(s);
        let report = audit(&cert, &g);
        assert!(report.passed(), "{s}: {report}");
        let back = Certificate::from_json(&cert.to_json_line()).unwrap();
        assert!(audit(&back, &g).passed());
    }
}

#[test]
fn biggs_smith_chain() {
    let (cert, _) = certified("named:biggs-smith");
    assert_eq!(cert.verdict, Verdict::NoQsym);
    assert_eq!(
        &chain(&cert)[..2],
        &[(RuleId::Girth5, 1), (RuleId::CubicD2, 2)]
    );
}

#[test]
fn tutte_cage_stops_after_two_classes() {
    let (cert, _) = certified("named:tutte-8-cage");
    assert_eq!(
        cert.verdict,
        Verdict::Inconclusive {
            open_classes: vec![3, 4]
        }
    );
}

#[test]
fn small_and_trivial_graphs() {
    let k1 = Graph::empty(1);
    let cert = certify(&k1, None, &CertifyOptions::default()).unwrap();
    assert_eq!((cert.verdict.clone(), cert.diameter), (Verdict::NoQsym, 0));
    assert!(audit(&cert, &k1).passed());
    let (k2, g) = certified("complete:2");
    assert_eq!(k2.verdict, Verdict::NoQsym);
    assert!(audit(&k2, &g).passed());
    assert_eq!(
        certify(&Graph::empty(0), None, &CertifyOptions::default()),
        Err(CertifyError::Empty)
    );
}

#[test]
fn irregular_graphs_are_handled() {
    // A path: not distance-regular, class rules still apply where they can.
    let path = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let cert = certify(&path, None, &CertifyOptions::default()).unwrap();
    assert!(cert.intersection_array.is_none());
    assert!(audit(&cert, &path).passed());
}

#[test]
fn transfer_through_self_complementary_paley() {
    for q in [9, 13, 17] {
        let (cert, g) = certified(&format!("paley:{q}"));
        let co = g.complement();
        assert!(are_isomorphic(&g, &co).unwrap());
        let moved = complement_transfer(&co, &cert).unwrap();
        assert_eq!(moved.verdict, Verdict::NoQsym);
        assert!(audit(&moved, &co).passed());
        assert_eq!(complement_transfer(&g, &moved).unwrap(), cert);
    }
}

#[test]
fn transfer_requires_a_complete_certificate() {
    let (cert, g) = certified("johnson:6,2");
    assert!(matches!(cert.verdict, Verdict::Inconclusive { .. }));
    assert!(matches!(
        complement_transfer(&g.complement(), &cert),
        Err(CertifyError::Transfer(_))
    ));
    // The complement of K_3 is disconnected.
    let (k3, g) = certified("complete:3");
    assert_eq!(
        complement_transfer(&g.complement(), &k3),
        Err(CertifyError::Disconnected)
    );
}

#[test]
fn transfer_tampering_is_caught() {
    let (cert, g) = certified("paley:13");
    let mut moved = complement_transfer(&g.complement(), &cert).unwrap();
    moved.transfer.as_mut().unwrap().applications.pop();
    assert!(!audit(&moved, &g.complement()).passed());
}

#[test]
fn forged_generators_rejected() {
    let (mut cert, g) = certified("named:foster");
    let gens = cert
        .generators
        .as_mut()
        .expect("orbit mode records generators");
    gens[0].swap(0, 1);
    assert!(!audit(&cert, &g).passed());
}

#[test]
fn budget_exhaustion_is_reported_per_rule() {
    let options = CertifyOptions {
        search_budget: 10,
        ..Default::default()
    };
    let cert = certify_family(&spec("hamming:3,3"), &options).unwrap();
    assert!(matches!(cert.verdict, Verdict::Inconclusive { .. }));
    assert!(cert
        .notes
        .iter()
        .any(|n| n.contains("pivot_intersection inapplicable, budget")));
    assert!(audit(&cert, &graph("hamming:3,3")).passed());
}
