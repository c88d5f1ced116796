mod common;

use common::*;
use drgsym::automorphisms::{are_isomorphic, automorphism_group, is_distance_transitive};
use drgsym::drg::{is_distance_regular, srg_params, DrgCheck};
use drgsym::families::{self, FamilySpec, NamedGraph};

#[test]
fn named_isomorphisms() {
    for (a, b) in [
        ("odd:3", "named:petersen"),
        ("kneser:5,2", "named:petersen"),
        ("paley:9", "hamming:2,3"),
        ("crown:3", "cycle:6"),
        ("crown:4", "named:q3"),
        ("cube:3", "named:q3"),
        ("complete:4", "named:k4"),
        ("complete-bipartite:3", "named:k33"),
        ("kneser:6,1", "complete:6"),
        ("johnson:6,1", "complete:6"),
        ("paley:5", "cycle:5"),
        ("hamming:3,2", "cube:3"),
        ("odd:2", "cycle:3"),
    ] {
        assert!(are_isomorphic(&graph(a), &graph(b)).unwrap(), "{a} vs {b}");
    }
}

#[test]
fn non_isomorphic_with_equal_arrays() {
    let rook = graph("hamming:2,4");
    let shrikhande = graph("named:shrikhande");
    assert_eq!(
        is_distance_regular(&rook).unwrap().array(),
        is_distance_regular(&shrikhande).unwrap().array()
    );
    assert!(!are_isomorphic(&rook, &shrikhande).unwrap());
}

#[test]
fn line_graphs() {
    let (l_k4, _) = graph("complete:4").line_graph();
    assert!(are_isomorphic(&l_k4, &graph("johnson:4,2")).unwrap());
    let (l_petersen, _) = graph("named:petersen").line_graph();
    assert!(are_isomorphic(&l_petersen, &graph("named:line-petersen")).unwrap());
}

#[test]
fn complements() {
    for n in 5..9 {
        let j = graph(&format!("johnson:{n},2"));
        assert_eq!(j.complement(), graph(&format!("kneser:{n},2")));
    }
    for q in [5, 9, 13, 17, 25] {
        let p = graph(&format!("paley:{q}"));
        assert!(are_isomorphic(&p, &p.complement()).unwrap(), "P_{q}");
    }
    let heawood = graph("named:heawood");
    let left: Vec<usize> = (0..7).collect();
    let right: Vec<usize> = (7..14).collect();
    let co = heawood.bipartite_complement(&left, &right).unwrap();
    assert!(are_isomorphic(&co, &graph("named:co-heawood")).unwrap());
}

#[test]
fn clebsch_is_folded_five_cube() {
    // Identify antipodal vertices of Q_5.
    let q5 = graph("cube:5");
    let reps: Vec<usize> = (0..32).filter(|&v| v < 31 - v).collect();
    let folded = drgsym::graph::Graph::from_fn(16, |a, b| {
        let (x, y) = (reps[a], reps[b]);
        q5.adjacent(x, y) || q5.adjacent(x, 31 - y)
    });
    assert!(are_isomorphic(&folded, &graph("named:clebsch")).unwrap());
}

#[test]
fn strongly_regular_parameters() {
    for (s, params) in [
        ("named:petersen", (10, 3, 0, 1)),
        ("named:hoffman-singleton", (50, 7, 0, 1)),
        ("named:clebsch", (16, 5, 0, 2)),
        ("named:shrikhande", (16, 6, 2, 2)),
        ("paley:13", (13, 6, 2, 3)),
        ("johnson:6,2", (15, 8, 4, 4)),
    ] {
        let p = srg_params(&graph(s)).unwrap();
        assert_eq!((p.n, p.k, p.lambda, p.mu), params, "{s}");
        assert!(p.is_feasible());
    }
}

fn all_small_specs() -> Vec<FamilySpec> {
    let mut specs: Vec<FamilySpec> = NamedGraph::ALL
        .iter()
        .map(|&n| FamilySpec::Named(n))
        .collect();
    for s in [
        "odd:2",
        "odd:3",
        "odd:4",
        "hamming:2,3",
        "hamming:3,3",
        "hamming:2,4",
        "hamming:4,2",
        "johnson:5,2",
        "johnson:6,3",
        "johnson:7,3",
        "kneser:6,2",
        "kneser:7,3",
        "paley:9",
        "paley:13",
        "paley:17",
        "paley:25",
        "cycle:7",
        "cycle:10",
        "complete:5",
        "complete-bipartite:4",
        "crown:5",
        "cube:4",
    ] {
        specs.push(spec(s));
    }
    specs
}

#[test]
fn distance_transitive_implies_distance_regular() {
    for s in all_small_specs() {
        let g = families::build(&s).unwrap().graph;
        let dd = g.distances();
        let aut = automorphism_group(&g).unwrap();
        let drg = matches!(is_distance_regular(&g).unwrap(), DrgCheck::Regular(_));
        if is_distance_transitive(&dd, &aut) {
            assert!(drg, "{s}");
        }
    }
    // The only graph on the list that is distance-regular but not distance-transitive.
    let g = graph("named:shrikhande");
    assert!(!is_distance_transitive(
        &g.distances(),
        &automorphism_group(&g).unwrap()
    ));
}

#[test]
fn arrays_match_family_formulas() {
    for s in all_small_specs() {
        let Some(expected) = families::expected_array(&s) else {
            continue;
        };
        let g = families::build(&s).unwrap().graph;
        assert_eq!(
            is_distance_regular(&g).unwrap().array(),
            Some(&expected),
            "{s}"
        );
        assert_eq!(expected.order(), families::expected_order(&s), "{s}");
    }
}

#[test]
fn relabelled_copies_keep_their_groups() {
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(7);
    for s in [
        "named:heawood",
        "named:shrikhande",
        "paley:13",
        "johnson:6,3",
    ] {
        let g = graph(s);
        let h = shuffled(&g, &mut rng);
        assert_eq!(
            automorphism_group(&g).unwrap().order(),
            automorphism_group(&h).unwrap().order()
        );
        assert!(are_isomorphic(&g, &h).unwrap());
    }
}
