mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use tridual::embed::{planarity_test, straight_line_draw, PlaneEmbedding};
use tridual::graph::Graph;
use tridual::iso::isomorphic;
use tridual::known_holes::{recognize_known_holes, validate_assignment};
use tridual::linalg::{solve_feasibility, Equation};
use tridual::no_holes::recognize_tdrs_no_holes;
use tridual::pipeline::{generate, graph_to_dual, GeneratorConfig};
use tridual::sat::{
    assignment_to_truth, exhaustive_assignment_search, reduce, AbsorberPolicy, Formula, Literal,
    DEFAULT_CAP,
};

fn hole_free() -> impl Strategy<Value = GeneratorConfig> {
    (3usize..30, 0usize..8, any::<u64>()).prop_map(|(boundary, interior_points, seed)| {
        GeneratorConfig {
            boundary,
            holes: 0,
            hole_size: 3,
            interior_points,
            seed,
        }
    })
}

fn holey() -> impl Strategy<Value = GeneratorConfig> {
    (8usize..24, 1usize..4, 3usize..6, 0usize..4, any::<u64>()).prop_map(
        |(boundary, holes, hole_size, interior_points, seed)| GeneratorConfig {
            boundary,
            holes,
            hole_size,
            interior_points,
            seed,
        },
    )
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..9).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |pairs| {
            let mut g = Graph::new(n);
            for (u, v) in pairs {
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

fn literal(vars: usize) -> impl Strategy<Value = Literal> {
    (0..vars, any::<bool>()).prop_map(|(var, negated)| Literal { var, negated })
}

fn formula() -> impl Strategy<Value = Formula> {
    proptest::collection::vec([literal(3), literal(3), literal(3)], 1..3)
        .prop_map(|clauses| Formula::new(3, clauses).unwrap())
}

/// Face vertex sets, as a sorted list of sorted lists.
fn face_sets(e: &PlaneEmbedding) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = e
        .faces()
        .iter()
        .map(|f| {
            let mut v: Vec<usize> = f.vertices.clone();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    out.sort();
    out
}

/// Replaces every maximal path through degree-2 vertices by one edge and
/// returns the cubic graph with, per edge, the suppressed interior vertices
/// and the original endpoints.
fn suppress(g: &Graph) -> (Graph, Vec<usize>, Vec<Vec<usize>>) {
    let adj = adjacency(g);
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] != 2).collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut h = Graph::new(keep.len());
    let mut chains = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in &keep {
        for &first in &adj[s] {
            let (mut prev, mut cur) = (s, first);
            let mut inner = Vec::new();
            while deg[cur] == 2 {
                inner.push(cur);
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            let key = if s < cur || (s == cur && inner.first() < inner.last()) {
                (s, cur, inner.clone())
            } else {
                let mut r = inner.clone();
                r.reverse();
                (cur, s, r)
            };
            if seen.insert(key) {
                h.add_edge(index[s], index[cur]);
                chains.push(inner);
            }
        }
    }
    (h, keep, chains)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forward_duals_are_accepted_and_round_trip(cfg in hole_free()) {
        let t = generate(&cfg).unwrap();
        let fd = graph_to_dual(&t).unwrap();
        let g = fd.gstar.graph();
        prop_assert!(g.is_k_regular(3));
        prop_assert_eq!(brute_connectivity(g), 3);
        let d = recognize_tdrs_no_holes(g);
        let w = d.witness().expect("accepted");
        prop_assert!(triangulation_problems(w).is_empty());
        prop_assert!(isomorphic(graph_to_dual(w).unwrap().gstar.graph(), g));
        prop_assert_eq!(w.triangles.len() + w.boundary.len(), g.vertex_count());
    }

    #[test]
    fn embeddings_obey_euler_and_duality(cfg in hole_free()) {
        let t = generate(&cfg).unwrap();
        let fd = graph_to_dual(&t).unwrap();
        let e = planarity_test(fd.gstar.graph()).unwrap();
        prop_assert_eq!(euler(&e), 2);
        let d = e.dualize().embedding;
        prop_assert_eq!(euler(&d), 2);
        prop_assert_eq!(d.vertex_count(), e.face_count());
        prop_assert_eq!(d.face_count(), e.vertex_count());
        prop_assert_eq!(d.graph().edge_count(), e.graph().edge_count());
        let dd = d.dualize().embedding;
        prop_assert!(isomorphic(dd.graph(), e.graph()));
    }

    #[test]
    fn tutte_drawings_do_not_cross(cfg in hole_free()) {
        let t = generate(&cfg).unwrap();
        let fd = graph_to_dual(&t).unwrap();
        let pos = straight_line_draw(&fd.gstar).unwrap();
        prop_assert_eq!(crossing_pairs(&pos, fd.gstar.graph().edges()), 0);
    }

    #[test]
    fn true_hole_assignments_are_accepted(cfg in holey()) {
        let t = generate(&cfg).unwrap();
        let fd = graph_to_dual(&t).unwrap();
        prop_assert!(validate_assignment(&fd.gstar, &fd.assignment).is_empty());
        let d = recognize_known_holes(&fd.gstar, &fd.assignment);
        let w = d.witness().expect("accepted");
        prop_assert_eq!(w.holes.len(), cfg.holes);
        let mut got: Vec<usize> = w.holes.iter().map(Vec::len).collect();
        got.sort_unstable();
        prop_assert_eq!(got, vec![cfg.hole_size; cfg.holes]);
        prop_assert!(triangulation_problems(w).is_empty());
    }

    #[test]
    fn single_flips_are_rejected_or_realized(cfg in holey(), pick in any::<prop::sample::Index>()) {
        let t = generate(&cfg).unwrap();
        let fd = graph_to_dual(&t).unwrap();
        let entries: Vec<(usize, usize)> = fd.assignment.iter().collect();
        let (v, f) = entries[pick.index(entries.len())];
        let other = fd.gstar.faces_around(v).into_iter().find(|&g| g != f).unwrap();
        let mut h = fd.assignment.clone();
        h.insert(v, other);
        let d = recognize_known_holes(&fd.gstar, &h);
        if !validate_assignment(&fd.gstar, &h).is_empty() {
            prop_assert!(!d.is_yes());
        } else if let Some(w) = d.witness() {
            // Moving a hole edge between two holes can be a genuine
            // realization; then the witness has to check out.
            prop_assert!(triangulation_problems(w).is_empty());
            prop_assert!(isomorphic(graph_to_dual(w).unwrap().gstar.graph(), fd.gstar.graph()));
            let mut got: Vec<usize> = w.holes.iter().map(Vec::len).collect();
            got.sort_unstable();
            let mut want: Vec<usize> = (0..fd.gstar.face_count())
                .map(|f| h.iter().filter(|&(_, g)| g == f).count())
                .filter(|&c| c > 0)
                .collect();
            want.sort_unstable();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn connectivity_and_bridges_match_brute_force(g in small_graph()) {
        prop_assert_eq!(g.vertex_connectivity_at_most_3(), brute_connectivity(&g));
        if g.is_connected() {
            prop_assert_eq!(g.find_bridges().unwrap(), brute_bridges(&g));
        }
    }

    #[test]
    fn graph_text_round_trip(g in small_graph()) {
        let back = Graph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(brute_is_simple(&g), g.is_simple());
    }

    #[test]
    fn dimacs_round_trip(f in formula()) {
        prop_assert_eq!(Formula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn consistent_systems_are_feasible(
        x0 in proptest::collection::vec(-5.0f64..5.0, 4),
        rows in proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, 4), 1..7),
    ) {
        let eqs: Vec<Equation> = rows
            .iter()
            .map(|r| Equation {
                coeffs: r.iter().copied().enumerate().collect(),
                rhs: r.iter().zip(&x0).map(|(a, b)| a * b).sum(),
            })
            .collect();
        let sol = solve_feasibility(&eqs, 4);
        prop_assert!(sol.is_feasible(), "{:?}", sol.residual);
        prop_assert!(sol.residual <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn search_agrees_with_the_truth_table(f in formula()) {
        let gg = reduce(&f, AbsorberPolicy::Fold).unwrap();
        let r = exhaustive_assignment_search(&gg.gstar, DEFAULT_CAP).unwrap();
        let sat = f.truth_table_solve().is_some();
        prop_assert_eq!(r.hit.is_some(), sat);
        if let Some(hit) = r.hit {
            prop_assert!(f.eval(&assignment_to_truth(&gg, &hit.assignment).unwrap()));
        }
    }

    #[test]
    fn gadget_embedding_is_forced(f in formula()) {
        // Suppressing the degree-2 vertices leaves a simple cubic 3-connected
        // graph whose embedding is unique; subdividing it again must give
        // back the faces of the gadget graph.
        let gg = reduce(&f, AbsorberPolicy::Fold).unwrap();
        let g = gg.gstar.graph();
        let (h, keep, chains) = suppress(g);
        prop_assert!(h.is_k_regular(3));
        prop_assert!(brute_is_simple(&h));
        prop_assert_eq!(brute_connectivity(&h), 3);
        let eh = planarity_test(&h).unwrap();
        let mut rebuilt: Vec<Vec<usize>> = eh
            .faces()
            .iter()
            .map(|face| {
                let mut vs: Vec<usize> = face.vertices.iter().map(|&v| keep[v]).collect();
                for (_, e) in face.steps() {
                    vs.extend(&chains[e]);
                }
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();
        rebuilt.sort();
        prop_assert_eq!(rebuilt, face_sets(&gg.gstar));
    }
}
