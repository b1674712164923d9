mod common;

use common::*;
use tridual::decision::{Reason, Verdict};
use tridual::embed::planarity_test;
use tridual::geometry::Point;
use tridual::graph::{named, Graph};
use tridual::iso::isomorphic;
use tridual::known_holes::{
    decompose_one_edge_cuts, holes_necessity_check, recognize_known_holes, validate_assignment,
    HoleAssignment, Violation,
};
use tridual::no_holes::{
    interior_tree_check, realize_with_face, recognize_no_holes, recognize_tdrs_no_holes,
};
use tridual::pipeline::earclip::triangulate;
use tridual::pipeline::{graph_to_dual, triangulation_to_graph};
use tridual::Triangulation;

fn tri(points: Vec<Point>, boundary: Vec<usize>, holes: Vec<Vec<usize>>) -> Triangulation {
    let triangles = triangulate(&points, &boundary, &holes).unwrap();
    Triangulation {
        points,
        triangles,
        boundary,
        holes,
    }
}

fn quad_fan() -> Triangulation {
    Triangulation {
        points: vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ],
        triangles: vec![[0, 1, 2], [0, 2, 3]],
        boundary: vec![0, 1, 2, 3],
        holes: vec![],
    }
}

fn triangle_with_center() -> Triangulation {
    Triangulation {
        points: vec![
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(0.0, 3.0),
            Point::new(1.0, 1.0),
        ],
        triangles: vec![[0, 1, 3], [1, 2, 3], [2, 0, 3]],
        boundary: vec![0, 1, 2],
        holes: vec![],
    }
}

fn square_annulus() -> Triangulation {
    let p = |x, y| Point::new(x, y);
    tri(
        vec![
            p(0.0, 0.0),
            p(4.0, 0.0),
            p(4.0, 4.0),
            p(0.0, 4.0),
            p(1.0, 1.0),
            p(3.0, 1.0),
            p(3.0, 3.0),
            p(1.0, 3.0),
        ],
        vec![0, 1, 2, 3],
        vec![vec![4, 5, 6, 7]],
    )
}

fn subdivided_prism() -> Graph {
    let edges = named::prism().edges().to_vec();
    let mut g = Graph::new(7);
    for &(u, v) in &edges[1..] {
        g.add_edge(u, v);
    }
    let (u, v) = edges[0];
    g.add_edge(u, 6);
    g.add_edge(6, v);
    g
}

#[test]
fn no_holes_examples() {
    let d = recognize_tdrs_no_holes(&named::complete(4));
    assert_eq!(d.verdict(), &Verdict::YesWithoutInteriorPoints);
    let t = d.witness().unwrap();
    assert_eq!((t.points.len(), t.triangles.len()), (3, 1));
    assert!(triangulation_problems(t).is_empty());

    let d = recognize_tdrs_no_holes(&named::complete_bipartite(3, 3));
    assert_eq!(d.reason(), Some(&Reason::NotPlanar));
    let d = recognize_tdrs_no_holes(&subdivided_prism());
    assert_eq!(d.reason(), Some(&Reason::NotThreeRegular));
}

#[test]
fn tree_check_on_forward_duals() {
    let fan = graph_to_dual(&quad_fan()).unwrap();
    assert!(interior_tree_check(&fan.gstar, fan.gstar.outer_face()));
    let inner = fan.triangle_of.iter().filter(|t| t.is_some()).count();
    assert_eq!(inner, 2);

    let center = graph_to_dual(&triangle_with_center()).unwrap();
    assert!(!interior_tree_check(&center.gstar, center.gstar.outer_face()));

    let k4 = planarity_test(&named::complete(4)).unwrap();
    assert!((0..4).all(|f| interior_tree_check(&k4, f)));
}

#[test]
fn realizations_of_small_duals() {
    let fan = recognize_no_holes(&named::prism(), true);
    let t = fan.witness().unwrap();
    assert_eq!((t.points.len(), t.triangles.len()), (4, 2));
    assert!(t.interior_points().is_empty());
    assert!(triangulation_problems(t).is_empty());

    // Taking a triangular face of the prism as the face at infinity leaves
    // the other triangle inside: three triangles around one point.
    let e = planarity_test(&named::prism()).unwrap();
    let f = e.faces().iter().find(|f| f.len() == 3).unwrap().id;
    let t = realize_with_face(&e, f).unwrap();
    assert_eq!(t.triangles.len(), 3);
    assert_eq!(t.interior_points().len(), 1);
    assert_eq!(t.boundary.len(), 3);
    assert!(triangulation_problems(&t).is_empty());
}

#[test]
fn triangulation_graph_examples() {
    let single = Triangulation {
        points: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)],
        triangles: vec![[0, 1, 2]],
        boundary: vec![0, 1, 2],
        holes: vec![],
    };
    let tg = triangulation_to_graph(&single).unwrap();
    assert!(isomorphic(&tg.graph, &named::complete(4)));
    let fd = graph_to_dual(&single).unwrap();
    assert!(isomorphic(fd.gstar.graph(), &named::complete(4)));

    let tg = triangulation_to_graph(&quad_fan()).unwrap();
    assert_eq!((tg.graph.vertex_count(), tg.graph.edge_count()), (5, 9));
    let fd = graph_to_dual(&quad_fan()).unwrap();
    assert_eq!(fd.gstar.vertex_count(), 6);
    assert!(fd.gstar.graph().is_k_regular(3));

    let ann = square_annulus();
    let tg = triangulation_to_graph(&ann).unwrap();
    for h in 4..8 {
        assert!(!tg.graph.has_edge(h, tg.infinity));
    }
    let fd = graph_to_dual(&ann).unwrap();
    assert_eq!(fd.gstar.graph().degree_profile().iter().filter(|&&d| d == 2).count(), 4);
}

#[test]
fn forward_round_trip_is_isomorphic() {
    for i in 0..30 {
        let t = instance(&hole_free_config(i));
        let fd = graph_to_dual(&t).unwrap();
        let d = recognize_tdrs_no_holes(fd.gstar.graph());
        let w = d.witness().expect("forward dual accepted");
        assert!(triangulation_problems(w).is_empty());
        let back = graph_to_dual(w).unwrap();
        assert!(isomorphic(back.gstar.graph(), fd.gstar.graph()), "instance {i}");
    }
}

#[test]
fn annulus_with_true_assignment_and_flips() {
    let fd = graph_to_dual(&square_annulus()).unwrap();
    let d = recognize_known_holes(&fd.gstar, &fd.assignment);
    let t = d.witness().expect("annulus accepted");
    assert_eq!(t.holes.len(), 1);
    assert_eq!(t.holes[0].len(), 4);
    assert_eq!(t.triangles.len(), 8);
    assert!(triangulation_problems(t).is_empty());

    for (v, f) in fd.assignment.iter() {
        let other = fd.gstar.faces_around(v).into_iter().find(|&g| g != f).unwrap();
        let mut h = fd.assignment.clone();
        h.insert(v, other);
        assert!(!recognize_known_holes(&fd.gstar, &h).is_yes(), "flip of {v}");
    }
}

#[test]
fn assignment_validation_rules() {
    let fd = graph_to_dual(&square_annulus()).unwrap();
    let (v, f) = fd.assignment.iter().next().unwrap();
    let other = fd.gstar.faces_around(v).into_iter().find(|&g| g != f).unwrap();
    let mut h = fd.assignment.clone();
    h.insert(v, other);
    let bad = validate_assignment(&fd.gstar, &h);
    assert!(bad.contains(&Violation::FaceCount { face: other, count: 1 }));
    assert!(bad
        .iter()
        .any(|x| x.to_string() == format!("face {other} with 1 < 3 assigned")));

    let far = (0..fd.gstar.face_count())
        .find(|g| !fd.gstar.faces_around(v).contains(g))
        .unwrap();
    let mut h = fd.assignment.clone();
    h.insert(v, far);
    assert!(validate_assignment(&fd.gstar, &h).contains(&Violation::NotIncident { vertex: v, face: far }));
}

#[test]
fn cubic_graphs_agree_with_the_no_holes_recognizer() {
    for g in [named::complete(4), named::prism(), named::cube()] {
        let e = planarity_test(&g).unwrap();
        let a = recognize_known_holes(&e, &HoleAssignment::new());
        let b = recognize_tdrs_no_holes(&g);
        assert_eq!(a.is_yes(), b.is_yes());
    }
}

fn prisms_joined(k: usize) -> Graph {
    // `k` prisms, consecutive copies joined by an edge between their vertex 0
    // and vertex 3.
    let mut g = Graph::new(6 * k);
    for c in 0..k {
        for &(u, v) in named::prism().edges() {
            g.add_edge(6 * c + u, 6 * c + v);
        }
    }
    for c in 1..k {
        g.add_edge(6 * (c - 1) + 3, 6 * c);
    }
    g
}

#[test]
fn one_edge_cut_decomposition() {
    let g = prisms_joined(2);
    let e = planarity_test(&g).unwrap();
    let ct = decompose_one_edge_cuts(&e).unwrap();
    assert_eq!((ct.components.len(), ct.cuts.len()), (2, 1));
    assert_eq!(brute_bridges(&g).len(), 1);

    let g = prisms_joined(3);
    let e = planarity_test(&g).unwrap();
    let ct = decompose_one_edge_cuts(&e).unwrap();
    assert_eq!((ct.components.len(), ct.cuts.len()), (3, 2));
    assert_eq!(brute_bridges(&g).len(), 2);
    // leaf first: the first part split off touches only one cut
    let first = &ct.components[ct.cuts[0].child];
    let touching = ct
        .cuts
        .iter()
        .filter(|c| {
            let (u, v) = g.endpoints(c.edge);
            first.contains(&u) || first.contains(&v)
        })
        .count();
    assert_eq!(touching, 1);
    assert!(ct.components.last().unwrap().contains(&0));
}

#[test]
fn necessity_signal_examples() {
    assert!(!holes_necessity_check(&named::complete(4)));
    assert!(holes_necessity_check(&subdivided_prism()));
    let fd = graph_to_dual(&square_annulus()).unwrap();
    assert!(holes_necessity_check(fd.gstar.graph()));
}

#[test]
fn holey_generator_streams_are_never_cubic() {
    for i in 0..20 {
        let t = instance(&holey_config(i));
        let fd = graph_to_dual(&t).unwrap();
        assert!(!fd.gstar.graph().is_k_regular(3));
    }
}
