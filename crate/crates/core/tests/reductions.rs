use labelkit::graph::{chromatic_number, Graph};
use labelkit::reductions::*;
use labelkit::semantics::{induced_coloring, Color, LabelingRule};
use labelkit::solvers::{brute_force_decide, brute_force_decide_with_budget};
use labelkit::{Formula, Mode};

fn labelable(g: &Graph, rule: LabelingRule, k: u64) -> bool {
    brute_force_decide(g, rule, k).expect("within budget").is_yes()
}

fn f(mode: Mode, n: usize, clauses: &[&[i64]]) -> Formula {
    Formula::from_ints(n, clauses, mode).unwrap()
}

fn satisfiable(phi: &Formula) -> bool {
    phi.truth_table_solve().is_some()
}

#[test]
fn nae_edge_sum_round_trip() {
    let relay = default_sum_relay();
    let catalog = [
        f(Mode::Nae, 3, &[&[1, 2, 3], &[1, 2, 3]]),
        f(Mode::Nae, 4, &[&[1, 2, 4], &[1, 2, 3], &[2, 4, 3]]),
        // forces x = y = z: not NAE-satisfiable
        f(Mode::Nae, 3, &[&[1, 1, 2], &[2, 2, 3], &[3, 3, 1], &[1, 2, 3]]),
        f(Mode::Nae, 2, &[&[1, 1, 2], &[1, 2, 2]]),
    ];
    for phi in &catalog {
        let out = reduce_nae3sat_to_edge_sum(phi, &relay).unwrap();
        assert!(out.graph.is_regular(3));
        assert_eq!(labelable(&out.graph, LabelingRule::EdgeSum, 2), satisfiable(phi), "{phi:?}");
    }
}

#[test]
fn one_in_three_edge_product_round_trip() {
    let (h, i) = (default_variable_gadget(), default_clause_gadget());
    let sat = f(Mode::OneInThree, 3, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
    let unsat = f(Mode::OneInThree, 4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
    for phi in [&sat, &unsat] {
        let out = reduce_1in3_to_edge_product(phi, &h, &i).unwrap();
        assert_eq!(labelable(&out.graph, LabelingRule::EdgeProduct, 2), satisfiable(phi));
    }
    assert!(reduce_1in3_to_edge_product(&f(Mode::OneInThree, 3, &[&[1, 2, 3]]), &h, &i).is_err());
}

#[test]
fn broken_clause_gadget_is_rejected_before_assembly() {
    let sat = f(Mode::OneInThree, 3, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
    let mut i = default_clause_gadget();
    i.graph = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
    assert!(matches!(
        reduce_1in3_to_edge_product(&sat, &default_variable_gadget(), &i),
        Err(ReductionError::GadgetRejected { .. })
    ));
}

#[test]
fn one_in_three_vertex_product_round_trip() {
    let sat = f(Mode::OneInThree, 3, &[&[1, 2, 3]]);
    let out = reduce_1in3_to_vertex_product(&sat).unwrap();
    let w = brute_force_decide(&out.graph, LabelingRule::VertexProduct, 2).unwrap();
    let w = w.witness().expect("satisfiable");
    assert_eq!((0..3).filter(|&x| w.get(x) == 2).count(), 1);
    let c = induced_coloring(&out.graph, LabelingRule::VertexProduct, w).unwrap();
    assert_eq!(c.colors[out.clause_map[0]], Color::Small(16));

    let unsat = f(Mode::OneInThree, 4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
    let out = reduce_1in3_to_vertex_product(&unsat).unwrap();
    assert!(!labelable(&out.graph, LabelingRule::VertexProduct, 2));
}

#[test]
fn three_col_vertex_product_round_trip() {
    for g in [Graph::complete(3), Graph::complete(4), Graph::cycle(5)] {
        let out = reduce_3col_to_vertex_product_k(&g, 3).unwrap();
        let big_n = g.vertex_count();
        assert_eq!(out.graph.vertex_count(), 3 * big_n + 2 * big_n);
        assert_eq!(labelable(&out.graph, LabelingRule::VertexProduct, 3), chromatic_number(&g) <= 3);
    }
}

#[test]
fn three_sat_edge_gap_round_trip() {
    let all_patterns: Vec<Vec<i64>> = (0..8)
        .map(|m| (0..3).map(|b| if m >> b & 1 == 1 { -(b + 1) } else { b + 1 }).collect())
        .collect();
    let refs: Vec<&[i64]> = all_patterns.iter().map(|c| c.as_slice()).collect();
    let catalog = [
        f(Mode::Sat, 3, &[&[1, -2, 3]]),
        f(Mode::Sat, 4, &[&[1, 2, 3], &[-1, -2, 4], &[2, -3, -4]]),
        f(Mode::Sat, 3, &refs),
    ];
    for phi in &catalog {
        let out = reduce_3sat2_to_edge_gap2(phi).unwrap();
        assert_eq!(out.graph.vertex_count(), 4 * phi.var_count() + 4 * phi.clauses().len() + 6);
        assert_eq!(labelable(&out.graph, LabelingRule::EdgeGap, 2), satisfiable(phi), "{phi:?}");
    }
}

#[test]
fn nae_vertex_gap_round_trip() {
    let catalog = [
        f(Mode::Nae, 3, &[&[1, 2, 3]]),
        f(Mode::Nae, 3, &[&[1, 2, -3], &[-1, 2, 3]]),
        f(Mode::Nae, 3, &[&[1, 2, 3], &[1, 2, -3], &[1, -2, 3], &[-1, 2, 3]]),
    ];
    for phi in &catalog {
        let out = reduce_nae3sat_to_vertex_gap2(phi).unwrap();
        assert_eq!(labelable(&out.graph, LabelingRule::VertexGap, 2), satisfiable(phi), "{phi:?}");
    }
}

#[test]
fn kcol_edge_gap_round_trip() {
    let cases = [
        (Graph::cycle(5), 3),
        (Graph::complete(4), 3),
        (Graph::path(4), 3),
        (Graph::complete(5), 4),
    ];
    for (g, k) in cases {
        let out = reduce_kcol_to_edge_gap_k(&g, k).unwrap();
        assert_eq!(out.graph.vertex_count(), 3 * g.vertex_count());
        let yes = labelable(&out.graph, LabelingRule::EdgeGap, k);
        assert_eq!(yes, chromatic_number(&g) as u64 <= k, "{:?} k={k}", g.edges());
    }
}

fn circulant(n: usize, jumps: &[usize]) -> Graph {
    Graph::new(n, (0..n).flat_map(|v| jumps.iter().map(move |&j| (v, (v + j) % n)))).unwrap()
}

#[test]
fn degree_round_trip() {
    let octahedron = circulant(6, &[1, 2]);
    assert!(octahedron.is_regular(4));
    let cases = [(Graph::complete(5), false), (octahedron, true), (circulant(7, &[1, 2]), false)];
    for (g, colourable) in cases {
        assert_eq!(chromatic_number(&g) <= 3, colourable);
        let out = reduce_3col_to_degree_label_k(&g, 4).unwrap();
        assert_eq!(labelable(&out.graph, LabelingRule::VertexDegree, 4), colourable);
    }
}

#[test]
fn lift_round_trip() {
    for g in [Graph::cycle(4), Graph::path(4), Graph::cycle(5)] {
        for k in 1..=3 {
            let before = labelable(&g, LabelingRule::VertexMaximum, k);
            let after = labelable(&lift_max_labeling(&g), LabelingRule::VertexMaximum, k + 1);
            assert_eq!(before, after, "{:?} k={k}", g.edges());
        }
    }
    let lifted = lift_max_labeling(&Graph::complete(3));
    let out = brute_force_decide_with_budget(&lifted, LabelingRule::VertexMaximum, 4, 1_000_000).unwrap();
    assert!(!out.is_yes());
}

#[test]
fn deterministic_numbering() {
    let phi = f(Mode::Nae, 4, &[&[1, 2, 4], &[1, 2, 3], &[2, 4, 3]]);
    let a = reduce_nae3sat_to_edge_sum(&phi, &default_sum_relay()).unwrap();
    let b = reduce_nae3sat_to_edge_sum(&phi, &default_sum_relay()).unwrap();
    assert_eq!(a, b);
}
