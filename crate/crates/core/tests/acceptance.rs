//! Acceptance checks, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use labelkit::constructions::{
    bipartite_vertex_gap, bipartite_vertex_maximum, complete_gap_labeling, prime_product_labeling, tree_gap_labeling,
};
use labelkit::experiment::{run_gnp_experiment, ExperimentConfig};
use labelkit::graph::{bipartition, chromatic_number, edge_coloring, greedy_coloring, Graph};
use labelkit::reductions::*;
use labelkit::semantics::{induced_coloring, is_proper, max_label_used, verify_proper, Color, LabelingRule};
use labelkit::solvers::{
    brute_force_decide, degree_label_from_2, edge_gap_planar_bipartite, tsv_find, tsv_find_with_order,
    vertex_gap_algorithm1_report, ComponentRoute,
};
use labelkit::{Formula, Mode};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn graphs_on(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    })
}

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    Graph::new(n, edges).unwrap()
}

fn random_bipartite(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let a = rng.random_range(1..n);
    let edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|u| (a..n).map(move |v| (u, v)))
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    Graph::new(n, edges).unwrap()
}

fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (rng.random_range(0..v), v))).unwrap()
}

fn labelable(g: &Graph, rule: LabelingRule, k: u64) -> bool {
    brute_force_decide(g, rule, k).expect("within budget").is_yes()
}

fn criterion_1() -> Outcome {
    let g = Graph::complete(3);
    let f = complete_gap_labeling(3).unwrap();
    let start = Instant::now();
    let proper = verify_proper(&g, LabelingRule::EdgeGap, &f).unwrap().is_proper();
    let elapsed = start.elapsed();
    let colors = induced_coloring(&g, LabelingRule::EdgeGap, &f).unwrap().colors;
    let expected: Vec<Color> = [3u64, 2, 1].into_iter().map(Color::from).collect();
    let max = max_label_used(&f).unwrap();
    let pass = proper && colors == expected && max == chromatic_number(&g) as u64 + 1 && elapsed < Duration::from_millis(1);
    outcome(pass, format!("K3 gap labeling proper, c={colors:?}, max label {max}, verify {elapsed:?} (< 1 ms)"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut mismatches = 0;
    for n in 1..=6 {
        for g in graphs_on(n).filter(|g| g.is_connected()) {
            let fast = degree_label_from_2(&g).unwrap().is_yes();
            if fast != labelable(&g, LabelingRule::VertexDegree, 2) {
                mismatches += 1;
            }
            checked += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("degree 2-SAT vs brute force on all {checked} connected labelled graphs with n <= 6: {mismatches} mismatches"),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut vertex_bad, mut edge_bad, mut edge_checked, mut fallbacks) = (0, 0, 0, 0);
    let mut produced = 0;
    while produced < 300 {
        let n = rng.random_range(4..=9);
        let g = random_bipartite(&mut rng, n, 0.5);
        if !g.is_connected() {
            continue;
        }
        produced += 1;
        let report = vertex_gap_algorithm1_report(&g).unwrap();
        if report.routes.iter().any(|r| matches!(r, ComponentRoute::Fallback { .. })) {
            fallbacks += 1;
        }
        if report.outcome.is_yes() != labelable(&g, LabelingRule::VertexGap, 2) {
            vertex_bad += 1;
        }
        if g.min_degree() >= 2 {
            edge_checked += 1;
            if edge_gap_planar_bipartite(&g).unwrap().is_yes() != labelable(&g, LabelingRule::EdgeGap, 2) {
                edge_bad += 1;
            }
        }
    }
    outcome(
        vertex_bad == 0 && edge_bad == 0,
        format!(
            "300 connected bipartite graphs: Algorithm 1 mismatches {vertex_bad} ({fallbacks} used the fallback); \
             edge-gap NAE mismatches {edge_bad} of {edge_checked} with min degree >= 2"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let n = rng.random_range(1..=40);
        let t = random_tree(&mut rng, n);
        let root = rng.random_range(0..n);
        if !tree_gap_labeling(&t, root).is_ok_and(|f| is_proper(&t, LabelingRule::VertexGap, &f)) {
            failures.push("tree");
        }
    }
    for n in 3..=50 {
        let ok = complete_gap_labeling(n).is_ok_and(|f| {
            is_proper(&Graph::complete(n), LabelingRule::EdgeGap, &f) && max_label_used(&f).unwrap() <= n as u64 + 1
        });
        if !ok {
            failures.push("complete");
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(2..=20);
        let g = random_bipartite(&mut rng, n, 0.3);
        let bp = bipartition(&g).unwrap();
        if !bipartite_vertex_gap(&g, &bp).is_ok_and(|f| is_proper(&g, LabelingRule::VertexGap, &f)) {
            failures.push("bipartite gap");
        }
        if !bipartite_vertex_maximum(&g, &bp).is_ok_and(|f| is_proper(&g, LabelingRule::VertexMaximum, &f)) {
            failures.push("bipartite max");
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(1..=30);
        let g = random_graph(&mut rng, n, 0.4);
        if !prime_product_labeling(&g, &greedy_coloring(&g)).is_ok_and(|f| is_proper(&g, LabelingRule::VertexProduct, &f))
        {
            failures.push("prime product");
        }
    }
    outcome(
        failures.is_empty(),
        format!("trees, K_3..K_50, bipartite gap/max, prime product: {} failures {failures:?}", failures.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut found, mut unsound, mut unstable, mut total) = (0, 0, 0, 0);
    for n in 1..=5 {
        for g in graphs_on(n) {
            total += 1;
            let r = tsv_find(&g);
            for _ in 0..10 {
                if tsv_find_with_order(&g, &mut rng) != r {
                    unstable += 1;
                }
            }
            if r.found {
                found += 1;
                if labelable(&g, LabelingRule::VertexMaximum, n as u64) {
                    unsound += 1;
                }
            }
        }
    }
    outcome(
        unsound == 0 && unstable == 0,
        format!("{total} labelled graphs with n <= 5, {found} with a TSV: {unsound} labelable, {unstable} order-dependent results"),
    )
}

fn f(mode: Mode, n: usize, clauses: &[&[i64]]) -> Formula {
    Formula::from_ints(n, clauses, mode).unwrap()
}

fn circulant(n: usize, jumps: &[usize]) -> Graph {
    Graph::new(n, (0..n).flat_map(|v| jumps.iter().map(move |&j| (v, (v + j) % n)))).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rows: Vec<(String, bool, bool)> = Vec::new();
    let sat = |phi: &Formula| phi.truth_table_solve().is_some();

    for phi in [
        f(Mode::OneInThree, 3, &[&[1, 2, 3]]),
        f(Mode::OneInThree, 4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]),
    ] {
        let out = reduce_1in3_to_vertex_product(&phi).unwrap();
        rows.push(("1in3 vertex-product".into(), sat(&phi), labelable(&out.graph, LabelingRule::VertexProduct, 2)));
    }
    for (g, k) in [
        (Graph::cycle(5), 3),
        (Graph::complete(4), 3),
        (Graph::path(4), 3),
        (Graph::complete(5), 4),
    ] {
        let out = reduce_kcol_to_edge_gap_k(&g, k).unwrap();
        rows.push(("k-col edge-gap".into(), chromatic_number(&g) as u64 <= k, labelable(&out.graph, LabelingRule::EdgeGap, k)));
    }
    let patterns: Vec<Vec<i64>> = (0..8)
        .map(|m| (0..3).map(|b| if m >> b & 1 == 1 { -(b + 1) } else { b + 1 }).collect())
        .collect();
    let refs: Vec<&[i64]> = patterns.iter().map(|c| c.as_slice()).collect();
    for phi in [
        f(Mode::Sat, 3, &[&[1, -2, 3]]),
        f(Mode::Sat, 4, &[&[1, 2, 3], &[-1, -2, 4], &[2, -3, -4]]),
        f(Mode::Sat, 3, &refs),
    ] {
        let out = reduce_3sat2_to_edge_gap2(&phi).unwrap();
        rows.push(("3-SAT edge-gap".into(), sat(&phi), labelable(&out.graph, LabelingRule::EdgeGap, 2)));
    }
    for phi in [
        f(Mode::Nae, 3, &[&[1, 2, 3]]),
        f(Mode::Nae, 3, &[&[1, 2, -3], &[-1, 2, 3]]),
        f(Mode::Nae, 3, &[&[1, 2, 3], &[1, 2, -3], &[1, -2, 3], &[-1, 2, 3]]),
    ] {
        let out = reduce_nae3sat_to_vertex_gap2(&phi).unwrap();
        rows.push(("NAE vertex-gap".into(), sat(&phi), labelable(&out.graph, LabelingRule::VertexGap, 2)));
    }
    for g in [Graph::complete(5), circulant(6, &[1, 2]), circulant(7, &[1, 2])] {
        let out = reduce_3col_to_degree_label_k(&g, 4).unwrap();
        rows.push(("degree H*".into(), chromatic_number(&g) <= 3, labelable(&out.graph, LabelingRule::VertexDegree, 4)));
    }
    for g in [Graph::cycle(4), Graph::path(4), Graph::cycle(5), Graph::complete(3)] {
        for k in 1..=3 {
            rows.push((
                "lift".into(),
                labelable(&g, LabelingRule::VertexMaximum, k),
                labelable(&lift_max_labeling(&g), LabelingRule::VertexMaximum, k + 1),
            ));
        }
    }
    for g in [Graph::complete(3), Graph::complete(4), Graph::cycle(5)] {
        let out = reduce_3col_to_vertex_product_k(&g, 3).unwrap();
        rows.push(("3-col vertex-product".into(), chromatic_number(&g) <= 3, labelable(&out.graph, LabelingRule::VertexProduct, 3)));
    }
    let bad: Vec<&String> = rows.iter().filter(|(_, a, b)| a != b).map(|(n, _, _)| n).collect();
    outcome(bad.is_empty(), format!("{} round trips, {} disagreements {bad:?}", rows.len(), bad.len()))
}

fn criterion_7() -> Outcome {
    let gates = [
        check_gadget(&default_sum_relay(), LabelingRule::EdgeSum, 2),
        check_gadget(&default_variable_gadget(), LabelingRule::EdgeProduct, 2),
        check_gadget(&default_clause_gadget(), LabelingRule::EdgeProduct, 2),
    ];
    let gates_pass = gates.iter().all(|g| matches!(g, Ok(GadgetCheck::Pass)));
    let phi = f(Mode::Nae, 4, &[&[1, 2, 4], &[1, 2, 3], &[2, 4, 3]]);
    let out = reduce_nae3sat_to_edge_sum(&phi, &default_sum_relay()).unwrap();
    let cubic = out.graph.is_regular(3);
    outcome(
        gates_pass && cubic,
        format!(
            "default gadgets pass: {gates_pass}; figure-2 formula gives {} vertices, 3-regular: {cubic}",
            out.graph.vertex_count()
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let g = Graph::complete(4);
    let out = reduce_class1_to_vertex_max3(&g).unwrap();
    let colors = edge_coloring(&g, 3).unwrap();
    let cert = class1_certificate(&g, &colors).unwrap();
    let proper = is_proper(&out.graph, LabelingRule::VertexMaximum, &cert);
    let elapsed = start.elapsed();
    outcome(
        proper && out.graph.vertex_count() == 36 && elapsed < Duration::from_secs(1),
        format!("K4 certificate on {}-vertex graph proper: {proper} in {elapsed:?} (< 1 s)", out.graph.vertex_count()),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let small = run_gnp_experiment(ExperimentConfig { n: 200, p: 0.5, trials: 100, seed: 1 }).unwrap();
    let large = run_gnp_experiment(ExperimentConfig { n: 1000, p: 0.5, trials: 20, seed: 1 }).unwrap();
    let elapsed = start.elapsed();
    let (a, b) = (small.success_rate.unwrap(), large.success_rate.unwrap());
    outcome(
        a >= 0.95 && b == 1.0 && elapsed < Duration::from_secs(120),
        format!("seed 1: n=200 rate {a:.2} (>= 0.95), n=1000 rate {b:.2} (= 1.00), {elapsed:.1?} (< 2 min)"),
    )
}

/// Largest subset of `A_k` without a ratio in `B_k`, by checking every subset.
fn alpha_by_subsets(k: u64) -> (usize, Vec<u64>) {
    let a = products_set(k);
    let mut best: (usize, Vec<u64>) = (0, Vec::new());
    for mask in 0u64..1 << a.len() {
        let set: Vec<u64> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        if set.len() < best.0 {
            continue;
        }
        let ok = set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| !ratio_in_b(x, y, k)));
        if ok && (set.len() > best.0 || set < best.1) {
            best = (set.len(), set);
        }
    }
    best
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let three = alpha_k(3).unwrap();
    let mut agree = three == (3, vec![1, 4, 9]);
    for k in 3..=5 {
        agree &= alpha_k(k).unwrap() == alpha_by_subsets(k);
    }
    let values: Vec<usize> = (3..=8).map(|k| alpha_k(k).unwrap().0).collect();
    let elapsed = start.elapsed();
    outcome(
        agree && values.iter().all(|&a| a >= 3) && elapsed < Duration::from_secs(5),
        format!("alpha(3) = {three:?}, subset search agrees for k <= 5: {agree}, alpha(3..=8) = {values:?}, {elapsed:.1?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("verifier fixture", criterion_1),
        ("degree oracle agreement", criterion_2),
        ("gap oracle agreement", criterion_3),
        ("constructions proper", criterion_4),
        ("TSV soundness", criterion_5),
        ("reduction round trips", criterion_6),
        ("gadget gates", criterion_7),
        ("class-1 certificate", criterion_8),
        ("random graphs", criterion_9),
        ("alpha(k)", criterion_10),
    ];
    let limits = [1, 30, 60, 30, 30, 600, 60, 1, 120, 5];
    let mut failed = 0;
    for (i, ((name, run), limit)) in criteria.iter().zip(limits).enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= Duration::from_secs(limit);
        failed += usize::from(!pass);
        println!(
            "criterion {:2} {}: {} | {} | {:.2?} (limit {limit} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            elapsed
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
