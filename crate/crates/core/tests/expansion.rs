mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use pmgraph::crystals::su2_graph;
use pmgraph::expansion::{expand, expand_from, harmonic_from_t, verify_harmonic, ExpansionError};
use pmgraph::spectral::{perron_frobenius, specialize};
use pmgraph::{ExpNode, HarmonicAssignment, LaurentPoly, Monomial, Specialization, WeightedDigraph};

fn node(vertex: usize, beta: &[i32], level: usize) -> ExpNode {
    ExpNode {
        level,
        vertex,
        beta: beta.to_vec(),
    }
}

/// Vertex 0 is the empty diagram, vertex 1 the single box.
fn figure_arrows() -> BTreeSet<(ExpNode, ExpNode)> {
    let e = |b: &[i32], l| node(0, b, l);
    let s = |b: &[i32], l| node(1, b, l);
    [
        (e(&[0, 0], 0), s(&[0, 0], 1)),
        (s(&[0, 0], 1), e(&[1, 0], 2)),
        (s(&[0, 0], 1), e(&[0, 1], 2)),
        (e(&[1, 0], 2), s(&[1, 0], 3)),
        (e(&[0, 1], 2), s(&[0, 1], 3)),
        (s(&[1, 0], 3), e(&[1, 1], 4)),
        (s(&[0, 1], 3), e(&[1, 1], 4)),
        (s(&[1, 0], 3), e(&[2, 0], 4)),
        (s(&[0, 1], 3), e(&[0, 2], 4)),
        (e(&[2, 0], 4), s(&[2, 0], 5)),
        (e(&[1, 1], 4), s(&[1, 1], 5)),
        (e(&[0, 2], 4), s(&[0, 2], 5)),
        (s(&[2, 0], 5), e(&[3, 0], 6)),
        (s(&[2, 0], 5), e(&[2, 1], 6)),
        (s(&[1, 1], 5), e(&[2, 1], 6)),
        (s(&[1, 1], 5), e(&[1, 2], 6)),
        (s(&[0, 2], 5), e(&[1, 2], 6)),
        (s(&[0, 2], 5), e(&[0, 3], 6)),
    ]
    .into_iter()
    .collect()
}

#[test]
fn figure_expansion() {
    let e = expand(&two_vertex(), 6).unwrap();
    assert_eq!(e.level_sizes(), vec![1, 1, 2, 2, 3, 3, 4]);
    let got: BTreeSet<(ExpNode, ExpNode)> = e
        .arrows()
        .iter()
        .map(|a| (e.nodes()[a.from].clone(), e.nodes()[a.to].clone()))
        .collect();
    assert_eq!(got, figure_arrows());
    assert!(e.arrows().iter().all(|a| a.multiplicity == pmgraph::laurent::int(1)));
}

#[test]
fn two_cycle_is_a_path() {
    let e = expand(&two_cycle(), 4).unwrap();
    assert_eq!(e.level_sizes(), vec![1; 5]);
    for l in 0..=4 {
        assert_eq!(e.level(l), &[node(l % 2, &[], l)]);
    }
    assert_eq!(e.arrows().len(), 4);
}

#[test]
fn depth_zero() {
    let e = expand(&kschur3(), 0).unwrap();
    assert_eq!(e.nodes(), &[node(0, &[0, 0, 0], 0)]);
    assert!(e.arrows().is_empty());
    assert!(matches!(expand_from(&two_cycle(), 5, 1), Err(ExpansionError::Root(5))));
}

/// Endpoints and weight exponents of all monomial paths of length `l`.
fn brute_levels(g: &WeightedDigraph, root: usize, depth: usize) -> Vec<BTreeSet<(usize, Vec<i32>)>> {
    let split = g.split_monomial_arrows();
    let mut out = Vec::new();
    let mut paths = vec![(root, vec![0; g.nvars()])];
    for _ in 0..=depth {
        out.push(paths.iter().cloned().collect());
        let mut next = Vec::new();
        for (v, beta) in &paths {
            for a in split.arrows().iter().filter(|a| a.from == *v) {
                let b: Vec<i32> = beta.iter().zip(a.exps.exps()).map(|(x, y)| x + y).collect();
                next.push((a.to, b));
            }
        }
        paths = next;
    }
    out
}

fn test_graphs() -> Vec<WeightedDigraph> {
    vec![
        two_vertex(),
        two_cycle(),
        three_cycle(),
        kschur3(),
        qcycle_symbolic(),
        companion(),
        su2_graph(3).unwrap(),
        klein(),
    ]
}

#[test]
fn levels_match_path_enumeration() {
    for g in test_graphs() {
        let e = expand(&g, 6).unwrap();
        let brute = brute_levels(&g, 0, 6);
        for l in 0..=6 {
            let got: BTreeSet<(usize, Vec<i32>)> = e.level(l).iter().map(|n| (n.vertex, n.beta.clone())).collect();
            assert_eq!(got, brute[l]);
        }
    }
}

#[test]
fn arrows_resum_to_adjacency() {
    for g in test_graphs() {
        let a = g.adjacency_matrix();
        let m = g.nvars();
        let e = expand(&g, 5).unwrap();
        for (id, n) in e.nodes().iter().enumerate() {
            if n.level == 5 {
                continue;
            }
            let mut col: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for arr in e.children(id) {
                let c = &e.nodes()[arr.to];
                assert_eq!(c.level, n.level + 1);
                let shift: Vec<i32> = c.beta.iter().zip(&n.beta).map(|(x, y)| x - y).collect();
                let t = LaurentPoly::term(m, Monomial::new(shift), arr.multiplicity.clone());
                let acc = col.entry(c.vertex).or_insert_with(|| LaurentPoly::zero(m));
                *acc = &*acc + &t;
            }
            for i in 0..g.n() {
                let want = a.get(i, n.vertex);
                let got = col.remove(&i).unwrap_or_else(|| LaurentPoly::zero(m));
                assert_eq!(&got, want);
            }
        }
    }
}

#[test]
fn two_vertex_harmonic_values() {
    let g = two_vertex();
    let e = expand(&g, 6).unwrap();
    for (t1, t2) in [(1.0, 1.0), (0.3, 2.0), (4.0, 0.5)] {
        let th = Specialization::new(vec![t1, t2]).unwrap();
        let a = specialize(&g.adjacency_matrix(), &th).unwrap();
        let pf = perron_frobenius(&a, 0).unwrap();
        let h = harmonic_from_t(&g, 0, &pf, &th).unwrap();
        let lam = f64::sqrt(t1 + t2);
        assert!((h.s - 1.0 / lam).abs() < 1e-12);
        assert!((h.value(&node(1, &[0, 0], 1)) - 1.0).abs() < 1e-12);
        let err = (h.value(&node(0, &[1, 0], 2)) - t1 / (t1 + t2)).abs();
        assert!(err < 1e-10, "{err:e}");
        assert_eq!(h.value(&node(0, &[0, 0], 0)), 1.0);
        assert!(verify_harmonic(&h.assign(&e), &e, 1e-9).unwrap());
    }
}

#[test]
fn harmonic_on_test_graphs() {
    for g in test_graphs() {
        let t: Vec<f64> = (0..g.nvars()).map(|k| 0.5 + k as f64 * 0.75).collect();
        let th = Specialization::new(t).unwrap();
        let a = specialize(&g.adjacency_matrix(), &th).unwrap();
        let pf = perron_frobenius(&a, 0).unwrap();
        let h = harmonic_from_t(&g, 0, &pf, &th).unwrap();
        let e = expand(&g, 6).unwrap();
        let assign = h.assign(&e);
        assert!(verify_harmonic(&assign, &e, 1e-9).unwrap());
        assert_eq!(assign.values[&e.nodes()[0]], 1.0);
        // Sum rule at the root.
        let s: f64 = e
            .children(0)
            .map(|a| num_traits::ToPrimitive::to_f64(&a.multiplicity).unwrap() * assign.values[&e.nodes()[a.to]])
            .sum();
        assert!((s - 1.0).abs() < 1e-10);
    }
}

#[test]
fn constant_and_perturbed_assignments() {
    let e = expand(&two_cycle(), 4).unwrap();
    let th = Specialization::new(vec![]).unwrap();
    let ones = HarmonicAssignment {
        theta: th,
        values: e.nodes().iter().map(|n| (n.clone(), 1.0)).collect(),
    };
    assert!(verify_harmonic(&ones, &e, 1e-12).unwrap());
    let mut bad = ones.clone();
    *bad.values.get_mut(&e.nodes()[2]).unwrap() *= 1.1;
    assert!(!verify_harmonic(&bad, &e, 1e-9).unwrap());
    let mut missing = ones;
    missing.values.remove(&e.nodes()[3]);
    assert!(matches!(verify_harmonic(&missing, &e, 1e-9), Err(ExpansionError::MissingNode(_))));
}

#[test]
fn json_export_sorted_and_stable() {
    let e = expand(&two_vertex(), 4).unwrap();
    let v = e.to_json_value();
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 9);
    assert_eq!(nodes[0], serde_json::json!([0, [0, 0], 0]));
    assert_eq!(nodes[2], serde_json::json!([0, [0, 1], 2]));
    assert_eq!(nodes[3], serde_json::json!([0, [1, 0], 2]));
    let keys: Vec<(u64, u64, Vec<i64>)> = nodes
        .iter()
        .map(|n| {
            let b = n[1].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            (n[2].as_u64().unwrap(), n[0].as_u64().unwrap(), b)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(e.to_json(), expand(&two_vertex(), 4).unwrap().to_json());
    assert_eq!(v["level_sizes"], serde_json::json!([1, 1, 2, 2, 3]));
}
