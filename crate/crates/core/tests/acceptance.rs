mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use pmgraph::crystals::{kr_column_graph, su2_fusion_oracle, su2_graph};
use pmgraph::expansion::{expand, harmonic_from_t, verify_harmonic};
use pmgraph::laurent::{int, rat};
use pmgraph::linalg::{adjugate_inverse, det, minimal_polynomial};
use pmgraph::pm::{
    gen_perm_of, is_positively_multiplicative_at, maximal_index_group, positive_roots, rebase, structure_constants,
    Failure, Verdict,
};
use pmgraph::spectral::{dimension_vector, perron_frobenius, specialize};
use pmgraph::symmetrize::{orbits, symmetrized_constants, symmetrized_constants_normalized};
use pmgraph::{
    compute_basis, ExpNode, FracMatrix, LaurentPoly, ModuleAutomorphism, Monomial, PolyFraction, PolyUnivariate,
    Specialization, StructureConstants, WeightedDigraph,
};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run(id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    });
    let took = start.elapsed();
    let res = match (res, limit) {
        (Ok(_), Some(l)) if took > l => Err(format!("took {took:?}, limit {l:?}")),
        (r, _) => r,
    };
    let ok = res.is_ok();
    let detail = match res {
        Ok(s) | Err(s) => s,
    };
    println!(
        "{} criterion {id} {name} ({:.3}s){}{}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        if detail.is_empty() { "" } else { ": " },
        detail
    );
    ok
}

fn uni(c: &[&str], m: usize) -> PolyUnivariate {
    PolyUnivariate::from_polys(c.iter().map(|s| p(s, m)).collect())
}

fn sparse_uni(terms: &[(usize, i64)], deg: usize) -> PolyUnivariate {
    let mut c = vec![LaurentPoly::zero(0); deg + 1];
    for &(k, x) in terms {
        c[k] = LaurentPoly::from_int(0, x);
    }
    PolyUnivariate::from_polys(c)
}

fn counterexample_suite() -> Outcome {
    let g = counterexample();
    let d: Vec<LaurentPoly> = (0..3).map(|i| det(&g.path_count_matrix(i).unwrap())).collect();
    ensure!(d[0].is_zero(), "det M_0 = {:?}", d[0]);
    ensure!(d[1] == p("z2 - z1^2", 2), "det M_1 wrong");
    ensure!(d[2] == p("z2^2 - z1", 2), "det M_2 wrong");
    let mu = minimal_polynomial(&g.adjacency_matrix()).unwrap();
    let want = uni(&["1", "1"], 2).mul(&uni(&["-z1 - z2", "-1", "1"], 2));
    ensure!(mu == want, "mu = {}", mu.to_string_with(&names(2), "X"));
    Ok(String::new())
}

fn kschur3_suite() -> Outcome {
    let g = kschur3();
    let m0 = g.path_count_matrix(0).unwrap();
    let shown_m0 = mat(
        &[
            &["1", "0", "0", "z1 + z3", "2*z2", "0"],
            &["0", "1", "0", "0", "z1 + z3", "4*z2"],
            &["0", "0", "1", "0", "0", "z1 + 3*z3"],
            &["0", "0", "1", "0", "0", "3*z1 + z3"],
            &["0", "0", "0", "2", "0", "0"],
            &["0", "0", "0", "0", "2", "0"],
        ],
        3,
    );
    ensure!(m0 == shown_m0, "M_0 differs");
    let inv = adjugate_inverse(&m0).unwrap();
    let f = |n: &str, d: &str| PolyFraction::new(p(n, 3), p(d, 3)).unwrap();
    let z = || f("0", "1");
    let shown_inv = [
        vec![f("1", "1"), z(), z(), z(), f("-z1 - z3", "2"), f("-z2", "1")],
        vec![z(), f("1", "1"), f("2*z2", "z1 - z3"), f("2*z2", "z3 - z1"), z(), f("-z1 - z3", "2")],
        vec![z(), z(), f("3*z1 + z3", "2*z1 - 2*z3"), f("z1 + 3*z3", "2*z3 - 2*z1"), z(), z()],
        vec![z(), z(), z(), z(), f("1", "2"), z()],
        vec![z(), z(), z(), z(), z(), f("1", "2")],
        vec![z(), z(), f("-1", "2*z1 - 2*z3"), f("-1", "2*z3 - 2*z1"), z(), z()],
    ];
    for i in 0..6 {
        for j in 0..6 {
            ensure!(inv.entry(i, j) == shown_inv[i][j], "M_0^-1 entry ({i},{j})");
        }
    }
    let b = compute_basis(&g, 0).unwrap();
    let b2 = mat(
        &[
            &["0", "z1", "z2", "0", "0", "z1*z3"],
            &["0", "0", "z1", "0", "z2", "0"],
            &["1", "0", "0", "0", "0", "0"],
            &["0", "0", "0", "0", "z1", "z2"],
            &["0", "1", "0", "0", "0", "z1"],
            &["0", "0", "0", "1", "0", "0"],
        ],
        3,
    );
    ensure!(b.b(2) == &FracMatrix::from_poly(b2), "b_2 differs");
    ensure!(is_positively_multiplicative_at(&b).is_yes(), "PM verdict is not yes");
    for (i, bi) in b.basis().iter().enumerate() {
        let m = bi.to_poly_matrix().ok_or(format!("b_{i} not polynomial"))?;
        for e in m.rows().iter().flatten() {
            ensure!(
                e.is_nonneg() && e.terms().all(|(m, _)| m.exps().iter().all(|&x| x >= 0)),
                "b_{i} has an entry outside Q+[z1,z2,z3]"
            );
        }
    }
    Ok(String::new())
}

fn kr_minpoly_suite() -> Outcome {
    let g5 = kr_column_graph(2, 5).unwrap();
    let g6 = kr_column_graph(2, 6).unwrap();
    ensure!(g5.n() == 10 && g6.n() == 15, "vertex counts {} {}", g5.n(), g6.n());
    let mu5 = minimal_polynomial(&g5.adjacency_matrix()).unwrap();
    ensure!(mu5 == sparse_uni(&[(0, -1), (5, -11), (10, 1)], 10), "mu(2,5) = {}", mu5.to_string_with(&[], "X"));
    let mu6 = minimal_polynomial(&g6.adjacency_matrix()).unwrap();
    ensure!(mu6 == sparse_uni(&[(1, -27), (7, -26), (13, 1)], 13), "mu(2,6) = {}", mu6.to_string_with(&[], "X"));
    Ok(String::new())
}

fn su2_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for l in 1..=8u32 {
        let g = su2_graph(l).unwrap();
        let b = compute_basis(&g, 0).unwrap();
        let c = structure_constants(&b).unwrap();
        let o = su2_fusion_oracle(l);
        let n = l as usize + 1;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ensure!(c.get(i, j, k) == o.get(i, j, k), "l={l}: c[{i}][{j}][{k}]");
                }
            }
        }
        let a = g.adjacency_matrix().evaluate(&[]).unwrap();
        let pf = perron_frobenius(&a, 0).unwrap();
        let h = (l + 2) as f64;
        let err = (pf.eigenvalue - 2.0 * (PI / h).cos()).abs();
        ensure!(err <= 1e-9, "l={l}: eigenvalue off by {err:e}");
        for (a, v) in pf.left_vector.iter().enumerate() {
            let want = ((a + 1) as f64 * PI / h).sin() / (PI / h).sin();
            let err = (v - want).abs();
            worst = worst.max(err);
            ensure!(err <= 1e-9, "l={l}: PF vector entry {a} off by {err:e}");
        }
        let grp = maximal_index_group(&b).unwrap();
        let l = l as usize;
        ensure!(grp.elements() == [0, l], "l={l}: I_m = {:?}", grp.elements());
        ensure!(
            grp.product(l, l) == 0 && grp.product(0, l) == l && grp.product(l, 0) == l && grp.product(0, 0) == 0,
            "l={l}: table is not Z/2"
        );
    }
    Ok(format!("max PF vector error {worst:.1e}"))
}

fn qcycle_suite() -> Outcome {
    let b = compute_basis(&qcycle_at_one(), 0).unwrap();
    ensure!(is_positively_multiplicative_at(&b).is_yes(), "not PM at v0");
    let mut report = Vec::new();
    for j in [1, 2] {
        let r = rebase(&b, j).unwrap();
        match is_positively_multiplicative_at(&r) {
            Verdict::No(w) if w.failure == Failure::NegativeCoefficient => report.push(format!("v{j} {w}")),
            v => return Err(format!("v{j}: {v:?}")),
        }
    }
    Ok(report.join("; "))
}

fn expansion_suite() -> Outcome {
    let node = |v: usize, b: [i32; 2], l: usize| ExpNode {
        level: l,
        vertex: v,
        beta: b.to_vec(),
    };
    let e = |b, l| node(0, b, l);
    let s = |b, l| node(1, b, l);
    let figure: BTreeSet<(ExpNode, ExpNode)> = [
        (e([0, 0], 0), s([0, 0], 1)),
        (s([0, 0], 1), e([1, 0], 2)),
        (s([0, 0], 1), e([0, 1], 2)),
        (e([1, 0], 2), s([1, 0], 3)),
        (e([0, 1], 2), s([0, 1], 3)),
        (s([1, 0], 3), e([1, 1], 4)),
        (s([0, 1], 3), e([1, 1], 4)),
        (s([1, 0], 3), e([2, 0], 4)),
        (s([0, 1], 3), e([0, 2], 4)),
        (e([2, 0], 4), s([2, 0], 5)),
        (e([1, 1], 4), s([1, 1], 5)),
        (e([0, 2], 4), s([0, 2], 5)),
        (s([2, 0], 5), e([3, 0], 6)),
        (s([2, 0], 5), e([2, 1], 6)),
        (s([1, 1], 5), e([2, 1], 6)),
        (s([1, 1], 5), e([1, 2], 6)),
        (s([0, 2], 5), e([1, 2], 6)),
        (s([0, 2], 5), e([0, 3], 6)),
    ]
    .into_iter()
    .collect();
    let g = two_vertex();
    let x = expand(&g, 6).unwrap();
    ensure!(x.level_sizes() == [1, 1, 2, 2, 3, 3, 4], "level sizes {:?}", x.level_sizes());
    let got: BTreeSet<(ExpNode, ExpNode)> = x
        .arrows()
        .iter()
        .map(|a| (x.nodes()[a.from].clone(), x.nodes()[a.to].clone()))
        .collect();
    ensure!(got == figure, "arrow pattern differs");
    let th = Specialization::new(vec![1.0, 1.0]).unwrap();
    let pf = perron_frobenius(&specialize(&g.adjacency_matrix(), &th).unwrap(), 0).unwrap();
    let h = harmonic_from_t(&g, 0, &pf, &th).unwrap();
    ensure!(verify_harmonic(&h.assign(&x), &x, 1e-9).unwrap(), "not harmonic at 1e-9");
    Ok(String::new())
}

fn dimension_suite() -> Outcome {
    let cases = [
        (group_algebra(3), vec![1.0, 1.0, 1.0], 1e-10),
        (character_ring(&S3_CLASSES, &S3_TABLE), vec![1.0, 1.0, 2.0], 1e-8),
    ];
    for (c, want, tol) in cases {
        let t = c.specialize(&[]).unwrap();
        let d = dimension_vector(&t).unwrap();
        for (x, y) in d.d.iter().zip(&want) {
            ensure!((x - y).abs() <= tol, "d = {:?}", d.d);
        }
        for i in 0..t.n {
            for j in 0..t.n {
                let rhs: f64 = (0..t.n).map(|k| t.get(i, j, k) * d.d[k]).sum();
                ensure!((d.d[i] * d.d[j] - rhs).abs() <= tol, "morphism identity at ({i},{j})");
            }
        }
    }
    Ok(String::new())
}

fn corollary(c: &StructureConstants, w: &ModuleAutomorphism) -> Result<(), String> {
    let raw = symmetrized_constants(c, w).map_err(|e| e.to_string())?;
    let m = w.order() as i64;
    let nv = c.nvars();
    for a in 0..raw.orbits.len() {
        for b in 0..raw.orbits.len() {
            let want = if a == b { PolyFraction::constant(nv, int(m)) } else { PolyFraction::zero(nv) };
            ensure!(raw.structure.get(0, a, b) == &want, "s_0 s_{a} has {b}-coefficient {:?}", raw.structure.get(0, a, b));
        }
    }
    Ok(())
}

fn symmetrize_suite() -> Outcome {
    let ones = |n: usize| vec![LaurentPoly::one(0); n];
    let constant = |x: i64| PolyFraction::constant(0, int(x));
    let z3 = group_algebra(3);
    let swap = ModuleAutomorphism::new(vec![0, 2, 1], ones(3)).unwrap();
    let s = symmetrized_constants_normalized(&z3, &swap).unwrap();
    ensure!(
        s.structure.get(1, 1, 0) == &constant(2) && s.structure.get(1, 1, 1) == &constant(1),
        "s_1^2 != 2 s_0 + s_1"
    );

    let s4 = character_ring(&S4_CLASSES, &S4_TABLE);
    let twist = ModuleAutomorphism::new(vec![4, 3, 2, 1, 0], ones(5)).unwrap();
    ensure!(orbits(&twist) == vec![vec![0, 4], vec![1, 3], vec![2]], "S4 orbits {:?}", orbits(&twist));

    let mut tested = vec![(z3.clone(), swap), (s4, twist)];
    let s3 = character_ring(&S3_CLASSES, &S3_TABLE);
    tested.push((s3.clone(), ModuleAutomorphism::new(vec![1, 0, 2], ones(3)).unwrap()));
    tested.push((s3, ModuleAutomorphism::identity(3, 0)));
    for l in 1..=6u32 {
        let n = l as usize + 1;
        tested.push((su2_fusion_oracle(l), ModuleAutomorphism::new((0..n).rev().collect(), ones(n)).unwrap()));
    }
    let kg = WeightedDigraph::from_adjacency(names(6), None, &klein_u()).unwrap();
    let b = compute_basis(&kg, 0).unwrap();
    let c = structure_constants(&b).unwrap();
    for &i in maximal_index_group(&b).unwrap().elements() {
        let g = gen_perm_of(b.b(i)).unwrap();
        tested.push((c.clone(), ModuleAutomorphism::new(g.sigma().to_vec(), g.scalars().to_vec()).unwrap()));
    }
    let count = tested.len();
    for (k, (c, w)) in tested.iter().enumerate() {
        corollary(c, w).map_err(|e| format!("automorphism {k}: {e}"))?;
    }
    Ok(format!("{count} automorphisms"))
}

fn random_poly(rng: &mut impl Rng, m: usize, terms: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        m,
        (0..terms).map(|_| {
            let e: Vec<i32> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            (Monomial::new(e), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        }),
    )
}

fn test_graphs() -> Vec<(&'static str, WeightedDigraph, usize)> {
    let mut out = vec![
        ("counterexample", counterexample(), 1),
        ("kschur3", kschur3(), 0),
        ("qcycle", qcycle_symbolic(), 0),
        ("qcycle(1)", qcycle_at_one(), 0),
        ("companion", companion(), 0),
        ("two-vertex", two_vertex(), 0),
        ("two-cycle", two_cycle(), 0),
        ("three-cycle", three_cycle(), 0),
        ("klein", klein(), 0),
        ("B^a(2,5)", kr_column_graph(2, 5).unwrap(), 0),
        ("B^s(3,3)", pmgraph::crystals::kr_row_graph(3, 3).unwrap(), 0),
    ];
    for l in 1..=8 {
        out.push(("su2", su2_graph(l).unwrap(), 0));
    }
    out
}

fn property_suite() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut oracle_runs = 0;
    for (name, g, root) in test_graphs() {
        let b = compute_basis(&g, root).map_err(|e| format!("{name}: {e}"))?;
        let n = g.n();
        let d = b.denom().clone();
        for i in 0..n {
            for k in 0..n {
                let want = if k == i { d.clone() } else { LaurentPoly::zero(g.nvars()) };
                ensure!(b.b(i).numer().get(k, root) == &want, "{name}: b_{i} e_root != e_{i}");
            }
        }
        let c = structure_constants(&b).map_err(|e| format!("{name}: {e}"))?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ensure!(c.get(i, j, k) == c.get(j, i, k), "{name}: c[{i}][{j}][{k}] not symmetric");
                }
            }
        }
        for _ in 0..5 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let prod = b.b(i).mul(b.b(j));
            let col = prod.column(root);
            for k in 0..n {
                ensure!(&col[k] == c.get(i, j, k), "{name}: root column of b_{i} b_{j}");
            }
            let coeffs: Vec<PolyFraction> = (0..n).map(|k| c.get(i, j, k).clone()).collect();
            ensure!(b.combine(&coeffs) == prod, "{name}: b_{i} b_{j} != sum c b_k");
        }
        if n <= 12 && is_positively_multiplicative_at(&b).is_yes() {
            let r = positive_roots(&b, 12).map_err(|e| format!("{name}: {e}"))?;
            ensure!(r.oracle.as_ref() == Some(&r.fast), "{name}: fast {:?} vs oracle {:?}", r.fast, r.oracle);
            oracle_runs += 1;
        }
    }
    let mut done = 0;
    while done < 1000 {
        let m = rng.gen_range(1..=3);
        let (tq, td) = (rng.gen_range(1..=5), rng.gen_range(1..=4));
        let q = random_poly(&mut rng, m, tq);
        let d = random_poly(&mut rng, m, td);
        if d.is_zero() {
            continue;
        }
        ensure!((&q * &d).exact_divide(&d).as_ref() == Ok(&q), "exact_divide round trip failed");
        done += 1;
    }
    Ok(format!("{oracle_runs} graphs cross-checked against the rebase oracle"))
}

#[test]
fn acceptance() {
    let total = Instant::now();
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, "counterexample", secs(1), counterexample_suite),
        run(2, "kschur3", secs(5), kschur3_suite),
        run(3, "kr-minimal-polynomials", secs(10), kr_minpoly_suite),
        run(4, "su2-levels", secs(10), su2_suite),
        run(5, "qcycle-roots", secs(1), qcycle_suite),
        run(6, "expansion-figure", secs(1), expansion_suite),
        run(7, "dimension-vectors", None, dimension_suite),
        run(8, "symmetrization", None, symmetrize_suite),
        run(9, "property-suites", secs(120), property_suite),
    ];
    println!("acceptance total {:.3}s", total.elapsed().as_secs_f64());
    let failed: Vec<usize> = (1..=9).filter(|i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
