use std::f64::consts::PI;
use std::path::Path;

use pmgraph::crystals::{
    check_vertex_map, column_vertex_map, companion_graph, diamond_column, diamond_row, hamermesh_graph,
    kr_column_graph, kr_row_graph, partitions, promotion_column, promotion_row, row_vertex_map, su2_fusion_oracle,
    su2_graph,
};
use pmgraph::linalg::minimal_polynomial;
use pmgraph::pm::structure_constants;
use pmgraph::spectral::perron_frobenius;
use pmgraph::{compute_basis, LaurentPoly, PolyUnivariate, WeightedDigraph};
use serde_json::{json, Value};

use crate::commands::num;
use crate::report::{CliError, Context, Outcome, Report};
use crate::Family;

pub struct Params {
    pub family: Family,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub coeffs: Option<Vec<i64>>,
}

fn need(v: Option<u32>, flag: &str) -> Result<u32, CliError> {
    v.ok_or_else(|| CliError::Input(format!("this family needs -{flag}")))
}

fn bad(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn build(p: &Params) -> Result<WeightedDigraph, CliError> {
    match p.family {
        Family::A => kr_column_graph(need(p.k, "k")?, need(p.n, "n")?).map_err(bad),
        Family::S => kr_row_graph(need(p.l, "l")?, need(p.n, "n")?).map_err(bad),
        Family::Su2 => su2_graph(need(p.l, "l")?).map_err(bad),
        Family::Hamermesh => hamermesh_graph(need(p.n, "n")?).map_err(bad),
        Family::Companion => {
            let c = p.coeffs.as_ref().ok_or_else(|| CliError::Input("companion needs --coeffs".into()))?;
            companion_graph(c).map_err(bad)
        }
    }
}

struct Checks {
    items: Vec<Value>,
    failed: bool,
}

impl Checks {
    fn check(&mut self, rep: &mut Report, text: String, ok: bool) {
        rep.line(format!("{text}: {}", if ok { "OK" } else { "FAIL" }));
        self.items.push(json!({"check": text, "ok": ok}));
        self.failed |= !ok;
    }

    fn info(&mut self, rep: &mut Report, text: String) {
        rep.line(text.clone());
        self.items.push(json!({"info": text}));
    }
}

fn minpoly_checks(rep: &mut Report, ch: &mut Checks, g: &WeightedDigraph) -> Result<PolyUnivariate, CliError> {
    let a = g.adjacency_matrix();
    let mu = minimal_polynomial(&a).map_err(|e| CliError::Internal(e.to_string()))?;
    let vanishes = mu.eval_matrix(&a).is_zero();
    ch.check(rep, format!("min poly {}", mu.to_string_with(&g.names(), "X")), vanishes);
    let (d, n) = (mu.degree(), g.n());
    if d == n {
        ch.info(rep, format!("deg μ_A = {d} = n: maximal dimension"));
    } else {
        ch.info(rep, format!("deg μ_A = {d} < {n}: not maximal dimension"));
    }
    Ok(mu)
}

fn verify(p: &Params, g: &WeightedDigraph, rep: &mut Report, ch: &mut Checks) -> Result<(), CliError> {
    ch.check(rep, "strongly connected".into(), g.is_strongly_connected());
    match p.family {
        Family::A => {
            let (k, n) = (p.k.unwrap(), p.n.unwrap());
            ch.check(rep, format!("{} vertices = C({n},{k})", g.n()), g.n() as u64 == binom(n as u64, k as u64));
            let pr = column_vertex_map(k, n, promotion_column);
            ch.check(rep, "promotion shifts colors by 1".into(), check_vertex_map(g, n, &pr, false));
            let dm = column_vertex_map(k, n, diamond_column);
            ch.check(rep, "diamond reverses arrows, color i to n-i".into(), check_vertex_map(g, n, &dm, true));
            minpoly_checks(rep, ch, g)?;
        }
        Family::S => {
            let (l, n) = (p.l.unwrap(), p.n.unwrap());
            let want = binom((l + n - 1) as u64, l as u64);
            ch.check(rep, format!("{} vertices = C({},{l})", g.n(), l + n - 1), g.n() as u64 == want);
            let pr = row_vertex_map(l, n, promotion_row);
            ch.check(rep, "promotion shifts colors by 1".into(), check_vertex_map(g, n, &pr, false));
            let dm = row_vertex_map(l, n, diamond_row);
            ch.check(rep, "diamond reverses arrows, color i to n-i".into(), check_vertex_map(g, n, &dm, true));
            minpoly_checks(rep, ch, g)?;
        }
        Family::Su2 => {
            let l = p.l.unwrap();
            let b = compute_basis(g, 0)?;
            let c = structure_constants(&b)?;
            let o = su2_fusion_oracle(l);
            let n = g.n();
            let same = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| c.get(i, j, k) == o.get(i, j, k))));
            ch.check(rep, "fusion oracle match".into(), same);
            let a = g.adjacency_matrix().evaluate(&[]).map_err(bad)?;
            let pf = perron_frobenius(&a, 0).map_err(|e| CliError::Internal(e.to_string()))?;
            let want = 2.0 * (PI / (l + 2) as f64).cos();
            ch.check(
                rep,
                format!("PF eigenvalue {} = 2cos(π/{})", num(pf.eigenvalue), l + 2),
                (pf.eigenvalue - want).abs() <= 1e-9,
            );
        }
        Family::Hamermesh => {
            let n = p.n.unwrap();
            ch.check(rep, format!("{} vertices = partitions of {n}", g.n()), g.n() == partitions(n).len());
            minpoly_checks(rep, ch, g)?;
        }
        Family::Companion => {
            let c = p.coeffs.as_ref().unwrap();
            let mu = minpoly_checks(rep, ch, g)?;
            let mut want: Vec<LaurentPoly> = c.iter().map(|&x| LaurentPoly::from_int(0, -x)).collect();
            want.push(LaurentPoly::one(0));
            ch.check(rep, "μ_A = X^n - sum c_i X^i".into(), mu == PolyUnivariate::from_polys(want));
        }
    }
    Ok(())
}

pub fn crystal(ctx: &Context, p: &Params, run_checks: bool, out: Option<&Path>) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let g = build(p)?;
    rep.set("graph", g.to_json_value());
    let mut ch = Checks {
        items: Vec::new(),
        failed: false,
    };
    if run_checks {
        verify(p, &g, &mut rep, &mut ch)?;
        rep.set("checks", Value::Array(ch.items.clone()));
    }
    if ch.failed {
        for l in &rep.lines {
            eprintln!("{l}");
        }
        return Err(CliError::Internal("family invariant check failed".into()));
    }
    let text = format!("{}\n", g.to_json());
    let mut outcome = Outcome::ok(rep);
    match out {
        Some(o) => std::fs::write(o, text).map_err(|e| CliError::Input(format!("{}: {e}", o.display())))?,
        None => outcome.raw = Some(text),
    }
    Ok(outcome)
}
