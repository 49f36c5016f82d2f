use std::collections::BTreeSet;
use std::path::Path;

use pmgraph::expansion::{expand_from, harmonic_from_t, verify_harmonic};
use pmgraph::linalg::{det, format_grid, minimal_polynomial};
use pmgraph::pm::{
    conjugate as conjugate_graph, is_generalized_automorphism, is_positively_multiplicative_at, maximal_index_group,
    positive_roots, rebase as rebase_basis, structure_constants, Verdict,
};
use pmgraph::spectral::{dimension_vector, perron_frobenius, specialize};
use pmgraph::symmetrize::{symmetrized_constants, symmetrized_constants_normalized, AutomorphismKind, SymmetrizeError};
use pmgraph::{
    compute_basis, FracMatrix, GenPerm, LaurentPoly, ModuleAutomorphism, MultiplicativeBasis, PmError, PolyFraction,
    Specialization, SpectralError, StructureConstants, WeightedDigraph,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{vertex, CliError, Context, Outcome, Report};
use crate::GraphArgs;

pub const HARMONIC_TOLERANCE: f64 = 1e-9;

pub fn vname(g: &WeightedDigraph, i: usize) -> String {
    let label = &g.vertices()[i];
    if *label == format!("v{i}") {
        label.clone()
    } else {
        format!("v{i} ({label})")
    }
}

pub fn num(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn nums(v: &[f64]) -> String {
    format!("({})", v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", "))
}

fn frac(f: &PolyFraction, names: &[String]) -> String {
    match f.to_laurent() {
        Some(p) => p.to_string_with(names),
        None => f.to_string_with(names),
    }
}

fn set_str(s: &BTreeSet<usize>) -> String {
    format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// `sum_k x_k <sym>_k`, skipping zeros.
fn combination(x: &[PolyFraction], names: &[String], sym: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = frac(c, names);
        let simple = c.to_laurent().is_some_and(|p| p.num_terms() == 1);
        parts.push(match cs.as_str() {
            "1" => format!("{sym}_{k}"),
            _ if simple => format!("{cs}*{sym}_{k}"),
            _ => format!("({cs})*{sym}_{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn matrix_json(m: &FracMatrix, names: &[String]) -> Value {
    json!(m.to_strings(names))
}

fn tensor_strings(c: &StructureConstants, names: &[String]) -> Vec<Vec<Vec<String>>> {
    let n = c.n();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| frac(c.get(i, j, k), names)).collect()).collect())
        .collect()
}

fn witness_json(v: &Verdict) -> Value {
    match v {
        Verdict::Yes => Value::Null,
        Verdict::No(w) => json!({"i": w.i, "j": w.j, "k": w.k, "reason": w.to_string()}),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Yes => "yes".into(),
        Verdict::No(w) => format!("no (witness {w})"),
    }
}

/// The basis at `root`, or the negative verdict when `det M_root = 0`.
fn basis_at(ctx: &Context, g: &WeightedDigraph, root: usize) -> Result<Result<MultiplicativeBasis, String>, CliError> {
    match compute_basis(g, root) {
        Ok(b) => Ok(Ok(ctx.checked_basis(b)?)),
        Err(PmError::NotMultiplicativeAtRoot { root }) => {
            Ok(Err(format!("not multiplicative at v{root} (det M_{root} = 0)")))
        }
        Err(e) => Err(e.into()),
    }
}

fn load_with_root(ctx: &Context, args: &GraphArgs, rep: &mut Report) -> Result<(WeightedDigraph, usize), CliError> {
    let g = ctx.load(&args.graph, rep)?;
    let root = vertex(&g, &args.root)?;
    rep.set("root", json!(root));
    Ok((g, root))
}

/// Stops with a negative report when the graph is not multiplicative at the root.
macro_rules! basis_or_negative {
    ($ctx:expr, $g:expr, $root:expr, $rep:ident) => {
        match basis_at($ctx, $g, $root)? {
            Ok(b) => b,
            Err(msg) => {
                $rep.set("multiplicative", json!(false));
                $rep.line(msg);
                return Ok(Outcome::verdict($rep, false));
            }
        }
    };
}

macro_rules! pm_or_negative {
    ($b:expr, $rep:ident) => {{
        let v = is_positively_multiplicative_at(&$b);
        if let Verdict::No(_) = v {
            $rep.set("pm", json!(false));
            $rep.set("witness", witness_json(&v));
            $rep.line(format!("PM: {}", verdict_text(&v)));
            return Ok(Outcome::verdict($rep, false));
        }
    }};
}

pub fn analyze(ctx: &Context, args: &GraphArgs) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let names = g.names();
    let n = g.n();
    let a = g.adjacency_matrix();
    let sc = g.is_strongly_connected();
    let mu = minimal_polynomial(&a).map_err(|e| CliError::Internal(e.to_string()))?;
    let deg = mu.degree();
    rep.set("n", json!(n));
    rep.set("strongly_connected", json!(sc));
    rep.set("minimal_polynomial", json!(mu.to_string_with(&names, "X")));
    rep.set("minimal_polynomial_degree", json!(deg));
    rep.set("maximal_dimension", json!(deg == n));
    rep.line(format!("vertices: {n}; variables: {}", if names.is_empty() { "none".into() } else { names.join(", ") }));
    rep.line(format!("strongly connected: {}", if sc { "yes" } else { "no" }));
    if deg == n {
        rep.line(format!("deg μ_A = {deg} = n: maximal dimension"));
    } else {
        rep.line(format!("deg μ_A = {deg} < {n}: not maximal dimension"));
    }
    let d = det(&g.path_count_matrix(root)?);
    rep.set("det_m", json!(d.to_string_with(&names)));
    if !sc {
        rep.warnings.push("graph is not strongly connected".into());
    }
    if d.is_zero() {
        rep.set("multiplicative", json!(false));
        rep.line(format!("not multiplicative at {} (det M_{root} = 0)", vname(&g, root)));
        return Ok(Outcome::verdict(rep, false));
    }
    let b = ctx.checked_basis(compute_basis(&g, root)?)?;
    let v = is_positively_multiplicative_at(&b);
    rep.set("multiplicative", json!(true));
    rep.set("pm", json!(v.is_yes()));
    rep.set("witness", witness_json(&v));
    rep.line(format!(
        "multiplicative at {}; det M_{root} = {}; PM: {}",
        vname(&g, root),
        d.to_string_with(&names),
        verdict_text(&v)
    ));
    Ok(Outcome::verdict(rep, v.is_yes()))
}

fn basis_lines(rep: &mut Report, b: &MultiplicativeBasis, names: &[String]) {
    let d = b.denom();
    rep.set("denominator", json!(d.to_string_with(names)));
    rep.set("basis", Value::Array(b.basis().iter().map(|m| matrix_json(m, names)).collect()));
    if !d.is_one() {
        rep.line(format!("common denominator: {}", d.to_string_with(names)));
    }
    for (i, m) in b.basis().iter().enumerate() {
        rep.line(format!("b_{i} ="));
        rep.line(format_grid(&m.to_strings(names)).trim_end().to_string());
    }
}

pub fn basis(ctx: &Context, args: &GraphArgs) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let b = basis_or_negative!(ctx, &g, root, rep);
    basis_lines(&mut rep, &b, &g.names());
    Ok(Outcome::ok(rep))
}

pub fn sc(ctx: &Context, args: &GraphArgs, pair: Option<(usize, usize)>) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let names = g.names();
    let b = basis_or_negative!(ctx, &g, root, rep);
    let c = structure_constants(&b)?;
    let n = g.n();
    if let Some((i, j)) = pair {
        if i >= n || j >= n {
            return Err(CliError::Input(format!("pair ({i}, {j}) out of range (n = {n})")));
        }
        let col: Vec<PolyFraction> = (0..n).map(|k| c.get(i, j, k).clone()).collect();
        rep.set("pair", json!([i, j]));
        rep.set("column", json!(col.iter().map(|x| frac(x, &names)).collect::<Vec<_>>()));
        rep.line(format!("column {j} of b_{i}: b_{i} b_{j} = {}", combination(&col, &names, "b")));
        for (k, x) in col.iter().enumerate() {
            rep.line(format!("  c[{i}][{j}][{k}] = {}", frac(x, &names)));
        }
        return Ok(Outcome::ok(rep));
    }
    rep.set("constants", json!(tensor_strings(&c, &names)));
    for i in 0..n {
        for j in i..n {
            let col: Vec<PolyFraction> = (0..n).map(|k| c.get(i, j, k).clone()).collect();
            rep.line(format!("b_{i} b_{j} = {}", combination(&col, &names, "b")));
        }
    }
    let v = c.verdict();
    rep.set("pm", json!(v.is_yes()));
    rep.line(format!("PM: {}", verdict_text(&v)));
    Ok(Outcome::ok(rep))
}

struct RootInfo {
    det: LaurentPoly,
    verdict: Option<Verdict>,
}

pub fn roots(ctx: &Context, args: &GraphArgs) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let g = ctx.load(&args.graph, &mut rep)?;
    let names = g.names();
    let n = g.n();
    let infos: Vec<Result<RootInfo, CliError>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let det = det(&g.path_count_matrix(i)?);
            if det.is_zero() {
                return Ok(RootInfo { det, verdict: None });
            }
            let b = ctx.checked_basis(compute_basis(&g, i)?)?;
            Ok(RootInfo {
                det,
                verdict: Some(is_positively_multiplicative_at(&b)),
            })
        })
        .collect();
    let infos = infos.into_iter().collect::<Result<Vec<_>, _>>()?;
    let roots: BTreeSet<usize> = (0..n).filter(|&i| infos[i].verdict.is_some()).collect();
    let positive: BTreeSet<usize> = (0..n)
        .filter(|&i| infos[i].verdict.as_ref().is_some_and(|v| v.is_yes()))
        .collect();
    rep.set("roots", json!(roots));
    rep.set("positive_roots", json!(positive));
    rep.set(
        "det_m",
        json!(infos.iter().map(|r| r.det.to_string_with(&names)).collect::<Vec<_>>()),
    );
    rep.line(format!("roots: {}", set_str(&roots)));
    rep.line(format!("positive roots: {}", set_str(&positive)));
    for (i, info) in infos.iter().enumerate() {
        let status = match &info.verdict {
            None => "not a root".to_string(),
            Some(v) => format!("PM {}", verdict_text(v)),
        };
        rep.line(format!("  {}: det M_{i} = {}; {status}", vname(&g, i), info.det.to_string_with(&names)));
    }
    let Some(&first) = positive.iter().next() else {
        return Ok(Outcome::verdict(rep, false));
    };
    let b = compute_basis(&g, first)?;
    let r = positive_roots(&b, ctx.oracle_bound)?;
    rep.set("fast_path", json!(r.fast));
    rep.set("oracle", json!(r.oracle));
    rep.line(format!("generalized-permutation fast path from v{first}: {}", set_str(&r.fast)));
    match &r.oracle {
        Some(o) => rep.line(format!("rebase oracle: {}", set_str(o))),
        None => rep.line(format!("rebase oracle skipped (n = {n} > {})", ctx.oracle_bound)),
    }
    if r.fast != positive || r.oracle.as_ref().is_some_and(|o| *o != r.fast) {
        return Err(CliError::Internal(format!(
            "positive roots disagree: per-root {}, fast path {}",
            set_str(&positive),
            set_str(&r.fast)
        )));
    }
    Ok(Outcome::ok(rep))
}

pub fn group(ctx: &Context, args: &GraphArgs) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let names = g.names();
    let b = basis_or_negative!(ctx, &g, root, rep);
    pm_or_negative!(b, rep);
    let grp = maximal_index_group(&b)?;
    let elems: BTreeSet<usize> = grp.elements().iter().copied().collect();
    rep.set("elements", json!(grp.elements()));
    rep.set("group", json!(grp.describe()));
    rep.set("invariant_factors", json!(grp.invariant_factors()));
    let mut table = Vec::new();
    rep.line(format!("I_m = {}; group ≅ {}", set_str(&elems), grp.describe()));
    for &i in grp.elements() {
        for &j in grp.elements() {
            let k = grp.product(i, j);
            let s = grp.scalar(i, j).to_string_with(&names);
            table.push(json!({"i": i, "j": j, "product": k, "scalar": s}));
            if s == "1" {
                rep.line(format!("  b_{i} b_{j} = b_{k}"));
            } else {
                rep.line(format!("  b_{i} b_{j} = {s}*b_{k}"));
            }
        }
    }
    rep.set("table", Value::Array(table));
    Ok(Outcome::ok(rep))
}

pub fn rebase(ctx: &Context, args: &GraphArgs, to: &str) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let names = g.names();
    let to = vertex(&g, to)?;
    rep.set("to", json!(to));
    let b = basis_or_negative!(ctx, &g, root, rep);
    let r = match rebase_basis(&b, to) {
        Ok(r) => ctx.checked_basis(r)?,
        Err(PmError::RootNotInvertible(j)) => {
            rep.set("rebased", json!(false));
            rep.line(format!("v{j} is not a root: b_{j} is not invertible"));
            return Ok(Outcome::verdict(rep, false));
        }
        Err(e) => return Err(e.into()),
    };
    let v = is_positively_multiplicative_at(&r);
    rep.set("rebased", json!(true));
    rep.set("pm", json!(v.is_yes()));
    rep.set("witness", witness_json(&v));
    rep.line(format!("rebased to {}; PM at new root: {}", vname(&g, to), verdict_text(&v)));
    basis_lines(&mut rep, &r, &names);
    Ok(Outcome::verdict(rep, v.is_yes()))
}

pub fn conjugate(
    ctx: &Context,
    path: &Path,
    sigma: Vec<usize>,
    scalars: Option<Vec<String>>,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let g = ctx.load(path, &mut rep)?;
    let names = g.names();
    let scalars = parse_polys(scalars, sigma.len(), &names)?;
    let p = GenPerm::new(sigma, scalars)?;
    let h = conjugate_graph(&g, &p)?;
    let aut = is_generalized_automorphism(&g, &p)?;
    rep.set("graph", h.to_json_value());
    rep.set("automorphism", json!(aut));
    rep.line(format!("generalized automorphism: {}", if aut { "yes" } else { "no" }));
    let text = format!("{}\n", h.to_json());
    let mut outcome = Outcome::ok(rep);
    match out {
        Some(o) => std::fs::write(o, text).map_err(|e| CliError::Input(format!("{}: {e}", o.display())))?,
        None => outcome.raw = Some(text),
    }
    Ok(outcome)
}

fn parse_polys(v: Option<Vec<String>>, n: usize, names: &[String]) -> Result<Vec<LaurentPoly>, CliError> {
    match v {
        None => Ok(vec![LaurentPoly::one(names.len()); n]),
        Some(v) => v
            .iter()
            .map(|s| LaurentPoly::parse(s, names).map_err(|e| CliError::Input(format!("{s:?}: {e}"))))
            .collect(),
    }
}

pub fn symmetrize(
    ctx: &Context,
    args: &GraphArgs,
    omega: Option<&Path>,
    sigma: Option<Vec<usize>>,
    lambdas: Option<Vec<String>>,
    normalized: bool,
) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let names = g.names();
    let sym_err = |e: SymmetrizeError| match e {
        SymmetrizeError::Pm(p) => CliError::from(p),
        other => CliError::Input(other.to_string()),
    };
    let w = match (omega, sigma) {
        (Some(path), _) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            rep.inputs.insert(path.display().to_string(), crate::report::digest(text.as_bytes()));
            ModuleAutomorphism::from_json(&text, &names).map_err(sym_err)?
        }
        (None, Some(sigma)) => {
            let l = parse_polys(lambdas, sigma.len(), &names)?;
            ModuleAutomorphism::new(sigma, l).map_err(sym_err)?
        }
        (None, None) => return Err(CliError::Input("give --omega FILE or --sigma".into())),
    };
    let b = basis_or_negative!(ctx, &g, root, rep);
    let c = structure_constants(&b)?;
    let built = if normalized {
        symmetrized_constants_normalized(&c, &w)
    } else {
        symmetrized_constants(&c, &w)
    };
    let s = match built {
        Ok(s) => s,
        Err(e @ (SymmetrizeError::NotAutomorphism { .. } | SymmetrizeError::NotClosed(..))) => {
            rep.set("automorphism", json!(false));
            rep.line(e.to_string());
            return Ok(Outcome::verdict(rep, false));
        }
        Err(e) => return Err(sym_err(e)),
    };
    let kind = match s.kind {
        AutomorphismKind::Module => "module",
        AutomorphismKind::Algebra => "algebra",
    };
    rep.set("kind", json!(kind));
    rep.set("order", json!(s.order));
    rep.set("orbits", json!(s.orbits));
    rep.set("normalized", json!(s.normalized));
    rep.set(
        "s_elements",
        json!(s
            .s_elements
            .iter()
            .map(|v| v.iter().map(|x| frac(x, &names)).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    rep.set("constants", json!(tensor_strings(&s.structure, &names)));
    rep.line(format!("{kind} automorphism of order {}", s.order));
    let orbit_text: Vec<String> = s
        .orbits
        .iter()
        .map(|o| format!("{{{}}}", o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    rep.line(format!("orbits: {}", orbit_text.join(" ")));
    for (l, v) in s.s_elements.iter().enumerate() {
        rep.line(format!("s_{l} = {}", combination(v, &names, "b")));
    }
    let r = s.orbits.len();
    for a in 0..r {
        for bb in a..r {
            let col: Vec<PolyFraction> = (0..r).map(|k| s.structure.get(a, bb, k).clone()).collect();
            rep.line(format!("s_{a} s_{bb} = {}", combination(&col, &names, "s")));
        }
    }
    if !normalized {
        let m = PolyFraction::constant(c.nvars(), pmgraph::laurent::int(s.order as i64));
        let ok = (0..r).all(|a| {
            (0..r).all(|k| {
                let want = if a == k { m.clone() } else { PolyFraction::zero(c.nvars()) };
                s.structure.get(0, a, k) == &want
            })
        });
        if !ok {
            return Err(CliError::Internal("s_0 s_l != m s_l".into()));
        }
        rep.line(format!("s_0 s_l = {} s_l for every l: OK", s.order));
    }
    Ok(Outcome::ok(rep))
}

pub fn dimvec(ctx: &Context, args: &GraphArgs, t: &[f64]) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    if t.len() != g.nvars() {
        return Err(CliError::Input(format!("--t needs {} values, got {}", g.nvars(), t.len())));
    }
    Specialization::new(t.to_vec()).map_err(|e| CliError::Input(e.to_string()))?;
    let b = basis_or_negative!(ctx, &g, root, rep);
    let c = structure_constants(&b)?;
    let real = c.specialize(t).map_err(|e| CliError::Input(e.to_string()))?;
    match dimension_vector(&real) {
        Ok(d) => {
            rep.set("t", json!(t));
            rep.set("d", json!(d.d));
            rep.set("eigenvalue", json!(d.eigenvalue));
            rep.line(format!("d = {}", nums(&d.d)));
            rep.line(format!("PF eigenvalue of S = {}", num(d.eigenvalue)));
            Ok(Outcome::ok(rep))
        }
        Err(e @ (SpectralError::NotSpm | SpectralError::Morphism { .. } | SpectralError::Negative(..))) => {
            rep.set("d", Value::Null);
            rep.line(e.to_string());
            Ok(Outcome::verdict(rep, false))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

pub fn expand(ctx: &Context, args: &GraphArgs, depth: usize, t: &[f64], harmonic: bool) -> Result<Outcome, CliError> {
    let mut rep = ctx.report();
    let (g, root) = load_with_root(ctx, args, &mut rep)?;
    let e = expand_from(&g, root, depth).map_err(|e| CliError::Input(e.to_string()))?;
    let sizes = e.level_sizes();
    rep.set("expansion", e.to_json_value());
    rep.line(format!(
        "level sizes: {}",
        sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    ));
    rep.line(format!("{} nodes, {} arrows", e.nodes().len(), e.arrows().len()));
    if !harmonic {
        return Ok(Outcome::ok(rep));
    }
    if t.len() != g.nvars() {
        return Err(CliError::Input(format!("--t needs {} values, got {}", g.nvars(), t.len())));
    }
    let th = Specialization::new(t.to_vec()).map_err(|e| CliError::Input(format!("bad t: {e}")))?;
    let a = specialize(&g.adjacency_matrix(), &th).map_err(|e| CliError::Input(e.to_string()))?;
    let pf = perron_frobenius(&a, root).map_err(|e| CliError::Input(e.to_string()))?;
    let h = harmonic_from_t(&g, root, &pf, &th).map_err(|e| CliError::Input(e.to_string()))?;
    let assign = h.assign(&e);
    let ok = verify_harmonic(&assign, &e, HARMONIC_TOLERANCE).map_err(|e| CliError::Internal(e.to_string()))?;
    let values: Vec<Value> = e
        .nodes()
        .iter()
        .map(|n| json!([n.vertex, n.beta, n.level, assign.values[n]]))
        .collect();
    rep.set(
        "harmonic",
        json!({
            "t": t,
            "lambda": h.eigenvalue,
            "s": h.s,
            "pi": h.pi,
            "values": values,
            "verified": ok,
            "tolerance": HARMONIC_TOLERANCE,
        }),
    );
    rep.line(format!("λ = {}", num(h.eigenvalue)));
    rep.line(format!("s = {}", num(h.s)));
    rep.line(format!("π = {}", nums(&h.pi)));
    for n in e.nodes() {
        let beta = n.beta.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        rep.line(format!("  f(v{}, [{beta}], {}) = {}", n.vertex, n.level, num(assign.values[n])));
    }
    rep.line(format!(
        "harmonic: {} (tolerance {HARMONIC_TOLERANCE:e})",
        if ok { "yes" } else { "no" }
    ));
    Ok(Outcome::verdict(rep, ok))
}
