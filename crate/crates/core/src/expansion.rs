//! Bounded-depth slices of the expanded graph of a weighted digraph and the
//! harmonic functions `f(v_i, z^beta, q^l) = t^beta s^l pi_i` on them.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::WeightedDigraph;
use crate::laurent::{Monomial, Rational};
use crate::spectral::{PFResult, Specialization};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpansionError {
    #[error("root {0} out of range")]
    Root(usize),
    #[error("arrow {from} -> {to} has a non-positive coefficient")]
    NegativeWeight { from: usize, to: usize },
    #[error("no value for node {0:?}")]
    MissingNode(ExpNode),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// `(v_i, z^beta, l)`. Ordered by level, then vertex, then `beta` lex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpNode {
    pub level: usize,
    pub vertex: usize,
    pub beta: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpArrow {
    pub from: usize,
    pub to: usize,
    pub multiplicity: Rational,
}

#[derive(Debug, Clone)]
pub struct ExpansionGraph {
    nvars: usize,
    root: usize,
    depth: usize,
    variables: Vec<String>,
    nodes: Vec<ExpNode>,
    level_start: Vec<usize>,
    index: HashMap<ExpNode, usize>,
    arrows: Vec<ExpArrow>,
}

impl ExpansionGraph {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// All nodes, sorted.
    pub fn nodes(&self) -> &[ExpNode] {
        &self.nodes
    }

    pub fn level(&self, l: usize) -> &[ExpNode] {
        &self.nodes[self.level_start[l]..self.level_start[l + 1]]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.level_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn node_index(&self, node: &ExpNode) -> Option<usize> {
        self.index.get(node).copied()
    }

    /// Sorted by `(from, to)`.
    pub fn arrows(&self) -> &[ExpArrow] {
        &self.arrows
    }

    pub fn children(&self, node: usize) -> impl Iterator<Item = &ExpArrow> {
        let lo = self.arrows.partition_point(|a| a.from < node);
        self.arrows[lo..].iter().take_while(move |a| a.from == node)
    }

    pub fn to_json_value(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| json!([n.vertex, n.beta, n.level]))
            .collect();
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| json!({"from": a.from, "to": a.to, "multiplicity": rational_json(&a.multiplicity)}))
            .collect();
        json!({
            "variables": self.variables,
            "root": self.root,
            "depth": self.depth,
            "level_sizes": self.level_sizes(),
            "nodes": nodes,
            "arrows": arrows,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    json!(r.to_string())
}

pub fn expand(g: &WeightedDigraph, depth: usize) -> Result<ExpansionGraph, ExpansionError> {
    expand_from(g, 0, depth)
}

/// Level-by-level construction on the monomial split of `g`.
pub fn expand_from(g: &WeightedDigraph, root: usize, depth: usize) -> Result<ExpansionGraph, ExpansionError> {
    if root >= g.n() {
        return Err(ExpansionError::Root(root));
    }
    let m = g.nvars();
    let split = g.split_monomial_arrows();
    let mut out: Vec<Vec<(&Monomial, &Rational, usize)>> = vec![Vec::new(); g.n()];
    for a in split.arrows() {
        if !a.coef.is_positive() {
            return Err(ExpansionError::NegativeWeight { from: a.from, to: a.to });
        }
        out[a.from].push((&a.exps, &a.coef, a.to));
    }

    let mut nodes = vec![ExpNode {
        level: 0,
        vertex: root,
        beta: vec![0; m],
    }];
    let mut level_start = vec![0, 1];
    let mut raw: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut index: HashMap<ExpNode, usize> = HashMap::new();
    index.insert(nodes[0].clone(), 0);

    for l in 0..depth {
        let (lo, hi) = (level_start[l], level_start[l + 1]);
        let mut next: BTreeMap<ExpNode, Vec<(usize, Rational)>> = BTreeMap::new();
        for src in lo..hi {
            let node = nodes[src].clone();
            for &(mono, c, to) in &out[node.vertex] {
                let beta: Vec<i32> = node.beta.iter().zip(mono.exps()).map(|(a, b)| a + b).collect();
                let child = ExpNode {
                    level: l + 1,
                    vertex: to,
                    beta,
                };
                next.entry(child).or_default().push((src, c.clone()));
            }
        }
        for (child, parents) in next {
            let id = nodes.len();
            index.insert(child.clone(), id);
            nodes.push(child);
            for (src, c) in parents {
                *raw.entry((src, id)).or_insert_with(|| Rational::from_integer(0.into())) += c;
            }
        }
        level_start.push(nodes.len());
    }

    let arrows = raw
        .into_iter()
        .map(|((from, to), multiplicity)| ExpArrow { from, to, multiplicity })
        .collect();
    Ok(ExpansionGraph {
        nvars: m,
        root,
        depth,
        variables: g.names(),
        nodes,
        level_start,
        index,
        arrows,
    })
}

/// Closed-form harmonic function attached to a positive `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFunction {
    pub theta: Specialization,
    pub pi: Vec<f64>,
    pub eigenvalue: f64,
    pub s: f64,
}

impl HarmonicFunction {
    pub fn value(&self, node: &ExpNode) -> f64 {
        let tb: f64 = self
            .theta
            .t()
            .iter()
            .zip(&node.beta)
            .map(|(t, &b)| t.powi(b))
            .product();
        tb * self.s.powi(node.level as i32) * self.pi[node.vertex]
    }

    pub fn assign(&self, e: &ExpansionGraph) -> HarmonicAssignment {
        HarmonicAssignment {
            theta: self.theta.clone(),
            values: e.nodes().iter().map(|n| (n.clone(), self.value(n))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicAssignment {
    pub theta: Specialization,
    pub values: BTreeMap<ExpNode, f64>,
}

/// `s = (sum over root arrows a_{v', v0}(t) pi_{v'})^{-1}` with `pi` the left
/// PF vector of `A_t`, normalized at the root.
pub fn harmonic_from_t(
    g: &WeightedDigraph,
    root: usize,
    pf: &PFResult,
    theta: &Specialization,
) -> Result<HarmonicFunction, ExpansionError> {
    let n = g.n();
    if root >= n {
        return Err(ExpansionError::Root(root));
    }
    if pf.left_vector.len() != n || theta.t().len() != g.nvars() {
        return Err(ExpansionError::Dimension("PF vector or t".into()));
    }
    let r = pf.left_vector[root];
    let pi: Vec<f64> = pf.left_vector.iter().map(|x| x / r).collect();
    let a = g
        .adjacency_matrix()
        .evaluate(theta.t())
        .map_err(|e| ExpansionError::Dimension(e.to_string()))?;
    let total: f64 = (0..n).map(|i| a[i][root] * pi[i]).sum();
    let s = 1.0 / total;
    let theta = theta
        .clone()
        .with_s(s)
        .map_err(|e| ExpansionError::Dimension(e.to_string()))?;
    Ok(HarmonicFunction {
        theta,
        pi,
        eigenvalue: pf.eigenvalue,
        s,
    })
}

/// `f(v) = sum_{v -> v'} m f(v')` at every node below the last level, up to
/// relative tolerance `tol`.
pub fn verify_harmonic(h: &HarmonicAssignment, e: &ExpansionGraph, tol: f64) -> Result<bool, ExpansionError> {
    let get = |id: usize| {
        let node = &e.nodes()[id];
        h.values
            .get(node)
            .copied()
            .ok_or_else(|| ExpansionError::MissingNode(node.clone()))
    };
    for id in 0..e.level_start[e.depth] {
        let f = get(id)?;
        let mut sum = 0.0;
        for a in e.children(id) {
            sum += a.multiplicity.to_f64().unwrap_or(f64::NAN) * get(a.to)?;
        }
        if !((f - sum).abs() <= tol * f.abs().max(sum.abs())) {
            return Ok(false);
        }
    }
    Ok(true)
}
