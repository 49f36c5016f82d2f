//! Weighted digraphs and the path-count matrix.
//!
//! Orientation: an arrow `v_j -> v_i` of weight `w` contributes `w` to
//! `A[i][j]`, so that `A b_j = sum_i A[i][j] b_i`.

mod io;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::laurent::{default_names, LaurentPoly, Monomial, ParseError, Rational};
use crate::linalg::PolyMatrix;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("duplicate vertex '{0}'")]
    DuplicateVertex(String),
    #[error("invalid variable name '{0}'")]
    BadVariable(String),
    #[error("arrow {index}: weight '{text}': {source}")]
    BadWeight {
        index: usize,
        text: String,
        #[source]
        source: ParseError,
    },
    #[error("arrow {from} -> {to}: weight must be a nonzero polynomial with nonnegative coefficients")]
    BadSign { from: usize, to: usize },
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("weight has {got} variables, graph has {expected}")]
    VariableMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub weight: LaurentPoly,
    /// Crystal color, kept as metadata only.
    pub color: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    variables: Vec<String>,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl WeightedDigraph {
    /// Parallel arrows are merged by adding weights; a merged arrow keeps its
    /// color only if all parts agree.
    pub fn new(
        variables: Vec<String>,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
    ) -> Result<Self, GraphError> {
        for v in &variables {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || variables.iter().filter(|w| *w == v).count() > 1 {
                return Err(GraphError::BadVariable(v.clone()));
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        let m = variables.len();
        let mut merged: Vec<Arrow> = Vec::new();
        let mut slot: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for a in arrows {
            for idx in [a.from, a.to] {
                if idx >= n {
                    return Err(GraphError::IndexOutOfRange(idx));
                }
            }
            if a.weight.nvars() != m {
                return Err(GraphError::VariableMismatch {
                    expected: m,
                    got: a.weight.nvars(),
                });
            }
            if a.weight.is_zero() || !a.weight.is_nonneg() {
                return Err(GraphError::BadSign {
                    from: a.from,
                    to: a.to,
                });
            }
            match slot.get(&(a.from, a.to)) {
                Some(&k) => {
                    let e = &mut merged[k];
                    e.weight = &e.weight + &a.weight;
                    if e.color != a.color {
                        e.color = None;
                    }
                }
                None => {
                    slot.insert((a.from, a.to), merged.len());
                    merged.push(a);
                }
            }
        }
        Ok(WeightedDigraph {
            variables,
            vertices,
            arrows: merged,
        })
    }

    /// Graph whose adjacency matrix is `a`. Vertex labels default to `v0..`.
    pub fn from_adjacency(
        variables: Vec<String>,
        vertices: Option<Vec<String>>,
        a: &PolyMatrix,
    ) -> Result<Self, GraphError> {
        let n = a.n();
        let vertices = vertices.unwrap_or_else(|| (0..n).map(|i| format!("v{i}")).collect());
        let mut arrows = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let w = a.get(i, j);
                if !w.is_zero() {
                    arrows.push(Arrow {
                        from: j,
                        to: i,
                        weight: w.clone(),
                        color: None,
                    });
                }
            }
        }
        Self::new(variables, vertices, arrows)
    }

    /// Integer adjacency matrix without variables.
    pub fn from_int_adjacency(rows: &[Vec<i64>]) -> Result<Self, GraphError> {
        let a = PolyMatrix::from_ints(0, rows).map_err(|_| GraphError::IndexOutOfRange(rows.len()))?;
        Self::from_adjacency(vec![], None, &a)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.vertices.len());
        self.vertices = labels;
        self
    }

    pub fn adjacency_matrix(&self) -> PolyMatrix {
        let mut a = PolyMatrix::zero(self.n(), self.nvars());
        for e in &self.arrows {
            let w = a.get(e.to, e.from) + &e.weight;
            a.set(e.to, e.from, w);
        }
        a
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n()];
        for e in &self.arrows {
            out[e.from].push(e.to);
        }
        out
    }

    /// One strongly connected component covering every vertex. The empty
    /// graph and a single vertex count as strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let fwd = self.successors();
        let mut bwd = vec![Vec::new(); n];
        for (u, vs) in fwd.iter().enumerate() {
            for &v in vs {
                bwd[v].push(u);
            }
        }
        reach_all(&fwd) && reach_all(&bwd)
    }

    /// A row or column of the adjacency matrix is entirely zero.
    pub fn has_zero_row_or_column(&self) -> bool {
        let n = self.n();
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        for e in &self.arrows {
            out_deg[e.from] += 1;
            in_deg[e.to] += 1;
        }
        out_deg.contains(&0) || in_deg.contains(&0)
    }

    /// Column `j` is `A^j e_{i0}`: weighted counts of length-`j` paths from
    /// `v_{i0}`.
    pub fn path_count_matrix(&self, i0: usize) -> Result<PolyMatrix, GraphError> {
        if i0 >= self.n() {
            return Err(GraphError::IndexOutOfRange(i0));
        }
        Ok(path_count_from_adjacency(&self.adjacency_matrix(), i0))
    }

    pub fn split_monomial_arrows(&self) -> MonomialDigraph {
        let mut arrows = Vec::new();
        for e in &self.arrows {
            for (mono, c) in e.weight.terms() {
                arrows.push(MonomialArrow {
                    from: e.from,
                    to: e.to,
                    coef: c.clone(),
                    exps: mono.clone(),
                });
            }
        }
        MonomialDigraph {
            nvars: self.nvars(),
            n: self.n(),
            arrows,
        }
    }

    /// Default `z1..zm` names if the graph carries none.
    pub fn names(&self) -> Vec<String> {
        if self.variables.is_empty() {
            default_names(0)
        } else {
            self.variables.clone()
        }
    }
}

/// Column `j` is `A^j e_{i0}`: weighted counts of length-`j` paths from
/// `v_{i0}`.
pub fn path_count_from_adjacency(a: &PolyMatrix, i0: usize) -> PolyMatrix {
    let n = a.n();
    let m = a.nvars();
    let mut col: Vec<LaurentPoly> = (0..n)
        .map(|i| {
            if i == i0 {
                LaurentPoly::one(m)
            } else {
                LaurentPoly::zero(m)
            }
        })
        .collect();
    let mut cols = Vec::with_capacity(n);
    for _ in 0..n {
        let next = a.mul_vec(&col);
        cols.push(col);
        col = next;
    }
    PolyMatrix::from_columns(m, &cols).expect("square by construction")
}

fn reach_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialArrow {
    pub from: usize,
    pub to: usize,
    pub coef: Rational,
    pub exps: Monomial,
}

/// Every arrow weight is a positive monomial; parallel arrows allowed.
#[derive(Debug, Clone)]
pub struct MonomialDigraph {
    nvars: usize,
    n: usize,
    arrows: Vec<MonomialArrow>,
}

impl MonomialDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn arrows(&self) -> &[MonomialArrow] {
        &self.arrows
    }

    /// Re-sums parallel arrows.
    pub fn adjacency_matrix(&self) -> PolyMatrix {
        let mut a = PolyMatrix::zero(self.n, self.nvars);
        for e in &self.arrows {
            let w = a.get(e.to, e.from)
                + &LaurentPoly::term(self.nvars, e.exps.clone(), e.coef.clone());
            a.set(e.to, e.from, w);
        }
        a
    }
}
