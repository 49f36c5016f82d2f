//! Example families: Kirillov-Reshetikhin column and row crystals, the
//! Hamermesh graph, companion graphs and the su(2) fusion rules.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Arrow, GraphError, WeightedDigraph};
use crate::laurent::LaurentPoly;
use crate::pm::StructureConstants;

#[derive(Debug, Error)]
pub enum CrystalError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Strictly increasing entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column(pub Vec<u32>);

/// Weakly increasing entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row(pub Vec<u32>);

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<u32>);

impl Column {
    pub fn is_valid(&self, n: u32) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1]) && self.0.iter().all(|&x| (1..=n).contains(&x))
    }
}

impl Row {
    pub fn is_valid(&self, n: u32) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1]) && self.0.iter().all(|&x| (1..=n).contains(&x))
    }
}

impl Partition {
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of distinct parts.
    pub fn distinct_parts(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    fn trimmed(mut v: Vec<u32>) -> Partition {
        v.sort_unstable_by(|a, b| b.cmp(a));
        while v.last() == Some(&0) {
            v.pop();
        }
        Partition(v)
    }
}

fn label(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// All k-subsets of `1..=n` in lex order.
pub fn columns(k: u32, n: u32) -> Vec<Column> {
    fn rec(start: u32, n: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Column>) {
        if left == 0 {
            out.push(Column(cur.clone()));
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// All weakly increasing rows of length `l` in lex order.
pub fn rows(l: u32, n: u32) -> Vec<Row> {
    fn rec(start: u32, n: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Row>) {
        if left == 0 {
            out.push(Row(cur.clone()));
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, l, &mut Vec::new(), &mut out);
    out
}

/// Crystal arrows out of a column: `(target, color)`.
pub fn column_arrows(c: &Column, n: u32) -> Vec<(Column, u32)> {
    let has = |x: u32| c.0.contains(&x);
    let swap = |from: u32, to: u32| {
        let mut v: Vec<u32> = c.0.iter().map(|&x| if x == from { to } else { x }).collect();
        v.sort_unstable();
        Column(v)
    };
    let mut out = Vec::new();
    for i in 1..n {
        if has(i) && !has(i + 1) {
            out.push((swap(i, i + 1), i));
        }
    }
    if has(n) && !has(1) {
        out.push((swap(n, 1), 0));
    }
    out
}

/// Crystal arrows out of a row: `(target, color)`.
pub fn row_arrows(r: &Row, n: u32) -> Vec<(Row, u32)> {
    let replace_one = |from: u32, to: u32| {
        let mut v = r.0.clone();
        let pos = v.iter().position(|&x| x == from).unwrap();
        v[pos] = to;
        v.sort_unstable();
        Row(v)
    };
    let mut out = Vec::new();
    for i in 1..n {
        if r.0.contains(&i) {
            out.push((replace_one(i, i + 1), i));
        }
    }
    if r.0.contains(&n) {
        out.push((replace_one(n, 1), 0));
    }
    out
}

fn build<T: Ord + Clone>(
    verts: &[T],
    labels: Vec<String>,
    arrows_of: impl Fn(&T) -> Vec<(T, u32)>,
) -> Result<WeightedDigraph, CrystalError> {
    let mut arrows = Vec::new();
    for (j, v) in verts.iter().enumerate() {
        for (t, color) in arrows_of(v) {
            let i = verts.iter().position(|x| *x == t).expect("target is a vertex");
            arrows.push(Arrow {
                from: j,
                to: i,
                weight: LaurentPoly::one(0),
                color: Some(color as i64),
            });
        }
    }
    Ok(WeightedDigraph::new(vec![], labels, arrows)?)
}

/// `B^a_{k,n}`: vertices are columns in lex order.
pub fn kr_column_graph(k: u32, n: u32) -> Result<WeightedDigraph, CrystalError> {
    if n < 2 || k < 1 || k > n {
        return Err(CrystalError::Range(format!("need 1 <= k <= n, n >= 2 (k={k}, n={n})")));
    }
    let verts = columns(k, n);
    let labels = verts.iter().map(|c| label(&c.0)).collect();
    build(&verts, labels, |c| column_arrows(c, n))
}

/// `B^s_{l,n}`: vertices are rows in lex order.
pub fn kr_row_graph(l: u32, n: u32) -> Result<WeightedDigraph, CrystalError> {
    if n < 2 || l < 1 {
        return Err(CrystalError::Range(format!("need l >= 1, n >= 2 (l={l}, n={n})")));
    }
    let verts = rows(l, n);
    let labels = verts.iter().map(|r| label(&r.0)).collect();
    build(&verts, labels, |r| row_arrows(r, n))
}

/// Graph whose vertex `a` is the su(2) weight `a` at level `l`.
pub fn su2_graph(l: u32) -> Result<WeightedDigraph, CrystalError> {
    kr_row_graph(l, 2)
}

fn rotate(v: &[u32], n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = v.iter().map(|&x| x % n + 1).collect();
    out.sort_unstable();
    out
}

fn complement(v: &[u32], n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = v.iter().map(|&x| n + 1 - x).collect();
    out.sort_unstable();
    out
}

pub fn promotion_column(c: &Column, n: u32) -> Column {
    Column(rotate(&c.0, n))
}

pub fn promotion_row(r: &Row, n: u32) -> Row {
    Row(rotate(&r.0, n))
}

/// `i -> n + 1 - i`.
pub fn diamond_column(c: &Column, n: u32) -> Column {
    Column(complement(&c.0, n))
}

pub fn diamond_row(r: &Row, n: u32) -> Row {
    Row(complement(&r.0, n))
}

/// Column `c_1 < ... < c_k` to the partition `lambda_i = c_{k+1-i} - (k+1-i)`
/// inside the rectangle `(n-k)^k`.
pub fn column_to_partition(c: &Column) -> Partition {
    let k = c.0.len();
    Partition::trimmed((0..k).map(|i| c.0[k - 1 - i] - (k - i) as u32).collect())
}

pub fn partition_to_column(p: &Partition, k: usize) -> Column {
    Column(
        (1..=k)
            .map(|j| p.0.get(k - j).copied().unwrap_or(0) + j as u32)
            .collect(),
    )
}

/// Row to the partition in `l^{n-1}` whose column heights are the entries
/// minus one.
pub fn row_to_partition(r: &Row) -> Partition {
    Partition::trimmed(r.0.iter().map(|&x| x - 1).collect()).conjugate()
}

pub fn partition_to_row(p: &Partition, l: usize) -> Row {
    let heights = p.conjugate().0;
    let mut v: Vec<u32> = (0..l).map(|c| heights.get(c).copied().unwrap_or(0) + 1).collect();
    v.sort_unstable();
    Row(v)
}

/// Partitions of `n`, lexicographically decreasing.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions obtained by moving one box, excluding `p` itself.
fn box_moves(p: &Partition) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    let len = p.0.len();
    for r in 0..len {
        if r + 1 < len && p.0[r + 1] == p.0[r] {
            continue;
        }
        let mut nu = p.0.clone();
        nu[r] -= 1;
        for a in 0..=len {
            let mut mu = nu.clone();
            if a == len {
                mu.push(1);
            } else {
                mu[a] += 1;
            }
            if mu.windows(2).all(|w| w[0] >= w[1]) {
                let mu = Partition::trimmed(mu);
                if mu != *p {
                    out.insert(mu);
                }
            }
        }
    }
    out
}

/// Multiplication by the character of `(n-1,1)` on the irreducible characters
/// of the symmetric group.
pub fn hamermesh_graph(n: u32) -> Result<WeightedDigraph, CrystalError> {
    if n < 2 {
        return Err(CrystalError::Range(format!("need n >= 2 (n={n})")));
    }
    let verts = partitions(n);
    let mut arrows = Vec::new();
    for (j, p) in verts.iter().enumerate() {
        let loops = p.distinct_parts() as i64 - 1;
        if loops > 0 {
            arrows.push(Arrow {
                from: j,
                to: j,
                weight: LaurentPoly::from_int(0, loops),
                color: None,
            });
        }
        for mu in box_moves(p) {
            let i = verts.iter().position(|x| *x == mu).unwrap();
            arrows.push(Arrow {
                from: j,
                to: i,
                weight: LaurentPoly::one(0),
                color: None,
            });
        }
    }
    let labels = verts.iter().map(|p| format!("({})", label(&p.0))).collect();
    Ok(WeightedDigraph::new(vec![], labels, arrows)?)
}

/// Companion graph: `v_j -> v_{j+1}` with weight 1 and `v_{n-1} -> v_i` with
/// weight `c[i]`, so `A e_{n-1} = sum_i c[i] e_i`.
pub fn companion_graph(c: &[i64]) -> Result<WeightedDigraph, CrystalError> {
    let n = c.len();
    if n == 0 || c.iter().any(|&x| x < 0) {
        return Err(CrystalError::Range("coefficients must be nonnegative, n >= 1".into()));
    }
    let mut arrows = Vec::new();
    for j in 0..n.saturating_sub(1) {
        arrows.push(Arrow {
            from: j,
            to: j + 1,
            weight: LaurentPoly::one(0),
            color: None,
        });
    }
    for (i, &w) in c.iter().enumerate() {
        if w > 0 {
            arrows.push(Arrow {
                from: n - 1,
                to: i,
                weight: LaurentPoly::from_int(0, w),
                color: None,
            });
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Ok(WeightedDigraph::new(vec![], labels, arrows)?)
}

/// `b_i b_j = b_{|i-j|} + b_{|i-j|+2} + ... + b_{min(i+j, 2l-i-j)}`.
pub fn su2_fusion_oracle(l: u32) -> StructureConstants {
    let n = l as usize + 1;
    let t: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let lo = i.abs_diff(j);
                    let hi = (i + j).min(2 * l as usize - i - j);
                    (0..n)
                        .map(|k| (k >= lo && k <= hi && (k - lo) % 2 == 0) as i64)
                        .collect()
                })
                .collect()
        })
        .collect();
    StructureConstants::from_ints(0, &t)
}

/// Colored arrow set `(from, to, color)`.
pub fn colored_arrows(g: &WeightedDigraph) -> BTreeSet<(usize, usize, i64)> {
    g.arrows()
        .iter()
        .map(|a| (a.from, a.to, a.color.unwrap_or(-1)))
        .collect()
}

/// `C ->^i C'` iff `f(C) ->^{i+1 mod n} f(C')` (`reverse = false`), or
/// `f(C') ->^{n-i mod n} f(C)` (`reverse = true`), exhaustively.
pub fn check_vertex_map(g: &WeightedDigraph, n: u32, map: &[usize], reverse: bool) -> bool {
    let arrows = colored_arrows(g);
    let n = n as i64;
    let image: BTreeSet<(usize, usize, i64)> = arrows
        .iter()
        .map(|&(a, b, c)| {
            if reverse {
                (map[b], map[a], (n - c).rem_euclid(n))
            } else {
                (map[a], map[b], (c + 1).rem_euclid(n))
            }
        })
        .collect();
    image == arrows
}

/// Promotion as a permutation of vertex indices of `B^a_{k,n}`.
pub fn column_vertex_map(k: u32, n: u32, f: impl Fn(&Column, u32) -> Column) -> Vec<usize> {
    let verts = columns(k, n);
    verts
        .iter()
        .map(|c| verts.iter().position(|x| *x == f(c, n)).unwrap())
        .collect()
}

pub fn row_vertex_map(l: u32, n: u32, f: impl Fn(&Row, u32) -> Row) -> Vec<usize> {
    let verts = rows(l, n);
    verts
        .iter()
        .map(|r| verts.iter().position(|x| *x == f(r, n)).unwrap())
        .collect()
}
