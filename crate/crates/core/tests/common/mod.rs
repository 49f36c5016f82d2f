#![allow(dead_code)]

use pmgraph::laurent::default_names;
use pmgraph::{LaurentPoly, PolyMatrix, WeightedDigraph};

pub fn names(m: usize) -> Vec<String> {
    default_names(m)
}

pub fn p(s: &str, m: usize) -> LaurentPoly {
    LaurentPoly::parse(s, &names(m)).unwrap()
}

pub fn mat(rows: &[&[&str]], m: usize) -> PolyMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| p(s, m)).collect())
        .collect();
    PolyMatrix::new(m, rows).unwrap()
}

pub fn graph(rows: &[&[&str]], m: usize) -> WeightedDigraph {
    WeightedDigraph::from_adjacency(names(m), None, &mat(rows, m)).unwrap()
}

pub fn counterexample() -> WeightedDigraph {
    graph(&[&["0", "z1", "z2"], &["1", "0", "1"], &["1", "1", "0"]], 2)
}

pub fn kschur3_matrix() -> PolyMatrix {
    mat(
        &[
            &["0", "0", "z1", "z3", "z2", "0"],
            &["1", "0", "0", "0", "0", "z2"],
            &["0", "1", "0", "0", "0", "z3"],
            &["0", "1", "0", "0", "0", "z1"],
            &["0", "0", "1", "1", "0", "0"],
            &["0", "0", "0", "0", "1", "0"],
        ],
        3,
    )
}

pub fn kschur3() -> WeightedDigraph {
    WeightedDigraph::from_adjacency(names(3), None, &kschur3_matrix()).unwrap()
}

/// The 3-cycle with an extra `q`-weighted arrow, `q` as variable `z1`.
pub fn qcycle_symbolic() -> WeightedDigraph {
    graph(&[&["0", "0", "1"], &["1", "0", "z1"], &["0", "1", "0"]], 1)
}

pub fn qcycle_at_one() -> WeightedDigraph {
    WeightedDigraph::from_int_adjacency(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]).unwrap()
}

/// Companion graph of X^4 - 2X^3 - X^2 - 3X - 4.
pub fn companion() -> WeightedDigraph {
    pmgraph::crystals::companion_graph(&[4, 3, 1, 2]).unwrap()
}

pub fn two_vertex() -> WeightedDigraph {
    graph(&[&["0", "z1 + z2"], &["1", "0"]], 2)
}

pub fn two_cycle() -> WeightedDigraph {
    WeightedDigraph::from_int_adjacency(&[vec![0, 1], vec![1, 0]]).unwrap()
}

pub fn three_cycle() -> WeightedDigraph {
    WeightedDigraph::from_int_adjacency(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap()
}

/// Variables: a, b, l1..l4 as z1..z6.
pub fn klein_u() -> PolyMatrix {
    mat(
        &[
            &["0", "z1", "z2", "0"],
            &["z1", "0", "0", "z2"],
            &["z2", "0", "0", "z1"],
            &["0", "z2", "z1", "0"],
        ],
        6,
    )
}

/// V = D U D^{-1} with D = diag(l1..l4).
pub fn klein_v() -> PolyMatrix {
    mat(
        &[
            &["0", "z1*z3*z4^-1", "z2*z3*z5^-1", "0"],
            &["z1*z4*z3^-1", "0", "0", "z2*z4*z6^-1"],
            &["z2*z5*z3^-1", "0", "0", "z1*z5*z6^-1"],
            &["0", "z2*z6*z4^-1", "z1*z6*z5^-1", "0"],
        ],
        6,
    )
}

pub fn klein() -> WeightedDigraph {
    WeightedDigraph::from_adjacency(names(6), None, &klein_v()).unwrap()
}

/// Group algebra of Z/n on e_0..e_{n-1}.
pub fn group_algebra(n: usize) -> pmgraph::StructureConstants {
    let t: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| i64::from((i + j) % n == k)).collect())
                .collect()
        })
        .collect();
    pmgraph::StructureConstants::from_ints(0, &t)
}

/// Class sizes and character values for S_3: trivial, sign, standard.
pub const S3_CLASSES: [i64; 3] = [1, 3, 2];
pub const S3_TABLE: [[i64; 3]; 3] = [[1, 1, 1], [1, -1, 1], [2, 0, -1]];

/// S_4 classes e, (12), (12)(34), (123), (1234); rows indexed by the
/// partitions (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
pub const S4_CLASSES: [i64; 5] = [1, 6, 3, 8, 6];
pub const S4_TABLE: [[i64; 5]; 5] = [
    [1, 1, 1, 1, 1],
    [3, 1, -1, 0, -1],
    [2, 0, 2, -1, 0],
    [3, -1, -1, 0, 1],
    [1, -1, 1, 1, -1],
];

/// Multiplicities `<chi_i chi_j, chi_k>` from a real character table.
pub fn character_ring<const C: usize>(classes: &[i64; C], table: &[[i64; C]]) -> pmgraph::StructureConstants {
    let order: i64 = classes.iter().sum();
    let r = table.len();
    let t: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| {
                            let s: i64 = (0..C)
                                .map(|c| classes[c] * table[i][c] * table[j][c] * table[k][c])
                                .sum();
                            assert_eq!(s % order, 0);
                            s / order
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    pmgraph::StructureConstants::from_ints(0, &t)
}
