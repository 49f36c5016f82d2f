//! Symmetrization of a positive basis by a finite-order automorphism
//! `omega(b_i) = lambda_i b_{sigma(i)}`.

use serde::Deserialize;
use thiserror::Error;

use crate::laurent::{LaurentPoly, PolyFraction};
use crate::pm::{GenPerm, PmError, StructureConstants};

#[derive(Debug, Error)]
pub enum SymmetrizeError {
    #[error(transparent)]
    Pm(#[from] PmError),
    #[error("omega has infinite order: scalars along the cycle of {0} do not multiply to 1")]
    InfiniteOrder(usize),
    #[error("size mismatch: omega acts on {omega} elements, tensor has {tensor}")]
    Size { omega: usize, tensor: usize },
    #[error("omega is neither a module nor an algebra automorphism (fails at c[{i}][{j}][{k}])")]
    NotAutomorphism { i: usize, j: usize, k: usize },
    #[error("symmetrized product s_{0} s_{1} is not a combination of the s_l")]
    NotClosed(usize, usize),
    #[error("bad omega JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomorphismKind {
    /// `omega(x y) = x omega(y)`
    Module,
    /// `omega(x y) = omega(x) omega(y)`
    Algebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAutomorphism {
    map: GenPerm,
    order: usize,
}

#[derive(Deserialize)]
struct OmegaJson {
    sigma: Vec<usize>,
    lambdas: Vec<String>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ModuleAutomorphism {
    pub fn new(sigma: Vec<usize>, lambdas: Vec<LaurentPoly>) -> Result<Self, SymmetrizeError> {
        let map = GenPerm::new(sigma, lambdas)?;
        let n = map.n();
        let mut order = 1;
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut prod = LaurentPoly::one(map.scalars()[start].nvars());
            let mut i = start;
            loop {
                seen[i] = true;
                prod = &prod * &map.scalars()[i];
                len += 1;
                i = map.sigma()[i];
                if i == start {
                    break;
                }
            }
            if !prod.is_one() {
                return Err(SymmetrizeError::InfiniteOrder(start));
            }
            order = order / gcd(order, len) * len;
        }
        Ok(ModuleAutomorphism { map, order })
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        ModuleAutomorphism {
            map: GenPerm::identity(n, nvars),
            order: 1,
        }
    }

    /// `{"sigma": [...], "lambdas": ["1", "z1", ...]}`
    pub fn from_json(text: &str, names: &[String]) -> Result<Self, SymmetrizeError> {
        let raw: OmegaJson = serde_json::from_str(text).map_err(|e| SymmetrizeError::Json(e.to_string()))?;
        let lambdas = raw
            .lambdas
            .iter()
            .map(|s| LaurentPoly::parse(s, names).map_err(|e| SymmetrizeError::Json(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(raw.sigma, lambdas)
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sigma(&self) -> &[usize] {
        self.map.sigma()
    }

    pub fn lambdas(&self) -> &[LaurentPoly] {
        self.map.scalars()
    }

    pub fn as_gen_perm(&self) -> &GenPerm {
        &self.map
    }

    /// `omega(sum x_i b_i) = sum x_i lambda_i b_{sigma(i)}`.
    pub fn apply(&self, x: &[PolyFraction]) -> Vec<PolyFraction> {
        let n = self.n();
        let mut out = vec![PolyFraction::zero(x.first().map_or(0, |p| p.nvars())); n];
        for i in 0..n {
            out[self.sigma()[i]] = &x[i] * &PolyFraction::from_poly(self.lambdas()[i].clone());
        }
        out
    }

    /// Which identity `omega` satisfies against `c`, preferring `Module`.
    pub fn kind_for(&self, c: &StructureConstants) -> Result<AutomorphismKind, SymmetrizeError> {
        let n = c.n();
        if self.n() != n {
            return Err(SymmetrizeError::Size {
                omega: self.n(),
                tensor: n,
            });
        }
        let s = self.sigma();
        let l: Vec<PolyFraction> = self.lambdas().iter().cloned().map(PolyFraction::from_poly).collect();
        let mut module = None;
        let mut algebra = None;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = c.get(i, j, k) * &l[k];
                    if module.is_none() && lhs != c.get(i, s[j], s[k]) * &l[j] {
                        module = Some((i, j, k));
                    }
                    if algebra.is_none() && lhs != &(c.get(s[i], s[j], s[k]) * &l[i]) * &l[j] {
                        algebra = Some((i, j, k));
                    }
                }
            }
        }
        match (module, algebra) {
            (None, _) => Ok(AutomorphismKind::Module),
            (_, None) => Ok(AutomorphismKind::Algebra),
            (Some((i, j, k)), _) => Err(SymmetrizeError::NotAutomorphism { i, j, k }),
        }
    }
}

/// Orbits of `sigma`, each sorted, listed by minimum element.
pub fn orbits(w: &ModuleAutomorphism) -> Vec<Vec<usize>> {
    let n = w.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orb = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orb.push(i);
            i = w.sigma()[i];
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

#[derive(Debug, Clone)]
pub struct SymmetrizedBasis {
    pub kind: AutomorphismKind,
    pub order: usize,
    pub orbits: Vec<Vec<usize>>,
    /// `i_l = min(O_l)`.
    pub orbit_reps: Vec<usize>,
    /// Coordinates of each `s_l` in the original basis.
    pub s_elements: Vec<Vec<PolyFraction>>,
    /// `s_l s_l' = sum_l'' structure[l][l'][l''] s_l''`.
    pub structure: StructureConstants,
    pub normalized: bool,
}

fn unit_vector(n: usize, nvars: usize, i: usize) -> Vec<PolyFraction> {
    let mut v = vec![PolyFraction::zero(nvars); n];
    v[i] = PolyFraction::one(nvars);
    v
}

fn add_into(acc: &mut [PolyFraction], x: &[PolyFraction]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = &*a + b;
    }
}

/// `s_l = sum_{a<m} omega^a(b_{i_l})`.
pub fn symmetrized_constants(
    c: &StructureConstants,
    w: &ModuleAutomorphism,
) -> Result<SymmetrizedBasis, SymmetrizeError> {
    build(c, w, false)
}

/// Same, with `s_l` replaced by `sum_{a<|O_l|} omega^a(b_{i_l})`, so that
/// `s_0 = b_0` when the unit is fixed.
pub fn symmetrized_constants_normalized(
    c: &StructureConstants,
    w: &ModuleAutomorphism,
) -> Result<SymmetrizedBasis, SymmetrizeError> {
    build(c, w, true)
}

fn build(c: &StructureConstants, w: &ModuleAutomorphism, normalized: bool) -> Result<SymmetrizedBasis, SymmetrizeError> {
    let kind = w.kind_for(c)?;
    let n = c.n();
    let nv = c.nvars();
    let m = w.order();
    let orbs = orbits(w);
    let reps: Vec<usize> = orbs.iter().map(|o| o[0]).collect();
    let r = orbs.len();

    let sym = |x: &[PolyFraction], times: usize| {
        let mut acc = vec![PolyFraction::zero(nv); n];
        let mut cur = x.to_vec();
        for _ in 0..times {
            add_into(&mut acc, &cur);
            cur = w.apply(&cur);
        }
        acc
    };

    let s: Vec<Vec<PolyFraction>> = orbs
        .iter()
        .map(|o| sym(&unit_vector(n, nv, o[0]), if normalized { o.len() } else { m }))
        .collect();
    // Coefficient of b_{i_l} in s_l.
    let lead: Vec<PolyFraction> = (0..r).map(|l| s[l][reps[l]].clone()).collect();

    let commutative = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| c.get(i, j, k) == c.get(j, i, k))));

    let mut table = vec![PolyFraction::zero(nv); r * r * r];
    for l in 0..r {
        for lp in 0..r {
            let prod = c.mul_vectors(&s[l], &s[lp]);
            // The double-sum form, where it applies.
            if !normalized && (kind == AutomorphismKind::Algebra || commutative) {
                let y = c.mul_vectors(&unit_vector(n, nv, reps[l]), &s[lp]);
                if sym(&y, m) != prod {
                    return Err(SymmetrizeError::NotClosed(l, lp));
                }
            }
            let mut rebuilt = vec![PolyFraction::zero(nv); n];
            for lpp in 0..r {
                let coef = prod[reps[lpp]].div(&lead[lpp]).expect("nonzero lead");
                let scaled: Vec<PolyFraction> = s[lpp].iter().map(|x| x * &coef).collect();
                add_into(&mut rebuilt, &scaled);
                table[(l * r + lp) * r + lpp] = coef.to_laurent().map_or(coef, PolyFraction::from_poly);
            }
            if rebuilt != prod {
                return Err(SymmetrizeError::NotClosed(l, lp));
            }
        }
    }
    let structure = StructureConstants::from_fn(r, nv, 0, |i, j, k| table[(i * r + j) * r + k].clone());
    Ok(SymmetrizedBasis {
        kind,
        order: m,
        orbits: orbs,
        orbit_reps: reps,
        s_elements: s,
        structure,
        normalized,
    })
}
