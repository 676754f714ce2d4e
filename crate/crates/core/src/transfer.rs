//! Contraction data and homotopy transfer of a cyclic structure to cohomology.
//!
//! The transfer works on the shifted space `V = L[1]`, where the brackets
//! become graded-symmetric maps `Q_k` of degree +1:
//! `Q_k(sa_1,…,sa_k) = (−1)^{Σ_j (k−j)|a_j|} s μ_k(a_1,…,a_k)`.
//! With `h = −sηs⁻¹` the transferred maps are `Q'_n = p X_n` and the
//! quasi-isomorphism components are `F_n = h X_n`, where
//! `X_n = Σ ε Q_r(F_{B_1},…,F_{B_r})` runs over set partitions of the
//! arguments into `r ≥ 2` blocks. This is the rooted-tree sum evaluated as a
//! memoized recursion over argument subsets.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::axioms::{check_cyclic, check_jacobi, for_each_multiset, AxiomReport};
use crate::cohomology::{differential_matrix, split, Cohomology};
use crate::error::{Error, Result};
use crate::graded::{koszul_sign, GradedSpace};
use crate::linalg::{self, Matrix};
use crate::linfty::{CyclicPairing, LInftyStructure};
use crate::rational::Rat;

/// Largest arity [`transfer`] computes unless told otherwise.
pub const DEFAULT_ARITY_BUDGET: usize = 10;

/// Homotopy `η` and projector `Π = 1 − (dη + ηd)` onto harmonic representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub eta: Matrix,
    pub pi: Matrix,
    /// `H(L)` with `ι` and `p`; its space is `M = Π(L)` in the basis of representatives.
    pub cohomology: Cohomology,
}

impl Contraction {
    pub fn h_space(&self) -> &GradedSpace {
        &self.cohomology.space
    }

    /// Re-verifies `η² = 0`, `ηdη = η`, `ae(ηx,y) = (−1)^{|x|} ae(x,ηy)`,
    /// `Π = 1 − (dη+ηd)`, `Π² = Π`, `Π = ιp`. Returns the first failure.
    pub fn verify(&self, s: &LInftyStructure, ae: &CyclicPairing) -> Result<()> {
        let n = s.space().dim();
        let d = differential_matrix(s);
        let eta = &self.eta;
        let zero = |m: &Matrix| m.iter().flatten().all(Zero::is_zero);
        let sub = |a: &Matrix, b: &Matrix| -> Matrix {
            a.iter()
                .zip(b)
                .map(|(r, q)| r.iter().zip(q).map(|(x, y)| x - y).collect())
                .collect()
        };
        let fail = |what: &str| Err(Error::Internal(format!("contraction check failed: {what}")));
        if !zero(&linalg::mat_mul(eta, eta, n)) {
            return fail("η² = 0");
        }
        let ede = linalg::mat_mul(&linalg::mat_mul(eta, &d, n), eta, n);
        if !zero(&sub(&ede, eta)) {
            return fail("ηdη = η");
        }
        let de = linalg::mat_mul(&d, eta, n);
        let ed = linalg::mat_mul(eta, &d, n);
        let comm: Matrix = de
            .iter()
            .zip(&ed)
            .map(|(r, q)| r.iter().zip(q).map(|(x, y)| x + y).collect())
            .collect();
        let pi = sub(&linalg::identity(n), &comm);
        if pi != self.pi {
            return fail("Π = 1 − (dη + ηd)");
        }
        if linalg::mat_mul(&pi, &pi, n) != pi {
            return fail("Π² = Π");
        }
        let ip = linalg::mat_mul(
            &self.cohomology.iota,
            &self.cohomology.proj,
            self.h_space().dim(),
        );
        if ip != pi {
            return fail("Π = ιp");
        }
        if let Some((i, j)) = eta_adjointness_defect(s.space(), eta, ae, 1) {
            return fail(&format!(
                "ae(ηx, y) = (−1)^|x| ae(x, ηy) on ({}, {})",
                s.space().name(i),
                s.space().name(j)
            ));
        }
        Ok(())
    }
}

/// First basis pair where `ae(ηx, y) − sign·(−1)^{|x|} ae(x, ηy) ≠ 0`, with
/// `sign = ±1` selecting the relation being tested.
pub fn eta_adjointness_defect(
    space: &GradedSpace,
    eta: &Matrix,
    ae: &CyclicPairing,
    sign: i8,
) -> Option<(usize, usize)> {
    let n = space.dim();
    let col = |j: usize| -> Vec<Rat> { eta.iter().map(|r| r[j].clone()).collect() };
    for i in 0..n {
        let ex = col(i);
        for j in 0..n {
            let ey = col(j);
            let lhs = ae.pair(&ex, &space.basis_vec(j));
            let rhs = ae.pair(&space.basis_vec(i), &ey);
            let e = if space.degree(i).rem_euclid(2) == 1 {
                -sign
            } else {
                sign
            };
            let rhs = if e < 0 { -rhs } else { rhs };
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// Builds `η` from an ae-isotropic splitting `L^i = B^i ⊕ H^i ⊕ C^i`.
pub fn build_contraction(s: &LInftyStructure, ae: &CyclicPairing) -> Result<Contraction> {
    let g = ae.matrix();
    if s.space().dim() > 0 && linalg::inverse(&g).is_none() {
        return Err(Error::Input(
            "the pairing is degenerate on the total space".into(),
        ));
    }
    let sp = split(s, Some(ae))?;
    let n = s.space().dim();
    let pi = linalg::mat_mul(&sp.h.iota, &sp.h.proj, sp.h.space.dim());
    let pi = if sp.h.space.dim() == 0 {
        linalg::zeros(n, n)
    } else {
        pi
    };
    let c = Contraction {
        eta: sp.eta,
        pi,
        cohomology: sp.h,
    };
    c.verify(s, ae)?;
    Ok(c)
}

/// Structure `ν_k` on `H(L)` with the restricted pairing `κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferredStructure {
    pub structure: LInftyStructure,
    pub kappa: CyclicPairing,
    pub cohomology: Cohomology,
    /// Highest arity computed.
    pub order: usize,
}

fn decalage_sign(degrees: &[i32]) -> bool {
    let k = degrees.len() as i32;
    let e: i32 = degrees
        .iter()
        .enumerate()
        .map(|(j, d)| (k - 1 - j as i32) * d)
        .sum();
    e.rem_euclid(2) == 1
}

struct Shifted<'a> {
    s: &'a LInftyStructure,
    /// `h = −η` as sparse columns
    h: Vec<Vec<(usize, Rat)>>,
    arities: Vec<usize>,
}

impl Shifted<'_> {
    /// `Q_r` on homogeneous vectors.
    fn q(&self, args: &[&Vec<Rat>]) -> Vec<Rat> {
        let space = self.s.space();
        let mut out = space.zero_vec();
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; args.len()];
        self.q_rec(args, &supports, 0, &mut idx, Rat::one(), &mut out);
        out
    }

    fn q_rec(
        &self,
        args: &[&Vec<Rat>],
        supports: &[Vec<usize>],
        pos: usize,
        idx: &mut Vec<usize>,
        coeff: Rat,
        out: &mut [Rat],
    ) {
        if pos == args.len() {
            if let Some((sg, v)) = self.s.lookup(idx) {
                let degs: Vec<i32> = idx.iter().map(|&i| self.s.space().degree(i)).collect();
                let neg = (sg < 0) != decalage_sign(&degs);
                let c = if neg { -coeff } else { coeff };
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *o += &c * x;
                    }
                }
            }
            return;
        }
        for &i in &supports[pos] {
            idx[pos] = i;
            self.q_rec(args, supports, pos + 1, idx, &coeff * &args[pos][i], out);
        }
    }

    fn apply_h(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &self.h[j] {
                out[*i] += x * c;
            }
        }
        out
    }
}

/// Set partitions of the bitmask `set` into at least `min_blocks` blocks,
/// blocks ordered by their least element.
fn partitions(set: u32, min_blocks: usize, max_blocks: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, cur: &mut Vec<u32>, max_blocks: usize, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_blocks {
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // every subset of `others`, joined with `low`
        let mut sub = others;
        loop {
            cur.push(low | sub);
            rec(others & !sub, cur, max_blocks, out);
            cur.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    rec(set, &mut Vec::new(), max_blocks, &mut out);
    out.retain(|p| p.len() >= min_blocks);
    out
}

/// `X_{[n]}` for the given basis arguments of `H`, as a vector in `L`.
fn tree_sum(sh: &Shifted<'_>, inputs: &[Vec<Rat>], vdeg: &[i32]) -> Vec<Rat> {
    let n = inputs.len();
    let full: u32 = (1u32 << n) - 1;
    let max_r = sh.arities.iter().copied().max().unwrap_or(0);
    let mut f: HashMap<u32, Vec<Rat>> = HashMap::new();
    for (i, v) in inputs.iter().enumerate() {
        f.insert(1 << i, v.clone());
    }
    let dim = sh.s.space().dim();
    let mut x_full = vec![Rat::zero(); dim];
    // subsets in increasing popcount
    let mut masks: Vec<u32> = (1..=full).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut x = vec![Rat::zero(); dim];
        for part in partitions(mask, 2, max_r) {
            if !sh.arities.contains(&part.len()) {
                continue;
            }
            let blocks: Vec<&Vec<Rat>> =
                match part.iter().map(|b| f.get(b)).collect::<Option<Vec<_>>>() {
                    Some(b) => b,
                    None => continue,
                };
            if blocks.iter().any(|b| b.iter().all(Zero::is_zero)) {
                continue;
            }
            // Koszul sign of listing the arguments block by block
            let elems: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let perm: Vec<usize> = part
                .iter()
                .flat_map(|b| (0..n).filter(move |i| b >> i & 1 == 1))
                .map(|i| elems.iter().position(|&e| e == i).unwrap())
                .collect();
            let degs: Vec<i32> = elems.iter().map(|&e| vdeg[e]).collect();
            let eps = koszul_sign(&perm, &degs).expect("permutation").epsilon;
            let q = sh.q(&blocks);
            for (a, b) in x.iter_mut().zip(q) {
                if eps < 0 {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
        }
        if mask == full {
            x_full = x;
        } else {
            f.insert(mask, sh.apply_h(&x));
        }
    }
    x_full
}

/// Transfers the structure to cohomology through arity `n` with the default budget.
pub fn transfer(
    s: &LInftyStructure,
    ae: &CyclicPairing,
    c: &Contraction,
    n: usize,
) -> Result<TransferredStructure> {
    transfer_with_budget(s, ae, c, n, DEFAULT_ARITY_BUDGET)
}

pub fn transfer_with_budget(
    s: &LInftyStructure,
    ae: &CyclicPairing,
    c: &Contraction,
    n: usize,
    budget: usize,
) -> Result<TransferredStructure> {
    if n > budget {
        return Err(Error::Resource(format!(
            "transfer to arity {n} exceeds the arity budget {budget}"
        )));
    }
    let h = &c.cohomology;
    let hs = h.space.clone();
    let mut kappa = CyclicPairing::new(&hs, ae.dimension());
    for a in 0..hs.dim() {
        for b in a..hs.dim() {
            let v = ae.pair(&h.iota_column(a), &h.iota_column(b));
            kappa.set(a, b, v)?;
        }
    }
    let trivial_d = s.entries(1).next().is_none();
    if trivial_d {
        // minimal input: M = L and every tree with an η-edge vanishes
        let mut out = LInftyStructure::new(hs.clone());
        for k in 2..=n {
            for (idx, v) in s.entries(k) {
                let hi: Vec<usize> = idx
                    .iter()
                    .map(|&i| hs.index_of(s.space().name(i)))
                    .collect::<Result<_>>()?;
                out.set_entry(&hi, h.project(v))?;
            }
        }
        return Ok(TransferredStructure {
            structure: out,
            kappa,
            cohomology: h.clone(),
            order: n,
        });
    }

    let dim = s.space().dim();
    let hcols: Vec<Vec<(usize, Rat)>> = (0..dim)
        .map(|j| {
            (0..dim)
                .filter(|&i| !c.eta[i][j].is_zero())
                .map(|i| (i, -c.eta[i][j].clone()))
                .collect()
        })
        .collect();
    let sh = Shifted {
        s,
        h: hcols,
        arities: s.arities().collect(),
    };
    let mut out = LInftyStructure::new(hs.clone());
    let hdeg = hs.degrees().to_vec();
    for k in 2..=n {
        let shift = 2 - k as i32;
        let accept = |sum: i32| hs.dim_in(sum + shift) > 0;
        let mut err = None;
        for_each_multiset(&hdeg, k, &accept, &mut |args| {
            if err.is_some() {
                return;
            }
            let inputs: Vec<Vec<Rat>> = args.iter().map(|&a| h.iota_column(a)).collect();
            let vdeg: Vec<i32> = args.iter().map(|&a| hdeg[a] - 1).collect();
            let x = tree_sum(&sh, &inputs, &vdeg);
            let mut q = h.project(&x);
            let degs: Vec<i32> = args.iter().map(|&a| hdeg[a]).collect();
            if decalage_sign(&degs) {
                q.iter_mut().for_each(|v| *v = -v.clone());
            }
            if let Err(e) = out.set_entry(args, q) {
                err = Some(e);
            }
        });
        if let Some(e) = err {
            return Err(Error::Internal(format!(
                "transferred bracket out of degree: {e}"
            )));
        }
    }
    Ok(TransferredStructure {
        structure: out,
        kappa,
        cohomology: h.clone(),
        order: n,
    })
}

/// Jacobi and cyclic checks of the transferred structure through arity `n`.
pub fn check_transfer(t: &TransferredStructure, n: usize) -> AxiomReport {
    let mut r = check_jacobi(&t.structure, n);
    r.merge(check_cyclic(&t.structure, &t.kappa, n));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn de_c() -> (LInftyStructure, CyclicPairing) {
        let space = GradedSpace::from_degrees(&[(1, &["a", "e"]), (2, &["b", "c"])]).unwrap();
        let mut s = LInftyStructure::new(space.clone());
        s.set_named(&["e"], &[("c", rat(1))]).unwrap();
        let mut k = CyclicPairing::new(&space, 3);
        k.set_named(&space, "a", "b", rat(1)).unwrap();
        k.set_named(&space, "e", "c", rat(1)).unwrap();
        (s, k)
    }

    #[test]
    fn contraction_on_rank_one_complex() {
        let (s, k) = de_c();
        let c = build_contraction(&s, &k).unwrap();
        // η(c) = e and zero elsewhere
        let mut want = linalg::zeros(4, 4);
        want[1][3] = rat(1);
        assert_eq!(c.eta, want);
        assert_eq!(c.h_space().names(), &["a", "b"]);
        assert_eq!(
            linalg::mat_vec(&c.pi, &[rat(1), rat(1), rat(1), rat(1)]),
            vec![rat(1), rat(0), rat(1), rat(0)]
        );
        // the sign with a plus between the two terms does not hold for this η
        assert!(eta_adjointness_defect(s.space(), &c.eta, &k, -1).is_some());
        assert!(eta_adjointness_defect(s.space(), &c.eta, &k, 1).is_none());
    }

    #[test]
    fn partitions_count_bell_numbers() {
        assert_eq!(partitions(0b111, 1, 3).len(), 5);
        assert_eq!(partitions(0b1111, 1, 4).len(), 15);
        assert_eq!(partitions(0b1111, 2, 2).len(), 7);
    }

    #[test]
    fn minimal_input_is_restricted() {
        let space = GradedSpace::from_degrees(&[(1, &["a"]), (2, &["b"])]).unwrap();
        let mut s = LInftyStructure::new(space.clone());
        s.set_named(&["a", "a"], &[("b", rat(2))]).unwrap();
        let mut k = CyclicPairing::new(&space, 3);
        k.set_named(&space, "a", "b", rat(1)).unwrap();
        let c = build_contraction(&s, &k).unwrap();
        assert!(c.eta.iter().flatten().all(Zero::is_zero));
        let t = transfer(&s, &k, &c, 4).unwrap();
        assert_eq!(t.structure, s);
        assert!(check_transfer(&t, 4).passed());
        assert!(matches!(transfer(&s, &k, &c, 11), Err(Error::Resource(_))));
    }
}
