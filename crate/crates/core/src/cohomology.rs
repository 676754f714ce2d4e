//! Cohomology of `μ_1` and the splittings `L^i = B^i ⊕ H^i ⊕ C^i` behind it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::linalg::{self, Matrix};
use crate::linfty::{CyclicPairing, LInftyStructure};
use crate::rational::Rat;

/// `H(L)` with representative inclusion `ι: H → L` and projection `p: L → H`, `p∘ι = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub space: GradedSpace,
    /// `dim L × dim H`; column `a` is the representative of the `a`-th basis class.
    pub iota: Matrix,
    /// `dim H × dim L`; kills `B ⊕ C`.
    pub proj: Matrix,
}

impl Cohomology {
    pub fn iota_column(&self, a: usize) -> Vec<Rat> {
        self.iota.iter().map(|row| row[a].clone()).collect()
    }

    pub fn include(&self, h: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec(&self.iota, h)
    }

    pub fn project(&self, v: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec(&self.proj, v)
    }

    /// `dim H^i` per degree, nonzero degrees only.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.space
            .components()
            .iter()
            .map(|(d, v)| (*d, v.len()))
            .collect()
    }
}

/// Dense matrix of `μ_1` on the whole space, `dim × dim`.
pub fn differential_matrix(s: &LInftyStructure) -> Matrix {
    let n = s.space().dim();
    let mut m = linalg::zeros(n, n);
    for (idx, v) in s.entries(1) {
        for (i, c) in v.iter().enumerate() {
            m[i][idx[0]] = c.clone();
        }
    }
    m
}

pub(crate) struct Splitting {
    pub h: Cohomology,
    /// Homotopy `η` of degree −1 with `η(d c) = c` for `c` in the complements.
    pub eta: Matrix,
}

/// Restricts full-length vectors to the coordinates of one degree.
fn restrict(vs: &[Vec<Rat>], range: &std::ops::Range<usize>) -> Matrix {
    vs.iter().map(|v| v[range.clone()].to_vec()).collect()
}

pub(crate) fn split(s: &LInftyStructure, ae: Option<&CyclicPairing>) -> Result<Splitting> {
    let space = s.space();
    let n = space.dim();
    let d = differential_matrix(s);
    if !linalg::mat_mul(&d, &d, n)
        .iter()
        .flatten()
        .all(Zero::is_zero)
    {
        return Err(Error::Axiom(
            "μ_1∘μ_1 ≠ 0; check_jacobi reports the failing arguments at arity 1".into(),
        ));
    }
    let degrees: Vec<i32> = space.components().keys().copied().collect();
    let range = |i: i32| space.indices_in(i);
    let dcol = |v: &[Rat]| linalg::mat_vec(&d, v);

    // cycles and initial complements
    let mut z: BTreeMap<i32, Vec<Vec<Rat>>> = BTreeMap::new();
    let mut c: BTreeMap<i32, Vec<Vec<Rat>>> = BTreeMap::new();
    for &i in &degrees {
        let r = range(i);
        let block: Matrix = d.iter().map(|row| row[r.clone()].to_vec()).collect();
        let null = linalg::nullspace(&block, r.len());
        let (zr, pivots) = linalg::rref(&null);
        let zs: Vec<Vec<Rat>> = zr
            .into_iter()
            .map(|row| {
                let mut v = space.zero_vec();
                v[r.clone()].clone_from_slice(&row);
                v
            })
            .collect();
        let cs: Vec<Vec<Rat>> = (0..r.len())
            .filter(|j| !pivots.contains(j))
            .map(|j| space.basis_vec(r.start + j))
            .collect();
        z.insert(i, zs);
        c.insert(i, cs);
    }
    // boundaries with their chosen preimages
    let mut b: BTreeMap<i32, Vec<Vec<Rat>>> = BTreeMap::new();
    for &i in &degrees {
        let imgs = c
            .get(&(i - 1))
            .map(|cs| cs.iter().map(|v| dcol(v)).collect())
            .unwrap_or_default();
        b.insert(i, imgs);
    }

    if let Some(ae) = ae {
        let dim = ae.dimension();
        for &i in &degrees {
            let j = dim - i;
            if i > j {
                continue;
            }
            let ci = c.get(&i).cloned().unwrap_or_default();
            let cj = c.get(&j).cloned().unwrap_or_default();
            if ci.is_empty() || cj.is_empty() {
                continue;
            }
            if i == j {
                return Err(Error::Unsupported(format!(
                    "isotropic splitting in the middle degree {i}"
                )));
            }
            let bi = &b[&i];
            let m: Matrix = ci
                .iter()
                .map(|x| cj.iter().map(|y| ae.pair(x, y)).collect())
                .collect();
            let nmat: Matrix = bi
                .iter()
                .map(|x| cj.iter().map(|y| ae.pair(x, y)).collect())
                .collect();
            let ninv = (bi.len() == cj.len())
                .then(|| linalg::inverse(&nmat))
                .flatten()
                .ok_or_else(|| {
                    Error::Input(format!(
                        "no ae-compatible splitting in degree {i}: B^{i} and C^{j} do not pair perfectly"
                    ))
                })?;
            let x = linalg::mat_mul(&m, &ninv, cj.len());
            let adjusted: Vec<Vec<Rat>> = ci
                .iter()
                .zip(&x)
                .map(|(cv, row)| {
                    let mut v = cv.clone();
                    for (coef, bv) in row.iter().zip(bi) {
                        if coef.is_zero() {
                            continue;
                        }
                        for (a, bb) in v.iter_mut().zip(bv) {
                            *a -= coef * bb;
                        }
                    }
                    v
                })
                .collect();
            c.insert(i, adjusted);
        }
    }

    // harmonic representatives
    let mut h: BTreeMap<i32, Vec<Vec<Rat>>> = BTreeMap::new();
    for &i in &degrees {
        let zs = &z[&i];
        let bs = &b[&i];
        let reps: Vec<Vec<Rat>> = match ae {
            Some(ae) => {
                let cj = c.get(&(ae.dimension() - i)).cloned().unwrap_or_default();
                let cons: Matrix = cj
                    .iter()
                    .map(|y| zs.iter().map(|zv| ae.pair(zv, y)).collect())
                    .collect();
                let coeffs = if cj.is_empty() {
                    (0..zs.len())
                        .map(|k| {
                            let mut e = vec![Rat::zero(); zs.len()];
                            e[k] = Rat::one();
                            e
                        })
                        .collect()
                } else {
                    linalg::nullspace(&cons, zs.len())
                };
                let vs: Vec<Vec<Rat>> = coeffs
                    .iter()
                    .map(|a| {
                        let mut v = space.zero_vec();
                        for (ak, zv) in a.iter().zip(zs) {
                            if ak.is_zero() {
                                continue;
                            }
                            for (t, x) in v.iter_mut().zip(zv) {
                                *t += ak * x;
                            }
                        }
                        v
                    })
                    .collect();
                let r = range(i);
                let (rr, _) = linalg::rref(&restrict(&vs, &r));
                rr.into_iter()
                    .map(|row| {
                        let mut v = space.zero_vec();
                        v[r.clone()].clone_from_slice(&row);
                        v
                    })
                    .collect()
            }
            None => {
                let mut acc: Vec<Vec<Rat>> = bs.clone();
                let mut reps = Vec::new();
                let mut rank = linalg::rank(&acc);
                for zv in zs {
                    acc.push(zv.clone());
                    let r2 = linalg::rank(&acc);
                    if r2 > rank {
                        rank = r2;
                        reps.push(zv.clone());
                    } else {
                        acc.pop();
                    }
                }
                reps
            }
        };
        if reps.len() + bs.len() != zs.len() {
            return Err(Error::Internal(format!(
                "cohomology in degree {i}: {} representatives for dim Z = {}, dim B = {}",
                reps.len(),
                zs.len(),
                bs.len()
            )));
        }
        h.insert(i, reps);
    }

    // change of basis: per degree B, H, C
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut kinds: Vec<(char, usize)> = Vec::with_capacity(n);
    for &i in &degrees {
        for (k, v) in b[&i].iter().enumerate() {
            cols.push(v.clone());
            kinds.push(('b', k));
        }
        for v in &h[&i] {
            cols.push(v.clone());
            kinds.push(('h', 0));
        }
        for v in &c[&i] {
            cols.push(v.clone());
            kinds.push(('c', 0));
        }
    }
    let t = linalg::transpose(&cols);
    let tinv =
        linalg::inverse(&t).ok_or_else(|| Error::Internal("B ⊕ H ⊕ C is not a basis".into()))?;

    let mut names: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut iota_cols: Vec<Vec<Rat>> = Vec::new();
    let mut proj: Matrix = Vec::new();
    let mut eta = linalg::zeros(n, n);
    let mut pos = 0;
    for &i in &degrees {
        let pre = c.get(&(i - 1)).cloned().unwrap_or_default();
        for _ in &b[&i] {
            let (_, k) = kinds[pos];
            let row = &tinv[pos];
            for (r, x) in pre[k].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (col, y) in row.iter().enumerate() {
                    if !y.is_zero() {
                        eta[r][col] += x * y;
                    }
                }
            }
            pos += 1;
        }
        for (k, v) in h[&i].iter().enumerate() {
            let nm = representative_name(space, v, i, k + 1);
            names.entry(i).or_default().push(nm);
            iota_cols.push(v.clone());
            proj.push(tinv[pos].clone());
            pos += 1;
        }
        pos += c[&i].len();
    }
    // keep names unique when generated ones collide with reused ones
    let mut seen = std::collections::HashSet::new();
    for list in names.values_mut() {
        for nm in list.iter_mut() {
            while !seen.insert(nm.clone()) {
                nm.push('_');
            }
        }
    }
    let hspace = GradedSpace::new(names)?;
    let iota = if iota_cols.is_empty() {
        vec![Vec::new(); n]
    } else {
        linalg::transpose(&iota_cols)
    };
    Ok(Splitting {
        h: Cohomology {
            space: hspace,
            iota,
            proj,
        },
        eta,
    })
}

fn representative_name(space: &GradedSpace, v: &[Rat], degree: i32, k: usize) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]].is_one() {
        space.name(nz[0]).to_string()
    } else {
        let base = format!("h{degree}_{k}");
        if space.index_of(&base).is_ok() {
            format!("{base}_")
        } else {
            base
        }
    }
}

/// Cohomology of `μ_1` with representatives chosen by Gaussian elimination.
pub fn cohomology(s: &LInftyStructure) -> Result<Cohomology> {
    split(s, None).map(|sp| sp.h)
}
