//! Local standard bases at the origin (Mora normal form) and Milnor numbers.
//!
//! The local order ranks lower total degree higher, ties broken
//! lexicographically (`x > y`); this is exactly the first key of a
//! [`Poly`]'s term map, so leading terms are [`Poly::local_leading`].

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rational::Rat;

/// Budget for standard-basis completion.
#[derive(Clone, Copy, Debug)]
pub struct BasisLimits {
    pub max_elements: usize,
    pub max_degree: u32,
    pub max_reduction_steps: usize,
}

impl Default for BasisLimits {
    fn default() -> Self {
        BasisLimits {
            max_elements: 400,
            max_degree: 200,
            max_reduction_steps: 100_000,
        }
    }
}

fn lead(p: &Poly) -> (&Monomial, &Rat) {
    p.local_leading().expect("nonzero polynomial")
}

fn ecart(p: &Poly) -> u32 {
    p.total_degree().unwrap_or(0) - p.order().unwrap_or(0)
}

/// `h − (lc(h)/lc(g)) · (lm(h)/lm(g)) · g`.
fn reduce_step(h: &Poly, g: &Poly) -> Poly {
    let (mh, ch) = lead(h);
    let (mg, cg) = lead(g);
    let q = mh.div(mg).expect("divisible leading monomials");
    h - &g.mul_term(&q, &(ch / cg))
}

/// Mora's weak normal form of `p` with respect to `basis`. The result is zero
/// exactly when `p` lies in the local ideal, and otherwise has a leading
/// monomial outside the leading ideal of `basis`.
pub fn local_normal_form(p: &Poly, basis: &[Poly]) -> Result<Poly> {
    local_normal_form_with(p, basis, BasisLimits::default().max_reduction_steps)
}

fn local_normal_form_with(p: &Poly, basis: &[Poly], max_steps: usize) -> Result<Poly> {
    let mut h = p.clone();
    let mut t: Vec<Poly> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut steps = 0;
    while !h.is_zero() {
        let mh = lead(&h).0.clone();
        let Some(g) = t
            .iter()
            .filter(|g| lead(g).0.divides(&mh))
            .min_by_key(|g| ecart(g))
            .cloned()
        else {
            break;
        };
        if ecart(&g) > ecart(&h) {
            t.push(h.clone());
        }
        h = reduce_step(&h, &g);
        steps += 1;
        if steps > max_steps {
            return Err(Error::Internal(format!(
                "local normal form did not terminate within {max_steps} steps"
            )));
        }
    }
    Ok(h)
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (mf, cf) = lead(f);
    let (mg, cg) = lead(g);
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &(Rat::from_integer(1.into()) / cf));
    let b = g.mul_term(&l.div(mg).unwrap(), &(Rat::from_integer(1.into()) / cg));
    &a - &b
}

/// Standard basis for the local order, by pair completion with Mora's
/// normal form. The output is minimal: no leading monomial divides another.
pub fn standard_basis(gens: &[Poly]) -> Result<Vec<Poly>> {
    standard_basis_with(gens, BasisLimits::default())
}

pub fn standard_basis_with(gens: &[Poly], limits: BasisLimits) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let h = local_normal_form_with(g, &basis, limits.max_reduction_steps)?;
        if !h.is_zero() {
            basis.push(h);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // smallest lcm degree first, then oldest pair
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| (lead(&basis[i]).0.lcm(lead(&basis[j]).0).degree(), j, i))
            .unwrap();
        let (i, j) = pairs.remove(pos);
        let s = s_poly(&basis[i], &basis[j]);
        if s.is_zero() {
            continue;
        }
        let h = local_normal_form_with(&s, &basis, limits.max_reduction_steps)?;
        if h.is_zero() {
            continue;
        }
        if basis.len() >= limits.max_elements {
            return Err(Error::Resource(format!(
                "standard basis exceeds {} elements",
                limits.max_elements
            )));
        }
        if h.total_degree().unwrap_or(0) > limits.max_degree {
            return Err(Error::Resource(format!(
                "standard basis element of degree {} exceeds the cap {}",
                h.total_degree().unwrap_or(0),
                limits.max_degree
            )));
        }
        let k = basis.len();
        basis.push(h);
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    // minimalize
    let mut keep: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let mg = lead(g).0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let mh = lead(h).0;
            j != i && mh.divides(mg) && (mh != mg || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| lead(a).0.cmp(lead(b).0));
    Ok(keep)
}

/// Leading monomials of a standard basis.
pub fn leading_ideal(basis: &[Poly]) -> Vec<Monomial> {
    basis.iter().map(|g| lead(g).0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorData {
    /// `None` stands for μ = ∞ (non-isolated critical point).
    pub mu: Option<usize>,
    /// Exponent vectors of the monomials outside the leading ideal, ascending.
    pub monomial_basis: Vec<Vec<u32>>,
    /// Set when the origin is not a critical point of `f` on `f = 0`.
    pub smooth: bool,
}

impl MilnorData {
    pub fn is_isolated(&self) -> bool {
        self.mu.is_some()
    }

    pub fn mu_string(&self) -> String {
        self.mu.map_or("inf".to_string(), |m| m.to_string())
    }
}

/// Monomials outside the monomial ideal generated by `lms`; `None` if infinitely many.
pub fn staircase(lms: &[Monomial], nvars: usize) -> Option<Vec<Vec<u32>>> {
    let mut bounds = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let b = lms
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(i, &k)| i == v || k == 0))
            .map(|m| m.0[v])
            .min()?;
        bounds.push(b);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(
        pos: usize,
        bounds: &[u32],
        cur: &mut Vec<u32>,
        lms: &[Monomial],
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == bounds.len() {
            let m = Monomial(cur.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..bounds[pos] {
            cur[pos] = k;
            rec(pos + 1, bounds, cur, lms, out);
        }
        cur[pos] = 0;
    }
    rec(0, &bounds, &mut cur, lms, &mut out);
    out.sort_by(|a, b| Monomial(a.clone()).cmp(&Monomial(b.clone())).reverse());
    out.sort_by_key(|e| e.iter().sum::<u32>());
    Some(out)
}

/// `μ = dim ℚ[[x]]/(∂f)` at the origin.
pub fn milnor_number(f: &Poly) -> Result<MilnorData> {
    let n = f.nvars();
    let jac: Vec<Poly> = (0..n).map(|i| f.derivative(i)).collect();
    let f0 = f.constant_term();
    let critical = jac.iter().all(|g| g.constant_term().is_zero());
    if !f0.is_zero() || !critical {
        return Ok(MilnorData {
            mu: Some(0),
            monomial_basis: Vec::new(),
            smooth: true,
        });
    }
    let sb = standard_basis(&jac)?;
    let lms = leading_ideal(&sb);
    Ok(match staircase(&lms, n) {
        Some(basis) => MilnorData {
            mu: Some(basis.len()),
            monomial_basis: basis,
            smooth: false,
        },
        None => MilnorData {
            mu: None,
            monomial_basis: Vec::new(),
            smooth: false,
        },
    })
}

/// `μ + 1`: `f` is right-equivalent to any `g` agreeing with it through this degree.
pub fn determinacy_bound(md: &MilnorData) -> Option<usize> {
    md.mu.map(|m| m + 1)
}
