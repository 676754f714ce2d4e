//! Maurer–Cartan map, superpotential and Jacobian ideal on `H¹`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::axioms::{for_each_multiset, AxiomReport, Residual, Violation};
use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::linfty::{CyclicPairing, LInftyStructure};
use crate::poly::{Monomial, Poly};
use crate::rational::{factorial, sign_pow, Rat};
use crate::series::PowerSeries;
use crate::transfer::{Contraction, TransferredStructure};

/// `f` as a truncated series on `H¹`, with the variable ↔ basis binding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub series: PowerSeries,
    /// `(variable, H¹ basis element)` in variable order.
    pub binding: Vec<(String, String)>,
}

impl Potential {
    pub fn poly(&self) -> &Poly {
        self.series.base()
    }

    pub fn order(&self) -> u32 {
        self.series.order()
    }
}

/// Components `F_k`, `2 ≤ k ≤ N`, each an `H²`-valued homogeneous map of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McMap {
    pub vars: Vec<String>,
    /// `H²` basis names, the coordinates of each component.
    pub targets: Vec<String>,
    /// `components[j]` is `F_{j+2}`, one polynomial per `H²` coordinate.
    pub components: Vec<Vec<Poly>>,
}

impl McMap {
    /// `Σ_k F_k` per `H²` coordinate.
    pub fn total(&self) -> Vec<Poly> {
        let zero = Poly::zero(&self.vars);
        (0..self.targets.len())
            .map(|t| {
                self.components
                    .iter()
                    .fold(zero.clone(), |acc, c| &acc + &c[t])
            })
            .collect()
    }

    pub fn order(&self) -> u32 {
        self.components.len() as u32 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianIdeal {
    pub generators: Vec<Poly>,
}

/// Variable names for `m` coordinates: `x`, `x, y`, `x, y, z`, else `x1..xm`.
pub fn default_vars(m: usize) -> Vec<String> {
    match m {
        0..=3 => ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect(),
        _ => (1..=m).map(|i| format!("x{i}")).collect(),
    }
}

/// Refuses cohomology outside degrees 1 and 2.
pub fn require_signature(h: &GradedSpace) -> Result<()> {
    for (&d, v) in h.components() {
        if !v.is_empty() && d != 1 && d != 2 {
            return Err(Error::Unsupported(format!(
                "H^{d}(L) has dimension {}; the potential needs cohomology only in degrees 1 and 2",
                v.len()
            )));
        }
    }
    Ok(())
}

fn exps_of(args: &[usize], offset: usize, m: usize) -> Vec<u32> {
    let mut e = vec![0u32; m];
    for &a in args {
        e[a - offset] += 1;
    }
    e
}

fn inv_multi_factorial(e: &[u32]) -> Rat {
    let den = e.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    Rat::new(BigInt::one(), den)
}

fn h1_data(t: &TransferredStructure) -> Result<(std::ops::Range<usize>, std::ops::Range<usize>)> {
    let h = t.structure.space();
    require_signature(h)?;
    Ok((h.indices_in(1), h.indices_in(2)))
}

/// `Σ_α x^α/α! ν_k(e^α)` as an `H²`-valued polynomial, i.e. `ν_k(z,…,z)/k!`.
fn nu_on_z(
    s: &LInftyStructure,
    k: usize,
    h1: &std::ops::Range<usize>,
    vars: &[String],
) -> Vec<Poly> {
    let space = s.space();
    let m = h1.len();
    let zero = Poly::zero(vars);
    let mut out = vec![zero.clone(); space.dim()];
    let degs: Vec<i32> = vec![1; m];
    for_each_multiset(&degs, k, &|_| true, &mut |local| {
        let args: Vec<usize> = local.iter().map(|&i| i + h1.start).collect();
        let Some((sg, v)) = s.lookup(&args) else {
            return;
        };
        let e = exps_of(local, 0, m);
        let c = if sg < 0 {
            -inv_multi_factorial(&e)
        } else {
            inv_multi_factorial(&e)
        };
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let mut p = zero.clone();
                p.add_term(Monomial(e.clone()), &c * x);
                out[j] = &out[j] + &p;
            }
        }
    });
    out
}

/// `F_k(z) = ((−1)^{k(k+1)/2}/k!) ν_k(z,…,z)` for `2 ≤ k ≤ n`.
pub fn mc_map(t: &TransferredStructure, n: usize) -> Result<McMap> {
    let (h1, h2) = h1_data(t)?;
    let s = &t.structure;
    let vars = default_vars(h1.len());
    let mut components = Vec::new();
    for k in 2..=n {
        let sign = sign_pow((k * (k + 1) / 2) as i64);
        let nz = nu_on_z(s, k, &h1, &vars);
        components.push(h2.clone().map(|j| nz[j].scale(&sign)).collect());
    }
    Ok(McMap {
        vars,
        targets: h2.map(|j| s.space().name(j).to_string()).collect(),
        components,
    })
}

fn binding(t: &TransferredStructure, vars: &[String]) -> Vec<(String, String)> {
    let h = t.structure.space();
    vars.iter()
        .zip(h.indices_in(1))
        .map(|(v, i)| (v.clone(), h.name(i).to_string()))
        .collect()
}

/// `κ(w, e_j)` for an `H`-valued polynomial `w` and `H¹` basis index `j`.
fn kappa_poly(kappa: &CyclicPairing, w: &[Poly], j: usize, zero: &Poly) -> Poly {
    let mut acc = zero.clone();
    for (i, p) in w.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let g = kappa.get(i, j);
        if !g.is_zero() {
            acc = &acc + &p.scale(&g);
        }
    }
    acc
}

/// `f = Σ_{2≤n≤N} ((−1)^{n(n+1)/2}/(n+1)!) κ(ν_n(z,…,z), z)`, known through degree `N+1`.
pub fn potential(t: &TransferredStructure, n: usize) -> Result<Potential> {
    let (h1, _) = h1_data(t)?;
    let s = &t.structure;
    let vars = default_vars(h1.len());
    let zero = Poly::zero(&vars);
    let mut f = zero.clone();
    for k in 2..=n {
        // ν_k(z^k)/k! · (−1)^{k(k+1)/2} / (k+1), paired with z
        let nz = nu_on_z(s, k, &h1, &vars);
        let c = sign_pow((k * (k + 1) / 2) as i64) / Rat::from_integer(BigInt::from(k + 1));
        for (local, j) in h1.clone().enumerate() {
            let xj = zero.var_like(local);
            let term = &kappa_poly(&t.kappa, &nz, j, &zero) * &xj;
            f = &f + &term.scale(&c);
        }
    }
    Ok(Potential {
        series: PowerSeries::new(f, n as u32 + 1),
        binding: binding(t, &vars),
    })
}

/// Verifies `∂f/∂x_i = κ(e_i, F(z))` through degree `N`.
pub fn check_df_equals_f(
    f: &Potential,
    mc: &McMap,
    kappa: &CyclicPairing,
    h: &GradedSpace,
) -> AxiomReport {
    let mut report = AxiomReport {
        checked_arities: (2..=mc.components.len() + 1).collect(),
        violations: Vec::new(),
    };
    let order = f.order().saturating_sub(1).min(mc.order());
    let total = mc.total();
    let h2 = h.indices_in(2);
    for (i, hi) in h.indices_in(1).enumerate() {
        let df = f.poly().derivative(i).truncate(order);
        let mut rhs = Poly::zero(&mc.vars);
        for (t, j) in h2.clone().enumerate() {
            let g = kappa.get(hi, j);
            if !g.is_zero() {
                rhs = &rhs + &total[t].scale(&g);
            }
        }
        let diff = &df - &rhs.truncate(order);
        if !diff.is_zero() {
            report.violations.push(Violation {
                identity: "df=F",
                arity: 0,
                args: vec![mc.vars[i].clone()],
                residual: Residual::Vector(
                    diff.terms()
                        .map(|(m, c)| {
                            (
                                Poly::from_terms(&mc.vars, [(m.0.clone(), Rat::one())]).to_string(),
                                c.clone(),
                            )
                        })
                        .collect(),
                ),
            });
        }
    }
    report
}

/// Formal partials of `f`, truncated to the order at which they are known.
pub fn jacobian_ideal(f: &Potential) -> JacobianIdeal {
    JacobianIdeal {
        generators: (0..f.poly().nvars())
            .map(|i| f.series.derivative(i).into_poly())
            .collect(),
    }
}

/// `F` and `f` through degree `n` (resp. `n + 1`) from the Maurer–Cartan
/// generating function `Z = ιz + h Σ_{r≥2} Q_r(Z,…,Z)/r!` in `L¹ ⊗ ℚ[x]`,
/// without tabulating the transferred brackets.
pub fn potential_via_mc(
    s: &LInftyStructure,
    ae: &CyclicPairing,
    c: &Contraction,
    n: usize,
) -> Result<(McMap, Potential)> {
    let h = &c.cohomology;
    require_signature(&h.space)?;
    let h1 = h.space.indices_in(1);
    let h2 = h.space.indices_in(2);
    let m = h1.len();
    let vars = default_vars(m);
    let zero = Poly::zero(&vars);
    let space = s.space();
    let dim = space.dim();
    let l1 = space.indices_in(1);
    let arities: Vec<usize> = s.arities().filter(|&r| r >= 2).collect();

    // Z as L-valued polynomials, graded by degree in x
    let mut z_by_deg: Vec<Vec<Poly>> = vec![vec![zero.clone(); dim]; n + 1];
    for (local, a) in h1.clone().enumerate() {
        let col = h.iota_column(a);
        for (i, x) in col.iter().enumerate() {
            if !x.is_zero() {
                z_by_deg[1][i] = &z_by_deg[1][i] + &zero.var_like(local).scale(x);
            }
        }
    }
    let mut x_by_deg: Vec<Vec<Poly>> = vec![vec![zero.clone(); dim]; n + 1];
    for deg in 2..=n {
        let mut xs = vec![zero.clone(); dim];
        for &r in &arities {
            if r > deg {
                continue;
            }
            let coef = sign_pow((r * (r - 1) / 2) as i64) / Rat::from_integer(factorial(r as u32));
            // Σ over compositions deg = d_1 + … + d_r, d_i ≥ 1, of μ_r(Z_{d_1},…,Z_{d_r})
            let mut comp = vec![1usize; r];
            compositions(deg, r, &mut comp, 0, &mut |parts| {
                let args: Vec<&Vec<Poly>> = parts.iter().map(|&d| &z_by_deg[d]).collect();
                let v = mu_on_poly_vectors(s, &args, &l1, &zero, deg as u32);
                for (a, b) in xs.iter_mut().zip(v) {
                    if !b.is_zero() {
                        *a = &*a + &b.scale(&coef);
                    }
                }
            });
        }
        // Z_deg = −η X_deg
        let mut zd = vec![zero.clone(); dim];
        for (j, xj) in xs.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, zi) in zd.iter_mut().enumerate() {
                let e = &c.eta[i][j];
                if !e.is_zero() {
                    *zi = &*zi - &xj.scale(e);
                }
            }
        }
        z_by_deg[deg] = zd;
        x_by_deg[deg] = xs;
    }

    // F_k = (−1)^k p X_k and f = Σ κ(z, F_k)/(k+1)
    let mut components = Vec::new();
    let mut f = zero.clone();
    let zvec: Vec<Poly> = {
        let mut v = vec![zero.clone(); h.space.dim()];
        for (local, a) in h1.clone().enumerate() {
            v[a] = zero.var_like(local);
        }
        v
    };
    for (k, xk) in x_by_deg.iter().enumerate().skip(2) {
        let sign = sign_pow(k as i64);
        let mut hv = vec![zero.clone(); h.space.dim()];
        for (a, row) in h.proj.iter().enumerate() {
            for (i, p) in row.iter().enumerate() {
                if !p.is_zero() && !xk[i].is_zero() {
                    hv[a] = &hv[a] + &xk[i].scale(&(p * &sign));
                }
            }
        }
        let mut kp = zero.clone();
        for a in h1.clone() {
            for b in h2.clone() {
                let g = ae.pair(&h.iota_column(a), &h.iota_column(b));
                if !g.is_zero() && !hv[b].is_zero() {
                    kp = &kp + &(&zvec[a] * &hv[b]).scale(&g);
                }
            }
        }
        f = &f + &kp.scale(&Rat::new(BigInt::one(), BigInt::from(k + 1)));
        components.push(h2.clone().map(|b| hv[b].clone()).collect());
    }
    let binding = vars
        .iter()
        .zip(h1.clone())
        .map(|(v, a)| (v.clone(), h.space.name(a).to_string()))
        .collect();
    Ok((
        McMap {
            vars: vars.clone(),
            targets: h2.map(|b| h.space.name(b).to_string()).collect(),
            components,
        },
        Potential {
            series: PowerSeries::new(f, n as u32 + 1),
            binding,
        },
    ))
}

fn compositions(
    total: usize,
    parts: usize,
    cur: &mut Vec<usize>,
    pos: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if pos == parts - 1 {
        let used: usize = cur[..pos].iter().sum();
        if total > used {
            cur[pos] = total - used;
            f(cur);
        }
        return;
    }
    let used: usize = cur[..pos].iter().sum();
    let remaining_slots = parts - pos - 1;
    for d in 1..=(total - used).saturating_sub(remaining_slots) {
        cur[pos] = d;
        compositions(total, parts, cur, pos + 1, f);
    }
}

/// `μ_r(Z_1,…,Z_r)` for `L¹`-valued polynomial vectors; the result is `L²`-valued.
fn mu_on_poly_vectors(
    s: &LInftyStructure,
    args: &[&Vec<Poly>],
    l1: &std::ops::Range<usize>,
    zero: &Poly,
    max_deg: u32,
) -> Vec<Poly> {
    let dim = s.space().dim();
    let mut out = vec![zero.clone(); dim];
    let supports: Vec<Vec<usize>> = args
        .iter()
        .map(|a| l1.clone().filter(|&i| !a[i].is_zero()).collect())
        .collect();
    let mut idx = vec![0usize; args.len()];
    fn rec(
        s: &LInftyStructure,
        args: &[&Vec<Poly>],
        supports: &[Vec<usize>],
        pos: usize,
        idx: &mut Vec<usize>,
        acc: Poly,
        out: &mut [Poly],
        max_deg: u32,
    ) {
        if pos == args.len() {
            if let Some((sg, v)) = s.lookup(idx) {
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        let c = if sg < 0 { -x.clone() } else { x.clone() };
                        *o = &*o + &acc.scale(&c);
                    }
                }
            }
            return;
        }
        for &i in &supports[pos] {
            idx[pos] = i;
            let next = acc.mul_truncated(&args[pos][i], max_deg);
            if !next.is_zero() {
                rec(s, args, supports, pos + 1, idx, next, out, max_deg);
            }
        }
    }
    rec(
        s,
        args,
        &supports,
        0,
        &mut idx,
        zero.one_like(),
        &mut out,
        max_deg,
    );
    out
}
