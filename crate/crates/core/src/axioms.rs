//! Higher Jacobi identities and cyclic-pairing conditions.

use std::fmt;

use num_traits::Zero;

use crate::cohomology::cohomology;
use crate::graded::koszul_sign;
use crate::linalg::{self, Matrix};
use crate::linfty::{CyclicPairing, LInftyStructure};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Vector(Vec<(String, Rat)>),
    Scalar(Rat),
    /// Rank of an induced pairing block against the size it should have.
    Rank {
        degree: i32,
        rank: usize,
        expected: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// One of `jacobi`, `pairing-symmetry`, `pairing-degree`, `pairing-perfect`,
    /// `cyclic`, `differential`.
    pub identity: &'static str,
    /// Arity `n` of the identity, 0 for conditions on the pairing alone.
    pub arity: usize,
    pub args: Vec<String>,
    pub residual: Residual,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[n={}]({}): ",
            self.identity,
            self.arity,
            self.args.join(", ")
        )?;
        match &self.residual {
            Residual::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|(n, c)| format!("{c}*{n}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Residual::Scalar(c) => write!(f, "{c}"),
            Residual::Rank {
                degree,
                rank,
                expected,
            } => write!(f, "rank {rank} in degree {degree}, expected {expected}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked_arities: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: AxiomReport) {
        for n in other.checked_arities {
            if !self.checked_arities.contains(&n) {
                self.checked_arities.push(n);
            }
        }
        self.checked_arities.sort_unstable();
        self.violations.extend(other.violations);
    }
}

/// Calls `f` on every non-decreasing index sequence of length `n` over `0..dim`
/// that skips repeated even-degree indices and whose degree sum lies in `sums`.
pub(crate) fn for_each_multiset(
    degrees: &[i32],
    n: usize,
    accept_sum: &dyn Fn(i32) -> bool,
    f: &mut dyn FnMut(&[usize]),
) {
    fn rec(
        degrees: &[i32],
        n: usize,
        start: usize,
        cur: &mut Vec<usize>,
        sum: i32,
        accept_sum: &dyn Fn(i32) -> bool,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == n {
            if accept_sum(sum) {
                f(cur);
            }
            return;
        }
        for i in start..degrees.len() {
            if cur.last() == Some(&i) && degrees[i].rem_euclid(2) == 0 {
                continue;
            }
            cur.push(i);
            rec(degrees, n, i, cur, sum + degrees[i], accept_sum, f);
            cur.pop();
        }
    }
    rec(degrees, n, 0, &mut Vec::with_capacity(n), 0, accept_sum, f);
}

/// Index subsets of size `l` of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(n: usize, l: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < l - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, l, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, l, 0, &mut cur, &mut out);
    out
}

/// The `n`-th Jacobiator on basis arguments:
/// `Σ_l Σ_{σ ∈ Sh(l, n−l)} (−1)^{σ̃ + (n−l+1)(l−1)} ε(σ) μ_{n−l+1}(μ_l(a_σ…), a_σ…)`.
pub fn jacobiator(s: &LInftyStructure, args: &[usize]) -> Vec<Rat> {
    let n = args.len();
    let degs: Vec<i32> = args.iter().map(|&i| s.space().degree(i)).collect();
    let arities: Vec<usize> = s.arities().collect();
    let mut out = s.space().zero_vec();
    for l in 1..=n {
        let outer = n - l + 1;
        if !arities.contains(&l) || !arities.contains(&outer) {
            continue;
        }
        let base_sign = if ((outer) * (l - 1)) % 2 == 1 {
            -1i8
        } else {
            1
        };
        for subset in combinations(n, l) {
            let rest: Vec<usize> = (0..n).filter(|p| !subset.contains(p)).collect();
            let perm: Vec<usize> = subset.iter().chain(&rest).copied().collect();
            let sign = base_sign
                * koszul_sign(&perm, &degs)
                    .expect("valid permutation")
                    .combined();
            let inner_idx: Vec<usize> = subset.iter().map(|&p| args[p]).collect();
            let Some((si, inner)) = s.lookup(&inner_idx) else {
                continue;
            };
            let mut outer_idx: Vec<usize> = Vec::with_capacity(outer);
            outer_idx.push(0);
            outer_idx.extend(rest.iter().map(|&p| args[p]));
            for (j, c) in inner.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                outer_idx[0] = j;
                if let Some((so, v)) = s.lookup(&outer_idx) {
                    let coeff = if sign * si * so < 0 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    for (o, x) in out.iter_mut().zip(v) {
                        if !x.is_zero() {
                            *o += &coeff * x;
                        }
                    }
                }
            }
        }
    }
    out
}

fn named_vector(s: &LInftyStructure, v: &[Rat]) -> Vec<(String, Rat)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (s.space().name(i).to_string(), c.clone()))
        .collect()
}

/// Evaluates every higher Jacobi identity of arity `n ≤ n_max` on all basis multisets.
pub fn check_jacobi(s: &LInftyStructure, n_max: usize) -> AxiomReport {
    let space = s.space();
    let degrees = space.degrees().to_vec();
    let mut report = AxiomReport::default();
    for n in 1..=n_max {
        report.checked_arities.push(n);
        let shift = 3 - n as i32;
        let accept = |sum: i32| space.dim_in(sum + shift) > 0;
        for_each_multiset(&degrees, n, &accept, &mut |args| {
            let r = jacobiator(s, args);
            if r.iter().any(|c| !c.is_zero()) {
                report.violations.push(Violation {
                    identity: "jacobi",
                    arity: n,
                    args: args.iter().map(|&i| space.name(i).to_string()).collect(),
                    residual: Residual::Vector(named_vector(s, &r)),
                });
            }
        });
    }
    report
}

fn pairing_with_basis(ae: &CyclicPairing, v: &[Rat], j: usize) -> Rat {
    let mut acc = Rat::zero();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let g = ae.get(i, j);
            if !g.is_zero() {
                acc += c * g;
            }
        }
    }
    acc
}

/// Graded symmetry, degree support, perfectness on cohomology, and the cyclic
/// condition `ae(μ_n(x_1..x_n), x_{n+1}) = (−1)^{n + x_1(x_2+⋯+x_{n+1})} ae(μ_n(x_2..x_{n+1}), x_1)`.
pub fn check_cyclic(s: &LInftyStructure, ae: &CyclicPairing, n_max: usize) -> AxiomReport {
    let space = s.space();
    let deg = |i: usize| space.degree(i);
    let name = |i: usize| space.name(i).to_string();
    let d = ae.dimension();
    let mut report = AxiomReport::default();

    for (&(i, j), v) in ae.entries() {
        if deg(i) + deg(j) != d {
            report.violations.push(Violation {
                identity: "pairing-degree",
                arity: 0,
                args: vec![name(i), name(j)],
                residual: Residual::Scalar(v.clone()),
            });
        }
        let odd = (deg(i) * deg(j)).rem_euclid(2) == 1;
        let mismatch = if i == j {
            odd
        } else if i < j {
            ae.entries()
                .find(|(k, _)| **k == (j, i))
                .map(|(_, w)| if odd { *v != -w.clone() } else { v != w })
                .unwrap_or(false)
        } else {
            false
        };
        if mismatch {
            let other = if i == j { v.clone() } else { ae.get(j, i) };
            let sign = if odd {
                -Rat::from_integer(1.into())
            } else {
                Rat::from_integer(1.into())
            };
            report.violations.push(Violation {
                identity: "pairing-symmetry",
                arity: 0,
                args: vec![name(i), name(j)],
                residual: Residual::Scalar(v.clone() - sign * other),
            });
        }
    }

    match cohomology(s) {
        Ok(h) => {
            for &i in h.space.components().keys() {
                let hi: Vec<usize> = h.space.indices_in(i).collect();
                let hj: Vec<usize> = h.space.indices_in(d - i).collect();
                let m: Matrix = hi
                    .iter()
                    .map(|&a| {
                        hj.iter()
                            .map(|&b| ae.pair(&h.iota_column(a), &h.iota_column(b)))
                            .collect()
                    })
                    .collect();
                let r = if hj.is_empty() { 0 } else { linalg::rank(&m) };
                if hi.len() != hj.len() || r != hi.len() {
                    report.violations.push(Violation {
                        identity: "pairing-perfect",
                        arity: 0,
                        args: vec![format!("H^{i}"), format!("H^{}", d - i)],
                        residual: Residual::Rank {
                            degree: i,
                            rank: r,
                            expected: hi.len().max(hj.len()),
                        },
                    });
                }
            }
        }
        Err(_) => report.violations.push(Violation {
            identity: "differential",
            arity: 1,
            args: Vec::new(),
            residual: Residual::Scalar(Rat::zero()),
        }),
    }

    let degrees = space.degrees().to_vec();
    let dim = space.dim();
    for n in 1..=n_max {
        report.checked_arities.push(n);
        if s.entries(n).next().is_none() {
            continue;
        }
        let total = n as i32 + d - 2;
        // x_2..x_n as a multiset; x_1 and x_{n+1} range freely
        let mid_len = n - 1;
        for_each_multiset(&degrees, mid_len, &|_| true, &mut |mid| {
            let mid_sum: i32 = mid.iter().map(|&i| deg(i)).sum();
            for x1 in 0..dim {
                for xl in 0..dim {
                    if mid_sum + deg(x1) + deg(xl) != total {
                        continue;
                    }
                    let mut lhs_args = Vec::with_capacity(n);
                    lhs_args.push(x1);
                    lhs_args.extend_from_slice(mid);
                    let mut rhs_args: Vec<usize> = mid.to_vec();
                    rhs_args.push(xl);
                    let lhs = s
                        .lookup(&lhs_args)
                        .map(|(sg, v)| {
                            let p = pairing_with_basis(ae, v, xl);
                            if sg < 0 {
                                -p
                            } else {
                                p
                            }
                        })
                        .unwrap_or_else(Rat::zero);
                    let rhs = s
                        .lookup(&rhs_args)
                        .map(|(sg, v)| {
                            let p = pairing_with_basis(ae, v, x1);
                            if sg < 0 {
                                -p
                            } else {
                                p
                            }
                        })
                        .unwrap_or_else(Rat::zero);
                    let e = n as i32 + deg(x1) * (mid_sum + deg(xl));
                    let rhs = if e.rem_euclid(2) == 1 { -rhs } else { rhs };
                    let diff = lhs - rhs;
                    if !diff.is_zero() {
                        let mut args: Vec<String> = vec![name(x1)];
                        args.extend(mid.iter().map(|&i| name(i)));
                        args.push(name(xl));
                        report.violations.push(Violation {
                            identity: "cyclic",
                            arity: n,
                            args,
                            residual: Residual::Scalar(diff),
                        });
                    }
                }
            }
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::rational::rat;

    fn desk() -> (LInftyStructure, CyclicPairing) {
        let space = GradedSpace::from_degrees(&[(1, &["a"]), (2, &["b"])]).unwrap();
        let mut s = LInftyStructure::new(space.clone());
        s.set_named(&["a", "a"], &[("b", rat(2))]).unwrap();
        let mut k = CyclicPairing::new(&space, 3);
        k.set_named(&space, "a", "b", rat(1)).unwrap();
        (s, k)
    }

    #[test]
    fn desk_passes() {
        let (s, k) = desk();
        assert!(check_jacobi(&s, 4).passed());
        let r = check_cyclic(&s, &k, 4);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.checked_arities, vec![1, 2, 3, 4]);
    }

    #[test]
    fn abelian_passes() {
        let space =
            GradedSpace::from_degrees(&[(0, &["g"]), (1, &["a", "c"]), (2, &["b"])]).unwrap();
        assert!(check_jacobi(&LInftyStructure::new(space), 4).passed());
    }

    #[test]
    fn d_squared_reported_at_arity_one() {
        let space = GradedSpace::from_degrees(&[(0, &["u"]), (1, &["v"]), (2, &["w"])]).unwrap();
        let mut s = LInftyStructure::new(space);
        s.set_named(&["u"], &[("v", rat(1))]).unwrap();
        s.set_named(&["v"], &[("w", rat(1))]).unwrap();
        let r = check_jacobi(&s, 2);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].arity, 1);
        assert_eq!(r.violations[0].args, vec!["u"]);
    }

    #[test]
    fn pairing_defects() {
        let (s, _) = desk();
        let space = s.space().clone();
        let mut k = CyclicPairing::new(&space, 3);
        k.set(0, 1, rat(1)).unwrap();
        k.set(1, 0, rat(2)).unwrap();
        let r = check_cyclic(&s, &k, 2);
        assert!(r
            .violations
            .iter()
            .any(|v| v.identity == "pairing-symmetry"));

        let odd = GradedSpace::from_degrees(&[(1, &["a", "c"])]).unwrap();
        let mut k = CyclicPairing::new(&odd, 3);
        k.set(0, 1, rat(1)).unwrap();
        let r = check_cyclic(&LInftyStructure::new(odd), &k, 1);
        assert!(r.violations.iter().any(|v| v.identity == "pairing-degree"));
    }

    #[test]
    fn jacobi_on_lie_algebra() {
        // so(3) in degree 0 is a Lie algebra; a wrong structure constant breaks Jacobi
        let space = GradedSpace::from_degrees(&[(0, &["e1", "e2", "e3"])]).unwrap();
        let mut s = LInftyStructure::new(space);
        s.set_named(&["e1", "e2"], &[("e3", rat(1))]).unwrap();
        s.set_named(&["e2", "e3"], &[("e1", rat(1))]).unwrap();
        s.set_named(&["e3", "e1"], &[("e2", rat(1))]).unwrap();
        assert!(check_jacobi(&s, 4).passed());
        s.set_named(&["e1", "e2"], &[("e3", rat(1)), ("e1", rat(1))])
            .unwrap();
        let r = check_jacobi(&s, 3);
        assert!(r.violations.iter().all(|v| v.arity == 3) && !r.passed());
    }
}
