//! Dense univariate polynomials over [`Rat`], lowest coefficient first.
//!
//! Used for blow-up centres on an exceptional line and for reducing the
//! monodromy zeta function.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

pub type UPoly = Vec<Rat>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, `None` for zero.
pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &[Rat], b: &[Rat]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(p: &[Rat]) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
            .collect(),
    )
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &[Rat]) -> UPoly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Rat], b: &[Rat]) -> UPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Squarefree decomposition (Yun): monic factors `a_k` with `p = c * Π a_k^k`.
/// Constant factors are omitted.
pub fn squarefree_decomposition(p: &[Rat]) -> Vec<(UPoly, u32)> {
    let p = monic(p);
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let mut a = gcd(&p, &dp);
    let mut b = divrem(&p, &a).0;
    let mut c = divrem(&dp, &a).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut k = 1;
    loop {
        a = gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), k));
        }
        b = divrem(&b, &a).0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        k += 1;
    }
    out
}

pub fn sub(a: &[Rat], b: &[Rat]) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Rat::zero)
                    - b.get(i).cloned().unwrap_or_else(Rat::zero)
            })
            .collect(),
    )
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &[Rat]) -> Vec<Rat> {
    let p = trim(p.to_vec());
    let Some(_) = degree(&p) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    let low = p.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rat::zero());
    }
    let q = &p[low..];
    if q.len() <= 1 {
        return roots;
    }
    let lcm = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    for num in divisors(&ints[0]) {
        for den in divisors(ints.last().unwrap()) {
            for s in [-1, 1] {
                let r = Rat::new(&num * s, den.clone());
                if eval(q, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn up(c: &[i64]) -> UPoly {
        c.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        let a = mul(&up(&[-1, 1]), &up(&[2, 1]));
        let b = mul(&up(&[-1, 1]), &up(&[3, 1]));
        assert_eq!(gcd(&a, &b), up(&[-1, 1]));
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (v - 1)^2 (v + 2)
        let p = mul(&mul(&up(&[-1, 1]), &up(&[-1, 1])), &up(&[2, 1]));
        let sq = squarefree_decomposition(&p);
        assert_eq!(sq, vec![(up(&[2, 1]), 1), (up(&[-1, 1]), 2)]);
        // v^2 + 1 is squarefree with no rational roots
        assert_eq!(
            squarefree_decomposition(&up(&[1, 0, 1])),
            vec![(up(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn rational_root_test() {
        let p = mul(&up(&[-1, 2]), &up(&[3, 1, 0])); // (2v-1)(v+3)
        assert_eq!(rational_roots(&p), vec![rat(-3), ratio(1, 2)]);
        assert!(rational_roots(&up(&[1, 0, 1])).is_empty());
        assert_eq!(rational_roots(&up(&[0, 0, 1])), vec![rat(0)]);
    }
}
