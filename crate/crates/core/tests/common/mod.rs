//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use cymf::linalg::{self, Matrix};
use cymf::potential::default_vars;
use cymf::rational::factorial;
use cymf::{rat, ratio, Contraction, CyclicPairing, GradedSpace, LInftyStructure, Poly, Rat};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    let choices = [
        (1, 1),
        (2, 1),
        (3, 1),
        (1, 2),
        (3, 2),
        (-1, 1),
        (-2, 1),
        (-3, 1),
        (-1, 2),
        (-3, 2),
    ];
    let (p, q) = *choices.choose(r).unwrap();
    ratio(p, q)
}

/// Zero with probability `p_zero`, else [`small_rat`].
pub fn sparse_rat(r: &mut ChaCha8Rng, p_zero: f64) -> Rat {
    if r.gen_bool(p_zero) {
        Rat::zero()
    } else {
        small_rat(r)
    }
}

pub fn random_invertible(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n)
            .map(|_| (0..n).map(|_| rat(r.gen_range(-2..=2))).collect())
            .collect();
        if linalg::rank(&m) == n {
            return m;
        }
    }
}

// ---------- sign and evaluation oracles ----------

/// Sorts basis indices by adjacent swaps, each swap of `a, b` costing `−(−1)^{|a||b|}`.
/// `None` when a repeated even-degree argument forces zero.
pub fn oracle_sort(idx: &[usize], deg: &dyn Fn(usize) -> i32) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                if (deg(v[j]) * deg(v[j + 1])) % 2 == 0 {
                    sign = -sign;
                }
                v.swap(j, j + 1);
            }
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] && deg(w[0]) % 2 == 0 {
            return None;
        }
    }
    Some((v, sign))
}

/// Sign of reordering `args` into `args[perm[0]], args[perm[1]], …`.
pub fn oracle_perm_sign(perm: &[usize], degs: &[i32]) -> i32 {
    let mut p = perm.to_vec();
    let mut sign = 1;
    for i in 0..p.len() {
        for j in 0..p.len() - 1 - i {
            if p[j] > p[j + 1] {
                if (degs[p[j]] * degs[p[j + 1]]) % 2 == 0 {
                    sign = -sign;
                }
                p.swap(j, j + 1);
            }
        }
    }
    sign
}

/// Structure constants in a hash table, read off the public entry iterators.
pub struct Table<'a> {
    pub s: &'a LInftyStructure,
    map: HashMap<Vec<usize>, Vec<Rat>>,
}

impl<'a> Table<'a> {
    pub fn new(s: &'a LInftyStructure) -> Self {
        let mut map = HashMap::new();
        for k in s.arities().collect::<Vec<_>>() {
            for (i, o) in s.entries(k) {
                map.insert(i.clone(), o.clone());
            }
        }
        Table { s, map }
    }

    pub fn deg(&self, i: usize) -> i32 {
        self.s.space().degree(i)
    }

    pub fn dim(&self) -> usize {
        self.s.space().dim()
    }

    pub fn basis(&self, idx: &[usize]) -> Vec<Rat> {
        let d = |i: usize| self.deg(i);
        match oracle_sort(idx, &d) {
            None => vec![Rat::zero(); self.dim()],
            Some((sorted, sign)) => match self.map.get(&sorted) {
                None => vec![Rat::zero(); self.dim()],
                Some(v) => v.iter().map(|c| c * rat(sign as i64)).collect(),
            },
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[Vec<Rat>]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        let mut idx = vec![0; args.len()];
        fn rec(
            t: &Table,
            args: &[Vec<Rat>],
            supports: &[Vec<usize>],
            pos: usize,
            idx: &mut Vec<usize>,
            coef: Rat,
            out: &mut [Rat],
        ) {
            if pos == args.len() {
                for (o, c) in out.iter_mut().zip(t.basis(idx)) {
                    *o += &coef * c;
                }
                return;
            }
            for &i in &supports[pos] {
                idx[pos] = i;
                rec(t, args, supports, pos + 1, idx, &coef * &args[pos][i], out);
            }
        }
        if args.iter().all(|v| !v.is_empty()) {
            rec(self, args, &supports, 0, &mut idx, Rat::one(), &mut out);
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn multisets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Jacobiator summed over all of `S_n` with weight `1/(l!(n−l)!)`.
pub fn oracle_jacobiator(t: &Table, args: &[usize]) -> Vec<Rat> {
    let n = args.len();
    let degs: Vec<i32> = args.iter().map(|&i| t.deg(i)).collect();
    let mut out = vec![Rat::zero(); t.dim()];
    let perms = permutations(n);
    for l in 1..=n {
        let w = Rat::one() / Rat::from_integer(factorial(l as u32) * factorial((n - l) as u32));
        let outer_sign = if ((n - l + 1) * (l - 1)).is_multiple_of(2) {
            1
        } else {
            -1
        };
        for p in &perms {
            let sign = outer_sign * oracle_perm_sign(p, &degs);
            let inner: Vec<usize> = p[..l].iter().map(|&i| args[i]).collect();
            let v = t.basis(&inner);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let mut outer_args = vec![v];
            outer_args.extend(p[l..].iter().map(|&i| t.unit(args[i])));
            let r = t.eval(&outer_args);
            for (o, x) in out.iter_mut().zip(r) {
                *o += &w * x * rat(sign as i64);
            }
        }
    }
    out
}

pub fn oracle_jacobi_holds(s: &LInftyStructure, n_max: usize) -> bool {
    let t = Table::new(s);
    (1..=n_max).all(|n| {
        multisets(t.dim(), n)
            .iter()
            .all(|m| oracle_jacobiator(&t, m).iter().all(Zero::is_zero))
    })
}

fn ordered_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..dim).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

/// `κ(μ_n(x_1..x_n), x_{n+1}) = (−1)^{n + |x_1|(|x_2|+…+|x_{n+1}|)} κ(μ_n(x_2..x_{n+1}), x_1)`
/// on every ordered tuple of basis vectors.
pub fn oracle_cyclic_holds(s: &LInftyStructure, ae: &CyclicPairing, n_max: usize) -> bool {
    let t = Table::new(s);
    let pair = |v: &[Rat], j: usize| -> Rat {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * ae.get(i, j))
            .sum()
    };
    for n in 1..=n_max {
        for tup in ordered_tuples(t.dim(), n + 1) {
            let total: i32 = tup.iter().map(|&i| t.deg(i)).sum();
            if total + 2 - n as i32 != ae.dimension() {
                continue;
            }
            let lhs = pair(&t.basis(&tup[..n]), tup[n]);
            let rest: i32 = tup[1..].iter().map(|&i| t.deg(i)).sum();
            let e = n as i32 + t.deg(tup[0]) * rest;
            let rhs = pair(&t.basis(&tup[1..]), tup[0]);
            let rhs = if e % 2 == 0 { rhs } else { -rhs };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

// ---------- families ----------

/// Pulls a structure and pairing back along a degree-preserving basis change:
/// the new `i`-th basis vector is column `i` of `p`.
pub fn change_basis(
    s: &LInftyStructure,
    ae: &CyclicPairing,
    p: &Matrix,
) -> (LInftyStructure, CyclicPairing) {
    let space = s.space().clone();
    let dim = space.dim();
    let pinv = linalg::inverse(p).expect("invertible basis change");
    let t = Table::new(s);
    let col = |i: usize| -> Vec<Rat> { p.iter().map(|row| row[i].clone()).collect() };
    let mut out = LInftyStructure::new(space.clone());
    for k in s.arities().collect::<Vec<_>>() {
        for idx in multisets(dim, k) {
            let d = |i: usize| space.degree(i);
            if oracle_sort(&idx, &d).is_none() {
                continue;
            }
            let v = t.eval(&idx.iter().map(|&i| col(i)).collect::<Vec<_>>());
            out.set_entry(&idx, linalg::mat_vec(&pinv, &v)).unwrap();
        }
    }
    let mut k = CyclicPairing::new(&space, ae.dimension());
    for i in 0..dim {
        for j in i..dim {
            let mut v = Rat::zero();
            for a in 0..dim {
                for b in 0..dim {
                    if !p[a][i].is_zero() && !p[b][j].is_zero() {
                        v += &p[a][i] * &p[b][j] * ae.get(a, b);
                    }
                }
            }
            k.set(i, j, v).unwrap();
        }
    }
    (out, k)
}

/// Random invertible matrix preserving the degree blocks of `space`.
pub fn random_graded_basis_change(r: &mut ChaCha8Rng, space: &GradedSpace) -> Matrix {
    let n = space.dim();
    let mut p = linalg::zeros(n, n);
    for &d in space.components().keys() {
        let range = space.indices_in(d);
        let block = random_invertible(r, range.len());
        for (a, i) in range.clone().enumerate() {
            for (b, j) in range.clone().enumerate() {
                p[i][j] = block[a][b].clone();
            }
        }
    }
    p
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn symmetric_tensor_entry(r: &mut ChaCha8Rng, p_zero: f64) -> Rat {
    sparse_rat(r, p_zero)
}

/// Degree {1, 2} structure from a potential: `L¹ = ⟨e_i⟩`, `L² = ⟨f_i⟩`,
/// `κ(μ_k(e_{i_1},…,e_{i_k}), e_{i_0}) = T_k(i_0,…,i_k)` with symmetric `T_k`.
/// `tensors[k]` gives `T_k`, `k = 1` being the differential.
pub fn from_tensors(
    m: usize,
    gram: &Matrix,
    tensors: &HashMap<usize, HashMap<Vec<usize>, Rat>>,
) -> (LInftyStructure, CyclicPairing) {
    let e = named("e", m);
    let f = named("f", m);
    let mut comps = std::collections::BTreeMap::new();
    comps.insert(1, e);
    comps.insert(2, f);
    let space = GradedSpace::new(comps).unwrap();
    let mut ae = CyclicPairing::new(&space, 3);
    for i in 0..m {
        for j in 0..m {
            ae.set(i, m + j, gram[i][j].clone()).unwrap();
        }
    }
    // output coordinates v solve Σ_j v_j κ(f_j, e_{i0}) = T(i0, …)
    let gt_inv = linalg::inverse(gram).expect("invertible gram");
    let mut s = LInftyStructure::new(space);
    let mut ks: Vec<_> = tensors.keys().copied().collect();
    ks.sort_unstable();
    for k in ks {
        for idx in multisets(m, k) {
            let rhs: Vec<Rat> = (0..m)
                .map(|i0| {
                    let mut key = idx.clone();
                    key.push(i0);
                    key.sort_unstable();
                    tensors[&k].get(&key).cloned().unwrap_or_default()
                })
                .collect();
            if rhs.iter().all(Zero::is_zero) {
                continue;
            }
            // gram[i0][j] = κ(e_{i0}, f_j), so v = gram⁻¹ · rhs
            let v = linalg::mat_vec(&gt_inv, &rhs);
            let mut out = vec![Rat::zero(); 2 * m];
            for j in 0..m {
                out[m + j] = v[j].clone();
            }
            s.set_entry(&idx, out).unwrap();
        }
    }
    (s, ae)
}

fn random_symmetric_tensor(
    r: &mut ChaCha8Rng,
    m: usize,
    order: usize,
    p_zero: f64,
) -> HashMap<Vec<usize>, Rat> {
    multisets(m, order)
        .into_iter()
        .map(|k| (k, symmetric_tensor_entry(r, p_zero)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Quadratic form of rank `rank` on `m` variables, as a symmetric order-2 tensor.
fn random_quadratic(r: &mut ChaCha8Rng, m: usize, rank: usize) -> HashMap<Vec<usize>, Rat> {
    let a = random_invertible(r, m);
    let diag: Vec<Rat> = (0..m)
        .map(|i| if i < rank { small_rat(r) } else { Rat::zero() })
        .collect();
    let mut out = HashMap::new();
    for i in 0..m {
        for j in i..m {
            let v: Rat = (0..m).map(|k| &a[k][i] * &a[k][j] * &diag[k]).sum();
            if !v.is_zero() {
                out.insert(vec![i, j], v);
            }
        }
    }
    out
}

/// Random L∞ structure in degrees {1, 2}, brackets up to `max_arity`, optional differential.
pub fn potential_type(
    r: &mut ChaCha8Rng,
    m: usize,
    max_arity: usize,
    rank_d: usize,
) -> (LInftyStructure, CyclicPairing) {
    let gram = random_invertible(r, m);
    let mut tensors = HashMap::new();
    if rank_d > 0 {
        tensors.insert(1, random_quadratic(r, m, rank_d));
    }
    for k in 2..=max_arity {
        tensors.insert(k, random_symmetric_tensor(r, m, k + 1, 0.5));
    }
    from_tensors(m, &gram, &tensors)
}

/// Cyclic dg Lie algebra in degrees {1, 2}: differential of rank `rank_d` and a bracket.
pub fn dg_lie_12(r: &mut ChaCha8Rng, m: usize, rank_d: usize) -> (LInftyStructure, CyclicPairing) {
    let gram = random_invertible(r, m);
    let mut tensors = HashMap::new();
    tensors.insert(1, random_quadratic(r, m, rank_d));
    tensors.insert(2, random_symmetric_tensor(r, m, 3, 0.3));
    from_tensors(m, &gram, &tensors)
}

/// `sl₂ ⊗ H*(S³)` in the basis `h, e, f` and `h t, e t, f t`, trace form pairing.
pub fn sl2_s3() -> (LInftyStructure, CyclicPairing) {
    let space =
        GradedSpace::from_degrees(&[(0, &["h", "e", "f"]), (3, &["ht", "et", "ft"])]).unwrap();
    let mut s = LInftyStructure::new(space.clone());
    let br = [("h", "e", "e", 2), ("h", "f", "f", -2), ("e", "f", "h", 1)];
    for (a, b, c, k) in br {
        s.set_named(&[a, b], &[(c, rat(k))]).unwrap();
        let (at, bt, ct) = (format!("{a}t"), format!("{b}t"), format!("{c}t"));
        s.set_named(&[a, &bt], &[(&ct, rat(k))]).unwrap();
        s.set_named(&[b, &at], &[(&ct, rat(-k))]).unwrap();
    }
    let mut ae = CyclicPairing::new(&space, 3);
    ae.set_named(&space, "h", "ht", rat(2)).unwrap();
    ae.set_named(&space, "e", "ft", rat(1)).unwrap();
    ae.set_named(&space, "f", "et", rat(1)).unwrap();
    (s, ae)
}

/// `sl₂ ⊗ H*(S³)` plus the contractible pieces `e0 → c1`, `e2 → c3`, in a random
/// degree-preserving basis, so the contraction mixes the two summands.
pub fn sl2_s3_plus_contractible(r: &mut ChaCha8Rng) -> (LInftyStructure, CyclicPairing) {
    let space = GradedSpace::from_degrees(&[
        (0, &["h", "e", "f", "e0"]),
        (1, &["c1"]),
        (2, &["e2"]),
        (3, &["ht", "et", "ft", "c3"]),
    ])
    .unwrap();
    let (base, base_ae) = sl2_s3();
    let mut s = LInftyStructure::new(space.clone());
    let t = Table::new(&base);
    for k in base.arities().collect::<Vec<_>>() {
        for (idx, out) in t.s.entries(k) {
            let names: Vec<&str> = idx.iter().map(|&i| base.space().name(i)).collect();
            let outs: Vec<(&str, Rat)> = out
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (base.space().name(i), c.clone()))
                .collect();
            s.set_named(&names, &outs).unwrap();
        }
    }
    s.set_named(&["e0"], &[("c1", rat(1))]).unwrap();
    s.set_named(&["e2"], &[("c3", rat(1))]).unwrap();
    let mut ae = CyclicPairing::new(&space, 3);
    for ((i, j), v) in base_ae.entries() {
        ae.set_named(
            &space,
            base.space().name(*i),
            base.space().name(*j),
            v.clone(),
        )
        .unwrap();
    }
    ae.set_named(&space, "e0", "c3", rat(1)).unwrap();
    ae.set_named(&space, "c1", "e2", rat(-1)).unwrap();
    let p = random_graded_basis_change(r, &space);
    change_basis(&s, &ae, &p)
}

/// Adds a random nonzero amount to one structure constant of correct degree.
pub fn mutate(r: &mut ChaCha8Rng, s: &LInftyStructure, max_arity: usize) -> LInftyStructure {
    let space = s.space();
    let dim = space.dim();
    let t = Table::new(s);
    loop {
        let k = r.gen_range(1..=max_arity);
        let mut idx: Vec<usize> = (0..k).map(|_| r.gen_range(0..dim)).collect();
        idx.sort_unstable();
        let d = |i: usize| space.degree(i);
        if oracle_sort(&idx, &d).is_none() {
            continue;
        }
        let target: i32 = idx.iter().map(|&i| space.degree(i)).sum::<i32>() + 2 - k as i32;
        let outs: Vec<usize> = space.indices_in(target).collect();
        let Some(&o) = outs.choose(r) else { continue };
        let mut v = t.basis(&idx);
        v[o] += small_rat(r);
        let mut m = s.clone();
        m.set_entry(&idx, v).unwrap();
        return m;
    }
}

// ---------- potential oracle ----------

/// `W(u) = Σ_k (−1)^{k(k+1)/2}/(k+1)! κ(μ_k(u,…,u), u)` on `L¹`, in variables `u1..up`.
pub fn full_potential(s: &LInftyStructure, ae: &CyclicPairing) -> Poly {
    let space = s.space();
    let l1: Vec<usize> = space.indices_in(1).collect();
    let vars: Vec<String> = (1..=l1.len()).map(|i| format!("u{i}")).collect();
    let zero = Poly::zero(&vars);
    let t = Table::new(s);
    let mut w = zero.clone();
    for k in s.arities().collect::<Vec<_>>() {
        let sign = if (k * (k + 1) / 2) % 2 == 0 {
            rat(1)
        } else {
            rat(-1)
        };
        let c = sign / Rat::from_integer(factorial(k as u32 + 1));
        for tup in ordered_tuples(l1.len(), k) {
            let idx: Vec<usize> = tup.iter().map(|&a| l1[a]).collect();
            let v = t.basis(&idx);
            for (b, &i0) in l1.iter().enumerate() {
                let kv: Rat = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| x * ae.get(j, i0))
                    .sum();
                if kv.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; l1.len()];
                for &a in &tup {
                    e[a] += 1;
                }
                e[b] += 1;
                w = &w + &Poly::from_terms(&vars, [(e, &kv * &c)]);
            }
        }
    }
    w
}

/// `f(x) = W(ιx + w(x))` with `w ∈ η(L²)` solving `∂W/∂w = 0`, through degree `n + 1`.
pub fn elimination_potential(
    s: &LInftyStructure,
    ae: &CyclicPairing,
    c: &Contraction,
    n: usize,
) -> Poly {
    let space = s.space();
    let l1: Vec<usize> = space.indices_in(1).collect();
    let h = &c.cohomology;
    let h1: Vec<usize> = h.space.indices_in(1).collect();
    let vars = default_vars(h1.len());
    let zero = Poly::zero(&vars);
    let w_full = full_potential(s, ae);
    // massive directions: a basis of η(L²) ⊂ L¹, in L¹ coordinates
    let mut cands: Matrix = space
        .indices_in(2)
        .map(|j| l1.iter().map(|&i| c.eta[i][j].clone()).collect())
        .collect();
    cands.retain(|v: &Vec<Rat>| !v.iter().all(Zero::is_zero));
    let (rows, pivots) = linalg::rref(&cands);
    let massive: Vec<Vec<Rat>> = rows.into_iter().take(pivots.len()).collect();
    let r = massive.len();
    let grads: Vec<Poly> = (0..l1.len()).map(|i| w_full.derivative(i)).collect();
    // Hessian of W along the massive directions
    let quad = w_full.homogeneous_part(2);
    let a: Matrix = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| {
                    let mut acc = Rat::zero();
                    for i in 0..l1.len() {
                        for i2 in 0..l1.len() {
                            let h2 = quad.derivative(i).derivative(i2).constant_term();
                            acc += &massive[j][i] * &massive[k][i2] * h2;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let a_inv = linalg::inverse(&a).expect("massive Hessian is invertible");
    let light: Vec<Poly> = l1
        .iter()
        .map(|&i| {
            h1.iter()
                .enumerate()
                .fold(zero.clone(), |acc, (loc, &aidx)| {
                    &acc + &zero.var_like(loc).scale(&h.iota[i][aidx])
                })
        })
        .collect();
    let mut w = vec![zero.clone(); r];
    let u_of = |w: &[Poly]| -> Vec<Poly> {
        (0..l1.len())
            .map(|i| {
                (0..r).fold(light[i].clone(), |acc, j| {
                    &acc + &w[j].scale(&massive[j][i])
                })
            })
            .collect()
    };
    for _ in 0..=n + 1 {
        let u = u_of(&w);
        let g: Vec<Poly> = (0..r)
            .map(|j| {
                (0..l1.len()).fold(zero.clone(), |acc, i| {
                    if massive[j][i].is_zero() {
                        acc
                    } else {
                        &acc + &grads[i]
                            .substitute(&u)
                            .unwrap()
                            .truncate(n as u32 + 1)
                            .scale(&massive[j][i])
                    }
                })
            })
            .collect();
        w = (0..r)
            .map(|j| {
                (0..r)
                    .fold(w[j].clone(), |acc, k| &acc - &g[k].scale(&a_inv[j][k]))
                    .truncate(n as u32 + 1)
            })
            .collect();
    }
    w_full.substitute(&u_of(&w)).unwrap().truncate(n as u32 + 1)
}

// ---------- singularity oracles ----------

fn monomials_below(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nvars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(nvars, d - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim ℚ[x]/(∂f + m^d)` by linear algebra on monomials of degree `< d`.
pub fn milnor_by_linear_algebra(f: &Poly, d: u32) -> usize {
    let n = f.nvars();
    let monos = monomials_below(n, d);
    let index: HashMap<Vec<u32>, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows: Matrix = Vec::new();
    for i in 0..n {
        let g = f.derivative(i);
        for m in &monos {
            let mono = Poly::from_terms(f.vars(), [(m.clone(), Rat::one())]);
            let prod = (&mono * &g).truncate(d - 1);
            let mut row = vec![Rat::zero(); monos.len()];
            for (e, c) in prod.terms() {
                row[index[&e.0]] = c.clone();
            }
            if !row.iter().all(Zero::is_zero) {
                rows.push(row);
            }
        }
    }
    monos.len()
        - if rows.is_empty() {
            0
        } else {
            linalg::rank(&rows)
        }
}

/// `(label, polynomial, μ)` for `A_1..A_10`, `D_4..D_8`, `E_6, E_7, E_8`.
pub fn ade_table() -> Vec<(String, String, usize)> {
    let mut out = Vec::new();
    for k in 1..=10 {
        out.push((format!("A{k}"), format!("x^2 + y^{}", k + 1), k));
    }
    for k in 4..=8 {
        out.push((format!("D{k}"), format!("x^2*y + y^{}", k - 1), k));
    }
    out.push(("E6".into(), "x^3 + y^4".into(), 6));
    out.push(("E7".into(), "x^3 + x*y^3".into(), 7));
    out.push(("E8".into(), "x^3 + y^5".into(), 8));
    out
}

pub fn xy(s: &str) -> Poly {
    Poly::parse(s, Some(&["x", "y"])).unwrap()
}
