//! L∞ structure constants and cyclic pairings.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{sort_with_sign, GradedSpace};
use crate::linalg::Matrix;
use crate::rational::Rat;

/// Brackets `μ_k`, stored on sorted multi-indices only.
///
/// `μ_k` has degree `2 − k` and is graded antisymmetric: swapping adjacent
/// arguments `a, b` multiplies by `−(−1)^{|a||b|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInftyStructure {
    space: GradedSpace,
    maps: BTreeMap<usize, BTreeMap<Vec<usize>, Vec<Rat>>>,
}

impl LInftyStructure {
    pub fn new(space: GradedSpace) -> Self {
        LInftyStructure {
            space,
            maps: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// Largest arity with a nonzero entry, 0 for the abelian structure.
    pub fn max_arity(&self) -> usize {
        self.maps
            .iter()
            .rev()
            .find(|(_, t)| !t.is_empty())
            .map_or(0, |(k, _)| *k)
    }

    /// Nonzero entries of `μ_k` in sorted-index order.
    pub fn entries(&self, k: usize) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rat>)> {
        self.maps.get(&k).into_iter().flat_map(|t| t.iter())
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.maps
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, _)| *k)
    }

    fn expected_degree(&self, inputs: &[usize]) -> i32 {
        inputs.iter().map(|&i| self.space.degree(i)).sum::<i32>() + 2 - inputs.len() as i32
    }

    /// Stores `μ_k(inputs) = output`; unsorted inputs are normalized by the Koszul sign.
    pub fn set_entry(&mut self, inputs: &[usize], output: Vec<Rat>) -> Result<()> {
        let k = inputs.len();
        if k == 0 {
            return Err(Error::Structural("μ_0 is not supported".into()));
        }
        if output.len() != self.space.dim() {
            return Err(Error::Structural(
                "output vector has the wrong length".into(),
            ));
        }
        if let Some(&bad) = inputs.iter().find(|&&i| i >= self.space.dim()) {
            return Err(Error::Structural(format!("basis index {bad} out of range")));
        }
        let want = self.expected_degree(inputs);
        for (i, c) in output.iter().enumerate() {
            if !c.is_zero() && self.space.degree(i) != want {
                return Err(Error::Structural(format!(
                    "μ_{k}({}) has a component on `{}` of degree {}, expected degree {want}",
                    self.arg_names(inputs),
                    self.space.name(i),
                    self.space.degree(i)
                )));
            }
        }
        let zero = output.iter().all(Zero::is_zero);
        let Some((sorted, sign)) = sort_with_sign(inputs, self.space.degrees()) else {
            if zero {
                return Ok(());
            }
            return Err(Error::Structural(format!(
                "μ_{k}({}) repeats an even-degree argument and must vanish",
                self.arg_names(inputs)
            )));
        };
        let table = self.maps.entry(k).or_default();
        if zero {
            table.remove(&sorted);
        } else {
            let out = if sign < 0 {
                output.into_iter().map(|c| -c).collect()
            } else {
                output
            };
            table.insert(sorted, out);
        }
        Ok(())
    }

    /// [`set_entry`](Self::set_entry) with basis names.
    pub fn set_named(&mut self, inputs: &[&str], output: &[(&str, Rat)]) -> Result<()> {
        let idx = inputs
            .iter()
            .map(|n| self.space.index_of(n))
            .collect::<Result<Vec<_>>>()?;
        let mut v = self.space.zero_vec();
        for (n, c) in output {
            v[self.space.index_of(n)?] += c;
        }
        self.set_entry(&idx, v)
    }

    pub(crate) fn arg_names(&self, idx: &[usize]) -> String {
        idx.iter()
            .map(|&i| self.space.name(i))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Stored value and reordering sign of `μ_k` on basis arguments, `None` when zero.
    pub fn lookup(&self, idx: &[usize]) -> Option<(i8, &Vec<Rat>)> {
        let table = self.maps.get(&idx.len())?;
        if idx.windows(2).all(|w| w[0] < w[1]) {
            return table.get(idx).map(|v| (1, v));
        }
        let (sorted, sign) = sort_with_sign(idx, self.space.degrees())?;
        table.get(&sorted).map(|v| (sign, v))
    }

    /// `μ_k` on basis arguments as a dense vector.
    pub fn eval_basis(&self, idx: &[usize]) -> Vec<Rat> {
        match self.lookup(idx) {
            None => self.space.zero_vec(),
            Some((1, v)) => v.clone(),
            Some((_, v)) => v.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Multilinear extension of `μ_k` to arbitrary vectors.
    pub fn eval(&self, args: &[Vec<Rat>]) -> Result<Vec<Rat>> {
        let dim = self.space.dim();
        if let Some(a) = args.iter().find(|a| a.len() != dim) {
            return Err(Error::Structural(format!(
                "argument of length {} in a space of dimension {dim}",
                a.len()
            )));
        }
        let mut out = self.space.zero_vec();
        if !self.maps.contains_key(&args.len()) {
            return Ok(out);
        }
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..dim).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; args.len()];
        self.eval_rec(args, &supports, 0, &mut idx, Rat::one(), &mut out);
        Ok(out)
    }

    fn eval_rec(
        &self,
        args: &[Vec<Rat>],
        supports: &[Vec<usize>],
        pos: usize,
        idx: &mut Vec<usize>,
        coeff: Rat,
        out: &mut [Rat],
    ) {
        if pos == args.len() {
            if let Some((sign, v)) = self.lookup(idx) {
                let c = if sign < 0 { -coeff } else { coeff };
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
            self.eval_rec(args, supports, pos + 1, idx, &coeff * &args[pos][i], out);
        }
    }

    /// Removes every entry of `μ_k` for `k > n`.
    pub fn truncated(&self, n: usize) -> Self {
        let mut s = self.clone();
        s.maps.retain(|k, _| *k <= n);
        s
    }
}

/// Degree-shifted bilinear form `ae(a, b)`, stored on ordered basis pairs.
///
/// When only one order of a pair is stored the other is induced by graded
/// symmetry `ae(a,b) = (−1)^{|a||b|} ae(b,a)`; if both are stored they are
/// checked against each other by [`check_cyclic`](crate::check_cyclic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPairing {
    dimension: i32,
    degrees: Vec<i32>,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl CyclicPairing {
    pub fn new(space: &GradedSpace, dimension: i32) -> Self {
        CyclicPairing {
            dimension,
            degrees: space.degrees().to_vec(),
            entries: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> i32 {
        self.dimension
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rat) -> Result<()> {
        if i >= self.degrees.len() || j >= self.degrees.len() {
            return Err(Error::Structural("pairing index out of range".into()));
        }
        if value.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
        Ok(())
    }

    pub fn set_named(&mut self, space: &GradedSpace, a: &str, b: &str, value: Rat) -> Result<()> {
        self.set(space.index_of(a)?, space.index_of(b)?, value)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        if let Some(v) = self.entries.get(&(i, j)) {
            return v.clone();
        }
        match self.entries.get(&(j, i)) {
            Some(v) if (self.degrees[i] * self.degrees[j]).rem_euclid(2) == 1 => -v.clone(),
            Some(v) => v.clone(),
            None => Rat::zero(),
        }
    }

    pub fn pair(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.degrees.len() {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.degrees.len() {
                if v[j].is_zero() {
                    continue;
                }
                let g = self.get(i, j);
                if !g.is_zero() {
                    acc += &u[i] * &v[j] * g;
                }
            }
        }
        acc
    }

    /// Gram matrix `G[i][j] = ae(e_i, e_j)`.
    pub fn matrix(&self) -> Matrix {
        let n = self.degrees.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn scaled(&self, lambda: &Rat) -> Self {
        let mut p = self.clone();
        for v in p.entries.values_mut() {
            *v *= lambda;
        }
        p.entries.retain(|_, v| !v.is_zero());
        p
    }
}
