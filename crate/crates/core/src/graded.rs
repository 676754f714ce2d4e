//! Graded vector spaces with named bases, and Koszul signs.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A finite-dimensional ℤ-graded ℚ-vector space with a named basis.
///
/// Basis elements are indexed globally: by degree ascending, then in the
/// listed order within each degree. Vectors are dense `Vec<Rat>` in this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    components: BTreeMap<i32, Vec<String>>,
    names: Vec<String>,
    degrees: Vec<i32>,
    index: HashMap<String, usize>,
}

impl GradedSpace {
    pub fn new(components: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (&d, list) in &components {
            for n in list {
                if index.insert(n.clone(), names.len()).is_some() {
                    return Err(Error::Structural(format!("duplicate basis name `{n}`")));
                }
                names.push(n.clone());
                degrees.push(d);
            }
        }
        let components = components
            .into_iter()
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Ok(GradedSpace {
            components,
            names,
            degrees,
            index,
        })
    }

    /// Convenience constructor from `(degree, names)` pairs.
    pub fn from_degrees(parts: &[(i32, &[&str])]) -> Result<Self> {
        let mut map: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for (d, ns) in parts {
            map.entry(*d)
                .or_default()
                .extend(ns.iter().map(|s| s.to_string()));
        }
        Self::new(map)
    }

    pub fn zero() -> Self {
        Self::new(BTreeMap::new()).expect("empty space")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn components(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.components
    }

    pub fn dim_in(&self, degree: i32) -> usize {
        self.components.get(&degree).map_or(0, Vec::len)
    }

    /// Global indices of the basis elements of the given degree.
    pub fn indices_in(&self, degree: i32) -> std::ops::Range<usize> {
        let start = self
            .degrees
            .iter()
            .position(|&d| d >= degree)
            .unwrap_or(self.dim());
        start..start + self.dim_in(degree)
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Structural(format!("`{name}` is not a basis element")))
    }

    pub fn zero_vec(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = self.zero_vec();
        v[i] = num_traits::One::one();
        v
    }

    /// Degree of a nonzero vector if it is homogeneous.
    pub fn vec_degree(&self, v: &[Rat]) -> Option<i32> {
        let mut d = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match d {
                None => d = Some(self.degrees[i]),
                Some(e) if e != self.degrees[i] => return None,
                _ => {}
            }
        }
        d
    }

    /// Renders a vector as `2*b - 1/3*c`, or `0`.
    pub fn format_vec(&self, v: &[Rat]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs != num_traits::One::one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&self.names[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Sign data of a permutation acting on graded elements.
///
/// For `a_{σ(1)}∧⋯∧a_{σ(n)} = (−1)^{σ̃} ε(σ) a_1∧⋯∧a_n`: `parity` is `(−1)^{σ̃}`,
/// the ordinary sign of σ, and `epsilon` is the product over inverted pairs of
/// `(−1)^{deg·deg}`. Identities use [`KoszulSign::combined`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoszulSign {
    pub parity: i8,
    pub epsilon: i8,
}

impl KoszulSign {
    pub fn combined(self) -> i8 {
        self.parity * self.epsilon
    }
}

/// `perm[k]` is the original position placed at slot `k`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<KoszulSign> {
    if perm.len() != degrees.len() {
        return Err(Error::Structural(format!(
            "permutation of length {} with {} degrees",
            perm.len(),
            degrees.len()
        )));
    }
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Structural("not a permutation".into()));
        }
    }
    let mut parity = 1i8;
    let mut epsilon = 1i8;
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                parity = -parity;
                if (degrees[perm[i]] * degrees[perm[j]]).rem_euclid(2) == 1 {
                    epsilon = -epsilon;
                }
            }
        }
    }
    Ok(KoszulSign { parity, epsilon })
}

/// Combined reordering sign of a sequence of degrees into sorted index order,
/// or `None` when the graded-antisymmetric product vanishes (a repeated
/// even-degree element). Returns the sorted indices alongside.
pub(crate) fn sort_with_sign(idx: &[usize], degrees: &[i32]) -> Option<(Vec<usize>, i8)> {
    let mut v = idx.to_vec();
    let mut sign = 1i8;
    // insertion sort tracking adjacent transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] >= v[j] {
            if v[j - 1] == v[j] {
                if degrees[v[j]].rem_euclid(2) == 0 {
                    return None;
                }
                break;
            }
            let odd = (degrees[v[j - 1]] * degrees[v[j]]).rem_euclid(2) == 1;
            if !odd {
                sign = -sign;
            }
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    // a repeated even element anywhere kills the product
    for w in v.windows(2) {
        if w[0] == w[1] && degrees[w[0]].rem_euclid(2) == 0 {
            return None;
        }
    }
    Some((v, sign))
}
