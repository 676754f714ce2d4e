//! Motivic Milnor fiber classes, monodromy zeta functions and Behrend values.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::resolution::{embedded_resolution, ResolutionGraph, Stratum};
use crate::singular::milnor_number;

/// Integer Laurent polynomial in `L`, exponent → coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentL(pub BTreeMap<i32, i64>);

impl LaurentL {
    pub fn constant(c: i64) -> LaurentL {
        LaurentL::from_terms([(0, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> LaurentL {
        let mut out = LaurentL::default();
        for (e, c) in terms {
            *out.0.entry(e).or_insert(0) += c;
        }
        out.0.retain(|_, c| *c != 0);
        out
    }

    /// `(1 − L)^k`.
    pub fn one_minus_l_pow(k: u32) -> LaurentL {
        let mut out = LaurentL::constant(1);
        for _ in 0..k {
            out = out.mul(&LaurentL::from_terms([(0, 1), (1, -1)]));
        }
        out
    }

    pub fn mul(&self, other: &LaurentL) -> LaurentL {
        LaurentL::from_terms(
            self.0
                .iter()
                .flat_map(|(a, x)| other.0.iter().map(move |(b, y)| (a + b, x * y))),
        )
    }

    pub fn add(&self, other: &LaurentL) -> LaurentL {
        LaurentL::from_terms(self.0.iter().chain(other.0.iter()).map(|(e, c)| (*e, *c)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Value at `L = 1`.
    pub fn at_one(&self) -> i64 {
        self.0.values().sum()
    }
}

impl fmt::Display for LaurentL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            match (*e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "L")?,
                (1, a) => write!(f, "{a}*L")?,
                (e, 1) => write!(f, "L^{e}")?,
                (e, a) => write!(f, "{a}*L^{e}")?,
            }
        }
        Ok(())
    }
}

/// Symbol of an equivariant cover `Ẽ_I°`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cover {
    /// `E<i>` for curves, `pt` for point strata.
    pub stratum: String,
    pub base_chi: i64,
    pub cover_degree: u32,
    pub mu_hat_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotiveTerm {
    pub coefficient: LaurentL,
    pub cover: Cover,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotiveExpr {
    pub terms: Vec<MotiveTerm>,
}

impl MotiveExpr {
    fn sort_key(c: &Cover) -> (u8, u32, String, i64) {
        if c.stratum == "pt" {
            (1, c.cover_degree, String::new(), c.base_chi)
        } else {
            let n: u32 = c
                .stratum
                .trim_start_matches('E')
                .parse()
                .unwrap_or(u32::MAX);
            (0, n, c.stratum.clone(), c.base_chi)
        }
    }

    /// Merges equal cover symbols, drops zero terms, sorts canonically.
    pub fn normalized(terms: impl IntoIterator<Item = MotiveTerm>) -> MotiveExpr {
        let mut merged: BTreeMap<(u8, u32, String, i64), (Cover, LaurentL)> = BTreeMap::new();
        for t in terms {
            let e = merged
                .entry(Self::sort_key(&t.cover))
                .or_insert_with(|| (t.cover.clone(), LaurentL::default()));
            e.1 = e.1.add(&t.coefficient);
        }
        MotiveExpr {
            terms: merged
                .into_values()
                .filter(|(_, c)| !c.is_zero())
                .map(|(cover, coefficient)| MotiveTerm { coefficient, cover })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let c = t.coefficient.to_string();
            if t.coefficient.0.len() > 1 {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            write!(
                f,
                " * Cover{{{}, {}, {}}}",
                t.cover.stratum, t.cover.base_chi, t.cover.cover_degree
            )?;
        }
        Ok(())
    }
}

/// `MF_0 = Σ_I (1 − L)^{|I|−1} [Ẽ_I° ∩ h⁻¹(0)]`.
pub fn motivic_milnor_fiber(strata: &[Stratum]) -> MotiveExpr {
    let terms = strata.iter().filter(|s| s.over_origin).map(|s| {
        let k = s.index.len() as u32;
        let (stratum, base_chi, count) = if k == 1 {
            (s.name(), s.chi, 1)
        } else {
            ("pt".to_string(), 1, s.chi)
        };
        MotiveTerm {
            coefficient: LaurentL::one_minus_l_pow(k - 1).mul(&LaurentL::constant(count)),
            cover: Cover {
                stratum,
                base_chi,
                cover_degree: s.m,
                mu_hat_order: s.m,
            },
        }
    });
    MotiveExpr::normalized(terms)
}

/// `L ↦ 1`, each cover ↦ `cover_degree · base_chi`.
pub fn euler_specialize(m: &MotiveExpr) -> i64 {
    m.terms
        .iter()
        .map(|t| t.coefficient.at_one() * t.cover.cover_degree as i64 * t.cover.base_chi)
        .sum()
}

/// `Σ_I m_I χ(E_I°)` over all strata over the origin, without `(1 − L)` weights.
pub fn unweighted_euler(strata: &[Stratum]) -> i64 {
    strata
        .iter()
        .filter(|s| s.over_origin)
        .map(|s| s.m as i64 * s.chi)
        .sum()
}

/// `χ_top(MF_0)` at the origin.
pub fn chi_top_function(g: &ResolutionGraph) -> i64 {
    euler_specialize(&motivic_milnor_fiber(&crate::resolution::strata(g)))
}

/// `ζ(t) = Π (1 − t^{m})^{e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFn {
    /// `(m, e)` sorted by `m`, `e ≠ 0`.
    pub factors: Vec<(u32, i64)>,
}

type IntPoly = Vec<i64>;

fn ipoly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with constant term 1, if it divides.
fn ipoly_div(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let mut r = a.clone();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lead = *b.last()?;
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        if c % lead != 0 {
            return None;
        }
        q[i] = c / lead;
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= q[i] * y;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

/// Cyclotomic polynomial `Φ_n` with integer coefficients, low degree first.
fn cyclotomic(n: u32) -> IntPoly {
    let mut p: IntPoly = vec![-1];
    p.resize(n as usize + 1, 0);
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = ipoly_div(&p, &cyclotomic(d)).expect("cyclotomic factor divides");
        }
    }
    p
}

fn format_ipoly(p: &IntPoly) -> String {
    let mut s = String::new();
    for (e, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let abs = c.abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        match (e, abs) {
            (0, a) => s.push_str(&a.to_string()),
            (1, 1) => s.push('t'),
            (1, a) => s.push_str(&format!("{a}*t")),
            (e, 1) => s.push_str(&format!("t^{e}")),
            (e, a) => s.push_str(&format!("{a}*t^{e}")),
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl ZetaFn {
    /// Reduced form `(numerator, denominator)`, coefficients low degree first.
    ///
    /// `1 − t^m = −Π_{d | m} Φ_d`; cancelling cyclotomic exponents gives the
    /// reduced fraction, normalised so both constant terms are positive.
    pub fn reduced(&self) -> (IntPoly, IntPoly) {
        let mut exps: BTreeMap<u32, i64> = BTreeMap::new();
        let mut sign = 1i64;
        for &(m, e) in &self.factors {
            if e.rem_euclid(2) == 1 {
                sign = -sign;
            }
            for d in 1..=m {
                if m % d == 0 {
                    *exps.entry(d).or_insert(0) += e;
                }
            }
        }
        let (mut num, mut den): (IntPoly, IntPoly) = (vec![sign], vec![1]);
        for (d, e) in exps {
            let phi = cyclotomic(d);
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    num = ipoly_mul(&num, &phi);
                } else {
                    den = ipoly_mul(&den, &phi);
                }
            }
        }
        if num[0] < 0 {
            num.iter_mut().for_each(|c| *c = -*c);
            den.iter_mut().for_each(|c| *c = -*c);
        }
        if den[0] < 0 {
            num.iter_mut().for_each(|c| *c = -*c);
            den.iter_mut().for_each(|c| *c = -*c);
        }
        (num, den)
    }

    /// `deg(numerator) − deg(denominator)` of the reduced fraction.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|&(m, e)| m as i64 * e).sum()
    }

    pub fn reduced_string(&self) -> String {
        let (n, d) = self.reduced();
        if d == vec![1] {
            format_ipoly(&n)
        } else {
            format!("({})/({})", format_ipoly(&n), format_ipoly(&d))
        }
    }
}

impl fmt::Display for ZetaFn {
    /// Factored form, positive exponents first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let pos = self.factors.iter().filter(|x| x.1 > 0);
        let neg = self.factors.iter().filter(|x| x.1 < 0);
        let parts: Vec<String> = pos
            .chain(neg)
            .map(|(m, e)| format!("(1-t^{m})^{e}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `ζ(t) = Π_i (1 − t^{m_i})^{−χ(E_i°)}`.
pub fn monodromy_zeta(g: &ResolutionGraph) -> ZetaFn {
    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
    for d in &g.divisors {
        *acc.entry(d.m).or_insert(0) -= g.chi(d.id);
    }
    ZetaFn {
        factors: acc.into_iter().filter(|(_, e)| *e != 0).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Auto,
    Resolution,
    Milnor,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Auto => "auto",
            Route::Resolution => "resolution",
            Route::Milnor => "milnor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehrendValue {
    pub value: i64,
    pub route: Route,
    /// Ambient dimension.
    pub m: usize,
    /// `χ(F_0)` as computed by this route.
    pub chi_f0: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehrendReport {
    pub mu: usize,
    pub smooth: bool,
    pub values: Vec<BehrendValue>,
}

impl BehrendReport {
    pub fn value(&self) -> i64 {
        self.values[0].value
    }

    /// `Some(true)` when both routes ran and agree.
    pub fn agreement(&self) -> Option<bool> {
        (self.values.len() == 2).then(|| self.values[0].value == self.values[1].value)
    }
}

fn sign(m: usize) -> i64 {
    if m.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ν_X(0) = (−1)^m (1 − χ(F_0))` by the Milnor-number and/or resolution route.
pub fn behrend_value(f: &Poly, route: Route) -> Result<BehrendReport> {
    let m = f.nvars();
    let data = milnor_number(f)?;
    let mu = data.mu.ok_or_else(|| {
        Error::Input("the singularity at the origin is not isolated; ν is not computed".into())
    })?;
    let want_res = match route {
        Route::Resolution if m != 2 => {
            return Err(Error::Unsupported(format!(
                "resolution route needs 2 variables, got {m}"
            )))
        }
        Route::Resolution => true,
        Route::Auto => m == 2,
        Route::Milnor => false,
    };
    let want_milnor = route != Route::Resolution;
    let mut values = Vec::new();
    if want_milnor {
        let chi = 1 + sign(m - 1) * mu as i64;
        values.push(BehrendValue {
            value: sign(m) * (1 - chi),
            route: Route::Milnor,
            m,
            chi_f0: chi,
        });
    }
    if want_res {
        let chi = if data.smooth {
            // the Milnor fiber of a smooth germ is a disk
            1
        } else {
            chi_top_function(&embedded_resolution(f)?)
        };
        values.push(BehrendValue {
            value: sign(m) * (1 - chi),
            route: Route::Resolution,
            m,
            chi_f0: chi,
        });
    }
    let report = BehrendReport {
        mu,
        smooth: data.smooth,
        values,
    };
    if report.agreement() == Some(false) {
        return Err(Error::Internal(format!(
            "Behrend routes disagree: milnor {} vs resolution {}",
            report.values[0].value, report.values[1].value
        )));
    }
    Ok(report)
}
