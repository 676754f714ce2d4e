//! Sparse multivariate polynomials over [`Rat`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded:
//! lower total degree first, and within one degree the lexicographically
//! larger exponent vector first (`x^2`, `x*y`, `y^2`). Iteration order is
//! therefore reproducible, and the first term is the leading term for the
//! local (anti-graded) ordering used by the standard-basis code.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rat, is_negative, parse_rat, Rat};

/// Dense exponent vector; its length equals the number of ring variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::zero_in(vars.iter().map(|v| v.as_ref().to_string()).collect())
    }

    pub(crate) fn zero_in(vars: Arc<[String]>) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Zero polynomial over the same ring as `self`.
    pub fn zero_like(&self) -> Self {
        Self::zero_in(self.vars.clone())
    }

    pub fn constant_like(&self, c: Rat) -> Self {
        let mut p = self.zero_like();
        p.add_term(Monomial::one(self.nvars()), c);
        p
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(Rat::one())
    }

    /// The `i`-th variable of the ring of `self`.
    pub fn var_like(&self, i: usize) -> Self {
        let mut e = Monomial::one(self.nvars());
        e.0[i] = 1;
        let mut p = self.zero_like();
        p.add_term(e, Rat::one());
        p
    }

    pub fn variable<S: AsRef<str>>(vars: &[S], i: usize) -> Self {
        Self::zero(vars).var_like(i)
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(
                e.len(),
                p.nvars(),
                "exponent length must match variable count"
            );
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Leading term for the local ordering: lowest total degree, ties broken
    /// towards the lexicographically larger exponent.
    pub fn local_leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next()
    }

    /// Highest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Minimal total degree of a term; `None` stands for the order of zero (∞).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Largest `k` with `v^k` dividing `self`; `None` for zero.
    pub fn order_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "variable lists differ: [{}] vs [{}]",
                self.vars.join(", "),
                other.vars.join(", ")
            )))
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn arith(&self, other: &Poly, op: Arith) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(match op {
            Arith::Add => self.add_unchecked(other, false),
            Arith::Sub => self.add_unchecked(other, true),
            Arith::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let mut out = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Product with every term of total degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Poly, max_degree: u32) -> Poly {
        assert!(self.same_ring(other), "variable lists differ");
        let mut out = self.zero_like();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                break;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > max_degree {
                    break;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return self.zero_like();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return self.zero_like();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.clone();
            e.0[var] -= 1;
            out.add_term(e, c * Rat::from_integer(k.into()));
        }
        out
    }

    /// Drops all terms of total degree above `n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Composite polynomial `self(images[0], …, images[n-1])`. All images must
    /// share one variable list, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::Structural(format!(
                "substitution needs {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let Some(first) = images.first() else {
            // no variables: a constant
            let target = Poly::zero::<&str>(&[]);
            return Ok(target.constant_like(self.constant_term()));
        };
        for im in &images[1..] {
            first.check_ring(im)?;
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![p.one_like()]).collect();
        let mut out = first.zero_like();
        for (m, c) in &self.terms {
            let mut term = first.constant_like(c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes the constant `value` for variable `var`; the ring is unchanged.
    pub fn specialize(&self, var: usize, value: &Rat) -> Poly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let k = m.0[var];
            let mut e = m.clone();
            e.0[var] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff *= value;
            }
            out.add_term(e, coeff);
        }
        out
    }

    /// `self(…, v + shift, …)` for variable `var`.
    pub fn translate(&self, var: usize, shift: &Rat) -> Poly {
        let images: Vec<Poly> = (0..self.nvars())
            .map(|i| {
                let v = self.var_like(i);
                if i == var {
                    &v + &self.constant_like(shift.clone())
                } else {
                    v
                }
            })
            .collect();
        self.substitute(&images).expect("same ring")
    }

    /// Exact division by `v^k`; `None` if `v^k` does not divide.
    pub fn div_var_power(&self, var: usize, k: u32) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[var] < k {
                return None;
            }
            let mut e = m.clone();
            e.0[var] -= k;
            terms.insert(e, c.clone());
        }
        Some(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Dense coefficient list in variable `var`, provided no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<Vec<Rat>> {
        let mut out: Vec<Rat> = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            let k = m.0[var] as usize;
            if out.len() <= k {
                out.resize(k + 1, Rat::zero());
            }
            out[k] = c.clone();
        }
        Some(out)
    }

    /// The same polynomial in a ring with renamed variables (same count).
    pub fn rename<S: AsRef<str>>(&self, names: &[S]) -> Result<Poly> {
        if names.len() != self.nvars() {
            return Err(Error::Structural(
                "rename needs one name per variable".into(),
            ));
        }
        Ok(Poly {
            vars: names.iter().map(|n| n.as_ref().to_string()).collect(),
            terms: self.terms.clone(),
        })
    }

    /// Maps `self` into a ring whose variable list contains every variable of `self`.
    pub fn embed<S: AsRef<str>>(&self, vars: &[S]) -> Result<Poly> {
        let target = Poly::zero(vars);
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target.var_index(v).ok_or_else(|| {
                    Error::Structural(format!("variable `{v}` missing from target ring"))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = target;
        for (m, c) in &self.terms {
            let mut e = Monomial::one(out.nvars());
            for (i, &k) in m.0.iter().enumerate() {
                e.0[idx[i]] = k;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Parses the plain-text syntax `3/2*x^2*y - y^3`.
    ///
    /// With `vars = None` the ring variables are the identifiers that occur,
    /// sorted. Parentheses are accepted as an extension of the grammar.
    pub fn parse(text: &str, vars: Option<&[&str]>) -> Result<Poly> {
        let tokens = tokenize(text)?;
        let ring: Vec<String> = match vars {
            Some(v) => v.iter().map(|s| s.to_string()).collect(),
            None => {
                let mut names: Vec<String> = tokens
                    .iter()
                    .filter_map(|(_, t)| match t {
                        Token::Ident(n) => Some(n.clone()),
                        _ => None,
                    })
                    .collect();
                names.sort();
                names.dedup();
                names
            }
        };
        let mut parser = Parser {
            tokens: &tokens,
            pos: 0,
            zero: Poly::zero(&ring),
        };
        let p = parser.expr()?;
        if let Some((col, t)) = tokens.get(parser.pos) {
            return Err(Error::parse(
                None,
                format!("unexpected {t:?} at column {}", col + 1),
            ));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(format_rat(&abs));
            }
            for (v, &k) in self.vars.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    /// Panics if the variable lists differ; use [`Poly::arith`] for a checked sum.
    fn add(self, rhs: &Poly) -> Poly {
        self.arith(rhs, Arith::Add).expect("variable lists differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.arith(rhs, Arith::Sub).expect("variable lists differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.arith(rhs, Arith::Mul).expect("variable lists differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

/// Exact `p op q` with canonical output.
pub fn poly_arith(p: &Poly, q: &Poly, op: Arith) -> Result<Poly> {
    p.arith(q, op)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' => out.push((start, Token::Star)),
            '^' => out.push((start, Token::Caret)),
            '(' => out.push((start, Token::LParen)),
            ')' => out.push((start, Token::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                    return Err(Error::parse(
                        None,
                        format!("non-rational constant at column {}", start + 1),
                    ));
                }
                let r = parse_rat(&text[start..i]).map_err(|e| match e {
                    Error::Parse { message, .. } => {
                        Error::parse(None, format!("{message} at column {}", start + 1))
                    }
                    other => other,
                })?;
                out.push((start, Token::Num(r)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::parse(
                    None,
                    format!("unexpected character `{other}` at column {}", start + 1),
                ))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    zero: Poly,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, what: &str) -> Error {
        match self.tokens.get(self.pos) {
            Some((col, t)) => {
                Error::parse(None, format!("{what}, found {t:?} at column {}", col + 1))
            }
            None => Error::parse(None, format!("{what}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.zero.clone();
        let mut negate = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.peek().cloned() {
            Some(Token::Num(r)) => {
                self.pos += 1;
                return Ok(self.zero.constant_like(r));
            }
            Some(Token::Ident(name)) => {
                let i = self
                    .zero
                    .var_index(&name)
                    .ok_or_else(|| Error::parse(None, format!("unknown variable `{name}`")))?;
                self.pos += 1;
                self.zero.var_like(i)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.err("expected a coefficient, variable or `(`")),
        };
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Num(r)) if r.is_integer() && !is_negative(&r) => {
                    self.pos += 1;
                    let k: u32 = r
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::parse(None, "exponent too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }
}
