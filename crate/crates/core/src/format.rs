//! The algebra file format: TOML with `dimension`, `[degrees]`, `[[mu]]` and `[[kappa]]`.
//!
//! ```toml
//! dimension = 3
//!
//! [degrees]
//! 1 = ["a"]
//! 2 = ["b"]
//!
//! [[mu]]
//! arity = 2
//! inputs = ["a", "a"]
//! output = { b = "2" }
//!
//! [[kappa]]
//! pair = ["a", "b"]
//! value = "1"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::Range;

use num_traits::Zero;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::linfty::{CyclicPairing, LInftyStructure};
use crate::rational::{format_rat, parse_rat};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dimension: Spanned<i64>,
    #[serde(default)]
    degrees: BTreeMap<Spanned<String>, Vec<Spanned<String>>>,
    #[serde(default)]
    mu: Vec<Spanned<RawMu>>,
    #[serde(default)]
    kappa: Vec<Spanned<RawKappa>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMu {
    arity: usize,
    inputs: Vec<String>,
    output: BTreeMap<String, Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKappa {
    pair: [String; 2],
    value: String,
}

/// A parsed algebra file.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub structure: LInftyStructure,
    pub kappa: CyclicPairing,
}

fn line_of(text: &str, span: Range<usize>) -> usize {
    text[..span.start.min(text.len())].matches('\n').count() + 1
}

/// Parses an algebra file; errors carry the 1-based line of the offending item.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let raw: RawFile = toml::from_str(text)
        .map_err(|e| Error::parse(e.span().map(|s| line_of(text, s)), e.message().to_string()))?;
    let at = |span: Range<usize>, msg: String| Error::parse(Some(line_of(text, span)), msg);

    if *raw.dimension.get_ref() != 3 {
        return Err(at(
            raw.dimension.span(),
            format!("dimension must be 3, got {}", raw.dimension.get_ref()),
        ));
    }
    let mut components = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (key, names) in &raw.degrees {
        let deg: i32 = key.get_ref().trim().parse().map_err(|_| {
            at(
                key.span(),
                format!("degree `{}` is not an integer", key.get_ref()),
            )
        })?;
        let mut list = Vec::new();
        for n in names {
            if !seen.insert(n.get_ref().clone()) {
                return Err(at(
                    n.span(),
                    format!("duplicate basis name `{}`", n.get_ref()),
                ));
            }
            list.push(n.get_ref().clone());
        }
        components.insert(deg, list);
    }
    let space = GradedSpace::new(components)?;
    let index = |name: &str, span: Range<usize>| {
        space
            .index_of(name)
            .map_err(|_| at(span, format!("unknown basis name `{name}`")))
    };
    let rational = |s: &str, span: Range<usize>| {
        parse_rat(s).map_err(|_| at(span, format!("malformed rational `{s}`")))
    };

    let mut structure = LInftyStructure::new(space.clone());
    let mut defined = BTreeSet::new();
    for entry in &raw.mu {
        let span = entry.span();
        let mu = entry.get_ref();
        if mu.inputs.len() != mu.arity {
            return Err(at(
                span,
                format!("arity {} but {} inputs", mu.arity, mu.inputs.len()),
            ));
        }
        let idx = mu
            .inputs
            .iter()
            .map(|n| index(n, span.clone()))
            .collect::<Result<Vec<_>>>()?;
        if idx.windows(2).any(|w| w[0] > w[1]) {
            return Err(at(span, "inputs must be listed in basis order".into()));
        }
        if !defined.insert(idx.clone()) {
            return Err(at(
                span,
                format!("μ_{}({}) given twice", mu.arity, mu.inputs.join(", ")),
            ));
        }
        let mut out = space.zero_vec();
        for (name, value) in &mu.output {
            out[index(name, value.span())?] = rational(value.get_ref(), value.span())?;
        }
        structure
            .set_entry(&idx, out)
            .map_err(|e| at(span.clone(), e.to_string()))?;
    }

    let mut kappa = CyclicPairing::new(&space, 3);
    let mut pairs = BTreeSet::new();
    for entry in &raw.kappa {
        let span = entry.span();
        let k = entry.get_ref();
        let i = index(&k.pair[0], span.clone())?;
        let j = index(&k.pair[1], span.clone())?;
        if !pairs.insert((i.min(j), i.max(j))) {
            return Err(at(
                span,
                format!("κ({}, {}) given twice", k.pair[0], k.pair[1]),
            ));
        }
        kappa
            .set(i, j, rational(&k.value, span.clone())?)
            .map_err(|e| at(span.clone(), e.to_string()))?;
    }
    Ok(AlgebraFile { structure, kappa })
}

pub fn read_algebra(path: &std::path::Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra(&text)
}

fn quote_list(names: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    let v: Vec<String> = names
        .into_iter()
        .map(|n| format!("\"{}\"", n.as_ref()))
        .collect();
    format!("[{}]", v.join(", "))
}

/// Serializes a structure and pairing; [`parse_algebra`] reads it back.
pub fn write_algebra(s: &LInftyStructure, kappa: &CyclicPairing) -> String {
    let space = s.space();
    let mut out = String::new();
    writeln!(out, "dimension = {}", kappa.dimension()).unwrap();
    writeln!(out, "\n[degrees]").unwrap();
    for (deg, names) in space.components() {
        if !names.is_empty() {
            writeln!(out, "{deg} = {}", quote_list(names)).unwrap();
        }
    }
    for k in s.arities().collect::<Vec<_>>() {
        for (inputs, output) in s.entries(k) {
            writeln!(out, "\n[[mu]]\narity = {k}").unwrap();
            writeln!(
                out,
                "inputs = {}",
                quote_list(inputs.iter().map(|&i| space.name(i)))
            )
            .unwrap();
            let parts: Vec<String> = output
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{} = \"{}\"", space.name(i), format_rat(c)))
                .collect();
            writeln!(out, "output = {{ {} }}", parts.join(", ")).unwrap();
        }
    }
    for ((i, j), v) in kappa.entries() {
        if v.is_zero() {
            continue;
        }
        writeln!(out, "\n[[kappa]]").unwrap();
        writeln!(
            out,
            "pair = {}",
            quote_list([space.name(*i), space.name(*j)])
        )
        .unwrap();
        writeln!(out, "value = \"{}\"", format_rat(v)).unwrap();
    }
    out
}
