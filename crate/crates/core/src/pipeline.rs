//! Algebra → transfer → potential → Milnor number → Behrend value.

use crate::axioms::{check_cyclic, check_jacobi, AxiomReport};
use crate::error::{Error, Result};
use crate::format::AlgebraFile;
use crate::motive::{behrend_value, BehrendReport, Route};
use crate::potential::{potential, Potential};
use crate::singular::{milnor_number, MilnorData};
use crate::transfer::{build_contraction, transfer, TransferredStructure, DEFAULT_ARITY_BUDGET};

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// First transfer arity tried.
    pub start_order: usize,
    /// Highest transfer arity tried.
    pub max_order: usize,
    pub route: Route,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            start_order: 4,
            max_order: DEFAULT_ARITY_BUDGET,
            route: Route::Auto,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub axioms: AxiomReport,
    pub transferred: TransferredStructure,
    pub potential: Potential,
    pub milnor: MilnorData,
    pub behrend: BehrendReport,
}

impl PipelineResult {
    pub fn mu(&self) -> usize {
        self.behrend.mu
    }
}

/// Runs the whole chain, raising the order until the truncated potential
/// determines μ: a germ with Milnor number μ is (μ+1)-determined, and the
/// potential is exact through degree `N + 1`, so `μ ≤ N` certifies it.
pub fn pipeline(file: &AlgebraFile, opts: &PipelineOptions) -> Result<PipelineResult> {
    let s = &file.structure;
    let ae = &file.kappa;
    let n_max = (s.max_arity() + 1).max(4);
    let mut axioms = check_jacobi(s, n_max);
    axioms.merge(check_cyclic(s, ae, n_max));
    if !axioms.passed() {
        return Err(Error::Axiom(format!(
            "input violates the axioms: {}",
            axioms.violations[0]
        )));
    }
    let c = build_contraction(s, ae)?;
    if c.cohomology.space.dim_in(1) == 0 {
        return Err(Error::Unsupported(
            "H^1(L) = 0: the potential has no variables".into(),
        ));
    }
    let mut n = opts.start_order.max(2);
    loop {
        let t = transfer(s, ae, &c, n)?;
        let f = potential(&t, n)?;
        let md = milnor_number(f.poly())?;
        if matches!(md.mu, Some(mu) if mu <= n) {
            let behrend = behrend_value(f.poly(), opts.route)?;
            return Ok(PipelineResult {
                axioms,
                transferred: t,
                potential: f,
                milnor: md,
                behrend,
            });
        }
        if n + 2 > opts.max_order {
            return Err(Error::Resource(format!(
                "μ is not determined by the potential through degree {} (μ of the truncation: {})",
                n + 1,
                md.mu_string()
            )));
        }
        n += 2;
    }
}
