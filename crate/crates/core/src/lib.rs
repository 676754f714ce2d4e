//! Exact computations for cyclic L∞-algebras of dimension 3 and the
//! singularities of their superpotentials.
//!
//! The pipeline runs: structure constants ([`LInftyStructure`], [`CyclicPairing`])
//! → transfer to cohomology ([`transfer()`]) → potential ([`potential()`])
//! → Milnor number ([`milnor_number`]) and, in two variables, an embedded
//! resolution ([`embedded_resolution`]) feeding the motivic Milnor fiber,
//! the monodromy zeta function and the Behrend value ([`behrend_value`]).
//!
//! Everything is exact over ℚ.
//!
//! ```
//! use cymf::{parse_algebra, pipeline, PipelineOptions};
//!
//! let file = parse_algebra(
//!     "dimension = 3\n[degrees]\n1 = [\"a\"]\n2 = [\"b\"]\n\
//!      [[mu]]\narity = 2\ninputs = [\"a\", \"a\"]\noutput = { b = \"2\" }\n\
//!      [[kappa]]\npair = [\"a\", \"b\"]\nvalue = \"1\"\n",
//! )?;
//! let r = pipeline(&file, &PipelineOptions::default())?;
//! assert_eq!(r.potential.poly().to_string(), "-1/3*x^3");
//! assert_eq!((r.mu(), r.behrend.value()), (2, 2));
//! # Ok::<(), cymf::Error>(())
//! ```

pub mod axioms;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod graded;
pub mod linalg;
pub mod linfty;
pub mod motive;
pub mod pipeline;
pub mod poly;
pub mod potential;
pub mod rational;
pub mod resolution;
pub mod series;
pub mod singular;
pub mod transfer;
pub mod univariate;

pub use axioms::{check_cyclic, check_jacobi, jacobiator, AxiomReport, Residual, Violation};
pub use cohomology::{cohomology, differential_matrix, Cohomology};
pub use error::{Error, Result};
pub use format::{parse_algebra, read_algebra, write_algebra, AlgebraFile};
pub use graded::{koszul_sign, GradedSpace, KoszulSign};
pub use linfty::{CyclicPairing, LInftyStructure};
pub use motive::{
    behrend_value, chi_top_function, euler_specialize, monodromy_zeta, motivic_milnor_fiber,
    unweighted_euler, BehrendReport, BehrendValue, Cover, LaurentL, MotiveExpr, MotiveTerm, Route,
    ZetaFn,
};
pub use pipeline::{pipeline, PipelineOptions, PipelineResult};
pub use poly::{poly_arith, Arith, Monomial, Poly};
pub use potential::{
    check_df_equals_f, jacobian_ideal, mc_map, potential, potential_via_mc, JacobianIdeal, McMap,
    Potential,
};
pub use rational::{parse_rat, rat, ratio, Rat};
pub use resolution::{
    blow_up_point, embedded_resolution, embedded_resolution_with, strata, Chart, Component,
    Divisor, ExtraBlowUp, ResolutionGraph, ResolutionOptions, Stratum, StrictBranch,
};
pub use series::{PowerSeries, DEFAULT_ORDER};
pub use singular::{
    determinacy_bound, local_normal_form, milnor_number, standard_basis, MilnorData,
};
pub use transfer::{
    build_contraction, check_transfer, transfer, transfer_with_budget, Contraction,
    TransferredStructure, DEFAULT_ARITY_BUDGET,
};
