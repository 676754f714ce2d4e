mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cymf::{
    behrend_value, build_contraction, check_cyclic, check_df_equals_f, check_jacobi,
    check_transfer, embedded_resolution_with, euler_specialize, jacobian_ideal, mc_map,
    milnor_number, monodromy_zeta, motivic_milnor_fiber, parse_rat, pipeline, potential, rat,
    read_algebra, strata, transfer, unweighted_euler, write_algebra, AlgebraFile, BehrendReport,
    Error, ExtraBlowUp, MilnorData, PipelineOptions, Poly, ResolutionGraph, ResolutionOptions,
    Route,
};
use report::{ints, strings, Report};

/// Exact computations for cyclic L∞-algebras and their superpotential singularities.
#[derive(Parser)]
#[command(name = "cymf", version)]
struct Cli {
    /// Print the machine section as JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Comma-separated ring variables for polynomial arguments.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the L∞ relations and cyclicity of an algebra file.
    Validate {
        file: PathBuf,
        /// Highest arity n of the identities checked.
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
    },
    /// Cohomology and harmonic representatives.
    Cohomology { file: PathBuf },
    /// Transfer the structure to cohomology through a given arity.
    Transfer {
        file: PathBuf,
        #[arg(long)]
        order: usize,
        /// Write the transferred algebra to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Superpotential through degree order + 1.
    Potential {
        file: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Milnor number of a polynomial, or of the potential of an algebra file.
    Milnor { input: String },
    /// Embedded resolution of a plane curve germ.
    Resolve {
        poly: String,
        /// Extra blow-up `<divisor>:<t>` at a free point of a divisor.
        #[arg(long)]
        extra: Vec<String>,
    },
    /// Motivic Milnor fiber of a plane curve germ.
    Motive { poly: String },
    /// Monodromy zeta function of a plane curve germ.
    Zeta { poly: String },
    /// Behrend value of a polynomial, or of the potential of an algebra file.
    Behrend {
        input: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// Algebra file to Behrend value, choosing the order automatically.
    Pipeline {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Resolution,
    Milnor,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Auto => Route::Auto,
            RouteArg::Resolution => Route::Resolution,
            RouteArg::Milnor => Route::Milnor,
        }
    }
}

/// A report and the exit code it carries.
struct Outcome {
    report: Report,
    code: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                out.report.render_json()
            } else {
                out.report.render()
            };
            print!("{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Axiom(_) => 2,
        Error::Resource(_) => 3,
        _ => 1,
    }
}

fn load(file: &Path) -> Result<AlgebraFile, Error> {
    read_algebra(file).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line: None,
            message: match line {
                Some(l) => format!("{}:{l}: {message}", file.display()),
                None => format!("{}: {message}", file.display()),
            },
        },
        other => other,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let vars = cli.vars.as_deref();
    Ok(match &cli.command {
        Cmd::Validate { file, max_arity } => validate(file, *max_arity)?,
        Cmd::Cohomology { file } => cohomology_cmd(file)?.into(),
        Cmd::Transfer {
            file,
            order,
            output,
        } => transfer_cmd(file, *order, output.as_deref())?.into(),
        Cmd::Potential { file, order } => potential_cmd(file, *order)?.into(),
        Cmd::Milnor { input } => milnor_cmd(input, vars)?.into(),
        Cmd::Resolve { poly, extra } => resolve_cmd(poly, extra, vars)?.into(),
        Cmd::Motive { poly } => motive_cmd(poly, vars)?.into(),
        Cmd::Zeta { poly } => zeta_cmd(poly, vars)?.into(),
        Cmd::Behrend { input, route } => behrend_cmd(input, (*route).into(), vars)?.into(),
        Cmd::Pipeline { file, route } => pipeline_cmd(file, (*route).into())?.into(),
    })
}

/// Parses a polynomial; without `--vars`, inputs in `x, y` get the ring `[x, y]`.
fn parse_poly(text: &str, vars: Option<&[String]>) -> Result<Poly, Error> {
    match vars {
        Some(v) => {
            let refs: Vec<&str> = v.iter().map(String::as_str).collect();
            Poly::parse(text, Some(&refs))
        }
        None => {
            let p = Poly::parse(text, None)?;
            if p.vars().iter().all(|v| v == "x" || v == "y") {
                Poly::parse(text, Some(&["x", "y"]))
            } else {
                Ok(p)
            }
        }
    }
}

fn monomial_string(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| {
            if k == 1 {
                v.clone()
            } else {
                format!("{v}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn validate(file: &Path, max_arity: usize) -> Result<Outcome, Error> {
    let alg = load(file)?;
    let s = &alg.structure;
    let mut axioms = check_jacobi(s, max_arity);
    axioms.merge(check_cyclic(s, &alg.kappa, max_arity));
    let mut r = Report::new("validate");
    r.set("file", file.display().to_string())
        .set("dimension", alg.kappa.dimension())
        .set("max_arity", max_arity)
        .set(
            "checked_arities",
            ints(axioms.checked_arities.iter().map(|&n| n as i64)),
        )
        .set("violations", axioms.violations.len())
        .set("passed", axioms.passed());
    describe_space(&mut r, s.space());
    for v in &axioms.violations {
        r.line(format!("violation {v}"));
    }
    if axioms.passed() {
        r.line(format!(
            "Jacobi and cyclic identities hold through arity {max_arity}."
        ));
    }
    let code = if axioms.passed() { 0 } else { 2 };
    Ok(Outcome { report: r, code })
}

fn describe_space(r: &mut Report, space: &cymf::GradedSpace) {
    for (d, names) in space.components() {
        r.line(format!("degree {d}: {}", names.join(", ")));
    }
}

fn cohomology_cmd(file: &Path) -> Result<Report, Error> {
    let alg = load(file)?;
    let s = &alg.structure;
    let c = build_contraction(s, &alg.kappa)?;
    let h = &c.cohomology;
    let dims = h.dims();
    let mut r = Report::new("cohomology");
    r.set("file", file.display().to_string())
        .set("h_degrees", ints(dims.keys().copied()))
        .set("h_dims", ints(dims.values().map(|&n| n as i64)))
        .set("h_basis", strings(h.space.names()));
    for a in 0..h.space.dim() {
        r.line(format!(
            "{} (degree {}) = [{}]",
            h.space.name(a),
            h.space.degree(a),
            s.space().format_vec(&h.iota_column(a))
        ));
    }
    Ok(r)
}

fn transfer_cmd(file: &Path, order: usize, output: Option<&Path>) -> Result<Report, Error> {
    let alg = load(file)?;
    let s = &alg.structure;
    let c = build_contraction(s, &alg.kappa)?;
    let t = transfer(s, &alg.kappa, &c, order)?;
    let check = check_transfer(&t, order);
    let hs = t.structure.space();
    let mut r = Report::new("transfer");
    r.set("file", file.display().to_string())
        .set("order", order)
        .set("h_basis", strings(hs.names()))
        .set("axioms_passed", check.passed());
    let zero = rat(0);
    let mut counts = Vec::new();
    for k in 1..=order {
        let mut n = 0i64;
        for (idx, v) in t.structure.entries(k) {
            if v.iter().all(|c| *c == zero) {
                continue;
            }
            n += 1;
            let args: Vec<&str> = idx.iter().map(|&i| hs.name(i)).collect();
            r.line(format!(
                "nu_{k}({}) = {}",
                args.join(", "),
                hs.format_vec(v)
            ));
        }
        counts.push(n);
    }
    r.set("entries", ints(counts));
    for v in &check.violations {
        r.line(format!("violation {v}"));
    }
    if let Some(path) = output {
        std::fs::write(path, write_algebra(&t.structure, &t.kappa))
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
        r.set("written", path.display().to_string());
    }
    Ok(r)
}

fn potential_cmd(file: &Path, order: usize) -> Result<Report, Error> {
    let alg = load(file)?;
    let s = &alg.structure;
    let c = build_contraction(s, &alg.kappa)?;
    let t = transfer(s, &alg.kappa, &c, order)?;
    let f = potential(&t, order)?;
    let mc = mc_map(&t, order)?;
    let df = check_df_equals_f(&f, &mc, &t.kappa, t.structure.space());
    let jac = jacobian_ideal(&f);
    let mut r = Report::new("potential");
    r.set("file", file.display().to_string())
        .set("order", order)
        .set("exact_through", f.order())
        .set("potential", f.poly().to_string())
        .set("vars", strings(f.poly().vars()))
        .set(
            "binding",
            strings(f.binding.iter().map(|(v, b)| format!("{v} = {b}"))),
        )
        .set("jacobian", strings(jac.generators.iter()))
        .set("df_equals_f", df.passed());
    r.line(format!("f = {}", f.series));
    for (v, b) in &f.binding {
        r.line(format!("{v} is the coordinate dual to {b}"));
    }
    for (j, comps) in mc.components.iter().enumerate() {
        for (target, p) in mc.targets.iter().zip(comps) {
            r.line(format!("F_{}[{target}] = {p}", j + 2));
        }
    }
    Ok(r)
}

/// The germ named by a polynomial argument, or the certified potential of an algebra file.
fn germ(input: &str, vars: Option<&[String]>, r: &mut Report) -> Result<Poly, Error> {
    let path = Path::new(input);
    if path.is_file() {
        let res = pipeline(&load(path)?, &PipelineOptions::default())?;
        r.set("file", input).set("order", res.transferred.order);
        Ok(res.potential.poly().clone())
    } else {
        parse_poly(input, vars)
    }
}

fn set_milnor(r: &mut Report, f: &Poly, md: &MilnorData) {
    let mu = match md.mu {
        Some(m) => serde_json::Value::from(m),
        None => "inf".into(),
    };
    let basis: Vec<String> = md
        .monomial_basis
        .iter()
        .map(|e| monomial_string(f.vars(), e))
        .collect();
    r.set("mu", mu)
        .set("isolated", md.is_isolated())
        .set("smooth", md.smooth)
        .set("milnor_basis", strings(&basis));
    if let Some(b) = cymf::determinacy_bound(md) {
        r.set("determinacy", b);
    }
}

fn milnor_cmd(input: &str, vars: Option<&[String]>) -> Result<Report, Error> {
    let mut r = Report::new("milnor");
    let f = germ(input, vars, &mut r)?;
    let md = milnor_number(&f)?;
    r.set("polynomial", f.to_string());
    set_milnor(&mut r, &f, &md);
    r.line(format!("f = {f}"));
    if md.smooth {
        r.line("The origin is not a singular point of f = 0.");
    }
    r.line(format!("mu = {}", md.mu_string()));
    if md.is_isolated() && !md.smooth {
        let basis: Vec<String> = md
            .monomial_basis
            .iter()
            .map(|e| monomial_string(f.vars(), e))
            .collect();
        r.line(format!("Milnor algebra basis: {}", basis.join(", ")));
    }
    Ok(r)
}

fn parse_extra(arg: &str) -> Result<ExtraBlowUp, Error> {
    let bad = || Error::Input(format!("--extra expects <divisor>:<t>, got {arg:?}"));
    let (d, t) = arg.split_once(':').ok_or_else(bad)?;
    let divisor = d
        .trim()
        .trim_start_matches('E')
        .parse()
        .map_err(|_| bad())?;
    let at = parse_rat(t.trim()).map_err(|_| bad())?;
    Ok(ExtraBlowUp { divisor, at })
}

fn plane_germ(poly: &str, vars: Option<&[String]>) -> Result<Poly, Error> {
    let f = parse_poly(poly, vars)?;
    if f.nvars() != 2 {
        return Err(Error::Unsupported(format!(
            "plane curve germs need 2 variables, got {} ({})",
            f.nvars(),
            f.vars().join(", ")
        )));
    }
    Ok(f)
}

fn set_graph(r: &mut Report, g: &ResolutionGraph) {
    let ds = &g.divisors;
    r.set("divisors", strings(ds.iter().map(|d| d.name())))
        .set("m", ints(ds.iter().map(|d| d.m)))
        .set("p", ints(ds.iter().map(|d| d.p)))
        .set("n", ints(ds.iter().map(|d| d.m as i64 - d.p as i64)))
        .set("k", ints(ds.iter().map(|d| d.jacobian_order)))
        .set("chi", ints(ds.iter().map(|d| g.chi(d.id))))
        .set(
            "self_intersection",
            ints(ds.iter().map(|d| d.self_intersection)),
        )
        .set(
            "edges",
            strings(g.edges.iter().map(|(a, b)| format!("E{a}-E{b}"))),
        )
        .set(
            "strict_branches",
            strings(
                g.strict_branches
                    .iter()
                    .map(|b| format!("E{}:{}", b.divisor, b.points)),
            ),
        )
        .set("a_campo", g.a_campo_sum())
        .set("charts_agree", ds.iter().all(|d| d.charts_agree()))
        .set("snc", g.snc_certificate);
}

fn resolve_cmd(poly: &str, extra: &[String], vars: Option<&[String]>) -> Result<Report, Error> {
    let f = plane_germ(poly, vars)?;
    let options = ResolutionOptions {
        extra: extra
            .iter()
            .map(|s| parse_extra(s))
            .collect::<Result<_, _>>()?,
        ..ResolutionOptions::default()
    };
    let g = embedded_resolution_with(&f, options)?;
    let mut r = Report::new("resolve");
    r.set("polynomial", f.to_string());
    set_graph(&mut r, &g);
    r.line(format!("f = {f}"));
    for d in &g.divisors {
        r.line(format!(
            "{}: m={} p={} n={} k={} chi={} E.E={}",
            d.name(),
            d.m,
            d.p,
            d.m as i64 - d.p as i64,
            d.jacobian_order,
            g.chi(d.id),
            d.self_intersection
        ));
    }
    for (a, b) in &g.edges {
        r.line(format!("E{a} meets E{b}"));
    }
    for b in &g.strict_branches {
        r.line(format!(
            "strict transform meets E{} in {} point(s)",
            b.divisor, b.points
        ));
    }
    r.line(format!("sum m_i chi(E_i) = {}", g.a_campo_sum()));
    Ok(r)
}

fn motive_cmd(poly: &str, vars: Option<&[String]>) -> Result<Report, Error> {
    let f = plane_germ(poly, vars)?;
    let g = embedded_resolution_with(&f, ResolutionOptions::default())?;
    let st = strata(&g);
    let mf = motivic_milnor_fiber(&st);
    let mut r = Report::new("motive");
    r.set("polynomial", f.to_string())
        .set("motive", mf.to_string())
        .set("euler", euler_specialize(&mf))
        .set("unweighted_euler", unweighted_euler(&st))
        .set("strata", strings(st.iter().map(|s| s.name())));
    r.line(format!("f = {f}"));
    for s in &st {
        r.line(format!(
            "stratum {}: chi={} m={}{}",
            s.name(),
            s.chi,
            s.m,
            if s.over_origin {
                ""
            } else {
                " (off the origin)"
            }
        ));
    }
    r.line(format!("S_f = {mf}"));
    r.line(format!("chi(S_f) = {}", euler_specialize(&mf)));
    Ok(r)
}

fn zeta_cmd(poly: &str, vars: Option<&[String]>) -> Result<Report, Error> {
    let f = plane_germ(poly, vars)?;
    let g = embedded_resolution_with(&f, ResolutionOptions::default())?;
    let z = monodromy_zeta(&g);
    let mut r = Report::new("zeta");
    r.set("polynomial", f.to_string())
        .set("zeta", z.to_string())
        .set("reduced", z.reduced_string())
        .set("degree", z.degree())
        .set(
            "factors",
            strings(z.factors.iter().map(|(m, e)| format!("{m}:{e}"))),
        );
    r.line(format!("f = {f}"));
    r.line(format!("zeta(t) = {z}"));
    r.line(format!("        = {}", z.reduced_string()));
    r.line(format!("degree {}", z.degree()));
    Ok(r)
}

fn set_behrend(r: &mut Report, b: &BehrendReport) {
    r.set("mu", b.mu)
        .set("smooth", b.smooth)
        .set("nu", b.value())
        .set("chi_f0", b.values[0].chi_f0)
        .set("routes", strings(b.values.iter().map(|v| v.route.name())));
    match b.agreement() {
        Some(a) => r.set("agreement", a),
        None => r.set("agreement", "single-route"),
    };
}

fn behrend_lines(r: &mut Report, b: &BehrendReport) {
    for v in &b.values {
        r.line(format!(
            "{} route: chi(F_0) = {}, nu = (-1)^{} (1 - {}) = {}",
            v.route.name(),
            v.chi_f0,
            v.m,
            if v.chi_f0 < 0 {
                format!("({})", v.chi_f0)
            } else {
                v.chi_f0.to_string()
            },
            v.value
        ));
    }
}

fn behrend_cmd(input: &str, route: Route, vars: Option<&[String]>) -> Result<Report, Error> {
    let mut r = Report::new("behrend");
    let f = germ(input, vars, &mut r)?;
    let b = behrend_value(&f, route)?;
    r.set("polynomial", f.to_string());
    set_behrend(&mut r, &b);
    r.line(format!("f = {f}"));
    r.line(format!("mu = {}", b.mu));
    behrend_lines(&mut r, &b);
    Ok(r)
}

fn pipeline_cmd(file: &Path, route: Route) -> Result<Report, Error> {
    let alg = load(file)?;
    let opts = PipelineOptions {
        route,
        ..PipelineOptions::default()
    };
    let res = pipeline(&alg, &opts)?;
    let h = &res.transferred.cohomology;
    let dims = h.dims();
    let f = &res.potential;
    let mut r = Report::new("pipeline");
    r.set("file", file.display().to_string())
        .set("h_degrees", ints(dims.keys().copied()))
        .set("h_dims", ints(dims.values().map(|&n| n as i64)))
        .set("order", res.transferred.order)
        .set("potential", f.poly().to_string())
        .set("exact_through", f.order());
    set_behrend(&mut r, &res.behrend);
    describe_space(&mut r, alg.structure.space());
    r.line(format!(
        "H = {}",
        h.space
            .names()
            .iter()
            .enumerate()
            .map(|(a, n)| format!("{n} (degree {})", h.space.degree(a)))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    r.line(format!(
        "transferred through arity {}",
        res.transferred.order
    ));
    r.line(format!("f = {}", f.series));
    r.line(format!("mu = {}", res.mu()));
    behrend_lines(&mut r, &res.behrend);
    Ok(r)
}
