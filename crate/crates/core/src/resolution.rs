//! Embedded resolution of plane-curve germs by point blow-ups in explicit charts.
//!
//! Each blow-up of a point `P` (local coordinates `(u, v)`, `P` at the origin)
//! produces two charts with coordinates `(s, t)`:
//! chart 1 `u = s, v = s·t` with the new divisor `{s = 0}`, and
//! chart 2 `u = s·t, v = t` with the new divisor `{t = 0}`.
//! Exceptional divisors always appear as coordinate axes, so orders along them
//! are variable orders of the pulled-back polynomials.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rat;
use crate::singular::milnor_number;
use crate::univariate;

/// A coordinate chart of the partial resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    /// `f ∘ φ` in the chart coordinates.
    pub total_transform: Poly,
    /// The original variables as polynomials in the chart coordinates (`φ`).
    pub map: [Poly; 2],
    /// `(∂f/∂x) ∘ φ` and `(∂f/∂y) ∘ φ`.
    pub jacobian: [Poly; 2],
    /// Jacobian determinant of `φ`.
    pub det: Poly,
    /// Divisor ids on `{first coordinate = 0}` and `{second coordinate = 0}`.
    pub visible: [Option<usize>; 2],
    /// Substitutions applied since the original coordinates.
    pub history: Vec<String>,
}

impl Chart {
    pub fn initial(f: &Poly) -> Result<Chart> {
        if f.nvars() != 2 {
            return Err(Error::Unsupported(format!(
                "embedded resolution needs 2 variables, got {}",
                f.nvars()
            )));
        }
        Ok(Chart {
            total_transform: f.clone(),
            map: [f.var_like(0), f.var_like(1)],
            jacobian: [f.derivative(0), f.derivative(1)],
            det: f.one_like(),
            visible: [None, None],
            history: Vec::new(),
        })
    }

    pub fn coords(&self) -> [String; 2] {
        let v = self.total_transform.vars();
        [v[0].clone(), v[1].clone()]
    }

    fn apply(&self, images: &[Poly; 2], factor: Poly) -> Chart {
        let sub = |p: &Poly| p.substitute(images).expect("images share one ring");
        Chart {
            total_transform: sub(&self.total_transform),
            map: [sub(&self.map[0]), sub(&self.map[1])],
            jacobian: [sub(&self.jacobian[0]), sub(&self.jacobian[1])],
            det: &sub(&self.det) * &factor,
            visible: self.visible,
            history: self.history.clone(),
        }
    }

    /// Moves `point` to the origin; divisors not through it drop out of view.
    pub fn translate(&self, point: (&Rat, &Rat)) -> Chart {
        if point.0.is_zero() && point.1.is_zero() {
            return self.clone();
        }
        let p = &self.total_transform;
        let [u, v] = self.coords();
        let images = [
            &p.var_like(0) + &p.constant_like(point.0.clone()),
            &p.var_like(1) + &p.constant_like(point.1.clone()),
        ];
        let mut c = self.apply(&images, p.one_like());
        if !point.0.is_zero() {
            c.visible[0] = None;
        }
        if !point.1.is_zero() {
            c.visible[1] = None;
        }
        c.history.push(format!(
            "{u} -> {u} + {}, {v} -> {v} + {}",
            point.0, point.1
        ));
        c
    }

    /// Blows up the origin; `id` labels the new divisor.
    pub fn blow_up_origin(&self, id: usize) -> (Chart, Chart) {
        let ring = Poly::zero(&["s", "t"]);
        let s = ring.var_like(0);
        let t = ring.var_like(1);
        let [u, v] = self.coords();
        let mut c1 = self.apply(&[s.clone(), &s * &t], s.clone());
        c1.visible = [Some(id), self.visible[1]];
        c1.history.push(format!("{u} = s, {v} = s*t"));
        let mut c2 = self.apply(&[&s * &t, t.clone()], t.clone());
        c2.visible = [self.visible[0], Some(id)];
        c2.history.push(format!("{u} = s*t, {v} = t"));
        (c1, c2)
    }
}

/// Blows up `point` of `c`: translation to the origin, then the two standard charts.
pub fn blow_up_point(c: &Chart, point: (&Rat, &Rat), id: usize) -> (Chart, Chart) {
    c.translate(point).blow_up_origin(id)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    /// 1-based, in creation order.
    pub id: usize,
    /// Multiplicity of `f ∘ h` along the divisor.
    pub m: u32,
    /// Order along the divisor of the pulled-back ideal `(∂f/∂x, ∂f/∂y)`.
    pub p: u32,
    /// Order along the divisor of the Jacobian determinant of `h`.
    pub jacobian_order: u32,
    pub self_intersection: i32,
    /// `(m, p)` computed independently in chart 1 and chart 2 of its blow-up.
    pub chart_orders: [(u32, u32); 2],
}

impl Divisor {
    pub fn name(&self) -> String {
        format!("E{}", self.id)
    }

    pub fn charts_agree(&self) -> bool {
        self.chart_orders[0] == self.chart_orders[1]
    }
}

/// A Galois orbit of points where the strict transform meets a divisor transversally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictBranch {
    pub divisor: usize,
    /// Number of geometric points in the orbit.
    pub points: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    pub divisors: Vec<Divisor>,
    /// Pairs `(i, j)`, `i < j`, of divisor ids meeting in a point.
    pub edges: Vec<(usize, usize)>,
    pub strict_branches: Vec<StrictBranch>,
    /// Every terminal point was checked to be simple normal crossings.
    pub snc_certificate: bool,
}

impl ResolutionGraph {
    pub fn divisor(&self, id: usize) -> &Divisor {
        &self.divisors[id - 1]
    }

    /// Points of `E_id` lying on another component.
    pub fn incidences(&self, id: usize) -> u32 {
        let e = self
            .edges
            .iter()
            .filter(|(a, b)| *a == id || *b == id)
            .count() as u32;
        let s: u32 = self
            .strict_branches
            .iter()
            .filter(|b| b.divisor == id)
            .map(|b| b.points)
            .sum();
        e + s
    }

    /// `χ(E_id°) = 2 − #incidences`.
    pub fn chi(&self, id: usize) -> i64 {
        2 - self.incidences(id) as i64
    }

    /// `Σ m_i χ(E_i°)`.
    pub fn a_campo_sum(&self) -> i64 {
        self.divisors
            .iter()
            .map(|d| d.m as i64 * self.chi(d.id))
            .sum()
    }
}

/// An additional blow-up at a point of `E_divisor` that meets no other component.
/// `at` is the second coordinate of the point in chart 1 of that divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraBlowUp {
    pub divisor: usize,
    pub at: Rat,
}

#[derive(Clone, Debug)]
pub struct ResolutionOptions {
    pub max_blowups: usize,
    pub extra: Vec<ExtraBlowUp>,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            max_blowups: 64,
            extra: Vec::new(),
        }
    }
}

struct Resolver {
    divisors: Vec<Divisor>,
    edges: Vec<(usize, usize)>,
    strict: Vec<StrictBranch>,
    options: ResolutionOptions,
    pending: Vec<Chart>,
}

fn min_order(ps: &[Poly], var: usize) -> u32 {
    ps.iter()
        .filter_map(|p| p.order_in(var))
        .min()
        .unwrap_or(u32::MAX)
}

impl Resolver {
    fn new_divisor(&mut self, c: &Chart) -> Result<usize> {
        if self.divisors.len() >= self.options.max_blowups {
            return Err(Error::Resource(format!(
                "more than {} blow-ups needed",
                self.options.max_blowups
            )));
        }
        for id in c.visible.iter().flatten() {
            self.divisors[id - 1].self_intersection -= 1;
        }
        let id = self.divisors.len() + 1;
        self.divisors.push(Divisor {
            id,
            m: 0,
            p: 0,
            jacobian_order: 0,
            self_intersection: -1,
            chart_orders: [(0, 0); 2],
        });
        Ok(id)
    }

    fn process(&mut self, c: Chart, forced: bool) -> Result<()> {
        let f = &c.total_transform;
        let mut strict = f.clone();
        for (axis, d) in c.visible.iter().enumerate() {
            if let Some(id) = d {
                let k = f.order_in(axis).unwrap_or(0);
                if k != self.divisors[id - 1].m {
                    return Err(Error::Internal(format!(
                        "multiplicity of E{id} is {k} in one chart and {} in another",
                        self.divisors[id - 1].m
                    )));
                }
                strict = strict.div_var_power(axis, k).expect("axis power divides");
            }
        }
        let s = strict.order().unwrap_or(0);
        let ndiv = c.visible.iter().flatten().count();
        let transverse = |axis: usize| {
            let mut e = vec![0u32; 2];
            e[1 - axis] = 1;
            !strict.coeff(&e).is_zero()
        };
        let terminal = !forced
            && match (s, ndiv) {
                (0, _) => true,
                (1, 0) => true,
                (1, 1) => transverse(if c.visible[0].is_some() { 0 } else { 1 }),
                _ => false,
            };
        if terminal {
            match (s, c.visible) {
                (0, [Some(a), Some(b)]) => self.edges.push((a.min(b), a.max(b))),
                (1, [Some(a), None]) | (1, [None, Some(a)]) => self.strict.push(StrictBranch {
                    divisor: a,
                    points: 1,
                }),
                _ => {}
            }
            return Ok(());
        }

        let id = self.new_divisor(&c)?;
        let (c1, c2) = c.blow_up_origin(id);
        let m1 = c1.total_transform.order_in(0).unwrap_or(0);
        let m2 = c2.total_transform.order_in(1).unwrap_or(0);
        let p1 = min_order(&c1.jacobian, 0);
        let p2 = min_order(&c2.jacobian, 1);
        {
            let d = &mut self.divisors[id - 1];
            d.m = m1;
            d.p = p1;
            d.jacobian_order = c1.det.order_in(0).unwrap_or(0);
            d.chart_orders = [(m1, p1), (m2, p2)];
        }

        // the new divisor in chart 1 is {s = 0}; its points are the roots of g
        let g_poly = c1
            .total_transform
            .div_var_power(0, m1)
            .expect("divisor power divides")
            .specialize(0, &Rat::zero());
        let g = g_poly.to_univariate(1).expect("univariate after s = 0");
        let low = g.iter().position(|x| !x.is_zero()).unwrap_or(0);
        let g = univariate::trim(g[low..].to_vec());

        self.process(c1.clone(), false)?;
        let mut centres: Vec<Rat> = Vec::new();
        for (factor, mult) in univariate::squarefree_decomposition(&g) {
            let deg = univariate::degree(&factor).unwrap_or(0) as u32;
            if mult == 1 {
                self.strict.push(StrictBranch {
                    divisor: id,
                    points: deg,
                });
                continue;
            }
            let roots = univariate::rational_roots(&factor);
            if roots.len() as u32 != deg {
                return Err(Error::Unsupported(format!(
                    "blow-up centre on E{id} at an irrational point (factor of degree {deg} with multiplicity {mult})"
                )));
            }
            centres.extend(roots);
        }
        centres.sort();
        for r in &centres {
            self.process(c1.translate((&Rat::zero(), r)), false)?;
        }
        for extra in self.options.extra.clone() {
            if extra.divisor != id {
                continue;
            }
            if extra.at.is_zero() || univariate::eval(&g, &extra.at).is_zero() {
                return Err(Error::Input(format!(
                    "extra blow-up point {} on E{id} meets another component",
                    extra.at
                )));
            }
            self.pending.push(c1.translate((&Rat::zero(), &extra.at)));
        }
        self.process(c2, false)
    }
}

/// Resolves the germ of `f` at the origin.
pub fn embedded_resolution(f: &Poly) -> Result<ResolutionGraph> {
    embedded_resolution_with(f, ResolutionOptions::default())
}

pub fn embedded_resolution_with(f: &Poly, options: ResolutionOptions) -> Result<ResolutionGraph> {
    let chart = Chart::initial(f)?;
    if !f.constant_term().is_zero() {
        return Err(Error::Input("f does not vanish at the origin".into()));
    }
    if milnor_number(f)?.mu.is_none() {
        return Err(Error::Input(
            "f must be reduced: the singularity at the origin is not isolated".into(),
        ));
    }
    let mut r = Resolver {
        divisors: Vec::new(),
        edges: Vec::new(),
        strict: Vec::new(),
        options,
        pending: Vec::new(),
    };
    r.process(chart, false)?;
    while let Some(c) = r.pending.pop() {
        r.process(c, true)?;
    }
    let mut edges = r.edges;
    edges.sort_unstable();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Internal("two divisors meet twice".into()));
    }
    Ok(ResolutionGraph {
        divisors: r.divisors,
        edges,
        strict_branches: r.strict,
        snc_certificate: true,
    })
}

/// A component of the total transform: an exceptional divisor or a strict branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    Exceptional(usize),
    /// Index into [`ResolutionGraph::strict_branches`], 1-based.
    Strict(usize),
}

impl Component {
    pub fn name(&self) -> String {
        match self {
            Component::Exceptional(i) => format!("E{i}"),
            Component::Strict(i) => format!("S{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub index: Vec<Component>,
    /// `χ(E_I°)`; for `|I| = 2` the number of geometric points.
    pub chi: i64,
    /// `gcd` of the multiplicities, strict branches counting 1.
    pub m: u32,
    /// Whether the stratum lies in `h⁻¹(0)`.
    pub over_origin: bool,
}

impl Stratum {
    pub fn name(&self) -> String {
        let parts: Vec<String> = self.index.iter().map(Component::name).collect();
        parts.join("+")
    }
}

/// All nonempty strata `E_I°`.
pub fn strata(g: &ResolutionGraph) -> Vec<Stratum> {
    let mut out = Vec::new();
    for d in &g.divisors {
        out.push(Stratum {
            index: vec![Component::Exceptional(d.id)],
            chi: g.chi(d.id),
            m: d.m,
            over_origin: true,
        });
    }
    for (k, _) in g.strict_branches.iter().enumerate() {
        // a punctured branch germ away from the origin
        out.push(Stratum {
            index: vec![Component::Strict(k + 1)],
            chi: 0,
            m: 1,
            over_origin: false,
        });
    }
    for &(a, b) in &g.edges {
        out.push(Stratum {
            index: vec![Component::Exceptional(a), Component::Exceptional(b)],
            chi: 1,
            m: g.divisor(a).m.gcd(&g.divisor(b).m),
            over_origin: true,
        });
    }
    for (k, br) in g.strict_branches.iter().enumerate() {
        out.push(Stratum {
            index: vec![Component::Exceptional(br.divisor), Component::Strict(k + 1)],
            chi: br.points as i64,
            m: 1,
            over_origin: true,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, Some(&["x", "y"])).unwrap()
    }

    fn summary(g: &ResolutionGraph) -> Vec<(u32, u32, i64, i32)> {
        g.divisors
            .iter()
            .map(|d| (d.m, d.p, g.chi(d.id), d.self_intersection))
            .collect()
    }

    #[test]
    fn single_blow_ups() {
        let c = Chart::initial(&p("x*y")).unwrap();
        let (c1, _) = blow_up_point(&c, (&Rat::zero(), &Rat::zero()), 1);
        assert_eq!(c1.total_transform.to_string(), "s^2*t");
        let c = Chart::initial(&p("x^2 + y^3")).unwrap();
        let (_, c2) = c.blow_up_origin(1);
        assert_eq!(c2.total_transform.to_string(), "t^3 + s^2*t^2");
        assert_eq!(c2.total_transform.order_in(1), Some(2));
        let c = Chart::initial(&p("x")).unwrap();
        let (c1, c2) = c.blow_up_origin(1);
        assert_eq!(c1.total_transform.to_string(), "s");
        assert_eq!(c2.total_transform.to_string(), "s*t");
    }

    #[test]
    fn cusp_graph() {
        let g = embedded_resolution(&p("x^2 + y^3")).unwrap();
        assert_eq!(
            summary(&g),
            vec![(2, 1, 1, -3), (3, 2, 1, -2), (6, 3, -1, -1)]
        );
        assert_eq!(g.edges, vec![(1, 3), (2, 3)]);
        assert_eq!(
            g.strict_branches,
            vec![StrictBranch {
                divisor: 3,
                points: 1
            }]
        );
        let k: Vec<u32> = g.divisors.iter().map(|d| d.jacobian_order).collect();
        assert_eq!(k, vec![1, 2, 4]);
        assert!(g.divisors.iter().all(Divisor::charts_agree));
        assert_eq!(g.a_campo_sum(), -1);
    }

    #[test]
    fn node_and_conjugate_node() {
        let g = embedded_resolution(&p("x*y")).unwrap();
        assert_eq!(summary(&g), vec![(2, 1, 0, -1)]);
        assert_eq!(g.strict_branches.len(), 2);
        let g = embedded_resolution(&p("x^2 + y^2")).unwrap();
        assert_eq!(summary(&g), vec![(2, 1, 0, -1)]);
        assert_eq!(
            g.strict_branches,
            vec![StrictBranch {
                divisor: 1,
                points: 2
            }]
        );
    }

    #[test]
    fn smooth_and_refused() {
        assert!(embedded_resolution(&p("x + y^2"))
            .unwrap()
            .divisors
            .is_empty());
        assert!(matches!(
            embedded_resolution(&p("x^2")),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            embedded_resolution(&p("x^2 + 1")),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn cusp_strata() {
        let g = embedded_resolution(&p("x^2 + y^3")).unwrap();
        let st = strata(&g);
        let pts: Vec<(String, i64, u32)> = st
            .iter()
            .filter(|s| s.index.len() == 2)
            .map(|s| (s.name(), s.chi, s.m))
            .collect();
        assert_eq!(
            pts,
            vec![
                ("E1+E3".to_string(), 1, 2),
                ("E2+E3".to_string(), 1, 3),
                ("E3+S1".to_string(), 1, 1)
            ]
        );
    }

    #[test]
    fn extra_blow_up_keeps_a_campo() {
        let opts = ResolutionOptions {
            extra: vec![ExtraBlowUp {
                divisor: 3,
                at: Rat::from_integer(5.into()),
            }],
            ..Default::default()
        };
        let g = embedded_resolution_with(&p("x^2 + y^3"), opts).unwrap();
        assert_eq!(g.divisors.len(), 4);
        assert_eq!(g.divisor(4).m, 6);
        assert_eq!(g.a_campo_sum(), -1);
    }
}
