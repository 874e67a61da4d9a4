//! The weight systems: Conway, HOMFLYPT, and Kauffman families evaluated
//! through intersection-graph adjacency forms, each cross-checkable against
//! the band-surgery oracle, plus the graph polynomial invariants they
//! factor through and the generic deframing projection.

use crate::combination::Combination;
use crate::diagram::MarkedChordDiagram;
use crate::error::{Error, Result};
use crate::gf2::Gf2SymmetricMatrix;
use crate::graph::{intersection_graph, MarkedGraph};
use crate::poly::{BivariatePolynomial, XPolynomial};
use crate::surgery::boundary_components;

fn adjacency(g: &MarkedGraph) -> Gf2SymmetricMatrix {
    Gf2SymmetricMatrix::from_graph(g)
}

pub fn graph_rank(g: &MarkedGraph) -> usize {
    adjacency(g).rank()
}

pub fn graph_det(g: &MarkedGraph) -> u8 {
    adjacency(g).det()
}

pub fn graph_nullity(g: &MarkedGraph) -> usize {
    adjacency(g).nullity()
}

fn require_unmarked_diagram(d: &MarkedChordDiagram, operation: &'static str) -> Result<()> {
    if d.is_unmarked() {
        Ok(())
    } else {
        Err(Error::MarkedInput { operation })
    }
}

fn require_unmarked_graph(g: &MarkedGraph, operation: &'static str) -> Result<()> {
    if g.is_unmarked() {
        Ok(())
    } else {
        Err(Error::MarkedInput { operation })
    }
}

fn subset_masks(n: usize) -> impl Iterator<Item = u64> {
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    0..=full
}

fn sign(parity: u32) -> i64 {
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// Diagram-level weight systems
// ---------------------------------------------------------------------------

/// Conway weight: the determinant of the intersection graph's adjacency
/// form over GF(2).
pub fn conway(d: &MarkedChordDiagram) -> Result<i64> {
    require_unmarked_diagram(d, "conway")?;
    Ok(graph_det(&intersection_graph(d)) as i64)
}

/// Conway weight by the boundary-count route: 1 exactly when surgering
/// every chord leaves a single circle.
pub fn conway_by_surgery(d: &MarkedChordDiagram) -> Result<i64> {
    require_unmarked_diagram(d, "conway")?;
    Ok((boundary_components(d) == 1) as i64)
}

/// Framed HOMFLYPT weight: `a^k b^{k - rank}`.
pub fn homfly(d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
    require_unmarked_diagram(d, "homfly")?;
    let k = d.degree();
    let rank = graph_rank(&intersection_graph(d));
    Ok(BivariatePolynomial::monomial(
        k as u32,
        (k - rank) as i32,
        1,
    ))
}

/// Framed HOMFLYPT weight by the boundary-count route: `a^k b^{c-1}`.
pub fn homfly_by_surgery(d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
    require_unmarked_diagram(d, "homfly")?;
    let k = d.degree() as u32;
    let c = boundary_components(d);
    Ok(BivariatePolynomial::monomial(k, c as i32 - 1, 1))
}

/// Unframed HOMFLYPT weight: `(ab)^k` times the deframed rank polynomial
/// of the intersection graph evaluated at `b^{-1}`.
pub fn homfly_deframed(d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
    require_unmarked_diagram(d, "homfly-deframed")?;
    let k = d.degree() as u32;
    Ok(rank_poly_deframed(&intersection_graph(d))?.framed_substitution(k))
}

/// Framed Kauffman weight: `(ab)^k S(Γ(D))(b^{-1})`.
pub fn kauffman(d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
    require_unmarked_diagram(d, "kauffman")?;
    let k = d.degree() as u32;
    Ok(s_poly(&intersection_graph(d))?.framed_substitution(k))
}

/// Framed Kauffman weight by the mark-expansion oracle: alternating sum of
/// `a^k b^{c-1}` over every way of half-twisting a subset of the bands.
pub fn kauffman_by_surgery(d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
    require_unmarked_diagram(d, "kauffman")?;
    let k = d.degree();
    let mut out = BivariatePolynomial::zero();
    for mask in subset_masks(k) {
        let c = boundary_components(&d.with_marks(mask));
        out.add_term(k as u32, c as i32 - 1, sign(mask.count_ones()));
    }
    Ok(out)
}

/// Unframed Kauffman weight: `(ab)^k Ŝ(Γ(D))(b^{-1})`.
pub fn kauffman_deframed(d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
    require_unmarked_diagram(d, "kauffman-deframed")?;
    let k = d.degree() as u32;
    Ok(s_poly_deframed(&intersection_graph(d))?.framed_substitution(k))
}

/// The marked-diagram Kauffman evaluation `a^k b^{c-1}`: surger every
/// chord (half-twisting the marked ones) and count boundary circles.
pub fn km_value(d: &MarkedChordDiagram) -> BivariatePolynomial {
    let k = d.degree() as u32;
    let c = boundary_components(d);
    BivariatePolynomial::monomial(k, c as i32 - 1, 1)
}

// ---------------------------------------------------------------------------
// Graph-level polynomial invariants
// ---------------------------------------------------------------------------

/// `x^rank` of the (marked) adjacency form.
pub fn rank_poly(g: &MarkedGraph) -> XPolynomial {
    XPolynomial::monomial(graph_rank(g) as i32, 1)
}

/// `x^nullity` of the (marked) adjacency form.
pub fn nullity_poly(g: &MarkedGraph) -> XPolynomial {
    XPolynomial::monomial(graph_nullity(g) as i32, 1)
}

/// Deframed rank polynomial: alternating sum of `x^rank` over induced
/// subgraphs, `Σ_J (-1)^{n-|J|} x^{rank(G_J)}`.
pub fn rank_poly_deframed(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "rank_poly_deframed")?;
    let n = g.order();
    let mut out = XPolynomial::zero();
    for mask in subset_masks(n) {
        let rank = graph_rank(&g.induced_subgraph(mask)?);
        out.add_term(rank as i32, sign(n as u32 - mask.count_ones()));
    }
    Ok(out)
}

/// `S(G) = Σ_J (-1)^{|J|} x^{rank(G^J)}` over all ways `G^J` of marking a
/// vertex subset; multiplicative under disjoint union.
pub fn s_poly(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "s_poly")?;
    let mut out = XPolynomial::zero();
    for mask in subset_masks(g.order()) {
        let rank = graph_rank(&g.with_marks(mask));
        out.add_term(rank as i32, sign(mask.count_ones()));
    }
    Ok(out)
}

/// `T(G) = Σ_J (-1)^{|J|} x^{det(G^J)}` — each exponent is 0 or 1.
pub fn t_poly(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "t_poly")?;
    let mut out = XPolynomial::zero();
    for mask in subset_masks(g.order()) {
        let det = graph_det(&g.with_marks(mask));
        out.add_term(det as i32, sign(mask.count_ones()));
    }
    Ok(out)
}

/// `U(G) = Σ_J (-1)^{|J|} x^{nullity(G^J)}`.
pub fn u_poly(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "u_poly")?;
    let mut out = XPolynomial::zero();
    for mask in subset_masks(g.order()) {
        let nullity = graph_nullity(&g.with_marks(mask));
        out.add_term(nullity as i32, sign(mask.count_ones()));
    }
    Ok(out)
}

/// Deframed `S`: `Σ_J (x-1)^{n-|J|} S(G_J)` over induced subgraphs.
pub fn s_poly_deframed(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "s_poly_deframed")?;
    let n = g.order();
    let x_minus_1 = &XPolynomial::x() - &XPolynomial::one();
    let mut out = XPolynomial::zero();
    for mask in subset_masks(n) {
        let s = s_poly(&g.induced_subgraph(mask)?)?;
        out = &out + &(&x_minus_1.pow(n as u32 - mask.count_ones()) * &s);
    }
    Ok(out)
}

/// Deframed `T` in the projection-faithful form: `(x-1) + Σ_{J≠∅} T(G_J)`
/// for a nonempty vertex set, and `x` on the empty graph. The empty-subset
/// contribution of the projection is `x-1`, not `T(∅) = x`; see
/// [`t_poly_subset_sum`] for the plain subset sum, which exceeds this by
/// the constant 1 whenever the graph has vertices.
pub fn t_poly_deframed(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "t_poly_deframed")?;
    let n = g.order();
    if n == 0 {
        return Ok(XPolynomial::x());
    }
    let mut out = &XPolynomial::x() - &XPolynomial::one();
    for mask in subset_masks(n) {
        if mask == 0 {
            continue;
        }
        out = &out + &t_poly(&g.induced_subgraph(mask)?)?;
    }
    Ok(out)
}

/// The plain subset sum `Σ_J T(G_J)` including the `J = ∅` term `T(∅) = x`.
pub fn t_poly_subset_sum(g: &MarkedGraph) -> Result<XPolynomial> {
    require_unmarked_graph(g, "t_poly_subset_sum")?;
    let mut out = XPolynomial::zero();
    for mask in subset_masks(g.order()) {
        out = &out + &t_poly(&g.induced_subgraph(mask)?)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Generic deframing projections
// ---------------------------------------------------------------------------

/// Deframing of a diagram functional: `Σ_J (-1)^{n-|J|} W(Θ^{n-|J|} · D_J)`
/// where `D_J` keeps exactly the chords in `J` and `Θ` is the isolated
/// chord. The universal oracle for every `*_deframed` closed form.
pub fn deframe_diagram<F>(weight: F, d: &MarkedChordDiagram) -> Result<BivariatePolynomial>
where
    F: Fn(&MarkedChordDiagram) -> Result<BivariatePolynomial>,
{
    require_unmarked_diagram(d, "deframe_diagram")?;
    let n = d.degree();
    let mut out = BivariatePolynomial::zero();
    for mask in subset_masks(n) {
        let padding = n as u32 - mask.count_ones();
        let padded =
            MarkedChordDiagram::theta_power(padding as usize).connect_sum(&d.restrict(mask));
        out = &out + &weight(&padded)?.scaled(sign(padding));
    }
    Ok(out)
}

/// Deframing of a graph functional: `Σ_J (-1)^{n-|J|} W(•^{n-|J|} ⊔ G_J)`.
pub fn deframe_graph<F>(weight: F, g: &MarkedGraph) -> Result<XPolynomial>
where
    F: Fn(&MarkedGraph) -> Result<XPolynomial>,
{
    require_unmarked_graph(g, "deframe_graph")?;
    let n = g.order();
    let mut out = XPolynomial::zero();
    for mask in subset_masks(n) {
        let padding = n as u32 - mask.count_ones();
        let padded = MarkedGraph::new(padding as usize).disjoint_union(&g.induced_subgraph(mask)?);
        out = &out + &weight(&padded)?.scaled(sign(padding));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Named functionals
// ---------------------------------------------------------------------------

/// Every evaluator the relation checker and CLI can name. Scalar-valued
/// functionals are embedded as constant polynomials; univariate graph
/// polynomials in `x` are embedded with `x ↦ b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Functional {
    Conway,
    Homfly,
    HomflyDeframed,
    Kauffman,
    KauffmanDeframed,
    Km,
    Rank,
    Det,
    Nullity,
    Components,
    RankDeframed,
    S,
    T,
    U,
    SDeframed,
    TDeframed,
}

impl Functional {
    pub const ALL: [Functional; 16] = [
        Functional::Conway,
        Functional::Homfly,
        Functional::HomflyDeframed,
        Functional::Kauffman,
        Functional::KauffmanDeframed,
        Functional::Km,
        Functional::Rank,
        Functional::Det,
        Functional::Nullity,
        Functional::Components,
        Functional::RankDeframed,
        Functional::S,
        Functional::T,
        Functional::U,
        Functional::SDeframed,
        Functional::TDeframed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Functional::Conway => "conway",
            Functional::Homfly => "homfly",
            Functional::HomflyDeframed => "homfly-deframed",
            Functional::Kauffman => "kauffman",
            Functional::KauffmanDeframed => "kauffman-deframed",
            Functional::Km => "km",
            Functional::Rank => "rank",
            Functional::Det => "det",
            Functional::Nullity => "nullity",
            Functional::Components => "components",
            Functional::RankDeframed => "rank-deframed",
            Functional::S => "s",
            Functional::T => "t",
            Functional::U => "u",
            Functional::SDeframed => "s-deframed",
            Functional::TDeframed => "t-deframed",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Functional::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownFunctional(name.to_string()))
    }

    /// Whether the functional is defined on marked diagrams.
    pub fn accepts_marked(self) -> bool {
        matches!(
            self,
            Functional::Km
                | Functional::Rank
                | Functional::Det
                | Functional::Nullity
                | Functional::Components
        )
    }

    pub fn evaluate(self, d: &MarkedChordDiagram) -> Result<BivariatePolynomial> {
        let graph = || intersection_graph(d);
        let as_b = |p: XPolynomial| p.times_a_pow_as_b(0);
        match self {
            Functional::Conway => Ok(BivariatePolynomial::constant(conway(d)?)),
            Functional::Homfly => homfly(d),
            Functional::HomflyDeframed => homfly_deframed(d),
            Functional::Kauffman => kauffman(d),
            Functional::KauffmanDeframed => kauffman_deframed(d),
            Functional::Km => Ok(km_value(d)),
            Functional::Rank => Ok(as_b(rank_poly(&graph()))),
            Functional::Det => Ok(BivariatePolynomial::constant(graph_det(&graph()) as i64)),
            Functional::Nullity => Ok(as_b(nullity_poly(&graph()))),
            Functional::Components => {
                Ok(BivariatePolynomial::constant(boundary_components(d) as i64))
            }
            Functional::RankDeframed => Ok(as_b(rank_poly_deframed(&graph())?)),
            Functional::S => Ok(as_b(s_poly(&graph())?)),
            Functional::T => Ok(as_b(t_poly(&graph())?)),
            Functional::U => Ok(as_b(u_poly(&graph())?)),
            Functional::SDeframed => Ok(as_b(s_poly_deframed(&graph())?)),
            Functional::TDeframed => Ok(as_b(t_poly_deframed(&graph())?)),
        }
    }

    /// Linear extension to a formal combination of diagrams.
    pub fn evaluate_combination(
        self,
        combination: &Combination<MarkedChordDiagram>,
    ) -> Result<BivariatePolynomial> {
        let mut out = BivariatePolynomial::zero();
        for (d, coeff) in combination.iter() {
            out = &out + &self.evaluate(d)?.scaled(coeff);
        }
        Ok(out)
    }
}

impl std::str::FromStr for Functional {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Functional::parse(s)
    }
}

impl std::fmt::Display for Functional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
