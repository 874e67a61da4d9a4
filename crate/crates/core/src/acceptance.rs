//! Executable end-to-end checks of every identity the library rests on.
//! Each criterion sweeps an exhaustive small-degree family (plus seeded
//! random families where the identity is about arbitrary inputs) and counts
//! exact-equality failures. The `acceptance` integration suite prints one
//! line per criterion, and the command-line `selftest` runs the same
//! battery.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combination::Combination;
use crate::diagram::MarkedChordDiagram;
use crate::gf2::Gf2SymmetricMatrix;
use crate::graph::{intersection_graph, MarkedGraph};
use crate::poly::{BivariatePolynomial, XPolynomial};
use crate::relations::{
    caravan_normal_form, caravan_realization, check_vanishing, four_term_combination,
    marking_image, slide, slide_sites, RelationKind, RelationSpan, Space, VanishReport,
};
use crate::surgery::boundary_components;
use crate::weights::{
    deframe_diagram, deframe_graph, homfly, homfly_by_surgery, homfly_deframed, kauffman,
    kauffman_by_surgery, kauffman_deframed, km_value, nullity_poly, rank_poly, rank_poly_deframed,
    s_poly, s_poly_deframed, t_poly, t_poly_deframed, t_poly_subset_sum, u_poly, Functional,
};

const MAX_FAILURE_SAMPLES: usize = 8;

/// Result of one acceptance criterion: how many exact checks ran and which
/// (if any) failed.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub number: usize,
    pub name: &'static str,
    pub checks: usize,
    pub failure_count: usize,
    pub failure_samples: Vec<String>,
}

impl CriterionOutcome {
    fn new(number: usize, name: &'static str) -> Self {
        CriterionOutcome {
            number,
            name,
            checks: 0,
            failure_count: 0,
            failure_samples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failure_samples.len() < MAX_FAILURE_SAMPLES {
                self.failure_samples.push(describe());
            }
        }
    }

    fn absorb(&mut self, report: &VanishReport) {
        self.checks += report.total;
        for failure in &report.failures {
            self.failure_count += 1;
            if self.failure_samples.len() < MAX_FAILURE_SAMPLES {
                self.failure_samples.push(format!(
                    "{} is {} on {} (degree {} {})",
                    report.functional, failure.value, failure.relation, report.degree, report.kind
                ));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// One-line summary in the form printed by the acceptance suite.
    pub fn line(&self) -> String {
        if self.passed() {
            format!(
                "criterion {:02} {}: PASS ({} checks)",
                self.number, self.name, self.checks
            )
        } else {
            format!(
                "criterion {:02} {}: FAIL ({} of {} checks failed; first: {})",
                self.number,
                self.name,
                self.failure_count,
                self.checks,
                self.failure_samples
                    .first()
                    .map(String::as_str)
                    .unwrap_or("<none>")
            )
        }
    }
}

fn adjacency_of(d: &MarkedChordDiagram) -> Gf2SymmetricMatrix {
    Gf2SymmetricMatrix::from_graph(&intersection_graph(d))
}

/// Extended slide spans at degrees 0..=4, built once per process and shared
/// by the caravan and marking-image criteria (and the CLI selftest).
fn marked_span(degree: usize) -> &'static RelationSpan {
    static SPANS: OnceLock<Vec<RelationSpan>> = OnceLock::new();
    &SPANS.get_or_init(|| {
        (0..=4)
            .map(|n| RelationSpan::build(n, Space::BMarked).expect("within degree cap"))
            .collect()
    })[degree]
}

/// Boundary count of every unmarked diagram of degree ≤ 6 matches the rank
/// of its adjacency form through `c = k - rank + 1`.
pub fn criterion_01_rank_component_identity() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(1, "rank-component-identity");
    for n in 0..=6 {
        for d in MarkedChordDiagram::enumerate(n) {
            let rank = adjacency_of(&d).rank();
            let c = boundary_components(&d);
            out.check(c == n - rank + 1, || format!("{d}: c={c}, rank={rank}"));
        }
    }
    out
}

/// The same identity for every mark-subset of every canonical diagram of
/// degree ≤ 4, with the marked diagonal included in the form.
pub fn criterion_02_marked_rank_identity() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(2, "marked-rank-identity");
    for n in 0..=4 {
        let full = if n == 0 { 0u64 } else { (1 << n) - 1 };
        for d in MarkedChordDiagram::enumerate(n) {
            for mask in 0..=full {
                let m = d.with_marks(mask);
                let rank = adjacency_of(&m).rank();
                let c = boundary_components(&m);
                out.check(c == n - rank + 1, || format!("{m}: c={c}, rank={rank}"));
                if full == 0 {
                    break;
                }
            }
        }
    }
    out
}

/// The determinant route and the boundary-count route to the Conway weight
/// agree on every diagram of degree ≤ 6.
pub fn criterion_03_conway_two_routes() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(3, "conway-two-routes");
    for n in 0..=6 {
        for d in MarkedChordDiagram::enumerate(n) {
            let det = crate::weights::conway(&d).expect("unmarked");
            let surgery = crate::weights::conway_by_surgery(&d).expect("unmarked");
            out.check(det == surgery, || {
                format!("{d}: det={det}, surgery={surgery}")
            });
        }
    }
    out
}

/// The closed HOMFLYPT form `a^k b^{k-rank}` equals the boundary-count form
/// `a^k b^{c-1}` on every diagram of degree ≤ 6.
pub fn criterion_04_homfly_two_routes() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(4, "homfly-two-routes");
    for n in 0..=6 {
        for d in MarkedChordDiagram::enumerate(n) {
            let closed = homfly(&d).expect("unmarked");
            let surgery = homfly_by_surgery(&d).expect("unmarked");
            out.check(closed == surgery, || {
                format!("{d}: closed={closed}, surgery={surgery}")
            });
        }
    }
    out
}

/// The closed Kauffman form `(ab)^k S(Γ(D))(b^{-1})` equals the alternating
/// mark-expansion oracle (one boundary trace per mark subset) on every
/// diagram of degree ≤ 5.
pub fn criterion_05_kauffman_two_routes() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(5, "kauffman-two-routes");
    for n in 0..=5 {
        for d in MarkedChordDiagram::enumerate(n) {
            let closed = kauffman(&d).expect("unmarked");
            let surgery = kauffman_by_surgery(&d).expect("unmarked");
            out.check(closed == surgery, || {
                format!("{d}: closed={closed}, surgery={surgery}")
            });
        }
    }
    out
}

/// The Conway, HOMFLYPT, and Kauffman weights and every deframed system
/// vanish on all generated four-term combinations of degree ≤ 5, and the
/// determinant-based and deframed systems vanish on every isolated-chord
/// instance of degree ≤ 5.
pub fn criterion_06_relation_vanishing() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(6, "relation-vanishing");
    let four_term = [
        Functional::Conway,
        Functional::Homfly,
        Functional::Kauffman,
        Functional::HomflyDeframed,
        Functional::KauffmanDeframed,
        Functional::RankDeframed,
        Functional::SDeframed,
        Functional::TDeframed,
    ];
    let one_term = [
        Functional::Conway,
        Functional::Det,
        Functional::HomflyDeframed,
        Functional::KauffmanDeframed,
        Functional::RankDeframed,
        Functional::SDeframed,
        Functional::TDeframed,
    ];
    for n in 0..=5 {
        for f in four_term {
            let report = check_vanishing(f, n, RelationKind::FourTerm).expect("unmarked family");
            out.absorb(&report);
        }
        for f in one_term {
            let report = check_vanishing(f, n, RelationKind::OneTerm).expect("unmarked family");
            out.absorb(&report);
        }
    }
    out
}

fn slide_fingerprint(d: &MarkedChordDiagram) -> (usize, u8, bool, usize, BivariatePolynomial) {
    let form = adjacency_of(d);
    (
        form.rank(),
        form.det(),
        form.is_alternating(),
        boundary_components(d),
        km_value(d),
    )
}

/// Rank, determinant, alternating type, boundary count, and the surgery
/// value are preserved by 1000 seeded random slide sequences on random
/// marked diagrams of degree ≤ 6, and by every single slide on every
/// marked diagram of degree ≤ 4.
pub fn criterion_07_slide_invariance() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(7, "slide-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(0x0007);
    for _ in 0..1000 {
        let degree = rng.random_range(2..=6);
        let mut d = MarkedChordDiagram::random_marked(&mut rng, degree);
        let fingerprint = slide_fingerprint(&d);
        let steps = rng.random_range(1..=12);
        for _ in 0..steps {
            let sites = slide_sites(&d);
            if sites.is_empty() {
                break;
            }
            let (a, b) = sites[rng.random_range(0..sites.len())];
            d = slide(&d, a, b).expect("site is valid");
            out.check(slide_fingerprint(&d) == fingerprint, || {
                format!("invariants drifted after sliding to {d}")
            });
        }
    }
    for n in 0..=4 {
        for d in MarkedChordDiagram::enumerate_marked(n) {
            let fingerprint = slide_fingerprint(&d);
            for (a, b) in slide_sites(&d) {
                let slid = slide(&d, a, b).expect("site is valid");
                out.check(slide_fingerprint(&slid) == fingerprint, || {
                    format!("{d}: slide at ({a}, {b}) changed invariants")
                });
            }
        }
    }
    out
}

/// Every marked diagram of degree ≤ 4 differs from the realization of its
/// caravan class by an element of the extended slide span, the class's
/// plain-band count is `k - rank`, and the surgery value of the realization
/// is `a^k b^{n2}`.
pub fn criterion_08_caravan_reduction() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(8, "caravan-reduction");
    for n in 0..=4 {
        let span = marked_span(n);
        for d in MarkedChordDiagram::enumerate_marked(n) {
            let class = caravan_normal_form(&d);
            let realization = caravan_realization(&class);
            let mut difference = Combination::new();
            difference.add_term(d.clone(), 1);
            difference.add_term(realization.clone(), -1);
            match span.contains(&difference) {
                Ok(contained) => out.check(contained, || {
                    format!("{d} is not congruent to its caravan {realization}")
                }),
                Err(e) => out.check(false, || format!("{d}: span lookup failed: {e}")),
            }
            let rank = adjacency_of(&d).rank();
            out.check(class.zeros == n - rank, || {
                format!("{d}: n2={}, k-rank={}", class.zeros, n - rank)
            });
            let expected = BivariatePolynomial::monomial(n as u32, class.zeros as i32, 1);
            let value = km_value(&realization);
            out.check(value == expected, || {
                format!("{realization}: surgery value {value}, expected {expected}")
            });
        }
    }
    out
}

/// The closed deframed forms match the generic subset-sum projection
/// termwise: on every graph of order ≤ 5 for the rank, `S`, and `T`
/// polynomials, and on every diagram of degree ≤ 5 for the HOMFLYPT and
/// Kauffman weights. The plain subset sum of `T` over induced subgraphs
/// exceeds the projection by exactly the constant 1 on every nonempty
/// graph (and agrees on the empty one).
pub fn criterion_09_deframing_consistency() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(9, "deframing-consistency");
    let rank_fn = |g: &MarkedGraph| Ok(rank_poly(g));
    for order in 0..=5 {
        for g in MarkedGraph::enumerate(order) {
            let generic = deframe_graph(rank_fn, &g).expect("unmarked");
            let closed = rank_poly_deframed(&g).expect("unmarked");
            out.check(generic == closed, || {
                format!("rank projection differs on {g:?}")
            });
            let generic = deframe_graph(s_poly, &g).expect("unmarked");
            let closed = s_poly_deframed(&g).expect("unmarked");
            out.check(generic == closed, || {
                format!("S projection differs on {g:?}")
            });
            let generic = deframe_graph(t_poly, &g).expect("unmarked");
            let closed = t_poly_deframed(&g).expect("unmarked");
            out.check(generic == closed, || {
                format!("T projection differs on {g:?}")
            });
            let gap =
                &t_poly_subset_sum(&g).expect("unmarked") - &t_poly_deframed(&g).expect("unmarked");
            let expected = if order == 0 {
                XPolynomial::zero()
            } else {
                XPolynomial::one()
            };
            out.check(gap == expected, || {
                format!("subset-sum gap on {g:?} is {gap}, expected {expected}")
            });
        }
    }
    for n in 0..=5 {
        for d in MarkedChordDiagram::enumerate(n) {
            let generic = deframe_diagram(homfly, &d).expect("unmarked");
            let closed = homfly_deframed(&d).expect("unmarked");
            out.check(generic == closed, || {
                format!("homfly projection differs on {d}")
            });
            let generic = deframe_diagram(kauffman, &d).expect("unmarked");
            let closed = kauffman_deframed(&d).expect("unmarked");
            out.check(generic == closed, || {
                format!("kauffman projection differs on {d}")
            });
        }
    }
    out
}

/// `S` is multiplicative over disjoint union on 500 seeded random pairs of
/// graphs with at most 6 vertices each.
pub fn criterion_10_disjoint_union_multiplicativity() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(10, "disjoint-union-multiplicativity");
    let mut rng = ChaCha8Rng::seed_from_u64(0x0010);
    for _ in 0..500 {
        let order1 = rng.random_range(0..=6);
        let order2 = rng.random_range(0..=6);
        let g1 = MarkedGraph::random(&mut rng, order1);
        let g2 = MarkedGraph::random(&mut rng, order2);
        let product = &s_poly(&g1).expect("unmarked") * &s_poly(&g2).expect("unmarked");
        let joint = s_poly(&g1.disjoint_union(&g2)).expect("unmarked");
        out.check(joint == product, || {
            format!("S not multiplicative on {g1:?} ⊔ {g2:?}")
        });
    }
    out
}

/// The HOMFLYPT weight is `a^k` times the nullity monomial of the
/// intersection graph, and the Kauffman weight is `a^k` times the nullity
/// polynomial `U`, on every diagram of degree ≤ 5.
pub fn criterion_11_nullity_identities() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(11, "nullity-identities");
    for n in 0..=5 {
        for d in MarkedChordDiagram::enumerate(n) {
            let graph = intersection_graph(&d);
            let k = n as u32;
            let homfly_value = homfly(&d).expect("unmarked");
            let via_nullity = nullity_poly(&graph).times_a_pow_as_b(k);
            out.check(homfly_value == via_nullity, || {
                format!("{d}: homfly={homfly_value}, nullity route={via_nullity}")
            });
            let kauffman_value = kauffman(&d).expect("unmarked");
            let via_u = u_poly(&graph).expect("unmarked").times_a_pow_as_b(k);
            out.check(kauffman_value == via_u, || {
                format!("{d}: kauffman={kauffman_value}, U route={via_u}")
            });
        }
    }
    out
}

/// The mark-expansion image of every four-term combination of degree ≤ 4
/// lies in the extended slide span.
pub fn criterion_12_marking_image_span_membership() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(12, "marking-image-span-membership");
    for n in 0..=4 {
        let span = marked_span(n);
        for d in MarkedChordDiagram::enumerate(n) {
            for (a, b) in slide_sites(&d) {
                let combo = four_term_combination(&d, a, b).expect("valid site");
                let image = marking_image(&combo).expect("unmarked");
                match span.contains(&image) {
                    Ok(contained) => out.check(contained, || {
                        format!("image of four-term at ({a}, {b}) of {d} escapes the span")
                    }),
                    Err(e) => out.check(false, || format!("{d}: span lookup failed: {e}")),
                }
            }
        }
    }
    out
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_01_rank_component_identity(),
        criterion_02_marked_rank_identity(),
        criterion_03_conway_two_routes(),
        criterion_04_homfly_two_routes(),
        criterion_05_kauffman_two_routes(),
        criterion_06_relation_vanishing(),
        criterion_07_slide_invariance(),
        criterion_08_caravan_reduction(),
        criterion_09_deframing_consistency(),
        criterion_10_disjoint_union_multiplicativity(),
        criterion_11_nullity_identities(),
        criterion_12_marking_image_span_membership(),
    ]
}
