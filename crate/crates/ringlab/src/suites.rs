//! Batch verification over a whole catalog: the implication graph between
//! properties, closure laws (corners, finite products, matrix descent),
//! quotient lifting, annihilator identities, the `H(s, t, E)` family, the
//! pq-Baer equivalences, and scripted word-algebra reproductions.
//!
//! Every check here reduces to exhaustive scans over rings small enough to
//! table, so a clean run is a proof for those rings — not a sample. Checks
//! that depend on a search bound (word middles, nilpotency powers) say so
//! in their detail string.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::construct::{
    build_str, corner_ring, h_ring, prod_ring, zmod, BuildCaps, BuildError,
};
use crate::ideal::{
    all_ideals, ideal_sum, is_reduced_as_rng, principal_ideal, quotient, set_product,
    DEFAULT_IDEAL_CAP,
};
use crate::predicates::{is_ideal_symmetric, Scanner};
use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::verdict::{PropertyName, PropertyVerdict, Witness};
use crate::wordalg::{check_orthogonality, s1_annihilation_scan, PatternIdeal, S1Matrix};

/// Largest ring the per-ideal sweep in [`quotient_suite`] will accept.
/// Ideal lattices grow fast; above this order the sweep is skipped and the
/// check says so rather than silently thinning out.
pub const QUOTIENT_SWEEP_ORDER_CAP: usize = 64;

/// One named pass/fail outcome inside a suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SuiteCheck {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> SuiteCheck {
        SuiteCheck {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> SuiteCheck {
        SuiteCheck {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }
}

/// A batch of checks under one heading.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub kind: &'static str,
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<SuiteCheck>) -> SuiteReport {
        let passed = checks.iter().filter(|c| c.passed).count();
        SuiteReport {
            schema: crate::report::SCHEMA_VERSION,
            kind: "suite",
            suite: suite.into(),
            passed,
            failed: checks.len() - passed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} passed, {} failed\n",
            self.suite, self.passed, self.failed
        );
        for c in &self.checks {
            let mark = if c.passed { "  ok  " } else { "  FAIL" };
            out.push_str(&format!("{mark} {} — {}\n", c.name, c.detail));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The implication graph.
// ---------------------------------------------------------------------------

/// How much weight an edge carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// A proved implication; a violation means a decider is wrong.
    Anchored,
    /// An open direction run as an experiment; violations are findings,
    /// not failures.
    Experimental,
    /// A deliberately reversed edge kept in the graph so the catalog
    /// demonstrably refutes it; violations are expected.
    InvertedDemo,
}

/// A directed edge `antecedent => consequent`, checked ring by ring.
#[derive(Debug, Clone, Serialize)]
pub struct ImplicationEdge {
    pub antecedent: PropertyName,
    pub consequent: PropertyName,
    pub kind: EdgeKind,
    /// One-line reason the anchored edges are true (or why the others are
    /// in the graph at all).
    pub anchor: &'static str,
}

/// The fixed edge set. Anchored edges are theorems about arbitrary rings
/// specialized to finite ones; every catalog run re-proves them for the
/// rings at hand.
pub fn implication_edges() -> Vec<ImplicationEdge> {
    use EdgeKind::*;
    use PropertyName::*;
    let edge = |antecedent, consequent, kind, anchor| ImplicationEdge {
        antecedent,
        consequent,
        kind,
        anchor,
    };
    vec![
        edge(
            Reduced,
            LeftNReflexive,
            Anchored,
            "zero is the only nilpotent, and 0Rb = bR0 = 0",
        ),
        edge(
            Reduced,
            RightNReflexive,
            Anchored,
            "zero is the only nilpotent, and 0Rb = bR0 = 0",
        ),
        edge(
            Reduced,
            Reversible,
            Anchored,
            "xy = 0 gives (yx)^2 = y(xy)x = 0, and reduced kills yx",
        ),
        edge(
            Reversible,
            LeftNReflexive,
            Anchored,
            "ab = 0 flips to ba = 0 one middle factor at a time, so aRb = 0 flips to bRa = 0",
        ),
        edge(
            Reversible,
            RightNReflexive,
            Anchored,
            "ab = 0 flips to ba = 0 one middle factor at a time, so aRb = 0 flips to bRa = 0",
        ),
        edge(
            Reversible,
            NReversible,
            Anchored,
            "restriction of the left factor to nilpotents",
        ),
        edge(
            Reflexive,
            LeftNReflexive,
            Anchored,
            "restriction of the left factor to nilpotents",
        ),
        edge(
            Reflexive,
            RightNReflexive,
            Anchored,
            "restriction of the flipped factor to nilpotents",
        ),
        edge(
            NReversible,
            NilSemicommutative,
            Anchored,
            "ab = 0 with both factors nilpotent reverses, and then every arb factors through it",
        ),
        edge(
            NReversible,
            LeftNReflexive,
            Anchored,
            "aRb = 0 with a nilpotent reverses productwise",
        ),
        edge(
            NReversible,
            RightNReflexive,
            Anchored,
            "bRa = 0 with a nilpotent reverses productwise",
        ),
        edge(
            RightNReflexive,
            SlEqualsB,
            Anchored,
            "for left semicentral e each er(1-e) squares to zero, and flipping its vanishing \
             sandwich forces e central",
        ),
        edge(
            LeftNReflexive,
            SrEqualsB,
            Anchored,
            "for right semicentral e each (1-e)re squares to zero, and flipping its vanishing \
             sandwich forces e central",
        ),
        edge(
            LeftNReflexive,
            LeftNRightIdempotentReflexive,
            Anchored,
            "restriction of the right factor to idempotents",
        ),
        edge(
            RightNReflexive,
            RightNLeftIdempotentReflexive,
            Anchored,
            "restriction of the flipped factor to idempotents",
        ),
        edge(
            Semicommutative,
            NilSemicommutative,
            Anchored,
            "restriction to nilpotent pairs",
        ),
        edge(
            Reflexive,
            Rip,
            Anchored,
            "restriction to idempotent pairs",
        ),
        edge(
            Reflexive,
            WeaklyReflexive,
            Anchored,
            "bRa = 0 consists of nilpotents with room to spare",
        ),
        edge(
            NReflexive,
            TwoPrimal,
            Experimental,
            "open in general: must the nilpotents of such a ring form an ideal? the catalog votes",
        ),
        edge(
            LeftNRightIdempotentReflexive,
            LeftNReflexive,
            InvertedDemo,
            "converse of the idempotent restriction, kept so the catalog refutes it",
        ),
    ]
}

/// A ring where the antecedent holds and the consequent does not.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeViolation {
    pub ring: String,
    /// The witness that fails the consequent on that ring.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// One edge after a catalog run.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeOutcome {
    pub antecedent: PropertyName,
    pub consequent: PropertyName,
    pub kind: EdgeKind,
    pub anchor: &'static str,
    pub holds: bool,
    pub violations: Vec<EdgeViolation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImplicationsReport {
    pub schema: u32,
    pub kind: &'static str,
    pub rings: Vec<String>,
    pub edges: Vec<EdgeOutcome>,
}

impl ImplicationsReport {
    /// True when no anchored edge has a violation. Experimental and
    /// inverted edges report what they found without affecting this.
    pub fn anchored_clean(&self) -> bool {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Anchored)
            .all(|e| e.holds)
    }

    pub fn edge(&self, antecedent: PropertyName, consequent: PropertyName) -> Option<&EdgeOutcome> {
        self.edges
            .iter()
            .find(|e| e.antecedent == antecedent && e.consequent == consequent)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("implication reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("implication edges over {} rings\n", self.rings.len());
        for e in &self.edges {
            let tag = match e.kind {
                EdgeKind::Anchored => "anchored",
                EdgeKind::Experimental => "experimental",
                EdgeKind::InvertedDemo => "inverted-demo",
            };
            if e.holds {
                out.push_str(&format!(
                    "  [{tag}] {} => {}: holds\n",
                    e.antecedent, e.consequent
                ));
            } else {
                let names: Vec<&str> = e.violations.iter().map(|v| v.ring.as_str()).collect();
                out.push_str(&format!(
                    "  [{tag}] {} => {}: {} violation(s): {}\n",
                    e.antecedent,
                    e.consequent,
                    e.violations.len(),
                    names.join(", ")
                ));
            }
        }
        out
    }
}

fn verdict_of(verdicts: &[PropertyVerdict], p: PropertyName) -> &PropertyVerdict {
    let i = PropertyName::ALL
        .iter()
        .position(|&q| q == p)
        .expect("every property is in ALL");
    &verdicts[i]
}

/// Decide every property on every ring, then grade each edge. Rings are
/// processed in parallel; edge order and violation order follow the input.
pub fn run_implications(rings: &[(String, FiniteRing)]) -> ImplicationsReport {
    let decided: Vec<(String, Vec<PropertyVerdict>)> = rings
        .par_iter()
        .map(|(name, r)| (name.clone(), crate::predicates::decide_all(r)))
        .collect();

    let edges = implication_edges()
        .into_iter()
        .map(|e| {
            let violations: Vec<EdgeViolation> = decided
                .iter()
                .filter_map(|(name, verdicts)| {
                    let ante = verdict_of(verdicts, e.antecedent);
                    let cons = verdict_of(verdicts, e.consequent);
                    if ante.holds && !cons.holds {
                        Some(EdgeViolation {
                            ring: name.clone(),
                            witness: cons.witness.clone(),
                        })
                    } else {
                        None
                    }
                })
                .collect();
            EdgeOutcome {
                antecedent: e.antecedent,
                consequent: e.consequent,
                kind: e.kind,
                anchor: e.anchor,
                holds: violations.is_empty(),
                violations,
            }
        })
        .collect();

    ImplicationsReport {
        schema: crate::report::SCHEMA_VERSION,
        kind: "implications",
        rings: decided.into_iter().map(|(n, _)| n).collect(),
        edges,
    }
}

// ---------------------------------------------------------------------------
// Annihilator and ideal characterizations.
// ---------------------------------------------------------------------------

/// `r(aR) = l(Ra)` for every nilpotent `a` iff the ring is N-reflexive,
/// computed through independent code paths per ring.
pub fn annihilator_suite(rings: &[(String, FiniteRing)]) -> Vec<SuiteCheck> {
    rings
        .par_iter()
        .map(|(name, r)| {
            let v = Scanner::new(r).check_annihilator_characterization();
            let check_name = format!("annihilator_characterization({name})");
            if v.holds {
                SuiteCheck::pass(check_name, "annihilator sets agree with the direct scan")
            } else {
                SuiteCheck::fail(check_name, format!("disagreement: {:?}", v.witness))
            }
        })
        .collect()
}

/// The elementwise, principal-ideal, and full-ideal renderings of left
/// N-reflexivity agree on every ring.
pub fn ideal_characterization_suite(
    rings: &[(String, FiniteRing)],
    ideal_cap: usize,
) -> Vec<SuiteCheck> {
    rings
        .par_iter()
        .map(|(name, r)| {
            let check_name = format!("ideal_characterization({name})");
            match Scanner::new(r).check_ideal_characterization(ideal_cap) {
                Ok(v) if v.holds => {
                    SuiteCheck::pass(check_name, "all three renderings agree")
                }
                Ok(v) => SuiteCheck::fail(check_name, format!("disagreement: {:?}", v.witness)),
                Err(e) => SuiteCheck::fail(check_name, format!("ideal sweep failed: {e}")),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Closure laws: corners, products, matrix descent.
// ---------------------------------------------------------------------------

/// Each one-sided N-reflexivity passes from a ring to every corner `eRe`.
/// Rings failing both sides contribute vacuously (every idempotent still
/// has to produce a valid corner ring).
pub fn corner_suite(rings: &[(String, FiniteRing)], caps: &BuildCaps) -> Vec<SuiteCheck> {
    rings
        .par_iter()
        .map(|(name, r)| {
            let check_name = format!("corner_closure({name})");
            let scan = Scanner::new(r);
            let left = scan.is_left_n_reflexive().holds;
            let right = scan.is_right_n_reflexive().holds;
            let idems = r.idempotents().to_vec();
            for &e in &idems {
                let corner = match corner_ring(r, e as u64, caps) {
                    Ok(c) => c,
                    Err(err) => {
                        return SuiteCheck::fail(
                            check_name,
                            format!("corner at {} did not build: {err}", r.elem_name(e)),
                        )
                    }
                };
                let cscan = Scanner::new(&corner);
                if left && !cscan.is_left_n_reflexive().holds {
                    return SuiteCheck::fail(
                        check_name,
                        format!(
                            "left N-reflexivity lost in the corner at e = {}",
                            r.elem_name(e)
                        ),
                    );
                }
                if right && !cscan.is_right_n_reflexive().holds {
                    return SuiteCheck::fail(
                        check_name,
                        format!(
                            "right N-reflexivity lost in the corner at e = {}",
                            r.elem_name(e)
                        ),
                    );
                }
            }
            let sides = match (left, right) {
                (true, true) => "both sides descend",
                (true, false) => "left side descends; right is vacuous",
                (false, true) => "right side descends; left is vacuous",
                (false, false) => "vacuous (parent fails both sides)",
            };
            SuiteCheck::pass(
                check_name,
                format!("{} idempotents; {}", idems.len(), sides),
            )
        })
        .collect()
}

/// The default sample for [`product_suite`]: commutative rings with and
/// without nilpotents plus the three standard noncommutative shapes.
pub const PRODUCT_SAMPLE: [&str; 5] = ["Z4", "Z6", "M2_Z2", "U2_Z2", "D3_Z2"];

/// `A x B` is left (right) N-reflexive exactly when both factors are,
/// checked on every unordered pair from the sample, diagonal included.
pub fn product_suite(
    rings: &[(String, FiniteRing)],
    sample: &[&str],
    caps: &BuildCaps,
) -> Vec<SuiteCheck> {
    let mut picked = Vec::new();
    for want in sample {
        match rings.iter().find(|(n, _)| n == want) {
            Some((n, r)) => picked.push((n.clone(), r)),
            None => {
                return vec![SuiteCheck::fail(
                    format!("product_law({want})"),
                    "sample ring missing from the catalog",
                )]
            }
        }
    }
    let sides: Vec<(String, bool, bool)> = picked
        .iter()
        .map(|(n, r)| {
            let scan = Scanner::new(r);
            (
                n.clone(),
                scan.is_left_n_reflexive().holds,
                scan.is_right_n_reflexive().holds,
            )
        })
        .collect();

    let mut pairs = Vec::new();
    for i in 0..picked.len() {
        for j in i..picked.len() {
            pairs.push((i, j));
        }
    }
    pairs
        .into_par_iter()
        .map(|(i, j)| {
            let (ref an, a) = picked[i];
            let (ref bn, b) = picked[j];
            let check_name = format!("product_law({an} x {bn})");
            let p = match prod_ring(a, b, caps) {
                Ok(p) => p,
                Err(err) => return SuiteCheck::fail(check_name, format!("did not build: {err}")),
            };
            let pscan = Scanner::new(&p);
            let want_left = sides[i].1 && sides[j].1;
            let want_right = sides[i].2 && sides[j].2;
            let got_left = pscan.is_left_n_reflexive().holds;
            let got_right = pscan.is_right_n_reflexive().holds;
            if got_left != want_left {
                SuiteCheck::fail(
                    check_name,
                    format!("left: product says {got_left}, components say {want_left}"),
                )
            } else if got_right != want_right {
                SuiteCheck::fail(
                    check_name,
                    format!("right: product says {got_right}, components say {want_right}"),
                )
            } else {
                SuiteCheck::pass(
                    check_name,
                    format!("order {}; left {got_left}, right {got_right}, matching components",
                        p.order()),
                )
            }
        })
        .collect()
}

/// One-sided N-reflexivity descends from `M_2(E)` to `E`. (The converse
/// is false in general, so only descent is asserted.)
pub fn matrix_descent_suite(caps: &BuildCaps) -> Vec<SuiteCheck> {
    ["Zmod(2)", "Zmod(4)"]
        .into_par_iter()
        .map(|base_src| {
            let check_name = format!("matrix_descent(M(2, {base_src}))");
            let base = match build_str(base_src, caps) {
                Ok(r) => r,
                Err(e) => return SuiteCheck::fail(check_name, format!("base: {e}")),
            };
            let m = match build_str(&format!("M(2, {base_src})"), caps) {
                Ok(r) => r,
                Err(e) => return SuiteCheck::fail(check_name, format!("matrix ring: {e}")),
            };
            let mscan = Scanner::new(&m);
            let bscan = Scanner::new(&base);
            let m_left = mscan.is_left_n_reflexive().holds;
            let m_right = mscan.is_right_n_reflexive().holds;
            if m_left && !bscan.is_left_n_reflexive().holds {
                return SuiteCheck::fail(
                    check_name,
                    "matrix ring is left N-reflexive but the base is not",
                );
            }
            if m_right && !bscan.is_right_n_reflexive().holds {
                return SuiteCheck::fail(
                    check_name,
                    "matrix ring is right N-reflexive but the base is not",
                );
            }
            SuiteCheck::pass(
                check_name,
                format!(
                    "order {}; matrix left {m_left}, right {m_right}; descent holds",
                    m.order()
                ),
            )
        })
        .collect()
}

/// In an N-reflexive ring, `aRe = 0` with `a` nilpotent and `e` idempotent
/// forces `ea = 0`.
pub fn idempotent_annihilation_suite(rings: &[(String, FiniteRing)]) -> Vec<SuiteCheck> {
    rings
        .par_iter()
        .map(|(name, r)| {
            let check_name = format!("idempotent_annihilation({name})");
            let scan = Scanner::new(r);
            if !scan.is_n_reflexive().holds {
                return SuiteCheck::pass(check_name, "not N-reflexive; vacuous");
            }
            let idems = r.idempotents();
            let mut pairs = 0usize;
            for a in scan.nilpotents().iter() {
                for e in idems.iter() {
                    if r.sandwich_zero(a, e) {
                        pairs += 1;
                        if r.mul(e, a) != r.zero() {
                            return SuiteCheck::fail(
                                check_name,
                                format!(
                                    "a = {}, e = {}: aRe = 0 but ea = {}",
                                    r.elem_name(a),
                                    r.elem_name(e),
                                    r.elem_name(r.mul(e, a))
                                ),
                            );
                        }
                    }
                }
            }
            SuiteCheck::pass(
                check_name,
                format!("{pairs} vanishing (nilpotent, idempotent) sandwiches, all with ea = 0"),
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Quotient lifting.
// ---------------------------------------------------------------------------

/// Walk every two-sided ideal `I` of every ring up to
/// [`QUOTIENT_SWEEP_ORDER_CAP`] elements and check the two lifting laws:
/// an ideal-symmetric `I` makes `R/I` N-reflexive, and a reduced-as-rng
/// `I` under a left N-reflexive `R/I` makes `R` left N-reflexive (and the
/// right-handed mirror).
pub fn quotient_suite(rings: &[(String, FiniteRing)], ideal_cap: usize) -> Vec<SuiteCheck> {
    rings
        .par_iter()
        .map(|(name, r)| {
            let check_name = format!("quotient_lifting({name})");
            if r.order() > QUOTIENT_SWEEP_ORDER_CAP {
                return SuiteCheck::pass(
                    check_name,
                    format!(
                        "order {} exceeds the sweep budget of {QUOTIENT_SWEEP_ORDER_CAP}; skipped",
                        r.order()
                    ),
                );
            }
            let ideals = match all_ideals(r, ideal_cap) {
                Ok(v) => v,
                Err(e) => {
                    return SuiteCheck::fail(check_name, format!("ideal sweep failed: {e}"))
                }
            };
            let scan = Scanner::new(r);
            let ring_left = scan.is_left_n_reflexive().holds;
            let ring_right = scan.is_right_n_reflexive().holds;
            let mut symmetric = 0usize;
            let mut reduced = 0usize;
            for ideal in &ideals {
                let q = match quotient(r, ideal) {
                    Ok(q) => q,
                    Err(e) => {
                        return SuiteCheck::fail(
                            check_name,
                            format!("quotient by {} failed: {e}", ideal.brief()),
                        )
                    }
                };
                let qscan = Scanner::new(&q);
                if is_ideal_symmetric(r, ideal).holds {
                    symmetric += 1;
                    if !qscan.is_n_reflexive().holds {
                        return SuiteCheck::fail(
                            check_name,
                            format!(
                                "I = {} is ideal-symmetric but R/I is not N-reflexive",
                                ideal.brief()
                            ),
                        );
                    }
                }
                if is_reduced_as_rng(r, ideal) {
                    reduced += 1;
                    if qscan.is_left_n_reflexive().holds && !ring_left {
                        return SuiteCheck::fail(
                            check_name,
                            format!(
                                "I = {} is reduced and R/I is left N-reflexive, but R is not",
                                ideal.brief()
                            ),
                        );
                    }
                    if qscan.is_right_n_reflexive().holds && !ring_right {
                        return SuiteCheck::fail(
                            check_name,
                            format!(
                                "I = {} is reduced and R/I is right N-reflexive, but R is not",
                                ideal.brief()
                            ),
                        );
                    }
                }
            }
            SuiteCheck::pass(
                check_name,
                format!(
                    "{} ideals: {symmetric} ideal-symmetric, {reduced} reduced as rngs; both \
                     lifting laws hold",
                    ideals.len()
                ),
            )
        })
        .collect()
}

/// The 3x3 upper triangular ring over `Z_2` with its strictly upper
/// triangular ideal: the quotient is N-reflexive and the ideal is nil
/// (so trivially N-reflexive as a rng), yet the ring itself is not —
/// the reduced hypothesis in the lifting law is load-bearing.
pub fn strict_upper_counterexample_suite(caps: &BuildCaps) -> Vec<SuiteCheck> {
    let mut checks = Vec::new();
    let r = match build_str("D(3, Zmod(2))", caps) {
        Ok(r) => r,
        Err(e) => {
            return vec![SuiteCheck::fail(
                "strict_upper_ideal",
                format!("ring did not build: {e}"),
            )]
        }
    };
    // e12 and e23 together generate the full strictly upper triangle;
    // e13 alone would not.
    let i = ideal_sum(
        &r,
        &principal_ideal(&r, 4),
        &principal_ideal(&r, 1),
    );

    let p2 = set_product(&r, i.members(), i.members());
    let p3 = set_product(&r, &p2, i.members());
    let zero_only = ElementSet::from_iter(r.order(), [r.zero()]);
    checks.push(if i.len() == 8 && p3 == zero_only {
        SuiteCheck::pass(
            "strict_upper_ideal_is_nil",
            format!("|I| = {}, I^3 = 0: every member is nilpotent", i.len()),
        )
    } else {
        SuiteCheck::fail(
            "strict_upper_ideal_is_nil",
            format!("|I| = {}, I^3 has {} members", i.len(), p3.len()),
        )
    });

    checks.push(if is_reduced_as_rng(&r, &i) {
        SuiteCheck::fail(
            "strict_upper_ideal_not_reduced",
            "I claims to be reduced as a rng",
        )
    } else {
        SuiteCheck::pass(
            "strict_upper_ideal_not_reduced",
            "I has a nonzero square-zero member, so it is not reduced as a rng",
        )
    });

    match quotient(&r, &i) {
        Ok(q) => {
            let qscan = Scanner::new(&q);
            let good = q.order() == 2 && qscan.is_n_reflexive().holds;
            checks.push(if good {
                SuiteCheck::pass(
                    "strict_upper_quotient_n_reflexive",
                    "R/I has order 2 and is N-reflexive",
                )
            } else {
                SuiteCheck::fail(
                    "strict_upper_quotient_n_reflexive",
                    format!("R/I has order {} and fails", q.order()),
                )
            });
        }
        Err(e) => checks.push(SuiteCheck::fail(
            "strict_upper_quotient_n_reflexive",
            format!("quotient failed: {e}"),
        )),
    }

    let scan = Scanner::new(&r);
    checks.push(if scan.is_n_reflexive().holds {
        SuiteCheck::fail(
            "strict_upper_ambient_not_n_reflexive",
            "the ambient ring claims to be N-reflexive",
        )
    } else {
        SuiteCheck::pass(
            "strict_upper_ambient_not_n_reflexive",
            "the ambient ring fails, so neither a nil ideal nor a good quotient lifts on its own",
        )
    });
    checks
}

// ---------------------------------------------------------------------------
// The H(s, t, E) family.
// ---------------------------------------------------------------------------

/// Digits `(c, e, f)` of an `H(s, t, E)` element, most significant first.
fn h_digits(index: Elem, base_order: usize) -> (Elem, Elem, Elem) {
    let i = index as usize;
    let c = i / (base_order * base_order);
    let e = (i / base_order) % base_order;
    let f = i % base_order;
    (c as Elem, e as Elem, f as Elem)
}

/// Exhaustive checks on `H(s, t, E)`:
///
/// * an element is nilpotent exactly when its three diagonal entries
///   `s*c + t*e + f`, `t*e + f`, `f` are nilpotent in `E` — over the
///   bases `Z_2`, `Z_3`, `Z_6` and all four `(s, t)` in `{0, 1}^2`;
/// * for reduced bases, the three degenerate shapes `H(0,0)`, `H(1,0)`,
///   `H(0,1)` are N-reflexive without being reduced;
/// * `H(1,1,E)` is reduced exactly when `E` is, sampled over `Z_2`,
///   `Z_4`, `Z_6`.
pub fn h_suite(caps: &BuildCaps) -> Vec<SuiteCheck> {
    let mut jobs: Vec<(u64, u64, u64)> = Vec::new();
    for n in [2u64, 3, 6] {
        for (s, t) in [(0u64, 0u64), (1, 0), (0, 1), (1, 1)] {
            jobs.push((n, s, t));
        }
    }

    let mut checks: Vec<SuiteCheck> = jobs
        .into_par_iter()
        .flat_map(|(n, s, t)| {
            let label = format!("H({s}, {t}, Zmod({n}))");
            let base = match zmod(n, caps) {
                Ok(b) => b,
                Err(e) => {
                    return vec![SuiteCheck::fail(
                        format!("h_nilpotent_split({label})"),
                        format!("base did not build: {e}"),
                    )]
                }
            };
            let h = match h_ring(s, t, &base, caps) {
                Ok(h) => h,
                Err(e) => {
                    return vec![SuiteCheck::fail(
                        format!("h_nilpotent_split({label})"),
                        format!("did not build: {e}"),
                    )]
                }
            };
            let mut out = Vec::new();

            let (se, te) = (s as Elem, t as Elem);
            let mut split_failure = None;
            for idx in h.elements() {
                let (c, e, f) = h_digits(idx, base.order());
                let d = base.add(base.mul(te, e), f);
                let a = base.add(base.mul(se, c), d);
                let expect = base.is_nilpotent(a)
                    && base.is_nilpotent(d)
                    && base.is_nilpotent(f);
                if h.is_nilpotent(idx) != expect {
                    split_failure = Some(idx);
                    break;
                }
            }
            out.push(match split_failure {
                None => SuiteCheck::pass(
                    format!("h_nilpotent_split({label})"),
                    format!(
                        "all {} elements: nilpotent iff the three diagonal entries are",
                        h.order()
                    ),
                ),
                Some(idx) => SuiteCheck::fail(
                    format!("h_nilpotent_split({label})"),
                    format!("disagreement at {}", h.elem_name(idx)),
                ),
            });

            // Z_2, Z_3, Z_6 are all reduced, so the degenerate shapes must
            // come out N-reflexive but not reduced.
            if (s, t) != (1, 1) {
                let scan = Scanner::new(&h);
                let n_refl = scan.is_n_reflexive().holds;
                let reduced = scan.is_reduced().holds;
                out.push(if n_refl && !reduced {
                    SuiteCheck::pass(
                        format!("h_n_reflexive_not_reduced({label})"),
                        "N-reflexive with nonzero nilpotents",
                    )
                } else {
                    SuiteCheck::fail(
                        format!("h_n_reflexive_not_reduced({label})"),
                        format!("N-reflexive: {n_refl}, reduced: {reduced}"),
                    )
                });
            }
            out
        })
        .collect();

    for n in [2u64, 4, 6] {
        let label = format!("H(1, 1, Zmod({n}))");
        let name = format!("h_reduced_iff_base_reduced({label})");
        let base = match zmod(n, caps) {
            Ok(b) => b,
            Err(e) => {
                checks.push(SuiteCheck::fail(name, format!("base did not build: {e}")));
                continue;
            }
        };
        let h = match h_ring(1, 1, &base, caps) {
            Ok(h) => h,
            Err(e) => {
                checks.push(SuiteCheck::fail(name, format!("did not build: {e}")));
                continue;
            }
        };
        let base_reduced = Scanner::new(&base).is_reduced().holds;
        let h_reduced = Scanner::new(&h).is_reduced().holds;
        checks.push(if base_reduced == h_reduced {
            SuiteCheck::pass(
                name,
                format!("both sides say {base_reduced}"),
            )
        } else {
            SuiteCheck::fail(
                name,
                format!("base reduced: {base_reduced}, H reduced: {h_reduced}"),
            )
        });
    }
    checks
}

// ---------------------------------------------------------------------------
// pq-Baer equivalences.
// ---------------------------------------------------------------------------

/// On a right pq-Baer ring, semiprimeness, `S_l = B`, reflexivity, and
/// right N-reflexivity stand or fall together; mirrored on the left with
/// `S_r = B` and left N-reflexivity.
pub fn pq_baer_suite(rings: &[(String, FiniteRing)]) -> Vec<SuiteCheck> {
    rings
        .par_iter()
        .map(|(name, r)| {
            let check_name = format!("pq_baer_equivalences({name})");
            let scan = Scanner::new(r);
            let right_pq = scan.is_right_pq_baer().holds;
            let left_pq = scan.is_left_pq_baer().holds;
            if !right_pq && !left_pq {
                return SuiteCheck::pass(check_name, "not pq-Baer on either side; vacuous");
            }
            let semiprime = scan.is_semiprime().holds;
            let reflexive = scan.is_reflexive().holds;
            let mut notes = Vec::new();
            if right_pq {
                let four = [
                    semiprime,
                    scan.is_sl_equals_b().holds,
                    reflexive,
                    scan.is_right_n_reflexive().holds,
                ];
                if four.iter().any(|&b| b != four[0]) {
                    return SuiteCheck::fail(
                        check_name,
                        format!(
                            "right pq-Baer but (semiprime, Sl=B, reflexive, right N-reflexive) \
                             = {four:?}"
                        ),
                    );
                }
                notes.push(format!("right side all {}", four[0]));
            }
            if left_pq {
                let four = [
                    semiprime,
                    scan.is_sr_equals_b().holds,
                    reflexive,
                    scan.is_left_n_reflexive().holds,
                ];
                if four.iter().any(|&b| b != four[0]) {
                    return SuiteCheck::fail(
                        check_name,
                        format!(
                            "left pq-Baer but (semiprime, Sr=B, reflexive, left N-reflexive) \
                             = {four:?}"
                        ),
                    );
                }
                notes.push(format!("left side all {}", four[0]));
            }
            SuiteCheck::pass(check_name, notes.join("; "))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Word-algebra reproductions.
// ---------------------------------------------------------------------------

const MIDDLE_BOUND: usize = 8;
const POWER_BOUND: usize = 8;

fn fixed_pattern(src: &str) -> PatternIdeal {
    PatternIdeal::parse(src).expect("fixed patterns parse")
}

/// The scripted free-algebra counterexamples, each run with explicit
/// search bounds (recorded in the detail strings). Middles range over all
/// words up to length 8; nilpotency is probed up to the 8th power. On
/// these patterns both limits are far past where the answers stabilize.
pub fn wordalg_suite() -> Vec<SuiteCheck> {
    let mut checks = Vec::new();

    // One forbidden factor yx: xy is nilpotent, annihilates x from the
    // left through every middle, yet x*1*xy survives — so nothing flips.
    {
        let p = fixed_pattern("letters x y; kill yx");
        let x = p.word("x").expect("x is a letter");
        let xy = p.word("xy").expect("xy is a word");
        let nil = p.nilpotency_of_word("xy", POWER_BOUND);
        let forward = check_orthogonality(&xy, &x, MIDDLE_BOUND).expect("same pattern");
        let backward = check_orthogonality(&x, &xy, MIDDLE_BOUND).expect("same pattern");
        let ok = nil && forward.all_zero() && !backward.all_zero();
        let detail = match (&backward.witness, ok) {
            (Some(w), true) => format!(
                "xy nilpotent (powers to {POWER_BOUND}); xy*m*x = 0 for all middles to length \
                 {MIDDLE_BOUND}; x*{}*xy = {} survives",
                w.middle, w.product
            ),
            _ => format!(
                "nil: {nil}, forward all-zero: {}, backward all-zero: {}",
                forward.all_zero(),
                backward.all_zero()
            ),
        };
        checks.push(if ok {
            SuiteCheck::pass("one_relator_left_violation", detail)
        } else {
            SuiteCheck::fail("one_relator_left_violation", detail)
        });
    }

    // Five relators cutting the algebra to six words. The finite quotient
    // over Z_2 separates the idempotent-restricted condition from the full
    // left condition: its only idempotents are 0 and 1.
    {
        let p = fixed_pattern("letters x y; kill xxx yyy xy yxx yyx");
        let expected = ["", "x", "y", "xx", "yx", "yy"];
        let basis = p.finite_basis(MIDDLE_BOUND);
        let basis_ok = basis.as_deref()
            == Some(&expected.map(String::from)[..]);
        checks.push(if basis_ok {
            SuiteCheck::pass(
                "six_word_basis",
                format!("normal words stop at length 2 (cap {MIDDLE_BOUND}): {expected:?}"),
            )
        } else {
            SuiteCheck::fail("six_word_basis", format!("basis came out as {basis:?}"))
        });

        match p.quotient_ring(MIDDLE_BOUND, 256) {
            Ok(q) => {
                let idems = q.idempotents();
                let trivial_idems = idems.to_vec() == vec![q.zero(), q.one()];
                let scan = Scanner::new(&q);
                let weak = scan.is_left_n_right_idempotent_reflexive();
                let full = scan.is_left_n_reflexive();
                let ok = trivial_idems && weak.holds && !full.holds;
                let detail = if ok {
                    let w = full.witness.as_ref().expect("failing verdicts carry witnesses");
                    let parts: Vec<String> = w
                        .parts
                        .iter()
                        .map(|p| format!("{} = {}", p.role, p.display))
                        .collect();
                    format!(
                        "order {}; idempotents are only 0 and 1, so the idempotent-restricted \
                         condition holds, while the full left condition fails at {}",
                        q.order(),
                        parts.join(", ")
                    )
                } else {
                    format!(
                        "order {}; trivial idempotents: {trivial_idems}, restricted: {}, full: {}",
                        q.order(),
                        weak.holds,
                        full.holds
                    )
                };
                checks.push(if ok {
                    SuiteCheck::pass("six_word_quotient_separates_conditions", detail)
                } else {
                    SuiteCheck::fail("six_word_quotient_separates_conditions", detail)
                });
            }
            Err(e) => checks.push(SuiteCheck::fail(
                "six_word_quotient_separates_conditions",
                format!("quotient did not build: {e}"),
            )),
        }
    }

    // A gap rule x..y with x idempotent: yx is nilpotent and x*m*yx always
    // dies, but yx*x = yx survives. No finite basis exists — y* is normal.
    {
        let p = fixed_pattern("letters x y z; gap x y; collapse x");
        let x = p.word("x").expect("x is a letter");
        let yx = p.word("yx").expect("yx is a word");
        let no_basis = p.finite_basis(MIDDLE_BOUND).is_none();
        let idem = p.normal_form("xx").as_deref() == Some("x");
        let nil = p.nilpotency_of_word("yx", POWER_BOUND);
        let forward = check_orthogonality(&x, &yx, MIDDLE_BOUND).expect("same pattern");
        let backward = check_orthogonality(&yx, &x, MIDDLE_BOUND).expect("same pattern");
        let ok = no_basis && idem && nil && forward.all_zero() && !backward.all_zero();
        let detail = if ok {
            let w = backward.witness.as_ref().expect("nonzero scan has a witness");
            format!(
                "no finite basis up to length {MIDDLE_BOUND}; x idempotent, yx nilpotent; \
                 x*m*yx = 0 for all middles to length {MIDDLE_BOUND}; yx*{}*x = {} survives",
                w.middle, w.product
            )
        } else {
            format!(
                "no basis: {no_basis}, x idempotent: {idem}, yx nil: {nil}, forward zero: {}, \
                 backward zero: {}",
                forward.all_zero(),
                backward.all_zero()
            )
        };
        checks.push(if ok {
            SuiteCheck::pass("gap_collapse_right_violation", detail)
        } else {
            SuiteCheck::fail("gap_collapse_right_violation", detail)
        });
    }

    // The gap pair a..b with aa killed, and its 3x3 constant-diagonal
    // matrix form: A = (a, 1, 1) is nilpotent of index 2 over Z_2 and 3
    // over Z_3, A*M*B dies for every monomial matrix M, and B*A does not.
    {
        for (prime, want_index) in [(2u16, 2usize), (3, 3)] {
            let src = format!("letters a b; gap a b; kill aa; prime {prime}");
            let p = fixed_pattern(&src);
            let a = p.word("a").expect("a is a letter");
            let b = p.word("b").expect("b is a letter");

            if prime == 2 {
                let forward = check_orthogonality(&a, &b, MIDDLE_BOUND).expect("same pattern");
                let ba = b.mul(&a);
                let ok = forward.all_zero() && !ba.is_zero();
                checks.push(if ok {
                    SuiteCheck::pass(
                        "gap_pair_one_sided_annihilation",
                        format!(
                            "a*m*b = 0 for all middles to length {MIDDLE_BOUND}; b*a = {ba}"
                        ),
                    )
                } else {
                    SuiteCheck::fail(
                        "gap_pair_one_sided_annihilation",
                        format!("forward zero: {}, ba = {ba}", forward.all_zero()),
                    )
                });
            }

            let one = p.one();
            let zero = p.zero();
            let cap_a = S1Matrix::new(a.clone(), one.clone(), one.clone());
            let cap_b = S1Matrix::new(zero, b.clone(), b);
            match s1_annihilation_scan(&cap_a, &cap_b, 4, POWER_BOUND) {
                Ok(rep) => {
                    let ok = rep.a_nilpotency_index == Some(want_index)
                        && rep.asb_witness.is_none()
                        && !rep.ba_is_zero;
                    let name = format!("gap_pair_matrix_scan(prime {prime})");
                    let detail = if ok {
                        format!(
                            "A^{want_index} = 0; A*M*B = 0 over monomial matrices with entries \
                             to length {}; B*A = {}",
                            rep.middle_bound, rep.ba
                        )
                    } else {
                        format!(
                            "index: {:?}, witness: {:?}, B*A zero: {}",
                            rep.a_nilpotency_index, rep.asb_witness, rep.ba_is_zero
                        )
                    };
                    checks.push(if ok {
                        SuiteCheck::pass(name, detail)
                    } else {
                        SuiteCheck::fail(name, detail)
                    });
                }
                Err(e) => checks.push(SuiteCheck::fail(
                    format!("gap_pair_matrix_scan(prime {prime})"),
                    format!("scan failed: {e}"),
                )),
            }
        }
    }

    checks
}

// ---------------------------------------------------------------------------
// Everything at once.
// ---------------------------------------------------------------------------

/// Build the catalog once and run every suite over it. Fails early only
/// if the catalog itself will not build; individual check failures land
/// in the reports.
pub fn run_all_suites(
    catalog: &Catalog,
    caps: &BuildCaps,
) -> Result<Vec<SuiteReport>, BuildError> {
    let rings = catalog.build_all_strict(caps)?;
    Ok(vec![
        SuiteReport::new("annihilator_characterization", annihilator_suite(&rings)),
        SuiteReport::new(
            "ideal_characterization",
            ideal_characterization_suite(&rings, DEFAULT_IDEAL_CAP),
        ),
        SuiteReport::new("corner_closure", corner_suite(&rings, caps)),
        SuiteReport::new(
            "product_law",
            product_suite(&rings, &PRODUCT_SAMPLE, caps),
        ),
        SuiteReport::new("matrix_descent", matrix_descent_suite(caps)),
        SuiteReport::new(
            "idempotent_annihilation",
            idempotent_annihilation_suite(&rings),
        ),
        SuiteReport::new("quotient_lifting", quotient_suite(&rings, DEFAULT_IDEAL_CAP)),
        SuiteReport::new(
            "strict_upper_counterexample",
            strict_upper_counterexample_suite(caps),
        ),
        SuiteReport::new("h_family", h_suite(caps)),
        SuiteReport::new("pq_baer_equivalences", pq_baer_suite(&rings)),
        SuiteReport::new("word_algebras", wordalg_suite()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn catalog_rings() -> Vec<(String, FiniteRing)> {
        Catalog::default_catalog()
            .build_all_strict(&BuildCaps::default())
            .expect("default catalog builds")
    }

    #[test]
    fn anchored_edges_hold_over_the_default_catalog() {
        let report = run_implications(&catalog_rings());
        for e in &report.edges {
            if e.kind == EdgeKind::Anchored {
                assert!(
                    e.holds,
                    "{} => {} violated by {:?}",
                    e.antecedent,
                    e.consequent,
                    e.violations.iter().map(|v| &v.ring).collect::<Vec<_>>()
                );
            }
        }
        assert!(report.anchored_clean());
    }

    #[test]
    fn the_experimental_edge_is_refuted_by_the_full_matrix_ring() {
        let report = run_implications(&catalog_rings());
        let edge = report
            .edge(PropertyName::NReflexive, PropertyName::TwoPrimal)
            .expect("edge is in the graph");
        assert_eq!(edge.kind, EdgeKind::Experimental);
        assert!(!edge.holds);
        assert!(edge.violations.iter().any(|v| v.ring == "M2_Z2"));
    }

    #[test]
    fn the_inverted_demo_edge_is_refuted_by_the_triangular_ring() {
        let report = run_implications(&catalog_rings());
        let edge = report
            .edge(
                PropertyName::LeftNRightIdempotentReflexive,
                PropertyName::LeftNReflexive,
            )
            .expect("edge is in the graph");
        assert_eq!(edge.kind, EdgeKind::InvertedDemo);
        assert!(!edge.holds);
        assert!(edge.violations.iter().any(|v| v.ring == "D3_Z2"));
    }

    #[test]
    fn annihilator_and_ideal_characterizations_agree_everywhere() {
        let rings = catalog_rings();
        for c in annihilator_suite(&rings) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for c in ideal_characterization_suite(&rings, DEFAULT_IDEAL_CAP) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn corners_products_and_matrix_descent_close() {
        let caps = BuildCaps::default();
        let rings = catalog_rings();
        for c in corner_suite(&rings, &caps) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for c in product_suite(&rings, &PRODUCT_SAMPLE, &caps) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for c in matrix_descent_suite(&caps) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn idempotent_annihilation_follows_n_reflexivity() {
        for c in idempotent_annihilation_suite(&catalog_rings()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn quotient_lifting_holds_and_its_counterexample_reproduces() {
        let caps = BuildCaps::default();
        for c in quotient_suite(&catalog_rings(), DEFAULT_IDEAL_CAP) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for c in strict_upper_counterexample_suite(&caps) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn h_family_checks_pass() {
        for c in h_suite(&BuildCaps::default()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn pq_baer_equivalences_hold() {
        for c in pq_baer_suite(&catalog_rings()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn word_algebra_reproductions_pass() {
        for c in wordalg_suite() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn run_all_suites_is_clean_end_to_end() {
        let reports = run_all_suites(&Catalog::default_catalog(), &BuildCaps::default())
            .expect("catalog builds");
        assert_eq!(reports.len(), 11);
        for rep in &reports {
            assert!(
                rep.all_passed(),
                "suite {} failed:\n{}",
                rep.suite,
                rep.to_text()
            );
        }
    }

    #[test]
    fn suite_reports_serialize_with_counts() {
        let rep = SuiteReport::new(
            "demo",
            vec![
                SuiteCheck::pass("a", "fine"),
                SuiteCheck::fail("b", "broken"),
            ],
        );
        assert_eq!(rep.passed, 1);
        assert_eq!(rep.failed, 1);
        assert!(!rep.all_passed());
        let json = rep.to_json();
        assert!(json.contains("\"suite\": \"demo\""));
        assert!(json.contains("\"kind\": \"suite\""));
        assert!(rep.to_text().contains("FAIL b"));
    }
}
