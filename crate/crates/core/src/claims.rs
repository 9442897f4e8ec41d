//! Registry of checkable statements and the report they produce.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::chern::twist;
use crate::chow::{Fiber, GradedClass};
use crate::cohom::{self, les_solve, CohomTable, Hint, LesOutcome, LesProblem, MapKind, Slot, ABELIAN_SURFACE_STRUCTURE};
use crate::error::{Error, Result};
use crate::exactalg::{rat, resubstitute, ParamPoly};
use crate::geometry::{self, Normality, SplittingType};
use crate::heisenberg::{self, FinAbGroup, DEFAULT_CAP};
use crate::pencil::{self, RankOneLocus};
use crate::stability::{self, Polarization, Stability, SubsheafStatus};

/// The twisted Euler characteristic of `E`, as stated.
pub const CHI_E_EXPECTED: &str = "-6 + 12*a + 34/3*b + 6*b^2 + 41/3*a*b + 2/3*b^3 + 4*a*b^2 + 1/3*a*b^3";

/// Result of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
    pub computed: String,
    pub expected: String,
}

impl Outcome {
    fn compare<T: PartialEq + ToString>(computed: T, expected: T) -> Self {
        Outcome { pass: computed == expected, computed: computed.to_string(), expected: expected.to_string() }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
    pub check: fn() -> Result<Outcome>,
}

impl Claim {
    pub fn run(&self) -> Outcome {
        (self.check)().unwrap_or_else(|e| Outcome {
            pass: false,
            computed: format!("error: {e}"),
            expected: String::new(),
        })
    }
}

/// All claims, sorted by id.
pub fn registry() -> Vec<Claim> {
    let mut claims = vec![
        Claim { id: "eq5", description: "HRR chi(E(a,b)) equals the stated cubic", anchor: "Eq (5)", check: eq5 },
        Claim { id: "hrr-kunneth", description: "HRR chi(O(a,b)) equals the Kunneth alternating sum on [-8,8]^2", anchor: "Introduction", check: hrr_kunneth },
        Claim { id: "intro-h1", description: "h^1(O(a,b)) = -(a+1) C(b+3,3) > 0 for a in [-6,-2], b in [0,5]", anchor: "Introduction", check: intro_h1 },
        Claim { id: "lemma1.3-linear", description: "a linear rank-2 pencil has 2 rank-1 members", anchor: "Lemma 1.3", check: lemma13_linear },
        Claim { id: "lemma1.4", description: "quartic witness: 4 rank-1 members and a moving singular line", anchor: "Lemma 1.4", check: lemma14 },
        Claim { id: "prop2.1", description: "(L1+L3)^2 = 20, K = (Z/10)^2 has no element of order 4", anchor: "Prop 2.1", check: prop21 },
        Claim { id: "prop2.2", description: "sigma, tau generate D8 with central commutator and abelianization (2,2)", anchor: "Prop 2.2", check: prop22 },
        Claim { id: "prop3.1", description: "E is stable for O(1,1) with half-det slope 7", anchor: "Prop 3.1", check: prop31 },
        Claim { id: "lemma3.2", description: "subsheaf oracle on the boundary cases", anchor: "Lemma 3.2", check: lemma32 },
        Claim { id: "remark3.3", description: "stable iff n < 18m on [1,40]^2", anchor: "Remark 3.3", check: remark33 },
        Claim { id: "lemma3.4", description: "h^i(I_X) = (0,0,2,1,0) and h^i(E(-2,-4)) = (0,0,2,...)", anchor: "Lemma 3.4", check: lemma34 },
        Claim { id: "prop4.1", description: "h^0(E_t(-2)) = 1", anchor: "Prop 4.1", check: prop41 },
        Claim { id: "lemma4.2", description: "c2(E_t(-2)) = 2 and p_a = -3", anchor: "Lemma 4.2", check: lemma42 },
        Claim { id: "lemma5.2", description: "Sigma_e -> P3 quadric maps: (e,alpha,beta) in {(0,1,1),(2,1,2)}", anchor: "Lemma 5.2", check: lemma52 },
        Claim { id: "prop5.3-e0", description: "double structure on Sigma_0: L = O(2C0 - 2f), d = 4", anchor: "Prop 5.3", check: prop53_e0 },
        Claim { id: "prop5.3-e2", description: "double structure on Sigma_2: L = O(2C0), d = 4", anchor: "Prop 5.3", check: prop53_e2 },
        Claim { id: "prop5.4", description: "deg L^-1|C0 = 4 is not a subbundle of O+O(2) or O(1)+O(1)", anchor: "Prop 5.4", check: prop54 },
        Claim { id: "prop5.6", description: "(a,b)-normality of Z and the codimension bounds", anchor: "Prop 5.6", check: prop56 },
        Claim { id: "prop6.1a", description: "horizontal generic splitting type (2,2)", anchor: "Prop 6.1(a)", check: prop61a },
        Claim { id: "prop6.1b", description: "vertical generic splitting type (1,1)", anchor: "Prop 6.1(b)", check: prop61b },
        Claim { id: "prop6.2b", description: "transversal jumping line splitting type (4,0)", anchor: "Prop 6.2(b)", check: prop62b },
        Claim { id: "lemma6.5-r1", description: "jumping divisor degree 4, one kernel summand", anchor: "Lemma 6.5", check: || lemma65(1) },
        Claim { id: "lemma6.5-r2", description: "jumping divisor degree 4, two kernel summands", anchor: "Lemma 6.5", check: || lemma65(2) },
        Claim { id: "lemma6.5-r3", description: "jumping divisor degree 4, three kernel summands", anchor: "Lemma 6.5", check: || lemma65(3) },
        Claim { id: "chain-d4", description: "pencil degree from the double structure matches the (4,2) positive instance", anchor: "Prop 5.3(b)", check: chain_d4 },
    ];
    claims.sort_by_key(|c| c.id);
    claims
}

pub fn find(id: &str) -> Result<Claim> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaimId(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub id: String,
    pub status: String,
    pub computed: String,
    pub expected: String,
    pub anchor: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claims: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.claims {
            out.push_str(&format!("{} {} [{}]\n", r.status, r.id, r.anchor));
            out.push_str(&format!("    computed: {}\n    expected: {}\n", r.computed, r.expected));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.summary.pass, self.summary.fail));
        out
    }
}

/// Runs the claims with the given ids (all if empty), in id order. With
/// `timing` off every `elapsed_ms` is 0 so output is reproducible.
pub fn verify(filter: &[String], timing: bool) -> Result<Report> {
    let mut selected: Vec<Claim> = if filter.is_empty() {
        registry()
    } else {
        filter.iter().map(|id| find(id)).collect::<Result<_>>()?
    };
    selected.sort_by_key(|c| c.id);
    selected.dedup_by_key(|c| c.id);
    let mut claims = Vec::with_capacity(selected.len());
    for c in &selected {
        let start = Instant::now();
        let o = c.run();
        let elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
        claims.push(Record {
            id: c.id.to_string(),
            status: if o.pass { "PASS" } else { "FAIL" }.to_string(),
            computed: o.computed,
            expected: o.expected,
            anchor: c.anchor.to_string(),
            elapsed_ms,
        });
    }
    let pass = claims.iter().filter(|r| r.status == "PASS").count();
    let fail = claims.len() - pass;
    Ok(Report { claims, summary: Summary { pass, fail } })
}

fn eq5() -> Result<Outcome> {
    let chi = geometry::chi_e_twisted();
    let expected: ParamPoly = CHI_E_EXPECTED.parse()?;
    let v0 = chi.eval_ints(&[("a", 0), ("b", 0)]);
    let v1 = chi.eval_ints(&[("a", -2), ("b", -4)]);
    Ok(Outcome {
        pass: chi == expected && v0 == ParamPoly::int(-6) && v1 == ParamPoly::int(2),
        computed: format!("{chi}; chi(E) = {v0}; chi(E(-2,-4)) = {v1}"),
        expected: format!("{expected}; chi(E) = -6; chi(E(-2,-4)) = 2"),
    })
}

fn hrr_kunneth() -> Result<Outcome> {
    let mut agree = 0;
    for a in -8..=8 {
        for b in -8..=8 {
            let chi = geometry::chi_line(&ParamPoly::int(a), &ParamPoly::int(b));
            if chi == ParamPoly::int(cohom::line_bundle_table(a, b).euler()) {
                agree += 1;
            }
        }
    }
    Ok(Outcome::compare(format!("{agree}/289 agree"), "289/289 agree".to_string()))
}

fn intro_h1() -> Result<Outcome> {
    let mut good = 0;
    for a in -6..=-2i64 {
        for b in 0..=5i64 {
            let t = cohom::line_bundle_table(a, b);
            let formula = -(a + 1) * num_integer::binomial(b + 3, 3);
            let others_vanish = (0..5).filter(|&i| i != 1).all(|i| t.h(i) == 0);
            if t.h(1) as i64 == formula && formula > 0 && others_vanish {
                good += 1;
            }
        }
    }
    Ok(Outcome::compare(format!("{good}/30 grid points"), "30/30 grid points".to_string()))
}

fn lemma13_linear() -> Result<Outcome> {
    let q = pencil::linear_normal_form(&rat(2), &rat(1), &rat(3));
    let rank = pencil::generic_rank(&q);
    let locus = pencil::rank1_parameter_count(&q)?;
    Ok(Outcome::compare(
        format!("generic rank {rank}, {} rank-1 members", locus.distinct().map_or("all".into(), |d| d.to_string())),
        "generic rank 2, 2 rank-1 members".to_string(),
    ))
}

fn lemma14() -> Result<Outcome> {
    let w = pencil::quartic_witness();
    let locus = pencil::rank1_parameter_count(&w)?;
    let count = match locus {
        RankOneLocus::Points { distinct, .. } => distinct.to_string(),
        RankOneLocus::WholeLine => "all".to_string(),
    };
    let roots_ok = [1, -1, 2, -2].iter().all(|&t| pencil::rank_at(&w, &rat(t), &rat(1)) == Ok(1));
    let (line, moving_const) = pencil::singular_line_family(&w)?;
    let annihilates = line.annihilated_by(&w);
    let (_, fixed_const) = pencil::singular_line_family(&pencil::linear_normal_form(&rat(2), &rat(1), &rat(3)))?;
    Ok(Outcome::compare(
        format!(
            "degree {}, rank {}, {count} rank-1 members (checked pointwise: {roots_ok}), singular line constant: {moving_const} (kernel exact: {annihilates}); linear normal form constant: {fixed_const}",
            w.degree(),
            pencil::generic_rank(&w)
        ),
        "degree 4, rank 2, 4 rank-1 members (checked pointwise: true), singular line constant: false (kernel exact: true); linear normal form constant: true".to_string(),
    ))
}

fn prop21() -> Result<Outcome> {
    let sq = heisenberg::tensor_square(0, 8, 6);
    let k = heisenberg::type_from_square(sq)?;
    let k3 = heisenberg::type_from_square(8)?;
    let no4 = !heisenberg::has_element_of_order(&k, 4)?;
    let has4 = heisenberg::has_element_of_order(&k3, 4)?;
    let k2 = k3.torsion(2);
    Ok(Outcome::compare(
        format!("square {sq}, K = {k}, order 4 absent: {no4}; K(L3) = {k3}, order 4 present: {has4}, 2-torsion {k2}"),
        "square 20, K = (10, 10), order 4 absent: true; K(L3) = (4, 4), order 4 present: true, 2-torsion (2, 2)".to_string(),
    ))
}

fn prop22() -> Result<Outcome> {
    let g = heisenberg::group_closure(&[heisenberg::sigma(), heisenberg::tau()], DEFAULT_CAP)?;
    let rel = heisenberg::relation_check(&g)?;
    let (comm, ab) = heisenberg::commutator_structure(&g)?;
    Ok(Outcome::compare(
        format!("order {}, relations {}, commutator order {comm}, abelianization {ab}", g.order(), rel.all()),
        format!("order 8, relations true, commutator order 2, abelianization {}", FinAbGroup::new(&[2, 2])?),
    ))
}

fn prop31() -> Result<Outcome> {
    let pol = Polarization::new(1, 1)?;
    let verdict = stability::stability_decide(pol);
    let half = stability::slope_dot(1, 2, pol);
    Ok(Outcome::compare(format!("{verdict}, half-det slope {half}"), format!("{}, half-det slope 7", Stability::Stable)))
}

fn lemma32() -> Result<Outcome> {
    let cases = [(0, 7), (0, 8), (2, 2), (3, 2), (4, 2)];
    let computed: Vec<String> = cases.iter().map(|&(p, q)| format!("({p},{q}) {}", stability::subsheaf_status(p, q))).collect();
    let expected = [SubsheafStatus::No, SubsheafStatus::Yes, SubsheafStatus::No, SubsheafStatus::Unknown, SubsheafStatus::Yes];
    let expected: Vec<String> = cases.iter().zip(expected).map(|(&(p, q), s)| format!("({p},{q}) {s}")).collect();
    Ok(Outcome::compare(computed.join(", "), expected.join(", ")))
}

fn remark33() -> Result<Outcome> {
    let mut mismatches = 0;
    for m in 1..=40 {
        for n in 1..=40 {
            let expected = match n.cmp(&(18 * m)) {
                std::cmp::Ordering::Less => Stability::Stable,
                std::cmp::Ordering::Equal => Stability::SemistableNotStable,
                std::cmp::Ordering::Greater => Stability::Unstable,
            };
            if stability::stability_decide(Polarization::new(m, n)?) != expected {
                mismatches += 1;
            }
        }
    }
    Ok(Outcome::compare(format!("{mismatches} mismatches on 1600 polarizations"), "0 mismatches on 1600 polarizations".to_string()))
}

fn lemma34() -> Result<Outcome> {
    let ideal = les_solve(
        &LesProblem::new(
            Slot::Unknown,
            Slot::Known(CohomTable::new(vec![1, 0, 0, 0, 0])),
            Slot::Known(CohomTable::new(ABELIAN_SURFACE_STRUCTURE.to_vec())),
        )
        .with_hint(Hint::new(MapKind::Beta, 0, 1)),
    )?;
    let ideal = ideal.solved().cloned().ok_or(Error::Inconsistent)?;
    // 0 -> O(-2,-4) -> E(-2,-4) -> I_X -> 0
    let twisted = les_solve(&LesProblem::new(
        Slot::Known(cohom::line_bundle_table(-2, -4)),
        Slot::Unknown,
        Slot::Known(ideal.clone()),
    ))?;
    let tables = match twisted {
        LesOutcome::Solved(t) => vec![t],
        LesOutcome::Underdetermined(ts) => ts,
    };
    let low: Vec<Vec<u64>> = tables.iter().map(|t| t.dims()[..3].to_vec()).collect();
    let common = if low.iter().all(|l| l == &low[0]) { format!("{:?}", low[0]) } else { "varies".into() };
    Ok(Outcome::compare(
        format!("h(I_X) = {ideal}, h^0..2(E(-2,-4)) = {common}"),
        "h(I_X) = (0, 0, 2, 1, 0), h^0..2(E(-2,-4)) = [0, 0, 2]".to_string(),
    ))
}

/// `h^i(E_t(-2))` obtained by chasing the two sequences on a horizontal fiber.
pub fn fiber_sections() -> Result<CohomTable> {
    let et = geometry::bundle_e().restrict_fiber(Fiber::Horizontal)?;
    let genus = geometry::zero_locus_genus(&et)?;
    let degree = et.c2().coefficient_of("h^2").constant_value().ok_or(Error::Inconsistent)?;
    let degree: i64 = degree.to_integer().try_into().map_err(|_| Error::Inconsistent)?;
    // O_X(2) on the curve: degree 2 deg X > 2g - 2, so only h^0 survives
    let h0_curve = 2 * degree + 1 - genus;
    if 2 * degree <= 2 * genus - 2 || h0_curve < 0 {
        return Err(Error::Inconsistent);
    }
    let quadrics = cohom::cohom_pn(3, 2)?;
    // a single quadric contains the curve
    let ideal = les_solve(
        &LesProblem::new(
            Slot::Unknown,
            Slot::Known(quadrics.clone()),
            Slot::Known(CohomTable::new(vec![h0_curve as u64, 0, 0, 0])),
        )
        .with_hint(Hint::new(MapKind::Beta, 0, quadrics.h(0) - 1)),
    )?;
    let ideal = ideal.solved().cloned().ok_or(Error::Inconsistent)?;
    // 0 -> O(-2) -> E_t(-2) -> I(2) -> 0
    let out = les_solve(&LesProblem::new(Slot::Known(cohom::cohom_pn(3, -2)?), Slot::Unknown, Slot::Known(ideal)))?;
    out.solved().cloned().ok_or(Error::Inconsistent)
}

fn prop41() -> Result<Outcome> {
    let t = fiber_sections()?;
    Ok(Outcome::compare(format!("h^0(E_t(-2)) = {}", t.h(0)), "h^0(E_t(-2)) = 1".to_string()))
}

fn lemma42() -> Result<Outcome> {
    let et = geometry::bundle_e().restrict_fiber(Fiber::Horizontal)?;
    let h = GradedClass::combination(et.ring(), [(ParamPoly::int(-2), "h")])?;
    let f = twist(&et, &h)?;
    let c2 = f.c2().coefficient_of("h^2");
    let genus = geometry::zero_locus_genus(&f)?;
    Ok(Outcome::compare(format!("c2 = {c2}, p_a = {genus}"), "c2 = 2, p_a = -3".to_string()))
}

fn lemma52() -> Result<Outcome> {
    let small = geometry::classify_embeddings(2)?;
    let large = geometry::classify_embeddings(10)?;
    let show = |v: &[geometry::EmbeddingSolution]| v.iter().map(|s| format!("({},{},{})", s.e, s.alpha, s.beta)).collect::<Vec<_>>().join(" ");
    let computed = if small == large { show(&large) } else { format!("{} vs {}", show(&small), show(&large)) };
    Ok(Outcome::compare(computed, "(0,1,1) (2,1,2)".to_string()))
}

fn prop53(e: i64, expected: (i64, i64, i64)) -> Result<Outcome> {
    let s = geometry::double_structure_solve(e)?;
    let id = geometry::double_structure_identity(e)?;
    let a: BTreeMap<String, i64> = [("x", s.x), ("y", s.y), ("d", s.d)].iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let zero = resubstitute(&id, &a).is_zero();
    Ok(Outcome::compare(
        format!("{s}, residual zero: {zero}"),
        format!("(x, y, d) = ({}, {}, {}), residual zero: true", expected.0, expected.1, expected.2),
    ))
}

fn prop53_e0() -> Result<Outcome> {
    prop53(0, (2, -2, 4))
}

fn prop53_e2() -> Result<Outcome> {
    prop53(2, (2, 0, 4))
}

fn prop54() -> Result<Outcome> {
    let (deg, obstructed) = geometry::e2_obstruction()?;
    let verdicts: Vec<String> = geometry::NORMAL_CANDIDATES
        .iter()
        .map(|&(p, q)| format!("O({p})+O({q}): {}", geometry::embeds_as_subbundle(deg, (p, q))))
        .collect();
    Ok(Outcome::compare(
        format!("degree {deg}; {}; obstructed {obstructed}", verdicts.join(", ")),
        "degree 4; O(0)+O(2): false, O(1)+O(1): false; obstructed true".to_string(),
    ))
}

fn prop56() -> Result<Outcome> {
    let cases = [(0, 3), (4, 5), (0, 1), (5, 2), (2, 1), (3, 0)];
    let computed: Result<Vec<String>> = cases
        .iter()
        .map(|&(a, b)| Ok(format!("({a},{b}) {}", geometry::normality_status(a, b)?)))
        .collect();
    let expected = [
        Normality::Normal,
        Normality::Normal,
        Normality::Normal,
        Normality::CodimBound(6),
        Normality::CodimBound(4),
        Normality::CodimBound(6),
    ];
    let expected: Vec<String> = cases.iter().zip(expected).map(|(&(a, b), n)| format!("({a},{b}) {n}")).collect();
    let surj = (0..6).all(|a| (0..6).all(|b| geometry::multiplication_surjective_p1(a, b)));
    Ok(Outcome::compare(
        format!("{}; P1 multiplication onto: {surj}", computed?.join(", ")),
        format!("{}; P1 multiplication onto: true", expected.join(", ")),
    ))
}

fn splitting(c1: i64, sections: BTreeMap<i64, u64>, expected: SplittingType) -> Result<Outcome> {
    let st = geometry::splitting_from_sections(c1, &sections)?;
    Ok(Outcome::compare(st, expected))
}

fn prop61a() -> Result<Outcome> {
    let (horizontal, _) = geometry::line_degrees();
    // sections of E_t(-2) restrict to a general line
    let sections = BTreeMap::from([(0, 1), (2, fiber_sections()?.h(0))]);
    splitting(horizontal, sections, SplittingType { a: 2, b: 2 })
}

fn prop61b() -> Result<Outcome> {
    let (_, vertical) = geometry::line_degrees();
    splitting(vertical, BTreeMap::from([(1, 1)]), SplittingType { a: 1, b: 1 })
}

fn prop62b() -> Result<Outcome> {
    let (horizontal, _) = geometry::line_degrees();
    splitting(horizontal, BTreeMap::from([(4, 1)]), SplittingType { a: 4, b: 0 })
}

fn lemma65(r: u32) -> Result<Outcome> {
    let data = geometry::jumping_data(r)?;
    let ranks = data.kernel_virtual_rank == data.sum_virtual_rank;
    Ok(Outcome::compare(
        format!("degree {}, ranks agree: {ranks}", data.degree),
        "degree 4, ranks agree: true".to_string(),
    ))
}

fn chain_d4() -> Result<Outcome> {
    let d0 = geometry::double_structure_solve(0)?.d;
    let d2 = geometry::double_structure_solve(2)?.d;
    let instance = stability::POSITIVE_INSTANCES.iter().find(|&&(_, q)| q == 2).copied();
    let boundary = stability::subsheaf_status(d0 - 2, 2) == SubsheafStatus::No
        && stability::subsheaf_status(d0, 2) == SubsheafStatus::Yes;
    Ok(Outcome::compare(
        format!("d = {d0}, {d2}; instance {instance:?}; boundary {boundary}"),
        "d = 4, 4; instance Some((4, 2)); boundary true".to_string(),
    ))
}
