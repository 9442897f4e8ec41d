//! Computations specific to the rank-2 bundle `E` on P1 x P3 with
//! `c1 = 2h1 + 4h3`, `c2 = 8h1h3 + 6h3^2`, and to the surfaces and curves
//! attached to it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::chern::{euler_characteristic, grr_pushforward, serre_bundle, twist, whitney_complement, whitney_sum, BundleSymbol};
use crate::chow::{ring_make, GradedClass, RingId};
use crate::cohom::{chi_sigma, cohom_sigma0};
use crate::error::{Error, Result};
use crate::exactalg::{poly_solve_zero_identity, ParamPoly, SearchBox, DEFAULT_BOUND};

fn class(id: RingId, terms: &[(ParamPoly, &str)]) -> GradedClass {
    let ring = ring_make(id).expect("fixed ring");
    GradedClass::combination(&ring, terms.iter().map(|(c, n)| (c.clone(), *n))).expect("basis names")
}

fn int(n: i64) -> ParamPoly {
    ParamPoly::int(n)
}

fn var(name: &str) -> ParamPoly {
    ParamPoly::var(name)
}

/// `E` itself.
pub fn bundle_e() -> BundleSymbol {
    serre_bundle(
        &class(RingId::P1xP3, &[(int(2), "h1"), (int(4), "h3")]),
        &class(RingId::P1xP3, &[(int(8), "h1*h3"), (int(6), "h3^2")]),
    )
    .expect("degrees 1 and 2")
}

/// `chi(E(a, b))` in the parameters `a`, `b`, by Hirzebruch-Riemann-Roch.
pub fn chi_e_twisted() -> ParamPoly {
    let e = bundle_e();
    let l = class(RingId::P1xP3, &[(var("a"), "h1"), (var("b"), "h3")]);
    euler_characteristic(&twist(&e, &l).expect("rank 2"))
}

/// `chi(O(alpha, beta))` on P1 x P3 by Hirzebruch-Riemann-Roch.
pub fn chi_line(alpha: &ParamPoly, beta: &ParamPoly) -> ParamPoly {
    let l = class(RingId::P1xP3, &[(alpha.clone(), "h1"), (beta.clone(), "h3")]);
    euler_characteristic(&BundleSymbol::line(&l).expect("degree 1"))
}

/// A morphism `Sigma_e -> P3` given by `|alpha C0 + beta f|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddingSolution {
    pub e: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl EmbeddingSolution {
    /// Pullback of `h3`.
    pub fn hyperplane(&self) -> GradedClass {
        class(RingId::Sigma(self.e), &[(int(self.alpha), "C0"), (int(self.beta), "f")])
    }
}

impl fmt::Display for EmbeddingSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e={}, {}C0 + {}f)", self.e, self.alpha, self.beta)
    }
}

/// Hirzebruch surfaces mapping to quadrics of P3 with fibers to lines:
/// the class must meet a fiber once (`alpha = 1`), have self-intersection 2,
/// and satisfy `beta <= 2`.
pub fn classify_embeddings(e_max: i64) -> Result<Vec<EmbeddingSolution>> {
    if e_max < 2 {
        return Err(Error::InvalidParameter(format!("e_max = {e_max} < 2")));
    }
    let mut out = Vec::new();
    for e in 0..=e_max {
        let ring = ring_make(RingId::Sigma(e))?;
        let fiber = GradedClass::named(&ring, "f")?;
        for alpha in 0..=8 {
            for beta in 0..=8 {
                let sol = EmbeddingSolution { e, alpha, beta };
                let h = sol.hyperplane();
                let meets_fiber_once = (&h * &fiber).degree() == int(1);
                let quadric = (&h * &h).degree() == int(2);
                if meets_fiber_once && quadric && beta <= 2 {
                    out.push(sol);
                }
            }
        }
    }
    Ok(out)
}

/// The ideal `L = O_Z(x C0 + y f)` of `Z` in a double structure `Y`, and
/// the degree `d` of the associated pencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleStructureSolution {
    pub e: i64,
    pub x: i64,
    pub y: i64,
    pub d: i64,
}

impl fmt::Display for DoubleStructureSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y, d) = ({}, {}, {})", self.x, self.y, self.d)
    }
}

fn embedding_for(e: i64) -> Result<EmbeddingSolution> {
    classify_embeddings(2)?
        .into_iter()
        .find(|s| s.e == e)
        .ok_or_else(|| Error::InvalidParameter(format!("no embedding of Sigma({e})")))
}

/// `O(alpha, beta)` restricted to `Z`, as `(C0, f)` coefficients.
fn restrict_to_surface(emb: &EmbeddingSolution, alpha: &ParamPoly, beta: &ParamPoly) -> (ParamPoly, ParamPoly) {
    // h1 restricts to a fiber, h3 to the hyperplane class
    let c0 = beta * &int(emb.alpha);
    let f = alpha + &(beta * &int(emb.beta));
    (c0, f)
}

/// `chi(E(a,b))` rebuilt from a double structure with unknowns `x, y, d`,
/// minus the Riemann-Roch polynomial. Zero exactly at the right `(x, y, d)`.
pub fn double_structure_identity(e: i64) -> Result<ParamPoly> {
    if e != 0 && e != 2 {
        return Err(Error::InvalidParameter(format!("e = {e}, expected 0 or 2")));
    }
    let emb = embedding_for(e)?;
    let (a, b, x, y, d) = (var("a"), var("b"), var("x"), var("y"), var("d"));
    let two = int(2);
    let beta = &b + &two;
    let outer = &a + &d;
    let first = chi_line(&(&(&a - &d) + &two), &beta);
    let second = chi_line(&outer, &beta);
    let (rc0, rf) = restrict_to_surface(&emb, &outer, &beta);
    let on_z = chi_sigma(e, &rc0, &rf)?;
    let twisted = chi_sigma(e, &(&rc0 + &x), &(&rf + &y))?;
    Ok(&(&(&(&first + &second) - &twisted) - &on_z) - &chi_e_twisted())
}

pub fn double_structure_solve(e: i64) -> Result<DoubleStructureSolution> {
    let identity = double_structure_identity(e)?;
    let sols = poly_solve_zero_identity(&identity, &["a", "b"], &SearchBox::symmetric(&["x", "y", "d"], DEFAULT_BOUND))?;
    match sols.as_slice() {
        [] => Err(Error::NoSolution),
        [s] => Ok(DoubleStructureSolution { e, x: s["x"], y: s["y"], d: s["d"] }),
        many => Err(Error::NonUnique(many.len())),
    }
}

/// Normal bundle candidates `O(p) + O(q)` of `C0` in the quadric.
pub const NORMAL_CANDIDATES: [(i64, i64); 2] = [(0, 2), (1, 1)];

/// `deg(L^{-1}|C0) = -(x C0 + y f) . C0` on `Sigma_e`.
pub fn inverse_ideal_degree_on_c0(sol: &DoubleStructureSolution) -> i64 {
    let l = class(RingId::Sigma(sol.e), &[(int(sol.x), "C0"), (int(sol.y), "f")]);
    let c0 = class(RingId::Sigma(sol.e), &[(int(1), "C0")]);
    let deg = -(&l * &c0).degree().constant_value().expect("numeric");
    deg.to_integer().try_into().expect("small degree")
}

/// A line bundle of degree `deg` on P1 maps injectively onto a subbundle of
/// `O(p) + O(q)` only if `deg <= max(p, q)`.
pub fn embeds_as_subbundle(deg: i64, summands: (i64, i64)) -> bool {
    deg <= summands.0.max(summands.1)
}

pub fn normal_bundle_obstructed(deg: i64) -> bool {
    !NORMAL_CANDIDATES.iter().any(|&s| embeds_as_subbundle(deg, s))
}

/// The degree of `L^{-1}|C0` for the `e = 2` structure, and whether it is obstructed.
pub fn e2_obstruction() -> Result<(i64, bool)> {
    let sol = double_structure_solve(2)?;
    let deg = inverse_ideal_degree_on_c0(&sol);
    Ok((deg, normal_bundle_obstructed(deg)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normality {
    Normal,
    /// The cokernel of restriction has dimension at most this.
    CodimBound(u64),
}

impl fmt::Display for Normality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normality::Normal => f.write_str("normal"),
            Normality::CodimBound(k) => write!(f, "codim <= {k}"),
        }
    }
}

/// `(a, b)`-normality of the quadric surface `Z`, read off from
/// `h^1(O_Z((b-4) C0 + (a+b-2) f))`.
pub fn normality_status(a: i64, b: i64) -> Result<Normality> {
    if a < 0 || b < 0 {
        return Err(Error::InvalidParameter(format!("({a}, {b}) has a negative entry")));
    }
    match cohom_sigma0(b - 4, a + b - 2).h(1) {
        0 => Ok(Normality::Normal),
        k => Ok(Normality::CodimBound(k)),
    }
}

/// Whether products of sections `H^0(O(a)) x H^0(O(b))` span `H^0(O(a+b))` on P1,
/// by counting distinct monomials.
pub fn multiplication_surjective_p1(a: i64, b: i64) -> bool {
    if a < 0 || b < 0 {
        return a + b < 0;
    }
    let products: BTreeSet<i64> = (0..=a).flat_map(|i| (0..=b).map(move |j| i + j)).collect();
    products.len() as i64 == a + b + 1
}

/// `O(a) + O(b)` on a line, `a >= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplittingType {
    pub a: i64,
    pub b: i64,
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// The larger summand is the largest `k` with `h^0(E|l(-k)) > 0`.
pub fn splitting_from_sections(c1: i64, sections: &BTreeMap<i64, u64>) -> Result<SplittingType> {
    let a = sections
        .iter()
        .filter(|&(_, &h)| h > 0)
        .map(|(&k, _)| k)
        .max()
        .ok_or(Error::Inconsistent)?;
    if 2 * a < c1 {
        return Err(Error::Inconsistent);
    }
    Ok(SplittingType { a, b: c1 - a })
}

/// Degree of `E` on a horizontal line `{t} x l` and on a vertical line `P1 x {x}`.
pub fn line_degrees() -> (i64, i64) {
    let c1 = bundle_e().c1();
    let deg = |name: &str| -> i64 {
        let line = GradedClass::named(c1.ring(), name).expect("basis");
        let v = (&c1 * &line).degree().constant_value().expect("numeric");
        v.to_integer().try_into().expect("small")
    };
    (deg("h1*h3^2"), deg("h3^3"))
}

/// The quantities entering the jumping-divisor degree for a resolution
/// `0 -> K -> sum O(-a_i, -b_i) -> E(-2,-2)|(P1 x line) -> 0` with `r + 2` summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpingData {
    pub kernel: BundleSymbol,
    /// `deg c1(R^1 q_* sum) - deg c1(R^1 q_* K)`.
    pub degree: ParamPoly,
    pub kernel_virtual_rank: ParamPoly,
    pub sum_virtual_rank: ParamPoly,
}

/// `E(-2,-2)` restricted to `P1 x line`, twisted, as a bundle on P1 x P1.
pub fn restricted_twisted_e() -> BundleSymbol {
    let e = bundle_e().restrict_to_line().expect("P1 x P3");
    let l = class(RingId::P1xP1, &[(int(-2), "h1"), (int(-2), "h2")]);
    twist(&e, &l).expect("rank 2")
}

pub fn jumping_data(r: u32) -> Result<JumpingData> {
    if r < 1 {
        return Err(Error::InvalidParameter("need at least one kernel summand".into()));
    }
    let target = restricted_twisted_e();
    let summands: Vec<BundleSymbol> = (1..=r + 2)
        .map(|i| {
            let c1 = class(RingId::P1xP1, &[(-var(&format!("a{i}")), "h1"), (-var(&format!("b{i}")), "h2")]);
            BundleSymbol::line(&c1)
        })
        .collect::<Result<_>>()?;
    let sum = whitney_sum(&summands)?;
    let kernel = whitney_complement(&sum, &target)?;
    let mut sum_rank = ParamPoly::zero();
    let mut sum_v = ParamPoly::zero();
    for s in &summands {
        let push = grr_pushforward(s)?;
        sum_rank += &push.virtual_rank;
        sum_v += &push.virtual_c1_degree;
    }
    let push_k = grr_pushforward(&kernel)?;
    // c1(R^1 q_* F) = -(virtual c1) when q_* F = 0
    let degree = &push_k.virtual_c1_degree - &sum_v;
    Ok(JumpingData { kernel, degree, kernel_virtual_rank: push_k.virtual_rank, sum_virtual_rank: sum_rank })
}

pub fn jumping_divisor_degree(r: u32) -> Result<ParamPoly> {
    Ok(jumping_data(r)?.degree)
}

/// Arithmetic genus of the zero locus of a section of a rank-2 bundle on
/// P3, from `2 p_a - 2 = c2 (c1 - 4)`.
pub fn zero_locus_genus(f: &BundleSymbol) -> Result<i64> {
    if f.ring().id() != RingId::P3 || f.rank() != 2 {
        return Err(Error::InvalidParameter("expected a rank-2 bundle on P3".into()));
    }
    let deg = |x: &GradedClass, name: &str| -> Result<i64> {
        let v = x.coefficient_of(name).constant_value().ok_or(Error::Inconsistent)?;
        if !v.is_integer() {
            return Err(Error::Inconsistent);
        }
        v.to_integer().try_into().map_err(|_| Error::Inconsistent)
    };
    let c1 = deg(&f.c1(), "h")?;
    let c2 = deg(&f.c2(), "h^2")?;
    let twice = c2 * (c1 - 4) + 2;
    if twice % 2 != 0 {
        return Err(Error::Inconsistent);
    }
    Ok(twice / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::Fiber;
    use crate::exactalg::resubstitute;

    fn p(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    #[test]
    fn embeddings() {
        let expected = vec![
            EmbeddingSolution { e: 0, alpha: 1, beta: 1 },
            EmbeddingSolution { e: 2, alpha: 1, beta: 2 },
        ];
        assert_eq!(classify_embeddings(10).unwrap(), expected);
        assert_eq!(classify_embeddings(2).unwrap(), expected);
        assert!(classify_embeddings(1).is_err());
        let h = expected[1].hyperplane();
        assert_eq!((&h * &h).degree(), int(2));
    }

    #[test]
    fn double_structures() {
        let s0 = double_structure_solve(0).unwrap();
        assert_eq!((s0.x, s0.y, s0.d), (2, -2, 4));
        let s2 = double_structure_solve(2).unwrap();
        assert_eq!((s2.x, s2.y, s2.d), (2, 0, 4));
        for s in [s0, s2] {
            let id = double_structure_identity(s.e).unwrap();
            let a = [("x".to_string(), s.x), ("y".to_string(), s.y), ("d".to_string(), s.d)].into_iter().collect();
            assert!(resubstitute(&id, &a).is_zero());
        }
        assert!(double_structure_solve(1).is_err());
    }

    #[test]
    fn surface_terms() {
        let (b, a, x, y, d) = (p("b"), p("a"), p("x"), p("y"), p("d"));
        let emb = embedding_for(0).unwrap();
        let (c0, f) = restrict_to_surface(&emb, &(&a + &d), &(&b + &int(2)));
        assert_eq!(chi_sigma(0, &(&c0 + &x), &(&f + &y)).unwrap(), p("(x + b + 3)*(y + a + b + d + 3)"));
        let emb = embedding_for(2).unwrap();
        let (c0, f) = restrict_to_surface(&emb, &(&a + &d), &(&b + &int(2)));
        assert_eq!(chi_sigma(2, &(&c0 + &x), &(&f + &y)).unwrap(), p("(x + b + 3)*(y - x + a + b + d + 3)"));
    }

    #[test]
    fn obstruction() {
        assert_eq!(e2_obstruction().unwrap(), (4, true));
        assert!(embeds_as_subbundle(2, (0, 2)));
        assert!(!normal_bundle_obstructed(2));
        assert!(!normal_bundle_obstructed(0));
        let s0 = double_structure_solve(0).unwrap();
        assert_eq!(inverse_ideal_degree_on_c0(&s0), 2);
    }

    #[test]
    fn normality() {
        assert_eq!(normality_status(0, 3).unwrap(), Normality::Normal);
        assert_eq!(normality_status(0, 1).unwrap(), Normality::Normal);
        assert_eq!(normality_status(5, 2).unwrap(), Normality::CodimBound(6));
        assert_eq!(normality_status(3, 0).unwrap(), Normality::CodimBound(6));
        assert!(normality_status(-1, 0).is_err());
        for a in 0..10 {
            for b in 3..10 {
                assert_eq!(normality_status(a, b).unwrap(), Normality::Normal);
            }
            let k = |n: i64| if n == 0 { Normality::Normal } else { Normality::CodimBound(n as u64) };
            assert_eq!(normality_status(a, 2).unwrap(), k(a + 1));
            assert_eq!(normality_status(a, 1).unwrap(), k(2 * a));
            if a >= 1 {
                assert_eq!(normality_status(a, 0).unwrap(), k(3 * (a - 1)));
            }
        }
    }

    #[test]
    fn multiplication_maps() {
        for a in 0..6 {
            for b in 0..6 {
                assert!(multiplication_surjective_p1(a, b));
            }
        }
    }

    #[test]
    fn splitting_types() {
        let (horizontal, vertical) = line_degrees();
        assert_eq!((horizontal, vertical), (4, 2));
        let st = |c1, k| splitting_from_sections(c1, &BTreeMap::from([(0, 3), (k, 1)])).unwrap();
        assert_eq!(st(4, 2), SplittingType { a: 2, b: 2 });
        assert_eq!(st(2, 1), SplittingType { a: 1, b: 1 });
        assert_eq!(st(4, 4), SplittingType { a: 4, b: 0 });
        assert_eq!(splitting_from_sections(4, &BTreeMap::from([(1, 2)])), Err(Error::Inconsistent));
        assert_eq!(splitting_from_sections(4, &BTreeMap::new()), Err(Error::Inconsistent));
    }

    #[test]
    fn restricted_bundle() {
        let e = restricted_twisted_e();
        let q = e.ring().clone();
        assert_eq!(e.c1(), GradedClass::combination(&q, [(int(-2), "h1")]).unwrap());
        assert_eq!(e.c2(), GradedClass::combination(&q, [(int(4), "h1*h2")]).unwrap());
    }

    #[test]
    fn jumping_divisor() {
        for r in 1..=3 {
            let data = jumping_data(r).unwrap();
            assert_eq!(data.degree, int(4), "r = {r}");
            assert_eq!(data.kernel_virtual_rank, data.sum_virtual_rank);
            assert_eq!(data.kernel.rank(), r);
        }
        assert!(jumping_data(0).is_err());
    }

    #[test]
    fn genus_of_the_curve() {
        let et = bundle_e().restrict_fiber(Fiber::Horizontal).unwrap();
        let h = GradedClass::combination(et.ring(), [(int(-2), "h")]).unwrap();
        let f = twist(&et, &h).unwrap();
        assert_eq!(f.c2().coefficient_of("h^2"), int(2));
        assert_eq!(zero_locus_genus(&f).unwrap(), -3);
        assert!(zero_locus_genus(&bundle_e()).is_err());
    }
}
