//! Bundle symbols (rank plus total Chern class) and the Riemann-Roch toolkit.

use std::fmt;
use std::sync::Arc;

use crate::chow::{restrict_fiber, restrict_to_line, Fiber, GradedClass, RingId, RingSpec};
use crate::error::{Error, Result};
use crate::exactalg::{rat, ratio, ParamPoly};

/// A vector bundle up to its numerical invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSymbol {
    rank: u32,
    total: GradedClass,
}

impl BundleSymbol {
    /// `total` is the full Chern class `1 + c1 + c2 + ...`.
    pub fn new(rank: u32, total: GradedClass) -> Self {
        BundleSymbol { rank, total }
    }

    pub fn trivial(ring: &Arc<RingSpec>, rank: u32) -> Self {
        BundleSymbol::new(rank, GradedClass::one(ring))
    }

    /// The line bundle with first Chern class `c1`.
    pub fn line(c1: &GradedClass) -> Result<Self> {
        check_degree(c1, 1)?;
        Ok(BundleSymbol::new(1, &GradedClass::one(c1.ring()) + c1))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.total.ring()
    }

    pub fn total(&self) -> &GradedClass {
        &self.total
    }

    pub fn chern(&self, k: usize) -> GradedClass {
        self.total.homogeneous(k)
    }

    pub fn c1(&self) -> GradedClass {
        self.chern(1)
    }

    pub fn c2(&self) -> GradedClass {
        self.chern(2)
    }

    /// Applies a ring restriction to every Chern class.
    pub fn restrict(&self, f: impl Fn(&GradedClass) -> Result<GradedClass>) -> Result<Self> {
        Ok(BundleSymbol::new(self.rank, f(&self.total)?))
    }

    pub fn restrict_fiber(&self, which: Fiber) -> Result<Self> {
        self.restrict(|c| restrict_fiber(c, which))
    }

    pub fn restrict_to_line(&self) -> Result<Self> {
        self.restrict(restrict_to_line)
    }
}

impl fmt::Display for BundleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} with c = {}", self.rank, self.total)
    }
}

fn check_degree(x: &GradedClass, k: usize) -> Result<()> {
    if x.is_homogeneous_of(k) {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { expected: k, found: x.to_string() })
    }
}

fn check_ring(x: &GradedClass, y: &GradedClass) -> Result<()> {
    if x.ring().id() == y.ring().id() {
        Ok(())
    } else {
        Err(Error::RingMismatch(x.ring().id().to_string(), y.ring().id().to_string()))
    }
}

/// The rank-2 bundle attached to a codimension-2 locus with determinant `det`.
pub fn serre_bundle(det: &GradedClass, locus: &GradedClass) -> Result<BundleSymbol> {
    check_ring(det, locus)?;
    check_degree(det, 1)?;
    check_degree(locus, 2)?;
    let total = &(&GradedClass::one(det.ring()) + det) + locus;
    Ok(BundleSymbol::new(2, total))
}

/// `B (x) O(L)` for rank at most 2.
pub fn twist(b: &BundleSymbol, l: &GradedClass) -> Result<BundleSymbol> {
    check_ring(b.total(), l)?;
    check_degree(l, 1)?;
    let one = GradedClass::one(b.ring());
    let total = match b.rank {
        0 => one,
        1 => &(&one + &b.c1()) + l,
        2 => {
            let c1 = b.c1();
            let new_c1 = &c1 + &l.scale(&ParamPoly::int(2));
            let new_c2 = &(&b.c2() + &(&c1 * l)) + &(l * l);
            &(&one + &new_c1) + &new_c2
        }
        r => return Err(Error::UnsupportedRank(r)),
    };
    Ok(BundleSymbol::new(b.rank, total))
}

/// Whitney sum of bundles on one ring.
pub fn whitney_sum(parts: &[BundleSymbol]) -> Result<BundleSymbol> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty direct sum".into()))?;
    let mut out = BundleSymbol::trivial(first.ring(), 0);
    for p in parts {
        check_ring(out.total(), p.total())?;
        out = BundleSymbol::new(out.rank + p.rank, &out.total * &p.total);
    }
    Ok(out)
}

/// Solves `c(sub) * c(Q) = c(total)` for `Q`, degree by degree.
///
/// All Chern classes the division produces are kept, including those above
/// the rank of `Q`: with formal parameters they do not vanish on their own.
pub fn whitney_complement(total: &BundleSymbol, sub: &BundleSymbol) -> Result<BundleSymbol> {
    check_ring(total.total(), sub.total())?;
    if total.rank <= sub.rank {
        return Err(Error::InvalidParameter(format!(
            "total rank {} must exceed sub rank {}",
            total.rank, sub.rank
        )));
    }
    let ring = total.ring();
    let c0 = sub.total.homogeneous(0).coefficient(0);
    if c0 != ParamPoly::one() {
        return Err(Error::NonInvertible);
    }
    // c(sub) = 1 + x with x nilpotent
    let x = &sub.total - &GradedClass::one(ring);
    let mut inverse = GradedClass::one(ring);
    let mut power = GradedClass::one(ring);
    for _ in 0..ring.dimension() {
        power = &power * &(-&x);
        inverse = &inverse + &power;
    }
    Ok(BundleSymbol::new(total.rank - sub.rank, &total.total * &inverse))
}

/// Chern character `rank + sum p_k / k!` with power sums from Newton's identities.
pub fn chern_character(b: &BundleSymbol) -> GradedClass {
    let ring = b.ring();
    let dim = ring.dimension();
    let c: Vec<GradedClass> = (0..=dim).map(|k| b.chern(k)).collect();
    let mut p: Vec<GradedClass> = vec![GradedClass::zero(ring); dim + 1];
    let mut ch = GradedClass::scalar(ring, ParamPoly::int(b.rank as i64));
    let mut factorial = 1i64;
    for k in 1..=dim {
        // p_k = (-1)^(k-1) k c_k + sum_{i=1}^{k-1} (-1)^(i-1) c_i p_{k-i}
        let sign = |i: usize| if i % 2 == 1 { 1 } else { -1 };
        let mut pk = c[k].scale(&ParamPoly::int(sign(k) * k as i64));
        for i in 1..k {
            pk = &pk + &(&c[i] * &p[k - i]).scale(&ParamPoly::int(sign(i)));
        }
        factorial *= k as i64;
        ch = &ch + &pk.scale(&ParamPoly::constant(ratio(1, factorial)));
        p[k] = pk;
    }
    ch
}

/// Todd class of `x / (1 - exp(-x))` series on P^n, raised to `n + 1`.
fn todd_projective(ring: &Arc<RingSpec>, generator: &GradedClass, n: u32) -> GradedClass {
    let series = [ratio(1, 1), ratio(1, 2), ratio(1, 12), ratio(0, 1), ratio(-1, 720)];
    let mut factor = GradedClass::zero(ring);
    for (k, c) in series.iter().enumerate().take(n as usize + 1) {
        factor = &factor + &generator.pow(k as u32).scale(&ParamPoly::constant(c.clone()));
    }
    factor.pow(n + 1)
}

/// Todd class from the tangent Chern classes, valid through dimension 4.
pub fn todd_from_chern(tangent: &GradedClass) -> GradedClass {
    let ring = tangent.ring();
    let c = |k| tangent.homogeneous(k);
    let q = |n: i64, d: i64| ParamPoly::constant(ratio(n, d));
    let (c1, c2, c3, c4) = (c(1), c(2), c(3), c(4));
    let td2 = &(&c1 * &c1) + &c2;
    let td4 = &(&(&(&(&c1.pow(4).scale(&q(-1, 1)) + &(&(&c1 * &c1) * &c2).scale(&q(4, 1)))
        + &(&c1 * &c3))
        + &(&c2 * &c2).scale(&q(3, 1)))
        - &c4);
    let parts = [
        GradedClass::one(ring),
        c1.scale(&q(1, 2)),
        td2.scale(&q(1, 12)),
        (&c1 * &c2).scale(&q(1, 24)),
        td4.scale(&q(1, 720)),
    ];
    parts.iter().fold(GradedClass::zero(ring), |acc, p| &acc + p)
}

/// Todd class of the tangent bundle. Products of projective spaces use the
/// product of per-factor Todd classes; Hirzebruch surfaces use the Chern
/// class formula.
pub fn todd(ring: &Arc<RingSpec>) -> GradedClass {
    let factors: &[(&str, u32)] = match ring.id() {
        RingId::P1 => &[("h", 1)],
        RingId::P3 => &[("h", 3)],
        RingId::P1xP3 => &[("h1", 1), ("h3", 3)],
        RingId::P1xP1 => &[("h1", 1), ("h2", 1)],
        RingId::Sigma(_) => return todd_from_chern(&GradedClass::tangent_chern(ring)),
    };
    factors.iter().fold(GradedClass::one(ring), |acc, &(g, n)| {
        let gen = GradedClass::named(ring, g).expect("generator");
        &acc * &todd_projective(ring, &gen, n)
    })
}

/// Hirzebruch-Riemann-Roch: `deg(ch(B) td(X))`.
pub fn euler_characteristic(b: &BundleSymbol) -> ParamPoly {
    (&chern_character(b) * &todd(b.ring())).degree()
}

/// Virtual invariants of `q_! B` for the second projection
/// `q: P1 x P1 -> P1`, whose fibers have class `h2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushforward {
    pub virtual_rank: ParamPoly,
    pub virtual_c1_degree: ParamPoly,
}

/// Grothendieck-Riemann-Roch along `q`: `ch(q_! B) = q_*(ch(B) (1 + h1))`,
/// where `q_*` reads off the `h1` and `h1 h2` coefficients.
pub fn grr_pushforward(b: &BundleSymbol) -> Result<Pushforward> {
    let ring = b.ring();
    if ring.id() != RingId::P1xP1 {
        return Err(Error::RingMismatch(ring.id().to_string(), RingId::P1xP1.to_string()));
    }
    let rel_todd = &GradedClass::one(ring) + &GradedClass::named(ring, "h1")?;
    let integrand = &chern_character(b) * &rel_todd;
    Ok(Pushforward {
        virtual_rank: integrand.coefficient_of("h1"),
        virtual_c1_degree: integrand.coefficient_of("h1*h2"),
    })
}

/// `h^0(P1, O(k)) - h^1(P1, O(k))`.
pub fn chi_p1(k: &ParamPoly) -> ParamPoly {
    k + &ParamPoly::constant(rat(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::ring_make;

    fn v(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    fn cls(ring: &Arc<RingSpec>, terms: &[(&str, &str)]) -> GradedClass {
        GradedClass::combination(ring, terms.iter().map(|&(c, n)| (v(c), n))).unwrap()
    }

    fn bundle_e() -> BundleSymbol {
        let r = ring_make(RingId::P1xP3).unwrap();
        serre_bundle(
            &cls(&r, &[("2", "h1"), ("4", "h3")]),
            &cls(&r, &[("8", "h1*h3"), ("6", "h3^2")]),
        )
        .unwrap()
    }

    #[test]
    fn serre_bundle_checks_degrees() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let h1 = cls(&r, &[("1", "h1")]);
        assert!(matches!(serre_bundle(&h1, &h1), Err(Error::DegreeMismatch { .. })));
        let triv = serre_bundle(&GradedClass::zero(&r), &GradedClass::zero(&r)).unwrap();
        assert_eq!(triv, BundleSymbol::trivial(&r, 2));
    }

    #[test]
    fn horizontal_restriction_of_e() {
        let et = bundle_e().restrict_fiber(Fiber::Horizontal).unwrap();
        let p3 = et.ring().clone();
        assert_eq!(et.rank(), 2);
        assert_eq!(et.c1(), cls(&p3, &[("4", "h")]));
        assert_eq!(et.c2(), cls(&p3, &[("6", "h^2")]));
        let et2 = twist(&et, &cls(&p3, &[("-2", "h")])).unwrap();
        assert!(et2.c1().is_zero());
        assert_eq!(et2.c2(), cls(&p3, &[("2", "h^2")]));
    }

    #[test]
    fn twist_formulas() {
        let e = bundle_e();
        let r = e.ring().clone();
        assert_eq!(twist(&e, &GradedClass::zero(&r)).unwrap(), e);
        let t = twist(&e, &cls(&r, &[("a", "h1"), ("b", "h3")])).unwrap();
        assert_eq!(t.c1(), cls(&r, &[("2 + 2*a", "h1"), ("4 + 2*b", "h3")]));
        let three = BundleSymbol::trivial(&r, 3);
        assert_eq!(twist(&three, &GradedClass::zero(&r)), Err(Error::UnsupportedRank(3)));
    }

    #[test]
    fn chern_character_examples() {
        let q = ring_make(RingId::P1xP1).unwrap();
        let l = BundleSymbol::line(&cls(&q, &[("-a", "h1"), ("-b", "h2")])).unwrap();
        assert_eq!(
            chern_character(&l),
            cls(&q, &[("1", "1"), ("-a", "h1"), ("-b", "h2"), ("a*b", "h1*h2")])
        );
        let r = ring_make(RingId::P1xP3).unwrap();
        assert_eq!(chern_character(&BundleSymbol::trivial(&r, 2)), cls(&r, &[("2", "1")]));
    }

    #[test]
    fn chern_character_of_line_is_exponential() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let l = cls(&r, &[("a", "h1"), ("b", "h3")]);
        let mut exp = GradedClass::zero(&r);
        let mut fact = 1;
        for k in 0..=4u32 {
            if k > 0 {
                fact *= k as i64;
            }
            exp = &exp + &l.pow(k).scale(&ParamPoly::constant(ratio(1, fact)));
        }
        assert_eq!(chern_character(&BundleSymbol::line(&l).unwrap()), exp);
    }

    #[test]
    fn todd_examples() {
        let p1 = ring_make(RingId::P1).unwrap();
        assert_eq!(todd(&p1), cls(&p1, &[("1", "1"), ("1", "h")]));
        let r = ring_make(RingId::P1xP3).unwrap();
        let expected = &cls(&r, &[("1", "1"), ("1", "h1")])
            * &cls(&r, &[("1", "1"), ("2", "h3"), ("11/6", "h3^2"), ("1", "h3^3")]);
        assert_eq!(todd(&r), expected);
    }

    #[test]
    fn todd_routes_agree() {
        for id in [RingId::P1, RingId::P3, RingId::P1xP3, RingId::P1xP1] {
            let r = ring_make(id).unwrap();
            assert_eq!(todd(&r), todd_from_chern(&GradedClass::tangent_chern(&r)), "{id}");
        }
    }

    #[test]
    fn structure_sheaf_euler_characteristics() {
        let r = ring_make(RingId::P1xP3).unwrap();
        assert_eq!(euler_characteristic(&BundleSymbol::trivial(&r, 1)), ParamPoly::one());
        let l = BundleSymbol::line(&cls(&r, &[("2", "h1"), ("4", "h3")])).unwrap();
        assert_eq!(euler_characteristic(&l), ParamPoly::int(105));
        for e in 0..4 {
            let s = ring_make(RingId::Sigma(e)).unwrap();
            assert_eq!(euler_characteristic(&BundleSymbol::trivial(&s, 1)), ParamPoly::one());
        }
    }

    #[test]
    fn twisted_euler_characteristic_spot_values() {
        let e = bundle_e();
        let r = e.ring().clone();
        let chi = euler_characteristic(&twist(&e, &cls(&r, &[("a", "h1"), ("b", "h3")])).unwrap());
        assert_eq!(chi.eval_ints(&[("a", 0), ("b", 0)]), ParamPoly::int(-6));
        assert_eq!(chi.eval_ints(&[("a", -2), ("b", -4)]), ParamPoly::int(2));
    }

    #[test]
    fn pushforward_of_lines() {
        let q = ring_make(RingId::P1xP1).unwrap();
        let l = BundleSymbol::line(&cls(&q, &[("-a", "h1"), ("-b", "h2")])).unwrap();
        let push = grr_pushforward(&l).unwrap();
        assert_eq!(push.virtual_rank, v("1 - a"));
        assert_eq!(push.virtual_c1_degree, v("b*(a - 1)"));
        assert_eq!(push.virtual_rank, chi_p1(&v("-a")));
        let triv = grr_pushforward(&BundleSymbol::trivial(&q, 1)).unwrap();
        assert_eq!(triv.virtual_rank, ParamPoly::one());
        assert!(triv.virtual_c1_degree.is_zero());
        let r = ring_make(RingId::P1xP3).unwrap();
        assert!(grr_pushforward(&BundleSymbol::trivial(&r, 1)).is_err());
    }

    #[test]
    fn complement_examples() {
        let q = ring_make(RingId::P1xP1).unwrap();
        let t2 = BundleSymbol::trivial(&q, 2);
        let t1 = BundleSymbol::trivial(&q, 1);
        assert_eq!(whitney_complement(&t2, &t1).unwrap(), t1);
        assert!(whitney_complement(&t1, &t2).is_err());
        let bad = BundleSymbol::new(1, GradedClass::scalar(&q, ParamPoly::int(2)));
        assert_eq!(whitney_complement(&t2, &bad), Err(Error::NonInvertible));
    }
}
