//! Intersection rings of P1, P3, P1 x P3, P1 x P1 and the Hirzebruch
//! surfaces, as hard-coded multiplication tables on a monomial basis.
//!
//! Classes carry [`ParamPoly`] coefficients so that twists like
//! `a*h1 + b*h3` can stay formal through Chern class and Riemann-Roch
//! computations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};


use crate::error::{Error, Result};
use crate::exactalg::{ratio, ParamPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingId {
    P1,
    P3,
    P1xP3,
    P1xP1,
    /// Hirzebruch surface with invariant `e`.
    Sigma(i64),
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::P1 => write!(f, "P1"),
            RingId::P3 => write!(f, "P3"),
            RingId::P1xP3 => write!(f, "P1xP3"),
            RingId::P1xP1 => write!(f, "P1xP1"),
            RingId::Sigma(e) => write!(f, "Sigma({e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub degree: usize,
}

type Coeffs = BTreeMap<usize, ParamPoly>;

/// A fully populated intersection ring.
#[derive(Debug)]
pub struct RingSpec {
    id: RingId,
    dimension: usize,
    basis: Vec<BasisElem>,
    /// `table[i][j]` lists `(k, c)` with `b_i * b_j = sum c * b_k`.
    table: Vec<Vec<Vec<(usize, i64)>>>,
    generators: Vec<(String, usize)>,
    point: usize,
    canonical: Coeffs,
    tangent: Coeffs,
    /// For products of projective spaces: exponent vector of each basis
    /// element and the dimension of each factor.
    exponents: Option<(Vec<Vec<u32>>, Vec<u32>)>,
}

impl RingSpec {
    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn point_index(&self) -> usize {
        self.point
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|(n, _)| n.as_str())
    }

    /// Structure constants `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    fn mul_coeffs(&self, x: &Coeffs, y: &Coeffs) -> Coeffs {
        let mut out = Coeffs::new();
        for (&i, ci) in x {
            for (&j, cj) in y {
                for &(k, s) in &self.table[i][j] {
                    let slot = out.entry(k).or_default();
                    *slot += &(ci * cj).scale(&ratio(s, 1));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn product_ring(id: RingId, dims: Vec<u32>, names: &[&str]) -> RingSpec {
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for &n in &dims {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                (0..=n).map(move |k| {
                    let mut v = e.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    // by degree, then earlier generators with higher exponent first
    exps.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let name_of = |e: &[u32]| -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(names)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    let basis: Vec<BasisElem> = exps
        .iter()
        .map(|e| BasisElem { name: name_of(e), degree: e.iter().sum::<u32>() as usize })
        .collect();
    let index_of = |e: &[u32]| exps.iter().position(|x| x.as_slice() == e);
    let table = exps
        .iter()
        .map(|a| {
            exps.iter()
                .map(|b| {
                    let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    if s.iter().zip(&dims).all(|(x, n)| x <= n) {
                        vec![(index_of(&s).unwrap(), 1)]
                    } else {
                        vec![]
                    }
                })
                .collect()
        })
        .collect();
    let generators: Vec<(String, usize)> = (0..dims.len())
        .map(|i| {
            let mut e = vec![0; dims.len()];
            e[i] = 1;
            (names[i].to_string(), index_of(&e).unwrap())
        })
        .collect();
    let canonical = generators
        .iter()
        .zip(&dims)
        .map(|((_, idx), &n)| (*idx, ParamPoly::int(-(n as i64) - 1)))
        .collect();
    let point = index_of(&dims).unwrap();
    RingSpec {
        id,
        dimension: dims.iter().sum::<u32>() as usize,
        basis,
        table,
        generators,
        point,
        canonical,
        tangent: Coeffs::new(),
        exponents: Some((exps, dims)),
    }
}

fn hirzebruch_ring(e: i64) -> RingSpec {
    let basis = vec![
        BasisElem { name: "1".into(), degree: 0 },
        BasisElem { name: "C0".into(), degree: 1 },
        BasisElem { name: "f".into(), degree: 1 },
        BasisElem { name: "pt".into(), degree: 2 },
    ];
    let mut table = vec![vec![vec![]; 4]; 4];
    for i in 0..4 {
        table[0][i] = vec![(i, 1)];
        table[i][0] = vec![(i, 1)];
    }
    table[1][1] = if e == 0 { vec![] } else { vec![(3, -e)] };
    table[1][2] = vec![(3, 1)];
    table[2][1] = vec![(3, 1)];
    let canonical = [(1, ParamPoly::int(-2)), (2, ParamPoly::int(-(e + 2)))]
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    RingSpec {
        id: RingId::Sigma(e),
        dimension: 2,
        basis,
        table,
        generators: vec![("C0".into(), 1), ("f".into(), 2)],
        point: 3,
        canonical,
        tangent: Coeffs::new(),
        exponents: None,
    }
}

/// Builds the ring for `id`, including canonical class and the total Chern
/// class of the tangent bundle. Rings are built once and shared.
pub fn ring_make(id: RingId) -> Result<Arc<RingSpec>> {
    static CACHE: OnceLock<Mutex<HashMap<RingId, Arc<RingSpec>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ring) = cache.lock().expect("ring cache").get(&id) {
        return Ok(ring.clone());
    }
    let ring = build_ring(id)?;
    cache.lock().expect("ring cache").insert(id, ring.clone());
    Ok(ring)
}

fn build_ring(id: RingId) -> Result<Arc<RingSpec>> {
    let mut spec = match id {
        RingId::P1 => product_ring(id, vec![1], &["h"]),
        RingId::P3 => product_ring(id, vec![3], &["h"]),
        RingId::P1xP3 => product_ring(id, vec![1, 3], &["h1", "h3"]),
        RingId::P1xP1 => product_ring(id, vec![1, 1], &["h1", "h2"]),
        RingId::Sigma(e) if e < 0 => {
            return Err(Error::InvalidParameter(format!("Hirzebruch invariant e = {e} < 0")))
        }
        RingId::Sigma(e) => hirzebruch_ring(e),
    };
    let tangent = match &spec.exponents {
        Some((_, dims)) => {
            // c(T) = prod (1 + g_i)^(n_i + 1)
            let mut total: Coeffs = [(0, ParamPoly::one())].into();
            for ((_, g), &n) in spec.generators.iter().zip(dims) {
                let factor: Coeffs = [(0, ParamPoly::one()), (*g, ParamPoly::one())].into();
                for _ in 0..=n {
                    total = spec.mul_coeffs(&total, &factor);
                }
            }
            total
        }
        None => {
            // c(T) = 1 - K + (topological Euler number) pt
            let mut total: Coeffs = [(0, ParamPoly::one()), (spec.point, ParamPoly::int(4))].into();
            for (&k, c) in &spec.canonical {
                total.insert(k, -c);
            }
            total
        }
    };
    spec.tangent = tangent;
    Ok(Arc::new(spec))
}

/// Element of an intersection ring.
#[derive(Debug, Clone)]
pub struct GradedClass {
    ring: Arc<RingSpec>,
    coeffs: Coeffs,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.id == other.ring.id && self.coeffs == other.coeffs
    }
}

impl Eq for GradedClass {}

impl GradedClass {
    fn from_coeffs(ring: &Arc<RingSpec>, mut coeffs: Coeffs) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        GradedClass { ring: Arc::clone(ring), coeffs }
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Self::from_coeffs(ring, Coeffs::new())
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::scalar(ring, ParamPoly::one())
    }

    pub fn scalar(ring: &Arc<RingSpec>, c: ParamPoly) -> Self {
        Self::from_coeffs(ring, [(0, c)].into())
    }

    pub fn basis_elem(ring: &Arc<RingSpec>, idx: usize) -> Self {
        Self::from_coeffs(ring, [(idx, ParamPoly::one())].into())
    }

    /// Basis element by name, e.g. `"h1*h3^2"` or `"pt"`.
    pub fn named(ring: &Arc<RingSpec>, name: &str) -> Result<Self> {
        ring.basis_index(name)
            .map(|i| Self::basis_elem(ring, i))
            .ok_or_else(|| Error::InvalidParameter(format!("no basis element `{name}` in {}", ring.id)))
    }

    /// `sum c_i * b_i` over named basis elements.
    pub fn combination<'a>(
        ring: &Arc<RingSpec>,
        terms: impl IntoIterator<Item = (ParamPoly, &'a str)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (c, name) in terms {
            out = &out + &Self::named(ring, name)?.scale(&c);
        }
        Ok(out)
    }

    pub fn canonical(ring: &Arc<RingSpec>) -> Self {
        Self::from_coeffs(ring, ring.canonical.clone())
    }

    pub fn tangent_chern(ring: &Arc<RingSpec>) -> Self {
        Self::from_coeffs(ring, ring.tangent.clone())
    }

    pub fn point(ring: &Arc<RingSpec>) -> Self {
        Self::basis_elem(ring, ring.point)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn coefficient(&self, idx: usize) -> ParamPoly {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn coefficient_of(&self, name: &str) -> ParamPoly {
        self.ring.basis_index(name).map(|i| self.coefficient(i)).unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElem, &ParamPoly)> {
        self.coeffs.iter().map(|(&i, c)| (&self.ring.basis[i], c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The degree-`k` component.
    pub fn homogeneous(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&i, _)| self.ring.basis[i].degree == k)
            .map(|(&i, c)| (i, c.clone()))
            .collect();
        Self::from_coeffs(&self.ring, coeffs)
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.coeffs.keys().all(|&i| self.ring.basis[i].degree == k)
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let coeffs = self.coeffs.iter().map(|(&i, x)| (i, x * c)).collect();
        Self::from_coeffs(&self.ring, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ring), |acc, _| &acc * self)
    }

    /// Coefficient of the point class.
    pub fn degree(&self) -> ParamPoly {
        self.coefficient(self.ring.point)
    }

    /// Applies `f` to every polynomial coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let coeffs = self.coeffs.iter().map(|(&i, c)| (i, f(c))).collect();
        Self::from_coeffs(&self.ring, coeffs)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring.id == other.ring.id {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.id.to_string(), other.ring.id.to_string()))
        }
    }

    fn pullback(
        &self,
        target: &Arc<RingSpec>,
        map: impl Fn(&[u32]) -> Option<Vec<u32>>,
    ) -> GradedClass {
        let (src_exps, _) = self.ring.exponents.as_ref().expect("product ring");
        let (dst_exps, _) = target.exponents.as_ref().expect("product ring");
        let mut coeffs = Coeffs::new();
        for (&i, c) in &self.coeffs {
            if let Some(e) = map(&src_exps[i]) {
                if let Some(j) = dst_exps.iter().position(|x| *x == e) {
                    *coeffs.entry(j).or_default() += c;
                }
            }
        }
        Self::from_coeffs(target, coeffs)
    }
}

/// Which factor a fiber restriction lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fiber {
    /// `{t} x P3`: kills `h1`, renames `h3 -> h`.
    Horizontal,
    /// `P1 x {x}`: kills `h3`, renames `h1 -> h`.
    Vertical,
}

fn require(x: &GradedClass, id: RingId) -> Result<()> {
    if x.ring.id == id {
        Ok(())
    } else {
        Err(Error::RingMismatch(x.ring.id.to_string(), id.to_string()))
    }
}

/// Restricts a class on P1 x P3 to a horizontal or vertical fiber.
pub fn restrict_fiber(x: &GradedClass, which: Fiber) -> Result<GradedClass> {
    require(x, RingId::P1xP3)?;
    match which {
        Fiber::Horizontal => {
            let p3 = ring_make(RingId::P3)?;
            Ok(x.pullback(&p3, |e| (e[0] == 0).then(|| vec![e[1]])))
        }
        Fiber::Vertical => {
            let p1 = ring_make(RingId::P1)?;
            Ok(x.pullback(&p1, |e| (e[1] == 0).then(|| vec![e[0]])))
        }
    }
}

/// Restricts a class on P1 x P3 to `P1 x l` for a general line `l`; the
/// result lives on P1 x P1 with `h3 -> h2`.
pub fn restrict_to_line(x: &GradedClass) -> Result<GradedClass> {
    require(x, RingId::P1xP3)?;
    let target = ring_make(RingId::P1xP1)?;
    Ok(x.pullback(&target, |e| (e[1] <= 1).then(|| vec![e[0], e[1]])))
}

pub fn class_mul(x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
    x.check_same(y)?;
    Ok(GradedClass::from_coeffs(&x.ring, x.ring.mul_coeffs(&x.coeffs, &y.coeffs)))
}

pub fn degree(x: &GradedClass) -> ParamPoly {
    x.degree()
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&i, c)) in self.coeffs.iter().enumerate() {
            let name = &self.ring.basis[i].name;
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let body = if c.num_terms() > 1 { format!("({body})") } else { body };
            match (name.as_str(), body.as_str()) {
                ("1", b) => write!(f, "{b}")?,
                (n, "1") => write!(f, "{n}")?,
                (n, b) => write!(f, "{b}*{n}")?,
            }
        }
        Ok(())
    }
}

// Arithmetic operators panic on a ring mismatch; use `class_mul` for a
// checked product.
impl Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        self.check_same(rhs).expect("ring mismatch");
        let mut coeffs = self.coeffs.clone();
        for (&i, c) in &rhs.coeffs {
            *coeffs.entry(i).or_default() += c;
        }
        GradedClass::from_coeffs(&self.ring, coeffs)
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        self.map_coeffs(|c| -c)
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self + &(-rhs)
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        class_mul(self, rhs).expect("ring mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    fn cls(ring: &Arc<RingSpec>, terms: &[(&str, &str)]) -> GradedClass {
        GradedClass::combination(ring, terms.iter().map(|&(c, n)| (v(c), n))).unwrap()
    }

    #[test]
    fn p1xp3_basis_layout() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let names: Vec<&str> = r.basis().iter().map(|b| b.name.as_str()).collect();
        assert_eq!(
            names,
            ["1", "h1", "h3", "h1*h3", "h3^2", "h1*h3^2", "h3^3", "h1*h3^3"]
        );
        assert_eq!(r.basis()[r.point_index()].name, "h1*h3^3");
        assert_eq!(r.dimension(), 4);
    }

    #[test]
    fn canonical_classes() {
        let r = ring_make(RingId::P1xP3).unwrap();
        assert_eq!(GradedClass::canonical(&r), cls(&r, &[("-2", "h1"), ("-4", "h3")]));
        let s = ring_make(RingId::Sigma(3)).unwrap();
        assert_eq!(GradedClass::canonical(&s), cls(&s, &[("-2", "C0"), ("-5", "f")]));
    }

    #[test]
    fn hirzebruch_self_intersection() {
        let s = ring_make(RingId::Sigma(2)).unwrap();
        let c0 = GradedClass::named(&s, "C0").unwrap();
        assert_eq!(&c0 * &c0, cls(&s, &[("-2", "pt")]));
        assert!(matches!(ring_make(RingId::Sigma(-1)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn point_degree_on_p1() {
        let r = ring_make(RingId::P1).unwrap();
        assert_eq!(GradedClass::point(&r).degree(), ParamPoly::one());
    }

    #[test]
    fn binomial_cube() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let h = cls(&r, &[("1", "h1"), ("1", "h3")]);
        assert_eq!(h.pow(3), cls(&r, &[("3", "h1*h3^2"), ("1", "h3^3")]));
        let line = cls(&r, &[("a", "h1"), ("b", "h3")]);
        assert_eq!(&line * &h.pow(3), cls(&r, &[("a + 3*b", "h1*h3^3")]));
    }

    #[test]
    fn sigma0_ruling_square() {
        let s = ring_make(RingId::Sigma(0)).unwrap();
        let d = cls(&s, &[("1", "C0"), ("1", "f")]);
        assert_eq!((&d * &d).degree(), ParamPoly::int(2));
    }

    #[test]
    fn degree_of_polarized_line_class() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let pol = cls(&r, &[("m", "h1"), ("n", "h3")]);
        let line = cls(&r, &[("a", "h1"), ("b", "h3")]);
        assert_eq!((&pol.pow(3) * &line).degree(), v("a*n^3 + 3*b*m*n^2"));
        assert_eq!(GradedClass::named(&r, "h1*h3^3").unwrap().degree(), ParamPoly::one());
        assert!(GradedClass::named(&r, "h3^2").unwrap().degree().is_zero());
    }

    #[test]
    fn fiber_restrictions() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let x = cls(&r, &[("8", "h1*h3"), ("6", "h3^2")]);
        let p3 = ring_make(RingId::P3).unwrap();
        assert_eq!(restrict_fiber(&x, Fiber::Horizontal).unwrap(), cls(&p3, &[("6", "h^2")]));
        let c1 = cls(&r, &[("2", "h1"), ("4", "h3")]);
        assert_eq!(restrict_fiber(&c1, Fiber::Horizontal).unwrap(), cls(&p3, &[("4", "h")]));
        let p1 = ring_make(RingId::P1).unwrap();
        assert_eq!(restrict_fiber(&c1, Fiber::Vertical).unwrap(), cls(&p1, &[("2", "h")]));
        let q = ring_make(RingId::P1xP1).unwrap();
        assert_eq!(restrict_to_line(&x).unwrap(), cls(&q, &[("8", "h1*h2")]));
        assert!(restrict_fiber(&GradedClass::one(&q), Fiber::Vertical).is_err());
    }

    #[test]
    fn ring_mismatch() {
        let a = GradedClass::one(&ring_make(RingId::P1).unwrap());
        let b = GradedClass::one(&ring_make(RingId::P3).unwrap());
        assert!(matches!(class_mul(&a, &b), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn tangent_classes() {
        let r = ring_make(RingId::P1xP3).unwrap();
        assert_eq!(
            GradedClass::tangent_chern(&r).homogeneous(1),
            cls(&r, &[("2", "h1"), ("4", "h3")])
        );
        // Euler number of P1 x P3 is 2 * 4
        assert_eq!(GradedClass::tangent_chern(&r).degree(), ParamPoly::int(8));
        let s = ring_make(RingId::Sigma(2)).unwrap();
        assert_eq!(GradedClass::tangent_chern(&s).degree(), ParamPoly::int(4));
    }

    #[test]
    fn display() {
        let r = ring_make(RingId::P1xP3).unwrap();
        let x = cls(&r, &[("2*a + 2", "h1"), ("-4", "h3"), ("1", "h3^2")]);
        assert_eq!(x.to_string(), "(2*a + 2)*h1 - 4*h3 + h3^2");
    }
}
