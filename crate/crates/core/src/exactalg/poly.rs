use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{rat, Rat};

/// A monomial in named variables: `(name, exponent)` pairs sorted by name,
/// every exponent nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v.into()).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v == var)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    /// Splits into the part in `vars` and the remaining part.
    pub fn split(&self, vars: &BTreeSet<&str>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self
            .0
            .iter()
            .cloned()
            .partition(|(v, _)| vars.contains(v.as_str()));
        (Monomial(inside), Monomial(outside))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

/// Graded lexicographic order, variables ranked alphabetically (`a > b > ...`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `self` has an alphabetically earlier variable that `other` lacks
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over the rationals in named formal
/// parameters. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(name: &str) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(Monomial::var(name), Rat::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> ParamPoly {
        let mut base = self.clone();
        let mut acc = ParamPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces every occurrence of `var` by `value`.
    pub fn substitute(&self, var: &str, value: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        let mut powers: BTreeMap<u32, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let rest = Monomial(m.0.iter().filter(|(v, _)| v != var).cloned().collect());
            let pw = powers.entry(e).or_insert_with(|| value.pow(e)).clone();
            out += &(&ParamPoly::monomial(rest, c.clone()) * &pw);
        }
        out
    }

    /// Substitutes rational values for some variables; the rest stay formal.
    pub fn eval_partial(&self, values: &BTreeMap<String, Rat>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for (v, e) in &m.0 {
                match values.get(v) {
                    Some(x) => coef *= num_traits::pow(x.clone(), *e as usize),
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), coef);
        }
        out
    }

    /// Full evaluation; `None` if some variable has no value.
    pub fn eval(&self, values: &BTreeMap<String, Rat>) -> Option<Rat> {
        self.eval_partial(values).constant_value()
    }

    /// Evaluation at integer values.
    pub fn eval_ints(&self, values: &[(&str, i64)]) -> ParamPoly {
        let map = values.iter().map(|&(v, x)| (v.to_string(), rat(x))).collect();
        self.eval_partial(&map)
    }

    /// Collects on monomials in `vars`; the coefficients are polynomials in the
    /// remaining variables.
    pub fn collect(&self, vars: &[&str]) -> BTreeMap<Monomial, ParamPoly> {
        let set: BTreeSet<&str> = vars.iter().copied().collect();
        let mut out: BTreeMap<Monomial, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(&set);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficients as a dense vector in a single variable, if univariate in it.
    pub fn univariate_coeffs(&self, var: &str) -> Option<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().any(|(v, _)| v != var) {
                return None;
            }
            out[m.exponent(var) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(coeffs: &[Rat], var: &str) -> ParamPoly {
        ParamPoly::from_terms(coeffs.iter().enumerate().map(|(k, c)| {
            let m = if k == 0 {
                Monomial::one()
            } else {
                Monomial(vec![(var.to_string(), k as u32)])
            };
            (m, c.clone())
        }))
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::int(n)
    }
}

impl From<Rat> for ParamPoly {
    fn from(c: Rat) -> Self {
        ParamPoly::constant(c)
    }
}

impl fmt::Display for ParamPoly {
    /// Canonical form: terms in descending graded-lex order, e.g.
    /// `1/3*a*b^3 + 4*a*b^2 - 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(mut self) -> ParamPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: &ParamPoly) -> ParamPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<ParamPoly> for &ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for ParamPoly {
    fn sum<I: Iterator<Item = ParamPoly>>(iter: I) -> Self {
        let mut acc = ParamPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ParamPoly {
        ParamPoly::var(s)
    }

    #[test]
    fn difference_of_squares() {
        let p = (v("a") + v("b")) * (v("a") - v("b"));
        let expected = v("a").pow(2) - v("b").pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "a^2 - b^2");
    }

    #[test]
    fn additive_identity() {
        let p = v("x") * ParamPoly::int(3) + ParamPoly::int(7);
        assert_eq!(&p + &ParamPoly::zero(), p);
    }

    #[test]
    fn root_substitution() {
        let p = (v("x") - ParamPoly::int(2)) * v("a");
        assert!(p.eval_ints(&[("x", 2)]).is_zero());
        assert!(p.substitute("x", &ParamPoly::int(2)).is_zero());
    }

    #[test]
    fn graded_lex_ordering() {
        let a = Monomial::var("a");
        let b2 = Monomial::from_pairs([("b", 2)]);
        let ab = Monomial::from_pairs([("a", 1), ("b", 1)]);
        let a2 = Monomial::from_pairs([("a", 2)]);
        assert!(b2 > a);
        assert!(a2 > ab && ab > b2);
        assert!(Monomial::var("a") > Monomial::var("b"));
    }

    #[test]
    fn display_rationals_and_signs() {
        let p = ParamPoly::constant(Rat::new(34.into(), 3.into())) * v("b") - ParamPoly::int(6);
        assert_eq!(p.to_string(), "34/3*b - 6");
        assert_eq!((-v("a")).to_string(), "-a");
        assert_eq!(ParamPoly::zero().to_string(), "0");
    }

    #[test]
    fn collect_on_free_variables() {
        // (x-2) a + (x+y) b + x*y
        let p = (v("x") - ParamPoly::int(2)) * v("a") + (v("x") + v("y")) * v("b") + v("x") * v("y");
        let c = p.collect(&["a", "b"]);
        assert_eq!(c.len(), 3);
        assert_eq!(c[&Monomial::var("a")], v("x") - ParamPoly::int(2));
        assert_eq!(c[&Monomial::one()], v("x") * v("y"));
    }
}
