//! The finite group generated by two explicit matrix pairs, plus finite
//! abelian group bookkeeping for polarization types.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 512;

/// Square integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SqMat<const N: usize>(pub [[i64; N]; N]);

impl<const N: usize> SqMat<N> {
    pub fn identity() -> Self {
        let mut m = [[0; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        SqMat(m)
    }

    pub fn diag(d: [i64; N]) -> Self {
        let mut m = [[0; N]; N];
        for i in 0..N {
            m[i][i] = d[i];
        }
        SqMat(m)
    }

    /// Determinant by cofactor expansion; fine for `N <= 4`.
    pub fn det(&self) -> i64 {
        let rows: Vec<Vec<i64>> = self.0.iter().map(|r| r.to_vec()).collect();
        det(&rows)
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

impl<const N: usize> Mul for SqMat<N> {
    type Output = SqMat<N>;
    fn mul(self, rhs: SqMat<N>) -> SqMat<N> {
        let mut m = [[0; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        SqMat(m)
    }
}

/// An element of `GL_2 x GL_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatPair {
    pub first: SqMat<2>,
    pub second: SqMat<4>,
}

impl MatPair {
    pub fn new(first: SqMat<2>, second: SqMat<4>) -> Result<Self> {
        if first.det() == 0 || second.det() == 0 {
            return Err(Error::InvalidParameter("singular matrix".into()));
        }
        Ok(MatPair { first, second })
    }

    pub fn identity() -> Self {
        MatPair { first: SqMat::identity(), second: SqMat::identity() }
    }

    pub fn is_identity(&self) -> bool {
        *self == MatPair::identity()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(MatPair::identity(), |acc, _| acc * *self)
    }

    /// Multiplicative order, if at most `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut x = *self;
        for k in 1..=cap {
            if x.is_identity() {
                return Some(k);
            }
            x = x * *self;
        }
        None
    }
}

impl Mul for MatPair {
    type Output = MatPair;
    fn mul(self, rhs: MatPair) -> MatPair {
        MatPair { first: self.first * rhs.first, second: self.second * rhs.second }
    }
}

/// The swap generator.
pub fn sigma() -> MatPair {
    MatPair {
        first: SqMat([[0, 1], [1, 0]]),
        second: SqMat([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    }
}

/// The sign generator.
pub fn tau() -> MatPair {
    MatPair { first: SqMat::diag([1, -1]), second: SqMat::diag([1, -1, 1, -1]) }
}

/// A finite group of matrix pairs with its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMatGroup {
    elements: BTreeSet<MatPair>,
    generators: Vec<MatPair>,
}

impl FinMatGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = &MatPair> {
        self.elements.iter()
    }

    pub fn generators(&self) -> &[MatPair] {
        &self.generators
    }

    pub fn contains(&self, g: &MatPair) -> bool {
        self.elements.contains(g)
    }

    /// Inverse inside the group: `g^(ord g - 1)`.
    pub fn inverse(&self, g: &MatPair) -> MatPair {
        let k = g.order(self.order()).expect("element of a finite group");
        g.pow(k as u32 - 1)
    }
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn group_closure(gens: &[MatPair], cap: usize) -> Result<FinMatGroup> {
    let mut elements = BTreeSet::from([MatPair::identity()]);
    let mut queue = VecDeque::from([MatPair::identity()]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g * *s;
            if elements.insert(h) {
                if elements.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(h);
            }
        }
    }
    Ok(FinMatGroup { elements, generators: gens.to_vec() })
}

/// The dihedral presentation with `kappa = sigma tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationReport {
    pub sigma_squared: bool,
    pub tau_squared: bool,
    pub kappa_order_four: bool,
    pub tau_kappa_tau_inverse: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.sigma_squared && self.tau_squared && self.kappa_order_four && self.tau_kappa_tau_inverse
    }
}

pub fn relation_check(g: &FinMatGroup) -> Result<RelationReport> {
    let [s, t] = g.generators() else {
        return Err(Error::InvalidParameter(format!("expected 2 generators, got {}", g.generators().len())));
    };
    let kappa = *s * *t;
    Ok(RelationReport {
        sigma_squared: s.pow(2).is_identity(),
        tau_squared: t.pow(2).is_identity(),
        kappa_order_four: kappa.order(4) == Some(4),
        tau_kappa_tau_inverse: *t * kappa * *t == g.inverse(&kappa),
    })
}

/// Order of `[G, G]` and the invariants of `G / [G, G]`.
pub fn commutator_structure(g: &FinMatGroup) -> Result<(usize, FinAbGroup)> {
    let mut commutators = BTreeSet::new();
    for x in g.elements() {
        for y in g.elements() {
            commutators.insert(g.inverse(x) * g.inverse(y) * *x * *y);
        }
    }
    let gens: Vec<MatPair> = commutators.into_iter().collect();
    let h = group_closure(&gens, g.order())?;
    let quotient_order = (g.order() / h.order()) as u64;
    // number of cosets c with c^k = 1, for every k dividing the order
    let profile: Vec<u64> = divisors(quotient_order)
        .into_iter()
        .map(|k| {
            let n = g.elements().filter(|x| h.contains(&x.pow(k as u32))).count();
            (n / h.order()) as u64
        })
        .collect();
    let inv = abelian_chains(quotient_order)
        .into_iter()
        .find(|chain| {
            divisors(quotient_order)
                .iter()
                .zip(&profile)
                .all(|(&k, &n)| chain.iter().map(|&d| d.gcd(&k)).product::<u64>() == n)
        })
        .ok_or(Error::Inconsistent)?;
    Ok((h.order(), FinAbGroup::new(&inv)?))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// All divisibility chains `d_1 | d_2 | ...` with `d_i > 1` and product `n`.
fn abelian_chains(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in divisors(rest).into_iter().filter(|&d| d > 1 && d % min == 0) {
            acc.push(d);
            go(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// `Z/d_1 x ... x Z/d_k` in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    invariants: Vec<u64>,
}

impl FinAbGroup {
    /// Normalizes arbitrary cyclic orders to a divisibility chain, dropping 1s.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidParameter("cyclic order 0".into()));
        }
        // prime -> exponents across factors
        let mut primes: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in orders {
            let mut d = d;
            let mut p = 2;
            while d > 1 {
                let mut e = 0;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                if e > 0 {
                    primes.entry(p).or_default().push(e);
                }
                p += 1;
            }
        }
        let len = primes.values().map(Vec::len).max().unwrap_or(0);
        let mut invariants = vec![1u64; len];
        for (p, mut exps) in primes {
            exps.sort_unstable();
            let offset = len - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                invariants[offset + i] *= p.pow(e);
            }
        }
        Ok(FinAbGroup { invariants })
    }

    pub fn trivial() -> Self {
        FinAbGroup { invariants: Vec::new() }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    /// The subgroup killed by `k`.
    pub fn torsion(&self, k: u64) -> Self {
        let parts: Vec<u64> = self.invariants.iter().map(|d| d.gcd(&k)).collect();
        FinAbGroup::new(&parts).expect("nonzero orders")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.invariants.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn has_element_of_order(g: &FinAbGroup, k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    Ok(g.exponent().is_multiple_of(k))
}

/// `(L1 + L3)^2` from the intersection numbers.
pub fn tensor_square(self_l1: i64, self_l3: i64, mixed: i64) -> i64 {
    self_l1 + 2 * mixed + self_l3
}

/// `K(L)` for a polarization of type `(1, d)` with `L^2 = 2d`.
pub fn type_from_square(sq: i64) -> Result<FinAbGroup> {
    if sq <= 0 || sq % 2 != 0 {
        return Err(Error::InvalidParameter(format!("self-intersection {sq} is not positive and even")));
    }
    let d = (sq / 2) as u64;
    FinAbGroup::new(&[d, d])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> FinMatGroup {
        group_closure(&[sigma(), tau()], DEFAULT_CAP).unwrap()
    }

    fn ab(v: &[u64]) -> FinAbGroup {
        FinAbGroup::new(v).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(h().order(), 8);
        assert_eq!(group_closure(&[MatPair::identity()], DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(group_closure(&[tau()], DEFAULT_CAP).unwrap().order(), 2);
    }

    #[test]
    fn closure_cap() {
        let shear = MatPair::new(SqMat([[1, 1], [0, 1]]), SqMat::identity()).unwrap();
        assert_eq!(group_closure(&[shear], 50), Err(Error::CapExceeded(50)));
        assert!(MatPair::new(SqMat([[1, 1], [1, 1]]), SqMat::identity()).is_err());
    }

    #[test]
    fn group_is_closed() {
        let g = h();
        for x in g.elements() {
            assert!(g.contains(&g.inverse(x)));
            assert!((*x * g.inverse(x)).is_identity());
            for y in g.elements() {
                assert!(g.contains(&(*x * *y)));
            }
        }
    }

    #[test]
    fn order_spectrum_is_dihedral() {
        let mut counts = BTreeMap::new();
        for x in h().elements() {
            *counts.entry(x.order(8).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(counts, BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
    }

    #[test]
    fn relations() {
        assert!(relation_check(&h()).unwrap().all());
        let swapped = group_closure(&[tau(), sigma()], DEFAULT_CAP).unwrap();
        let r = relation_check(&swapped).unwrap();
        assert!(r.sigma_squared && r.tau_squared);
        let id = group_closure(&[MatPair::identity(), MatPair::identity()], DEFAULT_CAP).unwrap();
        assert!(!relation_check(&id).unwrap().kappa_order_four);
        let one = group_closure(&[tau()], DEFAULT_CAP).unwrap();
        assert!(relation_check(&one).is_err());
    }

    #[test]
    fn commutators() {
        assert_eq!(commutator_structure(&h()).unwrap(), (2, ab(&[2, 2])));
        let triv = group_closure(&[MatPair::identity()], DEFAULT_CAP).unwrap();
        assert_eq!(commutator_structure(&triv).unwrap(), (1, FinAbGroup::trivial()));
        let c2 = group_closure(&[tau()], DEFAULT_CAP).unwrap();
        assert_eq!(commutator_structure(&c2).unwrap(), (1, ab(&[2])));
        let kappa = sigma() * tau();
        let c4 = group_closure(&[kappa], DEFAULT_CAP).unwrap();
        assert_eq!(commutator_structure(&c4).unwrap(), (1, ab(&[4])));
    }

    #[test]
    fn smith_normalization() {
        assert_eq!(ab(&[6, 2]).invariants(), &[2, 6]);
        assert_eq!(ab(&[2, 3]).invariants(), &[6]);
        assert_eq!(ab(&[4, 6, 1]).invariants(), &[2, 12]);
        assert_eq!(ab(&[1, 1]), FinAbGroup::trivial());
        assert!(FinAbGroup::new(&[0]).is_err());
    }

    #[test]
    fn polarization_types() {
        assert_eq!(tensor_square(0, 8, 6), 20);
        assert_eq!(tensor_square(0, 0, 0), 0);
        assert_eq!(tensor_square(8, 8, 6), 28);
        assert_eq!(type_from_square(20).unwrap(), ab(&[10, 10]));
        assert_eq!(type_from_square(8).unwrap(), ab(&[4, 4]));
        assert_eq!(type_from_square(2).unwrap(), FinAbGroup::trivial());
        assert!(type_from_square(7).is_err());
        assert!(type_from_square(0).is_err());
    }

    #[test]
    fn element_orders() {
        assert!(!has_element_of_order(&ab(&[10, 10]), 4).unwrap());
        assert!(has_element_of_order(&ab(&[4, 4]), 4).unwrap());
        assert!(has_element_of_order(&ab(&[2, 6]), 3).unwrap());
        assert!(has_element_of_order(&FinAbGroup::trivial(), 1).unwrap());
        assert!(has_element_of_order(&ab(&[2]), 0).is_err());
        assert_eq!(ab(&[4, 4]).torsion(2), ab(&[2, 2]));
    }
}
