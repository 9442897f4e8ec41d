//! Cohomology dimensions: Bott on P^n, Künneth on products, Riemann-Roch on
//! Hirzebruch surfaces, and a dimension chase for short exact sequences.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::binomial;

use crate::chow::{ring_make, GradedClass, RingId};
use crate::error::{Error, Result};
use crate::exactalg::{ratio, ParamPoly};

/// `h^0, ..., h^n` of a sheaf.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohomTable(Vec<u64>);

impl CohomTable {
    pub fn new(dims: Vec<u64>) -> Self {
        CohomTable(dims)
    }

    pub fn zero(len: usize) -> Self {
        CohomTable(vec![0; len])
    }

    pub fn dims(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn h(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Alternating sum.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn reversed(&self) -> Self {
        CohomTable(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for CohomTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl From<Vec<u64>> for CohomTable {
    fn from(v: Vec<u64>) -> Self {
        CohomTable(v)
    }
}

/// Hodge numbers `h^i(O_X)` of an abelian surface, padded to length 5.
pub const ABELIAN_SURFACE_STRUCTURE: [u64; 5] = [1, 2, 1, 0, 0];

/// `h^i(P^n, O(k))`.
pub fn cohom_pn(n: i64, k: i64) -> Result<CohomTable> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("projective dimension {n} < 1")));
    }
    let mut dims = vec![0u64; n as usize + 1];
    if k >= 0 {
        dims[0] = binomial((n + k) as u64, n as u64);
    }
    if -k > n {
        dims[n as usize] = binomial((-k - 1) as u64, n as u64);
    }
    Ok(CohomTable(dims))
}

/// Cohomology of an exterior tensor product.
pub fn kunneth(ta: &CohomTable, tb: &CohomTable) -> CohomTable {
    if ta.is_empty() || tb.is_empty() {
        return CohomTable(Vec::new());
    }
    let mut dims = vec![0u64; ta.len() + tb.len() - 1];
    for (p, &x) in ta.0.iter().enumerate() {
        for (q, &y) in tb.0.iter().enumerate() {
            dims[p + q] += x * y;
        }
    }
    CohomTable(dims)
}

/// `h^i(P1 x P3, O(a, b))`.
pub fn line_bundle_table(a: i64, b: i64) -> CohomTable {
    kunneth(&cohom_pn(1, a).expect("n = 1"), &cohom_pn(3, b).expect("n = 3"))
}

/// Compares `O(a,b)` with the reversed table of `O(-2-a, -4-b)`.
pub fn serre_dual_check(a: i64, b: i64) -> bool {
    line_bundle_table(a, b).reversed() == line_bundle_table(-2 - a, -4 - b)
}

/// `chi(O(alpha C0 + beta f))` on the Hirzebruch surface `Sigma_e`.
pub fn chi_sigma(e: i64, alpha: &ParamPoly, beta: &ParamPoly) -> Result<ParamPoly> {
    if e < 0 {
        return Err(Error::InvalidParameter(format!("Hirzebruch index {e} < 0")));
    }
    let ring = ring_make(RingId::Sigma(e))?;
    let d = GradedClass::combination(&ring, [(alpha.clone(), "C0"), (beta.clone(), "f")])?;
    let k = GradedClass::canonical(&ring);
    let half = ParamPoly::constant(ratio(1, 2));
    Ok(&ParamPoly::one() + &(&(&d * &(&d - &k)).degree() * &half))
}

/// `h^i(Sigma_0, O(alpha C0 + beta f))`, with `Sigma_0 = P1 x P1`.
pub fn cohom_sigma0(alpha: i64, beta: i64) -> CohomTable {
    kunneth(&cohom_pn(1, alpha).expect("n = 1"), &cohom_pn(1, beta).expect("n = 1"))
}

/// One term of `0 -> A -> B -> C -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Known(CohomTable),
    Unknown,
}

/// The maps of the long exact sequence at level `i`:
/// `H^i(A) -alpha-> H^i(B) -beta-> H^i(C) -delta-> H^{i+1}(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Alpha,
    Beta,
    Delta,
}

/// A declared rank for one map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hint {
    pub map: MapKind,
    pub index: usize,
    pub rank: u64,
}

impl Hint {
    pub fn new(map: MapKind, index: usize, rank: u64) -> Self {
        Hint { map, index, rank }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesProblem {
    pub a: Slot,
    pub b: Slot,
    pub c: Slot,
    pub hints: Vec<Hint>,
}

impl LesProblem {
    pub fn new(a: Slot, b: Slot, c: Slot) -> Self {
        LesProblem { a, b, c, hints: Vec::new() }
    }

    pub fn with_hint(mut self, hint: Hint) -> Self {
        self.hints.push(hint);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LesOutcome {
    Solved(CohomTable),
    /// Every feasible table, sorted.
    Underdetermined(Vec<CohomTable>),
}

impl LesOutcome {
    pub fn solved(&self) -> Option<&CohomTable> {
        match self {
            LesOutcome::Solved(t) => Some(t),
            LesOutcome::Underdetermined(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Which {
    A,
    B,
    C,
}

/// Solves for the unknown term of a short exact sequence.
///
/// The unknowns are the ranks `e_i` of the connecting maps; every assignment
/// consistent with exactness, the rank bounds and the hints is enumerated.
pub fn les_solve(problem: &LesProblem) -> Result<LesOutcome> {
    let slots = [(&problem.a, Which::A), (&problem.b, Which::B), (&problem.c, Which::C)];
    let unknown: Vec<Which> = slots
        .iter()
        .filter(|(s, _)| matches!(s, Slot::Unknown))
        .map(|&(_, w)| w)
        .collect();
    if unknown.len() != 1 {
        return Err(Error::BadUnknowns(unknown.len()));
    }
    let which = unknown[0];
    let known: Vec<&CohomTable> = slots
        .iter()
        .filter_map(|(s, _)| match s {
            Slot::Known(t) => Some(t),
            Slot::Unknown => None,
        })
        .collect();
    let len = known[0].len();
    if known[1].len() != len || len == 0 {
        return Err(Error::InvalidParameter("tables of different lengths".into()));
    }
    for h in &problem.hints {
        if h.index >= len {
            return Err(Error::InvalidParameter(format!("hint index {} out of range", h.index)));
        }
    }
    let get = |s: &Slot| match s {
        Slot::Known(t) => Some(t.0.iter().map(|&d| d as i64).collect::<Vec<i64>>()),
        Slot::Unknown => None,
    };
    let (ka, kb, kc) = (get(&problem.a), get(&problem.b), get(&problem.c));

    // e_{len-1} = 0 since H^len(A) = 0
    let upper: Vec<i64> = (0..len)
        .map(|i| {
            if i + 1 == len {
                return 0;
            }
            match which {
                Which::A => kc.as_ref().unwrap()[i],
                Which::B => kc.as_ref().unwrap()[i].min(ka.as_ref().unwrap()[i + 1]),
                Which::C => ka.as_ref().unwrap()[i + 1],
            }
        })
        .collect();

    let mut found = BTreeSet::new();
    let mut e = vec![0i64; len];
    'scan: loop {
        if let Some(t) = evaluate(which, &ka, &kb, &kc, &e, &problem.hints) {
            found.insert(t);
        }
        for k in (0..len).rev() {
            if e[k] < upper[k] {
                e[k] += 1;
                continue 'scan;
            }
            e[k] = 0;
        }
        break;
    }
    match found.len() {
        0 => Err(Error::Inconsistent),
        1 => Ok(LesOutcome::Solved(found.into_iter().next().unwrap())),
        _ => Ok(LesOutcome::Underdetermined(found.into_iter().collect())),
    }
}

fn evaluate(
    which: Which,
    ka: &Option<Vec<i64>>,
    kb: &Option<Vec<i64>>,
    kc: &Option<Vec<i64>>,
    e: &[i64],
    hints: &[Hint],
) -> Option<CohomTable> {
    let len = e.len();
    let prev = |i: usize| if i == 0 { 0 } else { e[i - 1] };
    // h^i(B) = h^i(A) - e_{i-1} + h^i(C) - e_i
    let fill = |i: usize| -> i64 {
        match which {
            Which::A => kb.as_ref().unwrap()[i] - kc.as_ref().unwrap()[i] + prev(i) + e[i],
            Which::B => ka.as_ref().unwrap()[i] - prev(i) + kc.as_ref().unwrap()[i] - e[i],
            Which::C => kb.as_ref().unwrap()[i] - ka.as_ref().unwrap()[i] + prev(i) + e[i],
        }
    };
    let computed: Vec<i64> = (0..len).map(fill).collect();
    let pick = |k: &Option<Vec<i64>>| k.clone().unwrap_or_else(|| computed.clone());
    let (a, b, c) = (pick(ka), pick(kb), pick(kc));
    for i in 0..len {
        let next_a = if i + 1 < len { a[i + 1] } else { 0 };
        let alpha = a[i] - prev(i);
        let beta = c[i] - e[i];
        let ok = a[i] >= 0
            && b[i] >= 0
            && c[i] >= 0
            && e[i] >= 0
            && e[i] <= next_a
            && (0..=b[i]).contains(&alpha)
            && (0..=b[i]).contains(&beta);
        if !ok {
            return None;
        }
    }
    for h in hints {
        let i = h.index;
        let rank = match h.map {
            MapKind::Alpha => a[i] - prev(i),
            MapKind::Beta => c[i] - e[i],
            MapKind::Delta => e[i],
        };
        if rank != h.rank as i64 {
            return None;
        }
    }
    Some(CohomTable(computed.into_iter().map(|d| d as u64).collect()))
}
