use std::collections::BTreeMap;

use num_traits::Zero;

use super::{rat, ParamPoly, Rat};
use crate::error::{Error, Result};

/// Default half-width of the integer search box per unknown.
pub const DEFAULT_BOUND: i64 = 16;

/// Inclusive integer bounds for each unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    bounds: Vec<(String, i64, i64)>,
}

impl SearchBox {
    pub fn new<S: Into<String>>(bounds: impl IntoIterator<Item = (S, i64, i64)>) -> Self {
        SearchBox { bounds: bounds.into_iter().map(|(v, lo, hi)| (v.into(), lo, hi)).collect() }
    }

    /// `|u| <= bound` for every unknown.
    pub fn symmetric(unknowns: &[&str], bound: i64) -> Self {
        Self::new(unknowns.iter().map(|&u| (u, -bound, bound)))
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &str> {
        self.bounds.iter().map(|(v, _, _)| v.as_str())
    }
}

/// An integer assignment to the unknowns.
pub type Assignment = BTreeMap<String, i64>;

/// Compiled coefficient: terms as (coefficient, [(unknown index, exponent)]).
struct Compiled(Vec<(Rat, Vec<(usize, u32)>)>);

impl Compiled {
    fn eval_is_zero(&self, point: &[i64]) -> bool {
        let mut acc = Rat::zero();
        for (c, factors) in &self.0 {
            let mut v = c.clone();
            for &(i, e) in factors {
                v *= rat(point[i].pow(e));
            }
            acc += v;
        }
        acc.is_zero()
    }
}

/// Finds every integer point of `bounds` at which `identity`, viewed as a
/// polynomial in the `free` variables, vanishes identically.
///
/// The coefficients of each monomial in the `free` variables are collected as
/// polynomials in the unknowns; the box is then scanned exhaustively and a
/// point is kept only if all coefficients vanish exactly. Each returned point
/// also re-substitutes to the zero polynomial.
pub fn poly_solve_zero_identity(
    identity: &ParamPoly,
    free: &[&str],
    bounds: &SearchBox,
) -> Result<Vec<Assignment>> {
    for (v, lo, hi) in &bounds.bounds {
        if lo > hi {
            return Err(Error::EmptyBox(v.clone()));
        }
    }
    let names: Vec<&str> = bounds.unknowns().collect();
    let coeffs = identity.collect(free);

    let mut compiled = Vec::with_capacity(coeffs.len());
    for coeff in coeffs.values() {
        let mut terms = Vec::new();
        for (m, c) in coeff.terms() {
            let mut factors = Vec::new();
            for (v, e) in m.factors() {
                let idx = names.iter().position(|n| n == v).ok_or_else(|| {
                    Error::InvalidParameter(format!("variable `{v}` is neither free nor an unknown"))
                })?;
                factors.push((idx, *e));
            }
            terms.push((c.clone(), factors));
        }
        compiled.push(Compiled(terms));
    }
    // cheap coefficients first so most points are rejected early
    compiled.sort_by_key(|c| c.0.len());

    let mut solutions = Vec::new();
    let mut point: Vec<i64> = bounds.bounds.iter().map(|&(_, lo, _)| lo).collect();
    'scan: loop {
        if compiled.iter().all(|c| c.eval_is_zero(&point)) {
            solutions.push(names.iter().map(|n| n.to_string()).zip(point.iter().copied()).collect());
        }
        for (k, (_, lo, hi)) in bounds.bounds.iter().enumerate().rev() {
            if point[k] < *hi {
                point[k] += 1;
                continue 'scan;
            }
            point[k] = *lo;
        }
        break;
    }
    Ok(solutions)
}

/// Substitutes an assignment into `identity`.
pub fn resubstitute(identity: &ParamPoly, assignment: &Assignment) -> ParamPoly {
    let values = assignment.iter().map(|(k, &v)| (k.clone(), rat(v))).collect();
    identity.eval_partial(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    fn assignment(pairs: &[(&str, i64)]) -> Assignment {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn single_linear_coefficient() {
        let sols = poly_solve_zero_identity(&p("a*x"), &["a", "b"], &SearchBox::symmetric(&["x"], 3)).unwrap();
        assert_eq!(sols, vec![assignment(&[("x", 0)])]);
    }

    #[test]
    fn empty_box_is_an_error() {
        let b = SearchBox::new([("x", 1, 0)]);
        assert_eq!(
            poly_solve_zero_identity(&p("a*x"), &["a"], &b),
            Err(Error::EmptyBox("x".into()))
        );
    }

    #[test]
    fn stray_variable_is_rejected() {
        let r = poly_solve_zero_identity(&p("a*x + z"), &["a"], &SearchBox::symmetric(&["x"], 2));
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn solutions_resubstitute_to_zero() {
        let id = p("(x - 2)*a + (x + y + 2*d - 8)*b + (y + d + 3)*(x + 3) + 3*d - 37");
        let sols = poly_solve_zero_identity(&id, &["a", "b"], &SearchBox::symmetric(&["x", "y", "d"], DEFAULT_BOUND)).unwrap();
        assert_eq!(sols, vec![assignment(&[("d", 4), ("x", 2), ("y", -2)])]);
        for s in &sols {
            assert!(resubstitute(&id, s).is_zero());
        }
    }

    #[test]
    fn second_identity() {
        let id = p("(x - 2)*a + (y + 2*d - 8)*b + (y - x + d + 3)*(x + 3) + 3*d - 37");
        let sols = poly_solve_zero_identity(&id, &["a", "b"], &SearchBox::symmetric(&["x", "y", "d"], DEFAULT_BOUND)).unwrap();
        assert_eq!(sols, vec![assignment(&[("d", 4), ("x", 2), ("y", 0)])]);
    }
}
