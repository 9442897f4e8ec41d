//! Slopes on P1 x P3 and the slope-stability decision for `E`.

use std::fmt;
use std::sync::OnceLock;

use crate::chow::{ring_make, GradedClass, RingId};
use crate::error::{Error, Result};
use crate::exactalg::ParamPoly;

/// The ample class `O(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Polarization {
    m: i64,
    n: i64,
}

impl Polarization {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m <= 0 || n <= 0 {
            return Err(Error::InvalidParameter(format!("O({m},{n}) is not ample")));
        }
        Ok(Polarization { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

/// `deg((a h1 + b h3)(m h1 + n h3)^3)` with all four entries symbolic.
pub fn slope_dot_symbolic(a: &ParamPoly, b: &ParamPoly, m: &ParamPoly, n: &ParamPoly) -> ParamPoly {
    let ring = ring_make(RingId::P1xP3).expect("fixed ring");
    let line = GradedClass::combination(&ring, [(a.clone(), "h1"), (b.clone(), "h3")]).expect("generators");
    let pol = GradedClass::combination(&ring, [(m.clone(), "h1"), (n.clone(), "h3")]).expect("generators");
    (&line * &pol.pow(3)).degree()
}

/// Slope of `O(a, b)` with respect to `pol`.
pub fn slope_dot(a: i64, b: i64, pol: Polarization) -> ParamPoly {
    slope_dot_symbolic(&ParamPoly::int(a), &ParamPoly::int(b), &ParamPoly::int(pol.m), &ParamPoly::int(pol.n))
}

fn slope_int(a: i64, b: i64, pol: Polarization) -> i64 {
    let v = slope_dot(a, b, pol).constant_value().expect("numeric slope");
    assert!(v.is_integer());
    v.to_integer().try_into().expect("slope fits in i64")
}

/// Whether `h^0(I_X(p, q))` is nonzero, as far as is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubsheafStatus {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for SubsheafStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsheafStatus::Yes => "yes",
            SubsheafStatus::No => "no",
            SubsheafStatus::Unknown => "unknown",
        })
    }
}

/// Twists `(p, q)` at which a section of `I_X(p, q)` is known to exist: the
/// octic in the second factor, the `(4, 2)` divisor, and `(2, 4)` from the
/// defining sequence of `E`.
pub const POSITIVE_INSTANCES: [(i64, i64); 3] = [(0, 8), (2, 4), (4, 2)];

/// The vanishing clauses alone.
pub fn vanishing_rule(p: i64, q: i64) -> bool {
    p < 0 || q < 2 || (p == 0 && q < 8) || (q == 2 && p <= 2)
}

pub fn subsheaf_status(p: i64, q: i64) -> SubsheafStatus {
    if vanishing_rule(p, q) {
        return SubsheafStatus::No;
    }
    let dominates = POSITIVE_INSTANCES.iter().any(|&(x, y)| p >= x && q >= y);
    if dominates || (q >= 8 && p >= 0) {
        SubsheafStatus::Yes
    } else {
        SubsheafStatus::Unknown
    }
}

/// Every clause is constant for `p > 2` and `q > 8`, so minimal twists lie in a small window.
const CORNER_WINDOW: i64 = 16;

/// Maximal `(a, b)` for which a map `O(a, b) -> E` is not excluded, i.e.
/// `subsheaf_status(2 - a, 4 - b) != No`, sorted.
pub fn destabilizer_corners() -> Vec<(i64, i64)> {
    static CORNERS: OnceLock<Vec<(i64, i64)>> = OnceLock::new();
    CORNERS.get_or_init(scan_corners).clone()
}

fn scan_corners() -> Vec<(i64, i64)> {
    let allowed: Vec<(i64, i64)> = (0..=CORNER_WINDOW)
        .flat_map(|p| (0..=CORNER_WINDOW).map(move |q| (p, q)))
        .filter(|&(p, q)| subsheaf_status(p, q) != SubsheafStatus::No)
        .collect();
    let mut corners: Vec<(i64, i64)> = allowed
        .iter()
        .filter(|&&(p, q)| !allowed.iter().any(|&(x, y)| (x, y) != (p, q) && x <= p && y <= q))
        .map(|&(p, q)| (2 - p, 4 - q))
        .collect();
    corners.sort();
    corners
}

/// Corners of maximal slope (several on ties).
pub fn corner_argmax(pol: Polarization) -> Vec<(i64, i64)> {
    let corners = destabilizer_corners();
    let best = corners.iter().map(|&(a, b)| slope_int(a, b, pol)).max().expect("corners");
    corners.into_iter().filter(|&(a, b)| slope_int(a, b, pol) == best).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    SemistableNotStable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::SemistableNotStable => "semistable_not_stable",
            Stability::Unstable => "unstable",
        })
    }
}

/// Compares the best corner slope with half the slope of `det E = O(2, 4)`.
pub fn stability_decide(pol: Polarization) -> Stability {
    let half_det = slope_int(1, 2, pol);
    let best = destabilizer_corners()
        .into_iter()
        .map(|(a, b)| slope_int(a, b, pol))
        .max()
        .expect("corners");
    match best.cmp(&half_det) {
        std::cmp::Ordering::Less => Stability::Stable,
        std::cmp::Ordering::Equal => Stability::SemistableNotStable,
        std::cmp::Ordering::Greater => Stability::Unstable,
    }
}

/// Half-det slope `n^3 + 6 m n^2` as a polynomial in `m`, `n`.
pub fn half_det_slope() -> ParamPoly {
    slope_dot_symbolic(&ParamPoly::one(), &ParamPoly::int(2), &ParamPoly::var("m"), &ParamPoly::var("n"))
}
