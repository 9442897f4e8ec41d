use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ParamPoly, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, coefficients low to high,
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.leading()))
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quo[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn to_param(&self, var: &str) -> ParamPoly {
        ParamPoly::from_univariate(&self.coeffs, var)
    }

    pub fn from_param(p: &ParamPoly, var: &str) -> Result<UniPoly> {
        p.univariate_coeffs(var)
            .map(UniPoly::new)
            .ok_or_else(|| Error::NotUnivariate(var.to_string()))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_param("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rat::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Monic gcd of two polynomials univariate in `var`; `gcd(p, 0)` is `p` made monic.
pub fn gcd_univariate(p: &ParamPoly, q: &ParamPoly, var: &str) -> Result<ParamPoly> {
    let a = UniPoly::from_param(p, var)?;
    let b = UniPoly::from_param(q, var)?;
    Ok(a.gcd(&b).to_param(var))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_univariate(&p("t^2 - 1"), &p("t - 1"), "t").unwrap(), p("t - 1"));
        assert_eq!(gcd_univariate(&p("t^2"), &p("t^3"), "t").unwrap(), p("t^2"));
        assert_eq!(gcd_univariate(&p("t^2 + 1"), &p("t - 1"), "t").unwrap(), p("1"));
        assert_eq!(gcd_univariate(&p("2*t + 4"), &ParamPoly::zero(), "t").unwrap(), p("t + 2"));
    }

    #[test]
    fn coprime_by_evaluation() {
        // t - 1 has its only root at 1, where t^2 + 1 = 2
        let a = UniPoly::from_param(&p("t^2 + 1"), "t").unwrap();
        assert_eq!(a.eval(&Rat::one()), Rat::from_integer(2.into()));
    }

    #[test]
    fn not_univariate() {
        assert_eq!(
            gcd_univariate(&p("t*s"), &p("t"), "t"),
            Err(Error::NotUnivariate("t".into()))
        );
    }

    #[test]
    fn division_identity() {
        let a = UniPoly::from_param(&p("t^5 - 3*t^2 + 1/2"), "t").unwrap();
        let b = UniPoly::from_param(&p("2*t^2 + t"), "t").unwrap();
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn squarefree_part() {
        let a = UniPoly::from_param(&p("(t - 1)^2 * (t + 1)^2"), "t").unwrap();
        assert_eq!(a.squarefree().to_param("t"), p("t^2 - 1"));
    }
}
