use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ParamPoly, Rat, UniPoly};
use crate::error::Result;

/// Element of the univariate rational function field `Q(t)`.
///
/// Normalized so that the denominator is monic and coprime to the numerator;
/// structural equality is then field equality. The variable name is supplied
/// only when converting to and from [`ParamPoly`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_rem(&g).0;
        let mut den = den.div_rem(&g).0;
        let lead = den.leading();
        num = num.scale(&(Rat::one() / &lead));
        den = den.monic();
        RatFunc { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn from_param(p: &ParamPoly, var: &str) -> Result<Self> {
        Ok(RatFunc::from_poly(UniPoly::from_param(p, var)?))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value at `t`, `None` at a pole.
    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }

    pub fn inv(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den);
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self * rhs.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        RatFunc::from_param(&s.parse().unwrap(), "t").unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        let a = rf("t^2 - 1") / rf("2*t - 2");
        assert_eq!(a, rf("1/2*t + 1/2"));
        let b = rf("1") / rf("3*t");
        assert_eq!(b.denominator(), &UniPoly::x());
        assert_eq!(b.numerator(), &UniPoly::constant(Rat::new(1.into(), 3.into())));
    }

    #[test]
    fn field_inverse() {
        let a = rf("t^3 + t") / rf("t - 5");
        assert_eq!(a.clone() * a.inv(), RatFunc::one());
        assert!((a.clone() - a).is_zero());
    }
}
