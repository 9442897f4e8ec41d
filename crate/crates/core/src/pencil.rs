//! Rational pencils of quadrics in P3: 4x4 symmetric matrices whose entries
//! are binary forms of a common degree in `l`, `m` (for lambda, mu).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, ParamPoly, Rat, RatFunc, UniPoly};

pub const LAMBDA: &str = "l";
pub const MU: &str = "m";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricPencil {
    entries: [[ParamPoly; 4]; 4],
    degree: u32,
}

impl QuadricPencil {
    /// Checks symmetry and that every nonzero entry is a form of degree `degree` in `l`, `m`.
    pub fn new(entries: [[ParamPoly; 4]; 4], degree: u32) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                let e = &entries[i][j];
                if e != &entries[j][i] {
                    return Err(Error::InvalidParameter(format!("entry ({i},{j}) breaks symmetry")));
                }
                if let Some(v) = e.variables().into_iter().find(|v| v != LAMBDA && v != MU) {
                    return Err(Error::InvalidParameter(format!("entry ({i},{j}) uses `{v}`")));
                }
                if e.terms().any(|(mon, _)| mon.total_degree() != degree) {
                    return Err(Error::DegreeMismatch { expected: degree as usize, found: e.to_string() });
                }
            }
        }
        Ok(QuadricPencil { entries, degree })
    }

    /// Builds the symmetric matrix from its upper triangle, row by row.
    pub fn from_upper(upper: &[ParamPoly], degree: u32) -> Result<Self> {
        if upper.len() != 10 {
            return Err(Error::InvalidParameter(format!("expected 10 entries, got {}", upper.len())));
        }
        let mut entries: [[ParamPoly; 4]; 4] = Default::default();
        let mut it = upper.iter();
        for i in 0..4 {
            for j in i..4 {
                let e = it.next().unwrap().clone();
                entries[j][i] = e.clone();
                entries[i][j] = e;
            }
        }
        QuadricPencil::new(entries, degree)
    }

    /// `sum_k v_k v_k^T` for vectors of forms.
    pub fn sum_of_squares(vectors: &[[ParamPoly; 4]], degree: u32) -> Result<Self> {
        let mut entries: [[ParamPoly; 4]; 4] = Default::default();
        for v in vectors {
            for i in 0..4 {
                for j in 0..4 {
                    entries[i][j] += &(&v[i] * &v[j]);
                }
            }
        }
        QuadricPencil::new(entries, degree)
    }

    pub fn zero(degree: u32) -> Self {
        QuadricPencil { entries: Default::default(), degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entry(&self, i: usize, j: usize) -> &ParamPoly {
        &self.entries[i][j]
    }

    /// Matrix over `Q(t)` in the chart `m = 1`, `t = l`.
    pub fn generic_matrix(&self) -> Matrix<RatFunc> {
        Matrix::from_fn(4, 4, |i, j| RatFunc::from_poly(dehomogenize(&self.entries[i][j])))
    }

    pub fn specialize(&self, l: &Rat, m: &Rat) -> Matrix<Rat> {
        let values = BTreeMap::from([(LAMBDA.to_string(), l.clone()), (MU.to_string(), m.clone())]);
        Matrix::from_fn(4, 4, |i, j| self.entries[i][j].eval(&values).expect("only l and m"))
    }
}

impl fmt::Display for QuadricPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        for row in &self.entries {
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// `F(l, 1)` as a polynomial in `l`. Injective on forms of a fixed degree.
fn dehomogenize(f: &ParamPoly) -> UniPoly {
    UniPoly::from_param(&f.substitute(MU, &ParamPoly::one()), LAMBDA).expect("form in l, m")
}

/// Rank over the function field; specializations can only be lower.
pub fn generic_rank(p: &QuadricPencil) -> usize {
    p.generic_matrix().rank()
}

pub fn rank_at(p: &QuadricPencil, l: &Rat, m: &Rat) -> Result<usize> {
    if l.is_zero() && m.is_zero() {
        return Err(Error::InvalidParameter("(0, 0) is not a point of P1".into()));
    }
    Ok(p.specialize(l, m).rank())
}

/// The 2x2 minors of the pencil matrix, as forms of degree `2d`.
pub fn two_by_two_minors(p: &QuadricPencil) -> Vec<ParamPoly> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    let e = |i: usize, j: usize| &p.entries[i][j];
    let mut out = Vec::new();
    for &(r1, r2) in &pairs {
        for &(c1, c2) in &pairs {
            out.push(&(e(r1, c1) * e(r2, c2)) - &(e(r1, c2) * e(r2, c1)));
        }
    }
    out
}

/// Where the pencil drops to rank at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankOneLocus {
    /// Every member has rank at most one.
    WholeLine,
    /// Finitely many parameters: the degree of the homogeneous gcd of the
    /// minors, and the number of distinct points of P1 where it vanishes.
    Points { with_multiplicity: usize, distinct: usize, gcd: ParamPoly },
}

impl RankOneLocus {
    pub fn distinct(&self) -> Option<usize> {
        match self {
            RankOneLocus::WholeLine => None,
            RankOneLocus::Points { distinct, .. } => Some(*distinct),
        }
    }
}

impl fmt::Display for RankOneLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankOneLocus::WholeLine => f.write_str("whole line"),
            RankOneLocus::Points { with_multiplicity, distinct, gcd } => {
                write!(f, "{distinct} points ({with_multiplicity} with multiplicity), gcd {gcd}")
            }
        }
    }
}

pub fn rank1_parameter_count(p: &QuadricPencil) -> Result<RankOneLocus> {
    let r = generic_rank(p);
    if r > 2 {
        return Err(Error::RankTooHigh(r));
    }
    let minors: Vec<ParamPoly> = two_by_two_minors(p).into_iter().filter(|f| !f.is_zero()).collect();
    if minors.is_empty() {
        return Ok(RankOneLocus::WholeLine);
    }
    let form_degree = 2 * p.degree as usize;
    let mut affine = UniPoly::zero();
    let mut mu_power = usize::MAX;
    for f in &minors {
        let g = dehomogenize(f);
        mu_power = mu_power.min(form_degree - g.degree().expect("nonzero"));
        affine = affine.gcd(&g);
    }
    let affine_degree = affine.degree().expect("nonzero gcd");
    let distinct = affine.squarefree().degree().unwrap_or(0) + usize::from(mu_power > 0);
    // homogenize the gcd back
    let mut gcd = ParamPoly::zero();
    for (k, c) in affine.coeffs().iter().enumerate() {
        let mon = &ParamPoly::var(LAMBDA).pow(k as u32) * &ParamPoly::var(MU).pow((affine_degree - k + mu_power) as u32);
        gcd += &mon.scale(c);
    }
    Ok(RankOneLocus::Points { with_multiplicity: affine_degree + mu_power, distinct, gcd })
}

/// A line of P3 over the function field, spanned by two kernel vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLine {
    pub basis: [Vec<RatFunc>; 2],
}

impl SingularLine {
    pub fn annihilated_by(&self, p: &QuadricPencil) -> bool {
        let m = p.generic_matrix();
        self.basis.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero))
    }

    /// The basis vector at parameter `t` in the chart `m = 1`.
    pub fn at(&self, t: &Rat) -> Option<[Vec<Rat>; 2]> {
        let eval = |v: &Vec<RatFunc>| v.iter().map(|x| x.eval(t)).collect::<Option<Vec<Rat>>>();
        Some([eval(&self.basis[0])?, eval(&self.basis[1])?])
    }
}

impl fmt::Display for SingularLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Vec<RatFunc>| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "span{{({}), ({})}}", show(&self.basis[0]), show(&self.basis[1]))
    }
}

/// Kernel of a rank-2 pencil, and whether it is independent of the parameter.
///
/// The basis comes from the reduced echelon form, so it is canonical and
/// constancy can be read off the entries.
pub fn singular_line_family(p: &QuadricPencil) -> Result<(SingularLine, bool)> {
    let (rank, kernel) = p.generic_matrix().rank_kernel();
    if rank != 2 {
        return Err(Error::RankMismatch(rank));
    }
    let constant = kernel.iter().flatten().all(RatFunc::is_constant);
    let mut it = kernel.into_iter();
    let line = SingularLine { basis: [it.next().unwrap(), it.next().unwrap()] };
    Ok((line, constant))
}

/// `diag(0, 0)`-padded block `l A + m I` with `A = (a0 a1; a1 a2)`: the
/// general linear rank-2 pencil, whose kernel is always `{e3, e4}`.
pub fn linear_normal_form(a0: &Rat, a1: &Rat, a2: &Rat) -> QuadricPencil {
    let l = ParamPoly::var(LAMBDA);
    let m = ParamPoly::var(MU);
    let mut entries: [[ParamPoly; 4]; 4] = Default::default();
    entries[0][0] = &l.scale(a0) + &m;
    entries[0][1] = l.scale(a1);
    entries[1][0] = l.scale(a1);
    entries[1][1] = &l.scale(a2) + &m;
    QuadricPencil::new(entries, 1).expect("linear forms")
}

/// A degree-4 pencil of rank 2 with rank-one members exactly at
/// `l/m = 1, -1, 2, -2` and a moving singular line:
/// `u u^T - D e4 e4^T` with `u = (l^2, l m, m^2, 0)` and
/// `D = (l^2 - m^2)(l^2 - 4 m^2)`.
pub fn quartic_witness() -> QuadricPencil {
    let l = ParamPoly::var(LAMBDA);
    let m = ParamPoly::var(MU);
    let u = [l.pow(2), &l * &m, m.pow(2), ParamPoly::zero()];
    let d = &(&l.pow(2) - &m.pow(2)) * &(&l.pow(2) - &m.pow(2).scale(&Rat::from_integer(4.into())));
    let mut entries: [[ParamPoly; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            entries[i][j] = &u[i] * &u[j];
        }
    }
    entries[3][3] = -&d;
    QuadricPencil::new(entries, 4).expect("quartic forms")
}

/// Parses a pencil file: a `degree d` header, then the ten upper-triangular
/// entries `(1,1) (1,2) (1,3) (1,4) (2,2) (2,3) (2,4) (3,3) (3,4) (4,4)`,
/// one polynomial in `l`, `m` per line. Blank lines and `#` comments are ignored.
pub fn parse_pencil(text: &str) -> Result<QuadricPencil> {
    let mut lines = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty pencil file".into()))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|rest| rest.trim().parse::<u32>().ok())
        .ok_or_else(|| Error::Parse(format!("bad header `{header}`, expected `degree d`")))?;
    let upper = lines
        .map(|line| line.parse::<ParamPoly>())
        .collect::<Result<Vec<_>>>()?;
    if upper.len() != 10 {
        return Err(Error::Parse(format!("expected 10 entries, got {}", upper.len())));
    }
    QuadricPencil::from_upper(&upper, degree)
}

impl std::str::FromStr for QuadricPencil {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pencil(s)
    }
}
