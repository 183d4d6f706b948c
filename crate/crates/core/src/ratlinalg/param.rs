use std::fmt;

use num_traits::Signed;

use super::field::{Field, Rational};
use super::matrix::{Matrix, Rref};
use super::poly::Poly;

/// Element of the rational function field ℚ(χ₁,…,χ_s).
///
/// Kept as numerator/denominator with the denominator primitive, integral and
/// with positive leading coefficient. Common monomial factors and exact
/// divisibility are cancelled; general polynomial gcds are not (see
/// [`ParamScalar::reduce_full`]).
#[derive(Clone)]
pub struct ParamScalar {
    num: Poly,
    den: Poly,
}

impl ParamScalar {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Self { num, den };
        s.normalize();
        s
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::one())
    }

    /// The parameter χ_{i+1}.
    pub fn param(i: usize) -> Self {
        Self::from_poly(Poly::var(i))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = common_monomial(&self.num, &self.den);
        if !g.is_empty() {
            let m = Poly::monomial(g, Rational::one());
            self.num = self.num.div_exact(&m).expect("monomial divides numerator");
            self.den = self.den.div_exact(&m).expect("monomial divides denominator");
        }
        if !self.den.is_constant() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = Poly::one();
            } else if self.num.num_terms() <= self.den.num_terms() {
                if let Some(q) = self.den.div_exact(&self.num) {
                    self.den = q;
                    self.num = Poly::one();
                }
            }
        }
        let mut f = self.den.content();
        if self.den.leading_coefficient().is_negative() {
            f = -f;
        }
        if !f.is_one() {
            let inv = Rational::one() / f;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// Cancels the full gcd of numerator and denominator when both are
    /// univariate; otherwise equivalent to the default normalization.
    pub fn reduce_full(&self) -> Self {
        let mut out = self.clone();
        if let Some(g) = self.num.univariate_gcd(&self.den) {
            if !g.is_constant() {
                out.num = self.num.div_exact(&g).expect("gcd divides numerator");
                out.den = self.den.div_exact(&g).expect("gcd divides denominator");
                out.normalize();
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.den.is_constant() {
            let c = self.den.constant_value().unwrap_or_else(Rational::one);
            return self.num.scale(&(Rational::one() / c)).fmt_with(f, var);
        }
        write!(f, "(")?;
        self.num.fmt_with(f, var)?;
        write!(f, ")/(")?;
        self.den.fmt_with(f, var)?;
        write!(f, ")")
    }
}

fn common_monomial(a: &Poly, b: &Poly) -> Vec<u32> {
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mut g: Vec<u32> = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    while g.last() == Some(&0) {
        g.pop();
    }
    g
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("χ_{}", i + 1))
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for ParamScalar {
    fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        Self { num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        Self::new(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(r: &Rational) -> Self {
        Self { num: Poly::constant(r.clone()), den: Poly::one() }
    }

    fn echelon(m: &Matrix<Self>) -> Rref<Self> {
        bareiss(m).into_rref()
    }

    fn signed_parts(&self) -> (bool, String) {
        if self.num.leading_coefficient().is_negative() {
            (true, self.neg().to_string())
        } else {
            (false, self.to_string())
        }
    }
}

/// Fraction-free echelon form of a matrix over ℚ(χ).
///
/// Rows are first cleared of denominators; afterwards every entry is a
/// polynomial and every pivot is (up to sign and the row scalings) a minor of
/// the input, so `certificate` is an exactly nonzero `rank × rank` minor.
pub struct Bareiss {
    pub rows: Vec<Vec<Poly>>,
    pub pivots: Vec<usize>,
    pub certificate: Option<Poly>,
    cols: usize,
}

pub fn bareiss(m: &Matrix<ParamScalar>) -> Bareiss {
    let cols = m.cols();
    let mut rows: Vec<Vec<Poly>> = (0..m.rows()).map(|r| clear_denominators(m.row(r))).collect();
    rows.retain(|r| r.iter().any(|p| !p.is_zero()));
    let mut pivots = Vec::new();
    let mut prev = Poly::one();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(p, next);
        let piv = rows[next][c].clone();
        let (head, tail) = rows.split_at_mut(next + 1);
        let prow = &head[next];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for k in c + 1..cols {
                let v = piv.mul(&row[k]).sub(&lead.mul(&prow[k]));
                row[k] = if v.is_zero() {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            row[c] = Poly::zero();
        }
        prev = piv;
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    let certificate = if pivots.is_empty() { None } else { Some(prev) };
    Bareiss { rows, pivots, certificate, cols }
}

fn clear_denominators(row: &[ParamScalar]) -> Vec<Poly> {
    let mut l = Poly::one();
    for e in row.iter().filter(|e| !e.is_zero()) {
        if !e.den.is_constant() && l.div_exact(&e.den).is_none() {
            l = l.mul(&e.den);
        }
    }
    let polys: Vec<Poly> = row
        .iter()
        .map(|e| {
            if e.is_zero() {
                Poly::zero()
            } else {
                let f = l.div_exact(&e.den).expect("denominator divides row multiplier");
                e.num.mul(&f)
            }
        })
        .collect();
    let mut content: Option<Rational> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let c = p.content();
        content = Some(match content {
            None => c,
            Some(acc) => rational_gcd(&acc, &c),
        });
    }
    match content {
        Some(c) if !c.is_one() => {
            let inv = Rational::one() / c;
            polys.iter().map(|p| p.scale(&inv)).collect()
        }
        _ => polys,
    }
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

impl Bareiss {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn into_rref(self) -> Rref<ParamScalar> {
        let cols = self.cols;
        let mut rows: Vec<Vec<ParamScalar>> = self
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(ParamScalar::from_poly).collect())
            .collect();
        for i in (0..rows.len()).rev() {
            let c = self.pivots[i];
            let inv = ParamScalar::one().div(&rows[i][c]);
            for e in rows[i][c..].iter_mut() {
                if !e.is_zero() {
                    *e = e.mul(&inv);
                }
            }
            let pivot_row = rows[i].clone();
            for row in rows[..i].iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for k in c..cols {
                    if !pivot_row[k].is_zero() {
                        row[k] = row[k].sub(&f.mul(&pivot_row[k]));
                    }
                }
            }
        }
        Rref { matrix: Matrix::from_rows_with_cols(rows, Some(cols)), pivots: self.pivots }
    }
}

/// Rank over ℚ(χ) together with a nonzero minor of that size.
pub fn certified_rank(m: &Matrix<ParamScalar>) -> (usize, Option<Poly>) {
    let b = bareiss(m);
    (b.rank(), b.certificate)
}

/// Specializes every entry at `point`; `None` if a denominator vanishes.
pub fn specialize(m: &Matrix<ParamScalar>, point: &[Rational]) -> Option<Matrix<Rational>> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r, c, m.get(r, c).eval(point)?);
        }
    }
    Some(out)
}
