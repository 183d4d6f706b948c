use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Rational;

/// Exponent vector with trailing zeros trimmed, so that monomials compare
/// lexicographically independent of the number of variables.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(out)
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Monomial> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (i, &e) in b.iter().enumerate() {
        if out[i] < e {
            return None;
        }
        out[i] -= e;
    }
    Some(trim(out))
}

/// Sparse multivariate polynomial over the rationals, lex-ordered terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// The variable with 0-based index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(exps), c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(trim(m), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&Vec::new()).cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Number of variables actually occurring (highest index + 1).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(mono_mul(ma, mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Quotient when `rhs` divides `self` exactly, `None` otherwise.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let (lm, lc) = rhs.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = mono_div(&m, &lm)?;
            let qc = c / &lc;
            let t = Self::monomial(qm.clone(), qc.clone());
            rem = rem.sub(&rhs.mul(&t));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Rational content: the positive rational `c` with `self / c` having
    /// coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Vec::new() };
        let mut g = first.clone();
        for m in it {
            for (i, e) in g.iter_mut().enumerate() {
                *e = (*e).min(m.get(i).copied().unwrap_or(0));
            }
        }
        trim(g)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Gcd for polynomials in at most one variable (index 0); `None` when
    /// either side involves other variables.
    pub fn univariate_gcd(&self, rhs: &Self) -> Option<Self> {
        if self.nvars() > 1 || rhs.nvars() > 1 {
            return None;
        }
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.univariate_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Some(a);
        }
        let lc = a.leading_coefficient();
        Some(a.scale(&(Rational::one() / lc)))
    }

    fn univariate_rem(&self, rhs: &Self) -> Self {
        let deg = |p: &Self| p.leading().map_or(0, |(m, _)| m.first().copied().unwrap_or(0));
        let (db, lb) = (deg(rhs), rhs.leading_coefficient());
        let mut r = self.clone();
        while !r.is_zero() && deg(&r) >= db {
            let shift = deg(&r) - db;
            let c = r.leading_coefficient() / &lb;
            r = r.sub(&rhs.mul(&Self::monomial(vec![shift], c)));
        }
        r
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { var(i) } else { format!("{}^{}", var(i), e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("χ_{}", i + 1))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::field::int;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = x().add(&y()).mul(&x().sub(&Poly::one()));
        assert_eq!(a.div_exact(&x().add(&y())), Some(x().sub(&Poly::one())));
        assert_eq!(a.div_exact(&y()), None);
    }

    #[test]
    fn univariate_gcd_is_monic() {
        let a = x().sub(&Poly::one()).mul(&x().add(&Poly::constant(int(2)))).scale(&int(3));
        let b = x().sub(&Poly::one()).mul(&x());
        assert_eq!(a.univariate_gcd(&b), Some(x().sub(&Poly::one())));
        assert_eq!(a.univariate_gcd(&y()), None);
    }

    #[test]
    fn display_orders_leading_term_first() {
        let p = x().pow(2).sub(&x().mul(&y()).scale(&int(3)));
        assert_eq!(p.to_string(), "χ_1^2 - 3*χ_1*χ_2");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = x().add(&y()).sub(&y());
        assert_eq!(p, x());
        assert_eq!(p.num_terms(), 1);
    }
}
