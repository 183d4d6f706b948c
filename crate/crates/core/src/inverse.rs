//! Macaulay inverse systems: sections, the Spencer operator, top and socle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jetspace::{JetCoordinate, JetIndex, JetOrdering};
use crate::pdesystem::{LinearSystem, Reduced};
use crate::ratlinalg::{Field, Matrix, Rational};

/// Dual jet values f^k_μ for |μ| ≤ order; zero entries are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Section<F = Rational> {
    pub order: usize,
    pub coefficients: BTreeMap<JetCoordinate, F>,
}

impl<F: Field> Section<F> {
    pub fn zero(order: usize) -> Self {
        Self { order, coefficients: BTreeMap::new() }
    }

    fn from_vector(index: &JetIndex, order: usize, v: impl IntoIterator<Item = (usize, F)>) -> Self {
        let coefficients = v
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(col, c)| (index.jet(col).clone(), c))
            .collect();
        Self { order, coefficients }
    }

    pub fn coefficient(&self, jet: &JetCoordinate) -> F {
        self.coefficients.get(jet).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coefficients.len()
    }

    pub fn truncated(&self, order: usize) -> Self {
        let coefficients = self.coefficients.iter().filter(|(j, _)| j.order() <= order).map(|(j, c)| (j.clone(), c.clone())).collect();
        Self { order: order.min(self.order), coefficients }
    }

    /// True iff every prolonged equation of order ≤ `self.order` vanishes.
    pub fn satisfies(&self, sys: &LinearSystem<F>) -> bool {
        sys.prolongation_rows(self.order).iter().all(|eq| {
            let mut acc = F::zero();
            for (jet, c) in eq.terms() {
                acc = acc.add(&c.mul(&self.coefficient(jet)));
            }
            acc.is_zero()
        })
    }

    /// `a^{111} + a^{122}`, terms in display order, variables numbered from
    /// `offset + 1`; `a^{μ}_k` when there are several unknowns.
    pub fn render(&self, m: usize, offset: usize) -> String {
        let mut jets: Vec<&JetCoordinate> = self.coefficients.keys().collect();
        jets.sort_by(|a, b| JetOrdering::ClassAscending.compare(a, b));
        let mut out = String::new();
        for (k, jet) in jets.into_iter().enumerate() {
            let (neg, abs) = self.coefficients[jet].signed_parts();
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if abs != "1" {
                if abs.chars().all(|c| c.is_ascii_digit() || c == '/') {
                    out.push_str(&format!("{abs}*"));
                } else {
                    out.push_str(&format!("({abs})*"));
                }
            }
            out.push_str(&format!("a^{{{}}}", jet.index.digits_offset(offset)));
            if m > 1 {
                out.push_str(&format!("_{}", jet.unknown + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A section written as Macaulay's `E ≡ Σ f^k_μ a^μ_k = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularEquation<F = Rational> {
    pub section: Section<F>,
}

impl<F: Field> ModularEquation<F> {
    pub fn render(&self, m: usize, offset: usize) -> String {
        format!("E ≡ {} = 0", self.section.render(m, offset))
    }
}

/// Basis of R_order, one section per parametric jet (value 1 there and 0 at
/// the other parametric jets), in display order of those jets.
pub fn section_basis<F: Field>(sys: &LinearSystem<F>, order: usize) -> Vec<Section<F>> {
    let red = sys.reduced(order);
    basis_of(&red)
}

fn basis_of<F: Field>(red: &Reduced<F>) -> Vec<Section<F>> {
    let kernel = red.rref().kernel_basis();
    let free = red.rref().free_columns();
    red.parametric()
        .iter()
        .map(|p| {
            let col = red.index().column(p).expect("parametric jet is indexed");
            let j = free.iter().position(|&f| f == col).expect("parametric jet is a free column");
            Section::from_vector(red.index(), red.order(), (0..kernel.rows()).map(|r| (r, kernel.get(r, j).clone())))
        })
        .collect()
}

/// (dᵢf)^k_μ = f^k_{μ+1ᵢ}; `i` is 0-based. Lowers the order by one.
pub fn spencer_apply<F: Field>(i: usize, f: &Section<F>) -> Result<Section<F>> {
    let n = f.coefficients.keys().next().map(|j| j.index.nvars());
    if let Some(n) = n {
        if i >= n {
            return Err(Error::VariableOutOfRange { i: i + 1, n });
        }
    }
    if f.order == 0 {
        return Ok(Section::zero(0));
    }
    let coefficients = f
        .coefficients
        .iter()
        .filter_map(|(jet, c)| {
            let lower = jet.index.lowered(i)?;
            Some((JetCoordinate::new(jet.unknown, lower), c.clone()))
        })
        .collect();
    Ok(Section { order: f.order - 1, coefficients })
}

/// The inverse system of a finite-type system, held at order T* + 1 where
/// T* is the first order ≥ q after which the symbol vanishes.
pub struct InverseSystem<F> {
    n: usize,
    m: usize,
    offset: usize,
    truncation: usize,
    reduced: Reduced<F>,
    parametric: Vec<JetCoordinate>,
    sections: Vec<Section<F>>,
}

/// Default search bound for the vanishing of the symbol.
pub fn default_max_order<F: Field>(sys: &LinearSystem<F>) -> usize {
    3 * sys.order() + sys.n() + 2
}

pub fn inverse_system<F: Field>(sys: &LinearSystem<F>, max_order: usize) -> Result<InverseSystem<F>> {
    let q = sys.order();
    let truncation = (q..=max_order.max(q))
        .find(|&t| sys.symbol_dimension(t + 1) == 0)
        .ok_or(Error::InfiniteInverseSystem)?;
    let reduced = sys.reduced(truncation + 1);
    let parametric = reduced.parametric();
    let sections = basis_of(&reduced);
    Ok(InverseSystem { n: sys.n(), m: sys.m(), offset: sys.var_offset(), truncation, reduced, parametric, sections })
}

impl<F: Field> InverseSystem<F> {
    pub fn dim(&self) -> usize {
        self.parametric.len()
    }

    /// T*: sections are determined by their values up to this order.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn parametric(&self) -> &[JetCoordinate] {
        &self.parametric
    }

    /// Basis sections at order T* + 1, aligned with [`Self::parametric`].
    pub fn sections(&self) -> &[Section<F>] {
        &self.sections
    }

    /// Coordinates of a section: its values at the parametric jets.
    pub fn coordinates(&self, f: &Section<F>) -> Vec<F> {
        self.parametric.iter().map(|p| f.coefficient(p)).collect()
    }

    /// Matrix of dᵢ on coordinates; column c is dᵢ of the c-th basis section.
    pub fn derivative_matrix(&self, i: usize) -> Matrix<F> {
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for (c, s) in self.sections.iter().enumerate() {
            for (r, p) in self.parametric.iter().enumerate() {
                out.set(r, c, s.coefficient(&p.raised(i)));
            }
        }
        out
    }

    /// Multiplication by dᵢ on M in the basis of parametric residues: column
    /// p holds the normal form of y_{p+1ᵢ}.
    pub fn multiplication_matrix(&self, i: usize) -> Matrix<F> {
        let d = self.dim();
        let mut out: Matrix<F> = Matrix::zeros(d, d);
        for (c, p) in self.parametric.iter().enumerate() {
            let nf = self.reduced.normal_form(&p.raised(i)).expect("raised jet within order T*+1");
            for (jet, v) in nf {
                let r = self.parametric.iter().position(|q| *q == jet).expect("normal form uses parametric jets");
                out.set(r, c, out.get(r, c).add(&v));
            }
        }
        out
    }

    /// Row space spanned by all dᵢf, in coordinates.
    fn maximal_ideal_rows(&self) -> Vec<Vec<F>> {
        (0..self.n).flat_map(|i| self.derivative_matrix(i).transpose().to_rows()).collect()
    }

    pub fn maximal_ideal_dimension(&self) -> usize {
        Matrix::from_rows_with_cols(self.maximal_ideal_rows(), Some(self.dim())).rank()
    }

    /// Sections lifting a basis of R/𝔪R: fewest nonzero coefficients first,
    /// then by order and display order of the distinguished jet.
    ///
    /// When 𝔪R = R (some dᵢ invertible, as after localization) there is no
    /// top at the origin; then sections are taken highest order first and
    /// kept while they enlarge the differential closure.
    pub fn top_generators(&self) -> Vec<ModularEquation<F>> {
        let d = self.dim();
        if d > 0 && self.maximal_ideal_dimension() == d {
            return self.closure_generators();
        }
        let mut rows = self.maximal_ideal_rows();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&c| (self.sections[c].nnz(), self.parametric[c].order(), c));
        let mut out = Vec::new();
        for c in order {
            let mut unit = vec![F::zero(); d];
            unit[c] = F::one();
            let rref = Matrix::from_rows_with_cols(rows.clone(), Some(d)).rref();
            if rref.contains(&unit) {
                continue;
            }
            rows.push(unit);
            out.push(ModularEquation { section: self.sections[c].clone() });
        }
        out
    }

    fn closure_generators(&self) -> Vec<ModularEquation<F>> {
        let d = self.dim();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(self.parametric[c].order()), self.sections[c].nnz(), c));
        let mut chosen: Vec<Vec<F>> = Vec::new();
        let mut reached = 0;
        let mut out = Vec::new();
        for c in order {
            if reached == d {
                break;
            }
            let mut unit = vec![F::zero(); d];
            unit[c] = F::one();
            chosen.push(unit);
            let now = self.generated_dimension(&chosen);
            if now > reached {
                reached = now;
                out.push(ModularEquation { section: self.sections[c].clone() });
            } else {
                chosen.pop();
            }
        }
        out
    }

    /// Dimension of the span of the given coordinate vectors closed under
    /// every dᵢ.
    pub fn generated_dimension(&self, generators: &[Vec<F>]) -> usize {
        let d = self.dim();
        let mats: Vec<Matrix<F>> = (0..self.n).map(|i| self.derivative_matrix(i)).collect();
        let mut span: Vec<Vec<F>> = Vec::new();
        let mut frontier: Vec<Vec<F>> = generators.to_vec();
        while let Some(v) = frontier.pop() {
            let mut trial = span.clone();
            trial.push(v.clone());
            if Matrix::from_rows_with_cols(trial.clone(), Some(d)).rank() == span.len() {
                continue;
            }
            span = trial;
            frontier.extend(mats.iter().map(|m| m.mul_vec(&v)));
        }
        span.len()
    }

    /// Basis of {x ∈ M : dᵢx = 0 ∀i}, as combinations of parametric residues.
    pub fn socle(&self) -> Vec<Vec<(JetCoordinate, F)>> {
        let blocks: Vec<Matrix<F>> = (0..self.n).map(|i| self.multiplication_matrix(i)).collect();
        let stacked = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.vstack(b));
        let kernel = stacked.kernel_basis();
        (0..kernel.cols())
            .map(|j| {
                (0..kernel.rows())
                    .filter(|&r| !kernel.get(r, j).is_zero())
                    .map(|r| (self.parametric[r].clone(), kernel.get(r, j).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn render(&self, e: &ModularEquation<F>) -> String {
        e.render(self.m, self.offset)
    }
}

pub fn top_generators<F: Field>(sys: &LinearSystem<F>) -> Result<Vec<ModularEquation<F>>> {
    Ok(inverse_system(sys, default_max_order(sys))?.top_generators())
}

pub fn socle<F: Field>(sys: &LinearSystem<F>) -> Result<Vec<Vec<(JetCoordinate, F)>>> {
    Ok(inverse_system(sys, default_max_order(sys))?.socle())
}
