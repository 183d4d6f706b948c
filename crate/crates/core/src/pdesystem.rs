//! Linear constant-coefficient systems: prolongation, projection,
//! coordinate changes and first-order reduction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::jetspace::{elimination_cmp, enumerate, JetCoordinate, JetIndex, JetOrdering, MultiIndex};
use crate::ratlinalg::{Field, Matrix, Poly, Rational, Rref};

/// A single linear relation Σ c·y^k_μ = 0 with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct Equation<F = Rational> {
    terms: BTreeMap<JetCoordinate, F>,
}

impl<F: Field> Equation<F> {
    pub fn new(terms: impl IntoIterator<Item = (JetCoordinate, F)>) -> Result<Self> {
        Self::collect(terms).ok_or(Error::EmptyEquation)
    }

    fn collect(terms: impl IntoIterator<Item = (JetCoordinate, F)>) -> Option<Self> {
        let mut map: BTreeMap<JetCoordinate, F> = BTreeMap::new();
        for (jet, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&jet) {
                Some(e) => *e = e.add(&c),
                None => {
                    map.insert(jet, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        (!map.is_empty()).then_some(Self { terms: map })
    }

    pub(crate) fn from_row(index: &JetIndex, row: &[F]) -> Option<Self> {
        Self::collect(
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(col, c)| (index.jet(col).clone(), c.clone())),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetCoordinate, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, jet: &JetCoordinate) -> F {
        self.terms.get(jet).cloned().unwrap_or_else(F::zero)
    }

    pub fn order(&self) -> usize {
        self.terms.keys().map(JetCoordinate::order).max().unwrap_or(0)
    }

    /// Terms of maximal order.
    pub fn top(&self) -> Self {
        let q = self.order();
        Self { terms: self.terms.iter().filter(|(j, _)| j.order() == q).map(|(j, c)| (j.clone(), c.clone())).collect() }
    }

    /// Formal derivative d^ν: every jet index moves from μ to μ + ν.
    pub fn shifted(&self, nu: &MultiIndex) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(j, c)| (JetCoordinate::new(j.unknown, j.index.add(nu)), c.clone()))
                .collect(),
        }
    }

    /// The jet that comes first in elimination order.
    pub fn leading(&self) -> &JetCoordinate {
        self.terms.keys().min_by(|a, b| elimination_cmp(a, b)).expect("equations are nonempty")
    }

    pub fn scaled(&self, c: &F) -> Self {
        Self { terms: self.terms.iter().map(|(j, v)| (j.clone(), v.mul(c))).collect() }
    }

    pub(crate) fn row(&self, index: &JetIndex) -> Vec<F> {
        let mut row = vec![F::zero(); index.len()];
        for (jet, c) in &self.terms {
            let col = index.column(jet).expect("jet outside the index range");
            row[col] = c.clone();
        }
        row
    }

    /// Text form with a given unknown symbol, e.g. `y_{33} - y_{13}`.
    pub fn render(&self, symbol: &str, m: usize, offset: usize) -> String {
        let mut jets: Vec<&JetCoordinate> = self.terms.keys().collect();
        jets.sort_by(|a, b| elimination_cmp(a, b));
        render_combination(jets.into_iter().map(|j| (j.label_with(symbol, m, offset), &self.terms[j])))
    }
}

impl<F: Field> fmt::Debug for Equation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("y", 2, 0))
    }
}

/// Joins `coefficient * label` pairs as `a - 2*b + (χ_1 + 1)*c`.
pub fn render_combination<'a, F: Field>(terms: impl IntoIterator<Item = (String, &'a F)>) -> String {
    let mut out = String::new();
    for (k, (label, c)) in terms.into_iter().enumerate() {
        let (neg, abs) = c.signed_parts();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if abs != "1" {
            if abs.contains(' ') {
                out.push_str(&format!("({abs})*"));
            } else {
                out.push_str(&format!("{abs}*"));
            }
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Invertible linear substitution dᵢ → Σⱼ Aᵢⱼ dⱼ of the derivations.
#[derive(Clone, PartialEq, Debug)]
pub struct CoordinateChange {
    matrix: Matrix<Rational>,
}

impl CoordinateChange {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        let n = matrix.rows();
        if matrix.cols() != n || matrix.rank() != n {
            return Err(Error::SingularFrame { n });
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: Matrix::identity(n) }
    }

    /// `perm[i]` is the 0-based index that dᵢ is renamed to.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::SingularFrame { n });
            }
            m.set(i, p, Rational::one());
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.n())
    }
}

/// Dimension and parametric jets of R_r.
#[derive(Clone, Debug, PartialEq)]
pub struct JetSpaceSlice {
    pub order: usize,
    pub dimension: usize,
    /// Non-pivot jets, listed by order and then lowest class first.
    pub parametric: Vec<JetCoordinate>,
}

/// Reduced row echelon form of all prolonged equations through some order,
/// with lookup from pivot jets to rows.
#[derive(Clone)]
pub struct Reduced<F> {
    order: usize,
    index: JetIndex,
    rref: Rref<F>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Reduced<F> {
    fn new(order: usize, index: JetIndex, rref: Rref<F>) -> Self {
        let pivot_row = rref.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        Self { order, index, rref, pivot_row }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> &JetIndex {
        &self.index
    }

    pub fn rref(&self) -> &Rref<F> {
        &self.rref
    }

    pub fn dimension(&self) -> usize {
        self.index.len() - self.rref.rank()
    }

    pub fn is_parametric(&self, jet: &JetCoordinate) -> bool {
        self.index.column(jet).is_some_and(|c| !self.pivot_row.contains_key(&c))
    }

    /// Parametric jets in display order.
    pub fn parametric(&self) -> Vec<JetCoordinate> {
        let mut out: Vec<JetCoordinate> =
            self.rref.free_columns().into_iter().map(|c| self.index.jet(c).clone()).collect();
        out.sort_by(|a, b| JetOrdering::ClassAscending.compare(a, b));
        out
    }

    /// Rows of the echelon form as equations.
    pub fn equations(&self) -> Vec<Equation<F>> {
        (0..self.rref.rank())
            .filter_map(|r| Equation::from_row(&self.index, self.rref.matrix.row(r)))
            .collect()
    }

    /// Expresses `jet` through parametric jets; `None` above the order.
    pub fn normal_form(&self, jet: &JetCoordinate) -> Option<Vec<(JetCoordinate, F)>> {
        let col = self.index.column(jet)?;
        let Some(&r) = self.pivot_row.get(&col) else {
            return Some(vec![(jet.clone(), F::one())]);
        };
        let row = self.rref.matrix.row(r);
        Some(
            row.iter()
                .enumerate()
                .filter(|&(c, v)| c != col && !v.is_zero())
                .map(|(c, v)| (self.index.jet(c).clone(), v.neg()))
                .collect(),
        )
    }

    /// Reduces a full jet vector modulo the equations.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        self.rref.reduce(v)
    }
}

/// A linear system with constant coefficients in `n` independent variables
/// and `m` unknowns.
///
/// `var_offset` and `symbol` only affect display: localized systems keep the
/// original variable numbering and first-order companions name their
/// unknowns `z`.
#[derive(Clone, PartialEq)]
pub struct LinearSystem<F = Rational> {
    n: usize,
    m: usize,
    equations: Vec<Equation<F>>,
    var_offset: usize,
    symbol: String,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(n: usize, m: usize, equations: Vec<Equation<F>>) -> Result<Self> {
        for eq in &equations {
            for (jet, _) in eq.terms() {
                if jet.unknown >= m || jet.index.nvars() != n {
                    return Err(Error::JetOutOfRange { jet: format!("{jet:?}"), n, m });
                }
            }
        }
        Ok(Self { n, m, equations, var_offset: 0, symbol: "y".into() })
    }

    pub(crate) fn from_parts(n: usize, m: usize, equations: Vec<Equation<F>>) -> Self {
        Self { n, m, equations, var_offset: 0, symbol: "y".into() }
    }

    pub fn with_display(mut self, symbol: &str, var_offset: usize) -> Self {
        self.symbol = symbol.to_string();
        self.var_offset = var_offset;
        self
    }

    fn same_display(&self, equations: Vec<Equation<F>>) -> Self {
        Self { n: self.n, m: self.m, equations, var_offset: self.var_offset, symbol: self.symbol.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn equations(&self) -> &[Equation<F>] {
        &self.equations
    }

    pub fn var_offset(&self) -> usize {
        self.var_offset
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    /// Maximal order over all equations (0 for the empty system).
    pub fn order(&self) -> usize {
        self.equations.iter().map(Equation::order).max().unwrap_or(0)
    }

    pub fn jet_label(&self, jet: &JetCoordinate) -> String {
        jet.label_with(&self.symbol, self.m, self.var_offset)
    }

    pub fn render_equation(&self, eq: &Equation<F>) -> String {
        eq.render(&self.symbol, self.m, self.var_offset)
    }

    /// Every equation differentiated by every dᵢ-word, up to total order `r`.
    pub fn prolongation_rows(&self, r: usize) -> Vec<Equation<F>> {
        let mut out = Vec::new();
        for eq in &self.equations {
            let o = eq.order();
            if o > r {
                continue;
            }
            for d in 0..=r - o {
                for nu in enumerate(self.n, d, JetOrdering::ClassDescending) {
                    out.push(eq.shifted(&nu));
                }
            }
        }
        out
    }

    pub fn matrix_through(&self, r: usize) -> (JetIndex, Matrix<F>) {
        let index = JetIndex::new(self.n, self.m, 0, r);
        let rows: Vec<Vec<F>> = self.prolongation_rows(r).iter().map(|e| e.row(&index)).collect();
        let cols = index.len();
        (index, Matrix::from_rows_with_cols(rows, Some(cols)))
    }

    pub fn reduced(&self, r: usize) -> Reduced<F> {
        let (index, m) = self.matrix_through(r);
        Reduced::new(r, index, m.rref())
    }

    pub fn slice(&self, r: usize) -> JetSpaceSlice {
        let red = self.reduced(r);
        JetSpaceSlice { order: r, dimension: red.dimension(), parametric: red.parametric() }
    }

    /// dim R_0, …, dim R_r.
    pub fn dimensions(&self, r: usize) -> Vec<usize> {
        (0..=r).map(|t| self.reduced(t).dimension()).collect()
    }

    /// The system R_{q+r}, deduplicated by row reduction.
    pub fn prolong(&self, r: usize) -> Self {
        let red = self.reduced(self.order() + r);
        self.same_display(red.equations())
    }

    /// Top-order parts of all prolongations that land exactly at order `t`.
    pub fn symbol_rows(&self, t: usize) -> Vec<Equation<F>> {
        let mut out = Vec::new();
        for eq in &self.equations {
            let o = eq.order();
            if o > t {
                continue;
            }
            let top = eq.top();
            for nu in enumerate(self.n, t - o, JetOrdering::ClassDescending) {
                out.push(top.shifted(&nu));
            }
        }
        out
    }

    /// Echelon form of the symbol equations at order `t` over the order-`t`
    /// jets in elimination order.
    pub fn symbol_reduced(&self, t: usize) -> Reduced<F> {
        let index = JetIndex::new(self.n, self.m, t, t);
        let rows: Vec<Vec<F>> = self.symbol_rows(t).iter().map(|e| e.row(&index)).collect();
        let cols = index.len();
        let rref = Matrix::from_rows_with_cols(rows, Some(cols)).rref();
        Reduced::new(t, index, rref)
    }

    pub fn symbol_dimension(&self, t: usize) -> usize {
        self.symbol_reduced(t).dimension()
    }

    /// True iff R_{order+1} projects onto R_order.
    pub fn projection_surjective(&self, order: usize) -> bool {
        let upper = self.reduced(order + 1).dimension();
        let lower = self.reduced(order).dimension();
        upper - self.symbol_dimension(order + 1) == lower
    }

    /// Equations of order ≤ `upto` implied by R_`from` but not by R_`upto`,
    /// as a reduced basis of remainders.
    pub fn projection_gains(&self, from: usize, upto: usize) -> Vec<Equation<F>> {
        let high = self.reduced(from);
        let low = self.reduced(upto);
        let mut rems = Vec::new();
        for eq in harvest(&high, upto) {
            let r = low.reduce(&eq.row(&low.index));
            if r.iter().any(|c| !c.is_zero()) {
                rems.push(r);
            }
        }
        if rems.is_empty() {
            return Vec::new();
        }
        let cols = low.index.len();
        let rref = Matrix::from_rows_with_cols(rems, Some(cols)).rref();
        Reduced::new(upto, low.index.clone(), rref).equations()
    }

    /// Projection of R_{q+s} back to order q, written with as few equations
    /// as possible. The order of the result drops when its top-order
    /// equations follow from lower-order ones.
    pub fn projected_system(&self, s: usize) -> Self {
        let q = self.order();
        let high = self.reduced(q + s);
        self.same_display(minimize(self.n, self.m, harvest(&high, q)))
    }

    /// Adds `extra` equations and drops those implied by the rest.
    pub fn with_equations(&self, extra: Vec<Equation<F>>) -> Self {
        let q = extra.iter().map(Equation::order).chain([self.order()]).max().unwrap_or(0);
        let mut all = self.clone();
        all.equations.extend(extra);
        let red = all.reduced(q);
        self.same_display(minimize(self.n, self.m, red.equations()))
    }

    /// Removes equations implied by prolongations of the others.
    pub fn minimized(&self) -> Self {
        let red = self.reduced(self.order());
        self.same_display(minimize(self.n, self.m, red.equations()))
    }

    /// Substitutes dᵢ → Σⱼ Aᵢⱼ dⱼ in the operator form of every equation.
    pub fn change_coordinates(&self, frame: &CoordinateChange) -> Result<Self> {
        let n = self.n;
        if frame.n() != n {
            return Err(Error::SingularFrame { n });
        }
        let a = frame.matrix();
        let forms: Vec<Poly> = (0..n)
            .map(|i| {
                Poly::from_terms((0..n).map(|j| {
                    let mut e = vec![0u32; j + 1];
                    e[j] = 1;
                    (e, a.get(i, j).clone())
                }))
            })
            .collect();
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut equations = Vec::with_capacity(self.equations.len());
        for eq in &self.equations {
            let mut terms = Vec::new();
            for (jet, c) in eq.terms() {
                let mut p = Poly::one();
                for (i, &e) in jet.index.entries().iter().enumerate() {
                    if e > 0 {
                        let f = powers.entry((i, e)).or_insert_with(|| forms[i].pow(e));
                        p = p.mul(f);
                    }
                }
                for (mono, v) in p.terms() {
                    let mut idx = mono.clone();
                    idx.resize(n, 0);
                    terms.push((JetCoordinate::new(jet.unknown, MultiIndex::new(idx)), c.mul(&F::from_rational(v))));
                }
            }
            equations.push(Equation::collect(terms).ok_or(Error::SingularFrame { n })?);
        }
        Ok(self.same_display(equations))
    }

    /// First-order system whose unknowns are all jets of order < q.
    ///
    /// Unknowns are numbered by order, then lowest class first. The
    /// equations are: the defining relations z[μ]ᵢ = z[μ+1ᵢ], the equalities
    /// between the different first derivatives representing the same
    /// order-q jet, and the equations of R_q rewritten at order 1.
    pub fn first_order_companion(&self) -> Self {
        let q = self.order();
        if q <= 1 {
            return self.clone().with_display("z", self.var_offset);
        }
        let n = self.n;
        let mut zs: Vec<JetCoordinate> = Vec::new();
        for t in 0..q {
            for mu in enumerate(n, t, JetOrdering::ClassAscending) {
                for k in 0..self.m {
                    zs.push(JetCoordinate::new(k, mu.clone()));
                }
            }
        }
        let z_of: HashMap<JetCoordinate, usize> = zs.iter().cloned().enumerate().map(|(i, j)| (j, i)).collect();
        let mz = zs.len();
        let zero = MultiIndex::zero(n);
        let var = |k: usize| JetCoordinate::new(k, zero.clone());
        let deriv = |k: usize, i: usize| JetCoordinate::new(k, zero.raised(i));
        let representations = |jet: &JetCoordinate| -> Vec<JetCoordinate> {
            (0..n)
                .filter_map(|i| jet.index.lowered(i).map(|mu| deriv(z_of[&JetCoordinate::new(jet.unknown, mu)], i)))
                .collect()
        };
        let rewrite = |jet: &JetCoordinate| -> JetCoordinate {
            if jet.order() < q {
                var(z_of[jet])
            } else {
                representations(jet).pop().expect("order-q jet has a lower neighbour")
            }
        };

        let one = F::one();
        let minus = one.neg();
        let mut eqs: Vec<Equation<F>> = Vec::new();
        for (k, z) in zs.iter().enumerate() {
            if z.order() + 1 < q {
                for i in 0..n {
                    let target = z_of[&z.raised(i)];
                    eqs.extend(Equation::collect([(deriv(k, i), one.clone()), (var(target), minus.clone())]));
                }
            }
        }
        for k in 0..self.m {
            for nu in enumerate(n, q, JetOrdering::ClassAscending) {
                let reps = representations(&JetCoordinate::new(k, nu));
                for w in reps.windows(2) {
                    eqs.extend(Equation::collect([(w[0].clone(), one.clone()), (w[1].clone(), minus.clone())]));
                }
            }
        }
        for eq in self.prolongation_rows(q) {
            eqs.extend(Equation::collect(eq.terms().map(|(j, c)| (rewrite(j), c.clone()))));
        }
        let sys = LinearSystem::from_parts(n, mz, eqs);
        let red = sys.reduced(1);
        LinearSystem::from_parts(n, mz, red.equations()).with_display("z", self.var_offset)
    }

    /// Changes the coefficient field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> LinearSystem<G> {
        let equations = self
            .equations
            .iter()
            .filter_map(|e| Equation::collect(e.terms().map(|(j, c)| (j.clone(), f(c)))))
            .collect();
        LinearSystem { n: self.n, m: self.m, equations, var_offset: self.var_offset, symbol: self.symbol.clone() }
    }
}

impl<F: Field> fmt::Debug for LinearSystem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self.equations.iter().map(|e| self.render_equation(e)).collect();
        write!(f, "LinearSystem(n={}, m={}) {{ {} }}", self.n, self.m, eqs.join(", "))
    }
}

/// Rows of an echelon form supported on jets of order ≤ `upto`.
fn harvest<F: Field>(red: &Reduced<F>, upto: usize) -> Vec<Equation<F>> {
    red.rref
        .pivots
        .iter()
        .enumerate()
        .filter(|(_, &c)| red.index.jet(c).order() <= upto)
        .filter_map(|(r, _)| Equation::from_row(&red.index, red.rref.matrix.row(r)))
        .collect()
}

/// Keeps, order by order, only equations not implied by prolongations of
/// those already kept.
fn minimize<F: Field>(n: usize, m: usize, mut rows: Vec<Equation<F>>) -> Vec<Equation<F>> {
    rows.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| elimination_cmp(a.leading(), b.leading())));
    let mut kept: Vec<Equation<F>> = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        let t = rows[i].order();
        let index = JetIndex::new(n, m, 0, t);
        let base = LinearSystem::from_parts(n, m, kept.clone());
        let mut span: Vec<Vec<F>> = base.prolongation_rows(t).iter().map(|e| e.row(&index)).collect();
        let mut rref = Matrix::from_rows_with_cols(span.clone(), Some(index.len())).rref();
        while i < rows.len() && rows[i].order() == t {
            let row = rows[i].row(&index);
            if !rref.contains(&row) {
                span.push(row);
                rref = Matrix::from_rows_with_cols(span.clone(), Some(index.len())).rref();
                kept.push(rows[i].clone());
            }
            i += 1;
        }
    }
    kept
}
