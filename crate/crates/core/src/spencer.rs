//! Symbols, the Spencer δ-complex, Cartan characters and the involution test.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jetspace::{class_count, JetIndex};
use crate::pdesystem::{CoordinateChange, LinearSystem, Reduced};
use crate::ratlinalg::{int, Field, Matrix, Rational};

/// Number of random frames tried after the given one.
pub const DEFAULT_FRAMES: usize = 25;

/// The symbol g_t as the kernel of the top-order equations at order t.
#[derive(Clone)]
pub struct SymbolSpace<F> {
    pub order: usize,
    pub reduced: Reduced<F>,
    /// Columns span g_t inside the order-t jets; column c is the unit vector
    /// at `free[c]` completed by the equations.
    pub basis: Matrix<F>,
    pub free: Vec<usize>,
}

impl<F: Field> SymbolSpace<F> {
    pub fn new(sys: &LinearSystem<F>, order: usize) -> Self {
        let reduced = sys.symbol_reduced(order);
        let basis = reduced.rref().kernel_basis();
        let free = reduced.rref().free_columns();
        Self { order, reduced, basis, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.reduced.index().len()
    }

    pub fn index(&self) -> &JetIndex {
        self.reduced.index()
    }
}

pub fn symbol<F: Field>(sys: &LinearSystem<F>, order: usize) -> SymbolSpace<F> {
    SymbolSpace::new(sys, order)
}

/// Dimensions attached to δ at one spot of the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub s: usize,
    pub order: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// The sequence 0 → g_t → T*⊗g_{t-1} → … → Λⁿ⊗g_{t-n} → 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSequence {
    pub top_order: usize,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub exact: Vec<bool>,
}

impl DeltaSequence {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }
}

/// Subsets of `0..n` of size `s` in lexicographic order.
pub fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s <= n {
        go(0, n, s, &mut Vec::new(), &mut out);
    }
    out
}

/// Symbol spaces of one system, computed on demand.
pub struct DeltaComplex<'a, F: Field> {
    sys: &'a LinearSystem<F>,
    symbols: HashMap<usize, SymbolSpace<F>>,
}

impl<'a, F: Field> DeltaComplex<'a, F> {
    pub fn new(sys: &'a LinearSystem<F>) -> Self {
        Self { sys, symbols: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.sys.n()
    }

    pub fn symbol(&mut self, t: usize) -> &SymbolSpace<F> {
        let sys = self.sys;
        self.symbols.entry(t).or_insert_with(|| SymbolSpace::new(sys, t))
    }

    pub fn symbol_dim(&mut self, t: usize) -> usize {
        self.symbol(t).dim()
    }

    /// dim Λˢ ⊗ g_t.
    pub fn cochain_dim(&mut self, s: usize, t: usize) -> usize {
        subsets(self.n(), s).len() * self.symbol_dim(t)
    }

    /// Matrix of δ: Λˢ⊗g_t → Λ^{s+1}⊗g_{t-1} in kernel-basis coordinates,
    /// with (δω)_K = Σ_{i∉J} ±ω_{J}(· + 1ᵢ) for K = J ∪ {i}.
    pub fn delta(&mut self, s: usize, t: usize) -> Result<Matrix<F>> {
        let n = self.n();
        if s >= n {
            return Err(Error::TopExteriorDegree { s, n });
        }
        let from = subsets(n, s);
        let to = subsets(n, s + 1);
        let up_dim = self.symbol_dim(t);
        if t == 0 {
            return Ok(Matrix::zeros(0, from.len() * up_dim));
        }
        self.symbol(t - 1);
        let up = &self.symbols[&t];
        let low = &self.symbols[&(t - 1)];
        let low_dim = low.dim();
        let pos: HashMap<&Vec<usize>, usize> = to.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let shifts: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                low.free
                    .iter()
                    .map(|&c| up.index().column(&low.index().jet(c).raised(i)).expect("shifted jet has order t"))
                    .collect()
            })
            .collect();
        let mut m: Matrix<F> = Matrix::zeros(to.len() * low_dim, from.len() * up_dim);
        for (jj, set) in from.iter().enumerate() {
            for b in 0..up_dim {
                let col = jj * up_dim + b;
                for i in (0..n).filter(|i| !set.contains(i)) {
                    let below = set.iter().filter(|&&j| j < i).count();
                    let mut k = set.clone();
                    k.insert(below, i);
                    let base = pos[&k] * low_dim;
                    for (c, &src) in shifts[i].iter().enumerate() {
                        let v = up.basis.get(src, b);
                        if v.is_zero() {
                            continue;
                        }
                        let v = if below % 2 == 1 { v.neg() } else { v.clone() };
                        let cur = m.get(base + c, col).add(&v);
                        m.set(base + c, col, cur);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Rank of δ leaving Λˢ⊗g_t; zero at the top degree.
    fn out_rank(&mut self, s: usize, t: usize) -> Result<usize> {
        if s == self.n() {
            return Ok(0);
        }
        Ok(self.delta(s, t)?.rank())
    }

    /// H^s at Λˢ⊗g_t: dim ker(δ out of it) − rank(δ into it).
    pub fn cohomology(&mut self, s: usize, t: usize) -> Result<DeltaReport> {
        let n = self.n();
        if s > n {
            return Err(Error::TopExteriorDegree { s, n });
        }
        let domain_dim = self.cochain_dim(s, t);
        let codomain_dim = if s < n && t > 0 { self.cochain_dim(s + 1, t - 1) } else { 0 };
        let rank = self.out_rank(s, t)?;
        let coboundaries = if s == 0 { 0 } else { self.delta(s - 1, t + 1)?.rank() };
        let cocycles = domain_dim - rank;
        Ok(DeltaReport {
            s,
            order: t,
            domain_dim,
            codomain_dim,
            rank,
            cocycles,
            coboundaries,
            cohomology: cocycles - coboundaries,
        })
    }

    /// The δ-sequence starting at g_t, down to Λⁿ⊗g_{t-n} (shorter when
    /// t < n).
    pub fn sequence(&mut self, t: usize) -> Result<DeltaSequence> {
        let n = self.n();
        let last = n.min(t);
        let dims: Vec<usize> = (0..=last).map(|s| self.cochain_dim(s, t - s)).collect();
        let mut ranks = Vec::with_capacity(last + 1);
        for s in 0..=last {
            ranks.push(if s == n || t - s == 0 { 0 } else { self.delta(s, t - s)?.rank() });
        }
        let exact = (0..=last)
            .map(|s| {
                let incoming = if s == 0 { 0 } else { ranks[s - 1] };
                dims[s] - ranks[s] == incoming
            })
            .collect();
        Ok(DeltaSequence { top_order: t, dims, ranks, exact })
    }
}

pub fn delta_matrix<F: Field>(sys: &LinearSystem<F>, s: usize, order: usize) -> Result<Matrix<F>> {
    DeltaComplex::new(sys).delta(s, order)
}

pub fn cohomology<F: Field>(sys: &LinearSystem<F>, s: usize, order: usize) -> Result<DeltaReport> {
    DeltaComplex::new(sys).cohomology(s, order)
}

/// Per-class counts of solved (β) and parametric (α) jets of the symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct JanetTableau {
    pub order: usize,
    /// `beta[i]` counts pivots of class i + 1.
    pub beta: Vec<usize>,
    pub alpha: Vec<usize>,
    pub frame: CoordinateChange,
}

impl JanetTableau {
    /// Σ i·αⁱ, the dimension the next symbol has when this one is involutive.
    pub fn cartan_sum(&self) -> usize {
        self.alpha.iter().enumerate().map(|(i, a)| (i + 1) * a).sum()
    }

    /// Comparison key: (βⁿ, βⁿ⁻¹, …).
    fn key(&self) -> Vec<usize> {
        self.beta.iter().rev().copied().collect()
    }
}

pub fn janet_tableau<F: Field>(sys: &LinearSystem<F>, order: usize, frame: &CoordinateChange) -> Result<JanetTableau> {
    if order == 0 {
        return Err(Error::ClassOfOrderZero);
    }
    let n = sys.n();
    let moved = if frame.is_identity() { sys.clone() } else { sys.change_coordinates(frame)? };
    let red = moved.symbol_reduced(order);
    let mut beta = vec![0; n];
    for &p in &red.rref().pivots {
        beta[red.index().jet(p).index.class()? - 1] += 1;
    }
    let alpha = (0..n).map(|i| sys.m() * class_count(n, order, i + 1) - beta[i]).collect();
    Ok(JanetTableau { order, beta, alpha, frame: frame.clone() })
}

/// `count` random integer frames with entries in [-3, 3] and determinant ±1.
pub fn random_frames(n: usize, count: usize, seed: u64) -> Vec<CoordinateChange> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut fallback = None;
        let mut found = None;
        for _ in 0..20_000 {
            let rows: Vec<Vec<Rational>> =
                (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
            let m = Matrix::from_rows(rows);
            let det = m.determinant();
            if det.is_zero() {
                continue;
            }
            if det == int(1) || det == int(-1) {
                found = Some(m);
                break;
            }
            fallback.get_or_insert(m);
        }
        let m = found.or(fallback).unwrap_or_else(|| Matrix::identity(n));
        out.push(CoordinateChange::new(m).expect("nonsingular by construction"));
    }
    out
}

/// Settings for [`is_involutive_symbol`].
#[derive(Clone, Debug)]
pub struct InvolutionOptions {
    pub frame: Option<CoordinateChange>,
    pub frames: usize,
    pub seed: u64,
    /// Orders checked by the cohomology cross-check; defaults to 2q + n.
    pub window: Option<usize>,
}

impl Default for InvolutionOptions {
    fn default() -> Self {
        Self { frame: None, frames: DEFAULT_FRAMES, seed: 0, window: None }
    }
}

impl InvolutionOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn window_for<F: Field>(&self, sys: &LinearSystem<F>) -> usize {
        self.window.unwrap_or(2 * sys.order() + sys.n())
    }
}

/// Evidence behind an involution verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Certificate {
    /// The Cartan equality held in frame number `trial` (0 is the given one).
    CartanFrame { trial: usize },
    /// No frame passed but every Hˢ vanished through `through_order`; exact
    /// when the symbol became zero inside the window.
    CohomologyWindow { through_order: usize, exact: bool },
    /// A nonzero cohomology group.
    Obstruction { s: usize, order: usize, dim: usize },
}

#[derive(Clone, Debug)]
pub struct InvolutionVerdict {
    pub involutive: bool,
    pub tableau: JanetTableau,
    pub certificate: Certificate,
}

/// Tries the given frame and then random ones for the Cartan equality
/// dim g_{order+1} = Σ i·αⁱ. Returns the first passing tableau, or the one
/// maximizing (βⁿ, βⁿ⁻¹, …) among all trials.
pub fn search_frames<F: Field>(
    sys: &LinearSystem<F>,
    order: usize,
    opts: &InvolutionOptions,
) -> Result<(Option<usize>, JanetTableau)> {
    let n = sys.n();
    let next = sys.symbol_dimension(order + 1);
    let first = opts.frame.clone().unwrap_or_else(|| CoordinateChange::identity(n));
    let frames = std::iter::once(first).chain(random_frames(n, opts.frames, opts.seed));
    let mut best: Option<JanetTableau> = None;
    for (trial, frame) in frames.enumerate() {
        let tab = janet_tableau(sys, order, &frame)?;
        if tab.cartan_sum() == next {
            return Ok((Some(trial), tab));
        }
        if best.as_ref().is_none_or(|b| tab.key() > b.key()) {
            best = Some(tab);
        }
    }
    Ok((None, best.expect("at least one frame is tried")))
}

/// Involution of the symbol at `order`.
///
/// A passing Cartan test in the given frame is conclusive. Otherwise
/// δ-cohomology is computed over the window: a nonzero Hˢ settles the
/// negative answer, and when none shows up random frames are searched for
/// a tableau whose characters can be read.
pub fn is_involutive_symbol<F: Field>(
    sys: &LinearSystem<F>,
    order: usize,
    opts: &InvolutionOptions,
) -> Result<InvolutionVerdict> {
    let first = opts.frame.clone().unwrap_or_else(|| CoordinateChange::identity(sys.n()));
    let tableau = janet_tableau(sys, order, &first)?;
    if tableau.cartan_sum() == sys.symbol_dimension(order + 1) {
        return Ok(InvolutionVerdict { involutive: true, tableau, certificate: CartanFrame { trial: 0 } });
    }
    let window = opts.window_for(sys);
    let scan = scan_cohomology(sys, order, sys.n(), window)?;
    if let Some((s, t, dim)) = scan.obstruction {
        return Ok(InvolutionVerdict { involutive: false, tableau, certificate: Obstruction { s, order: t, dim } });
    }
    let (trial, tableau) = search_frames(sys, order, opts)?;
    let certificate = match trial {
        Some(trial) => CartanFrame { trial },
        None => CohomologyWindow { through_order: scan.through_order, exact: scan.exact },
    };
    Ok(InvolutionVerdict { involutive: true, tableau, certificate })
}

use Certificate::{CartanFrame, CohomologyWindow, Obstruction};

/// Result of checking H¹ … H^{max_s} over a range of orders.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyScan {
    pub from_order: usize,
    pub through_order: usize,
    /// True when the symbol vanished inside the window, so every later group
    /// is zero as well.
    pub exact: bool,
    /// First (s, order, dim) with nonzero cohomology.
    pub obstruction: Option<(usize, usize, usize)>,
}

/// Checks Hˢ_t = 0 for 1 ≤ s ≤ max_s and from ≤ t ≤ from + window.
pub fn scan_cohomology<F: Field>(
    sys: &LinearSystem<F>,
    from: usize,
    max_s: usize,
    window: usize,
) -> Result<CohomologyScan> {
    let mut cx = DeltaComplex::new(sys);
    let max_s = max_s.min(sys.n());
    for t in from..=from + window {
        if cx.symbol_dim(t) == 0 {
            return Ok(CohomologyScan { from_order: from, through_order: t, exact: true, obstruction: None });
        }
        for s in 1..=max_s {
            let h = cx.cohomology(s, t)?.cohomology;
            if h != 0 {
                return Ok(CohomologyScan { from_order: from, through_order: t, exact: false, obstruction: Some((s, t, h)) });
            }
        }
    }
    Ok(CohomologyScan { from_order: from, through_order: from + window, exact: false, obstruction: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetspace::{JetCoordinate, MultiIndex};
    use crate::pdesystem::Equation;

    fn sys(n: usize, eqs: &[&[(&[usize], i64)]]) -> LinearSystem {
        let eqs = eqs
            .iter()
            .map(|terms| {
                Equation::new(
                    terms.iter().map(|(v, c)| (JetCoordinate::new(0, MultiIndex::from_derivatives(n, v).unwrap()), int(*c))),
                )
                .unwrap()
            })
            .collect();
        LinearSystem::new(n, 1, eqs).unwrap()
    }

    fn example7() -> LinearSystem {
        sys(4, &[&[(&[4, 4], 1)], &[(&[3, 4], 1), (&[2, 2], -1)], &[(&[3, 3], 1)], &[(&[2, 4], 1), (&[1, 1], -1)]])
    }

    fn twisted_cubic() -> LinearSystem {
        sys(3, &[&[(&[3, 3], 1), (&[2], -1)], &[(&[2, 3], 1), (&[1], -1)], &[(&[2, 2], 1), (&[1, 3], -1)]])
    }

    #[test]
    fn example7_symbol_dimensions() {
        let s = example7();
        let dims: Vec<usize> = (2..=5).map(|t| symbol(&s, t).dim()).collect();
        assert_eq!(dims, [6, 4, 1, 0]);
    }

    #[test]
    fn full_jet_space_symbol() {
        let s = LinearSystem::<Rational>::new(3, 2, vec![]).unwrap();
        assert_eq!(symbol(&s, 2).dim(), 12);
    }

    #[test]
    fn delta_squares_to_zero() {
        for s in [example7(), twisted_cubic()] {
            let mut cx = DeltaComplex::new(&s);
            for t in 2..=5 {
                for deg in 0..s.n() - 1 {
                    let a = cx.delta(deg, t).unwrap();
                    let b = cx.delta(deg + 1, t - 1).unwrap();
                    assert!(b.mul(&a).is_zero(), "δ² ≠ 0 at s={deg}, t={t}");
                }
            }
        }
    }

    #[test]
    fn top_degree_is_an_error() {
        assert_eq!(delta_matrix(&example7(), 4, 4).unwrap_err(), Error::TopExteriorDegree { s: 4, n: 4 });
    }

    #[test]
    fn example7_acyclicity() {
        let s = example7();
        let mut cx = DeltaComplex::new(&s);
        assert_eq!(cx.cohomology(2, 4).unwrap().cohomology, 0);
        assert_eq!(cx.cohomology(3, 4).unwrap().cohomology, 0);
        assert_eq!(cx.cohomology(4, 4).unwrap().cohomology, 1);
        let central = cx.delta(3, 4).unwrap();
        assert_eq!((central.rows(), central.cols(), central.rank()), (4, 4, 4));
        let left = cx.delta(2, 4).unwrap();
        assert_eq!((left.cols(), left.rows(), left.rank()), (6, 16, 6));
        assert_eq!(cx.cohomology(2, 3).unwrap().cohomology, 0);
        let seq = cx.sequence(5).unwrap();
        assert_eq!(seq.dims[1..], [4, 24, 24, 4]);
        assert!(seq.is_exact());
    }

    #[test]
    fn twisted_cubic_is_involutive() {
        let v = is_involutive_symbol(&twisted_cubic(), 2, &InvolutionOptions::default()).unwrap();
        assert!(v.involutive);
        assert_eq!(v.tableau.alpha, [3, 0, 0]);
        assert_eq!(v.certificate, Certificate::CartanFrame { trial: 0 });
    }

    #[test]
    fn example7_is_not_involutive() {
        let v = is_involutive_symbol(&example7(), 4, &InvolutionOptions::default()).unwrap();
        assert!(!v.involutive);
        assert_eq!(v.certificate, Certificate::Obstruction { s: 4, order: 4, dim: 1 });
    }

    #[test]
    fn random_frames_are_unimodular_and_reproducible() {
        let a = random_frames(3, 5, 7);
        assert_eq!(a, random_frames(3, 5, 7));
        for f in &a {
            let d = f.matrix().determinant();
            assert!(d == int(1) || d == int(-1));
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), [vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), [Vec::<usize>::new()]);
    }
}
