//! Relative localization over ℚ(χ₁,…,χ_{n−r}), torsion and purity.

use std::collections::BTreeMap;

use crate::completion::{codimension, complete, Codimension, IntegrabilityReport, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::inverse::inverse_system;
use crate::jetspace::{JetCoordinate, JetOrdering, MultiIndex};
use crate::pdesystem::{render_combination, CoordinateChange, Equation, LinearSystem};
use crate::ratlinalg::{Field, Matrix, Monomial, ParamScalar, Poly, Rational};
use crate::spencer::InvolutionOptions;

/// A system in the last r variables over ℚ(χ₁,…,χ_s), s = n − r, obtained
/// by substituting dⱼ → χⱼ for j ≤ s.
#[derive(Clone, Debug)]
pub struct LocalizedSystem {
    pub parameters: usize,
    pub system: LinearSystem<ParamScalar>,
}

impl LocalizedSystem {
    /// Image of y^k_μ: χ^{μ'} times the jet y^k_{μ''}.
    pub fn image(&self, jet: &JetCoordinate) -> (ParamScalar, JetCoordinate) {
        split(jet, self.parameters)
    }
}

fn split(jet: &JetCoordinate, s: usize) -> (ParamScalar, JetCoordinate) {
    let e = jet.index.entries();
    let mono: Monomial = e[..s].to_vec();
    let rest = MultiIndex::new(e[s..].to_vec());
    (ParamScalar::from_poly(Poly::monomial(mono, Rational::from_integer(1.into()))), JetCoordinate::new(jet.unknown, rest))
}

fn ensure_completed<F: Field>(sys: &LinearSystem<F>) -> Result<()> {
    let q = sys.order();
    if sys.projection_gains(q + 1, q).is_empty() {
        Ok(())
    } else {
        Err(Error::NotCompleted { order: q })
    }
}

/// r = n is the identity; r = 0 turns every derivation into a parameter.
pub fn localize(sys: &LinearSystem, r: usize) -> Result<LocalizedSystem> {
    let n = sys.n();
    if r > n {
        return Err(Error::BadLocalizationRank { r, n });
    }
    ensure_completed(sys)?;
    let s = n - r;
    let equations = sys
        .equations()
        .iter()
        .filter_map(|eq| {
            Equation::new(eq.terms().map(|(jet, c)| {
                let (chi, rest) = split(jet, s);
                (rest, chi.mul(&ParamScalar::from_rational(c)))
            }))
            .ok()
        })
        .collect();
    let system = LinearSystem::new(r, sys.m(), equations)?.with_display(sys.symbol(), sys.var_offset() + s);
    Ok(LocalizedSystem { parameters: s, system })
}

#[derive(Clone, Debug)]
pub struct LocalizedDimension {
    pub dim: usize,
    /// Order T with g_{T+1} = 0 and dim R_{T+1} = dim R_T.
    pub order: usize,
    pub parametric: Vec<JetCoordinate>,
}

pub fn default_max_order<F: Field>(sys: &LinearSystem<F>) -> usize {
    3 * sys.order() + sys.n() + 2
}

/// Dimension of the localized inverse system over ℚ(χ).
pub fn localized_dimension(loc: &LocalizedSystem, max_order: usize) -> Result<LocalizedDimension> {
    let sys = &loc.system;
    let q = sys.order();
    for t in q..=max_order.max(q) {
        if sys.symbol_dimension(t + 1) != 0 {
            continue;
        }
        let low = sys.reduced(t);
        if low.dimension() == sys.reduced(t + 1).dimension() {
            return Ok(LocalizedDimension { dim: low.dimension(), order: t, parametric: low.parametric() });
        }
    }
    Err(Error::NotFiniteTypeAfterLocalization { max_order })
}

/// Torsion of M seen at orders ≤ q + 1: combinations of parametric residues
/// that vanish after localization.
#[derive(Clone, Debug)]
pub struct Torsion {
    /// Basis of the torsion part of M_{q+1}.
    pub basis: Vec<Vec<(JetCoordinate, Rational)>>,
    /// Elements of the basis not obtained by differentiating lower ones.
    pub generators: Vec<Vec<(JetCoordinate, Rational)>>,
    pub labels: Vec<String>,
}

impl Torsion {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

pub fn torsion_generators(sys: &LinearSystem, r: usize) -> Result<Torsion> {
    let loc = localize(sys, r)?;
    if r == sys.n() {
        return Ok(Torsion { basis: Vec::new(), generators: Vec::new(), labels: Vec::new() });
    }
    let ld = localized_dimension(&loc, default_max_order(&loc.system))?;
    let top = sys.order() + 1;
    let orig = sys.reduced(top);
    let par = orig.parametric();
    let locred = loc.system.reduced(top.max(ld.order + 1));
    let locpar = locred.parametric();
    let pos: BTreeMap<&JetCoordinate, usize> = locpar.iter().enumerate().map(|(i, j)| (j, i)).collect();

    // Column p: the image of ȳ_p, in coordinates over the localized
    // parametric jets.
    let mut image = vec![vec![ParamScalar::zero(); par.len()]; locpar.len()];
    for (c, p) in par.iter().enumerate() {
        let (chi, rest) = loc.image(p);
        let nf = locred.normal_form(&rest).expect("jet within the localized order");
        for (jet, v) in nf {
            let r = pos[&jet];
            image[r][c] = image[r][c].add(&chi.mul(&v));
        }
    }

    // ℚ-kernel: clear denominators and split every entry by monomial.
    let mut dens: Vec<Poly> = Vec::new();
    for e in image.iter().flatten().filter(|e| !e.is_zero()) {
        if !dens.contains(e.denom()) {
            dens.push(e.denom().clone());
        }
    }
    let common = dens.iter().fold(Poly::one(), |acc, d| acc.mul(d));
    let mut rows: BTreeMap<(usize, Monomial), Vec<Rational>> = BTreeMap::new();
    for (r, line) in image.iter().enumerate() {
        for (c, e) in line.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
            let scale = common.div_exact(e.denom()).expect("denominator divides the product");
            for (mono, v) in e.numer().mul(&scale).terms() {
                let row = rows.entry((r, mono.clone())).or_insert_with(|| vec![Rational::zero(); par.len()]);
                row[c] = row[c].add(v);
            }
        }
    }
    let kernel = Matrix::from_rows_with_cols(rows.into_values().collect(), Some(par.len())).kernel_basis();

    // Echelon form with the highest jets first isolates low-order elements.
    let mut cols: Vec<usize> = (0..par.len()).collect();
    cols.sort_by(|&a, &b| JetOrdering::ClassAscending.compare(&par[b], &par[a]));
    let permuted: Vec<Vec<Rational>> =
        (0..kernel.cols()).map(|j| cols.iter().map(|&c| kernel.get(c, j).clone()).collect()).collect();
    let rref = Matrix::from_rows_with_cols(permuted, Some(par.len())).rref();
    let basis_rows: Vec<Vec<Rational>> = (0..rref.rank())
        .map(|i| {
            let mut v = vec![Rational::zero(); par.len()];
            for (k, &c) in cols.iter().enumerate() {
                v[c] = rref.matrix.get(i, k).clone();
            }
            v
        })
        .collect();

    let par_pos: BTreeMap<&JetCoordinate, usize> = par.iter().enumerate().map(|(i, j)| (j, i)).collect();
    let derivative = |v: &[Rational], i: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); par.len()];
        for (c, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (jet, w) in orig.normal_form(&par[c].raised(i)).expect("order ≤ q + 1") {
                let k = par_pos[&jet];
                out[k] = out[k].add(&x.mul(&w));
            }
        }
        out
    };
    let max_order = |v: &[Rational]| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, _)| par[c].order()).max().unwrap_or(0);
    let mut span: Vec<Vec<Rational>> = basis_rows
        .iter()
        .filter(|v| max_order(v) < top)
        .flat_map(|v| (0..sys.n()).map(|i| derivative(v, i)).collect::<Vec<_>>())
        .collect();
    let mut generators = Vec::new();
    for v in basis_rows.iter().rev() {
        let in_span = !span.is_empty() && Matrix::from_rows_with_cols(span.clone(), Some(par.len())).rref().contains(v);
        if !in_span {
            span.push(v.clone());
            generators.push(v.clone());
        }
    }
    let as_terms = |v: &Vec<Rational>| -> Vec<(JetCoordinate, Rational)> {
        let mut t: Vec<(JetCoordinate, Rational)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (par[c].clone(), x.clone())).collect();
        t.sort_by(|a, b| JetOrdering::ClassAscending.compare(&a.0, &b.0));
        t
    };
    let generators: Vec<_> = generators.iter().map(as_terms).collect();
    let labels = generators.iter().map(|g| render_combination(g.iter().map(|(j, c)| (sys.jet_label(j), c)))).collect();
    Ok(Torsion { basis: basis_rows.iter().map(as_terms).collect(), generators, labels })
}

#[derive(Clone, Debug)]
pub struct PurityReport {
    pub codimension: usize,
    pub localized_dimension: Option<usize>,
    pub localized_parametric: Vec<String>,
    pub torsion: Vec<String>,
    /// Torsion found on the first-order companion, when the order exceeds 1.
    pub companion_torsion: Option<Vec<String>>,
    pub pure: bool,
    pub leading_character: Option<usize>,
    pub frame: CoordinateChange,
    pub completion: IntegrabilityReport,
    pub characters: Codimension,
}

/// Completes the system, finds an involutive frame, reads the codimension r
/// and tests whether localizing at r kills anything.
pub fn is_pure(sys: &LinearSystem, opts: &InvolutionOptions) -> Result<PurityReport> {
    let completion = complete(sys, DEFAULT_MAX_STEPS, opts)?;
    let done = &completion.system;
    let characters = codimension(done, opts)?;
    let frame = characters.verdict.tableau.frame.clone();
    let moved = if frame.is_identity() { done.clone() } else { done.change_coordinates(&frame)?.minimized() };
    let r = characters.codimension;
    let n = sys.n();
    let (localized_dimension, localized_parametric) = if r == n {
        let dim = inverse_system(&moved, default_max_order(&moved)).ok().map(|inv| inv.dim());
        (dim, Vec::new())
    } else {
        let loc = localize(&moved, r)?;
        let ld = localized_dimension(&loc, default_max_order(&loc.system))?;
        (Some(ld.dim), ld.parametric.iter().map(|j| loc.system.jet_label(j)).collect())
    };
    let torsion = torsion_generators(&moved, r)?.labels;
    let companion_torsion = if moved.order() > 1 && r < n {
        Some(torsion_generators(&moved.first_order_companion(), r)?.labels)
    } else {
        None
    };
    let pure = torsion.is_empty() && companion_torsion.as_ref().is_none_or(|t| t.is_empty());
    Ok(PurityReport {
        codimension: r,
        localized_dimension,
        localized_parametric,
        torsion,
        companion_torsion,
        pure,
        leading_character: characters.leading_character(),
        frame,
        completion,
        characters,
    })
}
