//! Formal integrability: the completion loop, its certificate, codimension
//! and the characteristic matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pdesystem::{Equation, LinearSystem};
use crate::ratlinalg::{Field, Monomial, Poly, Rational};
use crate::spencer::{is_involutive_symbol, scan_cohomology, CohomologyScan, InvolutionOptions, InvolutionVerdict};

pub const DEFAULT_MAX_STEPS: usize = 10;

/// One iteration of the completion loop.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub step: usize,
    /// Order at which the new equations appeared.
    pub order: usize,
    pub gained: Vec<Equation>,
    /// dim R_0 … dim R_order before and after adding them.
    pub dims_before: Vec<usize>,
    pub dims_after: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    FormallyIntegrable,
    Completed { steps: usize },
    WindowInconclusive,
}

/// Why the final system is formally integrable: from `order` on the symbol
/// has H¹ = H² = 0 over the scanned window, and every projection between
/// the system's order and `order` is onto.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub order: usize,
    pub acyclicity: CohomologyScan,
    pub surjective: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct IntegrabilityReport {
    pub verdict: Verdict,
    pub trace: Vec<TraceStep>,
    pub system: LinearSystem,
    pub evidence: Option<Evidence>,
}

impl IntegrabilityReport {
    pub fn gained(&self) -> impl Iterator<Item = &Equation> {
        self.trace.iter().flat_map(|s| s.gained.iter())
    }

    pub fn is_certified(&self) -> bool {
        self.verdict != Verdict::WindowInconclusive
    }
}

/// Projects the system one order at a time until nothing new appears, then
/// certifies formal integrability through 2-acyclicity and onto projections.
/// Higher-order gains found during certification are added and the loop
/// resumes.
pub fn complete(sys: &LinearSystem, max_steps: usize, opts: &InvolutionOptions) -> Result<IntegrabilityReport> {
    let mut cur = sys.clone();
    let mut trace: Vec<TraceStep> = Vec::new();
    let inconclusive = |cur: LinearSystem, trace: Vec<TraceStep>| IntegrabilityReport {
        verdict: Verdict::WindowInconclusive,
        trace,
        system: cur,
        evidence: None,
    };
    loop {
        if trace.len() >= max_steps.max(1) {
            return Ok(inconclusive(cur, trace));
        }
        let q = cur.order();
        let gains = cur.projection_gains(q + 1, q);
        if !gains.is_empty() {
            let next = cur.projected_system(1);
            trace.push(step(&cur, &next, q, gains, trace.len() + 1));
            cur = next;
            continue;
        }
        let window = opts.window_for(&cur);
        let mut surjective = Vec::new();
        let mut restart = false;
        for t in q..=q + window {
            if !cur.projection_surjective(t) {
                surjective.push((t, false));
                let gains = cur.projection_gains(t + 1, t);
                let next = cur.with_equations(gains.clone());
                trace.push(step(&cur, &next, t, gains, trace.len() + 1));
                cur = next;
                restart = true;
                break;
            }
            surjective.push((t, true));
            let acyclicity = scan_cohomology(&cur, t, 2, window)?;
            if acyclicity.obstruction.is_none() {
                let verdict = if trace.is_empty() {
                    Verdict::FormallyIntegrable
                } else {
                    Verdict::Completed { steps: trace.len() }
                };
                let evidence = Evidence { order: t, acyclicity, surjective };
                return Ok(IntegrabilityReport { verdict, trace, system: cur, evidence: Some(evidence) });
            }
        }
        if !restart {
            return Ok(inconclusive(cur, trace));
        }
    }
}

fn step(before: &LinearSystem, after: &LinearSystem, order: usize, gained: Vec<Equation>, n: usize) -> TraceStep {
    TraceStep { step: n, order, gained, dims_before: before.dimensions(order), dims_after: after.dimensions(order) }
}

/// True iff R_{order+1} projects onto R_order.
pub fn projection_surjective<F: Field>(sys: &LinearSystem<F>, order: usize) -> bool {
    sys.projection_surjective(order)
}

#[derive(Clone, Debug)]
pub struct Codimension {
    pub codimension: usize,
    /// Order of the involutive symbol the characters were read from.
    pub order: usize,
    pub verdict: InvolutionVerdict,
}

impl Codimension {
    pub fn alpha(&self) -> &[usize] {
        &self.verdict.tableau.alpha
    }

    /// Smallest nonzero character, i.e. the one of highest class.
    pub fn leading_character(&self) -> Option<usize> {
        self.alpha().iter().rev().copied().find(|&a| a != 0)
    }
}

/// n minus the highest class with a nonzero character, read at the first
/// involutive order ≥ max(q, 1); n when every character vanishes.
pub fn codimension<F: Field>(sys: &LinearSystem<F>, opts: &InvolutionOptions) -> Result<Codimension> {
    let q = sys.order();
    if !sys.projection_gains(q + 1, q).is_empty() {
        return Err(Error::NotCompleted { order: q });
    }
    let n = sys.n();
    let start = q.max(1);
    let last = start + opts.window_for(sys);
    for t in start..=last {
        let verdict = is_involutive_symbol(sys, t, opts)?;
        if verdict.involutive {
            let top = verdict.tableau.alpha.iter().rposition(|&a| a != 0);
            let codimension = top.map_or(n, |i| n - (i + 1));
            return Ok(Codimension { codimension, order: t, verdict });
        }
    }
    Err(Error::NoInvolutiveOrder { max_order: last })
}

/// Rows are the top-order equations, columns the unknowns; entry (τ, k) is
/// Σ a^{τμ}_k χ^μ.
#[derive(Clone, Debug)]
pub struct CharacteristicMatrix {
    pub entries: Vec<Vec<Poly>>,
    pub minors: Vec<Poly>,
}

pub fn characteristic_matrix(sys: &LinearSystem) -> CharacteristicMatrix {
    let q = sys.order();
    let m = sys.m();
    let entries: Vec<Vec<Poly>> = sys
        .equations()
        .iter()
        .filter(|e| e.order() == q)
        .map(|e| {
            let mut row = vec![Poly::zero(); m];
            for (jet, c) in e.top().terms() {
                let mono: Monomial = jet.index.entries().to_vec();
                row[jet.unknown] = row[jet.unknown].add(&Poly::monomial(mono, c.clone()));
            }
            row
        })
        .collect();
    let minors = if entries.len() < m {
        Vec::new()
    } else {
        crate::spencer::subsets(entries.len(), m)
            .into_iter()
            .map(|rows| determinant(rows.iter().map(|&r| entries[r].clone()).collect()))
            .filter(|p| !p.is_zero())
            .collect()
    };
    CharacteristicMatrix { entries, minors }
}

/// Laplace expansion along the first row.
fn determinant(rows: Vec<Vec<Poly>>) -> Poly {
    let k = rows.len();
    if k == 0 {
        return Poly::one();
    }
    if k == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..k {
        if rows[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Poly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = rows[0][j].mul(&determinant(sub));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Monomial χ^μ scaled by `c`, handy for building expected polynomials.
pub fn chi(exps: &[u32], c: Rational) -> Poly {
    Poly::monomial(exps.to_vec(), c)
}
