//! The analysis report printed by `spencer analyze`.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use spencer_core::completion::{characteristic_matrix, codimension, complete, Verdict, DEFAULT_MAX_STEPS};
use spencer_core::hilbert::{compare, hilbert_function, principal_class_series};
use spencer_core::inverse::{default_max_order, inverse_system};
use spencer_core::pdesystem::{CoordinateChange, LinearSystem};
use spencer_core::purity::is_pure;
use spencer_core::spencer::{is_involutive_symbol, Certificate, DeltaComplex, InvolutionOptions};

use crate::corpus;
use crate::parser::render;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub frame: Option<CoordinateChange>,
    pub max_steps: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { seed: 0, frame: None, max_steps: DEFAULT_MAX_STEPS }
    }
}

impl AnalysisOptions {
    fn involution(&self) -> InvolutionOptions {
        InvolutionOptions { frame: self.frame.clone(), ..InvolutionOptions::with_seed(self.seed) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: InputSection,
    pub seed: u64,
    pub completion: CompletionSection,
    pub involution: Option<InvolutionSection>,
    pub acyclicity: Vec<AcyclicityRow>,
    pub codimension: Option<usize>,
    pub characteristic_minors: Vec<String>,
    pub hilbert: HilbertSection,
    pub inverse: InverseSection,
    pub purity: Option<PuritySection>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSection {
    pub sha256: String,
    pub n: usize,
    pub m: usize,
    pub order: usize,
    pub equations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepSection {
    pub step: usize,
    pub order: usize,
    pub gained: Vec<String>,
    pub dims_before: Vec<usize>,
    pub dims_after: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionSection {
    pub verdict: Verdict,
    pub steps: Vec<StepSection>,
    pub system: Vec<String>,
    pub certified_at: Option<usize>,
    pub onto: Vec<(usize, bool)>,
    pub dimensions: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionSection {
    pub order: usize,
    pub involutive: bool,
    pub certificate: Certificate,
    pub beta: Vec<usize>,
    pub alpha: Vec<usize>,
    pub frame: Vec<Vec<String>>,
}

/// Symbol dimension and H¹ … Hⁿ at one order.
#[derive(Clone, Debug, Serialize)]
pub struct AcyclicityRow {
    pub order: usize,
    pub symbol_dim: usize,
    pub cohomology: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSection {
    pub function: Vec<i64>,
    pub degrees: Option<Vec<usize>>,
    pub series: Option<Vec<i64>>,
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseSection {
    pub finite: bool,
    pub dimension: Option<usize>,
    pub parametric: Vec<String>,
    pub generators: Vec<String>,
    pub socle_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PuritySection {
    pub codimension: usize,
    pub leading_character: Option<usize>,
    pub localized_dimension: Option<usize>,
    pub localized_parametric: Vec<String>,
    pub torsion: Vec<String>,
    pub companion_torsion: Option<Vec<String>>,
    pub pure: bool,
}

impl AnalysisReport {
    pub fn is_conclusive(&self) -> bool {
        self.completion.verdict != Verdict::WindowInconclusive
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn digest(sys: &LinearSystem) -> String {
    let hash = Sha256::digest(render(sys).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

fn frame_rows(frame: &CoordinateChange) -> Vec<Vec<String>> {
    frame.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn equations(sys: &LinearSystem) -> Vec<String> {
    sys.equations().iter().map(|e| sys.render_equation(e)).collect()
}

pub fn analyze(sys: &LinearSystem, opts: &AnalysisOptions) -> AnalysisReport {
    let inv_opts = opts.involution();
    let mut notes = Vec::new();
    let input = InputSection { sha256: digest(sys), n: sys.n(), m: sys.m(), order: sys.order(), equations: equations(sys) };

    let (completion, done) = match complete(sys, opts.max_steps, &inv_opts) {
        Ok(rep) => {
            let q = rep.system.order();
            let section = CompletionSection {
                verdict: rep.verdict.clone(),
                steps: rep
                    .trace
                    .iter()
                    .map(|s| StepSection {
                        step: s.step,
                        order: s.order,
                        gained: s.gained.iter().map(|e| sys.render_equation(e)).collect(),
                        dims_before: s.dims_before.clone(),
                        dims_after: s.dims_after.clone(),
                    })
                    .collect(),
                system: equations(&rep.system),
                certified_at: rep.evidence.as_ref().map(|e| e.order),
                onto: rep.evidence.as_ref().map(|e| e.surjective.clone()).unwrap_or_default(),
                dimensions: rep.system.dimensions(q + 2),
            };
            (section, Some(rep))
        }
        Err(e) => {
            notes.push(format!("completion failed: {e}"));
            let section = CompletionSection {
                verdict: Verdict::WindowInconclusive,
                steps: Vec::new(),
                system: equations(sys),
                certified_at: None,
                onto: Vec::new(),
                dimensions: sys.dimensions(sys.order() + 2),
            };
            (section, None)
        }
    };
    let target = done.as_ref().map_or(sys, |r| &r.system);
    let q = target.order();
    let n = target.n();

    let involution = match is_involutive_symbol(target, q.max(1), &inv_opts) {
        Ok(v) => Some(InvolutionSection {
            order: v.tableau.order,
            involutive: v.involutive,
            certificate: v.certificate.clone(),
            beta: v.tableau.beta.clone(),
            alpha: v.tableau.alpha.clone(),
            frame: frame_rows(&v.tableau.frame),
        }),
        Err(e) => {
            notes.push(format!("involution test failed: {e}"));
            None
        }
    };

    let mut acyclicity = Vec::new();
    let mut cx = DeltaComplex::new(target);
    for t in q.max(1)..=q.max(1) + n {
        let symbol_dim = cx.symbol_dim(t);
        let cohomology = (1..=n).map(|s| cx.cohomology(s, t).map(|r| r.cohomology)).collect::<Result<Vec<_>, _>>();
        match cohomology {
            Ok(cohomology) => acyclicity.push(AcyclicityRow { order: t, symbol_dim, cohomology }),
            Err(e) => {
                notes.push(format!("cohomology at order {t} failed: {e}"));
                break;
            }
        }
    }

    let cd = match codimension(target, &inv_opts) {
        Ok(c) => Some(c.codimension),
        Err(e) => {
            notes.push(format!("codimension unavailable: {e}"));
            None
        }
    };
    let characteristic_minors = characteristic_matrix(target).minors.iter().map(|p| p.to_string()).collect();

    let span = q + n + 2;
    let function = hilbert_function(target, span);
    let mut hilbert = HilbertSection { function: function.coefficients.clone(), degrees: None, series: None, first_mismatch: None };
    let eqs = target.equations();
    if !eqs.is_empty() && eqs.len() <= n {
        let degrees: Vec<usize> = eqs.iter().map(|e| e.order()).collect();
        if let Ok(series) = principal_class_series(&degrees, n, span) {
            if let Ok(cmp) = compare(&function, &series) {
                hilbert.first_mismatch = cmp.first_mismatch;
            }
            hilbert.series = Some(series.coefficients.clone());
            hilbert.degrees = Some(degrees);
        }
    }

    let inverse = match inverse_system(target, default_max_order(target)) {
        Ok(inv) => InverseSection {
            finite: true,
            dimension: Some(inv.dim()),
            parametric: inv.parametric().iter().map(|j| target.jet_label(j)).collect(),
            generators: inv.top_generators().iter().map(|e| inv.render(e)).collect(),
            socle_dim: Some(inv.socle().len()),
        },
        Err(_) => {
            notes.push("the solution space is infinite-dimensional; no inverse system generators".into());
            InverseSection { finite: false, dimension: None, parametric: Vec::new(), generators: Vec::new(), socle_dim: None }
        }
    };

    let purity = match is_pure(sys, &inv_opts) {
        Ok(p) => Some(PuritySection {
            codimension: p.codimension,
            leading_character: p.leading_character,
            localized_dimension: p.localized_dimension,
            localized_parametric: p.localized_parametric,
            torsion: p.torsion,
            companion_torsion: p.companion_torsion,
            pure: p.pure,
        }),
        Err(e) => {
            notes.push(format!("purity test unavailable: {e}"));
            None
        }
    };

    notes.push("modular equations are printed as E ≡ Σ a^μ with positive leading sign".into());
    notes.push("the radical of the characteristic ideal is not computed".into());
    if corpus::find("example7").is_some_and(|ex| render(&ex.system()) == render(sys)) {
        notes.push("dim R = 16 = 1+4+6+4+1; a value of 8 quoted for this system does not match its own count".into());
    }

    AnalysisReport {
        input,
        seed: opts.seed,
        completion,
        involution,
        acyclicity,
        codimension: cd,
        characteristic_minors,
        hilbert,
        inverse,
        purity,
        notes,
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn to_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "input     n={} m={} order={} sha256={}", r.input.n, r.input.m, r.input.order, r.input.sha256);
    for e in &r.input.equations {
        let _ = writeln!(w, "  {e} = 0");
    }
    let _ = writeln!(w, "completion {:?}", r.completion.verdict);
    for s in &r.completion.steps {
        let _ = writeln!(w, "  step {} at order {}: gained {}", s.step, s.order, join(&s.gained));
        let _ = writeln!(w, "    dims {:?} -> {:?}", s.dims_before, s.dims_after);
    }
    if let Some(t) = r.completion.certified_at {
        let _ = writeln!(w, "  certified at order {t}, onto {:?}", r.completion.onto);
    }
    let _ = writeln!(w, "  dim R_t: {:?}", r.completion.dimensions);
    for e in &r.completion.system {
        let _ = writeln!(w, "  {e} = 0");
    }
    if let Some(v) = &r.involution {
        let _ = writeln!(w, "involution order {} involutive={} {:?}", v.order, v.involutive, v.certificate);
        let _ = writeln!(w, "  beta {:?} alpha {:?} frame {:?}", v.beta, v.alpha, v.frame);
    }
    let _ = writeln!(w, "acyclicity (order, dim g, H^1..H^n)");
    for row in &r.acyclicity {
        let _ = writeln!(w, "  {:>3} {:>4} {:?}", row.order, row.symbol_dim, row.cohomology);
    }
    match r.codimension {
        Some(cd) => {
            let _ = writeln!(w, "codimension {cd}");
        }
        None => {
            let _ = writeln!(w, "codimension unavailable");
        }
    }
    let _ = writeln!(w, "characteristic minors: {}", join(&r.characteristic_minors));
    let _ = writeln!(w, "hilbert function {}", join(&r.hilbert.function));
    if let (Some(d), Some(s)) = (&r.hilbert.degrees, &r.hilbert.series) {
        let _ = writeln!(w, "  degrees {d:?} series {} first mismatch {:?}", join(s), r.hilbert.first_mismatch);
    }
    if r.inverse.finite {
        let _ = writeln!(
            w,
            "inverse system dim {} socle {}",
            r.inverse.dimension.unwrap_or(0),
            r.inverse.socle_dim.unwrap_or(0)
        );
        let _ = writeln!(w, "  parametric {}", join(&r.inverse.parametric));
        for g in &r.inverse.generators {
            let _ = writeln!(w, "  {g}");
        }
    }
    if let Some(p) = &r.purity {
        let _ = writeln!(w, "purity r={} pure={}", p.codimension, p.pure);
        let _ = writeln!(w, "  localized dim {:?} parametric {}", p.localized_dimension, join(&p.localized_parametric));
        let _ = writeln!(w, "  torsion [{}]", join(&p.torsion));
        if let Some(c) = &p.companion_torsion {
            let _ = writeln!(w, "  companion torsion [{}]", join(c));
        }
    }
    for note in &r.notes {
        let _ = writeln!(w, "note: {note}");
    }
    out
}
