//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::fmt::Debug;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spencer_cli::corpus;
use spencer_cli::parser::{parse, parse_frame};
use spencer_cli::report::{analyze, AnalysisOptions};
use spencer_core::completion::{codimension, complete, Verdict, DEFAULT_MAX_STEPS};
use spencer_core::hilbert::{compare, hilbert_function, principal_class_series, PowerSeries};
use spencer_core::inverse::{inverse_system, spencer_apply};
use spencer_core::pdesystem::LinearSystem;
use spencer_core::purity::{is_pure, localize, localized_dimension};
use spencer_core::ratlinalg::{int, rat, Matrix, Rational};
use spencer_core::spencer::{
    is_involutive_symbol, random_frames, scan_cohomology, search_frames, symbol, Certificate, DeltaComplex,
    InvolutionOptions,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sys(text: &str) -> LinearSystem {
    parse(text).unwrap_or_else(|e| panic!("{text}: {e}")).system
}

fn eq<T: PartialEq + Debug>(what: &str, actual: T, expected: T) -> Outcome {
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected:?}, got {actual:?}"))
    }
}

fn ensure(what: &str, cond: bool) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(format!("{what} does not hold"))
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn opts() -> InvolutionOptions {
    InvolutionOptions::with_seed(0)
}

fn labels(s: &LinearSystem, jets: &[spencer_core::jetspace::JetCoordinate]) -> Vec<String> {
    jets.iter().map(|j| s.jet_label(j)).collect()
}

fn abstract_examples() -> Outcome {
    let cases: [(&str, usize, &[&str]); 4] = [
        ("vars=1; eq: y[1,1]", 2, &["y", "y_{1}"]),
        ("vars=2; eq: y[2,2]; eq: y[1,2] - y[1,1]", 4, &["y", "y_{1}", "y_{2}", "y_{11}"]),
        ("vars=2; eq: y[2,2,2]; eq: y[1,2] - y[1,1]", 6, &["y", "y_{1}", "y_{2}", "y_{11}", "y_{22}", "y_{111}"]),
        (
            "vars=3; eq: y[3,3]; eq: y[2,3] - y[1,1]; eq: y[2,2]",
            8,
            &["y", "y_{1}", "y_{2}", "y_{3}", "y_{11}", "y_{12}", "y_{13}", "y_{111}"],
        ),
    ];
    for (text, dim, par) in cases {
        let s = sys(text);
        let inv = inverse_system(&s, 12).map_err(e)?;
        eq(&format!("dim M for {text}"), inv.dim(), dim)?;
        eq(&format!("parametric jets for {text}"), labels(&s, inv.parametric()), par.iter().map(|x| x.to_string()).collect())?;
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn principal_class_sanity() -> Outcome {
    for n in 1..=6u32 {
        let s = principal_class_series(&vec![2; n as usize], n as usize, n as usize + 2).map_err(e)?;
        let expected: Vec<i64> = (0..=n + 2).map(|k| if k <= n { binomial(n, k) } else { 0 }).collect();
        eq(&format!("series for n={n}"), s.coefficients.clone(), expected)?;
        eq(&format!("sum for n={n}"), s.sum(), 1i64 << n)?;
    }
    Ok(())
}

fn example1() -> Outcome {
    let s = sys("vars=2; eq: y[2,2,2]; eq: y[1,2,2]; eq: y[1,1,2]; eq: y[1,1,1]; eq: y[2,2]; eq: y[1,2]");
    let v = is_involutive_symbol(&s, s.order(), &opts()).map_err(e)?;
    ensure("involutive", v.involutive)?;
    let rep = complete(&s, DEFAULT_MAX_STEPS, &opts()).map_err(e)?;
    eq("verdict", rep.verdict, Verdict::FormallyIntegrable)?;
    let inv = inverse_system(&s, 8).map_err(e)?;
    eq("dim R", inv.dim(), 4)?;
    let gens: Vec<String> = inv.top_generators().iter().map(|g| inv.render(g)).collect();
    eq("generators", gens, vec!["E ≡ a^{2} = 0".to_string(), "E ≡ a^{11} = 0".to_string()])?;
    eq("socle dim", inv.socle().len(), 2)
}

fn example2() -> Outcome {
    let s = sys("vars=3; eq: y[3,3]; eq: y[2,3]; eq: y[1,3]; eq: y[1,2]");
    let frame = parse_frame("1,-1,0;0,1,0;0,0,1").map_err(e)?;
    let moved = s.change_coordinates(&frame).map_err(e)?.minimized();
    let v = is_involutive_symbol(&moved, 2, &opts()).map_err(e)?;
    eq("certificate after frame change", v.certificate, Certificate::CartanFrame { trial: 0 })?;
    eq("codimension", codimension(&moved, &opts()).map_err(e)?.codimension, 2)?;
    let p = is_pure(&s, &InvolutionOptions { frame: Some(frame), ..opts() }).map_err(e)?;
    eq("codimension", p.codimension, 2)?;
    eq("torsion", p.torsion, vec!["y_{3}".to_string()])?;
    ensure("not 2-pure", !p.pure)
}

fn example3() -> Outcome {
    let s = sys("vars=3; eq: y[1,1]; eq: y[1,3] - y[2]");
    let rep = complete(&s, DEFAULT_MAX_STEPS, &opts()).map_err(e)?;
    let gained: Vec<Vec<String>> =
        rep.trace.iter().map(|t| t.gained.iter().map(|g| s.render_equation(g)).collect()).collect();
    eq("gained", gained, vec![vec!["y_{12}".to_string()], vec!["y_{22}".to_string()]])?;
    let perm = parse_frame("0,0,1;0,1,0;1,0,0").map_err(e)?;
    let moved = rep.system.change_coordinates(&perm).map_err(e)?;
    let v = is_involutive_symbol(&moved, 2, &opts()).map_err(e)?;
    ensure("involutive after permutation", v.involutive)?;
    eq("alpha", v.tableau.alpha, vec![2, 0, 0])?;
    let p = is_pure(&s, &opts()).map_err(e)?;
    eq("codimension", p.codimension, 2)?;
    eq("companion torsion", p.companion_torsion, Some(vec![]))?;
    ensure("2-pure", p.pure)
}

fn example4() -> Outcome {
    let s = sys("vars=3; eq: y[3,3]; eq: y[2,3] - y[1,3]; eq: y[2,2] - y[1,2]");
    let v = is_involutive_symbol(&s, 2, &opts()).map_err(e)?;
    eq("certificate as given", v.certificate, Certificate::CartanFrame { trial: 0 })?;
    let cd = codimension(&s, &opts()).map_err(e)?;
    eq("codimension", cd.codimension, 2)?;
    let loc = localize(&s, 2).map_err(e)?;
    let ld = localized_dimension(&loc, 8).map_err(e)?;
    eq("localized dim", ld.dim, 3)?;
    eq("localized dim = leading character", Some(ld.dim), cd.leading_character())
}

fn example5() -> Outcome {
    let r = sys("vars=3; eq: y[3,3] - y[1,1]; eq: y[2,3]; eq: y[2,2] - y[1,1]; eq: y[1,3]; eq: y[1,2]");
    let r1 = sys("vars=3; eq: y[3,3] - y[1,1]; eq: y[2,3]; eq: y[2,2] - y[1,1]");
    let r2 = sys("vars=3; eq: y[3,3] - y[1,1]; eq: y[2,3,3]; eq: y[2,2] - y[1,1]");
    let dims: Vec<usize> =
        [&r, &r1, &r2].iter().map(|s| inverse_system(s, 8).map(|i| i.dim())).collect::<Result<_, _>>().map_err(e)?;
    eq("dims", dims, vec![5, 8, 12])?;
    let s1 = principal_class_series(&[2, 2, 2], 3, 6).map_err(e)?;
    eq("series R'", s1.coefficients.clone(), vec![1, 3, 3, 1, 0, 0, 0])?;
    ensure("R' counted = series", compare(&hilbert_function(&r1, 6), &s1).map_err(e)?.agrees())?;
    let s2 = principal_class_series(&[2, 3, 2], 3, 6).map_err(e)?;
    eq("series R''", s2.coefficients.clone(), vec![1, 3, 4, 3, 1, 0, 0])?;
    ensure("R'' counted = series", compare(&hilbert_function(&r2, 6), &s2).map_err(e)?.agrees())?;
    let inv1 = inverse_system(&r1, 8).map_err(e)?;
    let g1 = inv1.top_generators();
    eq("E'", g1.iter().map(|g| inv1.render(g)).collect(), vec!["E ≡ a^{111} + a^{122} + a^{133} = 0".to_string()])?;
    let inv2 = inverse_system(&r2, 8).map_err(e)?;
    let g2 = inv2.top_generators();
    eq("E''", g2.iter().map(|g| inv2.render(g)).collect(), vec!["E ≡ a^{1113} + a^{1223} + a^{1333} = 0".to_string()])?;
    let d1 = spencer_apply(0, &g1[0].section).map_err(e)?;
    eq("d_1 E'", d1.render(1, 0), "a^{11} + a^{22} + a^{33}".to_string())?;
    ensure("d_1 E' satisfies R'", d1.satisfies(&r1))
}

fn example6() -> Outcome {
    let cubic = sys("vars=3; eq: y[3,3,3] - y[1]; eq: y[3,3] - y[2]");
    let rep = complete(&cubic, DEFAULT_MAX_STEPS, &opts()).map_err(e)?;
    let c = &rep.system;
    eq("twisted cubic equations", c.equations().len(), 3)?;
    eq("twisted cubic order", c.order(), 2)?;
    let v = is_involutive_symbol(c, 2, &opts()).map_err(e)?;
    ensure("twisted cubic involutive", v.involutive)?;
    eq("alpha", v.tableau.alpha, vec![3, 0, 0])?;
    for t in 1..=8 {
        eq(&format!("dim g_{t}"), symbol(c, t).dim(), 3)?;
    }

    let curve = sys("vars=3; eq: y[3,3,3] - y[1,1]; eq: y[2,2] - y[1,3]");
    let rep = complete(&curve, DEFAULT_MAX_STEPS, &opts()).map_err(e)?;
    let s = &rep.system;
    eq("par_5 count", s.reduced(5).dimension(), 27)?;
    let h = hilbert_function(s, 8);
    eq("hilbert", h.coefficients[..6].to_vec(), vec![1, 3, 5, 6, 6, 6])?;
    let series: PowerSeries = principal_class_series(&[3, 2], 3, 8).map_err(e)?;
    ensure("counted = degree (3,2) series", compare(&h, &series).map_err(e)?.agrees())?;
    let mut cx = DeltaComplex::new(s);
    let seq = cx.sequence(6).map_err(e)?;
    eq("δ-sequence dims at order 5", seq.dims.clone(), vec![6, 18, 18, 6])?;
    ensure("δ-sequence exact", seq.is_exact())?;
    let h2 = cx.cohomology(2, 3).map_err(e)?;
    ensure("kernel ≥ 13", h2.cocycles >= 13)?;
    eq("image", h2.coboundaries, 12)?;
    ensure("H² at g_3 nonzero", h2.cohomology > 0)
}

fn example7() -> Outcome {
    let text = "vars=4; unknowns=1; eq: y[4,4]=0; eq: y[3,4]-y[2,2]=0; eq: y[3,3]=0; eq: y[2,4]-y[1,1]=0";
    let s = sys(text);
    eq("dim R_1..R_6", s.dimensions(6)[1..].to_vec(), vec![5, 11, 15, 16, 16, 16])?;
    let g: Vec<usize> = (3..=5).map(|t| symbol(&s, t).dim()).collect();
    eq("dim g_3..g_5", g, vec![4, 1, 0])?;
    let mut cx = DeltaComplex::new(&s);
    let h: Vec<usize> = (2..=4).map(|k| cx.cohomology(k, 4).map(|r| r.cohomology)).collect::<Result<_, _>>().map_err(e)?;
    eq("H², H³ zero and H⁴ nonzero at g_4", h.iter().map(|&x| x > 0).collect(), vec![false, false, true])?;
    ensure("g_4 not involutive", !is_involutive_symbol(&s, 4, &opts()).map_err(e)?.involutive)?;
    eq("H² at g_3", cx.cohomology(2, 3).map_err(e)?.cohomology, 0)?;
    let seq = cx.sequence(5).map_err(e)?;
    eq("sequence", seq.dims[1..].to_vec(), vec![4, 24, 24, 4])?;
    ensure("sequence exact", seq.is_exact())?;

    let primed = sys("vars=4; eq: y[4,4]; eq: y[3,4] - y[2,2] - y[1]; eq: y[3,3]; eq: y[2,4] - y[1,1] - y[3]");
    let rep = complete(&primed, DEFAULT_MAX_STEPS, &opts()).map_err(e)?;
    eq("primed verdict", rep.verdict.clone(), Verdict::FormallyIntegrable)?;
    ensure("primed certified", rep.is_certified())?;
    eq("primed gained", rep.gained().count(), 0)?;

    let report = analyze(&s, &AnalysisOptions::default());
    eq("reported dim R", report.inverse.dimension, Some(16))?;
    ensure("8 vs 16 flagged in notes", report.notes.iter().any(|n| n.contains("16") && n.contains('8')))
}

fn example8() -> Outcome {
    let s = sys("vars=3; eq: y[1,3]; eq: y[2,3]");
    let frame = parse_frame("1,0,-1;0,1,0;0,0,1").map_err(e)?;
    let moved = s.change_coordinates(&frame).map_err(e)?.minimized();
    let mut eqs: Vec<String> = moved.equations().iter().map(|x| moved.render_equation(x)).collect();
    eqs.sort();
    eq("transformed system", eqs, vec!["y_{23}".to_string(), "y_{33} - y_{13}".to_string()])?;
    let (trial, tab) = search_frames(&moved, 2, &opts()).map_err(e)?;
    eq("Cartan frame", trial, Some(0))?;
    eq("alpha", tab.alpha, vec![3, 1, 0])?;
    let p = is_pure(&s, &InvolutionOptions { frame: Some(frame), ..opts() }).map_err(e)?;
    eq("codimension", p.codimension, 1)?;
    eq("localized dim", p.localized_dimension, Some(1))?;
    eq("companion torsion", p.companion_torsion, Some(vec!["z^4".to_string()]))?;
    ensure("not 1-pure", !p.pure)
}

/// Completed forms of every corpus system plus the extra finite-type ones.
fn corpus_systems() -> Result<Vec<(String, LinearSystem)>, String> {
    let mut out = Vec::new();
    for ex in corpus::examples() {
        let rep = complete(&ex.system(), DEFAULT_MAX_STEPS, &opts()).map_err(e)?;
        out.push((ex.name.to_string(), rep.system));
    }
    out.push(("R'".into(), sys("vars=3; eq: y[3,3] - y[1,1]; eq: y[2,3]; eq: y[2,2] - y[1,1]")));
    out.push(("R''".into(), sys("vars=3; eq: y[3,3] - y[1,1]; eq: y[2,3,3]; eq: y[2,2] - y[1,1]")));
    Ok(out)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let zero_bias = rng.gen_range(0..=2);
    Matrix::from_rows(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if rng.gen_range(0..4) < zero_bias { int(0) } else { rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)) })
                    .collect()
            })
            .collect(),
    )
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..500 {
        let m = random_matrix(&mut rng);
        let kernel = m.kernel_basis();
        eq(&format!("rank + nullity of matrix {k}"), m.rank() + kernel.cols(), m.cols())?;
        ensure(&format!("kernel of matrix {k} is annihilated"), m.mul(&kernel).is_zero())?;
    }

    let systems = corpus_systems()?;
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = systems.iter().map(|(name, s)| scope.spawn(move || system_properties(name, s))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });
    outcomes.into_iter().collect()
}

/// δ² = 0, Cartan vs cohomology, dᵢdⱼ = dⱼdᵢ and frame invariance on one
/// completed system.
fn system_properties(name: &str, s: &LinearSystem) -> Outcome {
    let n = s.n();
    let q = s.order().max(1);
    let mut cx = DeltaComplex::new(s);
    for t in q + 1..=q + 2 {
        for k in 0..n.saturating_sub(1) {
            let first = cx.delta(k, t).map_err(e)?;
            let second = cx.delta(k + 1, t - 1).map_err(e)?;
            ensure(&format!("δ² = 0 on {name} at s={k}, order {t}"), second.mul(&first).is_zero())?;
        }
    }

    let window = opts().window_for(s);
    let cartan = search_frames(s, q, &opts()).map_err(e)?.0.is_some();
    let scan = scan_cohomology(s, q, n, window).map_err(e)?;
    eq(&format!("Cartan test vs cohomology on {name}"), cartan, scan.obstruction.is_none())?;

    if let Ok(inv) = inverse_system(s, 12) {
        for f in inv.sections() {
            for i in 0..n {
                for j in i + 1..n {
                    let ij = spencer_apply(i, &spencer_apply(j, f).map_err(e)?).map_err(e)?;
                    let ji = spencer_apply(j, &spencer_apply(i, f).map_err(e)?).map_err(e)?;
                    ensure(&format!("d_{}d_{} = d_{}d_{} on {name}", i + 1, j + 1, j + 1, i + 1), ij == ji)?;
                }
            }
        }
    }

    let span = s.order() + 2;
    let dims = s.dimensions(span);
    let cd = codimension(s, &opts()).map_err(e)?.codimension;
    for (k, frame) in random_frames(n, 20, 3).iter().enumerate() {
        let moved = s.change_coordinates(frame).map_err(e)?;
        eq(&format!("slice dims of {name} in frame {k}"), moved.dimensions(span), dims.clone())?;
        let moved_cd = codimension(&moved, &opts()).map_err(e)?.codimension;
        eq(&format!("codimension of {name} in frame {k}"), moved_cd, cd)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 abstract examples", abstract_examples),
        ("2 principal class with degrees 2", principal_class_sanity),
        ("3 example 1", example1),
        ("4 example 2", example2),
        ("5 example 3", example3),
        ("6 example 4", example4),
        ("7 example 5", example5),
        ("8 example 6", example6),
        ("9 example 7", example7),
        ("10 example 8", example8),
        ("11 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
