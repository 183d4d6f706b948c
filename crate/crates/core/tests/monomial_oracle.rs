//! Monomial systems have an independent description: the parametric jets are
//! the monomials outside the ideal. These tests compare the library against
//! brute-force counts of that description.

use proptest::prelude::*;
use spencer_core::hilbert::hilbert_function;
use spencer_core::inverse::inverse_system;
use spencer_core::jetspace::{enumerate, JetCoordinate, JetOrdering, MultiIndex};
use spencer_core::pdesystem::{Equation, LinearSystem};
use spencer_core::ratlinalg::int;
use spencer_core::spencer::{random_frames, DeltaComplex};

fn monomial_system(n: usize, gens: &[Vec<u32>]) -> LinearSystem {
    let eqs = gens
        .iter()
        .map(|g| Equation::new([(JetCoordinate::new(0, MultiIndex::new(g.clone())), int(1))]).unwrap())
        .collect();
    LinearSystem::new(n, 1, eqs).unwrap()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn standard(gens: &[Vec<u32>], mu: &[u32]) -> bool {
    !gens.iter().any(|g| divides(g, mu))
}

fn standard_count(n: usize, gens: &[Vec<u32>], t: usize) -> usize {
    enumerate(n, t, JetOrdering::ClassAscending).iter().filter(|m| standard(gens, m.entries())).count()
}

/// Generators that contain a pure power of every variable, so the system is
/// of finite type.
fn finite_generators(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    let powers = proptest::collection::vec(1u32..=3, n);
    let extra = proptest::collection::vec(proptest::collection::vec(0u32..=2, n), 0..3);
    (powers, extra).prop_map(move |(p, extra)| {
        let mut gens: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = p[i];
                e
            })
            .collect();
        gens.extend(extra.into_iter().filter(|e| e.iter().sum::<u32>() > 0));
        gens
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_function_counts_standard_monomials(gens in finite_generators(3)) {
        let s = monomial_system(3, &gens);
        let h = hilbert_function(&s, 7);
        for t in 0..=7 {
            prop_assert_eq!(h.coefficient(t), standard_count(3, &gens, t) as i64);
        }
    }

    #[test]
    fn inverse_dimension_and_socle(gens in finite_generators(3)) {
        let s = monomial_system(3, &gens);
        let inv = inverse_system(&s, 12).unwrap();
        let all: Vec<MultiIndex> = (0..=9)
            .flat_map(|t| enumerate(3, t, JetOrdering::ClassAscending))
            .filter(|m| standard(&gens, m.entries()))
            .collect();
        prop_assert_eq!(inv.dim(), all.len());
        let maximal = all
            .iter()
            .filter(|m| (0..3).all(|i| !standard(&gens, m.raised(i).entries())))
            .count();
        prop_assert_eq!(inv.socle().len(), maximal);
        prop_assert_eq!(inv.top_generators().len(), maximal);
    }

    #[test]
    fn frames_preserve_slice_dimensions(gens in finite_generators(2), seed in 0u64..1000) {
        let s = monomial_system(2, &gens);
        let span = s.order() + 2;
        let dims = s.dimensions(span);
        for frame in random_frames(2, 3, seed) {
            prop_assert_eq!(s.change_coordinates(&frame).unwrap().dimensions(span), dims.clone());
        }
    }

    #[test]
    fn prolongations_compose(gens in finite_generators(2), a in 0usize..3, b in 0usize..3) {
        let s = monomial_system(2, &gens);
        let top = s.order() + a + b + 1;
        prop_assert_eq!(s.prolong(a).prolong(b).dimensions(top), s.prolong(a + b).dimensions(top));
    }

    #[test]
    fn delta_squares_to_zero(gens in finite_generators(3)) {
        let s = monomial_system(3, &gens);
        let mut cx = DeltaComplex::new(&s);
        let q = s.order();
        for t in q.max(2)..=q + 1 {
            for k in 0..2 {
                let first = cx.delta(k, t).unwrap();
                let second = cx.delta(k + 1, t - 1).unwrap();
                prop_assert!(second.mul(&first).is_zero());
            }
        }
    }
}

#[test]
fn homogeneous_slices_add_up() {
    let gens = vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 0, 3]];
    let s = monomial_system(3, &gens);
    let dims = s.dimensions(6);
    let mut total = 0;
    for (t, d) in dims.iter().enumerate() {
        total += standard_count(3, &gens, t);
        assert_eq!(*d, total);
    }
}

#[test]
fn projection_never_grows() {
    let s = LinearSystem::new(
        3,
        1,
        vec![
            Equation::new([(JetCoordinate::new(0, MultiIndex::new(vec![2, 0, 0])), int(1))]).unwrap(),
            Equation::new([
                (JetCoordinate::new(0, MultiIndex::new(vec![1, 0, 1])), int(1)),
                (JetCoordinate::new(0, MultiIndex::new(vec![0, 1, 0])), int(-1)),
            ])
            .unwrap(),
        ],
    )
    .unwrap();
    let q = s.order();
    let before = s.reduced(q).dimension();
    let projected = s.projected_system(1);
    let after = projected.reduced(q).dimension();
    assert!(after < before, "new equations appear, so the slice shrinks");
    let again = projected.projected_system(1).projected_system(1);
    assert!(again.reduced(q).dimension() <= after);
}
