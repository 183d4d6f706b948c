//! Fixture systems shared by the benchmarks.

use spencer_core::jetspace::{JetCoordinate, MultiIndex};
use spencer_core::pdesystem::{Equation, LinearSystem};
use spencer_core::ratlinalg::int;

/// One unknown; each equation is a list of (1-based derivatives, coefficient).
pub fn system(n: usize, eqs: &[&[(&[usize], i64)]]) -> LinearSystem {
    let eqs = eqs
        .iter()
        .map(|terms| {
            let terms = terms
                .iter()
                .map(|(v, c)| (JetCoordinate::new(0, MultiIndex::from_derivatives(n, v).expect("index")), int(*c)));
            Equation::new(terms).expect("equation")
        })
        .collect();
    LinearSystem::new(n, 1, eqs).expect("system")
}

pub fn flagship() -> LinearSystem {
    system(4, &[&[(&[4, 4], 1)], &[(&[3, 4], 1), (&[2, 2], -1)], &[(&[3, 3], 1)], &[(&[2, 4], 1), (&[1, 1], -1)]])
}

pub fn space_curve() -> LinearSystem {
    system(3, &[&[(&[3, 3, 3], 1), (&[1, 1], -1)], &[(&[2, 2], 1), (&[1, 3], -1)]])
}

pub fn quadrics() -> LinearSystem {
    system(3, &[&[(&[3, 3], 1), (&[1, 1], -1)], &[(&[2, 3, 3], 1)], &[(&[2, 2], 1), (&[1, 1], -1)]])
}

pub fn incomplete() -> LinearSystem {
    system(3, &[&[(&[1, 1], 1)], &[(&[1, 3], 1), (&[2], -1)]])
}
