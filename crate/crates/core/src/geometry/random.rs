//! Seeded random polynomial geometries.
//!
//! The tetrad is `h = D + N` with a constant nonzero diagonal `D` and `N`
//! strictly triangular under a random relabelling of the indices, so the
//! determinant is the constant `det D` and the inverse tetrad is again
//! polynomial. Entries of `N` have degree at most 2, connection components
//! degree at most 1 (six to ten nonzero components), all with small
//! rational coefficients.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ConnectionComponents, Geometry};
use crate::expr::{Chart, Cx, ScalarExpr};

/// A generated geometry together with the seed that produced it.
#[derive(Clone, Debug)]
pub struct RandomGeometry {
    pub seed: u64,
    pub geometry: Geometry,
}

fn small_rational(rng: &mut ChaCha8Rng) -> Cx {
    let num = loop {
        let n = rng.random_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    Cx::from_ratio(num, rng.random_range(1i64..=3))
}

fn monomial(rng: &mut ChaCha8Rng, max_degree: usize) -> ScalarExpr {
    let degree = rng.random_range(0..=max_degree);
    (0..degree)
        .fold(ScalarExpr::constant(small_rational(rng)), |acc, _| &acc * &ScalarExpr::coord(rng.random_range(0..4)))
}

fn polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> ScalarExpr {
    let terms = rng.random_range(1..=2);
    (0..terms).fold(ScalarExpr::zero(), |acc, _| &acc + &monomial(rng, max_degree))
}

/// Draws a geometry on the default chart from `seed`.
pub fn random_geometry(seed: u64) -> RandomGeometry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = [0usize, 1, 2, 3];
    order.shuffle(&mut rng);

    let mut tetrad: [[ScalarExpr; 4]; 4] = Default::default();
    for (i, row) in tetrad.iter_mut().enumerate() {
        let d = [1, 1, 1, 2, -1][rng.random_range(0..5)];
        row[i] = ScalarExpr::int(d);
    }
    for _ in 0..rng.random_range(2..=3) {
        let i = rng.random_range(0..3);
        let j = rng.random_range(i + 1..4);
        tetrad[order[i]][order[j]] = polynomial(&mut rng, 2);
    }

    let mut conn: ConnectionComponents = Default::default();
    for _ in 0..rng.random_range(6..=10) {
        let (a, b, c) = (rng.random_range(0..4), rng.random_range(0..4), rng.random_range(0..4));
        conn[a][b][c] = polynomial(&mut rng, 1);
    }

    let geometry = Geometry::new(Chart::default(), tetrad, &conn).expect("constant nonzero determinant");
    RandomGeometry { seed, geometry }
}
