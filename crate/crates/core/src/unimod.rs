//! Unimodular normalization of pointed logarithmic regions.
//!
//! For a region whose recession cone is pointed, [`bounding_unimodular`]
//! finds an integer matrix `A` with `|det A| = 1` such that `A·L` is bounded
//! above in both coordinates. The rows of `A` are chosen in the interior of
//! the negative dual cone, so every recession direction is sent into the
//! closed negative quadrant.

use num_integer::Integer;
use thiserror::Error;

use crate::loggeom::{IntMat2, IntVec2, LogPolyhedron, RecessionCone};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnimodError {
    #[error("log region contains an affine line (lineality {0})")]
    NotPointed(u8),
}

/// `x, y` with `a·x + b·y = gcd(a, b)`.
fn bezout(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    }
}

/// First primitive `v` (by increasing max-norm, then lexicographically) with
/// `v · g < 0` for every generator.
fn interior_dual_vector(gens: &[IntVec2]) -> IntVec2 {
    for radius in 1i64.. {
        for u in -radius..=radius {
            for v in -radius..=radius {
                if u.abs().max(v.abs()) != radius {
                    continue;
                }
                let cand = IntVec2::new(u, v);
                if cand.is_primitive() && gens.iter().all(|g| cand.dot(*g) < 0) {
                    return cand;
                }
            }
        }
    }
    unreachable!("a pointed cone has a nonempty open dual")
}

/// Matrix for a pointed cone given by its generators.
pub fn bounding_matrix_for_cone(cone: &RecessionCone) -> Result<IntMat2, UnimodError> {
    if cone.lineality_dim() > 0 {
        return Err(UnimodError::NotPointed(cone.lineality_dim()));
    }
    if cone.in_negative_quadrant() {
        return Ok(IntMat2::IDENTITY);
    }
    let gens = cone.generators();
    let r1 = interior_dual_vector(gens);
    let (x, y) = bezout(r1.u, r1.v);
    let r2 = IntVec2::new(-y, x);
    // r2 + m r1 must satisfy (r2 + m r1)·g ≤ 0, i.e. m ≥ (r2·g)/(−r1·g).
    let m = gens
        .iter()
        .map(|&g| Integer::div_ceil(&r2.dot(g), &(-r1.dot(g))))
        .max()
        .expect("nonempty generators");
    Ok(IntMat2::from_rows(r1, r2 + r1 * m))
}

/// Unimodular `A` with `A·L` bounded above in both coordinates.
pub fn bounding_unimodular<R: Real>(log: &LogPolyhedron<R>) -> Result<IntMat2, UnimodError> {
    bounding_matrix_for_cone(&log.recession_cone())
}
