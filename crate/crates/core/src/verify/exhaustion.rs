//! Compact exhaustion `K_ε` of a domain.
//!
//! A point lies in `K_ε` when its radii are at most `1/ε`, every radius can
//! be scaled by `(1 − ε)^{±1}` without leaving the domain, and every
//! coordinate smaller than `ε` sits on an attached axis whose slice keeps the
//! same margin. Radii below `ε` are treated as `ε` for the log-region test,
//! which is the worst case because the region is complete toward attached
//! axes.

use crate::domains::{Axis, ReinhardtDomain};
use crate::scalar::Real;

/// Membership of the point with log-moduli `l` in `K_ε`.
pub fn in_compact<R: Real>(domain: &ReinhardtDomain<R>, l: [R; 2], eps: R) -> bool {
    if l.iter().any(|x| x.is_nan()) {
        return false;
    }
    let leps = eps.ln();
    let delta = -(R::one() - eps).ln();
    if l.iter().any(|&x| x > -leps) {
        return false;
    }
    let small = [l[0] < leps, l[1] < leps];
    if small[0] && small[1] && !domain.contains_origin() {
        return false;
    }
    for j in 0..2 {
        if !small[j] {
            continue;
        }
        let axis = Axis::with_zero(j);
        let slice = domain.slice(axis);
        if slice.is_empty() || slice.removed.log_clearance(l[1 - j]) < delta {
            return false;
        }
    }
    let clamped = [l[0].max(leps), l[1].max(leps)];
    match domain {
        ReinhardtDomain::Polyhedral(p) => p.log().constraints().iter().all(|h| {
            h.slack(clamped) >= delta * R::from_int(h.normal().l1())
        }),
        ReinhardtDomain::ExpHorn(h) => h.horn_margin([clamped[0] + delta, clamped[1] + delta]) >= R::zero(),
    }
}

/// The three exhaustion levels used by the escape check.
pub const EPSILONS: [f64; 3] = [1e-1, 1e-2, 1e-3];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{AxisAttachment, RadiiSet};
    use crate::loggeom::LogPolyhedron;

    fn bidisc() -> ReinhardtDomain<f64> {
        ReinhardtDomain::polyhedral(
            LogPolyhedron::from_pairs(&[((1, 0), 0.0), ((0, 1), 0.0)]).unwrap(),
            [AxisAttachment::attached(), AxisAttachment::attached()],
        )
        .unwrap()
    }

    #[test]
    fn bidisc_levels() {
        let d = bidisc();
        let half = 0.5f64.ln();
        assert!(in_compact(&d, [half, half], 0.1));
        assert!(in_compact(&d, [f64::NEG_INFINITY, half], 0.1));
        assert!(in_compact(&d, [f64::NEG_INFINITY, f64::NEG_INFINITY], 0.1));
        assert!(!in_compact(&d, [0.999f64.ln(), half], 0.1));
        assert!(in_compact(&d, [0.999f64.ln(), half], 0.0001));
    }

    #[test]
    fn punctured_and_removed() {
        let hartogs = ReinhardtDomain::<f64>::hartogs();
        assert!(!in_compact(&hartogs, [f64::NEG_INFINITY, -20.0], 0.001));
        assert!(in_compact(&hartogs, [f64::NEG_INFINITY, 0.5f64.ln()], 0.001));
        let t = ReinhardtDomain::type_one_shape(1.0, 1, 1, 1.0, RadiiSet::new([(2.0, 4.0)]).unwrap()).unwrap();
        assert!(!in_compact(&t, [3.0f64.ln(), -30.0], 0.01));
        assert!(in_compact(&t, [3.0f64.ln(), -1.5], 0.01));
        assert!(in_compact(&t, [8.0f64.ln(), -30.0], 0.01));
    }

    #[test]
    fn compact_points_are_members() {
        let d = ReinhardtDomain::type_one_shape(2.0, 1, 2, 3.0, RadiiSet::empty()).unwrap();
        for i in 0..60 {
            for j in 0..60 {
                let l = [-15.0 + 0.5 * i as f64, -15.0 + 0.5 * j as f64];
                if in_compact(&d, l, 0.01) {
                    assert!(d.contains_log(l));
                }
            }
        }
    }
}
