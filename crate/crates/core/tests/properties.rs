use proptest::prelude::*;

use reinhardt_core::domains::{AxisAttachment, ReinhardtDomain};
use reinhardt_core::loggeom::{IntMat2, IntVec2, LogPolyhedron};
use reinhardt_core::maps::{elementary_pushforward, MapSpec};
use reinhardt_core::unimod::{bounding_matrix_for_cone, bounding_unimodular};
use reinhardt_core::Complex;

fn primitive(range: i64) -> impl Strategy<Value = IntVec2> {
    (-range..=range, -range..=range)
        .prop_filter_map("primitive", |(u, v)| IntVec2::new(u, v).is_primitive().then(|| IntVec2::new(u, v)))
}

fn region() -> impl Strategy<Value = LogPolyhedron<f64>> {
    prop::collection::vec((primitive(5), -2.0f64..2.0), 0..5).prop_filter_map("nonempty", |cs| {
        let pairs: Vec<((i64, i64), f64)> = cs.iter().map(|(n, c)| ((n.u, n.v), *c)).collect();
        LogPolyhedron::from_pairs(&pairs).ok()
    })
}

fn domain() -> impl Strategy<Value = ReinhardtDomain<f64>> {
    (region(), any::<bool>(), any::<bool>()).prop_map(|(log, a1, a2)| {
        let cone = log.recession_cone();
        let att = |want: bool, dir: IntVec2| {
            if want && cone.contains(dir) {
                AxisAttachment::attached()
            } else {
                AxisAttachment::Detached
            }
        };
        let axes = [att(a1, IntVec2::new(-1, 0)), att(a2, IntVec2::new(0, -1))];
        ReinhardtDomain::polyhedral(log, axes).expect("attachments respect the cone")
    })
}

fn unimodular() -> impl Strategy<Value = IntMat2> {
    prop::collection::vec(0usize..6, 1..6).prop_map(|steps| {
        let gens = [
            IntMat2::new(1, 1, 0, 1),
            IntMat2::new(1, -1, 0, 1),
            IntMat2::new(1, 0, 1, 1),
            IntMat2::new(1, 0, -1, 1),
            IntMat2::SWAP,
            IntMat2::new(-1, 0, 0, 1),
        ];
        steps.into_iter().fold(IntMat2::IDENTITY, |acc, i| acc * gens[i])
    })
}

/// Pointed wedge spanned by two generators, as a log region.
fn wedge() -> impl Strategy<Value = (IntVec2, IntVec2)> {
    (primitive(20), primitive(20)).prop_filter_map("independent", |(a, b)| match a.cross(b) {
        0 => None,
        c if c > 0 => Some((a, b)),
        _ => Some((b, a)),
    })
}

fn wedge_region(g1: IntVec2, g2: IntVec2) -> LogPolyhedron<f64> {
    let n1 = IntVec2::new(g1.v, -g1.u);
    let n2 = IntVec2::new(-g2.v, g2.u);
    LogPolyhedron::from_pairs(&[((n1.u, n1.v), 0.0), ((n2.u, n2.v), 0.0)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unimodular_images_preserve_structure(l in region(), a in unimodular(), t in (-3.0f64..3.0, -3.0f64..3.0)) {
        let img = l.affine_image(&a, [t.0, t.1]).unwrap();
        prop_assert_eq!(img.lineality_dim(), l.lineality_dim());
        prop_assert_eq!(img.recession_cone(), l.recession_cone().image(&a));
        if img.is_bounded_above() {
            prop_assert_eq!(img.lineality_dim(), 0);
        }
    }

    #[test]
    fn affine_image_membership(l in region(), a in unimodular(), pts in prop::collection::vec((-8.0f64..8.0, -8.0f64..8.0), 50)) {
        let img = l.affine_image(&a, [0.0, 0.0]).unwrap();
        for (x, y) in pts {
            let ax = a.apply_real([x, y]);
            prop_assert_eq!(l.contains([x, y]), img.contains(ax));
        }
    }

    #[test]
    fn recession_cone_matches_normal_inequalities(l in region(), d in (-9i64..=9, -9i64..=9)) {
        let d = IntVec2::new(d.0, d.1);
        let expected = l.normals().iter().all(|n| n.dot(d) <= 0);
        prop_assert_eq!(l.recession_cone().contains(d), expected);
    }

    #[test]
    fn hyperbolicity_matches_invariants_and_witnesses(d in domain()) {
        let t = d.invariant_tuple();
        let env = d.envelope();
        let planes = [reinhardt_core::Axis::V1, reinhardt_core::Axis::V2]
            .iter()
            .any(|&a| env.slice(a).is_c_or_c_star());
        prop_assert_eq!(d.is_brody_hyperbolic(), t.d == 0 && t.s == 0 && t.s_star == 0 && !planes);
        prop_assert_eq!(d.entire_curve_witness().is_some(), !d.is_brody_hyperbolic());
        prop_assert!(t.s + t.s_star <= t.t && t.t <= 2);
        prop_assert_eq!(d.envelope().envelope(), d.envelope());
        prop_assert_eq!(d.hyp_part().hyp_part(), d.hyp_part());
        prop_assert_eq!(d.envelope().invariant_tuple(), t);
    }

    #[test]
    fn hyperbolic_domains_can_be_bounded(d in domain()) {
        if d.is_brody_hyperbolic() {
            let ReinhardtDomain::Polyhedral(p) = &d else { unreachable!() };
            let a = bounding_unimodular(p.log()).unwrap();
            prop_assert!(a.is_unimodular());
            prop_assert!(p.log().affine_image(&a, [0.0, 0.0]).unwrap().is_bounded_above());
        }
    }

    #[test]
    fn pointed_cones_are_normalized((g1, g2) in wedge()) {
        let l = wedge_region(g1, g2);
        let cone = l.recession_cone();
        prop_assert_eq!(cone.lineality_dim(), 0);
        let mut gens = vec![g1, g2];
        gens.sort();
        prop_assert_eq!(cone.generators(), &gens[..]);
        let a = bounding_matrix_for_cone(&cone).unwrap();
        prop_assert!(a.is_unimodular());
        prop_assert!(l.affine_image(&a, [0.0, 0.0]).unwrap().is_bounded_above());
        let again = bounding_unimodular(&l.affine_image(&a, [0.0, 0.0]).unwrap()).unwrap();
        prop_assert!(l.affine_image(&(again * a), [0.0, 0.0]).unwrap().is_bounded_above());
    }

    #[test]
    fn unimodular_pushforward_of_c_star_part(d in domain(), a in unimodular(), pts in prop::collection::vec((-6.0f64..6.0, -6.0f64..6.0, 0.0f64..6.3), 40)) {
        let ReinhardtDomain::Polyhedral(p) = &d else { unreachable!() };
        let detached = ReinhardtDomain::polyhedral(p.log().clone(), [AxisAttachment::Detached, AxisAttachment::Detached]).unwrap();
        let b = [Complex::new(1.5, 0.5), Complex::new(-0.25, 1.0)];
        let m = MapSpec::elementary(a, b).unwrap();
        let img = elementary_pushforward(&m, &detached).unwrap();
        prop_assert_eq!(img.invariant_tuple(), detached.invariant_tuple());
        for (x, y, th) in pts {
            let z = Complex::from_polar(x.exp(), th);
            let w = Complex::from_polar(y.exp(), -th);
            let lm = m.log_moduli(z, w).unwrap();
            let inside = detached.contains_log([x, y]);
            let margin = img.log_margin(lm);
            if margin.abs() > 1e-9 {
                prop_assert_eq!(inside, margin > 0.0);
            }
        }
    }
}
