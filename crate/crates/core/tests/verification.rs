use std::time::Instant;

use reinhardt_core::domains::{AxisAttachment, RadiiSet, ReinhardtDomain};
use reinhardt_core::loggeom::LogPolyhedron;
use reinhardt_core::maps::{build_type_one, build_type_two, MapSpec, ProperPair, TypeOneParams, TypeTwoParams};
use reinhardt_core::verify::{
    check_axis_mapping, check_boundary_escape, check_containment, verify_map, verify_pair, FnMap,
    JoukowskiProduct, VerifyConfig,
};
use reinhardt_core::Complex;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn type_one(removed: RadiiSet<f64>) -> ProperPair<f64> {
    build_type_one(&TypeOneParams {
        k: 1,
        l: 1,
        p1: 1,
        q1: 1,
        c1: 1.0,
        mu1: c(1.0, 0.0),
        mu2: c(1.0, 0.0),
        rotation: 0.0,
        zeros: vec![c(0.5, 0.0)],
        e1: 1.0,
        removed,
    })
    .unwrap()
}

fn bidisc() -> ReinhardtDomain<f64> {
    ReinhardtDomain::polyhedral(
        LogPolyhedron::from_pairs(&[((1, 0), 0.0), ((0, 1), 0.0)]).unwrap(),
        [AxisAttachment::attached(), AxisAttachment::attached()],
    )
    .unwrap()
}

#[test]
fn type_one_pair_passes() {
    let t = Instant::now();
    let pair = type_one(RadiiSet::empty());
    let report = verify_pair(&pair, &VerifyConfig::default());
    eprintln!("{report}\n{:?}", t.elapsed());
    assert!(report.passed(), "{report}");
}

#[test]
fn type_one_with_removed_set_passes() {
    let pair = type_one(RadiiSet::new([(2.0, 4.0)]).unwrap());
    let report = verify_pair(&pair, &VerifyConfig { samples: 20_000, ..Default::default() });
    assert!(report.passed(), "{report}");
}

#[test]
fn type_two_pair_passes() {
    let pair = build_type_two(&TypeTwoParams {
        a1: 1,
        a2: 1,
        c1: 1,
        c2: 1,
        s: c(1.0, 0.0),
        t1: 0.0,
        t2: 0.0,
        horn_c1: 1.0,
        horn_e1: 1.0,
    })
    .unwrap();
    let report = verify_pair(&pair, &VerifyConfig { samples: 20_000, ..Default::default() });
    assert!(report.passed(), "{report}");
}

#[test]
fn contraction_fails_escape() {
    let d = bidisc();
    let half = FnMap(|z: C, w: C| [z * 0.5, w * 0.5]);
    let esc = check_boundary_escape(&half, &d, &d, 64, 0x5EED);
    assert!(esc.failures > 0, "{esc:?}");
    let report = verify_map(&half, &d, &d, &VerifyConfig { samples: 2000, ..Default::default() });
    assert!(!report.passed());
}

#[test]
fn identity_contains() {
    let d = bidisc();
    let r = check_containment(&MapSpec::<f64>::identity(), &d, &d, 10_000, 1e-9, 1);
    assert_eq!(r.violations, 0);
    let r = verify_map(&MapSpec::<f64>::identity(), &d, &d, &VerifyConfig { samples: 2000, ..Default::default() });
    assert!(r.passed(), "{r}");
}

#[test]
fn shifted_axis_map_fails_dichotomy() {
    let log = LogPolyhedron::from_pairs(&[((1, 0), 0.0)]).unwrap();
    let d = ReinhardtDomain::polyhedral(log, [AxisAttachment::attached(), AxisAttachment::attached()]).unwrap();
    let shift = FnMap(|z: C, w: C| [z + 1.0, w]);
    assert!(check_axis_mapping(&shift, &d, &d, 200, 1e-9, 3).failures > 0);
}

#[test]
fn joukowski_escapes() {
    let src = ReinhardtDomain::<f64>::punctured_plane();
    let dst = ReinhardtDomain::<f64>::complex_plane();
    let j = JoukowskiProduct { on: [true, true] };
    let esc = check_boundary_escape(&j, &src, &dst, 64, 9);
    assert_eq!(esc.failures, 0);
    assert!(esc.sequences > 0);
}
