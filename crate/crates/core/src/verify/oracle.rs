//! Decision table for the existence of proper holomorphic maps.
//!
//! | id | name                      | fires when                                          | verdict     |
//! |----|---------------------------|-----------------------------------------------------|-------------|
//! | R1 | dimension mismatch        | `d` differs                                         | nonexistent |
//! | R3 | hyperbolicity mismatch    | exactly one domain is Brody hyperbolic              | nonexistent |
//! | R2 | slice triple mismatch     | `d = 0` for both and `(s, s*, t)` differs           | nonexistent |
//! | R4 | special domains           | both among C², C*², C×C*, C*×C with different types | either      |
//! | R5 | line factor               | `A × C` into `A × C*`                               | nonexistent |
//! | R6 | catalog                   | equal up to swap, or a Blaschke or horn family pair | exists      |
//!
//! Rules are tried in the order of the table. Hyperconvex and
//! pluripolar-complement obstructions need no rule of their own: on the
//! supported shapes they are already caught by R1 and R3.

use std::fmt;

use num_complex::Complex;
use num_rational::Ratio;

use crate::domains::{Axis, AxisAttachment, RadiiSet, ReinhardtDomain, Var};
use crate::loggeom::{IntMat2, IntVec2};
use crate::maps::{build_type_one, build_type_two, MapSpec, TypeOneParams, TypeTwoParams};
use crate::scalar::Real;

use super::checks::JoukowskiProduct;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    DimensionMismatch,
    TripleMismatch,
    HyperbolicityMismatch,
    SpecialDomains,
    LineFactor,
    Catalog,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::DimensionMismatch => "R1",
            Rule::TripleMismatch => "R2",
            Rule::HyperbolicityMismatch => "R3",
            Rule::SpecialDomains => "R4",
            Rule::LineFactor => "R5",
            Rule::Catalog => "R6",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::DimensionMismatch => "dimension mismatch",
            Rule::TripleMismatch => "slice triple mismatch",
            Rule::HyperbolicityMismatch => "hyperbolicity mismatch",
            Rule::SpecialDomains => "special domains",
            Rule::LineFactor => "line factor",
            Rule::Catalog => "catalog",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id(), self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExistenceWitness<R> {
    Map(MapSpec<R>),
    Joukowski(JoukowskiProduct),
}

impl<R: Real> fmt::Display for ExistenceWitness<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExistenceWitness::Joukowski(j) => {
                let c = |on: bool, v: &str| if on { format!("{v}+1/{v}") } else { v.to_string() };
                write!(f, "(z,w) -> ({}, {})", c(j.on[0], "z"), c(j.on[1], "w"))
            }
            ExistenceWitness::Map(m) => {
                write!(f, "{} map", m.family())?;
                if m.pre_swap || m.post_swap {
                    write!(f, " (pre_swap={}, post_swap={})", m.pre_swap, m.post_swap)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExistenceVerdict<R> {
    Exists { rule: Rule, witness: ExistenceWitness<R> },
    Nonexistent { rule: Rule },
    Unknown { reason: String },
}

impl<R> ExistenceVerdict<R> {
    pub fn rule(&self) -> Option<Rule> {
        match self {
            Self::Exists { rule, .. } | Self::Nonexistent { rule } => Some(*rule),
            Self::Unknown { .. } => None,
        }
    }

    /// 0 exists, 1 nonexistent, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Exists { .. } => 0,
            Self::Nonexistent { .. } => 1,
            Self::Unknown { .. } => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Exists { .. } => "Exists",
            Self::Nonexistent { .. } => "Nonexistent",
            Self::Unknown { .. } => "Unknown",
        }
    }
}

impl<R: Real> fmt::Display for ExistenceVerdict<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exists { rule, witness } => write!(f, "Exists ({rule}) witness {witness}"),
            Self::Nonexistent { rule } => write!(f, "Nonexistent ({rule})"),
            Self::Unknown { reason } => write!(f, "Unknown ({reason})"),
        }
    }
}

/// For C², C*², C×C*, C*×C: which coordinates range over all of C.
fn special_type<R: Real>(d: &ReinhardtDomain<R>) -> Option<[bool; 2]> {
    let ReinhardtDomain::Polyhedral(p) = d else {
        return None;
    };
    if !p.log().is_whole_plane() {
        return None;
    }
    let mut out = [false; 2];
    for axis in Axis::BOTH {
        match p.attachment(axis) {
            AxisAttachment::Attached(r) if r.is_empty() => out[axis.zero_coord()] = true,
            AxisAttachment::Attached(_) => return None,
            AxisAttachment::Detached => {}
        }
    }
    Some(out)
}

/// `src = A × C` and `dst = A × C*` (in either coordinate order).
fn is_line_factor_pair<R: Real>(src: &ReinhardtDomain<R>, dst: &ReinhardtDomain<R>) -> bool {
    let (ReinhardtDomain::Polyhedral(a), ReinhardtDomain::Polyhedral(b)) = (src, dst) else {
        return false;
    };
    if a.log() != b.log() {
        return false;
    }
    (0..2).any(|free| {
        let along = |n: IntVec2| n.component(free) == 0;
        let factor_axis = Axis::with_zero(free);
        a.log().normals().into_iter().all(along)
            && a.attachment(factor_axis) == &AxisAttachment::attached()
            && b.attachment(factor_axis) == &AxisAttachment::Detached
            && a.attachment(factor_axis.other()) == b.attachment(factor_axis.other())
    })
}

struct TypeOneShape<R> {
    c: R,
    p: i64,
    q: i64,
    e: R,
    removed: RadiiSet<R>,
}

fn type_one_shape<R: Real>(d: &ReinhardtDomain<R>) -> Option<TypeOneShape<R>> {
    let ReinhardtDomain::Polyhedral(p) = d else {
        return None;
    };
    let cs = p.log().constraints();
    if cs.len() != 2 || cs[0].normal() != IntVec2::E2 {
        return None;
    }
    let n = cs[1].normal();
    if n.u <= 0 || n.v <= 0 {
        return None;
    }
    let AxisAttachment::Attached(r1) = p.attachment(Axis::V1) else {
        return None;
    };
    let AxisAttachment::Attached(removed) = p.attachment(Axis::V2) else {
        return None;
    };
    if !r1.is_empty() {
        return None;
    }
    Some(TypeOneShape {
        c: (-cs[1].offset()).exp(),
        p: n.u,
        q: n.v,
        e: cs[0].offset().exp(),
        removed: removed.clone(),
    })
}

fn rel_close<R: Real>(a: R, b: R, tol: f64) -> bool {
    (a - b).abs() <= R::lit(tol) * a.abs().max(b.abs()).max(R::one())
}

fn same_radii<R: Real>(a: &RadiiSet<R>, b: &RadiiSet<R>) -> bool {
    a.intervals().len() == b.intervals().len()
        && a
            .intervals()
            .iter()
            .zip(b.intervals())
            .all(|(x, y)| rel_close(x.0, y.0, 1e-9) && rel_close(x.1, y.1, 1e-9))
}

fn fit_type_one<R: Real>(src: &ReinhardtDomain<R>, dst: &ReinhardtDomain<R>) -> Option<MapSpec<R>> {
    let s = type_one_shape(src)?;
    let t = type_one_shape(dst)?;
    let ratio = Ratio::new(t.q * s.p, t.p * s.q);
    for m in 1..=6 {
        let k = m * *ratio.numer();
        let l = m * *ratio.denom();
        let mu2 = t.e / s.e.powi(l as i32);
        let mu1 = (s.c.powf(R::from_int(k * t.p) / R::from_int(s.p)) / (t.c * mu2.powi(t.q as i32)))
            .powf(R::one() / R::from_int(t.p));
        let beta = match (s.removed.intervals().first(), t.removed.intervals().first()) {
            (None, None) => R::lit(0.5),
            (Some(a), Some(b)) if a.1 > R::zero() => b.1 / (mu1 * a.1.powi(k as i32)),
            _ => continue,
        };
        if !(beta > R::zero() && beta < R::one()) {
            continue;
        }
        let params = TypeOneParams {
            k: k as u32,
            l: l as u32,
            p1: s.p,
            q1: s.q,
            c1: s.c,
            mu1: Complex::new(mu1, R::zero()),
            mu2: Complex::new(mu2, R::zero()),
            rotation: R::zero(),
            zeros: vec![Complex::new(beta, R::zero())],
            e1: s.e,
            removed: s.removed.clone(),
        };
        let Ok(pair) = build_type_one(&params) else {
            continue;
        };
        let built = type_one_shape(&pair.target)?;
        if built.p == t.p
            && built.q == t.q
            && rel_close(built.c, t.c, 1e-9)
            && rel_close(built.e, t.e, 1e-9)
            && same_radii(&built.removed, &t.removed)
        {
            return Some(pair.map);
        }
    }
    None
}

fn near_integer<R: Real>(x: R) -> Option<u32> {
    let r = x.round();
    (r >= R::one() && rel_close(x, r, 1e-9)).then(|| r.to_u32()).flatten()
}

fn fit_type_two<R: Real>(src: &ReinhardtDomain<R>, dst: &ReinhardtDomain<R>) -> Option<MapSpec<R>> {
    let (ReinhardtDomain::ExpHorn(s), ReinhardtDomain::ExpHorn(t)) = (src, dst) else {
        return None;
    };
    let full = AxisAttachment::attached();
    if s.bounded() != Var::W || t.bounded() != Var::W || s.free_axis() != &full || t.free_axis() != &full {
        return None;
    }
    if !s.k().is_integer() || s.k().to_integer() % 2 != 0 {
        return None;
    }
    let a1 = (s.k().to_integer() / 2) as u32;
    let a2r = Ratio::from_integer(2) / t.k();
    if !a2r.is_integer() {
        return None;
    }
    let a2 = a2r.to_integer() as u32;
    let c1 = near_integer(R::one() / s.e())?;
    let c2 = near_integer(t.e())?;
    let params = TypeTwoParams {
        a1,
        a2,
        c1,
        c2,
        s: Complex::new(R::one(), R::zero()),
        t1: R::zero(),
        t2: R::zero(),
        horn_c1: s.c(),
        horn_e1: s.e(),
    };
    let pair = build_type_two(&params).ok()?;
    let ReinhardtDomain::ExpHorn(b) = &pair.target else {
        return None;
    };
    (rel_close(b.c(), t.c(), 1e-9) && rel_close(b.e(), t.e(), 1e-9)).then_some(pair.map)
}

fn catalog<R: Real>(src: &ReinhardtDomain<R>, dst: &ReinhardtDomain<R>) -> Option<MapSpec<R>> {
    if src == dst {
        return Some(MapSpec::identity());
    }
    if &src.swapped() == dst {
        let one = Complex::new(R::one(), R::zero());
        return MapSpec::elementary(IntMat2::SWAP, [one, one]).ok();
    }
    for pre in [false, true] {
        for post in [false, true] {
            let s = if pre { src.swapped() } else { src.clone() };
            let t = if post { dst.swapped() } else { dst.clone() };
            if let Some(m) = fit_type_one(&s, &t).or_else(|| fit_type_two(&s, &t)) {
                return Some(m.with_swaps(pre, post));
            }
        }
    }
    None
}

/// Decides whether a proper holomorphic map `src → dst` exists, when one of
/// the rules in the module table applies.
pub fn existence_oracle<R: Real>(src: &ReinhardtDomain<R>, dst: &ReinhardtDomain<R>) -> ExistenceVerdict<R> {
    let (a, b) = (src.invariant_tuple(), dst.invariant_tuple());
    if a.d != b.d {
        return ExistenceVerdict::Nonexistent {
            rule: Rule::DimensionMismatch,
        };
    }
    if src.is_brody_hyperbolic() != dst.is_brody_hyperbolic() {
        return ExistenceVerdict::Nonexistent {
            rule: Rule::HyperbolicityMismatch,
        };
    }
    if a.d == 0 && (a.s, a.s_star, a.t) != (b.s, b.s_star, b.t) {
        return ExistenceVerdict::Nonexistent {
            rule: Rule::TripleMismatch,
        };
    }
    if let (Some(s), Some(t)) = (special_type(src), special_type(dst)) {
        let (cs, ct) = (s.iter().filter(|&&x| x).count(), t.iter().filter(|&&x| x).count());
        if cs > ct {
            return ExistenceVerdict::Nonexistent {
                rule: Rule::SpecialDomains,
            };
        }
        if cs < ct && (0..2).all(|i| !s[i] || t[i]) {
            return ExistenceVerdict::Exists {
                rule: Rule::SpecialDomains,
                witness: ExistenceWitness::Joukowski(JoukowskiProduct {
                    on: [t[0] && !s[0], t[1] && !s[1]],
                }),
            };
        }
    }
    if is_line_factor_pair(src, dst) {
        return ExistenceVerdict::Nonexistent { rule: Rule::LineFactor };
    }
    if let Some(map) = catalog(src, dst) {
        return ExistenceVerdict::Exists {
            rule: Rule::Catalog,
            witness: ExistenceWitness::Map(map),
        };
    }
    ExistenceVerdict::Unknown {
        reason: if a.d >= 1 {
            "no rule decides this pair with d >= 1".to_string()
        } else {
            "no rule decides this pair".to_string()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = ReinhardtDomain<f64>;

    #[test]
    fn special_directions() {
        let (c2, cs2, ccs) = (D::complex_plane(), D::punctured_plane(), D::plane_times_punctured());
        for (s, t) in [(&c2, &cs2), (&ccs, &cs2), (&c2, &ccs)] {
            assert_eq!(existence_oracle(s, t).rule(), Some(Rule::SpecialDomains));
            assert_eq!(existence_oracle(s, t).exit_code(), 1);
            assert_eq!(existence_oracle(t, s).exit_code(), 0);
        }
        let v = existence_oracle(&cs2, &c2);
        assert_eq!(v.to_string(), "Exists (R4: special domains) witness (z,w) -> (z+1/z, w+1/w)");
    }

    #[test]
    fn hyperbolicity_precedes_triples() {
        let t1 = D::type_one_shape(1.0, 1, 1, 1.0, RadiiSet::empty()).unwrap();
        assert_eq!(
            existence_oracle(&t1, &D::hartogs()).rule(),
            Some(Rule::HyperbolicityMismatch)
        );
    }

    #[test]
    fn catalog_identity_and_swap() {
        let h = D::hartogs();
        assert!(matches!(existence_oracle(&h, &h), ExistenceVerdict::Exists { .. }));
        assert!(matches!(
            existence_oracle(&h, &h.swapped()),
            ExistenceVerdict::Exists { rule: Rule::Catalog, .. }
        ));
    }
}
