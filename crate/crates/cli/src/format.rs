//! JSON documents for domains, maps and builder parameters.
//!
//! Reals are written with shortest round-trip precision, complex numbers as
//! `[re, im]`, the horn exponent as an explicit numerator and denominator.
//! An infinite upper radius is written as `null`.

use num_complex::Complex;
use num_rational::Ratio;
use reinhardt_core::domains::{AxisAttachment, DomainError, ExpHornDomain, PolyhedralDomain, RadiiSet, Var};
use reinhardt_core::loggeom::{IntMat2, IntVec2, LogPolyhedron};
use reinhardt_core::maps::{BlaschkeProduct, MapError, MapKind, MapSpec, TypeOneMap, TypeTwoMap};
use reinhardt_core::{Axis, ReinhardtDomain, TypeOneParams, TypeTwoParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    Schema { found: u32 },
    #[error("invalid {field}: {reason}")]
    Validation { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl ToString) -> FormatError {
    FormatError::Validation {
        field,
        reason: reason.to_string(),
    }
}

fn domain_invalid(e: DomainError) -> FormatError {
    let field = match &e {
        DomainError::AttachmentNotComplete(Axis::V1) | DomainError::RemovedSetNotProper(Axis::V1) => "axis1",
        DomainError::AttachmentNotComplete(Axis::V2) | DomainError::RemovedSetNotProper(Axis::V2) => "axis2",
        DomainError::InvalidRadii { .. } => "removed",
        DomainError::InvalidHorn(_) => "exphorn",
        DomainError::Geom(_) => "constraints",
    };
    invalid(field, e)
}

fn map_invalid(e: MapError) -> FormatError {
    let field = match &e {
        MapError::SingularMatrix => "a",
        MapError::BlaschkeZeroAtOrigin | MapError::ZeroOutsideDisc => "zeros",
        MapError::NotCoprime(..) => "p1/q1",
        _ => "map",
    };
    invalid(field, e)
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(FormatError::Schema { found: v })
    }
}

type Cx = [f64; 2];

fn cx(c: Cx) -> Complex<f64> {
    Complex::new(c[0], c[1])
}

fn uncx(c: Complex<f64>) -> Cx {
    [c.re, c.im]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub normal: [i64; 2],
    pub offset: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisState {
    Detached,
    Attached,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisDoc {
    pub state: AxisState,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<(f64, Option<f64>)>,
}

impl AxisDoc {
    fn to_attachment(&self) -> Result<AxisAttachment<f64>, FormatError> {
        match self.state {
            AxisState::Detached if self.removed.is_empty() => Ok(AxisAttachment::Detached),
            AxisState::Detached => Err(invalid("removed", "a detached axis has no removed set")),
            AxisState::Attached => {
                let iv = self.removed.iter().map(|&(lo, hi)| (lo, hi.unwrap_or(f64::INFINITY)));
                Ok(AxisAttachment::Attached(RadiiSet::new(iv).map_err(domain_invalid)?))
            }
        }
    }

    fn from_attachment(a: &AxisAttachment<f64>) -> Self {
        match a {
            AxisAttachment::Detached => Self {
                state: AxisState::Detached,
                removed: Vec::new(),
            },
            AxisAttachment::Attached(r) => Self {
                state: AxisState::Attached,
                removed: r
                    .intervals()
                    .iter()
                    .map(|&(lo, hi)| (lo, hi.is_finite().then_some(hi)))
                    .collect(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarDoc {
    Z,
    W,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DomainBody {
    Polyhedral {
        constraints: Vec<ConstraintDoc>,
        axis1: AxisDoc,
        axis2: AxisDoc,
    },
    Exphorn {
        bounded_var: VarDoc,
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "E")]
        e: f64,
        k_num: i64,
        k_den: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        free_axis: Option<AxisDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: DomainBody,
}

impl DomainFile {
    pub fn to_domain(&self) -> Result<ReinhardtDomain, FormatError> {
        check_version(self.schema_version)?;
        match &self.body {
            DomainBody::Polyhedral {
                constraints,
                axis1,
                axis2,
            } => {
                let pairs: Vec<_> = constraints
                    .iter()
                    .map(|c| ((c.normal[0], c.normal[1]), c.offset))
                    .collect();
                let log = LogPolyhedron::from_pairs(&pairs).map_err(|e| invalid("constraints", e))?;
                let axes = [axis1.to_attachment()?, axis2.to_attachment()?];
                PolyhedralDomain::new(log, axes)
                    .map(ReinhardtDomain::Polyhedral)
                    .map_err(domain_invalid)
            }
            DomainBody::Exphorn {
                bounded_var,
                c,
                e,
                k_num,
                k_den,
                free_axis,
            } => {
                if *k_den <= 0 || *k_num <= 0 {
                    return Err(invalid("k_num/k_den", "k must be a positive rational"));
                }
                let var = match bounded_var {
                    VarDoc::Z => Var::Z,
                    VarDoc::W => Var::W,
                };
                let free = match free_axis {
                    Some(a) => a.to_attachment()?,
                    None => AxisAttachment::attached(),
                };
                ExpHornDomain::with_free_axis(var, *c, *e, Ratio::new(*k_num, *k_den), free)
                    .map(ReinhardtDomain::ExpHorn)
                    .map_err(domain_invalid)
            }
        }
    }

    pub fn from_domain(d: &ReinhardtDomain) -> Self {
        let body = match d {
            ReinhardtDomain::Polyhedral(p) => DomainBody::Polyhedral {
                constraints: p
                    .log()
                    .constraints()
                    .iter()
                    .map(|h| ConstraintDoc {
                        normal: [h.normal().u, h.normal().v],
                        offset: h.offset() + 0.0,
                    })
                    .collect(),
                axis1: AxisDoc::from_attachment(p.attachment(Axis::V1)),
                axis2: AxisDoc::from_attachment(p.attachment(Axis::V2)),
            },
            ReinhardtDomain::ExpHorn(h) => DomainBody::Exphorn {
                bounded_var: match h.bounded() {
                    Var::Z => VarDoc::Z,
                    Var::W => VarDoc::W,
                },
                c: h.c(),
                e: h.e(),
                k_num: *h.k().numer(),
                k_den: *h.k().denom(),
                free_axis: (h.free_axis() != &AxisAttachment::attached())
                    .then(|| AxisDoc::from_attachment(h.free_axis())),
            },
        };
        Self {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MapBody {
    Elementary {
        a: [[i64; 2]; 2],
        b: [Cx; 2],
    },
    Type1 {
        k: u32,
        l: u32,
        p1: i64,
        q1: i64,
        c1: f64,
        mu1: Cx,
        mu2: Cx,
        #[serde(default)]
        rotation: f64,
        zeros: Vec<Cx>,
    },
    Type2 {
        a1: u32,
        a2: u32,
        c1: u32,
        c2: u32,
        s: Cx,
        #[serde(default)]
        t1: f64,
        #[serde(default)]
        t2: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: MapBody,
    #[serde(default)]
    pub pre_swap: bool,
    #[serde(default)]
    pub post_swap: bool,
}

impl MapFile {
    pub fn to_map(&self) -> Result<MapSpec<f64>, FormatError> {
        check_version(self.schema_version)?;
        let kind = match &self.body {
            MapBody::Elementary { a, b } => {
                return MapSpec::elementary(IntMat2(*a), [cx(b[0]), cx(b[1])])
                    .map(|m| m.with_swaps(self.pre_swap, self.post_swap))
                    .map_err(map_invalid);
            }
            MapBody::Type1 {
                k,
                l,
                p1,
                q1,
                c1,
                mu1,
                mu2,
                rotation,
                zeros,
            } => {
                if *k == 0 || *l == 0 || *p1 <= 0 || *q1 <= 0 {
                    return Err(invalid("k/l/p1/q1", "exponents must be positive"));
                }
                if IntVec2::new(*p1, *q1).content() != 1 {
                    return Err(map_invalid(MapError::NotCoprime(*p1, *q1)));
                }
                if !(*c1 > 0.0 && c1.is_finite()) {
                    return Err(invalid("c1", "must be positive"));
                }
                if cx(*mu1).norm() == 0.0 || cx(*mu2).norm() == 0.0 {
                    return Err(invalid("mu1/mu2", "must be nonzero"));
                }
                let blaschke =
                    BlaschkeProduct::new(*rotation, zeros.iter().map(|&z| cx(z)).collect()).map_err(map_invalid)?;
                if blaschke.degree() == 0 {
                    return Err(invalid("zeros", "Blaschke product must be non-constant"));
                }
                MapKind::TypeOne(TypeOneMap {
                    k: *k,
                    l: *l,
                    p1: *p1,
                    q1: *q1,
                    c1: *c1,
                    mu1: cx(*mu1),
                    mu2: cx(*mu2),
                    blaschke,
                })
            }
            MapBody::Type2 {
                a1,
                a2,
                c1,
                c2,
                s,
                t1,
                t2,
            } => {
                if *a1 == 0 || *a2 == 0 || *c1 == 0 || *c2 == 0 {
                    return Err(invalid("a1/a2/c1/c2", "must be positive"));
                }
                if cx(*s).norm() == 0.0 {
                    return Err(invalid("s", "must be nonzero"));
                }
                MapKind::TypeTwo(TypeTwoMap {
                    a1: *a1,
                    a2: *a2,
                    c1: *c1,
                    c2: *c2,
                    s: cx(*s),
                    t1: *t1,
                    t2: *t2,
                })
            }
        };
        Ok(MapSpec::new(kind).with_swaps(self.pre_swap, self.post_swap))
    }

    pub fn from_map(m: &MapSpec<f64>) -> Self {
        let body = match &m.kind {
            MapKind::Elementary { a, b } => MapBody::Elementary {
                a: a.0,
                b: [uncx(b[0]), uncx(b[1])],
            },
            MapKind::TypeOne(t) => MapBody::Type1 {
                k: t.k,
                l: t.l,
                p1: t.p1,
                q1: t.q1,
                c1: t.c1,
                mu1: uncx(t.mu1),
                mu2: uncx(t.mu2),
                rotation: t.blaschke.rotation(),
                zeros: t.blaschke.zeros().iter().map(|&z| uncx(z)).collect(),
            },
            MapKind::TypeTwo(t) => MapBody::Type2 {
                a1: t.a1,
                a2: t.a2,
                c1: t.c1,
                c2: t.c2,
                s: uncx(t.s),
                t1: t.t1,
                t2: t.t2,
            },
        };
        Self {
            schema_version: SCHEMA_VERSION,
            body,
            pre_swap: m.pre_swap,
            post_swap: m.post_swap,
        }
    }
}

/// Parameters of the Blaschke family builder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Type1ParamsFile {
    pub k: u32,
    pub l: u32,
    pub p1: i64,
    pub q1: i64,
    pub c1: f64,
    pub mu1: Cx,
    pub mu2: Cx,
    #[serde(default)]
    pub rotation: f64,
    pub zeros: Vec<Cx>,
    pub e1: f64,
    #[serde(default)]
    pub removed: Vec<(f64, Option<f64>)>,
}

impl Type1ParamsFile {
    pub fn to_params(&self) -> Result<TypeOneParams<f64>, FormatError> {
        let iv = self.removed.iter().map(|&(lo, hi)| (lo, hi.unwrap_or(f64::INFINITY)));
        Ok(TypeOneParams {
            k: self.k,
            l: self.l,
            p1: self.p1,
            q1: self.q1,
            c1: self.c1,
            mu1: cx(self.mu1),
            mu2: cx(self.mu2),
            rotation: self.rotation,
            zeros: self.zeros.iter().map(|&z| cx(z)).collect(),
            e1: self.e1,
            removed: RadiiSet::new(iv).map_err(domain_invalid)?,
        })
    }
}

/// Parameters of the horn family builder. `C1` and `E1` are the source horn
/// constants; `c1` and `c2` are the integer exponents of the map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Type2ParamsFile {
    pub a1: u32,
    pub a2: u32,
    pub c1: u32,
    pub c2: u32,
    pub s: Cx,
    #[serde(default)]
    pub t1: f64,
    #[serde(default)]
    pub t2: f64,
    #[serde(rename = "C1")]
    pub horn_c1: f64,
    #[serde(rename = "E1")]
    pub horn_e1: f64,
}

impl Type2ParamsFile {
    pub fn to_params(&self) -> TypeTwoParams<f64> {
        TypeTwoParams {
            a1: self.a1,
            a2: self.a2,
            c1: self.c1,
            c2: self.c2,
            s: cx(self.s),
            t1: self.t1,
            t2: self.t2,
            horn_c1: self.horn_c1,
            horn_e1: self.horn_e1,
        }
    }
}

pub fn parse_domain_file(text: &str) -> Result<ReinhardtDomain, FormatError> {
    serde_json::from_str::<DomainFile>(text)?.to_domain()
}

pub fn serialize_domain(d: &ReinhardtDomain) -> String {
    let mut s = serde_json::to_string_pretty(&DomainFile::from_domain(d)).expect("domain documents serialize");
    s.push('\n');
    s
}

pub fn parse_map_file(text: &str) -> Result<MapSpec<f64>, FormatError> {
    serde_json::from_str::<MapFile>(text)?.to_map()
}

pub fn serialize_map(m: &MapSpec<f64>) -> String {
    let mut s = serde_json::to_string_pretty(&MapFile::from_map(m)).expect("map documents serialize");
    s.push('\n');
    s
}
