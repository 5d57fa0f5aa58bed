//! Reinhardt domains in C² and their axis invariants.
//!
//! A domain is described by its logarithmic image together with, for each
//! coordinate axis, whether the domain meets it. Axis slices are derived from
//! the log region rather than stored, which keeps every representable domain
//! relatively complete toward the axes it touches.

use std::fmt;

use num_complex::Complex;
use num_rational::Ratio;
use thiserror::Error;

use crate::loggeom::{GeomError, IntVec2, LogPolyhedron};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("axis {0} cannot be attached: the log region is not complete toward it")]
    AttachmentNotComplete(Axis),
    #[error("removed set on axis {0} covers the whole slice")]
    RemovedSetNotProper(Axis),
    #[error("invalid radii interval [{lo}, {hi}]")]
    InvalidRadii { lo: f64, hi: f64 },
    #[error("invalid horn parameter: {0}")]
    InvalidHorn(&'static str),
}

/// A coordinate of C²: `Z` is the first, `W` the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    W,
}

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Var::Z => 0,
            Var::W => 1,
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::Z => Var::W,
            Var::W => Var::Z,
        }
    }
}

/// Coordinate axis `V1 = {z = 0}` or `V2 = {w = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    V1,
    V2,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::V1, Axis::V2];

    /// The coordinate that vanishes on the axis.
    #[inline]
    pub fn zero_coord(self) -> usize {
        match self {
            Axis::V1 => 0,
            Axis::V2 => 1,
        }
    }

    /// The coordinate that parametrizes the axis.
    #[inline]
    pub fn free_coord(self) -> usize {
        1 - self.zero_coord()
    }

    /// The axis on which coordinate `i` vanishes.
    pub fn with_zero(i: usize) -> Axis {
        if i == 0 {
            Axis::V1
        } else {
            Axis::V2
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.zero_coord()
    }

    pub fn other(self) -> Axis {
        Axis::with_zero(self.free_coord())
    }

    /// A point of C² on the axis with free coordinate `zeta`.
    pub fn point<R: Real>(self, zeta: Complex<R>) -> [Complex<R>; 2] {
        let mut p = [Complex::new(R::zero(), R::zero()); 2];
        p[self.free_coord()] = zeta;
        p
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::V1 => "V1",
            Axis::V2 => "V2",
        })
    }
}

/// Closed rotation-invariant subset of C given by a finite union of closed
/// radii intervals.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RadiiSet<R> {
    intervals: Vec<(R, R)>,
}

impl<R: Real> RadiiSet<R> {
    pub fn empty() -> Self {
        Self {
            intervals: Vec::new(),
        }
    }

    /// Builds the set from closed intervals; overlapping or touching
    /// intervals are merged.
    pub fn new(intervals: impl IntoIterator<Item = (R, R)>) -> Result<Self, DomainError> {
        let mut iv: Vec<(R, R)> = Vec::new();
        for (lo, hi) in intervals {
            if !(lo >= R::zero() && lo <= hi && hi.is_finite()) {
                return Err(DomainError::InvalidRadii {
                    lo: lo.to_f64_lossy(),
                    hi: hi.to_f64_lossy(),
                });
            }
            iv.push((lo, hi));
        }
        iv.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite radii"));
        let mut merged: Vec<(R, R)> = Vec::with_capacity(iv.len());
        for (lo, hi) in iv {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Ok(Self { intervals: merged })
    }

    #[inline]
    pub fn intervals(&self) -> &[(R, R)] {
        &self.intervals
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, r: R) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= r && r <= hi)
    }

    pub fn contains_zero(&self) -> bool {
        self.intervals.first().is_some_and(|&(lo, _)| lo == R::zero())
    }

    /// True iff the set is empty or `{0}`.
    pub fn is_subset_of_origin(&self) -> bool {
        self.intervals.iter().all(|&(lo, hi)| lo == R::zero() && hi == R::zero())
    }

    /// Signed distance in log-radius from `lr = ln r` to the set: positive
    /// outside, non-positive inside, `+∞` for the empty set.
    pub fn log_clearance(&self, lr: R) -> R {
        let mut best = R::infinity();
        for &(lo, hi) in &self.intervals {
            let llo = lo.ln();
            let lhi = hi.ln();
            let below = if lo == R::zero() { R::infinity() } else { lr - llo };
            let above = lhi - lr;
            let d = if below >= R::zero() && above >= R::zero() {
                -below.min(above)
            } else if above < R::zero() {
                -above
            } else {
                -below
            };
            best = best.min(d);
        }
        best
    }

    /// Image under `r ↦ scale · r^exponent`.
    pub fn map_power(&self, scale: R, exponent: i64) -> Option<Self> {
        let f = |r: R| scale * r.powi(exponent as i32);
        let out: Vec<(R, R)> = self
            .intervals
            .iter()
            .map(|&(lo, hi)| if exponent > 0 { (f(lo), f(hi)) } else { (f(hi), f(lo)) })
            .collect();
        Self::new(out).ok()
    }

    /// Does the set cover every radius `r` with `lo < r < hi` (and `r = lo`
    /// when `lo_included`)?
    pub fn covers(&self, lo: R, lo_included: bool, hi: R) -> bool {
        let mut pos = lo;
        let mut need_pos = lo_included;
        for &(a, b) in &self.intervals {
            if b < pos || (b == pos && !need_pos) {
                continue;
            }
            if a > pos {
                return false;
            }
            pos = b;
            need_pos = false;
            if pos >= hi {
                return true;
            }
        }
        false
    }
}

/// Whether the domain meets an axis, and which radii of the axis slice are
/// removed.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisAttachment<R> {
    Detached,
    Attached(RadiiSet<R>),
}

impl<R: Real> AxisAttachment<R> {
    pub fn attached() -> Self {
        Self::Attached(RadiiSet::empty())
    }

    #[inline]
    pub fn is_attached(&self) -> bool {
        matches!(self, Self::Attached(_))
    }

    pub fn removed(&self) -> Option<&RadiiSet<R>> {
        match self {
            Self::Attached(r) => Some(r),
            Self::Detached => None,
        }
    }

    fn cleared(&self) -> Self {
        match self {
            Self::Attached(_) => Self::attached(),
            Self::Detached => Self::Detached,
        }
    }
}

/// Rotation-invariant planar region, classified.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SliceShape<R> {
    Empty,
    Disc(R),
    PuncturedDisc(R),
    Annulus(R, R),
    OuterRegion(R),
    FullPlane,
    PuncturedPlane,
}

impl<R: Real> SliceShape<R> {
    /// Radii range `(lo, lo_included, hi)`, or `None` for the empty slice.
    pub fn radii_range(&self) -> Option<(R, bool, R)> {
        let inf = R::infinity();
        let zero = R::zero();
        match *self {
            Self::Empty => None,
            Self::Disc(r) => Some((zero, true, r)),
            Self::PuncturedDisc(r) => Some((zero, false, r)),
            Self::Annulus(a, b) => Some((a, false, b)),
            Self::OuterRegion(a) => Some((a, false, inf)),
            Self::FullPlane => Some((zero, true, inf)),
            Self::PuncturedPlane => Some((zero, false, inf)),
        }
    }

    /// Signed margin in log-radius: positive exactly inside the shape.
    pub fn log_margin(&self, lr: R) -> R {
        let inf = R::infinity();
        match *self {
            Self::Empty => -inf,
            Self::Disc(r) => r.ln() - lr,
            Self::PuncturedDisc(r) => {
                if lr == -inf {
                    -inf
                } else {
                    r.ln() - lr
                }
            }
            Self::Annulus(a, b) => (lr - a.ln()).min(b.ln() - lr),
            Self::OuterRegion(a) => lr - a.ln(),
            Self::FullPlane => {
                if lr == inf {
                    -inf
                } else {
                    inf
                }
            }
            Self::PuncturedPlane => {
                if lr.is_finite() {
                    inf
                } else {
                    -inf
                }
            }
        }
    }

    /// True iff the region omits the origin.
    pub fn is_punctured(&self) -> bool {
        !matches!(self, Self::Disc(_) | Self::FullPlane)
    }
}

impl<R: Real> fmt::Display for SliceShape<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "empty"),
            Self::Disc(r) => write!(f, "disc(r={r})"),
            Self::PuncturedDisc(r) => write!(f, "punctured disc(r={r})"),
            Self::Annulus(a, b) => write!(f, "annulus({a}, {b})"),
            Self::OuterRegion(a) => write!(f, "outer region(r>{a})"),
            Self::FullPlane => write!(f, "C"),
            Self::PuncturedPlane => write!(f, "C*"),
        }
    }
}

/// Axis slice: a classified shape minus a removed radii set.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisSlice<R> {
    pub shape: SliceShape<R>,
    pub removed: RadiiSet<R>,
}

impl<R: Real> AxisSlice<R> {
    pub fn is_empty(&self) -> bool {
        self.shape == SliceShape::Empty
    }

    /// Equal to C or to C* as a planar set.
    pub fn is_c_or_c_star(&self) -> bool {
        match self.shape {
            SliceShape::FullPlane | SliceShape::PuncturedPlane => self.removed.is_subset_of_origin(),
            _ => false,
        }
    }

    /// Equal to C as a planar set.
    pub fn is_full_plane(&self) -> bool {
        self.shape == SliceShape::FullPlane && self.removed.is_empty()
    }

    /// Equal to C* as a planar set.
    pub fn is_punctured_plane(&self) -> bool {
        match self.shape {
            SliceShape::PuncturedPlane => self.removed.is_subset_of_origin(),
            SliceShape::FullPlane => !self.removed.is_empty() && self.removed.is_subset_of_origin(),
            _ => false,
        }
    }

    /// Signed log-radius margin, accounting for removed radii.
    pub fn log_margin(&self, lr: R) -> R {
        self.shape.log_margin(lr).min(self.removed.log_clearance(lr))
    }

    pub fn contains_radius(&self, r: R) -> bool {
        self.log_margin(r.ln()) > R::zero()
    }
}

/// The quadruple `(d, s, s*, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantTuple {
    pub d: u8,
    pub s: u8,
    pub s_star: u8,
    pub t: u8,
}

impl InvariantTuple {
    pub const fn new(d: u8, s: u8, s_star: u8, t: u8) -> Self {
        Self { d, s, s_star, t }
    }
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} s={} s*={} t={}", self.d, self.s, self.s_star, self.t)
    }
}

/// Domain whose log image is a convex polyhedral region.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedralDomain<R> {
    log: LogPolyhedron<R>,
    axes: [AxisAttachment<R>; 2],
}

impl<R: Real> PolyhedralDomain<R> {
    pub fn new(log: LogPolyhedron<R>, axes: [AxisAttachment<R>; 2]) -> Result<Self, DomainError> {
        let cone = log.recession_cone();
        for axis in Axis::BOTH {
            if axes[axis.index()].is_attached() {
                let mut dir = IntVec2::default();
                if axis.zero_coord() == 0 {
                    dir.u = -1;
                } else {
                    dir.v = -1;
                }
                if !cone.contains(dir) {
                    return Err(DomainError::AttachmentNotComplete(axis));
                }
            }
        }
        let domain = Self { log, axes };
        for axis in Axis::BOTH {
            let slice = domain.slice(axis);
            if let (Some((lo, inc, hi)), false) = (slice.shape.radii_range(), slice.removed.is_empty()) {
                if slice.removed.covers(lo, inc, hi) {
                    return Err(DomainError::RemovedSetNotProper(axis));
                }
            }
        }
        Ok(domain)
    }

    #[inline]
    pub fn log(&self) -> &LogPolyhedron<R> {
        &self.log
    }

    #[inline]
    pub fn attachment(&self, axis: Axis) -> &AxisAttachment<R> {
        &self.axes[axis.index()]
    }

    #[inline]
    pub fn axes(&self) -> &[AxisAttachment<R>; 2] {
        &self.axes
    }

    /// Both axes attached and neither removed set contains radius 0.
    pub fn contains_origin(&self) -> bool {
        self.axes
            .iter()
            .all(|a| matches!(a, AxisAttachment::Attached(r) if !r.contains_zero()))
    }

    pub fn slice(&self, axis: Axis) -> AxisSlice<R> {
        let AxisAttachment::Attached(removed) = &self.axes[axis.index()] else {
            return AxisSlice {
                shape: SliceShape::Empty,
                removed: RadiiSet::empty(),
            };
        };
        let range = self
            .log
            .projection(axis.free_coord())
            .expect("validated region is nonempty");
        let shape = if self.contains_origin() {
            if range.hi.is_finite() {
                SliceShape::Disc(range.hi.exp())
            } else {
                SliceShape::FullPlane
            }
        } else {
            match (range.lo.is_finite(), range.hi.is_finite()) {
                (false, true) => SliceShape::PuncturedDisc(range.hi.exp()),
                (false, false) => SliceShape::PuncturedPlane,
                (true, true) => SliceShape::Annulus(range.lo.exp(), range.hi.exp()),
                (true, false) => SliceShape::OuterRegion(range.lo.exp()),
            }
        };
        AxisSlice {
            shape,
            removed: removed.clone(),
        }
    }

    fn log_margin(&self, l: [R; 2]) -> R {
        let ninf = R::neg_infinity();
        match (l[0] == ninf, l[1] == ninf) {
            (false, false) => self.log.slack(l),
            (true, false) => self.slice(Axis::V1).log_margin(l[1]),
            (false, true) => self.slice(Axis::V2).log_margin(l[0]),
            (true, true) => {
                if self.contains_origin() {
                    R::infinity()
                } else {
                    ninf
                }
            }
        }
    }
}

/// Exponential horn `{|b| < C·exp(−E·|a|^k)}` where `b` is the bounded
/// variable and `a` the other one.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpHornDomain<R> {
    bounded: Var,
    c: R,
    e: R,
    k: Ratio<i64>,
    free_axis: AxisAttachment<R>,
}

impl<R: Real> ExpHornDomain<R> {
    /// The full horn, meeting both axes.
    pub fn new(bounded: Var, c: R, e: R, k: Ratio<i64>) -> Result<Self, DomainError> {
        Self::with_free_axis(bounded, c, e, k, AxisAttachment::attached())
    }

    /// The horn with a chosen attachment for the axis `{b = 0}`.
    pub fn with_free_axis(
        bounded: Var,
        c: R,
        e: R,
        k: Ratio<i64>,
        free_axis: AxisAttachment<R>,
    ) -> Result<Self, DomainError> {
        if !(c > R::zero() && c.is_finite()) {
            return Err(DomainError::InvalidHorn("C must be positive and finite"));
        }
        if !(e > R::zero() && e.is_finite()) {
            return Err(DomainError::InvalidHorn("E must be positive and finite"));
        }
        if *k.numer() <= 0 || *k.denom() <= 0 {
            return Err(DomainError::InvalidHorn("k must be a positive rational"));
        }
        if let AxisAttachment::Attached(removed) = &free_axis {
            if removed.covers(R::zero(), true, R::infinity()) {
                return Err(DomainError::RemovedSetNotProper(Axis::with_zero(bounded.index())));
            }
        }
        Ok(Self {
            bounded,
            c,
            e,
            k,
            free_axis,
        })
    }

    #[inline]
    pub fn bounded(&self) -> Var {
        self.bounded
    }

    #[inline]
    pub fn c(&self) -> R {
        self.c
    }

    #[inline]
    pub fn e(&self) -> R {
        self.e
    }

    #[inline]
    pub fn k(&self) -> Ratio<i64> {
        self.k
    }

    /// The exponent as a real number.
    pub fn k_real(&self) -> R {
        R::from_int(*self.k.numer()) / R::from_int(*self.k.denom())
    }

    #[inline]
    pub fn free_axis(&self) -> &AxisAttachment<R> {
        &self.free_axis
    }

    /// The axis `{b = 0}`, along which the horn is unbounded.
    pub fn unbounded_axis(&self) -> Axis {
        Axis::with_zero(self.bounded.index())
    }

    pub fn contains_origin(&self) -> bool {
        matches!(&self.free_axis, AxisAttachment::Attached(r) if !r.contains_zero())
    }

    pub fn slice(&self, axis: Axis) -> AxisSlice<R> {
        if axis == self.unbounded_axis() {
            match &self.free_axis {
                AxisAttachment::Detached => AxisSlice {
                    shape: SliceShape::Empty,
                    removed: RadiiSet::empty(),
                },
                AxisAttachment::Attached(removed) => AxisSlice {
                    shape: SliceShape::FullPlane,
                    removed: removed.clone(),
                },
            }
        } else {
            let shape = if self.contains_origin() {
                SliceShape::Disc(self.c)
            } else {
                SliceShape::PuncturedDisc(self.c)
            };
            AxisSlice {
                shape,
                removed: RadiiSet::empty(),
            }
        }
    }

    /// `ln C − E·|a|^k − ln|b|` from log-moduli.
    pub fn horn_margin(&self, l: [R; 2]) -> R {
        let la = l[self.bounded.other().index()];
        let lb = l[self.bounded.index()];
        let growth = if la == R::neg_infinity() {
            R::zero()
        } else {
            self.e * (self.k_real() * la).exp()
        };
        self.c.ln() - growth - lb
    }

    fn log_margin(&self, l: [R; 2]) -> R {
        let lb = l[self.bounded.index()];
        if lb == R::neg_infinity() {
            let la = l[self.bounded.other().index()];
            if la == R::neg_infinity() {
                return if self.contains_origin() {
                    R::infinity()
                } else {
                    R::neg_infinity()
                };
            }
            return self.slice(self.unbounded_axis()).log_margin(la);
        }
        self.horn_margin(l)
    }
}

/// Reinhardt domain in C².
#[derive(Clone, Debug, PartialEq)]
pub enum ReinhardtDomain<R> {
    Polyhedral(PolyhedralDomain<R>),
    ExpHorn(ExpHornDomain<R>),
}

impl<R: Real> From<PolyhedralDomain<R>> for ReinhardtDomain<R> {
    fn from(d: PolyhedralDomain<R>) -> Self {
        Self::Polyhedral(d)
    }
}

impl<R: Real> From<ExpHornDomain<R>> for ReinhardtDomain<R> {
    fn from(d: ExpHornDomain<R>) -> Self {
        Self::ExpHorn(d)
    }
}

/// Entire curve `C → D` certifying non-hyperbolicity.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<R> {
    /// `ζ ↦ (z₀₁·e^{α₁ζ}, z₀₂·e^{α₂ζ})`.
    Exponential { base: [R; 2], alpha: IntVec2 },
    /// `ζ ↦ ζ` (or `e^ζ` when `exponential`) placed on the axis.
    AxisLine { axis: Axis, exponential: bool },
}

impl<R: Real> Witness<R> {
    pub fn eval(&self, zeta: Complex<R>) -> [Complex<R>; 2] {
        match self {
            Witness::Exponential { base, alpha } => {
                let f = |b: R, a: i64| (zeta * R::from_int(a)).exp() * b;
                [f(base[0], alpha.u), f(base[1], alpha.v)]
            }
            Witness::AxisLine { axis, exponential } => {
                axis.point(if *exponential { zeta.exp() } else { zeta })
            }
        }
    }

    /// Log-moduli of the curve point, computed without overflow.
    pub fn log_moduli(&self, zeta: Complex<R>) -> [R; 2] {
        match self {
            Witness::Exponential { base, alpha } => [
                base[0].ln() + R::from_int(alpha.u) * zeta.re,
                base[1].ln() + R::from_int(alpha.v) * zeta.re,
            ],
            Witness::AxisLine { axis, exponential } => {
                let mut l = [R::neg_infinity(); 2];
                l[axis.free_coord()] = if *exponential { zeta.re } else { zeta.norm().ln() };
                l
            }
        }
    }
}

fn log_moduli<R: Real>(z: Complex<R>, w: Complex<R>) -> [R; 2] {
    [z.norm().ln(), w.norm().ln()]
}

impl<R: Real> ReinhardtDomain<R> {
    /// `C²`.
    pub fn complex_plane() -> Self {
        Self::polyhedral(LogPolyhedron::whole_plane(), [AxisAttachment::attached(), AxisAttachment::attached()])
            .expect("C² is valid")
    }

    /// `C*²`.
    pub fn punctured_plane() -> Self {
        Self::polyhedral(LogPolyhedron::whole_plane(), [AxisAttachment::Detached, AxisAttachment::Detached])
            .expect("C*² is valid")
    }

    /// `C × C*`: meets `{z = 0}` but not `{w = 0}`.
    pub fn plane_times_punctured() -> Self {
        Self::polyhedral(LogPolyhedron::whole_plane(), [AxisAttachment::attached(), AxisAttachment::Detached])
            .expect("C × C* is valid")
    }

    /// `{C|z|^p|w|^q < 1, |w| < E} ∖ (removed × {0})`.
    pub fn type_one_shape(c: R, p: i64, q: i64, e: R, removed: RadiiSet<R>) -> Result<Self, DomainError> {
        if !(c > R::zero() && e > R::zero()) {
            return Err(DomainError::InvalidHorn("C and E must be positive"));
        }
        let log = LogPolyhedron::from_pairs(&[((p, q), -c.ln()), ((0, 1), e.ln())])?;
        Self::polyhedral(log, [AxisAttachment::attached(), AxisAttachment::Attached(removed)])
    }

    /// `{|z| < |w| < 1}`.
    pub fn hartogs() -> Self {
        let log = LogPolyhedron::from_pairs(&[((1, -1), R::zero()), ((0, 1), R::zero())]).expect("nonempty");
        Self::polyhedral(log, [AxisAttachment::attached(), AxisAttachment::Detached]).expect("valid")
    }

    pub fn polyhedral(log: LogPolyhedron<R>, axes: [AxisAttachment<R>; 2]) -> Result<Self, DomainError> {
        PolyhedralDomain::new(log, axes).map(Self::Polyhedral)
    }

    pub fn exp_horn(bounded: Var, c: R, e: R, k: Ratio<i64>) -> Result<Self, DomainError> {
        ExpHornDomain::new(bounded, c, e, k).map(Self::ExpHorn)
    }

    /// The image under `(z, w) ↦ (w, z)`.
    pub fn swapped(&self) -> Self {
        match self {
            Self::Polyhedral(p) => {
                let swap = crate::loggeom::IntMat2::SWAP;
                let log = p.log.affine_image(&swap, [R::zero(); 2]).expect("swap is invertible");
                let axes = [p.axes[1].clone(), p.axes[0].clone()];
                Self::Polyhedral(PolyhedralDomain { log, axes })
            }
            Self::ExpHorn(h) => Self::ExpHorn(ExpHornDomain {
                bounded: h.bounded.other(),
                ..h.clone()
            }),
        }
    }

    pub fn contains_origin(&self) -> bool {
        match self {
            Self::Polyhedral(p) => p.contains_origin(),
            Self::ExpHorn(h) => h.contains_origin(),
        }
    }

    pub fn attachment(&self, axis: Axis) -> AxisAttachment<R> {
        match self {
            Self::Polyhedral(p) => p.attachment(axis).clone(),
            Self::ExpHorn(h) => {
                if axis == h.unbounded_axis() {
                    h.free_axis.clone()
                } else {
                    AxisAttachment::attached()
                }
            }
        }
    }

    /// Signed margin from log-moduli `(ln|z|, ln|w|)`; a zero coordinate is
    /// `−∞`. Positive exactly on the domain.
    pub fn log_margin(&self, l: [R; 2]) -> R {
        match self {
            Self::Polyhedral(p) => p.log_margin(l),
            Self::ExpHorn(h) => h.log_margin(l),
        }
    }

    pub fn contains_log(&self, l: [R; 2]) -> bool {
        self.log_margin(l) > R::zero()
    }

    pub fn contains(&self, z: Complex<R>, w: Complex<R>) -> bool {
        self.contains_log(log_moduli(z, w))
    }

    pub fn slice(&self, axis: Axis) -> AxisSlice<R> {
        match self {
            Self::Polyhedral(p) => p.slice(axis),
            Self::ExpHorn(h) => h.slice(axis),
        }
    }

    /// Removes every removed axis set, giving the pseudoconvex hull.
    pub fn envelope(&self) -> Self {
        match self {
            Self::Polyhedral(p) => Self::Polyhedral(PolyhedralDomain {
                log: p.log.clone(),
                axes: [p.axes[0].cleared(), p.axes[1].cleared()],
            }),
            Self::ExpHorn(h) => Self::ExpHorn(ExpHornDomain {
                free_axis: h.free_axis.cleared(),
                ..h.clone()
            }),
        }
    }

    /// Lineality dimension of the log image.
    pub fn lineality_dim(&self) -> u8 {
        match self {
            Self::Polyhedral(p) => p.log.lineality_dim(),
            Self::ExpHorn(_) => 0,
        }
    }

    pub fn invariant_tuple(&self) -> InvariantTuple {
        let env = self.envelope();
        let mut t = InvariantTuple::new(env.lineality_dim(), 0, 0, 0);
        for axis in Axis::BOTH {
            let slice = env.slice(axis);
            t.s += slice.is_full_plane() as u8;
            t.s_star += slice.is_punctured_plane() as u8;
            t.t += !slice.is_empty() as u8;
        }
        t
    }

    pub fn is_brody_hyperbolic(&self) -> bool {
        let env = self.envelope();
        env.lineality_dim() == 0 && Axis::BOTH.iter().all(|&a| !env.slice(a).is_c_or_c_star())
    }

    /// Axes whose slice is C or C*.
    pub fn non_hyperbolic_axes(&self) -> Vec<Axis> {
        Axis::BOTH
            .into_iter()
            .filter(|&a| self.slice(a).is_c_or_c_star())
            .collect()
    }

    /// The domain with every axis carrying a C or C* slice removed.
    pub fn hyp_part(&self) -> Self {
        let drop = self.non_hyperbolic_axes();
        match self {
            Self::Polyhedral(p) => {
                let mut axes = p.axes.clone();
                for a in drop {
                    axes[a.index()] = AxisAttachment::Detached;
                }
                Self::Polyhedral(PolyhedralDomain {
                    log: p.log.clone(),
                    axes,
                })
            }
            Self::ExpHorn(h) => {
                let mut h = h.clone();
                if drop.contains(&h.unbounded_axis()) {
                    h.free_axis = AxisAttachment::Detached;
                }
                Self::ExpHorn(h)
            }
        }
    }

    /// An entire curve into the domain, when one of the standard forms fits.
    pub fn entire_curve_witness(&self) -> Option<Witness<R>> {
        let candidate = match self {
            Self::Polyhedral(p) if p.log.lineality_dim() >= 1 => {
                let alpha = match p.log.lineality_dim() {
                    2 => IntVec2::new(1, 1),
                    _ => p.log.recession_cone().line_direction().expect("lineality 1"),
                };
                let x = p.log.interior_point();
                Some(Witness::Exponential {
                    base: [x[0].exp(), x[1].exp()],
                    alpha,
                })
            }
            _ => Axis::BOTH.into_iter().find_map(|axis| {
                let slice = self.slice(axis);
                if slice.is_full_plane() {
                    Some(Witness::AxisLine {
                        axis,
                        exponential: false,
                    })
                } else if slice.is_c_or_c_star() {
                    Some(Witness::AxisLine {
                        axis,
                        exponential: true,
                    })
                } else {
                    None
                }
            }),
        }?;
        self.witness_holds(&candidate).then_some(candidate)
    }

    /// Checks the curve on a fixed grid of 1000 parameters.
    pub fn witness_holds(&self, witness: &Witness<R>) -> bool {
        (0..1000).all(|i| {
            let re = R::lit(-25.0 + 50.0 * ((i % 40) as f64) / 39.0);
            let im = R::lit(-12.0 + 24.0 * ((i / 40) as f64) / 24.0);
            self.contains_log(witness.log_moduli(Complex::new(re, im)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = ReinhardtDomain<f64>;

    fn radii(iv: &[(f64, f64)]) -> RadiiSet<f64> {
        RadiiSet::new(iv.iter().copied()).unwrap()
    }

    fn type_one() -> D {
        D::type_one_shape(1.0, 1, 1, 1.0, RadiiSet::empty()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn membership_examples() {
        assert!(type_one().contains(c(3.0, 0.0), c(0.1, 0.0)));
        let holed = D::type_one_shape(1.0, 1, 1, 1.0, radii(&[(2.0, 4.0)])).unwrap();
        assert!(!holed.contains(c(3.0, 0.0), c(0.0, 0.0)));
        assert!(holed.contains(c(5.0, 0.0), c(0.0, 0.0)));
        let horn = D::exp_horn(Var::W, 1.0, 1.0, Ratio::from_integer(2)).unwrap();
        assert!(!horn.contains(c(0.0, 0.0), c(1.0, 0.0)));
        assert!(horn.contains(c(0.0, 0.0), c(0.99, 0.0)));
        assert!(horn.contains(c(1e6, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn slices_of_catalog_domains() {
        let env = type_one();
        assert_eq!(env.slice(Axis::V2).shape, SliceShape::FullPlane);
        assert_eq!(env.slice(Axis::V1).shape, SliceShape::Disc(1.0));
        assert_eq!(D::plane_times_punctured().slice(Axis::V1).shape, SliceShape::PuncturedPlane);
        assert_eq!(D::hartogs().slice(Axis::V1).shape, SliceShape::PuncturedDisc(1.0));
        assert_eq!(D::hartogs().slice(Axis::V2).shape, SliceShape::Empty);
    }

    #[test]
    fn slices_agree_with_membership() {
        let domains = [
            type_one(),
            D::hartogs(),
            D::plane_times_punctured(),
            D::exp_horn(Var::W, 2.0, 1.0, Ratio::new(2, 3)).unwrap(),
            D::type_one_shape(2.0, 2, 3, 0.5, radii(&[(0.0, 0.0), (1.0, 2.0)])).unwrap(),
        ];
        for d in &domains {
            for axis in Axis::BOTH {
                let slice = d.slice(axis);
                for i in 0..1000 {
                    let r = 10f64.powf(-3.0 + 6.0 * i as f64 / 999.0);
                    let p = axis.point(c(r, 0.0));
                    assert_eq!(slice.contains_radius(r), d.contains(p[0], p[1]), "{axis} r={r}");
                }
            }
        }
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(type_one().invariant_tuple(), InvariantTuple::new(0, 1, 0, 2));
        assert_eq!(D::punctured_plane().invariant_tuple(), InvariantTuple::new(2, 0, 0, 0));
        assert_eq!(D::hartogs().invariant_tuple(), InvariantTuple::new(0, 0, 0, 1));
        assert_eq!(D::complex_plane().invariant_tuple(), InvariantTuple::new(2, 2, 0, 2));
        assert_eq!(D::plane_times_punctured().invariant_tuple(), InvariantTuple::new(2, 0, 1, 1));
        assert_eq!(type_one().invariant_tuple().to_string(), "d=0 s=1 s*=0 t=2");
    }

    #[test]
    fn hyperbolicity_examples() {
        assert!(D::hartogs().is_brody_hyperbolic());
        assert!(!type_one().is_brody_hyperbolic());
        assert!(!D::punctured_plane().is_brody_hyperbolic());
    }

    #[test]
    fn hyp_part_examples() {
        let h = type_one().hyp_part();
        let ReinhardtDomain::Polyhedral(p) = &h else { panic!() };
        assert!(p.attachment(Axis::V1).is_attached());
        assert!(!p.attachment(Axis::V2).is_attached());
        assert_eq!(h.slice(Axis::V1).shape, SliceShape::PuncturedDisc(1.0));
        assert_eq!(h.hyp_part(), h);
        assert_eq!(D::hartogs().hyp_part(), D::hartogs());

        let horn = D::exp_horn(Var::W, 1.0, 1.0, Ratio::from_integer(2)).unwrap();
        let hh = horn.hyp_part();
        assert!(!hh.contains(c(1.0, 0.0), c(0.0, 0.0)));
        assert!(hh.contains(c(0.0, 0.0), c(0.5, 0.0)));
        assert!(!hh.contains(c(0.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn envelope_clears_removed_sets() {
        let holed = D::type_one_shape(1.0, 1, 1, 1.0, radii(&[(2.0, 4.0)])).unwrap();
        assert_eq!(holed.envelope(), type_one());
        assert_eq!(type_one().envelope(), type_one());
        assert_eq!(holed.invariant_tuple(), type_one().invariant_tuple());
    }

    #[test]
    fn witnesses() {
        let w = D::punctured_plane().entire_curve_witness().unwrap();
        assert_eq!(
            w,
            Witness::Exponential {
                base: [1.0, 1.0],
                alpha: IntVec2::new(1, 1)
            }
        );
        let half = D::polyhedral(
            LogPolyhedron::from_pairs(&[((1, 0), 0.0)]).unwrap(),
            [AxisAttachment::Detached, AxisAttachment::Detached],
        )
        .unwrap();
        let Witness::Exponential { base, alpha } = half.entire_curve_witness().unwrap() else {
            panic!()
        };
        assert_eq!(alpha, IntVec2::new(0, 1));
        assert!((base[0] - 0.5).abs() < 1e-15 && base[1] == 1.0);
        assert!(D::hartogs().entire_curve_witness().is_none());
        assert!(type_one().entire_curve_witness().is_some());
    }

    #[test]
    fn invalid_attachments_rejected() {
        let log = LogPolyhedron::from_pairs(&[((-1, 0), 0.0)]).unwrap();
        assert_eq!(
            D::polyhedral(log, [AxisAttachment::attached(), AxisAttachment::Detached]),
            Err(DomainError::AttachmentNotComplete(Axis::V1))
        );
        assert!(D::type_one_shape(1.0, 1, 1, 1.0, radii(&[(0.0, 1e300)])).is_ok());
        let quadrant = LogPolyhedron::from_pairs(&[((1, 0), 0.0), ((0, 1), 0.0)]).unwrap();
        assert_eq!(
            D::polyhedral(quadrant, [AxisAttachment::Attached(radii(&[(0.0, 1.0)])), AxisAttachment::attached()]),
            Err(DomainError::RemovedSetNotProper(Axis::V1))
        );
    }

    #[test]
    fn radii_sets() {
        let r = radii(&[(3.0, 4.0), (1.0, 2.0), (1.5, 3.0)]);
        assert_eq!(r.intervals(), &[(1.0, 4.0)]);
        assert!(r.log_clearance(0.5f64.ln()) > 0.0);
        assert!(r.log_clearance(2.0f64.ln()) <= 0.0);
        assert!(radii(&[(0.0, 1.0)]).covers(0.0, true, 1.0));
        assert!(!radii(&[(0.0, 1.0)]).covers(0.0, true, 2.0));
        assert!(radii(&[(0.5, 1.0)]).covers(0.5, false, 1.0));
        assert!(!radii(&[(0.5, 1.0)]).covers(0.0, false, 1.0));
        assert!(RadiiSet::new([(2.0, 1.0)]).is_err());
        assert_eq!(radii(&[(1.0, 2.0)]).map_power(2.0, 2).unwrap().intervals(), &[(2.0, 8.0)]);
    }
}
