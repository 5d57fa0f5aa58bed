//! Two-dimensional convex geometry over integer normals.
//!
//! A [`LogPolyhedron`] is an open region `{x ∈ R² : n_i · x < c_i}` whose
//! normals `n_i` are primitive integer vectors. Recession cones, lineality and
//! boundedness depend only on the normals and are computed with integer
//! arithmetic; offsets are carried in a generic [`Real`] and only enter
//! membership, projections and interior points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("half-plane normal must be nonzero")]
    ZeroNormal,
    #[error("half-plane offset must be finite")]
    NonFiniteOffset,
    #[error("constraints describe an empty region")]
    EmptyRegion,
    #[error("matrix is singular")]
    SingularMatrix,
}

/// Integer vector in Z².
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec2 {
    pub u: i64,
    pub v: i64,
}

impl IntVec2 {
    pub const E1: IntVec2 = IntVec2 { u: 1, v: 0 };
    pub const E2: IntVec2 = IntVec2 { u: 0, v: 1 };

    #[inline]
    pub const fn new(u: i64, v: i64) -> Self {
        Self { u, v }
    }

    #[inline]
    pub fn dot(self, o: Self) -> i64 {
        self.u * o.u + self.v * o.v
    }

    /// z-component of the 2-D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> i64 {
        self.u * o.v - self.v * o.u
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.u == 0 && self.v == 0
    }

    /// Non-negative gcd of the entries (0 for the zero vector).
    #[inline]
    pub fn content(self) -> i64 {
        self.u.gcd(&self.v)
    }

    #[inline]
    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// The primitive vector pointing the same way, or `None` for zero.
    pub fn primitive(self) -> Option<Self> {
        let g = self.content();
        (g != 0).then(|| Self::new(self.u / g, self.v / g))
    }

    /// Counter-clockwise rotation by a right angle.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.v, self.u)
    }

    #[inline]
    pub fn component(self, i: usize) -> i64 {
        if i == 0 {
            self.u
        } else {
            self.v
        }
    }

    pub fn to_real<R: Real>(self) -> [R; 2] {
        [R::from_int(self.u), R::from_int(self.v)]
    }

    /// `self · x` for a real point. Zero coefficients are skipped so that
    /// infinite coordinates do not produce `0 · ∞`.
    pub fn dot_real<R: Real>(self, x: [R; 2]) -> R {
        let mut acc = R::zero();
        if self.u != 0 {
            acc = acc + R::from_int(self.u) * x[0];
        }
        if self.v != 0 {
            acc = acc + R::from_int(self.v) * x[1];
        }
        acc
    }

    /// l1 norm.
    #[inline]
    pub fn l1(self) -> i64 {
        self.u.abs() + self.v.abs()
    }
}

impl Neg for IntVec2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.u, -self.v)
    }
}

impl Add for IntVec2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for IntVec2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.u - o.u, self.v - o.v)
    }
}

impl Mul<i64> for IntVec2 {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.u * k, self.v * k)
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// 2×2 integer matrix, stored by rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMat2(pub [[i64; 2]; 2]);

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2([[1, 0], [0, 1]]);
    pub const SWAP: IntMat2 = IntMat2([[0, 1], [1, 0]]);

    #[inline]
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn from_rows(r1: IntVec2, r2: IntVec2) -> Self {
        Self::new(r1.u, r1.v, r2.u, r2.v)
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn row(&self, i: usize) -> IntVec2 {
        IntVec2::new(self.0[i][0], self.0[i][1])
    }

    pub fn col(&self, j: usize) -> IntVec2 {
        IntVec2::new(self.0[0][j], self.0[1][j])
    }

    #[inline]
    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    #[inline]
    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// `adj(A)`, so that `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self::new(d, -b, -c, a)
    }

    /// `A · x`.
    pub fn apply(&self, x: IntVec2) -> IntVec2 {
        IntVec2::new(self.row(0).dot(x), self.row(1).dot(x))
    }

    /// `nᵀ · A`.
    pub fn left_apply(&self, n: IntVec2) -> IntVec2 {
        IntVec2::new(n.dot(self.col(0)), n.dot(self.col(1)))
    }

    pub fn apply_real<R: Real>(&self, x: [R; 2]) -> [R; 2] {
        [self.row(0).dot_real(x), self.row(1).dot_real(x)]
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self::new(a, c, b, d)
    }
}

impl Mul for IntMat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let r = |i: usize, j: usize| self.row(i).dot(o.col(j));
        Self::new(r(0, 0), r(0, 1), r(1, 0), r(1, 1))
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Open half-plane `{x : normal · x < offset}` with a primitive normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane<R> {
    normal: IntVec2,
    offset: R,
}

impl<R: Real> HalfPlane<R> {
    /// Builds a half-plane, dividing a non-primitive normal (and the offset)
    /// by the gcd of its entries.
    pub fn new(normal: IntVec2, offset: R) -> Result<Self, GeomError> {
        if normal.is_zero() {
            return Err(GeomError::ZeroNormal);
        }
        if !offset.is_finite() {
            return Err(GeomError::NonFiniteOffset);
        }
        let g = normal.content();
        let offset = if g == 1 { offset } else { offset / R::from_int(g) };
        Ok(Self {
            normal: IntVec2::new(normal.u / g, normal.v / g),
            offset,
        })
    }

    #[inline]
    pub fn normal(&self) -> IntVec2 {
        self.normal
    }

    #[inline]
    pub fn offset(&self) -> R {
        self.offset
    }

    /// `offset − normal · x`; positive exactly on the open half-plane.
    #[inline]
    pub fn slack(&self, x: [R; 2]) -> R {
        self.offset - self.normal.dot_real(x)
    }

    #[inline]
    pub fn contains(&self, x: [R; 2]) -> bool {
        self.slack(x) > R::zero()
    }
}

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpenInterval<R> {
    pub lo: R,
    pub hi: R,
}

impl<R: Real> OpenInterval<R> {
    pub fn full() -> Self {
        Self {
            lo: R::neg_infinity(),
            hi: R::infinity(),
        }
    }

    #[inline]
    pub fn contains(&self, t: R) -> bool {
        self.lo < t && t < self.hi
    }

    /// Deterministic representative: 0 when unbounded on both sides, the
    /// midpoint when bounded, and `ln 2` inside the finite end otherwise.
    pub fn pick(&self) -> R {
        let ln2 = R::LN_2();
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (false, false) => R::zero(),
            (true, false) => self.lo + ln2,
            (false, true) => self.hi - ln2,
            (true, true) => self.lo + (self.hi - self.lo) / R::lit(2.0),
        }
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        (lo < hi).then_some(Self { lo, hi })
    }
}

/// Solves the one-dimensional strict system `{α_i t < β_i}`.
pub(crate) fn strict_bounds_1d<R: Real>(
    terms: impl IntoIterator<Item = (i64, R)>,
) -> Option<OpenInterval<R>> {
    let mut lo = R::neg_infinity();
    let mut hi = R::infinity();
    for (alpha, beta) in terms {
        match alpha.signum() {
            0 => {
                if !(beta > R::zero()) {
                    return None;
                }
            }
            1 => hi = hi.min(beta / R::from_int(alpha)),
            _ => lo = lo.max(beta / R::from_int(alpha)),
        }
    }
    (lo < hi).then_some(OpenInterval { lo, hi })
}

/// Recession cone of a [`LogPolyhedron`], in canonical integer form.
///
/// - `lineality_dim == 2`: the whole plane, no generators.
/// - `lineality_dim == 1`: `generators[0]` spans the line (sign normalized so
///   the first nonzero entry is positive); an optional `generators[1]` makes
///   the cone a closed half-plane and is the primitive inward normal.
/// - `lineality_dim == 0`: `{0}`, a ray, or a pointed wedge, generators sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecessionCone {
    lineality_dim: u8,
    generators: Vec<IntVec2>,
}

impl RecessionCone {
    pub fn full() -> Self {
        Self {
            lineality_dim: 2,
            generators: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self {
            lineality_dim: 0,
            generators: Vec::new(),
        }
    }

    /// `{v : n · v ≤ 0 for every n}`.
    pub fn from_normals(normals: &[IntVec2]) -> Self {
        let normals: Vec<IntVec2> = normals.iter().filter_map(|n| n.primitive()).collect();
        let Some(&n0) = normals.first() else {
            return Self::full();
        };
        if normals.iter().all(|n| n.cross(n0) == 0) {
            let line = n0.perp();
            let two_sided = normals.iter().any(|n| n.dot(n0) < 0);
            let gens = if two_sided { vec![line] } else { vec![line, -n0] };
            return Self::canonical(1, gens);
        }
        // Every boundary ray of the cone is perpendicular to some normal.
        let mut gens = Vec::new();
        for n in &normals {
            for cand in [n.perp(), -n.perp()] {
                if normals.iter().all(|m| m.dot(cand) <= 0) && !gens.contains(&cand) {
                    gens.push(cand);
                }
            }
        }
        Self::canonical(0, gens)
    }

    fn canonical(lineality_dim: u8, mut gens: Vec<IntVec2>) -> Self {
        for g in gens.iter_mut() {
            *g = g.primitive().expect("cone generators are nonzero");
        }
        match lineality_dim {
            1 => {
                let mut line = gens[0];
                if line.u < 0 || (line.u == 0 && line.v < 0) {
                    line = -line;
                }
                let mut out = vec![line];
                if let Some(&r) = gens.get(1) {
                    let mut inward = line.perp();
                    if inward.dot(r) < 0 {
                        inward = -inward;
                    }
                    out.push(inward);
                }
                Self {
                    lineality_dim,
                    generators: out,
                }
            }
            _ => {
                gens.sort();
                gens.dedup();
                Self {
                    lineality_dim,
                    generators: gens,
                }
            }
        }
    }

    #[inline]
    pub fn lineality_dim(&self) -> u8 {
        self.lineality_dim
    }

    #[inline]
    pub fn generators(&self) -> &[IntVec2] {
        &self.generators
    }

    /// Direction of the lineality line when `lineality_dim == 1`.
    pub fn line_direction(&self) -> Option<IntVec2> {
        (self.lineality_dim == 1).then(|| self.generators[0])
    }

    pub fn contains(&self, v: IntVec2) -> bool {
        if v.is_zero() {
            return true;
        }
        match (self.lineality_dim, self.generators.as_slice()) {
            (2, _) => true,
            (1, [d]) => d.cross(v) == 0,
            (1, [d, r]) => {
                let side = d.cross(*r).signum();
                d.cross(v) == 0 || d.cross(v).signum() == side
            }
            (0, []) => false,
            (0, [g]) => g.cross(v) == 0 && g.dot(v) > 0,
            (0, [g1, g2]) => {
                let s = g1.cross(*g2).signum();
                s * g1.cross(v) >= 0 && s * v.cross(*g2) >= 0
            }
            _ => unreachable!("malformed recession cone"),
        }
    }

    /// Image under an invertible integer matrix, re-canonicalized.
    pub fn image(&self, a: &IntMat2) -> Self {
        if self.lineality_dim == 2 {
            return Self::full();
        }
        let gens = self.generators.iter().map(|&g| a.apply(g)).collect();
        if self.lineality_dim == 1 && self.generators.len() == 2 {
            // The image of the inward normal is some vector on the correct side.
            return Self::canonical(1, gens);
        }
        Self::canonical(self.lineality_dim, gens)
    }

    /// True iff the cone lies in the closed negative quadrant.
    pub fn in_negative_quadrant(&self) -> bool {
        self.lineality_dim == 0 && self.generators.iter().all(|g| g.u <= 0 && g.v <= 0)
    }
}

impl fmt::Display for RecessionCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lineality {} generators [", self.lineality_dim)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// Nonempty open convex region `{x : n_i · x < c_i}` in R².
///
/// Constraints are kept sorted by normal, one per normal (the smaller offset
/// wins), so structurally equal regions compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPolyhedron<R> {
    constraints: Vec<HalfPlane<R>>,
}

impl<R: Real> LogPolyhedron<R> {
    pub fn whole_plane() -> Self {
        Self {
            constraints: Vec::new(),
        }
    }

    pub fn new(constraints: impl IntoIterator<Item = HalfPlane<R>>) -> Result<Self, GeomError> {
        let mut cs: Vec<HalfPlane<R>> = Vec::new();
        for h in constraints {
            match cs.iter_mut().find(|e| e.normal == h.normal) {
                Some(e) => {
                    if h.offset < e.offset {
                        e.offset = h.offset;
                    }
                }
                None => cs.push(h),
            }
        }
        cs.sort_by_key(|h| h.normal);
        let region = Self { constraints: cs };
        if region.projection(0).is_none() {
            return Err(GeomError::EmptyRegion);
        }
        Ok(region)
    }

    /// Convenience constructor from `((u, v), offset)` pairs.
    pub fn from_pairs(pairs: &[((i64, i64), R)]) -> Result<Self, GeomError> {
        let hs = pairs
            .iter()
            .map(|&((u, v), c)| HalfPlane::new(IntVec2::new(u, v), c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(hs)
    }

    #[inline]
    pub fn constraints(&self) -> &[HalfPlane<R>] {
        &self.constraints
    }

    pub fn normals(&self) -> Vec<IntVec2> {
        self.constraints.iter().map(|h| h.normal).collect()
    }

    pub fn is_whole_plane(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Minimum slack over all constraints (`+∞` for the whole plane).
    pub fn slack(&self, x: [R; 2]) -> R {
        self.constraints
            .iter()
            .map(|h| h.slack(x))
            .fold(R::infinity(), R::min)
    }

    #[inline]
    pub fn contains(&self, x: [R; 2]) -> bool {
        self.constraints.iter().all(|h| h.contains(x))
    }

    pub fn recession_cone(&self) -> RecessionCone {
        RecessionCone::from_normals(&self.normals())
    }

    /// Dimension of the largest affine subspace inside the region.
    pub fn lineality_dim(&self) -> u8 {
        match self.constraints.first() {
            None => 2,
            Some(h0) => {
                if self.constraints.iter().all(|h| h.normal.cross(h0.normal) == 0) {
                    1
                } else {
                    0
                }
            }
        }
    }

    /// True iff both coordinates are bounded above on the region.
    pub fn is_bounded_above(&self) -> bool {
        self.recession_cone().in_negative_quadrant()
    }

    /// `{A x + t : x ∈ self}` for invertible `A`.
    pub fn affine_image(&self, a: &IntMat2, t: [R; 2]) -> Result<Self, GeomError> {
        let det = a.det();
        if det == 0 {
            return Err(GeomError::SingularMatrix);
        }
        // n·x < c with x = adj(A)(y − t)/det  ⇔  m·y < |det|·c + m·t
        let adj = a.adjugate();
        let scale = R::from_int(det.abs());
        let hs = self
            .constraints
            .iter()
            .map(|h| {
                let m = adj.left_apply(h.normal) * det.signum();
                HalfPlane::new(m, scale * h.offset + m.dot_real(t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(hs)
    }

    /// Projection of the region onto coordinate `keep`, by Fourier-Motzkin
    /// elimination of the other coordinate. `None` iff the region is empty.
    pub fn projection(&self, keep: usize) -> Option<OpenInterval<R>> {
        let elim = 1 - keep;
        let coef = |h: &HalfPlane<R>| (h.normal.component(keep), h.normal.component(elim));
        let mut terms: Vec<(i64, R)> = Vec::new();
        for h in &self.constraints {
            let (a, b) = coef(h);
            if b == 0 {
                terms.push((a, h.offset));
            }
        }
        for hi in self.constraints.iter().filter(|h| coef(h).1 > 0) {
            for hj in self.constraints.iter().filter(|h| coef(h).1 < 0) {
                let (ai, bi) = coef(hi);
                let (aj, bj) = coef(hj);
                let alpha = -bj * ai + bi * aj;
                let beta = R::from_int(-bj) * hi.offset + R::from_int(bi) * hj.offset;
                terms.push((alpha, beta));
            }
        }
        strict_bounds_1d(terms)
    }

    /// Values of the other coordinate when coordinate `fixed` equals `value`.
    pub fn section(&self, fixed: usize, value: R) -> Option<OpenInterval<R>> {
        let other = 1 - fixed;
        strict_bounds_1d(self.constraints.iter().map(|h| {
            let a = h.normal.component(fixed);
            let rhs = if a == 0 {
                h.offset
            } else {
                h.offset - R::from_int(a) * value
            };
            (h.normal.component(other), rhs)
        }))
    }

    /// A deterministic interior point (see [`OpenInterval::pick`]).
    pub fn interior_point(&self) -> [R; 2] {
        let x = self
            .projection(0)
            .expect("validated region is nonempty")
            .pick();
        let y = self
            .section(0, x)
            .expect("section through a projected value is nonempty")
            .pick();
        [x, y]
    }

    /// Parameterized relative interior of the face on constraint `i`:
    /// points `base + t·dir` for `t` in the returned interval. `None` when the
    /// constraint is redundant (its line misses the closure of the region
    /// except possibly at a point).
    pub fn face(&self, i: usize) -> Option<Face<R>> {
        let h = &self.constraints[i];
        let n = h.normal.to_real::<R>();
        let nn = n[0] * n[0] + n[1] * n[1];
        let base = [h.offset * n[0] / nn, h.offset * n[1] / nn];
        let dir_int = h.normal.perp();
        let dir = dir_int.to_real::<R>();
        let interval = strict_bounds_1d(self.constraints.iter().enumerate().filter(|(j, _)| *j != i).map(
            |(_, g)| (g.normal.dot(dir_int), g.slack(base)),
        ))?;
        Some(Face {
            index: i,
            base,
            dir,
            interval,
        })
    }
}

/// Relative interior of one edge of a [`LogPolyhedron`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Face<R> {
    pub index: usize,
    pub base: [R; 2],
    pub dir: [R; 2],
    pub interval: OpenInterval<R>,
}

impl<R: Real> Face<R> {
    pub fn point(&self, t: R) -> [R; 2] {
        [self.base[0] + t * self.dir[0], self.base[1] + t * self.dir[1]]
    }

    /// Parameter of the orthogonal projection of `x` onto the face line.
    pub fn parameter_of(&self, x: [R; 2]) -> R {
        let d2 = self.dir[0] * self.dir[0] + self.dir[1] * self.dir[1];
        ((x[0] - self.base[0]) * self.dir[0] + (x[1] - self.base[1]) * self.dir[1]) / d2
    }
}
