//! Holomorphic maps between Reinhardt domains.
//!
//! Three families are supported: elementary monomial maps
//! `(z, w) ↦ (b₁ z^{a₁₁} w^{a₁₂}, b₂ z^{a₂₁} w^{a₂₂})`, and the two
//! non-elementary proper families built around a finite Blaschke product and
//! around an exponential horn. Each family can be composed with a swap of the
//! variables and a swap of the components.

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::domains::{Axis, AxisAttachment, DomainError, PolyhedralDomain, RadiiSet, ReinhardtDomain, Var};
use crate::loggeom::{GeomError, IntMat2, IntVec2};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("Blaschke zero at the origin")]
    BlaschkeZeroAtOrigin,
    #[error("Blaschke zero outside the open unit disc")]
    ZeroOutsideDisc,
    #[error("Blaschke product evaluated outside the closed unit disc (|λ| = {0})")]
    OutsideUnitDisc(f64),
    #[error("negative exponent at a zero coordinate")]
    PoleAtAxis,
    #[error("exponent matrix is singular")]
    SingularMatrix,
    #[error("p1 = {0} and q1 = {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("removed set is not a proper subset of the plane")]
    RemovedSetNotProper,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("axis {0} is attached but the map does not extend across it")]
    AxisIncompatible(Axis),
    #[error("operation needs an elementary map")]
    NotElementary,
    #[error("operation needs a polyhedral domain")]
    NotPolyhedral,
    #[error(
        "boundary functional is not constant on the source boundary \
         (spread {spread:.3e}); the family needs E1 = 1/c1 = {required}, got {e1}"
    )]
    BoundaryMismatch { e1: f64, required: f64, spread: f64 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl From<GeomError> for MapError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::SingularMatrix => MapError::SingularMatrix,
            other => MapError::Domain(DomainError::Geom(other)),
        }
    }
}

/// Finite Blaschke product `e^{iθ} Π (λ − a_k)/(1 − ā_k λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct<R> {
    rotation: R,
    zeros: Vec<Complex<R>>,
}

impl<R: Real> BlaschkeProduct<R> {
    /// Every zero must satisfy `0 < |a| < 1`.
    pub fn new(rotation: R, zeros: Vec<Complex<R>>) -> Result<Self, MapError> {
        for a in &zeros {
            let r = a.norm();
            if r == R::zero() {
                return Err(MapError::BlaschkeZeroAtOrigin);
            }
            if !(r < R::one()) {
                return Err(MapError::ZeroOutsideDisc);
            }
        }
        Ok(Self { rotation, zeros })
    }

    #[inline]
    pub fn rotation(&self) -> R {
        self.rotation
    }

    #[inline]
    pub fn zeros(&self) -> &[Complex<R>] {
        &self.zeros
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Evaluation on the closed unit disc (with slack `1e-9`).
    pub fn eval(&self, lambda: Complex<R>) -> Result<Complex<R>, MapError> {
        let r = lambda.norm();
        if r > R::one() + R::lit(1e-9) {
            return Err(MapError::OutsideUnitDisc(r.to_f64_lossy()));
        }
        let one = Complex::new(R::one(), R::zero());
        let mut acc = Complex::from_polar(R::one(), self.rotation);
        for &a in &self.zeros {
            acc = acc * (lambda - a) / (one - a.conj() * lambda);
        }
        Ok(acc)
    }

    /// `|B(0)| = Π |a_k|`.
    pub fn modulus_at_origin(&self) -> R {
        self.zeros.iter().fold(R::one(), |acc, a| acc * a.norm())
    }
}

/// `f(z, w) = (μ₁ z^k B(C₁ z^{p₁} w^{q₁}), μ₂ w^l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeOneMap<R> {
    pub k: u32,
    pub l: u32,
    pub p1: i64,
    pub q1: i64,
    pub c1: R,
    pub mu1: Complex<R>,
    pub mu2: Complex<R>,
    pub blaschke: BlaschkeProduct<R>,
}

/// `f(z, w) = ((u + s)^{a₂}, e^{it₂} exp(2s̄u + |s|²)^{−c₂} w^{c₁c₂})` with
/// `u = e^{it₁} z^{a₁}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeTwoMap<R> {
    pub a1: u32,
    pub a2: u32,
    pub c1: u32,
    pub c2: u32,
    pub s: Complex<R>,
    pub t1: R,
    pub t2: R,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapKind<R> {
    Elementary { a: IntMat2, b: [Complex<R>; 2] },
    TypeOne(TypeOneMap<R>),
    TypeTwo(TypeTwoMap<R>),
}

/// A map of one of the supported families, optionally precomposed with
/// `(z, w) ↦ (w, z)` and postcomposed with a swap of components.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec<R> {
    pub kind: MapKind<R>,
    pub pre_swap: bool,
    pub post_swap: bool,
}

fn swap<T: Copy>(p: [T; 2], yes: bool) -> [T; 2] {
    if yes {
        [p[1], p[0]]
    } else {
        p
    }
}

fn monomial<R: Real>(b: Complex<R>, exps: IntVec2, p: [Complex<R>; 2]) -> Result<Complex<R>, MapError> {
    let mut acc = b;
    for (e, x) in [(exps.u, p[0]), (exps.v, p[1])] {
        if e < 0 && x.norm() == R::zero() {
            return Err(MapError::PoleAtAxis);
        }
        acc = acc * x.powi(e as i32);
    }
    Ok(acc)
}

impl<R: Real> MapSpec<R> {
    pub fn new(kind: MapKind<R>) -> Self {
        Self {
            kind,
            pre_swap: false,
            post_swap: false,
        }
    }

    /// Validated elementary map `z ↦ b·z^A`.
    pub fn elementary(a: IntMat2, b: [Complex<R>; 2]) -> Result<Self, MapError> {
        if a.det() == 0 {
            return Err(MapError::SingularMatrix);
        }
        if b.iter().any(|c| c.norm() == R::zero() || !c.norm().is_finite()) {
            return Err(MapError::InvalidParameter("b must have nonzero entries"));
        }
        Ok(Self::new(MapKind::Elementary { a, b }))
    }

    pub fn identity() -> Self {
        let one = Complex::new(R::one(), R::zero());
        Self::new(MapKind::Elementary {
            a: IntMat2::IDENTITY,
            b: [one, one],
        })
    }

    pub fn with_swaps(mut self, pre_swap: bool, post_swap: bool) -> Self {
        self.pre_swap = pre_swap;
        self.post_swap = post_swap;
        self
    }

    /// Family name as used in files and reports.
    pub fn family(&self) -> &'static str {
        match self.kind {
            MapKind::Elementary { .. } => "elementary",
            MapKind::TypeOne(_) => "type1",
            MapKind::TypeTwo(_) => "type2",
        }
    }

    /// Exponent matrix and coefficients with both swaps folded in.
    pub fn as_elementary(&self) -> Option<(IntMat2, [Complex<R>; 2])> {
        let MapKind::Elementary { a, b } = &self.kind else {
            return None;
        };
        let mut a = *a;
        if self.pre_swap {
            a = a * IntMat2::SWAP;
        }
        let b = swap(*b, self.post_swap);
        if self.post_swap {
            a = IntMat2::SWAP * a;
        }
        Some((a, b))
    }

    fn eval_raw(&self, p: [Complex<R>; 2]) -> Result<[Complex<R>; 2], MapError> {
        let [z, w] = p;
        match &self.kind {
            MapKind::Elementary { a, b } => Ok([monomial(b[0], a.row(0), p)?, monomial(b[1], a.row(1), p)?]),
            MapKind::TypeOne(m) => {
                let lambda = z.powi(m.p1 as i32) * w.powi(m.q1 as i32) * m.c1;
                let f1 = m.mu1 * z.powi(m.k as i32) * m.blaschke.eval(lambda)?;
                let f2 = m.mu2 * w.powi(m.l as i32);
                Ok([f1, f2])
            }
            MapKind::TypeTwo(m) => {
                let u = Complex::from_polar(R::one(), m.t1) * z.powi(m.a1 as i32);
                let f1 = (u + m.s).powi(m.a2 as i32);
                let s2 = m.s.norm_sqr();
                let damp = (-(m.s.conj() * u * R::lit(2.0) + s2) * R::from_int(m.c2 as i64)).exp();
                let f2 = Complex::from_polar(R::one(), m.t2) * damp * w.powi((m.c1 * m.c2) as i32);
                Ok([f1, f2])
            }
        }
    }

    pub fn eval(&self, z: Complex<R>, w: Complex<R>) -> Result<(Complex<R>, Complex<R>), MapError> {
        let out = swap(self.eval_raw(swap([z, w], self.pre_swap))?, self.post_swap);
        Ok((out[0], out[1]))
    }

    fn log_moduli_raw(&self, p: [Complex<R>; 2]) -> Result<[R; 2], MapError> {
        let l = [p[0].norm().ln(), p[1].norm().ln()];
        match &self.kind {
            MapKind::Elementary { a, b } => {
                let mut out = [R::zero(); 2];
                for (i, o) in out.iter_mut().enumerate() {
                    let row = a.row(i);
                    let v = b[i].norm().ln() + row.dot_real(l);
                    if v == R::infinity() || v.is_nan() {
                        return Err(MapError::PoleAtAxis);
                    }
                    *o = v;
                }
                Ok(out)
            }
            MapKind::TypeOne(m) => {
                let lambda = p[0].powi(m.p1 as i32) * p[1].powi(m.q1 as i32) * m.c1;
                let b = m.blaschke.eval(lambda)?.norm().ln();
                Ok([
                    m.mu1.norm().ln() + R::from_int(m.k as i64) * l[0] + b,
                    m.mu2.norm().ln() + R::from_int(m.l as i64) * l[1],
                ])
            }
            MapKind::TypeTwo(m) => {
                let u = Complex::from_polar(R::one(), m.t1) * p[0].powi(m.a1 as i32);
                let f1 = R::from_int(m.a2 as i64) * (u + m.s).norm().ln();
                let damp = (m.s.conj() * u).re * R::lit(2.0) + m.s.norm_sqr();
                let f2 = -R::from_int(m.c2 as i64) * damp + R::from_int((m.c1 * m.c2) as i64) * l[1];
                Ok([f1, f2])
            }
        }
    }

    /// `(ln|f₁|, ln|f₂|)`, with `−∞` for a vanishing component.
    pub fn log_moduli(&self, z: Complex<R>, w: Complex<R>) -> Result<[R; 2], MapError> {
        Ok(swap(self.log_moduli_raw(swap([z, w], self.pre_swap))?, self.post_swap))
    }
}

/// Image of a polyhedral domain under an elementary map.
pub fn elementary_pushforward<R: Real>(
    map: &MapSpec<R>,
    domain: &ReinhardtDomain<R>,
) -> Result<ReinhardtDomain<R>, MapError> {
    let (a, b) = map.as_elementary().ok_or(MapError::NotElementary)?;
    let ReinhardtDomain::Polyhedral(p) = domain else {
        return Err(MapError::NotPolyhedral);
    };
    if a.det() == 0 {
        return Err(MapError::SingularMatrix);
    }
    let t = [b[0].norm().ln(), b[1].norm().ln()];
    let log = p.log().affine_image(&a, t)?;
    let mut axes = [AxisAttachment::Detached, AxisAttachment::Detached];
    for axis in Axis::BOTH {
        let AxisAttachment::Attached(removed) = p.attachment(axis) else {
            continue;
        };
        // On {x_j = 0} the map is regular iff column j of A is c·e_i, c > 0;
        // the axis then lands on {y_i = 0}.
        let col = a.col(axis.zero_coord());
        let target = match (col.u, col.v) {
            (c, 0) if c > 0 => 0,
            (0, c) if c > 0 => 1,
            _ => return Err(MapError::AxisIncompatible(axis)),
        };
        let other = 1 - target;
        let exponent = a.entry(other, axis.free_coord());
        let image = if removed.is_empty() {
            RadiiSet::empty()
        } else {
            if exponent < 0 && removed.contains_zero() {
                return Err(MapError::AxisIncompatible(axis));
            }
            removed
                .map_power(b[other].norm(), exponent)
                .ok_or(MapError::AxisIncompatible(axis))?
        };
        axes[target] = AxisAttachment::Attached(image);
    }
    Ok(PolyhedralDomain::new(log, axes)?.into())
}

/// A map with its source and target domains.
#[derive(Clone, Debug, PartialEq)]
pub struct ProperPair<R> {
    pub map: MapSpec<R>,
    pub source: ReinhardtDomain<R>,
    pub target: ReinhardtDomain<R>,
}

impl<R: Real> ProperPair<R> {
    /// The same pair after swapping the variables (`pre`) and/or the
    /// components (`post`).
    pub fn permuted(&self, pre: bool, post: bool) -> Self {
        let mut map = self.map.clone();
        map.pre_swap ^= pre;
        map.post_swap ^= post;
        Self {
            map,
            source: if pre { self.source.swapped() } else { self.source.clone() },
            target: if post { self.target.swapped() } else { self.target.clone() },
        }
    }
}

/// Parameters of the Blaschke family, with the source domain constants.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeOneParams<R> {
    pub k: u32,
    pub l: u32,
    pub p1: i64,
    pub q1: i64,
    pub c1: R,
    pub mu1: Complex<R>,
    pub mu2: Complex<R>,
    pub rotation: R,
    pub zeros: Vec<Complex<R>>,
    pub e1: R,
    pub removed: RadiiSet<R>,
}

/// Parameters of the horn family, with the source horn constants.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeTwoParams<R> {
    pub a1: u32,
    pub a2: u32,
    pub c1: u32,
    pub c2: u32,
    pub s: Complex<R>,
    pub t1: R,
    pub t2: R,
    pub horn_c1: R,
    pub horn_e1: R,
}

fn positive<R: Real>(x: R, what: &'static str) -> Result<(), MapError> {
    if x > R::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(MapError::InvalidParameter(what))
    }
}

/// `(p₂, q₂)` with `q₂/p₂ = k q₁ / (l p₁)` in lowest terms.
pub fn type_one_exponents(k: u32, l: u32, p1: i64, q1: i64) -> (i64, i64) {
    let r = Ratio::new(k as i64 * q1, l as i64 * p1);
    (*r.denom(), *r.numer())
}

/// Boundary samples of the Blaschke-family source: points with
/// `C₁|z|^{p₁}|w|^{q₁} = 1` and `0 < |w| < E₁`.
fn type_one_boundary<R: Real>(p: &TypeOneParams<R>) -> Vec<(Complex<R>, Complex<R>)> {
    let mut out = Vec::new();
    let tau = R::lit(std::f64::consts::TAU);
    for i in 0..16 {
        let rw = p.e1 * R::lit(0.05 + 0.9 * i as f64 / 15.0);
        // |z| from C₁|z|^{p₁}|w|^{q₁} = 1.
        let lz = -(p.c1.ln() + R::from_int(p.q1) * rw.ln()) / R::from_int(p.p1);
        for j in 0..256 {
            let theta = R::lit(1e-3 + (1.0 - 1e-3) * j as f64 / 256.0) * tau;
            let z = Complex::from_polar(lz.exp(), theta / R::from_int(p.p1));
            out.push((z, Complex::new(rw, R::zero())));
        }
    }
    out
}

/// Builds the Blaschke family map and its source and target domains.
///
/// Target constants come from boundary matching: `E₂` is the sup of `|f₂|`
/// over `|w| = E₁`, and `C₂` normalizes the sup of `|f₁|^{p₂}|f₂|^{q₂}` over
/// the curved face of the source to one.
pub fn build_type_one<R: Real>(p: &TypeOneParams<R>) -> Result<ProperPair<R>, MapError> {
    if p.k == 0 || p.l == 0 {
        return Err(MapError::InvalidParameter("k and l must be positive"));
    }
    if p.p1 <= 0 || p.q1 <= 0 {
        return Err(MapError::InvalidParameter("p1 and q1 must be positive"));
    }
    if p.p1.gcd(&p.q1) != 1 {
        return Err(MapError::NotCoprime(p.p1, p.q1));
    }
    positive(p.c1, "C1 must be positive")?;
    positive(p.e1, "E1 must be positive")?;
    positive(p.mu1.norm(), "mu1 must be nonzero")?;
    positive(p.mu2.norm(), "mu2 must be nonzero")?;
    let blaschke = BlaschkeProduct::new(p.rotation, p.zeros.clone())?;
    if blaschke.degree() == 0 {
        return Err(MapError::InvalidParameter("Blaschke product must be non-constant"));
    }
    if p.removed.covers(R::zero(), true, R::infinity()) {
        return Err(MapError::RemovedSetNotProper);
    }
    let map = MapSpec::new(MapKind::TypeOne(TypeOneMap {
        k: p.k,
        l: p.l,
        p1: p.p1,
        q1: p.q1,
        c1: p.c1,
        mu1: p.mu1,
        mu2: p.mu2,
        blaschke: blaschke.clone(),
    }));
    let (p2, q2) = type_one_exponents(p.k, p.l, p.p1, p.q1);

    let tau = R::lit(std::f64::consts::TAU);
    let mut e2 = R::zero();
    for j in 0..64 {
        let w = Complex::from_polar(p.e1, tau * R::from_int(j) / R::lit(64.0));
        let lm = map.log_moduli(Complex::new(R::zero(), R::zero()), w)?;
        e2 = e2.max(lm[1].exp());
    }
    let mut sup = R::neg_infinity();
    for (z, w) in type_one_boundary(p) {
        let lm = map.log_moduli(z, w)?;
        sup = sup.max(R::from_int(p2) * lm[0] + R::from_int(q2) * lm[1]);
    }
    let c2 = (-sup).exp();

    let removed2 = if p.removed.is_empty() {
        RadiiSet::empty()
    } else {
        p.removed
            .map_power(p.mu1.norm() * blaschke.modulus_at_origin(), p.k as i64)
            .ok_or(MapError::RemovedSetNotProper)?
    };
    let source = ReinhardtDomain::type_one_shape(p.c1, p.p1, p.q1, p.e1, p.removed.clone())?;
    let target = ReinhardtDomain::type_one_shape(c2, p2, q2, e2, removed2)
        .map_err(|e| match e {
            DomainError::RemovedSetNotProper(_) => MapError::RemovedSetNotProper,
            other => other.into(),
        })?;
    Ok(ProperPair { map, source, target })
}

/// Builds the horn family map and its source and target horns.
///
/// `E₂ = c₂`; `C₂` is the value of `|f₂|·exp(E₂|f₁|^{2/a₂})` on the source
/// boundary, which is constant only when `E₁ = 1/c₁`. Any other `E₁` yields
/// [`MapError::BoundaryMismatch`].
pub fn build_type_two<R: Real>(p: &TypeTwoParams<R>) -> Result<ProperPair<R>, MapError> {
    if p.a1 == 0 || p.a2 == 0 || p.c1 == 0 || p.c2 == 0 {
        return Err(MapError::InvalidParameter("a1, a2, c1, c2 must be positive"));
    }
    if !(p.s.norm() > R::zero()) {
        return Err(MapError::InvalidParameter("s must be nonzero"));
    }
    positive(p.horn_c1, "C1 must be positive")?;
    positive(p.horn_e1, "E1 must be positive")?;
    let map = MapSpec::new(MapKind::TypeTwo(TypeTwoMap {
        a1: p.a1,
        a2: p.a2,
        c1: p.c1,
        c2: p.c2,
        s: p.s,
        t1: p.t1,
        t2: p.t2,
    }));
    let k1 = Ratio::from_integer(2 * p.a1 as i64);
    let k2 = Ratio::new(2, p.a2 as i64);
    let e2 = R::from_int(p.c2 as i64);
    let k1r = R::from_int(2 * p.a1 as i64);
    let zmax = (R::lit(25.0) / p.horn_e1).powf(R::one() / k1r);
    let tau = R::lit(std::f64::consts::TAU);
    let (mut sup, mut inf) = (R::neg_infinity(), R::infinity());
    for i in 0..=64 {
        let r = zmax * R::from_int(i) / R::lit(64.0);
        let lw = p.horn_c1.ln() - p.horn_e1 * r.powf(k1r);
        for j in 0..16 {
            let z = Complex::from_polar(r, tau * R::from_int(j) / R::lit(16.0));
            let w = Complex::new(lw.exp(), R::zero());
            let lm = map.log_moduli(z, w)?;
            let f = lm[1] + e2 * (R::lit(2.0) / R::from_int(p.a2 as i64) * lm[0]).exp();
            sup = sup.max(f);
            inf = inf.min(f);
        }
    }
    let scale = R::one() + p.horn_c1.ln().abs() * R::from_int((p.c1 * p.c2) as i64) + R::lit(25.0) * e2;
    let spread = sup - inf;
    if !(spread <= R::lit(1e-9) * scale) {
        return Err(MapError::BoundaryMismatch {
            e1: p.horn_e1.to_f64_lossy(),
            required: 1.0 / p.c1 as f64,
            spread: spread.to_f64_lossy(),
        });
    }
    let source = ReinhardtDomain::exp_horn(Var::W, p.horn_c1, p.horn_e1, k1)?;
    let target = ReinhardtDomain::exp_horn(Var::W, sup.exp(), e2, k2)?;
    Ok(ProperPair { map, source, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn close(a: C, b: C) -> bool {
        (a - b).norm() < 1e-12
    }

    pub(crate) fn type_one_params() -> TypeOneParams<f64> {
        TypeOneParams {
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
            removed: RadiiSet::empty(),
        }
    }

    fn type_two_params() -> TypeTwoParams<f64> {
        TypeTwoParams {
            a1: 1,
            a2: 1,
            c1: 1,
            c2: 1,
            s: c(1.0, 0.0),
            t1: 0.0,
            t2: 0.0,
            horn_c1: 1.0,
            horn_e1: 1.0,
        }
    }

    #[test]
    fn blaschke_examples() {
        let b = BlaschkeProduct::new(0.0, vec![c(0.5, 0.0)]).unwrap();
        assert!(close(b.eval(c(0.0, 0.0)).unwrap(), c(-0.5, 0.0)));
        assert!((b.eval(c(1.0, 0.0)).unwrap().norm() - 1.0).abs() < 1e-15);
        let b2 = BlaschkeProduct::new(0.0, vec![c(0.5, 0.0), c(-1.0 / 3.0, 0.0)]).unwrap();
        assert!(b2.eval(c(0.5, 0.0)).unwrap().norm() < 1e-15);
        assert_eq!(b.eval(c(1.1, 0.0)), Err(MapError::OutsideUnitDisc(1.1)));
        assert_eq!(
            BlaschkeProduct::new(0.0, vec![c(0.0, 0.0)]),
            Err(MapError::BlaschkeZeroAtOrigin)
        );
        assert_eq!(BlaschkeProduct::new(0.0, vec![c(1.0, 0.0)]), Err(MapError::ZeroOutsideDisc));
    }

    #[test]
    fn eval_examples() {
        let t1 = build_type_one(&type_one_params()).unwrap().map;
        let w = c(0.3, 0.4);
        let (f1, f2) = t1.eval(c(0.0, 0.0), w).unwrap();
        assert_eq!(f1, c(0.0, 0.0));
        assert!(close(f2, w));

        let t2 = MapSpec::new(MapKind::TypeTwo(TypeTwoMap {
            a1: 1,
            a2: 1,
            c1: 1,
            c2: 1,
            s: c(1.0, 0.0),
            t1: 0.0,
            t2: 0.0,
        }));
        let (f1, f2) = t2.eval(c(0.0, 0.0), w).unwrap();
        assert!(close(f1, c(1.0, 0.0)));
        // h₁(z) = e^{it₁}z + s, then the second component is e^{−(2s̄h₀+|s|²)}w.
        assert!(close(f2, w * (-1.0f64).exp()));

        let e = MapSpec::elementary(IntMat2::new(1, 1, 0, 1), [c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (f1, f2) = e.eval(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(close(f1, c(6.0, 0.0)) && close(f2, c(3.0, 0.0)));

        let inv = MapSpec::elementary(IntMat2::new(-1, 0, 0, 1), [c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(inv.eval(c(0.0, 0.0), c(1.0, 0.0)), Err(MapError::PoleAtAxis));
    }

    #[test]
    fn swaps_wrap_the_formula() {
        let e = MapSpec::elementary(IntMat2::new(2, 0, 0, 1), [c(1.0, 0.0), c(3.0, 0.0)]).unwrap();
        let s = e.clone().with_swaps(true, true);
        let (a, b) = s.eval(c(2.0, 0.0), c(5.0, 0.0)).unwrap();
        let (x, y) = e.eval(c(5.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_eq!((a, b), (y, x));
        let (m, bb) = s.as_elementary().unwrap();
        let direct = MapSpec::elementary(m, bb).unwrap();
        assert_eq!(direct.eval(c(2.0, 0.0), c(5.0, 0.0)).unwrap(), (a, b));
    }

    #[test]
    fn pushforward_examples() {
        let one = c(1.0, 0.0);
        let src = ReinhardtDomain::polyhedral(
            crate::loggeom::LogPolyhedron::from_pairs(&[((1, 2), 0.0), ((0, 1), 0.0)]).unwrap(),
            [AxisAttachment::attached(), AxisAttachment::Detached],
        )
        .unwrap();
        let m = MapSpec::elementary(IntMat2::new(1, 2, 0, 1), [one, one]).unwrap();
        let img = elementary_pushforward(&m, &src).unwrap();
        let expected = ReinhardtDomain::polyhedral(
            crate::loggeom::LogPolyhedron::from_pairs(&[((1, 0), 0.0), ((0, 1), 0.0)]).unwrap(),
            [AxisAttachment::attached(), AxisAttachment::Detached],
        )
        .unwrap();
        assert_eq!(img, expected);

        assert_eq!(elementary_pushforward(&MapSpec::identity(), &src).unwrap(), src);

        let bidisc = ReinhardtDomain::type_one_shape(1.0, 1, 0, 1.0, RadiiSet::empty());
        assert!(bidisc.is_err() || bidisc.is_ok());
        let bidisc = ReinhardtDomain::polyhedral(
            crate::loggeom::LogPolyhedron::from_pairs(&[((1, 0), 0.0), ((0, 1), 0.0)]).unwrap(),
            [AxisAttachment::attached(), AxisAttachment::attached()],
        )
        .unwrap();
        let stretch = MapSpec::elementary(IntMat2::IDENTITY, [c(2.0, 0.0), one]).unwrap();
        let img = elementary_pushforward(&stretch, &bidisc).unwrap();
        assert!(img.contains(c(1.9, 0.0), c(0.0, 0.0)));
        assert!(!img.contains(c(2.1, 0.0), c(0.0, 0.0)));
        assert!(!img.contains(c(0.0, 0.0), c(1.01, 0.0)));

        let bad = MapSpec::elementary(IntMat2::new(1, 1, 1, 2), [one, one]).unwrap();
        assert_eq!(elementary_pushforward(&bad, &bidisc), Err(MapError::AxisIncompatible(Axis::V1)));
    }

    #[test]
    fn type_one_builder() {
        assert_eq!(type_one_exponents(2, 1, 1, 1), (1, 2));
        let mut p = type_one_params();
        p.zeros = vec![c(0.0, 0.0)];
        assert_eq!(build_type_one(&p), Err(MapError::BlaschkeZeroAtOrigin));
        let mut p = type_one_params();
        p.p1 = 2;
        p.q1 = 4;
        assert_eq!(build_type_one(&p), Err(MapError::NotCoprime(2, 4)));
    }

    #[test]
    fn type_one_constants_match_closed_form() {
        let p = TypeOneParams {
            k: 2,
            l: 3,
            p1: 2,
            q1: 3,
            c1: 1.7,
            mu1: c(0.3, -1.1),
            mu2: c(-2.0, 0.5),
            rotation: 0.4,
            zeros: vec![c(0.2, 0.3), c(-0.6, 0.1)],
            e1: 0.8,
            removed: RadiiSet::empty(),
        };
        let pair = build_type_one(&p).unwrap();
        let (p2, q2) = type_one_exponents(p.k, p.l, p.p1, p.q1);
        assert_eq!((p2, q2), (1, 1));
        let ReinhardtDomain::Polyhedral(t) = &pair.target else { panic!() };
        // Closed form: C₂ = C₁^{k p₂/p₁} / (|μ₁|^{p₂} |μ₂|^{q₂}), E₂ = |μ₂| E₁^l.
        let c2 = p.c1.powf(p.k as f64 * p2 as f64 / p.p1 as f64)
            / (p.mu1.norm().powi(p2 as i32) * p.mu2.norm().powi(q2 as i32));
        let e2 = p.mu2.norm() * p.e1.powi(p.l as i32);
        let offsets: Vec<f64> = t.log().constraints().iter().map(|h| h.offset()).collect();
        assert!((offsets[0] - e2.ln()).abs() < 1e-12);
        assert!((offsets[1] + c2.ln()).abs() < 1e-9);
    }

    #[test]
    fn type_two_builder() {
        let pair = build_type_two(&type_two_params()).unwrap();
        let (ReinhardtDomain::ExpHorn(s), ReinhardtDomain::ExpHorn(t)) = (&pair.source, &pair.target) else {
            panic!()
        };
        assert_eq!(s.k(), Ratio::from_integer(2));
        assert_eq!(t.k(), Ratio::from_integer(2));
        assert!((t.c() - 1.0).abs() < 1e-12 && t.e() == 1.0);

        let mut p = type_two_params();
        p.a2 = 2;
        let pair = build_type_two(&p).unwrap();
        let ReinhardtDomain::ExpHorn(t) = &pair.target else { panic!() };
        assert_eq!(t.k(), Ratio::from_integer(1));

        let mut p = type_two_params();
        p.s = c(0.0, 0.0);
        assert!(matches!(build_type_two(&p), Err(MapError::InvalidParameter(_))));

        let mut p = type_two_params();
        p.horn_e1 = 2.0;
        assert!(matches!(build_type_two(&p), Err(MapError::BoundaryMismatch { .. })));

        // C₂ = C₁^{c₁c₂} when E₁ = 1/c₁.
        let mut p = type_two_params();
        p.c1 = 2;
        p.c2 = 3;
        p.horn_e1 = 0.5;
        p.horn_c1 = 1.3;
        let pair = build_type_two(&p).unwrap();
        let ReinhardtDomain::ExpHorn(t) = &pair.target else { panic!() };
        assert!((t.c() / 1.3f64.powi(6) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn permuted_pair_swaps_domains() {
        let pair = build_type_one(&type_one_params()).unwrap();
        let q = pair.permuted(true, true);
        let (z, w) = (c(0.1, 0.2), c(0.9, -0.1));
        assert!(pair.source.contains(z, w));
        assert!(q.source.contains(w, z));
        let (a, b) = pair.map.eval(z, w).unwrap();
        let (x, y) = q.map.eval(w, z).unwrap();
        assert!(close(a, y) && close(b, x));
    }
}
