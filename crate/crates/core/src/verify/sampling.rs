//! Deterministic point sampling inside a domain.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::domains::{Axis, ExpHornDomain, PolyhedralDomain, ReinhardtDomain};
use crate::loggeom::Face;
use crate::scalar::Real;

/// Half-width of the log box sampled around the interior point.
const LOG_BOX: f64 = 6.0;

pub type Point<R> = [Complex<R>; 2];

/// Draws points of a domain: a log-uniform box around an interior point,
/// points close to each face, axis points and points next to removed radii.
/// Every candidate is membership-checked.
pub struct DomainSampler<'a, R> {
    domain: &'a ReinhardtDomain<R>,
    rng: ChaCha8Rng,
}

fn polar<R: Real>(lr: R, theta: f64) -> Complex<R> {
    if lr == R::neg_infinity() {
        Complex::new(R::zero(), R::zero())
    } else {
        Complex::from_polar(lr.exp(), R::lit(theta))
    }
}

impl<'a, R: Real> DomainSampler<'a, R> {
    pub fn new(domain: &'a ReinhardtDomain<R>, seed: u64) -> Self {
        Self {
            domain,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn angle(&mut self) -> f64 {
        self.rng.gen_range(0.0..std::f64::consts::TAU)
    }

    /// `10^{−U(1,12)}`.
    fn small(&mut self) -> f64 {
        10f64.powf(-self.rng.gen_range(1.0..12.0))
    }

    fn from_log(&mut self, l: [R; 2]) -> Point<R> {
        let (a, b) = (self.angle(), self.angle());
        [polar(l[0], a), polar(l[1], b)]
    }

    /// Samples `n` points (fewer only if the domain defeats every scheme).
    pub fn sample(&mut self, n: usize) -> Vec<Point<R>> {
        let mut out = Vec::with_capacity(n);
        let mut attempts = 0usize;
        while out.len() < n && attempts < 50 * n + 1000 {
            let scheme = attempts % 8;
            attempts += 1;
            let cand = match self.domain {
                ReinhardtDomain::Polyhedral(p) => self.polyhedral(p, scheme),
                ReinhardtDomain::ExpHorn(h) => self.horn(h, scheme),
            };
            if let Some(l) = cand {
                if self.domain.contains_log(l) {
                    let pt = self.from_log(l);
                    out.push(pt);
                }
            }
        }
        out
    }

    fn box_point(&mut self, center: [R; 2]) -> [R; 2] {
        let dx = self.rng.gen_range(-LOG_BOX..LOG_BOX);
        let dy = self.rng.gen_range(-LOG_BOX..LOG_BOX);
        [center[0] + R::lit(dx), center[1] + R::lit(dy)]
    }

    fn near_face(&mut self, face: &Face<R>, x0: [R; 2]) -> [R; 2] {
        let t0 = face.parameter_of(x0);
        let lo = face.interval.lo.max(t0 - R::lit(LOG_BOX));
        let hi = face.interval.hi.min(t0 + R::lit(LOG_BOX));
        let u = R::lit(self.rng.gen_range(0.0..1.0));
        let t = lo + (hi - lo) * u;
        let p = face.point(t);
        let d = R::lit(self.small());
        [p[0] + d * (x0[0] - p[0]), p[1] + d * (x0[1] - p[1])]
    }

    /// A log-radius in `(lo, hi)` clipped to `center ± LOG_BOX`, biased toward
    /// the ends half of the time.
    fn radius_in(&mut self, lo: R, hi: R, center: R) -> R {
        let a = lo.max(center - R::lit(LOG_BOX));
        let b = hi.min(center + R::lit(LOG_BOX));
        if !(a < b) {
            return center;
        }
        match self.rng.gen_range(0..4) {
            0 if hi.is_finite() => hi - (b - a) * R::lit(self.small()),
            1 if lo.is_finite() => lo + (b - a) * R::lit(self.small()),
            _ => a + (b - a) * R::lit(self.rng.gen_range(0.0..1.0)),
        }
    }

    fn axis_point(&mut self, axis: Axis, lo: R, hi: R, center: R) -> [R; 2] {
        let mut l = [R::neg_infinity(); 2];
        l[axis.free_coord()] = self.radius_in(lo, hi, center);
        l
    }

    fn removed_adjacent(&mut self, axis: Axis) -> Option<[R; 2]> {
        let att = self.domain.attachment(axis);
        let removed = att.removed()?;
        if removed.is_empty() {
            return None;
        }
        let iv = removed.intervals();
        let (lo, hi) = iv[self.rng.gen_range(0..iv.len())];
        let d = R::lit(self.small());
        let r = if self.rng.gen_bool(0.5) && lo > R::zero() {
            lo * (R::one() - d)
        } else {
            hi * (R::one() + d)
        };
        let mut l = [R::neg_infinity(); 2];
        l[axis.free_coord()] = r.ln();
        Some(l)
    }

    fn polyhedral(&mut self, p: &PolyhedralDomain<R>, scheme: usize) -> Option<[R; 2]> {
        let x0 = p.log().interior_point();
        match scheme {
            4 | 5 if !p.log().constraints().is_empty() => {
                let i = self.rng.gen_range(0..p.log().constraints().len());
                let face = p.log().face(i)?;
                Some(self.near_face(&face, x0))
            }
            6 => {
                let axis = if self.rng.gen_bool(0.5) { Axis::V1 } else { Axis::V2 };
                if !p.attachment(axis).is_attached() {
                    return None;
                }
                let range = p.log().projection(axis.free_coord())?;
                Some(self.axis_point(axis, range.lo, range.hi, x0[axis.free_coord()]))
            }
            7 => {
                let axis = if self.rng.gen_bool(0.5) { Axis::V1 } else { Axis::V2 };
                self.removed_adjacent(axis)
            }
            _ => Some(self.box_point(x0)),
        }
    }

    fn horn(&mut self, h: &ExpHornDomain<R>, scheme: usize) -> Option<[R; 2]> {
        let bi = h.bounded().index();
        let ai = 1 - bi;
        let k = h.k_real();
        // Beyond |a| = zmax the admissible |b| is below C·e^{−25}.
        let lzmax = (R::lit(25.0) / h.e()).ln() / k;
        let la = lzmax - R::lit(self.rng.gen_range(0.0..12.0));
        let bound = h.c().ln() - h.e() * (k * la).exp();
        let mut l = [R::zero(); 2];
        l[ai] = la;
        match scheme {
            0..=2 => l[bi] = bound - R::lit(self.small()),
            3..=5 => l[bi] = bound - R::lit(self.rng.gen_range(0.0..10.0)),
            6 => {
                let axis = if self.rng.gen_bool(0.5) {
                    h.unbounded_axis()
                } else {
                    h.unbounded_axis().other()
                };
                let mut p = [R::neg_infinity(); 2];
                if axis == h.unbounded_axis() {
                    p[ai] = lzmax + R::lit(self.rng.gen_range(-12.0..4.0));
                } else {
                    p[bi] = h.c().ln() - R::lit(self.rng.gen_range(0.0..1.0)).max(R::lit(self.small()));
                }
                return Some(p);
            }
            _ => return self.removed_adjacent(h.unbounded_axis()),
        }
        Some(l)
    }
}

/// `n` sample points of `domain` from the given seed.
pub fn sample_domain<R: Real>(domain: &ReinhardtDomain<R>, n: usize, seed: u64) -> Vec<Point<R>> {
    DomainSampler::new(domain, seed).sample(n)
}
