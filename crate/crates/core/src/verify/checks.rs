//! Necessary conditions for properness, checked on samples.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domains::{Axis, InvariantTuple, ReinhardtDomain};
use crate::maps::{MapError, MapSpec, ProperPair};
use crate::scalar::Real;

use super::exhaustion::{in_compact, EPSILONS};
use super::sampling::{sample_domain, Point};

/// A holomorphic map `C² → C²` that can be checked.
pub trait PairMap<R: Real> {
    fn apply(&self, z: Complex<R>, w: Complex<R>) -> Result<Point<R>, MapError>;

    /// `(ln|f₁|, ln|f₂|)`.
    fn log_moduli(&self, z: Complex<R>, w: Complex<R>) -> Result<[R; 2], MapError> {
        let [a, b] = self.apply(z, w)?;
        Ok([a.norm().ln(), b.norm().ln()])
    }
}

impl<R: Real> PairMap<R> for MapSpec<R> {
    fn apply(&self, z: Complex<R>, w: Complex<R>) -> Result<Point<R>, MapError> {
        self.eval(z, w).map(|(a, b)| [a, b])
    }

    fn log_moduli(&self, z: Complex<R>, w: Complex<R>) -> Result<[R; 2], MapError> {
        MapSpec::log_moduli(self, z, w)
    }
}

/// `ζ ↦ ζ + 1/ζ` on the selected coordinates, identity on the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoukowskiProduct {
    pub on: [bool; 2],
}

impl<R: Real> PairMap<R> for JoukowskiProduct {
    fn apply(&self, z: Complex<R>, w: Complex<R>) -> Result<Point<R>, MapError> {
        let mut out = [z, w];
        for (i, x) in out.iter_mut().enumerate() {
            if self.on[i] {
                if x.norm() == R::zero() {
                    return Err(MapError::PoleAtAxis);
                }
                *x = *x + x.inv();
            }
        }
        Ok(out)
    }
}

/// Wraps a closure as a [`PairMap`].
pub struct FnMap<F>(pub F);

impl<R: Real, F> PairMap<R> for FnMap<F>
where
    F: Fn(Complex<R>, Complex<R>) -> Point<R>,
{
    fn apply(&self, z: Complex<R>, w: Complex<R>) -> Result<Point<R>, MapError> {
        Ok((self.0)(z, w))
    }
}

/// Sample sizes, tolerance and seed for a verification run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub sequences: usize,
    pub axis_samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            sequences: 64,
            axis_samples: 1000,
            tol: 1e-9,
            seed: 0x5EED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContainmentResult {
    pub samples: usize,
    pub violations: usize,
    /// Smallest target margin seen (negative means outside).
    pub worst_margin: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EscapeResult {
    pub sequences: usize,
    pub failures: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxisResult {
    pub samples: usize,
    pub failures: usize,
}

/// Outcome of all checks on a map and its domains. A pass means the samples
/// are consistent with properness; it is not a proof.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub containment: ContainmentResult,
    pub escape: EscapeResult,
    pub axis: AxisResult,
    pub invariant_src: InvariantTuple,
    pub invariant_dst: InvariantTuple,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.containment;
        writeln!(
            f,
            "containment: {} violations / {} samples (worst margin {:.6e})",
            c.violations, c.samples, c.worst_margin
        )?;
        writeln!(
            f,
            "boundary escape: {} failures / {} sequences",
            self.escape.failures, self.escape.sequences
        )?;
        writeln!(f, "axis mapping: {} failures / {} samples", self.axis.failures, self.axis.samples)?;
        writeln!(f, "invariants: source {} target {}", self.invariant_src, self.invariant_dst)?;
        match self.verdict {
            Verdict::Pass => write!(f, "verdict: pass (consistent with properness)"),
            Verdict::Fail => write!(f, "verdict: fail (not proper)"),
        }
    }
}

/// Images of source samples must lie in the target up to `tol` in log-radius.
pub fn check_containment<R: Real, M: PairMap<R> + ?Sized>(
    map: &M,
    source: &ReinhardtDomain<R>,
    target: &ReinhardtDomain<R>,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> ContainmentResult {
    let pts = sample_domain(source, n_samples, seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for [z, w] in &pts {
        let margin = match map.log_moduli(*z, *w) {
            Ok(l) => target.log_margin(l).to_f64_lossy(),
            Err(_) => f64::NEG_INFINITY,
        };
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        worst = worst.min(margin);
        if margin < -tol {
            violations += 1;
        }
    }
    ContainmentResult {
        samples: pts.len(),
        violations,
        worst_margin: worst,
    }
}

/// One family of boundary-approaching sequences.
#[derive(Clone, Debug)]
enum Stratum<R> {
    /// `x_k = p + 2^{−k}(x₀ − p)` toward a face point `p`.
    Toward { target: [R; 2] },
    /// `x_k = x₀ + k·ln2·g` along a direction with limit outside the domain.
    Direction { dir: [R; 2] },
    /// Points on an axis with free log-radius tending to `limit`.
    AlongAxis { axis: Axis, start: R, limit: R },
    /// Off-axis points tending to a boundary point on the axis.
    ToAxis { axis: Axis, lr: R },
    /// Horn points with the unbounded variable doubling each step.
    HornTail,
}

const SEQUENCE_LEN: usize = 32;

fn strata<R: Real>(d: &ReinhardtDomain<R>) -> Vec<Stratum<R>> {
    let ln2 = R::LN_2();
    let ninf = R::neg_infinity();
    let mut out = Vec::new();
    match d {
        ReinhardtDomain::Polyhedral(p) => {
            let log = p.log();
            let x0 = log.interior_point();
            for i in 0..log.constraints().len() {
                if let Some(face) = log.face(i) {
                    let t0 = face.parameter_of(x0);
                    let t = if face.interval.contains(t0) { t0 } else { face.interval.pick() };
                    out.push(Stratum::Toward { target: face.point(t) });
                }
            }
            let cone = log.recession_cone();
            let mut dirs: Vec<[i64; 2]> = match cone.lineality_dim() {
                2 => vec![[1, 0], [-1, 0], [0, 1], [0, -1]],
                _ => cone.generators().iter().map(|g| [g.u, g.v]).collect(),
            };
            if let Some(line) = cone.line_direction() {
                dirs.push([-line.u, -line.v]);
            }
            for g in dirs {
                // The limit has coordinate 0 where g < 0, ∞ where g > 0.
                let escapes_to_infinity = g.iter().any(|&c| c > 0);
                let limit = [
                    if g[0] < 0 { ninf } else { x0[0] },
                    if g[1] < 0 { ninf } else { x0[1] },
                ];
                if !escapes_to_infinity && d.contains_log(limit) {
                    continue;
                }
                out.push(Stratum::Direction {
                    dir: [R::from_int(g[0]) * ln2, R::from_int(g[1]) * ln2],
                });
            }
            for axis in Axis::BOTH {
                let slice = p.slice(axis);
                if slice.is_empty() {
                    continue;
                }
                let c = x0[axis.free_coord()];
                if let Some((lo, _, hi)) = slice.shape.radii_range() {
                    if hi.is_finite() {
                        out.push(Stratum::AlongAxis {
                            axis,
                            start: c.min(hi.ln() - R::one()),
                            limit: hi.ln(),
                        });
                    }
                    if slice.shape.is_punctured() && lo > R::zero() {
                        out.push(Stratum::AlongAxis {
                            axis,
                            start: c.max(lo.ln() + R::one()),
                            limit: lo.ln(),
                        });
                    }
                }
                push_removed(&mut out, axis, &slice.removed);
            }
        }
        ReinhardtDomain::ExpHorn(h) => {
            let bi = h.bounded().index();
            let k = h.k_real();
            for la in [-2.0, 0.0, 1.0] {
                let la = R::lit(la) + (R::one() / h.e()).ln() / k;
                let mut target = [R::zero(); 2];
                target[1 - bi] = la;
                target[bi] = h.c().ln() - h.e() * (k * la).exp();
                out.push(Stratum::Toward { target });
            }
            out.push(Stratum::HornTail);
            let disc_axis = h.unbounded_axis().other();
            out.push(Stratum::AlongAxis {
                axis: disc_axis,
                start: h.c().ln() - R::one(),
                limit: h.c().ln(),
            });
            match h.free_axis().removed() {
                Some(removed) => push_removed(&mut out, h.unbounded_axis(), removed),
                None => {
                    out.push(Stratum::ToAxis {
                        axis: h.unbounded_axis(),
                        lr: R::zero(),
                    });
                }
            }
        }
    }
    out
}

fn push_removed<R: Real>(out: &mut Vec<Stratum<R>>, axis: Axis, removed: &crate::domains::RadiiSet<R>) {
    for &(lo, hi) in removed.intervals() {
        let r = if lo == R::zero() { hi } else { (lo * hi).sqrt() };
        if r > R::zero() {
            out.push(Stratum::ToAxis { axis, lr: r.ln() });
        }
    }
}

fn sequence<R: Real>(d: &ReinhardtDomain<R>, s: &Stratum<R>, rng: &mut ChaCha8Rng) -> Vec<[R; 2]> {
    let x0 = match d {
        ReinhardtDomain::Polyhedral(p) => p.log().interior_point(),
        ReinhardtDomain::ExpHorn(h) => {
            let mut x = [R::zero(); 2];
            x[h.bounded().index()] = h.c().ln() - R::lit(2.0);
            x
        }
    };
    let jitter = R::lit(rng.gen_range(0.5..1.0));
    (1..=SEQUENCE_LEN)
        .map(|k| {
            let half = R::lit(0.5f64.powi(k as i32));
            match s {
                Stratum::Toward { target } => [
                    target[0] + half * jitter * (x0[0] - target[0]),
                    target[1] + half * jitter * (x0[1] - target[1]),
                ],
                Stratum::Direction { dir } => {
                    let t = R::from_int(k as i64);
                    [x0[0] + t * dir[0], x0[1] + t * dir[1]]
                }
                Stratum::AlongAxis { axis, start, limit } => {
                    let mut l = [R::neg_infinity(); 2];
                    l[axis.free_coord()] = *limit + half * jitter * (*start - *limit);
                    l
                }
                Stratum::HornTail => {
                    let ReinhardtDomain::ExpHorn(h) = d else {
                        unreachable!("horn stratum on a polyhedral domain")
                    };
                    let bi = h.bounded().index();
                    let mut l = [R::zero(); 2];
                    l[1 - bi] = R::from_int(k as i64) * R::LN_2();
                    l[bi] = h.c().ln() - h.e() * (h.k_real() * l[1 - bi]).exp() - jitter;
                    l
                }
                Stratum::ToAxis { axis, lr } => {
                    let mut l = [R::zero(); 2];
                    l[axis.free_coord()] = *lr;
                    l[axis.zero_coord()] = x0[axis.zero_coord()].min(R::zero()) - R::from_int(k as i64) * R::LN_2();
                    l
                }
            }
        })
        .collect()
}

/// Sequences approaching every boundary stratum of the source must have
/// images leaving each `K_ε` of the target.
pub fn check_boundary_escape<R: Real, M: PairMap<R> + ?Sized>(
    map: &M,
    source: &ReinhardtDomain<R>,
    target: &ReinhardtDomain<R>,
    n_sequences: usize,
    seed: u64,
) -> EscapeResult {
    let strata = strata(source);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xE5CA_9E);
    let mut failures = 0;
    let mut run = 0;
    if strata.is_empty() {
        return EscapeResult {
            sequences: 0,
            failures: 0,
        };
    }
    for i in 0..n_sequences {
        let seq = sequence(source, &strata[i % strata.len()], &mut rng);
        let theta = [rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(0.0..std::f64::consts::TAU)];
        let pts: Vec<[R; 2]> = seq.into_iter().filter(|l| source.contains_log(*l)).collect();
        let Some(last) = pts.last() else {
            continue;
        };
        run += 1;
        let to_c = |lr: R, th: f64| {
            if lr == R::neg_infinity() {
                Complex::new(R::zero(), R::zero())
            } else {
                Complex::from_polar(lr.exp(), R::lit(th))
            }
        };
        let escaped = match map.log_moduli(to_c(last[0], theta[0]), to_c(last[1], theta[1])) {
            Ok(img) => EPSILONS.iter().all(|&e| !in_compact(target, img, R::lit(e))),
            Err(_) => false,
        };
        if !escaped {
            failures += 1;
        }
    }
    EscapeResult {
        sequences: run,
        failures,
    }
}

/// Axes of `d` whose envelope slice is C or C*.
fn plane_axes<R: Real>(d: &ReinhardtDomain<R>) -> Vec<Axis> {
    let env = d.envelope();
    Axis::BOTH
        .into_iter()
        .filter(|&a| env.slice(a).is_c_or_c_star() && d.attachment(a).is_attached())
        .collect()
}

/// Each axis with a C or C* slice must map into a single coordinate axis,
/// and samples of the hyperbolic part must map into the hyperbolic part.
pub fn check_axis_mapping<R: Real, M: PairMap<R> + ?Sized>(
    map: &M,
    source: &ReinhardtDomain<R>,
    target: &ReinhardtDomain<R>,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> AxisResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA815);
    let mut samples = 0;
    let mut failures = 0;
    for axis in plane_axes(source) {
        let slice = source.slice(axis);
        let mut lands_on: Option<usize> = None;
        for _ in 0..n_samples {
            let lr = R::lit(rng.gen_range(-8.0..8.0));
            if !slice.contains_radius(lr.exp()) {
                continue;
            }
            let p = axis.point(Complex::from_polar(lr.exp(), R::lit(rng.gen_range(0.0..std::f64::consts::TAU))));
            samples += 1;
            let Ok(img) = map.log_moduli(p[0], p[1]) else {
                failures += 1;
                continue;
            };
            let zero = img.map(|x| x == R::neg_infinity());
            let ok = match lands_on {
                Some(i) => zero[i],
                None => {
                    lands_on = zero.iter().position(|&z| z);
                    lands_on.is_some()
                }
            };
            failures += !ok as usize;
        }
    }
    if !plane_axes(source).is_empty() || !plane_axes(target).is_empty() {
        let src_hyp = source.hyp_part();
        let dst_hyp = target.hyp_part();
        let pts = sample_domain(&src_hyp, n_samples, seed ^ 0x4F1);
        for [z, w] in pts {
            samples += 1;
            let ok = map
                .log_moduli(z, w)
                .map(|l| dst_hyp.log_margin(l).to_f64_lossy() >= -tol)
                .unwrap_or(false);
            failures += !ok as usize;
        }
    }
    AxisResult { samples, failures }
}

/// Runs every check and assembles the report.
pub fn verify_map<R: Real, M: PairMap<R> + ?Sized>(
    map: &M,
    source: &ReinhardtDomain<R>,
    target: &ReinhardtDomain<R>,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let containment = check_containment(map, source, target, cfg.samples, cfg.tol, cfg.seed);
    let escape = check_boundary_escape(map, source, target, cfg.sequences, cfg.seed);
    let axis = check_axis_mapping(map, source, target, cfg.axis_samples, cfg.tol, cfg.seed);
    let invariant_src = source.invariant_tuple();
    let invariant_dst = target.invariant_tuple();
    let pass = containment.violations == 0
        && escape.failures == 0
        && axis.failures == 0
        && invariant_src == invariant_dst;
    VerificationReport {
        containment,
        escape,
        axis,
        invariant_src,
        invariant_dst,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    }
}

pub fn verify_pair<R: Real>(pair: &ProperPair<R>, cfg: &VerifyConfig) -> VerificationReport {
    verify_map(&pair.map, &pair.source, &pair.target, cfg)
}
