//! Fibers of elementary maps over C*².

use num_complex::Complex;
use thiserror::Error;

use crate::maps::MapSpec;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("fiber counting needs an elementary map")]
    NotElementary,
    #[error("exponent matrix is singular")]
    SingularMatrix,
    #[error("target has a zero coordinate")]
    DegenerateTarget,
}

/// Number of points `z ∈ C*²` with `b·z^A = target`.
///
/// Writing `z = exp(ζ)`, the equation becomes `Aζ = log(target/b) + 2πik`
/// for `k ∈ Z²`; residues of `k` modulo `AZ²` give distinct solutions, and
/// all of them occur among `k ∈ [0, |det A|)²`.
pub fn fiber_count<R: Real>(map: &MapSpec<R>, target: [Complex<R>; 2]) -> Result<usize, FiberError> {
    let (a, b) = map.as_elementary().ok_or(FiberError::NotElementary)?;
    let det = a.det();
    if det == 0 {
        return Err(FiberError::SingularMatrix);
    }
    if target.iter().any(|t| t.norm() == R::zero()) {
        return Err(FiberError::DegenerateTarget);
    }
    let rhs = [(target[0] / b[0]).ln(), (target[1] / b[1]).ln()];
    let adj = a.adjugate();
    let n = det.abs();
    let tau = R::lit(std::f64::consts::TAU);
    let i = Complex::new(R::zero(), R::one());
    let mut roots: Vec<[Complex<R>; 2]> = Vec::new();
    for k0 in 0..n {
        for k1 in 0..n {
            let c = [rhs[0] + i * tau * R::from_int(k0), rhs[1] + i * tau * R::from_int(k1)];
            let zeta = [0, 1].map(|r| {
                (c[0] * R::from_int(adj.entry(r, 0)) + c[1] * R::from_int(adj.entry(r, 1))) / R::from_int(det)
            });
            let z = [zeta[0].exp(), zeta[1].exp()];
            let fresh = roots.iter().all(|q| {
                (0..2).any(|j| (q[j] - z[j]).norm() > R::lit(1e-6) * z[j].norm().max(q[j].norm()))
            });
            if fresh {
                roots.push(z);
            }
        }
    }
    let ok = |z: &[Complex<R>; 2]| {
        map.eval(z[0], z[1]).is_ok_and(|(f1, f2)| {
            (f1 - target[0]).norm() <= R::lit(1e-8) * target[0].norm()
                && (f2 - target[1]).norm() <= R::lit(1e-8) * target[1].norm()
        })
    };
    Ok(roots.iter().filter(|z| ok(z)).count())
}
