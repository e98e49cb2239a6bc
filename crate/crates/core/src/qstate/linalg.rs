//! Hermitian eigensolvers: cyclic complex Jacobi for dense matrices and a
//! restarted Lanczos iteration with full reorthogonalization and deflation
//! for larger operators that are only available as matrix-vector products.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::operator::Operator;
use super::state::{random_gaussian_vector, State};
use super::LinearOperator;
use crate::error::{Error, Result};
use crate::scalar::{cis, cre, Amp, Real};

/// Largest Hilbert-space dimension accepted by the eigensolver.
pub const MAX_SOLVER_DIM: usize = 1 << 14;

/// Below this dimension the solver builds the dense matrix and diagonalizes it.
pub const DENSE_CUTOFF: usize = 64;

/// Default relative tolerance; also the degeneracy window relative to `‖H‖`.
pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_KRYLOV: usize = 80;
const MAX_RESTARTS: usize = 400;

#[derive(Clone, Debug)]
pub struct Eigenpair<T> {
    pub energy: T,
    pub state: State<T>,
    /// `‖H·state − energy·state‖`.
    pub residual: T,
}

/// Lowest eigenvalue together with an orthonormal basis of its eigenspace.
#[derive(Clone, Debug)]
pub struct GroundSpace<T> {
    pub energy: T,
    pub pairs: Vec<Eigenpair<T>>,
}

impl<T: Real> GroundSpace<T> {
    pub fn degeneracy(&self) -> usize {
        self.pairs.len()
    }

    pub fn ground_state(&self) -> &State<T> {
        &self.pairs[0].state
    }

    pub fn max_residual(&self) -> T {
        self.pairs.iter().map(|p| p.residual).fold(T::zero(), T::max)
    }
}

#[inline]
pub(crate) fn dot<T: Real>(a: &[Amp<T>], b: &[Amp<T>]) -> Amp<T> {
    a.iter().zip(b).fold(cre(T::zero()), |acc, (x, y)| acc + x.conj() * y)
}

fn norm<T: Real>(v: &[Amp<T>]) -> T {
    v.iter().map(|a| a.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
}

fn axpy<T: Real>(y: &mut [Amp<T>], alpha: Amp<T>, x: &[Amp<T>]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}

fn orthogonalize<T: Real>(v: &mut [Amp<T>], basis: &[Vec<Amp<T>>]) {
    for q in basis {
        let overlap = dot(q, v);
        axpy(v, -overlap, q);
    }
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending and the
/// matching orthonormal eigenvectors.
pub fn hermitian_eigen<T: Real>(m: &Operator<T>) -> Result<(Vec<T>, Vec<Vec<Amp<T>>>)> {
    let n = m.dim();
    let scale = m.norm().max(T::one());
    let defect = m.hermiticity_defect();
    if defect > T::check_tol() * scale {
        return Err(Error::NonHermitian { deviation: defect.as_f64() });
    }
    let mut a = m.clone();
    let mut v = Operator::<T>::identity(n);
    let eps = T::epsilon() * scale;
    for _sweep in 0..100 {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .fold(T::zero(), |x, y| x + y)
            .sqrt();
        if off <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let b = apq.norm();
                if b <= T::min_positive_value() {
                    continue;
                }
                let phase = cis(-apq.arg());
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let theta = (b + b).atan2(aqq - app) / (T::one() + T::one());
                let (s, cth) = theta.sin_cos();
                let gpp = cre(cth);
                let gpq = cre(s);
                let gqp = phase * (-s);
                let gqq = phase * cth;
                for r in 0..n {
                    let (x, y) = (a.get(r, p), a.get(r, q));
                    a.set(r, p, x * gpp + y * gqp);
                    a.set(r, q, x * gpq + y * gqq);
                    let (x, y) = (v.get(r, p), v.get(r, q));
                    v.set(r, p, x * gpp + y * gqp);
                    v.set(r, q, x * gpq + y * gqq);
                }
                for col in 0..n {
                    let (x, y) = (a.get(p, col), a.get(q, col));
                    a.set(p, col, gpp.conj() * x + gqp.conj() * y);
                    a.set(q, col, gpq.conj() * x + gqq.conj() * y);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = order.iter().map(|&j| (0..n).map(|r| v.get(r, j)).collect()).collect();
    Ok((values, vectors))
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues<T: Real>(m: &Operator<T>) -> Result<Vec<T>> {
    hermitian_eigen(m).map(|(values, _)| values)
}

/// Dense matrix of any linear operator, built column by column.
pub fn to_dense<T: Real, O: LinearOperator<T> + ?Sized>(op: &O) -> Result<Operator<T>> {
    let n = op.dim();
    let mut m = Operator::zeros(n);
    let mut e = vec![cre(T::zero()); n];
    for col in 0..n {
        e[col] = cre(T::one());
        let column = op.apply(&e)?;
        for (row, value) in column.into_iter().enumerate() {
            m.set(row, col, value);
        }
        e[col] = cre(T::zero());
    }
    Ok(m)
}

fn residual<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, energy: T, v: &[Amp<T>]) -> Result<T> {
    let mut hv = op.apply(v)?;
    axpy(&mut hv, cre(-energy), v);
    Ok(norm(&hv))
}

/// Lowest eigenvalue of a Hermitian operator with an orthonormal basis of
/// its eigenspace. Eigenvalues within `tol·‖H‖` of the minimum are reported
/// as one degenerate set; every returned residual is at most `tol`.
pub fn lowest_eigenpair<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, tol: T) -> Result<GroundSpace<T>> {
    let dim = op.dim();
    if dim > MAX_SOLVER_DIM {
        return Err(Error::Overflow { dim: dim as u128, limit: MAX_SOLVER_DIM });
    }
    let defect = op.hermiticity_defect();
    if defect > T::check_tol() {
        return Err(Error::NonHermitian { deviation: defect.as_f64() });
    }
    if dim <= DENSE_CUTOFF {
        dense_lowest(op, tol)
    } else {
        lanczos_lowest(op, tol)
    }
}

fn wrap<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, amps: Vec<Amp<T>>) -> Result<State<T>> {
    let (local_dim, sites) = op.layout();
    State::normalized(local_dim, sites, amps)
}

fn dense_lowest<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, tol: T) -> Result<GroundSpace<T>> {
    let m = to_dense(op)?;
    let (values, vectors) = hermitian_eigen(&m)?;
    let spectral = values.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    let window = tol * spectral;
    let limit = tol;
    let e0 = values[0];
    let mut pairs = Vec::new();
    for (value, vector) in values.iter().zip(vectors) {
        if *value - e0 > window {
            break;
        }
        let state = wrap(op, vector)?;
        let r = residual(op, *value, state.amplitudes())?;
        if r > limit {
            return Err(Error::NoConvergence { residual: r.as_f64() });
        }
        pairs.push(Eigenpair { energy: *value, state, residual: r });
    }
    Ok(GroundSpace { energy: e0, pairs })
}

struct Ritz<T> {
    value: T,
    vector: Vec<Amp<T>>,
    spectral_estimate: T,
}

/// One Lanczos pass started from `start` in the orthogonal complement of
/// `deflated`; returns the lowest Ritz pair.
fn lanczos_pass<T: Real, O: LinearOperator<T> + ?Sized>(
    op: &O,
    deflated: &[Vec<Amp<T>>],
    start: Vec<Amp<T>>,
    krylov: usize,
) -> Result<Ritz<T>> {
    let mut v = start;
    orthogonalize(&mut v, deflated);
    let n0 = norm(&v);
    let inv = cre(n0.recip());
    v.iter_mut().for_each(|x| *x = *x * inv);

    let mut basis: Vec<Vec<Amp<T>>> = vec![v];
    let mut alphas: Vec<T> = Vec::new();
    let mut betas: Vec<T> = Vec::new();
    let breakdown = T::epsilon().sqrt() * T::epsilon().sqrt().sqrt();
    for j in 0..krylov {
        let mut w = op.apply(&basis[j])?;
        let alpha = dot(&basis[j], &w).re;
        alphas.push(alpha);
        // two passes of full reorthogonalization
        for _ in 0..2 {
            orthogonalize(&mut w, deflated);
            orthogonalize(&mut w, &basis);
        }
        let beta = norm(&w);
        if j + 1 == krylov || beta <= breakdown {
            break;
        }
        betas.push(beta);
        let inv = cre(beta.recip());
        w.iter_mut().for_each(|x| *x = *x * inv);
        basis.push(w);
    }
    let k = alphas.len();
    let mut t = Operator::<T>::zeros(k);
    for i in 0..k {
        t.set(i, i, cre(alphas[i]));
        if i + 1 < k {
            t.set(i, i + 1, cre(betas[i]));
            t.set(i + 1, i, cre(betas[i]));
        }
    }
    let (values, vectors) = hermitian_eigen(&t)?;
    let y = &vectors[0];
    let mut ritz = vec![cre(T::zero()); op.dim()];
    for (coef, q) in y.iter().zip(&basis) {
        axpy(&mut ritz, *coef, q);
    }
    let n = norm(&ritz);
    let inv = cre(n.recip());
    ritz.iter_mut().for_each(|x| *x = *x * inv);
    let spectral_estimate = values[0].abs().max(values[k - 1].abs());
    Ok(Ritz { value: values[0], vector: ritz, spectral_estimate })
}

fn lanczos_lowest<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, tol: T) -> Result<GroundSpace<T>> {
    let dim = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a2c);
    let mut found: Vec<Vec<Amp<T>>> = Vec::new();
    let mut pairs: Vec<Eigenpair<T>> = Vec::new();
    let mut spectral = T::zero();
    let mut e0: Option<T> = None;

    while found.len() < dim {
        let krylov = MAX_KRYLOV.min(dim - found.len());
        let mut start = random_gaussian_vector::<T, _>(dim, &mut rng);
        let mut best: Option<(T, Vec<Amp<T>>, T)> = None;
        for _ in 0..MAX_RESTARTS {
            let ritz = lanczos_pass(op, &found, start, krylov)?;
            spectral = spectral.max(ritz.spectral_estimate);
            let r = residual(op, ritz.value, &ritz.vector)?;
            let done = r <= tol;
            start = ritz.vector.clone();
            best = Some((ritz.value, ritz.vector, r));
            if done {
                break;
            }
        }
        let (value, vector, r) = best.expect("at least one pass");
        if r > tol {
            return Err(Error::NoConvergence { residual: r.as_f64() });
        }
        match e0 {
            Some(base) if value - base > tol * spectral => break,
            Some(_) => {}
            None => e0 = Some(value),
        }
        let state = wrap(op, vector.clone())?;
        pairs.push(Eigenpair { energy: value, state, residual: r });
        found.push(vector);
    }
    // Rayleigh quotients of a degenerate set differ only at the tolerance level.
    let energy = pairs.iter().map(|p| p.energy).fold(T::infinity(), T::min);
    Ok(GroundSpace { energy, pairs })
}

/// Forces the Lanczos path regardless of dimension; used to cross-check the
/// dense solver.
pub fn lanczos_lowest_eigenpair<T: Real, O: LinearOperator<T> + ?Sized>(op: &O, tol: T) -> Result<GroundSpace<T>> {
    let defect = op.hermiticity_defect();
    if defect > T::check_tol() {
        return Err(Error::NonHermitian { deviation: defect.as_f64() });
    }
    lanczos_lowest(op, tol)
}
