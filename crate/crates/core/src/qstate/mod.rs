//! Dense state-vector engine: states, operators, local-term Hamiltonians,
//! projective measurement arithmetic and the lowest-eigenpair solver.

mod io;
pub mod linalg;
mod operator;
mod state;

pub use io::{read_state, state_from_json, state_to_json, write_state};
pub use linalg::{
    hermitian_eigen, hermitian_eigenvalues, lanczos_lowest_eigenpair, lowest_eigenpair, to_dense, Eigenpair,
    GroundSpace, DEFAULT_TOL, MAX_SOLVER_DIM,
};
pub use operator::{pauli, Operator};
pub use state::{decode_index, encode_index, hilbert_dim, State};

use crate::error::{Error, Result};
use crate::scalar::{cre, Amp, Real};

/// Anything that can act on an amplitude vector as a square matrix.
pub trait LinearOperator<T: Real>: Sync {
    fn dim(&self) -> usize;

    fn apply(&self, v: &[Amp<T>]) -> Result<Vec<Amp<T>>>;

    /// Largest entrywise deviation from hermiticity; zero when Hermitian by
    /// construction.
    fn hermiticity_defect(&self) -> T;

    /// `(local_dim, sites)` used to wrap eigenvectors as states.
    fn layout(&self) -> (usize, usize) {
        infer_layout(self.dim())
    }
}

/// Smallest local dimension `d ≥ 2` with `dim = d^k`; `(dim, 1)` otherwise.
pub fn infer_layout(dim: usize) -> (usize, usize) {
    for d in 2..dim {
        let mut k = 0;
        let mut x = dim;
        while x % d == 0 {
            x /= d;
            k += 1;
        }
        if x == 1 {
            return (d, k);
        }
        if d * d > dim {
            break;
        }
    }
    (dim.max(2), 1)
}

impl<T: Real> LinearOperator<T> for Operator<T> {
    fn dim(&self) -> usize {
        Operator::dim(self)
    }

    fn apply(&self, v: &[Amp<T>]) -> Result<Vec<Amp<T>>> {
        Operator::apply(self, v)
    }

    fn hermiticity_defect(&self) -> T {
        Operator::hermiticity_defect(self)
    }
}

/// One term `coefficient · op` acting on the listed sites.
#[derive(Clone, Debug)]
pub struct LocalTerm<T> {
    pub coefficient: T,
    pub sites: Vec<usize>,
    pub op: Operator<T>,
}

/// Hamiltonian stored as a list of local terms and applied on the fly.
/// A term with no sites is a multiple of the identity.
#[derive(Clone, Debug)]
pub struct LocalHamiltonian<T> {
    local_dim: usize,
    sites: usize,
    terms: Vec<LocalTerm<T>>,
}

impl<T: Real> LocalHamiltonian<T> {
    pub fn new(local_dim: usize, sites: usize) -> Result<Self> {
        let dim = hilbert_dim(local_dim, sites)?;
        if dim > MAX_SOLVER_DIM {
            return Err(Error::Overflow { dim: dim as u128, limit: MAX_SOLVER_DIM });
        }
        Ok(Self { local_dim, sites, terms: Vec::new() })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn terms(&self) -> &[LocalTerm<T>] {
        &self.terms
    }

    pub fn add_term(&mut self, coefficient: T, sites: &[usize], op: Operator<T>) -> Result<()> {
        for (i, &s) in sites.iter().enumerate() {
            if s == 0 || s > self.sites {
                return Err(Error::SiteOutOfRange { site: s, sites: self.sites });
            }
            if sites[..i].contains(&s) {
                return Err(Error::Validation(format!("site {s} listed twice in one term")));
            }
        }
        if op.dim() != hilbert_dim(self.local_dim, sites.len())? {
            return Err(Error::Dimension(format!("term operator of dim {} on {} sites", op.dim(), sites.len())));
        }
        self.terms.push(LocalTerm { coefficient, sites: sites.to_vec(), op });
        Ok(())
    }

    /// Adds `value · I`.
    pub fn add_constant(&mut self, value: T) {
        self.terms.push(LocalTerm { coefficient: value, sites: Vec::new(), op: Operator::identity(1) });
    }

    pub fn to_dense(&self) -> Result<Operator<T>> {
        to_dense(self)
    }
}

impl<T: Real> LinearOperator<T> for LocalHamiltonian<T> {
    fn dim(&self) -> usize {
        self.local_dim.pow(self.sites as u32)
    }

    fn apply(&self, v: &[Amp<T>]) -> Result<Vec<Amp<T>>> {
        let dim = LinearOperator::dim(self);
        if v.len() != dim {
            return Err(Error::Dimension(format!("Hamiltonian of dim {dim} on vector of length {}", v.len())));
        }
        let mut out = vec![cre(T::zero()); dim];
        for term in &self.terms {
            state::apply_local_into(v, &mut out, self.local_dim, self.sites, &term.sites, &term.op, cre(term.coefficient));
        }
        Ok(out)
    }

    fn hermiticity_defect(&self) -> T {
        self.terms.iter().map(|t| t.op.hermiticity_defect() * t.coefficient.abs()).fold(T::zero(), T::max)
    }

    fn layout(&self) -> (usize, usize) {
        (self.local_dim, self.sites)
    }
}
