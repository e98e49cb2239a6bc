use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use super::linalg;
use super::operator::Operator;
use super::LinearOperator;
use crate::error::{Error, Result};
use crate::scalar::{cre, Amp, Real};

/// Amplitude vector over `sites` sites of local dimension `local_dim`.
///
/// Basis index is `Σ digit_i · local_dim^(sites − i)` with site 1 the most
/// significant slot. For qubits digit 0 is spin up.
#[derive(Clone, Debug, PartialEq)]
pub struct State<T> {
    local_dim: usize,
    sites: usize,
    amplitudes: Vec<Amp<T>>,
}

/// `local_dim^sites`, or an overflow error past `usize`.
pub fn hilbert_dim(local_dim: usize, sites: usize) -> Result<usize> {
    let dim = (local_dim as u128).checked_pow(sites as u32).unwrap_or(u128::MAX);
    usize::try_from(dim)
        .ok()
        .filter(|&d| d <= 1 << 30)
        .ok_or(Error::Overflow { dim, limit: 1 << 30 })
}

/// Digits of `index`, site 1 first.
pub fn decode_index(index: usize, local_dim: usize, sites: usize) -> Vec<usize> {
    let mut digits = vec![0; sites];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = rest % local_dim;
        rest /= local_dim;
    }
    digits
}

pub fn encode_index(digits: &[usize], local_dim: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * local_dim + d)
}

impl<T: Real> State<T> {
    /// Wraps raw amplitudes without renormalizing.
    pub fn from_amplitudes(local_dim: usize, sites: usize, amplitudes: Vec<Amp<T>>) -> Result<Self> {
        if local_dim < 2 || sites < 1 {
            return Err(Error::Validation(format!("local_dim {local_dim} / sites {sites} out of range")));
        }
        let dim = hilbert_dim(local_dim, sites)?;
        if amplitudes.len() != dim {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {sites} sites of dimension {local_dim} (expected {dim})",
                amplitudes.len()
            )));
        }
        Ok(Self { local_dim, sites, amplitudes })
    }

    /// Wraps amplitudes and rescales them to unit norm.
    pub fn normalized(local_dim: usize, sites: usize, amplitudes: Vec<Amp<T>>) -> Result<Self> {
        let mut s = Self::from_amplitudes(local_dim, sites, amplitudes)?;
        let n = s.norm();
        if n <= T::min_positive_value() {
            return Err(Error::Validation("cannot normalize a zero vector".into()));
        }
        s.scale_mut(cre(n.recip()));
        Ok(s)
    }

    pub fn basis(local_dim: usize, sites: usize, index: usize) -> Result<Self> {
        let dim = hilbert_dim(local_dim, sites)?;
        if index >= dim {
            return Err(Error::Dimension(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![cre(T::zero()); dim];
        amps[index] = cre(T::one());
        Self::from_amplitudes(local_dim, sites, amps)
    }

    /// Product basis state from per-site digits.
    pub fn product(local_dim: usize, digits: &[usize]) -> Result<Self> {
        if digits.iter().any(|&d| d >= local_dim) {
            return Err(Error::Validation(format!("digit out of range for local dimension {local_dim}")));
        }
        Self::basis(local_dim, digits.len(), encode_index(digits, local_dim))
    }

    pub fn up() -> Self {
        Self::basis(2, 1, 0).expect("qubit basis")
    }

    pub fn down() -> Self {
        Self::basis(2, 1, 1).expect("qubit basis")
    }

    #[inline]
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    #[inline]
    pub fn sites(&self) -> usize {
        self.sites
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Amp<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Amp<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |a, b| a + b)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm_sqr() - T::one()).abs() <= tol
    }

    pub(crate) fn scale_mut(&mut self, factor: Amp<T>) {
        for a in &mut self.amplitudes {
            *a = *a * factor;
        }
    }

    pub fn scaled(&self, factor: Amp<T>) -> Self {
        let mut s = self.clone();
        s.scale_mut(factor);
        s
    }

    /// Unit-norm copy; errors on a zero vector.
    pub fn renormalized(&self) -> Result<Self> {
        Self::normalized(self.local_dim, self.sites, self.amplitudes.clone())
    }

    /// Linear combination `a·self + b·other`, unnormalized.
    pub fn combine(&self, a: Amp<T>, other: &Self, b: Amp<T>) -> Result<Self> {
        self.check_same_shape(other)?;
        let amps = self.amplitudes.iter().zip(&other.amplitudes).map(|(x, y)| x * a + y * b).collect();
        Self::from_amplitudes(self.local_dim, self.sites, amps)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.local_dim != other.local_dim || self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "states of shape {}^{} and {}^{}",
                self.local_dim, self.sites, other.local_dim, other.sites
            )));
        }
        Ok(())
    }

    /// `self ⊗ other`, `self` on the most significant sites.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.local_dim != other.local_dim {
            return Err(Error::Dimension(format!(
                "tensor of local dimensions {} and {}",
                self.local_dim, other.local_dim
            )));
        }
        hilbert_dim(self.local_dim, self.sites + other.sites)?;
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self::from_amplitudes(self.local_dim, self.sites + other.sites, amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Amp<T>> {
        self.check_same_shape(other)?;
        Ok(linalg::dot(&self.amplitudes, &other.amplitudes))
    }

    fn check_sites(&self, sites: &[usize]) -> Result<()> {
        for (i, &s) in sites.iter().enumerate() {
            if s == 0 || s > self.sites {
                return Err(Error::SiteOutOfRange { site: s, sites: self.sites });
            }
            if sites[..i].contains(&s) {
                return Err(Error::Validation(format!("site {s} listed twice")));
            }
        }
        Ok(())
    }

    /// Applies `op` to the listed sites (1-based, in listed order as tensor
    /// slots) and the identity elsewhere. The result is not renormalized.
    pub fn apply_local(&self, sites: &[usize], op: &Operator<T>) -> Result<Self> {
        self.check_sites(sites)?;
        let expected = hilbert_dim(self.local_dim, sites.len())?;
        if op.dim() != expected {
            return Err(Error::Dimension(format!(
                "operator of dim {} on {} sites of dimension {}",
                op.dim(),
                sites.len(),
                self.local_dim
            )));
        }
        let mut out = vec![cre(T::zero()); self.dim()];
        apply_local_into(&self.amplitudes, &mut out, self.local_dim, self.sites, sites, op, cre(T::one()));
        Self::from_amplitudes(self.local_dim, self.sites, out)
    }

    /// Projects the listed sites with `projector`; returns the unnormalized
    /// branch and its probability `‖branch‖²`.
    pub fn project(&self, sites: &[usize], projector: &Operator<T>) -> Result<(Self, T)> {
        let tol = T::check_tol();
        if !projector.is_hermitian(tol) {
            return Err(Error::NonHermitian { deviation: projector.hermiticity_defect().as_f64() });
        }
        if !projector.is_idempotent(tol) {
            return Err(Error::Validation("projector is not idempotent".into()));
        }
        let branch = self.apply_local(sites, projector)?;
        let p = branch.norm_sqr();
        Ok((branch, p))
    }

    /// `⟨self|op|self⟩`.
    pub fn expectation<O: LinearOperator<T> + ?Sized>(&self, op: &O) -> Result<Amp<T>> {
        if op.dim() != self.dim() {
            return Err(Error::Dimension(format!("operator of dim {} on state of dim {}", op.dim(), self.dim())));
        }
        let hv = op.apply(&self.amplitudes)?;
        Ok(linalg::dot(&self.amplitudes, &hv))
    }

    /// Haar-random pure state on `sites` sites of dimension `local_dim`.
    pub fn random_haar<R: Rng + ?Sized>(local_dim: usize, sites: usize, rng: &mut R) -> Result<Self> {
        let dim = hilbert_dim(local_dim, sites)?;
        Self::normalized(local_dim, sites, random_gaussian_vector(dim, rng))
    }

    /// Reduced density matrix of one site (1-based).
    pub fn reduced_density_matrix(&self, site: usize) -> Result<Operator<T>> {
        self.check_sites(&[site])?;
        let d = self.local_dim;
        let stride = d.pow((self.sites - site) as u32);
        let mut rho = Operator::zeros(d);
        for (idx, a) in self.amplitudes.iter().enumerate() {
            let digit = (idx / stride) % d;
            let base = idx - digit * stride;
            for k in 0..d {
                let b = self.amplitudes[base + k * stride];
                let cur = rho.get(digit, k);
                rho.set(digit, k, cur + a * b.conj());
            }
        }
        Ok(rho)
    }

    /// Squared Schmidt coefficients across the cut after site `cut`
    /// (sites `1..=cut` against the rest), in descending order.
    pub fn schmidt_spectrum(&self, cut: usize) -> Result<Vec<T>> {
        if cut == 0 || cut >= self.sites {
            return Err(Error::Validation(format!("cut {cut} must split {} sites", self.sites)));
        }
        let right = hilbert_dim(self.local_dim, self.sites - cut)?;
        let left = self.dim() / right;
        // ρ on the smaller side
        let (rows, cols, transpose) = if left <= right { (left, right, false) } else { (right, left, true) };
        let at = |r: usize, col: usize| {
            if transpose {
                self.amplitudes[col * right + r]
            } else {
                self.amplitudes[r * right + col]
            }
        };
        let mut rho = Operator::zeros(rows);
        for i in 0..rows {
            for j in i..rows {
                let v = (0..cols).fold(cre(T::zero()), |acc, k| acc + at(i, k) * at(j, k).conj());
                rho.set(i, j, v);
                rho.set(j, i, v.conj());
            }
        }
        let mut values = linalg::hermitian_eigenvalues(&rho)?;
        values.reverse();
        Ok(values)
    }

    /// Von Neumann entropy in bits across the cut after site `cut`.
    pub fn entanglement_entropy(&self, cut: usize) -> Result<T> {
        let spectrum = self.schmidt_spectrum(cut)?;
        Ok(spectrum
            .into_iter()
            .filter(|&p| p > T::zero())
            .fold(T::zero(), |acc, p| acc - p * p.log2()))
    }
}

pub(crate) fn random_gaussian_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Amp<T>> {
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// `out += scale · (op on sites) · input`.
pub(crate) fn apply_local_into<T: Real>(
    input: &[Amp<T>],
    out: &mut [Amp<T>],
    local_dim: usize,
    n_sites: usize,
    sites: &[usize],
    op: &Operator<T>,
    scale: Amp<T>,
) {
    let strides: Vec<usize> = sites.iter().map(|&s| local_dim.pow((n_sites - s) as u32)).collect();
    let k = op.dim();
    let offsets: Vec<usize> = (0..k)
        .map(|local| {
            decode_index(local, local_dim, sites.len())
                .iter()
                .zip(&strides)
                .map(|(d, s)| d * s)
                .sum()
        })
        .collect();
    let mut gathered = vec![cre(T::zero()); k];
    for base in 0..input.len() {
        if strides.iter().any(|&s| (base / s) % local_dim != 0) {
            continue;
        }
        for (g, off) in gathered.iter_mut().zip(&offsets) {
            *g = input[base + off];
        }
        if gathered.iter().all(|g| g.re == T::zero() && g.im == T::zero()) {
            continue;
        }
        for (row, off) in offsets.iter().enumerate() {
            let v = (0..k).fold(cre(T::zero()), |acc, col| acc + op.get(row, col) * gathered[col]);
            out[base + off] = out[base + off] + v * scale;
        }
    }
}
