use std::fmt;

use rand::Rng;

use super::label::BellLabel;
use crate::error::{Error, Result};
use crate::qstate::{to_dense, LinearOperator, Operator, State};
use crate::scalar::{Amp, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// `σ^axis ⊗ … ⊗ σ^axis` over every site of an even qubit chain, applied
/// without materializing the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StringOperator {
    sites: usize,
    axis: Axis,
}

pub fn string_operator(sites: usize, axis: Axis) -> Result<StringOperator> {
    if sites == 0 || sites % 2 == 1 {
        return Err(Error::OddLength(sites));
    }
    if sites > 30 {
        return Err(Error::Overflow { dim: 1u128 << sites, limit: 1 << 30 });
    }
    Ok(StringOperator { sites, axis })
}

impl StringOperator {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn to_dense<T: Real>(&self) -> Result<Operator<T>> {
        to_dense(self)
    }

    fn act<T: Real>(&self, v: &[Amp<T>]) -> Vec<Amp<T>> {
        let mask = (1usize << self.sites) - 1;
        let mut out = vec![Amp::new(T::zero(), T::zero()); v.len()];
        match self.axis {
            Axis::X => {
                for (i, a) in v.iter().enumerate() {
                    out[i ^ mask] = *a;
                }
            }
            Axis::Z => {
                for (i, a) in v.iter().enumerate() {
                    out[i] = if i.count_ones() % 2 == 0 { *a } else { -*a };
                }
            }
            Axis::Y => {
                // σy|↑⟩ = i|↓⟩, σy|↓⟩ = −i|↑⟩: overall i^L (−1)^{#↓}
                let i_pow = match self.sites % 4 {
                    0 => Amp::new(T::one(), T::zero()),
                    1 => Amp::new(T::zero(), T::one()),
                    2 => Amp::new(-T::one(), T::zero()),
                    _ => Amp::new(T::zero(), -T::one()),
                };
                for (i, a) in v.iter().enumerate() {
                    let s = if i.count_ones() % 2 == 0 { i_pow } else { -i_pow };
                    out[i ^ mask] = s * a;
                }
            }
        }
        out
    }
}

impl<T: Real> LinearOperator<T> for StringOperator {
    fn dim(&self) -> usize {
        1 << self.sites
    }

    fn apply(&self, v: &[Amp<T>]) -> Result<Vec<Amp<T>>> {
        if v.len() != 1 << self.sites {
            return Err(Error::Dimension(format!("string operator on {} sites, vector of length {}", self.sites, v.len())));
        }
        Ok(self.act(v))
    }

    fn hermiticity_defect(&self) -> T {
        T::zero()
    }

    fn layout(&self) -> (usize, usize) {
        (2, self.sites)
    }
}

/// Weights `‖Π_kl ψ‖²` of a state on the four Bell subspaces, indexed in the
/// order `−−, −+, +−, ++`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubspaceWeights<T> {
    pub w: [T; 4],
}

impl<T: Real> SubspaceWeights<T> {
    pub fn get(&self, label: BellLabel) -> T {
        self.w[label.index()]
    }

    pub fn total(&self) -> T {
        self.w.iter().fold(T::zero(), |a, &b| a + b)
    }

    /// Largest weight; ties resolve to the earliest label in `−−, −+, +−, ++`.
    pub fn argmax(&self) -> BellLabel {
        let mut best = 0;
        for i in 1..4 {
            if self.w[i] > self.w[best] {
                best = i;
            }
        }
        BellLabel::from_index(best)
    }

    pub fn max_weight(&self) -> T {
        self.w[self.argmax().index()]
    }

    /// Labels carrying more than `threshold` weight.
    pub fn support(&self, threshold: T) -> Vec<BellLabel> {
        BellLabel::ALL.iter().copied().filter(|l| self.get(*l) > threshold).collect()
    }

    /// JSON object keyed `"--"`, `"-+"`, `"+-"`, `"++"` with 15 significant digits.
    pub fn to_json(&self) -> String {
        let body: Vec<String> =
            BellLabel::ALL.iter().map(|l| format!("\"{l}\": {:.14e}", self.get(*l).as_f64())).collect();
        format!("{{{}}}", body.join(", "))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map: std::collections::BTreeMap<String, f64> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut w = [T::zero(); 4];
        for l in BellLabel::ALL {
            let v = map.get(&l.to_string()).ok_or_else(|| Error::Parse(format!("missing key {l}")))?;
            w[l.index()] = T::lit(*v);
        }
        Ok(Self { w })
    }
}

fn check_even_qubits<T: Real>(state: &State<T>) -> Result<()> {
    if state.local_dim() != 2 {
        return Err(Error::Validation(format!("Bell subspaces need qubits, got local dimension {}", state.local_dim())));
    }
    if state.sites() % 2 == 1 {
        return Err(Error::OddLength(state.sites()));
    }
    Ok(())
}

/// The four components `Π_kl ψ` with `Π_kl = (I + k·Sx)(I + l·Sz)/4`.
fn components<T: Real>(state: &State<T>) -> Result<[Vec<Amp<T>>; 4]> {
    check_even_qubits(state)?;
    let l = state.sites();
    let sx = string_operator(l, Axis::X)?;
    let sz = string_operator(l, Axis::Z)?;
    let psi = state.amplitudes();
    let x_psi = sx.act(psi);
    let z_psi = sz.act(psi);
    let xz_psi = sx.act(&z_psi);
    let quarter = T::lit(0.25);
    Ok(BellLabel::ALL.map(|label| {
        let (k, z) = (label.x.value::<T>(), label.z.value::<T>());
        (0..psi.len())
            .map(|i| (psi[i] + x_psi[i] * k + z_psi[i] * z + xz_psi[i] * (k * z)) * quarter)
            .collect()
    }))
}

pub fn classify<T: Real>(state: &State<T>) -> Result<SubspaceWeights<T>> {
    let parts = components(state)?;
    Ok(SubspaceWeights { w: parts.map(|p| p.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y)) })
}

/// Unnormalized projection of `state` onto one Bell subspace.
pub fn project_subspace<T: Real>(state: &State<T>, label: BellLabel) -> Result<State<T>> {
    let [a, b, c, d] = components(state)?;
    let part = [a, b, c, d].into_iter().nth(label.index()).expect("four components");
    State::from_amplitudes(2, state.sites(), part)
}

/// Haar-random state projected onto one Bell subspace and renormalized.
pub fn random_subspace_state<T: Real, R: Rng + ?Sized>(sites: usize, label: BellLabel, rng: &mut R) -> Result<State<T>> {
    if sites % 2 == 1 || sites == 0 {
        return Err(Error::OddLength(sites));
    }
    for _ in 0..16 {
        let haar = State::random_haar(2, sites, rng)?;
        let projected = project_subspace(&haar, label)?;
        if projected.norm() > T::check_tol() {
            return projected.renormalized();
        }
    }
    Err(Error::Validation("subspace projection repeatedly vanished".into()))
}
