//! Channel states and the spin-chain Hamiltonians whose ground states serve
//! as teleportation channels.

mod aklt;
mod spin;

pub use aklt::{aklt_virtual_state, spin_two_projector, VirtualEmbedding};
pub use spin::{heisenberg_bond, spin_operators, LocalSpin};

use rand::Rng;

use crate::bell::{bell_product, BellLabel, LabelVector};
use crate::error::{Error, Result};
use crate::qstate::{lowest_eigenpair, GroundSpace, LinearOperator, LocalHamiltonian, Operator, State};
use crate::scalar::{cre, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelKind<T> {
    /// `Σ S_i·S_{i+1} + β S_i·S_{i+2}` on spin-1/2 sites.
    HeisenbergNnn { beta: T },
    /// `Σ S^z_i S^z_{i+1}` on spin-1/2 sites.
    IsingAf,
    /// `Σ S_i·S_{i+1} + α (S_i·S_{i+1})²` on spin-1 sites.
    Aklt { alpha: T },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
    /// Open spin-1 chain whose free ends carry spin-1/2 degrees of freedom.
    /// The Hamiltonian is the open one; the ends only appear in
    /// [`aklt_virtual_state`].
    OpenWithHalfSpinEnds,
}

impl std::str::FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            "open" => Ok(Boundary::Open),
            "open-with-half-spin-ends" | "open_with_half_spin_ends" => Ok(Boundary::OpenWithHalfSpinEnds),
            other => Err(Error::Parse(format!("unknown boundary {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinChainModel<T> {
    pub kind: ModelKind<T>,
    pub sites: usize,
    pub boundary: Boundary,
}

impl<T: Real> SpinChainModel<T> {
    pub fn heisenberg_nnn(sites: usize, beta: T) -> Self {
        Self { kind: ModelKind::HeisenbergNnn { beta }, sites, boundary: Boundary::Periodic }
    }

    pub fn ising_af(sites: usize) -> Self {
        Self { kind: ModelKind::IsingAf, sites, boundary: Boundary::Periodic }
    }

    pub fn aklt(sites: usize) -> Self {
        Self { kind: ModelKind::Aklt { alpha: T::one() / T::lit(3.0) }, sites, boundary: Boundary::Open }
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn local_spin(&self) -> LocalSpin {
        match self.kind {
            ModelKind::Aklt { .. } => LocalSpin::One,
            _ => LocalSpin::Half,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(Error::Validation(format!("a chain needs at least 2 sites, got {}", self.sites)));
        }
        match self.kind {
            ModelKind::HeisenbergNnn { beta } if !(beta >= T::zero()) => {
                Err(Error::Validation(format!("beta must be non-negative, got {beta}")))
            }
            ModelKind::Aklt { alpha } if !alpha.is_finite() => Err(Error::Validation("alpha must be finite".into())),
            ModelKind::HeisenbergNnn { .. } | ModelKind::IsingAf
                if self.boundary == Boundary::OpenWithHalfSpinEnds =>
            {
                Err(Error::Validation("half-spin ends apply to the spin-1 chain only".into()))
            }
            _ => Ok(()),
        }
    }

    /// `(i, j)` bonds at separation `distance`, 1-based.
    fn bonds(&self, distance: usize) -> Vec<(usize, usize)> {
        let n = self.sites;
        match self.boundary {
            Boundary::Periodic => (1..=n).map(|i| (i, (i - 1 + distance) % n + 1)).collect(),
            Boundary::Open | Boundary::OpenWithHalfSpinEnds => {
                (1..=n).filter(|i| i + distance <= n).map(|i| (i, i + distance)).collect()
            }
        }
    }
}

fn add_bond<T: Real>(h: &mut LocalHamiltonian<T>, coefficient: T, (i, j): (usize, usize), bond: &Operator<T>, self_value: T) -> Result<()> {
    if i == j {
        // S_i·S_i = s(s+1) on a wrapped chain shorter than the bond range
        h.add_constant(coefficient * self_value);
        Ok(())
    } else {
        h.add_term(coefficient, &[i, j], bond.clone())
    }
}

pub fn build_hamiltonian<T: Real>(model: &SpinChainModel<T>) -> Result<LocalHamiltonian<T>> {
    model.validate()?;
    let spin = model.local_spin();
    let mut h = LocalHamiltonian::new(spin.dim(), model.sites)?;
    let ss = heisenberg_bond::<T>(spin);
    let casimir = spin.casimir::<T>();
    match model.kind {
        ModelKind::HeisenbergNnn { beta } => {
            for bond in model.bonds(1) {
                add_bond(&mut h, T::one(), bond, &ss, casimir)?;
            }
            if beta != T::zero() {
                for bond in model.bonds(2) {
                    add_bond(&mut h, beta, bond, &ss, casimir)?;
                }
            }
        }
        ModelKind::IsingAf => {
            let [_, _, sz] = spin_operators::<T>(spin);
            let zz = sz.kron(&sz);
            for bond in model.bonds(1) {
                add_bond(&mut h, T::one(), bond, &zz, T::lit(0.25))?;
            }
        }
        ModelKind::Aklt { alpha } => {
            let term = &ss + &(&ss * &ss).scale(cre(alpha));
            for bond in model.bonds(1) {
                if bond.0 == bond.1 {
                    let c = casimir + alpha * casimir * casimir;
                    h.add_constant(c);
                } else {
                    h.add_term(T::one(), &[bond.0, bond.1], term.clone())?;
                }
            }
        }
    }
    Ok(h)
}

/// Lowest eigenspace of the model Hamiltonian.
pub fn ground_space<T: Real>(model: &SpinChainModel<T>, tol: T) -> Result<GroundSpace<T>> {
    lowest_eigenpair(&build_hamiltonian(model)?, tol)
}

fn require_even(sites: usize) -> Result<()> {
    if sites == 0 || sites % 2 == 1 {
        Err(Error::OddLength(sites))
    } else {
        Ok(())
    }
}

/// Singlets on `(1,2), (3,4), …`.
pub fn majumdar_ghosh_state<T: Real>(sites: usize) -> Result<State<T>> {
    require_even(sites)?;
    Ok(bell_product(&LabelVector::uniform(BellLabel::SINGLET, sites / 2)?))
}

/// `(Φ⁻, Φ⁺) = (|↑↓↑↓…⟩, |↓↑↓↑…⟩)`.
pub fn neel_states<T: Real>(sites: usize) -> Result<(State<T>, State<T>)> {
    require_even(sites)?;
    let minus: Vec<usize> = (0..sites).map(|i| i % 2).collect();
    let plus: Vec<usize> = minus.iter().map(|d| 1 - d).collect();
    Ok((State::product(2, &minus)?, State::product(2, &plus)?))
}

/// `Φ⁰ = (Φ⁺ − Φ⁻)/√2`.
pub fn ising_superposition<T: Real>(sites: usize) -> Result<State<T>> {
    let (minus, plus) = neel_states::<T>(sites)?;
    let h = T::FRAC_1_SQRT_2();
    plus.combine(cre(h), &minus, cre(-h))
}

/// `(Σ_i S_i)²` on `sites` sites of the given spin.
pub fn total_spin_squared<T: Real>(sites: usize, spin: LocalSpin) -> Result<LocalHamiltonian<T>> {
    let mut h = LocalHamiltonian::new(spin.dim(), sites)?;
    h.add_constant(T::lit(sites as f64) * spin.casimir::<T>());
    let ss = heisenberg_bond::<T>(spin);
    let two = T::lit(2.0);
    for i in 1..=sites {
        for j in i + 1..=sites {
            h.add_term(two, &[i, j], ss.clone())?;
        }
    }
    Ok(h)
}

/// Projects onto total spin 0 via `Π_{S≥1} (Ŝ² − S(S+1)) / (−S(S+1))`.
pub fn project_spin_zero<T: Real>(state: &State<T>) -> Result<State<T>> {
    if state.local_dim() != 2 {
        return Err(Error::Validation("spin-zero projection is implemented for spin-1/2 chains".into()));
    }
    let s2 = total_spin_squared::<T>(state.sites(), LocalSpin::Half)?;
    let mut amps = state.amplitudes().to_vec();
    let max_twice_s = state.sites();
    // total spin S runs over integers (even chains) or half-integers
    let mut twice_s = max_twice_s;
    while twice_s > 0 {
        let s = T::lit(twice_s as f64) / T::lit(2.0);
        let ev = s * (s + T::one());
        let mut next = s2.apply(&amps)?;
        for (n, a) in next.iter_mut().zip(&amps) {
            *n = (*n - a * ev) / (-ev);
        }
        amps = next;
        twice_s = twice_s.saturating_sub(2);
    }
    State::from_amplitudes(2, state.sites(), amps)
}

/// Haar-random state projected onto total spin 0 and renormalized.
pub fn random_spin_zero_state<T: Real, R: Rng + ?Sized>(sites: usize, rng: &mut R) -> Result<State<T>> {
    require_even(sites)?;
    const RETRIES: usize = 8;
    for _ in 0..RETRIES {
        let haar = State::random_haar(2, sites, rng)?;
        let projected = project_spin_zero(&haar)?;
        if projected.norm() > T::check_tol() {
            return projected.renormalized();
        }
    }
    Err(Error::Validation(format!("spin-0 projection vanished {RETRIES} times in a row")))
}
