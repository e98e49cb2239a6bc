//! Valence-bond construction of the spin-1 AKLT state from virtual qubits.
//!
//! Qubits are ordered `0̄, 1, 1̄, 2, 2̄, …, N, N̄, N+1`: singlets sit on the
//! adjacent pairs `(k̄, k+1)` and physical site `k` is the pair `(k, k̄)`,
//! projected onto its symmetric (triplet) subspace.

use super::spin::{heisenberg_bond, LocalSpin};
use crate::bell::{bell_product, bell_state, BellLabel, LabelVector};
use crate::error::{Error, Result};
use crate::qstate::{decode_index, LinearOperator, Operator, State};
use crate::scalar::{cre, Amp, Real};

/// Largest virtual chain built.
pub const MAX_VIRTUAL_QUBITS: usize = 14;

#[derive(Clone, Debug)]
pub struct VirtualEmbedding<T> {
    pub physical_sites: usize,
    /// `2N + 2` qubits.
    pub virtual_state: State<T>,
    /// Rank-3 projector onto the symmetric two-qubit subspace.
    pub per_site_symmetrizer: Operator<T>,
}

pub fn aklt_virtual_state<T: Real>(physical_sites: usize) -> Result<VirtualEmbedding<T>> {
    if physical_sites < 1 {
        return Err(Error::Validation("an AKLT chain needs at least one site".into()));
    }
    let qubits = 2 * physical_sites + 2;
    if qubits > MAX_VIRTUAL_QUBITS {
        return Err(Error::Overflow { dim: 1u128 << qubits, limit: 1 << MAX_VIRTUAL_QUBITS });
    }
    let singlets = bell_product::<T>(&LabelVector::uniform(BellLabel::SINGLET, physical_sites + 1)?);
    let singlet = bell_state::<T>(BellLabel::SINGLET);
    let symmetrizer = &Operator::identity(4) - &Operator::projector(singlet.amplitudes());
    let projected = (1..=physical_sites)
        .try_fold(singlets, |acc, k| acc.apply_local(&[2 * k, 2 * k + 1], &symmetrizer))?;
    Ok(VirtualEmbedding {
        physical_sites,
        virtual_state: projected.renormalized()?,
        per_site_symmetrizer: symmetrizer,
    })
}

/// Spin-2 projector on two spin-1 sites, `(X + 2)(X + 1)/6` with `X = S_1·S_2`.
pub fn spin_two_projector<T: Real>() -> Operator<T> {
    let x = heisenberg_bond::<T>(LocalSpin::One);
    let id = Operator::identity(9);
    let a = &x + &id.scale(cre(T::lit(2.0)));
    let b = &x + &id;
    (&a * &b).scale(cre(T::lit(6.0).recip()))
}

impl<T: Real> VirtualEmbedding<T> {
    /// Spin-1 reduction: for each boundary configuration `(a, b)` of the two
    /// end qubits, the unnormalized spin-1 chain state (levels `m = +1, 0, −1`).
    /// The squared norms sum to one and expectations of spin-1 operators are
    /// sums over the four sectors.
    pub fn spin_one_sectors(&self) -> Result<Vec<((usize, usize), State<T>)>> {
        let n = self.physical_sites;
        let qubits = 2 * n + 2;
        let psi = self.virtual_state.amplitudes();
        let r = T::FRAC_1_SQRT_2();
        let dim3 = 3usize.pow(n as u32);
        let mut sectors = Vec::with_capacity(4);
        for a in 0..2 {
            for b in 0..2 {
                let mut amps = vec![cre(T::zero()); dim3];
                for (m_index, amp) in amps.iter_mut().enumerate() {
                    let levels = decode_index(m_index, 3, n);
                    // expand each triplet level into its qubit pairs
                    let mut terms: Vec<(Vec<usize>, T)> = vec![(vec![a], T::one())];
                    for &m in &levels {
                        let pairs: &[([usize; 2], T)] = match m {
                            0 => &[([0, 0], T::one())],
                            1 => &[([0, 1], r), ([1, 0], r)],
                            _ => &[([1, 1], T::one())],
                        };
                        terms = terms
                            .into_iter()
                            .flat_map(|(bits, w)| {
                                pairs.iter().map(move |(p, pw)| {
                                    let mut nb = bits.clone();
                                    nb.extend_from_slice(p);
                                    (nb, w * *pw)
                                })
                            })
                            .collect();
                    }
                    let mut acc: Amp<T> = cre(T::zero());
                    for (mut bits, w) in terms {
                        bits.push(b);
                        debug_assert_eq!(bits.len(), qubits);
                        let idx = bits.iter().fold(0, |x, &bit| x * 2 + bit);
                        acc = acc + psi[idx] * w;
                    }
                    *amp = acc;
                }
                sectors.push(((a, b), State::from_amplitudes(3, n, amps)?));
            }
        }
        Ok(sectors)
    }

    /// `Tr(ρ O)` for the spin-1 reduction.
    pub fn spin_one_expectation<O: LinearOperator<T> + ?Sized>(&self, op: &O) -> Result<T> {
        self.spin_one_sectors()?
            .iter()
            .try_fold(T::zero(), |acc, (_, s)| Ok(acc + s.expectation(op)?.re))
    }

    /// `⟨P_{S=2}⟩` on each bond `(i, i+1)` of the spin-1 reduction.
    pub fn bond_spin_two_weights(&self) -> Result<Vec<T>> {
        let p2 = spin_two_projector::<T>();
        let sectors = self.spin_one_sectors()?;
        (1..self.physical_sites)
            .map(|i| {
                sectors.iter().try_fold(T::zero(), |acc, (_, s)| {
                    let image = s.apply_local(&[i, i + 1], &p2)?;
                    Ok(acc + s.inner(&image)?.re)
                })
            })
            .collect()
    }
}
