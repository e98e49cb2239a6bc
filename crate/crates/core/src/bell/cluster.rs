//! Linear cluster states and their local-unitary mapping onto `V_[++]`.
//!
//! The 1-D cluster state is stabilized by `K_j = Z_{j−1} X_j Z_{j+1}` (up to
//! signs). Multiplying the generators over a site subset `T` gives a Pauli
//! string whose site `j` carries `X^{[j∈T]} Z^{[j−1∈T] ⊕ [j+1∈T]}`. The full
//! subset and the period-four subset `1,0,0,1,1,0,0,1,…` produce two strings
//! that differ on every site of an even chain, so a per-site Clifford can turn
//! them into `⊗X` and `⊗Z`; a final Pauli on site 1 fixes both signs.

use super::label::BellLabel;
use super::subspace::classify;
use crate::error::{Error, Result};
use crate::qstate::{pauli, Operator, State};
use crate::scalar::{cre, Real};

/// Uniform superposition with a controlled-phase sign on every adjacent
/// `↑↑` pair; at two sites `(|↓↓⟩ + |↓↑⟩ + |↑↓⟩ − |↑↑⟩)/2`.
pub fn cluster_state<T: Real>(sites: usize) -> Result<State<T>> {
    if sites < 2 {
        return Err(Error::Validation(format!("cluster state needs at least 2 sites, got {sites}")));
    }
    if sites > 30 {
        return Err(Error::Overflow { dim: 1u128 << sites, limit: 1 << 30 });
    }
    let dim = 1usize << sites;
    let amp = T::lit(dim as f64).sqrt().recip();
    let amps = (0..dim)
        .map(|idx| {
            // digit 0 = ↑; adjacent pairs of zero bits
            let zeros = !idx & (dim - 1);
            let pairs = (zeros & (zeros >> 1)).count_ones();
            cre(if pairs % 2 == 0 { amp } else { -amp })
        })
        .collect();
    State::from_amplitudes(2, sites, amps)
}

fn same_up_to_phase<T: Real>(a: &Operator<T>, b: &Operator<T>, tol: T) -> bool {
    // locate the largest entry of b and align phases there
    let (idx, pivot) = b
        .entries()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).expect("finite"))
        .expect("nonempty");
    let other = a.entries()[idx];
    if other.norm() <= tol {
        return false;
    }
    let phase = pivot / other;
    a.scale(phase).max_abs_diff(b) <= tol
}

/// The 24 single-qubit Clifford unitaries modulo global phase.
pub fn clifford_group<T: Real>() -> Vec<Operator<T>> {
    let gens = [pauli::hadamard::<T>(), pauli::s_gate::<T>()];
    let tol = T::check_tol();
    let mut group = vec![Operator::identity(2)];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &gens {
                let cand = h * g;
                if !group.iter().any(|e| same_up_to_phase(e, &cand, tol)) {
                    group.push(cand.clone());
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    group
}

fn pauli_from_bits<T: Real>(x: bool, z: bool) -> Option<Operator<T>> {
    match (x, z) {
        (false, false) => None,
        (true, false) => Some(pauli::x()),
        (false, true) => Some(pauli::z()),
        (true, true) => Some(pauli::y()),
    }
}

/// Per-site Pauli pair `(P1, P2)` of the two full-support stabilizers.
fn stabilizer_pair<T: Real>(sites: usize) -> Option<Vec<(Operator<T>, Operator<T>)>> {
    let full = vec![true; sites];
    let periodic: Vec<bool> = (0..sites).map(|j| matches!(j % 4, 0 | 3)).collect();
    let site_pauli = |t: &[bool], j: usize| {
        let left = j > 0 && t[j - 1];
        let right = j + 1 < sites && t[j + 1];
        pauli_from_bits::<T>(t[j], left ^ right)
    };
    (0..sites)
        .map(|j| {
            let a = site_pauli(&full, j)?;
            let b = site_pauli(&periodic, j)?;
            if same_up_to_phase(&a, &b, T::check_tol()) {
                None
            } else {
                Some((a, b))
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ClusterMapping<T> {
    /// One single-qubit unitary per site, site 1 first.
    pub unitaries: Vec<Operator<T>>,
    pub mapped: State<T>,
}

fn apply_all<T: Real>(state: &State<T>, unitaries: &[Operator<T>]) -> Result<State<T>> {
    unitaries
        .iter()
        .enumerate()
        .try_fold(state.clone(), |acc, (i, u)| acc.apply_local(&[i + 1], u))
}

fn conjugate<T: Real>(u: &Operator<T>, p: &Operator<T>) -> Operator<T> {
    &(u * p) * &u.adjoint()
}

/// Single-qubit unitaries mapping the `sites`-qubit cluster state into
/// `V_[++]`, together with the mapped state.
pub fn cluster_to_bell_subspace<T: Real>(sites: usize) -> Result<ClusterMapping<T>> {
    if sites % 2 == 1 {
        return Err(Error::OddLength(sites));
    }
    let cluster = cluster_state::<T>(sites)?;
    let tol = T::zero_branch_tol();
    if let Some(found) = stabilizer_pattern(&cluster, sites)? {
        if (classify(&found.mapped)?.get(BellLabel::PLUS_PLUS) - T::one()).abs() <= tol {
            return Ok(found);
        }
    }
    brute_force(&cluster, sites)
}

fn stabilizer_pattern<T: Real>(cluster: &State<T>, sites: usize) -> Result<Option<ClusterMapping<T>>> {
    let Some(pairs) = stabilizer_pair::<T>(sites) else {
        return Ok(None);
    };
    let (x, z) = (pauli::x::<T>(), pauli::z::<T>());
    let group = clifford_group::<T>();
    let tol = T::check_tol();
    let mut unitaries = Vec::with_capacity(sites);
    for (p1, p2) in &pairs {
        let Some(u) = group
            .iter()
            .find(|u| same_up_to_phase(&conjugate(u, p1), &x, tol) && same_up_to_phase(&conjugate(u, p2), &z, tol))
        else {
            return Ok(None);
        };
        unitaries.push(u.clone());
    }
    let mapped = apply_all(cluster, &unitaries)?;
    let weights = classify(&mapped)?;
    let label = weights.argmax();
    if (weights.max_weight() - T::one()).abs() > T::zero_branch_tol() {
        return Ok(None);
    }
    // Z on one site flips the x-string sign, X flips the z-string sign.
    if !label.x.is_plus() {
        unitaries[0] = &pauli::z::<T>() * &unitaries[0];
    }
    if !label.z.is_plus() {
        unitaries[0] = &pauli::x::<T>() * &unitaries[0];
    }
    let mapped = apply_all(cluster, &unitaries)?;
    Ok(Some(ClusterMapping { unitaries, mapped }))
}

/// Exhaustive search over per-site Cliffords; feasible only for short chains.
fn brute_force<T: Real>(cluster: &State<T>, sites: usize) -> Result<ClusterMapping<T>> {
    const MAX_SEARCH_SITES: usize = 4;
    if sites > MAX_SEARCH_SITES {
        return Err(Error::UnsatisfiedMapping(format!(
            "stabilizer pattern failed and exhaustive search is limited to {MAX_SEARCH_SITES} sites"
        )));
    }
    let group = clifford_group::<T>();
    let total = group.len().pow(sites as u32);
    for code in 0..total {
        let mut rest = code;
        let unitaries: Vec<Operator<T>> = (0..sites)
            .map(|_| {
                let u = group[rest % group.len()].clone();
                rest /= group.len();
                u
            })
            .collect();
        let mapped = apply_all(cluster, &unitaries)?;
        if (classify(&mapped)?.get(BellLabel::PLUS_PLUS) - T::one()).abs() <= T::zero_branch_tol() {
            return Ok(ClusterMapping { unitaries, mapped });
        }
    }
    Err(Error::UnsatisfiedMapping(format!("no per-site Clifford maps the {sites}-site cluster state into V[++]")))
}
