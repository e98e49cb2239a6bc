use std::fmt;

use super::label::{BellLabel, LabelVector, Sign};
use crate::qstate::Operator;
use crate::scalar::Real;

type IntMatrix = [[i8; 2]; 2];

const X_MATRICES: [IntMatrix; 4] = [
    [[1, 0], [0, 1]],  // I
    [[0, 1], [1, 0]],  // σx
    [[-1, 0], [0, 1]], // −σz
    [[0, 1], [-1, 0]], // iσy
];

/// `sign · Xⁱ`, an element of the correction group `{±X⁰, ±X¹, ±X², ±X³}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedCorrection {
    pub index: u8,
    pub sign: Sign,
}

impl SignedCorrection {
    pub const IDENTITY: SignedCorrection = SignedCorrection { index: 0, sign: Sign::Plus };

    pub const fn new(sign: Sign, index: u8) -> Self {
        Self { index, sign }
    }

    pub const fn plus(index: u8) -> Self {
        Self { index, sign: Sign::Plus }
    }

    pub const fn minus(index: u8) -> Self {
        Self { index, sign: Sign::Minus }
    }

    fn int_matrix(self) -> IntMatrix {
        let s = self.sign.as_i8();
        let m = X_MATRICES[self.index as usize];
        [[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]]
    }

    fn from_int_matrix(m: IntMatrix) -> Self {
        for (index, x) in X_MATRICES.iter().enumerate() {
            if *x == m {
                return Self::plus(index as u8);
            }
            if x.iter().flatten().zip(m.iter().flatten()).all(|(a, b)| *a == -*b) {
                return Self::minus(index as u8);
            }
        }
        unreachable!("the correction group is closed under multiplication")
    }

    pub fn matrix<T: Real>(self) -> Operator<T> {
        let m = self.int_matrix();
        Operator::real(&[&[m[0][0] as f64, m[0][1] as f64], &[m[1][0] as f64, m[1][1] as f64]])
    }

    /// Matrix product `self · rhs`.
    pub fn then_after(self, rhs: SignedCorrection) -> SignedCorrection {
        let (a, b) = (self.int_matrix(), rhs.int_matrix());
        let mut m = [[0i8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::from_int_matrix(m)
    }

    pub fn inverse(self) -> SignedCorrection {
        // X⁰, X¹, X² are involutions; (X³)² = −I.
        if self.index == 3 {
            Self { index: 3, sign: self.sign.flip() }
        } else {
            self
        }
    }

    /// Same class up to sign.
    pub fn same_class(self, other: SignedCorrection) -> bool {
        self.index == other.index
    }
}

impl fmt::Display for SignedCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign.is_plus() { "+" } else { "-" };
        write!(f, "{s}X{}", self.index)
    }
}

/// Correction `X^{jk}_{pq}` left on the output qubit when `|v⟩ ⊗ |jk}` is
/// projected onto `|pq}` on the first two qubits. Rows are outcomes, columns
/// channels, both in the order `−−, −+, +−, ++`.
pub const CORRECTION_TABLE: [[SignedCorrection; 4]; 4] = {
    use SignedCorrection as C;
    [
        [C::minus(0), C::minus(1), C::minus(2), C::minus(3)],
        [C::plus(1), C::plus(0), C::minus(3), C::minus(2)],
        [C::plus(2), C::plus(3), C::plus(0), C::plus(1)],
        [C::minus(3), C::minus(2), C::plus(1), C::plus(0)],
    ]
};

pub fn correction(channel: BellLabel, outcome: BellLabel) -> SignedCorrection {
    CORRECTION_TABLE[outcome.index()][channel.index()]
}

/// Matrix product of the list, rightmost factor applied first.
///
/// # Panics
/// On an empty list.
pub fn compose(corrections: &[SignedCorrection]) -> SignedCorrection {
    let (first, rest) = corrections.split_first().expect("compose needs at least one correction");
    rest.iter().fold(*first, |acc, &c| acc.then_after(c))
}

/// Total correction for a channel in Bell subspace `subspace` measured with
/// `outcomes`: the ordered product `X_𝓛 ⋯ X_1` of per-pair corrections for the
/// representative channel `(++, …, ++, subspace)`. The class does not depend
/// on the representative chosen.
pub fn subspace_correction(subspace: BellLabel, outcomes: &LabelVector) -> SignedCorrection {
    let pairs = outcomes.len();
    let per_pair: Vec<SignedCorrection> = outcomes
        .iter()
        .enumerate()
        .map(|(i, &out)| {
            let channel = if i + 1 == pairs { subspace } else { BellLabel::PLUS_PLUS };
            correction(channel, out)
        })
        .rev()
        .collect();
    compose(&per_pair)
}

/// Same as [`subspace_correction`] for an explicit channel label vector.
pub fn chain_correction(channel: &LabelVector, outcomes: &LabelVector) -> SignedCorrection {
    assert_eq!(channel.len(), outcomes.len(), "channel and outcome vectors differ in length");
    let per_pair: Vec<SignedCorrection> =
        channel.iter().zip(outcomes.iter()).map(|(&c, &o)| correction(c, o)).rev().collect();
    compose(&per_pair)
}
