use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_bool(plus: bool) -> Self {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        Self::from_bool(!self.is_plus())
    }

    pub fn times(self, other: Sign) -> Sign {
        Self::from_bool(self == other)
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Eigenvalue pair `(x, z)` of `σx⊗σx` and `σz⊗σz` naming a Bell state, or
/// of the string operators naming a Bell subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellLabel {
    pub x: Sign,
    pub z: Sign,
}

impl BellLabel {
    /// Canonical order `−−, −+, +−, ++`; position equals [`BellLabel::index`].
    pub const ALL: [BellLabel; 4] = [
        BellLabel { x: Sign::Minus, z: Sign::Minus },
        BellLabel { x: Sign::Minus, z: Sign::Plus },
        BellLabel { x: Sign::Plus, z: Sign::Minus },
        BellLabel { x: Sign::Plus, z: Sign::Plus },
    ];

    pub const SINGLET: BellLabel = BellLabel { x: Sign::Minus, z: Sign::Minus };
    pub const PLUS_PLUS: BellLabel = BellLabel { x: Sign::Plus, z: Sign::Plus };

    pub const fn new(x: Sign, z: Sign) -> Self {
        Self { x, z }
    }

    /// Index of the correction `Xⁱ` with `|kl} = (I ⊗ Xⁱ) v⁰`.
    pub fn index(self) -> usize {
        2 * self.x.is_plus() as usize + self.z.is_plus() as usize
    }

    pub fn from_index(index: usize) -> Self {
        Self::ALL[index & 3]
    }

    /// Entrywise sign product.
    pub fn times(self, other: BellLabel) -> BellLabel {
        BellLabel { x: self.x.times(other.x), z: self.z.times(other.z) }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.x.symbol(), self.z.symbol())
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |ch: char| match ch {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("bad Bell label {s:?}"))),
        };
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => Ok(BellLabel { x: parse(a)?, z: parse(b)? }),
            _ => Err(Error::Parse(format!("bad Bell label {s:?}"))),
        }
    }
}

/// Labels of a tensor product of Bell pairs, one per pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelVector(Vec<BellLabel>);

impl LabelVector {
    pub fn new(labels: Vec<BellLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Validation("a label vector needs at least one pair".into()));
        }
        Ok(Self(labels))
    }

    pub fn uniform(label: BellLabel, pairs: usize) -> Result<Self> {
        Self::new(vec![label; pairs])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[BellLabel] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BellLabel> {
        self.0.iter()
    }

    /// Pairwise product of all labels: the Bell subspace of the tensored state.
    pub fn product(&self) -> BellLabel {
        self.0.iter().fold(BellLabel::PLUS_PLUS, |acc, &l| acc.times(l))
    }

    /// All `4^pairs` label vectors; the first pair varies slowest.
    pub fn enumerate(pairs: usize) -> impl Iterator<Item = LabelVector> {
        let total = 4usize.pow(pairs as u32);
        (0..total).map(move |mut code| {
            let mut labels = vec![BellLabel::SINGLET; pairs];
            for slot in labels.iter_mut().rev() {
                *slot = BellLabel::from_index(code % 4);
                code /= 4;
            }
            LabelVector(labels)
        })
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
