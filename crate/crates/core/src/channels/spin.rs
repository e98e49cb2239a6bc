use crate::qstate::Operator;
use crate::scalar::{c, Real};

/// Local spin magnitude of a chain site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalSpin {
    Half,
    One,
}

impl LocalSpin {
    pub fn dim(self) -> usize {
        match self {
            LocalSpin::Half => 2,
            LocalSpin::One => 3,
        }
    }

    /// `s(s+1)`.
    pub fn casimir<T: Real>(self) -> T {
        match self {
            LocalSpin::Half => T::lit(0.75),
            LocalSpin::One => T::lit(2.0),
        }
    }
}

/// `[Sx, Sy, Sz]` in the basis `m = s, s−1, …, −s`.
pub fn spin_operators<T: Real>(spin: LocalSpin) -> [Operator<T>; 3] {
    match spin {
        LocalSpin::Half => {
            let sx = Operator::real(&[&[0.0, 0.5], &[0.5, 0.0]]);
            let sy = Operator::from_rows(&[vec![c(0.0, 0.0), c(0.0, -0.5)], vec![c(0.0, 0.5), c(0.0, 0.0)]])
                .expect("2x2");
            let sz = Operator::real(&[&[0.5, 0.0], &[0.0, -0.5]]);
            [sx, sy, sz]
        }
        LocalSpin::One => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let sx = Operator::real(&[&[0.0, r, 0.0], &[r, 0.0, r], &[0.0, r, 0.0]]);
            let z = c(0.0, 0.0);
            let sy = Operator::from_rows(&[
                vec![z, c(0.0, -r), z],
                vec![c(0.0, r), z, c(0.0, -r)],
                vec![z, c(0.0, r), z],
            ])
            .expect("3x3");
            let sz = Operator::real(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, -1.0]]);
            [sx, sy, sz]
        }
    }
}

/// Two-site exchange `S_1·S_2`.
pub fn heisenberg_bond<T: Real>(spin: LocalSpin) -> Operator<T> {
    let ops = spin_operators::<T>(spin);
    let d = spin.dim();
    ops.iter().fold(Operator::zeros(d * d), |acc, s| &acc + &s.kron(s))
}
