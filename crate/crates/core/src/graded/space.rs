use serde::{Deserialize, Serialize};
use std::ops::BitXor;

/// Z2 degree of a basis vector or an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn from_bit(bit: usize) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl BitXor for Parity {
    type Output = Parity;
    fn bitxor(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// A finite dimensional Z2-graded vector space, described by the parity of
/// each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    parities: Vec<Parity>,
}

impl GradedSpace {
    pub fn new(parities: Vec<Parity>) -> Self {
        assert!(!parities.is_empty(), "empty graded space");
        GradedSpace { parities }
    }

    /// The space with `n` even basis vectors followed by `m` odd ones.
    pub fn from_signature(n: usize, m: usize) -> Self {
        let mut parities = vec![Parity::Even; n];
        parities.extend(std::iter::repeat(Parity::Odd).take(m));
        GradedSpace::new(parities)
    }

    pub fn all_even(dim: usize) -> Self {
        GradedSpace::new(vec![Parity::Even; dim])
    }

    /// The one dimensional even space acting as the tensor unit.
    pub fn unit() -> Self {
        GradedSpace::all_even(1)
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn is_all_even(&self) -> bool {
        self.parities.iter().all(|p| *p == Parity::Even)
    }

    /// Tensor product space; index `(i, j)` maps to `i * other.dim() + j`,
    /// so the first factor is the slowest one.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for &p in &self.parities {
            for &q in &other.parities {
                parities.push(p ^ q);
            }
        }
        GradedSpace::new(parities)
    }

    /// `k`-fold tensor power; `k = 0` gives the tensor unit.
    pub fn tensor_power(&self, k: usize) -> GradedSpace {
        let mut out = GradedSpace::unit();
        for _ in 0..k {
            out = out.tensor(self);
        }
        out
    }

    pub fn tensor_all(factors: &[&GradedSpace]) -> GradedSpace {
        let mut out = GradedSpace::unit();
        for f in factors {
            out = out.tensor(f);
        }
        out
    }
}

/// Flattens a multi-index over `factors` into the row-major composite index.
pub fn encode_multi(factors: &[&GradedSpace], indices: &[usize]) -> usize {
    assert_eq!(factors.len(), indices.len());
    let mut flat = 0;
    for (f, &i) in factors.iter().zip(indices) {
        assert!(i < f.dim());
        flat = flat * f.dim() + i;
    }
    flat
}

/// Inverse of [`encode_multi`].
pub fn decode_multi(factors: &[&GradedSpace], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; factors.len()];
    for (slot, f) in factors.iter().enumerate().rev() {
        out[slot] = flat % f.dim();
        flat /= f.dim();
    }
    assert_eq!(flat, 0, "index out of range");
    out
}
