use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Parities add in ℤ/2.
impl std::ops::Add for Parity {
    type Output = Parity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

/// A free generator of a graded-commutative algebra.
///
/// Two generators of cohomological degrees `p, q` and parities `σ, τ`
/// exchange with sign `(-1)^{pq + στ}`. `weight` feeds the optional
/// truncation of polynomial models.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u8,
    pub parity: Parity,
    #[serde(default = "default_weight")]
    pub weight: u32,
}

fn default_weight() -> u32 {
    1
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u8, parity: Parity) -> Self {
        Generator { name: name.into(), degree, parity, weight: 1 }
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }

    /// True when the generator squares to zero.
    pub fn anticommutes_with_itself(&self) -> bool {
        (self.degree as u32 + self.parity.bit() as u32) % 2 == 1
    }
}
