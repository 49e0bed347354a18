use std::fmt;

use gaudin_core::{rat, Family, Rat};

use crate::{Result, WError};

/// The Lie type behind a character ring or a classical W-algebra: `gl_N` (with `n = N`),
/// `o_{2n+1}`, `sp_{2n}` or `o_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub n: usize,
}

impl CartanType {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(WError::InvalidType(format!("{family} needs n ≥ 1")));
        }
        Ok(CartanType { family, n })
    }

    pub fn gl(big_n: usize) -> Result<Self> {
        Self::new(Family::A, big_n)
    }

    pub fn b(n: usize) -> Result<Self> {
        Self::new(Family::B, n)
    }

    pub fn c(n: usize) -> Result<Self> {
        Self::new(Family::C, n)
    }

    pub fn d(n: usize) -> Result<Self> {
        Self::new(Family::D, n)
    }

    /// Matrix size `N`.
    pub fn big_n(&self) -> usize {
        match self.family {
            Family::B => 2 * self.n + 1,
            Family::A => self.n,
            _ => 2 * self.n,
        }
    }

    /// Number of free symbols `λ_i(a)` and of variables `μ_i^(r)` per `r`.
    pub fn vars(&self) -> usize {
        self.n
    }

    /// Number of screening operators.
    pub fn screens(&self) -> usize {
        match self.family {
            Family::A => self.n - 1,
            _ => self.n,
        }
    }

    /// `κ = N/2 − 1` (orthogonal) or `N/2 + 1` (symplectic).
    pub fn kappa(&self) -> Rat {
        let half = rat(self.big_n() as i64, 2);
        match self.family {
            Family::C => half + rat(1, 1),
            _ => half - rat(1, 1),
        }
    }

    /// Shift between consecutive `σ_i` arguments in the defining relations.
    pub fn sigma_step(&self, color: usize) -> Rat {
        if self.family == Family::A || color + 1 < self.n {
            return rat(1, 1);
        }
        match self.family {
            Family::B => rat(1, 2),
            Family::C => rat(2, 1),
            _ => rat(1, 1),
        }
    }

    /// B ↔ C; A and D are self-dual.
    pub fn dual(&self) -> CartanType {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        CartanType { family, n: self.n }
    }

    pub(crate) fn check_color(&self, color: usize) -> Result<()> {
        if color >= self.screens() {
            return Err(WError::InvalidColor { color, screens: self.screens() });
        }
        Ok(())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "gl_{}", self.n),
            Family::B => write!(f, "o_{}", 2 * self.n + 1),
            Family::C => write!(f, "sp_{}", 2 * self.n),
            Family::D => write!(f, "o_{}", 2 * self.n),
        }
    }
}
