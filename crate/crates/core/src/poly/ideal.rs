use std::fmt;

use super::{Polynomial, Ring};
use crate::error::Result;

/// A finitely generated ideal `<f1, ..., fr>`.
///
/// The generator list may contain zero polynomials; algorithms drop them.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            ring.ensure_same(g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![Polynomial::zero(ring)],
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![Polynomial::one(ring)],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn nonzero_gens(&self) -> Vec<Polynomial> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// True if every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero() || g.num_terms() == 1)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.ensure_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal {
            ring: self.ring.clone(),
            gens,
        })
    }

    pub fn with_generator(&self, g: Polynomial) -> Result<Ideal> {
        self.ring.ensure_same(g.ring())?;
        let mut gens = self.gens.clone();
        gens.push(g);
        Ok(Ideal {
            ring: self.ring.clone(),
            gens,
        })
    }

    pub fn embed(&self, target: &Ring) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal[{}]{self}", self.ring)
    }
}
