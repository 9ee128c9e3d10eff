//! Credence over centered worlds.
//!
//! A centered world pins down both the coin outcome and which awakening is
//! the current one: `H1` under Heads, `T1..TN` under Tails. Two constraints
//! fix the distribution:
//!
//! * indifference between the Tails awakenings, `P(T1) = ... = P(TN)`;
//! * learning that it is the first awakening leaves the coin at its
//!   objective chance, `P(H1 | H1 or T1) = h`, i.e. `P(H1) = h/(1-h) · P(T1)`.
//!
//! Normalising gives the weights below. Nothing here calls into
//! [`crate::analytic`]; the two routes are compared in tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::probability::{Probability, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CenteredWorld {
    /// Heads, the `n`th awakening (only `n = 1` exists).
    Heads(u32),
    /// Tails, the `n`th awakening.
    Tails(u32),
}

impl fmt::Display for CenteredWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenteredWorld::Heads(i) => write!(f, "H{i}"),
            CenteredWorld::Tails(i) => write!(f, "T{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenteredWorldDist {
    weights: BTreeMap<CenteredWorld, Probability>,
}

impl CenteredWorldDist {
    pub fn weight(&self, world: CenteredWorld) -> Option<&Probability> {
        self.weights.get(&world)
    }

    pub fn iter(&self) -> impl Iterator<Item = (CenteredWorld, &Probability)> {
        self.weights.iter().map(|(w, p)| (*w, p))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total weight on Heads worlds.
    pub fn heads_marginal(&self) -> Probability {
        let sum = self
            .weights
            .iter()
            .filter(|(w, _)| matches!(w, CenteredWorld::Heads(_)))
            .fold(Rational::zero(), |acc, (_, p)| acc + p.value());
        Probability::new(sum).expect("marginal of a distribution")
    }

    pub fn total(&self) -> Rational {
        self.weights
            .values()
            .fold(Rational::zero(), |acc, p| acc + p.value())
    }
}

/// Weights over `{H1, T1, ..., Tn}` for a coin with Heads chance `h`.
pub fn elga_centered_distribution(n: u32, h: &Probability) -> CenteredWorldDist {
    assert!(n >= 1, "need at least one awakening under Tails");
    let (heads, each_tails) = if h.is_one() {
        (Rational::one(), Rational::zero())
    } else {
        // P(H1) = ratio · P(T1); P(H1) + n·P(T1) = 1
        let ratio = h.value() / (Rational::one() - h.value());
        let tails = Rational::one() / (&ratio + Rational::from_integer(BigInt::from(n)));
        (ratio * &tails, tails)
    };

    let mut weights = BTreeMap::new();
    weights.insert(
        CenteredWorld::Heads(1),
        Probability::new(heads).expect("weight in [0, 1]"),
    );
    for i in 1..=n {
        weights.insert(
            CenteredWorld::Tails(i),
            Probability::new(each_tails.clone()).expect("weight in [0, 1]"),
        );
    }
    CenteredWorldDist { weights }
}
