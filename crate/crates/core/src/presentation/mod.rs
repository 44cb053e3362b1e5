//! Presentations `k[x1,x2,x3; Q, A, B]` with relations
//!
//! ```text
//! x2 x1 - q1 x1 x2 = a x1      + b x2    + c x3     + b1
//! x3 x1 - q2 x1 x3 = alpha x1  + beta x2 + gamma x3 + b2
//! x3 x2 - q3 x2 x3 = lambda x1 + mu x2   + nu x3    + b3
//! ```
//!
//! together with the `biquadratic v1` text format and the built-in catalog.

mod catalog;
mod format;

pub use catalog::{
    catalog, find_entry, find_two_gen, two_generator_catalog, CatalogEntry, CatalogError,
    ClaimedVerdict, Constraint, ConstraintKind, Slot, TwoGenEntry,
};
pub use format::{parse, render, ParseError};

use thiserror::Error;

use crate::scalars::{Assignment, ParamSymbol, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("q must be nonzero (q{index} = 0)")]
    ZeroQ { index: usize },
}

/// The fifteen parameters of a three-generator bi-quadratic algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    q: [Rational; 3],
    a: [[Rational; 3]; 3],
    b: [Rational; 3],
}

/// Right-hand side data of one rewrite rule `x_j x_i -> q x_i x_j + l1 x1 + l2 x2 + l3 x3 + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub q: Rational,
    pub linear: [Rational; 3],
    pub constant: Rational,
}

impl Presentation {
    pub fn new(q: [Rational; 3], a: [[Rational; 3]; 3], b: [Rational; 3]) -> Result<Self, PresentationError> {
        if let Some(i) = q.iter().position(Rational::is_zero) {
            return Err(PresentationError::ZeroQ { index: i + 1 });
        }
        Ok(Presentation { q, a, b })
    }

    pub fn from_ints(q: [i64; 3], a: [[i64; 3]; 3], b: [i64; 3]) -> Result<Self, PresentationError> {
        Presentation::new(
            q.map(Rational::from),
            a.map(|row| row.map(Rational::from)),
            b.map(Rational::from),
        )
    }

    /// The commutative polynomial ring `k[x1,x2,x3]`.
    pub fn commutative() -> Self {
        Presentation::from_ints([1, 1, 1], [[0; 3]; 3], [0; 3]).unwrap()
    }

    /// The quantum space with the given `q` and `A = 0`, `B = 0`.
    pub fn quantum_space(q: [Rational; 3]) -> Result<Self, PresentationError> {
        Presentation::new(q, Default::default(), Default::default())
    }

    pub fn from_assignment(values: &Assignment) -> Result<Self, PresentationError> {
        let get = |s: ParamSymbol| values.get(&s).cloned().unwrap_or_default();
        use ParamSymbol::*;
        Presentation::new(
            [get(Q1), get(Q2), get(Q3)],
            [
                [get(A), get(B), get(C)],
                [get(Alpha), get(Beta), get(Gamma)],
                [get(Lambda), get(Mu), get(Nu)],
            ],
            [get(B1), get(B2), get(B3)],
        )
    }

    pub fn q(&self) -> &[Rational; 3] {
        &self.q
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.a
    }

    pub fn constants(&self) -> &[Rational; 3] {
        &self.b
    }

    pub fn param(&self, s: ParamSymbol) -> &Rational {
        let i = s.index();
        match i {
            0..=2 => &self.q[i],
            3..=11 => &self.a[(i - 3) / 3][(i - 3) % 3],
            _ => &self.b[i - 12],
        }
    }

    /// All fifteen values keyed by symbol.
    pub fn assignment(&self) -> Assignment {
        ParamSymbol::ALL.iter().map(|&s| (s, self.param(s).clone())).collect()
    }

    /// Returns a copy with one parameter replaced.
    pub fn with(&self, s: ParamSymbol, value: Rational) -> Result<Self, PresentationError> {
        let mut asg = self.assignment();
        asg.insert(s, value);
        Presentation::from_assignment(&asg)
    }

    /// Rule index of the pair `x_j x_i` with `j > i` (1-based generators):
    /// 0 for `x2 x1`, 1 for `x3 x1`, 2 for `x3 x2`.
    pub fn rule_index(j: u8, i: u8) -> usize {
        match (j, i) {
            (2, 1) => 0,
            (3, 1) => 1,
            (3, 2) => 2,
            _ => panic!("no rule for x{} x{}", j, i),
        }
    }

    /// The rewrite rule for `x_j x_i`, `j > i`.
    pub fn rule(&self, j: u8, i: u8) -> Rule {
        let r = Presentation::rule_index(j, i);
        Rule {
            q: self.q[r].clone(),
            linear: self.a[r].clone(),
            constant: self.b[r].clone(),
        }
    }
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let row = |r: &[Rational; 3]| format!("[{}, {}, {}]", r[0], r[1], r[2]);
        write!(
            f,
            "Presentation {{ q: {}, A: [{}, {}, {}], B: {} }}",
            row(&self.q),
            row(&self.a[0]),
            row(&self.a[1]),
            row(&self.a[2]),
            row(&self.b)
        )
    }
}
