//! Built-in catalog: the 44 three-generator algebras with PBW basis (eight
//! groups, by the shape of `Q`) and the five two-generator algebras.
//!
//! Entries are symbolic. Each of the fifteen parameter slots is a constant, a
//! free symbol, or determined by another symbol (`q2 = q1^-1`, `q3 = q1`).
//! Side constraints are kept verbatim as labels next to the polynomial that is
//! checked on instantiation. Claimed verdicts are recorded as published and
//! never derived here.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use super::{Presentation, PresentationError};
use crate::scalars::{Assignment, ParamPoly, ParamSymbol, Rational};

/// The published smoothness verdict of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimedVerdict {
    Smooth,
    NotSmooth,
    /// Left open.
    Unknown,
}

impl ClaimedVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimedVerdict::Smooth => "smooth",
            ClaimedVerdict::NotSmooth => "not_smooth",
            ClaimedVerdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for ClaimedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Const(Rational),
    Free(ParamSymbol),
    /// Equal to the inverse of another symbol.
    Inverse(ParamSymbol),
    /// Equal to another symbol.
    Same(ParamSymbol),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Zero,
    NonZero,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub label: &'static str,
    pub poly: ParamPoly,
    pub kind: ConstraintKind,
}

impl Constraint {
    fn new(label: &'static str, src: &str, kind: ConstraintKind) -> Self {
        Constraint {
            label,
            poly: ParamPoly::parse(src).expect("built-in constraint parses"),
            kind,
        }
    }

    pub fn holds(&self, values: &Assignment) -> bool {
        let v = self.poly.eval(values).expect("constraint symbols are all assigned");
        match self.kind {
            ConstraintKind::Zero => v.is_zero(),
            ConstraintKind::NonZero => !v.is_zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("entry `{entry}`: no value for free symbol `{symbol}`")]
    MissingSymbol { entry: &'static str, symbol: ParamSymbol },
    #[error("entry `{entry}`: `{symbol}` is not a free symbol")]
    NotFree { entry: &'static str, symbol: ParamSymbol },
    #[error("entry `{entry}`: {label} violated")]
    Violated { entry: &'static str, label: &'static str },
    #[error("entry `{entry}`: {source}")]
    Presentation { entry: &'static str, source: PresentationError },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Lower-snake key used on the command line.
    pub name: &'static str,
    /// Conventional name.
    pub display: &'static str,
    pub group: u8,
    /// The group's conditions on `Q`, verbatim.
    pub header: &'static str,
    pub slots: [Slot; 15],
    pub constraints: Vec<Constraint>,
    pub claimed: ClaimedVerdict,
    defaults: Vec<(ParamSymbol, Rational)>,
    pub note: Option<&'static str>,
}

impl CatalogEntry {
    pub fn slot(&self, s: ParamSymbol) -> &Slot {
        &self.slots[s.index()]
    }

    pub fn free_symbols(&self) -> Vec<ParamSymbol> {
        self.slots
            .iter()
            .filter_map(|slot| match slot {
                Slot::Free(s) => Some(*s),
                _ => None,
            })
            .collect()
    }

    /// The generic sample value of a free symbol: `q1 = 2, q2 = 3, q3 = 5`,
    /// matrix symbols `1`, unless the entry overrides it.
    pub fn default_value(&self, s: ParamSymbol) -> Rational {
        if let Some((_, v)) = self.defaults.iter().find(|(d, _)| *d == s) {
            return v.clone();
        }
        match s {
            ParamSymbol::Q1 => Rational::from(2),
            ParamSymbol::Q2 => Rational::from(3),
            ParamSymbol::Q3 => Rational::from(5),
            _ => Rational::one(),
        }
    }

    pub fn default_assignment(&self) -> Assignment {
        self.free_symbols().into_iter().map(|s| (s, self.default_value(s))).collect()
    }

    /// Resolves every slot under `assignment` (which must cover exactly the
    /// free symbols) and checks all side constraints.
    pub fn instantiate(&self, assignment: &Assignment) -> Result<Presentation, CatalogError> {
        let free = self.free_symbols();
        if let Some(&s) = assignment.keys().find(|s| !free.contains(s)) {
            return Err(CatalogError::NotFree { entry: self.name, symbol: s });
        }
        if let Some(&s) = free.iter().find(|s| !assignment.contains_key(s)) {
            return Err(CatalogError::MissingSymbol { entry: self.name, symbol: s });
        }
        let presentation_err = |source| CatalogError::Presentation { entry: self.name, source };
        let mut values = Assignment::new();
        for s in ParamSymbol::ALL {
            let v = match self.slot(s) {
                Slot::Const(r) => r.clone(),
                Slot::Free(f) => assignment[f].clone(),
                Slot::Same(f) => assignment[f].clone(),
                Slot::Inverse(f) => assignment[f]
                    .checked_inv()
                    .ok_or_else(|| presentation_err(PresentationError::ZeroQ { index: f.index() + 1 }))?,
            };
            values.insert(s, v);
        }
        if let Some(i) = (0..3).find(|&i| values[&ParamSymbol::ALL[i]].is_zero()) {
            return Err(presentation_err(PresentationError::ZeroQ { index: i + 1 }));
        }
        for c in &self.constraints {
            if !c.holds(&values) {
                return Err(CatalogError::Violated { entry: self.name, label: c.label });
            }
        }
        Presentation::from_assignment(&values).map_err(presentation_err)
    }

    /// Instantiation with the generic sample, after overriding some free symbols.
    pub fn instantiate_with(&self, overrides: &[(ParamSymbol, Rational)]) -> Result<Presentation, CatalogError> {
        let mut asg = self.default_assignment();
        for (s, v) in overrides {
            asg.insert(*s, v.clone());
        }
        self.instantiate(&asg)
    }

    pub fn instantiate_default(&self) -> Presentation {
        self.instantiate(&self.default_assignment())
            .expect("generic sample satisfies every side constraint")
    }
}

/// One of the five two-generator algebras `k[x1,x2; q,a,b,c]`, relation
/// `x2 x1 - q x1 x2 = a x1 + b x2 + c`.
#[derive(Debug, Clone)]
pub struct TwoGenEntry {
    pub name: &'static str,
    pub display: &'static str,
    /// `None` when `q` is free with `q ∉ {0, 1}`.
    pub q: Option<Rational>,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub claimed: ClaimedVerdict,
}

impl TwoGenEntry {
    /// `(q, a, b, c)` with a free `q` set to `q` (default 2).
    pub fn params(&self, q: Option<Rational>) -> Result<[Rational; 4], CatalogError> {
        let q = match (&self.q, q) {
            (Some(fixed), None) => fixed.clone(),
            (Some(_), Some(_)) => return Err(CatalogError::NotFree { entry: self.name, symbol: ParamSymbol::Q1 }),
            (None, v) => {
                let v = v.unwrap_or_else(|| Rational::from(2));
                if v.is_zero() || v.is_one() {
                    return Err(CatalogError::Violated { entry: self.name, label: "q not in {0, 1}" });
                }
                v
            }
        };
        Ok([q, self.a.clone(), self.b.clone(), self.c.clone()])
    }
}

struct Q {
    header: &'static str,
    slots: [Slot; 3],
    constraints: Vec<Constraint>,
}

use ConstraintKind::{NonZero, Zero};
use ParamSymbol as S;

fn one() -> Slot {
    Slot::Const(Rational::one())
}

fn group_q(group: u8) -> Q {
    match group {
        1 => Q { header: "q1 = q2 = q3 = 1", slots: [one(), one(), one()], constraints: vec![] },
        2 => Q {
            header: "q1 != 1 and q2 = q3 = 1",
            slots: [Slot::Free(S::Q1), one(), one()],
            constraints: vec![Constraint::new("q1 != 1", "q1 - 1", NonZero)],
        },
        3 => Q {
            header: "q1 != 1, q2 != 1 and q3 = 1",
            slots: [Slot::Free(S::Q1), Slot::Free(S::Q2), one()],
            constraints: vec![
                Constraint::new("q1 != 1", "q1 - 1", NonZero),
                Constraint::new("q2 != 1", "q2 - 1", NonZero),
            ],
        },
        4 => Q {
            header: "q1 - q3 = 0 and 1 - q1q2 = 0",
            slots: [Slot::Free(S::Q1), Slot::Inverse(S::Q1), Slot::Same(S::Q1)],
            constraints: vec![
                Constraint::new("q1 - q3 = 0", "q1 - q3", Zero),
                Constraint::new("1 - q1q2 = 0", "1 - q1*q2", Zero),
            ],
        },
        5 => Q {
            header: "q1 - q3 = 0 and 1 - q1q2 != 0",
            slots: [Slot::Free(S::Q1), Slot::Free(S::Q2), Slot::Same(S::Q1)],
            constraints: vec![
                Constraint::new("q1 - q3 = 0", "q1 - q3", Zero),
                Constraint::new("1 - q1q2 != 0", "1 - q1*q2", NonZero),
            ],
        },
        6 => Q {
            header: "q1 - q3 != 0, 1 - q1q2 = 0 and 1 - q2q3 != 0",
            slots: [Slot::Free(S::Q1), Slot::Inverse(S::Q1), Slot::Free(S::Q3)],
            constraints: vec![
                Constraint::new("q1 - q3 != 0", "q1 - q3", NonZero),
                Constraint::new("1 - q1q2 = 0", "1 - q1*q2", Zero),
                Constraint::new("1 - q2q3 != 0", "1 - q2*q3", NonZero),
            ],
        },
        7 => Q {
            header: "q1 - q3 != 0, 1 - q1q2 != 0 and 1 - q2q3 = 0",
            slots: [Slot::Free(S::Q1), Slot::Free(S::Q2), Slot::Inverse(S::Q2)],
            constraints: vec![
                Constraint::new("q1 - q3 != 0", "q1 - q3", NonZero),
                Constraint::new("1 - q1q2 != 0", "1 - q1*q2", NonZero),
                Constraint::new("1 - q2q3 = 0", "1 - q2*q3", Zero),
            ],
        },
        8 => Q {
            header: "q1 - q3 != 0, 1 - q1q2 != 0 and 1 - q2q3 != 0",
            slots: [Slot::Free(S::Q1), Slot::Free(S::Q2), Slot::Free(S::Q3)],
            constraints: vec![
                Constraint::new("q1 - q3 != 0", "q1 - q3", NonZero),
                Constraint::new("1 - q1q2 != 0", "1 - q1*q2", NonZero),
                Constraint::new("1 - q2q3 != 0", "1 - q2*q3", NonZero),
            ],
        },
        _ => unreachable!("groups are numbered 1 to 8"),
    }
}

struct Builder(CatalogEntry);

fn entry(name: &'static str, display: &'static str, group: u8, claimed: ClaimedVerdict) -> Builder {
    let q = group_q(group);
    let zero = || Slot::Const(Rational::zero());
    let mut slots: [Slot; 15] = std::array::from_fn(|_| zero());
    for (i, s) in q.slots.into_iter().enumerate() {
        slots[i] = s;
    }
    Builder(CatalogEntry {
        name,
        display,
        group,
        header: q.header,
        slots,
        constraints: q.constraints,
        claimed,
        defaults: vec![],
        note: None,
    })
}

impl Builder {
    fn a(mut self, m: [[i64; 3]; 3]) -> Self {
        for (r, row) in m.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                self.0.slots[3 + 3 * r + c] = Slot::Const(Rational::from(v));
            }
        }
        self
    }

    fn b(mut self, v: [i64; 3]) -> Self {
        for (i, &x) in v.iter().enumerate() {
            self.0.slots[12 + i] = Slot::Const(Rational::from(x));
        }
        self
    }

    fn free(mut self, s: ParamSymbol) -> Self {
        self.0.slots[s.index()] = Slot::Free(s);
        self
    }

    fn with_q(mut self, s: ParamSymbol, slot: Slot) -> Self {
        self.0.slots[s.index()] = slot;
        self
    }

    fn constraint(mut self, label: &'static str, src: &str, kind: ConstraintKind) -> Self {
        self.0.constraints.push(Constraint::new(label, src, kind));
        self
    }

    fn default(mut self, s: ParamSymbol, v: i64) -> Self {
        self.0.defaults.push((s, Rational::from(v)));
        self
    }

    fn note(mut self, n: &'static str) -> Self {
        self.0.note = Some(n);
        self
    }

    fn done(self) -> CatalogEntry {
        self.0
    }
}

const Z: [[i64; 3]; 3] = [[0; 3]; 3];

fn build_catalog() -> Vec<CatalogEntry> {
    use ClaimedVerdict::{NotSmooth as Star, Smooth as Tick, Unknown as Open};
    let f_mat = [[0, 0, 1], [0, 1, 0], [0, 0, 0]];
    let c_only = [[0, 0, 1], [0; 3], [0; 3]];
    let lambda_only = [[0; 3], [0; 3], [1, 0, 0]];
    let beta_only = [[0; 3], [0, 1, 0], [0; 3]];
    let e_inv = |b: Builder| {
        b.with_q(S::Q2, Slot::Inverse(S::Q1))
            .constraint("q2 = q1^-1", "q1*q2 - 1", Zero)
    };
    vec![
        // Lie type
        entry("polynomial", "k[x1,x2,x3]", 1, Tick).a(Z).b([0; 3]).done(),
        entry("u_sl2", "U(sl2(k))", 1, Star).a([[0, 0, -1], [2, 0, 0], [0, -2, 0]]).done(),
        entry("u_h3", "U(H3)", 1, Star).a([[0, 0, -1], [0; 3], [0; 3]]).done(),
        entry("u_n_c1", "U(N)/(c-1)", 1, Star).a([[0, 0, -1], [0; 3], [0; 3]]).b([0, 0, -1]).done(),
        entry("lie_x1x2_x2", "k<x1,x2,x3 | [x1,x2]=x2>", 1, Tick).a([[0, -1, 0], [0; 3], [0; 3]]).done(),
        entry("u_m_c1", "U(M)/(c-1)", 1, Tick).a([[0, -1, 0], [0; 3], [0; 3]]).b([0, -1, 0]).done(),
        // q1 != 1, q2 = q3 = 1
        entry("a1", "A1", 2, Tick)
            .a([[0; 3], [1, 0, 0], [0, 0, 0]])
            .free(S::Mu)
            .constraint("mu != -1", "mu + 1", NonZero)
            .done(),
        entry("a2", "A2", 2, Tick).a([[0; 3], [0; 3], [0, 1, 0]]).done(),
        entry("b1", "B1", 2, Tick).done(),
        entry("b2", "B2", 2, Tick)
            .b([1, 0, 0])
            .note("same A as B1 with B = (1,0,0); published as smooth")
            .done(),
        entry("b3", "B3", 2, Star).a(c_only).done(),
        entry("b4", "B4", 2, Star).a(c_only).b([1, 0, 0]).done(),
        entry("c1", "C1", 2, Tick).a([[0; 3], [1, 0, 0], [0, -1, 0]]).done(),
        entry("c2", "C2", 2, Star).a([[0, 0, 1], [1, 0, 0], [0, -1, 0]]).b([1, 0, 0]).done(),
        entry("d1", "D1", 2, Open)
            .a([[0; 3], [1, 0, 0], [0, -1, 0]])
            .b([1, 0, 0])
            .note("A as C1 with B = (1,0,0) as B2; recorded as published")
            .done(),
        entry("d2", "D2", 2, Star)
            .a([[0, 0, 1], [1, 0, 0], [0, -1, 0]])
            .free(S::B1)
            .constraint("b1 != 1", "b1 - 1", NonZero)
            .default(S::B1, 2)
            .done(),
        // q1 != 1, q2 != 1, q3 = 1
        entry("quantum_q1q2_1", "A^3_(q1,q2,1)", 3, Tick)
            .constraint("q1q2 != 1", "q1*q2 - 1", NonZero)
            .done(),
        e_inv(entry("e1", "E1", 3, Tick)).done(),
        e_inv(entry("e2", "E2", 3, Tick)).b([0, 0, 1]).done(),
        e_inv(entry("e3", "E3", 3, Star)).a(lambda_only).done(),
        e_inv(entry("e4", "E4", 3, Star)).a(lambda_only).b([0, 0, 1]).done(),
        // q1 - q3 = 0, 1 - q1q2 = 0
        entry("f1", "F1", 4, Star)
            .a([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
            .free(S::B1)
            .free(S::B2)
            .free(S::B3)
            .done(),
        entry("f2", "F2", 4, Star).a(f_mat).free(S::B1).free(S::B2).done(),
        entry("f3", "F3", 4, Star).a(f_mat).b([0, 0, 1]).free(S::B1).free(S::B2).done(),
        entry("f4", "F4", 4, Star).a(c_only).free(S::B1).done(),
        entry("f5", "F5", 4, Star).a(c_only).b([0, 1, 0]).free(S::B1).done(),
        entry("f6", "F6", 4, Star).a(c_only).b([0, 1, 1]).free(S::B1).done(),
        entry("f7", "F7", 4, Tick).done(),
        entry("f8", "F8", 4, Tick).b([1, 0, 0]).done(),
        entry("f9", "F9", 4, Tick).b([1, 1, 0]).done(),
        entry("f10", "F10", 4, Tick).b([1, 1, 1]).done(),
        // q1 - q3 = 0, 1 - q1q2 != 0
        entry("g1", "G1", 5, Tick).done(),
        entry("g2", "G2", 5, Tick)
            .b([0, 1, 0])
            .note("sub-case header does not state whether q2 = 1 is admitted")
            .done(),
        entry("g3", "G3", 5, Star).a(beta_only).done(),
        entry("g4", "G4", 5, Star).a(beta_only).b([0, 1, 0]).done(),
        // q1 - q3 != 0, 1 - q1q2 = 0, 1 - q2q3 != 0
        entry("h1", "H1", 6, Tick).done(),
        entry("h2", "H2", 6, Tick).b([0, 0, 1]).done(),
        entry("h3", "H3", 6, Star).a(lambda_only).done(),
        entry("h4", "H4", 6, Star).a(lambda_only).b([0, 0, 1]).done(),
        // q1 - q3 != 0, 1 - q1q2 != 0, 1 - q2q3 = 0
        entry("i1", "I1", 7, Tick).done(),
        entry("i2", "I2", 7, Tick).b([1, 0, 0]).done(),
        entry("i3", "I3", 7, Star).a(c_only).done(),
        entry("i4", "I4", 7, Star).a(c_only).b([1, 0, 0]).done(),
        // generic Q
        entry("quantum_space", "A^3_Q", 8, Tick).done(),
    ]
}

fn build_two_gen() -> Vec<TwoGenEntry> {
    let r = Rational::from;
    let e = |name, display, q: Option<i64>, a, b, c, claimed| TwoGenEntry {
        name,
        display,
        q: q.map(r),
        a: r(a),
        b: r(b),
        c: r(c),
        claimed,
    };
    use ClaimedVerdict::*;
    vec![
        e("poly2", "k[x1,x2]", Some(1), 0, 0, 0, Smooth),
        // x1 x2 - x2 x1 = 1
        e("weyl", "A1(k)", Some(1), 0, 0, -1, Smooth),
        e("u_n2", "U(n2)", Some(1), 1, 0, 0, Smooth),
        e("quantum_plane", "O_q(k)", None, 0, 0, 0, Smooth),
        e("quantum_weyl", "A1(q)", None, 0, 0, 1, Unknown),
    ]
}

/// The 44 three-generator entries in group order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// The five two-generator entries.
pub fn two_generator_catalog() -> &'static [TwoGenEntry] {
    static TWO: OnceLock<Vec<TwoGenEntry>> = OnceLock::new();
    TWO.get_or_init(build_two_gen)
}

pub fn find_entry(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name)
}

pub fn find_two_gen(name: &str) -> Option<&'static TwoGenEntry> {
    two_generator_catalog().iter().find(|e| e.name == name)
}
