//! The PBW property, decided twice: by the ten closed-form consistency
//! conditions and by reducing the unique overlap `x3 x2 x1` both ways.

use std::fmt;

use crate::ncpoly::{normal_form_traced, NcPoly, Word};
use crate::presentation::Presentation;
use crate::scalars::{pbw_condition_polys, Rational};

pub const RESIDUAL_LABELS: [&str; 10] = ["r11", "r12", "r13", "r14", "r15", "r16", "r17", "r18", "r19", "r20"];

/// The ten condition polynomials evaluated at `p`.
pub fn pbw_residuals(p: &Presentation) -> [Rational; 10] {
    let values = p.assignment();
    std::array::from_fn(|i| pbw_condition_polys()[i].eval(&values).expect("presentation assigns every symbol"))
}

/// The same ten values computed directly in rational arithmetic.
pub fn pbw_residuals_direct(p: &Presentation) -> [Rational; 10] {
    let [q1, q2, q3] = p.q();
    let [[a, b, c], [al, be, ga], [la, mu, nu]] = p.matrix();
    let [b1, b2, b3] = p.constants();
    let one = Rational::one();
    let q12 = q1 * q2;
    let q23 = q2 * q3;
    let alpha_term = (&one - q3) * al;
    let mu_q3al = mu + &(q3 * al);
    let b_q1ga = b + &(q1 * ga);
    let a_nu = a - nu;
    [
        &alpha_term - &((&one - q2) * mu),
        (&one - q3) * a - (&one - q1) * nu,
        (&one - q2) * b - (&one - q1) * ga,
        (&one - &q12) * la,
        (q1 - q3) * be,
        (&one - &q23) * c,
        (&alpha_term - mu) * a + &b_q1ga * la - nu * al + (&q12 - &one) * b3,
        &a_nu * be + q1 * ga * mu - q3 * al * b + (q1 - q3) * b2,
        (a + &((q1 - &one) * nu)) * ga + b * nu - &mu_q3al * c + (&one - &q23) * b1,
        -(&mu_q3al * b1) + &a_nu * b2 + &b_q1ga * b3,
    ]
}

/// The reduction of `x3 x2 x1` that starts with the prefix `x3 x2`, minus
/// the one that starts with the suffix `x2 x1`.
pub fn overlap_defect(p: &Presentation) -> NcPoly {
    let rhs = |k: u8, j: u8| {
        let rule = p.rule(k, j);
        let mut r = NcPoly::monomial(Word::new(vec![j, k]), rule.q);
        for (m, l) in rule.linear.into_iter().enumerate() {
            r.add_term(Word::gen(m as u8 + 1), l);
        }
        r.add_term(Word::empty(), rule.constant);
        r
    };
    let left = &rhs(3, 2) * &NcPoly::gen(1);
    let right = &NcPoly::gen(3) * &rhs(2, 1);
    let (left, _) = normal_form_traced(&left, p);
    let (right, _) = normal_form_traced(&right, p);
    &left - &right
}

pub fn is_pbw(p: &Presentation) -> bool {
    pbw_residuals(p).iter().all(Rational::is_zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    pub residuals: [Rational; 10],
    pub defect: NcPoly,
    pub is_pbw: bool,
}

impl PbwReport {
    pub fn new(p: &Presentation) -> Self {
        let residuals = pbw_residuals(p);
        let is_pbw = residuals.iter().all(Rational::is_zero);
        PbwReport { residuals, defect: overlap_defect(p), is_pbw }
    }

    /// The two deciders agree.
    pub fn consistent(&self) -> bool {
        self.is_pbw == self.defect.is_zero()
    }
}

impl fmt::Display for PbwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, r) in RESIDUAL_LABELS.iter().zip(&self.residuals) {
            writeln!(f, "{} = {}", label, r)?;
        }
        writeln!(f, "defect = {}", self.defect)?;
        write!(f, "pbw = {}", self.is_pbw)
    }
}
