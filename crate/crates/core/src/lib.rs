//! Exact computation with bi-quadratic algebras on three generators.
//!
//! A presentation `k[x1,x2,x3; Q, A, B]` is given by
//!
//! ```text
//! x2 x1 - q1 x1 x2 = a x1      + b x2    + c x3     + b1
//! x3 x1 - q2 x1 x3 = alpha x1  + beta x2 + gamma x3 + b2
//! x3 x2 - q3 x2 x3 = lambda x1 + mu x2   + nu x3    + b3
//! ```
//!
//! over the rationals. The crate reduces words to PBW normal form, decides the
//! PBW property both by closed-form conditions and by resolving the overlap
//! `x3 x2 x1`, classifies differential smoothness, and builds and checks the
//! three-dimensional integrable calculus on the smooth cases.
//!
//! ```
//! use biquad::ncpoly::{normal_form, NcPoly, Word};
//! use biquad::presentation::find_entry;
//! use biquad::smooth::{classify, Mode};
//!
//! let sl2 = find_entry("u_sl2").unwrap().instantiate_default();
//! let x2x1 = NcPoly::word(Word::parse("x2 x1").unwrap());
//! assert_eq!(normal_form(&x2x1, &sl2).to_string(), "x1*x2 - x3");
//! assert_eq!(classify(&sl2, Mode::Shift).unwrap().label(), "not_smooth");
//! ```

pub mod calculus;
pub mod cli;
pub mod ncpoly;
pub mod pbw;
pub mod presentation;
pub mod sample;
pub mod scalars;
pub mod smooth;
