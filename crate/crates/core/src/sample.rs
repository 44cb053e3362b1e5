//! Seeded random rationals and presentations.
//!
//! Rationals have numerators in `[-5, 5]` and denominators in `[1, 4]`.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ncpoly::{pbw_monomials, NcPoly};
use crate::pbw::is_pbw;
use crate::presentation::Presentation;
use crate::scalars::{ParamSymbol, Rational};
use crate::smooth::{classify, reparametrize, Mode};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut Rng) -> Rational {
    Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut Rng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// All fifteen parameters drawn independently; `q` redrawn until nonzero.
pub fn uniform_presentation(rng: &mut Rng) -> Presentation {
    let q = [nonzero_rational(rng), nonzero_rational(rng), nonzero_rational(rng)];
    let a: [[Rational; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rational(rng)));
    let b = [rational(rng), rational(rng), rational(rng)];
    Presentation::new(q, a, b).expect("q is nonzero")
}

/// Each `q_i` is 1 with probability 1/2 and every other parameter is zero
/// with probability 2/3, so that the degenerate cases the catalog is made
/// of are actually reached.
pub fn sparse_presentation(rng: &mut Rng) -> Presentation {
    let mut p = Presentation::commutative();
    for s in ParamSymbol::ALL {
        let v = if s.index() < 3 {
            if rng.gen_bool(0.5) {
                Rational::one()
            } else {
                nonzero_rational(rng)
            }
        } else if rng.gen_ratio(2, 3) {
            Rational::zero()
        } else {
            nonzero_rational(rng)
        };
        p = p.with(s, v).expect("q is nonzero");
    }
    p
}

pub fn shift(rng: &mut Rng) -> [Rational; 3] {
    [rational(rng), rational(rng), rational(rng)]
}

pub fn scaling(rng: &mut Rng) -> [Rational; 3] {
    [nonzero_rational(rng), nonzero_rational(rng), nonzero_rational(rng)]
}

/// A PBW presentation: a sparse PBW sample moved by a random affine change
/// of generators.
pub fn pbw_presentation(rng: &mut Rng) -> Presentation {
    loop {
        let p = sparse_presentation(rng);
        if is_pbw(&p) {
            let (s, t) = (shift(rng), scaling(rng));
            return reparametrize(&p, &s, &t).expect("scaling is nonzero");
        }
    }
}

/// A PBW presentation that shift mode classifies as smooth.
pub fn smooth_presentation(rng: &mut Rng) -> Presentation {
    loop {
        let p = pbw_presentation(rng);
        if classify(&p, Mode::Shift).map(|v| v.is_smooth()).unwrap_or(false) {
            return p;
        }
    }
}

/// A combination of one to three PBW monomials of degree `<= max_degree`.
pub fn ncpoly(rng: &mut Rng, max_degree: usize) -> NcPoly {
    let mons = pbw_monomials(max_degree);
    let n = rng.gen_range(1..=3);
    NcPoly::from_terms((0..n).map(|_| (mons[rng.gen_range(0..mons.len())].clone(), nonzero_rational(rng))))
}
