#![allow(dead_code)]

use cornerjet::{q, Jet1Q, Jet2Q, LaurentJet2Q, LaurentJetQ, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| ≤ num_max`, `1 ≤ d ≤ den_max`.
pub fn rational(r: &mut ChaCha8Rng, num_max: i64, den_max: i64) -> Rational {
    Rational::new(r.gen_range(-num_max..=num_max).into(), r.gen_range(1..=den_max).into())
}

pub fn nonzero_rational(r: &mut ChaCha8Rng, num_max: i64, den_max: i64) -> Rational {
    loop {
        let x = rational(r, num_max, den_max);
        if x != q(0) {
            return x;
        }
    }
}

/// Dense power series to `order`, roughly a third of the coefficients zero.
pub fn jet1(r: &mut ChaCha8Rng, order: usize) -> Jet1Q {
    let c = (0..=order)
        .map(|_| if r.gen_bool(0.3) { q(0) } else { rational(r, 20, 9) })
        .collect();
    Jet1Q::new(order, c)
}

pub fn jet2(r: &mut ChaCha8Rng, order: usize) -> Jet2Q {
    let mut terms = Vec::new();
    for d in 0..=order {
        for j in 0..=d {
            if r.gen_bool(0.4) {
                terms.push(((d - j, j), rational(r, 20, 9)));
            }
        }
    }
    Jet2Q::from_terms(order, terms)
}

pub fn pole_free_laurent(r: &mut ChaCha8Rng, order: usize) -> LaurentJetQ {
    LaurentJetQ::from_jet1(&jet1(r, order))
}

pub fn pole_free_laurent2(r: &mut ChaCha8Rng, order: usize) -> LaurentJet2Q {
    LaurentJet2Q::from_jet2(&jet2(r, order))
}
