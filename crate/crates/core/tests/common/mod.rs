#![allow(dead_code)]

use std::sync::Arc;

use gsdec::{Elem, Field, GrsCode, Poly};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(values: &[u16]) -> Vec<Elem> {
    values.iter().map(|&x| Elem(x)).collect()
}

/// The `(26, 16)` code over F_27 evaluated at `alpha^-i`.
pub fn f27_code() -> GrsCode {
    GrsCode::inverse_powers(Arc::new(Field::new(3, 3, None).unwrap()), 26, 16).unwrap()
}

pub fn f11_code() -> GrsCode {
    GrsCode::inverse_powers(Arc::new(Field::prime(11).unwrap()), 10, 5).unwrap()
}

pub fn random_message(code: &GrsCode, rng: &mut ChaCha8Rng) -> Poly {
    let q = code.field().order() as u16;
    Poly::new((0..code.k()).map(|_| Elem(rng.gen_range(0..q))).collect())
}

/// Adds nonzero values at `weight` distinct random positions.
pub fn add_errors(code: &GrsCode, c: &[Elem], weight: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let f = code.field();
    let q = f.order() as u16;
    let mut y = c.to_vec();
    for i in sample(rng, c.len(), weight) {
        y[i] = f.add(y[i], Elem(rng.gen_range(1..q)));
    }
    y
}
