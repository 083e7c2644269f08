#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use torvanish_core::algebra::{make_ring, make_ring_with, Monomial, PolyRing, Polynomial, PrimeField, RingDescriptor, RingOptions};
use torvanish_core::homology::ModulePresentation;

pub const P: u32 = 32003;

pub fn regular(v: usize) -> Arc<RingDescriptor> {
    let names = ["x", "y", "z", "w", "u"];
    make_ring(&names[..v], &[], P).unwrap()
}

pub fn xy() -> Arc<RingDescriptor> {
    make_ring(&["x", "y"], &["x*y"], P).unwrap()
}

pub fn quadric() -> Arc<RingDescriptor> {
    let base = PolyRing::new(PrimeField::new(P).unwrap(), vec!["x".into(), "y".into(), "z".into()]).unwrap();
    let f = base.parse("x^2 + y^2 + z^2").unwrap();
    let opts = RingOptions {
        assume_domain: true,
        ..RingOptions::default()
    };
    make_ring_with(base, vec![f], opts).unwrap()
}

pub fn ci2() -> Arc<RingDescriptor> {
    make_ring(&["x", "y", "z"], &["x^2", "y^2"], P).unwrap()
}

pub fn rings() -> Vec<Arc<RingDescriptor>> {
    vec![regular(3), xy(), quadric(), ci2()]
}

/// Exponent vectors of every monomial of degree `d` in `v` variables.
pub fn monomials(v: usize, d: u32) -> Vec<Vec<u32>> {
    if v == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(v - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn mono(ring: &Arc<PolyRing>, e: &[u32]) -> Polynomial {
    ring.monomial(Monomial::from_exponents(e).unwrap(), 1)
}

/// Homogeneous form of degree `d` with up to `terms` random terms; may be zero.
pub fn random_form(ring: &Arc<PolyRing>, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let ms = monomials(ring.nvars(), d);
    let mut f = ring.zero();
    for _ in 0..terms {
        let c = ring.constant(rng.gen_range(-3i64..=3));
        let m = mono(ring, &ms[rng.gen_range(0..ms.len())]);
        f = f.try_add(&c.try_mul(&m).unwrap()).unwrap();
    }
    f
}

/// Random graded presentation with one or two generators and up to three relations.
pub fn random_module(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> ModulePresentation {
    let g = rng.gen_range(1..=2);
    let shifts: Vec<i32> = (0..g).map(|_| rng.gen_range(0..=1)).collect();
    let top = *shifts.iter().max().unwrap();
    let r = rng.gen_range(1..=3);
    let cols: Vec<Vec<Polynomial>> = (0..r)
        .map(|_| {
            let d = top + rng.gen_range(1..=2);
            shifts
                .iter()
                .map(|&s| random_form(ring.base(), (d - s) as u32, 2, rng))
                .collect()
        })
        .collect();
    ModulePresentation::from_columns(ring, shifts, &cols).unwrap()
}
