mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torvanish_core::algebra::{MonomialOrder, PolyRing, Polynomial, PrimeField, RingDescriptor};
use torvanish_core::groebner::{groebner, ModuleOrder, Ideal, Vector};
use torvanish_core::homology::syzygies;
use torvanish_core::Extended;

fn random_ideal(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_form(ring.base(), d, 3, rng)
        })
        .filter(|f| !f.is_zero())
        .collect()
}

/// Coefficients of `f` in the monomial basis of `S_d`.
fn coords(f: &Polynomial, basis: &[Vec<u32>]) -> Vec<u32> {
    let mut v = vec![0; basis.len()];
    for (m, c) in f.terms() {
        let e: Vec<u32> = m.exponents().iter().map(|&x| x as u32).collect();
        v[basis.iter().position(|b| *b == e).unwrap()] = *c;
    }
    v
}

/// Solves `sum x_j cols[j] = target` over `F_p` by Gaussian elimination.
fn solve(field: PrimeField, cols: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let rows = target.len();
    let n = cols.len();
    let mut a: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let mut r: Vec<u32> = cols.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(row, p);
        let inv = field.inv(a[row][col]);
        for x in a[row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows {
            if i != row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..=n {
                    let t = field.mul(f, a[row][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| r[n] != 0) {
        return None;
    }
    let mut x = vec![0; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n];
    }
    Some(x)
}

/// Membership of `f` in `(gens) + I` decided in degree `d` by linear algebra,
/// returning the multipliers and the generators they apply to.
fn member_by_linear_algebra(
    base: &Arc<PolyRing>,
    gens: &[Polynomial],
    f: &Polynomial,
    d: u32,
) -> Option<Vec<(Polynomial, Polynomial)>> {
    let basis = monomials(base.nvars(), d);
    let mut spans = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg > d {
            continue;
        }
        for e in monomials(base.nvars(), d - dg) {
            let m = mono(base, &e);
            spans.push((m.clone(), g.clone(), coords(&m.try_mul(g).unwrap(), &basis)));
        }
    }
    let cols: Vec<Vec<u32>> = spans.iter().map(|s| s.2.clone()).collect();
    let x = solve(base.field(), &cols, &coords(f, &basis))?;
    Some(
        spans
            .into_iter()
            .zip(x)
            .filter(|(_, c)| *c != 0)
            .map(|((m, g, _), c)| (m.scale(c), g))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn buchberger_post_check(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(ring, &mut rng);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = groebner(&gens, ring, order).unwrap();
            prop_assert!(gb.spairs_reduce_to_zero());
            prop_assert!(gb.is_reduced());
        }
    }

    #[test]
    fn membership_matches_division_record(seed in any::<u64>(), which in 0usize..4, combine in any::<bool>()) {
        let ring = &rings()[which];
        let base = ring.base();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(ring, &mut rng);
        prop_assume!(!gens.is_empty());
        let d = 3;
        let f = if combine {
            let mut f = base.zero();
            for g in &gens {
                let dg = g.degree().unwrap();
                if dg <= d {
                    let a = random_form(base, d - dg, 2, &mut rng);
                    f = f.try_add(&a.try_mul(g).unwrap()).unwrap();
                }
            }
            f
        } else {
            random_form(base, d, 3, &mut rng)
        };
        let ideal = Ideal::new(ring, gens.clone()).unwrap();
        let mut all = gens.clone();
        all.extend(ring.generators().iter().cloned());
        let record = member_by_linear_algebra(base, &all, &f, d);
        prop_assert_eq!(ideal.contains(&f), record.is_some());
        prop_assert_eq!(ideal.normal_form(&f).is_zero(), record.is_some());
        if let Some(rec) = record {
            let mut sum = base.zero();
            for (a, g) in &rec {
                sum = sum.try_add(&a.try_mul(g).unwrap()).unwrap();
            }
            prop_assert_eq!(sum, f);
        }
    }

    #[test]
    fn syzygies_compose_to_zero(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let base = ring.base();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(ring, &mut rng);
        prop_assume!(!gens.is_empty());
        let ord = ModuleOrder::top(&[0]);
        let vecs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        let syz = syzygies(&vecs, &[0], ring).unwrap();
        for s in &syz.generators {
            let coeffs = s.components(gens.len(), base);
            let mut sum = base.zero();
            for (a, g) in coeffs.iter().zip(&gens) {
                sum = sum.try_add(&a.try_mul(g).unwrap()).unwrap();
            }
            prop_assert!(ring.reduce(&sum).is_zero());
        }
    }
}

#[test]
fn dimension_plus_codim_is_v_on_monomial_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..50 {
        let v = 3 + case % 3;
        let s = regular(v);
        let k = rng.gen_range(1..=4);
        let supports: Vec<Vec<u32>> = (0..k)
            .map(|_| {
                let mut e = vec![0u32; v];
                for _ in 0..rng.gen_range(1..=3) {
                    e[rng.gen_range(0..v)] += 1;
                }
                e
            })
            .collect();
        let gens: Vec<Polynomial> = supports.iter().map(|e| mono(s.base(), e)).collect();
        let ideal = Ideal::new(&s, gens).unwrap();
        // codim = least number of variables meeting every generator's support
        let codim = (0u32..1 << v)
            .filter(|mask| {
                supports
                    .iter()
                    .all(|e| (0..v).any(|i| e[i] > 0 && mask & (1 << i) != 0))
            })
            .map(|m| m.count_ones() as i64)
            .min()
            .unwrap();
        assert_eq!(ideal.dimension(), Extended::Finite(v as i64 - codim), "{ideal}");
    }
}

#[test]
fn hilbert_function_of_zero_ideal() {
    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for v in 1..=5 {
        let s = regular(v);
        let h = Ideal::zero(&s).hilbert_function(0..12);
        for (d, &val) in h.iter().enumerate() {
            assert_eq!(val, binom(d as u64 + v as u64 - 1, v as u64 - 1), "v = {v}, d = {d}");
        }
    }
}
