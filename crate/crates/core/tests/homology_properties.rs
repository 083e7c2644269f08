mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torvanish_core::algebra::Polynomial;
use torvanish_core::groebner::Ideal;
use torvanish_core::homology::{depth, depth_via_ext, grade, resolve, tor, torsion_split};
use torvanish_core::Extended;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolutions_are_certified(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(ring, &mut rng);
        let res = resolve(&m, 5).unwrap();
        prop_assert!(res.composition_vanishes());
        prop_assert!(res.is_exact());
        prop_assert!(res.is_minimal());
    }

    #[test]
    fn auslander_buchsbaum(seed in any::<u64>(), v in 2usize..=4) {
        let s = regular(v);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&s, &mut rng);
        prop_assume!(!m.is_zero());
        let pd = resolve(&m, v + 1).unwrap().length().unwrap();
        prop_assert_eq!(depth(&m).unwrap(), Extended::Finite((v - pd) as i64));
    }

    #[test]
    fn tor_vanishes_past_v_over_regular(seed in any::<u64>()) {
        let s = regular(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&s, &mut rng);
        let n = random_module(&s, &mut rng);
        let t = tor(&m, &n, 5).unwrap();
        prop_assert!(t.vanishes_on(4..=5));
    }

    #[test]
    fn tor_balance(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(ring, &mut rng);
        let n = random_module(ring, &mut rng);
        let a = tor(&m, &n, 3).unwrap();
        let b = tor(&n, &m, 3).unwrap();
        for i in 0..=3 {
            let (x, y) = (a.entry(i), b.entry(i));
            prop_assert_eq!(x.zero, y.zero);
            prop_assert_eq!(x.hilbert_start, y.hilbert_start);
            prop_assert_eq!(&x.hilbert, &y.hilbert);
        }
    }

    #[test]
    fn depth_koszul_matches_ext(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(ring, &mut rng);
        prop_assert_eq!(depth(&m).unwrap(), depth_via_ext(&m).unwrap());
    }

    #[test]
    fn torsion_split_properties(seed in any::<u64>(), quad in any::<bool>()) {
        let ring = if quad { quadric() } else { regular(3) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_module(&ring, &mut rng);
        let split = torsion_split(&n, None).unwrap();
        let again = torsion_split(&split.torsion_free, None).unwrap();
        prop_assert!(again.torsion.is_zero());
        let h = n.hilbert_function(-2..10);
        let ht = split.torsion.hilbert_function(-2..10);
        let hf = split.torsion_free.hilbert_function(-2..10);
        for d in 0..h.len() {
            prop_assert_eq!(h[d], ht[d] + hf[d]);
        }
    }

    #[test]
    fn grade_ignores_redundant_generators(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let base = ring.base();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(ring, &mut rng);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| random_form(base, rng.gen_range(1..=2), 2, &mut rng))
            .filter(|f| !f.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let mut redundant = gens.clone();
        let lin = random_form(base, 1, 3, &mut rng);
        if !lin.is_zero() {
            redundant.push(gens[0].try_mul(&lin).unwrap());
        }
        redundant.push(gens[0].scale(2));
        let a = Ideal::new(ring, gens).unwrap();
        let b = Ideal::new(ring, redundant).unwrap();
        prop_assert_eq!(grade(&a, &m).unwrap(), grade(&b, &m).unwrap());
    }
}
