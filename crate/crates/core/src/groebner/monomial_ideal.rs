//! Combinatorics of monomial ideals: independent sets, minimal primes,
//! standard monomial counts.

use crate::algebra::Monomial;

/// Masks of variables generating the minimal primes of the ideal generated by
/// `gens` (minimal vertex covers of the support hypergraph). Empty when the
/// ideal contains 1.
pub fn minimal_primes(gens: &[Monomial], nvars: usize) -> Vec<u32> {
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let supports: Vec<u32> = gens.iter().map(|m| m.support_mask()).collect();
    let covers: Vec<u32> = (0u32..(1 << nvars))
        .filter(|&s| supports.iter().all(|g| g & s != 0))
        .collect();
    covers
        .iter()
        .copied()
        .filter(|&s| !covers.iter().any(|&t| t != s && t & s == t))
        .collect()
}

/// Krull dimension of `S / (gens)`: the largest set of variables no generator
/// is supported in. `None` for the unit ideal.
pub fn dimension(gens: &[Monomial], nvars: usize) -> Option<usize> {
    if gens.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u32> = gens.iter().map(|m| m.support_mask()).collect();
    (0u32..(1 << nvars))
        .filter(|&s| supports.iter().all(|g| g & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
}

/// Number of monomials of degree `d` outside the ideal.
pub fn standard_monomials_in_degree(gens: &[Monomial], nvars: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    let mut count = 0;
    let mut exps = vec![0u32; nvars];
    enumerate(&mut exps, 0, d as u32, &mut |e| {
        let m = Monomial::from_exponents(e).unwrap();
        if !gens.iter().any(|g| g.divides(&m)) {
            count += 1;
        }
    });
    count
}

fn enumerate(exps: &mut Vec<u32>, i: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if exps.is_empty() {
        if left == 0 {
            f(exps);
        }
        return;
    }
    if i + 1 == exps.len() {
        exps[i] = left;
        f(exps);
        exps[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        enumerate(exps, i + 1, left - e, f);
    }
    exps[i] = 0;
}

/// Upper bound on the degree of standard monomials when the quotient has
/// finite length (every variable has a pure power in the ideal).
pub fn socle_degree_bound(gens: &[Monomial], nvars: usize) -> Option<u32> {
    let mut total = 0;
    for i in 0..nvars {
        let best = gens
            .iter()
            .filter(|m| m.support_mask() == 1 << i || m.is_one())
            .map(|m| m.exponent(i) as u32)
            .min()?;
        total += best.saturating_sub(1);
    }
    Some(total)
}

/// Height of a monomial prime from its variable mask.
pub fn height(mask: u32) -> usize {
    mask.count_ones() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&[m(&[1, 1])], 2), Some(1));
        assert_eq!(dimension(&[], 3), Some(3));
        assert_eq!(dimension(&[m(&[1, 1, 0]), m(&[1, 0, 1])], 3), Some(2));
        assert_eq!(dimension(&[m(&[0, 0])], 2), None);
    }

    #[test]
    fn minimal_primes_of_xy_xz() {
        let mut p = minimal_primes(&[m(&[1, 1, 0]), m(&[1, 0, 1])], 3);
        p.sort();
        // (x) and (y, z)
        assert_eq!(p, vec![0b001, 0b110]);
    }

    #[test]
    fn standard_monomials_of_xy() {
        let hf: Vec<u64> = (0..4)
            .map(|d| standard_monomials_in_degree(&[m(&[1, 1])], 2, d))
            .collect();
        assert_eq!(hf, vec![1, 2, 2, 2]);
        assert_eq!(standard_monomials_in_degree(&[], 1, 2), 1);
        assert_eq!(standard_monomials_in_degree(&[], 0, 0), 1);
        assert_eq!(standard_monomials_in_degree(&[], 0, 1), 0);
    }
}
