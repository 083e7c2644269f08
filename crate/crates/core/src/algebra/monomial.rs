use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 8;

/// A power product `x_1^{a_1} ... x_v^{a_v}` stored as a dense exponent array.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Self {
            exps: [0; MAX_VARS],
            deg: 0,
            nvars: nvars as u8,
        }
    }

    pub fn var(nvars: usize, index: usize, power: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = power;
        m.deg = power as u32;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Self::one(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
        }
        m.deg = exps.iter().sum();
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] += other.exps[i];
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables occurring in this monomial.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for i in 0..self.nvars as usize {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Term orders on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, u: &Monomial, v: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                match u.deg.cmp(&v.deg) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..MAX_VARS).rev() {
                    match u.exps[i].cmp(&v.exps[i]) {
                        Ordering::Equal => {}
                        // smaller exponent in the last differing variable wins
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    match u.exps[i].cmp(&v.exps[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Checked comparison of two monomials.
pub fn monomial_compare(u: &Monomial, v: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if u.nvars != v.nvars {
        return Err(Error::DimensionMismatch {
            left: u.nvars(),
            right: v.nvars(),
        });
    }
    Ok(order.cmp(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let g = MonomialOrder::Grevlex;
        // x^2 > xy
        assert_eq!(g.cmp(&mono(&[2, 0]), &mono(&[1, 1])), Ordering::Greater);
        // y^2 > xz with x > y > z
        assert_eq!(g.cmp(&mono(&[0, 2, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
        let u = mono(&[1, 2, 3]);
        assert_eq!(g.cmp(&u, &u), Ordering::Equal);
    }

    #[test]
    fn lex_prefers_first_variable() {
        let l = MonomialOrder::Lex;
        assert_eq!(l.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn compare_rejects_dimension_mismatch() {
        let r = monomial_compare(&mono(&[1]), &mono(&[1, 0]), MonomialOrder::Grevlex);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn degree_is_cached_sum() {
        let m = mono(&[3, 0, 2]).mul(&mono(&[1, 1, 0]));
        assert_eq!(m.degree(), 7);
        assert_eq!(m.exponents(), &[4, 1, 2]);
        assert_eq!(mono(&[1, 1, 0]).quotient_of(&m), Some(mono(&[3, 0, 2])));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(|e| mono(&e))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_total(u in arb_mono(), v in arb_mono(), w in arb_mono()) {
            for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
                let uv = ord.cmp(&u, &v);
                prop_assert_eq!(uv, ord.cmp(&v, &u).reverse());
                prop_assert_eq!(uv == Ordering::Equal, u == v);
                prop_assert_eq!(ord.cmp(&u.mul(&w), &v.mul(&w)), uv);
                if uv == Ordering::Less && ord.cmp(&v, &w) == Ordering::Less {
                    prop_assert_eq!(ord.cmp(&u, &w), Ordering::Less);
                }
            }
        }
    }
}
