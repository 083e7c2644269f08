use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::monomial_ideal;
use crate::homology::{annihilator, ext_from_resolution, resolve, ModulePresentation, TorProfile};
use crate::value::Extended;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Satisfies,
    Fails,
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SerreMethod {
    ExtCriterion,
    MonomialOracle,
}

/// A failing index `j` and `codim_S Ext^j_S(M, S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SerreWitness {
    pub j: usize,
    pub codim: Extended,
    /// `j + n` for the Ext criterion; `min(n, ht)` at the prime for the oracle.
    pub required: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub n: usize,
    pub verdict: Verdict,
    pub witness: Option<SerreWitness>,
    pub method: SerreMethod,
    /// `codim_S Ext^j_S(M, S)` for `0 <= j <= v`.
    pub ext_codims: Vec<Extended>,
}

impl SerreReport {
    pub fn satisfies(&self) -> bool {
        self.verdict == Verdict::Satisfies
    }
}

/// `Ext^j_S(M, S)` for `0 <= j <= v`, with `M` viewed over the polynomial ring.
pub fn ext_over_polynomial_ring(m: &ModulePresentation) -> Result<TorProfile> {
    let ms = m.over_polynomial_ring();
    let s = ms.ring().clone();
    let v = s.nvars();
    let res = resolve(&ms, v + 1)?;
    let free = ModulePresentation::free(&s, vec![0]);
    Ok(ext_from_resolution(&res, &free, v))
}

fn codim_in_s(e: &crate::homology::HomologyEntry, v: usize) -> Extended {
    e.dim.subtracted_from(v as i64)
}

/// `(S_n)` over `R = S/(f_1..f_c)`: `codim_S Ext^j_S(M, S) >= j + n` for all `j > c`.
pub fn serre_check(m: &ModulePresentation, n: usize) -> Result<SerreReport> {
    let ring = m.ring();
    let Some(seq) = ring.ci_sequence() else {
        return Ok(SerreReport {
            n,
            verdict: Verdict::Unsupported,
            witness: None,
            method: SerreMethod::ExtCriterion,
            ext_codims: Vec::new(),
        });
    };
    let c = seq.len();
    let v = ring.nvars();
    if m.is_zero() {
        return Ok(SerreReport {
            n,
            verdict: Verdict::Satisfies,
            witness: None,
            method: SerreMethod::ExtCriterion,
            ext_codims: vec![Extended::PosInf; v + 1],
        });
    }
    let ext = ext_over_polynomial_ring(m)?;
    let codims: Vec<Extended> = ext.entries.iter().map(|e| codim_in_s(e, v)).collect();
    let mut witness = None;
    for (j, &cd) in codims.iter().enumerate().skip(c + 1) {
        let required = (j + n) as i64;
        if !cd.at_least(required) {
            witness = Some(SerreWitness { j, codim: cd, required });
            break;
        }
    }
    Ok(SerreReport {
        n,
        verdict: if witness.is_some() { Verdict::Fails } else { Verdict::Satisfies },
        witness,
        method: SerreMethod::ExtCriterion,
        ext_codims: codims,
    })
}

/// Like [`serre_check`] but an error for a non-CI ambient.
pub fn serre_check_strict(m: &ModulePresentation, n: usize) -> Result<SerreReport> {
    if !m.ring().is_complete_intersection() {
        return Err(Error::Unsupported("Serre check needs a complete intersection ambient".into()));
    }
    serre_check(m, n)
}

/// Direct check of `depth M_p >= min(n, ht p)` at the minimal primes of every
/// `ann Ext^j_S(M, S)`, valid when all those annihilators are monomial.
pub fn serre_oracle_monomial(m: &ModulePresentation, n: usize) -> Result<SerreReport> {
    let ring = m.ring();
    let Some(seq) = ring.ci_sequence() else {
        return Err(Error::Unsupported("oracle needs a complete intersection ambient".into()));
    };
    if !ring.defining_gb().iter().all(|g| g.is_monomial()) {
        return Err(Error::NotMonomial(ring.to_string()));
    }
    let c = seq.len();
    let v = ring.nvars();
    let ext = ext_over_polynomial_ring(m)?;
    let mut anns: Vec<Option<Vec<crate::algebra::Monomial>>> = Vec::new();
    for e in &ext.entries {
        if e.zero {
            anns.push(None);
            continue;
        }
        let a = annihilator(&e.module);
        anns.push(Some(a.monomial_generators()?));
    }
    let codims: Vec<Extended> = ext.entries.iter().map(|e| codim_in_s(e, v)).collect();
    let contains = |q: u32, gens: &[crate::algebra::Monomial]| {
        gens.iter().all(|g| g.support_mask() & q != 0)
    };
    let mut primes: Vec<u32> = Vec::new();
    for a in anns.iter().flatten() {
        for q in monomial_ideal::minimal_primes(a, v) {
            if !primes.contains(&q) {
                primes.push(q);
            }
        }
    }
    primes.sort_by_key(|q| (q.count_ones(), *q));
    let mut witness = None;
    for q in primes {
        let ht = monomial_ideal::height(q) as i64;
        let top = anns
            .iter()
            .enumerate()
            .filter(|(_, a)| a.as_ref().is_some_and(|g| contains(q, g)))
            .map(|(i, _)| i)
            .max();
        let Some(top) = top else { continue };
        let depth = ht - top as i64;
        let required = (n as i64).min(ht - c as i64);
        if depth < required {
            witness = Some(SerreWitness {
                j: top,
                codim: codims[top],
                required,
            });
            break;
        }
    }
    Ok(SerreReport {
        n,
        verdict: if witness.is_some() { Verdict::Fails } else { Verdict::Satisfies },
        witness,
        method: SerreMethod::MonomialOracle,
        ext_codims: codims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    #[test]
    fn example_module_is_s2() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let t = m.tensor(&m).unwrap();
        assert!(serre_check(&t, 2).unwrap().satisfies());
        assert!(serre_oracle_monomial(&t, 2).unwrap().satisfies());
    }

    #[test]
    fn residue_field_fails_s1() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let k = ModulePresentation::residue_field(&s);
        let rep = serre_check(&k, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails);
        let w = rep.witness.unwrap();
        assert_eq!((w.j, w.codim), (2, Extended::Finite(2)));
        assert!(serre_check(&k, 0).unwrap().satisfies());
        assert!(serre_oracle_monomial(&k, 0).unwrap().satisfies());
        assert_eq!(serre_oracle_monomial(&k, 1).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn free_modules_over_ci() {
        let r = make_ring(&["x", "y", "z"], &["x^2", "y^2"], 32003).unwrap();
        let f = ModulePresentation::free(&r, vec![0, 1]);
        for n in 0..=r.dim() {
            assert!(serre_check(&f, n).unwrap().satisfies());
        }
    }

    #[test]
    fn non_ci_is_unsupported() {
        let r = make_ring(&["x", "y"], &["x^2", "x*y"], 32003).unwrap();
        let f = ModulePresentation::free(&r, vec![0]);
        assert_eq!(serre_check(&f, 1).unwrap().verdict, Verdict::Unsupported);
        assert!(serre_check_strict(&f, 1).is_err());
    }
}
