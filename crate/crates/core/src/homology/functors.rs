use serde::Serialize;

use super::invariants::module_dim_codim_unchecked;
use super::module::ModulePresentation;
use super::resolution::{homology_at, resolve, FreeResolution};
use crate::error::{Error, Result};
use crate::groebner::{ModuleOrder, Term, Vector};
use crate::value::Extended;

/// Width of the Hilbert function window stored for each homology module.
pub const HILBERT_WINDOW: i64 = 6;

/// Data of one `Tor_i` (or `Ext^i`).
#[derive(Clone, Debug)]
pub struct HomologyEntry {
    pub index: usize,
    pub module: ModulePresentation,
    pub zero: bool,
    /// Total `k`-dimension; `None` when the module has infinite length.
    pub length: Option<u64>,
    pub dim: Extended,
    /// `None` when the ambient is not flagged equidimensional.
    pub codim: Option<Extended>,
    /// Lowest degree of the window and `dim_k` in each degree of it.
    pub hilbert_start: i64,
    pub hilbert: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EntrySummary {
    pub index: usize,
    pub zero: bool,
    pub length: Option<u64>,
    pub dim: Extended,
    pub codim: Option<Extended>,
    pub hilbert_start: i64,
    pub hilbert: Vec<u64>,
    pub presentation: String,
}

impl HomologyEntry {
    fn new(index: usize, module: ModulePresentation) -> Self {
        let zero = module.is_zero();
        let (hilbert_start, hilbert) = if zero {
            (0, Vec::new())
        } else {
            module.hilbert_window(HILBERT_WINDOW)
        };
        let (dim, codim) = module_dim_codim_unchecked(&module);
        Self {
            index,
            length: module.length(),
            zero,
            dim,
            codim,
            hilbert_start,
            hilbert,
            module,
        }
    }

    /// `k`-dimension as text: a number or `inf`.
    pub fn length_text(&self) -> String {
        match self.length {
            Some(l) => l.to_string(),
            None => "inf".into(),
        }
    }

    pub fn summary(&self) -> EntrySummary {
        EntrySummary {
            index: self.index,
            zero: self.zero,
            length: self.length,
            dim: self.dim,
            codim: self.codim,
            hilbert_start: self.hilbert_start,
            hilbert: self.hilbert.clone(),
            presentation: self.module.to_string(),
        }
    }
}

/// `Tor_i^R(M, N)` for `0 <= i <= bound`.
#[derive(Clone, Debug)]
pub struct TorProfile {
    pub bound: usize,
    pub entries: Vec<HomologyEntry>,
}

impl TorProfile {
    pub fn entry(&self, i: usize) -> &HomologyEntry {
        &self.entries[i]
    }

    /// Whether `Tor_i` vanishes for every `i` in the range.
    pub fn vanishes_on(&self, range: std::ops::RangeInclusive<usize>) -> bool {
        range.into_iter().all(|i| self.entries[i].zero)
    }

    /// `k`-dimensions, `None` for infinite length.
    pub fn lengths(&self) -> Vec<Option<u64>> {
        self.entries.iter().map(|e| e.length).collect()
    }

    pub fn summaries(&self) -> Vec<EntrySummary> {
        self.entries.iter().map(|e| e.summary()).collect()
    }
}

pub type ExtProfile = TorProfile;

fn check_same(m: &ModulePresentation, n: &ModulePresentation) -> Result<()> {
    if m.ring().same_ring(n.ring()) {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

/// Block `F ⊗ N` for a free module with generator degrees `f`: position
/// `j * q + l`, degree `f_j + n_l`, relations of `N` copied into each block.
fn free_tensor(f: &[i32], n: &ModulePresentation) -> (Vec<i32>, Vec<Vector>) {
    let q = n.num_generators();
    let mut shifts = Vec::with_capacity(f.len() * q);
    for a in f {
        for b in n.shifts() {
            shifts.push(a + b);
        }
    }
    let ord = ModuleOrder::top(&shifts);
    let mut rels = Vec::new();
    for j in 0..f.len() {
        for r in n.relations() {
            rels.push(r.map_positions(|p| Some(j as u32 * q as u32 + p)).resorted(&ord));
        }
    }
    (shifts, rels)
}

/// Columns of `d ⊗ N : F_i ⊗ N -> F_{i-1} ⊗ N`.
fn map_tensor(d: &[Vector], q: usize) -> Vec<Vector> {
    let mut out = Vec::with_capacity(d.len() * q);
    for col in d {
        for l in 0..q {
            let terms: Vec<Term> = col
                .terms()
                .iter()
                .map(|t| Term {
                    pos: t.pos * q as u32 + l as u32,
                    ..*t
                })
                .collect();
            out.push(Vector::from_sorted(terms));
        }
    }
    out
}

/// `Tor` from a precomputed resolution of `M` (which must reach `bound + 1`).
pub fn tor_from_resolution(res: &FreeResolution, n: &ModulePresentation, bound: usize) -> TorProfile {
    let ring = res.ring().clone();
    let q = n.num_generators();
    let mut entries = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let (mid, mid_rels) = free_tensor(res.shifts(i), n);
        let ord = ModuleOrder::top(&mid);
        let incoming: Vec<Vector> = map_tensor(res.differential(i + 1), q)
            .into_iter()
            .map(|v| v.resorted(&ord))
            .collect();
        let h = if mid.is_empty() {
            ModulePresentation::zero(&ring)
        } else if i == 0 {
            let mut rels = mid_rels.clone();
            rels.extend(incoming);
            ModulePresentation::raw(&ring, mid.clone(), rels).minimize()
        } else {
            let (tgt, tgt_rels) = free_tensor(res.shifts(i - 1), n);
            let tord = ModuleOrder::top(&tgt);
            let out: Vec<Vector> = map_tensor(res.differential(i), q)
                .into_iter()
                .map(|v| v.resorted(&tord))
                .collect();
            homology_at(&ring, &mid, &mid_rels, &incoming, Some((&tgt, &out, &tgt_rels)))
        };
        entries.push(HomologyEntry::new(i, h));
    }
    TorProfile { bound, entries }
}

/// `Tor_i^R(M, N)` for `0 <= i <= bound`, from a resolution of `M`.
pub fn tor(m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<TorProfile> {
    check_same(m, n)?;
    if bound < 1 {
        return Err(Error::Precondition("bound must be at least 1".into()));
    }
    let res = resolve(m, bound + 1)?;
    Ok(tor_from_resolution(&res, n, bound))
}

/// `Hom(F, N)` for free `F` with generator degrees `f`: generator `(j, l)`
/// sits in degree `n_l - f_j`.
fn free_hom(f: &[i32], n: &ModulePresentation) -> (Vec<i32>, Vec<Vector>) {
    let neg: Vec<i32> = f.iter().map(|a| -a).collect();
    free_tensor(&neg, n)
}

/// Columns of `Hom(d, N) : Hom(F_{i-1}, N) -> Hom(F_i, N)`; the column for
/// generator `(k, l)` is `sum_j d[k, j] e_(j, l)`.
fn map_hom(d: &[Vector], source_rank: usize, q: usize) -> Vec<Vec<Term>> {
    let mut cols: Vec<Vec<Term>> = vec![Vec::new(); source_rank * q];
    for (j, col) in d.iter().enumerate() {
        for t in col.terms() {
            for l in 0..q {
                cols[t.pos as usize * q + l].push(Term {
                    pos: (j * q + l) as u32,
                    ..*t
                });
            }
        }
    }
    cols
}

pub fn ext_from_resolution(res: &FreeResolution, n: &ModulePresentation, bound: usize) -> ExtProfile {
    let ring = res.ring().clone();
    let field = ring.field();
    let q = n.num_generators();
    let mut entries = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let (mid, mid_rels) = free_hom(res.shifts(i), n);
        let ord = ModuleOrder::top(&mid);
        let incoming: Vec<Vector> = if i == 0 {
            Vec::new()
        } else {
            map_hom(res.differential(i), res.shifts(i - 1).len(), q)
                .into_iter()
                .map(|t| Vector::from_terms(t, field, &ord))
                .collect()
        };
        let h = if mid.is_empty() {
            ModulePresentation::zero(&ring)
        } else {
            let (tgt, tgt_rels) = free_hom(res.shifts(i + 1), n);
            let tord = ModuleOrder::top(&tgt);
            let out: Vec<Vector> = map_hom(res.differential(i + 1), res.shifts(i).len(), q)
                .into_iter()
                .map(|t| Vector::from_terms(t, field, &tord))
                .collect();
            if tgt.is_empty() {
                homology_at(&ring, &mid, &mid_rels, &incoming, None)
            } else {
                homology_at(&ring, &mid, &mid_rels, &incoming, Some((&tgt, &out, &tgt_rels)))
            }
        };
        entries.push(HomologyEntry::new(i, h));
    }
    TorProfile { bound, entries }
}

/// `Ext^i_R(M, N)` for `0 <= i <= bound`, from `Hom(resolution of M, N)`.
pub fn ext(m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<ExtProfile> {
    check_same(m, n)?;
    let res = resolve(m, bound + 1)?;
    Ok(ext_from_resolution(&res, n, bound))
}

/// `Hom_R(M, N)` as `Ext^0`.
pub fn hom(m: &ModulePresentation, n: &ModulePresentation) -> Result<ModulePresentation> {
    Ok(ext(m, n, 1)?.entries.swap_remove(0).module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;
    use crate::groebner::Ideal;

    #[test]
    fn tor_of_example_module() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let t = tor(&m, &m, 6).unwrap();
        let lens: Vec<Option<u64>> = t.lengths()[1..].to_vec();
        assert_eq!(lens, vec![Some(1), Some(0), Some(1), Some(0), Some(1), Some(0)]);
        assert_eq!(t.entry(0).length, None);
        assert_eq!(t.entry(0).hilbert, m.hilbert_function(0..HILBERT_WINDOW));
        assert_eq!(t.entry(1).dim, Extended::Finite(0));
        assert_eq!(t.entry(1).codim, Some(Extended::Finite(1)));
        assert_eq!(t.entry(2).codim, Some(Extended::PosInf));
    }

    #[test]
    fn tor_with_free_and_regular_sequence() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let a = ModulePresentation::cyclic(&s, &[s.parse("x").unwrap()]).unwrap();
        let b = ModulePresentation::cyclic(&s, &[s.parse("y").unwrap()]).unwrap();
        let t = tor(&a, &b, 3).unwrap();
        assert!(t.vanishes_on(1..=3));
        assert_eq!(t.entry(0).length, Some(1));
        let f = ModulePresentation::free(&s, vec![0, 2]);
        assert!(tor(&f, &b, 3).unwrap().vanishes_on(1..=3));
    }

    #[test]
    fn ext_examples() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let k = ModulePresentation::residue_field(&s);
        let free = ModulePresentation::free(&s, vec![0]);
        let e = ext(&k, &free, 3).unwrap();
        assert!(e.entry(0).zero && e.entry(1).zero);
        assert_eq!(e.entry(2).length, Some(1));
        assert_eq!(e.entry(2).hilbert_start, -2);
        assert!(e.entry(3).zero);

        let m = ModulePresentation::ideal(&Ideal::maximal(&s));
        let e = ext(&m, &free, 2).unwrap();
        assert_eq!(e.entry(1).length, Some(1));
        assert!(e.entry(2).zero);

        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let n = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let e0 = hom(&ModulePresentation::free(&r, vec![0]), &n).unwrap();
        assert_eq!(e0.hilbert_function(0..6), n.hilbert_function(0..6));
    }
}
