use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::module::ModulePresentation;
use crate::algebra::RingDescriptor;
use crate::error::{Error, Result};
use crate::groebner::{ModuleOrder, Vector};

/// Truncated minimal graded free resolution `F_B -> ... -> F_1 -> F_0`.
///
/// `shifts[i]` are the generator degrees of `F_i`; `maps[i-1]` holds the
/// columns of `d_i : F_i -> F_{i-1}`, one per generator of `F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<RingDescriptor>,
    shifts: Vec<Vec<i32>>,
    maps: Vec<Vec<Vector>>,
    bound: usize,
    terminated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `entries[i]` maps internal degree `j` to `β_{i,j}`.
    pub entries: Vec<BTreeMap<i32, usize>>,
    pub totals: Vec<usize>,
}

impl BettiTable {
    fn from_shifts(shifts: &[Vec<i32>]) -> Self {
        let entries: Vec<BTreeMap<i32, usize>> = shifts
            .iter()
            .map(|s| {
                let mut m = BTreeMap::new();
                for &d in s {
                    *m.entry(d).or_insert(0) += 1;
                }
                m
            })
            .collect();
        let totals = shifts.iter().map(|s| s.len()).collect();
        Self { entries, totals }
    }
}

impl FreeResolution {
    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Whether the resolution reached a zero kernel before the bound.
    pub fn is_finite(&self) -> bool {
        self.terminated
    }

    /// Projective dimension when the resolution is finite.
    pub fn length(&self) -> Option<usize> {
        if !self.terminated {
            return None;
        }
        Some(
            self.shifts
                .iter()
                .rposition(|s| !s.is_empty())
                .unwrap_or(0),
        )
    }

    /// Generator degrees of `F_i` (empty past the computed range).
    pub fn shifts(&self, i: usize) -> &[i32] {
        self.shifts.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Columns of `d_i`, `1 <= i <= bound` (empty when `F_i = 0`).
    pub fn differential(&self, i: usize) -> &[Vector] {
        if i == 0 {
            return &[];
        }
        self.maps.get(i - 1).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Ranks of the computed free modules.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.bound).map(|i| self.shifts(i).len()).collect()
    }

    pub fn betti_table(&self) -> BettiTable {
        let s: Vec<Vec<i32>> = (0..=self.bound).map(|i| self.shifts(i).to_vec()).collect();
        BettiTable::from_shifts(&s)
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .all(|c| c.terms().iter().all(|t| !t.mon.is_one()))
    }

    /// `d_i ∘ d_{i+1} = 0` modulo the defining ideal.
    pub fn composition_vanishes(&self) -> bool {
        let amb = self.ring.ambient();
        for i in 1..self.bound {
            let d = self.differential(i);
            let tgt = self.shifts(i - 1);
            let ord = ModuleOrder::top(tgt);
            for col in self.differential(i + 1) {
                let img = apply(col, d, self.shifts(i), &ord, &self.ring);
                if !amb.reduce_mod_defining(&img, tgt).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exactness certificate: `H_i(F) = 0` for `1 <= i < bound`, by
    /// recomputing kernels and images and comparing Hilbert functions.
    pub fn exactness_certificate(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for i in 1..self.bound {
            let h = homology_at(
                &self.ring,
                self.shifts(i),
                &[],
                self.differential(i + 1),
                Some((self.shifts(i - 1), self.differential(i), &[])),
            );
            out.push(h.length().unwrap_or(u64::MAX));
        }
        out
    }

    pub fn is_exact(&self) -> bool {
        self.exactness_certificate().iter().all(|&d| d == 0)
    }

    /// `Ω^n M = coker(d_{n+1})` on `F_n`.
    pub fn syzygy(&self, n: usize) -> ModulePresentation {
        ModulePresentation::raw(&self.ring, self.shifts(n).to_vec(), self.differential(n + 1).to_vec())
    }
}

/// `d(col)`: applies the map with the given columns to a vector of its source.
pub(crate) fn apply(
    v: &Vector,
    columns: &[Vector],
    source: &[i32],
    target_ord: &ModuleOrder,
    ring: &Arc<RingDescriptor>,
) -> Vector {
    let field = ring.field();
    let mut acc = Vector::zero();
    for (j, p) in v.components(source.len(), ring.base()).iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        acc = acc.add(&columns[j].mul_poly(p, target_ord), field, target_ord);
    }
    acc
}

/// Minimal graded free resolution of `m` through homological degree `bound`.
pub fn resolve(m: &ModulePresentation, bound: usize) -> Result<FreeResolution> {
    if bound < 1 {
        return Err(Error::Precondition("resolution bound must be at least 1".into()));
    }
    let ring = m.ring().clone();
    let amb = ring.ambient();
    let mm = m.minimize();
    let mut shifts = vec![mm.shifts().to_vec()];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    let mut cols = mm.relations().to_vec();
    let mut terminated = false;
    for i in 1..=bound {
        if cols.is_empty() {
            terminated = true;
            break;
        }
        let src: Vec<i32> = cols
            .iter()
            .map(|c| c.degree(&shifts[i - 1]).unwrap() as i32)
            .collect();
        maps.push(cols.clone());
        shifts.push(src.clone());
        if i == bound {
            break;
        }
        let k = amb.kernel(&shifts[i - 1], &src, &cols, &[]);
        cols = amb.minimal_generators(&src, k, &[]);
    }
    if !terminated && maps.len() == bound && ring.is_regular() {
        // one more kernel decides termination at the bound
        let k = amb.kernel(&shifts[bound - 1], &shifts[bound], &maps[bound - 1], &[]);
        terminated = k.is_empty();
    }
    if maps.is_empty() {
        terminated = true;
    }
    let res = FreeResolution {
        ring: ring.clone(),
        shifts,
        maps,
        bound,
        terminated,
    };
    if ring.is_regular() {
        if let Some(l) = res.length() {
            assert!(l <= ring.nvars(), "resolution longer than the number of variables");
        }
    }
    Ok(res)
}

/// `Ω^n M` read off the minimal resolution; `Ω^0 M` is the minimized `M`.
pub fn syzygy_module(m: &ModulePresentation, n: usize) -> Result<ModulePresentation> {
    if n == 0 {
        return Ok(m.minimize());
    }
    Ok(resolve(m, n + 1)?.syzygy(n).minimize())
}

/// Syzygies of a list of homogeneous elements of a graded free module.
#[derive(Clone, Debug)]
pub struct Syzygies {
    /// Degrees of the source generators (one per input element).
    pub source: Vec<i32>,
    /// Generators of the kernel, in source coordinates.
    pub generators: Vec<Vector>,
}

impl Syzygies {
    /// The syzygy module as an abstract module.
    pub fn presentation(&self, ring: &Arc<RingDescriptor>) -> ModulePresentation {
        ModulePresentation::free(ring, self.source.clone()).submodule(&self.generators)
    }
}

/// Kernel of `R^s -> F`, `e_j -> gens[j]`, for `F` with generator degrees `shifts`.
pub fn syzygies(gens: &[Vector], shifts: &[i32], ring: &Arc<RingDescriptor>) -> Result<Syzygies> {
    let ord = ModuleOrder::top(shifts);
    let mut source = Vec::with_capacity(gens.len());
    let mut cols = Vec::with_capacity(gens.len());
    for g in gens {
        if g.max_position().is_some_and(|p| p as usize >= shifts.len()) {
            return Err(Error::RankMismatch(g.max_position().unwrap() as usize + 1, shifts.len()));
        }
        if !g.is_homogeneous(shifts) {
            return Err(Error::NotHomogeneous(format!("{g:?}")));
        }
        source.push(g.degree(shifts).unwrap_or(0) as i32);
        cols.push(g.clone().resorted(&ord));
    }
    let amb = ring.ambient();
    let k = amb.kernel(shifts, &source, &cols, &[]);
    let generators = amb.minimal_generators(&source, k, &[]);
    Ok(Syzygies { source, generators })
}

/// Homology of `P --a--> Q --b--> T` at `Q`, where `Q` carries relations
/// `q_rels` and `T` carries relations `t_rels`. `incoming` are the columns of
/// `a` (elements of the free cover of `Q`); `outgoing` is `(T shifts, columns
/// of b, T relations)`, or `None` when `b = 0`.
pub(crate) fn homology_at(
    ring: &Arc<RingDescriptor>,
    q: &[i32],
    q_rels: &[Vector],
    incoming: &[Vector],
    outgoing: Option<(&[i32], &[Vector], &[Vector])>,
) -> ModulePresentation {
    let amb = ring.ambient();
    let ord = ModuleOrder::top(q);
    let cycles: Vec<Vector> = match outgoing {
        None => (0..q.len()).map(|i| Vector::unit(i, ring.nvars())).collect(),
        Some((t, b, t_rels)) => amb.kernel(t, q, b, t_rels),
    };
    let mut base: Vec<Vector> = incoming.iter().map(|v| v.clone().resorted(&ord)).collect();
    base.extend(q_rels.iter().map(|v| v.clone().resorted(&ord)));
    let gens = amb.minimal_generators(q, cycles, &base);
    if gens.is_empty() {
        return ModulePresentation::zero(ring);
    }
    let src: Vec<i32> = gens.iter().map(|g| g.degree(q).unwrap() as i32).collect();
    let rels = amb.kernel(q, &src, &gens, &base);
    let rels = amb.minimal_generators(&src, rels, &[]);
    ModulePresentation::raw(ring, src, rels).minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;
    use crate::groebner::Ideal;

    #[test]
    fn koszul_resolution_of_residue_field() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let k = ModulePresentation::residue_field(&s);
        let res = resolve(&k, 5).unwrap();
        assert!(res.is_finite());
        assert_eq!(res.length(), Some(2));
        assert_eq!(&res.betti_numbers()[..3], &[1, 2, 1]);
        assert!(res.is_minimal() && res.composition_vanishes() && res.is_exact());
        assert_eq!(res.shifts(2), &[2]);
    }

    #[test]
    fn periodic_resolution_over_hypersurface() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let res = resolve(&m, 6).unwrap();
        assert_eq!(res.betti_numbers(), vec![1; 7]);
        assert!(!res.is_finite());
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        for i in 1..=6 {
            let c = res.differential(i)[0].component(0, r.base());
            assert_eq!(c.monic(), if i % 2 == 1 { x.clone() } else { y.clone() });
        }
        assert!(res.is_minimal() && res.composition_vanishes() && res.is_exact());
    }

    #[test]
    fn free_module_resolution() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let f = ModulePresentation::free(&r, vec![0, 1]);
        let res = resolve(&f, 3).unwrap();
        assert_eq!(res.length(), Some(0));
        assert_eq!(res.betti_numbers(), vec![2, 0, 0, 0]);
    }

    #[test]
    fn syzygy_examples() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let o0 = syzygy_module(&m, 0).unwrap();
        assert_eq!(o0.hilbert_function(0..5), m.hilbert_function(0..5));
        let o1 = syzygy_module(&m, 1).unwrap();
        assert_eq!(o1.shifts(), &[1]);
        assert_eq!(o1.column(0)[0].monic(), r.parse("y").unwrap());
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let o = syzygy_module(&ModulePresentation::residue_field(&s), 1).unwrap();
        let mm = ModulePresentation::ideal(&Ideal::maximal(&s));
        assert_eq!(o.hilbert_function(0..6), mm.hilbert_function(0..6));
    }

    #[test]
    fn syzygies_of_generators() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let ord = ModuleOrder::top(&[0]);
        let gx = Vector::from_poly(&s.parse("x").unwrap(), 0, &ord);
        let gy = Vector::from_poly(&s.parse("y").unwrap(), 0, &ord);
        let syz = syzygies(&[gx.clone(), gy], &[0], &s).unwrap();
        assert_eq!(syz.generators.len(), 1);
        let c = syz.generators[0].components(2, s.base());
        assert_eq!(c[0].monic(), s.parse("y").unwrap());
        let (x, y) = (s.parse("x").unwrap(), s.parse("y").unwrap());
        assert!((&(&c[0] * &x) + &(&c[1] * &y)).is_zero());

        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let gx = Vector::from_poly(&r.parse("x").unwrap(), 0, &ord);
        let syz = syzygies(&[gx], &[0], &r).unwrap();
        assert_eq!(syz.generators.len(), 1);
        assert_eq!(syz.generators[0].component(0, r.base()).monic(), r.parse("y").unwrap());

        let one = Vector::unit(0, 2);
        assert!(syzygies(&[one], &[0], &s).unwrap().generators.is_empty());
    }

    #[test]
    fn syzygies_compose_to_zero() {
        let s = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        let ord = ModuleOrder::top(&[0]);
        let gens: Vec<Vector> = ["x^2", "x*y", "y*z", "z^2"]
            .iter()
            .map(|g| Vector::from_poly(&s.parse(g).unwrap(), 0, &ord))
            .collect();
        let syz = syzygies(&gens, &[0], &s).unwrap();
        for g in &syz.generators {
            assert!(apply(g, &gens, &syz.source, &ord, &s).is_zero());
        }
    }
}
