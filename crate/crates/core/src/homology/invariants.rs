use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::module::ModulePresentation;
use crate::algebra::{Polynomial, RingDescriptor};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, ModuleOrder, Vector};
use crate::value::Extended;

/// Number of random linear forms tried before giving up on a nonzerodivisor.
pub const NZD_TRIALS: usize = 50;

/// `ann M = ⋂_i (U : e_i)`.
pub fn annihilator(m: &ModulePresentation) -> Ideal {
    let ring = m.ring();
    let amb = ring.ambient();
    let mut acc = Ideal::unit(ring);
    for i in 0..m.num_generators() {
        let gens = amb.colon_generator(m.shifts(), m.relations(), i);
        let q = Ideal::new(ring, gens).unwrap();
        acc = if acc.is_unit() { q } else { acc.intersection(&q).unwrap() };
    }
    acc.simplified()
}

/// `(dim M, codim M)` with `codim` only when the ambient is equidimensional.
pub(crate) fn module_dim_codim_unchecked(m: &ModulePresentation) -> (Extended, Option<Extended>) {
    let d = m.dim();
    let r = m.ring();
    let codim = r
        .is_equidimensional()
        .then(|| d.subtracted_from(r.dim() as i64));
    (d, codim)
}

/// `dim M` and `codim M = dim R - dim M`; the zero module has `(-inf, +inf)`.
pub fn module_dim_codim(m: &ModulePresentation) -> Result<(Extended, Extended)> {
    match module_dim_codim_unchecked(m) {
        (d, Some(c)) => Ok((d, c)),
        (_, None) => Err(Error::NotEquidimensional),
    }
}

/// Whether `u` is a nonzerodivisor on `R`: `(I : u) = I`.
pub fn is_nonzerodivisor(ring: &Arc<RingDescriptor>, u: &Polynomial) -> bool {
    if ring.reduce(u).is_zero() {
        return false;
    }
    Ideal::zero(ring).quotient_element(u).map(|q| q.is_zero()).unwrap_or(false)
}

/// Random linear form that is a nonzerodivisor on `R`.
pub fn find_nonzerodivisor(ring: &Arc<RingDescriptor>, seed: u64) -> Result<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = ring.base();
    let p = ring.field().characteristic();
    if ring.nvars() == 0 {
        return Err(Error::NoNonzerodivisor(0));
    }
    for _ in 0..NZD_TRIALS {
        let mut u = base.zero();
        for x in base.vars() {
            let c: u32 = rng.gen_range(0..p);
            u = &u + &x.scale(c);
        }
        if !u.is_zero() && is_nonzerodivisor(ring, &u) {
            return Ok(u);
        }
    }
    Err(Error::NoNonzerodivisor(NZD_TRIALS))
}

/// `(U : u^∞)` inside the free cover, as generators.
fn saturate(m: &ModulePresentation, u: &Polynomial) -> Result<Vec<Vector>> {
    let amb = m.ring().ambient();
    let shifts = m.shifts();
    let mut cur: Vec<Vector> = m.relations().to_vec();
    for _ in 0..crate::groebner::SATURATION_LIMIT {
        let next = amb.quotient_by(shifts, &cur, u);
        let cur_gb = amb.submodule_gb(shifts, &cur);
        if next.iter().all(|v| cur_gb.contains(v)) {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::SaturationLimit(crate::groebner::SATURATION_LIMIT))
}

/// Torsion submodule and torsion-free quotient.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    pub torsion: ModulePresentation,
    pub torsion_free: ModulePresentation,
    /// The element `u` with `torsion = (0 :_N u^∞)`.
    pub witness: Polynomial,
}

/// `⊤N = (0 :_N u^∞)` and `⊥N = N / ⊤N`.
///
/// Over a domain `u` is a nonzero maximal minor of the presentation matrix of
/// size `g - rank N`: `N_u` is free, so `u` kills a power of the torsion.
/// A caller-supplied witness must be a nonzerodivisor on `R`; it is trusted to
/// capture all torsion.
pub fn torsion_split(n: &ModulePresentation, witness: Option<&Polynomial>) -> Result<TorsionSplit> {
    let ring = n.ring();
    let u = match witness {
        Some(w) => {
            if !is_nonzerodivisor(ring, w) {
                return Err(Error::Precondition(format!("{w} is a zerodivisor on the ring")));
            }
            w.clone()
        }
        None => {
            if !ring.is_domain() {
                return Err(Error::Precondition(
                    "torsion split needs a domain or a nonzerodivisor witness".into(),
                ));
            }
            let n = n.minimize();
            match maximal_nonzero_minor(&n) {
                Some(f) => f,
                None => ring.base().constant(1),
            }
        }
    };
    let sat = saturate(n, &u)?;
    let ord = n.order();
    let sat: Vec<Vector> = sat.into_iter().map(|v| v.resorted(&ord)).collect();
    let torsion_free = ModulePresentation::raw(ring, n.shifts().to_vec(), sat.clone()).minimize();
    let torsion = n.submodule(&sat);
    Ok(TorsionSplit {
        torsion,
        torsion_free,
        witness: u,
    })
}

/// Rank over the fraction field of a domain, or of a free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Defined(usize),
    Undefined,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Defined(r) => write!(f, "{r}"),
            Rank::Undefined => write!(f, "undefined"),
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Rank::Defined(r) => s.serialize_u64(*r as u64),
            Rank::Undefined => s.serialize_str("undefined"),
        }
    }
}

fn det(mat: &[Vec<Polynomial>], ring: &Arc<RingDescriptor>) -> Polynomial {
    let n = mat.len();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = ring.base().zero();
    for c in 0..n {
        if mat[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &mat[0][c] * &det(&minor, ring);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    ring.reduce(&acc)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Rank of the presentation matrix modulo `I` and a witness minor.
fn matrix_rank(m: &ModulePresentation) -> (usize, Option<Polynomial>) {
    let ring = m.ring();
    let g = m.num_generators();
    let cols = m.columns();
    let rows: Vec<Vec<Polynomial>> = (0..g)
        .map(|i| cols.iter().map(|c| ring.reduce(&c[i])).collect())
        .collect();
    let mut best = (0, None);
    for r in 1..=g.min(cols.len()) {
        let mut found = None;
        'outer: for rs in combinations(g, r) {
            for cs in combinations(cols.len(), r) {
                let sub: Vec<Vec<Polynomial>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                    .collect();
                let d = det(&sub, ring);
                if !d.is_zero() {
                    found = Some(d);
                    break 'outer;
                }
            }
        }
        match found {
            Some(d) => best = (r, Some(d)),
            None => break,
        }
    }
    best
}

fn maximal_nonzero_minor(m: &ModulePresentation) -> Option<Polynomial> {
    matrix_rank(m).1
}

/// `g - rank(presentation)` over a domain; free rank for free modules;
/// `undefined` otherwise.
pub fn rank(m: &ModulePresentation) -> Rank {
    let mm = m.minimize();
    if mm.relations().is_empty() {
        return Rank::Defined(mm.num_generators());
    }
    if !m.ring().is_domain() {
        return Rank::Undefined;
    }
    Rank::Defined(mm.num_generators() - matrix_rank(&mm).0)
}

/// Elements `e_i` of the free cover, for building submodules.
pub fn generator_vector(m: &ModulePresentation, i: usize) -> Vector {
    Vector::unit(i, m.ring().nvars()).resorted(&ModuleOrder::top(m.shifts()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    #[test]
    fn annihilator_examples() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert!(annihilator(&m).equals(&Ideal::parse(&r, &["x"]).unwrap()));
        assert!(annihilator(&ModulePresentation::free(&r, vec![0, 1])).is_zero());
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let k = ModulePresentation::residue_field(&s);
        let sx = ModulePresentation::cyclic(&s, &[s.parse("x").unwrap()]).unwrap();
        let sum = k.direct_sum(&sx).unwrap();
        let oracle = Ideal::maximal(&s)
            .intersection(&Ideal::parse(&s, &["x"]).unwrap())
            .unwrap();
        assert!(annihilator(&sum).equals(&oracle));
    }

    #[test]
    fn dim_codim_examples() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let free = ModulePresentation::free(&r, vec![0]);
        assert_eq!(module_dim_codim(&free).unwrap(), (Extended::Finite(1), Extended::Finite(0)));
        let z = ModulePresentation::zero(&r);
        assert_eq!(module_dim_codim(&z).unwrap(), (Extended::NegInf, Extended::PosInf));
        let bad = make_ring(&["x", "y", "z"], &["x*y", "x*z"], 32003).unwrap();
        assert!(matches!(
            module_dim_codim(&ModulePresentation::free(&bad, vec![0])),
            Err(Error::NotEquidimensional)
        ));
    }

    #[test]
    fn dim_agrees_with_annihilator_dimension() {
        let s = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        let p = |t: &str| s.parse(t).unwrap();
        let m = ModulePresentation::from_columns(
            &s,
            vec![0, 1],
            &[vec![p("y^2"), p("x")], vec![p("z^2"), s.base().zero()], vec![s.base().zero(), p("x*z")]],
        )
        .unwrap();
        assert_eq!(m.dim(), annihilator(&m).dimension());
    }

    #[test]
    fn torsion_examples() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let k = ModulePresentation::residue_field(&s);
        let free = ModulePresentation::free(&s, vec![0]);
        let split = torsion_split(&k.direct_sum(&free).unwrap(), None).unwrap();
        assert_eq!(split.torsion.hilbert_function(0..4), vec![1, 0, 0, 0]);
        assert_eq!(split.torsion_free.hilbert_function(0..4), free.hilbert_function(0..4));
        let split = torsion_split(&k, None).unwrap();
        assert!(split.torsion_free.is_zero());
        assert_eq!(split.torsion.length(), Some(1));
        let m = ModulePresentation::ideal(&Ideal::maximal(&s));
        let split = torsion_split(&m, None).unwrap();
        assert!(split.torsion.is_zero());
        let x = s.parse("x+y").unwrap();
        let split = torsion_split(&k.direct_sum(&free).unwrap(), Some(&x)).unwrap();
        assert_eq!(split.torsion.length(), Some(1));
        // torsion not killed by a generic form
        let sx = ModulePresentation::cyclic(&s, &[s.parse("x").unwrap()]).unwrap();
        let split = torsion_split(&sx, None).unwrap();
        assert!(split.torsion_free.is_zero());
    }

    #[test]
    fn rank_examples() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        assert_eq!(rank(&ModulePresentation::free(&s, vec![0, 0, 1])), Rank::Defined(3));
        let m = ModulePresentation::ideal(&Ideal::maximal(&s));
        assert_eq!(rank(&m), Rank::Defined(1));
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let rx = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(rank(&rx), Rank::Undefined);
        assert_eq!(rank(&ModulePresentation::free(&r, vec![0])), Rank::Defined(1));
    }

    #[test]
    fn nonzerodivisor_search() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let u = find_nonzerodivisor(&r, 7).unwrap();
        assert!(is_nonzerodivisor(&r, &u));
        assert!(!is_nonzerodivisor(&r, &r.parse("x").unwrap()));
    }
}
