use super::functors::ext;
use super::module::ModulePresentation;
use super::resolution::homology_at;
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, ModuleOrder, Vector};
use crate::value::Extended;

fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, p, cur, out);
            cur.pop();
        }
    }
    go(0, r, p, &mut cur, &mut out);
    out
}

/// `K_p(f) ⊗ M` together with the differential `K_p ⊗ M -> K_{p-1} ⊗ M`.
struct KoszulLevel {
    shifts: Vec<i32>,
    rels: Vec<Vector>,
    /// Columns of the outgoing differential (empty for `p = 0`).
    out: Vec<Vector>,
}

fn koszul_levels(seq: &[Polynomial], m: &ModulePresentation) -> Vec<KoszulLevel> {
    let r = seq.len();
    let q = m.num_generators();
    let field = m.ring().field();
    let degs: Vec<i32> = seq.iter().map(|f| f.degree().unwrap_or(0) as i32).collect();
    let all: Vec<Vec<Vec<usize>>> = (0..=r).map(|p| subsets(r, p)).collect();
    let mut levels = Vec::with_capacity(r + 1);
    for p in 0..=r {
        let mut shifts = Vec::with_capacity(all[p].len() * q);
        for s in &all[p] {
            let d: i32 = s.iter().map(|&j| degs[j]).sum();
            for &b in m.shifts() {
                shifts.push(d + b);
            }
        }
        let ord = ModuleOrder::top(&shifts);
        let mut rels = Vec::new();
        for blk in 0..all[p].len() {
            for rel in m.relations() {
                rels.push(
                    rel.map_positions(|x| Some((blk * q) as u32 + x))
                        .resorted(&ord),
                );
            }
        }
        let mut out = Vec::new();
        if p > 0 {
            let mut tshifts = Vec::new();
            for s in &all[p - 1] {
                let d: i32 = s.iter().map(|&j| degs[j]).sum();
                for &b in m.shifts() {
                    tshifts.push(d + b);
                }
            }
            let tord = ModuleOrder::top(&tshifts);
            for s in &all[p] {
                for l in 0..q {
                    let mut col = Vector::zero();
                    for (t, &j) in s.iter().enumerate() {
                        let mut rest = s.clone();
                        rest.remove(t);
                        let idx = all[p - 1].binary_search(&rest).unwrap();
                        let sign = if t % 2 == 0 { 1 } else { field.neg(1) };
                        let term = Vector::from_poly(&seq[j].scale(sign), idx * q + l, &tord);
                        col = col.add(&term, field, &tord);
                    }
                    out.push(col);
                }
            }
        }
        levels.push(KoszulLevel { shifts, rels, out });
    }
    levels
}

/// `H_p(f; M)` for `0 <= p <= len(f)`.
pub fn koszul_homology(seq: &[Polynomial], m: &ModulePresentation) -> Result<Vec<ModulePresentation>> {
    for f in seq {
        if !f.is_homogeneous() || f.is_zero() {
            return Err(Error::NotHomogeneous(f.to_string()));
        }
        if f.ring() != m.ring().base() {
            return Err(Error::MixedRings);
        }
    }
    let ring = m.ring();
    let levels = koszul_levels(seq, m);
    let r = seq.len();
    let mut out = Vec::with_capacity(r + 1);
    for p in 0..=r {
        let lv = &levels[p];
        let incoming: &[Vector] = if p < r { &levels[p + 1].out } else { &[] };
        let h = if p == 0 {
            homology_at(ring, &lv.shifts, &lv.rels, incoming, None)
        } else {
            let t = &levels[p - 1];
            homology_at(ring, &lv.shifts, &lv.rels, incoming, Some((&t.shifts, &lv.out, &t.rels)))
        };
        out.push(h);
    }
    Ok(out)
}

/// Largest `p` with `H_p(f; M) != 0`, `None` when all vanish.
fn top_nonzero(hs: &[ModulePresentation]) -> Option<usize> {
    hs.iter().rposition(|h| !h.is_zero())
}

/// `depth_m M = v - max{i : H_i(x_1..x_v; M) != 0}`; `+inf` for zero.
pub fn depth(m: &ModulePresentation) -> Result<Extended> {
    let vars = m.ring().base().vars();
    let hs = koszul_homology(&vars, m)?;
    Ok(match top_nonzero(&hs) {
        None => Extended::PosInf,
        Some(t) => Extended::Finite((vars.len() - t) as i64),
    })
}

/// `min{i : Ext^i_R(k, M) != 0}`; `+inf` for zero.
pub fn depth_via_ext(m: &ModulePresentation) -> Result<Extended> {
    if m.is_zero() {
        return Ok(Extended::PosInf);
    }
    let ring = m.ring();
    let k = ModulePresentation::residue_field(ring);
    let bound = ring.dim().max(1);
    let e = ext(&k, m, bound)?;
    Ok(e
        .entries
        .iter()
        .position(|x| !x.zero)
        .map(|i| Extended::Finite(i as i64))
        .unwrap_or(Extended::PosInf))
}

/// `grade(a, M) = r - max{i : H_i(a; M) != 0}` for generators `a_1..a_r`;
/// `+inf` when `aM = M`.
pub fn grade(a: &Ideal, m: &ModulePresentation) -> Result<Extended> {
    let gens: Vec<Polynomial> = a
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    if gens.is_empty() {
        return Ok(if m.is_zero() { Extended::PosInf } else { Extended::Finite(0) });
    }
    let hs = koszul_homology(&gens, m)?;
    Ok(match top_nonzero(&hs) {
        None => Extended::PosInf,
        Some(t) => Extended::Finite((gens.len() - t) as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    #[test]
    fn depth_examples() {
        let s = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        assert_eq!(depth(&ModulePresentation::free(&s, vec![0])).unwrap(), Extended::Finite(3));
        assert_eq!(depth(&ModulePresentation::residue_field(&s)).unwrap(), Extended::Finite(0));
        assert_eq!(depth(&ModulePresentation::zero(&s)).unwrap(), Extended::PosInf);
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(depth(&m).unwrap(), Extended::Finite(1));
        assert_eq!(depth_via_ext(&m).unwrap(), Extended::Finite(1));
        assert_eq!(
            depth_via_ext(&ModulePresentation::residue_field(&s)).unwrap(),
            Extended::Finite(0)
        );
    }

    #[test]
    fn grade_examples() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let free = ModulePresentation::free(&s, vec![0]);
        assert_eq!(grade(&Ideal::maximal(&s), &free).unwrap(), Extended::Finite(2));
        let sx = ModulePresentation::cyclic(&s, &[s.parse("x").unwrap()]).unwrap();
        assert_eq!(grade(&Ideal::parse(&s, &["x"]).unwrap(), &sx).unwrap(), Extended::Finite(0));
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let rf = ModulePresentation::free(&r, vec![0]);
        assert_eq!(grade(&Ideal::parse(&r, &["x+y"]).unwrap(), &rf).unwrap(), Extended::Finite(1));
        // redundant generators leave the grade unchanged
        let red = Ideal::parse(&s, &["x", "y", "x+y"]).unwrap();
        assert_eq!(grade(&red, &free).unwrap(), Extended::Finite(2));
        let unit = Ideal::unit(&s);
        assert_eq!(grade(&unit, &free).unwrap(), Extended::PosInf);
    }
}
