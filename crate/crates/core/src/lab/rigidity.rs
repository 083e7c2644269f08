use serde::Serialize;

use super::burch::burch_check;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homology::{depth, tor, ModulePresentation};

/// `Tor_t = .. = Tor_{t+n-1} = 0` held for `partner` but `Tor_first != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityViolation {
    pub partner: usize,
    pub t: usize,
    pub window: (usize, usize),
    pub first_nonvanishing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub n: usize,
    pub bound: usize,
    /// `(partner, t)` windows inspected, `1 <= t <= B - n`.
    pub windows_probed: usize,
    /// Windows on which all `n` consecutive Tor modules vanished.
    pub windows_vanishing: usize,
    pub violations: Vec<RigidityViolation>,
}

impl RigidityReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Vanishing flags `Tor_0..Tor_B`, probed for `n` consecutive zeros followed by
/// a nonzero entry.
pub fn rigidity_windows(zero: &[bool], n: usize, partner: usize) -> (usize, usize, Vec<RigidityViolation>) {
    let bound = zero.len() - 1;
    let (mut probed, mut vanishing) = (0, 0);
    let mut out = Vec::new();
    for t in 1..=bound.saturating_sub(n) {
        probed += 1;
        let hi = t + n - 1;
        if !(t..=hi).all(|i| zero[i]) {
            continue;
        }
        vanishing += 1;
        if let Some(j) = (hi + 1..=bound).find(|&j| !zero[j]) {
            out.push(RigidityViolation {
                partner,
                t,
                window: (t, hi),
                first_nonvanishing: j,
            });
        }
    }
    (probed, vanishing, out)
}

/// Tests `n`-Tor-rigidity of `M` against every partner through `Tor_B`.
pub fn rigidity_probe(
    m: &ModulePresentation,
    partners: &[ModulePresentation],
    n: usize,
    bound: usize,
) -> Result<RigidityReport> {
    if n == 0 {
        return Err(Error::Precondition("rigidity order must be positive".into()));
    }
    if bound < n + 2 {
        return Err(Error::Precondition(format!("bound must be at least n + 2 = {}", n + 2)));
    }
    let mut rep = RigidityReport {
        n,
        bound,
        windows_probed: 0,
        windows_vanishing: 0,
        violations: Vec::new(),
    };
    for (idx, p) in partners.iter().enumerate() {
        let t = tor(m, p, bound)?;
        let zero: Vec<bool> = t.entries.iter().map(|e| e.zero).collect();
        let (a, b, v) = rigidity_windows(&zero, n, idx);
        rep.windows_probed += a;
        rep.windows_vanishing += b;
        rep.violations.extend(v);
    }
    Ok(rep)
}

/// `depth M == dim R` over a Cohen-Macaulay ambient.
pub fn mcm_check(m: &ModulePresentation) -> Result<bool> {
    let ring = m.ring();
    if !ring.is_cohen_macaulay() {
        return Err(Error::Unsupported("maximal Cohen-Macaulay check needs a Cohen-Macaulay ring".into()));
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(depth(m)?.finite() == Some(ring.dim() as i64))
}

#[derive(Clone, Debug)]
pub enum WitnessKind {
    /// Any module over a complete intersection of codimension `c`.
    CiModule(ModulePresentation),
    /// `R/I` for a Burch ideal `I`.
    BurchQuotient(Ideal),
    /// `mM` for a module with `mM != 0`.
    MTimesModule(ModulePresentation),
}

/// A module known to be Tor-rigid of the returned order.
#[derive(Clone, Debug)]
pub struct RigidWitness {
    pub module: ModulePresentation,
    pub order: usize,
    pub kind: &'static str,
}

pub fn rigid_witness(kind: WitnessKind) -> Result<RigidWitness> {
    match kind {
        WitnessKind::CiModule(m) => {
            let Some(seq) = m.ring().ci_sequence() else {
                return Err(Error::Precondition("ring is not a complete intersection".into()));
            };
            let order = seq.len() + 1;
            Ok(RigidWitness { module: m, order, kind: "ci-module" })
        }
        WitnessKind::BurchQuotient(i) => {
            if !burch_check(&i)? {
                return Err(Error::Precondition(format!("{i} is not Burch")));
            }
            let module = ModulePresentation::cyclic_of(&i);
            Ok(RigidWitness { module, order: 2, kind: "burch-quotient" })
        }
        WitnessKind::MTimesModule(m) => {
            let mm = m.maximal_ideal_times();
            if mm.is_zero() {
                return Err(Error::Precondition("mM vanishes".into()));
            }
            Ok(RigidWitness { module: mm, order: 2, kind: "m-times-module" })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    #[test]
    fn example_rigidity() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let rx = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let ry = ModulePresentation::cyclic(&r, &[r.parse("y").unwrap()]).unwrap();
        let one = rigidity_probe(&rx, &[ry.clone()], 1, 10).unwrap();
        assert!(!one.consistent());
        assert_eq!(one.violations[0].t, 1);
        assert_eq!(one.violations[0].first_nonvanishing, 2);
        assert_eq!(one.windows_probed, 9);
        let two = rigidity_probe(&rx, &[ry], 2, 10).unwrap();
        assert!(two.consistent());
        assert_eq!(two.windows_vanishing, 0);
        assert!(rigidity_probe(&rx, &[], 2, 3).is_err());
    }

    #[test]
    fn windows_logic() {
        let z = [false, true, true, false, true, true];
        let (p, v, out) = rigidity_windows(&z, 2, 0);
        assert_eq!((p, v), (3, 1));
        assert_eq!(out[0].first_nonvanishing, 3);
    }

    #[test]
    fn mcm_examples() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let rx = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert!(mcm_check(&rx).unwrap());
        assert!(!mcm_check(&ModulePresentation::residue_field(&r)).unwrap());
        assert!(mcm_check(&ModulePresentation::zero(&r)).is_err());
    }

    #[test]
    fn witnesses() {
        let s = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        let m = Ideal::maximal(&s);
        let w = rigid_witness(WitnessKind::BurchQuotient(m.clone())).unwrap();
        assert_eq!(w.order, 2);
        assert!(rigid_witness(WitnessKind::BurchQuotient(Ideal::parse(&s, &["x", "y"]).unwrap())).is_err());
        let k = ModulePresentation::residue_field(&s);
        assert!(rigid_witness(WitnessKind::MTimesModule(k)).is_err());
        let ci = make_ring(&["x", "y"], &["x^2", "y^2"], 32003).unwrap();
        let w = rigid_witness(WitnessKind::CiModule(ModulePresentation::residue_field(&ci))).unwrap();
        assert_eq!(w.order, 3);
    }
}
