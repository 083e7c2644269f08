use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{resolve, ModulePresentation};

pub const MIN_COMPLEXITY_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    Stable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub bound: usize,
    pub betti: Vec<usize>,
    /// Inclusive window `[ceil(B/2), B]` the estimate reads.
    pub window: (usize, usize),
    pub complexity: usize,
    pub confidence: Confidence,
}

fn differences(s: &[i64]) -> Vec<i64> {
    s.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Least `c` such that on both parity classes of the window the `c`-th finite
/// differences of the Betti numbers are non-positive; `0` for a zero window.
pub fn estimate_from_betti(betti: &[usize], bound: usize) -> usize {
    let lo = bound.div_ceil(2);
    let win: Vec<(usize, i64)> = (lo..=bound)
        .map(|i| (i, betti.get(i).copied().unwrap_or(0) as i64))
        .collect();
    if win.iter().all(|&(_, b)| b == 0) {
        return 0;
    }
    let classes: Vec<Vec<i64>> = (0..2)
        .map(|p| win.iter().filter(|(i, _)| i % 2 == p).map(|&(_, b)| b).collect())
        .collect();
    let mut c = 1;
    loop {
        let ok = classes.iter().all(|s| {
            let mut d = s.clone();
            for _ in 0..c {
                d = differences(&d);
            }
            d.iter().all(|&x| x <= 0)
        });
        if ok {
            return c;
        }
        c += 1;
    }
}

/// Growth order of the Betti numbers of `M` through `B`.
pub fn complexity_estimate(m: &ModulePresentation, bound: usize) -> Result<ComplexityReport> {
    if bound < MIN_COMPLEXITY_BOUND {
        return Err(Error::Precondition(format!(
            "complexity bound must be at least {MIN_COMPLEXITY_BOUND}"
        )));
    }
    let res = resolve(m, bound)?;
    let betti = res.betti_numbers();
    let cx = estimate_from_betti(&betti, bound);
    let prev = estimate_from_betti(&betti, bound - 1);
    Ok(ComplexityReport {
        bound,
        window: (bound.div_ceil(2), bound),
        complexity: cx,
        confidence: if prev == cx { Confidence::Stable } else { Confidence::Unstable },
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    #[test]
    fn estimator_on_sequences() {
        let zero = [1, 2, 1, 0, 0, 0, 0, 0, 0];
        assert_eq!(estimate_from_betti(&zero, 8), 0);
        let periodic = [1, 2, 3, 2, 3, 2, 3, 2, 3];
        assert_eq!(estimate_from_betti(&periodic, 8), 1);
        let linear: Vec<usize> = (0..=10).map(|i| 2 * i + 1).collect();
        assert_eq!(estimate_from_betti(&linear, 10), 2);
        let quad: Vec<usize> = (0..=12).map(|i| i * i).collect();
        assert_eq!(estimate_from_betti(&quad, 12), 3);
    }

    #[test]
    fn complexity_examples() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let k = ModulePresentation::residue_field(&s);
        assert_eq!(complexity_estimate(&k, 8).unwrap().complexity, 0);
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let rep = complexity_estimate(&m, 8).unwrap();
        assert_eq!(rep.complexity, 1);
        assert_eq!(rep.confidence, Confidence::Stable);
        let ci = make_ring(&["x", "y"], &["x^2", "y^2"], 32003).unwrap();
        let kc = ModulePresentation::residue_field(&ci);
        let rep = complexity_estimate(&kc, 8).unwrap();
        assert_eq!(rep.betti[..5], [1, 2, 3, 4, 5]);
        assert_eq!(rep.complexity, 2);
        assert!(complexity_estimate(&kc, 7).is_err());
    }
}
