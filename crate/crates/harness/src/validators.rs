use std::sync::Arc;

use torvanish_core::algebra::{Polynomial, RingDescriptor};
use torvanish_core::groebner::Ideal;
use torvanish_core::homology::{annihilator, rank, syzygy_module, ModulePresentation, Rank, TorProfile};
use torvanish_core::lab::{burch_check, mcm_check, Confidence, SerreReport, Verdict};
use torvanish_core::{Error, Extended, Result};

use crate::cache::Cache;
use crate::corpus::{LabeledModule, Provenance};
use crate::report::{tail_window, Conclusion, Draft, HypothesisCheck, TheoremReport};

pub const MAIN_THEOREM: &str = "main_theorem";
pub const AUSPROP: &str = "ausprop";
pub const LEMMA_REGSEQ: &str = "lemma_regseq";
pub const LEMMA_POWERS: &str = "lemma_powers";
pub const LEMMA_CODIM: &str = "lemma_codim";
pub const DAO: &str = "dao";
pub const CELIKBAS: &str = "celikbas";
pub const BURCH: &str = "burch";

pub const THEOREMS: [&str; 8] = [
    MAIN_THEOREM,
    AUSPROP,
    LEMMA_REGSEQ,
    LEMMA_POWERS,
    LEMMA_CODIM,
    DAO,
    CELIKBAS,
    BURCH,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corollary {
    Dao,
    Celikbas,
    Burch,
}

fn fmt_ext(e: Extended) -> String {
    match e {
        Extended::Finite(v) => v.to_string(),
        Extended::PosInf => "inf".into(),
        Extended::NegInf => "-inf".into(),
    }
}

fn require_ci(ring: &RingDescriptor) -> Result<usize> {
    ring.ci_sequence()
        .map(|s| s.len())
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not certified as a complete intersection")))
}

fn serre_hyp(id: &str, what: &str, rep: &Arc<SerreReport>) -> HypothesisCheck {
    let statement = format!("{what} satisfies (S_{})", rep.n);
    match rep.verdict {
        Verdict::Satisfies => HypothesisCheck::checked(id, statement, true, "Ext criterion"),
        Verdict::Fails => {
            let w = rep.witness.unwrap();
            HypothesisCheck::checked(
                id,
                statement,
                false,
                format!("codim Ext^{} = {} < {}", w.j, fmt_ext(w.codim), w.required),
            )
        }
        Verdict::Unsupported => HypothesisCheck::unsupported(id, statement, "ambient not a complete intersection"),
    }
}

fn codims(t: &TorProfile, lo: usize, hi: usize) -> Vec<Extended> {
    (lo..=hi)
        .map(|i| t.entry(i).codim.unwrap_or(Extended::NegInf))
        .collect()
}

/// `codim Tor_i >= need` for `lo <= i <= hi`, with the observed codims as text.
fn codim_at_least(t: &TorProfile, lo: usize, hi: usize, need: i64) -> (bool, String) {
    let c = codims(t, lo, hi);
    let ok = c.iter().all(|x| x.at_least(need));
    let shown: Vec<String> = c.into_iter().map(fmt_ext).collect();
    (ok, format!("codim Tor_i for {lo} <= i <= {hi}: [{}]", shown.join(", ")))
}

fn tor_vanishing(t: &TorProfile, lo: usize, hi: usize) -> Conclusion {
    match (lo..=hi).find(|&i| !t.entry(i).zero) {
        None => Conclusion::Holds(format!("Tor_{lo}..Tor_{hi} vanish")),
        Some(j) => Conclusion::Fails(format!("Tor_{j} != 0 (length {})", t.entry(j).length_text())),
    }
}

/// Smallest Tor-rigidity order certified for a module by its construction.
pub fn certified_rigidity(lm: &LabeledModule, ring: &RingDescriptor) -> Option<(usize, String)> {
    let mut best: Option<(usize, String)> = None;
    let mut offer = |n: usize, why: String| {
        if best.as_ref().map_or(true, |(b, _)| n < *b) {
            best = Some((n, why));
        }
    };
    if lm.module.is_free() {
        offer(1, "free module".into());
    }
    if ring.is_regular() {
        offer(1, "module over a regular ring".into());
    }
    if let Some(seq) = ring.ci_sequence() {
        offer(seq.len() + 1, format!("module over a complete intersection of codimension {}", seq.len()));
    }
    match &lm.provenance {
        Provenance::Cyclic(i) if !i.is_zero() && burch_check(i).unwrap_or(false) => {
            offer(2, format!("R/I with I = {i} Burch"))
        }
        Provenance::Ideal(i) if !i.is_zero() && burch_check(i).unwrap_or(false) => {
            offer(2, format!("Burch ideal {i}"))
        }
        Provenance::MTimes(_) if !lm.module.is_zero() => offer(2, "mM with mM != 0".into()),
        _ => {}
    }
    best
}

fn new_draft(theorem: &'static str, id: &str, ring: &RingDescriptor, bound: usize) -> Draft {
    Draft::new(theorem, id, ring.to_string(), bound)
}

/// Bounded check of: `R` satisfies `(S_max(n,1))`, `N` satisfies `(S_n)` with
/// finite CI-dimension on `X^n`, `M = Ω^n M'` with `M'` `(n+1)`-Tor-rigid and
/// `codim Tor_i(M, N) >= n + 1` on the tail window; then `M ⊗ N` satisfying
/// `(S_{n+1})` forces `Tor_i(M, N) = 0` for `1 <= i <= B`.
pub fn check_main_theorem(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    m_prime: &LabeledModule,
    n_mod: &LabeledModule,
    n: usize,
    bound: usize,
) -> Result<TheoremReport> {
    require_ci(ring)?;
    let m = if n == 0 {
        m_prime.module.clone()
    } else {
        syzygy_module(&m_prime.module, n)?
    };
    let nn = &n_mod.module;
    let tor = ctx.tor(&m, nn, bound)?;
    let mut d = new_draft(MAIN_THEOREM, id, ring, bound);
    d.input("M'", &m_prime.module)
        .input("M", &m)
        .input("N", nn)
        .param("n", n)
        .param("M'_provenance", m_prime.provenance.describe())
        .param("N_provenance", n_mod.provenance.describe());
    d.notes
        .push(format!("M is the computed syzygy Ω^{n} M'; modules only stably isomorphic to it are not searched"));
    let k = n.max(1);
    let free = ModulePresentation::free(ring, vec![0]);
    let mut h = serre_hyp("ring", "R", &ctx.serre(&free, k)?);
    h.detail = format!("{}; ring condition read as (S_max(n,1))", h.detail);
    d.push(h);
    d.push(serre_hyp("(1)", "N", &ctx.serre(nn, n)?));
    d.push(HypothesisCheck::checked(
        "(1')",
        format!("CI-dim N_p finite for p in X^{n}"),
        true,
        "sufficient condition: ambient complete intersection",
    ));
    let h2 = format!("M = Ω^{n} M' with M' {}-Tor-rigid", n + 1);
    d.push(match certified_rigidity(m_prime, ring) {
        Some((r, why)) if r <= n + 1 => HypothesisCheck::assumed("(2)", h2, format!("{r}-Tor-rigid: {why}")),
        Some((r, why)) => HypothesisCheck::unsupported("(2)", h2, format!("only {r}-Tor-rigidity certified ({why})")),
        None => HypothesisCheck::unsupported("(2)", h2, "no rigidity certificate"),
    });
    let (lo, hi) = tail_window(bound);
    let (ok, det) = codim_at_least(&tor, lo, hi, n as i64 + 1);
    d.push(HypothesisCheck::checked(
        "(3)",
        format!("codim Tor_i(M, N) >= {} for i >> 0", n + 1),
        ok,
        det,
    ));
    let t = m.tensor(nn)?;
    d.push(serre_hyp("tensor", "M ⊗ N", &ctx.serre(&t, n + 1)?));
    d.tor = Some(tor.clone());
    Ok(d.finish(|| tor_vanishing(&tor, 1, bound)))
}

/// `N` has a rank and `M` is 1-Tor-rigid: `M ⊗ N` satisfying `(S_1)` forces
/// `Tor_i(M, N) = 0`.
pub fn check_ausprop(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    m: &LabeledModule,
    n: &LabeledModule,
    bound: usize,
) -> Result<TheoremReport> {
    require_ci(ring)?;
    let mut d = new_draft(AUSPROP, id, ring, bound);
    d.input("M", &m.module).input("N", &n.module);
    if ring.is_domain() {
        let how = if ring.is_regular() { "polynomial ring" } else { "declared prime defining ideal" };
        d.push(HypothesisCheck::assumed("domain", "R is a domain", how));
    } else {
        d.push(HypothesisCheck::unsupported("domain", "R is a domain", "rank is undefined over this ring"));
    }
    match rank(&n.module) {
        Rank::Defined(r) => d.push(HypothesisCheck::checked("rank", "N has a rank", true, format!("rank {r}"))),
        Rank::Undefined => d.push(HypothesisCheck::checked("rank", "N has a rank", false, "rank undefined")),
    };
    d.push(match certified_rigidity(m, ring) {
        Some((1, why)) => HypothesisCheck::assumed("rigid", "M is 1-Tor-rigid", why),
        Some((r, why)) => HypothesisCheck::unsupported("rigid", "M is 1-Tor-rigid", format!("only {r}-Tor-rigidity certified ({why})")),
        None => HypothesisCheck::unsupported("rigid", "M is 1-Tor-rigid", "no rigidity certificate"),
    });
    let t = m.module.tensor(&n.module)?;
    let s = ctx.serre(&t, 1)?;
    let tor = ctx.tor(&m.module, &n.module, bound)?;
    if !tor.entry(1).zero && !s.satisfies() {
        d.notes.push("contrapositive: Tor_1 != 0 and M ⊗ N fails (S_1)".into());
    }
    d.push(serre_hyp("tensor", "M ⊗ N", &s));
    d.tor = Some(tor.clone());
    Ok(d.finish(|| tor_vanishing(&tor, 1, bound)))
}

/// `x` N-regular: `Tor_1(M, N/xN) = 0` implies `Tor_1(M, N) = 0`, and the
/// converse when `x` is also regular on `M ⊗ N`.
pub fn check_lemma_regseq(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    m: &LabeledModule,
    n: &LabeledModule,
    x: &[Polynomial],
    bound: usize,
) -> Result<TheoremReport> {
    let mut d = new_draft(LEMMA_REGSEQ, id, ring, bound);
    let xs: Vec<String> = x.iter().map(|f| f.to_string()).collect();
    d.input("M", &m.module).input("N", &n.module).param("x", xs.join(", "));
    let regular = n.module.is_regular_sequence(x);
    d.push(HypothesisCheck::checked("(x)", "x is N-regular", regular, "Koszul quotient test"));
    let t = m.module.tensor(&n.module)?;
    let conv = regular && t.is_regular_sequence(x);
    d.push(
        HypothesisCheck::checked(
            "converse",
            "x is regular on M ⊗ N",
            conv,
            if conv { "converse tested" } else { "converse skipped" },
        )
        .gate(),
    );
    if !regular {
        return Ok(d.finish(|| unreachable!()));
    }
    let tor = ctx.tor(&m.module, &n.module, bound.max(1))?;
    let nx = n.module.quotient_by_elements(x);
    let torx = ctx.tor(&m.module, &nx, 1)?;
    let a = torx.entry(1).zero;
    let b = tor.entry(1).zero;
    d.tor = Some(tor);
    Ok(d.finish(|| {
        if a && !b {
            return Conclusion::Fails("Tor_1(M, N/xN) = 0 but Tor_1(M, N) != 0".into());
        }
        if conv && b && !a {
            return Conclusion::Fails("x regular on M ⊗ N, Tor_1(M, N) = 0 but Tor_1(M, N/xN) != 0".into());
        }
        match (a, conv && b) {
            (false, false) => Conclusion::Vacuous("vacuous: Tor_1(M, N/xN) != 0 and converse not applicable".into()),
            (true, _) => Conclusion::Holds(format!(
                "Tor_1(M, N/xN) = 0 and Tor_1(M, N) = 0; converse {}",
                if conv { "tested" } else { "skipped" }
            )),
            (false, true) => Conclusion::Holds("converse direction consistent".into()),
        }
    }))
}

/// `x_1..x_n` N-regular annihilating `Tor_1..Tor_n(M, N)`:
/// `Tor_{n+1}(M, N/x^{2^{n-1}}N) = 0` forces `Tor_1..Tor_{n+1}(M, N) = 0`.
pub fn check_lemma_powers(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    m: &LabeledModule,
    n: &LabeledModule,
    x: &[Polynomial],
    bound: usize,
) -> Result<TheoremReport> {
    let len = x.len();
    if len == 0 {
        return Err(Error::Precondition("sequence must be nonempty".into()));
    }
    let e = 1u32 << (len - 1);
    let mut d = new_draft(LEMMA_POWERS, id, ring, bound);
    let xs: Vec<String> = x.iter().map(|f| f.to_string()).collect();
    d.input("M", &m.module)
        .input("N", &n.module)
        .param("x", xs.join(", "))
        .param("n", len)
        .param("exponent", e);
    let regular = n.module.is_regular_sequence(x);
    d.push(HypothesisCheck::checked("(x)", format!("x_1..x_{len} is N-regular"), regular, "Koszul quotient test"));
    if !regular {
        return Ok(d.finish(|| unreachable!()));
    }
    let tor = ctx.tor(&m.module, &n.module, bound.max(len + 1))?;
    let mut killed = true;
    for i in 1..=len {
        let t = tor.entry(i);
        if t.zero {
            continue;
        }
        let ann = annihilator(&t.module);
        if !x.iter().all(|f| ann.contains(f)) {
            killed = false;
        }
    }
    d.push(HypothesisCheck::checked(
        "(ann)",
        format!("x annihilates Tor_1..Tor_{len}(M, N)"),
        killed,
        "annihilator containment",
    ));
    let powers: Vec<Polynomial> = x.iter().map(|f| f.pow(e)).collect();
    let nx = n.module.quotient_by_elements(&powers);
    let tx = ctx.tor(&m.module, &nx, len + 1)?;
    d.push(HypothesisCheck::checked(
        "antecedent",
        format!("Tor_{}(M, N/x^{e}N) = 0", len + 1),
        tx.entry(len + 1).zero,
        format!("length {}", tx.entry(len + 1).length_text()),
    ));
    d.tor = Some(tor.clone());
    Ok(d.finish(|| tor_vanishing(&tor, 1, len + 1)))
}

/// `N` MCM over a complete intersection: `codim Tor_i >= n + 1` on the tail
/// window forces it for every `1 <= i <= B`.
pub fn check_lemma_codim(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    m: &LabeledModule,
    n_mod: &LabeledModule,
    n: usize,
    bound: usize,
) -> Result<TheoremReport> {
    require_ci(ring)?;
    let mut d = new_draft(LEMMA_CODIM, id, ring, bound);
    d.input("M", &m.module).input("N", &n_mod.module).param("n", n);
    let mcm = match mcm_check(&n_mod.module) {
        Ok(b) => b,
        Err(Error::ZeroModule) => false,
        Err(e) => return Err(e),
    };
    d.push(HypothesisCheck::checked(
        "(mcm)",
        format!("CI-dim N_p = 0 for p in X^{n}"),
        mcm,
        "sufficient condition: N maximal Cohen-Macaulay over a complete intersection",
    ));
    let tor = ctx.tor(&m.module, &n_mod.module, bound)?;
    let (lo, hi) = tail_window(bound);
    let (ok, det) = codim_at_least(&tor, lo, hi, n as i64 + 1);
    d.push(HypothesisCheck::checked(
        "antecedent",
        format!("codim Tor_i(M, N) >= {} for i >> 0", n + 1),
        ok,
        det,
    ));
    d.tor = Some(tor.clone());
    Ok(d.finish(|| {
        let (ok, det) = codim_at_least(&tor, 1, bound, n as i64 + 1);
        if ok {
            Conclusion::Holds(det)
        } else {
            Conclusion::Fails(det)
        }
    }))
}

/// The Dao-type and Celikbas-type corollaries on a module pair.
pub fn check_corollary(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    m: &LabeledModule,
    n: &LabeledModule,
    which: Corollary,
    bound: usize,
) -> Result<TheoremReport> {
    let c = require_ci(ring)?;
    let tor = ctx.tor(&m.module, &n.module, bound)?;
    let t = m.module.tensor(&n.module)?;
    let (lo, hi) = tail_window(bound);
    match which {
        Corollary::Dao => {
            let mut d = new_draft(DAO, id, ring, bound);
            d.input("M", &m.module).input("N", &n.module).param("c", c);
            d.push(serre_hyp("(M)", "M", &ctx.serre(&m.module, c)?));
            d.push(serre_hyp("(N)", "N", &ctx.serre(&n.module, c)?));
            let (ok, det) = codim_at_least(&tor, lo, hi, c as i64 + 1);
            d.push(HypothesisCheck::checked("(codim)", format!("codim Tor_i >= {} for i >> 0", c + 1), ok, det));
            d.push(serre_hyp("tensor", "M ⊗ N", &ctx.serre(&t, c + 1)?));
            d.tor = Some(tor.clone());
            Ok(d.finish(|| tor_vanishing(&tor, 1, bound)))
        }
        Corollary::Celikbas => {
            let mut d = new_draft(CELIKBAS, id, ring, bound);
            d.input("M", &m.module).input("N", &n.module).param("c", c);
            d.push(HypothesisCheck::checked("(c)", "c >= 1", c >= 1, format!("c = {c}")));
            d.push(HypothesisCheck::assumed(
                "(unramified)",
                "completion is a quotient of an unramified regular local ring",
                "assumed by corpus construction: graded equicharacteristic ambient",
            ));
            if c >= 1 {
                d.push(serre_hyp("(M)", "M", &ctx.serre(&m.module, c - 1)?));
                d.push(serre_hyp("(N)", "N", &ctx.serre(&n.module, c - 1)?));
                let (ok, det) = codim_at_least(&tor, lo, hi, c as i64);
                d.push(HypothesisCheck::checked("(codim)", format!("codim Tor_i >= {c} for i >> 0"), ok, det));
                d.push(serre_hyp("tensor", "M ⊗ N", &ctx.serre(&t, c)?));
            }
            d.tor = Some(tor.clone());
            let cb = bound.max(torvanish_core::lab::MIN_COMPLEXITY_BOUND);
            let cm = if d.all_hold() { Some(ctx.complexity(&m.module, cb)?) } else { None };
            let cn = if d.all_hold() { Some(ctx.complexity(&n.module, cb)?) } else { None };
            Ok(d.finish(|| {
                if let Conclusion::Holds(s) = tor_vanishing(&tor, 1, bound) {
                    return Conclusion::Holds(s);
                }
                let (cm, cn) = (cm.unwrap(), cn.unwrap());
                let shown = format!(
                    "cx M = {} ({:?}), cx N = {} ({:?}) on [{}, {}]",
                    cm.complexity, cm.confidence, cn.complexity, cn.confidence, cm.window.0, cm.window.1
                );
                if cm.complexity == c && cn.complexity == c {
                    Conclusion::Holds(format!("Tor nonzero and {shown}"))
                } else if cm.confidence == Confidence::Stable && cn.confidence == Confidence::Stable {
                    Conclusion::Fails(format!("Tor nonzero and {shown}"))
                } else {
                    Conclusion::Undecided(format!("unsupported: complexity estimate unstable, {shown}"))
                }
            }))
        }
        Corollary::Burch => Err(Error::Precondition("use check_burch for the Burch corollary".into())),
    }
}

/// `R` satisfies `(S_1)`, `I` Burch of height at least 2, `N` satisfies `(S_1)`
/// with finite CI-dimension on `X^1`: `I ⊗ N` satisfying `(S_2)` forces `pd N <= 2`.
pub fn check_burch(
    ctx: &Cache,
    id: &str,
    ring: &Arc<RingDescriptor>,
    i: &Ideal,
    n: &LabeledModule,
    bound: usize,
) -> Result<TheoremReport> {
    require_ci(ring)?;
    if !burch_check(i)? {
        return Err(Error::Precondition(format!("{i} is not Burch")));
    }
    let mut d = new_draft(BURCH, id, ring, bound);
    d.input("I", i).input("N", &n.module);
    let free = ModulePresentation::free(ring, vec![0]);
    d.push(serre_hyp("ring", "R", &ctx.serre(&free, 1)?));
    d.push(HypothesisCheck::checked("(burch)", "I is Burch", true, "mI != m(I : m)"));
    let ht = i.dimension().subtracted_from(ring.dim() as i64);
    d.push(HypothesisCheck::checked("(ht)", "ht I >= 2", ht.at_least(2), format!("ht I = {}", fmt_ext(ht))));
    d.push(serre_hyp("(N)", "N", &ctx.serre(&n.module, 1)?));
    d.push(HypothesisCheck::checked(
        "(1')",
        "CI-dim N_p finite for p in X^1",
        true,
        "sufficient condition: ambient complete intersection",
    ));
    let im = ModulePresentation::ideal(i);
    let t = im.tensor(&n.module)?;
    d.push(serre_hyp("tensor", "I ⊗ N", &ctx.serre(&t, 2)?));
    let steps = bound.max(3);
    let res = if d.all_hold() { Some(ctx.resolution(&n.module, steps)?) } else { None };
    Ok(d.finish(|| {
        let res = res.unwrap();
        let b = res.betti_numbers();
        if b.get(3).copied().unwrap_or(0) == 0 {
            Conclusion::Holds(format!("pd N <= 2 (Betti numbers {:?})", &b[..b.len().min(4)]))
        } else {
            Conclusion::Fails(format!("F_3 != 0 in the minimal resolution (Betti numbers {b:?})"))
        }
    }))
}
