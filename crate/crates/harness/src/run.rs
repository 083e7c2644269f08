use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use torvanish_core::groebner::Ideal;
use torvanish_core::lab::{burch_check, rigidity_probe};
use torvanish_core::{Error, Result};

use crate::cache::Cache;
use crate::corpus::{generate_corpus, generic_linear_form, Corpus, CorpusSpec, Instance};
use crate::report::{Counts, Draft, ReportVerdict, TheoremReport};
use crate::validators::*;

pub const SCHEMA: u32 = 1;
pub const DEFAULT_BOUND: usize = 8;
pub const THREADS_ENV: &str = "TORVANISH_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub bound: usize,
    pub characteristic: u32,
    /// Worker count; `None` reads `TORVANISH_THREADS`, then uses all cores.
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Adds wall-clock timings, which makes reports non-reproducible.
    pub timing: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            bound: DEFAULT_BOUND,
            characteristic: torvanish_core::algebra::DEFAULT_CHAR,
            threads: None,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusInfo {
    pub digest: String,
    pub instances: usize,
    pub per_ring: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: HarnessConfig,
    pub corpus: CorpusInfo,
    pub summary: BTreeMap<String, Counts>,
    pub totals: Counts,
    pub theorems: BTreeMap<String, Vec<TheoremReport>>,
}

impl RunReport {
    pub fn violations(&self) -> Vec<&TheoremReport> {
        self.theorems
            .values()
            .flatten()
            .filter(|r| r.verdict == ReportVerdict::Violated)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).unwrap();
        s.push('\n');
        s
    }

    /// Replayable record of every violated report, `None` when there are none.
    pub fn quarantine_json(&self) -> Option<String> {
        let v = self.violations();
        if v.is_empty() {
            return None;
        }
        #[derive(Serialize)]
        struct Quarantine<'a> {
            schema: u32,
            config: &'a HarnessConfig,
            corpus_digest: &'a str,
            violations: Vec<&'a TheoremReport>,
        }
        let q = Quarantine {
            schema: SCHEMA,
            config: &self.config,
            corpus_digest: &self.corpus.digest,
            violations: v,
        };
        let mut s = serde_json::to_string_pretty(&q).unwrap();
        s.push('\n');
        Some(s)
    }
}

fn thread_count(cfg: &HarnessConfig) -> usize {
    cfg.threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or(0)
}

fn error_report(theorem: &'static str, inst: &Instance, bound: usize, e: Error) -> TheoremReport {
    let mut d = Draft::new(theorem, &inst.id, inst.ring.to_string(), bound);
    d.input("M", &inst.m.module).input("N", &inst.n.module);
    d.finish_with(ReportVerdict::Unsupported, format!("unsupported: {e}"))
}

/// `m`, `m * (x_1, x_2)`, `m^2`, rotated by `index`, keeping the first Burch one.
pub fn burch_ideal_for(inst: &Instance, index: usize) -> Option<Ideal> {
    let ring = &inst.ring;
    let m = Ideal::maximal(ring);
    let vars = ring.base().vars();
    let pair = Ideal::new(ring, vars[..2.min(vars.len())].to_vec()).ok()?;
    let cands = [m.clone(), m.product(&pair).ok()?, m.product(&m).ok()?];
    (0..cands.len())
        .map(|k| &cands[(index + k) % cands.len()])
        .find(|i| !i.is_zero() && burch_check(i).unwrap_or(false))
        .cloned()
}

fn timed(
    theorem: &'static str,
    inst: &Instance,
    bound: usize,
    timing: bool,
    f: impl FnOnce() -> Result<TheoremReport>,
) -> TheoremReport {
    let t0 = Instant::now();
    let mut r = f().unwrap_or_else(|e| error_report(theorem, inst, bound, e));
    if timing {
        r.elapsed_ms = Some(t0.elapsed().as_millis() as u64);
    }
    r
}

/// All eight validators on one instance, in [`THEOREMS`] order.
pub fn evaluate_instance(ctx: &Cache, inst: &Instance, index: usize, bound: usize, timing: bool) -> Vec<TheoremReport> {
    let ring = &inst.ring;
    let id = inst.id.as_str();
    let mut rng = ChaCha8Rng::seed_from_u64(inst.form_seed);
    let x1 = vec![generic_linear_form(ring, &mut rng)];
    let xs: Vec<_> = (0..inst.param).map(|_| generic_linear_form(ring, &mut rng)).collect();
    let (m_prime, n) = inst.m.syzygy_source();
    vec![
        timed(MAIN_THEOREM, inst, bound, timing, || {
            check_main_theorem(ctx, id, ring, m_prime, &inst.n, n, bound)
        }),
        timed(AUSPROP, inst, bound, timing, || check_ausprop(ctx, id, ring, &inst.m, &inst.n, bound)),
        timed(LEMMA_REGSEQ, inst, bound, timing, || {
            check_lemma_regseq(ctx, id, ring, &inst.m, &inst.n, &x1, bound)
        }),
        timed(LEMMA_POWERS, inst, bound, timing, || {
            check_lemma_powers(ctx, id, ring, &inst.m, &inst.n, &xs, bound)
        }),
        timed(LEMMA_CODIM, inst, bound, timing, || {
            check_lemma_codim(ctx, id, ring, &inst.m, &inst.n, inst.param, bound)
        }),
        timed(DAO, inst, bound, timing, || {
            check_corollary(ctx, id, ring, &inst.m, &inst.n, Corollary::Dao, bound)
        }),
        timed(CELIKBAS, inst, bound, timing, || {
            check_corollary(ctx, id, ring, &inst.m, &inst.n, Corollary::Celikbas, bound)
        }),
        timed(BURCH, inst, bound, timing, || {
            let i = burch_ideal_for(inst, index)
                .ok_or_else(|| Error::Precondition("no Burch ideal among the candidates".into()))?;
            check_burch(ctx, id, ring, &i, &inst.n, bound)
        }),
    ]
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Evaluates every instance; report order follows the corpus regardless of
/// scheduling.
pub fn run_corpus(corpus: &Corpus, cfg: &HarnessConfig) -> RunReport {
    let ctx = Cache::new();
    let per_instance: Vec<Vec<TheoremReport>> = in_pool(thread_count(cfg), || {
        corpus
            .instances
            .par_iter()
            .enumerate()
            .map(|(k, inst)| evaluate_instance(&ctx, inst, k, cfg.bound, cfg.timing))
            .collect()
    });
    let mut theorems: BTreeMap<String, Vec<TheoremReport>> =
        THEOREMS.iter().map(|t| (t.to_string(), Vec::new())).collect();
    for reports in per_instance {
        for r in reports {
            theorems.get_mut(&r.theorem).unwrap().push(r);
        }
    }
    let mut summary = BTreeMap::new();
    let mut totals = Counts::default();
    for (t, rs) in &theorems {
        let mut c = Counts::default();
        for r in rs {
            c.add(r);
            totals.add(r);
        }
        summary.insert(t.clone(), c);
    }
    let mut per_ring = BTreeMap::new();
    for inst in &corpus.instances {
        *per_ring.entry(inst.ring_name.clone()).or_insert(0) += 1;
    }
    RunReport {
        schema: SCHEMA,
        config: cfg.clone(),
        corpus: CorpusInfo {
            digest: corpus.digest(),
            instances: corpus.len(),
            per_ring,
        },
        summary,
        totals,
        theorems,
    }
}

/// Default corpus for `cfg.seed` and characteristic, then [`run_corpus`].
pub fn run_harness(cfg: &HarnessConfig) -> Result<RunReport> {
    let spec = CorpusSpec {
        characteristic: cfg.characteristic,
        ..CorpusSpec::default_with_seed(cfg.seed)
    };
    let corpus = generate_corpus(&spec)?;
    Ok(run_corpus(&corpus, cfg))
}

#[derive(Clone, Debug, Serialize)]
pub struct MurthyRow {
    pub ring: String,
    pub codim: usize,
    pub n: usize,
    pub pairs: usize,
    pub windows_probed: usize,
    pub windows_vanishing: usize,
    pub violations: usize,
}

/// `rigidity_probe` with `n = c + 1` for every pool module of a CI ring of
/// codimension `c >= 1`, against the next `partners` pool modules.
pub fn murthy_probe(corpus: &Corpus, partners: usize, bound: usize) -> Result<Vec<MurthyRow>> {
    let mut rows = Vec::new();
    for (name, ring, pool) in &corpus.pools {
        let Some(seq) = ring.ci_sequence() else { continue };
        let c = seq.len();
        if c == 0 || pool.is_empty() {
            continue;
        }
        let n = c + 1;
        let results: Vec<Result<_>> = pool
            .par_iter()
            .enumerate()
            .map(|(k, m)| {
                let ps: Vec<_> = (1..=partners)
                    .map(|j| pool[(k + j) % pool.len()].module.clone())
                    .collect();
                rigidity_probe(&m.module, &ps, n, bound)
            })
            .collect();
        let mut row = MurthyRow {
            ring: name.clone(),
            codim: c,
            n,
            pairs: 0,
            windows_probed: 0,
            windows_vanishing: 0,
            violations: 0,
        };
        for r in results {
            let r = r?;
            row.pairs += partners;
            row.windows_probed += r.windows_probed;
            row.windows_vanishing += r.windows_vanishing;
            row.violations += r.violations.len();
        }
        rows.push(row);
    }
    Ok(rows)
}
