use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use torvanish_core::algebra::{make_ring_with, Monomial, PolyRing, Polynomial, PrimeField, RingDescriptor, RingOptions};
use torvanish_core::groebner::Ideal;
use torvanish_core::homology::{syzygy_module, ModulePresentation};
use torvanish_core::Result;

/// One ambient ring of the catalogue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSpec {
    pub name: String,
    pub vars: Vec<String>,
    pub defining: Vec<String>,
    pub assume_domain: bool,
}

impl RingSpec {
    fn new(name: &str, vars: &[&str], defining: &[&str], assume_domain: bool) -> Self {
        Self {
            name: name.into(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            defining: defining.iter().map(|s| s.to_string()).collect(),
            assume_domain,
        }
    }

    pub fn regular() -> Self {
        Self::new("regular", &["x", "y", "z"], &[], false)
    }

    pub fn hypersurface_xy() -> Self {
        Self::new("hypersurface-xy", &["x", "y"], &["x*y"], false)
    }

    /// An irreducible quadric cone, flagged as a domain.
    pub fn quadric() -> Self {
        Self::new("hypersurface-quadric", &["x", "y", "z"], &["x^2+y^2+z^2"], true)
    }

    pub fn ci_codim2() -> Self {
        Self::new("ci-codim2", &["x", "y", "z"], &["x^2", "y^2"], false)
    }

    pub fn build(&self, characteristic: u32) -> Result<Arc<RingDescriptor>> {
        let field = PrimeField::new(characteristic)?;
        let base = PolyRing::new(field, self.vars.clone())?;
        let gens = self
            .defining
            .iter()
            .map(|g| base.parse(g))
            .collect::<Result<Vec<_>>>()?;
        let opts = RingOptions {
            assume_domain: self.assume_domain,
            ..RingOptions::default()
        };
        make_ring_with(base, gens, opts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleClass {
    Cyclic,
    Syzygy,
    Ideal,
    MTimes,
    Free,
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub characteristic: u32,
    pub rings: Vec<RingSpec>,
    /// Random modules per ring and class.
    pub counts: Vec<(ModuleClass, usize)>,
    /// Random partners drawn for each module.
    pub partners: usize,
    /// Adds the fixed instances that make every validator non-vacuous.
    pub constructed: bool,
}

impl CorpusSpec {
    pub fn default_with_seed(seed: u64) -> Self {
        Self {
            seed,
            characteristic: torvanish_core::algebra::DEFAULT_CHAR,
            rings: vec![
                RingSpec::regular(),
                RingSpec::hypersurface_xy(),
                RingSpec::quadric(),
                RingSpec::ci_codim2(),
            ],
            counts: vec![
                (ModuleClass::Cyclic, 6),
                (ModuleClass::Syzygy, 6),
                (ModuleClass::Ideal, 3),
                (ModuleClass::MTimes, 3),
                (ModuleClass::Free, 1),
                (ModuleClass::Matrix, 3),
            ],
            partners: 2,
            constructed: true,
        }
    }

    pub fn empty(seed: u64) -> Self {
        Self {
            rings: Vec::new(),
            counts: Vec::new(),
            constructed: false,
            ..Self::default_with_seed(seed)
        }
    }
}

/// How a corpus module was built.
#[derive(Clone, Debug)]
pub enum Provenance {
    Cyclic(Ideal),
    Ideal(Ideal),
    Syzygy { base: Box<LabeledModule>, order: usize },
    MTimes(Box<LabeledModule>),
    Free,
    Matrix,
    ResidueField,
}

impl Provenance {
    pub fn class(&self) -> &'static str {
        match self {
            Provenance::Cyclic(_) => "cyclic",
            Provenance::Ideal(_) => "ideal",
            Provenance::Syzygy { .. } => "syzygy",
            Provenance::MTimes(_) => "m-times",
            Provenance::Free => "free",
            Provenance::Matrix => "matrix",
            Provenance::ResidueField => "residue-field",
        }
    }

    /// Human-readable construction tag, e.g. `syzygy(2) of cyclic R/(x)`.
    pub fn describe(&self) -> String {
        match self {
            Provenance::Cyclic(i) => format!("cyclic R/{i}"),
            Provenance::Ideal(i) => format!("ideal {i}"),
            Provenance::Syzygy { base, order } => format!("syzygy({order}) of {}", base.provenance.describe()),
            Provenance::MTimes(b) => format!("m * ({})", b.provenance.describe()),
            Provenance::Free => "free".into(),
            Provenance::Matrix => "random presentation".into(),
            Provenance::ResidueField => "residue field".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabeledModule {
    pub id: String,
    pub module: ModulePresentation,
    pub provenance: Provenance,
}

impl LabeledModule {
    pub fn new(id: impl Into<String>, module: ModulePresentation, provenance: Provenance) -> Self {
        Self {
            id: id.into(),
            module,
            provenance,
        }
    }

    /// `M = Ω^n M'` read from provenance; `(M, 0)` otherwise.
    pub fn syzygy_source(&self) -> (&LabeledModule, usize) {
        match &self.provenance {
            Provenance::Syzygy { base, order } => (base, *order),
            _ => (self, 0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub ring_name: String,
    pub ring: Arc<RingDescriptor>,
    pub m: LabeledModule,
    pub n: LabeledModule,
    /// Length of the regular sequences used by the lemma validators.
    pub param: usize,
    /// Seeds the generic linear forms of the lemma validators.
    pub form_seed: u64,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub spec: CorpusSpec,
    pub instances: Vec<Instance>,
    /// Module pools per ring, in catalogue order.
    pub pools: Vec<(String, Arc<RingDescriptor>, Vec<LabeledModule>)>,
}

impl Corpus {
    /// SHA-256 over the ordered instance list and presentations.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for inst in &self.instances {
            h.update(inst.id.as_bytes());
            h.update(b"\t");
            h.update(inst.ring.to_string().as_bytes());
            h.update(b"\t");
            h.update(inst.m.module.to_string().as_bytes());
            h.update(b"\t");
            h.update(inst.n.module.to_string().as_bytes());
            h.update(format!("\t{}\t{}\n", inst.param, inst.form_seed).as_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}

/// A random homogeneous form of degree `d` with up to three terms, nonzero in `R`.
pub fn random_form(ring: &Arc<RingDescriptor>, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let v = ring.nvars();
    let base = ring.base();
    let p = ring.field().characteristic();
    for _ in 0..64 {
        let nterms = rng.gen_range(1..=3);
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let mut e = vec![0u32; v];
            for _ in 0..d {
                e[rng.gen_range(0..v)] += 1;
            }
            let c = rng.gen_range(1..p);
            terms.push((Monomial::from_exponents(&e).unwrap(), c));
        }
        let f = ring.reduce(&base.from_terms(terms));
        if !f.is_zero() {
            return f;
        }
    }
    base.var(0).pow(d)
}

/// A linear form with every coefficient nonzero.
pub fn generic_linear_form(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> Polynomial {
    let v = ring.nvars();
    let p = ring.field().characteristic();
    let terms = (0..v)
        .map(|i| (Monomial::var(v, i, 1), rng.gen_range(1..p)))
        .collect();
    ring.base().from_terms(terms)
}

fn random_ideal(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> Ideal {
    let k = rng.gen_range(1..=2);
    let gens: Vec<Polynomial> = (0..k).map(|_| random_form(ring, rng.gen_range(1..=2), rng)).collect();
    Ideal::new(ring, gens).unwrap()
}

fn random_cyclic(ring: &Arc<RingDescriptor>, id: String, rng: &mut ChaCha8Rng) -> LabeledModule {
    let i = random_ideal(ring, rng);
    LabeledModule::new(id, ModulePresentation::cyclic_of(&i), Provenance::Cyclic(i))
}

fn random_matrix(ring: &Arc<RingDescriptor>, rng: &mut ChaCha8Rng) -> ModulePresentation {
    let shifts = vec![0, rng.gen_range(0..=1)];
    let nrels = rng.gen_range(1..=2);
    let mut cols = Vec::with_capacity(nrels);
    for _ in 0..nrels {
        let d = rng.gen_range(2..=3);
        loop {
            let col: Vec<Polynomial> = shifts
                .iter()
                .map(|&s| {
                    if rng.gen_bool(0.25) {
                        ring.base().zero()
                    } else {
                        random_form(ring, (d - s) as u32, rng)
                    }
                })
                .collect();
            if col.iter().any(|p| !p.is_zero()) {
                cols.push(col);
                break;
            }
        }
    }
    ModulePresentation::from_columns(ring, shifts, &cols).unwrap()
}

fn random_module(
    ring: &Arc<RingDescriptor>,
    class: ModuleClass,
    id: String,
    rng: &mut ChaCha8Rng,
) -> LabeledModule {
    for _ in 0..8 {
        let lm = match class {
            ModuleClass::Cyclic => random_cyclic(ring, id.clone(), rng),
            ModuleClass::Ideal => {
                let i = random_ideal(ring, rng);
                LabeledModule::new(id.clone(), ModulePresentation::ideal(&i), Provenance::Ideal(i))
            }
            ModuleClass::Syzygy => {
                let base = random_cyclic(ring, format!("{id}.base"), rng);
                let order = rng.gen_range(1..=2);
                let m = syzygy_module(&base.module, order).unwrap();
                LabeledModule::new(
                    id.clone(),
                    m,
                    Provenance::Syzygy {
                        base: Box::new(base),
                        order,
                    },
                )
            }
            ModuleClass::MTimes => {
                let base = random_cyclic(ring, format!("{id}.base"), rng);
                let m = base.module.maximal_ideal_times();
                LabeledModule::new(id.clone(), m, Provenance::MTimes(Box::new(base)))
            }
            ModuleClass::Free => {
                let rank = rng.gen_range(1..=2);
                LabeledModule::new(id.clone(), ModulePresentation::free(ring, vec![0; rank]), Provenance::Free)
            }
            ModuleClass::Matrix => LabeledModule::new(id.clone(), random_matrix(ring, rng), Provenance::Matrix),
        };
        if !lm.module.is_zero() {
            return lm;
        }
    }
    LabeledModule::new(id, ModulePresentation::free(ring, vec![0]), Provenance::Free)
}

/// Fixed instances per ring: `Ω^1 k` against `R`, `R/(x)` against itself and
/// against `R/(y)`, `R` against `k`, `m` against `R/(x)`.
fn constructed(ring: &Arc<RingDescriptor>, tag: &str) -> Vec<(LabeledModule, LabeledModule)> {
    let vars = ring.base().vars();
    let k = LabeledModule::new(
        format!("{tag}/k"),
        ModulePresentation::residue_field(ring),
        Provenance::ResidueField,
    );
    let free = LabeledModule::new(format!("{tag}/R"), ModulePresentation::free(ring, vec![0]), Provenance::Free);
    let cyc = |name: &str, f: &Polynomial| {
        let i = Ideal::new(ring, vec![f.clone()]).unwrap();
        LabeledModule::new(format!("{tag}/{name}"), ModulePresentation::cyclic_of(&i), Provenance::Cyclic(i))
    };
    let rx = cyc("R/(x)", &vars[0]);
    let ry = cyc("R/(y)", &vars[1]);
    let omega_k = LabeledModule::new(
        format!("{tag}/syz1(k)"),
        syzygy_module(&k.module, 1).unwrap(),
        Provenance::Syzygy {
            base: Box::new(k.clone()),
            order: 1,
        },
    );
    let omega_ry = LabeledModule::new(
        format!("{tag}/syz1(R/(y))"),
        syzygy_module(&ry.module, 1).unwrap(),
        Provenance::Syzygy {
            base: Box::new(ry.clone()),
            order: 1,
        },
    );
    let m = Ideal::maximal(ring);
    let mm = LabeledModule::new(format!("{tag}/m"), ModulePresentation::ideal(&m), Provenance::Ideal(m));
    vec![
        (omega_k, free.clone()),
        (omega_ry, rx.clone()),
        (rx.clone(), rx.clone()),
        (rx.clone(), ry),
        (free, k),
        (mm, rx),
    ]
}

/// Deterministic corpus for `spec`.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let mut instances = Vec::new();
    let mut pools = Vec::new();
    for (ri, rs) in spec.rings.iter().enumerate() {
        let ring = rs.build(spec.characteristic)?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(ri as u64));
        let mut pool = Vec::new();
        for &(class, count) in &spec.counts {
            for j in 0..count {
                let id = format!("{}/{}{}", rs.name, class_tag(class), j);
                pool.push(random_module(&ring, class, id, &mut rng));
            }
        }
        let mut pairs = Vec::new();
        if spec.constructed {
            pairs.extend(constructed(&ring, &rs.name));
        }
        if !pool.is_empty() {
            for m in &pool {
                for _ in 0..spec.partners {
                    let n = pool.choose(&mut rng).unwrap();
                    pairs.push((m.clone(), n.clone()));
                }
            }
        }
        for (m, n) in pairs {
            let k = instances.len();
            instances.push(Instance {
                id: format!("{}#{}", rs.name, k),
                ring_name: rs.name.clone(),
                ring: ring.clone(),
                param: 1 + rng.gen_range(0..2),
                form_seed: rng.gen(),
                m,
                n,
            });
        }
        pools.push((rs.name.clone(), ring, pool));
    }
    Ok(Corpus {
        spec: spec.clone(),
        instances,
        pools,
    })
}

fn class_tag(c: ModuleClass) -> &'static str {
    match c {
        ModuleClass::Cyclic => "cyc",
        ModuleClass::Syzygy => "syz",
        ModuleClass::Ideal => "ideal",
        ModuleClass::MTimes => "mM",
        ModuleClass::Free => "free",
        ModuleClass::Matrix => "mat",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> CorpusSpec {
        CorpusSpec {
            rings: vec![RingSpec::hypersurface_xy()],
            counts: vec![(ModuleClass::Cyclic, 10)],
            partners: 1,
            constructed: false,
            ..CorpusSpec::default_with_seed(seed)
        }
    }

    #[test]
    fn cyclic_corpus_is_reproducible() {
        let a = generate_corpus(&small(42)).unwrap();
        let b = generate_corpus(&small(42)).unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a.digest(), b.digest());
        let c = generate_corpus(&small(43)).unwrap();
        assert_ne!(a.digest(), c.digest());
    }

    #[test]
    fn syzygy_provenance() {
        let spec = CorpusSpec {
            counts: vec![(ModuleClass::Syzygy, 4)],
            ..small(1)
        };
        let c = generate_corpus(&spec).unwrap();
        for inst in &c.instances {
            let (base, order) = inst.m.syzygy_source();
            assert!(order == 1 || order == 2);
            assert!(matches!(base.provenance, Provenance::Cyclic(_)));
            let again = syzygy_module(&base.module, order).unwrap();
            assert_eq!(again.to_string(), inst.m.module.to_string());
        }
    }

    #[test]
    fn empty_description_gives_empty_corpus() {
        assert!(generate_corpus(&CorpusSpec::empty(0)).unwrap().is_empty());
    }

    #[test]
    fn default_size() {
        let c = generate_corpus(&CorpusSpec::default_with_seed(0)).unwrap();
        assert!(c.len() >= 150, "{}", c.len());
    }
}
