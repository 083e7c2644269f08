use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::field::PrimeField;
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{monomial_ideal, Ambient, GroebnerBasis, ModuleOrder, Vector};

/// A standard graded quotient `R = S/I` of `S = F_p[x_1..x_v]`.
#[derive(Clone, Debug)]
pub struct RingDescriptor {
    base: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    gb: Vec<Polynomial>,
    ci_sequence: Option<Vec<Polynomial>>,
    codim: usize,
    dim: usize,
    domain: bool,
    equidimensional: bool,
}

/// Serializable summary of a ring.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingSummary {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub defining_ideal: Vec<String>,
    pub dim: usize,
    pub codim: usize,
    pub complete_intersection: bool,
    pub regular: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RingOptions {
    /// Declared complete intersection sequence; verified.
    pub ci_sequence: Option<Vec<Polynomial>>,
    /// Caller asserts `I` is prime.
    pub assume_domain: bool,
    /// Caller asserts `S/I` is equidimensional.
    pub assume_equidimensional: bool,
}

/// Reduced grevlex Groebner basis of an ideal of `S`.
pub(crate) fn ideal_gb(ring: &Arc<PolyRing>, gens: &[Polynomial], defining: &[Polynomial]) -> Vec<Polynomial> {
    let amb = Ambient { ring, defining };
    let ord = ModuleOrder::top(&[0]);
    let vecs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
    amb.submodule_gb(&[0], &vecs)
        .into_elements()
        .into_iter()
        .map(|v| v.component(0, ring))
        .collect()
}

pub(crate) fn ideal_quotient_gb(
    ring: &Arc<PolyRing>,
    a: &[Polynomial],
    f: &Polynomial,
) -> Vec<Polynomial> {
    let amb = Ambient { ring, defining: &[] };
    let ord = ModuleOrder::top(&[0]);
    let a: Vec<Vector> = a.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
    let q: Vec<Polynomial> = amb
        .quotient_by(&[0], &a, f)
        .into_iter()
        .map(|v| v.component(0, ring))
        .collect();
    ideal_gb(ring, &q, &[])
}

/// Whether `seq` is a regular sequence in `S` (homogeneous, positive degree).
pub(crate) fn is_regular_sequence_in_s(ring: &Arc<PolyRing>, seq: &[Polynomial]) -> bool {
    for (i, f) in seq.iter().enumerate() {
        if f.is_zero() || f.degree() == Some(0) {
            return false;
        }
        let prev = ideal_gb(ring, &seq[..i], &[]);
        let q = ideal_quotient_gb(ring, &prev, f);
        if q != prev {
            return false;
        }
    }
    true
}

fn leading_monomials(gb: &[Polynomial]) -> Vec<super::Monomial> {
    gb.iter().filter_map(|g| g.leading_term().map(|t| t.0)).collect()
}

/// Builds a ring descriptor; see [`make_ring_with`] for declared structure.
pub fn make_ring(vars: &[&str], defining: &[&str], characteristic: u32) -> Result<Arc<RingDescriptor>> {
    let field = PrimeField::new(characteristic)?;
    let base = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect())?;
    let gens = defining
        .iter()
        .map(|g| base.parse(g))
        .collect::<Result<Vec<_>>>()?;
    make_ring_with(base, gens, RingOptions::default())
}

pub fn make_ring_with(
    base: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    options: RingOptions,
) -> Result<Arc<RingDescriptor>> {
    let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
    for g in &generators {
        if g.ring() != &base {
            return Err(Error::MixedRings);
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        if g.degree() == Some(0) {
            return Err(Error::ImproperIdeal);
        }
    }
    let gb = ideal_gb(&base, &generators, &[]);
    let nvars = base.nvars();
    let dim = monomial_ideal::dimension(&leading_monomials(&gb), nvars).ok_or(Error::ImproperIdeal)?;
    let codim = nvars - dim;

    let ci_sequence = match options.ci_sequence {
        Some(seq) => {
            let seq_gb = ideal_gb(&base, &seq, &[]);
            if seq_gb != gb {
                return Err(Error::NotRegularSequence(
                    "declared sequence does not generate the defining ideal".into(),
                ));
            }
            if !is_regular_sequence_in_s(&base, &seq) {
                let shown: Vec<String> = seq.iter().map(|f| f.to_string()).collect();
                return Err(Error::NotRegularSequence(shown.join(", ")));
            }
            Some(seq)
        }
        None => {
            if generators.is_empty() {
                Some(Vec::new())
            } else if generators.len() == codim && is_regular_sequence_in_s(&base, &generators) {
                Some(generators.clone())
            } else {
                None
            }
        }
    };
    let regular = generators.is_empty();
    let equidimensional = regular || ci_sequence.is_some() || options.assume_equidimensional;
    Ok(Arc::new(RingDescriptor {
        base,
        generators,
        gb,
        ci_sequence,
        codim,
        dim,
        domain: regular || options.assume_domain,
        equidimensional,
    }))
}

impl RingDescriptor {
    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn field(&self) -> PrimeField {
        self.base.field()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced grevlex Groebner basis of the defining ideal in `S`.
    pub fn defining_gb(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn ambient(&self) -> Ambient<'_> {
        Ambient {
            ring: &self.base,
            defining: &self.gb,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ci_sequence(&self) -> Option<&[Polynomial]> {
        self.ci_sequence.as_deref()
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.ci_sequence.is_some()
    }

    /// Cohen-Macaulay is certified here only through the CI structure.
    pub fn is_cohen_macaulay(&self) -> bool {
        self.is_complete_intersection()
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_domain(&self) -> bool {
        self.domain
    }

    pub fn is_equidimensional(&self) -> bool {
        self.equidimensional
    }

    /// The polynomial ring `S` viewed as a ring descriptor.
    pub fn polynomial_ring(&self) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor {
            base: self.base.clone(),
            generators: Vec::new(),
            gb: Vec::new(),
            ci_sequence: Some(Vec::new()),
            codim: 0,
            dim: self.nvars(),
            domain: true,
            equidimensional: true,
        })
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.base.parse(text)
    }

    /// Normal form of a polynomial modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.gb.is_empty() {
            return f.clone();
        }
        let ord = ModuleOrder::top(&[0]);
        let gb = GroebnerBasis::from_basis_unchecked(
            self.gb.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect(),
            self.field(),
            ord.clone(),
        );
        gb.normal_form(&Vector::from_poly(f, 0, &ord)).component(0, &self.base)
    }

    pub fn same_ring(&self, other: &RingDescriptor) -> bool {
        std::ptr::eq(self, other) || (self.base == other.base && self.gb == other.gb)
    }

    pub fn summary(&self) -> RingSummary {
        RingSummary {
            characteristic: self.field().characteristic(),
            variables: self.base.var_names().to_vec(),
            defining_ideal: self.generators.iter().map(|g| g.to_string()).collect(),
            dim: self.dim,
            codim: self.codim,
            complete_intersection: self.is_complete_intersection(),
            regular: self.is_regular(),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F{}[{}]",
            self.field().characteristic(),
            self.base.var_names().join(",")
        )?;
        if !self.generators.is_empty() {
            let g: Vec<String> = self
                .generators
                .iter()
                .map(|p| p.to_string().replace(' ', ""))
                .collect();
            write!(f, "/({})", g.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersurface_xy() {
        let r = make_ring(&["x", "y"], &["x*y"], 32003).unwrap();
        assert_eq!(r.codim(), 1);
        assert_eq!(r.dim(), 1);
        assert!(r.is_complete_intersection());
        assert!(!r.is_domain());
        assert_eq!(r.to_string(), "F32003[x,y]/(x*y)");
    }

    #[test]
    fn regular_ring() {
        let r = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        assert_eq!(r.codim(), 0);
        assert_eq!(r.dim(), 3);
        assert!(r.is_regular() && r.is_domain() && r.is_complete_intersection());
    }

    #[test]
    fn declared_ci_sequence_with_zerodivisor_is_rejected() {
        let base = PolyRing::new(PrimeField::default(), vec!["x".into(), "y".into()]).unwrap();
        let gens = vec![base.parse("x^2").unwrap(), base.parse("x*y").unwrap()];
        let opts = RingOptions {
            ci_sequence: Some(gens.clone()),
            ..Default::default()
        };
        assert!(matches!(
            make_ring_with(base.clone(), gens.clone(), opts),
            Err(Error::NotRegularSequence(_))
        ));
        // undeclared, the same ideal is simply not flagged CI
        let r = make_ring_with(base, gens, RingOptions::default()).unwrap();
        assert!(!r.is_complete_intersection());
        assert_eq!(r.codim(), 1);
    }

    #[test]
    fn quotient_witness_for_zerodivisor() {
        // (x^2) : xy contains x
        let base = PolyRing::new(PrimeField::default(), vec!["x".into(), "y".into()]).unwrap();
        let q = ideal_quotient_gb(&base, &[base.parse("x^2").unwrap()], &base.parse("x*y").unwrap());
        assert_eq!(q, vec![base.parse("x").unwrap()]);
    }

    #[test]
    fn rejects_inhomogeneous_and_unit() {
        assert!(matches!(
            make_ring(&["x", "y"], &["x^2 + y"], 32003),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(matches!(make_ring(&["x"], &["3"], 32003), Err(Error::ImproperIdeal)));
        assert!(matches!(make_ring(&["x"], &[], 32001), Err(Error::NotPrime(_))));
    }

    #[test]
    fn codim_two_ci() {
        let r = make_ring(&["x", "y"], &["x^2", "y^2"], 32003).unwrap();
        assert_eq!(r.codim(), 2);
        assert_eq!(r.dim(), 0);
        assert!(r.is_complete_intersection());
    }
}
