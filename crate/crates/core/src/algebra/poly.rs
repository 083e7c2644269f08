use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// The ambient polynomial ring `S = F_p[x_1..x_v]`, standard graded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(Self { field, vars }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(self: &Arc<Self>, c: i64) -> Polynomial {
        let c = self.field.from_i64(c);
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: u32) -> Polynomial {
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial {
        self.monomial(Monomial::var(self.nvars(), index, 1), 1)
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(self: &Arc<Self>, terms: Vec<(Monomial, u32)>) -> Polynomial {
        Polynomial::normalize(self.clone(), terms)
    }

    /// Parses expressions such as `x^2*y - 3*z + 1`; `*` between factors is optional.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        let mut p = ExprParser {
            ring: self,
            src: text.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// A polynomial with nonzero coefficients, terms sorted by descending grevlex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

/// Binary operations for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    fn normalize(ring: Arc<PolyRing>, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field;
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { ring, terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    /// Total degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self::normalize(self.ring.clone(), terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.mul(b), f.mul(*ca, *cb)));
            }
        }
        Ok(Self::normalize(self.ring.clone(), terms))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, f.mul(*a, c)))
            .filter(|t| t.1 != 0)
            .collect();
        Self {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ring.field.neg(1))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect();
        Self {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(*c)),
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u32 {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|t| t.1)
            .unwrap_or(0)
    }
}

/// Exact arithmetic between two polynomials of the same ring.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Sub => a.try_sub(b),
        PolyOp::Mul => a.try_mul(b),
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let mag = s.unsigned_abs();
            if i == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.to_string_with(&self.ring.vars))?;
            } else {
                write!(f, "{mag}*{}", m.to_string_with(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match MonomialOrder::Grevlex.cmp(&a.0, &b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

struct ExprParser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            if e > u16::MAX as u32 {
                return Err(self.error("exponent too large"));
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.ring.field.characteristic() as u64;
                Ok(self.ring.constant((n % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(Error::UnknownVariable {
                            name: name.to_string(),
                            column: start + 1,
                        })
                    }
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            PrimeField::default(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = ring(&["x", "y"]);
        let a = r.parse("x + y").unwrap();
        let b = r.parse("32002*x").unwrap();
        assert_eq!(poly_arith(&a, &b, PolyOp::Add).unwrap(), r.parse("y").unwrap());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&["x", "y"]);
        let p = &r.parse("x+y").unwrap() * &r.parse("x-y").unwrap();
        assert_eq!(p, r.parse("x^2 - y^2").unwrap());
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn monomial_product_degree() {
        let r = ring(&["x", "y"]);
        let p = &r.parse("x*y").unwrap() * &r.parse("x").unwrap();
        assert_eq!(p, r.parse("x^2 y").unwrap());
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ring(&["x", "y"]).parse("x").unwrap();
        let b = ring(&["u"]).parse("u").unwrap();
        assert!(matches!(poly_arith(&a, &b, PolyOp::Mul), Err(Error::MixedRings)));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = ring(&["x", "y"]);
        match r.parse("x + z") {
            Err(Error::UnknownVariable { name, column }) => {
                assert_eq!(name, "z");
                assert_eq!(column, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(r.parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("(x"), Err(Error::Parse { .. })));
    }

    fn arb_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), 0u32..32003), 0..5).prop_map(
            move |ts| {
                r.from_terms(
                    ts.into_iter()
                        .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]).unwrap(), k))
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_associates(
            (a, b, c) in {
                let r = ring(&["x", "y", "z"]);
                (arb_poly(r.clone()), arb_poly(r.clone()), arb_poly(r))
            }
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn display_round_trips(a in arb_poly(ring(&["x", "y", "z"]))) {
            let again = a.ring().parse(&a.to_string()).unwrap();
            prop_assert_eq!(again, a);
        }
    }

    #[test]
    fn homogeneous_degrees_add() {
        let r = ring(&["x", "y", "z"]);
        let a = r.parse("x^2 + y*z").unwrap();
        let b = r.parse("x*y*z - z^3").unwrap();
        let p = &a * &b;
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(5));
    }
}
