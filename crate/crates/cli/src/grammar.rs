//! Line-oriented input language for rings, ideals and modules.
//!
//! ```text
//! ring [NAME =] F<p>[v1, ..., vk] [/(f1, ..., fm)] [domain]
//! ideal [NAME] [over RING] [=] (g1, ..., gm)
//! module [NAME] [over RING] [=] gens [d1, ..., dg] rels [[c11, ..., c1g], ...]
//! module [NAME] [over RING] [=] EXPR
//! ```
//!
//! `EXPR` is `RING/(g1, ..., gm)`, `RING`, `RING^r`, `k`, `m` or a declared
//! module name; `R` always names the ring in scope. `#` starts a comment.

use std::fmt;
use std::sync::Arc;

use torvanish_core::algebra::{make_ring_with, PolyRing, Polynomial, PrimeField, RingDescriptor, RingOptions};
use torvanish_core::groebner::Ideal;
use torvanish_core::homology::ModulePresentation;
use torvanish_core::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug)]
pub enum Statement {
    Ring {
        name: String,
        ring: Arc<RingDescriptor>,
    },
    Ideal {
        name: String,
        ring: String,
        ideal: Ideal,
    },
    Module {
        name: String,
        ring: String,
        module: ModulePresentation,
    },
}

impl Statement {
    pub fn name(&self) -> &str {
        match self {
            Statement::Ring { name, .. } | Statement::Ideal { name, .. } | Statement::Module { name, .. } => name,
        }
    }

    /// Same kind, name and ring; equal ideals; identical presentations.
    pub fn same_as(&self, other: &Statement) -> bool {
        match (self, other) {
            (Statement::Ring { name: a, ring: r }, Statement::Ring { name: b, ring: s }) => {
                a == b && r.to_string() == s.to_string() && r.is_domain() == s.is_domain()
            }
            (
                Statement::Ideal { name: a, ring: r, ideal: i },
                Statement::Ideal { name: b, ring: s, ideal: j },
            ) => a == b && r == s && i.equals(j),
            (
                Statement::Module { name: a, ring: r, module: m },
                Statement::Module { name: b, ring: s, module: n },
            ) => a == b && r == s && m.to_string() == n.to_string(),
            _ => false,
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring { name, ring } => {
                write!(f, "ring {name} = {ring}")?;
                if ring.is_domain() && !ring.is_regular() {
                    write!(f, " domain")?;
                }
                Ok(())
            }
            Statement::Ideal { name, ring, ideal } => write!(f, "ideal {name} over {ring} = {ideal}"),
            Statement::Module { name, ring, module } => write!(f, "module {name} over {ring} {module}"),
        }
    }
}

/// Named objects declared so far; the most recent ring is in scope.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    rings: Vec<(String, Arc<RingDescriptor>)>,
    ideals: Vec<(String, Ideal)>,
    modules: Vec<(String, ModulePresentation)>,
    current: Option<usize>,
    /// Characteristic assumed when a ring omits `F<p>`.
    pub default_char: Option<u32>,
}

fn lookup<'a, T>(v: &'a [(String, T)], name: &str) -> Option<&'a T> {
    v.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Scope {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_ring(&mut self, name: &str, ring: Arc<RingDescriptor>) {
        self.rings.push((name.into(), ring));
        self.current = Some(self.rings.len() - 1);
    }

    pub fn current_ring(&self) -> Option<(&str, &Arc<RingDescriptor>)> {
        self.current.map(|i| (self.rings[i].0.as_str(), &self.rings[i].1))
    }

    /// A declared ring; `R` falls back to the ring in scope.
    pub fn ring(&self, name: &str) -> Option<&Arc<RingDescriptor>> {
        lookup(&self.rings, name).or_else(|| (name == "R").then(|| self.current_ring().map(|(_, r)| r)).flatten())
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        lookup(&self.ideals, name)
    }

    pub fn module(&self, name: &str) -> Option<&ModulePresentation> {
        lookup(&self.modules, name)
    }

    pub fn modules(&self) -> impl Iterator<Item = (&str, &ModulePresentation)> {
        self.modules.iter().map(|(n, m)| (n.as_str(), m))
    }

    fn declare(&mut self, st: &Statement) {
        match st {
            Statement::Ring { name, ring } => self.add_ring(name, ring.clone()),
            Statement::Ideal { name, ideal, .. } => self.ideals.push((name.clone(), ideal.clone())),
            Statement::Module { name, module, .. } => self.modules.push((name.clone(), module.clone())),
        }
    }

    /// Parses one line; `None` for blank and comment lines.
    pub fn statement(&mut self, line: usize, text: &str) -> PResult<Option<Statement>> {
        let body = text.split('#').next().unwrap_or("");
        let mut c = Cursor::new(body, line, 0);
        if c.at_end() {
            return Ok(None);
        }
        let st = if c.keyword("ring") {
            self.ring_statement(&mut c)?
        } else if c.keyword("ideal") {
            self.ideal_statement(&mut c)?
        } else if c.keyword("module") {
            self.module_statement(&mut c)?
        } else {
            return Err(c.error("expected `ring`, `ideal` or `module`"));
        };
        c.finish()?;
        self.declare(&st);
        Ok(Some(st))
    }

    fn ring_statement(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let save = c.pos;
        let mut name = "R".to_string();
        if let Some(id) = c.ident() {
            if c.eat('=') {
                name = id;
            } else {
                c.pos = save;
            }
        }
        let ring = ring_body(c, self.default_char)?;
        Ok(Statement::Ring { name, ring })
    }

    fn ring_ref(&self, c: &mut Cursor) -> PResult<(String, Arc<RingDescriptor>)> {
        if c.keyword("over") {
            let col = c.column();
            let n = c.ident().ok_or_else(|| c.error("expected a ring name"))?;
            let r = self
                .ring(&n)
                .ok_or_else(|| c.error_at(col, &format!("unknown ring `{n}`")))?
                .clone();
            return Ok((n, r));
        }
        match self.current_ring() {
            Some((n, r)) => Ok((n.to_string(), r.clone())),
            None => Err(c.error("no ring in scope")),
        }
    }

    fn optional_name(&self, c: &mut Cursor, default: &str) -> String {
        let save = c.pos;
        match c.ident() {
            Some(id) if !["over", "gens"].contains(&id.as_str()) && !c.peek_is('/') && !c.peek_is('^') => id,
            _ => {
                c.pos = save;
                default.into()
            }
        }
    }

    fn ideal_statement(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let name = self.optional_name(c, "I");
        let (rname, ring) = self.ring_ref(c)?;
        c.eat('=');
        let ideal = ideal_body(c, &ring)?;
        Ok(Statement::Ideal {
            name,
            ring: rname,
            ideal,
        })
    }

    fn module_statement(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let save = c.pos;
        let mut name = self.optional_name(c, "M");
        if c.pos != save {
            // a bare expression such as `module k` has no name
            let more = c.peek_is('=') || c.peek_keyword("over") || c.peek_keyword("gens") || c.peek_ident();
            if !more {
                c.pos = save;
                name = "M".into();
            }
        }
        let (rname, ring) = self.ring_ref(c)?;
        c.eat('=');
        let module = self.module_body(c, &ring)?;
        Ok(Statement::Module {
            name,
            ring: rname,
            module,
        })
    }

    fn module_body(&self, c: &mut Cursor, ring: &Arc<RingDescriptor>) -> PResult<ModulePresentation> {
        if c.keyword("gens") {
            let shifts = c.int_list()?;
            let col = c.column();
            if !c.keyword("rels") {
                return Err(c.error("expected `rels`"));
            }
            c.expect('[')?;
            let mut cols = Vec::new();
            if !c.eat(']') {
                loop {
                    c.expect('[')?;
                    cols.push(c.poly_list(ring.base(), ']')?);
                    if c.eat(']') {
                        break;
                    }
                    c.expect(',')?;
                }
            }
            let cols: Vec<Vec<Polynomial>> = cols.into_iter().map(|v| v.into_iter().map(|p| ring.reduce(&p)).collect()).collect();
            return ModulePresentation::from_columns(ring, shifts, &cols).map_err(|e| c.core_error_at(col, e));
        }
        let col = c.column();
        let Some(id) = c.ident() else {
            return Err(c.error("expected `gens` or a module expression"));
        };
        if let Some(r) = self.ring(&id) {
            if !r.same_ring(ring) {
                return Err(c.error_at(col, &format!("`{id}` is not the ring of this module")));
            }
            if c.eat('/') {
                let i = ideal_body(c, ring)?;
                return Ok(ModulePresentation::cyclic_of(&i));
            }
            if c.eat('^') {
                let r = c.integer()? as usize;
                return Ok(ModulePresentation::free(ring, vec![0; r]));
            }
            return Ok(ModulePresentation::free(ring, vec![0]));
        }
        if let Some(m) = self.module(&id) {
            if !m.ring().same_ring(ring) {
                return Err(c.error_at(col, &format!("module `{id}` lives over another ring")));
            }
            return Ok(m.clone());
        }
        match id.as_str() {
            "k" => Ok(ModulePresentation::residue_field(ring)),
            "m" => Ok(ModulePresentation::ideal(&Ideal::maximal(ring))),
            _ => Err(c.error_at(col, &format!("unknown module or ring `{id}`"))),
        }
    }

    /// A module expression on its own, as given to `--M`.
    pub fn module_expr(&self, text: &str) -> PResult<ModulePresentation> {
        let mut c = Cursor::new(text, 1, 0);
        let (_, ring) = self.ring_ref(&mut c)?;
        let m = self.module_body(&mut c, &ring)?;
        c.finish()?;
        Ok(m)
    }

    /// `(g1, ..., gm)`, `m` or a declared ideal name, as given to `--ideal`.
    pub fn ideal_expr(&self, text: &str) -> PResult<Ideal> {
        let mut c = Cursor::new(text, 1, 0);
        let (_, ring) = self.ring_ref(&mut c)?;
        let save = c.pos;
        if let Some(id) = c.ident() {
            let i = if id == "m" {
                Ideal::maximal(&ring)
            } else {
                self.ideal(&id).cloned().ok_or_else(|| c.error_at(save + 1, &format!("unknown ideal `{id}`")))?
            };
            c.finish()?;
            return Ok(i);
        }
        let i = ideal_body(&mut c, &ring)?;
        c.finish()?;
        Ok(i)
    }
}

fn ideal_body(c: &mut Cursor, ring: &Arc<RingDescriptor>) -> PResult<Ideal> {
    let col = c.column();
    c.expect('(')?;
    let gens = c.poly_list(ring.base(), ')')?;
    Ideal::new(ring, gens).map_err(|e| c.core_error_at(col, e))
}

fn ring_body(c: &mut Cursor, default_char: Option<u32>) -> PResult<Arc<RingDescriptor>> {
    let col = c.column();
    let p = match c.ident() {
        Some(f) if f.starts_with('F') && f.len() > 1 && f[1..].bytes().all(|b| b.is_ascii_digit()) => {
            f[1..].parse::<u32>().map_err(|_| c.error_at(col, "characteristic out of range"))?
        }
        Some(_) => return Err(c.error_at(col, "expected a field `F<p>`")),
        None => default_char.unwrap_or(torvanish_core::algebra::DEFAULT_CHAR),
    };
    let field = PrimeField::new(p).map_err(|e| c.core_error_at(col, e))?;
    let vcol = c.column();
    c.expect('[')?;
    let mut vars = Vec::new();
    loop {
        let v = c.ident().ok_or_else(|| c.error("expected a variable name"))?;
        vars.push(v);
        if c.eat(']') {
            break;
        }
        c.expect(',')?;
    }
    let base = PolyRing::new(field, vars).map_err(|e| c.core_error_at(vcol, e))?;
    let gcol = c.column();
    let gens = if c.eat('/') {
        c.expect('(')?;
        c.poly_list(&base, ')')?
    } else {
        Vec::new()
    };
    let assume_domain = c.keyword("domain");
    let opts = RingOptions {
        assume_domain,
        ..RingOptions::default()
    };
    make_ring_with(base, gens, opts).map_err(|e| c.core_error_at(gcol, e))
}

/// Parses a standalone ring such as `F32003[x,y]/(x*y)`; the `ring` keyword
/// and a name are optional.
pub fn parse_ring(text: &str, default_char: Option<u32>) -> PResult<Arc<RingDescriptor>> {
    let mut scope = Scope {
        default_char,
        ..Scope::default()
    };
    let t = text.trim();
    let line = if t.starts_with("ring") { t.to_string() } else { format!("ring {t}") };
    let shift = line.len() - t.len();
    match scope.statement(1, &line) {
        Ok(Some(Statement::Ring { ring, .. })) => Ok(ring),
        Ok(_) => Err(ParseError {
            line: 1,
            column: 1,
            message: "expected a ring".into(),
        }),
        Err(mut e) => {
            e.column = e.column.saturating_sub(shift).max(1);
            Err(e)
        }
    }
}

/// Parses a whole input file, returning the final scope and every statement.
pub fn parse_input(text: &str) -> PResult<(Scope, Vec<Statement>)> {
    parse_input_with(Scope::new(), text)
}

pub fn parse_input_with(mut scope: Scope, text: &str) -> PResult<(Scope, Vec<Statement>)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(st) = scope.statement(i + 1, line)? {
            out.push(st);
        }
    }
    Ok((scope, out))
}

/// Prints statements one per line in a form [`parse_input`] accepts.
pub fn print_statements(sts: &[Statement]) -> String {
    let mut s = String::new();
    for st in sts {
        s.push_str(&st.to_string());
        s.push('\n');
    }
    s
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, offset: usize) -> Self {
        Self {
            src,
            pos: 0,
            line,
            offset,
        }
    }

    fn bytes(&self) -> &'a [u8] {
        self.src.as_bytes()
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn column(&mut self) -> usize {
        self.ws();
        self.offset + self.pos + 1
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.pos >= self.src.len()
    }

    fn error_at(&self, column: usize, msg: &str) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: msg.into(),
        }
    }

    fn error(&mut self, msg: &str) -> ParseError {
        let col = self.column();
        self.error_at(col, msg)
    }

    fn core_error_at(&self, column: usize, e: Error) -> ParseError {
        self.error_at(column, &e.to_string())
    }

    fn peek_is(&mut self, ch: char) -> bool {
        self.ws();
        self.src[self.pos..].starts_with(ch)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek_is(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> PResult<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{ch}`")))
        }
    }

    fn ident_end(&self, from: usize) -> usize {
        let b = self.bytes();
        let mut e = from;
        if e < b.len() && (b[e].is_ascii_alphabetic() || b[e] == b'_') {
            while e < b.len() && (b[e].is_ascii_alphanumeric() || b[e] == b'_' || b[e] == b'\'') {
                e += 1;
            }
        }
        e
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let e = self.ident_end(self.pos);
        if e == self.pos {
            return None;
        }
        let s = self.src[self.pos..e].to_string();
        self.pos = e;
        Some(s)
    }

    fn peek_ident(&mut self) -> bool {
        self.ws();
        self.ident_end(self.pos) > self.pos
    }

    fn peek_keyword(&mut self, kw: &str) -> bool {
        self.ws();
        let e = self.ident_end(self.pos);
        &self.src[self.pos..e] == kw
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_keyword(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> PResult<i64> {
        self.ws();
        let start = self.pos;
        let b = self.bytes();
        let mut e = start;
        if e < b.len() && b[e] == b'-' {
            e += 1;
        }
        while e < b.len() && b[e].is_ascii_digit() {
            e += 1;
        }
        self.src[start..e].parse::<i64>().map(|v| {
            self.pos = e;
            v
        }).map_err(|_| self.error_at(self.offset + start + 1, "expected an integer"))
    }

    fn int_list(&mut self) -> PResult<Vec<i32>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            let col = self.column();
            let v = self.integer()?;
            out.push(i32::try_from(v).map_err(|_| self.error_at(col, "degree out of range"))?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// Comma-separated polynomials up to the matching `close`, which is consumed.
    fn poly_list(&mut self, base: &Arc<PolyRing>, close: char) -> PResult<Vec<Polynomial>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            self.ws();
            let start = self.pos;
            let b = self.bytes();
            let mut depth = 0i32;
            let mut e = start;
            while e < b.len() {
                match b[e] {
                    b'(' | b'[' => depth += 1,
                    b')' | b']' if depth > 0 => depth -= 1,
                    b',' if depth == 0 => break,
                    c if depth == 0 && c == close as u8 => break,
                    _ => {}
                }
                e += 1;
            }
            if e >= b.len() {
                return Err(self.error_at(self.offset + e + 1, &format!("expected `{close}`")));
            }
            let piece = &self.src[start..e];
            if piece.trim().is_empty() {
                return Err(self.error_at(self.offset + start + 1, "expected a polynomial"));
            }
            let col0 = self.offset + start;
            let p = base.parse(piece).map_err(|err| match err {
                Error::Parse { column, message, .. } => self.error_at(col0 + column, &message),
                Error::UnknownVariable { name, column } => {
                    self.error_at(col0 + column, &format!("unknown variable `{name}`"))
                }
                other => self.error_at(col0 + 1, &other.to_string()),
            })?;
            out.push(p);
            let closed = b[e] == close as u8;
            self.pos = e + 1;
            if closed {
                return Ok(out);
            }
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}
