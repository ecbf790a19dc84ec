//! Session files: a line-oriented language of rings, maps, modules and
//! commands.
//!
//! ```text
//! char 2
//! ring R vars u:2
//! ring S vars v:1
//! map phi : R -> S { u = v^2 }
//! module M over S quotient { v^3 }
//! cmd test-ci phi --cutoff 6
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use frobkit_core::{
    poly::fmt_degree, Degree, FiniteModule, FreeModuleElement, GradedQuotientRing, PolyRing, Polynomial, PrimeField,
    RingMap,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("`{0}` is already defined")]
    Duplicate(String),
    #[error("missing `char` declaration")]
    MissingCharacteristic,
    #[error("characteristic mismatch: session is over F_{declared}, found {found}")]
    CharacteristicMismatch { declared: u64, found: u64 },
    #[error("NONHOMOGENEOUS: {0}")]
    NonHomogeneous(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("{0}")]
    Invalid(String),
}

/// A parse or validation error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// A polynomial in canonical printed form.
pub type PolyText = String;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub vars: Vec<(String, Degree)>,
    pub ideal: Vec<PolyText>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: Vec<(String, PolyText)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBody {
    /// `S / (f_1, …, f_r)`.
    Quotient(Vec<PolyText>),
    /// Cokernel of the listed relation vectors on generators of the given
    /// degrees.
    Presented {
        degrees: Vec<Degree>,
        relations: Vec<Vec<PolyText>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub ring: String,
    pub body: ModuleBody,
}

/// A module-valued argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectRef {
    /// A ring (as a free module of rank one), map or module.
    Name(String),
    /// `k` (residue field of the most recent ring) or `k(S)`.
    Residue(Option<String>),
    /// `F*X`: the Frobenius pushforward of a ring or module.
    Frobenius(String),
}

impl fmt::Display for ObjectRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectRef::Name(n) => f.write_str(n),
            ObjectRef::Residue(None) => f.write_str("k"),
            ObjectRef::Residue(Some(r)) => write!(f, "k({r})"),
            ObjectRef::Frobenius(n) => write!(f, "F*{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandDecl {
    pub name: String,
    pub args: Vec<ObjectRef>,
    pub cutoff: Option<usize>,
    pub e: Option<u32>,
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Char(u64),
    Ring(RingDecl),
    Map(MapDecl),
    Module(ModuleDecl),
    Command(CommandDecl),
}

/// A parsed and validated session.
#[derive(Clone, Debug, Default)]
pub struct SessionFile {
    pub statements: Vec<Statement>,
    /// Source line of each statement.
    pub lines: Vec<usize>,
}

impl PartialEq for SessionFile {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl SessionFile {
    pub fn commands(&self) -> impl Iterator<Item = &CommandDecl> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }
}

fn join_degrees(ds: &[Degree]) -> String {
    ds.iter().map(fmt_degree).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Char(p) => write!(f, "char {p}"),
            Statement::Ring(r) => {
                let vars: Vec<String> = r.vars.iter().map(|(n, w)| format!("{n}:{}", fmt_degree(w))).collect();
                write!(f, "ring {} vars {}", r.name, vars.join(", "))?;
                if !r.ideal.is_empty() {
                    write!(f, " ideal {{ {} }}", r.ideal.join("; "))?;
                }
                Ok(())
            }
            Statement::Map(m) => {
                let imgs: Vec<String> = m.images.iter().map(|(v, p)| format!("{v} = {p}")).collect();
                write!(f, "map {} : {} -> {} {{ {} }}", m.name, m.source, m.target, imgs.join("; "))
            }
            Statement::Module(m) => {
                write!(f, "module {} over {} ", m.name, m.ring)?;
                match &m.body {
                    ModuleBody::Quotient(ps) => write!(f, "quotient {{ {} }}", ps.join("; ")),
                    ModuleBody::Presented { degrees, relations } => {
                        let rels: Vec<String> = relations.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                        write!(f, "gens {} rels {{ {} }}", join_degrees(degrees), rels.join("; "))
                    }
                }
            }
            Statement::Command(c) => {
                write!(f, "cmd {}", c.name)?;
                for a in &c.args {
                    write!(f, " {a}")?;
                }
                if let Some(n) = c.cutoff {
                    write!(f, " --cutoff {n}")?;
                }
                if let Some(e) = c.e {
                    write!(f, " --e {e}")?;
                }
                if let Some(d) = c.delta {
                    write!(f, " --delta {d}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for SessionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Argument kinds of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Ring,
    Map,
    /// A ring, module, `k` or `F*X`.
    Module,
}

/// Commands and their argument kinds.
pub const COMMANDS: &[(&str, &[ArgKind])] = &[
    ("betti", &[ArgKind::Module]),
    ("pushforward", &[ArgKind::Ring]),
    ("relfrob", &[ArgKind::Map]),
    ("test-kunz", &[ArgKind::Ring]),
    ("test-regular", &[ArgKind::Map]),
    ("test-ci", &[ArgKind::Map]),
    ("test-gorenstein", &[ArgKind::Map]),
    ("check-main", &[ArgKind::Map]),
    ("check-eth", &[ArgKind::Ring, ArgKind::Module]),
    ("check-blimp", &[ArgKind::Ring, ArgKind::Module]),
    ("check-discrete", &[ArgKind::Ring, ArgKind::Module]),
    ("check-comp", &[ArgKind::Map, ArgKind::Module, ArgKind::Module]),
    ("deviations", &[ArgKind::Ring]),
    ("hilbert", &[ArgKind::Module]),
];

/// A module argument resolved against the session.
#[derive(Clone, Debug)]
pub enum ModuleArg {
    Module(FiniteModule),
    /// `F^e_*` of the inner module, with `e` fixed at execution.
    Frobenius(FiniteModule),
}

impl ModuleArg {
    pub fn ring(&self) -> &Arc<GradedQuotientRing> {
        match self {
            ModuleArg::Module(m) | ModuleArg::Frobenius(m) => m.ring(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Resolved {
    Ring(Arc<GradedQuotientRing>),
    Map(RingMap),
    Module(ModuleArg),
}

/// The algebraic objects of a session, with every command's arguments
/// resolved.
#[derive(Clone, Debug, Default)]
pub struct World {
    pub rings: HashMap<String, Arc<GradedQuotientRing>>,
    pub maps: HashMap<String, RingMap>,
    pub modules: HashMap<String, FiniteModule>,
    /// Resolved arguments of each command, in file order.
    pub commands: Vec<Vec<Resolved>>,
}

impl World {
    /// Rebuilds the objects of an already validated session.
    pub fn build(session: &SessionFile) -> Result<World, ParseError> {
        Ok(load(&session.to_string())?.1)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
    Flag(String),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(s) => write!(f, "number {s}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Flag(s) => write!(f, "flag --{s}"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: &[&str] = &["->", "{", "}", "[", "]", "(", ")", ",", ";", ":", "=", "+", "-", "*", "^", "/"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let at = |tok| Token { tok, line: li + 1, col };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(at(Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                out.push(at(Tok::Num(chars[start..i].iter().collect())));
                continue;
            }
            if c == '-' && chars.get(i + 1) == Some(&'-') {
                let start = i + 2;
                i = start;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '-') {
                    i += 1;
                }
                out.push(at(Tok::Flag(chars[start..i].iter().collect())));
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(at(Tok::Sym(s)));
                    i += s.chars().count();
                }
                None => {
                    return Err(ParseError {
                        line: li + 1,
                        col,
                        kind: ParseErrorKind::Unexpected {
                            found: format!("character `{c}`"),
                            expected: "a token".into(),
                        },
                    })
                }
            }
        }
        out.push(Token {
            tok: Tok::Newline,
            line: li + 1,
            col: chars.len() + 1,
        });
    }
    let line = out.last().map_or(1, |t| t.line + 1);
    out.push(Token { tok: Tok::Eof, line, col: 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    field: Option<PrimeField>,
    world: World,
    last_ring: Option<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        Self::err_at(
            t,
            ParseErrorKind::Unexpected {
                found: t.tok.to_string(),
                expected: expected.into(),
            },
        )
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.next();
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.peek().tok == Tok::Sym(leak(s)) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Token)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok((s, self.next())),
            _ => Err(self.unexpected(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn integer(&mut self, what: &str) -> PResult<(u64, Token)> {
        match self.peek().tok.clone() {
            Tok::Num(s) => {
                let t = self.next();
                s.parse::<u64>()
                    .map(|v| (v, t.clone()))
                    .map_err(|_| Self::err_at(&t, ParseErrorKind::Invalid(format!("`{s}` is not an integer"))))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn rational(&mut self) -> PResult<Degree> {
        let neg = self.eat_sym("-");
        let (n, t) = self.integer("a degree")?;
        let d = if self.eat_sym("/") {
            let (d, dt) = self.integer("a denominator")?;
            if d == 0 {
                return Err(Self::err_at(&dt, ParseErrorKind::Invalid("zero denominator".into())));
            }
            Degree::new(n as i64, d as i64)
        } else {
            Degree::from_integer(n as i64)
        };
        let _ = t;
        Ok(if neg { -d } else { d })
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline | Tok::Eof => {
                self.next();
                Ok(())
            }
            _ => Err(self.unexpected("end of line")),
        }
    }

    fn field_at(&self, t: &Token) -> PResult<PrimeField> {
        self.field.ok_or_else(|| Self::err_at(t, ParseErrorKind::MissingCharacteristic))
    }

    fn fresh_name(&self, name: &str, t: &Token) -> PResult<()> {
        let w = &self.world;
        if w.rings.contains_key(name) || w.maps.contains_key(name) || w.modules.contains_key(name) || name == "k" {
            return Err(Self::err_at(t, ParseErrorKind::Duplicate(name.into())));
        }
        Ok(())
    }

    fn ring_named(&self, name: &str, t: &Token) -> PResult<Arc<GradedQuotientRing>> {
        self.world
            .rings
            .get(name)
            .cloned()
            .ok_or_else(|| Self::err_at(t, ParseErrorKind::UnknownIdentifier(name.into())))
    }

    // sum := term (('+' | '-') term)*
    fn poly(&mut self, ring: &Arc<PolyRing>) -> PResult<Polynomial> {
        let mut acc = if self.eat_sym("-") {
            self.product(ring)?.neg()
        } else {
            self.product(ring)?
        };
        loop {
            if self.eat_sym("+") {
                acc = &acc + &self.product(ring)?;
            } else if self.eat_sym("-") {
                acc = &acc - &self.product(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, ring: &Arc<PolyRing>) -> PResult<Polynomial> {
        let mut acc = self.power(ring)?;
        while self.eat_sym("*") {
            acc = &acc * &self.power(ring)?;
        }
        Ok(acc)
    }

    fn power(&mut self, ring: &Arc<PolyRing>) -> PResult<Polynomial> {
        let base = self.atom(ring)?;
        if self.eat_sym("^") {
            let (e, _) = self.integer("an exponent")?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Arc<PolyRing>) -> PResult<Polynomial> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(_) => {
                let (v, _) = self.integer("a coefficient")?;
                let p = ring.characteristic() as u64;
                Ok(Polynomial::constant(ring, (v % p) as i64))
            }
            Tok::Ident(name) => {
                self.next();
                match ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(ring, i)),
                    None => Err(Self::err_at(&t, ParseErrorKind::UnknownIdentifier(name.clone()))),
                }
            }
            Tok::Sym("(") => {
                self.next();
                let inner = self.poly(ring)?;
                self.expect_sym(")")?;
                Ok(inner)
            }
            Tok::Sym("-") => {
                self.next();
                Ok(self.atom(ring)?.neg())
            }
            _ => Err(self.unexpected("a polynomial")),
        }
    }

    /// `{ item; item; … }`, newlines allowed inside.
    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect_sym("{")?;
        let mut out = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat_sym("}") {
                return Ok(out);
            }
            out.push(item(self)?);
            self.skip_newlines();
            if !self.eat_sym(";") {
                self.skip_newlines();
                self.expect_sym("}")?;
                return Ok(out);
            }
        }
    }

    fn homogeneous(&self, f: &Polynomial, t: &Token) -> PResult<()> {
        if f.is_homogeneous() {
            Ok(())
        } else {
            Err(Self::err_at(t, ParseErrorKind::NonHomogeneous(f.to_string())))
        }
    }

    fn statement(&mut self) -> PResult<Option<Statement>> {
        self.skip_newlines();
        let t = self.peek().clone();
        let kw = match &t.tok {
            Tok::Eof => return Ok(None),
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("`char`, `ring`, `map`, `module` or `cmd`")),
        };
        self.next();
        let stmt = match kw.as_str() {
            "char" => self.char_decl()?,
            "ring" => self.ring_decl()?,
            "map" => self.map_decl()?,
            "module" => self.module_decl()?,
            "cmd" => self.command()?,
            _ => {
                return Err(Self::err_at(
                    &t,
                    ParseErrorKind::Unexpected {
                        found: t.tok.to_string(),
                        expected: "`char`, `ring`, `map`, `module` or `cmd`".into(),
                    },
                ))
            }
        };
        self.end_of_statement()?;
        Ok(Some(stmt))
    }

    fn char_decl(&mut self) -> PResult<Statement> {
        let (p, t) = self.integer("a prime")?;
        if let Some(f) = self.field {
            if f.characteristic() as u64 != p {
                return Err(Self::err_at(
                    &t,
                    ParseErrorKind::CharacteristicMismatch {
                        declared: f.characteristic() as u64,
                        found: p,
                    },
                ));
            }
        }
        let f = PrimeField::new(p).map_err(|e| Self::err_at(&t, ParseErrorKind::Invalid(e.to_string())))?;
        self.field = Some(f);
        Ok(Statement::Char(p))
    }

    fn ring_decl(&mut self) -> PResult<Statement> {
        let (name, nt) = self.ident("a ring name")?;
        let field = self.field_at(&nt)?;
        self.fresh_name(&name, &nt)?;
        self.keyword("vars")?;
        let mut vars = Vec::new();
        while let Tok::Ident(v) = self.peek().tok.clone() {
            if v == "ideal" && self.toks[self.pos + 1].tok == Tok::Sym("{") {
                break;
            }
            self.next();
            self.expect_sym(":")?;
            vars.push((v, self.rational()?));
            if !self.eat_sym(",") {
                break;
            }
        }
        let amb = PolyRing::new(field, vars.clone()).map_err(|e| Self::err_at(&nt, ParseErrorKind::Invalid(e.to_string())))?;
        let mut gens = Vec::new();
        if matches!(&self.peek().tok, Tok::Ident(s) if s == "ideal") {
            self.next();
            gens = self.braced(|p| {
                let t = p.peek().clone();
                let f = p.poly(&amb)?;
                p.homogeneous(&f, &t)?;
                Ok(f)
            })?;
        }
        let ring = GradedQuotientRing::new(&amb, &gens).map_err(|e| Self::err_at(&nt, ParseErrorKind::Invalid(e.to_string())))?;
        self.world.rings.insert(name.clone(), ring);
        self.last_ring = Some(name.clone());
        Ok(Statement::Ring(RingDecl {
            name,
            vars,
            ideal: gens.iter().map(|g| g.to_string()).collect(),
        }))
    }

    fn map_decl(&mut self) -> PResult<Statement> {
        let (name, nt) = self.ident("a map name")?;
        self.field_at(&nt)?;
        self.fresh_name(&name, &nt)?;
        self.expect_sym(":")?;
        let (source, st) = self.ident("a source ring")?;
        let src = self.ring_named(&source, &st)?;
        self.expect_sym("->")?;
        let (target, tt) = self.ident("a target ring")?;
        let tgt = self.ring_named(&target, &tt)?;
        let tamb = tgt.ambient().clone();
        let samb = src.ambient().clone();
        let images = self.braced(|p| {
            let (v, vt) = p.ident("a source variable")?;
            if samb.var_index(&v).is_none() {
                return Err(Self::err_at(&vt, ParseErrorKind::UnknownIdentifier(v)));
            }
            p.expect_sym("=")?;
            let t = p.peek().clone();
            let f = p.poly(&tamb)?;
            p.homogeneous(&f, &t)?;
            Ok((v, f, vt))
        })?;
        let mut ordered = vec![None; samb.nvars()];
        for (v, f, vt) in &images {
            let i = samb.var_index(v).expect("checked");
            if ordered[i].is_some() {
                return Err(Self::err_at(vt, ParseErrorKind::Duplicate(v.clone())));
            }
            ordered[i] = Some(f.clone());
        }
        let missing: Vec<&str> = (0..samb.nvars())
            .filter(|&i| ordered[i].is_none())
            .map(|i| samb.names()[i].as_str())
            .collect();
        if !missing.is_empty() {
            return Err(Self::err_at(
                &nt,
                ParseErrorKind::Invalid(format!("no image given for {}", missing.join(", "))),
            ));
        }
        let phi = RingMap::new(&src, &tgt, ordered.into_iter().map(Option::unwrap).collect())
            .map_err(|e| Self::err_at(&nt, ParseErrorKind::Invalid(e.to_string())))?;
        self.world.maps.insert(name.clone(), phi);
        Ok(Statement::Map(MapDecl {
            name,
            source,
            target,
            images: images.into_iter().map(|(v, f, _)| (v, f.to_string())).collect(),
        }))
    }

    fn module_decl(&mut self) -> PResult<Statement> {
        let (name, nt) = self.ident("a module name")?;
        self.field_at(&nt)?;
        self.fresh_name(&name, &nt)?;
        self.keyword("over")?;
        let (ring_name, rt) = self.ident("a ring")?;
        let ring = self.ring_named(&ring_name, &rt)?;
        let amb = ring.ambient().clone();
        let invalid = |e: frobkit_core::Error| Self::err_at(&nt, ParseErrorKind::Invalid(e.to_string()));
        let (body, module) = match &self.peek().tok {
            Tok::Ident(s) if s == "quotient" => {
                self.next();
                let gens = self.braced(|p| {
                    let t = p.peek().clone();
                    let f = p.poly(&amb)?;
                    p.homogeneous(&f, &t)?;
                    Ok(f)
                })?;
                let m = FiniteModule::cyclic(&ring, &gens).map_err(invalid)?;
                (ModuleBody::Quotient(gens.iter().map(|g| g.to_string()).collect()), m)
            }
            Tok::Ident(s) if s == "gens" => {
                self.next();
                let mut degrees = vec![self.rational()?];
                while self.eat_sym(",") {
                    degrees.push(self.rational()?);
                }
                self.keyword("rels")?;
                let g = degrees.len();
                let rels = self.braced(|p| {
                    let t = p.peek().clone();
                    p.expect_sym("[")?;
                    let mut entries = vec![p.poly(&amb)?];
                    while p.eat_sym(",") {
                        entries.push(p.poly(&amb)?);
                    }
                    p.expect_sym("]")?;
                    if entries.len() != g {
                        return Err(Self::err_at(
                            &t,
                            ParseErrorKind::Invalid(format!("relation has {} entries for {g} generators", entries.len())),
                        ));
                    }
                    Ok((entries, t))
                })?;
                let mut vectors = Vec::new();
                for (entries, t) in &rels {
                    let v = FreeModuleElement::from_components(entries);
                    if let frobkit_core::DegreeInfo::NonHomogeneous = v.degree(&amb, &degrees) {
                        let text: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
                        return Err(Self::err_at(t, ParseErrorKind::NonHomogeneous(format!("[{}]", text.join(", ")))));
                    }
                    vectors.push(v);
                }
                let m = FiniteModule::new(&ring, degrees.clone(), vectors).map_err(invalid)?;
                let relations = rels
                    .into_iter()
                    .map(|(es, _)| es.iter().map(|e| e.to_string()).collect())
                    .collect();
                (ModuleBody::Presented { degrees, relations }, m)
            }
            _ => return Err(self.unexpected("`quotient` or `gens`")),
        };
        self.world.modules.insert(name.clone(), module);
        Ok(Statement::Module(ModuleDecl {
            name,
            ring: ring_name,
            body,
        }))
    }

    fn object(&mut self, kind: ArgKind) -> PResult<(ObjectRef, Resolved)> {
        let (name, t) = self.ident("an argument")?;
        let unknown = |n: &str| Self::err_at(&t, ParseErrorKind::UnknownIdentifier(n.into()));
        match kind {
            ArgKind::Ring => {
                let r = self.world.rings.get(&name).cloned().ok_or_else(|| unknown(&name))?;
                Ok((ObjectRef::Name(name), Resolved::Ring(r)))
            }
            ArgKind::Map => {
                let m = self.world.maps.get(&name).cloned().ok_or_else(|| unknown(&name))?;
                Ok((ObjectRef::Name(name), Resolved::Map(m)))
            }
            ArgKind::Module => {
                if name == "F" && self.eat_sym("*") {
                    let (inner, it) = self.ident("a ring or module")?;
                    let m = self
                        .module_like(&inner)
                        .ok_or_else(|| Self::err_at(&it, ParseErrorKind::UnknownIdentifier(inner.clone())))?;
                    return Ok((ObjectRef::Frobenius(inner), Resolved::Module(ModuleArg::Frobenius(m))));
                }
                if name == "k" {
                    let ring_name = if self.eat_sym("(") {
                        let (r, _) = self.ident("a ring")?;
                        self.expect_sym(")")?;
                        Some(r)
                    } else {
                        None
                    };
                    let resolved = ring_name.clone().or_else(|| self.last_ring.clone()).ok_or_else(|| unknown("k"))?;
                    let ring = self.world.rings.get(&resolved).ok_or_else(|| unknown(&resolved))?;
                    let k = FiniteModule::residue_field(ring);
                    return Ok((ObjectRef::Residue(ring_name), Resolved::Module(ModuleArg::Module(k))));
                }
                let m = self.module_like(&name).ok_or_else(|| unknown(&name))?;
                Ok((ObjectRef::Name(name), Resolved::Module(ModuleArg::Module(m))))
            }
        }
    }

    fn module_like(&self, name: &str) -> Option<FiniteModule> {
        if let Some(m) = self.world.modules.get(name) {
            return Some(m.clone());
        }
        self.world
            .rings
            .get(name)
            .map(|r| FiniteModule::free(r, vec![Degree::from_integer(0)]))
    }

    fn command(&mut self) -> PResult<Statement> {
        let t = self.peek().clone();
        let mut name = String::new();
        // command names are hyphenated identifiers
        loop {
            let (part, _) = self.ident("a command name")?;
            name.push_str(&part);
            if self.peek().tok == Tok::Sym("-") && matches!(self.toks[self.pos + 1].tok, Tok::Ident(_)) {
                self.next();
                name.push('-');
            } else {
                break;
            }
        }
        let kinds = COMMANDS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, k)| *k)
            .ok_or_else(|| Self::err_at(&t, ParseErrorKind::UnknownCommand(name.clone())))?;
        let mut args = Vec::new();
        let mut resolved = Vec::new();
        for &kind in kinds {
            let (a, r) = self.object(kind)?;
            args.push(a);
            resolved.push(r);
        }
        if let (Some(Resolved::Ring(r)), Some(Resolved::Module(m))) = (resolved.first(), resolved.get(1)) {
            if !Arc::ptr_eq(r, m.ring()) && r.as_ref() != m.ring().as_ref() {
                return Err(Self::err_at(&t, ParseErrorKind::Invalid(format!("{} is not a module over {}", args[1], args[0]))));
            }
        }
        let (mut cutoff, mut e, mut delta) = (None, None, None);
        while let Tok::Flag(flag) = self.peek().tok.clone() {
            let ft = self.next();
            match flag.as_str() {
                "cutoff" => cutoff = Some(self.integer("a cutoff")?.0 as usize),
                "e" => {
                    let (v, vt) = self.integer("an exponent")?;
                    if v == 0 {
                        return Err(Self::err_at(&vt, ParseErrorKind::Invalid("--e must be at least 1".into())));
                    }
                    e = Some(v as u32);
                }
                "delta" => {
                    let vt = self.next();
                    delta = match &vt.tok {
                        Tok::Num(s) => s.parse::<f64>().ok(),
                        _ => None,
                    };
                    if delta.is_none() {
                        return Err(Self::err_at(&vt, ParseErrorKind::Invalid("--delta needs a number".into())));
                    }
                }
                other => return Err(Self::err_at(&ft, ParseErrorKind::Invalid(format!("unknown flag --{other}")))),
            }
        }
        self.world.commands.push(resolved);
        Ok(Statement::Command(CommandDecl {
            name,
            args,
            cutoff,
            e,
            delta,
        }))
    }
}

fn leak(s: &str) -> &'static str {
    SYMBOLS.iter().find(|x| **x == s).copied().unwrap_or("")
}

/// Parses and validates a session, building its objects.
pub fn load(text: &str) -> Result<(SessionFile, World), ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        field: None,
        world: World::default(),
        last_ring: None,
    };
    let mut session = SessionFile::default();
    loop {
        let line = {
            p.skip_newlines();
            p.peek().line
        };
        match p.statement()? {
            Some(s) => {
                session.statements.push(s);
                session.lines.push(line);
            }
            None => return Ok((session, p.world)),
        }
    }
}

/// Parses and validates a session.
pub fn parse_session(text: &str) -> Result<SessionFile, ParseError> {
    Ok(load(text)?.0)
}
