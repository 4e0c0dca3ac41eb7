//! Text syntax for tautological expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' posint)?
//! atom   := '(' expr ')' | rational | character | Gamma<k> | Delta<k> | name(i)
//!         | q[{..},{..}](c1,c2,..) | F(profile) | S(profile) | Firr(profile) | Sirr(profile)
//! ```
//!
//! A profile is `I1|I2:J|K`, e.g. `1|23:{4},{5}@pt|{6}`; `13:` abbreviates `1|3:`. Slots missing
//! from a profile are filled in every admissible way.

use std::fmt;

use num_traits::Zero;

use crate::charpoly::{fmt_rational, CharacterPolynomial, Rational};
use crate::error::{ParseError, Result, TautError};
use crate::surface::{DivSym, FibreKind, SurfaceClass};
use crate::tautring::{
    BasisClass, Block, CurveClass, DiagMonomial, Engine, Factor, Generator, NodeBlock, NodeClass, NodeProfile, TautExpr,
    Word,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeBlockSpec {
    pub slots: Vec<u32>,
    pub point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSpec {
    pub i1: Vec<u32>,
    pub i2: Vec<u32>,
    /// Whether `I1|I2` was written with a bar.
    pub bar: bool,
    pub j: Vec<NodeBlockSpec>,
    /// `None` when no `|` separates the `K` blocks.
    pub k: Option<Vec<NodeBlockSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Number(Rational),
    /// A character symbol used as a coefficient, e.g. `omega2`.
    Symbol(String),
    Gamma(u32),
    Delta(u32),
    Class { name: String, slot: u32 },
    Diag { blocks: Vec<Vec<u32>>, classes: Vec<String> },
    Node { section: bool, irreducible: bool, profile: ProfileSpec },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Atom(Atom),
    /// Signed terms; `true` marks subtraction.
    Sum(Vec<(bool, Ast)>),
    Product(Vec<Ast>),
    Power(Box<Ast>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
}

struct Lexer<'a> {
    text: &'a str,
}

impl Lexer<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, col)
    }

    fn tokens(&self) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut it = self.text.char_indices().peekable();
        while let Some(&(pos, c)) = it.peek() {
            if c.is_whitespace() {
                it.next();
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Num(s), pos));
            } else if "+-*^()[]{}<>,:|/@".contains(c) {
                out.push((Tok::Sym(c), pos));
                it.next();
            } else {
                let (line, col) = self.position(pos);
                return Err(ParseError::new(format!("unexpected character '{c}'"), line, col));
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    level: u32,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        let offset = self.toks.get(self.pos).map_or(self.lex.text.len(), |t| t.1);
        let (line, col) = self.lex.position(offset);
        ParseError::new(msg, line, col)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.eat(c) { Ok(()) } else { Err(self.err(format!("expected '{c}'"))) }
    }

    fn num(&mut self) -> std::result::Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn index(&mut self, what: &str) -> std::result::Result<u32, ParseError> {
        let s = self.num()?;
        let v: u32 = s.parse().map_err(|_| self.err(format!("{what} {s} is too large")))?;
        if v == 0 || v > self.level {
            self.pos -= 1;
            return Err(self.err(format!("{what} {v} outside 1..={}", self.level)));
        }
        Ok(v)
    }

    fn expr(&mut self) -> std::result::Result<Ast, ParseError> {
        let mut terms = Vec::new();
        let lead = self.eat('-');
        terms.push((lead, self.term()?));
        loop {
            let neg = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            terms.push((neg, self.term()?));
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Ast::Sum(terms) })
    }

    fn term(&mut self) -> std::result::Result<Ast, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Ast::Product(factors) })
    }

    fn factor(&mut self) -> std::result::Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let s = self.num()?;
            let n: u32 = s.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                self.pos -= 1;
                self.err("exponent must be a positive integer")
            })?;
            return Ok(Ast::Power(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Ast, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let mut r = Rational::from_integer(s.parse().map_err(|_| self.err("bad integer"))?);
                if self.eat('/') {
                    let d = self.num()?;
                    let d: num_bigint::BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                    if d.is_zero() {
                        self.pos -= 1;
                        return Err(self.err("zero denominator"));
                    }
                    r /= Rational::from_integer(d);
                }
                Ok(Ast::Atom(Atom::Number(r)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.named(&name)
            }
            _ => Err(self.err("expected an atom")),
        }
    }

    fn named(&mut self, name: &str) -> std::result::Result<Ast, ParseError> {
        match name {
            "Gamma" | "Delta" => {
                self.expect('<')?;
                let k = self.index("diagonal index")?;
                self.expect('>')?;
                Ok(Ast::Atom(if name == "Gamma" { Atom::Gamma(k) } else { Atom::Delta(k) }))
            }
            "q" if self.peek_sym('[') => self.diag(),
            "F" | "S" | "Firr" | "Sirr" if self.peek_sym('(') => {
                self.expect('(')?;
                let profile = self.profile()?;
                self.expect(')')?;
                Ok(Ast::Atom(Atom::Node {
                    section: name.starts_with('S'),
                    irreducible: name.ends_with("irr"),
                    profile,
                }))
            }
            _ if !self.peek_sym('(') => Ok(Ast::Atom(Atom::Symbol(name.to_string()))),
            _ => {
                self.expect('(')?;
                let slot = self.index("slot")?;
                self.expect(')')?;
                Ok(Ast::Atom(Atom::Class { name: name.to_string(), slot }))
            }
        }
    }

    fn slot_set(&mut self) -> std::result::Result<Vec<u32>, ParseError> {
        self.expect('{')?;
        let mut v = vec![self.index("slot")?];
        while self.eat(',') {
            v.push(self.index("slot")?);
        }
        self.expect('}')?;
        Ok(v)
    }

    fn diag(&mut self) -> std::result::Result<Ast, ParseError> {
        self.expect('[')?;
        let mut blocks = vec![self.slot_set()?];
        while self.eat(',') {
            blocks.push(self.slot_set()?);
        }
        self.expect(']')?;
        self.expect('(')?;
        let mut classes = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Tok::Num(s)) if s == "1" => classes.push(s),
                Some(Tok::Ident(s)) => classes.push(s),
                _ => return Err(self.err("expected a class name or 1")),
            }
            self.pos += 1;
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        if classes.len() != blocks.len() {
            return Err(self.err(format!("{} blocks but {} classes", blocks.len(), classes.len())));
        }
        Ok(Ast::Atom(Atom::Diag { blocks, classes }))
    }

    fn digits(&mut self, commas: bool) -> std::result::Result<Vec<u32>, ParseError> {
        let mut out = Vec::new();
        while let Some(Tok::Num(s)) = self.peek().cloned() {
            if commas {
                out.push(self.index("slot")?);
                if !self.eat(',') {
                    break;
                }
            } else {
                for ch in s.chars() {
                    let v = ch.to_digit(10).unwrap();
                    if v == 0 || v > self.level {
                        return Err(self.err(format!("slot {v} outside 1..={}", self.level)));
                    }
                    out.push(v);
                }
                self.pos += 1;
            }
        }
        Ok(out)
    }

    fn node_blocks(&mut self) -> std::result::Result<Vec<NodeBlockSpec>, ParseError> {
        let mut out = Vec::new();
        while self.peek_sym('{') {
            let slots = self.slot_set()?;
            let point = if self.eat('@') {
                match self.peek() {
                    Some(Tok::Ident(s)) if s == "pt" => {
                        self.pos += 1;
                        true
                    }
                    _ => return Err(self.err("expected 'pt' after '@'")),
                }
            } else {
                false
            };
            out.push(NodeBlockSpec { slots, point });
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }

    fn profile(&mut self) -> std::result::Result<ProfileSpec, ParseError> {
        let start = self.pos;
        let mut commas = false;
        while let Some(t) = self.toks.get(self.pos) {
            match t.0 {
                Tok::Sym(':') => break,
                Tok::Sym(',') => commas = true,
                _ => {}
            }
            self.pos += 1;
        }
        self.pos = start;
        let i1 = self.digits(commas)?;
        let bar = self.eat('|');
        let i2 = if bar { self.digits(commas)? } else { Vec::new() };
        self.expect(':')?;
        let j = self.node_blocks()?;
        let k = if self.eat('|') { Some(self.node_blocks()?) } else { None };
        let (i1, i2) = if bar {
            (i1, i2)
        } else {
            if i1.len() != 2 {
                return Err(self.err("a node profile without '|' needs exactly two points at the node"));
            }
            (vec![i1[0]], vec![i1[1]])
        };
        if i1.is_empty() || i2.is_empty() {
            return Err(self.err("both sides of I1|I2 must be nonempty"));
        }
        Ok(ProfileSpec { i1, i2, bar, j, k })
    }
}

/// Parses `text` with slot and diagonal indices bounded by `level`.
pub fn parse(text: &str, level: u32) -> std::result::Result<Ast, ParseError> {
    let lex = Lexer { text };
    let toks = lex.tokens()?;
    let mut p = Parser { lex, toks, pos: 0, level };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(ast)
}

fn slots_text(v: &[u32], commas: bool) -> String {
    let sep = if commas { "," } else { "" };
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
}

fn blocks_text(v: &[NodeBlockSpec]) -> String {
    v.iter()
        .map(|b| {
            let inner = slots_text(&b.slots, true);
            if b.point { format!("{{{inner}}}@pt") } else { format!("{{{inner}}}") }
        })
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let commas = self.i1.iter().chain(&self.i2).any(|&s| s >= 10);
        if self.bar {
            write!(f, "{}|{}", slots_text(&self.i1, commas), slots_text(&self.i2, commas))?;
        } else {
            let both: Vec<u32> = self.i1.iter().chain(&self.i2).copied().collect();
            f.write_str(&slots_text(&both, commas))?;
        }
        write!(f, ":{}", blocks_text(&self.j))?;
        if let Some(k) = &self.k {
            write!(f, "|{}", blocks_text(k))?;
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Number(r) => f.write_str(&fmt_rational(r)),
            Atom::Symbol(s) => f.write_str(s),
            Atom::Gamma(k) => write!(f, "Gamma<{k}>"),
            Atom::Delta(k) => write!(f, "Delta<{k}>"),
            Atom::Class { name, slot } => write!(f, "{name}({slot})"),
            Atom::Diag { blocks, classes } => {
                let b: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", slots_text(b, true))).collect();
                write!(f, "q[{}]({})", b.join(","), classes.join(","))
            }
            Atom::Node { section, irreducible, profile } => {
                let head = if *section { "S" } else { "F" };
                let tail = if *irreducible { "irr" } else { "" };
                write!(f, "{head}{tail}({profile})")
            }
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Atom(a) => a.fmt(f),
            Ast::Sum(terms) => {
                for (idx, (neg, t)) in terms.iter().enumerate() {
                    let sign = match (idx, neg) {
                        (0, true) => "-",
                        (0, false) => "",
                        (_, true) => " - ",
                        (_, false) => " + ",
                    };
                    f.write_str(sign)?;
                    match t {
                        Ast::Sum(_) => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
            Ast::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|x| match x {
                        Ast::Sum(_) | Ast::Product(_) => format!("({x})"),
                        _ => x.to_string(),
                    })
                    .collect();
                f.write_str(&parts.join("*"))
            }
            Ast::Power(b, n) => match **b {
                Ast::Atom(_) => write!(f, "{b}^{n}"),
                _ => write!(f, "({b})^{n}"),
            },
        }
    }
}

/// Surface class named by a slot-class atom.
pub fn class_by_name(name: &str) -> SurfaceClass {
    match name {
        "pt" => SurfaceClass::point(CharacterPolynomial::one()),
        "1" => SurfaceClass::one(),
        other => SurfaceClass::divisor(DivSym::parse(other)),
    }
}

pub(crate) fn ensure_level(ast: &Ast, level: u32) -> Result<()> {
    let bad = |what: &str, v: u32| Err(TautError::Domain(format!("{what} {v} outside 1..={level}")));
    match ast {
        Ast::Atom(Atom::Gamma(k) | Atom::Delta(k)) if *k == 0 || *k > level => bad("diagonal index", *k),
        Ast::Atom(Atom::Class { slot, .. }) if *slot == 0 || *slot > level => bad("slot", *slot),
        Ast::Atom(_) => Ok(()),
        Ast::Sum(ts) => ts.iter().try_for_each(|(_, t)| ensure_level(t, level)),
        Ast::Product(fs) => fs.iter().try_for_each(|x| ensure_level(x, level)),
        Ast::Power(b, _) => ensure_level(b, level),
    }
}

struct Mono {
    coef: CharacterPolynomial,
    word: Word,
    atoms: Vec<TautExpr>,
}

impl Mono {
    fn scalar(c: CharacterPolynomial) -> Self {
        Mono { coef: c, word: Vec::new(), atoms: Vec::new() }
    }

    fn times(&self, other: &Mono) -> Mono {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Mono { coef: &self.coef * &other.coef, word, atoms }
    }
}

fn product(a: &[Mono], b: &[Mono]) -> Vec<Mono> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.times(y))).collect()
}

fn diag_atom(blocks: &[Vec<u32>], classes: &[String], level: u32) -> Result<TautExpr> {
    let blocks = blocks
        .iter()
        .zip(classes)
        .map(|(slots, c)| {
            let class = match c.as_str() {
                "1" => BasisClass::One,
                "pt" => BasisClass::Pt,
                other => BasisClass::Div(DivSym::parse(other)),
            };
            Block { slots: slots.clone(), class }
        })
        .collect();
    Ok(TautExpr::from_generator(level, Generator::Diag(DiagMonomial::new(blocks)?)))
}

fn node_atom(section: bool, irreducible: bool, p: &ProfileSpec, engine: &Engine, level: u32) -> Result<TautExpr> {
    let kind = if irreducible { FibreKind::Irreducible } else { FibreKind::Reducible };
    let mut i_set: Vec<u32> = p.i1.iter().chain(&p.i2).copied().collect();
    i_set.sort_unstable();
    let mut i1 = p.i1.clone();
    i1.sort_unstable();
    if i1 != i_set[..i1.len()] {
        return Err(TautError::Domain(format!("I1 = {:?} is not an initial segment of {:?}", p.i1, i_set)));
    }
    let k_spec = p.k.clone().unwrap_or_default();
    if irreducible && !k_spec.is_empty() {
        return Err(TautError::Domain("an irreducible fibre has no K blocks".into()));
    }
    let to_blocks = |v: &[NodeBlockSpec]| -> Vec<NodeBlock> {
        v.iter()
            .map(|b| NodeBlock { slots: b.slots.clone(), class: if b.point { CurveClass::Pt } else { CurveClass::One } })
            .collect()
    };
    let (j, k) = (to_blocks(&p.j), to_blocks(&k_spec));
    let mut used: Vec<u32> = i_set.clone();
    used.extend(j.iter().chain(&k).flat_map(|b| b.slots.iter().copied()));
    let n_used = used.len();
    used.sort_unstable();
    used.dedup();
    if used.len() != n_used || used.iter().any(|&s| s == 0 || s > level) {
        return Err(TautError::Domain(format!("profile {p} repeats a slot or leaves 1..={level}")));
    }
    let free: Vec<u32> = (1..=level).filter(|s| !used.contains(s)).collect();
    let sides = if irreducible { 1u64 } else { 1u64 << free.len() };
    let mut out = TautExpr::zero(level);
    for mask in 0..sides {
        let (mut jj, mut kk) = (j.clone(), k.clone());
        for (idx, &s) in free.iter().enumerate() {
            let b = NodeBlock { slots: vec![s], class: CurveClass::One };
            if mask >> idx & 1 == 1 { kk.push(b) } else { jj.push(b) }
        }
        let profile = NodeProfile::new(kind, i_set.clone(), i1.len(), jj, kk);
        out.add_term(Generator::Node(NodeClass { profile, section }), CharacterPolynomial::one());
    }
    if engine.geo.node_count_of(kind).is_zero() {
        return Ok(TautExpr::zero(level));
    }
    Ok(out)
}

fn monos(ast: &Ast, engine: &Engine, level: u32) -> Result<Vec<Mono>> {
    Ok(match ast {
        Ast::Atom(Atom::Number(r)) => vec![Mono::scalar(CharacterPolynomial::constant(r.clone()))],
        Ast::Atom(Atom::Symbol(s)) => vec![Mono::scalar(CharacterPolynomial::symbol(s))],
        Ast::Atom(Atom::Gamma(k)) => vec![Mono { word: vec![Factor::Gamma(*k)], ..Mono::scalar(CharacterPolynomial::one()) }],
        Ast::Atom(Atom::Delta(k)) => vec![Mono { word: vec![Factor::Delta(*k)], ..Mono::scalar(CharacterPolynomial::one()) }],
        Ast::Atom(Atom::Class { name, slot }) => vec![Mono {
            word: vec![Factor::Class(*slot, class_by_name(name))],
            ..Mono::scalar(CharacterPolynomial::one())
        }],
        Ast::Atom(Atom::Diag { blocks, classes }) => {
            vec![Mono { atoms: vec![diag_atom(blocks, classes, level)?], ..Mono::scalar(CharacterPolynomial::one()) }]
        }
        Ast::Atom(Atom::Node { section, irreducible, profile }) => vec![Mono {
            atoms: vec![node_atom(*section, *irreducible, profile, engine, level)?],
            ..Mono::scalar(CharacterPolynomial::one())
        }],
        Ast::Sum(terms) => {
            let mut out = Vec::new();
            for (neg, t) in terms {
                for mut m in monos(t, engine, level)? {
                    if *neg {
                        m.coef = -m.coef;
                    }
                    out.push(m);
                }
            }
            out
        }
        Ast::Product(fs) => {
            let mut acc = vec![Mono::scalar(CharacterPolynomial::one())];
            for x in fs {
                acc = product(&acc, &monos(x, engine, level)?);
            }
            acc
        }
        Ast::Power(b, n) => {
            let base = monos(b, engine, level)?;
            let mut acc = vec![Mono::scalar(CharacterPolynomial::one())];
            for _ in 0..*n {
                acc = product(&acc, &base);
            }
            acc
        }
    })
}

/// Multiplies the word factors into an explicit class on the top level.
fn apply_word(engine: &Engine, mut e: TautExpr, word: &Word) -> Result<TautExpr> {
    let m = e.level();
    for f in word {
        e = match f {
            Factor::Class(s, c) => engine.mul_class(&e, *s, c)?,
            Factor::Gamma(k) if *k == m => engine.mul_gamma(&e)?,
            Factor::Gamma(1) => TautExpr::zero(m),
            Factor::Delta(2) if m == 2 => engine.mul_gamma(&e)?,
            _ => {
                return Err(TautError::Unsupported(format!(
                    "only Gamma<{m}> and slot classes can multiply an explicit generator on W^{m}"
                )))
            }
        };
    }
    Ok(e)
}

/// Normal form on `W^level` of a parsed expression.
pub fn evaluate(ast: &Ast, engine: &Engine, level: u32) -> Result<TautExpr> {
    ensure_level(ast, level)?;
    let mut out = TautExpr::zero(level);
    for mono in monos(ast, engine, level)? {
        if mono.coef.is_zero() {
            continue;
        }
        let e = match mono.atoms.as_slice() {
            [] => engine.expand_word(&mono.word, level)?,
            [a] => apply_word(engine, a.clone(), &mono.word)?,
            _ => return Err(TautError::Unsupported("products of two explicit generators".into())),
        };
        out.add_expr(&e.scale(&mono.coef))?;
    }
    Ok(out)
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, engine: &Engine, level: u32) -> Result<TautExpr> {
    evaluate(&parse(text, level)?, engine, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn engine() -> Engine {
        Engine::default()
    }

    #[test]
    fn parses_basic_shapes() {
        let a = parse("Gamma<3>^2 * Gamma<2>", 3).unwrap();
        assert_eq!(
            a,
            Ast::Product(vec![Ast::Power(Box::new(Ast::Atom(Atom::Gamma(3))), 2), Ast::Atom(Atom::Gamma(2))])
        );
        assert_eq!(a.to_string(), "Gamma<3>^2*Gamma<2>");
        let b = parse("L(1)*(L(2)-Delta<2>)^2", 2).unwrap();
        assert_eq!(b.to_string(), "L(1)*(L(2) - Delta<2>)^2");
        let c = parse("q[{1,2}](omega)", 2).unwrap();
        assert_eq!(c, Ast::Atom(Atom::Diag { blocks: vec![vec![1, 2]], classes: vec!["omega".into()] }));
        let d = parse("S(1|23:{4}@pt|)", 4).unwrap();
        assert_eq!(d.to_string(), "S(1|23:{4}@pt|)");
    }

    #[test]
    fn reports_positions() {
        let e = parse("Gamma<2> +\n  Gamma<5>", 3).unwrap_err();
        assert_eq!((e.line, e.column), (2, 9));
        assert!(parse("q[{1}](omega,L)", 2).is_err());
        assert!(parse("F(123:)", 3).is_err());
        assert!(parse("Gamma<2>^0", 2).is_err());
        assert!(parse("1/0", 2).is_err());
    }

    #[test]
    fn evaluates_words_like_the_engine() {
        let eng = engine();
        let want = eng.expand_word(&vec![Factor::Delta(3), Factor::Delta(3)], 3).unwrap();
        assert_eq!(eval_str("Delta<3>^2", &eng, 3).unwrap(), want);
        let printed = want.to_string();
        assert_eq!(eval_str(&printed, &eng, 3).unwrap(), want);
        let lhs = eval_str("(Gamma<3> - Gamma<2>)*(Gamma<3> - Gamma<2>)", &eng, 3).unwrap();
        assert_eq!(lhs, want);
        let cubed = eval_str("Delta<3>^3", &eng, 3).unwrap();
        assert_eq!(eval_str(&cubed.to_string(), &eng, 3).unwrap(), cubed);
    }

    #[test]
    fn explicit_generators_take_top_gamma() {
        let eng = engine();
        let via_word = eval_str("Gamma<2>^2", &eng, 2).unwrap();
        let via_atom = eval_str("Gamma<2>*q[{1,2}](1)", &eng, 2).unwrap();
        assert_eq!(via_word, via_atom);
        assert!(matches!(eval_str("Gamma<2>*q[{1,2,3}](1)", &eng, 3), Err(TautError::Unsupported(_))));
        assert!(matches!(eval_str("q[{1,2}](1)*q[{1,2}](1)", &eng, 2), Err(TautError::Unsupported(_))));
    }

    #[test]
    fn profile_checks() {
        let eng = engine();
        assert!(matches!(eval_str("Firr(1|2:{3}|{4})", &eng, 4), Err(TautError::Domain(_))));
        assert!(matches!(eval_str("F(13:{3})", &eng, 3), Err(TautError::Domain(_))));
        // free slots spread over J and K
        assert_eq!(eval_str("F(12:)", &eng, 3).unwrap().len(), 2);
        // the default surface has no irreducible nodal fibres
        assert!(eval_str("Firr(12:)", &eng, 3).unwrap().is_zero());
    }

    fn leaf(level: u32) -> impl Strategy<Value = Ast> {
        let idx = 1..=level;
        prop_oneof![
            (0u32..20, 1u32..5).prop_map(|(n, d)| Ast::Atom(Atom::Number(Rational::new(n.into(), d.into())))),
            prop::sample::select(vec!["sigma", "omega2", "dL"]).prop_map(|s| Ast::Atom(Atom::Symbol(s.into()))),
            idx.clone().prop_map(|k| Ast::Atom(Atom::Gamma(k))),
            idx.clone().prop_map(|k| Ast::Atom(Atom::Delta(k))),
            (prop::sample::select(vec!["L", "omega", "pt", "H"]), idx.clone())
                .prop_map(|(n, s)| Ast::Atom(Atom::Class { name: n.to_string(), slot: s })),
            (idx.clone(), prop::sample::select(vec!["1", "omega", "pt"])).prop_map(|(s, c)| {
                Ast::Atom(Atom::Diag { blocks: vec![(1..=s).collect()], classes: vec![c.to_string()] })
            }),
            (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(move |(sec, irr, pt)| {
                let profile = ProfileSpec {
                    i1: vec![1],
                    i2: vec![2],
                    bar: irr,
                    j: vec![NodeBlockSpec { slots: vec![3], point: pt }],
                    k: if irr { None } else { Some(Vec::new()) },
                };
                Ast::Atom(Atom::Node { section: sec, irreducible: irr, profile })
            }),
        ]
    }

    fn ast() -> impl Strategy<Value = Ast> {
        leaf(3).prop_recursive(3, 24, 4, |inner| {
            prop_oneof![
                (any::<bool>(), prop::collection::vec((any::<bool>(), inner.clone()), 2..4)).prop_map(
                    |(lead, mut ts)| {
                        ts[0].0 = lead;
                        Ast::Sum(ts)
                    }
                ),
                (inner.clone(), any::<bool>()).prop_map(|(t, _)| Ast::Sum(vec![(true, t)])),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Ast::Product),
                (inner, 1u32..4).prop_map(|(b, n)| Ast::Power(Box::new(b), n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(a in ast()) {
            let text = a.to_string();
            let back = parse(&text, 3).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, a);
        }
    }
}
