//! Level-by-level evaluation of monomials in `Gamma<k>` and slot classes.


use super::{BasisClass, ClassTiming, DiagMonomial, Engine, Generator, Slot, TautExpr};
use crate::charpoly::CharacterPolynomial;
use crate::error::{Result, TautError};
use crate::surface::{integrate_on_x, SurfaceClass};

/// A factor of a tautological monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// The pulled-back big diagonal `Gamma<k>`; `Gamma<1>` is zero.
    Gamma(u32),
    /// `Delta<k> = Gamma<k> - Gamma<k-1>`.
    Delta(u32),
    /// A surface class at a slot.
    Class(Slot, SurfaceClass),
}

pub type Word = Vec<Factor>;

/// A linear combination of words.
pub type WordSum = Vec<(CharacterPolynomial, Word)>;

/// Rewrites `Delta` factors and splits classes into basis elements.
/// A word with Delta expanded: coefficient, Gamma indices, slot classes.
type FlatWord = (CharacterPolynomial, Vec<u32>, Vec<(Slot, BasisClass)>);

fn flatten(word: &Word) -> Vec<FlatWord> {
    let mut acc = vec![(CharacterPolynomial::one(), Vec::new(), Vec::new())];
    for f in word {
        let mut next = Vec::new();
        for (c, gammas, classes) in acc {
            match f {
                Factor::Gamma(k) => {
                    let mut g = gammas.clone();
                    g.push(*k);
                    next.push((c, g, classes));
                }
                Factor::Delta(k) => {
                    let mut a = gammas.clone();
                    a.push(*k);
                    next.push((c.clone(), a, classes.clone()));
                    let mut b = gammas;
                    b.push(k.saturating_sub(1));
                    next.push((-c, b, classes));
                }
                Factor::Class(s, cls) => {
                    for (k, b) in BasisClass::split(cls) {
                        let mut cl = classes.clone();
                        cl.push((*s, b));
                        next.push((&c * &k, gammas.clone(), cl));
                    }
                }
            }
        }
        acc = next;
    }
    // Gamma<1> vanishes
    acc.retain(|(_, g, _)| g.iter().all(|&k| k >= 2));
    acc
}

impl Engine {
    pub fn new(geo: crate::surface::SurfaceGeometry, conv: super::Conventions) -> Self {
        Engine { geo, conv }
    }

    /// `Gamma<level> * e`.
    pub fn mul_gamma(&self, e: &TautExpr) -> Result<TautExpr> {
        let m = e.level;
        let mut out = TautExpr::zero(m);
        if m < 2 {
            return Ok(out);
        }
        for (g, c) in &e.terms {
            let pieces = match g {
                Generator::Diag(d) => self.gamma_diag(d, m)?,
                Generator::Node(n) => self.gamma_node(n),
            };
            let want = g.dimension(m) - 1;
            for (k, h) in pieces {
                debug_assert_eq!(h.dimension(m), want, "grading broken by Gamma on {g}");
                if h.dimension(m) >= 0 {
                    out.add_term(h, &k * c);
                }
            }
        }
        Ok(out)
    }

    /// Multiplies a surface class in at `slot`.
    pub fn mul_class(&self, e: &TautExpr, slot: Slot, c: &SurfaceClass) -> Result<TautExpr> {
        if slot == 0 || slot > e.level {
            return Err(TautError::Domain(format!("slot {slot} outside 1..={}", e.level)));
        }
        let mut out = TautExpr::zero(e.level);
        for (k, b) in BasisClass::split(c) {
            let part = self.mul_basis(e, slot, &b);
            out.add_expr(&part.scale(&k))?;
        }
        Ok(out)
    }

    fn mul_basis(&self, e: &TautExpr, slot: Slot, b: &BasisClass) -> TautExpr {
        let mut out = TautExpr::zero(e.level);
        for (g, c) in &e.terms {
            let hit = match g {
                Generator::Diag(d) => d.mul_class(slot, b, &self.geo).map(|(k, q)| (k, Generator::Diag(q))),
                Generator::Node(n) => self.class_node(n, slot, b).map(|(k, q)| (k, Generator::Node(q))),
            };
            if let Some((k, h)) = hit {
                if h.dimension(e.level) >= 0 {
                    out.add_term(h, &k * c);
                }
            }
        }
        out
    }

    /// Pullback along `W^(m+1) -> W^m`.
    pub fn pullback(&self, e: &TautExpr) -> TautExpr {
        let m = e.level + 1;
        let mut out = TautExpr::zero(m);
        for (g, c) in &e.terms {
            match g {
                Generator::Diag(_) => out.add_term(g.clone(), c.clone()),
                Generator::Node(n) => {
                    for (k, h) in self.pull_node(n, m) {
                        out.add_term(h, &k * c);
                    }
                }
            }
        }
        out
    }

    /// Pushforward along `W^m -> W^(m-1)`.
    pub fn pushforward(&self, e: &TautExpr) -> Result<TautExpr> {
        let m = e.level;
        if m < 2 {
            return Err(TautError::Domain("no pushforward below W^1".into()));
        }
        let mut out = TautExpr::zero(m - 1);
        for (g, c) in &e.terms {
            let pieces = match g {
                Generator::Diag(d) => {
                    self.push_diag(d, m).into_iter().map(|(k, q)| (k, Generator::Diag(q))).collect()
                }
                Generator::Node(n) => self.push_node(n, m)?,
            };
            for (k, h) in pieces {
                out.add_term(h, &k * c);
            }
        }
        Ok(out)
    }

    /// Degree of a zero-dimensional class.
    pub fn integrate(&self, e: &TautExpr) -> Result<CharacterPolynomial> {
        let mut total = CharacterPolynomial::zero();
        for (g, c) in &e.terms {
            let dim = g.dimension(e.level);
            if dim != 0 {
                return Err(TautError::Dimension(format!("cannot integrate {g} of dimension {dim}")));
            }
            let v = match g {
                Generator::Diag(d) => self.integrate_diag(d, e.level),
                Generator::Node(n) => self.integrate_node(n)?,
            };
            total.add_assign_ref(&(&v * c));
        }
        Ok(total)
    }

    fn integrate_diag(&self, d: &DiagMonomial, m: u32) -> CharacterPolynomial {
        if m == 1 {
            return match d.blocks() {
                [] => CharacterPolynomial::zero(),
                [b] => integrate_on_x(&b.class.to_surface()),
                _ => unreachable!("level 1 has one slot"),
            };
        }
        self.push_diag(d, m)
            .into_iter()
            .fold(CharacterPolynomial::zero(), |acc, (k, q)| &acc + &(&k * &self.integrate_diag(&q, m - 1)))
    }

    /// Normal form of a word on `W^m`.
    pub fn expand_word(&self, word: &Word, m: u32) -> Result<TautExpr> {
        if m == 0 {
            return Err(TautError::Domain("level must be at least 1".into()));
        }
        let mut codim = 0u32;
        for f in word {
            match f {
                Factor::Gamma(k) | Factor::Delta(k) => {
                    if *k == 0 || *k > m {
                        return Err(TautError::Domain(format!("diagonal index {k} outside 1..={m}")));
                    }
                    codim += 1;
                }
                Factor::Class(s, c) => {
                    if *s == 0 || *s > m {
                        return Err(TautError::Domain(format!("slot {s} outside 1..={m}")));
                    }
                    codim += c.pure_degree().ok_or_else(|| {
                        TautError::Grading(format!("slot class {c} is not homogeneous"))
                    })?;
                }
            }
        }
        if codim > m + 1 {
            return Err(TautError::Dimension(format!("codimension {codim} exceeds dim W^{m} = {}", m + 1)));
        }
        let mut out = TautExpr::zero(m);
        for (c, gammas, classes) in flatten(word) {
            out.add_expr(&self.eval_flat(&gammas, &classes, m)?.scale(&c))?;
        }
        Ok(out)
    }

    fn eval_flat(&self, gammas: &[u32], classes: &[(Slot, BasisClass)], m: u32) -> Result<TautExpr> {
        let early = self.conv.timing == ClassTiming::Earliest;
        let mut e = TautExpr::one(1);
        for lvl in 1..=m {
            if lvl > 1 {
                e = self.pullback(&e);
            }
            if early {
                for (s, b) in classes.iter().filter(|(s, _)| *s == lvl) {
                    e = self.mul_basis(&e, *s, b);
                }
            }
            for _ in gammas.iter().filter(|&&k| k == lvl) {
                e = self.mul_gamma(&e)?;
            }
            if e.is_zero() {
                return Ok(TautExpr::zero(m));
            }
        }
        if !early {
            for (s, b) in classes {
                e = self.mul_basis(&e, *s, b);
            }
        }
        Ok(e)
    }

    /// Normal form of a linear combination of words.
    pub fn expand(&self, sum: &WordSum, m: u32) -> Result<TautExpr> {
        let mut out = TautExpr::zero(m);
        for (c, w) in sum {
            out.add_expr(&self.expand_word(w, m)?.scale(c))?;
        }
        Ok(out)
    }

    /// `int_{W^m}` of a word.
    pub fn integrate_word(&self, word: &Word, m: u32) -> Result<CharacterPolynomial> {
        self.integrate(&self.expand_word(word, m)?)
    }

    /// The Chern roots `1 + L^(i) - Delta^(i)`, `i = 1..m`, as word sums.
    pub fn chern_roots(l: &SurfaceClass, m: u32) -> Vec<WordSum> {
        (1..=m)
            .map(|i| {
                let mut root: WordSum = vec![
                    (CharacterPolynomial::one(), Vec::new()),
                    (CharacterPolynomial::one(), vec![Factor::Class(i, l.clone())]),
                ];
                if i >= 2 {
                    root.push((CharacterPolynomial::from_int(-1), vec![Factor::Delta(i)]));
                }
                root
            })
            .collect()
    }

    /// Graded pieces `c_0, ..., c_m` of the Chern class of the tautological bundle of `L`.
    pub fn chern_taut(&self, l: &SurfaceClass, m: u32) -> Result<Vec<TautExpr>> {
        if m == 0 {
            return Err(TautError::Domain("level must be at least 1".into()));
        }
        let deg = l.pure_degree().filter(|&d| d == 1).ok_or_else(|| {
            TautError::Grading(format!("tautological bundles need a divisor class, got {l}"))
        })?;
        let mut pieces: Vec<WordSum> = vec![Vec::new(); m as usize + 1];
        let mut acc: Vec<(CharacterPolynomial, Word, u32)> = vec![(CharacterPolynomial::one(), Vec::new(), 0)];
        for root in Self::chern_roots(l, m) {
            let mut next = Vec::new();
            for (c, w, d) in &acc {
                for (k, f) in &root {
                    let mut w2 = w.clone();
                    w2.extend(f.iter().cloned());
                    next.push((c * k, w2, d + if f.is_empty() { 0 } else { deg }));
                }
            }
            acc = next;
        }
        for (c, w, d) in acc {
            pieces[d as usize].push((c, w));
        }
        pieces.iter().map(|s| self.expand(s, m)).collect()
    }
}
