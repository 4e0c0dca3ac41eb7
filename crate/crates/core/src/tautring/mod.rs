//! Tautological classes on the flag-Hilbert tower `W^m` of a family of nodal curves.
//!
//! Classes are linear combinations of [`Generator`]s with character-polynomial
//! coefficients. Diagonal monomials live in [`DiagMonomial`], node scrolls and node
//! sections in [`NodeClass`]. The engine multiplies generators by the diagonal
//! divisors `Gamma<k>` and by surface classes, pulls back and pushes forward along
//! `W^m -> W^(m-1)`, and integrates zero-dimensional classes.

mod diag;
mod expand;
mod node;
mod render;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::charpoly::CharacterPolynomial;
use crate::error::{Result, TautError};
use crate::surface::{DivSym, FibreKind, SurfaceClass, SurfaceGeometry};

pub use expand::{Factor, Word, WordSum};
pub use render::compact_fillings;

/// Index of a point in the flag `z_1 < ... < z_m`, starting at 1.
pub type Slot = u32;

/// A basis element of `H^*(X)`: the unit, a divisor symbol or the point class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisClass {
    One,
    Div(DivSym),
    Pt,
}

impl BasisClass {
    pub fn degree(&self) -> u32 {
        match self {
            BasisClass::One => 0,
            BasisClass::Div(_) => 1,
            BasisClass::Pt => 2,
        }
    }

    /// Product in `H^*(X)`, or `None` when it vanishes for degree reasons.
    pub fn mul(&self, other: &BasisClass, geo: &SurfaceGeometry) -> Option<(CharacterPolynomial, BasisClass)> {
        use BasisClass::*;
        match (self, other) {
            (One, c) | (c, One) => Some((CharacterPolynomial::one(), c.clone())),
            (Div(a), Div(b)) => {
                let p = geo.pair(a, b);
                (!p.is_zero()).then_some((p, Pt))
            }
            _ => None,
        }
    }

    /// Splits a surface class into basis elements with coefficients.
    pub fn split(c: &SurfaceClass) -> Vec<(CharacterPolynomial, BasisClass)> {
        let mut out = Vec::new();
        if !c.deg0.is_zero() {
            out.push((CharacterPolynomial::constant(c.deg0.clone()), BasisClass::One));
        }
        for (d, k) in &c.div {
            out.push((CharacterPolynomial::constant(k.clone()), BasisClass::Div(d.clone())));
        }
        if !c.deg2.is_zero() {
            out.push((c.deg2.clone(), BasisClass::Pt));
        }
        out
    }

    pub fn to_surface(&self) -> SurfaceClass {
        match self {
            BasisClass::One => SurfaceClass::one(),
            BasisClass::Div(d) => SurfaceClass::divisor(d.clone()),
            BasisClass::Pt => SurfaceClass::point(CharacterPolynomial::one()),
        }
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisClass::One => f.write_str("1"),
            BasisClass::Div(d) => write!(f, "{d}"),
            BasisClass::Pt => f.write_str("pt"),
        }
    }
}

/// A block of coincident points carrying a class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub slots: Vec<Slot>,
    pub class: BasisClass,
}

/// `q_(I.)[(c.)]`: the points in each block coincide, and the common point carries the block class.
///
/// Singleton blocks with the unit class are omitted; blocks are sorted by least slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiagMonomial {
    blocks: Vec<Block>,
}

/// Class carried by a block of a node profile: the whole component curve or a point on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveClass {
    One,
    Pt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeBlock {
    pub slots: Vec<Slot>,
    pub class: CurveClass,
}

/// Which component a block of a node profile lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The component `X''` (the normalization, for an irreducible fibre).
    J,
    /// The component `X'`.
    K,
}

/// A full node profile `(I1|I2 : J | K)` with classes on the `J` and `K` blocks.
///
/// `i_set` holds the points at the node, the first `split` of them form `I1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeProfile {
    pub kind: FibreKind,
    pub i_set: Vec<Slot>,
    pub split: usize,
    pub j: Vec<NodeBlock>,
    pub k: Vec<NodeBlock>,
}

/// A node scroll `F^Phi[(c.)]`, or with `section` set the node section `-Gamma * F^Phi[(c.)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeClass {
    pub profile: NodeProfile,
    pub section: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Diag(DiagMonomial),
    Node(NodeClass),
}

impl Generator {
    /// Dimension of the cycle on `W^m`.
    pub fn dimension(&self, m: u32) -> i64 {
        match self {
            Generator::Diag(d) => m as i64 + 1 - d.codim() as i64,
            Generator::Node(n) => n.dimension(),
        }
    }
}

/// Sign of the diagonal self-intersection term in `Gamma * q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OmegaSign {
    /// `-omega`, the relative normal bundle of the diagonal.
    #[default]
    Geometric,
    /// `+omega`.
    Plus,
}

impl OmegaSign {
    pub fn sign(self) -> i64 {
        match self {
            OmegaSign::Geometric => -1,
            OmegaSign::Plus => 1,
        }
    }
}

/// Twists of the rank-two bundle `'E + "E` whose projectivization is a node scroll.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TwistConvention {
    /// `J`: `(i, i+1)`, `K`: `(r-i+1, r-i)`.
    #[default]
    Symmetric,
    /// `J`: `(i, i+1)`, `K`: `(r-i, r-i-1)`.
    Printed,
    /// `J`: `(i-1, i)`, `K`: `(r-i, r-i-1)`.
    Balanced,
}

impl TwistConvention {
    /// Coefficients of the point classes in `c1('E)` and `c1("E)` for a block on `side`.
    pub fn twists(self, side: Side, r: i64, i: i64) -> (i64, i64) {
        use TwistConvention::*;
        match (self, side) {
            (Symmetric | Printed, Side::J) => (i, i + 1),
            (Balanced, Side::J) => (i - 1, i),
            (Symmetric, Side::K) => (r - i + 1, r - i),
            (Printed | Balanced, Side::K) => (r - i, r - i - 1),
        }
    }

    /// Coefficient of the new point class when a node section is pulled back.
    pub fn pullback_coefficient(self, side: Side, r: i64, i: i64) -> i64 {
        match self {
            TwistConvention::Printed => i + 1,
            _ => {
                let (a, b) = self.twists(side, r, i);
                a.min(b) + 1
            }
        }
    }
}

/// When slot classes in a word are multiplied in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClassTiming {
    /// After all diagonal factors, at the top level.
    #[default]
    Top,
    /// At the level where the slot first appears, before that level's diagonal factors.
    Earliest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Conventions {
    pub omega: OmegaSign,
    pub twist: TwistConvention,
    pub timing: ClassTiming,
}

/// Geometry plus conventions; all ring operations go through here.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub geo: SurfaceGeometry,
    pub conv: Conventions,
}

/// A class on `W^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautExpr {
    level: u32,
    terms: BTreeMap<Generator, CharacterPolynomial>,
}

impl TautExpr {
    pub fn zero(level: u32) -> Self {
        TautExpr { level, terms: BTreeMap::new() }
    }

    /// The fundamental class.
    pub fn one(level: u32) -> Self {
        let mut e = TautExpr::zero(level);
        e.add_term(Generator::Diag(DiagMonomial::unit()), CharacterPolynomial::one());
        e
    }

    pub fn from_generator(level: u32, g: Generator) -> Self {
        let mut e = TautExpr::zero(level);
        e.add_term(g, CharacterPolynomial::one());
        e
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &CharacterPolynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &Generator) -> CharacterPolynomial {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, g: Generator, c: CharacterPolynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_default();
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_expr(&mut self, other: &TautExpr) -> Result<()> {
        self.check_level(other)?;
        for (g, c) in &other.terms {
            self.add_term(g.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub_expr(&mut self, other: &TautExpr) -> Result<()> {
        self.check_level(other)?;
        for (g, c) in &other.terms {
            self.add_term(g.clone(), -c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &CharacterPolynomial) -> TautExpr {
        let mut out = TautExpr::zero(self.level);
        for (g, k) in &self.terms {
            out.add_term(g.clone(), k * c);
        }
        out
    }

    /// Codimensions of the terms, if they all agree.
    pub fn codim(&self) -> Option<i64> {
        let m = self.level as i64;
        let mut it = self.terms.keys().map(|g| m + 1 - g.dimension(self.level));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    fn check_level(&self, other: &TautExpr) -> Result<()> {
        if self.level != other.level {
            return Err(TautError::Dimension(format!(
                "cannot combine classes on W^{} and W^{}",
                self.level, other.level
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
