//! Diagonal monomials: multiplication by `Gamma`, by slot classes, and pushforward.

use std::collections::BTreeSet;


use super::{BasisClass, Block, CurveClass, DiagMonomial, Engine, Generator, NodeBlock, NodeClass, NodeProfile, Side, Slot};
use crate::charpoly::{int, CharacterPolynomial};
use crate::error::{Result, TautError};
use crate::staircase::{beta_cached, binom};
use crate::surface::{DivSym, FibreKind, SurfaceGeometry};

impl DiagMonomial {
    /// The fundamental class.
    pub fn unit() -> Self {
        DiagMonomial::default()
    }

    /// Builds a monomial from blocks, which must be disjoint and nonempty.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.slots.is_empty() {
                return Err(TautError::Domain("empty block".into()));
            }
            for &s in &b.slots {
                if s == 0 || !seen.insert(s) {
                    return Err(TautError::Domain(format!("slot {s} is repeated or zero")));
                }
            }
        }
        Ok(Self::normalized(blocks))
    }

    fn normalized(mut blocks: Vec<Block>) -> Self {
        for b in &mut blocks {
            b.slots.sort_unstable();
        }
        blocks.retain(|b| b.slots.len() > 1 || b.class != BasisClass::One);
        blocks.sort_by_key(|b| b.slots[0]);
        DiagMonomial { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Largest slot mentioned.
    pub fn max_slot(&self) -> Slot {
        self.blocks.iter().flat_map(|b| b.slots.iter().copied()).max().unwrap_or(0)
    }

    pub fn codim(&self) -> u32 {
        self.blocks.iter().map(|b| b.slots.len() as u32 - 1 + b.class.degree()).sum()
    }

    /// All blocks including the trivial singletons of `1..=m`.
    pub fn full_blocks(&self, m: u32) -> Vec<Block> {
        let used: BTreeSet<Slot> = self.blocks.iter().flat_map(|b| b.slots.iter().copied()).collect();
        let mut out = self.blocks.clone();
        out.extend((1..=m).filter(|s| !used.contains(s)).map(|s| Block { slots: vec![s], class: BasisClass::One }));
        out.sort_by_key(|b| b.slots[0]);
        out
    }

    /// Multiplies the class `c` in at `slot`.
    pub fn mul_class(&self, slot: Slot, c: &BasisClass, geo: &SurfaceGeometry) -> Option<(CharacterPolynomial, DiagMonomial)> {
        let mut blocks = self.blocks.clone();
        match blocks.iter_mut().find(|b| b.slots.contains(&slot)) {
            Some(b) => {
                let (k, cls) = b.class.mul(c, geo)?;
                b.class = cls;
                Some((k, Self::normalized(blocks)))
            }
            None => {
                blocks.push(Block { slots: vec![slot], class: c.clone() });
                Some((CharacterPolynomial::one(), Self::normalized(blocks)))
            }
        }
    }
}

/// Converts a surface class on a point of a node component to a curve class.
pub(super) fn restrict_to_curve(c: &BasisClass, geo: &SurfaceGeometry) -> Option<(CharacterPolynomial, CurveClass)> {
    match c {
        BasisClass::One => Some((CharacterPolynomial::one(), CurveClass::One)),
        BasisClass::Div(d) => {
            let k = geo.divisor_fibre_degree(d);
            (!k.is_zero()).then_some((k, CurveClass::Pt))
        }
        BasisClass::Pt => None,
    }
}

/// All ways of sending `blocks` to the sides allowed by `kind`, with restricted classes.
pub(super) fn distribute(
    blocks: &[Block],
    kind: FibreKind,
    geo: &SurfaceGeometry,
) -> Vec<(CharacterPolynomial, Vec<NodeBlock>, Vec<NodeBlock>)> {
    let mut restricted = Vec::with_capacity(blocks.len());
    let mut coef = CharacterPolynomial::one();
    for b in blocks {
        let Some((k, cls)) = restrict_to_curve(&b.class, geo) else { return Vec::new() };
        coef = &coef * &k;
        restricted.push(NodeBlock { slots: b.slots.clone(), class: cls });
    }
    let n = restricted.len();
    let masks: Vec<u64> = match kind {
        FibreKind::Reducible => (0..1u64 << n).collect(),
        FibreKind::Irreducible => vec![0],
    };
    masks
        .into_iter()
        .map(|mask| {
            let (mut j, mut k) = (Vec::new(), Vec::new());
            for (idx, b) in restricted.iter().enumerate() {
                if mask >> idx & 1 == 1 { k.push(b.clone()) } else { j.push(b.clone()) }
            }
            (coef.clone(), j, k)
        })
        .collect()
}

impl Engine {
    /// `Gamma<m> * q` on `W^m`.
    pub(super) fn gamma_diag(&self, d: &DiagMonomial, m: u32) -> Result<Vec<(CharacterPolynomial, Generator)>> {
        let full = d.full_blocks(m);
        let mut out = Vec::new();
        let top = m + 1;

        // pairs of points in different blocks
        for a in 0..full.len() {
            for b in a + 1..full.len() {
                let Some((k, cls)) = full[a].class.mul(&full[b].class, &self.geo) else { continue };
                let mut slots = full[a].slots.clone();
                slots.extend(&full[b].slots);
                let mut blocks: Vec<Block> =
                    full.iter().enumerate().filter(|(i, _)| *i != a && *i != b).map(|(_, x)| x.clone()).collect();
                blocks.push(Block { slots, class: cls });
                let q = DiagMonomial::normalized(blocks);
                if q.codim() <= top {
                    let n = (full[a].slots.len() * full[b].slots.len()) as i64;
                    out.push((k.scale(&int(n)), Generator::Diag(q)));
                }
            }
        }

        for (idx, blk) in full.iter().enumerate() {
            let r = blk.slots.len();
            if r < 2 {
                continue;
            }
            // node scrolls over the points of the block
            if blk.class == BasisClass::One {
                let beta = beta_cached(r as u32)?;
                let others: Vec<Block> =
                    full.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, x)| x.clone()).collect();
                for (kind, _) in self.geo.fibre_kinds() {
                    for (k, j_blocks, k_blocks) in distribute(&others, kind, &self.geo) {
                        for (split, &bv) in (1..r).zip(&beta) {
                            let profile = NodeProfile::new(kind, blk.slots.clone(), split, j_blocks.clone(), k_blocks.clone());
                            out.push((
                                k.scale(&int(bv as i64)),
                                Generator::Node(NodeClass { profile, section: false }),
                            ));
                        }
                    }
                }
            }
            // self-intersection of the diagonal
            let w = BasisClass::Div(DivSym::Omega);
            if let Some((k, cls)) = blk.class.mul(&w, &self.geo) {
                let mut blocks = full.clone();
                blocks[idx].class = cls;
                let q = DiagMonomial::normalized(blocks);
                if q.codim() <= top {
                    let n = binom(r as i64, 2) * self.conv.omega.sign();
                    out.push((k.scale(&int(n)), Generator::Diag(q)));
                }
            }
        }
        Ok(out)
    }

    /// Pushforward of a diagonal monomial along `W^m -> W^(m-1)`.
    pub(super) fn push_diag(&self, d: &DiagMonomial, m: u32) -> Vec<(CharacterPolynomial, DiagMonomial)> {
        let mut blocks = d.blocks.clone();
        let Some(pos) = blocks.iter().position(|b| b.slots.contains(&m)) else {
            // pulled back from W^(m-1)
            return Vec::new();
        };
        if blocks[pos].slots.len() > 1 {
            blocks[pos].slots.retain(|&s| s != m);
            return vec![(CharacterPolynomial::one(), DiagMonomial::normalized(blocks))];
        }
        let blk = blocks.remove(pos);
        let rest = DiagMonomial::normalized(blocks);
        match blk.class {
            BasisClass::One => Vec::new(),
            BasisClass::Div(ref dv) => {
                let k = self.geo.divisor_fibre_degree(dv);
                if k.is_zero() { Vec::new() } else { vec![(k, rest)] }
            }
            BasisClass::Pt => {
                if m < 2 {
                    return Vec::new();
                }
                let used: BTreeSet<Slot> = rest.blocks.iter().flat_map(|b| b.slots.iter().copied()).collect();
                let slot = (1..m).find(|s| !used.contains(s)).unwrap_or(1);
                rest.mul_class(slot, &BasisClass::Div(DivSym::F), &self.geo).into_iter().collect()
            }
        }
    }
}

impl NodeProfile {
    /// Builds a profile, sorting slots and blocks.
    pub fn new(kind: FibreKind, mut i_set: Vec<Slot>, split: usize, mut j: Vec<NodeBlock>, mut k: Vec<NodeBlock>) -> Self {
        i_set.sort_unstable();
        for b in j.iter_mut().chain(k.iter_mut()) {
            b.slots.sort_unstable();
        }
        j.sort_by_key(|b| b.slots[0]);
        k.sort_by_key(|b| b.slots[0]);
        NodeProfile { kind, i_set, split, j, k }
    }

    pub fn blocks(&self, side: Side) -> &[NodeBlock] {
        match side {
            Side::J => &self.j,
            Side::K => &self.k,
        }
    }

    pub(super) fn blocks_mut(&mut self, side: Side) -> &mut Vec<NodeBlock> {
        match side {
            Side::J => &mut self.j,
            Side::K => &mut self.k,
        }
    }

    /// Dimension of the base `X^Phi[(c.)]`.
    pub fn base_dimension(&self) -> i64 {
        self.j.iter().chain(&self.k).map(|b| if b.class == CurveClass::One { 1 } else { 0 }).sum()
    }

    /// Largest slot mentioned.
    pub fn max_slot(&self) -> Slot {
        self.i_set
            .iter()
            .chain(self.j.iter().chain(&self.k).flat_map(|b| b.slots.iter()))
            .copied()
            .max()
            .unwrap_or(0)
    }
}
