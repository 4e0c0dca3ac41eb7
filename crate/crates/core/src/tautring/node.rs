//! Node scrolls and node sections.


use super::diag::restrict_to_curve;
use super::{BasisClass, CurveClass, Engine, Generator, NodeBlock, NodeClass, NodeProfile, Side, Slot};
use crate::charpoly::{int, CharacterPolynomial};
use crate::error::{Result, TautError};
use crate::surface::FibreKind;

/// A divisor on the base `X^Phi` of a node scroll.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BaseOp {
    /// The point lies at the node.
    Pt(Slot),
    /// Two points on the same component coincide.
    Diag(Slot, Slot, Side),
}

fn curve_mul(a: CurveClass, b: CurveClass) -> Option<CurveClass> {
    match (a, b) {
        (CurveClass::Pt, CurveClass::Pt) => None,
        (CurveClass::One, x) | (x, CurveClass::One) => Some(x),
    }
}

fn find_block(p: &NodeProfile, s: Slot) -> Option<(Side, usize)> {
    [Side::J, Side::K]
        .into_iter()
        .find_map(|side| p.blocks(side).iter().position(|b| b.slots.contains(&s)).map(|i| (side, i)))
}

impl NodeClass {
    pub fn dimension(&self) -> i64 {
        self.profile.base_dimension() + if self.section { 0 } else { 1 }
    }
}

impl Engine {
    /// `2g - 2` of the component curve carrying the blocks on `side`.
    fn curve_euler(&self, kind: FibreKind, side: Side) -> CharacterPolynomial {
        match (kind, side) {
            (FibreKind::Irreducible, _) => &CharacterPolynomial::symbol("g2") - &CharacterPolynomial::from_int(2),
            (FibreKind::Reducible, Side::J) => CharacterPolynomial::symbol("g2pp"),
            (FibreKind::Reducible, Side::K) => CharacterPolynomial::symbol("g2p"),
        }
    }

    fn apply_op(&self, p: &NodeProfile, op: BaseOp) -> Option<(CharacterPolynomial, NodeProfile)> {
        match op {
            BaseOp::Pt(a) => {
                let (side, idx) = find_block(p, a)?;
                let mut q = p.clone();
                let blk = &mut q.blocks_mut(side)[idx];
                blk.class = curve_mul(blk.class, CurveClass::Pt)?;
                Some((CharacterPolynomial::one(), q))
            }
            BaseOp::Diag(a, b, side) => {
                let (sa, ia) = find_block(p, a)?;
                let (sb, ib) = find_block(p, b)?;
                if sa != side || sb != side {
                    return None;
                }
                if ia == ib {
                    let k = self.curve_euler(p.kind, side).scale(&int(self.conv.omega.sign()));
                    let (k2, q) = self.apply_op(p, BaseOp::Pt(a))?;
                    return Some((&k * &k2, q));
                }
                let mut q = p.clone();
                let blocks = q.blocks_mut(side);
                let class = curve_mul(blocks[ia].class, blocks[ib].class)?;
                let (lo, hi) = (ia.min(ib), ia.max(ib));
                let moved = blocks.remove(hi);
                blocks[lo].slots.extend(moved.slots);
                blocks[lo].class = class;
                Some((CharacterPolynomial::one(), NodeProfile::new(q.kind, q.i_set, q.split, q.j, q.k)))
            }
        }
    }

    /// The divisors making up `c1('E)` (first) and `c1("E)` (second).
    fn chern_ops(&self, p: &NodeProfile) -> [Vec<(i64, BaseOp)>; 2] {
        let r = p.i_set.len() as i64;
        let i = p.split as i64;
        let tw = self.conv.twist;
        let (jp, jpp) = tw.twists(Side::J, r, i);
        let (kp, kpp) = tw.twists(Side::K, r, i);
        let mut out = [Vec::new(), Vec::new()];
        for (e, (cj, ck)) in [(jp, kp), (jpp, kpp)].into_iter().enumerate() {
            let ops = &mut out[e];
            let j_coef = match p.kind {
                FibreKind::Reducible => cj,
                FibreKind::Irreducible => cj + ck,
            };
            for b in &p.j {
                ops.extend(b.slots.iter().map(|&s| (-j_coef, BaseOp::Pt(s))));
            }
            for b in &p.k {
                ops.extend(b.slots.iter().map(|&s| (-ck, BaseOp::Pt(s))));
            }
            for side in [Side::J, Side::K] {
                let slots: Vec<Slot> = p.blocks(side).iter().flat_map(|b| b.slots.iter().copied()).collect();
                for (x, &a) in slots.iter().enumerate() {
                    for &b in &slots[x + 1..] {
                        ops.push((-1, BaseOp::Diag(a, b, side)));
                    }
                }
            }
            ops.retain(|(c, _)| *c != 0);
        }
        out
    }

    /// `Gamma<m> * n` on `W^m`.
    pub(super) fn gamma_node(&self, n: &NodeClass) -> Vec<(CharacterPolynomial, Generator)> {
        if !n.section {
            let s = NodeClass { profile: n.profile.clone(), section: true };
            return vec![(CharacterPolynomial::from_int(-1), Generator::Node(s))];
        }
        let [e1, e2] = self.chern_ops(&n.profile);
        let mut out = Vec::new();
        for (c, op) in e1.iter().chain(&e2) {
            if let Some((k, q)) = self.apply_op(&n.profile, *op) {
                out.push((k.scale(&int(-c)), Generator::Node(NodeClass { profile: q, section: true })));
            }
        }
        for (ca, oa) in &e1 {
            for (cb, ob) in &e2 {
                let Some((ka, qa)) = self.apply_op(&n.profile, *oa) else { continue };
                let Some((kb, qb)) = self.apply_op(&qa, *ob) else { continue };
                out.push(((&ka * &kb).scale(&int(ca * cb)), Generator::Node(NodeClass { profile: qb, section: false })));
            }
        }
        out
    }

    /// Multiplies a basis class in at `slot`.
    pub(super) fn class_node(&self, n: &NodeClass, slot: Slot, c: &BasisClass) -> Option<(CharacterPolynomial, NodeClass)> {
        if n.profile.i_set.contains(&slot) {
            return (*c == BasisClass::One).then(|| (CharacterPolynomial::one(), n.clone()));
        }
        let (side, idx) = find_block(&n.profile, slot)?;
        let (k, cc) = restrict_to_curve(c, &self.geo)?;
        let mut q = n.clone();
        let blk = &mut q.profile.blocks_mut(side)[idx];
        blk.class = curve_mul(blk.class, cc)?;
        Some((k, q))
    }

    fn sides(kind: FibreKind) -> &'static [Side] {
        match kind {
            FibreKind::Reducible => &[Side::J, Side::K],
            FibreKind::Irreducible => &[Side::J],
        }
    }

    /// Pullback of a node class from `W^(m-1)` to `W^m`.
    pub(super) fn pull_node(&self, n: &NodeClass, m: Slot) -> Vec<(CharacterPolynomial, Generator)> {
        let p = &n.profile;
        let r = p.i_set.len() as i64;
        let i = p.split as i64;
        let mut out = Vec::new();
        for &side in Self::sides(p.kind) {
            let mut q = p.clone();
            q.blocks_mut(side).push(NodeBlock { slots: vec![m], class: CurveClass::One });
            let q = NodeProfile::new(q.kind, q.i_set, q.split, q.j, q.k);
            out.push((CharacterPolynomial::one(), Generator::Node(NodeClass { profile: q.clone(), section: n.section })));
            if !n.section {
                continue;
            }
            let tw = self.conv.twist;
            let t = match p.kind {
                FibreKind::Reducible => tw.pullback_coefficient(side, r, i),
                FibreKind::Irreducible => tw.pullback_coefficient(Side::J, r, i) + tw.pullback_coefficient(Side::K, r, i),
            };
            if let Some((k, qp)) = self.apply_op(&q, BaseOp::Pt(m)) {
                out.push((k.scale(&int(t)), Generator::Node(NodeClass { profile: qp, section: false })));
            }
            let slots: Vec<Slot> = p.blocks(side).iter().flat_map(|b| b.slots.iter().copied()).collect();
            for a in slots {
                if let Some((k, qd)) = self.apply_op(&q, BaseOp::Diag(a, m, side)) {
                    out.push((k, Generator::Node(NodeClass { profile: qd, section: false })));
                }
            }
        }
        out
    }

    /// Pushforward of a node class along `W^m -> W^(m-1)`, for the cases with a known answer.
    pub(super) fn push_node(&self, n: &NodeClass, m: Slot) -> Result<Vec<(CharacterPolynomial, Generator)>> {
        let p = &n.profile;
        let unsupported = || TautError::Unsupported(format!("pushforward of node class {n} from W^{m}"));
        if p.i_set.contains(&m) {
            // the image loses the fibre direction of the scroll
            return if p.i_set.len() == 2 && !n.section { Ok(Vec::new()) } else { Err(unsupported()) };
        }
        let (side, idx) = find_block(p, m).ok_or_else(unsupported)?;
        if n.section {
            return Err(unsupported());
        }
        let mut q = p.clone();
        let blocks = q.blocks_mut(side);
        if blocks[idx].slots.len() > 1 {
            blocks[idx].slots.retain(|&s| s != m);
        } else if blocks[idx].class == CurveClass::Pt {
            blocks.remove(idx);
        } else {
            return Ok(Vec::new());
        }
        let q = NodeProfile::new(q.kind, q.i_set, q.split, q.j, q.k);
        Ok(vec![(CharacterPolynomial::one(), Generator::Node(NodeClass { profile: q, section: false }))])
    }

    /// Degree of a zero-dimensional node class.
    pub(super) fn integrate_node(&self, n: &NodeClass) -> Result<CharacterPolynomial> {
        if n.dimension() != 0 {
            return Err(TautError::Dimension(format!("node class {n} has dimension {}", n.dimension())));
        }
        let c = self.geo.node_count_of(n.profile.kind);
        Ok(if c.is_zero() { CharacterPolynomial::zero() } else { c })
    }
}
