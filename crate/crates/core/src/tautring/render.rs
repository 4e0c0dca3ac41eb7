//! Canonical text rendering of tautological classes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use super::{CurveClass, DiagMonomial, Generator, NodeBlock, NodeClass, NodeProfile, Side, Slot, TautExpr};
use crate::charpoly::{fmt_rational, CharacterPolynomial};
use crate::surface::FibreKind;

fn slot_list(slots: &[Slot]) -> String {
    let sep = if slots.iter().all(|&s| s < 10) { "" } else { "," };
    slots.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
}

fn node_blocks(blocks: &[NodeBlock]) -> String {
    blocks
        .iter()
        .map(|b| {
            let inner = b.slots.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
            match b.class {
                CurveClass::One => format!("{{{inner}}}"),
                CurveClass::Pt => format!("{{{inner}}}@pt"),
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders a node class whose plain singleton blocks are listed in `j`/`k` only when not implicit.
fn node_text(p: &NodeProfile, section: bool, j: &[NodeBlock], k: &[NodeBlock]) -> String {
    let head = match (section, p.kind) {
        (false, FibreKind::Reducible) => "F",
        (true, FibreKind::Reducible) => "S",
        (false, FibreKind::Irreducible) => "Firr",
        (true, FibreKind::Irreducible) => "Sirr",
    };
    let i_part = if p.i_set.len() == 2 {
        slot_list(&p.i_set)
    } else {
        format!("{}|{}", slot_list(&p.i_set[..p.split]), slot_list(&p.i_set[p.split..]))
    };
    let mut tail = node_blocks(j);
    if !k.is_empty() {
        tail.push('|');
        tail.push_str(&node_blocks(k));
    } else if !j.is_empty() && p.kind == FibreKind::Reducible {
        tail.push('|');
    }
    format!("{head}({i_part}:{tail})")
}

impl fmt::Display for DiagMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("1");
        }
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.slots.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let classes: Vec<String> = self.blocks.iter().map(|b| b.class.to_string()).collect();
        write!(f, "q[{}]({})", blocks.join(","), classes.join(","))
    }
}

impl fmt::Display for NodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&node_text(&self.profile, self.section, &self.profile.j, &self.profile.k))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Diag(d) => d.fmt(f),
            Generator::Node(n) => n.fmt(f),
        }
    }
}

fn is_plain(b: &NodeBlock) -> bool {
    b.slots.len() == 1 && b.class == CurveClass::One
}

type GroupKey = (FibreKind, bool, Vec<Slot>, usize, Vec<NodeBlock>, Vec<NodeBlock>, Vec<Slot>);

/// Renders the terms of `e`, folding complete sets of node completions into one implicit profile.
///
/// Returns `(coefficient, body)` pairs in canonical order.
pub fn compact_fillings(e: &TautExpr) -> Vec<(CharacterPolynomial, String)> {
    let mut out = Vec::new();
    let mut groups: BTreeMap<GroupKey, Vec<(CharacterPolynomial, NodeClass)>> = BTreeMap::new();
    for (g, c) in e.terms() {
        match g {
            Generator::Diag(d) => out.push((c.clone(), d.to_string())),
            Generator::Node(n) => {
                let p = &n.profile;
                let fixed = |side: Side| p.blocks(side).iter().filter(|b| !is_plain(b)).cloned().collect::<Vec<_>>();
                let mut plain: Vec<Slot> =
                    p.j.iter().chain(&p.k).filter(|b| is_plain(b)).map(|b| b.slots[0]).collect();
                plain.sort_unstable();
                let key = (p.kind, n.section, p.i_set.clone(), p.split, fixed(Side::J), fixed(Side::K), plain);
                groups.entry(key).or_default().push((c.clone(), n.clone()));
            }
        }
    }
    for ((kind, section, _, _, fj, fk, plain), members) in groups {
        let expected = match kind {
            FibreKind::Reducible => 1usize << plain.len(),
            FibreKind::Irreducible => 1,
        };
        let same = members.iter().all(|(c, _)| *c == members[0].0);
        if members.len() == expected && same {
            let p = &members[0].1.profile;
            out.push((members[0].0.clone(), node_text(p, section, &fj, &fk)));
        } else {
            out.extend(members.into_iter().map(|(c, n)| (c, n.to_string())));
        }
    }
    out
}

/// Joins `(coefficient, body)` pairs into a signed sum.
pub(crate) fn render_sum(terms: &[(CharacterPolynomial, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (c, body)) in terms.iter().enumerate() {
        let (neg, text) = match c.as_constant() {
            Some(r) => {
                let abs = r.abs();
                let text = if body == "1" {
                    fmt_rational(&abs)
                } else if abs.is_one() {
                    body.clone()
                } else {
                    format!("{}*{body}", fmt_rational(&abs))
                };
                (r.is_negative(), text)
            }
            None if body == "1" => (false, format!("({c})")),
            None => (false, format!("({c})*{body}")),
        };
        match (idx, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&text);
    }
    s
}

impl fmt::Display for TautExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sum(&compact_fillings(self)))
    }
}
