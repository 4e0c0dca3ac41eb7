//! Schur calculus on Grassmannians via the Pieri rule, and the multisecant count.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::charpoly::{CharacterPolynomial, Rational};
use crate::error::{Result, TautError};
use crate::surface::{DivSym, SurfaceClass};
use crate::tautring::{Engine, Factor, WordSum};

/// Shape of a special Schur class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StripKind {
    /// A single row; multiplication adds horizontal strips.
    Row,
    /// A single column; multiplication adds vertical strips.
    Column,
}

impl StripKind {
    pub fn dual(self) -> StripKind {
        match self {
            StripKind::Row => StripKind::Column,
            StripKind::Column => StripKind::Row,
        }
    }
}

/// A partition inside an `a x b` box: at most `a` rows, each of length at most `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxPartition {
    rows: Vec<u32>,
    bounds: (u32, u32),
}

impl BoxPartition {
    pub fn new(mut rows: Vec<u32>, bounds: (u32, u32)) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.len() > bounds.0 as usize || rows.iter().any(|&r| r > bounds.1) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(TautError::Domain(format!("{rows:?} is not a partition in the {}x{} box", bounds.0, bounds.1)));
        }
        Ok(BoxPartition { rows, bounds })
    }

    pub fn empty(bounds: (u32, u32)) -> Self {
        BoxPartition { rows: Vec::new(), bounds }
    }

    pub fn full(bounds: (u32, u32)) -> Self {
        BoxPartition { rows: vec![bounds.1; bounds.0 as usize], bounds }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn bounds(&self) -> (u32, u32) {
        self.bounds
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// The conjugate partition in the transposed box.
    pub fn transpose(&self) -> BoxPartition {
        let rows = (0..self.bounds.1).map(|c| self.rows.iter().filter(|&&r| r > c).count() as u32).collect();
        BoxPartition::new(rows, (self.bounds.1, self.bounds.0)).expect("transpose stays in the box")
    }

    /// Partitions `mu` with `mu / self` a strip of the given kind and size, inside the box.
    pub fn add_strip(&self, kind: StripKind, size: u32) -> Vec<BoxPartition> {
        if kind == StripKind::Column {
            return self.transpose().add_strip(StripKind::Row, size).into_iter().map(|p| p.transpose()).collect();
        }
        let (a, b) = self.bounds;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(a as usize);
        self.strip_rec(0, size, b, &mut cur, &mut out);
        out
    }

    fn strip_rec(&self, i: usize, left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<BoxPartition>) {
        if i == self.bounds.0 as usize {
            if left == 0 {
                out.push(BoxPartition::new(cur.clone(), self.bounds).expect("strip stays a partition"));
            }
            return;
        }
        let base = self.row(i);
        // horizontal strip: row i may grow up to the old length of row i-1
        for grow in 0..=left.min(cap.saturating_sub(base)) {
            cur.push(base + grow);
            self.strip_rec(i + 1, left - grow, base, cur, out);
            cur.pop();
        }
    }
}

/// A rational combination of Schur classes in one box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurExpr {
    bounds: (u32, u32),
    terms: BTreeMap<BoxPartition, Rational>,
}

impl SchurExpr {
    pub fn zero(bounds: (u32, u32)) -> Self {
        SchurExpr { bounds, terms: BTreeMap::new() }
    }

    pub fn one(bounds: (u32, u32)) -> Self {
        SchurExpr::from_partition(BoxPartition::empty(bounds))
    }

    pub fn from_partition(p: BoxPartition) -> Self {
        let mut e = SchurExpr::zero(p.bounds);
        e.terms.insert(p, Rational::one());
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BoxPartition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &BoxPartition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    fn add(&mut self, p: BoxPartition, c: &Rational) {
        let slot = self.terms.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
}

/// Multiplies by the special class of the given kind and size.
pub fn pieri_mul(e: &SchurExpr, kind: StripKind, size: u32) -> Result<SchurExpr> {
    let (a, b) = e.bounds;
    let limit = match kind {
        StripKind::Row => b,
        StripKind::Column => a,
    };
    if size > a.max(b) {
        return Err(TautError::Domain(format!("special class of size {size} in a {a}x{b} box")));
    }
    let mut out = SchurExpr::zero(e.bounds);
    if size > limit {
        return Ok(out);
    }
    for (p, c) in &e.terms {
        for q in p.add_strip(kind, size) {
            out.add(q, c);
        }
    }
    Ok(out)
}

/// Degree of a product of special classes on the Grassmannian with Schur box `bounds`.
pub fn grassmann_integral(bounds: (u32, u32), factors: &[(StripKind, u32)]) -> Result<Rational> {
    let total: u32 = factors.iter().map(|f| f.1).sum();
    if total != bounds.0 * bounds.1 {
        return Ok(Rational::zero());
    }
    let mut e = SchurExpr::one(bounds);
    for &(kind, size) in factors {
        e = pieri_mul(&e, kind, size)?;
    }
    Ok(e.coeff(&BoxPartition::full(bounds)))
}

/// The tuples listed for `m = 3` as the only relevant exponent vectors.
pub const LISTED_TUPLES_M3: [[u32; 3]; 8] =
    [[2, 1, 1], [1, 1, 2], [1, 2, 1], [1, 0, 3], [0, 3, 1], [0, 2, 2], [0, 1, 3], [0, 0, 4]];

/// One summand `(j.)` of the multisecant formula.
#[derive(Clone, Debug, PartialEq)]
pub struct SecantTerm {
    pub j: Vec<u32>,
    pub grassmann: Rational,
    pub w_integral: CharacterPolynomial,
}

impl SecantTerm {
    pub fn value(&self) -> CharacterPolynomial {
        self.w_integral.scale(&self.grassmann)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecantReport {
    pub m: u32,
    pub terms: Vec<SecantTerm>,
    /// `m! N_m`.
    pub total: CharacterPolynomial,
}

impl SecantReport {
    /// `N_m = total / m!`.
    pub fn n(&self) -> CharacterPolynomial {
        let fact: i64 = (1..=self.m as i64).product();
        self.total.scale(&Rational::new(1.into(), fact.into()))
    }

    /// Tuples whose summand vanishes.
    pub fn vanishing(&self) -> Vec<Vec<u32>> {
        self.terms.iter().filter(|t| t.value().is_zero()).map(|t| t.j.clone()).collect()
    }
}

/// Compositions of `n` into `parts` nonnegative parts, last part positive, in lexicographically decreasing order.
pub fn secant_tuples(m: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            if left > 0 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(left - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m + 1, m, &mut Vec::new(), &mut out);
    out
}

/// `(L^(1))^j1 (L^(2) - Delta<2>)^j2 ... (L^(m) - Delta<m>)^jm` as a word sum.
pub fn secant_word(j: &[u32]) -> WordSum {
    let l = SurfaceClass::divisor(DivSym::L);
    let mut acc: WordSum = vec![(CharacterPolynomial::one(), Vec::new())];
    for (idx, &e) in j.iter().enumerate() {
        let slot = idx as u32 + 1;
        for _ in 0..e {
            let mut next = Vec::new();
            for (c, w) in &acc {
                let mut a = w.clone();
                a.push(Factor::Class(slot, l.clone()));
                next.push((c.clone(), a));
                if slot >= 2 {
                    let mut b = w.clone();
                    b.push(Factor::Delta(slot));
                    next.push((-c, b));
                }
            }
            acc = next;
        }
    }
    acc
}

/// `m! N_m` assembled from Grassmannian and tower integrals.
pub fn nsec(engine: &Engine, m: u32, kind: StripKind) -> Result<SecantReport> {
    if m < 2 {
        return Err(TautError::Domain(format!("multisecant count needs m >= 2, got {m}")));
    }
    let bounds = (m - 1, m + 1);
    let mut terms = Vec::new();
    let mut total = CharacterPolynomial::zero();
    for j in secant_tuples(m) {
        let factors: Vec<(StripKind, u32)> = j.iter().map(|&x| (kind, m + 1 - x)).collect();
        let grassmann = grassmann_integral(bounds, &factors)?;
        let w_integral = engine.integrate(&engine.expand(&secant_word(&j), m)?)?;
        let t = SecantTerm { j, grassmann, w_integral };
        total.add_assign_ref(&t.value());
        terms.push(t);
    }
    Ok(SecantReport { m, terms, total })
}

/// `3! N_3` in the row convention.
pub fn nsec3(engine: &Engine) -> Result<SecantReport> {
    nsec(engine, 3, StripKind::Row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::int;

    fn p(rows: &[u32], b: (u32, u32)) -> BoxPartition {
        BoxPartition::new(rows.to_vec(), b).unwrap()
    }

    #[test]
    fn pieri_examples() {
        let one = SchurExpr::one((2, 2));
        assert_eq!(pieri_mul(&one, StripKind::Row, 1).unwrap(), SchurExpr::from_partition(p(&[1], (2, 2))));
        let s3 = SchurExpr::from_partition(p(&[3], (2, 4)));
        let x = pieri_mul(&s3, StripKind::Row, 3).unwrap();
        let got: Vec<_> = x.terms().map(|(q, c)| (q.rows().to_vec(), c.clone())).collect();
        assert_eq!(got, vec![(vec![3, 3], int(1)), (vec![4, 2], int(1))]);
        let s33 = SchurExpr::from_partition(p(&[3, 3], (2, 4)));
        let y = pieri_mul(&s33, StripKind::Row, 2).unwrap();
        assert!(y.coeff(&BoxPartition::full((2, 4))).is_zero());
        assert_eq!(y.coeff(&p(&[4, 3], (2, 4))), int(0));
    }

    #[test]
    fn integrals() {
        assert_eq!(grassmann_integral((1, 1), &[(StripKind::Row, 1)]).unwrap(), int(1));
        assert_eq!(grassmann_integral((2, 2), &[(StripKind::Row, 1); 4]).unwrap(), int(2));
        let f = [(StripKind::Row, 2), (StripKind::Row, 3), (StripKind::Row, 3)];
        assert_eq!(grassmann_integral((2, 4), &f).unwrap(), int(1));
        assert_eq!(grassmann_integral((2, 4), &f[..2]).unwrap(), int(0));
    }

    #[test]
    fn strip_counts_match_brute_force() {
        // every partition in the box, filtered by the strip condition directly
        let b = (3, 3);
        let all: Vec<BoxPartition> = (0..=3u32)
            .flat_map(|x| (0..=x).flat_map(move |y| (0..=y).map(move |z| vec![x, y, z])))
            .map(|r| p(&r, b))
            .collect();
        for lam in &all {
            for size in 0..=3 {
                let mut want: Vec<BoxPartition> = all
                    .iter()
                    .filter(|mu| {
                        let (l, u) = (lam.rows(), mu.rows());
                        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
                        mu.size() == lam.size() + size
                            && (0..3).all(|i| get(u, i) >= get(l, i))
                            && (1..3).all(|i| get(u, i) <= get(l, i - 1))
                    })
                    .cloned()
                    .collect();
                let mut got = lam.add_strip(StripKind::Row, size);
                want.sort();
                got.sort();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn tuples_for_m3() {
        let t = secant_tuples(3);
        assert_eq!(t.len(), 10);
        assert!(t.iter().all(|j| j[2] > 0 && j.iter().sum::<u32>() == 4));
        for listed in LISTED_TUPLES_M3 {
            assert!(t.contains(&listed.to_vec()));
        }
    }

    #[test]
    fn secant_word_expands_binomially() {
        assert_eq!(secant_word(&[0, 0, 2]).len(), 4);
        assert_eq!(secant_word(&[2, 0, 0]).len(), 1);
    }
}
