//! Polynomials in `x_1..x_m, y_1..y_m, t` modulo `x_i y_i = t`, mixed
//! Vandermonde determinants and their valuations along special-fibre components.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charpoly::{fmt_rational, Rational};
use crate::error::{Result, TautError};

/// Largest `m` accepted by the determinant routines.
pub const MAX_M: usize = 6;

/// Exponent vector laid out as `[x_1..x_m, y_1..y_m, t]`.
pub type Exps = Vec<u32>;

/// Sparse polynomial kept in normal form modulo `x_i y_i = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotPoly {
    m: usize,
    terms: BTreeMap<Exps, Rational>,
}

/// Moves `min(x_i, y_i)` of every pair into the `t` exponent.
pub fn normalize_monomial(m: usize, e: &mut Exps) {
    for i in 0..m {
        let k = e[i].min(e[m + i]);
        e[i] -= k;
        e[m + i] -= k;
        e[2 * m] += k;
    }
}

impl QuotPoly {
    pub fn zero(m: usize) -> Self {
        QuotPoly { m, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        let mut p = Self::zero(m);
        p.add_term(vec![0; 2 * m + 1], c);
        p
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    /// Normal form of an arbitrary (unreduced) polynomial.
    pub fn normalize(m: usize, raw: impl IntoIterator<Item = (Exps, Rational)>) -> Self {
        let mut p = Self::zero(m);
        for (e, c) in raw {
            assert_eq!(e.len(), 2 * m + 1, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn monomial(m: usize, idx: usize, pow: u32) -> Self {
        let mut e = vec![0; 2 * m + 1];
        e[idx] = pow;
        Self::normalize(m, [(e, Rational::one())])
    }

    pub fn x(m: usize, i: usize) -> Self {
        Self::monomial(m, i - 1, 1)
    }

    pub fn y(m: usize, i: usize) -> Self {
        Self::monomial(m, m + i - 1, 1)
    }

    pub fn t_pow(m: usize, e: u32) -> Self {
        Self::monomial(m, 2 * m, e)
    }

    /// Elementary symmetric polynomial `sigma_k` in the x (or y) variables.
    pub fn elementary(m: usize, k: usize, in_y: bool) -> Self {
        let mut p = Self::zero(m);
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut e = vec![0; 2 * m + 1];
            for i in 0..m {
                if mask >> i & 1 == 1 {
                    e[if in_y { m + i } else { i }] = 1;
                }
            }
            p.add_term(e, Rational::one());
        }
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        normalize_monomial(self.m, &mut e);
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        QuotPoly { m: self.m, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.m), |acc, _| &acc * self)
    }

    /// Largest `E` with `t^E` dividing `self`; `None` for zero.
    pub fn t_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[2 * self.m]).min()
    }

    /// Lexicographically leading coefficient.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Sign-normalized copy with positive leading coefficient, and the sign used.
    pub fn sign_normalized(&self) -> (Self, i8) {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => (-self.clone(), -1),
            _ => (self.clone(), 1),
        }
    }

    /// Applies a substitution of variables by polynomials (same ring).
    pub fn substitute(&self, images: &[QuotPoly]) -> Self {
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.m, c.clone());
            for (idx, &p) in e.iter().enumerate() {
                if p > 0 {
                    term = &term * &images[idx].pow(p);
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl Add for &QuotPoly {
    type Output = QuotPoly;
    fn add(self, rhs: &QuotPoly) -> QuotPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QuotPoly {
    type Output = QuotPoly;
    fn sub(self, rhs: &QuotPoly) -> QuotPoly {
        self + &(-rhs.clone())
    }
}

impl Neg for QuotPoly {
    type Output = QuotPoly;
    fn neg(self) -> QuotPoly {
        QuotPoly { m: self.m, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

fn exps_product(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Mul for &QuotPoly {
    type Output = QuotPoly;
    fn mul(self, rhs: &QuotPoly) -> QuotPoly {
        let mut out = QuotPoly::zero(self.m);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = exps_product(ea, eb);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QuotPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let m = self.m;
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for (idx, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let name = if idx < m {
                    format!("x{}", idx + 1)
                } else if idx < 2 * m {
                    format!("y{}", idx - m + 1)
                } else {
                    "t".to_string()
                };
                vars.push(if p == 1 { name } else { format!("{name}^{p}") });
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (abs.is_one(), vars.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, true) => write!(f, "{}", fmt_rational(&abs))?,
                (false, false) => write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?,
            }
        }
        Ok(())
    }
}

fn check_m(m: usize) -> Result<()> {
    if !(2..=MAX_M).contains(&m) {
        return Err(TautError::Domain(format!("m must lie in 2..={MAX_M}, got {m}")));
    }
    Ok(())
}

/// Determinant of a matrix of polynomials by Laplace expansion along rows,
/// memoized over the set of columns still available.
pub fn det(rows: &[Vec<QuotPoly>]) -> QuotPoly {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r[0].m());
    let mut memo: HashMap<u32, QuotPoly> = HashMap::new();
    memo.insert(0, QuotPoly::one(m));
    fn go(
        rows: &[Vec<QuotPoly>],
        mask: u32,
        n: usize,
        memo: &mut HashMap<u32, QuotPoly>,
    ) -> QuotPoly {
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let r = n - mask.count_ones() as usize;
        let mut acc = QuotPoly::zero(rows[0][0].m());
        let mut sign_pos = true;
        for c in 0..n {
            if mask >> c & 1 == 0 {
                continue;
            }
            let minor = go(rows, mask & !(1 << c), n, memo);
            let term = &rows[r][c] * &minor;
            acc = if sign_pos { &acc + &term } else { &acc - &term };
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(rows, (1u32 << n) - 1, n, &mut memo)
}

/// The mixed Vandermonde matrix: rows `1, x, .., x^(m-i), y, .., y^(i-1)`.
pub fn mixed_vdm(m: usize, i: usize) -> Vec<Vec<QuotPoly>> {
    let mut rows = Vec::with_capacity(m);
    for p in 0..=(m - i) as u32 {
        rows.push((1..=m).map(|k| QuotPoly::x(m, k).pow(p)).collect());
    }
    for p in 1..i as u32 {
        rows.push((1..=m).map(|k| QuotPoly::y(m, k).pow(p)).collect());
    }
    rows
}

/// `G_i`, the sign-normalized determinant of the mixed Vandermonde matrix.
pub fn vdm_det(m: usize, i: usize) -> Result<QuotPoly> {
    check_m(m)?;
    if i < 1 || i > m {
        return Err(TautError::Domain(format!("need 1 <= i <= m, got i={i}, m={m}")));
    }
    Ok(det(&mixed_vdm(m, i)).sign_normalized().0)
}

/// Outcome of an up-to-sign identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    /// `+1` or `-1` when the identity holds.
    pub sign: i8,
}

fn up_to_sign(lhs: &QuotPoly, rhs: &QuotPoly) -> IdentityReport {
    if lhs == rhs && !lhs.is_zero() {
        IdentityReport { holds: true, sign: 1 }
    } else if *lhs == -rhs.clone() && !lhs.is_zero() {
        IdentityReport { holds: true, sign: -1 }
    } else {
        IdentityReport { holds: false, sign: 0 }
    }
}

/// `lhs == ±t^e rhs`, with a negative `e` moved to the other side.
fn compare_with_t(m: usize, lhs: &QuotPoly, e: i64, rhs: &QuotPoly) -> IdentityReport {
    if e >= 0 {
        up_to_sign(lhs, &(&QuotPoly::t_pow(m, e as u32) * rhs))
    } else {
        up_to_sign(&(&QuotPoly::t_pow(m, (-e) as u32) * lhs), rhs)
    }
}

/// Checks `t^(m-i) G_{i+1} = ± sigma^y_m G_i`.
pub fn check_chain(m: usize, i: usize) -> Result<IdentityReport> {
    if i < 1 || i >= m {
        return Err(TautError::Domain(format!("need 1 <= i <= m-1, got i={i}, m={m}")));
    }
    let lhs = &QuotPoly::t_pow(m, (m - i) as u32) * &vdm_det(m, i + 1)?;
    let rhs = &QuotPoly::elementary(m, m, true) * &vdm_det(m, i)?;
    Ok(up_to_sign(&lhs, &rhs))
}

/// Which syzygy family to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Syzygy {
    /// `sigma^y_(m-j) G_i = t^(m-j-i) sigma^x_j G_(i+1)`, `1 <= i <= m-1`.
    Down,
    /// `sigma^x_(m-j) G_i = t^(m-j-i) sigma^y_j G_(i-1)`, `2 <= i <= m`, exponent as printed.
    UpPrinted,
    /// The x/y mirror of [`Syzygy::Down`]: exponent `i-j-1` in place of `m-j-i`.
    UpMirror,
}

impl Syzygy {
    pub fn i_range(self, m: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Syzygy::Down => 1..=m - 1,
            Syzygy::UpPrinted | Syzygy::UpMirror => 2..=m,
        }
    }
}

pub fn check_syzygy(kind: Syzygy, m: usize, i: usize, j: usize) -> Result<IdentityReport> {
    if !kind.i_range(m).contains(&i) || j >= m {
        return Err(TautError::Domain(format!("index out of range: i={i}, j={j}, m={m}")));
    }
    let (mi, ii, jj) = (m as i64, i as i64, j as i64);
    let (lhs, e, rhs) = match kind {
        Syzygy::Down => (
            &QuotPoly::elementary(m, m - j, true) * &vdm_det(m, i)?,
            mi - jj - ii,
            &QuotPoly::elementary(m, j, false) * &vdm_det(m, i + 1)?,
        ),
        Syzygy::UpPrinted | Syzygy::UpMirror => (
            &QuotPoly::elementary(m, m - j, false) * &vdm_det(m, i)?,
            if kind == Syzygy::UpPrinted { mi - jj - ii } else { ii - jj - 1 },
            &QuotPoly::elementary(m, j, true) * &vdm_det(m, i - 1)?,
        ),
    };
    Ok(compare_with_t(m, &lhs, e, &rhs))
}

/// The special-fibre component `Theta_I`, on which `x_i` (i not in I) and `y_i` (i in I) vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub m: usize,
    pub subset: Vec<usize>,
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=97) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.gen_range(1..=13);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Minimal t-exponent of `p` along a random arc through `comp`.
fn arc_order(p: &QuotPoly, comp: &ComponentType, seed: u64) -> Option<u32> {
    let m = comp.m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // per variable: (rational coefficient, power of t)
    let mut vals: Vec<(Rational, i64)> = vec![(Rational::one(), 0); 2 * m + 1];
    vals[2 * m] = (Rational::one(), 1);
    for i in 0..m {
        let c = random_nonzero(&mut rng);
        if comp.subset.contains(&(i + 1)) {
            vals[m + i] = (Rational::one() / &c, 1);
            vals[i] = (c, 0);
        } else {
            vals[i] = (Rational::one() / &c, 1);
            vals[m + i] = (c, 0);
        }
    }
    let mut uni: BTreeMap<i64, Rational> = BTreeMap::new();
    for (e, coef) in p.terms() {
        let mut c = coef.clone();
        let mut tp = 0i64;
        for (idx, &k) in e.iter().enumerate() {
            if k > 0 {
                c *= num_traits::pow(vals[idx].0.clone(), k as usize);
                tp += vals[idx].1 * k as i64;
            }
        }
        *uni.entry(tp).or_insert_with(Rational::zero) += c;
    }
    uni.into_iter().find(|(_, c)| !c.is_zero()).map(|(k, _)| k as u32)
}

/// Vanishing order of `G_j` along `comp`, agreed on by two independent arcs.
pub fn arc_valuation(m: usize, j: usize, comp: &ComponentType, seed: u64) -> Result<u32> {
    let g = vdm_det(m, j)?;
    let mut prev: Option<u32> = None;
    for attempt in 0..5u64 {
        let v = arc_order(&g, comp, seed.wrapping_mul(1_000_003).wrapping_add(attempt))
            .ok_or_else(|| TautError::Model("G_j vanished identically on an arc".into()))?;
        if prev == Some(v) {
            return Ok(v);
        }
        // accidental cancellation can only raise the order
        prev = Some(prev.map_or(v, |p| p.min(v)));
    }
    Err(TautError::Genericity(format!("arc valuation of G_{j} unstable for m={m}")))
}

/// Valuations `ord[j-1][k]` of `G_j` on components with `|I| = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdTable {
    pub m: usize,
    pub ord: Vec<Vec<u32>>,
}

impl OrdTable {
    /// Sizes `k` with `ord(G_j) = 0`.
    pub fn zero_set(&self, j: usize) -> Vec<usize> {
        (0..=self.m).filter(|&k| self.ord[j - 1][k] == 0).collect()
    }

    /// The quadratic `(k-j)^2 + (k-j)` as printed, for side-by-side display.
    pub fn printed_quadratic(&self, j: usize, k: usize) -> i64 {
        let d = k as i64 - j as i64;
        d * d + d
    }
}

pub fn ord_table(m: usize, seed: u64) -> Result<OrdTable> {
    check_m(m)?;
    let mut ord = Vec::with_capacity(m);
    for j in 1..=m {
        let mut row = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let first = ComponentType { m, subset: (1..=k).collect() };
            let last = ComponentType { m, subset: (m - k + 1..=m).collect() };
            let a = arc_valuation(m, j, &first, seed)?;
            let b = arc_valuation(m, j, &last, seed + 17)?;
            if a != b {
                return Err(TautError::Model(format!(
                    "ord of G_{j} depends on I beyond |I|={k}: {a} vs {b}"
                )));
            }
            row.push(a);
        }
        ord.push(row);
    }
    Ok(OrdTable { m, ord })
}

/// The exponent `e` with `t^e G_i G_j = ± (sigma^y_m)^(i+j-2) G_1^2`, checked as an exact identity.
pub fn eta_valuation(m: usize, i: usize, j: usize) -> Result<u32> {
    if i < 1 || j < 1 || i > m || j > m {
        return Err(TautError::Domain(format!("need 1 <= i, j <= m, got ({i}, {j})")));
    }
    let g1 = vdm_det(m, 1)?;
    let rhs = &QuotPoly::elementary(m, m, true).pow((i + j - 2) as u32) * &(&g1 * &g1);
    let lhs = &vdm_det(m, i)? * &vdm_det(m, j)?;
    let zero = || TautError::Model("zero discriminant".into());
    let e = rhs.t_valuation().ok_or_else(zero)? as i64 - lhs.t_valuation().ok_or_else(zero)? as i64;
    if e < 0 || !compare_with_t(m, &rhs, e, &lhs).holds {
        return Err(TautError::Model(format!("G_{i} G_{j} is not a t-power multiple of the discriminant")));
    }
    Ok(e as u32)
}

/// `(i-1)(m-i/2) + (j-1)(m-j/2)`, the exponent forced by iterating the chain identity.
pub fn eta_exponent_iterated(m: usize, i: usize, j: usize) -> i64 {
    let f = |k: i64| (k - 1) * (2 * m as i64 - k) / 2;
    f(i as i64) + f(j as i64)
}

/// `(i-1)(m-i) + (j-1)(m-j)`, the exponent as printed in the discriminant formula.
pub fn eta_exponent_printed(m: usize, i: usize, j: usize) -> i64 {
    let (m, i, j) = (m as i64, i as i64, j as i64);
    (i - 1) * (m - i) + (j - 1) * (m - j)
}

/// Whether `G_i` vanishes after setting `x_2 = x_1, y_2 = y_1`.
pub fn diagonal_vanish(m: usize, i: usize) -> Result<bool> {
    let g = vdm_det(m, i)?;
    let mut images: Vec<QuotPoly> = (0..2 * m + 1)
        .map(|idx| {
            let mut e = vec![0; 2 * m + 1];
            e[idx] = 1;
            QuotPoly::normalize(m, [(e, Rational::one())])
        })
        .collect();
    images[1] = QuotPoly::x(m, 1);
    images[m + 1] = QuotPoly::y(m, 1);
    Ok(g.substitute(&images).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::int;

    fn mono(m: usize, e: &[u32]) -> QuotPoly {
        QuotPoly::normalize(m, [(e.to_vec(), int(1))])
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(mono(1, &[1, 1, 0]), QuotPoly::t_pow(1, 1));
        assert_eq!(mono(1, &[2, 1, 0]), &QuotPoly::t_pow(1, 1) * &QuotPoly::x(1, 1));
        assert_eq!(mono(2, &[1, 1, 1, 1, 0]), QuotPoly::t_pow(2, 2));
    }

    #[test]
    fn small_determinants() {
        let g = vdm_det(2, 1).unwrap();
        assert_eq!(g, &QuotPoly::x(2, 1) - &QuotPoly::x(2, 2));
        assert_eq!(vdm_det(2, 2).unwrap(), &QuotPoly::y(2, 1) - &QuotPoly::y(2, 2));
        assert_eq!(g.to_string(), "x1 - x2");
        assert!(vdm_det(7, 1).is_err());
    }

    #[test]
    fn chain_m2_sign() {
        let r = check_chain(2, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.sign, -1);
        assert!(check_chain(3, 1).unwrap().holds);
        assert!(check_chain(3, 2).unwrap().holds);
    }

    #[test]
    fn syzygies_small() {
        assert!(check_syzygy(Syzygy::Down, 2, 1, 0).unwrap().holds);
        assert!(check_syzygy(Syzygy::Down, 3, 1, 0).unwrap().holds);
        assert!(check_syzygy(Syzygy::Down, 3, 2, 1).unwrap().holds);
        assert!(!check_syzygy(Syzygy::UpPrinted, 2, 2, 0).unwrap().holds);
        assert!(check_syzygy(Syzygy::UpMirror, 2, 2, 0).unwrap().holds);
    }

    #[test]
    fn arcs_m2() {
        let all = ComponentType { m: 2, subset: vec![1, 2] };
        let none = ComponentType { m: 2, subset: vec![] };
        assert_eq!(arc_valuation(2, 1, &all, 1).unwrap(), 0);
        assert_eq!(arc_valuation(2, 1, &none, 1).unwrap(), 1);
        assert_eq!(arc_valuation(2, 2, &all, 1).unwrap(), 1);
        let t = ord_table(2, 5).unwrap();
        assert_eq!(t.ord[0], vec![1, 0, 0]);
        assert_eq!(t.ord[1], vec![0, 0, 1]);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_valuation(2, 1, 2).unwrap(), 1);
        assert_eq!(eta_valuation(2, 1, 1).unwrap(), 0);
        assert_eq!(eta_valuation(3, 2, 2).unwrap(), 4);
        assert_eq!(eta_exponent_iterated(3, 2, 2), 4);
    }

    #[test]
    fn diagonal() {
        assert!(diagonal_vanish(2, 1).unwrap());
        assert!(diagonal_vanish(3, 2).unwrap());
        assert!(diagonal_vanish(4, 3).unwrap());
    }

    proptest::proptest! {
        #[test]
        fn reduction_order_is_irrelevant(
            e in proptest::collection::vec(0u32..4, 7),
            order in proptest::collection::vec(0usize..3, 0..12),
        ) {
            // reduce one pair at a time in a random order, then finish
            let m = 3;
            let mut v = e.clone();
            for i in order {
                if v[i] > 0 && v[m + i] > 0 {
                    v[i] -= 1;
                    v[m + i] -= 1;
                    v[2 * m] += 1;
                }
            }
            proptest::prop_assert_eq!(mono(m, &v), mono(m, &e));
        }
    }
}
