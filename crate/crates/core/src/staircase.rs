//! Monomial staircases in two variables, colengths and the numbers alpha, beta.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::charpoly::{int, Rational};
use crate::error::{Result, TautError};

/// Binomial coefficient `n choose k` (zero outside range).
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent pair `x^a y^b`, ordered degree-reverse-lexicographically with `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mon(pub u32, pub u32);

impl Ord for Mon {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0 + self.1)
            .cmp(&(other.0 + other.1))
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Mon {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mon {
    fn divides(&self, o: &Mon) -> bool {
        self.0 <= o.0 && self.1 <= o.1
    }

    fn lcm(&self, o: &Mon) -> Mon {
        Mon(self.0.max(o.0), self.1.max(o.1))
    }
}

/// Monomial ideal given by minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    generators: Vec<(u32, u32)>,
}

impl Staircase {
    /// Minimalizes the given exponent pairs.
    pub fn new(gens: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let all: Vec<(u32, u32)> = gens.into_iter().collect();
        let mut keep: Vec<(u32, u32)> = Vec::new();
        for &g in &all {
            let dominated = all.iter().any(|&h| h != g && h.0 <= g.0 && h.1 <= g.1);
            if !dominated && !keep.contains(&g) {
                keep.push(g);
            }
        }
        keep.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Staircase { generators: keep }
    }

    pub fn generators(&self) -> &[(u32, u32)] {
        &self.generators
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.generators.iter().any(|&(ga, gb)| ga <= a && gb <= b)
    }

    /// Number of standard monomials, or an error if infinite.
    pub fn colength(&self) -> Result<u64> {
        let xa = self.generators.iter().filter(|g| g.1 == 0).map(|g| g.0).min();
        let yb = self.generators.iter().filter(|g| g.0 == 0).map(|g| g.1).min();
        let (Some(xa), Some(yb)) = (xa, yb) else {
            return Err(TautError::InfiniteColength);
        };
        let mut n = 0;
        for a in 0..xa {
            for b in 0..yb {
                if !self.contains(a, b) {
                    n += 1;
                }
            }
        }
        Ok(n)
    }
}

/// The monomial ideal `J_m`.
pub fn j_m(m: u32) -> Result<Staircase> {
    if m < 2 {
        return Err(TautError::Domain(format!("j_m needs m >= 2, got {m}")));
    }
    let m = m as i64;
    Ok(Staircase::new(
        (1..=m).map(|i| (binom(m - i + 1, 2) as u32, binom(i, 2) as u32)),
    ))
}

/// Area of the basic staircase polygon, via the defining sum.
pub fn alpha(m: u32) -> Result<i64> {
    if m < 2 {
        return Err(TautError::Domain(format!("alpha needs m >= 2, got {m}")));
    }
    let m = m as i64;
    Ok((1..m).map(|i| i * binom(m + 1 - i, 2)).sum())
}

/// The closed form printed next to the sum; differs from it once m >= 4.
pub fn alpha_printed_closed_form(m: u32) -> i64 {
    let m = m as i64;
    3 * binom(m, 4) + 3 * binom(m, 3) + m - 1
}

/// `J_m` plus an optional binomial `y^j + eta * x^(m-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateIdeal {
    pub m: u32,
    pub monomial_part: Staircase,
    pub binomial_part: Option<(u32, Rational)>,
}

impl BivariateIdeal {
    pub fn monomial(st: Staircase) -> Self {
        BivariateIdeal { m: 0, monomial_part: st, binomial_part: None }
    }

    pub fn with_binomial(m: u32, j: u32, eta: Rational) -> Result<Self> {
        if j < 1 || j >= m {
            return Err(TautError::Domain(format!("need 1 <= j <= m-1, got j={j}, m={m}")));
        }
        if eta.is_zero() {
            return Err(TautError::Domain("eta must be nonzero".into()));
        }
        Ok(BivariateIdeal { m, monomial_part: j_m(m)?, binomial_part: Some((j, eta)) })
    }
}

type Poly = BTreeMap<Mon, Rational>;

fn lead(p: &Poly) -> Option<(Mon, Rational)> {
    p.iter().next_back().map(|(m, c)| (*m, c.clone()))
}

fn sub_scaled_shift(p: &mut Poly, q: &Poly, c: &Rational, shift: Mon) {
    for (m, v) in q {
        let key = Mon(m.0 + shift.0, m.1 + shift.1);
        let e = p.entry(key).or_insert_with(Rational::zero);
        *e -= v * c;
        if e.is_zero() {
            p.remove(&key);
        }
    }
}

/// Fully reduces `p` by `basis`.
fn reduce(mut p: Poly, basis: &[Poly]) -> Poly {
    let mut rem = Poly::new();
    while let Some((lm, lc)) = lead(&p) {
        let divisor = basis.iter().find(|g| lead(g).is_some_and(|(gm, _)| gm.divides(&lm)));
        match divisor {
            Some(g) => {
                let (gm, gc) = lead(g).expect("nonzero");
                let shift = Mon(lm.0 - gm.0, lm.1 - gm.1);
                sub_scaled_shift(&mut p, g, &(lc / gc), shift);
            }
            None => {
                p.remove(&lm);
                rem.insert(lm, lc);
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = lead(f).expect("nonzero");
    let (gm, gc) = lead(g).expect("nonzero");
    let l = fm.lcm(&gm);
    let mut out = Poly::new();
    sub_scaled_shift(&mut out, f, &(-Rational::one() / fc), Mon(l.0 - fm.0, l.1 - fm.1));
    sub_scaled_shift(&mut out, g, &(Rational::one() / gc), Mon(l.0 - gm.0, l.1 - gm.1));
    out
}

/// Buchberger's algorithm; pairs are processed by increasing lcm degree.
pub fn groebner(gens: Vec<Poly>) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens.into_iter().filter(|p| !p.is_empty()).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    loop {
        pairs.sort_by_key(|&(i, j)| {
            let l = lead(&basis[i]).unwrap().0.lcm(&lead(&basis[j]).unwrap().0);
            std::cmp::Reverse((l.0 + l.1, l))
        });
        let Some((i, j)) = pairs.pop() else { break };
        let (fm, _) = lead(&basis[i]).unwrap();
        let (gm, _) = lead(&basis[j]).unwrap();
        // coprime leading monomials reduce to zero
        if fm.0.min(gm.0) == 0 && fm.1.min(gm.1) == 0 {
            continue;
        }
        let r = reduce(s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_empty() {
            let k = basis.len();
            basis.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    basis
}

/// Vector-space dimension of `k[x,y]/I`.
pub fn colength(ideal: &BivariateIdeal) -> Result<u64> {
    let mut gens: Vec<Poly> = ideal
        .monomial_part
        .generators()
        .iter()
        .map(|&(a, b)| Poly::from([(Mon(a, b), Rational::one())]))
        .collect();
    if let Some((j, eta)) = &ideal.binomial_part {
        let mut p = Poly::new();
        p.insert(Mon(0, *j), Rational::one());
        p.insert(Mon(ideal.m - j, 0), eta.clone());
        gens.push(p);
    }
    let basis = groebner(gens);
    Staircase::new(basis.iter().map(|g| {
        let m = lead(g).unwrap().0;
        (m.0, m.1)
    }))
    .colength()
}

/// The default generic parameters used for the two-value genericity check.
pub const DEFAULT_ETAS: (i64, i64) = (1, 2);

/// `beta(m)` computed at the two given values of eta, which must agree.
pub fn beta_with(m: u32, eta_a: &Rational, eta_b: &Rational) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(TautError::Domain(format!("beta needs m >= 2, got {m}")));
    }
    (1..m)
        .map(|j| {
            let a = colength(&BivariateIdeal::with_binomial(m, j, eta_a.clone())?)?;
            let b = colength(&BivariateIdeal::with_binomial(m, j, eta_b.clone())?)?;
            if a != b {
                return Err(TautError::Genericity(format!(
                    "beta({m})_{j} is {a} at eta={eta_a} but {b} at eta={eta_b}"
                )));
            }
            Ok(a)
        })
        .collect()
}

/// The vector `(beta_{m,1}, ..., beta_{m,m-1})`.
pub fn beta(m: u32) -> Result<Vec<u64>> {
    beta_with(m, &int(DEFAULT_ETAS.0), &int(DEFAULT_ETAS.1))
}

/// Memoized [`beta`].
pub fn beta_cached(m: u32) -> Result<Vec<u64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("beta cache poisoned").get(&m) {
        return Ok(v.clone());
    }
    let v = beta(m)?;
    cache.lock().expect("beta cache poisoned").insert(m, v.clone());
    Ok(v)
}

/// `beta(m)` at a single eta, no cross-check.
pub fn beta_at(m: u32, eta: &Rational) -> Result<Vec<u64>> {
    (1..m)
        .map(|j| colength(&BivariateIdeal::with_binomial(m, j, eta.clone())?))
        .collect()
}

pub fn beta_total(m: u32) -> Result<u64> {
    Ok(beta(m)?.iter().sum())
}

/// Result of the literal polygon construction for `(m, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonReport {
    pub m: u32,
    pub j: u32,
    pub area: u64,
    pub beta: u64,
    pub agrees: bool,
}

/// Counts unit squares outside `(R_m ∪ (R_m + P_j) ∪ [0,∞)×[j,∞)) ∩ Q`, `P_j = (-j, m+1-j)`.
pub fn printed_polygon_region(m: u32, j: u32) -> Result<PolygonReport> {
    if j < 1 || j >= m {
        return Err(TautError::Domain(format!("need 1 <= j <= m-1, got j={j}, m={m}")));
    }
    let st = j_m(m)?;
    let (px, py) = (-(j as i64), (m + 1 - j) as i64);
    let in_translate = |a: i64, b: i64| {
        let (sa, sb) = (a - px, b - py);
        sa >= 0 && sb >= 0 && st.contains(sa as u32, sb as u32)
    };
    let width = st.generators().iter().map(|g| g.0).max().unwrap_or(0) as i64 + 1;
    let mut area = 0;
    for b in 0..j as i64 {
        for a in 0..width {
            if !(st.contains(a as u32, b as u32) || in_translate(a, b)) {
                area += 1;
            }
        }
    }
    let beta = beta(m)?[(j - 1) as usize];
    Ok(PolygonReport { m, j, area, beta, agrees: area == beta })
}

/// Counts the cobasis left by the elimination recipe: drop `y^b` for `b >= i`,
/// and multiples of `x^(C(m+1-k,2)+m+1-i) y^(C(k,2)-i)` whenever `C(k,2) >= i`.
pub fn cobasis_recipe_count(m: u32, i: u32) -> Result<u64> {
    let st = j_m(m)?;
    let (m, i) = (m as i64, i as i64);
    let extra: Vec<(i64, i64)> = (1..=m)
        .filter(|&k| binom(k, 2) >= i)
        .map(|k| (binom(m + 1 - k, 2) + m + 1 - i, binom(k, 2) - i))
        .collect();
    let width = binom(m, 2);
    let mut n = 0;
    for b in 0..i {
        for a in 0..width {
            if st.contains(a as u32, b as u32) {
                continue;
            }
            if extra.iter().any(|&(ea, eb)| a >= ea && b >= eb) {
                continue;
            }
            n += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::rat;

    #[test]
    fn generators_of_j_m() {
        assert_eq!(j_m(2).unwrap().generators(), &[(1, 0), (0, 1)]);
        assert_eq!(j_m(3).unwrap().generators(), &[(3, 0), (1, 1), (0, 3)]);
        assert_eq!(j_m(4).unwrap().generators(), &[(6, 0), (3, 1), (1, 3), (0, 6)]);
        assert!(j_m(1).is_err());
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(2).unwrap(), 1);
        assert_eq!(alpha(3).unwrap(), 5);
        assert_eq!(alpha(4).unwrap(), 15);
        assert_eq!(alpha_printed_closed_form(4), 18);
        for m in 2..=8 {
            assert_eq!(alpha(m).unwrap(), binom(m as i64 + 2, 4));
            assert_eq!(j_m(m).unwrap().colength().unwrap() as i64, alpha(m).unwrap());
        }
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&BivariateIdeal::monomial(j_m(2).unwrap())).unwrap(), 1);
        assert_eq!(colength(&BivariateIdeal::with_binomial(3, 2, int(1)).unwrap()).unwrap(), 3);
        assert_eq!(colength(&BivariateIdeal::with_binomial(4, 2, int(1)).unwrap()).unwrap(), 8);
    }

    #[test]
    fn infinite_colength_detected() {
        let st = Staircase::new([(1, 1)]);
        assert_eq!(st.colength(), Err(TautError::InfiniteColength));
    }

    #[test]
    fn beta_small() {
        assert_eq!(beta(2).unwrap(), vec![1]);
        assert_eq!(beta(3).unwrap(), vec![3, 3]);
        assert_eq!(beta(4).unwrap(), vec![6, 8, 6]);
        assert_eq!(beta_total(3).unwrap(), 6);
        assert_eq!(beta_at(4, &rat(-3, 5)).unwrap(), vec![6, 8, 6]);
    }

    #[test]
    fn polygon_diagnostic() {
        assert_eq!(printed_polygon_region(3, 1).unwrap().area, 3);
        assert!(printed_polygon_region(3, 1).unwrap().agrees);
        assert_eq!(printed_polygon_region(2, 1).unwrap().area, 1);
        let r = printed_polygon_region(3, 2).unwrap();
        assert_eq!(r.beta, 3);
        assert!(!r.agrees);
    }

    #[test]
    fn recipe_undercounts_eliminations() {
        // x^2 survives the recipe for (3,2) but lies in the ideal
        assert!(cobasis_recipe_count(3, 2).unwrap() > beta(3).unwrap()[1]);
    }
}
