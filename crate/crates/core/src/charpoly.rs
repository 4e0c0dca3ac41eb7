//! Exact rationals and polynomials in formal character symbols.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `-3/2`, `7`, `0`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new(format!("invalid rational `{s}`"), 1, 1);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The built-in characters, in printing order.
pub const BUILTIN_SYMBOLS: [&str; 6] = ["sigma", "omega2", "omegaL", "L2", "dL", "g2"];

/// A formal character symbol such as `sigma` or `omega2`.
///
/// Built-in symbols sort in the fixed order of [`BUILTIN_SYMBOLS`]; every
/// other name sorts after them alphabetically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharSymbol(String);

impl CharSymbol {
    pub fn new(name: impl Into<String>) -> Self {
        CharSymbol(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn rank(&self) -> usize {
        BUILTIN_SYMBOLS
            .iter()
            .position(|s| *s == self.0)
            .unwrap_or(BUILTIN_SYMBOLS.len())
    }
}

impl Ord for CharSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CharSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CharSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A multiset of symbols, kept sorted. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CharMonomial(Vec<CharSymbol>);

impl CharMonomial {
    pub fn one() -> Self {
        CharMonomial(Vec::new())
    }

    pub fn from_symbols(mut syms: Vec<CharSymbol>) -> Self {
        syms.sort();
        CharMonomial(syms)
    }

    pub fn symbols(&self) -> &[CharSymbol] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        CharMonomial::from_symbols(v)
    }
}

impl Ord for CharMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CharMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients in character symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct CharacterPolynomial {
    terms: BTreeMap<CharMonomial, Rational>,
}

impl CharacterPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(CharMonomial::one(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn symbol(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(CharMonomial(vec![CharSymbol::new(name)]), Rational::one());
        p
    }

    /// `c * name`.
    pub fn scaled_symbol(c: i64, name: &str) -> Self {
        Self::symbol(name).scale(&int(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CharMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the constant value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&CharMonomial::one()).cloned(),
            _ => None,
        }
    }

    /// Coefficient of a monomial given by symbol names.
    pub fn coeff(&self, names: &[&str]) -> Rational {
        let mono = CharMonomial::from_symbols(names.iter().map(|n| CharSymbol::new(*n)).collect());
        self.terms.get(&mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: CharMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CharacterPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Substitutes the assigned symbols; unassigned ones stay symbolic.
    pub fn evaluate(&self, assignment: &HashMap<CharSymbol, Rational>) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for s in &mono.0 {
                match assignment.get(s) {
                    Some(v) => coeff *= v,
                    None => rest.push(s.clone()),
                }
            }
            out.add_term(CharMonomial(rest), coeff);
        }
        out
    }

    /// Substitutes whole polynomials for symbols.
    pub fn substitute(&self, map: &HashMap<CharSymbol, CharacterPolynomial>) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for s in &mono.0 {
                let f = map.get(s).cloned().unwrap_or_else(|| Self::symbol(s.name()));
                acc = &acc * &f;
            }
            out.add_assign_ref(&acc);
        }
        out
    }
}

impl Add for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn add(self, rhs: &CharacterPolynomial) -> CharacterPolynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn add(mut self, rhs: CharacterPolynomial) -> CharacterPolynomial {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Neg for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn neg(self) -> CharacterPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn neg(self) -> CharacterPolynomial {
        -&self
    }
}

impl Sub for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn sub(self, rhs: &CharacterPolynomial) -> CharacterPolynomial {
        self + &(-rhs)
    }
}

impl Sub for CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn sub(self, rhs: CharacterPolynomial) -> CharacterPolynomial {
        &self - &rhs
    }
}

impl Mul for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn mul(self, rhs: &CharacterPolynomial) -> CharacterPolynomial {
        let mut out = CharacterPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn mul(self, rhs: CharacterPolynomial) -> CharacterPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let syms: Vec<&str> = mono.0.iter().map(|s| s.name()).collect();
            if syms.is_empty() {
                f.write_str(&fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                f.write_str(&syms.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_answer() -> CharacterPolynomial {
        &CharacterPolynomial::scaled_symbol(-2, "sigma") + &CharacterPolynomial::scaled_symbol(14, "omega2")
    }

    #[test]
    fn cancellation() {
        let p = &CharacterPolynomial::scaled_symbol(-1, "sigma") + &CharacterPolynomial::symbol("omega2");
        let q = &p + &CharacterPolynomial::symbol("sigma");
        assert_eq!(q, CharacterPolynomial::symbol("omega2"));
    }

    #[test]
    fn annihilator() {
        let z = &sample_answer() * &CharacterPolynomial::zero();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn monomial_product() {
        let p = &CharacterPolynomial::symbol("sigma") * &CharacterPolynomial::symbol("omega2");
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&["omega2", "sigma"]), int(1));
        assert_eq!(p.to_string(), "sigma*omega2");
    }

    #[test]
    fn rendering_contract() {
        assert_eq!(sample_answer().to_string(), "-2*sigma + 14*omega2");
        let p = &CharacterPolynomial::scaled_symbol(2, "L2")
            - &(&CharacterPolynomial::symbol("dL") * &CharacterPolynomial::symbol("omegaL"));
        assert_eq!(p.to_string(), "2*L2 - omegaL*dL");
        assert_eq!(CharacterPolynomial::constant(rat(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn evaluate_partial() {
        let mut a = HashMap::new();
        a.insert(CharSymbol::new("sigma"), int(12));
        a.insert(CharSymbol::new("omega2"), int(0));
        assert_eq!(sample_answer().evaluate(&a), CharacterPolynomial::from_int(-24));

        let mut b = HashMap::new();
        b.insert(CharSymbol::new("sigma"), int(0));
        let p = &CharacterPolynomial::symbol("sigma") * &CharacterPolynomial::symbol("omega2");
        assert!(p.evaluate(&b).is_zero());

        let q = &CharacterPolynomial::symbol("omega2") - &CharacterPolynomial::symbol("sigma");
        assert_eq!(q.evaluate(&HashMap::new()), q);
    }

    #[test]
    fn rationals_parse_reduced() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
    }
}
