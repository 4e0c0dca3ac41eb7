//! Degree-truncated cohomology of the surface `X` fibred over a curve.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::charpoly::{parse_rational, CharSymbol, CharacterPolynomial, Rational};
use crate::error::{Result, TautError};

/// A divisor symbol on `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivSym {
    Omega,
    L,
    /// The fibre class.
    F,
    User(String),
}

impl DivSym {
    pub fn parse(name: &str) -> DivSym {
        match name {
            "omega" => DivSym::Omega,
            "L" => DivSym::L,
            "f" => DivSym::F,
            other => DivSym::User(other.to_string()),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            DivSym::Omega => "omega",
            DivSym::L => "L",
            DivSym::F => "f",
            DivSym::User(s) => s,
        }
    }
}

impl fmt::Display for DivSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A class on `X` with components in degrees 0, 1 and 2.
///
/// The degree-2 part is a character polynomial multiple of the point class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SurfaceClass {
    pub deg0: Rational,
    pub div: BTreeMap<DivSym, Rational>,
    pub deg2: CharacterPolynomial,
}

impl SurfaceClass {
    pub fn zero() -> Self {
        SurfaceClass { deg0: Rational::zero(), div: BTreeMap::new(), deg2: CharacterPolynomial::zero() }
    }

    pub fn one() -> Self {
        SurfaceClass { deg0: Rational::one(), ..Self::zero() }
    }

    pub fn divisor(d: DivSym) -> Self {
        let mut c = Self::zero();
        c.div.insert(d, Rational::one());
        c
    }

    pub fn point(coeff: CharacterPolynomial) -> Self {
        SurfaceClass { deg2: coeff, ..Self::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.div.is_empty() && self.deg2.is_zero()
    }

    /// The degree if the class is homogeneous and nonzero.
    pub fn pure_degree(&self) -> Option<u32> {
        let parts = [!self.deg0.is_zero(), !self.div.is_empty(), !self.deg2.is_zero()];
        match parts {
            [true, false, false] => Some(0),
            [false, true, false] => Some(1),
            [false, false, true] => Some(2),
            _ => None,
        }
    }

    pub fn add(&self, other: &SurfaceClass) -> SurfaceClass {
        let mut out = self.clone();
        out.deg0 += &other.deg0;
        for (d, c) in &other.div {
            let e = out.div.entry(d.clone()).or_insert_with(Rational::zero);
            *e += c;
        }
        out.div.retain(|_, c| !c.is_zero());
        out.deg2.add_assign_ref(&other.deg2);
        out
    }

    pub fn scale(&self, c: &Rational) -> SurfaceClass {
        let mut out = SurfaceClass {
            deg0: &self.deg0 * c,
            div: self.div.iter().map(|(d, v)| (d.clone(), v * c)).collect(),
            deg2: self.deg2.scale(c),
        };
        out.div.retain(|_, v| !v.is_zero());
        out
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.deg0.is_zero() {
            parts.push(crate::charpoly::fmt_rational(&self.deg0));
        }
        for (d, c) in &self.div {
            if c.is_one() {
                parts.push(d.to_string());
            } else {
                parts.push(format!("{}*{}", crate::charpoly::fmt_rational(c), d));
            }
        }
        if !self.deg2.is_zero() {
            parts.push(format!("({})*pt", self.deg2));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Kind of singular fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibreKind {
    /// Two smooth components meeting in one node.
    Reducible,
    /// An irreducible curve with one node.
    Irreducible,
}

/// Which singular fibres are present, each with its node-count character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeFlavor {
    Reducible,
    Irreducible,
    Mixed(Vec<(FibreKind, CharacterPolynomial)>),
}

/// Intersection data of the family `X -> B`.
#[derive(Clone, Debug)]
pub struct SurfaceGeometry {
    pairing: BTreeMap<(DivSym, DivSym), CharacterPolynomial>,
    fibre_degree: BTreeMap<DivSym, CharacterPolynomial>,
    pub node_count: CharacterPolynomial,
    pub node_flavor: NodeFlavor,
}

impl Default for SurfaceGeometry {
    fn default() -> Self {
        SurfaceGeometry::standard()
    }
}

fn key(a: &DivSym, b: &DivSym) -> (DivSym, DivSym) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

impl SurfaceGeometry {
    /// The symbolic geometry with characters sigma, omega2, omegaL, L2, dL, g2.
    pub fn standard() -> Self {
        use DivSym::*;
        let s = CharacterPolynomial::symbol;
        let mut pairing = BTreeMap::new();
        pairing.insert(key(&F, &F), CharacterPolynomial::zero());
        pairing.insert(key(&Omega, &F), s("g2"));
        pairing.insert(key(&L, &F), s("dL"));
        pairing.insert(key(&Omega, &Omega), s("omega2"));
        pairing.insert(key(&Omega, &L), s("omegaL"));
        pairing.insert(key(&L, &L), s("L2"));
        let mut fibre_degree = BTreeMap::new();
        fibre_degree.insert(F, CharacterPolynomial::zero());
        fibre_degree.insert(Omega, s("g2"));
        fibre_degree.insert(L, s("dL"));
        SurfaceGeometry {
            pairing,
            fibre_degree,
            node_count: s("sigma"),
            node_flavor: NodeFlavor::Reducible,
        }
    }

    pub fn with_flavor(mut self, flavor: NodeFlavor) -> Self {
        self.node_flavor = flavor;
        self
    }

    /// Registers a user divisor with its fibre degree; missing pairings stay symbolic.
    pub fn with_divisor(mut self, name: &str, fibre_degree: CharacterPolynomial) -> Self {
        let d = DivSym::User(name.to_string());
        self.pairing.insert(key(&d, &DivSym::F), fibre_degree.clone());
        self.fibre_degree.insert(d, fibre_degree);
        self
    }

    pub fn set_pairing(&mut self, a: &DivSym, b: &DivSym, value: CharacterPolynomial) {
        self.pairing.insert(key(a, b), value);
    }

    /// Intersection number of two divisors.
    pub fn pair(&self, a: &DivSym, b: &DivSym) -> CharacterPolynomial {
        let k = key(a, b);
        self.pairing
            .get(&k)
            .cloned()
            .unwrap_or_else(|| CharacterPolynomial::symbol(&format!("{}.{}", k.0, k.1)))
    }

    /// Fibre degree of a divisor symbol.
    pub fn divisor_fibre_degree(&self, d: &DivSym) -> CharacterPolynomial {
        self.fibre_degree
            .get(d)
            .cloned()
            .unwrap_or_else(|| CharacterPolynomial::symbol(&format!("d{d}")))
    }

    /// The node kinds present with their counts.
    pub fn fibre_kinds(&self) -> Vec<(FibreKind, CharacterPolynomial)> {
        match &self.node_flavor {
            NodeFlavor::Reducible => vec![(FibreKind::Reducible, self.node_count.clone())],
            NodeFlavor::Irreducible => vec![(FibreKind::Irreducible, self.node_count.clone())],
            NodeFlavor::Mixed(v) => v.clone(),
        }
    }

    pub fn node_count_of(&self, kind: FibreKind) -> CharacterPolynomial {
        self.fibre_kinds()
            .into_iter()
            .filter(|(k, _)| *k == kind)
            .fold(CharacterPolynomial::zero(), |acc, (_, c)| &acc + &c)
    }

    /// Graded product, truncated above degree 2.
    pub fn class_mul(&self, a: &SurfaceClass, b: &SurfaceClass) -> SurfaceClass {
        let mut out = SurfaceClass::zero();
        out.deg0 = &a.deg0 * &b.deg0;
        for (d, c) in &a.div {
            *out.div.entry(d.clone()).or_insert_with(Rational::zero) += c * &b.deg0;
        }
        for (d, c) in &b.div {
            *out.div.entry(d.clone()).or_insert_with(Rational::zero) += c * &a.deg0;
        }
        out.div.retain(|_, c| !c.is_zero());
        let mut top = &a.deg2.scale(&b.deg0) + &b.deg2.scale(&a.deg0);
        for (da, ca) in &a.div {
            for (db, cb) in &b.div {
                top.add_assign_ref(&self.pair(da, db).scale(&(ca * cb)));
            }
        }
        out.deg2 = top;
        out
    }

    /// Fibre degree of a pure degree-1 class.
    pub fn fibre_degree(&self, c: &SurfaceClass) -> Result<CharacterPolynomial> {
        if c.pure_degree() != Some(1) {
            return Err(TautError::Grading(format!("fibre degree needs a degree-1 class, got {c}")));
        }
        Ok(c.div.iter().fold(CharacterPolynomial::zero(), |acc, (d, k)| {
            &acc + &self.divisor_fibre_degree(d).scale(k)
        }))
    }
}

/// The point coefficient of a class.
pub fn integrate_on_x(c: &SurfaceClass) -> CharacterPolynomial {
    c.deg2.clone()
}

/// Character assignments read from a `key = value` file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterConfig {
    pub values: HashMap<CharSymbol, Rational>,
}

const CONFIG_KEYS: [&str; 6] = ["sigma", "omega2", "omegaL", "L2", "dL", "g2"];

impl CharacterConfig {
    /// Parses lines `key = value`; `#` starts a comment; `sym` keeps a key symbolic.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| TautError::Config(format!("line {}: expected `key = value`", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !CONFIG_KEYS.contains(&k) {
                return Err(TautError::Config(format!("line {}: unknown key `{k}`", n + 1)));
            }
            if v == "sym" {
                continue;
            }
            let r = parse_rational(v)
                .map_err(|_| TautError::Config(format!("line {}: bad value `{v}`", n + 1)))?;
            values.insert(CharSymbol::new(k), r);
        }
        Ok(CharacterConfig { values })
    }

    pub fn apply(&self, p: &CharacterPolynomial) -> CharacterPolynomial {
        p.evaluate(&self.values)
    }

    /// True if every standard character has a numeric value.
    pub fn is_fully_numeric(&self) -> bool {
        CONFIG_KEYS.iter().all(|k| self.values.contains_key(&CharSymbol::new(*k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::int;

    fn geo() -> SurfaceGeometry {
        SurfaceGeometry::standard()
    }

    fn d(s: &str) -> SurfaceClass {
        SurfaceClass::divisor(DivSym::parse(s))
    }

    #[test]
    fn pairing_table() {
        let g = geo();
        assert_eq!(g.class_mul(&d("omega"), &d("omega")), SurfaceClass::point(CharacterPolynomial::symbol("omega2")));
        assert!(g.class_mul(&d("f"), &d("f")).is_zero());
        assert_eq!(g.class_mul(&d("omega"), &d("f")).deg2, CharacterPolynomial::symbol("g2"));
    }

    #[test]
    fn fibre_degrees() {
        let g = geo();
        assert_eq!(g.fibre_degree(&d("L")).unwrap(), CharacterPolynomial::symbol("dL"));
        assert!(g.fibre_degree(&d("f")).unwrap().is_zero());
        assert_eq!(g.fibre_degree(&d("omega")).unwrap(), CharacterPolynomial::symbol("g2"));
        assert!(g.fibre_degree(&SurfaceClass::one()).is_err());
    }

    #[test]
    fn integrate_reads_point() {
        let g = geo();
        assert_eq!(integrate_on_x(&SurfaceClass::point(CharacterPolynomial::symbol("L2"))), CharacterPolynomial::symbol("L2"));
        assert!(integrate_on_x(&d("omega")).is_zero());
        assert_eq!(integrate_on_x(&g.class_mul(&d("omega"), &d("L"))), CharacterPolynomial::symbol("omegaL"));
    }

    #[test]
    fn truncation_above_two() {
        let g = geo();
        let w2 = g.class_mul(&d("omega"), &d("omega"));
        assert!(g.class_mul(&w2, &d("L")).is_zero());
    }

    #[test]
    fn divisor_against_fibre_is_fibre_degree() {
        let g = geo().with_divisor("H", CharacterPolynomial::symbol("dH"));
        for s in ["omega", "L", "f", "H"] {
            let lhs = integrate_on_x(&g.class_mul(&d(s), &d("f")));
            assert_eq!(lhs, g.fibre_degree(&d(s)).unwrap(), "{s}");
        }
    }

    #[test]
    fn config_file() {
        let c = CharacterConfig::parse("sigma = 12\nomega2 = -3/2\n# note\nL2 = sym\n").unwrap();
        assert_eq!(c.values.get(&CharSymbol::new("sigma")), Some(&int(12)));
        assert!(!c.values.contains_key(&CharSymbol::new("L2")));
        assert!(CharacterConfig::parse("genus = 2").is_err());
        assert!(CharacterConfig::parse("sigma 2").is_err());
    }
}
