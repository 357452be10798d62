use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::Rat;

/// Exponent pair `(deg_x, deg_y)` of a monomial `x^a * y^b`.
pub type Monomial = (u32, u32);

/// Polynomial in `x` and `y` with rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has an empty
/// term map and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid polynomial {input:?}: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub reason: String,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, deg_x: u32, deg_y: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_x, deg_y), c);
        }
        BivarPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    /// The linear form `p*x + q*y`.
    pub fn linear(p: &Rat, q: &Rat) -> Self {
        let mut out = Self::monomial(p.clone(), 1, 0);
        out.add_term((0, 1), q);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (mono, c) in terms {
            out.add_term(mono, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deg_x: u32, deg_y: u32) -> Rat {
        self.terms.get(&(deg_x, deg_y)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// Whether every term has total degree `k`. The zero polynomial is
    /// homogeneous of every degree.
    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.terms.keys().all(|(a, b)| a + b == k)
    }

    pub fn add_term(&mut self, mono: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^a * y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|((dx, dy), v)| ((dx + a, dy + b), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x, a*x)`, returned as a polynomial in `x` alone.
    pub fn substitute_y(&self, a: &Rat) -> Self {
        let mut out = Self::zero();
        for ((dx, dy), c) in &self.terms {
            out.add_term((dx + dy, 0), &(c * a.pow(*dy)));
        }
        out
    }

    /// Whether `y - a*x` divides this polynomial.
    pub fn divisible_by_linear(&self, a: &Rat) -> bool {
        self.substitute_y(a).is_zero()
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.terms
            .iter()
            .map(|((dx, dy), c)| c * x.pow(*dx) * y.pow(*dy))
            .sum()
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for ((ax, ay), ac) in &self.terms {
            for ((bx, by), bc) in &rhs.terms {
                out.add_term((ax + bx, ay + by), &(ac * bc));
            }
        }
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: BivarPoly) -> BivarPoly {
        &self + &rhs
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: BivarPoly) -> BivarPoly {
        &self - &rhs
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, var: char, exp: u32) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{exp}"),
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending total degree, then descending power of x.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|((ax, ay), _), ((bx, by), _)| (bx + by, bx).cmp(&(ax + ay, ax)));
        for (idx, ((dx, dy), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let has_vars = dx + dy > 0;
            if !has_vars {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_factor(f, 'x', *dx)?;
            if *dx > 0 && *dy > 0 {
                write!(f, "*")?;
            }
            write_factor(f, 'y', *dy)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

impl FromStr for BivarPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParsePolyError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }

        // Split into signed terms. A sign only starts a new term when it does
        // not follow an operator character.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let starts_term = matches!(ch, '+' | '-') && !matches!(prev, Some('*' | '/' | '^'));
            if starts_term {
                if current.is_empty() {
                    if prev.is_some() {
                        return Err(fail("repeated sign"));
                    }
                } else {
                    pieces.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(fail("trailing sign"));
        }
        pieces.push((negative, current));

        let mut out = BivarPoly::zero();
        for (neg, body) in pieces {
            let mut coeff = Rat::one();
            let (mut dx, mut dy) = (0u32, 0u32);
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(fail("empty factor"));
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| fail("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "x" => dx += exp,
                    "y" => dy += exp,
                    lit => {
                        if factor.contains('^') {
                            return Err(fail("exponent on coefficient"));
                        }
                        let c: Rat = lit.parse().map_err(|_| fail("bad coefficient"))?;
                        coeff = coeff * c;
                    }
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term((dx, dy), &coeff);
        }
        Ok(out)
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use proptest::prelude::*;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn substitute_root_vanishes() {
        assert!(p("y-2*x").substitute_y(&Rat::from(2)).is_zero());
    }

    #[test]
    fn substitute_sum_of_squares() {
        assert_eq!(p("x^2+y^2").substitute_y(&Rat::one()), p("2*x^2"));
        let s = p("x^2+y^2").substitute_y(&Rat::one());
        assert!(s.terms().all(|((_, dy), _)| *dy == 0));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
    }

    #[test]
    fn linear_divisibility_examples() {
        assert!(p("y+x").divisible_by_linear(&Rat::from(-1)));
        assert!(!p("x").divisible_by_linear(&Rat::from(-1)));
        assert!(BivarPoly::zero().divisible_by_linear(&rat(7, 3)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(BivarPoly::zero().to_string(), "0");
        assert_eq!(p("y+x").to_string(), "x+y");
        assert_eq!(p("-1/3*x*y + 2").to_string(), "-1/3*x*y+2");
        assert_eq!(p("x^2*y^3").to_string(), "x^2*y^3");
        assert_eq!(p("3*x - 3*x").to_string(), "0");
        assert_eq!(p("-x^2").to_string(), "-x^2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x+", "x**y", "z", "2^3", "x^a", "+-x"] {
            assert!(bad.parse::<BivarPoly>().is_err(), "{bad:?} should not parse");
        }
        assert_eq!(p("-x"), BivarPoly::x().scale(&Rat::from(-1)));
        assert_eq!(p("x*x"), p("x^2"));
    }

    fn arb_poly() -> impl Strategy<Value = BivarPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -6i64..7, 1i64..4), 0..6).prop_map(|ts| {
            BivarPoly::from_terms(ts.into_iter().map(|(m, n, d)| (m, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn product_with_linear_factor_is_divisible(f in arb_poly(), n in -5i64..6, d in 1i64..5) {
            let a = rat(n, d);
            let factor = &BivarPoly::y() - &BivarPoly::x().scale(&a);
            prop_assert!((&f * &factor).divisible_by_linear(&a));
        }

        #[test]
        fn display_parse_round_trip(f in arb_poly()) {
            let back: BivarPoly = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn substitution_is_a_ring_map(f in arb_poly(), g in arb_poly(), n in -4i64..5) {
            let a = Rat::from(n);
            prop_assert_eq!((&f * &g).substitute_y(&a), &f.substitute_y(&a) * &g.substitute_y(&a));
            prop_assert_eq!((&f + &g).substitute_y(&a), &f.substitute_y(&a) + &g.substitute_y(&a));
        }
    }
}
