//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over named variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Error, Result};

/// A power product, stored sparsely as `(variable, exponent)` sorted by name.
///
/// The order is the canonical printing order: higher total degree first,
/// then lex with the alphabetically first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(powers: &[(&str, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in powers {
            m = m.mul(&Monomial(if e == 0 { vec![] } else { vec![(v.to_string(), e)] }));
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match other.degree().cmp(&self.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match b.1.cmp(&a.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(&[(name, 1)])
    }

    pub fn monomial(powers: &[(&str, u32)]) -> Self {
        Self::from_monomial(Monomial::new(powers), BigInt::one())
    }

    pub fn from_monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (t, k) in &self.terms {
            out.add_term(t.mul(m), k * c);
        }
        out
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flat_map(|m| m.0.iter().map(|(x, _)| x.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Exact value at a rational point; every variable must be assigned.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, e) in &m.0 {
                let x = point.get(v).ok_or_else(|| Error::Input(format!("no value for variable {v}")))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        Ok(total)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.0.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;
    /// Accepts sums of `±c*x^k*y…` terms; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return input("empty polynomial string");
        }
        let mut out = MultiPoly::zero();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && !(i > 0 && s[..i].ends_with('^')) {
                if i > 0 {
                    if cur.is_empty() {
                        return input(format!("malformed polynomial {s:?}"));
                    }
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return input(format!("malformed polynomial {s:?}"));
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            let mut coeff = BigInt::one();
            let mut mono = Monomial::one();
            for factor in t.split('*') {
                if factor.is_empty() {
                    return input(format!("empty factor in {t:?}"));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|e| Error::Input(e.to_string()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Input(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return input(format!("bad variable name {name:?}"));
                }
                mono = mono.mul(&Monomial::new(&[(name, exp)]));
            }
            out.add_term(mono, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn golden_sum() {
        let mut acc = MultiPoly::monomial(&[("a", 1), ("b", 1), ("c", 1)]);
        acc = &acc + &MultiPoly::monomial(&[("a", 2), ("c", 1)]);
        acc = &acc + &MultiPoly::monomial(&[("a", 1), ("c", 2)]);
        assert_eq!(acc.to_string(), "a^2*c + a*b*c + a*c^2");
    }

    #[test]
    fn algebra_examples() {
        let a = p("a + b");
        assert_eq!(&a * &MultiPoly::one(), a);
        assert_eq!(&p("a + b") * &p("a - b"), p("a^2 - b^2"));
        assert_eq!((&p("a + b") * &p("a - b")).to_string(), "a^2 - b^2");
        assert_eq!(p("2*x^3 - y + 7").to_string(), "2*x^3 - y + 7");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), q(1));
        pt.insert("b".to_string(), q(1));
        pt.insert("c".to_string(), q(1));
        assert_eq!(p("a + b + c").eval(&pt).unwrap(), q(3));
        pt.insert("b".to_string(), q(2));
        pt.insert("c".to_string(), q(3));
        assert_eq!(p("a*b*c + a^2*c + a*c^2").eval(&pt).unwrap(), q(18));
        assert_eq!(MultiPoly::zero().eval(&pt).unwrap(), q(0));
        assert!(p("z").eval(&pt).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<MultiPoly>().is_err());
        assert!("a +".parse::<MultiPoly>().is_err());
        assert!("a**b".parse::<MultiPoly>().is_err());
        assert!("1a".parse::<MultiPoly>().is_err());
        assert!("é+a".parse::<MultiPoly>().is_err());
        assert!("a^é-b".parse::<MultiPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (-5i64..6, 0u32..3, 0u32..3, 0u32..2);
        proptest::collection::vec(term, 0..5).prop_map(|ts| {
            let mut out = MultiPoly::zero();
            for (c, ea, eb, ec) in ts {
                out.add_term(Monomial::new(&[("a", ea), ("b", eb), ("c", ec)]), c.into());
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn string_round_trip(x in arb_poly()) {
            let s = x.to_string();
            prop_assert_eq!(s.parse::<MultiPoly>().unwrap(), x);
        }

        #[test]
        fn eval_is_a_homomorphism(x in arb_poly(), y in arb_poly(), va in -4i64..5, vb in 1i64..5, vc in -3i64..4) {
            let mut pt = BTreeMap::new();
            pt.insert("a".to_string(), BigRational::new(va.into(), 3.into()));
            pt.insert("b".to_string(), q(vb));
            pt.insert("c".to_string(), BigRational::new(vc.into(), 2.into()));
            let (ex, ey) = (x.eval(&pt).unwrap(), y.eval(&pt).unwrap());
            prop_assert_eq!((&x + &y).eval(&pt).unwrap(), &ex + &ey);
            prop_assert_eq!((&x * &y).eval(&pt).unwrap(), ex * ey);
        }
    }
}
