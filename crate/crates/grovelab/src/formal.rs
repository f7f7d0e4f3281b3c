//! Integer linear combinations over an ordered index set.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A finite formal sum `Σ c_k · k` with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    coeffs: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { coeffs: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        let mut s = Self::zero();
        s.add_term(k, BigInt::one());
        s
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &FormalSum<K>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.coeffs {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, c);
        out
    }

    pub fn get(&self, k: &K) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.coeffs.keys()
    }

    /// Applies `f` to every index, merging terms that collide.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> FormalSum<L> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.coeffs {
            out.add_term(f(k), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> std::ops::Add<&FormalSum<K>> for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &BigInt::one());
        out
    }
}

impl<K: Ord + Clone> std::ops::Sub<&FormalSum<K>> for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-BigInt::one());
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for FormalSum<K> {
    fn from_iter<T: IntoIterator<Item = (K, BigInt)>>(iter: T) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

/// Terms rendered as `c·(k)`, joined by ` + ` and sorted by the index string.
impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(String, &BigInt)> =
            self.coeffs.iter().map(|(k, c)| (k.to_string(), c)).collect();
        terms.sort();
        let body: Vec<String> = terms.iter().map(|(k, c)| format!("{c}·({k})")).collect();
        write!(f, "{}", body.join(" + "))
    }
}
