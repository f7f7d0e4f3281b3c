//! Term order on grove monomials, the quadratic relations `r_{P,Q}`,
//! straightening into standard monomials and the dimension count.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bush::pivot_columns;
use crate::catalan::{self, DyckPath, NcPartition, PathOrder};
use crate::error::{input, internal, Result};
use crate::formal::FormalSum;
use crate::immanant;

/// `L_{P_1} ⋯ L_{P_d}` with factors sorted by `≼`.
///
/// The derived `Ord` is the monomial term order: lower degree first, then
/// lexicographic comparing the largest factors first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LMonomial {
    factors: Vec<DyckPath>,
}

impl LMonomial {
    pub fn new(mut factors: Vec<DyckPath>) -> Result<Self> {
        if let Some(first) = factors.first() {
            let n = first.semilength();
            if factors.iter().any(|p| p.semilength() != n) {
                return input("monomial factors of different semilength");
            }
        }
        factors.sort();
        Ok(LMonomial { factors })
    }

    pub fn from_partitions(parts: &[NcPartition]) -> Result<Self> {
        LMonomial::new(parts.iter().map(catalan::partition_to_path).collect())
    }

    pub fn factors(&self) -> &[DyckPath] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Factors form a chain in the height order.
    pub fn is_standard(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Smallest adjacent pair of factors that is not a chain step.
    fn first_violation(&self) -> Option<usize> {
        (0..self.factors.len().saturating_sub(1)).find(|&i| !self.factors[i].is_below(&self.factors[i + 1]))
    }

    fn times(&self, other: &LMonomial) -> LMonomial {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        f.sort();
        LMonomial { factors: f }
    }

    fn without(&self, i: usize) -> LMonomial {
        let mut f = self.factors.clone();
        f.drain(i..i + 2);
        LMonomial { factors: f }
    }

    /// Value at a table of grove measurements.
    pub fn evaluate(&self, l: &BTreeMap<NcPartition, BigRational>) -> BigRational {
        let zero = BigRational::zero();
        self.factors
            .iter()
            .map(|p| l.get(&catalan::path_to_partition(p)).unwrap_or(&zero).clone())
            .fold(BigRational::one(), |a, b| a * b)
    }
}

impl Ord for LMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        monomial_compare(self, other)
    }
}

impl PartialOrd for LMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Factor partitions joined by `;`, smallest factor first.
impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|p| catalan::path_to_partition(p).to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Lower degree first; equal degrees compare factors from the largest down.
pub fn monomial_compare(a: &LMonomial, b: &LMonomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.factors.iter().rev().cmp(b.factors.iter().rev()))
}

/// The `≼`-smallest monomial of a form with its coefficient.
pub fn leading_term(f: &FormalSum<LMonomial>) -> Option<(&LMonomial, &BigInt)> {
    f.iter().next()
}

/// `r_{P,Q}` in `L`-pair coordinates for height-incomparable `P, Q`, in
/// either argument order.
pub fn relation(p: &DyckPath, q: &DyckPath) -> Result<FormalSum<LMonomial>> {
    if catalan::compare(p, q)? != PathOrder::Incomparable {
        return input(format!("{p} and {q} are comparable"));
    }
    let (p, q) = if p > q { (p, q) } else { (q, p) };
    let n = p.semilength();
    let i = catalan::catalan_subset(p);
    let j = catalan::catalan_subset(q);
    let k = match (0..i.len()).find(|&x| i[x] > j[x]) {
        Some(x) => x + 1,
        None => return internal(format!("no index with I(P) > I(Q) for {p}, {q}")),
    };
    let form = immanant::plucker_relation(n, &i, &j, k)?;
    let mut out = FormalSum::zero();
    for ((s, t), c) in form.iter() {
        out.add_term(LMonomial::from_partitions(&[s.clone(), t.clone()])?, c.clone());
    }
    Ok(out)
}

/// Every `r_{P,Q}` at one `n`, cached for repeated straightening.
pub struct Straightener {
    n: usize,
    relations: HashMap<(DyckPath, DyckPath), FormalSum<LMonomial>>,
    /// Upper bound on rewrite steps per call.
    pub max_steps: usize,
}

impl Straightener {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return input("straightening supports 1 ≤ n ≤ 6");
        }
        Ok(Straightener { n, relations: HashMap::new(), max_steps: 1_000_000 })
    }

    fn relation(&mut self, p: &DyckPath, q: &DyckPath) -> Result<&FormalSum<LMonomial>> {
        let key = (p.clone(), q.clone());
        if !self.relations.contains_key(&key) {
            let r = relation(p, q)?;
            match leading_term(&r) {
                Some((m, c)) if m.factors() == [p.clone(), q.clone()] && c.is_one() => {}
                _ => return internal(format!("leading term of r({p},{q}) is not L_P L_Q")),
            }
            self.relations.insert(key.clone(), r);
        }
        Ok(&self.relations[&key])
    }

    /// Rewrites a form into standard monomials, always reducing the
    /// smallest non-standard monomial at its smallest incomparable pair.
    pub fn straighten(&mut self, f: &FormalSum<LMonomial>) -> Result<FormalSum<LMonomial>> {
        if f.keys().any(|m| m.factors().iter().any(|p| p.semilength() != self.n)) {
            return input(format!("monomial factors must have semilength {}", self.n));
        }
        let mut work: BTreeMap<LMonomial, BigInt> = f.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut done = FormalSum::zero();
        let mut steps = 0;
        while let Some((m, c)) = work.pop_first() {
            let Some(i) = m.first_violation() else {
                done.add_term(m, c);
                continue;
            };
            steps += 1;
            if steps > self.max_steps {
                return internal(format!("straightening exceeded {} steps", self.max_steps));
            }
            let rest = m.without(i);
            let r = self.relation(&m.factors[i], &m.factors[i + 1])?.clone();
            for (t, rc) in r.iter().skip(1) {
                let mono = rest.times(t);
                if mono <= m {
                    return internal(format!("rewrite of {m} produced the smaller monomial {mono}"));
                }
                let e = work.entry(mono).or_insert_with(BigInt::zero);
                *e -= &c * rc;
                if e.is_zero() {
                    let key = rest.times(t);
                    work.remove(&key);
                }
            }
        }
        Ok(done)
    }

    pub fn straighten_monomial(&mut self, m: &LMonomial) -> Result<FormalSum<LMonomial>> {
        self.straighten(&FormalSum::single(m.clone()))
    }
}

/// `∏_{1 ≤ i ≤ j ≤ n−1} (i + j + 2d)/(i + j)`.
pub fn dim_formula(n: usize, d: usize) -> Result<BigUint> {
    if n == 0 {
        return input("n must be at least 1");
    }
    let mut prod = BigRational::one();
    for i in 1..n {
        for j in i..n {
            prod *= BigRational::new(BigInt::from(i + j + 2 * d), BigInt::from(i + j));
        }
    }
    if !prod.is_integer() {
        return internal(format!("dimension product {prod} is not an integer"));
    }
    Ok(prod.to_integer().to_biguint().expect("the product is positive"))
}

/// Standard monomials of degree `d`, one per chain.
pub fn standard_monomials(n: usize, d: usize) -> Vec<LMonomial> {
    catalan::chains(n, d).into_iter().map(|c| LMonomial { factors: c.0 }).collect()
}

pub fn count_standard(n: usize, d: usize) -> usize {
    catalan::chains(n, d).len()
}

/// All degree-`d` monomials in `L_σ`, `σ` a noncrossing partition of `n`.
pub fn all_monomials(n: usize, d: usize) -> Vec<LMonomial> {
    let paths = catalan::dyck_paths(n);
    let mut out = Vec::new();
    fn rec(paths: &[DyckPath], start: usize, cur: &mut Vec<DyckPath>, d: usize, out: &mut Vec<LMonomial>) {
        if cur.len() == d {
            out.push(LMonomial::new(cur.clone()).expect("equal semilengths"));
            return;
        }
        for i in start..paths.len() {
            cur.push(paths[i].clone());
            rec(paths, i, cur, d, out);
            cur.pop();
        }
    }
    rec(&paths, 0, &mut Vec::new(), d, &mut out);
    out
}

/// Rank of the matrix of standard degree-`d` monomials evaluated at the
/// given measurement tables.
pub fn evaluation_rank(n: usize, d: usize, samples: &[BTreeMap<NcPartition, BigRational>]) -> usize {
    let mat: Vec<Vec<BigRational>> =
        standard_monomials(n, d).iter().map(|m| samples.iter().map(|l| m.evaluate(l)).collect()).collect();
    pivot_columns(&mat).len()
}

/// Value of a form at a table of grove measurements.
pub fn evaluate_form(f: &FormalSum<LMonomial>, l: &BTreeMap<NcPartition, BigRational>) -> BigRational {
    f.iter().map(|(m, c)| BigRational::from_integer(c.clone()) * m.evaluate(l)).sum()
}

/// Incomparable pairs `(P, Q)` with `P ≺ Q`, in `≼` order.
pub fn incomparable_pairs(n: usize) -> Vec<(DyckPath, DyckPath)> {
    let paths = catalan::dyck_paths(n);
    let mut out = Vec::new();
    for (x, p) in paths.iter().enumerate() {
        for q in &paths[x + 1..] {
            if !p.is_below(q) && !q.is_below(p) {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Pairs whose relation does not have leading term `L_P L_Q` with
/// coefficient 1.
pub fn leading_term_failures(n: usize) -> Result<Vec<(DyckPath, DyckPath)>> {
    let mut bad = Vec::new();
    for (p, q) in incomparable_pairs(n) {
        let r = relation(&p, &q)?;
        let ok = matches!(leading_term(&r), Some((m, c)) if m.factors() == [p.clone(), q.clone()] && c.is_one());
        if !ok {
            bad.push((p, q));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grove;
    use crate::network::random::{random_network, random_reduced, random_weights};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn samples(n: usize, count: usize, seed: u64) -> Vec<BTreeMap<NcPartition, BigRational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|i| {
                let net = random_network(&mut rng, n, 4 + i % 5);
                let w = random_weights(&mut rng, &net);
                grove::measurement_values(&net, &w).unwrap()
            })
            .collect()
    }

    #[test]
    fn term_order_examples() {
        let p = LMonomial::new(vec![path("UDUD")]).unwrap();
        let (a, b) = (path("UDUD"), path("UUDD"));
        let pp = LMonomial::new(vec![a.clone(), a.clone()]).unwrap();
        let pq = LMonomial::new(vec![b.clone(), a.clone()]).unwrap();
        assert_eq!(monomial_compare(&p, &pp), Ordering::Less);
        assert_eq!(monomial_compare(&pp, &pq), Ordering::Less);
        assert_eq!(monomial_compare(&pq, &pq.clone()), Ordering::Equal);
        assert_eq!(pq.factors(), [a, b]);
    }

    #[test]
    fn relation_example() {
        let p = catalan::path_of_subset(4, &[1, 2, 5]).unwrap();
        let q = catalan::path_of_subset(4, &[1, 3, 4]).unwrap();
        let r = relation(&p, &q).unwrap();
        assert_eq!(r, relation(&q, &p).unwrap());
        let mut want = immanant::delta_delta(4, &[1, 2, 5], &[1, 3, 4]).unwrap();
        want.add_assign_scaled(&immanant::delta_delta(4, &[1, 2, 3], &[1, 4, 5]).unwrap(), &BigInt::one());
        want.add_assign_scaled(&immanant::delta_delta(4, &[1, 2, 4], &[1, 3, 5]).unwrap(), &-BigInt::one());
        let want = want.map_keys(|(s, t)| LMonomial::from_partitions(&[s.clone(), t.clone()]).unwrap());
        assert_eq!(r, want);
        assert!(relation(&p, &p).is_err());
    }

    #[test]
    fn leading_terms() {
        for n in 1..=4 {
            assert!(leading_term_failures(n).unwrap().is_empty());
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_formula(3, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(dim_formula(3, 2).unwrap(), BigUint::from(14u32));
        assert_eq!(dim_formula(4, 2).unwrap(), BigUint::from(84u32));
        for n in 1..=5 {
            for d in 0..=3 {
                assert_eq!(dim_formula(n, d).unwrap(), BigUint::from(count_standard(n, d)), "{n} {d}");
            }
        }
        assert!(dim_formula(0, 1).is_err());
    }

    #[test]
    fn quadratics_straighten_and_agree() {
        for n in 2..=4 {
            let mut st = Straightener::new(n).unwrap();
            let tables = samples(n, 6, 31 + n as u64);
            for m in all_monomials(n, 2) {
                let s = st.straighten_monomial(&m).unwrap();
                assert!(s.keys().all(|x| x.is_standard()), "{m}");
                if m.is_standard() {
                    assert_eq!(s, FormalSum::single(m.clone()));
                }
                for l in &tables {
                    assert_eq!(evaluate_form(&s, l), m.evaluate(l), "{m}");
                }
            }
        }
    }

    #[test]
    fn cubics_straighten_at_three() {
        let mut st = Straightener::new(3).unwrap();
        let tables = samples(3, 4, 41);
        for m in all_monomials(3, 3) {
            let s = st.straighten_monomial(&m).unwrap();
            assert!(s.keys().all(|x| x.is_standard()), "{m}");
            for l in &tables {
                assert_eq!(evaluate_form(&s, l), m.evaluate(l), "{m}");
            }
        }
    }

    #[test]
    fn standard_quadratics_are_independent_at_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tables: Vec<_> = (0..24)
            .map(|_| {
                let net = random_reduced(&mut rng, 3);
                let w = random_weights(&mut rng, &net);
                grove::measurement_values(&net, &w).unwrap()
            })
            .collect();
        assert_eq!(evaluation_rank(3, 2, &tables), 14);
    }

    #[test]
    fn display_joins_partitions() {
        let m = LMonomial::from_partitions(&["12|3".parse().unwrap(), "1|2|3".parse().unwrap()]).unwrap();
        assert_eq!(m.degree(), 2);
        assert!(m.to_string().contains(';'));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn order_is_total_and_degree_first(a in proptest::collection::vec(0usize..14, 0..4), b in proptest::collection::vec(0usize..14, 0..4)) {
            let paths = catalan::dyck_paths(4);
            let ma = LMonomial::new(a.iter().map(|&i| paths[i].clone()).collect()).unwrap();
            let mb = LMonomial::new(b.iter().map(|&i| paths[i].clone()).collect()).unwrap();
            let o = monomial_compare(&ma, &mb);
            prop_assert_eq!(o, monomial_compare(&mb, &ma).reverse());
            prop_assert_eq!(o == Ordering::Equal, ma == mb);
            if ma.degree() < mb.degree() {
                prop_assert_eq!(o, Ordering::Less);
            }
        }
    }
}
