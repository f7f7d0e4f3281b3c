//! Exhaustive and seeded identity checks, one per `verify` target.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bush::{self, MultiGraph, ProductCheck};
use crate::catalan::{self, NcPartition};
use crate::crossings;
use crate::error::{input, Result};
use crate::grove;
use crate::immanant::{self, ImmanantTables};
use crate::network::random::{random_network, random_reduced, random_weights};
use crate::network::CactusNetwork;
use crate::straighten::{self, Straightener};

/// A linear form in the products `L_σ L_σ′`, keyed by `(σ, σ′)`.
type PairForm = BTreeMap<(NcPartition, NcPartition), num_bigint::BigInt>;

/// Outcome of one check: a summary line, and the first counterexample if
/// the identity failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub summary: String,
    pub counterexample: Option<String>,
}

impl Report {
    fn ok(summary: impl Into<String>) -> Self {
        Report { summary: summary.into(), counterexample: None }
    }

    fn fail(summary: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Report { summary: summary.into(), counterexample: Some(counterexample.into()) }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// `φ_RSK = φ_res` on every `M ∈ TC_k`, `k ≤ n`.
pub fn rsk(n: usize) -> Result<Report> {
    let mut count = 0;
    for k in 1..=n {
        for m in catalan::tc_matchings(k) {
            count += 1;
            let (a, b) = (crossings::phi_rsk(&m)?, crossings::phi_resolution(&m)?);
            if a != b {
                return Ok(Report::fail("φ_RSK ≠ φ_res", format!("{m}: rsk ({}, {}) vs resolution ({}, {})", a.0, a.1, b.0, b.1)));
            }
        }
    }
    Ok(Report::ok(format!("ok ({count} matchings, n ≤ {n})")))
}

/// `M(v) ≤ M(1)` with equality only at `v = 1`, for every `M ∈ TC_n`.
pub fn maxres(n: usize) -> Result<Report> {
    let tc = catalan::tc_matchings(n);
    for m in &tc {
        if !crossings::max_resolution_check(m)? {
            return Ok(Report::fail("maximal resolution check failed", m.to_string()));
        }
    }
    Ok(Report::ok(format!("ok ({} matchings in TC_{n}, all resolutions)", tc.len())))
}

/// Random move orders agree with the deterministic α on every double
/// grove of `Γ(ξ)`, `ξ ∈ TC_n`, and on `graphs` random multigraphs with at
/// most `max_edges` edges.
pub fn confluence(n: usize, trials: usize, graphs: usize, max_edges: usize, seed: u64) -> Result<Report> {
    let mut cases: Vec<(String, MultiGraph)> = Vec::new();
    for xi in catalan::tc_matchings(n) {
        let net = CactusNetwork::of_matching(&xi)?;
        for h in grove::enumerate_double_groves(&net)? {
            let label = format!("Γ({xi}) with multiplicities {:?}", h.mult);
            cases.push((label, MultiGraph::from_double_grove(&net, &h)?));
        }
    }
    let grove_cases = cases.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in 0..graphs {
        let size = rng.gen_range(2..=4);
        let edges = rng.gen_range(1..=max_edges);
        let h = bush::random_multigraph(&mut rng, size, edges);
        cases.push((format!("random multigraph #{g}: {} mult {:?}", h.network().to_json(), h.multiplicities()), h));
    }
    let first_bad = cases
        .par_iter()
        .enumerate()
        .map(|(i, (label, h))| {
            let ok = bush::alpha_confluence_check(h, trials, seed.wrapping_mul(1_000_003).wrapping_add(i as u64 * 7919))?;
            Ok((!ok).then(|| label.clone()))
        })
        .collect::<Result<Vec<Option<String>>>>()?
        .into_iter()
        .flatten()
        .next();
    let summary = format!("{trials} orders × ({grove_cases} double groves of Γ(TC_{n}) + {graphs} random multigraphs)");
    Ok(match first_bad {
        Some(label) => Report::fail(summary, label),
        None => Report::ok(format!("ok ({summary})")),
    })
}

/// `L_σ L_σ′ = Σ_ξ a_{ξ,(σ,σ′)} B_ξ` on each network, for every pair.
pub fn product(nets: &[(String, CactusNetwork)], label: &str) -> Result<Report> {
    let mut pairs = 0;
    for (name, net) in nets {
        let p = catalan::noncrossing_partitions(net.n()).len();
        pairs = pairs.max(p * p);
        let check = ProductCheck::new(net)?;
        if let Some((s, t)) = check.mismatches().into_iter().next() {
            return Ok(Report::fail("product identity failed", format!("{name}: σ = {s}, σ′ = {t}")));
        }
    }
    Ok(Report::ok(format!("ok ({pairs} pairs × {label})")))
}

/// The networks `Γ(ξ)`, `ξ ∈ TC_n`.
pub fn tc_networks(n: usize) -> Result<Vec<(String, CactusNetwork)>> {
    catalan::tc_matchings(n)
        .into_iter()
        .map(|xi| Ok((format!("Γ({xi})"), CactusNetwork::of_matching(&xi)?)))
        .collect()
}

/// Seeded random networks with at most `max_edges` edges.
pub fn random_networks(n: usize, count: usize, max_edges: usize, seed: u64) -> Vec<(String, CactusNetwork)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let edges = rng.gen_range(1..=max_edges);
            let net = random_network(&mut rng, n, edges);
            (format!("random network #{i} {}", net.to_json()), net)
        })
        .collect()
}

/// `a_coeff = a_coeff_oracle` for every `ξ ∈ TC_n` and every pair.
pub fn a_coefficients(n: usize) -> Result<Report> {
    let tc = catalan::tc_matchings(n);
    let bad = tc
        .par_iter()
        .map(|xi| {
            let a = bush::a_table(xi)?;
            let split = grove::split_table(&CactusNetwork::of_matching(xi)?)?;
            Ok(a.iter()
                .chain(split.iter())
                .find(|(k, _)| a.get(*k) != split.get(*k))
                .map(|((s, t), _)| {
                    let (x, y) = (a.get(&(s.clone(), t.clone())), split.get(&(s.clone(), t.clone())));
                    format!("ξ = {xi}, σ = {s}, σ′ = {t}: resolutions {} vs splittings {}", x.unwrap_or(&0), y.unwrap_or(&0))
                }))
        })
        .collect::<Result<Vec<Option<String>>>>()?
        .into_iter()
        .flatten()
        .next();
    let p = catalan::noncrossing_partitions(n).len();
    Ok(match bad {
        Some(c) => Report::fail("a-coefficients disagree", c),
        None => Report::ok(format!("ok ({} matchings × {} pairs)", tc.len(), p * p)),
    })
}

/// Triangularity of `B_μ(Γ(ξ))`, full rank of the `a`-matrix, and the
/// lifted `B_ξ` against direct evaluation on `samples` random networks.
pub fn lift(n: usize, samples: usize, seed: u64) -> Result<Report> {
    if let Some((xi, mu)) = bush::triangularity_failures(n)?.into_iter().next() {
        return Ok(Report::fail("triangularity failed", format!("B_{mu}(Γ({xi}))")));
    }
    let tc = catalan::tc_matchings(n).len();
    let (_, _, mat) = bush::a_matrix(n)?;
    let rank = bush::pivot_columns(&mat).len();
    if rank != tc {
        return Ok(Report::fail("a-matrix rank", format!("rank {rank}, |TC_{n}| = {tc}")));
    }
    let lifted = bush::lift_bush(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let edges = rng.gen_range(1..=5);
        let net = random_network(&mut rng, n, edges);
        let w = random_weights(&mut rng, &net);
        let l = grove::measurement_values(&net, &w)?;
        for (xi, b) in bush::bush_values(&net)? {
            if lifted.evaluate(&xi, &l) != b.eval(&w)? {
                return Ok(Report::fail("lifted B_ξ disagrees", format!("ξ = {xi} on sample {s}: {}", net.to_json())));
            }
        }
    }
    Ok(Report::ok(format!("ok (triangular on TC_{n}, rank {rank}, lift agrees on {samples} networks)")))
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (2 * n))
        .filter(|mask| mask.count_ones() as usize == n - 1)
        .map(|mask| (1..=2 * n).filter(|x| mask >> (x - 1) & 1 == 1).collect())
        .collect()
}

/// `Δ_I Δ_J = Σ F_{τ,T}` for every `(I, J)`, or for `trials` seeded random
/// pairs.
pub fn delta_product(n: usize, trials: Option<usize>, seed: u64) -> Result<Report> {
    if n < 2 {
        return input("delta-product needs n ≥ 2");
    }
    let tables = ImmanantTables::new(n)?;
    let all = subsets(n);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = match trials {
        None => all.iter().flat_map(|i| all.iter().map(move |j| (i.clone(), j.clone()))).collect(),
        Some(t) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..t)
                .map(|_| (all[rng.gen_range(0..all.len())].clone(), all[rng.gen_range(0..all.len())].clone()))
                .collect()
        }
    };
    let bad = pairs
        .par_iter()
        .map(|(i, j)| Ok((!tables.verify_delta_product(i, j)?).then(|| (i.clone(), j.clone()))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match bad {
        Some((i, j)) => Report::fail(
            "Δ_I Δ_J ≠ Σ F",
            format!(
                "I = {i:?}, J = {j:?}: lhs {} rhs {}",
                tables.delta_product(&i, &j)?,
                tables.compatible_sum(&i, &j)?
            ),
        ),
        None => Report::ok(format!("ok ({} pairs (I, J) at n = {n})", pairs.len())),
    })
}

fn sample_tables(n: usize, count: usize, seed: u64) -> Result<Vec<(String, BTreeMap<NcPartition, BigRational>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let net = if i % 2 == 0 {
                random_reduced(&mut rng, n)
            } else {
                let edges = rng.gen_range(2..=8);
                random_network(&mut rng, n, edges)
            };
            let w = random_weights(&mut rng, &net);
            let mut weighted = net.clone();
            weighted.set_weights(Some(w.clone()));
            Ok((weighted.to_json(), grove::measurement_values(&net, &w)?))
        })
        .collect()
}

/// Every Plücker relation `(I, J, k)` and every `r_{P,Q}` vanishes on
/// `count` seeded random weighted networks.
pub fn plucker(n: usize, count: usize, seed: u64) -> Result<Report> {
    if n < 2 {
        return input("plucker needs n ≥ 2");
    }
    let samples = sample_tables(n, count, seed)?;
    let all = subsets(n);
    let mut forms: Vec<(String, PairForm)> = Vec::new();
    for (x, i) in all.iter().enumerate() {
        for j in &all[x..] {
            for k in 1..n {
                let r = immanant::plucker_relation(n, i, j, k)?;
                forms.push((format!("Plücker I = {i:?}, J = {j:?}, k = {k}"), r.iter().map(|(a, c)| (a.clone(), c.clone())).collect()));
            }
        }
    }
    let plucker_count = forms.len();
    let pairs = straighten::incomparable_pairs(n);
    for (p, q) in &pairs {
        let r = straighten::relation(p, q)?;
        let form = r
            .iter()
            .map(|(m, c)| {
                let f = m.factors();
                ((catalan::path_to_partition(&f[0]), catalan::path_to_partition(&f[1])), c.clone())
            })
            .collect();
        forms.push((format!("r_(P,Q) P = {p}, Q = {q}"), form));
    }
    let zero = BigRational::zero();
    let bad = forms
        .par_iter()
        .find_map_first(|(label, form)| {
            samples.iter().find_map(|(json, l)| {
                let v: BigRational = form
                    .iter()
                    .map(|((s, t), c)| BigRational::from_integer(c.clone()) * l.get(s).unwrap_or(&zero) * l.get(t).unwrap_or(&zero))
                    .sum();
                (!v.is_zero()).then(|| format!("{label} is {v} on {json}"))
            })
        });
    Ok(match bad {
        Some(c) => Report::fail("relation does not vanish", c),
        None => Report::ok(format!(
            "ok ({plucker_count} Plücker relations and {} r_(P,Q) vanish on {count} networks, n = {n})",
            pairs.len()
        )),
    })
}

/// Leading terms of `r_{P,Q}` for `n ≤ n_max`; every quadratic monomial
/// straightens to standard support and agrees on random networks;
/// standard quadratics count to `dim_formula(n, 2)`; at `n = 3` they are
/// independent on `rank_samples` generic networks.
pub fn grobner(n_max: usize, rank_samples: usize, seed: u64) -> Result<Report> {
    for n in 1..=n_max {
        if let Some((p, q)) = straighten::leading_term_failures(n)?.into_iter().next() {
            return Ok(Report::fail("leading term", format!("r_(P,Q) for P = {p}, Q = {q}")));
        }
        let mut st = Straightener::new(n)?;
        let samples = sample_tables(n, 6, seed.wrapping_add(n as u64))?;
        for m in straighten::all_monomials(n, 2) {
            let s = st.straighten_monomial(&m)?;
            if let Some(x) = s.keys().find(|x| !x.is_standard()) {
                return Ok(Report::fail("straightening left a non-standard monomial", format!("{m} → {x}")));
            }
            for (json, l) in &samples {
                if straighten::evaluate_form(&s, l) != m.evaluate(l) {
                    return Ok(Report::fail("straightened form disagrees", format!("{m} on {json}")));
                }
            }
        }
        let (count, dim) = (straighten::count_standard(n, 2), straighten::dim_formula(n, 2)?);
        if num_bigint::BigUint::from(count) != dim {
            return Ok(Report::fail("standard count", format!("n = {n}: {count} chains vs formula {dim}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tables: Vec<_> = (0..rank_samples)
        .map(|_| {
            let net = random_reduced(&mut rng, 3);
            let w = random_weights(&mut rng, &net);
            grove::measurement_values(&net, &w)
        })
        .collect::<Result<_>>()?;
    let rank = straighten::evaluation_rank(3, 2, &tables);
    let dim = straighten::count_standard(3, 2);
    if rank != dim {
        return Ok(Report::fail("evaluation rank", format!("rank {rank} on {rank_samples} networks, expected {dim}")));
    }
    Ok(Report::ok(format!("ok (leading terms and straightening for n ≤ {n_max}; evaluation rank {rank} at n = 3)")))
}

/// `count_standard(n, d) = dim_formula(n, d)` for `n ≤ n_max`, `d ≤ d_max`.
pub fn dims(n_max: usize, d_max: usize) -> Result<Report> {
    for n in 1..=n_max {
        for d in 0..=d_max {
            let (count, dim) = (straighten::count_standard(n, d), straighten::dim_formula(n, d)?);
            if num_bigint::BigUint::from(count) != dim {
                return Ok(Report::fail("dimension mismatch", format!("n = {n}, d = {d}: {count} chains vs formula {dim}")));
            }
        }
    }
    Ok(Report::ok(format!("ok (chains = formula for n ≤ {n_max}, d ≤ {d_max})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        assert!(rsk(3).unwrap().passed());
        assert!(maxres(3).unwrap().passed());
        assert!(confluence(2, 5, 5, 4, 1).unwrap().passed());
        assert!(a_coefficients(3).unwrap().passed());
        assert!(dims(4, 2).unwrap().passed());
        assert!(plucker(3, 3, 2).unwrap().passed());
    }

    #[test]
    fn product_summary() {
        let r = product(&tc_networks(3).unwrap(), "all TC_3").unwrap();
        assert_eq!(r.summary, "ok (25 pairs × all TC_3)");
    }
}
