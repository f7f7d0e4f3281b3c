//! Groves, their boundary partitions, grove measurements `L_σ`, double
//! groves and grove splittings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;

use crate::catalan::NcPartition;
use crate::error::{input, Result};
use crate::network::CactusNetwork;
use crate::polyring::{Monomial, MultiPoly};

/// A spanning forest whose components all reach the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grove {
    /// Edge indices, increasing.
    pub edges: Vec<usize>,
    pub partition: NcPartition,
}

/// Edge multiplicities in `{0, 1, 2}`, indexed like the network's edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleGrove {
    pub mult: Vec<u8>,
}

impl DoubleGrove {
    /// `∏ w_e^{mult(e)}`.
    pub fn weight(&self, net: &CactusNetwork) -> Monomial {
        let powers: Vec<(&str, u32)> = self
            .mult
            .iter()
            .zip(net.edge_ids())
            .filter(|(m, _)| **m > 0)
            .map(|(m, id)| (id.as_str(), *m as u32))
            .collect();
        Monomial::new(&powers)
    }
}

fn check_size(net: &CactusNetwork) -> Result<()> {
    if net.num_edges() > 24 {
        return input(format!("{} edges is beyond exhaustive enumeration", net.num_edges()));
    }
    Ok(())
}

/// Boundary partition of the edge set `mask`, or `None` if it is not a grove.
pub fn grove_partition(net: &CactusNetwork, mask: u64) -> Option<NcPartition> {
    let emb = net.embedding();
    let nv = emb.num_vertices();
    let mut uf = UnionFind::<usize>::new(nv);
    for (e, ends) in net.edge_ends().iter().enumerate() {
        if mask >> e & 1 == 1 && !uf.union(ends[0], ends[1]) {
            return None;
        }
    }
    let nb = net.num_boundary_vertices();
    let mut root_label = vec![usize::MAX; nv];
    for (l, &v) in emb.label_vertex.iter().enumerate() {
        let r = uf.find(v);
        if root_label[r] == usize::MAX {
            root_label[r] = l;
        }
    }
    for v in nb..nv {
        if root_label[uf.find(v)] == usize::MAX {
            return None;
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (l, &v) in emb.label_vertex.iter().enumerate() {
        blocks.entry(root_label[uf.find(v)]).or_default().push(l);
    }
    Some(NcPartition::new(net.n(), blocks.into_values().collect()).expect("grove partitions are noncrossing"))
}

/// All groves, in binary counter order over edges sorted by id.
pub fn enumerate_groves(net: &CactusNetwork) -> Result<Vec<Grove>> {
    check_size(net)?;
    let ne = net.num_edges();
    Ok((0u64..1 << ne)
        .filter_map(|mask| {
            grove_partition(net, mask).map(|partition| Grove {
                edges: (0..ne).filter(|e| mask >> e & 1 == 1).collect(),
                partition,
            })
        })
        .collect())
}

fn mask_monomial(net: &CactusNetwork, mask: u64) -> Monomial {
    let powers: Vec<(&str, u32)> = net
        .edge_ids()
        .iter()
        .enumerate()
        .filter(|(e, _)| mask >> e & 1 == 1)
        .map(|(_, id)| (id.as_str(), 1))
        .collect();
    Monomial::new(&powers)
}

/// Every nonzero `L_σ(Γ)`.
pub fn all_measurements(net: &CactusNetwork) -> Result<BTreeMap<NcPartition, MultiPoly>> {
    check_size(net)?;
    let mut out: BTreeMap<NcPartition, MultiPoly> = BTreeMap::new();
    for mask in 0u64..1 << net.num_edges() {
        if let Some(p) = grove_partition(net, mask) {
            out.entry(p).or_default().add_term(mask_monomial(net, mask), BigInt::one());
        }
    }
    Ok(out)
}

/// `L_σ(Γ) = Σ_{σ(F) = σ} wt(F)`.
pub fn grove_measurement(net: &CactusNetwork, sigma: &NcPartition) -> Result<MultiPoly> {
    if sigma.n() != net.n() {
        return input(format!("partition on {} labels for a network with n = {}", sigma.n(), net.n()));
    }
    Ok(all_measurements(net)?.remove(sigma).unwrap_or_default())
}

/// Every nonzero `L_σ` evaluated at rational edge weights.
pub fn measurement_values(
    net: &CactusNetwork,
    weights: &BTreeMap<String, BigRational>,
) -> Result<BTreeMap<NcPartition, BigRational>> {
    check_size(net)?;
    let w: Vec<BigRational> = net
        .edge_ids()
        .iter()
        .map(|id| weights.get(id).cloned().ok_or_else(|| crate::Error::Input(format!("no weight for edge {id}"))))
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<NcPartition, BigRational> = BTreeMap::new();
    for mask in 0u64..1 << net.num_edges() {
        if let Some(p) = grove_partition(net, mask) {
            let mut t = BigRational::one();
            for (e, x) in w.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    t *= x;
                }
            }
            *out.entry(p).or_insert_with(BigRational::zero) += t;
        }
    }
    Ok(out)
}

/// All `3^{#edges}` multiplicity assignments, in base-3 counter order.
pub fn enumerate_double_groves(net: &CactusNetwork) -> Result<Vec<DoubleGrove>> {
    if net.num_edges() > 14 {
        return input(format!("{} edges is beyond exhaustive double-grove enumeration", net.num_edges()));
    }
    let ne = net.num_edges();
    let total = 3usize.pow(ne as u32);
    Ok((0..total)
        .map(|mut k| {
            let mult = (0..ne)
                .map(|_| {
                    let d = (k % 3) as u8;
                    k /= 3;
                    d
                })
                .collect();
            DoubleGrove { mult }
        })
        .collect())
}

/// Ordered splittings `E = F ⊔ F′` into groves with partitions `σ`, `σ′`.
pub fn split_count(net: &CactusNetwork, sigma: &NcPartition, sigma2: &NcPartition) -> Result<u64> {
    Ok(split_table(net)?.get(&(sigma.clone(), sigma2.clone())).copied().unwrap_or(0))
}

/// Splitting counts for every pair of partitions that occurs.
pub fn split_table(net: &CactusNetwork) -> Result<BTreeMap<(NcPartition, NcPartition), u64>> {
    check_size(net)?;
    let ne = net.num_edges();
    let full = if ne == 64 { u64::MAX } else { (1u64 << ne) - 1 };
    let mut out = BTreeMap::new();
    for mask in 0u64..1 << ne {
        if let (Some(p), Some(q)) = (grove_partition(net, mask), grove_partition(net, full & !mask)) {
            *out.entry((p, q)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::random::random_network;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> NcPartition {
        s.parse().unwrap()
    }

    #[test]
    fn y_groves() {
        let y = CactusNetwork::builtin("y3").unwrap();
        let groves = enumerate_groves(&y).unwrap();
        assert_eq!(groves.len(), 7);
        let got: Vec<(Vec<usize>, String)> = groves.iter().map(|g| (g.edges.clone(), g.partition.to_string())).collect();
        assert!(got.contains(&(vec![0, 1, 2], "123".into())));
        assert!(got.contains(&(vec![0, 1], "12|3".into())));
        assert!(got.contains(&(vec![0, 2], "13|2".into())));
        assert!(got.contains(&(vec![1, 2], "1|23".into())));
        assert!(got.contains(&(vec![0], "1|2|3".into())));
        assert_eq!(grove_measurement(&y, &p("123")).unwrap().to_string(), "a*b*c");
        assert_eq!(grove_measurement(&y, &p("1|2|3")).unwrap().to_string(), "a + b + c");
    }

    #[test]
    fn trivial_networks() {
        let empty = CactusNetwork::empty(&NcPartition::discrete(3));
        let groves = enumerate_groves(&empty).unwrap();
        assert_eq!(groves.len(), 1);
        assert_eq!(groves[0].partition, NcPartition::discrete(3));
        assert_eq!(enumerate_double_groves(&empty).unwrap().len(), 1);
        assert_eq!(split_count(&empty, &NcPartition::discrete(3), &NcPartition::discrete(3)).unwrap(), 1);

        let edge = CactusNetwork::from_json(
            r#"{"n":2,"zeta":[[1],[2]],"edges":[{"id":"e","ends":["b1","b2"]}],"rotation":{"b1":["e"],"b2":["e"]}}"#,
        )
        .unwrap();
        let groves = enumerate_groves(&edge).unwrap();
        assert_eq!(groves.len(), 2);
        assert_eq!(groves[0].partition, p("1|2"));
        assert_eq!(groves[1].partition, p("12"));
        assert_eq!(enumerate_double_groves(&edge).unwrap().len(), 3);
    }

    #[test]
    fn y_double_groves_and_splits() {
        let y = CactusNetwork::builtin("y3").unwrap();
        assert_eq!(enumerate_double_groves(&y).unwrap().len(), 27);
        let total: u64 = crate::catalan::noncrossing_partitions(3)
            .iter()
            .map(|s| split_count(&y, &p("123"), s).unwrap())
            .sum();
        assert_eq!(total, 0);
        assert_eq!(split_count(&y, &p("12|3"), &p("1|2|3")).unwrap(), 1);
    }

    #[test]
    fn partitions_coarsen_zeta_and_count_groves() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ones = |net: &CactusNetwork| -> BTreeMap<String, BigRational> {
            net.edge_ids().iter().map(|id| (id.clone(), BigRational::one())).collect()
        };
        for i in 0..30 {
            let net = random_network(&mut rng, 2 + i % 4, i % 6);
            let groves = enumerate_groves(&net).unwrap();
            for g in &groves {
                assert!(net.zeta().refines(&g.partition));
            }
            let sum: BigRational = measurement_values(&net, &ones(&net)).unwrap().values().sum();
            assert_eq!(sum, BigRational::from_integer(BigInt::from(groves.len())));
        }
    }

    #[test]
    fn split_count_is_top_coefficient_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..20 {
            let net = random_network(&mut rng, 3 + i % 2, 1 + i % 5);
            let l = all_measurements(&net).unwrap();
            let top = mask_monomial(&net, (1u64 << net.num_edges()) - 1);
            let table = split_table(&net).unwrap();
            for (s, ls) in &l {
                for (t, lt) in &l {
                    let c = (ls * lt).coefficient(&top);
                    let want = table.get(&(s.clone(), t.clone())).copied().unwrap_or(0);
                    assert_eq!(c, BigInt::from(want));
                }
            }
        }
    }
}
