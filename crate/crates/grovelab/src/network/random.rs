//! Seeded random networks for property checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::arrangement::ChordArrangement;
use super::embedding::{Embedding, Item};
use super::CactusNetwork;
use crate::catalan::{self, Matching, NcPartition};
use crate::error::Result;

/// Uniform noncrossing partition of `0..n`.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> NcPartition {
    let all = catalan::noncrossing_partitions(n);
    all[rng.gen_range(0..all.len())].clone()
}

/// Uniform perfect matching on `0..2n`.
pub fn random_matching<R: Rng>(rng: &mut R, n: usize) -> Matching {
    let mut pts: Vec<usize> = (0..2 * n).collect();
    pts.shuffle(rng);
    let pairs: Vec<(usize, usize)> = pts.chunks(2).map(|c| (c[0], c[1])).collect();
    Matching::from_pairs(2 * n, &pairs).expect("shuffled points pair up")
}

fn edge_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("e{}", k + 1)
    }
}

/// Inserts an edge between two face corners; equal corners give a loop.
fn add_chord(emb: &mut Embedding, c1: (usize, usize), c2: (usize, usize)) {
    let e = emb.add_edge_raw(c1.0, c2.0);
    if c1 == c2 {
        emb.rot[c1.0].splice(c1.1 + 1..c1.1 + 1, [Item::Dart(2 * e), Item::Dart(2 * e + 1)]);
        return;
    }
    let mut ins = [(c1, 2 * e), (c2, 2 * e + 1)];
    ins.sort_by_key(|&((v, p), _)| (v, std::cmp::Reverse(p)));
    for ((v, p), d) in ins {
        emb.rot[v].insert(p + 1, Item::Dart(d));
    }
}

/// Random connected cactus network with exactly `edges` edges, grown by
/// drawing chords inside faces, hanging pendant vertices and subdividing
/// edges. Edges are named `a, b, c, …`; interior vertices `x1, x2, …`.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, edges: usize) -> CactusNetwork {
    let zeta = random_partition(rng, n);
    let mut emb = Embedding::boundary(n, zeta.blocks());
    while emb.num_edges() < edges {
        let faces = emb.faces();
        let face = &faces[rng.gen_range(0..faces.len())];
        let corner = |rng: &mut R| face.corners[rng.gen_range(0..face.corners.len())];
        let roll: f64 = rng.gen();
        if roll < 0.55 {
            let c1 = corner(rng);
            let c2 = if rng.gen_bool(0.05) { c1 } else { corner(rng) };
            add_chord(&mut emb, c1, c2);
        } else if roll < 0.8 || emb.num_edges() == 0 {
            let (v, p) = corner(rng);
            let x = emb.add_vertex();
            let e = emb.add_edge_raw(v, x);
            emb.rot[v].insert(p + 1, Item::Dart(2 * e));
            emb.rot[x].push(Item::Dart(2 * e + 1));
        } else {
            let e = rng.gen_range(0..emb.ends.len());
            let w = emb.ends[e][1];
            let x = emb.add_vertex();
            let e2 = emb.add_edge_raw(x, w);
            emb.ends[e][1] = x;
            let p = emb.position(w, Item::Dart(2 * e + 1));
            emb.rot[w][p] = Item::Dart(2 * e2 + 1);
            emb.rot[x] = vec![Item::Dart(2 * e + 1), Item::Dart(2 * e2)];
        }
    }
    let interior = (1..=emb.num_vertices() - zeta.num_blocks()).map(|i| format!("x{i}")).collect();
    let ids = (0..emb.ends.len()).map(edge_name).collect();
    CactusNetwork::from_embedding(emb, interior, ids, None).expect("random growth keeps the embedding planar")
}

/// Positive rational weights with small numerators and denominators.
pub fn random_weights<R: Rng>(rng: &mut R, net: &CactusNetwork) -> BTreeMap<String, BigRational> {
    net.edge_ids()
        .iter()
        .map(|id| {
            let num = BigInt::from(rng.gen_range(1..=30));
            let den = BigInt::from(rng.gen_range(1..=7));
            (id.clone(), BigRational::new(num, den))
        })
        .collect()
}

/// Chord arrangement of a matching at random terminal positions, retried
/// until no three chords meet.
pub fn random_arrangement<R: Rng>(rng: &mut R, xi: &Matching) -> Result<ChordArrangement> {
    loop {
        let mut ts: Vec<i64> = Vec::new();
        while ts.len() < xi.points() {
            let t = rng.gen_range(-4000..4000);
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        ts.sort_unstable_by(|a, b| b.cmp(a));
        let ts: Vec<BigRational> = ts.into_iter().map(|t| BigRational::new(BigInt::from(t), BigInt::from(500))).collect();
        match ChordArrangement::new(xi, &ts) {
            Ok(a) => return Ok(a),
            Err(crate::Error::Input(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Reduced network realizing a uniform random matching.
pub fn random_reduced<R: Rng>(rng: &mut R, n: usize) -> CactusNetwork {
    let xi = random_matching(rng, n);
    random_arrangement(rng, &xi)
        .and_then(|a| a.white_network())
        .expect("a straight-chord drawing yields a reduced network")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_networks_are_valid_and_dual_preserves_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..50 {
            let n = 1 + i % 5;
            let net = random_network(&mut rng, n, i % 7);
            assert_eq!(net.num_edges(), i % 7);
            let d = net.dual();
            assert_eq!(d.num_edges(), net.num_edges());
            assert_eq!(d.medial_pairing(), net.medial_pairing().rotate(-1));
        }
    }

    #[test]
    fn random_reduced_realizes_its_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(2..=5);
            let xi = random_matching(&mut rng, n);
            let net = random_arrangement(&mut rng, &xi).unwrap().white_network().unwrap();
            assert_eq!(net.medial_pairing(), xi);
            assert!(net.is_reduced());
            assert_eq!(net.num_edges(), crate::crossings::crossings(&xi).len());
        }
    }

    #[test]
    fn y_delta_moves_preserve_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut moved = 0;
        for _ in 0..50 {
            let n = rng.gen_range(3..=5);
            let mut net = random_reduced(&mut rng, n);
            let tau = net.medial_pairing();
            for _ in 0..4 {
                let k = net.y_sites().len() + net.delta_sites().len();
                if k == 0 {
                    break;
                }
                net = net.yd_move_at(rng.gen_range(0..k)).unwrap();
                moved += 1;
                assert_eq!(net.medial_pairing(), tau);
                assert!(net.is_reduced());
            }
        }
        assert!(moved > 20);
    }
}
