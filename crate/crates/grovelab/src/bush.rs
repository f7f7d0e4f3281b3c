//! The double-grove invariant α, Bush-basis values `B_ξ(Γ)`, the resolution
//! coefficients `a_{ξ,(σ,σ′)}`, the product identity
//! `L_σ L_σ′ = Σ_ξ a_{ξ,(σ,σ′)} B_ξ`, and the lift of `B_ξ` to quadratic
//! grove monomials.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use rand::Rng;
use rayon::prelude::*;

use crate::catalan::{self, Matching, NcPartition};
use crate::crossings::{self, ArcDiagram};
use crate::error::{input, internal, Result};
use crate::formal::FormalSum;
use crate::grove::{self, DoubleGrove};
use crate::network::{twin, CactusNetwork, Embedding, Item};
use crate::polyring::MultiPoly;

/// A cactus network whose edges carry positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    net: CactusNetwork,
    mult: Vec<u32>,
}

impl MultiGraph {
    /// `mult[e]` is the multiplicity of edge `e` in id order; `0` drops it.
    pub fn new(net: CactusNetwork, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != net.num_edges() {
            return input(format!("{} multiplicities for {} edges", mult.len(), net.num_edges()));
        }
        Ok(MultiGraph { net, mult })
    }

    /// Every edge with multiplicity 1.
    pub fn simple(net: CactusNetwork) -> Self {
        let mult = vec![1; net.num_edges()];
        MultiGraph { net, mult }
    }

    pub fn from_double_grove(net: &CactusNetwork, h: &DoubleGrove) -> Result<Self> {
        MultiGraph::new(net.clone(), h.mult.iter().map(|&m| m as u32).collect())
    }

    pub fn network(&self) -> &CactusNetwork {
        &self.net
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    fn state(&self) -> State {
        let mut emb = self.net.embedding().clone();
        for (e, &m) in self.mult.iter().enumerate() {
            if m == 0 {
                emb.remove_edge(e);
            }
        }
        State { emb, mult: self.mult.clone() }
    }
}

/// One applicable move.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Move {
    /// A move whose value is `0`.
    Kill,
    /// Contract a double edge.
    ContractDouble(usize),
    /// Two parallel simple edges: contract `keep`, delete `drop`, times 2.
    Parallel { keep: usize, drop: usize },
    /// Delete an interior vertex of degree 2 with distinct neighbors, times 2.
    RemoveDegree2(usize),
    /// Interior vertex of degree 3 with distinct neighbors.
    Star(usize),
    /// Triangular face, darts in walk order.
    Triangle([usize; 3]),
}

/// Rewrite state: an embedding with per-edge multiplicities.
#[derive(Clone, Debug)]
struct State {
    emb: Embedding,
    mult: Vec<u32>,
}

impl State {
    fn interior(&self, v: usize) -> bool {
        !self.emb.is_boundary(v)
    }

    fn is_loop(&self, e: usize) -> bool {
        self.emb.ends[e][0] == self.emb.ends[e][1]
    }

    fn darts(&self, v: usize) -> Vec<usize> {
        self.emb.rot[v]
            .iter()
            .filter_map(|it| match it {
                Item::Dart(d) => Some(*d),
                Item::Marker(_) => None,
            })
            .collect()
    }

    /// Degree counting multiplicity.
    fn degree(&self, v: usize) -> u32 {
        self.darts(v).iter().map(|d| self.mult[d / 2]).sum()
    }

    /// Darts of an interior vertex of degree `k` whose `k` neighbors are
    /// distinct from each other and from `v`.
    fn distinct_star(&self, v: usize, k: u32) -> Option<Vec<usize>> {
        if !self.interior(v) || self.degree(v) != k {
            return None;
        }
        let darts = self.darts(v);
        let nb: Vec<usize> = darts.iter().map(|&d| self.emb.dart_vertex(twin(d))).collect();
        let distinct = darts.len() == k as usize
            && !nb.contains(&v)
            && (0..nb.len()).all(|i| (i + 1..nb.len()).all(|j| nb[i] != nb[j]));
        distinct.then_some(darts)
    }

    /// Simple non-loop edges grouped by endpoint pair, by smallest edge.
    fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e in self.emb.alive_edges() {
            if self.mult[e] == 1 && !self.is_loop(e) {
                let [u, w] = self.emb.ends[e];
                classes.entry((u.min(w), u.max(w))).or_default().push(e);
            }
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().filter(|c| c.len() >= 2).collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    fn simple_triangles(&self) -> Vec<[usize; 3]> {
        self.emb.triangles().into_iter().filter(|g| g.iter().all(|d| self.mult[d / 2] == 1)).collect()
    }

    /// Whether moves (0), (2) or (5) apply.
    fn killed(&self) -> bool {
        let e = &self.emb;
        e.alive_edges().any(|x| self.mult[x] >= 3 || self.is_loop(x))
            || e.alive_vertices().any(|v| self.interior(v) && self.degree(v) <= 1)
    }

    /// Some edge lies in a component away from the boundary. Such a component
    /// can never reach a terminal state, so its value is 0.
    fn floating(&self) -> bool {
        let e = &self.emb;
        let mut uf = UnionFind::<usize>::new(e.num_vertices());
        for l in 1..e.n {
            uf.union(e.label_vertex[0], e.label_vertex[l]);
        }
        for x in e.alive_edges() {
            uf.union(e.ends[x][0], e.ends[x][1]);
        }
        e.alive_vertices().any(|v| !uf.equiv(v, e.label_vertex[0]))
    }

    /// First applicable move in the fixed priority order, assuming `killed`
    /// is false.
    fn first_move(&self) -> Option<Move> {
        let e = &self.emb;
        if let Some(x) = e.alive_edges().find(|&x| self.mult[x] == 2) {
            return Some(Move::ContractDouble(x));
        }
        if let Some(c) = self.parallel_classes().into_iter().next() {
            return Some(if c.len() >= 3 { Move::Kill } else { Move::Parallel { keep: c[0], drop: c[1] } });
        }
        if let Some(v) = e.alive_vertices().find(|&v| self.distinct_star(v, 2).is_some()) {
            return Some(Move::RemoveDegree2(v));
        }
        if let Some(v) = e.alive_vertices().find(|&v| self.distinct_star(v, 3).is_some()) {
            return Some(Move::Star(v));
        }
        self.simple_triangles().into_iter().next().map(Move::Triangle)
    }

    /// Every applicable move instance.
    fn all_moves(&self) -> Vec<Move> {
        let e = &self.emb;
        let mut out = Vec::new();
        for x in e.alive_edges() {
            if self.mult[x] >= 3 || self.is_loop(x) {
                out.push(Move::Kill);
            } else if self.mult[x] == 2 {
                out.push(Move::ContractDouble(x));
            }
        }
        for v in e.alive_vertices() {
            if self.interior(v) && self.degree(v) <= 1 {
                out.push(Move::Kill);
            }
            if self.distinct_star(v, 2).is_some() {
                out.push(Move::RemoveDegree2(v));
            }
            if self.distinct_star(v, 3).is_some() {
                out.push(Move::Star(v));
            }
        }
        for c in self.parallel_classes() {
            if c.len() >= 3 {
                out.push(Move::Kill);
            } else {
                out.push(Move::Parallel { keep: c[0], drop: c[1] });
                out.push(Move::Parallel { keep: c[1], drop: c[0] });
            }
        }
        out.extend(self.simple_triangles().into_iter().map(Move::Triangle));
        out
    }

    /// The weighted successor states of a move.
    fn apply(&self, mv: &Move) -> Vec<(i64, State)> {
        match *mv {
            Move::Kill => Vec::new(),
            Move::ContractDouble(x) => {
                let mut s = self.clone();
                s.emb.contract_edge(x);
                vec![(1, s)]
            }
            Move::Parallel { keep, drop } => {
                let mut s = self.clone();
                s.emb.remove_edge(drop);
                s.emb.contract_edge(keep);
                vec![(2, s)]
            }
            Move::RemoveDegree2(v) => {
                let mut s = self.clone();
                s.emb.remove_vertex(v);
                vec![(2, s)]
            }
            Move::Star(v) => {
                let d = self.darts(v);
                let nb: Vec<usize> = d.iter().map(|&x| self.emb.dart_vertex(twin(x))).collect();
                (0..3)
                    .map(|i| {
                        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                        let mut s = self.clone();
                        s.emb.remove_vertex(v);
                        let f = s.emb.add_edge_raw(nb[j], nb[k]);
                        s.mult.push(1);
                        // The new edge takes the slots of the two spokes it replaces.
                        let pj = self.emb.position(nb[j], Item::Dart(twin(d[j])));
                        let pk = self.emb.position(nb[k], Item::Dart(twin(d[k])));
                        let mut rj = self.emb.rot[nb[j]].clone();
                        rj[pj] = Item::Dart(2 * f);
                        let mut rk = self.emb.rot[nb[k]].clone();
                        rk[pk] = Item::Dart(2 * f + 1);
                        let ri: Vec<Item> =
                            self.emb.rot[nb[i]].iter().copied().filter(|&it| it != Item::Dart(twin(d[i]))).collect();
                        s.emb.rot[nb[j]] = rj;
                        s.emb.rot[nb[k]] = rk;
                        s.emb.rot[nb[i]] = ri;
                        (1, s)
                    })
                    .collect()
            }
            Move::Triangle(g) => (0..3)
                .map(|i| {
                    let mut s = self.clone();
                    s.emb.remove_edge(g[(i + 2) % 3] / 2);
                    s.emb.contract_edge(g[i] / 2);
                    (1, s)
                })
                .collect(),
        }
    }

    /// Move (1), reached once no other move applies.
    fn terminal(&self) -> Result<Matching> {
        let tau = Matching::new(self.emb.medial_partners())?;
        if !self.emb.is_reduced() {
            return internal("a fully reduced double grove has a lens in its medial graph");
        }
        if !crossings::is_k_noncrossing(&tau, 3) {
            return internal(format!("a fully reduced double grove has medial pairing {tau}, which is not 3-noncrossing"));
        }
        Ok(tau)
    }

    /// Serialization of the embedded multigraph up to relabeling of vertices
    /// and edges: boundary vertices by smallest label, then breadth first,
    /// each rotation read from its discovering item.
    fn key(&self) -> Vec<u32> {
        const DART: u32 = 1 << 20;
        let e = &self.emb;
        let mut vid = vec![usize::MAX; e.num_vertices()];
        let mut eid = vec![u32::MAX; e.ends.len()];
        let mut order: Vec<(usize, usize)> = Vec::new();
        for l in 0..e.n {
            let v = e.label_vertex[l];
            if vid[v] == usize::MAX {
                vid[v] = order.len();
                order.push((v, e.position(v, Item::Marker(l))));
            }
        }
        let mut next_edge = 0;
        let mut out = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (v, p) = order[i];
            let rot = &e.rot[v];
            for k in 0..rot.len() {
                match rot[(p + k) % rot.len()] {
                    Item::Marker(m) => out.push(m as u32),
                    Item::Dart(d) => {
                        if eid[d / 2] == u32::MAX {
                            eid[d / 2] = next_edge;
                            next_edge += 1;
                        }
                        out.push(DART + 4 * eid[d / 2] + self.mult[d / 2]);
                        let w = e.dart_vertex(twin(d));
                        if vid[w] == usize::MAX {
                            vid[w] = order.len();
                            order.push((w, e.position(w, Item::Dart(twin(d)))));
                        }
                    }
                }
            }
            out.push(u32::MAX);
            i += 1;
        }
        out
    }
}

/// Deterministic α with a memo shared across calls.
#[derive(Default)]
pub struct AlphaEngine {
    memo: HashMap<Vec<u32>, FormalSum<Matching>>,
}

impl AlphaEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alpha(&mut self, h: &MultiGraph) -> Result<FormalSum<Matching>> {
        self.eval(h.state())
    }

    fn eval(&mut self, s: State) -> Result<FormalSum<Matching>> {
        if s.killed() || s.floating() {
            return Ok(FormalSum::zero());
        }
        let key = s.key();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = match s.first_move() {
            None => FormalSum::single(s.terminal()?),
            Some(mv) => {
                let mut sum = FormalSum::zero();
                for (c, t) in s.apply(&mv) {
                    let sub = self.eval(t)?;
                    sum.add_assign_scaled(&sub, &BigInt::from(c));
                }
                sum
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// `α(H)` by the fixed move order.
pub fn alpha(h: &MultiGraph) -> Result<FormalSum<Matching>> {
    AlphaEngine::new().alpha(h)
}

/// `α(H)` choosing uniformly among all applicable moves at every step.
pub fn alpha_random<R: Rng>(h: &MultiGraph, rng: &mut R) -> Result<FormalSum<Matching>> {
    eval_random(h.state(), rng)
}

fn eval_random<R: Rng>(s: State, rng: &mut R) -> Result<FormalSum<Matching>> {
    let moves = s.all_moves();
    if moves.is_empty() {
        return Ok(FormalSum::single(s.terminal()?));
    }
    let mv = &moves[rng.gen_range(0..moves.len())];
    let mut sum = FormalSum::zero();
    for (c, t) in s.apply(mv) {
        let sub = eval_random(t, rng)?;
        sum.add_assign_scaled(&sub, &BigInt::from(c));
    }
    Ok(sum)
}

/// Whether `trials` randomly ordered runs, seeded `seed, seed + 1, …`, all
/// agree with the deterministic α.
pub fn alpha_confluence_check(h: &MultiGraph, trials: usize, seed: u64) -> Result<bool> {
    use rand::SeedableRng;
    let want = alpha(h)?;
    for t in 0..trials {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        if alpha_random(h, &mut rng)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random multigraph for confluence runs: a random network with
/// multiplicities mostly 1 or 2 and occasionally 3.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, edges: usize) -> MultiGraph {
    let net = crate::network::random::random_network(rng, n, edges);
    let mult = (0..net.num_edges())
        .map(|_| match rng.gen_range(0..20) {
            0 => 3,
            1..=7 => 2,
            _ => 1,
        })
        .collect();
    MultiGraph { net, mult }
}

/// Every nonzero `B_ξ(Γ) = Σ_{H ⊂ 2Γ} α(H)_ξ wt(H)`.
pub fn bush_values(net: &CactusNetwork) -> Result<BTreeMap<Matching, MultiPoly>> {
    let groves = grove::enumerate_double_groves(net)?;
    let partial: Vec<Result<BTreeMap<Matching, MultiPoly>>> = groves
        .par_chunks(64)
        .map(|chunk| {
            let mut engine = AlphaEngine::new();
            let mut out: BTreeMap<Matching, MultiPoly> = BTreeMap::new();
            for h in chunk {
                let a = engine.alpha(&MultiGraph::from_double_grove(net, h)?)?;
                let wt = h.weight(net);
                for (xi, c) in a.iter() {
                    out.entry(xi.clone()).or_default().add_term(wt.clone(), c.clone());
                }
            }
            Ok(out)
        })
        .collect();
    let mut total: BTreeMap<Matching, MultiPoly> = BTreeMap::new();
    for part in partial {
        for (xi, p) in part? {
            let slot = total.entry(xi).or_default();
            *slot = &*slot + &p;
        }
    }
    total.retain(|_, p| !p.is_zero());
    Ok(total)
}

fn check_tc(xi: &Matching, n: usize) -> Result<()> {
    if xi.n() != n {
        return input(format!("{xi} is a matching on {} points, expected {}", xi.points(), 2 * n));
    }
    if !crossings::is_k_noncrossing(xi, 3) {
        return input(format!("{xi} is not 3-noncrossing"));
    }
    Ok(())
}

/// `B_ξ(Γ)`.
pub fn bush_value(net: &CactusNetwork, xi: &Matching) -> Result<MultiPoly> {
    check_tc(xi, net.n())?;
    Ok(bush_values(net)?.remove(xi).unwrap_or_default())
}

/// Counts of valid opposite resolution pairs of ξ by the partitions they
/// read as: `v` contributes to `(σ, σ′)` when `ξ(v) = τ(σ)` and
/// `ξ(1 − v) = τ(σ′)` are both loopless.
pub fn a_table(xi: &Matching) -> Result<BTreeMap<(NcPartition, NcPartition), u64>> {
    check_tc(xi, xi.n())?;
    let diagram = ArcDiagram::new(xi);
    let k = diagram.quads.len();
    if k > 24 {
        return input(format!("{k} crossings is beyond exhaustive resolution"));
    }
    let mut out = BTreeMap::new();
    for mask in 0u64..1 << k {
        let v: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        let w: Vec<bool> = v.iter().map(|b| !b).collect();
        let (m1, l1) = crossings::resolve_with(xi, &diagram, &v)?;
        let (m2, l2) = crossings::resolve_with(xi, &diagram, &w)?;
        if l1 == 0 && l2 == 0 {
            let s1 = catalan::matching_to_partition(&m1)?;
            let s2 = catalan::matching_to_partition(&m2)?;
            *out.entry((s1, s2)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// `a_{ξ,(σ,σ′)}` from resolutions of the strand diagram.
pub fn a_coeff(xi: &Matching, sigma: &NcPartition, sigma2: &NcPartition) -> Result<u64> {
    if sigma.n() != xi.n() || sigma2.n() != xi.n() {
        return input("partitions and matching disagree on n");
    }
    Ok(a_table(xi)?.get(&(sigma.clone(), sigma2.clone())).copied().unwrap_or(0))
}

/// `a_{ξ,(σ,σ′)}` as the number of ordered splittings of `Γ(ξ)` into groves.
pub fn a_coeff_oracle(xi: &Matching, sigma: &NcPartition, sigma2: &NcPartition) -> Result<u64> {
    if sigma.n() != xi.n() || sigma2.n() != xi.n() {
        return input("partitions and matching disagree on n");
    }
    grove::split_count(&CactusNetwork::of_matching(xi)?, sigma, sigma2)
}

/// Both sides of `L_σ L_σ′ = Σ_ξ a_{ξ,(σ,σ′)} B_ξ` for every pair at once.
pub struct ProductCheck {
    pub lhs: BTreeMap<(NcPartition, NcPartition), MultiPoly>,
    pub rhs: BTreeMap<(NcPartition, NcPartition), MultiPoly>,
}

impl ProductCheck {
    pub fn new(net: &CactusNetwork) -> Result<Self> {
        let l = grove::all_measurements(net)?;
        let mut lhs = BTreeMap::new();
        for (s, ls) in &l {
            for (t, lt) in &l {
                lhs.insert((s.clone(), t.clone()), ls * lt);
            }
        }
        let mut rhs: BTreeMap<(NcPartition, NcPartition), MultiPoly> = BTreeMap::new();
        for (xi, b) in bush_values(net)? {
            for (pair, c) in a_table(&xi)? {
                let slot = rhs.entry(pair).or_default();
                *slot = &*slot + &b.scale(&BigInt::from(c));
            }
        }
        rhs.retain(|_, p| !p.is_zero());
        Ok(ProductCheck { lhs, rhs })
    }

    /// Pairs where the two sides differ, in order.
    pub fn mismatches(&self) -> Vec<(NcPartition, NcPartition)> {
        let zero = MultiPoly::zero();
        let mut keys: Vec<&(NcPartition, NcPartition)> = self.lhs.keys().chain(self.rhs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|k| self.lhs.get(k).unwrap_or(&zero) != self.rhs.get(k).unwrap_or(&zero))
            .cloned()
            .collect()
    }
}

/// Whether `L_σ(Γ) L_σ′(Γ) = Σ_ξ a_{ξ,(σ,σ′)} B_ξ(Γ)` holds exactly.
pub fn verify_product(net: &CactusNetwork, sigma: &NcPartition, sigma2: &NcPartition) -> Result<bool> {
    if sigma.n() != net.n() || sigma2.n() != net.n() {
        return input("partitions and network disagree on n");
    }
    let check = ProductCheck::new(net)?;
    let key = (sigma.clone(), sigma2.clone());
    let zero = MultiPoly::zero();
    Ok(check.lhs.get(&key).unwrap_or(&zero) == check.rhs.get(&key).unwrap_or(&zero))
}

/// `TC_n` ordered by number of crossings, then partner array.
pub fn tc_rows(n: usize) -> Vec<Matching> {
    let mut rows = catalan::tc_matchings(n);
    rows.sort_by_cached_key(|m| (crossings::crossings(m).len(), m.partners().to_vec()));
    rows
}

/// Ordered partition pairs sorted by their strings.
pub fn pair_columns(n: usize) -> Vec<(NcPartition, NcPartition)> {
    let parts = catalan::noncrossing_partitions(n);
    let mut cols: Vec<(NcPartition, NcPartition)> =
        parts.iter().flat_map(|s| parts.iter().map(move |t| (s.clone(), t.clone()))).collect();
    cols.sort_by_cached_key(|(s, t)| (s.to_string(), t.to_string()));
    cols
}

/// Row labels, column labels and entries of a matrix.
pub type LabeledMatrix<R, C> = (Vec<R>, Vec<C>, Vec<Vec<BigRational>>);

/// The matrix `a_{ξ,(σ,σ′)}` with rows `tc_rows(n)` and columns `pair_columns(n)`.
pub fn a_matrix(n: usize) -> Result<LabeledMatrix<Matching, (NcPartition, NcPartition)>> {
    let rows = tc_rows(n);
    let cols = pair_columns(n);
    let mut mat = Vec::with_capacity(rows.len());
    for xi in &rows {
        let table = a_table(xi)?;
        mat.push(
            cols.iter()
                .map(|c| BigRational::from_integer(BigInt::from(table.get(c).copied().unwrap_or(0))))
                .collect(),
        );
    }
    Ok((rows, cols, mat))
}

/// Rank of a rational matrix and its earliest independent columns.
pub fn pivot_columns(mat: &[Vec<BigRational>]) -> Vec<usize> {
    let mut m: Vec<Vec<BigRational>> = mat.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn invert(mat: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let k = mat.len();
    let mut a: Vec<Vec<BigRational>> = mat.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !a[i][c].is_zero()) else {
            return internal("pivot submatrix is singular");
        };
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c].clone();
        for j in 0..k {
            a[c][j] /= &d;
            inv[c][j] /= &d;
        }
        for i in 0..k {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..k {
                let x = &f * &a[c][j];
                a[i][j] -= x;
                let y = &f * &inv[c][j];
                inv[i][j] -= y;
            }
        }
    }
    Ok(inv)
}

/// `B_ξ` written in quadratic grove monomials `L_σ L_σ′`.
#[derive(Clone, Debug)]
pub struct LiftedBush {
    pub n: usize,
    /// Rank of the full `a`-matrix.
    pub rank: usize,
    /// The pivot pairs used as monomials.
    pub columns: Vec<(NcPartition, NcPartition)>,
    pub coeffs: BTreeMap<Matching, BTreeMap<(NcPartition, NcPartition), BigRational>>,
}

impl LiftedBush {
    /// Value of the lifted `B_ξ` given the values of every `L_σ`.
    pub fn evaluate(&self, xi: &Matching, l: &BTreeMap<NcPartition, BigRational>) -> BigRational {
        let zero = BigRational::zero();
        self.coeffs
            .get(xi)
            .map(|row| {
                row.iter()
                    .map(|((s, t), c)| c * l.get(s).unwrap_or(&zero) * l.get(t).unwrap_or(&zero))
                    .sum()
            })
            .unwrap_or_default()
    }
}

/// Lifts every `B_ξ`, `ξ ∈ TC_n`, through the earliest invertible square
/// submatrix of the `a`-matrix.
pub fn lift_bush(n: usize) -> Result<LiftedBush> {
    if n == 0 || n > 4 {
        return input("lift_bush supports 1 ≤ n ≤ 4");
    }
    let (rows, cols, mat) = a_matrix(n)?;
    let pivots = pivot_columns(&mat);
    if pivots.len() != rows.len() {
        return internal(format!("a-matrix has rank {} but |TC_{n}| = {}", pivots.len(), rows.len()));
    }
    // L_c = Σ_ξ a[ξ][c] B_ξ on pivot columns, so B = (A_Sᵀ)⁻¹ L_S.
    let at: Vec<Vec<BigRational>> = pivots.iter().map(|&c| mat.iter().map(|row| row[c].clone()).collect()).collect();
    let inv = invert(&at)?;
    let columns: Vec<(NcPartition, NcPartition)> = pivots.iter().map(|&c| cols[c].clone()).collect();
    let mut coeffs = BTreeMap::new();
    for (i, xi) in rows.iter().enumerate() {
        let row: BTreeMap<(NcPartition, NcPartition), BigRational> = columns
            .iter()
            .zip(&inv[i])
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        coeffs.insert(xi.clone(), row);
    }
    Ok(LiftedBush { n, rank: pivots.len(), columns, coeffs })
}

/// Pairs `(ξ, μ)` breaking `B_μ(Γ(ξ)) = 0` for `cr(ξ) ≤ cr(μ)`, `μ ≠ ξ`, or
/// `B_ξ(Γ(ξ)) = wt(Γ(ξ))`.
pub fn triangularity_failures(n: usize) -> Result<Vec<(Matching, Matching)>> {
    let tc = catalan::tc_matchings(n);
    let mut bad = Vec::new();
    for xi in &tc {
        let net = CactusNetwork::of_matching(xi)?;
        let values = bush_values(&net)?;
        let cr = crossings::crossings(xi).len();
        for mu in &tc {
            let b = values.get(mu).cloned().unwrap_or_default();
            let ok = if mu == xi {
                b == net.weight_monomial()
            } else {
                crossings::crossings(mu).len() < cr || b.is_zero()
            };
            if !ok {
                bad.push((xi.clone(), mu.clone()));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::random::random_network;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn p(s: &str) -> NcPartition {
        s.parse().unwrap()
    }

    fn y() -> CactusNetwork {
        CactusNetwork::builtin("y3").unwrap()
    }

    #[test]
    fn alpha_of_y() {
        let a = alpha(&MultiGraph::simple(y())).unwrap();
        assert_eq!(a.to_string(), "1·(12|35|46) + 1·(13|24|56) + 1·(15|26|34)");
    }

    #[test]
    fn bush_of_y() {
        let b = bush_value(&y(), &m("15|26|34")).unwrap();
        assert_eq!(b.to_string(), "a^2*c + a*b*c + a*c^2");
    }

    #[test]
    fn multiplicity_three_kills() {
        let h = MultiGraph::new(y(), vec![3, 1, 1]).unwrap();
        assert!(alpha(&h).unwrap().is_zero());
    }

    #[test]
    fn reduced_networks_are_terminal() {
        for n in 1..=4 {
            for xi in catalan::tc_matchings(n) {
                let net = CactusNetwork::of_matching(&xi).unwrap();
                assert_eq!(alpha(&MultiGraph::simple(net)).unwrap(), FormalSum::single(xi));
            }
        }
    }

    #[test]
    fn empty_network_bush() {
        let empty = CactusNetwork::empty(&NcPartition::discrete(3));
        assert_eq!(bush_value(&empty, &Matching::trivial(3)).unwrap(), MultiPoly::one());
        assert!(bush_value(&empty, &m("15|26|34")).unwrap().is_zero());
    }

    #[test]
    fn y_double_groves_are_confluent() {
        let net = y();
        for h in grove::enumerate_double_groves(&net).unwrap() {
            let g = MultiGraph::from_double_grove(&net, &h).unwrap();
            assert!(alpha_confluence_check(&g, 20, 1).unwrap());
        }
    }

    #[test]
    fn random_multigraphs_are_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for i in 0..60 {
            let g = random_multigraph(&mut rng, 2 + i % 4, 1 + i % 6);
            assert!(alpha_confluence_check(&g, 10, i as u64).unwrap(), "{}", g.network().to_json());
        }
    }

    #[test]
    fn a_coeff_matches_splittings_n3() {
        let parts = catalan::noncrossing_partitions(3);
        for xi in catalan::tc_matchings(3) {
            for s in &parts {
                for t in &parts {
                    assert_eq!(a_coeff(&xi, s, t).unwrap(), a_coeff_oracle(&xi, s, t).unwrap(), "{xi} {s} {t}");
                }
            }
        }
    }

    #[test]
    fn a_coeff_without_crossings() {
        let xi = m("12|36|45");
        let s = catalan::matching_to_partition(&xi).unwrap();
        assert_eq!(a_coeff(&xi, &s, &s).unwrap(), 1);
        assert_eq!(a_table(&xi).unwrap().len(), 1);
    }

    #[test]
    fn product_identity_on_y() {
        let check = ProductCheck::new(&y()).unwrap();
        assert!(check.mismatches().is_empty());
        assert!(verify_product(&y(), &p("1|2|3"), &p("1|2|3")).unwrap());
        let lhs = &check.lhs[&(p("1|2|3"), p("1|2|3"))];
        assert_eq!(lhs.to_string(), "a^2 + 2*a*b + 2*a*c + b^2 + 2*b*c + c^2");
    }

    #[test]
    fn product_identity_on_random_networks() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in 0..8 {
            let net = random_network(&mut rng, 3 + i % 2, 2 + i % 4);
            assert!(ProductCheck::new(&net).unwrap().mismatches().is_empty(), "{}", net.to_json());
        }
    }

    #[test]
    fn lift_small() {
        let l1 = lift_bush(1).unwrap();
        let xi = Matching::trivial(1);
        let one = p("1");
        assert_eq!(l1.coeffs[&xi][&(one.clone(), one)], BigRational::one());
        let l3 = lift_bush(3).unwrap();
        assert_eq!(l3.rank, 14);
    }

    #[test]
    fn triangular_at_n3() {
        assert!(triangularity_failures(3).unwrap().is_empty());
    }
}
