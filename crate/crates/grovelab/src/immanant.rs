//! Concordance, the linear forms `Δ_I`, the selection sums `β(ξ)` on the
//! combined graph `N(ξ)`, Temperley–Lieb immanants `F_{τ,T}` in Bush
//! coordinates, and the electrical Plücker relations.
//!
//! Subsets of `[2n]` and partial matchings use 1-based labels, as Catalan
//! subsets do.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;

use crate::bush;
use crate::catalan::{self, Matching, NcPartition};
use crate::crossings;
use crate::error::{input, internal, Error, Result};
use crate::formal::FormalSum;
use crate::network::{ChordArrangement, Color};

/// A noncrossing matching `τ` on part of `[m]` together with a set `T` of
/// unmatched labels outside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialNcMatching {
    m: usize,
    /// Pairs `(a, b)` with `a < b`, sorted.
    pairs: Vec<(usize, usize)>,
    /// Sorted.
    t: Vec<usize>,
}

impl PartialNcMatching {
    /// Validates labels, disjointness and noncrossing. The degree condition
    /// `|S| + 2|T| = 2k` is checked separately by [`Self::check_degree`].
    pub fn new(m: usize, pairs: Vec<(usize, usize)>, t: Vec<usize>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        let mut t = t;
        t.sort_unstable();
        let mut used = vec![false; m + 1];
        for &x in pairs.iter().flat_map(|(a, b)| [a, b]).chain(t.iter()) {
            if x == 0 || x > m || used[x] {
                return input(format!("label {x} is out of range or used twice"));
            }
            used[x] = true;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return input(format!("pairs ({a},{b}) and ({c},{d}) cross"));
                }
            }
        }
        Ok(PartialNcMatching { m, pairs, t })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    /// The matched labels `S(τ)`, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        s.sort_unstable();
        s
    }

    /// `|S| + 2|T|`.
    pub fn degree(&self) -> usize {
        2 * self.pairs.len() + 2 * self.t.len()
    }

    /// Requires `|S| + 2|T| = 2k`.
    pub fn check_degree(&self, k: usize) -> Result<()> {
        if self.degree() != 2 * k {
            return input(format!("{self} has |S| + 2|T| = {}, expected {}", self.degree(), 2 * k));
        }
        Ok(())
    }

    /// Set notation `(S, T)` with `∅` for empty sets, e.g. `(∅,{2,4})`.
    pub fn set_notation(&self) -> String {
        let set = |v: &[usize]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        };
        format!("({},{})", set(&self.support()), set(&self.t))
    }
}

/// `tau=15,23;T=4,6`. Pairs print as `a-b` once labels reach 10.
impl fmt::Display for PartialNcMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.m >= 10;
        let pairs: Vec<String> =
            self.pairs.iter().map(|(a, b)| if wide { format!("{a}-{b}") } else { format!("{a}{b}") }).collect();
        let t: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        write!(f, "tau={};T={}", pairs.join(","), t.join(","))
    }
}

type RawPartial = (Vec<(usize, usize)>, Vec<usize>);

fn parse_partial(s: &str) -> Result<RawPartial> {
    let bad = || Error::Input(format!("partial matching {s:?} is not of the form tau=12,34;T=5"));
    let (tau, t) = s.trim().split_once(';').ok_or_else(bad)?;
    let tau = tau.trim().strip_prefix("tau=").ok_or_else(bad)?;
    let t = t.trim().strip_prefix("T=").ok_or_else(bad)?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let mut pairs = Vec::new();
    for chunk in tau.split(',').filter(|c| !c.trim().is_empty()) {
        let chunk = chunk.trim();
        let (a, b) = match chunk.split_once('-') {
            Some((a, b)) => (num(a)?, num(b)?),
            None if chunk.len() == 2 => (num(&chunk[..1])?, num(&chunk[1..])?),
            None => return Err(bad()),
        };
        pairs.push((a, b));
    }
    let t = t.split(',').filter(|c| !c.trim().is_empty()).map(num).collect::<Result<Vec<_>>>()?;
    Ok((pairs, t))
}

impl PartialNcMatching {
    /// Parses the [`Display`](fmt::Display) form on `[m]`.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let (pairs, t) = parse_partial(s)?;
        PartialNcMatching::new(m, pairs, t)
    }
}

impl FromStr for PartialNcMatching {
    type Err = Error;
    /// Infers `m` as the largest label mentioned, rounded up to even.
    fn from_str(s: &str) -> Result<Self> {
        let (pairs, t) = parse_partial(s)?;
        let top = pairs.iter().flat_map(|&(a, b)| [a, b]).chain(t.iter().copied()).max().unwrap_or(0);
        PartialNcMatching::new(top + top % 2, pairs, t)
    }
}

fn check_subset(n: usize, i: &[usize]) -> Result<()> {
    if n == 0 || i.len() != n - 1 {
        return input(format!("expected an {}-subset of [{}], got {} elements", n.saturating_sub(1), 2 * n, i.len()));
    }
    if let Some(&x) = i.iter().find(|&&x| x == 0 || x > 2 * n) {
        return input(format!("element {x} lies outside [{}]", 2 * n));
    }
    Ok(())
}

fn has_repeats(i: &[usize]) -> bool {
    let mut s = i.to_vec();
    s.sort_unstable();
    s.windows(2).any(|w| w[0] == w[1])
}

/// Whether every part of `σ` (on `1, 3, …, 2n−1`) and of its dual (on
/// `2, 4, …, 2n`) has exactly one element outside `I`.
pub fn concordant(i: &[usize], sigma: &NcPartition) -> Result<bool> {
    let n = sigma.n();
    check_subset(n, i)?;
    let mut inside = vec![false; 2 * n + 1];
    for &x in i {
        inside[x] = true;
    }
    let one_out = |blocks: &[Vec<usize>], offset: usize| {
        blocks.iter().all(|b| b.iter().filter(|&&l| !inside[2 * l + offset]).count() == 1)
    };
    Ok(one_out(sigma.blocks(), 1) && one_out(catalan::dual_partition(sigma).blocks(), 2))
}

/// `E(I)`: the partitions concordant with `I`, in sorted order.
pub fn concordant_set(n: usize, i: &[usize]) -> Result<Vec<NcPartition>> {
    check_subset(n, i)?;
    let mut out = Vec::new();
    for s in catalan::noncrossing_partitions(n) {
        if concordant(i, &s)? {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// `Δ_I = Σ_{σ ∈ E(I)} L_σ`; zero when `I` repeats an element.
pub fn delta(n: usize, i: &[usize]) -> Result<FormalSum<NcPartition>> {
    check_subset(n, i)?;
    if has_repeats(i) {
        return Ok(FormalSum::zero());
    }
    Ok(concordant_set(n, i)?.into_iter().map(|s| (s, BigInt::from(1))).collect())
}

/// One choice of half-edges in `N(ξ)` with every interior vertex of degree
/// 2 and every boundary vertex of degree at most 2, before representatives
/// are picked in the boundary blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    /// Labels (1-based) of each boundary vertex `Z_i`.
    pub blocks: Vec<Vec<usize>>,
    /// Degree of each boundary vertex in the selection.
    pub block_degree: Vec<usize>,
    /// Boundary vertices joined by a path, as index pairs into `blocks`.
    pub paths: Vec<(usize, usize)>,
    pub cycles: u32,
}

/// How a boundary vertex of degree 0 may contribute to `(τ(A), T(A))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BetaRule {
    /// One representative `j ∈ Z` stays out of `T(A)`, or two labels of `Z`
    /// form a pair of `τ(A)` and the rest go to `T(A)`. This is the rule
    /// under which `Δ_I Δ_J = Σ F_{τ,T}` holds.
    #[default]
    Full,
    /// Only the single-representative option.
    SingleRepresentative,
}

/// Contribution of one boundary block: an optional path endpoint, an
/// optional pair inside the block, and the labels placed in `T(A)`.
type BlockChoice = (Option<usize>, Option<(usize, usize)>, Vec<usize>);

impl Selection {
    fn block_choices(&self, b: usize, rule: BetaRule) -> Vec<BlockChoice> {
        let z = &self.blocks[b];
        let rest = |skip: &[usize]| z.iter().copied().filter(|l| !skip.contains(l)).collect::<Vec<_>>();
        match self.block_degree[b] {
            2 => vec![(None, None, z.clone())],
            1 => z.iter().map(|&j| (Some(j), None, rest(&[j]))).collect(),
            _ => {
                let mut out: Vec<BlockChoice> = z.iter().map(|&j| (None, None, rest(&[j]))).collect();
                if rule == BetaRule::Full {
                    for (x, &a) in z.iter().enumerate() {
                        for &c in &z[x + 1..] {
                            out.push((None, Some((a, c)), rest(&[a, c])));
                        }
                    }
                }
                out
            }
        }
    }

    /// Every `(τ(A), T(A))` over the choices in blocks of degree 0 and 1.
    pub fn terms(&self, m: usize, rule: BetaRule) -> Result<Vec<PartialNcMatching>> {
        let choices: Vec<Vec<BlockChoice>> = (0..self.blocks.len()).map(|b| self.block_choices(b, rule)).collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; self.blocks.len()];
        loop {
            let chosen: Vec<&BlockChoice> = pick.iter().enumerate().map(|(b, &k)| &choices[b][k]).collect();
            let endpoint = |b: usize| chosen[b].0.expect("path ends have degree 1");
            let mut pairs: Vec<(usize, usize)> = self.paths.iter().map(|&(x, y)| (endpoint(x), endpoint(y))).collect();
            pairs.extend(chosen.iter().filter_map(|c| c.1));
            let t: Vec<usize> = chosen.iter().flat_map(|c| c.2.iter().copied()).collect();
            match PartialNcMatching::new(m, pairs, t) {
                Ok(p) => out.push(p),
                Err(e) => return internal(format!("selection produced an invalid partial matching: {e}")),
            }
            // Odometer over the blocks.
            let mut b = 0;
            loop {
                if b == pick.len() {
                    return Ok(out);
                }
                pick[b] += 1;
                if pick[b] < choices[b].len() {
                    break;
                }
                pick[b] = 0;
                b += 1;
            }
        }
    }
}

/// All valid half-edge selections of `N(ξ)`.
pub fn selections(xi: &Matching) -> Result<Vec<Selection>> {
    if !crossings::is_k_noncrossing(xi, 3) {
        return input(format!("{xi} is not 3-noncrossing"));
    }
    let arr = ChordArrangement::canonical(xi)?;
    let nf = arr.faces.len();
    let cr = arr.num_crossings();
    if cr > 12 {
        return input(format!("{cr} crossings is beyond exhaustive selection"));
    }
    let boundary: Vec<usize> = (0..nf).filter(|&f| arr.is_boundary_region(f)).collect();
    let mut block_of = vec![usize::MAX; nf];
    for (b, &f) in boundary.iter().enumerate() {
        block_of[f] = b;
    }
    let blocks: Vec<Vec<usize>> = boundary.iter().map(|&f| arr.region_arcs(f).iter().map(|k| k + 1).collect()).collect();
    // The two same-colored corners of each crossing; white corners form the
    // edge of Γ(ξ), black corners the edge of its dual.
    let corner_pairs: Vec<[[usize; 2]; 2]> = arr
        .crossing_faces
        .iter()
        .map(|fs| {
            let w = if arr.color[fs[0]] == Color::White { 0 } else { 1 };
            [[fs[w], fs[w + 2]], [fs[1 - w], fs[3 - w]]]
        })
        .collect();
    let mut out = Vec::new();
    for code in 0u64..1 << (2 * cr) {
        let mut deg = vec![0usize; nf];
        let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(2 * cr);
        for (q, pairs) in corner_pairs.iter().enumerate() {
            for (h, pair) in pairs.iter().enumerate() {
                let f = pair[(code >> (2 * q + h) & 1) as usize];
                deg[f] += 1;
                chosen.push((q, f));
            }
        }
        let ok = (0..nf).all(|f| if block_of[f] == usize::MAX { deg[f] == 2 } else { deg[f] <= 2 });
        if !ok {
            continue;
        }
        // Vertices: faces 0..nf, crossings nf..nf+cr.
        let mut uf = UnionFind::<usize>::new(nf + cr);
        for &(q, f) in &chosen {
            uf.union(nf + q, f);
        }
        let touched = (0..nf).filter(|&f| deg[f] > 0).count() + cr;
        let mut roots: Vec<usize> = (0..nf + cr).filter(|&v| v >= nf || deg[v] > 0).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let cycles = (chosen.len() + roots.len()) as i64 - touched as i64;
        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &f in &boundary {
            if deg[f] == 1 {
                ends.entry(uf.find(f)).or_default().push(block_of[f]);
            }
        }
        let mut paths = Vec::new();
        for (_, e) in ends {
            if e.len() != 2 {
                return internal("a path in a selection does not have two boundary ends");
            }
            paths.push((e[0], e[1]));
        }
        let paths_count = paths.len() as i64;
        if cycles < 0 || roots.len() as i64 - paths_count != cycles {
            return internal("selection components are not paths and cycles");
        }
        out.push(Selection {
            blocks: blocks.clone(),
            block_degree: boundary.iter().map(|&f| deg[f]).collect(),
            paths,
            cycles: cycles as u32,
        });
    }
    Ok(out)
}

/// `β(ξ) = Σ_A 2^{cyc(A)} (τ(A), T(A))`.
pub fn beta(xi: &Matching) -> Result<FormalSum<PartialNcMatching>> {
    beta_with(xi, BetaRule::Full)
}

/// `β(ξ)` under the given block rule.
pub fn beta_with(xi: &Matching, rule: BetaRule) -> Result<FormalSum<PartialNcMatching>> {
    let m = xi.points();
    let mut out = FormalSum::zero();
    for s in selections(xi)? {
        let c = BigInt::from(1u64 << s.cycles);
        for p in s.terms(m, rule)? {
            p.check_degree(xi.n() - 1).map_err(|e| Error::Internal(e.to_string()))?;
            out.add_term(p, c.clone());
        }
    }
    Ok(out)
}

/// Renders a formal sum of partial matchings in set notation, joined by `+`
/// and with coefficients other than 1 written in front.
pub fn set_notation_sum(s: &FormalSum<PartialNcMatching>) -> String {
    let mut terms: Vec<(Vec<usize>, Vec<usize>, String)> = s
        .iter()
        .map(|(p, c)| {
            let coeff = if *c == BigInt::from(1) { String::new() } else { c.to_string() };
            (p.support(), p.t().to_vec(), format!("{coeff}{}", p.set_notation()))
        })
        .collect();
    terms.sort();
    terms.into_iter().map(|t| t.2).collect::<Vec<_>>().join("+")
}

/// Every `β(ξ)`, `ξ ∈ TC_n`, with every `a`-table, for repeated queries.
pub struct ImmanantTables {
    pub n: usize,
    pub beta: BTreeMap<Matching, FormalSum<PartialNcMatching>>,
    pub a: BTreeMap<Matching, BTreeMap<(NcPartition, NcPartition), u64>>,
}

impl ImmanantTables {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return input("immanant tables support 1 ≤ n ≤ 5");
        }
        let mut beta_t = BTreeMap::new();
        let mut a = BTreeMap::new();
        for xi in catalan::tc_matchings(n) {
            beta_t.insert(xi.clone(), beta(&xi)?);
            a.insert(xi.clone(), bush::a_table(&xi)?);
        }
        Ok(ImmanantTables { n, beta: beta_t, a })
    }

    /// `F_{τ,T}` in Bush coordinates.
    pub fn f_immanant(&self, p: &PartialNcMatching) -> Result<FormalSum<Matching>> {
        if p.m() != 2 * self.n {
            return input(format!("{p} lives on [{}], expected [{}]", p.m(), 2 * self.n));
        }
        p.check_degree(self.n - 1)?;
        Ok(self.beta.iter().map(|(xi, b)| (xi.clone(), b.get(p))).collect())
    }

    /// `Δ_I Δ_J` in Bush coordinates via `a_{ξ,(σ,σ′)}`.
    pub fn delta_product(&self, i: &[usize], j: &[usize]) -> Result<FormalSum<Matching>> {
        let ei = delta(self.n, i)?;
        let ej = delta(self.n, j)?;
        let mut out = FormalSum::zero();
        for (xi, table) in &self.a {
            let mut c = BigInt::from(0);
            for (s, cs) in ei.iter() {
                for (t, ct) in ej.iter() {
                    if let Some(&k) = table.get(&(s.clone(), t.clone())) {
                        c += cs * ct * BigInt::from(k);
                    }
                }
            }
            out.add_term(xi.clone(), c);
        }
        Ok(out)
    }

    /// `Σ F_{τ,T}` over the pairs compatible with `I, J`.
    pub fn compatible_sum(&self, i: &[usize], j: &[usize]) -> Result<FormalSum<Matching>> {
        let mut out = FormalSum::zero();
        for p in compatible_pairs(self.n, i, j)? {
            out = &out + &self.f_immanant(&p)?;
        }
        Ok(out)
    }

    /// `Δ_I Δ_J = Σ F_{τ,T}` coordinatewise over `TC_n`.
    pub fn verify_delta_product(&self, i: &[usize], j: &[usize]) -> Result<bool> {
        Ok(self.delta_product(i, j)? == self.compatible_sum(i, j)?)
    }
}

/// `F_{τ,T} = Σ_ξ β(ξ)_{τ,T} B_ξ`.
pub fn f_immanant(p: &PartialNcMatching, n: usize) -> Result<FormalSum<Matching>> {
    if p.m() != 2 * n {
        return input(format!("{p} lives on [{}], expected [{}]", p.m(), 2 * n));
    }
    p.check_degree(n.saturating_sub(1))?;
    let mut out = FormalSum::zero();
    for xi in catalan::tc_matchings(n) {
        out.add_term(xi.clone(), beta(&xi)?.get(p));
    }
    Ok(out)
}

/// The partial matchings compatible with `I, J`: `T = I ∩ J` and `τ` a
/// noncrossing matching of `I ∖ J` with `J ∖ I`, every pair meeting both.
pub fn compatible_pairs(n: usize, i: &[usize], j: &[usize]) -> Result<Vec<PartialNcMatching>> {
    check_subset(n, i)?;
    check_subset(n, j)?;
    if has_repeats(i) || has_repeats(j) {
        return Ok(Vec::new());
    }
    let t: Vec<usize> = i.iter().copied().filter(|x| j.contains(x)).collect();
    // +1 for I ∖ J, −1 for J ∖ I, on the circle in increasing order.
    let mut pts: Vec<(usize, i32)> = i
        .iter()
        .filter(|x| !j.contains(x))
        .map(|&x| (x, 1))
        .chain(j.iter().filter(|x| !i.contains(x)).map(|&x| (x, -1)))
        .collect();
    pts.sort_unstable();
    let mut out = Vec::new();
    for pairs in bipartite_nc(&pts) {
        out.push(PartialNcMatching::new(2 * n, pairs, t.clone())?);
    }
    out.sort();
    Ok(out)
}

/// Noncrossing perfect matchings of points in linear order, each pair
/// joining opposite signs.
fn bipartite_nc(pts: &[(usize, i32)]) -> Vec<Vec<(usize, usize)>> {
    if pts.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let (x, sx) = pts[0];
    for k in (1..pts.len()).step_by(2) {
        let (y, sy) = pts[k];
        if sx == sy || pts[1..k].iter().map(|p| p.1).sum::<i32>() != 0 {
            continue;
        }
        for inner in bipartite_nc(&pts[1..k]) {
            for outer in bipartite_nc(&pts[k + 1..]) {
                let mut v = vec![(x, y)];
                v.extend(inner.iter().copied());
                v.extend(outer.iter().copied());
                out.push(v);
            }
        }
    }
    out
}

/// Unordered pair of partitions, smaller first.
fn unordered(s: &NcPartition, t: &NcPartition) -> (NcPartition, NcPartition) {
    if s <= t {
        (s.clone(), t.clone())
    } else {
        (t.clone(), s.clone())
    }
}

/// `Δ_I Δ_J` as a quadratic form over unordered partition pairs.
pub fn delta_delta(n: usize, i: &[usize], j: &[usize]) -> Result<FormalSum<(NcPartition, NcPartition)>> {
    let di = delta(n, i)?;
    let dj = delta(n, j)?;
    let mut out = FormalSum::zero();
    for (s, cs) in di.iter() {
        for (t, ct) in dj.iter() {
            out.add_term(unordered(s, t), cs * ct);
        }
    }
    Ok(out)
}

fn inversions(v: &[usize]) -> usize {
    (0..v.len()).map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count()).sum()
}

/// A swapped pair of subsets `(I′, J′)` with its sign.
pub type Swap = (Vec<usize>, Vec<usize>, i32);

/// The swaps `(I′, J′, sign)` exchanging entries `k, …, n−1` of sorted `I`
/// (1-based positions) with every equally sized subset of sorted `J`, in
/// order; the sign is `(−1)^{a(I′,J′)}`.
pub fn plucker_swaps(n: usize, i: &[usize], j: &[usize], k: usize) -> Result<Vec<Swap>> {
    check_subset(n, i)?;
    check_subset(n, j)?;
    if k == 0 || k > n - 1 {
        return input(format!("swap position k = {k} outside 1..{}", n - 1));
    }
    let mut a = i.to_vec();
    a.sort_unstable();
    let mut b = j.to_vec();
    b.sort_unstable();
    let s = n - k;
    let mut out = Vec::new();
    let len = b.len();
    for mask in 0u64..1 << len {
        if mask.count_ones() as usize != s {
            continue;
        }
        let picked: Vec<usize> = (0..len).filter(|&p| mask >> p & 1 == 1).collect();
        let mut i2 = a.clone();
        let mut j2 = b.clone();
        for (t, &p) in picked.iter().enumerate() {
            std::mem::swap(&mut i2[k - 1 + t], &mut j2[p]);
        }
        let sign = if (inversions(&i2) + inversions(&j2)).is_multiple_of(2) { 1 } else { -1 };
        i2.sort_unstable();
        j2.sort_unstable();
        out.push((i2, j2, sign));
    }
    Ok(out)
}

/// `Δ_I Δ_J − Σ_{I′,J′} (−1)^{a(I′,J′)} Δ_{I′} Δ_{J′}` over unordered
/// partition pairs; vanishes on every network.
pub fn plucker_relation(n: usize, i: &[usize], j: &[usize], k: usize) -> Result<FormalSum<(NcPartition, NcPartition)>> {
    let mut out = delta_delta(n, i, j)?;
    for (i2, j2, sign) in plucker_swaps(n, i, j, k)? {
        out.add_assign_scaled(&delta_delta(n, &i2, &j2)?, &BigInt::from(-sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grove;
    use crate::network::random::{random_network, random_weights};
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn pm(m: usize, pairs: &[(usize, usize)], t: &[usize]) -> PartialNcMatching {
        PartialNcMatching::new(m, pairs.to_vec(), t.to_vec()).unwrap()
    }

    #[test]
    fn concordance_example() {
        let s = NcPartition::new(6, vec![vec![0, 1, 4], vec![2, 3], vec![5]]).unwrap();
        assert!(concordant(&[3, 4, 7, 9, 12], &s).unwrap());
        assert!(!concordant(&[1, 3, 7, 9, 12], &s).unwrap());
        assert!(concordant(&[1, 2], &s).is_err());
    }

    #[test]
    fn upstep_subsets_are_concordant_and_minimal() {
        for n in 1..=5 {
            for path in catalan::dyck_paths(n) {
                let i = catalan::catalan_subset(&path);
                let sigma = catalan::path_to_partition(&path);
                let e = concordant_set(n, &i).unwrap();
                assert!(e.contains(&sigma));
                let min = e
                    .iter()
                    .min_by(|a, b| {
                        let (pa, pb) = (catalan::partition_to_path(a), catalan::partition_to_path(b));
                        catalan::lex_compare(&pa, &pb).unwrap()
                    })
                    .unwrap();
                assert_eq!(min, &sigma);
            }
        }
    }

    #[test]
    fn delta_small() {
        assert!(delta(3, &[2, 2]).unwrap().is_zero());
        let d = delta(2, &[1]).unwrap();
        let keys: Vec<String> = d.keys().map(|k| k.to_string()).collect();
        let brute: Vec<String> = catalan::noncrossing_partitions(2)
            .into_iter()
            .filter(|s| concordant(&[1], s).unwrap())
            .map(|s| s.to_string())
            .collect();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        let mut brute_sorted = brute;
        brute_sorted.sort();
        assert_eq!(keys_sorted, brute_sorted);
    }

    #[test]
    fn beta_of_nested() {
        let single = beta_with(&m("12|34|56"), BetaRule::SingleRepresentative).unwrap();
        assert_eq!(set_notation_sum(&single), "(∅,{2,4})+(∅,{2,6})+(∅,{4,6})");
        assert_eq!(single.to_string(), "1·(tau=;T=2,4) + 1·(tau=;T=2,6) + 1·(tau=;T=4,6)");
        let full = beta(&m("12|34|56")).unwrap();
        assert_eq!(set_notation_sum(&full), "(∅,{2,4})+(∅,{2,6})+(∅,{4,6})+({2,4},{6})+({2,6},{4})+({4,6},{2})");
    }

    #[test]
    fn beta_of_two_crossings() {
        let xi = m("13|25|46");
        assert_eq!(selections(&xi).unwrap().len(), 16);
        let b = beta(&xi).unwrap();
        assert!(b.get(&pm(6, &[(1, 5)], &[6])) >= BigInt::from(1));
        let full = b.iter().any(|(q, c)| q.support() == vec![1, 2, 3, 6] && q.t().is_empty() && *c >= BigInt::from(1));
        assert!(full);
        assert!(b.get(&pm(6, &[], &[3, 6])) >= BigInt::from(2));
        assert!(b.get(&pm(6, &[(2, 6)], &[3])) >= BigInt::from(1));
    }

    #[test]
    fn degree_identity() {
        for n in 1..=4 {
            for xi in catalan::tc_matchings(n) {
                for s in selections(&xi).unwrap() {
                    for rule in [BetaRule::Full, BetaRule::SingleRepresentative] {
                        for q in s.terms(2 * n, rule).unwrap() {
                            assert_eq!(q.degree(), 2 * n - 2, "{xi} {q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partial_matching_text() {
        let q = pm(6, &[(2, 3), (1, 5)], &[6]);
        assert_eq!(q.to_string(), "tau=15,23;T=6");
        assert_eq!(PartialNcMatching::parse(6, "tau=15,23;T=6").unwrap(), q);
        assert_eq!("tau=;T=2,4".parse::<PartialNcMatching>().unwrap().t(), &[2, 4]);
        assert!(PartialNcMatching::new(6, vec![(1, 3), (2, 4)], vec![]).is_err());
        let wide = pm(10, &[(1, 10)], &[]);
        assert_eq!(wide.to_string(), "tau=1-10;T=");
        assert_eq!(PartialNcMatching::parse(10, &wide.to_string()).unwrap(), wide);
    }

    #[test]
    fn f_immanant_reads_beta() {
        let f = f_immanant(&pm(6, &[], &[2, 4]), 3).unwrap();
        assert_eq!(f.get(&m("12|34|56")), BigInt::from(1));
        assert!(f.iter().all(|(_, c)| *c > BigInt::from(0)));
        assert!(f_immanant(&pm(6, &[], &[2]), 3).is_err());
    }

    #[test]
    fn compatible_pairs_examples() {
        let same = compatible_pairs(3, &[1, 2], &[1, 2]).unwrap();
        assert_eq!(same, vec![pm(6, &[], &[1, 2])]);
        let cross = compatible_pairs(3, &[1, 2], &[3, 4]).unwrap();
        assert_eq!(cross, vec![pm(6, &[(1, 4), (2, 3)], &[])]);
    }

    #[test]
    fn delta_products_n3() {
        let tables = ImmanantTables::new(3).unwrap();
        let subsets: Vec<Vec<usize>> = (1..=6).flat_map(|a| (a + 1..=6).map(move |b| vec![a, b])).collect();
        for i in &subsets {
            for j in &subsets {
                assert!(tables.verify_delta_product(i, j).unwrap(), "{i:?} {j:?}");
            }
        }
    }

    #[test]
    fn delta_products_n4_sample() {
        let tables = ImmanantTables::new(4).unwrap();
        let subsets: Vec<Vec<usize>> = (0u32..1 << 8)
            .filter(|mask| mask.count_ones() == 3)
            .map(|mask| (1..=8).filter(|x| mask >> (x - 1) & 1 == 1).collect())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        use rand::Rng;
        for _ in 0..60 {
            let i = &subsets[rng.gen_range(0..subsets.len())];
            let j = &subsets[rng.gen_range(0..subsets.len())];
            assert!(tables.verify_delta_product(i, j).unwrap(), "{i:?} {j:?}");
        }
    }

    #[test]
    fn single_representative_rule_misses_in_block_pairs() {
        let xi = m("12|34|56");
        let p = pm(6, &[(4, 6)], &[2]);
        assert_eq!(compatible_pairs(3, &[2, 4], &[2, 6]).unwrap(), vec![p.clone()]);
        let tables = ImmanantTables::new(3).unwrap();
        assert_eq!(tables.delta_product(&[2, 4], &[2, 6]).unwrap().get(&xi), BigInt::from(1));
        assert_eq!(beta(&xi).unwrap().get(&p), BigInt::from(1));
        assert_eq!(beta_with(&xi, BetaRule::SingleRepresentative).unwrap().get(&p), BigInt::from(0));
    }

    #[test]
    fn plucker_example_terms() {
        let swaps = plucker_swaps(4, &[1, 2, 5], &[1, 3, 4], 3).unwrap();
        let nonzero: Vec<(Vec<usize>, Vec<usize>, i32)> =
            swaps.into_iter().filter(|(a, b, _)| !has_repeats(a) && !has_repeats(b)).collect();
        assert_eq!(nonzero, vec![(vec![1, 2, 3], vec![1, 4, 5], -1), (vec![1, 2, 4], vec![1, 3, 5], 1)]);
    }

    #[test]
    fn plucker_relations_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 3..=4 {
            let subsets: Vec<Vec<usize>> = (0u32..1 << (2 * n))
                .filter(|mask| mask.count_ones() as usize == n - 1)
                .map(|mask| (1..=2 * n).filter(|x| mask >> (x - 1) & 1 == 1).collect())
                .collect();
            for _ in 0..3 {
                let net = random_network(&mut rng, n, 5);
                let w = random_weights(&mut rng, &net);
                let l = grove::measurement_values(&net, &w).unwrap();
                let zero = BigRational::zero();
                for i in subsets.iter().step_by(3) {
                    for j in subsets.iter().step_by(2) {
                        for k in 1..n {
                            let r = plucker_relation(n, i, j, k).unwrap();
                            let v: BigRational = r
                                .iter()
                                .map(|((s, t), c)| {
                                    BigRational::from_integer(c.clone())
                                        * l.get(s).unwrap_or(&zero)
                                        * l.get(t).unwrap_or(&zero)
                                })
                                .sum();
                            assert!(v.is_zero(), "{i:?} {j:?} {k}");
                        }
                    }
                }
            }
        }
    }
}
