//! Catalan objects: Dyck paths, matchings on `[2n]`, noncrossing partitions,
//! the bijections between them, the two path orders, dual partitions and
//! Catalan subsets.
//!
//! Indices are 0-based internally; every string form is 1-based.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;

use crate::error::{input, Error, Result};

/// A lattice path of `U` and `D` steps that never goes below the axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    /// `true` for an up step. The derived order is lex order on `v(P)`.
    steps: Vec<bool>,
}

impl DyckPath {
    pub fn new(steps: Vec<bool>) -> Result<Self> {
        if !steps.len().is_multiple_of(2) || steps.is_empty() {
            return input(format!("path of length {} is not a nonempty even length", steps.len()));
        }
        let mut h: i64 = 0;
        for &s in &steps {
            h += if s { 1 } else { -1 };
            if h < 0 {
                return input("path goes below the axis");
            }
        }
        if h != 0 {
            return input("path does not end on the axis");
        }
        Ok(DyckPath { steps })
    }

    /// `UDUD…UD`, the bottom element of the height order.
    pub fn minimal(n: usize) -> Self {
        DyckPath { steps: (0..2 * n).map(|i| i % 2 == 0).collect() }
    }

    /// `U^n D^n`.
    pub fn maximal(n: usize) -> Self {
        DyckPath { steps: (0..2 * n).map(|i| i < n).collect() }
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    /// Heights at x = 0..=2n.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = 0;
        h.push(0);
        for &s in &self.steps {
            cur += if s { 1 } else { -1 };
            h.push(cur);
        }
        h
    }

    /// Weakly below in every coordinate.
    pub fn is_below(&self, other: &DyckPath) -> bool {
        self.steps.len() == other.steps.len()
            && self.heights().iter().zip(other.heights()).all(|(a, b)| *a <= b)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.steps {
            f.write_str(if s { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' | '1' => Ok(true),
                'D' | 'd' | '0' => Ok(false),
                _ => input(format!("bad step {c:?} in Dyck path")),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// A perfect matching on the points `0..2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    pub fn new(partner: Vec<usize>) -> Result<Self> {
        let m = partner.len();
        if !m.is_multiple_of(2) {
            return input("matching on an odd number of points");
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= m || j == i || partner[j] != i {
                return input(format!("partner array is not a fixed-point-free involution at {}", i + 1));
            }
        }
        Ok(Matching { partner })
    }

    /// Builds a matching on `points` points from 0-based pairs.
    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; points];
        for &(a, b) in pairs {
            if a >= points || b >= points || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return input("pairs do not form a matching");
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return input("pairs leave points unmatched");
        }
        Matching::new(partner)
    }

    /// `{(1,2),(3,4),…}`.
    pub fn trivial(n: usize) -> Self {
        Matching { partner: (0..2 * n).map(|i| i ^ 1).collect() }
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len()).filter(|&i| i < self.partner[i]).map(|i| (i, self.partner[i])).collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let pairs = self.pairs();
        for (x, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[x + 1..] {
                if a < c && c < b && b < d {
                    return false;
                }
            }
        }
        true
    }

    /// Relabels every point `k` as `k + shift` modulo `2n`.
    pub fn rotate(&self, shift: isize) -> Matching {
        let m = self.partner.len() as isize;
        let f = |k: usize| ((k as isize + shift).rem_euclid(m)) as usize;
        let mut partner = vec![0; self.partner.len()];
        for (i, &j) in self.partner.iter().enumerate() {
            partner[f(i)] = f(j);
        }
        Matching { partner }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n() >= 5;
        let parts: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| if wide { format!("{},{}", a + 1, b + 1) } else { format!("{}{}", a + 1, b + 1) })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl FromStr for Matching {
    type Err = Error;
    /// Accepts `"15|26|34"`, `"1,5|2,6|3,4"` and `"{(1,5),(2,6),(3,4)}"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        let mut pairs = Vec::new();
        if s.starts_with('(') {
            for chunk in s.split(')').map(|c| c.trim_start_matches([',', ' ', '('])).filter(|c| !c.trim().is_empty()) {
                let nums: Vec<usize> = chunk.split(',').map(|t| parse_label(t.trim())).collect::<Result<_>>()?;
                if nums.len() != 2 {
                    return input(format!("matching pair {chunk:?} does not have two endpoints"));
                }
                pairs.push((nums[0], nums[1]));
            }
            return Matching::from_pairs(2 * pairs.len(), &pairs);
        }
        for chunk in s.split('|') {
            let chunk = chunk.trim().trim_start_matches('(').trim_end_matches(')');
            let nums: Vec<usize> = if chunk.contains(',') {
                chunk.split(',').map(|t| parse_label(t.trim())).collect::<Result<_>>()?
            } else {
                chunk.chars().map(|c| parse_label(&c.to_string())).collect::<Result<_>>()?
            };
            if nums.len() != 2 {
                return input(format!("matching pair {chunk:?} does not have two endpoints"));
            }
            pairs.push((nums[0], nums[1]));
        }
        Matching::from_pairs(2 * pairs.len(), &pairs)
    }
}

fn parse_label(t: &str) -> Result<usize> {
    match t.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => input(format!("bad label {t:?}")),
    }
}

/// A noncrossing set partition of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NcPartition {
    /// Normalizes and validates the blocks.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return input("empty block in partition");
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= n || seen[x] {
                    return input(format!("partition blocks do not cover 1..{n} exactly once"));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return input(format!("partition blocks do not cover 1..{n}"));
        }
        blocks.sort();
        let p = NcPartition { n, blocks };
        if !p.is_noncrossing() {
            return input(format!("partition {p} is crossing"));
        }
        Ok(p)
    }

    pub fn discrete(n: usize) -> Self {
        NcPartition { n, blocks: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn full(n: usize) -> Self {
        NcPartition { n, blocks: vec![(0..n).collect()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every element.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                idx[x] = k;
            }
        }
        idx
    }

    fn is_noncrossing(&self) -> bool {
        let idx = self.block_index();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if idx[a] == idx[b] {
                    continue;
                }
                for c in b + 1..self.n {
                    if idx[c] != idx[a] {
                        continue;
                    }
                    for d in c + 1..self.n {
                        if idx[d] == idx[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &NcPartition) -> bool {
        let idx = other.block_index();
        self.blocks.iter().all(|b| b.iter().all(|&x| idx[x] == idx[b[0]]))
    }

    /// Relabels `i` as `i + shift` modulo `n`.
    pub fn rotate(&self, shift: isize) -> NcPartition {
        let n = self.n as isize;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| ((x as isize + shift).rem_euclid(n)) as usize).collect())
            .collect();
        NcPartition::new(self.n, blocks).expect("rotation preserves noncrossing partitions")
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n >= 10 { "," } else { "" };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl FromStr for NcPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return input("empty partition string");
        }
        let mut blocks = Vec::new();
        for chunk in s.split('|') {
            let chunk = chunk.trim();
            let b: Vec<usize> = if chunk.contains(',') {
                chunk.split(',').map(|t| parse_label(t.trim())).collect::<Result<_>>()?
            } else {
                chunk.chars().map(|c| parse_label(&c.to_string())).collect::<Result<_>>()?
            };
            blocks.push(b);
        }
        let n = blocks.iter().map(|b| b.len()).sum();
        NcPartition::new(n, blocks)
    }
}

/// A chain `P_1 ≤ … ≤ P_d` in the height order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathChain(pub Vec<DyckPath>);

impl fmt::Display for PathChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Any object produced by [`enumerate`] or [`convert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalanObject {
    Dyck(DyckPath),
    Matching(Matching),
    Partition(NcPartition),
    Chain(PathChain),
}

impl fmt::Display for CatalanObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalanObject::Dyck(p) => p.fmt(f),
            CatalanObject::Matching(m) => m.fmt(f),
            CatalanObject::Partition(p) => p.fmt(f),
            CatalanObject::Chain(c) => c.fmt(f),
        }
    }
}

/// What [`enumerate`] lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Dyck,
    Ncm,
    Ncp,
    Matchings,
    Tc,
    Chains(usize),
}

impl Kind {
    /// Parses a kind name; `chains` takes its length from `d`.
    pub fn parse(name: &str, d: Option<usize>) -> Result<Kind> {
        Ok(match name {
            "dyck" => Kind::Dyck,
            "ncm" => Kind::Ncm,
            "ncp" => Kind::Ncp,
            "matchings" => Kind::Matchings,
            "tc" => Kind::Tc,
            "chains" => Kind::Chains(d.ok_or_else(|| Error::Input("chains needs a length d".into()))?),
            _ => return input(format!("unknown kind {name:?}")),
        })
    }
}

pub fn catalan_number(n: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// All Dyck paths of semilength `n` in lex order of `v(P)`.
pub fn dyck_paths(n: usize) -> Vec<DyckPath> {
    fn rec(steps: &mut Vec<bool>, ups: usize, downs: usize, n: usize, out: &mut Vec<DyckPath>) {
        if steps.len() == 2 * n {
            out.push(DyckPath { steps: steps.clone() });
            return;
        }
        if downs < ups {
            steps.push(false);
            rec(steps, ups, downs + 1, n, out);
            steps.pop();
        }
        if ups < n {
            steps.push(true);
            rec(steps, ups + 1, downs, n, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(2 * n), 0, 0, n, &mut out);
    out
}

/// All perfect matchings on `2n` points, sorted by partner array.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    fn rec(partner: &mut Vec<usize>, out: &mut Vec<Matching>) {
        let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(Matching { partner: partner.clone() });
            return;
        };
        for j in i + 1..partner.len() {
            if partner[j] == usize::MAX {
                partner[i] = j;
                partner[j] = i;
                rec(partner, out);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; 2 * n], &mut out);
    out.sort();
    out
}

pub fn noncrossing_matchings(n: usize) -> Vec<Matching> {
    let mut v: Vec<Matching> = dyck_paths(n).iter().map(path_to_matching).collect();
    v.sort();
    v
}

pub fn noncrossing_partitions(n: usize) -> Vec<NcPartition> {
    let mut v: Vec<NcPartition> = dyck_paths(n).iter().map(path_to_partition).collect();
    v.sort();
    v
}

/// 3-noncrossing matchings on `2n` points, sorted by partner array.
pub fn tc_matchings(n: usize) -> Vec<Matching> {
    all_matchings(n).into_iter().filter(|m| crate::crossings::is_k_noncrossing(m, 3)).collect()
}

/// All chains of length `d` in lex order of the tuple of paths.
pub fn chains(n: usize, d: usize) -> Vec<PathChain> {
    let paths = dyck_paths(n);
    let mut out = Vec::new();
    fn rec(paths: &[DyckPath], cur: &mut Vec<usize>, d: usize, out: &mut Vec<PathChain>) {
        if cur.len() == d {
            out.push(PathChain(cur.iter().map(|&i| paths[i].clone()).collect()));
            return;
        }
        for i in 0..paths.len() {
            if let Some(&last) = cur.last() {
                if !paths[last].is_below(&paths[i]) {
                    continue;
                }
            }
            cur.push(i);
            rec(paths, cur, d, out);
            cur.pop();
        }
    }
    rec(&paths, &mut Vec::new(), d, &mut out);
    out
}

pub fn enumerate(n: usize, kind: Kind) -> Result<Vec<CatalanObject>> {
    if n == 0 {
        return input("n must be at least 1");
    }
    Ok(match kind {
        Kind::Dyck => dyck_paths(n).into_iter().map(CatalanObject::Dyck).collect(),
        Kind::Ncm => noncrossing_matchings(n).into_iter().map(CatalanObject::Matching).collect(),
        Kind::Ncp => noncrossing_partitions(n).into_iter().map(CatalanObject::Partition).collect(),
        Kind::Matchings => all_matchings(n).into_iter().map(CatalanObject::Matching).collect(),
        Kind::Tc => tc_matchings(n).into_iter().map(CatalanObject::Matching).collect(),
        Kind::Chains(d) => chains(n, d).into_iter().map(CatalanObject::Chain).collect(),
    })
}

/// Pairs each up step with the down step that returns to its height.
pub fn path_to_matching(p: &DyckPath) -> Matching {
    let mut partner = vec![0; p.steps.len()];
    let mut stack = Vec::new();
    for (i, &up) in p.steps.iter().enumerate() {
        if up {
            stack.push(i);
        } else {
            let j = stack.pop().expect("Dyck path invariant");
            partner[i] = j;
            partner[j] = i;
        }
    }
    Matching { partner }
}

/// Left endpoints become up steps.
pub fn matching_to_path(m: &Matching) -> Result<DyckPath> {
    if !m.is_noncrossing() {
        return input(format!("matching {m} is crossing"));
    }
    Ok(DyckPath { steps: (0..m.points()).map(|i| m.partner[i] > i).collect() })
}

/// Groups the given gaps by the region of the (noncrossing) strand diagram
/// containing them. Gap `g` lies between points `g` and `g + 1`; the last gap
/// is the outer one.
fn gap_classes(m: &Matching, gaps: &[usize]) -> Vec<Vec<usize>> {
    let pairs = m.pairs();
    let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (k, &g) in gaps.iter().enumerate() {
        let sig: Vec<bool> = pairs.iter().map(|&(a, b)| a <= g && g < b).collect();
        classes.entry(sig).or_default().push(k);
    }
    classes.into_values().collect()
}

/// Region reading: label `ī` sits between points `2i-1` and `2i`.
pub fn matching_to_partition(m: &Matching) -> Result<NcPartition> {
    if !m.is_noncrossing() {
        return input(format!("matching {m} is crossing"));
    }
    let gaps: Vec<usize> = (0..m.n()).map(|i| 2 * i).collect();
    NcPartition::new(m.n(), gap_classes(m, &gaps))
}

/// Removes interval parts one at a time, leftmost first.
pub fn partition_to_matching(s: &NcPartition) -> Matching {
    let mut remaining: Vec<usize> = (0..s.n).collect();
    let mut blocks: Vec<Vec<usize>> = s.blocks.clone();
    let mut partner = vec![0; 2 * s.n];
    while !blocks.is_empty() {
        let pos = |x: usize| remaining.binary_search(&x).expect("element still present");
        let (bi, _) = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| pos(*b.last().unwrap()) - pos(b[0]) + 1 == b.len())
            .min_by_key(|(_, b)| b[0])
            .expect("a noncrossing partition always has an interval part");
        let b = blocks.remove(bi);
        let first = 2 * b[0];
        let last = 2 * b[b.len() - 1] + 1;
        partner[first] = last;
        partner[last] = first;
        for w in b.windows(2) {
            partner[2 * w[0] + 1] = 2 * w[1];
            partner[2 * w[1]] = 2 * w[0] + 1;
        }
        remaining.retain(|x| !b.contains(x));
    }
    Matching { partner }
}

/// Lattice labeling: `ī` is the point at x = 2i−1; two labels share a part
/// when they sit at one height and the path stays weakly above it between them.
pub fn path_to_partition(p: &DyckPath) -> NcPartition {
    let n = p.semilength();
    let h = p.heights();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        let hi = h[2 * i + 1];
        let mut lowest = hi;
        for j in i + 1..n {
            lowest = h[2 * i + 1..=2 * j + 1].iter().fold(lowest, |a, &b| a.min(b));
            if lowest < hi {
                break;
            }
            if h[2 * j + 1] == hi {
                uf.union(i, j);
                break;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    NcPartition::new(n, groups.into_values().collect()).expect("lattice labeling is noncrossing")
}

/// Recursive construction: the part of the first label is drawn at height 1
/// and the sub-partitions between its elements are raised by one.
pub fn partition_to_path(s: &NcPartition) -> DyckPath {
    let idx = s.block_index();
    fn rec(s: &NcPartition, idx: &[usize], lo: usize, hi: usize, out: &mut Vec<bool>) {
        if lo >= hi {
            return;
        }
        let block: Vec<usize> = s.blocks[idx[lo]].iter().copied().filter(|&x| x >= lo && x < hi).collect();
        out.push(true);
        for w in block.windows(2) {
            out.push(true);
            rec(s, idx, w[0] + 1, w[1], out);
            out.push(false);
        }
        out.push(false);
        rec(s, idx, block[block.len() - 1] + 1, hi, out);
    }
    let mut steps = Vec::with_capacity(2 * s.n);
    rec(s, &idx, 0, s.n, &mut steps);
    DyckPath { steps }
}

/// The dual partition on the labels `ĩ` placed between `ī` and `(i+1)‾`.
pub fn dual_partition(s: &NcPartition) -> NcPartition {
    let m = partition_to_matching(s);
    let gaps: Vec<usize> = (0..s.n).map(|i| 2 * i + 1).collect();
    NcPartition::new(s.n, gap_classes(&m, &gaps)).expect("dual of a noncrossing partition")
}

/// Target of [`convert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Dyck,
    Ncm,
    Ncp,
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dyck" => Ok(Target::Dyck),
            "ncm" => Ok(Target::Ncm),
            "ncp" => Ok(Target::Ncp),
            _ => input(format!("unknown conversion target {s:?}")),
        }
    }
}

pub fn convert(x: &CatalanObject, target: Target) -> Result<CatalanObject> {
    Ok(match (x, target) {
        (CatalanObject::Dyck(p), Target::Dyck) => CatalanObject::Dyck(p.clone()),
        (CatalanObject::Dyck(p), Target::Ncm) => CatalanObject::Matching(path_to_matching(p)),
        (CatalanObject::Dyck(p), Target::Ncp) => CatalanObject::Partition(path_to_partition(p)),
        (CatalanObject::Matching(m), Target::Dyck) => CatalanObject::Dyck(matching_to_path(m)?),
        (CatalanObject::Matching(m), Target::Ncm) => {
            if !m.is_noncrossing() {
                return input(format!("matching {m} is crossing"));
            }
            CatalanObject::Matching(m.clone())
        }
        (CatalanObject::Matching(m), Target::Ncp) => CatalanObject::Partition(matching_to_partition(m)?),
        (CatalanObject::Partition(s), Target::Dyck) => CatalanObject::Dyck(partition_to_path(s)),
        (CatalanObject::Partition(s), Target::Ncm) => CatalanObject::Matching(partition_to_matching(s)),
        (CatalanObject::Partition(s), Target::Ncp) => CatalanObject::Partition(s.clone()),
        (CatalanObject::Chain(_), _) => return input("chains have no conversion"),
    })
}

/// Verdict of the height order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathOrder {
    Below,
    Above,
    Equal,
    Incomparable,
}

pub fn compare(p: &DyckPath, q: &DyckPath) -> Result<PathOrder> {
    if p.semilength() != q.semilength() {
        return input("paths of different semilength");
    }
    let (hp, hq) = (p.heights(), q.heights());
    let le = hp.iter().zip(&hq).all(|(a, b)| a <= b);
    let ge = hp.iter().zip(&hq).all(|(a, b)| a >= b);
    Ok(match (le, ge) {
        (true, true) => PathOrder::Equal,
        (true, false) => PathOrder::Below,
        (false, true) => PathOrder::Above,
        (false, false) => PathOrder::Incomparable,
    })
}

/// Lex order on `v(P)` with `U = 1`.
pub fn lex_compare(p: &DyckPath, q: &DyckPath) -> Result<Ordering> {
    if p.semilength() != q.semilength() {
        return input("paths of different semilength");
    }
    Ok(p.cmp(q))
}

/// `I(P)`: one less than each up-step position after the first (1-based).
pub fn catalan_subset(p: &DyckPath) -> Vec<usize> {
    p.steps.iter().enumerate().skip(1).filter(|(_, &u)| u).map(|(i, _)| i).collect()
}

/// `a_i ≤ 2i` for the sorted entries of an `(n−1)`-subset of `[2n]`.
pub fn is_catalan_subset(n: usize, subset: &[usize]) -> bool {
    if n == 0 || subset.len() != n - 1 {
        return false;
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] < w[1])
        && s.iter().all(|&a| a >= 1 && a <= 2 * n)
        && s.iter().enumerate().all(|(i, &a)| a <= 2 * (i + 1))
}

pub fn path_of_subset(n: usize, subset: &[usize]) -> Result<DyckPath> {
    if !is_catalan_subset(n, subset) {
        return input(format!("{subset:?} is not a Catalan subset for n = {n}"));
    }
    let mut steps = vec![false; 2 * n];
    steps[0] = true;
    for &a in subset {
        steps[a] = true;
    }
    DyckPath::new(steps)
}
