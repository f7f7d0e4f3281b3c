//! Crossings of matchings, the RSK map to pairs of nested Dyck paths, and
//! planar crossing resolutions with loop detection.

use num_rational::Ratio;
use petgraph::unionfind::UnionFind;

use crate::catalan::{self, DyckPath, Matching, PathOrder};
use crate::error::{input, internal, Result};

/// A crossing `(a, b, c, d)` with `a < b < c < d` and `(a,c), (b,d)` paired.
pub type Quad = (usize, usize, usize, usize);

/// All crossings of `m`, sorted.
pub fn crossings(m: &Matching) -> Vec<Quad> {
    let pairs = m.pairs();
    let mut out = Vec::new();
    for (x, &(a, c)) in pairs.iter().enumerate() {
        for &(b, d) in &pairs[x + 1..] {
            if b < c && c < d {
                out.push((a, b, c, d));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether no `k` pairs of `m` cross pairwise.
pub fn is_k_noncrossing(m: &Matching, k: usize) -> bool {
    let pairs = m.pairs();
    let cross = |x: usize, y: usize| {
        let ((a, b), (c, d)) = (pairs[x], pairs[y]);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    fn grow(clique: &mut Vec<usize>, start: usize, k: usize, np: usize, cross: &dyn Fn(usize, usize) -> bool) -> bool {
        if clique.len() == k {
            return true;
        }
        for y in start..np {
            if clique.iter().all(|&x| cross(x, y)) {
                clique.push(y);
                if grow(clique, y + 1, k, np, cross) {
                    return true;
                }
                clique.pop();
            }
        }
        false
    }
    k == 0 || !grow(&mut Vec::new(), 0, k, pairs.len(), &cross)
}

/// Two-row tableau used by the RSK map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    fn insert(&mut self, mut x: usize) {
        for row in self.rows.iter_mut() {
            match row.iter().position(|&y| y > x) {
                Some(p) => x = std::mem::replace(&mut row[p], x),
                None => {
                    row.push(x);
                    return;
                }
            }
        }
        self.rows.push(vec![x]);
    }

    fn delete_max(&mut self, x: usize) -> Result<()> {
        for r in (0..self.rows.len()).rev() {
            if self.rows[r].last() == Some(&x) {
                self.rows[r].pop();
                if self.rows[r].is_empty() {
                    self.rows.truncate(r);
                }
                return Ok(());
            }
        }
        internal(format!("value {} is not a removable corner", x + 1))
    }

    fn shape(&self) -> (i64, i64) {
        let len = |r: usize| self.rows.get(r).map_or(0, |row| row.len() as i64);
        (len(0), len(1))
    }
}

/// RSK map: scanning `j = 2n … 1`, insert the left partner at a right
/// endpoint and delete `j` at a left endpoint; the shapes `(x_j, y_j)` give
/// the heights `x_j − y_j` and `x_j + y_j` of the two paths.
pub fn phi_rsk(m: &Matching) -> Result<(DyckPath, DyckPath)> {
    let pts = m.points();
    let mut low = vec![0i64; pts + 1];
    let mut high = vec![0i64; pts + 1];
    let mut t = Tableau::default();
    for j in (0..pts).rev() {
        let i = m.partner(j);
        if i < j {
            t.insert(i);
        } else {
            t.delete_max(j)?;
        }
        if t.rows.len() > 2 {
            return input(format!("matching {m} is not 3-noncrossing (tableau grew a third row)"));
        }
        let (x, y) = t.shape();
        low[j] = x - y;
        high[j] = x + y;
    }
    Ok((path_from_heights(&low)?, path_from_heights(&high)?))
}

fn path_from_heights(h: &[i64]) -> Result<DyckPath> {
    DyckPath::new(h.windows(2).map(|w| w[1] > w[0]).collect())
}

/// Semicircle drawing of a matching: every arc split into segments at its
/// crossings, ordered by exact abscissa.
#[derive(Clone, Debug)]
pub struct ArcDiagram {
    pub quads: Vec<Quad>,
    /// Crossing indices along each arc (keyed by the arc's left endpoint),
    /// left to right.
    pub along: Vec<Vec<usize>>,
    /// First segment id of each arc (keyed by left endpoint).
    seg_base: Vec<usize>,
    num_segments: usize,
}

impl ArcDiagram {
    pub fn new(m: &Matching) -> Self {
        let quads = crossings(m);
        let pts = m.points();
        let mut along: Vec<Vec<usize>> = vec![Vec::new(); pts];
        for (q, &(a, b, _, _)) in quads.iter().enumerate() {
            along[a].push(q);
            along[b].push(q);
        }
        let abscissa = |q: usize| {
            let (a, b, c, d) = quads[q];
            // Radical axis of the two semicircles: x = (ac − bd) / ((a+c) − (b+d)).
            let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
            Ratio::new(a * c - b * d, (a + c) - (b + d))
        };
        for list in along.iter_mut() {
            list.sort_by(|&x, &y| abscissa(x).cmp(&abscissa(y)).then(x.cmp(&y)));
        }
        let mut seg_base = vec![usize::MAX; pts];
        let mut next = 0;
        for (a, _) in m.pairs() {
            seg_base[a] = next;
            next += along[a].len() + 1;
        }
        ArcDiagram { quads, along, seg_base, num_segments: next }
    }

    /// Segment of arc `left` entering (`side = 0`) or leaving (`side = 1`) crossing `q`.
    fn segment(&self, left: usize, q: usize, side: usize) -> usize {
        let pos = self.along[left].iter().position(|&x| x == q).expect("crossing lies on arc");
        self.seg_base[left] + pos + side
    }
}

/// Smooths every crossing `x = (a,b,c,d)`: bit 0 joins a–b and c–d, bit 1
/// joins a–d and b–c. Returns the boundary matching and the number of closed
/// components.
pub fn resolve(m: &Matching, v: &[bool]) -> Result<(Matching, usize)> {
    let diagram = ArcDiagram::new(m);
    resolve_with(m, &diagram, v)
}

pub fn resolve_with(m: &Matching, diagram: &ArcDiagram, v: &[bool]) -> Result<(Matching, usize)> {
    if v.len() != diagram.quads.len() {
        return input(format!("resolution vector has {} bits for {} crossings", v.len(), diagram.quads.len()));
    }
    let mut uf = UnionFind::<usize>::new(diagram.num_segments);
    for (q, &(a, b, _, _)) in diagram.quads.iter().enumerate() {
        let (in1, out1) = (diagram.segment(a, q, 0), diagram.segment(a, q, 1));
        let (in2, out2) = (diagram.segment(b, q, 0), diagram.segment(b, q, 1));
        if v[q] {
            uf.union(in1, out2);
            uf.union(out1, in2);
        } else {
            uf.union(in1, in2);
            uf.union(out1, out2);
        }
    }
    let pts = m.points();
    let terminal_segment = |p: usize| {
        let left = p.min(m.partner(p));
        if p == left {
            diagram.seg_base[left]
        } else {
            diagram.seg_base[left] + diagram.along[left].len()
        }
    };
    let mut owner = vec![usize::MAX; diagram.num_segments];
    let mut partner = vec![usize::MAX; pts];
    for p in 0..pts {
        let root = uf.find(terminal_segment(p));
        if owner[root] == usize::MAX {
            owner[root] = p;
        } else {
            let o = owner[root];
            partner[o] = p;
            partner[p] = o;
        }
    }
    let loops = (0..diagram.num_segments).filter(|&s| uf.find(s) == s && owner[s] == usize::MAX).count();
    Ok((Matching::new(partner)?, loops))
}

/// `(M(0), M(1))` read as Dyck paths.
pub fn phi_resolution(m: &Matching) -> Result<(DyckPath, DyckPath)> {
    let diagram = ArcDiagram::new(m);
    let k = diagram.quads.len();
    let (m0, _) = resolve_with(m, &diagram, &vec![false; k])?;
    let (m1, _) = resolve_with(m, &diagram, &vec![true; k])?;
    Ok((catalan::matching_to_path(&m0)?, catalan::matching_to_path(&m1)?))
}

/// Exhaustive search over `TC_n` for the preimage of a nested pair.
pub fn phi_inverse(p1: &DyckPath, p2: &DyckPath) -> Result<Matching> {
    if !matches!(catalan::compare(p1, p2)?, PathOrder::Below | PathOrder::Equal) {
        return input("phi_inverse needs P1 ≤ P2");
    }
    let n = p1.semilength();
    if n > 6 {
        return input("phi_inverse searches exhaustively and is limited to n ≤ 6");
    }
    for m in catalan::tc_matchings(n) {
        let (a, b) = phi_rsk(&m)?;
        if &a == p1 && &b == p2 {
            return Ok(m);
        }
    }
    internal("no preimage found for a nested pair")
}

/// `M(v) ≤ M(1)` for every `v`, with equality only at `v = 1`.
pub fn max_resolution_check(m: &Matching) -> Result<bool> {
    let diagram = ArcDiagram::new(m);
    let k = diagram.quads.len();
    let top = catalan::matching_to_path(&resolve_with(m, &diagram, &vec![true; k])?.0)?;
    for mask in 0u64..(1u64 << k) {
        let v: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        let p = catalan::matching_to_path(&resolve_with(m, &diagram, &v)?.0)?;
        let ord = catalan::compare(&p, &top)?;
        let all_ones = mask + 1 == 1u64 << k;
        let ok = if all_ones { ord == PathOrder::Equal } else { ord == PathOrder::Below };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }
    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }
    const FIG: &str = "1,8|2,4|3,10|5,9|6,7";

    #[test]
    fn crossing_sets() {
        assert_eq!(crossings(&m("14|25|36")).len(), 3);
        assert!(!is_k_noncrossing(&m("14|25|36"), 3));
        assert!(crossings(&m("12|34|56")).is_empty());
        assert!(is_k_noncrossing(&m("12|34|56"), 2));
        assert!(is_k_noncrossing(&m(FIG), 3));
        assert!(!is_k_noncrossing(&m(FIG), 2));
    }

    #[test]
    fn rsk_figure() {
        let (p1, p2) = phi_rsk(&m(FIG)).unwrap();
        assert_eq!(p1, d("UUDDUUDUDD"));
        assert_eq!(p2, d("UUUDUUDDDD"));
        assert!(phi_rsk(&m("14|25|36")).is_err());
    }

    #[test]
    fn rsk_figure_tableaux() {
        // ∅, 1, 12, 12/3, 1/3, 15/3, 156/3, 15/3, 35, 3, ∅ for T_0 … T_10.
        let mm = m(FIG);
        let mut t = Tableau::default();
        let mut seen = vec![t.clone()];
        for j in (0..10).rev() {
            let i = mm.partner(j);
            if i < j {
                t.insert(i);
            } else {
                t.delete_max(j).unwrap();
            }
            seen.push(t.clone());
        }
        let render = |t: &Tableau| {
            t.rows.iter().map(|r| r.iter().map(|x| (x + 1).to_string()).collect::<String>()).collect::<Vec<_>>().join("/")
        };
        let got: Vec<String> = seen.iter().rev().map(render).collect();
        assert_eq!(got, vec!["", "1", "12", "12/3", "1/3", "15/3", "156/3", "15/3", "35", "3", ""]);
    }

    #[test]
    fn resolution_figure() {
        let mm = m(FIG);
        let k = crossings(&mm).len();
        assert_eq!(resolve(&mm, &vec![false; k]).unwrap(), (m("1,4|2,3|5,10|6,7|8,9"), 0));
        assert_eq!(resolve(&mm, &vec![true; k]).unwrap(), (m("1,10|2,9|3,4|5,8|6,7"), 0));
        assert_eq!(phi_resolution(&mm).unwrap(), phi_rsk(&mm).unwrap());
    }

    #[test]
    fn noncrossing_cases() {
        for mm in catalan::noncrossing_matchings(4) {
            assert_eq!(resolve(&mm, &[]).unwrap(), (mm.clone(), 0));
            let p = catalan::matching_to_path(&mm).unwrap();
            assert_eq!(phi_rsk(&mm).unwrap(), (p.clone(), p.clone()));
            assert_eq!(phi_inverse(&p, &p).unwrap(), mm);
            assert!(max_resolution_check(&mm).unwrap());
        }
    }

    #[test]
    fn two_crossing_arcs() {
        let mm = m("13|24");
        assert_eq!(resolve(&mm, &[false]).unwrap().0, m("12|34"));
        assert_eq!(resolve(&mm, &[true]).unwrap().0, m("14|23"));
        assert!(max_resolution_check(&mm).unwrap());
    }

    #[test]
    fn loops_are_counted() {
        // Three arcs in a row crossing consecutively: the middle smoothing can close a loop.
        let mm = m("1,4|2,6|3,8|5,7");
        let k = crossings(&mm).len();
        let mut any_loop = false;
        for mask in 0..(1u32 << k) {
            let v: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            let (r, loops) = resolve(&mm, &v).unwrap();
            assert!(r.is_noncrossing());
            any_loop |= loops > 0;
        }
        assert!(any_loop);
    }

    #[test]
    fn rsk_equals_resolution_and_inverse_at_four() {
        let tc = catalan::tc_matchings(4);
        assert_eq!(tc.len(), 84);
        let mut images = std::collections::BTreeSet::new();
        for mm in &tc {
            let pair = phi_rsk(mm).unwrap();
            assert_eq!(phi_resolution(mm).unwrap(), pair);
            assert!(pair.0.is_below(&pair.1));
            assert_eq!(&phi_inverse(&pair.0, &pair.1).unwrap(), mm);
            images.insert(pair);
        }
        assert_eq!(images.len(), 84);
        assert_eq!(
            phi_inverse(&d("UUDDUUDUDD"), &d("UUUDUUDDDD")).unwrap(),
            m(FIG)
        );
    }

    #[test]
    fn max_resolution_on_tc3() {
        for mm in catalan::tc_matchings(3) {
            assert!(max_resolution_check(&mm).unwrap());
        }
    }

    proptest! {
        #[test]
        fn resolutions_are_noncrossing_and_keep_top_endpoints(idx in 0usize..84, mask in 0u64..64) {
            let mm = catalan::tc_matchings(4)[idx].clone();
            let k = crossings(&mm).len();
            let v: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            let (r, _) = resolve(&mm, &v).unwrap();
            prop_assert!(r.is_noncrossing());
            let (top, _) = resolve(&mm, &vec![true; k]).unwrap();
            for p in 0..mm.points() {
                prop_assert_eq!(top.partner(p) > p, mm.partner(p) > p);
            }
        }
    }
}
