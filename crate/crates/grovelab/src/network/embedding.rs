//! Rotation systems on a cactus: every vertex carries a clockwise cyclic list
//! of darts, and boundary vertices additionally carry one marker per boundary
//! label. A marker stands for the outside of the disk at that label.

use petgraph::unionfind::UnionFind;

use crate::error::{input, Result};

/// One entry of a rotation list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    /// Dart `2e + k` sits at end `k` of edge `e`.
    Dart(usize),
    /// Boundary label (0-based).
    Marker(usize),
}

/// One step of a face walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Leave along this dart.
    Dart(usize),
    /// Follow the boundary arc from label `m` to label `m + 1`.
    Arc(usize),
}

/// A face walked with the face on the right, i.e. clockwise around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<Step>,
    /// `(vertex, position)` of the item each step leaves by. The face
    /// occupies the corner just after that position.
    pub corners: Vec<(usize, usize)>,
}

impl Face {
    pub fn arcs(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Arc(m) => Some(*m),
            Step::Dart(_) => None,
        })
    }

    pub fn darts(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Dart(d) => Some(*d),
            Step::Arc(_) => None,
        })
    }
}

pub fn twin(d: usize) -> usize {
    d ^ 1
}

/// Direction of travel around a vertex while tracing a medial wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    /// Clockwise, toward the item after the corner.
    Fwd,
    /// Counterclockwise, toward the item before the corner.
    Bwd,
}

/// A medial wire: the edges it crosses in order, and its terminals (0-based)
/// unless it is closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wire {
    pub ends: Option<(usize, usize)>,
    pub crossings: Vec<usize>,
}

/// Planar embedding of a multigraph in the cactus of its boundary markers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub n: usize,
    pub rot: Vec<Vec<Item>>,
    pub ends: Vec<[usize; 2]>,
    pub v_alive: Vec<bool>,
    pub e_alive: Vec<bool>,
    pub label_vertex: Vec<usize>,
}

impl Embedding {
    /// Edgeless embedding with one boundary vertex per block, in block order.
    pub fn boundary(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut label_vertex = vec![0; n];
        let mut rot = Vec::with_capacity(blocks.len());
        for (v, b) in blocks.iter().enumerate() {
            let mut b = b.clone();
            b.sort_unstable();
            for &l in &b {
                label_vertex[l] = v;
            }
            rot.push(b.into_iter().map(Item::Marker).collect());
        }
        Embedding { n, v_alive: vec![true; rot.len()], rot, ends: Vec::new(), e_alive: Vec::new(), label_vertex }
    }

    pub fn num_vertices(&self) -> usize {
        self.rot.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rot.push(Vec::new());
        self.v_alive.push(true);
        self.rot.len() - 1
    }

    /// Registers an edge without placing its darts in any rotation.
    pub fn add_edge_raw(&mut self, u: usize, w: usize) -> usize {
        self.ends.push([u, w]);
        self.e_alive.push(true);
        self.ends.len() - 1
    }

    pub fn dart_vertex(&self, d: usize) -> usize {
        self.ends[d / 2][d & 1]
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.rot[v].iter().any(|it| matches!(it, Item::Marker(_)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].iter().filter(|it| matches!(it, Item::Dart(_))).count()
    }

    pub fn alive_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ends.len()).filter(|&e| self.e_alive[e])
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rot.len()).filter(|&v| self.v_alive[v])
    }

    pub fn num_edges(&self) -> usize {
        self.e_alive.iter().filter(|a| **a).count()
    }

    pub fn position(&self, v: usize, item: Item) -> usize {
        self.rot[v].iter().position(|&x| x == item).expect("item lies in the rotation of its vertex")
    }

    /// Boundary labels grouped by vertex, ordered by smallest label.
    pub fn zeta_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![usize::MAX; self.rot.len()];
        for l in 0..self.n {
            let v = self.label_vertex[l];
            if seen[v] == usize::MAX {
                seen[v] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[seen[v]].push(l);
        }
        blocks
    }

    /// Removes an edge and its darts.
    pub fn remove_edge(&mut self, e: usize) {
        for k in 0..2 {
            let v = self.ends[e][k];
            self.rot[v].retain(|&it| it != Item::Dart(2 * e + k));
        }
        self.e_alive[e] = false;
    }

    /// Removes an interior vertex together with its edges.
    pub fn remove_vertex(&mut self, v: usize) {
        let darts: Vec<usize> = self.rot[v]
            .iter()
            .filter_map(|it| match it {
                Item::Dart(d) => Some(*d),
                Item::Marker(_) => None,
            })
            .collect();
        for d in darts {
            if self.e_alive[d / 2] {
                self.remove_edge(d / 2);
            }
        }
        self.v_alive[v] = false;
    }

    /// Contracts a non-loop edge, keeping its end-0 vertex. The merged
    /// rotation is the end-0 list followed by the end-1 list, each read
    /// clockwise from just after the contracted dart.
    pub fn contract_edge(&mut self, e: usize) -> usize {
        let [u, w] = self.ends[e];
        debug_assert_ne!(u, w);
        let from = |rot: &[Item], d: usize| -> Vec<Item> {
            let p = rot.iter().position(|&x| x == Item::Dart(d)).expect("dart present");
            let len = rot.len();
            (1..len).map(|i| rot[(p + i) % len]).collect()
        };
        let a = from(&self.rot[u], 2 * e);
        let b = from(&self.rot[w], 2 * e + 1);
        for it in &b {
            match *it {
                Item::Dart(d) => self.ends[d / 2][d & 1] = u,
                Item::Marker(m) => self.label_vertex[m] = u,
            }
        }
        let mut merged = a;
        merged.extend(b);
        self.rot[u] = merged;
        self.rot[w].clear();
        self.v_alive[w] = false;
        self.e_alive[e] = false;
        u
    }

    /// Position lookups for every live dart and every marker.
    fn positions(&self) -> (Vec<usize>, Vec<usize>) {
        let mut dpos = vec![usize::MAX; 2 * self.ends.len()];
        let mut mpos = vec![usize::MAX; self.n];
        for v in self.alive_vertices() {
            for (p, it) in self.rot[v].iter().enumerate() {
                match *it {
                    Item::Dart(d) => dpos[d] = p,
                    Item::Marker(m) => mpos[m] = p,
                }
            }
        }
        (dpos, mpos)
    }

    /// All faces, each starting from its lowest leaving item (markers first).
    pub fn faces(&self) -> Vec<Face> {
        let (dpos, mpos) = self.positions();
        // Leaving items are indexed: markers 0..n, then darts n + d.
        let total = self.n + 2 * self.ends.len();
        let mut seen = vec![false; total];
        let index = |it: Item| match it {
            Item::Marker(m) => m,
            Item::Dart(d) => self.n + d,
        };
        let mut faces = Vec::new();
        let starts = (0..self.n)
            .map(Item::Marker)
            .chain(self.alive_edges().flat_map(|e| [Item::Dart(2 * e), Item::Dart(2 * e + 1)]));
        for start in starts {
            if seen[index(start)] {
                continue;
            }
            let mut face = Face { steps: Vec::new(), corners: Vec::new() };
            let mut leave = start;
            loop {
                seen[index(leave)] = true;
                let (v, p) = match leave {
                    Item::Marker(m) => (self.label_vertex[m], mpos[m]),
                    Item::Dart(d) => (self.dart_vertex(d), dpos[d]),
                };
                face.corners.push((v, p));
                let (w, q) = match leave {
                    Item::Marker(m) => {
                        face.steps.push(Step::Arc(m));
                        let m2 = (m + 1) % self.n;
                        (self.label_vertex[m2], mpos[m2])
                    }
                    Item::Dart(d) => {
                        face.steps.push(Step::Dart(d));
                        (self.dart_vertex(twin(d)), dpos[twin(d)])
                    }
                };
                let len = self.rot[w].len();
                leave = self.rot[w][(q + len - 1) % len];
                if leave == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Checks rotation consistency, connectivity to the boundary and the
    /// Euler relation for a planar cactus embedding.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return input("a network needs at least one boundary vertex");
        }
        let mut dart_seen = vec![0usize; 2 * self.ends.len()];
        let mut marker_seen = vec![0usize; self.n];
        for v in 0..self.rot.len() {
            if !self.v_alive[v] {
                if !self.rot[v].is_empty() {
                    return input("removed vertex still has a rotation");
                }
                continue;
            }
            for it in &self.rot[v] {
                match *it {
                    Item::Dart(d) => {
                        if d / 2 >= self.ends.len() || !self.e_alive[d / 2] || self.dart_vertex(d) != v {
                            return input(format!("dart {d} listed at the wrong vertex"));
                        }
                        dart_seen[d] += 1;
                    }
                    Item::Marker(m) => {
                        if m >= self.n || self.label_vertex[m] != v {
                            return input(format!("boundary label {} listed at the wrong vertex", m + 1));
                        }
                        marker_seen[m] += 1;
                    }
                }
            }
        }
        for e in self.alive_edges() {
            if dart_seen[2 * e] != 1 || dart_seen[2 * e + 1] != 1 {
                return input(format!("edge {e} does not appear exactly once at each end"));
            }
        }
        if marker_seen.iter().any(|&c| c != 1) {
            return input("every boundary label must appear exactly once");
        }
        let mut uf = UnionFind::<usize>::new(self.rot.len());
        for l in 1..self.n {
            uf.union(self.label_vertex[0], self.label_vertex[l]);
        }
        for e in self.alive_edges() {
            uf.union(self.ends[e][0], self.ends[e][1]);
        }
        let mut verts = 0i64;
        for v in self.alive_vertices() {
            if self.rot[v].is_empty() {
                continue;
            }
            if !uf.equiv(v, self.label_vertex[0]) {
                return input("a component with edges does not reach the boundary");
            }
            verts += 1;
        }
        let edges = (self.num_edges() + self.n) as i64;
        let faces = self.faces().len() as i64;
        if verts - edges + faces + 1 != 2 {
            return input("rotation system is not a planar cactus embedding");
        }
        Ok(())
    }

    /// Traces every medial wire straight through the edge midpoints.
    pub fn medial_wires(&self) -> Vec<Wire> {
        let (dpos, mpos) = self.positions();
        let mut corner_seen: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut wires = Vec::new();
        let trace = |v: usize, p: usize, dir: Dir, seen: &mut Vec<Vec<bool>>| -> (Option<usize>, Vec<usize>) {
            let (mut v, mut p, mut dir) = (v, p, dir);
            let (v0, p0) = (v, p);
            let mut cross = Vec::new();
            loop {
                seen[v][p] = true;
                let len = self.rot[v].len();
                let item = match dir {
                    Dir::Fwd => self.rot[v][(p + 1) % len],
                    Dir::Bwd => self.rot[v][p],
                };
                match item {
                    Item::Marker(m) => {
                        return (Some(if dir == Dir::Fwd { 2 * m } else { 2 * m + 1 }), cross);
                    }
                    Item::Dart(d) => {
                        cross.push(d / 2);
                        let w = self.dart_vertex(twin(d));
                        let q = dpos[twin(d)];
                        let wl = self.rot[w].len();
                        (v, p, dir) = match dir {
                            Dir::Fwd => (w, (q + wl - 1) % wl, Dir::Bwd),
                            Dir::Bwd => (w, q, Dir::Fwd),
                        };
                    }
                }
                if (v, p) == (v0, p0) {
                    return (None, cross);
                }
            }
        };
        for t in 0..2 * self.n {
            let m = t / 2;
            let v = self.label_vertex[m];
            let len = self.rot[v].len();
            let (p, dir) = if t % 2 == 1 { (mpos[m], Dir::Fwd) } else { ((mpos[m] + len - 1) % len, Dir::Bwd) };
            if corner_seen[v][p] {
                continue;
            }
            let (end, crossings) = trace(v, p, dir, &mut corner_seen);
            let end = end.expect("boundary wire ends on the boundary");
            wires.push(Wire { ends: Some((t.min(end), t.max(end))), crossings });
        }
        for v in self.alive_vertices() {
            for p in 0..self.rot[v].len() {
                if !corner_seen[v][p] {
                    let (end, crossings) = trace(v, p, Dir::Fwd, &mut corner_seen);
                    debug_assert!(end.is_none());
                    wires.push(Wire { ends: None, crossings });
                }
            }
        }
        wires
    }

    /// Medial pairing as a partner array on `0..2n`.
    pub fn medial_partners(&self) -> Vec<usize> {
        let mut partner = vec![0; 2 * self.n];
        for w in self.medial_wires() {
            if let Some((a, b)) = w.ends {
                partner[a] = b;
                partner[b] = a;
            }
        }
        partner
    }

    /// No closed wire, no wire crossing itself, no two wires crossing twice.
    pub fn is_reduced(&self) -> bool {
        let wires = self.medial_wires();
        let mut owner: Vec<Vec<usize>> = vec![Vec::new(); self.ends.len()];
        for (i, w) in wires.iter().enumerate() {
            if w.ends.is_none() {
                return false;
            }
            for &e in &w.crossings {
                if owner[e].contains(&i) {
                    return false;
                }
                owner[e].push(i);
            }
        }
        let mut shared = std::collections::HashSet::new();
        for o in owner.iter().filter(|o| o.len() == 2) {
            if !shared.insert((o[0].min(o[1]), o[0].max(o[1]))) {
                return false;
            }
        }
        true
    }

    /// Drops removed vertices and edges. `edge_order` lists surviving edges in
    /// their new order; vertices keep their relative order.
    pub fn compact(&self, edge_order: &[usize]) -> (Embedding, Vec<usize>) {
        let mut vmap = vec![usize::MAX; self.rot.len()];
        let mut next = 0;
        for v in self.alive_vertices() {
            vmap[v] = next;
            next += 1;
        }
        let mut emap = vec![usize::MAX; self.ends.len()];
        for (i, &e) in edge_order.iter().enumerate() {
            emap[e] = i;
        }
        let rot = self
            .alive_vertices()
            .map(|v| {
                self.rot[v]
                    .iter()
                    .map(|it| match *it {
                        Item::Dart(d) => Item::Dart(2 * emap[d / 2] + (d & 1)),
                        m => m,
                    })
                    .collect()
            })
            .collect();
        let ends = edge_order.iter().map(|&e| [vmap[self.ends[e][0]], vmap[self.ends[e][1]]]).collect();
        let emb = Embedding {
            n: self.n,
            rot,
            ends,
            v_alive: vec![true; next],
            e_alive: vec![true; edge_order.len()],
            label_vertex: self.label_vertex.iter().map(|&v| vmap[v]).collect(),
        };
        (emb, vmap)
    }

    /// Triangular faces: three darts, no boundary arcs, three distinct edges
    /// and three distinct vertices. Darts are given in walk order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for f in self.faces() {
            if f.steps.len() != 3 || f.arcs().next().is_some() {
                continue;
            }
            let g: Vec<usize> = f.darts().collect();
            let es = [g[0] / 2, g[1] / 2, g[2] / 2];
            let vs = [self.dart_vertex(g[0]), self.dart_vertex(g[1]), self.dart_vertex(g[2])];
            if es[0] != es[1] && es[1] != es[2] && es[0] != es[2] && vs[0] != vs[1] && vs[1] != vs[2] && vs[0] != vs[2] {
                out.push([g[0], g[1], g[2]]);
            }
        }
        out
    }

    /// Y→Δ at an interior vertex of degree 3 with three distinct neighbors
    /// and no loops. Returns the three new edges.
    pub fn y_to_delta(&mut self, v: usize) -> Result<[usize; 3]> {
        if self.is_boundary(v) || !self.v_alive[v] || self.rot[v].len() != 3 {
            return input("Y→Δ needs an interior vertex of degree 3");
        }
        let d: Vec<usize> = self.rot[v]
            .iter()
            .map(|it| match it {
                Item::Dart(d) => *d,
                Item::Marker(_) => unreachable!(),
            })
            .collect();
        let nb: Vec<usize> = d.iter().map(|&x| self.dart_vertex(twin(x))).collect();
        if nb.contains(&v) || nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2] {
            return input("Y→Δ needs three distinct neighbors");
        }
        // New edge f_i joins v_{i+1} (end 0) and v_{i+2} (end 1).
        let f: Vec<usize> = (0..3).map(|i| self.add_edge_raw(nb[(i + 1) % 3], nb[(i + 2) % 3])).collect();
        for i in 0..3 {
            let toward_next = 2 * f[(i + 2) % 3];
            let toward_prev = 2 * f[(i + 1) % 3] + 1;
            let u = nb[i];
            let p = self.position(u, Item::Dart(twin(d[i])));
            self.rot[u].splice(p..=p, [Item::Dart(toward_next), Item::Dart(toward_prev)]);
        }
        for &x in &d {
            self.e_alive[x / 2] = false;
        }
        self.rot[v].clear();
        self.v_alive[v] = false;
        Ok([f[0], f[1], f[2]])
    }

    /// Δ→Y on a triangular face given by its darts in walk order. Returns the
    /// new center vertex.
    pub fn delta_to_y(&mut self, g: [usize; 3]) -> Result<usize> {
        if !self.triangles().contains(&g) {
            return input("Δ→Y needs a triangular face");
        }
        let u: Vec<usize> = g.iter().map(|&d| self.dart_vertex(d)).collect();
        let x = self.add_vertex();
        let h: Vec<usize> = (0..3).map(|i| self.add_edge_raw(x, u[i])).collect();
        self.rot[x] = h.iter().map(|&e| Item::Dart(2 * e)).collect();
        for i in 0..3 {
            let prev_twin = twin(g[(i + 2) % 3]);
            let rot = &mut self.rot[u[i]];
            let p = rot.iter().position(|&it| it == Item::Dart(g[i])).expect("dart present");
            let len = rot.len();
            debug_assert_eq!(rot[(p + 1) % len], Item::Dart(prev_twin));
            rot[p] = Item::Dart(2 * h[i] + 1);
            let q = (p + 1) % len;
            rot.remove(q);
        }
        for &d in &g {
            self.e_alive[d / 2] = false;
        }
        Ok(x)
    }
}
