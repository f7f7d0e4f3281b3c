//! Cactus networks with planar embeddings: medial graphs and pairings, the
//! lensless check, dual networks, the reduced network of a 3-noncrossing
//! matching, and unweighted Y–Δ moves.

mod arrangement;
mod embedding;
mod json;
pub mod random;

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::catalan::{Matching, NcPartition};
use crate::error::{input, internal, Result};

pub use arrangement::{ChordArrangement, Color};
pub use embedding::{twin, Embedding, Face, Item, Step, Wire};

/// A weighted graph embedded in the cactus `S_ζ`.
///
/// Vertices `0..#blocks(ζ)` are the boundary vertices, one per block of ζ in
/// order of smallest label; the rest are interior. Edges are indexed in
/// increasing id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusNetwork {
    emb: Embedding,
    vertex_names: Vec<String>,
    edge_ids: Vec<String>,
    weights: Option<BTreeMap<String, BigRational>>,
}

/// Medial graph: each wire with its terminals and the edges it crosses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedialGraph {
    pub n: usize,
    pub wires: Vec<Wire>,
}

impl MedialGraph {
    pub fn pairing(&self) -> Result<Matching> {
        let mut partner = vec![0; 2 * self.n];
        for w in &self.wires {
            if let Some((a, b)) = w.ends {
                partner[a] = b;
                partner[b] = a;
            }
        }
        Matching::new(partner)
    }

    pub fn closed_wires(&self) -> usize {
        self.wires.iter().filter(|w| w.ends.is_none()).count()
    }
}

/// Where to apply a Y–Δ move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YdSite {
    /// Interior vertex of degree 3, by name.
    Vertex(String),
    /// Triangular face, by its three edge ids in walk order.
    Face([String; 3]),
}

impl CactusNetwork {
    /// Wraps an embedding, naming boundary vertices `bK` after their smallest
    /// label. `interior_names` follows the interior vertices in order. Edges
    /// are reordered by id.
    pub fn from_embedding(
        emb: Embedding,
        interior_names: Vec<String>,
        edge_ids: Vec<String>,
        weights: Option<BTreeMap<String, BigRational>>,
    ) -> Result<Self> {
        let mut order: Vec<usize> = emb.alive_edges().collect();
        if edge_ids.len() != emb.ends.len() {
            return internal("edge id count does not match the embedding");
        }
        order.sort_by(|&a, &b| edge_ids[a].cmp(&edge_ids[b]));
        let ids: Vec<String> = order.iter().map(|&e| edge_ids[e].clone()).collect();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return input("duplicate edge id");
        }
        let (emb, _) = emb.compact(&order);
        let blocks = emb.zeta_blocks();
        for (v, b) in blocks.iter().enumerate() {
            if emb.label_vertex[b[0]] != v {
                return internal("boundary vertices must come first, in block order");
            }
        }
        let mut vertex_names: Vec<String> = blocks.iter().map(|b| format!("b{}", b[0] + 1)).collect();
        if interior_names.len() + blocks.len() != emb.num_vertices() {
            return internal("interior name count does not match the embedding");
        }
        vertex_names.extend(interior_names);
        let net = CactusNetwork { emb, vertex_names, edge_ids: ids, weights };
        net.emb.validate()?;
        Ok(net)
    }

    /// Network without edges on the given identifications.
    pub fn empty(zeta: &NcPartition) -> Self {
        let emb = Embedding::boundary(zeta.n(), zeta.blocks());
        CactusNetwork::from_embedding(emb, Vec::new(), Vec::new(), None).expect("edgeless cactus is valid")
    }

    pub fn n(&self) -> usize {
        self.emb.n
    }

    pub fn zeta(&self) -> NcPartition {
        NcPartition::new(self.emb.n, self.emb.zeta_blocks()).expect("blocks of a valid cactus are noncrossing")
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn num_edges(&self) -> usize {
        self.edge_ids.len()
    }

    /// Edge ids in index order (sorted).
    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    /// Endpoints of every edge as vertex indices.
    pub fn edge_ends(&self) -> &[[usize; 2]] {
        &self.emb.ends
    }

    pub fn num_boundary_vertices(&self) -> usize {
        self.emb.zeta_blocks().len()
    }

    pub fn weights(&self) -> Option<&BTreeMap<String, BigRational>> {
        self.weights.as_ref()
    }

    pub fn set_weights(&mut self, weights: Option<BTreeMap<String, BigRational>>) {
        self.weights = weights;
    }

    pub fn medial_graph(&self) -> MedialGraph {
        MedialGraph { n: self.emb.n, wires: self.emb.medial_wires() }
    }

    pub fn medial_pairing(&self) -> Matching {
        Matching::new(self.emb.medial_partners()).expect("medial wires pair the terminals")
    }

    pub fn is_reduced(&self) -> bool {
        self.emb.is_reduced()
    }

    /// Planar dual: faces become vertices, the face holding the boundary arc
    /// from `j` to `j + 1` carries dual label `j`, and every edge keeps its
    /// id. Isolated interior vertices have no dual counterpart.
    pub fn dual(&self) -> CactusNetwork {
        let faces = self.emb.faces();
        let n = self.emb.n;
        let mut boundary_faces: Vec<usize> = Vec::new();
        let mut interior_faces: Vec<usize> = Vec::new();
        let mut min_label = vec![usize::MAX; faces.len()];
        for (f, face) in faces.iter().enumerate() {
            match face.arcs().min() {
                Some(m) => {
                    min_label[f] = m;
                    boundary_faces.push(f);
                }
                None => interior_faces.push(f),
            }
        }
        boundary_faces.sort_by_key(|&f| min_label[f]);
        let mut vertex_of_face = vec![0; faces.len()];
        for (v, &f) in boundary_faces.iter().chain(interior_faces.iter()).enumerate() {
            vertex_of_face[f] = v;
        }
        let nv = faces.len();
        let mut rot = vec![Vec::new(); nv];
        let mut ends = vec![[0usize; 2]; self.emb.ends.len()];
        let mut label_vertex = vec![0; n];
        for (f, face) in faces.iter().enumerate() {
            let v = vertex_of_face[f];
            let mut items: Vec<Item> = face
                .steps
                .iter()
                .map(|s| match *s {
                    Step::Dart(d) => {
                        ends[d / 2][d & 1] = v;
                        Item::Dart(d)
                    }
                    Step::Arc(m) => {
                        label_vertex[m] = v;
                        Item::Marker(m)
                    }
                })
                .collect();
            if let Some(p) = items.iter().position(|&it| it == Item::Marker(min_label[f])) {
                items.rotate_left(p);
            }
            rot[v] = items;
        }
        let emb = Embedding {
            n,
            rot,
            ends,
            v_alive: vec![true; nv],
            e_alive: vec![true; self.emb.ends.len()],
            label_vertex,
        };
        let names = (1..=interior_faces.len()).map(|i| format!("f{i}")).collect();
        CactusNetwork::from_embedding(emb, names, self.edge_ids.clone(), self.weights.clone())
            .expect("dual of a valid cactus network is valid")
    }

    /// The reduced network `Γ(ξ)` of a 3-noncrossing matching.
    pub fn of_matching(xi: &Matching) -> Result<CactusNetwork> {
        if !crate::crossings::is_k_noncrossing(xi, 3) {
            return input(format!("{xi} is not 3-noncrossing"));
        }
        ChordArrangement::canonical(xi)?.white_network()
    }

    /// Interior vertices where Y→Δ applies.
    pub fn y_sites(&self) -> Vec<usize> {
        let e = &self.emb;
        e.alive_vertices()
            .filter(|&v| !e.is_boundary(v) && e.rot[v].len() == 3)
            .filter(|&v| {
                let nb: Vec<usize> = e.rot[v]
                    .iter()
                    .map(|it| match it {
                        Item::Dart(d) => e.dart_vertex(twin(*d)),
                        Item::Marker(_) => v,
                    })
                    .collect();
                !nb.contains(&v) && nb[0] != nb[1] && nb[1] != nb[2] && nb[0] != nb[2]
            })
            .collect()
    }

    /// Triangular faces where Δ→Y applies, as darts in walk order.
    pub fn delta_sites(&self) -> Vec<[usize; 3]> {
        self.emb.triangles()
    }

    /// Applies an unweighted Y–Δ move. New edges get fresh ids `y1, y2, …`
    /// and the new center vertex a fresh name `c1, c2, …`. Weights are dropped.
    pub fn yd_move(&self, site: &YdSite) -> Result<CactusNetwork> {
        let mut emb = self.emb.clone();
        let mut ids = self.edge_ids.clone();
        let mut names: Vec<String> = self.vertex_names[self.num_boundary_vertices()..].to_vec();
        let fresh = |prefix: &str, taken: &[String]| {
            (1..).map(|i| format!("{prefix}{i}")).find(|s| !taken.contains(s)).expect("unbounded")
        };
        let mut keep = vec![true; emb.num_vertices()];
        match site {
            YdSite::Vertex(name) => {
                let v = self
                    .vertex_names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| crate::Error::Input(format!("no vertex named {name}")))?;
                let new = emb.y_to_delta(v)?;
                for _ in new {
                    let id = fresh("y", &ids);
                    ids.push(id);
                }
                keep[v] = false;
            }
            YdSite::Face(eids) => {
                let idx: Vec<usize> = eids
                    .iter()
                    .map(|id| {
                        self.edge_ids
                            .iter()
                            .position(|x| x == id)
                            .ok_or_else(|| crate::Error::Input(format!("no edge named {id}")))
                    })
                    .collect::<Result<_>>()?;
                let tri = emb
                    .triangles()
                    .into_iter()
                    .find(|g| (0..3).all(|i| g[i] / 2 == idx[i]))
                    .ok_or_else(|| crate::Error::Input("edges do not bound a triangular face in walk order".into()))?;
                emb.delta_to_y(tri)?;
                let taken: Vec<String> = self.vertex_names.clone();
                names.push(fresh("c", &taken));
                keep.push(true);
                for _ in 0..3 {
                    let id = fresh("y", &ids);
                    ids.push(id);
                }
            }
        }
        let nb = self.num_boundary_vertices();
        let interior: Vec<String> =
            (nb..emb.num_vertices()).filter(|&v| keep[v]).map(|v| names[v - nb].clone()).collect();
        CactusNetwork::from_embedding(emb, interior, ids, None)
    }

    /// Applies a move given by index into `y_sites` followed by `delta_sites`.
    pub fn yd_move_at(&self, k: usize) -> Result<CactusNetwork> {
        let ys = self.y_sites();
        if k < ys.len() {
            return self.yd_move(&YdSite::Vertex(self.vertex_names[ys[k]].clone()));
        }
        let ds = self.delta_sites();
        let g = ds.get(k - ys.len()).ok_or_else(|| crate::Error::Input("no such Y–Δ site".into()))?;
        let ids = g.map(|d| self.edge_ids[d / 2].clone());
        self.yd_move(&YdSite::Face(ids))
    }

    /// Product of all edge variables.
    pub fn weight_monomial(&self) -> crate::polyring::MultiPoly {
        let powers: Vec<(&str, u32)> = self.edge_ids.iter().map(|s| (s.as_str(), 1)).collect();
        crate::polyring::MultiPoly::monomial(&powers)
    }

    /// Built-in examples: `y3` (a star on three boundary vertices, edges
    /// `a, b, c`) and `fig3` (seven boundary vertices, `3` glued to `5`).
    pub fn builtin(name: &str) -> Result<CactusNetwork> {
        match name {
            "y3" => CactusNetwork::from_json(Y3_JSON),
            "fig3" => CactusNetwork::from_json(FIG3_JSON),
            _ => input(format!("unknown built-in network {name:?} (expected y3 or fig3)")),
        }
    }
}

const Y3_JSON: &str = r#"{
  "n": 3,
  "zeta": [[1], [2], [3]],
  "interior": ["x"],
  "edges": [
    {"id": "a", "ends": ["b1", "x"]},
    {"id": "b", "ends": ["b2", "x"]},
    {"id": "c", "ends": ["b3", "x"]}
  ],
  "rotation": {"x": ["a", "b", "c"], "b1": ["a"], "b2": ["b"], "b3": ["c"]}
}"#;

const FIG3_JSON: &str = r#"{
  "n": 7,
  "zeta": [[1], [2], [3, 5], [4], [6], [7]],
  "interior": ["u", "w"],
  "edges": [
    {"id": "a", "ends": ["b2", "u"]},
    {"id": "b", "ends": ["u", "b7"]},
    {"id": "c", "ends": ["u", "w"]},
    {"id": "d", "ends": ["w", "b6"]},
    {"id": "e", "ends": ["w", "b3"]},
    {"id": "f", "ends": ["b3", "b4"]}
  ],
  "rotation": {
    "u": ["a", "c", "b"],
    "w": ["c", "e", "d"],
    "b2": ["a"],
    "b3": ["f", "b5", "e"],
    "b4": ["f"],
    "b6": ["d"],
    "b7": ["b"]
  }
}"#;
