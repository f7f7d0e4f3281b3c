//! Straight-chord drawings of a matching on a circle and the networks read
//! off their two-colored regions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::embedding::{Embedding, Face, Item, Step};
use super::CactusNetwork;
use crate::catalan::Matching;
use crate::crossings::{crossings, Quad};
use crate::error::{input, internal, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

/// The chords of a matching drawn between points of the unit circle.
///
/// The auxiliary embedding has `2n` boundary labels, one per terminal
/// `t_{k+1}` (vertex `k`), and one degree-4 vertex `2n + q` per crossing `q`
/// with rotation `[toward a, toward b, toward c, toward d]`. The boundary arc
/// after terminal `k` is `Arc(k)`; even arcs carry the labels of `Γ(ξ)`, odd
/// arcs those of the dual.
#[derive(Clone, Debug)]
pub struct ChordArrangement {
    pub xi: Matching,
    pub quads: Vec<Quad>,
    pub aux: Embedding,
    pub faces: Vec<Face>,
    pub color: Vec<Color>,
    /// Faces in the four corners of each crossing, in rotation order.
    pub crossing_faces: Vec<[usize; 4]>,
}

type Point = (BigRational, BigRational);

/// `((1 − t²)/(1 + t²), 2t/(1 + t²))`; decreasing `t` runs clockwise.
fn circle_point(t: &BigRational) -> Point {
    let t2 = t * t;
    let den = BigRational::one() + &t2;
    ((BigRational::one() - &t2) / &den, (t + t) / den)
}

fn cross(u: &Point, w: &Point) -> BigRational {
    &u.0 * &w.1 - &u.1 * &w.0
}

fn sub(p: &Point, q: &Point) -> Point {
    (&p.0 - &q.0, &p.1 - &q.1)
}

impl ChordArrangement {
    /// Terminal `k` at parameter `t = −k`.
    pub fn canonical(xi: &Matching) -> Result<Self> {
        let ts: Vec<BigRational> = (0..xi.points()).map(|k| BigRational::from_integer(BigInt::from(-(k as i64)))).collect();
        ChordArrangement::new(xi, &ts)
    }

    /// Places terminal `k` at parameter `ts[k]`, which must strictly decrease.
    /// Fails if three chords meet in a point.
    pub fn new(xi: &Matching, ts: &[BigRational]) -> Result<Self> {
        let pts = xi.points();
        if ts.len() != pts || ts.windows(2).any(|w| w[0] <= w[1]) {
            return input("terminal parameters must strictly decrease");
        }
        let p: Vec<Point> = ts.iter().map(circle_point).collect();
        let quads = crossings(xi);
        // Parameter of each crossing along each of its chords, keyed by left endpoint.
        let mut along: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); pts];
        for (q, &(a, b, c, d)) in quads.iter().enumerate() {
            let u = sub(&p[c], &p[a]);
            let w = sub(&p[d], &p[b]);
            let den = cross(&u, &w);
            let lambda = cross(&sub(&p[b], &p[a]), &w) / &den;
            let mu = cross(&sub(&p[a], &p[b]), &u) / -den;
            along[a].push((lambda, q));
            along[b].push((mu, q));
        }
        for list in along.iter_mut() {
            list.sort();
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return input("three chords meet in a point");
            }
        }
        let blocks: Vec<Vec<usize>> = (0..pts).map(|k| vec![k]).collect();
        let mut aux = Embedding::boundary(pts, &blocks);
        for _ in &quads {
            aux.add_vertex();
        }
        let mut crot: Vec<[usize; 4]> = vec![[usize::MAX; 4]; quads.len()];
        for (a, c) in xi.pairs() {
            let mut nodes = vec![a];
            nodes.extend(along[a].iter().map(|&(_, q)| pts + q));
            nodes.push(c);
            for i in 0..nodes.len() - 1 {
                let s = aux.add_edge_raw(nodes[i], nodes[i + 1]);
                for (end, node) in [(0, nodes[i]), (1, nodes[i + 1])] {
                    let dart = 2 * s + end;
                    if node < pts {
                        aux.rot[node].push(Item::Dart(dart));
                    } else {
                        let q = node - pts;
                        let (qa, qb, _, _) = quads[q];
                        // end 1 of a segment points back toward the chord's left end.
                        let slot = match (a == qa, end) {
                            (true, 1) => 0,
                            (true, _) => 2,
                            (false, 1) => 1,
                            (false, _) => 3,
                        };
                        debug_assert!(a == qa || a == qb);
                        crot[q][slot] = dart;
                    }
                }
            }
        }
        for (q, r) in crot.iter().enumerate() {
            aux.rot[pts + q] = r.iter().map(|&d| Item::Dart(d)).collect();
        }
        aux.validate()?;
        let faces = aux.faces();
        let mut face_of_dart = vec![usize::MAX; 2 * aux.ends.len()];
        let mut color: Vec<Option<Color>> = vec![None; faces.len()];
        let mut queue = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            for d in face.darts() {
                face_of_dart[d] = f;
            }
            if let Some(k) = face.arcs().next() {
                color[f] = Some(if k % 2 == 0 { Color::White } else { Color::Black });
                queue.push(f);
            }
        }
        while let Some(f) = queue.pop() {
            let here = color[f].expect("queued faces are colored");
            let other = if here == Color::White { Color::Black } else { Color::White };
            for d in faces[f].darts() {
                let g = face_of_dart[d ^ 1];
                match color[g] {
                    None => {
                        color[g] = Some(other);
                        queue.push(g);
                    }
                    Some(c) if c != other => return internal("chord regions are not two-colorable"),
                    Some(_) => {}
                }
            }
        }
        let color: Vec<Color> = color.into_iter().map(|c| c.expect("every region is reached")).collect();
        for (f, face) in faces.iter().enumerate() {
            for k in face.arcs() {
                let want = if k % 2 == 0 { Color::White } else { Color::Black };
                if color[f] != want {
                    return internal("boundary regions have inconsistent colors");
                }
            }
        }
        let mut crossing_faces = vec![[usize::MAX; 4]; quads.len()];
        for (f, face) in faces.iter().enumerate() {
            for &(v, p) in &face.corners {
                if v >= pts {
                    crossing_faces[v - pts][p] = f;
                }
            }
        }
        Ok(ChordArrangement { xi: xi.clone(), quads, aux, faces, color, crossing_faces })
    }

    /// Boundary labels of a region: `k/2` for even arcs when white, `(k−1)/2`
    /// for odd arcs when black.
    pub fn region_labels(&self, f: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.faces[f].arcs().map(|k| k / 2).collect();
        out.sort_unstable();
        out
    }

    /// Reads a network off the regions of one color. White gives `Γ(ξ)`;
    /// black gives its dual. Edge `e{q+1}` passes through crossing `q`.
    pub fn network(&self, which: Color) -> Result<CactusNetwork> {
        let n = self.xi.n();
        let pts = 2 * n;
        let regions: Vec<usize> = (0..self.faces.len()).filter(|&f| self.color[f] == which).collect();
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        let mut interior: Vec<usize> = Vec::new();
        for &f in &regions {
            match self.region_labels(f).first() {
                Some(&l) => boundary.push((l, f)),
                None => interior.push(f),
            }
        }
        boundary.sort_unstable();
        let mut vertex = vec![usize::MAX; self.faces.len()];
        for (v, &f) in boundary.iter().map(|(_, f)| f).chain(interior.iter()).enumerate() {
            vertex[f] = v;
        }
        let nv = boundary.len() + interior.len();
        let ne = self.quads.len();
        // The first corner of this color around a crossing hosts end 0.
        let first_corner: Vec<usize> = self
            .crossing_faces
            .iter()
            .map(|fs| (0..4).find(|&p| self.color[fs[p]] == which).expect("corners alternate colors"))
            .collect();
        let mut rot = vec![Vec::new(); nv];
        let mut ends = vec![[usize::MAX; 2]; ne];
        let mut label_vertex = vec![usize::MAX; n];
        for &f in &regions {
            let v = vertex[f];
            for (step, &(u, p)) in self.faces[f].steps.iter().zip(&self.faces[f].corners) {
                if let Step::Arc(k) = *step {
                    label_vertex[k / 2] = v;
                    rot[v].push(Item::Marker(k / 2));
                } else if u >= pts {
                    let q = u - pts;
                    let end = usize::from(p != first_corner[q]);
                    ends[q][end] = v;
                    rot[v].push(Item::Dart(2 * q + end));
                }
            }
        }
        let emb = Embedding { n, rot, ends, v_alive: vec![true; nv], e_alive: vec![true; ne], label_vertex };
        let names = (1..=interior.len()).map(|i| format!("v{i}")).collect();
        let ids = (1..=ne).map(|i| format!("e{i}")).collect();
        CactusNetwork::from_embedding(emb, names, ids, None)
    }

    pub fn white_network(&self) -> Result<CactusNetwork> {
        self.network(Color::White)
    }

    pub fn black_network(&self) -> Result<CactusNetwork> {
        self.network(Color::Black)
    }

    /// Number of crossings.
    pub fn num_crossings(&self) -> usize {
        self.quads.len()
    }

    /// Whether region `f` touches the boundary.
    pub fn is_boundary_region(&self, f: usize) -> bool {
        self.faces[f].arcs().next().is_some()
    }

    /// Arcs of region `f`, i.e. the boundary labels `k + 1` of `N(ξ)` it holds.
    pub fn region_arcs(&self, f: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.faces[f].arcs().collect();
        out.sort_unstable();
        out
    }
}
