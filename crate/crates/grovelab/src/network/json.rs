//! Network JSON: boundary vertices are `b1 … bn`; a glued block is named after
//! its smallest label and its rotation lists the other labels as tokens.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::embedding::{Embedding, Item};
use super::CactusNetwork;
use crate::catalan::NcPartition;
use crate::error::{input, Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    ends: [String; 2],
    id: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkJson {
    edges: Vec<EdgeJson>,
    #[serde(default)]
    interior: Vec<String>,
    n: usize,
    #[serde(default)]
    rotation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<BTreeMap<String, String>>,
    zeta: Vec<Vec<usize>>,
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| Error::Input(format!("bad rational {s:?}")))
}

impl CactusNetwork {
    pub fn from_json(text: &str) -> Result<CactusNetwork> {
        let raw: NetworkJson = serde_json::from_str(text).map_err(|e| Error::Input(format!("network JSON: {e}")))?;
        let n = raw.n;
        if n == 0 {
            return input("a network needs n ≥ 1");
        }
        let mut blocks = Vec::new();
        for b in &raw.zeta {
            let mut block = Vec::new();
            for &l in b {
                if l == 0 || l > n {
                    return input(format!("zeta label {l} outside 1..{n}"));
                }
                block.push(l - 1);
            }
            blocks.push(block);
        }
        let zeta = NcPartition::new(n, blocks)?;
        let mut emb = Embedding::boundary(n, &[]);
        emb.label_vertex = vec![usize::MAX; n];
        let mut vertex_of: HashMap<String, usize> = HashMap::new();
        for b in zeta.blocks() {
            let v = emb.add_vertex();
            for &l in b {
                emb.label_vertex[l] = v;
                vertex_of.insert(format!("b{}", l + 1), v);
            }
        }
        let nb = zeta.num_blocks();
        for name in &raw.interior {
            if vertex_of.contains_key(name) {
                return input(format!("vertex name {name:?} is used twice or clashes with a boundary name"));
            }
            let v = emb.add_vertex();
            vertex_of.insert(name.clone(), v);
        }
        let mut edge_of: HashMap<String, usize> = HashMap::new();
        let mut ids = Vec::new();
        for e in &raw.edges {
            if vertex_of.get(&e.id).is_some_and(|&v| v < nb) {
                return input(format!("edge id {:?} clashes with a boundary marker token", e.id));
            }
            if edge_of.contains_key(&e.id) {
                return input(format!("duplicate edge id {:?}", e.id));
            }
            let lookup = |s: &String| {
                vertex_of.get(s).copied().ok_or_else(|| Error::Input(format!("edge {:?} ends at unknown vertex {s:?}", e.id)))
            };
            let (u, w) = (lookup(&e.ends[0])?, lookup(&e.ends[1])?);
            edge_of.insert(e.id.clone(), emb.add_edge_raw(u, w));
            ids.push(e.id.clone());
        }
        for v in 0..nb {
            let first = zeta.blocks()[v][0];
            emb.rot[v].push(Item::Marker(first));
        }
        let mut used = vec![[false; 2]; ids.len()];
        for (name, tokens) in &raw.rotation {
            let v = *vertex_of.get(name).ok_or_else(|| Error::Input(format!("rotation for unknown vertex {name:?}")))?;
            if v < nb && *name != format!("b{}", zeta.blocks()[v][0] + 1) {
                return input(format!(
                    "rotation of a glued vertex goes under b{}, not {name}",
                    zeta.blocks()[v][0] + 1
                ));
            }
            for tok in tokens {
                if let Some(&e) = edge_of.get(tok) {
                    let [a, b] = emb.ends[e];
                    let end = if a == v && b == v {
                        usize::from(used[e][0])
                    } else if a == v {
                        0
                    } else if b == v {
                        1
                    } else {
                        return input(format!("edge {tok:?} listed at {name:?}, which it does not touch"));
                    };
                    if used[e][end] {
                        return input(format!("edge {tok:?} listed twice at {name:?}"));
                    }
                    used[e][end] = true;
                    emb.rot[v].push(Item::Dart(2 * e + end));
                } else if let Some(l) = tok.strip_prefix('b').and_then(|s| s.parse::<usize>().ok()) {
                    if l == 0 || l > n || emb.label_vertex[l - 1] != v || zeta.blocks()[v][0] == l - 1 {
                        return input(format!("marker token {tok:?} does not belong in the rotation of {name:?}"));
                    }
                    emb.rot[v].push(Item::Marker(l - 1));
                } else {
                    return input(format!("unknown token {tok:?} in the rotation of {name:?}"));
                }
            }
        }
        for e in 0..ids.len() {
            if !used[e][0] || !used[e][1] {
                return input(format!("edge {:?} is missing from a rotation", ids[e]));
            }
        }
        let weights = match raw.weights {
            None => None,
            Some(w) => {
                let mut out = BTreeMap::new();
                for (k, v) in w {
                    if !edge_of.contains_key(&k) {
                        return input(format!("weight for unknown edge {k:?}"));
                    }
                    out.insert(k, parse_rational(&v)?);
                }
                if out.len() != ids.len() {
                    return input("weights must cover every edge");
                }
                Some(out)
            }
        };
        CactusNetwork::from_embedding(emb, raw.interior, ids, weights)
    }

    /// Canonical JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let emb = &self.emb;
        let name = |v: usize| self.vertex_names[v].clone();
        let edges = (0..self.edge_ids.len())
            .map(|e| EdgeJson { ends: [name(emb.ends[e][0]), name(emb.ends[e][1])], id: self.edge_ids[e].clone() })
            .collect();
        let nb = self.num_boundary_vertices();
        let mut rotation = BTreeMap::new();
        for v in 0..emb.num_vertices() {
            let mut items = emb.rot[v].clone();
            if v < nb {
                let first = emb.zeta_blocks()[v][0];
                let p = emb.position(v, Item::Marker(first));
                items.rotate_left(p);
                items.remove(0);
            }
            let tokens = items
                .iter()
                .map(|it| match *it {
                    Item::Dart(d) => self.edge_ids[d / 2].clone(),
                    Item::Marker(m) => format!("b{}", m + 1),
                })
                .collect();
            rotation.insert(name(v), tokens);
        }
        let raw = NetworkJson {
            edges,
            interior: self.vertex_names[nb..].to_vec(),
            n: emb.n,
            rotation,
            weights: self.weights.as_ref().map(|w| w.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
            zeta: emb.zeta_blocks().iter().map(|b| b.iter().map(|l| l + 1).collect()).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("network JSON serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip() {
        for name in ["y3", "fig3"] {
            let net = CactusNetwork::builtin(name).unwrap();
            let again = CactusNetwork::from_json(&net.to_json()).unwrap();
            assert_eq!(net, again);
            assert_eq!(net.to_json(), again.to_json());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            r#"{"n":0,"zeta":[],"edges":[]}"#,
            r#"{"n":2,"zeta":[[1],[3]],"edges":[]}"#,
            r#"{"n":2,"zeta":[[1],[2]],"edges":[{"id":"a","ends":["b1","z"]}]}"#,
            r#"{"n":2,"zeta":[[1],[2]],"edges":[{"id":"a","ends":["b1","b2"]}],"rotation":{"b1":["a"]}}"#,
            r#"{"n":2,"zeta":[[1],[2]],"edges":[{"id":"b2","ends":["b1","b2"]}],"rotation":{"b1":["b2"],"b2":["b2"]}}"#,
            r#"{"n":4,"zeta":[[1,3],[2],[4]],"edges":[]}"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(CactusNetwork::from_json(text), Err(Error::Input(_))), "{text}");
        }
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // Two chords of a 4-cycle drawn on the wrong sides cross each other.
        let text = r#"{"n":4,"zeta":[[1],[2],[3],[4]],
            "edges":[{"id":"p","ends":["b1","b3"]},{"id":"q","ends":["b2","b4"]}],
            "rotation":{"b1":["p"],"b2":["q"],"b3":["p"],"b4":["q"]}}"#;
        assert!(CactusNetwork::from_json(text).is_err());
    }

    #[test]
    fn weights_parse() {
        let text = r#"{"n":2,"zeta":[[1],[2]],"edges":[{"id":"a","ends":["b1","b2"]}],
            "rotation":{"b1":["a"],"b2":["a"]},"weights":{"a":"3/2"}}"#;
        let net = CactusNetwork::from_json(text).unwrap();
        assert_eq!(net.weights().unwrap()["a"].to_string(), "3/2");
    }
}
