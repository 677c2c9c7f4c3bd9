//! Finite homogeneous simplicial complexes with rational vertex coordinates.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

pub type VertexId = u32;
pub type SimplexId = u32;

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    pub id: SimplexId,
    /// Sorted, n+1 distinct vertex ids.
    pub vertices: Vec<VertexId>,
}

/// Pairwise distances between maximal simplices, indexed by position.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceTables {
    n: usize,
    /// `None` when the two simplices lie in different components.
    simplicial: Vec<Option<u32>>,
    /// Squared maximal vertex-pair distance.
    metric: Vec<Rational>,
}

impl DistanceTables {
    pub fn simplicial(&self, a: usize, b: usize) -> Option<u32> {
        self.simplicial[a * self.n + b]
    }

    pub fn metric(&self, a: usize, b: usize) -> &Rational {
        &self.metric[a * self.n + b]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    dimension: usize,
    vertices: Vec<Vertex>,
    simplices: Vec<Simplex>,
    simplex_pos: HashMap<SimplexId, usize>,
    tables: DistanceTables,
}

#[derive(Serialize, Deserialize)]
struct VertexFile {
    id: VertexId,
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SimplexFile {
    id: SimplexId,
    vertices: Vec<VertexId>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    dimension: usize,
    vertices: Vec<VertexFile>,
    maximal_simplices: Vec<SimplexFile>,
}

pub fn load_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    SimplicialComplex::from_json(&text)
}

fn squared_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        let d = x - y;
        acc + &d * &d
    })
}

impl SimplicialComplex {
    pub fn new(dimension: usize, vertices: Vec<Vertex>, simplices: Vec<(SimplexId, Vec<VertexId>)>) -> Result<Self> {
        let mut vertex_pos = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_pos.insert(v.id, i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex id {}", v.id)));
            }
        }
        if let Some(first) = vertices.first() {
            if let Some(bad) = vertices.iter().find(|v| v.coords.len() != first.coords.len()) {
                return Err(Error::Validation(format!("vertex {} has a coordinate vector of different length", bad.id)));
            }
        }
        if simplices.is_empty() {
            return Err(Error::Validation("complex has no maximal simplices".into()));
        }
        let mut simplex_pos = HashMap::new();
        let mut out = Vec::with_capacity(simplices.len());
        for (i, (id, mut vs)) in simplices.into_iter().enumerate() {
            if simplex_pos.insert(id, i).is_some() {
                return Err(Error::Validation(format!("duplicate simplex id {id}")));
            }
            vs.sort_unstable();
            vs.dedup();
            if vs.len() != dimension + 1 {
                return Err(Error::Validation(format!(
                    "simplex {id} needs {} distinct vertices for dimension {dimension}",
                    dimension + 1
                )));
            }
            if let Some(v) = vs.iter().find(|v| !vertex_pos.contains_key(v)) {
                return Err(Error::Validation(format!("simplex {id} references unknown vertex {v}")));
            }
            out.push(Simplex { id, vertices: vs });
        }
        let tables = build_tables(&vertices, &vertex_pos, &out);
        Ok(Self { dimension, vertices, simplices: out, simplex_pos, tables })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let vertices = file
            .vertices
            .into_iter()
            .map(|v| {
                let coords = v.coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
                Ok(Vertex { id: v.id, coords })
            })
            .collect::<Result<Vec<_>>>()?;
        let simplices = file.maximal_simplices.into_iter().map(|s| (s.id, s.vertices)).collect();
        Self::new(file.dimension, vertices, simplices)
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            dimension: self.dimension,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexFile { id: v.id, coords: v.coords.iter().map(format_rational).collect() })
                .collect(),
            maximal_simplices: self
                .simplices
                .iter()
                .map(|s| SimplexFile { id: s.id, vertices: s.vertices.clone() })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("complex serializes")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplex_ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices.iter().map(|s| s.id)
    }

    pub fn position(&self, id: SimplexId) -> Result<usize> {
        self.simplex_pos.get(&id).copied().ok_or(Error::UnknownSimplex(id))
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.simplex_pos.contains_key(&id)
    }

    pub fn tables(&self) -> &DistanceTables {
        &self.tables
    }

    /// Shortest 1-skeleton path between the closest vertices; 0 when the simplices share a vertex.
    pub fn simplicial_distance(&self, a: SimplexId, b: SimplexId) -> Result<u32> {
        self.tables.simplicial(self.position(a)?, self.position(b)?).ok_or(Error::Disconnected(a, b))
    }

    /// Squared maximal Euclidean distance between a vertex of `a` and a vertex of `b`.
    pub fn metric_gap(&self, a: SimplexId, b: SimplexId) -> Result<Rational> {
        Ok(self.tables.metric(self.position(a)?, self.position(b)?).clone())
    }

    /// Largest squared length among all edges of the complex.
    pub fn max_edge_squared(&self) -> Rational {
        let pos: HashMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let mut best = Rational::zero();
        for s in &self.simplices {
            for (i, u) in s.vertices.iter().enumerate() {
                for w in &s.vertices[i + 1..] {
                    let d = squared_distance(&self.vertices[pos[u]].coords, &self.vertices[pos[w]].coords);
                    if d > best {
                        best = d;
                    }
                }
            }
        }
        best
    }

    /// Positions of simplices sharing at least one vertex with `a` (including `a`).
    pub fn one_ring(&self, a: usize) -> Vec<usize> {
        (0..self.num_simplices()).filter(|&b| self.tables.simplicial(a, b) == Some(0)).collect()
    }

    /// Number of connected components of the underlying space.
    pub fn components(&self) -> usize {
        let n = self.num_simplices();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if !seen[start] {
                count += 1;
                for b in 0..n {
                    if self.tables.simplicial(start, b).is_some() {
                        seen[b] = true;
                    }
                }
            }
        }
        count
    }

    /// Standard barycentric subdivision: one new vertex per face, one simplex per full flag.
    pub fn barycentric_subdivide(&self) -> SimplicialComplex {
        if self.dimension == 0 {
            return self.clone();
        }
        let pos: HashMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let mut faces: BTreeMap<(usize, Vec<VertexId>), VertexId> = BTreeMap::new();
        let mut flags: Vec<Vec<Vec<VertexId>>> = Vec::new();
        for s in &self.simplices {
            for perm in permutations(&s.vertices) {
                let mut flag = Vec::with_capacity(perm.len());
                for k in 1..=perm.len() {
                    let mut face = perm[..k].to_vec();
                    face.sort_unstable();
                    faces.insert((face.len(), face.clone()), 0);
                    flag.push(face);
                }
                flags.push(flag);
            }
        }
        let mut vertices = Vec::with_capacity(faces.len());
        for (next, ((_, face), id)) in faces.iter_mut().enumerate() {
            *id = next as VertexId;
            let d = self.vertices[pos[&face[0]]].coords.len();
            let scale = Rational::from_integer((face.len() as i64).into());
            let coords = (0..d)
                .map(|c| face.iter().fold(Rational::zero(), |acc, v| acc + &self.vertices[pos[v]].coords[c]) / &scale)
                .collect();
            vertices.push(Vertex { id: *id, coords });
        }
        let simplices = flags
            .into_iter()
            .enumerate()
            .map(|(i, flag)| {
                let vs = flag.into_iter().map(|f| faces[&(f.len(), f)]).collect();
                (i as SimplexId, vs)
            })
            .collect();
        SimplicialComplex::new(self.dimension, vertices, simplices).expect("subdivision of a valid complex is valid")
    }

    /// Repeated barycentric subdivision.
    pub fn subdivided(&self, times: u32) -> SimplicialComplex {
        (0..times).fold(self.clone(), |x, _| x.barycentric_subdivide())
    }
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn build_tables(vertices: &[Vertex], vertex_pos: &HashMap<VertexId, usize>, simplices: &[Simplex]) -> DistanceTables {
    let nv = vertices.len();
    let mut adj = vec![Vec::new(); nv];
    for s in simplices {
        for (i, u) in s.vertices.iter().enumerate() {
            for w in &s.vertices[i + 1..] {
                let (a, b) = (vertex_pos[u], vertex_pos[w]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut vdist = vec![None; nv * nv];
    for src in 0..nv {
        let mut queue = VecDeque::from([src]);
        vdist[src * nv + src] = Some(0u32);
        while let Some(u) = queue.pop_front() {
            let du = vdist[src * nv + u].unwrap();
            for &w in &adj[u] {
                if vdist[src * nv + w].is_none() {
                    vdist[src * nv + w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    let n = simplices.len();
    let mut simplicial = vec![None; n * n];
    let mut metric = vec![Rational::zero(); n * n];
    for a in 0..n {
        for b in 0..n {
            let mut best: Option<u32> = None;
            let mut far = Rational::zero();
            for u in &simplices[a].vertices {
                for w in &simplices[b].vertices {
                    let (pu, pw) = (vertex_pos[u], vertex_pos[w]);
                    if let Some(d) = vdist[pu * nv + pw] {
                        best = Some(best.map_or(d, |x| x.min(d)));
                    }
                    let g = squared_distance(&vertices[pu].coords, &vertices[pw].coords);
                    if g > far {
                        far = g;
                    }
                }
            }
            simplicial[a * n + b] = best;
            metric[a * n + b] = far;
        }
    }
    DistanceTables { n, simplicial, metric }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rational;

    #[test]
    fn hexagon_distances() {
        let x = fixtures::hexagon();
        assert_eq!(x.num_simplices(), 6);
        assert_eq!(x.simplicial_distance(0, 1).unwrap(), 0);
        assert_eq!(x.simplicial_distance(0, 2).unwrap(), 1);
        assert_eq!(x.simplicial_distance(0, 3).unwrap(), 2);
        assert_eq!(x.simplicial_distance(4, 4).unwrap(), 0);
    }

    #[test]
    fn metric_gap_examples() {
        let line = SimplicialComplex::new(
            1,
            vec![
                Vertex { id: 0, coords: vec![rational(0, 1)] },
                Vertex { id: 1, coords: vec![rational(1, 1)] },
                Vertex { id: 2, coords: vec![rational(2, 1)] },
            ],
            vec![(0, vec![0, 1]), (1, vec![1, 2])],
        )
        .unwrap();
        assert_eq!(line.metric_gap(0, 0).unwrap(), rational(1, 1));
        assert_eq!(line.metric_gap(0, 1).unwrap(), rational(4, 1));
        let flat = SimplicialComplex::new(
            1,
            (0..3).map(|id| Vertex { id, coords: vec![rational(0, 1); 2] }).collect(),
            vec![(0, vec![0, 1]), (1, vec![1, 2])],
        )
        .unwrap();
        assert!(flat.metric_gap(0, 1).unwrap().is_zero());
    }

    #[test]
    fn validation_errors() {
        let bad_arity = r#"{"dimension":1,"vertices":[{"id":0,"coords":["0"]},{"id":1,"coords":["1"]},{"id":2,"coords":["2"]}],
            "maximal_simplices":[{"id":0,"vertices":[0,1,2]}]}"#;
        assert!(matches!(SimplicialComplex::from_json(bad_arity), Err(Error::Validation(_))));
        let dangling = r#"{"dimension":1,"vertices":[{"id":0,"coords":["0"]}],
            "maximal_simplices":[{"id":0,"vertices":[0,7]}]}"#;
        assert!(matches!(SimplicialComplex::from_json(dangling), Err(Error::Validation(_))));
        let dup = r#"{"dimension":0,"vertices":[{"id":0,"coords":["0"]}],
            "maximal_simplices":[{"id":0,"vertices":[0]},{"id":0,"vertices":[0]}]}"#;
        assert!(matches!(SimplicialComplex::from_json(dup), Err(Error::Validation(_))));
        assert!(matches!(SimplicialComplex::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn disconnected_distance_errors() {
        let x = fixtures::two_hexagons();
        assert!(matches!(x.simplicial_distance(0, 6), Err(Error::Disconnected(0, 6))));
        assert_eq!(x.components(), 2);
    }

    #[test]
    fn subdivision_counts() {
        assert_eq!(fixtures::hexagon().barycentric_subdivide().num_simplices(), 12);
        assert_eq!(fixtures::triangle().barycentric_subdivide().num_simplices(), 6);
        assert_eq!(fixtures::octahedron().barycentric_subdivide().num_simplices(), 48);
        let point = SimplicialComplex::new(0, vec![Vertex { id: 3, coords: vec![] }], vec![(5, vec![3])]).unwrap();
        assert_eq!(point.barycentric_subdivide(), point);
    }

    #[test]
    fn json_round_trip() {
        let x = fixtures::octahedron();
        assert_eq!(SimplicialComplex::from_json(&x.to_json()).unwrap(), x);
    }
}
