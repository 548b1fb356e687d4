use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{MsfError, Result};

/// A cellulation of the sphere with oriented edges. Plaquettes are closed
/// walks: each entry is an edge and whether the walk follows its orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereLattice {
    name: String,
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    plaquettes: Vec<Vec<(usize, bool)>>,
}

impl SphereLattice {
    /// Validate and build. Checks that every plaquette is a closed walk,
    /// that every edge is traversed by exactly two plaquettes in opposite
    /// directions, that the graph is connected, and that `V - E + F = 2`.
    pub fn new(
        name: impl Into<String>,
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        plaquettes: Vec<Vec<(usize, bool)>>,
    ) -> Result<SphereLattice> {
        let bad = |m: String| MsfError::InvalidArgument(format!("lattice: {m}"));
        for (e, &(t, h)) in edges.iter().enumerate() {
            if t >= num_vertices || h >= num_vertices {
                return Err(bad(format!("edge {e} has an endpoint out of range")));
            }
            if t == h {
                return Err(bad(format!("edge {e} is a loop")));
            }
        }
        let mut uses: Vec<Vec<bool>> = vec![Vec::new(); edges.len()];
        for (p, walk) in plaquettes.iter().enumerate() {
            if walk.is_empty() {
                return Err(bad(format!("plaquette {p} is empty")));
            }
            for &(e, fwd) in walk {
                uses.get_mut(e)
                    .ok_or_else(|| bad(format!("plaquette {p} uses missing edge {e}")))?
                    .push(fwd);
            }
            let ends = |&(e, fwd): &(usize, bool)| {
                let (t, h) = edges[e];
                if fwd {
                    (t, h)
                } else {
                    (h, t)
                }
            };
            for i in 0..walk.len() {
                let (_, end) = ends(&walk[i]);
                let (start, _) = ends(&walk[(i + 1) % walk.len()]);
                if end != start {
                    return Err(bad(format!(
                        "plaquette {p} is not a closed walk at step {i}"
                    )));
                }
            }
        }
        for (e, u) in uses.iter().enumerate() {
            if u.len() != 2 || u[0] == u[1] {
                return Err(bad(format!(
                    "edge {e} must be traversed by two plaquettes in opposite directions"
                )));
            }
        }
        let mut uf = UnionFind::<usize>::new(num_vertices);
        for &(t, h) in &edges {
            uf.union(t, h);
        }
        if num_vertices == 0 || (1..num_vertices).any(|v| !uf.equiv(0, v)) {
            return Err(bad("graph is not connected".into()));
        }
        let chi = num_vertices as i64 - edges.len() as i64 + plaquettes.len() as i64;
        if chi != 2 {
            return Err(bad(format!("Euler characteristic is {chi}, not 2")));
        }
        Ok(SphereLattice {
            name: name.into(),
            num_vertices,
            edges,
            plaquettes,
        })
    }

    /// Build from faces given as vertex cycles on a simple graph. Edges are
    /// oriented from the lower to the higher vertex and numbered in sorted
    /// order.
    pub fn from_vertex_faces(
        name: impl Into<String>,
        num_vertices: usize,
        faces: &[Vec<usize>],
    ) -> Result<SphereLattice> {
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for f in faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                index.insert((a.min(b), a.max(b)), 0);
            }
        }
        for (i, slot) in index.values_mut().enumerate() {
            *slot = i;
        }
        let edges: Vec<(usize, usize)> = index.keys().copied().collect();
        let plaquettes = faces
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|i| {
                        let (a, b) = (f[i], f[(i + 1) % f.len()]);
                        (index[&(a.min(b), a.max(b))], a < b)
                    })
                    .collect()
            })
            .collect();
        SphereLattice::new(name, num_vertices, edges, plaquettes)
    }

    pub fn tetrahedron() -> SphereLattice {
        let faces = [vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        SphereLattice::from_vertex_faces("tetrahedron", 4, &faces).expect("valid lattice")
    }

    /// Vertices are `4x + 2y + z` for the corners of the unit cube.
    pub fn cube() -> SphereLattice {
        let mut faces = Vec::new();
        for axis in 0..3 {
            for side in 0..2 {
                let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
                let mut cycle: Vec<usize> = [(0, 0), (1, 0), (1, 1), (0, 1)]
                    .iter()
                    .map(|&(u, w)| {
                        let mut c = [0usize; 3];
                        c[axis] = side;
                        c[a] = u;
                        c[b] = w;
                        4 * c[0] + 2 * c[1] + c[2]
                    })
                    .collect();
                if side == 0 {
                    cycle.reverse();
                }
                faces.push(cycle);
            }
        }
        SphereLattice::from_vertex_faces("cube", 8, &faces).expect("valid lattice")
    }

    /// Two vertices joined by three parallel edges, all oriented `0 → 1`.
    pub fn theta() -> SphereLattice {
        let plaquettes = (0..3)
            .map(|i| vec![(i, true), ((i + 1) % 3, false)])
            .collect();
        SphereLattice::new("theta", 2, vec![(0, 1); 3], plaquettes).expect("valid lattice")
    }

    pub fn by_name(name: &str) -> Result<SphereLattice> {
        match name {
            "tetrahedron" => Ok(Self::tetrahedron()),
            "cube" => Ok(Self::cube()),
            "theta" => Ok(Self::theta()),
            _ => Err(MsfError::InvalidArgument(format!(
                "unknown lattice {name:?}; expected tetrahedron, cube or theta"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_plaquettes(&self) -> usize {
        self.plaquettes.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn plaquettes(&self) -> &[Vec<(usize, bool)>] {
        &self.plaquettes
    }

    /// Edges incident to `v`, each flagged true when it points toward `v`.
    pub fn star(&self, v: usize) -> Vec<(usize, bool)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(e, &(t, h))| {
                if h == v {
                    Some((e, true))
                } else if t == v {
                    Some((e, false))
                } else {
                    None
                }
            })
            .collect()
    }
}
