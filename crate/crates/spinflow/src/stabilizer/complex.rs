//! Two-dimensional cell complexes carrying toric-code qubits on edges:
//! square tori, planar disks with smooth or rough boundary, and a glued
//! genus-2 surface. Loadable from a JSON fixture format.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Boundary style of a planar patch. Smooth truncates the vertex (star)
/// operators at the boundary; rough is realized as the interior dual grid,
/// which truncates the face (plaquette) side instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    Smooth,
    Rough,
}

/// A cell complex: vertices, edges (the qubit carriers), and faces given as
/// edge-id lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellComplex {
    pub name: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
    /// Declared genus for closed surfaces; `None` for patches with boundary.
    pub genus: Option<usize>,
}

impl CellComplex {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    /// Structural validation: endpoints exist, face edges exist, every edge
    /// borders at most two faces, and a declared genus matches the Euler
    /// characteristic.
    pub fn validate(&self) -> Result<()> {
        let vset: BTreeSet<usize> = self.vertices.iter().copied().collect();
        if vset.len() != self.vertices.len() {
            return Err(Error::InvalidComplex("duplicate vertex ids".into()));
        }
        for &(u, v) in &self.edges {
            if !vset.contains(&u) || !vset.contains(&v) {
                return Err(Error::InvalidComplex(format!(
                    "edge ({u},{v}) references unknown vertex"
                )));
            }
        }
        let mut face_count = vec![0usize; self.n_edges()];
        for (fi, face) in self.faces.iter().enumerate() {
            for &e in face {
                if e >= self.n_edges() {
                    return Err(Error::InvalidComplex(format!(
                        "face {fi} references unknown edge {e}"
                    )));
                }
                face_count[e] += 1;
            }
        }
        if let Some(&worst) = face_count.iter().max() {
            if worst > 2 {
                return Err(Error::InvalidComplex(format!(
                    "an edge belongs to {worst} > 2 faces"
                )));
            }
        }
        if let Some(g) = self.genus {
            let chi = self.euler_characteristic();
            let want = 2 - 2 * g as i64;
            if chi != want {
                return Err(Error::InvalidComplex(format!(
                    "euler characteristic {chi} != {want} for genus {g}"
                )));
            }
        }
        Ok(())
    }

    /// Edges incident to each vertex (the star supports).
    pub fn vertex_stars(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut stars: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &self.vertices {
            stars.insert(v, Vec::new());
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            stars.get_mut(&u).unwrap().push(e);
            stars.get_mut(&v).unwrap().push(e);
        }
        stars
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let complex: CellComplex = serde_json::from_str(text)
            .map_err(|e| Error::InvalidComplex(format!("json: {e}")))?;
        complex.validate()?;
        Ok(complex)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Square torus with `lx * ly` vertices and 2 edges per vertex.
pub fn torus(lx: usize, ly: usize) -> Result<CellComplex> {
    if lx < 2 || ly < 2 {
        return Err(Error::InvalidComplex("torus needs lx, ly >= 2".into()));
    }
    let vid = |x: usize, y: usize| (x % lx) * ly + (y % ly);
    let he = |x: usize, y: usize| 2 * vid(x, y);
    let ve = |x: usize, y: usize| 2 * vid(x, y) + 1;
    let mut edges = vec![(0usize, 0usize); 2 * lx * ly];
    for x in 0..lx {
        for y in 0..ly {
            edges[he(x, y)] = (vid(x, y), vid(x + 1, y));
            edges[ve(x, y)] = (vid(x, y), vid(x, y + 1));
        }
    }
    let mut faces = Vec::with_capacity(lx * ly);
    for x in 0..lx {
        for y in 0..ly {
            faces.push(vec![he(x, y), ve(x + 1, y), he(x, y + 1), ve(x, y)]);
        }
    }
    let complex = CellComplex {
        name: format!("torus({lx},{ly})"),
        vertices: (0..lx * ly).collect(),
        edges,
        faces,
        genus: Some(1),
    };
    complex.validate()?;
    Ok(complex)
}

/// Open grid disk: `lx * ly` vertices, interior faces only.
fn grid_disk(lx: usize, ly: usize, name: String) -> Result<CellComplex> {
    if lx < 2 || ly < 2 {
        return Err(Error::InvalidComplex("planar patch needs lx, ly >= 2".into()));
    }
    let vid = |x: usize, y: usize| x * ly + y;
    let mut edges = Vec::new();
    let mut eid: BTreeMap<(char, usize, usize), usize> = BTreeMap::new();
    for x in 0..lx {
        for y in 0..ly {
            if x + 1 < lx {
                eid.insert(('h', x, y), edges.len());
                edges.push((vid(x, y), vid(x + 1, y)));
            }
            if y + 1 < ly {
                eid.insert(('v', x, y), edges.len());
                edges.push((vid(x, y), vid(x, y + 1)));
            }
        }
    }
    let mut faces = Vec::new();
    for x in 0..lx - 1 {
        for y in 0..ly - 1 {
            faces.push(vec![
                eid[&('h', x, y)],
                eid[&('v', x + 1, y)],
                eid[&('h', x, y + 1)],
                eid[&('v', x, y)],
            ]);
        }
    }
    let complex = CellComplex {
        name,
        vertices: (0..lx * ly).collect(),
        edges,
        faces,
        genus: None,
    };
    complex.validate()?;
    Ok(complex)
}

/// Planar disk patch. Smooth: the `lx * ly` vertex grid (boundary stars
/// truncated). Rough: the interior dual grid (boundary plaquettes
/// truncated), structurally the `(lx-1) * (ly-1)` grid disk.
pub fn planar(lx: usize, ly: usize, boundary: BoundaryKind) -> Result<CellComplex> {
    match boundary {
        BoundaryKind::Smooth => grid_disk(lx, ly, format!("planar-smooth({lx},{ly})")),
        BoundaryKind::Rough => {
            if lx < 3 || ly < 3 {
                return Err(Error::InvalidComplex(
                    "rough patch needs lx, ly >= 3".into(),
                ));
            }
            grid_disk(lx - 1, ly - 1, format!("planar-rough({lx},{ly})"))
        }
    }
}

/// Genus-2 surface: two `l x l` tori, one face removed from each, glued
/// along the boundary square (edges and corner vertices identified).
pub fn genus2(l: usize) -> Result<CellComplex> {
    if l < 3 {
        return Err(Error::InvalidComplex("genus2 needs l >= 3".into()));
    }
    let base = torus(l, l)?;
    let nv = base.n_vertices();
    let ne = base.n_edges();
    // the removed face is face 0 = plaquette (0,0); its edges and corners
    let hole_face = 0usize;
    let hole_edges: Vec<usize> = base.faces[hole_face].clone();
    let hole_corners: BTreeSet<usize> = hole_edges
        .iter()
        .flat_map(|&e| [base.edges[e].0, base.edges[e].1])
        .collect();
    // vertex map for copy B: hole corners identify with copy A, rest shift
    let vmap_b = |v: usize| -> usize {
        if hole_corners.contains(&v) {
            v
        } else {
            v + nv
        }
    };
    let mut edges = base.edges.clone();
    let mut edge_map_b = vec![0usize; ne];
    for (e, &(u, v)) in base.edges.iter().enumerate() {
        if hole_edges.contains(&e) {
            edge_map_b[e] = e; // identified with copy A
        } else {
            edge_map_b[e] = edges.len();
            edges.push((vmap_b(u), vmap_b(v)));
        }
    }
    let mut faces = Vec::new();
    for (fi, face) in base.faces.iter().enumerate() {
        if fi == hole_face {
            continue;
        }
        faces.push(face.clone());
    }
    for (fi, face) in base.faces.iter().enumerate() {
        if fi == hole_face {
            continue;
        }
        faces.push(face.iter().map(|&e| edge_map_b[e]).collect());
    }
    let mut vertices: BTreeSet<usize> = BTreeSet::new();
    for &(u, v) in &edges {
        vertices.insert(u);
        vertices.insert(v);
    }
    let complex = CellComplex {
        name: format!("genus2({l})"),
        vertices: vertices.into_iter().collect(),
        edges,
        faces,
        genus: Some(2),
    };
    complex.validate()?;
    Ok(complex)
}
