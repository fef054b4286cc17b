//! Exact GF(2) machinery for toric-code-type models: stabilizer groups over
//! cell complexes, ground degeneracy by rank arithmetic, stabilizer
//! entanglement entropy, and topological entanglement entropy.

pub mod complex;
pub mod gf2;

pub use complex::{genus2, planar, torus, BoundaryKind, CellComplex};
pub use gf2::{gf2_rank, gf2_rank_cols};

use crate::dense::{self, pauli_x, pauli_y, pauli_z, CMatrix, LocalOperator};
use crate::error::{Error, Result};
use crate::lattice::LatticeGeometry;
use ndarray::Array2;

/// A Pauli string over edge qubits in the binary symplectic frame (phases
/// are not tracked; degeneracy and entropies depend only on the GF(2) data).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliOperator {
    pub x_bits: Vec<bool>,
    pub z_bits: Vec<bool>,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x_bits: vec![false; n],
            z_bits: vec![false; n],
        }
    }

    pub fn x_string(n: usize, qubits: &[usize]) -> Self {
        let mut p = PauliOperator::identity(n);
        for &q in qubits {
            p.x_bits[q] ^= true;
        }
        p
    }

    pub fn z_string(n: usize, qubits: &[usize]) -> Self {
        let mut p = PauliOperator::identity(n);
        for &q in qubits {
            p.z_bits[q] ^= true;
        }
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.x_bits.len()
    }

    /// Symplectic form: 0 means the operators commute.
    pub fn symplectic(&self, other: &PauliOperator) -> bool {
        let mut acc = false;
        for i in 0..self.n_qubits() {
            acc ^= self.x_bits[i] & other.z_bits[i];
            acc ^= self.z_bits[i] & other.x_bits[i];
        }
        acc
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        !self.symplectic(other)
    }

    /// Qubits where the operator acts non-trivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits())
            .filter(|&i| self.x_bits[i] || self.z_bits[i])
            .collect()
    }

    /// Row `[x | z]` of the GF(2) generator matrix.
    pub fn gf2_row(&self) -> Vec<bool> {
        let mut row = self.x_bits.clone();
        row.extend_from_slice(&self.z_bits);
        row
    }

    /// Dense matrix form on the edge lattice (X, Z, Y = XZ up to phase; the
    /// Y phase is irrelevant for the checks this feeds).
    pub fn to_local_operator(&self) -> Result<LocalOperator> {
        let support = self.support();
        let mut m = dense::identity(1);
        for &q in &support {
            let site = match (self.x_bits[q], self.z_bits[q]) {
                (true, false) => pauli_x(),
                (false, true) => pauli_z(),
                (true, true) => pauli_y(),
                (false, false) => unreachable!(),
            };
            m = dense::kron(&m, &site)?;
        }
        LocalOperator::new(support, m)
    }
}

/// An abelian group of Pauli strings given by generators.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    pub generators: Vec<PauliOperator>,
    pub n_qubits: usize,
}

impl StabilizerGroup {
    pub fn new(generators: Vec<PauliOperator>, n_qubits: usize) -> Result<Self> {
        for g in &generators {
            if g.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    got: g.n_qubits(),
                });
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if generators[i].symplectic(&generators[j]) {
                    return Err(Error::NonCommutingGenerators(i, j));
                }
            }
        }
        Ok(StabilizerGroup {
            generators,
            n_qubits,
        })
    }

    pub fn gf2_matrix(&self) -> Vec<Vec<bool>> {
        self.generators.iter().map(|g| g.gf2_row()).collect()
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.gf2_matrix())
    }
}

/// Star and plaquette stabilizers of the toric code on a complex: one X
/// star per vertex (its incident edges) and one Z plaquette per face.
pub fn toric_code_stabilizers(complex: &CellComplex) -> Result<StabilizerGroup> {
    complex.validate()?;
    let n = complex.n_edges();
    let mut generators = Vec::new();
    for (_, star_edges) in complex.vertex_stars() {
        generators.push(PauliOperator::x_string(n, &star_edges));
    }
    for face in &complex.faces {
        generators.push(PauliOperator::z_string(n, face));
    }
    StabilizerGroup::new(generators, n)
}

/// Ground space dimension `2^(n - rank)`.
pub fn ground_degeneracy(group: &StabilizerGroup) -> u64 {
    let k = group.n_qubits - group.rank();
    1u64 << k
}

/// Stabilizer entanglement entropy of `region` in nats:
/// `S = (|A| - k_A) ln 2` with `k_A` the number of independent group
/// elements supported inside `A`. Uses the maximally-mixed-within-ground-
/// space convention when the group does not fix a unique state.
pub fn stabilizer_entropy(group: &StabilizerGroup, region: &[usize]) -> Result<f64> {
    let n = group.n_qubits;
    let mut seen = vec![false; n];
    for &q in region {
        if q >= n {
            return Err(Error::InvalidRegion {
                sites: region.to_vec(),
            });
        }
        if seen[q] {
            return Err(Error::InvalidRegion {
                sites: region.to_vec(),
            });
        }
        seen[q] = true;
    }
    let rows = group.gf2_matrix();
    let rank = gf2_rank(&rows);
    // columns of the complement (both x and z parts)
    let comp_cols: Vec<usize> = (0..n)
        .filter(|q| !seen[*q])
        .flat_map(|q| [q, n + q])
        .collect();
    let rank_comp = gf2_rank_cols(&rows, &comp_cols);
    let k_a = rank - rank_comp;
    Ok((region.len() as f64 - k_a as f64) * std::f64::consts::LN_2)
}

/// Kitaev-Preskill tripartition: three disjoint edge regions meeting at a
/// point inside a contractible disk.
#[derive(Debug, Clone)]
pub struct TriPartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl TriPartition {
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let mut seen = vec![false; n_qubits];
        for region in [&self.a, &self.b, &self.c] {
            for &q in region {
                if q >= n_qubits || seen[q] {
                    return Err(Error::InvalidRegion {
                        sites: region.clone(),
                    });
                }
                seen[q] = true;
            }
        }
        Ok(())
    }

    fn union(regions: &[&[usize]]) -> Vec<usize> {
        let mut out: Vec<usize> = regions.iter().flat_map(|r| r.iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

/// Topological entanglement entropy
/// `gamma = -(S_A + S_B + S_C - S_AB - S_BC - S_AC + S_ABC)`; the sign
/// convention returns the positive universal constant (ln 2 for the toric
/// code, 0 for short-range-entangled controls).
pub fn topological_entropy(group: &StabilizerGroup, partition: &TriPartition) -> Result<f64> {
    partition.validate(group.n_qubits)?;
    let s = |region: &[usize]| stabilizer_entropy(group, region);
    let (a, b, c) = (&partition.a[..], &partition.b[..], &partition.c[..]);
    let combo = s(a)? + s(b)? + s(c)?
        - s(&TriPartition::union(&[a, b]))?
        - s(&TriPartition::union(&[b, c]))?
        - s(&TriPartition::union(&[a, c]))?
        + s(&TriPartition::union(&[a, b, c]))?;
    Ok(-combo)
}

/// The verified Kitaev-Preskill geometry on a square torus: a 2x2-plaquette
/// disk at the origin split into NW plaquette (A), NE plaquette (B), and
/// the southern pair (C); shared edges are assigned to the first region
/// that contains them.
pub fn standard_tripartition(complex: &CellComplex) -> Result<TriPartition> {
    let name = &complex.name;
    if !name.starts_with("torus(") {
        return Err(Error::InvalidComplex(
            "standard tripartition is defined on square tori".into(),
        ));
    }
    let dims: Vec<usize> = name
        .trim_start_matches("torus(")
        .trim_end_matches(')')
        .split(',')
        .filter_map(|s| s.parse().ok())
        .collect();
    let (lx, ly) = (dims[0], dims[1]);
    if lx < 4 || ly < 4 {
        return Err(Error::InvalidComplex(
            "standard tripartition needs a torus of at least 4x4".into(),
        ));
    }
    let vid = |x: usize, y: usize| (x % lx) * ly + (y % ly);
    let he = |x: usize, y: usize| 2 * vid(x, y);
    let ve = |x: usize, y: usize| 2 * vid(x, y) + 1;
    let plaq_edges =
        |x: usize, y: usize| vec![he(x, y), ve(x + 1, y), he(x, y + 1), ve(x, y)];
    let collect = |plaqs: &[(usize, usize)]| -> Vec<usize> {
        let mut out: Vec<usize> = plaqs
            .iter()
            .flat_map(|&(x, y)| plaq_edges(x, y))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let a = collect(&[(0, 1)]);
    let mut b = collect(&[(1, 1)]);
    b.retain(|e| !a.contains(e));
    let mut c = collect(&[(0, 0), (1, 0)]);
    c.retain(|e| !a.contains(e) && !b.contains(e));
    Ok(TriPartition { a, b, c })
}

/// Graph distances between edges (edges adjacent when they share a vertex),
/// packaged as an explicit lattice geometry with one spin-1/2 per edge.
/// Used by the dense cross-checks.
pub fn edge_geometry(complex: &CellComplex) -> Result<LatticeGeometry> {
    let n = complex.n_edges();
    // BFS over the edge-adjacency graph
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (complex.edges[i], complex.edges[j]);
            if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    let mut dist = Array2::<u32>::zeros((n, n));
    for start in 0..n {
        let mut seen = vec![u32::MAX; n];
        seen[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for &next in &adjacency[cur] {
                if seen[next] == u32::MAX {
                    seen[next] = seen[cur] + 1;
                    queue.push_back(next);
                }
            }
        }
        for (j, &d) in seen.iter().enumerate() {
            if d == u32::MAX {
                return Err(Error::InvalidComplex("edge graph is disconnected".into()));
            }
            dist[[start, j]] = d;
        }
    }
    LatticeGeometry::explicit((0..n).collect(), vec![2; n], dist)
}

/// Dense toric-code Hamiltonian `-sum A_v - sum B_p` on the edge qubits.
/// Only sensible for small complexes (the 2^8 cross-check fixture).
pub fn dense_toric_hamiltonian(complex: &CellComplex) -> Result<(LatticeGeometry, CMatrix)> {
    let group = toric_code_stabilizers(complex)?;
    let geometry = edge_geometry(complex)?;
    let dim = geometry.total_dim();
    let mut h = Array2::zeros((dim, dim));
    for g in &group.generators {
        let op = g.to_local_operator()?;
        dense::add_embedded(&mut h, &op, &geometry, -1.0)?;
    }
    Ok((geometry, h))
}
