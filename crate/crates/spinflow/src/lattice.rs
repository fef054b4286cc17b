//! Lattice geometries: site sets, local dimensions, and integer metrics.

use crate::error::{Error, Result, DENSE_DIM_CAP};
use ndarray::Array2;

/// Boundary condition of a one-dimensional chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone)]
enum Metric {
    Chain { n: usize, boundary: Boundary },
    /// Explicit symmetric distance table indexed by site position.
    Explicit(Array2<u32>),
}

/// A finite set of quantum sites with per-site Hilbert dimensions and an
/// integer metric. Sites are identified by `usize` ids; the canonical
/// ordering (ascending id) fixes all tensor-leg conventions.
#[derive(Debug, Clone)]
pub struct LatticeGeometry {
    sites: Vec<usize>,
    local_dims: Vec<usize>,
    metric: Metric,
}

impl LatticeGeometry {
    /// One-dimensional chain of `n` sites (ids `0..n`) with uniform local
    /// dimension.
    pub fn chain(n: usize, local_dim: usize, boundary: Boundary) -> Result<Self> {
        let geom = LatticeGeometry {
            sites: (0..n).collect(),
            local_dims: vec![local_dim; n],
            metric: Metric::Chain { n, boundary },
        };
        geom.check_budget()?;
        Ok(geom)
    }

    /// Arbitrary site set with an explicit distance table. The table is
    /// validated against the metric axioms (symmetry, zero diagonal,
    /// triangle inequality).
    pub fn explicit(sites: Vec<usize>, local_dims: Vec<usize>, dist: Array2<u32>) -> Result<Self> {
        let n = sites.len();
        if local_dims.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: local_dims.len(),
            });
        }
        if dist.nrows() != n || dist.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: dist.nrows(),
            });
        }
        let mut sorted = sites.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n || sorted != sites {
            return Err(Error::InvalidModel(
                "sites must be strictly ascending and unique".into(),
            ));
        }
        for i in 0..n {
            if dist[[i, i]] != 0 {
                return Err(Error::InvalidModel(format!("d({i},{i}) != 0")));
            }
            for j in 0..n {
                if dist[[i, j]] != dist[[j, i]] {
                    return Err(Error::InvalidModel(format!("metric asymmetric at ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[[i, j]] > dist[[i, k]] + dist[[k, j]] {
                        return Err(Error::InvalidModel(format!(
                            "triangle inequality fails on ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let geom = LatticeGeometry {
            sites,
            local_dims,
            metric: Metric::Explicit(dist),
        };
        geom.check_budget()?;
        Ok(geom)
    }

    fn check_budget(&self) -> Result<()> {
        let mut dim: usize = 1;
        for &d in &self.local_dims {
            if d < 2 {
                return Err(Error::InvalidModel(format!("local dimension {d} < 2")));
            }
            dim = dim.saturating_mul(d);
            if dim > DENSE_DIM_CAP {
                return Err(Error::DenseBudget {
                    dim,
                    cap: DENSE_DIM_CAP,
                });
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    /// Position of a site id in the canonical ordering.
    pub fn position(&self, site: usize) -> Result<usize> {
        self.sites
            .binary_search(&site)
            .map_err(|_| Error::UnknownSite { site })
    }

    pub fn local_dim(&self, site: usize) -> Result<usize> {
        Ok(self.local_dims[self.position(site)?])
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    /// Total Hilbert space dimension (product of local dimensions).
    pub fn total_dim(&self) -> usize {
        self.local_dims.iter().product()
    }

    /// Integer distance between two sites.
    pub fn distance(&self, x: usize, y: usize) -> Result<u32> {
        let (ix, iy) = (self.position(x)?, self.position(y)?);
        Ok(match &self.metric {
            Metric::Chain { n, boundary } => {
                let d = ix.abs_diff(iy);
                match boundary {
                    Boundary::Open => d as u32,
                    Boundary::Periodic => d.min(n - d) as u32,
                }
            }
            Metric::Explicit(m) => m[[ix, iy]],
        })
    }

    /// Distance between two site sets: min over pairs.
    pub fn set_distance(&self, xs: &[usize], ys: &[usize]) -> Result<u32> {
        let mut best = u32::MAX;
        for &x in xs {
            for &y in ys {
                best = best.min(self.distance(x, y)?);
            }
        }
        Ok(best)
    }

    /// Diameter of a site set: max over pairs.
    pub fn diameter(&self, xs: &[usize]) -> Result<u32> {
        let mut best = 0;
        for &x in xs {
            for &y in xs {
                best = best.max(self.distance(x, y)?);
            }
        }
        Ok(best)
    }

    /// All sites within distance `r` of `center`.
    pub fn ball(&self, center: usize, r: u32) -> Result<Vec<usize>> {
        self.position(center)?;
        let mut out = Vec::new();
        for &s in &self.sites {
            if self.distance(center, s)? <= r {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Largest distance from `center` to any site.
    pub fn max_radius(&self, center: usize) -> Result<u32> {
        let mut best = 0;
        for &s in &self.sites {
            best = best.max(self.distance(center, s)?);
        }
        Ok(best)
    }

    /// Strides of the canonical row-major index: global index of a
    /// configuration `(c_0, ..., c_{n-1})` is `sum_k c_k * stride[k]`.
    pub fn strides(&self) -> Vec<usize> {
        let n = self.local_dims.len();
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.local_dims[k + 1];
        }
        strides
    }

    pub fn same_geometry(&self, other: &Self) -> bool {
        self.sites == other.sites && self.local_dims == other.local_dims
    }
}
