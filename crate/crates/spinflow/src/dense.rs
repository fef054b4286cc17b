//! Dense complex-matrix substrate: tensor embedding of local operators,
//! Hermitian eigendecomposition, norms, partial trace, conditional
//! expectation, and unitary exponentials.
//!
//! All tolerances are relative to the Frobenius norm of the input unless
//! stated otherwise.

use crate::error::{Error, Result, DENSE_DIM_CAP};
use crate::lapack;
use crate::lattice::LatticeGeometry;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = Array2<C64>;

pub const HERMITICITY_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    Array2::eye(dim)
}

pub fn pauli_x() -> CMatrix {
    ndarray::array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]
}

pub fn pauli_y() -> CMatrix {
    ndarray::array![[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]
}

pub fn pauli_z() -> CMatrix {
    ndarray::array![[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]]
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.t().mapv(|v| v.conj())
}

pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖a - a†‖_F / ‖a‖_F` (0 for the zero matrix).
pub fn hermiticity_deviation(a: &CMatrix) -> f64 {
    let norm = frobenius_norm(a);
    if norm == 0.0 {
        return 0.0;
    }
    let mut dev = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            dev += (a[[i, j]] - a[[j, i]].conj()).norm_sqr();
        }
    }
    dev.sqrt() / norm
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.dot(b) - b.dot(a)
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let rows = ar.checked_mul(br).ok_or(Error::DenseBudget {
        dim: usize::MAX,
        cap: DENSE_DIM_CAP,
    })?;
    let cols = ac.checked_mul(bc).ok_or(Error::DenseBudget {
        dim: usize::MAX,
        cap: DENSE_DIM_CAP,
    })?;
    if rows > DENSE_DIM_CAP || cols > DENSE_DIM_CAP {
        return Err(Error::DenseBudget {
            dim: rows.max(cols),
            cap: DENSE_DIM_CAP,
        });
    }
    let mut out = Array2::zeros((rows, cols));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            if aij == c(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a list, left to right.
pub fn kron_all(ops: &[&CMatrix]) -> Result<CMatrix> {
    let mut out = identity(1);
    for op in ops {
        out = kron(&out, op)?;
    }
    Ok(out)
}

/// An operator acting on a named subset of lattice sites. The matrix legs
/// follow the canonical (ascending site id) ordering of the support.
#[derive(Debug, Clone)]
pub struct LocalOperator {
    support: Vec<usize>,
    matrix: CMatrix,
}

impl LocalOperator {
    /// `support` must be strictly ascending; the matrix legs follow it.
    pub fn new(support: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(
                "support must be strictly ascending; use with_site_order for other leg orders"
                    .into(),
            ));
        }
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        Ok(LocalOperator { support, matrix })
    }

    /// Build from a matrix whose legs follow `sites` in the given (possibly
    /// non-canonical) order with per-leg dimensions `dims`. The legs are
    /// permuted into canonical site order, so the embedded operator is
    /// independent of the order in which the support was specified.
    pub fn with_site_order(sites: &[usize], dims: &[usize], matrix: CMatrix) -> Result<Self> {
        if sites.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: sites.len(),
                got: dims.len(),
            });
        }
        let total: usize = dims.iter().product();
        if matrix.nrows() != total || matrix.ncols() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                got: matrix.nrows(),
            });
        }
        let k = sites.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| sites[i]);
        if order.windows(2).any(|w| sites[w[0]] == sites[w[1]]) {
            return Err(Error::InvalidModel("duplicate site in support".into()));
        }
        // strides in the given leg order and in canonical order
        let stride_of = |ds: &[usize]| -> Vec<usize> {
            let mut s = vec![1usize; ds.len()];
            for i in (0..ds.len().saturating_sub(1)).rev() {
                s[i] = s[i + 1] * ds[i + 1];
            }
            s
        };
        let given_strides = stride_of(dims);
        let canon_dims: Vec<usize> = order.iter().map(|&i| dims[i]).collect();
        let canon_strides = stride_of(&canon_dims);
        // index map: canonical index -> given index
        let mut map = vec![0usize; total];
        for idx in 0..total {
            // digits of idx in canonical order
            let mut rem = idx;
            let mut given = 0usize;
            for (pos, &leg) in order.iter().enumerate() {
                let digit = rem / canon_strides[pos];
                rem %= canon_strides[pos];
                given += digit * given_strides[leg];
            }
            map[idx] = given;
        }
        let mut out = Array2::zeros((total, total));
        for i in 0..total {
            for j in 0..total {
                out[[i, j]] = matrix[[map[i], map[j]]];
            }
        }
        let support: Vec<usize> = order.iter().map(|&i| sites[i]).collect();
        LocalOperator::new(support, out)
    }

    /// Single-site operator.
    pub fn on_site(site: usize, matrix: CMatrix) -> Result<Self> {
        LocalOperator::new(vec![site], matrix)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Shift every support site by `offset` (chains).
    pub fn translated(&self, offset: i64) -> Result<Self> {
        let mut support = Vec::with_capacity(self.support.len());
        for &s in &self.support {
            let t = s as i64 + offset;
            if t < 0 {
                return Err(Error::UnknownSite { site: usize::MAX });
            }
            support.push(t as usize);
        }
        LocalOperator::new(support, self.matrix.clone())
    }
}

/// Precomputed index offsets for a support set inside a geometry:
/// `global = sub_offsets[i] + comp_offsets[e]`.
pub(crate) struct SupportIndexer {
    pub sub_offsets: Vec<usize>,
    pub comp_offsets: Vec<usize>,
    pub sub_dim: usize,
    pub comp_dim: usize,
}

pub(crate) fn support_indexer(
    geometry: &LatticeGeometry,
    support: &[usize],
) -> Result<SupportIndexer> {
    let strides = geometry.strides();
    let mut sub_pos = Vec::with_capacity(support.len());
    for &s in support {
        sub_pos.push(geometry.position(s)?);
    }
    let comp_pos: Vec<usize> = (0..geometry.n_sites())
        .filter(|p| !sub_pos.contains(p))
        .collect();
    let dims = geometry.local_dims();
    let offsets = |positions: &[usize]| -> Vec<usize> {
        let total: usize = positions.iter().map(|&p| dims[p]).product();
        let mut out = vec![0usize; total];
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut rem = idx;
            let mut acc = 0usize;
            // row-major over the positions in their listed order
            let mut radix: usize = total;
            for &p in positions {
                radix /= dims[p];
                let digit = rem / radix;
                rem %= radix;
                acc += digit * strides[p];
            }
            *slot = acc;
        }
        out
    };
    let sub_offsets = offsets(&sub_pos);
    let comp_offsets = offsets(&comp_pos);
    Ok(SupportIndexer {
        sub_dim: sub_offsets.len(),
        comp_dim: comp_offsets.len(),
        sub_offsets,
        comp_offsets,
    })
}

/// Embed a local operator into the full lattice space (identity elsewhere).
pub fn embed(op: &LocalOperator, geometry: &LatticeGeometry) -> Result<CMatrix> {
    let dim = geometry.total_dim();
    let mut out = Array2::zeros((dim, dim));
    add_embedded(&mut out, op, geometry, 1.0)?;
    Ok(out)
}

/// Accumulate `coeff * embed(op)` into `acc` without materializing the
/// embedded matrix.
pub fn add_embedded(
    acc: &mut CMatrix,
    op: &LocalOperator,
    geometry: &LatticeGeometry,
    coeff: f64,
) -> Result<()> {
    let ix = support_indexer(geometry, op.support())?;
    let m = op.matrix();
    if m.nrows() != ix.sub_dim {
        return Err(Error::DimensionMismatch {
            expected: ix.sub_dim,
            got: m.nrows(),
        });
    }
    if acc.nrows() != geometry.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: geometry.total_dim(),
            got: acc.nrows(),
        });
    }
    for r in 0..ix.sub_dim {
        for col in 0..ix.sub_dim {
            let v = m[[r, col]];
            if v == c(0.0, 0.0) {
                continue;
            }
            let scaled = v * coeff;
            for &e in &ix.comp_offsets {
                acc[[ix.sub_offsets[r] + e, ix.sub_offsets[col] + e]] += scaled;
            }
        }
    }
    Ok(())
}

/// Spectral data of a Hermitian matrix: ascending energies and orthonormal
/// eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub energies: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }
}

/// True when every imaginary part is exactly zero (models assembled from
/// real couplings hit this path and use the real symmetric solver).
pub(crate) fn is_exactly_real(a: &CMatrix) -> bool {
    a.iter().all(|v| v.im == 0.0)
}

pub(crate) fn real_part(a: &CMatrix) -> Array2<f64> {
    a.mapv(|v| v.re)
}

pub(crate) fn complexify(a: &Array2<f64>) -> CMatrix {
    a.mapv(|v| c(v, 0.0))
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    let dev = hermiticity_deviation(h);
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: HERMITICITY_TOL,
        });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigensystem(h: &CMatrix) -> Result<EigenSystem> {
    check_hermitian(h)?;
    if is_exactly_real(h) {
        let (w, v) = lapack::eigh_real(&real_part(h), true)?;
        Ok(EigenSystem {
            energies: w.to_vec(),
            vectors: complexify(&v.expect("vectors requested")),
        })
    } else {
        let (w, v) = lapack::eigh_complex(h, true)?;
        Ok(EigenSystem {
            energies: w.to_vec(),
            vectors: v.expect("vectors requested"),
        })
    }
}

/// Ascending eigenvalues of a Hermitian matrix (no vectors).
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let w: Array1<f64> = if is_exactly_real(h) {
        lapack::eigh_real(&real_part(h), false)?.0
    } else {
        lapack::eigh_complex(h, false)?.0
    };
    Ok(w.to_vec())
}

/// Largest singular value. Computed from the spectrum of `a† a`; Hermitian
/// and anti-Hermitian inputs short-circuit to `max |eig|`, which is the
/// same number without the extra product.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    let fnorm = frobenius_norm(a);
    if fnorm == 0.0 {
        return 0.0;
    }
    if a.nrows() == a.ncols() {
        if hermiticity_deviation(a) < 1e-13 {
            if let Ok(w) = hermitian_eigenvalues(a) {
                return w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            }
        }
        // anti-Hermitian: i*a is Hermitian
        let ia = a.mapv(|v| v * c(0.0, 1.0));
        if hermiticity_deviation(&ia) < 1e-13 {
            if let Ok(w) = hermitian_eigenvalues(&ia) {
                return w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            }
        }
    }
    let g = dagger(a).dot(a);
    match hermitian_eigenvalues(&g) {
        Ok(w) => w.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
        Err(_) => fnorm, // Frobenius upper bound as a last resort
    }
}

/// Trace over the complement of `keep`.
pub fn partial_trace(a: &CMatrix, keep: &[usize], geometry: &LatticeGeometry) -> Result<CMatrix> {
    let dim = geometry.total_dim();
    if a.nrows() != dim || a.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: a.nrows(),
        });
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() {
        return Err(Error::InvalidRegion {
            sites: keep.to_vec(),
        });
    }
    let ix = support_indexer(geometry, &keep_sorted)?;
    let mut out = Array2::zeros((ix.sub_dim, ix.sub_dim));
    for r in 0..ix.sub_dim {
        for col in 0..ix.sub_dim {
            let mut acc = c(0.0, 0.0);
            for &e in &ix.comp_offsets {
                acc += a[[ix.sub_offsets[r] + e, ix.sub_offsets[col] + e]];
            }
            out[[r, col]] = acc;
        }
    }
    Ok(out)
}

/// Conditional expectation onto the algebra supported in `region`:
/// normalized partial trace over the complement, re-embedded with identity.
/// Idempotent, unital, and a contraction in spectral norm; fixes operators
/// already supported in `region`.
pub fn conditional_expectation(
    a: &CMatrix,
    region: &[usize],
    geometry: &LatticeGeometry,
) -> Result<CMatrix> {
    let dim = geometry.total_dim();
    if a.nrows() != dim || a.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: a.nrows(),
        });
    }
    let mut region_sorted = region.to_vec();
    region_sorted.sort_unstable();
    region_sorted.dedup();
    if region_sorted.len() == geometry.n_sites() {
        return Ok(a.clone());
    }
    let reduced = partial_trace(a, &region_sorted, geometry)?;
    let ix = support_indexer(geometry, &region_sorted)?;
    let norm = 1.0 / ix.comp_dim as f64;
    let mut out = Array2::zeros((dim, dim));
    for r in 0..ix.sub_dim {
        for col in 0..ix.sub_dim {
            let v = reduced[[r, col]] * norm;
            if v == c(0.0, 0.0) {
                continue;
            }
            for &e in &ix.comp_offsets {
                out[[ix.sub_offsets[r] + e, ix.sub_offsets[col] + e]] = v;
            }
        }
    }
    Ok(out)
}

/// `exp(i s h)` for Hermitian `h`, via eigendecomposition. Unitary to
/// roundoff.
pub fn unitary_exp(h: &CMatrix, s: f64) -> Result<CMatrix> {
    let eig = hermitian_eigensystem(h)?;
    Ok(unitary_exp_from_eigensystem(&eig, s))
}

pub fn unitary_exp_from_eigensystem(eig: &EigenSystem, s: f64) -> CMatrix {
    let n = eig.dim();
    let mut scaled = eig.vectors.clone();
    for (k, &e) in eig.energies.iter().enumerate() {
        let phase = c(0.0, s * e).exp();
        scaled.column_mut(k).mapv_inplace(|v| v * phase);
    }
    let mut out = scaled.dot(&dagger(&eig.vectors));
    debug_assert_eq!(out.nrows(), n);
    // clean tiny asymmetries are left as-is; the product of unitaries stays
    // unitary to machine precision
    out.map_inplace(|_| {});
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;
    use ndarray::array;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            m[[i, i]] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[[i, j]] = v;
                m[[j, i]] = v.conj();
            }
        }
        m
    }

    fn random_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
        Array2::from_shape_fn((n, n), |_| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    /// Independent Jacobi eigenvalue oracle for small Hermitian matrices.
    fn jacobi_eigenvalues(a: &CMatrix) -> Vec<f64> {
        let n = a.nrows();
        let mut m = a.clone();
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off += m[[i, j]].norm_sqr();
                    }
                }
            }
            if off < 1e-28 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[[p, q]];
                    if apq.norm() < 1e-300 {
                        continue;
                    }
                    // unitary 2x2 rotation zeroing (p,q)
                    let app = m[[p, p]].re;
                    let aqq = m[[q, q]].re;
                    let phase = apq / c(apq.norm(), 0.0);
                    let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                    let (co, si) = (theta.cos(), theta.sin());
                    // columns
                    for i in 0..n {
                        let mip = m[[i, p]];
                        let miq = m[[i, q]];
                        m[[i, p]] = mip * c(co, 0.0) - miq * phase.conj() * c(si, 0.0);
                        m[[i, q]] = mip * phase * c(si, 0.0) + miq * c(co, 0.0);
                    }
                    // rows
                    for j in 0..n {
                        let mpj = m[[p, j]];
                        let mqj = m[[q, j]];
                        m[[p, j]] = mpj * c(co, 0.0) - mqj * phase * c(si, 0.0);
                        m[[q, j]] = mpj * phase.conj() * c(si, 0.0) + mqj * c(co, 0.0);
                    }
                }
            }
        }
        let mut w: Vec<f64> = (0..n).map(|i| m[[i, i]].re).collect();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        w
    }

    #[test]
    fn kron_identity_and_dims() {
        let i2 = identity(2);
        let i4 = kron(&i2, &i2).unwrap();
        assert_eq!(i4, identity(4));
        let a = Array2::from_shape_fn((2, 2), |(i, j)| c((i + j) as f64, 0.0));
        let b = Array2::from_shape_fn((3, 3), |(i, j)| c(i as f64 - j as f64, 0.0));
        assert_eq!(kron(&a, &b).unwrap().dim(), (6, 6));
    }

    #[test]
    fn kron_pauli_block_form() {
        let m = kron(&pauli_x(), &pauli_z()).unwrap();
        assert_eq!(m[[0, 2]], c(1.0, 0.0));
        assert_eq!(m[[1, 3]], c(-1.0, 0.0));
        assert_eq!(m[[0, 0]], c(0.0, 0.0));
    }

    #[test]
    fn kron_associative() {
        // dyadic-rational entries make the products exact, so associativity
        // holds to exact equality
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut dyadic = |n: usize| {
            Array2::from_shape_fn((n, n), |_| {
                let choices = [-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0];
                c(
                    choices[rng.gen_range(0..choices.len())],
                    choices[rng.gen_range(0..choices.len())],
                )
            })
        };
        let a = dyadic(2);
        let b = dyadic(3);
        let d = dyadic(2);
        let left = kron(&kron(&a, &b).unwrap(), &d).unwrap();
        let right = kron(&a, &kron(&b, &d).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn embed_definition_two_sites() {
        let g = LatticeGeometry::chain(2, 2, Boundary::Open).unwrap();
        let op = LocalOperator::on_site(1, pauli_z()).unwrap();
        let m = embed(&op, &g).unwrap();
        assert_eq!(m, kron(&identity(2), &pauli_z()).unwrap());
        let op0 = LocalOperator::on_site(0, pauli_z()).unwrap();
        assert_eq!(
            embed(&op0, &g).unwrap(),
            kron(&pauli_z(), &identity(2)).unwrap()
        );
    }

    #[test]
    fn embed_identity_is_identity() {
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let op = LocalOperator::new(vec![0, 2], identity(4)).unwrap();
        assert_eq!(embed(&op, &g).unwrap(), identity(8));
    }

    #[test]
    fn embed_support_order_independent() {
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(2, &mut rng);
        let ab = kron(&a, &b).unwrap();
        let ba = kron(&b, &a).unwrap();
        let canonical = LocalOperator::with_site_order(&[0, 2], &[2, 2], ab).unwrap();
        let swapped = LocalOperator::with_site_order(&[2, 0], &[2, 2], ba).unwrap();
        let d = embed(&canonical, &g).unwrap() - embed(&swapped, &g).unwrap();
        assert!(frobenius_norm(&d) < 1e-14);
    }

    #[test]
    fn embed_preserves_spectral_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian(4, &mut rng);
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let op = LocalOperator::new(vec![0, 1], a.clone()).unwrap();
        let big = embed(&op, &g).unwrap();
        assert!((spectral_norm(&big) - spectral_norm(&a)).abs() < 1e-10);
    }

    #[test]
    fn embed_respects_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_matrix(4, &mut rng);
        let b = random_matrix(4, &mut rng);
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let ea = embed(&LocalOperator::new(vec![0, 2], a.clone()).unwrap(), &g).unwrap();
        let eb = embed(&LocalOperator::new(vec![0, 2], b.clone()).unwrap(), &g).unwrap();
        let eab = embed(&LocalOperator::new(vec![0, 2], a.dot(&b)).unwrap(), &g).unwrap();
        let d = &eab - &ea.dot(&eb);
        assert!(frobenius_norm(&d) < 1e-12);
    }

    #[test]
    fn eigensystem_pauli_cases() {
        let eig = hermitian_eigensystem(&pauli_z()).unwrap();
        assert!((eig.energies[0] + 1.0).abs() < 1e-14);
        assert!((eig.energies[1] - 1.0).abs() < 1e-14);
        let eig = hermitian_eigensystem(&pauli_x()).unwrap();
        assert!((eig.energies[0] + 1.0).abs() < 1e-14);
        // eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase
        let v0 = eig.vectors.column(0);
        assert!((v0[0].norm() - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
        assert!((v0[0] + v0[1]).norm() < 1e-12);
    }

    #[test]
    fn eigensystem_reconstruction_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(64, &mut rng);
        let eig = hermitian_eigensystem(&h).unwrap();
        let mut rec = Array2::zeros((64, 64));
        for k in 0..64 {
            let vk = eig.vectors.column(k);
            for i in 0..64 {
                for j in 0..64 {
                    rec[[i, j]] += vk[i] * vk[j].conj() * eig.energies[k];
                }
            }
        }
        let scale = spectral_norm(&h);
        assert!(spectral_norm(&(&rec - &h)) <= 1e-10 * scale);
        // gram matrix within 1e-10 of identity
        let gram = dagger(&eig.vectors).dot(&eig.vectors);
        assert!(spectral_norm(&(&gram - &identity(64))) < 1e-10);
        // residual per eigenpair
        for k in 0..64 {
            let hv = h.dot(&eig.vectors.column(k));
            let mut r = 0.0f64;
            for i in 0..64 {
                r += (hv[i] - eig.vectors[[i, k]] * eig.energies[k]).norm_sqr();
            }
            assert!(r.sqrt() <= 1e-10 * scale);
        }
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let m = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigenvalues_match_jacobi_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let h = random_hermitian(12, &mut rng);
        let ours = hermitian_eigenvalues(&h).unwrap();
        let oracle = jacobi_eigenvalues(&h);
        for (a, b) in ours.iter().zip(oracle.iter()) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn spectral_norm_cases() {
        assert!((spectral_norm(&pauli_x()) - 1.0).abs() < 1e-14);
        let d = array![[c(3.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-5.0, 0.0)]];
        assert!((spectral_norm(&d) - 5.0).abs() < 1e-14);
        // random: agrees with sqrt of max eigenvalue of A†A via the oracle
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = random_matrix(10, &mut rng);
        let g = dagger(&a).dot(&a);
        let oracle = jacobi_eigenvalues(&g).last().unwrap().max(0.0).sqrt();
        assert!((spectral_norm(&a) - oracle).abs() < 1e-10);
        // sub-multiplicative and unitary invariant
        let b = random_matrix(10, &mut rng);
        assert!(spectral_norm(&a.dot(&b)) <= spectral_norm(&a) * spectral_norm(&b) + 1e-12);
        let u = unitary_exp(&random_hermitian(10, &mut rng), 0.7).unwrap();
        assert!((spectral_norm(&u.dot(&a)) - spectral_norm(&a)).abs() < 1e-10);
    }

    #[test]
    fn partial_trace_product_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut r1 = random_hermitian(2, &mut rng);
        let mut r2 = random_hermitian(2, &mut rng);
        // make them density-like
        r1 = dagger(&r1).dot(&r1);
        r2 = dagger(&r2).dot(&r2);
        let g = LatticeGeometry::chain(2, 2, Boundary::Open).unwrap();
        let rho = kron(&r1, &r2).unwrap();
        let red = partial_trace(&rho, &[0], &g).unwrap();
        let tr2 = r2[[0, 0]] + r2[[1, 1]];
        let d = &red - &r1.mapv(|v| v * tr2);
        assert!(frobenius_norm(&d) < 1e-12);
    }

    #[test]
    fn partial_trace_bell_state() {
        let g = LatticeGeometry::chain(2, 2, Boundary::Open).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let psi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let mut rho = Array2::zeros((4, 4));
        for i in 0..4 {
            for j in 0..4 {
                rho[[i, j]] = psi[i] * psi[j].conj();
            }
        }
        let red = partial_trace(&rho, &[0], &g).unwrap();
        let d = &red - &identity(2).mapv(|v| v * c(0.5, 0.0));
        assert!(frobenius_norm(&d) < 1e-14);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let mut rho = random_matrix(8, &mut rng);
        rho = dagger(&rho).dot(&rho);
        let tr: C64 = (0..8).map(|i| rho[[i, i]]).sum();
        let red = partial_trace(&rho, &[1], &g).unwrap();
        let tr_red: C64 = (0..2).map(|i| red[[i, i]]).sum();
        assert!((tr - tr_red).norm() < 1e-12);
    }

    #[test]
    fn conditional_expectation_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let a = random_matrix(8, &mut rng);
        // fixed point: operator supported in region
        let op = LocalOperator::new(vec![0, 1], random_matrix(4, &mut rng)).unwrap();
        let ea = embed(&op, &g).unwrap();
        let fixed = conditional_expectation(&ea, &[0, 1], &g).unwrap();
        assert!(frobenius_norm(&(&fixed - &ea)) < 1e-12);
        // empty region: (Tr a / dim) * identity
        let e0 = conditional_expectation(&a, &[], &g).unwrap();
        let tr: C64 = (0..8).map(|i| a[[i, i]]).sum();
        let d = &e0 - &identity(8).mapv(|v| v * (tr / c(8.0, 0.0)));
        assert!(frobenius_norm(&d) < 1e-12);
        // idempotent
        let e1 = conditional_expectation(&a, &[0, 2], &g).unwrap();
        let e2 = conditional_expectation(&e1, &[0, 2], &g).unwrap();
        assert!(frobenius_norm(&(&e2 - &e1)) < 1e-12);
        // contraction in spectral norm
        assert!(spectral_norm(&e1) <= spectral_norm(&a) + 1e-12);
        // full region is the identity map
        let ef = conditional_expectation(&a, &[0, 1, 2], &g).unwrap();
        assert_eq!(ef, a);
    }

    #[test]
    fn partial_trace_of_outside_support_embed() {
        // embed of an operator supported outside keep reduces to a scalar
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let g = LatticeGeometry::chain(3, 2, Boundary::Open).unwrap();
        let op = LocalOperator::on_site(2, random_hermitian(2, &mut rng)).unwrap();
        let big = embed(&op, &g).unwrap();
        let red = partial_trace(&big, &[0], &g).unwrap();
        // tracing out sites {1,2} of I ⊗ I ⊗ op leaves (Tr big / dim_keep) * I
        let coeff = big.diag().sum() / c(2.0, 0.0);
        let d = &red - &identity(2).mapv(|v| v * coeff);
        assert!(frobenius_norm(&d) < 1e-12);
    }

    #[test]
    fn unitary_exp_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        // s = 0 -> identity
        let h = random_hermitian(8, &mut rng);
        let u = unitary_exp(&h, 0.0).unwrap();
        assert!(frobenius_norm(&(&u - &identity(8))) < 1e-12);
        // exp(i pi sigma_z) = -I
        let u = unitary_exp(&pauli_z(), std::f64::consts::PI).unwrap();
        let d = &u + &identity(2);
        assert!(frobenius_norm(&d) < 1e-12);
        // unitarity on a bigger random instance
        let h = random_hermitian(32, &mut rng);
        let u = unitary_exp(&h, 0.37).unwrap();
        let d = dagger(&u).dot(&u) - identity(32);
        assert!(spectral_norm(&d) <= 1e-10);
        // group law
        let u1 = unitary_exp(&h, 0.2).unwrap();
        let u2 = unitary_exp(&h, 0.5).unwrap();
        let u12 = unitary_exp(&h, 0.7).unwrap();
        assert!(spectral_norm(&(&u1.dot(&u2) - &u12)) <= 1e-10);
    }
}
