//! The spectral flow: filter function, flow generator in frequency- and
//! time-domain constructions, unitary transport along gapped paths,
//! projector transport and derivative-identity checks, quasi-locality
//! profiling, local decomposition of the generator, and symmetry
//! commutation.

pub mod filter;

pub use filter::{make_filter, FilterFunction};

use crate::dense::{
    self, conditional_expectation, dagger, CMatrix, EigenSystem, C64,
};
use crate::error::{Error, Result};
use crate::lattice::LatticeGeometry;
use crate::models::{assemble_derivative, assemble_hamiltonian, Model, SymmetryAction};
use crate::sectors::eigh_sectored;
use crate::spectral::{ground_data_sectored, select_patch, GroundData, PatchPolicy};
use ndarray::Array2;

/// Which construction produced a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Frequency,
    Time,
}

/// The flow generator `D(lambda)`, Hermitian.
#[derive(Debug, Clone)]
pub struct FlowGenerator {
    pub lambda: f64,
    pub matrix: CMatrix,
    pub construction: Construction,
    pub gamma: f64,
}

/// Frequency-domain construction: in the eigenbasis of `H(lambda)`,
/// `D_jk = W(E_j - E_k) H'_jk`.
pub fn generator_frequency(
    eig: &EigenSystem,
    hprime: &CMatrix,
    filter: &FilterFunction,
    lambda: f64,
) -> Result<FlowGenerator> {
    let n = eig.dim();
    if hprime.nrows() != n || hprime.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: hprime.nrows(),
        });
    }
    let v = &eig.vectors;
    let mut tilde = dagger(v).dot(hprime).dot(v);
    for j in 0..n {
        for k in 0..n {
            let w = filter.transfer(eig.energies[j] - eig.energies[k]);
            tilde[[j, k]] *= w;
        }
    }
    let matrix = v.dot(&tilde).dot(&dagger(v));
    Ok(FlowGenerator {
        lambda,
        matrix,
        construction: Construction::Frequency,
        gamma: filter.gamma,
    })
}

/// Time-domain construction: direct quadrature of
/// `∫ dt w(t) ∫_0^t du tau_u(H')` over the filter's tabulated grid, with the
/// inner integral accumulated by cumulative trapezoid in the eigenbasis.
pub fn generator_time(
    eig: &EigenSystem,
    hprime: &CMatrix,
    filter: &FilterFunction,
    lambda: f64,
) -> Result<FlowGenerator> {
    let samples = filter.time_samples.as_ref().ok_or(Error::DegenerateGrid { ratio: 0.0 })?;
    let n = eig.dim();
    if hprime.nrows() != n || hprime.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: hprime.nrows(),
        });
    }
    let v = &eig.vectors;
    let tilde = dagger(v).dot(hprime).dot(v);
    let dt = samples.dt;
    let n_half = samples.n_half();
    let omega: Vec<f64> = {
        let mut o = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                o.push(eig.energies[j] - eig.energies[k]);
            }
        }
        o
    };
    let mut acc = Array2::<C64>::zeros((n, n));
    // positive and negative time branches
    for sign in [1.0f64, -1.0f64] {
        let mut inner = Array2::<C64>::zeros((n, n)); // ∫_0^t tau_u(H') du
        let mut prev: Vec<C64> = tilde.iter().copied().collect(); // tau_0(H')
        for step in 1..=n_half {
            let t = sign * step as f64 * dt;
            let idx = (n_half as i64 + (sign as i64) * step as i64) as usize;
            let w_t = samples.values[idx];
            let mut flat = 0usize;
            for j in 0..n {
                for k in 0..n {
                    let cur = C64::new(0.0, omega[flat] * t).exp() * tilde[[j, k]];
                    inner[[j, k]] += C64::new(sign * 0.5 * dt, 0.0) * (prev[flat] + cur);
                    prev[flat] = cur;
                    flat += 1;
                }
            }
            // outer trapezoid: full weight inside, half at the ends
            let outer = if step == n_half { 0.5 * dt } else { dt };
            if w_t != 0.0 {
                acc.scaled_add(C64::new(w_t * outer, 0.0), &inner);
            }
        }
    }
    let matrix = v.dot(&acc).dot(&dagger(v));
    Ok(FlowGenerator {
        lambda,
        matrix,
        construction: Construction::Time,
        gamma: filter.gamma,
    })
}

/// How the flow picks its filter width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaPolicy {
    /// Use this gamma; fail if the sampled patch gap dips below it.
    Fixed(f64),
    /// `gamma = margin * min` sampled patch gap along the path.
    MinGapMargin { margin: f64 },
    /// `gamma = margin * min(endpoint gaps)`; fail if the interior dips
    /// below it (the strict policy for paths suspected of crossing a
    /// transition).
    EndpointMargin { margin: f64 },
}

/// Path-ordered solution of `V' = i D(lambda) V`, `V(lambda0) = 1`.
#[derive(Debug, Clone)]
pub struct FlowUnitary {
    pub lambda0: f64,
    pub lambda1: f64,
    pub matrix: CMatrix,
    pub steps: usize,
    pub gamma: f64,
}

struct SectorWork {
    indices: Vec<usize>,
}

fn layout_groups(model: &Model, probe: &CMatrix, probe2: &CMatrix) -> Vec<SectorWork> {
    let dim = probe.nrows();
    if let Some(layout) = model.sector_layout() {
        if layout.is_block_clean(probe) && layout.is_block_clean(probe2) {
            return layout
                .groups
                .iter()
                .map(|g| SectorWork { indices: g.clone() })
                .collect();
        }
    }
    vec![SectorWork {
        indices: (0..dim).collect(),
    }]
}

fn extract(m: &CMatrix, idx: &[usize]) -> CMatrix {
    Array2::from_shape_fn((idx.len(), idx.len()), |(i, j)| m[[idx[i], idx[j]]])
}

/// Midpoint-exponential integration of the flow along `[lambda0, lambda1]`.
/// The patch gap is sampled on the integration grid (midpoints plus
/// endpoints) and checked against the gamma policy before stepping.
pub fn integrate_flow(
    model: &Model,
    lambda0: f64,
    lambda1: f64,
    steps: usize,
    policy: GammaPolicy,
    patch: &PatchPolicy,
) -> Result<FlowUnitary> {
    let dim = model.geometry.total_dim();
    if lambda0 == lambda1 {
        return Ok(FlowUnitary {
            lambda0,
            lambda1,
            matrix: dense::identity(dim),
            steps,
            gamma: 0.0,
        });
    }
    if steps == 0 {
        return Err(Error::InsufficientSamples("steps = 0".into()));
    }
    let h = (lambda1 - lambda0) / steps as f64;
    let mids: Vec<f64> = (0..steps).map(|k| lambda0 + (k as f64 + 0.5) * h).collect();
    let mut sampled: Vec<f64> = Vec::with_capacity(steps + 2);
    sampled.push(lambda0);
    sampled.extend_from_slice(&mids);
    sampled.push(lambda1);

    // pass 1: patch gaps along the grid
    let mut gaps = Vec::with_capacity(sampled.len());
    for &lambda in &sampled {
        let energies = crate::spectral::spectrum(model, lambda)?;
        let (_, _, patch_gap) = select_patch(&energies, patch).map_err(|e| match e {
            Error::PatchNotIsolated { split, patch_gap, .. } => Error::GapClosed {
                lambda,
                gap: patch_gap - split,
                gamma: f64::NAN,
            },
            other => other,
        })?;
        gaps.push((lambda, patch_gap));
    }
    let min_gap = gaps.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
    let gamma = match policy {
        GammaPolicy::Fixed(g) => g,
        GammaPolicy::MinGapMargin { margin } => margin * min_gap,
        GammaPolicy::EndpointMargin { margin } => {
            margin * gaps.first().unwrap().1.min(gaps.last().unwrap().1)
        }
    };
    if gamma <= 0.0 {
        return Err(Error::ParameterOutOfRange {
            value: gamma,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    for &(lambda, gap) in &gaps {
        if gap < gamma {
            return Err(Error::GapClosed { lambda, gap, gamma });
        }
    }
    let filter = FilterFunction::frequency_only(gamma)?;

    // pass 2: sectored stepping
    let probe_h = assemble_hamiltonian(model, mids[0])?;
    let probe_hp = assemble_derivative(model, mids[0])?;
    let works = layout_groups(model, &probe_h, &probe_hp);
    let mut flows: Vec<CMatrix> = works
        .iter()
        .map(|w| dense::identity(w.indices.len()))
        .collect();
    for &lambda in &mids {
        let h_full = assemble_hamiltonian(model, lambda)?;
        let hp_full = assemble_derivative(model, lambda)?;
        for (w, vflow) in works.iter().zip(flows.iter_mut()) {
            let hs = extract(&h_full, &w.indices);
            let hps = extract(&hp_full, &w.indices);
            let eig = eigh_sectored(&hs, None, true)?.to_eigensystem();
            let gen = generator_frequency(&eig, &hps, &filter, lambda)?;
            let step_u = dense::unitary_exp(&gen.matrix, h)?;
            *vflow = step_u.dot(vflow);
        }
    }
    // scatter sector flows into the full unitary
    let mut matrix = Array2::zeros((dim, dim));
    for (w, vflow) in works.iter().zip(flows.iter()) {
        for (bi, &gi) in w.indices.iter().enumerate() {
            for (bj, &gj) in w.indices.iter().enumerate() {
                matrix[[gi, gj]] = vflow[[bi, bj]];
            }
        }
    }
    Ok(FlowUnitary {
        lambda0,
        lambda1,
        matrix,
        steps,
        gamma,
    })
}

/// Transport residual `‖V P(lambda0) V† - P(lambda1)‖`.
pub fn transport_check(v: &FlowUnitary, p0: &GroundData, p1: &GroundData) -> Result<f64> {
    let n = v.matrix.nrows();
    if p0.projector.nrows() != n || p1.projector.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p0.projector.nrows(),
        });
    }
    let moved = v.matrix.dot(&p0.projector).dot(&dagger(&v.matrix));
    Ok(dense::spectral_norm(&(&moved - &p1.projector)))
}

/// `‖V†V - 1‖`.
pub fn unitarity_residual(v: &FlowUnitary) -> f64 {
    let n = v.matrix.nrows();
    let g = dagger(&v.matrix).dot(&v.matrix) - dense::identity(n);
    dense::spectral_norm(&g)
}

/// The automorphism on observables: `alpha(a) = V† a V`.
pub fn apply_automorphism(v: &FlowUnitary, a: &CMatrix) -> Result<CMatrix> {
    let n = v.matrix.nrows();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.nrows(),
        });
    }
    Ok(dagger(&v.matrix).dot(a).dot(&v.matrix))
}

/// Cocycle residual `‖V(l2<-l1) V(l1<-l0) - V(l2<-l0)‖` on aligned grids
/// with a common gamma (from the full-path policy). `lambda_mid` must lie
/// on the step grid of the full path.
pub fn cocycle_residual(
    model: &Model,
    lambda0: f64,
    lambda_mid: f64,
    lambda1: f64,
    steps: usize,
    policy: GammaPolicy,
    patch: &PatchPolicy,
) -> Result<f64> {
    let frac = (lambda_mid - lambda0) / (lambda1 - lambda0);
    let steps_a_f = frac * steps as f64;
    let steps_a = steps_a_f.round() as usize;
    if (steps_a_f - steps_a as f64).abs() > 1e-9 || steps_a == 0 || steps_a >= steps {
        return Err(Error::InvalidModel(format!(
            "midpoint {lambda_mid} is not on the {steps}-step grid"
        )));
    }
    let full = integrate_flow(model, lambda0, lambda1, steps, policy, patch)?;
    let gamma = full.gamma;
    let first = integrate_flow(model, lambda0, lambda_mid, steps_a, GammaPolicy::Fixed(gamma), patch)?;
    let second = integrate_flow(
        model,
        lambda_mid,
        lambda1,
        steps - steps_a,
        GammaPolicy::Fixed(gamma),
        patch,
    )?;
    let composed = second.matrix.dot(&first.matrix);
    Ok(dense::spectral_norm(&(&composed - &full.matrix)))
}

/// `‖(P(l+h) - P(l-h))/(2h) - i[D(l), P(l)]‖`; second-order small in `h`
/// when the patch is isolated by at least `gamma` at all three points.
pub fn derivative_identity_check(
    model: &Model,
    lambda: f64,
    gamma: f64,
    h: f64,
    patch: &PatchPolicy,
) -> Result<f64> {
    let filter = FilterFunction::frequency_only(gamma)?;
    let layout = model.sector_layout();
    let data = |l: f64| -> Result<GroundData> {
        let hm = assemble_hamiltonian(model, l)?;
        let se = eigh_sectored(&hm, layout.as_ref(), true)?;
        let gd = ground_data_sectored(&se, patch)?;
        if gd.patch_gap < gamma {
            return Err(Error::GapClosed {
                lambda: l,
                gap: gd.patch_gap,
                gamma,
            });
        }
        Ok(gd)
    };
    let center = data(lambda)?;
    let plus = data(lambda + h)?;
    let minus = data(lambda - h)?;
    let hm = assemble_hamiltonian(model, lambda)?;
    let se = eigh_sectored(&hm, layout.as_ref(), true)?;
    let eig = se.to_eigensystem();
    let hp = assemble_derivative(model, lambda)?;
    let gen = generator_frequency(&eig, &hp, &filter, lambda)?;
    let fd = (&plus.projector - &minus.projector).mapv(|v| v / C64::new(2.0 * h, 0.0));
    let comm = dense::commutator(&gen.matrix, &center.projector).mapv(|v| v * C64::new(0.0, 1.0));
    Ok(dense::spectral_norm(&(&fd - &comm)))
}

/// Quasi-locality profile of a transported observable around `center`.
#[derive(Debug, Clone)]
pub struct LocalityProfile {
    pub center: usize,
    pub radii: Vec<u32>,
    /// `‖alpha(A) - E_{B_r}(alpha(A))‖` per radius.
    pub deltas: Vec<f64>,
    /// Exponential rate fitted on the decaying tail (positive = decay).
    pub fitted_rate: Option<f64>,
}

pub fn locality_profile(
    alpha_a: &CMatrix,
    center: usize,
    geometry: &LatticeGeometry,
) -> Result<LocalityProfile> {
    let r_max = geometry.max_radius(center)?;
    let mut radii = Vec::new();
    let mut deltas = Vec::new();
    for r in 0..=r_max {
        let ball = geometry.ball(center, r)?;
        let localized = conditional_expectation(alpha_a, &ball, geometry)?;
        let delta = dense::spectral_norm(&(alpha_a - &localized));
        radii.push(r);
        deltas.push(delta);
    }
    // least-squares slope of ln delta over the usable tail
    let pts: Vec<(f64, f64)> = radii
        .iter()
        .zip(deltas.iter())
        .filter(|(_, &d)| d > 1e-14)
        .map(|(&r, &d)| (r as f64, d.ln()))
        .collect();
    let fitted_rate = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        (denom.abs() > 1e-12).then(|| -(n * sxy - sx * sy) / denom)
    } else {
        None
    };
    Ok(LocalityProfile {
        center,
        radii,
        deltas,
        fitted_rate,
    })
}

/// Telescoped local decomposition of a generator around `center`:
/// `Psi_0 = E_{B_0}(D)`, `Psi_r = E_{B_r}(D) - E_{B_{r-1}}(D)`.
/// The sum reconstructs `D` exactly.
#[derive(Debug, Clone)]
pub struct InteractionDecomposition {
    pub center: usize,
    pub radii: Vec<u32>,
    pub terms: Vec<CMatrix>,
    pub norms: Vec<f64>,
}

impl InteractionDecomposition {
    pub fn reconstruct(&self) -> CMatrix {
        let mut acc = self.terms[0].clone();
        for t in &self.terms[1..] {
            acc += t;
        }
        acc
    }
}

pub fn decompose_generator(
    gen: &FlowGenerator,
    center: usize,
    geometry: &LatticeGeometry,
) -> Result<InteractionDecomposition> {
    let r_max = geometry.max_radius(center)?;
    let mut radii = Vec::new();
    let mut terms = Vec::new();
    let mut norms = Vec::new();
    let mut prev: Option<CMatrix> = None;
    for r in 0..=r_max {
        let ball = geometry.ball(center, r)?;
        let local = conditional_expectation(&gen.matrix, &ball, geometry)?;
        let term = match &prev {
            None => local.clone(),
            Some(p) => &local - p,
        };
        norms.push(dense::spectral_norm(&term));
        radii.push(r);
        terms.push(term);
        prev = Some(local);
    }
    Ok(InteractionDecomposition {
        center,
        radii,
        terms,
        norms,
    })
}

/// `‖[U_pi, M]‖` for the symmetry's induced global unitary.
pub fn symmetry_commutation(
    m: &CMatrix,
    action: &SymmetryAction,
    geometry: &LatticeGeometry,
) -> Result<f64> {
    let u = action.global_unitary(geometry)?;
    if u.nrows() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: u.nrows(),
        });
    }
    Ok(dense::spectral_norm(&dense::commutator(&u, m)))
}

/// Convenience: sector-aware generator at one path point (frequency
/// construction), as used by the integrator.
pub fn generator_at(model: &Model, lambda: f64, gamma: f64) -> Result<FlowGenerator> {
    let filter = FilterFunction::frequency_only(gamma)?;
    let h = assemble_hamiltonian(model, lambda)?;
    let hp = assemble_derivative(model, lambda)?;
    let layout = model.sector_layout();
    let usable = layout
        .as_ref()
        .map(|l| l.is_block_clean(&h) && l.is_block_clean(&hp))
        .unwrap_or(false);
    if usable {
        let layout = layout.unwrap();
        let dim = h.nrows();
        let mut matrix = Array2::zeros((dim, dim));
        for g in &layout.groups {
            let hs = extract(&h, g);
            let hps = extract(&hp, g);
            let eig = eigh_sectored(&hs, None, true)?.to_eigensystem();
            let gs = generator_frequency(&eig, &hps, &filter, lambda)?;
            for (bi, &gi) in g.iter().enumerate() {
                for (bj, &gj) in g.iter().enumerate() {
                    matrix[[gi, gj]] = gs.matrix[[bi, bj]];
                }
            }
        }
        Ok(FlowGenerator {
            lambda,
            matrix,
            construction: Construction::Frequency,
            gamma,
        })
    } else {
        let eig = eigh_sectored(&h, None, true)?.to_eigensystem();
        generator_frequency(&eig, &hp, &filter, lambda)
    }
}
