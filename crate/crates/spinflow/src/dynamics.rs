//! Heisenberg dynamics and Lieb-Robinson cone measurement: commutator-norm
//! surfaces over (distance, time) and fits of the velocity and decay rate.

use crate::dense::{self, dagger, embed, CMatrix, EigenSystem, LocalOperator, C64};
use crate::error::{Error, Result};
use crate::models::{assemble_hamiltonian, Model};
use crate::sectors::eigh_sectored;
use ndarray::Array2;

/// One point of the commutator surface.
#[derive(Debug, Clone, Copy)]
pub struct LRSample {
    pub distance: usize,
    pub time: f64,
    /// `‖[A, tau_t(B)]‖`.
    pub commutator_norm: f64,
}

/// Scan output: samples plus per-distance rejections and observable norms.
#[derive(Debug, Clone)]
pub struct LRScan {
    pub samples: Vec<LRSample>,
    pub rejected: Vec<(usize, String)>,
    pub norm_a: f64,
    pub norm_b: f64,
}

/// Result of fitting `ln c = ln c0 - mu (d - v |t|)` on outside-cone samples.
#[derive(Debug, Clone)]
pub struct LRFit {
    pub velocity: f64,
    pub decay_rate: f64,
    pub prefactor: f64,
    /// Root-mean-square residual of the log fit.
    pub residual: f64,
    pub epsilon: f64,
    /// Alternative velocity from threshold arrival times, when resolvable.
    pub arrival_velocity: Option<f64>,
    pub n_fit: usize,
}

/// Default outside-cone threshold: `1e-3 * 2 ‖a‖ ‖b‖`.
pub fn default_epsilon(norm_a: f64, norm_b: f64) -> f64 {
    1e-3 * 2.0 * norm_a * norm_b
}

/// Heisenberg evolution `tau_t(b) = e^{iHt} b e^{-iHt}` in the eigenbasis.
pub fn heisenberg_evolve(eig: &EigenSystem, b: &CMatrix, t: f64) -> Result<CMatrix> {
    let n = eig.dim();
    if b.nrows() != n || b.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.nrows(),
        });
    }
    if t == 0.0 {
        return Ok(b.clone());
    }
    let v = &eig.vectors;
    let bt = dagger(v).dot(b).dot(v);
    let phases: Vec<C64> = eig.energies.iter().map(|&e| C64::new(0.0, e * t).exp()).collect();
    let mut rotated = bt;
    for i in 0..n {
        for j in 0..n {
            rotated[[i, j]] *= phases[i] * phases[j].conj();
        }
    }
    Ok(v.dot(&rotated).dot(&dagger(v)))
}

/// Translate `b_template` so its support sits at distance `d` from `a`.
fn place_at_distance(
    a: &LocalOperator,
    b_template: &LocalOperator,
    d: usize,
    model: &Model,
) -> Result<LocalOperator> {
    let a_max = *a.support().iter().max().unwrap();
    let b_min = *b_template.support().iter().min().unwrap();
    let offset = a_max as i64 + d as i64 - b_min as i64;
    let b = b_template.translated(offset)?;
    for &s in b.support() {
        model.geometry.position(s)?;
    }
    let dist = model.geometry.set_distance(a.support(), b.support())?;
    if dist as usize != d {
        return Err(Error::InvalidRegion {
            sites: b.support().to_vec(),
        });
    }
    if dist == 0 {
        return Err(Error::InvalidRegion {
            sites: b.support().to_vec(),
        });
    }
    Ok(b)
}

fn exactly_diagonal(m: &CMatrix) -> Option<Vec<f64>> {
    let n = m.nrows();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m[[i, j]];
            if i != j && v != C64::new(0.0, 0.0) {
                return None;
            }
            if i == j {
                if v.im != 0.0 {
                    return None;
                }
                diag.push(v.re);
            }
        }
    }
    Some(diag)
}

/// Max |eigenvalue| of the Hermitian matrix `x† x`, square-rooted.
fn max_singular_value(x: &CMatrix) -> Result<f64> {
    let g = dagger(x).dot(x);
    let w = dense::hermitian_eigenvalues(&g)?;
    Ok(w.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Commutator-norm surface `c(d, t) = ‖[A, tau_t(B_d)]‖` over the grid.
///
/// Models with an exact diagonal ±1 symmetry and diagonal ±1 observables
/// take a sector-split path: the commutator is block diagonal and, since
/// `A² = 1`, its norm within a block equals twice the norm of the
/// off-diagonal block of `tau_t(B)` in the eigenbasis of `A`. Both routes
/// compute the same dense spectral norm.
pub fn lr_commutator_scan(
    model: &Model,
    lambda: f64,
    a: &LocalOperator,
    b_template: &LocalOperator,
    distances: &[usize],
    times: &[f64],
) -> Result<LRScan> {
    let h = assemble_hamiltonian(model, lambda)?;
    let layout = model.sector_layout();
    let big_a = embed(a, &model.geometry)?;
    let norm_a = dense::spectral_norm(&big_a);
    let norm_b = dense::spectral_norm(b_template.matrix());

    let diag_a = exactly_diagonal(&big_a);
    let sector_fast = match (&layout, &diag_a) {
        (Some(l), Some(da)) => {
            l.is_block_clean(&h) && da.iter().all(|&x| x == 1.0 || x == -1.0)
        }
        _ => false,
    };

    let mut samples = Vec::new();
    let mut rejected = Vec::new();

    if sector_fast {
        let layout = layout.clone().unwrap();
        let da = diag_a.unwrap();
        let se = eigh_sectored(&h, Some(&layout), true)?;
        // require real eigenvector blocks for the slab algebra below
        let all_real = se.blocks.iter().all(|b| b.vectors_real.is_some());
        if all_real {
            for &d in distances {
                let b_d = match place_at_distance(a, b_template, d, model) {
                    Ok(b) => b,
                    Err(e) => {
                        rejected.push((d, e.to_string()));
                        continue;
                    }
                };
                let big_b = embed(&b_d, &model.geometry)?;
                let db_full = match exactly_diagonal(&big_b) {
                    Some(v) => v,
                    None => {
                        // observable not diagonal: general path for this distance
                        let eig = se.to_eigensystem();
                        for &t in times {
                            let bt = heisenberg_evolve(&eig, &big_b, t)?;
                            let comm = dense::commutator(&big_a, &bt);
                            samples.push(LRSample {
                                distance: d,
                                time: t,
                                commutator_norm: dense::spectral_norm(&comm),
                            });
                        }
                        continue;
                    }
                };
                // per-sector precomputation
                struct SectorData {
                    energies: Vec<f64>,
                    b_eig: Array2<f64>,
                    v_plus: Array2<f64>,
                    v_minus: Array2<f64>,
                }
                let mut sectors = Vec::new();
                for blk in &se.blocks {
                    let v = blk.vectors_real.as_ref().unwrap();
                    let n = blk.dim();
                    // B in the eigenbasis: V^T diag(db) V
                    let mut scaled = v.clone();
                    for (row, &gi) in blk.indices.iter().enumerate() {
                        let s = db_full[gi];
                        scaled.row_mut(row).mapv_inplace(|x| x * s);
                    }
                    let b_eig = v.t().dot(&scaled);
                    // rows split by the sign of A
                    let plus: Vec<usize> = (0..n).filter(|&r| da[blk.indices[r]] > 0.0).collect();
                    let minus: Vec<usize> = (0..n).filter(|&r| da[blk.indices[r]] < 0.0).collect();
                    let v_plus = Array2::from_shape_fn((plus.len(), n), |(i, j)| v[[plus[i], j]]);
                    let v_minus = Array2::from_shape_fn((minus.len(), n), |(i, j)| v[[minus[i], j]]);
                    sectors.push(SectorData {
                        energies: blk.energies.clone(),
                        b_eig,
                        v_plus,
                        v_minus,
                    });
                }
                for &t in times {
                    let mut worst = 0.0f64;
                    for sd in &sectors {
                        let n = sd.energies.len();
                        if sd.v_plus.nrows() == 0 || sd.v_minus.nrows() == 0 {
                            continue;
                        }
                        // X = (V+ diag(phi)) B_eig (diag(conj phi) V-^T)
                        let cos: Vec<f64> = sd.energies.iter().map(|&e| (e * t).cos()).collect();
                        let sin: Vec<f64> = sd.energies.iter().map(|&e| (e * t).sin()).collect();
                        // R = diag(conj phi) V-^T as real and imaginary parts
                        let mut r_re = sd.v_minus.t().to_owned();
                        let mut r_im = sd.v_minus.t().to_owned();
                        for j in 0..n {
                            let (cj, sj) = (cos[j], sin[j]);
                            r_re.row_mut(j).mapv_inplace(|x| x * cj);
                            r_im.row_mut(j).mapv_inplace(|x| x * (-sj));
                        }
                        let t_re = sd.b_eig.dot(&r_re);
                        let t_im = sd.b_eig.dot(&r_im);
                        // L = V+ diag(phi)
                        let mut l_re = sd.v_plus.clone();
                        let mut l_im = sd.v_plus.clone();
                        for j in 0..n {
                            let (cj, sj) = (cos[j], sin[j]);
                            l_re.column_mut(j).mapv_inplace(|x| x * cj);
                            l_im.column_mut(j).mapv_inplace(|x| x * sj);
                        }
                        // X = (l_re + i l_im)(t_re + i t_im)
                        let x_re = l_re.dot(&t_re) - l_im.dot(&t_im);
                        let x_im = l_re.dot(&t_im) + l_im.dot(&t_re);
                        let x = Array2::from_shape_fn(x_re.dim(), |(i, j)| {
                            C64::new(x_re[[i, j]], x_im[[i, j]])
                        });
                        let nrm = 2.0 * max_singular_value(&x)?;
                        worst = worst.max(nrm);
                    }
                    samples.push(LRSample {
                        distance: d,
                        time: t,
                        commutator_norm: worst,
                    });
                }
            }
            return Ok(LRScan {
                samples,
                rejected,
                norm_a,
                norm_b,
            });
        }
    }

    // general dense path
    let eig = eigh_sectored(&h, layout.as_ref(), true)?.to_eigensystem();
    for &d in distances {
        let b_d = match place_at_distance(a, b_template, d, model) {
            Ok(b) => b,
            Err(e) => {
                rejected.push((d, e.to_string()));
                continue;
            }
        };
        let big_b = embed(&b_d, &model.geometry)?;
        for &t in times {
            let bt = heisenberg_evolve(&eig, &big_b, t)?;
            let comm = dense::commutator(&big_a, &bt);
            samples.push(LRSample {
                distance: d,
                time: t,
                commutator_norm: dense::spectral_norm(&comm),
            });
        }
    }
    Ok(LRScan {
        samples,
        rejected,
        norm_a,
        norm_b,
    })
}

/// Least-squares fit of `ln c = ln c0 - mu d + mu v |t|` restricted to
/// outside-cone samples (`1e-12 < c < epsilon`).
pub fn lr_fit(samples: &[LRSample], epsilon: f64) -> Result<LRFit> {
    let fit_set: Vec<&LRSample> = samples
        .iter()
        .filter(|s| s.commutator_norm > 1e-12 && s.commutator_norm < epsilon)
        .collect();
    let mut dists: Vec<usize> = fit_set.iter().map(|s| s.distance).collect();
    dists.sort_unstable();
    dists.dedup();
    let mut ts: Vec<f64> = fit_set.iter().map(|s| s.time.abs()).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if dists.len() < 3 || ts.len() < 3 || fit_set.len() < 4 {
        return Err(Error::InsufficientSamples(format!(
            "fit set has {} samples over {} distances and {} times",
            fit_set.len(),
            dists.len(),
            ts.len()
        )));
    }
    // normal equations for y = x0 + x1 d + x2 |t|
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for s in &fit_set {
        let row = [1.0, s.distance as f64, s.time.abs()];
        let y = s.commutator_norm.ln();
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y;
        }
    }
    let coef = solve3(ata, aty).ok_or_else(|| {
        Error::InsufficientSamples("singular normal equations in lr fit".into())
    })?;
    let (lnc0, slope_d, slope_t) = (coef[0], coef[1], coef[2]);
    let mu = -slope_d;
    let velocity = if mu.abs() > 1e-300 { slope_t / mu } else { 0.0 };
    let mut ss = 0.0;
    for s in &fit_set {
        let pred = lnc0 + slope_d * s.distance as f64 + slope_t * s.time.abs();
        let r = s.commutator_norm.ln() - pred;
        ss += r * r;
    }
    let residual = (ss / fit_set.len() as f64).sqrt();

    // arrival-time estimate: first distance where c drops below epsilon
    let mut arrivals: Vec<(f64, f64)> = Vec::new();
    for &t in &ts {
        let mut at_t: Vec<&LRSample> = samples
            .iter()
            .filter(|s| (s.time.abs() - t).abs() < 1e-12)
            .collect();
        at_t.sort_by_key(|s| s.distance);
        if at_t.is_empty() || at_t[0].commutator_norm < epsilon {
            continue; // cone not resolved at this time
        }
        if let Some(first_out) = at_t.iter().find(|s| s.commutator_norm < epsilon) {
            arrivals.push((t, first_out.distance as f64));
        }
    }
    let arrival_velocity = if arrivals.len() >= 2 {
        let n = arrivals.len() as f64;
        let sx: f64 = arrivals.iter().map(|p| p.0).sum();
        let sy: f64 = arrivals.iter().map(|p| p.1).sum();
        let sxx: f64 = arrivals.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = arrivals.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        (denom.abs() > 1e-12).then(|| (n * sxy - sx * sy) / denom)
    } else {
        None
    };

    Ok(LRFit {
        velocity,
        decay_rate: mu,
        prefactor: lnc0.exp(),
        residual,
        epsilon,
        arrival_velocity,
        n_fit: fit_set.len(),
    })
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let mut piv = col;
        for r in col + 1..3 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..3 {
            if r == col {
                continue;
            }
            let f = a[r][col] / a[col][col];
            for k in col..3 {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    Some([b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{c, identity, pauli_x, pauli_y, pauli_z, spectral_norm};
    use crate::lattice::Boundary;
    use crate::models::tfim;
    use crate::spectral::eigensystem;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn evolve_t0_is_identity_map() {
        let model = tfim(4, Boundary::Open, (0.0, 2.0)).unwrap();
        let se = eigensystem(&model, 1.1, true).unwrap();
        let eig = se.to_eigensystem();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = ndarray::Array2::from_shape_fn((16, 16), |_| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let bt = heisenberg_evolve(&eig, &b, 0.0).unwrap();
        assert_eq!(bt, b);
    }

    #[test]
    fn pauli_algebra_two_level() {
        // H = sigma_z: tau_t(sigma_x) = cos(2t) X - sin(2t) Y
        let eig = dense::hermitian_eigensystem(&pauli_z()).unwrap();
        let t = 0.43;
        let got = heisenberg_evolve(&eig, &pauli_x(), t).unwrap();
        let want = pauli_x().mapv(|v| v * (2.0 * t).cos()) - pauli_y().mapv(|v| v * (2.0 * t).sin());
        assert!(dense::frobenius_norm(&(&got - &want)) < 1e-12);
    }

    #[test]
    fn evolution_preserves_norm_and_products() {
        let model = tfim(4, Boundary::Open, (0.0, 2.0)).unwrap();
        let eig = eigensystem(&model, 0.9, true).unwrap().to_eigensystem();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = ndarray::Array2::from_shape_fn((16, 16), |_| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let bc = ndarray::Array2::from_shape_fn((16, 16), |_| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let t = 1.3;
        let bt = heisenberg_evolve(&eig, &b, t).unwrap();
        assert!((spectral_norm(&bt) - spectral_norm(&b)).abs() < 1e-10);
        // automorphism: tau(bc) = tau(b) tau(c)
        let prod_t = heisenberg_evolve(&eig, &b.dot(&bc), t).unwrap();
        let d = &prod_t - &bt.dot(&heisenberg_evolve(&eig, &bc, t).unwrap());
        assert!(spectral_norm(&d) < 1e-10);
        // group law
        let b1 = heisenberg_evolve(&eig, &b, 0.4).unwrap();
        let b2 = heisenberg_evolve(&eig, &b1, 0.9).unwrap();
        let d = &b2 - &bt;
        assert!(spectral_norm(&d) < 1e-10);
    }

    #[test]
    fn scan_disjoint_supports_commute_at_t0() {
        let model = tfim(8, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(0, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let scan = lr_commutator_scan(&model, 1.0, &a, &b, &[1, 2, 3], &[0.0]).unwrap();
        for s in &scan.samples {
            assert!(s.commutator_norm <= 1e-14, "c(t=0) = {}", s.commutator_norm);
        }
    }

    #[test]
    fn scan_norm_bound_and_cone_shape() {
        let model = tfim(10, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(0, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let times = [0.3, 0.6];
        let scan = lr_commutator_scan(&model, 1.5, &a, &b, &[2, 3, 4, 5], &times).unwrap();
        let bound = 2.0 * scan.norm_a * scan.norm_b + 1e-10;
        for s in &scan.samples {
            assert!(s.commutator_norm <= bound);
            assert!(s.commutator_norm >= 0.0);
        }
        // fixed t: decreasing in d
        for &t in &times {
            let mut cs: Vec<(usize, f64)> = scan
                .samples
                .iter()
                .filter(|s| s.time == t)
                .map(|s| (s.distance, s.commutator_norm))
                .collect();
            cs.sort_by_key(|p| p.0);
            for w in cs.windows(2) {
                assert!(w[1].1 < w[0].1, "cone shape violated at t={t}: {cs:?}");
            }
        }
    }

    #[test]
    fn sector_fast_path_matches_general() {
        let mut model = tfim(8, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(0, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let fast = lr_commutator_scan(&model, 1.2, &a, &b, &[2, 4], &[0.5]).unwrap();
        // disable the hint to force the general dense route
        model.diag_symmetry = None;
        let slow = lr_commutator_scan(&model, 1.2, &a, &b, &[2, 4], &[0.5]).unwrap();
        for (f, s) in fast.samples.iter().zip(slow.samples.iter()) {
            assert!(
                (f.commutator_norm - s.commutator_norm).abs() < 1e-9,
                "{} vs {}",
                f.commutator_norm,
                s.commutator_norm
            );
        }
    }

    #[test]
    fn time_reversal_symmetry_of_surface() {
        // real H with real observables: c(d, t) = c(d, -t)
        let model = tfim(6, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(0, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let scan = lr_commutator_scan(&model, 1.0, &a, &b, &[2, 3], &[0.4, -0.4]).unwrap();
        let get = |d: usize, t: f64| {
            scan.samples
                .iter()
                .find(|s| s.distance == d && (s.time - t).abs() < 1e-12)
                .unwrap()
                .commutator_norm
        };
        for d in [2, 3] {
            assert!((get(d, 0.4) - get(d, -0.4)).abs() < 1e-10);
        }
    }

    #[test]
    fn monotone_light_cone() {
        let model = tfim(8, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(0, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let times = [0.2, 0.4, 0.6, 0.8];
        let scan = lr_commutator_scan(&model, 1.0, &a, &b, &[3], &times).unwrap();
        let mut running = 0.0f64;
        let mut maxes = Vec::new();
        for &t in &times {
            let c = scan
                .samples
                .iter()
                .find(|s| s.time == t)
                .unwrap()
                .commutator_norm;
            running = running.max(c);
            maxes.push(running);
        }
        for w in maxes.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn overlapping_distance_rejected() {
        let model = tfim(6, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(2, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let scan = lr_commutator_scan(&model, 1.0, &a, &b, &[0, 2], &[0.1]).unwrap();
        assert_eq!(scan.rejected.len(), 1);
        assert_eq!(scan.rejected[0].0, 0);
        assert_eq!(scan.samples.len(), 1);
    }

    #[test]
    fn synthetic_fit_round_trip() {
        // plant c = 0.7 exp(-1.2 (d - 2.5 t))
        let (c0, mu, v) = (0.7, 1.2, 2.5);
        let mut samples = Vec::new();
        for d in 2..=6 {
            for &t in &[0.1, 0.2, 0.3, 0.4] {
                let c = c0 * (-mu * (d as f64 - v * t)).exp();
                samples.push(LRSample {
                    distance: d,
                    time: t,
                    commutator_norm: c,
                });
            }
        }
        let fit = lr_fit(&samples, 1e6).unwrap();
        assert!((fit.decay_rate - mu).abs() < 1e-6, "mu = {}", fit.decay_rate);
        assert!((fit.velocity - v).abs() < 1e-6, "v = {}", fit.velocity);
        assert!((fit.prefactor - c0).abs() < 1e-6);
        assert!(fit.residual < 1e-10);
    }

    #[test]
    fn all_zero_samples_rejected() {
        let samples: Vec<LRSample> = (2..8)
            .map(|d| LRSample {
                distance: d,
                time: 0.5,
                commutator_norm: 0.0,
            })
            .collect();
        assert!(matches!(
            lr_fit(&samples, 1e-3),
            Err(Error::InsufficientSamples(_))
        ));
    }

    #[test]
    fn fitted_mu_positive_on_real_scan() {
        let model = tfim(10, Boundary::Open, (0.0, 2.0)).unwrap();
        let a = LocalOperator::on_site(0, pauli_z()).unwrap();
        let b = LocalOperator::on_site(0, pauli_z()).unwrap();
        let scan = lr_commutator_scan(
            &model,
            1.0,
            &a,
            &b,
            &[2, 3, 4, 5],
            &[0.2, 0.4, 0.6],
        )
        .unwrap();
        let eps = default_epsilon(scan.norm_a, scan.norm_b);
        let fit = lr_fit(&scan.samples, eps).unwrap();
        assert!(fit.decay_rate > 0.0);
        assert!(fit.n_fit >= 4);
        let _ = identity(2);
    }
}
