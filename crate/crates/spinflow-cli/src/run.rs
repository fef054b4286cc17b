//! Subcommand execution: each maps one-to-one onto library operations and
//! writes CSV tables and JSON records into the output directory.

use crate::config::{
    parse_boundary, parse_boundary_kind, parse_f64_grid, parse_usize_grid, ConfigError, JobConfig,
    ModelSpec, SurfaceSpec,
};
use crate::output::{fmt_real, CsvTable, OutputDir};
use spinflow::dense::{pauli_x, pauli_z};
use spinflow::flow::{self, GammaPolicy};
use spinflow::models;
use spinflow::spectral::{self, StateSelection};
use spinflow::stabilizer;
use spinflow::{dynamics, Error as LibError, LocalOperator, Model, SymmetryAction};

pub enum CliError {
    /// exit code 2
    Validation(String),
    /// exit code 3
    Numerical { kind: String, message: String },
    /// exit code 2
    Io(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        let kind = match &e {
            LibError::GapClosed { .. } => "gap_closed",
            LibError::PatchNotIsolated { .. } => "patch_not_isolated",
            LibError::EigenFailure { .. } => "eigensolver_failure",
            LibError::NotAState(_)
            | LibError::NoSelectionRule
            | LibError::InsufficientSamples(_)
            | LibError::NonCommutingGenerators(..)
            | LibError::DegenerateGrid { .. } => "numerical",
            _ => return CliError::Validation(e.to_string()),
        };
        CliError::Numerical {
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Numerical { .. } => 3,
        }
    }

    pub fn kind(&self) -> &str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Io(_) => "io",
            CliError::Numerical { kind, .. } => kind,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m.clone(),
            CliError::Numerical { message, .. } => message.clone(),
        }
    }
}

fn build_model(spec: &ModelSpec, n: usize) -> Result<Model, CliError> {
    match spec.name.as_str() {
        "tfim" => {
            let bc = parse_boundary(&spec.boundary)?;
            Ok(models::tfim(n, bc, spec.lambda_range)?)
        }
        "xy" => Ok(models::xy_chain(n, spec.anisotropy, spec.field)?),
        "aklt" => Ok(models::aklt(n)?),
        "interpolated" => {
            let (name0, l0) = spec.base0.clone().ok_or_else(|| {
                CliError::Validation("interpolated model needs base0: [name, lambda]".into())
            })?;
            let (name1, l1) = spec.base1.clone().ok_or_else(|| {
                CliError::Validation("interpolated model needs base1: [name, lambda]".into())
            })?;
            let mk = |name: &str| -> Result<Model, CliError> {
                let sub = ModelSpec {
                    name: name.into(),
                    base0: None,
                    base1: None,
                    ..spec.clone()
                };
                build_model(&sub, n)
            };
            Ok(models::interpolate(&mk(&name0)?, l0, &mk(&name1)?, l1)?)
        }
        other => Err(CliError::Validation(format!(
            "unknown model '{other}' (tfim|xy|aklt|interpolated)"
        ))),
    }
}

fn build_symmetry(name: &str, model: &Model) -> Result<SymmetryAction, CliError> {
    let n = model.geometry.n_sites();
    match name {
        "identity" => Ok(SymmetryAction::identity_action(&model.geometry)),
        "spin-flip-z" => Ok(SymmetryAction::uniform(n, pauli_z())?),
        "spin-flip-x" => Ok(SymmetryAction::uniform(n, pauli_x())?),
        other => Err(CliError::Validation(format!(
            "unknown symmetry '{other}' (identity|spin-flip-z|spin-flip-x)"
        ))),
    }
}

fn build_surface(spec: &SurfaceSpec) -> Result<stabilizer::CellComplex, CliError> {
    Ok(match spec {
        SurfaceSpec::Torus { lx, ly } => stabilizer::torus(*lx, *ly)?,
        SurfaceSpec::Planar { lx, ly, boundary } => {
            stabilizer::planar(*lx, *ly, parse_boundary_kind(boundary)?)?
        }
        SurfaceSpec::Genus2 { l } => stabilizer::genus2(*l)?,
        SurfaceSpec::Json { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("surface json '{path}': {e}")))?;
            stabilizer::CellComplex::from_json(&text)?
        }
    })
}

fn single_size(cfg: &JobConfig) -> Result<usize, CliError> {
    let sizes = parse_usize_grid(&cfg.sizes)?;
    if sizes.len() != 1 {
        return Err(CliError::Validation(format!(
            "this subcommand needs a single size, got grid '{}'",
            cfg.sizes
        )));
    }
    Ok(sizes[0])
}

fn single_lambda(cfg: &JobConfig) -> Result<f64, CliError> {
    let ls = parse_f64_grid(&cfg.lambda)?;
    if ls.len() != 1 {
        return Err(CliError::Validation(format!(
            "this subcommand needs a single lambda, got grid '{}'",
            cfg.lambda
        )));
    }
    Ok(ls[0])
}

pub fn run(subcommand: &str, cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    match subcommand {
        "gap-scan" => gap_scan(cfg, out),
        "splitting" => splitting(cfg, out),
        "lr-cone" => lr_cone(cfg, out),
        "flow" => flow_run(cfg, out),
        "flow-identity" => flow_identity(cfg, out),
        "locality" => locality(cfg, out),
        "decompose" => decompose(cfg, out),
        "symmetry" => symmetry(cfg, out),
        "entropy-scan" => entropy_scan(cfg, out),
        "topo-degeneracy" => topo_degeneracy(cfg, out),
        "topo-entropy" => topo_entropy(cfg, out),
        other => Err(CliError::Validation(format!(
            "unknown subcommand '{other}'"
        ))),
    }
}

fn gap_scan(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let sizes = parse_usize_grid(&cfg.sizes)?;
    let lambdas = parse_f64_grid(&cfg.lambda)?;
    let patch = cfg.patch.policy();
    let spec = cfg.model.clone();
    let family = move |n: usize| -> spinflow::Result<Model> {
        build_model(&spec, n).map_err(|e| LibError::InvalidModel(e.message()))
    };
    let points = spectral::gap_scan(&family, &sizes, &lambdas, &patch);
    let mut table = CsvTable::new(&[
        "model",
        "N",
        "lambda",
        "e0",
        "gap",
        "m",
        "split",
        "patch_gap",
    ]);
    let mut failures = Vec::new();
    for p in &points {
        match &p.row {
            Ok(r) => table.push(&[
                r.model.clone(),
                r.n_sites.to_string(),
                fmt_real(r.lambda),
                fmt_real(r.e0),
                fmt_real(r.gap),
                r.degeneracy.to_string(),
                fmt_real(r.split),
                fmt_real(r.patch_gap),
            ]),
            Err(msg) => failures.push(serde_json::json!({
                "N": p.n_sites,
                "lambda": p.lambda,
                "error": msg,
            })),
        }
    }
    out.write_text("gap-scan.csv", &table.body())?;
    out.write_json(
        "gap-scan.json",
        &serde_json::json!({
            "rows": table.n_rows(),
            "failed_points": failures,
        }),
    )?;
    Ok(())
}

fn splitting(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let sizes = parse_usize_grid(&cfg.sizes)?;
    let lambda = single_lambda(cfg)?;
    let spec = cfg.model.clone();
    let family = move |n: usize| -> spinflow::Result<Model> {
        build_model(&spec, n).map_err(|e| LibError::InvalidModel(e.message()))
    };
    let rows = spectral::degeneracy_splitting(&family, lambda, &sizes)?;
    let mut table = CsvTable::new(&["model", "N", "lambda", "e1_minus_e0", "e2_minus_e0"]);
    for (n, e1, e2) in rows {
        table.push(&[
            cfg.model.name.clone(),
            n.to_string(),
            fmt_real(lambda),
            fmt_real(e1),
            fmt_real(e2),
        ]);
    }
    out.write_text("splitting.csv", &table.body())?;
    Ok(())
}

fn lr_cone(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let lambda = single_lambda(cfg)?;
    let model = build_model(&cfg.model, n)?;
    let distances = parse_usize_grid(&cfg.lr.distances)?;
    let times = parse_f64_grid(&cfg.lr.times)?;
    let a = LocalOperator::on_site(cfg.lr.site, pauli_z())?;
    let b = LocalOperator::on_site(cfg.lr.site, pauli_z())?;
    let scan = dynamics::lr_commutator_scan(&model, lambda, &a, &b, &distances, &times)?;
    let mut table = CsvTable::new(&["d", "t", "c"]);
    for s in &scan.samples {
        table.push(&[
            s.distance.to_string(),
            fmt_real(s.time),
            fmt_real(s.commutator_norm),
        ]);
    }
    out.write_text("lr-cone.csv", &table.body())?;
    let epsilon = cfg
        .lr
        .epsilon
        .unwrap_or_else(|| dynamics::default_epsilon(scan.norm_a, scan.norm_b));
    let fit = dynamics::lr_fit(&scan.samples, epsilon)?;
    out.write_json(
        "lr-cone.json",
        &serde_json::json!({
            "v": fit.velocity,
            "mu": fit.decay_rate,
            "c0": fit.prefactor,
            "residual": fit.residual,
            "epsilon": fit.epsilon,
            "v_arrival": fit.arrival_velocity,
            "n_fit": fit.n_fit,
            "rejected_distances": scan.rejected,
        }),
    )?;
    Ok(())
}

fn flow_run(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let model = build_model(&cfg.model, n)?;
    let patch = cfg.patch.policy();
    let policy = cfg.flow.gamma.policy();
    let (l0, l1, steps) = (cfg.flow.lambda0, cfg.flow.lambda1, cfg.flow.steps);
    let v = flow::integrate_flow(&model, l0, l1, steps, policy, &patch)?;
    let se0 = spectral::eigensystem(&model, l0, true)?;
    let se1 = spectral::eigensystem(&model, l1, true)?;
    let p0 = spectral::ground_data_sectored(&se0, &patch)?;
    let p1 = spectral::ground_data_sectored(&se1, &patch)?;
    let transport = flow::transport_check(&v, &p0, &p1)?;
    let unitarity = flow::unitarity_residual(&v);
    let midpoint = cfg.flow.midpoint.unwrap_or(0.5 * (l0 + l1));
    let cocycle = flow::cocycle_residual(
        &model,
        l0,
        midpoint,
        l1,
        steps,
        GammaPolicy::Fixed(v.gamma),
        &patch,
    )?;
    out.write_json(
        "flow.json",
        &serde_json::json!({
            "lambda0": l0,
            "lambda1": l1,
            "steps": steps,
            "gamma": v.gamma,
            "transport_residual": transport,
            "unitarity_residual": unitarity,
            "cocycle_residual": cocycle,
        }),
    )?;
    Ok(())
}

fn flow_identity(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let lambda = single_lambda(cfg)?;
    let model = build_model(&cfg.model, n)?;
    let patch = cfg.patch.policy();
    let gamma = match cfg.flow.gamma.policy() {
        GammaPolicy::Fixed(g) => g,
        GammaPolicy::MinGapMargin { margin } | GammaPolicy::EndpointMargin { margin } => {
            let e = spectral::spectrum(&model, lambda)?;
            let (_, _, patch_gap) = spectral::select_patch(&e, &patch)?;
            margin * patch_gap
        }
    };
    let residual = flow::derivative_identity_check(&model, lambda, gamma, cfg.h_step, &patch)?;
    out.write_json(
        "flow-identity.json",
        &serde_json::json!({
            "lambda": lambda,
            "gamma": gamma,
            "h": cfg.h_step,
            "residual": residual,
        }),
    )?;
    Ok(())
}

fn locality(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let model = build_model(&cfg.model, n)?;
    let patch = cfg.patch.policy();
    let v = flow::integrate_flow(
        &model,
        cfg.flow.lambda0,
        cfg.flow.lambda1,
        cfg.flow.steps,
        cfg.flow.gamma.policy(),
        &patch,
    )?;
    let center = cfg.center.unwrap_or(n / 2);
    let a = spinflow::dense::embed(&LocalOperator::on_site(center, pauli_z())?, &model.geometry)?;
    let alpha_a = flow::apply_automorphism(&v, &a)?;
    let profile = flow::locality_profile(&alpha_a, center, &model.geometry)?;
    let mut table = CsvTable::new(&["r", "delta"]);
    for (r, d) in profile.radii.iter().zip(profile.deltas.iter()) {
        table.push(&[r.to_string(), fmt_real(*d)]);
    }
    out.write_text("locality.csv", &table.body())?;
    out.write_json(
        "locality.json",
        &serde_json::json!({
            "center": center,
            "gamma": v.gamma,
            "fitted_rate": profile.fitted_rate,
        }),
    )?;
    Ok(())
}

fn decompose(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let lambda = single_lambda(cfg)?;
    let model = build_model(&cfg.model, n)?;
    let patch = cfg.patch.policy();
    let gamma = match cfg.flow.gamma.policy() {
        GammaPolicy::Fixed(g) => g,
        GammaPolicy::MinGapMargin { margin } | GammaPolicy::EndpointMargin { margin } => {
            let e = spectral::spectrum(&model, lambda)?;
            let (_, _, patch_gap) = spectral::select_patch(&e, &patch)?;
            margin * patch_gap
        }
    };
    let gen = flow::generator_at(&model, lambda, gamma)?;
    let center = cfg.center.unwrap_or(n / 2);
    let dec = flow::decompose_generator(&gen, center, &model.geometry)?;
    let mut table = CsvTable::new(&["r", "psi_norm"]);
    for (r, nr) in dec.radii.iter().zip(dec.norms.iter()) {
        table.push(&[r.to_string(), fmt_real(*nr)]);
    }
    out.write_text("decompose.csv", &table.body())?;
    let rec = dec.reconstruct();
    let residual = spinflow::dense::spectral_norm(&(&rec - &gen.matrix));
    out.write_json(
        "decompose.json",
        &serde_json::json!({
            "lambda": lambda,
            "gamma": gamma,
            "center": center,
            "reconstruction_residual": residual,
        }),
    )?;
    Ok(())
}

fn symmetry(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let lambdas = parse_f64_grid(&cfg.lambda)?;
    let model = build_model(&cfg.model, n)?;
    let action = build_symmetry(&cfg.symmetry, &model)?;
    let patch = cfg.patch.policy();
    let term_dev = models::verify_symmetry(&model, &action, &lambdas)?;
    let mut table = CsvTable::new(&["lambda", "comm_d"]);
    let mut max_comm_d = 0.0f64;
    for &lambda in &lambdas {
        let e = spectral::spectrum(&model, lambda)?;
        let (_, _, patch_gap) = spectral::select_patch(&e, &patch)?;
        let gen = flow::generator_at(&model, lambda, 0.9 * patch_gap)?;
        let comm = flow::symmetry_commutation(&gen.matrix, &action, &model.geometry)?;
        max_comm_d = max_comm_d.max(comm);
        table.push(&[fmt_real(lambda), fmt_real(comm)]);
    }
    out.write_text("symmetry.csv", &table.body())?;
    let comm_v = if lambdas.len() >= 2 {
        let (l0, l1) = (lambdas[0], *lambdas.last().unwrap());
        let v = flow::integrate_flow(
            &model,
            l0,
            l1,
            cfg.flow.steps,
            cfg.flow.gamma.policy(),
            &patch,
        )?;
        Some(flow::symmetry_commutation(&v.matrix, &action, &model.geometry)?)
    } else {
        None
    };
    out.write_json(
        "symmetry.json",
        &serde_json::json!({
            "symmetry": cfg.symmetry,
            "term_deviation": term_dev,
            "max_comm_d": max_comm_d,
            "comm_v": comm_v,
        }),
    )?;
    Ok(())
}

fn entropy_scan(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let n = single_size(cfg)?;
    let lambda = single_lambda(cfg)?;
    let model = build_model(&cfg.model, n)?;
    let rows = spectral::area_law_scan(
        &model,
        lambda,
        &cfg.patch.policy(),
        &StateSelection::UniqueGround,
    )?;
    let mut table = CsvTable::new(&["l", "entropy_nats"]);
    for (l, s) in rows {
        table.push(&[l.to_string(), fmt_real(s)]);
    }
    out.write_text("entropy-scan.csv", &table.body())?;
    Ok(())
}

fn topo_degeneracy(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let complex = build_surface(&cfg.surface)?;
    let group = stabilizer::toric_code_stabilizers(&complex)?;
    let degeneracy = stabilizer::ground_degeneracy(&group);
    let mut table = CsvTable::new(&["surface", "V", "E", "F", "genus", "rank", "degeneracy"]);
    table.push(&[
        complex.name.clone(),
        complex.n_vertices().to_string(),
        complex.n_edges().to_string(),
        complex.n_faces().to_string(),
        complex
            .genus
            .map(|g| g.to_string())
            .unwrap_or_else(|| "-".into()),
        group.rank().to_string(),
        degeneracy.to_string(),
    ]);
    out.write_text("topo-degeneracy.csv", &table.body())?;
    out.write_json(
        "topo-degeneracy.json",
        &serde_json::json!({
            "surface": complex.name,
            "degeneracy": degeneracy,
        }),
    )?;
    Ok(())
}

fn topo_entropy(cfg: &JobConfig, out: &OutputDir) -> Result<(), CliError> {
    let complex = build_surface(&cfg.surface)?;
    let group = stabilizer::toric_code_stabilizers(&complex)?;
    let partition = stabilizer::standard_tripartition(&complex)?;
    let gamma = stabilizer::topological_entropy(&group, &partition)?;
    let s = |r: &[usize]| stabilizer::stabilizer_entropy(&group, r);
    out.write_json(
        "topo-entropy.json",
        &serde_json::json!({
            "surface": complex.name,
            "gamma_topo": gamma,
            "s_a": s(&partition.a)?,
            "s_b": s(&partition.b)?,
            "s_c": s(&partition.c)?,
            "regions": {
                "a": partition.a,
                "b": partition.b,
                "c": partition.c,
            },
        }),
    )?;
    Ok(())
}
