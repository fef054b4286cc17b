//! Shared test oracles, independent of the library's linear algebra path.

/// Cyclic Jacobi eigenvalues of a real symmetric matrix (ascending).
/// Small-matrix oracle; deliberately avoids LAPACK.
pub fn jacobi_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m[i][j] * m[i][j];
                }
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (2.0 * m[p][q]).atan2(m[q][q] - m[p][p]);
                let (c, s) = (theta.cos(), theta.sin());
                for i in 0..n {
                    let (mip, miq) = (m[i][p], m[i][q]);
                    m[i][p] = c * mip - s * miq;
                    m[i][q] = s * mip + c * miq;
                }
                for j in 0..n {
                    let (mpj, mqj) = (m[p][j], m[q][j]);
                    m[p][j] = c * mpj - s * mqj;
                    m[q][j] = s * mpj + c * mqj;
                }
            }
        }
    }
    let mut w: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    w.sort_by(|a, b| a.partial_cmp(b).unwrap());
    w
}

/// Jordan-Wigner free-fermion oracle for the open transverse-field Ising
/// chain `H = -sum XX - lambda sum Z`.
///
/// The quadratic form has `A_ii = 2 lambda`, `A_{i,i+1} = -1`,
/// `B_{i,i+1} = -1 = -B_{i+1,i}`; the single-particle energies are the
/// singular values of `A - B` and the ground energy is `-(1/2) sum eps`.
/// The full many-body spectrum is the set of subset sums of `eps` above the
/// ground energy (open boundary: no parity constraint).
pub struct JwTfim {
    pub ground_energy: f64,
    /// Single-particle energies, ascending.
    pub epsilon: Vec<f64>,
}

impl JwTfim {
    pub fn gap(&self) -> f64 {
        self.epsilon[0]
    }

    /// `E_2 - E_0`: the second excitation energy.
    pub fn second_gap(&self) -> f64 {
        self.epsilon[1]
    }
}

pub fn jw_tfim_open(n: usize, lambda: f64) -> JwTfim {
    assert!(n >= 2);
    // M = A - B
    let mut m = vec![vec![0.0f64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2.0 * lambda;
    }
    for i in 0..n - 1 {
        m[i][i + 1] += -1.0 - 1.0; // A - B upper
        m[i + 1][i] += -1.0 + 1.0; // A - B lower
    }
    // singular values via Jacobi on M M^T
    let mut g = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += m[i][k] * m[j][k];
            }
            g[i][j] = acc;
        }
    }
    let eigs = jacobi_eigenvalues(&g);
    let epsilon: Vec<f64> = eigs.iter().map(|&x| x.max(0.0).sqrt()).collect();
    let ground_energy = -0.5 * epsilon.iter().sum::<f64>();
    JwTfim {
        ground_energy,
        epsilon,
    }
}

/// Pass/fail collector for acceptance criteria: prints one line per check
/// and panics at the end if anything failed.
pub struct Checker {
    criterion: &'static str,
    failures: Vec<String>,
}

impl Checker {
    pub fn new(criterion: &'static str) -> Self {
        Checker {
            criterion,
            failures: Vec::new(),
        }
    }

    pub fn check(&mut self, pass: bool, detail: String) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("acceptance {} [{}] {}", self.criterion, tag, detail);
        if !pass {
            self.failures.push(detail);
        }
    }

    pub fn finish(self) {
        assert!(
            self.failures.is_empty(),
            "criterion {} failed checks:\n  {}",
            self.criterion,
            self.failures.join("\n  ")
        );
    }
}
