//! Iteration-by-iteration simulation of ILC laws against a true plant,
//! optionally different from the design model.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::factor::{factor_plant, stable_inverse_apply, FactoredPlant, DEFAULT_CIRCLE_TOL};
use crate::laws::{build_f, zpetc_feedforward, FilteredGain, IlcLaw, PaddingMap};
use crate::lifted::{filter_matrix, BandedCausalMatrix, SBTMatrix};
use crate::plant::RationalPlant;

const DIVERGENCE_FACTOR: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    One,
    Two,
    Inf,
}

impl NormKind {
    pub fn of(&self, v: &[f64]) -> f64 {
        match self {
            NormKind::One => v.iter().map(|x| x.abs()).sum(),
            NormKind::Two => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            NormKind::Inf => v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NormKind::One => "norm1",
            NormKind::Two => "norm2",
            NormKind::Inf => "norminf",
        }
    }
}

/// One simulated ILC run. The reference has the core trial length `n`; for
/// the modified law signals are extended to `n + 2 nu` internally.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub design_plant: RationalPlant,
    /// Defaults to the design plant.
    pub true_plant: Option<RationalPlant>,
    pub law: IlcLaw,
    pub reference: Vec<f64>,
    pub iterations: usize,
    /// Initial state of the law (core length); defaults to zero.
    pub initial_control: Option<Vec<f64>>,
    pub norms: Vec<NormKind>,
    /// Absolute tolerance on `||F e_k||_2`; defaults to `1e-9 ||F r||_2`.
    pub convergence_tol: Option<f64>,
}

impl Scenario {
    pub fn new(design_plant: RationalPlant, law: IlcLaw, reference: Vec<f64>, iterations: usize) -> Self {
        Self {
            design_plant,
            true_plant: None,
            law,
            reference,
            iterations,
            initial_control: None,
            norms: vec![NormKind::Two],
            convergence_tol: None,
        }
    }
}

/// Recorded trajectories of one run.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    /// Error vectors `e_k` (extended length for the modified law).
    pub errors: Vec<Vec<f64>>,
    /// Law state per iteration (core length).
    pub controls: Vec<Vec<f64>>,
    /// Filtered errors `F e_k` (core length).
    pub filtered_errors: Vec<Vec<f64>>,
    /// `||F e_k||_p` per iteration, one column per requested norm.
    pub norm_sequences: Vec<Vec<f64>>,
    /// Peak absolute error over the core window per iteration.
    pub peak_errors: Vec<f64>,
    pub converged: bool,
    pub diverged: bool,
}

impl IterationTrace {
    pub fn iterations_run(&self) -> usize {
        self.errors.len()
    }

    /// One row per iteration: `k`, the requested norms, peak error.
    pub fn to_csv(&self, norms: &[NormKind]) -> String {
        use crate::report::sig12;
        let mut out = String::from("k");
        for p in norms {
            out.push(',');
            out.push_str(p.label());
        }
        out.push_str(",peak_error\n");
        for (k, row) in self.norm_sequences.iter().enumerate() {
            out.push_str(&k.to_string());
            for v in row {
                out.push(',');
                out.push_str(&sig12(*v));
            }
            out.push(',');
            out.push_str(&sig12(self.peak_errors[k]));
            out.push('\n');
        }
        out
    }

    /// Full error vectors, one column per iteration, one row per sample.
    pub fn vectors_to_text(&self) -> String {
        use crate::report::sig12;
        let mut out = String::from("t");
        for k in 0..self.errors.len() {
            out.push_str(&format!(",e_{k}"));
        }
        out.push('\n');
        let len = self.errors.first().map_or(0, |e| e.len());
        for t in 0..len {
            out.push_str(&t.to_string());
            for e in &self.errors {
                out.push(',');
                out.push_str(&sig12(e[t]));
            }
            out.push('\n');
        }
        out
    }
}

/// Law-agnostic single-iteration machinery: `state -> output window`,
/// `(state, e) -> next state` and the filtered error map.
struct Engine {
    truth: RationalPlant,
    gplus: Option<RationalPlant>,
    gminus_sq: Option<BandedCausalMatrix>,
    gain: Option<FilteredGain>,
    q_u: Option<SBTMatrix>,
    pad: PaddingMap,
    alpha: f64,
    beta: f64,
    kind: EngineKind,
    r_ext: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EngineKind {
    Arimoto,
    Pd,
    Prototype,
    Modified,
}

impl Engine {
    fn build(s: &Scenario) -> Result<Self> {
        let truth = s.true_plant.clone().unwrap_or_else(|| s.design_plant.clone());
        let n = s.reference.len();
        if n == 0 || s.iterations == 0 {
            return Err(Error::EmptyHorizon);
        }
        let (kind, alpha, beta) = match &s.law {
            IlcLaw::Arimoto { alpha } => (EngineKind::Arimoto, *alpha, 0.0),
            IlcLaw::Pd { alpha, beta } => (EngineKind::Pd, *alpha, *beta),
            IlcLaw::Prototype { alpha } => (EngineKind::Prototype, *alpha, 0.0),
            IlcLaw::ModifiedRepetitive { alpha, .. } => (EngineKind::Modified, *alpha, 0.0),
        };
        match kind {
            EngineKind::Arimoto | EngineKind::Pd => Ok(Self {
                truth,
                gplus: None,
                gminus_sq: None,
                gain: None,
                q_u: None,
                pad: PaddingMap::new(0, n),
                alpha,
                beta,
                kind,
                r_ext: s.reference.clone(),
            }),
            EngineKind::Prototype => {
                let fp = factor_plant(&s.design_plant, DEFAULT_CIRCLE_TOL)?;
                Ok(Self {
                    truth,
                    gminus_sq: Some(fp.gminus_matrix(n, n)),
                    gplus: Some(fp.gplus().clone()),
                    gain: None,
                    q_u: None,
                    pad: PaddingMap::new(0, n),
                    alpha,
                    beta,
                    kind,
                    r_ext: s.reference.clone(),
                })
            }
            EngineKind::Modified => {
                let IlcLaw::ModifiedRepetitive { q_u, q_e, .. } = &s.law else {
                    unreachable!()
                };
                let fp = factor_plant(&s.design_plant, DEFAULT_CIRCLE_TOL)?;
                let pad = PaddingMap::new(fp.nu(), n);
                let gain = build_f(&fp, alpha, q_e, n)?;
                Ok(Self {
                    truth,
                    gplus: Some(fp.gplus().clone()),
                    gminus_sq: None,
                    gain: Some(gain),
                    q_u: Some(filter_matrix(q_u, n)?),
                    r_ext: pad.embed(&s.reference)?,
                    pad,
                    alpha,
                    beta,
                    kind,
                })
            }
        }
    }

    fn state_len(&self) -> usize {
        self.pad.core_len()
    }

    fn ext_len(&self) -> usize {
        self.pad.padded_len()
    }

    /// Plant output over the (extended) error window for the given state.
    fn output(&self, state: &[f64]) -> Result<Vec<f64>> {
        let u_phys = match self.kind {
            EngineKind::Arimoto | EngineKind::Pd => state.to_vec(),
            EngineKind::Prototype => stable_inverse_apply(self.gplus.as_ref().unwrap(), state)?,
            EngineKind::Modified => {
                let padded = self.pad.embed(state)?;
                stable_inverse_apply(self.gplus.as_ref().unwrap(), &padded)?
            }
        };
        let d = self.truth.relative_degree();
        let m = self.ext_len();
        let y = self.truth.simulate(&u_phys, m + d);
        Ok(y[d..].to_vec())
    }

    fn filtered(&self, e: &[f64]) -> Result<Vec<f64>> {
        match self.kind {
            EngineKind::Arimoto => Ok(e.iter().map(|x| self.alpha * x).collect()),
            EngineKind::Pd => {
                let mut out = vec![0.0; e.len()];
                for t in 0..e.len() {
                    out[t] = self.alpha * e[t] + if t > 0 { self.beta * e[t - 1] } else { 0.0 };
                }
                Ok(out)
            }
            EngineKind::Prototype => {
                let v = self.gminus_sq.as_ref().unwrap().matvec_transpose(e)?;
                Ok(v.iter().map(|x| self.alpha * x).collect())
            }
            EngineKind::Modified => self.gain.as_ref().unwrap().apply(e),
        }
    }

    fn update(&self, state: &[f64], fe: &[f64]) -> Result<Vec<f64>> {
        let base = match self.kind {
            EngineKind::Modified => self.q_u.as_ref().unwrap().matvec(state)?,
            _ => state.to_vec(),
        };
        Ok(base.iter().zip(fe.iter()).map(|(a, b)| a + b).collect())
    }
}

/// Run a scenario, recording error, control and norm trajectories.
pub fn run(s: &Scenario) -> Result<IterationTrace> {
    let engine = Engine::build(s)?;
    let n = engine.state_len();
    let mut state = match &s.initial_control {
        Some(u0) => {
            if u0.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: u0.len(),
                });
            }
            u0.clone()
        }
        None => vec![0.0; n],
    };
    let fr = engine.filtered(&engine.r_ext)?;
    let fr_norm = NormKind::Two.of(&fr);
    let tol = s.convergence_tol.unwrap_or(1e-9 * fr_norm);
    let blowup = DIVERGENCE_FACTOR * (1.0 + fr_norm);

    let mut trace = IterationTrace {
        errors: Vec::new(),
        controls: Vec::new(),
        filtered_errors: Vec::new(),
        norm_sequences: Vec::new(),
        peak_errors: Vec::new(),
        converged: false,
        diverged: false,
    };
    let nu = engine.pad.nu();
    for _ in 0..s.iterations {
        let y = engine.output(&state)?;
        let e: Vec<f64> = engine.r_ext.iter().zip(y.iter()).map(|(r, y)| r - y).collect();
        let fe = engine.filtered(&e)?;
        let fe2 = NormKind::Two.of(&fe);
        let peak = e[nu..nu + n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        trace.controls.push(state.clone());
        trace.norm_sequences.push(s.norms.iter().map(|p| p.of(&fe)).collect());
        trace.peak_errors.push(peak);
        trace.errors.push(e.clone());
        trace.filtered_errors.push(fe.clone());
        if !fe2.is_finite() || fe2 > blowup {
            trace.diverged = true;
            break;
        }
        if fe2 < tol {
            trace.converged = true;
            break;
        }
        state = engine.update(&state, &fe)?;
    }
    Ok(trace)
}

/// Dense cycle-to-cycle transition of the law against the (possibly
/// mismatched) true plant, obtained by probing unit states.
pub fn effective_transition(s: &Scenario) -> Result<DMatrix<f64>> {
    let engine = Engine::build(s)?;
    let n = engine.state_len();
    let mut a = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut ej = vec![0.0; n];
        ej[j] = 1.0;
        let y = engine.output(&ej)?;
        let e: Vec<f64> = y.iter().map(|v| -v).collect();
        let fe = engine.filtered(&e)?;
        let col = engine.update(&ej, &fe)?;
        for i in 0..n {
            a[(i, j)] = col[i];
        }
    }
    Ok(a)
}

/// Comparison of one-shot ZPETC feedforward against iterative learning under
/// plant-model mismatch.
#[derive(Debug, Clone)]
pub struct MismatchStudy {
    /// Peak error of the single-shot inversion input applied to the truth.
    pub zpetc_peak: f64,
    /// Peak error per ILC iteration.
    pub ilc_peaks: Vec<f64>,
    /// First iteration whose peak error falls below the ZPETC peak.
    pub crossover_iteration: Option<usize>,
    /// Spectral radius of the truth-plant transition matrix.
    pub truth_transition_radius: f64,
    pub trace: IterationTrace,
}

pub fn mismatch_study(
    design: &RationalPlant,
    truth: &RationalPlant,
    law: &IlcLaw,
    reference: &[f64],
    iterations: usize,
) -> Result<MismatchStudy> {
    design.check_stable()?;
    truth.check_stable()?;
    let fp: FactoredPlant = factor_plant(design, DEFAULT_CIRCLE_TOL)?;
    let n = reference.len();
    let u_z = zpetc_feedforward(&fp, reference, 1.0)?;
    let d = truth.relative_degree();
    let y = truth.simulate(&u_z, n + d);
    let zpetc_peak = reference
        .iter()
        .zip(y[d..].iter())
        .map(|(r, y)| (r - y).abs())
        .fold(0.0f64, f64::max);

    let mut scenario = Scenario::new(design.clone(), law.clone(), reference.to_vec(), iterations);
    scenario.true_plant = Some(truth.clone());
    let radius = effective_transition(&scenario)?
        .complex_eigenvalues()
        .iter()
        .fold(0.0f64, |m, l| m.max(l.norm()));
    let trace = run(&scenario)?;
    let ilc_peaks = trace.peak_errors.clone();
    let crossover_iteration = ilc_peaks.iter().position(|&p| p < zpetc_peak);
    Ok(MismatchStudy {
        zpetc_peak,
        ilc_peaks,
        crossover_iteration,
        truth_transition_radius: radius,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifted::ZeroPhaseFilter;
    use crate::plant::example_plant;

    fn seeded_reference(n: usize) -> Vec<f64> {
        // deterministic pseudo-noise reference
        let mut state = 0x9e3779b97f4a7c15u64;
        (0..n)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            })
            .collect()
    }

    fn modified_law(alpha: f64) -> IlcLaw {
        IlcLaw::ModifiedRepetitive {
            alpha,
            q_u: ZeroPhaseFilter::unit(),
            q_e: ZeroPhaseFilter::unit(),
        }
    }

    #[test]
    fn arimoto_geometric_decay_on_delay_plant() {
        let p = RationalPlant::new(vec![0.0, 1.0], vec![1.0]).unwrap();
        let r = vec![1.0, -0.5, 2.0, 0.25];
        let mut s = Scenario::new(p, IlcLaw::Arimoto { alpha: 0.5 }, r.clone(), 6);
        s.norms = vec![NormKind::Inf];
        let trace = run(&s).unwrap();
        // e_k = 0.5^k e_0 exactly on the unit-delay plant
        for (k, e) in trace.errors.iter().enumerate() {
            let scale = 0.5f64.powi(k as i32);
            for (ek, r0) in e.iter().zip(r.iter()) {
                assert!((ek - scale * r0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn example_scenario_is_monotone() {
        let n = 200;
        let mut s = Scenario::new(
            example_plant(),
            modified_law(0.45),
            seeded_reference(n),
            40,
        );
        s.norms = vec![NormKind::One, NormKind::Two, NormKind::Inf];
        let trace = run(&s).unwrap();
        assert!(!trace.diverged);
        for col in 0..3 {
            for w in trace.norm_sequences.windows(2) {
                assert!(
                    w[1][col] <= w[0][col] + 1e-12,
                    "norm {col} increased: {} -> {}",
                    w[0][col],
                    w[1][col]
                );
            }
        }
    }

    #[test]
    fn first_iteration_matches_zpetc() {
        let n = 30;
        let r = seeded_reference(n);
        let s = Scenario::new(example_plant(), modified_law(1.0), r.clone(), 2);
        let trace = run(&s).unwrap();
        let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
        let u1 = stable_inverse_apply(fp.gplus(), &trace.controls[1]).unwrap();
        let zpetc = zpetc_feedforward(&fp, &r, 1.0).unwrap();
        for (a, b) in u1.iter().zip(zpetc.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_matches_matrix_recursion() {
        use crate::laws::{build_f, build_transition};
        let n = 15;
        let r = seeded_reference(n);
        let s = Scenario::new(example_plant(), modified_law(0.45), r.clone(), 8);
        let trace = run(&s).unwrap();
        let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
        let unit = ZeroPhaseFilter::unit();
        let a = build_transition(&fp, 0.45, &unit, &unit, n, true).unwrap();
        let f = build_f(&fp, 0.45, &unit, n).unwrap();
        let pad = PaddingMap::new(fp.nu(), n);
        let fr = f.apply(&pad.embed(&r).unwrap()).unwrap();
        let mut u = vec![0.0; n];
        for k in 0..trace.controls.len() {
            for (x, y) in u.iter().zip(trace.controls[k].iter()) {
                assert!((x - y).abs() < 1e-9, "iteration {k}");
            }
            let au = a.matvec(&u).unwrap();
            u = au.iter().zip(fr.iter()).map(|(a, b)| a + b).collect();
        }
    }

    #[test]
    fn filtered_error_follows_power_iteration() {
        use crate::laws::build_transition;
        let n = 20;
        let r = seeded_reference(n);
        let s = Scenario::new(example_plant(), modified_law(0.45), r.clone(), 11);
        let trace = run(&s).unwrap();
        let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
        let unit = ZeroPhaseFilter::unit();
        let a = build_transition(&fp, 0.45, &unit, &unit, n, true).unwrap();
        // F e_k = A^k F r
        let mut expect = trace.filtered_errors[0].clone();
        for k in 0..trace.filtered_errors.len().min(11) {
            for (x, y) in expect.iter().zip(trace.filtered_errors[k].iter()) {
                assert!((x - y).abs() < 1e-8, "iteration {k}");
            }
            expect = a.matvec(&expect).unwrap();
        }
    }

    #[test]
    fn divergent_gain_raises_flag() {
        let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
        let alpha = 2.2 / fp.b();
        let n = 120;
        let s = Scenario::new(example_plant(), modified_law(alpha), seeded_reference(n), 400);
        let trace = run(&s).unwrap();
        assert!(trace.diverged);
        assert!(!trace.converged);
    }

    #[test]
    fn matched_mismatch_study_is_immediate() {
        let n = 40;
        let r = seeded_reference(n);
        let study =
            mismatch_study(&example_plant(), &example_plant(), &modified_law(1.0), &r, 3).unwrap();
        // with no mismatch the first ILC pass reproduces the one-shot input,
        // up to the zero-padding at the trial edges
        assert!(study.ilc_peaks[1] <= study.zpetc_peak * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn effective_transition_matches_lifted_matrix() {
        use crate::laws::build_transition;
        let n = 12;
        let s = Scenario::new(example_plant(), modified_law(0.45), seeded_reference(n), 2);
        let eff = effective_transition(&s).unwrap();
        let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
        let unit = ZeroPhaseFilter::unit();
        let a = build_transition(&fp, 0.45, &unit, &unit, n, true)
            .unwrap()
            .to_dense();
        assert!((eff - a).abs().max() < 1e-9);
    }
}
