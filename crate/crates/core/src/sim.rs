//! Time evolution, probability traces and search experiments.

use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::operator::{StateVector, WalkOperator};

/// Recorded evolution: per-step probability distributions and optional
/// aggregation over the classes of a partition.
#[derive(Debug, Clone)]
pub struct EvolutionRun {
    pub labels: Vec<String>,
    /// `steps + 1` rows; row 0 is the initial distribution.
    pub probabilities: Vec<Vec<f64>>,
    pub class_probabilities: Option<Vec<Vec<f64>>>,
    pub final_state: StateVector,
}

/// Iterate the walk `steps` times from a unit initial state, recording the
/// distribution after every step. Probability conservation is enforced to
/// `1e-10` at every recorded step.
pub fn evolve(
    walk: &WalkOperator,
    initial: &StateVector,
    steps: usize,
    classes: Option<&Partition>,
) -> Result<EvolutionRun> {
    if initial.basis != walk.basis {
        return Err(Error::Basis(
            "initial state basis differs from the walk basis".into(),
        ));
    }
    let norm = initial.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Model(format!(
            "initial state has norm {norm}, expected 1"
        )));
    }
    if let Some(p) = classes {
        if p.size() != walk.dim() {
            return Err(Error::Dimension(
                "aggregation partition does not cover the basis".into(),
            ));
        }
    }
    let mut probabilities = Vec::with_capacity(steps + 1);
    let mut state = initial.clone();
    probabilities.push(state.probabilities());
    for step in 0..steps {
        state = walk.apply(&state)?;
        let probs = state.probabilities();
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Internal(format!(
                "probability leaked to {total} at step {}",
                step + 1
            )));
        }
        probabilities.push(probs);
    }
    let class_probabilities = classes.map(|p| {
        probabilities
            .iter()
            .map(|row| {
                p.classes()
                    .iter()
                    .map(|class| class.iter().map(|&i| row[i]).sum())
                    .collect()
            })
            .collect()
    });
    Ok(EvolutionRun {
        labels: walk.basis.labels().to_vec(),
        probabilities,
        class_probabilities,
        final_state: state,
    })
}

/// Success-probability trace over a target subset of basis labels.
#[derive(Debug, Clone)]
pub struct SearchTrace {
    pub run: EvolutionRun,
    pub target: Vec<usize>,
    /// Probability mass on the target per step.
    pub success: Vec<f64>,
    /// First step attaining the peak.
    pub peak_step: usize,
    pub peak: f64,
}

pub fn search_trace(run: EvolutionRun, target: Vec<usize>) -> Result<SearchTrace> {
    if let Some(&bad) = target.iter().find(|&&i| i >= run.labels.len()) {
        return Err(Error::Model(format!(
            "target index {bad} outside the basis"
        )));
    }
    let success: Vec<f64> = run
        .probabilities
        .iter()
        .map(|row| target.iter().map(|&i| row[i]).sum())
        .collect();
    let (peak_step, peak) =
        success
            .iter()
            .enumerate()
            .fold((0usize, f64::MIN), |(bi, bv), (i, &v)| {
                if v > bv + 1e-15 {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });
    Ok(SearchTrace {
        run,
        target,
        success,
        peak_step,
        peak,
    })
}

/// Per-label trace as CSV: `step,label,probability`.
pub fn trace_csv(run: &EvolutionRun) -> String {
    let mut out = String::from("step,label,probability\n");
    for (step, row) in run.probabilities.iter().enumerate() {
        for (label, p) in run.labels.iter().zip(row) {
            out.push_str(&format!("{step},{label},{p}\n"));
        }
    }
    out
}

/// Class-aggregated trace as CSV: `step,class,probability`.
pub fn class_trace_csv(run: &EvolutionRun) -> Option<String> {
    let rows = run.class_probabilities.as_ref()?;
    let mut out = String::from("step,class,probability\n");
    for (step, row) in rows.iter().enumerate() {
        for (class, p) in row.iter().enumerate() {
            out.push_str(&format!("{step},{class},{p}\n"));
        }
    }
    Some(out)
}

/// Success trace as CSV: `step,success`.
pub fn search_csv(trace: &SearchTrace) -> String {
    let mut out = String::from("step,success\n");
    for (step, s) in trace.success.iter().enumerate() {
        out.push_str(&format!("{step},{s}\n"));
    }
    out
}
