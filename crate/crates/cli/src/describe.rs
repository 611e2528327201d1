//! Human-readable schema of each experiment.

use std::fmt::Write as _;

use crate::config::{Experiment, DEFAULT_F_GRID, DEFAULT_SHOTS, DEFAULT_SIZES};
use crate::experiments::header;

fn summary(exp: Experiment) -> &'static str {
    match exp {
        Experiment::PhaseAccuracy => {
            "Phase error theta~ of the order-p formula against order-p_prime references on eigenstate k, \
             compared with the exact phase theta."
        }
        Experiment::SizeSweep => {
            "Relative error of theta~ against theta over random Hamiltonians with N qubits and N^2 terms."
        }
        Experiment::ErrorRatio => {
            "Commutator bound W_C against fitted second-order constants W over random Hamiltonians \
             with N qubits and N^2 terms. Instances whose errors vanish are marked degenerate."
        }
        Experiment::Resources => {
            "Optimal second-order phase-estimation resources (t*, B*, Q*, O*) from W_C (classical), \
             from W fitted to theta~ (quantum) and from W fitted to exact Trotter errors (exact)."
        }
        Experiment::Shots => {
            "Shot-sampled theta~ from the real and imaginary Hadamard tests, shots split evenly, \
             with a 95% confidence interval (estimate +/- 1.96 stderr)."
        }
        Experiment::FidelitySweep => {
            "Mean phase error over m_samples random states of each fidelity f with eigenstate k."
        }
        Experiment::Opnorm => {
            "Exact operator-norm error Delta_p, the sampled estimate over m_samples Haar-random states \
             and the largest eigenstate |theta| at each time."
        }
        Experiment::FitWk => {
            "Fixed-slope fit err = W t^p over times evenly spaced on a logarithmic scale \
             (10 points in [pi/(4||H||), pi/(2||H||)] by default), for exact Trotter errors and for \
             |theta~|/t with each reference order."
        }
        Experiment::CommutatorBound => "Per-term contributions to the second-order commutator bound W_C.",
    }
}

fn default_of(exp: Experiment, key: &str) -> String {
    let list = |v: &[String]| format!("[{}]", v.join(", "));
    match key {
        "hamiltonian" => r#"{"random": {"n": 4, "l": n^2, "seed": master_seed}}"#.into(),
        "sizes" => list(&DEFAULT_SIZES.map(|n| n.to_string())),
        "instances" => if exp == Experiment::ErrorRatio { "10" } else { "5" }.into(),
        "p" => if exp == Experiment::Shots { "1" } else { "2" }.into(),
        "p_prime" => if exp == Experiment::PhaseAccuracy { "[2, 4, 6]" } else { "[4]" }.into(),
        "s" => "1".into(),
        "time_spec" => match exp {
            Experiment::Shots => r#"{"divisor": 1}  (t = pi/||H||)"#.into(),
            Experiment::ErrorRatio | Experiment::Resources | Experiment::Opnorm | Experiment::FitWk => {
                r#"{"log_grid": {"min_divisor": 4, "max_divisor": 2, "points": 10}}  (10-point log grid)"#.into()
            }
            _ => r#"{"divisor": 4}  (t = pi/(4||H||))"#.into(),
        },
        "k" => "0".into(),
        "epsilon" => "[0.01]".into(),
        "shots" => list(&DEFAULT_SHOTS.map(|n| n.to_string())),
        "m_samples" => if exp == Experiment::FidelitySweep { "100" } else { "64" }.into(),
        "f_grid" => list(&DEFAULT_F_GRID.map(|f| f.to_string())),
        _ => String::new(),
    }
}

pub fn describe(exp: Experiment) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{exp}\n\n{}\n", summary(exp));
    out.push_str("config keys (default):\n");
    out.push_str("  experiment     required\n");
    for key in exp.keys() {
        let _ = writeln!(out, "  {key:<14} {}", default_of(exp, key));
    }
    out.push_str("  master_seed    0\n");
    let _ = writeln!(out, "  output_dir     results/{exp}");
    let _ = writeln!(out, "\noutput: {exp}.csv, manifest.json\ncolumns:");
    for col in header(exp) {
        let _ = writeln!(out, "  {col}");
    }
    if exp == Experiment::Shots {
        out.push_str("\nci95_low and ci95_high bound the 95% confidence interval of theta_estimate.\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_experiment_lists_its_keys_and_columns() {
        for exp in Experiment::ALL {
            let text = describe(exp);
            for key in exp.keys() {
                assert!(text.contains(key), "{exp} misses {key}");
            }
            for col in header(exp) {
                assert!(text.contains(col));
            }
        }
    }
}
