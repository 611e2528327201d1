use std::f64::consts::PI;

use super::StateVector;
use crate::error::{Error, Result};
use crate::linalg::{unitary_eigen, CMatrix};

/// Eigenpairs of the effective Hamiltonian `H'` defined by
/// `U' = exp(-i H' t)`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct EffectiveSpectrum {
    pub time: f64,
    /// Each value lies in `(-pi/t, pi/t]`.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

/// `lambda'_j = -arg(mu_j) / t` for the eigenvalues `mu_j` of `u`.
pub fn effective_spectrum(u: &CMatrix, t: f64) -> Result<EffectiveSpectrum> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid("t", t, "must be positive"));
    }
    let eig = unitary_eigen(u)?;
    let raw: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|mu| {
            // arg in [-pi, pi) keeps -arg/t inside (-pi/t, pi/t].
            let a = mu.arg();
            let a = if a >= PI { -PI } else { a };
            -a / t
        })
        .collect();
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[a].total_cmp(&raw[b]));
    Ok(EffectiveSpectrum {
        time: t,
        eigenvalues: order.iter().map(|&k| raw[k]).collect(),
        eigenvectors: CMatrix::from_fn(u.nrows(), order.len(), |i, j| eig.eigenvectors[(i, order[j])]),
    })
}

/// Index of the effective eigenvector with the largest squared overlap with
/// `target`, and that overlap. Ties go to the lowest index.
pub fn match_eigenpair(target: &StateVector, eff: &EffectiveSpectrum) -> Result<(usize, f64)> {
    let v = &eff.eigenvectors;
    if target.dim() != v.nrows() {
        return Err(Error::DimensionMismatch {
            expected: v.nrows(),
            found: target.dim(),
        });
    }
    let psi = nalgebra::DVector::from_column_slice(target.amplitudes());
    let overlaps = v.ad_mul(&psi);
    let mut best = (0, -1.0);
    for (j, o) in overlaps.iter().enumerate() {
        let w = o.norm_sqr();
        if w > best.1 {
            best = (j, w);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{exact_eigenpairs, schedule_unitary, trotter_schedule};
    use crate::pauli::PauliSum;
    use num_complex::Complex64;

    #[test]
    fn exact_z_evolution() {
        let spec = exact_eigenpairs(&PauliSum::from_labels(&[("Z", 1.0)]).unwrap()).unwrap();
        let eff = effective_spectrum(&spec.evolution_operator(0.3), 0.3).unwrap();
        assert!((eff.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eff.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn x_plus_z_second_order_magnitudes() {
        let h = PauliSum::from_labels(&[("X", 1.0), ("Z", 1.0)]).unwrap();
        for t in [0.1, 0.5, 1.0] {
            let u = schedule_unitary(&trotter_schedule(&h, 2, 1, t).unwrap()).unwrap();
            let eff = effective_spectrum(&u, t).unwrap();
            let expect = (t.cos().powi(2)).acos() / t;
            assert!((eff.eigenvalues[0] + expect).abs() < 1e-12);
            assert!((eff.eigenvalues[1] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_edge_maps_to_upper_end() {
        let u = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, -0.0),
        ]));
        let eff = effective_spectrum(&u, 2.0).unwrap();
        for v in &eff.eigenvalues {
            assert!((v - PI / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ties_pick_lowest_index() {
        let eff = EffectiveSpectrum {
            time: 1.0,
            eigenvalues: vec![0.0, 1.0],
            eigenvectors: CMatrix::identity(2, 2),
        };
        let s = (0.5f64).sqrt();
        let psi = StateVector::from_amplitudes(1, vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)]).unwrap();
        assert_eq!(match_eigenpair(&psi, &eff).unwrap().0, 0);
    }
}
