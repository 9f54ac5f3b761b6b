//! Greedy best-improvement descent to a 1-flip local minimum.

use crate::qubo::{BinaryAssignment, Qubo};
use crate::{Error, Result};

pub const DESCENT_NAME: &str = "descent";

/// Repeatedly applies the single-bit flip that lowers the energy the most
/// (lowest index on ties) until no flip improves. The result is a 1-flip
/// local minimum with energy no higher than `start`'s.
pub fn local_search_descent(q: &Qubo, start: &BinaryAssignment) -> Result<(BinaryAssignment, f64)> {
    let n = q.num_variables();
    if start.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: start.len(),
        });
    }
    let couplings = q.couplings();
    let mut x = start.bits().to_vec();
    // field[i] = a_i + Σ_j a_ij x_j; flipping i changes energy by ±field[i].
    let mut field: Vec<f64> = (0..n)
        .map(|i| {
            couplings.linear[i]
                + couplings.neighbors[i]
                    .iter()
                    .filter(|&&(j, _)| x[j])
                    .map(|&(_, a)| a)
                    .sum::<f64>()
        })
        .collect();
    loop {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            let d = if x[i] { -field[i] } else { field[i] };
            if d < 0.0 && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        let Some((i, _)) = best else { break };
        x[i] = !x[i];
        let sign = if x[i] { 1.0 } else { -1.0 };
        for &(j, a) in &couplings.neighbors[i] {
            field[j] += sign * a;
        }
    }
    let assignment = BinaryAssignment::from_bits(x);
    let energy = q.evaluate(&assignment)?;
    Ok((assignment, energy))
}

/// True when no single flip lowers the energy.
pub fn is_local_minimum(q: &Qubo, x: &BinaryAssignment) -> Result<bool> {
    if x.len() != q.num_variables() {
        return Err(Error::LengthMismatch {
            expected: q.num_variables(),
            got: x.len(),
        });
    }
    let couplings = q.couplings();
    Ok((0..x.len()).all(|i| couplings.flip_delta(x.bits(), i) >= 0.0))
}
