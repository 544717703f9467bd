use crate::error::SelectionError;
use crate::rng::RngStream;

/// Roulette-wheel pick: index `i` with probability `weights[i] / Σ weights`,
/// by inverting the cumulative sum at one uniform draw.
pub fn roulette(weights: &[f64], rng: &mut RngStream) -> Result<usize, SelectionError> {
    if weights.is_empty() {
        return Err(SelectionError::Empty);
    }
    if let Some((index, &value)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
    {
        return Err(SelectionError::InvalidWeight { index, value });
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(SelectionError::ZeroMass);
    }
    let target = rng.unit() * total;
    let mut cumulative = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        cumulative += w;
        if target < cumulative {
            return Ok(i);
        }
    }
    // rounding left the target past the last partial sum
    Ok(weights
        .iter()
        .rposition(|&w| w > 0.0)
        .expect("positive mass"))
}
