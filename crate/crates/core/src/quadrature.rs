//! Composite rules on uniformly spaced samples.

/// Composite Simpson rule. `values.len()` must be odd and at least 3.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    debug_assert!(values.len() >= 3 && values.len() % 2 == 1);
    let last = values.len() - 1;
    let interior: f64 = values[1..last]
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    h / 3.0 * (values[0] + interior + values[last])
}

pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    let last = values.len() - 1;
    h * (0.5 * (values[0] + values[last]) + values[1..last].iter().sum::<f64>())
}
