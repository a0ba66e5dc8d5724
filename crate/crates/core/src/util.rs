//! Small numeric helpers shared across modules.

/// Neumaier compensated sum. Deterministic left-to-right order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Median of a slice (averages the two middle elements for even lengths).
/// Input must be finite and non-empty.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("non-finite value in median"));
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// Geometric grid of `count` values from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let step = (hi / lo).powf(1.0 / (count as f64 - 1.0));
    (0..count).map(|k| lo * step.powi(k as i32)).collect()
}

/// Least-squares slope of y against x.
pub fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_odd_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn compensated_sum_cancels() {
        let vals = [1e16, 1.0, -1e16];
        assert_eq!(compensated_sum(vals.iter().copied()), 1.0);
    }

    #[test]
    fn grid_endpoints() {
        let g = geometric_grid(0.1, 10.0, 5);
        assert!((g[0] - 0.1).abs() < 1e-15);
        assert!((g[4] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        assert!((regression_slope(&x, &y) - 2.0).abs() < 1e-12);
    }
}
