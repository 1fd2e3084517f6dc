//! Order-independent summation helpers.
//!
//! Every mean in the crate goes through [`mean`], which sorts its input and
//! sums deviations from the smallest value with Neumaier compensation. The
//! result does not depend on input order, and a run of identical values
//! averages to exactly that value.

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Arithmetic mean. `NaN` for an empty slice.
pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let v = sorted(values);
    let base = v[0];
    base + compensated_sum(v.iter().map(|x| x - base)) / v.len() as f64
}

/// Sample standard deviation (n - 1 denominator); zero for fewer than two values.
pub(crate) fn sample_std(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let v = sorted(values);
    let ss = compensated_sum(v.iter().map(|x| (x - mean) * (x - mean)));
    (ss / (v.len() - 1) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_values_average_exactly() {
        for x in [0.1, 4.389, 6.301, 1e-300, 0.0] {
            assert_eq!(mean(&[x, x, x]), x);
            assert_eq!(mean(&[x; 10]), x);
        }
    }

    #[test]
    fn mean_ignores_order() {
        let a = [0.3, 1.7, 2.9, 0.0001, 5.5];
        let mut b = a;
        b.reverse();
        assert_eq!(mean(&a), mean(&b));
    }

    #[test]
    fn two_point_std() {
        let m = mean(&[0.0, 1.0]);
        assert_eq!(m, 0.5);
        assert!((sample_std(&[0.0, 1.0], m) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(sample_std(&[3.0], 3.0), 0.0);
    }

    #[test]
    fn compensation_recovers_small_terms() {
        let s = compensated_sum([1.0, 1e-16, -1.0, 1e-16]);
        assert!((s - 2e-16).abs() < 1e-30);
    }
}
