//! Shared fixtures for the benchmarks.

/// A deterministic dense vector with entries in `[-1, 1)`.
pub fn sample_vector(dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|i| ((i.wrapping_mul(2_654_435_761) % 2000) as f64 - 1000.0) / 1000.0)
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn sample_vector_is_bounded() {
        let v = super::sample_vector(10_000);
        assert!(v.iter().all(|x| (-1.0..1.0).contains(x)));
        assert_ne!(v[1], v[2]);
    }
}
