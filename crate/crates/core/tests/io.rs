use motzkin_core::hamiltonian::{build_hamiltonian, build_motzkin_state};
use motzkin_core::{SparseOperator, StateVector};

#[test]
fn state_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m8.bin");
    let state = build_motzkin_state(8).unwrap();
    state.save(&path).unwrap();
    let bytes = std::fs::read(&path).unwrap();
    // 8-byte little-endian length header, then 8 bytes per amplitude
    assert_eq!(bytes.len(), 8 + 8 * 6561);
    assert_eq!(u64::from_le_bytes(bytes[..8].try_into().unwrap()), 6561);
    let back = StateVector::load(&path).unwrap();
    assert_eq!(back, state);
    assert_eq!(back.two_n(), 8);
}

#[test]
fn triplet_export_round_trip() {
    let h = build_hamiltonian(6).unwrap();
    let mut text = Vec::new();
    h.write_triplets(&mut text).unwrap();
    let triplets: Vec<(usize, usize, f64)> = String::from_utf8(text)
        .unwrap()
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(triplets.len(), h.nnz());
    let back = SparseOperator::from_triplets(729, triplets);
    assert_eq!(back.max_abs_diff(&h), 0.0);
}
