//! Deterministic seed derivation from a master seed and a tuple of indices.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `master` with an ordered index tuple.
///
/// Each step is a bijection of the running state for a fixed index, so two
/// tuples that differ only in their last position never collide, and single
/// indices map injectively for a fixed master.
pub fn derive_seed(master: u64, indices: &[u64]) -> u64 {
    let mut h = splitmix64(master);
    for &i in indices {
        h = splitmix64(h ^ splitmix64(i));
    }
    splitmix64(h ^ indices.len() as u64)
}
