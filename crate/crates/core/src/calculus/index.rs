//! Fixed lexicographic enumerations of the 4-, 16- and 64-dimensional bases.

/// Position of ω_i⊗ω_j (1-based i, j) in the 16-dim basis.
pub fn pair(i: usize, j: usize) -> usize {
    (i - 1) * 4 + (j - 1)
}

/// Position of ω_a⊗ω_b⊗ω_c (1-based) in the 64-dim basis.
pub fn triple(a: usize, b: usize, c: usize) -> usize {
    (a - 1) * 16 + (b - 1) * 4 + (c - 1)
}

pub fn pair_label(idx: usize) -> String {
    format!("w{}w{}", idx / 4 + 1, idx % 4 + 1)
}

pub fn triple_label(idx: usize) -> String {
    format!("w{}w{}w{}", idx / 16 + 1, (idx / 4) % 4 + 1, idx % 4 + 1)
}

pub fn pair_labels() -> Vec<String> {
    (0..16).map(pair_label).collect()
}

pub fn triple_labels() -> Vec<String> {
    (0..64).map(triple_label).collect()
}

/// Labels of the six F-part eigenvectors spanning the wedge model.
pub fn wedge_labels() -> Vec<String> {
    ["f2_1", "f2_2", "f2_3", "f3_1", "f3_2", "f3_3"].iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic() {
        assert_eq!(pair(1, 1), 0);
        assert_eq!(pair(4, 4), 15);
        assert_eq!(triple(2, 3, 4), 27);
        assert_eq!(pair_label(pair(1, 3)), "w1w3");
        assert_eq!(triple_label(triple(4, 1, 2)), "w4w1w2");
    }
}
