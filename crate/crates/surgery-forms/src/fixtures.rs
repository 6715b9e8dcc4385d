//! Loader for the matrix fixture file.
//!
//! `fixtures/paper_matrices.json` centralizes every hand-transcribed
//! matrix (the 8×8 seed form and its symmetrization, the torus factor
//! form, its symmetry defect, and the finite-cover example with its
//! sublagrangian witnesses) so transcription is reviewed in one place.
//! The directory is the `SURGERY_FORMS_FIXTURES` environment variable
//! when set; otherwise `./fixtures`, then the copy shipped with the
//! source tree.

use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;

/// Contents of `paper_matrices.json`.
#[derive(Clone, Debug, Deserialize)]
pub struct Fixtures {
    /// The 8×8 integer matrix whose symmetrization is `e8`.
    pub psi0: RingMatrix,
    /// The even unimodular 8×8 matrix of signature 8.
    pub e8: RingMatrix,
    /// The 2×2 torus factor form on variables `z1, z2`.
    pub alpha: RingMatrix,
    /// Symmetry defect `1 + α^{−1}α*` of `alpha`.
    pub beta_t2: RingMatrix,
    /// Transfer of `alpha` to the double cover in the first variable.
    pub transfer_alpha: RingMatrix,
    /// Column vector spanning the sublagrangian of `transfer_alpha`.
    pub witness_i: RingMatrix,
    /// Basis of the orthogonal complement of the sublagrangian.
    pub witness_j: RingMatrix,
    /// Cowitness `u` with `(i* α) u = 1`.
    pub cowitness_u: RingMatrix,
    /// The expected value of `j* (transfer_alpha) j`.
    pub expected_reduction: RingMatrix,
    /// Permutation aligning the lexicographic coset basis with the
    /// basis of the printed transfer matrix (identity: they agree).
    pub transfer_basis_permutation: Vec<usize>,
    /// Indices of the columns of `witness_j` that form `witness_i`.
    pub witness_i_columns: Vec<usize>,
}

/// Candidate fixture directories in priority order.
fn fixture_dirs() -> Vec<PathBuf> {
    // An explicit override is authoritative: no silent fallback.
    if let Ok(dir) = std::env::var("SURGERY_FORMS_FIXTURES") {
        return vec![PathBuf::from(dir)];
    }
    vec![
        PathBuf::from("fixtures"),
        PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")),
    ]
}

/// Loads and parses `paper_matrices.json`.
pub fn load() -> Result<Fixtures> {
    let mut tried = Vec::new();
    for dir in fixture_dirs() {
        let path = dir.join("paper_matrices.json");
        if path.is_file() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Fixture(format!("{}: {}", path.display(), e)))?;
            return serde_json::from_str(&text)
                .map_err(|e| Error::Fixture(format!("{}: {}", path.display(), e)));
        }
        tried.push(path.display().to_string());
    }
    Err(Error::Fixture(format!(
        "paper_matrices.json not found; tried {}",
        tried.join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms;

    #[test]
    fn fixtures_load_and_match_constructors() {
        let f = load().unwrap();
        assert_eq!(f.psi0, forms::make_psi0().psi);
        assert_eq!(f.e8, forms::make_e8());
        assert_eq!(f.alpha, forms::alpha_block(2, 0, 1));
        assert_eq!(f.transfer_basis_permutation, vec![0, 1, 2, 3]);
        assert_eq!(f.witness_i_columns, vec![2]);
        assert_eq!(f.witness_i.rows(), 4);
        assert_eq!(f.witness_j.cols(), 3);
        assert_eq!(f.expected_reduction.rows(), 3);
    }

    #[test]
    fn fixture_beta_is_the_defect_of_alpha() {
        let f = load().unwrap();
        let form = forms::AlmostSymmetricForm::new(f.alpha.clone(), 1).unwrap();
        assert_eq!(form.defect().unwrap(), f.beta_t2);
    }
}
