//! Realize a ring form as a geometric form with small control on a
//! torus cover, measure its radius, and forget control back to a ring
//! matrix — recovering the transfer to the same cover.
//!
//! Run with: cargo run --example controlled_roundtrip

use num_bigint::BigInt;
use num_rational::BigRational;
use surgery_forms::controlled::{
    control_realize, forget_control, roundtrip_permutation, TorusPoint,
};
use surgery_forms::forms::make_psi_n;
use surgery_forms::transfer::{transfer_matrix, Cover};

fn main() {
    let psi = make_psi_n(1).unwrap().psi;
    let k = 8;

    let geometric = control_realize(&psi, 1, k, &TorusPoint::origin(2)).unwrap();
    println!(
        "geometric form: {} labels, {} entries",
        geometric.num_labels(),
        geometric.entries().len()
    );
    println!("radius^2 = {}", geometric.radius_sq().unwrap());

    let delta_sq = BigRational::new(BigInt::from(1), BigInt::from(16));
    let back = forget_control(&geometric, &delta_sq).unwrap();
    println!("forgot control: {}x{} ring matrix", back.rows(), back.cols());

    let perm = roundtrip_permutation(k, 2, psi.rows());
    let transfer = transfer_matrix(&psi, &Cover::diagonal(k, 2)).unwrap();
    assert_eq!(back.permute_symmetric(&perm).unwrap(), transfer);
    println!("round trip equals the {}-fold-cover transfer", k);
}
