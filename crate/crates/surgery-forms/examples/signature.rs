//! Compute the signature of a symmetric integer matrix by exact
//! congruence diagonalization.
//!
//! Run with: cargo run --example signature

use surgery_forms::forms::{make_e8, signature};

fn main() {
    let e8 = make_e8();
    let sig = signature(&e8).unwrap();
    println!("signature(E8) = {}", sig);
    assert_eq!(sig, 8);
}
