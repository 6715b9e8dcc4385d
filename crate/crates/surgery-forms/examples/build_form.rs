//! Build the 8×8 seed quadratic form, symmetrize it, and print both.
//!
//! Run with: cargo run --example build_form

use surgery_forms::forms::{make_e8, make_psi0};

fn main() {
    let form = make_psi0();
    println!("psi0 (parity {}):", form.parity);
    println!("{}", form.psi.render_text());
    let lambda = form.symmetrize();
    println!("psi0 + psi0^*:");
    println!("{}", lambda.render_text());
    assert_eq!(lambda, make_e8());
    println!("symmetrization is the E8 matrix");
}
