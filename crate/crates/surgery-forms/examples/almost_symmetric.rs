//! Certify an almost symmetric form: unit determinant plus nilpotent
//! symmetry defect, then combine forms with the twisted product.
//!
//! Run with: cargo run --example almost_symmetric

use surgery_forms::forms::{make_alpha, make_psi_n, make_psi0, QuadraticForm};

fn main() {
    let alpha = make_alpha(1, 1).unwrap();
    println!("alpha_1:");
    println!("{}", alpha.alpha.render_text());
    println!("det = {}", alpha.alpha.bareiss_det().unwrap());

    let beta = alpha.defect().unwrap();
    println!("symmetry defect 1 + alpha^-1 alpha^*:");
    println!("{}", beta.render_text());
    let degree = alpha.nilpotency_check().unwrap();
    println!("defect is nilpotent of degree {}", degree);

    // twisted product with the integral seed form
    let seed = QuadraticForm::new(make_psi0().psi.embed(2, 0), 0).unwrap();
    let product = seed.quad_almost_product(&alpha).unwrap();
    println!(
        "psi0 (x) alpha_1: dimension {}, parity {}",
        product.dim(),
        product.parity
    );
    assert_eq!(product, make_psi_n(1).unwrap());
}
