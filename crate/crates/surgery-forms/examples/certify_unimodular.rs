//! Certify unimodularity of the 16×16 symmetrized product form with a
//! fraction-free determinant and a two-sided adjugate inverse.
//!
//! Run with: cargo run --example certify_unimodular

use surgery_forms::forms::make_psi_n;

fn main() {
    let form = make_psi_n(1).unwrap();
    let lambda = form.symmetrize();
    println!("lambda_1 is {}x{}", lambda.rows(), lambda.cols());

    let det = lambda.bareiss_det().unwrap();
    println!("det = {}", det);
    let (sign, exp) = det.is_unit().expect("determinant must be a unit");
    println!("unit: sign {}, exponent {:?}", sign, exp.0);

    let inv = lambda.adjugate_inverse().unwrap();
    assert!(lambda.mat_mul(&inv).unwrap().is_identity());
    assert!(inv.mat_mul(&lambda).unwrap().is_identity());
    println!("two-sided inverse certified");
}
