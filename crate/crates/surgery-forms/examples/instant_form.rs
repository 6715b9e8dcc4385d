//! Read the middle-dimensional form off a symmetric chain complex:
//! the two-torus complex yields the 2×2 torus factor form.
//!
//! Run with: cargo run --example instant_form

use surgery_forms::complex::{build_t2, instant_form_iso};
use surgery_forms::forms::alpha_block;

fn main() {
    let (c, s) = build_t2();
    println!("ranks: {:?}", c.ranks());
    for r in 1..=c.top_degree() {
        println!("d_{}:", r);
        println!("{}", c.diff(r).render_text());
    }
    assert!(s.duality_is_iso().unwrap());
    println!("phi_0 is a chain homotopy equivalence to the dual");

    let form = instant_form_iso(&c, &s, 1).unwrap();
    println!("middle-dimensional form:");
    println!("{}", form.alpha.render_text());
    assert_eq!(form.alpha, alpha_block(2, 0, 1));
}
