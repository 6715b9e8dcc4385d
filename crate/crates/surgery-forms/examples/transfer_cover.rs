//! Transfer a matrix over the Laurent ring in two variables to the
//! double cover in the first variable, doubling its size.
//!
//! Run with: cargo run --example transfer_cover

use surgery_forms::forms::alpha_block;
use surgery_forms::transfer::{transfer_matrix, Cover};

fn main() {
    let alpha = alpha_block(2, 0, 1);
    println!("alpha:");
    println!("{}", alpha.render_text());

    let cover = Cover::new(vec![2, 1]).unwrap();
    println!("coset basis: {:?}", cover.cosets());

    let transferred = transfer_matrix(&alpha, &cover).unwrap();
    println!("transfer to the double cover:");
    println!("{}", transferred.render_text());

    // transfer commutes with the conjugate-transpose involution
    assert_eq!(
        transfer_matrix(&alpha.conj_transpose(), &cover).unwrap(),
        transferred.conj_transpose()
    );
    println!("transfer commutes with the involution");
}
