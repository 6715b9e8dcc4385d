//! Restriction of scalars along a finite diagonal cover of the torus:
//! `z_i ↦ z_i^{k_i}` embeds the Laurent ring into itself with index
//! `q = Π k_i`, and every rank-`r` object becomes a rank-`rq` object
//! over the subring (identified with the ring itself).

use crate::error::{Error, Result};
use crate::forms::{AlmostSymmetricForm, QuadraticForm};
use crate::matrix::{lex_cosets, lex_rank, RingMatrix};
use crate::ring::{LaurentPoly, MultiIndex};

/// A diagonal cover: variable `z_i` is an index-`k_i` cover of itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cover {
    multipliers: Vec<u64>,
}

impl Cover {
    pub fn new(multipliers: Vec<u64>) -> Result<Self> {
        if multipliers.iter().any(|&k| k == 0) {
            return Err(Error::InvalidInput("cover multipliers must be positive".into()));
        }
        Ok(Cover { multipliers })
    }

    pub fn diagonal(k: u64, m: usize) -> Self {
        Cover {
            multipliers: vec![k; m],
        }
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    pub fn vars(&self) -> usize {
        self.multipliers.len()
    }

    /// The index `q = Π k_i` of the covered lattice.
    pub fn index(&self) -> usize {
        self.multipliers.iter().product::<u64>() as usize
    }

    /// Coset representatives `z^c`, `0 ≤ c_i < k_i`, in lexicographic
    /// order; this is the basis used by every transfer matrix.
    pub fn cosets(&self) -> Vec<Vec<u64>> {
        lex_cosets(&self.multipliers)
    }
}

/// The `q × q` matrix of multiplication by `a` on the restricted
/// module, in the lexicographic coset basis. The monomial `z^j` sends
/// the basis element `z^c` to `z^m · z^s` with `j + c = k∘m + s`,
/// `0 ≤ s_i < k_i`; the subring factor `z^{k∘m}` is written `z^m` in
/// the subring's own coordinates.
pub fn transfer_poly(a: &LaurentPoly, cover: &Cover) -> Result<RingMatrix> {
    if a.vars() != cover.vars() {
        return Err(Error::ContextMismatch(cover.vars(), a.vars()));
    }
    let q = cover.index();
    let k = cover.multipliers();
    let cosets = cover.cosets();
    let mut out = RingMatrix::zero(q, q, a.vars());
    for (e, coeff) in a.terms() {
        for (col, c) in cosets.iter().enumerate() {
            let mut m = Vec::with_capacity(k.len());
            let mut s = Vec::with_capacity(k.len());
            for ((&j, &ci), &ki) in e.0.iter().zip(c.iter()).zip(k) {
                let t = j + ci as i64;
                m.push(t.div_euclid(ki as i64));
                s.push(t.rem_euclid(ki as i64) as u64);
            }
            let row = lex_rank(&s, k);
            out.entry_mut(row, col).add_term(MultiIndex(m), coeff.clone());
        }
    }
    Ok(out)
}

/// Entrywise transfer: each entry of `A` becomes its `q × q` block;
/// row `i` of `A` occupies block rows `i·q … i·q + q − 1`.
pub fn transfer_matrix(a: &RingMatrix, cover: &Cover) -> Result<RingMatrix> {
    if a.vars() != cover.vars() {
        return Err(Error::ContextMismatch(cover.vars(), a.vars()));
    }
    let q = cover.index();
    let mut out = RingMatrix::zero(a.rows() * q, a.cols() * q, a.vars());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let block = transfer_poly(a.entry(i, j), cover)?;
            for r in 0..q {
                for c in 0..q {
                    if !block.entry(r, c).is_zero() {
                        *out.entry_mut(i * q + r, j * q + c) = block.entry(r, c).clone();
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Transfer of a quadratic form; parity is preserved.
pub fn transfer_quadratic(f: &QuadraticForm, cover: &Cover) -> Result<QuadraticForm> {
    QuadraticForm::new(transfer_matrix(&f.psi, cover)?, f.parity)
}

/// Transfer of an almost symmetric form; the result is re-certified
/// invertible and nilpotent.
pub fn transfer_almost(f: &AlmostSymmetricForm, cover: &Cover) -> Result<AlmostSymmetricForm> {
    let out = AlmostSymmetricForm::new(transfer_matrix(&f.alpha, cover)?, f.parity)?;
    out.nilpotency_check()?;
    Ok(out)
}

/// Basis identification between the iterated transfer (first under
/// `inner`, then under `outer`) and the single transfer under the
/// composed cover with multipliers `inner_i · outer_i`, for a rank-`dim`
/// module. `perm[iterated_index] = composed_index`; the iterated basis
/// element `z^c ⊗ z^{c'}` corresponds to the composed coset
/// `z^{c + inner∘c'}`.
pub fn composition_permutation(inner: &Cover, outer: &Cover, dim: usize) -> Result<Vec<usize>> {
    if inner.vars() != outer.vars() {
        return Err(Error::ContextMismatch(inner.vars(), outer.vars()));
    }
    let composed_k: Vec<u64> = inner
        .multipliers()
        .iter()
        .zip(outer.multipliers())
        .map(|(a, b)| a * b)
        .collect();
    let q1 = inner.index();
    let q2 = outer.index();
    let q = q1 * q2;
    let mut perm = Vec::with_capacity(dim * q);
    for orig in 0..dim {
        for c in inner.cosets() {
            for c2 in outer.cosets() {
                let composed: Vec<u64> = c
                    .iter()
                    .zip(&c2)
                    .zip(inner.multipliers())
                    .map(|((&ci, &c2i), &ki)| ci + ki * c2i)
                    .collect();
                perm.push(orig * q + lex_rank(&composed, &composed_k));
            }
        }
    }
    Ok(perm)
}
