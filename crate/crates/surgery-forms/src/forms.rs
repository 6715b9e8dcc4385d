//! Even-dimensional quadratic forms and almost symmetric forms over the
//! Laurent ring.
//!
//! A `(−1)^n`-quadratic form is carried by a square matrix `ψ`; its
//! symmetrization is `λ = ψ + (−1)^n ψ*` and its quadratic refinement
//! takes values in the quotient `Q = Λ/{a + (−1)^{n+1} ā}`. An almost
//! `(−1)^n`-symmetric form is an invertible matrix `α` whose symmetry
//! defect `β = 1 + (−1)^{n+1} α^{−1} α*` is nilpotent. Kronecker products
//! implement the product of forms, with parities adding mod 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::{LaurentPoly, MultiIndex};

/// Default resource guard for `make_psi_n`: the matrices grow as
/// `2^{n+3} × 2^{n+3}` over `2n` variables.
pub const PSI_N_DEFAULT_LIMIT: usize = 4;

/// A quadratic form of parity `n mod 2`, carried by the matrix `ψ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticForm {
    pub psi: RingMatrix,
    pub parity: u8,
}

impl QuadraticForm {
    pub fn new(psi: RingMatrix, parity: u8) -> Result<Self> {
        if !psi.is_square() {
            return Err(Error::DimensionMismatch("quadratic form matrix must be square".into()));
        }
        Ok(QuadraticForm { psi, parity: parity % 2 })
    }

    pub fn dim(&self) -> usize {
        self.psi.rows()
    }

    /// `λ = ψ + (−1)^n ψ*`.
    pub fn symmetrize(&self) -> RingMatrix {
        let star = self.psi.conj_transpose();
        if self.parity == 0 {
            self.psi.checked_add(&star).unwrap()
        } else {
            self.psi.checked_sub(&star).unwrap()
        }
    }

    /// `λ(x, y) = Σ_{i,j} bar(x_i) λ_{ij} y_j`.
    pub fn lambda_of(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<LaurentPoly> {
        evaluate(&self.symmetrize(), x, y)
    }

    /// The quadratic refinement on a coefficient vector, as a class in
    /// `Q_{(−1)^n}(Λ)`. Evaluation conjugates the row vector:
    /// `μ(x) = [Σ_{i,j} bar(x_i) ψ_{ij} x_j]`, which satisfies
    /// `λ(x,x) = μ(x) + (−1)^n bar(μ(x))` and `μ(ax) = [a·bar(a)·μ(x)]`.
    pub fn mu_of(&self, x: &[LaurentPoly]) -> Result<QClassElement> {
        let v = evaluate(&self.psi, x, x)?;
        Ok(q_reduce(&v, self.parity))
    }

    /// Kronecker product with an almost symmetric form; parities add.
    pub fn quad_almost_product(&self, a: &AlmostSymmetricForm) -> Result<QuadraticForm> {
        let psi = self.psi.kronecker(&a.alpha)?;
        QuadraticForm::new(psi, (self.parity + a.parity) % 2)
    }
}

fn evaluate(m: &RingMatrix, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<LaurentPoly> {
    if x.len() != m.rows() || y.len() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector lengths {} and {} against {}x{} matrix",
            x.len(),
            y.len(),
            m.rows(),
            m.cols()
        )));
    }
    let mut acc = LaurentPoly::zero(m.vars());
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let xbar = xi.involute();
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() || m.entry(i, j).is_zero() {
                continue;
            }
            acc = acc.checked_add(&xbar.checked_mul(m.entry(i, j))?.checked_mul(yj)?)?;
        }
    }
    Ok(acc)
}

/// An almost `(−1)^n`-symmetric form: `α` invertible with nilpotent
/// symmetry defect. Invertibility is certified at construction; the
/// nilpotency certificate is computed on demand because it needs the
/// inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlmostSymmetricForm {
    pub alpha: RingMatrix,
    pub parity: u8,
}

impl AlmostSymmetricForm {
    pub fn new(alpha: RingMatrix, parity: u8) -> Result<Self> {
        if !alpha.is_square() {
            return Err(Error::DimensionMismatch("form matrix must be square".into()));
        }
        let det = alpha.bareiss_det()?;
        if det.is_unit().is_none() {
            return Err(Error::NotInvertible(det.to_string()));
        }
        Ok(AlmostSymmetricForm { alpha, parity: parity % 2 })
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    /// The symmetry defect `β = 1 + (−1)^{n+1} α^{−1} α*`.
    pub fn defect(&self) -> Result<RingMatrix> {
        let inv = self.alpha.adjugate_inverse()?;
        let prod = inv.mat_mul(&self.alpha.conj_transpose())?;
        let id = RingMatrix::identity(self.dim(), self.alpha.vars());
        if self.parity == 1 {
            id.checked_add(&prod)
        } else {
            id.checked_sub(&prod)
        }
    }

    /// Smallest `N ≥ 1` with `β^N = 0`, bounded by `dim + 1`.
    pub fn nilpotency_check(&self) -> Result<usize> {
        let beta = self.defect()?;
        let mut power = RingMatrix::identity(self.dim(), self.alpha.vars());
        for n in 1..=self.dim() + 1 {
            power = power.mat_mul(&beta)?;
            if power.is_zero() {
                return Ok(n);
            }
        }
        Err(Error::NotAlmostSymmetric(self.dim() + 1))
    }

    /// Kronecker product of almost symmetric forms; parities add. The
    /// result is re-certified nilpotent.
    pub fn almost_product(&self, other: &AlmostSymmetricForm) -> Result<AlmostSymmetricForm> {
        let alpha = self.alpha.kronecker(&other.alpha)?;
        let form = AlmostSymmetricForm::new(alpha, (self.parity + other.parity) % 2)?;
        form.nilpotency_check()?;
        Ok(form)
    }
}

/// Canonical representative of a class in `Q_{(−1)^n}(Λ)`.
///
/// For each exponent pair `{g, −g}` with `g ≠ 0` only the member whose
/// first nonzero coordinate is positive carries a coefficient (the
/// relation gives `z^{−g} ≡ (−1)^n z^g`). For odd parity the constant
/// coefficient is reduced mod 2 into `{0, 1}`; for even parity the
/// constant carries no relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QClassElement {
    pub rep: LaurentPoly,
    pub parity: u8,
}

impl QClassElement {
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn checked_add(&self, other: &QClassElement) -> Result<QClassElement> {
        if self.parity != other.parity {
            return Err(Error::InvalidInput("Q-class parity mismatch".into()));
        }
        Ok(q_reduce(&self.rep.checked_add(&other.rep)?, self.parity))
    }
}

impl std::fmt::Display for QClassElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Reduces a ring element to the canonical representative of its class
/// in `Q_{(−1)^n}(Λ)`.
pub fn q_reduce(a: &LaurentPoly, parity: u8) -> QClassElement {
    let parity = parity % 2;
    let vars = a.vars();
    let mut rep = LaurentPoly::zero(vars);
    let mut constant = BigInt::zero();
    for (e, c) in a.terms() {
        match e.leading_sign() {
            0 => constant += c,
            1 => rep.add_term(e.clone(), c.clone()),
            _ => {
                let folded = if parity == 0 { c.clone() } else { -c.clone() };
                rep.add_term(e.neg(), folded);
            }
        }
    }
    if parity == 1 {
        constant = constant.mod_floor(&BigInt::from(2));
    }
    rep.add_term(MultiIndex::zero(vars), constant);
    QClassElement { rep, parity }
}

/// The 8×8 integer matrix `ψ0` whose symmetrization is `E8`.
pub fn make_psi0() -> QuadraticForm {
    let psi = RingMatrix::from_ints(
        &[
            &[1, 0, 0, 1, 0, 0, 0, 0],
            &[0, 1, 1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0, 0, 0],
            &[0, 0, 0, 1, 1, 0, 0, 0],
            &[0, 0, 0, 0, 1, 1, 0, 0],
            &[0, 0, 0, 0, 0, 1, 1, 0],
            &[0, 0, 0, 0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 0, 0, 0, 1],
        ],
        0,
    );
    QuadraticForm::new(psi, 0).unwrap()
}

/// The even unimodular `E8` matrix, `ψ0 + ψ0^T`.
pub fn make_e8() -> RingMatrix {
    RingMatrix::from_ints(
        &[
            &[2, 0, 0, 1, 0, 0, 0, 0],
            &[0, 2, 1, 0, 0, 0, 0, 0],
            &[0, 1, 2, 1, 0, 0, 0, 0],
            &[1, 0, 1, 2, 1, 0, 0, 0],
            &[0, 0, 0, 1, 2, 1, 0, 0],
            &[0, 0, 0, 0, 1, 2, 1, 0],
            &[0, 0, 0, 0, 0, 1, 2, 1],
            &[0, 0, 0, 0, 0, 0, 1, 2],
        ],
        0,
    )
}

/// The 2×2 matrix of `make_alpha` on its own two variables `z1, z2`:
/// `((1−z1, z1z2−z1−z2), (1, 1−z2))`.
pub fn alpha_block(vars: usize, v1: usize, v2: usize) -> RingMatrix {
    let z1 = LaurentPoly::var(vars, v1);
    let z2 = LaurentPoly::var(vars, v2);
    let one = LaurentPoly::one(vars);
    let a11 = one.checked_sub(&z1).unwrap();
    let a12 = z1
        .checked_mul(&z2)
        .unwrap()
        .checked_sub(&z1)
        .unwrap()
        .checked_sub(&z2)
        .unwrap();
    let a22 = one.checked_sub(&z2).unwrap();
    RingMatrix::new(2, 2, vars, vec![a11, a12, one, a22]).unwrap()
}

/// The `i`-th torus factor form `α_i` (1-based), embedded into the
/// `2n`-variable ring on variables `z_{2i−1}, z_{2i}`; parity 1.
pub fn make_alpha(i: usize, n: usize) -> Result<AlmostSymmetricForm> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, total: n });
    }
    AlmostSymmetricForm::new(alpha_block(2 * n, 2 * i - 2, 2 * i - 1), 1)
}

/// `ψ_n = ψ0 ⊗ α1 ⊗ … ⊗ α_n` over `Z[Z^{2n}]`, dimension `2^{n+3}`,
/// parity `n mod 2`. `n = 0` returns `ψ0`.
pub fn make_psi_n(n: usize) -> Result<QuadraticForm> {
    make_psi_n_limited(n, PSI_N_DEFAULT_LIMIT)
}

/// `make_psi_n` with a caller-chosen resource guard.
pub fn make_psi_n_limited(n: usize, limit: usize) -> Result<QuadraticForm> {
    if n > limit {
        return Err(Error::ResourceGuard(n, limit));
    }
    let psi0 = make_psi0();
    let mut form = QuadraticForm::new(psi0.psi.embed(2 * n, 0), 0)?;
    for i in 1..=n {
        form = form.quad_almost_product(&make_alpha(i, n)?)?;
    }
    Ok(form)
}

/// Checks the witness `χ` for the equivalence `ψ ~ ψ′`:
/// `ψ′ − ψ = χ + (−1)^{n+1} χ*`.
pub fn forms_equivalent(
    psi: &RingMatrix,
    psi2: &RingMatrix,
    parity: u8,
    chi: &RingMatrix,
) -> Result<bool> {
    let diff = psi2.checked_sub(psi)?;
    let star = chi.conj_transpose();
    let witness = if parity % 2 == 0 {
        chi.checked_sub(&star)?
    } else {
        chi.checked_add(&star)?
    };
    Ok(diff == witness)
}

/// Per-condition result of a sublagrangian witness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SublagrangianReport {
    /// The designated columns of `j` equal the columns of `i`.
    pub columns_match: bool,
    /// `j* α j` equals the expected reduced matrix.
    pub product_matches: bool,
    /// The rows and columns of the expected matrix at the designated
    /// indices vanish (isotropy of the sublagrangian).
    pub block_isotropic: bool,
    /// `(i* α) u` is the identity, splitting the projection.
    pub cowitness_splits: bool,
}

impl SublagrangianReport {
    pub fn ok(&self) -> bool {
        self.columns_match && self.product_matches && self.block_isotropic && self.cowitness_splits
    }
}

/// Verifies that the columns `i` of `j` span a sublagrangian of `α`,
/// using only the supplied witnesses: the inclusion `j`, the expected
/// value of `j* α j`, and a cowitness `u` with `(i* α) u = 1`.
pub fn witness_sublagrangian_check(
    a: &AlmostSymmetricForm,
    i: &RingMatrix,
    i_cols: &[usize],
    j: &RingMatrix,
    u: &RingMatrix,
    expected: &RingMatrix,
) -> Result<SublagrangianReport> {
    let d = a.dim();
    if j.rows() != d || i.rows() != d || u.rows() != d {
        return Err(Error::DimensionMismatch("witness row counts must equal dim(α)".into()));
    }
    if i.cols() != i_cols.len() || u.cols() != i.cols() {
        return Err(Error::DimensionMismatch("designated column count mismatch".into()));
    }
    if expected.rows() != j.cols() || expected.cols() != j.cols() {
        return Err(Error::DimensionMismatch("expected matrix must be square of size cols(j)".into()));
    }
    if let Some(&c) = i_cols.iter().find(|&&c| c >= j.cols()) {
        return Err(Error::IndexOutOfRange { index: c, total: j.cols() });
    }

    let columns_match = i_cols.iter().enumerate().all(|(s, &c)| {
        (0..d).all(|r| j.entry(r, c) == i.entry(r, s))
    });

    let product = j.conj_transpose().mat_mul(&a.alpha)?.mat_mul(j)?;
    let product_matches = &product == expected;

    let block_isotropic = i_cols.iter().all(|&c| {
        (0..expected.cols()).all(|t| expected.entry(c, t).is_zero())
            && (0..expected.rows()).all(|t| expected.entry(t, c).is_zero())
    });

    let split = i.conj_transpose().mat_mul(&a.alpha)?.mat_mul(u)?;
    let cowitness_splits = split.is_identity();

    Ok(SublagrangianReport {
        columns_match,
        product_matches,
        block_isotropic,
        cowitness_splits,
    })
}

/// Sylvester signature of a symmetric integer matrix via exact rational
/// congruence diagonalization. A fully isotropic trailing block is
/// handled by adding a row and column to expose a nonzero diagonal
/// pivot; the resulting hyperbolic pairs contribute `+1` and `−1`.
pub fn signature_int(m: &[Vec<BigInt>]) -> Result<i64> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch("signature of non-square matrix".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut sig = 0i64;
    for p in 0..n {
        if a[p][p].is_zero() {
            if let Some(q) = (p + 1..n).find(|&q| !a[q][q].is_zero()) {
                a.swap(p, q);
                for row in a.iter_mut() {
                    row.swap(p, q);
                }
            } else if let Some(q) = (p + 1..n).find(|&q| !a[p][q].is_zero()) {
                // Isotropic block: row/column addition exposes the
                // pivot 2·a[p][q] on the diagonal.
                for c in 0..n {
                    let add = a[q][c].clone();
                    a[p][c] += add;
                }
                for r in 0..n {
                    let add = a[r][q].clone();
                    a[r][p] += add;
                }
            } else {
                continue;
            }
        }
        let pivot = a[p][p].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for r in p + 1..n {
            let f = &a[r][p] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in p..n {
                let sub = &f * &a[p][c];
                a[r][c] -= sub;
            }
        }
        // The matching column operations zero the pivot row; the
        // trailing block stays symmetric automatically.
        for r in p + 1..n {
            a[p][r] = BigRational::zero();
            a[r][p] = BigRational::zero();
        }
    }
    Ok(sig)
}

/// Signature of a symmetric constant matrix over the trivial ring.
pub fn signature(m: &RingMatrix) -> Result<i64> {
    if m.vars() != 0 {
        return Err(Error::InvalidInput(
            "signature requires a matrix over the integers (k = 0)".into(),
        ));
    }
    signature_int(&m.augment())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zp(pairs: &[(&[i64], i64)], vars: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        for (e, c) in pairs {
            p.add_term(MultiIndex(e.to_vec()), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn psi0_entries_and_symmetrization() {
        let psi0 = make_psi0();
        assert!(psi0.psi.entry(0, 3).is_one());
        assert!(psi0.psi.entry(3, 0).is_zero());
        assert_eq!(psi0.symmetrize(), make_e8());
    }

    #[test]
    fn e8_diagonal_det_signature() {
        let e8 = make_e8();
        for i in 0..8 {
            assert_eq!(e8.entry(i, i), &LaurentPoly::constant(0, 2));
        }
        assert!(e8.bareiss_det().unwrap().is_one());
        assert_eq!(signature(&e8).unwrap(), 8);
    }

    #[test]
    fn alpha_entries_and_unimodularity() {
        let a = make_alpha(1, 1).unwrap();
        assert!(a.alpha.entry(1, 0).is_one());
        assert!(a.alpha.bareiss_det().unwrap().is_one());
        let a2 = make_alpha(2, 2).unwrap();
        // (1,1) entry is 1 − z3
        assert_eq!(a2.alpha.entry(0, 0), &zp(&[(&[0, 0, 0, 0], 1), (&[0, 0, 1, 0], -1)], 4));
        for n in 1..=3 {
            for i in 1..=n {
                assert!(make_alpha(i, n).unwrap().alpha.bareiss_det().unwrap().is_one());
            }
        }
        assert!(make_alpha(2, 1).is_err());
        assert!(make_alpha(0, 1).is_err());
    }

    #[test]
    fn alpha_nilpotency_degree_two() {
        let a = make_alpha(1, 1).unwrap();
        assert_eq!(a.nilpotency_check().unwrap(), 2);
        for n in 2..=3 {
            for i in 1..=n {
                assert_eq!(make_alpha(i, n).unwrap().nilpotency_check().unwrap(), 2);
            }
        }
    }

    #[test]
    fn genuinely_symmetric_form_has_degree_one() {
        let e8 = make_e8();
        let f = AlmostSymmetricForm::new(e8, 0).unwrap();
        assert_eq!(f.nilpotency_check().unwrap(), 1);
        assert!(f.defect().unwrap().is_zero());
    }

    #[test]
    fn psi_n_dims_and_entries() {
        let p1 = make_psi_n(1).unwrap();
        assert_eq!(p1.dim(), 16);
        assert_eq!(p1.parity, 1);
        // psi0(1,1)·alpha1(1,1) = 1 − z1
        assert_eq!(p1.psi.entry(0, 0), &zp(&[(&[0, 0], 1), (&[1, 0], -1)], 2));
        let p2 = make_psi_n(2).unwrap();
        assert_eq!(p2.dim(), 32);
        assert_eq!(p2.parity, 0);
        // psi0(8,8)·alpha1(2,2)·alpha2(2,2) = (1 − z2)(1 − z4)
        let expect = zp(&[(&[0, 0, 0, 0], 1), (&[0, 1, 0, 0], -1)], 4)
            .checked_mul(&zp(&[(&[0, 0, 0, 0], 1), (&[0, 0, 0, 1], -1)], 4))
            .unwrap();
        assert_eq!(p2.psi.entry(31, 31), &expect);
        assert!(matches!(make_psi_n_limited(5, 4), Err(Error::ResourceGuard(5, 4))));
    }

    #[test]
    fn psi_n_matches_iterated_product() {
        let p2 = make_psi_n(2).unwrap();
        let direct = QuadraticForm::new(make_psi0().psi.embed(4, 0), 0)
            .unwrap()
            .quad_almost_product(&make_alpha(1, 2).unwrap())
            .unwrap()
            .quad_almost_product(&make_alpha(2, 2).unwrap())
            .unwrap();
        assert_eq!(p2, direct);
    }

    #[test]
    fn odd_symmetrization_is_skew() {
        let p1 = make_psi_n(1).unwrap();
        let lambda = p1.symmetrize();
        assert_eq!(lambda.conj_transpose(), lambda.neg());
    }

    #[test]
    fn q_reduce_examples() {
        let sum = zp(&[(&[1, 0], 1), (&[-1, 0], 1)], 2); // z1 + z1^{-1}
        let diff = zp(&[(&[1, 0], 1), (&[-1, 0], -1)], 2); // z1 − z1^{-1}
        let two_z1 = zp(&[(&[1, 0], 2)], 2);
        // odd parity: z^{-g} ≡ −z^g, so the sum is a relation element;
        // constants reduce mod 2
        assert!(q_reduce(&sum, 1).is_zero());
        assert_eq!(q_reduce(&diff, 1).rep, two_z1);
        assert!(q_reduce(&LaurentPoly::constant(2, 2), 1).is_zero());
        // even parity: z^{-g} ≡ z^g, so the difference dies; constants
        // are untouched
        assert!(q_reduce(&diff, 0).is_zero());
        assert_eq!(q_reduce(&sum, 0).rep, two_z1);
        assert_eq!(
            q_reduce(&LaurentPoly::constant(2, 2), 0).rep,
            LaurentPoly::constant(2, 2)
        );
    }

    #[test]
    fn mu_on_basis_vectors() {
        let p1 = make_psi_n(1).unwrap();
        for i in 0..4 {
            let mut x = vec![LaurentPoly::zero(2); 16];
            x[i] = LaurentPoly::one(2);
            let mu = p1.mu_of(&x).unwrap();
            assert_eq!(mu, q_reduce(p1.psi.entry(i, i), 1));
        }
        let zero = vec![LaurentPoly::zero(2); 16];
        assert!(p1.mu_of(&zero).unwrap().is_zero());
    }

    #[test]
    fn forms_equivalent_witness() {
        let psi0 = make_psi0().psi;
        let zero = RingMatrix::zero(8, 8, 0);
        assert!(forms_equivalent(&psi0, &psi0, 0, &zero).unwrap());
        let mut bump = psi0.clone();
        *bump.entry_mut(0, 0) = LaurentPoly::constant(0, 2);
        assert!(!forms_equivalent(&psi0, &bump, 0, &zero).unwrap());
    }

    #[test]
    fn almost_product_unit_factor() {
        let unit = AlmostSymmetricForm::new(RingMatrix::identity(1, 2), 0).unwrap();
        let a = make_alpha(1, 1).unwrap();
        let prod = a.almost_product(&unit).unwrap();
        assert_eq!(prod.alpha, a.alpha);
        assert_eq!(prod.parity, 1);
    }

    #[test]
    fn alpha_product_nilpotency_degree_three() {
        let a12 = make_alpha(1, 2)
            .unwrap()
            .almost_product(&make_alpha(2, 2).unwrap())
            .unwrap();
        assert_eq!(a12.dim(), 4);
        assert_eq!(a12.parity, 0);
        assert!(!a12.defect().unwrap().is_zero());
        assert_eq!(a12.nilpotency_check().unwrap(), 3);
        assert!(a12.alpha.bareiss_det().unwrap().is_one());
    }

    #[test]
    fn signature_small_cases() {
        let hyper = RingMatrix::from_ints(&[&[1, 0], &[0, -1]], 0);
        assert_eq!(signature(&hyper).unwrap(), 0);
        let isotropic = RingMatrix::from_ints(&[&[0, 1], &[1, 0]], 0);
        assert_eq!(signature(&isotropic).unwrap(), 0);
        let pos = RingMatrix::from_ints(&[&[2, 1], &[1, 2]], 0);
        assert_eq!(signature(&pos).unwrap(), 2);
        let asym = RingMatrix::from_ints(&[&[0, 1], &[-1, 0]], 0);
        assert!(matches!(signature(&asym), Err(Error::NotSymmetric)));
    }

    #[test]
    fn signature_of_augmented_psi2_symmetrization() {
        let p2 = make_psi_n(2).unwrap();
        let aug = p2.symmetrize().augment();
        assert_eq!(signature_int(&aug).unwrap(), 0);
    }

    #[test]
    fn augmented_lambda1_has_unit_determinant() {
        let p1 = make_psi_n(1).unwrap();
        let aug = p1.symmetrize().augment();
        let entries: Vec<LaurentPoly> = aug
            .into_iter()
            .flatten()
            .map(|c| LaurentPoly::constant(0, c))
            .collect();
        let m = RingMatrix::new(16, 16, 0, entries).unwrap();
        let det = m.bareiss_det().unwrap();
        assert!(det.is_one() || det.neg().is_one());
    }

    fn arb_poly(vars: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(
            (prop::collection::vec(-3i64..=3, vars), -9i64..=9),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero(vars);
            for (e, c) in terms {
                p.add_term(MultiIndex(e), BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn q_reduce_idempotent_additive(a in arb_poly(2), b in arb_poly(2), parity in 0u8..2) {
            let qa = q_reduce(&a, parity);
            prop_assert_eq!(q_reduce(&qa.rep, parity), qa.clone());
            let qsum = q_reduce(&a.checked_add(&b).unwrap(), parity);
            prop_assert_eq!(qa.checked_add(&q_reduce(&b, parity)).unwrap(), qsum);
        }

        #[test]
        fn q_reduce_kills_relation(a in arb_poly(2), parity in 0u8..2) {
            // a + (−1)^{n+1} bar(a) lies in the relation subgroup
            let rel = if parity == 0 {
                a.checked_sub(&a.involute()).unwrap()
            } else {
                a.checked_add(&a.involute()).unwrap()
            };
            prop_assert!(q_reduce(&rel, parity).is_zero());
        }

        #[test]
        fn mu_axioms_on_psi1(
            xs in prop::collection::vec(arb_poly(2), 16),
            ys in prop::collection::vec(arb_poly(2), 16),
            a in arb_poly(2),
        ) {
            let f = make_psi_n(1).unwrap();
            // λ(x,x) = μ(x) + (−1)^n bar(μ(x)) as ring elements
            let mu = f.mu_of(&xs).unwrap();
            let lifted = mu.rep.checked_sub(&mu.rep.involute()).unwrap();
            prop_assert_eq!(f.lambda_of(&xs, &xs).unwrap(), lifted);
            // μ(x+y) = μ(x) + μ(y) + [λ(x,y)]
            let sum: Vec<_> = xs.iter().zip(&ys)
                .map(|(x, y)| x.checked_add(y).unwrap()).collect();
            let lhs = f.mu_of(&sum).unwrap();
            let rhs = f.mu_of(&xs).unwrap()
                .checked_add(&f.mu_of(&ys).unwrap()).unwrap()
                .checked_add(&q_reduce(&f.lambda_of(&xs, &ys).unwrap(), 1)).unwrap();
            prop_assert_eq!(lhs, rhs);
            // μ(ax) = [a bar(a) μ(x)]
            let ax: Vec<_> = xs.iter().map(|x| a.checked_mul(x).unwrap()).collect();
            let scaled = a.checked_mul(&a.involute()).unwrap()
                .checked_mul(&f.mu_of(&xs).unwrap().rep).unwrap();
            prop_assert_eq!(f.mu_of(&ax).unwrap(), q_reduce(&scaled, 1));
        }

        #[test]
        fn equivalence_witness_always_verifies(
            chi_raw in prop::collection::vec(arb_poly(2), 9),
            psi_raw in prop::collection::vec(arb_poly(2), 9),
            parity in 0u8..2,
        ) {
            let psi = RingMatrix::new(3, 3, 2, psi_raw).unwrap();
            let chi = RingMatrix::new(3, 3, 2, chi_raw).unwrap();
            let star = chi.conj_transpose();
            let shift = if parity == 0 {
                chi.checked_sub(&star).unwrap()
            } else {
                chi.checked_add(&star).unwrap()
            };
            let psi2 = psi.checked_add(&shift).unwrap();
            prop_assert!(forms_equivalent(&psi, &psi2, parity, &chi).unwrap());
        }

        #[test]
        fn signature_is_congruence_invariant(diag in prop::collection::vec(-3i64..=3, 4)) {
            let expected: i64 = diag.iter().map(|&d| d.signum()).sum();
            let mut rows = vec![vec![BigInt::zero(); 4]; 4];
            for (i, &d) in diag.iter().enumerate() {
                rows[i][i] = BigInt::from(d);
            }
            prop_assert_eq!(signature_int(&rows).unwrap(), expected);
        }
    }
}
