//! Finite free chain complexes over the Laurent ring with the duality
//! data `(φ0, φ1)` of a symmetric structure, the dual and tensor
//! constructions, and extraction of the middle-dimensional form when
//! duality is an isomorphism.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::AlmostSymmetricForm;
use crate::matrix::RingMatrix;
use crate::ring::LaurentPoly;

/// A chain complex `C_m → … → C_0` of finitely generated free modules,
/// stored bottom-up: `ranks[r]` is the rank of `C_r` and `diffs[r-1]`
/// is the matrix of `d_r: C_r → C_{r−1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FreeChainComplex {
    ranks: Vec<usize>,
    diffs: Vec<RingMatrix>,
}

impl FreeChainComplex {
    /// Validates shapes and `d·d = 0` at construction.
    pub fn new(ranks: Vec<usize>, diffs: Vec<RingMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidInput("complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (r, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[r] || d.cols() != ranks[r + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{}: expected {}x{}, got {}x{}",
                    r + 1,
                    ranks[r],
                    ranks[r + 1],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for r in 0..diffs.len().saturating_sub(1) {
            if !diffs[r].mat_mul(&diffs[r + 1])?.is_zero() {
                return Err(Error::NotAComplex(r + 2, r + 1));
            }
        }
        Ok(FreeChainComplex { ranks, diffs })
    }

    /// A complex concentrated in a single degree.
    pub fn concentrated(rank: usize, degree: usize, vars: usize) -> Self {
        let mut ranks = vec![0usize; degree + 1];
        ranks[degree] = rank;
        let diffs = (0..degree)
            .map(|r| RingMatrix::zero(ranks[r], ranks[r + 1], vars))
            .collect();
        FreeChainComplex { ranks, diffs }
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_r: C_r → C_{r−1}` for `1 ≤ r ≤ m`.
    pub fn diff(&self, r: usize) -> &RingMatrix {
        &self.diffs[r - 1]
    }

    pub fn vars(&self) -> usize {
        self.diffs
            .first()
            .map(|d| d.vars())
            .unwrap_or(0)
    }

    /// The dual complex `C^{m−*}`: rank of degree `r` is the rank of
    /// `C^{m−r}`, and its differential in degree `r` is `(−1)^r d*`
    /// applied to the original `d_{m−r+1}`.
    pub fn dual(&self) -> Self {
        let m = self.top_degree();
        let ranks: Vec<usize> = (0..=m).map(|r| self.ranks[m - r]).collect();
        let diffs: Vec<RingMatrix> = (1..=m)
            .map(|r| {
                let d = self.diff(m - r + 1).conj_transpose();
                if r % 2 == 0 {
                    d
                } else {
                    d.neg()
                }
            })
            .collect();
        FreeChainComplex { ranks, diffs }
    }

    /// Tensor product of complexes with the Koszul sign rule
    /// `d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy`. Ranks convolve.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let vars = self.vars().max(other.vars());
        let (m1, m2) = (self.top_degree(), other.top_degree());
        let m = m1 + m2;
        let mut ranks = vec![0usize; m + 1];
        for p in 0..=m1 {
            for q in 0..=m2 {
                ranks[p + q] += self.ranks[p] * other.ranks[q];
            }
        }
        // Basis of degree r: blocks (p, q) with p + q = r, ordered by
        // ascending p; within a block, index i2 * rank(q) + j2 is the
        // pair (x_i ⊗ y_j) in row-major order.
        let block_offset = |deg: usize, p: usize| -> usize {
            let mut off = 0;
            for pp in 0..p {
                if deg >= pp && deg - pp <= m2 {
                    off += self.ranks[pp] * other.ranks[deg - pp];
                }
            }
            off
        };
        let mut diffs = Vec::with_capacity(m);
        for r in 1..=m {
            let mut d = RingMatrix::zero(ranks[r - 1], ranks[r], vars);
            for p in 0..=m1.min(r) {
                let q = r - p;
                if q > m2 {
                    continue;
                }
                let (rp, rq) = (self.ranks[p], other.ranks[q]);
                if rp * rq == 0 {
                    continue;
                }
                let col0 = block_offset(r, p);
                // dx ⊗ y lands in block (p−1, q)
                if p >= 1 && self.ranks[p - 1] > 0 {
                    let row0 = block_offset(r - 1, p - 1);
                    let dx = self.diff(p);
                    for i in 0..self.ranks[p - 1] {
                        for j in 0..rp {
                            let e = dx.entry(i, j).embed(vars, 0);
                            if e.is_zero() {
                                continue;
                            }
                            for t in 0..rq {
                                *d.entry_mut(row0 + i * rq + t, col0 + j * rq + t) = e.clone();
                            }
                        }
                    }
                }
                // (−1)^p x ⊗ dy lands in block (p, q−1)
                if q >= 1 && other.ranks[q - 1] > 0 {
                    let row0 = block_offset(r - 1, p);
                    let dy = other.diff(q);
                    let rq1 = other.ranks[q - 1];
                    for i in 0..rq1 {
                        for j in 0..rq {
                            let mut e = dy.entry(i, j).embed(vars, 0);
                            if e.is_zero() {
                                continue;
                            }
                            if p % 2 == 1 {
                                e = e.neg();
                            }
                            for s in 0..rp {
                                *d.entry_mut(row0 + s * rq1 + i, col0 + s * rq + j) = e.clone();
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        FreeChainComplex::new(ranks, diffs)
    }
}

/// Duality data for a complex of top degree `m`: `phi0[r]` is the map
/// `C^r → C_{m−r}` and `phi1[r-1]` is `C^r → C_{m−r+1}` for `r ≥ 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymmetricStructure {
    pub phi0: Vec<RingMatrix>,
    pub phi1: Vec<RingMatrix>,
}

impl SymmetricStructure {
    /// `phi0` block on `C^r`.
    pub fn phi0_at(&self, r: usize) -> &RingMatrix {
        &self.phi0[r]
    }

    /// `phi1` block on `C^r`, `r ≥ 1`.
    pub fn phi1_at(&self, r: usize) -> &RingMatrix {
        &self.phi1[r - 1]
    }

    /// True when every `phi0` block is unimodular, i.e. duality is an
    /// isomorphism of complexes degreewise.
    pub fn duality_is_iso(&self) -> Result<bool> {
        for block in &self.phi0 {
            if !block.is_square() || !block.is_unimodular()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The circle: `C_1 → C_0` with `d = 1 − z`, `φ0 = (1, z)`, `φ1 = −1`,
/// over `Z[z^{±1}]`.
pub fn build_circle() -> (FreeChainComplex, SymmetricStructure) {
    let vars = 1;
    let one = LaurentPoly::one(vars);
    let z = LaurentPoly::var(vars, 0);
    let d = RingMatrix::new(1, 1, vars, vec![one.checked_sub(&z).unwrap()]).unwrap();
    let complex = FreeChainComplex::new(vec![1, 1], vec![d]).unwrap();
    let phi0 = vec![
        RingMatrix::new(1, 1, vars, vec![one.clone()]).unwrap(), // C^0 → C_1
        RingMatrix::new(1, 1, vars, vec![z]).unwrap(),           // C^1 → C_0
    ];
    let phi1 = vec![
        RingMatrix::new(1, 1, vars, vec![one.neg()]).unwrap(), // C^1 → C_1
    ];
    (complex, SymmetricStructure { phi0, phi1 })
}

/// The two-torus: ranks `(1, 2, 1)` over `Z[z1^{±1}, z2^{±1}]` with the
/// duality data that makes `φ0` a chain isomorphism.
pub fn build_t2() -> (FreeChainComplex, SymmetricStructure) {
    let vars = 2;
    let one = LaurentPoly::one(vars);
    let z1 = LaurentPoly::var(vars, 0);
    let z2 = LaurentPoly::var(vars, 1);
    let z2inv = LaurentPoly::monomial(vars, &[0, -1], 1);
    let a = one.checked_sub(&z1).unwrap(); // 1 − z1
    let b = one.checked_sub(&z2inv).unwrap(); // 1 − z2^{−1}

    let d2 = RingMatrix::new(2, 1, vars, vec![a.clone(), b.clone()]).unwrap();
    let d1 = RingMatrix::new(1, 2, vars, vec![b.neg(), a]).unwrap();
    let complex = FreeChainComplex::new(vec![1, 2, 1], vec![d1, d2]).unwrap();

    let phi0 = vec![
        // C^0 → C_2
        RingMatrix::new(1, 1, vars, vec![one.clone()]).unwrap(),
        // C^1 → C_1
        RingMatrix::new(
            2,
            2,
            vars,
            vec![
                LaurentPoly::zero(vars),
                z1.neg(),
                z2inv.clone(),
                LaurentPoly::zero(vars),
            ],
        )
        .unwrap(),
        // C^2 → C_0
        RingMatrix::new(1, 1, vars, vec![z1.checked_mul(&z2inv).unwrap().neg()]).unwrap(),
    ];
    let phi1 = vec![
        // C^1 → C_2
        RingMatrix::new(1, 2, vars, vec![one, z2.neg()]).unwrap(),
        // C^2 → C_1
        RingMatrix::new(2, 1, vars, vec![z1.neg(), LaurentPoly::one(vars)]).unwrap(),
    ];
    (complex, SymmetricStructure { phi0, phi1 })
}

/// Extracts the middle-dimensional almost symmetric form `(C^n,
/// φ0 + d φ1)` when duality is an isomorphism in every degree.
///
/// Composition convention: both `φ0` on `C^n` and `φ1` on `C^n`
/// composed with `d_{n+1}: C_{n+1} → C_n` land in `C_n` (for `φ1` this
/// requires `C_{n+1}` to exist; a complex concentrated in degree `n`
/// contributes `φ0` alone). This convention reproduces the printed
/// two-torus form.
pub fn instant_form_iso(
    complex: &FreeChainComplex,
    structure: &SymmetricStructure,
    n: usize,
) -> Result<AlmostSymmetricForm> {
    for (r, block) in structure.phi0.iter().enumerate() {
        if !block.is_square() || !block.is_unimodular()? {
            return Err(Error::DualityNotIso(r));
        }
    }
    let m = complex.top_degree();
    if n > m {
        return Err(Error::InvalidInput(format!(
            "half-dimension {} exceeds top degree {}",
            n, m
        )));
    }
    let mut alpha = structure.phi0_at(n).clone();
    if n + 1 <= m {
        let correction = complex.diff(n + 1).mat_mul(structure.phi1_at(n))?;
        alpha = alpha.checked_add(&correction)?;
    }
    let form = AlmostSymmetricForm::new(alpha, (n % 2) as u8)?;
    form.nilpotency_check()?;
    Ok(form)
}

/// Binomial coefficient, exactly.
pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..r.min(n - r) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The chain complex of the `2n`-torus as an `2n`-fold tensor power of
/// the circle complex; ranks are binomial coefficients.
pub fn build_torus_complex(dims: usize) -> Result<FreeChainComplex> {
    if dims == 0 {
        return Ok(FreeChainComplex::concentrated(1, 0, 0));
    }
    let circles: Vec<FreeChainComplex> = (0..dims)
        .map(|i| {
            let (c, _) = build_circle();
            // re-embed the lone variable to position i in the joint ring
            let ranks = c.ranks().to_vec();
            let diffs = vec![c.diff(1).embed(dims, i)];
            FreeChainComplex::new(ranks, diffs).unwrap()
        })
        .collect();
    let mut acc = circles[0].clone();
    for c in &circles[1..] {
        acc = acc.tensor(c)?;
    }
    Ok(acc)
}
