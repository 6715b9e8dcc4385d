//! Exact dense linear algebra over the Laurent ring: products,
//! conjugate-transpose, Kronecker products, a fraction-free determinant,
//! and adjugate inverses certified against the unit group of `Z[Z^k]`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RingContext};

/// Dense row-major matrix over `Z[z1^±1, …, zk^±1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    vars: usize,
    entries: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn new(rows: usize, cols: usize, vars: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.vars() != vars {
                return Err(Error::ContextMismatch(vars, e.vars()));
            }
        }
        Ok(RingMatrix {
            rows,
            cols,
            vars,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize, vars: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            vars,
            entries: vec![LaurentPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(n: usize, vars: usize) -> Self {
        let mut m = Self::zero(n, n, vars);
        for i in 0..n {
            *m.entry_mut(i, i) = LaurentPoly::one(vars);
        }
        m
    }

    /// Builds a matrix of integer constants.
    pub fn from_ints(rows_data: &[&[i64]], vars: usize) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in rows_data {
            assert_eq!(r.len(), cols, "ragged rows");
            for &c in *r {
                entries.push(LaurentPoly::constant(vars, c));
            }
        }
        RingMatrix {
            rows,
            cols,
            vars,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn context(&self) -> RingContext {
        RingContext::new(self.vars)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut LaurentPoly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.entry(i, j).is_one()
                    } else {
                        self.entry(i, j).is_zero()
                    }
                })
            })
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ContextMismatch(self.vars, other.vars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars,
            entries,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars,
            entries: self.entries.iter().map(LaurentPoly::neg).collect(),
        }
    }

    pub fn scale(&self, a: &LaurentPoly) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_mul(a))
            .collect::<Result<_>>()?;
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars,
            entries,
        })
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols, self.vars);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b)?;
                    let sum = out.entry(i, j).checked_add(&prod)?;
                    *out.entry_mut(i, j) = sum;
                }
            }
        }
        Ok(out)
    }

    /// `(A*)_{ij} = bar(A_{ji})`.
    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows, self.vars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(j, i) = self.entry(i, j).involute();
            }
        }
        out
    }

    /// Plain transpose without the bar involution.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows, self.vars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(j, i) = self.entry(i, j).clone();
            }
        }
        out
    }

    /// Block matrix `(A_{ij} B)`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(
            self.rows * other.rows,
            self.cols * other.cols,
            self.vars,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        let b = other.entry(r, c);
                        if b.is_zero() {
                            continue;
                        }
                        *out.entry_mut(i * other.rows + r, j * other.cols + c) =
                            a.checked_mul(b)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows, self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Fraction-free Bareiss elimination with row-swap pivoting; exact
    /// over any integral domain, so in particular over the Laurent ring.
    pub fn bareiss_det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.vars));
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<LaurentPoly>, r: usize, c: usize| m[r * n + c].clone();
        let mut sign = 1i64;
        let mut prev = LaurentPoly::one(self.vars);
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !at(&m, r, k).is_zero());
                match swap {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return Ok(LaurentPoly::zero(self.vars)),
                }
            }
            let pivot = at(&m, k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = pivot
                        .checked_mul(&at(&m, i, j))?
                        .checked_sub(&at(&m, i, k).checked_mul(&at(&m, k, j))?)?;
                    m[i * n + j] = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact over a domain");
                }
                m[i * n + k] = LaurentPoly::zero(self.vars);
            }
            prev = pivot;
        }
        let det = at(&m, n - 1, n - 1);
        Ok(if sign < 0 { det.neg() } else { det })
    }

    /// Naive cofactor-expansion determinant; quadratic blowup, used as an
    /// independent oracle for small matrices.
    pub fn cofactor_det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("cofactor det".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.vars));
        }
        if n == 1 {
            return Ok(self.entry(0, 0).clone());
        }
        let mut det = LaurentPoly::zero(self.vars);
        for j in 0..n {
            let a = self.entry(0, j);
            if a.is_zero() {
                continue;
            }
            let mut minor = Self::zero(n - 1, n - 1, self.vars);
            for r in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    *minor.entry_mut(r - 1, cc) = self.entry(r, c).clone();
                    cc += 1;
                }
            }
            let term = a.checked_mul(&minor.cofactor_det()?)?;
            det = if j % 2 == 0 {
                det.checked_add(&term)?
            } else {
                det.checked_sub(&term)?
            };
        }
        Ok(det)
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.bareiss_det()?.is_unit().is_some())
    }

    /// `A^{-1} = det(A)^{-1} · adjugate(A)`, defined when `det(A)` is a
    /// unit `±z^i`. The result is certified by multiplying back to the
    /// identity on both sides.
    pub fn adjugate_inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let det = self.bareiss_det()?;
        let (sign, e) = det
            .is_unit()
            .ok_or_else(|| Error::NotInvertible(det.to_string()))?;
        let n = self.rows;
        let mut adj = Self::zero(n, n, self.vars);
        for i in 0..n {
            for j in 0..n {
                // adjugate entry (j,i) = (-1)^{i+j} det(minor_{ij})
                let mut minor = Self::zero(n.saturating_sub(1), n.saturating_sub(1), self.vars);
                let mut rr = 0;
                for r in 0..n {
                    if r == i {
                        continue;
                    }
                    let mut cc = 0;
                    for c in 0..n {
                        if c == j {
                            continue;
                        }
                        *minor.entry_mut(rr, cc) = self.entry(r, c).clone();
                        cc += 1;
                    }
                    rr += 1;
                }
                let mut cof = minor.bareiss_det()?;
                if (i + j) % 2 == 1 {
                    cof = cof.neg();
                }
                *adj.entry_mut(j, i) = cof;
            }
        }
        let inv_unit = LaurentPoly::monomial(
            self.vars,
            &e.neg().0,
            BigInt::from(sign as i64),
        );
        let inv = adj.scale(&inv_unit)?;
        let left = self.mat_mul(&inv)?;
        let right = inv.mat_mul(self)?;
        if !left.is_identity() || !right.is_identity() {
            return Err(Error::NotInvertible(format!(
                "adjugate certification failed for det {}",
                det
            )));
        }
        Ok(inv)
    }

    /// Applies the augmentation entrywise, producing an integer matrix.
    pub fn augment(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).augment()).collect())
            .collect()
    }

    /// Re-embeds every entry into a larger ring; `z_i ↦ z_{i+offset}`.
    pub fn embed(&self, new_vars: usize, offset: usize) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: new_vars,
            entries: self
                .entries
                .iter()
                .map(|e| e.embed(new_vars, offset))
                .collect(),
        }
    }

    /// Conjugate by the permutation `p`: `(P A P^T)` where `P` has a 1
    /// in row `i`, column `p[i]`; i.e. out(i,j) = in(p[i], p[j]).
    pub fn permute_symmetric(&self, p: &[usize]) -> Result<Self> {
        if !self.is_square() || p.len() != self.rows {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut out = Self::zero(self.rows, self.cols, self.vars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(i, j) = self.entry(p[i], p[j]).clone();
            }
        }
        Ok(out)
    }

    /// Max order over nonzero entries; 0 for the
    /// zero matrix.
    pub fn sup_order(&self) -> u64 {
        self.entries
            .iter()
            .filter(|e| !e.is_zero())
            .map(|e| e.order().unwrap())
            .max()
            .unwrap_or(0)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            s.push_str(&format!("[ {} ]\n", row.join(", ")));
        }
        s
    }
}

// Matrix JSON schema: {"rows", "cols", "k", "entries": [[poly…]…]} row-major.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    k: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl Serialize for RingMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            k: self.vars,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(repr.rows * repr.cols);
        if repr.entries.len() != repr.rows {
            return Err(D::Error::custom("row count mismatch"));
        }
        for row in repr.entries {
            if row.len() != repr.cols {
                return Err(D::Error::custom("column count mismatch"));
            }
            entries.extend(row);
        }
        RingMatrix::new(repr.rows, repr.cols, repr.k, entries)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Rank of the lexicographic coset `g` with `0 ≤ g_i < k_i`.
pub fn lex_rank(g: &[u64], k: &[u64]) -> usize {
    let mut r = 0usize;
    for (gi, ki) in g.iter().zip(k) {
        r = r * (*ki as usize) + *gi as usize;
    }
    r
}

/// Enumerates `(Z/k_1) × … × (Z/k_m)` in lexicographic order.
pub fn lex_cosets(k: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &ki in k {
        let mut next = Vec::with_capacity(out.len() * ki as usize);
        for prefix in &out {
            for g in 0..ki {
                let mut v = prefix.clone();
                v.push(g);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
