//! Geometric Z-modules over tori: realize a form over the Laurent ring
//! as a metrically controlled integer form on a finite covering torus,
//! measure its control radius, and forget control back to the ring.
//!
//! The covering torus is rescaled to unit size and all coordinates are
//! exact rationals; distances are compared as squared distances so no
//! square roots appear.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{lex_cosets, lex_rank, RingMatrix};
use crate::ring::MultiIndex;

/// A point of the unit torus with exact rational coordinates in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

impl TorusPoint {
    /// Normalizes every coordinate into `[0, 1)`.
    pub fn new(coords: Vec<BigRational>) -> Self {
        let coords = coords
            .into_iter()
            .map(|x| {
                let f = x.floor();
                x - f
            })
            .collect();
        TorusPoint { coords }
    }

    pub fn origin(dim: usize) -> Self {
        TorusPoint {
            coords: vec![BigRational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
}

/// Squared geodesic distance on the unit torus: per coordinate the
/// shortest of the three representatives `x − y − m`, `m ∈ {−1, 0, 1}`.
pub fn geodesic_distance_sq(x: &TorusPoint, y: &TorusPoint) -> Result<BigRational> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "torus points of dimension {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    let mut acc = BigRational::zero();
    for (a, b) in x.coords.iter().zip(&y.coords) {
        let d = a - b;
        let best = [-1i64, 0, 1]
            .iter()
            .map(|&m| {
                let s = &d - BigRational::from(BigInt::from(m));
                &s * &s
            })
            .min()
            .unwrap();
        acc += best;
    }
    Ok(acc)
}

/// A geometric Z-module over the torus carrying an integer pairing.
///
/// Basis labels are pairs `(g, i)` with `g ∈ (Z/k)^{2n}` a deck
/// transformation of the `k`-fold cover and `i` a module index; the
/// label order is module-major: index `= i · k^{2n} + lex_rank(g)`.
/// The label `(g, i)` sits at `(x0 + g)/k` on the unit torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeometricForm {
    k: u64,
    n2: usize,
    rank: usize,
    parity: u8,
    labels: Vec<(Vec<u64>, usize)>,
    locations: Vec<TorusPoint>,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl GeometricForm {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Rank of the underlying module over the ring (before realization).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[(Vec<u64>, usize)] {
        &self.labels
    }

    pub fn location(&self, label: usize) -> &TorusPoint {
        &self.locations[label]
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.entries
    }

    /// Largest squared distance between basis points paired nontrivially.
    pub fn radius_sq(&self) -> Result<BigRational> {
        let mut max = BigRational::zero();
        for &(a, b) in self.entries.keys() {
            let d = geodesic_distance_sq(&self.locations[a], &self.locations[b])?;
            if d > max {
                max = d;
            }
        }
        Ok(max)
    }
}

/// Realizes a square matrix over `Z[Z^{2n}]` as a geometric form on the
/// `k`-fold covering torus: the module is extended to the deck group
/// `(Z/k)^{2n}`, and the coefficient of `z^e` in entry `(i, j)` pairs
/// the label `(g, i)` with `((g + e) mod k, j)` for every `g`. The
/// bound `k > 2|ψ|` makes the exponent recoverable from the residue.
pub fn control_realize(
    psi: &RingMatrix,
    parity: u8,
    k: u64,
    x0: &TorusPoint,
) -> Result<GeometricForm> {
    if !psi.is_square() {
        return Err(Error::DimensionMismatch("realization needs a square matrix".into()));
    }
    let n2 = psi.vars();
    if x0.dim() != n2 {
        return Err(Error::DimensionMismatch(format!(
            "base point dimension {} vs {} ring variables",
            x0.dim(),
            n2
        )));
    }
    let bound = 2 * psi.sup_order();
    if k <= bound {
        return Err(Error::CoverTooSmall { k, bound });
    }
    let ks = vec![k; n2];
    let cosets = lex_cosets(&ks);
    let q = cosets.len();
    let r = psi.rows();

    let mut labels = Vec::with_capacity(r * q);
    let mut locations = Vec::with_capacity(r * q);
    let kq = BigRational::from(BigInt::from(k));
    for i in 0..r {
        for g in &cosets {
            labels.push((g.clone(), i));
            let coords = x0
                .coords()
                .iter()
                .zip(g)
                .map(|(x, &gi)| (x + BigRational::from(BigInt::from(gi))) / &kq)
                .collect();
            locations.push(TorusPoint::new(coords));
        }
    }

    let mut entries: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            for (e, c) in psi.entry(i, j).terms() {
                for g in &cosets {
                    let f: Vec<u64> = g
                        .iter()
                        .zip(&e.0)
                        .map(|(&gi, &et)| (gi as i64 + et).rem_euclid(k as i64) as u64)
                        .collect();
                    let row = i * q + lex_rank(g, &ks);
                    let col = j * q + lex_rank(&f, &ks);
                    let slot = entries.entry((row, col)).or_insert_with(BigInt::zero);
                    *slot += c;
                    if slot.is_zero() {
                        entries.remove(&(row, col));
                    }
                }
            }
        }
    }

    Ok(GeometricForm {
        k,
        n2,
        rank: r,
        parity,
        labels,
        locations,
        entries,
    })
}

/// Forgets control: every basis point becomes a generator over
/// `Z[Z^{2n}]`, and each geometric entry `c` between points `a, b`
/// becomes `c · z^v` for the unique lattice vector `v` with
/// `|loc(a) − loc(b) − v| < δ`. Requires `δ² < 1/4` (torus injectivity
/// radius) and every entry within radius `δ`.
pub fn forget_control(form: &GeometricForm, delta_sq: &BigRational) -> Result<RingMatrix> {
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    if delta_sq >= &quarter {
        return Err(Error::DeltaTooLarge(delta_sq.to_string()));
    }
    let radius = form.radius_sq()?;
    if &radius >= delta_sq {
        return Err(Error::RadiusExceedsDelta {
            radius: radius.to_string(),
            delta_sq: delta_sq.to_string(),
        });
    }
    let dim = form.num_labels();
    let mut out = RingMatrix::zero(dim, dim, form.n2);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for (&(a, b), c) in &form.entries {
        let xa = form.location(a);
        let xb = form.location(b);
        let mut v = Vec::with_capacity(form.n2);
        for (pa, pb) in xa.coords().iter().zip(xb.coords()) {
            let d = pa - pb; // in (−1, 1)
            let mag = d.abs();
            if mag == half {
                return Err(Error::AmbiguousLift(a, b));
            }
            let vt = if mag < half {
                0i64
            } else if d.is_positive() {
                1
            } else {
                -1
            };
            v.push(vt);
        }
        out.entry_mut(a, b).add_term(MultiIndex(v), c.clone());
    }
    Ok(out)
}

/// The identification under which forgetting control of a realization
/// reproduces the transfer to the diagonal cover exactly: transfer
/// index `i·q + lex_rank(s)` corresponds to the geometric label
/// `((k−1−s) mod k, i)`. Returns `perm` with `perm[transfer] = label`.
pub fn roundtrip_permutation(k: u64, n2: usize, rank: usize) -> Vec<usize> {
    let ks = vec![k; n2];
    let cosets = lex_cosets(&ks);
    let q = cosets.len();
    let mut perm = Vec::with_capacity(rank * q);
    for i in 0..rank {
        for s in &cosets {
            let reversed: Vec<u64> = s.iter().map(|&st| (k - 1 - st) % k).collect();
            perm.push(i * q + lex_rank(&reversed, &ks));
        }
    }
    perm
}

// Geometric-form JSON: {"k", "n2", "parity", "basis": [{"g", "i", "x":
// ["p/q"…]}…], "entries": [{"a", "b", "c"}…]}; basis in label order.
#[derive(Serialize, Deserialize)]
struct BasisRepr {
    g: Vec<u64>,
    i: usize,
    x: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    a: usize,
    b: usize,
    c: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct GeometricRepr {
    k: u64,
    n2: usize,
    parity: u8,
    basis: Vec<BasisRepr>,
    entries: Vec<EntryRepr>,
}

impl Serialize for GeometricForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let basis = self
            .labels
            .iter()
            .zip(&self.locations)
            .map(|((g, i), loc)| BasisRepr {
                g: g.clone(),
                i: *i,
                x: loc.coords().iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|(&(a, b), c)| EntryRepr {
                a,
                b,
                c: crate::ring::bigint_to_number(c),
            })
            .collect();
        GeometricRepr {
            k: self.k,
            n2: self.n2,
            parity: self.parity,
            basis,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeometricForm {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GeometricRepr::deserialize(deserializer)?;
        let mut labels = Vec::with_capacity(repr.basis.len());
        let mut locations = Vec::with_capacity(repr.basis.len());
        let mut rank = 0usize;
        for b in repr.basis {
            if b.g.len() != repr.n2 || b.x.len() != repr.n2 {
                return Err(D::Error::custom("label dimension mismatch"));
            }
            rank = rank.max(b.i + 1);
            let coords = b
                .x
                .iter()
                .map(|s| s.parse::<BigRational>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| D::Error::custom(format!("bad rational: {}", e)))?;
            labels.push((b.g, b.i));
            locations.push(TorusPoint::new(coords));
        }
        let mut entries = BTreeMap::new();
        for e in repr.entries {
            if e.a >= labels.len() || e.b >= labels.len() {
                return Err(D::Error::custom("entry index out of range"));
            }
            let c = crate::ring::number_to_bigint(&e.c)
                .ok_or_else(|| D::Error::custom("entry coefficient must be an integer"))?;
            if !c.is_zero() {
                entries.insert((e.a, e.b), c);
            }
        }
        Ok(GeometricForm {
            k: repr.k,
            n2: repr.n2,
            rank,
            parity: repr.parity,
            labels,
            locations,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LaurentPoly;
    use crate::transfer::{transfer_matrix, Cover};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn point(coords: &[(i64, i64)]) -> TorusPoint {
        TorusPoint::new(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn distances_wrap() {
        let o = point(&[(0, 1), (0, 1)]);
        assert_eq!(
            geodesic_distance_sq(&o, &point(&[(1, 2), (0, 1)])).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            geodesic_distance_sq(&o, &point(&[(3, 4), (0, 1)])).unwrap(),
            rat(1, 16)
        );
        assert!(geodesic_distance_sq(&o, &o).unwrap().is_zero());
    }

    fn one_minus_z1() -> RingMatrix {
        let one = LaurentPoly::one(2);
        let z1 = LaurentPoly::var(2, 0);
        RingMatrix::new(1, 1, 2, vec![one.checked_sub(&z1).unwrap()]).unwrap()
    }

    #[test]
    fn realize_small_form() {
        let psi = one_minus_z1();
        let g = control_realize(&psi, 0, 3, &TorusPoint::origin(2)).unwrap();
        assert_eq!(g.num_labels(), 9);
        // constant part: diagonal entries 1 at each deck label
        assert_eq!(g.entries().get(&(0, 0)), Some(&BigInt::from(1)));
        // z1 part: label (0,0) pairs with label (1,0), coefficient −1
        let col = lex_rank(&[1, 0], &[3, 3]);
        assert_eq!(g.entries().get(&(0, col)), Some(&BigInt::from(-1)));
        // entry count: k^2 per term
        assert_eq!(g.entries().len(), 18);
        assert_eq!(g.radius_sq().unwrap(), rat(1, 9));
    }

    #[test]
    fn constant_form_has_radius_zero() {
        let psi = RingMatrix::new(1, 1, 2, vec![LaurentPoly::constant(2, 7)]).unwrap();
        let g = control_realize(&psi, 0, 3, &TorusPoint::origin(2)).unwrap();
        assert!(g.radius_sq().unwrap().is_zero());
        let m = forget_control(&g, &rat(1, 16)).unwrap();
        for a in 0..9 {
            assert_eq!(m.entry(a, a), &LaurentPoly::constant(2, 7));
        }
    }

    #[test]
    fn cover_too_small_is_rejected() {
        let psi = one_minus_z1();
        assert!(matches!(
            control_realize(&psi, 0, 2, &TorusPoint::origin(2)),
            Err(Error::CoverTooSmall { k: 2, bound: 2 })
        ));
    }

    #[test]
    fn radius_scales_with_cover() {
        let psi = one_minus_z1();
        let g4 = control_realize(&psi, 0, 4, &TorusPoint::origin(2)).unwrap();
        let g8 = control_realize(&psi, 0, 8, &TorusPoint::origin(2)).unwrap();
        assert_eq!(g4.radius_sq().unwrap(), rat(1, 16));
        assert_eq!(g8.radius_sq().unwrap(), rat(1, 64));
    }

    #[test]
    fn forget_guards() {
        let psi = one_minus_z1();
        let g = control_realize(&psi, 0, 3, &TorusPoint::origin(2)).unwrap();
        assert!(matches!(
            forget_control(&g, &rat(1, 2)),
            Err(Error::DeltaTooLarge(_))
        ));
        assert!(matches!(
            forget_control(&g, &rat(1, 9)),
            Err(Error::RadiusExceedsDelta { .. })
        ));
    }

    #[test]
    fn roundtrip_small_form() {
        let psi = one_minus_z1();
        let k = 5u64;
        let g = control_realize(&psi, 0, k, &TorusPoint::origin(2)).unwrap();
        let back = forget_control(&g, &rat(1, 16)).unwrap();
        let t = transfer_matrix(&psi, &Cover::diagonal(k, 2)).unwrap();
        let perm = roundtrip_permutation(k, 2, 1);
        assert_eq!(back.permute_symmetric(&perm).unwrap(), t);
    }

    #[test]
    fn roundtrip_with_offset_base_point() {
        let psi = one_minus_z1();
        let k = 5u64;
        let x0 = point(&[(1, 3), (1, 7)]);
        let g = control_realize(&psi, 0, k, &x0).unwrap();
        let back = forget_control(&g, &rat(1, 16)).unwrap();
        let t = transfer_matrix(&psi, &Cover::diagonal(k, 2)).unwrap();
        let perm = roundtrip_permutation(k, 2, 1);
        assert_eq!(back.permute_symmetric(&perm).unwrap(), t);
    }

    #[test]
    fn json_roundtrip() {
        let psi = one_minus_z1();
        let g = control_realize(&psi, 1, 3, &TorusPoint::origin(2)).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: GeometricForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
