//! The certificate suite behind `verify` and `selftest`: each check
//! reconstructs one of the library's headline identities from scratch
//! and reports pass/fail with timing.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::{binomial, build_t2, build_torus_complex, instant_form_iso};
use crate::controlled::{control_realize, forget_control, roundtrip_permutation, TorusPoint};
use crate::error::Result;
use crate::fixtures::Fixtures;
use crate::forms::{
    make_alpha, make_e8, make_psi0, make_psi_n, make_psi_n_limited, signature,
    witness_sublagrangian_check, AlmostSymmetricForm, QuadraticForm,
};
use crate::matrix::RingMatrix;
use crate::transfer::{transfer_matrix, Cover};

/// Result of one named certificate check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub millis: u128,
}

fn run(
    name: &'static str,
    description: &'static str,
    f: impl FnOnce() -> Result<bool>,
) -> CheckReport {
    let start = std::time::Instant::now();
    let passed = f().unwrap_or(false);
    CheckReport {
        name,
        description,
        passed,
        millis: start.elapsed().as_millis(),
    }
}

pub fn check_symmetrize_e8(fix: &Fixtures) -> CheckReport {
    run(
        "symmetrize-e8",
        "symmetrization of the seed form equals the E8 matrix",
        || Ok(make_psi0().symmetrize() == fix.e8 && make_psi0().psi == fix.psi0),
    )
}

pub fn check_signature_e8() -> CheckReport {
    run("signature-e8", "signature of E8 is 8", || {
        Ok(signature(&make_e8())? == 8)
    })
}

pub fn check_nilpotent_alpha(fix: &Fixtures) -> CheckReport {
    run(
        "nilpotent-alpha",
        "torus factor form: determinant 1, symmetry defect squares to zero",
        || {
            let a = make_alpha(1, 1)?;
            let det_ok = a.alpha.bareiss_det()?.is_one();
            let beta = a.defect()?;
            Ok(det_ok
                && beta == fix.beta_t2
                && !beta.is_zero()
                && a.nilpotency_check()? == 2)
        },
    )
}

pub fn check_instant_t2() -> CheckReport {
    run(
        "instant-t2",
        "middle-dimensional form of the two-torus complex equals the torus factor form",
        || {
            let (c, s) = build_t2();
            let form = instant_form_iso(&c, &s, 1)?;
            Ok(form.alpha == make_alpha(1, 1)?.alpha)
        },
    )
}

pub fn check_psi_n_construction() -> CheckReport {
    run(
        "psi-n-construction",
        "product form has dimension 2^(n+3) and equals the iterated Kronecker product",
        || {
            for n in 1..=3usize {
                let f = make_psi_n(n)?;
                if f.dim() != 1usize << (n + 3) {
                    return Ok(false);
                }
                let mut iter = QuadraticForm::new(make_psi0().psi.embed(2 * n, 0), 0)?;
                for i in 1..=n {
                    iter = iter.quad_almost_product(&make_alpha(i, n)?)?;
                }
                if iter != f {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    )
}

pub fn check_unimodular_lambda(n: usize) -> CheckReport {
    let (name, description) = if n <= 1 {
        (
            "unimodular-lambda",
            "symmetrization of the n=1 product form has unit determinant",
        )
    } else {
        (
            "unimodular-lambda-expensive",
            "symmetrization of the n=2 product form has unit determinant",
        )
    };
    run(name, description, move || {
        let f = make_psi_n_limited(n, 4)?;
        let lambda = f.symmetrize();
        let det = lambda.bareiss_det()?;
        if det.is_unit().is_none() {
            return Ok(false);
        }
        // cross-check: the augmented integer matrix has determinant ±1
        let aug = lambda.augment();
        let dim = lambda.rows();
        let entries: Vec<_> = aug
            .into_iter()
            .flatten()
            .map(|c| crate::ring::LaurentPoly::constant(0, c))
            .collect();
        let m = RingMatrix::new(dim, dim, 0, entries)?;
        let d = m.bareiss_det()?;
        Ok(d.is_one() || d.neg().is_one())
    })
}

pub fn check_transfer_example(fix: &Fixtures) -> CheckReport {
    run(
        "transfer-example",
        "double-cover transfer of the torus factor form matches the recorded matrix and witnesses",
        || {
            let alpha = AlmostSymmetricForm::new(fix.alpha.clone(), 1)?;
            let cover = Cover::new(vec![2, 1])?;
            let transferred = transfer_matrix(&alpha.alpha, &cover)?;
            let aligned = transferred.permute_symmetric(&fix.transfer_basis_permutation)?;
            if aligned != fix.transfer_alpha {
                return Ok(false);
            }
            let tform = AlmostSymmetricForm::new(fix.transfer_alpha.clone(), 1)?;
            if tform.nilpotency_check()? == 0 {
                return Ok(false);
            }
            let report = witness_sublagrangian_check(
                &tform,
                &fix.witness_i,
                &fix.witness_i_columns,
                &fix.witness_j,
                &fix.cowitness_u,
                &fix.expected_reduction,
            )?;
            Ok(report.ok())
        },
    )
}

pub fn check_roundtrip_control() -> CheckReport {
    run(
        "roundtrip-control",
        "forgetting control of the realized n=1 form reproduces its transfer to the 8-fold cover",
        || {
            let psi = make_psi_n(1)?.psi;
            let k = 8u64;
            let g = control_realize(&psi, 1, k, &TorusPoint::origin(2))?;
            let delta_sq = BigRational::new(BigInt::from(1), BigInt::from(16));
            let back = forget_control(&g, &delta_sq)?;
            let t = transfer_matrix(&psi, &Cover::diagonal(k, 2))?;
            let perm = roundtrip_permutation(k, 2, psi.rows());
            Ok(back.permute_symmetric(&perm)? == t)
        },
    )
}

pub fn check_radius_bound() -> CheckReport {
    run(
        "radius-bound",
        "realization radius stays within the lattice-offset bound",
        || {
            let psi = make_psi_n(1)?.psi;
            let g = control_realize(&psi, 1, 8, &TorusPoint::origin(2))?;
            let bound = BigRational::new(BigInt::from(2), BigInt::from(64));
            Ok(g.radius_sq()? <= bound)
        },
    )
}

pub fn check_rank_law() -> CheckReport {
    run(
        "rank",
        "torus chain complex ranks are binomial coefficients",
        || {
            for n in 1..=3usize {
                let c = build_torus_complex(2 * n)?;
                for r in 0..=2 * n {
                    if c.ranks()[r] != binomial(2 * n, r) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        },
    )
}

/// The default certificate suite, in report order.
pub fn selftest(fix: &Fixtures, expensive: bool) -> Vec<CheckReport> {
    let mut reports = vec![
        check_symmetrize_e8(fix),
        check_signature_e8(),
        check_nilpotent_alpha(fix),
        check_instant_t2(),
        check_psi_n_construction(),
        check_unimodular_lambda(1),
        check_transfer_example(fix),
        check_roundtrip_control(),
        check_radius_bound(),
        check_rank_law(),
    ];
    if expensive {
        reports.push(check_unimodular_lambda(2));
    }
    reports
}
