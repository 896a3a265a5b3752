//! One checkable predicate per inequality. Every checker verifies its
//! hypotheses from the witness alone, computes both sides, and reports a
//! signed residual: lambda_min(RHS - LHS) for Loewner claims, bound minus
//! value for norm claims. Hypothesis misses and sample-quality failures
//! (ill-conditioned eigenbasis, singular Hadamard product) are reported as
//! filtered outcomes, never as crashes.

use crate::error::{Error, Result};
use crate::functions::{
    apply_hermitian_function, apply_principal, kantorovich, mean_between, operator_mean,
    principal_power, MeanDescriptor, ScalarFunctionDescriptor,
};
use crate::maps::PositiveMapDescriptor;
use crate::matrix::{
    canonical_isometry, ComplexMatrix, HermitianMatrix, NormKind, TolerancePolicy,
};
use crate::sector::{in_sector, sector_angle};
use crate::witness::Witness;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Stable theorem identifiers accepted by [`evaluate`] and the CLI.
pub const THEOREM_IDS: &[&str] = &[
    "le17", "chan301", "t0_303", "p1_321", "t1_308", "e305", "jc_L1", "jc_p1", "remark", "e62",
    "e24", "e39", "t4", "m1", "e25", "thmK", "e41", "e41_0", "t2", "t3v1", "t3v2", "negctl",
];

/// Per-instance verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub theorem_id: String,
    pub hypotheses_ok: bool,
    /// Signed residual; `None` when the instance was filtered.
    pub residual: Option<f64>,
    pub pass: bool,
    pub witness: Witness,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
    /// Short machine-readable reason when hypotheses_ok is false.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter_reason: Option<String>,
}

impl CheckOutcome {
    fn filtered(id: &str, witness: &Witness, reason: &str) -> Self {
        Self {
            theorem_id: id.into(),
            hypotheses_ok: false,
            residual: None,
            pass: false,
            witness: witness.clone(),
            notes: vec![format!("filtered: {reason}")],
            extra: BTreeMap::new(),
            filter_reason: Some(reason.into()),
        }
    }

    fn checked(id: &str, witness: &Witness, residual: f64, pass: bool) -> Self {
        Self {
            theorem_id: id.into(),
            hypotheses_ok: true,
            residual: Some(residual),
            pass,
            witness: witness.clone(),
            notes: Vec::new(),
            extra: BTreeMap::new(),
            filter_reason: None,
        }
    }

    fn note(mut self, s: String) -> Self {
        self.notes.push(s);
        self
    }

    fn with_extra(mut self, key: &str, value: f64) -> Self {
        if value.is_finite() {
            self.extra.insert(key.into(), value);
        }
        self
    }
}

/// Errors that mean "this sample does not qualify", not "the artifact is
/// broken".
fn soft_reason(e: &Error) -> Option<String> {
    match e {
        Error::IllConditioned(_, _) => Some("ill-conditioned".into()),
        Error::Singular => Some("singular-product".into()),
        Error::NotAccretive(_) => Some("not-accretive".into()),
        Error::NotPositiveDefinite(_) => Some("not-positive-definite".into()),
        Error::BranchCut(_) => Some("branch-cut".into()),
        Error::ConvergenceFailure => Some("eig-no-convergence".into()),
        _ => None,
    }
}

macro_rules! soft {
    ($id:expr, $w:expr, $expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => match soft_reason(&e) {
                Some(reason) => return Ok(CheckOutcome::filtered($id, $w, &reason)),
                None => return Err(e),
            },
        }
    };
}

/// residual = lambda_min(rhs - lhs); pass iff residual >= -tol at the
/// instance scale.
fn order_residual(lhs: &HermitianMatrix, rhs: &HermitianMatrix, tol: &TolerancePolicy) -> Result<(f64, bool)> {
    let residual = rhs.sub(lhs)?.lambda_min()?;
    let scale = lhs.spectral_norm().max(rhs.spectral_norm());
    Ok((residual, residual >= -tol.at_scale(scale)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HadamardSign {
    Nonneg,
    Nonpos,
    Indefinite,
}

/// Classify the Loewner sign of a Hermitian matrix (typically Im A o Im B).
/// The zero matrix counts as nonneg; checkers that need the nonpositive side
/// compare against `Indefinite` only through [`sign_nonpos`].
fn classify_sign(h: &HermitianMatrix) -> Result<HadamardSign> {
    let slack = 1e-9 * (1.0 + h.spectral_norm());
    let lmin = h.lambda_min()?;
    let lmax = h.lambda_max()?;
    Ok(if lmin >= -slack {
        HadamardSign::Nonneg
    } else if lmax <= slack {
        HadamardSign::Nonpos
    } else {
        HadamardSign::Indefinite
    })
}

fn sign_nonpos(h: &HermitianMatrix) -> Result<bool> {
    let slack = 1e-9 * (1.0 + h.spectral_norm());
    Ok(h.lambda_max()? <= slack)
}

/// Largest certified sector angle over the inputs; the sec(theta) constants
/// of every sector theorem use a common sector, so the max is the valid bound.
fn common_angle(inputs: &[&ComplexMatrix]) -> Result<f64> {
    let mut theta: f64 = 0.0;
    for a in inputs {
        theta = theta.max(sector_angle(a)?);
    }
    Ok(theta)
}

fn sec2(theta: f64) -> f64 {
    1.0 / (theta.cos() * theta.cos())
}

fn re_part(a: &ComplexMatrix) -> Result<HermitianMatrix> {
    Ok(a.cartesian()?.0)
}

fn im_part(a: &ComplexMatrix) -> Result<HermitianMatrix> {
    Ok(a.cartesian()?.1)
}

fn hermitian_pd(w: &Witness, name: &str) -> Result<HermitianMatrix> {
    let h = HermitianMatrix::from_complex(&w.matrix(name)?)?;
    let lmin = h.lambda_min()?;
    if lmin <= 0.0 {
        return Err(Error::NotPositiveDefinite(lmin));
    }
    Ok(h)
}

/// Evaluate the predicate for `theorem_id` on a serialized witness.
pub fn evaluate(theorem_id: &str, w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    match theorem_id {
        "le17" => check_le17(w, tol),
        "chan301" => check_chan301(w, tol),
        "t0_303" => check_t0_303(w, tol),
        "p1_321" => check_convex_combination_power(w, tol, Product::Kronecker, "p1_321"),
        "t1_308" => check_convex_combination_power(w, tol, Product::Hadamard, "t1_308"),
        "e305" => check_e305(w, tol),
        "jc_L1" => check_joint_convexity(w, tol, Convexity::CongruenceInverse, "jc_L1"),
        "jc_p1" => check_joint_convexity(w, tol, Convexity::KroneckerPower, "jc_p1"),
        "remark" => check_remark(w, tol),
        "e62" => check_e62(w, tol),
        "e24" => check_e24(w, tol),
        "e39" => check_e39(w, tol),
        "t4" => check_t4(w, tol),
        "m1" => check_m1(w, tol),
        "e25" => check_e25(w, tol),
        "thmK" => check_thm_k(w, tol),
        "e41" => check_e41(w, tol),
        "e41_0" => check_e41_0(w, tol),
        "t2" => check_t2(w, tol),
        "t3v1" => check_t3(w, tol, 1),
        "t3v2" => check_t3(w, tol, 2),
        "negctl" => check_negative_control(w, tol),
        other => Err(Error::UnknownId(other.into())),
    }
}

/// If Im A o Im B >= 0 then Re(A o B) <= Re A o Re B; if <= 0 the order
/// reverses. Indefinite sign is a hypothesis miss.
fn check_le17(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "le17";
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    for (name, m) in [("A", &a), ("B", &b)] {
        let lmin = re_part(m)?.lambda_min()?;
        if lmin <= tol.abs_tol {
            return Ok(CheckOutcome::filtered(ID, w, &format!("{name}-not-accretive")));
        }
    }
    let (ra, ia) = a.cartesian()?;
    let (rb, ib) = b.cartesian()?;
    let had_im = ia.hadamard(&ib)?;
    let re_prod = HermitianMatrix::from_complex(&a.hadamard(&b)?)?;
    let re_had = ra.hadamard(&rb)?;
    // algebraic identity behind both branches: ReA o ReB - Re(A o B) = ImA o ImB
    let de_residual = re_had.sub(&re_prod)?.sub(&had_im)?.frobenius_norm();
    let (residual, pass, branch) = match classify_sign(&had_im)? {
        HadamardSign::Nonneg => {
            let (r, p) = order_residual(&re_prod, &re_had, tol)?;
            (r, p, "nonneg: Re(AoB) <= ReA o ReB")
        }
        HadamardSign::Nonpos => {
            let (r, p) = order_residual(&re_had, &re_prod, tol)?;
            (r, p, "nonpos: ReA o ReB <= Re(AoB)")
        }
        HadamardSign::Indefinite => {
            return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"))
        }
    };
    Ok(CheckOutcome::checked(ID, w, residual, pass)
        .note(format!("branch {branch}"))
        .with_extra("cartesian_identity_residual", de_residual))
}

/// (aA + bB)^r o (aC + bD)^s >= a (A^r o C^s) + b (B^r o D^s) for positive
/// definite inputs, r + s = 1, r, s > 0.
fn check_chan301(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "chan301";
    let (alpha, beta, r) = (w.scalar("alpha")?, w.scalar("beta")?, w.scalar("r")?);
    if !(alpha > 0.0 && beta > 0.0 && r > 0.0 && r < 1.0) {
        return Ok(CheckOutcome::filtered(ID, w, "bad-parameters"));
    }
    let s = 1.0 - r;
    let a = soft!(ID, w, hermitian_pd(w, "A"));
    let b = soft!(ID, w, hermitian_pd(w, "B"));
    let c = soft!(ID, w, hermitian_pd(w, "C"));
    let d = soft!(ID, w, hermitian_pd(w, "D"));
    let lhs = a
        .scale(alpha)
        .add(&b.scale(beta))?
        .power(r)?
        .hadamard(&c.scale(alpha).add(&d.scale(beta))?.power(s)?)?;
    let rhs = a
        .power(r)?
        .hadamard(&c.power(s)?)?
        .scale(alpha)
        .add(&b.power(r)?.hadamard(&d.power(s)?)?.scale(beta))?;
    let (residual, pass) = order_residual(&rhs, &lhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass))
}

/// Sector extension of chan301: Re(a(A^r o C^s) + b(B^r o D^s)) <=
/// sec^2(theta) (Re (aA+bB)^r o Re (aC+bD)^s), under nonnegative sign of the
/// imaginary Hadamard products of the computed powers.
fn check_t0_303(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "t0_303";
    let (alpha, beta, r) = (w.scalar("alpha")?, w.scalar("beta")?, w.scalar("r")?);
    if !(alpha > 0.0 && beta > 0.0 && r > 0.0 && r < 1.0) {
        return Ok(CheckOutcome::filtered(ID, w, "bad-parameters"));
    }
    let s = 1.0 - r;
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let c = w.matrix("C")?;
    let d = w.matrix("D")?;
    let theta = soft!(ID, w, common_angle(&[&a, &b, &c, &d]));
    let a_r = soft!(ID, w, principal_power(&a, r, tol));
    let b_r = soft!(ID, w, principal_power(&b, r, tol));
    let c_s = soft!(ID, w, principal_power(&c, s, tol));
    let d_s = soft!(ID, w, principal_power(&d, s, tol));
    for (x, y) in [(&a_r, &c_s), (&b_r, &d_s)] {
        let had = im_part(x)?.hadamard(&im_part(y)?)?;
        if classify_sign(&had)? != HadamardSign::Nonneg {
            return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"));
        }
    }
    let lhs = HermitianMatrix::from_complex(
        &a_r.hadamard(&c_s)?
            .scale_re(alpha)
            .add(&b_r.hadamard(&d_s)?.scale_re(beta))?,
    )?;
    let sum_ab = a.scale_re(alpha).add(&b.scale_re(beta))?;
    let sum_cd = c.scale_re(alpha).add(&d.scale_re(beta))?;
    let re_pow_ab = re_part(&soft!(ID, w, principal_power(&sum_ab, r, tol)))?;
    let re_pow_cd = re_part(&soft!(ID, w, principal_power(&sum_cd, s, tol)))?;
    let rhs = re_pow_ab.hadamard(&re_pow_cd)?.scale(sec2(theta));
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass).with_extra("theta", theta))
}

#[derive(Debug, Clone, Copy)]
enum Product {
    Kronecker,
    Hadamard,
}

/// Reversed convex-combination inequality for r in (-1,0) u (1,2):
/// (aA+bB)^r x (aC+bD)^{1-r} <= a (A^r x C^{1-r}) + b (B^r x D^{1-r}),
/// where x is the Kronecker (p1_321) or Hadamard (t1_308) product.
fn check_convex_combination_power(
    w: &Witness,
    tol: &TolerancePolicy,
    product: Product,
    id: &str,
) -> Result<CheckOutcome> {
    let (alpha, beta, r) = (w.scalar("alpha")?, w.scalar("beta")?, w.scalar("r")?);
    let r_ok = (-1.0 < r && r < 0.0) || (1.0 < r && r < 2.0);
    if !(alpha > 0.0 && beta > 0.0 && r_ok) {
        return Ok(CheckOutcome::filtered(id, w, "bad-parameters"));
    }
    let s = 1.0 - r;
    let a = soft!(id, w, hermitian_pd(w, "A"));
    let b = soft!(id, w, hermitian_pd(w, "B"));
    let c = soft!(id, w, hermitian_pd(w, "C"));
    let d = soft!(id, w, hermitian_pd(w, "D"));
    let combine = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<HermitianMatrix> {
        match product {
            Product::Kronecker => Ok(x.kronecker(y)),
            Product::Hadamard => x.hadamard(y),
        }
    };
    let lhs = combine(
        &a.scale(alpha).add(&b.scale(beta))?.power(r)?,
        &c.scale(alpha).add(&d.scale(beta))?.power(s)?,
    )?;
    let rhs = combine(&a.power(r)?, &c.power(s)?)?
        .scale(alpha)
        .add(&combine(&b.power(r)?, &d.power(s)?)?.scale(beta))?;
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(id, w, residual, pass))
}

/// Sector extension of t1_308 with reversed power range:
/// (Re(aA+bB))^r o (Re(aC+bD))^{1-r} <=
/// sec^2(theta) Re(a (A^r o C^{1-r}) + b (B^r o D^{1-r})).
fn check_e305(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e305";
    let (alpha, beta, r) = (w.scalar("alpha")?, w.scalar("beta")?, w.scalar("r")?);
    let r_ok = (-1.0 < r && r < 0.0) || (1.0 < r && r < 2.0);
    if !(alpha > 0.0 && beta > 0.0 && r_ok) {
        return Ok(CheckOutcome::filtered(ID, w, "bad-parameters"));
    }
    let s = 1.0 - r;
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let c = w.matrix("C")?;
    let d = w.matrix("D")?;
    let theta = soft!(ID, w, common_angle(&[&a, &b, &c, &d]));
    let a_r = soft!(ID, w, principal_power(&a, r, tol));
    let b_r = soft!(ID, w, principal_power(&b, r, tol));
    let c_s = soft!(ID, w, principal_power(&c, s, tol));
    let d_s = soft!(ID, w, principal_power(&d, s, tol));
    for (x, y) in [(&a_r, &c_s), (&b_r, &d_s)] {
        let had = im_part(x)?.hadamard(&im_part(y)?)?;
        if !sign_nonpos(&had)? {
            return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"));
        }
    }
    let lhs = re_part(&a.scale_re(alpha).add(&b.scale_re(beta))?)?
        .power(r)?
        .hadamard(&re_part(&c.scale_re(alpha).add(&d.scale_re(beta))?)?.power(s)?)?;
    let rhs = re_part(
        &a_r.hadamard(&c_s)?
            .scale_re(alpha)
            .add(&b_r.hadamard(&d_s)?.scale_re(beta))?,
    )?
    .scale(sec2(theta));
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass).with_extra("theta", theta))
}

#[derive(Debug, Clone, Copy)]
enum Convexity {
    /// F(A, B) = B A^{-1} B
    CongruenceInverse,
    /// F(A, B) = A^r (x) B^{1-r}
    KroneckerPower,
}

/// Midpoint joint convexity:
/// F((X1+X2)/2, (Y1+Y2)/2) <= (F(X1,Y1) + F(X2,Y2))/2.
fn check_joint_convexity(
    w: &Witness,
    tol: &TolerancePolicy,
    kind: Convexity,
    id: &str,
) -> Result<CheckOutcome> {
    let x1 = soft!(id, w, hermitian_pd(w, "X1"));
    let y1 = soft!(id, w, hermitian_pd(w, "Y1"));
    let x2 = soft!(id, w, hermitian_pd(w, "X2"));
    let y2 = soft!(id, w, hermitian_pd(w, "Y2"));
    let f = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<HermitianMatrix> {
        match kind {
            Convexity::CongruenceInverse => {
                let inv = a.inverse()?;
                HermitianMatrix::from_complex(
                    &b.to_complex().matmul(&inv.to_complex())?.matmul(&b.to_complex())?,
                )
            }
            Convexity::KroneckerPower => {
                let r = w.scalar("r")?;
                Ok(a.power(r)?.kronecker(&b.power(1.0 - r)?))
            }
        }
    };
    let lhs = f(&x1.add(&x2)?.scale(0.5), &y1.add(&y2)?.scale(0.5))?;
    let rhs = f(&x1, &y1)?.add(&f(&x2, &y2)?)?.scale(0.5);
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(id, w, residual, pass))
}

/// The fixed 2x2 counterexample: with the identity map, Re Phi(A) o Re
/// Phi(B) = I while Re(A o B) has spectrum {0, 4}; the two differ by a matrix
/// with spectrum {-1, 3}, so the naive exchange identity fails and the
/// difference is indefinite.
fn check_remark(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "remark";
    let (a, b) = remark_matrices();
    let ra = re_part(&a)?;
    let rb = re_part(&b)?;
    let lhs_had = ra.hadamard(&rb)?;
    let re_prod = HermitianMatrix::from_complex(&a.hadamard(&b)?)?;
    let diff = re_prod.sub(&lhs_had)?;
    let diff_eigs = diff.eigvals()?;
    let prod_eigs = re_prod.eigvals()?;
    let eq = |x: f64, y: f64| (x - y).abs() <= 1e-12;
    let had_is_identity = lhs_had.sub(&HermitianMatrix::identity(2))?.frobenius_norm() <= 1e-12;
    let spectra_ok = eq(prod_eigs[0], 0.0)
        && eq(prod_eigs[1], 4.0)
        && eq(diff_eigs[0], -1.0)
        && eq(diff_eigs[1], 3.0);
    let gap = diff.spectral_norm();
    let pass = had_is_identity && spectra_ok && gap > 0.5;
    let _ = tol;
    Ok(CheckOutcome::checked(ID, w, gap - 0.5, pass)
        .note(format!("Re(AoB) spectrum {{{:.6}, {:.6}}}", prod_eigs[0], prod_eigs[1]))
        .note(format!(
            "difference spectrum {{{:.6}, {:.6}}}: indefinite, neither order holds",
            diff_eigs[0], diff_eigs[1]
        ))
        .with_extra("difference_spectral_norm", gap))
}

/// The fixed pair of sector matrices from the 2x2 counterexample.
pub fn remark_matrices() -> (ComplexMatrix, ComplexMatrix) {
    use num_complex::Complex64 as C;
    let a = ComplexMatrix::from_rows(&[
        vec![C::new(1.0, -1.0), C::new(1.0, 1.0)],
        vec![C::new(-1.0, 1.0), C::new(1.0, 1.0)],
    ])
    .expect("fixed entries");
    let b = ComplexMatrix::from_rows(&[
        vec![C::new(1.0, 1.0), C::new(1.0, 1.0)],
        vec![C::new(-1.0, 1.0), C::new(1.0, -1.0)],
    ])
    .expect("fixed entries");
    (a, b)
}

/// Re Phi(A o B) >= Re(Phi A) o Re(Phi B) for Hadamard-multiplicative unital
/// Phi and Im A o Im B <= 0.
fn check_e62(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e62";
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let phi = PositiveMapDescriptor::parse(&w.token_or("map", "identity"), a.dim()?)?;
    if !phi.hadamard_multiplicative || !phi.unital {
        return Ok(CheckOutcome::filtered(ID, w, "map-not-hadamard-multiplicative"));
    }
    let had_im = im_part(&a)?.hadamard(&im_part(&b)?)?;
    if !sign_nonpos(&had_im)? {
        return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"));
    }
    let lhs = re_part(&phi.apply(&a.hadamard(&b)?)?)?;
    let rhs = re_part(&phi.apply(&a)?)?.hadamard(&re_part(&phi.apply(&b)?)?)?;
    let (residual, pass) = order_residual(&rhs, &lhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass))
}

/// f(Re A) <= Re f(A) <= sec^2(theta) f(Re A) for operator monotone
/// normalized f (catalog powers) and A in the sector of angle theta.
fn check_e24(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e24";
    let a = w.matrix("A")?;
    let f = ScalarFunctionDescriptor::parse(&w.token_or("function", "power:0.5"))?;
    if !f.flags.operator_monotone || !f.flags.normalized {
        return Ok(CheckOutcome::filtered(ID, w, "function-not-in-class-m"));
    }
    let theta = soft!(ID, w, common_angle(&[&a]));
    let fa = re_part(&soft!(ID, w, apply_principal(&a, &f.f, tol)))?;
    let f_re = soft!(ID, w, apply_hermitian_function(&re_part(&a)?, &f));
    let (lower, lower_ok) = order_residual(&f_re, &fa, tol)?;
    let (upper, upper_ok) = order_residual(&fa, &f_re.scale(sec2(theta)), tol)?;
    Ok(
        CheckOutcome::checked(ID, w, lower.min(upper), lower_ok && upper_ok)
            .with_extra("lower_residual", lower)
            .with_extra("upper_residual", upper)
            .with_extra("theta", theta),
    )
}

/// f(Phi(A o B)) >= Phi(f(A) o f(B)) for supermultiplicative operator
/// concave f, Hadamard-multiplicative unital Phi, positive definite A, B.
fn check_e39(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e39";
    let a = soft!(ID, w, hermitian_pd(w, "A"));
    let b = soft!(ID, w, hermitian_pd(w, "B"));
    let f = ScalarFunctionDescriptor::parse(&w.token_or("function", "power:0.5"))?;
    if !f.flags.supermultiplicative || !f.flags.operator_concave {
        return Ok(CheckOutcome::filtered(ID, w, "function-not-supermultiplicative-concave"));
    }
    let phi = PositiveMapDescriptor::parse(&w.token_or("map", "identity"), a.dim())?;
    if !phi.hadamard_multiplicative || !phi.unital {
        return Ok(CheckOutcome::filtered(ID, w, "map-not-hadamard-multiplicative"));
    }
    let image = soft!(
        ID,
        w,
        HermitianMatrix::from_complex(&phi.apply(&a.hadamard(&b)?.to_complex())?)
    );
    let lhs = soft!(ID, w, apply_hermitian_function(&image, &f));
    let fa = soft!(ID, w, apply_hermitian_function(&a, &f));
    let fb = soft!(ID, w, apply_hermitian_function(&b, &f));
    let rhs = HermitianMatrix::from_complex(&phi.apply(&fa.hadamard(&fb)?.to_complex())?)?;
    let (residual, pass) = order_residual(&rhs, &lhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass))
}

/// Sector extension of e39: Re(Phi f(A)) o Re(Phi f(B)) <=
/// sec^4(theta) Re f(Phi(A o B)).
fn check_t4(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "t4";
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let f = ScalarFunctionDescriptor::parse(&w.token_or("function", "power:0.5"))?;
    if !f.flags.supermultiplicative || !f.flags.operator_concave {
        return Ok(CheckOutcome::filtered(ID, w, "function-not-supermultiplicative-concave"));
    }
    let phi = PositiveMapDescriptor::parse(&w.token_or("map", "identity"), a.dim()?)?;
    if !phi.hadamard_multiplicative || !phi.unital {
        return Ok(CheckOutcome::filtered(ID, w, "map-not-hadamard-multiplicative"));
    }
    let had_im = im_part(&a)?.hadamard(&im_part(&b)?)?;
    if !sign_nonpos(&had_im)? {
        return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"));
    }
    let theta = soft!(ID, w, common_angle(&[&a, &b]));
    let fa = soft!(ID, w, apply_principal(&a, &f.f, tol));
    let fb = soft!(ID, w, apply_principal(&b, &f.f, tol));
    let lhs = re_part(&phi.apply(&fa)?)?.hadamard(&re_part(&phi.apply(&fb)?)?)?;
    let image = phi.apply(&a.hadamard(&b)?)?;
    if re_part(&image)?.lambda_min()? <= tol.abs_tol {
        return Ok(CheckOutcome::filtered(ID, w, "map-image-not-accretive"));
    }
    let f_image = soft!(ID, w, apply_principal(&image, &f.f, tol));
    let rhs = re_part(&f_image)?.scale(sec2(theta) * sec2(theta));
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass).with_extra("theta", theta))
}

fn mean_triple(w: &Witness) -> Result<(MeanDescriptor, MeanDescriptor, MeanDescriptor)> {
    Ok((
        MeanDescriptor::parse(&w.token_or("sigma", "arithmetic"))?,
        MeanDescriptor::parse(&w.token_or("sigma1", "geometric"))?,
        MeanDescriptor::parse(&w.token_or("sigma2", "geometric"))?,
    ))
}

struct MeanBoundData {
    theta: f64,
    x1: HermitianMatrix,
    x2: HermitianMatrix,
    m: f64,
    big_m: f64,
}

/// Shared hypothesis verification for m1 and thmK: mean betweenness, spectral
/// bounds on the Hermitian parts, and the two mapped mean images.
fn mean_bound_data(
    id: &str,
    w: &Witness,
    tol: &TolerancePolicy,
) -> Result<std::result::Result<MeanBoundData, CheckOutcome>> {
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let m = w.scalar("m")?;
    let big_m = w.scalar("M")?;
    let (sigma, sigma1, sigma2) = mean_triple(w)?;
    if !(mean_between(&sigma1, &sigma)? && mean_between(&sigma2, &sigma)?) {
        return Ok(Err(CheckOutcome::filtered(id, w, "means-not-between")));
    }
    let slack = 1e-9;
    for x in [&a, &b] {
        let re = re_part(x)?;
        let lo = re.lambda_min()?;
        let hi = re.lambda_max()?;
        if lo < m - slack || hi > big_m + slack {
            return Ok(Err(CheckOutcome::filtered(id, w, "re-bounds-miss")));
        }
    }
    let theta = match common_angle(&[&a, &b]) {
        Ok(t) => t,
        Err(e) => match soft_reason(&e) {
            Some(reason) => return Ok(Err(CheckOutcome::filtered(id, w, &reason))),
            None => return Err(e),
        },
    };
    let phi = PositiveMapDescriptor::parse(&w.token_or("map", "identity"), a.dim()?)?;
    if !phi.unital {
        return Ok(Err(CheckOutcome::filtered(id, w, "map-not-unital")));
    }
    let compute = |sig: &MeanDescriptor| -> Result<HermitianMatrix> {
        let mean = operator_mean(&a, &b, sig, tol)?;
        HermitianMatrix::from_complex(&phi.apply(&re_part(&mean)?.to_complex())?)
    };
    let x1 = match compute(&sigma1) {
        Ok(v) => v,
        Err(e) => match soft_reason(&e) {
            Some(reason) => return Ok(Err(CheckOutcome::filtered(id, w, &reason))),
            None => return Err(e),
        },
    };
    let x2 = match compute(&sigma2) {
        Ok(v) => v,
        Err(e) => match soft_reason(&e) {
            Some(reason) => return Ok(Err(CheckOutcome::filtered(id, w, &reason))),
            None => return Err(e),
        },
    };
    if x2.lambda_min()? <= tol.abs_tol {
        return Ok(Err(CheckOutcome::filtered(id, w, "mean-image-not-pd")));
    }
    Ok(Ok(MeanBoundData {
        theta,
        x1,
        x2,
        m,
        big_m,
    }))
}

/// cos^2(theta) Phi(Re(A s1 B)) + mM (Phi(Re(A s2 B)))^{-1} <= (M + m) I.
/// Both readings of the inverse-after-map term are computed; the primary
/// residual uses inverse-of-image, and any disagreement with image-of-inverse
/// is recorded in the notes.
fn check_m1(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "m1";
    let data = match mean_bound_data(ID, w, tol)? {
        Ok(d) => d,
        Err(out) => return Ok(out),
    };
    let n = data.x1.dim();
    let cos2 = data.theta.cos().powi(2);
    let bound = HermitianMatrix::identity(n).scale(data.m + data.big_m);
    let lhs = data
        .x1
        .scale(cos2)
        .add(&data.x2.inverse()?.scale(data.m * data.big_m))?;
    let (residual, pass) = order_residual(&lhs, &bound, tol)?;
    let mut out = CheckOutcome::checked(ID, w, residual, pass).with_extra("theta", data.theta);
    // alternate reading: map the inverse instead of inverting the image
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let (_, _, sigma2) = mean_triple(w)?;
    let phi = PositiveMapDescriptor::parse(&w.token_or("map", "identity"), a.dim()?)?;
    if let Ok(mean2) = operator_mean(&a, &b, &sigma2, tol) {
        let re2 = re_part(&mean2)?;
        if re2.lambda_min()? > tol.abs_tol {
            let mapped_inv = HermitianMatrix::from_complex(&phi.apply(&re2.inverse()?.to_complex())?)?;
            let alt_lhs = data
                .x1
                .scale(cos2)
                .add(&mapped_inv.scale(data.m * data.big_m))?;
            let (alt_residual, alt_pass) = order_residual(&alt_lhs, &bound, tol)?;
            out = out.with_extra("alt_reading_residual", alt_residual);
            if alt_pass != pass {
                out = out.note(format!(
                    "inverse-reading disagreement: inverse-of-image residual {residual:.3e}, image-of-inverse residual {alt_residual:.3e}"
                ));
            }
        }
    }
    Ok(out)
}

/// 2 ||A^{1/2} o B^{1/2}|| <= ||A^t o B^{1-t} + A^{1-t} o B^t|| <= ||A + B||
/// for every unitarily invariant norm in the catalog.
fn check_e25(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e25";
    let t = w.scalar("t")?;
    if !(0.0..=1.0).contains(&t) {
        return Ok(CheckOutcome::filtered(ID, w, "bad-parameters"));
    }
    let a = soft!(ID, w, hermitian_pd(w, "A"));
    let b = soft!(ID, w, hermitian_pd(w, "B"));
    let sqrt_had = a.power(0.5)?.hadamard(&b.power(0.5)?)?;
    let mid = a
        .power(t)?
        .hadamard(&b.power(1.0 - t)?)?
        .add(&a.power(1.0 - t)?.hadamard(&b.power(t)?)?)?;
    let sum = a.add(&b)?;
    let kinds: Vec<NormKind> = match w.tokens.get("norm") {
        Some(k) => vec![k.parse()?],
        None => vec![NormKind::Spectral, NormKind::Frobenius, NormKind::Trace],
    };
    let mut worst = f64::INFINITY;
    let mut pass = true;
    let mut out_extra: Vec<(String, f64)> = Vec::new();
    for kind in kinds {
        let low = 2.0 * sqrt_had.to_complex().norm(kind);
        let mid_n = mid.to_complex().norm(kind);
        let high = sum.to_complex().norm(kind);
        let scale = high.max(1.0);
        let left = mid_n - low;
        let right = high - mid_n;
        pass &= left >= -tol.at_scale(scale) && right >= -tol.at_scale(scale);
        worst = worst.min(left).min(right);
        out_extra.push((format!("left_{kind:?}").to_lowercase(), left));
        out_extra.push((format!("right_{kind:?}").to_lowercase(), right));
    }
    let mut out = CheckOutcome::checked(ID, w, worst, pass);
    for (k, v) in out_extra {
        out = out.with_extra(&k, v);
    }
    Ok(out)
}

/// ||(Phi Re(A s1 B))^{1/2} o (Phi Re(A s2 B))^{-1/2}|| <= K^{1/2} sec(theta)
/// with the Kantorovich constant K of the configured spectral bounds.
fn check_thm_k(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "thmK";
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let had_im = im_part(&a)?.hadamard(&im_part(&b)?)?;
    if !sign_nonpos(&had_im)? {
        return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"));
    }
    let data = match mean_bound_data(ID, w, tol)? {
        Ok(d) => d,
        Err(out) => return Ok(out),
    };
    if data.x1.lambda_min()? <= tol.abs_tol {
        return Ok(CheckOutcome::filtered(ID, w, "mean-image-not-pd"));
    }
    let value = data
        .x1
        .power(0.5)?
        .hadamard(&data.x2.power(-0.5)?)?
        .to_complex()
        .norm(NormKind::Spectral);
    let k = kantorovich(data.m, data.big_m)?;
    let bound = k.sqrt() / data.theta.cos();
    let residual = bound - value;
    let pass = residual >= -tol.at_scale(bound.max(1.0));
    Ok(CheckOutcome::checked(ID, w, residual, pass)
        .with_extra("theta", data.theta)
        .with_extra("kantorovich", k)
        .with_extra("value", value))
}

/// Extreme eigenvalues (min, max) of the Kronecker product of two Hermitian
/// PD matrices, from the pairwise eigenvalue products.
fn kron_extremes(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(f64, f64)> {
    let wa = a.eigvals()?;
    let wb = b.eigvals()?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in &wa {
        for y in &wb {
            lo = lo.min(x * y);
            hi = hi.max(x * y);
        }
    }
    Ok((lo, hi))
}

/// (A o B)^{-1} <= A^{-1} o B^{-1} <= ((l+u)^2 / 4lu) (A o B)^{-1} with l, u
/// the extreme eigenvalues of A (x) B.
fn check_e41(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e41";
    let a = soft!(ID, w, hermitian_pd(w, "A"));
    let b = soft!(ID, w, hermitian_pd(w, "B"));
    let prod = a.hadamard(&b)?;
    if prod.lambda_min()? <= tol.abs_tol {
        return Ok(CheckOutcome::filtered(ID, w, "singular-product"));
    }
    let prod_inv = prod.inverse()?;
    let inv_had = a.inverse()?.hadamard(&b.inverse()?)?;
    let (lo, hi) = kron_extremes(&a, &b)?;
    let factor = (hi + lo).powi(2) / (4.0 * hi * lo);
    let (left, left_ok) = order_residual(&prod_inv, &inv_had, tol)?;
    let (right, right_ok) = order_residual(&inv_had, &prod_inv.scale(factor), tol)?;
    Ok(
        CheckOutcome::checked(ID, w, left.min(right), left_ok && right_ok)
            .with_extra("left_residual", left)
            .with_extra("right_residual", right)
            .with_extra("factor", factor),
    )
}

/// Frame compression version: (X*AX)^{-1} <= X*A^{-1}X <=
/// ((l+u)^2/4lu)(X*AX)^{-1} for an isometry column frame X.
fn check_e41_0(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "e41_0";
    let a = soft!(ID, w, hermitian_pd(w, "A"));
    let x = w.matrix("X")?;
    let frame_resid = x
        .adjoint()
        .matmul(&x)?
        .sub(&ComplexMatrix::identity(x.ncols()))?
        .frobenius_norm();
    if frame_resid > 1e-10 {
        return Ok(CheckOutcome::filtered(ID, w, "frame-not-isometry"));
    }
    let compress = |m: &HermitianMatrix| -> Result<HermitianMatrix> {
        HermitianMatrix::from_complex(&x.adjoint().matmul(&m.to_complex())?.matmul(&x)?)
    };
    let xax = compress(&a)?;
    if xax.lambda_min()? <= tol.abs_tol {
        return Ok(CheckOutcome::filtered(ID, w, "singular-compression"));
    }
    let lhs = xax.inverse()?;
    let mid = compress(&a.inverse()?)?;
    let wa = a.eigvals()?;
    let (lo, hi) = (wa[0], wa[wa.len() - 1]);
    let factor = (hi + lo).powi(2) / (4.0 * hi * lo);
    let (left, left_ok) = order_residual(&lhs, &mid, tol)?;
    let (right, right_ok) = order_residual(&mid, &lhs.scale(factor), tol)?;
    Ok(
        CheckOutcome::checked(ID, w, left.min(right), left_ok && right_ok)
            .with_extra("left_residual", left)
            .with_extra("right_residual", right)
            .with_extra("factor", factor),
    )
}

/// cos^4(theta) Re((A o B)^{-1}) <= Re(A^{-1}) o Re(B^{-1}) under the
/// nonpositive imaginary sign condition.
fn check_t2(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "t2";
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let had_im = im_part(&a)?.hadamard(&im_part(&b)?)?;
    if !sign_nonpos(&had_im)? {
        return Ok(CheckOutcome::filtered(ID, w, "sign-condition-miss"));
    }
    let theta = soft!(ID, w, common_angle(&[&a, &b]));
    let prod = a.hadamard(&b)?;
    let prod_inv = soft!(ID, w, prod.inverse());
    let cos4 = theta.cos().powi(4);
    let lhs = re_part(&prod_inv)?.scale(cos4);
    let rhs = re_part(&soft!(ID, w, a.inverse()))?.hadamard(&re_part(&soft!(ID, w, b.inverse()))?)?;
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass).with_extra("theta", theta))
}

/// Reverse bound Re(A^{-1}) o Re(B^{-1}) <=
/// ((l+u)^2 sec^2(theta) / 4lu) Re((A o B)^{-1}), with the eigenvalue pair
/// taken from Re(A (x) B) (variant 1) or Re A (x) Re B (variant 2).
fn check_t3(w: &Witness, tol: &TolerancePolicy, variant: u8) -> Result<CheckOutcome> {
    let id = if variant == 1 { "t3v1" } else { "t3v2" };
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    let theta = soft!(id, w, common_angle(&[&a, &b]));
    let a_inv = soft!(id, w, a.inverse());
    let b_inv = soft!(id, w, b.inverse());
    let prod = a.hadamard(&b)?;
    let (lo, hi) = match variant {
        1 => {
            let had_inv_im = im_part(&a_inv)?.hadamard(&im_part(&b_inv)?)?;
            if !sign_nonpos(&had_inv_im)? {
                return Ok(CheckOutcome::filtered(id, w, "sign-condition-miss"));
            }
            if !in_sector(&prod, theta.max(1e-12), tol)?.in_sector {
                return Ok(CheckOutcome::filtered(id, w, "product-not-in-sector"));
            }
            let re_kron = HermitianMatrix::from_complex(&a.kronecker(&b))?;
            let eigs = re_kron.eigvals()?;
            let (lo, hi) = (eigs[0], eigs[eigs.len() - 1]);
            if lo <= tol.abs_tol {
                return Ok(CheckOutcome::filtered(id, w, "kron-re-not-pd"));
            }
            (lo, hi)
        }
        2 => {
            let had_im = im_part(&a)?.hadamard(&im_part(&b)?)?;
            if classify_sign(&had_im)? != HadamardSign::Nonneg {
                return Ok(CheckOutcome::filtered(id, w, "sign-condition-miss"));
            }
            let re_prod = re_part(&prod)?;
            if re_prod.lambda_min()? < -tol.abs_tol {
                return Ok(CheckOutcome::filtered(id, w, "product-re-not-psd"));
            }
            kron_extremes(&re_part(&a)?, &re_part(&b)?)?
        }
        _ => return Err(Error::InvalidArgument("t3 variant must be 1 or 2".into())),
    };
    let prod_inv = soft!(id, w, prod.inverse());
    let factor = (hi + lo).powi(2) * sec2(theta) / (4.0 * hi * lo);
    let lhs = re_part(&a_inv)?.hadamard(&re_part(&b_inv)?)?;
    let rhs = re_part(&prod_inv)?.scale(factor);
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(id, w, residual, pass)
        .with_extra("theta", theta)
        .with_extra("factor", factor))
}

/// Deliberately false claim used as the harness negative control:
/// "Re(A o B) <= Re A o Re B for all accretive A, B" (the sign hypothesis of
/// le17 is dropped). Random accretive pairs falsify it quickly.
fn check_negative_control(w: &Witness, tol: &TolerancePolicy) -> Result<CheckOutcome> {
    const ID: &str = "negctl";
    let a = w.matrix("A")?;
    let b = w.matrix("B")?;
    for (name, m) in [("A", &a), ("B", &b)] {
        let lmin = re_part(m)?.lambda_min()?;
        if lmin <= tol.abs_tol {
            return Ok(CheckOutcome::filtered(ID, w, &format!("{name}-not-accretive")));
        }
    }
    let lhs = HermitianMatrix::from_complex(&a.hadamard(&b)?)?;
    let rhs = re_part(&a)?.hadamard(&re_part(&b)?)?;
    let (residual, pass) = order_residual(&lhs, &rhs, tol)?;
    Ok(CheckOutcome::checked(ID, w, residual, pass))
}

/// Compression cross-check used by t1_308: the Hadamard-side difference
/// matrix equals V* (Kronecker-side difference) V on identical inputs.
pub fn compression_cross_check(w: &Witness, tol: &TolerancePolicy) -> Result<f64> {
    let (alpha, beta, r) = (w.scalar("alpha")?, w.scalar("beta")?, w.scalar("r")?);
    let s = 1.0 - r;
    let a = hermitian_pd(w, "A")?;
    let b = hermitian_pd(w, "B")?;
    let c = hermitian_pd(w, "C")?;
    let d = hermitian_pd(w, "D")?;
    let _ = tol;
    let diff_kron = a
        .power(r)?
        .kronecker(&c.power(s)?)
        .scale(alpha)
        .add(&b.power(r)?.kronecker(&d.power(s)?).scale(beta))?
        .sub(
            &a.scale(alpha)
                .add(&b.scale(beta))?
                .power(r)?
                .kronecker(&c.scale(alpha).add(&d.scale(beta))?.power(s)?),
        )?;
    let diff_had = a
        .power(r)?
        .hadamard(&c.power(s)?)?
        .scale(alpha)
        .add(&b.power(r)?.hadamard(&d.power(s)?)?.scale(beta))?
        .sub(
            &a.scale(alpha)
                .add(&b.scale(beta))?
                .power(r)?
                .hadamard(&c.scale(alpha).add(&d.scale(beta))?.power(s)?)?,
        )?;
    let v = canonical_isometry(a.dim());
    let compressed = v
        .adjoint()
        .matmul(&diff_kron.to_complex())?
        .matmul(&v)?;
    compressed.sub(&diff_had.to_complex()).map(|d| d.frobenius_norm())
}
