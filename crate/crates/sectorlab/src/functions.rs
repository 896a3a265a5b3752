//! Principal fractional powers of accretive matrices, the scalar-function
//! catalog (operator monotone / concave / supermultiplicative flags), and
//! Kubo-Ando operator means with adjoints.

use crate::error::{Error, Result};
use crate::matrix::{eig_general, ComplexMatrix, HermitianMatrix, TolerancePolicy};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Exponent range accepted by [`principal_power`].
pub const POWER_RANGE: (f64, f64) = (-1.0, 2.0);

/// Closed-form scalar functions on (0, inf), evaluable on real and complex
/// arguments (complex evaluation uses the principal branch).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ScalarFn {
    /// x^t
    Power(f64),
    /// (1 - w) + w x; the representing function of the weighted arithmetic mean.
    WeightedArithmetic(f64),
    /// 2x / (1 + x); the representing function of the harmonic mean.
    Harmonic,
    /// x / f(x); the representing function of the adjoint mean.
    Adjoint(Box<ScalarFn>),
}

fn principal_pow(z: Complex64, t: f64) -> Result<Complex64> {
    if z.re <= 0.0 && z.im.abs() <= 1e-14 * z.norm().max(1.0) {
        return Err(Error::BranchCut(z));
    }
    Ok(z.powf(t))
}

impl ScalarFn {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ScalarFn::Power(t) => x.powf(*t),
            ScalarFn::WeightedArithmetic(w) => (1.0 - w) + w * x,
            ScalarFn::Harmonic => 2.0 * x / (1.0 + x),
            ScalarFn::Adjoint(f) => x / f.eval(x),
        }
    }

    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ScalarFn::Power(t) => principal_pow(z, *t),
            ScalarFn::WeightedArithmetic(w) => Ok(Complex64::new(1.0 - w, 0.0) + z * *w),
            ScalarFn::Harmonic => {
                let denom = z + 1.0;
                if denom.norm() < 1e-14 {
                    return Err(Error::BranchCut(z));
                }
                Ok(z * 2.0 / denom)
            }
            ScalarFn::Adjoint(f) => {
                let fz = f.eval_complex(z)?;
                if fz.norm() < 1e-14 {
                    return Err(Error::BranchCut(z));
                }
                Ok(z / fz)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFlags {
    pub operator_monotone: bool,
    pub operator_concave: bool,
    pub supermultiplicative: bool,
    pub normalized: bool,
}

/// A named scalar function with capability flags verified at registration on
/// a fixed deterministic grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarFunctionDescriptor {
    pub name: String,
    pub f: ScalarFn,
    pub flags: FunctionFlags,
}

/// 20-point log-spaced grid over [1e-2, 1e2] used for every registration and
/// mean-comparison check.
pub fn check_grid() -> Vec<f64> {
    (0..20)
        .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / 19.0))
        .collect()
}

impl ScalarFunctionDescriptor {
    /// Register a function, verifying each claimed flag on the check grid.
    pub fn register(name: &str, f: ScalarFn, flags: FunctionFlags) -> Result<Self> {
        let grid = check_grid();
        let fail = |what: &str| Err(Error::Registration(name.into(), what.into()));
        if grid.iter().any(|&x| !(f.eval(x) > 0.0) || !f.eval(x).is_finite()) {
            return fail("function must be positive and finite on the grid");
        }
        if flags.normalized && (f.eval(1.0) - 1.0).abs() > 1e-12 {
            return fail("normalized flag requires f(1) = 1");
        }
        if flags.supermultiplicative {
            for &x in &grid {
                for &y in &grid {
                    let lhs = f.eval(x * y);
                    let rhs = f.eval(x) * f.eval(y);
                    if lhs < rhs - 1e-9 * rhs.abs().max(1.0) {
                        return fail("supermultiplicative flag fails on the grid");
                    }
                }
            }
        }
        if flags.operator_monotone {
            for w in grid.windows(2) {
                if f.eval(w[1]) < f.eval(w[0]) - 1e-12 {
                    return fail("operator_monotone flag fails scalar monotonicity");
                }
            }
        }
        if flags.operator_concave {
            for &x in &grid {
                for &y in &grid {
                    let mid = f.eval(0.5 * (x + y));
                    let avg = 0.5 * (f.eval(x) + f.eval(y));
                    if mid < avg - 1e-9 * avg.abs().max(1.0) {
                        return fail("operator_concave flag fails scalar midpoint concavity");
                    }
                }
            }
        }
        Ok(Self {
            name: name.into(),
            f,
            flags,
        })
    }

    /// Resolve a catalog function by name: `power:T`, `geometric`,
    /// `identity`, `arithmetic`, `weighted-arithmetic:W`, `harmonic`.
    pub fn parse(id: &str) -> Result<Self> {
        if let Some(t) = id.strip_prefix("power:") {
            let t: f64 = t
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad power exponent in `{id}`")))?;
            if !t.is_finite() {
                return Err(Error::InvalidArgument(format!("bad power exponent in `{id}`")));
            }
            let in_unit = (0.0..=1.0).contains(&t);
            return Self::register(
                id,
                ScalarFn::Power(t),
                FunctionFlags {
                    operator_monotone: in_unit,
                    operator_concave: in_unit,
                    supermultiplicative: true,
                    normalized: true,
                },
            );
        }
        if let Some(w) = id.strip_prefix("weighted-arithmetic:") {
            let w: f64 = w
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad weight in `{id}`")))?;
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidArgument(format!("weight out of [0,1] in `{id}`")));
            }
            return Self::register(
                id,
                ScalarFn::WeightedArithmetic(w),
                FunctionFlags {
                    operator_monotone: true,
                    operator_concave: true,
                    supermultiplicative: false,
                    normalized: true,
                },
            );
        }
        match id {
            "identity" => Self::parse("power:1"),
            "geometric" => Self::register(
                "geometric",
                ScalarFn::Power(0.5),
                FunctionFlags {
                    operator_monotone: true,
                    operator_concave: true,
                    supermultiplicative: true,
                    normalized: true,
                },
            ),
            "arithmetic" => Self::register(
                "arithmetic",
                ScalarFn::WeightedArithmetic(0.5),
                FunctionFlags {
                    operator_monotone: true,
                    operator_concave: true,
                    supermultiplicative: false,
                    normalized: true,
                },
            ),
            "harmonic" => Self::register(
                "harmonic",
                ScalarFn::Harmonic,
                FunctionFlags {
                    operator_monotone: true,
                    operator_concave: true,
                    supermultiplicative: false,
                    normalized: true,
                },
            ),
            other => Err(Error::UnknownId(other.into())),
        }
    }
}

/// Kubo-Ando operator mean by its representing function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanDescriptor {
    pub name: String,
    pub representing_function: ScalarFunctionDescriptor,
}

impl MeanDescriptor {
    pub fn new(name: &str, f: ScalarFunctionDescriptor) -> Result<Self> {
        if !f.flags.normalized || !f.flags.operator_monotone {
            return Err(Error::Registration(
                name.into(),
                "representing function must be normalized and operator monotone".into(),
            ));
        }
        Ok(Self {
            name: name.into(),
            representing_function: f,
        })
    }

    /// Resolve a mean by name: `arithmetic`, `geometric`, `harmonic`,
    /// `weighted-arithmetic:W`, `power:T`.
    pub fn parse(id: &str) -> Result<Self> {
        Self::new(id, ScalarFunctionDescriptor::parse(id)?)
    }

    pub fn eval_repr(&self, x: f64) -> f64 {
        self.representing_function.f.eval(x)
    }
}

/// Adjoint mean sigma*: representing function t -> t / f(t).
pub fn adjoint_mean(m: &MeanDescriptor) -> Result<MeanDescriptor> {
    let inner = m.representing_function.f.clone();
    let adj = ScalarFn::Adjoint(Box::new(inner));
    let desc = ScalarFunctionDescriptor::register(
        &format!("adjoint({})", m.name),
        adj,
        FunctionFlags {
            operator_monotone: true,
            operator_concave: false,
            supermultiplicative: false,
            normalized: true,
        },
    )?;
    MeanDescriptor::new(&format!("adjoint({})", m.name), desc)
}

/// True iff min(f, f*) <= f_candidate <= max(f, f*) pointwise on the check
/// grid, where f is the representing function of `m` and f* of its adjoint.
pub fn mean_between(candidate: &MeanDescriptor, m: &MeanDescriptor) -> Result<bool> {
    let adj = adjoint_mean(m)?;
    let slack = 1e-12;
    for x in check_grid() {
        let f = m.eval_repr(x);
        let fs = adj.eval_repr(x);
        let c = candidate.eval_repr(x);
        let lo = f.min(fs);
        let hi = f.max(fs);
        if c < lo - slack * lo.abs().max(1.0) || c > hi + slack * hi.abs().max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Principal power A^t of an accretive matrix through diagonalization;
/// eigenvalues are mapped by exp(t Log z) on the principal branch.
pub fn principal_power(a: &ComplexMatrix, t: f64, tol: &TolerancePolicy) -> Result<ComplexMatrix> {
    if !(POWER_RANGE.0..=POWER_RANGE.1).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "exponent {t} outside supported range [{}, {}]",
            POWER_RANGE.0, POWER_RANGE.1
        )));
    }
    let (re, _) = a.cartesian()?;
    let lmin = re.lambda_min()?;
    if lmin <= tol.abs_tol {
        return Err(Error::NotAccretive(lmin));
    }
    let eig = eig_general(a, tol)?;
    eig.apply(|z| principal_pow(z, t))
}

/// Apply a catalog scalar function to a general (accretive) matrix by
/// principal functional calculus.
pub fn apply_principal(a: &ComplexMatrix, f: &ScalarFn, tol: &TolerancePolicy) -> Result<ComplexMatrix> {
    let eig = eig_general(a, tol)?;
    eig.apply(|z| f.eval_complex(z))
}

/// Spectral calculus f(H) for Hermitian positive definite H.
pub fn apply_hermitian_function(h: &HermitianMatrix, f: &ScalarFunctionDescriptor) -> Result<HermitianMatrix> {
    let lmin = h.lambda_min()?;
    if lmin <= 0.0 {
        return Err(Error::NotPositiveDefinite(lmin));
    }
    h.apply(|x| f.f.eval(x))
}

/// A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} with principal powers;
/// reduces to the classical Kubo-Ando mean on positive definite inputs.
pub fn operator_mean(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    m: &MeanDescriptor,
    tol: &TolerancePolicy,
) -> Result<ComplexMatrix> {
    let a_half = principal_power(a, 0.5, tol)?;
    let a_neg_half = principal_power(a, -0.5, tol)?;
    let mid = a_neg_half.matmul(b)?.matmul(&a_neg_half)?;
    let f_mid = apply_principal(&mid, &m.representing_function.f, tol)?;
    a_half.matmul(&f_mid)?.matmul(&a_half)
}

/// Kantorovich constant (M+m)^2 / (4mM) for spectral bounds 0 < m <= M.
pub fn kantorovich(m: f64, big_m: f64) -> Result<f64> {
    if !(m > 0.0) || big_m < m {
        return Err(Error::InvalidArgument(format!(
            "kantorovich requires 0 < m <= M, got m={m}, M={big_m}"
        )));
    }
    Ok((big_m + m).powi(2) / (4.0 * m * big_m))
}
