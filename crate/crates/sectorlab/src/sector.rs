//! Sector membership and angle certification for accretive matrices, plus
//! seeded random generators for sector matrices with hypothesis
//! side-conditions (Hermitian-part spectral bounds, signed imaginary parts).

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, TolerancePolicy};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// A complex matrix bundled with a certified sector angle bound and cached
/// Cartesian parts. The invariant is that the numerical range of `matrix`
/// lies in the sector of half-angle `theta`.
#[derive(Debug, Clone)]
pub struct SectorMatrix {
    pub matrix: ComplexMatrix,
    /// Certified angle bound in radians, in [0, pi/2).
    pub theta: f64,
    pub re_part: HermitianMatrix,
    pub im_part: HermitianMatrix,
}

/// Smallest certified sector angle: arctan of the spectral norm of
/// (Re A)^{-1/2} (Im A) (Re A)^{-1/2}. Requires Re A positive definite.
pub fn sector_angle(a: &ComplexMatrix) -> Result<f64> {
    let (re, im) = a.cartesian()?;
    let lmin = re.lambda_min()?;
    if lmin <= 0.0 {
        return Err(Error::NotAccretive(lmin));
    }
    let re_inv_sqrt = re.power(-0.5)?;
    let core = re_inv_sqrt
        .to_complex()
        .matmul(&im.to_complex())?
        .matmul(&re_inv_sqrt.to_complex())?;
    Ok(HermitianMatrix::from_complex(&core)?.spectral_norm().atan())
}

/// Verdict of a sector membership test, with the limiting Loewner residual.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SectorVerdict {
    pub in_sector: bool,
    /// min of lambda_min(Re A), lambda_min(tan(theta) Re A - Im A) and
    /// lambda_min(tan(theta) Re A + Im A); membership needs all three
    /// nonnegative (the first strictly positive).
    pub residual: f64,
}

/// Test W(A) subset S_theta via the PSD characterization: Re A > 0 and
/// tan(theta) Re A +- Im A >= 0.
pub fn in_sector(a: &ComplexMatrix, theta: f64, tol: &TolerancePolicy) -> Result<SectorVerdict> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "sector angle {theta} outside [0, pi/2)"
        )));
    }
    let (re, im) = a.cartesian()?;
    let re_min = re.lambda_min()?;
    if re_min <= tol.abs_tol {
        return Ok(SectorVerdict {
            in_sector: false,
            residual: re_min,
        });
    }
    let t = theta.tan();
    let upper = re.scale(t).sub(&im)?.lambda_min()?;
    let lower = re.scale(t).add(&im)?.lambda_min()?;
    let residual = upper.min(lower);
    let scale = re.spectral_norm().max(im.spectral_norm());
    Ok(SectorVerdict {
        in_sector: residual >= -tol.at_scale(scale),
        residual,
    })
}

impl SectorMatrix {
    /// Certify a matrix with its minimal sector angle.
    pub fn certify(matrix: ComplexMatrix) -> Result<Self> {
        let theta = sector_angle(&matrix)?;
        let (re_part, im_part) = matrix.cartesian()?;
        Ok(Self {
            matrix,
            theta,
            re_part,
            im_part,
        })
    }

    pub fn dim(&self) -> usize {
        self.re_part.dim()
    }
}

/// Sign side-condition requested from the pair generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignCondition {
    /// Im A o Im B >= 0 (both imaginary parts PSD).
    ImHadamardNonneg,
    /// Im A o Im B <= 0 (Im A PSD, Im B NSD).
    ImHadamardNonpos,
    None,
}

/// Serialized generator configuration, embedded in reports for replay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub dim: usize,
    pub theta: f64,
    pub sign: SignCondition,
    #[serde(rename = "m", skip_serializing_if = "Option::is_none", default)]
    pub re_lower: Option<f64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub re_upper: Option<f64>,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(dim: usize, theta: f64, seed: u64) -> Self {
        Self {
            dim,
            theta,
            sign: SignCondition::None,
            re_lower: None,
            re_upper: None,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > 64 {
            return Err(Error::InvalidArgument(format!("dim {} out of range", self.dim)));
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&self.theta) {
            return Err(Error::InvalidArgument(format!(
                "theta {} outside [0, pi/2)",
                self.theta
            )));
        }
        match (self.re_lower, self.re_upper) {
            (Some(m), Some(big_m)) if !(m > 0.0 && m <= big_m) => Err(Error::InvalidArgument(
                format!("need 0 < m <= M, got m={m}, M={big_m}"),
            )),
            (Some(_), None) | (None, Some(_)) => Err(Error::InvalidArgument(
                "re_bounds requires both m and M".into(),
            )),
            _ => Ok(()),
        }
    }

    /// RNG stream for one trial: seed xor-folded with the trial index so
    /// parallel campaigns are order-independent.
    pub fn trial_rng(&self, trial_index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix_seed(self.seed, trial_index))
    }
}

/// SplitMix64-style mixing of (seed, stream index) into one 64-bit seed.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize, m: usize) -> ComplexMatrix {
    let mut entries = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(m);
        for _ in 0..m {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            row.push(Complex64::new(re, im));
        }
        entries.push(row);
    }
    ComplexMatrix::from_rows(&entries).expect("gaussian entries are finite")
}

/// Random Hermitian PSD-plus-floor matrix G*G + 0.1 I.
fn random_pd_floor(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    let g = random_complex(rng, n, n);
    let gram = g.adjoint().matmul(&g).expect("square");
    HermitianMatrix::from_complex(&gram)
        .expect("gram is square")
        .add(&HermitianMatrix::identity(n).scale(0.1))
        .expect("same dim")
}

/// Random Hermitian matrix (unsigned spectrum).
fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    HermitianMatrix::from_complex(&random_complex(rng, n, n)).expect("square")
}

/// Affinely rescale the spectrum of a PD matrix into [m, M].
fn rescale_spectrum(h: &HermitianMatrix, m: f64, big_m: f64) -> Result<HermitianMatrix> {
    let w = h.eigvals()?;
    let (lo, hi) = (w[0], w[w.len() - 1]);
    if (hi - lo).abs() < 1e-12 {
        return Ok(HermitianMatrix::identity(h.dim()).scale(0.5 * (m + big_m)));
    }
    let slope = (big_m - m) / (hi - lo);
    h.apply(|l| m + slope * (l - lo))
}

/// Deterministic sector-matrix generator. The Hermitian part is a spectrum-
/// floored Gram matrix (optionally rescaled into the configured [m, M]); the
/// skew part is R^{1/2} (rho tan(theta) T / ||T||) R^{1/2}, which certifies
/// the angle bound by construction.
pub fn random_sector(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<SectorMatrix> {
    cfg.validate()?;
    random_sector_with_sign(cfg, rng, ImSign::Unsigned)
}

/// Imaginary-part shaping used by the pair generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ImSign {
    Unsigned,
    Psd,
    Nsd,
}

fn random_sector_with_sign(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng, sign: ImSign) -> Result<SectorMatrix> {
    let n = cfg.dim;
    let mut re = random_pd_floor(rng, n);
    if let (Some(m), Some(big_m)) = (cfg.re_lower, cfg.re_upper) {
        re = rescale_spectrum(&re, m, big_m)?;
    }
    // Draw the direction even when theta = 0 so the stream layout does not
    // depend on theta.
    let t_raw = match sign {
        ImSign::Unsigned => random_hermitian(rng, n),
        ImSign::Psd => random_pd_floor(rng, n),
        ImSign::Nsd => random_pd_floor(rng, n).scale(-1.0),
    };
    let rho: f64 = rng.random();
    let matrix = if cfg.theta == 0.0 {
        re.to_complex()
    } else {
        let norm = t_raw.spectral_norm();
        let dir = t_raw.scale(rho * cfg.theta.tan() / norm);
        let re_sqrt = re.power(0.5)?;
        let im = HermitianMatrix::from_complex(
            &re_sqrt
                .to_complex()
                .matmul(&dir.to_complex())?
                .matmul(&re_sqrt.to_complex())?,
        )?;
        re.to_complex().add(&im.to_complex().scale(Complex64::I))?
    };
    let mut s = SectorMatrix::certify(matrix)?;
    // the construction certifies theta <= cfg.theta; keep the tighter bound
    s.theta = s.theta.min(cfg.theta);
    Ok(s)
}

/// Generate a pair (A, B) whose imaginary parts satisfy the configured
/// Hadamard sign condition; the condition is re-verified post hoc by
/// eigenvalue check and the pair is resampled on failure.
pub fn random_sector_pair_signed(
    cfg: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(SectorMatrix, SectorMatrix)> {
    cfg.validate()?;
    let (sa, sb) = match cfg.sign {
        SignCondition::ImHadamardNonneg => (ImSign::Psd, ImSign::Psd),
        SignCondition::ImHadamardNonpos => (ImSign::Psd, ImSign::Nsd),
        SignCondition::None => {
            return Err(Error::InvalidArgument(
                "pair generator requires a sign condition".into(),
            ))
        }
    };
    const BUDGET: usize = 64;
    for _ in 0..BUDGET {
        let a = random_sector_with_sign(cfg, rng, sa)?;
        let b = random_sector_with_sign(cfg, rng, sb)?;
        let had = a.im_part.hadamard(&b.im_part)?;
        let ok = match cfg.sign {
            SignCondition::ImHadamardNonneg => had.lambda_min()? >= -1e-10,
            SignCondition::ImHadamardNonpos => had.lambda_max()? <= 1e-10,
            SignCondition::None => unreachable!(),
        };
        if ok {
            return Ok((a, b));
        }
    }
    Err(Error::ResampleBudget(BUDGET))
}

/// Sample points of the numerical range: x*Ax over the standard basis, the
/// eigenvectors of Re A and Im A, then random unit vectors, truncated or
/// padded to exactly `k` values.
pub fn numerical_range_samples(a: &ComplexMatrix, k: usize, seed: u64) -> Result<Vec<Complex64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("need k >= 1 samples".into()));
    }
    let n = a.dim()?;
    let mut vectors: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let mut e = vec![Complex64::ZERO; n];
        e[j] = Complex64::new(1.0, 0.0);
        vectors.push(e);
    }
    let (re, im) = a.cartesian()?;
    for part in [&re, &im] {
        let (_, v) = part.eigh()?;
        for j in 0..n {
            vectors.push((0..n).map(|i| v.get(i, j)).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0x6e72)); // numerical-range stream
    while vectors.len() < k {
        let mut x: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
            })
            .collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        x.iter_mut().for_each(|z| *z /= norm);
        vectors.push(x);
    }
    vectors.truncate(k);
    Ok(vectors
        .iter()
        .map(|x| {
            let mut acc = Complex64::ZERO;
            for i in 0..n {
                for j in 0..n {
                    acc += x[i].conj() * a.get(i, j) * x[j];
                }
            }
            acc
        })
        .collect())
}
