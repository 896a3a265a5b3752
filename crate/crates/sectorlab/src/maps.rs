//! A closed catalog of unital positive linear maps with capability flags.
//! The Hadamard-multiplicative sub-family (identity, permutation congruence,
//! principal submatrix) is the one admissible in the theorems that route
//! through the map/Hadamard exchange identity; other catalog maps are kept
//! to demonstrate that the general exchange identity fails.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub enum MapKind {
    Identity(usize),
    /// X -> U* X U for unitary U.
    UnitaryCongruence(ComplexMatrix),
    /// X -> (X_{p(i) p(j)})_{ij} for a permutation p.
    PermutationCongruence(Vec<usize>),
    /// X -> V* X V for an n x m frame with V*V = I_m.
    IsometryCompression(ComplexMatrix),
    /// X -> X[S] on a distinct index set S.
    PrincipalSubmatrix(usize, Vec<usize>),
    /// Block-diagonal pinching by consecutive block sizes.
    Pinching(Vec<usize>),
    /// X -> (tr X / n) I.
    TraceNormalized(usize),
    /// X -> C o X for a correlation matrix C (PSD, unit diagonal).
    SchurMultiplier(HermitianMatrix),
}

#[derive(Debug, Clone)]
pub struct PositiveMapDescriptor {
    pub id: String,
    pub kind: MapKind,
    pub input_dim: usize,
    pub output_dim: usize,
    pub unital: bool,
    pub hadamard_multiplicative: bool,
}

fn apply_kind(kind: &MapKind, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    match kind {
        MapKind::Identity(_) => Ok(x.clone()),
        MapKind::UnitaryCongruence(u) => u.adjoint().matmul(x)?.matmul(u),
        MapKind::PermutationCongruence(p) => {
            let n = x.dim()?;
            if p.len() != n {
                return Err(Error::DimensionMismatch(n, n, p.len(), p.len()));
            }
            Ok(ComplexMatrix::from_fn(n, n, |i, j| x.get(p[i], p[j])))
        }
        MapKind::IsometryCompression(v) => v.adjoint().matmul(x)?.matmul(v),
        MapKind::PrincipalSubmatrix(_, s) => x.principal_submatrix(s),
        MapKind::Pinching(blocks) => {
            let n = x.dim()?;
            let mut block_of = vec![0usize; n];
            let mut idx = 0usize;
            for (b, size) in blocks.iter().enumerate() {
                for _ in 0..*size {
                    block_of[idx] = b;
                    idx += 1;
                }
            }
            Ok(ComplexMatrix::from_fn(n, n, |i, j| {
                if block_of[i] == block_of[j] {
                    x.get(i, j)
                } else {
                    Complex64::ZERO
                }
            }))
        }
        MapKind::TraceNormalized(n) => {
            let t = x.trace() / *n as f64;
            Ok(ComplexMatrix::identity(*n).scale(t))
        }
        MapKind::SchurMultiplier(c) => c.to_complex().hadamard(x),
    }
}

fn kind_dims(kind: &MapKind) -> Result<(usize, usize)> {
    Ok(match kind {
        MapKind::Identity(n) | MapKind::TraceNormalized(n) => (*n, *n),
        MapKind::UnitaryCongruence(u) => (u.dim()?, u.dim()?),
        MapKind::PermutationCongruence(p) => (p.len(), p.len()),
        MapKind::IsometryCompression(v) => (v.nrows(), v.ncols()),
        MapKind::PrincipalSubmatrix(n, s) => (*n, s.len()),
        MapKind::Pinching(blocks) => {
            let n = blocks.iter().sum();
            (n, n)
        }
        MapKind::SchurMultiplier(c) => (c.dim(), c.dim()),
    })
}

impl PositiveMapDescriptor {
    /// Register a map: validate structural preconditions (unitarity,
    /// frame condition, permutation validity, correlation matrix), spot-check
    /// positivity on 20 random Gram matrices, and measure unitality.
    pub fn register(id: &str, kind: MapKind) -> Result<Self> {
        let (input_dim, output_dim) = kind_dims(&kind)?;
        if input_dim == 0 || output_dim == 0 {
            return Err(Error::Registration(id.into(), "empty dimensions".into()));
        }
        match &kind {
            MapKind::UnitaryCongruence(u) => {
                let g = u.adjoint().matmul(u)?;
                let resid = g.sub(&ComplexMatrix::identity(u.dim()?))?.frobenius_norm();
                if resid > 1e-12 {
                    return Err(Error::Registration(id.into(), format!("not unitary, residual {resid:.3e}")));
                }
            }
            MapKind::IsometryCompression(v) => {
                let g = v.adjoint().matmul(v)?;
                let resid = g.sub(&ComplexMatrix::identity(v.ncols()))?.frobenius_norm();
                if resid > 1e-12 {
                    return Err(Error::Registration(id.into(), format!("X*X != I, residual {resid:.3e}")));
                }
            }
            MapKind::PermutationCongruence(p) => {
                let mut seen = vec![false; p.len()];
                for &i in p {
                    if i >= p.len() || seen[i] {
                        return Err(Error::Registration(id.into(), "not a permutation".into()));
                    }
                    seen[i] = true;
                }
            }
            MapKind::PrincipalSubmatrix(n, s) => {
                let mut seen = vec![false; *n];
                if s.is_empty() {
                    return Err(Error::Registration(id.into(), "empty index set".into()));
                }
                for &i in s {
                    if i >= *n || seen[i] {
                        return Err(Error::Registration(id.into(), "bad index set".into()));
                    }
                    seen[i] = true;
                }
            }
            MapKind::Pinching(blocks) => {
                if blocks.iter().any(|&b| b == 0) {
                    return Err(Error::Registration(id.into(), "empty pinching block".into()));
                }
            }
            MapKind::SchurMultiplier(c) => {
                if (0..c.dim()).any(|i| (c.get(i, i) - Complex64::new(1.0, 0.0)).norm() > 1e-12) {
                    return Err(Error::Registration(id.into(), "Schur multiplier needs unit diagonal".into()));
                }
                if c.lambda_min()? < -1e-10 {
                    return Err(Error::Registration(id.into(), "Schur multiplier must be PSD".into()));
                }
            }
            _ => {}
        }
        // positivity spot check on random Gram inputs
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ec7_0a95);
        for _ in 0..20 {
            let g = ComplexMatrix::from_fn(input_dim, input_dim, |_, _| {
                Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
            });
            let psd = g.adjoint().matmul(&g)?;
            let image = HermitianMatrix::from_complex(&apply_kind(&kind, &psd)?)?;
            let lmin = image.lambda_min()?;
            if lmin < -1e-10 * psd.frobenius_norm().max(1.0) {
                return Err(Error::Registration(id.into(), format!("positivity spot-check failed ({lmin:.3e})")));
            }
        }
        let unital = {
            let image = apply_kind(&kind, &ComplexMatrix::identity(input_dim))?;
            image.sub(&ComplexMatrix::identity(output_dim))?.frobenius_norm() <= 1e-12
        };
        let hadamard_multiplicative = matches!(
            kind,
            MapKind::Identity(_) | MapKind::PermutationCongruence(_) | MapKind::PrincipalSubmatrix(_, _)
        );
        Ok(Self {
            id: id.into(),
            kind,
            input_dim,
            output_dim,
            unital,
            hadamard_multiplicative,
        })
    }

    /// Resolve a map by id string for a given input dimension: `identity`,
    /// `perm:2,0,1`, `submatrix:0,1`, `trace`, `pinch:2+2`.
    pub fn parse(id: &str, dim: usize) -> Result<Self> {
        if id == "identity" {
            return Self::register(id, MapKind::Identity(dim));
        }
        if id == "trace" {
            return Self::register(id, MapKind::TraceNormalized(dim));
        }
        if let Some(spec) = id.strip_prefix("perm:") {
            let p = parse_indices(spec)?;
            if p.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "permutation length {} != dim {dim}",
                    p.len()
                )));
            }
            return Self::register(id, MapKind::PermutationCongruence(p));
        }
        if let Some(spec) = id.strip_prefix("submatrix:") {
            let s = parse_indices(spec)?;
            return Self::register(id, MapKind::PrincipalSubmatrix(dim, s));
        }
        if let Some(spec) = id.strip_prefix("pinch:") {
            let blocks: Vec<usize> = spec
                .split('+')
                .map(|b| b.parse().map_err(|_| Error::InvalidArgument(format!("bad pinch spec `{spec}`"))))
                .collect::<Result<_>>()?;
            if blocks.iter().sum::<usize>() != dim {
                return Err(Error::InvalidArgument(format!(
                    "pinch blocks must sum to dim {dim}"
                )));
            }
            return Self::register(id, MapKind::Pinching(blocks));
        }
        Err(Error::UnknownId(id.into()))
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = x.dim()?;
        if n != self.input_dim {
            return Err(Error::DimensionMismatch(n, n, self.input_dim, self.input_dim));
        }
        apply_kind(&self.kind, x)
    }

    /// Residual of the Hermitian-part exchange Phi(Re A) = Re(Phi(A)); this
    /// holds for every positive map that preserves adjoints.
    pub fn check_re_commutes(&self, a: &ComplexMatrix) -> Result<f64> {
        let (re, _) = a.cartesian()?;
        let lhs = self.apply(&re.to_complex())?;
        let (rhs, _) = self.apply(a)?.cartesian()?;
        lhs.sub(&rhs.to_complex()).map(|d| d.frobenius_norm())
    }

    /// Residual of Phi(A o B) = Phi(A) o Phi(B) on positive definite inputs.
    /// Expected to vanish exactly when the `hadamard_multiplicative` flag is
    /// set, and to be visibly nonzero for, e.g., the normalized trace map.
    pub fn check_hadamard_multiplicative(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
        let lhs = self.apply(&a.hadamard(b)?)?;
        let rhs = self.apply(a)?.hadamard(&self.apply(b)?)?;
        lhs.sub(&rhs).map(|d| d.frobenius_norm())
    }
}

fn parse_indices(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad index list `{spec}`")))
        })
        .collect()
}

/// The standard catalog for a given dimension, used by default campaigns and
/// the registration test suite.
pub fn standard_catalog(dim: usize) -> Result<Vec<PositiveMapDescriptor>> {
    let mut ids = vec!["identity".to_string(), "trace".to_string()];
    if dim >= 2 {
        let perm: Vec<String> = (0..dim).map(|i| ((i + 1) % dim).to_string()).collect();
        ids.push(format!("perm:{}", perm.join(",")));
        let sub: Vec<String> = (0..dim - 1).map(|i| i.to_string()).collect();
        ids.push(format!("submatrix:{}", sub.join(",")));
        ids.push(format!("pinch:{}+{}", dim - 1, 1));
    }
    let mut out = Vec::new();
    for id in ids {
        out.push(PositiveMapDescriptor::parse(&id, dim)?);
    }
    Ok(out)
}
