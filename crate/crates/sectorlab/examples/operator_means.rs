//! Kubo-Ando operator means through representing functions, extended to
//! accretive matrices by principal functional calculus.
//!
//! Run with: cargo run --example operator_means

use sectorlab::functions::{adjoint_mean, mean_between, operator_mean, MeanDescriptor};
use sectorlab::matrix::{HermitianMatrix, TolerancePolicy};
use sectorlab::sector::{random_sector, GeneratorConfig};

fn main() {
    let tol = TolerancePolicy::default();
    let arithmetic = MeanDescriptor::parse("arithmetic").unwrap();
    let geometric = MeanDescriptor::parse("geometric").unwrap();
    let harmonic = MeanDescriptor::parse("harmonic").unwrap();

    // harmonic is the adjoint of arithmetic; geometric is self-adjoint
    let arith_star = adjoint_mean(&arithmetic).unwrap();
    println!(
        "adjoint of arithmetic at x=3: {:.4} (harmonic gives {:.4})",
        arith_star.eval_repr(3.0),
        harmonic.eval_repr(3.0)
    );
    println!(
        "geometric between harmonic and arithmetic: {}",
        mean_between(&geometric, &arithmetic).unwrap()
    );
    println!();

    // AM-GM-HM on positive definite matrices
    let a = HermitianMatrix::diag(&[1.0, 4.0, 9.0]).to_complex();
    let b = HermitianMatrix::diag(&[4.0, 1.0, 1.0]).to_complex();
    let am = operator_mean(&a, &b, &arithmetic, &tol).unwrap();
    let gm = operator_mean(&a, &b, &geometric, &tol).unwrap();
    let hm = operator_mean(&a, &b, &harmonic, &tol).unwrap();
    let h = |m: &sectorlab::matrix::ComplexMatrix| HermitianMatrix::from_complex(m).unwrap();
    println!(
        "diagonal PD pair: HM <= GM: lambda_min(GM-HM) = {:.4e}",
        h(&gm).sub(&h(&hm)).unwrap().lambda_min().unwrap()
    );
    println!(
        "                  GM <= AM: lambda_min(AM-GM) = {:.4e}",
        h(&am).sub(&h(&gm)).unwrap().lambda_min().unwrap()
    );
    println!();

    // the same formulas act on accretive (sector) matrices
    let cfg = GeneratorConfig::new(3, 0.5, 19);
    let mut rng = cfg.trial_rng(0);
    let sa = random_sector(&cfg, &mut rng).unwrap().matrix;
    let sb = random_sector(&cfg, &mut rng).unwrap().matrix;
    let g = operator_mean(&sa, &sb, &geometric, &tol).unwrap();
    let re_min = g.cartesian().unwrap().0.lambda_min().unwrap();
    println!("geometric mean of two sector matrices stays accretive:");
    println!("lambda_min(Re(A # B)) = {re_min:.4} > 0");
}
