//! The positive unital map catalog and which maps commute with the Hadamard
//! product. The trace map is the standing counterexample.
//!
//! Run with: cargo run --example positive_maps

use sectorlab::maps::{standard_catalog, PositiveMapDescriptor};
use sectorlab::matrix::HermitianMatrix;

fn main() {
    let dim = 3;
    println!("catalog at n = {dim}:");
    for phi in standard_catalog(dim).unwrap() {
        println!(
            "  {:<16} {}x{} -> {}x{}  unital: {:<5}  hadamard-multiplicative: {}",
            phi.id, phi.input_dim, phi.input_dim, phi.output_dim, phi.output_dim, phi.unital,
            phi.hadamard_multiplicative
        );
    }
    println!();

    let a = HermitianMatrix::diag(&[1.0, 2.0, 3.0]).to_complex();
    let b = HermitianMatrix::diag(&[3.0, 2.0, 1.0]).to_complex();
    println!("residual ||Phi(A o B) - Phi(A) o Phi(B)||_F on a diagonal PD pair:");
    for id in ["identity", "perm:1,2,0", "submatrix:0,1", "trace"] {
        let phi = PositiveMapDescriptor::parse(id, dim).unwrap();
        let residual = phi.check_hadamard_multiplicative(&a, &b).unwrap();
        let marker = if phi.hadamard_multiplicative { "(flagged, must vanish)" } else { "(not flagged)" };
        println!("  {id:<16} {residual:.6e} {marker}");
    }
    println!();
    println!("The trace map is positive and unital yet fails multiplicativity;");
    println!("that failure is exactly why the identity-map Remark counterexample");
    println!("cannot be repaired by averaging.");
}
