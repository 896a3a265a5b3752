//! The Hadamard product as a principal compression of the Kronecker product:
//! A o B = V* (A (x) B) V for the canonical isometry V with V e_j = e_j (x) e_j.
//!
//! Run with: cargo run --example hadamard_isometry

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sectorlab::matrix::{canonical_isometry, ComplexMatrix};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("n  ||V*(A(x)B)V - A o B||_F   (V*V = I residual)");
    for n in 1..=6 {
        let mut rand_mat = |n: usize| {
            ComplexMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            })
        };
        let a = rand_mat(n);
        let b = rand_mat(n);
        let v = canonical_isometry(n);
        let compressed = v
            .adjoint()
            .matmul(&a.kronecker(&b))
            .unwrap()
            .matmul(&v)
            .unwrap();
        let residual = compressed
            .sub(&a.hadamard(&b).unwrap())
            .unwrap()
            .frobenius_norm();
        let frame = v
            .adjoint()
            .matmul(&v)
            .unwrap()
            .sub(&ComplexMatrix::identity(n))
            .unwrap()
            .frobenius_norm();
        println!("{n}  {residual:24.3e}   ({frame:.1e})");
    }
    println!();
    println!("Consequence: Loewner inequalities proven for the Kronecker product");
    println!("compress to Hadamard-product inequalities along the same V.");
}
