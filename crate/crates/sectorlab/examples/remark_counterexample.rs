//! The fixed 2x2 counterexample: Re(Phi A) o Re(Phi B) and Re Phi(A o B)
//! are not comparable in the Loewner order even for the identity map.
//!
//! Run with: cargo run --example remark_counterexample

use sectorlab::inequalities::{evaluate, remark_matrices};
use sectorlab::matrix::{HermitianMatrix, TolerancePolicy};
use sectorlab::witness::Witness;

fn main() {
    let (a, b) = remark_matrices();
    let ra = a.cartesian().unwrap().0;
    let rb = b.cartesian().unwrap().0;
    let had = ra.hadamard(&rb).unwrap();
    println!("Re(A) o Re(B) = I (identity): residual {:.1e}",
        had.sub(&HermitianMatrix::identity(2)).unwrap().frobenius_norm());

    let re_prod = HermitianMatrix::from_complex(&a.hadamard(&b).unwrap()).unwrap();
    let spec = re_prod.eigvals().unwrap();
    println!("Re(A o B) spectrum: {{{:.1}, {:.1}}} (singular on one side!)", spec[0], spec[1]);

    let diff = re_prod.sub(&had).unwrap();
    let dspec = diff.eigvals().unwrap();
    println!("difference spectrum: {{{:.1}, {:.1}}}", dspec[0], dspec[1]);
    println!("spectral norm of the difference: {:.1}", diff.spectral_norm());
    println!();
    println!("One eigenvalue of the difference is negative and one positive,");
    println!("so neither Loewner direction holds: the naive exchange");
    println!("Re Phi(A o B) = Re(Phi A) o Re(Phi B) is false even for Phi = id.");

    let out = evaluate("remark", &Witness::new(), &TolerancePolicy::default()).unwrap();
    println!();
    println!("checker verdict: pass = {} (the fixture asserts the failure)", out.pass);
    for note in &out.notes {
        println!("  note: {note}");
    }
}
