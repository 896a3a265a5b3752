//! Principal powers of sector matrices and the two-sided power bounds:
//! for t in [0,1]:  cos^{2t}(theta) Re(A^t) <= (Re A)^t <= Re(A^t)
//! for t in [-1,0]: Re(A^t) <= (Re A)^t <= cos^{2t}(theta) Re(A^t)
//!
//! Run with: cargo run --example power_bounds

use sectorlab::functions::principal_power;
use sectorlab::matrix::TolerancePolicy;
use sectorlab::sector::{random_sector, sector_angle, GeneratorConfig};

fn main() {
    let tol = TolerancePolicy::default();
    let cfg = GeneratorConfig::new(3, 0.6, 7);
    let mut rng = cfg.trial_rng(0);
    let a = random_sector(&cfg, &mut rng).unwrap().matrix;
    let theta = sector_angle(&a).unwrap();
    println!("random 3x3 sector matrix, certified angle {theta:.4} rad");
    println!();
    println!("   t     lower-chain residual   upper-chain residual");
    for t in [-1.0, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0] {
        let a_t = principal_power(&a, t, &tol).unwrap();
        let re_pow = a_t.cartesian().unwrap().0;
        let pow_re = a.cartesian().unwrap().0.power(t).unwrap();
        let c = theta.cos().powf(2.0 * t);
        let (lo, hi) = if t >= 0.0 {
            (
                pow_re.sub(&re_pow.scale(c)).unwrap().lambda_min().unwrap(),
                re_pow.sub(&pow_re).unwrap().lambda_min().unwrap(),
            )
        } else {
            (
                pow_re.sub(&re_pow).unwrap().lambda_min().unwrap(),
                re_pow.scale(c).sub(&pow_re).unwrap().lambda_min().unwrap(),
            )
        };
        println!("{t:6.2}   {lo:18.6e}   {hi:18.6e}");
    }
    println!();
    println!("All residuals are nonnegative (up to roundoff): both Loewner");
    println!("chains hold. At theta = 0 both chains collapse to equalities.");
}
