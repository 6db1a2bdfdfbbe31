use rug::Rational;
use wright_core::coeffs::*;
use wright_core::params::{Shift, WrightParams};

fn rat(p: i64, q: i64) -> Rational { Rational::from((p, q)) }

fn main() {
    // print 1152 sigma^2 c2 for delta=1..6 and several sigma
    for (sn, sd) in [(1i64,4i64),(1,3),(1,5),(1,6),(2,5),(3,7),(1,7),(2,7)] {
        let sigma = rat(sn, sd);
        for d in 1..7i64 {
            let params = WrightParams::psi10(sigma.clone(), Shift::Exact(rat(d, 1))).unwrap();
            let v = inverse_factorial_coeffs(&params, 2, None).unwrap().cj(2).as_rational().unwrap().clone();
            println!("{}/{} {} {}", sn, sd, d, v * rat(1152, 1) * sigma.clone() * sigma.clone());
        }
    }
}
