//! Builds f_1..f_N at double precision and prints the construction constants.

use std::time::Instant;

use qnc_core::forge::{construct, ConstructionConfig};

fn main() {
    let upto: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let cfg = ConstructionConfig::default();
    println!("{:>3} {:>6} {:>14} {:>14} {:>14} {:>10}", "n", "deg", "ln c_hat", "ln m_hat", "ln a", "secs");
    for n in 1..=upto {
        let t = Instant::now();
        match construct::<f64>(n, &cfg) {
            Ok(f) => println!(
                "{:>3} {:>6} {:>14.6} {:>14.6} {:>14.6} {:>10.3}",
                n,
                f.p().degree(),
                f.c_hat().ln(),
                f.m_hat().ln(),
                f.ln_a(),
                t.elapsed().as_secs_f64()
            ),
            Err(e) => println!("{n:>3} error: {e}"),
        }
    }
}
