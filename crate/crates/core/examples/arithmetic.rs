//! Prime field arithmetic, Lucas binomials and the W1 structure constants.

use modlie::arith::{binom_mod_p, lambda_in, n_div_p, structure_constant_int, Fp};

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    println!("3^-1 = {} in F_5", f.inv(3));
    println!("binom(27, 13) mod 5 = {}", binom_mod_p(27, 13, 5)?.value());
    for (i, j) in [(1, 3), (2, 3), (3, 3)] {
        println!("N_{i}{j} = {}, N_{i}{j}/p = {} mod 5", structure_constant_int(i, j), n_div_p(i, j, 5)?.value());
    }
    // N_{0,1} = 1 is not divisible by p
    if let Err(e) = n_div_p(0, 1, 5) {
        println!("N_01/p: {e}");
    }
    let row: Vec<u32> = (-1..=3).map(|j| lambda_in(&f, 2, j).map(|x| x.value())).collect::<modlie::Result<_>>()?;
    println!("lambda_2j for j = -1..3: {row:?}");
    Ok(())
}
