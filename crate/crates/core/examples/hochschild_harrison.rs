//! Hochschild and Harrison cohomology of divided powers and reduced
//! polynomial algebras.

use modlie::arith::Fp;
use modlie::commalg::{divided_partial, make_divided_powers, make_reduced_poly};
use modlie::hochschild::{
    basic_harrison_cocycle, harrison_h2, harrison_invariant_dim, hochschild_hn_dim, star_action, HarrisonVariant, DEFAULT_TUPLE_BUDGET,
};

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    let o1 = make_divided_powers(1, &f)?;
    for n in 0..=2 {
        println!("dim HH^{n}(O_1, O_1) = {}", hochschild_hn_dim(&o1, n, DEFAULT_TUPLE_BUDGET)?);
    }
    for m in 1..=2 {
        let h = harrison_h2(&make_reduced_poly(m, &f)?);
        println!("O_{m}: Har^2 = {} (cocycles {}, coboundaries {})", h.dim, h.cocycle_dim, h.coboundary_dim);
    }
    let o2 = make_divided_powers(2, &f)?;
    let d = divided_partial(&o2);
    for i in 1..=2 {
        let fi = basic_harrison_cocycle(&o2, 2, i, HarrisonVariant::Divided)?;
        println!("F_{i} on O_1(2): cocycle {}, d * F_{i} = 0: {}", fi.is_cocycle(&o2), star_action(&o2, &d, &fi).is_zero());
    }
    println!("dim Har^2(O_1(2))^d = {}", harrison_invariant_dim(&o2, &harrison_h2(&o2), &d));
    Ok(())
}
