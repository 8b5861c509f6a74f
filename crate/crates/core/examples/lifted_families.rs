//! H^2 of the deformed algebras L(O_1, D) against the lifted cocycle families.

use modlie::arith::Fp;
use modlie::ceco::DEFAULT_NNZ_BUDGET;
use modlie::cocycles::lifted_family_check;
use modlie::commalg::{divided_partial, make_divided_powers, Derivation};

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    let a = make_divided_powers(1, &f)?;
    let d = divided_partial(&a);
    let x = a.basis_vector(1);
    for (name, e) in [("0", Derivation::zero(&a)), ("d", d.clone()), ("x d", d.times(&a, &x)), ("d + x d", d.add(&a, &d.times(&a, &x)))] {
        let r = lifted_family_check(&a, &e, DEFAULT_NNZ_BUDGET)?;
        let params: Vec<usize> = r.families.iter().map(|f| f.parameters).collect();
        println!("D = {name}: parameters {params:?}, independent {}, H^2 {}", r.independent_classes, r.h2_dim);
    }
    let r = lifted_family_check(&a, &d, DEFAULT_NNZ_BUDGET)?;
    println!("{}", serde_json::to_string(&r.recipes[0])?);
    Ok(())
}
