//! Checks the isomorphism W1(n) (x) A -> L(O_1(n-1) (x) A, d (x) 1).

use modlie::arith::Fp;
use modlie::commalg::{ground_field, make_divided_powers};
use modlie::liealg::{kuznetsov_map, verify_morphism};

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    for (name, a) in [("K", ground_field(&f)), ("O_1", make_divided_powers(1, &f)?)] {
        let k = kuznetsov_map(2, &a)?;
        let check = verify_morphism(&k.source, &k.target, &k.map)?;
        println!("A = {name}: dim {}, isomorphism {}", k.source.dim(), check.is_isomorphism());
    }
    // the identity is not a morphism between the two bracket tables
    let k = kuznetsov_map(2, &ground_field(&f))?;
    let id = modlie::liealg::LinearMap::identity(k.source.dim());
    println!("identity map: {:?}", verify_morphism(&k.source, &k.target, &id)?);
    Ok(())
}
