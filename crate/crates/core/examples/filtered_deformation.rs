//! Positive cohomology of W1(2) (x) O_1 + 1 (x) Kd and the filtered
//! deformation built from its classes.

use modlie::arith::Fp;
use modlie::ceco::{h2_positive, massey_bracket, Cochain, Module, DEFAULT_NNZ_BUDGET};
use modlie::cocycles::{build_filtered_deformation, materialize, positive_recipes, Frame};
use modlie::commalg::{divided_partial, make_divided_powers};
use modlie::liealg::{find_proper_ideal, make_w1};

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    let a = make_divided_powers(1, &f)?;
    let d = divided_partial(&a);
    let frame = Frame::semidirect(make_w1(2, &f)?, Some(2), a, &[d])?;
    let pos = h2_positive(&frame.l, true, DEFAULT_NNZ_BUDGET)?;
    println!("H^2_+ = {} in slices {:?}", pos.dim, pos.slices);

    let recipes = positive_recipes(&frame)?;
    let cs: Vec<Cochain> = recipes.iter().map(|r| materialize(r, &frame)).collect::<modlie::Result<_>>()?;
    for (r, c) in recipes.iter().zip(&cs) {
        println!("{} in degrees {:?}", r.family(), c.degree_support(&frame.l));
    }
    println!("[c0, c1] = 0: {}", massey_bracket(&frame.l, &cs[0], &cs[1])?.is_zero());
    let sum = cs.iter().fold(Cochain::zero(&frame.l, 2, Module::Adjoint), |acc, c| acc.add(&frame.l, c));
    let deformed = build_filtered_deformation(&frame.l, &sum)?;
    println!("deformed algebra: dim {}, proper ideal found: {}", deformed.dim(), find_proper_ideal(&deformed, 4, 1).is_some());
    Ok(())
}
