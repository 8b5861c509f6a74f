//! Cohomology of W1(n) with adjoint and trivial coefficients, by slice.

use modlie::arith::Fp;
use modlie::ceco::{cohomology_dim, degree_slice, ComplexSlice, Module, SliceSpec, DEFAULT_NNZ_BUDGET};
use modlie::liealg::make_w1;

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    for n in 1..=2 {
        let w = make_w1(n, &f)?;
        let h1 = cohomology_dim(&w, 1, Module::Adjoint, true, DEFAULT_NNZ_BUDGET)?;
        let h2 = cohomology_dim(&w, 2, Module::Adjoint, true, DEFAULT_NNZ_BUDGET)?;
        println!("W1({n}): H^1 = {}, H^2 = {} ({} weight-zero cochains)", h1.dim, h2.dim, h2.cochain_dim);
    }
    let w = make_w1(1, &f)?;
    let h = ComplexSlice::new(&w, Module::Adjoint, SliceSpec::weight(0))?.cohomology(2, DEFAULT_NNZ_BUDGET)?;
    let rep = &h.representatives[0];
    println!("representative in degrees {:?} with {} nonzero values", rep.degree_support(&w), rep.iter().count());
    for i in -5..=5 {
        let d = degree_slice(&w, Module::Adjoint, i)?.cohomology(2, DEFAULT_NNZ_BUDGET)?.dim;
        if d > 0 {
            println!("degree slice {i}: H^2 = {d}");
        }
    }
    println!("H^2(W1(1), K) = {}", cohomology_dim(&w, 2, Module::Trivial, true, DEFAULT_NNZ_BUDGET)?.dim);
    Ok(())
}
