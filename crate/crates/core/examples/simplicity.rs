//! Ideal search, center and derived series.

use modlie::arith::Fp;
use modlie::commalg::{divided_partial, make_divided_powers, Derivation};
use modlie::liealg::{center, current_algebra, derived_series, find_proper_ideal, heisenberg, make_deformed, make_w1};

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    let a = make_divided_powers(1, &f)?;
    let cases = [
        ("L(O_1, d)", make_deformed(&a, &divided_partial(&a))?),
        ("L(O_1, 0)", make_deformed(&a, &Derivation::zero(&a))?),
        ("W1(1) (x) O_1", current_algebra(&make_w1(1, &f)?, &a)?),
        ("heisenberg (x) O_1", current_algebra(&heisenberg(&f), &a)?),
    ];
    for (name, l) in &cases {
        let ideal = match find_proper_ideal(l, 16, 7) {
            Some(i) => format!("ideal of dim {} via {:?}", i.ideal.dim(), i.route),
            None => "no proper ideal found".into(),
        };
        println!("{name}: center {}, derived series {:?}, {ideal}", center(l).dim(), derived_series(l));
    }
    Ok(())
}
