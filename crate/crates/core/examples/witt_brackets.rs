//! Builds W1(n), sl(2) and current algebras and prints a few brackets.

use modlie::arith::Fp;
use modlie::commalg::make_divided_powers;
use modlie::liealg::{current_algebra, make_sl2, make_w1, w1_index, LieAlgebra};

fn show(l: &LieAlgebra, i: usize, j: usize) {
    let terms: Vec<String> = l.bracket_basis(i, j).iter().map(|&(k, c)| format!("{c} {}", l.labels()[k])).collect();
    let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    println!("[{}, {}] = {rhs}", l.labels()[i], l.labels()[j]);
}

fn main() -> modlie::Result<()> {
    let f = Fp::new(5)?;
    let w2 = make_w1(2, &f)?;
    println!("W1(2): dim {}, toral element {:?}", w2.dim(), w2.toral().map(|t| &w2.labels()[t]));
    show(&w2, w1_index(-1), w1_index(4));
    show(&w2, w1_index(2), w1_index(3));
    show(&w2, w1_index(5), w1_index(10));

    let sl2 = make_sl2(&f)?;
    show(&sl2, 0, 2);
    let current = current_algebra(&make_w1(1, &f)?, &make_divided_powers(1, &f)?)?;
    println!("W1(1) (x) O_1: dim {}", current.dim());
    show(&current, 1, 7);
    println!("W1(1) as JSON: {}", make_w1(1, &f)?.to_json());
    Ok(())
}
