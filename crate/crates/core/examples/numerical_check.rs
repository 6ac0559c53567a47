//! Closed-form codimension-3 conditions against the numerator of the cone.

use bourbaki::resolution::numerical_conditions;

fn main() {
    // F and G twists of the depth-zero example: n = 6, t = 0, d = 1
    let a = [10, 7, 7];
    let b = [5, 6, 6, 6, 6, 8, 4, 4];
    let rep = numerical_conditions(6, 0, 0, 1, &a, &b, true);
    println!("c = {}", rep.c);
    println!("q = {} (expected {})", rep.q, rep.q_expected);
    println!("sum b - sum a = {} (expected {})", rep.lhs2, rep.rhs2);
    println!("sum b^2 - sum a^2 = {} (expected {})", rep.lhs3, rep.rhs3);
    println!("all hold: {}", rep.all_hold());

    let off = numerical_conditions(6, 0, 2, 1, &a, &[5, 6, 6, 6, 6, 8, 4, 5], false);
    println!("with one twist changed: {}", off.all_hold());
}
