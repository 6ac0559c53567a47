//! Reduced Gröbner basis of the twisted cubic and a few membership queries.

use bourbaki::free_mod::{SubmoduleGens, Vector};
use bourbaki::groebner::groebner;
use bourbaki::parse::parse_poly;
use bourbaki::poly::PolyRing;

fn main() -> bourbaki::Result<()> {
    let r = PolyRing::rationals(4);
    let gens = ["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]
        .iter()
        .map(|s| parse_poly(s, r))
        .collect::<bourbaki::Result<Vec<_>>>()?;
    let ideal = SubmoduleGens::ideal(r, gens)?;
    let gb = groebner(&ideal);
    println!("reduced basis ({} elements):", gb.len());
    for v in gb.elements() {
        println!("  {}", v.entry(0));
    }

    for q in ["x1*x3^2 - x2^2*x3", "x1^2*x4 - x2^3", "x1*x2 - x3^2"] {
        let p = parse_poly(q, r)?;
        let v = Vector::new(vec![p.clone()]);
        let nf = gb.normal_form(&v)?;
        println!("{q}: member = {}, normal form = {}", nf.is_zero(), nf.entry(0));
    }
    Ok(())
}
