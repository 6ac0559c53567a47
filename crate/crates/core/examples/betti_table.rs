//! Minimal free resolutions and graded Betti tables.

use bourbaki::free_mod::SubmoduleGens;
use bourbaki::parse::parse_poly;
use bourbaki::poly::PolyRing;
use bourbaki::resolution::{exactness_audit, resolve_ideal};

fn main() -> bourbaki::Result<()> {
    let cases: [(usize, &[&str]); 3] = [
        (3, &["x1", "x2", "x3"]),
        (4, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]),
        (5, &["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x1"]),
    ];
    for (n, gens) in cases {
        let r = PolyRing::rationals(n);
        let polys = gens.iter().map(|s| parse_poly(s, r)).collect::<bourbaki::Result<Vec<_>>>()?;
        let res = resolve_ideal(&SubmoduleGens::ideal(r, polys)?)?;
        let exact = exactness_audit(&res.complex, 1)?.passed();
        println!("S/({}), exact: {exact}", gens.join(", "));
        println!("{}", res.betti);
    }
    Ok(())
}
