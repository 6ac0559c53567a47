//! Hilbert numerator, dimension and Hilbert function of a quotient ring.

use bourbaki::free_mod::SubmoduleGens;
use bourbaki::groebner::krull_dim;
use bourbaki::hilbert::{hilbert_from_groebner, quotient_numerator};
use bourbaki::parse::parse_poly;
use bourbaki::poly::PolyRing;

fn main() -> bourbaki::Result<()> {
    let r = PolyRing::rationals(6);
    let gens = ["x1*x4", "x1*x5", "x1*x6", "x2*x4", "x2*x5", "x2*x6", "x3*x4", "x3*x5", "x3*x6"]
        .iter()
        .map(|s| parse_poly(s, r))
        .collect::<bourbaki::Result<Vec<_>>>()?;
    let ideal = SubmoduleGens::ideal(r, gens)?;

    let hn = quotient_numerator(&ideal);
    println!("Q = {}", hn.q);
    println!("Q(1), Q'(1), Q''(1), Q'''(1) vanish: {:?}", hn.q_vanishing(4));
    println!("dim S/I = {} (from Q), {} (from leading terms)", hn.dimension(), krull_dim(&ideal));
    println!("H(d), d = 0..10: {:?}", hn.values(0, 10).iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("by counting:      {:?}", hilbert_from_groebner(&ideal, 10).iter().map(|v| v.to_string()).collect::<Vec<_>>());
    Ok(())
}
