//! Starts from a functional alone, extracts a b-sequence and rebuilds the
//! Bourbaki sequence.

use bourbaki::bsequence::{extract_b_sequence, phi_from_families, Shape};
use bourbaki::parse::parse_poly;
use bourbaki::poly::PolyRing;

fn main() -> bourbaki::Result<()> {
    let r = PolyRing::rationals(4);
    let t = 1;
    let row = phi_from_families(
        r,
        t,
        Shape::EOnly,
        &[(vec![1, 2, 3], parse_poly("x4", r)?), (vec![2, 3, 4], parse_poly("x1", r)?)],
        &[],
    )?;
    let p = extract_b_sequence(r, t, 0, Shape::EOnly, row)?;
    for i in 0..p.q() {
        println!("beta_{} = {}", i + 1, p.beta_koszul(i)?);
    }
    let report = p.verify(false)?;
    println!("condition (a): {}, condition (b): {}", report.condition_a.holds, report.condition_b.holds);
    let seq = p.assemble()?;
    let ideal: Vec<String> = seq.ideal_basis.iter().map(|g| g.to_string()).collect();
    println!("I = ({})", ideal.join(", "));
    println!("exactness audit: {}", seq.exactness.passed());
    println!("{}", seq.betti);
    Ok(())
}
