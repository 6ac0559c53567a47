//! Verifies and assembles the three shipped manifests.
//!
//! ```text
//! cargo run --example bourbaki_sequences
//! ```

use std::path::PathBuf;

use bourbaki::manifest::Manifest;
use bourbaki::poly::PolyRing;

fn main() -> bourbaki::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    for name in ["example1.json", "example2.json", "example3.json"] {
        let m = Manifest::load(&dir.join(name))?;
        let p = m.problem(PolyRing::rationals(m.n))?;
        let report = p.verify(true)?;
        println!("== {name}: {}", m.description.as_deref().unwrap_or(""));
        println!("verified: {}", report.passed);
        if let Some(nt) = &report.nontriviality {
            println!("non-trivial: {} (mixed beta {:?})", nt.non_trivial, nt.mixed_betas);
        }
        let seq = p.assemble()?;
        let ideal: Vec<String> = seq.ideal_basis.iter().map(|g| g.to_string()).collect();
        println!("I = ({})", ideal.join(", "));
        println!("codim {} (dimension), {} (numerator)", seq.codim, seq.codim_from_q);
        println!("Q = {}", seq.numerator.q);
        println!("{}", seq.betti);
        if let Some(num) = &seq.numerical {
            println!("numerical conditions hold: {} (c = {})", num.all_hold(), num.c);
        }
    }
    Ok(())
}
