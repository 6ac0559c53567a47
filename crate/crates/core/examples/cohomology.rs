//! Graded Ext modules into S(-n) for syzygy modules of the residue field.

use bourbaki::manifest::{parse_module_spec, spec_module, spec_nvars};
use bourbaki::poly::PolyRing;
use bourbaki::resolution::cohomology_pattern;

fn main() -> bourbaki::Result<()> {
    for spec in ["E(6,2,0)", "E(6,1,0)+E(6,5,1)", "E(4,3,0)", "free(4,0,2)"] {
        let terms = parse_module_spec(spec)?;
        let r = PolyRing::rationals(spec_nvars(&terms));
        let m = spec_module(r, &terms)?;
        let pattern = cohomology_pattern(&m, r.nvars())?;
        println!("{spec}");
        let higher = pattern.higher();
        if higher.is_empty() {
            println!("  (none)");
        }
        for e in higher {
            let dims = e.finite_length.clone().unwrap_or_default();
            let shown: Vec<String> = dims.iter().map(|(deg, dim)| format!("{dim}@{deg}")).collect();
            println!("  Ext^{} (H^{}_m): {}", e.j, e.local_index, shown.join(" "));
        }
    }
    Ok(())
}
