//! Lifts a map between modules to their resolutions and takes the mapping cone.
//!
//! `S(-1) → S` by `x1` induces a chain map from the resolution of
//! `S/(x2)` twisted by -1 into the resolution of `S/(x2)`; its cone resolves
//! `S/(x1, x2)`.

use bourbaki::free_mod::{ChainComplex, GradedFreeModule, ModuleMap};
use bourbaki::parse::parse_poly;
use bourbaki::poly::PolyRing;
use bourbaki::resolution::{exactness_audit, lift_chain_map, mapping_cone, minimize, BettiTable};

fn main() -> bourbaki::Result<()> {
    let r = PolyRing::rationals(2);
    let x1 = parse_poly("x1", r)?;
    let x2 = parse_poly("x2", r)?;

    let d = |shift: i64| {
        ModuleMap::new(r, GradedFreeModule::new(vec![1 + shift]), GradedFreeModule::new(vec![shift]), vec![vec![x2.clone()]], 0)
    };
    let a = ChainComplex::from_maps(r, vec![d(1)?], 0)?;
    let b = ChainComplex::from_maps(r, vec![d(0)?], 0)?;
    let alpha0 = ModuleMap::new(r, a.module(0), b.module(0), vec![vec![x1]], 0)?;

    let alpha = lift_chain_map(&a, &b, alpha0)?;
    println!("chain map commutes: {}", alpha.first_failing_square().is_none());
    let cone = mapping_cone(&alpha)?;
    println!("cone exact in positions >= 1: {}", exactness_audit(&cone, 1)?.passed());
    println!("{}", BettiTable::from_complex(&minimize(&cone)?));
    Ok(())
}
