//! Koszul differentials, syzygy modules E_s and the functional families A and B.

use bourbaki::free_mod::compose;
use bourbaki::koszul::{differential, e_module, generate_a, generate_b, sigma};
use bourbaki::poly::PolyRing;

fn main() -> bourbaki::Result<()> {
    let n = 4;
    let r = PolyRing::rationals(n);

    println!("σ([2,4],[1,3]) = {}", sigma(&[2, 4], &[1, 3])?);
    for s in 1..=n {
        let e = e_module(r, s, 0)?;
        println!("E_{s}: rank {}, {} generators", e.rank(), e.submodule.len());
    }

    let t = 1;
    let d = differential(r, t + 2)?;
    for (k, a) in generate_a(r, t)?.iter().enumerate() {
        let kills = compose(&a.to_functional()?, &d)?.is_zero();
        println!("A{} = {a}   kills E_{}: {kills}", k + 1, t + 2);
    }
    let top = differential(r, n)?;
    for b in generate_b(r)? {
        println!("{b}   kills E_{n}: {}", compose(&b.to_functional()?, &top)?.is_zero());
    }
    Ok(())
}
