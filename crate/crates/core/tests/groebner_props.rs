use proptest::prelude::*;

use bourbaki::free_mod::{SubmoduleGens, Vector};
use bourbaki::groebner::{contains, groebner, intersect, kernel, syzygies};
use bourbaki::hilbert::hilbert_from_groebner;
use bourbaki::monomial::Monomial;
use bourbaki::poly::{Poly, PolyRing};
use bourbaki::resolution::{hilbert_numerator, resolve_ideal};
use bourbaki::scalar::Rat;

const N: usize = 3;

fn ring() -> PolyRing<Rat> {
    PolyRing::rationals(N)
}

/// A homogeneous polynomial of degree `deg` from (exponent choice, coefficient) pairs.
fn build(deg: u32, terms: &[(Vec<usize>, i64)]) -> Poly<Rat> {
    let r = ring();
    let mut p = r.zero();
    for (vars, c) in terms {
        let mut e = [0u16; N];
        for v in vars.iter().take(deg as usize) {
            e[v % N] += 1;
        }
        let filled: u32 = e.iter().map(|&x| x as u32).sum();
        e[0] += (deg - filled) as u16;
        p = p.add(&r.term(r.scalar(*c), Monomial::from_exponents(&e)));
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = Poly<Rat>> {
    (1u32..=3, prop::collection::vec((prop::collection::vec(0usize..N, 3), -3i64..=3), 1..4))
        .prop_map(|(deg, terms)| build(deg, &terms))
}

fn ideal_strategy() -> impl Strategy<Value = Vec<Poly<Rat>>> {
    prop::collection::vec(poly_strategy(), 1..4).prop_filter("nonzero", |g| g.iter().any(|p| !p.is_zero()))
}

fn ideal_of(gens: &[Poly<Rat>]) -> SubmoduleGens<Rat> {
    let nz: Vec<Poly<Rat>> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    SubmoduleGens::ideal(ring(), nz).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_reduce_to_zero(gens in ideal_strategy()) {
        let id = ideal_of(&gens);
        let gb = groebner(&id);
        for g in id.gens() {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn basis_is_stable(gens in ideal_strategy()) {
        let id = ideal_of(&gens);
        let gb = groebner(&id);
        let again = groebner(&SubmoduleGens::new(ring(), id.ambient().clone(), gb.elements()).unwrap());
        prop_assert_eq!(gb.elements(), again.elements());
    }

    #[test]
    fn combinations_are_members(gens in ideal_strategy(), mult in prop::collection::vec(poly_strategy(), 3)) {
        let id = ideal_of(&gens);
        let gb = groebner(&id);
        let mut acc: Option<Vector<Rat>> = None;
        for (g, h) in id.gens().iter().zip(mult.iter().cycle()) {
            let term = g.scale(h);
            acc = Some(match acc { None => term, Some(a) => a.add(&term) });
        }
        let v = acc.unwrap();
        if v.is_homogeneous(id.ambient().twists()) {
            prop_assert!(gb.contains_vector(&v).unwrap());
        }
    }

    #[test]
    fn syzygies_vanish(gens in ideal_strategy()) {
        let id = ideal_of(&gens);
        let map = id.inclusion_map();
        for s in syzygies(&id).gens() {
            prop_assert!(map.apply(s).unwrap().is_zero());
        }
        for s in kernel(&map).unwrap().gens() {
            prop_assert!(map.apply(s).unwrap().is_zero());
        }
    }

    #[test]
    fn intersection_is_contained_in_both(a in ideal_strategy(), b in ideal_strategy()) {
        let ia = ideal_of(&a);
        let ib = ideal_of(&b);
        let both = intersect(&ia, &ib).unwrap();
        prop_assert!(contains(&ia, &both).unwrap());
        prop_assert!(contains(&ib, &both).unwrap());
        // products lie in the intersection
        let prod: Vec<Poly<Rat>> = ia.ideal_gens().iter().flat_map(|p| ib.ideal_gens().into_iter().map(move |q| p.mul(&q))).collect();
        prop_assert!(contains(&both, &ideal_of(&prod)).unwrap());
    }

    #[test]
    fn resolution_matches_standard_monomials(gens in ideal_strategy()) {
        let id = ideal_of(&gens);
        let res = resolve_ideal(&id).unwrap();
        prop_assert_eq!(hilbert_numerator(&res.complex).values(0, 10), hilbert_from_groebner(&id, 10));
    }
}
