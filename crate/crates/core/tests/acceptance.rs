//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bourbaki::bsequence::{
    extract_b_sequence, functional, phi_from_families, problem_from_beta, reduced_ideal_basis, BSequenceProblem, Shape,
};
use bourbaki::combinat::binomial_i64;
use bourbaki::free_mod::{compose, GradedFreeModule, ModuleMap, SubmoduleGens, Vector};
use bourbaki::groebner::{equal, kernel};
use bourbaki::hilbert::hilbert_from_groebner;
use bourbaki::koszul::{
    differential, e_module, generate_a, generate_b, koszul_complex, koszul_module, selfduality_check, sigma,
};
use bourbaki::manifest::{parse_module_spec, spec_module, Manifest};
use bourbaki::monomial::Monomial;
use bourbaki::parse::parse_poly;
use bourbaki::poly::{Poly, PolyRing};
use bourbaki::resolution::{
    cohomology_pattern, exactness_audit, hilbert_numerator, numerical_conditions, resolve_ideal,
};
use bourbaki::scalar::Rat;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn manifest(name: &str) -> Manifest {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name);
    Manifest::load(&p).expect("example manifest loads")
}

fn example_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn polys(r: PolyRing<Rat>, gens: &[&str]) -> Vec<Poly<Rat>> {
    gens.iter().map(|s| parse_poly(s, r).unwrap()).collect()
}

fn ideal(r: PolyRing<Rat>, gens: &[&str]) -> SubmoduleGens<Rat> {
    SubmoduleGens::ideal(r, polys(r, gens)).unwrap()
}

const EXAMPLE1_IDEAL: [&str; 9] =
    ["x1*x4", "x1*x5", "x1*x6", "x2*x4", "x2*x5", "x2*x6", "x3*x4", "x3*x5", "x3*x6"];

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let mut argv = vec!["bourbaki"];
    argv.extend_from_slice(args);
    let code = bourbaki::cli::run(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&errs))
}

fn criterion1() -> Outcome {
    let r = PolyRing::rationals(6);
    let path = example_path("example1.json");
    let (code, text) = cli(&["verify", &path]);
    ensure!(code == 0, "verify exited {code}: {text}");
    let dir = std::env::temp_dir().join(format!("bourbaki-acceptance-{}", std::process::id()));
    let (code, text) = cli(&["--format", "json", "assemble", &path, "--out", &dir.display().to_string()]);
    ensure!(code == 0, "assemble exited {code}: {text}");
    let written = std::fs::read_to_string(dir.join("ideal.json")).map_err(err)?;
    let _ = std::fs::remove_dir_all(&dir);
    for g in EXAMPLE1_IDEAL {
        ensure!(written.contains(g), "ideal.json lacks {g}");
    }

    let p = manifest("example1.json").problem(r).map_err(err)?;
    ensure!(p.verify(false).map_err(err)?.passed, "verification failed");
    let seq = p.assemble().map_err(err)?;
    let want = polys(r, &EXAMPLE1_IDEAL);
    ensure!(seq.ideal_basis == want, "reduced basis is {:?}", seq.ideal_basis.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    ensure!(seq.krull_dim == 3 && seq.codim == 3, "krull dim of S/I is {}, codim {}", seq.krull_dim, seq.codim);
    let qd = seq.q_derivatives();
    ensure!(qd[0] == BigInt::from(0) && qd[1] == BigInt::from(0) && qd[2] == BigInt::from(0), "Q derivatives {qd:?}");
    ensure!(qd[3] != BigInt::from(0), "Q'''(1) = 0");
    ensure!(seq.q_vanishing == vec![true, true, true, false], "q_vanishing {:?}", seq.q_vanishing);
    ensure!(seq.codim_from_q == 3, "codim from Q is {}", seq.codim_from_q);
    ensure!(seq.exactness.passed() && seq.sequence.holds, "audit failed");
    Ok(format!("9 quadrics, codim 3 both ways, Q'''(1) = {}", qd[3]))
}

fn criterion2() -> Outcome {
    let r = PolyRing::rationals(6);
    let m = manifest("example2.json");
    ensure!(m.beta.len() == 12, "manifest has {} betas", m.beta.len());
    let p = m.problem(r).map_err(err)?;
    let rep = p.verify(true).map_err(err)?;
    ensure!(rep.passed, "verification failed: {:?}", rep.condition_a.first_witness().or(rep.condition_b.first_witness()));
    let nt = rep.nontriviality.ok_or("no non-triviality verdict")?;
    ensure!(nt.non_trivial, "verdict trivial");
    let seq = p.assemble().map_err(err)?;
    ensure!(equal(&seq.ideal, &ideal(r, &EXAMPLE1_IDEAL)).map_err(err)?, "ideal differs from Example 1");
    let num = seq.numerical.clone().ok_or("no numerical report")?;
    ensure!(num.c_inferred, "c was not inferred");
    ensure!(num.all_hold(), "{num:?}");
    ensure!(num.c == seq.c, "inferred c = {} but the functional gives {}", num.c, seq.c);
    Ok(format!("12 betas, non-trivial, ideal = Example 1, conditions hold with c = {}", num.c))
}

fn criterion3() -> Outcome {
    let r = PolyRing::rationals(6);
    let p = manifest("example3.json").problem(r).map_err(err)?;
    let rep = p.verify(true).map_err(err)?;
    ensure!(rep.passed, "verification failed");
    ensure!(rep.nontriviality.map(|n| n.non_trivial).unwrap_or(false), "verdict trivial");
    let seq = p.assemble().map_err(err)?;
    let want = ideal(
        r,
        &["x1^3", "x1^2*x2", "x1^2*x3", "x1^2*x4", "x1^2*x5", "x1^2*x6", "x2^5*x6", "x2^5*x5", "x3*x6^5", "x2*x6^5"],
    );
    ensure!(equal(&seq.ideal, &want).map_err(err)?, "ideal differs");
    ensure!(seq.ideal_basis == reduced_ideal_basis(&want), "reduced bases differ");
    ensure!(seq.codim_three(), "codim {} / {}", seq.codim, seq.codim_from_q);
    let num = seq.numerical.clone().ok_or("no numerical report")?;
    ensure!(num.all_hold(), "{num:?}");
    Ok(format!("non-trivial, 10 generators, codim 3 both ways, c = {}", num.c))
}

fn residue_functional(r: PolyRing<Rat>) -> Vec<Poly<Rat>> {
    (1..=r.nvars()).map(|i| r.var(i)).collect()
}

fn criterion4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut rejected = 0;
    for n in 3..=6 {
        let r = PolyRing::rationals(n);
        let k1 = koszul_module(n, 1);
        let phi = functional(r, &k1, residue_functional(r)).map_err(err)?;
        let e2 = e_module(r, 2, 0).map_err(err)?.submodule;
        ensure!(equal(&kernel(&phi).map_err(err)?, &e2).map_err(err)?, "Ker φ ≠ E_2 for n = {n}");

        let row = phi_from_families(r, 0, Shape::EOnly, &[((1..=n).collect(), r.from_int(1))], &[]).map_err(err)?;
        ensure!(
            equal(&kernel(&functional(r, &k1, row.clone()).map_err(err)?).map_err(err)?, &e2).map_err(err)?,
            "the A family at t = 0 has a different kernel for n = {n}"
        );
        ensure!(extract_b_sequence(r, 0, 0, Shape::EOnly, row.clone()).is_err(), "extraction found a b-sequence, n = {n}");

        // fabricated betas: an element of E_2, and random elements outside it
        let mut attempts: Vec<Vector<Rat>> = vec![e2.gens()[0].clone()];
        for _ in 0..4 {
            let deg = rng.gen_range(1..=2u32);
            let mut v = Vector::zero(r, n);
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    let c = r.from_int(rng.gen_range(-2..=2));
                    v = v.add(&Vector::unit(r, n, i, random_monomial(&mut rng, r, deg - 1).mul(&c)));
                }
            }
            if !v.is_zero() {
                attempts.push(v);
            }
        }
        for beta in attempts {
            let deg = beta.degree(k1.twists()).unwrap();
            let g = GradedFreeModule::new(vec![deg]);
            let f = ModuleMap::zero(r, GradedFreeModule::default(), g, 0);
            let verdict = BSequenceProblem::new(r, 0, 0, Shape::EOnly, vec![beta.clone()], row.clone(), f, Vec::new(), None)
                .and_then(|p| p.verify(false));
            match verdict {
                Ok(rep) => ensure!(!rep.passed && !rep.condition_a.holds, "accepted beta = {beta} for n = {n}"),
                Err(_) => {}
            }
            rejected += 1;
        }
    }
    Ok(format!("Ker φ = E_2 for n = 3..6, {rejected} fabricated betas rejected"))
}

fn random_monomial(rng: &mut ChaCha8Rng, r: PolyRing<Rat>, deg: u32) -> Poly<Rat> {
    let n = r.nvars();
    let mut e = vec![0u16; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    r.monomial(Monomial::from_exponents(&e))
}

fn random_sign(rng: &mut ChaCha8Rng, r: PolyRing<Rat>) -> Poly<Rat> {
    r.from_int(if rng.gen_bool(0.5) { 1 } else { -1 })
}

struct RandomPhi {
    t: usize,
    d: i64,
    shape: Shape,
    row: Vec<Poly<Rat>>,
}

fn random_phi(rng: &mut ChaCha8Rng, r: PolyRing<Rat>) -> Option<RandomPhi> {
    let n = r.nvars();
    let shape = if rng.gen_bool(0.5) { Shape::EOnly } else { Shape::EPlusTop };
    let t = rng.gen_range(0..=n - 2);
    let k = rng.gen_range(0..=1u32);
    let subsets: Vec<Vec<usize>> = bourbaki::combinat::subsets_colex(n, n - t);
    let mut a_terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let l = subsets.choose(rng).unwrap().clone();
        a_terms.push((l, random_monomial(rng, r, k).mul(&random_sign(rng, r))));
    }
    let mut b_terms = Vec::new();
    let mut d = 0;
    if shape == Shape::EPlusTop {
        let k2 = rng.gen_range(0..=1u32);
        d = k as i64 - k2 as i64 - t as i64 - 2 + n as i64;
        let pairs = bourbaki::koszul::b_pairs(n);
        for _ in 0..rng.gen_range(1..=2) {
            let (i, j) = *pairs.choose(rng).unwrap();
            b_terms.push((i, j, random_monomial(rng, r, k2).mul(&random_sign(rng, r))));
        }
    }
    let row = phi_from_families(r, t, shape, &a_terms, &b_terms).ok()?;
    if row.iter().all(|p| p.is_zero()) {
        return None;
    }
    Some(RandomPhi { t, d, shape, row })
}

/// Adds random multiples of `Ker ε` generators of matching degree.
fn perturb(rng: &mut ChaCha8Rng, p: &BSequenceProblem<Rat>, b: &Vector<Rat>) -> Vector<Rat> {
    let r = p.ring;
    let deg = b.degree(p.u.twists()).unwrap();
    let mut out = b.clone();
    for (g, gd) in p.ker_eps.gens().iter().zip(p.ker_eps.degrees()) {
        if gd <= deg && rng.gen_bool(0.3) {
            let m = random_monomial(rng, r, (deg - gd) as u32).mul(&random_sign(rng, r));
            out = out.add(&g.scale(&m));
        }
    }
    out
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut assembled = 0;
    let mut random_f_checked = 0;
    let mut tries = 0;
    while assembled < 30 {
        tries += 1;
        ensure!(tries < 400, "only {assembled} valid instances after {tries} draws");
        let n = rng.gen_range(3..=4);
        let r = PolyRing::rationals(n);
        let Some(phi) = random_phi(&mut rng, r) else { continue };
        let Ok(base) = extract_b_sequence(r, phi.t, phi.d, phi.shape, phi.row.clone()) else { continue };
        let mut beta: Vec<Vector<Rat>> = base.beta.iter().map(|b| perturb(&mut rng, &base, b)).collect();
        if rng.gen_bool(0.4) {
            let j = rng.gen_range(0..beta.len());
            let extra = beta[j].scale(&random_monomial(&mut rng, r, 1));
            beta.push(perturb(&mut rng, &base, &extra));
        }
        let p = problem_from_beta(r, phi.t, phi.d, phi.shape, phi.row.clone(), beta).map_err(err)?;
        let rep = p.verify(false).map_err(err)?;
        ensure!(rep.condition_a.holds && rep.condition_b.holds, "synthetic instance fails (a) or (b): n = {n}, t = {}", phi.t);
        let seq = p.assemble().map_err(|e| format!("(a) and (b) hold but assembly fails: {e}"))?;
        ensure!(seq.exactness.passed(), "exactness audit fails at {:?}", seq.exactness.first_failure());
        ensure!(seq.sequence.holds && seq.q_matches_gb, "sequence audit fails");

        // back from the exact sequence: β = columns of g, the same φ and f
        let again = BSequenceProblem::new(
            r,
            phi.t,
            phi.d,
            phi.shape,
            seq.g.columns(),
            phi.row.clone(),
            seq.f_maps[0].clone(),
            seq.f_maps[1..].to_vec(),
            None,
        )
        .map_err(err)?;
        let rep2 = again.verify(false).map_err(err)?;
        ensure!(rep2.condition_a.holds && rep2.condition_b.holds, "extracted data do not re-verify");
        let extracted = extract_b_sequence(r, phi.t, phi.d, phi.shape, phi.row.clone()).map_err(err)?;
        let rep3 = extracted.verify(false).map_err(err)?;
        ensure!(rep3.condition_a.holds && rep3.condition_b.holds, "extraction from φ does not re-verify");

        // a random monomial f on the same G: whenever it verifies, assembly must audit
        let g = p.g_module();
        let fcols: Vec<Vector<Rat>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let top = g.twists().iter().max().copied().unwrap_or(0) + 1;
                let entries = g.twists().iter().map(|&tw| {
                    if rng.gen_bool(0.5) { random_monomial(&mut rng, r, (top - tw) as u32) } else { r.zero() }
                });
                Vector::new(entries.collect())
            })
            .collect();
        let src = GradedFreeModule::new(vec![g.twists().iter().max().copied().unwrap_or(0) + 1; fcols.len()]);
        let f = ModuleMap::from_columns(r, src, g, &fcols, 0).map_err(err)?;
        let random = BSequenceProblem::new(r, phi.t, phi.d, phi.shape, p.beta.clone(), phi.row.clone(), f, Vec::new(), None)
            .map_err(err)?;
        if let Ok(rep) = random.verify(false) {
            if rep.condition_a.holds && rep.condition_b.holds {
                let s = random.assemble().map_err(|e| format!("random f verifies but assembly fails: {e}"))?;
                ensure!(s.exactness.passed() && s.sequence.holds, "random f verifies but the audit fails");
            }
        }
        random_f_checked += 1;
        assembled += 1;
    }
    Ok(format!("{assembled} synthetic instances assembled and re-extracted, {random_f_checked} random f probed"))
}

fn criterion6() -> Outcome {
    for n in 1..=6 {
        let r = PolyRing::rationals(n);
        ensure!(koszul_complex(r, 0, n, 0).map_err(err)?.is_complex(), "∂² ≠ 0 for n = {n}");
        for s in 2..=n {
            let dd = compose(&differential(r, s - 1).map_err(err)?, &differential(r, s).map_err(err)?).map_err(err)?;
            ensure!(dd.is_zero(), "∂_{}∂_{s} ≠ 0 for n = {n}", s - 1);
        }
        for s in 1..=n {
            let rank = e_module(r, s, 0).map_err(err)?.rank();
            ensure!(rank == binomial_i64(n as i64 - 1, s as i64 - 1), "rank E_{s} = {rank} for n = {n}");
        }
    }
    for n in 1..=5 {
        let r = PolyRing::rationals(n);
        let c = koszul_complex(r, 0, n, 0).map_err(err)?;
        let audit = exactness_audit(&c, 1).map_err(err)?;
        ensure!(audit.passed(), "Koszul complex not exact at {:?} for n = {n}", audit.first_failure());
        let h = hilbert_numerator(&c).values(0, 6);
        ensure!(h[0] == BigInt::from(1) && h[1..].iter().all(|v| *v == BigInt::from(0)), "H_0 is not K for n = {n}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let mut pool: Vec<usize> = (1..=10).collect();
        pool.shuffle(&mut rng);
        let a = rng.gen_range(0..=5);
        let b = rng.gen_range(0..=5);
        let mut j = pool[..a].to_vec();
        let mut k = pool[a..a + b].to_vec();
        j.sort_unstable();
        k.sort_unstable();
        let lhs = sigma(&j, &k).map_err(err)? * sigma(&k, &j).map_err(err)?;
        let rhs = if (j.len() * k.len()) % 2 == 0 { 1 } else { -1 };
        ensure!(lhs == rhs, "σ({j:?},{k:?})σ({k:?},{j:?}) = {lhs}");
    }

    for n in 2..=6 {
        let r = PolyRing::rationals(n);
        for t in 0..=n - 2 {
            let d = differential(r, t + 2).map_err(err)?;
            for (idx, a) in generate_a(r, t).map_err(err)?.iter().enumerate() {
                let z = compose(&a.to_functional().map_err(err)?, &d).map_err(err)?;
                ensure!(z.is_zero(), "A_{} does not kill E_{} (n = {n})", idx + 1, t + 2);
            }
        }
        let d = differential(r, n).map_err(err)?;
        for (idx, b) in generate_b(r).map_err(err)?.iter().enumerate() {
            ensure!(compose(&b.to_functional().map_err(err)?, &d).map_err(err)?.is_zero(), "B #{idx} does not kill E_n");
        }
        for i in 1..=n {
            ensure!(selfduality_check(r, i).map_err(err)?, "self-duality fails at n = {n}, i = {i}");
        }
    }
    Ok("∂²=0, exactness, 200 σ pairs, A/B annihilation, self-duality, ranks".into())
}

fn ideal_corpus() -> Vec<(usize, Vec<&'static str>)> {
    vec![
        (6, EXAMPLE1_IDEAL.to_vec()),
        (
            6,
            vec!["x1^3", "x1^2*x2", "x1^2*x3", "x1^2*x4", "x1^2*x5", "x1^2*x6", "x2^5*x6", "x2^5*x5", "x3*x6^5", "x2*x6^5"],
        ),
        (3, vec!["x1", "x2", "x3"]),
        (3, vec!["x1^2", "x2^2", "x3^2"]),
        (3, vec!["x1*x2", "x1*x3", "x2*x3"]),
        (4, vec!["x1*x2 - x3*x4"]),
        (4, vec!["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]),
        (4, vec!["x1^2 + x2^2 + x3^2", "x1*x4", "x2*x3 - x4^2"]),
        (3, vec!["x1^2*x2", "x2^3 - x1*x3^2", "x3^3"]),
        (5, vec!["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x1"]),
        (4, vec!["x1^3 - x2*x3*x4", "x2^2 - x1*x4"]),
        (2, vec!["x1^4", "x1^2*x2^2", "x2^5"]),
    ]
}

/// `Σ_j coeff_j j^(k)` over `(exponent, coeff)` pairs.
fn falling_derivative_at_one(q: &[(i64, i64)], k: u32) -> i128 {
    q.iter()
        .map(|&(e, c)| {
            let mut f: i128 = 1;
            for m in 0..k as i64 {
                f *= (e - m) as i128;
            }
            c as i128 * f
        })
        .sum()
}

fn criterion7() -> Outcome {
    let corpus = ideal_corpus();
    for (n, gens) in &corpus {
        let r = PolyRing::rationals(*n);
        let id = ideal(r, gens);
        let res = resolve_ideal(&id).map_err(err)?;
        let from_res = hilbert_numerator(&res.complex).values(0, 12);
        let from_gb = hilbert_from_groebner(&id, 12);
        ensure!(from_res == from_gb, "Hilbert functions differ for {gens:?}: {from_res:?} vs {from_gb:?}");
    }
    for name in ["example1.json", "example3.json"] {
        let r = PolyRing::rationals(6);
        let seq = manifest(name).problem(r).map_err(err)?.assemble().map_err(err)?;
        let cone = hilbert_numerator(&seq.resolution).values(0, 12);
        ensure!(cone == hilbert_from_groebner(&seq.ideal, 12), "cone Hilbert function differs for {name}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(4..=8i64);
        let t = rng.gen_range(0..=n - 4);
        let d = rng.gen_range(-3..=3i64);
        let p = rng.gen_range(0..=5usize);
        let q = p + (binomial_i64(n - 1, t) + n - 2) as usize;
        let a: Vec<i64> = (0..p).map(|_| rng.gen_range(0..=12)).collect();
        let b: Vec<i64> = (0..q).map(|_| rng.gen_range(0..=12)).collect();
        let c = rng.gen_range(-4..=6i64);
        // Betti shape of the cone: S, K_{t+i}(-c), K_{n-1}(d-c), K_n(d-c), G(-c), F(-c)
        let mut qpoly = vec![(0i64, 1i64), (n - 1 + c - d, -n), (n + c - d, 1)];
        qpoly.extend(b.iter().map(|&x| (x + c, 1)));
        qpoly.extend(a.iter().map(|&x| (x + c, -1)));
        for i in 1..=n - t {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            qpoly.push((t + i + c, sign * binomial_i64(n, t + i)));
        }
        ensure!(falling_derivative_at_one(&qpoly, 0) == 0, "Q(1) ≠ 0 although q = p + C(n-1,t) + n - 2");

        let fixed = numerical_conditions(n, t, c, d, &a, &b, false);
        ensure!(fixed.condition1, "condition 1 fails on a tuple built to satisfy it");
        let q1 = falling_derivative_at_one(&qpoly, 1);
        let gap2 = BigInt::from(fixed.lhs2) - &fixed.rhs2;
        ensure!(BigInt::from(q1) == gap2, "Q'(1) = {q1} but lhs2 - rhs2 = {gap2}");
        ensure!((q1 == 0) == fixed.condition2, "condition 2 disagrees with Q'(1)");

        let solved = numerical_conditions(n, t, 0, d, &a, &b, true);
        let cs = solved.c;
        let mut qs = vec![(0i64, 1i64), (n - 1 + cs - d, -n), (n + cs - d, 1)];
        qs.extend(b.iter().map(|&x| (x + cs, 1)));
        qs.extend(a.iter().map(|&x| (x + cs, -1)));
        for i in 1..=n - t {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            qs.push((t + i + cs, sign * binomial_i64(n, t + i)));
        }
        ensure!(solved.condition2 && falling_derivative_at_one(&qs, 1) == 0, "solved c does not kill Q'(1)");
        let q2 = falling_derivative_at_one(&qs, 2);
        let gap3 = BigInt::from(solved.lhs3) - &solved.rhs3;
        ensure!(BigInt::from(q2) == gap3, "Q''(1) = {q2} but lhs3 - rhs3 = {gap3}");
        ensure!((q2 == 0) == solved.condition3, "condition 3 disagrees with Q''(1)");
    }
    Ok(format!("{} ideals + 2 cones on degrees 0..12, 50 numerical tuples", corpus.len()))
}

fn criterion8() -> Outcome {
    let r = PolyRing::rationals(6);
    let e2 = e_module(r, 2, 0).map_err(err)?.module;
    let pat = cohomology_pattern(&e2, 6).map_err(err)?;
    let hi = pat.higher();
    ensure!(hi.len() == 1, "E_2 has {} nonzero higher Ext", hi.len());
    ensure!(hi[0].j == 4 && hi[0].total_dimension == Some(BigInt::from(1)), "E_2: j = {}, dim {:?}", hi[0].j, hi[0].total_dimension);

    let terms = parse_module_spec("E(6,1,0)+E(6,5,1)").map_err(err)?;
    let m = spec_module(r, &terms).map_err(err)?;
    let pat = cohomology_pattern(&m, 6).map_err(err)?;
    let hi = pat.higher();
    ensure!(hi.len() == 2, "E_1 ⊕ E_5(1) has {} nonzero higher Ext", hi.len());
    for e in &hi {
        ensure!(e.total_dimension == Some(BigInt::from(1)), "Ext^{} has dimension {:?}", e.j, e.total_dimension);
    }
    let js: Vec<usize> = hi.iter().map(|e| e.j).collect();
    ensure!(js == vec![1, 5], "nonzero Ext at {js:?}");
    Ok("E_2: Ext^4 of dim 1; E_1 ⊕ E_5(1): Ext^1, Ext^5 of dim 1".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("example 1 reproduction", criterion1),
        ("example 2 reproduction", criterion2),
        ("example 3 reproduction", criterion3),
        ("residue functional kernel", criterion4),
        ("synthetic b-sequences", criterion5),
        ("koszul invariants", criterion6),
        ("hilbert consistency", criterion7),
        ("cohomology patterns", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {} {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
