//! Gröbner bases of homogeneous submodules of graded free modules.
//!
//! The module order compares twisted degree first, then the ring's monomial
//! order, then position (lower index is larger). Computations run degree by
//! degree with the Gebauer–Möller pair criteria. Syzygies and lift
//! certificates come from a single augmented run on `(g_k, e_k)` where the
//! `g`-block dominates the `e`-block.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::free_mod::{GradedFreeModule, ModuleMap, SubmoduleGens, Vector};
use crate::monomial::{MonoOrder, Monomial};
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Term {
    m: Monomial,
    c: usize,
}

type SVec<S> = Vec<(Term, S)>;

#[derive(Clone, Debug)]
struct Order {
    twists: Vec<i64>,
    /// Components `>= split` form the lower block.
    split: usize,
    mono: MonoOrder,
}

impl Order {
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let ba = a.c >= self.split;
        let bb = b.c >= self.split;
        if ba != bb {
            return if ba { Ordering::Less } else { Ordering::Greater };
        }
        let da = a.m.degree() as i64 + self.twists[a.c];
        let db = b.m.degree() as i64 + self.twists[b.c];
        da.cmp(&db).then_with(|| a.m.cmp_by(&b.m, self.mono)).then_with(|| b.c.cmp(&a.c))
    }

    fn upper(&self, t: &Term) -> bool {
        t.c < self.split
    }
}

fn to_svec<S: Scalar>(v: &Vector<S>, offset: usize, ord: &Order) -> SVec<S> {
    let mut out: SVec<S> = Vec::new();
    for (i, p) in v.entries().iter().enumerate() {
        for (m, c) in p.terms() {
            out.push((Term { m: *m, c: i + offset }, c.clone()));
        }
    }
    out.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    out
}

fn from_svec<S: Scalar>(v: &[(Term, S)], ring: PolyRing<S>, rank: usize, offset: usize) -> Vector<S> {
    let mut buckets: Vec<Vec<(Monomial, S)>> = vec![Vec::new(); rank];
    for (t, c) in v {
        if t.c >= offset && t.c < offset + rank {
            buckets[t.c - offset].push((t.m, c.clone()));
        }
    }
    Vector::new(buckets.into_iter().map(|b| ring.from_terms(b)).collect())
}

/// `a - c * m * b`, both sorted decreasingly.
fn sub_scaled<S: Scalar>(a: &[(Term, S)], c: &S, m: &Monomial, b: &[(Term, S)], ord: &Order) -> SVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let tb = Term { m: b[j].0.m.mul(m), c: b[j].0.c };
        if i == a.len() {
            out.push((tb, c.mul(&b[j].1).neg()));
            j += 1;
            continue;
        }
        match ord.cmp(&a[i].0, &tb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((tb, c.mul(&b[j].1).neg()));
                j += 1;
            }
            Ordering::Equal => {
                let v = a[i].1.sub(&c.mul(&b[j].1));
                if !v.is_zero() {
                    out.push((tb, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_monic<S: Scalar>(v: &mut SVec<S>) {
    if let Some((_, lc)) = v.first() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            for (_, c) in v.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    deg: i64,
    coprime: bool,
}

/// Reducer over a list of monic upper-block elements.
struct Basis<S: Scalar> {
    elems: Vec<SVec<S>>,
    leads: Vec<Term>,
    by_comp: Vec<Vec<usize>>,
    /// Elements excluded from reduction (used while interreducing).
    skip: Option<usize>,
}

impl<S: Scalar> Basis<S> {
    fn new(ncomp: usize) -> Self {
        Basis { elems: Vec::new(), leads: Vec::new(), by_comp: vec![Vec::new(); ncomp], skip: None }
    }

    fn divisor(&self, t: &Term) -> Option<usize> {
        self.by_comp[t.c].iter().copied().find(|&k| Some(k) != self.skip && self.leads[k].m.divides(&t.m))
    }

    /// Reduces upper-block terms. With `full == false` only the leading
    /// upper-block term is reduced until it is irreducible.
    fn reduce(&self, mut v: SVec<S>, ord: &Order, full: bool) -> SVec<S> {
        let mut i = 0;
        while i < v.len() {
            let t = v[i].0;
            if !ord.upper(&t) {
                break;
            }
            match self.divisor(&t) {
                Some(k) => {
                    let q = self.leads[k].m.quotient_of(&t.m);
                    let c = v[i].1.clone();
                    v = sub_scaled(&v, &c, &q, &self.elems[k], ord);
                }
                None if full => i += 1,
                None => break,
            }
        }
        v
    }

    fn push(&mut self, v: SVec<S>) -> usize {
        let k = self.elems.len();
        let t = v[0].0;
        self.leads.push(t);
        self.by_comp[t.c].push(k);
        self.elems.push(v);
        k
    }
}

struct RunOutput<S: Scalar> {
    basis: Basis<S>,
    syzygies: Vec<SVec<S>>,
    kept: Vec<usize>,
}

/// Degree-by-degree Buchberger on homogeneous inputs `(vector, degree)`.
fn run<S: Scalar>(ord: &Order, inputs: Vec<(SVec<S>, i64)>, product_criterion: bool) -> RunOutput<S> {
    let mut order: Vec<usize> = (0..inputs.len()).collect();
    order.sort_by_key(|&k| inputs[k].1);
    let mut basis: Basis<S> = Basis::new(ord.twists.len());
    let mut pairs: Vec<Pair> = Vec::new();
    let mut syzygies = Vec::new();
    let mut kept = Vec::new();
    let mut next = 0;

    let insert = |basis: &mut Basis<S>, pairs: &mut Vec<Pair>, mut v: SVec<S>| {
        make_monic(&mut v);
        let lt = v[0].0;
        let k = basis.elems.len();
        let mut cand: Vec<Pair> = basis.by_comp[lt.c]
            .iter()
            .map(|&i| {
                let li = basis.leads[i].m;
                let lcm = li.lcm(&lt.m);
                Pair { i, j: k, lcm, comp: lt.c, deg: lcm.degree() as i64 + ord.twists[lt.c], coprime: li.is_coprime(&lt.m) }
            })
            .collect();
        pairs.retain(|p| {
            !(p.comp == lt.c
                && lt.m.divides(&p.lcm)
                && basis.leads[p.i].m.lcm(&lt.m) != p.lcm
                && basis.leads[p.j].m.lcm(&lt.m) != p.lcm)
        });
        let snapshot: Vec<Monomial> = cand.iter().map(|p| p.lcm).collect();
        cand.retain(|p| !snapshot.iter().any(|l| l.divides(&p.lcm) && *l != p.lcm));
        let mut chosen: Vec<Pair> = Vec::new();
        let mut dropped: Vec<Monomial> = Vec::new();
        for p in cand {
            if dropped.contains(&p.lcm) {
                continue;
            }
            if let Some(pos) = chosen.iter().position(|q| q.lcm == p.lcm) {
                if product_criterion && p.coprime {
                    chosen.remove(pos);
                    dropped.push(p.lcm);
                }
                continue;
            }
            if product_criterion && p.coprime {
                dropped.push(p.lcm);
                continue;
            }
            chosen.push(p);
        }
        pairs.extend(chosen);
        basis.push(v);
    };

    loop {
        let dp = pairs.iter().map(|p| p.deg).min();
        let di = order.get(next).map(|&k| inputs[k].1);
        let d = match (dp, di) {
            (None, None) => break,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let (mut now, rest): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.deg == d);
        pairs = rest;
        now.sort_by(|a, b| ord.cmp(&Term { m: a.lcm, c: a.comp }, &Term { m: b.lcm, c: b.comp }).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
        for p in now {
            let qi = basis.leads[p.i].m.quotient_of(&p.lcm);
            let qj = basis.leads[p.j].m.quotient_of(&p.lcm);
            let one = basis.elems[p.i][0].1.clone();
            let left: SVec<S> = basis.elems[p.i].iter().map(|(t, c)| (Term { m: t.m.mul(&qi), c: t.c }, c.clone())).collect();
            let s = sub_scaled(&left, &one, &qj, &basis.elems[p.j], ord);
            let r = basis.reduce(s, ord, false);
            match r.first() {
                Some((t, _)) if ord.upper(t) => insert(&mut basis, &mut pairs, r),
                Some(_) => syzygies.push(r),
                None => {}
            }
        }
        while next < order.len() && inputs[order[next]].1 == d {
            let k = order[next];
            next += 1;
            let r = basis.reduce(inputs[k].0.clone(), ord, false);
            match r.first() {
                Some((t, _)) if ord.upper(t) => {
                    kept.push(k);
                    insert(&mut basis, &mut pairs, r);
                }
                Some(_) => syzygies.push(r),
                None => {}
            }
        }
    }

    // interreduce tails
    for k in 0..basis.elems.len() {
        basis.skip = Some(k);
        let v = std::mem::take(&mut basis.elems[k]);
        let lead = v[0].clone();
        let tail = basis.reduce(v[1..].to_vec(), ord, true);
        let mut w = vec![lead];
        w.extend(tail);
        basis.elems[k] = w;
    }
    basis.skip = None;
    kept.sort_unstable();
    RunOutput { basis, syzygies, kept }
}

/// Reduced Gröbner basis of a submodule, optionally carrying the expression
/// of each element in terms of the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<S: Scalar> {
    ring: PolyRing<S>,
    ambient: GradedFreeModule,
    gens: Vec<Vector<S>>,
    ord: Order,
    elems: Vec<SVec<S>>,
    leads: Vec<Term>,
    by_comp: Vec<Vec<usize>>,
    tracked: bool,
    kept: Vec<usize>,
    syz: Vec<SVec<S>>,
}

impl<S: Scalar> GroebnerBasis<S> {
    fn compute(m: &SubmoduleGens<S>, track: bool) -> Self {
        let ring = m.ring();
        let r = m.ambient().rank();
        let degs = m.degrees();
        let mut twists = m.ambient().twists().to_vec();
        if track {
            twists.extend(degs.iter().copied());
        }
        let ord = Order { twists, split: r, mono: ring.order() };
        let inputs: Vec<(SVec<S>, i64)> = m
            .gens()
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let mut v = to_svec(g, 0, &ord);
                if track {
                    v.push((Term { m: Monomial::one(), c: r + k }, S::one(ring.field())));
                }
                (v, degs[k])
            })
            .collect();
        let out = run(&ord, inputs, !track && r == 1);
        let Basis { elems, leads, by_comp, .. } = out.basis;
        GroebnerBasis {
            ring,
            ambient: m.ambient().clone(),
            gens: m.gens().to_vec(),
            ord,
            elems,
            leads,
            by_comp,
            tracked: track,
            kept: out.kept,
            syz: out.syzygies,
        }
    }

    pub fn ring(&self) -> PolyRing<S> {
        self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis elements as vectors of the ambient module.
    pub fn elements(&self) -> Vec<Vector<S>> {
        let r = self.ambient.rank();
        self.elems.iter().map(|e| from_svec(e, self.ring, r, 0)).collect()
    }

    /// Leading terms as `(component, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.leads.iter().map(|t| (t.c, t.m)).collect()
    }

    /// Minimal monomial generators of the lead-term ideal of each component.
    pub fn lead_ideals(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.ambient.rank()];
        for t in &self.leads {
            out[t.c].push(t.m);
        }
        out
    }

    /// Indices of input generators that form a minimal generating set.
    pub fn minimal_generator_indices(&self) -> &[usize] {
        &self.kept
    }

    fn reducer(&self) -> Basis<S> {
        Basis { elems: self.elems.clone(), leads: self.leads.clone(), by_comp: self.by_comp.clone(), skip: None }
    }

    fn check_rank(&self, v: &Vector<S>) -> Result<()> {
        if v.rank() != self.ambient.rank() {
            return Err(Error::Dimension(format!(
                "vector of rank {} in a module of rank {}",
                v.rank(),
                self.ambient.rank()
            )));
        }
        Ok(())
    }

    /// Fully reduced remainder of `v`.
    pub fn normal_form(&self, v: &Vector<S>) -> Result<Vector<S>> {
        self.check_rank(v)?;
        let r = self.ambient.rank();
        let sv = to_svec(v, 0, &self.ord);
        let red = self.reducer().reduce(sv, &self.ord, true);
        Ok(from_svec(&red, self.ring, r, 0))
    }

    pub fn contains_vector(&self, v: &Vector<S>) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Coefficients `h` with `v = Σ h_k g_k`, or `None` if `v` is not in the
    /// submodule. Requires a tracked basis.
    pub fn lift(&self, v: &Vector<S>) -> Result<Option<Vec<Poly<S>>>> {
        self.check_rank(v)?;
        if !self.tracked {
            return Err(Error::Precondition("lift needs a basis computed with tracking".into()));
        }
        let r = self.ambient.rank();
        let sv = to_svec(v, 0, &self.ord);
        let red = self.reducer().reduce(sv, &self.ord, true);
        if red.iter().any(|(t, _)| self.ord.upper(t)) {
            return Ok(None);
        }
        let h = from_svec(&red, self.ring, self.gens.len(), r).neg();
        let h = h.into_entries();
        let mut back = Vector::zero(self.ring, r);
        for (hk, g) in h.iter().zip(&self.gens) {
            if !hk.is_zero() {
                back = back.add(&g.scale(hk));
            }
        }
        if &back != v {
            return Err(Error::Assembly("lift certificate failed to reproduce the vector".into()));
        }
        Ok(Some(h))
    }

    /// Generators of the syzygy module of the input generators (tracked runs only).
    fn syzygy_vectors(&self) -> Vec<Vector<S>> {
        let r = self.ambient.rank();
        self.syz.iter().map(|s| from_svec(s, self.ring, self.gens.len(), r)).collect()
    }
}

/// Reduced Gröbner basis.
pub fn groebner<S: Scalar>(m: &SubmoduleGens<S>) -> GroebnerBasis<S> {
    GroebnerBasis::compute(m, false)
}

/// Gröbner basis that also supports [`GroebnerBasis::lift`].
pub fn groebner_tracked<S: Scalar>(m: &SubmoduleGens<S>) -> GroebnerBasis<S> {
    GroebnerBasis::compute(m, true)
}

pub fn normal_form<S: Scalar>(v: &Vector<S>, m: &SubmoduleGens<S>) -> Result<Vector<S>> {
    groebner(m).normal_form(v)
}

/// Syzygies of columns with prescribed degrees; zero columns give unit syzygies.
fn syzygies_raw<S: Scalar>(
    ring: PolyRing<S>,
    ambient: &GradedFreeModule,
    cols: &[Vector<S>],
    degs: &[i64],
) -> Result<Vec<Vector<S>>> {
    let m = cols.len();
    let nz: Vec<usize> = (0..m).filter(|&k| !cols[k].is_zero()).collect();
    for &k in &nz {
        if cols[k].degree(ambient.twists()) != Some(degs[k]) {
            return Err(Error::Precondition(format!("column {k} is not homogeneous of degree {}", degs[k])));
        }
    }
    let mut out: Vec<Vector<S>> = Vec::new();
    for k in 0..m {
        if cols[k].is_zero() {
            out.push(Vector::unit(ring, m, k, ring.one()));
        }
    }
    if !nz.is_empty() {
        let sub = SubmoduleGens::new(ring, ambient.clone(), nz.iter().map(|&k| cols[k].clone()).collect())?;
        let gb = groebner_tracked(&sub);
        for s in gb.syzygy_vectors() {
            let mut full = vec![ring.zero(); m];
            for (pos, &k) in nz.iter().enumerate() {
                full[k] = s.entry(pos).clone();
            }
            out.push(Vector::new(full));
        }
    }
    Ok(out)
}

/// Syzygy module of the generators, inside `m.generator_module()`.
pub fn syzygies<S: Scalar>(m: &SubmoduleGens<S>) -> SubmoduleGens<S> {
    let degs = m.degrees();
    let v = syzygies_raw(m.ring(), m.ambient(), m.gens(), &degs).expect("generators are homogeneous");
    SubmoduleGens::new(m.ring(), m.generator_module(), v).expect("syzygies are homogeneous")
}

/// Kernel of a homogeneous map, as a submodule of its source.
pub fn kernel<S: Scalar>(f: &ModuleMap<S>) -> Result<SubmoduleGens<S>> {
    let bad = f.degree_violations();
    if let Some(v) = bad.first() {
        return Err(Error::Precondition(format!(
            "map is not homogeneous at entry ({}, {}): expected degree {}",
            v.row, v.col, v.expected
        )));
    }
    let degs: Vec<i64> = f.source().twists().iter().map(|d| d + f.shift()).collect();
    let v = syzygies_raw(f.ring(), f.target(), &f.columns(), &degs)?;
    SubmoduleGens::new(f.ring(), f.source().clone(), v)
}

fn same_ambient<S: Scalar>(a: &SubmoduleGens<S>, b: &SubmoduleGens<S>) -> Result<()> {
    if a.ambient().twists() != b.ambient().twists() {
        return Err(Error::Dimension(format!(
            "submodules of different free modules: {} vs {}",
            a.ambient(),
            b.ambient()
        )));
    }
    Ok(())
}

/// `b ⊆ a`.
pub fn contains<S: Scalar>(a: &SubmoduleGens<S>, b: &SubmoduleGens<S>) -> Result<bool> {
    same_ambient(a, b)?;
    let gb = groebner(a);
    for g in b.gens() {
        if !gb.contains_vector(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn equal<S: Scalar>(a: &SubmoduleGens<S>, b: &SubmoduleGens<S>) -> Result<bool> {
    Ok(contains(a, b)? && contains(b, a)?)
}

pub fn sum<S: Scalar>(a: &SubmoduleGens<S>, b: &SubmoduleGens<S>) -> Result<SubmoduleGens<S>> {
    same_ambient(a, b)?;
    let mut gens = a.gens().to_vec();
    gens.extend(b.gens().iter().cloned());
    SubmoduleGens::new(a.ring(), a.ambient().clone(), gens)
}

/// `a ∩ b`, from the syzygies of the concatenated generator lists.
pub fn intersect<S: Scalar>(a: &SubmoduleGens<S>, b: &SubmoduleGens<S>) -> Result<SubmoduleGens<S>> {
    same_ambient(a, b)?;
    let ring = a.ring();
    let both = sum(a, b)?;
    let syz = syzygies(&both);
    let mut gens = Vec::new();
    for s in syz.gens() {
        let mut v = Vector::zero(ring, a.ambient().rank());
        for (k, g) in a.gens().iter().enumerate() {
            let h = s.entry(k);
            if !h.is_zero() {
                v = v.add(&g.scale(h));
            }
        }
        gens.push(v);
    }
    let out = SubmoduleGens::new(ring, a.ambient().clone(), gens)?;
    Ok(minimal_generators(&out))
}

/// Coefficients expressing `v` in the generators of `m`, verified by substitution.
pub fn lift<S: Scalar>(v: &Vector<S>, m: &SubmoduleGens<S>) -> Result<Option<Vec<Poly<S>>>> {
    if m.is_empty() {
        if v.rank() != m.ambient().rank() {
            return Err(Error::Dimension("vector rank does not match the submodule".into()));
        }
        return Ok(if v.is_zero() { Some(Vec::new()) } else { None });
    }
    groebner_tracked(m).lift(v)
}

/// A minimal generating subset of the given generators.
pub fn minimal_generators<S: Scalar>(m: &SubmoduleGens<S>) -> SubmoduleGens<S> {
    let gb = groebner(m);
    let gens = gb.minimal_generator_indices().iter().map(|&k| m.gens()[k].clone()).collect();
    SubmoduleGens::new(m.ring(), m.ambient().clone(), gens).expect("subset of homogeneous generators")
}

/// Minimal generators of the syzygy module of `m`'s generators.
pub fn minimal_syzygies<S: Scalar>(m: &SubmoduleGens<S>) -> SubmoduleGens<S> {
    minimal_generators(&syzygies(m))
}

/// Krull dimension of `ambient / m`; `-1` for the zero module.
pub fn krull_dim<S: Scalar>(m: &SubmoduleGens<S>) -> i64 {
    let gb = groebner(m);
    let n = m.ring().nvars();
    gb.lead_ideals().iter().map(|j| monomial_quotient_dim(j, n)).max().unwrap_or(-1)
}

/// `dim S / J` for a monomial ideal: the largest set of variables containing
/// no generator's support. Returns `-1` when `J = S`.
pub fn monomial_quotient_dim(gens: &[Monomial], n: usize) -> i64 {
    if gens.iter().any(|g| g.is_one()) {
        return -1;
    }
    let supports: Vec<u32> = gens.iter().map(|g| g.support().fold(0u32, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as i64;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}
