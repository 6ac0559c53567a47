//! The Koszul complex of `x_1..x_n`, its syzygy modules `E_s`, dual bases and
//! the functional families `𝒜` and `ℬ`.
//!
//! `K_s = S(-s)^{C(n,s)}` with basis `e_I` for `|I| = s` in colex order, and
//! `∂(e_{i_1..i_s}) = Σ_k (-1)^{k+1} x_{i_k} e_{I \ i_k}`. Duals are taken
//! into `S(-n)`, so `K*_s` has twists `n - s`. `E_s = Im ∂_s ⊆ K_{s-1}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::{binomial_i64, colex_rank, subsets_colex};
use crate::error::{Error, Result};
use crate::free_mod::{ChainComplex, FPModule, GradedFreeModule, ModuleMap, SubmoduleGens, Vector};
use crate::groebner;
use crate::hilbert::{submodule_numerator, HilbertNumerator};
use crate::parse::parse_koszul_terms;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

/// `σ(J, K) = (-1)^{#{(j,k) ∈ J×K : j > k}}` for disjoint `J`, `K`.
pub fn sigma(j: &[usize], k: &[usize]) -> Result<i64> {
    if j.iter().any(|a| k.contains(a)) {
        return Err(Error::Precondition(format!("subsets {j:?} and {k:?} overlap")));
    }
    let inv = j.iter().map(|a| k.iter().filter(|b| a > b).count()).sum::<usize>();
    Ok(if inv % 2 == 0 { 1 } else { -1 })
}

fn check_range(n: usize, s: usize, lo: usize) -> Result<()> {
    if s < lo || s > n {
        return Err(Error::Range(format!("index {s} outside {lo}..={n}")));
    }
    Ok(())
}

fn subset_label(dual: bool, subset: &[usize]) -> String {
    let body: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
    format!("{}[{}]", if dual { "e*" } else { "e" }, body.join(","))
}

/// One summand `K_s(shift)` or `K*_s(shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub s: usize,
    pub shift: i64,
    pub dual: bool,
}

/// A direct sum of (possibly dual, possibly shifted) Koszul modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulSpace {
    n: usize,
    summands: Vec<Summand>,
}

impl KoszulSpace {
    pub fn new(n: usize, summands: Vec<Summand>) -> Result<Self> {
        for sm in &summands {
            check_range(n, sm.s, 0)?;
        }
        Ok(KoszulSpace { n, summands })
    }

    pub fn primal(n: usize, s: usize) -> Result<Self> {
        KoszulSpace::new(n, vec![Summand { s, shift: 0, dual: false }])
    }

    pub fn dual(n: usize, s: usize) -> Result<Self> {
        KoszulSpace::new(n, vec![Summand { s, shift: 0, dual: true }])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn summand_rank(&self, k: usize) -> usize {
        binomial_i64(self.n as i64, self.summands[k].s as i64) as usize
    }

    pub fn offset(&self, k: usize) -> usize {
        (0..k).map(|i| self.summand_rank(i)).sum()
    }

    pub fn rank(&self) -> usize {
        self.offset(self.summands.len())
    }

    fn twist(&self, sm: &Summand) -> i64 {
        if sm.dual {
            self.n as i64 - sm.s as i64 - sm.shift
        } else {
            sm.s as i64 - sm.shift
        }
    }

    pub fn free_module(&self) -> GradedFreeModule {
        let mut twists = Vec::new();
        let mut labels = Vec::new();
        for sm in &self.summands {
            for sub in subsets_colex(self.n, sm.s) {
                twists.push(self.twist(sm));
                labels.push(subset_label(sm.dual, &sub));
            }
        }
        GradedFreeModule::with_labels(twists, labels)
    }

    /// Same summands with the dual flag flipped.
    pub fn transposed(&self) -> Self {
        KoszulSpace {
            n: self.n,
            summands: self.summands.iter().map(|sm| Summand { dual: !sm.dual, ..*sm }).collect(),
        }
    }

    /// First summand holding subsets of the given size and variance.
    fn locate(&self, dual: bool, size: usize) -> Option<usize> {
        self.summands.iter().position(|sm| sm.dual == dual && sm.s == size)
    }

    fn split_index(&self, idx: usize) -> (usize, Vec<usize>) {
        let mut rem = idx;
        for k in 0..self.summands.len() {
            let r = self.summand_rank(k);
            if rem < r {
                return (k, subsets_colex(self.n, self.summands[k].s)[rem].clone());
            }
            rem -= r;
        }
        panic!("index {idx} out of range");
    }
}

/// Element of a [`KoszulSpace`]: coefficients on `(summand, subset)`.
#[derive(Clone, PartialEq, Eq)]
pub struct KoszulVector<S: Scalar> {
    space: KoszulSpace,
    ring: PolyRing<S>,
    coeffs: BTreeMap<(usize, usize), (Vec<usize>, Poly<S>)>,
}

impl<S: Scalar> KoszulVector<S> {
    pub fn zero(space: KoszulSpace, ring: PolyRing<S>) -> Self {
        KoszulVector { space, ring, coeffs: BTreeMap::new() }
    }

    pub fn space(&self) -> &KoszulSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `coeff * e_subset` on the given summand.
    pub fn add_term(&mut self, summand: usize, subset: Vec<usize>, coeff: Poly<S>) -> Result<()> {
        let sm = self
            .space
            .summands
            .get(summand)
            .ok_or_else(|| Error::Range(format!("summand {summand} does not exist")))?;
        if subset.len() != sm.s
            || subset.windows(2).any(|w| w[0] >= w[1])
            || subset.iter().any(|&i| i == 0 || i > self.space.n)
        {
            return Err(Error::Range(format!("{} is not a valid basis element of {}", subset_label(sm.dual, &subset), describe(sm))));
        }
        let key = (summand, colex_rank(&subset));
        let cur = self.coeffs.remove(&key).map(|(_, p)| p).unwrap_or_else(|| self.ring.zero());
        let new = cur.add(&coeff);
        if !new.is_zero() {
            self.coeffs.insert(key, (subset, new));
        }
        Ok(())
    }

    /// Parses a string in the Koszul grammar, assigning each term to the
    /// first summand of matching size and variance.
    pub fn parse(text: &str, space: &KoszulSpace, ring: PolyRing<S>) -> Result<Self> {
        let mut v = KoszulVector::zero(space.clone(), ring);
        for t in parse_koszul_terms(text, ring)? {
            let k = space.locate(t.dual, t.subset.len()).ok_or_else(|| {
                Error::Dimension(format!("no summand for {}", subset_label(t.dual, &t.subset)))
            })?;
            v.add_term(k, t.subset, t.coeff)?;
        }
        Ok(v)
    }

    pub fn coefficient(&self, summand: usize, subset: &[usize]) -> Poly<S> {
        self.coeffs.get(&(summand, colex_rank(subset))).map(|(_, p)| p.clone()).unwrap_or_else(|| self.ring.zero())
    }

    pub fn to_vector(&self) -> Vector<S> {
        let mut entries = vec![self.ring.zero(); self.space.rank()];
        for ((k, rank), (_, p)) in &self.coeffs {
            entries[self.space.offset(*k) + rank] = p.clone();
        }
        Vector::new(entries)
    }

    pub fn from_vector(space: &KoszulSpace, ring: PolyRing<S>, v: &Vector<S>) -> Result<Self> {
        if v.rank() != space.rank() {
            return Err(Error::Dimension(format!("vector of rank {} in a space of rank {}", v.rank(), space.rank())));
        }
        let mut out = KoszulVector::zero(space.clone(), ring);
        for (idx, p) in v.entries().iter().enumerate() {
            if !p.is_zero() {
                let (k, sub) = space.split_index(idx);
                out.add_term(k, sub, p.clone())?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::Dimension("Koszul vectors live in different spaces".into()));
        }
        let mut out = self.clone();
        for ((k, _), (sub, p)) in &other.coeffs {
            out.add_term(*k, sub.clone(), p.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, p: &Poly<S>) -> Self {
        let mut out = KoszulVector::zero(self.space.clone(), self.ring);
        for (key, (sub, q)) in &self.coeffs {
            let r = q.mul(p);
            if !r.is_zero() {
                out.coeffs.insert(*key, (sub.clone(), r));
            }
        }
        out
    }

    /// A dual vector as a one-row map from the matching primal space to `S(-n)`.
    /// The shift is read off the coefficients; a zero functional gets shift `n`.
    pub fn to_functional(&self) -> Result<ModuleMap<S>> {
        if self.space.summands.iter().any(|sm| !sm.dual) {
            return Err(Error::Precondition("only dual vectors define functionals".into()));
        }
        let source = self.space.transposed().free_module();
        let n = self.space.n as i64;
        let row = self.to_vector().into_entries();
        let mut shift = None;
        for (j, p) in row.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree().ok_or_else(|| Error::Precondition(format!("coefficient {p} is not homogeneous")))?;
            let c = d as i64 - source.twist(j) + n;
            match shift {
                None => shift = Some(c),
                Some(prev) if prev == c => {}
                Some(_) => return Err(Error::Precondition("functional is not homogeneous".into())),
            }
        }
        ModuleMap::new(self.ring, source, GradedFreeModule::new(vec![n]), vec![row], shift.unwrap_or(n))
    }
}

fn describe(sm: &Summand) -> String {
    let base = format!("K{}_{}", if sm.dual { "*" } else { "" }, sm.s);
    if sm.shift == 0 {
        base
    } else {
        format!("{base}({})", sm.shift)
    }
}

impl<S: Scalar> fmt::Display for KoszulVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, ((k, _), (sub, p))) in self.coeffs.iter().enumerate() {
            let label = subset_label(self.space.summands[*k].dual, sub);
            let text = if p.len() == 1 {
                let s = p.to_string();
                let (neg, body) = match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                };
                let body = if body == "1" { label } else { format!("{body}*{label}") };
                (neg, body)
            } else {
                (false, format!("({p})*{label}"))
            };
            match (i, text.0) {
                (0, true) => write!(f, "-{}", text.1)?,
                (0, false) => write!(f, "{}", text.1)?,
                (_, true) => write!(f, " - {}", text.1)?,
                (_, false) => write!(f, " + {}", text.1)?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for KoszulVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `K_s`, labeled by subsets.
pub fn koszul_module(n: usize, s: usize) -> GradedFreeModule {
    KoszulSpace { n, summands: vec![Summand { s, shift: 0, dual: false }] }.free_module()
}

/// `∂_s: K_s → K_{s-1}` for `1 <= s <= n`.
pub fn differential<S: Scalar>(ring: PolyRing<S>, s: usize) -> Result<ModuleMap<S>> {
    let n = ring.nvars();
    check_range(n, s, 1)?;
    let source = koszul_module(n, s);
    let target = koszul_module(n, s - 1);
    let mut matrix = vec![vec![ring.zero(); source.rank()]; target.rank()];
    for (j, sub) in subsets_colex(n, s).iter().enumerate() {
        for k in 0..s {
            let mut rest = sub.clone();
            let i = rest.remove(k);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            matrix[colex_rank(&rest)][j] = ring.var(i).scale(&ring.scalar(sign));
        }
    }
    ModuleMap::new(ring, source, target, matrix, 0)
}

/// `K_lo ← K_{lo+1} ← … ← K_hi`, twisted by `(shift)`.
pub fn koszul_complex<S: Scalar>(ring: PolyRing<S>, lo: usize, hi: usize, shift: i64) -> Result<ChainComplex<S>> {
    let n = ring.nvars();
    check_range(n, hi, lo)?;
    if lo == hi {
        return Ok(ChainComplex::single(ring, koszul_module(n, lo).shifted(shift), lo as i64));
    }
    let maps = (lo + 1..=hi).map(|s| differential(ring, s).map(|d| d.twisted(shift))).collect::<Result<Vec<_>>>()?;
    ChainComplex::from_maps(ring, maps, lo as i64)
}

/// `E_s(shift)`: the submodule `Im ∂_s ⊆ K_{s-1}` together with the
/// presentation `K_{s+1} → K_s → E_s → 0`.
#[derive(Clone, Debug)]
pub struct SyzygyModule<S: Scalar> {
    pub n: usize,
    pub s: usize,
    pub shift: i64,
    pub submodule: SubmoduleGens<S>,
    pub module: FPModule<S>,
}

impl<S: Scalar> SyzygyModule<S> {
    pub fn rank(&self) -> i64 {
        binomial_i64(self.n as i64 - 1, self.s as i64 - 1)
    }
}

/// `E(n, s, shift)` with `n = ring.nvars()`.
pub fn e_module<S: Scalar>(ring: PolyRing<S>, s: usize, shift: i64) -> Result<SyzygyModule<S>> {
    let n = ring.nvars();
    check_range(n, s, 1)?;
    let d = differential(ring, s)?.twisted(shift);
    let submodule = d.image();
    let ks = koszul_module(n, s).shifted(shift);
    let relations = if s < n {
        differential(ring, s + 1)?.twisted(shift).image()
    } else {
        SubmoduleGens::zero(ring, ks)
    };
    let label = if shift == 0 { format!("E_{s}") } else { format!("E_{s}({shift})") };
    Ok(SyzygyModule { n, s, shift, submodule, module: FPModule::new(relations).labeled(label) })
}

/// The family `𝒜 ⊂ K*_{t+1}`, one element per `L ⊆ [n]` of size `n - t` (colex).
pub fn generate_a<S: Scalar>(ring: PolyRing<S>, t: usize) -> Result<Vec<KoszulVector<S>>> {
    let n = ring.nvars();
    if t + 1 > n {
        return Err(Error::Range(format!("t = {t} must satisfy 0 <= t <= n-1 = {}", n as i64 - 1)));
    }
    let space = KoszulSpace::dual(n, t + 1)?;
    let mut out = Vec::new();
    for l in subsets_colex(n, n - t) {
        let comp: Vec<usize> = (1..=n).filter(|i| !l.contains(i)).collect();
        let mut v = KoszulVector::zero(space.clone(), ring);
        for (j, &ij) in l.iter().enumerate() {
            let rest: Vec<usize> = l.iter().copied().filter(|&x| x != ij).collect();
            let mut target = comp.clone();
            target.push(ij);
            target.sort_unstable();
            let sign = if j % 2 == 0 { 1 } else { -1 } * sigma(&rest, &target)?;
            v.add_term(0, target, ring.var(ij).scale(&ring.scalar(sign)))?;
        }
        out.push(v);
    }
    Ok(out)
}

/// Index pairs `(i, j)`, `i < j`, in the order used by [`generate_b`].
pub fn b_pairs(n: usize) -> Vec<(usize, usize)> {
    subsets_colex(n, 2).into_iter().map(|p| (p[0], p[1])).collect()
}

/// `B_ij = (-1)^i x_j e*_{[n]\i} - (-1)^j x_i e*_{[n]\j}`.
pub fn b_element<S: Scalar>(ring: PolyRing<S>, i: usize, j: usize) -> Result<KoszulVector<S>> {
    let n = ring.nvars();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Range(format!("B_{{{i},{j}}} needs 1 <= i < j <= {n}")));
    }
    let space = KoszulSpace::dual(n, n - 1)?;
    let all_but = |k: usize| -> Vec<usize> { (1..=n).filter(|&x| x != k).collect() };
    let pm = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let mut v = KoszulVector::zero(space, ring);
    v.add_term(0, all_but(i), ring.var(j).scale(&ring.scalar(pm(i))))?;
    v.add_term(0, all_but(j), ring.var(i).scale(&ring.scalar(-pm(j))))?;
    Ok(v)
}

/// The family `ℬ ⊂ K*_{n-1}` in the order of [`b_pairs`].
pub fn generate_b<S: Scalar>(ring: PolyRing<S>) -> Result<Vec<KoszulVector<S>>> {
    let n = ring.nvars();
    if n < 2 {
        return Err(Error::Range("the family B needs n >= 2".into()));
    }
    b_pairs(n).into_iter().map(|(i, j)| b_element(ring, i, j)).collect()
}

/// `⟨v, w⟩` for a primal `v` and a dual `w` over matching summands.
pub fn dual_pair<S: Scalar>(v: &KoszulVector<S>, w: &KoszulVector<S>) -> Result<Poly<S>> {
    let a = &v.space.summands;
    let b = &w.space.summands;
    if v.space.n != w.space.n
        || a.len() != b.len()
        || a.iter().zip(b).any(|(x, y)| x.s != y.s || x.shift != y.shift || x.dual || !y.dual)
    {
        return Err(Error::Dimension("pairing needs a primal vector and a dual vector on the same summands".into()));
    }
    let mut acc = v.ring.zero();
    for (key, (_, p)) in &v.coeffs {
        if let Some((_, q)) = w.coeffs.get(key) {
            acc = acc.add(&p.mul(q));
        }
    }
    Ok(acc)
}

/// Outcome of comparing `E_i` with the image of the dual differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDuality {
    pub i: usize,
    pub e_numerator: HilbertNumerator,
    pub dual_numerator: HilbertNumerator,
    pub e_generator_degrees: Vec<i64>,
    pub dual_generator_degrees: Vec<i64>,
    pub agree: bool,
}

/// Compares `E_i ⊆ K_{i-1}` with `∂*_{n-i+1}(K*_{n-i}) ⊆ K*_{n-i+1}`: graded
/// Hilbert functions on degrees `0..=2n` and minimal generator degrees.
pub fn selfduality<S: Scalar>(ring: PolyRing<S>, i: usize) -> Result<SelfDuality> {
    let n = ring.nvars();
    check_range(n, i, 1)?;
    let e = e_module(ring, i, 0)?.submodule;
    let dual_map = differential(ring, n - i + 1)?.dual(n as i64);
    let img = dual_map.image();
    let en = submodule_numerator(&e);
    let dn = submodule_numerator(&img);
    let mut ed = groebner::minimal_generators(&e).degrees();
    let mut dd = groebner::minimal_generators(&img).degrees();
    ed.sort_unstable();
    dd.sort_unstable();
    let window = 2 * n as i64;
    let agree = e.ambient().twists() == img.ambient().twists() && en.values(0, window) == dn.values(0, window) && ed == dd;
    Ok(SelfDuality { i, e_numerator: en, dual_numerator: dn, e_generator_degrees: ed, dual_generator_degrees: dd, agree })
}

pub fn selfduality_check<S: Scalar>(ring: PolyRing<S>, i: usize) -> Result<bool> {
    Ok(selfduality(ring, i)?.agree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_mod::compose;
    use crate::parse::parse_poly;
    use crate::scalar::Rat;

    fn ring(n: usize) -> PolyRing<Rat> {
        PolyRing::rationals(n)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&[1, 2], &[3, 4]).unwrap(), 1);
        assert_eq!(sigma(&[2], &[1]).unwrap(), -1);
        assert!(sigma(&[1, 2], &[2]).is_err());
    }

    #[test]
    fn second_differential() {
        let r = ring(3);
        let d2 = differential(r, 2).unwrap();
        // e_{12} ↦ x1 e2 - x2 e1; columns are colex: {1,2},{1,3},{2,3}
        let col = d2.column(0);
        assert_eq!(col.entry(0), &parse_poly("-x2", r).unwrap());
        assert_eq!(col.entry(1), &parse_poly("x1", r).unwrap());
        assert!(col.entry(2).is_zero());
        let d1 = differential(r, 1).unwrap();
        assert!(compose(&d1, &d2).unwrap().is_zero());
        assert!(differential(r, 4).is_err());
    }

    #[test]
    fn a_family_matches_closed_form() {
        let r = ring(6);
        let a = generate_a(r, 1).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(a[5].to_string(), "x2*e*[1,2] + x3*e*[1,3] + x4*e*[1,4] + x5*e*[1,5] + x6*e*[1,6]");
        let t0 = generate_a(r, 0).unwrap();
        assert_eq!(t0.len(), 1);
        assert_eq!(t0[0].to_string(), "-x1*e*[1] - x2*e*[2] - x3*e*[3] - x4*e*[4] - x5*e*[5] - x6*e*[6]");
    }

    #[test]
    fn b_element_example() {
        let r = ring(6);
        let b14 = b_element(r, 1, 4).unwrap();
        let scaled = b14.scale(&parse_poly("-x1^2*x2*x4", r).unwrap());
        let expected = KoszulVector::parse("x1^2*x2*x4^2*e*[2,3,4,5,6] + x1^3*x2*x4*e*[1,2,3,5,6]", b14.space(), r).unwrap();
        assert_eq!(scaled, expected);
        assert_eq!(generate_b(r).unwrap().len(), 15);
    }

    #[test]
    fn pairing() {
        let r = ring(3);
        let p = KoszulSpace::primal(3, 2).unwrap();
        let d = KoszulSpace::dual(3, 2).unwrap();
        let e12 = KoszulVector::parse("e[1,2]", &p, r).unwrap();
        assert!(dual_pair(&e12, &KoszulVector::parse("e*[1,2]", &d, r).unwrap()).unwrap() == r.one());
        assert!(dual_pair(&e12, &KoszulVector::parse("e*[1,3]", &d, r).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn vector_roundtrip() {
        let r = ring(6);
        let space = KoszulSpace::new(6, vec![Summand { s: 2, shift: 0, dual: false }, Summand { s: 5, shift: 1, dual: false }]).unwrap();
        let v = KoszulVector::parse("x6^5*e[3] - x1^2*e[1,3,4,5,6]", &space, r);
        assert!(v.is_err(), "e[3] has no summand");
        let v = KoszulVector::parse("x2^4*x5*e[2,4] - x1^2*e[1,2,3,4,5]", &space, r).unwrap();
        let back = KoszulVector::from_vector(&space, r, &v.to_vector()).unwrap();
        assert_eq!(back, v);
        assert_eq!(space.free_module().twists()[15], 4);
        assert_eq!(KoszulVector::parse(&v.to_string(), &space, r).unwrap(), v);
    }

    #[test]
    fn e_ranks() {
        let r = ring(4);
        for s in 1..=4 {
            let e = e_module(r, s, 0).unwrap();
            assert_eq!(crate::hilbert::submodule_rank(&e.submodule), e.rank());
        }
    }

    #[test]
    fn selfduality_small() {
        let r = ring(3);
        for i in 1..=3 {
            assert!(selfduality_check(r, i).unwrap(), "i = {i}");
        }
    }
}
