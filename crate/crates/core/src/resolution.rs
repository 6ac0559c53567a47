//! Free resolutions, mapping cones, Betti tables, Hilbert numerators,
//! codimension-3 numerical conditions and Ext patterns.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::free_mod::{ChainComplex, FPModule, GradedFreeModule, ModuleMap, SubmoduleGens, Vector};
use crate::groebner::{self, groebner, groebner_tracked, kernel};
use crate::hilbert::{submodule_numerator, HilbertNumerator, Laurent};
use crate::poly::PolyRing;
use crate::scalar::Scalar;

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub entries: BTreeMap<i64, BTreeMap<i64, usize>>,
}

impl BettiTable {
    pub fn from_complex<S: Scalar>(c: &ChainComplex<S>) -> Self {
        let mut t = BettiTable::default();
        for i in c.lo()..=c.hi() {
            for &d in c.module(i).twists() {
                *t.entries.entry(i).or_default().entry(d).or_default() += 1;
            }
        }
        t
    }

    pub fn get(&self, i: i64, j: i64) -> usize {
        self.entries.get(&i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: i64) -> usize {
        self.entries.get(&i).map_or(0, |r| r.values().sum())
    }

    /// Largest `i` with a nonzero entry.
    pub fn length(&self) -> i64 {
        self.entries.iter().filter(|(_, r)| r.values().any(|&v| v > 0)).map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `Σ (-1)^i β_{i,j} λ^j`.
    pub fn numerator(&self, n: usize) -> HilbertNumerator {
        let mut q = Laurent::zero();
        for (i, row) in &self.entries {
            for (j, b) in row {
                let c = if i % 2 == 0 { *b as i64 } else { -(*b as i64) };
                q = q.add(&Laurent::term(c, *j));
            }
        }
        HilbertNumerator::new(q, n)
    }
}

impl fmt::Display for BettiTable {
    /// One line per homological degree: `i: S(-j)^b ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in &self.entries {
            write!(f, "{i}:")?;
            for (j, b) in row {
                write!(f, " {b}@{j}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A free resolution together with its Betti table.
#[derive(Clone, Debug)]
pub struct Resolution<S: Scalar> {
    pub complex: ChainComplex<S>,
    pub betti: BettiTable,
}

/// Removes presentation generators killed by relations with a unit entry.
pub fn prune_presentation<S: Scalar>(m: &FPModule<S>) -> FPModule<S> {
    let ring = m.ring();
    let mut ambient = m.presentation().clone();
    let mut rels: Vec<Vector<S>> = m.relations.gens().to_vec();
    'outer: loop {
        for (r, g) in rels.iter().enumerate() {
            for k in 0..g.rank() {
                let p = g.entry(k);
                if !p.is_zero() && p.homogeneous_degree() == Some(0) {
                    let u = p.constant_coeff();
                    let inv = u.inv().expect("nonzero constant");
                    let g = g.clone();
                    let mut next = Vec::new();
                    for (s, h) in rels.iter().enumerate() {
                        if s == r {
                            continue;
                        }
                        let hk = h.entry(k);
                        let h = if hk.is_zero() { h.clone() } else { h.sub(&g.scale(&hk.scale(&inv))) };
                        let mut e = h.into_entries();
                        e.remove(k);
                        let v = Vector::new(e);
                        if !v.is_zero() {
                            next.push(v);
                        }
                    }
                    ambient = ambient.without(k);
                    rels = next;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let relations = SubmoduleGens::new(ring, ambient, rels).expect("elimination preserves homogeneity");
    FPModule { relations, label: m.label.clone() }
}

/// `ambient ← ⟨gens⟩ ← syz ← …` with the given generators in position 1 and
/// minimal syzygies afterwards.
pub fn resolve_submodule<S: Scalar>(gens: &SubmoduleGens<S>, max_length: usize) -> Result<ChainComplex<S>> {
    let ring = gens.ring();
    let mut maps: Vec<ModuleMap<S>> = Vec::new();
    let mut current = gens.clone();
    while !current.is_empty() {
        if maps.len() > max_length {
            return Err(Error::Assembly(format!("resolution longer than {max_length}")));
        }
        maps.push(current.inclusion_map());
        current = groebner::minimal_syzygies(&current);
    }
    if maps.is_empty() {
        return Ok(ChainComplex::single(ring, gens.ambient().clone(), 0));
    }
    ChainComplex::from_maps(ring, maps, 0)
}

/// Minimal graded free resolution of `coker(relations → P)`.
pub fn minimal_resolution<S: Scalar>(m: &FPModule<S>, max_length: usize) -> Result<Resolution<S>> {
    let n = m.ring().nvars();
    let pruned = prune_presentation(m);
    let rels = groebner::minimal_generators(&pruned.relations);
    let complex = resolve_submodule(&rels, max_length.max(n) + 1)?;
    let betti = BettiTable::from_complex(&complex);
    Ok(Resolution { complex, betti })
}

/// Minimal resolution of `S / I`.
pub fn resolve_ideal<S: Scalar>(ideal: &SubmoduleGens<S>) -> Result<Resolution<S>> {
    minimal_resolution(&FPModule::new(ideal.clone()), ideal.ring().nvars())
}

/// Cancels unit entries of a complex whose differentials have degree 0
/// until none remain.
pub fn minimize<S: Scalar>(c: &ChainComplex<S>) -> Result<ChainComplex<S>> {
    if c.maps().iter().any(|m| m.shift() != 0) {
        return Err(Error::Precondition("minimization needs degree-0 differentials".into()));
    }
    let ring = c.ring();
    let mut modules: Vec<GradedFreeModule> = c.modules().to_vec();
    let mut maps: Vec<ModuleMap<S>> = c.maps().to_vec();
    'outer: loop {
        for w in 0..maps.len() {
            let d = &maps[w];
            for r in 0..d.target().rank() {
                for col in 0..d.source().rank() {
                    let p = d.entry(r, col);
                    if p.is_zero() || p.homogeneous_degree() != Some(0) {
                        continue;
                    }
                    let inv = p.constant_coeff().inv().expect("nonzero constant");
                    // d' = d - a b / u on the remaining rows and columns
                    let a = d.column(col);
                    let b: Vec<_> = (0..d.source().rank()).map(|j| d.entry(r, j).clone()).collect();
                    let mut matrix: Vec<Vec<_>> = d.matrix().to_vec();
                    for (i, row) in matrix.iter_mut().enumerate() {
                        if a.entry(i).is_zero() {
                            continue;
                        }
                        let ai = a.entry(i).scale(&inv);
                        for (j, slot) in row.iter_mut().enumerate() {
                            if !b[j].is_zero() {
                                *slot = slot.sub(&ai.mul(&b[j]));
                            }
                        }
                    }
                    let updated = ModuleMap::new(ring, d.source().clone(), d.target().clone(), matrix, 0)?;
                    maps[w] = updated.without(Some(r), Some(col));
                    if w + 1 < maps.len() {
                        maps[w + 1] = maps[w + 1].without(Some(col), None);
                    }
                    if w > 0 {
                        maps[w - 1] = maps[w - 1].without(None, Some(r));
                    }
                    modules[w + 1] = modules[w + 1].without(col);
                    modules[w] = modules[w].without(r);
                    continue 'outer;
                }
            }
        }
        break;
    }
    ChainComplex::new(ring, modules, maps, c.lo())
}

/// Whether any differential has a nonzero constant entry.
pub fn has_unit_entries<S: Scalar>(c: &ChainComplex<S>) -> bool {
    c.maps().iter().any(|m| m.matrix().iter().flatten().any(|p| !p.is_zero() && p.homogeneous_degree() == Some(0)))
}

/// `α_i: A_i → B_i` for `i` in the range of `A`.
#[derive(Clone, Debug)]
pub struct ChainMap<S: Scalar> {
    pub source: ChainComplex<S>,
    pub target: ChainComplex<S>,
    pub maps: Vec<ModuleMap<S>>,
}

impl<S: Scalar> ChainMap<S> {
    pub fn new(source: ChainComplex<S>, target: ChainComplex<S>, maps: Vec<ModuleMap<S>>) -> Result<Self> {
        if maps.len() != source.modules().len() {
            return Err(Error::Shape("one component per source position is required".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            let i = source.lo() + k as i64;
            if m.source().twists() != source.module(i).twists() || m.target().twists() != target.module(i).twists() {
                return Err(Error::Shape(format!("component {i} does not match the complexes")));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn component(&self, i: i64) -> ModuleMap<S> {
        let lo = self.source.lo();
        if i >= lo && i <= self.source.hi() {
            self.maps[(i - lo) as usize].clone()
        } else {
            ModuleMap::zero(self.source.ring(), self.source.module(i), self.target.module(i), 0)
        }
    }

    /// First position where `d^B α_i ≠ α_{i-1} d^A`.
    pub fn first_failing_square(&self) -> Option<i64> {
        for i in self.source.lo() + 1..=self.source.hi() {
            let left = crate::free_mod::compose(&self.target.differential(i), &self.component(i)).ok()?;
            let right = crate::free_mod::compose(&self.component(i - 1), &self.source.differential(i)).ok()?;
            if left.matrix() != right.matrix() {
                return Some(i);
            }
        }
        None
    }
}

/// Preimages under `f` of the given vectors, or `None` if one is not in the image.
pub fn lift_through<S: Scalar>(f: &ModuleMap<S>, targets: &[Vector<S>]) -> Result<Option<Vec<Vector<S>>>> {
    let ring = f.ring();
    let cols = f.columns();
    let nz: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_zero()).collect();
    let mut out = Vec::new();
    if nz.is_empty() {
        for t in targets {
            if !t.is_zero() {
                return Ok(None);
            }
            out.push(Vector::zero(ring, f.source().rank()));
        }
        return Ok(Some(out));
    }
    let sub = SubmoduleGens::new(ring, f.target().clone(), nz.iter().map(|&j| cols[j].clone()).collect())?;
    let gb = groebner_tracked(&sub);
    for t in targets {
        match gb.lift(t)? {
            None => return Ok(None),
            Some(h) => {
                let mut full = vec![ring.zero(); f.source().rank()];
                for (pos, &j) in nz.iter().enumerate() {
                    full[j] = h[pos].clone();
                }
                out.push(Vector::new(full));
            }
        }
    }
    Ok(Some(out))
}

/// Extends `alpha0: A_lo → B_lo` to a chain map, lifting through the
/// differentials of `b` (which must be exact where lifts are needed).
pub fn lift_chain_map<S: Scalar>(a: &ChainComplex<S>, b: &ChainComplex<S>, alpha0: ModuleMap<S>) -> Result<ChainMap<S>> {
    let ring = a.ring();
    let mut maps = vec![alpha0];
    for i in a.lo() + 1..=a.hi() {
        let prev = maps.last().unwrap();
        let need = crate::free_mod::compose(prev, &a.differential(i))?;
        let db = b.differential(i);
        let cols = need.columns();
        let lifted = lift_through(&db, &cols)?
            .ok_or_else(|| Error::Assembly(format!("chain map cannot be lifted at position {i}")))?;
        maps.push(ModuleMap::from_columns(ring, a.module(i), b.module(i), &lifted, 0)?);
    }
    let cm = ChainMap::new(a.clone(), b.clone(), maps)?;
    if let Some(i) = cm.first_failing_square() {
        return Err(Error::Assembly(format!("lifted chain map fails to commute at {i}")));
    }
    Ok(cm)
}

fn block<S: Scalar>(
    ring: PolyRing<S>,
    rows: (&GradedFreeModule, &GradedFreeModule),
    cols: (&GradedFreeModule, &GradedFreeModule),
    blocks: [[Option<&ModuleMap<S>>; 2]; 2],
) -> Result<ModuleMap<S>> {
    let target = rows.0.direct_sum(rows.1);
    let source = cols.0.direct_sum(cols.1);
    let mut matrix = vec![vec![ring.zero(); source.rank()]; target.rank()];
    let ro = [0, rows.0.rank()];
    let co = [0, cols.0.rank()];
    for (bi, brow) in blocks.iter().enumerate() {
        for (bj, blk) in brow.iter().enumerate() {
            if let Some(m) = blk {
                if m.shift() != 0 {
                    return Err(Error::Precondition("mapping cone needs degree-0 maps".into()));
                }
                for (i, row) in m.matrix().iter().enumerate() {
                    for (j, p) in row.iter().enumerate() {
                        matrix[ro[bi] + i][co[bj] + j] = p.clone();
                    }
                }
            }
        }
    }
    ModuleMap::new(ring, source, target, matrix, 0)
}

/// `C_i = A_{i-1} ⊕ B_i`, `d(a, b) = (-d a, α a + d b)`.
pub fn mapping_cone<S: Scalar>(alpha: &ChainMap<S>) -> Result<ChainComplex<S>> {
    if let Some(i) = alpha.first_failing_square() {
        return Err(Error::Precondition(format!("chain map does not commute at position {i}")));
    }
    let a = &alpha.source;
    let b = &alpha.target;
    let ring = a.ring();
    let lo = (a.lo() + 1).min(b.lo());
    let hi = (a.hi() + 1).max(b.hi());
    let module = |i: i64| a.module(i - 1).direct_sum(&b.module(i));
    let mut maps = Vec::new();
    for i in lo + 1..=hi {
        let da = a.differential(i - 1).neg();
        let db = b.differential(i);
        let al = alpha.component(i - 1);
        let (a_src, b_src) = (a.module(i - 1), b.module(i));
        let (a_tgt, b_tgt) = (a.module(i - 2), b.module(i - 1));
        let da = da.regraded(a_src.clone(), a_tgt.clone(), 0)?;
        let db = db.regraded(b_src.clone(), b_tgt.clone(), 0)?;
        let al = al.regraded(a_src.clone(), b_tgt.clone(), 0)?;
        maps.push(block(ring, (&a_tgt, &b_tgt), (&a_src, &b_src), [[Some(&da), None], [Some(&al), Some(&db)]])?);
    }
    if maps.is_empty() {
        return Ok(ChainComplex::single(ring, module(lo), lo));
    }
    ChainComplex::new(ring, (lo..=hi).map(module).collect(), maps, lo)
}

/// `Σ (-1)^i HS-numerator(C_i)`.
pub fn hilbert_numerator<S: Scalar>(c: &ChainComplex<S>) -> HilbertNumerator {
    BettiTable::from_complex(c).numerator(c.ring().nvars())
}

/// Exactness at one position of a complex.
#[derive(Clone, Debug, Serialize)]
pub struct PositionAudit {
    pub position: i64,
    pub exact: bool,
    /// A cycle that is not a boundary, printed.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub square_zero: bool,
    pub positions: Vec<PositionAudit>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.square_zero && self.positions.iter().all(|p| p.exact)
    }

    pub fn first_failure(&self) -> Option<i64> {
        if !self.square_zero {
            return Some(i64::MIN);
        }
        self.positions.iter().find(|p| !p.exact).map(|p| p.position)
    }
}

/// Checks `Ker d_i = Im d_{i+1}` for `from <= i <= hi` and `d∘d = 0`.
pub fn exactness_audit<S: Scalar>(c: &ChainComplex<S>, from: i64) -> Result<ExactnessReport> {
    let square_zero = c.is_complex();
    let mut positions = Vec::new();
    for i in from.max(c.lo())..=c.hi() {
        let ker = if i == c.lo() {
            SubmoduleGens::full(c.ring(), c.module(i))
        } else {
            kernel(&c.differential(i))?
        };
        let img = c.differential(i + 1).image();
        let gb = groebner(&img);
        let mut witness = None;
        for g in ker.gens() {
            if !gb.contains_vector(g)? {
                witness = Some(g.to_string());
                break;
            }
        }
        positions.push(PositionAudit { position: i, exact: witness.is_none(), witness });
    }
    Ok(ExactnessReport { square_zero, positions })
}

/// Both sides of the three codimension-3 conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalReport {
    pub n: i64,
    pub t: i64,
    pub d: i64,
    pub c: i64,
    pub c_inferred: bool,
    pub condition1: bool,
    pub q: i64,
    pub q_expected: BigInt,
    pub condition2: bool,
    pub lhs2: i64,
    pub rhs2: BigInt,
    pub condition3: bool,
    pub lhs3: i64,
    pub rhs3: BigInt,
}

impl NumericalReport {
    pub fn all_hold(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

fn rhs2_without_c(n: i64, t: i64, d: i64) -> BigInt {
    BigInt::from(n * n - (2 + d) * n + d) + binomial(n - 2, t - 1) + binomial(n - 1, t) * BigInt::from(t)
}

fn rhs3(n: i64, t: i64, d: i64, c: i64) -> BigInt {
    BigInt::from(n * n * n - (3 + 2 * d) * n * n + (d * d + 4 * d + 1) * n - c * c - d * d)
        + binomial(n - 1, t) * BigInt::from((t + 1) * (t + 1))
        - binomial(n - 2, t) * BigInt::from(2 * t + 1)
        - binomial(n - 3, t - 1) * BigInt::from(2)
}

/// Evaluates the three closed-form conditions for a sequence
/// `0 → ⊕S(-a_i) → ⊕S(-b_i) → E_{t+1} ⊕ E_{n-1}(d) → I(c) → 0`.
/// With `solve_c`, `c` is taken from condition 2.
pub fn numerical_conditions(n: i64, t: i64, c: i64, d: i64, a: &[i64], b: &[i64], solve_c: bool) -> NumericalReport {
    let p = a.len() as i64;
    let q = b.len() as i64;
    let q_expected = BigInt::from(p + n - 2) + binomial(n - 1, t);
    let lhs2 = b.iter().sum::<i64>() - a.iter().sum::<i64>();
    let base2 = rhs2_without_c(n, t, d);
    let c = if solve_c { i64::try_from(BigInt::from(lhs2) - &base2).expect("small c") } else { c };
    let rhs2 = base2 + BigInt::from(c);
    let lhs3 = b.iter().map(|x| x * x).sum::<i64>() - a.iter().map(|x| x * x).sum::<i64>();
    let r3 = rhs3(n, t, d, c);
    NumericalReport {
        n,
        t,
        d,
        c,
        c_inferred: solve_c,
        condition1: BigInt::from(q) == q_expected,
        q,
        q_expected,
        condition2: BigInt::from(lhs2) == rhs2,
        lhs2,
        rhs2,
        condition3: BigInt::from(lhs3) == r3,
        lhs3,
        rhs3: r3,
    }
}

/// Graded data of `Ext^j(M, S(-n))`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtEntry {
    pub j: usize,
    /// Local cohomology index `n - j` under local duality.
    pub local_index: i64,
    pub numerator: HilbertNumerator,
    pub is_zero: bool,
    /// Graded dimensions `(degree, dim)` when the module has finite length.
    pub finite_length: Option<Vec<(i64, BigInt)>>,
    pub total_dimension: Option<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyPattern {
    pub n: usize,
    pub entries: Vec<ExtEntry>,
}

impl CohomologyPattern {
    /// Nonzero `Ext^j` with `j >= 1`.
    pub fn higher(&self) -> Vec<&ExtEntry> {
        self.entries.iter().filter(|e| e.j >= 1 && !e.is_zero).collect()
    }
}

/// Ext modules of `M` into `S(-n)` from a minimal resolution, as graded
/// Hilbert data of `Ker d*_{j+1} / Im d*_j`.
pub fn cohomology_pattern<S: Scalar>(m: &FPModule<S>, max_len: usize) -> Result<CohomologyPattern> {
    let ring = m.ring();
    let n = ring.nvars();
    let res = minimal_resolution(m, max_len)?;
    let c = res.complex;
    let len = c.hi();
    let mut entries = Vec::new();
    for j in 0..=len {
        let fj = c.module(j).shifted(0);
        let dual_mod = GradedFreeModule::new(fj.twists().iter().map(|d| n as i64 - d).collect());
        let ker = if j < len {
            kernel(&c.differential(j + 1).dual(n as i64))?
        } else {
            SubmoduleGens::full(ring, dual_mod.clone())
        };
        let im = if j > 0 {
            c.differential(j).dual(n as i64).image()
        } else {
            SubmoduleGens::zero(ring, dual_mod.clone())
        };
        let num = submodule_numerator(&ker).sub(&submodule_numerator(&im));
        let finite = num.finite_length_dims();
        let total = finite.as_ref().map(|v| v.iter().fold(BigInt::zero(), |acc, (_, c)| acc + c));
        entries.push(ExtEntry {
            j: j as usize,
            local_index: n as i64 - j,
            is_zero: num.q.is_zero(),
            numerator: num,
            finite_length: finite,
            total_dimension: total,
        });
    }
    Ok(CohomologyPattern { n, entries })
}
