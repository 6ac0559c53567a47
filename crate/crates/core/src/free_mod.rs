//! Graded free modules, homogeneous maps, finitely presented modules and
//! chain complexes.
//!
//! Twist convention: a [`GradedFreeModule`] with twists `(d_1..d_k)` is
//! `S(-d_1) ⊕ … ⊕ S(-d_k)`, so the i-th basis vector has degree `d_i`.
//! Shifting a module by `(t)` subtracts `t` from every twist. A map of
//! degree `c` sends degree-`D` elements to degree `D + c`; its `(i, j)`
//! entry is homogeneous of degree `source_j - target_i + c`.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
    labels: Option<Vec<String>>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists, labels: None }
    }

    pub fn with_labels(twists: Vec<i64>, labels: Vec<String>) -> Self {
        assert_eq!(twists.len(), labels.len());
        GradedFreeModule { twists, labels: Some(labels) }
    }

    /// `S(-d)^rank`.
    pub fn uniform(rank: usize, d: i64) -> Self {
        GradedFreeModule::new(vec![d; rank])
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("g{}", i + 1),
        }
    }

    /// `M(t)`: every twist decreases by `t`.
    pub fn shifted(&self, t: i64) -> Self {
        GradedFreeModule {
            twists: self.twists.iter().map(|d| d - t).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let twists = self.twists.iter().chain(other.twists.iter()).copied().collect();
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => Some((0..self.rank()).map(|i| self.label(i)).chain((0..other.rank()).map(|i| other.label(i))).collect()),
        };
        GradedFreeModule { twists, labels }
    }

    /// The module with basis element `idx` removed.
    pub fn without(&self, idx: usize) -> Self {
        let mut twists = self.twists.clone();
        twists.remove(idx);
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.remove(idx);
            l
        });
        GradedFreeModule { twists, labels }
    }

    /// Same twists, labels dropped.
    pub fn unlabeled(&self) -> Self {
        GradedFreeModule::new(self.twists.clone())
    }
}

impl fmt::Display for GradedFreeModule {
    /// Writes e.g. `S^2(-3) + S(-6)`, grouping consecutive equal twists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let mut groups: Vec<(i64, usize)> = Vec::new();
        for &t in &self.twists {
            match groups.last_mut() {
                Some((d, c)) if *d == t => *c += 1,
                _ => groups.push((t, 1)),
            }
        }
        for (k, (d, c)) in groups.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let base = if *c == 1 { "S".to_string() } else { format!("S^{c}") };
            if *d == 0 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}({})", -d)?;
            }
        }
        Ok(())
    }
}

/// Element of a free module, stored densely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<S: Scalar> {
    entries: Vec<Poly<S>>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(entries: Vec<Poly<S>>) -> Self {
        Vector { entries }
    }

    pub fn zero(ring: PolyRing<S>, rank: usize) -> Self {
        Vector { entries: vec![ring.zero(); rank] }
    }

    /// `p * e_i` in a module of the given rank.
    pub fn unit(ring: PolyRing<S>, rank: usize, i: usize, p: Poly<S>) -> Self {
        let mut v = Vector::zero(ring, rank);
        v.entries[i] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Poly<S>] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Poly<S> {
        &self.entries[i]
    }

    pub fn into_entries(self) -> Vec<Poly<S>> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "vector rank mismatch");
        Vector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "vector rank mismatch");
        Vector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Vector { entries: self.entries.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, p: &Poly<S>) -> Self {
        Vector { entries: self.entries.iter().map(|a| a.mul(p)).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Vector { entries: self.entries.iter().chain(other.entries.iter()).cloned().collect() }
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        Vector { entries: self.entries[start..end].to_vec() }
    }

    /// Degree of a homogeneous nonzero vector with respect to `twists`;
    /// `None` for zero or inhomogeneous vectors.
    pub fn degree(&self, twists: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (p, t) in self.entries.iter().zip(twists) {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()? as i64 + t;
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return None,
            }
        }
        deg
    }

    pub fn is_homogeneous(&self, twists: &[i64]) -> bool {
        self.is_zero() || self.degree(twists).is_some()
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.entries[i].is_zero()).collect()
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> fmt::Debug for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finitely many homogeneous generators of a submodule of a free module.
#[derive(Clone, Debug)]
pub struct SubmoduleGens<S: Scalar> {
    ring: PolyRing<S>,
    ambient: GradedFreeModule,
    gens: Vec<Vector<S>>,
}

impl<S: Scalar> SubmoduleGens<S> {
    /// Validates homogeneity and ranks; drops zero generators.
    pub fn new(ring: PolyRing<S>, ambient: GradedFreeModule, gens: Vec<Vector<S>>) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if g.rank() != ambient.rank() {
                return Err(Error::Dimension(format!(
                    "generator {k} has rank {} but the ambient module has rank {}",
                    g.rank(),
                    ambient.rank()
                )));
            }
            if !g.is_homogeneous(ambient.twists()) {
                return Err(Error::Precondition(format!("generator {k} = {g} is not homogeneous")));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(SubmoduleGens { ring, ambient, gens })
    }

    pub fn zero(ring: PolyRing<S>, ambient: GradedFreeModule) -> Self {
        SubmoduleGens { ring, ambient, gens: Vec::new() }
    }

    /// The whole free module, generated by its basis.
    pub fn full(ring: PolyRing<S>, ambient: GradedFreeModule) -> Self {
        let r = ambient.rank();
        let gens = (0..r).map(|i| Vector::unit(ring, r, i, ring.one())).collect();
        SubmoduleGens { ring, ambient, gens }
    }

    /// An ideal of `S`, i.e. a submodule of `S` (twist 0).
    pub fn ideal(ring: PolyRing<S>, gens: Vec<Poly<S>>) -> Result<Self> {
        SubmoduleGens::new(ring, GradedFreeModule::new(vec![0]), gens.into_iter().map(|p| Vector::new(vec![p])).collect())
    }

    pub fn ring(&self) -> PolyRing<S> {
        self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn gens(&self) -> &[Vector<S>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Degrees of the generators.
    pub fn degrees(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.degree(self.ambient.twists()).expect("homogeneous nonzero")).collect()
    }

    /// The ideal generators when the ambient module has rank one.
    pub fn ideal_gens(&self) -> Vec<Poly<S>> {
        assert_eq!(self.ambient.rank(), 1, "not an ideal");
        self.gens.iter().map(|g| g.entry(0).clone()).collect()
    }

    pub fn with_ambient(&self, ambient: GradedFreeModule) -> Result<Self> {
        SubmoduleGens::new(self.ring, ambient, self.gens.clone())
    }

    /// The free module with one generator per element of `self`, in matching degrees.
    pub fn generator_module(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.degrees())
    }

    /// Inclusion map `generator_module() → ambient`.
    pub fn inclusion_map(&self) -> ModuleMap<S> {
        let rows = self.ambient.rank();
        let matrix = (0..rows).map(|i| self.gens.iter().map(|g| g.entry(i).clone()).collect()).collect();
        ModuleMap { ring: self.ring, source: self.generator_module(), target: self.ambient.clone(), matrix, shift: 0 }
    }

    pub fn push(&mut self, v: Vector<S>) -> Result<()> {
        if v.rank() != self.ambient.rank() || !v.is_homogeneous(self.ambient.twists()) {
            return Err(Error::Precondition(format!("cannot add {v} to submodule")));
        }
        if !v.is_zero() {
            self.gens.push(v);
        }
        Ok(())
    }
}

/// Homogeneous map between graded free modules, stored as a dense matrix
/// with `target.rank()` rows and `source.rank()` columns.
#[derive(Clone, Debug)]
pub struct ModuleMap<S: Scalar> {
    ring: PolyRing<S>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    matrix: Vec<Vec<Poly<S>>>,
    shift: i64,
}

/// Entry violating the degree invariant of a [`ModuleMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeViolation {
    pub row: usize,
    pub col: usize,
    /// `None` for an inhomogeneous entry.
    pub found: Option<i64>,
    pub expected: i64,
}

impl<S: Scalar> ModuleMap<S> {
    pub fn new(
        ring: PolyRing<S>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        matrix: Vec<Vec<Poly<S>>>,
        shift: i64,
    ) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::Shape(format!(
                "matrix is not {} x {}",
                target.rank(),
                source.rank()
            )));
        }
        Ok(ModuleMap { ring, source, target, matrix, shift })
    }

    /// Builds a map from its column images.
    pub fn from_columns(
        ring: PolyRing<S>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        columns: &[Vector<S>],
        shift: i64,
    ) -> Result<Self> {
        if columns.len() != source.rank() || columns.iter().any(|c| c.rank() != target.rank()) {
            return Err(Error::Shape("column count or column rank mismatch".into()));
        }
        let matrix = (0..target.rank()).map(|i| columns.iter().map(|c| c.entry(i).clone()).collect()).collect();
        Ok(ModuleMap { ring, source, target, matrix, shift })
    }

    pub fn zero(ring: PolyRing<S>, source: GradedFreeModule, target: GradedFreeModule, shift: i64) -> Self {
        let matrix = vec![vec![ring.zero(); source.rank()]; target.rank()];
        ModuleMap { ring, source, target, matrix, shift }
    }

    pub fn identity(ring: PolyRing<S>, module: GradedFreeModule) -> Self {
        let r = module.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
        ModuleMap { ring, source: module.clone(), target: module, matrix, shift: 0 }
    }

    pub fn ring(&self) -> PolyRing<S> {
        self.ring
    }
    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }
    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }
    pub fn shift(&self) -> i64 {
        self.shift
    }
    pub fn matrix(&self) -> &[Vec<Poly<S>>] {
        &self.matrix
    }
    pub fn entry(&self, row: usize, col: usize) -> &Poly<S> {
        &self.matrix[row][col]
    }

    pub fn column(&self, j: usize) -> Vector<S> {
        Vector::new(self.matrix.iter().map(|row| row[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector<S>> {
        (0..self.source.rank()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|row| row.iter().all(|p| p.is_zero()))
    }

    /// Replaces source and target (same ranks) and the declared shift.
    pub fn regraded(&self, source: GradedFreeModule, target: GradedFreeModule, shift: i64) -> Result<Self> {
        ModuleMap::new(self.ring, source, target, self.matrix.clone(), shift)
    }

    pub fn apply(&self, v: &Vector<S>) -> Result<Vector<S>> {
        if v.rank() != self.source.rank() {
            return Err(Error::Dimension(format!(
                "vector of rank {} applied to a map with source rank {}",
                v.rank(),
                self.source.rank()
            )));
        }
        let entries = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.entries())
                    .fold(self.ring.zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) })
            })
            .collect();
        Ok(Vector::new(entries))
    }

    /// Image of the map as a submodule of the target.
    pub fn image(&self) -> SubmoduleGens<S> {
        SubmoduleGens::new(self.ring, self.target.clone(), self.columns()).expect("columns of a homogeneous map")
    }

    /// `Hom(-, S(-n))` dual: transpose matrix, twists `n - d`.
    pub fn dual(&self, n: i64) -> Self {
        let src = GradedFreeModule::new(self.target.twists().iter().map(|d| n - d).collect());
        let tgt = GradedFreeModule::new(self.source.twists().iter().map(|d| n - d).collect());
        let matrix = (0..self.source.rank())
            .map(|j| (0..self.target.rank()).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        ModuleMap { ring: self.ring, source: src, target: tgt, matrix, shift: self.shift }
    }

    /// Entries violating the degree invariant.
    pub fn degree_violations(&self) -> Vec<DegreeViolation> {
        let mut out = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let expected = self.source.twist(j) - self.target.twist(i) + self.shift;
                let found = p.homogeneous_degree().map(|d| d as i64);
                if found != Some(expected) {
                    out.push(DegreeViolation { row: i, col: j, found, expected });
                }
            }
        }
        out
    }

    /// Same matrix, all twists shifted by `(t)`.
    pub fn twisted(&self, t: i64) -> Self {
        ModuleMap {
            ring: self.ring,
            source: self.source.shifted(t),
            target: self.target.shifted(t),
            matrix: self.matrix.clone(),
            shift: self.shift,
        }
    }

    /// Drops one row and one column (either optional).
    pub fn without(&self, row: Option<usize>, col: Option<usize>) -> Self {
        let target = row.map_or_else(|| self.target.clone(), |r| self.target.without(r));
        let source = col.map_or_else(|| self.source.clone(), |c| self.source.without(c));
        let matrix = self
            .matrix
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != row)
            .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| Some(*j) != col).map(|(_, p)| p.clone()).collect())
            .collect();
        ModuleMap { ring: self.ring, source, target, matrix, shift: self.shift }
    }

    pub fn neg(&self) -> Self {
        ModuleMap {
            matrix: self.matrix.iter().map(|r| r.iter().map(|p| p.neg()).collect()).collect(),
            ..self.clone()
        }
    }
}

/// `f ∘ g`. Requires `source(f) = target(g)` (twists compared).
pub fn compose<S: Scalar>(f: &ModuleMap<S>, g: &ModuleMap<S>) -> Result<ModuleMap<S>> {
    if f.source.twists() != g.target.twists() {
        return Err(Error::Shape(format!(
            "cannot compose: source {} of f differs from target {} of g",
            f.source, g.target
        )));
    }
    let ring = f.ring;
    let rows = f.target.rank();
    let cols = g.source.rank();
    let inner = f.source.rank();
    let mut matrix = vec![vec![ring.zero(); cols]; rows];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = ring.zero();
            for k in 0..inner {
                let a = &f.matrix[i][k];
                let b = &g.matrix[k][j];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            *slot = acc;
        }
    }
    Ok(ModuleMap { ring, source: g.source.clone(), target: f.target.clone(), matrix, shift: f.shift + g.shift })
}

/// Block-diagonal `a ⊕ b`. Shifts must agree unless one block is empty.
pub fn direct_sum<S: Scalar>(a: &ModuleMap<S>, b: &ModuleMap<S>) -> Result<ModuleMap<S>> {
    let a_empty = a.source.rank() == 0 || a.target.rank() == 0;
    let b_empty = b.source.rank() == 0 || b.target.rank() == 0;
    let shift = if a_empty {
        b.shift
    } else if b_empty || a.shift == b.shift {
        a.shift
    } else {
        return Err(Error::Shape(format!("direct sum of maps of degrees {} and {}", a.shift, b.shift)));
    };
    let ring = a.ring;
    let source = a.source.direct_sum(&b.source);
    let target = a.target.direct_sum(&b.target);
    let mut matrix = vec![vec![ring.zero(); source.rank()]; target.rank()];
    for i in 0..a.target.rank() {
        for j in 0..a.source.rank() {
            matrix[i][j] = a.matrix[i][j].clone();
        }
    }
    let (ro, co) = (a.target.rank(), a.source.rank());
    for i in 0..b.target.rank() {
        for j in 0..b.source.rank() {
            matrix[ro + i][co + j] = b.matrix[i][j].clone();
        }
    }
    Ok(ModuleMap { ring, source, target, matrix, shift })
}

/// Checks the degree invariant of every entry.
pub fn homogeneity_check<S: Scalar>(f: &ModuleMap<S>) -> (bool, Vec<DegreeViolation>) {
    let v = f.degree_violations();
    (v.is_empty(), v)
}

/// `coker(relations → P)`.
#[derive(Clone, Debug)]
pub struct FPModule<S: Scalar> {
    pub relations: SubmoduleGens<S>,
    pub label: Option<String>,
}

impl<S: Scalar> FPModule<S> {
    pub fn new(relations: SubmoduleGens<S>) -> Self {
        FPModule { relations, label: None }
    }

    pub fn free(ring: PolyRing<S>, module: GradedFreeModule) -> Self {
        FPModule::new(SubmoduleGens::zero(ring, module))
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn ring(&self) -> PolyRing<S> {
        self.relations.ring()
    }

    pub fn presentation(&self) -> &GradedFreeModule {
        self.relations.ambient()
    }

    /// Block direct sum of presentations.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let p = self.presentation().direct_sum(other.presentation());
        let (ra, rb) = (self.presentation().rank(), other.presentation().rank());
        let ring = self.ring();
        let mut gens = Vec::new();
        for g in self.relations.gens() {
            gens.push(g.concat(&Vector::zero(ring, rb)));
        }
        for g in other.relations.gens() {
            gens.push(Vector::zero(ring, ra).concat(g));
        }
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            _ => None,
        };
        FPModule { relations: SubmoduleGens::new(ring, p, gens).expect("blocks stay homogeneous"), label }
    }
}

/// Finite complex `C_lo ← C_{lo+1} ← …`; `maps[k]` is `d_{lo+k+1}: C_{lo+k+1} → C_{lo+k}`.
#[derive(Clone, Debug)]
pub struct ChainComplex<S: Scalar> {
    ring: PolyRing<S>,
    modules: Vec<GradedFreeModule>,
    maps: Vec<ModuleMap<S>>,
    lo: i64,
}

impl<S: Scalar> ChainComplex<S> {
    /// `modules[k]` sits in homological position `lo + k`.
    pub fn new(ring: PolyRing<S>, modules: Vec<GradedFreeModule>, maps: Vec<ModuleMap<S>>, lo: i64) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Shape("a complex needs one map between consecutive modules".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.source().twists() != modules[k + 1].twists() || m.target().twists() != modules[k].twists() {
                return Err(Error::Shape(format!("map {} does not match its modules", k)));
            }
        }
        Ok(ChainComplex { ring, modules, maps, lo })
    }

    /// Complex built from a composable list of maps `d_{lo+1}, d_{lo+2}, …`.
    pub fn from_maps(ring: PolyRing<S>, maps: Vec<ModuleMap<S>>, lo: i64) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Shape("need at least one map".into()));
        }
        let mut modules = vec![maps[0].target().clone()];
        modules.extend(maps.iter().map(|m| m.source().clone()));
        ChainComplex::new(ring, modules, maps, lo)
    }

    /// A single module in position `lo`.
    pub fn single(ring: PolyRing<S>, module: GradedFreeModule, lo: i64) -> Self {
        ChainComplex { ring, modules: vec![module], maps: Vec::new(), lo }
    }

    pub fn ring(&self) -> PolyRing<S> {
        self.ring
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }
    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }
    pub fn maps(&self) -> &[ModuleMap<S>] {
        &self.maps
    }

    /// Module in homological position `i` (zero module outside the range).
    pub fn module(&self, i: i64) -> GradedFreeModule {
        if i < self.lo || i > self.hi() {
            GradedFreeModule::default()
        } else {
            self.modules[(i - self.lo) as usize].clone()
        }
    }

    /// `d_i: C_i → C_{i-1}` (zero map outside the range).
    pub fn differential(&self, i: i64) -> ModuleMap<S> {
        if i > self.lo && i <= self.hi() {
            self.maps[(i - self.lo - 1) as usize].clone()
        } else {
            ModuleMap::zero(self.ring, self.module(i), self.module(i - 1), 0)
        }
    }

    /// Positions where `d_i ∘ d_{i+1} ≠ 0`.
    pub fn square_zero_failures(&self) -> Vec<i64> {
        let mut bad = Vec::new();
        for w in 0..self.maps.len().saturating_sub(1) {
            let c = compose(&self.maps[w], &self.maps[w + 1]).expect("consecutive maps compose");
            if !c.is_zero() {
                bad.push(self.lo + w as i64 + 1);
            }
        }
        bad
    }

    pub fn is_complex(&self) -> bool {
        self.square_zero_failures().is_empty()
    }

    /// Every twist shifted by `(t)`.
    pub fn twisted(&self, t: i64) -> Self {
        ChainComplex {
            ring: self.ring,
            modules: self.modules.iter().map(|m| m.shifted(t)).collect(),
            maps: self.maps.iter().map(|m| m.twisted(t)).collect(),
            lo: self.lo,
        }
    }

    /// Trailing zero modules removed.
    pub fn trimmed(&self) -> Self {
        let mut c = self.clone();
        while c.modules.len() > 1 && c.modules.last().map_or(false, |m| m.rank() == 0) {
            c.modules.pop();
            c.maps.pop();
        }
        c
    }
}

/// Presentation of `ker / im` for submodules `im ⊆ ker` of the same free module.
///
/// Generators are the generators of `ker`; relations are the syzygies of
/// those generators together with the lifts of the generators of `im`.
pub fn subquotient_presentation<S: Scalar>(ker: &SubmoduleGens<S>, im: &SubmoduleGens<S>) -> Result<FPModule<S>> {
    if ker.ambient().twists() != im.ambient().twists() {
        return Err(Error::Dimension("kernel and image live in different modules".into()));
    }
    if !groebner::contains(ker, im)? {
        return Err(Error::Precondition("image is not contained in the kernel".into()));
    }
    let syz = groebner::syzygies(ker);
    let mut rels: Vec<Vector<S>> = syz.gens().to_vec();
    for g in im.gens() {
        let h = groebner::lift(g, ker)?.expect("containment was checked");
        rels.push(Vector::new(h));
    }
    let presentation = ker.generator_module();
    Ok(FPModule::new(SubmoduleGens::new(ker.ring(), presentation, rels)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Rat;

    fn ring(n: usize) -> PolyRing<Rat> {
        PolyRing::rationals(n)
    }

    fn p(r: PolyRing<Rat>, s: &str) -> Poly<Rat> {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let r = ring(2);
        let f = ModuleMap::new(
            r,
            GradedFreeModule::new(vec![1, 1]),
            GradedFreeModule::new(vec![0]),
            vec![vec![p(r, "x1"), p(r, "x2")]],
            0,
        )
        .unwrap();
        let id = ModuleMap::identity(r, f.source().clone());
        let c = compose(&f, &id).unwrap();
        assert_eq!(c.matrix(), f.matrix());
        assert!(compose(&id, &f).is_err());
    }

    #[test]
    fn direct_sum_of_zero_maps() {
        let r = ring(2);
        let a = ModuleMap::zero(r, GradedFreeModule::new(vec![1]), GradedFreeModule::new(vec![0, 0]), 0);
        let b = ModuleMap::zero(r, GradedFreeModule::new(vec![2, 2]), GradedFreeModule::new(vec![1]), 0);
        let s = direct_sum(&a, &b).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.source().twists(), &[1, 2, 2]);
        assert_eq!(s.target().twists(), &[0, 0, 1]);
    }

    #[test]
    fn homogeneity_violation_reported() {
        let r = ring(3);
        let f = ModuleMap::new(
            r,
            GradedFreeModule::new(vec![1, 1]),
            GradedFreeModule::new(vec![0]),
            vec![vec![p(r, "x1"), p(r, "x2*x3")]],
            0,
        )
        .unwrap();
        let (ok, v) = homogeneity_check(&f);
        assert!(!ok);
        assert_eq!(v, vec![DegreeViolation { row: 0, col: 1, found: Some(2), expected: 1 }]);
    }

    #[test]
    fn module_display() {
        let m = GradedFreeModule::new(vec![3, 3, 6]);
        assert_eq!(m.to_string(), "S^2(-3) + S(-6)");
        assert_eq!(m.shifted(1).twists(), &[2, 2, 5]);
    }

    #[test]
    fn submodule_rejects_inhomogeneous() {
        let r = ring(2);
        let v = Vector::new(vec![p(r, "x1 + x2^2")]);
        assert!(SubmoduleGens::new(r, GradedFreeModule::new(vec![0]), vec![v]).is_err());
    }
}
