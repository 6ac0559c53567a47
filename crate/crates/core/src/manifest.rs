//! JSON formats: problem manifests, map files, ideal files and module files.
//!
//! A manifest looks like
//!
//! ```json
//! {
//!   "n": 6, "t": 1, "d": 0, "c": 0, "shape": "E_only",
//!   "beta": ["e[1,2]", "e[1,3]"],
//!   "phi": { "A": [[[1,2,3,4,5], "x6"]], "B": [[1, 4, "-x1^2*x2*x4"]] },
//!   "f": { "source_twists": [3], "columns": [["x3", "-x2"]] }
//! }
//! ```
//!
//! `phi` may instead be `{ "raw": "x1*e*[1] + ..." }`. A map gives either
//! `entries` (one list per target row) or `columns` (one list per source
//! generator); `target_twists` defaults to the degrees of `beta`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bsequence::{phi_from_families, presentation_space, BSequenceProblem, Shape};
use crate::error::{Error, Result};
use crate::free_mod::{FPModule, GradedFreeModule, ModuleMap, SubmoduleGens, Vector};
use crate::koszul::{e_module, KoszulVector};
use crate::parse::parse_poly;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source_twists: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_twists: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub shift: i64,
}

impl MapFile {
    pub fn from_map<S: Scalar>(m: &ModuleMap<S>) -> Self {
        MapFile {
            source_twists: m.source().twists().to_vec(),
            target_twists: Some(m.target().twists().to_vec()),
            entries: Some(m.matrix().iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect()),
            columns: None,
            shift: m.shift(),
        }
    }

    /// Builds the map; `target` supplies twists when the file has none.
    pub fn to_map<S: Scalar>(&self, ring: PolyRing<S>, target: Option<&[i64]>) -> Result<ModuleMap<S>> {
        let tt = match (&self.target_twists, target) {
            (Some(t), _) => t.clone(),
            (None, Some(t)) => t.to_vec(),
            (None, None) => return Err(Error::Manifest("map file needs target_twists".into())),
        };
        let source = GradedFreeModule::new(self.source_twists.clone());
        let target = GradedFreeModule::new(tt);
        let parse_grid = |grid: &Vec<Vec<String>>, outer: usize, inner: usize, what: &str| -> Result<Vec<Vec<Poly<S>>>> {
            if grid.len() != outer || grid.iter().any(|r| r.len() != inner) {
                return Err(Error::Manifest(format!("{what} must be a {outer} x {inner} grid")));
            }
            grid.iter().map(|r| r.iter().map(|s| parse_poly(s, ring)).collect()).collect()
        };
        let matrix = match (&self.entries, &self.columns) {
            (Some(e), None) => parse_grid(e, target.rank(), source.rank(), "entries")?,
            (None, Some(c)) => {
                let cols = parse_grid(c, source.rank(), target.rank(), "columns")?;
                (0..target.rank()).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect()
            }
            (None, None) if source.rank() == 0 || target.rank() == 0 => {
                vec![vec![ring.zero(); source.rank()]; target.rank()]
            }
            _ => return Err(Error::Manifest("a map needs exactly one of entries and columns".into())),
        };
        ModuleMap::new(ring, source, target, matrix, self.shift)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhiSpec {
    Raw { raw: String },
    Families {
        #[serde(rename = "A", default)]
        a: Vec<(Vec<usize>, String)>,
        #[serde(rename = "B", default)]
        b: Vec<(usize, usize, String)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub n: usize,
    pub t: usize,
    #[serde(default)]
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<i64>,
    pub shape: Shape,
    pub beta: Vec<String>,
    pub phi: PhiSpec,
    pub f: MapFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail: Vec<MapFile>,
    /// Request the non-triviality report (two summands only).
    #[serde(default)]
    pub nontriviality: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Manifest(format!("cannot read {}: {e}", path.display())))
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Manifest::from_json(&read(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// Builds the problem over `ring`, which must have `n` variables.
    pub fn problem<S: Scalar>(&self, ring: PolyRing<S>) -> Result<BSequenceProblem<S>> {
        if ring.nvars() != self.n {
            return Err(Error::Manifest(format!("ring has {} variables, manifest says n = {}", ring.nvars(), self.n)));
        }
        if self.t + 1 > self.n {
            return Err(Error::Range(format!("t = {} must be at most n - 1", self.t)));
        }
        let space = presentation_space(self.n, self.t, self.d, self.shape)?;
        let beta = self
            .beta
            .iter()
            .map(|s| KoszulVector::parse(s, &space, ring).map(|v| v.to_vector()))
            .collect::<Result<Vec<Vector<S>>>>()?;
        let row = match &self.phi {
            PhiSpec::Raw { raw } => KoszulVector::parse(raw, &space.transposed(), ring)?.to_vector().into_entries(),
            PhiSpec::Families { a, b } => {
                let a = a.iter().map(|(l, c)| Ok((l.clone(), parse_poly(c, ring)?))).collect::<Result<Vec<_>>>()?;
                let b = b.iter().map(|(i, j, c)| Ok((*i, *j, parse_poly(c, ring)?))).collect::<Result<Vec<_>>>()?;
                phi_from_families(ring, self.t, self.shape, &a, &b)?
            }
        };
        let u = space.free_module();
        let degs = beta
            .iter()
            .enumerate()
            .map(|(i, b)| {
                b.degree(u.twists())
                    .ok_or_else(|| Error::InvalidProblem(format!("beta_{} is not homogeneous", i + 1)))
            })
            .collect::<Result<Vec<i64>>>()?;
        let f = self.f.to_map(ring, Some(&degs))?;
        let mut tail = Vec::new();
        let mut prev = f.source().twists().to_vec();
        for m in &self.tail {
            let map = m.to_map(ring, Some(&prev))?;
            prev = map.source().twists().to_vec();
            tail.push(map);
        }
        BSequenceProblem::new(ring, self.t, self.d, self.shape, beta, row, f, tail, self.c)
    }
}

/// `{"n": 6, "generators": ["x1*x4", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub n: usize,
    pub generators: Vec<String>,
}

impl IdealFile {
    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read(path)?).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn from_polys<S: Scalar>(n: usize, gens: &[Poly<S>]) -> Self {
        IdealFile { n, generators: gens.iter().map(|p| p.to_string()).collect() }
    }

    pub fn ideal<S: Scalar>(&self, ring: PolyRing<S>) -> Result<SubmoduleGens<S>> {
        if ring.nvars() != self.n {
            return Err(Error::Manifest(format!("ring has {} variables, file says n = {}", ring.nvars(), self.n)));
        }
        let gens = self.generators.iter().map(|s| parse_poly(s, ring)).collect::<Result<Vec<_>>>()?;
        SubmoduleGens::ideal(ring, gens)
    }
}

/// `coker(relations)` on `⊕ S(-twists_i)`; each relation lists its entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub n: usize,
    pub twists: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

impl ModuleFile {
    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read(path)?).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn module<S: Scalar>(&self, ring: PolyRing<S>) -> Result<FPModule<S>> {
        if ring.nvars() != self.n {
            return Err(Error::Manifest(format!("ring has {} variables, file says n = {}", ring.nvars(), self.n)));
        }
        let amb = GradedFreeModule::new(self.twists.clone());
        let rels = self
            .relations
            .iter()
            .map(|r| {
                if r.len() != amb.rank() {
                    return Err(Error::Manifest(format!("relation with {} entries on rank {}", r.len(), amb.rank())));
                }
                Ok(Vector::new(r.iter().map(|s| parse_poly(s, ring)).collect::<Result<Vec<_>>>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FPModule::new(SubmoduleGens::new(ring, amb, rels)?))
    }
}

/// One summand of a module spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleTerm {
    /// `E(n, s, shift)`.
    Syzygy { n: usize, s: usize, shift: i64 },
    /// `free(n, d_1, …)` for `⊕ S(-d_i)`.
    Free { n: usize, twists: Vec<i64> },
}

/// Parses `E(6,1,0)+E(6,5,1)` or `free(4,0,1)`; `⊕` is accepted for `+`.
pub fn parse_module_spec(spec: &str) -> Result<Vec<ModuleTerm>> {
    let cleaned: String = spec.replace('⊕', "+").chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::parse(0, "empty module spec"));
    }
    let mut out = Vec::new();
    let mut pos = 0;
    for part in cleaned.split('+') {
        let open = part.find('(').ok_or_else(|| Error::parse(pos, "expected `(`"))?;
        if !part.ends_with(')') {
            return Err(Error::parse(pos + part.len(), "expected `)`"));
        }
        let name = &part[..open];
        let args: Vec<i64> = part[open + 1..part.len() - 1]
            .split(',')
            .map(|a| a.parse::<i64>().map_err(|_| Error::parse(pos + open + 1, format!("bad integer `{a}`"))))
            .collect::<Result<_>>()?;
        let nonneg = |v: i64| usize::try_from(v).map_err(|_| Error::parse(pos, "expected a nonnegative integer"));
        match name {
            "E" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err(Error::parse(pos, "E takes (n, s) or (n, s, shift)"));
                }
                out.push(ModuleTerm::Syzygy {
                    n: nonneg(args[0])?,
                    s: nonneg(args[1])?,
                    shift: args.get(2).copied().unwrap_or(0),
                });
            }
            "free" => {
                if args.is_empty() {
                    return Err(Error::parse(pos, "free takes (n, d_1, …)"));
                }
                out.push(ModuleTerm::Free { n: nonneg(args[0])?, twists: args[1..].to_vec() });
            }
            other => return Err(Error::parse(pos, format!("unknown module `{other}`"))),
        }
        pos += part.len() + 1;
    }
    let n0 = match &out[0] {
        ModuleTerm::Syzygy { n, .. } | ModuleTerm::Free { n, .. } => *n,
    };
    if out.iter().any(|t| match t {
        ModuleTerm::Syzygy { n, .. } | ModuleTerm::Free { n, .. } => *n != n0,
    }) {
        return Err(Error::parse(0, "all summands must use the same n"));
    }
    Ok(out)
}

pub fn spec_nvars(terms: &[ModuleTerm]) -> usize {
    match &terms[0] {
        ModuleTerm::Syzygy { n, .. } | ModuleTerm::Free { n, .. } => *n,
    }
}

/// The direct sum described by a parsed spec.
pub fn spec_module<S: Scalar>(ring: PolyRing<S>, terms: &[ModuleTerm]) -> Result<FPModule<S>> {
    let mut acc: Option<FPModule<S>> = None;
    for t in terms {
        let m = match t {
            ModuleTerm::Syzygy { s, shift, .. } => e_module(ring, *s, *shift)?.module,
            ModuleTerm::Free { twists, .. } => FPModule::free(ring, GradedFreeModule::new(twists.clone())),
        };
        acc = Some(match acc {
            None => m,
            Some(a) => a.direct_sum(&m),
        });
    }
    acc.ok_or_else(|| Error::parse(0, "empty module spec"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn module_spec_grammar() {
        let t = parse_module_spec("E(6,1,0) + E(6,5,1)").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1], ModuleTerm::Syzygy { n: 6, s: 5, shift: 1 });
        assert!(parse_module_spec("E(6,1)+free(5,0)").is_err());
        assert!(parse_module_spec("G(3,1)").is_err());
    }

    #[test]
    fn map_file_roundtrip() {
        let r = PolyRing::<Rat>::rationals(3);
        let mf = MapFile {
            source_twists: vec![3],
            target_twists: Some(vec![2, 2]),
            entries: None,
            columns: Some(vec![vec!["x1".into(), "-x2".into()]]),
            shift: 0,
        };
        let m = mf.to_map(r, None).unwrap();
        let back = MapFile::from_map(&m).to_map(r, None).unwrap();
        assert_eq!(m.matrix(), back.matrix());
    }
}
