//! JSON definition files for algebras, modules, sequence rings and finitely
//! presented modules.
//!
//! A reference to another definition is either a path, relative to the file
//! that contains it, or the definition itself inlined as an object.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, AlgebraMap};
use crate::error::{Error, Result};
use crate::evmodule::{EvMatrix, FpRModule};
use crate::evring::{EvElement, EvRing};
use crate::linalg::{Fp, Mat};
use crate::module::FdModule;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub p: u32,
    pub dim: usize,
    pub unit: Vec<i64>,
    /// `mul[i][j]` holds the coordinates of `b_i b_j`.
    pub mul: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDef {
    pub algebra: Ref<AlgebraDef>,
    pub dim: usize,
    /// One `dim x dim` matrix per basis element of the algebra.
    pub action: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDef {
    #[serde(rename = "T")]
    pub t: Ref<AlgebraDef>,
    #[serde(rename = "S")]
    pub s: Ref<AlgebraDef>,
    /// `dim S x dim T`, row `k` the image of `b_k`.
    pub iota: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDef {
    pub head: Vec<Vec<i64>>,
    pub tail: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FpModuleDef {
    pub ring: Ref<RingDef>,
    pub gens: usize,
    /// `gens` rows; each column is a relation.
    pub presentation: Vec<Vec<ElementDef>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(PathBuf),
    Inline(T),
}

/// A loaded and validated definition file.
#[derive(Clone, Debug)]
pub enum Definition {
    Algebra(Arc<Algebra>),
    Module(Arc<FdModule>),
    Ring(Arc<EvRing>),
    FpModule(Arc<FpRModule>),
}

impl Definition {
    pub fn kind(&self) -> &'static str {
        match self {
            Definition::Algebra(_) => "algebra",
            Definition::Module(_) => "module",
            Definition::Ring(_) => "ring",
            Definition::FpModule(_) => "fp-module",
        }
    }

    /// A one-line description for listings.
    pub fn describe(&self) -> String {
        match self {
            Definition::Algebra(a) => format!("algebra over F_{} of dimension {}", a.p(), a.dim()),
            Definition::Module(m) => {
                format!("module of dimension {} over an algebra of dimension {}", m.dim(), m.algebra().dim())
            }
            Definition::Ring(r) => format!("sequence ring with dim T = {}, dim S = {}", r.t().dim(), r.s().dim()),
            Definition::FpModule(n) => {
                let plural = |k: usize, w: &str| format!("{k} {w}{}", if k == 1 { "" } else { "s" });
                format!(
                    "presented module with {} and {}, stable from index {}",
                    plural(n.gens(), "generator"),
                    plural(n.presentation().cols(), "relation"),
                    n.stable_index()
                )
            }
        }
    }
}

struct Loader<'a> {
    path: &'a Path,
}

impl Loader<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Definition { path: self.path.to_path_buf(), message: message.into() }
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            e @ (Error::Definition { .. } | Error::Io { .. } | Error::Json { .. }) => e,
            e => self.err(e.to_string()),
        })
    }

    fn resolve<T: for<'de> Deserialize<'de> + Clone>(&self, r: &Ref<T>) -> Result<(T, PathBuf)> {
        match r {
            Ref::Inline(t) => Ok((t.clone(), self.path.to_path_buf())),
            Ref::Path(p) => {
                let full = self.path.parent().unwrap_or(Path::new(".")).join(p);
                Ok((read_json(&full)?, full))
            }
        }
    }

    fn field(&self, p: u32) -> Result<Fp> {
        self.wrap(Fp::new(p))
    }

    fn algebra(&self, def: &AlgebraDef) -> Result<Arc<Algebra>> {
        let f = self.field(def.p)?;
        let n = def.dim;
        if def.mul.len() != n || def.mul.iter().any(|row| row.len() != n) {
            return Err(self.err(format!("`mul` must be a {n}x{n} array")));
        }
        let mut table = Vec::with_capacity(n * n * n);
        for (i, row) in def.mul.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(self.err(format!("`mul[{i}][{j}]` must have {n} coordinates")));
                }
                table.extend(v.iter().map(|&x| f.reduce(x)));
            }
        }
        let unit = def.unit.iter().map(|&x| f.reduce(x)).collect();
        let name = self.path.file_stem().map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
        self.wrap(Algebra::from_table(f, n, table, unit, name))
    }

    fn matrix(&self, f: Fp, rows: usize, cols: usize, m: &[Vec<i64>], what: &str) -> Result<Mat> {
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return Err(self.err(format!("{what} must be a {rows}x{cols} matrix")));
        }
        self.wrap(Mat::from_rows(f, m))
    }

    fn module(&self, def: &ModuleDef) -> Result<Arc<FdModule>> {
        let (adef, apath) = self.resolve(&def.algebra)?;
        let alg = Loader { path: &apath }.algebra(&adef)?;
        if def.action.len() != alg.dim() {
            return Err(self.err(format!("`action` needs one matrix per basis element ({})", alg.dim())));
        }
        let action = def
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| self.matrix(alg.field(), def.dim, def.dim, m, &format!("`action[{i}]`")))
            .collect::<Result<Vec<_>>>()?;
        self.wrap(FdModule::new(&alg, def.dim, action))
    }

    fn ring(&self, def: &RingDef) -> Result<Arc<EvRing>> {
        let (tdef, tpath) = self.resolve(&def.t)?;
        let (sdef, spath) = self.resolve(&def.s)?;
        let t = Loader { path: &tpath }.algebra(&tdef)?;
        let s = Loader { path: &spath }.algebra(&sdef)?;
        if t.field() != s.field() {
            return Err(self.err("T and S are over different fields"));
        }
        let iota = self.matrix(t.field(), s.dim(), t.dim(), &def.iota, "`iota`")?;
        let map = self.wrap(AlgebraMap::new(&s, &t, iota))?;
        self.wrap(EvRing::new(map))
    }

    fn fp_module(&self, def: &FpModuleDef) -> Result<Arc<FpRModule>> {
        let (rdef, rpath) = self.resolve(&def.ring)?;
        let ring = Loader { path: &rpath }.ring(&rdef)?;
        if def.presentation.len() != def.gens {
            return Err(self.err(format!("`presentation` must have {} rows", def.gens)));
        }
        let f = ring.t().field();
        let rows = def
            .presentation
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let head = e.head.iter().map(|v| v.iter().map(|&x| f.reduce(x)).collect()).collect();
                        let tail = e.tail.iter().map(|&x| f.reduce(x)).collect();
                        self.wrap(EvElement::new(&ring, head, tail))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        let m = self.wrap(EvMatrix::new(&ring, def.gens, cols, rows.into_iter().flatten().collect()))?;
        Ok(FpRModule::new(m))
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| Error::Json { context: path.display().to_string(), source })
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>> {
    Loader { path }.algebra(&read_json(path)?)
}

pub fn load_module(path: &Path) -> Result<Arc<FdModule>> {
    Loader { path }.module(&read_json(path)?)
}

pub fn load_ring(path: &Path) -> Result<Arc<EvRing>> {
    Loader { path }.ring(&read_json(path)?)
}

pub fn load_fp_module(path: &Path) -> Result<Arc<FpRModule>> {
    Loader { path }.fp_module(&read_json(path)?)
}

/// Loads any definition file, telling the kinds apart by their keys.
pub fn load_definition(path: &Path) -> Result<Definition> {
    let v: Value = read_json(path)?;
    let loader = Loader { path };
    fn parse<T: for<'de> Deserialize<'de>>(loader: &Loader<'_>, v: Value) -> Result<T> {
        serde_json::from_value(v).map_err(|e| loader.err(e.to_string()))
    }
    let obj = v.as_object().ok_or_else(|| loader.err("expected a JSON object"))?;
    if obj.contains_key("presentation") {
        Ok(Definition::FpModule(loader.fp_module(&parse(&loader, v)?)?))
    } else if obj.contains_key("iota") {
        Ok(Definition::Ring(loader.ring(&parse(&loader, v)?)?))
    } else if obj.contains_key("action") {
        Ok(Definition::Module(loader.module(&parse(&loader, v)?)?))
    } else if obj.contains_key("mul") {
        Ok(Definition::Algebra(loader.algebra(&parse(&loader, v)?)?))
    } else {
        Err(loader.err("not an algebra, module, ring or presented module definition"))
    }
}

fn ints(v: &[u8]) -> Vec<i64> {
    v.iter().map(|&x| i64::from(x)).collect()
}

fn mat_ints(m: &Mat) -> Vec<Vec<i64>> {
    m.row_iter().map(ints).collect()
}

pub fn algebra_def(a: &Algebra) -> AlgebraDef {
    let n = a.dim();
    AlgebraDef {
        p: u32::from(a.p()),
        dim: n,
        unit: ints(a.unit_coords()),
        mul: (0..n).map(|i| (0..n).map(|j| ints(a.basis_product(i, j))).collect()).collect(),
    }
}

pub fn module_def(m: &FdModule) -> ModuleDef {
    ModuleDef {
        algebra: Ref::Inline(algebra_def(m.algebra())),
        dim: m.dim(),
        action: m.action().iter().map(mat_ints).collect(),
    }
}

pub fn ring_def(r: &EvRing) -> RingDef {
    RingDef {
        t: Ref::Inline(algebra_def(r.t())),
        s: Ref::Inline(algebra_def(r.s())),
        iota: mat_ints(r.iota().matrix()),
    }
}

pub fn fp_module_def(n: &FpRModule) -> FpModuleDef {
    let p = n.presentation();
    FpModuleDef {
        ring: Ref::Inline(ring_def(n.ring())),
        gens: n.gens(),
        presentation: (0..p.rows())
            .map(|i| {
                (0..p.cols())
                    .map(|j| {
                        let e = p.get(i, j);
                        ElementDef { head: e.head().iter().map(|v| ints(v)).collect(), tail: ints(e.tail()) }
                    })
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::upper_triangular;
    use crate::evmodule::random_fp_module;

    fn write(dir: &Path, name: &str, v: &impl Serialize) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p
    }

    #[test]
    fn roundtrips_through_files() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let (s, iota) = upper_triangular(Fp::new(2).unwrap(), 2).unwrap();
        let ring = EvRing::new(iota).unwrap();

        let a = load_algebra(&write(dir, "s.json", &algebra_def(&s))).unwrap();
        assert_eq!(*a, *s);

        let reg = FdModule::regular(&s);
        let m = load_module(&write(dir, "reg.json", &module_def(&reg))).unwrap();
        assert_eq!(m.action(), reg.action());

        let r = load_ring(&write(dir, "ring.json", &ring_def(&ring))).unwrap();
        assert_eq!(r.iota().matrix(), ring.iota().matrix());

        let n = random_fp_module(&ring, 2, 2, 3, 5);
        let path = write(dir, "n.json", &fp_module_def(&n));
        match load_definition(&path).unwrap() {
            Definition::FpModule(back) => {
                assert_eq!(back.stable_index(), n.stable_index());
                assert_eq!(fp_module_def(&back), fp_module_def(&n));
            }
            d => panic!("loaded a {}", d.kind()),
        }
    }

    #[test]
    fn references_resolve_relative_to_the_file() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let (s, iota) = upper_triangular(Fp::new(2).unwrap(), 2).unwrap();
        std::fs::create_dir_all(dir.join("alg")).unwrap();
        write(dir, "alg/s.json", &algebra_def(&s));
        write(dir, "alg/t.json", &algebra_def(iota.target()));
        let def = RingDef {
            t: Ref::Path("alg/t.json".into()),
            s: Ref::Path("alg/s.json".into()),
            iota: mat_ints(iota.matrix()),
        };
        let r = load_ring(&write(dir, "ring.json", &def)).unwrap();
        assert_eq!(r.t().dim(), 4);
    }

    #[test]
    fn invalid_definitions_are_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let mut bad = algebra_def(&upper_triangular(Fp::new(2).unwrap(), 2).unwrap().0);
        bad.unit = vec![1, 0, 0];
        let err = load_definition(&write(dir, "bad.json", &bad)).unwrap_err();
        assert!(err.to_string().contains("bad.json"), "{err}");

        let p = dir.join("junk.json");
        std::fs::write(&p, "{\"hello\": 1}").unwrap();
        assert!(load_definition(&p).is_err());
        assert!(matches!(load_definition(&dir.join("missing.json")), Err(Error::Io { .. })));
    }
}
