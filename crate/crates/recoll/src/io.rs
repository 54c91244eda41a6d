//! JSON file formats for algebras, modules, subcategories and functors.
//!
//! Module files reference their algebra by path, resolved relative to the
//! module file. Action matrices act on column vectors: the matrix stored
//! under label `b` sends `v` to `v·b`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Arrow, Quiver, RelationTerm, DEFAULT_PATH_CAP};
use crate::exactla::{FieldChar, FpMatrix};
use crate::fpfun::{self, FpFunctor};
use crate::modcat::Module;
use crate::subcat::Subcat;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub char: u64,
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
}

impl AlgebraFile {
    pub fn quiver(&self) -> Quiver {
        Quiver { vertices: self.vertices, arrows: self.arrows.clone() }
    }

    /// Builds the algebra, with the field characteristic optionally overridden.
    pub fn build(&self, char_override: Option<u64>) -> Result<Arc<Algebra>> {
        let f = FieldChar::new(char_override.unwrap_or(self.char))?;
        Ok(Arc::new(Algebra::from_quiver(&self.quiver(), &self.relations, f, DEFAULT_PATH_CAP)?))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn read_algebra(path: &Path) -> Result<AlgebraFile> {
    read_json(path)
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    let r = Path::new(reference);
    if r.is_absolute() {
        r.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub algebra: String,
    pub dim: usize,
    /// Row-major matrices keyed by basis label. Vertices and arrows are
    /// required; longer paths are filled in from them when omitted.
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleFile {
    pub fn build(&self, alg: &Arc<Algebra>) -> Result<Module> {
        let f = alg.field();
        let mut act: Vec<Option<FpMatrix>> = Vec::with_capacity(alg.dim());
        for label in alg.labels() {
            match self.action.get(label) {
                Some(rows) => {
                    if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                        return Err(Error::Input(format!("action of {label} must be {0}x{0}", self.dim)));
                    }
                    act.push(Some(FpMatrix::from_rows_i64(f, rows)));
                }
                None => act.push(None),
            }
        }
        for label in self.action.keys() {
            if !alg.labels().contains(label) {
                return Err(Error::Input(format!("unknown basis label {label}")));
            }
        }
        let labels = alg.labels().to_vec();
        let mut out = Vec::with_capacity(labels.len());
        for (k, label) in labels.iter().enumerate() {
            if let Some(m) = &act[k] {
                out.push(m.clone());
                continue;
            }
            let parts: Vec<&str> = label.split('*').collect();
            if parts.len() < 2 {
                return Err(Error::Input(format!("missing action of generator {label}")));
            }
            // v·(a1 a2 ... ak) = (...(v·a1)·a2...)·ak
            let mut m = FpMatrix::identity(f, self.dim);
            for p in parts {
                let idx = labels
                    .iter()
                    .position(|l| l == p)
                    .ok_or_else(|| Error::Input(format!("arrow {p} is not a basis element")))?;
                let a = act[idx].as_ref().ok_or_else(|| Error::Input(format!("missing action of arrow {p}")))?;
                m = a.mul(&m);
            }
            out.push(m);
        }
        Module::new(alg.clone(), self.dim, out)
    }

    pub fn from_module(m: &Module, algebra: &str) -> Self {
        let action = m
            .algebra()
            .labels()
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let a = m.act(k);
                let rows = (0..a.rows()).map(|i| a.row(i).iter().map(|&x| x as i64).collect()).collect();
                (l.clone(), rows)
            })
            .collect();
        ModuleFile { algebra: algebra.to_string(), dim: m.dim(), action }
    }
}

/// Loads a module file together with the algebra it references.
pub fn read_module(path: &Path, char_override: Option<u64>) -> Result<(Arc<Algebra>, Module)> {
    let mf: ModuleFile = read_json(path)?;
    let alg = read_algebra(&resolve(path, &mf.algebra))?.build(char_override)?;
    let m = mf.build(&alg)?;
    Ok((alg, m))
}

/// Which generator spans the subcategory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// The indecomposable projectives.
    Projectives,
    /// The local pieces of `⊕ Λ/J^i`.
    RadicalLayers,
    /// Module files, whose direct sum is the generator.
    Modules(Vec<String>),
}

impl Generator {
    pub fn name(&self) -> String {
        match self {
            Generator::Projectives => "projectives".into(),
            Generator::RadicalLayers => "radical-layers".into(),
            Generator::Modules(v) => format!("modules({})", v.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcatFile {
    pub algebra: String,
    pub generator: Generator,
}

pub fn build_subcat(alg: &Arc<Algebra>, g: &Generator, base: &Path) -> Result<Arc<Subcat>> {
    match g {
        Generator::Projectives => Subcat::projectives(alg),
        Generator::RadicalLayers => Subcat::radical_layers(alg),
        Generator::Modules(files) => {
            let mut ms = Vec::new();
            for file in files {
                let mf: ModuleFile = read_json(&resolve(base, file))?;
                ms.push(mf.build(alg)?);
            }
            Subcat::new(alg, ms)
        }
    }
}

/// Loads a subcategory file and its algebra.
pub fn read_subcat(path: &Path, char_override: Option<u64>) -> Result<(Arc<Algebra>, Arc<Subcat>)> {
    let sf: SubcatFile = read_json(path)?;
    let alg = read_algebra(&resolve(path, &sf.algebra))?.build(char_override)?;
    let sub = build_subcat(&alg, &sf.generator, path)?;
    Ok((alg, sub))
}

/// A functor presented by a module map `x1 -> x0` between objects of the
/// subcategory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub subcat: String,
    pub x1: String,
    pub x0: String,
    /// Row-major matrix of `d`, of size `dim x0` by `dim x1`.
    pub d: Vec<Vec<i64>>,
}

pub fn read_functor(path: &Path, char_override: Option<u64>) -> Result<(Arc<Subcat>, FpFunctor)> {
    let ff: FunctorFile = read_json(path)?;
    let (alg, sub) = read_subcat(&resolve(path, &ff.subcat), char_override)?;
    let load = |r: &str| -> Result<Module> {
        let mf: ModuleFile = read_json(&resolve(path, r))?;
        mf.build(&alg)
    };
    let (x1, x0) = (load(&ff.x1)?, load(&ff.x0)?);
    let f = alg.field();
    let d = if ff.d.is_empty() {
        FpMatrix::zeros(f, x0.dim(), x1.dim())
    } else {
        FpMatrix::from_rows_i64(f, &ff.d)
    };
    if d.rows() != x0.dim() || d.cols() != x1.dim() {
        return Err(Error::Input(format!("d must be {}x{}", x0.dim(), x1.dim())));
    }
    crate::modcat::ModuleMorphism::new(x1.clone(), x0.clone(), d.clone())?;
    let w1 = sub.add_witness(&x1)?.ok_or_else(|| Error::Input("x1 is not in the subcategory".into()))?;
    let w0 = sub.add_witness(&x0)?.ok_or_else(|| Error::Input("x0 is not in the subcategory".into()))?;
    let func = fpfun::from_module_map(&sub, &w1, &w0, &d)?;
    Ok((sub, func))
}

/// Module summary used in CLI output.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub dim: usize,
    pub top: Vec<usize>,
    pub action: BTreeMap<String, Vec<Vec<u32>>>,
}

impl ModuleSummary {
    pub fn of(m: &Module) -> Result<Self> {
        let top = crate::modcat::projective_cover_classes(m)?.1;
        let action = m
            .algebra()
            .labels()
            .iter()
            .enumerate()
            .map(|(k, l)| (l.clone(), m.act(k).row_vecs()))
            .collect();
        Ok(ModuleSummary { dim: m.dim(), top, action })
    }
}
