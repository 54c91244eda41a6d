//! Basic algebras from quivers with admissible relations, and algebras given
//! by raw structure constants (endomorphism rings, corners, opposites).
//!
//! Paths compose left to right: `a*b` means traverse `a`, then `b`. A right
//! module therefore assigns to an arrow `a: u -> v` a map `M e_u -> M e_v`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactla::{axpy, Coordinates, FieldChar, FpMatrix, RowSpace};
use crate::{Error, Result};

/// Default cap on the number of paths enumerated while building an algebra.
pub const DEFAULT_PATH_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= self.vertices || a.dst >= self.vertices {
                return Err(Error::Input(format!("arrow {} has an endpoint outside 0..{}", a.name, self.vertices)));
            }
            if a.name.is_empty() || a.name.contains('*') {
                return Err(Error::Input(format!("arrow name {:?} must be nonempty and free of '*'", a.name)));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Input(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(())
    }

    fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Input(format!("unknown arrow {name}")))
    }
}

/// One term `coeff * path` of a relation, with the path as arrow names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coeff: i64,
    pub path: Vec<String>,
}

/// A path in the quiver; length-zero paths are vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    fn key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.start)
    }

    fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.start)
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

fn cmp_paths(a: &Path, b: &Path) -> std::cmp::Ordering {
    a.key().cmp(&b.key())
}

/// Radical and a complete set of primitive orthogonal idempotents.
///
/// `classes[k]` is the isomorphism class of the indecomposable projective
/// `idempotents[k] A`; class representatives are the first index per class.
#[derive(Clone, Debug)]
pub struct RadicalData {
    pub rad: FpMatrix,
    pub idempotents: Vec<Vec<u32>>,
    pub classes: Vec<usize>,
}

impl RadicalData {
    pub fn class_count(&self) -> usize {
        self.classes.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Index of the first idempotent in each class, ordered by class.
    pub fn class_reps(&self) -> Vec<usize> {
        (0..self.class_count()).map(|c| self.classes.iter().position(|&k| k == c).unwrap()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct QuiverInfo {
    pub quiver: Quiver,
    pub paths: Vec<Path>,
}

/// A finite-dimensional associative unital algebra with fixed basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    f: FieldChar,
    dim: usize,
    labels: Vec<String>,
    /// `mult[(i*dim + j)*dim + k]` is the coefficient of `b_k` in `b_i b_j`.
    mult: Vec<u32>,
    unit: Vec<u32>,
    radical: Option<RadicalData>,
    /// `powers[i]` spans `J^i`, from `J^0 = A` down to `J^n = 0`.
    powers: Vec<FpMatrix>,
    gens: Vec<Vec<u32>>,
    quiver: Option<QuiverInfo>,
    fingerprint: u64,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint && self.f == other.f && self.dim == other.dim && self.mult == other.mult
    }
}

fn fingerprint(f: FieldChar, dim: usize, mult: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    (f.p(), dim, mult).hash(&mut h);
    h.finish()
}

impl Algebra {
    pub fn field(&self) -> FieldChar {
        self.f
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn radical(&self) -> Option<&RadicalData> {
        self.radical.as_ref()
    }
    pub fn quiver(&self) -> Option<&QuiverInfo> {
        self.quiver.as_ref()
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
    /// Elements generating the algebra (as an algebra).
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len() - 1
    }
    /// Basis rows of `J^i`; `i` may exceed the nilpotency index.
    pub fn radical_power(&self, i: usize) -> FpMatrix {
        self.powers.get(i).cloned().unwrap_or_else(|| FpMatrix::zeros(self.f, 0, self.dim))
    }
    pub fn radical_dims(&self) -> Vec<usize> {
        self.powers.iter().map(|m| m.rows()).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        self.mult[(i * self.dim + j) * self.dim + k]
    }

    fn product_row(&self, i: usize, j: usize) -> &[u32] {
        let o = (i * self.dim + j) * self.dim;
        &self.mult[o..o + self.dim]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.f;
        let mut out = vec![0u32; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                axpy(f, &mut out, f.mul(xi, yj), self.product_row(i, j));
            }
        }
        out
    }

    /// Matrix of `y -> x*y` on coordinate columns.
    pub fn left_mult_matrix(&self, x: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        FpMatrix::from_col_vecs(self.f, self.dim, &cols)
    }

    /// Matrix of `y -> y*x` on coordinate columns.
    pub fn right_mult_matrix(&self, x: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        FpMatrix::from_col_vecs(self.f, self.dim, &cols)
    }

    /// Builds an algebra from a structure-constant table, checking
    /// associativity and unitality on all basis elements.
    pub fn from_table(
        f: FieldChar,
        labels: Vec<String>,
        mult: Vec<u32>,
        unit: Vec<u32>,
        radical: Option<RadicalData>,
    ) -> Result<Self> {
        let dim = labels.len();
        if mult.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::Dimension("structure-constant table has the wrong size".into()));
        }
        let fp = fingerprint(f, dim, &mult);
        let mut a = Algebra {
            f,
            dim,
            labels,
            mult,
            unit,
            radical: None,
            powers: Vec::new(),
            gens: Vec::new(),
            quiver: None,
            fingerprint: fp,
        };
        a.check_axioms()?;
        a.install_radical(radical)?;
        Ok(a)
    }

    fn install_radical(&mut self, radical: Option<RadicalData>) -> Result<()> {
        match radical {
            Some(r) => {
                self.check_radical(&r)?;
                self.powers = self.power_filtration(&r.rad)?;
                self.gens = self.generators_from_radical(&r);
                self.radical = Some(r);
            }
            None => {
                self.powers = vec![FpMatrix::identity(self.f, self.dim)];
                self.gens = (0..self.dim).map(|i| self.basis_vector(i)).collect();
            }
        }
        Ok(())
    }

    fn check_axioms(&self) -> Result<()> {
        let f = self.f;
        let d = self.dim;
        for i in 0..d {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::Input(format!("unit fails on basis element {}", self.labels[i])));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_row(i, j).to_vec();
                for k in 0..d {
                    let mut lhs = vec![0u32; d];
                    for (l, &c) in ij.iter().enumerate() {
                        if c != 0 {
                            axpy(f, &mut lhs, c, self.product_row(l, k));
                        }
                    }
                    let jk = self.product_row(j, k);
                    let mut rhs = vec![0u32; d];
                    for (l, &c) in jk.iter().enumerate() {
                        if c != 0 {
                            axpy(f, &mut rhs, c, self.product_row(i, l));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Input(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_radical(&self, r: &RadicalData) -> Result<()> {
        let f = self.f;
        if r.rad.cols() != self.dim || r.classes.len() != r.idempotents.len() {
            return Err(Error::Dimension("radical data has the wrong shape".into()));
        }
        let mut sum = vec![0u32; self.dim];
        for (a, ea) in r.idempotents.iter().enumerate() {
            axpy(f, &mut sum, 1, ea);
            for (b, eb) in r.idempotents.iter().enumerate() {
                let prod = self.mul(ea, eb);
                let want = if a == b { ea.clone() } else { vec![0; self.dim] };
                if prod != want {
                    return Err(Error::Input("idempotents are not orthogonal idempotents".into()));
                }
            }
        }
        if sum != self.unit {
            return Err(Error::Input("idempotents do not sum to 1".into()));
        }
        // The radical must be a two-sided ideal.
        let mut space = RowSpace::new(f, self.dim);
        for row in r.rad.row_vecs() {
            space.insert(&row);
        }
        for row in r.rad.row_vecs() {
            for k in 0..self.dim {
                let bk = self.basis_vector(k);
                if !space.contains(&self.mul(&row, &bk)) || !space.contains(&self.mul(&bk, &row)) {
                    return Err(Error::Input("radical is not a two-sided ideal".into()));
                }
            }
        }
        Ok(())
    }

    /// `J^0 = A, J^1 = rad, J^{i+1} = J^i J`, ending with the zero space.
    fn power_filtration(&self, rad: &FpMatrix) -> Result<Vec<FpMatrix>> {
        let f = self.f;
        let mut powers = vec![FpMatrix::identity(f, self.dim)];
        let mut cur = canonical_rows(rad);
        let rad_rows = cur.row_vecs();
        loop {
            let done = cur.rows() == 0;
            let prev = powers.last().unwrap().rows();
            if cur.rows() >= prev && prev > 0 {
                return Err(Error::Input("radical is not nilpotent".into()));
            }
            powers.push(cur.clone());
            if done {
                return Ok(powers);
            }
            let mut next = RowSpace::new(f, self.dim);
            for x in cur.row_vecs() {
                for y in &rad_rows {
                    next.insert(&self.mul(&x, y));
                }
            }
            cur = next.to_rref();
        }
    }

    /// Primitive idempotents plus lifts of a basis of `J / J^2`.
    fn generators_from_radical(&self, r: &RadicalData) -> Vec<Vec<u32>> {
        let f = self.f;
        let mut gens = r.idempotents.clone();
        let j2 = self.powers.get(2).cloned().unwrap_or_else(|| FpMatrix::zeros(f, 0, self.dim));
        let mut space = RowSpace::new(f, self.dim);
        for row in j2.row_vecs() {
            space.insert(&row);
        }
        let j1 = self.powers.get(1).cloned().unwrap_or_else(|| FpMatrix::zeros(f, 0, self.dim));
        for row in j1.row_vecs() {
            // Split each generator into idempotent-homogeneous pieces.
            for ea in &r.idempotents {
                for eb in &r.idempotents {
                    let piece = self.mul(&self.mul(ea, &row), eb);
                    if space.insert(&piece) {
                        gens.push(piece);
                    }
                }
            }
        }
        gens
    }

    /// Path algebra of `q` modulo the ideal generated by `relations`.
    pub fn from_quiver(q: &Quiver, relations: &[Vec<RelationTerm>], f: FieldChar, cap: usize) -> Result<Self> {
        q.validate()?;
        let rels = parse_relations(q, relations, f)?;
        let max_len = rels.iter().flat_map(|r| r.iter().map(|(_, p)| p.arrows.len())).max().unwrap_or(0);
        let mut len = max_len.max(2);
        loop {
            let paths = enumerate_paths(q, len, cap)?;
            let index: std::collections::HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let ideal = ideal_closure(q, &rels, &paths, &index, f, len);
            let top_paths: Vec<usize> = (0..paths.len()).filter(|&i| paths[i].arrows.len() == len).collect();
            if top_paths.iter().all(|&i| ideal.contains(&unit_vec(paths.len(), paths.len() - 1 - i))) {
                return Self::assemble(q, f, paths, ideal);
            }
            len += 1;
        }
    }

    fn assemble(q: &Quiver, f: FieldChar, paths: Vec<Path>, ideal: RowSpace) -> Result<Self> {
        let n = paths.len();
        // Columns of `ideal` are paths in descending order, so each pivot is the
        // largest path of its row and the non-pivot paths form the basis.
        let rref = ideal.to_rref();
        let mut pivot_row = vec![None; n];
        for r in 0..rref.rows() {
            let pc = rref.row(r).iter().position(|&x| x != 0).unwrap();
            pivot_row[n - 1 - pc] = Some(r);
        }
        let basis_idx: Vec<usize> = (0..n).filter(|&i| pivot_row[i].is_none()).collect();
        let mut pos_in_basis = vec![None; n];
        for (k, &i) in basis_idx.iter().enumerate() {
            pos_in_basis[i] = Some(k);
        }
        let dim = basis_idx.len();
        let normal_form = |i: usize| -> Vec<u32> {
            let mut v = vec![0u32; dim];
            match pivot_row[i] {
                None => v[pos_in_basis[i].unwrap()] = 1,
                Some(r) => {
                    for (c, &x) in rref.row(r).iter().enumerate() {
                        let pi = n - 1 - c;
                        if x != 0 && pi != i {
                            v[pos_in_basis[pi].unwrap()] = f.neg(x);
                        }
                    }
                }
            }
            v
        };
        let index: std::collections::HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let bpaths: Vec<Path> = basis_idx.iter().map(|&i| paths[i].clone()).collect();
        let mut mult = vec![0u32; dim * dim * dim];
        for (a, pa) in bpaths.iter().enumerate() {
            for (b, pb) in bpaths.iter().enumerate() {
                if let Some(w) = concat(pa, pb) {
                    if let Some(&wi) = index.get(&w) {
                        let nf = normal_form(wi);
                        mult[(a * dim + b) * dim..(a * dim + b + 1) * dim].copy_from_slice(&nf);
                    }
                }
            }
        }
        let labels: Vec<String> = bpaths.iter().map(|p| p.label(q)).collect();
        let mut unit = vec![0u32; dim];
        let mut idempotents = Vec::new();
        for v in 0..q.vertices {
            let k = bpaths.iter().position(|p| p.arrows.is_empty() && p.start == v).unwrap();
            unit[k] = 1;
            let mut e = vec![0u32; dim];
            e[k] = 1;
            idempotents.push(e);
        }
        let rad_rows: Vec<Vec<u32>> = (0..dim).filter(|&k| !bpaths[k].arrows.is_empty()).map(|k| unit_vec(dim, k)).collect();
        let rad = FpMatrix::from_row_vecs(f, dim, &rad_rows);
        let radical = RadicalData { rad, classes: (0..q.vertices).collect(), idempotents };
        let mut alg = Algebra::from_table(f, labels, mult, unit, Some(radical))?;
        // Quiver generators: vertices and arrows.
        alg.gens = (0..dim).filter(|&k| bpaths[k].arrows.len() <= 1).map(|k| unit_vec(dim, k)).collect();
        alg.quiver = Some(QuiverInfo { quiver: q.clone(), paths: bpaths });
        Ok(alg)
    }

    /// A copy with the coefficient of `e_k` in `e_i e_j` shifted by `delta`,
    /// skipping all validation. Only meant for fault injection.
    pub fn with_perturbed_constant(&self, i: usize, j: usize, k: usize, delta: u32) -> Algebra {
        let mut a = self.clone();
        let idx = (i * self.dim + j) * self.dim + k;
        a.mult[idx] = self.f.add(a.mult[idx], delta);
        a.fingerprint = fingerprint(self.f, self.dim, &a.mult);
        a
    }

    /// Same basis, reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut mult = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let src = (j * d + i) * d;
                mult[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&self.mult[src..src + d]);
            }
        }
        let fp = fingerprint(self.f, d, &mult);
        Algebra {
            f: self.f,
            dim: d,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            radical: self.radical.clone(),
            powers: self.powers.clone(),
            gens: self.gens.clone(),
            quiver: None,
            fingerprint: fp,
        }
    }

    /// The corner algebra `eAe` with basis the pivot elements among `e b_i e`.
    pub fn corner(&self, e: &[u32]) -> Result<Corner> {
        let f = self.f;
        if self.mul(e, e) != e {
            return Err(Error::Precondition("corner: element is not idempotent".into()));
        }
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis_vector(i)), e)).collect();
        let span = FpMatrix::from_col_vecs(f, self.dim, &cols);
        let pivots = span.rref().pivots;
        let embedding = span.select_cols(&pivots);
        let k = pivots.len();
        let labels: Vec<String> = pivots.iter().map(|&i| format!("e{}e", self.labels[i])).collect();
        if k == 0 {
            let alg = Algebra::from_table(f, vec![], vec![], vec![], None)?;
            return Ok(Corner { alg, embedding, degenerate: true });
        }
        let coords = Coordinates::new(&embedding.transpose())?;
        let basis = embedding.col_vecs();
        let mut mult = vec![0u32; k * k * k];
        for a in 0..k {
            for b in 0..k {
                let prod = self.mul(&basis[a], &basis[b]);
                let c = coords.coords(&prod).ok_or_else(|| Error::Verification("corner not closed under products".into()))?;
                mult[(a * k + b) * k..(a * k + b + 1) * k].copy_from_slice(&c);
            }
        }
        let unit = coords.coords(e).ok_or_else(|| Error::Verification("idempotent outside its corner".into()))?;
        let alg = Algebra::from_table(f, labels, mult, unit, None)?;
        Ok(Corner { alg, embedding, degenerate: false })
    }

    /// Whether `phi` (columns: images of the basis of `self` in `other`) is an
    /// algebra isomorphism.
    pub fn iso_check(&self, other: &Algebra, phi: &FpMatrix) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("iso check between dims {} and {}", self.dim, other.dim)));
        }
        if (phi.rows(), phi.cols()) != (other.dim, self.dim) {
            return Err(Error::Dimension("iso check: candidate map has the wrong shape".into()));
        }
        if phi.rank() != self.dim || phi.mul_vec(&self.unit) != other.unit {
            return Ok(false);
        }
        let imgs = phi.col_vecs();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = phi.mul_vec(self.product_row(i, j));
                if lhs != other.mul(&imgs[i], &imgs[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the regular module is injective (see `modcat`).
    pub fn is_self_injective(self: &Arc<Self>) -> Result<bool> {
        crate::modcat::is_self_injective(self)
    }
}

/// Result of [`Algebra::corner`].
#[derive(Clone, Debug)]
pub struct Corner {
    pub alg: Algebra,
    /// Columns are the corner basis written in the ambient basis.
    pub embedding: FpMatrix,
    pub degenerate: bool,
}

/// Rows of the reduced echelon form of the span of `m`'s rows.
pub fn canonical_rows(m: &FpMatrix) -> FpMatrix {
    let r = m.rref();
    r.mat.select_rows(&(0..r.rank).collect::<Vec<_>>())
}

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

fn concat(a: &Path, b: &Path) -> Option<Path> {
    if a.end != b.start {
        return None;
    }
    let mut arrows = a.arrows.clone();
    arrows.extend_from_slice(&b.arrows);
    Some(Path { start: a.start, end: b.end, arrows })
}

fn parse_relations(q: &Quiver, relations: &[Vec<RelationTerm>], f: FieldChar) -> Result<Vec<Vec<(u32, Path)>>> {
    let mut out = Vec::new();
    for (ri, rel) in relations.iter().enumerate() {
        let mut terms: Vec<(u32, Path)> = Vec::new();
        for t in rel {
            if t.path.len() < 2 {
                return Err(Error::Input(format!("relation {ri}: path {:?} has length < 2 (not admissible)", t.path)));
            }
            let arrows = t.path.iter().map(|n| q.arrow_index(n)).collect::<Result<Vec<_>>>()?;
            for w in arrows.windows(2) {
                if q.arrows[w[0]].dst != q.arrows[w[1]].src {
                    return Err(Error::Input(format!("relation {ri}: path {:?} is not composable", t.path)));
                }
            }
            let path = Path { start: q.arrows[arrows[0]].src, end: q.arrows[*arrows.last().unwrap()].dst, arrows };
            let c = f.reduce(t.coeff);
            if let Some(existing) = terms.iter_mut().find(|(_, p)| *p == path) {
                existing.0 = f.add(existing.0, c);
            } else {
                terms.push((c, path));
            }
        }
        terms.retain(|(c, _)| *c != 0);
        if let Some((_, p0)) = terms.first() {
            if terms.iter().any(|(_, p)| p.start != p0.start || p.end != p0.end) {
                return Err(Error::Input(format!("relation {ri}: paths are not parallel")));
            }
            out.push(terms);
        }
    }
    Ok(out)
}

/// All paths of length at most `len`, sorted by (length, arrow sequence).
fn enumerate_paths(q: &Quiver, len: usize, cap: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Path> = (0..q.vertices).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
    let mut layer: Vec<Path> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| Path { start: a.src, end: a.dst, arrows: vec![i] })
        .collect();
    for l in 1..=len {
        layer.sort_by(cmp_paths);
        all.extend(layer.iter().cloned());
        if all.len() > cap {
            return Err(Error::Input(format!(
                "path enumeration exceeded {cap} paths; the relations do not cut out a finite-dimensional algebra"
            )));
        }
        if l == len {
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            for (i, a) in q.arrows.iter().enumerate() {
                if a.src == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    next.push(Path { start: p.start, end: a.dst, arrows });
                }
            }
        }
        layer = next;
    }
    all.sort_by(cmp_paths);
    Ok(all)
}

/// The image of the relation ideal in `kQ / J^{len+1}`, with path columns in
/// descending order.
fn ideal_closure(
    q: &Quiver,
    rels: &[Vec<(u32, Path)>],
    paths: &[Path],
    index: &std::collections::HashMap<&Path, usize>,
    f: FieldChar,
    len: usize,
) -> RowSpace {
    let n = paths.len();
    let col = |i: usize| n - 1 - i;
    let to_vec = |terms: &[(u32, Path)]| -> Vec<u32> {
        let mut v = vec![0u32; n];
        for (c, p) in terms {
            if p.arrows.len() <= len {
                let k = col(index[p]);
                v[k] = f.add(v[k], *c);
            }
        }
        v
    };
    let mut space = RowSpace::new(f, n);
    let mut frontier: Vec<Vec<(u32, Path)>> = Vec::new();
    for r in rels {
        if space.insert(&to_vec(r)) {
            frontier.push(r.clone());
        }
    }
    while let Some(r) = frontier.pop() {
        for (ai, a) in q.arrows.iter().enumerate() {
            let arrow = Path { start: a.src, end: a.dst, arrows: vec![ai] };
            for side in 0..2 {
                let terms: Vec<(u32, Path)> = r
                    .iter()
                    .filter_map(|(c, p)| {
                        let w = if side == 0 { concat(&arrow, p) } else { concat(p, &arrow) };
                        w.filter(|w| w.arrows.len() <= len).map(|w| (*c, w))
                    })
                    .collect();
                if !terms.is_empty() && space.insert(&to_vec(&terms)) {
                    frontier.push(terms);
                }
            }
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldChar {
        FieldChar::new(p).unwrap()
    }

    fn loop_quiver() -> Quiver {
        Quiver { vertices: 1, arrows: vec![Arrow { name: "x".into(), src: 0, dst: 0 }] }
    }

    fn xpow(n: usize) -> Vec<RelationTerm> {
        vec![RelationTerm { coeff: 1, path: vec!["x".into(); n] }]
    }

    #[test]
    fn dual_numbers() {
        let a = Algebra::from_quiver(&loop_quiver(), &[xpow(2)], f(2), DEFAULT_PATH_CAP).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency_index(), 2);
        assert_eq!(a.labels(), &["e0".to_string(), "x".to_string()]);
    }

    #[test]
    fn a2_path_algebra() {
        let q = Quiver { vertices: 2, arrows: vec![Arrow { name: "a".into(), src: 0, dst: 1 }] };
        let a = Algebra::from_quiver(&q, &[], f(101), DEFAULT_PATH_CAP).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.nilpotency_index(), 2);
        assert_eq!(a.radical_power(1).rows(), 1);
    }

    #[test]
    fn field_algebra() {
        let q = Quiver { vertices: 1, arrows: vec![] };
        let a = Algebra::from_quiver(&q, &[], f(101), DEFAULT_PATH_CAP).unwrap();
        assert_eq!((a.dim(), a.nilpotency_index()), (1, 1));
    }

    #[test]
    fn free_loop_hits_cap() {
        let err = Algebra::from_quiver(&loop_quiver(), &[], f(101), 50).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn inadmissible_relation_rejected() {
        let err = Algebra::from_quiver(&loop_quiver(), &[xpow(1)], f(101), 50).unwrap_err();
        assert!(err.to_string().contains("admissible"));
    }

    #[test]
    fn commutative_square_relation() {
        // 0 -a-> 1 -b-> 3, 0 -c-> 2 -d-> 3 with ab = cd.
        let q = Quiver {
            vertices: 4,
            arrows: vec![
                Arrow { name: "a".into(), src: 0, dst: 1 },
                Arrow { name: "b".into(), src: 1, dst: 3 },
                Arrow { name: "c".into(), src: 0, dst: 2 },
                Arrow { name: "d".into(), src: 2, dst: 3 },
            ],
        };
        let rel = vec![
            RelationTerm { coeff: 1, path: vec!["a".into(), "b".into()] },
            RelationTerm { coeff: -1, path: vec!["c".into(), "d".into()] },
        ];
        let a = Algebra::from_quiver(&q, &[rel], f(7), DEFAULT_PATH_CAP).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert_eq!(a.radical_dims(), vec![9, 5, 1, 0]);
    }

    #[test]
    fn opposite_is_involution() {
        let q = Quiver { vertices: 2, arrows: vec![Arrow { name: "a".into(), src: 0, dst: 1 }] };
        let a = Algebra::from_quiver(&q, &[], f(5), DEFAULT_PATH_CAP).unwrap();
        let op = a.opposite();
        assert_ne!(op.fingerprint(), a.fingerprint());
        assert!(op.opposite() == a);
        let d = Algebra::from_quiver(&loop_quiver(), &[xpow(2)], f(5), DEFAULT_PATH_CAP).unwrap();
        assert!(d.opposite() == d);
    }

    #[test]
    fn corners() {
        let q = Quiver { vertices: 2, arrows: vec![Arrow { name: "a".into(), src: 0, dst: 1 }] };
        let a = Algebra::from_quiver(&q, &[], f(5), DEFAULT_PATH_CAP).unwrap();
        let e0 = a.radical().unwrap().idempotents[0].clone();
        let c = a.corner(&e0).unwrap();
        assert_eq!(c.alg.dim(), 1);
        let whole = a.corner(a.unit()).unwrap();
        assert!(a.iso_check(&whole.alg, &FpMatrix::identity(f(5), 3)).unwrap());
        let zero = a.corner(&[0, 0, 0]).unwrap();
        assert!(zero.degenerate && zero.alg.dim() == 0);
        assert!(a.corner(&[0, 0, 1]).is_err());
    }

    #[test]
    fn iso_check_rejects_zero_map() {
        let a = Algebra::from_quiver(&loop_quiver(), &[xpow(2)], f(5), DEFAULT_PATH_CAP).unwrap();
        assert!(a.iso_check(&a, &FpMatrix::identity(f(5), 2)).unwrap());
        assert!(!a.iso_check(&a, &FpMatrix::zeros(f(5), 2, 2)).unwrap());
    }
}
