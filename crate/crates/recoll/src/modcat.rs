//! Finite-dimensional right modules and their morphisms.
//!
//! A module stores one matrix per algebra basis element. Vectors are columns,
//! and `act(b) * v` is the coordinate vector of `v·b`, so the matrices satisfy
//! `act(b b') = act(b') act(b)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::exactla::{axpy, Coordinates, FieldChar, FpMatrix, RowSpace};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<Algebra>,
    dim: usize,
    act: Arc<Vec<FpMatrix>>,
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Module {
    /// Builds a module and checks the action against the structure constants.
    pub fn new(alg: Arc<Algebra>, dim: usize, act: Vec<FpMatrix>) -> Result<Self> {
        let m = Self::from_parts(alg, dim, act)?;
        m.validate()?;
        Ok(m)
    }

    /// Builds a module whose action is correct by construction (shape-checked only).
    pub fn from_parts(alg: Arc<Algebra>, dim: usize, act: Vec<FpMatrix>) -> Result<Self> {
        if act.len() != alg.dim() || act.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!(
                "module action needs {} matrices of size {dim}x{dim}",
                alg.dim()
            )));
        }
        Ok(Module { alg, dim, act: Arc::new(act) })
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let f = alg.field();
        let act = vec![FpMatrix::zeros(f, 0, 0); alg.dim()];
        Module { alg, dim: 0, act: Arc::new(act) }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.alg;
        let f = a.field();
        if self.act_elem(a.unit()) != FpMatrix::identity(f, self.dim) {
            return Err(Error::Input("module: the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.act[j].mul(&self.act[i]);
                let mut rhs = FpMatrix::zeros(f, self.dim, self.dim);
                for k in 0..a.dim() {
                    let c = a.coeff(i, j, k);
                    if c != 0 {
                        rhs.add_scaled(c, &self.act[k]);
                    }
                }
                if lhs != rhs {
                    return Err(Error::Input(format!(
                        "module: action fails on the product {} * {}",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn field(&self) -> FieldChar {
        self.alg.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn act(&self, b: usize) -> &FpMatrix {
        &self.act[b]
    }
    pub fn actions(&self) -> &[FpMatrix] {
        &self.act
    }

    /// Matrix of `v -> v·x` for an algebra element `x`.
    pub fn act_elem(&self, x: &[u32]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field(), self.dim, self.dim);
        for (j, &c) in x.iter().enumerate() {
            if c != 0 {
                out.add_scaled(c, &self.act[j]);
            }
        }
        out
    }

    /// Same module with the action rewritten in a new basis: columns of
    /// `basis` are the new basis vectors, `inverse` is its inverse.
    fn rebased(&self, basis: &FpMatrix, inverse: &FpMatrix) -> Module {
        let act = self.act.iter().map(|a| inverse.mul(&a.mul(basis))).collect();
        Module { alg: self.alg.clone(), dim: self.dim, act: Arc::new(act) }
    }

    /// The submodule spanned by the (independent) columns of `basis`, with
    /// its inclusion. The span must be closed under the action.
    pub fn submodule(&self, basis: &FpMatrix) -> Result<(Module, ModuleMorphism)> {
        let f = self.field();
        let k = basis.cols();
        let left = left_inverse(basis)?;
        let act: Vec<FpMatrix> = self.act.iter().map(|a| left.mul(&a.mul(basis))).collect();
        for (a, induced) in self.act.iter().zip(&act) {
            if a.mul(basis) != basis.mul(induced) {
                return Err(Error::Precondition("submodule: span is not closed under the action".into()));
            }
        }
        let sub = Module { alg: self.alg.clone(), dim: k, act: Arc::new(act) };
        let incl = ModuleMorphism { src: sub.clone(), dst: self.clone(), mat: basis.clone() };
        debug_assert_eq!(incl.mat.field(), f);
        Ok((sub, incl))
    }

    /// Quotient by the submodule spanned by the columns of `span` (any
    /// spanning set), with the projection.
    pub fn quotient(&self, span: &FpMatrix) -> (Module, ModuleMorphism) {
        let f = self.field();
        let q = span.cokernel_projection();
        let comp = span.cokernel_complement();
        let mut s = FpMatrix::zeros(f, self.dim, comp.len());
        for (t, &c) in comp.iter().enumerate() {
            s.set(c, t, 1);
        }
        let act = self.act.iter().map(|a| q.mul(&a.mul(&s))).collect();
        let quo = Module { alg: self.alg.clone(), dim: comp.len(), act: Arc::new(act) };
        let proj = ModuleMorphism { src: self.clone(), dst: quo.clone(), mat: q };
        (quo, proj)
    }

    /// Columns spanning `M J`.
    pub fn radical_span(&self) -> Result<FpMatrix> {
        let f = self.field();
        let rad = self.alg.radical().ok_or_else(|| no_radical("radical of a module"))?;
        let mut space = RowSpace::new(f, self.dim);
        for r in rad.rad.row_vecs() {
            let m = self.act_elem(&r);
            for c in m.col_vecs() {
                space.insert(&c);
            }
        }
        Ok(space.to_rref().transpose())
    }

    /// Minimal generators from the top: `(generator, class)` with each
    /// generator fixed by its class idempotent.
    pub fn top_generators(&self) -> Result<Vec<(Vec<u32>, usize)>> {
        let f = self.field();
        let rad = self.alg.radical().ok_or_else(|| no_radical("top of a module"))?;
        let mj = self.radical_span()?;
        let mut out = Vec::new();
        for (c, &rep) in rad.class_reps().iter().enumerate() {
            let e = self.act_elem(&rad.idempotents[rep]);
            let mut space = RowSpace::new(f, self.dim);
            for col in mj.col_vecs() {
                // Only the e-part of MJ matters inside Me.
                space.insert(&e.mul_vec(&col));
            }
            for col in e.image_basis().col_vecs() {
                if space.insert(&col) {
                    out.push((col, c));
                }
            }
        }
        Ok(out)
    }

    /// A generating set: top generators when radical data exist, otherwise a
    /// greedy set of basis vectors. Each comes with the idempotent fixing it.
    pub fn generators(&self) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
        if let Some(rad) = self.alg.radical() {
            let reps = rad.class_reps();
            return Ok(self
                .top_generators()?
                .into_iter()
                .map(|(g, c)| (g, rad.idempotents[reps[c]].clone()))
                .collect());
        }
        let f = self.field();
        let mut space = RowSpace::new(f, self.dim);
        let mut out = Vec::new();
        for i in 0..self.dim {
            let mut v = vec![0u32; self.dim];
            v[i] = 1;
            if space.contains(&v) {
                continue;
            }
            for b in 0..self.alg.dim() {
                space.insert(&self.act[b].mul_vec(&v));
            }
            out.push((v, self.alg.unit().to_vec()));
        }
        Ok(out)
    }
}

fn no_radical(what: &str) -> Error {
    Error::Precondition(format!("{what} needs radical data for the algebra"))
}

/// Left inverse of a matrix with independent columns, built from its pivot rows.
pub fn left_inverse(basis: &FpMatrix) -> Result<FpMatrix> {
    let f = basis.field();
    let rows = basis.transpose().rref().pivots;
    if rows.len() != basis.cols() {
        return Err(Error::Dimension("left inverse: columns are dependent".into()));
    }
    let inv = basis.select_rows(&rows).invert()?;
    let mut out = FpMatrix::zeros(f, basis.cols(), basis.rows());
    for (t, &r) in rows.iter().enumerate() {
        for i in 0..basis.cols() {
            out.set(i, r, inv.get(i, t));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    pub src: Module,
    pub dst: Module,
    /// `dst.dim x src.dim`.
    pub mat: FpMatrix,
}

impl ModuleMorphism {
    pub fn new(src: Module, dst: Module, mat: FpMatrix) -> Result<Self> {
        let m = ModuleMorphism { src, dst, mat };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !same_algebra(self.src.algebra(), self.dst.algebra()) {
            return Err(Error::Input("morphism between modules over different algebras".into()));
        }
        if (self.mat.rows(), self.mat.cols()) != (self.dst.dim, self.src.dim) {
            return Err(Error::Dimension("morphism matrix has the wrong shape".into()));
        }
        for b in 0..self.src.alg.dim() {
            if self.mat.mul(self.src.act(b)) != self.dst.act(b).mul(&self.mat) {
                return Err(Error::Verification(format!(
                    "matrix does not commute with the action of {}",
                    self.src.alg.labels()[b]
                )));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMorphism { src: m.clone(), dst: m.clone(), mat: FpMatrix::identity(m.field(), m.dim) }
    }

    pub fn zero(src: &Module, dst: &Module) -> Self {
        ModuleMorphism { src: src.clone(), dst: dst.clone(), mat: FpMatrix::zeros(src.field(), dst.dim, src.dim) }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModuleMorphism) -> ModuleMorphism {
        assert_eq!(g.dst.dim, self.src.dim, "compose: dimension mismatch");
        ModuleMorphism { src: g.src.clone(), dst: self.dst.clone(), mat: self.mat.mul(&g.mat) }
    }

    pub fn add(&self, g: &ModuleMorphism) -> ModuleMorphism {
        ModuleMorphism { src: self.src.clone(), dst: self.dst.clone(), mat: self.mat.add(&g.mat) }
    }

    pub fn scale(&self, c: u32) -> ModuleMorphism {
        ModuleMorphism { src: self.src.clone(), dst: self.dst.clone(), mat: self.mat.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
    pub fn rank(&self) -> usize {
        self.mat.rank()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.dst.dim
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.src.dim
    }
    pub fn is_iso(&self) -> bool {
        self.src.dim == self.dst.dim && self.is_injective()
    }

    pub fn kernel(&self) -> (Module, ModuleMorphism) {
        let k = self.mat.kernel_basis().transpose();
        self.src.submodule(&k).expect("kernel of a module map is a submodule")
    }

    /// Image with the inclusion, and the corestriction `src -> image`.
    pub fn image(&self) -> (Module, ModuleMorphism, ModuleMorphism) {
        let basis = self.mat.image_basis();
        let (im, incl) = self.dst.submodule(&basis).expect("image of a module map is a submodule");
        let left = left_inverse(&basis).expect("image basis is independent");
        let onto = ModuleMorphism { src: self.src.clone(), dst: im.clone(), mat: left.mul(&self.mat) };
        (im, incl, onto)
    }

    pub fn cokernel(&self) -> (Module, ModuleMorphism) {
        self.dst.quotient(&self.mat)
    }
}

/// Direct sum with injections and projections.
pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Module]) -> (Module, Vec<ModuleMorphism>, Vec<ModuleMorphism>) {
    let f = alg.field();
    let dim: usize = parts.iter().map(|m| m.dim).sum();
    let act = (0..alg.dim())
        .map(|b| {
            let blocks: Vec<&FpMatrix> = parts.iter().map(|m| m.act(b)).collect();
            FpMatrix::block_diag(f, &blocks)
        })
        .collect();
    let sum = Module { alg: alg.clone(), dim, act: Arc::new(act) };
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut off = 0;
    for m in parts {
        let mut i = FpMatrix::zeros(f, dim, m.dim);
        let mut p = FpMatrix::zeros(f, m.dim, dim);
        for t in 0..m.dim {
            i.set(off + t, t, 1);
            p.set(t, off + t, 1);
        }
        inj.push(ModuleMorphism { src: m.clone(), dst: sum.clone(), mat: i });
        proj.push(ModuleMorphism { src: sum.clone(), dst: m.clone(), mat: p });
        off += m.dim;
    }
    (sum, inj, proj)
}

/// `M^k`.
pub fn power(m: &Module, k: usize) -> Module {
    direct_sum(m.algebra(), &vec![m.clone(); k]).0
}

/// Block matrix of a map `⊕ X_j -> ⊕ Y_i` from its components `comps[i][j]`.
pub fn block_morphism(src: &Module, dst: &Module, comps: &[Vec<FpMatrix>]) -> ModuleMorphism {
    let f = src.field();
    let rows: Vec<FpMatrix> = comps
        .iter()
        .map(|row| {
            let r = row.first().map_or(0, |m| m.rows());
            FpMatrix::hstack(f, r, &row.iter().collect::<Vec<_>>())
        })
        .collect();
    let mat = FpMatrix::vstack(f, src.dim, &rows.iter().collect::<Vec<_>>());
    ModuleMorphism { src: src.clone(), dst: dst.clone(), mat }
}

/// The right regular module.
pub fn regular_module(alg: &Arc<Algebra>) -> Module {
    let act = (0..alg.dim()).map(|b| alg.right_mult_matrix(&alg.basis_vector(b))).collect();
    Module { alg: alg.clone(), dim: alg.dim(), act: Arc::new(act) }
}

/// The right ideal `eA` with basis the pivot columns of `y -> e y`, and its
/// inclusion into the regular module as a matrix (columns = basis elements).
pub fn right_ideal(alg: &Arc<Algebra>, e: &[u32]) -> (Module, FpMatrix) {
    let basis = alg.left_mult_matrix(e).image_basis();
    let reg = regular_module(alg);
    let (m, incl) = reg.submodule(&basis).expect("eA is a right ideal");
    (m, incl.mat)
}

/// The indecomposable projective of the given class.
pub fn indecomposable_projective(alg: &Arc<Algebra>, class: usize) -> Result<Module> {
    let rad = alg.radical().ok_or_else(|| no_radical("indecomposable projectives"))?;
    let rep = rad.class_reps()[class];
    Ok(right_ideal(alg, &rad.idempotents[rep]).0)
}

/// The simple module of the given class.
pub fn simple_module(alg: &Arc<Algebra>, class: usize) -> Result<Module> {
    let p = indecomposable_projective(alg, class)?;
    let span = p.radical_span()?;
    Ok(p.quotient(&span).0)
}

/// Map `⊕ e_i A -> M` sending the basis of `e_i A` to `g_i` times it, for
/// generators `g_i = g_i e_i`.
fn map_from_generators(m: &Module, gens: &[(Vec<u32>, Vec<u32>)]) -> ModuleMorphism {
    let alg = m.algebra();
    let f = m.field();
    let mut parts = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for (g, e) in gens {
        let (p, basis) = right_ideal(alg, e);
        for w in basis.col_vecs() {
            cols.push(m.act_elem(&w).mul_vec(g));
        }
        parts.push(p);
    }
    let (src, _, _) = direct_sum(alg, &parts);
    let mat = FpMatrix::from_col_vecs(f, m.dim, &cols);
    ModuleMorphism { src, dst: m.clone(), mat }
}

/// Minimal projective cover `P -> M`, summands ordered by class.
pub fn projective_cover(m: &Module) -> Result<ModuleMorphism> {
    Ok(projective_cover_classes(m)?.0)
}

/// Projective cover together with the class of each indecomposable summand.
pub fn projective_cover_classes(m: &Module) -> Result<(ModuleMorphism, Vec<usize>)> {
    let rad = m.algebra().radical().ok_or_else(|| no_radical("projective cover"))?;
    let reps = rad.class_reps();
    let top = m.top_generators()?;
    let classes: Vec<usize> = top.iter().map(|(_, c)| *c).collect();
    let gens: Vec<(Vec<u32>, Vec<u32>)> =
        top.into_iter().map(|(g, c)| (g, rad.idempotents[reps[c]].clone())).collect();
    Ok((map_from_generators(m, &gens), classes))
}

/// An epimorphism from a projective: the minimal cover when radical data
/// exist, otherwise a sum of copies of the regular module.
pub fn projective_epi(m: &Module) -> ModuleMorphism {
    let gens = m.generators().expect("generators exist for every module");
    map_from_generators(m, &gens)
}

#[derive(Clone, Debug)]
pub struct Presentation {
    /// `P1 -> P0`.
    pub d: ModuleMorphism,
    /// `P0 -> M`, surjective with kernel the image of `d`.
    pub eps: ModuleMorphism,
    /// Classes of the indecomposable summands of `P0` and `P1`.
    pub classes0: Vec<usize>,
    pub classes1: Vec<usize>,
}

/// Minimal projective presentation by iterated covers.
pub fn projective_presentation(m: &Module) -> Result<Presentation> {
    let (eps, classes0) = projective_cover_classes(m)?;
    let (_, incl) = eps.kernel();
    let (c1, classes1) = projective_cover_classes(&incl.src)?;
    Ok(Presentation { d: incl.compose(&c1), eps, classes0, classes1 })
}

pub fn is_projective(m: &Module) -> Result<bool> {
    Ok(projective_cover(m)?.src.dim == m.dim)
}

/// Right modules over `A` dualize to right modules over `A^op`.
pub fn dual_module(m: &Module) -> Module {
    dual_module_over(m, &Arc::new(m.algebra().opposite())).expect("opposite algebra matches")
}

/// Dual with the transposed action, over a given copy of the opposite algebra.
pub fn dual_module_over(m: &Module, op: &Arc<Algebra>) -> Result<Module> {
    if **op != m.algebra().opposite() {
        return Err(Error::Input("dual module: target is not the opposite algebra".into()));
    }
    let act = m.act.iter().map(|a| a.transpose()).collect();
    Ok(Module { alg: op.clone(), dim: m.dim, act: Arc::new(act) })
}

/// Dual of a morphism `M -> N`: the transpose `D N -> D M`.
pub fn dual_morphism(f: &ModuleMorphism, dsrc: &Module, ddst: &Module) -> ModuleMorphism {
    ModuleMorphism { src: ddst.clone(), dst: dsrc.clone(), mat: f.mat.transpose() }
}

pub fn is_injective(m: &Module) -> Result<bool> {
    is_projective(&dual_module(m))
}

/// Whether the regular module is injective, decided by projectivity of the
/// dual of the left regular module.
pub fn is_self_injective(alg: &Arc<Algebra>) -> Result<bool> {
    let op = Arc::new(alg.opposite());
    let left_regular = regular_module(&op);
    let injective_cogen = dual_module_over(&left_regular, alg)?;
    is_projective(&injective_cogen)
}

/// Canonical basis of `Hom(M, N)`.
///
/// A map is fixed by the images `n_i ∈ N e_i` of generators `g_i = g_i e_i`;
/// the admissible images are cut out by the relations among the generators.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMorphism>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Input("hom: modules over different algebras".into()));
    }
    let f = m.field();
    if m.dim == 0 || n.dim == 0 {
        return Ok(Vec::new());
    }
    let gens = m.generators()?;
    let cover = map_from_generators(m, &gens);
    // Per generator: basis of N e_i, and the basis of e_i A.
    let mut ne: Vec<FpMatrix> = Vec::new();
    let mut ea: Vec<Vec<Vec<u32>>> = Vec::new();
    for (_, e) in &gens {
        ne.push(n.act_elem(e).image_basis());
        ea.push(m.algebra().left_mult_matrix(e).image_basis().col_vecs());
    }
    let offsets: Vec<usize> = ne.iter().scan(0, |s, b| {
        let o = *s;
        *s += b.cols();
        Some(o)
    }).collect();
    let unknowns: usize = ne.iter().map(|b| b.cols()).sum();
    // act_N(w) * basis(N e_i) for each basis element w of e_i A.
    let images: Vec<Vec<FpMatrix>> = ea
        .iter()
        .zip(&ne)
        .map(|(ws, b)| ws.iter().map(|w| n.act_elem(w).mul(b)).collect())
        .collect();
    let rel = cover.mat.kernel_basis();
    let mut eqs = RowSpace::new(f, unknowns);
    for k in rel.row_vecs() {
        let mut block = FpMatrix::zeros(f, n.dim, unknowns);
        let mut pos = 0;
        for (i, imgs) in images.iter().enumerate() {
            for img in imgs {
                let c = k[pos];
                pos += 1;
                if c == 0 {
                    continue;
                }
                for r in 0..n.dim {
                    let row = block.row_mut(r);
                    axpy(f, &mut row[offsets[i]..offsets[i] + img.cols()], c, img.row(r));
                }
            }
        }
        for r in 0..n.dim {
            eqs.insert(block.row(r));
        }
    }
    let sols = eqs.kernel_basis();
    let section = cover
        .mat
        .solve_matrix(&FpMatrix::identity(f, m.dim))?
        .ok_or_else(|| Error::Verification("generators do not generate".into()))?;
    let mut out = Vec::new();
    for x in sols.row_vecs() {
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for (i, imgs) in images.iter().enumerate() {
            let xi = &x[offsets[i]..offsets[i] + ne[i].cols()];
            for img in imgs {
                cols.push(img.mul_vec(xi));
            }
        }
        let psi = FpMatrix::from_col_vecs(f, n.dim, &cols);
        out.push(ModuleMorphism { src: m.clone(), dst: n.clone(), mat: psi.mul(&section) });
    }
    Ok(out)
}

/// Coordinates of `g` in a Hom basis, or `None` if it is not a combination.
pub fn hom_coords(basis: &[ModuleMorphism], g: &FpMatrix) -> Option<Vec<u32>> {
    let f = g.field();
    if basis.is_empty() {
        return g.is_zero().then(Vec::new);
    }
    let cols: Vec<Vec<u32>> = basis.iter().map(|h| h.mat.data().to_vec()).collect();
    let a = FpMatrix::from_col_vecs(f, g.rows() * g.cols(), &cols);
    a.solve(g.data()).ok().flatten()
}

/// Coordinate extraction for a fixed Hom basis.
#[derive(Clone, Debug)]
pub struct HomCoords {
    inner: Option<Coordinates>,
}

impl HomCoords {
    pub fn new(basis: &[ModuleMorphism]) -> Result<Self> {
        let Some(first) = basis.first() else { return Ok(HomCoords { inner: None }) };
        let f = first.mat.field();
        let rows: Vec<Vec<u32>> = basis.iter().map(|h| h.mat.data().to_vec()).collect();
        let len = first.mat.rows() * first.mat.cols();
        Ok(HomCoords { inner: Some(Coordinates::new(&FpMatrix::from_row_vecs(f, len, &rows))?) })
    }

    pub fn coords(&self, g: &FpMatrix) -> Option<Vec<u32>> {
        match &self.inner {
            None => g.is_zero().then(Vec::new),
            Some(c) => c.coords(g.data()),
        }
    }
}

/// Linear combination of morphisms with the same source and target.
pub fn combine(src: &Module, dst: &Module, basis: &[ModuleMorphism], coeffs: &[u32]) -> ModuleMorphism {
    let mut mat = FpMatrix::zeros(src.field(), dst.dim, src.dim);
    for (h, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            mat.add_scaled(c, &h.mat);
        }
    }
    ModuleMorphism { src: src.clone(), dst: dst.clone(), mat }
}

/// The universal map `gen^h -> N` whose components are the Hom basis.
pub fn right_approximation(n: &Module, gen: &Module) -> Result<ModuleMorphism> {
    let basis = hom_basis(gen, n)?;
    let src = power(gen, basis.len());
    let f = n.field();
    let blocks: Vec<&FpMatrix> = basis.iter().map(|h| &h.mat).collect();
    let mat = FpMatrix::hstack(f, n.dim, &blocks);
    Ok(ModuleMorphism { src, dst: n.clone(), mat })
}

/// A section `s` with `f ∘ s = id`, if one exists.
pub fn split_epi_section(f: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let fc = f.src.field();
    if !f.is_surjective() {
        return Ok(None);
    }
    let basis = hom_basis(&f.dst, &f.src)?;
    let n = f.dst.dim;
    let cols: Vec<Vec<u32>> = basis.iter().map(|s| f.mat.mul(&s.mat).data().to_vec()).collect();
    if cols.is_empty() {
        return Ok((n == 0).then(|| ModuleMorphism::zero(&f.dst, &f.src)));
    }
    let a = FpMatrix::from_col_vecs(fc, n * n, &cols);
    let id = FpMatrix::identity(fc, n);
    Ok(a.solve(id.data())?.map(|c| combine(&f.dst, &f.src, &basis, &c)))
}

/// A retraction `r` with `r ∘ f = id`, if one exists.
pub fn split_mono_retraction(f: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let fc = f.src.field();
    if !f.is_injective() {
        return Ok(None);
    }
    let basis = hom_basis(&f.dst, &f.src)?;
    let n = f.src.dim;
    let cols: Vec<Vec<u32>> = basis.iter().map(|r| r.mat.mul(&f.mat).data().to_vec()).collect();
    if cols.is_empty() {
        return Ok((n == 0).then(|| ModuleMorphism::zero(&f.dst, &f.src)));
    }
    let a = FpMatrix::from_col_vecs(fc, n * n, &cols);
    let id = FpMatrix::identity(fc, n);
    Ok(a.solve(id.data())?.map(|c| combine(&f.dst, &f.src, &basis, &c)))
}

/// Global dimension as the largest projective dimension of a simple module,
/// or `None` if some resolution is longer than `cap`.
pub fn syzygy_gldim(alg: &Arc<Algebra>, cap: usize) -> Result<Option<usize>> {
    let rad = alg.radical().ok_or_else(|| no_radical("global dimension"))?;
    let mut best = 0;
    for c in 0..rad.class_count() {
        match projective_dimension(&simple_module(alg, c)?, cap)? {
            Some(d) => best = best.max(d),
            None => return Ok(None),
        }
    }
    Ok(Some(best))
}

/// Projective dimension by iterated syzygies, `None` beyond `cap`.
pub fn projective_dimension(m: &Module, cap: usize) -> Result<Option<usize>> {
    let mut cur = m.clone();
    for i in 0..=cap {
        let cover = projective_cover(&cur)?;
        if cover.src.dim == cur.dim {
            return Ok(Some(i));
        }
        cur = cover.kernel().0;
    }
    Ok(None)
}

pub fn default_gldim_cap(alg: &Algebra) -> usize {
    2 * alg.dim() + 2
}

/// `Hom(M, N)` together with the subspace of maps factoring through a
/// projective, in Hom-basis coordinates.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: Vec<ModuleMorphism>,
    /// Rows: coordinates of a basis of the projectively trivial maps.
    pub trivial: FpMatrix,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.hom.len() - self.trivial.rows()
    }
}

pub fn stable_hom_basis(m: &Module, n: &Module) -> Result<StableHom> {
    let f = m.field();
    let hom = hom_basis(m, n)?;
    let cover = projective_epi(n);
    let through = hom_basis(m, &cover.src)?;
    let mut space = RowSpace::new(f, hom.len());
    for g in &through {
        let c = hom_coords(&hom, &cover.mat.mul(&g.mat))
            .ok_or_else(|| Error::Verification("composite outside Hom basis".into()))?;
        space.insert(&c);
    }
    Ok(StableHom { hom, trivial: space.to_rref() })
}

/// Searches for an isomorphism `M -> N` among combinations of the Hom basis.
///
/// Tries basis elements, seeded random combinations, and exhaustive
/// enumeration when the Hom space is small. Over tiny fields a negative
/// answer is conclusive only in the exhaustive case.
pub fn module_iso_search(m: &Module, n: &Module) -> Result<Option<ModuleMorphism>> {
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(ModuleMorphism::zero(m, n)));
    }
    let basis = hom_basis(m, n)?;
    Ok(find_invertible(m, n, &basis))
}

pub fn find_invertible(m: &Module, n: &Module, basis: &[ModuleMorphism]) -> Option<ModuleMorphism> {
    let f = m.field();
    let h = basis.len();
    if h == 0 {
        return None;
    }
    for b in basis {
        if b.is_iso() {
            return Some(b.clone());
        }
    }
    let p = f.p() as u64;
    if (h as f64) * (p as f64).log2() <= 14.0 {
        let total = p.pow(h as u32);
        for code in 1..total {
            let mut c = vec![0u32; h];
            let mut x = code;
            for ci in c.iter_mut() {
                *ci = (x % p) as u32;
                x /= p;
            }
            let g = combine(m, n, basis, &c);
            if g.is_iso() {
                return Some(g);
            }
        }
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..256 {
        let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..f.p())).collect();
        let g = combine(m, n, basis, &c);
        if g.is_iso() {
            return Some(g);
        }
    }
    None
}

/// Rank bookkeeping for `A -f-> B -g-> C`: `g f = 0` and `ker g = im f`.
pub fn is_exact_at(f: &FpMatrix, g: &FpMatrix) -> bool {
    g.mul(f).is_zero() && f.rank() + g.rank() == g.cols()
}

/// Change of basis helper used by callers that need a module in an adapted
/// basis: returns the rebased module and the iso from it to `m`.
pub fn rebase(m: &Module, basis: &FpMatrix) -> Result<(Module, ModuleMorphism)> {
    let inv = basis.invert()?;
    let r = m.rebased(basis, &inv);
    let iso = ModuleMorphism { src: r.clone(), dst: m.clone(), mat: basis.clone() };
    Ok((r, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, Quiver, RelationTerm, DEFAULT_PATH_CAP};

    fn dual_numbers(p: u64) -> Arc<Algebra> {
        let q = Quiver { vertices: 1, arrows: vec![Arrow { name: "x".into(), src: 0, dst: 0 }] };
        let rel = vec![RelationTerm { coeff: 1, path: vec!["x".into(), "x".into()] }];
        Arc::new(Algebra::from_quiver(&q, &[rel], FieldChar::new(p).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    fn a2() -> Arc<Algebra> {
        let q = Quiver { vertices: 2, arrows: vec![Arrow { name: "a".into(), src: 0, dst: 1 }] };
        Arc::new(Algebra::from_quiver(&q, &[], FieldChar::new(101).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    #[test]
    fn regular_module_is_valid_and_projective() {
        let a = dual_numbers(5);
        let r = regular_module(&a);
        r.validate().unwrap();
        assert!(is_projective(&r).unwrap());
        assert_eq!(hom_basis(&r, &r).unwrap().len(), 2);
    }

    #[test]
    fn cokernel_of_x_is_simple() {
        let a = dual_numbers(5);
        let r = regular_module(&a);
        let x = a.basis_vector(1);
        let lx = ModuleMorphism::new(r.clone(), r.clone(), a.left_mult_matrix(&x)).unwrap();
        let (c, proj) = lx.cokernel();
        assert_eq!(c.dim(), 1);
        c.validate().unwrap();
        proj.validate().unwrap();
        let (k, incl) = lx.kernel();
        assert_eq!(k.dim(), 1);
        incl.validate().unwrap();
        assert!(is_exact_at(&incl.mat, &lx.mat));
    }

    #[test]
    fn cover_of_simple_has_kernel_dim_one() {
        let a = dual_numbers(7);
        let s = simple_module(&a, 0).unwrap();
        let c = projective_cover(&s).unwrap();
        assert_eq!(c.src.dim(), 2);
        assert_eq!(c.kernel().0.dim(), 1);
        let pres = projective_presentation(&s).unwrap();
        assert_eq!(pres.d.src.dim(), 2);
    }

    #[test]
    fn a2_homs_and_gldim() {
        let a = a2();
        let p0 = indecomposable_projective(&a, 0).unwrap();
        let p1 = indecomposable_projective(&a, 1).unwrap();
        let s0 = simple_module(&a, 0).unwrap();
        assert_eq!((p0.dim(), p1.dim()), (2, 1));
        assert_eq!(hom_basis(&s0, &p0).unwrap().len(), 0);
        assert_eq!(hom_basis(&p1, &p0).unwrap().len(), 1);
        assert_eq!(syzygy_gldim(&a, 10).unwrap(), Some(1));
        assert!(!is_self_injective(&a).unwrap());
        assert!(is_self_injective(&dual_numbers(3)).unwrap());
        assert_eq!(syzygy_gldim(&dual_numbers(3), 6).unwrap(), None);
    }

    #[test]
    fn hom_from_regular_matches_dim() {
        let a = a2();
        let r = regular_module(&a);
        for c in 0..2 {
            let s = simple_module(&a, c).unwrap();
            assert_eq!(hom_basis(&r, &s).unwrap().len(), s.dim());
            for h in hom_basis(&r, &s).unwrap() {
                h.validate().unwrap();
            }
        }
    }

    #[test]
    fn duals_and_sums() {
        let a = a2();
        let r = regular_module(&a);
        let d = dual_module(&r);
        d.validate().unwrap();
        assert!(is_injective(&r).is_ok());
        let (s, inj, proj) = direct_sum(&a, &[r.clone(), Module::zero(a.clone())]);
        assert_eq!(s.dim(), 3);
        assert_eq!(proj[0].compose(&inj[0]).mat, FpMatrix::identity(a.field(), 3));
    }

    #[test]
    fn stable_hom_of_projective_vanishes() {
        let a = dual_numbers(5);
        let r = regular_module(&a);
        let s = simple_module(&a, 0).unwrap();
        assert_eq!(stable_hom_basis(&r, &s).unwrap().dim(), 0);
        assert_eq!(stable_hom_basis(&s, &s).unwrap().dim(), 1);
    }

    #[test]
    fn iso_search_finds_identity_class() {
        let a = dual_numbers(2);
        let r = regular_module(&a);
        assert!(module_iso_search(&r, &r).unwrap().is_some());
        let s = simple_module(&a, 0).unwrap();
        let two = power(&s, 2);
        assert!(module_iso_search(&two, &r).unwrap().is_none());
    }

    #[test]
    fn approximation_by_regular_is_surjective() {
        let a = a2();
        let s = simple_module(&a, 1).unwrap();
        let ap = right_approximation(&s, &regular_module(&a)).unwrap();
        assert!(ap.is_surjective());
        assert!(split_epi_section(&ap).unwrap().is_some());
    }
}
