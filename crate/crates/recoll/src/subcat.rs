//! The additive closure `add(gen)` of a list of summands `X_1, ..., X_k`.
//!
//! With `Γ = End(⊕ X_s)` and `ε_s` the identity of `X_s`, a finite sum
//! `⊕_i X_{b_i}` is represented by its summand list, `Hom(gen, X_b) = ε_b Γ`
//! as a right Γ-module, and a map `⊕_j X_{a_j} -> ⊕_i X_{b_i}` by a matrix
//! [`GMat`] with entries in `ε_{b_i} Γ ε_{a_j}`.

use std::sync::Arc;

use crate::aalgebra::EndAlgebra;
use crate::algebra::Algebra;
use crate::exactla::{axpy, FpMatrix, RowSpace};
use crate::modcat::{self, direct_sum, hom_basis, left_inverse, Module, ModuleMorphism};
use crate::{Error, Result};

/// Matrix over Γ: `entries[i * cols.len() + j]` is the Γ-element mapping
/// summand `cols[j]` to summand `rows[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMat {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<u32>>,
}

impl GMat {
    pub fn zeros(gdim: usize, rows: &[usize], cols: &[usize]) -> Self {
        GMat { rows: rows.to_vec(), cols: cols.to_vec(), entries: vec![vec![0; gdim]; rows.len() * cols.len()] }
    }
    pub fn get(&self, i: usize, j: usize) -> &[u32] {
        &self.entries[i * self.cols.len() + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: Vec<u32>) {
        let c = self.cols.len();
        self.entries[i * c + j] = x;
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|&x| x == 0))
    }
}

/// A module in `add(gen)` with an explicit split embedding into a sum of
/// summands: `pi ∘ s = id`.
#[derive(Clone, Debug)]
pub struct AddObj {
    pub module: Module,
    pub summands: Vec<usize>,
    /// `module -> ⊕ X_b`.
    pub s: FpMatrix,
    /// `⊕ X_b -> module`.
    pub pi: FpMatrix,
}

#[derive(Debug)]
pub struct Subcat {
    pub base: Arc<Algebra>,
    pub end: EndAlgebra,
    /// Γ-basis indices of maps into `X_b`, increasing: a basis of `ε_b Γ`.
    into: Vec<Vec<usize>>,
    ideals: Vec<Module>,
    /// Split witness of each indecomposable projective, by class.
    pub proj_witness: Vec<Option<AddObj>>,
    /// `Λ` itself as an object of `add(gen)`.
    pub regular: Option<AddObj>,
}

impl Subcat {
    pub fn new(base: &Arc<Algebra>, summands: Vec<Module>) -> Result<Arc<Self>> {
        let end = EndAlgebra::build(base, summands)?;
        Self::from_end(base, end)
    }

    pub fn from_end(base: &Arc<Algebra>, end: EndAlgebra) -> Result<Arc<Self>> {
        let k = end.summands.len();
        let gdim = end.dim();
        let mut dst_of = vec![0; gdim];
        for b in &end.blocks {
            for j in 0..b.len() {
                dst_of[b.start + j] = b.dst;
            }
        }
        let mut into = vec![Vec::new(); k];
        for (g, &t) in dst_of.iter().enumerate() {
            into[t].push(g);
        }
        let gamma = end.alg.clone();
        let ideals = (0..k).map(|s| modcat::right_ideal(&gamma, &end.identities[s]).0).collect();
        let mut sub = Subcat {
            base: base.clone(),
            end,
            into,
            ideals,
            proj_witness: Vec::new(),
            regular: None,
        };
        if let Some(rad) = base.radical() {
            let mut wit = Vec::new();
            for c in 0..rad.class_count() {
                let p = modcat::indecomposable_projective(base, c)?;
                wit.push(sub.add_witness(&p)?);
            }
            sub.proj_witness = wit;
            if sub.proj_witness.iter().all(|w| w.is_some()) {
                let reg = modcat::regular_module(base);
                sub.regular = sub.add_witness(&reg)?;
            }
        } else {
            let reg = modcat::regular_module(base);
            sub.regular = sub.add_witness(&reg)?;
        }
        Ok(Arc::new(sub))
    }

    /// `add(⊕ e_c Λ)`: the projective modules.
    pub fn projectives(base: &Arc<Algebra>) -> Result<Arc<Self>> {
        let rad = base.radical().ok_or_else(|| Error::Precondition("projectives need radical data".into()))?;
        let ps = (0..rad.class_count()).map(|c| modcat::indecomposable_projective(base, c)).collect::<Result<_>>()?;
        Self::new(base, ps)
    }

    /// `add(⊕_i Λ/J^i)`, split into local pieces.
    pub fn radical_layers(base: &Arc<Algebra>) -> Result<Arc<Self>> {
        let a = crate::aalgebra::build_aalgebra(base)?;
        Self::from_end(base, a.end)
    }

    pub fn gamma(&self) -> &Arc<Algebra> {
        &self.end.alg
    }
    pub fn gdim(&self) -> usize {
        self.end.dim()
    }
    pub fn summand_count(&self) -> usize {
        self.end.summands.len()
    }
    pub fn summand(&self, s: usize) -> &Module {
        &self.end.summands[s]
    }
    pub fn gen(&self) -> &Module {
        &self.end.total
    }
    pub fn contains_projectives(&self) -> bool {
        self.regular.is_some()
    }
    pub fn require_projectives(&self) -> Result<()> {
        if self.contains_projectives() {
            Ok(())
        } else {
            Err(Error::Precondition("the subcategory does not contain the projective modules".into()))
        }
    }
    pub fn identity(&self, s: usize) -> &[u32] {
        &self.end.identities[s]
    }
    /// Γ-basis indices spanning `ε_s Γ`.
    pub fn ideal_basis(&self, s: usize) -> &[usize] {
        &self.into[s]
    }
    pub fn ideal_dim(&self, s: usize) -> usize {
        self.into[s].len()
    }
    pub fn free_dim(&self, bs: &[usize]) -> usize {
        bs.iter().map(|&b| self.into[b].len()).sum()
    }

    /// `⊕_i ε_{b_i} Γ` as a right Γ-module.
    pub fn free_module(&self, bs: &[usize]) -> Module {
        let parts: Vec<Module> = bs.iter().map(|&b| self.ideals[b].clone()).collect();
        direct_sum(self.gamma(), &parts).0
    }

    /// `⊕_i X_{b_i}` with block offsets.
    pub fn sum_module(&self, bs: &[usize]) -> Module {
        let parts: Vec<Module> = bs.iter().map(|&b| self.summand(b).clone()).collect();
        direct_sum(&self.base, &parts).0
    }

    /// Restricts a Γ-element in `ε_b Γ` to the coordinates of the ideal.
    pub fn restrict(&self, b: usize, x: &[u32]) -> Vec<u32> {
        self.into[b].iter().map(|&g| x[g]).collect()
    }

    /// Inverse of [`Self::restrict`].
    pub fn expand(&self, b: usize, y: &[u32]) -> Vec<u32> {
        let mut x = vec![0u32; self.gdim()];
        for (&g, &c) in self.into[b].iter().zip(y) {
            x[g] = c;
        }
        x
    }

    /// Splits a vector of `⊕_i ε_{b_i} Γ` into full Γ-elements.
    pub fn split_free(&self, bs: &[usize], v: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut off = 0;
        for &b in bs {
            let n = self.into[b].len();
            out.push(self.expand(b, &v[off..off + n]));
            off += n;
        }
        out
    }

    pub fn join_free(&self, bs: &[usize], parts: &[Vec<u32>]) -> Vec<u32> {
        bs.iter().zip(parts).flat_map(|(&b, x)| self.restrict(b, x)).collect()
    }

    /// `ε_b x ε_a`.
    pub fn cut(&self, b: usize, a: usize, x: &[u32]) -> Vec<u32> {
        let g = self.gamma();
        g.mul(&g.mul(self.identity(b), x), self.identity(a))
    }

    /// F_p matrix of `y -> D y` from `⊕ ε_{a_j} Γ` to `⊕ ε_{b_i} Γ`.
    pub fn left_matrix(&self, d: &GMat) -> FpMatrix {
        let f = self.base.field();
        let g = self.gamma();
        let rows = self.free_dim(&d.rows);
        let cols = self.free_dim(&d.cols);
        let mut out = FpMatrix::zeros(f, rows, cols);
        let mut c0 = 0;
        for (j, &a) in d.cols.iter().enumerate() {
            let mut r0 = 0;
            for (i, &b) in d.rows.iter().enumerate() {
                let x = d.get(i, j);
                if x.iter().any(|&c| c != 0) {
                    for (t, &k) in self.into[a].iter().enumerate() {
                        let prod = g.mul(x, &g.basis_vector(k));
                        for (r, &gi) in self.into[b].iter().enumerate() {
                            if prod[gi] != 0 {
                                out.set(r0 + r, c0 + t, prod[gi]);
                            }
                        }
                    }
                }
                r0 += self.into[b].len();
            }
            c0 += self.into[a].len();
        }
        out
    }

    /// The module map `⊕ X_{a_j} -> ⊕ X_{b_i}` realized by `D`.
    pub fn module_matrix(&self, d: &GMat) -> FpMatrix {
        let f = self.base.field();
        let dims = |bs: &[usize]| bs.iter().map(|&b| self.summand(b).dim()).collect::<Vec<_>>();
        let (rd, cd) = (dims(&d.rows), dims(&d.cols));
        let mut out = FpMatrix::zeros(f, rd.iter().sum(), cd.iter().sum());
        let mut c0 = 0;
        for (j, &a) in d.cols.iter().enumerate() {
            let mut r0 = 0;
            for (i, &b) in d.rows.iter().enumerate() {
                let blk = self.end.block(a, b);
                let x = d.get(i, j);
                let mut m = FpMatrix::zeros(f, rd[i], cd[j]);
                for (t, mt) in blk.maps.iter().enumerate() {
                    let c = x[blk.start + t];
                    if c != 0 {
                        m.add_scaled(c, mt);
                    }
                }
                out.set_block(r0, c0, &m);
                r0 += rd[i];
            }
            c0 += cd[j];
        }
        out
    }

    /// Inverse of [`Self::module_matrix`].
    pub fn gmat_of(&self, rows: &[usize], cols: &[usize], m: &FpMatrix) -> Result<GMat> {
        let gdim = self.gdim();
        let mut d = GMat::zeros(gdim, rows, cols);
        let mut c0 = 0;
        for (j, &a) in cols.iter().enumerate() {
            let mut r0 = 0;
            let cd = self.summand(a).dim();
            for (i, &b) in rows.iter().enumerate() {
                let rd = self.summand(b).dim();
                let blk = self.end.block(a, b);
                let sub = m.block(r0, c0, rd, cd);
                let c = blk
                    .coords(&sub)
                    .ok_or_else(|| Error::Verification("block is not a module map between summands".into()))?;
                let mut x = vec![0u32; gdim];
                x[blk.start..blk.start + c.len()].copy_from_slice(&c);
                d.set(i, j, x);
                r0 += rd;
            }
            c0 += cd;
        }
        Ok(d)
    }

    pub fn gmat_mul(&self, a: &GMat, b: &GMat) -> GMat {
        assert_eq!(a.cols, b.rows, "gmat_mul: summand lists differ");
        let g = self.gamma();
        let f = g.field();
        let mut out = GMat::zeros(self.gdim(), &a.rows, &b.cols);
        for i in 0..a.rows.len() {
            for j in 0..b.cols.len() {
                let mut acc = vec![0u32; self.gdim()];
                for k in 0..a.cols.len() {
                    let (x, y) = (a.get(i, k), b.get(k, j));
                    if x.iter().any(|&c| c != 0) && y.iter().any(|&c| c != 0) {
                        axpy(f, &mut acc, 1, &g.mul(x, y));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn gmat_identity(&self, bs: &[usize]) -> GMat {
        let mut out = GMat::zeros(self.gdim(), bs, bs);
        for (i, &b) in bs.iter().enumerate() {
            out.set(i, i, self.identity(b).to_vec());
        }
        out
    }

    /// Columns of `D` as vectors of the free module on `d.rows`.
    pub fn gmat_columns(&self, d: &GMat) -> Vec<Vec<u32>> {
        (0..d.cols.len())
            .map(|j| {
                let parts: Vec<Vec<u32>> = (0..d.rows.len()).map(|i| d.get(i, j).to_vec()).collect();
                self.join_free(&d.rows, &parts)
            })
            .collect()
    }

    /// Builds a matrix from free-module column vectors, cutting column `j`
    /// on the right by `ε_{cols[j]}`.
    pub fn gmat_from_columns(&self, rows: &[usize], cols: &[usize], vs: &[Vec<u32>]) -> GMat {
        let g = self.gamma();
        let mut d = GMat::zeros(self.gdim(), rows, cols);
        for (j, v) in vs.iter().enumerate() {
            for (i, x) in self.split_free(rows, v).into_iter().enumerate() {
                d.set(i, j, g.mul(&x, self.identity(cols[j])));
            }
        }
        d
    }

    /// Generators `(n, s)` of a Γ-module with `n = n ε_s`: the top when Γ has
    /// radical data, otherwise a greedy choice per summand.
    pub fn summand_generators(&self, n: &Module) -> Result<Vec<(Vec<u32>, usize)>> {
        let g = self.gamma();
        if let Some(rad) = g.radical() {
            let reps = rad.class_reps();
            return Ok(n.top_generators()?.into_iter().map(|(v, c)| (v, reps[c])).collect());
        }
        let f = g.field();
        let mut space = RowSpace::new(f, n.dim());
        let mut out = Vec::new();
        for s in 0..self.summand_count() {
            let e = n.act_elem(self.identity(s));
            for v in e.image_basis().col_vecs() {
                if space.contains(&v) {
                    continue;
                }
                for b in 0..g.dim() {
                    space.insert(&n.act(b).mul_vec(&v));
                }
                out.push((v, s));
            }
        }
        Ok(out)
    }

    /// Surjection `⊕ ε_{b_i} Γ -> N` sending the i-th generator to `n_i`.
    pub fn free_cover(&self, n: &Module, gens: &[(Vec<u32>, usize)]) -> (Vec<usize>, FpMatrix) {
        let f = self.base.field();
        let bs: Vec<usize> = gens.iter().map(|(_, s)| *s).collect();
        let mut cols = Vec::new();
        for (v, s) in gens {
            for &k in &self.into[*s] {
                cols.push(n.act(k).mul_vec(v));
            }
        }
        (bs, FpMatrix::from_col_vecs(f, n.dim(), &cols))
    }

    /// A presentation `⊕ ε_a Γ -D-> ⊕ ε_b Γ -> N -> 0` together with the
    /// cover matrix.
    pub fn free_presentation(&self, n: &Module) -> Result<(GMat, FpMatrix)> {
        let gens = self.summand_generators(n)?;
        let (bs, cover) = self.free_cover(n, &gens);
        let free = self.free_module(&bs);
        let k = cover.kernel_basis().transpose();
        let (kmod, incl) = free.submodule(&k)?;
        let rel = self.summand_generators(&kmod)?;
        let cols: Vec<Vec<u32>> = rel.iter().map(|(v, _)| incl.mat.mul_vec(v)).collect();
        let as_: Vec<usize> = rel.iter().map(|(_, s)| *s).collect();
        Ok((self.gmat_from_columns(&bs, &as_, &cols), cover))
    }

    /// `Hom(gen, M)` as a right Γ-module (precomposition), with its basis.
    pub fn hom_module(&self, m: &Module) -> Result<(Module, Vec<ModuleMorphism>)> {
        let f = self.base.field();
        let basis = hom_basis(self.gen(), m)?;
        let n = basis.len();
        let g = self.gamma();
        let coords = modcat::HomCoords::new(&basis)?;
        let mut act = Vec::with_capacity(g.dim());
        for k in 0..g.dim() {
            let gk = self.end.basis_endo(k);
            let cols: Vec<Vec<u32>> = basis
                .iter()
                .map(|h| coords.coords(&h.mat.mul(&gk)).expect("precomposition stays in Hom"))
                .collect();
            act.push(FpMatrix::from_col_vecs(f, n, &cols));
        }
        Ok((Module::from_parts(g.clone(), n, act)?, basis))
    }

    /// Decides membership in `add(gen)`: a single isomorphic summand if one
    /// exists, otherwise a split right approximation by summands.
    pub fn add_witness(&self, m: &Module) -> Result<Option<AddObj>> {
        let f = self.base.field();
        if m.dim() == 0 {
            return Ok(Some(AddObj {
                module: m.clone(),
                summands: vec![],
                s: FpMatrix::zeros(f, 0, 0),
                pi: FpMatrix::zeros(f, 0, 0),
            }));
        }
        for s in 0..self.summand_count() {
            if self.summand(s).dim() == m.dim() {
                if let Some(iso) = modcat::module_iso_search(m, self.summand(s))? {
                    let inv = iso.mat.invert()?;
                    return Ok(Some(AddObj { module: m.clone(), summands: vec![s], s: iso.mat, pi: inv }));
                }
            }
        }
        let (summands, ap) = self.approximation(m)?;
        match modcat::split_epi_section(&ap)? {
            Some(sec) => Ok(Some(AddObj { module: m.clone(), summands, s: sec.mat, pi: ap.mat })),
            None => Ok(None),
        }
    }

    /// Right approximation `⊕_s X_s^{h_s} -> M` by the Hom bases from each
    /// summand, summands listed with multiplicity.
    pub fn approximation(&self, m: &Module) -> Result<(Vec<usize>, ModuleMorphism)> {
        let f = self.base.field();
        let mut bs = Vec::new();
        let mut blocks = Vec::new();
        for s in 0..self.summand_count() {
            for h in hom_basis(self.summand(s), m)? {
                bs.push(s);
                blocks.push(h.mat);
            }
        }
        let src = self.sum_module(&bs);
        let mat = FpMatrix::hstack(f, m.dim(), &blocks.iter().collect::<Vec<_>>());
        Ok((bs, ModuleMorphism { src, dst: m.clone(), mat }))
    }

    /// Witness for a direct sum of indecomposable projectives given by the
    /// classes of its summands (as produced by `projective_cover`).
    pub fn projective_witness(&self, classes: &[usize]) -> Result<(Vec<usize>, FpMatrix, FpMatrix)> {
        let f = self.base.field();
        let mut bs = Vec::new();
        let mut ss = Vec::new();
        let mut ps = Vec::new();
        for &c in classes {
            let w = self
                .proj_witness
                .get(c)
                .and_then(|w| w.as_ref())
                .ok_or_else(|| Error::Precondition("projective outside the subcategory".into()))?;
            bs.extend_from_slice(&w.summands);
            ss.push(w.s.clone());
            ps.push(w.pi.clone());
        }
        let s = FpMatrix::block_diag(f, &ss.iter().collect::<Vec<_>>());
        let p = FpMatrix::block_diag(f, &ps.iter().collect::<Vec<_>>());
        Ok((bs, s, p))
    }

    /// Evaluation of a Γ-module at a sum `⊕ X_b`: the space `⊕ N ε_b`,
    /// as basis columns of `N^{len}`.
    pub fn evaluate_sum(&self, n: &Module, bs: &[usize]) -> FpMatrix {
        let f = self.base.field();
        let blocks: Vec<FpMatrix> = bs.iter().map(|&b| n.act_elem(self.identity(b)).image_basis()).collect();
        FpMatrix::block_diag(f, &blocks.iter().collect::<Vec<_>>())
    }

    /// `(y_b) -> (Σ_b y_b · E_{bc})_c`: a Γ-matrix acting contravariantly on
    /// `N^{rows}`, landing in `N^{cols}`.
    pub fn contravariant_matrix(&self, n: &Module, e: &GMat) -> FpMatrix {
        let d = n.dim();
        let mut m = FpMatrix::zeros(self.base.field(), e.cols.len() * d, e.rows.len() * d);
        for b in 0..e.rows.len() {
            for c in 0..e.cols.len() {
                m.set_block(c * d, b * d, &n.act_elem(e.get(b, c)));
            }
        }
        m
    }

    /// Evaluation at an object of `add(gen)` with witness `(s, π)`: the image
    /// of the idempotent `sπ` acting on `N(⊕ X_b)`, as columns of `N^{len}`.
    pub fn evaluate(&self, n: &Module, x: &AddObj) -> Result<FpMatrix> {
        let bs = &x.summands;
        let e = self.gmat_of(bs, bs, &x.s.mul(&x.pi))?;
        let ambient = self.evaluate_sum(n, bs);
        Ok(self.contravariant_matrix(n, &e).mul(&ambient).image_basis())
    }

    /// `N(f): N(Y) -> N(X)` for a module map `f: X -> Y` between objects of
    /// `add(gen)`, in the bases returned by [`Self::evaluate`].
    pub fn evaluate_map(&self, n: &Module, x: &AddObj, y: &AddObj, f: &FpMatrix) -> Result<FpMatrix> {
        let e = self.gmat_of(&y.summands, &x.summands, &y.s.mul(f).mul(&x.pi))?;
        let bx = self.evaluate(n, x)?;
        let by = self.evaluate(n, y)?;
        let img = self.contravariant_matrix(n, &e).mul(&by);
        if bx.cols() == 0 {
            return Ok(FpMatrix::zeros(self.base.field(), 0, by.cols()));
        }
        Ok(left_inverse(&bx)?.mul(&img))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, Quiver, RelationTerm, DEFAULT_PATH_CAP};
    use crate::exactla::FieldChar;

    fn dual_numbers() -> Arc<Algebra> {
        let q = Quiver { vertices: 1, arrows: vec![Arrow { name: "x".into(), src: 0, dst: 0 }] };
        let rel = vec![RelationTerm { coeff: 1, path: vec!["x".into(), "x".into()] }];
        Arc::new(Algebra::from_quiver(&q, &[rel], FieldChar::new(101).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    #[test]
    fn layers_contain_projectives() {
        let sub = Subcat::radical_layers(&dual_numbers()).unwrap();
        assert!(sub.contains_projectives());
        assert_eq!(sub.gdim(), 5);
        assert_eq!(sub.regular.as_ref().unwrap().summands.len(), 1);
    }

    #[test]
    fn module_matrix_round_trip() {
        let sub = Subcat::radical_layers(&dual_numbers()).unwrap();
        let mut d = GMat::zeros(sub.gdim(), &[1], &[0]);
        let blk = sub.end.block(0, 1);
        let mut x = vec![0u32; sub.gdim()];
        x[blk.start] = 3;
        d.set(0, 0, x);
        let m = sub.module_matrix(&d);
        assert_eq!(sub.gmat_of(&[1], &[0], &m).unwrap(), d);
    }

    #[test]
    fn free_presentation_of_regular_gamma() {
        let sub = Subcat::radical_layers(&dual_numbers()).unwrap();
        let reg = modcat::regular_module(sub.gamma());
        let (d, cover) = sub.free_presentation(&reg).unwrap();
        assert_eq!(cover.rank(), reg.dim());
        assert!(d.cols.is_empty());
    }

    #[test]
    fn hom_module_of_gen_is_regular() {
        let sub = Subcat::radical_layers(&dual_numbers()).unwrap();
        let (h, _) = sub.hom_module(sub.gen()).unwrap();
        h.validate().unwrap();
        assert_eq!(h.dim(), sub.gdim());
    }
}
