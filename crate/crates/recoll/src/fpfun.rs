//! Finitely presented contravariant functors on `add(gen)`.
//!
//! A functor is the cokernel of `(−, ⊕_j X_{a_j}) -> (−, ⊕_i X_{b_i})` for a
//! matrix `D` over `Γ = End(gen)`. Evaluating at `gen` gives the right
//! Γ-module `ζF = coker(D·)` on `⊕ ε_{b_i} Γ`, and natural transformations are
//! exactly Γ-module maps between these.

use std::sync::{Arc, OnceLock};

use crate::exactla::{Coordinates, FpMatrix};
use crate::modcat::{self, hom_basis, left_inverse, Module, ModuleMorphism};
use crate::subcat::{AddObj, GMat, Subcat};
use crate::{Error, Result};

#[derive(Clone, Debug)]
struct Zeta {
    module: Module,
    /// Free module `⊕ ε_b Γ -> ζF`.
    proj: FpMatrix,
    /// Coordinate section `ζF -> ⊕ ε_b Γ` of `proj`.
    section: FpMatrix,
}

#[derive(Clone, Debug)]
pub struct FpFunctor {
    pub sub: Arc<Subcat>,
    pub d: GMat,
    zeta: OnceLock<Zeta>,
}

impl FpFunctor {
    pub fn new(sub: &Arc<Subcat>, d: GMat) -> Result<Self> {
        for (i, &b) in d.rows.iter().enumerate() {
            for (j, &a) in d.cols.iter().enumerate() {
                if sub.cut(b, a, d.get(i, j)) != d.get(i, j) {
                    return Err(Error::Input(format!("presentation entry ({i},{j}) is not a map between summands")));
                }
            }
        }
        Ok(Self::from_gmat(sub, d))
    }

    fn from_gmat(sub: &Arc<Subcat>, d: GMat) -> Self {
        FpFunctor { sub: sub.clone(), d, zeta: OnceLock::new() }
    }

    /// `(−, ⊕ X_b)`.
    pub fn representable(sub: &Arc<Subcat>, bs: &[usize]) -> Self {
        Self::from_gmat(sub, GMat::zeros(sub.gdim(), bs, &[]))
    }

    pub fn zero(sub: &Arc<Subcat>) -> Self {
        Self::representable(sub, &[])
    }

    pub fn top(&self) -> &[usize] {
        &self.d.rows
    }
    pub fn relations(&self) -> &[usize] {
        &self.d.cols
    }

    fn zeta_data(&self) -> &Zeta {
        self.zeta.get_or_init(|| {
            let f = self.sub.base.field();
            let free = self.sub.free_module(&self.d.rows);
            let l = self.sub.left_matrix(&self.d);
            let comp = l.cokernel_complement();
            let (module, proj) = free.quotient(&l);
            let mut section = FpMatrix::zeros(f, free.dim(), comp.len());
            for (t, &c) in comp.iter().enumerate() {
                section.set(c, t, 1);
            }
            Zeta { module, proj: proj.mat, section }
        })
    }

    /// `F(gen)` as a right Γ-module.
    pub fn zeta(&self) -> &Module {
        &self.zeta_data().module
    }
    pub fn zeta_dim(&self) -> usize {
        self.zeta().dim()
    }
    pub fn zeta_projection(&self) -> &FpMatrix {
        &self.zeta_data().proj
    }
    pub fn zeta_section(&self) -> &FpMatrix {
        &self.zeta_data().section
    }

    /// The presenting map `⊕ X_{a_j} -> ⊕ X_{b_i}` of modules.
    pub fn module_presentation(&self) -> ModuleMorphism {
        let src = self.sub.sum_module(&self.d.cols);
        let dst = self.sub.sum_module(&self.d.rows);
        ModuleMorphism { src, dst, mat: self.sub.module_matrix(&self.d) }
    }

    /// The module `coker(d)`, with the projection from `⊕ X_{b_i}`.
    pub fn to_module(&self) -> (Module, ModuleMorphism) {
        self.module_presentation().cokernel()
    }

    /// `F(X)` for an object of `add(gen)`, as basis columns in `⊕ ζF ε_b`.
    pub fn evaluate(&self, x: &AddObj) -> Result<FpMatrix> {
        self.sub.evaluate(self.zeta(), x)
    }

    /// `F(Λ)`, computed from the split witness of `Λ` in `add(gen)`.
    pub fn value_dim_at_regular(&self) -> Result<usize> {
        let reg = self.sub.regular.as_ref().ok_or_else(|| Error::Precondition("Λ is not in the subcategory".into()))?;
        Ok(self.evaluate(reg)?.cols())
    }

    /// Whether `F` vanishes on projectives: the presenting map is onto. The
    /// cokernel and the value at `Λ` are computed independently and must agree.
    pub fn vanishes_on_projectives(&self) -> Result<bool> {
        let onto = self.module_presentation().is_surjective();
        let va_zero = self.to_module().0.dim() == 0;
        let at_regular = self.value_dim_at_regular()? == 0;
        if onto != va_zero || onto != at_regular {
            return Err(Error::Verification(format!(
                "vanishing tests disagree: onto={onto}, cokernel zero={va_zero}, value at Λ zero={at_regular}"
            )));
        }
        Ok(onto)
    }

    /// `F ⊕ 0` presented with an extra identity block.
    pub fn padded(&self, extra: &[usize]) -> FpFunctor {
        let sub = &self.sub;
        let mut rows = self.d.rows.clone();
        rows.extend_from_slice(extra);
        let mut cols = self.d.cols.clone();
        cols.extend_from_slice(extra);
        let mut d = GMat::zeros(sub.gdim(), &rows, &cols);
        for i in 0..self.d.rows.len() {
            for j in 0..self.d.cols.len() {
                d.set(i, j, self.d.get(i, j).to_vec());
            }
        }
        for (k, &b) in extra.iter().enumerate() {
            d.set(self.d.rows.len() + k, self.d.cols.len() + k, sub.identity(b).to_vec());
        }
        Self::from_gmat(sub, d)
    }
}

/// A natural transformation, stored as a lift `(h0, h1)` of presentations
/// with `D_G h1 = h0 D_F`.
#[derive(Clone, Debug)]
pub struct FunctorMorphism {
    pub src: FpFunctor,
    pub dst: FpFunctor,
    pub h0: GMat,
    pub h1: GMat,
}

impl FunctorMorphism {
    pub fn validate(&self) -> Result<()> {
        let sub = &self.src.sub;
        let lhs = sub.gmat_mul(&self.dst.d, &self.h1);
        let rhs = sub.gmat_mul(&self.h0, &self.src.d);
        if lhs != rhs {
            return Err(Error::Verification("lift square does not commute".into()));
        }
        Ok(())
    }

    pub fn identity(f: &FpFunctor) -> Self {
        let sub = &f.sub;
        FunctorMorphism {
            src: f.clone(),
            dst: f.clone(),
            h0: sub.gmat_identity(&f.d.rows),
            h1: sub.gmat_identity(&f.d.cols),
        }
    }

    pub fn zero(src: &FpFunctor, dst: &FpFunctor) -> Self {
        let g = src.sub.gdim();
        FunctorMorphism {
            src: src.clone(),
            dst: dst.clone(),
            h0: GMat::zeros(g, &dst.d.rows, &src.d.rows),
            h1: GMat::zeros(g, &dst.d.cols, &src.d.cols),
        }
    }

    /// The induced Γ-module map `ζF -> ζG`.
    pub fn zeta_map(&self) -> FpMatrix {
        let l = self.src.sub.left_matrix(&self.h0);
        self.dst.zeta_projection().mul(&l).mul(self.src.zeta_section())
    }

    pub fn zeta_morphism(&self) -> ModuleMorphism {
        ModuleMorphism { src: self.src.zeta().clone(), dst: self.dst.zeta().clone(), mat: self.zeta_map() }
    }

    /// The induced map of cokernels `coker d_F -> coker d_G`.
    pub fn to_module_map(&self) -> ModuleMorphism {
        let sub = &self.src.sub;
        let (vf, _) = self.src.to_module();
        let (vg, qg) = self.dst.to_module();
        let h = sub.module_matrix(&self.h0);
        let sf = quotient_section(&self.src.module_presentation().mat);
        ModuleMorphism { src: vf, dst: vg, mat: qg.mat.mul(&h).mul(&sf) }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &FunctorMorphism) -> FunctorMorphism {
        let sub = &self.src.sub;
        FunctorMorphism {
            src: g.src.clone(),
            dst: self.dst.clone(),
            h0: sub.gmat_mul(&self.h0, &g.h0),
            h1: sub.gmat_mul(&self.h1, &g.h1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zeta_map().is_zero()
    }

    pub fn is_iso(&self) -> bool {
        let m = self.zeta_map();
        m.rows() == m.cols() && m.rank() == m.rows()
    }
}

/// Unit-vector section of the quotient by the column span of `span`, as
/// built by `Module::quotient`.
pub fn quotient_section(span: &FpMatrix) -> FpMatrix {
    let comp = span.cokernel_complement();
    let mut s = FpMatrix::zeros(span.field(), span.rows(), comp.len());
    for (t, &c) in comp.iter().enumerate() {
        s.set(c, t, 1);
    }
    s
}

/// Completes `h0` to a lift by solving `D_G h1 = h0 D_F` column by column.
pub fn complete_lift(src: &FpFunctor, dst: &FpFunctor, h0: GMat) -> Result<FunctorMorphism> {
    let sub = &src.sub;
    let target = sub.gmat_mul(&h0, &src.d);
    let cols = sub.gmat_columns(&target);
    let l = sub.left_matrix(&dst.d);
    let mut sols = Vec::with_capacity(cols.len());
    for c in &cols {
        let z = l
            .solve(c)?
            .ok_or_else(|| Error::Verification("map does not descend to the cokernels".into()))?;
        sols.push(z);
    }
    let h1 = sub.gmat_from_columns(&dst.d.cols, &src.d.cols, &sols);
    let m = FunctorMorphism { src: src.clone(), dst: dst.clone(), h0, h1 };
    debug_assert!(m.validate().is_ok());
    Ok(m)
}

/// Lifts a Γ-module map `ζF -> ζG` to a morphism of presentations.
pub fn lift_zeta_map(src: &FpFunctor, dst: &FpFunctor, phi: &FpMatrix) -> Result<FunctorMorphism> {
    let sub = &src.sub;
    let pf = src.zeta_projection();
    let sg = dst.zeta_section();
    let mut cols = Vec::with_capacity(src.d.rows.len());
    let mut off = 0;
    for &b in &src.d.rows {
        let mut e = vec![0u32; sub.free_dim(&src.d.rows)];
        let id = sub.restrict(b, sub.identity(b));
        e[off..off + id.len()].copy_from_slice(&id);
        off += id.len();
        let y = sg.mul_vec(&phi.mul_vec(&pf.mul_vec(&e)));
        cols.push(y);
    }
    let h0 = sub.gmat_from_columns(&dst.d.rows, &src.d.rows, &cols);
    complete_lift(src, dst, h0)
}

/// Basis of natural transformations `F -> G`, computed as the kernel of
/// `G(⊕X_b) -> G(⊕X_a)` induced by the presentation of `F`.
pub fn fp_hom(src: &FpFunctor, dst: &FpFunctor) -> Result<Vec<FunctorMorphism>> {
    let sub = &src.sub;
    let f = sub.base.field();
    let n = dst.zeta();
    let nd = n.dim();
    let bases: Vec<FpMatrix> = src.d.rows.iter().map(|&b| n.act_elem(sub.identity(b)).image_basis()).collect();
    let unknowns: usize = bases.iter().map(|b| b.cols()).sum();
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for j in 0..src.d.cols.len() {
        let mut block = FpMatrix::zeros(f, nd, unknowns);
        let mut off = 0;
        for (i, b) in bases.iter().enumerate() {
            let m = n.act_elem(src.d.get(i, j)).mul(b);
            block.set_block(0, off, &m);
            off += b.cols();
        }
        rows.push(block);
    }
    let sys = FpMatrix::vstack(f, unknowns, &rows.iter().collect::<Vec<_>>());
    let sols = sys.kernel_basis();
    let mut out = Vec::new();
    for x in sols.row_vecs() {
        // Φ on free generators: γ_k in slot i goes to y_i · γ_k.
        let mut cols = Vec::new();
        let mut off = 0;
        for (i, &b) in src.d.rows.iter().enumerate() {
            let yi = bases[i].mul_vec(&x[off..off + bases[i].cols()]);
            off += bases[i].cols();
            for &g in sub.ideal_basis(b) {
                cols.push(n.act(g).mul_vec(&yi));
            }
        }
        let big_phi = FpMatrix::from_col_vecs(f, nd, &cols);
        let phi = big_phi.mul(src.zeta_section());
        out.push(lift_zeta_map(src, dst, &phi)?);
    }
    Ok(out)
}

/// Coordinates of Γ-maps `ζF -> ζG` in the span of a Hom basis.
pub struct ZetaCoords {
    inner: Option<Coordinates>,
}

impl ZetaCoords {
    pub fn new(basis: &[FunctorMorphism]) -> Result<Self> {
        let Some(first) = basis.first() else { return Ok(ZetaCoords { inner: None }) };
        let maps: Vec<Vec<u32>> = basis.iter().map(|h| h.zeta_map().data().to_vec()).collect();
        let m = first.zeta_map();
        let f = m.field();
        Ok(ZetaCoords { inner: Some(Coordinates::new(&FpMatrix::from_row_vecs(f, m.rows() * m.cols(), &maps))?) })
    }
    pub fn coords(&self, phi: &FpMatrix) -> Option<Vec<u32>> {
        match &self.inner {
            None => phi.is_zero().then(Vec::new),
            Some(c) => c.coords(phi.data()),
        }
    }
}

/// Iso search between functors via invertible Γ-maps.
pub fn functor_iso(src: &FpFunctor, dst: &FpFunctor) -> Result<Option<FunctorMorphism>> {
    if src.zeta_dim() != dst.zeta_dim() {
        return Ok(None);
    }
    if src.zeta_dim() == 0 {
        return Ok(Some(FunctorMorphism::zero(src, dst)));
    }
    let basis: Vec<ModuleMorphism> = fp_hom(src, dst)?.iter().map(|h| h.zeta_morphism()).collect();
    match modcat::find_invertible(src.zeta(), dst.zeta(), &basis) {
        Some(m) => Ok(Some(lift_zeta_map(src, dst, &m.mat)?)),
        None => Ok(None),
    }
}

/// The functor presented by a free presentation of a Γ-module, with the
/// isomorphism `ζF -> N`.
pub fn from_gamma_module(sub: &Arc<Subcat>, n: &Module) -> Result<(FpFunctor, FpMatrix)> {
    let (d, cover) = sub.free_presentation(n)?;
    let func = FpFunctor::from_gmat(sub, d);
    let iso = cover.mul(func.zeta_section());
    Ok((func, iso))
}

/// Functor presented by a module map `d: X1 -> X0` between objects of
/// `add(gen)`, padded by `1 - sπ` on `X0`'s ambient sum.
pub fn from_module_map(sub: &Arc<Subcat>, x1: &AddObj, x0: &AddObj, d: &FpMatrix) -> Result<FpFunctor> {
    let f = sub.base.field();
    let core = x0.s.mul(d).mul(&x1.pi);
    let e0 = x0.s.mul(&x0.pi);
    let n0 = e0.rows();
    let pad = FpMatrix::identity(f, n0).sub(&e0);
    let mut cols = x1.summands.clone();
    let mat = if pad.is_zero() {
        core
    } else {
        cols.extend_from_slice(&x0.summands);
        FpMatrix::hstack(f, n0, &[&core, &pad])
    };
    let g = sub.gmat_of(&x0.summands, &cols, &mat)?;
    Ok(FpFunctor::from_gmat(sub, g))
}

/// `va_λ M` together with the data used to build it.
#[derive(Clone, Debug)]
pub struct ProjPresented {
    pub functor: FpFunctor,
    /// `coker d -> M`.
    pub iso: ModuleMorphism,
    pub pres: modcat::Presentation,
    /// Witness `(summands, s, π)` of the top term `P0`.
    pub witness0: (Vec<usize>, FpMatrix, FpMatrix),
}

/// Presentation by projectives: the cokernel of `(−,P1) -> (−,P0)` for a
/// minimal projective presentation, with the iso `coker -> M`.
pub fn present_by_projectives(sub: &Arc<Subcat>, m: &Module) -> Result<ProjPresented> {
    sub.require_projectives()?;
    let pres = modcat::projective_presentation(m)?;
    let (bs0, s0, p0) = sub.projective_witness(&pres.classes0)?;
    let (bs1, s1, p1) = sub.projective_witness(&pres.classes1)?;
    let x0 = AddObj { module: pres.eps.src.clone(), summands: bs0, s: s0, pi: p0 };
    let x1 = AddObj { module: pres.d.src.clone(), summands: bs1, s: s1, pi: p1 };
    let func = from_module_map(sub, &x1, &x0, &pres.d.mat)?;
    let (v, _) = func.to_module();
    let through = pres.eps.mat.mul(&x0.pi);
    let sec = quotient_section(&func.module_presentation().mat);
    let iso = ModuleMorphism { src: v, dst: m.clone(), mat: through.mul(&sec) };
    Ok(ProjPresented { functor: func, iso, pres, witness0: (x0.summands, x0.s, x0.pi) })
}

pub fn presented_by_projectives(sub: &Arc<Subcat>, m: &Module) -> Result<(FpFunctor, ModuleMorphism)> {
    let p = present_by_projectives(sub, m)?;
    Ok((p.functor, p.iso))
}

/// `va_λ(g)` for a module map `g: M -> N`.
pub fn lift_module_map(src: &ProjPresented, dst: &ProjPresented, g: &FpMatrix) -> Result<FunctorMorphism> {
    let into = dst.iso.mat.invert()?.mul(g);
    left_adjunct(&src.functor, &src.witness0, &src.pres.eps, &dst.functor, &into)
}

/// Restricted Hom functor `(−, M)|_add(gen)` with the iso
/// `ζF -> Hom(gen, M)` (coordinates in `hom_basis(gen, M)`).
#[derive(Clone, Debug)]
pub struct RestrictedHom {
    pub functor: FpFunctor,
    pub hom: Module,
    pub hom_basis: Vec<ModuleMorphism>,
    pub iso: FpMatrix,
    /// The approximation `⊕ X_b -> M`.
    pub approx: ModuleMorphism,
}

pub fn restricted_hom(sub: &Arc<Subcat>, m: &Module) -> Result<RestrictedHom> {
    let (bs0, ap0) = sub.approximation(m)?;
    let (_, incl) = ap0.kernel();
    let (bs1, ap1) = sub.approximation(&incl.src)?;
    let d = incl.mat.mul(&ap1.mat);
    let g = sub.gmat_of(&bs0, &bs1, &d)?;
    let functor = FpFunctor::from_gmat(sub, g);
    let (hom, basis) = sub.hom_module(m)?;
    let theta = free_to_hom(sub, &bs0, &ap0.mat, &basis)?;
    let iso = theta.mul(functor.zeta_section());
    if iso.rows() != iso.cols() || iso.rank() != iso.rows() {
        return Err(Error::Verification("restricted Hom is not evaluated correctly at gen".into()));
    }
    Ok(RestrictedHom { functor, hom, hom_basis: basis, iso, approx: ap0 })
}

/// Matrix of `x -> q ∘ x` from `⊕ ε_b Γ` (maps `gen -> ⊕ X_b`) to
/// `Hom(gen, M)` coordinates, for `q: ⊕ X_b -> M`.
pub fn free_to_hom(sub: &Subcat, bs: &[usize], q: &FpMatrix, basis: &[ModuleMorphism]) -> Result<FpMatrix> {
    let f = sub.base.field();
    let coords = modcat::HomCoords::new(basis)?;
    let all: Vec<usize> = (0..sub.summand_count()).collect();
    let mut cols = Vec::new();
    let n = sub.free_dim(bs);
    for t in 0..n {
        let mut v = vec![0u32; n];
        v[t] = 1;
        let parts = sub.split_free(bs, &v);
        let mut x = GMat::zeros(sub.gdim(), bs, &all);
        for (i, p) in parts.iter().enumerate() {
            for &j in &all {
                x.set(i, j, sub.cut(bs[i], j, p));
            }
        }
        let map = q.mul(&sub.module_matrix(&x));
        cols.push(coords.coords(&map).ok_or_else(|| Error::Verification("map outside Hom(gen, M)".into()))?);
    }
    Ok(FpMatrix::from_col_vecs(f, basis.len(), &cols))
}

/// Unit `F -> (−, coker d_F)`, as a morphism into the restricted Hom functor.
pub fn unit_to_restricted(func: &FpFunctor) -> Result<(FunctorMorphism, RestrictedHom)> {
    let sub = &func.sub;
    let (v, q) = func.to_module();
    let rh = restricted_hom(sub, &v)?;
    let theta = free_to_hom(sub, &func.d.rows, &q.mat, &rh.hom_basis)?;
    let phi = rh.iso.invert()?.mul(&theta).mul(func.zeta_section());
    let m = lift_zeta_map(func, &rh.functor, &phi)?;
    Ok((m, rh))
}

/// Solves `q ∘ g = target` for a module map `g: P -> ⊕X_b`.
fn lift_through(p: &Module, q: &ModuleMorphism, target: &FpMatrix) -> Result<FpMatrix> {
    let basis = hom_basis(p, &q.src)?;
    let f = target.field();
    if basis.is_empty() {
        if target.is_zero() {
            return Ok(FpMatrix::zeros(f, q.src.dim(), p.dim()));
        }
        return Err(Error::Verification("map does not lift".into()));
    }
    let cols: Vec<Vec<u32>> = basis.iter().map(|h| q.mat.mul(&h.mat).data().to_vec()).collect();
    let a = FpMatrix::from_col_vecs(f, target.rows() * target.cols(), &cols);
    let c = a.solve(target.data())?.ok_or_else(|| Error::Verification("map does not lift".into()))?;
    Ok(modcat::combine(p, &q.src, &basis, &c).mat)
}

/// The bijection `Hom(M, coker d_F) -> Hom(va_λ M, F)`.
pub fn left_adjunct(
    pres_functor: &FpFunctor,
    pres_witness: &(Vec<usize>, FpMatrix, FpMatrix),
    eps: &ModuleMorphism,
    func: &FpFunctor,
    f_map: &FpMatrix,
) -> Result<FunctorMorphism> {
    let sub = &func.sub;
    let (_, q) = func.to_module();
    let target = f_map.mul(&eps.mat);
    let g0 = lift_through(&eps.src, &q, &target)?;
    let (bs0, _, pi0) = pres_witness;
    let h = g0.mul(pi0);
    let h0 = sub.gmat_of(&func.d.rows, bs0, &h)?;
    complete_lift(pres_functor, func, h0)
}

/// Result of checking `Hom(M, va F) ≅ Hom(va_λ M, F)` with the explicit map.
#[derive(Clone, Debug)]
pub struct AdjunctionCheck {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub image_rank: usize,
}

impl AdjunctionCheck {
    pub fn is_iso(&self) -> bool {
        self.lhs_dim == self.rhs_dim && self.image_rank == self.lhs_dim
    }
}

pub fn adjunction_check_left(m: &Module, func: &FpFunctor) -> Result<AdjunctionCheck> {
    let sub = &func.sub;
    sub.require_projectives()?;
    let pres = modcat::projective_presentation(m)?;
    let w0 = sub.projective_witness(&pres.classes0)?;
    let (lam, _) = presented_by_projectives(sub, m)?;
    let (v, _) = func.to_module();
    let lhs = hom_basis(m, &v)?;
    let rhs = fp_hom(&lam, func)?;
    let coords = ZetaCoords::new(&rhs)?;
    let f = sub.base.field();
    let mut imgs = Vec::new();
    for h in &lhs {
        let mor = left_adjunct(&lam, &w0, &pres.eps, func, &h.mat)?;
        imgs.push(coords.coords(&mor.zeta_map()).ok_or_else(|| Error::Verification("adjunct outside Hom basis".into()))?);
    }
    let image_rank = if imgs.is_empty() { 0 } else { FpMatrix::from_col_vecs(f, rhs.len(), &imgs).rank() };
    Ok(AdjunctionCheck { lhs_dim: lhs.len(), rhs_dim: rhs.len(), image_rank })
}

/// `ψ(f) = (−, f) ∘ unit` from `Hom(coker d_F, M)` to `Hom(F, (−,M)|)`.
pub fn adjunction_check_right(func: &FpFunctor, m: &Module) -> Result<AdjunctionCheck> {
    let sub = &func.sub;
    sub.require_projectives()?;
    let (v, q) = func.to_module();
    let rh = restricted_hom(sub, m)?;
    let lhs = hom_basis(&v, m)?;
    let rhs = fp_hom(func, &rh.functor)?;
    let coords = ZetaCoords::new(&rhs)?;
    let f = sub.base.field();
    let inv = rh.iso.invert()?;
    let mut imgs = Vec::new();
    for h in &lhs {
        let theta = free_to_hom(sub, &func.d.rows, &h.mat.mul(&q.mat), &rh.hom_basis)?;
        let phi = inv.mul(&theta).mul(func.zeta_section());
        imgs.push(coords.coords(&phi).ok_or_else(|| Error::Verification("adjunct outside Hom basis".into()))?);
    }
    let image_rank = if imgs.is_empty() { 0 } else { FpMatrix::from_col_vecs(f, rhs.len(), &imgs).rank() };
    Ok(AdjunctionCheck { lhs_dim: lhs.len(), rhs_dim: rhs.len(), image_rank })
}

/// Counit `va_λ(coker d_F) -> F`.
pub fn counit_from_projectives(func: &FpFunctor) -> Result<(FunctorMorphism, FpFunctor)> {
    let sub = &func.sub;
    let (v, _) = func.to_module();
    let pres = modcat::projective_presentation(&v)?;
    let w0 = sub.projective_witness(&pres.classes0)?;
    let (lam, _) = presented_by_projectives(sub, &v)?;
    let id = FpMatrix::identity(sub.base.field(), v.dim());
    let m = left_adjunct(&lam, &w0, &pres.eps, func, &id)?;
    Ok((m, lam))
}

/// Kernel of a natural transformation, with its inclusion.
pub fn kernel(m: &FunctorMorphism) -> Result<(FpFunctor, FunctorMorphism)> {
    let sub = &m.src.sub;
    let (k, incl) = m.zeta_morphism().kernel();
    let (kf, iso) = from_gamma_module(sub, &k)?;
    let phi = incl.mat.mul(&iso);
    let i = lift_zeta_map(&kf, &m.src, &phi)?;
    Ok((kf, i))
}

/// Cokernel of a natural transformation, with its projection.
pub fn cokernel(m: &FunctorMorphism) -> Result<(FpFunctor, FunctorMorphism)> {
    let sub = &m.src.sub;
    let (c, proj) = m.zeta_morphism().cokernel();
    let (cf, iso) = from_gamma_module(sub, &c)?;
    let phi = iso.invert()?.mul(&proj.mat);
    let p = lift_zeta_map(&m.dst, &cf, &phi)?;
    Ok((cf, p))
}

/// Image of a natural transformation: `(image, inclusion, corestriction)`.
pub fn image(m: &FunctorMorphism) -> Result<(FpFunctor, FunctorMorphism, FunctorMorphism)> {
    let sub = &m.src.sub;
    let (im, incl, onto) = m.zeta_morphism().image();
    let (imf, iso) = from_gamma_module(sub, &im)?;
    let i = lift_zeta_map(&imf, &m.dst, &incl.mat.mul(&iso))?;
    let o = lift_zeta_map(&m.src, &imf, &iso.invert()?.mul(&onto.mat))?;
    Ok((imf, i, o))
}

/// The two four-term exact sequences around the unit and the counit:
/// `0 -> F0 -> F -> (−, va F) -> F1 -> 0` and
/// `0 -> F2 -> va_λ va F -> F -> F3 -> 0`.
#[derive(Clone, Debug)]
pub struct UnitCounitSequences {
    pub f0: FpFunctor,
    pub f1: FpFunctor,
    pub f2: FpFunctor,
    pub f3: FpFunctor,
    pub unit: FunctorMorphism,
    pub counit: FunctorMorphism,
    pub first: Vec<FunctorMorphism>,
    pub second: Vec<FunctorMorphism>,
}

pub fn unit_counit_sequences(func: &FpFunctor) -> Result<UnitCounitSequences> {
    func.sub.require_projectives()?;
    let (unit, _) = unit_to_restricted(func)?;
    let (f0, i0) = kernel(&unit)?;
    let (f1, p1) = cokernel(&unit)?;
    let (counit, _) = counit_from_projectives(func)?;
    let (f2, i2) = kernel(&counit)?;
    let (f3, p3) = cokernel(&counit)?;
    Ok(UnitCounitSequences {
        f0,
        f1,
        f2,
        f3,
        first: vec![i0, unit.clone(), p1],
        second: vec![i2, counit.clone(), p3],
        unit,
        counit,
    })
}

/// Exactness of `0 -> A1 -> ... -> Ak -> 0` given the inner maps.
pub fn sequence_exact(maps: &[FpMatrix]) -> bool {
    let Some(first) = maps.first() else { return true };
    let Some(last) = maps.last() else { return true };
    if first.rank() != first.cols() || last.rank() != last.rows() {
        return false;
    }
    maps.windows(2).all(|w| modcat::is_exact_at(&w[0], &w[1]))
}

/// A map of Γ-modules evaluated at an object of `add(gen)`, in the bases
/// returned by [`FpFunctor::evaluate`].
pub fn evaluate_map(m: &FunctorMorphism, x: &AddObj) -> Result<FpMatrix> {
    let f = m.src.sub.base.field();
    let bsrc = m.src.evaluate(x)?;
    let bdst = m.dst.evaluate(x)?;
    let phi = m.zeta_map();
    let k = x.summands.len();
    let big = FpMatrix::block_diag(f, &vec![&phi; k]);
    let img = big.mul(&bsrc);
    if bdst.cols() == 0 {
        return Ok(FpMatrix::zeros(f, 0, bsrc.cols()));
    }
    Ok(left_inverse(&bdst)?.mul(&img))
}

impl UnitCounitSequences {
    pub fn exact_at_gen(&self) -> bool {
        let a: Vec<FpMatrix> = self.first.iter().map(|m| m.zeta_map()).collect();
        let b: Vec<FpMatrix> = self.second.iter().map(|m| m.zeta_map()).collect();
        sequence_exact(&a) && sequence_exact(&b)
    }

    pub fn exact_at(&self, x: &AddObj) -> Result<bool> {
        let a = self.first.iter().map(|m| evaluate_map(m, x)).collect::<Result<Vec<_>>>()?;
        let b = self.second.iter().map(|m| evaluate_map(m, x)).collect::<Result<Vec<_>>>()?;
        Ok(sequence_exact(&a) && sequence_exact(&b))
    }

    pub fn ends_vanish_on_projectives(&self) -> Result<bool> {
        for f in [&self.f0, &self.f1, &self.f2, &self.f3] {
            if !f.vanishes_on_projectives()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(F0, F3)`: the largest subfunctor and the largest quotient of `F`
/// vanishing on projectives.
pub fn serre_adjoints(func: &FpFunctor) -> Result<(FpFunctor, FpFunctor)> {
    let s = unit_counit_sequences(func)?;
    Ok((s.f0, s.f3))
}

/// A projective resolution in `mod add(gen)`: representable terms
/// `(−, ⊕ X_b)` and the presenting maps between them.
#[derive(Clone, Debug)]
pub struct FpResolution {
    pub terms: Vec<Vec<usize>>,
    /// `maps[k]` goes from `terms[k+1]` to `terms[k]`.
    pub maps: Vec<GMat>,
    pub complete: bool,
}

impl FpResolution {
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0)
    }
}

/// Resolution by iterated minimal free covers of kernels at `gen`; stops when
/// a kernel is already representable or after `cap` steps.
pub fn fp_resolution(func: &FpFunctor, cap: usize) -> Result<FpResolution> {
    let sub = &func.sub;
    let gens = sub.summand_generators(func.zeta())?;
    let (bs0, cover0) = sub.free_cover(func.zeta(), &gens);
    let mut terms = vec![bs0.clone()];
    let mut maps = Vec::new();
    let mut prev_bs = bs0;
    let mut prev_cover = cover0;
    for _ in 0..=cap {
        let free = sub.free_module(&prev_bs);
        let kbasis = prev_cover.kernel_basis().transpose();
        if kbasis.cols() == 0 {
            return Ok(FpResolution { terms, maps, complete: true });
        }
        let (kmod, incl) = free.submodule(&kbasis)?;
        let gens = sub.summand_generators(&kmod)?;
        let (bs, cover) = sub.free_cover(&kmod, &gens);
        let cols: Vec<Vec<u32>> = gens.iter().map(|(v, _)| incl.mat.mul_vec(v)).collect();
        maps.push(sub.gmat_from_columns(&prev_bs, &bs, &cols));
        terms.push(bs.clone());
        prev_bs = bs;
        prev_cover = cover;
    }
    Ok(FpResolution { terms, maps, complete: false })
}

/// Matrix of `Hom(P_rows, N) -> Hom(P_cols, N)`, `(y_i) -> (Σ_i y_i D_ij)_j`,
/// on the ambient spaces `N^{rows}` and `N^{cols}`.
fn hom_into_matrix(n: &Module, d: &GMat) -> FpMatrix {
    let f = n.field();
    let nd = n.dim();
    let mut m = FpMatrix::zeros(f, nd * d.cols.len(), nd * d.rows.len());
    for i in 0..d.rows.len() {
        for j in 0..d.cols.len() {
            m.set_block(j * nd, i * nd, &n.act_elem(d.get(i, j)));
        }
    }
    m
}

/// `dim Ext^1(F, G)` from the first three terms of a projective resolution
/// of `F`.
pub fn fp_ext1(src: &FpFunctor, dst: &FpFunctor) -> Result<usize> {
    let sub = &src.sub;
    let res = fp_resolution(src, 2)?;
    let n = dst.zeta();
    let term = |k: usize| -> Vec<usize> { res.terms.get(k).cloned().unwrap_or_default() };
    let map = |k: usize| -> GMat {
        res.maps.get(k).cloned().unwrap_or_else(|| GMat::zeros(sub.gdim(), &term(k), &term(k + 1)))
    };
    let v1 = sub.evaluate_sum(n, &term(1));
    let v0 = sub.evaluate_sum(n, &term(0));
    let d0 = hom_into_matrix(n, &map(0)).mul(&v0);
    let d1 = hom_into_matrix(n, &map(1)).mul(&v1);
    let ker1 = v1.cols() - d1.rank();
    Ok(ker1 - d0.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Arrow, Quiver, RelationTerm, DEFAULT_PATH_CAP};
    use crate::exactla::FieldChar;

    fn dual_numbers(p: u64) -> Arc<Algebra> {
        let q = Quiver { vertices: 1, arrows: vec![Arrow { name: "x".into(), src: 0, dst: 0 }] };
        let rel = vec![RelationTerm { coeff: 1, path: vec!["x".into(), "x".into()] }];
        Arc::new(Algebra::from_quiver(&q, &[rel], FieldChar::new(p).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    fn layers(p: u64) -> Arc<Subcat> {
        Subcat::radical_layers(&dual_numbers(p)).unwrap()
    }

    /// Pieces for k[x]/(x²): summand 0 is k, summand 1 is Λ.
    fn surjection_functor(sub: &Arc<Subcat>) -> FpFunctor {
        let blk = sub.end.block(1, 0);
        let mut x = vec![0u32; sub.gdim()];
        x[blk.start] = 1;
        let mut d = GMat::zeros(sub.gdim(), &[0], &[1]);
        d.set(0, 0, x);
        FpFunctor::new(sub, d).unwrap()
    }

    #[test]
    fn representable_evaluates_to_ideal() {
        let sub = layers(101);
        let f = FpFunctor::representable(&sub, &[0, 1]);
        assert_eq!(f.zeta_dim(), sub.gdim());
        assert_eq!(f.to_module().0.dim(), 3);
        assert!(!f.vanishes_on_projectives().unwrap());
    }

    #[test]
    fn surjection_vanishes_on_projectives() {
        let sub = layers(101);
        let f = surjection_functor(&sub);
        assert!(f.vanishes_on_projectives().unwrap());
        assert_eq!(f.to_module().0.dim(), 0);
        assert!(f.zeta_dim() > 0);
    }

    #[test]
    fn hom_matches_gamma_hom() {
        let sub = layers(101);
        let f = surjection_functor(&sub);
        let r = FpFunctor::representable(&sub, &[1]);
        for (a, b) in [(&f, &f), (&r, &f), (&f, &r), (&r, &r)] {
            let via_kernel = fp_hom(a, b).unwrap();
            let via_gamma = hom_basis(a.zeta(), b.zeta()).unwrap();
            assert_eq!(via_kernel.len(), via_gamma.len());
            for h in via_kernel {
                h.validate().unwrap();
                h.zeta_morphism().validate().unwrap();
            }
        }
    }

    #[test]
    fn presented_and_restricted_round_trip() {
        let sub = layers(101);
        let lam = sub.base.clone();
        let s = modcat::simple_module(&lam, 0).unwrap();
        let (f, iso) = presented_by_projectives(&sub, &s).unwrap();
        iso.validate().unwrap();
        assert!(iso.is_iso());
        assert_eq!(f.d.rows.len(), 1);
        let rh = restricted_hom(&sub, &s).unwrap();
        assert_eq!(rh.functor.to_module().0.dim(), 1);
        // k lies in the subcategory, so its restricted Hom is representable.
        let rep = FpFunctor::representable(&sub, &[0]);
        assert!(functor_iso(&rh.functor, &rep).unwrap().is_some());
    }

    #[test]
    fn sequences_and_adjunctions() {
        let sub = layers(101);
        let f = surjection_functor(&sub);
        let seq = unit_counit_sequences(&f).unwrap();
        assert!(seq.exact_at_gen());
        assert!(seq.exact_at(sub.regular.as_ref().unwrap()).unwrap());
        assert!(seq.ends_vanish_on_projectives().unwrap());
        assert!(functor_iso(&seq.f0, &f).unwrap().is_some());
        let m = modcat::regular_module(&sub.base);
        assert!(adjunction_check_left(&m, &f).unwrap().is_iso());
        assert!(adjunction_check_right(&f, &m).unwrap().is_iso());
    }

    #[test]
    fn resolution_and_ext() {
        let sub = layers(101);
        let f = surjection_functor(&sub);
        let res = fp_resolution(&f, 6).unwrap();
        assert!(res.complete);
        assert_eq!(res.length(), 2);
        let m = modcat::simple_module(&sub.base, 0).unwrap();
        let rh = restricted_hom(&sub, &m).unwrap();
        assert_eq!(fp_ext1(&f, &rh.functor).unwrap(), 0);
        assert_eq!(fp_hom(&f, &rh.functor).unwrap().len(), 0);
        let r = FpFunctor::representable(&sub, &[0, 1]);
        assert_eq!(fp_ext1(&r, &f).unwrap(), 0);
        assert_eq!(fp_resolution(&r, 3).unwrap().length(), 0);
    }
}
