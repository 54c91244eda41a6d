//! Covariant finitely presented functors on `add(gen)` and the dualities.
//!
//! A covariant functor `G` on `add(gen)` is stored as the contravariant
//! functor `DX -> G(X)` on `add(D gen)` over the opposite algebra. The two
//! endomorphism algebras are identified by transposition, which turns the
//! pointwise dual of a contravariant functor into a covariant one.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::exactla::{FieldChar, FpMatrix};
use crate::fpfun::{self, from_gamma_module, lift_zeta_map, restricted_hom, FpFunctor, FunctorMorphism};
use crate::modcat::{self, dual_module_over, hom_basis, Module, ModuleMorphism};
use crate::subcat::{AddObj, Subcat};
use crate::{Error, Result};

/// The pair `add(gen)` over `Λ` and `add(D gen)` over `Λ^op`, with the
/// transposition anti-isomorphism between their endomorphism algebras.
#[derive(Debug)]
pub struct Duality {
    pub sub: Arc<Subcat>,
    pub dual: Arc<Subcat>,
    pub op: Arc<Algebra>,
    /// Columns: the Γ-coordinates of the transpose of each Γ'-basis element.
    to_gamma: FpMatrix,
    from_gamma: FpMatrix,
    /// `D(Λ_Λ)` inside `add(D gen)`.
    pub dual_regular: Option<AddObj>,
}

/// Dual of an object of `add(gen)`, with the transposed witness.
pub fn dualize_obj(x: &AddObj, op: &Arc<Algebra>) -> Result<AddObj> {
    Ok(AddObj {
        module: dual_module_over(&x.module, op)?,
        summands: x.summands.clone(),
        s: x.pi.transpose(),
        pi: x.s.transpose(),
    })
}

impl Duality {
    pub fn new(sub: &Arc<Subcat>) -> Result<Arc<Self>> {
        let op = Arc::new(sub.base.opposite());
        let duals = (0..sub.summand_count())
            .map(|s| dual_module_over(sub.summand(s), &op))
            .collect::<Result<Vec<_>>>()?;
        let dual = Subcat::new(&op, duals)?;
        let f = sub.base.field();
        if dual.gdim() != sub.gdim() {
            return Err(Error::Verification("dual endomorphism algebra has the wrong dimension".into()));
        }
        let mut cols = Vec::with_capacity(dual.gdim());
        for k in 0..dual.gdim() {
            let t = dual.end.basis_endo(k).transpose();
            cols.push(
                sub.end
                    .endo_coords(&t)
                    .ok_or_else(|| Error::Verification("transpose is not an endomorphism of gen".into()))?,
            );
        }
        let to_gamma = FpMatrix::from_col_vecs(f, sub.gdim(), &cols);
        let from_gamma = to_gamma.invert()?;
        let dual_regular = sub.regular.as_ref().map(|r| dualize_obj(r, &op)).transpose()?;
        Ok(Arc::new(Duality { sub: sub.clone(), dual, op, to_gamma, from_gamma, dual_regular }))
    }

    /// Transposition `Γ' -> Γ` on an element.
    pub fn to_gamma(&self, x: &[u32]) -> Vec<u32> {
        self.to_gamma.mul_vec(x)
    }
    pub fn from_gamma(&self, x: &[u32]) -> Vec<u32> {
        self.from_gamma.mul_vec(x)
    }

    /// `D N` for a right Γ-module, as a right Γ'-module.
    pub fn to_dual_module(&self, n: &Module) -> Result<Module> {
        let acts = (0..self.dual.gdim()).map(|k| n.act_elem(&self.to_gamma.col(k)).transpose()).collect();
        Module::from_parts(self.dual.gamma().clone(), n.dim(), acts)
    }

    /// `D N'` for a right Γ'-module, as a right Γ-module.
    pub fn from_dual_module(&self, n: &Module) -> Result<Module> {
        let acts = (0..self.sub.gdim()).map(|k| n.act_elem(&self.from_gamma.col(k)).transpose()).collect();
        Module::from_parts(self.sub.gamma().clone(), n.dim(), acts)
    }

    pub fn require_regular(&self) -> Result<&AddObj> {
        self.dual_regular.as_ref().ok_or_else(|| Error::Precondition("Λ is not in the subcategory".into()))
    }
}

/// A covariant functor on `add(gen)`.
#[derive(Clone, Debug)]
pub struct CoFpFunctor {
    pub duality: Arc<Duality>,
    /// The same functor viewed as contravariant on `add(D gen)`.
    pub reduced: FpFunctor,
}

/// A natural transformation of covariant functors; the reduced morphism
/// has the same direction.
pub type CoMorphism = FunctorMorphism;

impl CoFpFunctor {
    pub fn zero(d: &Arc<Duality>) -> Self {
        CoFpFunctor { duality: d.clone(), reduced: FpFunctor::zero(&d.dual) }
    }

    /// `G(X)` for `X` in `add(gen)`, as basis columns.
    pub fn evaluate(&self, x: &AddObj) -> Result<FpMatrix> {
        self.reduced.evaluate(&dualize_obj(x, &self.duality.op)?)
    }

    pub fn value_dim(&self, x: &AddObj) -> Result<usize> {
        Ok(self.evaluate(x)?.cols())
    }

    /// `G(Λ)` as a left Λ-module (a right module over the opposite
    /// algebra): `λ` acts by `G` of left multiplication.
    pub fn value_at_regular(&self) -> Result<Module> {
        let d = &self.duality;
        let reg = d.require_regular()?;
        let lam = &d.sub.base;
        let f = lam.field();
        let n = self.reduced.zeta();
        let mut acts = Vec::with_capacity(lam.dim());
        for b in 0..lam.dim() {
            let l = lam.left_mult_matrix(&lam.basis_vector(b));
            // G'(D l_b) with D l_b = l_b^T on the dual basis.
            acts.push(d.dual.evaluate_map(n, reg, reg, &l.transpose())?);
        }
        let dim = d.dual.evaluate(n, reg)?.cols();
        if dim == 0 {
            return Ok(Module::zero(d.op.clone()));
        }
        debug_assert!(acts.iter().all(|a| a.rows() == dim && a.field() == f));
        Module::new(d.op.clone(), dim, acts)
    }

    /// Vanishing on projective right modules: `G(Λ) = 0`.
    pub fn vanishes_on_projectives(&self) -> Result<bool> {
        let reg = self.duality.require_regular()?;
        Ok(self.evaluate(&undualize(reg, &self.duality)?)?.cols() == 0)
    }

    /// Vanishing on injective right modules: `G(DΛ) = 0`, which is the
    /// cokernel of the reduced presentation.
    pub fn vanishes_on_injectives(&self) -> bool {
        self.reduced.to_module().0.dim() == 0
    }
}

fn undualize(x: &AddObj, d: &Duality) -> Result<AddObj> {
    Ok(AddObj {
        module: dual_module_over(&x.module, &d.sub.base)?,
        summands: x.summands.clone(),
        s: x.pi.transpose(),
        pi: x.s.transpose(),
    })
}

/// `v(η): v(G1) -> v(G2)` as a map of left modules.
pub fn value_map(m: &CoMorphism, d: &Duality) -> Result<FpMatrix> {
    fpfun::evaluate_map(m, d.require_regular()?)
}

/// A functor together with the iso from its evaluation at the generator to
/// a transported dual.
#[derive(Clone, Debug)]
pub struct Dualized<T> {
    pub functor: T,
    /// `ζ(result) -> D ζ(input)`, transported.
    pub iso: FpMatrix,
}

/// Pointwise dual `mod add(gen) -> add(gen)-mod`.
pub fn dual_functor(d: &Arc<Duality>, f: &FpFunctor) -> Result<Dualized<CoFpFunctor>> {
    let n = d.to_dual_module(f.zeta())?;
    let (g, iso) = from_gamma_module(&d.dual, &n)?;
    Ok(Dualized { functor: CoFpFunctor { duality: d.clone(), reduced: g }, iso })
}

/// Pointwise dual `add(gen)-mod -> mod add(gen)`.
pub fn dual_cofunctor(d: &Arc<Duality>, g: &CoFpFunctor) -> Result<Dualized<FpFunctor>> {
    let n = d.from_dual_module(g.reduced.zeta())?;
    let (f, iso) = from_gamma_module(&d.sub, &n)?;
    Ok(Dualized { functor: f, iso })
}

/// `D η: D F2 -> D F1` for `η: F1 -> F2`.
pub fn dual_morphism(
    eta: &FunctorMorphism,
    d1: &Dualized<CoFpFunctor>,
    d2: &Dualized<CoFpFunctor>,
) -> Result<CoMorphism> {
    let phi = d1.iso.invert()?.mul(&eta.zeta_map().transpose()).mul(&d2.iso);
    lift_zeta_map(&d2.functor.reduced, &d1.functor.reduced, &phi)
}

/// The explicit iso `D D F -> F`.
pub fn double_dual_iso(d: &Arc<Duality>, f: &FpFunctor) -> Result<(FpFunctor, FunctorMorphism)> {
    let once = dual_functor(d, f)?;
    let twice = dual_cofunctor(d, &once.functor)?;
    // twice.iso: ζ(DDF) -> D ζ'(DF); the dual of once.iso maps ζF -> D ζ'(DF).
    let back = once.iso.transpose().invert()?.mul(&twice.iso);
    let m = lift_zeta_map(&twice.functor, f, &back)?;
    if !m.is_iso() {
        return Err(Error::Verification("double dual is not isomorphic to the functor".into()));
    }
    Ok((twice.functor, m))
}

/// `(−⊗_Λ N)|_add(gen)` for a left module `N`, realized as the dual of the
/// restricted Hom functor into `D N`.
pub fn tensor_functor(d: &Arc<Duality>, n: &Module) -> Result<CoFpFunctor> {
    d.sub.require_projectives()?;
    let dn = dual_module_over(n, &d.sub.base)?;
    let rh = restricted_hom(&d.sub, &dn)?;
    Ok(dual_functor(d, &rh.functor)?.functor)
}

/// `X ⊗_Λ N` with the relations `xλ ⊗ n = x ⊗ λn`: returns the quotient
/// projection from `X ⊗_k N` (index `i * dim N + j`) and its section.
pub fn tensor_space(x: &Module, n: &Module) -> (FpMatrix, FpMatrix) {
    let f = x.field();
    let (dx, dn) = (x.dim(), n.dim());
    let lam = x.algebra();
    let mut rels = Vec::new();
    for b in 0..lam.dim() {
        let ax = x.act(b);
        let an = n.act(b);
        for i in 0..dx {
            for j in 0..dn {
                let mut v = vec![0u32; dx * dn];
                for i2 in 0..dx {
                    let c = ax.get(i2, i);
                    if c != 0 {
                        v[i2 * dn + j] = f.add(v[i2 * dn + j], c);
                    }
                }
                for j2 in 0..dn {
                    let c = an.get(j2, j);
                    if c != 0 {
                        v[i * dn + j2] = f.sub(v[i * dn + j2], c);
                    }
                }
                rels.push(v);
            }
        }
    }
    let span = FpMatrix::from_col_vecs(f, dx * dn, &rels);
    (span.cokernel_projection(), fpfun::quotient_section(&span))
}

/// `(−⊗_Λ N)|_add(gen)` computed directly from `gen ⊗_Λ N` with the left
/// action of `End(gen)`.
pub fn tensor_functor_direct(d: &Arc<Duality>, n: &Module) -> Result<CoFpFunctor> {
    let sub = &d.sub;
    let gen = sub.gen();
    let (q, s) = tensor_space(gen, n);
    let f = gen.field();
    let dn = n.dim();
    let id_n = FpMatrix::identity(f, dn);
    let mut acts = Vec::with_capacity(d.dual.gdim());
    for k in 0..d.dual.gdim() {
        let e = sub.end.element_endo(&d.to_gamma.col(k));
        acts.push(q.mul(&kron(&e, &id_n)).mul(&s));
    }
    let zeta = Module::from_parts(d.dual.gamma().clone(), q.rows(), acts)?;
    let (g, _) = from_gamma_module(&d.dual, &zeta)?;
    Ok(CoFpFunctor { duality: d.clone(), reduced: g })
}

fn kron(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    let f = a.field();
    let mut out = FpMatrix::zeros(f, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let c = a.get(i, j);
            if c != 0 {
                out.set_block(i * b.rows(), j * b.cols(), &b.scale(c));
            }
        }
    }
    out
}

/// `Ker((−⊗D P0)| -> (−⊗D P1)|)` for an injective copresentation of `N`,
/// which is the dual of the functor presented by projectives of `D N`.
pub fn tensor_kernel(d: &Arc<Duality>, n: &Module) -> Result<CoFpFunctor> {
    let dn = dual_module_over(n, &d.sub.base)?;
    let (f, _) = fpfun::presented_by_projectives(&d.sub, &dn)?;
    Ok(dual_functor(d, &f)?.functor)
}

/// The left module `D(coker)` of the dual functor: the kernel of
/// `D X0 -> D X1` for a copresentation of `G`. Independent of the
/// evaluation route in [`CoFpFunctor::value_at_regular`].
pub fn value_by_copresentation(d: &Arc<Duality>, g: &CoFpFunctor) -> Result<Module> {
    let df = dual_cofunctor(d, g)?;
    let (m, _) = df.functor.to_module();
    dual_module_over(&m, &d.op)
}

/// `D̃(M)`: the value at `Λ` of the dual of the restricted Hom functor.
pub fn relative_duality(d: &Arc<Duality>, m: &Module) -> Result<Module> {
    d.sub.require_projectives()?;
    let rh = restricted_hom(&d.sub, m)?;
    dual_functor(d, &rh.functor)?.functor.value_at_regular()
}

/// The auto-equivalence of `mod Λ` for self-injective `Λ`: restricted Hom,
/// then the dual, then the cokernel of the reduced presentation, dualized
/// back to a right module.
pub fn relative_auto_equivalence(d: &Arc<Duality>, m: &Module) -> Result<Module> {
    require_self_injective(&d.sub.base)?;
    let rh = restricted_hom(&d.sub, m)?;
    let g = dual_functor(d, &rh.functor)?.functor;
    let (v, _) = g.reduced.to_module();
    dual_module_over(&v, &d.sub.base)
}

/// The inverse composite: the covariant Hom functor out of `M`, its dual,
/// and the cokernel of the presentation.
pub fn relative_auto_equivalence_inverse(d: &Arc<Duality>, m: &Module) -> Result<Module> {
    require_self_injective(&d.sub.base)?;
    let dm = dual_module_over(m, &d.op)?;
    let rh = restricted_hom(&d.dual, &dm)?;
    let g = CoFpFunctor { duality: d.clone(), reduced: rh.functor };
    let f = dual_cofunctor(d, &g)?.functor;
    Ok(f.to_module().0)
}

fn require_self_injective(lam: &Arc<Algebra>) -> Result<()> {
    if !modcat::is_self_injective(lam)? {
        return Err(Error::Precondition("the algebra is not self-injective".into()));
    }
    Ok(())
}

pub use crate::fpfun::AdjunctionCheck;

fn rank_of_images(images: Vec<Vec<u32>>, target_dim: usize, f: FieldChar) -> usize {
    if images.is_empty() {
        0
    } else {
        FpMatrix::from_col_vecs(f, target_dim, &images).rank()
    }
}

/// `Hom(t N, G) -> Hom(N, v G)`, `η -> v(η) ∘ ι` with `ι: N ≅ v t N`.
pub fn adjunction_check_tensor(d: &Arc<Duality>, n: &Module, g: &CoFpFunctor) -> Result<AdjunctionCheck> {
    let t = tensor_functor(d, n)?;
    let vt = t.value_at_regular()?;
    let iota = modcat::module_iso_search(n, &vt)?
        .ok_or_else(|| Error::Verification("value of the tensor functor is not the module".into()))?;
    let vg = g.value_at_regular()?;
    let lhs = fpfun::fp_hom(&t.reduced, &g.reduced)?;
    let rhs = hom_basis(n, &vg)?;
    let coords = modcat::HomCoords::new(&rhs)?;
    let mut imgs = Vec::new();
    for eta in &lhs {
        let m = value_map(eta, d)?.mul(&iota.mat);
        imgs.push(coords.coords(&m).ok_or_else(|| Error::Verification("image is not a module map".into()))?);
    }
    let image_rank = rank_of_images(imgs, rhs.len(), d.sub.base.field());
    Ok(AdjunctionCheck { lhs_dim: lhs.len(), rhs_dim: rhs.len(), image_rank })
}

/// `Hom(G, κ N) -> Hom(v G, N)`, `η -> ι^{-1} ∘ v(η)` with `ι: N ≅ v κ N`.
pub fn adjunction_check_kernel(d: &Arc<Duality>, g: &CoFpFunctor, n: &Module) -> Result<AdjunctionCheck> {
    let k = tensor_kernel(d, n)?;
    let vk = k.value_at_regular()?;
    let iota = modcat::module_iso_search(n, &vk)?
        .ok_or_else(|| Error::Verification("value of the kernel functor is not the module".into()))?;
    let inv = iota.mat.invert()?;
    let vg = g.value_at_regular()?;
    let lhs = fpfun::fp_hom(&g.reduced, &k.reduced)?;
    let rhs = hom_basis(&vg, n)?;
    let coords = modcat::HomCoords::new(&rhs)?;
    let mut imgs = Vec::new();
    for eta in &lhs {
        let m = inv.mul(&value_map(eta, d)?);
        imgs.push(coords.coords(&m).ok_or_else(|| Error::Verification("image is not a module map".into()))?);
    }
    let image_rank = rank_of_images(imgs, rhs.len(), d.sub.base.field());
    Ok(AdjunctionCheck { lhs_dim: lhs.len(), rhs_dim: rhs.len(), image_rank })
}

/// `(dim Hom(F(N), F(N')), dim Hom(N, N'))` for `F` = tensor or kernel functor.
pub fn fully_faithful_dims(
    d: &Arc<Duality>,
    n1: &Module,
    n2: &Module,
    kernel_side: bool,
) -> Result<(usize, usize)> {
    let build = |n: &Module| if kernel_side { tensor_kernel(d, n) } else { tensor_functor(d, n) };
    let (a, b) = (build(n1)?, build(n2)?);
    Ok((fpfun::fp_hom(&a.reduced, &b.reduced)?.len(), hom_basis(n1, n2)?.len()))
}

/// Exactness of `v` on `0 -> ker η -> G1 -> G2 -> coker η -> 0`.
pub fn value_exact_on(d: &Arc<Duality>, eta: &CoMorphism) -> Result<bool> {
    let (_, i) = fpfun::kernel(eta)?;
    let (_, p) = fpfun::cokernel(eta)?;
    let maps = [value_map(&i, d)?, value_map(eta, d)?, value_map(&p, d)?];
    Ok(fpfun::sequence_exact(&maps))
}

/// Split mono `D(−, X) -> t(D X)` witnessing that the dual of a
/// representable is a summand of a tensor functor (computed directly).
pub fn injective_witness(d: &Arc<Duality>, x: &[usize]) -> Result<Option<CoMorphism>> {
    let rep = FpFunctor::representable(&d.sub, x);
    let dual = dual_functor(d, &rep)?.functor;
    let dx = dual_module_over(&d.sub.sum_module(x), &d.op)?;
    let t = tensor_functor_direct(d, &dx)?;
    let basis = fpfun::fp_hom(&dual.reduced, &t.reduced)?;
    for m in basis.iter() {
        if m.zeta_morphism().is_injective() {
            return Ok(Some(m.clone()));
        }
    }
    // A generic combination is injective when any injective map exists.
    let zs: Vec<ModuleMorphism> = basis.iter().map(|h| h.zeta_morphism()).collect();
    if let Some(iso) = modcat::find_invertible(dual.reduced.zeta(), t.reduced.zeta(), &zs) {
        return Ok(Some(lift_zeta_map(&dual.reduced, &t.reduced, &iso.mat)?));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, Quiver, RelationTerm, DEFAULT_PATH_CAP};

    fn truncated(n: usize) -> Arc<Algebra> {
        let q = Quiver { vertices: 1, arrows: vec![Arrow { name: "x".into(), src: 0, dst: 0 }] };
        let rel = vec![RelationTerm { coeff: 1, path: vec!["x".into(); n] }];
        Arc::new(Algebra::from_quiver(&q, &[rel], FieldChar::new(101).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    fn a2() -> Arc<Algebra> {
        let q = Quiver { vertices: 2, arrows: vec![Arrow { name: "a".into(), src: 0, dst: 1 }] };
        Arc::new(Algebra::from_quiver(&q, &[], FieldChar::new(101).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    #[test]
    fn double_dual_round_trip() {
        let sub = Subcat::radical_layers(&truncated(2)).unwrap();
        let d = Duality::new(&sub).unwrap();
        let f = FpFunctor::representable(&sub, &[0, 1]);
        let (_, iso) = double_dual_iso(&d, &f).unwrap();
        iso.validate().unwrap();
        let g = dual_functor(&d, &f).unwrap().functor;
        for s in 0..sub.summand_count() {
            let x = sub.add_witness(sub.summand(s)).unwrap().unwrap();
            assert_eq!(g.value_dim(&x).unwrap(), f.evaluate(&x).unwrap().cols());
        }
    }

    #[test]
    fn tensor_routes_agree() {
        for lam in [truncated(2), a2()] {
            let sub = Subcat::radical_layers(&lam).unwrap();
            let d = Duality::new(&sub).unwrap();
            let left_reg = modcat::regular_module(&d.op);
            let t = tensor_functor(&d, &left_reg).unwrap();
            let direct = tensor_functor_direct(&d, &left_reg).unwrap();
            assert!(fpfun::functor_iso(&t.reduced, &direct.reduced).unwrap().is_some());
            for s in 0..sub.summand_count() {
                let x = sub.add_witness(sub.summand(s)).unwrap().unwrap();
                assert_eq!(t.value_dim(&x).unwrap(), sub.summand(s).dim());
            }
        }
    }

    #[test]
    fn value_routes_and_adjunctions() {
        let sub = Subcat::radical_layers(&truncated(2)).unwrap();
        let d = Duality::new(&sub).unwrap();
        let s = modcat::simple_module(&d.op, 0).unwrap();
        let t = tensor_functor(&d, &s).unwrap();
        let k = tensor_kernel(&d, &s).unwrap();
        for g in [&t, &k] {
            let v1 = g.value_at_regular().unwrap();
            let v2 = value_by_copresentation(&d, g).unwrap();
            assert!(modcat::module_iso_search(&v1, &v2).unwrap().is_some());
            assert!(modcat::module_iso_search(&v1, &s).unwrap().is_some());
        }
        assert!(adjunction_check_tensor(&d, &s, &k).unwrap().is_iso());
        assert!(adjunction_check_kernel(&d, &t, &s).unwrap().is_iso());
        let (a, b) = fully_faithful_dims(&d, &s, &modcat::regular_module(&d.op), true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn relative_duality_on_projectives() {
        for lam in [truncated(2), a2()] {
            let sub = Subcat::radical_layers(&lam).unwrap();
            let d = Duality::new(&sub).unwrap();
            let p = modcat::indecomposable_projective(&lam, 0).unwrap();
            let dt = relative_duality(&d, &p).unwrap();
            let dp = dual_module_over(&p, &d.op).unwrap();
            assert!(modcat::module_iso_search(&dt, &dp).unwrap().is_some());
            assert!(injective_witness(&d, &[0]).unwrap().is_some());
        }
    }

    #[test]
    fn auto_equivalence_for_projectives() {
        let lam = truncated(3);
        let sub = Subcat::projectives(&lam).unwrap();
        let d = Duality::new(&sub).unwrap();
        let m = modcat::simple_module(&lam, 0).unwrap();
        let e = relative_auto_equivalence(&d, &m).unwrap();
        assert!(modcat::module_iso_search(&e, &m).unwrap().is_some());
        let back = relative_auto_equivalence_inverse(&d, &e).unwrap();
        assert!(modcat::module_iso_search(&back, &m).unwrap().is_some());
        let sub2 = Subcat::projectives(&a2()).unwrap();
        let d2 = Duality::new(&sub2).unwrap();
        assert!(relative_auto_equivalence(&d2, &modcat::regular_module(&a2())).is_err());
    }
}
