//! Bounded cochain complexes, Hom in the homotopy category, cones, and the
//! termwise functors between complexes of modules and of functors.
//!
//! Complexes of functors are handled through their evaluation at `gen`,
//! which is an equivalence onto complexes of Γ-modules.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::exactla::{FieldChar, FpMatrix, RowSpace};
use crate::fpfun::{self, from_gamma_module, lift_zeta_map, AdjunctionCheck, FpFunctor, FunctorMorphism};
use crate::modcat::{self, hom_basis, left_inverse, HomCoords, Module, ModuleMorphism};
use crate::subcat::{AddObj, Subcat};
use crate::{Error, Result};

/// A bounded cochain complex of right modules; `diffs[k]` goes from
/// `terms[k]` (degree `lo + k`) to `terms[k + 1]`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub alg: Arc<Algebra>,
    pub lo: i32,
    pub terms: Vec<Module>,
    pub diffs: Vec<FpMatrix>,
}

impl Complex {
    pub fn new(alg: &Arc<Algebra>, lo: i32, terms: Vec<Module>, diffs: Vec<FpMatrix>) -> Result<Self> {
        let c = Complex { alg: alg.clone(), lo, terms, diffs };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Complex { alg: alg.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn stalk(m: &Module, degree: i32) -> Self {
        Complex { alg: m.algebra().clone(), lo: degree, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.diffs.len() + 1 != self.terms.len() && !(self.terms.is_empty() && self.diffs.is_empty()) {
            return Err(Error::Dimension("complex: need one differential between consecutive terms".into()));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            ModuleMorphism::new(self.terms[k].clone(), self.terms[k + 1].clone(), d.clone())
                .map_err(|e| Error::Input(format!("differential in degree {}: {e}", self.lo + k as i32)))?;
        }
        for (k, w) in self.diffs.windows(2).enumerate() {
            if !w[1].mul(&w[0]).is_zero() {
                return Err(Error::Verification(format!(
                    "differentials do not compose to zero in degree {}",
                    self.lo + k as i32
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldChar {
        self.alg.field()
    }

    /// Highest degree of the window (`lo - 1` when empty).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn term(&self, i: i32) -> Module {
        self.index(i).map(|k| self.terms[k].clone()).unwrap_or_else(|| Module::zero(self.alg.clone()))
    }

    pub fn term_dim(&self, i: i32) -> usize {
        self.index(i).map(|k| self.terms[k].dim()).unwrap_or(0)
    }

    fn index(&self, i: i32) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    /// `∂^i: C^i -> C^{i+1}`, zero outside the window.
    pub fn diff(&self, i: i32) -> FpMatrix {
        match (self.index(i), self.index(i + 1)) {
            (Some(k), Some(_)) => self.diffs[k].clone(),
            _ => FpMatrix::zeros(self.field(), self.term_dim(i + 1), self.term_dim(i)),
        }
    }

    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi())
            .map(|i| {
                let out = self.diff(i);
                let inc = self.diff(i - 1);
                (i, self.term_dim(i) - out.rank() - inc.rank())
            })
            .collect()
    }

    /// Homology modules `ker ∂^i / im ∂^{i-1}` in each degree.
    pub fn homology(&self) -> Vec<(i32, Module)> {
        (self.lo..=self.hi())
            .map(|i| {
                let m = ModuleMorphism { src: self.term(i), dst: self.term(i + 1), mat: self.diff(i) };
                let (k, incl) = m.kernel();
                let into = left_inverse(&incl.mat).expect("kernel basis is independent").mul(&self.diff(i - 1));
                let (h, _) = k.quotient(&into);
                (i, h)
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().iter().all(|&(_, d)| d == 0)
    }

    /// `C[k]`: degree `i` holds `C^{i+k}` and the differential is scaled by `(-1)^k`.
    pub fn shift(&self, k: i32) -> Complex {
        let sign = if k.rem_euclid(2) == 1 { self.field().neg(1) } else { 1 };
        Complex {
            alg: self.alg.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(sign)).collect(),
        }
    }

    /// Whether every term is projective.
    pub fn is_projective(&self) -> Result<bool> {
        for t in &self.terms {
            if !modcat::is_projective(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn with_window(&self, lo: i32, hi: i32) -> (i32, i32) {
        if self.terms.is_empty() {
            (lo, hi)
        } else {
            (lo.min(self.lo), hi.max(self.hi()))
        }
    }
}

/// A chain map, with components on the degrees `lo..lo + comps.len()`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub lo: i32,
    pub comps: Vec<FpMatrix>,
}

impl ChainMap {
    pub fn comp(&self, src: &Complex, dst: &Complex, i: i32) -> FpMatrix {
        if i >= self.lo && ((i - self.lo) as usize) < self.comps.len() {
            self.comps[(i - self.lo) as usize].clone()
        } else {
            FpMatrix::zeros(src.field(), dst.term_dim(i), src.term_dim(i))
        }
    }

    pub fn is_chain_map(&self, src: &Complex, dst: &Complex) -> bool {
        let (lo, hi) = window(src, dst);
        (lo - 1..=hi).all(|i| dst.diff(i).mul(&self.comp(src, dst, i)) == self.comp(src, dst, i + 1).mul(&src.diff(i)))
    }

    pub fn identity(c: &Complex) -> Self {
        ChainMap { lo: c.lo, comps: c.terms.iter().map(|t| FpMatrix::identity(c.field(), t.dim())).collect() }
    }

    /// Whether every component is an isomorphism.
    pub fn is_iso(&self, src: &Complex, dst: &Complex) -> bool {
        let (lo, hi) = window(src, dst);
        (lo..=hi).all(|i| {
            let m = self.comp(src, dst, i);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }
}

fn window(a: &Complex, b: &Complex) -> (i32, i32) {
    let (lo, hi) = if a.terms.is_empty() { (b.lo, b.hi()) } else { (a.lo, a.hi()) };
    b.with_window(lo, hi)
}

/// Chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct KHom {
    pub lo: i32,
    pub hi: i32,
    /// Dimension of the chain-map space.
    pub cycles: usize,
    /// Rank of the null-homotopic subspace.
    pub boundaries: usize,
    /// Representatives of a basis of the quotient.
    pub basis: Vec<ChainMap>,
    hom: Vec<Vec<ModuleMorphism>>,
    offsets: Vec<usize>,
    null: RowSpace,
}

impl KHom {
    pub fn dim(&self) -> usize {
        self.cycles - self.boundaries
    }

    /// Coordinates of a chain map in the concatenated Hom bases.
    pub fn coords(&self, f: &ChainMap, src: &Complex, dst: &Complex) -> Result<Vec<u32>> {
        let mut out = vec![0u32; *self.offsets.last().unwrap_or(&0)];
        for (k, i) in (self.lo..=self.hi).enumerate() {
            let basis = &self.hom[k];
            let m = f.comp(src, dst, i);
            if basis.is_empty() {
                if !m.is_zero() {
                    return Err(Error::Verification(format!("component in degree {i} is not a module map")));
                }
                continue;
            }
            let c = HomCoords::new(basis)?
                .coords(&m)
                .ok_or_else(|| Error::Verification(format!("component in degree {i} is not a module map")))?;
            out[self.offsets[k]..self.offsets[k] + c.len()].copy_from_slice(&c);
        }
        Ok(out)
    }

    /// Rank of a family of chain maps modulo null-homotopic maps.
    pub fn class_rank(&self, coords: &[Vec<u32>]) -> usize {
        let mut space = self.null.clone();
        coords.iter().filter(|v| space.insert(v)).count()
    }

    pub fn is_null_homotopic(&self, coords: &[u32]) -> bool {
        self.null.contains(coords)
    }
}

/// `K^b(C, D)`: chain maps by a linear solve, modulo the image of homotopies.
pub fn khom(src: &Complex, dst: &Complex) -> Result<KHom> {
    let f = src.field();
    let (lo, hi) = window(src, dst);
    let mut hom = Vec::new();
    let mut offsets = vec![0usize];
    for i in lo..=hi {
        let h = if src.term_dim(i) == 0 || dst.term_dim(i) == 0 {
            Vec::new()
        } else {
            hom_basis(&src.term(i), &dst.term(i))?
        };
        offsets.push(offsets.last().unwrap() + h.len());
        hom.push(h);
    }
    let n = *offsets.last().unwrap();
    let flat = |m: &FpMatrix| m.data().to_vec();
    // Conditions ∂_D f^i - f^{i+1} ∂_C = 0 in Hom(C^i, D^{i+1}) for i in lo-1..=hi.
    let mut blocks = Vec::new();
    for i in lo - 1..=hi {
        let rows = dst.term_dim(i + 1) * src.term_dim(i);
        let mut block = FpMatrix::zeros(f, rows, n);
        if rows > 0 {
            for (k, j) in (lo..=hi).enumerate() {
                for (t, h) in hom[k].iter().enumerate() {
                    let col = offsets[k] + t;
                    let v = if j == i {
                        flat(&dst.diff(i).mul(&h.mat))
                    } else if j == i + 1 {
                        flat(&h.mat.mul(&src.diff(i)).scale(f.neg(1)))
                    } else {
                        continue;
                    };
                    for (r, x) in v.into_iter().enumerate() {
                        block.set(r, col, x);
                    }
                }
            }
        }
        blocks.push(block);
    }
    let system = FpMatrix::vstack(f, n, &blocks.iter().collect::<Vec<_>>());
    let z = system.kernel_basis();
    // Null-homotopic maps from h^i: C^i -> D^{i-1}.
    let coords: Vec<Option<HomCoords>> =
        hom.iter().map(|h| if h.is_empty() { None } else { HomCoords::new(h).ok() }).collect();
    let mut null = RowSpace::new(f, n);
    for i in lo..=hi + 1 {
        if src.term_dim(i) == 0 || dst.term_dim(i - 1) == 0 {
            continue;
        }
        for g in hom_basis(&src.term(i), &dst.term(i - 1))? {
            let mut v = vec![0u32; n];
            for (j, m) in [(i, dst.diff(i - 1).mul(&g.mat)), (i - 1, g.mat.mul(&src.diff(i - 1)))] {
                if j < lo || j > hi || m.is_zero() {
                    continue;
                }
                let k = (j - lo) as usize;
                let c = coords[k]
                    .as_ref()
                    .and_then(|hc| hc.coords(&m))
                    .ok_or_else(|| Error::Verification("homotopy component is not a module map".into()))?;
                for (t, x) in c.into_iter().enumerate() {
                    v[offsets[k] + t] = f.add(v[offsets[k] + t], x);
                }
            }
            null.insert(&v);
        }
    }
    let boundaries = null.rank();
    let mut quotient = null.clone();
    let mut basis = Vec::new();
    for v in z.row_vecs() {
        if quotient.insert(&v) {
            let comps = (lo..=hi)
                .enumerate()
                .map(|(k, i)| {
                    let mut m = FpMatrix::zeros(f, dst.term_dim(i), src.term_dim(i));
                    for (t, h) in hom[k].iter().enumerate() {
                        m.add_scaled(v[offsets[k] + t], &h.mat);
                    }
                    m
                })
                .collect();
            basis.push(ChainMap { lo, comps });
        }
    }
    Ok(KHom { lo, hi, cycles: z.rows(), boundaries, basis, hom, offsets, null })
}

/// Mapping cone of `f: C -> D`, with `D -> cone` and `cone -> C[1]`.
pub fn cone(src: &Complex, dst: &Complex, f: &ChainMap) -> Result<(Complex, ChainMap, ChainMap)> {
    let fc = src.field();
    let (lo0, hi0) = window(src, dst);
    let (lo, hi) = (lo0 - 1, hi0);
    let mut terms = Vec::new();
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for i in lo..=hi {
        let (m, inj, pr) = modcat::direct_sum(&src.alg, &[src.term(i + 1), dst.term(i)]);
        terms.push(m);
        incl.push(inj[1].mat.clone());
        proj.push(pr[0].mat.clone());
    }
    let mut diffs = Vec::new();
    for i in lo..hi {
        let (c1, d0) = (src.term_dim(i + 1), dst.term_dim(i));
        let (c2, d1) = (src.term_dim(i + 2), dst.term_dim(i + 1));
        let mut m = FpMatrix::zeros(fc, c2 + d1, c1 + d0);
        m.set_block(0, 0, &src.diff(i + 1).scale(fc.neg(1)));
        m.set_block(c2, 0, &f.comp(src, dst, i + 1));
        m.set_block(c2, c1, &dst.diff(i));
        diffs.push(m);
    }
    let c = Complex::new(&src.alg, lo, terms, diffs)?;
    let into = ChainMap { lo, comps: incl };
    let out = ChainMap { lo, comps: proj };
    Ok((c, into, out))
}

/// A bounded complex of finitely presented functors.
#[derive(Clone, Debug)]
pub struct FunComplex {
    pub sub: Arc<Subcat>,
    pub lo: i32,
    pub terms: Vec<FpFunctor>,
    pub diffs: Vec<FunctorMorphism>,
}

impl FunComplex {
    pub fn zero(sub: &Arc<Subcat>) -> Self {
        FunComplex { sub: sub.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn stalk(f: &FpFunctor, degree: i32) -> Self {
        FunComplex { sub: f.sub.clone(), lo: degree, terms: vec![f.clone()], diffs: Vec::new() }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Evaluation at `gen`: a complex of Γ-modules.
    pub fn zeta_complex(&self) -> Result<Complex> {
        Complex::new(
            self.sub.gamma(),
            self.lo,
            self.terms.iter().map(|t| t.zeta().clone()).collect(),
            self.diffs.iter().map(|d| d.zeta_map()).collect(),
        )
    }

    /// The complex of functors presented from a complex of Γ-modules.
    pub fn from_zeta(sub: &Arc<Subcat>, c: &Complex) -> Result<Self> {
        let mut terms = Vec::new();
        let mut isos = Vec::new();
        for t in &c.terms {
            let (f, iso) = from_gamma_module(sub, t)?;
            terms.push(f);
            isos.push(iso);
        }
        let mut diffs = Vec::new();
        for (k, d) in c.diffs.iter().enumerate() {
            let phi = isos[k + 1].invert()?.mul(d).mul(&isos[k]);
            diffs.push(lift_zeta_map(&terms[k], &terms[k + 1], &phi)?);
        }
        Ok(FunComplex { sub: sub.clone(), lo: c.lo, terms, diffs })
    }

    /// The complex of vector spaces `F(X)` for `X` in `add(gen)`, as term
    /// dimensions and differential matrices.
    pub fn evaluate_at(&self, x: &AddObj) -> Result<(Vec<usize>, Vec<FpMatrix>)> {
        let dims = self.terms.iter().map(|t| Ok(t.evaluate(x)?.cols())).collect::<Result<Vec<_>>>()?;
        let maps = self.diffs.iter().map(|d| fpfun::evaluate_map(d, x)).collect::<Result<Vec<_>>>()?;
        Ok((dims, maps))
    }
}

fn acyclic_spaces(dims: &[usize], maps: &[FpMatrix]) -> bool {
    (0..dims.len()).all(|k| {
        let out = if k < maps.len() { maps[k].rank() } else { 0 };
        let inc = if k > 0 { maps[k - 1].rank() } else { 0 };
        dims[k] == out + inc
    })
}

/// Applies `va` termwise.
pub fn termwise_to_module(c: &FunComplex) -> Result<Complex> {
    let terms: Vec<Module> = c.terms.iter().map(|t| t.to_module().0).collect();
    let diffs = c.diffs.iter().map(|d| d.to_module_map().mat).collect();
    Complex::new(&c.sub.base, c.lo, terms, diffs)
}

/// `(−, P)` for a complex of projectives, with the isos `va(−, P^i) -> P^i`.
pub fn termwise_representable(sub: &Arc<Subcat>, p: &Complex) -> Result<(FunComplex, Vec<FpMatrix>)> {
    sub.require_projectives()?;
    let mut terms = Vec::new();
    let mut wits = Vec::new();
    let mut units = Vec::new();
    for (k, t) in p.terms.iter().enumerate() {
        let (cover, classes) = modcat::projective_cover_classes(t)?;
        if !cover.is_iso() {
            return Err(Error::Precondition(format!("term in degree {} is not projective", p.lo + k as i32)));
        }
        let (bs, s, pi) = sub.projective_witness(&classes)?;
        // Witness of the term itself through the cover iso.
        let inv = cover.mat.invert()?;
        let x0 = AddObj { module: t.clone(), summands: bs, s: s.mul(&inv), pi: cover.mat.mul(&pi) };
        let x1 = AddObj {
            module: Module::zero(sub.base.clone()),
            summands: Vec::new(),
            s: FpMatrix::zeros(sub.base.field(), 0, 0),
            pi: FpMatrix::zeros(sub.base.field(), 0, 0),
        };
        let f = fpfun::from_module_map(sub, &x1, &x0, &FpMatrix::zeros(sub.base.field(), t.dim(), 0))?;
        let sec = fpfun::quotient_section(&f.module_presentation().mat);
        units.push(x0.pi.mul(&sec));
        terms.push(f);
        wits.push(x0);
    }
    let mut diffs = Vec::new();
    for (k, d) in p.diffs.iter().enumerate() {
        let (a, b) = (&wits[k], &wits[k + 1]);
        let h = b.s.mul(d).mul(&a.pi);
        let h0 = sub.gmat_of(&b.summands, &a.summands, &h)?;
        diffs.push(fpfun::complete_lift(&terms[k], &terms[k + 1], h0)?);
    }
    Ok((FunComplex { sub: sub.clone(), lo: p.lo, terms, diffs }, units))
}

/// Checks that `va(−, P) = P` with the canonical isos: every unit is
/// invertible and the differentials agree exactly after transport.
pub fn unit_identity(sub: &Arc<Subcat>, p: &Complex) -> Result<bool> {
    let (rep, units) = termwise_representable(sub, p)?;
    let back = termwise_to_module(&rep)?;
    for u in &units {
        if u.rows() != u.cols() || u.rank() != u.rows() {
            return Ok(false);
        }
    }
    for k in 0..p.diffs.len() {
        if units[k + 1].mul(&back.diffs[k]) != p.diffs[k].mul(&units[k]) {
            return Ok(false);
        }
    }
    Ok(back.terms.len() == p.terms.len())
}

/// Lift of a complex of modules to a complex of functors presented by
/// projectives, with the isos `va(lift^i) -> M^i`.
pub fn lift_by_projectives(sub: &Arc<Subcat>, m: &Complex) -> Result<(FunComplex, Vec<FpMatrix>)> {
    let pres = m.terms.iter().map(|t| fpfun::present_by_projectives(sub, t)).collect::<Result<Vec<_>>>()?;
    let mut diffs = Vec::new();
    for (k, d) in m.diffs.iter().enumerate() {
        diffs.push(fpfun::lift_module_map(&pres[k], &pres[k + 1], d)?);
    }
    let isos = pres.iter().map(|p| p.iso.mat.clone()).collect();
    let terms = pres.into_iter().map(|p| p.functor).collect();
    Ok((FunComplex { sub: sub.clone(), lo: m.lo, terms, diffs }, isos))
}

/// Whether `va` of the lift is isomorphic to the original complex through
/// the termwise isos.
pub fn essentially_surjective_on(sub: &Arc<Subcat>, m: &Complex) -> Result<bool> {
    let (lift, isos) = lift_by_projectives(sub, m)?;
    if lift.zeta_complex().is_err() {
        return Ok(false);
    }
    let back = termwise_to_module(&lift)?;
    for k in 0..m.diffs.len() {
        if isos[k + 1].mul(&back.diffs[k]) != m.diffs[k].mul(&isos[k]) {
            return Ok(false);
        }
    }
    Ok(isos.iter().all(|u| u.rows() == u.cols() && u.rank() == u.rows()))
}

/// The exact sequence of complexes `0 -> F0 -> F -> (−, va F) -> F1 -> 0`,
/// all evaluated at `gen`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub f: Complex,
    pub f0: Complex,
    pub middle: Complex,
    pub f1: Complex,
    pub unit: ChainMap,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

impl Decomposition {
    pub fn degreewise_exact(&self) -> bool {
        let (lo, hi) = window(&self.f, &self.middle);
        (lo..=hi).all(|i| {
            let maps = [
                self.incl.comp(&self.f0, &self.f, i),
                self.unit.comp(&self.f, &self.middle, i),
                self.proj.comp(&self.middle, &self.f1, i),
            ];
            fpfun::sequence_exact(&maps)
        })
    }

    pub fn maps_are_chain_maps(&self) -> bool {
        self.incl.is_chain_map(&self.f0, &self.f)
            && self.unit.is_chain_map(&self.f, &self.middle)
            && self.proj.is_chain_map(&self.middle, &self.f1)
    }
}

pub fn complex_decomposition(c: &FunComplex) -> Result<Decomposition> {
    let sub = &c.sub;
    sub.require_projectives()?;
    let f = sub.base.field();
    let zc = c.zeta_complex()?;
    let mut hom_terms = Vec::new();
    let mut bases = Vec::new();
    let mut units = Vec::new();
    let mut vas = Vec::new();
    for t in &c.terms {
        let (v, q) = t.to_module();
        let (h, basis) = sub.hom_module(&v)?;
        let theta = fpfun::free_to_hom(sub, &t.d.rows, &q.mat, &basis)?;
        units.push(theta.mul(t.zeta_section()));
        hom_terms.push(h);
        bases.push(basis);
        vas.push(v);
    }
    let mut hom_diffs = Vec::new();
    for (k, d) in c.diffs.iter().enumerate() {
        let vd = d.to_module_map().mat;
        let coords = HomCoords::new(&bases[k + 1])?;
        let cols = bases[k]
            .iter()
            .map(|h| coords.coords(&vd.mul(&h.mat)).ok_or_else(|| Error::Verification("post-composition left Hom".into())))
            .collect::<Result<Vec<_>>>()?;
        hom_diffs.push(FpMatrix::from_col_vecs(f, bases[k + 1].len(), &cols));
    }
    let middle = Complex::new(sub.gamma(), c.lo, hom_terms, hom_diffs)?;
    let mut k_terms = Vec::new();
    let mut k_incl = Vec::new();
    let mut c_terms = Vec::new();
    let mut c_proj = Vec::new();
    let mut c_sec = Vec::new();
    for (k, u) in units.iter().enumerate() {
        let m = ModuleMorphism { src: zc.terms[k].clone(), dst: middle.terms[k].clone(), mat: u.clone() };
        let (km, ki) = m.kernel();
        k_terms.push(km);
        k_incl.push(ki.mat);
        let (cm, cp) = m.cokernel();
        c_terms.push(cm);
        c_sec.push(fpfun::quotient_section(u));
        c_proj.push(cp.mat);
    }
    let mut k_diffs = Vec::new();
    let mut c_diffs = Vec::new();
    for k in 0..c.diffs.len() {
        let li = if k_incl[k + 1].cols() == 0 {
            FpMatrix::zeros(f, 0, k_incl[k + 1].rows())
        } else {
            left_inverse(&k_incl[k + 1])?
        };
        k_diffs.push(li.mul(&zc.diffs[k]).mul(&k_incl[k]));
        c_diffs.push(c_proj[k + 1].mul(&middle.diffs[k]).mul(&c_sec[k]));
    }
    let f0 = Complex::new(sub.gamma(), c.lo, k_terms, k_diffs)?;
    let f1 = Complex::new(sub.gamma(), c.lo, c_terms, c_diffs)?;
    Ok(Decomposition {
        f: zc,
        f0,
        middle,
        f1,
        unit: ChainMap { lo: c.lo, comps: units },
        incl: ChainMap { lo: c.lo, comps: k_incl },
        proj: ChainMap { lo: c.lo, comps: c_proj },
    })
}

/// Whether every term of a Γ-module complex vanishes at `Λ`.
pub fn vanishes_on_projectives(sub: &Subcat, c: &Complex) -> Result<bool> {
    let reg = sub.regular.as_ref().ok_or_else(|| Error::Precondition("Λ is not in the subcategory".into()))?;
    for t in &c.terms {
        if sub.evaluate(t, reg)?.cols() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `va(F)` acyclic if and only if `F(Λ)` acyclic; a mismatch is a bug.
pub fn kernel_characterization(c: &FunComplex) -> Result<bool> {
    let reg = c.sub.regular.as_ref().ok_or_else(|| Error::Precondition("Λ is not in the subcategory".into()))?;
    let by_va = termwise_to_module(c)?.is_acyclic();
    let (dims, maps) = c.evaluate_at(reg)?;
    let by_eval = acyclic_spaces(&dims, &maps);
    if by_va != by_eval {
        return Err(Error::Verification(format!(
            "acyclicity predicates disagree: cokernels {by_va}, value at Λ {by_eval}"
        )));
    }
    Ok(by_va)
}

/// `K(−,P), F) -> K(P, va F)`, applying `va` to each component.
pub fn adjunction_check_derived(p: &Complex, c: &FunComplex) -> Result<AdjunctionCheck> {
    let sub = &c.sub;
    let (rep, units) = termwise_representable(sub, p)?;
    let zr = rep.zeta_complex()?;
    let zc = c.zeta_complex()?;
    let lhs = khom(&zr, &zc)?;
    let vc = termwise_to_module(c)?;
    let rhs = khom(p, &vc)?;
    let inv_units = units.iter().map(|u| u.invert()).collect::<Result<Vec<_>>>()?;
    let mut imgs = Vec::new();
    for phi in &lhs.basis {
        let mut comps = Vec::new();
        for (k, i) in (p.lo..=p.hi()).enumerate() {
            let ci = c.index_of(i);
            let m = match ci {
                Some(j) => {
                    let mor = lift_zeta_map(&rep.terms[k], &c.terms[j], &phi.comp(&zr, &zc, i))?;
                    mor.to_module_map().mat.mul(&inv_units[k])
                }
                None => FpMatrix::zeros(p.field(), 0, p.term_dim(i)),
            };
            comps.push(m);
        }
        let g = ChainMap { lo: p.lo, comps };
        debug_assert!(g.is_chain_map(p, &vc));
        imgs.push(rhs.coords(&g, p, &vc)?);
    }
    Ok(AdjunctionCheck { lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), image_rank: rhs.class_rank(&imgs) })
}

/// `K(F, (−,P)) -> K(va F, P)`, applying `va` to each component.
pub fn right_adjunction_check_derived(c: &FunComplex, p: &Complex) -> Result<AdjunctionCheck> {
    let sub = &c.sub;
    let (rep, units) = termwise_representable(sub, p)?;
    let zr = rep.zeta_complex()?;
    let zc = c.zeta_complex()?;
    let lhs = khom(&zc, &zr)?;
    let vc = termwise_to_module(c)?;
    let rhs = khom(&vc, p)?;
    let mut imgs = Vec::new();
    for phi in &lhs.basis {
        let mut comps = Vec::new();
        for (k, i) in (p.lo..=p.hi()).enumerate() {
            let m = match c.index_of(i) {
                Some(j) => {
                    let mor = lift_zeta_map(&c.terms[j], &rep.terms[k], &phi.comp(&zc, &zr, i))?;
                    units[k].mul(&mor.to_module_map().mat)
                }
                None => FpMatrix::zeros(p.field(), p.term_dim(i), 0),
            };
            comps.push(m);
        }
        let g = ChainMap { lo: p.lo, comps };
        imgs.push(rhs.coords(&g, &vc, p)?);
    }
    Ok(AdjunctionCheck { lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), image_rank: rhs.class_rank(&imgs) })
}

impl FunComplex {
    fn index_of(&self, i: i32) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }
}
