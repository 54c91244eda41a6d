//! Bundled example algebras and seeded random generators for modules,
//! functors, short exact sequences and bounded complexes.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::derived::{Complex, FunComplex};
use crate::exactla::{FieldChar, FpMatrix};
use crate::fpfun::{self, FpFunctor, FunctorMorphism};
use crate::io::AlgebraFile;
use crate::modcat::{self, direct_sum, hom_basis, Module, ModuleMorphism};
use crate::subcat::{GMat, Subcat};
use crate::{Error, Result};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Bundled {
    pub name: &'static str,
    pub description: &'static str,
    pub source: &'static str,
}

impl Bundled {
    pub fn file(&self) -> AlgebraFile {
        serde_json::from_str(self.source).expect("bundled algebra files are valid")
    }

    pub fn build(&self, char_override: Option<u64>) -> Result<Arc<Algebra>> {
        self.file().build(char_override)
    }
}

pub const BUNDLED: &[Bundled] = &[
    Bundled { name: "field", description: "k", source: include_str!("../data/field.json") },
    Bundled { name: "a2", description: "path algebra of 0 -> 1", source: include_str!("../data/a2.json") },
    Bundled { name: "dual-numbers", description: "k[x]/(x^2)", source: include_str!("../data/dual-numbers.json") },
    Bundled {
        name: "truncated-cubic",
        description: "k[x]/(x^3)",
        source: include_str!("../data/truncated-cubic.json"),
    },
    Bundled {
        name: "nakayama2",
        description: "cyclic quiver on two vertices modulo paths of length 3",
        source: include_str!("../data/nakayama2.json"),
    },
    Bundled {
        name: "square-zero-2",
        description: "k[x,y]/(x,y)^2",
        source: include_str!("../data/square-zero-2.json"),
    },
];

pub fn bundled(name: &str) -> Option<&'static Bundled> {
    BUNDLED.iter().find(|b| b.name == name)
}

pub fn random_vector(f: FieldChar, rng: &mut impl Rng, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..f.p())).collect()
}

/// Columns spanning the submodule generated by `gens`.
pub fn generated_submodule(m: &Module, gens: &[Vec<u32>]) -> FpMatrix {
    let mut cols = Vec::new();
    for v in gens {
        for b in 0..m.algebra().dim() {
            cols.push(m.act(b).mul_vec(v));
        }
    }
    FpMatrix::from_col_vecs(m.field(), m.dim(), &cols).image_basis()
}

fn class_count(alg: &Algebra) -> Result<usize> {
    Ok(alg.radical().ok_or_else(|| Error::Precondition("random modules need radical data".into()))?.class_count())
}

/// A sum of 1 or 2 indecomposable projectives of total dimension at most `max_dim`.
pub fn random_projective(alg: &Arc<Algebra>, rng: &mut impl Rng, max_dim: usize) -> Result<Module> {
    let classes = class_count(alg)?;
    for _ in 0..20 {
        let k = rng.gen_range(1..=2);
        let parts = (0..k)
            .map(|_| modcat::indecomposable_projective(alg, rng.gen_range(0..classes)))
            .collect::<Result<Vec<_>>>()?;
        let m = direct_sum(alg, &parts).0;
        if m.dim() <= max_dim {
            return Ok(m);
        }
    }
    modcat::indecomposable_projective(alg, rng.gen_range(0..classes))
}

/// A random quotient of a small projective, or the dual of one over the
/// opposite algebra.
pub fn random_module(alg: &Arc<Algebra>, rng: &mut impl Rng, max_dim: usize) -> Result<Module> {
    for _ in 0..20 {
        let m = if rng.gen_bool(0.3) {
            let op = Arc::new(alg.opposite());
            let q = random_quotient(&op, rng, max_dim)?;
            modcat::dual_module_over(&q, alg)?
        } else {
            random_quotient(alg, rng, max_dim)?
        };
        if m.dim() > 0 && m.dim() <= max_dim {
            return Ok(m);
        }
    }
    modcat::simple_module(alg, 0)
}

fn random_quotient(alg: &Arc<Algebra>, rng: &mut impl Rng, max_dim: usize) -> Result<Module> {
    let p = random_projective(alg, rng, max_dim.max(1) * 2)?;
    let r = rng.gen_range(0..=2);
    let gens: Vec<Vec<u32>> = (0..r).map(|_| random_vector(p.field(), rng, p.dim())).collect();
    let span = generated_submodule(&p, &gens);
    Ok(p.quotient(&span).0)
}

pub fn random_combination(f: FieldChar, rng: &mut impl Rng, src: &Module, dst: &Module, basis: &[ModuleMorphism]) -> ModuleMorphism {
    let coeffs = random_vector(f, rng, basis.len());
    modcat::combine(src, dst, basis, &coeffs)
}

pub fn random_hom(m: &Module, n: &Module, rng: &mut impl Rng) -> Result<ModuleMorphism> {
    let basis = hom_basis(m, n)?;
    Ok(random_combination(m.field(), rng, m, n, &basis))
}

/// `0 -> A -> B -> C -> 0` with `A` generated by one or two random vectors.
pub fn random_ses(alg: &Arc<Algebra>, rng: &mut impl Rng, max_dim: usize) -> Result<(ModuleMorphism, ModuleMorphism)> {
    let b = random_module(alg, rng, max_dim)?;
    let r = rng.gen_range(1..=2);
    let gens: Vec<Vec<u32>> = (0..r).map(|_| random_vector(b.field(), rng, b.dim())).collect();
    let span = generated_submodule(&b, &gens);
    let (_, incl) = b.submodule(&span)?;
    let (_, proj) = b.quotient(&span);
    Ok((incl, proj))
}

/// A Γ-matrix with random entries in the right Hom blocks.
pub fn random_gmat(sub: &Subcat, rows: &[usize], cols: &[usize], rng: &mut impl Rng) -> GMat {
    let f = sub.base.field();
    let mut d = GMat::zeros(sub.gdim(), rows, cols);
    for (i, &b) in rows.iter().enumerate() {
        for (j, &a) in cols.iter().enumerate() {
            let block = sub.end.block(a, b);
            let mut x = vec![0u32; sub.gdim()];
            for t in 0..block.len() {
                x[block.start + t] = rng.gen_range(0..f.p());
            }
            d.set(i, j, x);
        }
    }
    d
}

fn random_summands(sub: &Subcat, rng: &mut impl Rng, lo: usize, hi: usize) -> Vec<usize> {
    let k = rng.gen_range(lo..=hi);
    (0..k).map(|_| rng.gen_range(0..sub.summand_count())).collect()
}

/// A functor presented by a random Γ-matrix, with `F(gen)` of dimension at
/// most `max_zeta` (and nonzero when possible).
pub fn random_functor(sub: &Arc<Subcat>, rng: &mut impl Rng, max_zeta: usize) -> Result<FpFunctor> {
    let mut fallback = None;
    for _ in 0..30 {
        let rows = random_summands(sub, rng, 1, 2);
        let cols = random_summands(sub, rng, 0, 2);
        let d = random_gmat(sub, &rows, &cols, rng);
        let func = FpFunctor::new(sub, d)?;
        let z = func.zeta_dim();
        if z <= max_zeta {
            if z > 0 {
                return Ok(func);
            }
            fallback.get_or_insert(func);
        }
    }
    Ok(fallback.unwrap_or_else(|| FpFunctor::zero(sub)))
}

/// A functor vanishing on projectives: a piece of the unit/counit sequences
/// of a random functor, or a functor presented by an approximation.
pub fn random_mod0_functor(sub: &Arc<Subcat>, rng: &mut impl Rng, max_zeta: usize) -> Result<FpFunctor> {
    for _ in 0..20 {
        let f = random_functor(sub, rng, max_zeta)?;
        let (a, b) = fpfun::serre_adjoints(&f)?;
        let pick = if rng.gen_bool(0.5) { [a, b] } else { [b, a] };
        if let Some(g) = pick.into_iter().find(|g| g.zeta_dim() > 0 && g.zeta_dim() <= max_zeta) {
            return Ok(g);
        }
    }
    // (−, X) -> (−, M)| -> F -> 0 for a non-projective M in the subcategory.
    for s in 0..sub.summand_count() {
        let m = sub.summand(s).clone();
        if !modcat::is_projective(&m)? {
            let cover = modcat::projective_cover(&m)?;
            let x0 = sub.add_witness(&cover.src)?.expect("projectives lie in the subcategory");
            let x1 = sub.add_witness(&m)?.expect("summands lie in the subcategory");
            let one = crate::subcat::AddObj {
                module: m.clone(),
                summands: x1.summands.clone(),
                s: x1.s.clone(),
                pi: x1.pi.clone(),
            };
            return fpfun::from_module_map(sub, &x0, &one, &cover.mat);
        }
    }
    Ok(FpFunctor::zero(sub))
}

/// Sum of a family of functor morphisms with the given coefficients.
pub fn combine_morphisms(src: &FpFunctor, dst: &FpFunctor, basis: &[FunctorMorphism], coeffs: &[u32]) -> FunctorMorphism {
    let f = src.sub.base.field();
    let mut out = FunctorMorphism::zero(src, dst);
    for (m, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (acc, x) in out.h0.entries.iter_mut().zip(&m.h0.entries) {
            for (a, &y) in acc.iter_mut().zip(x) {
                *a = f.add(*a, f.mul(c, y));
            }
        }
        for (acc, x) in out.h1.entries.iter_mut().zip(&m.h1.entries) {
            for (a, &y) in acc.iter_mut().zip(x) {
                *a = f.add(*a, f.mul(c, y));
            }
        }
    }
    out
}

pub fn random_functor_morphism(src: &FpFunctor, dst: &FpFunctor, rng: &mut impl Rng) -> Result<FunctorMorphism> {
    let basis = fpfun::fp_hom(src, dst)?;
    let coeffs = random_vector(src.sub.base.field(), rng, basis.len());
    Ok(combine_morphisms(src, dst, &basis, &coeffs))
}

/// `0 -> im η -> G -> coker η -> 0` for a random `η: F -> G`.
pub fn random_functor_ses(sub: &Arc<Subcat>, rng: &mut impl Rng, max_zeta: usize) -> Result<(FunctorMorphism, FunctorMorphism)> {
    let src = random_functor(sub, rng, max_zeta)?;
    let dst = random_functor(sub, rng, max_zeta)?;
    let eta = random_functor_morphism(&src, &dst, rng)?;
    let (_, incl, _) = fpfun::image(&eta)?;
    let (_, proj) = fpfun::cokernel(&eta)?;
    Ok((incl, proj))
}

/// Random differentials on the given terms, each chosen among the maps
/// killing the previous differential.
pub fn random_differentials(terms: &[Module], rng: &mut impl Rng) -> Result<Vec<FpMatrix>> {
    let mut diffs: Vec<FpMatrix> = Vec::new();
    for k in 0..terms.len().saturating_sub(1) {
        let (a, b) = (&terms[k], &terms[k + 1]);
        let f = a.field();
        let basis = if a.dim() == 0 || b.dim() == 0 { Vec::new() } else { hom_basis(a, b)? };
        let admissible = match diffs.last() {
            None => FpMatrix::identity(f, basis.len()),
            Some(prev) => {
                let cols: Vec<Vec<u32>> = basis.iter().map(|h| h.mat.mul(prev).data().to_vec()).collect();
                let rows = b.dim() * prev.cols();
                FpMatrix::from_col_vecs(f, rows, &cols).kernel_basis()
            }
        };
        let mut coeffs = vec![0u32; basis.len()];
        for r in admissible.row_vecs() {
            let c = rng.gen_range(0..f.p());
            for (x, y) in coeffs.iter_mut().zip(r) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        diffs.push(modcat::combine(a, b, &basis, &coeffs).mat);
    }
    Ok(diffs)
}

pub fn random_complex_on(alg: &Arc<Algebra>, terms: Vec<Module>, lo: i32, rng: &mut impl Rng) -> Result<Complex> {
    let diffs = random_differentials(&terms, rng)?;
    Complex::new(alg, lo, terms, diffs)
}

/// Complexes of projectives: stalks of the indecomposable projectives and
/// of `Λ`, two-term complexes from Hom bases, and random three-term ones.
pub fn projective_complexes(alg: &Arc<Algebra>, rng: &mut impl Rng, count: usize, max_dim: usize) -> Result<Vec<Complex>> {
    let classes = class_count(alg)?;
    let ps = (0..classes).map(|c| modcat::indecomposable_projective(alg, c)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for p in &ps {
        out.push(Complex::stalk(p, 0));
    }
    let reg = modcat::regular_module(alg);
    if reg.dim() <= max_dim {
        out.push(Complex::stalk(&reg, 0));
    }
    for a in &ps {
        for b in &ps {
            for h in hom_basis(a, b)? {
                out.push(Complex::new(alg, -1, vec![a.clone(), b.clone()], vec![h.mat])?);
            }
        }
    }
    out.truncate(count / 2);
    while out.len() < count {
        let len = rng.gen_range(2..=3);
        let terms = (0..len).map(|_| random_projective(alg, rng, max_dim)).collect::<Result<Vec<_>>>()?;
        let lo = rng.gen_range(-2..=0);
        out.push(random_complex_on(alg, terms, lo, rng)?);
    }
    Ok(out)
}

/// Complexes of arbitrary modules, built the same way from simples,
/// projectives and random modules.
pub fn module_complexes(alg: &Arc<Algebra>, rng: &mut impl Rng, count: usize, max_dim: usize) -> Result<Vec<Complex>> {
    let classes = class_count(alg)?;
    let mut basic = Vec::new();
    for c in 0..classes {
        basic.push(modcat::simple_module(alg, c)?);
        basic.push(modcat::indecomposable_projective(alg, c)?);
    }
    let mut out: Vec<Complex> = basic.iter().map(|m| Complex::stalk(m, 0)).collect();
    for a in &basic {
        for b in &basic {
            if let Some(h) = hom_basis(a, b)?.choose(rng) {
                out.push(Complex::new(alg, 0, vec![a.clone(), b.clone()], vec![h.mat.clone()])?);
            }
        }
    }
    out.truncate(count / 2);
    while out.len() < count {
        let len = rng.gen_range(1..=3);
        let terms = (0..len).map(|_| random_module(alg, rng, max_dim)).collect::<Result<Vec<_>>>()?;
        let lo = rng.gen_range(-2..=0);
        out.push(random_complex_on(alg, terms, lo, rng)?);
    }
    Ok(out)
}

/// Complexes of functors: stalks of representables and of random functors
/// (including ones vanishing on projectives), two-term complexes from random
/// morphisms, and three-term complexes `F -> G -> coker`.
pub fn functor_complexes(sub: &Arc<Subcat>, rng: &mut impl Rng, count: usize, max_zeta: usize) -> Result<Vec<FunComplex>> {
    let mut out = Vec::new();
    for s in 0..sub.summand_count() {
        let r = FpFunctor::representable(sub, &[s]);
        if r.zeta_dim() <= max_zeta {
            out.push(FunComplex::stalk(&r, 0));
        }
    }
    while out.len() < count {
        let lo = rng.gen_range(-2..=0);
        let c = match rng.gen_range(0..5) {
            0 => FunComplex::stalk(&random_functor(sub, rng, max_zeta)?, lo),
            1 => FunComplex::stalk(&random_mod0_functor(sub, rng, max_zeta)?, lo),
            2 | 3 => {
                let a = random_functor(sub, rng, max_zeta)?;
                let b = if rng.gen_bool(0.3) { random_mod0_functor(sub, rng, max_zeta)? } else { random_functor(sub, rng, max_zeta)? };
                let eta = random_functor_morphism(&a, &b, rng)?;
                FunComplex { sub: sub.clone(), lo, terms: vec![a, b], diffs: vec![eta] }
            }
            _ => {
                let a = random_functor(sub, rng, max_zeta)?;
                let b = random_functor(sub, rng, max_zeta)?;
                let eta = random_functor_morphism(&a, &b, rng)?;
                let (c, proj) = fpfun::cokernel(&eta)?;
                FunComplex { sub: sub.clone(), lo, terms: vec![a, b, c], diffs: vec![eta, proj] }
            }
        };
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_algebras_build() {
        let dims: Vec<usize> = BUNDLED.iter().map(|b| b.build(None).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 3, 2, 3, 6, 3]);
    }

    #[test]
    fn random_complexes_square_to_zero() {
        let alg = bundled("truncated-cubic").unwrap().build(Some(3)).unwrap();
        let mut r = rng(7);
        for c in module_complexes(&alg, &mut r, 20, 6).unwrap() {
            c.validate().unwrap();
            assert!(c.terms.iter().all(|t| t.dim() <= 6));
        }
        for c in projective_complexes(&alg, &mut r, 10, 8).unwrap() {
            assert!(c.is_projective().unwrap());
        }
    }

    #[test]
    fn random_functors_fit() {
        let alg = bundled("dual-numbers").unwrap().build(Some(5)).unwrap();
        let sub = Subcat::radical_layers(&alg).unwrap();
        let mut r = rng(1);
        for _ in 0..10 {
            assert!(random_functor(&sub, &mut r, 6).unwrap().zeta_dim() <= 6);
            assert!(random_mod0_functor(&sub, &mut r, 6).unwrap().vanishes_on_projectives().unwrap());
            let (a, b) = random_functor_ses(&sub, &mut r, 6).unwrap();
            assert!(fpfun::sequence_exact(&[a.zeta_map(), b.zeta_map()]));
            assert!(a.zeta_morphism().is_injective() && b.zeta_morphism().is_surjective());
        }
    }
}
