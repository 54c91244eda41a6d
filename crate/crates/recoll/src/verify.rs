//! Verification suites over seeded random corpora. Each suite returns a
//! deterministic [`Report`]; input and precondition problems are errors.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::aalgebra::{build_aalgebra, EndAlgebra};
use crate::algebra::Algebra;
use crate::cofun::{self, CoFpFunctor, Duality};
use crate::corpus::{self, CorpusRng};
use crate::derived::{self, ChainMap, Complex, FunComplex};
use crate::exactla::FpMatrix;
use crate::fpfun::{self, FpFunctor};
use crate::io::ModuleSummary;
use crate::modcat::{self, hom_basis, Module};
use crate::report::{CheckRecord, Report};
use crate::subcat::Subcat;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    AAlgebra,
    Recollement,
    Covariant,
    Resolution,
    Crepant,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::AAlgebra, Suite::Recollement, Suite::Covariant, Suite::Resolution, Suite::Crepant];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AAlgebra => "aalgebra",
            Suite::Recollement => "recollement",
            Suite::Covariant => "covariant",
            Suite::Resolution => "resolution",
            Suite::Crepant => "crepant",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn default_corpus_size(self) -> usize {
        match self {
            Suite::AAlgebra => 0,
            Suite::Recollement => 200,
            Suite::Covariant => 50,
            Suite::Resolution => 100,
            Suite::Crepant => 100,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcatChoice {
    /// The pieces of `⊕ Λ/J^i`.
    RadicalLayers,
    Projectives,
}

impl SubcatChoice {
    pub fn name(self) -> &'static str {
        match self {
            SubcatChoice::RadicalLayers => "radical-layers",
            SubcatChoice::Projectives => "projectives",
        }
    }

    pub fn build(self, alg: &Arc<Algebra>) -> Result<Arc<Subcat>> {
        match self {
            SubcatChoice::RadicalLayers => Subcat::radical_layers(alg),
            SubcatChoice::Projectives => Subcat::projectives(alg),
        }
    }
}

/// Deliberate corruption of the input, to check that the suites notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Shift one structure constant of the endomorphism algebra of `gen`.
    StructureConstant,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides the suite's default number of random instances.
    pub corpus_size: Option<usize>,
    pub gldim_cap: Option<usize>,
    pub subcat: SubcatChoice,
    /// Bound on module dimensions and on functor values at `gen`.
    pub max_dim: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, corpus_size: None, gldim_cap: None, subcat: SubcatChoice::RadicalLayers, max_dim: 8, fault: None }
    }
}

impl VerifyConfig {
    fn size(&self, suite: Suite) -> usize {
        self.corpus_size.unwrap_or(suite.default_corpus_size())
    }

    fn rng(&self, stream: u64) -> CorpusRng {
        corpus::rng(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(stream))
    }

    fn cap(&self, alg: &Algebra) -> usize {
        self.gldim_cap.unwrap_or_else(|| modcat::default_gldim_cap(alg))
    }
}

pub fn run(suite: Suite, alg: &Arc<Algebra>, name: &str, cfg: &VerifyConfig) -> Result<Report> {
    match suite {
        Suite::AAlgebra => aalgebra_suite(alg, name, cfg),
        Suite::Recollement => recollement_suite(alg, name, cfg),
        Suite::Covariant => covariant_suite(alg, name, cfg),
        Suite::Resolution => resolution_suite(alg, name, cfg),
        Suite::Crepant => crepant_suite(alg, name, cfg),
    }
}

fn header(suite: Suite, alg: &Algebra, name: &str, cfg: &VerifyConfig, subcat: &str) -> Report {
    Report {
        suite: suite.name().into(),
        algebra: name.into(),
        field_char: alg.field().p(),
        seed: cfg.seed,
        corpus_size: cfg.size(suite),
        gldim_cap: cfg.cap(alg),
        subcategory: subcat.into(),
        passed: true,
        checks: Vec::new(),
        notes: Vec::new(),
    }
}

fn mjson(m: &Module) -> Value {
    match ModuleSummary::of(m) {
        Ok(s) => serde_json::to_value(s).unwrap_or(Value::Null),
        Err(_) => json!({ "dim": m.dim() }),
    }
}

fn fjson(f: &FpFunctor) -> Value {
    json!({ "rows": f.d.rows, "cols": f.d.cols, "entries": f.d.entries, "dim_at_gen": f.zeta_dim() })
}

fn cjson(c: &Complex) -> Value {
    json!({
        "lo": c.lo,
        "terms": c.terms.iter().map(mjson).collect::<Vec<_>>(),
        "diffs": c.diffs.iter().map(|d| d.row_vecs()).collect::<Vec<_>>(),
    })
}

fn fcjson(c: &FunComplex) -> Value {
    json!({
        "lo": c.lo,
        "terms": c.terms.iter().map(fjson).collect::<Vec<_>>(),
        "diffs": c.diffs.iter().map(|d| json!({ "h0": d.h0.entries, "h1": d.h1.entries })).collect::<Vec<_>>(),
    })
}

fn adj_dims(a: &fpfun::AdjunctionCheck) -> Vec<(&'static str, usize)> {
    vec![("lhs", a.lhs_dim), ("rhs", a.rhs_dim), ("image_rank", a.image_rank)]
}

/// The subcategory for a suite, with the configured fault applied, after
/// checking the multiplication of its endomorphism algebra. Returns `None`
/// when that check fails.
fn prepare_subcat(alg: &Arc<Algebra>, cfg: &VerifyConfig, rep: &mut Report) -> Result<Option<Arc<Subcat>>> {
    let sub = cfg.subcat.build(alg)?;
    let end = match cfg.fault {
        None => sub.end.clone(),
        Some(Fault::StructureConstant) => {
            let g = sub.gamma();
            let n = g.dim();
            // The first product of two maps that is not a summand identity.
            let ids: Vec<usize> =
                (0..sub.summand_count()).filter_map(|s| sub.identity(s).iter().position(|&x| x != 0)).collect();
            let target = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| !ids.contains(i) || !ids.contains(j))
                .find_map(|(i, j)| (0..n).find(|&k| g.coeff(i, j, k) != 0).map(|k| (i, j, k)))
                .unwrap_or((0, 0, 0));
            let mut end = sub.end.clone();
            end.alg = Arc::new(g.with_perturbed_constant(target.0, target.1, target.2, 1));
            rep.notes.push(format!("fault injected: structure constant ({}, {}, {}) shifted by 1", target.0, target.1, target.2));
            end
        }
    };
    let check = gamma_consistency(&end);
    let consistent = check.passed;
    rep.checks.push(check);
    if !consistent {
        rep.notes.push("remaining checks skipped: the endomorphism algebra of gen is inconsistent".into());
        return Ok(None);
    }
    match cfg.fault {
        None => Ok(Some(sub)),
        Some(_) => Subcat::from_end(alg, end).map(Some),
    }
}

/// The multiplication of `End(gen)` agrees with composition of maps.
fn gamma_consistency(end: &EndAlgebra) -> CheckRecord {
    let mut c = CheckRecord::new(
        "endomorphism-algebra-consistency",
        "the structure constants of End(gen) are the composition of its basis maps",
    );
    let g = &end.alg;
    let n = g.dim();
    let mut bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let comp = end.basis_endo(i).mul(&end.basis_endo(j));
            let prod = end.element_endo(&g.mul(&g.basis_vector(i), &g.basis_vector(j)));
            if comp != prod {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    c.record(bad.is_none(), &[("dim", n)], || match bad {
        Some((i, j)) => json!({ "left": i, "right": j, "dim": n }),
        None => json!({ "dim": n }),
    });
    c
}

pub fn aalgebra_suite(alg: &Arc<Algebra>, name: &str, cfg: &VerifyConfig) -> Result<Report> {
    let mut rep = header(Suite::AAlgebra, alg, name, cfg, "radical-layers");
    let a = build_aalgebra(alg)?;
    let cap = cfg.cap(a.tilde());
    let mut corner = CheckRecord::new("corner-iso", "e Λ̃ e is isomorphic to Λ through the recorded map");
    let ok = a.corner_iso_verified()?;
    corner.record(ok, &[("dim_base", alg.dim())], || json!({ "witness": a.witness.row_vecs() }));
    rep.checks.push(corner);
    let mut dims = CheckRecord::new("dimension-formula", "dim Λ̃ = Σ_{i,j} dim Hom(Λ/J^i, Λ/J^j)");
    let total = a.layer_hom_total()?;
    let dt = a.tilde().dim();
    dims.record(total == dt, &[("dim_tilde", dt), ("hom_total", total)], || {
        json!({ "dim_tilde": dt, "hom_total": total, "pieces": a.pieces })
    });
    rep.checks.push(dims);
    let mut gl = CheckRecord::new("finite-global-dimension", "gldim Λ̃ is finite (below the cap)");
    let g = a.gldim(cap)?;
    gl.record(g.is_some(), &[("gldim", g.unwrap_or(cap + 1))], || {
        json!({ "gldim": g, "cap": cap, "dim_generator": a.dim_generator(), "nilpotency_index": alg.nilpotency_index() })
    });
    rep.checks.push(gl);
    Ok(rep.finish())
}

pub fn recollement_suite(alg: &Arc<Algebra>, name: &str, cfg: &VerifyConfig) -> Result<Report> {
    let suite = Suite::Recollement;
    let mut rep = header(suite, alg, name, cfg, cfg.subcat.name());
    let Some(sub) = prepare_subcat(alg, cfg, &mut rep)? else {
        return Ok(rep.finish());
    };
    let n = cfg.size(suite);
    let ses_count = (n / 4).max(50.min(n));
    let md = cfg.max_dim;

    let mut left = CheckRecord::new("adjunction-left", "Hom(M, va F) -> Hom(va_λ M, F) is a linear isomorphism");
    let mut right = CheckRecord::new("adjunction-right", "Hom(va F, M) -> Hom(F, va_ρ M) is a linear isomorphism");
    let mut r = cfg.rng(1);
    for _ in 0..n {
        let m = corpus::random_module(alg, &mut r, md)?;
        let f = corpus::random_functor(&sub, &mut r, md)?;
        let out = fpfun::adjunction_check_left(&m, &f).map(|a| (a.is_iso(), adj_dims(&a)));
        left.record_result(out, || json!({ "module": mjson(&m), "functor": fjson(&f) }))?;
        let out = fpfun::adjunction_check_right(&f, &m).map(|a| (a.is_iso(), adj_dims(&a)));
        right.record_result(out, || json!({ "module": mjson(&m), "functor": fjson(&f) }))?;
    }
    rep.checks.push(left);
    rep.checks.push(right);

    let mut exact = CheckRecord::new("va-exact", "va sends short exact sequences of functors to exact sequences");
    let mut r = cfg.rng(2);
    for _ in 0..ses_count {
        let (a, b) = corpus::random_functor_ses(&sub, &mut r, md)?;
        let out = (|| {
            let (va, vb) = (a.to_module_map(), b.to_module_map());
            let ok = fpfun::sequence_exact(&[a.zeta_map(), b.zeta_map()]) && fpfun::sequence_exact(&[va.mat, vb.mat]);
            Ok((ok, vec![("middle", b.src.to_module().0.dim())]))
        })();
        exact.record_result(out, || json!({ "sub": fjson(&a.src), "middle": fjson(&a.dst), "quotient": fjson(&b.dst) }))?;
    }
    rep.checks.push(exact);

    let mut ff = CheckRecord::new(
        "restricted-hom-fully-faithful",
        "Hom(va_ρ M, va_ρ N) -> Hom(M, N) induced by va is bijective",
    );
    let mut counit = CheckRecord::new("va-inverts-adjoints", "va va_λ M ≅ M and va va_ρ M ≅ M");
    let mut r = cfg.rng(3);
    for _ in 0..ses_count {
        let m = corpus::random_module(alg, &mut r, md)?;
        let k = corpus::random_module(alg, &mut r, md)?;
        let out = (|| {
            let (rm, rk) = (fpfun::restricted_hom(&sub, &m)?, fpfun::restricted_hom(&sub, &k)?);
            let hom_f = fpfun::fp_hom(&rm.functor, &rk.functor)?;
            let hom_m = hom_basis(&m, &k)?.len();
            let flat: Vec<Vec<u32>> = hom_f.iter().map(|h| h.to_module_map().mat.data().to_vec()).collect();
            let (vm, _) = rm.functor.to_module();
            let (vk, _) = rk.functor.to_module();
            let rank = if flat.is_empty() { 0 } else { FpMatrix::from_col_vecs(alg.field(), vm.dim() * vk.dim(), &flat).rank() };
            Ok((hom_f.len() == hom_m && rank == hom_m, vec![("hom", hom_m), ("functor_hom", hom_f.len())]))
        })();
        ff.record_result(out, || json!({ "m": mjson(&m), "n": mjson(&k) }))?;
        let out = (|| {
            let (_, iso) = fpfun::presented_by_projectives(&sub, &m)?;
            let rh = fpfun::restricted_hom(&sub, &m)?;
            let back = modcat::module_iso_search(&rh.functor.to_module().0, &m)?;
            Ok((iso.is_iso() && back.is_some(), vec![("dim", m.dim())]))
        })();
        counit.record_result(out, || json!({ "module": mjson(&m) }))?;
    }
    rep.checks.push(ff);
    rep.checks.push(counit);

    let mut seqs = CheckRecord::new(
        "unit-counit-sequences",
        "0 -> F0 -> F -> (−, va F) -> F1 -> 0 and 0 -> F2 -> va_λ va F -> F -> F3 -> 0 are exact with ends vanishing on projectives",
    );
    let mut serre = CheckRecord::new("serre-adjoints", "the largest subfunctor and quotient of F vanishing on projectives do vanish on projectives");
    let mut padded = CheckRecord::new("presentation-independence", "Hom dimensions are unchanged by padding a presentation with an identity");
    let mut r = cfg.rng(4);
    for _ in 0..ses_count {
        let f = corpus::random_functor(&sub, &mut r, md)?;
        let g = corpus::random_functor(&sub, &mut r, md)?;
        let out = (|| {
            let s = fpfun::unit_counit_sequences(&f)?;
            let reg = sub.regular.as_ref().ok_or_else(|| Error::Precondition("Λ is not in the subcategory".into()))?;
            let ok = s.exact_at_gen() && s.exact_at(reg)? && s.ends_vanish_on_projectives()?;
            Ok((ok, vec![("f0", s.f0.zeta_dim()), ("f1", s.f1.zeta_dim()), ("f2", s.f2.zeta_dim()), ("f3", s.f3.zeta_dim())]))
        })();
        seqs.record_result(out, || json!({ "functor": fjson(&f) }))?;
        let out = (|| {
            let (a, b) = fpfun::serre_adjoints(&f)?;
            Ok((a.vanishes_on_projectives()? && b.vanishes_on_projectives()?, vec![]))
        })();
        serre.record_result(out, || json!({ "functor": fjson(&f) }))?;
        let out = (|| {
            let extra = [corpus_index(&mut r, sub.summand_count())];
            let a = fpfun::fp_hom(&f, &g)?.len();
            let b = fpfun::fp_hom(&f.padded(&extra), &g)?.len();
            let c = fpfun::fp_hom(&f, &g.padded(&extra))?.len();
            Ok((a == b && a == c, vec![("hom", a)]))
        })();
        padded.record_result(out, || json!({ "f": fjson(&f), "g": fjson(&g) }))?;
    }
    rep.checks.push(seqs);
    rep.checks.push(serre);
    rep.checks.push(padded);

    let mut vanish = CheckRecord::new(
        "mod0-orthogonal-to-restricted-hom",
        "Hom(F, (−,M)|) = 0 and Ext^1(F, (−,M)|) = 0 for F vanishing on projectives",
    );
    let mut r = cfg.rng(5);
    for _ in 0..ses_count {
        let f = corpus::random_mod0_functor(&sub, &mut r, md)?;
        let m = corpus::random_module(alg, &mut r, md)?;
        let out = (|| {
            let rh = fpfun::restricted_hom(&sub, &m)?;
            let h = fpfun::fp_hom(&f, &rh.functor)?.len();
            let e = fpfun::fp_ext1(&f, &rh.functor)?;
            Ok((f.vanishes_on_projectives()? && h == 0 && e == 0, vec![("hom", h), ("ext1", e)]))
        })();
        vanish.record_result(out, || json!({ "functor": fjson(&f), "module": mjson(&m) }))?;
    }
    rep.checks.push(vanish);
    Ok(rep.finish())
}

fn corpus_index(r: &mut CorpusRng, n: usize) -> usize {
    use rand::Rng;
    r.gen_range(0..n)
}

fn random_cofunctor(d: &Arc<Duality>, r: &mut CorpusRng, md: usize) -> Result<CoFpFunctor> {
    Ok(CoFpFunctor { duality: d.clone(), reduced: corpus::random_functor(&d.dual, r, md)? })
}

pub fn covariant_suite(alg: &Arc<Algebra>, name: &str, cfg: &VerifyConfig) -> Result<Report> {
    let suite = Suite::Covariant;
    let mut rep = header(suite, alg, name, cfg, cfg.subcat.name());
    let Some(sub) = prepare_subcat(alg, cfg, &mut rep)? else {
        return Ok(rep.finish());
    };
    let n = cfg.size(suite);
    let md = cfg.max_dim;
    let d = Duality::new(&sub)?;
    let op = d.op.clone();

    let mut vt = CheckRecord::new("value-of-tensor", "v(t N) ≅ N for left modules N");
    let mut routes = CheckRecord::new("tensor-routes-agree", "(−⊗N)| computed directly and through restricted Hom are isomorphic");
    let mut adj_t = CheckRecord::new("adjunction-tensor-value", "Hom(t N, G) -> Hom(N, v G) is a linear isomorphism");
    let mut adj_k = CheckRecord::new("adjunction-value-kernel", "Hom(G, κ N) -> Hom(v G, N) is a linear isomorphism");
    let mut ff_t = CheckRecord::new("tensor-fully-faithful", "dim Hom(t N, t N') = dim Hom(N, N')");
    let mut ff_k = CheckRecord::new("kernel-fully-faithful", "dim Hom(κ N, κ N') = dim Hom(N, N')");
    let mut r = cfg.rng(11);
    for _ in 0..n {
        let m = corpus::random_module(&op, &mut r, md)?;
        let m2 = corpus::random_module(&op, &mut r, md)?;
        let g = random_cofunctor(&d, &mut r, md)?;
        let out = (|| {
            let t = cofun::tensor_functor(&d, &m)?;
            let v = t.value_at_regular()?;
            Ok((modcat::module_iso_search(&v, &m)?.is_some(), vec![("dim", m.dim())]))
        })();
        vt.record_result(out, || json!({ "module": mjson(&m) }))?;
        let out = (|| {
            let a = cofun::tensor_functor(&d, &m)?;
            let b = cofun::tensor_functor_direct(&d, &m)?;
            Ok((fpfun::functor_iso(&a.reduced, &b.reduced)?.is_some(), vec![("dim_at_gen", a.reduced.zeta_dim())]))
        })();
        routes.record_result(out, || json!({ "module": mjson(&m) }))?;
        let out = cofun::adjunction_check_tensor(&d, &m, &g).map(|a| (a.is_iso(), adj_dims(&a)));
        adj_t.record_result(out, || json!({ "module": mjson(&m), "functor": fjson(&g.reduced) }))?;
        let out = cofun::adjunction_check_kernel(&d, &g, &m).map(|a| (a.is_iso(), adj_dims(&a)));
        adj_k.record_result(out, || json!({ "module": mjson(&m), "functor": fjson(&g.reduced) }))?;
        let out = cofun::fully_faithful_dims(&d, &m, &m2, false).map(|(a, b)| (a == b, vec![("hom", b)]));
        ff_t.record_result(out, || json!({ "n": mjson(&m), "n2": mjson(&m2) }))?;
        let out = cofun::fully_faithful_dims(&d, &m, &m2, true).map(|(a, b)| (a == b, vec![("hom", b)]));
        ff_k.record_result(out, || json!({ "n": mjson(&m), "n2": mjson(&m2) }))?;
    }
    for c in [vt, routes, adj_t, adj_k, ff_t, ff_k] {
        rep.checks.push(c);
    }

    let mut vexact = CheckRecord::new("value-exact", "v sends 0 -> ker η -> G1 -> G2 -> coker η -> 0 to an exact sequence");
    let mut vroutes = CheckRecord::new("value-routes-agree", "v G by evaluation at Λ and by an injective copresentation agree");
    let mut kills = CheckRecord::new("value-kernel", "v G = 0 exactly when G vanishes on projectives");
    let mut dd = CheckRecord::new("double-dual", "D D F ≅ F with the explicit isomorphism");
    let mut ddims = CheckRecord::new("dual-dimensions", "dim (D F)(Y) = dim F(Y) for Y = gen and Y = Λ");
    let mut dexact = CheckRecord::new("dual-exact", "D sends short exact sequences to short exact sequences");
    let mut r = cfg.rng(12);
    let reg = sub.regular.clone().ok_or_else(|| Error::Precondition("Λ is not in the subcategory".into()))?;
    for _ in 0..n {
        let g1 = random_cofunctor(&d, &mut r, md)?;
        let g2 = random_cofunctor(&d, &mut r, md)?;
        let eta = corpus::random_functor_morphism(&g1.reduced, &g2.reduced, &mut r)?;
        let out = cofun::value_exact_on(&d, &eta).map(|ok| (ok, vec![]));
        vexact.record_result(out, || json!({ "src": fjson(&g1.reduced), "dst": fjson(&g2.reduced) }))?;
        let out = (|| {
            let a = g1.value_at_regular()?;
            let b = cofun::value_by_copresentation(&d, &g1)?;
            Ok((modcat::module_iso_search(&a, &b)?.is_some(), vec![("dim", a.dim())]))
        })();
        vroutes.record_result(out, || json!({ "functor": fjson(&g1.reduced) }))?;
        let f0 = if corpus_index(&mut r, 2) == 0 {
            corpus::random_mod0_functor(&sub, &mut r, md)?
        } else {
            corpus::random_functor(&sub, &mut r, md)?
        };
        let out = (|| {
            let g = cofun::dual_functor(&d, &f0)?.functor;
            let zero = g.value_at_regular()?.dim() == 0;
            Ok((zero == g.vanishes_on_projectives()? && zero == f0.vanishes_on_projectives()?, vec![]))
        })();
        kills.record_result(out, || json!({ "functor": fjson(&f0) }))?;
        let out = cofun::double_dual_iso(&d, &f0).map(|(_, m)| (m.is_iso(), vec![("dim_at_gen", f0.zeta_dim())]));
        dd.record_result(out, || json!({ "functor": fjson(&f0) }))?;
        let out = (|| {
            let g = cofun::dual_functor(&d, &f0)?.functor;
            let gen = crate::subcat::AddObj {
                module: sub.gen().clone(),
                summands: (0..sub.summand_count()).collect(),
                s: FpMatrix::identity(alg.field(), sub.gen().dim()),
                pi: FpMatrix::identity(alg.field(), sub.gen().dim()),
            };
            let a = (g.value_dim(&gen)?, f0.evaluate(&gen)?.cols());
            let b = (g.value_dim(&reg)?, f0.evaluate(&reg)?.cols());
            Ok((a.0 == a.1 && b.0 == b.1, vec![("at_gen", a.1), ("at_regular", b.1)]))
        })();
        ddims.record_result(out, || json!({ "functor": fjson(&f0) }))?;
        let (a, b) = corpus::random_functor_ses(&sub, &mut r, md)?;
        let out = (|| {
            let da = cofun::dual_functor(&d, &a.src)?;
            let db = cofun::dual_functor(&d, &a.dst)?;
            let dc = cofun::dual_functor(&d, &b.dst)?;
            let x = cofun::dual_morphism(&b, &db, &dc)?;
            let y = cofun::dual_morphism(&a, &da, &db)?;
            Ok((fpfun::sequence_exact(&[x.zeta_map(), y.zeta_map()]), vec![]))
        })();
        dexact.record_result(out, || json!({ "sub": fjson(&a.src), "middle": fjson(&a.dst) }))?;
    }
    for c in [vexact, vroutes, kills, dd, ddims, dexact] {
        rep.checks.push(c);
    }

    let mut inj = CheckRecord::new("injectives-are-tensor-summands", "D(−, X) embeds split into some (−⊗N)| for every X in add(gen)");
    let mut objs: Vec<Vec<usize>> = (0..sub.summand_count()).map(|s| vec![s]).collect();
    objs.push(reg.summands.clone());
    for x in objs {
        let out = cofun::injective_witness(&d, &x).map(|w| (w.is_some(), vec![("summands", x.len())]));
        inj.record_result(out, || json!({ "summands": x }))?;
    }
    rep.checks.push(inj);

    let mut proj = CheckRecord::new("relative-duality-on-projectives", "D̃(P) ≅ D(P) for indecomposable projectives P and for Λ");
    let rad = alg.radical().ok_or_else(|| Error::Precondition("the algebra needs radical data".into()))?;
    let mut ps = (0..rad.class_count()).map(|c| modcat::indecomposable_projective(alg, c)).collect::<Result<Vec<_>>>()?;
    ps.push(modcat::regular_module(alg));
    for p in &ps {
        let out = (|| {
            let t = cofun::relative_duality(&d, p)?;
            let dp = modcat::dual_module_over(p, &op)?;
            let iso = modcat::module_iso_search(&t, &dp)?.is_some();
            Ok((iso && modcat::is_injective(&dp)?, vec![("dim", p.dim())]))
        })();
        proj.record_result(out, || json!({ "projective": mjson(p) }))?;
    }
    rep.checks.push(proj);

    let mut usual = CheckRecord::new("relative-duality-for-projectives-subcategory", "D̃(M) ≅ D(M) when the subcategory is add Λ");
    let psub = Subcat::projectives(alg)?;
    let pd = Duality::new(&psub)?;
    let mut r = cfg.rng(13);
    for _ in 0..n {
        let m = corpus::random_module(alg, &mut r, md)?;
        let out = (|| {
            let t = cofun::relative_duality(&pd, &m)?;
            let dm = modcat::dual_module_over(&m, &op)?;
            Ok((modcat::module_iso_search(&t, &dm)?.is_some(), vec![("dim", m.dim())]))
        })();
        usual.record_result(out, || json!({ "module": mjson(&m) }))?;
    }
    rep.checks.push(usual);

    if modcat::is_self_injective(alg)? {
        let mut auto_p = CheckRecord::new("auto-equivalence-projectives-subcategory", "the relative auto-equivalence for add Λ sends M to a module isomorphic to M");
        let mut round = CheckRecord::new("auto-equivalence-round-trip", "the inverse composite undoes the relative auto-equivalence");
        let mut r = cfg.rng(14);
        for k in 0..n {
            let m = if k == 0 { modcat::regular_module(alg) } else { corpus::random_module(alg, &mut r, md)? };
            let out = (|| {
                let a = cofun::relative_auto_equivalence(&pd, &m)?;
                Ok((modcat::module_iso_search(&a, &m)?.is_some(), vec![("dim", m.dim())]))
            })();
            auto_p.record_result(out, || json!({ "module": mjson(&m) }))?;
            let out = (|| {
                let a = cofun::relative_auto_equivalence(&d, &m)?;
                let b = cofun::relative_auto_equivalence_inverse(&d, &a)?;
                Ok((modcat::module_iso_search(&b, &m)?.is_some(), vec![("dim", m.dim())]))
            })();
            round.record_result(out, || json!({ "module": mjson(&m) }))?;
        }
        rep.checks.push(auto_p);
        rep.checks.push(round);
    } else {
        rep.notes.push("the algebra is not self-injective; the relative auto-equivalence checks do not apply".into());
    }
    Ok(rep.finish())
}

/// The seeded complex corpus of the resolution and crepancy suites.
pub struct ComplexCorpus {
    pub projective: Vec<Complex>,
    pub modules: Vec<Complex>,
    pub functors: Vec<FunComplex>,
}

pub fn complex_corpus(sub: &Arc<Subcat>, cfg: &VerifyConfig, size: usize) -> Result<ComplexCorpus> {
    let alg = &sub.base;
    let mut r = cfg.rng(21);
    let np = (size * 3 / 10).max(1);
    let nm = (size * 3 / 10).max(1);
    let nf = size.saturating_sub(np + nm).max(1);
    let projective = corpus::projective_complexes(alg, &mut r, np, cfg.max_dim)?;
    let modules = corpus::module_complexes(alg, &mut r, nm, cfg.max_dim)?;
    let functors = corpus::functor_complexes(sub, &mut r, nf, cfg.max_dim)?;
    Ok(ComplexCorpus { projective, modules, functors })
}

pub fn resolution_suite(alg: &Arc<Algebra>, name: &str, cfg: &VerifyConfig) -> Result<Report> {
    let suite = Suite::Resolution;
    let mut rep = header(suite, alg, name, cfg, cfg.subcat.name());
    let Some(sub) = prepare_subcat(alg, cfg, &mut rep)? else {
        return Ok(rep.finish());
    };
    if modcat::syzygy_gldim(alg, cfg.cap(alg))?.is_some() {
        rep.notes.push("the algebra has finite global dimension; the checks run all the same".into());
    }
    let size = cfg.size(suite);
    let corpus = complex_corpus(&sub, cfg, size)?;

    let mut gl = CheckRecord::new("finite-global-dimension", "the endomorphism algebra of gen has finite global dimension");
    let cap = cfg.cap(sub.gamma());
    let g = modcat::syzygy_gldim(sub.gamma(), cap)?;
    gl.record(g.is_some(), &[("gldim", g.unwrap_or(cap + 1))], || json!({ "gldim": g, "cap": cap }));
    rep.checks.push(gl);

    let mut unit = CheckRecord::new("unit-identity", "va applied termwise to (−, P) returns P, term by term and differential by differential");
    let mut rep_ker = CheckRecord::new("kernel-characterization", "va F is acyclic exactly when F(Λ) is acyclic");
    for p in &corpus.projective {
        let out = derived::unit_identity(&sub, p).map(|ok| (ok, vec![("terms", p.terms.len())]));
        unit.record_result(out, || json!({ "complex": cjson(p) }))?;
        let out = (|| {
            let (c, _) = derived::termwise_representable(&sub, p)?;
            let v = derived::kernel_characterization(&c)?;
            Ok((v == p.is_acyclic(), vec![]))
        })();
        rep_ker.record_result(out, || json!({ "projective_complex": cjson(p) }))?;
    }
    rep.checks.push(unit);

    let mut ess = CheckRecord::new("essential-surjectivity", "every complex of modules is va of its termwise presentation by projectives");
    for m in &corpus.modules {
        let out = derived::essentially_surjective_on(&sub, m).map(|ok| (ok, vec![("terms", m.terms.len())]));
        ess.record_result(out, || json!({ "complex": cjson(m) }))?;
    }
    rep.checks.push(ess);

    let mut dec = CheckRecord::new(
        "complex-decomposition",
        "0 -> F0 -> F -> (−, va F)| -> F1 -> 0 is degreewise exact, made of chain maps, with F0 and F1 vanishing on projectives",
    );
    let mut cones = CheckRecord::new("va-commutes-with-cones", "va of a cone and the cone of va have the same homology");
    let mut adj = CheckRecord::new("derived-adjunction", "K((−,P), F) -> K(P, va F) is a linear isomorphism");
    for (k, c) in corpus.functors.iter().enumerate() {
        let out = derived::kernel_characterization(c).map(|_| (true, vec![("terms", c.terms.len())]));
        rep_ker.record_result(out, || json!({ "complex": fcjson(c) }))?;
        let out = (|| {
            let d = derived::complex_decomposition(c)?;
            let ok = d.degreewise_exact()
                && d.maps_are_chain_maps()
                && derived::vanishes_on_projectives(&sub, &d.f0)?
                && derived::vanishes_on_projectives(&sub, &d.f1)?;
            Ok((ok, vec![]))
        })();
        dec.record_result(out, || json!({ "complex": fcjson(c) }))?;
        if c.diffs.len() == 1 {
            let out = cone_check(c);
            cones.record_result(out, || json!({ "complex": fcjson(c) }))?;
        }
        let p = &corpus.projective[k % corpus.projective.len()];
        let out = derived::adjunction_check_derived(p, c).map(|a| (a.is_iso(), adj_dims(&a)));
        adj.record_result(out, || json!({ "projective_complex": cjson(p), "complex": fcjson(c) }))?;
    }
    for (k, m) in corpus.modules.iter().enumerate() {
        let p = &corpus.projective[(k * 7 + 3) % corpus.projective.len()];
        let out = (|| {
            let (lift, _) = derived::lift_by_projectives(&sub, m)?;
            let a = derived::adjunction_check_derived(p, &lift)?;
            Ok((a.is_iso(), adj_dims(&a)))
        })();
        adj.record_result(out, || json!({ "projective_complex": cjson(p), "module_complex": cjson(m) }))?;
    }
    rep.checks.push(rep_ker);
    rep.checks.push(dec);
    rep.checks.push(cones);
    rep.checks.push(adj);
    Ok(rep.finish())
}

/// Homology of `va(cone η)` against `cone(va η)` for a two-term complex.
fn cone_check(c: &FunComplex) -> Result<(bool, Vec<(&'static str, usize)>)> {
    let z = c.zeta_complex()?;
    let a = Complex::stalk(&z.terms[0], 0);
    let b = Complex::stalk(&z.terms[1], 0);
    let eta = ChainMap { lo: 0, comps: vec![z.diffs[0].clone()] };
    let (cn, _, _) = derived::cone(&a, &b, &eta)?;
    let lifted = FunComplex::from_zeta(&c.sub, &cn)?;
    let lhs = derived::termwise_to_module(&lifted)?.homology_dims();
    let va = derived::termwise_to_module(c)?;
    let va_a = Complex::stalk(&va.terms[0], 0);
    let va_b = Complex::stalk(&va.terms[1], 0);
    let veta = ChainMap { lo: 0, comps: vec![va.diffs[0].clone()] };
    let (vcn, _, _) = derived::cone(&va_a, &va_b, &veta)?;
    let rhs = vcn.homology_dims();
    let total: usize = rhs.iter().map(|x| x.1).sum();
    Ok((lhs == rhs, vec![("homology", total)]))
}

pub fn crepant_suite(alg: &Arc<Algebra>, name: &str, cfg: &VerifyConfig) -> Result<Report> {
    let suite = Suite::Crepant;
    if !modcat::is_self_injective(alg)? {
        return Err(Error::Precondition(format!("{name} is not self-injective")));
    }
    let mut rep = header(suite, alg, name, cfg, cfg.subcat.name());
    let Some(sub) = prepare_subcat(alg, cfg, &mut rep)? else {
        return Ok(rep.finish());
    };
    let size = cfg.size(suite);
    let corpus = complex_corpus(&sub, cfg, size)?;
    let md = cfg.max_dim;

    let mut adj = CheckRecord::new("derived-right-adjunction", "K(F, (−,P)) -> K(va F, P) is a linear isomorphism");
    for (k, c) in corpus.functors.iter().enumerate() {
        let p = &corpus.projective[k % corpus.projective.len()];
        let out = derived::right_adjunction_check_derived(c, p).map(|a| (a.is_iso(), adj_dims(&a)));
        adj.record_result(out, || json!({ "projective_complex": cjson(p), "complex": fcjson(c) }))?;
    }
    for (k, m) in corpus.modules.iter().enumerate() {
        let p = &corpus.projective[(k * 7 + 3) % corpus.projective.len()];
        let out = (|| {
            let (lift, _) = derived::lift_by_projectives(&sub, m)?;
            let a = derived::right_adjunction_check_derived(&lift, p)?;
            Ok((a.is_iso(), adj_dims(&a)))
        })();
        adj.record_result(out, || json!({ "projective_complex": cjson(p), "module_complex": cjson(m) }))?;
    }
    rep.checks.push(adj);

    let mut inj = CheckRecord::new(
        "restricted-hom-of-injective-is-injective",
        "Ext^1(C, (−,I)|) = 0 and Hom(−, (−,I)|) is exact on short exact sequences, for injective I",
    );
    let op = Arc::new(alg.opposite());
    let rad = op.radical().ok_or_else(|| Error::Precondition("the algebra needs radical data".into()))?;
    let mut injectives = Vec::new();
    for c in 0..rad.class_count() {
        let p = modcat::indecomposable_projective(&op, c)?;
        injectives.push(fpfun::restricted_hom(&sub, &modcat::dual_module_over(&p, alg)?)?.functor);
    }
    let mut r = cfg.rng(31);
    let ses = size.max(50);
    for k in 0..ses {
        let g = &injectives[k % injectives.len()];
        let (a, b) = corpus::random_functor_ses(&sub, &mut r, md)?;
        let out = (|| {
            let e = fpfun::fp_ext1(&b.dst, g)?;
            let ha = fpfun::fp_hom(&a.src, g)?.len();
            let hb = fpfun::fp_hom(&a.dst, g)?.len();
            let hc = fpfun::fp_hom(&b.dst, g)?.len();
            Ok((e == 0 && hb == ha + hc, vec![("ext1", e), ("hom_middle", hb)]))
        })();
        inj.record_result(out, || json!({ "sub": fjson(&a.src), "middle": fjson(&a.dst), "quotient": fjson(&b.dst) }))?;
    }
    rep.checks.push(inj);

    let mut orth = CheckRecord::new(
        "mod0-complexes-orthogonal-to-injectives",
        "K(G, (−,I)) = 0 for complexes G vanishing on projectives and complexes I of injectives",
    );
    let mut r = cfg.rng(32);
    for k in 0..size {
        let lo = -(corpus_index(&mut r, 2) as i32);
        let g = if k % 2 == 0 {
            FunComplex::stalk(&corpus::random_mod0_functor(&sub, &mut r, md)?, lo)
        } else {
            let a = corpus::random_mod0_functor(&sub, &mut r, md)?;
            let b = corpus::random_mod0_functor(&sub, &mut r, md)?;
            let eta = corpus::random_functor_morphism(&a, &b, &mut r)?;
            FunComplex { sub: sub.clone(), lo, terms: vec![a, b], diffs: vec![eta] }
        };
        let p = &corpus.projective[k % corpus.projective.len()];
        let out = (|| {
            let (rp, _) = derived::termwise_representable(&sub, p)?;
            let h = derived::khom(&g.zeta_complex()?, &rp.zeta_complex()?)?;
            Ok((h.dim() == 0, vec![("khom", h.dim())]))
        })();
        orth.record_result(out, || json!({ "complex": fcjson(&g), "injective_complex": cjson(p) }))?;
    }
    rep.checks.push(orth);
    Ok(rep.finish())
}
