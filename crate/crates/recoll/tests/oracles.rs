mod common;

use std::sync::Arc;

use recoll::aalgebra::{build_aalgebra, layer_module};
use recoll::algebra::Algebra;
use recoll::corpus;
use recoll::fpfun::{self, FpFunctor};
use recoll::modcat::{self, hom_basis};
use recoll::subcat::{GMat, Subcat};

use common::{brute_ext1_count, brute_hom_count, brute_homs, log_p};

fn bundled(name: &str, p: u64) -> Arc<Algebra> {
    corpus::bundled(name).unwrap().build(Some(p)).unwrap()
}

/// Random functor pairs at p = 2 whose values at `gen` have dimension at most 4.
fn small_pairs(count: usize, seed: u64) -> Vec<(FpFunctor, FpFunctor)> {
    let mut out = Vec::new();
    let names = ["dual-numbers", "a2", "truncated-cubic", "square-zero-2"];
    let mut rng = corpus::rng(seed);
    let mut k = 0;
    while out.len() < count {
        let alg = bundled(names[k % names.len()], 2);
        let sub = Subcat::radical_layers(&alg).unwrap();
        let a = corpus::random_functor(&sub, &mut rng, 4).unwrap();
        let b = corpus::random_functor(&sub, &mut rng, 4).unwrap();
        if a.zeta_dim() > 0 && b.zeta_dim() > 0 {
            out.push((a, b));
        }
        k += 1;
    }
    out
}

#[test]
fn fp_hom_matches_enumeration_at_p2() {
    let pairs = small_pairs(24, 1);
    let mut nonzero = 0;
    for (a, b) in &pairs {
        let count = brute_hom_count(a, b);
        let dim = fpfun::fp_hom(a, b).unwrap().len();
        assert_eq!(log_p(a.sub.base.field(), count), dim, "{:?} -> {:?}", a.d, b.d);
        nonzero += (dim > 0) as usize;
    }
    assert!(nonzero >= 5, "too few nonzero Hom spaces: {nonzero}");
}

#[test]
fn fp_ext1_matches_enumeration_at_p2() {
    let pairs = small_pairs(30, 2);
    let mut checked = 0;
    let mut nonzero = 0;
    for (a, b) in &pairs {
        let omega = a.sub.free_dim(a.top()) - a.zeta_dim();
        if omega * b.zeta_dim() > 16 {
            continue;
        }
        let count = brute_ext1_count(a, b);
        let dim = fpfun::fp_ext1(a, b).unwrap();
        assert_eq!(log_p(a.sub.base.field(), count), dim, "{:?} -> {:?}", a.d, b.d);
        checked += 1;
        nonzero += (dim > 0) as usize;
    }
    assert!(checked >= 20, "only {checked} instances within the enumeration bound");
    assert!(nonzero >= 1);
}

#[test]
fn ext1_of_simple_functor_over_dual_numbers() {
    // gen = Λ ⊕ k, F = coker((−,Λ) -> (−,k)) induced by Λ ↠ k.
    let alg = bundled("dual-numbers", 2);
    let sub = Subcat::radical_layers(&alg).unwrap();
    let (simple, regular) = (0..sub.summand_count())
        .fold((None, None), |(s, r), i| match sub.summand(i).dim() {
            1 => (Some(i), r),
            2 => (s, Some(i)),
            _ => (s, r),
        });
    let (s, r) = (simple.unwrap(), regular.unwrap());
    let epi = hom_basis(sub.summand(r), sub.summand(s)).unwrap();
    assert_eq!(epi.len(), 1);
    let mut d = GMat::zeros(sub.gdim(), &[s], &[r]);
    d.set(0, 0, sub.end.block(r, s).coords(&epi[0].mat).map(|c| embed(&sub, r, s, &c)).unwrap());
    let f = FpFunctor::new(&sub, d).unwrap();
    assert!(f.vanishes_on_projectives().unwrap());
    let dim = fpfun::fp_ext1(&f, &f).unwrap();
    assert_eq!(log_p(alg.field(), brute_ext1_count(&f, &f)), dim);
    // F is the simple top of (−, k), and the quiver of End(Λ ⊕ k) has no loop at k.
    assert_eq!(dim, 0);
}

fn embed(sub: &Subcat, src: usize, dst: usize, c: &[u32]) -> Vec<u32> {
    let block = sub.end.block(src, dst);
    let mut x = vec![0u32; sub.gdim()];
    for (t, &v) in c.iter().enumerate() {
        x[block.start + t] = v;
    }
    x
}

#[test]
fn dual_numbers_aalgebra_known_values() {
    for p in [2, 3, 101] {
        let alg = bundled("dual-numbers", p);
        let a = build_aalgebra(&alg).unwrap();
        // Σ dim Hom(Λ/J^i, Λ/J^j) by enumeration.
        let layers: Vec<_> = (1..=2).map(|i| layer_module(&alg, i).unwrap()).collect();
        if p < 5 {
            let mut total = 0;
            for x in &layers {
                for y in &layers {
                    total += log_p(alg.field(), brute_homs(x, y).len());
                }
            }
            assert_eq!(total, 5);
        }
        assert_eq!(a.dim_generator(), 3);
        assert_eq!(a.tilde().dim(), 5);
        assert_eq!(a.gldim(6).unwrap(), Some(2));
        assert!(a.corner_iso_verified().unwrap());
    }
}

#[test]
fn layer_hom_total_matches_enumeration() {
    for name in ["a2", "truncated-cubic", "square-zero-2"] {
        let alg = bundled(name, 2);
        let a = build_aalgebra(&alg).unwrap();
        let n = alg.nilpotency_index();
        let layers: Vec<_> = (1..=n).map(|i| layer_module(&alg, i).unwrap()).collect();
        let mut total = 0;
        for x in &layers {
            for y in &layers {
                total += log_p(alg.field(), brute_homs(x, y).len());
            }
        }
        assert_eq!(total, a.tilde().dim(), "{name}");
        assert_eq!(total, a.layer_hom_total().unwrap(), "{name}");
    }
}

#[test]
fn global_dimensions_of_bundled_algebras() {
    let gl = |name: &str| {
        let alg = bundled(name, 101);
        modcat::syzygy_gldim(&alg, modcat::default_gldim_cap(&alg)).unwrap()
    };
    assert_eq!(gl("field"), Some(0));
    assert_eq!(gl("a2"), Some(1));
    assert_eq!(gl("dual-numbers"), None);
    assert_eq!(gl("nakayama2"), None);
}
