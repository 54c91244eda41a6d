mod common;

use std::sync::Arc;

use proptest::prelude::*;

use recoll::algebra::Algebra;
use recoll::cofun::{self, Duality};
use recoll::corpus::{self, CorpusRng};
use recoll::derived::{self, ChainMap, Complex};
use recoll::exactla::{FieldChar, FpMatrix};
use recoll::fpfun;
use recoll::modcat::{self, hom_basis};
use recoll::subcat::Subcat;

const NAMES: [&str; 6] = ["field", "a2", "dual-numbers", "truncated-cubic", "nakayama2", "square-zero-2"];

fn algebra(idx: usize, p: u64) -> Arc<Algebra> {
    corpus::bundled(NAMES[idx % NAMES.len()]).unwrap().build(Some(p)).unwrap()
}

fn layers(idx: usize, p: u64) -> Arc<Subcat> {
    Subcat::radical_layers(&algebra(idx, p)).unwrap()
}

fn field_and_matrix(max_p: u64) -> impl Strategy<Value = FpMatrix> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 101]), 1usize..6, 1usize..7).prop_flat_map(move |(p, r, c)| {
        let p = p.min(max_p);
        prop::collection::vec(0..p as u32, r * c).prop_map(move |v| {
            FpMatrix::from_vec(FieldChar::new(p).unwrap(), r, c, v)
        })
    })
}

fn params() -> impl Strategy<Value = (usize, u64, u64)> {
    (0..NAMES.len(), prop::sample::select(vec![2u64, 3, 101]), any::<u64>())
}

fn rng(seed: u64) -> CorpusRng {
    corpus::rng(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in field_and_matrix(101)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_rows_are_independent_solutions(m in field_and_matrix(101)) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.rows(), m.cols() - m.rank());
        prop_assert!(m.mul(&k.transpose()).is_zero());
        prop_assert_eq!(k.rank(), k.rows());
    }

    #[test]
    fn rref_is_idempotent(m in field_and_matrix(101)) {
        let r = m.rref().mat;
        prop_assert_eq!(r.rref().mat, r);
    }

    #[test]
    fn solve_agrees_with_enumeration(m in field_and_matrix(3), pick in any::<u64>()) {
        let f = m.field();
        // Half of the right-hand sides are in the image.
        let b = if pick % 2 == 0 {
            let x = common::all_vectors(f, m.cols()).nth((pick / 2) as usize % (f.p() as usize).pow(m.cols() as u32)).unwrap();
            m.mul_vec(&x)
        } else {
            common::all_vectors(f, m.rows()).nth((pick / 2) as usize % (f.p() as usize).pow(m.rows() as u32)).unwrap()
        };
        let solvable = common::all_vectors(f, m.cols()).any(|x| m.mul_vec(&x) == b);
        match m.solve(&b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x), b.clone()),
            None => prop_assert!(!solvable),
        }
        prop_assert_eq!(m.solve(&b).unwrap().is_some(), solvable);
    }

    #[test]
    fn algebras_are_associative_with_strict_radical_filtration(idx in 0..NAMES.len(), p in prop::sample::select(vec![2u64, 3, 101])) {
        let a = algebra(idx, p);
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                prop_assert_eq!(a.mul(a.unit(), &a.basis_vector(i)), a.basis_vector(i));
                prop_assert_eq!(a.mul(&a.basis_vector(i), a.unit()), a.basis_vector(i));
                for k in 0..n {
                    let jk = a.mul(&a.basis_vector(j), &a.basis_vector(k));
                    prop_assert_eq!(a.mul(&ij, &a.basis_vector(k)), a.mul(&a.basis_vector(i), &jk));
                }
            }
        }
        let dims = a.radical_dims();
        let ni = a.nilpotency_index();
        prop_assert_eq!(dims[ni], 0);
        prop_assert!(ni == 0 || dims[ni - 1] > 0);
        prop_assert!(dims.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(a.opposite().opposite().fingerprint(), a.fingerprint());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn short_exact_sequences_balance((idx, p, seed) in params()) {
        let a = algebra(idx, p);
        let (incl, proj) = corpus::random_ses(&a, &mut rng(seed), 6).unwrap();
        prop_assert_eq!(incl.src.dim() + proj.dst.dim(), incl.dst.dim());
        prop_assert!(proj.mat.mul(&incl.mat).is_zero());
        prop_assert_eq!(incl.rank(), incl.src.dim());
        prop_assert_eq!(proj.rank(), proj.dst.dim());
    }

    #[test]
    fn module_category_invariants((idx, p, seed) in params()) {
        let a = algebra(idx, p);
        let mut r = rng(seed);
        let m = corpus::random_module(&a, &mut r, 6).unwrap();
        let reg = modcat::regular_module(&a);
        prop_assert_eq!(hom_basis(&reg, &m).unwrap().len(), m.dim());
        let approx = modcat::right_approximation(&m, &reg).unwrap();
        prop_assert_eq!(approx.rank(), m.dim());
        let proj = corpus::random_projective(&a, &mut r, 6).unwrap();
        prop_assert_eq!(modcat::stable_hom_basis(&m, &proj).unwrap().dim(), 0);
        prop_assert_eq!(modcat::stable_hom_basis(&proj, &m).unwrap().dim(), 0);
        let op = Arc::new(a.opposite());
        let dd = modcat::dual_module_over(&modcat::dual_module_over(&m, &op).unwrap(), &a).unwrap();
        prop_assert!(modcat::module_iso_search(&dd, &m).unwrap().is_some());
    }

    #[test]
    fn evaluation_at_gen_round_trips((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let mut r = rng(seed);
        let f = corpus::random_functor(&sub, &mut r, 6).unwrap();
        let (g, iso) = fpfun::from_gamma_module(&sub, f.zeta()).unwrap();
        prop_assert_eq!(iso.rank(), f.zeta_dim());
        prop_assert!(fpfun::functor_iso(&f, &g).unwrap().is_some());
    }

    #[test]
    fn mod0_values_are_stable_modules((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let (_, q) = sub.end.stable_quotient().unwrap();
        let ideal = q.kernel_basis();
        let f = corpus::random_mod0_functor(&sub, &mut rng(seed), 6).unwrap();
        if f.vanishes_on_projectives().unwrap() {
            for x in ideal.row_vecs() {
                prop_assert!(f.zeta().act_elem(&x).is_zero());
            }
        }
    }

    #[test]
    fn va_is_exact((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let (a, b) = corpus::random_functor_ses(&sub, &mut rng(seed), 6).unwrap();
        let (va, vb) = (a.to_module_map(), b.to_module_map());
        prop_assert!(fpfun::sequence_exact(&[va.mat, vb.mat]));
        prop_assert_eq!(a.src.zeta_dim() + b.dst.zeta_dim(), a.dst.zeta_dim());
    }

    #[test]
    fn restricted_hom_is_fully_faithful((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let mut r = rng(seed);
        let m = corpus::random_module(&sub.base, &mut r, 5).unwrap();
        let n = corpus::random_module(&sub.base, &mut r, 5).unwrap();
        let rm = fpfun::restricted_hom(&sub, &m).unwrap();
        let rn = fpfun::restricted_hom(&sub, &n).unwrap();
        prop_assert_eq!(fpfun::fp_hom(&rm.functor, &rn.functor).unwrap().len(), hom_basis(&m, &n).unwrap().len());
        let (v, _) = rm.functor.to_module();
        prop_assert!(modcat::module_iso_search(&v, &m).unwrap().is_some());
    }

    #[test]
    fn glue_conditions((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let f = corpus::random_functor(&sub, &mut rng(seed), 6).unwrap();
        let (a, b) = fpfun::serre_adjoints(&f).unwrap();
        prop_assert!(a.vanishes_on_projectives().unwrap());
        prop_assert!(b.vanishes_on_projectives().unwrap());
        let (v, _) = f.to_module();
        prop_assert_eq!(v.dim() == 0, f.vanishes_on_projectives().unwrap());
        let m = corpus::random_module(&sub.base, &mut rng(seed ^ 1), 5).unwrap();
        prop_assert!(fpfun::adjunction_check_left(&m, &f).unwrap().is_iso());
        prop_assert!(fpfun::adjunction_check_right(&f, &m).unwrap().is_iso());
    }

    #[test]
    fn duality_is_exact_involution((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let d = Duality::new(&sub).unwrap();
        let mut r = rng(seed);
        let f = corpus::random_functor(&sub, &mut r, 6).unwrap();
        let (_, iso) = cofun::double_dual_iso(&d, &f).unwrap();
        prop_assert!(iso.is_iso());
        let (a, b) = corpus::random_functor_ses(&sub, &mut r, 6).unwrap();
        let da = cofun::dual_functor(&d, &a.src).unwrap();
        let db = cofun::dual_functor(&d, &a.dst).unwrap();
        let dc = cofun::dual_functor(&d, &b.dst).unwrap();
        let x = cofun::dual_morphism(&b, &db, &dc).unwrap();
        let y = cofun::dual_morphism(&a, &da, &db).unwrap();
        prop_assert!(fpfun::sequence_exact(&[x.zeta_map(), y.zeta_map()]));
    }

    #[test]
    fn value_of_tensor_is_identity((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let d = Duality::new(&sub).unwrap();
        let n = corpus::random_module(&d.op, &mut rng(seed), 5).unwrap();
        let t = cofun::tensor_functor(&d, &n).unwrap();
        prop_assert!(modcat::module_iso_search(&t.value_at_regular().unwrap(), &n).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complexes_square_to_zero((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        let mut r = rng(seed);
        for c in corpus::module_complexes(&sub.base, &mut r, 2, 6).unwrap() {
            prop_assert!(c.validate().is_ok());
            let (cn, _, _) = derived::cone(&c, &c, &ChainMap::identity(&c)).unwrap();
            prop_assert!(cn.validate().is_ok());
            prop_assert!(cn.is_acyclic());
        }
        for c in corpus::functor_complexes(&sub, &mut r, 2, 6).unwrap() {
            prop_assert!(c.zeta_complex().unwrap().validate().is_ok());
            prop_assert!(derived::termwise_to_module(&c).unwrap().validate().is_ok());
            let dec = derived::complex_decomposition(&c).unwrap();
            prop_assert!(dec.degreewise_exact() && dec.maps_are_chain_maps());
            prop_assert!(derived::kernel_characterization(&c).is_ok());
        }
    }

    #[test]
    fn unit_identity_is_exact((idx, p, seed) in params()) {
        let sub = layers(idx, p);
        for c in corpus::projective_complexes(&sub.base, &mut rng(seed), 3, 8).unwrap() {
            prop_assert!(derived::unit_identity(&sub, &c).unwrap());
        }
    }

    #[test]
    fn khom_is_homotopy_invariant((idx, p, seed) in params()) {
        let alg = algebra(idx, p);
        let mut r = rng(seed);
        let cs = corpus::module_complexes(&alg, &mut r, 3, 5).unwrap();
        let (c, dst, e) = (&cs[0], &cs[1], &cs[2]);
        // C ⊕ cone(id_E) is homotopy equivalent to C.
        let (contractible, _, _) = derived::cone(e, e, &ChainMap::identity(e)).unwrap();
        let a = contractible.shift(-1);
        let zero = ChainMap { lo: 0, comps: vec![] };
        let (padded, _, _) = derived::cone(&a, c, &zero).unwrap();
        prop_assert_eq!(derived::khom(&padded, dst).unwrap().dim(), derived::khom(c, dst).unwrap().dim());
        prop_assert_eq!(derived::khom(dst, &padded).unwrap().dim(), derived::khom(dst, c).unwrap().dim());
        prop_assert_eq!(derived::khom(&contractible, dst).unwrap().dim(), 0);
    }
}

#[test]
fn zero_complex_has_trivial_khom() {
    let alg = algebra(2, 101);
    let z = Complex::zero(&alg);
    assert_eq!(derived::khom(&z, &z).unwrap().dim(), 0);
}
