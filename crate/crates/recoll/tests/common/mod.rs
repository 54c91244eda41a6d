//! Brute-force oracles over small prime fields: they enumerate every
//! candidate map instead of solving linear systems.

#![allow(dead_code)]

use std::collections::HashSet;

use recoll::exactla::{FieldChar, FpMatrix};
use recoll::fpfun::FpFunctor;
use recoll::modcat::Module;

/// Every vector of length `n` over `F_p`, in lexicographic order.
pub fn all_vectors(f: FieldChar, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = f.p() as u64;
    let total = p.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0u32; n];
        for x in v.iter_mut() {
            *x = (k % p) as u32;
            k /= p;
        }
        v
    })
}

fn is_hom(src: &Module, dst: &Module, mat: &FpMatrix) -> bool {
    (0..src.algebra().dim()).all(|b| mat.mul(src.act(b)) == dst.act(b).mul(mat))
}

/// All module homomorphisms `src -> dst`, by enumerating every matrix.
pub fn brute_homs(src: &Module, dst: &Module) -> Vec<FpMatrix> {
    let f = src.field();
    let (r, c) = (dst.dim(), src.dim());
    all_vectors(f, r * c)
        .map(|v| FpMatrix::from_vec(f, r, c, v))
        .filter(|m| is_hom(src, dst, m))
        .collect()
}

/// Number of natural transformations `F -> G`.
pub fn brute_hom_count(a: &FpFunctor, b: &FpFunctor) -> usize {
    brute_homs(a.zeta(), b.zeta()).len()
}

/// Number of extension classes `Ext^1(F, G)`, counted as
/// `|Hom(Ω, ζG)| / |image of Hom(P0, ζG)|` for the free cover `P0 -> ζF`
/// with kernel `Ω`.
pub fn brute_ext1_count(a: &FpFunctor, b: &FpFunctor) -> usize {
    let sub = &a.sub;
    let f = sub.base.field();
    let top = a.top().to_vec();
    let p0 = sub.free_module(&top);
    let kernel = a.zeta_projection().kernel_basis().transpose();
    let (omega, incl) = p0.submodule(&kernel).expect("kernel is a submodule");
    let g = b.zeta();
    let from_omega = brute_homs(&omega, g).len();
    // Maps out of P0 are determined by the images of the generators.
    let mut restricted = HashSet::new();
    let ngen = top.len();
    for v in all_vectors(f, ngen * g.dim()) {
        let images: Vec<&[u32]> = v.chunks(g.dim().max(1)).take(ngen).collect();
        let mut mat = FpMatrix::zeros(f, g.dim(), p0.dim());
        for j in 0..p0.dim() {
            let mut e = vec![0u32; p0.dim()];
            e[j] = 1;
            let mut col = vec![0u32; g.dim()];
            for (part, img) in sub.split_free(&top, &e).iter().zip(&images) {
                let w = g.act_elem(part).mul_vec(img);
                for (x, y) in col.iter_mut().zip(w) {
                    *x = f.add(*x, y);
                }
            }
            for (i, x) in col.into_iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        if is_hom(&p0, g, &mat) {
            restricted.insert(mat.mul(&incl.mat).data().to_vec());
        }
    }
    assert_eq!(from_omega % restricted.len(), 0);
    from_omega / restricted.len()
}

/// `log_p(n)` for an exact power of `p`.
pub fn log_p(f: FieldChar, n: usize) -> usize {
    let p = f.p() as usize;
    let (mut k, mut m) = (0, 1);
    while m < n {
        m *= p;
        k += 1;
    }
    assert_eq!(m, n, "{n} is not a power of {p}");
    k
}

/// `dim Hom(src, dst)` from the linear conditions `X·a_src = a_dst·X`,
/// assembled entry by entry.
pub fn hom_dim_by_equations(src: &Module, dst: &Module) -> usize {
    let f = src.field();
    let (r, c) = (dst.dim(), src.dim());
    let vars = r * c;
    if vars == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for b in 0..src.algebra().dim() {
        let (a, d) = (src.act(b), dst.act(b));
        for i in 0..r {
            for j in 0..c {
                // (X a)_{ij} - (d X)_{ij} = Σ_k X_{ik} a_{kj} - Σ_k d_{ik} X_{kj}
                let mut row = vec![0u32; vars];
                for k in 0..c {
                    let e = &mut row[i * c + k];
                    *e = f.add(*e, a.get(k, j));
                }
                for k in 0..r {
                    let e = &mut row[k * c + j];
                    *e = f.sub(*e, d.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    vars - FpMatrix::from_row_vecs(f, vars, &rows).rank()
}
