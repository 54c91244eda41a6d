//! Endomorphism algebras of direct sums, and the algebra
//! `End(⊕_{1≤i≤n} Λ/J^i)` with its corner idempotent recovering `Λ`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, RadicalData};
use crate::exactla::{Coordinates, FpMatrix, RowSpace};
use crate::modcat::{self, direct_sum, hom_basis, Module, ModuleMorphism};
use crate::{Error, Result};

/// Hom basis between two summands, as `dst.dim x src.dim` blocks.
#[derive(Clone, Debug)]
pub struct HomBlock {
    pub src: usize,
    pub dst: usize,
    pub start: usize,
    pub maps: Vec<FpMatrix>,
    coords: Option<Coordinates>,
}

impl HomBlock {
    pub fn len(&self) -> usize {
        self.maps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Coordinates of a block map in this block's basis.
    pub fn coords(&self, m: &FpMatrix) -> Option<Vec<u32>> {
        match &self.coords {
            None => m.is_zero().then(Vec::new),
            Some(c) => c.coords(m.data()),
        }
    }
}

/// `End(X_1 ⊕ ... ⊕ X_k)` with basis the Hom bases between summands, ordered
/// by (source summand, target summand, Hom basis order). Multiplication is
/// composition: `f·g = f∘g`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub summands: Vec<Module>,
    pub total: Module,
    pub offsets: Vec<usize>,
    pub blocks: Vec<HomBlock>,
    /// `block_index[s][t]` locates the block of maps `X_s -> X_t`.
    block_index: Vec<Vec<usize>>,
    pub alg: Arc<Algebra>,
    /// Coordinates of the identity of each summand.
    pub identities: Vec<Vec<u32>>,
}

impl EndAlgebra {
    pub fn build(base: &Arc<Algebra>, summands: Vec<Module>) -> Result<Self> {
        let f = base.field();
        let k = summands.len();
        let (total, _, _) = direct_sum(base, &summands);
        let offsets: Vec<usize> = summands
            .iter()
            .scan(0, |s, m| {
                let o = *s;
                *s += m.dim();
                Some(o)
            })
            .collect();
        let mut blocks = Vec::new();
        let mut block_index = vec![vec![0; k]; k];
        let mut start = 0;
        for s in 0..k {
            for t in 0..k {
                let maps: Vec<FpMatrix> = hom_basis(&summands[s], &summands[t])?.into_iter().map(|h| h.mat).collect();
                let coords = if maps.is_empty() {
                    None
                } else {
                    let rows: Vec<Vec<u32>> = maps.iter().map(|m| m.data().to_vec()).collect();
                    let len = summands[s].dim() * summands[t].dim();
                    Some(Coordinates::new(&FpMatrix::from_row_vecs(f, len, &rows))?)
                };
                block_index[s][t] = blocks.len();
                let len = maps.len();
                blocks.push(HomBlock { src: s, dst: t, start, maps, coords });
                start += len;
            }
        }
        let dim = start;
        let mut labels = Vec::with_capacity(dim);
        for b in &blocks {
            for j in 0..b.len() {
                labels.push(format!("{}>{}:{}", b.src, b.dst, j));
            }
        }
        let mut mult = vec![0u32; dim * dim * dim];
        for a in &blocks {
            for b in blocks.iter().filter(|b| b.dst == a.src) {
                let target = &blocks[block_index[b.src][a.dst]];
                for (ia, ma) in a.maps.iter().enumerate() {
                    for (ib, mb) in b.maps.iter().enumerate() {
                        let prod = ma.mul(mb);
                        let c = target
                            .coords(&prod)
                            .ok_or_else(|| Error::Verification("composite outside the Hom basis".into()))?;
                        let row = ((a.start + ia) * dim + b.start + ib) * dim;
                        mult[row + target.start..row + target.start + c.len()].copy_from_slice(&c);
                    }
                }
            }
        }
        let mut identities = Vec::new();
        let mut unit = vec![0u32; dim];
        for s in 0..k {
            let blk = &blocks[block_index[s][s]];
            let id = FpMatrix::identity(f, summands[s].dim());
            let c = blk.coords(&id).ok_or_else(|| Error::Verification("identity outside the Hom basis".into()))?;
            let mut v = vec![0u32; dim];
            v[blk.start..blk.start + c.len()].copy_from_slice(&c);
            for (u, x) in unit.iter_mut().zip(&v) {
                *u = f.add(*u, *x);
            }
            identities.push(v);
        }
        let mut out = EndAlgebra {
            summands,
            total,
            offsets,
            blocks,
            block_index,
            alg: Arc::new(Algebra::from_table(f, labels.clone(), mult.clone(), unit.clone(), None)?),
            identities,
        };
        if let Some(rad) = out.local_radical_data()? {
            out.alg = Arc::new(Algebra::from_table(f, labels, mult, unit, Some(rad))?);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn block(&self, s: usize, t: usize) -> &HomBlock {
        &self.blocks[self.block_index[s][t]]
    }

    /// Endomorphism of the total module for a basis element.
    pub fn basis_endo(&self, idx: usize) -> FpMatrix {
        let mut v = vec![0u32; self.dim()];
        v[idx] = 1;
        self.element_endo(&v)
    }

    pub fn element_endo(&self, x: &[u32]) -> FpMatrix {
        let f = self.alg.field();
        let n = self.total.dim();
        let mut out = FpMatrix::zeros(f, n, n);
        for b in &self.blocks {
            let mut blk = FpMatrix::zeros(f, self.summands[b.dst].dim(), self.summands[b.src].dim());
            let mut any = false;
            for (j, m) in b.maps.iter().enumerate() {
                let c = x[b.start + j];
                if c != 0 {
                    blk.add_scaled(c, m);
                    any = true;
                }
            }
            if any {
                out.set_block(self.offsets[b.dst], self.offsets[b.src], &blk);
            }
        }
        out
    }

    /// Coordinates of an endomorphism of the total module.
    pub fn endo_coords(&self, m: &FpMatrix) -> Option<Vec<u32>> {
        let mut out = vec![0u32; self.dim()];
        for b in &self.blocks {
            let (r, c) = (self.summands[b.dst].dim(), self.summands[b.src].dim());
            let blk = m.block(self.offsets[b.dst], self.offsets[b.src], r, c);
            let x = b.coords(&blk)?;
            out[b.start..b.start + x.len()].copy_from_slice(&x);
        }
        Some(out)
    }

    /// Radical data when every summand has a simple top.
    ///
    /// A map between local summands lies in the radical unless it is onto,
    /// i.e. unless its composite with the top projection of the target is
    /// nonzero; such maps exist only between isomorphic summands.
    fn local_radical_data(&self) -> Result<Option<RadicalData>> {
        let f = self.alg.field();
        if self.total.algebra().radical().is_none() {
            return Ok(None);
        }
        let mut tops = Vec::new();
        for x in &self.summands {
            if x.top_generators()?.len() != 1 {
                return Ok(None);
            }
            let span = x.radical_span()?;
            tops.push(x.quotient(&span).1.mat);
        }
        let k = self.summands.len();
        let onto = |s: usize, t: usize| -> bool {
            self.summands[s].dim() == self.summands[t].dim()
                && self.block(s, t).maps.iter().any(|m| !tops[t].mul(m).is_zero())
        };
        let mut classes = vec![usize::MAX; k];
        let mut next = 0;
        for s in 0..k {
            if classes[s] != usize::MAX {
                continue;
            }
            classes[s] = next;
            for t in s + 1..k {
                if classes[t] == usize::MAX && onto(s, t) {
                    classes[t] = next;
                }
            }
            next += 1;
        }
        let dim = self.dim();
        let mut rad = RowSpace::new(f, dim);
        for b in &self.blocks {
            if classes[b.src] != classes[b.dst] {
                for j in 0..b.len() {
                    let mut v = vec![0u32; dim];
                    v[b.start + j] = 1;
                    rad.insert(&v);
                }
                continue;
            }
            let cols: Vec<Vec<u32>> = b.maps.iter().map(|m| tops[b.dst].mul(m).data().to_vec()).collect();
            if cols.is_empty() {
                continue;
            }
            let len = cols[0].len();
            let sys = FpMatrix::from_col_vecs(f, len, &cols);
            for kv in sys.kernel_basis().row_vecs() {
                let mut v = vec![0u32; dim];
                v[b.start..b.start + kv.len()].copy_from_slice(&kv);
                rad.insert(&v);
            }
        }
        Ok(Some(RadicalData { rad: rad.to_rref(), idempotents: self.identities.clone(), classes }))
    }

    /// Quotient of this algebra by the maps factoring through a projective,
    /// with the quotient map (rows: quotient coordinates).
    pub fn stable_quotient(&self) -> Result<(Algebra, FpMatrix)> {
        let f = self.alg.field();
        let dim = self.dim();
        let cover = modcat::projective_epi(&self.total);
        let mut ideal = RowSpace::new(f, dim);
        for g in hom_basis(&self.total, &cover.src)? {
            let c = self
                .endo_coords(&cover.mat.mul(&g.mat))
                .ok_or_else(|| Error::Verification("composite outside the endomorphism basis".into()))?;
            ideal.insert(&c);
        }
        let ideal_rows = ideal.to_rref();
        let ideal_t = ideal_rows.transpose();
        let q = if ideal_rows.rows() == 0 { FpMatrix::identity(f, dim) } else { ideal_t.cokernel_projection() };
        let comp = if ideal_rows.rows() == 0 { (0..dim).collect() } else { ideal_t.cokernel_complement() };
        let d = comp.len();
        let mut mult = vec![0u32; d * d * d];
        for (a, &ia) in comp.iter().enumerate() {
            for (b, &ib) in comp.iter().enumerate() {
                let prod: Vec<u32> = (0..dim).map(|k| self.alg.coeff(ia, ib, k)).collect();
                let c = q.mul_vec(&prod);
                mult[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&c);
            }
        }
        let unit = q.mul_vec(self.alg.unit());
        let labels = comp.iter().map(|&i| self.alg.labels()[i].clone()).collect();
        Ok((Algebra::from_table(f, labels, mult, unit, None)?, q))
    }
}

/// One indecomposable piece `e_v Λ / e_v J^i` of the generator.
#[derive(Clone, Debug, Serialize)]
pub struct PieceInfo {
    pub layer: usize,
    pub class: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct AAlgebra {
    pub base: Arc<Algebra>,
    pub pieces: Vec<PieceInfo>,
    pub end: EndAlgebra,
    /// Projection onto the pieces with `i = n`, in endomorphism coordinates.
    pub e: Vec<u32>,
    /// Columns: the images of the basis of `Λ` under `λ -> e∘(λ·)∘e`.
    pub witness: FpMatrix,
}

/// `e_v Λ / e_v J^i` as a module, with the basis of `e_v Λ` used to build it.
pub fn layer_piece(base: &Arc<Algebra>, class: usize, i: usize) -> Result<(Module, FpMatrix)> {
    let rad = base.radical().ok_or_else(|| Error::Precondition("layer pieces need radical data".into()))?;
    let ev = &rad.idempotents[rad.class_reps()[class]];
    let (p, basis) = modcat::right_ideal(base, ev);
    let coords = Coordinates::new(&basis.transpose())?;
    let ji = base.radical_power(i);
    let cols: Vec<Vec<u32>> = ji
        .row_vecs()
        .iter()
        .map(|r| coords.coords(&base.mul(ev, r)).expect("e J^i lies in e Λ"))
        .collect();
    let span = FpMatrix::from_col_vecs(base.field(), p.dim(), &cols);
    Ok((p.quotient(&span).0, basis))
}

/// Builds `End(⊕_{1≤i≤n} Λ/J^i)`, splitting each `Λ/J^i` into its local
/// pieces ordered by (i, vertex class).
pub fn build_aalgebra(base: &Arc<Algebra>) -> Result<AAlgebra> {
    let f = base.field();
    let rad = base.radical().ok_or_else(|| Error::Precondition("the base algebra needs radical data".into()))?;
    let n = base.nilpotency_index();
    let classes = rad.class_count();
    let mut pieces = Vec::new();
    let mut modules = Vec::new();
    let mut top_bases = Vec::new();
    for i in 1..=n {
        for c in 0..classes {
            let (m, basis) = layer_piece(base, c, i)?;
            if m.dim() == 0 {
                continue;
            }
            pieces.push(PieceInfo { layer: i, class: c, dim: m.dim() });
            modules.push(m);
            top_bases.push(basis);
        }
    }
    let end = EndAlgebra::build(base, modules)?;
    let dim = end.dim();
    let top: Vec<usize> = (0..pieces.len()).filter(|&s| pieces[s].layer == n).collect();
    let mut e = vec![0u32; dim];
    for &s in &top {
        for (x, y) in e.iter_mut().zip(&end.identities[s]) {
            *x = f.add(*x, *y);
        }
    }
    // Left multiplication by λ on Λ = ⊕_v e_v Λ, in piece coordinates.
    let coords: Vec<Coordinates> =
        top.iter().map(|&s| Coordinates::new(&top_bases[s].transpose())).collect::<Result<_>>()?;
    let mut witness_cols = Vec::with_capacity(base.dim());
    for l in 0..base.dim() {
        let lambda = base.basis_vector(l);
        let mut endo = FpMatrix::zeros(f, end.total.dim(), end.total.dim());
        for &s in &top {
            for (t_idx, w) in top_bases[s].col_vecs().iter().enumerate() {
                let img = base.mul(&lambda, w);
                for (vs, &t) in top.iter().enumerate() {
                    let ev = &rad.idempotents[rad.class_reps()[pieces[t].class]];
                    let part = base.mul(ev, &img);
                    let c = coords[vs].coords(&part).ok_or_else(|| Error::Verification("e_v Λ coordinates".into()))?;
                    for (r, &x) in c.iter().enumerate() {
                        endo.set(end.offsets[t] + r, end.offsets[s] + t_idx, x);
                    }
                }
            }
        }
        let c = end
            .endo_coords(&endo)
            .ok_or_else(|| Error::Verification("left multiplication is not a module map".into()))?;
        witness_cols.push(c);
    }
    let witness = FpMatrix::from_col_vecs(f, dim, &witness_cols);
    Ok(AAlgebra { base: base.clone(), pieces, end, e, witness })
}

impl AAlgebra {
    pub fn dim_generator(&self) -> usize {
        self.end.total.dim()
    }
    pub fn tilde(&self) -> &Arc<Algebra> {
        &self.end.alg
    }

    /// Checks `e² = e` and that the witness is an algebra isomorphism onto `eΛ̃e`.
    pub fn corner_iso_verified(&self) -> Result<bool> {
        let t = self.tilde();
        if t.mul(&self.e, &self.e) != self.e {
            return Ok(false);
        }
        let corner = t.corner(&self.e)?;
        let coords = Coordinates::new(&corner.embedding.transpose())?;
        let mut cols = Vec::new();
        for c in self.witness.col_vecs() {
            match coords.coords(&c) {
                Some(x) => cols.push(x),
                None => return Ok(false),
            }
        }
        if corner.alg.dim() != self.base.dim() {
            return Ok(false);
        }
        let phi = FpMatrix::from_col_vecs(t.field(), corner.alg.dim(), &cols);
        self.base.iso_check(&corner.alg, &phi)
    }

    /// `Σ_{i,j} dim Hom(Λ/J^i, Λ/J^j)` computed on the undecomposed layers.
    pub fn layer_hom_total(&self) -> Result<usize> {
        let n = self.base.nilpotency_index();
        let mut layers = Vec::new();
        for i in 1..=n {
            layers.push(layer_module(&self.base, i)?);
        }
        let mut total = 0;
        for a in &layers {
            for b in &layers {
                total += hom_basis(a, b)?.len();
            }
        }
        Ok(total)
    }

    pub fn gldim(&self, cap: usize) -> Result<Option<usize>> {
        modcat::syzygy_gldim(self.tilde(), cap)
    }
}

/// `Λ/J^i` as a quotient of the regular module.
pub fn layer_module(base: &Arc<Algebra>, i: usize) -> Result<Module> {
    let reg = modcat::regular_module(base);
    let span = base.radical_power(i).transpose();
    Ok(reg.quotient(&span).0)
}

/// A map `X_s -> X_t` as an endomorphism of the total module.
pub fn embed_block(end: &EndAlgebra, s: usize, t: usize, m: &FpMatrix) -> ModuleMorphism {
    let f = end.alg.field();
    let n = end.total.dim();
    let mut out = FpMatrix::zeros(f, n, n);
    out.set_block(end.offsets[t], end.offsets[s], m);
    ModuleMorphism { src: end.total.clone(), dst: end.total.clone(), mat: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, Quiver, RelationTerm, DEFAULT_PATH_CAP};
    use crate::exactla::FieldChar;

    fn truncated_poly(k: usize) -> Arc<Algebra> {
        let q = Quiver { vertices: 1, arrows: vec![Arrow { name: "x".into(), src: 0, dst: 0 }] };
        let rel = vec![RelationTerm { coeff: 1, path: vec!["x".into(); k] }];
        Arc::new(Algebra::from_quiver(&q, &[rel], FieldChar::new(101).unwrap(), DEFAULT_PATH_CAP).unwrap())
    }

    #[test]
    fn dual_numbers_aalgebra() {
        let a = build_aalgebra(&truncated_poly(2)).unwrap();
        assert_eq!(a.dim_generator(), 3);
        assert_eq!(a.end.dim(), 5);
        assert!(a.corner_iso_verified().unwrap());
        assert_eq!(a.layer_hom_total().unwrap(), 5);
        assert_eq!(a.gldim(20).unwrap(), Some(2));
    }

    #[test]
    fn cubic_aalgebra() {
        let a = build_aalgebra(&truncated_poly(3)).unwrap();
        assert_eq!(a.dim_generator(), 6);
        assert_eq!(a.end.dim(), 14);
        assert!(a.corner_iso_verified().unwrap());
        assert!(a.gldim(40).unwrap().is_some());
    }

    #[test]
    fn field_aalgebra_is_field() {
        let q = Quiver { vertices: 1, arrows: vec![] };
        let k = Arc::new(Algebra::from_quiver(&q, &[], FieldChar::new(7).unwrap(), DEFAULT_PATH_CAP).unwrap());
        let a = build_aalgebra(&k).unwrap();
        assert_eq!(a.end.dim(), 1);
        assert_eq!(a.e, vec![1]);
        assert_eq!(a.gldim(4).unwrap(), Some(0));
    }

    #[test]
    fn stable_quotient_of_regular_is_zero() {
        let l = truncated_poly(2);
        let end = EndAlgebra::build(&l, vec![modcat::regular_module(&l)]).unwrap();
        assert_eq!(end.stable_quotient().unwrap().0.dim(), 0);
        let s = modcat::simple_module(&l, 0).unwrap();
        let end2 = EndAlgebra::build(&l, vec![modcat::regular_module(&l), s]).unwrap();
        let (st, _) = end2.stable_quotient().unwrap();
        assert_eq!(st.dim(), 1);
    }
}
