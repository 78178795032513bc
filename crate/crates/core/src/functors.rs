//! Translation onto and out of a wall, Zuckerman truncation, and the
//! comparison of the two composite routes `D_λ ∘ T` and `τ ∘ D` from
//! complexes over a regular block to cohomology over the dual side.
//!
//! Everything Lie-theoretic enters as data: a [`WallDatum`] packages the
//! regular algebra `A`, the singular algebra `A_λ`, the translation
//! bimodules and the parabolic vertex subset, and is validated on load.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{idempotent_ideal, quotient_by_idempotents, GradedAlgebra, Surjection};
use crate::dg::{dg_tensor, hom_complex, hom_coordinates, BigradedTable, DGAlgebra, DGBiSlot, DGBimodule, DGModule};
use crate::duality::{totalize, Certified, DualityContext};
use crate::error::{Error, Result};
use crate::exactlin::{sparse_axpy, sparse_to_dense, Matrix, Scalar, SparseVec};
use crate::modules::{
    hom_space, minimal_resolution, projective_cover, projective_module, simple_module, tensor_with_bimodule, Bimodule,
    ComplexOfModules, GradedModule, Table, Tensor,
};

/// Length up to which simples are resolved when checking exactness of
/// tensoring with the translation bimodule.
const EXACTNESS_LENGTH: usize = 4;

fn invalid(msg: String) -> Error {
    Error::InvalidDatum(msg)
}

/// A wall: regular algebra `A`, singular algebra `A_λ`, the `(A, A_λ)`
/// bimodule `X` realizing translation onto the wall, the `(A_λ, A)`
/// bimodule `X'` realizing translation out of it, the vertices of `A`
/// killed by truncation (`A^λ = A / A e A`), a matching of the vertices of
/// `A_λ` with the surviving vertices, and the internal shift `s` of the
/// adjunction `Hom(T m, n) ≅ Hom(m, T' n⟨s⟩)`.
///
/// Immutable once built; [`WallDatum::new`] validates exactness of `− ⊗ X`
/// on resolutions of the simples, that it preserves projectives, the
/// adjunction dimension identity on simples and projectives, and the
/// matching.
#[derive(Clone, Debug)]
pub struct WallDatum {
    regular: Arc<GradedAlgebra>,
    singular: Arc<GradedAlgebra>,
    translation: Bimodule,
    adjoint: Bimodule,
    kill: Vec<usize>,
    matching: Vec<(usize, usize)>,
    shift: i32,
    parabolic: Arc<GradedAlgebra>,
    surjection: Surjection,
    truncation: Bimodule,
}

impl WallDatum {
    pub fn new(
        translation: Bimodule,
        adjoint: Bimodule,
        kill: Vec<usize>,
        matching: Vec<(usize, usize)>,
        shift: i32,
    ) -> Result<Self> {
        let regular = translation.left().clone();
        let singular = translation.right().clone();
        if **adjoint.left() != *singular || **adjoint.right() != *regular {
            return Err(invalid("the adjoint bimodule does not go back from the singular algebra".into()));
        }
        let (parabolic, surjection) = quotient_by_idempotents(&regular, &kill)
            .map_err(|e| invalid(format!("parabolic quotient: {e}")))?;
        let parabolic = Arc::new(parabolic);
        let truncation = Bimodule::quotient(&regular, &parabolic, &surjection)?;
        let w = WallDatum {
            regular,
            singular,
            translation,
            adjoint,
            kill,
            matching,
            shift,
            parabolic,
            surjection,
            truncation,
        };
        w.check_matching()?;
        w.check_exactness()?;
        w.check_adjunction()?;
        Ok(w)
    }

    pub fn regular(&self) -> &Arc<GradedAlgebra> {
        &self.regular
    }

    pub fn singular(&self) -> &Arc<GradedAlgebra> {
        &self.singular
    }

    pub fn translation(&self) -> &Bimodule {
        &self.translation
    }

    pub fn adjoint(&self) -> &Bimodule {
        &self.adjoint
    }

    pub fn kill(&self) -> &[usize] {
        &self.kill
    }

    /// `(vertex of A_λ, vertex of A)` pairs.
    pub fn matching(&self) -> &[(usize, usize)] {
        &self.matching
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// `A^λ`, the quotient of `A` by the killed idempotents.
    pub fn parabolic(&self) -> &Arc<GradedAlgebra> {
        &self.parabolic
    }

    pub fn surjection(&self) -> &Surjection {
        &self.surjection
    }

    /// `A^λ` as an `(A, A^λ)`-bimodule.
    pub fn truncation(&self) -> &Bimodule {
        &self.truncation
    }

    /// Vertex of `A` matched with a vertex of `A_λ`.
    pub fn matched(&self, singular_vertex: usize) -> Option<usize> {
        self.matching
            .iter()
            .find(|(l, _)| *l == singular_vertex)
            .map(|(_, v)| *v)
    }

    fn check_matching(&self) -> Result<()> {
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(l, v) in &self.matching {
            if l >= self.singular.vertex_count() || v >= self.regular.vertex_count() {
                return Err(invalid(format!("matching pair ({l}, {v}) is out of range")));
            }
            if self.kill.contains(&v) {
                return Err(invalid(format!("vertex {} is killed but matched", self.regular.vertices()[v])));
            }
            if !left.insert(l) || !right.insert(v) {
                return Err(invalid("matching is not injective".into()));
            }
        }
        if left.len() != self.singular.vertex_count() || right.len() != self.parabolic.vertex_count() {
            return Err(invalid("matching is not a bijection onto the surviving vertices".into()));
        }
        Ok(())
    }

    /// `Tor_i(S, X) = 0` for `i > 0` on every simple `S` (over the computed
    /// part of its resolution), and `P ⊗ X` is projective for every
    /// indecomposable projective `P`.
    fn check_exactness(&self) -> Result<()> {
        for v in 0..self.regular.vertex_count() {
            let s = simple_module(&self.regular, v)?;
            let r = minimal_resolution(&s, EXACTNESS_LENGTH);
            let c = r.as_complex().tensor(&self.translation)?;
            let lowest = c.start();
            for &(deg, _, _) in c.cohomology_table().keys() {
                if deg != 0 && !(r.truncated && deg == lowest) {
                    return Err(invalid(format!(
                        "tensoring with X is not exact: Tor_{} of the simple at {} is nonzero",
                        -deg,
                        self.regular.vertices()[v]
                    )));
                }
            }
            let p = tensor_with_bimodule(&projective_module(&self.regular, v, 0)?, &self.translation)?.module;
            if !p.is_zero() {
                let (cover, _) = projective_cover(&p)?;
                if cover.dim() != p.dim() {
                    return Err(invalid(format!(
                        "X sends the projective at {} to a non-projective",
                        self.regular.vertices()[v]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `dim Hom(T m, n) = dim Hom(m, T' n⟨s⟩)` for `m` simple or projective
    /// (in a range of twists) and `n` simple or projective.
    fn check_adjunction(&self) -> Result<()> {
        let span = 2 * self.regular.top_degree() as i32 + self.shift.abs() + 2;
        let mut ms = Vec::new();
        for v in 0..self.regular.vertex_count() {
            for t in -span..=span {
                ms.push(simple_module(&self.regular, v)?.twist(t));
                ms.push(projective_module(&self.regular, v, t)?);
            }
        }
        let mut ns = Vec::new();
        for v in 0..self.singular.vertex_count() {
            ns.push(simple_module(&self.singular, v)?);
            ns.push(projective_module(&self.singular, v, 0)?);
        }
        for m in &ms {
            let tm = tensor_with_bimodule(m, &self.translation)?.module;
            for n in &ns {
                let back = tensor_with_bimodule(n, &self.adjoint)?.module.twist(self.shift);
                let lhs = hom_space(&tm, n, 0).len();
                let rhs = hom_space(m, &back, 0).len();
                if lhs != rhs {
                    return Err(invalid(format!(
                        "adjunction identity fails with shift {}: {lhs} ≠ {rhs}",
                        self.shift
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Translation onto the wall, `− ⊗_A X`, termwise.
pub fn translate(w: &WallDatum, m: &ComplexOfModules) -> Result<ComplexOfModules> {
    m.tensor(&w.translation)
}

/// Translation out of the wall, `− ⊗_{A_λ} X'`, termwise.
pub fn translate_out(w: &WallDatum, m: &ComplexOfModules) -> Result<ComplexOfModules> {
    m.tensor(&w.adjoint)
}

/// The largest quotient supported on the surviving vertices,
/// `− ⊗_A A^λ`, termwise.
pub fn zuckerman_truncate(w: &WallDatum, m: &ComplexOfModules) -> Result<ComplexOfModules> {
    m.tensor(&w.truncation)
}

/// Cohomology of the truncation of a projective resolution: `L_i τ(m)` sits
/// in cohomological degree `−i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedTruncation {
    pub table: Table,
    /// Set when the resolution was cut off; the lowest degree is then
    /// dropped from the table because it is not a true derived functor.
    pub truncated: bool,
}

impl DerivedTruncation {
    /// Total dimension of `L_i τ(m)`.
    pub fn dim(&self, i: usize) -> usize {
        self.table
            .iter()
            .filter(|((c, _, _), _)| *c == -(i as i32))
            .map(|(_, d)| d)
            .sum()
    }
}

/// `L_• τ(m)` from a minimal resolution of length at most `length`.
pub fn derived_zuckerman(w: &WallDatum, m: &GradedModule, length: usize) -> Result<DerivedTruncation> {
    let r = minimal_resolution(m, length);
    let c = r.as_complex().tensor(&w.truncation)?;
    let lowest = c.start();
    let mut table = c.cohomology_table();
    if r.truncated {
        table.retain(|(deg, _, _), _| *deg != lowest);
    }
    Ok(DerivedTruncation {
        table,
        truncated: r.truncated,
    })
}

/// `T K•` for the Koszul complex of the regular context, with the data to
/// translate endomorphisms of `K•`.
#[derive(Clone, Debug)]
pub struct TranslatedResolution {
    pub complex: ComplexOfModules,
    tensors: Vec<Tensor>,
    /// Offsets of the terms of `K•` in the total basis used by `E`.
    offsets: Vec<usize>,
}

impl TranslatedResolution {
    pub fn new(ctx: &DualityContext, w: &WallDatum) -> Result<Self> {
        if *ctx.algebra != *w.regular {
            return Err(Error::AlgebraMismatch("context and wall have different regular algebras".into()));
        }
        Self::with_bimodule(ctx, &w.translation)
    }

    /// `K• ⊗_A X` for any bimodule `X` with left algebra `A`.
    pub fn with_bimodule(ctx: &DualityContext, x: &Bimodule) -> Result<Self> {
        if **x.left() != *ctx.algebra {
            return Err(Error::AlgebraMismatch("bimodule is not over the context's algebra".into()));
        }
        let k = ctx.ends.complex.as_complex();
        let tensors = k
            .terms()
            .iter()
            .map(|t| tensor_with_bimodule(t, x))
            .collect::<Result<Vec<_>>>()?;
        let diffs = (0..tensors.len().saturating_sub(1))
            .map(|i| tensors[i].map_to(&tensors[i + 1], &k.differential(k.start() + i as i32)))
            .collect();
        let complex = ComplexOfModules::new(
            x.right().clone(),
            k.start(),
            tensors.iter().map(|t| t.module.clone()).collect(),
            diffs,
        )?;
        let mut offsets = Vec::new();
        let mut acc = 0;
        for t in k.terms() {
            offsets.push(acc);
            acc += t.dim();
        }
        Ok(TranslatedResolution {
            complex,
            tensors,
            offsets,
        })
    }

    /// `T(e)` for a basis element `e` of `E = End(K•)`: its cohomological
    /// degree `n` and the components `(c, T K^c → T K^{c+n})`.
    pub fn endomorphism(&self, ctx: &DualityContext, e: usize) -> (i32, Vec<(i32, Matrix)>) {
        let n = ctx.e().basis()[e].degree;
        let start = self.complex.start();
        let count = self.tensors.len() as i32;
        let mut out = Vec::new();
        for k in 0..count {
            let k2 = k + n;
            if k2 < 0 || k2 >= count {
                continue;
            }
            let (src, tgt) = (k as usize, k2 as usize);
            let rows = self.dim_of(ctx, tgt);
            let cols = self.dim_of(ctx, src);
            let mut block = Matrix::zeros(rows, cols);
            for j in 0..cols {
                for (r, v) in ctx.kernel.left_act_basis(e, self.offsets[src] + j) {
                    let local = r - self.offsets[tgt];
                    debug_assert!(*r >= self.offsets[tgt] && local < rows);
                    block[(local, j)] = v.clone();
                }
            }
            if block.is_zero() {
                continue;
            }
            out.push((start + k, self.tensors[src].map_to(&self.tensors[tgt], &block)));
        }
        (n, out)
    }

    fn dim_of(&self, ctx: &DualityContext, k: usize) -> usize {
        let next = self.offsets.get(k + 1).copied().unwrap_or(ctx.kernel.dim());
        next - self.offsets[k]
    }
}

/// The `(E_A, E_{A_λ})` DG bimodule `Hom(K_λ•, T K•)`: `E_{A_λ}` acts by
/// precomposition and `E_A` by postcomposition with translated
/// endomorphisms.
#[derive(Clone, Debug)]
pub struct DgTranslation {
    pub translated: TranslatedResolution,
    pub bimodule: DGBimodule,
}

impl DgTranslation {
    pub fn new(regular: &DualityContext, singular: &DualityContext, w: &WallDatum) -> Result<Self> {
        if *singular.algebra != *w.singular {
            return Err(Error::AlgebraMismatch("context and wall have different singular algebras".into()));
        }
        let translated = TranslatedResolution::new(regular, w)?;
        let tk = DGModule::from_complex(&translated.complex, singular.base().clone())?;
        let hom = singular.ends.hom_into(&tk)?;
        let mut tk_offsets = Vec::new();
        let mut acc = 0;
        for t in translated.complex.terms() {
            tk_offsets.push(acc);
            acc += t.dim();
        }
        let start = translated.complex.start();
        let e = regular.e();
        // T(e) on the total space of T K•, as columns per basis vector.
        let mut on_total: Vec<Vec<SparseVec>> = Vec::with_capacity(e.dim());
        for x in 0..e.dim() {
            let (n, comps) = translated.endomorphism(regular, x);
            let mut cols = vec![Vec::new(); tk.dim()];
            for (c, m) in comps {
                let (src, tgt) = ((c - start) as usize, (c + n - start) as usize);
                for j in 0..m.cols() {
                    let col: SparseVec = (0..m.rows())
                        .filter(|&r| !m[(r, j)].is_zero())
                        .map(|r| (tk_offsets[tgt] + r, m[(r, j)].clone()))
                        .collect();
                    cols[tk_offsets[src] + j] = col;
                }
            }
            on_total.push(cols);
        }
        let owner: Vec<usize> = (0..tk.dim())
            .map(|b| {
                (0..e.object_count())
                    .find(|&o| on_total[e.object_unit(o)][b] == vec![(b, Scalar::one())])
                    .ok_or_else(|| Error::SignConvention("translated summands do not decompose T K•".into()))
            })
            .collect::<Result<_>>()?;
        let basis: Vec<DGBiSlot> = hom
            .pairs
            .iter()
            .enumerate()
            .map(|(i, &(_, b))| {
                let s = hom.module.basis()[i];
                DGBiSlot {
                    degree: s.degree,
                    internal: s.internal,
                    left: owner[b],
                    right: s.object,
                }
            })
            .collect();
        let diff = (0..hom.module.dim()).map(|i| hom.module.basis_differential(i).clone()).collect();
        let left_action = (0..e.dim())
            .map(|x| {
                hom.pairs
                    .iter()
                    .map(|&(g, b)| {
                        let mut out = Vec::new();
                        for (b2, c) in &on_total[x][b] {
                            let p = hom.position(g, *b2).expect("translated vectors keep their vertex");
                            out = sparse_axpy(&out, c, &vec![(p, Scalar::one())]);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let right_action = (0..hom.module.dim())
            .map(|i| (0..singular.e().dim()).map(|y| hom.module.act_basis(i, y).clone()).collect())
            .collect();
        let bimodule = DGBimodule::new(e.clone(), singular.e().clone(), basis, diff, left_action, right_action)?;
        Ok(DgTranslation { translated, bimodule })
    }

    /// `n ⊗_{E_A} Hom(K_λ•, T K•)`; requires a generation certificate.
    pub fn apply(&self, n: &Certified) -> Result<DGModule> {
        if n.provenance().is_none() {
            return Err(Error::MissingCertificate);
        }
        Ok(dg_tensor(&n.module, &self.bimodule)?.module)
    }
}

/// The DG translation functor `− ⊗_{E_A} Hom(K_λ•, T K•)`.
pub fn dg_translate(
    regular: &DualityContext,
    singular: &DualityContext,
    w: &WallDatum,
    n: &Certified,
) -> Result<DGModule> {
    DgTranslation::new(regular, singular, w)?.apply(n)
}

/// Outcome of the comparison of the Ext-level map
/// `Ext_A(k, k) → Ext_{A_λ}(T k, T k)` with the idempotent quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSquareReport {
    /// Rank of the induced map.
    pub image_rank: usize,
    /// `dim Ext_{A_λ}(T k, T k)`.
    pub target_dim: usize,
    pub surjective: bool,
    pub kernel_dim: usize,
    /// Dimension of the ideal generated by the killed idempotents of `A^!`.
    pub ideal_dim: usize,
    pub kernel_is_ideal: bool,
    /// Graded dimensions of `A^! / (ε_v : v killed)`.
    pub quotient_dims: Vec<usize>,
    /// Graded dimensions of `A^λ = A / (e_v : v killed)`.
    pub parabolic_dims: Vec<usize>,
    pub quotient_matches: bool,
    /// Set when every vertex is killed and the quotient is zero.
    pub zero_quotient: bool,
}

impl IdempotentSquareReport {
    pub fn holds(&self) -> bool {
        self.surjective && self.kernel_is_ideal && self.quotient_matches && !self.zero_quotient
    }
}

/// The matrix of `Ext_A(k, k) → Ext_{A_λ}(T k, T k)`: columns are the basis
/// of `A^!`, rows the cohomology classes of `Hom(T K•, T K•)`.
pub fn ext_translation_map(ctx: &DualityContext, translation: &Bimodule) -> Result<Matrix> {
    let translated = TranslatedResolution::with_bimodule(ctx, translation)?;
    let tk = &translated.complex;
    let (ends, maps) = hom_complex(tk, tk)?;
    let coh = ends.cohomology();
    let mut images: BTreeMap<usize, SparseVec> = BTreeMap::new();
    let mut out = Matrix::zeros(coh.dim(), ctx.dual.dim());
    for y in 0..ctx.dual.dim() {
        let mut v: SparseVec = Vec::new();
        for (e, c) in ctx.dual_representative(y, false) {
            if !images.contains_key(&e) {
                let (n, comps) = translated.endomorphism(ctx, e);
                let s = ctx.e().basis()[e].internal;
                let mut acc = Vec::new();
                for (deg, m) in comps {
                    acc = sparse_axpy(&acc, &Scalar::one(), &hom_coordinates(&maps, deg, deg + n, s, &m)?);
                }
                images.insert(e, acc);
            }
            v = sparse_axpy(&v, &c, &images[&e]);
        }
        let coords = coh
            .class_of(&v)
            .ok_or_else(|| Error::SignConvention("translated Ext class is not a cocycle".into()))?;
        for (r, c) in coords {
            out[(r, y)] = c;
        }
    }
    Ok(out)
}

/// Checks that `Ext_A(k, k) → Ext_{A_λ}(T k, T k)` is surjective with
/// kernel the ideal generated by the idempotents of the killed vertices,
/// and that the quotient of `A^!` by that ideal has the shape of `A^λ`.
pub fn idempotent_square(ctx: &DualityContext, translation: &Bimodule, kill: &[usize]) -> Result<IdempotentSquareReport> {
    let f = ext_translation_map(ctx, translation)?;
    let dual = &ctx.dual;
    let dual_kill: Vec<usize> = kill
        .iter()
        .map(|&v| dual.vertex(&ctx.algebra.vertices()[v]))
        .collect::<Result<_>>()?;
    let image_rank = f.rank();
    let kernel = f.kernel_basis();
    let ideal = idempotent_ideal(dual, &dual_kill);
    let ideal_maps_to_zero = ideal
        .rows()
        .iter()
        .all(|r| f.mul_vec(&sparse_to_dense(r, dual.dim())).iter().all(|x| x.is_zero()));
    let quotient = quotient_by_idempotents(dual, &dual_kill);
    let parabolic = quotient_by_idempotents(&ctx.algebra, kill);
    let zero_quotient = quotient.is_err() || parabolic.is_err();
    let (quotient_dims, parabolic_dims, quotient_matches) = match (&quotient, &parabolic) {
        (Ok((q, _)), Ok((p, _))) => (q.dims_by_degree(), p.dims_by_degree(), same_shape(q, p)),
        _ => (Vec::new(), Vec::new(), quotient.is_err() && parabolic.is_err()),
    };
    Ok(IdempotentSquareReport {
        image_rank,
        target_dim: f.rows(),
        surjective: image_rank == f.rows(),
        kernel_dim: kernel.cols(),
        ideal_dim: ideal.rank(),
        kernel_is_ideal: ideal_maps_to_zero && ideal.rank() == kernel.cols(),
        quotient_dims,
        parabolic_dims,
        quotient_matches,
        zero_quotient,
    })
}

/// [`idempotent_square`] for a wall datum.
pub fn verify_idempotent_square(regular: &DualityContext, w: &WallDatum) -> Result<IdempotentSquareReport> {
    idempotent_square(regular, &w.translation, &w.kill)
}

/// Same vertices (by name), the same dimension of every
/// `e_v (−)_d e_w`, and, where all these pieces are at most
/// one-dimensional, the same vanishing pattern of products of basis
/// elements (the structure constants up to rescaling of the basis).
fn same_shape(q: &GradedAlgebra, p: &GradedAlgebra) -> bool {
    let names: BTreeSet<&String> = q.vertices().iter().collect();
    if names != p.vertices().iter().collect() {
        return false;
    }
    let slot = |a: &GradedAlgebra, x: usize| {
        let b = &a.basis()[x];
        (a.vertices()[b.source].clone(), a.vertices()[b.target].clone(), b.degree)
    };
    let slots = |a: &GradedAlgebra| {
        let mut m: BTreeMap<(String, String, u32), Vec<usize>> = BTreeMap::new();
        for x in 0..a.dim() {
            m.entry(slot(a, x)).or_default().push(x);
        }
        m
    };
    let (sq, sp) = (slots(q), slots(p));
    if sq.keys().ne(sp.keys()) || sq.iter().zip(sp.iter()).any(|((_, a), (_, b))| a.len() != b.len()) {
        return false;
    }
    if sq.values().any(|v| v.len() > 1) {
        return true;
    }
    let partner = |x: usize| sp[&slot(q, x)][0];
    (0..q.dim()).all(|x| {
        (0..q.dim()).all(|y| q.basis_product(x, y).is_empty() == p.basis_product(partner(x), partner(y)).is_empty())
    })
}

/// One test object of [`verify_square`]: the bidegree tables reached along
/// both routes, keyed by `(cohomological degree, internal degree, vertex
/// of A)` after transport across the matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareEntry {
    pub id: String,
    /// `D_λ(T m)`.
    pub via_translation: BigradedTable,
    /// `τ(D m)`.
    pub via_duality: BigradedTable,
    pub agrees: bool,
    /// Why a route could not be completed, if it could not.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub entries: Vec<SquareEntry>,
}

impl SquareReport {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|e| e.agrees)
    }

    pub fn agreeing(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees).count()
    }
}

/// Compares `D_λ ∘ T` with `τ ∘ D` objectwise on cohomology bidegree tables.
///
/// The first route translates `m` and applies the duality functor of the
/// singular context. The second applies the duality functor of the regular
/// context, takes its strict model (a bounded complex of free
/// `A^!`-modules, so that truncation of it computes the derived
/// truncation), tensors termwise with `A^! / (ε_v : v killed)` and
/// totalizes. Vertices of `A_λ^!` are carried to vertices of `A` through
/// the matching, vertices of the dual quotient by name.
pub fn verify_square(
    regular: &DualityContext,
    singular: &DualityContext,
    w: &WallDatum,
    testset: &[(String, ComplexOfModules)],
) -> Result<SquareReport> {
    if *regular.algebra != *w.regular || *singular.algebra != *w.singular {
        return Err(Error::AlgebraMismatch("contexts do not match the wall".into()));
    }
    let dual = &regular.dual;
    let dual_kill: Vec<usize> = w
        .kill
        .iter()
        .map(|&v| dual.vertex(&w.regular.vertices()[v]))
        .collect::<Result<_>>()?;
    let (quotient, surj) = quotient_by_idempotents(dual, &dual_kill)?;
    let quotient = Arc::new(quotient);
    let truncation = Bimodule::quotient(dual, &quotient, &surj)?;
    let quotient_dg = Arc::new(DGAlgebra::from_graded(&quotient, 1, -1));
    let to_regular: Vec<usize> = quotient
        .vertices()
        .iter()
        .map(|n| w.regular.vertex(n))
        .collect::<Result<_>>()?;
    let singular_to_regular: Vec<Option<usize>> = (0..singular.dual.vertex_count())
        .map(|l| {
            let name = &singular.dual.vertices()[l];
            w.singular.vertex(name).ok().and_then(|v| w.matched(v))
        })
        .collect();

    let mut entries = Vec::with_capacity(testset.len());
    for (id, m) in testset {
        let mut note = None;
        let via_translation = match translate(w, m).and_then(|t| singular.koszul_duality(&t)) {
            Ok(d) => {
                let mut out = BigradedTable::new();
                for (&(c, i, l), &n) in &d.table {
                    match singular_to_regular[l] {
                        Some(v) => *out.entry((c, i, v)).or_insert(0) += n,
                        None => note = Some(format!("vertex {} of the singular dual is unmatched", l)),
                    }
                }
                out
            }
            Err(e) => {
                note = Some(format!("translation route: {e}"));
                BigradedTable::new()
            }
        };
        let via_duality = match regular
            .koszul_duality(m)
            .and_then(|d| d.strict)
            .and_then(|g| g.tensor(&truncation))
            .and_then(|g| totalize(&g, &quotient_dg))
        {
            Ok(f) => f
                .cohomology_table()
                .into_iter()
                .map(|((c, i, v), n)| ((c, i, to_regular[v]), n))
                .collect(),
            Err(e) => {
                note = Some(format!("duality route: {e}"));
                BigradedTable::new()
            }
        };
        let agrees = note.is_none() && via_translation == via_duality;
        entries.push(SquareEntry {
            id: id.clone(),
            via_translation,
            via_duality,
            agrees,
            note,
        });
    }
    Ok(SquareReport { entries })
}

/// Simples and indecomposable projectives of the regular algebra, each as a
/// complex in degree 0, with identifiers.
pub fn standard_testset(w: &WallDatum) -> Result<Vec<(String, ComplexOfModules)>> {
    let a = &w.regular;
    let mut out = Vec::new();
    for v in 0..a.vertex_count() {
        let name = &a.vertices()[v];
        out.push((format!("simple:{name}"), ComplexOfModules::single(simple_module(a, v)?, 0)));
    }
    for v in 0..a.vertex_count() {
        let name = &a.vertices()[v];
        out.push((
            format!("projective:{name}"),
            ComplexOfModules::single(projective_module(a, v, 0)?, 0),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::make_context;
    use crate::library;

    fn contexts(w: &WallDatum) -> (DualityContext, DualityContext) {
        (
            make_context(w.regular(), 4).unwrap(),
            make_context(w.singular(), 4).unwrap(),
        )
    }

    #[test]
    fn sl2_wall_validates() {
        let w = library::sl2_wall();
        assert_eq!(w.parabolic().dims_by_degree(), vec![1]);
        assert_eq!(w.shift(), -2);
    }

    #[test]
    fn wrong_shift_is_rejected() {
        let w = library::sl2_wall();
        let err = WallDatum::new(w.translation().clone(), w.adjoint().clone(), vec![0], vec![(0, 1)], 0).unwrap_err();
        assert!(matches!(err, Error::InvalidDatum(_)), "{err:?}");
    }

    #[test]
    fn translation_of_simples_and_projectives() {
        let w = library::sl2_wall();
        let a = w.regular().clone();
        let dims = |m: GradedModule| translate(&w, &ComplexOfModules::single(m, 0)).unwrap().total_dim();
        assert_eq!(dims(simple_module(&a, 0).unwrap()), 0);
        assert_eq!(dims(simple_module(&a, 1).unwrap()), 1);
        assert_eq!(dims(projective_module(&a, 0, 0).unwrap()), 1);
        assert_eq!(dims(projective_module(&a, 1, 0).unwrap()), 2);
        let zero = ComplexOfModules::zero(a.clone());
        assert!(translate(&w, &zero).unwrap().is_acyclic());
        let k = ComplexOfModules::single(simple_module(w.singular(), 0).unwrap(), 0);
        assert_eq!(translate_out(&w, &k).unwrap().total_dim(), 3);
    }

    #[test]
    fn zuckerman_on_simples_and_projectives() {
        let w = library::sl2_wall();
        let a = w.regular().clone();
        let t = |m: GradedModule| zuckerman_truncate(&w, &ComplexOfModules::single(m, 0)).unwrap().total_dim();
        assert_eq!(t(simple_module(&a, 0).unwrap()), 0);
        assert_eq!(t(simple_module(&a, 1).unwrap()), 1);
        assert_eq!(t(projective_module(&a, 0, 0).unwrap()), 0);
        assert_eq!(t(projective_module(&a, 1, 0).unwrap()), 1);
        let p = derived_zuckerman(&w, &projective_module(&a, 1, 0).unwrap(), 4).unwrap();
        assert!(p.table.keys().all(|k| k.0 == 0));
        let s = derived_zuckerman(&w, &simple_module(&a, 0).unwrap(), 4).unwrap();
        assert_eq!(s.dim(0), 0);
        assert!(s.dim(1) + s.dim(2) > 0, "{s:?}");
    }

    #[test]
    fn idempotent_square_on_sl2() {
        let w = library::sl2_wall();
        let (ra, _) = contexts(&w);
        let r = verify_idempotent_square(&ra, &w).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.target_dim, 1);
        assert_eq!(r.kernel_dim, 4);
        assert_eq!(r.quotient_dims, vec![1]);
    }

    #[test]
    fn square_commutes_on_simples_and_projectives() {
        let w = library::sl2_wall();
        let (ra, rl) = contexts(&w);
        let report = verify_square(&ra, &rl, &w, &standard_testset(&w).unwrap()).unwrap();
        assert!(report.all_agree(), "{report:#?}");
    }

    #[test]
    fn dg_translation_of_generators() {
        let w = library::sl2_wall();
        let (ra, rl) = contexts(&w);
        let t = DgTranslation::new(&ra, &rl, &w).unwrap();
        for v in 0..2 {
            let g = ra.generator(v).unwrap();
            let image = t.apply(&g).unwrap();
            let expected = rl
                .rhom(&translate(&w, &ra.koszul.component_complex(v)).unwrap())
                .unwrap()
                .module;
            assert_eq!(image.cohomology_table(), expected.cohomology_table());
            let moved = t.apply(&g.shift_by(1).twist(2)).unwrap();
            assert_eq!(moved.cohomology_table(), image.shift_by(1).twist(2).cohomology_table());
        }
        let unit = t.apply(&ra.free()).unwrap();
        let whole = rl.rhom(&t.translated.complex).unwrap().module;
        assert_eq!(unit.cohomology_table(), whole.cohomology_table());
        let bare = Certified::uncertified(ra.free().module);
        assert_eq!(t.apply(&bare).unwrap_err(), Error::MissingCertificate);
    }

    #[test]
    fn degenerate_idempotent_squares() {
        let a = Arc::new(library::semisimple_two());
        let x = Bimodule::right_corner(&a, &a, &[(0, 0), (1, 1)]).unwrap();
        let x_prime = Bimodule::left_corner(&a, &a, &[(0, 0), (1, 1)]).unwrap();
        let w = WallDatum::new(x, x_prime, Vec::new(), vec![(0, 0), (1, 1)], 0).unwrap();
        let ctx = make_context(w.regular(), 2).unwrap();
        let r = verify_idempotent_square(&ctx, &w).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.kernel_dim, r.target_dim), (0, 2));

        let l = Arc::new(GradedAlgebra::ground_field("l"));
        let zero = Bimodule::right_corner(&a, &l, &[]).unwrap();
        let r = idempotent_square(&ctx, &zero, &[0, 1]).unwrap();
        assert!(r.zero_quotient && !r.holds(), "{r:?}");
        assert_eq!((r.target_dim, r.kernel_dim, r.ideal_dim), (0, 2, 2));
    }
}
