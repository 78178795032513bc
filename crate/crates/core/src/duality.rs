//! The Koszul duality functor: `RHom(K•, −)` into DG modules over
//! `E = End(K•)`, the tensor `− ⊗_E K•` back, the evaluation and unit maps
//! `ψ`, `φ` with quasi-isomorphism certificates, the totalization `F` of
//! complexes of graded `A^!`-modules with its sign isomorphism `σ`, and the
//! layered functor `koszul_duality`.
//!
//! `K•` is a left DG module over `E` (endomorphisms act by evaluation) and
//! `Hom(K•, M)` a right DG module (by precomposition), so that
//! `Hom(K•, M) ⊗_E K•` makes sense and evaluation is a strict chain map.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::GradedAlgebra;
use crate::dg::{
    dg_tensor, BigradedTable, Cohomology, DGAlgebra, DGBimodule, DGMap, DGModule, DGTensor, Endomorphisms, FreeComplex,
    HomModule, QuasiIsoCertificate,
};
use crate::error::{Error, Result};
use crate::exactlin::{sparse_axpy, Matrix, PivotChoice, Scalar, SparseVec};
use crate::koszul::{ext_algebra_with, is_koszul, koszul_complex, lift_cochain, ExtAlgebra, KoszulComplex};
use crate::modules::{ChainMap, ComplexOfModules, FreeModule};

fn sign(n: i32) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn unit_vec(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

/// Everything the duality functor needs about a Koszul algebra `A`.
///
/// `representatives[c]` is a cocycle of `E` representing Ext class `c`;
/// products of representatives represent Yoneda products, and the
/// degree-0 representatives sum to the identity of `E`.
#[derive(Clone, Debug)]
pub struct DualityContext {
    pub algebra: Arc<GradedAlgebra>,
    pub koszul: KoszulComplex,
    pub ends: Endomorphisms,
    pub kernel: DGBimodule,
    pub ext: ExtAlgebra,
    /// `A^!`, graded by homological degree.
    pub dual: Arc<GradedAlgebra>,
    /// `A^!` as a DG algebra: degree `i` in cohomological degree `i`,
    /// internal degree `−i`, zero differential.
    pub dual_dg: Arc<DGAlgebra>,
    pub representatives: Vec<SparseVec>,
    /// Representatives computed with the opposite pivot policy.
    pub alternative: Vec<SparseVec>,
    pub truncated: bool,
    summand_of: BTreeMap<(usize, usize, usize), usize>,
}

/// Builds the context: certifies Koszulity, forms `K• = ⊕ K•_w` and
/// `E = End(K•)`, computes `Ext(k, k)` and cocycle representatives by signed
/// lifts, and verifies that they realize the Yoneda algebra inside `H(E)`.
///
/// A lift `η` of a class of degree `n` is made a cocycle by the sign
/// `(−1)^{nk}` on its `k`-th component, then normalized by `(−1)^{n(n−1)/2}`
/// so that composition of representatives matches the Yoneda product on
/// the nose in cohomology.
pub fn make_context(a: &Arc<GradedAlgebra>, bound: usize) -> Result<DualityContext> {
    let cert = is_koszul(a, bound);
    if let crate::koszul::Verdict::FailedAt { degree, internal } = cert.verdict {
        return Err(Error::NotKoszul { degree, internal });
    }
    let koszul = koszul_complex(a, bound);
    let names: Vec<_> = a.vertices().iter().map(|v| v.to_string()).collect();
    let mut total: Option<FreeComplex> = None;
    for (w, r) in koszul.components.iter().enumerate() {
        let part = FreeComplex::from_resolution(r, w, names.clone());
        total = Some(match total {
            None => part,
            Some(t) => t.direct_sum(&part)?,
        });
    }
    let total = total.ok_or(Error::ZeroRing)?;
    let ends = Endomorphisms::new(&total);
    let kernel = ends.bimodule();
    let blocks = total.summand_blocks();
    let mut summand_of = BTreeMap::new();
    let mut seen: BTreeMap<(usize, i32), usize> = BTreeMap::new();
    for (idx, s) in ends.summands.iter().enumerate() {
        let w = blocks[idx];
        let n = seen.entry((w, s.degree)).or_insert(0);
        summand_of.insert((w, (-s.degree) as usize, *n), idx);
        *n += 1;
    }
    let ext = ext_algebra_with(a, bound, PivotChoice::First)?;
    let dual = Arc::new(ext.algebra.clone());
    let dual_dg = Arc::new(DGAlgebra::from_graded(&dual, 1, -1));
    let mut ctx = DualityContext {
        algebra: a.clone(),
        truncated: koszul.truncated,
        koszul,
        ends,
        kernel,
        ext,
        dual,
        dual_dg,
        representatives: Vec::new(),
        alternative: Vec::new(),
        summand_of,
    };
    ctx.representatives = ctx.lift_classes(PivotChoice::First)?;
    ctx.alternative = ctx.lift_classes(PivotChoice::Last)?;
    ctx.verify()?;
    Ok(ctx)
}

impl DualityContext {
    pub fn e(&self) -> &Arc<DGAlgebra> {
        &self.ends.algebra
    }

    /// `A` as a DG algebra in cohomological degree 0.
    pub fn base(&self) -> &Arc<DGAlgebra> {
        &self.ends.base
    }

    /// Summand of `K•` for generator `g` of `P_j` in the resolution of `k_w`.
    pub fn summand(&self, w: usize, j: usize, g: usize) -> Option<usize> {
        self.summand_of.get(&(w, j, g)).copied()
    }

    fn lift_classes(&self, policy: PivotChoice) -> Result<Vec<SparseVec>> {
        let mut reps = Vec::with_capacity(self.ext.classes.len());
        for x in &self.ext.classes {
            let src = &self.ext.resolutions[x.from];
            let tgt = &self.ext.resolutions[x.vertex];
            let mut values = vec![Scalar::zero(); src.terms[x.degree].generators().len()];
            values[x.generator] = Scalar::one();
            let max_k = src.length() - x.degree;
            let lifts = lift_cochain(src, x.degree, &values, tgt, max_k, policy)?;
            let n = x.degree as i32;
            let norm = sign(n * (n - 1) / 2);
            let mut rep: SparseVec = Vec::new();
            for (k, u) in lifts.iter().enumerate() {
                let Some(t) = tgt.terms.get(k) else {
                    continue;
                };
                let s = &src.terms[x.degree + k];
                let c = &norm * sign(n * k as i32);
                for g in 0..s.generators().len() {
                    let from = self.summand(x.from, x.degree + k, g).expect("summand of K•");
                    let col = u.column(s.generator_position(g));
                    for (r, v) in col.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let (h, y) = t.decompose(r);
                        let to = self.summand(x.vertex, k, h).expect("summand of K•");
                        let e = self
                            .ends
                            .element(from, to, y)
                            .ok_or_else(|| Error::SignConvention("lift is not vertex-homogeneous".into()))?;
                        rep = sparse_axpy(&rep, &(&c * v), &unit_vec(e));
                    }
                }
            }
            reps.push(rep);
        }
        Ok(reps)
    }

    fn verify(&self) -> Result<()> {
        let e = self.e();
        let h = DGModule::regular(e.clone()).cohomology();
        let mut coords = Vec::new();
        for reps in [&self.representatives, &self.alternative] {
            let mut cols = Vec::new();
            for r in reps.iter() {
                if !e.d(r).is_empty() {
                    return Err(Error::SignConvention("representative is not a cocycle".into()));
                }
                let c = h.class_of(r).ok_or_else(|| Error::SignConvention("representative has no class".into()))?;
                cols.push(crate::exactlin::sparse_to_dense(&c, h.dim()));
            }
            let m = Matrix::from_columns(h.dim(), &cols);
            if m.rank() != reps.len() {
                return Err(Error::SignConvention("representatives are linearly dependent in cohomology".into()));
            }
            coords.push(m);
        }
        if coords[0] != coords[1] {
            return Err(Error::SignConvention("the two lift policies give different classes".into()));
        }
        if !self.truncated && h.dim() != self.representatives.len() {
            return Err(Error::SignConvention(format!(
                "cohomology of End(K•) has dimension {} but Ext has {}",
                h.dim(),
                self.representatives.len()
            )));
        }
        let mut unit = Vec::new();
        for (c, x) in self.ext.classes.iter().enumerate() {
            if x.degree == 0 {
                unit = sparse_axpy(&unit, &Scalar::one(), &self.representatives[c]);
            }
        }
        if unit != e.unit() {
            return Err(Error::SignConvention("degree-0 representatives do not sum to the identity".into()));
        }
        let n = self.representatives.len();
        for x in 0..n {
            for y in 0..n {
                let (cx, cy) = (&self.ext.classes[x], &self.ext.classes[y]);
                if self.truncated && cx.degree + cy.degree > self.ext.bound {
                    continue;
                }
                let mut diff = e.mul(&self.representatives[x], &self.representatives[y]);
                for (z, c) in &self.ext.products[x][y] {
                    diff = sparse_axpy(&diff, &-c.clone(), &self.representatives[*z]);
                }
                let class = h.class_of(&diff).ok_or_else(|| Error::SignConvention("product has no class".into()))?;
                if !class.is_empty() {
                    return Err(Error::SignConvention(format!(
                        "product of representatives {x}, {y} differs from the Yoneda product"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Representative in `E` of a basis element of `A^!`.
    pub fn dual_representative(&self, y: usize, alternative: bool) -> SparseVec {
        let reps = if alternative { &self.alternative } else { &self.representatives };
        let mut out = Vec::new();
        for c in 0..reps.len() {
            let k = &self.ext.to_classes[(c, y)];
            if !k.is_zero() {
                out = sparse_axpy(&out, k, &reps[c]);
            }
        }
        out
    }

    /// `Hom(K•, m)` as a right DG module over `E`.
    pub fn rhom(&self, m: &ComplexOfModules) -> Result<HomModule> {
        if **m.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch("complex is not over the context's algebra".into()));
        }
        let dg = DGModule::from_complex(m, self.base().clone())?;
        self.ends.hom_into(&dg)
    }

    /// `Hom(K•, f)` for a chain map `f: s → t`, by postcomposition.
    pub fn rhom_map(&self, f: &ChainMap, s: &ComplexOfModules, t: &ComplexOfModules) -> Result<DGMap> {
        let hs = self.rhom(s)?;
        let ht = self.rhom(t)?;
        let fm = dg_map_of_chain_map(f, s, t);
        let images = hs
            .pairs
            .iter()
            .map(|&(g, b)| {
                let mut out = Vec::new();
                for (b2, c) in &fm.images[b] {
                    let p = ht.position(g, *b2).expect("same vertex");
                    out = sparse_axpy(&out, c, &unit_vec(p));
                }
                out
            })
            .collect();
        Ok(DGMap { images })
    }

    /// The generator `Hom(K•, K•_w)`.
    pub fn generator(&self, w: usize) -> Result<Certified> {
        Ok(Certified {
            module: self.rhom(&self.koszul.component_complex(w))?.module,
            provenance: Some(Provenance::Generator(w)),
        })
    }

    /// `E` as a right module over itself.
    pub fn free(&self) -> Certified {
        Certified {
            module: DGModule::regular(self.e().clone()),
            provenance: Some(Provenance::Free),
        }
    }

    /// `Hom(K•, m)` for a bounded complex, certified by resolving `m`.
    pub fn rhom_certified(&self, m: &ComplexOfModules) -> Result<Certified> {
        Ok(Certified {
            module: self.rhom(m)?.module,
            provenance: Some(Provenance::Rhom),
        })
    }

    /// `n ⊗_E K•`, a DG module over `A`; requires a generation certificate.
    pub fn tensor_back(&self, n: &Certified) -> Result<DGTensor> {
        if n.provenance.is_none() {
            return Err(Error::MissingCertificate);
        }
        dg_tensor(&n.module, &self.kernel)
    }

    /// Evaluation `Hom(K•, m) ⊗_E K• → m`, `f ⊗ k ↦ f(k)`, certified to be a
    /// quasi-isomorphism.
    pub fn psi(&self, m: &ComplexOfModules) -> Result<(DGMap, QuasiIsoCertificate)> {
        let hom = self.rhom(m)?;
        let t = dg_tensor(&hom.module, &self.kernel)?;
        let target = DGModule::from_complex(m, self.base().clone())?;
        let kb = self.kernel.basis();
        let images = (0..t.module.dim())
            .map(|q| {
                let (i, k) = t.pairs[t.quotient.lift(q)];
                let (g, b) = hom.pairs[i];
                if kb[k].left != g {
                    return Vec::new();
                }
                let (_, x) = self.ends_complex_entry(k);
                target.act(&unit_vec(b), &unit_vec(x))
            })
            .collect();
        let f = DGMap { images };
        let cert = f.quasi_iso_certificate(&t.module, &target)?.require()?;
        Ok((f, cert))
    }

    /// `(summand, algebra basis element)` of a basis vector of `K•`.
    fn ends_complex_entry(&self, k: usize) -> (usize, usize) {
        let g = self.kernel.basis()[k].left;
        let a = &self.algebra;
        let v = self.ends.summands[g].vertex;
        let x = a
            .right_projective_basis(v)
            .into_iter()
            .find(|&x| self.ends.total_position(g, x) == k)
            .expect("basis vector of K•");
        (g, x)
    }

    /// Unit `n → Hom(K•, n ⊗_E K•)`, `n ↦ (k ↦ n ⊗ k)`, certified to be a
    /// quasi-isomorphism.
    pub fn phi(&self, n: &Certified) -> Result<(DGMap, QuasiIsoCertificate)> {
        let t = self.tensor_back(n)?;
        let hom = self.ends.hom_into(&t.module)?;
        let a = &self.algebra;
        let images = (0..n.module.dim())
            .map(|i| {
                let mut out = Vec::new();
                for (g, s) in self.ends.summands.iter().enumerate() {
                    let k = self.ends.total_position(g, a.idempotent(s.vertex));
                    for (b, c) in t.class(i, k) {
                        let p = hom.position(g, b).expect("vertex matches");
                        out = sparse_axpy(&out, &c, &unit_vec(p));
                    }
                }
                out
            })
            .collect();
        let f = DGMap { images };
        let cert = f.quasi_iso_certificate(&n.module, &hom.module)?.require()?;
        Ok((f, cert))
    }

    /// The totalization `F`: an element of `P^c` in internal degree `m`
    /// sits in cohomological degree `c + m` and internal degree `−m`.
    pub fn totalize(&self, p: &ComplexOfModules) -> Result<DGModule> {
        totalize(p, &self.dual_dg)
    }

    /// `σ: F(P⟨1⟩) → F(P)[−1]⟨−1⟩`, `p ↦ (−1)^c p` for `p` in complex degree `c`,
    /// certified as a strict isomorphism.
    pub fn sigma_twist_iso(&self, p: &ComplexOfModules) -> Result<(DGMap, DGModule, DGModule)> {
        sigma_twist_iso(p, &self.dual_dg)
    }

    /// The layered Koszul duality functor applied to `m`.
    pub fn koszul_duality(&self, m: &ComplexOfModules) -> Result<KoszulDual> {
        let rhom = self.rhom(m)?.module;
        let cohomology = rhom.cohomology();
        let table = cohomology.table();
        let mut action = Vec::with_capacity(self.dual.dim());
        for y in 0..self.dual.dim() {
            let first = cohomology.action_of(&rhom, &self.dual_representative(y, false))?;
            let second = cohomology.action_of(&rhom, &self.dual_representative(y, true))?;
            if first != second {
                return Err(Error::SignConvention("action on cohomology depends on representatives".into()));
            }
            action.push(first);
        }
        let strict = self.strictify(m, &table);
        Ok(KoszulDual {
            rhom,
            cohomology,
            table,
            action,
            strict,
        })
    }

    fn strictify(&self, m: &ComplexOfModules, table: &BigradedTable) -> Result<ComplexOfModules> {
        let g = linear_complex(self, m)?;
        let f = self.totalize(&g)?;
        if f.cohomology_table() != *table {
            return Err(Error::NotStrictifiable("strict model disagrees with RHom in cohomology".into()));
        }
        Ok(g)
    }
}

/// The three layers of the duality functor.
#[derive(Clone, Debug)]
pub struct KoszulDual {
    pub rhom: DGModule,
    pub cohomology: Cohomology,
    /// Keyed by `(cohomological degree, internal degree, vertex of A^!)`.
    pub table: BigradedTable,
    /// Right action of every basis element of `A^!` on cohomology, in
    /// class coordinates.
    pub action: Vec<Matrix>,
    /// A complex of graded `A^!`-modules whose totalization has the same
    /// cohomology, when one can be built.
    pub strict: Result<ComplexOfModules>,
}

impl KoszulDual {
    /// Cohomology dimension per vertex of `A^!`.
    pub fn vertex_dims(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (&(_, _, v), &d) in &self.table {
            *out.entry(v).or_insert(0) += d;
        }
        out
    }
}

/// How a DG module over `E` was generated from the `Hom(K•, K•_w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Generator(usize),
    Free,
    /// `Hom(K•, M)` for a bounded complex `M` (generated by resolving `M`).
    Rhom,
    Shift(Box<Provenance>, i32),
    Twist(Box<Provenance>, i32),
    Cone(Box<Provenance>, Box<Provenance>),
    Sum(Box<Provenance>, Box<Provenance>),
}

/// A DG module over `E` together with its generation certificate.
#[derive(Clone, Debug)]
pub struct Certified {
    pub module: DGModule,
    provenance: Option<Provenance>,
}

impl Certified {
    pub fn uncertified(module: DGModule) -> Self {
        Certified {
            module,
            provenance: None,
        }
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    fn wrap(&self, f: impl FnOnce(Box<Provenance>) -> Provenance, module: DGModule) -> Self {
        Certified {
            module,
            provenance: self.provenance.clone().map(|p| f(Box::new(p))),
        }
    }

    pub fn shift_by(&self, k: i32) -> Self {
        self.wrap(|p| Provenance::Shift(p, k), self.module.shift_by(k))
    }

    pub fn twist(&self, k: i32) -> Self {
        self.wrap(|p| Provenance::Twist(p, k), self.module.twist(k))
    }

    pub fn sum(&self, other: &Certified) -> Result<Self> {
        Ok(Certified {
            module: self.module.direct_sum(&other.module)?,
            provenance: match (&self.provenance, &other.provenance) {
                (Some(a), Some(b)) => Some(Provenance::Sum(Box::new(a.clone()), Box::new(b.clone()))),
                _ => None,
            },
        })
    }

    /// Cone of a strict map `f: source → target`.
    pub fn cone(f: &DGMap, source: &Certified, target: &Certified) -> Result<Self> {
        Ok(Certified {
            module: crate::dg::cone(f, &source.module, &target.module)?.module,
            provenance: match (&source.provenance, &target.provenance) {
                (Some(a), Some(b)) => Some(Provenance::Cone(Box::new(a.clone()), Box::new(b.clone()))),
                _ => None,
            },
        })
    }
}

/// A chain map of complexes as a map of the corresponding DG modules.
/// Basis order is that of [`DGModule::from_complex`].
pub fn dg_map_of_chain_map(f: &ChainMap, s: &ComplexOfModules, t: &ComplexOfModules) -> DGMap {
    let offsets = |c: &ComplexOfModules| -> BTreeMap<i32, usize> {
        let mut acc = 0;
        (c.start()..c.end())
            .map(|d| {
                let o = acc;
                acc += c.term_dim(d);
                (d, o)
            })
            .collect()
    };
    let (os, ot) = (offsets(s), offsets(t));
    let mut images = vec![Vec::new(); s.total_dim()];
    for d in s.start()..s.end() {
        let m = f.component(d, s, t);
        for j in 0..s.term_dim(d) {
            let mut out: SparseVec = Vec::new();
            if let Some(&o) = ot.get(&d) {
                for r in 0..m.rows() {
                    if !m[(r, j)].is_zero() {
                        out.push((o + r, m[(r, j)].clone()));
                    }
                }
            }
            images[os[&d] + j] = out;
        }
    }
    DGMap { images }
}

/// The totalization `F` over `A^!` placed by `from_graded(A^!, 1, −1)`.
pub fn totalize(p: &ComplexOfModules, dual_dg: &Arc<DGAlgebra>) -> Result<DGModule> {
    if p.algebra().dim() != dual_dg.dim() {
        return Err(Error::AlgebraMismatch("complex is not over the dual algebra".into()));
    }
    DGModule::place_complex(p, dual_dg.clone(), |c, m| (c + m, -m))
}

/// `σ: F(P⟨1⟩) → F(P)[−1]⟨−1⟩`, `p ↦ (−1)^c p` with `c` the complex degree.
/// Returns the map with its source and target after checking that it is a
/// strict isomorphism.
pub fn sigma_twist_iso(p: &ComplexOfModules, dual_dg: &Arc<DGAlgebra>) -> Result<(DGMap, DGModule, DGModule)> {
    let source = totalize(&p.twist(1), dual_dg)?;
    let target = totalize(p, dual_dg)?.shift_by(-1).twist(-1);
    let mut images = Vec::with_capacity(source.dim());
    let mut i = 0;
    for c in p.start()..p.end() {
        for _ in 0..p.term_dim(c) {
            images.push(vec![(i, sign(c))]);
            i += 1;
        }
    }
    let f = DGMap { images };
    f.check(&source, &target)
        .map_err(|e| Error::SignConvention(format!("σ is not a DG map: {e}")))?;
    if source.dim() != target.dim() {
        return Err(Error::SignConvention("σ is not bijective".into()));
    }
    Ok((f, source, target))
}

/// The complex `G(M)` of graded free `A^!`-modules with terms
/// `⊕_{q+j=n} M^q_j ⊗ A^!⟨−j⟩` and differential
/// `m⊗α ↦ Σ_a (m·a) ⊗ a^*α + (−1)^j d_M(m) ⊗ α`, the sum over arrows.
pub fn linear_complex(ctx: &DualityContext, m: &ComplexOfModules) -> Result<ComplexOfModules> {
    let a = &ctx.algebra;
    let dual = &ctx.dual;
    let mut arrows = Vec::new();
    for g in a.generators() {
        if g.degree != 1 {
            return Err(Error::NotStrictifiable(format!("generator {} is not of degree 1", g.label)));
        }
        let star = dual
            .basis_index_by_label(&format!("{}*", g.label))
            .ok_or_else(|| Error::NotStrictifiable(format!("no dual arrow for {}", g.label)))?;
        arrows.push((g.element.clone(), g.source, star));
    }
    // generators of each term: (q, index in M^q)
    let mut layout: BTreeMap<i32, Vec<(i32, usize)>> = BTreeMap::new();
    for q in m.start()..m.end() {
        let t = m.term(q).expect("term in range");
        for (i, s) in t.basis().iter().enumerate() {
            layout.entry(q + s.degree).or_default().push((q, i));
        }
    }
    if layout.is_empty() {
        return Ok(ComplexOfModules::zero(dual.clone()));
    }
    let lo = *layout.keys().next().expect("nonempty");
    let hi = *layout.keys().last().expect("nonempty");
    let free: Vec<FreeModule> = (lo..=hi)
        .map(|n| {
            let gens = layout
                .get(&n)
                .map(|l| {
                    l.iter()
                        .map(|&(q, i)| {
                            let s = m.term(q).expect("term").basis()[i];
                            (s.vertex, -s.degree)
                        })
                        .collect()
                })
                .unwrap_or_default();
            FreeModule::new(dual.clone(), gens)
        })
        .collect();
    let find = |n: i32, q: i32, i: usize| -> usize {
        layout[&n].iter().position(|&p| p == (q, i)).expect("generator present")
    };
    let mut diffs = Vec::new();
    for n in lo..hi {
        let (src, tgt) = (&free[(n - lo) as usize], &free[(n + 1 - lo) as usize]);
        let mut images = Vec::new();
        for &(q, i) in layout.get(&n).map(|l| l.as_slice()).unwrap_or(&[]) {
            let t = m.term(q).expect("term");
            let s = t.basis()[i];
            let mut img = vec![Scalar::zero(); tgt.dim()];
            for (elem, source, star) in &arrows {
                if *source != s.vertex {
                    continue;
                }
                let col = t.action_of(elem).column(i);
                for (r, c) in col.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let pos = tgt.position(find(n + 1, q, r), *star).ok_or_else(|| {
                        Error::NotStrictifiable("dual arrow does not start at the expected vertex".into())
                    })?;
                    img[pos] += c;
                }
            }
            if m.term(q + 1).is_some() {
                let d = m.differential(q);
                let sg = sign(s.degree);
                for r in 0..d.rows() {
                    if d[(r, i)].is_zero() {
                        continue;
                    }
                    let pos = tgt.generator_position(find(n + 1, q + 1, r));
                    img[pos] += &sg * &d[(r, i)];
                }
            }
            images.push(img);
        }
        diffs.push(src.map_from_images(tgt.module(), &images));
    }
    ComplexOfModules::new(dual.clone(), lo, free.iter().map(|f| f.module().clone()).collect(), diffs)
        .map_err(|e| Error::NotStrictifiable(format!("{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::modules::{projective_module, simple_module};

    fn sl2() -> DualityContext {
        make_context(&Arc::new(library::sl2_block()), 4).unwrap()
    }

    #[test]
    fn sl2_context_matches_ext() {
        let ctx = sl2();
        assert_eq!(ctx.dual.dims_by_degree(), vec![2, 2, 1]);
        assert_eq!(ctx.e().dim(), 29);
    }

    #[test]
    fn psi_on_generators_and_simples() {
        let ctx = sl2();
        for w in 0..2 {
            let (_, cert) = ctx.psi(&ctx.koszul.component_complex(w)).unwrap();
            assert!(cert.is_quasi_iso());
            let s = ComplexOfModules::single(simple_module(&ctx.algebra, w).unwrap(), 0);
            assert!(ctx.psi(&s).unwrap().1.is_quasi_iso());
        }
    }

    #[test]
    fn phi_on_generators_and_free() {
        let ctx = sl2();
        for w in 0..2 {
            let g = ctx.generator(w).unwrap();
            assert!(ctx.phi(&g).unwrap().1.is_quasi_iso());
            assert!(ctx.phi(&g.shift_by(1).twist(2)).unwrap().1.is_quasi_iso());
        }
        assert!(ctx.phi(&ctx.free()).unwrap().1.is_quasi_iso());
        let bare = Certified::uncertified(ctx.free().module);
        assert_eq!(ctx.tensor_back(&bare).unwrap_err(), Error::MissingCertificate);
    }

    #[test]
    fn duality_of_simples_and_projectives() {
        let ctx = sl2();
        for w in 0..2 {
            let s = ComplexOfModules::single(simple_module(&ctx.algebra, w).unwrap(), 0);
            let d = ctx.koszul_duality(&s).unwrap();
            let total: usize = d.table.values().sum();
            assert_eq!(total, ctx.dual.right_projective_basis(w).len());
            assert!(d.strict.is_ok(), "{:?}", d.strict);
            let p = ComplexOfModules::single(projective_module(&ctx.algebra, w, 0).unwrap(), 0);
            let d = ctx.koszul_duality(&p).unwrap();
            assert!(d.strict.is_ok(), "{:?}", d.strict);
        }
    }

    #[test]
    fn sigma_is_an_isomorphism() {
        let ctx = sl2();
        let s = ComplexOfModules::single(simple_module(&ctx.algebra, 0).unwrap(), 0);
        let g = linear_complex(&ctx, &s).unwrap();
        sigma_twist_iso(&g, &ctx.dual_dg).unwrap();
    }

    #[test]
    fn dual_numbers_truncated_context() {
        let ctx = make_context(&Arc::new(library::dual_numbers(4)), 4).unwrap();
        assert!(ctx.truncated);
        assert_eq!(ctx.dual.dims_by_degree(), vec![1, 1, 1, 1, 1]);
    }
}
