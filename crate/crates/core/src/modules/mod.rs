//! Graded right modules over a [`GradedAlgebra`], their homomorphisms,
//! minimal projective resolutions, bimodules and complexes.
//!
//! Vectors are columns. The action of an algebra element `x` is a matrix
//! `R_x` with `m·x = R_x m`, so `R_{xy} = R_y R_x`.

mod bimodule;
mod complex;
mod resolution;

pub use bimodule::{tensor_with_bimodule, BiSlot, Bimodule, Tensor};
pub use complex::{ChainMap, ComplexOfModules, Table};
pub use resolution::{minimal_resolution, projective_cover, FreeModule, Resolution};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{GradedAlgebra, Surjection};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Matrix, PivotChoice, Scalar, SparseVec};

/// Homogeneous position of a basis vector: internal degree and vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub degree: i32,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    basis: Vec<Slot>,
    /// `R_x` for every basis element `x` of the algebra.
    actions: Vec<Matrix>,
}

pub(crate) fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedModule {
    /// Builds a module from the actions of the algebra's generators; the
    /// actions of all other basis elements are derived and every module
    /// axiom is validated.
    pub fn new(algebra: Arc<GradedAlgebra>, basis: Vec<Slot>, generator_actions: &[Matrix]) -> Result<Self> {
        if generator_actions.len() != algebra.generators().len() {
            return Err(Error::InvalidModule(format!(
                "expected {} generator actions, got {}",
                algebra.generators().len(),
                generator_actions.len()
            )));
        }
        let n = basis.len();
        for g in generator_actions {
            if g.rows() != n || g.cols() != n {
                return Err(Error::InvalidModule("action matrix has the wrong size".into()));
            }
        }
        let actions = derive_actions(&algebra, &basis, generator_actions);
        let m = GradedModule {
            algebra,
            basis,
            actions,
        };
        m.validate()?;
        Ok(m)
    }

    /// Trusted constructor for modules assembled from already valid ones.
    pub(crate) fn from_actions(algebra: Arc<GradedAlgebra>, basis: Vec<Slot>, actions: Vec<Matrix>) -> Self {
        let m = GradedModule {
            algebra,
            basis,
            actions,
        };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        let actions = vec![Matrix::zeros(0, 0); algebra.dim()];
        GradedModule {
            algebra,
            basis: Vec::new(),
            actions,
        }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Slot] {
        &self.basis
    }

    pub fn action(&self, x: usize) -> &Matrix {
        &self.actions[x]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, x: &SparseVec) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x {
            out.add_scaled(c, &self.actions[*i]);
        }
        out
    }

    /// Dimensions per (internal degree, vertex).
    pub fn dims(&self) -> BTreeMap<Slot, usize> {
        let mut out = BTreeMap::new();
        for s in &self.basis {
            *out.entry(*s).or_insert(0) += 1;
        }
        out
    }

    /// Total dimension per internal degree.
    pub fn degree_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for s in &self.basis {
            *out.entry(s.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn indices_in(&self, slot: Slot) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i] == slot).collect()
    }

    pub fn slots(&self) -> Vec<Slot> {
        self.dims().into_keys().collect()
    }

    /// Checks generator compatibility with the grading and vertex tags and
    /// `R_x R_y`-multiplicativity on all basis pairs (which encodes the
    /// defining relations).
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let n = self.dim();
        if self.actions.len() != a.dim() {
            return Err(Error::InvalidModule("one action per algebra basis element required".into()));
        }
        for (x, r) in self.actions.iter().enumerate() {
            let b = &a.basis()[x];
            for col in 0..n {
                for row in 0..n {
                    if r[(row, col)].is_zero() {
                        continue;
                    }
                    let (s, t) = (self.basis[col], self.basis[row]);
                    if s.vertex != b.source || t.vertex != b.target || t.degree != s.degree + b.degree as i32 {
                        return Err(Error::InvalidModule(format!(
                            "action of {} does not respect degree and vertex",
                            b.label
                        )));
                    }
                }
            }
        }
        let unit = self.action_of(&a.unit());
        if unit != Matrix::identity(n) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let lhs = self.action_of(a.basis_product(x, y));
                let rhs = self.actions[y].mul(&self.actions[x]);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "relation violated: action of {}·{}",
                        a.basis()[x].label,
                        a.basis()[y].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// `M⟨k⟩`, with `M⟨1⟩_i = M_{i−1}`.
    pub fn twist(&self, k: i32) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|s| Slot {
                degree: s.degree + k,
                vertex: s.vertex,
            })
            .collect();
        GradedModule {
            algebra: self.algebra.clone(),
            basis,
            actions: self.actions.clone(),
        }
    }

    pub fn direct_sum(algebra: Arc<GradedAlgebra>, parts: &[&GradedModule]) -> Self {
        let n: usize = parts.iter().map(|p| p.dim()).sum();
        let mut basis = Vec::with_capacity(n);
        for p in parts {
            basis.extend_from_slice(&p.basis);
        }
        let actions = (0..algebra.dim())
            .map(|x| {
                let mut m = Matrix::zeros(n, n);
                let mut off = 0;
                for p in parts {
                    let r = &p.actions[x];
                    for i in 0..p.dim() {
                        for j in 0..p.dim() {
                            if !r[(i, j)].is_zero() {
                                m[(off + i, off + j)] = r[(i, j)].clone();
                            }
                        }
                    }
                    off += p.dim();
                }
                m
            })
            .collect();
        GradedModule::from_actions(algebra, basis, actions)
    }

    /// Slot of a nonzero homogeneous vector.
    pub fn slot_of(&self, v: &[Scalar]) -> Option<Slot> {
        let mut slot = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match slot {
                None => slot = Some(self.basis[i]),
                Some(s) if s != self.basis[i] => return None,
                _ => {}
            }
        }
        slot
    }

    /// The submodule spanned by homogeneous columns closed under the action;
    /// returns it with the given columns as inclusion.
    pub fn submodule(&self, cols: &Matrix) -> Result<GradedModule> {
        let k = cols.cols();
        let mut basis = Vec::with_capacity(k);
        for c in 0..k {
            let slot = self
                .slot_of(&cols.column(c))
                .ok_or_else(|| Error::InvalidModule("submodule basis vector is not homogeneous".into()))?;
            basis.push(slot);
        }
        let mut actions = Vec::with_capacity(self.actions.len());
        for r in &self.actions {
            let image = r.mul(cols);
            let coords = cols
                .solve(&image)
                .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
            actions.push(coords);
        }
        Ok(GradedModule::from_actions(self.algebra.clone(), basis, actions))
    }

    /// Quotient by a submodule given by spanning homogeneous columns; returns
    /// the quotient and the projection matrix.
    pub fn quotient(&self, sub: &Matrix) -> (GradedModule, Matrix) {
        let mut ech = Echelon::new(self.dim(), PivotChoice::Last);
        for c in 0..sub.cols() {
            ech.insert(&crate::exactlin::sparse_from_dense(&sub.column(c)));
        }
        let q = crate::exactlin::Quotient::new(ech);
        let proj = Matrix::from_fn(q.dim(), self.dim(), |r, c| {
            crate::exactlin::sparse_get(&q.project(&vec![(c, Scalar::one())]), r)
        });
        let basis: Vec<Slot> = (0..q.dim()).map(|i| self.basis[q.lift(i)]).collect();
        let lifts = Matrix::from_fn(self.dim(), q.dim(), |r, c| {
            if r == q.lift(c) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let actions = self.actions.iter().map(|r| proj.mul(&r.mul(&lifts))).collect();
        (GradedModule::from_actions(self.algebra.clone(), basis, actions), proj)
    }

    /// Span of `M·A_+` as homogeneous columns.
    pub fn radical(&self) -> Matrix {
        let mut ech = Echelon::new(self.dim(), PivotChoice::First);
        for g in self.algebra.generators() {
            let r = self.action_of(&g.element);
            for c in 0..self.dim() {
                ech.insert(&crate::exactlin::sparse_from_dense(&r.column(c)));
            }
        }
        let vecs: Vec<Vec<Scalar>> = ech
            .rows()
            .iter()
            .map(|v| crate::exactlin::sparse_to_dense(v, self.dim()))
            .collect();
        homogeneous_span(self, &vecs)
    }

    /// Graded top `M / M·A_+` with its projection.
    pub fn top(&self) -> (GradedModule, Matrix) {
        self.quotient(&self.radical())
    }

    /// Restriction of scalars along a surjection `source ↠ self.algebra()`.
    pub fn restrict(&self, source: Arc<GradedAlgebra>, along: &Surjection) -> Result<GradedModule> {
        if along.matrix.rows() != self.algebra.dim() || along.matrix.cols() != source.dim() {
            return Err(Error::AlgebraMismatch("surjection does not match the algebras".into()));
        }
        let vertex_of = |v: usize| -> Result<usize> {
            source.vertex(&self.algebra.vertices()[v])
        };
        let mut basis = Vec::with_capacity(self.dim());
        for s in &self.basis {
            basis.push(Slot {
                degree: s.degree,
                vertex: vertex_of(s.vertex)?,
            });
        }
        let actions = (0..source.dim())
            .map(|x| {
                let img: SparseVec = (0..along.matrix.rows())
                    .filter(|&r| !along.matrix[(r, x)].is_zero())
                    .map(|r| (r, along.matrix[(r, x)].clone()))
                    .collect();
                self.action_of(&img)
            })
            .collect();
        let m = GradedModule {
            algebra: source,
            basis,
            actions,
        };
        m.validate()?;
        Ok(m)
    }
}

/// Splits a spanning set into homogeneous components and returns a basis of
/// their span made of homogeneous vectors.
pub(crate) fn homogeneous_span(m: &GradedModule, vecs: &[Vec<Scalar>]) -> Matrix {
    let mut by_slot: BTreeMap<Slot, Echelon> = BTreeMap::new();
    for v in vecs {
        let mut parts: BTreeMap<Slot, Vec<Scalar>> = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts
                .entry(m.basis[i])
                .or_insert_with(|| vec![Scalar::zero(); m.dim()])[i] = c.clone();
        }
        for (slot, p) in parts {
            by_slot
                .entry(slot)
                .or_insert_with(|| Echelon::new(m.dim(), PivotChoice::First))
                .insert(&crate::exactlin::sparse_from_dense(&p));
        }
    }
    let cols: Vec<Vec<Scalar>> = by_slot
        .values()
        .flat_map(|e| e.rows().iter().map(|r| crate::exactlin::sparse_to_dense(r, m.dim())))
        .collect();
    Matrix::from_columns(m.dim(), &cols)
}

/// Homogeneous basis of the kernel of a graded map `f: m → n` (matrix
/// `dim n × dim m`), as columns in `m`'s coordinates.
pub fn homogeneous_kernel(m: &GradedModule, f: &Matrix) -> Matrix {
    let mut cols = Vec::new();
    for slot in m.slots() {
        let idx = m.indices_in(slot);
        let k = f.select_columns(&idx).kernel_basis();
        for c in 0..k.cols() {
            let mut v = vec![Scalar::zero(); m.dim()];
            for (r, &i) in idx.iter().enumerate() {
                v[i] = k[(r, c)].clone();
            }
            cols.push(v);
        }
    }
    Matrix::from_columns(m.dim(), &cols)
}

fn derive_actions(a: &GradedAlgebra, basis: &[Slot], gens: &[Matrix]) -> Vec<Matrix> {
    let n = basis.len();
    let mut actions: Vec<Option<Matrix>> = vec![None; a.dim()];
    for v in 0..a.vertex_count() {
        let e = Matrix::from_fn(n, n, |r, c| {
            if r == c && basis[r].vertex == v {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        actions[a.idempotent(v)] = Some(e);
    }
    let mut order: Vec<usize> = (0..a.dim()).filter(|&x| a.basis()[x].degree > 0).collect();
    order.sort_by_key(|&x| a.basis()[x].degree);
    for x in order {
        let mut r = Matrix::zeros(n, n);
        for (c, g, y) in a.factorization(x) {
            let ry = actions[*y].as_ref().expect("lower degrees are computed first");
            r.add_scaled(c, &ry.mul(&gens[*g]));
        }
        actions[x] = Some(r);
    }
    actions.into_iter().map(|m| m.expect("every basis element handled")).collect()
}

/// Simple module at `v`: one dimension in internal degree 0.
pub fn simple_module(a: &Arc<GradedAlgebra>, v: usize) -> Result<GradedModule> {
    if v >= a.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let basis = vec![Slot { degree: 0, vertex: v }];
    let gens = vec![Matrix::zeros(1, 1); a.generators().len()];
    GradedModule::new(a.clone(), basis, &gens)
}

/// `⊕_v k_v`, the degree-zero part of the algebra as a module.
pub fn all_simples(a: &Arc<GradedAlgebra>) -> GradedModule {
    let simples: Vec<GradedModule> = (0..a.vertex_count())
        .map(|v| simple_module(a, v).expect("vertex in range"))
        .collect();
    let refs: Vec<&GradedModule> = simples.iter().collect();
    GradedModule::direct_sum(a.clone(), &refs)
}

/// `e_v A ⟨twist⟩`.
pub fn projective_module(a: &Arc<GradedAlgebra>, v: usize, twist: i32) -> Result<GradedModule> {
    if v >= a.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    Ok(FreeModule::new(a.clone(), vec![(v, twist)]).module().clone())
}

/// A degree-`shift` homomorphism: maps `M_i` into `N_{i+shift}`; the matrix
/// is `dim N × dim M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModuleMap {
    pub shift: i32,
    pub matrix: Matrix,
}

impl GradedModuleMap {
    pub fn zero(m: &GradedModule, n: &GradedModule, shift: i32) -> Self {
        GradedModuleMap {
            shift,
            matrix: Matrix::zeros(n.dim(), m.dim()),
        }
    }

    pub fn identity(m: &GradedModule) -> Self {
        GradedModuleMap {
            shift: 0,
            matrix: Matrix::identity(m.dim()),
        }
    }

    /// Whether the matrix is graded of the recorded shift, respects vertices
    /// and commutes with every generator.
    pub fn is_homomorphism(&self, m: &GradedModule, n: &GradedModule) -> bool {
        if self.matrix.rows() != n.dim() || self.matrix.cols() != m.dim() {
            return false;
        }
        for c in 0..m.dim() {
            for r in 0..n.dim() {
                if self.matrix[(r, c)].is_zero() {
                    continue;
                }
                let (s, t) = (m.basis[c], n.basis[r]);
                if s.vertex != t.vertex || t.degree != s.degree + self.shift {
                    return false;
                }
            }
        }
        m.algebra.generators().iter().all(|g| {
            let rm = m.action_of(&g.element);
            let rn = n.action_of(&g.element);
            self.matrix.mul(&rm) == rn.mul(&self.matrix)
        })
    }
}

/// Basis of the homomorphisms `m → n⟨shift⟩`, i.e. maps `m_i → n_{i+shift}`
/// commuting with the action.
pub fn hom_space(m: &GradedModule, n: &GradedModule, shift: i32) -> Vec<GradedModuleMap> {
    let unknowns: Vec<(usize, usize)> = (0..n.dim())
        .flat_map(|r| (0..m.dim()).map(move |c| (r, c)))
        .filter(|&(r, c)| n.basis[r].vertex == m.basis[c].vertex && n.basis[r].degree == m.basis[c].degree + shift)
        .collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    let col_of: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in m.algebra.generators() {
        let rm = m.action_of(&g.element);
        let rn = n.action_of(&g.element);
        // (f R^m)[r][c] − (R^n f)[r][c] = 0
        for r in 0..n.dim() {
            for c in 0..m.dim() {
                let mut row = vec![Scalar::zero(); unknowns.len()];
                let mut any = false;
                for i in 0..m.dim() {
                    if rm[(i, c)].is_zero() {
                        continue;
                    }
                    if let Some(&u) = col_of.get(&(r, i)) {
                        row[u] += &rm[(i, c)];
                        any = true;
                    }
                }
                for j in 0..n.dim() {
                    if rn[(r, j)].is_zero() {
                        continue;
                    }
                    if let Some(&u) = col_of.get(&(j, c)) {
                        row[u] -= &rn[(r, j)];
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let constraints = Matrix::from_fn(rows.len(), unknowns.len(), |r, c| rows[r][c].clone());
    let k = constraints.kernel_basis();
    (0..k.cols())
        .map(|b| {
            let mut f = Matrix::zeros(n.dim(), m.dim());
            for (u, &(r, c)) in unknowns.iter().enumerate() {
                f[(r, c)] = k[(u, b)].clone();
            }
            GradedModuleMap { shift, matrix: f }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn simple_and_projective_dims() {
        let a = Arc::new(library::sl2_block());
        let se = simple_module(&a, 0).unwrap();
        assert_eq!(se.dim(), 1);
        assert!(simple_module(&a, 7).is_err());
        assert_eq!(all_simples(&a).dim(), 2);

        let ps = projective_module(&a, 1, 0).unwrap();
        let dims: Vec<(i32, usize, usize)> = ps.dims().into_iter().map(|(s, d)| (s.degree, s.vertex, d)).collect();
        assert_eq!(dims, vec![(0, 1, 1), (1, 0, 1), (2, 1, 1)]);
        let pe = projective_module(&a, 0, 3).unwrap();
        let dims: Vec<(i32, usize, usize)> = pe.dims().into_iter().map(|(s, d)| (s.degree, s.vertex, d)).collect();
        assert_eq!(dims, vec![(3, 0, 1), (4, 1, 1)]);

        let d = Arc::new(library::dual_numbers(3));
        let p = projective_module(&d, 0, 0).unwrap();
        assert_eq!(p.degree_dims().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn invalid_actions_rejected() {
        let a = Arc::new(library::dual_numbers(3));
        // x acting as a nonzero map from degree 0 to degree 1 and again from
        // degree 1 to degree 2 violates x² = 0
        let basis = vec![
            Slot { degree: 0, vertex: 0 },
            Slot { degree: 1, vertex: 0 },
            Slot { degree: 2, vertex: 0 },
        ];
        let x = Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(GradedModule::new(a, basis, &[x]).is_err());
    }

    #[test]
    fn hom_space_examples() {
        let a = Arc::new(library::sl2_block());
        let se = simple_module(&a, 0).unwrap();
        let ss = simple_module(&a, 1).unwrap();
        assert_eq!(hom_space(&se, &se, 0).len(), 1);
        assert_eq!(hom_space(&se, &ss, 0).len(), 0);
        let pe = projective_module(&a, 0, 0).unwrap();
        let ps = projective_module(&a, 1, 0).unwrap();
        let h = hom_space(&pe, &ps, 1);
        assert_eq!(h.len(), 1);
        assert!(h[0].is_homomorphism(&pe, &ps));
        assert_eq!(hom_space(&ps, &ps, 0).len(), 1);
        assert_eq!(hom_space(&ps, &ps, 2).len(), 1);
    }

    #[test]
    fn top_and_radical() {
        let a = Arc::new(library::sl2_block());
        let ps = projective_module(&a, 1, 0).unwrap();
        let (top, _) = ps.top();
        assert_eq!(top.dims().into_iter().collect::<Vec<_>>(), vec![(Slot { degree: 0, vertex: 1 }, 1)]);
        let rad = ps.radical();
        let sub = ps.submodule(&rad).unwrap();
        assert_eq!(sub.dim(), 2);
    }

    #[test]
    fn restriction_along_quotient() {
        let a = Arc::new(library::sl2_block());
        let (q, surj) = crate::algebra::quotient_by_idempotents(&a, &[0]).unwrap();
        let q = Arc::new(q);
        let s = simple_module(&q, 0).unwrap();
        let r = s.restrict(a.clone(), &surj).unwrap();
        assert_eq!(r, simple_module(&a, 1).unwrap());
    }
}
