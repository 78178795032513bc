use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{same_algebra, GradedModule, Slot};
use crate::algebra::{GradedAlgebra, Surjection};
use crate::error::{Error, Result};
use crate::exactlin::{sparse_from_dense, sparse_to_dense, Echelon, Matrix, PivotChoice, Quotient, Scalar, SparseVec};

/// Homogeneous position in a bimodule: `e_left · b · e_right = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiSlot {
    pub degree: i32,
    pub left: usize,
    pub right: usize,
}

/// A graded `(A, B)`-bimodule. Left actions satisfy `L_{xy} = L_x L_y`,
/// right actions `R_{xy} = R_y R_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<GradedAlgebra>,
    right: Arc<GradedAlgebra>,
    basis: Vec<BiSlot>,
    left_actions: Vec<Matrix>,
    right_actions: Vec<Matrix>,
}

fn idempotent_projection(n: usize, keep: impl Fn(usize) -> bool) -> Matrix {
    Matrix::from_fn(n, n, |r, c| if r == c && keep(r) { Scalar::one() } else { Scalar::zero() })
}

fn derive_left(a: &GradedAlgebra, basis: &[BiSlot], gens: &[Matrix]) -> Vec<Matrix> {
    let n = basis.len();
    let mut out: Vec<Option<Matrix>> = vec![None; a.dim()];
    for v in 0..a.vertex_count() {
        out[a.idempotent(v)] = Some(idempotent_projection(n, |i| basis[i].left == v));
    }
    let mut order: Vec<usize> = (0..a.dim()).filter(|&x| a.basis()[x].degree > 0).collect();
    order.sort_by_key(|&x| a.basis()[x].degree);
    for x in order {
        let mut m = Matrix::zeros(n, n);
        for (c, g, y) in a.factorization(x) {
            m.add_scaled(c, &gens[*g].mul(out[*y].as_ref().expect("lower degree first")));
        }
        out[x] = Some(m);
    }
    out.into_iter().map(|m| m.expect("filled")).collect()
}

fn derive_right(a: &GradedAlgebra, basis: &[BiSlot], gens: &[Matrix]) -> Vec<Matrix> {
    let n = basis.len();
    let mut out: Vec<Option<Matrix>> = vec![None; a.dim()];
    for v in 0..a.vertex_count() {
        out[a.idempotent(v)] = Some(idempotent_projection(n, |i| basis[i].right == v));
    }
    let mut order: Vec<usize> = (0..a.dim()).filter(|&x| a.basis()[x].degree > 0).collect();
    order.sort_by_key(|&x| a.basis()[x].degree);
    for x in order {
        let mut m = Matrix::zeros(n, n);
        for (c, g, y) in a.factorization(x) {
            m.add_scaled(c, &out[*y].as_ref().expect("lower degree first").mul(&gens[*g]));
        }
        out[x] = Some(m);
    }
    out.into_iter().map(|m| m.expect("filled")).collect()
}

fn combine(actions: &[Matrix], x: &SparseVec, n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for (i, c) in x {
        out.add_scaled(c, &actions[*i]);
    }
    out
}

impl Bimodule {
    /// Builds a bimodule from generator actions on both sides and validates
    /// every axiom.
    pub fn new(
        left: Arc<GradedAlgebra>,
        right: Arc<GradedAlgebra>,
        basis: Vec<BiSlot>,
        left_generators: &[Matrix],
        right_generators: &[Matrix],
    ) -> Result<Self> {
        let n = basis.len();
        if left_generators.len() != left.generators().len() || right_generators.len() != right.generators().len() {
            return Err(Error::InvalidModule("one action matrix per generator required".into()));
        }
        if left_generators
            .iter()
            .chain(right_generators)
            .any(|m| m.rows() != n || m.cols() != n)
        {
            return Err(Error::InvalidModule("bimodule action matrix has the wrong size".into()));
        }
        let left_actions = derive_left(&left, &basis, left_generators);
        let right_actions = derive_right(&right, &basis, right_generators);
        let b = Bimodule {
            left,
            right,
            basis,
            left_actions,
            right_actions,
        };
        b.validate()?;
        Ok(b)
    }

    fn from_actions(
        left: Arc<GradedAlgebra>,
        right: Arc<GradedAlgebra>,
        basis: Vec<BiSlot>,
        left_actions: Vec<Matrix>,
        right_actions: Vec<Matrix>,
    ) -> Self {
        let b = Bimodule {
            left,
            right,
            basis,
            left_actions,
            right_actions,
        };
        debug_assert!(b.validate().is_ok(), "{:?}", b.validate());
        b
    }

    pub fn left(&self) -> &Arc<GradedAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<GradedAlgebra> {
        &self.right
    }

    pub fn basis(&self) -> &[BiSlot] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn left_action(&self, x: usize) -> &Matrix {
        &self.left_actions[x]
    }

    pub fn right_action(&self, y: usize) -> &Matrix {
        &self.right_actions[y]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let (a, b) = (&self.left, &self.right);
        for (x, l) in self.left_actions.iter().enumerate() {
            let bx = &a.basis()[x];
            for c in 0..n {
                for r in 0..n {
                    if l[(r, c)].is_zero() {
                        continue;
                    }
                    let (s, t) = (self.basis[c], self.basis[r]);
                    if s.left != bx.target || t.left != bx.source || s.right != t.right || t.degree != s.degree + bx.degree as i32 {
                        return Err(Error::InvalidModule(format!("left action of {} is not homogeneous", bx.label)));
                    }
                }
            }
        }
        for (y, rm) in self.right_actions.iter().enumerate() {
            let by = &b.basis()[y];
            for c in 0..n {
                for r in 0..n {
                    if rm[(r, c)].is_zero() {
                        continue;
                    }
                    let (s, t) = (self.basis[c], self.basis[r]);
                    if s.right != by.source || t.right != by.target || s.left != t.left || t.degree != s.degree + by.degree as i32 {
                        return Err(Error::InvalidModule(format!("right action of {} is not homogeneous", by.label)));
                    }
                }
            }
        }
        let id = Matrix::identity(n);
        if combine(&self.left_actions, &a.unit(), n) != id || combine(&self.right_actions, &b.unit(), n) != id {
            return Err(Error::InvalidModule("units do not act as the identity".into()));
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                if combine(&self.left_actions, a.basis_product(x, y), n) != self.left_actions[x].mul(&self.left_actions[y]) {
                    return Err(Error::InvalidModule("left action is not multiplicative".into()));
                }
            }
        }
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                if combine(&self.right_actions, b.basis_product(x, y), n) != self.right_actions[y].mul(&self.right_actions[x]) {
                    return Err(Error::InvalidModule("right action is not multiplicative".into()));
                }
            }
        }
        for l in &self.left_actions {
            for r in &self.right_actions {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InvalidModule("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &Arc<GradedAlgebra>) -> Self {
        let n = a.dim();
        let basis = a
            .basis()
            .iter()
            .map(|b| BiSlot {
                degree: b.degree as i32,
                left: b.source,
                right: b.target,
            })
            .collect();
        let left = (0..n)
            .map(|x| {
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (r, v) in a.basis_product(x, c) {
                        m[(*r, c)] = v.clone();
                    }
                }
                m
            })
            .collect();
        let right = (0..n)
            .map(|y| {
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (r, v) in a.basis_product(c, y) {
                        m[(*r, c)] = v.clone();
                    }
                }
                m
            })
            .collect();
        Bimodule::from_actions(a.clone(), a.clone(), basis, left, right)
    }

    /// A quotient algebra `Q` of `A` as an `(A, Q)`-bimodule.
    pub fn quotient(a: &Arc<GradedAlgebra>, q: &Arc<GradedAlgebra>, surj: &Surjection) -> Result<Self> {
        let n = q.dim();
        let mut basis = Vec::with_capacity(n);
        for b in q.basis() {
            basis.push(BiSlot {
                degree: b.degree as i32,
                left: a.vertex(&q.vertices()[b.source])?,
                right: b.target,
            });
        }
        let right = (0..n)
            .map(|y| {
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (r, v) in q.basis_product(c, y) {
                        m[(*r, c)] = v.clone();
                    }
                }
                m
            })
            .collect();
        let left = (0..a.dim())
            .map(|x| {
                let img = surj.apply(&vec![(x, Scalar::one())]);
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (r, v) in q.mul(&img, &vec![(c, Scalar::one())]) {
                        m[(r, c)] = v;
                    }
                }
                m
            })
            .collect();
        let b = Bimodule {
            left: a.clone(),
            right: q.clone(),
            basis,
            left_actions: left,
            right_actions: right,
        };
        b.validate()?;
        Ok(b)
    }

    /// `⊕_{(w, v)} A e_v` as an `(A, B)`-bimodule for a semisimple `B`,
    /// where `B`'s vertex `w` acts on the right of the summand `A e_v`.
    pub fn right_corner(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>, pairs: &[(usize, usize)]) -> Result<Self> {
        if b.dim() != b.vertex_count() {
            return Err(Error::InvalidDatum("corner bimodules need a semisimple partner algebra".into()));
        }
        let mut basis = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for &(w, v) in pairs {
            for x in 0..a.dim() {
                if a.basis()[x].target == v {
                    basis.push(BiSlot {
                        degree: a.basis()[x].degree as i32,
                        left: a.basis()[x].source,
                        right: w,
                    });
                    cols.push(x);
                }
            }
        }
        let n = basis.len();
        let left = (0..a.dim())
            .map(|x| {
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (z, v) in a.basis_product(x, cols[c]) {
                        let r = (0..n)
                            .find(|&r| cols[r] == *z && basis[r].right == basis[c].right)
                            .expect("A e_v is a left ideal");
                        m[(r, c)] = v.clone();
                    }
                }
                m
            })
            .collect();
        Bimodule::new(a.clone(), b.clone(), basis, &select_generators(a, left), &[])
    }

    /// `⊕_{(w, v)} e_v A` as a `(B, A)`-bimodule for a semisimple `B`.
    pub fn left_corner(b: &Arc<GradedAlgebra>, a: &Arc<GradedAlgebra>, pairs: &[(usize, usize)]) -> Result<Self> {
        if b.dim() != b.vertex_count() {
            return Err(Error::InvalidDatum("corner bimodules need a semisimple partner algebra".into()));
        }
        let mut basis = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for &(w, v) in pairs {
            for x in 0..a.dim() {
                if a.basis()[x].source == v {
                    basis.push(BiSlot {
                        degree: a.basis()[x].degree as i32,
                        left: w,
                        right: a.basis()[x].target,
                    });
                    cols.push(x);
                }
            }
        }
        let n = basis.len();
        let right = (0..a.dim())
            .map(|y| {
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (z, v) in a.basis_product(cols[c], y) {
                        let r = (0..n)
                            .find(|&r| cols[r] == *z && basis[r].left == basis[c].left)
                            .expect("e_v A is a right ideal");
                        m[(r, c)] = v.clone();
                    }
                }
                m
            })
            .collect();
        Bimodule::new(b.clone(), a.clone(), basis, &[], &select_generators(a, right))
    }

    /// Matrices of the generators, for serialization.
    pub fn left_generator_actions(&self) -> Vec<Matrix> {
        self.left
            .generators()
            .iter()
            .map(|g| combine(&self.left_actions, &g.element, self.dim()))
            .collect()
    }

    pub fn right_generator_actions(&self) -> Vec<Matrix> {
        self.right
            .generators()
            .iter()
            .map(|g| combine(&self.right_actions, &g.element, self.dim()))
            .collect()
    }

    /// The right `B`-module underlying the bimodule, cut down at the left
    /// vertex `v`: `e_v X`.
    pub fn left_cut(&self, v: usize) -> GradedModule {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.basis[i].left == v).collect();
        let basis = idx
            .iter()
            .map(|&i| Slot {
                degree: self.basis[i].degree,
                vertex: self.basis[i].right,
            })
            .collect();
        let actions = self.right_actions.iter().map(|r| r.select(&idx, &idx)).collect();
        GradedModule::from_actions(self.right.clone(), basis, actions)
    }
}

fn select_generators(a: &GradedAlgebra, all: Vec<Matrix>) -> Vec<Matrix> {
    a.generators()
        .iter()
        .map(|g| {
            let n = all.first().map(|m| m.rows()).unwrap_or(0);
            combine(&all, &g.element, n)
        })
        .collect()
}

/// The balanced tensor product `M ⊗_A X` together with the data needed to
/// tensor maps: the ambient space is spanned by pairs `(m_i, x_k)` with
/// matching vertices.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: GradedModule,
    pairs: Vec<(usize, usize)>,
    quotient: Quotient,
    x_dim: usize,
}

impl Tensor {
    fn pair_index(&self, i: usize, k: usize) -> Option<usize> {
        self.pairs.binary_search(&(i, k)).ok()
    }

    /// Class of `m_i ⊗ x_k` in the tensor product.
    pub fn class(&self, i: usize, k: usize) -> SparseVec {
        match self.pair_index(i, k) {
            Some(p) => self.quotient.project(&vec![(p, Scalar::one())]),
            None => Vec::new(),
        }
    }

    /// `f ⊗ 1` for a homomorphism `f: M → M'` (matrix `dim M' × dim M`).
    pub fn map_to(&self, other: &Tensor, f: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(other.module.dim(), self.module.dim());
        for c in 0..self.module.dim() {
            let (i, k) = self.pairs[self.quotient.lift(c)];
            let mut acc = Vec::new();
            for j in 0..f.rows() {
                if f[(j, i)].is_zero() {
                    continue;
                }
                acc = crate::exactlin::sparse_axpy(&acc, &f[(j, i)], &other.class(j, k));
            }
            for (r, v) in acc {
                out[(r, c)] = v;
            }
        }
        out
    }

    pub fn bimodule_dim(&self) -> usize {
        self.x_dim
    }
}

/// `M ⊗_A X` for a right `A`-module `M` and an `(A, B)`-bimodule `X`.
pub fn tensor_with_bimodule(m: &GradedModule, x: &Bimodule) -> Result<Tensor> {
    if !same_algebra(m.algebra(), &x.left) {
        return Err(Error::AlgebraMismatch("module algebra differs from the bimodule's left algebra".into()));
    }
    let a = m.algebra();
    let pairs: Vec<(usize, usize)> = (0..m.dim())
        .flat_map(|i| (0..x.dim()).map(move |k| (i, k)))
        .filter(|&(i, k)| m.basis()[i].vertex == x.basis[k].left)
        .collect();
    let index = |i: usize, k: usize| pairs.binary_search(&(i, k)).ok();
    let mut rel = Echelon::new(pairs.len(), PivotChoice::Last);
    for g in a.generators() {
        let rm = m.action_of(&g.element);
        let lx = combine(&x.left_actions, &g.element, x.dim());
        for i in 0..m.dim() {
            if m.basis()[i].vertex != g.source {
                continue;
            }
            for k in 0..x.dim() {
                if x.basis[k].left != g.target {
                    continue;
                }
                // (m_i · g) ⊗ x_k − m_i ⊗ (g · x_k)
                let mut v = vec![Scalar::zero(); pairs.len()];
                for j in 0..m.dim() {
                    if !rm[(j, i)].is_zero() {
                        if let Some(p) = index(j, k) {
                            v[p] += &rm[(j, i)];
                        }
                    }
                }
                for l in 0..x.dim() {
                    if !lx[(l, k)].is_zero() {
                        if let Some(p) = index(i, l) {
                            v[p] -= &lx[(l, k)];
                        }
                    }
                }
                rel.insert(&sparse_from_dense(&v));
            }
        }
    }
    let quotient = Quotient::new(rel);
    let basis: Vec<Slot> = quotient
        .kept()
        .iter()
        .map(|&p| {
            let (i, k) = pairs[p];
            Slot {
                degree: m.basis()[i].degree + x.basis[k].degree,
                vertex: x.basis[k].right,
            }
        })
        .collect();
    let dim = basis.len();
    let actions = x
        .right_actions
        .iter()
        .map(|r| {
            let mut out = Matrix::zeros(dim, dim);
            for c in 0..dim {
                let (i, k) = pairs[quotient.lift(c)];
                let mut v = vec![Scalar::zero(); pairs.len()];
                for l in 0..x.dim() {
                    if !r[(l, k)].is_zero() {
                        if let Some(p) = index(i, l) {
                            v[p] += &r[(l, k)];
                        }
                    }
                }
                let img = quotient.project(&sparse_from_dense(&v));
                out.set_column(c, &sparse_to_dense(&img, dim));
            }
            out
        })
        .collect();
    let module = GradedModule::from_actions(x.right.clone(), basis, actions);
    Ok(Tensor {
        module,
        pairs,
        quotient,
        x_dim: x.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quotient_by_idempotents;
    use crate::library;
    use crate::modules::{all_simples, hom_space, projective_module, simple_module};
    use crate::exactlin::Matrix;

    #[test]
    fn regular_bimodule_is_unit() {
        let a = Arc::new(library::sl2_block());
        let x = Bimodule::regular(&a);
        x.validate().unwrap();
        for m in [projective_module(&a, 0, 1).unwrap(), all_simples(&a), projective_module(&a, 1, 0).unwrap()] {
            let t = tensor_with_bimodule(&m, &x).unwrap();
            assert_eq!(t.module.dims(), m.dims());
            // m ↦ m ⊗ e_v is an isomorphism of modules
            let iso = Matrix::from_fn(t.module.dim(), m.dim(), |r, c| {
                let v = m.basis()[c].vertex;
                crate::exactlin::sparse_get(&t.class(c, a.idempotent(v)), r)
            });
            assert_eq!(iso.rank(), m.dim());
            let map = crate::modules::GradedModuleMap { shift: 0, matrix: iso };
            assert!(map.is_homomorphism(&m, &t.module));
        }
    }

    #[test]
    fn quotient_bimodule_truncates() {
        let a = Arc::new(library::sl2_block());
        let (q, surj) = quotient_by_idempotents(&a, &[0]).unwrap();
        let q = Arc::new(q);
        let y = Bimodule::quotient(&a, &q, &surj).unwrap();
        let killed = tensor_with_bimodule(&simple_module(&a, 0).unwrap(), &y).unwrap();
        assert!(killed.module.is_zero());
        let kept = tensor_with_bimodule(&simple_module(&a, 1).unwrap(), &y).unwrap();
        assert_eq!(kept.module, simple_module(&q, 0).unwrap());
    }

    #[test]
    fn tensor_is_right_exact_on_a_presentation() {
        // P(e)⟨1⟩ → P(s) → S_s → 0, tensored with the quotient bimodule
        let a = Arc::new(library::sl2_block());
        let (q, surj) = quotient_by_idempotents(&a, &[0]).unwrap();
        let q = Arc::new(q);
        let y = Bimodule::quotient(&a, &q, &surj).unwrap();
        let pe = projective_module(&a, 0, 1).unwrap();
        let ps = projective_module(&a, 1, 0).unwrap();
        let f = &hom_space(&pe, &ps, 0)[0];
        let (coker, _) = ps.quotient(&f.matrix);
        let t_pe = tensor_with_bimodule(&pe, &y).unwrap();
        let t_ps = tensor_with_bimodule(&ps, &y).unwrap();
        let tf = t_pe.map_to(&t_ps, &f.matrix);
        let t_coker = tensor_with_bimodule(&coker, &y).unwrap();
        assert_eq!(t_coker.module.dim(), t_ps.module.dim() - tf.rank());
    }

    #[test]
    fn corner_bimodules() {
        let a = Arc::new(library::sl2_block());
        let b = Arc::new(GradedAlgebra::ground_field("l"));
        let x = Bimodule::right_corner(&a, &b, &[(0, 1)]).unwrap();
        assert_eq!(x.dim(), 3);
        let xp = Bimodule::left_corner(&b, &a, &[(0, 1)]).unwrap();
        assert_eq!(xp.dim(), 3);
        let t = tensor_with_bimodule(&projective_module(&a, 0, 0).unwrap(), &x).unwrap();
        assert_eq!(t.module.dim(), 1);
        let t = tensor_with_bimodule(&simple_module(&a, 0).unwrap(), &x).unwrap();
        assert!(t.module.is_zero());
    }
}
