use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{homogeneous_kernel, ComplexOfModules, GradedModule, Slot};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{sparse_from_dense, Echelon, Matrix, PivotChoice, Scalar};

/// `⊕_k e_{v_k} A ⟨t_k⟩` with its generators recorded. The basis is
/// `(k, x)` for `x` an algebra basis element with source `v_k`, in
/// generator-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    gens: Vec<(usize, i32)>,
    offsets: Vec<usize>,
    /// For each generator, the algebra basis elements spanning `e_v A`.
    columns: Vec<Vec<usize>>,
    module: GradedModule,
}

impl FreeModule {
    pub fn new(a: Arc<GradedAlgebra>, gens: Vec<(usize, i32)>) -> Self {
        let mut basis = Vec::new();
        let mut offsets = Vec::with_capacity(gens.len());
        let mut columns = Vec::with_capacity(gens.len());
        for &(v, t) in &gens {
            offsets.push(basis.len());
            let cols = a.right_projective_basis(v);
            for &x in &cols {
                let b = &a.basis()[x];
                basis.push(Slot {
                    degree: t + b.degree as i32,
                    vertex: b.target,
                });
            }
            columns.push(cols);
        }
        let n = basis.len();
        let mut actions = Vec::with_capacity(a.dim());
        for y in 0..a.dim() {
            let mut r = Matrix::zeros(n, n);
            for (k, cols) in columns.iter().enumerate() {
                for (j, &x) in cols.iter().enumerate() {
                    for (z, c) in a.basis_product(x, y) {
                        let row = cols.iter().position(|w| w == z).expect("e_v A is a right ideal");
                        r[(offsets[k] + row, offsets[k] + j)] = c.clone();
                    }
                }
            }
            actions.push(r);
        }
        let module = GradedModule::from_actions(a, basis, actions);
        FreeModule {
            gens,
            offsets,
            columns,
            module,
        }
    }

    pub fn generators(&self) -> &[(usize, i32)] {
        &self.gens
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Coordinate of `(generator k, algebra basis element x)`.
    pub fn position(&self, k: usize, x: usize) -> Option<usize> {
        self.columns[k].iter().position(|&y| y == x).map(|j| self.offsets[k] + j)
    }

    /// Coordinate of generator `k` itself (`k · e_v`).
    pub fn generator_position(&self, k: usize) -> usize {
        let a = self.module.algebra();
        self.position(k, a.idempotent(self.gens[k].0)).expect("idempotent lies in e_v A")
    }

    /// `(generator, algebra basis element)` at a coordinate.
    pub fn decompose(&self, pos: usize) -> (usize, usize) {
        let k = self.offsets.iter().rposition(|&o| o <= pos).expect("position in range");
        (k, self.columns[k][pos - self.offsets[k]])
    }

    pub fn generator_range(&self, k: usize) -> core::ops::Range<usize> {
        self.offsets[k]..self.offsets[k] + self.columns[k].len()
    }

    /// The homomorphism to `target` sending generator `k` to `images[k]`.
    /// Images must be homogeneous at the generator's vertex and degree plus `shift`.
    pub fn map_from_images(&self, target: &GradedModule, images: &[Vec<Scalar>]) -> Matrix {
        let mut f = Matrix::zeros(target.dim(), self.dim());
        for (k, img) in images.iter().enumerate() {
            for (j, &x) in self.columns[k].iter().enumerate() {
                let col = target.action(x).mul_vec(img);
                f.set_column(self.offsets[k] + j, &col);
            }
        }
        f
    }
}

/// A minimal graded projective resolution `⋯ → P_1 → P_0 ↠ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub resolved: GradedModule,
    /// `P_0, P_1, …` (homological indexing).
    pub terms: Vec<FreeModule>,
    /// `differentials[i − 1]: P_i → P_{i−1}`.
    pub differentials: Vec<Matrix>,
    pub augmentation: Matrix,
    /// Set when the length bound stopped a resolution with nonzero syzygy.
    pub truncated: bool,
}

/// Projective cover of a nonzero module: one generator per basis vector of
/// the graded top, chosen among basis vectors in stored order.
pub fn projective_cover(m: &GradedModule) -> Result<(FreeModule, Matrix)> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(cover_unchecked(m))
}

fn cover_unchecked(m: &GradedModule) -> (FreeModule, Matrix) {
    let n = m.dim();
    let mut ech = Echelon::new(n, PivotChoice::First);
    let rad = m.radical();
    for c in 0..rad.cols() {
        ech.insert(&sparse_from_dense(&rad.column(c)));
    }
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for i in 0..n {
        if ech.insert(&vec![(i, Scalar::one())]) {
            let s = m.basis()[i];
            gens.push((s.vertex, s.degree));
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            images.push(e);
        }
    }
    let p = FreeModule::new(m.algebra().clone(), gens);
    let f = p.map_from_images(m, &images);
    (p, f)
}

/// Iterated projective covers of syzygies, stopping at a zero syzygy or
/// after `length_bound` further terms.
pub fn minimal_resolution(m: &GradedModule, length_bound: usize) -> Resolution {
    let a = m.algebra().clone();
    if m.is_zero() {
        return Resolution {
            resolved: m.clone(),
            terms: vec![FreeModule::new(a, Vec::new())],
            differentials: Vec::new(),
            augmentation: Matrix::zeros(0, 0),
            truncated: false,
        };
    }
    let (p0, eps) = cover_unchecked(m);
    let mut kernel = homogeneous_kernel(p0.module(), &eps);
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let mut truncated = false;
    loop {
        if kernel.cols() == 0 {
            break;
        }
        if terms.len() > length_bound {
            truncated = true;
            break;
        }
        let prev = terms.last().expect("nonempty").module();
        let syz = prev.submodule(&kernel).expect("kernels are submodules");
        let (p, cover) = cover_unchecked(&syz);
        let d = kernel.mul(&cover);
        kernel = homogeneous_kernel(p.module(), &d);
        terms.push(p);
        differentials.push(d);
    }
    Resolution {
        resolved: m.clone(),
        terms,
        differentials,
        augmentation: eps,
        truncated,
    }
}

impl Resolution {
    /// Index of the last term.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.resolved.algebra()
    }

    /// Generators `(vertex, internal degree)` of each term.
    pub fn generator_table(&self) -> Vec<Vec<(usize, i32)>> {
        self.terms.iter().map(|t| t.generators().to_vec()).collect()
    }

    /// Every differential entry lies in positive degree: no generator maps
    /// onto another generator with a nonzero coefficient.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().enumerate().all(|(i, d)| {
            let (src, tgt) = (&self.terms[i + 1], &self.terms[i]);
            (0..src.dim()).all(|c| {
                (0..tgt.dim()).all(|r| {
                    let (_, x) = tgt.decompose(r);
                    let deg = tgt.module().algebra().basis()[x].degree;
                    d[(r, c)].is_zero() || deg > 0
                })
            })
        })
    }

    /// Minimality read through `− ⊗_A A_0`: the differentials induced on the
    /// graded tops vanish.
    pub fn induced_on_tops_vanish(&self) -> bool {
        self.differentials.iter().enumerate().all(|(i, d)| {
            // d maps radicals into radicals, so the induced map on tops
            // vanishes exactly when P_{i+1} → top(P_i) does
            let (_, proj_tgt) = self.terms[i].module().top();
            proj_tgt.mul(d).is_zero()
        })
    }

    /// `d² = 0`, the augmentation is surjective, and the rank identities
    /// hold at every term.
    pub fn is_exact(&self) -> bool {
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim()).collect();
        if self.augmentation.rank() != self.resolved.dim() {
            return false;
        }
        let mut ranks = vec![self.augmentation.rank()];
        ranks.extend(self.differentials.iter().map(|d| d.rank()));
        for i in 0..self.differentials.len() {
            let prev = if i == 0 { &self.augmentation } else { &self.differentials[i - 1] };
            if !prev.mul(&self.differentials[i]).is_zero() {
                return false;
            }
        }
        for i in 0..self.terms.len() {
            let into = ranks.get(i + 1).copied().unwrap_or(0);
            let last = i + 1 == self.terms.len();
            if last && self.truncated {
                continue;
            }
            if ranks[i] + into != dims[i] {
                return false;
            }
        }
        true
    }

    /// The resolution as a complex in nonpositive cohomological degrees.
    pub fn as_complex(&self) -> ComplexOfModules {
        let len = self.terms.len();
        let terms: Vec<GradedModule> = self.terms.iter().rev().map(|t| t.module().clone()).collect();
        let diffs: Vec<Matrix> = (1..len).rev().map(|i| self.differentials[i - 1].clone()).collect();
        ComplexOfModules::from_parts(self.algebra().clone(), -(len as i32 - 1), terms, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::modules::{all_simples, projective_module, simple_module};

    #[test]
    fn projective_resolves_in_length_zero() {
        let a = Arc::new(library::sl2_block());
        let p = projective_module(&a, 0, 2).unwrap();
        let r = minimal_resolution(&p, 5);
        assert_eq!(r.length(), 0);
        assert_eq!(r.generator_table(), vec![vec![(0, 2)]]);
        let (cover, f) = projective_cover(&p).unwrap();
        assert_eq!(cover.dim(), p.dim());
        assert_eq!(f.rank(), p.dim());
    }

    #[test]
    fn cover_of_simples() {
        let a = Arc::new(library::sl2_block());
        let (p, _) = projective_cover(&simple_module(&a, 1).unwrap()).unwrap();
        assert_eq!(p.generators(), &[(1, 0)]);
        let (p, _) = projective_cover(&all_simples(&a)).unwrap();
        assert_eq!(p.generators(), &[(0, 0), (1, 0)]);
        assert_eq!(projective_cover(&GradedModule::zero(a)), Err(Error::ZeroModule));
    }

    #[test]
    fn dual_numbers_periodic() {
        let d = Arc::new(library::dual_numbers(3));
        let r = minimal_resolution(&simple_module(&d, 0).unwrap(), 4);
        assert!(r.truncated);
        assert_eq!(r.length(), 4);
        for (i, gens) in r.generator_table().iter().enumerate() {
            assert_eq!(gens, &vec![(0, i as i32)]);
        }
        assert!(r.is_exact());
        assert!(r.is_minimal());
        assert!(r.induced_on_tops_vanish());
    }

    #[test]
    fn sl2_simples_have_finite_diagonal_resolutions() {
        let a = Arc::new(library::sl2_block());
        let re = minimal_resolution(&simple_module(&a, 0).unwrap(), 6);
        assert!(!re.truncated);
        assert_eq!(re.generator_table(), vec![vec![(0, 0)], vec![(1, 1)], vec![(0, 2)]]);
        let rs = minimal_resolution(&simple_module(&a, 1).unwrap(), 6);
        assert_eq!(rs.generator_table(), vec![vec![(1, 0)], vec![(0, 1)]]);
        for r in [&re, &rs] {
            assert!(r.is_exact());
            assert!(r.is_minimal());
            assert!(r.induced_on_tops_vanish());
            assert!(r.as_complex().is_valid());
        }
    }
}
