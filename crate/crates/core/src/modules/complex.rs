use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{same_algebra, tensor_with_bimodule, Bimodule, GradedModule, GradedModuleMap};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{q, Matrix};

/// Bidegree table keyed by `(cohomological degree, internal degree, vertex)`;
/// only nonzero entries are stored.
pub type Table = BTreeMap<(i32, i32, usize), usize>;

/// A bounded complex of graded right modules with differentials of
/// cohomological degree `+1` and internal degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOfModules {
    algebra: Arc<GradedAlgebra>,
    start: i32,
    terms: Vec<GradedModule>,
    /// `diffs[k]: terms[k] → terms[k + 1]`.
    diffs: Vec<Matrix>,
}

/// A degree-0 chain map, one component per cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainMap {
    pub components: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn component(&self, c: i32, source: &ComplexOfModules, target: &ComplexOfModules) -> Matrix {
        self.components
            .get(&c)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(target.term_dim(c), source.term_dim(c)))
    }

    pub fn identity(m: &ComplexOfModules) -> Self {
        ChainMap {
            components: (m.start..m.end())
                .map(|c| (c, Matrix::identity(m.term_dim(c))))
                .collect(),
        }
    }

    /// Commutes with the differentials and is a module map termwise.
    pub fn is_chain_map(&self, source: &ComplexOfModules, target: &ComplexOfModules) -> bool {
        let lo = source.start.min(target.start) - 1;
        let hi = source.end().max(target.end()) + 1;
        (lo..hi).all(|c| {
            let f = self.component(c, source, target);
            let f_next = self.component(c + 1, source, target);
            let ok_hom = match (source.term(c), target.term(c)) {
                (Some(s), Some(t)) => GradedModuleMap { shift: 0, matrix: f.clone() }.is_homomorphism(s, t),
                _ => f.rows() == 0 || f.cols() == 0 || f.is_zero(),
            };
            ok_hom && target.differential(c).mul(&f) == f_next.mul(&source.differential(c))
        })
    }
}

impl ComplexOfModules {
    pub fn new(algebra: Arc<GradedAlgebra>, start: i32, terms: Vec<GradedModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = ComplexOfModules {
            algebra,
            start,
            terms,
            diffs,
        };
        c.check()?;
        Ok(c)
    }

    pub(crate) fn from_parts(algebra: Arc<GradedAlgebra>, start: i32, terms: Vec<GradedModule>, diffs: Vec<Matrix>) -> Self {
        let c = ComplexOfModules {
            algebra,
            start,
            terms,
            diffs,
        };
        debug_assert!(c.check().is_ok(), "{:?}", c.check());
        c
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        ComplexOfModules {
            algebra,
            start: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A module placed in cohomological degree `c`.
    pub fn single(m: GradedModule, c: i32) -> Self {
        ComplexOfModules {
            algebra: m.algebra().clone(),
            start: c,
            terms: alloc::vec![m],
            diffs: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.diffs.len() + 1 != self.terms.len() && !(self.terms.is_empty() && self.diffs.is_empty()) {
            return Err(Error::InvalidModule("a complex needs one differential between consecutive terms".into()));
        }
        for t in &self.terms {
            if !same_algebra(t.algebra(), &self.algebra) {
                return Err(Error::AlgebraMismatch("complex terms over different algebras".into()));
            }
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let map = GradedModuleMap { shift: 0, matrix: d.clone() };
            if !map.is_homomorphism(&self.terms[k], &self.terms[k + 1]) {
                return Err(Error::InvalidModule(format!("differential {} is not a homomorphism", self.start + k as i32)));
            }
            if k > 0 && !d.mul(&self.diffs[k - 1]).is_zero() {
                return Err(Error::InvalidModule("d² ≠ 0".into()));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    /// Lowest cohomological degree.
    pub fn start(&self) -> i32 {
        self.start
    }

    /// One past the highest cohomological degree.
    pub fn end(&self) -> i32 {
        self.start + self.terms.len() as i32
    }

    pub fn term(&self, c: i32) -> Option<&GradedModule> {
        if c < self.start {
            return None;
        }
        self.terms.get((c - self.start) as usize)
    }

    pub fn terms(&self) -> &[GradedModule] {
        &self.terms
    }

    pub fn term_dim(&self, c: i32) -> usize {
        self.term(c).map(|t| t.dim()).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.dim()).sum()
    }

    /// `d^c: C^c → C^{c+1}`, zero outside the support.
    pub fn differential(&self, c: i32) -> Matrix {
        if c >= self.start && c + 1 < self.end() {
            self.diffs[(c - self.start) as usize].clone()
        } else {
            Matrix::zeros(self.term_dim(c + 1), self.term_dim(c))
        }
    }

    /// Cohomology dimensions per (cohomological degree, internal degree, vertex).
    pub fn cohomology_table(&self) -> Table {
        let mut table = Table::new();
        for c in self.start..self.end() {
            let t = self.term(c).expect("in range");
            let d_out = self.differential(c);
            let d_in = self.differential(c - 1);
            let prev = self.term(c - 1);
            for slot in t.slots() {
                let idx = t.indices_in(slot);
                let rank_out = d_out.select_columns(&idx).rank();
                let rank_in = prev
                    .map(|p| d_in.select_columns(&p.indices_in(slot)).rank())
                    .unwrap_or(0);
                let h = idx.len() - rank_out - rank_in;
                if h > 0 {
                    table.insert((c, slot.degree, slot.vertex), h);
                }
            }
        }
        table
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_table().is_empty()
    }

    /// `C[1]`: `(C[1])^c = C^{c+1}` with negated differential.
    pub fn shift(&self) -> Self {
        ComplexOfModules {
            algebra: self.algebra.clone(),
            start: self.start - 1,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&q(-1))).collect(),
        }
    }

    /// `C⟨k⟩` termwise.
    pub fn twist(&self, k: i32) -> Self {
        ComplexOfModules {
            algebra: self.algebra.clone(),
            start: self.start,
            terms: self.terms.iter().map(|t| t.twist(k)).collect(),
            diffs: self.diffs.clone(),
        }
    }

    /// Termwise `− ⊗_A X`.
    pub fn tensor(&self, x: &Bimodule) -> Result<Self> {
        let tensors = self
            .terms
            .iter()
            .map(|t| tensor_with_bimodule(t, x))
            .collect::<Result<Vec<_>>>()?;
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| tensors[k].map_to(&tensors[k + 1], d))
            .collect();
        Ok(ComplexOfModules::from_parts(
            x.right().clone(),
            self.start,
            tensors.into_iter().map(|t| t.module).collect(),
            diffs,
        ))
    }

    /// Reindexes to cover `[lo, hi)` by padding with zero modules.
    pub fn padded(&self, lo: i32, hi: i32) -> Self {
        let lo = lo.min(self.start);
        let hi = hi.max(self.end());
        let terms: Vec<GradedModule> = (lo..hi)
            .map(|c| self.term(c).cloned().unwrap_or_else(|| GradedModule::zero(self.algebra.clone())))
            .collect();
        let diffs = (lo..hi - 1)
            .map(|c| self.differential(c))
            .collect();
        ComplexOfModules::from_parts(self.algebra.clone(), lo, terms, diffs)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        let (a, b) = (self.padded(lo, hi), other.padded(lo, hi));
        let terms = (lo..hi)
            .map(|c| GradedModule::direct_sum(self.algebra.clone(), &[a.term(c).unwrap(), b.term(c).unwrap()]))
            .collect();
        let diffs = (lo..hi - 1)
            .map(|c| block_diag(&a.differential(c), &b.differential(c)))
            .collect();
        ComplexOfModules::from_parts(self.algebra.clone(), lo, terms, diffs)
    }

    /// Mapping cone `N ⊕ M[1]` of `f: M → N`, with
    /// `d(n, m) = (d n + f m, −d m)`.
    pub fn cone(f: &ChainMap, source: &Self, target: &Self) -> Self {
        let m1 = source.shift();
        let lo = target.start.min(m1.start);
        let hi = target.end().max(m1.end());
        let (n, m) = (target.padded(lo, hi), m1.padded(lo, hi));
        let terms = (lo..hi)
            .map(|c| GradedModule::direct_sum(target.algebra.clone(), &[n.term(c).unwrap(), m.term(c).unwrap()]))
            .collect();
        let diffs = (lo..hi - 1)
            .map(|c| {
                let dn = n.differential(c);
                let dm = m.differential(c);
                let fc = f.component(c + 1, source, target);
                let top = dn.hstack(&fc);
                let bottom = Matrix::zeros(dm.rows(), dn.cols()).hstack(&dm);
                top.vstack(&bottom)
            })
            .collect();
        ComplexOfModules::from_parts(target.algebra.clone(), lo, terms, diffs)
    }
}

pub(crate) fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let top = a.hstack(&Matrix::zeros(a.rows(), b.cols()));
    let bottom = Matrix::zeros(b.rows(), a.cols()).hstack(b);
    top.vstack(&bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::modules::{hom_space, minimal_resolution, projective_module, simple_module};

    #[test]
    fn resolution_complex_has_cohomology_of_the_module() {
        let a = Arc::new(library::sl2_block());
        let r = minimal_resolution(&simple_module(&a, 0).unwrap(), 5);
        let c = r.as_complex();
        assert_eq!(c.start(), -2);
        let expected: Table = [((0, 0, 0), 1)].into_iter().collect();
        assert_eq!(c.cohomology_table(), expected);
    }

    #[test]
    fn shift_twist_and_cones() {
        let a = Arc::new(library::sl2_block());
        let p = projective_module(&a, 1, 0).unwrap();
        let c = ComplexOfModules::single(p.clone(), 0);
        let t = c.shift().cohomology_table();
        assert!(t.keys().all(|k| k.0 == -1));
        assert_eq!(c.shift().shift().differential(1), c.differential(1));
        let tw = c.twist(2).cohomology_table();
        assert!(tw.contains_key(&(0, 2, 1)));

        // cone of the identity is acyclic; cone of zero is a direct sum
        let id = ChainMap::identity(&c);
        assert!(id.is_chain_map(&c, &c));
        assert!(ComplexOfModules::cone(&id, &c, &c).is_acyclic());
        let zero = ChainMap::default();
        let z = ComplexOfModules::cone(&zero, &c, &c);
        assert_eq!(z.cohomology_table(), c.direct_sum(&c.shift()).cohomology_table());

        // cone of P(e)⟨1⟩ → P(s) resolves S_s
        let pe = projective_module(&a, 0, 1).unwrap();
        let f = hom_space(&pe, &p, 0).remove(0);
        let src = ComplexOfModules::single(pe, 0);
        let map = ChainMap {
            components: [(0, f.matrix)].into_iter().collect(),
        };
        assert!(map.is_chain_map(&src, &c));
        let cone = ComplexOfModules::cone(&map, &src, &c);
        let expected: Table = [((0, 0, 1), 1)].into_iter().collect();
        assert_eq!(cone.cohomology_table(), expected);
    }
}
