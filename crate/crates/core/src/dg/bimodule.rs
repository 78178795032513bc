use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::algebra::{parity, DGAlgebra};
use super::module::{DGModule, DGSlot};
use crate::error::{Error, Result};
use crate::exactlin::{sparse_axpy, Echelon, PivotChoice, Quotient, Scalar, SparseVec};

/// Homogeneous position of a basis vector of a DG bimodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DGBiSlot {
    pub degree: i32,
    pub internal: i32,
    /// Object of the left algebra fixing the vector from the left.
    pub left: usize,
    /// Object of the right algebra fixing the vector from the right.
    pub right: usize,
}

/// A DG bimodule `E L B`, with
/// `d(x·l) = d(x)·l + (−1)^{|x|} x·d(l)` and
/// `d(l·y) = d(l)·y + (−1)^{|l|} l·d(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGBimodule {
    left: Arc<DGAlgebra>,
    right: Arc<DGAlgebra>,
    basis: Vec<DGBiSlot>,
    diff: Vec<SparseVec>,
    /// `left_action[x][l] = x · l`.
    left_action: Vec<Vec<SparseVec>>,
    /// `right_action[l][y] = l · y`.
    right_action: Vec<Vec<SparseVec>>,
}

fn unit_vec(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

fn combine(out: &mut SparseVec, c: &Scalar, v: &SparseVec) {
    *out = sparse_axpy(out, c, v);
}

impl DGBimodule {
    pub fn new(
        left: Arc<DGAlgebra>,
        right: Arc<DGAlgebra>,
        basis: Vec<DGBiSlot>,
        diff: Vec<SparseVec>,
        left_action: Vec<Vec<SparseVec>>,
        right_action: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let b = DGBimodule {
            left,
            right,
            basis,
            diff,
            left_action,
            right_action,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn left(&self) -> &Arc<DGAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<DGAlgebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DGBiSlot] {
        &self.basis
    }

    pub fn basis_differential(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn left_act_basis(&self, x: usize, l: usize) -> &SparseVec {
        &self.left_action[x][l]
    }

    pub fn right_act_basis(&self, l: usize, y: usize) -> &SparseVec {
        &self.right_action[l][y]
    }

    pub fn d(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, c) in v {
            combine(&mut out, c, &self.diff[*i]);
        }
        out
    }

    pub fn left_act(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (a, c) in x {
            for (l, e) in v {
                combine(&mut out, &(c * e), &self.left_action[*a][*l]);
            }
        }
        out
    }

    pub fn right_act(&self, v: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (l, e) in v {
            for (b, c) in y {
                combine(&mut out, &(c * e), &self.right_action[*l][*b]);
            }
        }
        out
    }

    /// Checks homogeneity, `d² = 0`, units, associativity on both sides,
    /// compatibility of the two actions and both sign rules.
    pub fn validate(&self) -> Result<()> {
        let (e, b) = (&self.left, &self.right);
        let n = self.dim();
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        if self.diff.len() != n
            || self.left_action.len() != e.dim()
            || self.left_action.iter().any(|r| r.len() != n)
            || self.right_action.len() != n
            || self.right_action.iter().any(|r| r.len() != b.dim())
        {
            return bad("DG bimodule tables have the wrong size".into());
        }
        for (i, s) in self.basis.iter().enumerate() {
            if s.left >= e.object_count() || s.right >= b.object_count() {
                return bad(format!("basis vector {i} has no object"));
            }
            for &(z, _) in &self.diff[i] {
                let t = self.basis[z];
                if t.degree != s.degree + 1
                    || t.internal != s.internal
                    || e.block_of(t.left) != e.block_of(s.left)
                    || b.block_of(t.right) != b.block_of(s.right)
                {
                    return bad(format!("d of basis vector {i} is inhomogeneous"));
                }
            }
            if !self.d(&self.diff[i]).is_empty() {
                return bad(format!("d² ≠ 0 on basis vector {i}"));
            }
            if self.left_action[e.object_unit(s.left)][i] != unit_vec(i) || self.right_action[i][b.object_unit(s.right)] != unit_vec(i) {
                return bad(format!("idempotents do not fix basis vector {i}"));
            }
            for x in 0..e.dim() {
                let bx = e.basis()[x];
                let p = &self.left_action[x][i];
                if bx.right != s.left {
                    if !p.is_empty() {
                        return bad(format!("non-composable element {x} moves basis vector {i}"));
                    }
                    continue;
                }
                for &(z, _) in p {
                    let t = self.basis[z];
                    if t.degree != s.degree + bx.degree || t.internal != s.internal + bx.internal || t.left != bx.left || t.right != s.right {
                        return bad(format!("left action of {x} on {i} is inhomogeneous"));
                    }
                }
                let rhs = sparse_axpy(
                    &self.left_act(e.basis_differential(x), &unit_vec(i)),
                    &parity(bx.degree),
                    &self.left_act(&unit_vec(x), &self.diff[i]),
                );
                if self.d(p) != rhs {
                    return Err(Error::SignConvention(format!("left sign rule fails on {x}, {i}")));
                }
                for y in 0..e.dim() {
                    if e.basis()[y].left != bx.right {
                        continue;
                    }
                    // (y·x)·l = y·(x·l)
                    if self.left_act(&unit_vec(y), p) != self.left_act(e.basis_product(y, x), &unit_vec(i)) {
                        return bad(format!("left action is not associative on {y}, {x}, {i}"));
                    }
                }
                for y in 0..b.dim() {
                    if b.basis()[y].left != s.right {
                        continue;
                    }
                    if self.right_act(p, &unit_vec(y)) != self.left_act(&unit_vec(x), &self.right_action[i][y]) {
                        return bad(format!("actions do not commute on {x}, {i}, {y}"));
                    }
                }
            }
            for y in 0..b.dim() {
                let by = b.basis()[y];
                let p = &self.right_action[i][y];
                if by.left != s.right {
                    if !p.is_empty() {
                        return bad(format!("basis vector {i} is moved by non-composable element {y}"));
                    }
                    continue;
                }
                for &(z, _) in p {
                    let t = self.basis[z];
                    if t.degree != s.degree + by.degree || t.internal != s.internal + by.internal || t.left != s.left || t.right != by.right {
                        return bad(format!("right action of {y} on {i} is inhomogeneous"));
                    }
                }
                let rhs = sparse_axpy(
                    &self.right_act(&self.diff[i], &unit_vec(y)),
                    &parity(s.degree),
                    &self.right_act(&unit_vec(i), b.basis_differential(y)),
                );
                if self.d(p) != rhs {
                    return Err(Error::SignConvention(format!("right sign rule fails on {i}, {y}")));
                }
                for z in 0..b.dim() {
                    if b.basis()[z].left != by.right {
                        continue;
                    }
                    if self.right_act(p, &unit_vec(z)) != self.right_act(&unit_vec(i), b.basis_product(y, z)) {
                        return bad(format!("right action is not associative on {i}, {y}, {z}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `N ⊗_E L` for a right DG module `N` and a DG bimodule `E L B`, as a right
/// DG module over `B`, with `d(n⊗l) = dn⊗l + (−1)^{|n|} n⊗dl`.
///
/// The tensor product is computed as the quotient of `⊕_o N ε_o ⊗ ε_o L`
/// by the relations `n·x ⊗ l − n ⊗ x·l`.
#[derive(Clone, Debug)]
pub struct DGTensor {
    pub module: DGModule,
    /// The pairs `(n, l)` spanning the unreduced product.
    pub pairs: Vec<(usize, usize)>,
    index: Vec<Vec<Option<usize>>>,
    pub quotient: Quotient,
}

impl DGTensor {
    /// Class of `n_i ⊗ l_k` in the tensor product.
    pub fn class(&self, i: usize, k: usize) -> SparseVec {
        match self.index[i][k] {
            Some(p) => self.quotient.project(&unit_vec(p)),
            None => Vec::new(),
        }
    }

    /// Class of `n ⊗ l` for arbitrary vectors.
    pub fn class_of(&self, n: &SparseVec, l: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in n {
            for (k, b) in l {
                if let Some(p) = self.index[*i][*k] {
                    out = sparse_axpy(&out, &(a * b), &unit_vec(p));
                }
            }
        }
        self.quotient.project(&out)
    }
}

pub fn dg_tensor(n: &DGModule, l: &DGBimodule) -> Result<DGTensor> {
    if **n.algebra() != **l.left() {
        return Err(Error::AlgebraMismatch("tensor factors over different DG algebras".into()));
    }
    let e = l.left();
    let mut pairs = Vec::new();
    let mut index = vec![vec![None; l.dim()]; n.dim()];
    for i in 0..n.dim() {
        for k in 0..l.dim() {
            if n.basis()[i].object == l.basis()[k].left {
                index[i][k] = Some(pairs.len());
                pairs.push((i, k));
            }
        }
    }
    let lift = |v: &SparseVec, fixed: usize, n_side: bool| -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (j, c) in v {
            let p = if n_side { index[*j][fixed] } else { index[fixed][*j] };
            if let Some(p) = p {
                out = sparse_axpy(&out, c, &unit_vec(p));
            }
        }
        out
    };
    let mut rel = Echelon::new(pairs.len(), PivotChoice::Last);
    for x in 0..e.dim() {
        let bx = e.basis()[x];
        if e.object_unit(bx.left) == x {
            continue;
        }
        for i in 0..n.dim() {
            if n.basis()[i].object != bx.left {
                continue;
            }
            let nx = n.act_basis(i, x);
            for k in 0..l.dim() {
                if l.basis()[k].left != bx.right {
                    continue;
                }
                let xl = l.left_act_basis(x, k);
                let v = sparse_axpy(&lift(nx, k, true), &-Scalar::one(), &lift(xl, i, false));
                if !v.is_empty() {
                    rel.insert(&v);
                }
            }
        }
    }
    let quotient = Quotient::new(rel);
    let mut basis = Vec::with_capacity(quotient.dim());
    let mut diff = Vec::with_capacity(quotient.dim());
    let mut action = Vec::with_capacity(quotient.dim());
    for q in 0..quotient.dim() {
        let (i, k) = pairs[quotient.lift(q)];
        let (s, t) = (n.basis()[i], l.basis()[k]);
        basis.push(DGSlot {
            degree: s.degree + t.degree,
            internal: s.internal + t.internal,
            object: t.right,
        });
        let dn = lift(n.basis_differential(i), k, true);
        let dl = lift(l.basis_differential(k), i, false);
        diff.push(quotient.project(&sparse_axpy(&dn, &parity(s.degree), &dl)));
        let row = (0..l.right().dim())
            .map(|y| {
                let ly = l.right_act_basis(k, y);
                if ly.is_empty() {
                    Vec::new()
                } else {
                    quotient.project(&lift(ly, i, false))
                }
            })
            .collect();
        action.push(row);
    }
    let module = DGModule::new(l.right().clone(), basis, diff, action)?;
    Ok(DGTensor {
        module,
        pairs,
        index,
        quotient,
    })
}

/// Builds the basis-level data of a DG bimodule without validation; used
/// by constructions whose axioms hold by design and are checked in tests.
pub(crate) fn bimodule_from_parts(
    left: Arc<DGAlgebra>,
    right: Arc<DGAlgebra>,
    basis: Vec<DGBiSlot>,
    diff: Vec<SparseVec>,
    left_action: Vec<Vec<SparseVec>>,
    right_action: Vec<Vec<SparseVec>>,
) -> DGBimodule {
    let b = DGBimodule {
        left,
        right,
        basis,
        diff,
        left_action,
        right_action,
    };
    debug_assert!(b.validate().is_ok(), "{:?}", b.validate());
    b
}
