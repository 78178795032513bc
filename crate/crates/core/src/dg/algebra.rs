use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{sparse_axpy, Scalar, SparseVec};

/// Position of a basis element of a [`DGAlgebra`]: cohomological degree,
/// internal degree, and the objects it connects. An element `x` with
/// `left = o`, `right = p` satisfies `ε_o x ε_p = x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DGBasis {
    pub degree: i32,
    pub internal: i32,
    pub left: usize,
    pub right: usize,
}

/// A differential bigraded algebra with a complete set of orthogonal
/// idempotents ("objects") that are basis elements.
///
/// Objects are grouped into blocks whose idempotents (sums of the object
/// idempotents) are cocycles; cohomology is reported per block. The
/// differential has bidegree `(1, 0)` and satisfies
/// `d(xy) = d(x) y + (−1)^{|x|} x d(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGAlgebra {
    basis: Vec<DGBasis>,
    units: Vec<usize>,
    blocks: Vec<usize>,
    block_names: Vec<String>,
    mult: Vec<Vec<SparseVec>>,
    diff: Vec<SparseVec>,
}

pub(crate) fn parity(n: i32) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl DGAlgebra {
    /// Assembles and validates a DG algebra. `mult[x][y]` is the product of
    /// basis elements, `diff[x]` the differential, `units[o]` the basis index
    /// of the idempotent of object `o`, `blocks[o]` its block.
    pub fn new(
        basis: Vec<DGBasis>,
        units: Vec<usize>,
        blocks: Vec<usize>,
        block_names: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        diff: Vec<SparseVec>,
    ) -> Result<Self> {
        let a = DGAlgebra {
            basis,
            units,
            blocks,
            block_names,
            mult,
            diff,
        };
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn from_parts(
        basis: Vec<DGBasis>,
        units: Vec<usize>,
        blocks: Vec<usize>,
        block_names: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        diff: Vec<SparseVec>,
    ) -> Self {
        let a = DGAlgebra {
            basis,
            units,
            blocks,
            block_names,
            mult,
            diff,
        };
        debug_assert!(a.validate().is_ok(), "{:?}", a.validate());
        a
    }

    /// A graded algebra with zero differential. A basis element of degree
    /// `n` sits in cohomological degree `cohomological · n` and internal
    /// degree `internal · n`; objects and blocks are the vertices.
    pub fn from_graded(a: &GradedAlgebra, cohomological: i32, internal: i32) -> Self {
        let basis = a
            .basis()
            .iter()
            .map(|b| DGBasis {
                degree: cohomological * b.degree as i32,
                internal: internal * b.degree as i32,
                left: b.source,
                right: b.target,
            })
            .collect();
        let mult = (0..a.dim())
            .map(|x| (0..a.dim()).map(|y| a.basis_product(x, y).clone()).collect())
            .collect();
        DGAlgebra::from_parts(
            basis,
            (0..a.vertex_count()).map(|v| a.idempotent(v)).collect(),
            (0..a.vertex_count()).collect(),
            a.vertices().to_vec(),
            mult,
            vec![Vec::new(); a.dim()],
        )
    }

    /// The ground field: one object, basis `{1}`.
    pub fn scalars() -> Self {
        DGAlgebra::from_parts(
            vec![DGBasis {
                degree: 0,
                internal: 0,
                left: 0,
                right: 0,
            }],
            vec![0],
            vec![0],
            vec![String::from("k")],
            vec![vec![vec![(0, Scalar::one())]]],
            vec![Vec::new()],
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DGBasis] {
        &self.basis
    }

    pub fn object_count(&self) -> usize {
        self.units.len()
    }

    /// Basis index of the idempotent of object `o`.
    pub fn object_unit(&self, o: usize) -> usize {
        self.units[o]
    }

    pub fn block_of(&self, o: usize) -> usize {
        self.blocks[o]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_names(&self) -> &[String] {
        &self.block_names
    }

    pub fn unit(&self) -> SparseVec {
        let mut u: Vec<(usize, Scalar)> = self.units.iter().map(|&i| (i, Scalar::one())).collect();
        u.sort_by_key(|(i, _)| *i);
        u
    }

    pub fn basis_product(&self, x: usize, y: usize) -> &SparseVec {
        &self.mult[x][y]
    }

    pub fn basis_differential(&self, x: usize) -> &SparseVec {
        &self.diff[x]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                if self.basis[*i].right == self.basis[*j].left {
                    out = sparse_axpy(&out, &(a * b), &self.mult[*i][*j]);
                }
            }
        }
        out
    }

    pub fn d(&self, x: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in x {
            out = sparse_axpy(&out, a, &self.diff[*i]);
        }
        out
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(|d| d.is_empty())
    }

    /// Checks units, homogeneity, `d² = 0`, the Leibniz rule and associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        if self.mult.len() != n || self.diff.len() != n || self.mult.iter().any(|r| r.len() != n) {
            return bad("DG algebra tables have the wrong size".into());
        }
        if self.blocks.len() != self.units.len() || self.blocks.iter().any(|&b| b >= self.block_names.len()) {
            return bad("every object needs a named block".into());
        }
        for (o, &u) in self.units.iter().enumerate() {
            let b = self.basis[u];
            if b.left != o || b.right != o || b.degree != 0 || b.internal != 0 {
                return bad(format!("idempotent of object {o} is misplaced"));
            }
            for x in 0..n {
                let bx = self.basis[x];
                let expect_left: SparseVec = if bx.left == o { vec![(x, Scalar::one())] } else { Vec::new() };
                let expect_right: SparseVec = if bx.right == o { vec![(x, Scalar::one())] } else { Vec::new() };
                let left = if bx.left == o { self.mult[u][x].clone() } else { Vec::new() };
                let right = if bx.right == o { self.mult[x][u].clone() } else { Vec::new() };
                if left != expect_left || right != expect_right {
                    return bad(format!("object {o} does not act as an idempotent on basis element {x}"));
                }
            }
        }
        for x in 0..n {
            let bx = self.basis[x];
            for &(z, _) in &self.diff[x] {
                let bz = self.basis[z];
                if bz.degree != bx.degree + 1 || bz.internal != bx.internal {
                    return bad(format!("d of basis element {x} is not of bidegree (1, 0)"));
                }
                if self.blocks[bz.left] != self.blocks[bx.left] || self.blocks[bz.right] != self.blocks[bx.right] {
                    return bad(format!("d of basis element {x} leaves its blocks"));
                }
            }
            if !self.d(&self.diff[x]).is_empty() {
                return bad(format!("d² ≠ 0 on basis element {x}"));
            }
            for y in 0..n {
                let by = self.basis[y];
                let p = &self.mult[x][y];
                if bx.right != by.left {
                    if !p.is_empty() {
                        return bad(format!("product of non-composable basis elements {x}, {y} is nonzero"));
                    }
                    continue;
                }
                for &(z, _) in p {
                    let bz = self.basis[z];
                    if bz.degree != bx.degree + by.degree
                        || bz.internal != bx.internal + by.internal
                        || bz.left != bx.left
                        || bz.right != by.right
                    {
                        return bad(format!("product of {x} and {y} is inhomogeneous"));
                    }
                }
                let ex = vec![(x, Scalar::one())];
                let ey = vec![(y, Scalar::one())];
                let lhs = self.d(p);
                let rhs = sparse_axpy(
                    &self.mul(&self.diff[x], &ey),
                    &parity(bx.degree),
                    &self.mul(&ex, &self.diff[y]),
                );
                if lhs != rhs {
                    return Err(Error::SignConvention(format!("Leibniz rule fails on basis elements {x}, {y}")));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.basis[x].right != self.basis[y].left {
                    continue;
                }
                let ex = vec![(x, Scalar::one())];
                for z in 0..n {
                    if self.basis[y].right != self.basis[z].left {
                        continue;
                    }
                    let ez = vec![(z, Scalar::one())];
                    if self.mul(&self.mult[x][y], &ez) != self.mul(&ex, &self.mult[y][z]) {
                        return bad(format!("multiplication is not associative on {x}, {y}, {z}"));
                    }
                }
            }
        }
        Ok(())
    }
}
