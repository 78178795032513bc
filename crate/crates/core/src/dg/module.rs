use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::algebra::{parity, DGAlgebra};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{sparse_axpy, sparse_from_dense, sparse_scale, Echelon, Matrix, PivotChoice, Scalar, SparseVec};
use crate::modules::{ComplexOfModules, GradedModule, Slot};

/// Cohomology dimensions keyed by `(cohomological degree, internal degree, block)`;
/// only nonzero entries are stored.
pub type BigradedTable = BTreeMap<(i32, i32, usize), usize>;

/// Homogeneous position of a basis vector of a right DG module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DGSlot {
    pub degree: i32,
    pub internal: i32,
    /// The object `o` with `m · ε_o = m`.
    pub object: usize,
}

/// A right DG module: `d(m·x) = d(m)·x + (−1)^{|m|} m·d(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGModule {
    algebra: Arc<DGAlgebra>,
    basis: Vec<DGSlot>,
    diff: Vec<SparseVec>,
    /// `action[m][x] = m · x`; empty unless `x` starts at the object of `m`.
    action: Vec<Vec<SparseVec>>,
}

fn unit_vec(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

impl DGModule {
    pub fn new(algebra: Arc<DGAlgebra>, basis: Vec<DGSlot>, diff: Vec<SparseVec>, action: Vec<Vec<SparseVec>>) -> Result<Self> {
        let m = DGModule {
            algebra,
            basis,
            diff,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        algebra: Arc<DGAlgebra>,
        basis: Vec<DGSlot>,
        diff: Vec<SparseVec>,
        action: Vec<Vec<SparseVec>>,
    ) -> Self {
        let m = DGModule {
            algebra,
            basis,
            diff,
            action,
        };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    pub fn zero(algebra: Arc<DGAlgebra>) -> Self {
        DGModule {
            algebra,
            basis: Vec::new(),
            diff: Vec::new(),
            action: Vec::new(),
        }
    }

    /// The algebra as a right module over itself.
    pub fn regular(algebra: Arc<DGAlgebra>) -> Self {
        let e = &algebra;
        let basis = e
            .basis()
            .iter()
            .map(|b| DGSlot {
                degree: b.degree,
                internal: b.internal,
                object: b.right,
            })
            .collect();
        let diff = (0..e.dim()).map(|x| e.basis_differential(x).clone()).collect();
        let action = (0..e.dim())
            .map(|x| (0..e.dim()).map(|y| e.basis_product(x, y).clone()).collect())
            .collect();
        DGModule::from_parts(algebra.clone(), basis, diff, action)
    }

    /// A complex of graded modules over `a`, as a DG module over
    /// `DGAlgebra::from_graded(a, 0, 1)`: objects are vertices.
    pub fn from_complex(c: &ComplexOfModules, algebra: Arc<DGAlgebra>) -> Result<Self> {
        if algebra.dim() != c.algebra().dim() || !algebra.has_zero_differential() || algebra.basis().iter().any(|b| b.degree != 0) {
            return Err(Error::AlgebraMismatch("expected the graded algebra in cohomological degree 0".into()));
        }
        DGModule::place_complex(c, algebra, |n, j| (n, j))
    }

    /// A complex of graded modules over a graded algebra `a` as a DG module
    /// over a DG algebra with the same basis and zero differential; a basis
    /// vector of term `n` in internal degree `j` is placed at `place(n, j)`.
    pub(crate) fn place_complex(c: &ComplexOfModules, algebra: Arc<DGAlgebra>, place: impl Fn(i32, i32) -> (i32, i32)) -> Result<Self> {
        let a = c.algebra();
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        for (k, t) in c.terms().iter().enumerate() {
            offsets.push(basis.len());
            for s in t.basis() {
                let (degree, internal) = place(c.start() + k as i32, s.degree);
                basis.push(DGSlot {
                    degree,
                    internal,
                    object: s.vertex,
                });
            }
        }
        let mut diff = vec![Vec::new(); basis.len()];
        let mut action = vec![vec![Vec::new(); a.dim()]; basis.len()];
        for (k, t) in c.terms().iter().enumerate() {
            let d = c.differential(c.start() + k as i32);
            for j in 0..t.dim() {
                let i = offsets[k] + j;
                if k + 1 < c.terms().len() {
                    diff[i] = (0..d.rows())
                        .filter(|&r| !d[(r, j)].is_zero())
                        .map(|r| (offsets[k + 1] + r, d[(r, j)].clone()))
                        .collect();
                }
                for x in 0..a.dim() {
                    if a.basis()[x].source != t.basis()[j].vertex {
                        continue;
                    }
                    let r = t.action(x);
                    action[i][x] = (0..t.dim())
                        .filter(|&row| !r[(row, j)].is_zero())
                        .map(|row| (offsets[k] + row, r[(row, j)].clone()))
                        .collect();
                }
            }
        }
        DGModule::new(algebra, basis, diff, action)
    }

    /// Inverse of [`DGModule::from_complex`].
    pub fn to_complex(&self, a: &Arc<GradedAlgebra>) -> Result<ComplexOfModules> {
        if self.algebra.dim() != a.dim() || self.algebra.basis().iter().any(|b| b.degree != 0) {
            return Err(Error::AlgebraMismatch("module is not over a graded algebra in degree 0".into()));
        }
        if self.basis.is_empty() {
            return Ok(ComplexOfModules::zero(a.clone()));
        }
        let lo = self.basis.iter().map(|s| s.degree).min().expect("nonempty");
        let hi = self.basis.iter().map(|s| s.degree).max().expect("nonempty");
        let groups: Vec<Vec<usize>> = (lo..=hi)
            .map(|c| (0..self.dim()).filter(|&i| self.basis[i].degree == c).collect())
            .collect();
        let mut local = vec![0usize; self.dim()];
        for g in &groups {
            for (j, &i) in g.iter().enumerate() {
                local[i] = j;
            }
        }
        let terms: Vec<GradedModule> = groups
            .iter()
            .map(|g| {
                let basis = g
                    .iter()
                    .map(|&i| Slot {
                        degree: self.basis[i].internal,
                        vertex: self.basis[i].object,
                    })
                    .collect();
                let actions = (0..a.dim())
                    .map(|x| {
                        let mut r = Matrix::zeros(g.len(), g.len());
                        for (j, &i) in g.iter().enumerate() {
                            for (z, c) in self.act_basis(i, x) {
                                r[(local[*z], j)] = c.clone();
                            }
                        }
                        r
                    })
                    .collect();
                GradedModule::from_actions(a.clone(), basis, actions)
            })
            .collect();
        for t in &terms {
            t.validate()?;
        }
        let diffs = (0..groups.len().saturating_sub(1))
            .map(|k| {
                let mut d = Matrix::zeros(groups[k + 1].len(), groups[k].len());
                for (j, &i) in groups[k].iter().enumerate() {
                    for (z, c) in &self.diff[i] {
                        d[(local[*z], j)] = c.clone();
                    }
                }
                d
            })
            .collect();
        ComplexOfModules::new(a.clone(), lo, terms, diffs)
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DGSlot] {
        &self.basis
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.algebra.block_of(self.basis[i].object)
    }

    pub fn basis_differential(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    /// `m_i · x` for basis elements.
    pub fn act_basis(&self, i: usize, x: usize) -> &SparseVec {
        &self.action[i][x]
    }

    pub fn act(&self, m: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in m {
            for (j, b) in x {
                if !self.action[*i][*j].is_empty() {
                    out = sparse_axpy(&out, &(a * b), &self.action[*i][*j]);
                }
            }
        }
        out
    }

    pub fn d(&self, m: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in m {
            out = sparse_axpy(&out, a, &self.diff[*i]);
        }
        out
    }

    /// Checks homogeneity, `d² = 0`, unitality, associativity and the sign rule.
    pub fn validate(&self) -> Result<()> {
        let e = &self.algebra;
        let n = self.dim();
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        if self.diff.len() != n || self.action.len() != n || self.action.iter().any(|r| r.len() != e.dim()) {
            return bad("DG module tables have the wrong size".into());
        }
        for (i, s) in self.basis.iter().enumerate() {
            if s.object >= e.object_count() {
                return bad(format!("basis vector {i} has no object"));
            }
            for &(z, _) in &self.diff[i] {
                let t = self.basis[z];
                if t.degree != s.degree + 1 || t.internal != s.internal || self.block_of(z) != self.block_of(i) {
                    return bad(format!("d of basis vector {i} is inhomogeneous"));
                }
            }
            if !self.d(&self.diff[i]).is_empty() {
                return bad(format!("d² ≠ 0 on basis vector {i}"));
            }
            if self.action[i][e.object_unit(s.object)] != unit_vec(i) {
                return bad(format!("idempotent of object {} does not fix basis vector {i}", s.object));
            }
            for x in 0..e.dim() {
                let bx = e.basis()[x];
                let p = &self.action[i][x];
                if bx.left != s.object {
                    if !p.is_empty() {
                        return bad(format!("basis vector {i} is moved by non-composable element {x}"));
                    }
                    continue;
                }
                for &(z, _) in p {
                    let t = self.basis[z];
                    if t.degree != s.degree + bx.degree || t.internal != s.internal + bx.internal || t.object != bx.right {
                        return bad(format!("action of {x} on basis vector {i} is inhomogeneous"));
                    }
                }
                let lhs = self.d(p);
                let rhs = sparse_axpy(
                    &self.act(&self.diff[i], &unit_vec(x)),
                    &parity(s.degree),
                    &self.act(&unit_vec(i), e.basis_differential(x)),
                );
                if lhs != rhs {
                    return Err(Error::SignConvention(format!(
                        "d(m·x) ≠ d(m)·x + (−1)^|m| m·d(x) for basis vector {i}, element {x}"
                    )));
                }
                for y in 0..e.dim() {
                    if e.basis()[y].left != bx.right {
                        continue;
                    }
                    if self.act(p, &unit_vec(y)) != self.act(&unit_vec(i), e.basis_product(x, y)) {
                        return bad(format!("action is not associative on {i}, {x}, {y}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M[1]`: degrees lowered by one, differential negated, action unchanged.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    /// `M[k]`: degrees lowered by `k`, differential multiplied by `(−1)^k`.
    pub fn shift_by(&self, k: i32) -> Self {
        let mut m = self.clone();
        for s in &mut m.basis {
            s.degree -= k;
        }
        if k.rem_euclid(2) == 1 {
            for d in &mut m.diff {
                *d = sparse_scale(d, &-Scalar::one());
            }
        }
        m
    }

    /// `M⟨k⟩`: internal degrees raised by `k`.
    pub fn twist(&self, k: i32) -> Self {
        let mut m = self.clone();
        for s in &mut m.basis {
            s.internal += k;
        }
        m
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch("direct sum of DG modules over different algebras".into()));
        }
        let off = self.dim();
        let mv = |v: &SparseVec| -> SparseVec { v.iter().map(|(i, c)| (i + off, c.clone())).collect() };
        let mut m = self.clone();
        m.basis.extend_from_slice(&other.basis);
        m.diff.extend(other.diff.iter().map(mv));
        m.action.extend(other.action.iter().map(|row| row.iter().map(mv).collect::<Vec<_>>()));
        Ok(m)
    }

    /// Indices of basis vectors grouped by `(degree, internal, block)`.
    pub fn groups(&self) -> BTreeMap<(i32, i32, usize), Vec<usize>> {
        let mut g: BTreeMap<(i32, i32, usize), Vec<usize>> = BTreeMap::new();
        for (i, s) in self.basis.iter().enumerate() {
            g.entry((s.degree, s.internal, self.block_of(i))).or_default().push(i);
        }
        g
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self)
    }

    pub fn cohomology_table(&self) -> BigradedTable {
        self.cohomology().table()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_table().is_empty()
    }
}

/// Cohomology of a DG module, with cocycle representatives per bidegree
/// and block.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pieces: BTreeMap<(i32, i32, usize), Piece>,
    key_of: Vec<(i32, i32, usize)>,
    /// Global class numbering: `(key, index within the key)`.
    classes: Vec<((i32, i32, usize), usize)>,
    offsets: BTreeMap<(i32, i32, usize), usize>,
}

#[derive(Clone, Debug)]
struct Piece {
    indices: Vec<usize>,
    /// Columns: a boundary basis followed by the representatives, in local coordinates.
    frame: Matrix,
    boundaries: usize,
    reps: Vec<SparseVec>,
}

fn dense_block(m: &DGModule, rows: &[usize], cols: &[usize]) -> Matrix {
    let mut pos = BTreeMap::new();
    for (r, &i) in rows.iter().enumerate() {
        pos.insert(i, r);
    }
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (c, &j) in cols.iter().enumerate() {
        for (i, x) in m.basis_differential(j) {
            if let Some(&r) = pos.get(i) {
                out[(r, c)] = x.clone();
            }
        }
    }
    out
}

impl Cohomology {
    fn of(m: &DGModule) -> Self {
        let groups = m.groups();
        let empty = Vec::new();
        let mut pieces = BTreeMap::new();
        for (&(n, s, b), idx) in &groups {
            let next = groups.get(&(n + 1, s, b)).unwrap_or(&empty);
            let prev = groups.get(&(n - 1, s, b)).unwrap_or(&empty);
            let d_out = dense_block(m, next, idx);
            let d_in = dense_block(m, idx, prev);
            let cocycles = if next.is_empty() {
                Matrix::identity(idx.len())
            } else {
                d_out.kernel_basis()
            };
            let bounds = d_in.column_space();
            let mut ech = Echelon::new(idx.len(), PivotChoice::First);
            let mut frame_cols = Vec::new();
            for c in 0..bounds.cols() {
                let col = bounds.column(c);
                ech.insert(&sparse_from_dense(&col));
                frame_cols.push(col);
            }
            let boundaries = frame_cols.len();
            let mut reps = Vec::new();
            for c in 0..cocycles.cols() {
                let col = cocycles.column(c);
                if ech.insert(&sparse_from_dense(&col)) {
                    reps.push(
                        col.iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(j, x)| (idx[j], x.clone()))
                            .collect::<SparseVec>(),
                    );
                    frame_cols.push(col);
                }
            }
            pieces.insert(
                (n, s, b),
                Piece {
                    indices: idx.clone(),
                    frame: Matrix::from_columns(idx.len(), &frame_cols),
                    boundaries,
                    reps,
                },
            );
        }
        let mut classes = Vec::new();
        let mut offsets = BTreeMap::new();
        let mut key_of = vec![(0, 0, 0); m.dim()];
        for (k, p) in &pieces {
            for &i in &p.indices {
                key_of[i] = *k;
            }
            offsets.insert(*k, classes.len());
            for j in 0..p.reps.len() {
                classes.push((*k, j));
            }
        }
        Cohomology {
            pieces,
            key_of,
            classes,
            offsets,
        }
    }

    pub fn table(&self) -> BigradedTable {
        self.pieces
            .iter()
            .filter(|(_, p)| !p.reps.is_empty())
            .map(|(k, p)| (*k, p.reps.len()))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// `(key, index within key)` of each class.
    pub fn classes(&self) -> &[((i32, i32, usize), usize)] {
        &self.classes
    }

    /// Cocycle representative of class `c`.
    pub fn representative(&self, c: usize) -> &SparseVec {
        let (k, j) = self.classes[c];
        &self.pieces[&k].reps[j]
    }

    /// Class coordinates of a cocycle; `None` if it is not a cocycle
    /// combination of representatives and boundaries.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut by_key: BTreeMap<(i32, i32, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, c) in v {
            by_key.entry(*self.key_of.get(*i)?).or_default().push((*i, c.clone()));
        }
        let mut out = Vec::new();
        for (k, entries) in by_key {
            let p = self.pieces.get(&k)?;
            let mut rhs = Matrix::zeros(p.indices.len(), 1);
            for (i, c) in entries {
                let r = p.indices.binary_search(&i).expect("index in piece");
                rhs[(r, 0)] = c;
            }
            let x = p.frame.solve(&rhs)?;
            let off = self.offsets[&k];
            for j in 0..p.reps.len() {
                let c = x[(p.boundaries + j, 0)].clone();
                if !c.is_zero() {
                    out.push((off + j, c));
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    /// Matrix of right multiplication by a cocycle `x` of the algebra, in
    /// class coordinates (columns are sources).
    pub fn action_of(&self, m: &DGModule, x: &SparseVec) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for c in 0..self.dim() {
            let img = m.act(self.representative(c), x);
            let coords = self
                .class_of(&img)
                .ok_or_else(|| Error::SignConvention("product of cocycles is not a cocycle".into()))?;
            for (r, v) in coords {
                out[(r, c)] = v;
            }
        }
        Ok(out)
    }
}

/// A map of DG modules of bidegree `(0, 0)`, given by images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGMap {
    pub images: Vec<SparseVec>,
}

impl DGMap {
    pub fn identity(m: &DGModule) -> Self {
        DGMap {
            images: (0..m.dim()).map(unit_vec).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, c) in v {
            out = sparse_axpy(&out, c, &self.images[*i]);
        }
        out
    }

    pub fn compose(&self, first: &DGMap) -> DGMap {
        DGMap {
            images: first.images.iter().map(|v| self.apply(v)).collect(),
        }
    }

    /// Homogeneous, commutes with `d`, and is linear over the algebra.
    pub fn check(&self, source: &DGModule, target: &DGModule) -> Result<()> {
        if self.images.len() != source.dim() {
            return Err(Error::InvalidModule("map has the wrong number of images".into()));
        }
        let e = source.algebra();
        for (i, img) in self.images.iter().enumerate() {
            let s = source.basis()[i];
            for (z, _) in img {
                let t = target.basis()[*z];
                if t.degree != s.degree || t.internal != s.internal || target.block_of(*z) != source.block_of(i) {
                    return Err(Error::InvalidModule(format!("image of basis vector {i} is inhomogeneous")));
                }
            }
            if target.d(img) != self.apply(source.basis_differential(i)) {
                return Err(Error::InvalidModule(format!("map does not commute with d at basis vector {i}")));
            }
            for x in 0..e.dim() {
                if e.basis()[x].left != s.object {
                    continue;
                }
                if self.apply(source.act_basis(i, x)) != target.act(img, &unit_vec(x)) {
                    return Err(Error::InvalidModule(format!("map is not linear over element {x}")));
                }
            }
        }
        Ok(())
    }

    /// Rank of the induced map on cohomology, per key of the source.
    fn induced_ranks(&self, source: &Cohomology, target: &Cohomology) -> Option<BTreeMap<(i32, i32, usize), usize>> {
        let mut ranks = BTreeMap::new();
        let mut cols: BTreeMap<(i32, i32, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
        for c in 0..source.dim() {
            let key = source.classes()[c].0;
            let img = target.class_of(&self.apply(source.representative(c)))?;
            let mut col = vec![Scalar::zero(); target.dim()];
            for (r, v) in img {
                col[r] = v;
            }
            cols.entry(key).or_default().push(col);
        }
        for (k, cs) in cols {
            ranks.insert(k, Matrix::from_columns(target.dim(), &cs).rank());
        }
        Some(ranks)
    }

    /// Compares cohomology on both sides and records the rank of the
    /// induced map in every bidegree and block.
    pub fn quasi_iso_certificate(&self, source: &DGModule, target: &DGModule) -> Result<QuasiIsoCertificate> {
        self.check(source, target)?;
        let hs = source.cohomology();
        let ht = target.cohomology();
        let ranks = self
            .induced_ranks(&hs, &ht)
            .ok_or_else(|| Error::SignConvention("image of a cocycle is not a cocycle".into()))?;
        Ok(QuasiIsoCertificate {
            source: hs.table(),
            target: ht.table(),
            ranks,
        })
    }
}

/// Cohomology tables of source and target of a map together with the
/// ranks of the induced map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoCertificate {
    pub source: BigradedTable,
    pub target: BigradedTable,
    pub ranks: BTreeMap<(i32, i32, usize), usize>,
}

impl QuasiIsoCertificate {
    pub fn is_quasi_iso(&self) -> bool {
        self.source == self.target && self.source.iter().all(|(k, d)| self.ranks.get(k) == Some(d))
    }

    pub fn require(self) -> Result<Self> {
        if self.is_quasi_iso() {
            Ok(self)
        } else {
            let bad = self
                .source
                .keys()
                .chain(self.target.keys())
                .find(|k| {
                    let s = self.source.get(k).copied().unwrap_or(0);
                    let t = self.target.get(k).copied().unwrap_or(0);
                    s != t || self.ranks.get(k).copied().unwrap_or(0) != s
                })
                .copied();
            Err(Error::NotQuasiIso(format!("induced map fails to be bijective at {bad:?}")))
        }
    }
}

/// The mapping cone `N ⊕ M[1]` of `f: M → N` with `d(n, m) = (dn + f(m), −dm)`,
/// together with the inclusion of `N` and the projection onto `M[1]`.
pub struct Cone {
    pub module: DGModule,
    pub inclusion: DGMap,
    pub projection: DGMap,
}

pub fn cone(f: &DGMap, source: &DGModule, target: &DGModule) -> Result<Cone> {
    f.check(source, target)?;
    let shifted = source.shift();
    let sum = target.direct_sum(&shifted)?;
    let off = target.dim();
    let mut diff = sum.diff.clone();
    for i in 0..source.dim() {
        diff[off + i] = sparse_axpy(&f.images[i], &Scalar::one(), &shifted.diff[i].iter().map(|(j, c)| (j + off, c.clone())).collect());
    }
    let module = DGModule::new(sum.algebra.clone(), sum.basis.clone(), diff, sum.action.clone())?;
    let inclusion = DGMap {
        images: (0..off).map(unit_vec).collect(),
    };
    let projection = DGMap {
        images: (0..module.dim())
            .map(|i| if i < off { Vec::new() } else { unit_vec(i - off) })
            .collect(),
    };
    Ok(Cone {
        module,
        inclusion,
        projection,
    })
}
