//! Graded quiver algebras with homogeneous relations.
//!
//! Composition order: the path `p·q` traverses `p` first, then `q`. A basis
//! element tagged `(source, target)` therefore satisfies
//! `e_source · x · e_target = x`, and the right module `e_v A` is spanned by
//! the basis elements with source `v`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    sparse_axpy, sparse_from_dense, sparse_get, sparse_scale, Accumulator, Echelon, Matrix,
    PivotChoice, Scalar, SparseVec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str]) -> Self {
        Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
        }
    }

    /// Adds an arrow by vertex names. Panics on unknown names; use
    /// [`Quiver::try_arrow`] for user input.
    pub fn arrow(mut self, label: &str, from: &str, to: &str, degree: u32) -> Self {
        self.try_arrow(label, from, to, degree).expect("arrow endpoints");
        self
    }

    pub fn try_arrow(&mut self, label: &str, from: &str, to: &str, degree: u32) -> Result<()> {
        let source = self.vertex(from)?;
        let target = self.vertex(to)?;
        if degree == 0 {
            return Err(Error::InvalidArrow(format!("arrow `{label}` has degree 0")));
        }
        if self.arrows.iter().any(|a| a.label == label) {
            return Err(Error::InvalidArrow(format!("duplicate arrow label `{label}`")));
        }
        self.arrows.push(Arrow {
            source,
            target,
            label: label.to_string(),
            degree,
        });
        Ok(())
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::InvalidArrow(format!("`{}` has undeclared endpoint", a.label)));
            }
            if a.degree == 0 {
                return Err(Error::InvalidArrow(format!("`{}` has degree 0", a.label)));
            }
        }
        Ok(())
    }

    /// Reversed arrows, same labels.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    source: a.target,
                    target: a.source,
                    label: a.label.clone(),
                    degree: a.degree,
                })
                .collect(),
        }
    }
}

/// A path in a quiver; an empty arrow list is the trivial path `e_source`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_labels(q: &Quiver, labels: &[&str]) -> Result<Self> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| {
                q.arrow_index(l)
                    .ok_or_else(|| Error::InvalidArrow(format!("unknown arrow `{l}`")))
            })
            .collect::<Result<_>>()?;
        Self::from_arrows(q, idx)
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::InvalidRelation("empty arrow word".into()))?;
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::InvalidRelation(format!(
                    "`{}` then `{}` is not composable",
                    q.arrows[w[0]].label, q.arrows[w[1]].label
                )));
            }
        }
        Ok(Path {
            source: q.arrows[*first].source,
            target: q.arrows[*arrows.last().unwrap()].target,
            arrows,
        })
    }

    pub fn degree(&self, q: &Quiver) -> u32 {
        self.arrows.iter().map(|&a| q.arrows[a].degree).sum()
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            let parts: Vec<&str> = self.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect();
            parts.join(".")
        }
    }

    fn sort_key(&self, q: &Quiver) -> (usize, usize, Vec<String>) {
        (
            self.source,
            self.target,
            self.arrows.iter().map(|&a| q.arrows[a].label.clone()).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Self {
        Relation { terms }
    }

    /// Checks homogeneity and shared endpoints, returning
    /// `(source, target, degree)`.
    pub fn shape(&self, q: &Quiver) -> Result<(usize, usize, u32)> {
        let first = self
            .terms
            .first()
            .ok_or_else(|| Error::InvalidRelation("empty relation".into()))?;
        let shape = (first.1.source, first.1.target, first.1.degree(q));
        for (_, p) in &self.terms {
            if p.degree(q) != shape.2 {
                return Err(Error::InhomogeneousRelation(self.describe(q)));
            }
            if (p.source, p.target) != (shape.0, shape.1) {
                return Err(Error::RelationEndpoints(self.describe(q)));
            }
        }
        if shape.2 < 2 {
            return Err(Error::InvalidRelation(format!(
                "relation {} has degree {} < 2",
                self.describe(q),
                shape.2
            )));
        }
        Ok(shape)
    }

    pub fn describe(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| format!("{}*{}", c, p.label(q)))
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub degree: u32,
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A homogeneous algebra generator: a degree-≥1 element `e_source · g · e_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: u32,
    pub source: usize,
    pub target: usize,
    pub element: SparseVec,
}

/// Finite-dimensional nonnegatively graded algebra whose degree-0 part is
/// spanned by orthogonal vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    vertices: Vec<String>,
    basis: Vec<BasisElem>,
    mult: Vec<Vec<SparseVec>>,
    generators: Vec<Generator>,
    /// For each basis element `x` of positive degree: `x = Σ c · g · y`.
    factor: Vec<Vec<(Scalar, usize, usize)>>,
    presentation: Option<Presentation>,
    degree_bound: u32,
    truncated: bool,
}

impl GradedAlgebra {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn factorization(&self, x: usize) -> &[(Scalar, usize, usize)] {
        &self.factor[x]
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Whether the degree bound cut off a nonzero degree.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn top_degree(&self) -> u32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut dims = vec![0; self.top_degree() as usize + 1];
        for b in &self.basis {
            dims[b.degree as usize] += 1;
        }
        dims
    }

    /// Basis index of the idempotent `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.basis
            .iter()
            .position(|b| b.degree == 0 && b.source == v)
            .expect("every vertex has an idempotent")
    }

    pub fn unit(&self) -> SparseVec {
        let mut u: SparseVec = (0..self.vertex_count())
            .map(|v| (self.idempotent(v), Scalar::one()))
            .collect();
        u.sort_by_key(|(i, _)| *i);
        u
    }

    pub fn basis_product(&self, x: usize, y: usize) -> &SparseVec {
        &self.mult[x][y]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (i, a) in x {
            for (j, b) in y {
                let p = &self.mult[*i][*j];
                if !p.is_empty() {
                    acc.add_scaled(&(a * b), p);
                }
            }
        }
        acc.finish()
    }

    /// Indices of basis elements with the given degree.
    pub fn degree_slice(&self, d: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == d).collect()
    }

    /// Basis of `e_v A` (elements with source `v`).
    pub fn right_projective_basis(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == v).collect()
    }

    pub fn basis_index_by_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Assembles an algebra from structure constants and derives generators
    /// (a complement of `rad²` in basis order) and their factorization table.
    pub fn from_structure(
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        mult: Vec<Vec<SparseVec>>,
        presentation: Option<Presentation>,
        degree_bound: u32,
        truncated: bool,
    ) -> Result<Self> {
        let n = basis.len();
        for v in 0..vertices.len() {
            if basis.iter().filter(|b| b.degree == 0 && b.source == v).count() != 1 {
                return Err(Error::InvalidModule(format!(
                    "degree 0 must contain exactly one idempotent per vertex (vertex {})",
                    vertices[v]
                )));
            }
        }
        if basis.iter().filter(|b| b.degree == 0).count() != vertices.len() {
            return Err(Error::InvalidModule("degree-0 part is not semisimple".into()));
        }
        let mut alg = GradedAlgebra {
            vertices,
            basis,
            mult,
            generators: Vec::new(),
            factor: vec![Vec::new(); n],
            presentation,
            degree_bound,
            truncated,
        };
        // rad² by degree
        let top = alg.top_degree();
        let mut gens = Vec::new();
        for d in 1..=top {
            let slice = alg.degree_slice(d);
            let mut ech = Echelon::new(n, PivotChoice::First);
            for x in 0..n {
                let dx = alg.basis[x].degree;
                if dx == 0 || dx >= d {
                    continue;
                }
                for y in alg.degree_slice(d - dx) {
                    ech.insert(&alg.mult[x][y]);
                }
            }
            // generators: basis elements of this degree not reached, chosen so
            // that together with rad² they span the slice
            for &x in &slice {
                let v: SparseVec = vec![(x, Scalar::one())];
                if ech.insert(&v) {
                    gens.push(x);
                }
            }
        }
        alg.generators = gens
            .iter()
            .map(|&x| {
                let b = &alg.basis[x];
                Generator {
                    label: b.label.clone(),
                    degree: b.degree,
                    source: b.source,
                    target: b.target,
                    element: vec![(x, Scalar::one())],
                }
            })
            .collect();
        alg.compute_factorization()?;
        Ok(alg)
    }

    fn compute_factorization(&mut self) -> Result<()> {
        let n = self.dim();
        for x in 0..n {
            let d = self.basis[x].degree;
            if d == 0 {
                continue;
            }
            // generator that is literally x
            if let Some(g) = self
                .generators
                .iter()
                .position(|g| g.element.len() == 1 && g.element[0].0 == x && g.element[0].1.is_one())
            {
                let t = self.idempotent(self.basis[x].target);
                self.factor[x] = vec![(Scalar::one(), g, t)];
                continue;
            }
            let mut cols: Vec<(usize, usize)> = Vec::new();
            let mut vecs: Vec<Vec<Scalar>> = Vec::new();
            for (gi, g) in self.generators.iter().enumerate() {
                if g.degree > d {
                    continue;
                }
                for y in self.degree_slice(d - g.degree) {
                    let p = self.mul(&g.element, &vec![(y, Scalar::one())]);
                    if p.is_empty() {
                        continue;
                    }
                    cols.push((gi, y));
                    vecs.push(crate::exactlin::sparse_to_dense(&p, n));
                }
            }
            let m = Matrix::from_columns(n, &vecs);
            let mut target = Matrix::zeros(n, 1);
            target[(x, 0)] = Scalar::one();
            let sol = m.solve(&target).ok_or_else(|| {
                Error::InvalidModule(format!(
                    "basis element {} is not generated by the generators",
                    self.basis[x].label
                ))
            })?;
            self.factor[x] = cols
                .iter()
                .enumerate()
                .filter(|(k, _)| !sol[(*k, 0)].is_zero())
                .map(|(k, &(g, y))| (sol[(k, 0)].clone(), g, y))
                .collect();
        }
        Ok(())
    }

    /// Checks associativity, the unit, grading and vertex compatibility of
    /// every structure constant.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let unit = self.unit();
        for x in 0..n {
            let ex: SparseVec = vec![(x, Scalar::one())];
            if self.mul(&unit, &ex) != ex || self.mul(&ex, &unit) != ex {
                return Err(Error::InvalidModule(format!("unit fails on {}", self.basis[x].label)));
            }
            for y in 0..n {
                let (bx, by) = (&self.basis[x], &self.basis[y]);
                for (k, _) in &self.mult[x][y] {
                    let bk = &self.basis[*k];
                    if bk.degree != bx.degree + by.degree
                        || bx.target != by.source
                        || bk.source != bx.source
                        || bk.target != by.target
                    {
                        return Err(Error::InvalidModule(format!(
                            "product {}·{} is not homogeneous",
                            bx.label, by.label
                        )));
                    }
                }
                for z in 0..n {
                    let left = self.mul(&self.mult[x][y], &vec![(z, Scalar::one())]);
                    let right = self.mul(&ex, &self.mult[y][z]);
                    if left != right {
                        return Err(Error::InvalidModule(format!(
                            "associativity fails on ({}, {}, {})",
                            bx.label, by.label, self.basis[z].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground field on a single vertex.
    pub fn ground_field(vertex: &str) -> Self {
        build_algebra(&Quiver::new(&[vertex]), &[], 0).expect("ground field")
    }
}

fn enumerate_paths(q: &Quiver, max_degree: u32) -> Vec<Vec<Path>> {
    let mut by_degree: Vec<Vec<Path>> = vec![Vec::new(); max_degree as usize + 1];
    for v in 0..q.vertices.len() {
        by_degree[0].push(Path::trivial(v));
    }
    for d in 1..=max_degree {
        let mut out = Vec::new();
        for a_idx in 0..q.arrows.len() {
            let a = &q.arrows[a_idx];
            if a.degree > d {
                continue;
            }
            let prev = (d - a.degree) as usize;
            for p in &by_degree[prev] {
                if p.target == a.source {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a_idx);
                    out.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        out.sort_by_key(|p| p.sort_key(q));
        by_degree[d as usize] = out;
    }
    by_degree
}

/// Builds `kQ / (rels)` degree by degree up to `degree_bound`.
///
/// The quotient basis in each degree consists of paths that are not pivots
/// of the ideal slice; pivots are taken at the largest path in basis order,
/// so larger paths rewrite to smaller ones.
pub fn build_algebra(q: &Quiver, rels: &[Relation], degree_bound: u32) -> Result<GradedAlgebra> {
    q.validate()?;
    let mut shapes = Vec::new();
    for r in rels {
        shapes.push(r.shape(q)?);
    }
    let max_arrow = q.arrows.iter().map(|a| a.degree).max().unwrap_or(1);
    let max_rel = shapes.iter().map(|s| s.2).max().unwrap_or(0);
    if degree_bound < max_rel {
        return Err(Error::InvalidRelation(format!(
            "degree bound {degree_bound} is below relation degree {max_rel}"
        )));
    }
    let horizon = degree_bound + max_arrow;
    let paths = enumerate_paths(q, horizon);
    let index: Vec<BTreeMap<Path, usize>> = paths
        .iter()
        .map(|ps| ps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();

    let mut slices: Vec<Echelon> = Vec::new();
    let mut truncated = false;
    for d in 0..=horizon {
        let pd = &paths[d as usize];
        let mut ech = Echelon::new(pd.len(), PivotChoice::Last);
        for (r, &(rs, rt, rd)) in rels.iter().zip(&shapes) {
            if rd > d {
                continue;
            }
            for du in 0..=(d - rd) {
                let dw = d - rd - du;
                for u in paths[du as usize].iter().filter(|u| u.target == rs) {
                    for w in paths[dw as usize].iter().filter(|w| w.source == rt) {
                        let mut acc = Accumulator::new(pd.len());
                        for (c, p) in &r.terms {
                            let mut arrows = u.arrows.clone();
                            arrows.extend_from_slice(&p.arrows);
                            arrows.extend_from_slice(&w.arrows);
                            let path = Path {
                                source: u.source,
                                target: w.target,
                                arrows,
                            };
                            acc.add(index[d as usize][&path], c);
                        }
                        ech.insert(&acc.finish());
                    }
                }
            }
        }
        if d > degree_bound && ech.rank() < pd.len() {
            truncated = true;
        }
        slices.push(ech);
    }

    // quotient basis
    let mut basis = Vec::new();
    let mut basis_paths: Vec<Path> = Vec::new();
    let mut path_to_basis: Vec<BTreeMap<usize, usize>> = Vec::new();
    for d in 0..=degree_bound {
        let mut map = BTreeMap::new();
        for i in slices[d as usize].non_pivots() {
            let p = &paths[d as usize][i];
            map.insert(i, basis.len());
            basis.push(BasisElem {
                degree: d,
                source: p.source,
                target: p.target,
                label: p.label(q),
            });
            basis_paths.push(p.clone());
        }
        path_to_basis.push(map);
    }
    let normal_form = |p: &Path| -> SparseVec {
        let d = p.degree(q);
        if d > degree_bound {
            return Vec::new();
        }
        let i = index[d as usize][p];
        let red = slices[d as usize].reduce(&vec![(i, Scalar::one())]);
        let mut out: SparseVec = red
            .into_iter()
            .map(|(j, c)| (path_to_basis[d as usize][&j], c))
            .collect();
        out.sort_by_key(|(j, _)| *j);
        out
    };
    let n = basis.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let (p, r) = (&basis_paths[x], &basis_paths[y]);
            if p.target != r.source {
                continue;
            }
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&r.arrows);
            mult[x][y] = normal_form(&Path {
                source: p.source,
                target: r.target,
                arrows,
            });
        }
    }
    let generators: Vec<Generator> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| Generator {
            label: a.label.clone(),
            degree: a.degree,
            source: a.source,
            target: a.target,
            element: normal_form(&Path {
                source: a.source,
                target: a.target,
                arrows: vec![ai],
            }),
        })
        .collect();
    let mut factor = vec![Vec::new(); n];
    for x in 0..n {
        let p = &basis_paths[x];
        if p.arrows.is_empty() {
            continue;
        }
        let first = p.arrows[0];
        let rest = Path {
            source: q.arrows[first].target,
            target: p.target,
            arrows: p.arrows[1..].to_vec(),
        };
        factor[x] = normal_form(&rest)
            .into_iter()
            .map(|(y, c)| (c, first, y))
            .collect();
    }
    Ok(GradedAlgebra {
        vertices: q.vertices.clone(),
        basis,
        mult,
        generators,
        factor,
        presentation: Some(Presentation {
            quiver: q.clone(),
            relations: rels.to_vec(),
        }),
        degree_bound,
        truncated,
    })
}

/// Same basis, reversed multiplication and reversed arrows.
pub fn opposite_algebra(a: &GradedAlgebra) -> GradedAlgebra {
    let n = a.dim();
    let basis = a
        .basis
        .iter()
        .map(|b| BasisElem {
            degree: b.degree,
            source: b.target,
            target: b.source,
            label: reverse_label(&b.label),
        })
        .collect();
    let mult = (0..n)
        .map(|x| (0..n).map(|y| a.mult[y][x].clone()).collect())
        .collect();
    let presentation = a.presentation.as_ref().map(|p| {
        let quiver = p.quiver.opposite();
        let relations = p
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, path)| {
                        let mut arrows = path.arrows.clone();
                        arrows.reverse();
                        (
                            c.clone(),
                            Path {
                                source: path.target,
                                target: path.source,
                                arrows,
                            },
                        )
                    })
                    .collect(),
            })
            .collect();
        Presentation { quiver, relations }
    });
    let mut op = GradedAlgebra {
        vertices: a.vertices.clone(),
        basis,
        mult,
        generators: a
            .generators
            .iter()
            .map(|g| Generator {
                label: g.label.clone(),
                degree: g.degree,
                source: g.target,
                target: g.source,
                element: g.element.clone(),
            })
            .collect(),
        factor: vec![Vec::new(); n],
        presentation,
        degree_bound: a.degree_bound,
        truncated: a.truncated,
    };
    op.compute_factorization()
        .expect("generators of A generate A^op");
    op
}

fn reverse_label(label: &str) -> String {
    if label.starts_with("e_") {
        return label.to_string();
    }
    let mut parts: Vec<&str> = label.split('.').collect();
    parts.reverse();
    parts.join(".")
}

/// The quotient map `A ↠ A/I` recorded as a matrix on basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surjection {
    /// `quotient_dim × source_dim`
    pub matrix: Matrix,
    /// For each quotient basis element, the source basis element it is the image of.
    pub lifts: Vec<usize>,
}

impl Surjection {
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let dense = crate::exactlin::sparse_to_dense(x, self.matrix.cols());
        sparse_from_dense(&self.matrix.mul_vec(&dense))
    }

    /// Block of the surjection in a single degree.
    pub fn degree_block(&self, source: &GradedAlgebra, target: &GradedAlgebra, d: u32) -> Matrix {
        let rows = target.degree_slice(d);
        let cols = source.degree_slice(d);
        self.matrix.select(&rows, &cols)
    }
}

/// Quotient of `a` by a two-sided ideal given as a subspace; quotient basis
/// = basis elements that are not pivots of the ideal.
pub fn quotient_by_ideal(
    a: &GradedAlgebra,
    ideal: &Echelon,
    vertex_map: &[Option<usize>],
    vertices: Vec<String>,
) -> Result<(GradedAlgebra, Surjection)> {
    let n = a.dim();
    let keep = ideal.non_pivots();
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let project = |v: &SparseVec| -> SparseVec {
        let r = ideal.reduce(v);
        r.into_iter().map(|(j, c)| (pos[&j], c)).collect()
    };
    let mut basis = Vec::new();
    for &k in &keep {
        let b = &a.basis[k];
        let (Some(s), Some(t)) = (vertex_map[b.source], vertex_map[b.target]) else {
            return Err(Error::InvalidModule(format!(
                "surviving basis element {} touches a killed vertex",
                b.label
            )));
        };
        basis.push(BasisElem {
            degree: b.degree,
            source: s,
            target: t,
            label: b.label.clone(),
        });
    }
    let m = keep.len();
    let mut mult = vec![vec![Vec::new(); m]; m];
    for (i, &x) in keep.iter().enumerate() {
        for (j, &y) in keep.iter().enumerate() {
            mult[i][j] = project(&a.mult[x][y]);
        }
    }
    let mut matrix = Matrix::zeros(m, n);
    for x in 0..n {
        for (j, c) in project(&vec![(x, Scalar::one())]) {
            matrix[(j, x)] = c;
        }
    }
    let quotient = GradedAlgebra::from_structure(
        vertices,
        basis,
        mult,
        None,
        a.degree_bound,
        a.truncated,
    )?;
    Ok((quotient, Surjection { matrix, lifts: keep }))
}

/// The two-sided ideal generated by the idempotents of `kill`.
pub fn idempotent_ideal(a: &GradedAlgebra, kill: &[usize]) -> Echelon {
    let n = a.dim();
    let mut ech = Echelon::new(n, PivotChoice::First);
    for x in 0..n {
        if !kill.contains(&a.basis[x].target) {
            continue;
        }
        for y in 0..n {
            let p = &a.mult[x][y];
            if !p.is_empty() {
                ech.insert(p);
            }
        }
    }
    ech
}

/// `A / A·{e_v : v ∈ kill}·A` with the surjection onto it.
pub fn quotient_by_idempotents(a: &GradedAlgebra, kill: &[usize]) -> Result<(GradedAlgebra, Surjection)> {
    for &v in kill {
        if v >= a.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
    }
    if (0..a.vertex_count()).all(|v| kill.contains(&v)) {
        return Err(Error::ZeroRing);
    }
    let ideal = idempotent_ideal(a, kill);
    let mut vertex_map = vec![None; a.vertex_count()];
    let mut vertices = Vec::new();
    for v in 0..a.vertex_count() {
        if !kill.contains(&v) {
            vertex_map[v] = Some(vertices.len());
            vertices.push(a.vertices[v].clone());
        }
    }
    quotient_by_ideal(a, &ideal, &vertex_map, vertices)
}

/// Whether `f` (target × source basis matrix) is a degree-preserving
/// algebra map sending units to units.
pub fn is_algebra_map(f: &Matrix, source: &GradedAlgebra, target: &GradedAlgebra) -> bool {
    let apply = |x: &SparseVec| {
        sparse_from_dense(&f.mul_vec(&crate::exactlin::sparse_to_dense(x, source.dim())))
    };
    if apply(&source.unit()) != target.unit() {
        return false;
    }
    for x in 0..source.dim() {
        for (k, _) in apply(&vec![(x, Scalar::one())]) {
            if target.basis[k].degree != source.basis[x].degree {
                return false;
            }
        }
        for y in 0..source.dim() {
            let lhs = apply(&source.mult[x][y]);
            let rhs = target.mul(&apply(&vec![(x, Scalar::one())]), &apply(&vec![(y, Scalar::one())]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Linear combination helper used by callers assembling relations.
pub fn combine(terms: &[(Scalar, SparseVec)]) -> SparseVec {
    let mut out = Vec::new();
    for (c, v) in terms {
        out = sparse_axpy(&out, c, v);
    }
    out
}

pub fn coefficient(v: &SparseVec, idx: usize) -> Scalar {
    sparse_get(v, idx)
}

pub fn scaled(v: &SparseVec, c: &Scalar) -> SparseVec {
    sparse_scale(v, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    fn sl2() -> GradedAlgebra {
        let quiver = Quiver::new(&["e", "s"]).arrow("a", "e", "s", 1).arrow("b", "s", "e", 1);
        let rel = Relation::new(vec![(q(1), Path::from_labels(&quiver, &["a", "b"]).unwrap())]);
        build_algebra(&quiver, &[rel], 4).unwrap()
    }

    fn dual_numbers() -> GradedAlgebra {
        let quiver = Quiver::new(&["v"]).arrow("x", "v", "v", 1);
        let rel = Relation::new(vec![(q(1), Path::from_labels(&quiver, &["x", "x"]).unwrap())]);
        build_algebra(&quiver, &[rel], 3).unwrap()
    }

    #[test]
    fn ground_field_and_semisimple() {
        let k = GradedAlgebra::ground_field("v");
        assert_eq!(k.dims_by_degree(), vec![1]);
        let two = build_algebra(&Quiver::new(&["1", "2"]), &[], 0).unwrap();
        assert_eq!(two.dims_by_degree(), vec![2]);
        assert!(!two.truncated());
        two.validate().unwrap();
    }

    #[test]
    fn sl2_block_dims() {
        let a = sl2();
        assert_eq!(a.dims_by_degree(), vec![2, 2, 1]);
        assert_eq!(a.dim(), 5);
        assert!(!a.truncated());
        a.validate().unwrap();
        assert!(a.basis_index_by_label("b.a").is_some());
    }

    #[test]
    fn free_loop_reports_truncation() {
        let quiver = Quiver::new(&["v"]).arrow("x", "v", "v", 1);
        let a = build_algebra(&quiver, &[], 3).unwrap();
        assert!(a.truncated());
        assert_eq!(a.dims_by_degree(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_bad_relations() {
        let quiver = Quiver::new(&["e", "s"]).arrow("a", "e", "s", 1).arrow("b", "s", "e", 1);
        let ab = Path::from_labels(&quiver, &["a", "b"]).unwrap();
        let ba = Path::from_labels(&quiver, &["b", "a"]).unwrap();
        let a = Path::from_labels(&quiver, &["a"]).unwrap();
        let inhom = Relation::new(vec![(q(1), ab.clone()), (q(1), a)]);
        assert!(matches!(
            build_algebra(&quiver, &[inhom], 3),
            Err(Error::InhomogeneousRelation(_))
        ));
        let ends = Relation::new(vec![(q(1), ab), (q(1), ba)]);
        assert!(matches!(
            build_algebra(&quiver, &[ends], 3),
            Err(Error::RelationEndpoints(_))
        ));
        assert!(Path::from_labels(&quiver, &["a", "a"]).is_err());
    }

    #[test]
    fn opposite_is_involutive() {
        let a = sl2();
        let op = opposite_algebra(&a);
        assert_eq!(op.dims_by_degree(), vec![2, 2, 1]);
        op.validate().unwrap();
        let opop = opposite_algebra(&op);
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                assert_eq!(a.basis_product(x, y), opop.basis_product(x, y));
            }
        }
        let d = dual_numbers();
        let dop = opposite_algebra(&d);
        for x in 0..d.dim() {
            for y in 0..d.dim() {
                assert_eq!(d.basis_product(x, y), dop.basis_product(x, y));
            }
        }
    }

    #[test]
    fn idempotent_quotients() {
        let a = sl2();
        let (same, s) = quotient_by_idempotents(&a, &[]).unwrap();
        assert_eq!(same.dim(), a.dim());
        assert_eq!(s.matrix, Matrix::identity(a.dim()));
        let (q_e, surj) = quotient_by_idempotents(&a, &[0]).unwrap();
        assert_eq!(q_e.dims_by_degree(), vec![1]);
        assert_eq!(q_e.vertices(), &["s".to_string()]);
        assert!(is_algebra_map(&surj.matrix, &a, &q_e));
        assert_eq!(quotient_by_idempotents(&a, &[0, 1]), Err(Error::ZeroRing));

        let two = build_algebra(&Quiver::new(&["1", "2"]), &[], 0).unwrap();
        let (k, _) = quotient_by_idempotents(&two, &[1]).unwrap();
        assert_eq!(k.vertices(), &["1".to_string()]);
        assert_eq!(k.dims_by_degree(), vec![1]);
    }

    #[test]
    fn generators_and_factorization_reproduce_products() {
        let a = sl2();
        assert_eq!(a.generators().len(), 2);
        for x in 0..a.dim() {
            if a.basis()[x].degree == 0 {
                continue;
            }
            let rebuilt = a.factorization(x).iter().fold(Vec::new(), |acc, (c, g, y)| {
                let p = a.mul(&a.generators()[*g].element, &vec![(*y, q(1))]);
                sparse_axpy(&acc, c, &p)
            });
            assert_eq!(rebuilt, vec![(x, q(1))]);
        }
    }
}
