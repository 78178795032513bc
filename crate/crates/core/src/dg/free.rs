use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::algebra::{parity, DGAlgebra, DGBasis};
use super::bimodule::{bimodule_from_parts, DGBiSlot, DGBimodule};
use super::module::{DGModule, DGSlot};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{sparse_axpy, Matrix, Scalar, SparseVec};
use crate::modules::{projective_cover, ComplexOfModules, FreeModule, Resolution};

/// A bounded complex of graded free modules with its generators recorded
/// ("summands"), each summand assigned to a block; the complex is the
/// direct sum of its blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    algebra: Arc<GradedAlgebra>,
    start: i32,
    terms: Vec<FreeModule>,
    /// `diffs[k]: terms[k] → terms[k + 1]`.
    diffs: Vec<Matrix>,
    /// Block of every summand, term-major.
    blocks: Vec<Vec<usize>>,
    block_names: Vec<String>,
}

/// A generator of a [`FreeComplex`]: term, generator index, vertex, twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub degree: i32,
    pub generator: usize,
    pub vertex: usize,
    pub twist: i32,
}

impl FreeComplex {
    /// A minimal resolution placed in nonpositive degrees, as one block.
    pub fn from_resolution(r: &Resolution, block: usize, block_names: Vec<String>) -> Self {
        let c = r.as_complex();
        let terms: Vec<FreeModule> = r.terms.iter().rev().cloned().collect();
        let blocks = terms.iter().map(|t| vec![block; t.generators().len()]).collect();
        let diffs = (0..terms.len().saturating_sub(1)).map(|k| c.differential(c.start() + k as i32)).collect();
        FreeComplex {
            algebra: r.algebra().clone(),
            start: c.start(),
            terms,
            diffs,
            blocks,
            block_names,
        }
    }

    /// A complex whose terms are free, in one block: every term is
    /// identified with its projective cover, which must be an isomorphism.
    pub fn from_complex(c: &ComplexOfModules, block: usize, block_names: Vec<String>) -> Result<Self> {
        let a = c.algebra().clone();
        let mut terms = Vec::new();
        let mut covers = Vec::new();
        for t in c.terms() {
            if t.is_zero() {
                terms.push(FreeModule::new(a.clone(), Vec::new()));
                covers.push(Matrix::zeros(0, 0));
                continue;
            }
            let (f, pi) = projective_cover(t)?;
            if f.dim() != t.dim() || pi.rank() != t.dim() {
                return Err(Error::InvalidModule("complex has a term that is not free".into()));
            }
            terms.push(f);
            covers.push(pi);
        }
        let mut diffs = Vec::new();
        for k in 0..terms.len().saturating_sub(1) {
            let d = c.differential(c.start() + k as i32);
            let through = d.mul(&covers[k]);
            let moved = if terms[k + 1].dim() == 0 || terms[k].dim() == 0 {
                Matrix::zeros(terms[k + 1].dim(), terms[k].dim())
            } else {
                covers[k + 1].solve(&through).expect("covers are invertible")
            };
            diffs.push(moved);
        }
        let blocks = terms.iter().map(|t| vec![block; t.generators().len()]).collect();
        Ok(FreeComplex {
            algebra: a,
            start: c.start(),
            terms,
            diffs,
            blocks,
            block_names,
        })
    }

    /// Direct sum; block names must agree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.block_names != other.block_names || *self.algebra != *other.algebra {
            return Err(Error::AlgebraMismatch("direct sum of incompatible free complexes".into()));
        }
        if self.terms.is_empty() {
            return Ok(other.clone());
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        let a = self.algebra.clone();
        let gens_at = |c: &FreeComplex, d: i32| -> Vec<(usize, i32)> {
            c.term(d).map(|t| t.generators().to_vec()).unwrap_or_default()
        };
        let mut terms = Vec::new();
        let mut blocks = Vec::new();
        for d in lo..hi {
            let mut g = gens_at(self, d);
            g.extend(gens_at(other, d));
            terms.push(FreeModule::new(a.clone(), g));
            let mut b = self.term_blocks(d);
            b.extend(other.term_blocks(d));
            blocks.push(b);
        }
        let mut diffs = Vec::new();
        for d in lo..hi - 1 {
            let k = (d - lo) as usize;
            let (src, tgt) = (&terms[k], &terms[k + 1]);
            let mut m = Matrix::zeros(tgt.dim(), src.dim());
            for (part, goff_s, goff_t) in [
                (self, 0, 0),
                (other, gens_at(self, d).len(), gens_at(self, d + 1).len()),
            ] {
                let (Some(ps), Some(pt)) = (part.term(d), part.term(d + 1)) else {
                    continue;
                };
                let pd = part.differential(d);
                for col in 0..ps.dim() {
                    let (g, x) = ps.decompose(col);
                    let c = src.position(goff_s + g, x).expect("same basis");
                    for row in 0..pt.dim() {
                        if !pd[(row, col)].is_zero() {
                            let (h, y) = pt.decompose(row);
                            let r = tgt.position(goff_t + h, y).expect("same basis");
                            m[(r, c)] = pd[(row, col)].clone();
                        }
                    }
                }
            }
            diffs.push(m);
        }
        Ok(FreeComplex {
            algebra: a,
            start: lo,
            terms,
            diffs,
            blocks,
            block_names: self.block_names.clone(),
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.start + self.terms.len() as i32
    }

    pub fn term(&self, c: i32) -> Option<&FreeModule> {
        if c < self.start {
            return None;
        }
        self.terms.get((c - self.start) as usize)
    }

    fn term_blocks(&self, c: i32) -> Vec<usize> {
        if c < self.start || c >= self.end() {
            return Vec::new();
        }
        self.blocks[(c - self.start) as usize].clone()
    }

    pub fn block_names(&self) -> &[String] {
        &self.block_names
    }

    /// `d^c: term c → term c + 1` (zero outside the range).
    pub fn differential(&self, c: i32) -> Matrix {
        let rows = self.term(c + 1).map(|t| t.dim()).unwrap_or(0);
        let cols = self.term(c).map(|t| t.dim()).unwrap_or(0);
        if c < self.start || c + 1 >= self.end() {
            return Matrix::zeros(rows, cols);
        }
        self.diffs[(c - self.start) as usize].clone()
    }

    pub fn as_complex(&self) -> ComplexOfModules {
        ComplexOfModules::from_parts(
            self.algebra.clone(),
            self.start,
            self.terms.iter().map(|t| t.module().clone()).collect(),
            self.diffs.clone(),
        )
    }

    pub fn summands(&self) -> Vec<Summand> {
        let mut out = Vec::new();
        for (k, t) in self.terms.iter().enumerate() {
            for (g, &(v, tw)) in t.generators().iter().enumerate() {
                out.push(Summand {
                    degree: self.start + k as i32,
                    generator: g,
                    vertex: v,
                    twist: tw,
                });
            }
        }
        out
    }

    pub fn summand_blocks(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }
}

/// `End(P)` of a [`FreeComplex`] `P` as a DG algebra, together with `P`
/// as an `(End(P), A)`-bimodule and the right `End(P)`-modules `Hom(P, M)`.
///
/// A basis element `(g, h, x)` is the map sending summand `g` to `h·x`
/// (and the other summands to zero); composition is matrix multiplication
/// with entries in `A`, the differential is `f ↦ d f − (−1)^{|f|} f d`.
/// Objects are the summands; an element `g → h` has left object `h` and
/// right object `g`.
#[derive(Clone, Debug)]
pub struct Endomorphisms {
    pub complex: FreeComplex,
    pub summands: Vec<Summand>,
    pub algebra: Arc<DGAlgebra>,
    /// The base algebra in cohomological degree 0.
    pub base: Arc<DGAlgebra>,
    index: BTreeMap<(usize, usize, usize), usize>,
    elements: Vec<(usize, usize, usize)>,
    /// `d(h) = Σ h'·y`: per summand, its outgoing components.
    d_out: Vec<Vec<(usize, SparseVec)>>,
    /// Per summand `g`, the summands `g0` with `d(g0) ∋ g·z`.
    d_in: Vec<Vec<(usize, SparseVec)>>,
    /// Offsets of summands in the total basis of `P`.
    offsets: Vec<usize>,
}

impl Endomorphisms {
    pub fn new(p: &FreeComplex) -> Self {
        let a = p.algebra().clone();
        let summands = p.summands();
        let blocks = p.summand_blocks();
        let mut first = Vec::new();
        let mut acc = 0;
        for t in &p.terms {
            first.push(acc);
            acc += t.generators().len();
        }
        let sid = |c: i32, g: usize| first[(c - p.start) as usize] + g;
        let mut d_out = vec![Vec::new(); summands.len()];
        let mut d_in = vec![Vec::new(); summands.len()];
        for (h, s) in summands.iter().enumerate() {
            let (Some(src), Some(tgt)) = (p.term(s.degree), p.term(s.degree + 1)) else {
                continue;
            };
            let d = p.differential(s.degree);
            let col = d.column(src.generator_position(s.generator));
            let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (r, c) in col.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (k, y) = tgt.decompose(r);
                let entry = parts.entry(sid(s.degree + 1, k)).or_default();
                *entry = sparse_axpy(entry, c, &vec![(y, Scalar::one())]);
            }
            for (h2, y) in parts {
                d_in[h2].push((h, y.clone()));
                d_out[h].push((h2, y));
            }
        }

        let mut elements = Vec::new();
        for (g, sg) in summands.iter().enumerate() {
            for (h, sh) in summands.iter().enumerate() {
                for x in a.right_projective_basis(sh.vertex) {
                    if a.basis()[x].target == sg.vertex {
                        elements.push((g, h, x));
                    }
                }
            }
        }
        let tag = |&(g, h, x): &(usize, usize, usize)| {
            let (sg, sh) = (summands[g], summands[h]);
            DGBasis {
                degree: sh.degree - sg.degree,
                internal: sh.twist + a.basis()[x].degree as i32 - sg.twist,
                left: h,
                right: g,
            }
        };
        elements.sort_by_key(|e| (tag(e), e.2));
        let index: BTreeMap<(usize, usize, usize), usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let basis: Vec<DGBasis> = elements.iter().map(tag).collect();
        let expand = |g: usize, h: usize, v: &SparseVec| -> SparseVec {
            let mut out: SparseVec = v.iter().map(|(x, c)| (index[&(g, h, *x)], c.clone())).collect();
            out.sort_by_key(|(i, _)| *i);
            out
        };
        let n = elements.len();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for (i, &(h, h2, y)) in elements.iter().enumerate() {
            for (j, &(g, h_, x)) in elements.iter().enumerate() {
                if h_ == h {
                    mult[i][j] = expand(g, h2, a.basis_product(y, x));
                }
            }
        }
        let mut diff = Vec::with_capacity(n);
        for (i, &(g, h, x)) in elements.iter().enumerate() {
            let ex = vec![(x, Scalar::one())];
            let mut out: SparseVec = Vec::new();
            for (h2, y) in &d_out[h] {
                out = sparse_axpy(&out, &Scalar::one(), &expand(g, *h2, &a.mul(y, &ex)));
            }
            let sign = -parity(basis[i].degree);
            for (g0, z) in &d_in[g] {
                out = sparse_axpy(&out, &sign, &expand(*g0, h, &a.mul(&ex, z)));
            }
            diff.push(out);
        }
        let units = (0..summands.len())
            .map(|g| index[&(g, g, a.idempotent(summands[g].vertex))])
            .collect();
        let algebra = Arc::new(DGAlgebra::from_parts(basis, units, blocks, p.block_names().to_vec(), mult, diff));
        let base = Arc::new(DGAlgebra::from_graded(&a, 0, 1));
        let mut offsets = Vec::new();
        let mut acc = 0;
        for s in &summands {
            offsets.push(acc);
            acc += a.right_projective_basis(s.vertex).len();
        }
        Endomorphisms {
            complex: p.clone(),
            summands,
            algebra,
            base,
            index,
            elements,
            d_out,
            d_in,
            offsets,
        }
    }

    /// Basis index of `(g → h·x)`.
    pub fn element(&self, g: usize, h: usize, x: usize) -> Option<usize> {
        self.index.get(&(g, h, x)).copied()
    }

    /// `(source summand, target summand, algebra basis element)` of a basis element.
    pub fn describe(&self, i: usize) -> (usize, usize, usize) {
        self.elements[i]
    }

    /// Summand containing each basis vector of the total complex, and the
    /// algebra basis element: the coordinate `(g, x)` of `g·x`.
    fn complex_basis(&self) -> Vec<(usize, usize)> {
        let a = self.complex.algebra();
        let mut out = Vec::new();
        for (g, s) in self.summands.iter().enumerate() {
            for x in a.right_projective_basis(s.vertex) {
                out.push((g, x));
            }
        }
        out
    }

    fn complex_position(&self, g: usize, x: usize) -> usize {
        let a = self.complex.algebra();
        let k = a
            .right_projective_basis(self.summands[g].vertex)
            .iter()
            .position(|&y| y == x)
            .expect("x lies in e_v A");
        self.offsets[g] + k
    }

    /// The complex as an `(End, A)` DG bimodule: `f·p = f(p)`, `p·a = pa`.
    pub fn bimodule(&self) -> DGBimodule {
        let a = self.complex.algebra();
        let cb = self.complex_basis();
        let n = cb.len();
        let embed = |g: usize, v: &SparseVec| -> SparseVec {
            let mut out: SparseVec = v.iter().map(|(x, c)| (self.complex_position(g, *x), c.clone())).collect();
            out.sort_by_key(|(i, _)| *i);
            out
        };
        let basis: Vec<DGBiSlot> = cb
            .iter()
            .map(|&(g, x)| DGBiSlot {
                degree: self.summands[g].degree,
                internal: self.summands[g].twist + a.basis()[x].degree as i32,
                left: g,
                right: a.basis()[x].target,
            })
            .collect();
        let diff = cb
            .iter()
            .map(|&(g, x)| {
                let ex = vec![(x, Scalar::one())];
                let mut out = Vec::new();
                for (h, y) in &self.d_out[g] {
                    out = sparse_axpy(&out, &Scalar::one(), &embed(*h, &a.mul(y, &ex)));
                }
                out
            })
            .collect();
        let mut left_action = vec![vec![Vec::new(); n]; self.elements.len()];
        for (i, &(g, h, y)) in self.elements.iter().enumerate() {
            for (p, &(g2, x)) in cb.iter().enumerate() {
                if g2 == g {
                    left_action[i][p] = embed(h, a.basis_product(y, x));
                }
            }
        }
        let right_action = cb
            .iter()
            .map(|&(g, x)| {
                (0..a.dim())
                    .map(|z| {
                        if a.basis()[z].source == a.basis()[x].target {
                            embed(g, a.basis_product(x, z))
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        bimodule_from_parts(self.algebra.clone(), self.base.clone(), basis, diff, left_action, right_action)
    }

    /// `Hom(P, M)` as a right DG module over `End(P)` by precomposition,
    /// for `M` a DG module over the base algebra. A basis element `(g, b)`
    /// sends summand `g` to `b`.
    pub fn hom_into(&self, m: &DGModule) -> Result<HomModule> {
        if **m.algebra() != *self.base {
            return Err(Error::AlgebraMismatch("target is not a module over the base algebra".into()));
        }
        let mut pairs = Vec::new();
        for (g, s) in self.summands.iter().enumerate() {
            for (b, t) in m.basis().iter().enumerate() {
                if t.object == s.vertex {
                    pairs.push((g, b));
                }
            }
        }
        let tag = |&(g, b): &(usize, usize)| {
            let (s, t) = (self.summands[g], m.basis()[b]);
            DGSlot {
                degree: t.degree - s.degree,
                internal: t.internal - s.twist,
                object: g,
            }
        };
        pairs.sort_by_key(|p| (tag(p), p.1));
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let basis: Vec<DGSlot> = pairs.iter().map(tag).collect();
        let expand = |g: usize, v: &SparseVec| -> SparseVec {
            let mut out: SparseVec = v.iter().map(|(b, c)| (index[&(g, *b)], c.clone())).collect();
            out.sort_by_key(|(i, _)| *i);
            out
        };
        let diff = pairs
            .iter()
            .enumerate()
            .map(|(i, &(g, b))| {
                let mut out = expand(g, m.basis_differential(b));
                let sign = -parity(basis[i].degree);
                for (g0, z) in &self.d_in[g] {
                    out = sparse_axpy(&out, &sign, &expand(*g0, &m.act(&vec![(b, Scalar::one())], z)));
                }
                out
            })
            .collect();
        let action = pairs
            .iter()
            .map(|&(g, b)| {
                (0..self.elements.len())
                    .map(|e| {
                        let (g0, h, x) = self.elements[e];
                        if h != g {
                            return Vec::new();
                        }
                        expand(g0, &m.act(&vec![(b, Scalar::one())], &vec![(x, Scalar::one())]))
                    })
                    .collect()
            })
            .collect();
        let module = DGModule::from_parts(self.algebra.clone(), basis, diff, action);
        Ok(HomModule { module, pairs, index })
    }

    /// The element of `End(P)` given by a family of module maps between
    /// terms: `components` lists `(c, shift_c, matrix)` with the matrix
    /// mapping term `c` to term `c + shift_c`, all of one cohomological
    /// shift. Each generator image is read off and expanded in the basis.
    pub fn element_from_maps(&self, components: &[(i32, i32, Matrix)]) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (c, n, f) in components {
            let (Some(src), Some(tgt)) = (self.complex.term(*c), self.complex.term(c + n)) else {
                continue;
            };
            if f.rows() != tgt.dim() || f.cols() != src.dim() {
                return Err(Error::InvalidModule(format!("component at degree {c} has the wrong shape")));
            }
            for (g, s) in self.summands.iter().enumerate() {
                if s.degree != *c {
                    continue;
                }
                let col = f.column(src.generator_position(s.generator));
                for (r, v) in col.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let (k, x) = tgt.decompose(r);
                    let h = self
                        .summands
                        .iter()
                        .position(|t| t.degree == c + n && t.generator == k)
                        .expect("summand exists");
                    let e = self
                        .element(g, h, x)
                        .ok_or_else(|| Error::InvalidModule("map is not vertex-homogeneous".into()))?;
                    out = sparse_axpy(&out, v, &vec![(e, Scalar::one())]);
                }
            }
        }
        Ok(out)
    }

    /// Coordinate of `g·x` in the total basis of the complex.
    pub fn total_position(&self, g: usize, x: usize) -> usize {
        self.complex_position(g, x)
    }
}

/// `Hom(P, M)` with the pair `(summand, basis vector of M)` of each basis element.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: DGModule,
    pub pairs: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl HomModule {
    pub fn position(&self, g: usize, b: usize) -> Option<usize> {
        self.index.get(&(g, b)).copied()
    }
}

/// `Hom^•(M, N)` between complexes of graded modules, as a DG module over
/// the ground field: `Hom^n_s = Π_c Hom(M^c, N^{c+n})` of maps raising the
/// internal degree by `s`, with `d f = d_N f − (−1)^n f d_M`. Basis
/// elements are the maps returned alongside.
pub fn hom_complex(m: &ComplexOfModules, n: &ComplexOfModules) -> Result<(DGModule, Vec<(i32, i32, i32, Matrix)>)> {
    use crate::modules::hom_space;
    if *m.algebra() != *n.algebra() {
        return Err(Error::AlgebraMismatch("hom between complexes over different algebras".into()));
    }
    let degrees = |c: &ComplexOfModules| -> Vec<i32> {
        c.terms()
            .iter()
            .flat_map(|t| t.basis().iter().map(|s| s.degree).collect::<Vec<_>>())
            .collect()
    };
    let (dm, dn) = (degrees(m), degrees(n));
    if dm.is_empty() || dn.is_empty() {
        return Ok((DGModule::zero(Arc::new(DGAlgebra::scalars())), Vec::new()));
    }
    let smin = dn.iter().min().unwrap() - dm.iter().max().unwrap();
    let smax = dn.iter().max().unwrap() - dm.iter().min().unwrap();
    // (source degree c, target degree c', shift s, matrix)
    let mut maps: Vec<(i32, i32, i32, Matrix)> = Vec::new();
    for c in m.start()..m.end() {
        for c2 in n.start()..n.end() {
            for s in smin..=smax {
                for f in hom_space(m.term(c).unwrap(), n.term(c2).unwrap(), s) {
                    maps.push((c, c2, s, f.matrix));
                }
            }
        }
    }
    let tag = |(c, c2, s, _): &(i32, i32, i32, Matrix)| (c2 - c, *s);
    let mut order: Vec<usize> = (0..maps.len()).collect();
    order.sort_by_key(|&i| (tag(&maps[i]), maps[i].0));
    let maps: Vec<(i32, i32, i32, Matrix)> = order.into_iter().map(|i| maps[i].clone()).collect();
    let coords = |c: i32, c2: i32, s: i32, f: &Matrix| hom_coordinates(&maps, c, c2, s, f);
    let mut diff = Vec::with_capacity(maps.len());
    for (c, c2, s, f) in &maps {
        let k = c2 - c;
        let mut out = Vec::new();
        if n.term(c2 + 1).is_some() {
            out = sparse_axpy(&out, &Scalar::one(), &coords(*c, c2 + 1, *s, &n.differential(*c2).mul(f))?);
        }
        if m.term(c - 1).is_some() {
            out = sparse_axpy(&out, &-parity(k), &coords(c - 1, *c2, *s, &f.mul(&m.differential(c - 1)))?);
        }
        diff.push(out);
    }
    let basis = maps
        .iter()
        .map(|(c, c2, s, _)| DGSlot {
            degree: c2 - c,
            internal: *s,
            object: 0,
        })
        .collect();
    let action = (0..maps.len()).map(|i| vec![vec![(i, Scalar::one())]]).collect();
    let module = DGModule::new(Arc::new(DGAlgebra::scalars()), basis, diff, action)?;
    Ok((module, maps))
}

/// Coordinates of a map `f` from term `c` to term `c2` raising the internal
/// degree by `s`, in the basis returned by [`hom_complex`].
pub fn hom_coordinates(maps: &[(i32, i32, i32, Matrix)], c: i32, c2: i32, s: i32, f: &Matrix) -> Result<SparseVec> {
    let idx: Vec<usize> = (0..maps.len())
        .filter(|&i| maps[i].0 == c && maps[i].1 == c2 && maps[i].2 == s)
        .collect();
    let flat = |g: &Matrix| -> Vec<Scalar> { (0..g.cols()).flat_map(|j| g.column(j)).collect() };
    let target = flat(f);
    if target.iter().all(|x| x.is_zero()) {
        return Ok(Vec::new());
    }
    let cols: Vec<Vec<Scalar>> = idx.iter().map(|&i| flat(&maps[i].3)).collect();
    let sys = Matrix::from_columns(target.len(), &cols);
    let sol = sys
        .solve(&Matrix::from_columns(target.len(), &[target]))
        .ok_or_else(|| Error::InvalidModule("composite is not a module map".into()))?;
    Ok(idx
        .iter()
        .enumerate()
        .filter(|(r, _)| !sol[(*r, 0)].is_zero())
        .map(|(r, &i)| (i, sol[(r, 0)].clone()))
        .collect())
}
