//! Versioned JSON file formats. Rational numbers are written as exact
//! `"p/q"` (or integer) strings.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use koszulkit_core::algebra::{build_algebra, GradedAlgebra, Path, Quiver, Relation};
use koszulkit_core::exactlin::{parse_scalar, Matrix, Scalar};
use koszulkit_core::functors::WallDatum;
use koszulkit_core::modules::{BiSlot, Bimodule, ComplexOfModules, GradedModule, Slot};

use crate::Failure;

pub const FORMAT_VERSION: u32 = 1;

fn check_version(v: u32, what: &str) -> Result<(), Failure> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Failure::Parse(format!("{what}: unsupported format_version {v}")))
    }
}

fn invalid(e: koszulkit_core::Error) -> Failure {
    Failure::Invalid(e.to_string())
}

/// Rows of exact rational strings.
pub type MatrixSpec = Vec<Vec<String>>;

pub fn parse_matrix(rows: &MatrixSpec, nrows: usize, ncols: usize, what: &str) -> Result<Matrix, Failure> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Failure::Parse(format!("{what}: expected a {nrows}×{ncols} matrix")));
    }
    let mut m = Matrix::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m[(i, j)] = parse_scalar(s).ok_or_else(|| Failure::Parse(format!("{what}: `{s}` is not a rational")))?;
        }
    }
    Ok(m)
}

pub fn matrix_spec(m: &Matrix) -> MatrixSpec {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(Scalar::to_string).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub from: String,
    pub to: String,
    pub label: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

/// A quiver with relations and the degree up to which the quotient is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub format_version: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub degree_bound: u32,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<GradedAlgebra, Failure> {
        check_version(self.format_version, "algebra")?;
        let names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let mut quiver = Quiver::new(&[]);
        for v in &names {
            if quiver.vertices.iter().any(|w| w == v) {
                return Err(invalid(koszulkit_core::Error::DuplicateVertex(v.to_string())));
            }
            quiver.vertices.push(v.to_string());
        }
        for a in &self.arrows {
            quiver.try_arrow(&a.label, &a.from, &a.to, a.degree).map_err(invalid)?;
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut terms = Vec::with_capacity(r.len());
            for t in r {
                let c = parse_scalar(&t.coeff)
                    .ok_or_else(|| Failure::Parse(format!("relation coefficient `{}` is not a rational", t.coeff)))?;
                let labels: Vec<&str> = t.path.iter().map(String::as_str).collect();
                terms.push((c, Path::from_labels(&quiver, &labels).map_err(invalid)?));
            }
            relations.push(Relation::new(terms));
        }
        build_algebra(&quiver, &relations, self.degree_bound).map_err(invalid)
    }

    /// The presentation an algebra was built from.
    pub fn from_algebra(a: &GradedAlgebra) -> Option<Self> {
        let p = a.presentation()?;
        let q = &p.quiver;
        Some(AlgebraSpec {
            format_version: FORMAT_VERSION,
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|x| ArrowSpec {
                    from: q.vertices[x.source].clone(),
                    to: q.vertices[x.target].clone(),
                    label: x.label.clone(),
                    degree: x.degree,
                })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermSpec {
                            coeff: c.to_string(),
                            path: path.arrows.iter().map(|&i| q.arrows[i].label.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            degree_bound: a.degree_bound(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotSpec {
    pub degree: i32,
    pub vertex: String,
}

/// A graded right module: its homogeneous basis and the matrices of the
/// algebra generators (by arrow label; missing ones act by zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub basis: Vec<SlotSpec>,
    #[serde(default)]
    pub actions: BTreeMap<String, MatrixSpec>,
}

fn generator_matrices(
    a: &GradedAlgebra,
    given: &BTreeMap<String, MatrixSpec>,
    n: usize,
    what: &str,
) -> Result<Vec<Matrix>, Failure> {
    for label in given.keys() {
        if !a.generators().iter().any(|g| &g.label == label) {
            return Err(Failure::Parse(format!("{what}: unknown generator `{label}`")));
        }
    }
    a.generators()
        .iter()
        .map(|g| match given.get(&g.label) {
            Some(m) => parse_matrix(m, n, n, &format!("{what}, action of {}", g.label)),
            None => Ok(Matrix::zeros(n, n)),
        })
        .collect()
}

fn vertex_of(a: &GradedAlgebra, name: &str) -> Result<usize, Failure> {
    a.vertex(name).map_err(|e| Failure::Parse(e.to_string()))
}

impl ModuleSpec {
    pub fn build(&self, a: &Arc<GradedAlgebra>) -> Result<GradedModule, Failure> {
        let basis = self
            .basis
            .iter()
            .map(|s| {
                Ok(Slot {
                    degree: s.degree,
                    vertex: vertex_of(a, &s.vertex)?,
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let gens = generator_matrices(a, &self.actions, basis.len(), "module")?;
        GradedModule::new(a.clone(), basis, &gens).map_err(invalid)
    }
}

/// A bounded complex of graded modules starting in cohomological degree
/// `start`; `differentials[k]` maps term `k` to term `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub format_version: u32,
    pub start: i32,
    pub terms: Vec<ModuleSpec>,
    #[serde(default)]
    pub differentials: Vec<MatrixSpec>,
}

impl ComplexSpec {
    pub fn build(&self, a: &Arc<GradedAlgebra>) -> Result<ComplexOfModules, Failure> {
        check_version(self.format_version, "complex")?;
        let terms = self.terms.iter().map(|t| t.build(a)).collect::<Result<Vec<_>, _>>()?;
        if self.differentials.len() != terms.len().saturating_sub(1) {
            return Err(Failure::Parse("complex: one differential per pair of adjacent terms".into()));
        }
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(k, d)| parse_matrix(d, terms[k + 1].dim(), terms[k].dim(), "differential"))
            .collect::<Result<Vec<_>, _>>()?;
        ComplexOfModules::new(a.clone(), self.start, terms, diffs).map_err(invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiSlotSpec {
    pub degree: i32,
    pub left: String,
    pub right: String,
}

/// A graded bimodule: homogeneous basis (internal degree, left and right
/// vertex) and the matrices of the generators of both algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub basis: Vec<BiSlotSpec>,
    #[serde(default)]
    pub left_actions: BTreeMap<String, MatrixSpec>,
    #[serde(default)]
    pub right_actions: BTreeMap<String, MatrixSpec>,
}

impl BimoduleSpec {
    pub fn build(&self, left: &Arc<GradedAlgebra>, right: &Arc<GradedAlgebra>) -> Result<Bimodule, Failure> {
        let basis = self
            .basis
            .iter()
            .map(|s| {
                Ok(BiSlot {
                    degree: s.degree,
                    left: vertex_of(left, &s.left)?,
                    right: vertex_of(right, &s.right)?,
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let n = basis.len();
        let l = generator_matrices(left, &self.left_actions, n, "bimodule, left")?;
        let r = generator_matrices(right, &self.right_actions, n, "bimodule, right")?;
        Bimodule::new(left.clone(), right.clone(), basis, &l, &r).map_err(invalid)
    }

    pub fn from_bimodule(x: &Bimodule) -> Self {
        let (l, r) = (x.left(), x.right());
        let keyed = |alg: &GradedAlgebra, ms: Vec<Matrix>| -> BTreeMap<String, MatrixSpec> {
            alg.generators()
                .iter()
                .zip(ms)
                .filter(|(_, m)| !m.is_zero())
                .map(|(g, m)| (g.label.clone(), matrix_spec(&m)))
                .collect()
        };
        BimoduleSpec {
            basis: x
                .basis()
                .iter()
                .map(|s| BiSlotSpec {
                    degree: s.degree,
                    left: l.vertices()[s.left].clone(),
                    right: r.vertices()[s.right].clone(),
                })
                .collect(),
            left_actions: keyed(l, x.left_generator_actions()),
            right_actions: keyed(r, x.right_generator_actions()),
        }
    }
}

/// An algebra given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    File(String),
    Inline(AlgebraSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallSpec {
    pub format_version: u32,
    pub algebra: AlgebraRef,
    pub singular_algebra: AlgebraRef,
    pub bimodule_x: BimoduleSpec,
    pub bimodule_x_prime: BimoduleSpec,
    /// Vertices of the regular algebra killed by truncation.
    pub kill: Vec<String>,
    /// `[vertex of the singular algebra, vertex of the regular algebra]`.
    pub matching: Vec<[String; 2]>,
    pub shift_s: i32,
}

/// A file's bytes, by path, as read for a command.
#[derive(Clone, Debug)]
pub struct Input {
    pub path: String,
    pub bytes: Vec<u8>,
}

pub fn read_input(path: &FsPath) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok(Input {
        path: path.display().to_string(),
        bytes,
    })
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(input: &Input) -> Result<T, Failure> {
    serde_json::from_slice(&input.bytes).map_err(|e| Failure::Parse(format!("{}: {e}", input.path)))
}

pub fn load_algebra(input: &Input) -> Result<Arc<GradedAlgebra>, Failure> {
    let spec: AlgebraSpec = parse_json(input)?;
    Ok(Arc::new(spec.build()?))
}

impl WallSpec {
    /// Resolves algebra references relative to `base` and validates the
    /// datum. Referenced files are appended to `inputs`.
    pub fn load(&self, base: &FsPath, inputs: &mut Vec<Input>) -> Result<WallDatum, Failure> {
        check_version(self.format_version, "wall")?;
        let mut resolve = |r: &AlgebraRef| -> Result<Arc<GradedAlgebra>, Failure> {
            match r {
                AlgebraRef::Inline(spec) => Ok(Arc::new(spec.build()?)),
                AlgebraRef::File(p) => {
                    let path: PathBuf = base.join(p);
                    let input = read_input(&path)?;
                    let a = load_algebra(&input)?;
                    inputs.push(input);
                    Ok(a)
                }
            }
        };
        let regular = resolve(&self.algebra)?;
        let singular = resolve(&self.singular_algebra)?;
        let x = self.bimodule_x.build(&regular, &singular)?;
        let x_prime = self.bimodule_x_prime.build(&singular, &regular)?;
        let kill = self
            .kill
            .iter()
            .map(|v| vertex_of(&regular, v))
            .collect::<Result<Vec<_>, _>>()?;
        let matching = self
            .matching
            .iter()
            .map(|[l, v]| Ok((vertex_of(&singular, l)?, vertex_of(&regular, v)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        WallDatum::new(x, x_prime, kill, matching, self.shift_s).map_err(invalid)
    }

    /// A self-contained file for a datum whose algebras carry presentations.
    pub fn from_datum(w: &WallDatum) -> Option<Self> {
        let (r, s) = (w.regular(), w.singular());
        Some(WallSpec {
            format_version: FORMAT_VERSION,
            algebra: AlgebraRef::Inline(AlgebraSpec::from_algebra(r)?),
            singular_algebra: AlgebraRef::Inline(AlgebraSpec::from_algebra(s)?),
            bimodule_x: BimoduleSpec::from_bimodule(w.translation()),
            bimodule_x_prime: BimoduleSpec::from_bimodule(w.adjoint()),
            kill: w.kill().iter().map(|&v| r.vertices()[v].clone()).collect(),
            matching: w
                .matching()
                .iter()
                .map(|&(l, v)| [s.vertices()[l].clone(), r.vertices()[v].clone()])
                .collect(),
            shift_s: w.shift(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszulkit_core::library;
    use koszulkit_core::modules::projective_module;

    #[test]
    fn library_algebras_round_trip() {
        for a in [library::semisimple_two(), library::dual_numbers(4), library::sl2_block()] {
            let spec = AlgebraSpec::from_algebra(&a).unwrap();
            let text = serde_json::to_string(&spec).unwrap();
            let back: AlgebraSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.build().unwrap(), a);
        }
    }

    #[test]
    fn rationals_are_exact_strings() {
        let m = parse_matrix(&vec![vec!["1/3".into(), "-2".into()]], 1, 2, "m").unwrap();
        assert_eq!(matrix_spec(&m), vec![vec!["1/3".to_string(), "-2".to_string()]]);
        assert!(matches!(parse_matrix(&vec![vec!["0.5".into()]], 1, 1, "m"), Err(Failure::Parse(_))));
        assert!(matches!(parse_matrix(&vec![vec!["1".into()]], 2, 1, "m"), Err(Failure::Parse(_))));
    }

    #[test]
    fn wall_round_trips() {
        let w = library::sl2_wall();
        let spec = WallSpec::from_datum(&w).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: WallSpec = serde_json::from_str(&text).unwrap();
        let loaded = back.load(FsPath::new("."), &mut Vec::new()).unwrap();
        assert_eq!(loaded.kill(), w.kill());
        assert_eq!(loaded.matching(), w.matching());
        assert_eq!(loaded.shift(), w.shift());
        assert_eq!(loaded.translation().basis(), w.translation().basis());
    }

    #[test]
    fn complex_spec_builds_a_projective() {
        let a = Arc::new(library::sl2_block());
        let p = projective_module(&a, 1, 0).unwrap();
        let actions = a
            .generators()
            .iter()
            .map(|g| {
                let idx = a.basis_index_by_label(&g.label).unwrap();
                (g.label.clone(), matrix_spec(p.action(idx)))
            })
            .collect();
        let spec = ComplexSpec {
            format_version: 1,
            start: 0,
            terms: vec![ModuleSpec {
                basis: p
                    .basis()
                    .iter()
                    .map(|s| SlotSpec {
                        degree: s.degree,
                        vertex: a.vertices()[s.vertex].clone(),
                    })
                    .collect(),
                actions,
            }],
            differentials: vec![],
        };
        let c = spec.build(&a).unwrap();
        assert_eq!(c.term(0).unwrap(), &p);
        let wrong = ComplexSpec { format_version: 2, ..spec };
        assert!(matches!(wrong.build(&a), Err(Failure::Parse(_))));
    }
}
