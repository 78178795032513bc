//! Built-in example algebras.
//!
//! * `semisimple-2`: two vertices, no arrows.
//! * `dual-numbers`: one vertex with a degree-1 loop `x`, relation `x·x`.
//! * `sl2-principal-block`: vertices `e` (dominant) and `s`, arrows
//!   `a: e → s`, `b: s → e` of degree 1, relation `a·b`. This is the graded
//!   endomorphism algebra of a minimal projective generator of the regular
//!   block of category O for sl₂; its graded dimensions are (2, 2, 1).
//! * `sl2-wall`: the wall datum for translation from that block to the
//!   singular block, which is semisimple with one simple `l`. Translation
//!   onto the wall is `M ↦ M e_s` (the bimodule `A e_s`), translation out
//!   of it is `− ⊗ e_s A`; the simple at `e` (the finite-dimensional one)
//!   is killed by translation, `A^λ = A / A e_e A`, and `l` is matched with
//!   `s`. Since `e_s A` is the injective hull of the simple at `s` twisted
//!   by 2, the adjunction identity holds with shift −2.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{build_algebra, GradedAlgebra, Path, Quiver, Relation};
use crate::exactlin::q;
use crate::functors::WallDatum;
use crate::modules::Bimodule;

pub const NAMES: [&str; 4] = ["semisimple-2", "dual-numbers", "sl2-principal-block", "sl2-wall"];

pub fn semisimple_quiver() -> (Quiver, Vec<Relation>, u32) {
    (Quiver::new(&["1", "2"]), Vec::new(), 0)
}

pub fn dual_numbers_quiver(bound: u32) -> (Quiver, Vec<Relation>, u32) {
    let quiver = Quiver::new(&["v"]).arrow("x", "v", "v", 1);
    let xx = Path::from_labels(&quiver, &["x", "x"]).expect("composable");
    (quiver, vec![Relation::new(vec![(q(1), xx)])], bound.max(2))
}

pub fn sl2_quiver() -> (Quiver, Vec<Relation>, u32) {
    let quiver = Quiver::new(&["e", "s"]).arrow("a", "e", "s", 1).arrow("b", "s", "e", 1);
    let ab = Path::from_labels(&quiver, &["a", "b"]).expect("composable");
    (quiver, vec![Relation::new(vec![(q(1), ab)])], 4)
}

pub fn semisimple_two() -> GradedAlgebra {
    let (quiver, rels, bound) = semisimple_quiver();
    build_algebra(&quiver, &rels, bound).expect("valid presentation")
}

pub fn dual_numbers(bound: u32) -> GradedAlgebra {
    let (quiver, rels, bound) = dual_numbers_quiver(bound);
    build_algebra(&quiver, &rels, bound).expect("valid presentation")
}

pub fn sl2_block() -> GradedAlgebra {
    let (quiver, rels, bound) = sl2_quiver();
    build_algebra(&quiver, &rels, bound).expect("valid presentation")
}

pub fn sl2_wall() -> WallDatum {
    let a = Arc::new(sl2_block());
    let l = Arc::new(GradedAlgebra::ground_field("l"));
    let x = Bimodule::right_corner(&a, &l, &[(0, 1)]).expect("corner bimodule");
    let x_prime = Bimodule::left_corner(&l, &a, &[(0, 1)]).expect("corner bimodule");
    WallDatum::new(x, x_prime, vec![0], vec![(0, 1)], -2).expect("valid wall datum")
}
