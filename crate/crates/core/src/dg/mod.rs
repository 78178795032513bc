//! Differential bigraded algebras and their modules: cohomology,
//! shifts, twists, cones, quasi-isomorphism certificates, balanced tensor
//! products, and endomorphism algebras of complexes of free modules.
//!
//! Everything is bigraded by (cohomological degree, internal degree).
//! Shifts follow `M[1]^n = M^{n+1}` with negated differential and
//! unchanged action; twists follow `M⟨1⟩_i = M_{i−1}`.

mod algebra;
mod bimodule;
mod free;
mod module;

pub use algebra::{DGAlgebra, DGBasis};
pub use bimodule::{dg_tensor, DGBiSlot, DGBimodule, DGTensor};
pub use free::{hom_complex, hom_coordinates, Endomorphisms, FreeComplex, HomModule, Summand};
pub use module::{cone, BigradedTable, Cohomology, Cone, DGMap, DGModule, DGSlot, QuasiIsoCertificate};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::koszul_complex;
    use crate::library;
    use crate::algebra::GradedAlgebra;
    use crate::modules::{simple_module, ComplexOfModules};
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;
    use alloc::vec::Vec;

    fn sl2_koszul_ends() -> Endomorphisms {
        let a = Arc::new(library::sl2_block());
        let kc = koszul_complex(&a, 4);
        let names: Vec<_> = a.vertices().iter().map(|v| v.to_string()).collect();
        let mut p = FreeComplex::from_resolution(&kc.components[0], 0, names.clone());
        for w in 1..a.vertex_count() {
            p = p.direct_sum(&FreeComplex::from_resolution(&kc.components[w], w, names.clone())).unwrap();
        }
        Endomorphisms::new(&p)
    }

    #[test]
    fn graded_algebras_are_dg_algebras() {
        let a = library::sl2_block();
        let dg = DGAlgebra::from_graded(&a, 0, 1);
        assert!(dg.validate().is_ok());
        assert_eq!(dg.dim(), 5);
        let shifted = DGAlgebra::from_graded(&a, 1, -1);
        assert!(shifted.validate().is_ok());
        assert!(DGAlgebra::scalars().validate().is_ok());
    }

    #[test]
    fn endomorphism_algebra_of_koszul_complex() {
        let ends = sl2_koszul_ends();
        let e = &ends.algebra;
        assert_eq!(e.dim(), 29);
        e.validate().unwrap();
        ends.bimodule().validate().unwrap();
        // cohomology of E is Ext: dims (2, 2, 1) in degrees 0, 1, 2 with internal = −degree
        let h = DGModule::regular(e.clone()).cohomology_table();
        let mut by_degree = [0usize; 3];
        for (&(n, s, _), &d) in &h {
            assert_eq!(s, -n);
            by_degree[n as usize] += d;
        }
        assert_eq!(by_degree, [2, 2, 1]);
    }

    #[test]
    fn hom_from_koszul_complex_computes_ext() {
        let ends = sl2_koszul_ends();
        let a = ends.complex.algebra().clone();
        for w in 0..2 {
            let kw = ComplexOfModules::single(simple_module(&a, w).unwrap(), 0);
            let m = DGModule::from_complex(&kw, ends.base.clone()).unwrap();
            let hom = ends.hom_into(&m).unwrap();
            hom.module.validate().unwrap();
            let total: usize = hom.module.cohomology_table().values().sum();
            // Ext(k, k_w) = e_w A^!: dims 3 at e, 2 at s
            assert_eq!(total, [3, 2][w]);
        }
    }

    #[test]
    fn regular_tensor_recovers_the_complex() {
        let ends = sl2_koszul_ends();
        let k = ends.bimodule();
        let t = dg_tensor(&DGModule::regular(ends.algebra.clone()), &k).unwrap();
        assert_eq!(t.module.dim(), k.dim());
        let back = t.module.to_complex(ends.complex.algebra()).unwrap();
        assert_eq!(back.cohomology_table(), ends.complex.as_complex().cohomology_table());
    }

    #[test]
    fn cone_of_identity_is_acyclic_and_shift_twist_move_tables() {
        let a = Arc::new(library::sl2_block());
        let base = Arc::new(DGAlgebra::from_graded(&a, 0, 1));
        let m = DGModule::from_complex(&ComplexOfModules::single(simple_module(&a, 1).unwrap(), 0), base).unwrap();
        let c = cone(&DGMap::identity(&m), &m, &m).unwrap();
        assert!(c.module.is_acyclic());
        c.inclusion.check(&m, &c.module).unwrap();
        c.projection.check(&c.module, &m.shift()).unwrap();
        let t = m.shift().twist(2).cohomology_table();
        assert_eq!(t.keys().copied().collect::<Vec<_>>(), vec![(-1, 2, 1)]);
        let cert = DGMap::identity(&m).quasi_iso_certificate(&m, &m).unwrap();
        assert!(cert.is_quasi_iso());
    }

    #[test]
    fn hom_complex_of_acyclic_complex_is_acyclic() {
        let a = Arc::new(GradedAlgebra::ground_field("k"));
        let k = simple_module(&a, 0).unwrap();
        let c = ComplexOfModules::new(
            a.clone(),
            0,
            vec![k.clone(), k],
            vec![crate::exactlin::Matrix::identity(1)],
        )
        .unwrap();
        let (h, maps) = hom_complex(&c, &c).unwrap();
        assert_eq!(maps.len(), 4);
        assert!(h.is_acyclic());
    }
}
