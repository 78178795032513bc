use std::sync::Arc;

use proptest::prelude::*;

use koszulkit_core::duality::{make_context, DualityContext};
use koszulkit_core::exactlin::{q, Matrix};
use koszulkit_core::library;
use koszulkit_core::modules::{ChainMap, ComplexOfModules};
use koszulkit_core::testobjects::seeded_complexes;

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_fn(r, c, |i, j| q(v[i * c + j])))
    })
}

fn sl2_context() -> &'static DualityContext {
    use std::sync::OnceLock;
    static CTX: OnceLock<DualityContext> = OnceLock::new();
    CTX.get_or_init(|| make_context(&Arc::new(library::sl2_block()), 4).expect("sl2 is Koszul"))
}

fn one_complex(seed: u64) -> ComplexOfModules {
    let a = sl2_context().algebra.clone();
    seeded_complexes(&a, seed, 1).pop().expect("one complex").1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let (r, pivots) = m.rref();
        let (rr, again) = r.rref();
        prop_assert_eq!(rr, r);
        prop_assert_eq!(again, pivots);
    }

    #[test]
    fn solve_recovers_a_preimage(m in small_matrix(), x in prop::collection::vec(-3i64..=3, 5)) {
        let x = Matrix::from_fn(m.cols(), 1, |i, _| q(x[i]));
        let b = m.mul(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul(&y), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn twist_moves_cohomology_internally(seed in any::<u64>(), k in -2i32..=2) {
        let c = one_complex(seed);
        let moved: koszulkit_core::modules::Table = c
            .cohomology_table()
            .into_iter()
            .map(|((d, i, v), n)| ((d, i + k, v), n))
            .collect();
        prop_assert_eq!(c.twist(k).cohomology_table(), moved);
    }

    #[test]
    fn cone_of_identity_is_acyclic(seed in any::<u64>()) {
        let c = one_complex(seed);
        let cone = ComplexOfModules::cone(&ChainMap::identity(&c), &c, &c);
        prop_assert!(cone.is_valid());
        prop_assert!(cone.is_acyclic());
    }

    #[test]
    fn psi_is_a_quasi_isomorphism(seed in any::<u64>()) {
        let ctx = sl2_context();
        let (_, cert) = ctx.psi(&one_complex(seed)).expect("ψ");
        prop_assert!(cert.is_quasi_iso());
    }

    #[test]
    fn sigma_is_a_strict_isomorphism(seed in any::<u64>()) {
        let ctx = sl2_context();
        let p = seeded_complexes(&ctx.dual, seed, 1).pop().expect("one complex").1;
        let (f, source, target) = ctx.sigma_twist_iso(&p).expect("σ");
        prop_assert!(f.check(&source, &target).is_ok());
        prop_assert!(f.quasi_iso_certificate(&source, &target).expect("certificate").is_quasi_iso());
    }

    #[test]
    fn duality_reaches_the_strict_model(seed in any::<u64>()) {
        let ctx = sl2_context();
        let d = ctx.koszul_duality(&one_complex(seed)).expect("duality");
        let strict = d.strict.expect("strict model");
        prop_assert_eq!(ctx.totalize(&strict).expect("totalize").cohomology_table(), d.table);
    }
}
