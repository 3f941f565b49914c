mod common;

use proptest::prelude::*;

use common::*;
use nori_kernel::comodule::{hom_dim, ModuleMap};
use nori_kernel::corpus::{self, case_rng};
use nori_kernel::diagram::Subgraph;
use nori_kernel::endomorphism::{compute_end, compute_endvee};
use nori_kernel::homology::cohomology_euler;
use nori_kernel::json::{parse_representation, representation_json};
use nori_kernel::linalg::{kernel, rank};
use nori_kernel::tannaka::{adjunction_dims, dual_of_cokernel, Bialgebra, DualityDatum};
use nori_kernel::{Field, Matrix};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(3).unwrap()), Just(Field::prime(7).unwrap())]
}

fn matrix(field: Field) -> impl Strategy<Value = Matrix> {
    (0usize..5, 0usize..5).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            let data = v.iter().map(|&x| field.from_i64(x)).collect();
            Matrix::new(field, r, c, data).unwrap()
        })
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    fields().prop_flat_map(matrix)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_agrees_with_textbook_elimination(m in any_matrix()) {
        let r = if m.rows() == 0 || m.cols() == 0 { 0 } else { oracle_rank(&m) };
        prop_assert_eq!(rank(&m), r);
    }

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + rank(&m), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in any_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn scalar_field_laws(field in fields(), a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let (a, b, c) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn end_matches_commutation_count(seed in any::<u64>(), field in fields()) {
        let rep = corpus::random_acyclic_rep(&mut case_rng(seed, 0), field, 4, 3, 2);
        let a = compute_end(&rep, &Subgraph::full(rep.diagram())).unwrap();
        prop_assert_eq!(a.dim(), end_dim(&rep));
        a.verify().unwrap();
        let c = compute_endvee(&rep, &Subgraph::full(rep.diagram())).unwrap();
        prop_assert_eq!(c.dim(), a.dim());
        prop_assert!(c.check_coassociativity().is_ok() && c.check_counit().is_ok());
    }

    #[test]
    fn representation_json_round_trips(seed in any::<u64>(), field in fields()) {
        let rep = corpus::random_acyclic_rep(&mut case_rng(seed, 1), field, 4, 3, 2);
        let text = representation_json(&rep).to_string();
        let back = parse_representation(&text, None).unwrap();
        prop_assert_eq!(back.dims(), rep.dims());
        prop_assert_eq!(back.maps(), rep.maps());
    }

    #[test]
    fn euler_characteristic_is_cohomological(seed in any::<u64>(), field in fields()) {
        let c = corpus::random_complex(&mut case_rng(seed, 2), field, 5, 4);
        prop_assert_eq!(c.euler_characteristic(), cohomology_euler(&c));
    }

    #[test]
    fn pages_shrink_and_converge(seed in any::<u64>()) {
        let fc = corpus::random_filtered_complex(&mut case_rng(seed, 3), Field::Rational, 4, 3, 3);
        let s = fc.pages(3).unwrap();
        for r in 1..s.pages.len() {
            for (a, b) in s.pages[r - 1].iter().zip(&s.pages[r]) {
                prop_assert_eq!((a.p, a.q), (b.p, b.q));
                prop_assert!(b.dim <= a.dim, "E_{} larger than E_{} at {:?}", r, r - 1, (b.p, b.q));
            }
        }
        let h = fc.complex().cohomology_dims();
        for (k, n) in (fc.complex().start()..=fc.complex().end()).enumerate() {
            prop_assert_eq!(s.abutment(n), h[k]);
        }
    }

    #[test]
    fn module_maps_are_exact(seed in any::<u64>()) {
        let rng = &mut case_rng(seed, 4);
        let b = Bialgebra::cyclic_group(Field::Rational, 3).unwrap();
        let v = corpus::random_group_module(rng, &b, 3);
        let w = corpus::random_group_module(rng, &b, 3);
        let f = ModuleMap::new(v.clone(), w.clone(), corpus::random_module_map(rng, &v, &w).unwrap()).unwrap();
        let (k, inc) = f.kernel().unwrap();
        let (c, proj) = f.cokernel().unwrap();
        let r = rank(&f.matrix);
        prop_assert_eq!(k.dim() + r, v.dim());
        prop_assert_eq!(c.dim() + r, w.dim());
        prop_assert!(f.matrix.mul(&inc.matrix).unwrap().is_zero());
        prop_assert!(proj.matrix.mul(&f.matrix).unwrap().is_zero());
    }

    #[test]
    fn transposition_reverses_composition(seed in any::<u64>()) {
        let rng = &mut case_rng(seed, 5);
        let b = Bialgebra::cyclic_group(Field::Rational, 2).unwrap();
        let ms: Vec<_> = (0..3).map(|_| corpus::random_group_module(rng, &b, 3)).collect();
        let ds: Vec<DualityDatum> = ms.iter().map(|m| b.dual_module(m).unwrap()).collect();
        let g = corpus::random_module_map(rng, &ms[0], &ms[1]).unwrap();
        let f = corpus::random_module_map(rng, &ms[1], &ms[2]).unwrap();
        let fg = DualityDatum::transpose_map(&ds[0], &ds[2], &f.mul(&g).unwrap()).unwrap();
        let gt = DualityDatum::transpose_map(&ds[0], &ds[1], &g).unwrap();
        let ft = DualityDatum::transpose_map(&ds[1], &ds[2], &f).unwrap();
        prop_assert_eq!(fg, gt.mul(&ft).unwrap());
    }

    #[test]
    fn duals_satisfy_triangles_and_adjunction(seed in any::<u64>(), order in 1usize..=3) {
        let rng = &mut case_rng(seed, 6);
        let b = Bialgebra::cyclic_group(Field::Rational, order).unwrap();
        b.verify().unwrap();
        let m1 = corpus::random_group_module(rng, &b, 2);
        let m2 = corpus::random_group_module(rng, &b, 3);
        let (d1, d2) = (b.dual_module(&m1).unwrap(), b.dual_module(&m2).unwrap());
        let f = corpus::random_module_map(rng, &m1, &m2).unwrap();
        let c = dual_of_cokernel(&f, &d1, &d2, Some(&b)).unwrap();
        prop_assert!(c.left_exact);
        let x = corpus::random_group_module(rng, &b, 2);
        let y = corpus::random_group_module(rng, &b, 2);
        for d in [&d1, &d2, &c.datum] {
            d.verify(Some(&b)).unwrap();
            let (lhs, rhs) = adjunction_dims(&b, d, &x, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        b.check_unit_laws(&m2).unwrap();
    }

    #[test]
    fn hom_dims_are_symmetric_for_group_modules(seed in any::<u64>()) {
        // over ℚ every representation of ℤ/m is semisimple
        let rng = &mut case_rng(seed, 7);
        let b = Bialgebra::cyclic_group(Field::Rational, 3).unwrap();
        let v = corpus::random_group_module(rng, &b, 3);
        let w = corpus::random_group_module(rng, &b, 3);
        prop_assert_eq!(hom_dim(&v, &w).unwrap(), hom_dim(&w, &v).unwrap());
    }
}

#[test]
fn tensor_module_of_units_is_unit() {
    let b = Bialgebra::cyclic_group(Field::Rational, 3).unwrap();
    let one = b.unit_module();
    let t = b.tensor_module(&one, &one).unwrap();
    assert_eq!(t.dim(), 1);
    assert_eq!(hom_dim(&t, &one).unwrap(), 1);
}
