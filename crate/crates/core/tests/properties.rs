use instanton_core::cubocubic::{triple_point_tensor, trisecant_test, CuboCubicTensor, MapValue};
use instanton_core::field::{Field, Matrix, PrimeField, SAMPLING_PRIME};
use instanton_core::json::{view_from_json, view_to_json, View};
use instanton_core::nets::{
    composition_scalars, deform_family, is_in_f, monad_fiber, net_involution, stabilizer_dimension,
    symmetry_defect_psi, symmetry_defect_psi_prime, DeformBlocks, Membership, NetTriple,
    PolarValue,
};
use instanton_core::poly::{BinaryForm, GradedIdeal, HomogPoly, LinearFormMatrix};
use instanton_core::proj;
use instanton_core::rng::{rng_for, Rng};
use instanton_core::schwarz::{
    random_ternary_cubic, triplet_ideal_of_cubic, triplet_lies_on_cubic, triplet_of_split_cubic,
};
use instanton_core::zeroscheme::{analyze, ZeroScheme};
use proptest::prelude::*;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn rng(seed: u64, label: &str) -> Rng {
    rng_for(seed, label, 0)
}

fn random_net(f: PrimeField, r: &mut Rng) -> Vec<Matrix<PrimeField>> {
    loop {
        let q: Vec<_> = (0..3).map(|_| Matrix::random_symmetric(f, 4, r)).collect();
        if instanton_core::cubocubic::check_net(&q).is_ok() {
            return q;
        }
    }
}

fn random_invertible(f: PrimeField, n: usize, r: &mut Rng) -> Matrix<PrimeField> {
    loop {
        let g = Matrix::random(f, n, n, r);
        if g.rank() == n {
            return g;
        }
    }
}

fn all_zero(ms: &[Matrix<PrimeField>]) -> bool {
    ms.iter().all(|m| m.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_nullity_and_transpose(
        rows in 1usize..6,
        cols in 1usize..6,
        data in proptest::collection::vec(0u64..3, 36),
    ) {
        // small entries mod 7 make rank drops common
        let f = fp(7);
        let m = Matrix::new(f, rows, cols, data[..rows * cols].to_vec()).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        for v in m.kernel_basis() {
            prop_assert!(proj::is_zero(f, &m.mul_vec(&v).unwrap()));
        }
        if rows == cols {
            prop_assert_eq!(!f.is_zero(&m.det().unwrap()), m.rank() == rows);
        }
    }

    #[test]
    fn graded_dim_is_monotone(seed in any::<u64>()) {
        let f = fp(101);
        let mut r = rng(seed, "monotone");
        let gens: Vec<_> = (0..3)
            .map(|_| HomogPoly::from_coeffs(f, 4, 2, &f.random_vec(&mut r, 10)).unwrap())
            .collect();
        let small = GradedIdeal::new(f, 4, gens[..2].to_vec()).unwrap();
        let big = small.with_generator(gens[2].clone()).unwrap();
        for d in 2..5 {
            prop_assert!(small.graded_dim(d) <= big.graded_dim(d));
        }
    }

    #[test]
    fn hilbert_fit_is_coordinate_free(seed in any::<u64>()) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "coordinates");
        let t = CuboCubicTensor::random(f, &mut r);
        let ideal = t.curve_ideal_y().unwrap();
        let g = random_invertible(f, 4, &mut r);
        let moved = ideal.linear_change(&g).unwrap();
        prop_assert_eq!(ideal.hilbert_poly_fit(3, 6).unwrap(), moved.hilbert_poly_fit(3, 6).unwrap());
    }

    #[test]
    fn minors_vanish_iff_rank_drops(seed in any::<u64>()) {
        let f = fp(101);
        let mut r = rng(seed, "minors");
        let t = CuboCubicTensor::random(f, &mut r);
        let m: LinearFormMatrix<PrimeField> = t.source_matrix();
        let curve_point = t.sample_curve_point(&mut r).unwrap().unwrap();
        for y in [curve_point, proj::random_point(f, &mut r, 4)] {
            let vanish = proj::is_zero(f, &m.maximal_minors_at(&y).unwrap());
            prop_assert_eq!(vanish, m.evaluate(&y).unwrap().rank() < m.cols());
        }
    }

    #[test]
    fn symmetric_maps_are_involutions(seed in any::<u64>()) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "symmetric");
        let t = CuboCubicTensor::from_net(&random_net(f, &mut r)).unwrap();
        prop_assert!(t.is_symmetric());
        let (frac, compared) = t.check_birational_inverse(20, &mut r).unwrap();
        prop_assert!(compared > 0);
        prop_assert_eq!(frac, 1.0);
        for _ in 0..10 {
            let y = proj::random_point(f, &mut r, 4);
            if let MapValue::Point(z) = t.forward_map(&y).unwrap() {
                if let MapValue::Point(back) = t.forward_map(&z).unwrap() {
                    prop_assert!(proj::proj_eq(f, &back, &y));
                }
            }
        }
        // both curves of a symmetric tensor coincide
        let y = t.curve_ideal_y().unwrap();
        let yp = t.curve_ideal_y_prime().unwrap();
        prop_assert_eq!(y.graded_basis(3), yp.graded_basis(3));
    }

    #[test]
    fn triple_point_is_scale_invariant(seed in any::<u64>(), k in 1u64..101, l in 1u64..101) {
        let f = fp(101);
        let mut r = rng(seed, "triple");
        let a3: Vec<Vec<Vec<u64>>> = (0..3).map(|_| (0..3).map(|_| f.random_vec(&mut r, 3)).collect()).collect();
        let c: Vec<Vec<u64>> = (0..3).map(|_| f.random_vec(&mut r, 3)).collect();
        let d = f.random_vec(&mut r, 3);
        let t = triple_point_tensor(f, &a3, &c, &d, false).unwrap();
        let e3 = vec![0, 0, 0, 1];
        prop_assert!(t.has_triple_point_at(&e3).unwrap());
        prop_assert!(t.scale(&l).unwrap().has_triple_point_at(&[0, 0, 0, k]).unwrap());
        let p = proj::random_point(f, &mut r, 4);
        let scaled: Vec<u64> = p.iter().map(|x| f.mul(x, &k)).collect();
        prop_assert_eq!(t.has_triple_point_at(&p).unwrap(), t.scale(&l).unwrap().has_triple_point_at(&scaled).unwrap());
    }

    #[test]
    fn lines_through_the_triple_point_are_trisecants(seed in any::<u64>()) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "trisecant");
        let a3: Vec<Vec<Vec<u64>>> = (0..3).map(|_| (0..3).map(|_| f.random_vec(&mut r, 3)).collect()).collect();
        let c: Vec<Vec<u64>> = (0..3).map(|_| f.random_vec(&mut r, 3)).collect();
        let d = f.random_vec(&mut r, 3);
        let t = triple_point_tensor(f, &a3, &c, &d, false).unwrap();
        let ideal = t.curve_ideal_y();
        prop_assume!(ideal.is_ok());
        let ideal = ideal.unwrap();
        let e3 = vec![0, 0, 0, 1];
        let y = t.sample_curve_point(&mut r).unwrap().unwrap();
        prop_assume!(!proj::proj_eq(f, &y, &e3));
        prop_assert!(ideal.vanishes_at(&y).unwrap());
        prop_assert!(trisecant_test(&ideal, &e3, &y).unwrap().is_trisecant());
    }

    #[test]
    fn nets_give_valid_identity_triples(seed in any::<u64>()) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "from-net");
        let t = NetTriple::from_net(&random_net(f, &mut r)).unwrap();
        prop_assert!(all_zero(&symmetry_defect_psi(&t.phi, &t.psi).unwrap()));
        prop_assert!(all_zero(&symmetry_defect_psi_prime(&t.phi, &t.psi_prime).unwrap()));
        prop_assert_eq!(composition_scalars(&t.psi, &t.psi_prime).unwrap(), Some((1, 1)));
        prop_assert_eq!(is_in_f(&t).unwrap(), Membership::Valid { i: 4, j: 4 });
    }

    #[test]
    fn deformation_family(seed in any::<u64>(), i in 1usize..4) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "deform");
        let b = DeformBlocks::random(f, i, &mut r).unwrap();
        for a in 0..4u64 {
            let t = deform_family(f, &b, &a).unwrap();
            prop_assert!(all_zero(&symmetry_defect_psi(&t.phi, &t.psi).unwrap()));
            prop_assert!(all_zero(&symmetry_defect_psi_prime(&t.phi, &t.psi_prime).unwrap()));
            let want = if a == 0 { (i, 4 - i) } else { (4, 4) };
            prop_assert_eq!(is_in_f(&t).unwrap().stratum(), Some(want));
        }
        // stratum 1 as well as 4
        let t = deform_family(f, &DeformBlocks::random(f, 1, &mut r).unwrap(), &0).unwrap();
        prop_assert_eq!(stabilizer_dimension(&t).unwrap(), 1);
    }

    #[test]
    fn monad_complex_iff_symmetric(seed in any::<u64>(), perturb in any::<bool>()) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "monad");
        let t = deform_family(f, &DeformBlocks::random(f, 2, &mut r).unwrap(), &1).unwrap();
        let psi = if perturb { t.psi.add(&Matrix::random(f, 4, 4, &mut r)).unwrap() } else { t.psi.clone() };
        let symmetric = all_zero(&symmetry_defect_psi(&t.phi, &psi).unwrap());
        let all_ok = (0..100).all(|_| {
            let xi = proj::random_point(f, &mut r, 4);
            monad_fiber(&t.phi, &psi, &xi).unwrap().complex_ok
        });
        prop_assert_eq!(all_ok, symmetric);
    }

    #[test]
    fn polarity_is_an_involution(seed in any::<u64>()) {
        let f = fp(SAMPLING_PRIME);
        let mut r = rng(seed, "polarity");
        let q = random_net(f, &mut r);
        let t = CuboCubicTensor::from_net(&q).unwrap();
        for _ in 0..10 {
            let p = proj::random_point(f, &mut r, 4);
            let PolarValue::Point(p1) = net_involution(&q, &p).unwrap() else { continue };
            if let PolarValue::Point(p2) = net_involution(&q, &p1).unwrap() {
                prop_assert!(proj::proj_eq(f, &p2, &p));
            }
            if let MapValue::Point(z) = t.forward_map(&p).unwrap() {
                prop_assert!(proj::proj_eq(f, &z, &p1));
            }
        }
    }

    #[test]
    fn slicings_round_trip(seed in any::<u64>()) {
        let f = fp(101);
        let t = CuboCubicTensor::random(f, &mut rng(seed, "slicing"));
        for view in [View::Tensor, View::SourceMatrix, View::TargetMatrix, View::RSlice] {
            let back = view_from_json(f, &view_to_json(&t, view)).unwrap();
            prop_assert_eq!(&back, &t);
        }
    }

    #[test]
    fn triplet_test_matches_evaluation(seed in any::<u64>(), through in any::<bool>()) {
        let f = fp(101);
        let mut r = rng(seed, "split");
        let ls = [(); 3].map(|_| BinaryForm::new(f, proj::random_point(f, &mut r, 2)).unwrap());
        let cubic = ls[0].mul(&ls[1]).mul(&ls[2]);
        let triplet = triplet_of_split_cubic(&ls);
        let x = if through {
            // a cubic through the three points
            loop {
                let basis = instanton_core::poly::MonomialBasis::new(3, 3);
                let rows: Vec<Vec<u64>> = triplet
                    .iter()
                    .map(|q| basis.monomials.iter().map(|e| HomogPoly::monomial(f, e.clone(), 1).evaluate(q).unwrap()).collect())
                    .collect();
                let ker = Matrix::from_rows(f, 10, rows).unwrap().kernel_basis();
                let mut c = vec![0; 10];
                for k in &ker {
                    let s = f.random(&mut r);
                    for (a, b) in c.iter_mut().zip(k) {
                        *a = f.mul_add(a, &s, b);
                    }
                }
                if let Ok(y) = HomogPoly::from_coeffs(f, 3, 3, &c) {
                    if !y.is_zero() { break y; }
                }
            }
        } else {
            random_ternary_cubic(f, &mut r)
        };
        let pointwise = triplet.iter().all(|q| x.evaluate(q).unwrap() == 0);
        prop_assert_eq!(triplet_lies_on_cubic(&cubic, &x).unwrap(), pointwise);
        // every quadric of the triplet divides the cubic and lies in its ideal
        let ideal = triplet_ideal_of_cubic(&cubic).unwrap();
        for q in &triplet {
            prop_assert!(BinaryForm::new(f, q.clone()).unwrap().divides(&cubic));
            prop_assert!(ideal.vanishes_at(q).unwrap());
        }
    }

    #[test]
    fn triplet_scheme_has_length_three(seed in any::<u64>()) {
        let f = fp(101);
        let mut r = rng(seed, "length");
        let cubic = loop {
            let c = BinaryForm::new(f, f.random_vec(&mut r, 4)).unwrap();
            if !c.is_zero() { break c; }
        };
        let ideal = triplet_ideal_of_cubic(&cubic).unwrap();
        let z = analyze(&ideal, 6, &mut r).unwrap();
        let ZeroScheme::Finite { length, distinct, .. } = z else {
            return Err(TestCaseError::fail("triplet scheme is not finite"));
        };
        prop_assert_eq!(length, 3);
        let disc_zero = f.is_zero(&discriminant(&cubic));
        prop_assert_eq!(distinct == 3, !disc_zero);
    }

    #[test]
    fn sl2_equivariance(seed in any::<u64>()) {
        let f = fp(101);
        let mut r = rng(seed, "sl2");
        let ls = [(); 3].map(|_| BinaryForm::new(f, proj::random_point(f, &mut r, 2)).unwrap());
        let cubic = ls[0].mul(&ls[1]).mul(&ls[2]);
        let g = random_invertible(f, 2, &mut r);
        let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
        let moved = triplet_ideal_of_cubic(&cubic.substitute(a, b, c, d)).unwrap();
        for q in triplet_of_split_cubic(&ls) {
            let q2 = BinaryForm::new(f, q).unwrap().substitute(a, b, c, d);
            prop_assert!(moved.vanishes_at(q2.coeffs()).unwrap());
        }
    }
}

/// Discriminant of a binary cubic `a x^3 + b x^2 t + c x t^2 + d t^3`.
fn discriminant(cubic: &BinaryForm<PrimeField>) -> u64 {
    let f = cubic.field();
    let k = |x: i64| f.from_i64(x);
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| cubic.coeffs()[i]);
    let m = |xs: &[u64]| xs.iter().fold(1, |acc, x| f.mul(&acc, x));
    let terms = [
        f.mul(&k(18), &m(&[a, b, c, d])),
        f.mul(&k(-4), &m(&[b, b, b, d])),
        m(&[b, b, c, c]),
        f.mul(&k(-4), &m(&[a, c, c, c])),
        f.mul(&k(-27), &m(&[a, a, d, d])),
    ];
    terms.iter().fold(0, |acc, t| f.add(&acc, t))
}
