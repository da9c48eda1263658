//! Property-based invariants across the crate.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperbolic::clifford::{Multivector, Signature};
use hyperbolic::expr::{self, ExprAst, Func};
use hyperbolic::number::{HNumber, IdempotentPair, Quadrant};
use hyperbolic::roots;
use hyperbolic::specfun::{self, SeriesConfig};

fn finite_component() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3..1e3f64,
        -2.0..2.0f64,
        Just(0.0),
        Just(1.0),
        Just(-1.0),
    ]
}

fn hnumber() -> impl Strategy<Value = HNumber> {
    (finite_component(), finite_component()).prop_map(|(re, im)| HNumber::new(re, im))
}

proptest! {
    #[test]
    fn ring_laws(a in hnumber(), b in hnumber(), c in hnumber()) {
        let scale = [a, b, c]
            .iter()
            .map(|z| z.euclid_norm())
            .fold(1.0f64, f64::max)
            .powi(3);
        let assoc = ((a * b) * c - a * (b * c)).euclid_norm();
        prop_assert!(assoc <= 1e-14 * scale);
        let comm = (a * b - b * a).euclid_norm();
        prop_assert!(comm == 0.0);
        let distrib = (a * (b + c) - (a * b + a * c)).euclid_norm();
        prop_assert!(distrib <= 1e-14 * scale);
    }

    #[test]
    fn idempotent_coordinates_multiply_componentwise(a in hnumber(), b in hnumber()) {
        let via_ring = a * b;
        let via_pair = HNumber::from(IdempotentPair::from(a).mul(IdempotentPair::from(b)));
        let scale = 1.0f64.max(a.euclid_norm() * b.euclid_norm());
        prop_assert!((via_ring - via_pair).euclid_norm() <= 1e-13 * scale);
    }

    #[test]
    fn division_matches_the_idempotent_route(a in hnumber(), b in hnumber()) {
        prop_assume!(!b.is_on_diagonals());
        let via_conj = a.div(b).unwrap();
        let (pa, pb) = (IdempotentPair::from(a), IdempotentPair::from(b));
        let via_pair = HNumber::from(IdempotentPair::new(pa.plus / pb.plus, pa.minus / pb.minus));
        let scale = 1.0 + via_pair.euclid_norm();
        prop_assert!((via_conj - via_pair).euclid_norm() <= 1e-11 * scale);
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(a in hnumber(), b in hnumber()) {
        prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
        prop_assert_eq!((a + b).conj(), a.conj() + b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn quadratic_form_is_multiplicative(a in hnumber(), b in hnumber()) {
        let lhs = (a * b).modulus_sq();
        let rhs = a.modulus_sq() * b.modulus_sq();
        let scale = 1.0f64.max(a.euclid_norm().powi(2) * b.euclid_norm().powi(2));
        prop_assert!((lhs - rhs).abs() <= 1e-13 * scale);
    }

    #[test]
    fn first_kind_transform_preserves_sums(a in hnumber(), b in hnumber()) {
        let direct = (a + b).complex_transform().norm();
        prop_assert!((direct - (a + b).euclid_norm()).abs() <= 1e-12 * (1.0 + direct));
    }

    #[test]
    fn exp_matches_the_idempotent_oracle(
        re in -2.0..2.0f64,
        im in -2.0..2.0f64,
    ) {
        let z = HNumber::new(re, im);
        let got = specfun::exp(z, &SeriesConfig::default()).unwrap();
        let pair = IdempotentPair::from(z);
        let want = HNumber::from(IdempotentPair::new(pair.plus.exp(), pair.minus.exp()));
        prop_assert!((got - want).euclid_norm() <= 1e-11 * (1.0 + want.euclid_norm()));
    }

    #[test]
    fn exp_is_a_homomorphism(
        a_re in -1.4..1.4f64, a_im in -1.4..1.4f64,
        b_re in -1.4..1.4f64, b_im in -1.4..1.4f64,
    ) {
        let cfg = SeriesConfig::default();
        let (a, b) = (HNumber::new(a_re, a_im), HNumber::new(b_re, b_im));
        let lhs = specfun::exp(a + b, &cfg).unwrap();
        let rhs = specfun::exp(a, &cfg).unwrap() * specfun::exp(b, &cfg).unwrap();
        prop_assert!((lhs - rhs).euclid_norm() <= 1e-10 * (1.0 + lhs.euclid_norm()));
    }

    #[test]
    fn sqrt_roots_square_back_and_close_under_i(a in hnumber()) {
        let set = roots::sqrt_all(a);
        let tol = 1e-10 * (1.0 + a.euclid_norm());
        for &r in set.roots() {
            prop_assert!((r * r - a).euclid_norm() <= tol);
            prop_assert!(set.contains(HNumber::I * r, tol));
        }
    }

    #[test]
    fn quadratic_solutions_substitute(
        a in hnumber(), b in hnumber(), c in hnumber(),
    ) {
        prop_assume!(!a.is_on_diagonals());
        let set = roots::quadratic_solve(a, b, c).unwrap();
        let scale = [a, b, c].iter().map(|z| z.euclid_norm()).fold(1.0f64, f64::max);
        // Off-diagonal leading coefficients may still be poorly conditioned;
        // weight the residual by the solution magnitude as well.
        for &z in set.roots() {
            let budget = 1e-9 * scale * (1.0 + z.euclid_norm()).powi(2);
            prop_assert!(
                roots::quadratic_residual(a, b, c, z) <= budget,
                "residual {} over budget {budget}",
                roots::quadratic_residual(a, b, c, z)
            );
        }
    }

    #[test]
    fn vectors_square_to_scalars_in_mixed_signature(
        x in -3.0..3.0f64, y in -3.0..3.0f64, z in -3.0..3.0f64,
    ) {
        let sig = Signature::new(2, 1).unwrap();
        let v = Multivector::generator(sig.clone(), 0).scale(x)
            .add(&Multivector::generator(sig.clone(), 1).scale(y)).unwrap()
            .add(&Multivector::generator(sig.clone(), 2).scale(z)).unwrap();
        let sq = v.geometric_product(&v).unwrap();
        prop_assert!(sq.grades().iter().all(|&g| g == 0));
        prop_assert!((sq.coeff(0) - (x * x + y * y - z * z)).abs() <= 1e-12);
    }
}

/// Random expression trees for the printer round-trip invariant.
fn expr_strategy() -> impl Strategy<Value = ExprAst> {
    let leaf = prop_oneof![
        Just(ExprAst::Var),
        (0..100u32).prop_map(|n| ExprAst::Const(HNumber::from_real(n as f64 / 4.0))),
        Just(ExprAst::Const(HNumber::I)),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ExprAst::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ExprAst::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ExprAst::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ExprAst::Div(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| ExprAst::Neg(Box::new(a))),
            (inner.clone(), -4..5i32).prop_map(|(a, e)| ExprAst::Pow(Box::new(a), e)),
            (inner.clone(), prop_oneof![
                Just(Func::Exp), Just(Func::Cosh), Just(Func::Sinh), Just(Func::Conj),
            ])
                .prop_map(|(a, f)| ExprAst::Call(f, Box::new(a), None)),
            (inner, 1..5u8).prop_map(|(a, b)| ExprAst::Call(Func::Sqrt, Box::new(a), Some(b))),
        ]
    })
}

proptest! {
    #[test]
    fn printer_round_trips_random_trees(ast in expr_strategy()) {
        let printed = ast.display("z").to_string();
        let reparsed = expr::parse(&printed, "z")
            .unwrap_or_else(|e| panic!("could not reparse {printed:?}: {e}"));
        prop_assert_eq!(ast, reparsed, "printed form {}", printed);
    }
}

#[test]
fn quadrants_partition_ten_thousand_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_810);
    let mut counts = [0usize; 5];
    for _ in 0..10_000 {
        let z = HNumber::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        // Exactly one predicate holds per point.
        let tags = [
            z.quadrant() == Quadrant::H1,
            z.quadrant() == Quadrant::H2,
            z.quadrant() == Quadrant::H3,
            z.quadrant() == Quadrant::H4,
            z.quadrant() == Quadrant::Diagonal,
        ];
        assert_eq!(tags.iter().filter(|&&t| t).count(), 1);
        let manual = [
            z.re > z.im.abs(),
            z.im > z.re.abs(),
            -z.re > z.im.abs(),
            -z.im > z.re.abs(),
        ];
        let sector_count = manual.iter().filter(|&&t| t).count();
        match z.quadrant() {
            Quadrant::Diagonal => assert_eq!(sector_count, 0),
            q => {
                assert_eq!(sector_count, 1);
                let idx = manual.iter().position(|&t| t).unwrap();
                let want = [Quadrant::H1, Quadrant::H2, Quadrant::H3, Quadrant::H4][idx];
                assert_eq!(q, want);
            }
        }
        counts[tags.iter().position(|&t| t).unwrap()] += 1;
    }
    // Every open sector is hit; random draws essentially never land on the cone.
    assert!(counts[..4].iter().all(|&c| c > 1000), "{counts:?}");
}

#[test]
fn cl10_subalgebra_is_isomorphic_to_the_ring() {
    let mut rng = ChaCha8Rng::seed_from_u64(1_000);
    for _ in 0..200 {
        let z1 = HNumber::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let z2 = HNumber::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let blade = Multivector::from_hyperbolic_cl10(z1)
            .geometric_product(&Multivector::from_hyperbolic_cl10(z2))
            .unwrap();
        let want = Multivector::from_hyperbolic_cl10(z1 * z2);
        assert!(blade.max_abs_diff(&want) <= 1e-14 * (1.0 + (z1 * z2).euclid_norm()));
    }
}

#[test]
fn both_ring_embeddings_multiply_consistently() {
    // scalar+e1 in Cl(1,0) and scalar+bivector in the Minkowski plane
    // algebra realize the same products.
    let mut rng = ChaCha8Rng::seed_from_u64(2_000);
    for _ in 0..100 {
        let z1 = HNumber::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let z2 = HNumber::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let product = z1 * z2;
        let via_g2 = Multivector::from_hyperbolic_g2(z1)
            .geometric_product(&Multivector::from_hyperbolic_g2(z2))
            .unwrap()
            .to_hyperbolic_g2()
            .unwrap();
        assert!((via_g2 - product).euclid_norm() <= 1e-13 * (1.0 + product.euclid_norm()));
        let via_cl10 = Multivector::from_hyperbolic_cl10(z1)
            .geometric_product(&Multivector::from_hyperbolic_cl10(z2))
            .unwrap();
        assert!(
            (via_cl10.coeff(0) - via_g2.re).abs() + (via_cl10.coeff(1) - via_g2.im).abs()
                <= 1e-13 * (1.0 + product.euclid_norm())
        );
    }
}

#[test]
fn exp_representation_reconstructs_off_diagonal_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = SeriesConfig::default();
    let mut tested = 0;
    while tested < 200 {
        let z = HNumber::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        if z.is_on_diagonals() {
            continue;
        }
        tested += 1;
        let form = z.exp_representation().unwrap();
        let rebuilt =
            form.prefactor.value() * specfun::exp(HNumber::new(0.0, form.theta), &cfg).unwrap()
                .scale(form.r);
        assert!(
            (rebuilt - z).euclid_norm() <= 1e-12 * z.euclid_norm(),
            "reconstruction of {z} gave {rebuilt}"
        );
    }
}
