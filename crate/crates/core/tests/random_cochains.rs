//! Identities checked on random linear combinations of basis cochains, as a
//! complement to the basis sweeps (which only see one term at a time).

use bvoperad::operad::odd;
use bvoperad::{build_endo_operad, BuildMode, Cochain, CyclicStructure, EndOperad, Operad, Rational, Rationals};
use proptest::prelude::*;

mod common;

const MAX: usize = 5;

fn operad() -> &'static CyclicStructure<EndOperad<Rationals>> {
    static OP: std::sync::OnceLock<CyclicStructure<EndOperad<Rationals>>> = std::sync::OnceLock::new();
    OP.get_or_init(|| {
        let alg = common::algebra(Rationals, &common::truncated_polynomial("Q", 2));
        CyclicStructure::new(build_endo_operad(alg, MAX, BuildMode::Strict).unwrap()).unwrap()
    })
}

/// A cochain of degree `n` with a few random small coefficients.
fn cochain(n: usize) -> impl Strategy<Value = Cochain<Rational>> {
    let dim = 1usize << (n + 1);
    prop::collection::vec((0..dim, -3i64..=3), 1..=4).prop_map(move |terms| {
        let mut c = Cochain::zero(n as isize);
        for (i, a) in terms {
            c.add_scaled(&Rationals, &Rational::from_integer(a), &Cochain::basis(&Rationals, n, i));
        }
        c
    })
}

fn deg(c: &Cochain<Rational>) -> isize {
    c.degree
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_has_order_n_plus_one((f, n) in (0usize..=MAX).prop_flat_map(|n| (cochain(n), Just(n)))) {
        let cyc = operad();
        prop_assert_eq!(cyc.tau_pow(&f, n as i64 + 1).unwrap(), f.clone());
        prop_assert_eq!(cyc.tau_pow(&f, -1).unwrap(), cyc.tau_pow(&f, n as i64).unwrap());
    }

    #[test]
    fn leibniz((f, g) in (0usize..=2, 0usize..=2).prop_flat_map(|(m, n)| (cochain(m), cochain(n)))) {
        let op = operad().operad();
        let lhs = op.differential(&op.cup(&f, &g).unwrap()).unwrap();
        let mut rhs = op.cup(&op.differential(&f).unwrap(), &g).unwrap();
        rhs.add_signed(&Rationals, odd(deg(&f)), &op.cup(&f, &op.differential(&g).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_graded_antisymmetric((f, g) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (cochain(m), cochain(n)))) {
        let op = operad().operad();
        let sign = odd((deg(&f) - 1) * (deg(&g) - 1));
        let lhs = op.bracket(&f, &g).unwrap();
        let rhs = op.bracket(&g, &f).unwrap().signed(&Rationals, !sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_satisfies_jacobi((f, g, h) in (1usize..=2, 1usize..=2, 1usize..=2).prop_flat_map(|(a, b, c)| (cochain(a), cochain(b), cochain(c)))) {
        let op = operad().operad();
        let s = |x: &Cochain<Rational>, y: &Cochain<Rational>| odd((deg(x) - 1) * (deg(y) - 1));
        let term = |x: &Cochain<Rational>, y: &Cochain<Rational>, z: &Cochain<Rational>| op.bracket(x, &op.bracket(y, z).unwrap()).unwrap();
        let mut sum = term(&f, &g, &h).signed(&Rationals, s(&f, &h));
        sum.add_signed(&Rationals, s(&g, &f), &term(&g, &h, &f));
        sum.add_signed(&Rationals, s(&h, &g), &term(&h, &f, &g));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_is_a_derivation_of_d((f, g) in (1usize..=2, 1usize..=2).prop_flat_map(|(m, n)| (cochain(m), cochain(n)))) {
        let op = operad().operad();
        let lhs = op.differential(&op.bracket(&f, &g).unwrap()).unwrap();
        let mut rhs = op.bracket(&op.differential(&f).unwrap(), &g).unwrap();
        rhs.add_signed(&Rationals, odd(deg(&f) - 1), &op.bracket(&f, &op.differential(&g).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn connes_b_squares_to_zero_on_normalized((n, coeffs) in (2usize..=MAX).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, 8)))) {
        let cyc = operad();
        let basis = cyc.normalized_cochains(n).unwrap();
        let mut f = Cochain::zero(n as isize);
        for (b, a) in basis.iter().zip(coeffs) {
            f.add_scaled(&Rationals, &Rational::from_integer(a), b);
        }
        let bf = cyc.connes_b(&f).unwrap();
        prop_assert!(cyc.is_normalized(&bf).unwrap());
        prop_assert!(cyc.connes_b(&bf).unwrap().is_zero());
    }
}
