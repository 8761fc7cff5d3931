//! Group Hopf algebras `𝔽ₚ[ℤ/n]` with every character: the pair is always
//! in involution, the Cobar pipeline agrees with the classical Cobar complex,
//! and Cotor is trivial above degree 0 when p does not divide n.

mod common;

use bvoperad::cobar::{check_modular_pair, cobar_oracle_dims, validate_hopf, verify_cobar};
use bvoperad::cohomology::NormalizedComplex;
use bvoperad::{build_cobar_operad, CyclicStructure, PrimeField};
use common::{failures, group_hopf, hopf};
use proptest::prelude::*;

/// All `a` with `aⁿ = 1` in `𝔽ₚ`.
fn roots_of_unity(p: u64, n: usize) -> Vec<u64> {
    (1..p).filter(|&a| (0..n).fold(1u64, |acc, _| acc * a % p) == 1).collect()
}

fn cases() -> impl Strategy<Value = (u64, usize, u64)> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 13]), 2usize..=4).prop_flat_map(|(p, n)| {
        let roots = roots_of_unity(p, n);
        prop::sample::select(roots).prop_map(move |a| (p, n, a))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twisted_group_algebras((p, n, a) in cases()) {
        let chi: Vec<String> = (0..n as u32).map(|k| (a.pow(k) % p).to_string()).collect();
        let h = hopf(PrimeField::new(p).unwrap(), &group_hopf(&format!("F{p}"), n, &chi));
        prop_assert!(failures(&validate_hopf(&h)).is_empty());
        prop_assert!(failures(&check_modular_pair(&h)).is_empty());
        let top = 4;
        let oracle = cobar_oracle_dims(&h, top);
        let op = build_cobar_operad(h, top + 1, false).unwrap();
        prop_assert!(failures(&verify_cobar(&op, top + 1)).is_empty());
        let cyc = CyclicStructure::new(op).unwrap();
        let mut checks = cyc.verify_cyclic_axioms(top + 1);
        checks.extend(cyc.verify_mixed_complex(top - 1));
        prop_assert_eq!(failures(&checks), Vec::<String>::new());
        let c = NormalizedComplex::cyclic(&cyc).unwrap();
        let dims = c.h_dims();
        prop_assert_eq!(&dims, &oracle);
        if n as u64 % p != 0 {
            let mut expected = vec![0; top + 1];
            expected[0] = 1;
            prop_assert_eq!(dims, expected);
        }
    }
}
