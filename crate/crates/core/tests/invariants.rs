//! Relations between measures on random small functions.

use bfc_core::measures::{
    approx_degree, block_sensitivity, certificate_complexity, deg, ndeg, rdeg, sensitivity, sign_degree,
    spectral_sensitivity,
};
use bfc_core::poly::q_frac;
use bfc_core::BooleanFunction;
use proptest::prelude::*;

fn function() -> impl Strategy<Value = BooleanFunction> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), any::<u64>()))
        .prop_map(|(n, t)| BooleanFunction::from_fn(n, |x| t >> x & 1 == 1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measure_chain(f in function()) {
        let (s, bs, c) = (sensitivity(&f), block_sensitivity(&f).unwrap(), certificate_complexity(&f).unwrap());
        let (d, nd, r) = (deg(&f).unwrap(), ndeg(&f).value, rdeg(&f).value);
        prop_assert!(s <= bs && bs <= c && c <= f.n());
        prop_assert!(nd <= r && r <= d && r <= c);
        prop_assert_eq!(r, nd.max(ndeg(&f.negate_output()).value));
        prop_assert!(sign_degree(&f).unwrap().value <= approx_degree(&f, &q_frac(1, 3)).unwrap().value);
        let lambda = spectral_sensitivity(&f, 1e-9).unwrap();
        prop_assert!(lambda.lambda <= s as f64 + 1e-6);
    }

    #[test]
    fn invariant_under_relabelling(f in function(), mask in any::<usize>(), rot in 0usize..4) {
        let n = f.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let g = f.negate_inputs_mask(mask & ((1 << n) - 1)).permute_inputs(&perm).unwrap();
        prop_assert_eq!(rdeg(&g).value, rdeg(&f).value);
        prop_assert_eq!(ndeg(&g).value, ndeg(&f).value);
        prop_assert_eq!(deg(&g).unwrap(), deg(&f).unwrap());
        prop_assert_eq!(sensitivity(&g), sensitivity(&f));
        prop_assert_eq!(certificate_complexity(&g).unwrap(), certificate_complexity(&f).unwrap());
    }
}
