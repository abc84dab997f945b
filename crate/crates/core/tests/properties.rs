//! Property-based invariants: parser round-trips, homogeneity, dual-norm
//! structure, and the pointwise duality inequality.

use std::collections::HashMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use finsler_rellich::constants::Family;
use finsler_rellich::finsler::{
    biconjugate, build_norm_table, dual_norm, finsler_f, DirectionGrid, NormTable,
};
use finsler_rellich::polynomial::{parse_polynomial, rat, MultiIndex, Polynomial};
use finsler_rellich::SymbolPolynomial;

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(
            (
                prop::collection::vec(0u32..=6, n),
                (-50i64..=50).prop_filter("nonzero", |c| *c != 0),
                1i64..=8,
            ),
            1..5,
        )
        .prop_map(move |terms| {
            let mut p = Polynomial::zero(n);
            for (exps, num, den) in terms {
                p.add_term(MultiIndex::new(exps), rat(num, den));
            }
            p
        })
    })
}

fn fixed_symbol() -> &'static SymbolPolynomial {
    static S: OnceLock<SymbolPolynomial> = OnceLock::new();
    S.get_or_init(|| Family::Example1.symbol(5.0).unwrap())
}

fn fixed_table() -> &'static NormTable {
    static T: OnceLock<NormTable> = OnceLock::new();
    T.get_or_init(|| {
        build_norm_table(fixed_symbol(), &DirectionGrid::new(1024, 1e-6).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printer_parser_round_trip(p in poly_strategy()) {
        let text = p.to_string();
        let back = parse_polynomial(&text, &HashMap::new(), p.dimension()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn symbol_is_positively_homogeneous(
        beta in -0.99f64..10.0,
        theta in 0.0f64..std::f64::consts::TAU,
        t in 0.1f64..3.0,
    ) {
        let symbol = Family::Example1.symbol(beta).unwrap();
        let xi = [theta.cos(), theta.sin()];
        let scaled = [t * xi[0], t * xi[1]];
        let lhs = symbol.evaluate(&scaled).unwrap();
        let rhs = t.powi(4) * symbol.evaluate(&xi).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1e-12));
    }

    #[test]
    fn dual_norm_is_homogeneous_and_even(
        beta in -0.9f64..10.0,
        phi in 0.0f64..std::f64::consts::TAU,
        t in 0.1f64..3.0,
    ) {
        let symbol = Family::Example1.symbol(beta).unwrap();
        let w = [phi.cos(), phi.sin()];
        let base = dual_norm(&symbol, &w, 1e-9).unwrap();
        let hom = dual_norm(&symbol, &[t * w[0], t * w[1]], 1e-9).unwrap();
        prop_assert!((hom - t * base).abs() <= 1e-7 * base.max(1.0) * t);
        let neg = dual_norm(&symbol, &[-w[0], -w[1]], 1e-9).unwrap();
        prop_assert!((neg - base).abs() <= 1e-9 * base.max(1.0));
    }

    #[test]
    fn pointwise_duality_inequality(
        beta in -0.9f64..10.0,
        theta in 0.0f64..std::f64::consts::TAU,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let symbol = Family::Example1.symbol(beta).unwrap();
        let xi = [theta.cos(), theta.sin()];
        let w = [phi.cos(), phi.sin()];
        let h = symbol.evaluate(&xi).unwrap();
        let fstar = dual_norm(&symbol, &w, 1e-9).unwrap();
        let lhs = h * fstar.powi(4);
        let rhs = (xi[0] * w[0] + xi[1] * w[1]).powi(4);
        prop_assert!(lhs >= rhs * (1.0 - 1e-9), "H={h} F*={fstar} lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn biconjugate_below_f_and_homogeneous(
        theta in 0.0f64..std::f64::consts::TAU,
        t in 0.25f64..4.0,
    ) {
        let symbol = fixed_symbol();
        let table = fixed_table();
        let xi = [theta.cos(), theta.sin()];
        let fss = biconjugate(symbol, &xi, table).unwrap();
        let f = finsler_f(symbol, &xi).unwrap();
        prop_assert!(fss <= f * (1.0 + 1e-8), "F**={fss} > F={f}");
        let hom = biconjugate(symbol, &[t * xi[0], t * xi[1]], table).unwrap();
        prop_assert!((hom - t * fss).abs() <= 1e-6 * t * fss.max(1.0));
    }
}
