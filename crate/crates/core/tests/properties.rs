use conicmin::conic::{format_conic, parse_conic, Conic};
use conicmin::factor::factor_bivariate;
use conicmin::minimise::{rational_minimisation, verify_log};
use conicmin::poly::{gcd, squarefree_decomposition, Monomial, MultiPoly, VarList};
use num_bigint::BigInt;
use proptest::prelude::*;

fn vars() -> VarList {
    VarList::new(&["g", "h"])
}

/// Dense polynomial of total degree ≤ `deg` from a coefficient list.
fn poly_strategy(deg: u32, c: i64) -> impl Strategy<Value = MultiPoly> {
    let n = ((deg + 1) * (deg + 2) / 2) as usize;
    proptest::collection::vec(-c..=c, n).prop_map(move |cs| {
        let mut terms = Vec::new();
        let mut it = cs.into_iter();
        for d in 0..=deg {
            for i in 0..=d {
                let k = it.next().unwrap();
                if k != 0 {
                    terms.push((Monomial::from_exponents(&[i, d - i]), BigInt::from(k)));
                }
            }
        }
        MultiPoly::from_terms(&vars(), terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_roundtrip(f in poly_strategy(4, 50)) {
        prop_assert_eq!(MultiPoly::parse(&f.to_string(), &vars()).unwrap(), f);
    }

    #[test]
    fn gcd_recovers_common_factor(a in poly_strategy(3, 9), b in poly_strategy(3, 9), c in poly_strategy(2, 9)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let fa = &a * &c;
        let fb = &b * &c;
        let g = gcd(&fa, &fb);
        prop_assert!(c.divides(&g));
        prop_assert!(g.divides(&fa) && g.divides(&fb));
        // the cofactors are coprime
        let ca = fa.div_exact(&g).unwrap();
        let cb = fb.div_exact(&g).unwrap();
        prop_assert!(gcd(&ca, &cb).is_constant());
    }

    #[test]
    fn squarefree_decomposition_multiplies_back(a in poly_strategy(2, 7), b in poly_strategy(2, 7)) {
        prop_assume!(!a.is_constant() && !b.is_zero());
        let f = &a.pow(2) * &b;
        let mut acc = MultiPoly::one(&vars());
        for (p, m) in squarefree_decomposition(&f).unwrap() {
            acc = &acc * &p.pow(m);
        }
        prop_assert_eq!(acc.normalized(), f.primitive_part().normalized());
    }

    #[test]
    fn factorisation_expands_back(a in poly_strategy(2, 6), b in poly_strategy(2, 6)) {
        let f = &a * &b;
        prop_assume!(!f.is_zero());
        let fac = factor_bivariate(&f).unwrap();
        prop_assert_eq!(fac.expand(&vars()), f);
    }

    #[test]
    fn rational_pass_logs_replay(k in proptest::collection::vec(-40i64..=40, 6)) {
        let v = vars();
        let cs: [MultiPoly; 6] = std::array::from_fn(|i| MultiPoly::constant(&v, k[i] * if i < 3 { 9 } else { 3 }));
        let Ok(l) = Conic::new(cs) else { return Ok(()) };
        let r = rational_minimisation(&l).unwrap();
        prop_assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic.clone());
        prop_assert_eq!(parse_conic(&format_conic(&r.conic)).unwrap(), r.conic);
    }
}
