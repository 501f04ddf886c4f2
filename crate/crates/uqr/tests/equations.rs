mod common;

use common::{cyclic_diamonds, divisors};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use uqr::cyclo::{int_sum_vanishes, q_pow, qint, root_of_unity_order, CycNum};
use uqr::equations::{
    check_diamond_equations, check_group_equations, enumerate_pairings, gcd_criterion,
    pairing_solution, scaling_equations_only, Diamond, Pairing, PAIRING_BOUND,
};
use uqr::group::FiniteAbelianGroup;
use uqr::rootdata::Q;

#[test]
fn cyclic_pairing_counts_are_divisor_sums() {
    for n in 1..=12 {
        let g = FiniteAbelianGroup::cyclic(n);
        let ps = enumerate_pairings(&g, PAIRING_BOUND).unwrap();
        assert_eq!(ps.len() as i64, divisors(n).sum::<i64>(), "N={n}");
        let mut dks: Vec<_> = ps.iter().map(|p| p.dk(&g).unwrap()).collect();
        dks.sort();
        dks.dedup();
        assert_eq!(dks.len(), ps.len(), "N={n}");
        assert!(ps.iter().all(|p| check_group_equations(&pairing_solution(&g, p))));
    }
}

#[test]
fn klein_four_has_35_pairings() {
    let g = FiniteAbelianGroup::new(vec![2, 2]);
    let ps = enumerate_pairings(&g, PAIRING_BOUND).unwrap();
    assert_eq!(ps.len(), 35);
    let by_order = |d| ps.iter().filter(|p| p.d() == d).count();
    assert_eq!((by_order(1), by_order(2), by_order(4)), (1, 18, 16));
    let sols: Vec<_> = ps.iter().map(|p| pairing_solution(&g, p)).collect();
    assert!(sols.iter().all(check_group_equations));
    for (i, a) in sols.iter().enumerate() {
        assert!(sols[i + 1..].iter().all(|b| a != b));
    }
}

#[test]
fn mismatched_subgroup_orders_fail_group_equations() {
    let g = FiniteAbelianGroup::cyclic(4);
    let lopsided = Pairing {
        h1: g.span(&[]),
        h2: g.span(&[vec![2]]),
        omega: vec![],
    };
    assert!(!check_group_equations(&pairing_solution(&g, &lopsided)));
}

#[test]
fn gcd_criterion_matches_brute_force() {
    let mut cells = 0;
    let mut disagreements = Vec::new();
    for (n, m, l, dia) in cyclic_diamonds() {
        for d in divisors(n) {
            for k in 1..=d {
                let s = pairing_solution(&dia.g, &Pairing::cyclic(n, d, k).unwrap());
                let brute = check_diamond_equations(&s, &dia).unwrap();
                if brute != gcd_criterion(n, d, k, l, m).unwrap() {
                    disagreements.push((n, m, l, d, k));
                }
                cells += 1;
            }
        }
    }
    assert!(cells > 1000);
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn scaling_equations_suffice_for_pairing_solutions() {
    for (n, _, _, dia) in cyclic_diamonds() {
        for p in enumerate_pairings(&dia.g, PAIRING_BOUND).unwrap() {
            let s = pairing_solution(&dia.g, &p);
            assert_eq!(
                scaling_equations_only(&s, &dia).unwrap(),
                check_diamond_equations(&s, &dia).unwrap(),
                "N={n}"
            );
        }
    }
}

#[test]
fn trivial_diamond_imposes_nothing() {
    let g = FiniteAbelianGroup::new(vec![2, 2]);
    let dia = Diamond::trivial(g.clone());
    for p in enumerate_pairings(&g, PAIRING_BOUND).unwrap() {
        assert!(check_diamond_equations(&pairing_solution(&g, &p), &dia).unwrap());
    }
}

#[test]
fn quantum_integers_vanish_exactly_at_half_periods() {
    for ell in 3..=12u32 {
        // [n]_q = 0 exactly when q^{2n} = 1.
        for n in 1..=ell {
            assert_eq!(qint(ell, n, Q::from(1)).is_zero(), (2 * n) % ell == 0, "ell={ell} n={n}");
        }
        assert_eq!(root_of_unity_order(&q_pow(ell, Q::from(1))), Some(ell));
    }
}

#[test]
fn roots_of_unity_sum_to_zero() {
    for m in 2..=30u32 {
        let total = (0..m).fold(CycNum::zero(), |acc, k| &acc + &CycNum::zeta(m, k.into()));
        assert!(total.is_zero(), "m={m}");
        assert!(int_sum_vanishes(m, &vec![1; m as usize]));
        assert!(!int_sum_vanishes(m, &[1]));
    }
}

fn element() -> impl Strategy<Value = CycNum> {
    (
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 20, 24]),
        prop::collection::vec((-4i64..=4, 1i64..=3), 1..6),
    )
        .prop_map(|(m, terms)| {
            let mut h = vec![BigRational::from_integer(BigInt::from(0)); m as usize];
            for (i, (a, b)) in terms.into_iter().enumerate() {
                h[(i * 7) % m as usize] += BigRational::new(a.into(), b.into());
            }
            CycNum::from_exponent_sum(m, &h)
        })
}

proptest! {
    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in element(), b in element()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn embedding_preserves_values(a in element(), k in 1u32..=4) {
        let up = a.embed(a.order() * k);
        prop_assert_eq!(&up, &a);
        let (x, y) = a.to_complex();
        let (u, v) = up.to_complex();
        prop_assert!((x - u).abs() < 1e-9 && (y - v).abs() < 1e-9);
    }

    #[test]
    fn complex_embedding_is_multiplicative(a in element(), b in element()) {
        let (x1, y1) = a.to_complex();
        let (x2, y2) = b.to_complex();
        let (x, y) = (&a * &b).to_complex();
        prop_assert!((x - (x1 * x2 - y1 * y2)).abs() < 1e-6);
        prop_assert!((y - (x1 * y2 + y1 * x2)).abs() < 1e-6);
    }

    #[test]
    fn zeta_powers(m in 1u32..=36, j in -50i64..=50, k in -50i64..=50) {
        let z = |e| CycNum::zeta(m, e);
        prop_assert_eq!(&z(j) * &z(k), z(j + k));
        prop_assert!(z(i64::from(m)).is_one());
        prop_assert_eq!(z(j).pow(k).unwrap(), z(j * k));
    }

    #[test]
    fn vanishing_test_agrees_with_field(m in 1u32..=24, coeffs in prop::collection::vec(-2i128..=2, 24)) {
        let c = &coeffs[..m as usize];
        let h: Vec<BigRational> = c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        prop_assert_eq!(int_sum_vanishes(m, c), CycNum::from_exponent_sum(m, &h).is_zero());
    }
}
