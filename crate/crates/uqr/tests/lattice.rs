mod common;

use common::centralizer_oracle;
use proptest::prelude::*;
use uqr::lattice::{cent_q, ell_lattice_square, intersect, quotient, Base, IntegerLattice};
use uqr::rootdata::{build, types_up_to, Family, RootSystemData, RootSystemType};

fn data(s: &str) -> RootSystemData {
    build(s.parse::<RootSystemType>().unwrap()).unwrap()
}

#[test]
fn centralizer_agrees_with_coset_oracle_up_to_rank_three() {
    for ty in types_up_to(3) {
        let d = build(ty).unwrap();
        let w = IntegerLattice::weight_lattice(&d);
        let r = IntegerLattice::root_lattice(&d);
        for ell in 3..=8 {
            for (l1, l2) in [(&w, &r), (&w, &w), (&r, &r)] {
                centralizer_oracle(&d, l1, l2, ell).unwrap();
            }
        }
    }
}

#[test]
fn centralizer_of_roots_is_the_square_weight_lattice() {
    for ty in types_up_to(8) {
        let d = build(ty).unwrap();
        let w = IntegerLattice::weight_lattice(&d);
        let r = IntegerLattice::root_lattice(&d);
        for ell in [3, 4, 5, 6, 7, 8, 9, 12] {
            let lhs = cent_q(&d, &w, &r, ell).unwrap();
            assert_eq!(lhs, ell_lattice_square(&d, Base::Weights, ell), "{ty} ell={ell}");
        }
    }
}

#[test]
fn fundamental_group_orders() {
    for (s, n) in [("A1", 2), ("A5", 6), ("B3", 2), ("C4", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)] {
        let d = data(s);
        let q = quotient(&IntegerLattice::weight_lattice(&d), &IntegerLattice::root_lattice(&d)).unwrap();
        assert_eq!(q.order(), n, "{s}");
        assert_eq!(d.cartan_determinant(), n as i64, "{s}");
    }
    let d4 = data("D4");
    assert_eq!(d4.pi1.group.factors(), &[2, 2]);
}

#[test]
fn gram_matrices_are_positive_definite() {
    for ty in types_up_to(8) {
        assert!(build(ty).unwrap().gram_is_positive_definite(), "{ty}");
    }
}

#[test]
fn short_roots_have_square_length_two() {
    for ty in types_up_to(8) {
        let d = build(ty).unwrap();
        let min = (0..d.rank())
            .map(|j| d.killing_int(&d.simple_root(j), &d.simple_root(j)))
            .min()
            .unwrap();
        assert_eq!(min, 2.into(), "{ty}");
    }
}

fn lattice_type() -> impl Strategy<Value = RootSystemType> {
    (0usize..7, 1usize..=6).prop_map(|(f, n)| {
        let fam = Family::ALL[f];
        let rank = match fam {
            Family::E => 6 + n % 3,
            Family::F => 4,
            Family::G => 2,
            Family::D => 4 + n % 3,
            Family::B => 2 + n % 4,
            Family::C => 3 + n % 3,
            Family::A => n,
        };
        RootSystemType::new(fam, rank).unwrap()
    })
}

fn small_vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_order_is_index_ratio(ty in lattice_type(), ell in 3u32..=12) {
        let d = build(ty).unwrap();
        let w = IntegerLattice::weight_lattice(&d);
        let sq = ell_lattice_square(&d, Base::Roots, ell);
        let q = quotient(&w, &sq).unwrap();
        prop_assert_eq!(q.order() as u128, sq.covolume());
    }

    #[test]
    fn projection_lift_roundtrip(ty in lattice_type(), ell in 3u32..=9, seed in small_vector(8)) {
        let d = build(ty).unwrap();
        let w = IntegerLattice::weight_lattice(&d);
        let sq = ell_lattice_square(&d, Base::Roots, ell);
        let q = quotient(&w, &sq).unwrap();
        let v: Vec<i64> = seed[..d.rank()].to_vec();
        let e = q.project(&v).unwrap();
        let back = q.lift(&e);
        let diff: Vec<i64> = v.iter().zip(&back).map(|(a, b)| a - b).collect();
        prop_assert!(sq.contains(&diff));
    }

    #[test]
    fn intersection_is_the_meet(ty in lattice_type(), ell in 3u32..=12, v in small_vector(8)) {
        let d = build(ty).unwrap();
        let a = cent_q(&d, &IntegerLattice::weight_lattice(&d), &IntegerLattice::root_lattice(&d), ell).unwrap();
        let r = IntegerLattice::root_lattice(&d);
        let c = intersect(&a, &r).unwrap();
        prop_assert!(c.is_sublattice_of(&a) && c.is_sublattice_of(&r));
        let v = &v[..d.rank()];
        prop_assert_eq!(c.contains(v), a.contains(v) && r.contains(v));
    }

    #[test]
    fn centralizer_is_antitone(ty in lattice_type(), ell in 3u32..=12) {
        let d = build(ty).unwrap();
        let w = IntegerLattice::weight_lattice(&d);
        let r = IntegerLattice::root_lattice(&d);
        let of_w = cent_q(&d, &w, &w, ell).unwrap();
        let of_r = cent_q(&d, &w, &r, ell).unwrap();
        prop_assert!(of_w.is_sublattice_of(&of_r));
        prop_assert!(w.scale(i64::from(ell) * d.gram_denominator()).is_sublattice_of(&of_w));
    }

    #[test]
    fn hermite_basis_is_canonical(ty in lattice_type(), k in 1i64..=5) {
        let d = build(ty).unwrap();
        let r = IntegerLattice::root_lattice(&d);
        let mut gens = r.basis();
        gens.reverse();
        gens.push(gens[0].iter().map(|x| x * k).collect());
        prop_assert_eq!(IntegerLattice::from_integer_generators(&d, &gens).unwrap(), r);
    }
}
