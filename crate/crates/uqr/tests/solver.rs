use uqr::diamond::{build_diamond, kernels_agree, Kernel};
use uqr::equations::{enumerate_pairings, pairing_solution, PAIRING_BOUND};
use uqr::error::Error;
use uqr::rootdata::{build, substitute_excluded, RootSystemData, RootSystemType};
use uqr::rsolver::{
    check_f_equations, check_f_equations_with, f_from_g, f_from_pairing, f_from_solution, g_from_f,
    solve, solve_with, Method, F_INDEX_BOUND,
};
use uqr::sweep::{default_types, evaluate, sweep, SweepOptions, DEFAULT_ELLS};

fn data(s: &str) -> RootSystemData {
    build(s.parse::<RootSystemType>().unwrap()).unwrap()
}

fn square(d: &RootSystemData, ell: u32) -> usize {
    solve(d, ell, &Kernel::Square.lattice(d, ell)).unwrap().len()
}

#[test]
fn worked_counts() {
    assert_eq!(square(&data("A1"), 5), 2);
    assert_eq!(square(&data("A1"), 4), 2);
    assert_eq!(square(&data("D6"), 8), 16);
    assert_eq!(square(&data("E6"), 9), 3);
    for ell in DEFAULT_ELLS {
        assert_eq!(square(&data("E8"), ell), 1, "ell={ell}");
    }
    let d5 = data("D5");
    let sols = solve(&d5, 6, &Kernel::Square.lattice(&d5, 6)).unwrap();
    assert_eq!(sols.len(), 4);
    assert!(sols.iter().all(|s| s.pairing.d() == 4 && s.starred));
}

#[test]
fn a1_solutions_by_parity() {
    let a1 = data("A1");
    for ell in 3..=12 {
        let sols = solve(&a1, ell, &Kernel::Square.lattice(&a1, ell)).unwrap();
        let mut dks: Vec<_> = sols.iter().map(|s| s.dk.unwrap()).collect();
        dks.sort();
        if ell % 2 == 1 {
            assert_eq!(dks, vec![(1, 1), (2, 2)], "ell={ell}");
        } else {
            assert_eq!(dks, vec![(2, 1), (2, 2)], "ell={ell}");
            assert!(sols.iter().all(|s| s.starred));
        }
    }
}

#[test]
fn lusztig_kernel_gives_nothing_unless_kernels_agree() {
    for ty in default_types(8) {
        let d = build(ty).unwrap();
        for ell in DEFAULT_ELLS {
            if substitute_excluded(ty, ell).is_some() {
                continue;
            }
            let lusztig = Kernel::Lusztig.lattice(&d, ell);
            let sols = solve_with(&d, ell, &lusztig, Method::Gcd).unwrap();
            if kernels_agree(&d, ell) {
                assert_eq!(sols.len(), square(&d, ell), "{ty} ell={ell}");
            } else {
                assert!(sols.is_empty(), "{ty} ell={ell}");
            }
        }
    }
}

#[test]
fn odd_ell_never_stars() {
    for ty in default_types(8) {
        let d = build(ty).unwrap();
        for ell in [3, 5, 7, 9] {
            assert!(!kernels_agree(&d, ell), "{ty} ell={ell}");
        }
    }
}

#[test]
fn gcd_shortcut_agrees_with_brute_force_on_the_grid() {
    for ty in default_types(8) {
        let d = build(ty).unwrap();
        for ell in DEFAULT_ELLS {
            if substitute_excluded(ty, ell).is_some() {
                continue;
            }
            let lp = Kernel::Square.lattice(&d, ell);
            let fast: Vec<_> = solve_with(&d, ell, &lp, Method::Gcd).unwrap();
            let slow: Vec<_> = solve_with(&d, ell, &lp, Method::Brute).unwrap();
            let key = |v: &[uqr::rsolver::R0Solution]| v.iter().map(|s| s.pairing.clone()).collect::<Vec<_>>();
            assert_eq!(key(&fast), key(&slow), "{ty} ell={ell}");
        }
    }
}

#[test]
fn excluded_cells_are_errors() {
    for (s, ell) in [("G2", 3), ("G2", 6), ("G2", 4), ("B3", 4), ("C3", 4), ("F4", 4)] {
        let d = data(s);
        let r = solve(&d, ell, &Kernel::Square.lattice(&d, ell));
        assert!(matches!(r, Err(Error::Excluded { .. })), "{s} ell={ell}");
    }
}

#[test]
fn kernel_outside_the_admissible_range_is_rejected() {
    let a2 = data("A2");
    let too_small = Kernel::Lusztig.lattice(&a2, 5).scale(2);
    assert!(solve(&a2, 5, &too_small).is_err());
    assert!(build_diamond(&a2, 2, &Kernel::Square.lattice(&a2, 4)).is_err());
}

/// Cells small enough for the exhaustive f-check.
fn small_cells() -> Vec<(RootSystemData, u32)> {
    let mut out = Vec::new();
    for s in ["A1", "A2", "A3", "B2", "C3", "G2", "D4"] {
        let d = data(s);
        for ell in 3..=8 {
            if substitute_excluded(d.ty, ell).is_some() {
                continue;
            }
            if Kernel::Square.lattice(&d, ell).covolume() <= 64 {
                out.push((d.clone(), ell));
            }
        }
    }
    out
}

#[test]
fn reduced_f_check_agrees_with_exhaustive() {
    let cells = small_cells();
    assert!(cells.len() >= 10);
    for (d, ell) in cells {
        let lp = Kernel::Square.lattice(&d, ell);
        for p in enumerate_pairings(&d.pi1.group, PAIRING_BOUND).unwrap() {
            let f = f_from_pairing(&d, ell, &lp, &p, F_INDEX_BOUND).unwrap();
            assert_eq!(
                check_f_equations_with(&f, F_INDEX_BOUND, true).unwrap(),
                check_f_equations(&f).unwrap(),
                "{} ell={ell}",
                d.ty
            );
        }
    }
}

#[test]
fn f_equations_separate_solutions_from_candidates() {
    for (d, ell) in small_cells() {
        let lp = Kernel::Square.lattice(&d, ell);
        let sols = solve(&d, ell, &lp).unwrap();
        for p in enumerate_pairings(&d.pi1.group, PAIRING_BOUND).unwrap() {
            let f = f_from_pairing(&d, ell, &lp, &p, F_INDEX_BOUND).unwrap();
            let accepted = sols.iter().any(|s| s.pairing == p);
            assert_eq!(check_f_equations(&f).unwrap(), accepted, "{} ell={ell}", d.ty);
        }
    }
}

#[test]
fn transform_to_fundamental_group_roundtrips() {
    for (d, ell) in small_cells() {
        let lp = Kernel::Square.lattice(&d, ell);
        let grp = &d.pi1.group;
        for sol in solve(&d, ell, &lp).unwrap() {
            let f = f_from_solution(&sol, &lp).unwrap();
            let g = g_from_f(&f, &lp).unwrap();
            assert_eq!(g, pairing_solution(grp, &sol.pairing), "{} ell={ell}", d.ty);
            let back = f_from_g(&g, &d, ell, &lp).unwrap();
            for x in 0..f.order() {
                for y in 0..f.order() {
                    assert_eq!(back.value(x, y), f.value(x, y));
                }
            }
        }
    }
}

#[test]
fn f_is_normalized() {
    let a1 = data("A1");
    let lp = Kernel::Square.lattice(&a1, 5);
    let sols = solve(&a1, 5, &lp).unwrap();
    let f = f_from_solution(&sols[0], &lp).unwrap();
    assert_eq!(f.order(), 10);
    // f(0, ·) sums to 1 in every solution.
    for s in &sols {
        let f = f_from_solution(s, &lp).unwrap();
        let total = (0..f.order()).fold(uqr::cyclo::CycNum::zero(), |acc, y| &acc + &f.value(0, y));
        assert!(total.is_one());
    }
}

#[test]
fn large_quotients_are_a_resource_error() {
    let e8 = data("E8");
    let lp = Kernel::Square.lattice(&e8, 5);
    let sol = &solve(&e8, 5, &lp).unwrap()[0];
    assert!(matches!(f_from_solution(sol, &lp), Err(Error::Resource { .. })));
}

#[test]
fn sweep_preserves_grid_order_and_results() {
    let types = default_types(4);
    let ells = [3, 4, 6];
    let opts = SweepOptions::default();
    let par = sweep(&types, &ells, opts);
    let seq: Vec<_> = types
        .iter()
        .flat_map(|&t| ells.iter().map(move |&l| evaluate(t, l, opts)))
        .collect();
    assert_eq!(par.len(), seq.len());
    for (a, b) in par.iter().zip(&seq) {
        assert_eq!((a.ty, a.ell, a.starred, a.status()), (b.ty, b.ell, b.starred, b.status()));
        let pa: Vec<_> = a.solutions().iter().map(|s| &s.pairing).collect();
        let pb: Vec<_> = b.solutions().iter().map(|s| &s.pairing).collect();
        assert_eq!(pa, pb);
    }
}
