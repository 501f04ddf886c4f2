//! One line per acceptance criterion, with details for anything short of PASS.
//!
//! Runs without the libtest harness so the report is always printed. The process fails only
//! when the set of failing criteria differs from `KNOWN_FAILURES`; those failures are analysed
//! in the README under "Known discrepancies".

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{centralizer_oracle, cyclic_diamonds, divisors};
use uqr::diamond::{build_diamond, kernels_agree, Kernel};
use uqr::equations::{
    check_diamond_equations, check_group_equations, enumerate_pairings, gcd_criterion,
    pairing_solution, Pairing, PAIRING_BOUND,
};
use uqr::expected::{expectation, Status};
use uqr::group::FiniteAbelianGroup;
use uqr::lattice::{cent_q, ell_lattice_square, intersect, Base, IntegerLattice};
use uqr::rootdata::{build, substitute_excluded, types_up_to, RootSystemData, RootSystemType, Q};
use uqr::rsolver::{check_f_equations, f_from_pairing, solve, solve_with, Method, F_INDEX_BOUND};
use uqr::sweep::{default_types, summarize, sweep, CellOutcome, SweepOptions, DEFAULT_ELLS};
use uqr::uqverify::SmallSl2;

/// Criteria that fail against the published table; see the README.
const KNOWN_FAILURES: [u8; 2] = [1, 8];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Warn,
    Fail,
}

struct Outcome {
    verdict: Verdict,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, summary: String, details: Vec<String>) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Self {
            verdict,
            summary,
            details,
        }
    }
}

/// Non-excluded cells of the golden grid.
fn grid() -> Vec<(RootSystemData, u32)> {
    default_types(8)
        .into_iter()
        .flat_map(|t| DEFAULT_ELLS.iter().map(move |&l| (t, l)))
        .filter(|&(t, l)| substitute_excluded(t, l).is_none())
        .map(|(t, l)| (build(t).expect("grid types build"), l))
        .collect()
}

fn within(elapsed: Duration, limit: u64, details: &mut Vec<String>) -> bool {
    let ok = elapsed.as_secs() < limit;
    if !ok {
        details.push(format!("took {elapsed:.1?}, limit {limit} s"));
    }
    ok
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let cells = sweep(&default_types(8), &DEFAULT_ELLS, SweepOptions::default());
    let elapsed = start.elapsed();
    let s = summarize(&cells);
    let mut details = Vec::new();
    for c in &cells {
        let CellOutcome::Solved { solutions, comparison: Some(cmp), .. } = &c.outcome else {
            if let CellOutcome::Failed(e) = &c.outcome {
                details.push(format!("FAIL {} ell={}: {e}", c.ty, c.ell));
            }
            continue;
        };
        if cmp.status == Status::Match {
            continue;
        }
        let e = &cmp.expectation;
        let mut line = format!(
            "{} {} ell={}: computed {}{}, table {}{}",
            if cmp.status == Status::Warn { "WARN" } else { "FAIL" },
            c.ty,
            c.ell,
            solutions.len(),
            if c.starred { "*" } else { "" },
            e.printed.solutions.len(),
            if e.printed.starred { "*" } else { "" },
        );
        if !cmp.solutions_match {
            line += "; solution sets differ";
        }
        if !cmp.star_match {
            line += "; star differs";
        }
        if let Some(q) = e.open_question {
            line += &format!("; open question {q:?}");
        }
        if let Some(alt) = &e.alternative {
            line += &format!(
                "; alternative reading {} ({})",
                alt.solutions.len(),
                if cmp.matches_alternative { "matches" } else { "differs" }
            );
        }
        details.push(line);
    }
    let on_time = within(elapsed, 60, &mut details);
    let summary = format!(
        "{} cells: {} match, {} warn, {} fail, {} excluded in {elapsed:.1?}",
        cells.len(),
        s.matched,
        s.warned,
        s.failed,
        s.excluded
    );
    let mut out = Outcome::new(s.failed == 0 && on_time, summary, details);
    if out.verdict == Verdict::Pass && s.warned > 0 {
        out.verdict = Verdict::Warn;
    }
    out
}

fn lattice_identities() -> Outcome {
    let mut details = Vec::new();
    let mut checked = 0;
    for (d, ell) in grid() {
        let w = IntegerLattice::weight_lattice(&d);
        let r = IntegerLattice::root_lattice(&d);
        let a = cent_q(&d, &w, &r, ell).expect("centralizer");
        if a != ell_lattice_square(&d, Base::Weights, ell) {
            details.push(format!("{} ell={ell}: Cent^q(Λ_R) ≠ Λ_W^[ℓ]", d.ty));
        }
        let dd = intersect(&cent_q(&d, &w, &w, ell).expect("centralizer"), &r).expect("meet");
        if dd != ell_lattice_square(&d, Base::Roots, ell) {
            details.push(format!("{} ell={ell}: Cent^q(Λ_W) ∩ Λ_R ≠ Λ_R^[ℓ]", d.ty));
        }
        checked += 1;
    }
    let mut oracle = 0;
    for ty in types_up_to(3) {
        let d = build(ty).expect("builds");
        let w = IntegerLattice::weight_lattice(&d);
        let r = IntegerLattice::root_lattice(&d);
        for ell in 3..=8 {
            for (l1, l2) in [(&w, &r), (&w, &w), (&r, &r)] {
                if let Err(e) = centralizer_oracle(&d, l1, l2, ell) {
                    details.push(e);
                }
                oracle += 1;
            }
        }
    }
    let summary = format!("both identities on {checked} cells; {oracle} centralizers against the coset oracle");
    Outcome::new(details.is_empty(), summary, details)
}

fn group_equation_counts() -> Outcome {
    let mut details = Vec::new();
    for n in 1..=12 {
        let g = FiniteAbelianGroup::cyclic(n);
        let ps = enumerate_pairings(&g, PAIRING_BOUND).expect("within bound");
        let expected: i64 = divisors(n).sum();
        if ps.len() as i64 != expected {
            details.push(format!("Z{n}: {} pairings, expected {expected}", ps.len()));
        }
        if !ps.iter().all(|p| check_group_equations(&pairing_solution(&g, p))) {
            details.push(format!("Z{n}: a pairing fails the group-equations"));
        }
    }
    let klein = FiniteAbelianGroup::new(vec![2, 2]);
    let ps = enumerate_pairings(&klein, PAIRING_BOUND).expect("within bound");
    if ps.len() != 35 || !ps.iter().all(|p| check_group_equations(&pairing_solution(&klein, p))) {
        details.push(format!("Z2xZ2: {} pairings, expected 35 solutions", ps.len()));
    }
    Outcome::new(details.is_empty(), "Z1..Z12 and Z2xZ2".into(), details)
}

fn gcd_oracle() -> Outcome {
    let mut cells = 0;
    let mut details = Vec::new();
    for (n, m, l, dia) in cyclic_diamonds() {
        for d in divisors(n) {
            for k in 1..=d {
                let s = pairing_solution(&dia.g, &Pairing::cyclic(n, d, k).expect("d | N"));
                let brute = check_diamond_equations(&s, &dia).expect("evaluates");
                if brute != gcd_criterion(n, d, k, l, m).expect("valid parameters") {
                    details.push(format!("N={n} m={m} l={l} d={d} k={k}: brute force says {brute}"));
                }
                cells += 1;
            }
        }
    }
    let summary = format!("{cells} cells, {} disagreements", details.len());
    Outcome::new(details.is_empty(), summary, details)
}

fn kernel_gate() -> Outcome {
    let mut details = Vec::new();
    let (mut gated, mut stars) = (0, 0);
    for (d, ell) in grid() {
        let agree = kernels_agree(&d, ell);
        if ell % 2 == 1 && !agree {
            let sols = solve(&d, ell, &Kernel::Lusztig.lattice(&d, ell)).expect("admissible kernel");
            if !sols.is_empty() {
                details.push(format!("{} ell={ell}: {} solutions for 2Λ_R^(ℓ)", d.ty, sols.len()));
            }
            gated += 1;
        }
        let printed = expectation(&d, ell).expect("not excluded").printed.starred;
        if printed != agree {
            details.push(format!("{} ell={ell}: table star {printed}, kernels equal {agree}", d.ty));
        }
        stars += 1;
    }
    let summary = format!("{gated} odd-ell cells gated to the empty set; stars compared on {stars} cells");
    Outcome::new(details.is_empty(), summary, details)
}

fn f_equivalence() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let (mut accepted, mut rejected, mut skipped) = (0, 0, 0);
    for (d, ell) in grid() {
        let lp = Kernel::Square.lattice(&d, ell);
        if lp.covolume() > F_INDEX_BOUND as u128 {
            skipped += 1;
            continue;
        }
        let sols = solve_with(&d, ell, &lp, Method::Gcd).expect("solves");
        for p in enumerate_pairings(&d.pi1.group, PAIRING_BOUND).expect("within bound") {
            let f = f_from_pairing(&d, ell, &lp, &p, F_INDEX_BOUND).expect("within bound");
            let holds = check_f_equations(&f).expect("within bound");
            let is_solution = sols.iter().any(|s| s.pairing == p);
            if holds != is_solution {
                details.push(format!(
                    "{} ell={ell}: {} candidate |H|={} {} the f-equations",
                    d.ty,
                    if is_solution { "accepted" } else { "rejected" },
                    p.d(),
                    if holds { "passes" } else { "fails" }
                ));
            }
            if is_solution {
                accepted += 1;
            } else {
                rejected += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let on_time = within(elapsed, 120, &mut details);
    let summary = format!(
        "{accepted} accepted pass, {rejected} rejected fail; {skipped} cells with |Λ/Λ′| > {F_INDEX_BOUND} skipped; {elapsed:.1?}"
    );
    Outcome::new(details.is_empty() && on_time, summary, details)
}

fn a1_quasitriangular() -> Outcome {
    let start = Instant::now();
    let d = build(RootSystemType::new(uqr::rootdata::Family::A, 1).expect("A1")).expect("builds");
    let mut details = Vec::new();
    let mut checked = 0;
    let mut dim5 = 0;
    for ell in 3..=6 {
        let lp = Kernel::Square.lattice(&d, ell);
        let u = SmallSl2::for_lattice(&d, ell, &lp).expect("A1 algebra");
        if ell == 5 {
            dim5 = u.dimension();
        }
        for sol in solve(&d, ell, &lp).expect("solves") {
            let r = u.assemble_r(&sol, &lp).expect("assembles");
            let inv = u.inverse(&r).is_ok();
            let rep = u.verify_quasitriangular(&r.r);
            if !inv || !rep.holds() {
                details.push(format!("ell={ell} {:?}: invertible {inv}, {rep:?}", sol.dk));
            }
            checked += 1;
        }
    }
    if dim5 != 250 {
        details.push(format!("dimension at ell=5 is {dim5}, expected 250"));
    }
    let lp = Kernel::Square.lattice(&d, 4);
    let u = SmallSl2::for_lattice(&d, 4, &lp).expect("A1 algebra");
    let f = f_from_pairing(&d, 4, &lp, &Pairing::trivial(&d.pi1.group), F_INDEX_BOUND).expect("small");
    let control = u.verify_quasitriangular(&u.assemble_from_f(&f).expect("assembles").r);
    if control.holds() {
        details.push("negative control (trivial support, ell=4) passes all axioms".into());
    }
    let elapsed = start.elapsed();
    let on_time = within(elapsed, 300, &mut details);
    let summary = format!(
        "{checked} solutions for ell 3..6 pass all axioms; dim 250 at ell=5; control fails {}; {elapsed:.1?}",
        [
            ("(i)", control.intertwines),
            ("(ii)", control.coproduct_first),
            ("(iii)", control.coproduct_second)
        ]
        .iter()
        .filter(|x| !x.1)
        .map(|x| x.0)
        .collect::<Vec<_>>()
        .join(",")
    );
    Outcome::new(details.is_empty() && on_time, summary, details)
}

fn b2_example() -> Outcome {
    let d = build("B2".parse().expect("B2")).expect("builds");
    let mut details = Vec::new();
    let mut odd_ok = true;
    let mut even_ok = true;
    for ell in [3u32, 5, 7, 9, 4, 6, 8, 12] {
        if substitute_excluded(d.ty, ell).is_some() {
            continue;
        }
        let odd = ell % 2 == 1;
        let lp = Kernel::Square.lattice(&d, ell);
        let shape = build_diamond(&d, ell, &lp).expect("diamond").shape();
        // Odd: (Z2, Z2, Z2, Z1, Z1, 1, λ2). Even: (Z2, Z2, Z2, Z2, Z1, 1, 0).
        let c: Vec<i64> = if odd { vec![] } else { vec![2] };
        let expected_shape = (vec![2], vec![2], vec![2], c, vec![], Some(Q::from(0)), Some(i64::from(odd)));
        let got = (shape.g.clone(), shape.a.clone(), shape.b.clone(), shape.c.clone(), shape.d.clone(), shape.phi1, shape.phi2);
        let mut dks: Vec<_> = solve(&d, ell, &lp)
            .expect("solves")
            .iter()
            .map(|s| s.dk.expect("cyclic"))
            .collect();
        dks.sort();
        let expected_dks = if odd { vec![(1, 1), (2, 1)] } else { vec![(1, 1), (2, 1), (2, 2)] };
        let ok = got == expected_shape && dks == expected_dks;
        if !ok {
            details.push(format!("ell={ell}: diamond {shape}, (d,k) {dks:?}; expected {expected_dks:?}"));
        }
        if odd {
            odd_ok &= ok;
        } else {
            even_ok &= ok;
        }
    }
    let summary = format!(
        "odd ell {}, even ell {}",
        if odd_ok { "matches" } else { "differs" },
        if even_ok { "matches" } else { "differs" }
    );
    Outcome::new(odd_ok && even_ok, summary, details)
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome); 8] = [
        (1, "classification table reproduction", table_reproduction),
        (2, "centralizer lattice identities", lattice_identities),
        (3, "group-equation solution counts", group_equation_counts),
        (4, "gcd criterion against brute force", gcd_oracle),
        (5, "kernel gate and stars", kernel_gate),
        (6, "f-equations separate solutions from candidates", f_equivalence),
        (7, "A1 quasitriangularity end to end", a1_quasitriangular),
        (8, "B2 diamonds and solutions", b2_example),
    ];
    let mut failing = Vec::new();
    for (n, title, run) in criteria {
        let start = Instant::now();
        let out = run();
        let tag = match out.verdict {
            Verdict::Pass => "PASS",
            Verdict::Warn => "WARN",
            Verdict::Fail => "FAIL",
        };
        println!("criterion {n} {tag}: {title}: {} [{:.1?}]", out.summary, start.elapsed());
        for line in &out.details {
            println!("    {line}");
        }
        if out.verdict == Verdict::Fail {
            failing.push(n);
        }
    }
    if failing == KNOWN_FAILURES {
        println!("failing criteria {failing:?} are the known discrepancies");
        ExitCode::SUCCESS
    } else {
        println!("failing criteria {failing:?} differ from the known set {KNOWN_FAILURES:?}");
        ExitCode::FAILURE
    }
}
