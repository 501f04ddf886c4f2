//! Evaluation of whole grids of `(Φ, ℓ)` cells. Cells run concurrently; reports come back in
//! grid order.

use std::time::{Duration, Instant};

use crate::diamond::{kernels_agree, Kernel};
use crate::error::{Error, Result};
use crate::expected::{compare, CellComparison, Status};
use crate::rootdata::{build, substitute_excluded, Family, RootSystemType};
use crate::rsolver::{check_f_equations, f_from_solution, solve_with, Method, R0Solution};
use crate::uqverify::{QuasitriangularReport, SmallSl2};
use crate::lattice::IntegerLattice;
#[allow(unused_imports)]
use crate::parallel::prelude::*;

pub const DEFAULT_ELLS: [u32; 8] = [3, 4, 5, 6, 7, 8, 9, 12];

/// `A₁..A₆, B₂..B₅, C₃..C₅, D₄..D₇, E₆..E₈, F₄, G₂`, restricted to `rank ≤ max_rank`.
pub fn default_types(max_rank: usize) -> Vec<RootSystemType> {
    let ranges: [(Family, usize, usize); 7] = [
        (Family::A, 1, 6),
        (Family::B, 2, 5),
        (Family::C, 3, 5),
        (Family::D, 4, 7),
        (Family::E, 6, 8),
        (Family::F, 4, 4),
        (Family::G, 2, 2),
    ];
    ranges
        .iter()
        .flat_map(|&(f, lo, hi)| (lo..=hi.min(max_rank)).map(move |n| RootSystemType::new(f, n)))
        .collect::<Result<_>>()
        .expect("grid types are admissible")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verification {
    #[default]
    None,
    /// The f-equations, when `|Λ_W/Λ′|` is within bound.
    F,
    /// The f-equations and, for `A₁`, the Hopf-algebra axioms.
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub kernel: Kernel,
    pub method: Method,
    pub verification: Verification,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            kernel: Kernel::Square,
            method: Method::Gcd,
            verification: Verification::None,
        }
    }
}

/// Per-solution verification results; `None` where the check was not run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolutionChecks {
    pub f_equations: Option<bool>,
    pub axioms: Option<QuasitriangularReport>,
    pub invertible: Option<bool>,
}

#[derive(Debug, Clone)]
pub enum CellOutcome {
    Excluded(Vec<RootSystemType>),
    Solved {
        solutions: Vec<R0Solution>,
        checks: Vec<SolutionChecks>,
        /// Against the embedded table; only for `Λ′ = Λ_R^{[ℓ]}`.
        comparison: Option<CellComparison>,
    },
    Failed(Error),
}

#[derive(Debug, Clone)]
pub struct CellReport {
    pub ty: RootSystemType,
    pub ell: u32,
    /// The two kernels coincide.
    pub starred: bool,
    pub outcome: CellOutcome,
    pub elapsed: Duration,
}

impl CellReport {
    pub fn status(&self) -> Option<Status> {
        match &self.outcome {
            CellOutcome::Solved { comparison, .. } => comparison.as_ref().map(|c| c.status),
            CellOutcome::Failed(_) => Some(Status::Fail),
            CellOutcome::Excluded(_) => None,
        }
    }

    pub fn solutions(&self) -> &[R0Solution] {
        match &self.outcome {
            CellOutcome::Solved { solutions, .. } => solutions,
            _ => &[],
        }
    }
}

/// Runs the requested checks on one solution.
pub fn verify_solution(
    sol: &R0Solution,
    lambda_prime: &IntegerLattice,
    level: Verification,
) -> Result<SolutionChecks> {
    let mut out = SolutionChecks::default();
    if level == Verification::None {
        return Ok(out);
    }
    out.f_equations = match f_from_solution(sol, lambda_prime) {
        Ok(f) => Some(check_f_equations(&f)?),
        Err(Error::Resource { .. }) => None,
        Err(e) => return Err(e),
    };
    if level == Verification::Full && sol.data.ty.family == Family::A && sol.data.rank() == 1 {
        let u = SmallSl2::for_lattice(&sol.data, sol.ell, lambda_prime)?;
        let r = u.assemble_r(sol, lambda_prime)?;
        out.invertible = Some(u.inverse(&r).is_ok());
        out.axioms = Some(u.verify_quasitriangular(&r.r));
    }
    Ok(out)
}

pub fn evaluate(ty: RootSystemType, ell: u32, opts: SweepOptions) -> CellReport {
    let start = Instant::now();
    let mut starred = false;
    let outcome = (|| -> Result<CellOutcome> {
        if let Some(sub) = substitute_excluded(ty, ell) {
            return Ok(CellOutcome::Excluded(sub));
        }
        let data = build(ty)?;
        starred = kernels_agree(&data, ell);
        let lp = opts.kernel.lattice(&data, ell);
        let solutions = solve_with(&data, ell, &lp, opts.method)?;
        let checks = solutions
            .iter()
            .map(|s| verify_solution(s, &lp, opts.verification))
            .collect::<Result<Vec<_>>>()?;
        let comparison = match opts.kernel {
            Kernel::Square => Some(compare(&data, ell, &solutions, starred)?),
            Kernel::Lusztig => None,
        };
        Ok(CellOutcome::Solved {
            solutions,
            checks,
            comparison,
        })
    })()
    .unwrap_or_else(CellOutcome::Failed);
    CellReport {
        ty,
        ell,
        starred,
        outcome,
        elapsed: start.elapsed(),
    }
}

/// Every `(type, ℓ)` cell, in the order given.
pub fn sweep(types: &[RootSystemType], ells: &[u32], opts: SweepOptions) -> Vec<CellReport> {
    let cells: Vec<(RootSystemType, u32)> = types
        .iter()
        .flat_map(|&t| ells.iter().map(move |&l| (t, l)))
        .collect();
    iter_par!(cells)
        .map(|(t, l)| evaluate(t, l, opts))
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub matched: usize,
    pub warned: usize,
    pub failed: usize,
    pub excluded: usize,
}

pub fn summarize(reports: &[CellReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status() {
            Some(Status::Match) => s.matched += 1,
            Some(Status::Warn) => s.warned += 1,
            Some(Status::Fail) => s.failed += 1,
            None => s.excluded += 1,
        }
    }
    s
}
