//! Wire formats for solve and table output, and their plain-text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use uqr::equations::Pairing;
use uqr::expected::{OpenQuestion, Status};
use uqr::group::Subgroup;
use uqr::rootdata::RootSystemData;
use uqr::rsolver::R0Solution;
use uqr::sweep::{CellOutcome, CellReport, SolutionChecks};
use uqr::uqverify::QuasitriangularReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    pub ell: u32,
    pub kernel: String,
}

/// `num/den` with `ω = exp(2πi·num/den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub order: usize,
    /// Generators in `π₁` coordinates.
    pub generators: Vec<Vec<i64>>,
    /// The same generators as fundamental-weight combinations.
    pub weights: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub f_equations: Option<bool>,
    pub invertible: Option<bool>,
    pub axioms: Option<QuasitriangularReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionEntry {
    pub h1: SubgroupReport,
    pub h2: SubgroupReport,
    /// `ω(g1_i, g2_j)` on the listed generators.
    pub omega: Vec<Vec<Exponent>>,
    /// `(d, k)` with `ω(N/d, N/d) = exp(2πi·k/d)`, cyclic `π₁` only.
    pub dk: Option<(usize, usize)>,
    pub starred: bool,
    pub verification: Verification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub input: Input,
    pub count: usize,
    pub solutions: Vec<SolutionEntry>,
}

fn subgroup(data: &RootSystemData, h: &Subgroup) -> SubgroupReport {
    let generators: Vec<Vec<i64>> = h.basis.iter().map(|(b, _)| b.clone()).collect();
    SubgroupReport {
        order: h.order(),
        weights: generators
            .iter()
            .map(|g| data.pi1.lift(g, data.rank()))
            .collect(),
        generators,
    }
}

fn omega(p: &Pairing) -> Vec<Vec<Exponent>> {
    p.omega
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| Exponent {
                    num: *t.numer(),
                    den: *t.denom(),
                })
                .collect()
        })
        .collect()
}

impl SolutionReport {
    pub fn new(input: Input, solutions: &[R0Solution], checks: &[SolutionChecks]) -> Self {
        let mut entries: Vec<SolutionEntry> = solutions
            .iter()
            .zip(checks)
            .map(|(s, c)| SolutionEntry {
                h1: subgroup(&s.data, &s.pairing.h1),
                h2: subgroup(&s.data, &s.pairing.h2),
                omega: omega(&s.pairing),
                dk: s.dk,
                starred: s.starred,
                verification: Verification {
                    f_equations: c.f_equations,
                    invertible: c.invertible,
                    axioms: c.axioms,
                },
            })
            .collect();
        entries.sort_by(|a, b| {
            (a.h1.order, &a.h1.generators, &a.h2.generators, &a.omega).cmp(&(
                b.h1.order,
                &b.h1.generators,
                &b.h2.generators,
                &b.omega,
            ))
        });
        Self {
            input,
            count: entries.len(),
            solutions: entries,
        }
    }
}

fn weight_name(w: &[i64]) -> String {
    let parts: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match c {
            1 => format!("λ{}", i + 1),
            _ => format!("{c}λ{}", i + 1),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn group_name(order: usize, gens: usize) -> String {
    match (order, gens) {
        (4, 2) => "Z2xZ2".into(),
        (n, _) => format!("Z{n}"),
    }
}

fn span_name(h: &SubgroupReport) -> String {
    if h.weights.is_empty() {
        return "0".into();
    }
    let names: Vec<String> = h.weights.iter().map(|w| weight_name(w)).collect();
    format!("<{}>", names.join(", "))
}

fn omega_name(m: &[Vec<Exponent>]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match (e.num, e.den) {
                    (0, _) => "1".to_string(),
                    (1, 2) => "-1".to_string(),
                    (n, d) => format!("e({n}/{d})"),
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn check_name(v: &Verification) -> String {
    let mut parts = Vec::new();
    if let Some(f) = v.f_equations {
        parts.push(format!("f:{}", if f { "ok" } else { "FAIL" }));
    }
    if let Some(i) = v.invertible {
        parts.push(format!("inv:{}", if i { "ok" } else { "FAIL" }));
    }
    if let Some(a) = v.axioms {
        let b = |x: bool| if x { "ok" } else { "FAIL" };
        parts.push(format!(
            "axioms:{}/{}/{}",
            b(a.intertwines),
            b(a.coproduct_first),
            b(a.coproduct_second)
        ));
    }
    parts.join(" ")
}

/// Columns `ℓ | # | H_i≅ | H_i | ω`, one row per solution.
pub fn render_solutions(r: &SolutionReport) -> String {
    let mut out = String::new();
    let star = if r.solutions.first().is_some_and(|s| s.starred) { "*" } else { "" };
    let _ = writeln!(
        out,
        "{}{} ell={} kernel={}: {}{} solution(s)",
        r.input.family, r.input.rank, r.input.ell, r.input.kernel, r.count, star
    );
    let _ = writeln!(out, "{:<4} | {:<3} | {:<6} | {:<34} | {:<16} | checks", "ell", "#", "H≅", "H1 x H2", "omega");
    for (i, s) in r.solutions.iter().enumerate() {
        let hs = format!("{} x {}", span_name(&s.h1), span_name(&s.h2));
        let _ = writeln!(
            out,
            "{:<4} | {:<3} | {:<6} | {:<34} | {:<16} | {}",
            r.input.ell,
            i + 1,
            group_name(s.h1.order, s.h1.generators.len()),
            hs,
            omega_name(&s.omega),
            check_name(&s.verification)
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Match,
    Warn,
    Fail,
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    pub ell: u32,
    pub status: CellStatus,
    pub count: usize,
    pub expected_count: Option<usize>,
    pub starred: bool,
    pub expected_starred: Option<bool>,
    /// Open question covering the cell, if any.
    pub open_question: Option<String>,
    /// Whether the computed set equals the alternative reading of the cell.
    pub matches_alternative: Option<bool>,
    pub substitute: Option<Vec<String>>,
    pub error: Option<String>,
    pub solutions: Vec<SolutionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub cells: Vec<TableCell>,
    pub matched: usize,
    pub warned: usize,
    pub failed: usize,
    pub excluded: usize,
}

pub fn table_cell(c: &CellReport, kernel: &str) -> TableCell {
    let mut cell = TableCell {
        family: c.ty.family.to_string(),
        rank: c.ty.rank,
        ell: c.ell,
        status: CellStatus::Excluded,
        count: 0,
        expected_count: None,
        starred: c.starred,
        expected_starred: None,
        open_question: None,
        matches_alternative: None,
        substitute: None,
        error: None,
        solutions: vec![],
    };
    match &c.outcome {
        CellOutcome::Excluded(sub) => {
            cell.substitute = Some(sub.iter().map(|t| t.to_string()).collect());
        }
        CellOutcome::Failed(e) => {
            cell.status = CellStatus::Fail;
            cell.error = Some(e.to_string());
        }
        CellOutcome::Solved {
            solutions,
            checks,
            comparison,
        } => {
            let input = Input {
                family: cell.family.clone(),
                rank: cell.rank,
                ell: cell.ell,
                kernel: kernel.into(),
            };
            let rep = SolutionReport::new(input, solutions, checks);
            cell.count = rep.count;
            cell.solutions = rep.solutions;
            cell.status = CellStatus::Match;
            if let Some(cmp) = comparison {
                cell.status = match cmp.status {
                    Status::Match => CellStatus::Match,
                    Status::Warn => CellStatus::Warn,
                    Status::Fail => CellStatus::Fail,
                };
                cell.expected_count = Some(cmp.expectation.printed.solutions.len());
                cell.expected_starred = Some(cmp.expectation.printed.starred);
                cell.open_question = cmp.expectation.open_question.map(|q| match q {
                    OpenQuestion::SpinorSigns => "spinor-signs".to_string(),
                    OpenQuestion::BTwoModFour => "b-two-mod-four".to_string(),
                });
                cell.matches_alternative = cmp
                    .expectation
                    .alternative
                    .as_ref()
                    .map(|_| cmp.matches_alternative);
            }
        }
    }
    cell
}

pub fn table_report(cells: &[CellReport], kernel: &str) -> TableReport {
    let cells: Vec<TableCell> = cells.iter().map(|c| table_cell(c, kernel)).collect();
    let count = |s: CellStatus| cells.iter().filter(|c| c.status == s).count();
    TableReport {
        matched: count(CellStatus::Match),
        warned: count(CellStatus::Warn),
        failed: count(CellStatus::Fail),
        excluded: count(CellStatus::Excluded),
        cells,
    }
}

pub fn render_table(t: &TableReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<4} {:<4} | {:<4} | {:<6} | {:<60} | status", "type", "ell", "#", "H≅", "H1 x H2 : omega");
    for c in &t.cells {
        let name = format!("{}{}", c.family, c.rank);
        if let Some(sub) = &c.substitute {
            let _ = writeln!(out, "{name:<4} {:<4} | excluded, use {}", c.ell, sub.join(" x "));
            continue;
        }
        if let Some(e) = &c.error {
            let _ = writeln!(out, "{name:<4} {:<4} | error: {e} | FAIL", c.ell);
            continue;
        }
        let star = if c.starred { "*" } else { "" };
        let status = match c.status {
            CellStatus::Match => "ok".to_string(),
            CellStatus::Warn => format!(
                "WARN {} (expected {}, alternative reading {})",
                c.open_question.as_deref().unwrap_or(""),
                c.expected_count.unwrap_or(0),
                match c.matches_alternative {
                    Some(true) => "matches",
                    Some(false) => "differs",
                    None => "none",
                }
            ),
            CellStatus::Fail => format!(
                "FAIL (expected {}{})",
                c.expected_count.unwrap_or(0),
                if c.expected_starred == Some(true) { "*" } else { "" }
            ),
            CellStatus::Excluded => "excluded".into(),
        };
        let groups: Vec<String> = c
            .solutions
            .iter()
            .map(|s| group_name(s.h1.order, s.h1.generators.len()))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let sols: Vec<String> = c
            .solutions
            .iter()
            .map(|s| format!("{}x{}:{}", span_name(&s.h1), span_name(&s.h2), omega_name(&s.omega)))
            .collect();
        let _ = writeln!(
            out,
            "{name:<4} {:<4} | {:<4} | {:<6} | {:<60} | {status}",
            c.ell,
            format!("{}{star}", c.count),
            groups.join(","),
            sols.join("  ")
        );
    }
    let _ = writeln!(
        out,
        "summary: {} match, {} warn, {} fail, {} excluded",
        t.matched, t.warned, t.failed, t.excluded
    );
    out
}
