//! `uqr`: solve single cells, sweep the classification grid, verify R-matrices.
//!
//! Exit codes: 0 success, 1 input error, 2 valid input with no solutions, 3 excluded
//! `(Φ, ℓ)` (the substitute is printed), 4 table mismatch or failed verification.

mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uqr::diamond::Kernel;
use uqr::equations::{enumerate_pairings, PAIRING_BOUND};
use uqr::rootdata::{build, Family, RootSystemData, RootSystemType};
use uqr::rsolver::{check_f_equations, f_from_pairing, solve, solve_with, Method, F_INDEX_BOUND};
use uqr::sweep::{default_types, sweep, verify_solution, SweepOptions, Verification, DEFAULT_ELLS};
use uqr::uqverify::SmallSl2;
use uqr::Error;

use report::{render_solutions, render_table, table_report, Input, SolutionReport};

#[derive(Parser)]
#[command(name = "uqr", version, about = "R-matrices of small quantum groups at roots of unity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solutions (H₁, H₂, ω) for one root system and ℓ.
    Solve(SolveArgs),
    /// Sweep the grid and compare against the embedded classification table.
    Table(TableArgs),
    /// Check the solutions of one cell: f-equations, and the Hopf-algebra axioms for A1.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CellArgs {
    /// Family letter A-G.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: usize,
    /// Order of the root of unity, at least 3.
    #[arg(long)]
    ell: u32,
    #[arg(long, value_enum, default_value_t = KernelArg::Square)]
    kernel: KernelArg,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    cell: CellArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = VerifyArg::None)]
    verify: VerifyArg,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 8)]
    max_rank: usize,
    /// Comma-separated values of ℓ.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ELLS.to_vec())]
    ell_set: Vec<u32>,
    #[arg(long, value_enum, default_value_t = KernelArg::Square)]
    kernel: KernelArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = VerifyArg::None)]
    verify: VerifyArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Also check the Hopf-algebra axioms (A1 only).
    #[arg(long)]
    full: bool,
    /// Also check every rejected pairing candidate, which must fail.
    #[arg(long)]
    all_candidates: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Square,
    Lusztig,
}

impl KernelArg {
    fn kernel(self) -> Kernel {
        match self {
            KernelArg::Square => Kernel::Square,
            KernelArg::Lusztig => Kernel::Lusztig,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KernelArg::Square => "square",
            KernelArg::Lusztig => "lusztig",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    None,
    F,
    Full,
}

impl VerifyArg {
    fn level(self) -> Verification {
        match self {
            VerifyArg::None => Verification::None,
            VerifyArg::F => Verification::F,
            VerifyArg::Full => Verification::Full,
        }
    }
}

const EXIT_INPUT: u8 = 1;
const EXIT_EMPTY: u8 = 2;
const EXIT_EXCLUDED: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

fn parse_cell(c: &CellArgs) -> Result<(RootSystemData, u32), Error> {
    if c.ell < 3 {
        return Err(Error::Domain(format!("ell must be at least 3, got {}", c.ell)));
    }
    let family: Family = c.family.parse()?;
    let data = build(RootSystemType::new(family, c.rank)?)?;
    Ok((data, c.ell))
}

fn input_of(data: &RootSystemData, ell: u32, kernel: KernelArg) -> Input {
    Input {
        family: data.ty.family.to_string(),
        rank: data.ty.rank,
        ell,
        kernel: kernel.name().into(),
    }
}

/// Writes to stdout; a closed pipe (`uqr table | head`) is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn excluded(ty: RootSystemType, ell: u32, sub: &[RootSystemType], format: Format) -> ExitCode {
    let names: Vec<String> = sub.iter().map(|t| t.to_string()).collect();
    match format {
        Format::Table => println!("{ty} at ell={ell} is excluded; use {}", names.join(" x ")),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "type": ty.family.to_string(), "rank": ty.rank, "ell": ell, "substitute": names })
        ),
    }
    ExitCode::from(EXIT_EXCLUDED)
}

fn cmd_solve(a: &SolveArgs) -> ExitCode {
    let (data, ell) = match parse_cell(&a.cell) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let lp = a.cell.kernel.kernel().lattice(&data, ell);
    let sols = match solve_with(&data, ell, &lp, Method::Gcd) {
        Ok(s) => s,
        Err(Error::Excluded { ty, ell, substitute }) => return excluded(ty, ell, &substitute, a.format),
        Err(e) => return fail(&e),
    };
    let checks = match sols
        .iter()
        .map(|s| verify_solution(s, &lp, a.verify.level()))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let rep = SolutionReport::new(input_of(&data, ell, a.cell.kernel), &sols, &checks);
    match a.format {
        Format::Table => emit(&render_solutions(&rep)),
        Format::Json => emit(&json(&rep)),
    }
    if rep.count == 0 {
        ExitCode::from(EXIT_EMPTY)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_table(a: &TableArgs) -> ExitCode {
    if let Some(bad) = a.ell_set.iter().find(|&&l| l < 3) {
        return fail(&Error::Domain(format!("ell must be at least 3, got {bad}")));
    }
    let opts = SweepOptions {
        kernel: a.kernel.kernel(),
        verification: a.verify.level(),
        ..Default::default()
    };
    let cells = sweep(&default_types(a.max_rank), &a.ell_set, opts);
    let rep = table_report(&cells, a.kernel.name());
    match a.format {
        Format::Table => emit(&render_table(&rep)),
        Format::Json => emit(&json(&rep)),
    }
    if rep.failed > 0 {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_verify(a: &VerifyArgs) -> ExitCode {
    let (data, ell) = match parse_cell(&a.cell) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let a1 = data.ty.family == Family::A && data.rank() == 1;
    if a.full && !a1 {
        return fail(&Error::Unsupported(format!(
            "--full needs A1; for {} use `uqr verify` without --full, which runs check_f_equations",
            data.ty
        )));
    }
    let lp = a.cell.kernel.kernel().lattice(&data, ell);
    let sols = match solve(&data, ell, &lp) {
        Ok(s) => s,
        Err(Error::Excluded { ty, ell, substitute }) => return excluded(ty, ell, &substitute, Format::Table),
        Err(e) => return fail(&e),
    };
    let alg = if a.full {
        match SmallSl2::for_lattice(&data, ell, &lp) {
            Ok(u) => Some(u),
            Err(e) => return fail(&e),
        }
    } else {
        None
    };
    println!("{} ell={} kernel={}: {} solution(s)", data.ty, ell, a.cell.kernel.name(), sols.len());
    let mut all_ok = true;
    let mut candidates: Vec<(bool, uqr::equations::Pairing)> =
        sols.iter().map(|s| (true, s.pairing.clone())).collect();
    if a.all_candidates {
        match enumerate_pairings(&data.pi1.group, PAIRING_BOUND) {
            Ok(ps) => candidates.extend(
                ps.into_iter()
                    .filter(|p| !sols.iter().any(|s| s.pairing == *p))
                    .map(|p| (false, p)),
            ),
            Err(e) => return fail(&e),
        }
    }
    for (accepted, p) in &candidates {
        let label = match p.dk(&data.pi1.group) {
            Some((d, k)) => format!("(d,k)=({d},{k})"),
            None => format!("|H|={}", p.d()),
        };
        let kind = if *accepted { "solution" } else { "rejected candidate" };
        let t = Instant::now();
        let f = match f_from_pairing(&data, ell, &lp, p, F_INDEX_BOUND) {
            Ok(f) => f,
            Err(Error::Resource { size, bound, .. }) => {
                println!("  {kind} {label}: |Λ_W/Λ′| = {size} exceeds {bound}, skipped");
                continue;
            }
            Err(e) => return fail(&e),
        };
        let f_ok = match check_f_equations(&f) {
            Ok(b) => b,
            Err(e) => return fail(&e),
        };
        println!("  {kind} {label}: f-equations {} ({:?})", mark(f_ok), t.elapsed());
        let mut passes = f_ok;
        if let Some(u) = &alg {
            let t = Instant::now();
            let r = match u.assemble_from_f(&f) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let inv = u.inverse(&r).is_ok();
            let rep = u.verify_quasitriangular(&r.r);
            println!("    invertible                {}", mark(inv));
            println!("    R Δ(h) = Δ^op(h) R        {}", mark(rep.intertwines));
            println!("    (Δ⊗id)(R) = R13 R23       {}", mark(rep.coproduct_first));
            println!("    (id⊗Δ)(R) = R13 R12       {}", mark(rep.coproduct_second));
            println!("    algebra dimension {}, {:?}", u.dimension(), t.elapsed());
            passes = passes && inv && rep.holds();
        }
        all_ok &= passes == *accepted;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
    }
}
