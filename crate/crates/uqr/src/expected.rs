//! The published classification table, transcribed as pairings on `π₁`, and cell comparison.
//!
//! Pairings are written on the classes of the weights the table names: `λ_n` for `A_n` and
//! `D_n` (n odd), `λ_{n-1}, λ_n` for `D_n` (n even), and the nonzero class for `ℤ₂`, `ℤ₃`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::equations::{pairing_solution, Pairing};
use crate::error::{Error, Result};
use crate::rootdata::{substitute_excluded, Family, RootSystemData, Q};
use crate::rsolver::R0Solution;

/// A set of solutions and whether the row carries a star.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub solutions: Vec<Pairing>,
    pub starred: bool,
}

/// Unresolved readings of the table that the comparison reports as warnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpenQuestion {
    /// Signs of `ω` for `D_n`, `n` even, `ℓ` odd.
    SpinorSigns,
    /// Trivial solution for `B_n`, `n` even, `ℓ ≡ 2 mod 4`.
    BTwoModFour,
}

#[derive(Debug, Clone)]
pub struct Expectation {
    pub printed: TableEntry,
    /// Second reading for cells covered by an open question.
    pub alternative: Option<TableEntry>,
    pub open_question: Option<OpenQuestion>,
}

fn t(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn class_of(data: &RootSystemData, weight: usize) -> Vec<i64> {
    let mut w = vec![0i64; data.rank()];
    w[weight] = 1;
    data.pi1.project(&w)
}

/// `ω(x, x) = exp(2πi·e)` on `⟨x⟩`.
fn cyclic(data: &RootSystemData, x: &[i64], e: Q) -> Pairing {
    let g = &data.pi1.group;
    Pairing::on_generators(g, &[x.to_vec()], &[x.to_vec()], &[vec![e]])
        .expect("table pairings are well defined")
}

fn trivial(data: &RootSystemData) -> Pairing {
    Pairing::trivial(&data.pi1.group)
}

/// Table entry for `(Φ, ℓ)` with `Λ′ = Λ_R^{[ℓ]}`.
pub fn expectation(data: &RootSystemData, ell: u32) -> Result<Expectation> {
    if let Some(substitute) = substitute_excluded(data.ty, ell) {
        return Err(Error::Excluded {
            ty: data.ty,
            ell,
            substitute,
        });
    }
    let n = data.rank() as i64;
    let l = i64::from(ell);
    let odd = l % 2 == 1;
    let entry = |solutions: Vec<Pairing>, starred: bool| TableEntry { solutions, starred };
    let plain = |e: TableEntry| Expectation {
        printed: e,
        alternative: None,
        open_question: None,
    };
    let g = &data.pi1.group;
    let gen = || g.reduce(&[1]);
    Ok(match data.ty.family {
        Family::A => {
            let nn = n + 1;
            let x = class_of(data, data.rank() - 1);
            let mut sols = Vec::new();
            for d in (1..=nn).filter(|d| nn % d == 0) {
                for k in 1..=d {
                    if nn.gcd(&(d * l)).gcd(&(k * l - (nn / d) * n)) == 1 {
                        sols.push(cyclic(data, &g.scale(nn / d, &x), t(k, d)));
                    }
                }
            }
            plain(entry(sols, !odd))
        }
        Family::B => {
            let sign = t((n - 1).rem_euclid(2), 2);
            if odd {
                plain(entry(vec![trivial(data), cyclic(data, &gen(), sign)], false))
            } else {
                let mut sols = vec![cyclic(data, &gen(), t(0, 1)), cyclic(data, &gen(), t(1, 2))];
                if n % 2 == 0 {
                    sols.push(trivial(data));
                }
                let starred = l % 4 == 0;
                let e = entry(sols, starred);
                if l % 4 == 2 && n % 2 == 0 {
                    Expectation {
                        printed: e,
                        alternative: None,
                        open_question: Some(OpenQuestion::BTwoModFour),
                    }
                } else {
                    plain(e)
                }
            }
        }
        Family::C => {
            if odd {
                plain(entry(vec![trivial(data), cyclic(data, &gen(), t(1, 2))], false))
            } else if l % 4 == 2 {
                let sign = t((n - 1).rem_euclid(2), 2);
                plain(entry(vec![trivial(data), cyclic(data, &gen(), sign)], false))
            } else {
                let mut sols = vec![cyclic(data, &gen(), t(0, 1)), cyclic(data, &gen(), t(1, 2))];
                if n % 2 == 0 {
                    sols.push(trivial(data));
                }
                plain(entry(sols, true))
            }
        }
        Family::D if n % 2 == 1 => {
            let x = class_of(data, data.rank() - 1);
            if odd {
                plain(entry(
                    vec![
                        trivial(data),
                        cyclic(data, &g.scale(2, &x), t(1, 2)),
                        cyclic(data, &x, t(0, 1)),
                        cyclic(data, &x, t(1, 2)),
                    ],
                    false,
                ))
            } else {
                plain(entry((0..4).map(|k| cyclic(data, &x, t(k, 4))).collect(), true))
            }
        }
        Family::D => {
            let x1 = class_of(data, data.rank() - 2);
            let x2 = class_of(data, data.rank() - 1);
            let full = |m: [[i64; 2]; 2]| -> Pairing {
                let e: Vec<Vec<Q>> = m
                    .iter()
                    .map(|r| r.iter().map(|&s| if s == 1 { t(0, 1) } else { t(1, 2) }).collect())
                    .collect();
                Pairing::on_generators(g, &[x1.clone(), x2.clone()], &[x1.clone(), x2.clone()], &e)
                    .expect("sign matrices are bihomomorphisms")
            };
            if !odd {
                let sols = (0..16)
                    .map(|b| {
                        let s = |i: usize| if b >> i & 1 == 1 { -1 } else { 1 };
                        full([[s(0), s(1)], [s(2), s(3)]])
                    })
                    .collect();
                return Ok(plain(entry(sols, true)));
            }
            let order2 = [x1.clone(), x2.clone(), g.add(&x1, &x2)];
            let mut base = vec![trivial(data)];
            base.extend(order2.iter().map(|x| cyclic(data, x, t(1, 2))));
            for a in &order2 {
                for b in order2.iter().filter(|b| *b != a) {
                    base.push(
                        Pairing::on_generators(g, &[a.clone()], &[b.clone()], &[vec![t(0, 1)]])
                            .expect("cross pairing"),
                    );
                }
            }
            let printed_signs = [
                [[1, 1], [1, 1]],
                [[-1, -1], [-1, -1]],
                [[1, 1], [1, -1]],
                [[-1, 1], [1, 1]],
                [[-1, 1], [-1, -1]],
                [[-1, -1], [1, -1]],
            ];
            let mut printed = base;
            printed.extend(printed_signs.iter().map(|&m| full(m)));
            // Other residue of n mod 4: twist by σ(x, y) = (−1)^{(x₁+x₂)(y₁+y₂)}.
            let twisted = printed
                .iter()
                .map(|p| {
                    let b1: Vec<Vec<i64>> = p.h1.basis.iter().map(|b| b.0.clone()).collect();
                    let b2: Vec<Vec<i64>> = p.h2.basis.iter().map(|b| b.0.clone()).collect();
                    let e: Vec<Vec<Q>> = b1
                        .iter()
                        .enumerate()
                        .map(|(i, x)| {
                            b2.iter()
                                .enumerate()
                                .map(|(j, y)| p.omega[i][j] + t((x[0] + x[1]) * (y[0] + y[1]), 2))
                                .collect()
                        })
                        .collect();
                    Pairing::on_generators(g, &b1, &b2, &e).expect("twist is a bihomomorphism")
                })
                .collect();
            Expectation {
                printed: entry(printed, false),
                alternative: Some(entry(twisted, false)),
                open_question: Some(OpenQuestion::SpinorSigns),
            }
        }
        Family::E if n == 6 => {
            let x = gen();
            let ks: &[i64] = if l % 3 == 0 {
                &[0, 1, 2]
            } else if odd {
                &[0, 1]
            } else {
                &[0, 2]
            };
            let mut sols: Vec<Pairing> = ks.iter().map(|&k| cyclic(data, &x, t(k, 3))).collect();
            if l % 3 != 0 {
                sols.insert(0, trivial(data));
            }
            plain(entry(sols, !odd))
        }
        Family::E if n == 7 => {
            let sols = if odd {
                vec![trivial(data), cyclic(data, &gen(), t(0, 1))]
            } else {
                vec![cyclic(data, &gen(), t(0, 1)), cyclic(data, &gen(), t(1, 2))]
            };
            plain(entry(sols, !odd))
        }
        Family::E | Family::G => plain(entry(vec![trivial(data)], !odd)),
        Family::F => plain(entry(vec![trivial(data)], l % 4 == 0)),
    })
}

/// Outcome of comparing one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Match,
    Warn,
    Fail,
}

#[derive(Debug, Clone)]
pub struct CellComparison {
    pub status: Status,
    pub solutions_match: bool,
    pub star_match: bool,
    pub matches_alternative: bool,
    pub expectation: Expectation,
}

/// Same set of `g`-functions on `π₁`.
pub fn same_solution_set(data: &RootSystemData, a: &[Pairing], b: &[Pairing]) -> bool {
    let g = &data.pi1.group;
    let ga: Vec<_> = a.iter().map(|p| pairing_solution(g, p)).collect();
    let gb: Vec<_> = b.iter().map(|p| pairing_solution(g, p)).collect();
    ga.len() == gb.len()
        && ga.iter().all(|x| gb.contains(x))
        && gb.iter().all(|x| ga.contains(x))
}

/// Compares computed solutions against the table; open-question cells that disagree with the
/// printed reading are warnings.
pub fn compare(
    data: &RootSystemData,
    ell: u32,
    computed: &[R0Solution],
    computed_starred: bool,
) -> Result<CellComparison> {
    let expectation = expectation(data, ell)?;
    let pairings: Vec<Pairing> = computed.iter().map(|s| s.pairing.clone()).collect();
    let solutions_match = same_solution_set(data, &pairings, &expectation.printed.solutions);
    let matches_alternative = expectation
        .alternative
        .as_ref()
        .is_some_and(|alt| same_solution_set(data, &pairings, &alt.solutions));
    let star_match = computed_starred == expectation.printed.starred;
    let status = if solutions_match && star_match {
        Status::Match
    } else if expectation.open_question.is_some() && star_match {
        Status::Warn
    } else {
        Status::Fail
    };
    Ok(CellComparison {
        status,
        solutions_match,
        star_match,
        matches_alternative,
        expectation,
    })
}
