#![allow(dead_code)]

use uqr::equations::Diamond;
use uqr::lattice::{cent_q, quotient, IntegerLattice};
use uqr::rootdata::RootSystemData;

/// Compares `cent_q(l1, l2)` with direct membership over `x ∈ [0, ℓ·den)^k` in `l1`
/// coordinates. Both sides are periodic under `ℓ·den·l1`, so agreement on the box is equality.
pub fn centralizer_oracle(
    d: &RootSystemData,
    l1: &IntegerLattice,
    l2: &IntegerLattice,
    ell: u32,
) -> Result<(), String> {
    let cent = cent_q(d, l1, l2, ell).map_err(|e| e.to_string())?;
    let b1 = l1.basis();
    let b2 = l2.basis();
    let period = (i64::from(ell) * d.gram_denominator()) as usize;
    let total = period.pow(b1.len() as u32);
    let mut members = 0usize;
    for idx in 0..total {
        let mut rest = idx;
        let mut eta = vec![0i64; d.rank()];
        for b in &b1 {
            let x = (rest % period) as i64;
            rest /= period;
            for (e, y) in eta.iter_mut().zip(b) {
                *e += x * y;
            }
        }
        let central = b2
            .iter()
            .all(|w| (d.killing_int(&eta, w) / i64::from(ell)).is_integer());
        if cent.contains(&eta) != central {
            return Err(format!("{} ell={ell}: membership of {eta:?} differs", d.ty));
        }
        members += usize::from(central);
    }
    let index = quotient(l1, &cent).map_err(|e| e.to_string())?.order();
    if members * index != total {
        return Err(format!("{} ell={ell}: index {index} but {members}/{total} members", d.ty));
    }
    Ok(())
}

/// `(N, m, l, diamond)` with `A = G = ℤ_N`, `φ1(a) = ξ_N^m`, `φ2(a) = lλ` and `D = 0`, for
/// `N ≤ 8`, `3 ≤ l ≤ 12`.
pub fn cyclic_diamonds() -> Vec<(i64, i64, i64, Diamond)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        for l in 3..=12 {
            for m in 0..n {
                let dia = Diamond::cyclic(n, m, l);
                if dia.d.order() == 1 {
                    out.push((n, m, l, dia));
                }
            }
        }
    }
    out
}

pub fn divisors(n: i64) -> impl Iterator<Item = i64> {
    (1..=n).filter(move |d| n % d == 0)
}
