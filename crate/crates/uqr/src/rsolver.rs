//! R₀-solutions `(H₁, H₂, ω)` for `(Φ, ℓ, Λ′)` and their toral coefficient functions.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclo::{int_sum_vanishes, CycNum};
use crate::diamond::{admissible_lattices, diamond_from_lattices, kernels_agree, DiamondSpec};
use crate::equations::{
    check_diamond_equations, exponent, frac, gcd_criterion, enumerate_pairings, pairing_solution,
    GFunction, Pairing, RootSum, PAIRING_BOUND,
};
use crate::error::{domain, Error, Result};
#[allow(unused_imports)]
use crate::parallel::prelude::*;
use crate::lattice::{cent_q, quotient, IntegerLattice, Quotient};
use crate::rootdata::{substitute_excluded, Family, RootSystemData, Q};

/// Default bound on `|Λ_W/Λ′|` for materializing `f`.
pub const F_INDEX_BOUND: usize = 200;

#[derive(Debug, Clone)]
pub struct R0Solution {
    pub data: RootSystemData,
    pub ell: u32,
    pub pairing: Pairing,
    /// `(d, k)` with `ω(N/d, N/d) = ξ_d^k` for cyclic `π₁`.
    pub dk: Option<(usize, usize)>,
    /// Preimage of `H₁` in `Λ_W`.
    pub lambda1: IntegerLattice,
    /// Preimage of `H₂` in `Λ_W`.
    pub lambda2: IntegerLattice,
    /// `Λ_R^{[ℓ]} = 2Λ_R^{(ℓ)}`.
    pub starred: bool,
}

/// Filter used to decide the diamond-equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Direct evaluation of every equation.
    Brute,
    /// The gcd criterion on cyclic diamonds with `D = 0`; brute force otherwise.
    Gcd,
}

/// Preimage `Λ_R + span(lifts of H)` of a subgroup of `π₁`.
pub fn preimage(data: &RootSystemData, h: &crate::group::Subgroup) -> Result<IntegerLattice> {
    let mut gens: Vec<Vec<i64>> = (0..data.rank()).map(|j| data.simple_root(j)).collect();
    gens.extend(h.basis.iter().map(|(b, _)| data.pi1.lift(b, data.rank())));
    IntegerLattice::from_integer_generators(data, &gens)
}

pub fn solve(data: &RootSystemData, ell: u32, lambda_prime: &IntegerLattice) -> Result<Vec<R0Solution>> {
    solve_with(data, ell, lambda_prime, Method::Brute)
}

pub fn solve_with(
    data: &RootSystemData,
    ell: u32,
    lambda_prime: &IntegerLattice,
    method: Method,
) -> Result<Vec<R0Solution>> {
    if let Some(substitute) = substitute_excluded(data.ty, ell) {
        return Err(Error::Excluded {
            ty: data.ty,
            ell,
            substitute,
        });
    }
    let lattices = admissible_lattices(data, ell, lambda_prime)?;
    // Solutions exist only for Λ′ = Cent^q(Λ_W) ∩ Λ_R.
    if *lambda_prime != lattices.d {
        return Ok(vec![]);
    }
    let spec = diamond_from_lattices(data, ell, lambda_prime, lattices)?;
    let g = &data.pi1.group;
    let starred = kernels_agree(data, ell);
    let mut out = Vec::new();
    for p in enumerate_pairings(g, PAIRING_BOUND)? {
        if !accepts(&spec, &p, method)? {
            continue;
        }
        out.push(R0Solution {
            data: data.clone(),
            ell,
            dk: p.dk(g),
            lambda1: preimage(data, &p.h1)?,
            lambda2: preimage(data, &p.h2)?,
            pairing: p,
            starred,
        });
    }
    out.sort_by(|a, b| solution_key(a).cmp(&solution_key(b)));
    Ok(out)
}

fn solution_key(s: &R0Solution) -> (usize, Vec<usize>, Vec<usize>, Vec<Vec<Q>>) {
    (
        s.pairing.d(),
        s.pairing.h1.members.clone(),
        s.pairing.h2.members.clone(),
        s.pairing.omega.clone(),
    )
}

/// `(N, m′, l′)` read off the diamond when `A ≅ G ≅ ℤ_N` and `D = 0`.
pub fn diamond_cyclic_data(spec: &DiamondSpec) -> Option<(i64, i64, i64)> {
    let dia = &spec.diamond;
    if !dia.g.is_cyclic() || dia.a.order() != dia.g.order() || dia.d.order() != 1 {
        return None;
    }
    let n = dia.g.order() as i64;
    if n == 1 {
        return Some((1, 0, 0));
    }
    if dia.a.factors().len() != 1 {
        return None;
    }
    let m = dia.phi1[0][0] * Q::from(n);
    Some((n, m.to_integer(), dia.phi2[0][0]))
}

fn accepts(spec: &DiamondSpec, p: &Pairing, method: Method) -> Result<bool> {
    let g = &spec.diamond.g;
    if spec.diamond.a.order() == 1 {
        return Ok(true);
    }
    if method == Method::Gcd {
        if let (Some((n, m, l)), Some((d, k))) = (diamond_cyclic_data(spec), p.dk(g)) {
            return gcd_criterion(n, d as i64, k as i64, l, m);
        }
    }
    check_diamond_equations(&pairing_solution(g, p), &spec.diamond)
}

/// Solutions for `D_n`, `n` even, with `Λ′ = Λ_R^{[ℓ]}`.
pub fn dn_even_solutions(data: &RootSystemData, ell: u32) -> Result<Vec<R0Solution>> {
    if data.ty.family != Family::D || data.rank() % 2 != 0 {
        return domain(format!("{} is not of type D_n with n even", data.ty));
    }
    let lp = crate::diamond::Kernel::Square.lattice(data, ell);
    solve(data, ell, &lp)
}

/// Signs `φ1(ℓ_[i] λ_i)(λ_j)` on the two spinor weights, read from the Killing form.
pub fn spinor_sign_table(spec: &DiamondSpec) -> Result<[[i8; 2]; 2]> {
    let data = &spec.data;
    if data.pi1.group.factors() != [2, 2] {
        return domain(format!("{} does not have π₁ = ℤ₂ × ℤ₂", data.ty));
    }
    let ell = i64::from(spec.ell);
    let mut t = [[0i8; 2]; 2];
    for (i, &wi) in data.pi1.generators.iter().enumerate() {
        for (j, &wj) in data.pi1.generators.iter().enumerate() {
            let mut a = vec![0i64; data.rank()];
            a[wi] = ell / ell.gcd(&data.d[wi]);
            let mut b = vec![0i64; data.rank()];
            b[wj] = 1;
            let e = frac(data.killing_int(&a, &b) / Q::from(ell));
            t[i][j] = if e.is_zero() {
                1
            } else if e == Q::new(1, 2) {
                -1
            } else {
                return Err(Error::Consistency(format!("character value exp(2πi·{e}) is not a sign")));
            };
        }
    }
    Ok(t)
}

/// `f(μ, ν) = (1/den) Σ c·ζ_M^e` on `Λ_W/Λ′ × Λ_W/Λ′`.
#[derive(Debug, Clone)]
pub struct FFunction {
    data: RootSystemData,
    ell: u32,
    domain: Quotient,
    reps: Vec<Vec<i64>>,
    modulus: u32,
    den: i64,
    cells: Vec<Vec<(u32, i64)>>,
}

impl FFunction {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn domain(&self) -> &Quotient {
        &self.domain
    }

    pub fn representatives(&self) -> &[Vec<i64>] {
        &self.reps
    }

    /// Index of the class of an integral weight.
    pub fn index_of(&self, w: &[i64]) -> Result<usize> {
        Ok(self.domain.group.index(&self.domain.project(w)?))
    }

    pub fn value(&self, x: usize, y: usize) -> CycNum {
        let mut h = vec![BigRational::zero(); self.modulus as usize];
        for &(e, c) in &self.cells[x * self.order() + y] {
            h[e as usize] += BigRational::new(c.into(), self.den.into());
        }
        CycNum::from_exponent_sum(self.modulus, &h)
    }

    /// Value at a pair of integral weights.
    pub fn value_at(&self, mu: &[i64], nu: &[i64]) -> Result<CycNum> {
        Ok(self.value(self.index_of(mu)?, self.index_of(nu)?))
    }

    /// The identically zero function on the same domain.
    pub fn zeroed(&self) -> Self {
        Self {
            cells: vec![vec![]; self.cells.len()],
            ..self.clone()
        }
    }
}

fn materialize(
    data: &RootSystemData,
    lambda_prime: &IntegerLattice,
    bound: usize,
) -> Result<(Quotient, Vec<Vec<i64>>)> {
    let w = IntegerLattice::weight_lattice(data);
    let size = usize::try_from(lambda_prime.covolume()).unwrap_or(usize::MAX);
    if size == 0 || size > bound {
        return Err(Error::Resource {
            what: "|Λ_W/Λ′|",
            size,
            bound,
        });
    }
    let q = quotient(&w, lambda_prime)?;
    let reps = q.representatives();
    Ok((q, reps))
}

/// `Λ′ ⊆ Cent^q(Λ_W)`, so that `f` does not depend on representatives.
fn check_central(data: &RootSystemData, ell: u32, lambda_prime: &IntegerLattice) -> Result<()> {
    let w = IntegerLattice::weight_lattice(data);
    if !lambda_prime.is_sublattice_of(&cent_q(data, &w, &w, ell)?) {
        return Err(Error::Consistency(
            "f depends on coset representatives: Λ′ is not contained in Cent^q(Λ_W)".into(),
        ));
    }
    Ok(())
}

fn modulus_for(data: &RootSystemData, ell: u32, other: u32) -> u32 {
    (ell * data.gram_denominator() as u32).lcm(&other)
}

/// `|Λ_R/Λ′|`.
fn root_index(data: &RootSystemData, lambda_prime: &IntegerLattice) -> Result<i64> {
    let r = IntegerLattice::root_lattice(data);
    Ok(quotient(&r, lambda_prime)?.order() as i64)
}

/// `f(μ, ν) = q^{-(μ,ν)} ω(μ̄, ν̄) / |Λ₁/Λ′|` on `Λ₁ × Λ₂`, zero elsewhere.
pub fn f_from_solution(sol: &R0Solution, lambda_prime: &IntegerLattice) -> Result<FFunction> {
    f_from_pairing(&sol.data, sol.ell, lambda_prime, &sol.pairing, F_INDEX_BOUND)
}

/// The same formula for an arbitrary pairing on `π₁`.
pub fn f_from_pairing(
    data: &RootSystemData,
    ell: u32,
    lambda_prime: &IntegerLattice,
    p: &Pairing,
    bound: usize,
) -> Result<FFunction> {
    check_central(data, ell, lambda_prime)?;
    let (domain, reps) = materialize(data, lambda_prime, bound)?;
    let pi1 = &data.pi1;
    let g = &pi1.group;
    let modulus = modulus_for(data, ell, exponent(g));
    let den = p.d() as i64 * root_index(data, lambda_prime)?;
    let classes: Vec<Vec<i64>> = reps.iter().map(|r| pi1.project(r)).collect();
    let n = reps.len();
    let ellq = Q::from(i64::from(ell));
    let cells = (0..n * n)
        .map(|ix| {
            let (x, y) = (ix / n, ix % n);
            match p.exponent(g, &classes[x], &classes[y]) {
                None => vec![],
                Some(t) => {
                    let s = frac(t - data.killing_int(&reps[x], &reps[y]) / ellq);
                    vec![((s * Q::from(i64::from(modulus))).to_integer() as u32, 1)]
                }
            }
        })
        .collect();
    Ok(FFunction {
        data: data.clone(),
        ell,
        domain,
        reps,
        modulus,
        den,
        cells,
    })
}

/// Integer accumulator for `Σ c·ζ_M^e`.
fn bump(h: &mut [i128], m: u32, e: u32, c: i128) {
    h[(e % m) as usize] += c;
}

struct FContext<'a> {
    f: &'a FFunction,
    n: usize,
    m: u32,
    add: Vec<usize>,
}

impl<'a> FContext<'a> {
    fn new(f: &'a FFunction) -> Self {
        let grp = &f.domain.group;
        let els = grp.elements();
        Self {
            f,
            n: els.len(),
            m: f.modulus,
            add: grp.add_table(),
        }
    }

    fn cell(&self, x: usize, y: usize) -> &[(u32, i64)] {
        &self.f.cells[x * self.n + y]
    }

    /// `f(μ+α, ν) = q^{-(ν,α)} f(μ, ν)` and the mirrored rule, for simple `α`.
    fn translation(&self) -> bool {
        let data = &self.f.data;
        let ellq = Q::from(i64::from(self.f.ell));
        let mq = Q::from(i64::from(self.m));
        for j in 0..data.rank() {
            let alpha = data.simple_root(j);
            let Ok(a) = self.f.index_of(&alpha) else {
                return false;
            };
            let shift: Vec<u32> = self
                .f
                .reps
                .iter()
                .map(|r| (frac(-data.killing_int(r, &alpha) / ellq) * mq).to_integer() as u32)
                .collect();
            for x in 0..self.n {
                let xa = self.add[x * self.n + a];
                for y in 0..self.n {
                    let ya = self.add[y * self.n + a];
                    if !self.same_up_to(self.cell(xa, y), self.cell(x, y), shift[y])
                        || !self.same_up_to(self.cell(x, ya), self.cell(x, y), shift[x])
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn same_up_to(&self, lhs: &[(u32, i64)], rhs: &[(u32, i64)], s: u32) -> bool {
        let mut h = vec![0i128; self.m as usize];
        for &(e, c) in lhs {
            bump(&mut h, self.m, e, i128::from(c));
        }
        for &(e, c) in rhs {
            bump(&mut h, self.m, e + s, -i128::from(c));
        }
        int_sum_vanishes(self.m, &h)
    }

    /// `Σ_{ν1+ν2=ν} f(μ1,ν1) f(μ2,ν2) = δ_{μ1μ2} f(μ1,ν)` for all `ν`.
    fn convolution_first(&self, x1: usize, x2: usize) -> bool {
        let (n, m) = (self.n, self.m as usize);
        let mut h = vec![0i128; n * m];
        for y1 in 0..n {
            let a = self.cell(x1, y1);
            if a.is_empty() {
                continue;
            }
            for y2 in 0..n {
                let b = self.cell(x2, y2);
                let y = self.add[y1 * n + y2];
                for &(e1, c1) in a {
                    for &(e2, c2) in b {
                        bump(&mut h[y * m..(y + 1) * m], self.m, e1 + e2, i128::from(c1 * c2));
                    }
                }
            }
        }
        self.close(h, |y| if x1 == x2 { Some(self.cell(x1, y)) } else { None })
    }

    /// `Σ_{μ1+μ2=μ} f(μ1,ν1) f(μ2,ν2) = δ_{ν1ν2} f(μ,ν1)` for all `μ`.
    fn convolution_second(&self, y1: usize, y2: usize) -> bool {
        let (n, m) = (self.n, self.m as usize);
        let mut h = vec![0i128; n * m];
        for x1 in 0..n {
            let a = self.cell(x1, y1);
            if a.is_empty() {
                continue;
            }
            for x2 in 0..n {
                let b = self.cell(x2, y2);
                let x = self.add[x1 * n + x2];
                for &(e1, c1) in a {
                    for &(e2, c2) in b {
                        bump(&mut h[x * m..(x + 1) * m], self.m, e1 + e2, i128::from(c1 * c2));
                    }
                }
            }
        }
        self.close(h, |x| if y1 == y2 { Some(self.cell(x, y1)) } else { None })
    }

    /// Subtracts `den·rhs` from each block and tests every block for vanishing.
    fn close<'b>(&'b self, mut h: Vec<i128>, rhs: impl Fn(usize) -> Option<&'b [(u32, i64)]>) -> bool {
        let m = self.m as usize;
        let den = i128::from(self.f.den);
        (0..self.n).all(|z| {
            let block = &mut h[z * m..(z + 1) * m];
            if let Some(r) = rhs(z) {
                for &(e, c) in r {
                    bump(block, self.m, e, -den * i128::from(c));
                }
            }
            int_sum_vanishes(self.m, block)
        })
    }

    /// `Σ_μ f(μ, ν) = δ_{ν,0}` and `Σ_ν f(μ, ν) = δ_{μ,0}`.
    fn normalization(&self) -> bool {
        let zero = self.f.domain.group.index(&self.f.domain.group.zero());
        let den = i128::from(self.f.den);
        (0..self.n).all(|z| {
            let mut h1 = vec![0i128; self.m as usize];
            let mut h2 = vec![0i128; self.m as usize];
            for t in 0..self.n {
                for &(e, c) in self.cell(t, z) {
                    bump(&mut h1, self.m, e, i128::from(c));
                }
                for &(e, c) in self.cell(z, t) {
                    bump(&mut h2, self.m, e, i128::from(c));
                }
            }
            if z == zero {
                h1[0] -= den;
                h2[0] -= den;
            }
            int_sum_vanishes(self.m, &h1) && int_sum_vanishes(self.m, &h2)
        })
    }

    /// One representative index per class of `Λ_W/Λ_R`.
    fn root_coset_reps(&self) -> Vec<usize> {
        let pi1 = &self.f.data.pi1;
        let mut seen = std::collections::BTreeSet::new();
        (0..self.n)
            .filter(|&x| seen.insert(pi1.project(&self.f.reps[x])))
            .collect()
    }
}

/// Exact check of the translation, convolution and normalization identities on `Λ_W/Λ′`.
pub fn check_f_equations(f: &FFunction) -> Result<bool> {
    check_f_equations_with(f, F_INDEX_BOUND, false)
}

/// With `exhaustive`, the convolutions run over all pairs instead of one first index per
/// `Λ_R`-coset, which suffices once translation holds.
pub fn check_f_equations_with(f: &FFunction, bound: usize, exhaustive: bool) -> Result<bool> {
    if f.order() > bound {
        return Err(Error::Resource {
            what: "|Λ_W/Λ′|",
            size: f.order(),
            bound,
        });
    }
    let ctx = FContext::new(f);
    if !ctx.translation() || !ctx.normalization() {
        return Ok(false);
    }
    let firsts = if exhaustive {
        (0..ctx.n).collect()
    } else {
        ctx.root_coset_reps()
    };
    let pairs: Vec<(usize, usize)> = firsts
        .iter()
        .flat_map(|&a| (0..ctx.n).map(move |b| (a, b)))
        .collect();
    let ok = iter_par!(pairs)
        .all(|(a, b)| ctx.convolution_first(a, b) && ctx.convolution_second(a, b));
    Ok(ok)
}

/// `g(μ̄, ν̄) = |Λ_R/Λ′|·q^{(μ,ν)}·f(μ, ν)` on `π₁ × π₁`.
pub fn g_from_f(f: &FFunction, lambda_prime: &IntegerLattice) -> Result<GFunction> {
    let ctx = FContext::new(f);
    if !ctx.translation() {
        return Err(Error::Domain(
            "the transform to π₁ is undefined: f violates the translation rule".into(),
        ));
    }
    let data = &f.data;
    let g = data.pi1.group.clone();
    let k = g.order();
    let scale = Q::new(root_index(data, lambda_prime)?, f.den);
    let ellq = Q::from(i64::from(f.ell));
    let mq = Q::from(i64::from(f.modulus));
    let mut values: Vec<Option<RootSum>> = vec![None; k * k];
    for x in 0..f.order() {
        let cx = g.index(&data.pi1.project(&f.reps[x]));
        for y in 0..f.order() {
            let cy = g.index(&data.pi1.project(&f.reps[y]));
            let s = (frac(data.killing_int(&f.reps[x], &f.reps[y]) / ellq) * mq).to_integer() as u32;
            let mut v: RootSum = f.cells[x * f.order() + y]
                .iter()
                .map(|&(e, c)| ((e + s) % f.modulus, scale * Q::from(c)))
                .collect();
            v.sort();
            let slot = &mut values[cx * k + cy];
            match slot {
                None => *slot = Some(v),
                Some(prev) => {
                    if root_sum_value(f.modulus, prev) != root_sum_value(f.modulus, &v) {
                        return Err(Error::Consistency(
                            "g depends on the representative of a π₁ class".into(),
                        ));
                    }
                }
            }
        }
    }
    GFunction::new(
        g,
        f.modulus,
        values.into_iter().map(Option::unwrap_or_default).collect(),
    )
}

fn root_sum_value(m: u32, v: &RootSum) -> CycNum {
    let mut h = vec![BigRational::zero(); m as usize];
    for &(e, c) in v {
        h[e as usize] += BigRational::new((*c.numer()).into(), (*c.denom()).into());
    }
    CycNum::from_exponent_sum(m, &h)
}

/// `f(μ, ν) = q^{-(μ,ν)} g(μ̄, ν̄) / |Λ_R/Λ′|`.
pub fn f_from_g(
    g: &GFunction,
    data: &RootSystemData,
    ell: u32,
    lambda_prime: &IntegerLattice,
) -> Result<FFunction> {
    if *g.group() != data.pi1.group {
        return domain("g is not defined on the fundamental group");
    }
    check_central(data, ell, lambda_prime)?;
    let (domain, reps) = materialize(data, lambda_prime, F_INDEX_BOUND)?;
    let modulus = modulus_for(data, ell, g.order());
    let stretch = modulus / g.order();
    let root = root_index(data, lambda_prime)?;
    let den_g = (0..g.group().order())
        .flat_map(|x| (0..g.group().order()).map(move |y| (x, y)))
        .flat_map(|(x, y)| g.raw(x, y).iter().map(|t| *t.1.denom()))
        .fold(1i64, |a, b| a.lcm(&b));
    let den = root * den_g;
    let pi = &data.pi1;
    let cls: Vec<usize> = reps.iter().map(|r| pi.group.index(&pi.project(r))).collect();
    let n = reps.len();
    let ellq = Q::from(i64::from(ell));
    let mq = Q::from(i64::from(modulus));
    let cells = (0..n * n)
        .map(|ix| {
            let (x, y) = (ix / n, ix % n);
            let s = (frac(-data.killing_int(&reps[x], &reps[y]) / ellq) * mq).to_integer() as u32;
            g.raw(cls[x], cls[y])
                .iter()
                .filter(|t| !t.1.is_zero())
                .map(|&(e, c)| ((e * stretch + s) % modulus, (c * Q::from(den_g)).to_integer()))
                .collect()
        })
        .collect();
    Ok(FFunction {
        data: data.clone(),
        ell,
        domain,
        reps,
        modulus,
        den,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diamond::Kernel;
    use crate::rootdata::{build, RootSystemType};

    fn data(f: Family, n: usize) -> RootSystemData {
        build(RootSystemType::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn a1_odd_ell_has_two_solutions() {
        let a1 = data(Family::A, 1);
        let lp = Kernel::Square.lattice(&a1, 5);
        let sols = solve(&a1, 5, &lp).unwrap();
        let dks: Vec<_> = sols.iter().map(|s| s.dk.unwrap()).collect();
        assert_eq!(dks, vec![(1, 1), (2, 2)]);
        let f = f_from_solution(&sols[1], &lp).unwrap();
        assert_eq!(f.order(), 10);
        assert_eq!(f.value(0, 0), CycNum::from_q(Q::new(1, 10)));
        assert!(check_f_equations(&f).unwrap());
    }

    #[test]
    fn zero_f_fails() {
        let a1 = data(Family::A, 1);
        let lp = Kernel::Square.lattice(&a1, 5);
        let sols = solve(&a1, 5, &lp).unwrap();
        let f = f_from_solution(&sols[0], &lp).unwrap();
        assert!(!check_f_equations(&f.zeroed()).unwrap());
    }

    #[test]
    fn excluded_pair_is_an_error() {
        let g2 = data(Family::G, 2);
        let lp = Kernel::Square.lattice(&g2, 5);
        assert!(matches!(solve(&g2, 6, &lp), Err(Error::Excluded { .. })));
    }

    #[test]
    fn d_odd_rank_is_rejected() {
        assert!(dn_even_solutions(&data(Family::D, 5), 5).is_err());
    }
}
