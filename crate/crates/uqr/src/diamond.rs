//! The quotient diamond attached to `(Φ, ℓ, Λ′)`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::equations::{frac, Diamond};
use crate::error::{domain, Error, Result};
use crate::group::{FiniteAbelianGroup, Subgroup};
use crate::lattice::{
    cent_q, ell_lattice_square, intersect, lusztig_kernel, quotient, Base, IntegerLattice,
    Quotient,
};
use crate::rootdata::{Family, RootSystemData, Q};

/// Choice of `Λ′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    /// `Λ_R^{[ℓ]}`.
    Square,
    /// `2Λ_R^{(ℓ)}`.
    Lusztig,
}

impl Kernel {
    pub fn lattice(self, data: &RootSystemData, ell: u32) -> IntegerLattice {
        match self {
            Kernel::Square => ell_lattice_square(data, Base::Roots, ell),
            Kernel::Lusztig => lusztig_kernel(data, ell),
        }
    }
}

/// `Λ_R^{[ℓ]} = 2Λ_R^{(ℓ)}`.
pub fn kernels_agree(data: &RootSystemData, ell: u32) -> bool {
    Kernel::Square.lattice(data, ell) == Kernel::Lusztig.lattice(data, ell)
}

/// `Cent^q(Λ_R)`, `Cent^q(Λ_W)` and their intersections with `Λ_R`.
#[derive(Debug, Clone)]
pub struct DiamondLattices {
    pub a: IntegerLattice,
    pub b: IntegerLattice,
    pub c: IntegerLattice,
    pub d: IntegerLattice,
}

pub fn diamond_lattices(data: &RootSystemData, ell: u32) -> Result<DiamondLattices> {
    let w = IntegerLattice::weight_lattice(data);
    let r = IntegerLattice::root_lattice(data);
    let a = cent_q(data, &w, &r, ell)?;
    let b = cent_q(data, &w, &w, ell)?;
    let c = intersect(&a, &r)?;
    let d = intersect(&b, &r)?;
    Ok(DiamondLattices { a, b, c, d })
}

#[derive(Debug, Clone)]
pub struct DiamondSpec {
    pub data: RootSystemData,
    pub ell: u32,
    pub lambda_prime: IntegerLattice,
    pub lattices: DiamondLattices,
    /// `A = Cent^q(Λ_R)/Λ′` with projection and lifting.
    pub a_quotient: Quotient,
    pub diamond: Diamond,
    pub cyclic_params: Option<CyclicParams>,
}

/// `(N, m_[n], ℓ_[n])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicParams {
    pub n: i64,
    pub m: i64,
    pub ell_n: i64,
}

/// Sub-case of the cyclic criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// `N | m`, `N | l`.
    I,
    /// `N | m`, `N ∤ l`.
    II,
    /// `gcd(m, N) = 1`, `N ∤ l`.
    III,
}

/// The diamond lattices, after checking `2Λ_R^{(ℓ)} ⊆ Λ′ ⊆ Cent^q(Λ_W) ∩ Λ_R`.
pub fn admissible_lattices(
    data: &RootSystemData,
    ell: u32,
    lambda_prime: &IntegerLattice,
) -> Result<DiamondLattices> {
    if ell <= 2 {
        return domain(format!("ell = {ell} must exceed 2"));
    }
    let lattices = diamond_lattices(data, ell)?;
    if !lusztig_kernel(data, ell).is_sublattice_of(lambda_prime) {
        return domain("kernel does not contain 2Λ_R^(ℓ)");
    }
    if !lambda_prime.is_sublattice_of(&lattices.d) {
        return domain("kernel is not contained in Cent^q(Λ_W) ∩ Λ_R");
    }
    Ok(lattices)
}

/// Builds the diamond for an admissible kernel.
pub fn build_diamond(
    data: &RootSystemData,
    ell: u32,
    lambda_prime: &IntegerLattice,
) -> Result<DiamondSpec> {
    let lattices = admissible_lattices(data, ell, lambda_prime)?;
    diamond_from_lattices(data, ell, lambda_prime, lattices)
}

/// `|A| = |Cent^q(Λ_R)/Λ′|` can be large for small kernels; callers gate first.
pub(crate) fn diamond_from_lattices(
    data: &RootSystemData,
    ell: u32,
    lambda_prime: &IntegerLattice,
    lattices: DiamondLattices,
) -> Result<DiamondSpec> {
    let qa = quotient(&lattices.a, lambda_prime)?;
    let pi1 = &data.pi1;
    let gens: Vec<Vec<i64>> = (0..qa.group.factors().len())
        .map(|j| {
            let mut e = vec![0i64; qa.group.factors().len()];
            e[j] = 1;
            qa.lift(&e)
        })
        .collect();
    let phi1: Vec<Vec<Q>> = gens
        .iter()
        .map(|v| {
            pi1.generators
                .iter()
                .map(|&k| {
                    let mut lam = vec![0i64; data.rank()];
                    lam[k] = 1;
                    frac(data.killing_int(v, &lam) / Q::from(i64::from(ell)))
                })
                .collect()
        })
        .collect();
    let phi2: Vec<Vec<i64>> = gens.iter().map(|v| pi1.project(v)).collect();
    let diamond = Diamond::new(pi1.group.clone(), qa.group.clone(), phi1, phi2)?;
    let members = |l: &IntegerLattice| -> Result<Subgroup> {
        let gens: Vec<Vec<i64>> = l
            .basis()
            .iter()
            .map(|v| qa.project(v))
            .collect::<Result<_>>()?;
        Ok(qa.group.span(&gens))
    };
    for (name, lat, abstract_) in [
        ("B", &lattices.b, &diamond.b),
        ("C", &lattices.c, &diamond.c),
        ("D", &lattices.d, &diamond.d),
    ] {
        if members(lat)?.members != abstract_.members {
            return Err(Error::Consistency(format!(
                "{name} computed from lattices differs from the kernel of the induced map"
            )));
        }
    }
    let cyclic_params = cyclic_params(data, ell).ok();
    Ok(DiamondSpec {
        data: data.clone(),
        ell,
        lambda_prime: lambda_prime.clone(),
        lattices,
        a_quotient: qa,
        diamond,
        cyclic_params,
    })
}

/// `N = |π₁|`, `m_[n] = N(λ_n,λ_n)/gcd(ℓ,d_n)`, `ℓ_[n] = ℓ/gcd(ℓ,d_n)`.
pub fn cyclic_params(data: &RootSystemData, ell: u32) -> Result<CyclicParams> {
    if !data.pi1.group.is_cyclic() {
        return domain(format!("fundamental group of {} is not cyclic", data.ty));
    }
    let n = data.pi1.group.order() as i64;
    let last = data.rank() - 1;
    let ell = i64::from(ell);
    let g = ell.gcd(&data.d[last]);
    let m = Q::from(n) * data.gram_weights[last][last] / Q::from(g);
    debug_assert!(m.is_integer());
    Ok(CyclicParams {
        n,
        m: m.to_integer(),
        ell_n: ell / g,
    })
}

pub fn classify(p: CyclicParams) -> Result<Case> {
    let CyclicParams { n, m, ell_n: l } = p;
    match (m % n == 0, l % n == 0) {
        (true, true) => Ok(Case::I),
        (true, false) => Ok(Case::II),
        (false, _) if m.gcd(&n) == 1 && l % n != 0 => Ok(Case::III),
        _ => Err(Error::Classification(format!(
            "(N, m, l) = ({n}, {m}, {l}) fits none of the cases"
        ))),
    }
}

pub fn classify_case(spec: &DiamondSpec) -> Result<Case> {
    let p = spec
        .cyclic_params
        .ok_or_else(|| Error::Domain("fundamental group is not cyclic".into()))?;
    classify(p)
}

/// Invariant factors of a subgroup, from its direct-sum basis.
pub fn subgroup_factors(h: &Subgroup) -> Vec<i64> {
    let mut f: Vec<i64> = h.basis.iter().map(|b| b.1).collect();
    f.sort_unstable();
    f
}

/// `(G, A, B, C, D, φ1, φ2)` with groups as invariant factors and cyclic maps on a chosen generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondShape {
    pub g: Vec<i64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub d: Vec<i64>,
    /// `φ1(a)` on the generator of `π₁` as an exponent `t` of `exp(2πi t)`, for cyclic `A` and `G`.
    pub phi1: Option<Q>,
    /// `φ2(a)` as a multiple of the generator of `π₁`.
    pub phi2: Option<i64>,
}

impl DiamondSpec {
    /// Shape with `a` the class of `ℓ_[n]λ_n` when that generates `A`, else the first generator.
    pub fn shape(&self) -> DiamondShape {
        let dia = &self.diamond;
        let factors = |g: &FiniteAbelianGroup| g.factors().to_vec();
        let (mut phi1, mut phi2) = (None, None);
        if dia.a.is_cyclic() && dia.g.is_cyclic() {
            let a_gen = self.preferred_generator();
            if let Some(a) = a_gen {
                phi1 = Some(dia.character(&a).first().copied().unwrap_or_else(Q::zero));
                phi2 = Some(dia.shift(&a).first().copied().unwrap_or(0));
            } else {
                phi1 = Some(Q::zero());
                phi2 = Some(0);
            }
        }
        DiamondShape {
            g: factors(&dia.g),
            a: factors(&dia.a),
            b: subgroup_factors(&dia.b),
            c: subgroup_factors(&dia.c),
            d: subgroup_factors(&dia.d),
            phi1,
            phi2,
        }
    }

    fn preferred_generator(&self) -> Option<Vec<i64>> {
        let a = &self.diamond.a;
        if a.order() == 1 {
            return None;
        }
        let n = self.data.rank();
        let mut v = vec![0i64; n];
        let ell = i64::from(self.ell);
        v[n - 1] = ell / ell.gcd(&self.data.d[n - 1]);
        if let Ok(e) = self.a_quotient.project(&v) {
            if a.element_order(&e) == a.order() as i64 {
                return Some(e);
            }
        }
        let mut e = a.zero();
        e[0] = 1;
        Some(e)
    }
}

impl fmt::Display for DiamondShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grp = |v: &[i64]| -> String {
            if v.is_empty() {
                "Z1".to_string()
            } else {
                v.iter()
                    .map(|d| format!("Z{d}"))
                    .collect::<Vec<_>>()
                    .join("xZ")
                    .replace("xZZ", "xZ")
            }
        };
        let phi1 = match self.phi1 {
            None => "-".to_string(),
            Some(t) if t.is_zero() => "1".to_string(),
            Some(t) if t == Q::new(1, 2) => "-1".to_string(),
            Some(t) => format!("xi{}^{}", t.denom(), t.numer()),
        };
        let phi2 = match self.phi2 {
            None => "-".to_string(),
            Some(0) => "0".to_string(),
            Some(1) => "gen".to_string(),
            Some(k) => format!("{k}*gen"),
        };
        write!(
            f,
            "({}, {}, {}, {}, {}, {}, {})",
            grp(&self.g),
            grp(&self.a),
            grp(&self.b),
            grp(&self.c),
            grp(&self.d),
            phi1,
            phi2
        )
    }
}

/// Cases the cyclic-parameter table allows for a family; `None` for non-cyclic `π₁`.
pub fn listed_cases(data: &RootSystemData, ell: u32) -> Option<Vec<Case>> {
    use Case::*;
    let n = data.rank();
    let all = vec![I, II, III];
    Some(match data.ty.family {
        Family::A => vec![III],
        Family::B => all,
        Family::C if ell % 2 == 1 => vec![II],
        Family::C => all,
        Family::D if n % 2 == 1 => vec![III],
        Family::D => return None,
        Family::E if n == 6 || n == 7 => vec![III],
        Family::E | Family::F | Family::G => vec![I],
    })
}

/// Case II occurs only for `B_n` with `n` even and `ℓ` odd, and `C_n` with `n` even and `ℓ ≢ 0 mod 4`.
pub fn case_ii_expected(data: &RootSystemData, ell: u32) -> bool {
    let n = data.rank();
    match data.ty.family {
        Family::B => n % 2 == 0 && ell % 2 == 1,
        Family::C => n % 2 == 0 && ell % 4 != 0,
        _ => false,
    }
}
