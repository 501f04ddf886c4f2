//! Cartan data, Killing pairing and fundamental groups of the simple root systems.
//!
//! Weights are written in the fundamental-weight basis. Simple root `α_j` is
//! column `j` of the Cartan matrix `a_ij = 2(α_i,α_j)/(α_i,α_i)` and fundamental
//! weight `λ_j` in simple-root coordinates is column `j` of its inverse.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::group::FiniteAbelianGroup;

pub type Q = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            Family::E => 6,
            Family::F => 4,
            Family::G => 2,
        }
    }

    pub fn admits(self, rank: usize) -> bool {
        match self {
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            _ => rank >= self.min_rank(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => domain(format!("unknown root system family {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.admits(rank) {
            return domain(format!("rank {rank} is out of range for family {family}"));
        }
        Ok(Self { family, rank })
    }

    pub(crate) const fn of(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() < 2 {
            return domain(format!("cannot parse root system {s:?}"));
        }
        let (fam, rank) = s.split_at(1);
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse rank in {s:?}")))?;
        RootSystemType::new(fam.parse()?, rank)
    }
}

/// Designated generators of `Λ_W/Λ_R`, given by fundamental-weight indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalGroup {
    /// Invariant factors in the designated presentation: `[]`, `[N]` or `[2, 2]`.
    pub group: FiniteAbelianGroup,
    /// `generators[k]` is the weight index whose class is the k-th group generator.
    pub generators: Vec<usize>,
    /// `images[i]` is the class of `λ_i` in designated coordinates.
    pub images: Vec<Vec<i64>>,
}

impl FundamentalGroup {
    /// Class of an integral weight.
    pub fn project(&self, weight: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.group.factors().len()];
        for (c, img) in weight.iter().zip(&self.images) {
            for (o, g) in out.iter_mut().zip(img) {
                *o += c * g;
            }
        }
        self.group.reduce(&out)
    }

    /// Representative weight `Σ e_k λ_{generators[k]}`.
    pub fn lift(&self, element: &[i64], rank: usize) -> Vec<i64> {
        let mut w = vec![0i64; rank];
        for (e, &g) in element.iter().zip(&self.generators) {
            w[g] += e;
        }
        w
    }
}

#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub ty: RootSystemType,
    /// `a_ij`.
    pub cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i,α_i)/2`.
    pub d: Vec<i64>,
    /// `(α_i,α_j) = d_i a_ij`.
    pub symmetrized: Vec<Vec<i64>>,
    /// Columns are the fundamental weights in simple-root coordinates.
    pub weight_to_root: Vec<Vec<Q>>,
    /// `(λ_i,λ_j)`.
    pub gram_weights: Vec<Vec<Q>>,
    pub pi1: FundamentalGroup,
}

impl PartialEq for RootSystemData {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

impl Eq for RootSystemData {}

fn chain(n: usize, diag: &[i64], off: &[i64]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = diag[i];
        if i + 1 < n {
            m[i][i + 1] = off[i];
            m[i + 1][i] = off[i];
        }
    }
    m
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        m[i - 1][j - 1] = -1;
        m[j - 1][i - 1] = -1;
    }
    m
}

/// Symmetrized Cartan matrix and symmetrizers.
fn symmetrized_cartan(ty: RootSystemType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = ty.rank;
    match ty.family {
        Family::A => (chain(n, &vec![2; n], &vec![-1; n]), vec![1; n]),
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            let diag: Vec<i64> = d.iter().map(|x| 2 * x).collect();
            (chain(n, &diag, &vec![-2; n]), d)
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            let diag: Vec<i64> = d.iter().map(|x| 2 * x).collect();
            let mut off = vec![-1; n];
            off[n - 2] = -2;
            (chain(n, &diag, &off), d)
        }
        Family::D => {
            let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 2, n));
            (from_edges(n, &edges), vec![1; n])
        }
        Family::E => {
            let mut edges = vec![(1, 3), (2, 4), (3, 4)];
            edges.extend((4..n).map(|i| (i, i + 1)));
            (from_edges(n, &edges), vec![1; n])
        }
        Family::F => (
            vec![
                vec![4, -2, 0, 0],
                vec![-2, 4, -2, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ],
            vec![2, 2, 1, 1],
        ),
        Family::G => (vec![vec![2, -3], vec![-3, 6]], vec![1, 3]),
    }
}

/// Exact inverse of a nonsingular rational matrix.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

/// Exact determinant by fraction-free elimination over the rationals.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            for j in col..n {
                let x = a[col][j];
                a[r][j] -= f * x;
            }
        }
    }
    det
}

fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

fn fundamental_group(weight_to_root: &[Vec<Q>], ty: RootSystemType) -> FundamentalGroup {
    let n = ty.rank;
    // λ ∈ Λ_R iff its simple-root coordinates are integral.
    let in_root_lattice = |w: &[i64]| -> bool {
        let coords: Vec<Q> = (0..n)
            .map(|r| (0..n).map(|j| weight_to_root[r][j] * Q::from(w[j])).sum())
            .collect();
        is_integral(&coords)
    };
    let order = |i: usize| -> i64 {
        let mut w = vec![0i64; n];
        for k in 1.. {
            w[i] = k;
            if in_root_lattice(&w) {
                return k;
            }
        }
        unreachable!()
    };
    let (factors, generators): (Vec<i64>, Vec<usize>) = match ty.family {
        Family::D if n % 2 == 0 => (vec![2, 2], vec![n - 2, n - 1]),
        _ => {
            let last = order(n - 1);
            let prev = if n >= 2 { order(n - 2) } else { 1 };
            if last >= prev {
                (if last > 1 { vec![last] } else { vec![] }, vec![n - 1])
            } else {
                (vec![prev], vec![n - 2])
            }
        }
    };
    let group = FiniteAbelianGroup::new(factors);
    let generators = if group.order() == 1 { vec![] } else { generators };
    let images = (0..n)
        .map(|i| {
            group
                .elements()
                .into_iter()
                .find(|e| {
                    let mut w = vec![0i64; n];
                    w[i] += 1;
                    for (c, &g) in e.iter().zip(&generators) {
                        w[g] -= c;
                    }
                    in_root_lattice(&w)
                })
                .expect("every weight has a class in the fundamental group")
        })
        .collect();
    FundamentalGroup {
        group,
        generators,
        images,
    }
}

/// Root data for a simple type.
pub fn build(ty: RootSystemType) -> Result<RootSystemData> {
    let ty = RootSystemType::new(ty.family, ty.rank)?;
    let n = ty.rank;
    let (symmetrized, d) = symmetrized_cartan(ty);
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| symmetrized[i][j] / d[i]).collect())
        .collect();
    let cq: Vec<Vec<Q>> = cartan
        .iter()
        .map(|r| r.iter().map(|&x| Q::from(x)).collect())
        .collect();
    let weight_to_root = invert(&cq).expect("Cartan matrices are nonsingular");
    let gram_weights = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| weight_to_root[i][j] * Q::from(d[i]))
                .collect()
        })
        .collect();
    let pi1 = fundamental_group(&weight_to_root, ty);
    Ok(RootSystemData {
        ty,
        cartan,
        d,
        symmetrized,
        weight_to_root,
        gram_weights,
        pi1,
    })
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Simple root `α_j` in fundamental-weight coordinates.
    pub fn simple_root(&self, j: usize) -> Vec<i64> {
        (0..self.rank()).map(|i| self.cartan[i][j]).collect()
    }

    /// Killing pairing of two weights.
    pub fn killing(&self, v: &[Q], w: &[Q]) -> Result<Q> {
        let n = self.rank();
        if v.len() != n || w.len() != n {
            return domain(format!(
                "weight vectors of length {} and {} in rank {n}",
                v.len(),
                w.len()
            ));
        }
        let mut s = Q::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += v[i] * self.gram_weights[i][j] * w[j];
            }
        }
        Ok(s)
    }

    /// Killing pairing of integral weights.
    pub fn killing_int(&self, v: &[i64], w: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in w.iter().enumerate() {
                if b != 0 {
                    s += self.gram_weights[i][j] * Q::from(a * b);
                }
            }
        }
        s
    }

    /// Least common denominator of the weight Gram matrix.
    pub fn gram_denominator(&self) -> i64 {
        self.gram_weights
            .iter()
            .flatten()
            .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()))
    }

    /// Whether an integral weight lies in the root lattice.
    pub fn in_root_lattice(&self, w: &[i64]) -> bool {
        let n = self.rank();
        (0..n).all(|r| {
            (0..n)
                .map(|j| self.weight_to_root[r][j] * Q::from(w[j]))
                .sum::<Q>()
                .is_integer()
        })
    }

    /// `det(a_ij)`.
    pub fn cartan_determinant(&self) -> i64 {
        let cq: Vec<Vec<Q>> = self
            .cartan
            .iter()
            .map(|r| r.iter().map(|&x| Q::from(x)).collect())
            .collect();
        let det = determinant(&cq);
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    /// Multiset of positive-root lengths as `(d_α, count)`.
    pub fn positive_root_lengths(&self) -> Vec<(i64, usize)> {
        let n = self.rank();
        match self.ty.family {
            Family::A => vec![(1, n * (n + 1) / 2)],
            Family::B => vec![(2, n * (n - 1)), (1, n)],
            Family::C => vec![(2, n), (1, n * (n - 1))],
            Family::D => vec![(1, n * (n - 1))],
            Family::E => vec![(
                1,
                match n {
                    6 => 36,
                    7 => 63,
                    _ => 120,
                },
            )],
            Family::F => vec![(2, 12), (1, 12)],
            Family::G => vec![(3, 3), (1, 3)],
        }
    }

    /// `Π_{α>0} ℓ_α²` with `ℓ_α = ℓ/gcd(ℓ, 2d_α)`.
    pub fn nilpotent_dimension(&self, ell: u32) -> u128 {
        let ell = ell as i64;
        self.positive_root_lengths()
            .into_iter()
            .map(|(d, c)| {
                let la = (ell / num_integer::gcd(ell, 2 * d)) as u128;
                (la * la).pow(c as u32)
            })
            .product()
    }

    /// Leading principal minors of the weight Gram matrix are all positive.
    pub fn gram_is_positive_definite(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let minor: Vec<Vec<Q>> = self.gram_weights[..k]
                .iter()
                .map(|r| r[..k].to_vec())
                .collect();
            determinant(&minor).is_positive()
        })
    }
}

/// Replacement root system for the pairs `(Φ, ℓ)` where the ℓ-lattice condition breaks down.
pub fn substitute_excluded(ty: RootSystemType, ell: u32) -> Option<Vec<RootSystemType>> {
    let n = ty.rank;
    match (ty.family, ell) {
        (Family::B, 4) => Some(vec![RootSystemType::of(Family::A, 1); n]),
        (Family::C, 4) => Some(vec![RootSystemType::of(Family::D, n)]),
        (Family::F, 4) => Some(vec![RootSystemType::of(Family::D, 4)]),
        (Family::G, 3) | (Family::G, 6) => Some(vec![RootSystemType::of(Family::A, 2)]),
        (Family::G, 4) => Some(vec![RootSystemType::of(Family::A, 3)]),
        _ => None,
    }
}

/// All types with `rank <= max_rank` in the order A, B, C, D, E, F, G.
pub fn types_up_to(max_rank: usize) -> Vec<RootSystemType> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        for rank in fam.min_rank()..=max_rank {
            if fam.admits(rank) {
                out.push(RootSystemType::of(fam, rank));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn b2_weights() {
        let b2 = build(RootSystemType::of(Family::B, 2)).unwrap();
        assert_eq!(b2.d, vec![2, 1]);
        assert_eq!(b2.weight_to_root, vec![vec![q(1, 1), q(1, 2)], vec![q(1, 1), q(1, 1)]]);
        assert_eq!(b2.gram_weights[1][1], q(1, 1));
        assert_eq!(b2.pi1.generators, vec![1]);
    }

    #[test]
    fn c4_generator_is_odd_weight() {
        // λ_4 of C_4 is a root; λ_3 generates π₁.
        let c4 = build(RootSystemType::of(Family::C, 4)).unwrap();
        assert!(c4.in_root_lattice(&[0, 0, 0, 1]));
        assert_eq!(c4.pi1.generators, vec![2]);
        let c3 = build(RootSystemType::of(Family::C, 3)).unwrap();
        assert_eq!(c3.pi1.generators, vec![2]);
    }

    #[test]
    fn parse_roundtrip() {
        for t in types_up_to(8) {
            assert_eq!(t.to_string().parse::<RootSystemType>().unwrap(), t);
        }
        assert!("E9".parse::<RootSystemType>().is_err());
        assert!("C2".parse::<RootSystemType>().is_err());
    }
}
