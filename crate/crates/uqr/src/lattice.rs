//! Sublattices of the weight lattice, ℓ-lattices, centralizers and finite quotients.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::normal_form::{hnf_columns, kernel, smith, IntMat};
use crate::rootdata::{RootSystemData, RootSystemType, Q};

/// Whether an ℓ-lattice is generated by scaled simple roots or scaled fundamental weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Roots,
    Weights,
}

/// Full-rank or degenerate sublattice of `Λ_W`, in fundamental-weight coordinates.
///
/// Equality is equality of the column Hermite bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ty: RootSystemType,
    rank: usize,
    basis: Vec<Vec<i128>>,
}

impl IntegerLattice {
    /// Span of integral weight vectors.
    pub fn from_integer_generators(data: &RootSystemData, gens: &[Vec<i64>]) -> Result<Self> {
        let n = data.rank();
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return domain(format!("generator of length {} in rank {n}", g.len()));
        }
        let cols: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| i128::from(x)).collect())
            .collect();
        Ok(Self::from_columns(data.ty, n, &cols))
    }

    /// Span of rational weight vectors; each must be integral.
    pub fn from_generators(data: &RootSystemData, gens: &[Vec<Q>]) -> Result<Self> {
        let mut ints = Vec::with_capacity(gens.len());
        for g in gens {
            if g.iter().any(|x| !x.is_integer()) {
                return domain(format!("generator {g:?} does not lie in the weight lattice"));
            }
            ints.push(g.iter().map(|x| x.to_integer()).collect());
        }
        Self::from_integer_generators(data, &ints)
    }

    /// Span of vectors given in simple-root coordinates; each must land in `Λ_W`.
    pub fn from_root_coordinates(data: &RootSystemData, gens: &[Vec<Q>]) -> Result<Self> {
        let n = data.rank();
        let weights: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| {
                (0..n)
                    .map(|i| (0..n).map(|j| Q::from(data.cartan[i][j]) * g[j]).sum())
                    .collect()
            })
            .collect();
        Self::from_generators(data, &weights)
    }

    pub(crate) fn from_columns(ty: RootSystemType, rank: usize, cols: &[Vec<i128>]) -> Self {
        Self {
            ty,
            rank,
            basis: hnf_columns(cols, rank),
        }
    }

    pub fn weight_lattice(data: &RootSystemData) -> Self {
        let n = data.rank();
        let cols: Vec<Vec<i128>> = (0..n)
            .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
            .collect();
        Self::from_columns(data.ty, n, &cols)
    }

    pub fn root_lattice(data: &RootSystemData) -> Self {
        let gens: Vec<Vec<i64>> = (0..data.rank()).map(|j| data.simple_root(j)).collect();
        Self::from_integer_generators(data, &gens).expect("simple roots have full length")
    }

    pub fn ambient(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Hermite basis columns.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|c| c.iter().map(|&x| x as i64).collect())
            .collect()
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.rank
    }

    /// Index in `Λ_W`; zero when not of full rank.
    pub fn covolume(&self) -> u128 {
        if !self.is_full_rank() {
            return 0;
        }
        self.basis
            .iter()
            .enumerate()
            .map(|(k, c)| c[k].unsigned_abs())
            .product()
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    fn coordinates(&self, v: &[i128]) -> Option<Vec<i128>> {
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        let mut row = 0usize;
        for col in &self.basis {
            let p = (row..self.rank).find(|&i| col[i] != 0)?;
            if r[row..p].iter().any(|&x| x != 0) {
                return None;
            }
            let (c, rem) = r[p].div_rem(&col[p]);
            if rem != 0 {
                return None;
            }
            for (x, y) in r.iter_mut().zip(col) {
                *x -= c * y;
            }
            coeffs.push(c);
            row = p + 1;
        }
        r.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let v: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
        self.coordinates(&v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ty == other.ty && self.basis.iter().all(|c| other.coordinates(c).is_some())
    }

    pub fn scale(&self, k: i64) -> Self {
        let cols: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|c| c.iter().map(|&x| x * i128::from(k)).collect())
            .collect();
        Self::from_columns(self.ty, self.rank, &cols)
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ty != other.ty {
            return domain(format!("lattices in {} and {}", self.ty, other.ty));
        }
        Ok(())
    }
}

fn scaled(data: &RootSystemData, base: Base, factors: &[i64]) -> IntegerLattice {
    let n = data.rank();
    let gens: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let v = match base {
                Base::Roots => data.simple_root(j),
                Base::Weights => (0..n).map(|i| i64::from(i == j)).collect(),
            };
            v.into_iter().map(|x| x * factors[j]).collect()
        })
        .collect();
    IntegerLattice::from_integer_generators(data, &gens).expect("generators have full length")
}

/// `⟨ℓ_i α_i⟩` or `⟨ℓ_i λ_i⟩` with `ℓ_i = ℓ/gcd(ℓ, 2d_i)`.
pub fn ell_lattice_round(data: &RootSystemData, base: Base, ell: u32) -> IntegerLattice {
    let ell = i64::from(ell);
    let f: Vec<i64> = data.d.iter().map(|&d| ell / ell.gcd(&(2 * d))).collect();
    scaled(data, base, &f)
}

/// `⟨ℓ_[i] α_i⟩` or `⟨ℓ_[i] λ_i⟩` with `ℓ_[i] = ℓ/gcd(ℓ, d_i)`.
pub fn ell_lattice_square(data: &RootSystemData, base: Base, ell: u32) -> IntegerLattice {
    let ell = i64::from(ell);
    let f: Vec<i64> = data.d.iter().map(|&d| ell / ell.gcd(&d)).collect();
    scaled(data, base, &f)
}

/// Lusztig's kernel `2Λ_R^{(ℓ)}`.
pub fn lusztig_kernel(data: &RootSystemData, ell: u32) -> IntegerLattice {
    ell_lattice_round(data, Base::Roots, ell).scale(2)
}

/// `{η ∈ Λ1 : (η, λ) ∈ ℓℤ for all λ ∈ Λ2}`.
pub fn cent_q(
    data: &RootSystemData,
    l1: &IntegerLattice,
    l2: &IntegerLattice,
    ell: u32,
) -> Result<IntegerLattice> {
    l1.check_same_ambient(l2)?;
    if l1.ty != data.ty {
        return domain(format!("lattice in {} used with {}", l1.ty, data.ty));
    }
    if !l2.is_sublattice_of(l1) {
        return domain("second lattice is not contained in the first");
    }
    let b1 = &l1.basis;
    let b2 = &l2.basis;
    // P_ij = (b1_i, b2_j), cleared to integers by a common denominator.
    let pairing: Vec<Vec<Q>> = b1
        .iter()
        .map(|u| {
            let u: Vec<i64> = u.iter().map(|&x| x as i64).collect();
            b2.iter()
                .map(|w| {
                    let w: Vec<i64> = w.iter().map(|&x| x as i64).collect();
                    data.killing_int(&u, &w)
                })
                .collect()
        })
        .collect();
    let den = pairing
        .iter()
        .flatten()
        .fold(1i64, |acc, x| acc.lcm(x.denom()));
    let modulus = i128::from(den) * i128::from(ell);
    let k1 = b1.len();
    let k2 = b2.len();
    // Rows index generators of Λ2: solve Qᵀ x ≡ 0 (mod den·ℓ).
    let qt: IntMat = (0..k2)
        .map(|j| {
            (0..k1)
                .map(|i| i128::from((pairing[i][j] * Q::from(den)).to_integer()))
                .collect()
        })
        .collect();
    let sm = smith(&qt, k2, k1);
    let mut xs: Vec<Vec<i128>> = Vec::with_capacity(k1);
    for t in 0..k1 {
        let s = sm.diag.get(t).copied().unwrap_or(0);
        let step = modulus / s.abs().gcd(&modulus);
        xs.push((0..k1).map(|i| sm.v[i][t] * step).collect());
    }
    let cols: Vec<Vec<i128>> = xs
        .iter()
        .map(|x| {
            (0..l1.rank)
                .map(|r| (0..k1).map(|i| b1[i][r] * x[i]).sum())
                .collect()
        })
        .collect();
    Ok(IntegerLattice::from_columns(l1.ty, l1.rank, &cols))
}

pub fn intersect(l1: &IntegerLattice, l2: &IntegerLattice) -> Result<IntegerLattice> {
    l1.check_same_ambient(l2)?;
    let n = l1.rank;
    let k1 = l1.basis.len();
    let k2 = l2.basis.len();
    // Kernel of [B1 | -B2].
    let m: IntMat = (0..n)
        .map(|r| {
            l1.basis
                .iter()
                .map(|c| c[r])
                .chain(l2.basis.iter().map(|c| -c[r]))
                .collect()
        })
        .collect();
    let ker = kernel(&m, n, k1 + k2);
    let cols: Vec<Vec<i128>> = ker
        .iter()
        .map(|x| {
            (0..n)
                .map(|r| (0..k1).map(|i| l1.basis[i][r] * x[i]).sum())
                .collect()
        })
        .collect();
    Ok(IntegerLattice::from_columns(l1.ty, n, &cols))
}

/// The finite group `L1/L2` with projection and lifting maps.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteAbelianGroup,
    top: IntegerLattice,
    /// Rows of `U` for the non-unit invariant factors.
    u_rows: Vec<Vec<i128>>,
    /// Columns of `U⁻¹` for the non-unit invariant factors.
    u_inv_cols: Vec<Vec<i128>>,
}

impl Quotient {
    /// Class of `v ∈ L1`.
    pub fn project(&self, v: &[i64]) -> Result<Vec<i64>> {
        let v: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
        let c = self
            .top
            .coordinates(&v)
            .ok_or_else(|| Error::Domain(format!("{v:?} is not in the ambient lattice")))?;
        Ok(self
            .u_rows
            .iter()
            .zip(self.group.factors())
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(&c).map(|(a, b)| a * b).sum();
                s.rem_euclid(i128::from(d)) as i64
            })
            .collect())
    }

    /// Representative in `L1` of a group element.
    pub fn lift(&self, e: &[i64]) -> Vec<i64> {
        let k = self.top.basis.len();
        let mut c = vec![0i128; k];
        for (col, &x) in self.u_inv_cols.iter().zip(e) {
            for (ci, y) in c.iter_mut().zip(col) {
                *ci += y * i128::from(x);
            }
        }
        (0..self.top.rank)
            .map(|r| {
                let s: i128 = (0..k).map(|i| self.top.basis[i][r] * c[i]).sum();
                s as i64
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Representatives in the order of `group.elements()`.
    pub fn representatives(&self) -> Vec<Vec<i64>> {
        self.group
            .elements()
            .iter()
            .map(|e| self.lift(e))
            .collect()
    }
}

/// `L1/L2` for full-rank `L2 ⊆ L1`.
pub fn quotient(l1: &IntegerLattice, l2: &IntegerLattice) -> Result<Quotient> {
    l1.check_same_ambient(l2)?;
    if !l2.is_full_rank() || !l1.is_full_rank() {
        return domain("quotient of lattices with infinite index");
    }
    let k = l1.basis.len();
    let t_cols: Vec<Vec<i128>> = l2
        .basis
        .iter()
        .map(|c| {
            l1.coordinates(c)
                .ok_or_else(|| Error::Domain("sublattice is not contained in the lattice".into()))
        })
        .collect::<Result<_>>()?;
    let t: IntMat = (0..k).map(|i| t_cols.iter().map(|c| c[i]).collect()).collect();
    let sm = smith(&t, k, k);
    let keep: Vec<usize> = (0..k).filter(|&i| sm.diag[i].abs() != 1).collect();
    if keep.iter().any(|&i| sm.diag[i].is_zero()) {
        return domain("quotient of lattices with infinite index");
    }
    let factors: Vec<i64> = keep.iter().map(|&i| sm.diag[i].abs() as i64).collect();
    Ok(Quotient {
        group: FiniteAbelianGroup::new(factors),
        top: l1.clone(),
        u_rows: keep.iter().map(|&i| sm.u[i].clone()).collect(),
        u_inv_cols: keep
            .iter()
            .map(|&i| (0..k).map(|r| sm.u_inv[r][i]).collect())
            .collect(),
    })
}
