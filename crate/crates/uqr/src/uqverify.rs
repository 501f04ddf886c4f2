//! The small quantum group `u_q(sl₂, Λ_W, Λ′)` with exact coefficients, and a direct check that
//! `R = R₀Θ̄` is quasitriangular.
//!
//! Basis: `E^a K^b F^c` with `0 ≤ a, c < ℓ_α` and `b ∈ ℤ/m`, where `K = K_λ` for the fundamental
//! weight `λ = α/2` and `Λ′ = mℤλ`. Relations used:
//! `K E = q E K`, `K F = q⁻¹ F K`, `K_α = K²`, `EF − FE = (K_α − K_α⁻¹)/(q − q⁻¹)`,
//! `E^{ℓ_α} = F^{ℓ_α} = 0`, `K^m = 1`.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_rational::BigRational;
use once_cell::sync::OnceCell;

use crate::cyclo::{qfact, qint, CycNum};
use crate::error::{Error, Result};
use crate::lattice::IntegerLattice;
use crate::parallel::join;
use crate::rootdata::{Family, RootSystemData, Q};
use crate::rsolver::{f_from_solution, FFunction, R0Solution};

/// PBW monomial `E^e K^k F^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e: u32,
    pub k: u32,
    pub f: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: 0, k: 0, f: 0 };
}

/// Finite linear combination with pruned zero coefficients.
#[derive(Debug, Clone, Default)]
pub struct Lin<T: Ord>(BTreeMap<T, CycNum>);

pub type UqElement = Lin<Monomial>;
pub type TensorElement = Lin<(Monomial, Monomial)>;
pub type TripleElement = Lin<(Monomial, Monomial, Monomial)>;

impl<T: Ord + Copy> Lin<T> {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn term(t: T, c: CycNum) -> Self {
        let mut x = Self::zero();
        x.add_term(t, c);
        x
    }

    pub fn add_term(&mut self, t: T, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&T, &CycNum)> {
        self.0.iter()
    }

    pub fn coefficient(&self, t: &T) -> CycNum {
        self.0.get(t).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(*t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(*t, -c);
        }
        out
    }

    pub fn scaled(&self, s: &CycNum) -> Self {
        let mut out = Self::zero();
        for (t, c) in self.terms() {
            out.add_term(*t, c * s);
        }
        out
    }

}

impl<T: Ord + Copy> PartialEq for Lin<T> {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// Result of checking the three quasitriangularity axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct QuasitriangularReport {
    /// `R·Δ(h) = Δ^op(h)·R` for `h ∈ {E, F, K_λ}`.
    pub intertwines: bool,
    /// `(Δ ⊗ id)(R) = R₁₃R₂₃`.
    pub coproduct_first: bool,
    /// `(id ⊗ Δ)(R) = R₁₃R₁₂`.
    pub coproduct_second: bool,
}

impl QuasitriangularReport {
    pub fn holds(&self) -> bool {
        self.intertwines && self.coproduct_first && self.coproduct_second
    }
}

/// `R = R₀Θ̄` together with its toral part.
#[derive(Debug, Clone)]
pub struct RMatrix {
    pub r0: TensorElement,
    pub r: TensorElement,
}

type Expansion = Vec<(Monomial, CycNum)>;
type Triple = (Monomial, Monomial, Monomial);

/// Which leg of `R` is multiplied in a product of two copies of `R` in the triple tensor.
#[derive(Clone, Copy)]
enum Leg {
    First,
    Second,
}

pub struct SmallSl2 {
    ell: u32,
    ell_alpha: u32,
    k_order: u32,
    /// `ζ_{2ℓ}^e = q^{e/2}`.
    zeta: Vec<CycNum>,
    /// `[c]/(q − q⁻¹)`.
    ef: Vec<CycNum>,
    products: Vec<OnceCell<Expansion>>,
    unit_products: Vec<OnceCell<Option<Vec<(Monomial, u32)>>>>,
    coproducts: Vec<OnceCell<TensorElement>>,
}

impl std::fmt::Debug for SmallSl2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmallSl2")
            .field("ell", &self.ell)
            .field("ell_alpha", &self.ell_alpha)
            .field("k_order", &self.k_order)
            .finish()
    }
}

impl SmallSl2 {
    /// `Λ′ = k_order·ℤλ`; needs `ℓ | k_order` so that `K_{Λ′}` is central.
    pub fn new(ell: u32, k_order: u32) -> Result<Self> {
        if ell < 3 {
            return Err(Error::Domain(format!("ell must be at least 3, got {ell}")));
        }
        if k_order == 0 || k_order % ell != 0 {
            return Err(Error::Domain(format!(
                "K_λ^{k_order} = 1 is incompatible with K_λ E K_λ⁻¹ = qE at ell={ell}"
            )));
        }
        let ell_alpha = ell / ell.gcd(&2);
        let zeta: Vec<CycNum> = (0..2 * ell).map(|e| CycNum::zeta(2 * ell, i64::from(e))).collect();
        let diff_inv = (&zeta[2] - &zeta[(2 * ell - 2) as usize]).inv()?;
        let ef = (0..ell_alpha)
            .map(|c| &qint(ell, c, Q::from(1)) * &diff_inv)
            .collect();
        let dim = (ell_alpha * ell_alpha * k_order) as usize;
        Ok(Self {
            ell,
            ell_alpha,
            k_order,
            zeta,
            ef,
            products: (0..dim * dim).map(|_| OnceCell::new()).collect(),
            unit_products: (0..dim * dim).map(|_| OnceCell::new()).collect(),
            coproducts: (0..dim).map(|_| OnceCell::new()).collect(),
        })
    }

    /// The algebra for `A₁` with `Λ = Λ_W` and the given `Λ′`.
    pub fn for_lattice(data: &RootSystemData, ell: u32, lambda_prime: &IntegerLattice) -> Result<Self> {
        if data.ty.family != Family::A || data.rank() != 1 {
            return Err(Error::Unsupported(format!(
                "the explicit Hopf algebra is implemented for A1 only, not {}; use check_f_equations instead",
                data.ty
            )));
        }
        let basis = lambda_prime.basis();
        let m = basis.first().map_or(0, |b| b[0].unsigned_abs());
        Self::new(ell, u32::try_from(m).map_err(|_| Error::Domain("Λ′ too sparse".into()))?)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn ell_alpha(&self) -> u32 {
        self.ell_alpha
    }

    /// `|Λ/Λ′|`.
    pub fn k_order(&self) -> u32 {
        self.k_order
    }

    /// `|Λ/Λ′|·ℓ_α²`.
    pub fn dimension(&self) -> usize {
        (self.k_order * self.ell_alpha * self.ell_alpha) as usize
    }

    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.dimension());
        for e in 0..self.ell_alpha {
            for k in 0..self.k_order {
                for f in 0..self.ell_alpha {
                    out.push(Monomial { e, k, f });
                }
            }
        }
        out
    }

    fn index(&self, m: Monomial) -> usize {
        ((m.e * self.k_order + m.k) * self.ell_alpha + m.f) as usize
    }

    /// `q^{h/2}`.
    fn q_half(&self, h: i64) -> &CycNum {
        &self.zeta[h.rem_euclid(2 * i64::from(self.ell)) as usize]
    }

    fn k_add(&self, k: u32, d: i64) -> u32 {
        (i64::from(k) + d).rem_euclid(i64::from(self.k_order)) as u32
    }

    pub fn one(&self) -> UqElement {
        Lin::term(Monomial::ONE, CycNum::one())
    }

    pub fn e(&self) -> UqElement {
        Lin::term(Monomial { e: 1, k: 0, f: 0 }, CycNum::one())
    }

    pub fn f(&self) -> UqElement {
        Lin::term(Monomial { e: 0, k: 0, f: 1 }, CycNum::one())
    }

    /// `K_λ^b`.
    pub fn k(&self, b: i64) -> UqElement {
        Lin::term(
            Monomial {
                e: 0,
                k: self.k_add(0, b),
                f: 0,
            },
            CycNum::one(),
        )
    }

    /// Monomial, or zero when an exponent reaches `ℓ_α`.
    pub fn monomial(&self, e: u32, k: i64, f: u32) -> UqElement {
        if e >= self.ell_alpha || f >= self.ell_alpha {
            return Lin::zero();
        }
        Lin::term(
            Monomial {
                e,
                k: self.k_add(0, k),
                f,
            },
            CycNum::one(),
        )
    }

    fn right_e(&self, x: &UqElement) -> UqElement {
        let mut out = Lin::zero();
        for (m, c) in x.terms() {
            if m.e + 1 < self.ell_alpha {
                out.add_term(Monomial { e: m.e + 1, ..*m }, c * self.q_half(2 * i64::from(m.k)));
            }
            if m.f >= 1 {
                // F^c E = E F^c − [c] F^{c−1} (q^{1−c} K_α − q^{c−1} K_α⁻¹)/(q − q⁻¹)
                let s = i64::from(m.f) - 1;
                let base = c * &self.ef[m.f as usize];
                let up = Monomial {
                    k: self.k_add(m.k, 2),
                    f: m.f - 1,
                    ..*m
                };
                let down = Monomial {
                    k: self.k_add(m.k, -2),
                    f: m.f - 1,
                    ..*m
                };
                out.add_term(up, -(&base * self.q_half(2 * s)));
                out.add_term(down, &base * self.q_half(-2 * s));
            }
        }
        out
    }

    fn right_k(&self, x: &UqElement, b: u32) -> UqElement {
        let mut out = Lin::zero();
        for (m, c) in x.terms() {
            let twist = self.q_half(2 * i64::from(m.f) * i64::from(b));
            out.add_term(
                Monomial {
                    k: self.k_add(m.k, i64::from(b)),
                    ..*m
                },
                c * twist,
            );
        }
        out
    }

    fn right_f(&self, x: &UqElement) -> UqElement {
        let mut out = Lin::zero();
        for (m, c) in x.terms() {
            if m.f + 1 < self.ell_alpha {
                out.add_term(Monomial { f: m.f + 1, ..*m }, c.clone());
            }
        }
        out
    }

    /// `x·y` for basis monomials, memoized.
    pub fn monomial_product(&self, x: Monomial, y: Monomial) -> &[(Monomial, CycNum)] {
        let ix = self.index(x) * self.dimension() + self.index(y);
        self.products[ix].get_or_init(|| {
            let mut acc = Lin::term(x, CycNum::one());
            for _ in 0..y.e {
                acc = self.right_e(&acc);
            }
            acc = self.right_k(&acc, y.k);
            for _ in 0..y.f {
                acc = self.right_f(&acc);
            }
            acc.0.into_iter().collect()
        })
    }

    pub fn mul(&self, x: &UqElement, y: &UqElement) -> UqElement {
        let mut out = Lin::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let cxy = cx * cy;
                for (m, c) in self.monomial_product(*mx, *my) {
                    out.add_term(*m, &cxy * c);
                }
            }
        }
        out
    }

    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut out = Lin::zero();
        for ((x1, x2), cx) in x.terms() {
            for ((y1, y2), cy) in y.terms() {
                let p1 = self.monomial_product(*x1, *y1);
                let p2 = self.monomial_product(*x2, *y2);
                if p1.is_empty() || p2.is_empty() {
                    continue;
                }
                let cxy = cx * cy;
                for (m1, c1) in p1 {
                    let c = &cxy * c1;
                    for (m2, c2) in p2 {
                        out.add_term((*m1, *m2), &c * c2);
                    }
                }
            }
        }
        out
    }

    pub fn tensor(&self, x: &UqElement, y: &UqElement) -> TensorElement {
        let mut out = Lin::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                out.add_term((*mx, *my), cx * cy);
            }
        }
        out
    }

    pub fn flip(x: &TensorElement) -> TensorElement {
        let mut out = Lin::zero();
        for ((a, b), c) in x.terms() {
            out.add_term((*b, *a), c.clone());
        }
        out
    }

    /// `Δ` on a basis monomial, memoized: `Δ(E) = E⊗K_α + 1⊗E`, `Δ(F) = F⊗1 + K_α⁻¹⊗F`,
    /// `Δ(K) = K⊗K`.
    pub fn monomial_coproduct(&self, m: Monomial) -> &TensorElement {
        self.coproducts[self.index(m)].get_or_init(|| {
            let one = Monomial::ONE;
            let de = self
                .tensor(&self.e(), &self.k(2))
                .add(&self.tensor(&self.one(), &self.e()));
            let df = self
                .tensor(&self.f(), &self.one())
                .add(&self.tensor(&self.k(-2), &self.f()));
            let kk = Monomial { e: 0, k: m.k, f: 0 };
            let mut acc = Lin::term((one, one), CycNum::one());
            for _ in 0..m.e {
                acc = self.tensor_mul(&acc, &de);
            }
            acc = self.tensor_mul(&acc, &Lin::term((kk, kk), CycNum::one()));
            for _ in 0..m.f {
                acc = self.tensor_mul(&acc, &df);
            }
            acc
        })
    }

    pub fn coproduct(&self, x: &UqElement) -> TensorElement {
        let mut out = Lin::zero();
        for (m, c) in x.terms() {
            for (t, d) in self.monomial_coproduct(*m).terms() {
                out.add_term(*t, c * d);
            }
        }
        out
    }

    /// `ε(E^a K^b F^c) = δ_{a0} δ_{c0}`.
    pub fn counit(&self, x: &UqElement) -> CycNum {
        let mut out = CycNum::zero();
        for (m, c) in x.terms() {
            if m.e == 0 && m.f == 0 {
                out += c;
            }
        }
        out
    }

    fn theta_with(&self, sign: i64) -> TensorElement {
        let ell = self.ell;
        let diff = &self.zeta[2] - &self.zeta[(2 * ell - 2) as usize];
        let mut out = Lin::zero();
        let mut power = CycNum::one();
        for k in 0..self.ell_alpha {
            let kk = i64::from(k);
            let fact = qfact(ell, k, Q::from(1)).inv().expect("[k]! ≠ 0 for k < ℓ_α");
            let mut c = &(&power * &fact) * self.q_half(sign * kk * (kk - 1));
            if sign < 0 && k % 2 == 1 {
                c = -c;
            }
            out.add_term((Monomial { e: k, k: 0, f: 0 }, Monomial { e: 0, k: 0, f: k }), c);
            power = &power * &diff;
        }
        out
    }

    /// `Θ̄ = Σ_{k<ℓ_α} (q − q⁻¹)^k q^{k(k−1)/2}/[k]! E^k ⊗ F^k`.
    pub fn theta_bar(&self) -> TensorElement {
        self.theta_with(1)
    }

    /// `Θ = Σ_{k<ℓ_α} (−1)^k (q − q⁻¹)^k q^{−k(k−1)/2}/[k]! E^k ⊗ F^k`.
    pub fn theta(&self) -> TensorElement {
        self.theta_with(-1)
    }

    /// `R₀ = Σ f(μ, ν) K_μ ⊗ K_ν`.
    pub fn toral_part(&self, f: &FFunction) -> Result<TensorElement> {
        if f.order() != self.k_order as usize {
            return Err(Error::Domain(format!(
                "f lives on a group of order {}, the algebra has {} grouplikes",
                f.order(),
                self.k_order
            )));
        }
        let exps: Vec<u32> = f
            .representatives()
            .iter()
            .map(|r| self.k_add(0, r[0]))
            .collect();
        let mut out = Lin::zero();
        for (x, &bx) in exps.iter().enumerate() {
            for (y, &by) in exps.iter().enumerate() {
                let m = |k| Monomial { e: 0, k, f: 0 };
                out.add_term((m(bx), m(by)), f.value(x, y));
            }
        }
        Ok(out)
    }

    pub fn assemble_from_f(&self, f: &FFunction) -> Result<RMatrix> {
        let r0 = self.toral_part(f)?;
        let r = self.tensor_mul(&r0, &self.theta_bar());
        Ok(RMatrix { r0, r })
    }

    /// `R = R₀Θ̄` for a solution with `Λ = Λ_W`.
    pub fn assemble_r(&self, sol: &R0Solution, lambda_prime: &IntegerLattice) -> Result<RMatrix> {
        self.assemble_from_f(&f_from_solution(sol, lambda_prime)?)
    }

    fn is_unit(x: &TensorElement) -> bool {
        *x == Lin::term((Monomial::ONE, Monomial::ONE), CycNum::one())
    }

    /// Inverse of a toral element: the conjugate first, the Fourier inverse otherwise.
    pub fn toral_inverse(&self, r0: &TensorElement) -> Result<TensorElement> {
        let mut conj = Lin::zero();
        for (t, c) in r0.terms() {
            conj.add_term(*t, c.conj());
        }
        if Self::is_unit(&self.tensor_mul(r0, &conj)) {
            return Ok(conj);
        }
        self.fourier_inverse(r0)
    }

    /// Inverse in the group algebra of `(Λ/Λ′)²` via its characters.
    fn fourier_inverse(&self, r0: &TensorElement) -> Result<TensorElement> {
        if r0.terms().any(|((a, b), _)| a.e + a.f + b.e + b.f > 0) {
            return Err(Error::Domain("element is not toral".into()));
        }
        let m = self.k_order;
        let z: Vec<CycNum> = (0..m).map(|e| CycNum::zeta(m, i64::from(e))).collect();
        let zi = |e: u64| &z[(e % u64::from(m)) as usize];
        let mut hat_inv = Vec::with_capacity((m * m) as usize);
        for s in 0..m {
            for t in 0..m {
                let mut acc = CycNum::zero();
                for ((a, b), c) in r0.terms() {
                    let e = u64::from(s) * u64::from(a.k) + u64::from(t) * u64::from(b.k);
                    acc += &(c * zi(e));
                }
                if acc.is_zero() {
                    return Err(Error::Consistency(
                        "R is not invertible: R₀ vanishes at a character".into(),
                    ));
                }
                hat_inv.push(acc.inv()?);
            }
        }
        let norm = CycNum::from_q(Q::new(1, i64::from(m * m)));
        let mut out = Lin::zero();
        for b1 in 0..m {
            for b2 in 0..m {
                let mut acc = CycNum::zero();
                for s in 0..m {
                    for t in 0..m {
                        let e = u64::from(m - s) * u64::from(b1) + u64::from(m - t) * u64::from(b2);
                        acc += &(&hat_inv[(s * m + t) as usize] * zi(e));
                    }
                }
                let mk = |k| Monomial { e: 0, k, f: 0 };
                out.add_term((mk(b1), mk(b2)), &acc * &norm);
            }
        }
        Ok(out)
    }

    /// `R⁻¹ = Θ·R₀⁻¹`. Certified through the factors: `Θ̄Θ = 1⊗1` and `R₀R₀⁻¹ = 1⊗1` give
    /// `R·R⁻¹ = R₀(Θ̄Θ)R₀⁻¹ = 1⊗1`.
    pub fn inverse(&self, r: &RMatrix) -> Result<TensorElement> {
        let theta = self.theta();
        let r0_inv = self.toral_inverse(&r.r0)?;
        if !Self::is_unit(&self.tensor_mul(&self.theta_bar(), &theta))
            || !Self::is_unit(&self.tensor_mul(&r.r0, &r0_inv))
        {
            return Err(Error::Consistency("Θ·R₀⁻¹ is not an inverse of R".into()));
        }
        Ok(self.tensor_mul(&theta, &r0_inv))
    }

    /// `R·Δ(h) = Δ^op(h)·R` on the generators.
    pub fn intertwines(&self, r: &TensorElement) -> bool {
        [self.e(), self.f(), self.k(1)].iter().all(|h| {
            let d = self.coproduct(h);
            self.tensor_mul(r, &d) == self.tensor_mul(&Self::flip(&d), r)
        })
    }

    /// `(Δ ⊗ id)(R)`.
    pub fn coproduct_first(&self, r: &TensorElement) -> TripleElement {
        let mut out = Lin::zero();
        for ((x1, x2), c) in r.terms() {
            for ((a, b), d) in self.monomial_coproduct(*x1).terms() {
                out.add_term((*a, *b, *x2), c * d);
            }
        }
        out
    }

    /// `(id ⊗ Δ)(R)`.
    pub fn coproduct_second(&self, r: &TensorElement) -> TripleElement {
        let mut out = Lin::zero();
        for ((x1, x2), c) in r.terms() {
            for ((a, b), d) in self.monomial_coproduct(*x2).terms() {
                out.add_term((*x1, *a, *b), c * d);
            }
        }
        out
    }

    /// `R₁₃R₂₃ = Σ r_i ⊗ s_j ⊗ r′_i s′_j`.
    pub fn r13_r23(&self, r: &TensorElement) -> TripleElement {
        self.pair_sum(r, Leg::Second)
    }

    /// `R₁₃R₁₂ = Σ r_i s_j ⊗ s′_j ⊗ r′_i`.
    pub fn r13_r12(&self, r: &TensorElement) -> TripleElement {
        self.pair_sum(r, Leg::First)
    }

    /// `e` with `c = ζ_{2ℓ}^e`.
    fn unit_exponent(&self, c: &CycNum) -> Option<u32> {
        self.zeta.iter().position(|z| z == c).map(|e| e as u32)
    }

    /// `x·y` as `Σ ζ_{2ℓ}^e·m` when every coefficient is a root of unity.
    fn unit_product(&self, x: Monomial, y: Monomial) -> Option<&[(Monomial, u32)]> {
        let ix = self.index(x) * self.dimension() + self.index(y);
        self.unit_products[ix]
            .get_or_init(|| {
                self.monomial_product(x, y)
                    .iter()
                    .map(|(m, c)| self.unit_exponent(c).map(|e| (*m, e)))
                    .collect()
            })
            .as_deref()
    }

    /// Writes each coefficient as `u_s·ζ_{2ℓ}^a` with as few distinct `u_s` as possible.
    fn factor<'a>(&self, cs: impl Iterator<Item = &'a CycNum>) -> (Vec<CycNum>, Vec<(usize, u32)>) {
        let period = self.zeta.len();
        let mut reps: Vec<CycNum> = Vec::new();
        let mut index = Vec::new();
        for c in cs {
            let hit = (0..period).find_map(|a| {
                let rot = c * &self.zeta[(period - a) % period];
                reps.iter().position(|u| *u == rot).map(|s| (s, a as u32))
            });
            index.push(hit.unwrap_or_else(|| {
                reps.push(c.clone());
                (reps.len() - 1, 0)
            }));
        }
        (reps, index)
    }

    /// `Σ_{i,j} c_i c_j` placed by multiplying one leg of the two terms. Products whose
    /// coefficients are roots of unity are counted per `(u_s, u_t, ζ^e)` and summed at the end.
    fn pair_sum(&self, r: &TensorElement, leg: Leg) -> TripleElement {
        let terms: Vec<_> = r.terms().map(|(t, c)| (*t, c.clone())).collect();
        let (reps, fac) = self.factor(terms.iter().map(|(_, c)| c));
        let period = self.zeta.len();
        let mut counts: HashMap<(Triple, usize, usize), Vec<i64>> = HashMap::new();
        let mut slow = Lin::zero();
        for (i, &((x1, x2), _)) in terms.iter().enumerate() {
            for (j, &((y1, y2), _)) in terms.iter().enumerate() {
                let (a, b) = match leg {
                    Leg::Second => (x2, y2),
                    Leg::First => (x1, y1),
                };
                let key = |m: Monomial| match leg {
                    Leg::Second => (x1, y1, m),
                    Leg::First => (m, y2, x2),
                };
                let ((s, ea), (t, eb)) = (fac[i], fac[j]);
                match self.unit_product(a, b) {
                    Some(units) => {
                        for &(m, e) in units {
                            let slot = counts
                                .entry((key(m), s, t))
                                .or_insert_with(|| vec![0; period]);
                            slot[(ea + eb + e) as usize % period] += 1;
                        }
                    }
                    None => {
                        let cij = &terms[i].1 * &terms[j].1;
                        for (m, c) in self.monomial_product(a, b) {
                            slow.add_term(key(*m), &cij * c);
                        }
                    }
                }
            }
        }
        let pairs: Vec<Vec<CycNum>> = reps
            .iter()
            .map(|u| reps.iter().map(|v| u * v).collect())
            .collect();
        let mut out = slow;
        let order = 2 * self.ell;
        for ((key, s, t), h) in counts {
            let h: Vec<BigRational> = h.into_iter().map(|c| BigRational::from_integer(c.into())).collect();
            out.add_term(key, &CycNum::from_exponent_sum(order, &h) * &pairs[s][t]);
        }
        out
    }

    /// Checks the three axioms; the two coproduct identities run concurrently.
    pub fn verify_quasitriangular(&self, r: &TensorElement) -> QuasitriangularReport {
        let (intertwines, (coproduct_first, coproduct_second)) = join(
            || self.intertwines(r),
            || {
                join(
                    || self.coproduct_first(r) == self.r13_r23(r),
                    || self.coproduct_second(r) == self.r13_r12(r),
                )
            },
        );
        QuasitriangularReport {
            intertwines,
            coproduct_first,
            coproduct_second,
        }
    }
}
