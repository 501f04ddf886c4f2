//! Exact arithmetic in cyclotomic fields `ℚ(ζ_M)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::rootdata::Q;

type Poly = Vec<BigRational>;

static CYCLOTOMIC: Lazy<RwLock<HashMap<u32, Arc<Vec<i64>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = CYCLOTOMIC.read().expect("cache lock").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        let den = cyclotomic_polynomial(d);
        num = divide_exact(&num, &den);
    }
    let p = Arc::new(num);
    CYCLOTOMIC
        .write()
        .expect("cache lock")
        .entry(m)
        .or_insert_with(|| p.clone())
        .clone()
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quo = vec![0i64; num.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = r[k + dd] / lead;
        quo[k] = c;
        for (j, &x) in den.iter().enumerate() {
            r[k + j] -= c * x;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    quo
}

/// Euler's totient.
pub fn phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn reduce(order: u32, mut p: Poly) -> Poly {
    let phi_m = cyclotomic_polynomial(order);
    let deg = phi_m.len() - 1;
    while p.len() > deg {
        let c = p.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let base = p.len() - deg;
        for (j, &x) in phi_m[..deg].iter().enumerate() {
            if x != 0 {
                p[base + j] -= &c * BigInt::from(x);
            }
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

/// Element of `ℚ(ζ_order)` as a residue modulo `Φ_order`.
#[derive(Clone)]
pub struct CycNum {
    order: u32,
    coeffs: Poly,
}

impl CycNum {
    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); phi(order)];
        coeffs[0] = r;
        Self { order, coeffs }
    }

    pub fn zero() -> Self {
        Self::from_rational(1, BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(1, BigRational::one())
    }

    pub fn from_q(r: Q) -> Self {
        Self::from_rational(1, to_big(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(1, BigRational::from_integer(n.into()))
    }

    /// `ζ_order^k`.
    pub fn zeta(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(i64::from(order)) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self {
            order,
            coeffs: reduce(order, p),
        }
    }

    /// `Σ_e h[e] ζ_order^e`.
    pub fn from_exponent_sum(order: u32, h: &[BigRational]) -> Self {
        debug_assert_eq!(h.len(), order as usize);
        Self {
            order,
            coeffs: reduce(order, h.to_vec()),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Rational value when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Image in `ℚ(ζ_m)` for a multiple `m` of the order.
    pub fn embed(&self, m: u32) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "embedding needs a multiple of the order");
        let step = (m / self.order) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Self {
            order: m,
            coeffs: reduce(m, p),
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.order.lcm(&other.order);
        (self.embed(m), other.embed(m))
    }

    /// Complex conjugate `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut p = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[(m - i) % m] += c;
        }
        Self {
            order: self.order,
            coeffs: reduce(self.order, p),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        let modulus: Poly = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        // Extended Euclid: s·a ≡ gcd (mod Φ), gcd a nonzero constant.
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        let coeffs: Poly = s1.into_iter().map(|x| x / &c).collect();
        Ok(Self {
            order: self.order,
            coeffs: reduce(self.order, coeffs),
        })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::from_rational(self.order, BigRational::one());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = f64::from(self.order);
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (i, c)| {
                let x = c.to_f64().unwrap_or(f64::NAN);
                let t = std::f64::consts::TAU * i as f64 / m;
                (re + x * t.cos(), im + x * t.sin())
            })
    }
}

fn to_big(r: Q) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().expect("nonempty") / &b[db];
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z{}", self.order),
                _ => format!("({c})z{}^{i}", self.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = self.common(rhs);
        let order = a.order;
        let mut p = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        CycNum {
            order,
            coeffs: reduce(order, p),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

/// Whether `Σ_e c_e ζ_m^e = 0` for integer coefficients indexed by `e < m`.
pub fn int_sum_vanishes(m: u32, coeffs: &[i128]) -> bool {
    if coeffs.iter().all(|&x| x == 0) {
        return true;
    }
    let mut p = coeffs.to_vec();
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    while p.len() > deg {
        let c = p.pop().expect("nonempty");
        if c == 0 {
            continue;
        }
        let base = p.len() - deg;
        for (j, &x) in phi[..deg].iter().enumerate() {
            p[base + j] -= c * i128::from(x);
        }
    }
    p.iter().all(|&x| x == 0)
}

/// `q^a = exp(2πi a/ℓ)`.
pub fn q_pow(ell: u32, a: Q) -> CycNum {
    let den = u32::try_from(*a.denom()).expect("exponent denominator fits in u32");
    let order = ell * den;
    CycNum::zeta(order, *a.numer())
}

/// `[n]_v` with `v = q^b`, as the Laurent sum `Σ_{j<n} v^{n-1-2j}`.
pub fn qint(ell: u32, n: u32, base_exponent: Q) -> CycNum {
    let mut acc = CycNum::zero();
    for j in 0..n {
        let e = i64::from(n) - 1 - 2 * i64::from(j);
        acc += &q_pow(ell, base_exponent * Q::from(e));
    }
    acc
}

/// `[n]_v! = [1]_v ⋯ [n]_v` with `v = q^b`.
pub fn qfact(ell: u32, n: u32, base_exponent: Q) -> CycNum {
    (1..=n).fold(CycNum::one(), |acc, k| &acc * &qint(ell, k, base_exponent))
}

/// Multiplicative order of a root of unity, if it is one of order dividing the ambient order.
pub fn root_of_unity_order(x: &CycNum) -> Option<u32> {
    let m = x.order();
    let one = CycNum::one();
    let mut acc = x.clone();
    for k in 1..=m {
        if acc == one {
            return Some(k);
        }
        acc = &acc * x;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(phi(12), 4);
    }

    #[test]
    fn q_powers() {
        assert_eq!(q_pow(4, Q::from(1)), CycNum::zeta(4, 1));
        assert_eq!(q_pow(5, Q::new(5, 2)), CycNum::from_int(-1));
        let h = q_pow(6, Q::new(1, 2));
        assert_eq!(&h * &h, q_pow(6, Q::from(1)));
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(6, 2, Q::from(1)), CycNum::one());
        assert!(qint(5, 5, Q::from(1)).is_zero());
        assert!(qint(4, 2, Q::from(1)).is_zero());
        assert_eq!(qfact(7, 0, Q::from(1)), CycNum::one());
        assert_eq!(qint(7, 1, Q::from(1)).inv().unwrap(), CycNum::one());
        let q = q_pow(6, Q::from(1));
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = &CycNum::zeta(12, 1) + &CycNum::from_int(3);
        assert!((&x * &x.inv().unwrap()).is_one());
        let z = CycNum::zeta(9, 2);
        assert!((&z * &z.conj()).is_one());
        assert!(CycNum::zero().inv().is_err());
    }
}
