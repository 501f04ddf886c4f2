//! Group-equations and diamond-equations over finite abelian groups.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{int_sum_vanishes, CycNum};
use crate::error::{domain, Error, Result};
use crate::group::{FiniteAbelianGroup, Subgroup};
use crate::rootdata::Q;

/// Default bound on `|G|` for pairing enumeration.
pub const PAIRING_BOUND: usize = 16;

/// `Σ c·ζ_M^e` as `(e, c)` terms.
pub type RootSum = Vec<(u32, Q)>;

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(t: Q) -> Q {
    t - Q::from(t.floor().to_integer())
}

/// Least common multiple of the invariant factors (1 for the trivial group).
pub fn exponent(g: &FiniteAbelianGroup) -> u32 {
    g.factors().iter().fold(1i64, |a, &b| a.lcm(&b)) as u32
}

/// Table `g(x, y)` for `x, y ∈ G`, indexed by group-element indices.
#[derive(Debug, Clone)]
pub struct GFunction {
    group: FiniteAbelianGroup,
    order: u32,
    values: Vec<RootSum>,
}

impl GFunction {
    pub fn new(group: FiniteAbelianGroup, order: u32, values: Vec<RootSum>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n {
            return domain(format!("{} values for a group of order {n}", values.len()));
        }
        Ok(Self {
            group,
            order,
            values,
        })
    }

    pub fn zero(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        Self {
            group,
            order: 1,
            values: vec![vec![]; n * n],
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Cyclotomic order in which the values are written.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn raw(&self, x: usize, y: usize) -> &RootSum {
        &self.values[x * self.group.order() + y]
    }

    pub fn value(&self, x: usize, y: usize) -> CycNum {
        root_sum_value(self.order, self.raw(x, y))
    }

    /// Exact values in a canonical form, for comparisons.
    pub fn canonical(&self) -> Vec<CycNum> {
        self.values
            .iter()
            .map(|v| root_sum_value(self.order, v))
            .collect()
    }
}

impl PartialEq for GFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.canonical() == other.canonical()
    }
}

fn root_sum_value(order: u32, v: &RootSum) -> CycNum {
    let mut h = vec![BigRational::zero(); order as usize];
    for (e, c) in v {
        h[*e as usize] += BigRational::new((*c.numer()).into(), (*c.denom()).into());
    }
    CycNum::from_exponent_sum(order, &h)
}

/// Accumulator for `Σ c·ζ_M^e`, tested for vanishing in `ℚ(ζ_M)`.
struct Hist {
    m: u32,
    h: Vec<Q>,
}

impl Hist {
    fn new(m: u32) -> Self {
        Self {
            m,
            h: vec![Q::zero(); m as usize],
        }
    }

    fn add_term(&mut self, e: u32, c: Q) {
        let i = (e % self.m) as usize;
        self.h[i] += c;
    }

    /// Adds `ζ^shift · v` where `v` is written in order `vm`.
    fn add(&mut self, v: &RootSum, vm: u32, shift: u32, sign: Q) {
        let s = self.m / vm;
        for &(e, c) in v {
            self.add_term(e * s + shift, c * sign);
        }
    }

    /// Adds `ζ^shift · v · w`.
    fn add_product(&mut self, v: &RootSum, w: &RootSum, vm: u32, shift: u32) {
        let s = self.m / vm;
        for &(e1, c1) in v {
            for &(e2, c2) in w {
                self.add_term((e1 + e2) * s + shift, c1 * c2);
            }
        }
    }

    fn vanishes(&self) -> bool {
        if self.h.iter().all(Zero::is_zero) {
            return true;
        }
        let den = self.h.iter().fold(1i64, |a, x| a.lcm(x.denom()));
        let p: Vec<i128> = self
            .h
            .iter()
            .map(|x| i128::from((x * Q::from(den)).to_integer()))
            .collect();
        int_sum_vanishes(self.m, &p)
    }
}

/// Common order for a function and characters of its group.
fn working_order(g: &GFunction) -> u32 {
    g.order.lcm(&exponent(&g.group))
}

/// Group-equations: idempotent convolution in each slot and the two normalizations.
pub fn check_group_equations(g: &GFunction) -> bool {
    let grp = &g.group;
    let n = grp.order();
    let m = working_order(g);
    let els = grp.elements();
    let add = grp.add_table();
    let neg: Vec<usize> = els.iter().map(|e| grp.index(&grp.neg(e))).collect();
    for x in 0..n {
        for y in 0..n {
            let mut h = Hist::new(m);
            for y1 in 0..n {
                let y2 = add[y * n + neg[y1]];
                h.add_product(g.raw(x, y1), g.raw(x, y2), g.order, 0);
            }
            h.add(g.raw(x, y), g.order, 0, -Q::one());
            if !h.vanishes() {
                return false;
            }
            let mut h = Hist::new(m);
            for x1 in 0..n {
                let x2 = add[x * n + neg[x1]];
                h.add_product(g.raw(x1, y), g.raw(x2, y), g.order, 0);
            }
            h.add(g.raw(x, y), g.order, 0, -Q::one());
            if !h.vanishes() {
                return false;
            }
        }
    }
    let zero = grp.index(&grp.zero());
    let mut h = Hist::new(m);
    let mut h2 = Hist::new(m);
    for t in 0..n {
        h.add(g.raw(zero, t), g.order, 0, Q::one());
        h2.add(g.raw(t, zero), g.order, 0, Q::one());
    }
    h.add_term(0, -Q::one());
    h2.add_term(0, -Q::one());
    h.vanishes() && h2.vanishes()
}

/// Bihomomorphism `ω: H1 × H2 → ℂ^×` on subgroups of equal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    pub h1: Subgroup,
    pub h2: Subgroup,
    /// `ω(b1_i, b2_j) = exp(2πi·omega[i][j])` on the direct-sum bases of `h1`, `h2`.
    pub omega: Vec<Vec<Q>>,
}

impl Pairing {
    pub fn trivial(g: &FiniteAbelianGroup) -> Self {
        Self {
            h1: Subgroup::trivial(g),
            h2: Subgroup::trivial(g),
            omega: vec![],
        }
    }

    /// `G = ℤ_N`, `H1 = H2 = ⟨N/d⟩`, `ω(N/d, N/d) = ξ_d^k`.
    pub fn cyclic(n: i64, d: i64, k: i64) -> Result<Self> {
        if n < 1 || d < 1 || n % d != 0 {
            return domain(format!("d = {d} does not divide N = {n}"));
        }
        let g = FiniteAbelianGroup::cyclic(n);
        let h = g.span(&[g.reduce(&[n / d])]);
        let omega = h
            .basis
            .iter()
            .map(|(b1, _)| {
                h.basis
                    .iter()
                    .map(|(b2, _)| {
                        let u1 = b1.first().copied().unwrap_or(0) / (n / d);
                        let u2 = b2.first().copied().unwrap_or(0) / (n / d);
                        frac(Q::new(k * u1 * u2, d))
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            h1: h.clone(),
            h2: h,
            omega,
        })
    }

    /// `ω(gens1[a], gens2[b]) = exp(2πi·t[a][b])` on `⟨gens1⟩ × ⟨gens2⟩`, checked to be well defined.
    pub fn on_generators(
        g: &FiniteAbelianGroup,
        gens1: &[Vec<i64>],
        gens2: &[Vec<i64>],
        t: &[Vec<Q>],
    ) -> Result<Self> {
        let h1 = g.span(gens1);
        let h2 = g.span(gens2);
        if h1.order() != h2.order() {
            return domain("a pairing needs subgroups of equal order");
        }
        // Every combination of generator coefficients, with the element it produces.
        let combos = |gens: &[Vec<i64>]| -> Vec<(Vec<i64>, Vec<i64>)> {
            let box_ = FiniteAbelianGroup::new(gens.iter().map(|x| g.element_order(x)).collect());
            box_.elements()
                .into_iter()
                .map(|c| {
                    let mut e = g.zero();
                    for (ci, x) in c.iter().zip(gens) {
                        e = g.add(&e, &g.scale(*ci, x));
                    }
                    (c, e)
                })
                .collect()
        };
        let raw = |c1: &[i64], c2: &[i64]| -> Q {
            let mut s = Q::zero();
            for (a, x) in c1.iter().enumerate() {
                for (b, y) in c2.iter().enumerate() {
                    s += t[a][b] * Q::from(x * y);
                }
            }
            frac(s)
        };
        let k1 = combos(gens1);
        let k2 = combos(gens2);
        let find = |k: &[(Vec<i64>, Vec<i64>)], e: &[i64]| -> Vec<i64> {
            k.iter().find(|x| x.1 == e).expect("element lies in the span").0.clone()
        };
        for (c1, e1) in &k1 {
            let d1 = find(&k1, e1);
            for (c2, e2) in &k2 {
                if raw(c1, c2) != raw(&d1, &find(&k2, e2)) {
                    return domain("the generator values do not define a bihomomorphism");
                }
            }
        }
        let omega = h1
            .basis
            .iter()
            .map(|(b1, _)| {
                let c1 = find(&k1, b1);
                h2.basis.iter().map(|(b2, _)| raw(&c1, &find(&k2, b2))).collect()
            })
            .collect();
        Ok(Self { h1, h2, omega })
    }

    pub fn d(&self) -> usize {
        self.h1.order()
    }

    /// `t` with `ω(x, y) = exp(2πi t)`, or `None` off `H1 × H2`.
    pub fn exponent(&self, g: &FiniteAbelianGroup, x: &[i64], y: &[i64]) -> Option<Q> {
        let cx = self.h1.coordinates(g, x)?;
        let cy = self.h2.coordinates(g, y)?;
        Some(self.exponent_from_coords(&cx, &cy))
    }

    fn exponent_from_coords(&self, cx: &[i64], cy: &[i64]) -> Q {
        let mut t = Q::zero();
        for (i, a) in cx.iter().enumerate() {
            for (j, b) in cy.iter().enumerate() {
                t += self.omega[i][j] * Q::from(a * b);
            }
        }
        frac(t)
    }

    pub fn omega_value(&self, g: &FiniteAbelianGroup, x: &[i64], y: &[i64]) -> Option<CycNum> {
        let t = self.exponent(g, x, y)?;
        Some(CycNum::zeta(*t.denom() as u32, *t.numer()))
    }

    /// `(d, k)` with `ω(N/d, N/d) = ξ_d^k`, `1 ≤ k ≤ d`, for cyclic `G`.
    pub fn dk(&self, g: &FiniteAbelianGroup) -> Option<(usize, usize)> {
        if !g.is_cyclic() || self.h1 != self.h2 {
            return None;
        }
        let d = self.d();
        if d == 1 {
            return Some((1, 1));
        }
        let n = g.order() as i64;
        let h = g.reduce(&[n / d as i64]);
        let t = self.exponent(g, &h, &h)?;
        let k = (t * Q::from(d as i64)).to_integer() as usize;
        Some((d, if k == 0 { d } else { k }))
    }
}

/// `g(x, y) = (1/d)·ω(x, y)` on `H1 × H2`, zero elsewhere.
pub fn pairing_solution(g: &FiniteAbelianGroup, p: &Pairing) -> GFunction {
    let n = g.order();
    let m = exponent(g);
    let d = p.d() as i64;
    let coords = |h: &Subgroup| -> Vec<Option<Vec<i64>>> {
        (0..n)
            .map(|i| {
                if h.contains(i) {
                    h.coordinates(g, &g.element(i))
                } else {
                    None
                }
            })
            .collect()
    };
    let c1 = coords(&p.h1);
    let c2 = coords(&p.h2);
    let mut values = vec![vec![]; n * n];
    for x in 0..n {
        let Some(cx) = &c1[x] else { continue };
        for y in 0..n {
            let Some(cy) = &c2[y] else { continue };
            let t = p.exponent_from_coords(cx, cy);
            let e = (t * Q::from(i64::from(m))).to_integer() as u32;
            values[x * n + y] = vec![(e, Q::new(1, d))];
        }
    }
    GFunction {
        group: g.clone(),
        order: m,
        values,
    }
}

/// All pairing-form solutions of the group-equations, deduplicated by their `g`.
pub fn enumerate_pairings(g: &FiniteAbelianGroup, bound: usize) -> Result<Vec<Pairing>> {
    if g.order() > bound {
        return Err(Error::Resource {
            what: "group order",
            size: g.order(),
            bound,
        });
    }
    let subs = g.subgroups();
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<(usize, usize, u32)>> = BTreeSet::new();
    let m = exponent(g);
    for h1 in &subs {
        for h2 in subs.iter().filter(|h| h.order() == h1.order()) {
            let cells: Vec<(usize, usize, i64)> = h1
                .basis
                .iter()
                .enumerate()
                .flat_map(|(i, (_, o1))| {
                    h2.basis
                        .iter()
                        .enumerate()
                        .map(move |(j, (_, o2))| (i, j, o1.gcd(o2)))
                })
                .collect();
            let choices = FiniteAbelianGroup::new(cells.iter().map(|c| c.2).collect());
            for e in choices.elements() {
                let mut omega = vec![vec![Q::zero(); h2.basis.len()]; h1.basis.len()];
                let mut it = e.iter();
                for &(i, j, o) in &cells {
                    if o > 1 {
                        omega[i][j] = Q::new(*it.next().expect("one value per cell"), o);
                    }
                }
                let p = Pairing {
                    h1: h1.clone(),
                    h2: h2.clone(),
                    omega,
                };
                let sol = pairing_solution(g, &p);
                let key: Vec<(usize, usize, u32)> = (0..g.order())
                    .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
                    .filter_map(|(x, y)| sol.raw(x, y).first().map(|t| (x, y, t.0 % m.max(1))))
                    .collect();
                if seen.insert(key) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Diamond `(G, A, B, C, D, φ1, φ2)` given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diamond {
    pub g: FiniteAbelianGroup,
    pub a: FiniteAbelianGroup,
    /// `φ1(e_j)(f_k) = exp(2πi·phi1[j][k])` for generators `e_j` of `A`, `f_k` of `G`.
    pub phi1: Vec<Vec<Q>>,
    /// `φ2(e_j) ∈ G`.
    pub phi2: Vec<Vec<i64>>,
    pub b: Subgroup,
    pub c: Subgroup,
    pub d: Subgroup,
}

impl Diamond {
    /// Builds the diamond with `B = ker φ1`, `C = ker φ2`, `D = B ∩ C`.
    pub fn new(
        g: FiniteAbelianGroup,
        a: FiniteAbelianGroup,
        phi1: Vec<Vec<Q>>,
        phi2: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let r = a.factors().len();
        if phi1.len() != r || phi2.len() != r {
            return domain("one image per generator of A is required");
        }
        let gk = g.factors().len();
        for j in 0..r {
            let o = a.factors()[j];
            if phi1[j].len() != gk || phi2[j].len() != gk {
                return domain("images must have one coordinate per generator of G");
            }
            if phi1[j].iter().any(|t| !(*t * Q::from(o)).is_integer())
                || g.scale(o, &phi2[j]) != g.zero()
            {
                return domain(format!("generator {j} of A: images are not well defined"));
            }
            if phi1[j]
                .iter()
                .zip(g.factors())
                .any(|(t, f)| !(*t * Q::from(*f)).is_integer())
            {
                return domain(format!("generator {j} of A: image is not a character of G"));
            }
        }
        let phi1: Vec<Vec<Q>> = phi1
            .into_iter()
            .map(|v| v.into_iter().map(frac).collect())
            .collect();
        let phi2: Vec<Vec<i64>> = phi2.into_iter().map(|v| g.reduce(&v)).collect();
        let mut dia = Self {
            b: Subgroup::trivial(&a),
            c: Subgroup::trivial(&a),
            d: Subgroup::trivial(&a),
            g,
            a,
            phi1,
            phi2,
        };
        let els = dia.a.elements();
        let kb: Vec<Vec<i64>> = els
            .iter()
            .filter(|e| dia.character(e).iter().all(Zero::is_zero))
            .cloned()
            .collect();
        let kc: Vec<Vec<i64>> = els
            .iter()
            .filter(|e| dia.shift(e) == dia.g.zero())
            .cloned()
            .collect();
        let kd: Vec<Vec<i64>> = kb.iter().filter(|e| kc.contains(e)).cloned().collect();
        dia.b = dia.a.span(&kb);
        dia.c = dia.a.span(&kc);
        dia.d = dia.a.span(&kd);
        Ok(dia)
    }

    /// `A = ℤ_N`, `φ1(a) = (x ↦ ξ_N^{m x})`, `φ2(a) = l·λ`.
    pub fn cyclic(n: i64, m: i64, l: i64) -> Self {
        let g = FiniteAbelianGroup::cyclic(n);
        let a = g.clone();
        let (phi1, phi2) = if n == 1 {
            (vec![], vec![])
        } else {
            (vec![vec![Q::new(m, n)]], vec![vec![l]])
        };
        Self::new(g, a, phi1, phi2).expect("cyclic data is well defined")
    }

    /// Diamond with trivial `A`.
    pub fn trivial(g: FiniteAbelianGroup) -> Self {
        Self::new(g, FiniteAbelianGroup::trivial(), vec![], vec![]).expect("trivial diamond")
    }

    /// Exponents of the character `φ1(a)` on the generators of `G`.
    pub fn character(&self, a: &[i64]) -> Vec<Q> {
        let mut t = vec![Q::zero(); self.g.factors().len()];
        for (aj, img) in a.iter().zip(&self.phi1) {
            for (tk, x) in t.iter_mut().zip(img) {
                *tk += *x * Q::from(*aj);
            }
        }
        t.into_iter().map(frac).collect()
    }

    pub fn shift(&self, a: &[i64]) -> Vec<i64> {
        let mut s = self.g.zero();
        for (aj, img) in a.iter().zip(&self.phi2) {
            s = self.g.add(&s, &self.g.scale(*aj, img));
        }
        s
    }

    /// `B ∩ C = D`, so the quotients embed.
    pub fn is_consistent(&self) -> bool {
        let bc: Vec<usize> = self
            .b
            .members
            .iter()
            .copied()
            .filter(|&x| self.c.contains(x))
            .collect();
        bc == self.d.members
    }
}

/// `e` with `φ1(a)(y) = ζ_M^e` for every `y` (index order).
fn character_exponents(dia: &Dia, t: &[Q], m: u32) -> Vec<u32> {
    dia.els
        .iter()
        .map(|y| {
            let s: Q = t.iter().zip(y).map(|(a, b)| *a * Q::from(*b)).sum();
            (frac(s) * Q::from(i64::from(m))).to_integer() as u32
        })
        .collect()
}

struct Dia<'a> {
    n: usize,
    els: Vec<Vec<i64>>,
    add: Vec<usize>,
    neg: Vec<usize>,
    g: &'a GFunction,
    m: u32,
}

impl<'a> Dia<'a> {
    fn new(g: &'a GFunction, dia: &Diamond) -> Self {
        let grp = &dia.g;
        let els = grp.elements();
        let neg = els.iter().map(|e| grp.index(&grp.neg(e))).collect();
        let m = working_order(g);
        Self {
            n: grp.order(),
            add: grp.add_table(),
            els,
            neg,
            g,
            m,
        }
    }

    /// Equations (4.3)/(4.4) style: `Σ_y φ(y)⁻¹ g(s, y)` and its mirror.
    fn scaling(&self, chi: &[u32], s: usize) -> bool {
        let (n, m, g) = (self.n, self.m, self.g);
        let mut h1 = Hist::new(m);
        let mut h2 = Hist::new(m);
        for t in 0..n {
            let inv = (m - chi[t] % m) % m;
            h1.add(g.raw(s, t), g.order, inv, Q::one());
            h2.add(g.raw(t, s), g.order, inv, Q::one());
        }
        h1.vanishes() && h2.vanishes()
    }

    /// Equations (4.1)/(4.2) style convolutions for every `x, y`.
    fn convolution(&self, chi: &[u32], s: usize) -> bool {
        let (n, g) = (self.n, self.g);
        for x in 0..n {
            let xs = self.add[x * n + s];
            for y in 0..n {
                let ys = self.add[y * n + s];
                let mut h = Hist::new(self.m);
                for y1 in 0..n {
                    let y2 = self.add[y * n + self.neg[y1]];
                    h.add_product(g.raw(x, y1), g.raw(xs, y2), g.order, chi[y1]);
                }
                if !h.vanishes() {
                    return false;
                }
                let mut h = Hist::new(self.m);
                for x1 in 0..n {
                    let x2 = self.add[x * n + self.neg[x1]];
                    h.add_product(g.raw(x1, y), g.raw(x2, ys), g.order, chi[x1]);
                }
                if !h.vanishes() {
                    return false;
                }
            }
        }
        true
    }
}

fn diamond_cells<'a>(
    g: &'a GFunction,
    dia: &Diamond,
) -> Result<(Dia<'a>, Vec<(Vec<u32>, usize)>)> {
    if g.group != dia.g {
        return domain("function and diamond live on different groups");
    }
    let ctx = Dia::new(g, dia);
    let zero = dia.a.zero();
    let cells = dia
        .a
        .elements()
        .into_iter()
        .filter(|a| *a != zero)
        .map(|a| {
            let chi = character_exponents(&ctx, &dia.character(&a), ctx.m);
            let s = dia.g.index(&dia.shift(&a));
            (chi, s)
        })
        .collect();
    Ok((ctx, cells))
}

/// All four diamond-equations for every nonzero `a ∈ A`.
pub fn check_diamond_equations(g: &GFunction, dia: &Diamond) -> Result<bool> {
    let (ctx, cells) = diamond_cells(g, dia)?;
    Ok(cells
        .iter()
        .all(|(chi, s)| ctx.scaling(chi, *s) && ctx.convolution(chi, *s)))
}

/// Only the scaling equations (4.3)/(4.4), for every nonzero `a ∈ A`.
pub fn scaling_equations_only(g: &GFunction, dia: &Diamond) -> Result<bool> {
    let (ctx, cells) = diamond_cells(g, dia)?;
    Ok(cells.iter().all(|(chi, s)| ctx.scaling(chi, *s)))
}

/// `N | m` and `N | l`, or `gcd(N, d l, k l − (N/d) m) = 1`.
pub fn gcd_criterion(n: i64, d: i64, k: i64, l: i64, m: i64) -> Result<bool> {
    if n < 1 || d < 1 || n % d != 0 {
        return domain(format!("d = {d} does not divide N = {n}"));
    }
    if !(1..=d).contains(&k) {
        return domain(format!("k = {k} outside 1..={d}"));
    }
    if m % n == 0 && l % n == 0 {
        return Ok(true);
    }
    Ok(n.gcd(&(d * l)).gcd(&(k * l - (n / d) * m)) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_pairing_is_delta() {
        let g = FiniteAbelianGroup::cyclic(3);
        let s = pairing_solution(&g, &Pairing::trivial(&g));
        for x in 0..3 {
            for y in 0..3 {
                let expect = if x == 0 && y == 0 { 1 } else { 0 };
                assert_eq!(s.value(x, y), CycNum::from_int(expect));
            }
        }
        assert!(check_group_equations(&s));
    }

    #[test]
    fn zero_function_fails_normalization() {
        let g = FiniteAbelianGroup::cyclic(4);
        assert!(!check_group_equations(&GFunction::zero(g)));
    }

    #[test]
    fn klein_cross_pairing() {
        let g = FiniteAbelianGroup::new(vec![2, 2]);
        let a = g.span(&[vec![1, 0]]);
        let b = g.span(&[vec![0, 1]]);
        let p = Pairing {
            h1: a,
            h2: b,
            omega: vec![vec![Q::new(1, 2)]],
        };
        let s = pairing_solution(&g, &p);
        let ia = g.index(&[1, 0]);
        let ib = g.index(&[0, 1]);
        assert_eq!(s.value(ia, ib), CycNum::from_q(Q::new(-1, 2)));
        assert!(s.value(ib, ia).is_zero());
        assert!(check_group_equations(&s));
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(enumerate_pairings(&FiniteAbelianGroup::cyclic(4), 16).unwrap().len(), 7);
        assert_eq!(enumerate_pairings(&FiniteAbelianGroup::trivial(), 16).unwrap().len(), 1);
        assert_eq!(
            enumerate_pairings(&FiniteAbelianGroup::new(vec![2, 2]), 16)
                .unwrap()
                .len(),
            35
        );
        assert!(enumerate_pairings(&FiniteAbelianGroup::cyclic(17), 16).is_err());
    }

    #[test]
    fn cyclic_pairing_dk() {
        let g = FiniteAbelianGroup::cyclic(6);
        for d in [1, 2, 3, 6] {
            for k in 1..=d {
                let p = Pairing::cyclic(6, d, k).unwrap();
                assert_eq!(p.dk(&g), Some((d as usize, k as usize)));
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert!(gcd_criterion(2, 2, 2, 5, 1).unwrap());
        assert!(!gcd_criterion(2, 2, 1, 5, 1).unwrap());
        assert!(!gcd_criterion(2, 1, 1, 6, 1).unwrap());
        assert!(gcd_criterion(3, 3, 2, 4, 4).unwrap());
        assert!(gcd_criterion(4, 3, 1, 1, 1).is_err());
    }

    #[test]
    fn rank_one_diamond_odd_ell() {
        // A₁ at ℓ = 5 has cyclic data (N, m, l) = (2, 1, 5).
        let dia = Diamond::cyclic(2, 1, 5);
        let g = &dia.g;
        for (d, k, ok) in [(1, 1, true), (2, 2, true), (2, 1, false)] {
            let s = pairing_solution(g, &Pairing::cyclic(2, d, k).unwrap());
            assert_eq!(check_diamond_equations(&s, &dia).unwrap(), ok, "(d,k)=({d},{k})");
        }
    }
}
