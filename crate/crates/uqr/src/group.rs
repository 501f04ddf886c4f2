//! Finite abelian groups `ℤ_{d_1} × … × ℤ_{d_k}` and their subgroups.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Product of cyclic groups; factors equal to 1 are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<i64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<i64>) -> Self {
        assert!(factors.iter().all(|&d| d >= 1), "factors must be positive");
        Self {
            factors: factors.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.factors.len()]
    }

    pub fn reduce(&self, e: &[i64]) -> Vec<i64> {
        e.iter()
            .zip(&self.factors)
            .map(|(x, d)| x.rem_euclid(*d))
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y).rem_euclid(*d))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.factors)
            .map(|(x, d)| (-x).rem_euclid(*d))
            .collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.factors)
            .map(|(x, d)| (k * x).rem_euclid(*d))
            .collect()
    }

    /// Mixed-radix index with the first factor varying slowest.
    pub fn index(&self, e: &[i64]) -> usize {
        let mut idx = 0usize;
        for (x, d) in e.iter().zip(&self.factors) {
            idx = idx * (*d as usize) + x.rem_euclid(*d) as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut e = vec![0i64; self.factors.len()];
        for (slot, d) in e.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % *d as usize) as i64;
            idx /= *d as usize;
        }
        e
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn element_order(&self, e: &[i64]) -> i64 {
        e.iter()
            .zip(&self.factors)
            .map(|(x, d)| d / num_integer::gcd(*x, *d))
            .fold(1, num_integer::lcm)
    }

    /// `add_table()[i * n + j]` is the index of `element(i) + element(j)`.
    pub fn add_table(&self) -> Vec<usize> {
        let els = self.elements();
        let n = els.len();
        let mut t = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = self.index(&self.add(&els[i], &els[j]));
            }
        }
        t
    }

    /// Subgroup generated by the given elements.
    pub fn span(&self, gens: &[Vec<i64>]) -> Subgroup {
        Subgroup::from_members(self, self.span_members(gens).into_iter().collect())
    }

    fn span_members(&self, gens: &[Vec<i64>]) -> BTreeSet<usize> {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(self.index(&self.zero()));
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if members.insert(self.index(&y)) {
                    frontier.push(y);
                }
            }
        }
        members
    }

    /// All subgroups, ordered by size and then by member indices.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let els = self.elements();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for k in 0..=self.factors.len() {
            for t in multisets(els.len(), k) {
                let gens: Vec<Vec<i64>> = t.iter().map(|&i| els[i].clone()).collect();
                let members: Vec<usize> = self.span_members(&gens).into_iter().collect();
                if seen.insert(members.clone()) {
                    out.push(Subgroup::from_members(self, members));
                }
            }
        }
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        out
    }
}

/// Nondecreasing index tuples of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in multisets(n, k - 1) {
        let start = t.last().copied().unwrap_or(0);
        for i in start..n {
            let mut u = t.clone();
            u.push(i);
            out.push(u);
        }
    }
    out
}

/// Subgroup as a sorted member-index set together with a direct-sum basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
    /// `(generator, order)` with `H = ⊕ ℤ_order · generator`.
    pub basis: Vec<(Vec<i64>, i64)>,
}

impl Subgroup {
    fn from_members(g: &FiniteAbelianGroup, members: Vec<usize>) -> Self {
        let basis = direct_basis(g, &members);
        Self { members, basis }
    }

    pub fn trivial(g: &FiniteAbelianGroup) -> Self {
        Self::from_members(g, vec![g.index(&g.zero())])
    }

    pub fn whole(g: &FiniteAbelianGroup) -> Self {
        Self::from_members(g, (0..g.order()).collect())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    /// Coordinates of a member with respect to `basis`.
    pub fn coordinates(&self, g: &FiniteAbelianGroup, e: &[i64]) -> Option<Vec<i64>> {
        let target = g.index(e);
        let orders: Vec<i64> = self.basis.iter().map(|b| b.1).collect();
        let coords = FiniteAbelianGroup { factors: orders };
        coords.elements().into_iter().find(|c| {
            let mut x = g.zero();
            for (ci, (gen, _)) in c.iter().zip(&self.basis) {
                x = g.add(&x, &g.scale(*ci, gen));
            }
            g.index(&x) == target
        })
    }
}

/// Smallest generating tuple whose orders multiply to the subgroup order.
fn direct_basis(g: &FiniteAbelianGroup, members: &[usize]) -> Vec<(Vec<i64>, i64)> {
    let size = members.len() as i64;
    if size == 1 {
        return vec![];
    }
    let els: Vec<Vec<i64>> = members.iter().map(|&i| g.element(i)).collect();
    let mut by_order: Vec<(i64, usize)> = els
        .iter()
        .enumerate()
        .map(|(k, e)| (-g.element_order(e), k))
        .collect();
    by_order.sort();
    let order_first: Vec<usize> = by_order.into_iter().map(|(_, k)| k).collect();
    for k in 1..=g.factors().len() {
        for idx in multisets(els.len(), k) {
            let gens: Vec<Vec<i64>> = idx.iter().map(|&i| els[order_first[i]].clone()).collect();
            let prod: i64 = gens.iter().map(|e| g.element_order(e)).product();
            if prod == size && g.span_members(&gens).len() as i64 == size {
                return gens
                    .into_iter()
                    .map(|e| {
                        let o = g.element_order(&e);
                        (e, o)
                    })
                    .collect();
            }
        }
    }
    unreachable!("every finite abelian group has a direct-sum basis")
}
