use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::is_prime;

/// A finite group given by its full multiplication table.
///
/// Elements are `0..order`. `perm` optionally records a faithful permutation
/// action (used for symmetric and affine groups, where fixed-point counts and
/// orbit structure matter).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Option<Vec<String>>,
    generators: Vec<usize>,
    perm: Option<Vec<Vec<usize>>>,
}

/// A subgroup, as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Wraps an element set; call [`Subgroup::verify`] before trusting it.
    pub fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    /// Checks closure under products and inverses and presence of the identity.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        if self.elements.iter().any(|&x| x >= g.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        if !self.contains(g.identity()) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &self.elements {
            if !self.contains(g.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &self.elements {
                if !self.contains(g.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed under product {a}*{b}")));
                }
            }
        }
        Ok(())
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, checking the group axioms
    /// on the whole table.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(Error::InvalidTable("table is not square with in-range entries".into()));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidTable(format!("{} labels for order {order}", l.len())));
            }
        }
        let mult: Vec<usize> = table.concat();
        let at = |a: usize, b: usize| mult[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidTable("no identity".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
            inverse[a] = inv;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut g = Self {
            name: name.into(),
            order,
            mult,
            inverse,
            identity,
            labels,
            generators: Vec::new(),
            perm: None,
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Builds a group from an explicit element list and a product; the first
    /// element need not be the identity.
    pub(crate) fn from_elements<T, F>(name: impl Into<String>, elems: Vec<T>, mul: F, label: impl Fn(&T) -> String) -> Result<Self>
    where
        T: Eq + Hash + Clone,
        F: Fn(&T, &T) -> T,
    {
        let index: HashMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elems.len() {
            return Err(Error::InvalidTable("duplicate elements".into()));
        }
        let mut table = vec![vec![0; elems.len()]; elems.len()];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i][j] = *index
                    .get(&mul(a, b))
                    .ok_or_else(|| Error::InvalidTable("element list not closed".into()))?;
            }
        }
        let labels = elems.iter().map(label).collect();
        Self::from_table(name, table, Some(labels))
    }

    pub(crate) fn with_permutation_action(mut self, perm: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(perm.len(), self.order);
        self.perm = Some(perm);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g^{-1}`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        self.labels.as_ref().map_or_else(|| g.to_string(), |l| l[g].clone())
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Permutation of `0..degree` attached to each element, when known.
    pub fn permutation(&self, g: usize) -> Option<&[usize]> {
        self.perm.as_ref().map(|p| p[g].as_slice())
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perm.as_ref().map(|p| p[0].len())
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, lcm)
    }

    /// The prime `p` when the order is a positive power of `p`.
    pub fn prime(&self) -> Option<u32> {
        let n = self.order as u32;
        (2..=n).find(|&d| n % d == 0).filter(|&p| {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            m == 1 && is_prime(p)
        })
    }

    /// Whether this is a `p`-group for the given prime (the trivial group is a
    /// `p`-group for every `p`).
    pub fn is_p_group_for(&self, p: u32) -> bool {
        self.order == 1 || self.prime() == Some(p)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_elements(members)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        while current.order() < self.order {
            let g = *by_order.iter().find(|&&g| !current.contains(g)).expect("proper subgroup");
            gens.push(g);
            current = self.closure(&gens);
        }
        gens
    }

    /// Conjugate subgroup `g H g^{-1}`.
    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        Subgroup::from_elements(h.elements().iter().map(|&x| self.conj(g, x)).collect())
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|g| h.elements().iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// `{g : g H g^{-1} = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_elements(
            (0..self.order)
                .filter(|&g| h.elements().iter().all(|&x| h.contains(self.conj(g, x))))
                .collect(),
        )
    }

    /// `{g : g x = x g for all x in S}`.
    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        Subgroup::from_elements(
            (0..self.order).filter(|&g| set.iter().all(|&x| self.mul(g, x) == self.mul(x, g))).collect(),
        )
    }

    /// Direct product with element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let pair = |i: usize| (i / m, i % m);
        let mut mult = vec![0; n * m * n * m];
        for x in 0..n * m {
            let (a, b) = pair(x);
            for y in 0..n * m {
                let (c, d) = pair(y);
                mult[x * n * m + y] = self.mul(a, c) * m + other.mul(b, d);
            }
        }
        let inverse = (0..n * m).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect();
        let labels = Some(
            (0..n * m).map(|x| format!("({},{})", self.label(x / m), other.label(x % m))).collect(),
        );
        let mut g = FiniteGroup {
            name: format!("{}x{}", self.name, other.name),
            order: n * m,
            mult,
            inverse,
            identity: self.identity * m + other.identity,
            labels,
            generators: Vec::new(),
            perm: None,
        };
        g.generators = self
            .generators
            .iter()
            .map(|&a| a * m + other.identity)
            .chain(other.generators.iter().map(|&b| self.identity * m + b))
            .collect();
        g
    }

    /// Quotient `G/N` for a normal subgroup `N`; returns the quotient and the
    /// coset index of every element.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(n) {
            return Err(Error::InvalidParameter("quotient by a non-normal subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for &x in n.elements() {
                    coset_of[self.mul(g, x)] = c;
                }
            }
        }
        let k = reps.len();
        let table = (0..k).map(|i| (0..k).map(|j| coset_of[self.mul(reps[i], reps[j])]).collect()).collect();
        let q = FiniteGroup::from_table(format!("{}/N", self.name), table, None)?;
        Ok((q, coset_of))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(format!("Z{n}"), table, None).unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("x", vec![], None).is_err());
        // a Latin square without associativity: x*y = x - y mod 3
        let t = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        assert!(matches!(FiniteGroup::from_table("x", t, None), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn product_and_quotient() {
        let g = z(2).direct_product(&z(4));
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.closure(g.generators()).order(), 8);
        let n = g.closure(&[g.power(1, 1)]);
        let (q, _) = g.quotient(&n).unwrap();
        assert_eq!(q.order(), 8 / n.order());
    }

    #[test]
    fn subgroup_verification() {
        let g = z(6);
        assert!(Subgroup::from_elements(vec![0, 2, 4]).verify(&g).is_ok());
        assert!(Subgroup::from_elements(vec![0, 1]).verify(&g).is_err());
        assert_eq!(g.prime(), None);
        assert_eq!(z(8).prime(), Some(2));
    }
}
