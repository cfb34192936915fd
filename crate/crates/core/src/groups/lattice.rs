use std::collections::{HashMap, HashSet};

use super::group::{FiniteGroup, Subgroup};
use crate::error::{budget, Error, Result};

/// Default bound on `|G|` for building a full lattice.
pub const DEFAULT_LATTICE_BOUND: usize = 64;

fn bits_of(order: usize, h: &[usize]) -> Vec<u64> {
    let mut b = vec![0u64; order.div_ceil(64)];
    for &x in h {
        b[x / 64] |= 1 << (x % 64);
    }
    b
}

/// Every subgroup of `g`, sorted by order and then by element list.
///
/// Breadth-first: start from the trivial subgroup and repeatedly join a
/// cyclic subgroup not already contained.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return budget(format!("group order {} exceeds lattice bound {bound}", g.order()));
    }
    let n = g.order();
    let mut cyclic_gens: Vec<usize> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for x in 0..n {
        if cyclic_seen.insert(bits_of(n, g.closure(&[x]).elements())) {
            cyclic_gens.push(x);
        }
    }
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(bits_of(n, trivial.elements()));
    let mut queue: Vec<(Subgroup, Vec<usize>)> = vec![(trivial, Vec::new())];
    let mut i = 0;
    while i < queue.len() {
        let (h, gens) = queue[i].clone();
        for &c in &cyclic_gens {
            if h.contains(c) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(c);
            let k = g.closure(&ng);
            if seen.insert(bits_of(n, k.elements())) {
                queue.push((k, ng));
            }
        }
        i += 1;
    }
    let mut subs: Vec<Subgroup> = queue.into_iter().map(|(h, _)| h).collect();
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(subs)
}

/// The full subgroup lattice of a finite group, with conjugacy, normality,
/// Frattini and 𝒞 data.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: FiniteGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    /// `contains[i][j]` iff subgroup j ⊆ subgroup i.
    contains: Vec<Vec<bool>>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    normal: Vec<bool>,
    normalizers: Vec<usize>,
    frattini: usize,
    prime: Option<u32>,
    poset_c: Vec<(usize, u32)>,
}

impl SubgroupLattice {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        Self::with_bound(g, DEFAULT_LATTICE_BOUND)
    }

    pub fn with_bound(g: &FiniteGroup, bound: usize) -> Result<Self> {
        let subgroups = all_subgroups(g, bound)?;
        let m = subgroups.len();
        let index: HashMap<Subgroup, usize> = subgroups.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        let contains: Vec<Vec<bool>> = subgroups
            .iter()
            .map(|big| subgroups.iter().map(|small| big.order() % small.order() == 0 && small.is_subset_of(big)).collect())
            .collect();

        let mut class_of = vec![usize::MAX; m];
        let mut classes = Vec::new();
        let mut normal = vec![false; m];
        let mut normalizers = vec![0; m];
        for i in 0..m {
            let h = &subgroups[i];
            normalizers[i] = index[&g.normalizer(h)];
            normal[i] = subgroups[normalizers[i]].order() == g.order();
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members: Vec<usize> = (0..g.order()).map(|x| index[&g.conjugate_subgroup(x, h)]).collect();
            members.sort_unstable();
            members.dedup();
            for &j in &members {
                class_of[j] = c;
            }
            classes.push(members);
        }

        let top = m - 1;
        let maximal: Vec<usize> = (0..top)
            .filter(|&i| !(0..top).any(|j| j != i && contains[j][i]))
            .collect();
        let frattini = if maximal.is_empty() {
            top
        } else {
            let inter = maximal.iter().fold(subgroups[top].clone(), |acc, &i| acc.intersection(&subgroups[i]));
            index[&inter]
        };

        let prime = g.prime();
        let poset_c = if g.order() == 1 {
            vec![(0, 0)]
        } else if let Some(p) = prime {
            let p = p as usize;
            let mut out = Vec::new();
            for i in 0..m {
                let h = &subgroups[i];
                if !normal[i] {
                    continue;
                }
                let quotient_ok = (0..g.order()).all(|x| {
                    h.contains(g.power(x, p))
                        && (0..g.order()).all(|y| h.contains(g.mul(g.mul(x, y), g.inv(g.mul(y, x)))))
                });
                if quotient_ok {
                    let mut idx = g.order() / h.order();
                    let mut d = 0;
                    while idx > 1 {
                        idx /= p;
                        d += 1;
                    }
                    out.push((i, d));
                }
            }
            out
        } else {
            Vec::new()
        };

        Ok(Self { group: g.clone(), subgroups, index, contains, class_of, classes, normal, normalizers, frattini, prime, poset_c })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h).copied()
    }

    fn require(&self, h: &Subgroup) -> Result<usize> {
        self.index_of(h).ok_or_else(|| Error::NotASubgroup(format!("{:?}", h.elements())))
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    /// Whether subgroup `small` is contained in subgroup `big` (by index).
    pub fn leq(&self, small: usize, big: usize) -> bool {
        self.contains[big][small]
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn normalizer(&self, i: usize) -> usize {
        self.normalizers[i]
    }

    /// `|N_G(H)/H|`.
    pub fn weyl_order(&self, i: usize) -> usize {
        self.subgroups[self.normalizers[i]].order() / self.subgroups[i].order()
    }

    pub fn frattini(&self) -> usize {
        self.frattini
    }

    pub fn frattini_subgroup(&self) -> &Subgroup {
        &self.subgroups[self.frattini]
    }

    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    /// Maximal proper subgroups.
    pub fn maximal(&self) -> Vec<usize> {
        let top = self.whole_index();
        (0..top).filter(|&i| !(0..top).any(|j| j != i && self.contains[j][i])).collect()
    }

    /// Members of 𝒞 with their ranks `d(H)`, in subgroup index order.
    pub fn poset_c(&self) -> &[(usize, u32)] {
        &self.poset_c
    }

    /// `d(H)` for `H ∈ 𝒞`.
    pub fn d_of(&self, i: usize) -> Option<u32> {
        self.poset_c.iter().find(|&&(j, _)| j == i).map(|&(_, d)| d)
    }

    /// Indices of the subgroups `K` with `H ⊊ K ⊊ G`.
    pub fn open_interval_above(&self, i: usize) -> Vec<usize> {
        let top = self.whole_index();
        (0..top).filter(|&k| k != i && self.contains[k][i]).collect()
    }

    /// Conjugacy-class representatives ordered so that no earlier class is
    /// subconjugate to a later one: order descending, then class size, then
    /// element list.
    pub fn subgroup_ordering(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        reps.sort_by(|&a, &b| {
            let (ha, hb) = (&self.subgroups[a], &self.subgroups[b]);
            hb.order()
                .cmp(&ha.order())
                .then(self.classes[self.class_of[a]].len().cmp(&self.classes[self.class_of[b]].len()))
                .then_with(|| ha.cmp(hb))
        });
        reps
    }

    /// Checks both ordering properties directly: every class is hit once, and
    /// no earlier representative has a conjugate inside a later one.
    pub fn verify_ordering(&self, order: &[usize]) -> bool {
        let mut hit = vec![0; self.classes.len()];
        for &i in order {
            hit[self.class_of[i]] += 1;
        }
        if hit.iter().any(|&c| c != 1) {
            return false;
        }
        order.iter().enumerate().all(|(a, &i)| {
            order[a + 1..]
                .iter()
                .all(|&j| !self.classes[self.class_of[i]].iter().any(|&c| self.contains[j][c]))
        })
    }

    /// Transversality for `H, K ∈ 𝒞`: `d(H) + d(K) = d(H ∩ K)`.
    pub fn transverse(&self, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        let (hi, ki) = (self.require(h)?, self.require(k)?);
        let dh = self.d_of(hi).ok_or(Error::NotInPosetC)?;
        let dk = self.d_of(ki).ok_or(Error::NotInPosetC)?;
        let meet = self.index[&h.intersection(k)];
        let dm = self.d_of(meet).ok_or(Error::NotInPosetC)?;
        Ok(dh + dk == dm)
    }
}
