//! Finite pointed G-sets: fixed points, isotropy strata, primitives, and
//! G-fixed formal sums in finite symmetric powers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{budget, Error, Result};
use crate::fpla::FpMatrix;
use crate::groups::{FiniteGroup, Subgroup, SubgroupLattice};

/// Largest number of raw multisets the symmetric-power enumeration will visit.
const SYM_POWER_BUDGET: u128 = 5_000_000;

/// A finite pointed G-set. Point 0 is the basepoint.
#[derive(Clone, Debug)]
pub struct PointedGSet {
    group: FiniteGroup,
    /// `action[g][x]`
    action: Vec<Vec<usize>>,
}

/// Points of isotropy exactly `H` (basepoint not listed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub subgroup: Subgroup,
    pub points: Vec<usize>,
}

/// `Pr^{G/H}(X)` as its Weyl-orbits of the stratum; the basepoint is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitives {
    pub subgroup: Subgroup,
    pub classes: Vec<Vec<usize>>,
}

impl Primitives {
    /// Number of points including the basepoint.
    pub fn size(&self) -> usize {
        1 + self.classes.len()
    }
}

/// A formal sum of non-basepoint points; the empty sum is the basepoint.
/// Sorted by point with nonzero coefficients.
pub type FormalSum = Vec<(usize, u32)>;

impl PointedGSet {
    /// Validates a raw action table (point 0 must be fixed).
    pub fn from_action(group: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Shape("one action row per group element".into()));
        }
        let size = action[0].len();
        if size == 0 || action.iter().any(|row| row.len() != size || row.iter().any(|&y| y >= size)) {
            return Err(Error::Shape("ragged or out-of-range action".into()));
        }
        if action[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidParameter("identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            if action[g][0] != 0 {
                return Err(Error::InvalidParameter("basepoint not fixed".into()));
            }
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..size).any(|x| action[gh][x] != action[g][action[h][x]]) {
                    return Err(Error::InvalidParameter("not a group action".into()));
                }
            }
        }
        Ok(Self { group: group.clone(), action })
    }

    /// Disjoint union of coset spaces `G/K` plus a basepoint.
    pub fn from_orbits(group: &FiniteGroup, stabilizers: &[Subgroup]) -> Result<Self> {
        let mut action = vec![vec![0usize]; group.order()];
        let mut offset = 1;
        for k in stabilizers {
            k.verify(group)?;
            let mut coset_id: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut rep_coset = vec![0; group.order()];
            for g in 0..group.order() {
                let mut c: Vec<usize> = k.elements().iter().map(|&x| group.mul(g, x)).collect();
                c.sort_unstable();
                let next = coset_id.len();
                rep_coset[g] = *coset_id.entry(c).or_insert(next);
            }
            // a representative per coset
            let mut reps = vec![usize::MAX; coset_id.len()];
            for g in 0..group.order() {
                if reps[rep_coset[g]] == usize::MAX {
                    reps[rep_coset[g]] = g;
                }
            }
            for (h, row) in action.iter_mut().enumerate() {
                row.extend(reps.iter().map(|&r| offset + rep_coset[group.mul(h, r)]));
            }
            offset += reps.len();
        }
        Self::from_action(group, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of points including the basepoint.
    pub fn size(&self) -> usize {
        self.action[0].len()
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    /// `{x : hx = x for all h ∈ H}`, basepoint included.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size()).filter(|&x| h.elements().iter().all(|&g| self.action[g][x] == x)).collect()
    }

    pub fn isotropy(&self, x: usize) -> Subgroup {
        Subgroup::from_elements((0..self.group.order()).filter(|&g| self.action[g][x] == x).collect())
    }

    /// Orbits of non-basepoint points.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 1..self.size() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = (0..self.group.order()).map(|g| self.action[g][x]).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn stratum(&self, h: &Subgroup) -> Stratum {
        let points = (1..self.size()).filter(|&x| &self.isotropy(x) == h).collect();
        Stratum { subgroup: h.clone(), points }
    }

    /// The stratum of `H` modulo the Weyl group, i.e. orbits of `N_G(H)` on it.
    pub fn primitives(&self, h: &Subgroup) -> Primitives {
        let stratum = self.stratum(h);
        let normalizer = self.group.normalizer(h);
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for &x in &stratum.points {
            if seen.contains(&x) {
                continue;
            }
            let orbit: BTreeSet<usize> = normalizer.elements().iter().map(|&g| self.action[g][x]).collect();
            seen.extend(orbit.iter().copied());
            classes.push(orbit.into_iter().collect());
        }
        Primitives { subgroup: h.clone(), classes }
    }

    /// Sub-G-set of points whose isotropy is conjugate to `h`.
    pub fn isotropy_layer(&self, h: &Subgroup) -> PointedGSet {
        let keep: Vec<usize> = std::iter::once(0)
            .chain((1..self.size()).filter(|&x| {
                let iso = self.isotropy(x);
                iso.order() == h.order() && (0..self.group.order()).any(|g| self.group.conjugate_subgroup(g, &iso) == *h)
            }))
            .collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let action = self.action.iter().map(|row| keep.iter().map(|&x| pos[&row[x]]).collect()).collect();
        PointedGSet { group: self.group.clone(), action }
    }

    fn apply_sum(&self, g: usize, s: &FormalSum) -> FormalSum {
        let mut out: Vec<(usize, u32)> = s.iter().map(|&(x, c)| (self.action[g][x], c)).collect();
        out.sort_unstable();
        out
    }

    fn is_fixed(&self, s: &FormalSum) -> bool {
        self.group.generators().iter().all(|&g| &self.apply_sum(g, s) == s)
    }

    /// G-fixed elements of `Sp^n(X)` (or of its mod-`p` image), found by
    /// enumerating every multiset of at most `n` non-basepoint points.
    pub fn sym_power_fixed_points(&self, n: usize, mod_p: Option<u32>) -> Result<Vec<FormalSum>> {
        let k = self.size() - 1;
        let count = multiset_count(k, n);
        if count > SYM_POWER_BUDGET {
            return budget(format!("{count} multisets exceed {SYM_POWER_BUDGET}"));
        }
        let mut found = BTreeSet::new();
        let mut coeffs = vec![0u32; k];
        let mut visit = |coeffs: &[u32]| {
            let s: FormalSum = coeffs
                .iter()
                .enumerate()
                .filter_map(|(i, &c)| {
                    let c = mod_p.map_or(c, |p| c % p);
                    (c != 0).then_some((i + 1, c))
                })
                .collect();
            if self.is_fixed(&s) {
                found.insert(s);
            }
        };
        fill(&mut coeffs, 0, n as u32, &mut visit);
        Ok(found.into_iter().collect())
    }

    /// The transfer `[x] ↦ Σ_{gH ∈ G/H} gx` from `Pr^{G/H}(X)` to
    /// `Sp^{[G:H]}(X)^G`, with the basepoint sent to the empty sum.
    pub fn transfer(&self, h: &Subgroup, x: usize) -> FormalSum {
        let mut seen = BTreeSet::new();
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for g in 0..self.group.order() {
            let mut coset: Vec<usize> = h.elements().iter().map(|&y| self.group.mul(g, y)).collect();
            coset.sort_unstable();
            if seen.insert(coset) {
                *counts.entry(self.action[g][x]).or_default() += 1;
            }
        }
        counts.into_iter().collect()
    }

    /// Dimension over F_p of the G-fixed vectors of the free F_p-module on
    /// the non-basepoint points, as a nullspace.
    pub fn fixed_subspace_dim(&self, p: u32) -> Result<usize> {
        let k = self.size() - 1;
        if k == 0 {
            return Ok(0);
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for &g in self.group.generators() {
            // (ρ(g) − I) v = 0, with ρ(g) e_x = e_{gx}
            for y in 1..=k {
                rows.push((1..=k).map(|x| i64::from(self.action[g][x] == y) - i64::from(x == y)).collect());
            }
        }
        if rows.is_empty() {
            return Ok(k);
        }
        Ok(FpMatrix::from_rows(&rows, p)?.nullspace().dim())
    }
}

fn fill(coeffs: &mut [u32], i: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
    if i == coeffs.len() {
        visit(coeffs);
        return;
    }
    for c in 0..=left {
        coeffs[i] = c;
        fill(coeffs, i + 1, left - c, visit);
    }
    coeffs[i] = 0;
}

/// Multisets of size at most `n` from `k` kinds: C(k + n, n).
fn multiset_count(k: usize, n: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 1..=n as u128 {
        r = r * (k as u128 + i) / i;
    }
    r
}

/// Every pointed G-set up to isomorphism with at most `max_points`
/// non-basepoint points, as multisets of orbit types `G/K` over conjugacy
/// class representatives.
pub fn enumerate_gsets(lattice: &SubgroupLattice, max_points: usize) -> Result<Vec<PointedGSet>> {
    let g = lattice.group();
    let reps: Vec<Subgroup> = lattice.conjugacy_classes().iter().map(|c| lattice.subgroup(c[0]).clone()).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        g: &FiniteGroup,
        reps: &[Subgroup],
        start: usize,
        left: usize,
        chosen: &mut Vec<Subgroup>,
        out: &mut Vec<PointedGSet>,
    ) -> Result<()> {
        out.push(PointedGSet::from_orbits(g, chosen)?);
        for i in start..reps.len() {
            let size = g.order() / reps[i].order();
            if size <= left {
                chosen.push(reps[i].clone());
                rec(g, reps, i, left - size, chosen, out)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    rec(g, &reps, 0, max_points, &mut chosen, &mut out)?;
    Ok(out)
}

/// Result of the set-level checks on one pointed G-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetReport {
    pub points: usize,
    /// Every non-basepoint point lies in exactly one conjugate stratum.
    pub strata_partition: bool,
    /// For each isotropy class: transfer is a bijection onto `Sp^{[G:H]}(X)^G`.
    pub transfer_bijection: bool,
    /// For each isotropy class: fixed sums up to twice the index factor
    /// uniquely into generators.
    pub free_monoid: bool,
    pub fixed_dim: usize,
    pub primitive_sum: usize,
}

impl GSetReport {
    pub fn passed(&self) -> bool {
        self.strata_partition && self.transfer_bijection && self.free_monoid && self.fixed_dim == self.primitive_sum
    }
}

/// Runs the stratification, transfer-bijection, free-monoid and dimension
/// checks on `x`.
pub fn check_gset(lattice: &SubgroupLattice, x: &PointedGSet, p: u32) -> Result<GSetReport> {
    let g = lattice.group();
    let reps: Vec<Subgroup> = lattice.conjugacy_classes().iter().map(|c| lattice.subgroup(c[0]).clone()).collect();

    let mut hits = vec![0usize; x.size()];
    for c in lattice.conjugacy_classes() {
        for &i in c {
            for pt in x.stratum(lattice.subgroup(i)).points {
                hits[pt] += 1;
            }
        }
    }
    let strata_partition = hits[1..].iter().all(|&h| h == 1);

    let mut transfer_bijection = true;
    let mut free_monoid = true;
    let mut primitive_sum = 0;
    for h in &reps {
        let pr = x.primitives(h);
        primitive_sum += pr.size() - 1;
        let layer = x.isotropy_layer(h);
        let index = g.order() / h.order();
        let lpr = layer.primitives(h);
        let fixed = layer.sym_power_fixed_points(index, None)?;
        let mut images: BTreeSet<FormalSum> = lpr.classes.iter().map(|c| layer.transfer(h, c[0])).collect();
        images.insert(Vec::new());
        // every member of a class must transfer to the same sum
        let consistent = lpr.classes.iter().all(|c| c.iter().all(|&y| layer.transfer(h, y) == layer.transfer(h, c[0])));
        let fixed_set: BTreeSet<FormalSum> = fixed.iter().cloned().collect();
        transfer_bijection &= consistent && images.len() == lpr.size() && images == fixed_set && lpr.size() == pr.size();

        let gens: Vec<FormalSum> = fixed.iter().filter(|s| !s.is_empty()).cloned().collect();
        let bigger = layer.sym_power_fixed_points(2 * index, None)?;
        for s in &bigger {
            let total: u32 = s.iter().map(|&(_, c)| c).sum();
            if total as usize % index != 0 {
                free_monoid = false;
                continue;
            }
            let ways = match total as usize / index {
                0 => 1,
                1 => gens.iter().filter(|gn| *gn == s).count(),
                _ => {
                    let mut w = 0;
                    for a in 0..gens.len() {
                        for b in a..gens.len() {
                            if &add_sums(&gens[a], &gens[b]) == s {
                                w += 1;
                            }
                        }
                    }
                    w
                }
            };
            free_monoid &= ways == 1;
        }
    }

    Ok(GSetReport {
        points: x.size() - 1,
        strata_partition,
        transfer_bijection,
        free_monoid,
        fixed_dim: x.fixed_subspace_dim(p)?,
        primitive_sum,
    })
}

fn add_sums(a: &FormalSum, b: &FormalSum) -> FormalSum {
    let mut m: BTreeMap<usize, u32> = BTreeMap::new();
    for &(x, c) in a.iter().chain(b) {
        *m.entry(x).or_default() += c;
    }
    m.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog;

    fn sub(g: &FiniteGroup, order: usize) -> Subgroup {
        let l = SubgroupLattice::new(g).unwrap();
        l.subgroups().iter().find(|h| h.order() == order).unwrap().clone()
    }

    #[test]
    fn fixed_point_examples() {
        let g = build_catalog("cyclic:4").unwrap();
        let x = PointedGSet::from_orbits(&g, &[g.trivial_subgroup()]).unwrap();
        assert_eq!(x.fixed_points(&g.trivial_subgroup()).len(), 5);
        assert_eq!(x.fixed_points(&sub(&g, 2)), vec![0]);
        let k = sub(&g, 2);
        let y = PointedGSet::from_orbits(&g, &[k.clone()]).unwrap();
        assert_eq!(y.fixed_points(&k), vec![0, 1, 2]);
        // monotone in H
        assert!(y.fixed_points(&g.whole()).len() <= y.fixed_points(&k).len());
    }

    #[test]
    fn primitives_examples() {
        let g = build_catalog("cyclic:3").unwrap();
        let x = PointedGSet::from_orbits(&g, &[g.trivial_subgroup(), g.whole(), g.whole()]).unwrap();
        assert_eq!(x.primitives(&g.whole()).size(), x.fixed_points(&g.whole()).len());
        assert_eq!(x.primitives(&g.trivial_subgroup()).size(), 2);

        let d = build_catalog("dihedral:8").unwrap();
        let l = SubgroupLattice::new(&d).unwrap();
        let h = l.subgroups().iter().find(|h| h.order() == 4 && l.is_normal(l.index_of(h).unwrap())).unwrap().clone();
        let x = PointedGSet::from_orbits(&d, &[h.clone(), h.clone()]).unwrap();
        // two orbits of size 2, W = Z/2 acts freely on each
        assert_eq!(x.primitives(&h).size(), 3);
        assert!(PointedGSet::from_action(&d, vec![vec![0, 1]; 7]).is_err());
    }

    #[test]
    fn sym_power_examples() {
        let z2 = build_catalog("cyclic:2").unwrap();
        let x = PointedGSet::from_orbits(&z2, &[z2.trivial_subgroup()]).unwrap();
        let f = x.sym_power_fixed_points(2, None).unwrap();
        assert_eq!(f, vec![vec![], vec![(1, 1), (2, 1)]]);
        assert_eq!(x.primitives(&z2.trivial_subgroup()).size(), 2);
        assert_eq!(x.sym_power_fixed_points(1, None).unwrap().len(), x.fixed_points(&z2.whole()).len());

        let z3 = build_catalog("cyclic:3").unwrap();
        let y = PointedGSet::from_orbits(&z3, &[z3.trivial_subgroup()]).unwrap();
        assert_eq!(y.sym_power_fixed_points(3, Some(3)).unwrap(), vec![vec![], vec![(1, 1), (2, 1), (3, 1)]]);
        assert_eq!(y.sym_power_fixed_points(2, Some(3)).unwrap(), vec![Vec::<(usize, u32)>::new()]);
        // mod 2 kills a doubled fixed point
        let w = PointedGSet::from_orbits(&z3, &[z3.whole()]).unwrap();
        assert_eq!(w.sym_power_fixed_points(2, Some(2)).unwrap().len(), 2);
        assert_eq!(w.sym_power_fixed_points(2, None).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_and_checks() {
        let g = build_catalog("elem:2,2").unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        let sets = enumerate_gsets(&l, 4).unwrap();
        // partitions of ≤ 4 into parts 1 (G/G), 2 (three lines), 4 (G/1)
        let mut brute = 0;
        for a in 0..=4usize {
            for b in 0..=2usize {
                for c in 0..=1usize {
                    if a + 2 * b + 4 * c <= 4 {
                        // multisets of b lines from 3 kinds
                        brute += (b + 1) * (b + 2) / 2;
                    }
                }
            }
        }
        assert_eq!(sets.len(), brute);
        for x in &sets {
            let r = check_gset(&l, x, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
