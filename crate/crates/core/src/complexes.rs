//! Finite posets, order complexes, reduced homology over F_p, subgroup
//! complexes `P(G)_{⊃H}`, Frattini acyclicity, Tits buildings and the
//! subgroup-complex product.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{budget, Error, Result};
use crate::fpla::{enumerate_subspaces, FpMatrix, DEFAULT_SUBSPACE_BUDGET_BITS};
use crate::groups::{Subgroup, SubgroupLattice};
use crate::{binomial, is_prime};

/// Bound on the total number of faces for homology computations.
pub const DEFAULT_FACE_BUDGET: usize = 200_000;

/// A finite poset given by its order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("order relation must be square".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidParameter(format!("not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::InvalidParameter(format!("not antisymmetric at {a},{b}")));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidParameter(format!("not transitive at {a},{b},{c}")));
                    }
                }
            }
        }
        Ok(Self { leq })
    }

    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::new((0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }
}

/// A simplicial complex stored as all of its faces, grouped by dimension.
/// Each face is a sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self { faces: Vec::new() }
    }

    /// Downward closure of the given facets.
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if f.len() > 24 {
                return budget("facet too large to expand");
            }
            for mask in 1u32..(1 << f.len()) {
                all.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
            if all.len() > DEFAULT_FACE_BUDGET {
                return budget(format!("more than {DEFAULT_FACE_BUDGET} faces"));
            }
        }
        Ok(Self::from_face_set(all))
    }

    fn from_face_set(all: BTreeSet<Vec<usize>>) -> Self {
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for f in all {
            let k = f.len() - 1;
            if faces.len() <= k {
                faces.resize(k + 1, Vec::new());
            }
            faces[k].push(f);
        }
        Self { faces }
    }

    /// Faces of dimension `k`.
    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Dimension, or `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.faces.len() as i32 - 1
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.faces(0).len()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for k in 0..self.faces.len() {
            for f in &self.faces[k] {
                let covered = self.faces.get(k + 1).is_some_and(|up| {
                    up.iter().any(|g| f.iter().all(|v| g.binary_search(v).is_ok()))
                });
                if !covered {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// Reduced Euler characteristic from face counts.
    pub fn reduced_euler(&self) -> i64 {
        -1 + self.faces.iter().enumerate().map(|(k, f)| if k % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) }).sum::<i64>()
    }
}

/// Nerve of a poset: `k`-faces are chains of `k + 1` elements.
pub fn order_complex(poset: &FinitePoset) -> Result<SimplicialComplex> {
    let n = poset.len();
    let mut all = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().expect("nonempty");
        for v in 0..n {
            if poset.lt(top, v) {
                let mut c = chain.clone();
                c.push(v);
                stack.push(c);
            }
        }
        let mut sorted = chain;
        sorted.sort_unstable();
        all.insert(sorted);
        if all.len() > DEFAULT_FACE_BUDGET {
            return budget(format!("order complex has more than {DEFAULT_FACE_BUDGET} faces"));
        }
    }
    Ok(SimplicialComplex::from_face_set(all))
}

/// Reduced F_p homology: nonzero Betti numbers by degree, plus the reduced
/// Euler characteristic from face counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub p: u32,
    pub betti: BTreeMap<i32, usize>,
    pub euler: i64,
}

impl HomologyProfile {
    /// Homology of `S^k` (with `S^{-1}` the empty space).
    pub fn sphere(k: i32, p: u32) -> Self {
        Self { p, betti: BTreeMap::from([(k, 1)]), euler: if k.rem_euclid(2) == 0 { 1 } else { -1 } }
    }

    pub fn get(&self, d: i32) -> usize {
        self.betti.get(&d).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.is_empty()
    }

    /// The single nonzero degree and its dimension, if concentrated.
    pub fn concentrated(&self) -> Option<(i32, usize)> {
        match self.betti.len() {
            1 => self.betti.iter().next().map(|(&d, &b)| (d, b)),
            _ => None,
        }
    }

    pub fn euler_from_betti(&self) -> i64 {
        self.betti.iter().map(|(&d, &b)| if d.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Shifts every degree by `k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            p: self.p,
            betti: self.betti.iter().map(|(&d, &b)| (d + k, b)).collect(),
            euler: if k.rem_euclid(2) == 0 { self.euler } else { -self.euler },
        }
    }
}

/// Boundary map `∂_k: C_k → C_{k−1}` as a dense matrix, with `C_{−1} = F_p`.
fn boundary(c: &SimplicialComplex, k: usize, p: u32, index: &[HashMap<Vec<usize>, usize>]) -> FpMatrix {
    let cols = c.faces(k).len();
    if k == 0 {
        let mut m = FpMatrix::zeros(1, cols, p);
        for j in 0..cols {
            m.set(0, j, 1);
        }
        return m;
    }
    let rows = c.faces(k - 1).len();
    let mut m = FpMatrix::zeros(rows, cols, p);
    for (j, f) in c.faces(k).iter().enumerate() {
        for i in 0..f.len() {
            let mut face = f.clone();
            face.remove(i);
            let r = index[k - 1][&face];
            m.set(r, j, if i % 2 == 0 { 1 } else { p - 1 });
        }
    }
    m
}

fn face_index(c: &SimplicialComplex) -> Vec<HashMap<Vec<usize>, usize>> {
    (0..=c.dim().max(-1) as usize)
        .take(c.faces.len())
        .map(|k| c.faces(k).iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
        .collect()
}

fn rank_of(m: &FpMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

/// Reduced homology over F_p of the augmented chain complex. The empty
/// complex has `betti_{−1} = 1`.
pub fn reduced_homology(c: &SimplicialComplex, p: u32) -> Result<HomologyProfile> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let total: usize = c.face_counts().iter().sum();
    if total > DEFAULT_FACE_BUDGET {
        return budget(format!("{total} faces exceed {DEFAULT_FACE_BUDGET}"));
    }
    let index = face_index(c);
    let top = c.faces.len();
    // ranks[k] = rank ∂_k for k = 0..top (∂_0 is the augmentation)
    let ranks: Vec<usize> = (0..top).map(|k| rank_of(&boundary(c, k, p, &index))).collect();
    let mut betti = BTreeMap::new();
    let b_minus = 1 - ranks.first().copied().unwrap_or(0);
    if b_minus > 0 {
        betti.insert(-1, b_minus);
    }
    for k in 0..top {
        let next = ranks.get(k + 1).copied().unwrap_or(0);
        let b = c.faces(k).len() - ranks[k] - next;
        if b > 0 {
            betti.insert(k as i32, b);
        }
    }
    let profile = HomologyProfile { p, betti, euler: c.reduced_euler() };
    if profile.euler != profile.euler_from_betti() {
        return Err(Error::Inconsistent("Euler characteristic mismatch".into()));
    }
    Ok(profile)
}

/// Homology of the unreduced suspension: a shift up by one. The empty
/// space (`S^{−1}`) goes to `S^0`.
pub fn unreduced_suspension_profile(h: &HomologyProfile) -> HomologyProfile {
    h.shift(1)
}

/// `P(G)_{⊃H}`: proper subgroups strictly containing `H`, as lattice indices
/// and a poset on them.
pub fn subgroup_poset(lattice: &SubgroupLattice, h: usize) -> Result<(Vec<usize>, FinitePoset)> {
    let members = lattice.open_interval_above(h);
    let poset = FinitePoset::from_fn(members.len(), |a, b| lattice.leq(members[a], members[b]))?;
    Ok((members, poset))
}

/// Reduced homology of `P(G)_{⊃H}` (empty poset gives `S^{−1}`).
pub fn subgroup_complex_profile(lattice: &SubgroupLattice, h: usize, p: u32) -> Result<HomologyProfile> {
    let (_, poset) = subgroup_poset(lattice, h)?;
    reduced_homology(&order_complex(&poset)?, p)
}

/// Homology of `P(G)_{⊃H}^◇`, with `P(G)_{⊃G}^◇ = S^{−1}` by convention.
pub fn diamond_profile(lattice: &SubgroupLattice, h: usize, p: u32) -> Result<HomologyProfile> {
    if h == lattice.whole_index() {
        return Ok(HomologyProfile::sphere(-1, p));
    }
    Ok(unreduced_suspension_profile(&subgroup_complex_profile(lattice, h, p)?))
}

/// Outcome of the two Frattini certificates for one subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FrattiniOutcome {
    /// `F ⊆ H`: nothing to check.
    Skipped,
    Checked {
        poset_size: usize,
        acyclic: bool,
        /// `K ↦ KF` lands in the poset, is monotone, inflationary, and its
        /// image has minimum `HF`.
        closure_certificate: bool,
    },
}

impl FrattiniOutcome {
    pub fn passed(&self) -> bool {
        match self {
            FrattiniOutcome::Skipped => true,
            FrattiniOutcome::Checked { acyclic, closure_certificate, .. } => *acyclic && *closure_certificate,
        }
    }
}

pub fn frattini_check(lattice: &SubgroupLattice, h: usize, p: u32) -> Result<FrattiniOutcome> {
    let f = lattice.frattini();
    if lattice.leq(f, h) {
        return Ok(FrattiniOutcome::Skipped);
    }
    let (members, poset) = subgroup_poset(lattice, h)?;
    let profile = reduced_homology(&order_complex(&poset)?, p)?;
    let g = lattice.group();
    let join_f = |k: usize| -> Option<usize> {
        let mut gens: Vec<usize> = lattice.subgroup(k).elements().to_vec();
        gens.extend_from_slice(lattice.subgroup(f).elements());
        lattice.index_of(&g.closure(&gens))
    };
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let image: Vec<Option<usize>> = members.iter().map(|&k| join_f(k).and_then(|kf| pos.get(&kf).copied())).collect();
    let hf = join_f(h).and_then(|x| pos.get(&x).copied());
    let mut ok = image.iter().all(Option::is_some) && hf.is_some();
    if ok {
        let img: Vec<usize> = image.iter().map(|x| x.expect("checked")).collect();
        let hf = hf.expect("checked");
        for a in 0..members.len() {
            ok &= poset.leq(a, img[a]);
            ok &= poset.leq(hf, img[a]);
            for b in 0..members.len() {
                if poset.leq(a, b) {
                    ok &= poset.leq(img[a], img[b]);
                }
            }
        }
        ok &= img.contains(&hf);
    }
    Ok(FrattiniOutcome::Checked { poset_size: members.len(), acyclic: profile.is_acyclic(), closure_certificate: ok })
}

/// Reduced homology of the poset of proper nonzero subspaces of F_p^d.
pub fn tits_profile(d: usize, p: u32) -> Result<HomologyProfile> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let subs: Vec<_> = enumerate_subspaces(d, p, DEFAULT_SUBSPACE_BUDGET_BITS)?
        .into_iter()
        .filter(|v| v.dim() > 0 && v.dim() < d)
        .collect();
    let poset = FinitePoset::from_fn(subs.len(), |a, b| subs[a].is_subspace_of(&subs[b]).unwrap_or(false))?;
    let profile = reduced_homology(&order_complex(&poset)?, p)?;
    let expect = (p as u64).pow(binomial(d as u64, 2) as u32) as usize;
    if profile.concentrated() != Some(d as i32 - 2).map(|k| (k, expect)) {
        return Err(Error::Inconsistent(format!("building of F_{p}^{d} not concentrated: {:?}", profile.betti)));
    }
    Ok(profile)
}

/// The map induced on top reduced homology by `(H', K') ↦ H' ∩ K'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexProduct {
    /// Degree of the top reduced homology on both sides.
    pub degree: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `target_dim × source_dim` matrix in cycle bases.
    pub matrix: FpMatrix,
    pub rank: usize,
}

/// Subgroup-complex product for transverse `H, K ∈ 𝒞`, realized on the open
/// interval `((H,K), (G,G))` of `[H,G] × [K,G]` mapped to `P(G)_{⊃H∩K}`.
pub fn subgroup_complex_product(lattice: &SubgroupLattice, h: &Subgroup, k: &Subgroup, p: u32) -> Result<ComplexProduct> {
    if !lattice.transverse(h, k)? {
        return Err(Error::NotTransverse);
    }
    let hi = lattice.index_of(h).ok_or(Error::NotInPosetC)?;
    let ki = lattice.index_of(k).ok_or(Error::NotInPosetC)?;
    let top = lattice.whole_index();
    let meet = lattice.index_of(&h.intersection(k)).ok_or(Error::NotInPosetC)?;
    if hi == top && ki == top {
        return Ok(ComplexProduct {
            degree: -2,
            source_dim: 1,
            target_dim: 1,
            matrix: FpMatrix::identity(1, p),
            rank: 1,
        });
    }
    let above = |x: usize| -> Vec<usize> { (0..=top).filter(|&y| lattice.leq(x, y)).collect() };
    let pairs: Vec<(usize, usize)> = above(hi)
        .into_iter()
        .flat_map(|a| above(ki).into_iter().map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (hi, ki) && (a, b) != (top, top))
        .collect();
    let source_poset = FinitePoset::from_fn(pairs.len(), |x, y| {
        lattice.leq(pairs[x].0, pairs[y].0) && lattice.leq(pairs[x].1, pairs[y].1)
    })?;
    let (targets, target_poset) = subgroup_poset(lattice, meet)?;
    let tpos: HashMap<usize, usize> = targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let map: Vec<usize> = pairs
        .iter()
        .map(|&(a, b)| {
            let m = lattice.subgroup(a).intersection(lattice.subgroup(b));
            let mi = lattice.index_of(&m).expect("intersection is a subgroup");
            tpos.get(&mi).copied().ok_or(Error::Inconsistent("product leaves the target interval".into()))
        })
        .collect::<Result<_>>()?;

    let src = order_complex(&source_poset)?;
    let tgt = order_complex(&target_poset)?;
    if tgt.dim() < 0 {
        if src.dim() >= 0 {
            return Err(Error::Inconsistent("product source is nonempty over an empty target".into()));
        }
        return Ok(ComplexProduct { degree: -1, source_dim: 1, target_dim: 1, matrix: FpMatrix::identity(1, p), rank: 1 });
    }
    let src_h = reduced_homology(&src, p)?;
    let tgt_h = reduced_homology(&tgt, p)?;
    let degree = tgt.dim();
    if src.dim() != degree || src_h.concentrated().map(|x| x.0) != Some(degree) || tgt_h.concentrated().map(|x| x.0) != Some(degree) {
        return Err(Error::Inconsistent("product complexes are not concentrated in a common top degree".into()));
    }
    let kdeg = degree.max(0) as usize;
    let src_cycles = top_cycles(&src, kdeg, p);
    let tgt_cycles = top_cycles(&tgt, kdeg, p);
    let tgt_index: HashMap<Vec<usize>, usize> = tgt.faces(kdeg).iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();

    // push each source cycle forward, then solve in the target cycle basis
    let tdim = tgt_cycles.rows();
    let mut matrix = FpMatrix::zeros(tdim, src_cycles.rows(), p);
    for c in 0..src_cycles.rows() {
        let mut image = vec![0u32; tgt.faces(kdeg).len()];
        for (j, face) in src.faces(kdeg).iter().enumerate() {
            let coeff = src_cycles.get(c, j);
            if coeff == 0 {
                continue;
            }
            // the chain is listed in increasing order; so is its image
            let mut chain: Vec<usize> = face.clone();
            chain.sort_by(|&x, &y| {
                if source_poset.lt(x, y) {
                    std::cmp::Ordering::Less
                } else if source_poset.lt(y, x) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            });
            let imgs: Vec<usize> = chain.iter().map(|&v| map[v]).collect();
            if imgs.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let mut sorted = imgs.clone();
            sorted.sort_unstable();
            let sign = permutation_parity(&imgs, &sorted);
            let r = tgt_index[&sorted];
            let add = if sign { coeff } else { (p - coeff) % p };
            image[r] = (image[r] + add) % p;
        }
        let coords = solve_in_basis(&tgt_cycles, &image, p)?;
        for (i, &x) in coords.iter().enumerate() {
            matrix.set(i, c, x);
        }
    }
    let rank = rank_of(&matrix);
    Ok(ComplexProduct { degree, source_dim: src_cycles.rows(), target_dim: tdim, matrix, rank })
}

/// Rows form a basis of the top-dimensional cycles.
fn top_cycles(c: &SimplicialComplex, k: usize, p: u32) -> FpMatrix {
    let index = face_index(c);
    let b = boundary(c, k, p, &index);
    b.nullspace().basis().clone()
}

/// Whether the rearrangement from `from` to `to` is even.
fn permutation_parity(from: &[usize], to: &[usize]) -> bool {
    let pos: HashMap<usize, usize> = to.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let perm: Vec<usize> = from.iter().map(|v| pos[v]).collect();
    let mut seen = vec![false; perm.len()];
    let mut even = true;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            even = !even;
        }
    }
    even
}

/// Coordinates of `v` in the row basis `basis` (which must span it).
fn solve_in_basis(basis: &FpMatrix, v: &[u32], p: u32) -> Result<Vec<u32>> {
    let k = basis.rows();
    let n = basis.cols();
    // solve basis^T x = v via rref of the augmented matrix
    let mut data = Vec::with_capacity(n * (k + 1));
    for j in 0..n {
        for i in 0..k {
            data.push(basis.get(i, j));
        }
        data.push(v[j] % p);
    }
    let aug = FpMatrix::from_raw(n, k + 1, p, data)?;
    let r = aug.rref();
    if r.pivots.contains(&k) {
        return Err(Error::Inconsistent("image is not a cycle".into()));
    }
    let mut x = vec![0u32; k];
    for (row, &col) in r.pivots.iter().enumerate() {
        x[col] = r.matrix.get(row, k);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog;

    fn lat(spec: &str) -> SubgroupLattice {
        SubgroupLattice::new(&build_catalog(spec).unwrap()).unwrap()
    }

    #[test]
    fn poset_validation() {
        assert!(FinitePoset::new(vec![vec![true, true], vec![true, true]]).is_err());
        assert!(FinitePoset::new(vec![vec![false]]).is_err());
        let chain = FinitePoset::from_fn(3, |a, b| a <= b).unwrap();
        let c = order_complex(&chain).unwrap();
        assert_eq!(c.face_counts(), vec![3, 3, 1]);
        assert_eq!(c.facets(), vec![vec![0, 1, 2]]);
        let anti = FinitePoset::from_fn(3, |a, b| a == b).unwrap();
        assert_eq!(order_complex(&anti).unwrap().face_counts(), vec![3]);
    }

    #[test]
    fn homology_examples() {
        let point = SimplicialComplex::from_facets(&[vec![0]]).unwrap();
        assert!(reduced_homology(&point, 2).unwrap().is_acyclic());
        let two = SimplicialComplex::from_facets(&[vec![0], vec![1]]).unwrap();
        assert_eq!(reduced_homology(&two, 3).unwrap().betti, BTreeMap::from([(0, 1)]));
        let empty = reduced_homology(&SimplicialComplex::empty(), 2).unwrap();
        assert_eq!(empty.betti, BTreeMap::from([(-1, 1)]));
        assert_eq!(unreduced_suspension_profile(&empty).betti, BTreeMap::from([(0, 1)]));
        let circle = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(reduced_homology(&circle, 5).unwrap().betti, BTreeMap::from([(1, 1)]));
        // projective plane: torsion shows up at p = 2 only
        let rp2 = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facets: Vec<Vec<usize>> = rp2.iter().map(|f| f.to_vec()).collect();
        let c = SimplicialComplex::from_facets(&facets).unwrap();
        assert_eq!(reduced_homology(&c, 2).unwrap().betti, BTreeMap::from([(1, 1), (2, 1)]));
        assert!(reduced_homology(&c, 3).unwrap().is_acyclic());
        let three = SimplicialComplex::from_facets(&[vec![0], vec![1], vec![2]]).unwrap();
        let h = reduced_homology(&three, 2).unwrap();
        assert_eq!(unreduced_suspension_profile(&h).betti, BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn flag_complex_of_f2_cubed() {
        let l = lat("elem:2,3");
        let (members, poset) = subgroup_poset(&l, 0).unwrap();
        assert_eq!(members.len(), 14);
        let c = order_complex(&poset).unwrap();
        assert_eq!(c.face_counts(), vec![14, 21]);
        let h = reduced_homology(&c, 2).unwrap();
        assert_eq!(h.betti, BTreeMap::from([(1, 8)]));
        assert_eq!(unreduced_suspension_profile(&h).betti, BTreeMap::from([(2, 8)]));
        assert_eq!(tits_profile(3, 2).unwrap(), h);
    }

    #[test]
    fn tits_examples() {
        assert_eq!(tits_profile(1, 2).unwrap().betti, BTreeMap::from([(-1, 1)]));
        assert_eq!(tits_profile(2, 2).unwrap().betti, BTreeMap::from([(0, 2)]));
        assert_eq!(tits_profile(2, 3).unwrap().betti, BTreeMap::from([(0, 3)]));
    }

    #[test]
    fn frattini_examples() {
        let l = lat("cyclic:8");
        assert_eq!(l.frattini_subgroup().order(), 4);
        let out = frattini_check(&l, 0, 2).unwrap();
        assert!(matches!(out, FrattiniOutcome::Checked { poset_size: 2, acyclic: true, closure_certificate: true }));
        let l = lat("quaternion:8");
        let out = frattini_check(&l, 0, 2).unwrap();
        assert!(matches!(out, FrattiniOutcome::Checked { poset_size: 4, .. }) && out.passed());
        let l = lat("elem:2,2");
        assert_eq!(frattini_check(&l, 1, 2).unwrap(), FrattiniOutcome::Skipped);
    }

    #[test]
    fn shuffled_facets_same_homology() {
        let facets = vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![4, 0], vec![1, 3]];
        let mut rev = facets.clone();
        rev.reverse();
        let rev: Vec<Vec<usize>> = rev.into_iter().map(|mut f| {
            f.reverse();
            f
        }).collect();
        let a = reduced_homology(&SimplicialComplex::from_facets(&facets).unwrap(), 2).unwrap();
        let b = reduced_homology(&SimplicialComplex::from_facets(&rev).unwrap(), 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complex_products() {
        for p in [2u32, 3] {
            let l = lat(&format!("elem:{p},2"));
            let lines: Vec<Subgroup> = l.subgroups().iter().filter(|h| h.order() == p as usize).cloned().collect();
            let prod = subgroup_complex_product(&l, &lines[0], &lines[1], p).unwrap();
            assert_eq!((prod.degree, prod.source_dim, prod.target_dim, prod.rank), (0, 1, p as usize, 1));
            assert!(matches!(subgroup_complex_product(&l, &lines[0], &lines[0], p), Err(Error::NotTransverse)));
        }
        let l = lat("elem:2,3");
        let planes: Vec<Subgroup> = l.subgroups().iter().filter(|h| h.order() == 4).cloned().collect();
        let prod = subgroup_complex_product(&l, &planes[0], &planes[1], 2).unwrap();
        assert_eq!((prod.degree, prod.source_dim, prod.target_dim), (0, 1, 2));
        let line = l.subgroups().iter().find(|h| h.order() == 2 && !h.is_subset_of(&planes[0])).unwrap().clone();
        let prod = subgroup_complex_product(&l, &planes[0], &line, 2).unwrap();
        assert_eq!((prod.degree, prod.source_dim, prod.target_dim), (1, 2, 8));
        assert_eq!(prod.rank, 2);
        let g = l.subgroup(l.whole_index()).clone();
        let prod = subgroup_complex_product(&l, &g, &planes[0], 2).unwrap();
        assert_eq!(prod.matrix, FpMatrix::identity(1, 2));
        let prod = subgroup_complex_product(&l, &g, &g, 2).unwrap();
        assert_eq!(prod.degree, -2);
    }
}
