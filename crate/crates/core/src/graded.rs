//! Graded cohomology of `B(Z/p)^n` as a `GL_n(F_p)`-module, Steinberg ranks
//! per degree, Poincaré series, and both sides of the layer decomposition.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{diamond_profile, HomologyProfile};
use crate::error::{budget, Error, Result};
use crate::fpla::FpMatrix;
use crate::glalg::{idempotent_rank, steinberg, GLGroup, GlModule, IndexedSum, ProductOrder, DEFAULT_GL_BUDGET};
use crate::groups::SubgroupLattice;
use crate::strata::DEFAULT_MATRIX_BUDGET;
use crate::{binomial, is_prime};

/// Largest allowed dimension of a single graded piece.
pub const DEFAULT_PIECE_BUDGET: usize = 4096;

/// Monomial `a_S · b^α`: `ext` is the exterior support bitmask (always 0 at
/// p = 2), `exps` the polynomial exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub ext: u32,
    pub exps: Vec<u8>,
}

type Poly = HashMap<Monomial, u32>;

/// `H^*(B(Z/p)^n; F_p)` truncated at degree `D`, with `GL_n` acting by linear
/// substitution on the generators.
pub struct GradedRep {
    group: Arc<GLGroup>,
    max_degree: usize,
    bases: Vec<Vec<Monomial>>,
    /// `matrices[d][g]`
    matrices: Vec<Vec<FpMatrix>>,
}

/// Closed-form count of degree-`d` monomials.
pub fn monomial_count(n: usize, p: u32, d: usize) -> u64 {
    let poly = |k: usize| if n == 0 { (k == 0) as u64 } else { binomial((k + n - 1) as u64, (n - 1) as u64) };
    if p == 2 {
        return poly(d);
    }
    (0..=n.min(d)).filter(|s| (d - s) % 2 == 0).map(|s| binomial(n as u64, s as u64) * poly((d - s) / 2)).sum()
}

fn exponent_vectors(n: usize, total: usize, out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>) {
    if cur.len() + 1 == n {
        cur.push(total as u8);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in (0..=total).rev() {
        cur.push(k as u8);
        exponent_vectors(n, total - k, out, cur);
        cur.pop();
    }
}

fn basis_in_degree(n: usize, p: u32, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial { ext: 0, exps: Vec::new() });
        }
        return out;
    }
    let masks: Vec<u32> = if p == 2 { vec![0] } else { (0..1u32 << n).collect() };
    let w = if p == 2 { 1 } else { 2 };
    for mask in masks {
        let s = mask.count_ones() as usize;
        if s > d || (d - s) % w != 0 {
            continue;
        }
        let mut exps = Vec::new();
        exponent_vectors(n, (d - s) / w, &mut exps, &mut Vec::new());
        out.extend(exps.into_iter().map(|e| Monomial { ext: mask, exps: e }));
    }
    out
}

fn add_term(poly: &mut Poly, m: Monomial, c: u32, p: u32) {
    let e = poly.entry(m).or_insert(0);
    *e = (*e + c) % p;
}

/// Image of `a_S` under `g`: multiply by `g·a_i` on the right in increasing `i`.
fn exterior_image(g: &FpMatrix, mask: u32, p: u32) -> HashMap<u32, u32> {
    let n = g.rows();
    let mut cur: HashMap<u32, u32> = HashMap::from([(0, 1)]);
    for i in (0..n).filter(|i| mask >> i & 1 == 1) {
        let mut next = HashMap::new();
        for (&m, &c) in &cur {
            for j in 0..n {
                let gji = g.get(j, i);
                if gji == 0 || m >> j & 1 == 1 {
                    continue;
                }
                // a_j moves left past the generators of m above j
                let above = (m >> (j + 1)).count_ones();
                let v = c * gji % p;
                let v = if above % 2 == 0 { v } else { (p - v) % p };
                let e = next.entry(m | 1 << j).or_insert(0);
                *e = (*e + v) % p;
            }
        }
        cur = next;
        cur.retain(|_, c| *c != 0);
    }
    cur
}

impl GradedRep {
    pub fn build(n: usize, p: u32, max_degree: usize) -> Result<Self> {
        Self::build_with_budget(n, p, max_degree, DEFAULT_GL_BUDGET, DEFAULT_PIECE_BUDGET)
    }

    pub fn build_with_budget(n: usize, p: u32, max_degree: usize, gl_budget: u128, piece_budget: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n > 8 {
            return budget("graded representation supports n ≤ 8");
        }
        for d in 0..=max_degree {
            let c = monomial_count(n, p, d);
            if c > piece_budget as u64 {
                return budget(format!("degree {d} piece has dimension {c} > {piece_budget}"));
            }
        }
        let group = GLGroup::build_with_budget(n, p, gl_budget)?;
        let bases: Vec<Vec<Monomial>> = (0..=max_degree).map(|d| basis_in_degree(n, p, d)).collect();
        let per_group: Vec<Vec<FpMatrix>> = group
            .elements()
            .par_iter()
            .map(|g| Self::matrices_for(g, n, p, &bases))
            .collect::<Result<_>>()?;
        let mut matrices: Vec<Vec<FpMatrix>> = vec![Vec::with_capacity(group.order()); max_degree + 1];
        for mats in per_group {
            for (d, m) in mats.into_iter().enumerate() {
                matrices[d].push(m);
            }
        }
        Ok(Self { group, max_degree, bases, matrices })
    }

    fn matrices_for(g: &FpMatrix, n: usize, p: u32, bases: &[Vec<Monomial>]) -> Result<Vec<FpMatrix>> {
        let w = if p == 2 { 1 } else { 2 };
        let unit = |k: usize| {
            let mut e = vec![0u8; n];
            e[k] = 1;
            e
        };
        // images of b_i
        let linear: Vec<Vec<(Vec<u8>, u32)>> = (0..n)
            .map(|i| (0..n).filter(|&j| g.get(j, i) != 0).map(|j| (unit(j), g.get(j, i))).collect())
            .collect();
        let mut poly_memo: HashMap<Vec<u8>, HashMap<Vec<u8>, u32>> = HashMap::new();
        poly_memo.insert(vec![0u8; n], HashMap::from([(vec![0u8; n], 1)]));
        let max_poly = bases.len().saturating_sub(1) / w;
        for total in 1..=max_poly {
            let mut vecs = Vec::new();
            if n > 0 {
                exponent_vectors(n, total, &mut vecs, &mut Vec::new());
            }
            for e in vecs {
                let i = e.iter().position(|&x| x > 0).expect("positive degree");
                let mut lower = e.clone();
                lower[i] -= 1;
                let prev = &poly_memo[&lower];
                let mut img: HashMap<Vec<u8>, u32> = HashMap::new();
                for (m, &c) in prev {
                    for (u, gc) in &linear[i] {
                        let mm: Vec<u8> = m.iter().zip(u).map(|(a, b)| a + b).collect();
                        let x = img.entry(mm).or_insert(0);
                        *x = (*x + c * gc) % p;
                    }
                }
                img.retain(|_, c| *c != 0);
                poly_memo.insert(e, img);
            }
        }
        let mut out = Vec::with_capacity(bases.len());
        for basis in bases {
            let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let dim = basis.len();
            let mut m = FpMatrix::zeros(dim, dim, p);
            for (j, mono) in basis.iter().enumerate() {
                let ext = exterior_image(g, mono.ext, p);
                let pol = &poly_memo[&mono.exps];
                let mut image: Poly = HashMap::new();
                for (&s, &cs) in &ext {
                    for (e, &ce) in pol {
                        add_term(&mut image, Monomial { ext: s, exps: e.clone() }, cs * ce % p, p);
                    }
                }
                for (mono_i, c) in image {
                    if c == 0 {
                        continue;
                    }
                    let i = *index.get(&mono_i).ok_or_else(|| Error::Inconsistent("substitution left the degree".into()))?;
                    m.set(i, j, c);
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn p(&self) -> u32 {
        self.group.p()
    }

    pub fn group(&self) -> &Arc<GLGroup> {
        &self.group
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.bases[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    pub fn matrix(&self, g: usize, d: usize) -> &FpMatrix {
        &self.matrices[d][g]
    }

    /// Unreduced Poincaré series.
    pub fn series(&self) -> PoincareSeries {
        PoincareSeries::from_coeffs((0..=self.max_degree).map(|d| self.dim(d) as u64).collect())
    }

    /// Checks `matrix(gh) = matrix(g)·matrix(h)` on the given pairs.
    pub fn multiplicative_on(&self, d: usize, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(g, h)| {
            let gh = self.group.mul(g, h);
            self.matrix(g, d).mul(self.matrix(h, d)).is_ok_and(|m| &m == self.matrix(gh, d))
        })
    }

    pub fn piece(&self, d: usize) -> GradedPiece<'_> {
        GradedPiece { rep: self, d }
    }
}

/// One degree of a [`GradedRep`] as a `GL_n`-module.
pub struct GradedPiece<'a> {
    rep: &'a GradedRep,
    d: usize,
}

impl GlModule for GradedPiece<'_> {
    fn dim(&self) -> usize {
        self.rep.dim(self.d)
    }
    fn p(&self) -> u32 {
        self.rep.p()
    }
    fn act_basis(&self, g: usize, j: usize, out: &mut Vec<(usize, u32)>) {
        let m = self.rep.matrix(g, self.d);
        out.extend((0..m.rows()).filter_map(|i| {
            let v = m.get(i, j);
            (v != 0).then_some((i, v))
        }));
    }
}

pub fn graded_rep(n: usize, p: u32, max_degree: usize) -> Result<GradedRep> {
    GradedRep::build(n, p, max_degree)
}

/// Integer power series truncated at `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    pub coeffs: Vec<u64>,
}

impl PoincareSeries {
    pub fn zero(max_degree: usize) -> Self {
        Self { coeffs: vec![0; max_degree + 1] }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.coeffs[0] = 1;
        s
    }

    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a degree-0 slot");
        Self { coeffs }
    }

    /// Series of a homology profile; negative degrees are an error.
    pub fn from_profile(h: &HomologyProfile, max_degree: usize) -> Result<Self> {
        let mut s = Self::zero(max_degree);
        for (&d, &b) in &h.betti {
            if d < 0 {
                return Err(Error::Inconsistent(format!("homology in negative degree {d}")));
            }
            if (d as usize) <= max_degree {
                s.coeffs[d as usize] = b as u64;
            }
        }
        Ok(s)
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.max_degree() != other.max_degree() {
            return Err(Error::Shape(format!("truncation {} vs {}", self.max_degree(), other.max_degree())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.max_degree();
        let mut out = vec![0u64; d + 1];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in other.coeffs[..=d - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplies by `t^k`; for negative `k` the dropped coefficients must be 0.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let d = self.max_degree() as i64;
        let mut out = vec![0u64; d as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = i as i64 + k;
            if j < 0 && c != 0 {
                return Err(Error::Inconsistent("shift moves a class below degree 0".into()));
            }
            if (0..=d).contains(&j) {
                out[j as usize] = c;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }
}

/// Degreewise ranks of `e_k` on the unreduced cohomology of `B(Z/p)^k`.
pub fn m_series(k: usize, p: u32, max_degree: usize) -> Result<PoincareSeries> {
    let rep = graded_rep(k, p, max_degree)?;
    m_series_from(&rep)
}

fn m_series_from(rep: &GradedRep) -> Result<PoincareSeries> {
    let st = steinberg(rep.group(), ProductOrder::BorelThenSign)?;
    let coeffs = (0..=rep.max_degree())
        .into_par_iter()
        .map(|d| idempotent_rank(&st.e, &rep.piece(d)).map(|r| r as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(PoincareSeries::from_coeffs(coeffs))
}

/// Number of admissible sequences `(i_1..i_n)` with `i_j ≥ 2 i_{j+1}`,
/// `i_n ≥ 1` and sum `d`.
pub fn admissible_series(n: usize, max_degree: usize) -> PoincareSeries {
    fn count(len: usize, min_last: usize, remaining: usize) -> u64 {
        // sequences of given length, read from the last entry upward, whose
        // last entry is ≥ min_last
        if len == 0 {
            return (remaining == 0) as u64;
        }
        (min_last..=remaining).map(|i| count(len - 1, 2 * i, remaining - i)).sum()
    }
    let coeffs = (0..=max_degree).map(|d| if n == 0 { (d == 0) as u64 } else { count(n, 1, d) }).collect();
    PoincareSeries::from_coeffs(coeffs)
}

/// The unique shift `σ` with `admissible_series(1) = t^σ·m_series(1, 2)` on
/// degrees ≤ 8.
pub fn calibrate_shift() -> Result<i64> {
    const D: usize = 8;
    let adm = admissible_series(1, D);
    let m = m_series(1, 2, D)?;
    let fits: Vec<i64> = (-(D as i64)..=D as i64)
        .filter(|&s| (0..=D).all(|d| {
            let src = d as i64 - s;
            let v = if src < 0 || src > D as i64 { 0 } else { m.get(src as usize) };
            v == adm.get(d)
        }))
        .collect();
    match fits.as_slice() {
        [s] => Ok(*s),
        _ => Err(Error::Calibration(format!("candidate shifts {fits:?}"))),
    }
}

/// Per-`H` summands and their total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerSeries {
    pub n: usize,
    pub max_degree: usize,
    /// `(lattice index, d(H), series)` for `H ∈ 𝒞`.
    pub per_h: Vec<(usize, u32, PoincareSeries)>,
    pub total: PoincareSeries,
}

fn lattice_prime(lattice: &SubgroupLattice, p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !lattice.group().is_p_group_for(p) {
        return Err(Error::InvalidParameter(format!("{} is not a {p}-group", lattice.group().name())));
    }
    Ok(())
}

/// Caches `m_series` and unreduced `B(Z/p)^d` series by index.
struct SeriesCache {
    p: u32,
    max_degree: usize,
    m: HashMap<usize, PoincareSeries>,
    b: HashMap<usize, PoincareSeries>,
}

impl SeriesCache {
    fn new(p: u32, max_degree: usize) -> Self {
        Self { p, max_degree, m: HashMap::new(), b: HashMap::new() }
    }

    fn m(&mut self, k: usize) -> Result<PoincareSeries> {
        if let Some(s) = self.m.get(&k) {
            return Ok(s.clone());
        }
        let s = m_series(k, self.p, self.max_degree)?;
        self.m.insert(k, s.clone());
        Ok(s)
    }

    fn b(&mut self, d: usize) -> Result<PoincareSeries> {
        if let Some(s) = self.b.get(&d) {
            return Ok(s.clone());
        }
        let s = PoincareSeries::from_coeffs((0..=self.max_degree).map(|k| monomial_count(d, self.p, k)).collect());
        self.b.insert(d, s.clone());
        Ok(s)
    }
}

/// Left side: `Σ_{H ∈ 𝒞} M(n−d(H)) · Σ^{1−d(H)} P(G)_{⊃H}^◇ · B(G/H)_+`.
pub fn phi_lhs_series(lattice: &SubgroupLattice, p: u32, n: usize, max_degree: usize) -> Result<LayerSeries> {
    lattice_prime(lattice, p)?;
    let mut cache = SeriesCache::new(p, max_degree);
    let mut per_h = Vec::new();
    let mut total = PoincareSeries::zero(max_degree);
    for &(h, d) in lattice.poset_c() {
        let series = if (d as usize) > n {
            PoincareSeries::zero(max_degree)
        } else {
            let diamond = diamond_profile(lattice, h, p)?.shift(1 - d as i32);
            let complex = PoincareSeries::from_profile(&diamond, max_degree)?;
            cache.m(n - d as usize)?.mul(&complex)?.mul(&cache.b(d as usize)?)?
        };
        total = total.add(&series)?;
        per_h.push((h, d, series));
    }
    Ok(LayerSeries { n, max_degree, per_h, total })
}

/// All `n × r` matrices over F_p.
pub fn all_matrices(n: usize, r: usize, p: u32) -> Result<Vec<FpMatrix>> {
    let count = (p as u128).checked_pow((n * r) as u32).unwrap_or(u128::MAX);
    if count > DEFAULT_MATRIX_BUDGET as u128 {
        return budget(format!("{count} matrices of shape {n}×{r}"));
    }
    (0..count as u64)
        .map(|mut x| {
            let data = (0..n * r)
                .map(|_| {
                    let v = (x % p as u64) as u32;
                    x /= p as u64;
                    v
                })
                .collect();
            FpMatrix::from_raw(n, r, p, data)
        })
        .collect()
}

/// Right side: rank of `e_n` on `⊕_{Mat_{n,r}} H^d(B(Z/p)^n)` with
/// `r = d(F)`.
pub fn phi_rhs_series(lattice: &SubgroupLattice, p: u32, n: usize, max_degree: usize) -> Result<PoincareSeries> {
    lattice_prime(lattice, p)?;
    let r = lattice.d_of(lattice.frattini()).ok_or(Error::NotInPosetC)? as usize;
    let rep = graded_rep(n, p, max_degree)?;
    let st = steinberg(rep.group(), ProductOrder::BorelThenSign)?;
    let mats = all_matrices(n, r, p)?;
    let coeffs = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let piece = rep.piece(d);
            let sum = IndexedSum::new(rep.group(), mats.clone(), &piece)?;
            idempotent_rank(&st.e, &sum).map(|x| x as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoincareSeries::from_coeffs(coeffs))
}

/// Per-`H` series of `Σ P(G)_{⊃H}^◇ · B(G/H)_+` for `H ∈ 𝒞`, and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub per_h: Vec<(usize, u32, PoincareSeries)>,
    pub total: PoincareSeries,
}

pub fn hfp_fixed_report(lattice: &SubgroupLattice, p: u32, max_degree: usize) -> Result<FixedPointReport> {
    lattice_prime(lattice, p)?;
    let mut cache = SeriesCache::new(p, max_degree);
    let mut per_h = Vec::new();
    let mut total = PoincareSeries::zero(max_degree);
    for &(h, d) in lattice.poset_c() {
        let susp = diamond_profile(lattice, h, p)?.shift(1);
        let series = PoincareSeries::from_profile(&susp, max_degree)?.mul(&cache.b(d as usize)?)?;
        total = total.add(&series)?;
        per_h.push((h, d, series));
    }
    Ok(FixedPointReport { per_h, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog;

    fn lat(spec: &str) -> SubgroupLattice {
        SubgroupLattice::new(&build_catalog(spec).unwrap()).unwrap()
    }

    fn ones(d: usize) -> Vec<u64> {
        vec![1; d + 1]
    }

    #[test]
    fn dimensions() {
        for (n, p) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
            let rep = graded_rep(n, p, 8).unwrap();
            for d in 0..=8 {
                assert_eq!(rep.dim(d) as u64, monomial_count(n, p, d));
                if n == 1 {
                    assert_eq!(rep.dim(d), 1);
                }
                if (n, p) == (2, 2) {
                    assert_eq!(rep.dim(d), d + 1);
                }
            }
        }
    }

    #[test]
    fn multiplicative_everywhere() {
        for (n, p) in [(2, 2), (2, 3), (1, 5)] {
            let rep = graded_rep(n, p, 6).unwrap();
            let o = rep.group().order();
            let pairs: Vec<(usize, usize)> = (0..o).flat_map(|g| (0..o).map(move |h| (g, h))).collect();
            for d in 0..=6 {
                assert!(rep.multiplicative_on(d, &pairs), "n={n} p={p} d={d}");
            }
        }
    }

    #[test]
    fn exterior_signs() {
        // swap of a_1, a_2 sends a_1 a_2 to a_2 a_1 = −a_1 a_2
        let rep = graded_rep(2, 3, 2).unwrap();
        let swap = rep.group().index_of(&FpMatrix::from_rows(&[[0, 1], [1, 0]], 3).unwrap()).unwrap();
        let j = rep.basis(2).iter().position(|m| m.ext == 0b11).unwrap();
        assert_eq!(rep.matrix(swap, 2).get(j, j), 2);
    }

    #[test]
    fn m_series_examples() {
        assert_eq!(m_series(0, 2, 5).unwrap().coeffs, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(m_series(1, 2, 6).unwrap().coeffs, ones(6));
        assert_eq!(m_series(1, 3, 12).unwrap().coeffs, vec![1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1]);
        let m2: Vec<u64> = (0..=12).map(|d| (d as u64 + 2) / 3).collect();
        assert_eq!(m_series(2, 2, 12).unwrap().coeffs, m2);
    }

    #[test]
    fn admissible_examples() {
        let a1 = admissible_series(1, 6);
        assert_eq!(a1.coeffs, vec![0, 1, 1, 1, 1, 1, 1]);
        let a2 = admissible_series(2, 7);
        assert_eq!((a2.get(3), a2.get(7)), (1, 2));
        assert_eq!(calibrate_shift().unwrap(), 1);
    }

    #[test]
    fn series_arithmetic() {
        let a = PoincareSeries::from_coeffs(vec![1, 1, 0, 0]);
        let b = PoincareSeries::from_coeffs(vec![1, 2, 3, 4]);
        assert_eq!(a.mul(&b).unwrap().coeffs, vec![1, 3, 5, 7]);
        assert_eq!(b.shift(2).unwrap().coeffs, vec![0, 0, 1, 2]);
        assert!(b.shift(-1).is_err());
        assert!(a.add(&PoincareSeries::one(2)).is_err());
    }

    #[test]
    fn cyclic_two_both_sides() {
        let l = lat("cyclic:2");
        let lhs = phi_lhs_series(&l, 2, 1, 6).unwrap();
        assert_eq!(lhs.total.coeffs, vec![2; 7]);
        for (_, _, s) in &lhs.per_h {
            assert_eq!(s.coeffs, ones(6));
        }
        assert_eq!(phi_rhs_series(&l, 2, 1, 6).unwrap().coeffs, vec![2; 7]);
        assert_eq!(phi_lhs_series(&l, 2, 0, 6).unwrap().total, PoincareSeries::one(6));
        assert_eq!(phi_rhs_series(&l, 2, 0, 6).unwrap(), PoincareSeries::one(6));
        let l4 = lat("cyclic:4");
        assert_eq!(phi_rhs_series(&l4, 2, 1, 6).unwrap().coeffs, vec![2; 7]);
    }

    #[test]
    fn klein_layer_one() {
        let l = lat("elem:2,2");
        let lhs = phi_lhs_series(&l, 2, 1, 6).unwrap();
        let nonzero = lhs.per_h.iter().filter(|(_, _, s)| s.first_nonzero().is_some()).count();
        assert_eq!(nonzero, 4);
        assert_eq!(lhs.total, phi_rhs_series(&l, 2, 1, 6).unwrap());
    }

    #[test]
    fn fixed_point_reports() {
        let l = lat("cyclic:3");
        let rep = hfp_fixed_report(&l, 3, 6).unwrap();
        let g = l.whole_index();
        for (h, _, s) in &rep.per_h {
            if *h == g {
                assert_eq!(*s, PoincareSeries::one(6));
            } else {
                assert_eq!(s.coeffs, vec![0, 1, 1, 1, 1, 1, 1]);
            }
        }
        assert_eq!(rep.total.get(0), 1);
        let t = lat("trivial");
        assert_eq!(hfp_fixed_report(&t, 2, 4).unwrap().total, PoincareSeries::one(4));
        let k = lat("elem:2,2");
        let rep = hfp_fixed_report(&k, 2, 4).unwrap();
        let kernel = rep.per_h.iter().find(|(_, d, _)| *d == 2).unwrap();
        assert_eq!(kernel.2.coeffs, vec![0, 0, 2, 4, 6]);
    }

    #[test]
    fn admissible_rank_three() {
        let m = m_series(3, 2, 12).unwrap();
        assert_eq!(m.shift(3).unwrap(), admissible_series(3, 12));
    }

    #[test]
    fn glalg_degree_three() {
        let rep = graded_rep(2, 2, 3).unwrap();
        let st = steinberg(rep.group(), ProductOrder::BorelThenSign).unwrap();
        assert_eq!(idempotent_rank(&st.e, &rep.piece(3)).unwrap(), 1);
    }
}
