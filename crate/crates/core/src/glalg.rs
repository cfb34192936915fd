//! GL_n(F_p) with its Borel and permutation subgroups, the group algebra
//! F_p[GL_n], Steinberg idempotents, block idempotents and idempotent ranks
//! on modules.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{budget, Error, Result};
use crate::fpla::{inv_mod, FpMatrix, FpScalar};
use crate::{gl_order, is_prime};

/// Default bound on `|GL_n(F_p)|` for full enumeration.
pub const DEFAULT_GL_BUDGET: u128 = 1000;

/// Default bound on module dimension for materialized operator matrices.
pub const DEFAULT_OPERATOR_DIM: usize = 4096;

/// The enumerated group GL_n(F_p).
pub struct GLGroup {
    n: usize,
    p: u32,
    elements: Vec<FpMatrix>,
    index: HashMap<FpMatrix, usize>,
    mult: Vec<u32>,
    inverse: Vec<usize>,
    identity: usize,
    borel: Vec<usize>,
    perms: Vec<(usize, i8)>,
}

impl fmt::Debug for GLGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GL_{}(F_{}) [{} elements]", self.n, self.p, self.elements.len())
    }
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in all_perms(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

impl GLGroup {
    pub fn build(n: usize, p: u32) -> Result<Arc<Self>> {
        Self::build_with_budget(n, p, DEFAULT_GL_BUDGET)
    }

    pub fn build_with_budget(n: usize, p: u32, max_order: u128) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = gl_order(n as u32, p as u64);
        if order > max_order {
            return budget(format!("|GL_{n}(F_{p})| = {order} exceeds {max_order}"));
        }
        let entries = n * n;
        let total = (p as u64).pow(entries as u32);
        let mut elements = Vec::with_capacity(order as usize);
        for k in 0..total {
            let mut rest = k;
            let data: Vec<u32> = (0..entries)
                .map(|_| {
                    let d = (rest % p as u64) as u32;
                    rest /= p as u64;
                    d
                })
                .collect();
            let m = FpMatrix::from_raw(n, n, p, data)?;
            if m.rank() == n {
                elements.push(m);
            }
        }
        elements.sort();
        if elements.len() as u128 != order {
            return Err(Error::Inconsistent(format!("enumerated {} invertible matrices, expected {order}", elements.len())));
        }
        let index: HashMap<FpMatrix, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let size = elements.len();
        let mult: Vec<u32> = (0..size * size)
            .into_par_iter()
            .map(|k| {
                let prod = elements[k / size].mul(&elements[k % size]).expect("square matrices");
                index[&prod] as u32
            })
            .collect();
        let identity = index[&FpMatrix::identity(n, p)];
        let inverse = (0..size)
            .map(|a| (0..size).find(|&b| mult[a * size + b] as usize == identity).expect("group"))
            .collect();
        let borel = (0..size)
            .filter(|&i| (0..n).all(|r| (0..r).all(|c| elements[i].get(r, c) == 0)))
            .collect();
        let perms = all_perms(n)
            .into_iter()
            .map(|sigma| {
                // column j is e_{σ(j)}
                let mut m = FpMatrix::zeros(n, n, p);
                for (j, &i) in sigma.iter().enumerate() {
                    m.set(i, j, 1);
                }
                (index[&m], permutation_sign(&sigma))
            })
            .collect();
        Ok(Arc::new(Self { n, p, elements, index, mult, inverse, identity, borel, perms }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &FpMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &FpMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.elements.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Invertible upper-triangular matrices.
    pub fn borel(&self) -> &[usize] {
        &self.borel
    }

    /// Permutation matrices with their signs.
    pub fn perms(&self) -> &[(usize, i8)] {
        &self.perms
    }

    /// Index of the block-diagonal matrix `diag(a, b)`, where `a` and `b`
    /// live in groups whose sizes add up to `n`.
    pub fn block_diag(&self, blocks: &[(&GLGroup, usize)]) -> Result<usize> {
        let total: usize = blocks.iter().map(|(g, _)| g.n).sum();
        if total != self.n {
            return Err(Error::Shape(format!("blocks of total size {total} in GL_{}", self.n)));
        }
        let mut m = FpMatrix::zeros(self.n, self.n, self.p);
        let mut off = 0;
        for (g, i) in blocks {
            if g.p != self.p {
                return Err(Error::ModulusMismatch(g.p, self.p));
            }
            let a = &g.elements[*i];
            for r in 0..g.n {
                for c in 0..g.n {
                    m.set(off + r, off + c, a.get(r, c));
                }
            }
            off += g.n;
        }
        Ok(self.index[&m])
    }
}

/// A finitely supported F_p-linear combination of elements of GL_n(F_p).
#[derive(Clone)]
pub struct GroupAlgebraElement {
    group: Arc<GLGroup>,
    coeffs: BTreeMap<usize, u32>,
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ", self.group)?;
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.n == other.group.n && self.group.p == other.group.p && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement {}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<GLGroup>) -> Self {
        Self { group: group.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(group: &Arc<GLGroup>, g: usize) -> Self {
        Self::from_terms(group, [(g, 1)])
    }

    pub fn identity(group: &Arc<GLGroup>) -> Self {
        Self::basis(group, group.identity)
    }

    /// Sums the given terms; coefficients are reduced mod p.
    pub fn from_terms(group: &Arc<GLGroup>, terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let p = group.p as i64;
        let mut coeffs = BTreeMap::new();
        for (g, c) in terms {
            let e: &mut u32 = coeffs.entry(g).or_insert(0);
            *e = ((*e as i64 + c.rem_euclid(p)) % p) as u32;
        }
        coeffs.retain(|_, c| *c != 0);
        Self { group: group.clone(), coeffs }
    }

    pub fn group(&self) -> &Arc<GLGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, u32> {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> u32 {
        self.coeffs.get(&g).copied().unwrap_or(0)
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group.p != other.group.p {
            return Err(Error::ModulusMismatch(self.group.p, other.group.p));
        }
        if !Arc::ptr_eq(&self.group, &other.group) && self.group.n != other.group.n {
            return Err(Error::Shape(format!("GL_{} vs GL_{}", self.group.n, other.group.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self::from_terms(
            &self.group,
            self.coeffs.iter().chain(&other.coeffs).map(|(&g, &c)| (g, c as i64)),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.group.p - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.group.p as u64;
        Self::from_terms(&self.group, self.coeffs.iter().map(|(&g, &a)| (g, (a as u64 * c as u64 % p) as i64)))
    }

    /// Convolution product `Σ a_g b_h (gh)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let p = self.group.p as u64;
        let mut acc: HashMap<usize, u64> = HashMap::new();
        for (&g, &a) in &self.coeffs {
            for (&h, &b) in &other.coeffs {
                let e = acc.entry(self.group.mul(g, h)).or_insert(0);
                *e = (*e + a as u64 * b as u64) % p;
            }
        }
        Ok(Self::from_terms(&self.group, acc.into_iter().map(|(g, c)| (g, c as i64))))
    }

    /// `B̄_n`: unsigned sum of the Borel subgroup.
    pub fn borel_sum(group: &Arc<GLGroup>) -> Self {
        Self::from_terms(group, group.borel.iter().map(|&b| (b, 1)))
    }

    /// `Σ̄_n`: signed sum of the permutation matrices.
    pub fn signed_perm_sum(group: &Arc<GLGroup>) -> Self {
        Self::from_terms(group, group.perms.iter().map(|&(s, sign)| (s, sign as i64)))
    }

    /// Whether `self · self = self`.
    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| &sq == self).unwrap_or(false)
    }
}

/// Which product defines the unnormalized Steinberg element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum ProductOrder {
    /// `x = B̄_n Σ̄_n`
    BorelThenSign,
    /// `x = Σ̄_n B̄_n`
    SignThenBorel,
}

impl ProductOrder {
    pub const BOTH: [ProductOrder; 2] = [ProductOrder::BorelThenSign, ProductOrder::SignThenBorel];

    pub fn name(self) -> &'static str {
        match self {
            ProductOrder::BorelThenSign => "borel*sign",
            ProductOrder::SignThenBorel => "sign*borel",
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            ProductOrder::BorelThenSign => ProductOrder::SignThenBorel,
            ProductOrder::SignThenBorel => ProductOrder::BorelThenSign,
        }
    }
}

/// A Steinberg element, its constant `c` with `x² = c·x`, and the idempotent
/// `x / c`.
#[derive(Clone, Debug)]
pub struct SteinbergData {
    pub n: usize,
    pub p: u32,
    pub order: ProductOrder,
    pub x: GroupAlgebraElement,
    pub c: FpScalar,
    pub e: GroupAlgebraElement,
}

/// Builds the Steinberg element in the given order, solves `x² = c·x`
/// coefficientwise and normalizes.
pub fn steinberg(group: &Arc<GLGroup>, order: ProductOrder) -> Result<SteinbergData> {
    let b = GroupAlgebraElement::borel_sum(group);
    let s = GroupAlgebraElement::signed_perm_sum(group);
    let x = match order {
        ProductOrder::BorelThenSign => b.mul(&s)?,
        ProductOrder::SignThenBorel => s.mul(&b)?,
    };
    let p = group.p;
    let sq = x.mul(&x)?;
    let (&g0, &x0) = x
        .coeffs
        .iter()
        .next()
        .ok_or_else(|| Error::Inconsistent("Steinberg element is zero".into()))?;
    let c = (sq.coeff(g0) as u64 * inv_mod(x0, p) as u64 % p as u64) as u32;
    if sq != x.scale(c) {
        return Err(Error::Inconsistent(format!("x² is not a multiple of x for GL_{}(F_{p})", group.n)));
    }
    if c == 0 {
        return Err(Error::Inconsistent(format!("x² = 0 for GL_{}(F_{p})", group.n)));
    }
    let e = x.scale(inv_mod(c, p));
    if !e.is_idempotent() {
        return Err(Error::Inconsistent("normalized Steinberg element is not idempotent".into()));
    }
    Ok(SteinbergData { n: group.n, p, order, x, c: FpScalar::new(c as i64, p)?, e })
}

/// `e_{k_1} ⊠ … ⊠ e_{k_m}` embedded block-diagonally (first block top-left),
/// built from each factor's Steinberg idempotent in the given order.
pub fn block_product_idempotent(group: &Arc<GLGroup>, sizes: &[usize], order: ProductOrder) -> Result<GroupAlgebraElement> {
    if sizes.iter().sum::<usize>() != group.n {
        return Err(Error::Shape(format!("block sizes {sizes:?} do not sum to {}", group.n)));
    }
    let mut factors = Vec::new();
    for &k in sizes.iter().filter(|&&k| k > 0) {
        let gk = GLGroup::build_with_budget(k, group.p, group.order() as u128)?;
        let st = steinberg(&gk, order)?;
        factors.push((gk, st.e));
    }
    let p = group.p as u64;
    let mut terms: Vec<(Vec<(usize, u32)>, u64)> = vec![(Vec::new(), 1)];
    for (_, e) in &factors {
        let mut next = Vec::new();
        for (idx, c) in &terms {
            for (&g, &a) in e.coeffs() {
                let mut v = idx.clone();
                v.push((g, a));
                next.push((v, c * a as u64 % p));
            }
        }
        terms = next;
    }
    let mut out = Vec::new();
    for (idx, c) in terms {
        let blocks: Vec<(&GLGroup, usize)> = idx.iter().zip(&factors).map(|(&(g, _), (gk, _))| (gk.as_ref(), g)).collect();
        out.push((group.block_diag(&blocks)?, c as i64));
    }
    let e = GroupAlgebraElement::from_terms(group, out);
    if !e.is_idempotent() {
        return Err(Error::Inconsistent(format!("block idempotent {sizes:?} is not idempotent")));
    }
    Ok(e)
}

/// `ê_{n−s} ⊠ ê_s`.
pub fn block_idempotent(group: &Arc<GLGroup>, s: usize, order: ProductOrder) -> Result<GroupAlgebraElement> {
    if s > group.n {
        return Err(Error::InvalidParameter(format!("s = {s} > n = {}", group.n)));
    }
    block_product_idempotent(group, &[group.n - s, s], order)
}

/// `e_1^{⊠n}`: the idempotent of the diagonal torus.
pub fn torus_idempotent(group: &Arc<GLGroup>, order: ProductOrder) -> Result<GroupAlgebraElement> {
    block_product_idempotent(group, &vec![1; group.n], order)
}

/// A finite-dimensional F_p[GL_n]-module given by the action on basis vectors.
pub trait GlModule: Sync {
    fn dim(&self) -> usize;
    fn p(&self) -> u32;
    /// Appends `ρ(g) e_j` as sparse `(index, coefficient)` pairs.
    fn act_basis(&self, g: usize, j: usize, out: &mut Vec<(usize, u32)>);
}

/// `F_p[GL_n]` acting on itself by left multiplication.
pub struct RegularModule {
    pub group: Arc<GLGroup>,
}

impl GlModule for RegularModule {
    fn dim(&self) -> usize {
        self.group.order()
    }
    fn p(&self) -> u32 {
        self.group.p
    }
    fn act_basis(&self, g: usize, j: usize, out: &mut Vec<(usize, u32)>) {
        out.push((self.group.mul(g, j), 1));
    }
}

/// The trivial module of a given dimension.
pub struct TrivialModule {
    pub dim: usize,
    pub p: u32,
}

impl GlModule for TrivialModule {
    fn dim(&self) -> usize {
        self.dim
    }
    fn p(&self) -> u32 {
        self.p
    }
    fn act_basis(&self, _g: usize, j: usize, out: &mut Vec<(usize, u32)>) {
        out.push((j, 1));
    }
}

/// A module given by one explicit matrix per group element.
pub struct MatrixModule {
    pub p: u32,
    pub matrices: Vec<FpMatrix>,
}

impl GlModule for MatrixModule {
    fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }
    fn p(&self) -> u32 {
        self.p
    }
    fn act_basis(&self, g: usize, j: usize, out: &mut Vec<(usize, u32)>) {
        let m = &self.matrices[g];
        out.extend((0..m.rows()).filter_map(|i| {
            let v = m.get(i, j);
            (v != 0).then_some((i, v))
        }));
    }
}

/// `⊕_{A ∈ S} D` for a GL-stable set `S` of `n × r` matrices, with
/// `g·(A ⊗ v) = (gA ⊗ gv)`. Basis index `pos(A)·dim D + i`.
pub struct IndexedSum<'a, M: GlModule + ?Sized> {
    group: Arc<GLGroup>,
    index_set: Vec<FpMatrix>,
    position: HashMap<FpMatrix, usize>,
    /// `moved[g][a]` = position of `g·A_a`.
    moved: Vec<Vec<u32>>,
    inner: &'a M,
}

impl<'a, M: GlModule + ?Sized> IndexedSum<'a, M> {
    pub fn new(group: &Arc<GLGroup>, index_set: Vec<FpMatrix>, inner: &'a M) -> Result<Self> {
        let position: HashMap<FpMatrix, usize> = index_set.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        if position.len() != index_set.len() {
            return Err(Error::InvalidParameter("repeated index matrix".into()));
        }
        let mut moved = Vec::with_capacity(group.order());
        for g in group.elements() {
            let row = index_set
                .iter()
                .map(|a| {
                    let ga = g.mul(a)?;
                    position
                        .get(&ga)
                        .map(|&i| i as u32)
                        .ok_or_else(|| Error::InvalidParameter("index set is not stable under GL_n".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            moved.push(row);
        }
        Ok(Self { group: group.clone(), index_set, position, moved, inner })
    }

    pub fn index_set(&self) -> &[FpMatrix] {
        &self.index_set
    }

    pub fn position(&self, a: &FpMatrix) -> Option<usize> {
        self.position.get(a).copied()
    }

    pub fn inner_dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn group(&self) -> &Arc<GLGroup> {
        &self.group
    }
}

impl<M: GlModule + ?Sized> GlModule for IndexedSum<'_, M> {
    fn dim(&self) -> usize {
        self.index_set.len() * self.inner.dim()
    }
    fn p(&self) -> u32 {
        self.inner.p()
    }
    fn act_basis(&self, g: usize, j: usize, out: &mut Vec<(usize, u32)>) {
        let d = self.inner.dim();
        let (a, i) = (j / d, j % d);
        let base = self.moved[g][a] as usize * d;
        let start = out.len();
        self.inner.act_basis(g, i, out);
        for t in &mut out[start..] {
            t.0 += base;
        }
    }
}

/// `e · e_j` as a dense vector.
pub fn operator_column<M: GlModule + ?Sized>(e: &GroupAlgebraElement, module: &M, j: usize) -> Vec<u32> {
    let p = module.p() as u64;
    let mut col = vec![0u64; module.dim()];
    let mut buf = Vec::new();
    for (&g, &a) in e.coeffs() {
        buf.clear();
        module.act_basis(g, j, &mut buf);
        for &(i, v) in &buf {
            col[i] += a as u64 * v as u64;
        }
    }
    col.into_iter().map(|x| (x % p) as u32).collect()
}

/// Applies `e` to an arbitrary vector.
pub fn apply_element<M: GlModule + ?Sized>(e: &GroupAlgebraElement, module: &M, v: &[u32]) -> Vec<u32> {
    let p = module.p() as u64;
    let mut out = vec![0u64; module.dim()];
    let mut buf = Vec::new();
    for (j, &vj) in v.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (&g, &a) in e.coeffs() {
            buf.clear();
            module.act_basis(g, j, &mut buf);
            let s = a as u64 * vj as u64 % p;
            for &(i, c) in &buf {
                out[i] = (out[i] + s * c as u64) % p;
            }
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// The matrix of `e` acting on `module`.
pub fn operator_matrix<M: GlModule + ?Sized>(e: &GroupAlgebraElement, module: &M, max_dim: usize) -> Result<FpMatrix> {
    let d = module.dim();
    if d > max_dim {
        return budget(format!("module dimension {d} exceeds {max_dim}"));
    }
    if e.group().p != module.p() {
        return Err(Error::ModulusMismatch(e.group().p, module.p()));
    }
    let cols: Vec<Vec<u32>> = (0..d).into_par_iter().map(|j| operator_column(e, module, j)).collect();
    let mut data = vec![0u32; d * d];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            data[i * d + j] = v;
        }
    }
    FpMatrix::from_raw(d, d, module.p(), data)
}

/// Rank of `e` acting on `module`.
pub fn idempotent_rank<M: GlModule + ?Sized>(e: &GroupAlgebraElement, module: &M) -> Result<usize> {
    if module.dim() == 0 {
        return Ok(0);
    }
    Ok(operator_matrix(e, module, usize::MAX)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial;

    #[test]
    fn build_examples() {
        let g = GLGroup::build(1, 5).unwrap();
        assert_eq!(g.order(), 4);
        let g = GLGroup::build(2, 2).unwrap();
        assert_eq!((g.order(), g.borel().len(), g.perms().len()), (6, 2, 2));
        let g = GLGroup::build(2, 3).unwrap();
        assert_eq!((g.order(), g.borel().len(), g.perms().len()), (48, 12, 2));
        let g = GLGroup::build(3, 2).unwrap();
        assert_eq!((g.order(), g.borel().len(), g.perms().len()), (168, 8, 6));
        assert!(matches!(GLGroup::build(3, 3), Err(Error::Budget(_))));
        let g0 = GLGroup::build(0, 2).unwrap();
        assert_eq!(g0.order(), 1);
    }

    #[test]
    fn group_table_is_closed() {
        let g = GLGroup::build(2, 3).unwrap();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
        let borel = g.borel();
        for &a in borel {
            for &b in borel {
                assert!(borel.contains(&g.mul(a, b)));
            }
        }
    }

    #[test]
    fn steinberg_rank_one() {
        for p in [2u32, 3, 5] {
            let g = GLGroup::build(1, p).unwrap();
            for order in ProductOrder::BOTH {
                let st = steinberg(&g, order).unwrap();
                assert_eq!(st.x.support_len(), (p - 1) as usize);
                assert_eq!(st.c.value(), p - 1);
            }
        }
        let g = GLGroup::build(1, 2).unwrap();
        assert_eq!(steinberg(&g, ProductOrder::BorelThenSign).unwrap().e, GroupAlgebraElement::identity(&g));
    }

    #[test]
    fn steinberg_idempotent_and_dimension() {
        for (n, p) in [(2usize, 2u32), (3, 2), (2, 3)] {
            let g = GLGroup::build(n, p).unwrap();
            let reg = RegularModule { group: g.clone() };
            for order in ProductOrder::BOTH {
                let st = steinberg(&g, order).unwrap();
                assert!(st.e.is_idempotent());
                let r = idempotent_rank(&st.e, &reg).unwrap();
                assert_eq!(r as u64, (p as u64).pow(binomial(n as u64, 2) as u32));
            }
        }
    }

    #[test]
    fn unsigned_sum_fails_at_odd_p() {
        let g = GLGroup::build(2, 3).unwrap();
        let b = GroupAlgebraElement::borel_sum(&g);
        let s = GroupAlgebraElement::from_terms(&g, g.perms().iter().map(|&(s, _)| (s, 1)));
        let x = b.mul(&s).unwrap();
        let sq = x.mul(&x).unwrap();
        let (&g0, &x0) = x.coeffs().iter().next().unwrap();
        let c = sq.coeff(g0) * inv_mod(x0, 3) % 3;
        assert!(c == 0 || sq != x.scale(c));
    }

    #[test]
    fn block_idempotents() {
        let g = GLGroup::build(2, 2).unwrap();
        let e = block_idempotent(&g, 1, ProductOrder::BorelThenSign).unwrap();
        assert_eq!(e, GroupAlgebraElement::identity(&g));
        let full = block_idempotent(&g, 0, ProductOrder::BorelThenSign).unwrap();
        assert_eq!(full, steinberg(&g, ProductOrder::BorelThenSign).unwrap().e);

        let g = GLGroup::build(2, 3).unwrap();
        let e = block_idempotent(&g, 1, ProductOrder::SignThenBorel).unwrap();
        assert_eq!(e.support_len(), 4);
        for &h in e.coeffs().keys() {
            let m = g.element(h);
            assert!(m.get(0, 1) == 0 && m.get(1, 0) == 0);
        }
        assert_eq!(torus_idempotent(&g, ProductOrder::BorelThenSign).unwrap(), e);
    }

    #[test]
    fn trivial_and_indexed_modules() {
        let g = GLGroup::build(2, 2).unwrap();
        let st = steinberg(&g, ProductOrder::BorelThenSign).unwrap();
        let id = GroupAlgebraElement::identity(&g);
        let reg = RegularModule { group: g.clone() };
        assert_eq!(idempotent_rank(&id, &reg).unwrap(), 6);
        let triv = TrivialModule { dim: 1, p: 2 };
        // B̄Σ̄ acts on the trivial module by |B|·Σ sign = 2·0
        assert_eq!(idempotent_rank(&st.e, &triv).unwrap(), 0);
        // column vectors F_2^2 as index set
        let vecs: Vec<FpMatrix> = (0..4).map(|k| FpMatrix::from_raw(2, 1, 2, vec![k & 1, k >> 1]).unwrap()).collect();
        let sum = IndexedSum::new(&g, vecs.clone(), &triv).unwrap();
        assert_eq!(sum.dim(), 4);
        // the permutation module on F_2^2 contains St_2 once, and the rank of
        // e counts multiplicity
        assert_eq!(idempotent_rank(&st.e, &sum).unwrap(), 1);
        assert!(IndexedSum::new(&g, vecs[..2].to_vec(), &triv).is_err());
    }

    #[test]
    fn algebra_matches_operators() {
        let g = GLGroup::build(2, 3).unwrap();
        let reg = RegularModule { group: g.clone() };
        let a = GroupAlgebraElement::from_terms(&g, [(3, 1), (7, 2), (11, 1)]);
        let b = GroupAlgebraElement::from_terms(&g, [(5, 2), (9, 1)]);
        let ab = operator_matrix(&a.mul(&b).unwrap(), &reg, 100).unwrap();
        let prod = operator_matrix(&a, &reg, 100).unwrap().mul(&operator_matrix(&b, &reg, 100).unwrap()).unwrap();
        assert_eq!(ab, prod);
        let v: Vec<u32> = (0..48).map(|i| (i * 7 % 3) as u32).collect();
        assert_eq!(apply_element(&a, &reg, &v), operator_matrix(&a, &reg, 100).unwrap().apply(&v));
    }
}
