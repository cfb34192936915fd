use super::matrix::FpMatrix;
use crate::error::{budget, Error, Result};
use crate::is_prime;

/// Default guard for [`enumerate_subspaces`]: `ambient_dim * ceil(log2 p)`.
pub const DEFAULT_SUBSPACE_BUDGET_BITS: u32 = 16;

/// A subspace of `F_p^k`, stored as the unique RREF basis of full row rank.
/// Equal subspaces have identical representations, so this is usable as a
/// map key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: FpMatrix,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn from_spanning(m: &FpMatrix) -> Self {
        let r = m.rref();
        let cols = m.cols();
        let data = r.matrix.data()[..r.rank * cols].to_vec();
        let basis = FpMatrix::from_raw(r.rank, cols, m.modulus(), data).expect("prefix rows");
        Self { basis }
    }

    pub fn zero(ambient_dim: usize, p: u32) -> Self {
        Self { basis: FpMatrix::zeros(0, ambient_dim, p) }
    }

    pub fn full(ambient_dim: usize, p: u32) -> Self {
        Self { basis: FpMatrix::identity(ambient_dim, p) }
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn modulus(&self) -> u32 {
        self.basis.modulus()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let row = FpMatrix::from_raw(1, v.len(), self.modulus(), v.to_vec()).expect("vector");
        self.basis.vstack(&row).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch(self.modulus(), other.modulus()));
        }
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(other.basis.vstack(&self.basis)?.rank() == other.dim())
    }

    /// Every vector of the subspace, in lexicographic coefficient order.
    pub fn points(&self) -> Vec<Vec<u32>> {
        let (p, k, n) = (self.modulus(), self.dim(), self.ambient_dim());
        let total = (p as usize).pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0u32; n];
                for i in 0..k {
                    let c = (idx % p as usize) as u32;
                    idx /= p as usize;
                    for (slot, &b) in v.iter_mut().zip(self.basis.row(i)) {
                        *slot = (*slot + c * b) % p;
                    }
                }
                v
            })
            .collect()
    }
}

/// `(n choose k)_p`, by the product formula.
pub fn gaussian_binomial(n: u32, k: u32, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow(n - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}

/// One canonical [`Subspace`] for each subspace of `F_p^ambient_dim`,
/// ordered by dimension and then by basis.
pub fn enumerate_subspaces(ambient_dim: usize, p: u32, budget_bits: u32) -> Result<Vec<Subspace>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bits_per = 32 - (p - 1).leading_zeros();
    if ambient_dim as u32 * bits_per > budget_bits {
        return budget(format!("subspaces of F_{p}^{ambient_dim} exceed {budget_bits} bits"));
    }
    let n = ambient_dim;
    let mut out = Vec::new();
    for k in 0..=n {
        // pivot column sets of size k
        for pivots in combinations(n, k) {
            // free slots: row i, column c > pivots[i], c not a pivot
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let piv = &pivots;
                    (piv[i] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let count = (p as usize).pow(slots.len() as u32);
            for mut idx in 0..count {
                let mut data = vec![0u32; k * n];
                for (i, &c) in pivots.iter().enumerate() {
                    data[i * n + c] = 1;
                }
                for &(i, c) in &slots {
                    data[i * n + c] = (idx % p as usize) as u32;
                    idx /= p as usize;
                }
                let basis = FpMatrix::from_raw(k, n, p, data)?;
                out.push(Subspace { basis });
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_subspaces(1, 2, 16).unwrap().len(), 2);
        assert_eq!(enumerate_subspaces(2, 2, 16).unwrap().len(), 5);
        assert_eq!(enumerate_subspaces(3, 2, 16).unwrap().len(), 16);
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for (n, p) in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5), (2, 7)] {
            let expected: u128 = (0..=n).map(|k| gaussian_binomial(n, k, p as u64)).sum();
            let subs = enumerate_subspaces(n as usize, p, 16).unwrap();
            assert_eq!(subs.len() as u128, expected, "n={n} p={p}");
            let distinct: HashSet<_> = subs.iter().collect();
            assert_eq!(distinct.len(), subs.len());
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(enumerate_subspaces(9, 3, 16), Err(Error::Budget(_))));
    }

    #[test]
    fn canonical_form_is_determined_by_point_set() {
        // every spanning set of a subspace yields the same basis
        let p = 3;
        let all: Vec<Vec<u32>> = Subspace::full(3, p).points();
        let subs = enumerate_subspaces(3, p, 16).unwrap();
        for s in &subs {
            let pts: BTreeSet<Vec<u32>> = s.points().into_iter().collect();
            let members: BTreeSet<Vec<u32>> = all.iter().filter(|v| s.contains(v)).cloned().collect();
            assert_eq!(pts, members);
            // respan using all points (a redundant spanning set)
            let rows: Vec<Vec<i64>> = pts.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
            if !rows.is_empty() {
                let m = FpMatrix::from_rows(&rows, p).unwrap();
                assert_eq!(&Subspace::from_spanning(&m), s);
            }
        }
    }
}
