use super::catalog::symmetric_group;
use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// `G × Σ_n` with element `(g, σ)` at index `g·n! + σ`.
#[derive(Clone, Debug)]
pub struct SymmetricProduct {
    pub base: FiniteGroup,
    pub sym: FiniteGroup,
    pub product: FiniteGroup,
}

impl SymmetricProduct {
    pub fn new(base: &FiniteGroup, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let sym = symmetric_group(n)?;
        let product = base.direct_product(&sym);
        Ok(Self { base: base.clone(), sym, product })
    }

    pub fn degree(&self) -> usize {
        self.sym.perm_degree().unwrap_or(0)
    }

    /// `(g, σ)` for a product element.
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.sym.order(), x % self.sym.order())
    }

    pub fn permutation(&self, x: usize) -> &[usize] {
        self.sym.permutation(self.split(x).1).expect("symmetric group carries its action")
    }

    /// `Γ ∩ (1 × Σ_n)` as a list of permutation indices in `sym`.
    pub fn sigma_part(&self, gamma: &Subgroup) -> Vec<usize> {
        gamma
            .elements()
            .iter()
            .map(|&x| self.split(x))
            .filter(|&(g, _)| g == self.base.identity())
            .map(|(_, s)| s)
            .collect()
    }
}

/// Orbits of a set of permutations of `0..degree`.
pub fn orbit_count(perms: &[&[usize]], degree: usize) -> usize {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for perm in perms {
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..degree).filter(|&i| find(&mut parent, i) == i).count()
}

/// The two evaluations of `dim (ρ_G ⊗ R̄^n)^Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedDim {
    pub character: u64,
    pub closed_form: u64,
    /// Orbit count of `Γ ∩ (1 × Σ_n)` on `{0..n}`.
    pub psi_orbits: usize,
}

impl FixedDim {
    pub fn value(&self) -> u64 {
        self.character
    }
}

/// Fixed-point dimension of the regular representation of `G` tensored with
/// the reduced standard representation of `Σ_n`, for `Γ ⊆ G × Σ_n`.
///
/// Computed by character averaging and by the orbit formula; an error is
/// returned if they disagree.
pub fn fixed_dim_rho_tensor(sp: &SymmetricProduct, gamma: &Subgroup) -> Result<FixedDim> {
    gamma.verify(&sp.product)?;
    let n = sp.degree();
    let g_order = sp.base.order() as i64;
    let mut sum: i64 = 0;
    for &x in gamma.elements() {
        let (g, _) = sp.split(x);
        if g == sp.base.identity() {
            let perm = sp.permutation(x);
            let fix = perm.iter().enumerate().filter(|&(i, &j)| i == j).count() as i64;
            sum += g_order * (fix - 1);
        }
    }
    let gamma_order = gamma.order() as i64;
    if sum % gamma_order != 0 || sum < 0 {
        return Err(Error::Inconsistent(format!("character sum {sum} not a multiple of |Γ| = {gamma_order}")));
    }
    let character = (sum / gamma_order) as u64;

    let psi = sp.sigma_part(gamma);
    let perms: Vec<&[usize]> = psi.iter().map(|&s| sp.sym.permutation(s).unwrap()).collect();
    let psi_orbits = orbit_count(&perms, n);
    let num = g_order as u64 * psi.len() as u64 * (psi_orbits as u64 - 1);
    if num % gamma.order() as u64 != 0 {
        return Err(Error::Inconsistent("closed form is not an integer".into()));
    }
    let closed_form = num / gamma.order() as u64;
    if closed_form != character {
        return Err(Error::Inconsistent(format!("character average {character} != closed form {closed_form}")));
    }
    Ok(FixedDim { character, closed_form, psi_orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog;

    #[test]
    fn worked_examples() {
        let triv = build_catalog("trivial").unwrap();
        let sp = SymmetricProduct::new(&triv, 3).unwrap();
        let d = fixed_dim_rho_tensor(&sp, &sp.product.whole()).unwrap();
        assert_eq!(d.value(), 0);

        let z4 = build_catalog("cyclic:4").unwrap();
        let sp = SymmetricProduct::new(&z4, 3).unwrap();
        let d = fixed_dim_rho_tensor(&sp, &sp.product.trivial_subgroup()).unwrap();
        assert_eq!(d.value(), 4 * 2);

        // graph of Z/2 ≅ Σ_2
        let z2 = build_catalog("cyclic:2").unwrap();
        let sp = SymmetricProduct::new(&z2, 2).unwrap();
        let gamma = Subgroup::from_elements(vec![0, 3]);
        let d = fixed_dim_rho_tensor(&sp, &gamma).unwrap();
        assert_eq!(d.value(), 1);
        assert_eq!(d.psi_orbits, 2);
    }

    #[test]
    fn rejects_non_subgroups() {
        let z2 = build_catalog("cyclic:2").unwrap();
        let sp = SymmetricProduct::new(&z2, 2).unwrap();
        assert!(fixed_dim_rho_tensor(&sp, &Subgroup::from_elements(vec![0, 1, 2])).is_err());
        assert!(SymmetricProduct::new(&z2, 0).is_err());
    }

    #[test]
    fn orbits() {
        let id: Vec<usize> = (0..4).collect();
        let swap = vec![1, 0, 2, 3];
        assert_eq!(orbit_count(&[&id], 4), 4);
        assert_eq!(orbit_count(&[&swap], 4), 3);
        assert_eq!(orbit_count(&[], 2), 2);
    }
}
