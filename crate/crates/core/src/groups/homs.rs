use std::collections::HashMap;

use super::catalog::symmetric_group;
use super::fixed_dim::orbit_count;
use super::group::{FiniteGroup, Subgroup};
use super::lattice::all_subgroups;
use crate::error::{budget, Error, Result};

/// Largest number of generator-image tuples `hom_enumeration` will try.
const HOM_BUDGET: u128 = 20_000_000;

/// All homomorphisms `G → Λ`, grouped by Λ-conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClassReport {
    /// Each hom as its table of images, indexed by elements of `G`.
    pub homs: Vec<Vec<usize>>,
    /// Partition of `homs` indices into conjugacy classes.
    pub classes: Vec<Vec<usize>>,
    /// `|C_Λ(im f)|` for the first member of each class.
    pub centralizer_orders: Vec<usize>,
}

/// The graph `{(h, f(h))}` of a hom `f: H → Λ`, as a subgroup of `G × Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSubgroup {
    pub domain: Subgroup,
    /// `f(h)` for each `h` in `domain`, in the same order.
    pub images: Vec<usize>,
    pub elements: Subgroup,
}

/// Extends generator images to a full map, or returns `None` if they are
/// inconsistent. Does not check the hom property beyond the words it walks.
fn extend(g: &FiniteGroup, lambda: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut f = vec![usize::MAX; g.order()];
    f[g.identity()] = lambda.identity();
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = lambda.mul(f[x], t);
            if f[y] == usize::MAX {
                f[y] = fy;
                queue.push(y);
            } else if f[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(f)
}

fn is_hom(g: &FiniteGroup, lambda: &FiniteGroup, f: &[usize]) -> bool {
    (0..g.order()).all(|a| (0..g.order()).all(|b| f[g.mul(a, b)] == lambda.mul(f[a], f[b])))
}

/// Enumerates `Hom(G, Λ)` by generator images, verifies each pointwise and
/// classifies under conjugation by `Λ`.
pub fn hom_enumeration(g: &FiniteGroup, lambda: &FiniteGroup) -> Result<HomClassReport> {
    let gens = g.generators().to_vec();
    let tries = (lambda.order() as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if tries > HOM_BUDGET {
        return budget(format!("{tries} generator assignments exceed {HOM_BUDGET}"));
    }
    // image of a generator must have order dividing its order
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let k = g.element_order(s);
            (0..lambda.order()).filter(|&t| k % lambda.element_order(t) == 0).collect()
        })
        .collect();
    let mut homs = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Some(f) = extend(g, lambda, &gens, &images) {
            if is_hom(g, lambda, &f) {
                homs.push(f);
            }
        }
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    homs.sort();

    let index: HashMap<&Vec<usize>, usize> = homs.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut class_of = vec![usize::MAX; homs.len()];
    let mut classes = Vec::new();
    let mut centralizer_orders = Vec::new();
    for i in 0..homs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for l in 0..lambda.order() {
            let conj: Vec<usize> = homs[i].iter().map(|&y| lambda.conj(l, y)).collect();
            let j = *index
                .get(&conj)
                .ok_or_else(|| Error::Inconsistent("conjugate of a hom is missing".into()))?;
            if class_of[j] == usize::MAX {
                class_of[j] = c;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
        let mut image = homs[i].clone();
        image.sort_unstable();
        image.dedup();
        centralizer_orders.push(lambda.centralizer(&image).order());
    }
    Ok(HomClassReport { homs, classes, centralizer_orders })
}

/// Graph of `f: H → Λ` inside `product = G.direct_product(Λ)`; `f` is given
/// as an image table over all of `G` and only read on `domain`.
pub fn graph_of(lambda: &FiniteGroup, product: &FiniteGroup, domain: &Subgroup, f: &[usize]) -> Result<GraphSubgroup> {
    let m = lambda.order();
    let images: Vec<usize> = domain.elements().iter().map(|&h| f[h]).collect();
    let elements = Subgroup::from_elements(domain.elements().iter().zip(&images).map(|(&h, &y)| h * m + y).collect());
    elements.verify(product)?;
    let projected = Subgroup::from_elements(elements.elements().iter().map(|&x| x / m).collect());
    if projected.order() != elements.order() || &projected != domain {
        return Err(Error::Inconsistent("graph projection is not injective onto its domain".into()));
    }
    Ok(GraphSubgroup { domain: domain.clone(), images, elements })
}

/// One graph subgroup of `G × Λ` per hom `G → Λ`, together with the product.
pub fn graph_subgroups(g: &FiniteGroup, lambda: &FiniteGroup) -> Result<(FiniteGroup, Vec<GraphSubgroup>)> {
    let report = hom_enumeration(g, lambda)?;
    let product = g.direct_product(lambda);
    let whole = g.whole();
    let graphs = report.homs.iter().map(|f| graph_of(lambda, &product, &whole, f)).collect::<Result<_>>()?;
    Ok((product, graphs))
}

/// Outcome of an exhaustive transitivity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TransitivityCheck {
    pub cases: usize,
    pub failures: usize,
}

impl TransitivityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn transitive_on(lambda: &FiniteGroup, elems: &[usize]) -> bool {
    let degree = lambda.perm_degree().unwrap_or(0);
    let perms: Vec<&[usize]> = elems.iter().filter_map(|&x| lambda.permutation(x)).collect();
    degree > 0 && orbit_count(&perms, degree) == 1
}

fn is_full_cycle(perm: &[usize]) -> bool {
    let (mut x, mut len) = (perm[0], 1);
    while x != 0 {
        x = perm[x];
        len += 1;
    }
    len == perm.len()
}

/// Every nontrivial subgroup of `Σ_p` normalized by a `p`-cycle is transitive.
pub fn normalize1_check(p: u32) -> Result<TransitivityCheck> {
    if !crate::is_prime(p) || p > 5 {
        return Err(Error::InvalidParameter(format!("normalize1 runs for primes p ≤ 5, got {p}")));
    }
    let sym = symmetric_group(p as usize)?;
    let subgroups = all_subgroups(&sym, 1 << 10)?;
    let cycles: Vec<usize> = (0..sym.order()).filter(|&g| sym.permutation(g).is_some_and(is_full_cycle)).collect();
    let mut out = TransitivityCheck { cases: 0, failures: 0 };
    for phi in subgroups.iter().filter(|h| h.order() > 1) {
        for &s in &cycles {
            if sym.conjugate_subgroup(s, phi) == *phi {
                out.cases += 1;
                if !transitive_on(&sym, phi.elements()) {
                    out.failures += 1;
                }
            }
        }
    }
    Ok(out)
}

/// For distinct `f, f′: G → Σ_p`, `⟨Γ_f, Γ_{f′}⟩ ∩ (1 × Σ_p)` is transitive.
pub fn normalize2_check(g: &FiniteGroup, p: u32) -> Result<TransitivityCheck> {
    if !g.is_p_group_for(p) {
        return Err(Error::InvalidParameter(format!("{} is not a {p}-group", g.name())));
    }
    let sym = symmetric_group(p as usize)?;
    let (product, graphs) = graph_subgroups(g, &sym)?;
    let m = sym.order();
    let mut out = TransitivityCheck { cases: 0, failures: 0 };
    for (i, a) in graphs.iter().enumerate() {
        for b in &graphs[i + 1..] {
            let mut gens = a.elements.elements().to_vec();
            gens.extend_from_slice(b.elements.elements());
            let joined = product.closure(&gens);
            let psi: Vec<usize> = joined.elements().iter().filter(|&&x| x / m == g.identity()).map(|&x| x % m).collect();
            out.cases += 1;
            if !transitive_on(&sym, &psi) {
                out.failures += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog;

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort_unstable();
        v
    }

    #[test]
    fn worked_examples() {
        let z3 = build_catalog("cyclic:3").unwrap();
        let s3 = build_catalog("symmetric:3").unwrap();
        let r = hom_enumeration(&z3, &s3).unwrap();
        assert_eq!((r.homs.len(), r.classes.len()), (3, 2));
        assert_eq!(sorted(r.centralizer_orders), vec![3, 6]);

        let z2 = build_catalog("cyclic:2").unwrap();
        let r = hom_enumeration(&z2, &z2).unwrap();
        assert_eq!((r.homs.len(), r.classes.len()), (2, 2));

        let z5 = build_catalog("cyclic:5").unwrap();
        let s5 = build_catalog("symmetric:5").unwrap();
        let r = hom_enumeration(&z5, &s5).unwrap();
        assert_eq!((r.homs.len(), r.classes.len()), (25, 2));
        assert_eq!(sorted(r.centralizer_orders), vec![5, 120]);
    }

    #[test]
    fn class_sizes_divide_target_order() {
        let g = build_catalog("elem:2,2").unwrap();
        let l = build_catalog("dihedral:8").unwrap();
        let r = hom_enumeration(&g, &l).unwrap();
        let total: usize = r.classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, r.homs.len());
        for (c, &z) in r.classes.iter().zip(&r.centralizer_orders) {
            assert_eq!(c.len() * z, l.order());
        }
        // Hom(V4, D8): pairs of commuting elements of order ≤ 2
        let inv: Vec<usize> = (0..8).filter(|&x| l.element_order(x) <= 2).collect();
        let expect = inv.iter().flat_map(|&a| inv.iter().map(move |&b| (a, b))).filter(|&(a, b)| l.mul(a, b) == l.mul(b, a)).count();
        assert_eq!(r.homs.len(), expect);
    }

    #[test]
    fn graphs() {
        let z3 = build_catalog("cyclic:3").unwrap();
        let s3 = build_catalog("symmetric:3").unwrap();
        let (prod, graphs) = graph_subgroups(&z3, &s3).unwrap();
        assert_eq!(prod.order(), 18);
        assert!(graphs.iter().all(|gr| gr.elements.order() == 3));
        let trivial = graphs.iter().find(|gr| gr.images.iter().all(|&y| y == s3.identity())).unwrap();
        assert_eq!(trivial.elements.elements(), &[0, 6, 12]);

        let (prod, graphs) = graph_subgroups(&z3, &z3).unwrap();
        let id = graphs.iter().find(|gr| gr.images == vec![0, 1, 2]).unwrap();
        assert_eq!(id.elements.elements(), &[0, 4, 8]);
        assert!(id.elements.verify(&prod).is_ok());
    }

    #[test]
    fn normalize_lemmas() {
        for p in [2, 3, 5] {
            let r = normalize1_check(p).unwrap();
            assert!(r.passed() && r.cases > 0, "p={p}: {r:?}");
        }
        let g = crate::groups::build_catalog("cyclic:9").unwrap();
        let r = normalize2_check(&g, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 3);
    }
}
