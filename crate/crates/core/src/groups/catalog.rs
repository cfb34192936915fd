use std::fmt;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::is_prime;

/// Largest group order the catalog will build.
pub const MAX_CATALOG_ORDER: usize = 128;

/// A parsed catalog identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSpec {
    Trivial,
    Cyclic(usize),
    Elementary { p: u32, n: u32 },
    ZpZp2(u32),
    Heisenberg(u32),
    Dihedral8,
    Quaternion8,
    Symmetric(usize),
    Affine(u32),
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpec::Trivial => write!(f, "trivial"),
            CatalogSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            CatalogSpec::Elementary { p, n } => write!(f, "elem:{p},{n}"),
            CatalogSpec::ZpZp2(p) => write!(f, "zp_zp2:{p}"),
            CatalogSpec::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            CatalogSpec::Dihedral8 => write!(f, "dihedral:8"),
            CatalogSpec::Quaternion8 => write!(f, "quaternion:8"),
            CatalogSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            CatalogSpec::Affine(p) => write!(f, "affine:{p}"),
        }
    }
}

fn nums(params: &str) -> Result<Vec<u64>> {
    params
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("not a number: {s:?}")))
        })
        .collect()
}

fn prime_param(v: u64) -> Result<u32> {
    let p = u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("{v} too large")))?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

/// Parses `name` or `name:params`, e.g. `cyclic:8`, `elem:2,3`, `heisenberg:3`.
pub fn parse_catalog_spec(spec: &str) -> Result<CatalogSpec> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p)),
        None => (spec.trim(), None),
    };
    let one = |params: Option<&str>| -> Result<u64> {
        let v = nums(params.ok_or_else(|| Error::InvalidParameter(format!("{name} needs a parameter")))?)?;
        match v.as_slice() {
            [x] => Ok(*x),
            _ => Err(Error::InvalidParameter(format!("{name} takes one parameter"))),
        }
    };
    let parsed = match name {
        "trivial" => CatalogSpec::Trivial,
        "cyclic" => CatalogSpec::Cyclic(one(params)? as usize),
        "elem" | "elementary_abelian" => {
            let v = nums(params.ok_or_else(|| Error::InvalidParameter("elem needs p,n".into()))?)?;
            match v.as_slice() {
                [p, n] => CatalogSpec::Elementary { p: prime_param(*p)?, n: *n as u32 },
                _ => return Err(Error::InvalidParameter("elem takes p,n".into())),
            }
        }
        "zp_zp2" => CatalogSpec::ZpZp2(prime_param(one(params)?)?),
        "heisenberg" => CatalogSpec::Heisenberg(prime_param(one(params)?)?),
        "dihedral" => match params.map(|_| one(params)).transpose()? {
            None | Some(8) => CatalogSpec::Dihedral8,
            Some(k) => return Err(Error::InvalidParameter(format!("dihedral:{k} unsupported (only 8)"))),
        },
        "quaternion" => match params.map(|_| one(params)).transpose()? {
            None | Some(8) => CatalogSpec::Quaternion8,
            Some(k) => return Err(Error::InvalidParameter(format!("quaternion:{k} unsupported (only 8)"))),
        },
        "symmetric" => CatalogSpec::Symmetric(one(params)? as usize),
        "affine" | "affine_line" => CatalogSpec::Affine(prime_param(one(params)?)?),
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    Ok(parsed)
}

/// Catalog specs of every `p`-group family member of order ≤ `max_order`,
/// including the trivial group. Isomorphic entries from different families
/// (e.g. `heisenberg:2` and `dihedral:8`) both appear.
pub fn p_group_specs(p: u32, max_order: usize) -> Vec<CatalogSpec> {
    let mut out = vec![CatalogSpec::Trivial];
    if !is_prime(p) {
        return out;
    }
    let q = p as usize;
    let mut k = q;
    while k <= max_order {
        out.push(CatalogSpec::Cyclic(k));
        k *= q;
    }
    let mut n = 2;
    while q.pow(n) <= max_order {
        out.push(CatalogSpec::Elementary { p, n });
        n += 1;
    }
    if q.pow(3) <= max_order {
        out.push(CatalogSpec::ZpZp2(p));
        out.push(CatalogSpec::Heisenberg(p));
        if p == 2 {
            out.push(CatalogSpec::Dihedral8);
            out.push(CatalogSpec::Quaternion8);
        }
    }
    out
}

/// Builds a catalog group from a spec string.
pub fn build_catalog(spec: &str) -> Result<FiniteGroup> {
    parse_catalog_spec(spec)?.build()
}

impl CatalogSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let name = self.to_string();
        let check = |order: u128| -> Result<()> {
            if order == 0 || order > MAX_CATALOG_ORDER as u128 {
                Err(Error::InvalidParameter(format!("{name}: order {order} outside 1..={MAX_CATALOG_ORDER}")))
            } else {
                Ok(())
            }
        };
        match *self {
            CatalogSpec::Trivial => FiniteGroup::from_table(name, vec![vec![0]], Some(vec!["e".into()])),
            CatalogSpec::Cyclic(n) => {
                check(n as u128)?;
                FiniteGroup::from_elements(name, (0..n).collect(), |a, b| (a + b) % n, |a| a.to_string())
            }
            CatalogSpec::Elementary { p, n } => {
                check((p as u128).checked_pow(n).unwrap_or(u128::MAX))?;
                let p = p as usize;
                let elems: Vec<Vec<usize>> = (0..p.pow(n))
                    .map(|mut k| {
                        (0..n)
                            .map(|_| {
                                let d = k % p;
                                k /= p;
                                d
                            })
                            .collect()
                    })
                    .collect();
                FiniteGroup::from_elements(
                    name,
                    elems,
                    |a, b| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect(),
                    |a| format!("{a:?}"),
                )
            }
            CatalogSpec::ZpZp2(p) => {
                check((p as u128).pow(3))?;
                let p = p as usize;
                let elems: Vec<(usize, usize)> = (0..p).flat_map(|a| (0..p * p).map(move |b| (a, b))).collect();
                FiniteGroup::from_elements(
                    name,
                    elems,
                    |x, y| ((x.0 + y.0) % p, (x.1 + y.1) % (p * p)),
                    |x| format!("({},{})", x.0, x.1),
                )
            }
            CatalogSpec::Heisenberg(p) => {
                check((p as u128).pow(3))?;
                let p = p as usize;
                // upper unitriangular [[1,x,z],[0,1,y],[0,0,1]]
                let elems: Vec<(usize, usize, usize)> = (0..p * p * p).map(|k| (k % p, (k / p) % p, k / (p * p))).collect();
                FiniteGroup::from_elements(
                    name,
                    elems,
                    |a, b| ((a.0 + b.0) % p, (a.1 + b.1) % p, (a.2 + b.2 + a.0 * b.1) % p),
                    |a| format!("[{},{},{}]", a.0, a.1, a.2),
                )
            }
            CatalogSpec::Dihedral8 => metacyclic8(name, false),
            CatalogSpec::Quaternion8 => metacyclic8(name, true),
            CatalogSpec::Symmetric(n) => {
                if !(1..=5).contains(&n) {
                    return Err(Error::InvalidParameter(format!("symmetric:{n} unsupported (1..=5)")));
                }
                symmetric_group(n)
            }
            CatalogSpec::Affine(p) => {
                check(p as u128 * (p as u128 - 1))?;
                affine_line(p)
            }
        }
    }
}

/// `a^i b^j` with `a^4 = 1`, `b a b^{-1} = a^{-1}` and `b^2 = 1` (dihedral) or
/// `b^2 = a^2` (quaternion).
fn metacyclic8(name: String, quaternion: bool) -> Result<FiniteGroup> {
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..4).map(move |i| (i, j))).collect();
    FiniteGroup::from_elements(
        name,
        elems,
        |&(i, j), &(k, l)| {
            let twisted = if j == 1 { 4 - k } else { k };
            let extra = if quaternion && j == 1 && l == 1 { 2 } else { 0 };
            ((i + twisted + extra) % 4, j ^ l)
        },
        |&(i, j)| format!("a{i}b{j}"),
    )
}

/// Σ_n acting on `0..n`, composing as functions: `(στ)(i) = σ(τ(i))`.
pub(crate) fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    let g = FiniteGroup::from_elements(
        format!("symmetric:{n}"),
        perms.clone(),
        |s: &Vec<usize>, t: &Vec<usize>| t.iter().map(|&i| s[i]).collect(),
        |s| s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(""),
    )?;
    Ok(g.with_permutation_action(perms))
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// The affine permutations `x ↦ ax + b` of F_p.
fn affine_line(p: u32) -> Result<FiniteGroup> {
    let p = p as usize;
    let elems: Vec<(usize, usize)> = (1..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    let perms = elems.iter().map(|&(a, b)| (0..p).map(|x| (a * x + b) % p).collect()).collect();
    let g = FiniteGroup::from_elements(
        format!("affine:{p}"),
        elems,
        |&(a, b), &(c, d)| (a * c % p, (a * d + b) % p),
        |&(a, b)| format!("{a}x+{b}"),
    )?;
    Ok(g.with_permutation_action(perms))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism search by generator images.
    fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
        if g.order() != h.order() {
            return false;
        }
        let gens = g.generators().to_vec();
        let n = g.order();
        let mut choice = vec![0usize; gens.len()];
        loop {
            // extend the assignment along words in the generators
            let mut f = vec![usize::MAX; n];
            f[g.identity()] = h.identity();
            let mut queue = vec![g.identity()];
            let mut ok = true;
            let mut i = 0;
            while i < queue.len() && ok {
                let x = queue[i];
                for (k, &s) in gens.iter().enumerate() {
                    let y = g.mul(x, s);
                    let fy = h.mul(f[x], choice[k]);
                    if f[y] == usize::MAX {
                        f[y] = fy;
                        queue.push(y);
                    } else if f[y] != fy {
                        ok = false;
                    }
                }
                i += 1;
            }
            if ok {
                let mut seen = vec![false; n];
                ok = f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
                    && (0..n).all(|a| (0..n).all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])));
                if ok {
                    return true;
                }
            }
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return false;
                }
                choice[k] += 1;
                if choice[k] < n {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn cyclic_four() {
        let g = build_catalog("cyclic:4").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!((0..4).filter(|&x| g.element_order(x) == 4).count(), 2);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn affine_three_is_s3() {
        let a = build_catalog("affine:3").unwrap();
        assert_eq!(a.order(), 6);
        assert!(!a.is_abelian());
        assert!(isomorphic(&a, &build_catalog("symmetric:3").unwrap()));
        assert!(!isomorphic(&a, &build_catalog("cyclic:6").unwrap()));
        for p in [2u32, 5, 7] {
            assert_eq!(build_catalog(&format!("affine:{p}")).unwrap().order(), (p * (p - 1)) as usize);
        }
    }

    #[test]
    fn heisenberg_three() {
        let g = build_catalog("heisenberg:3").unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 3);
        let all: Vec<usize> = (0..27).collect();
        assert_eq!(g.centralizer(&all).order(), 3);
        assert_eq!(build_catalog("heisenberg:2").unwrap().exponent(), 4);
    }

    #[test]
    fn order_eight() {
        let d = build_catalog("dihedral:8").unwrap();
        let q = build_catalog("quaternion:8").unwrap();
        let involutions = |g: &FiniteGroup| (0..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions(&d), 5);
        assert_eq!(involutions(&q), 1);
        assert!(!d.is_abelian() && !q.is_abelian());
        assert!(!isomorphic(&d, &q));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(build_catalog("nope:3"), Err(Error::UnknownGroup(_))));
        assert!(matches!(build_catalog("elem:4,2"), Err(Error::NotPrime(4))));
        assert!(build_catalog("symmetric:6").is_err());
        assert!(build_catalog("cyclic:x").is_err());
        assert!(build_catalog("cyclic:1000").is_err());
        assert_eq!(build_catalog("elem:2,3").unwrap().order(), 8);
        assert_eq!(build_catalog("zp_zp2:2").unwrap().exponent(), 4);
        assert_eq!(build_catalog("trivial").unwrap().order(), 1);
        assert_eq!(build_catalog("symmetric:4").unwrap().perm_degree(), Some(4));
    }

    #[test]
    fn p_group_listing() {
        let specs = p_group_specs(2, 32);
        assert_eq!(specs.len(), 1 + 5 + 4 + 4);
        for s in specs.iter().chain(&p_group_specs(3, 27)) {
            let g = s.build().unwrap();
            assert!(g.order() <= 32 && g.prime().is_none_or(|q| q == 2 || q == 3), "{s}");
        }
    }
}
