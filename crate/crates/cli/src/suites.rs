use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stein_core::complexes::{frattini_check, tits_profile, FrattiniOutcome};
use stein_core::glalg::{idempotent_rank, steinberg, GLGroup, ProductOrder, RegularModule, TrivialModule};
use stein_core::graded::{
    admissible_series, calibrate_shift, graded_rep, hfp_fixed_report, m_series, phi_lhs_series, phi_rhs_series, PoincareSeries,
};
use stein_core::groups::{
    build_catalog, hom_enumeration, normalize1_check, normalize2_check, p_group_specs, FiniteGroup, SubgroupLattice,
};
use stein_core::gsets::{check_gset, enumerate_gsets};
use stein_core::strata::{
    boxed_rank_check, corollary_composition_rank, mono_lemma_check, projection_lemma_check, steinberg_composition_rank,
    MatrixStratification,
};
use stein_core::{binomial, gl_order};

use crate::groupfile::load_group;
use crate::report::{InputError, Report, SeriesRow};

/// Parameters shared by every command.
#[derive(Clone, Debug)]
pub struct Params {
    pub group: Option<String>,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub p: Option<u32>,
    pub max_degree: Option<usize>,
    pub max_points: Option<usize>,
    pub allow_large: bool,
    pub seed: u64,
}

type Out = Result<Report, InputError>;

fn input(e: stein_core::Error) -> InputError {
    InputError(e.to_string())
}

fn gl_budget(n: usize, p: u32, allow_large: bool) -> Result<(), InputError> {
    if !allow_large && gl_order(n as u32, p as u64) > 168 {
        return Err(InputError(format!("GL_{n}(F_{p}) exceeds the default budget; pass --allow-large")));
    }
    Ok(())
}

fn lattice_of(spec: &str, allow_large: bool) -> Result<(FiniteGroup, SubgroupLattice), InputError> {
    let g = load_group(spec)?;
    if !allow_large && g.order() > 64 {
        return Err(InputError(format!("group of order {} exceeds the default budget; pass --allow-large", g.order())));
    }
    let l = SubgroupLattice::new(&g).map_err(input)?;
    Ok((g, l))
}

fn group_prime(g: &FiniteGroup, p: Option<u32>) -> Result<u32, InputError> {
    match (g.prime(), p) {
        (Some(q), Some(p)) if q != p => Err(InputError(format!("{} is a {q}-group, not a {p}-group", g.name()))),
        (Some(q), _) => Ok(q),
        (None, Some(p)) if g.order() == 1 => Ok(p),
        (None, None) if g.order() == 1 => Ok(2),
        _ => Err(InputError(format!("{} is not a p-group", g.name()))),
    }
}

fn elems(l: &SubgroupLattice, i: usize) -> Value {
    json!(l.subgroup(i).elements())
}

pub fn cmd_lattice(params: &Params) -> Out {
    let spec = params.group.clone().ok_or_else(|| InputError("--group is required".into()))?;
    let (g, l) = lattice_of(&spec, params.allow_large)?;
    let mut report = Report::new("lattice", BTreeMap::from([("group".to_string(), json!(spec))]));
    let ordering = l.subgroup_ordering();
    let c: Vec<Value> = l.poset_c().iter().map(|&(h, d)| json!({"index": h, "d": d, "elements": elems(&l, h)})).collect();
    let mut transverse = Vec::new();
    for &(a, _) in l.poset_c() {
        for &(b, _) in l.poset_c() {
            if a < b && l.transverse(l.subgroup(a), l.subgroup(b)).map_err(input)? {
                transverse.push(json!([a, b]));
            }
        }
    }
    report.data = Some(json!({
        "order": g.order(),
        "subgroups": l.len(),
        "conjugacy_classes": l.conjugacy_classes().len(),
        "subgroup_orders": l.subgroups().iter().map(|h| h.order()).collect::<Vec<_>>(),
        "frattini": {"index": l.frattini(), "order": l.frattini_subgroup().order(), "elements": elems(&l, l.frattini())},
        "poset_c": c,
        "subgroup_ordering": ordering,
        "transverse_pairs": transverse,
    }));
    report.check("subgroup_ordering", json!(null), json!(true), || Ok((json!(l.verify_ordering(&ordering)), l.verify_ordering(&ordering))))?;
    let maximal = l.maximal();
    report.check("frattini_in_maximals", json!(null), json!(true), || {
        let ok = maximal.iter().all(|&m| l.leq(l.frattini(), m));
        Ok((json!(ok), ok))
    })?;
    if let Some(p) = g.prime() {
        report.check("poset_c_index", json!({"p": p}), json!("p^d(H) = [G:H], H ∈ 𝒞 iff F ⊆ H"), || {
            let ok_index = l.poset_c().iter().all(|&(h, d)| (p as usize).pow(d) * l.subgroup(h).order() == g.order());
            let ok_members = (0..l.len()).all(|h| l.leq(l.frattini(), h) == l.d_of(h).is_some());
            Ok((json!({"index": ok_index, "membership": ok_members}), ok_index && ok_members))
        })?;
    }
    Ok(report)
}

pub fn verify_steinberg(params: &Params) -> Out {
    let n = params.n.unwrap_or(2);
    let p = params.p.unwrap_or(2);
    gl_budget(n, p, params.allow_large)?;
    let mut report = Report::new("steinberg", BTreeMap::from([("n".into(), json!(n)), ("p".into(), json!(p))]));
    let gl = GLGroup::build(n, p).map_err(input)?;
    let st_dim = (p as u64).pow(binomial(n as u64, 2) as u32);
    for order in ProductOrder::BOTH {
        let st = steinberg(&gl, order).map_err(input)?;
        report.check(format!("idempotent[{}]", order.name()), json!({"n": n, "p": p}), json!("x² = c·x, c ≠ 0"), || {
            let squares = st.x.mul(&st.x)? == st.x.scale(st.c.value());
            let ok = squares && !st.c.is_zero() && st.e.is_idempotent();
            Ok((json!({"c": st.c.value(), "x2_eq_cx": squares, "e_idempotent": st.e.is_idempotent()}), ok))
        })?;
        report.check(format!("rank[{}]", order.name()), json!({"module": "regular"}), json!(st_dim), || {
            let r = idempotent_rank(&st.e, &RegularModule { group: gl.clone() })?;
            Ok((json!(r), r as u64 == st_dim))
        })?;
    }
    if n >= 1 && ((p == 2 && n <= 3) || (p == 3 && n <= 2)) {
        report.check("tits_top_betti", json!({"d": n, "p": p}), json!(st_dim), || {
            let h = tits_profile(n, p)?;
            let top = h.concentrated();
            Ok((json!(h.betti), top == Some((n as i32 - 2, st_dim as usize))))
        })?;
    }
    Ok(report)
}

pub fn verify_strata(params: &Params) -> Out {
    let n = params.n.unwrap_or(2);
    let r = params.r.unwrap_or(1);
    let p = params.p.unwrap_or(2);
    gl_budget(n, p, params.allow_large)?;
    let mut report = Report::new("strata", BTreeMap::from([("n".into(), json!(n)), ("r".into(), json!(r)), ("p".into(), json!(p))]));
    let strat = MatrixStratification::new(n, r, p).map_err(input)?;
    let gl = GLGroup::build(n, p).map_err(input)?;
    for (name, ok) in strat.invariant_checks(&gl) {
        report.check(format!("stratum_counts:{name}"), json!(null), json!(true), || Ok((json!(ok), ok)))?;
    }
    let reg = RegularModule { group: gl.clone() };
    let triv = TrivialModule { dim: 1, p };
    for i in 0..strat.strata().len() {
        let codim = strat.stratum(i).codim;
        let inputs = json!({"stratum": i, "codim": codim});
        if codim > n as usize {
            let empty = strat.stratum(i).members.is_empty();
            report.check(format!("empty_stratum[{i}]"), inputs, json!(true), || Ok((json!(empty), empty)))?;
            continue;
        }
        report.check(format!("projection_lemma[{i}]"), inputs.clone(), json!(true), || {
            let rec = projection_lemma_check(&strat, &gl, i)?;
            let ok = rec.equal && rec.projections_nest;
            Ok((serde_json::to_value(&rec).expect("record"), ok))
        })?;
        for order in ProductOrder::BOTH {
            let tag = format!("{i},{}", order.name());
            report.check(format!("boxed[{tag}]"), inputs.clone(), json!("formulas and ranks agree"), || {
                let rec = boxed_rank_check(&strat, &gl, i, order)?;
                Ok((serde_json::to_value(&rec).expect("record"), rec.passed()))
            })?;
            report.check(format!("mono_lemma[{tag}]"), inputs.clone(), json!(true), || {
                let rec = mono_lemma_check(&strat, &gl, i, order)?;
                let ok = rec.mono && rec.containment_algebra && rec.containment_operator && rec.images_equal;
                Ok((serde_json::to_value(&rec).expect("record"), ok))
            })?;
            for (mname, ok_rec) in [
                ("regular", steinberg_composition_rank(&strat, &gl, i, &reg, order)),
                ("trivial", steinberg_composition_rank(&strat, &gl, i, &triv, order)),
            ] {
                report.check(format!("composition[{tag},{mname}]"), inputs.clone(), json!("full rank"), || {
                    let rec = ok_rec?;
                    Ok((serde_json::to_value(&rec).expect("record"), rec.iso))
                })?;
            }
        }
    }
    for order in ProductOrder::BOTH {
        report.check(format!("corollary_iso[{}]", order.name()), json!({"module": "regular"}), json!("isomorphism"), || {
            let rec = corollary_composition_rank(&strat, &gl, &reg, order)?;
            Ok((serde_json::to_value(&rec).expect("record"), rec.iso && rec.diagram_commutes))
        })?;
    }
    Ok(report)
}

pub fn verify_frattini(params: &Params) -> Out {
    let spec = params.group.clone().unwrap_or_else(|| "cyclic:8".into());
    let (g, l) = lattice_of(&spec, params.allow_large)?;
    let p = group_prime(&g, params.p)?;
    let mut report = Report::new("frattini", BTreeMap::from([("group".into(), json!(spec)), ("p".into(), json!(p))]));
    for h in 0..l.len() {
        let outcome = frattini_check(&l, h, p).map_err(input)?;
        if outcome == FrattiniOutcome::Skipped {
            continue;
        }
        report.check(format!("acyclic[{h}]"), json!({"H": elems(&l, h)}), json!("acyclic with closure certificate"), || {
            Ok((serde_json::to_value(&outcome).expect("outcome"), outcome.passed()))
        })?;
    }
    Ok(report)
}

pub fn verify_homs(params: &Params) -> Out {
    let p = params.p.unwrap_or(2);
    if !matches!(p, 2 | 3 | 5) {
        return Err(InputError(format!("homs suite supports p ∈ {{2, 3, 5}}, got {p}")));
    }
    let mut report = Report::new("homs", BTreeMap::from([("p".into(), json!(p))]));
    let zp = build_catalog(&format!("cyclic:{p}")).map_err(input)?;
    let fact: usize = (1..=p as usize).product();
    let mut centralizers = Vec::new();
    for (target, expected) in [("symmetric", vec![fact, p as usize]), ("affine", vec![(p * (p - 1)) as usize, p as usize])] {
        let lambda = build_catalog(&format!("{target}:{p}")).map_err(input)?;
        let mut exp = expected.clone();
        exp.sort_unstable();
        let rep = hom_enumeration(&zp, &lambda).map_err(input)?;
        let mut got = rep.centralizer_orders.clone();
        got.sort_unstable();
        centralizers.push(got.clone());
        report.check(format!("hom_classes[{target}]"), json!({"source": format!("cyclic:{p}")}), json!({"classes": 2, "centralizer_orders": exp}), || {
            Ok((json!({"classes": rep.classes.len(), "centralizer_orders": got}), rep.classes.len() == 2 && got == exp))
        })?;
    }
    report.check("centralizer_ratios", json!({"p": p}), json!("prime to p"), || {
        let pairs: Vec<(usize, usize)> = centralizers[0].iter().copied().zip(centralizers[1].iter().copied()).collect();
        let ok = pairs.iter().all(|&(s, a)| s % a == 0 && (s / a) % p as usize != 0);
        let ratios: Vec<f64> = pairs.iter().map(|&(s, a)| s as f64 / a as f64).collect();
        Ok((json!(ratios), ok))
    })?;
    report.check("normalize1", json!({"p": p}), json!("transitive"), || {
        let r = normalize1_check(p)?;
        Ok((serde_json::to_value(r).expect("check"), r.passed() && r.cases > 0))
    })?;
    if p <= 3 {
        let specs: Vec<String> = match &params.group {
            Some(s) => vec![s.clone()],
            None => p_group_specs(p, (p as usize).pow(3)).iter().map(|s| s.to_string()).collect(),
        };
        for spec in specs {
            let g = load_group(&spec)?;
            report.check(format!("normalize2[{spec}]"), json!({"group": spec}), json!("transitive"), || {
                let r = normalize2_check(&g, p)?;
                Ok((serde_json::to_value(r).expect("check"), r.passed()))
            })?;
        }
    }
    Ok(report)
}

pub fn verify_gsets(params: &Params) -> Out {
    let spec = params.group.clone().unwrap_or_else(|| "cyclic:2".into());
    let max_points = params.max_points.unwrap_or(6);
    if !params.allow_large && max_points > 9 {
        return Err(InputError("--max-points above 9 needs --allow-large".into()));
    }
    let (g, l) = lattice_of(&spec, params.allow_large)?;
    let p = group_prime(&g, params.p)?;
    let mut report = Report::new(
        "gsets",
        BTreeMap::from([("group".into(), json!(spec)), ("max_points".into(), json!(max_points)), ("p".into(), json!(p))]),
    );
    let sets = enumerate_gsets(&l, max_points).map_err(input)?;
    for (i, x) in sets.iter().enumerate() {
        let orbits: Vec<usize> = x.orbits().iter().map(|o| o.len()).collect();
        report.check(format!("gset[{i}]"), json!({"orbit_sizes": orbits}), json!(true), || {
            let rec = check_gset(&l, x, p)?;
            let actual = json!({
                "points": rec.points,
                "strata_partition": rec.strata_partition,
                "transfer_bijection": rec.transfer_bijection,
                "free_monoid": rec.free_monoid,
                "fixed_dim": rec.fixed_dim,
                "primitive_sum": rec.primitive_sum,
            });
            Ok((actual, rec.passed()))
        })?;
    }
    Ok(report)
}

fn series_budget(params: &Params, n: usize, p: u32, d: usize) -> Result<(), InputError> {
    gl_budget(n, p, params.allow_large)?;
    if !params.allow_large && d > 16 {
        return Err(InputError("--max-degree above 16 needs --allow-large".into()));
    }
    Ok(())
}

fn push_series(report: &mut Report, table: &str, key: String, s: &PoincareSeries) {
    report.series.push(SeriesRow { table: table.into(), key, coeffs: s.coeffs.clone() });
}

/// Shared by `verify series` and `series`: assembles both sides and the
/// fixed-point report, and records the identity as a check.
fn run_series(params: &Params, suite: &str) -> Out {
    let spec = params.group.clone().unwrap_or_else(|| "cyclic:2".into());
    let n = params.n.unwrap_or(1);
    let d = params.max_degree.unwrap_or(12);
    let (g, l) = lattice_of(&spec, params.allow_large)?;
    let p = group_prime(&g, params.p)?;
    series_budget(params, n, p, d)?;
    let mut report = Report::new(
        suite,
        BTreeMap::from([("group".into(), json!(spec)), ("n".into(), json!(n)), ("p".into(), json!(p)), ("max_degree".into(), json!(d))]),
    );
    let lhs = phi_lhs_series(&l, p, n, d).map_err(input)?;
    let rhs = phi_rhs_series(&l, p, n, d).map_err(input)?;
    let hfp = hfp_fixed_report(&l, p, d).map_err(input)?;
    for (h, dh, s) in &lhs.per_h {
        push_series(&mut report, "phi_lhs", format!("H{h}:d{dh}"), s);
    }
    push_series(&mut report, "phi_lhs", "total".into(), &lhs.total);
    push_series(&mut report, "phi_rhs", "total".into(), &rhs);
    for (h, dh, s) in &hfp.per_h {
        push_series(&mut report, "hfp_fixed", format!("H{h}:d{dh}"), s);
    }
    push_series(&mut report, "hfp_fixed", "total".into(), &hfp.total);
    let per_h = |v: &[(usize, u32, PoincareSeries)]| -> Vec<Value> {
        v.iter().map(|(h, dh, s)| json!({"H": h, "d": dh, "elements": elems(&l, *h), "series": s.coeffs})).collect()
    };
    report.data = Some(json!({
        "truncation": d,
        "phi_lhs": {"per_h": per_h(&lhs.per_h), "total": lhs.total.coeffs},
        "phi_rhs": rhs.coeffs,
        "hfp_fixed": {"per_h": per_h(&hfp.per_h), "total": hfp.total.coeffs},
    }));
    report.check("series_identity", json!({"n": n, "max_degree": d}), json!(rhs.coeffs), || {
        Ok((json!(lhs.total.coeffs), lhs.total == rhs))
    })?;
    Ok(report)
}

pub fn cmd_series(params: &Params) -> Out {
    run_series(params, "series")
}

pub fn verify_series(params: &Params) -> Out {
    let mut report = run_series(params, "verify_series")?;
    let n = params.n.unwrap_or(1);
    let d = params.max_degree.unwrap_or(12);
    let p = report.params["p"].as_u64().expect("p recorded") as u32;
    let rep = graded_rep(n, p, d.min(8)).map_err(input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let o = rep.group().order();
    let pairs: Vec<(usize, usize)> = (0..100).map(|_| (rng.gen_range(0..o), rng.gen_range(0..o))).collect();
    for deg in 0..=rep.max_degree() {
        report.check(format!("multiplicative[{deg}]"), json!({"pairs": 100, "seed": params.seed}), json!(true), || {
            let ok = rep.multiplicative_on(deg, &pairs);
            Ok((json!(ok), ok))
        })?;
    }
    let mut firsts = Vec::new();
    for k in 0..=n {
        let m = m_series(k, p, d).map_err(input)?;
        firsts.push(m.first_nonzero());
    }
    report.check("m_series_first_degree_monotone", json!({"k": format!("0..={n}")}), json!("nondecreasing"), || {
        let ok = firsts.iter().all(Option::is_some) && firsts.windows(2).all(|w| w[0] <= w[1]);
        Ok((json!(firsts), ok))
    })?;
    if p == 2 {
        let sigma = calibrate_shift().map_err(input)?;
        for k in 1..=n.min(2) {
            report.check(format!("admissible[{k}]"), json!({"sigma_1": sigma, "max_degree": d}), json!("equal after shift"), || {
                let m = m_series(k, 2, d)?.shift(sigma * k as i64)?;
                let a = admissible_series(k, d);
                Ok((json!({"shifted_m": m.coeffs, "admissible": a.coeffs}), m == a))
            })?;
        }
    }
    Ok(report)
}
