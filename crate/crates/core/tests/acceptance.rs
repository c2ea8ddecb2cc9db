//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod oracle;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxsheaf::corpus;
use coxsheaf::gradmod::{is_torsion, restricted_irrelevant_power, saturate_submodule, POWER_CAP};
use coxsheaf::groeb::{cox_variable_names, reduced_groebner_basis};
use coxsheaf::polyfan::{dual_generators, fan_properties, hilbert_basis};
use coxsheaf::sheaf::{
    eta_check, global_sections_degree, is_zero_sheaf, sheafify, xi_forward, xi_preimage, SectionMode,
};
use coxsheaf::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cox_with(fan: &Fan, b: Option<&[GroupElement]>) -> Arc<CoxRingData> {
    let g = build_grading(fan);
    let whole = g.whole_group();
    let sub = classify_subgroup(&g, b.unwrap_or(&whole)).expect("valid subgroup");
    Arc::new(build_cox(&g, &sub, BaseRingFlags::rationals()).expect("big subgroup"))
}

fn z(g: &GradingData, d: i64) -> GroupElement {
    g.element(&[d]).expect("rank one")
}

fn c_rows(fan: &Fan) -> Vec<Vec<i64>> {
    fan.rays().to_vec()
}

fn grading_pipeline() -> Outcome {
    let cases: [(&str, Fan, Vec<Vec<i64>>); 3] = [
        ("P2", corpus::p2(), vec![vec![1], vec![1], vec![1]]),
        ("P1xP1", corpus::p1xp1(), vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]),
        ("P(1,1,2)", corpus::p112(), vec![vec![1], vec![2], vec![1]]),
    ];
    for (name, fan, expected) in cases {
        let g = build_grading(&fan);
        let (rank, factors) = oracle::determinantal_invariants(&c_rows(&fan));
        let torsion: Vec<i128> = factors.into_iter().filter(|&d| d > 1).collect();
        let group = g.class_group();
        ensure(group.free_rank == fan.ray_count() - rank, format!("{name}: free rank"))?;
        let ours: Vec<i128> = group.torsion_orders.iter().map(|t| t.to_i128().unwrap()).collect();
        ensure(ours == torsion, format!("{name}: torsion {ours:?} vs {torsion:?}"))?;
        let degrees: Vec<Vec<i64>> =
            g.ray_degrees().iter().map(|d| d.coords().iter().map(|x| x.to_i64().unwrap()).collect()).collect();
        ensure(degrees == expected, format!("{name}: degrees {degrees:?}"))?;
        // a(v) = 0 exactly on the image of c, checked on a box.
        let n = fan.rank();
        let image: Vec<Vec<i64>> = oracle::lattice_points(n, 6)
            .iter()
            .map(|u| fan.rays().iter().map(|r| r.iter().zip(u).map(|(a, b)| a * b).sum()).collect())
            .collect();
        for v in oracle::lattice_points(fan.ray_count(), 3) {
            let zero = group.is_zero_element(&g.degree(&v));
            ensure(zero == image.contains(&v), format!("{name}: kernel of a at {v:?}"))?;
        }
    }
    Ok("P2, P1xP1, P(1,1,2) class groups and ray degrees match the minor-gcd oracle".into())
}

fn picard_bigness() -> Outcome {
    let p2 = build_grading(&corpus::p2());
    ensure(picard_group(&p2).index_in_a == Index::Finite(BigInt::one()), "pic(P2) = A")?;
    let p112 = build_grading(&corpus::p112());
    let pic = picard_group(&p112);
    ensure(pic.index_in_a == Index::Finite(BigInt::from(2)), "pic(P112) has index 2")?;
    ensure(pic.generators == vec![z(&p112, 2)], "pic(P112) = 2Z")?;
    let quadric = build_grading(&corpus::quadric_cone());
    ensure(picard_group(&quadric).generators.is_empty(), "pic(quadric cone) = 0")?;
    for c in corpus::all() {
        let g = build_grading(&c.fan);
        let pic = picard_group(&g);
        let props = fan_properties(&c.fan);
        let big = matches!(pic.index_in_a, Index::Finite(_));
        let whole = pic.index_in_a == Index::Finite(BigInt::one());
        ensure(big == props.is_simplicial, format!("{}: big vs simplicial", c.name))?;
        ensure(whole == props.is_regular, format!("{}: pic = A vs regular", c.name))?;
    }
    Ok("pic values exact; big <=> simplicial and pic = A <=> regular on all five fans".into())
}

fn section_dimensions() -> Outcome {
    let cox = cox_with(&corpus::p2(), None);
    let sheaf = sheafify(&GradedModulePresentation::structure(cox.clone()), 1).map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    for d in -2..=4 {
        let s = global_sections_degree(&sheaf, &z(cox.grading(), d), SectionMode::ViaShift).map_err(|e| e.to_string())?;
        ensure(s.stabilized, format!("degree {d} not stabilized"))?;
        ensure(s.dimension() == oracle::monomial_count(3, d), format!("degree {d}: {}", s.dimension()))?;
        dims.push(s.dimension());
    }
    Ok(format!("dimensions for d = -2..4: {dims:?}"))
}

fn degree_two_monomials() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in (0..=2).rev() {
        for b in (0..=2 - a).rev() {
            out.push(vec![a, b, 2 - a - b]);
        }
    }
    out
}

fn bijection_family() -> Outcome {
    let cox = cox_with(&corpus::p2(), None);
    let s = GradedModulePresentation::structure(cox.clone());
    let window: Vec<GroupElement> = (0..=3).map(|d| z(cox.grading(), d)).collect();
    let monomials = degree_two_monomials();
    let mut family = Vec::new();
    for size in 2..=3 {
        for set in subsets(monomials.len(), size) {
            family.push(set.iter().map(|&i| monomials[i].clone()).collect::<Vec<_>>());
        }
    }
    ensure(family.len() == 35, format!("family has {} ideals", family.len()))?;
    let mut pairs = Vec::new();
    for gens in &family {
        let polys: Vec<Poly> = gens.iter().map(|e| Poly::term(e)).collect();
        let g = GradedSubmodule::ideal(&s, &polys).map_err(|e| e.to_string())?;
        let t = xi_forward(&g).map_err(|e| e.to_string())?;
        let sat = saturate_submodule(&g).map_err(|e| e.to_string())?;
        let back = xi_preimage(&t, &s, &window).map_err(|e| e.to_string())?;
        ensure(back == sat, format!("preimage of forward image differs from saturation for {gens:?}"))?;
        let t_sat = xi_forward(&sat).map_err(|e| e.to_string())?;
        ensure(t_sat == t, format!("saturation changes the chart family for {gens:?}"))?;
        pairs.push((sat.canonical_generators(), t));
    }
    let mut distinct = 0;
    for i in 0..pairs.len() {
        for j in 0..i {
            let same_ideal = pairs[i].0 == pairs[j].0;
            ensure(same_ideal == (pairs[i].1 == pairs[j].1), "chart families do not separate saturated ideals")?;
        }
        if (0..i).all(|j| pairs[j].0 != pairs[i].0) {
            distinct += 1;
        }
    }
    Ok(format!("35 ideals, {distinct} distinct saturations, separated by their chart families"))
}

fn torsion_criterion() -> Outcome {
    let cox = cox_with(&corpus::p2(), None);
    for m in 1..=3 {
        let f = GradedModulePresentation::quotient(cox.clone(), &restricted_irrelevant_power(&cox, m))
            .map_err(|e| e.to_string())?;
        ensure(is_torsion(&f, POWER_CAP).torsion, format!("S/I_B^{m} not torsion"))?;
        ensure(is_zero_sheaf(&sheafify(&f, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?, format!("m = {m}"))?;
    }
    let names = cox_variable_names(3);
    let parse = |list: &[&str]| -> Vec<Poly> { list.iter().map(|s| Poly::parse(s, &names).unwrap()).collect() };
    let ideals: Vec<Vec<Poly>> = vec![
        vec![],
        parse(&["Z1"]),
        parse(&["Z1*Z2", "Z1*Z3"]),
        parse(&["Z1", "Z2"]),
        parse(&["Z1", "Z2", "Z3"]),
        parse(&["Z1^2", "Z2^2", "Z3^2"]),
        parse(&["Z1^2", "Z1*Z2", "Z1*Z3", "Z2^3"]),
        parse(&["Z1*Z2-Z3^2"]),
    ];
    let mut zero_count = 0;
    for (i, ideal) in ideals.iter().enumerate() {
        let f = GradedModulePresentation::quotient(cox.clone(), ideal).map_err(|e| e.to_string())?;
        let zero = is_zero_sheaf(&sheafify(&f, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let torsion = is_torsion(&f, POWER_CAP).torsion;
        ensure(zero == torsion, format!("module {i}: zero sheaf {zero}, torsion {torsion}"))?;
        zero_count += zero as usize;
    }
    Ok(format!("S/I_B^m torsion with zero sheaf for m = 1..3; {zero_count} of {} further quotients have zero sheaf, all torsion", ideals.len()))
}

fn eta_instance() -> Outcome {
    let cox = cox_with(&corpus::p2(), None);
    let sheaf = sheafify(&GradedModulePresentation::structure(cox.clone()), 1).map_err(|e| e.to_string())?;
    for d in 0..=4 {
        let alpha = z(cox.grading(), d);
        let eta = eta_check(&sheaf, &alpha).map_err(|e| e.to_string())?;
        ensure(eta.is_bijective() && eta.stabilized, format!("eta not bijective in degree {d}: {eta:?}"))?;
        ensure(eta.source_dimension == oracle::monomial_count(3, d), format!("source dimension in degree {d}"))?;
        let twist = global_sections_degree(&sheaf, &alpha, SectionMode::ViaTwist).map_err(|e| e.to_string())?;
        ensure(twist.dimension() == eta.section_dimension, format!("via_twist differs in degree {d}"))?;
    }
    Ok("F_a -> sections bijective for a = 0..4, via_shift = via_twist".into())
}

fn positivity() -> Outcome {
    for (name, fan) in [("P2", corpus::p2()), ("P1xP1", corpus::p1xp1()), ("P(1,1,2)", corpus::p112())] {
        ensure(fan_properties(&fan).cone_equals_span, format!("{name}: hypothesis"))?;
        ensure(cox_with(&fan, None).is_positively_graded(3).positive, format!("{name} not positive"))?;
    }
    let fan = corpus::rays_only();
    ensure(!fan_properties(&fan).cone_equals_span, "rays-only fan satisfies the hypothesis")?;
    let cox = cox_with(&fan, None);
    let p = cox.is_positively_graded(3);
    ensure(!p.positive, "rays-only fan reported positive")?;
    let w = p.witness.ok_or("no witness within bound 3")?;
    let g = cox.grading();
    let group = g.class_group();
    let (dm, dn) = (g.degree(&w.monomial), g.degree(&w.opposite));
    ensure(dm == w.degree && group.is_zero_element(&group.add(&dm, &dn)), "witness degrees")?;
    ensure(!group.is_zero_element(&dm) && cox.in_b(&dm), "witness degree must be a nonzero element of B")?;
    let size = |v: &[i64]| v.iter().sum::<i64>();
    ensure(w.monomial.iter().chain(&w.opposite).all(|&x| x >= 0), "witness monomials")?;
    ensure(size(&w.monomial) <= 3 && size(&w.opposite) <= 3, "witness beyond bound")?;
    Ok(format!("positive on P2, P1xP1, P(1,1,2); rays-only witness {:?} * {:?} in degree {}", w.monomial, w.opposite, w.degree))
}

fn strongly_graded() -> Outcome {
    let mut small_pairs = 0;
    for c in corpus::all() {
        let g = build_grading(&c.fan);
        let group = g.class_group();
        let pic = picard_group(&g);
        let mut candidates: Vec<Vec<GroupElement>> = vec![g.whole_group(), pic.generators.clone()];
        for k in 2..=3 {
            let kb = BigInt::from(k);
            candidates.push(g.whole_group().iter().map(|x| group.scale(&kb, x)).collect());
            candidates.push(pic.generators.iter().map(|x| group.scale(&kb, x)).collect());
        }
        for b in candidates {
            let sub = classify_subgroup(&g, &b).map_err(|e| e.to_string())?;
            if !sub.is_big || !sub.is_small {
                continue;
            }
            small_pairs += 1;
            let cox = build_cox(&g, &sub, BaseRingFlags::rationals()).map_err(|e| e.to_string())?;
            for cone in c.fan.cones() {
                ensure(cox.strongly_graded_at(cone).unwrap(), format!("{}: {cone:?} with small B", c.name))?;
            }
        }
    }
    let cox = cox_with(&corpus::p112(), None);
    ensure(!cox.strongly_graded_at(&[0, 2]).unwrap(), "P(1,1,2), B = A, cone(r1, r3) must fail")?;
    Ok(format!("{small_pairs} small (fan, B) pairs strongly graded everywhere; P(1,1,2) fails at cone(r1, r3) for B = A"))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> oracle::P {
    let mut p = oracle::P::new();
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(0..=3);
        let mut e = vec![0i64; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        *p.entry(e).or_insert_with(|| oracle::q(0)) += oracle::q(c);
    }
    p.retain(|_, c| *c != oracle::q(0));
    p
}

fn kernel_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut pointed = 0;
    let mut dual_checked = 0;
    while pointed < 200 {
        let n = rng.gen_range(1..=3);
        let gens: Vec<Vec<i64>> = (0..rng.gen_range(1..=4)).map(|_| random_vector(&mut rng, n)).collect();
        let dual = dual_generators(n, &gens);
        for d in &dual {
            ensure(gens.iter().all(|g| g.iter().zip(d).map(|(a, b)| a * b).sum::<i64>() >= 0), "dual generator not dual")?;
        }
        for u in oracle::lattice_points(n, 5) {
            let inside = gens.iter().all(|g| g.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>() >= 0);
            ensure(inside == oracle::cone_contains(&dual, &u), format!("dual cone of {gens:?} at {u:?}"))?;
        }
        let double = dual_generators(n, &dual);
        ensure(double.iter().all(|x| oracle::cone_contains(&gens, x)), format!("double dual of {gens:?}"))?;
        ensure(gens.iter().all(|x| oracle::cone_contains(&double, x)), format!("double dual of {gens:?}"))?;
        dual_checked += 1;

        let Some(w) = oracle::positive_functional(&gens) else {
            continue;
        };
        pointed += 1;
        let hb = hilbert_basis(n, &gens);
        ensure(hb.iter().all(|h| oracle::cone_contains(&gens, h)), "Hilbert basis element outside the cone")?;
        let points: Vec<Vec<i64>> = oracle::lattice_points(n, 12).into_iter().filter(|p| oracle::cone_contains(&gens, p)).collect();
        let mut memo = HashMap::new();
        for p in &points {
            ensure(oracle::representable(p, &hb, &gens, &w, &mut memo), format!("{p:?} not generated for {gens:?}"))?;
        }
        for h in &hb {
            let split = points.iter().chain(hb.iter()).any(|q| {
                q != h && q.iter().any(|&x| x != 0) && {
                    let r: Vec<i64> = h.iter().zip(q).map(|(a, b)| a - b).collect();
                    oracle::cone_contains(&gens, &r)
                }
            });
            ensure(!split, format!("Hilbert basis element {h:?} of {gens:?} is reducible"))?;
        }
    }

    let mut nontrivial = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let gens: Vec<oracle::P> =
            (0..rng.gen_range(1..=4)).map(|_| random_poly(&mut rng, n)).filter(|p| !p.is_empty()).collect();
        let ours = reduced_groebner_basis(&gens.iter().map(to_poly).collect::<Vec<_>>(), MonomialOrder::GrevLex);
        let ours: Vec<oracle::P> = ours.iter().map(from_poly).collect();
        for i in 0..ours.len() {
            for j in 0..i {
                ensure(oracle::reduce(&oracle::s_poly(&ours[i], &ours[j]), &ours).is_empty(), "S-pair does not reduce to zero")?;
            }
        }
        for g in &gens {
            ensure(oracle::reduce(g, &ours).is_empty(), "generator not in the ideal of the basis")?;
        }
        let mut expected = oracle::reduced_basis(&gens);
        let mut got = ours.clone();
        expected.sort();
        got.sort();
        ensure(expected == got, format!("reduced basis differs for {gens:?}"))?;
        nontrivial += (got.len() > 1) as usize;
    }
    Ok(format!(
        "{dual_checked} random cones dual-checked, 200 pointed cones Hilbert-basis-checked to coordinate sum 12, 100 random ideals ({nontrivial} with several basis elements) match plain Buchberger"
    ))
}

fn to_poly(p: &oracle::P) -> Poly {
    let n = p.keys().next().map_or(1, Vec::len);
    Poly::from_terms(n, p.iter().map(|(e, c)| (e.clone(), c.clone())))
}

fn from_poly(p: &Poly) -> oracle::P {
    p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn b_independence() -> Outcome {
    let fan = corpus::p2();
    let g = build_grading(&fan);
    let whole = cox_with(&fan, None);
    let two = [z(&g, 2)];
    let even = cox_with(&fan, Some(&two));
    for cone in fan.cones() {
        let a = whole.local_chart(cone).map_err(|e| e.to_string())?;
        let b = even.local_chart(cone).map_err(|e| e.to_string())?;
        ensure(a.degree_zero_generators == b.degree_zero_generators, format!("{cone:?}: charts differ"))?;
        // Least m with m·deg(Ẑ_σ) even, deg(Ẑ_σ) = 3 − |σ|.
        let d = 3 - cone.len() as i64;
        let m = (1..=2).find(|m| (m * d) % 2 == 0).unwrap();
        ensure(even.m_exponent(cone).unwrap() == m, format!("{cone:?}: m_sigma"))?;
        ensure(whole.m_exponent(cone).unwrap() == 1, format!("{cone:?}: m_sigma for B = A"))?;
    }
    for cone in fan.maximal_cones() {
        ensure(even.m_exponent(&cone).unwrap() == 2, "maximal cones need m = 2")?;
    }
    Ok("S_(sigma) generators equal for B = A and B = 2Z on all 7 cones; m_sigma = 2 on maximal cones".into())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Grading pipeline", grading_pipeline),
        ("Picard/bigness equivalences", picard_bigness),
        ("Section dimensions", section_dimensions),
        ("Bijection on monomial ideals", bijection_family),
        ("Torsion criterion", torsion_criterion),
        ("Eta isomorphism instance", eta_instance),
        ("Positivity criterion", positivity),
        ("Strongly-graded condition", strongly_graded),
        ("Kernel invariants", kernel_invariants),
        ("B-independence", b_independence),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(reason) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {reason} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
