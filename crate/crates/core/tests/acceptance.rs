//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p incalg-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use incalg_core::autgroup::{decompose, enumerate_automorphisms, inner, order_lift, schur, EnumerationLimits};
use incalg_core::cartprod::{
    boolean_local_by_definition, boolean_local_check, induced_endo, recover_family, DisjointFamily, PermutationMatcher,
    PiElement, PiMap, SetMap,
};
use incalg_core::localcheck::{self, GammaLimits, DEFAULT_SWEEP_LIMIT};
use incalg_core::tailalg::{self, TailVector};
use incalg_core::{sample, IncidenceAlgebra, LinearMap, Poset, Ring, RingElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn ring(s: &str) -> Ring {
    Ring::parse(s).unwrap()
}

fn poset_family() -> Vec<(&'static str, Poset)> {
    vec![
        ("1-point", Poset::chain(1)),
        ("2-chain", Poset::chain(2)),
        ("2-antichain", Poset::antichain(2)),
        ("3-chain", Poset::chain(3)),
        ("V", Poset::vee()),
        ("Lambda", Poset::lambda()),
        ("diamond", Poset::diamond()),
    ]
}

const RINGS: [&str; 4] = ["Z2", "Z3", "Z4", "GF(4)"];

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let per_case = 40;
    let (mut trials, mut failures) = (0, Vec::new());
    for (name, poset) in poset_family() {
        let rhos = poset.order_automorphisms().unwrap();
        for r in RINGS {
            let alg = IncidenceAlgebra::new(ring(r), poset.clone());
            for _ in 0..per_case {
                trials += 1;
                let rho = sample::order_automorphism(&rhos, &mut rng);
                let sigma = sample::schur(&alg, &mut rng);
                let f = sample::unit(&alg, &mut rng);
                let lift = order_lift(&alg, &rho).unwrap();
                let phi = alg.compose(&inner(&alg, &f).unwrap(), &alg.compose(&schur(&alg, &sigma), &lift));
                match decompose(&alg, &phi) {
                    Ok(d) if d.rho == rho && d.to_map(&alg).unwrap() == phi => {}
                    Ok(_) => failures.push(format!("{name}/{r}: recomposition or rho mismatch")),
                    Err(e) => failures.push(format!("{name}/{r}: {e}")),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(60);
    verdict(
        failures.is_empty() && trials >= 1000 && fast,
        format!("{trials} triples, {} failures, {:.2} s{}", failures.len(), elapsed.as_secs_f64(), first(&failures)),
    )
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
}

fn sweep_equals_aut(r: &str, poset: Poset, expected_total: u64) -> (bool, String) {
    let alg = IncidenceAlgebra::new(ring(r), poset);
    let auts = enumerate_automorphisms(&alg, EnumerationLimits::default()).unwrap();
    let sweep = localcheck::sweep_local_maps(&alg, 1, &auts, DEFAULT_SWEEP_LIMIT).unwrap();
    let mut local: Vec<LinearMap> = sweep.local.iter().map(|&i| alg.map_at(i)).collect();
    local.sort();
    let ok = sweep.total_maps == expected_total && local.len() == 2 && local == auts;
    (ok, format!("{} of {} local, |Aut| = {}", local.len(), sweep.total_maps, auts.len()))
}

fn criterion_2() -> Verdict {
    let (a, da) = sweep_equals_aut("Z2", Poset::chain(2), 512);
    let (b, db) = sweep_equals_aut("Z2", Poset::antichain(2), 16);
    verdict(a && b, format!("2-chain: {da}; 2-antichain: {db}"))
}

/// Every order lift `ρ̂` on the antichain, i.e. every permutation.
fn permutation_lifts(alg: &IncidenceAlgebra) -> Vec<LinearMap> {
    alg.poset().order_automorphisms().unwrap().iter().map(|rho| order_lift(alg, rho).unwrap()).collect()
}

fn criterion_3() -> Verdict {
    let alg = IncidenceAlgebra::new(ring("Z3"), Poset::antichain(2));
    let auts = enumerate_automorphisms(&alg, EnumerationLimits::default()).unwrap();
    let points: Vec<_> = (0..2).map(|x| alg.point(x)).collect();
    let keep = |eta: &LinearMap| points.iter().all(|e| localcheck::image_contains(&alg, eta, e, 1 << 12).unwrap());
    let sweep = localcheck::sweep_local_maps_where(&alg, 1, &auts, DEFAULT_SWEEP_LIMIT, keep).unwrap();
    let lifts = permutation_lifts(&alg);
    let exceptions = sweep.local.iter().filter(|&&i| !lifts.contains(&alg.map_at(i))).count();
    verdict(
        sweep.total_maps == 81 && exceptions == 0 && !sweep.local.is_empty(),
        format!("{} maps swept, {} local with every e_x in the image, {exceptions} exceptions", sweep.total_maps, sweep.local.len()),
    )
}

fn criterion_4() -> Verdict {
    let alg = IncidenceAlgebra::new(ring("Z2"), Poset::antichain(2));
    let auts = enumerate_automorphisms(&alg, EnumerationLimits::default()).unwrap();
    let sweep = localcheck::sweep_local_maps_where(&alg, 2, &auts, DEFAULT_SWEEP_LIMIT, |m| alg.is_bijective(m)).unwrap();
    let lifts = permutation_lifts(&alg);
    let exceptions = sweep.local.iter().filter(|&&i| !lifts.contains(&alg.map_at(i))).count();
    verdict(
        sweep.total_maps == 16 && exceptions == 0 && !sweep.local.is_empty(),
        format!("{} maps swept, {} surjective 2-local, {exceptions} exceptions", sweep.total_maps, sweep.local.len()),
    )
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let z2 = ring("Z2");
    let matcher = PermutationMatcher::new(3).unwrap();
    // the memo table against the unmemoized definition
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut table_ok = true;
    for _ in 0..2000 {
        let m = SetMap::new(3, (0..8).map(|_| rng.gen_range(0..8)).collect()).unwrap();
        table_ok &= matcher.is_local(&m) == boolean_local_by_definition(&z2, &m).unwrap();
    }
    let total = SetMap::count(3).unwrap();
    let (mut disagreements, mut locals) = (0u64, 0u64);
    for i in 0..total {
        let m = SetMap::at(3, i);
        let by_definition = matcher.is_local(&m);
        locals += u64::from(by_definition);
        disagreements += u64::from(boolean_local_check(&z2, &m).unwrap() != by_definition);
    }
    verdict(
        table_ok && disagreements == 0 && total == 1 << 24,
        format!(
            "{total} set maps, {locals} local, {disagreements} disagreements, {:.1} s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let posets = poset_family();
    let (mut cases, mut violations) = (0u64, Vec::new());
    let mut record = |ok: bool, what: String| {
        cases += 1;
        if !ok {
            violations.push(what);
        }
    };
    for round in 0..2500 {
        let (name, poset) = &posets[round % posets.len()];
        let r = RINGS[(round / posets.len()) % RINGS.len()];
        let alg = IncidenceAlgebra::new(ring(r), poset.clone());
        let n = poset.len();
        let xs = sample::subset(n, &mut rng);
        let a = if rng.gen() {
            sample::conjugated_idempotent(&alg, &xs, &mut rng)
        } else {
            sample::perturbed_idempotent(&alg, &xs, &mut rng)
        };
        record(alg.idempotent_support_check(&a, &xs).unwrap(), format!("support {name}/{r}"));
        let x = rng.gen_range(0..n);
        let p = match rng.gen_range(0..3) {
            0 => sample::primitive_idempotent(&alg, x, &mut rng),
            1 => sample::conjugated_idempotent(&alg, &[x], &mut rng),
            _ => sample::perturbed_idempotent(&alg, &[x], &mut rng),
        };
        record(alg.primitive_idempotent_checks(&p, x).unwrap(), format!("factorization {name}/{r}"));
        record(alg.idempotent_support_check(&p, &[x]).unwrap(), format!("support {name}/{r}"));
        let (b, c) = (sample::element(&alg, &mut rng), sample::element(&alg, &mut rng));
        record(alg.square_law_holds(&b, &c, x), format!("square law {name}/{r}"));
    }
    verdict(
        cases >= 10_000 && violations.is_empty(),
        format!("{cases} cases, {} violations{}", violations.len(), first(&violations)),
    )
}

fn random_tail(ring: &Ring, rng: &mut ChaCha8Rng) -> TailVector {
    let q = ring.order().unwrap() as i64;
    let len = rng.gen_range(0..=6);
    let prefix = (0..len).map(|_| RingElem::from_canonical(rng.gen_range(0..q))).collect();
    TailVector::new(prefix, RingElem::from_canonical(rng.gen_range(0..q)))
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut verified = 0;
    let mut trials = 0;
    for r in ["Z2", "Z3"] {
        let ring = ring(r);
        for _ in 0..1000 {
            trials += 1;
            let size = rng.gen_range(1..=8);
            let tuple: Vec<TailVector> = (0..size).map(|_| random_tail(&ring, &mut rng)).collect();
            if let Ok(rho) = tailalg::verify_n_local(&tuple) {
                // re-apply coordinatewise, independently of the transport routine
                let direct = tuple.iter().all(|a| {
                    let img = tailalg::eta(a);
                    (0..a.prefix_len() + 4).all(|i| img.get(rho.apply(i)) == a.get(i))
                });
                verified += usize::from(direct);
            }
        }
    }
    let e0 = TailVector::unit_vector(0);
    let infeasible = tailalg::preimage(&e0).is_err();
    verdict(
        verified == trials && infeasible,
        format!("{verified} of {trials} tuples verified; e_0 has no preimage: {infeasible}"),
    )
}

fn random_family(n: usize, rng: &mut ChaCha8Rng) -> DisjointFamily {
    let mut sets = vec![Vec::new(); n];
    for z in 0..n {
        let owner = rng.gen_range(0..=n);
        if owner < n {
            sets[owner].push(z);
        }
    }
    DisjointFamily::new(sets).unwrap()
}

/// All linear maps `R^2 -> R^2` that are multiplicative on every pair of
/// elements, tested exhaustively.
fn multiplicative_maps(ring: &Ring) -> Vec<PiMap> {
    let elems = ring.elements().unwrap();
    let vectors: Vec<PiElement> =
        elems.iter().flat_map(|&a| elems.iter().map(move |&b| PiElement::new(vec![a, b]))).collect();
    let mut out = Vec::new();
    for u in &vectors {
        for v in &vectors {
            let m = PiMap::from_images(vec![u.clone(), v.clone()]).unwrap();
            let mult = vectors
                .iter()
                .all(|a| vectors.iter().all(|b| m.apply(ring, &a.mul(ring, b)) == m.apply(ring, a).mul(ring, &m.apply(ring, b))));
            if mult {
                out.push(m);
            }
        }
    }
    out
}

fn criterion_8() -> (Verdict, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rings = [ring("Z2"), ring("Z3"), ring("GF(4)"), ring("Z4")];
    let mut bad = 0;
    let trials = 1200;
    for t in 0..trials {
        let r = &rings[t % rings.len()];
        let n = rng.gen_range(1..=6);
        let fam = random_family(n, &mut rng);
        match recover_family(r, &induced_endo(&fam)) {
            Ok(rec) if rec.family == fam && rec.induced => {}
            _ => bad += 1,
        }
    }
    let z2 = ring("Z2");
    let ends = multiplicative_maps(&z2);
    let not_induced = ends.iter().filter(|m| !recover_family(&z2, m).map(|r| r.induced).unwrap_or(false)).count();
    let z4 = ring("Z4");
    let ends4 = multiplicative_maps(&z4);
    let not_induced4 = ends4.iter().filter(|m| !recover_family(&z4, m).map(|r| r.induced).unwrap_or(false)).count();
    (
        verdict(
            // orthogonal idempotent pairs (u, v) in Z2^2: 3^2 of them
            bad == 0 && not_induced == 0 && ends.len() == 9,
            format!("{trials} families, {bad} failures; Z2 |P|=2: {} endomorphisms, {not_induced} not induced", ends.len()),
        ),
        format!("informational, Z4 |P|=2: {} endomorphisms, {not_induced4} not induced", ends4.len()),
    )
}

fn criterion_9() -> Verdict {
    let cases = [("Z2", 2), ("Z3", 1), ("Z3", 2)];
    let results: Vec<bool> =
        cases.iter().map(|&(r, p)| localcheck::gamma_nonexistence_search(&ring(r), p, GammaLimits::default()) == Ok(true)).collect();
    verdict(results.iter().all(|&b| b), format!("(Z2,2) (Z3,1) (Z3,2): {results:?}"))
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |k: usize, title: &str, v: Verdict| {
        all &= v.pass;
        println!("criterion {k} [{title}]: {} ({})", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    };
    report(1, "decomposition round trip", criterion_1());
    report(2, "exhaustive LAut = Aut", criterion_2());
    report(3, "local with e_x in the image is an order lift, Z3", criterion_3());
    report(4, "surjective 2-local is an order lift, Z2", criterion_4());
    report(5, "boolean cardinality characterization", criterion_5());
    report(6, "idempotent structure", criterion_6());
    report(7, "non-surjective n-local shift", criterion_7());
    let (v8, info8) = criterion_8();
    report(8, "induced endomorphisms", v8);
    println!("  {info8}");
    report(9, "gamma nonexistence", criterion_9());
    if all {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
