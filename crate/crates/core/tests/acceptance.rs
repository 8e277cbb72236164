//! One line per acceptance criterion, each timed against its limit.
//! Exits non-zero when any criterion fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{cyclic_table, from_cochain, invariant_idempotents, oracle_cohomology, random_restricted, to_cochain, Oracle};
use num_bigint::BigInt;
use partial_galois::cohomology::{coboundary, cohomology_group, CochainGroup};
use partial_galois::crossed::{CrossedRing, RfModule};
use partial_galois::finring::RingElem;
use partial_galois::galois::{coordinate_check, galois_certificate};
use partial_galois::paction::PartialAction;
use partial_galois::sequence::{self, c_g_module, crossed_product_check, normalized_cocycles, phi1_exactness};
use partial_galois::{fixtures, gencross, pics};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn both() -> [(&'static str, PartialAction, Oracle); 2] {
    [("fix A", fixtures::fix_a(), Oracle::fix_a()), ("fix B", fixtures::fix_b(), Oracle::fix_b())]
}

fn delta_chain() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut exhaustive = 0usize;
    let mut sampled = 0usize;
    for (name, a, o) in both() {
        for n in 0..=2 {
            let cg = CochainGroup::new(&a, n).unwrap();
            let ident = CochainGroup::new(&a, n + 2).unwrap().identity();
            let fs = if cg.order() <= BigInt::from(1u32 << 16) {
                exhaustive += 1;
                cg.elements()
            } else {
                sampled += 1;
                (0..100).map(|_| cg.random(&mut rng)).collect()
            };
            for f in &fs {
                let df = coboundary(&a, f).unwrap();
                let ddf = coboundary(&a, &df).unwrap();
                ensure(ddf == ident, format!("{name}: delta^{} delta^{n} f != 1 for {:?}", n + 1, f.values()))?;
                let odf = o.delta(n, &from_cochain(f));
                ensure(odf == from_cochain(&df), format!("{name}: delta^{n} disagrees with the oracle"))?;
                ensure(o.delta(n + 1, &odf) == o.identity(n + 2), format!("{name}: oracle delta chain"))?;
            }
        }
    }
    Ok(format!("{exhaustive} exhaustive degrees, {sampled} sampled with 100 cochains each"))
}

fn dual_oracle() -> Check {
    let mut out = Vec::new();
    for (name, a, o) in both() {
        for n in 0..=2 {
            let engine = cohomology_group(&a, n).unwrap().invariant_factors().to_vec();
            let oracle = oracle_cohomology(&o, n);
            ensure(engine == oracle, format!("{name} H^{n}: engine {engine:?}, enumeration {oracle:?}"))?;
            let expected: Vec<BigInt> = if n == 0 { vec![BigInt::from(2)] } else { vec![] };
            ensure(engine == expected, format!("{name} H^{n} = {engine:?}"))?;
            out.push(format!("{name} H^{n}={engine:?}"));
        }
    }
    Ok(out.join(", "))
}

fn hilbert90() -> Check {
    for (name, a, o) in both() {
        let v = sequence::hilbert90(&a).map_err(|e| format!("{name}: {e}"))?;
        ensure(v.passed, format!("{name}: H^1 = {:?}", v.h1_factors))?;
        ensure(oracle_cohomology(&o, 1).is_empty(), format!("{name}: enumeration finds H^1 != 0"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let (mut galois, mut proper, mut rejected) = (0, 0, 0);
    while galois < 24 {
        let (a, o) = random_restricted(&mut rng);
        if a.group().order() == 1 {
            continue;
        }
        if !galois_certificate(&a, None).unwrap().galois {
            rejected += 1;
            ensure(rejected < 5000, "too few Galois actions generated")?;
            continue;
        }
        galois += 1;
        if !a.is_global() {
            proper += 1;
        }
        let v = sequence::hilbert90(&a).unwrap();
        let label = format!("{:?} with |G| = {}, 1_g = {:?}", a.ring().moduli(), a.group().order(), o.ones);
        ensure(v.passed, format!("{label}: H^1 = {:?}", v.h1_factors))?;
        ensure(oracle_cohomology(&o, 1).is_empty(), format!("{label}: enumeration finds H^1 != 0"))?;
    }
    Ok(format!("fixtures and {galois} random Galois actions ({proper} properly partial, {rejected} non-Galois draws skipped)"))
}

fn galois_certification() -> Check {
    let a = fixtures::fix_b();
    let ring = a.ring();
    let basis: Vec<RingElem> = (0..ring.len()).map(|i| ring.basis(i)).collect();
    let cert = galois_certificate(&a, Some((&basis, &basis))).unwrap();
    ensure(cert.galois, format!("fix B not certified: {:?}", cert.witness))?;
    ensure(cert.coordinates.as_ref().is_some_and(|c| c.passed), "certificate rejects x_i = y_i = e_i")?;
    let direct = coordinate_check(&a, &basis, &basis).unwrap();
    ensure(direct.passed, format!("coordinate_check fails at {:?}", direct.failing))?;
    let o = Oracle::fix_b();
    for g in 0..o.order {
        let mut sum = vec![0u64; o.c()];
        for i in 0..o.c() {
            let e: Vec<u64> = (0..o.c()).map(|j| (i == j) as u64).collect();
            let t = o.mul_e(&e, &o.alpha(g, &o.cut(&e, &o.ones[o.inv[g]])));
            for j in 0..o.c() {
                sum[j] = (sum[j] + t[j]) % o.moduli[j];
            }
        }
        let expected: Vec<u64> = vec![(g == 0) as u64; o.c()];
        ensure(sum == expected, format!("oracle coordinate sum at g{g} is {sum:?}"))?;
    }
    let j = &cert.j;
    let nine = BigInt::from(3u32).pow(9).to_string();
    ensure(j.is_iso && j.crossed_order == nine && j.end_order == nine, format!("j: {} -> {}", j.crossed_order, j.end_order))?;
    let bad = galois_certificate(&fixtures::non_galois(), None).unwrap();
    ensure(!bad.galois, "the trivial action was certified")?;
    let w = bad.witness.unwrap_or_default();
    ensure(w.contains("|R*G| = 9") && w.contains("|End| = 3"), format!("witness: {w}"))?;
    Ok(format!("|R*G| = |End| = 3^9 on fix B; non-Galois witness \"{w}\""))
}

fn crossed_products() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tested = 0;
    for (name, a, o) in both() {
        let n = a.group().order();
        let (engine, exhaustive) = normalized_cocycles(&a, &mut rng, 0).unwrap();
        ensure(exhaustive, format!("{name}: Z^2 not enumerated"))?;
        let normalized: HashSet<Vec<Vec<u64>>> = o
            .cocycles(2)
            .into_iter()
            .filter(|w| (0..n).all(|g| w[o.index(&[0, g])] == o.identity(2)[g] && w[o.index(&[g, 0])] == o.identity(2)[g * n]))
            .collect();
        let listed: HashSet<Vec<Vec<u64>>> = engine.iter().map(from_cochain).collect();
        ensure(listed == normalized, format!("{name}: {} normalized cocycles listed, enumeration finds {}", listed.len(), normalized.len()))?;
        let b2 = o.coboundaries(2);
        for w in &engine {
            let c = crossed_product_check(&a, w).unwrap();
            ensure(c.associative && c.center_is_invariants && c.centralizer_is_r, format!("{name}: {c:?}"))?;
            if b2.contains(&from_cochain(w)) {
                ensure(c.split == Some(true), format!("{name}: no verified splitting for {:?}", c.twist))?;
            }
            tested += 1;
        }
    }
    let cp = CrossedRing::new(fixtures::fix_a(), fixtures::fix_a_twist([1, 2])).unwrap();
    let w = cp.associativity_check().witness.ok_or("planted non-cocycle is associative")?.to_string();
    ensure(w == "(g1,g1,g1): left (1,2)δ_g1 != right (2,1)δ_g1", format!("witness {w}"))?;
    Ok(format!("{tested} normalized cocycles; planted twist fails at {w}"))
}

fn phi1() -> Check {
    let mut count = 0;
    for (name, a, o) in both() {
        let inv = a.invariant_subring();
        ensure(RfModule::regular(a.clone()).mu_check(&inv).is_iso(), format!("{name}: mu for R"))?;
        let b1 = o.coboundaries(1);
        for f in o.cocycles(1) {
            let v = phi1_exactness(&a, &to_cochain(1, &f)).unwrap();
            ensure(v.coboundary == b1.contains(&f), format!("{name}: solver disagrees with enumeration at {f:?}"))?;
            ensure(v.passed && v.mu_iso, format!("{name}: {v:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cocycles, f in B^1 <=> R_f^G free cyclic, mu bijective"))
}

fn phi5_phi6() -> Check {
    let a = fixtures::fix_b();
    let grp = a.group();
    let cp = CrossedRing::untwisted(a.clone());
    for g in 1..grp.order() {
        let c = c_g_module(&cp, g).unwrap();
        let gi = grp.inv(g);
        ensure(c.order() == BigInt::from(9), format!("|C_g{g}| = {}", c.order()))?;
        ensure(c.same_as(&cp.homogeneous(gi, a.one(gi))), format!("C_g{g} != D_g{gi} d_g{gi}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sizes = Vec::new();
    for (name, a, o) in both() {
        let (good, bad) = gencross::factor_set_panel(&a, 10, 10, &mut rng).unwrap();
        ensure(good.len() >= 10 && bad.len() >= 10, format!("{name}: panel {} + {}", good.len(), bad.len()))?;
        let r = gencross::panel_report(&good, &bad).unwrap();
        ensure(r.agree, format!("{name}: omega_f, associativity and delta^2 disagree"))?;
        ensure(r.omega_f_always_cocycle, format!("{name}: omega_f outside Z^3"))?;
        for (fs, e) in good.iter().chain(&bad).zip(&r.entries) {
            let oracle = o.delta(2, &from_cochain(fs.cochain())) == o.identity(3);
            ensure(oracle == e.cocycle, format!("{name}: cocycle flag disagrees with the oracle"))?;
        }
        sizes.push(format!("{name} {}+{}", good.len(), bad.len()));
    }
    Ok(format!("|C_g| = 9 on fix B; panels {}", sizes.join(", ")))
}

fn pics_model() -> Check {
    let cases = [
        ("fix A", fixtures::fix_a(), Some(Oracle::fix_a())),
        ("fix B", fixtures::fix_b(), Some(Oracle::fix_b())),
        ("non-Galois", fixtures::non_galois(), Some(Oracle::restricted(&[3], cyclic_table(2), &[vec![0], vec![0]], &[true]))),
        ("trivial group", fixtures::trivial_group_on(&[4, 3, 5]), None),
    ];
    for (name, a, o) in cases {
        let r = pics::pics_report(&a);
        ensure(r.fixed_equals_invariant_idempotents, format!("{name}: fixed classes {:?}", r.fixed))?;
        ensure(r.axioms.passed(), format!("{name}: alpha* axioms fail"))?;
        if let Some(o) = o {
            let engine: HashSet<Vec<bool>> = pics::fixed_classes(&a).into_iter().map(|e| e.0).collect();
            ensure(engine == invariant_idempotents(&o).into_iter().collect(), format!("{name}: oracle disagrees"))?;
        }
    }
    Ok("fixed classes = idempotents of R^alpha; alpha* axioms hold".into())
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().unwrap();
    for fixture in ["fixA.toml", "fixB.toml"] {
        let mut docs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{fixture}.{run}.json"));
            let status = Command::new(env!("CARGO_BIN_EXE_pgal"))
                .args(["--seed", "7", "--json"])
                .arg(&out)
                .arg("sequence-check")
                .arg(fixtures_dir().join(fixture))
                .output()
                .unwrap();
            ensure(status.status.code() == Some(0), format!("{fixture}: exit {:?}", status.status.code()))?;
            docs.push(std::fs::read(&out).unwrap());
        }
        ensure(docs[0] == docs[1], format!("{fixture}: JSON differs between runs"))?;
    }
    Ok("sequence-check --seed 7 JSON byte-identical across runs on fix A and fix B".into())
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Check); 9] = [
        ("delta-chain", Some(30), delta_chain),
        ("dual-oracle cohomology", Some(60), dual_oracle),
        ("Hilbert 90", Some(120), hilbert90),
        ("Galois certification", Some(10), galois_certification),
        ("crossed-product theorem", Some(30), crossed_products),
        ("phi1 exactness", Some(30), phi1),
        ("phi5/phi6 degenerate checks", Some(30), phi5_phi6),
        ("PicS model", Some(5), pics_model),
        ("determinism", None, determinism),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took < Duration::from_secs(l));
        let limit_text = limit.map_or("no limit".to_string(), |l| format!("limit {l} s"));
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} {name}: {status} ({:.2} s, {limit_text}) {detail}", k + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria pass");
}
