//! One pass/fail line per acceptance criterion.

mod common;

use std::time::{Duration, Instant};

use biquad::calculus::{build_automorphisms, verify_calculus};
use biquad::ncpoly::{growth_profile, pbw_count};
use biquad::pbw::{is_pbw, overlap_defect};
use biquad::presentation::{catalog, find_entry, ClaimedVerdict, Presentation};
use biquad::sample;
use biquad::scalars::{ParamSymbol, Rational};
use biquad::smooth::{
    catalog_report, classify, conditions, reparametrize, Mode, TwoGenCase, TwoGenVerdict, Verdict,
};
use common::substitution_residuals;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{} took {:.2?}, limit {:?}", what, t, limit))
}

fn sorted(mut v: Vec<&'static str>) -> Vec<&'static str> {
    v.sort_unstable();
    v
}

fn catalog_reproduction() -> Outcome {
    let start = Instant::now();
    let report = catalog_report(0);
    ensure(report.rows.len() == 44, || format!("{} entries", report.rows.len()))?;
    let s = report.summary();
    ensure((s.smooth, s.not_smooth, s.undecided, s.divergences) == (15, 21, 8, 7), || format!("summary {}", s))?;
    let starred: Vec<_> = report.rows.iter().filter(|r| r.entry.claimed == ClaimedVerdict::NotSmooth).collect();
    ensure(starred.len() == 21, || format!("{} starred rows", starred.len()))?;
    for r in &starred {
        ensure(matches!(r.shift, Verdict::NotSmooth { .. }), || format!("{} is {}", r.entry.name, r.shift))?;
    }
    let undecided = sorted(report.rows.iter().filter(|r| matches!(r.shift, Verdict::Undecided { .. })).map(|r| r.entry.name).collect());
    let expected = sorted(vec!["b2", "f8", "f9", "f10", "g2", "h2", "i2", "d1"]);
    ensure(undecided == expected, || format!("undecided {:?}", undecided))?;
    let d1 = report.rows.iter().find(|r| r.entry.name == "d1").unwrap();
    ensure(d1.entry.claimed == ClaimedVerdict::Unknown && d1.agree(), || "d1 disagrees".into())?;
    let diverging = sorted(report.rows.iter().filter(|r| !r.agree()).map(|r| r.entry.name).collect());
    let expected_div: Vec<_> = expected.iter().copied().filter(|n| *n != "d1").collect();
    ensure(diverging == expected_div, || format!("divergences {:?}", diverging))?;
    for r in report.rows.iter().filter(|r| !r.agree()) {
        ensure(r.entry.claimed == ClaimedVerdict::Smooth, || format!("{} diverges from {}", r.entry.name, r.entry.claimed))?;
    }
    within(start, Duration::from_secs(10), "catalog")?;
    Ok(format!("{} in {:.2?}", s, start.elapsed()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = sample::rng(2);
    let mut samples: Vec<Presentation> = Vec::new();
    for _ in 0..100 {
        samples.push(sample::uniform_presentation(&mut rng));
        samples.push(sample::sparse_presentation(&mut rng));
        samples.push(sample::pbw_presentation(&mut rng));
    }
    let mut pbw = 0;
    for p in &samples {
        let (a, b) = (is_pbw(p), overlap_defect(p).is_zero());
        ensure(a == b, || format!("is_pbw={} defect_zero={} on {:?}", a, b, p))?;
        pbw += a as usize;
    }
    within(start, Duration::from_secs(30), "oracle sweep")?;
    Ok(format!("{} presentations ({} PBW), 0 exceptions in {:.2?}", samples.len(), pbw, start.elapsed()))
}

fn growth_consistency() -> Outcome {
    let start = Instant::now();
    for e in catalog() {
        let p = e.instantiate_default();
        for row in growth_profile(&p, 10) {
            ensure(row.count == pbw_count(row.degree) && row.reference == pbw_count(row.degree), || {
                format!("{} at n={}: {} vs {}", e.name, row.degree, row.count, row.reference)
            })?;
        }
    }
    Ok(format!("44 entries, n = 0..10, in {:.2?}", start.elapsed()))
}

fn calculus_verification() -> Outcome {
    let start = Instant::now();
    let limit = Duration::from_secs(60);
    let mut targets: Vec<(String, Presentation)> = Vec::new();
    for e in catalog() {
        let p = e.instantiate_default();
        if classify(&p, Mode::Literal).map_err(|e| e.to_string())?.is_smooth() {
            targets.push((e.name.to_string(), p));
        }
    }
    ensure(targets.len() == 15, || format!("{} literal-smooth entries", targets.len()))?;
    let mut rng = sample::rng(4);
    for i in 0..10 {
        targets.push((format!("random{}", i), sample::smooth_presentation(&mut rng)));
    }
    let mut slowest = Duration::ZERO;
    for (name, p) in &targets {
        let t = Instant::now();
        let report = verify_calculus(p, 4, 50, 0).map_err(|e| format!("{}: {}", name, e))?;
        ensure(report.checks.len() == 7 && report.all_passed(), || format!("{}:\n{}", name, report))?;
        within(t, limit, name)?;
        slowest = slowest.max(t.elapsed());
    }
    Ok(format!("{} presentations x 7 checks, slowest {:.2?}, total {:.2?}", targets.len(), slowest, start.elapsed()))
}

fn negative_controls() -> Outcome {
    let obstructions = [ParamSymbol::C, ParamSymbol::Beta, ParamSymbol::Lambda];
    let mut count = 0;
    for e in catalog().iter().filter(|e| e.claimed == ClaimedVerdict::NotSmooth) {
        let p = e.instantiate_default();
        for mode in [Mode::Literal, Mode::Shift] {
            match classify(&p, mode).map_err(|err| format!("{}: {}", e.name, err))? {
                Verdict::NotSmooth { witness, value } => {
                    ensure(obstructions.contains(&witness) && !value.is_zero(), || format!("{} witness {:?}", e.name, witness))?
                }
                v => return Err(format!("{} classified {}", e.name, v)),
            }
        }
        count += 1;
    }
    let b2 = find_entry("b2")
        .unwrap()
        .instantiate_with(&[(ParamSymbol::Q1, Rational::from(2))])
        .map_err(|e| e.to_string())?;
    let failure = match build_automorphisms(&b2) {
        Ok(_) => return Err("automorphisms extend on b2".into()),
        Err(f) => f,
    };
    let hit = failure.residuals.iter().find(|r| r.relation == "x2x1" && !r.residual.is_zero());
    let hit = hit.ok_or_else(|| format!("no x2x1 residual: {}", failure))?;
    Ok(format!("{} starred rows not smooth; b2 nu{} leaves {} on x2x1", count, hit.automorphism, hit.residual))
}

fn two_generator_classification() -> Outcome {
    let expected = [
        ("poly2", TwoGenVerdict::Smooth(TwoGenCase::A)),
        ("weyl", TwoGenVerdict::Smooth(TwoGenCase::A)),
        ("u_n2", TwoGenVerdict::Smooth(TwoGenCase::A)),
        ("quantum_plane", TwoGenVerdict::Smooth(TwoGenCase::C)),
        ("quantum_weyl", TwoGenVerdict::Unknown),
    ];
    let report = catalog_report(0);
    ensure(report.two_gen.len() == 5, || format!("{} two-generator rows", report.two_gen.len()))?;
    for (name, verdict) in expected {
        let row = report.two_gen.iter().find(|r| r.entry.name == name).ok_or_else(|| format!("{} missing", name))?;
        ensure(row.verdict == verdict, || format!("{} is {}", name, row.verdict.witness()))?;
        ensure(row.verdict.agrees_with(row.entry.claimed), || format!("{} disagrees with its claim", name))?;
    }
    Ok("5/5".into())
}

fn reparametrization_soundness() -> Outcome {
    let mut rng = sample::rng(7);
    let ones = [Rational::one(), Rational::one(), Rational::one()];
    let obstructions = [ParamSymbol::C, ParamSymbol::Beta, ParamSymbol::Lambda];
    let obs = |p: &Presentation| obstructions.map(|s| p.param(s).clone());
    let vanishing = |p: &Presentation| {
        let c = conditions(p);
        [c[0].value.is_zero(), c[1].value.is_zero(), c[2].value.is_zero()]
    };
    for i in 0..100 {
        let p = sample::pbw_presentation(&mut rng);
        let (s, t) = (sample::shift(&mut rng), sample::scaling(&mut rng));
        let new = reparametrize(&p, &s, &t).map_err(|e| e.to_string())?;
        for (r, res) in substitution_residuals(&p, &new, &s, &t).iter().enumerate() {
            ensure(res.is_zero(), || format!("case {}: relation {} leaves {}", i, r, res))?;
        }
        ensure(is_pbw(&new), || format!("case {}: PBW lost", i))?;
        let other = sample::sparse_presentation(&mut rng);
        ensure(is_pbw(&reparametrize(&other, &s, &t).unwrap()) == is_pbw(&other), || format!("case {}: PBW changed", i))?;
        // translations fix c, beta, lambda; scalings multiply them by
        // t3/(t1 t2), t2/(t1 t3), t1/(t2 t3)
        let shifted = reparametrize(&p, &s, &ones).unwrap();
        ensure(obs(&shifted) == obs(&p), || format!("case {}: translation moved c, beta, lambda", i))?;
        let [c, be, la] = obs(&p);
        let [t1, t2, t3] = &t;
        let law = [c * t3 / &(t1 * t2), be * t2 / &(t1 * t3), la * t1 / &(t2 * t3)];
        ensure(obs(&new) == law, || format!("case {}: scaling law broken", i))?;
        let bare = obstructions.iter().fold(p.clone(), |q, &sym| q.with(sym, Rational::zero()).unwrap());
        ensure(vanishing(&reparametrize(&bare, &s, &t).unwrap()) == vanishing(&bare), || {
            format!("case {}: invariant vanishing changed", i)
        })?;
    }
    Ok("100 cases; c, beta, lambda fixed by translations and scaled exactly by t".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("catalog reproduction", catalog_reproduction),
        ("oracle equivalence", oracle_equivalence),
        ("growth consistency", growth_consistency),
        ("calculus verification", calculus_verification),
        ("negative controls", negative_controls),
        ("two-generator classification", two_generator_classification),
        ("reparametrization soundness", reparametrization_soundness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {} ... PASS ({})", i + 1, name, detail),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {} ... FAIL ({})", i + 1, name, detail);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
