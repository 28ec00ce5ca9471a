//! Acceptance criteria 1-10. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line; exits nonzero if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use fusioncheck::classify::{
    abelian_maximal_subgroups, exponent, is_elementary_abelian_subgroup, is_p_supersolvable,
    is_pronormal, is_weakly_pronormal,
};
use fusioncheck::construct::{
    affine_model, cyclic, dihedral, extraspecial_p3_exponent_p, gl, symmetric, unitriangular3,
    unitriangular3_element, HSpec,
};
use fusioncheck::fusion::{fusion_system, ClosureSystem, FusionSystem};
use fusioncheck::lattice::{maximal_subgroups, p_part, subgroups_of_order, sylow_subgroup};
use fusioncheck::verify::{
    check, check_theorem_a, load_source, run_suites, Consistency, Manifest, Suite, TheoremId,
    Verdict,
};
use fusioncheck::{FiniteGroup, Result};

struct Outcome {
    pass: bool,
    detail: String,
    report: Value,
}

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<Outcome>,
}

fn outcome(failures: Vec<String>, ok_detail: String, report: Value) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass { ok_detail } else { failures.join("; ") };
    Outcome {
        pass,
        detail,
        report,
    }
}

macro_rules! expect {
    ($fails:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $fails.push(format!($($msg)+));
        }
    };
}

fn certificate_ok(f: &FusionSystem) -> Result<bool> {
    Ok(f.is_supersolvable()?
        .is_some_and(|c| f.validate_certificate(&c)))
}

fn affine_model_reproduction() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut rows = Vec::new();
    for p in [3u32, 5] {
        let start = Instant::now();
        let m = affine_model(p, HSpec::SL2)?;
        let g = &m.group;
        let p3 = (p * p * p) as usize;
        let s_order = m.sylow.order();
        let sylow = s_order == p3 && p_part(g.order(), p as u64) == p3;
        // a = (1, 0), b = (0, 1)
        let r_conj = Some(g.conj(m.r, m.g)) == m.pair(&[[1, 1], [0, 1]], [-1, 1]);
        let s_conj = Some(g.conj(m.s, m.g)) == m.pair(&[[1, 0], [0, 1]], [0, -1]);
        let s1 = g.closure(&[m.r, m.s]);
        let maximal = s1.is_proper_subgroup_of(&m.sylow) && s1.order() * p as usize == s_order;
        let f = FusionSystem::with_sylow(g, p as u64, m.sylow.clone())?;
        let weakly_closed = f.is_weakly_closed(&s1);
        let secs = start.elapsed();
        expect!(
            fails,
            sylow,
            "p={p}: |S| = {s_order}, not a Sylow subgroup of order p^3"
        );
        expect!(fails, r_conj, "p={p}: g^-1 r g is not (A, b - a)");
        expect!(fails, s_conj, "p={p}: g^-1 s g is not (B, -b)");
        expect!(
            fails,
            s1 == m.s1,
            "p={p}: <r, s> differs from the model's S1"
        );
        expect!(fails, maximal, "p={p}: <r, s> is not maximal in S");
        expect!(fails, !weakly_closed, "p={p}: <r, s> is weakly closed");
        expect!(
            fails,
            secs < Duration::from_secs(10),
            "p={p}: took {secs:?}"
        );
        rows.push(json!({
            "p": p, "group_order": g.order(), "sylow_order": s_order,
            "r_conjugate_matches": r_conj, "s_conjugate_matches": s_conj,
            "s1_order": s1.order(), "s1_maximal": maximal, "s1_weakly_closed": weakly_closed,
        }));
    }
    Ok(outcome(fails, "p = 3, 5 reproduce".into(), json!(rows)))
}

fn matrix_group_facts() -> Result<Outcome> {
    let mut fails = Vec::new();
    let g = gl(2, 3)?;
    let p = 3usize;
    expect!(
        fails,
        g.order() == 48 && g.order() == (p * p - 1) * (p * p - p),
        "|GL_2(3)| = {}",
        g.order()
    );
    let syl = sylow_subgroup(&g, 3)?.order();
    expect!(fails, syl == 3, "Sylow 3 of GL_2(3) has order {syl}");
    let mut orders = Vec::new();
    for p in [3u32, 5, 7] {
        let u = unitriangular3(p)?;
        let e = exponent(&u);
        expect!(
            fails,
            u.order() == (p * p * p) as usize && e == p as u64,
            "UT3({p}): order {} exponent {e}",
            u.order()
        );
        orders.push(json!({"p": p, "order": u.order(), "exponent": e}));
    }
    let groups: Vec<(u32, FiniteGroup)> = [3u32, 5, 7]
        .iter()
        .map(|&p| Ok((p, unitriangular3(p)?)))
        .collect::<Result<_>>()?;
    let mut rng = StdRng::seed_from_u64(2);
    let mut mismatches = 0;
    for _ in 0..100 {
        let (p, u) = &groups[rng.gen_range(0..groups.len())];
        let p = *p as i64;
        let (a, b, c) = (
            rng.gen_range(0..p),
            rng.gen_range(0..p),
            rng.gen_range(0..p),
        );
        let k: i64 = rng.gen_range(0..3 * p);
        let x = u
            .id_of(&unitriangular3_element(p as u32, a, b, c))
            .expect("element");
        let formula =
            unitriangular3_element(p as u32, k * a, k * b + k * (k - 1) / 2 * a * c, k * c);
        let mut power = u.whole().elements().next().expect("identity");
        for _ in 0..k {
            power = u.mul(power, x);
        }
        if u.element(power) != &formula {
            mismatches += 1;
        }
    }
    expect!(
        fails,
        mismatches == 0,
        "{mismatches} power-formula mismatches"
    );
    Ok(outcome(
        fails,
        "GL_2(3), UT3(3|5|7) and 100 power samples agree".into(),
        json!({"gl2_3_order": g.order(), "gl2_3_sylow3_order": syl, "unitriangular": orders, "power_mismatches": mismatches}),
    ))
}

fn a5_squared_example() -> Result<Outcome> {
    let mut fails = Vec::new();
    let m = Manifest::default_corpus();
    let entry = m
        .entries
        .iter()
        .find(|e| e.source == "builder:direct_product(alternating(5), alternating(5))")
        .expect("A5 x A5 in the bundled corpus");
    let g = load_source(&entry.source, None)?;
    let supplements = entry.witnesses(&g)?;
    let f = fusion_system(&g, 5)?;
    let s = f.sylow().clone();
    let order5 = subgroups_of_order(&g, &s, 5)?;
    let all_abelian = order5.iter().all(|h| g.is_abelian_subgroup(h));
    expect!(fails, all_abelian, "a subgroup of order 5 is nonabelian");
    let mut unverified = 0;
    for h in order5.iter().chain(std::iter::once(&s)) {
        let ok = supplements
            .iter()
            .any(|k| matches!(is_weakly_pronormal(&g, h, Some(k)), Ok(Some(_))));
        if !ok {
            unverified += 1;
        }
    }
    expect!(
        fails,
        unverified == 0,
        "{unverified} subgroups lack a valid supplement witness"
    );
    let cert = certificate_ok(&f)?;
    expect!(
        fails,
        cert,
        "F is not supersolvable with a valid certificate"
    );
    let pss = is_p_supersolvable(&g, 5)?;
    expect!(fails, !pss, "G is 5-supersolvable");
    let r = check_theorem_a(&g, 5, &supplements)?;
    expect!(
        fails,
        r.hypothesis == Verdict::Pass && r.passing_order() == Some(5),
        "the criterion's hypothesis does not pass at |D| = 5"
    );
    expect!(
        fails,
        r.consistency == Consistency::Ok,
        "consistency {:?}",
        r.consistency
    );
    Ok(outcome(
        fails,
        "6 subgroups of order 5 and S have witnesses, F supersolvable, G not 5-supersolvable"
            .into(),
        json!({
            "order5_subgroups": order5.len(), "all_abelian": all_abelian,
            "witnessed": order5.len() + 1 - unverified, "certificate_valid": cert,
            "p_supersolvable": pss, "report": r,
        }),
    ))
}

fn order_324_example() -> Result<Outcome> {
    let mut fails = Vec::new();
    let g = load_source("fixture:smallgroup_324_160", None)?;
    let f = fusion_system(&g, 3)?;
    let s = f.sylow().clone();
    let maxes = maximal_subgroups(&g, &s)?;
    let abelian = abelian_maximal_subgroups(&g, &s)?.len();
    let weakly_closed = maxes.iter().filter(|m| f.is_weakly_closed(m)).count();
    let ss = f.is_supersolvable()?.is_some();
    let pss = is_p_supersolvable(&g, 3)?;
    expect!(fails, maxes.len() == 4, "{} maximal subgroups", maxes.len());
    expect!(fails, abelian == 1, "{abelian} abelian maximal subgroups");
    expect!(
        fails,
        weakly_closed == 4,
        "{weakly_closed} maximal subgroups weakly closed"
    );
    expect!(fails, !ss, "F is supersolvable");
    expect!(fails, !pss, "G is 3-supersolvable");
    Ok(outcome(
        fails,
        "4 maximal, 1 abelian, all weakly closed, F not supersolvable".into(),
        json!({
            "sylow_order": s.order(), "maximal_subgroups": maxes.len(), "abelian_maximal": abelian,
            "weakly_closed_maximal": weakly_closed, "supersolvable": ss, "p_supersolvable": pss,
        }),
    ))
}

fn pronormal_iff_weakly_closed() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut rows = Vec::new();
    let mut pairs = 0;
    let mut mismatches = 0;
    for e in Manifest::default_corpus().entries {
        let g = load_source(&e.source, None)?;
        if g.order() > 1000 {
            continue;
        }
        for &p in &e.primes {
            let f = fusion_system(&g, p)?;
            let subs = f.subgroups_of_s()?;
            let mut bad = 0;
            for q in subs.iter() {
                if is_pronormal(&g, q).is_pronormal() != f.is_weakly_closed(q) {
                    bad += 1;
                }
            }
            pairs += 1;
            mismatches += bad;
            rows.push(
                json!({"group": g.label(), "p": p, "subgroups": subs.len(), "mismatches": bad}),
            );
        }
    }
    expect!(fails, pairs >= 15, "only {pairs} (G, p) pairs");
    expect!(fails, mismatches == 0, "{mismatches} mismatches");
    Ok(outcome(
        fails,
        format!("{pairs} pairs, 0 mismatches"),
        json!(rows),
    ))
}

fn equivalence_direction() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut rows = Vec::new();
    let mut p_ss_members = 0;
    for e in Manifest::default_corpus().entries {
        let g = load_source(&e.source, None)?;
        for &p in &e.primes {
            let r = check(TheoremId::Equiv, &g, p, &[])?;
            let p_ss = r.hypotheses[0].verdict == Verdict::Pass;
            if p_ss {
                p_ss_members += 1;
                let cert = r.conclusion.holds && r.conclusion.certificate_valid == Some(true);
                expect!(
                    fails,
                    cert,
                    "{} p={p}: p-supersolvable without a certificate",
                    g.label()
                );
            }
            expect!(fails, !r.is_violation(), "{} p={p}: violation", g.label());
            rows.push(json!({"group": g.label(), "p": p, "consistency": r.consistency, "hypotheses": r.hypotheses}));
        }
    }
    Ok(outcome(
        fails,
        format!("{p_ss_members} p-supersolvable members certified, 0 violations"),
        json!(rows),
    ))
}

fn lemma_suites() -> Result<Outcome> {
    let mut fails = Vec::new();
    let reports = run_suites(&Suite::ALL, &Manifest::default_corpus(), None);
    for r in &reports {
        expect!(
            fails,
            r.passed,
            "{}: {} instances, {} counterexamples, errors {:?}",
            r.suite,
            r.instances,
            r.counterexamples(),
            r.errors
        );
    }
    let counts: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {}", r.suite, r.instances))
        .collect();
    Ok(outcome(fails, counts.join(", "), json!(reports)))
}

fn soundness_gate() -> Result<Outcome> {
    let mut fails = Vec::new();
    let out = Command::new(env!("CARGO_BIN_EXE_fusioncheck"))
        .args([
            "verify",
            "--theorem",
            "A",
            "--theorem",
            "B",
            "--theorem",
            "C",
            "--theorem",
            "D",
        ])
        .output()
        .expect("run the CLI");
    expect!(
        fails,
        out.status.code() == Some(0),
        "exit status {:?}",
        out.status.code()
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let count = |k: &str| report[k].as_u64().unwrap_or(u64::MAX);
    expect!(
        fails,
        count("violations") == 0,
        "{} violations",
        count("violations")
    );
    expect!(
        fails,
        count("errors") == 0,
        "{} item errors",
        count("errors")
    );
    let detail = format!("{} reports, 0 violations", count("reports"));
    Ok(outcome(fails, detail, report))
}

fn known_fusion_values() -> Result<Outcome> {
    let mut fails = Vec::new();
    let s4 = symmetric(4)?;
    let f = fusion_system(&s4, 2)?;
    let ess: Vec<_> = f
        .essential_subgroups()?
        .into_iter()
        .map(|r| r.subgroup)
        .collect();
    let klein = ess
        .iter()
        .filter(|q| q.order() == 4 && is_elementary_abelian_subgroup(&s4, q, 2))
        .count();
    expect!(
        fails,
        ess.len() == 2 && klein == 2,
        "F_D8(S4) has {} essential subgroup(s), {klein} of them Klein four; expected exactly the two Klein four subgroups",
        ess.len()
    );
    let op = f.o_p_fusion()?;
    let v = s4.subgroup_from_generators(&[
        fusioncheck::Permutation::parse_cycles(4, "(1 2)(3 4)")?,
        fusioncheck::Permutation::parse_cycles(4, "(1 3)(2 4)")?,
    ])?;
    expect!(fails, op == v, "O_2(F) has order {}, not V", op.order());
    let ss = f.is_supersolvable()?.is_some();
    expect!(fails, !ss, "F_D8(S4) is supersolvable");
    let mut own = Vec::new();
    for s in [dihedral(8)?, cyclic(9)?, extraspecial_p3_exponent_p(3)?] {
        let p = if s.order() == 8 { 2 } else { 3 };
        let fs = fusion_system(&s, p)?;
        let (nil, cert) = (fs.is_nilpotent()?, certificate_ok(&fs)?);
        expect!(
            fails,
            nil && cert,
            "F_S(S) for {}: nilpotent {nil}, certificate {cert}",
            s.label()
        );
        own.push(json!({"group": s.label(), "nilpotent": nil, "certificate_valid": cert}));
    }
    let essentials: Vec<Value> = ess
        .iter()
        .map(|q| {
            json!(s4
                .generator_permutations(q)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>())
        })
        .collect();
    Ok(outcome(
        fails,
        "S4 essentials, O_2 and F_S(S) checks hold".into(),
        json!({"s4_essentials": essentials, "s4_o2_order": op.order(), "s4_supersolvable": ss, "own_fusion": own}),
    ))
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        number: 1,
        title: "affine model reproduction",
        limit: Duration::from_secs(20),
        run: affine_model_reproduction,
    },
    Criterion {
        number: 2,
        title: "GL_2(3) and unitriangular facts",
        limit: Duration::from_secs(5),
        run: matrix_group_facts,
    },
    Criterion {
        number: 3,
        title: "A5 x A5 at p = 5",
        limit: Duration::from_secs(60),
        run: a5_squared_example,
    },
    Criterion {
        number: 4,
        title: "order 324 fixture at p = 3",
        limit: Duration::from_secs(30),
        run: order_324_example,
    },
    Criterion {
        number: 5,
        title: "pronormal iff weakly closed",
        limit: Duration::from_secs(300),
        run: pronormal_iff_weakly_closed,
    },
    Criterion {
        number: 6,
        title: "p-supersolvable implies F supersolvable",
        limit: Duration::MAX,
        run: equivalence_direction,
    },
    Criterion {
        number: 7,
        title: "lemma property suites",
        limit: Duration::MAX,
        run: lemma_suites,
    },
    Criterion {
        number: 8,
        title: "soundness gate over the default corpus",
        limit: Duration::from_secs(900),
        run: soundness_gate,
    },
    Criterion {
        number: 9,
        title: "known fusion values",
        limit: Duration::MAX,
        run: known_fusion_values,
    },
];

fn run_all(print: bool) -> (bool, Vec<Value>) {
    let mut all = true;
    let mut reports = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let secs = start.elapsed();
        let (pass, detail, report) = match result {
            Ok(o) if secs > c.limit => (
                false,
                format!("{} (over the {:?} limit)", o.detail, c.limit),
                o.report,
            ),
            Ok(o) => (o.pass, o.detail, o.report),
            Err(e) => (
                false,
                format!("error: {e}"),
                json!({"error": e.to_string()}),
            ),
        };
        all &= pass;
        if print {
            let verdict = if pass { "PASS" } else { "FAIL" };
            println!(
                "criterion {:>2} {verdict} {} [{:.1}s]: {detail}",
                c.number,
                c.title,
                secs.as_secs_f64()
            );
        }
        reports.push(json!({"criterion": c.number, "pass": pass, "report": report}));
    }
    (all, reports)
}

fn main() -> ExitCode {
    let (first_ok, first) = run_all(true);
    let start = Instant::now();
    let (_, second) = run_all(false);
    let (a, b) = (
        serde_json::to_string_pretty(&first).unwrap(),
        serde_json::to_string_pretty(&second).unwrap(),
    );
    let same = a == b;
    println!(
        "criterion 10 {} determinism [{:.1}s]: {}",
        if same { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        if same {
            format!("two runs of 1-9 give identical JSON ({} bytes)", a.len())
        } else {
            "reports differ between runs".into()
        }
    );
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance.json");
    if std::fs::write(&path, &a).is_ok() {
        println!("reports written to {}", path.display());
    }
    if first_ok && same {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
