//! Property suites for the auxiliary facts behind the criteria. Each check counts
//! the instances whose hypotheses actually held; a suite with fewer than
//! [`MIN_INSTANCES`] such instances fails as vacuous.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{
    abelian_maximal_subgroups, is_a2_group, is_cyclic_subgroup, is_metacyclic,
    is_minimal_nonnilpotent, o_p, oliver_decomposition, supersolvable_hypercentre,
};
use crate::error::{Error, Result};
use crate::fusion::{fusion_system, ClosureSystem, FusionSystem};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{
    all_subgroups, chief_series_through, enumeration_bound, frattini_p_group, is_p_power, is_prime,
    normal_subgroups, p_part, prime_divisors, subgroups_of_order, sylow_subgroup,
};

use super::admissible_d_orders;
use super::source::{Manifest, Source};

pub const MIN_INSTANCES: usize = 3;

/// Groups up to this order also get the local quotient criterion checked,
/// which needs every subgroup.
const SUBGROUP_SWEEP_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Weak and strong closure under quotients, certificate chains.
    Closure,
    /// Supersolvable normalizers of `E*` force supersolvability.
    EStar,
    /// Normal p-subgroups inside the supersolvable hypercentre.
    Zu,
    /// `F/N` agrees with `F_{S/N}(G/N)`.
    Quotient,
    /// Sylow structure of minimal nonnilpotent groups.
    MinNil,
    /// `A = C_A(H) x [H, A]` for abelian normal p-subgroups.
    Oliver,
    /// A2-group structure.
    A2,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Closure,
        Suite::EStar,
        Suite::Zu,
        Suite::Quotient,
        Suite::MinNil,
        Suite::Oliver,
        Suite::A2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Closure => "closure",
            Suite::EStar => "estar",
            Suite::Zu => "zu",
            Suite::Quotient => "quotient",
            Suite::MinNil => "minnil",
            Suite::Oliver => "oliver",
            Suite::A2 => "a2",
        }
    }

    /// `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(|x| x.trim().parse()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSource(format!("suite {s}")))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckCount {
    pub instances: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub checks: BTreeMap<String, CheckCount>,
    pub errors: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn counterexamples(&self) -> usize {
        self.checks.values().map(|c| c.counterexamples.len()).sum()
    }
}

#[derive(Default)]
struct Tally {
    checks: BTreeMap<String, CheckCount>,
    errors: Vec<String>,
}

impl Tally {
    /// Records one instance whose hypotheses held.
    fn record(&mut self, check: &str, ok: bool, describe: impl FnOnce() -> String) {
        let c = self.checks.entry(check.to_string()).or_default();
        c.instances += 1;
        if !ok {
            c.counterexamples.push(describe());
        }
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        let instances = self.checks.values().map(|c| c.instances).sum();
        let clean = self.checks.values().all(|c| c.counterexamples.is_empty());
        SuiteReport {
            suite: suite.name().to_string(),
            instances,
            passed: clean && self.errors.is_empty() && instances >= MIN_INSTANCES,
            checks: self.checks,
            errors: self.errors,
        }
    }
}

struct Instance {
    source: String,
    group: FiniteGroup,
    primes: Vec<u64>,
}

fn tag(f: &FusionSystem) -> String {
    format!("{} p={}", f.group().label(), f.prime())
}

fn normal_p_subgroups(g: &FiniteGroup, p: u64) -> Result<Vec<Subgroup>> {
    Ok(normal_subgroups(g)?
        .iter()
        .filter(|n| !n.is_trivial() && is_p_power(n.order(), p))
        .cloned()
        .collect())
}

fn closure_suite(f: &FusionSystem, t: &mut Tally) -> Result<()> {
    let g = f.group();
    let s = f.sylow();
    if s.is_trivial() {
        return Ok(());
    }
    let subs = f.subgroups_of_s()?;
    for q in subs.iter() {
        let (sc, wc) = (f.is_strongly_closed(q), f.is_weakly_closed(q));
        if sc || wc {
            t.record(
                "closure hierarchy",
                (!sc || wc) && g.is_normal_in(q, s),
                || format!("{} |Q|={}", tag(f), q.order()),
            );
        }
    }
    let cert = f.is_supersolvable()?;
    if cert.is_some() {
        for q in subs.iter().filter(|q| f.is_weakly_closed(q)) {
            t.record(
                "weakly closed is strongly closed when F is supersolvable",
                f.is_strongly_closed(q),
                || format!("{} |Q|={}", tag(f), q.order()),
            );
        }
    }
    for q in f.strongly_closed_subgroups()?.iter() {
        let fq = f.quotient_fusion_system(q)?;
        let normal = f.is_normal_in_f(q)?;
        for r in subs.iter().filter(|r| q.is_subgroup_of(r)) {
            let rb = fq.image(r);
            let desc = || format!("{} |Q|={} |R|={}", tag(f), q.order(), r.order());
            if f.is_weakly_closed(r) {
                t.record(
                    "weak closure passes to F/Q",
                    fq.f_conjugates(&rb) == vec![rb.clone()],
                    desc,
                );
            }
            if normal && fq.is_strongly_closed(&rb) {
                t.record(
                    "strong closure lifts from F/Q",
                    f.is_strongly_closed(r),
                    desc,
                );
            }
        }
        let quotient_cert = fq.supersolvability_certificate(None)?;
        let quotient_ok = quotient_cert
            .as_ref()
            .is_some_and(|c| fq.validate_certificate(c));
        let desc = || format!("{} |Q|={}", tag(f), q.order());
        if cert.is_some() {
            let forced = f.supersolvability_certificate(Some(q))?;
            let through = forced
                .as_ref()
                .is_some_and(|c| c.chain.members.contains(q) && f.validate_certificate(c));
            t.record("certificate chain through Q", through, desc);
            t.record("F/Q supersolvable", quotient_ok, desc);
        }
        if normal && quotient_ok && f.cyclic_chain_below(q)?.is_some() {
            t.record(
                "cyclic chain below Q and F/Q supersolvable",
                cert.is_some(),
                desc,
            );
        }
    }
    Ok(())
}

fn estar_suite(f: &FusionSystem, t: &mut Tally) -> Result<()> {
    if f.sylow().is_trivial() {
        return Ok(());
    }
    let mut all = true;
    for q in f.e_star()? {
        if f.normalizer_fusion_system(&q)?
            .system
            .is_supersolvable()?
            .is_none()
        {
            all = false;
            break;
        }
    }
    if all {
        t.record(
            "normalizers of E* supersolvable",
            f.is_supersolvable()?.is_some(),
            || tag(f),
        );
    }
    Ok(())
}

/// Every subgroup of `P` of order `|D|` normal in `G`, plus the cyclic
/// subgroups of order 4 when `P` is a nonabelian 2-group and `|D| = 2`.
fn normal_order_d(g: &FiniteGroup, pp: &Subgroup, p: u64) -> Result<Option<usize>> {
    for d in admissible_d_orders(pp.order(), p) {
        let mut ok = subgroups_of_order(g, pp, d)?.iter().all(|h| g.is_normal(h));
        if ok && p == 2 && d == 2 && !g.is_abelian_subgroup(pp) {
            ok = subgroups_of_order(g, pp, 4)?
                .iter()
                .filter(|h| is_cyclic_subgroup(g, h))
                .all(|h| g.is_normal(h));
        }
        if ok {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn zu_suite(g: &FiniteGroup, primes: &[u64], t: &mut Tally) -> Result<()> {
    let zu = supersolvable_hypercentre(g)?;
    let chain = chief_series_through(g, std::slice::from_ref(&zu))?;
    let below_cyclic = chain
        .members
        .iter()
        .position(|m| *m == zu)
        .is_some_and(|k| chain.factor_orders[..k].iter().all(|&f| is_prime(f as u64)));
    t.record(
        "Z_U normal with cyclic chief factors below",
        g.is_normal(&zu) && below_cyclic,
        || g.label().to_string(),
    );
    for &p in primes {
        for pp in normal_p_subgroups(g, p)? {
            if let Some(d) = normal_order_d(g, &pp, p)? {
                t.record("P inside Z_U(G)", pp.is_subgroup_of(&zu), || {
                    format!("{} p={p} |P|={} |D|={d}", g.label(), pp.order())
                });
            }
        }
    }
    Ok(())
}

fn quotient_suite(f: &FusionSystem, t: &mut Tally) -> Result<()> {
    let g = f.group();
    let p = f.prime();
    for n in normal_p_subgroups(g, p)? {
        let fq = f.quotient_fusion_system(&n)?;
        t.record(
            "F/N realized by G/N",
            fq.agrees_with_group_quotient()?,
            || format!("{} |N|={}", tag(f), n.order()),
        );
    }
    if g.order() > SUBGROUP_SWEEP_LIMIT || f.sylow().is_trivial() {
        return Ok(());
    }
    let op = o_p(g, p)?;
    if !op.is_subgroup_of(&supersolvable_hypercentre(g)?) {
        return Ok(());
    }
    let s = f.sylow();
    for h in all_subgroups(g)?.iter() {
        if h.order() == g.order() {
            continue;
        }
        let sh = g.intersection(s, h);
        if !op.is_proper_subgroup_of(&sh) || sh.order() != p_part(h.order(), p) {
            continue;
        }
        let e = g.subgroup_as_group(h, "H");
        let fh = FusionSystem::with_sylow(e.group(), p, e.restrict(&sh)?)?;
        if fh.is_supersolvable()?.is_none() {
            return Ok(());
        }
    }
    t.record(
        "local quotient criterion",
        f.is_supersolvable()?.is_some(),
        || tag(f),
    );
    Ok(())
}

fn minnil_suite(g: &FiniteGroup, t: &mut Tally) -> Result<()> {
    let primes = prime_divisors(g.order());
    // minimal nonnilpotent groups have exactly two prime divisors
    if primes.len() != 2 || g.order() > enumeration_bound() || !is_minimal_nonnilpotent(g)? {
        return Ok(());
    }
    let mut ok = true;
    for q in primes {
        let syl = sylow_subgroup(g, q)?;
        if !g.is_normal(&syl) && !is_cyclic_subgroup(g, &syl) {
            ok = false;
        }
    }
    t.record("nonnormal Sylow subgroups cyclic", ok, || {
        g.label().to_string()
    });
    Ok(())
}

fn oliver_suite(g: &FiniteGroup, p: u64, t: &mut Tally) -> Result<()> {
    for a in normal_p_subgroups(g, p)? {
        if !g.is_abelian_subgroup(&a) {
            continue;
        }
        let ag = g.subgroup_as_group(&a, "A");
        let aut = g.induced_automorphisms(&a, g.generator_ids(), "Aut_G(A)")?;
        match oliver_decomposition(ag.group(), &aut, p) {
            Ok(d) => t.record("A = C_A(H) x [H, A]", d.conclusion_holds(), || {
                format!("{} p={p} |A|={}", g.label(), a.order())
            }),
            Err(Error::HypothesisViolated(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn a2_suite(g: &FiniteGroup, p: u64, t: &mut Tally) -> Result<()> {
    let s = sylow_subgroup(g, p)?;
    if s.is_trivial() {
        return Ok(());
    }
    let z = g.center_of(&s);
    let derived = g.derived_subgroup_of(&s);
    let abelian_maxes = abelian_maximal_subgroups(g, &s)?.len();
    let desc = || format!("{} p={p} |S|={}", g.label(), s.order());
    if !g.is_abelian_subgroup(&s) && abelian_maxes > 1 {
        let ok = derived.order() as u64 == p && s.order() / z.order() == (p * p) as usize;
        t.record(
            "two abelian maximal subgroups: |S'| = p, |S:Z(S)| = p^2",
            ok,
            desc,
        );
    }
    let big = s.order() > p.pow(4) as usize;
    if !big || !is_a2_group(g, &s, p)? || is_metacyclic(g.subgroup_as_group(&s, "S").group())? {
        return Ok(());
    }
    if abelian_maxes == 1 && derived.is_subgroup_of(&z) {
        t.record(
            "one abelian maximal, S' <= Z(S): Z(S) = Phi(S)",
            z == frattini_p_group(g, &s, p),
            desc,
        );
    }
    if abelian_maxes == 0 && p != 2 {
        t.record(
            "no abelian maximal, p odd: |S| = p^5",
            s.order() == p.pow(5) as usize,
            desc,
        );
    }
    Ok(())
}

fn run_one(suite: Suite, corpus: &[Instance]) -> SuiteReport {
    let mut t = Tally::default();
    for inst in corpus {
        let g = &inst.group;
        let res = (|| -> Result<()> {
            match suite {
                Suite::Zu => return zu_suite(g, &inst.primes, &mut t),
                Suite::MinNil => return minnil_suite(g, &mut t),
                _ => {}
            }
            for &p in &inst.primes {
                match suite {
                    Suite::Oliver => oliver_suite(g, p, &mut t)?,
                    Suite::A2 => a2_suite(g, p, &mut t)?,
                    _ => {
                        let f = fusion_system(g, p)?;
                        match suite {
                            Suite::Closure => closure_suite(&f, &mut t)?,
                            Suite::EStar => estar_suite(&f, &mut t)?,
                            _ => quotient_suite(&f, &mut t)?,
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            t.errors.push(format!("{}: {e}", inst.source));
        }
    }
    t.finish(suite)
}

/// Runs the suites over the groups of a manifest. Groups that fail to
/// build are reported as errors of every suite.
pub fn run_suites(
    suites: &[Suite],
    manifest: &Manifest,
    fixture_dir: Option<&Path>,
) -> Vec<SuiteReport> {
    let mut corpus = Vec::new();
    let mut build_errors = Vec::new();
    for e in &manifest.entries {
        match e
            .source
            .parse::<Source>()
            .and_then(|s| s.build(fixture_dir))
        {
            Ok(group) => corpus.push(Instance {
                source: e.source.clone(),
                group,
                primes: e.primes.clone(),
            }),
            Err(err) => build_errors.push(format!("{}: {err}", e.source)),
        }
    }
    use rayon::prelude::*;
    suites
        .par_iter()
        .map(|&s| {
            let mut r = run_one(s, &corpus);
            if !build_errors.is_empty() {
                r.errors.extend(build_errors.iter().cloned());
                r.passed = false;
            }
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(sources: &[(&str, &[u64])]) -> Manifest {
        let entries = sources
            .iter()
            .map(|(s, p)| super::super::ManifestEntry {
                source: s.to_string(),
                primes: p.to_vec(),
                weakly_pronormal_witnesses: Vec::new(),
            })
            .collect();
        Manifest { entries }
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 7);
        assert_eq!(
            Suite::parse_list("zu,oliver").unwrap(),
            vec![Suite::Zu, Suite::Oliver]
        );
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn small_corpus_suites() {
        let m = corpus(&[
            ("builder:symmetric(3)", &[2, 3]),
            ("builder:symmetric(4)", &[2, 3]),
            ("builder:alternating(4)", &[2, 3]),
            ("builder:dihedral(8)", &[2]),
            ("builder:dihedral(10)", &[2, 5]),
            ("builder:sl2(3)", &[2, 3]),
        ]);
        for r in run_suites(
            &[Suite::Closure, Suite::Zu, Suite::MinNil, Suite::EStar],
            &m,
            None,
        ) {
            assert!(r.errors.is_empty(), "{:?}", r.errors);
            assert_eq!(r.counterexamples(), 0, "{}", r.suite);
            assert!(r.passed, "{} ran {} instances", r.suite, r.instances);
        }
    }

    #[test]
    fn vacuous_suite_fails() {
        let m = corpus(&[("builder:cyclic(5)", &[5])]);
        let r = &run_suites(&[Suite::A2], &m, None)[0];
        assert_eq!(r.instances, 0);
        assert!(!r.passed);
    }

    #[test]
    fn oliver_on_affine_models() {
        let m = corpus(&[
            ("builder:symmetric(4)", &[2]),
            ("builder:affine(3, SL2)", &[3]),
            ("builder:affine(3, GL2)", &[3]),
        ]);
        let r = &run_suites(&[Suite::Oliver], &m, None)[0];
        assert_eq!(r.instances, 3);
        assert!(r.passed);
    }
}
