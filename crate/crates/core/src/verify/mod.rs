//! Hypothesis and conclusion checkers for the supersolvability criteria,
//! the corpus harness and the lemma suites.
//!
//! Every checker quantifies over all admissible orders `|D| = p^k` with
//! `1 < |D| < |S|`; the hypothesis holds as soon as one order passes.

mod corpus;
mod lemmas;
mod source;

pub use corpus::{run_corpus, AggregateReport, CorpusOptions, ItemReport};
pub use lemmas::{run_suites, CheckCount, Suite, SuiteReport};
pub use source::{
    build, load_source, parse_builder, BuilderExpr, Manifest, ManifestEntry, Source,
    DEFAULT_MANIFEST,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::classify::{
    abelian_maximal_subgroups, is_cyclic_subgroup, is_p_nilpotent, is_p_supersolvable,
    is_pronormal, is_solvable, is_weakly_pronormal,
};
use crate::error::{Error, Result};
use crate::fusion::{fusion_system, ClosureSystem, FusionSystem};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{maximal_subgroups, prime_divisors};
use crate::perm::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    A,
    B,
    C,
    D,
    /// p-nilpotence from abelian, weakly pronormal subgroups of orders
    /// `|D|` and `p|D|`.
    PNilWp,
    /// p-nilpotence from abelian, pronormal subgroups of order `|D|`.
    PNilPn,
    /// The open question for odd `p`.
    Q1,
    /// The `p = 2` form without the abelian requirement.
    Q2,
    /// Known equivalences between `F` and `G` for p-nilpotence and
    /// p-supersolvability.
    Equiv,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::A,
        TheoremId::B,
        TheoremId::C,
        TheoremId::D,
        TheoremId::PNilWp,
        TheoremId::PNilPn,
        TheoremId::Q1,
        TheoremId::Q2,
        TheoremId::Equiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::C => "C",
            TheoremId::D => "D",
            TheoremId::PNilWp => "pnil-wp",
            TheoremId::PNilPn => "pnil-pn",
            TheoremId::Q1 => "Q1",
            TheoremId::Q2 => "Q2",
            TheoremId::Equiv => "equiv",
        }
    }

    pub fn admits_prime(self, p: u64) -> bool {
        match self {
            TheoremId::B | TheoremId::Q2 => p == 2,
            TheoremId::C | TheoremId::D | TheoremId::Q1 => p != 2,
            _ => true,
        }
    }

    /// Open questions are explored, never asserted.
    pub fn is_open(self) -> bool {
        matches!(self, TheoremId::Q1 | TheoremId::Q2)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSource(format!("theorem {s}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A weak-pronormality search was cut off by the enumeration bound.
    Undetermined,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Consistency {
    /// Hypotheses held and so did the conclusion.
    Ok,
    /// Hypotheses did not hold; nothing to check.
    NotAsserted,
    /// Hypotheses held and the conclusion failed.
    Violated,
    /// Open question: hypotheses and conclusion both held.
    Evidence,
    /// Open question: hypotheses held, conclusion failed.
    CandidateCounterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisSpec {
    pub theorem: TheoremId,
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_order: Option<usize>,
    pub flags: BTreeMap<String, bool>,
}

/// A subgroup on which a hypothesis fails, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub order: usize,
    pub generators: Vec<String>,
    pub reason: String,
}

/// `G = HK` with `H ∩ K` pronormal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Supplement {
    pub subgroup: Vec<String>,
    pub supplement: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Consequence {
    pub property: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisVerdict {
    #[serde(flatten)]
    pub spec: HypothesisSpec,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub supplements: Vec<Supplement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consequence: Option<Consequence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub property: String,
    pub holds: bool,
    /// Members of the supersolvability chain, by generators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_valid: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub group_order: usize,
    pub prime: u64,
    pub theorem: TheoremId,
    pub sylow_order: usize,
    pub hypothesis: Verdict,
    pub hypotheses: Vec<HypothesisVerdict>,
    pub conclusion: Conclusion,
    pub facts: BTreeMap<String, Value>,
    pub consistency: Consistency,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn is_violation(&self) -> bool {
        self.consistency == Consistency::Violated
    }

    /// The first `|D|` at which the hypothesis passed.
    pub fn passing_order(&self) -> Option<usize> {
        self.hypotheses
            .iter()
            .find(|h| h.verdict == Verdict::Pass)
            .and_then(|h| h.spec.d_order)
    }
}

fn gens(g: &FiniteGroup, h: &Subgroup) -> Vec<String> {
    g.generator_permutations(h)
        .iter()
        .map(|p| p.to_string())
        .collect()
}

fn witness(g: &FiniteGroup, h: &Subgroup, reason: &str) -> Witness {
    Witness {
        order: h.order(),
        generators: gens(g, h),
        reason: reason.to_string(),
    }
}

/// `p^k` with `1 < p^k < |S|`.
pub fn admissible_d_orders(s_order: usize, p: u64) -> Vec<usize> {
    let mut v = Vec::new();
    let mut d = p as usize;
    while d < s_order {
        v.push(d);
        d *= p as usize;
    }
    v
}

/// Outcome of testing one family of subgroups.
struct Outcome {
    verdict: Verdict,
    reason: Option<String>,
    witness: Option<Witness>,
    supplements: Vec<Supplement>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            verdict: Verdict::Pass,
            reason: None,
            witness: None,
            supplements: Vec::new(),
        }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            reason: Some(reason.into()),
            witness: None,
            supplements: Vec::new(),
        }
    }

    fn witnessed(w: Witness) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            reason: None,
            witness: Some(w),
            supplements: Vec::new(),
        }
    }
}

/// Shared state for one `(G, p)`: the fusion system and its
/// supersolvability verdict, computed once.
struct Context {
    f: FusionSystem,
    subs: std::sync::Arc<Vec<Subgroup>>,
    conclusion: Conclusion,
}

impl Context {
    fn new(g: &FiniteGroup, p: u64) -> Result<Context> {
        let f = fusion_system(g, p)?;
        let subs = f.subgroups_of_s()?;
        let cert = f.is_supersolvable()?;
        let conclusion = Conclusion {
            property: "F supersolvable".into(),
            holds: cert.is_some(),
            certificate_valid: cert.as_ref().map(|c| f.validate_certificate(c)),
            certificate: cert.map(|c| c.chain.members.iter().map(|m| gens(g, m)).collect()),
        };
        Ok(Context {
            f,
            subs,
            conclusion,
        })
    }

    fn g(&self) -> &FiniteGroup {
        self.f.group()
    }

    fn s(&self) -> &Subgroup {
        self.f.sylow()
    }

    fn p(&self) -> u64 {
        self.f.prime()
    }

    fn of_orders<'a>(&'a self, orders: &'a [usize]) -> impl Iterator<Item = &'a Subgroup> + 'a {
        self.subs
            .iter()
            .filter(move |h| orders.contains(&h.order()))
    }

    fn s_abelian(&self) -> bool {
        self.g().is_abelian_subgroup(self.s())
    }

    fn s_cyclic(&self) -> bool {
        is_cyclic_subgroup(self.g(), self.s())
    }

    /// Every subgroup of the given orders passes `test`, which returns the
    /// reason for a failure.
    fn all_pass(
        &self,
        orders: &[usize],
        test: impl Fn(&Subgroup) -> Option<&'static str>,
    ) -> Outcome {
        for h in self.of_orders(orders) {
            if let Some(reason) = test(h) {
                return Outcome::witnessed(witness(self.g(), h, reason));
            }
        }
        Outcome::pass()
    }

    fn abelian_weakly_closed(&self, orders: &[usize]) -> Outcome {
        let g = self.g();
        self.all_pass(orders, |h| {
            if !g.is_abelian_subgroup(h) {
                Some("not abelian")
            } else if !self.f.is_weakly_closed(h) {
                Some("not weakly closed")
            } else {
                None
            }
        })
    }

    /// Abelian and weakly pronormal in `G`, trying the supplied supplements
    /// before a search.
    fn abelian_weakly_pronormal(
        &self,
        orders: &[usize],
        supplements: &[Subgroup],
    ) -> Result<Outcome> {
        let g = self.g();
        let nonabelian = self.all_pass(orders, |h| {
            (!g.is_abelian_subgroup(h)).then_some("not abelian")
        });
        if nonabelian.verdict != Verdict::Pass {
            return Ok(nonabelian);
        }
        let mut found = Vec::new();
        let mut undetermined: Option<Outcome> = None;
        for h in self.of_orders(orders) {
            let k = if is_pronormal(g, h).is_pronormal() {
                Some(g.whole())
            } else {
                let mut hit = None;
                for k in supplements {
                    match is_weakly_pronormal(g, h, Some(k)) {
                        Ok(k) => {
                            hit = k;
                            break;
                        }
                        Err(Error::WitnessFails(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
                match hit {
                    Some(k) => Some(k),
                    None => match is_weakly_pronormal(g, h, None) {
                        Ok(Some(k)) => Some(k),
                        Ok(None) => {
                            return Ok(Outcome::witnessed(witness(g, h, "not weakly pronormal")))
                        }
                        Err(Error::EnumerationBoundExceeded { .. }) => {
                            if undetermined.is_none() {
                                undetermined = Some(Outcome {
                                    verdict: Verdict::Undetermined,
                                    reason: Some(format!(
                                        "no supplied supplement works and |G| = {} exceeds the enumeration bound",
                                        g.order()
                                    )),
                                    witness: Some(witness(g, h, "weak pronormality undecided")),
                                    supplements: Vec::new(),
                                });
                            }
                            None
                        }
                        Err(e) => return Err(e),
                    },
                }
            };
            if let Some(k) = k {
                found.push(Supplement {
                    subgroup: gens(g, h),
                    supplement: gens(g, &k),
                });
            }
        }
        if let Some(u) = undetermined {
            return Ok(u);
        }
        Ok(Outcome {
            supplements: found,
            ..Outcome::pass()
        })
    }

    fn abelian_pronormal(&self, orders: &[usize]) -> Outcome {
        let g = self.g();
        self.all_pass(orders, |h| {
            if !g.is_abelian_subgroup(h) {
                Some("not abelian")
            } else if !is_pronormal(g, h).is_pronormal() {
                Some("not pronormal")
            } else {
                None
            }
        })
    }

    fn spec(&self, theorem: TheoremId, d: Option<usize>, flags: &[(&str, bool)]) -> HypothesisSpec {
        HypothesisSpec {
            theorem,
            prime: self.p(),
            d_order: d,
            flags: flags.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn report(
        &self,
        theorem: TheoremId,
        hypotheses: Vec<HypothesisVerdict>,
        conclusion: Conclusion,
        facts: BTreeMap<String, Value>,
    ) -> VerificationReport {
        let hypothesis = overall(&hypotheses);
        let consistency = match (hypothesis, theorem.is_open()) {
            (Verdict::Pass, false)
                if conclusion.holds && conclusion.certificate_valid != Some(false) =>
            {
                Consistency::Ok
            }
            (Verdict::Pass, false) => Consistency::Violated,
            (Verdict::Pass, true) if conclusion.holds => Consistency::Evidence,
            (Verdict::Pass, true) => Consistency::CandidateCounterexample,
            _ => Consistency::NotAsserted,
        };
        VerificationReport {
            group: self.g().label().to_string(),
            group_order: self.g().order(),
            prime: self.p(),
            theorem,
            sylow_order: self.s().order(),
            hypothesis,
            hypotheses,
            conclusion,
            facts,
            consistency,
            wall_time_ms: None,
        }
    }

    /// One verdict per admissible `|D|`, or a single "not applicable" entry.
    fn per_d(
        &self,
        theorem: TheoremId,
        mut eval: impl FnMut(usize) -> Result<(Vec<(&'static str, bool)>, Outcome)>,
    ) -> Result<Vec<HypothesisVerdict>> {
        let orders = admissible_d_orders(self.s().order(), self.p());
        if orders.is_empty() {
            return Ok(vec![HypothesisVerdict {
                spec: self.spec(theorem, None, &[]),
                verdict: Verdict::NotApplicable,
                reason: Some(format!(
                    "|S| = {} admits no D with 1 < D < S",
                    self.s().order()
                )),
                witness: None,
                supplements: Vec::new(),
                consequence: None,
            }]);
        }
        let mut out = Vec::new();
        for d in orders {
            let (flags, o) = eval(d)?;
            out.push(HypothesisVerdict {
                spec: self.spec(theorem, Some(d), &flags),
                verdict: o.verdict,
                reason: o.reason,
                witness: o.witness,
                supplements: o.supplements,
                consequence: None,
            });
        }
        Ok(out)
    }
}

fn overall(hs: &[HypothesisVerdict]) -> Verdict {
    let has = |v| hs.iter().any(|h| h.verdict == v);
    if has(Verdict::Pass) {
        Verdict::Pass
    } else if has(Verdict::Undetermined) {
        Verdict::Undetermined
    } else if has(Verdict::Fail) {
        Verdict::Fail
    } else {
        Verdict::NotApplicable
    }
}

fn orders_d_pd(d: usize, p: u64) -> Vec<usize> {
    vec![d, d * p as usize]
}

/// Some `1 < D < S` such that every subgroup of `S` of order `|D|` or
/// `p|D|` is abelian and weakly pronormal in `G` ⇒ `F_S(G)` supersolvable.
pub fn check_theorem_a(
    g: &FiniteGroup,
    p: u64,
    supplements: &[Subgroup],
) -> Result<VerificationReport> {
    let cx = Context::new(g, p)?;
    let hyps = cx.per_d(TheoremId::A, |d| {
        Ok((
            Vec::new(),
            cx.abelian_weakly_pronormal(&orders_d_pd(d, p), supplements)?,
        ))
    })?;
    let mut facts = BTreeMap::new();
    facts.insert("p_supersolvable".into(), json!(is_p_supersolvable(g, p)?));
    Ok(cx.report(TheoremId::A, hyps, cx.conclusion.clone(), facts))
}

/// `p = 2`: order `|D|` abelian and weakly closed, and also order `2|D|`
/// when `S` is nonabelian ⇒ `F` supersolvable, equivalently nilpotent.
pub fn check_theorem_b(g: &FiniteGroup) -> Result<VerificationReport> {
    let cx = Context::new(g, 2)?;
    let nonabelian = !cx.s_abelian();
    let hyps = cx.per_d(TheoremId::B, |d| {
        let orders = if nonabelian { vec![d, 2 * d] } else { vec![d] };
        Ok((
            vec![("S nonabelian", nonabelian)],
            cx.abelian_weakly_closed(&orders),
        ))
    })?;
    let nilpotent = cx.f.is_nilpotent()?;
    let mut conclusion = cx.conclusion.clone();
    // supersolvable and nilpotent coincide at p = 2
    let agree = nilpotent == conclusion.holds;
    conclusion.holds &= agree;
    let mut facts = BTreeMap::new();
    facts.insert("nilpotent".into(), json!(nilpotent));
    facts.insert("supersolvable".into(), json!(cx.conclusion.holds));
    facts.insert("supersolvable_iff_nilpotent".into(), json!(agree));
    let mut r = cx.report(TheoremId::B, hyps, conclusion, facts);
    if !agree {
        r.consistency = Consistency::Violated;
    }
    Ok(r)
}

fn require_odd(p: u64, what: &str) -> Result<()> {
    if p == 2 {
        return Err(Error::Precondition(format!("{what} needs an odd prime")));
    }
    Ok(())
}

/// `p` odd: every maximal subgroup of `S` weakly closed, and more than one
/// abelian maximal subgroup when `S` is noncyclic ⇒ `F` supersolvable.
pub fn check_theorem_c(g: &FiniteGroup, p: u64) -> Result<VerificationReport> {
    require_odd(p, "theorem C")?;
    let cx = Context::new(g, p)?;
    let s = cx.s();
    let mut facts = BTreeMap::new();
    let hyps = if s.is_trivial() {
        vec![HypothesisVerdict {
            spec: cx.spec(TheoremId::C, None, &[]),
            verdict: Verdict::NotApplicable,
            reason: Some("S is trivial".into()),
            witness: None,
            supplements: Vec::new(),
            consequence: None,
        }]
    } else {
        let maxes = maximal_subgroups(g, s)?;
        let abelian = abelian_maximal_subgroups(g, s)?.len();
        let noncyclic = !cx.s_cyclic();
        let bad = maxes.iter().find(|m| !cx.f.is_weakly_closed(m));
        let two_abelian = !noncyclic || abelian > 1;
        let outcome = match bad {
            Some(m) => Outcome::witnessed(witness(g, m, "maximal subgroup not weakly closed")),
            None if !two_abelian => Outcome::fail(format!(
                "S is noncyclic with {abelian} abelian maximal subgroup(s)"
            )),
            None => Outcome::pass(),
        };
        facts.insert("maximal_subgroups".into(), json!(maxes.len()));
        facts.insert("abelian_maximal_subgroups".into(), json!(abelian));
        facts.insert("all_maximal_weakly_closed".into(), json!(bad.is_none()));
        // the hypotheses minus the count condition, with F not supersolvable
        let near_miss = bad.is_none() && noncyclic && abelian == 1 && !cx.conclusion.holds;
        facts.insert("near_miss".into(), json!(near_miss));
        vec![HypothesisVerdict {
            spec: cx.spec(
                TheoremId::C,
                Some(s.order() / p as usize),
                &[
                    ("S noncyclic", noncyclic),
                    ("more than one abelian maximal subgroup", abelian > 1),
                ],
            ),
            verdict: outcome.verdict,
            reason: outcome.reason,
            witness: outcome.witness,
            supplements: Vec::new(),
            consequence: None,
        }]
    };
    facts.insert("p_supersolvable".into(), json!(is_p_supersolvable(g, p)?));
    Ok(cx.report(TheoremId::C, hyps, cx.conclusion.clone(), facts))
}

/// `p` odd: every subgroup of order `|D|` abelian and weakly closed ⇒ `F`
/// supersolvable.
pub fn check_theorem_d(g: &FiniteGroup, p: u64) -> Result<VerificationReport> {
    require_odd(p, "theorem D")?;
    let cx = Context::new(g, p)?;
    let hyps = cx.per_d(TheoremId::D, |d| {
        Ok((Vec::new(), cx.abelian_weakly_closed(&[d])))
    })?;
    Ok(cx.report(TheoremId::D, hyps, cx.conclusion.clone(), BTreeMap::new()))
}

fn smallest_prime(g: &FiniteGroup, p: u64) -> bool {
    prime_divisors(g.order()).first() == Some(&p)
}

fn p_nilpotent_conclusion(g: &FiniteGroup, p: u64) -> Result<Conclusion> {
    Ok(Conclusion {
        property: "G p-nilpotent".into(),
        holds: is_p_nilpotent(g, p)?,
        certificate: None,
        certificate_valid: None,
    })
}

/// `p` the smallest prime divisor, `S` noncyclic, and some `|D|` with
/// every subgroup of order `|D|` or `p|D|` abelian and weakly pronormal ⇒
/// `G` p-nilpotent.
pub fn check_pnil_weakly_pronormal(
    g: &FiniteGroup,
    p: u64,
    supplements: &[Subgroup],
) -> Result<VerificationReport> {
    let cx = Context::new(g, p)?;
    let (smallest, noncyclic) = (smallest_prime(g, p), !cx.s_cyclic());
    let flags = vec![
        ("p smallest prime divisor", smallest),
        ("S noncyclic", noncyclic),
    ];
    let hyps = cx.per_d(TheoremId::PNilWp, |d| {
        let o = if !(smallest && noncyclic) {
            Outcome::fail("side conditions fail")
        } else {
            cx.abelian_weakly_pronormal(&orders_d_pd(d, p), supplements)?
        };
        Ok((flags.clone(), o))
    })?;
    let mut facts = BTreeMap::new();
    facts.insert("f_supersolvable".into(), json!(cx.conclusion.holds));
    Ok(cx.report(
        TheoremId::PNilWp,
        hyps,
        p_nilpotent_conclusion(g, p)?,
        facts,
    ))
}

/// `p` the smallest prime divisor, `S` noncyclic, and some `|D|` with every
/// subgroup of order `|D|` abelian and pronormal, plus order `2|D|` when `S`
/// is a nonabelian 2-group ⇒ `G` p-nilpotent.
pub fn check_pnil_pronormal(g: &FiniteGroup, p: u64) -> Result<VerificationReport> {
    let cx = Context::new(g, p)?;
    let (smallest, noncyclic) = (smallest_prime(g, p), !cx.s_cyclic());
    let nonabelian_2 = p == 2 && !cx.s_abelian();
    let flags = vec![
        ("p smallest prime divisor", smallest),
        ("S noncyclic", noncyclic),
        ("S nonabelian 2-group", nonabelian_2),
    ];
    let hyps = cx.per_d(TheoremId::PNilPn, |d| {
        let o = if !(smallest && noncyclic) {
            Outcome::fail("side conditions fail")
        } else if nonabelian_2 {
            cx.abelian_pronormal(&[d, 2 * d])
        } else {
            cx.abelian_pronormal(&[d])
        };
        Ok((flags.clone(), o))
    })?;
    let mut facts = BTreeMap::new();
    facts.insert("f_supersolvable".into(), json!(cx.conclusion.holds));
    Ok(cx.report(
        TheoremId::PNilPn,
        hyps,
        p_nilpotent_conclusion(g, p)?,
        facts,
    ))
}

/// Evaluates the hypothesis of an open question and records whether `F`
/// was supersolvable. A pass with a non-supersolvable `F` is reported as a
/// candidate counterexample.
///
/// `Q1` (`p` odd): every subgroup of order `|D|` weakly closed, and more
/// than one abelian subgroup of order `|D|` when `S` is noncyclic.
/// `Q2` (`p = 2`): every subgroup of order `|D|` weakly closed, and also of
/// order `2|D|` when `S` is nonabelian.
pub fn explore_open_question(
    g: &FiniteGroup,
    p: u64,
    question: TheoremId,
) -> Result<VerificationReport> {
    match question {
        TheoremId::Q1 => require_odd(p, "question 1")?,
        TheoremId::Q2 if p != 2 => {
            return Err(Error::Precondition("question 2 needs p = 2".into()))
        }
        TheoremId::Q2 => {}
        other => {
            return Err(Error::Precondition(format!(
                "{other} is not an open question"
            )))
        }
    }
    let cx = Context::new(g, p)?;
    let noncyclic = !cx.s_cyclic();
    let nonabelian = !cx.s_abelian();
    let weakly_closed = |h: &Subgroup| (!cx.f.is_weakly_closed(h)).then_some("not weakly closed");
    let hyps = cx.per_d(question, |d| {
        if question == TheoremId::Q2 {
            let orders = if nonabelian { vec![d, 2 * d] } else { vec![d] };
            return Ok((
                vec![("S nonabelian", nonabelian)],
                cx.all_pass(&orders, weakly_closed),
            ));
        }
        let abelian = cx
            .of_orders(&[d])
            .filter(|h| cx.g().is_abelian_subgroup(h))
            .count();
        let mut o = cx.all_pass(&[d], weakly_closed);
        if o.verdict == Verdict::Pass && noncyclic && abelian <= 1 {
            o = Outcome::fail(format!(
                "S is noncyclic with {abelian} abelian subgroup(s) of order {d}"
            ));
        }
        Ok((
            vec![
                ("S noncyclic", noncyclic),
                ("more than one abelian subgroup of order |D|", abelian > 1),
            ],
            o,
        ))
    })?;
    Ok(cx.report(question, hyps, cx.conclusion.clone(), BTreeMap::new()))
}

/// The equivalences tying `F_S(G)` to `G`:
/// `G` p-supersolvable ⇒ `F` supersolvable;
/// `(|G|, p - 1) = 1` and `F` supersolvable ⇒ `G` p-nilpotent;
/// `G` solvable and `F` supersolvable ⇒ `G` p-supersolvable.
pub fn check_equivalences(g: &FiniteGroup, p: u64) -> Result<VerificationReport> {
    let cx = Context::new(g, p)?;
    let f_ss = cx.conclusion.holds;
    let p_ss = is_p_supersolvable(g, p)?;
    let coprime = gcd(g.order() as u64, p - 1) == 1;
    let solvable = is_solvable(g)?;
    let p_nil = is_p_nilpotent(g, p)?;
    let entry = |flags: &[(&str, bool)], property: &str, holds: bool| {
        let pass = flags.iter().all(|f| f.1);
        HypothesisVerdict {
            spec: cx.spec(TheoremId::Equiv, None, flags),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            reason: None,
            witness: None,
            supplements: Vec::new(),
            consequence: Some(Consequence {
                property: property.into(),
                holds,
            }),
        }
    };
    let hyps = vec![
        entry(&[("G p-supersolvable", p_ss)], "F supersolvable", f_ss),
        entry(
            &[("(|G|, p - 1) = 1", coprime), ("F supersolvable", f_ss)],
            "G p-nilpotent",
            p_nil,
        ),
        entry(
            &[("G solvable", solvable), ("F supersolvable", f_ss)],
            "G p-supersolvable",
            p_ss,
        ),
    ];
    let violated = hyps
        .iter()
        .any(|h| h.verdict == Verdict::Pass && h.consequence.as_ref().is_some_and(|c| !c.holds));
    let mut r = cx.report(
        TheoremId::Equiv,
        hyps,
        cx.conclusion.clone(),
        BTreeMap::new(),
    );
    r.consistency = if violated {
        Consistency::Violated
    } else if r.hypothesis == Verdict::Pass {
        Consistency::Ok
    } else {
        Consistency::NotAsserted
    };
    Ok(r)
}

/// Runs one check; `supplements` is only consulted by the weak-pronormality
/// checks.
pub fn check(
    theorem: TheoremId,
    g: &FiniteGroup,
    p: u64,
    supplements: &[Subgroup],
) -> Result<VerificationReport> {
    match theorem {
        TheoremId::A => check_theorem_a(g, p, supplements),
        TheoremId::B if p == 2 => check_theorem_b(g),
        TheoremId::B => Err(Error::Precondition("theorem B is stated for p = 2".into())),
        TheoremId::C => check_theorem_c(g, p),
        TheoremId::D => check_theorem_d(g, p),
        TheoremId::PNilWp => check_pnil_weakly_pronormal(g, p, supplements),
        TheoremId::PNilPn => check_pnil_pronormal(g, p),
        TheoremId::Q1 | TheoremId::Q2 => explore_open_question(g, p, theorem),
        TheoremId::Equiv => check_equivalences(g, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        affine_model, alternating, dihedral, elementary_abelian, from_fixture, symmetric, HSpec,
    };
    use crate::perm::Permutation;

    fn a5xa5_witnesses(g: &FiniteGroup) -> Vec<Subgroup> {
        let m = Manifest::default_corpus();
        let e = m
            .entries
            .iter()
            .find(|e| e.source.contains("alternating(5), alternating(5)"))
            .unwrap();
        e.witnesses(g).unwrap()
    }

    #[test]
    fn theorem_a_on_a5_squared() {
        let a5 = alternating(5).unwrap();
        let g = FiniteGroup::direct_product(&a5, &a5)
            .unwrap()
            .group()
            .clone();
        let r = check_theorem_a(&g, 5, &a5xa5_witnesses(&g)).unwrap();
        assert_eq!(r.hypothesis, Verdict::Pass);
        assert_eq!(r.passing_order(), Some(5));
        assert_eq!(r.hypotheses[0].supplements.len(), 7);
        assert!(r.conclusion.holds && r.conclusion.certificate_valid == Some(true));
        assert_eq!(r.facts["p_supersolvable"], json!(false));
        assert_eq!(r.consistency, Consistency::Ok);
        // without supplements the search runs into the enumeration bound
        let r = check_theorem_a(&g, 5, &[]).unwrap();
        assert_eq!(r.hypothesis, Verdict::Undetermined);
        assert_eq!(r.consistency, Consistency::NotAsserted);
    }

    #[test]
    fn theorem_a_small_cases() {
        let s3 = symmetric(3).unwrap();
        let r = check_theorem_a(&s3, 3, &[]).unwrap();
        assert_eq!(r.hypothesis, Verdict::NotApplicable);
        let s4 = symmetric(4).unwrap();
        let r = check_theorem_a(&s4, 2, &[]).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
        let w = r.hypotheses[0].witness.as_ref().unwrap();
        let perms: Vec<Permutation> = w
            .generators
            .iter()
            .map(|c| Permutation::parse_cycles(4, c).unwrap())
            .collect();
        let h = s4.subgroup_from_generators(&perms).unwrap();
        assert_eq!(h.order(), w.order);
        assert!(
            is_weakly_pronormal(&s4, &h, None).unwrap().is_none() || !s4.is_abelian_subgroup(&h)
        );
    }

    #[test]
    fn bad_supplement_is_skipped() {
        let s4 = symmetric(4).unwrap();
        let r = check_theorem_a(&s4, 2, &[s4.trivial_subgroup()]).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
    }

    #[test]
    fn theorem_b() {
        let a4 = alternating(4).unwrap();
        let r = check_theorem_b(&a4).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
        let v = elementary_abelian(2, 2).unwrap();
        let r = check_theorem_b(&v).unwrap();
        assert_eq!(r.hypothesis, Verdict::Pass);
        assert_eq!(r.consistency, Consistency::Ok);
        let r = check_theorem_b(&symmetric(4).unwrap()).unwrap();
        assert_eq!(r.hypotheses[0].verdict, Verdict::Fail);
        assert_eq!(
            r.hypotheses[0].witness.as_ref().unwrap().reason,
            "not weakly closed"
        );
        assert_eq!(r.facts["supersolvable_iff_nilpotent"], json!(true));
    }

    #[test]
    fn theorem_c_example_and_affine() {
        let g = from_fixture("smallgroup_324_160", None).unwrap();
        let r = check_theorem_c(&g, 3).unwrap();
        assert_eq!(r.facts["maximal_subgroups"], json!(4));
        assert_eq!(r.facts["abelian_maximal_subgroups"], json!(1));
        assert_eq!(r.facts["all_maximal_weakly_closed"], json!(true));
        assert_eq!(r.facts["near_miss"], json!(true));
        assert_eq!(r.facts["p_supersolvable"], json!(false));
        assert_eq!(r.hypothesis, Verdict::Fail);
        assert!(!r.conclusion.holds);
        let m = affine_model(3, HSpec::SL2).unwrap();
        let r = check_theorem_c(&m.group, 3).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
        assert!(r.hypotheses[0].witness.is_some());
        let c9 = crate::construct::cyclic(9).unwrap();
        let r = check_theorem_c(&c9, 3).unwrap();
        assert_eq!(r.hypothesis, Verdict::Pass);
        assert!(check_theorem_c(&c9, 2).is_err());
    }

    #[test]
    fn theorem_d() {
        let m = affine_model(3, HSpec::SL2).unwrap();
        let r = check_theorem_d(&m.group, 3).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
        assert!(r.hypotheses.iter().all(|h| h.witness.is_some()));
        let a5 = alternating(5).unwrap();
        let g = FiniteGroup::direct_product(&a5, &a5)
            .unwrap()
            .group()
            .clone();
        let r = check_theorem_d(&g, 5).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
        // diagonal subgroups of order 3 fuse under the involution
        let g = FiniteGroup::direct_product(
            &symmetric(3).unwrap(),
            &crate::construct::cyclic(3).unwrap(),
        )
        .unwrap()
        .group()
        .clone();
        let r = check_theorem_d(&g, 3).unwrap();
        assert_eq!(r.hypothesis, Verdict::Fail);
        let g = FiniteGroup::direct_product(
            &crate::construct::cyclic(3).unwrap(),
            &alternating(4).unwrap(),
        )
        .unwrap()
        .group()
        .clone();
        let r = check_theorem_d(&g, 3).unwrap();
        assert_eq!(r.consistency, Consistency::Ok);
        assert!(matches!(
            check_theorem_d(&g, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn open_questions() {
        let g = from_fixture("smallgroup_324_160", None).unwrap();
        let r = explore_open_question(&g, 3, TheoremId::Q1).unwrap();
        let at27 = r
            .hypotheses
            .iter()
            .find(|h| h.spec.d_order == Some(27))
            .unwrap();
        assert_eq!(at27.verdict, Verdict::Fail);
        assert_ne!(r.consistency, Consistency::Violated);
        let d16 = dihedral(16).unwrap();
        let r = explore_open_question(&d16, 2, TheoremId::Q2).unwrap();
        assert_eq!(r.consistency, Consistency::Evidence);
        assert!(explore_open_question(&d16, 2, TheoremId::Q1).is_err());
    }

    #[test]
    fn p_nilpotence_and_equivalences() {
        let s4 = symmetric(4).unwrap();
        for p in [2, 3] {
            for t in [TheoremId::PNilWp, TheoremId::PNilPn, TheoremId::Equiv] {
                let r = check(t, &s4, p, &[]).unwrap();
                assert!(!r.is_violation(), "{t} at {p}");
            }
        }
        let r = check_equivalences(&s4, 3).unwrap();
        assert_eq!(r.consistency, Consistency::Ok);
        let v = elementary_abelian(2, 2).unwrap();
        let r = check_pnil_pronormal(&v, 2).unwrap();
        assert_eq!(r.hypothesis, Verdict::Pass);
        assert_eq!(r.consistency, Consistency::Ok);
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
        assert!("E".parse::<TheoremId>().is_err());
        assert_eq!(admissible_d_orders(27, 3), vec![3, 9]);
        assert!(admissible_d_orders(3, 3).is_empty());
    }
}
