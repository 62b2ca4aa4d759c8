//! Theorem properties P1..P19 as checks over `(A, Q, S)` instances.
//!
//! Each property evaluates its hypothesis first. Instances where the
//! hypothesis fails, or where a needed identity is missing, are reported as
//! `SKIPPED` with a reason; only instances that reach the conclusion can be
//! `VERIFIED` or `COUNTEREXAMPLE`.

mod context;
mod properties;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::axioms::check_krasner;
use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::ideals::is_hyperideal;
use crate::predicates::{classify_with, is_multiplicative, PREDICATES};
use crate::structure::HyperStructure;

pub use context::SuiteConfig;
use context::{compose, Ctx};
use properties::Eval;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropertyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    P13,
    P14,
    P15,
    P16,
    P17,
    P18,
    P19,
}

impl PropertyId {
    pub const ALL: [PropertyId; 19] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::P6,
        PropertyId::P7,
        PropertyId::P8,
        PropertyId::P9,
        PropertyId::P10,
        PropertyId::P11,
        PropertyId::P12,
        PropertyId::P13,
        PropertyId::P14,
        PropertyId::P15,
        PropertyId::P16,
        PropertyId::P17,
        PropertyId::P18,
        PropertyId::P19,
    ];

    pub fn title(self) -> &'static str {
        match self {
            PropertyId::P1 => "product-ideal closure",
            PropertyId::P2 => "intersection closure",
            PropertyId::P3 => "colon sufficiency",
            PropertyId::P4 => "domain equivalence",
            PropertyId::P5 => "S in T transfer",
            PropertyId::P6 => "annihilation lemma",
            PropertyId::P7 => "square-zero",
            PropertyId::P8 => "radical dichotomy",
            PropertyId::P9 => "S={1} square-zero",
            PropertyId::P10 => "colon characterization",
            PropertyId::P11 => "S={1} colon characterization",
            PropertyId::P12 => "rad(0) annihilation",
            PropertyId::P13 => "pairwise annihilation",
            PropertyId::P14 => "S={1} rad annihilation",
            PropertyId::P15 => "homomorphic preimage",
            PropertyId::P16 => "subhyperring intersection",
            PropertyId::P17 => "cartesian equivalence",
            PropertyId::P18 => "three-fold product",
            PropertyId::P19 => "hyperfield product",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Verified,
    Counterexample,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED",
            Status::Counterexample => "COUNTEREXAMPLE",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// A fixture name with optional `Q` and `S`, given as element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub structure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
}

impl Instance {
    pub fn new(structure: &str, q: Option<&[&str]>, s: Option<&[&str]>) -> Self {
        let own = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
        Instance { structure: structure.to_string(), q: q.map(own), s: s.map(own) }
    }

    fn from_sets(a: &HyperStructure, structure: &str, q: Option<ElementSet>, s: Option<ElementSet>) -> Self {
        Instance { structure: structure.to_string(), q: q.map(|q| a.set_names(q)), s: s.map(|s| a.set_names(s)) }
    }

    fn sets(&self, a: &HyperStructure) -> Result<(Option<ElementSet>, Option<ElementSet>)> {
        let parse = |v: &Option<Vec<String>>| -> Result<Option<ElementSet>> {
            v.as_ref()
                .map(|names| {
                    names
                        .iter()
                        .map(|x| a.element(x).map_err(|_| Error::MalformedInstance(format!("unknown element `{x}`"))))
                        .collect()
                })
                .transpose()
        };
        Ok((parse(&self.q)?, parse(&self.s)?))
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure)?;
        if let Some(q) = &self.q {
            write!(f, " Q={{{}}}", q.join(","))?;
        }
        if let Some(s) = &self.s {
            write!(f, " S={{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    #[serde(rename = "propertyId")]
    pub property: PropertyId,
    pub instance: Instance,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl PropertyReport {
    fn from_eval(property: PropertyId, instance: Instance, eval: Eval) -> Self {
        let (status, reason, certificate) = match eval {
            Eval::Verified(c) => (Status::Verified, None, Some(c)),
            Eval::Counterexample(c) => (Status::Counterexample, None, Some(c)),
            Eval::Skipped(r) => (Status::Skipped, Some(r), None),
        };
        PropertyReport { property, instance, status, reason, certificate }
    }

    pub fn render(&self) -> String {
        let mut line = format!("{} {} [{}]", self.property, self.status, self.instance);
        if let Some(r) = &self.reason {
            line.push_str(&format!(" reason: {r}"));
        }
        if let Some(c) = &self.certificate {
            line.push_str(&format!(" {c}"));
        }
        line
    }
}

/// Runs one property on one instance under the default configuration.
pub fn run_property(property: PropertyId, instance: &Instance) -> Result<PropertyReport> {
    run_property_with(property, instance, SuiteConfig::default())
}

pub fn run_property_with(property: PropertyId, instance: &Instance, config: SuiteConfig) -> Result<PropertyReport> {
    let c = Ctx::new(&instance.structure, config)?;
    let (q, s) = instance.sets(c.a())?;
    let eval = properties::evaluate(property, &c, q, s);
    Ok(PropertyReport::from_eval(property, instance.clone(), eval))
}

/// Re-runs a report and checks that status and certificate come out the same.
pub fn replay(report: &PropertyReport) -> Result<bool> {
    let again = run_property(report.property, &report.instance)?;
    Ok(again == *report)
}

pub const DEFAULT_CORPUS: [&str; 6] =
    ["paper-2-4", "ring:Z4", "ring:Z6", "ring:Z12", "ring:Z2*ring:Z3", "ring:Z4*ring:Z3"];

/// Fixture names plus instance caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub fixtures: Vec<String>,
    pub config: SuiteConfig,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus { fixtures: DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect(), config: SuiteConfig::default() }
    }
}

impl Corpus {
    pub fn empty() -> Self {
        Corpus { fixtures: Vec::new(), config: SuiteConfig::default() }
    }

    /// Comma-separated fixture names; `none` or an empty string gives the
    /// empty corpus. Names are checked to resolve.
    pub fn parse(list: &str) -> Result<Corpus> {
        let list = list.trim();
        if list.is_empty() || list == "none" {
            return Ok(Corpus::empty());
        }
        let fixtures: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
        for f in &fixtures {
            crate::constructions::fixture(f)?;
        }
        Ok(Corpus { fixtures, config: SuiteConfig::default() })
    }

    pub fn with_config(mut self, config: SuiteConfig) -> Self {
        self.config = config;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSummary {
    pub name: String,
    pub canonical: bool,
    /// Added by the suite for the three-factor property, not named in the corpus.
    pub derived: bool,
    pub size: usize,
    pub axiom_violations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<usize>,
}

/// A defect found in a fixture or its designated `(Q, S)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub fixture: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub fixtures: Vec<FixtureSummary>,
    pub discrepancies: Vec<Discrepancy>,
    pub reports: Vec<PropertyReport>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub verified: usize,
    pub counterexamples: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.reports {
            match r.status {
                Status::Verified => t.verified += 1,
                Status::Counterexample => t.counterexamples += 1,
                Status::Skipped => t.skipped += 1,
            }
        }
        t
    }

    pub fn tally_for(&self, property: PropertyId) -> Tally {
        let only = SuiteReport {
            fixtures: Vec::new(),
            discrepancies: Vec::new(),
            reports: self.reports.iter().filter(|r| r.property == property).cloned().collect(),
        };
        only.tally()
    }

    /// Counterexamples on canonical fixtures.
    pub fn failures(&self) -> Vec<&PropertyReport> {
        self.reports
            .iter()
            .filter(|r| r.status == Status::Counterexample)
            .filter(|r| self.fixtures.iter().any(|f| f.name == r.instance.structure && f.canonical))
            .collect()
    }

    /// Properties with no non-skipped report.
    pub fn unexercised(&self) -> Vec<PropertyId> {
        PropertyId::ALL
            .into_iter()
            .filter(|p| !self.reports.iter().any(|r| r.property == *p && r.status != Status::Skipped))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            out.push_str(&format!(
                "fixture {} size={} canonical={} derived={} axiom_violations={}",
                f.name, f.size, f.canonical, f.derived, f.axiom_violations
            ));
            if let Some(n) = f.ideals {
                out.push_str(&format!(" ideals={n}"));
            }
            out.push('\n');
        }
        for d in &self.discrepancies {
            out.push_str(&format!("discrepancy {}: {}\n", d.fixture, d.detail));
        }
        for r in &self.reports {
            out.push_str(&r.render());
            out.push('\n');
        }
        for p in PropertyId::ALL {
            let t = self.tally_for(p);
            if t.verified + t.counterexamples + t.skipped > 0 {
                out.push_str(&format!(
                    "property {p} ({}): {} verified, {} counterexamples, {} skipped\n",
                    p.title(),
                    t.verified,
                    t.counterexamples,
                    t.skipped
                ));
            }
        }
        let t = self.tally();
        out.push_str(&format!(
            "summary: {} verified, {} counterexamples, {} skipped, {} discrepancies\n",
            t.verified,
            t.counterexamples,
            t.skipped,
            self.discrepancies.len()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

type Slot = (Option<ElementSet>, Option<ElementSet>);

/// Proper hyperideals times multiplicative sets disjoint from them.
fn standard_instances(c: &Ctx) -> Vec<Slot> {
    let Ok(l) = c.lattice() else { return Vec::new() };
    let mut out = Vec::new();
    for q in l.proper(c.a()) {
        for s in c.mult.iter().copied().filter(|s| s.is_disjoint(q)) {
            out.push((Some(q), Some(s)));
        }
    }
    out
}

/// Rectangles `Q_1 x ... x Q_u`, `S_1 x ... x S_u` over factor lattices.
fn product_instances(c: &Ctx) -> Vec<Slot> {
    let sizes: Vec<usize> = c.factors.iter().map(|f| f.a().size()).collect();
    let mut qs: Vec<Vec<ElementSet>> = vec![Vec::new()];
    let mut ss: Vec<Vec<ElementSet>> = vec![Vec::new()];
    for f in &c.factors {
        let Ok(l) = f.lattice() else { return Vec::new() };
        qs = qs.into_iter().flat_map(|p| l.ideals().iter().map(move |q| [p.clone(), vec![*q]].concat())).collect();
        ss = ss.into_iter().flat_map(|p| f.factor_mult.iter().map(move |s| [p.clone(), vec![*s]].concat())).collect();
    }
    let mut out = Vec::new();
    for q in &qs {
        for s in &ss {
            out.push((Some(compose(q, &sizes)), Some(compose(s, &sizes))));
        }
    }
    out
}

fn instances_for(property: PropertyId, c: &Ctx, standard: &[Slot]) -> Vec<Slot> {
    let a = c.a();
    match property {
        PropertyId::P4 => c.mult.iter().map(|s| (None, Some(*s))).collect(),
        PropertyId::P9 | PropertyId::P11 | PropertyId::P14 => match a.one() {
            Some(one) => standard.iter().copied().filter(|(_, s)| *s == Some(ElementSet::singleton(one))).collect(),
            None => Vec::new(),
        },
        PropertyId::P17 if c.factors.len() == 2 => product_instances(c),
        PropertyId::P18 if c.factors.len() == 3 => product_instances(c),
        PropertyId::P17 | PropertyId::P18 => Vec::new(),
        PropertyId::P19 if c.factors.len() == 2 => {
            let sizes: Vec<usize> = c.factors.iter().map(|f| f.a().size()).collect();
            let Ok(l) = c.lattice() else { return Vec::new() };
            let mut out = Vec::new();
            for q in l.proper(a) {
                for s1 in &c.factors[0].factor_mult {
                    for s2 in &c.factors[1].factor_mult {
                        let s = compose(&[*s1, *s2], &sizes);
                        if s.is_disjoint(q) {
                            out.push((Some(q), Some(s)));
                        }
                    }
                }
            }
            out
        }
        PropertyId::P19 => Vec::new(),
        _ => standard.to_vec(),
    }
}

fn discrepancies(c: &Ctx) -> Vec<Discrepancy> {
    let a = c.a();
    let mut out = Vec::new();
    let note = |detail: String| Discrepancy { fixture: c.name.clone(), detail };
    if !c.valid() {
        let violations = check_krasner(a);
        out.push(note(format!("{} Krasner axiom violations, first: {}", violations.len(), violations[0].render(a))));
    }
    if let Some((q, s)) = c.fixture.designated {
        let pair = format!("designated Q={} S={}", a.render_set(q), a.render_set(s));
        let ideal = is_hyperideal(a, q);
        if !ideal.holds {
            let why = ideal.note.clone().unwrap_or_default();
            out.push(note(format!("{pair}: {}", Error::NotHyperideal(why))));
        }
        if !is_multiplicative(a, s).holds {
            out.push(note(format!("{pair}: {}", Error::NotMultiplicative(a.render_set(s)))));
        }
        if !q.is_disjoint(s) {
            out.push(note(format!("{pair}: {}", Error::DisjointnessViolated(a.render_set(q.intersection(s))))));
        }
    }
    out
}

fn contexts(names: &[String], config: SuiteConfig) -> Result<Vec<Ctx>> {
    names.par_iter().map(|n| Ctx::new(n, config)).collect()
}

/// Runs every property on every generated instance of the corpus.
///
/// Two-factor products of (2,2) fixtures also get a three-factor companion
/// `X*Y*ring:Z2` for the three-fold product property.
pub fn run_suite(corpus: &Corpus) -> Result<SuiteReport> {
    let config = corpus.config;
    let main = contexts(&corpus.fixtures, config)?;
    let derived_names: Vec<String> = main
        .iter()
        .filter(|c| c.factors.len() == 2 && c.a().m() == 2 && c.a().n() == 2)
        .map(|c| format!("{}*ring:Z2", c.name))
        .filter(|n| !corpus.fixtures.contains(n))
        .collect();
    let derived = contexts(&derived_names, config)?;

    let mut fixtures = Vec::new();
    let mut found = Vec::new();
    let mut work: Vec<(PropertyId, &Ctx, Slot)> = Vec::new();
    for (c, is_derived) in main.iter().map(|c| (c, false)).chain(derived.iter().map(|c| (c, true))) {
        fixtures.push(FixtureSummary {
            name: c.name.clone(),
            canonical: c.fixture.canonical,
            derived: is_derived,
            size: c.a().size(),
            axiom_violations: c.violations,
            ideals: c.lattice().ok().map(|l| l.len()),
        });
        if !is_derived {
            found.extend(discrepancies(c));
        }
        if !c.valid() {
            continue;
        }
        let standard = standard_instances(c);
        for p in PropertyId::ALL {
            if is_derived && p != PropertyId::P18 {
                continue;
            }
            for slot in instances_for(p, c, &standard) {
                work.push((p, c, slot));
            }
        }
    }
    let reports = work
        .par_iter()
        .map(|(p, c, (q, s))| {
            let instance = Instance::from_sets(c.a(), &c.name, *q, *s);
            PropertyReport::from_eval(*p, instance, properties::evaluate(*p, c, *q, *s))
        })
        .collect();
    Ok(SuiteReport { fixtures, discrepancies: found, reports })
}

/// An `(A, Q, S)` on which one predicate holds and another fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatingInstance {
    pub structure: String,
    pub q: Vec<String>,
    pub s: Vec<String>,
}

impl fmt::Display for SeparatingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Q={{{}}} S={{{}}}", self.structure, self.q.join(","), self.s.join(","))
    }
}

/// Every standard corpus instance where `holds` is decided true and `fails`
/// is decided false. Predicate names are those of [`PREDICATES`].
pub fn search_separating_instances(corpus: &Corpus, holds: &str, fails: &str) -> Result<Vec<SeparatingInstance>> {
    for p in [holds, fails] {
        if !PREDICATES.contains(&p) {
            return Err(Error::UnknownPredicate(p.to_string()));
        }
    }
    let cs = contexts(&corpus.fixtures, corpus.config)?;
    let mut work = Vec::new();
    for c in cs.iter().filter(|c| c.valid()) {
        for (q, s) in standard_instances(c) {
            work.push((c, q.expect("standard"), s.expect("standard")));
        }
    }
    let found: Vec<Option<SeparatingInstance>> = work
        .par_iter()
        .map(|(c, q, s)| -> Result<Option<SeparatingInstance>> {
            let l = c.lattice().map_err(Error::Capacity)?;
            let record = classify_with(c.a(), *q, *s, l, &c.config.budget)?;
            let yes = record.get(holds).and_then(|o| o.holds()) == Some(true);
            let no = record.get(fails).and_then(|o| o.holds()) == Some(false);
            Ok((yes && no).then(|| SeparatingInstance {
                structure: c.name.clone(),
                q: c.a().set_names(*q),
                s: c.a().set_names(*s),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Standard `(A, Q, S)` instances of a corpus fixture, for callers that want
/// to sweep predicates themselves.
pub fn standard_corpus_instances(name: &str, config: SuiteConfig) -> Result<Vec<(ElementSet, ElementSet)>> {
    let c = Ctx::new(name, config)?;
    Ok(standard_instances(&c).into_iter().map(|(q, s)| (q.expect("standard"), s.expect("standard"))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(list: &str) -> Corpus {
        Corpus::parse(list).unwrap()
    }

    #[test]
    fn p7_on_z4_zero_ideal() {
        let r = run_property(PropertyId::P7, &Instance::new("ring:Z4", Some(&["0"]), Some(&["1"]))).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.render());
        assert_eq!(r.certificate.unwrap()["product"], serde_json::json!(["0"]));
    }

    #[test]
    fn p17_zero_factor_is_skipped() {
        let r =
            run_property(PropertyId::P17, &Instance::new("ring:Z2*ring:Z3", Some(&["0:0"]), Some(&["1:1"]))).unwrap();
        assert_eq!(r.status, Status::Skipped);
        assert!(r.reason.unwrap().contains("nonzero"));
    }

    #[test]
    fn p10_agrees_on_every_instance_with_identity() {
        let report = run_suite(&corpus("ring:Z4,ring:Z6,ring:Z12")).unwrap();
        let p10: Vec<_> = report.reports.iter().filter(|r| r.property == PropertyId::P10).collect();
        assert!(!p10.is_empty());
        assert!(
            p10.iter().all(|r| r.status == Status::Verified),
            "{:?}",
            p10.iter().find(|r| r.status != Status::Verified)
        );
    }

    #[test]
    fn empty_corpus() {
        let report = run_suite(&Corpus::empty()).unwrap();
        assert!(report.reports.is_empty() && report.fixtures.is_empty());
        assert_eq!(corpus("none"), Corpus::empty());
    }

    #[test]
    fn paper_3_3_is_a_discrepancy() {
        let report = run_suite(&corpus("paper-3-3")).unwrap();
        assert!(report.failures().is_empty());
        assert!(report
            .discrepancies
            .iter()
            .any(|d| d.detail.contains("multiplicative set meets the hyperideal in {2}")));
        assert!(report.discrepancies.iter().any(|d| d.detail.contains("axiom violations")));
    }

    #[test]
    fn unknown_names() {
        assert!(matches!("P20".parse::<PropertyId>(), Err(Error::UnknownProperty(_))));
        assert_eq!("p17".parse::<PropertyId>().unwrap(), PropertyId::P17);
        let bad = Instance::new("ring:Z4", Some(&["9"]), Some(&["1"]));
        assert!(matches!(run_property(PropertyId::P1, &bad), Err(Error::MalformedInstance(_))));
        assert!(matches!(Corpus::parse("ring:Q"), Err(Error::UnknownFixture(_))));
        assert!(matches!(
            search_separating_instances(&corpus("ring:Z4"), "prime", "regular"),
            Err(Error::UnknownPredicate(_))
        ));
    }

    #[test]
    fn separation_searches() {
        let z4 = search_separating_instances(&corpus("ring:Z4"), "weakly-s-prime", "s-prime").unwrap();
        assert!(z4.iter().any(|i| i.q == ["0"] && i.s == ["1"]));
        let z6 = search_separating_instances(&corpus("ring:Z6"), "weakly-prime", "prime").unwrap();
        assert!(z6.iter().any(|i| i.q == ["0"] && i.s == ["1"]));
        assert!(search_separating_instances(&Corpus::default(), "prime", "weakly-s-prime").unwrap().is_empty());
    }

    #[test]
    fn reports_replay() {
        let report = run_suite(&corpus("ring:Z6")).unwrap();
        for r in report.reports.iter().step_by(7) {
            assert!(replay(r).unwrap(), "{}", r.render());
        }
    }
}
