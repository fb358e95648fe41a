//! Corpus scans, literature cross-checks, extremal search and reports.
//!
//! Graphs are checked independently on the rayon pool; rows come back in
//! input order so a re-run with the same inputs produces the same bytes.

mod literature;
mod source;

pub use literature::{lookup, registry, Binding, GraphClass, LiteratureBound};
pub use source::Source;

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detectors::{is_free, PatternSpec};
use crate::error::{Error, Result};
use crate::extraction::{
    broom_extract, gyarfas_extract, revalidate, stablechi_extract, Certificate, ExtractOptions, Threshold,
    ThresholdKind,
};
use crate::graph::{write_graph6, Graph};
use crate::invariants::{
    exact_invariants_with_budget, is_ct_sparse, is_eps_chi_dense, Invariants, RamseyTable, DEFAULT_BUDGET,
};
use crate::scalar::{fmt_ratio, parse_ratio, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CheckId {
    CocktailKs,
    BroomKsThreshold,
    Path2Conditional,
    StableChiConditional,
    KsSparse,
    AvgDegDegeneracy,
    EpsChiDenseReport,
    GyarfasSoundnessFuzz,
    LiteratureSanity,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::CocktailKs,
        CheckId::BroomKsThreshold,
        CheckId::Path2Conditional,
        CheckId::StableChiConditional,
        CheckId::KsSparse,
        CheckId::AvgDegDegeneracy,
        CheckId::EpsChiDenseReport,
        CheckId::GyarfasSoundnessFuzz,
        CheckId::LiteratureSanity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::CocktailKs => "cocktailks",
            CheckId::BroomKsThreshold => "broomks-threshold",
            CheckId::Path2Conditional => "path2-conditional",
            CheckId::StableChiConditional => "stablechi-conditional",
            CheckId::KsSparse => "kssparse",
            CheckId::AvgDegDegeneracy => "avgdeg-degeneracy",
            CheckId::EpsChiDenseReport => "eps-chi-dense-report",
            CheckId::GyarfasSoundnessFuzz => "gyarfas-soundness-fuzz",
            CheckId::LiteratureSanity => "literature-sanity",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == text)
            .ok_or_else(|| Error::parameter("check", format!("unknown check `{text}`")))
    }
}

/// A check with all of its parameters filled in. Parameters a check does
/// not use stay `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSpec {
    pub id: CheckId,
    pub m: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub q: Option<usize>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub eps: Option<Rational>,
    pub entry: Option<String>,
}

fn ser_opt_ratio<S: serde::Serializer>(r: &Option<Rational>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser.serialize_some(&fmt_ratio(r)),
        None => ser.serialize_none(),
    }
}

impl CheckSpec {
    /// The check with its default parameters.
    pub fn new(id: CheckId) -> CheckSpec {
        let mut spec = CheckSpec {
            id,
            m: None,
            s: None,
            k: None,
            l: None,
            q: None,
            eps: None,
            entry: None,
        };
        match id {
            CheckId::CocktailKs => {
                spec.m = Some(1);
                spec.s = Some(2);
                spec.k = Some(5);
            }
            CheckId::BroomKsThreshold => {
                spec.k = Some(3);
                spec.l = Some(2);
                spec.s = Some(2);
                spec.q = Some(1);
            }
            CheckId::Path2Conditional | CheckId::GyarfasSoundnessFuzz => {
                spec.s = Some(2);
                spec.q = Some(1);
                spec.k = Some(5);
            }
            CheckId::StableChiConditional => {
                spec.s = Some(2);
                spec.q = Some(1);
            }
            CheckId::KsSparse | CheckId::AvgDegDegeneracy => spec.s = Some(2),
            CheckId::EpsChiDenseReport => spec.eps = Some(Rational::new(1.into(), 3.into())),
            CheckId::LiteratureSanity => {}
        }
        spec
    }

    /// Sets a parameter by name. `l` is also accepted by the fuzz check,
    /// which then runs the broom procedure.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let int = |v: &str| -> Result<Option<usize>> {
            v.parse()
                .map(Some)
                .map_err(|_| Error::parameter(key, format!("expected an integer, got `{v}`")))
        };
        match key {
            "m" => self.m = int(value)?,
            "s" => self.s = int(value)?,
            "k" => self.k = int(value)?,
            "l" => self.l = int(value)?,
            "q" => self.q = int(value)?,
            "eps" => self.eps = Some(parse_ratio(value)?),
            "entry" => self.entry = Some(value.to_string()),
            _ => return Err(Error::parameter(key, "unknown check parameter")),
        }
        Ok(())
    }

    fn need(&self, field: &str, v: Option<usize>, min: usize) -> Result<usize> {
        let v = v.ok_or_else(|| Error::parameter(field, format!("{} needs `{field}`", self.id)))?;
        if v < min {
            return Err(Error::parameter(field, format!("must be >= {min}, got {v}")));
        }
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        match self.id {
            CheckId::CocktailKs => {
                self.need("m", self.m, 1)?;
                self.need("s", self.s, 2)?;
                self.need("k", self.k, 3)?;
            }
            CheckId::BroomKsThreshold => {
                self.need("k", self.k, 2)?;
                self.need("l", self.l, 1)?;
                self.need("s", self.s, 2)?;
                self.need("q", self.q, 1)?;
            }
            CheckId::Path2Conditional | CheckId::GyarfasSoundnessFuzz => {
                self.need("s", self.s, 2)?;
                self.need("q", self.q, 1)?;
                self.need("k", self.k, if self.id == CheckId::Path2Conditional { 5 } else { 2 })?;
                if self.l.is_some() {
                    self.need("l", self.l, 1)?;
                }
            }
            CheckId::StableChiConditional => {
                self.need("s", self.s, 2)?;
                self.need("q", self.q, 1)?;
            }
            CheckId::KsSparse | CheckId::AvgDegDegeneracy => {
                self.need("s", self.s, 1)?;
            }
            CheckId::EpsChiDenseReport => {
                if self.eps.as_ref().is_none_or(|e| *e <= Rational::zero()) {
                    return Err(Error::parameter("eps", "need eps > 0"));
                }
            }
            CheckId::LiteratureSanity => {
                if let Some(e) = &self.entry {
                    lookup(e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [
            ("m", self.m),
            ("s", self.s),
            ("k", self.k),
            ("l", self.l),
            ("q", self.q),
        ] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(e) = &self.eps {
            parts.push(format!("eps={}", fmt_ratio(e)));
        }
        if let Some(e) = &self.entry {
            parts.push(format!("entry={e}"));
        }
        if parts.is_empty() {
            write!(f, "{}", self.id)
        } else {
            write!(f, "{}({})", self.id, parts.join(","))
        }
    }
}

impl FromStr for CheckSpec {
    type Err = Error;

    /// `id` or `id(key=value,...)`; missing keys take their defaults.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (id, args) = match t.split_once('(') {
            Some((id, rest)) => {
                let args = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parameter("check", format!("unbalanced parentheses in `{t}`")))?;
                (id, args)
            }
            None => (t, ""),
        };
        let mut spec = CheckSpec::new(id.parse()?);
        for pair in args.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::parameter("check", format!("expected key=value, got `{pair}`")))?;
            spec.set(k.trim(), v.trim())?;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis of the check does not hold for this graph.
    Skip,
    /// Report-only checks record a value and assert nothing.
    Report,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
            Verdict::Report => "report",
            Verdict::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub chi: Option<usize>,
    pub omega: Option<usize>,
    pub alpha: Option<usize>,
    pub check: String,
    pub verdict: Verdict,
    /// Check-specific ratio, as `p/q`.
    pub margin: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub graphs: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub report: usize,
    pub error: usize,
    /// Graphs on which the hypothesis of the check held.
    pub hypothesis_met: usize,
    pub max_margin: Option<String>,
    pub max_margin_graph: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub source: String,
    pub checks: Vec<String>,
    pub rows: Vec<Row>,
    pub summaries: Vec<CheckSummary>,
}

impl ScanReport {
    pub fn failures(&self) -> usize {
        self.summaries.iter().map(|s| s.fail).sum()
    }

    pub fn errors(&self) -> usize {
        self.summaries.iter().map(|s| s.error).sum()
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub budget: u64,
    pub ramsey: RamseyTable,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            budget: DEFAULT_BUDGET,
            ramsey: RamseyTable::bundled().clone(),
        }
    }
}

struct Outcome {
    verdict: Verdict,
    margin: Option<Rational>,
    hypothesis: bool,
    detail: String,
}

impl Outcome {
    fn skip(detail: impl Into<String>) -> Outcome {
        Outcome {
            verdict: Verdict::Skip,
            margin: None,
            hypothesis: false,
            detail: detail.into(),
        }
    }

    fn asserted(ok: bool, margin: Option<Rational>, detail: impl Into<String>) -> Outcome {
        Outcome {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            margin,
            hypothesis: true,
            detail: detail.into(),
        }
    }
}

fn ratio(a: usize, b: &Rational) -> Option<Rational> {
    (!b.is_zero()).then(|| Rational::from_int(a as i64) / b.clone())
}

/// Runs the extraction, or reports why the conditional check does not apply.
fn conditional(
    g: &Graph,
    inv: &Invariants,
    threshold: Threshold,
    q: usize,
    config: &ScanConfig,
    run: impl FnOnce(&ExtractOptions) -> Result<Certificate>,
) -> Result<Outcome> {
    if !threshold.is_met_by(inv.chi) {
        return Ok(Outcome::skip(format!(
            "chi {} below {}",
            inv.chi,
            fmt_ratio(&threshold.value)
        )));
    }
    let opts = ExtractOptions {
        force: false,
        budget: config.budget,
        ramsey: config.ramsey.clone(),
    };
    let margin = ratio(inv.chi, &threshold.value);
    let cert = run(&opts)?;
    let ok = matches!(cert, Certificate::RichStableSet { .. }) && revalidate(g, &cert, q, config.budget).is_ok();
    let detail = serde_json::to_string(&cert).expect("certificates serialise");
    Ok(Outcome::asserted(ok, margin, detail))
}

fn evaluate(g: &Graph, inv: &Invariants, spec: &CheckSpec, config: &ScanConfig) -> Result<Outcome> {
    let u = |v: Option<usize>| v.expect("validated") as u64;
    let omega = inv.omega as u64;
    let needs_vertices = matches!(
        spec.id,
        CheckId::BroomKsThreshold
            | CheckId::Path2Conditional
            | CheckId::StableChiConditional
            | CheckId::GyarfasSoundnessFuzz
            | CheckId::LiteratureSanity
    );
    if needs_vertices && g.is_empty() {
        // extraction rejects the null graph and binding functions start at omega = 1
        return Ok(Outcome::skip("null graph"));
    }
    match spec.id {
        CheckId::CocktailKs => {
            let (m, s, k) = (spec.m.unwrap(), spec.s.unwrap(), spec.k.unwrap());
            if !is_free(g, &[PatternSpec::Path(k), PatternSpec::CocktailMulti(m, s)])? {
                return Ok(Outcome::skip("contains a forbidden pattern"));
            }
            let t = Threshold::new(
                ThresholdKind::CocktailKS {
                    m: m as u64,
                    s: s as u64,
                    k: k as u64,
                    omega,
                },
                &config.ramsey,
            )?;
            let ok = Rational::from_int(inv.chi as i64) < t.value;
            Ok(Outcome::asserted(
                ok,
                ratio(inv.chi, &t.value),
                format!("threshold {}", fmt_ratio(&t.value)),
            ))
        }
        CheckId::BroomKsThreshold => {
            let (k, l, s, q) = (spec.k.unwrap(), spec.l.unwrap(), spec.s.unwrap(), spec.q.unwrap());
            if !is_free(g, &[PatternSpec::Broom(k, l)])? {
                return Ok(Outcome::skip("contains the broom"));
            }
            let t = Threshold::new(
                ThresholdKind::BroomKS {
                    k: k as u64,
                    l: l as u64,
                    s: s as u64,
                    q: q as u64,
                    omega,
                },
                &config.ramsey,
            )?;
            conditional(g, inv, t, q, config, |o| {
                broom_extract(g, k, l, s, q, o).map(|e| e.certificate)
            })
        }
        CheckId::Path2Conditional => {
            let (s, q, k) = (spec.s.unwrap(), spec.q.unwrap(), spec.k.unwrap());
            if !is_free(g, &[PatternSpec::Path(k)])? {
                return Ok(Outcome::skip("contains the path"));
            }
            let t = Threshold::new(
                ThresholdKind::Path2 {
                    s: s as u64,
                    k: k as u64,
                    q: q as u64,
                    omega,
                },
                &config.ramsey,
            )?;
            conditional(g, inv, t, q, config, |o| {
                gyarfas_extract(g, s, q, k, o).map(|e| e.certificate)
            })
        }
        CheckId::StableChiConditional => {
            let (s, q) = (spec.s.unwrap(), spec.q.unwrap());
            let t = Threshold::new(
                ThresholdKind::StableChi {
                    s: s as u64,
                    q: q as u64,
                    alpha: inv.alpha as u64,
                    omega,
                },
                &config.ramsey,
            )?;
            conditional(g, inv, t, q, config, |o| stablechi_extract(g, s, q, None, o))
        }
        CheckId::KsSparse => {
            let s = spec.s.unwrap();
            if !is_free(g, &[PatternSpec::CompleteBipartite(s, s)])? {
                return Ok(Outcome::skip(format!("contains K{s},{s}")));
            }
            let c = Rational::new(1.into(), (4 * s as i64).into());
            let t = 2 * config.ramsey.value(u(spec.s), omega + 1).value as usize;
            let verdict = is_ct_sparse(g, &c, t)?;
            let detail = match &verdict.violating_pair {
                Some(p) => format!(
                    "c={} t={t} dense pair {}",
                    fmt_ratio(&c),
                    serde_json::to_string(p).unwrap()
                ),
                None => format!("c={} t={t}", fmt_ratio(&c)),
            };
            Ok(Outcome::asserted(verdict.sparse, None, detail))
        }
        CheckId::AvgDegDegeneracy => {
            let s = spec.s.unwrap();
            if !is_free(g, &[PatternSpec::CompleteBipartite(s, s)])? {
                return Ok(Outcome::skip(format!("contains K{s},{s}")));
            }
            let r = config.ramsey.value(s as u64, omega + 1).value;
            Ok(Outcome {
                verdict: Verdict::Report,
                margin: Some(Rational::new(((inv.degeneracy + 1) as i64).into(), (r as i64).into())),
                hypothesis: true,
                detail: format!("degeneracy {} R {r}", inv.degeneracy),
            })
        }
        CheckId::EpsChiDenseReport => {
            let eps = spec.eps.as_ref().unwrap();
            let v = is_eps_chi_dense(g, eps, config.budget)?;
            Ok(Outcome {
                verdict: Verdict::Report,
                margin: None,
                hypothesis: v.dense,
                detail: serde_json::to_string(&v).unwrap(),
            })
        }
        CheckId::GyarfasSoundnessFuzz => {
            let (s, q, k) = (spec.s.unwrap(), spec.q.unwrap(), spec.k.unwrap());
            let opts = ExtractOptions {
                force: true,
                budget: config.budget,
                ramsey: config.ramsey.clone(),
            };
            let run = match spec.l {
                Some(l) => broom_extract(g, k, l, s, q, &opts),
                None => gyarfas_extract(g, s, q, k, &opts),
            };
            match run {
                Ok(e) => {
                    let ok = revalidate(g, &e.certificate, q, config.budget).is_ok();
                    let detail = serde_json::to_string(&e.certificate).unwrap();
                    Ok(Outcome::asserted(ok, None, detail))
                }
                Err(e) if e.to_string().contains("forced run stopped") => Ok(Outcome::skip(e.to_string())),
                Err(e) => Err(e),
            }
        }
        CheckId::LiteratureSanity => {
            let entries = match &spec.entry {
                Some(e) => vec![lookup(e)?],
                None => registry(),
            };
            let mut hypothesis = false;
            let mut ok = true;
            let mut worst: Option<Rational> = None;
            let mut notes = Vec::new();
            for entry in entries {
                if !entry.class.contains(g)? {
                    continue;
                }
                hypothesis = true;
                let holds = entry.holds(inv.chi, inv.omega);
                ok &= holds;
                if let Some(r) = entry.ratio(inv.chi, inv.omega) {
                    if worst.as_ref().is_none_or(|w| r > *w) {
                        worst = Some(r);
                    }
                }
                if !holds {
                    notes.push(format!("{} bound {}", entry.id, entry.describe(inv.omega)));
                }
            }
            if !hypothesis {
                return Ok(Outcome::skip("in no registered class"));
            }
            Ok(Outcome::asserted(ok, worst, notes.join("; ")))
        }
    }
}

fn check_graph(index: usize, g: &Graph, checks: &[CheckSpec], config: &ScanConfig) -> Vec<(Row, bool)> {
    let graph6 = write_graph6(g);
    let inv = exact_invariants_with_budget(g, config.budget);
    checks
        .iter()
        .map(|spec| {
            let mut row = Row {
                index,
                graph6: graph6.clone(),
                n: g.n(),
                chi: None,
                omega: None,
                alpha: None,
                check: spec.to_string(),
                verdict: Verdict::Error,
                margin: None,
                detail: String::new(),
            };
            let inv = match &inv {
                Ok(inv) => inv,
                Err(e) => {
                    row.detail = e.to_string();
                    return (row, false);
                }
            };
            row.chi = Some(inv.chi);
            row.omega = Some(inv.omega);
            row.alpha = Some(inv.alpha);
            match evaluate(g, inv, spec, config) {
                Ok(out) => {
                    row.verdict = out.verdict;
                    row.margin = out.margin.as_ref().map(fmt_ratio);
                    row.detail = out.detail;
                    (row, out.hypothesis)
                }
                Err(e) => {
                    row.detail = e.to_string();
                    (row, false)
                }
            }
        })
        .collect()
}

/// Runs every check on every graph.
pub fn scan(source: &str, graphs: &[Graph], checks: &[CheckSpec], config: &ScanConfig) -> Result<ScanReport> {
    for c in checks {
        c.validate()?;
    }
    let per_graph: Vec<Vec<(Row, bool)>> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| check_graph(i, g, checks, config))
        .collect();
    let mut summaries: Vec<CheckSummary> = checks
        .iter()
        .map(|c| CheckSummary {
            check: c.to_string(),
            graphs: graphs.len(),
            pass: 0,
            fail: 0,
            skip: 0,
            report: 0,
            error: 0,
            hypothesis_met: 0,
            max_margin: None,
            max_margin_graph: None,
        })
        .collect();
    let mut best: Vec<Option<Rational>> = vec![None; checks.len()];
    let mut rows = Vec::with_capacity(graphs.len() * checks.len());
    for graph_rows in per_graph {
        for (j, (row, hypothesis)) in graph_rows.into_iter().enumerate() {
            let sum = &mut summaries[j];
            match row.verdict {
                Verdict::Pass => sum.pass += 1,
                Verdict::Fail => sum.fail += 1,
                Verdict::Skip => sum.skip += 1,
                Verdict::Report => sum.report += 1,
                Verdict::Error => sum.error += 1,
            }
            sum.hypothesis_met += usize::from(hypothesis);
            if let Some(m) = row.margin.as_deref() {
                let m = parse_ratio(m)?;
                if best[j].as_ref().is_none_or(|b| m > *b) {
                    sum.max_margin = Some(fmt_ratio(&m));
                    sum.max_margin_graph = Some(row.graph6.clone());
                    best[j] = Some(m);
                }
            }
            rows.push(row);
        }
    }
    Ok(ScanReport {
        source: source.to_string(),
        checks: checks.iter().map(|c| c.to_string()).collect(),
        rows,
        summaries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalEntry {
    pub graph6: String,
    pub chi: usize,
    pub omega: usize,
    /// `chi / f(omega)` as `p/q`.
    pub ratio: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub entry: String,
    pub examined: usize,
    pub in_class: usize,
    /// Set when the budget stopped the search before the end of the input.
    pub partial: bool,
    pub top: Vec<ExtremalEntry>,
}

/// The `top` graphs of the class of `bound` with the largest ratio
/// `chi / f(omega)`, examining at most `budget` graphs in input order. Ties
/// keep input order.
pub fn extremal_search(
    graphs: &[Graph],
    bound: &LiteratureBound,
    top: usize,
    budget: usize,
    chi_budget: u64,
) -> Result<ExtremalResult> {
    let examined = graphs.len().min(budget);
    let hits: Vec<Option<(Rational, ExtremalEntry)>> = graphs[..examined]
        .par_iter()
        .map(|g| -> Result<Option<(Rational, ExtremalEntry)>> {
            if !bound.class.contains(g)? {
                return Ok(None);
            }
            let inv = exact_invariants_with_budget(g, chi_budget)?;
            Ok(bound.ratio(inv.chi, inv.omega).map(|r| {
                let entry = ExtremalEntry {
                    graph6: write_graph6(g),
                    chi: inv.chi,
                    omega: inv.omega,
                    ratio: fmt_ratio(&r),
                };
                (r, entry)
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let in_class = hits.iter().filter(|h| h.is_some()).count();
    let mut ranked: Vec<(Rational, ExtremalEntry)> = hits.into_iter().flatten().collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0));
    ranked.truncate(top);
    Ok(ExtremalResult {
        entry: bound.id.to_string(),
        examined,
        in_class,
        partial: examined < graphs.len(),
        top: ranked.into_iter().map(|(_, e)| e).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::parameter(
                "format",
                format!("expected json or csv, got `{text}`"),
            )),
        }
    }
}

/// Column order of the CSV report.
pub const CSV_HEADER: [&str; 10] = [
    "index", "graph6", "n", "chi", "omega", "alpha", "check", "verdict", "margin", "detail",
];

pub fn to_json(report: &ScanReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialise");
    text.push('\n');
    text
}

pub fn to_csv(report: &ScanReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &report.rows {
        w.write_record([
            r.index.to_string(),
            r.graph6.clone(),
            r.n.to_string(),
            opt(r.chi),
            opt(r.omega),
            opt(r.alpha),
            r.check.clone(),
            r.verdict.to_string(),
            r.margin.clone().unwrap_or_default(),
            r.detail.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn render(report: &ScanReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    }
}

pub fn write_report(report: &ScanReport, format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = render(report, format);
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    file.write_all(text.as_bytes())
        .map_err(|e| Error::io(path.display().to_string(), e))
}
