//! Command implementations shared by the binary and the tests.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use precur::arith::{fmt_rational, int, Rational, TruncatedSeries};
use precur::hypergeom::{gauss_2f1_condition, gauss_params, hypergeom_globally_bounded};
use precur::integral::{analyze_integral, IntegralAnalysis, IntegralData, IntegralError, IntegralSpec};
use precur::order2::{analyze_case, CaseVerdict, Order2Analysis};
use precur::probes::{almost_integrality_probe, guess_annihilator, AnnihilatorGuess, DenominatorReport, GuessError};
use precur::recurrence::{InitialPair, Order1Rec, Order2Rec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{r, DocumentError, Recurrence, RecurrenceDocument};
use crate::report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub depth: usize,
    pub prime_bound: u64,
    pub guess_deg_x: usize,
    pub guess_deg_y: usize,
    pub probe: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { depth: 200, prime_bound: 50, guess_deg_x: 4, guess_deg_y: 4, probe: false }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("the series is too short to guess: {0}")]
    Guess(#[from] GuessError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Integral(_) => EXIT_UNSUPPORTED,
            _ => EXIT_PARSE,
        }
    }
}

pub fn read_document(path: &Path) -> Result<RecurrenceDocument, RunError> {
    let text = fs::read_to_string(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
    let mut doc = RecurrenceDocument::parse(&text)?;
    if doc.label.is_none() {
        doc.label = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(doc)
}

fn pair_strings(p: &InitialPair) -> [String; 2] {
    [r(&p.s0), r(&p.s1)]
}

pub fn integral_report(a: &IntegralAnalysis) -> IntegralReport {
    let (certificate, residues) = match &a.data {
        IntegralData::None => (None, None),
        IntegralData::Certificate(c) => (
            Some(CertificateReport {
                c: r(&c.c),
                c_tilde: r(&c.c_tilde),
                poly: c.poly.coeffs().iter().map(r).collect(),
                patch_exponent: c.patch_exponent,
            }),
            None,
        ),
        IntegralData::Log(l) => (
            None,
            Some(ResidueReport {
                alpha: l.roots.alpha().to_string(),
                beta: l.roots.beta().to_string(),
                residue_alpha: l.residue_alpha.to_string(),
                residue_beta: l.residue_beta.to_string(),
            }),
        ),
    };
    IntegralReport {
        n: a.spec.n,
        a1: r(&a.spec.a1),
        a2: r(&a.spec.a2),
        q: r(&a.spec.q),
        verdict: format!("{:?}", a.verdict),
        rule: format!("{:?}", a.rule),
        certificate,
        residues,
    }
}

pub fn cmd_integral(n: usize, a1: Rational, a2: Rational, q: Rational) -> Result<IntegralReport, RunError> {
    let spec = IntegralSpec::new(n, a1, a2, q)?;
    Ok(integral_report(&analyze_integral(&spec)?))
}

fn order2_certificates(a: &Order2Analysis) -> Order2Certificates {
    Order2Certificates {
        branch: format!("{:?}", a.branch),
        q: r(&a.q),
        i1: a.i1.as_ref().map(integral_report),
        i2: a.i2.as_ref().map(integral_report),
        combination: a.system.as_ref().map(|s| CombinationReport {
            source: format!("{:?}", s.source),
            matrix: [
                [s.m[0][0].to_string(), s.m[0][1].to_string()],
                [s.m[1][0].to_string(), s.m[1][1].to_string()],
            ],
            det: s.det().to_string(),
        }),
        double_root_exponent: a.double_root_exponent,
    }
}

const PROBE_NOTE: &str =
    "one-sided heuristic: no large denominator prime at finite depth is evidence of global boundedness, not proof";

struct Job {
    initial: Vec<Rational>,
    expected: Expectation,
}

fn run_probe(terms: &[Rational], job: &Job, opts: &Options, summary: &mut ProbeSummary) {
    let report: DenominatorReport = almost_integrality_probe(terms, opts.prime_bound);
    let name = format!("({})", job.initial.iter().map(fmt_rational).collect::<Vec<_>>().join(", "));
    let series = TruncatedSeries::new(terms.to_vec());
    let guess: Result<Option<AnnihilatorGuess>, GuessError> = guess_annihilator(&series, opts.guess_deg_x, opts.guess_deg_y);
    let (status, annihilator) = match &guess {
        Ok(Some(g)) => (AnnihilatorStatus::Found, Some(g.to_string())),
        Ok(None) => (AnnihilatorStatus::NoneWithinBound, None),
        Err(_) => (AnnihilatorStatus::Skipped, None),
    };
    let bounded = report.looks_almost_integral();
    match job.expected {
        Expectation::Algebraic => {
            if !bounded {
                summary.disagreements.push(format!(
                    "{name}: declared algebraic but index {} has a denominator prime > {}",
                    report.first_bad_index.unwrap_or_default(),
                    opts.prime_bound
                ));
            }
            match status {
                AnnihilatorStatus::Found => {}
                AnnihilatorStatus::NoneWithinBound => summary.inconclusive.push(format!(
                    "{name}: no annihilator with degrees <= ({}, {})",
                    opts.guess_deg_x, opts.guess_deg_y
                )),
                AnnihilatorStatus::Skipped => summary.inconclusive.push(format!("{name}: series too short to guess")),
            }
        }
        Expectation::Transcendental => {
            if bounded {
                summary.disagreements.push(format!(
                    "{name}: declared transcendental but no denominator prime > {} up to depth {}",
                    opts.prime_bound,
                    terms.len() - 1
                ));
            }
            if let Some(p) = &annihilator {
                summary.disagreements.push(format!("{name}: declared transcendental but annihilated by {p}"));
            }
        }
    }
    summary.entries.push(ProbeEntry {
        initial: job.initial.iter().map(r).collect(),
        expected: job.expected,
        depth: terms.len() - 1,
        max_prime_seen: report.max_prime_seen,
        any_large_cofactor: report.any_large_cofactor,
        first_bad_index: report.first_bad_index,
        looks_almost_integral: bounded,
        annihilator_status: status,
        annihilator,
    });
}

fn new_summary(opts: &Options) -> ProbeSummary {
    ProbeSummary {
        note: PROBE_NOTE.into(),
        prime_threshold: opts.prime_bound,
        entries: Vec::new(),
        disagreements: Vec::new(),
        inconclusive: Vec::new(),
    }
}

fn probe_order2(rec: &Order2Rec, verdict: &CaseVerdict, opts: &Options) -> ProbeSummary {
    use Expectation::*;
    let e1 = InitialPair::ints(1, 0);
    let e2 = InitialPair::ints(0, 1);
    let jobs: Vec<(InitialPair, Expectation)> = match verdict {
        CaseVerdict::AllAlgebraic => vec![(e1, Algebraic), (e2, Algebraic)],
        CaseVerdict::AllTranscendental => vec![(e1, Transcendental), (e2, Transcendental)],
        CaseVerdict::Line(p) => {
            let off = if p.s0 == int(0) { e1 } else { e2 };
            vec![(p.clone(), Algebraic), (off, Transcendental)]
        }
        CaseVerdict::Unsupported(_) => vec![],
    };
    let mut summary = new_summary(opts);
    for (p, expected) in jobs {
        let terms = rec.generate_terms(&p, opts.depth).expect("b0 >= 0 keeps the leading coefficient nonzero");
        run_probe(&terms, &Job { initial: vec![p.s0, p.s1], expected }, opts, &mut summary);
    }
    summary
}

fn probe_order1(rec: &Order1Rec, bounded: bool, opts: &Options) -> ProbeSummary {
    let mut summary = new_summary(opts);
    let terms = rec.generate_terms(&int(1), opts.depth).expect("order-1 recurrences here never divide by zero");
    let expected = if bounded { Expectation::Algebraic } else { Expectation::Transcendental };
    run_probe(&terms, &Job { initial: vec![int(1)], expected }, opts, &mut summary);
    summary
}

pub fn cmd_decide(doc: &RecurrenceDocument, opts: &Options) -> Result<VerdictReport, RunError> {
    let mut report = VerdictReport {
        schema_version: REPORT_SCHEMA_VERSION,
        input: doc.clone(),
        normalized: Normalized { b0: String::new(), a1: String::new(), b1: String::new(), a2: None, b2: None },
        class: None,
        verdict: VerdictValue::Case(String::new()),
        canonical_pair: None,
        raw_pair: None,
        certificates: None,
        hypergeom: None,
        probes: None,
    };
    match doc.recurrence()? {
        Recurrence::Order1(rec) => {
            report.normalized = Normalized { b0: r(rec.b0()), a1: r(rec.a1()), b1: r(rec.b1()), a2: None, b2: None };
            let bounded = hypergeom_globally_bounded(&rec);
            let p = gauss_params(&rec);
            report.hypergeom =
                Some(HypergeomReport { alpha: r(&p.alpha), beta: r(&p.beta), k: p.k, condition: gauss_2f1_condition(&p) });
            report.verdict = VerdictValue::GloballyBounded(bounded);
            if opts.probe {
                report.probes = Some(probe_order1(&rec, bounded, opts));
            }
        }
        Recurrence::Order2(rec) => {
            report.normalized = Normalized {
                b0: r(rec.b0()),
                a1: r(rec.a1()),
                b1: r(rec.b1()),
                a2: Some(r(rec.a2())),
                b2: Some(r(rec.b2())),
            };
            let a = analyze_case(&rec).expect("decider accepts every constructed recurrence");
            report.class = Some(ClassReport {
                in_restricted_class: a.diagnostic.in_restricted_class,
                b2_expected: r(&a.diagnostic.b2_expected),
                b0_is_natural: a.diagnostic.b0_is_natural,
                reasons: a.diagnostic.reasons.iter().map(|s| s.to_string()).collect(),
            });
            report.verdict = VerdictValue::Case(a.verdict.tag().into());
            report.canonical_pair = a.verdict.line().map(pair_strings);
            report.raw_pair = a.raw_pair.as_ref().map(pair_strings);
            if a.diagnostic.in_restricted_class {
                report.certificates = Some(order2_certificates(&a));
            }
            if opts.probe {
                report.probes = Some(probe_order2(&rec, &a.verdict, opts));
            }
        }
    }
    Ok(report)
}

pub fn exit_code(report: &VerdictReport) -> i32 {
    if report.has_disagreement() {
        EXIT_DISAGREEMENT
    } else if report.is_unsupported() {
        EXIT_UNSUPPORTED
    } else {
        EXIT_OK
    }
}

/// Initial values from the flag, the document, or the basis vectors.
pub fn initial_values(doc: &RecurrenceDocument, flag: Option<&[Rational]>) -> Result<Vec<Vec<Rational>>, RunError> {
    if let Some(v) = flag {
        if v.len() != doc.order {
            return Err(DocumentError::Syntax { line: 0, message: format!("--init needs {} values", doc.order) }.into());
        }
        return Ok(vec![v.to_vec()]);
    }
    if let Some(v) = doc.initial_values()? {
        return Ok(vec![v]);
    }
    Ok(match doc.order {
        1 => vec![vec![int(1)]],
        _ => vec![vec![int(1), int(0)], vec![int(0), int(1)]],
    })
}

pub fn terms_for(doc: &RecurrenceDocument, init: &[Rational], depth: usize) -> Result<Vec<Rational>, RunError> {
    let terms = match doc.recurrence()? {
        Recurrence::Order1(rec) => rec.generate_terms(&init[0], depth),
        Recurrence::Order2(rec) => rec.generate_terms(&InitialPair::new(init[0].clone(), init[1].clone()), depth),
    };
    terms.map_err(|e| DocumentError::Recurrence(e).into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeOutput {
    pub initial: Vec<String>,
    pub depth: usize,
    pub prime_threshold: u64,
    pub max_prime_seen: u64,
    pub any_large_cofactor: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_bad_index: Option<usize>,
    pub looks_almost_integral: bool,
    /// Largest prime factor of each denominator; `null` above the trial bound.
    pub per_term_largest_prime: Vec<Option<u64>>,
    pub note: String,
}

pub fn cmd_probe(doc: &RecurrenceDocument, init: Option<&[Rational]>, opts: &Options) -> Result<Vec<ProbeOutput>, RunError> {
    use precur::probes::LargestPrime;
    initial_values(doc, init)?
        .into_iter()
        .map(|v| {
            let terms = terms_for(doc, &v, opts.depth)?;
            let rep = almost_integrality_probe(&terms, opts.prime_bound);
            Ok(ProbeOutput {
                initial: v.iter().map(r).collect(),
                depth: opts.depth,
                prime_threshold: opts.prime_bound,
                max_prime_seen: rep.max_prime_seen,
                any_large_cofactor: rep.any_large_cofactor,
                first_bad_index: rep.first_bad_index,
                looks_almost_integral: rep.looks_almost_integral(),
                per_term_largest_prime: rep
                    .per_term
                    .iter()
                    .map(|p| match p {
                        LargestPrime::Known(v) => Some(*v),
                        LargestPrime::AboveTrialBound => None,
                    })
                    .collect(),
                note: PROBE_NOTE.into(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessOutput {
    pub initial: Vec<String>,
    pub deg_x: usize,
    pub deg_y: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    /// `coefficients[j][i]` multiplies `xⁱ yʲ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<String>>>,
    pub verified_order: usize,
}

pub fn cmd_guess(doc: &RecurrenceDocument, init: Option<&[Rational]>, opts: &Options) -> Result<Vec<GuessOutput>, RunError> {
    initial_values(doc, init)?
        .into_iter()
        .map(|v| {
            let terms = terms_for(doc, &v, opts.depth)?;
            let series = TruncatedSeries::new(terms);
            let g = guess_annihilator(&series, opts.guess_deg_x, opts.guess_deg_y)?;
            Ok(GuessOutput {
                initial: v.iter().map(r).collect(),
                deg_x: opts.guess_deg_x,
                deg_y: opts.guess_deg_y,
                polynomial: g.as_ref().map(|g| g.to_string()),
                coefficients: g.as_ref().map(|g| g.coeffs.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect()),
                verified_order: g.map_or(series.order(), |g| g.verified_order),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_pair: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub disagreement: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerdictReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub schema_version: u32,
    pub entries: Vec<CorpusEntry>,
    pub errors: usize,
    pub disagreements: usize,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements > 0 {
            EXIT_DISAGREEMENT
        } else if self.errors > 0 {
            EXIT_PARSE
        } else {
            EXIT_OK
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match (&e.error, e.disagreement) {
                (Some(err), _) => format!("error: {err}"),
                (None, true) => "DISAGREEMENT".into(),
                (None, false) => "ok".into(),
            };
            let pair = e.canonical_pair.as_ref().map(|[a, b]| format!("({a}, {b})")).unwrap_or_else(|| "-".into());
            out += &format!("{:<24} {:<14} {:<12} {status}\n", e.label, e.verdict.as_deref().unwrap_or("-"), pair);
        }
        out += &format!("{} entries, {} errors, {} disagreements\n", self.entries.len(), self.errors, self.disagreements);
        out
    }
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let io = |source| RunError::Io { path: dir.to_path_buf(), source };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "rec" || x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn corpus_entry(path: &Path, opts: &Options) -> CorpusEntry {
    let file = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let outcome = catch_unwind(AssertUnwindSafe(|| read_document(path).and_then(|doc| cmd_decide(&doc, opts))));
    let result = match outcome {
        Ok(r) => r.map_err(|e| e.to_string()),
        Err(_) => Err("internal error while deciding".to_string()),
    };
    match result {
        Ok(rep) => CorpusEntry {
            label: rep.input.label.clone().unwrap_or(stem),
            file,
            verdict: Some(rep.verdict_label()),
            canonical_pair: rep.canonical_pair.clone(),
            error: None,
            disagreement: rep.has_disagreement(),
            report: Some(rep),
        },
        Err(e) => CorpusEntry { label: stem, file, verdict: None, canonical_pair: None, error: Some(e), disagreement: false, report: None },
    }
}

/// Decides every `.rec`/`.json` document in `dir`; entries sorted by label.
pub fn cmd_corpus(dir: &Path, opts: &Options, jobs: Option<usize>) -> Result<CorpusSummary, RunError> {
    let files = corpus_files(dir)?;
    let mut entries = precur::batch::with_jobs(jobs, || precur::batch::map(&files, |p| corpus_entry(p, opts)));
    entries.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.file.cmp(&b.file)));
    let errors = entries.iter().filter(|e| e.error.is_some()).count();
    let disagreements = entries.iter().filter(|e| e.disagreement).count();
    Ok(CorpusSummary { schema_version: REPORT_SCHEMA_VERSION, entries, errors, disagreements })
}

/// Writes `<label>.json` per decided entry and `summary.json` into `out`.
pub fn write_corpus_reports(summary: &CorpusSummary, out: &Path) -> Result<(), RunError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    fs::create_dir_all(out).map_err(io(out))?;
    for e in &summary.entries {
        if let Some(rep) = &e.report {
            let path = out.join(format!("{}.json", e.label));
            fs::write(&path, to_json(rep)).map_err(io(&path))?;
        }
    }
    let slim = CorpusSummary {
        entries: summary.entries.iter().map(|e| CorpusEntry { report: None, ..e.clone() }).collect(),
        ..summary.clone()
    };
    let path = out.join("summary.json");
    fs::write(&path, to_json(&slim)).map_err(io(&path))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}
