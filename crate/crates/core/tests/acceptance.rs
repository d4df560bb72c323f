//! Acceptance criteria, one line of output each. Exits nonzero if any fails.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use precur::arith::{int, rat, series_expand_quadratic_power, QuadScalar, Rational, TruncatedSeries};
use precur::hypergeom::{gauss_2f1_algebraic, gauss_2f1_condition, hypergeom_globally_bounded, order1_condition, GaussParams};
use precur::integral::{reduce_integral, IntegralData, IntegralSpec};
use precur::order2::{analyze_case, CaseVerdict};
use precur::probes::{
    almost_integrality_probe, apery_small, apery_uniqueness_probe, guess_annihilator, klazar_luca_d_probe,
    primes_up_to, quadratic_power_integral, unroll_apery_small,
};
use precur::recurrence::{fixtures, InitialPair, Order2Rec};

/// Exact arithmetic throughout: every comparison below is equality.
const TOLERANCE: i64 = 0;
const PROBE_DEPTH: usize = 200;
const PRIME_THRESHOLD: u64 = 50;
const GUESS_DEGREE: usize = 4;
const GUESS_DEPTH: usize = 300;
const RANDOM_SPECS: usize = 500;
const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn line_case(rec: &Order2Rec, raw: Option<(i64, i64)>, canonical: (i64, i64)) -> Outcome {
    let a = analyze_case(rec).map_err(|e| e.to_string())?;
    let want = InitialPair::ints(canonical.0, canonical.1);
    ensure(a.verdict == CaseVerdict::Line(want.clone()), format!("verdict {:?}", a.verdict))?;
    if let Some((r0, r1)) = raw {
        ensure(a.raw_pair == Some(InitialPair::ints(r0, r1)), format!("raw pair {:?}", a.raw_pair))?;
    }
    let raw = a.raw_pair.map(|p| format!(", raw ({}, {})", p.s0, p.s1)).unwrap_or_default();
    Ok(format!("C3{raw}, canonical ({}, {})", canonical.0, canonical.1))
}

fn c1_motzkin() -> Outcome {
    line_case(&fixtures::motzkin(), Some((3, 3)), (1, 1))
}

fn c2_trinomial() -> Outcome {
    line_case(&fixtures::central_trinomial(), Some((1, 1)), (1, 1))
}

fn c3_schroeder() -> Outcome {
    let v = analyze_case(&fixtures::large_schroeder()).map_err(|e| e.to_string())?.verdict;
    ensure(v == CaseVerdict::AllAlgebraic, format!("verdict {v:?}"))?;
    Ok("C1".into())
}

fn c4_fully_transcendental() -> Outcome {
    let a = analyze_case(&fixtures::fully_transcendental()).map_err(|e| e.to_string())?;
    ensure(a.verdict == CaseVerdict::AllTranscendental, format!("verdict {:?}", a.verdict))?;
    let residues = |d: &Option<precur::integral::IntegralAnalysis>| match d.as_ref().map(|x| &x.data) {
        Some(IntegralData::Log(l)) => Ok((l.residue_alpha.clone(), l.residue_beta.clone())),
        other => Err(format!("expected residues, got {other:?}")),
    };
    let q = |x: Rational| QuadScalar::Rational(x);
    let (a1, b1) = residues(&a.i1)?;
    let (a2, b2) = residues(&a.i2)?;
    ensure(
        [a1, b1, a2, b2] == [q(rat(2, 27)), q(rat(-2, 27)), q(rat(7, 108)), q(rat(5, 27))],
        "residues differ",
    )?;
    let sys = a.system.ok_or("no combination system")?;
    ensure(sys.m == [[q(rat(5, 54)), q(rat(7, 27))], [q(rat(-16, 27)), q(rat(20, 27))]], format!("M = {:?}", sys.m))?;
    ensure(sys.det() == q(rat(2, 9)), format!("det {}", sys.det()))?;
    Ok("C2, residues 2/27 -2/27 7/108 5/27, det M = 2/9".into())
}

fn c5_quadratic_power_line() -> Outcome {
    let rec = fixtures::quadratic_power_line();
    line_case(&rec, None, (1, -5))?;
    let terms = rec.generate_terms(&InitialPair::ints(1, -5), PROBE_DEPTH).map_err(|e| e.to_string())?;
    let expected = series_expand_quadratic_power(&int(2), &int(9), &rat(-5, 2), PROBE_DEPTH + 1);
    ensure(terms.as_slice() == expected.coeffs(), "terms differ from the expansion")?;
    ensure(terms.iter().all(|t| t.is_integer()), "non-integral term")?;
    ensure(quadratic_power_integral(&BigInt::from(2), &BigInt::from(9), &rat(-5, 2)), "integrality criterion false")?;
    Ok(format!("C3 (1, -5), {} integral terms match the expansion", terms.len()))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        if r != int(0) {
            return r;
        }
    }
}

fn random_exponent(rng: &mut ChaCha8Rng, stratum: usize) -> Rational {
    match stratum {
        0 => loop {
            let q = rat(rng.gen_range(-20..=20), rng.gen_range(3..=6));
            if !q.is_integer() && !(&q * int(2)).is_integer() {
                return q;
            }
        },
        1 => rat(-3 - 2 * rng.gen_range(0..5), 2),
        _ => int(rng.gen_range(0..=5)),
    }
}

fn c6_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut counts = [0usize; 3];
    for i in 0..RANDOM_SPECS {
        let stratum = i % 3;
        let spec = IntegralSpec::new(rng.gen_range(0..=8), random_rational(&mut rng), random_rational(&mut rng), random_exponent(&mut rng, stratum))
            .map_err(|e| e.to_string())?;
        let cert = reduce_integral(&spec).map_err(|e| format!("{spec:?}: {e}"))?;
        ensure(cert.verify(&spec), format!("identity fails for {spec:?}"))?;
        counts[stratum] += 1;
    }
    Ok(format!("{RANDOM_SPECS} identities exact (generic {}, patched {}, natural {})", counts[0], counts[1], counts[2]))
}

fn bounded(rec: &Order2Rec, p: &InitialPair) -> Result<(bool, Option<usize>), String> {
    let terms = rec.generate_terms(p, PROBE_DEPTH).map_err(|e| e.to_string())?;
    let r = almost_integrality_probe(&terms, PRIME_THRESHOLD);
    Ok((r.looks_almost_integral(), r.first_bad_index))
}

fn annihilated(terms: Vec<Rational>) -> Result<Option<String>, String> {
    let s = TruncatedSeries::new(terms);
    let g = guess_annihilator(&s, GUESS_DEGREE, GUESS_DEGREE).map_err(|e| e.to_string())?;
    Ok(g.map(|g| g.to_string()))
}

fn c7_concordance() -> Outcome {
    let corpus = [
        ("motzkin", fixtures::motzkin()),
        ("central_trinomial", fixtures::central_trinomial()),
        ("large_schroeder", fixtures::large_schroeder()),
        ("fully_transcendental", fixtures::fully_transcendental()),
        ("quadratic_power_line", fixtures::quadratic_power_line()),
    ];
    let mut problems = Vec::new();
    let mut checked = 0;
    for (label, rec) in &corpus {
        let verdict = analyze_case(rec).map_err(|e| e.to_string())?.verdict;
        let algebraic: Vec<InitialPair> = match &verdict {
            CaseVerdict::Line(p) => {
                if !bounded(rec, p)?.0 {
                    problems.push(format!("{label}: line fails the probe"));
                }
                let off = if p.s0 == int(0) { InitialPair::ints(1, 0) } else { InitialPair::ints(0, 1) };
                if bounded(rec, &off)?.1.is_none() {
                    problems.push(format!("{label}: off-line pair shows no prime > {PRIME_THRESHOLD}"));
                }
                vec![p.clone()]
            }
            CaseVerdict::AllAlgebraic => vec![InitialPair::ints(1, 0), InitialPair::ints(0, 1)],
            CaseVerdict::AllTranscendental => {
                for p in [InitialPair::ints(1, 0), InitialPair::ints(0, 1)] {
                    if bounded(rec, &p)?.0 {
                        problems.push(format!("{label}: C2 but {p:?} looks bounded"));
                    }
                }
                vec![]
            }
            CaseVerdict::Unsupported(d) => {
                problems.push(format!("{label}: unsupported {d:?}"));
                vec![]
            }
        };
        for p in algebraic {
            checked += 1;
            let terms = rec.generate_terms(&p, GUESS_DEPTH - 1).map_err(|e| e.to_string())?;
            match annihilated(terms)? {
                Some(poly) => {
                    if *label == "motzkin" && poly != "x^2*y^2 + x*y - y + 1" {
                        problems.push(format!("motzkin: unexpected annihilator {poly}"));
                    }
                }
                None => problems.push(format!(
                    "{label}: no annihilator of degree <= {GUESS_DEGREE} per variable for ({}, {})",
                    p.s0, p.s1
                )),
            }
        }
    }
    let catalan = fixtures::catalan_shift();
    let terms = catalan.generate_terms(&int(1), GUESS_DEPTH - 1).map_err(|e| e.to_string())?;
    if !hypergeom_globally_bounded(&catalan) || annihilated(terms.clone())?.is_none() || !almost_integrality_probe(&terms, PRIME_THRESHOLD).looks_almost_integral() {
        problems.push("catalan_shift: order-1 verdict and oracles disagree".into());
    }
    if problems.is_empty() {
        Ok(format!("{checked} algebraic solutions annihilated, all probes concordant"))
    } else {
        Err(problems.join("; "))
    }
}

fn c8_klazar_luca() -> Outcome {
    let primes: Vec<u64> = primes_up_to(101).into_iter().filter(|&p| p > 3).collect();
    let res = klazar_luca_d_probe(&int(-2), &int(-3), 0, &primes).map_err(|e| e.to_string())?;
    let zeros: Vec<u64> = res.iter().filter(|r| r.residue == 0).map(|r| r.prime).collect();
    ensure(zeros.is_empty(), format!("d_(p-1) divisible by p for {zeros:?}"))?;
    Ok(format!("d_(p-1) mod p nonzero for all {} primes 3 < p <= 101", res.len()))
}

fn c9_apery() -> Outcome {
    let unrolled = unroll_apery_small(&int(1), &int(3), PROBE_DEPTH);
    for (n, x) in unrolled.iter().enumerate() {
        ensure(*x == Rational::from_integer(apery_small(n as u64)), format!("mismatch at n = {n}"))?;
    }
    let report = apery_uniqueness_probe(PROBE_DEPTH, PRIME_THRESHOLD, &[]);
    let (_, off) = &report.off_line[0];
    let idx = off.first_bad_index.ok_or("direction (0, 1) shows no large prime")?;
    ensure(report.standard.all_integral(), "standard direction not integral")?;
    Ok(format!("sum = recurrence for n <= {PROBE_DEPTH}; (0, 1) has a prime > {PRIME_THRESHOLD} at index {idx}"))
}

fn c10_hypergeom_grid() -> Outcome {
    let mut b0s: Vec<Rational> = (0..=6).map(int).collect();
    b0s.extend([rat(1, 2), rat(2, 3)]);
    let mut rs: Vec<Rational> = (-3..=3).map(int).collect();
    rs.extend([rat(1, 2), rat(-1, 2), rat(5, 3), rat(-5, 3)]);
    let mut n = 0;
    for b0 in &b0s {
        for r in &rs {
            let p = GaussParams { alpha: b0.clone(), beta: b0 - r, k: 1 };
            ensure(order1_condition(b0, r).is_some() == gauss_2f1_algebraic(&p), format!("routes disagree at b0 = {b0}, r = {r}"))?;
            ensure(gauss_2f1_condition(&p) != Some(4), format!("line 4 fires at b0 = {b0}, r = {r}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} grid points, routes agree, line 4 never fires"))
}

fn main() {
    assert_eq!(TOLERANCE, 0);
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("motzkin classification", c1_motzkin),
        ("central trinomial", c2_trinomial),
        ("large schroeder", c3_schroeder),
        ("fully transcendental example", c4_fully_transcendental),
        ("quadratic power line", c5_quadratic_power_line),
        ("reduction certificates", c6_certificates),
        ("decider/oracle concordance", c7_concordance),
        ("klazar-luca residues", c8_klazar_luca),
        ("apery", c9_apery),
        ("hypergeometric grid", c10_hypergeom_grid),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
