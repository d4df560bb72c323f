//! Order-2 verdicts against the denominator probe on a grid of small
//! restricted-class recurrences.

use precur::arith::{int, rat, Rational};
use precur::order2::{analyze_case, canonical_pair, decide_case, CaseVerdict};
use precur::probes::{almost_integrality_probe, DEFAULT_THRESHOLD};
use precur::recurrence::{check_restricted_class, InitialPair, Order2Rec};

const DEPTH: usize = 200;

fn restricted(b0: i64, a1: i64, a2: i64, q: &Rational) -> Order2Rec {
    let b1 = int(a1) * (q + int(b0));
    let b2 = (int(2 * a2) * &b1 - int(a1 * a2 * b0)) / int(a1);
    let rec = Order2Rec::new(int(b0), int(a1), b1, int(a2), b2).unwrap();
    assert!(check_restricted_class(&rec).in_restricted_class);
    rec
}

fn bounded(rec: &Order2Rec, p: &InitialPair) -> bool {
    let t = rec.generate_terms(p, DEPTH).unwrap();
    almost_integrality_probe(&t, DEFAULT_THRESHOLD).looks_almost_integral()
}

fn check(rec: &Order2Rec) -> Result<(), String> {
    let v = analyze_case(rec).unwrap().verdict;
    let e1 = InitialPair::ints(1, 0);
    let e2 = InitialPair::ints(0, 1);
    let ok = match &v {
        CaseVerdict::AllAlgebraic => bounded(rec, &e1) && bounded(rec, &e2),
        CaseVerdict::AllTranscendental => !bounded(rec, &e1) && !bounded(rec, &e2) && !bounded(rec, &InitialPair::ints(1, 1)),
        CaseVerdict::Line(p) => {
            let off = if p.s0 == int(0) { &e1 } else { &e2 };
            bounded(rec, p) && !bounded(rec, off)
        }
        CaseVerdict::Unsupported(_) => false,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{rec:?} -> {v:?}"))
    }
}

fn run(recs: Vec<Order2Rec>) {
    let failures: Vec<String> = recs.iter().filter_map(|r| check(r).err()).collect();
    assert!(failures.is_empty(), "{} disagreements:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn double_root_grid() {
    let mut recs = Vec::new();
    for (a1, a2) in [(-2, 1), (2, 1), (-4, 4)] {
        for b0 in 0..4 {
            for q in [rat(-1, 2), int(-1), rat(-3, 2), int(-2), rat(-5, 2), rat(1, 2), int(1), rat(1, 3)] {
                let rec = restricted(b0, a1, a2, &q);
                if let CaseVerdict::Line(p) = decide_case(&rec) {
                    assert_eq!(p, canonical_pair(&InitialPair::ints(2, -a1)));
                }
                recs.push(rec);
            }
        }
    }
    run(recs);
}

#[test]
fn distinct_root_grid() {
    let mut recs = Vec::new();
    for (a1, a2) in [(-2, -3), (-1, -2), (1, 1), (-6, 1), (2, 9), (-3, 2)] {
        for b0 in 0..4 {
            for q in [rat(-1, 2), int(-1), rat(-3, 2), int(-2), rat(-5, 2), rat(1, 2), int(1), rat(1, 3), rat(-2, 3)] {
                recs.push(restricted(b0, a1, a2, &q));
            }
        }
    }
    run(recs);
}
