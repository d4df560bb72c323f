//! Order-2 decider for the restricted class
//! `(n+b₀)sₙ + (a₁n+b₁)sₙ₋₁ + (a₂n+b₂)sₙ₋₂ = 0`, `b₂ = (2a₂b₁ − a₁a₂b₀)/a₁`,
//! `b₀ ∈ ℕ`.
//!
//! The generating function solves
//! `x·g·S′ + (b₀ + (a₁+b₁)x + (2a₂+b₂)x²)·S = R(x)` with
//! `R = b₀s₀ + ((1+b₀)s₁ + (a₁+b₁)s₀)x`, hence
//! `S = x^{−b₀} g^{−1−q} (r₀·I₁ + r₁·I₂ + c)` where `q = −b₀ + b₁/a₁`,
//! `(r₀, r₁)` are the coefficients of `R`, `I₁ = ∫x^{b₀−1}g^q` and
//! `I₂ = ∫x^{b₀}g^q`. Everything reduces to how the transcendental parts of
//! `I₁` and `I₂` combine.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{binomial, int, is_natural, is_neg_natural, quad_root_pair, rat, to_i64, QuadScalar, Rational};
use crate::integral::{analyze_integral, IntegralAnalysis, IntegralData, IntegralError, IntegralSpec, IntegralVerdict};
use crate::linalg::{normalize_sign, rational_nullspace};
use crate::recurrence::{check_restricted_class, ClassDiagnostic, InitialPair, Order2Rec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Order2Error {
    #[error("I1 and I2 carry different kinds of certificate")]
    MismatchedCertificates,
    #[error("combination requires both integrals to be transcendental")]
    NotTranscendental,
    #[error(transparent)]
    Integral(#[from] IntegralError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseVerdict {
    /// Every solution has an algebraic generating function.
    AllAlgebraic,
    /// Only the zero solution does.
    AllTranscendental,
    /// Exactly the multiples of this initial pair do.
    Line(InitialPair),
    Unsupported(ClassDiagnostic),
}

impl CaseVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            CaseVerdict::AllAlgebraic => "C1",
            CaseVerdict::AllTranscendental => "C2",
            CaseVerdict::Line(_) => "C3",
            CaseVerdict::Unsupported(_) => "Unsupported",
        }
    }

    pub fn line(&self) -> Option<&InitialPair> {
        match self {
            CaseVerdict::Line(p) => Some(p),
            _ => None,
        }
    }
}

/// Coprime integers, first nonzero entry positive.
pub fn canonical_pair(p: &InitialPair) -> InitialPair {
    assert!(!p.is_zero(), "a line needs a nonzero direction");
    let mut v = crate::arith::primitive_integer_vector(&[p.s0.clone(), p.s1.clone()]);
    normalize_sign(&mut v);
    InitialPair::new(Rational::from_integer(v[0].clone()), Rational::from_integer(v[1].clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CombinationSource {
    /// Coefficients `c` of `∫g^q`.
    Generic,
    /// Coefficients `c̃` of `∫x^e g^q`.
    Patched,
    /// Residues at the two roots.
    LogResidues,
}

/// `M·(s₀, s₁)ᵀ` lists the transcendental coefficients of `S`; the rows of
/// [`CombinationSource::Generic`] and [`CombinationSource::Patched`]
/// systems have a single transcendental function, so row 2 is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationSystem {
    pub m: [[QuadScalar; 2]; 2],
    pub source: CombinationSource,
}

impl CombinationSystem {
    pub fn det(&self) -> QuadScalar {
        let [[a, b], [c, d]] = &self.m;
        a.times(d).plus(&b.times(c).scale(&int(-1)))
    }

    /// Rational constraints on `(s₀, s₁)`: each row split into its rational
    /// and radical parts.
    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        let mut rows = Vec::new();
        for row in &self.m {
            let (u0, v0) = row[0].parts();
            let (u1, v1) = row[1].parts();
            rows.push(vec![u0, u1]);
            rows.push(vec![v0, v1]);
        }
        rows
    }

    /// Initial pairs whose solution is algebraic (up to two basis vectors).
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        rational_nullspace(&self.rational_rows(), 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order2Branch {
    Unsupported,
    DoubleRoot,
    ZeroB0,
    Table,
}

/// Everything the decider computed on its way to a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order2Analysis {
    pub verdict: CaseVerdict,
    pub diagnostic: ClassDiagnostic,
    pub branch: Order2Branch,
    /// The pair before canonicalization, in the form the derivation produces.
    pub raw_pair: Option<InitialPair>,
    pub q: Rational,
    pub i1: Option<IntegralAnalysis>,
    pub i2: Option<IntegralAnalysis>,
    pub system: Option<CombinationSystem>,
    /// `−1 − 2q` under a double root, when it is an integer.
    pub double_root_exponent: Option<i64>,
}

/// `(b₀+1)·t, −(b₀·u + (a₁+b₁)·t)` annihilates `b₀u·s₀ + t·((1+b₀)s₁ + (a₁+b₁)s₀)`.
fn kernel_of_weights(rec: &Order2Rec, u: &Rational, t: &Rational) -> InitialPair {
    let b0 = rec.b0();
    let ab = rec.a1() + rec.b1();
    let pair = InitialPair::new((b0 + int(1)) * t, -(b0 * u + &ab * t));
    // r₀·u + r₁·t must vanish along the pair.
    let r0 = b0 * &pair.s0;
    let r1 = (int(1) + b0) * &pair.s1 + &ab * &pair.s0;
    assert!((r0 * u + r1 * t).is_zero());
    pair
}

fn line(raw: InitialPair) -> (CaseVerdict, Option<InitialPair>) {
    (CaseVerdict::Line(canonical_pair(&raw)), Some(raw))
}

/// Combines the transcendental parts of `I₁` and `I₂`, both transcendental.
pub fn combine_transcendental(
    rec: &Order2Rec,
    i1: &IntegralAnalysis,
    i2: &IntegralAnalysis,
) -> Result<(CaseVerdict, Option<InitialPair>, CombinationSystem), Order2Error> {
    if i1.verdict != IntegralVerdict::Transcendental || i2.verdict != IntegralVerdict::Transcendental {
        return Err(Order2Error::NotTranscendental);
    }
    if i1.spec.q != i2.spec.q {
        return Err(Order2Error::MismatchedCertificates);
    }
    let b0 = rec.b0();
    let ab = rec.a1() + rec.b1();
    let zero = || QuadScalar::Rational(Rational::zero());
    let row = |u: &QuadScalar, t: &QuadScalar| [u.scale(b0).plus(&t.scale(&ab)), t.scale(&(b0 + int(1)))];

    match (&i1.data, &i2.data) {
        (IntegralData::Certificate(c1), IntegralData::Certificate(c2)) => {
            let patched = i1.spec.patch_exponent().is_some();
            let (u, t, source) = if patched {
                (&c1.c_tilde, &c2.c_tilde, CombinationSource::Patched)
            } else {
                (&c1.c, &c2.c, CombinationSource::Generic)
            };
            let (uq, tq) = (QuadScalar::Rational(u.clone()), QuadScalar::Rational(t.clone()));
            let system = CombinationSystem { m: [row(&uq, &tq), [zero(), zero()]], source };
            let raw = kernel_of_weights(rec, u, t);
            let (v, raw) = line(raw);
            Ok((v, raw, system))
        }
        (IntegralData::Log(l1), IntegralData::Log(l2)) => {
            let system = CombinationSystem {
                m: [row(&l1.residue_alpha, &l2.residue_alpha), row(&l1.residue_beta, &l2.residue_beta)],
                source: CombinationSource::LogResidues,
            };
            if let (QuadScalar::Quadratic(_), QuadScalar::Quadratic(_)) = (&l1.residue_alpha, &l2.residue_alpha) {
                assert_eq!(system.m[1][0], system.m[0][0].conj());
                assert_eq!(system.m[1][1], system.m[0][1].conj());
            }
            let kernel = system.kernel();
            assert_eq!(kernel.is_empty(), !system.det().is_zero());
            let verdict = match kernel.len() {
                0 => return Ok((CaseVerdict::AllTranscendental, None, system)),
                1 => kernel[0].clone(),
                _ => unreachable!("a transcendental integral has a nonzero residue"),
            };
            let raw = InitialPair::new(Rational::from_integer(verdict[0].clone()), Rational::from_integer(verdict[1].clone()));
            let (v, raw) = line(raw);
            Ok((v, raw, system))
        }
        _ => Err(Order2Error::MismatchedCertificates),
    }
}

/// Double root `g = (1 + a·x)²`, `a = a₁/2`. With `u = 1 + ax` the integrand
/// `R·x^{b₀−1}·u^{2q}` is a Laurent polynomial in `u` times `u^{2q}`; a log
/// appears iff the `u^{e}` coefficient of `R·x^{b₀−1}` is nonzero,
/// `e = −1 − 2q`. For `e ∈ {0,…,b₀}` that coefficient is
/// `r₀·a·C(b₀−1, e) − r₁·C(b₀, e)` up to a nonzero factor.
fn decide_double_root(rec: &Order2Rec, q: &Rational) -> (CaseVerdict, Option<InitialPair>, Option<i64>) {
    let e = -int(2) * q - int(1);
    let e_int = to_i64(&e);
    let b0 = to_i64(rec.b0()).expect("b0 is natural");
    let Some(ei) = e_int.filter(|&ei| (0..=b0).contains(&ei)) else {
        return (CaseVerdict::AllAlgebraic, None, e_int);
    };
    let raw = if b0 == 0 {
        // The integrand is r₁·u^{2q}; only r₁ matters.
        kernel_of_weights(rec, &Rational::zero(), &Rational::one())
    } else {
        let a = rec.a1() / int(2);
        let w0 = &a * Rational::from_integer(binomial(b0 as u64 - 1, ei as u64));
        let w1 = -Rational::from_integer(binomial(b0 as u64, ei as u64));
        kernel_of_weights(rec, &w0, &w1)
    };
    let (v, raw) = line(raw);
    (v, raw, e_int)
}

pub fn analyze_case(rec: &Order2Rec) -> Result<Order2Analysis, Order2Error> {
    let diagnostic = check_restricted_class(rec);
    let q = -rec.b0() + rec.b1() / rec.a1();
    let mut out = Order2Analysis {
        verdict: CaseVerdict::AllAlgebraic,
        diagnostic: diagnostic.clone(),
        branch: Order2Branch::Table,
        raw_pair: None,
        q: q.clone(),
        i1: None,
        i2: None,
        system: None,
        double_root_exponent: None,
    };
    if !diagnostic.in_restricted_class {
        out.verdict = CaseVerdict::Unsupported(diagnostic);
        out.branch = Order2Branch::Unsupported;
        return Ok(out);
    }
    let roots = quad_root_pair(rec.a1(), rec.a2()).expect("a1, a2 nonzero");
    if roots.is_double() {
        let (v, raw, e) = decide_double_root(rec, &q);
        out.branch = Order2Branch::DoubleRoot;
        out.verdict = v;
        out.raw_pair = raw;
        out.double_root_exponent = e;
        return Ok(out);
    }
    if rec.b0().is_zero() {
        out.branch = Order2Branch::ZeroB0;
        // q = b₁/a₁ and S is g^{−1−q}(r₁∫g^q + c): the base case decides.
        if is_natural(&q) || is_neg_natural(&(&q + rat(3, 2))) {
            out.verdict = CaseVerdict::AllAlgebraic;
        } else {
            let raw = kernel_of_weights(rec, &Rational::zero(), &Rational::one());
            let (v, raw) = line(raw);
            out.verdict = v;
            out.raw_pair = raw;
        }
        return Ok(out);
    }

    let b0 = to_i64(rec.b0()).expect("b0 is natural") as usize;
    let i1 = analyze_integral(&IntegralSpec::new(b0 - 1, rec.a1().clone(), rec.a2().clone(), q.clone())?)?;
    let i2 = analyze_integral(&IntegralSpec::new(b0, rec.a1().clone(), rec.a2().clone(), q.clone())?)?;
    use IntegralVerdict::*;
    match (i1.verdict, i2.verdict) {
        (Algebraic, Algebraic) => out.verdict = CaseVerdict::AllAlgebraic,
        (Algebraic, Transcendental) => {
            let raw = kernel_of_weights(rec, &Rational::zero(), &Rational::one());
            let (v, raw) = line(raw);
            out.verdict = v;
            out.raw_pair = raw;
        }
        (Transcendental, Algebraic) => {
            let raw = InitialPair::ints(0, 1);
            let (v, raw) = line(raw);
            out.verdict = v;
            out.raw_pair = raw;
        }
        (Transcendental, Transcendental) => {
            let (v, raw, system) = combine_transcendental(rec, &i1, &i2)?;
            out.verdict = v;
            out.raw_pair = raw;
            out.system = Some(system);
        }
    }
    out.i1 = Some(i1);
    out.i2 = Some(i2);
    Ok(out)
}

pub fn decide_case(rec: &Order2Rec) -> CaseVerdict {
    analyze_case(rec).expect("restricted-class inputs always decide").verdict
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::fixtures;
    use crate::recurrence::LinearCoeff;
    use proptest::prelude::*;

    fn pair(s0: i64, s1: i64) -> InitialPair {
        InitialPair::ints(s0, s1)
    }

    #[test]
    fn motzkin_is_a_line() {
        let a = analyze_case(&fixtures::motzkin()).unwrap();
        assert_eq!(a.verdict, CaseVerdict::Line(pair(1, 1)));
        assert_eq!(a.raw_pair, Some(pair(3, 3)));
        assert_eq!(a.q, rat(-3, 2));
        assert_eq!(a.i1.unwrap().verdict, IntegralVerdict::Algebraic);
        assert_eq!(a.i2.unwrap().verdict, IntegralVerdict::Transcendental);
    }

    #[test]
    fn central_trinomial_is_a_line() {
        let a = analyze_case(&fixtures::central_trinomial()).unwrap();
        assert_eq!(a.branch, Order2Branch::ZeroB0);
        assert_eq!(a.verdict, CaseVerdict::Line(pair(1, 1)));
        assert_eq!(a.raw_pair, Some(pair(1, 1)));
    }

    #[test]
    fn schroeder_is_all_algebraic() {
        assert_eq!(decide_case(&fixtures::large_schroeder()), CaseVerdict::AllAlgebraic);
    }

    #[test]
    fn fully_transcendental_example() {
        let a = analyze_case(&fixtures::fully_transcendental()).unwrap();
        assert_eq!(a.verdict, CaseVerdict::AllTranscendental);
        let sys = a.system.unwrap();
        assert_eq!(sys.source, CombinationSource::LogResidues);
        let r = |x: Rational| QuadScalar::Rational(x);
        assert_eq!(sys.m, [[r(rat(5, 54)), r(rat(7, 27))], [r(rat(-16, 27)), r(rat(20, 27))]]);
        assert_eq!(sys.det(), r(rat(2, 9)));
    }

    #[test]
    fn quadratic_power_line() {
        let a = analyze_case(&fixtures::quadratic_power_line()).unwrap();
        assert_eq!(a.verdict, CaseVerdict::Line(pair(1, -5)));
    }

    #[test]
    fn out_of_class_is_unsupported() {
        let rec = Order2Rec::from_ints(2, -2, -1, -3, 4).unwrap();
        match decide_case(&rec) {
            CaseVerdict::Unsupported(d) => assert_eq!(d.reasons, vec![crate::recurrence::REASON_B2_MISMATCH]),
            v => panic!("{v:?}"),
        }
        let rec = Order2Rec::new(rat(1, 2), int(1), int(1), int(1), rat(3, 2)).unwrap();
        assert!(matches!(decide_case(&rec), CaseVerdict::Unsupported(_)));
    }

    #[test]
    fn generic_combination_with_equal_weights() {
        // c_I = c_II gives a pair proportional to (b₀+1, −(b₀+a₁+b₁)).
        let rec = Order2Rec::from_ints(2, 1, 3, 1, 0).unwrap();
        let p = kernel_of_weights(&rec, &rat(2, 7), &rat(2, 7));
        assert_eq!(canonical_pair(&p), canonical_pair(&pair(3, -(2 + 1 + 3))));
    }

    #[test]
    fn conjugate_log_system() {
        // g = 1 + x + x², q = −1.
        let rec = Order2Rec::from_ints(1, 1, 0, 1, -1).unwrap();
        assert!(check_restricted_class(&rec).in_restricted_class);
        let a = analyze_case(&rec).unwrap();
        let sys = a.system.expect("both integrals have logs");
        assert_eq!(sys.source, CombinationSource::LogResidues);
        assert_eq!(sys.m[1][0], sys.m[0][0].conj());
        assert_eq!(sys.m[1][1], sys.m[0][1].conj());
        for k in sys.kernel() {
            assert_eq!(k.len(), 2);
        }
    }

    /// Restricted-class recurrences with `q ∈ −ℕ*` whose log system is singular.
    fn singular_log_fixtures() -> Vec<(Order2Rec, InitialPair)> {
        let mut found = Vec::new();
        for b0 in 1i64..5 {
            for a1 in -4i64..=4 {
                for a2 in -4i64..=4 {
                    for q in [-1i64, -2] {
                        if a1 == 0 || a2 == 0 || a1 * a1 == 4 * a2 {
                            continue;
                        }
                        let b1 = a1 * (q + b0);
                        let b2 = rat(2 * a2 * b1 - a1 * a2 * b0, a1);
                        let rec = Order2Rec::new(int(b0), int(a1), int(b1), int(a2), b2).unwrap();
                        let a = analyze_case(&rec).unwrap();
                        if let (Some(sys), CaseVerdict::Line(p)) = (&a.system, &a.verdict) {
                            if sys.source == CombinationSource::LogResidues {
                                found.push((rec, p.clone()));
                            }
                        }
                    }
                }
            }
        }
        found
    }

    #[test]
    fn singular_log_systems_exist_and_kernel_is_annihilated() {
        let found = singular_log_fixtures();
        assert!(!found.is_empty());
        for (rec, p) in &found {
            let sys = analyze_case(rec).unwrap().system.unwrap();
            assert!(sys.det().is_zero());
            for row in &sys.m {
                let v = row[0].scale(&p.s0).plus(&row[1].scale(&p.s1));
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn double_root_branch() {
        // g = (1 − x)², b₀ = 1, q = −1: line through (1, 1), the all-ones sequence.
        let rec = Order2Rec::from_ints(1, -2, 0, 1, -1).unwrap();
        let a = analyze_case(&rec).unwrap();
        assert_eq!(a.branch, Order2Branch::DoubleRoot);
        assert_eq!(a.verdict, CaseVerdict::Line(pair(1, 1)));
        let terms = rec.generate_terms(&pair(1, 1), 30).unwrap();
        assert!(terms.iter().all(|t| t == &int(1)));
        // b₀ = 0 with 2q ∉ ℤ: no log.
        let rec = Order2Rec::new(int(0), int(-2), rat(-2, 3), int(1), rat(2, 3)).unwrap();
        assert!(check_restricted_class(&rec).in_restricted_class);
        assert_eq!(decide_case(&rec), CaseVerdict::AllAlgebraic);
    }

    #[test]
    fn combine_rejects_mismatched_data() {
        let a = analyze_case(&fixtures::fully_transcendental()).unwrap();
        let i1 = a.i1.unwrap();
        let m = analyze_case(&fixtures::motzkin()).unwrap();
        let i2m = m.i2.unwrap();
        assert!(combine_transcendental(&fixtures::fully_transcendental(), &i1, &i2m).is_err());
        let i1m = m.i1.unwrap();
        assert_eq!(
            combine_transcendental(&fixtures::motzkin(), &i1m, &i2m),
            Err(Order2Error::NotTranscendental)
        );
    }

    proptest! {
        #[test]
        fn scaling_invariance(which in 0usize..5, num in 1i64..9, den in 1i64..9, neg in any::<bool>()) {
            let rec = [
                fixtures::motzkin(),
                fixtures::central_trinomial(),
                fixtures::large_schroeder(),
                fixtures::fully_transcendental(),
                fixtures::quadratic_power_line(),
            ][which].clone();
            let k = rat(if neg { -num } else { num }, den);
            let [l, m, t] = rec.coefficients();
            let sc = |c: &LinearCoeff| LinearCoeff::new(&c.slope * &k, &c.offset * &k);
            let scaled = Order2Rec::normalize(&sc(&l), &sc(&m), &sc(&t)).unwrap();
            prop_assert_eq!(decide_case(&scaled), decide_case(&rec));
        }

        #[test]
        fn lines_are_canonical(b0 in 0i64..4, a1 in -4i64..5, a2 in -4i64..5, qn in -6i64..6, qd in 1i64..4) {
            prop_assume!(a1 != 0 && a2 != 0);
            let q = rat(qn, qd);
            let b1 = int(a1) * (&q + int(b0));
            let b2 = (int(2 * a2) * &b1 - int(a1 * a2 * b0)) / int(a1);
            let rec = Order2Rec::new(int(b0), int(a1), b1, int(a2), b2).unwrap();
            if let CaseVerdict::Line(p) = decide_case(&rec) {
                prop_assert!(p.s0.is_integer() && p.s1.is_integer() && !p.is_zero());
                prop_assert_eq!(canonical_pair(&p), p);
            }
        }
    }
}
