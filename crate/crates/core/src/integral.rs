//! Algebraicity of `∫ xⁿ (1 + a₁x + a₂x²)^q dx`.
//!
//! Three kinds of evidence back a verdict:
//!
//! * a [`ReductionCertificate`] `(c, c̃, C)` with
//!   `xⁿ = c + c̃·x^e + C′·g + (q+1)·g′·C`, `g = 1 + a₁x + a₂x²`,
//!   `e = −2q−1`, so that `∫xⁿg^q = c∫g^q + c̃∫x^e g^q + C·g^{q+1}`;
//! * the logarithmic residues of the partial-fraction expansion when
//!   `q ∈ −ℕ*`;
//! * direct rules (natural exponents, the base case `n = 0`, the
//!   `n = −2q−1` obstruction, and the double-root substitution).

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{
    binomial, fmt_rational, gen_binomial, int, is_natural, is_neg_natural, is_neg_positive_natural, quad_root_pair,
    to_i64, Field, QuadScalar, Rational, RootPair, UniPoly,
};
use crate::linalg::solve_unique;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralError {
    #[error("a1 and a2 must both be nonzero")]
    ZeroCoefficient,
    #[error("q = {0} is a negative integer; use the partial-fraction route")]
    NegativeIntegerExponent(String),
    #[error("q = {0} is not a negative integer")]
    NotNegativeInteger(String),
    #[error("the radicand has a double root")]
    DoubleRoot,
    #[error("coefficient system for n = {n}, q = {q} has no unique solution")]
    Unsolvable { n: usize, q: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralSpec {
    pub n: usize,
    pub a1: Rational,
    pub a2: Rational,
    pub q: Rational,
}

impl IntegralSpec {
    pub fn new(n: usize, a1: Rational, a2: Rational, q: Rational) -> Result<Self, IntegralError> {
        if a1.is_zero() || a2.is_zero() {
            return Err(IntegralError::ZeroCoefficient);
        }
        Ok(Self { n, a1, a2, q })
    }

    /// `1 + a₁x + a₂x²`
    pub fn radicand(&self) -> UniPoly {
        UniPoly::new(vec![Rational::one(), self.a1.clone(), self.a2.clone()])
    }

    /// `e = −2q−1` when `q + 3/2 ∈ −ℕ`, i.e. `q ∈ {−3/2, −5/2, …}`.
    pub fn patch_exponent(&self) -> Option<usize> {
        if is_neg_natural(&(&self.q + crate::arith::rat(3, 2))) {
            let e = to_i64(&(-int(2) * &self.q - int(1))).expect("half-integer q");
            Some(e as usize)
        } else {
            None
        }
    }
}

/// `xⁿ = c + c̃·x^e + C′(x)·g + (q+1)·g′·C(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub c: Rational,
    /// Zero unless `e` is present.
    pub c_tilde: Rational,
    pub poly: UniPoly,
    /// The patched exponent `e = −2q−1`, when the `c̃` term is in play.
    pub patch_exponent: Option<usize>,
}

impl ReductionCertificate {
    /// `c + c̃x^e + C′g + (q+1)g′C − xⁿ`, which must be the zero polynomial.
    pub fn residual(&self, spec: &IntegralSpec) -> UniPoly {
        let g = spec.radicand();
        let dg = g.derivative();
        let mut rhs = UniPoly::constant(self.c.clone());
        if let Some(e) = self.patch_exponent {
            rhs = &rhs + &UniPoly::monomial(self.c_tilde.clone(), e);
        }
        rhs = &rhs + &(&self.poly.derivative() * &g);
        rhs = &rhs + &(&dg * &self.poly).scale(&(&spec.q + int(1)));
        &rhs - &UniPoly::monomial(Rational::one(), spec.n)
    }

    pub fn verify(&self, spec: &IntegralSpec) -> bool {
        self.residual(spec).is_zero()
    }
}

/// Solves the coefficient-matching system for `(c, c̃, C)`.
///
/// When `e` is in play the coefficient of `c_{e−1}` vanishes in the `x^e`
/// equation; `c̃` absorbs that equation and `c_{e−1}` is pinned to 0.
pub fn reduce_integral(spec: &IntegralSpec) -> Result<ReductionCertificate, IntegralError> {
    let IntegralSpec { n, a1, a2, q } = spec;
    let n = *n;
    if is_neg_positive_natural(q) {
        return Err(IntegralError::NegativeIntegerExponent(fmt_rational(q)));
    }
    let patch = spec.patch_exponent().filter(|&e| e <= n);

    // Unknown layout: [c, (c̃), c_0 … c_{n−1}].
    let off = if patch.is_some() { 2 } else { 1 };
    let ncols = off + n;
    let col = |i: usize| off + i;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for k in 0..=n {
        let mut row = vec![Rational::zero(); ncols];
        if k == 0 {
            row[0] = Rational::one();
        }
        if patch == Some(k) {
            row[1] = Rational::one();
        }
        let kk = int(k as i64);
        // (k+1) c_{k+1} + a₁(k+q+1) c_k + a₂(k+2q+1) c_{k−1}
        if k + 1 < n {
            row[col(k + 1)] += int(k as i64 + 1);
        }
        if k < n {
            row[col(k)] += a1 * (&kk + q + int(1));
        }
        if k >= 1 && k - 1 < n {
            row[col(k - 1)] += a2 * (&kk + int(2) * q + int(1));
        }
        rows.push(row);
        rhs.push(if k == n { Rational::one() } else { Rational::zero() });
    }
    if let Some(e) = patch {
        let mut pin = vec![Rational::zero(); ncols];
        pin[col(e - 1)] = Rational::one();
        rows.push(pin);
        rhs.push(Rational::zero());
    }
    let sol = solve_unique(&rows, &rhs).ok_or_else(|| IntegralError::Unsolvable { n, q: fmt_rational(q) })?;
    let c_tilde = if patch.is_some() { sol[1].clone() } else { Rational::zero() };
    Ok(ReductionCertificate {
        c: sol[0].clone(),
        c_tilde,
        poly: UniPoly::new(sol[off..].to_vec()),
        patch_exponent: patch,
    })
}

/// Partial-fraction data for `xⁿ / ((1+αx)(1+βx))^r`, `r = −q ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractions {
    pub roots: RootPair,
    /// Polynomial part (nonzero only when `n ≥ 2r`).
    pub polynomial: UniPoly,
    /// `A_m` multiplying `(1+αx)^{−m}`, `m = 1..=r`.
    pub alpha_terms: Vec<QuadScalar>,
    /// `B_m` multiplying `(1+βx)^{−m}`.
    pub beta_terms: Vec<QuadScalar>,
}

/// Coefficients of the logarithms in the antiderivative:
/// `∫ xⁿ g^q dx = residue_alpha·ln(1+αx) + residue_beta·ln(1+βx) + rational`.
///
/// In terms of the expansion coefficients, `residue_alpha = A₁/α`; it is the
/// residue of the integrand at `x = −1/α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCoefficients {
    pub roots: RootPair,
    pub residue_alpha: QuadScalar,
    pub residue_beta: QuadScalar,
}

impl LogCoefficients {
    pub fn both_vanish(&self) -> bool {
        // For conjugate roots residue_beta is the conjugate of residue_alpha.
        self.residue_alpha.is_zero() && self.residue_beta.is_zero()
    }
}

/// Laurent coefficients `a_m` (`m = 1..=r`) of `xⁿ / ((1+αx)(1+βx))^r` at
/// `x₀ = −1/α`, i.e. the `m`-th Taylor coefficient form of the residue formula:
/// `a_m = [t^{r−m}] α^{−r}(x₀+t)ⁿ(c+βt)^{−r}`, `c = 1 − β/α`.
fn laurent_at_alpha<K: Field>(n: usize, r: usize, alpha: &K, beta: &K) -> Vec<K> {
    let one = alpha.one_like();
    let x0 = -(one.clone() / alpha.clone());
    let c = one.clone() + beta.clone() * x0.clone();
    let c_inv_r = (one.clone() / c.clone()).pow_u(r);
    let alpha_inv_r = (one.clone() / alpha.clone()).pow_u(r);
    let ratio = beta.clone() / c;
    let neg_r = -int(r as i64);
    (1..=r)
        .map(|m| {
            let deg = r - m;
            let mut acc = alpha.zero_like();
            for j in 0..=deg.min(n) {
                let k = deg - j;
                let coeff = Rational::from_integer(binomial(n as u64, j as u64)) * gen_binomial(&neg_r, k);
                let term = alpha.embed(coeff) * x0.pow_u(n - j) * ratio.pow_u(k);
                acc = acc + term;
            }
            acc * c_inv_r.clone() * alpha_inv_r.clone()
        })
        .collect()
}

fn wrap_rational(v: Vec<Rational>) -> Vec<QuadScalar> {
    v.into_iter().map(QuadScalar::Rational).collect()
}

fn wrap_quadratic(v: Vec<crate::arith::QuadraticNumber>) -> Vec<QuadScalar> {
    v.into_iter().map(QuadScalar::Quadratic).collect()
}

/// `ℓ`-th Laurent coefficients scaled into the `(1+αx)^{−m}` basis.
fn to_expansion_basis<K: Field>(laurent: &[K], root: &K) -> Vec<K> {
    laurent
        .iter()
        .enumerate()
        .map(|(i, a)| a.clone() * root.pow_u(i + 1))
        .collect()
}

fn negative_order(spec: &IntegralSpec) -> Result<usize, IntegralError> {
    if !is_neg_positive_natural(&spec.q) {
        return Err(IntegralError::NotNegativeInteger(fmt_rational(&spec.q)));
    }
    Ok(to_i64(&-spec.q.clone()).expect("small negative integer exponent") as usize)
}

pub fn partial_fractions(spec: &IntegralSpec) -> Result<PartialFractions, IntegralError> {
    let r = negative_order(spec)?;
    let roots = quad_root_pair(&spec.a1, &spec.a2).map_err(|_| IntegralError::ZeroCoefficient)?;
    let (polynomial, _) = UniPoly::monomial(Rational::one(), spec.n).div_rem(&spec.radicand().pow(r));
    let (alpha_terms, beta_terms) = match &roots {
        RootPair::Double(_) => return Err(IntegralError::DoubleRoot),
        RootPair::Rational { alpha, beta } => {
            let la = laurent_at_alpha(spec.n, r, alpha, beta);
            let lb = laurent_at_alpha(spec.n, r, beta, alpha);
            (
                wrap_rational(to_expansion_basis(&la, alpha)),
                wrap_rational(to_expansion_basis(&lb, beta)),
            )
        }
        RootPair::Conjugate { alpha, beta } => {
            let la = laurent_at_alpha(spec.n, r, alpha, beta);
            let lb = laurent_at_alpha(spec.n, r, beta, alpha);
            (
                wrap_quadratic(to_expansion_basis(&la, alpha)),
                wrap_quadratic(to_expansion_basis(&lb, beta)),
            )
        }
    };
    Ok(PartialFractions { roots, polynomial, alpha_terms, beta_terms })
}

/// Residues of `xⁿ g^q` at the two simple-factor roots, for `q ∈ −ℕ*`.
pub fn partial_fraction_log_coeffs(spec: &IntegralSpec) -> Result<LogCoefficients, IntegralError> {
    let r = negative_order(spec)?;
    let roots = quad_root_pair(&spec.a1, &spec.a2).map_err(|_| IntegralError::ZeroCoefficient)?;
    let (residue_alpha, residue_beta) = match &roots {
        RootPair::Double(_) => return Err(IntegralError::DoubleRoot),
        RootPair::Rational { alpha, beta } => (
            QuadScalar::Rational(laurent_at_alpha(spec.n, r, alpha, beta)[0].clone()),
            QuadScalar::Rational(laurent_at_alpha(spec.n, r, beta, alpha)[0].clone()),
        ),
        RootPair::Conjugate { alpha, beta } => (
            QuadScalar::Quadratic(laurent_at_alpha(spec.n, r, alpha, beta)[0].clone()),
            QuadScalar::Quadratic(laurent_at_alpha(spec.n, r, beta, alpha)[0].clone()),
        ),
    };
    Ok(LogCoefficients { roots, residue_alpha, residue_beta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralVerdict {
    Algebraic,
    Transcendental,
}

impl IntegralVerdict {
    fn from_bool(alg: bool) -> Self {
        if alg {
            IntegralVerdict::Algebraic
        } else {
            IntegralVerdict::Transcendental
        }
    }

    pub fn is_algebraic(self) -> bool {
        self == IntegralVerdict::Algebraic
    }
}

/// `∫ g^q dx` is algebraic iff `q ∈ ℕ` or `q + 3/2 ∈ −ℕ` (distinct roots).
pub fn base_case_algebraic(q: &Rational) -> IntegralVerdict {
    IntegralVerdict::from_bool(is_natural(q) || is_neg_natural(&(q + crate::arith::rat(3, 2))))
}

/// Branch of the decision tree that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralRule {
    /// `(1+ax)^{2q}`: algebraic iff no `u^{−1}` term, i.e. `−2q−1 ∉ {0,…,n}`.
    DoubleRoot,
    /// `n = 0`.
    BaseCase,
    /// `q ∈ ℕ`: polynomial integrand.
    NaturalExponent,
    /// `q ∈ −ℕ*`: both log residues must vanish.
    LogResidues,
    /// `q + 3/2 ∈ −ℕ`, `n < −2q−1`.
    BelowPatch,
    /// `n = −2q−1` (even `n`): never globally bounded.
    AtPatch,
    /// `q + 3/2 ∈ −ℕ`, `n > −2q−1`: algebraic iff `c̃ = 0`.
    AbovePatch,
    /// Remaining `q`: algebraic iff `c = 0`.
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegralData {
    None,
    Certificate(ReductionCertificate),
    Log(LogCoefficients),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralAnalysis {
    pub spec: IntegralSpec,
    pub verdict: IntegralVerdict,
    pub rule: IntegralRule,
    pub data: IntegralData,
}

/// Runs the decision tree and keeps the data that justifies the verdict.
pub fn analyze_integral(spec: &IntegralSpec) -> Result<IntegralAnalysis, IntegralError> {
    let roots = quad_root_pair(&spec.a1, &spec.a2).map_err(|_| IntegralError::ZeroCoefficient)?;
    let q = &spec.q;
    let n = spec.n;
    let done = |verdict, rule, data| Ok(IntegralAnalysis { spec: spec.clone(), verdict, rule, data });

    if roots.is_double() {
        let e = -int(2) * q - int(1);
        let logs = e.is_integer() && e >= Rational::zero() && e <= int(n as i64);
        return done(IntegralVerdict::from_bool(!logs), IntegralRule::DoubleRoot, IntegralData::None);
    }

    let data = if is_neg_positive_natural(q) {
        IntegralData::Log(partial_fraction_log_coeffs(spec)?)
    } else if is_natural(q) {
        IntegralData::None
    } else {
        IntegralData::Certificate(reduce_integral(spec)?)
    };

    if n == 0 {
        return done(base_case_algebraic(q), IntegralRule::BaseCase, data);
    }
    if is_natural(q) {
        return done(IntegralVerdict::Algebraic, IntegralRule::NaturalExponent, data);
    }
    if let IntegralData::Log(lc) = &data {
        let v = IntegralVerdict::from_bool(lc.both_vanish());
        return done(v, IntegralRule::LogResidues, data);
    }
    let IntegralData::Certificate(cert) = &data else { unreachable!() };
    if let Some(e) = spec.patch_exponent() {
        use std::cmp::Ordering::*;
        return match n.cmp(&e) {
            Less => done(IntegralVerdict::Algebraic, IntegralRule::BelowPatch, data),
            Equal => {
                assert!(n.is_multiple_of(2), "n = -2q-1 with q + 3/2 in -N forces even n");
                done(IntegralVerdict::Transcendental, IntegralRule::AtPatch, data)
            }
            Greater => {
                let v = IntegralVerdict::from_bool(cert.c_tilde.is_zero());
                done(v, IntegralRule::AbovePatch, data)
            }
        };
    }
    let v = IntegralVerdict::from_bool(cert.c.is_zero() || base_case_algebraic(q).is_algebraic());
    done(v, IntegralRule::Generic, data)
}

pub fn decide_integral(spec: &IntegralSpec) -> Result<IntegralVerdict, IntegralError> {
    analyze_integral(spec).map(|a| a.verdict)
}
