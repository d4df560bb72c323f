use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{denominator_lcm, Rational, TruncatedSeries};
use crate::linalg::IntEchelon;

/// Extra equations beyond the number of unknowns.
pub const DEFAULT_MARGIN: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("series order {got} is below the required {needed}")]
    SeriesTooShort { needed: usize, got: usize },
}

/// `P(x, y) = Σ coeffs[j][i] xⁱ yʲ` with `P(x, S(x)) ≡ 0 mod x^verified_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorGuess {
    pub coeffs: Vec<Vec<BigInt>>,
    pub verified_order: usize,
}

impl AnnihilatorGuess {
    pub fn deg_x(&self) -> usize {
        self.coeffs.iter().map(|row| row.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(j).and_then(|r| r.get(i)).cloned().unwrap_or_default()
    }

    /// `P(x, S) mod x^order`.
    pub fn evaluate(&self, series: &TruncatedSeries) -> TruncatedSeries {
        let order = series.order();
        let powers = series.powers(self.deg_y());
        let mut acc = TruncatedSeries::new(vec![Rational::zero(); order]);
        for (j, row) in self.coeffs.iter().enumerate() {
            let ints: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
            let px = TruncatedSeries::from_poly(&crate::arith::UniPoly::new(ints), order);
            acc = acc.add(&px.mul(&powers[j]));
        }
        acc
    }
}

impl std::fmt::Display for AnnihilatorGuess {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for j in (0..self.coeffs.len()).rev() {
            for i in (0..self.coeffs[j].len()).rev() {
                let c = &self.coeffs[j][i];
                if c.is_zero() {
                    continue;
                }
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    (i, 0) => monomial("x", i),
                    (0, j) => monomial("y", j),
                    (i, j) => format!("{}*{}", monomial("x", i), monomial("y", j)),
                };
                let body = match (mono.is_empty(), c.abs() == BigInt::from(1)) {
                    (true, _) => c.abs().to_string(),
                    (false, true) => mono,
                    (false, false) => format!("{}*{}", c.abs(), mono),
                };
                let sign = if c.is_negative() { "-" } else { "+" };
                terms.push((sign, body));
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "+") => write!(f, "{body}")?,
                (0, _) => write!(f, "-{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
        }
        Ok(())
    }
}

fn monomial(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

pub fn guess_annihilator(series: &TruncatedSeries, dx: usize, dy: usize) -> Result<Option<AnnihilatorGuess>, GuessError> {
    guess_annihilator_with_margin(series, dx, dy, DEFAULT_MARGIN)
}

/// Smallest `(deg_y, deg_x)` in lexicographic order with a nonzero integer
/// annihilator of the truncated series.
pub fn guess_annihilator_with_margin(
    series: &TruncatedSeries,
    dx: usize,
    dy: usize,
    margin: usize,
) -> Result<Option<AnnihilatorGuess>, GuessError> {
    let order = series.order();
    let needed = (dx + 1) * (dy + 1) + margin;
    if order < needed {
        return Err(GuessError::SeriesTooShort { needed, got: order });
    }
    let powers = series.powers(dy);
    // Row k of the powers, cleared to integers once per power.
    let scaled: Vec<(BigInt, Vec<BigInt>)> = powers
        .iter()
        .map(|p| {
            let l = denominator_lcm(p.coeffs());
            let lr = Rational::from_integer(l.clone());
            (l, p.coeffs().iter().map(|c| (c * &lr).to_integer()).collect())
        })
        .collect();
    for ddy in 1..=dy {
        for ddx in 0..=dx {
            if let Some(g) = try_degrees(series, &scaled, ddx, ddy) {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

fn try_degrees(
    series: &TruncatedSeries,
    scaled: &[(BigInt, Vec<BigInt>)],
    ddx: usize,
    ddy: usize,
) -> Option<AnnihilatorGuess> {
    let order = series.order();
    let ncols = (ddx + 1) * (ddy + 1);
    let col = |i: usize, j: usize| j * (ddx + 1) + i;
    let mut ech = IntEchelon::new(ncols);
    for k in 0..order {
        // Unknown p_{ij} multiplies lcm_j⁻¹·[x^{k−i}]L_j S^j; the scale is
        // absorbed into the unknown and undone below.
        let mut row = vec![BigInt::zero(); ncols];
        for j in 0..=ddy {
            for i in 0..=ddx.min(k) {
                row[col(i, j)] = scaled[j].1[k - i].clone();
            }
        }
        ech.push(row);
        if ech.rank() == ncols {
            return None;
        }
    }
    let kernel = ech.nullspace();
    let v = kernel.into_iter().next()?;
    // Undo the per-power scaling: p_{ij} = v_{ij}·lcm_j.
    let mut coeffs: Vec<Vec<BigInt>> = (0..=ddy)
        .map(|j| (0..=ddx).map(|i| &v[col(i, j)] * &scaled[j].0).collect())
        .collect();
    normalize(&mut coeffs);
    let g = AnnihilatorGuess { coeffs, verified_order: order };
    g.evaluate(series).is_zero().then_some(g)
}

/// Primitive, with the coefficient of the largest monomial (by `y`-degree,
/// then `x`-degree) positive; trailing zero rows and columns trimmed.
fn normalize(coeffs: &mut Vec<Vec<BigInt>>) {
    use num_integer::Integer;
    let g = coeffs.iter().flatten().fold(BigInt::zero(), |g, c| g.gcd(c));
    let lead_negative = coeffs
        .iter()
        .rev()
        .flat_map(|row| row.iter().rev())
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    let g = if lead_negative { -g } else { g };
    for c in coeffs.iter_mut().flatten() {
        *c /= &g;
    }
    for row in coeffs.iter_mut() {
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
    }
    while coeffs.last().is_some_and(|r| r.is_empty()) {
        coeffs.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::recurrence::{fixtures, InitialPair, Order1Rec};

    fn motzkin_series(order: usize) -> TruncatedSeries {
        TruncatedSeries::new(fixtures::motzkin().generate_terms(&InitialPair::ints(1, 1), order - 1).unwrap())
    }

    #[test]
    fn motzkin_equation() {
        let g = guess_annihilator(&motzkin_series(300), 2, 2).unwrap().unwrap();
        let b = |n: i64| BigInt::from(n);
        assert_eq!(g.coeffs, vec![vec![b(1)], vec![b(-1), b(1)], vec![b(0), b(0), b(1)]]);
        assert_eq!(g.to_string(), "x^2*y^2 + x*y - y + 1");
        assert_eq!(g.verified_order, 300);
    }

    #[test]
    fn constant_series() {
        let s = TruncatedSeries::one(50);
        let g = guess_annihilator(&s, 0, 1).unwrap().unwrap();
        assert_eq!(g.to_string(), "y - 1");
    }

    #[test]
    fn transcendental_series_has_none() {
        // (n+2)sₙ + (n+1)sₙ₋₁ = 0
        let rec = Order1Rec::new(int(2), int(1), int(1)).unwrap();
        let s = TruncatedSeries::new(rec.generate_terms(&int(1), 119).unwrap());
        assert_eq!(guess_annihilator(&s, 3, 3).unwrap(), None);
    }

    #[test]
    fn short_series_is_rejected() {
        let s = TruncatedSeries::one(10);
        assert_eq!(guess_annihilator(&s, 1, 1), Err(GuessError::SeriesTooShort { needed: 44, got: 10 }));
    }
}
