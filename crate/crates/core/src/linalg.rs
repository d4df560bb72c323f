//! Exact linear algebra: Gauss–Jordan over `ℚ` for small square systems and
//! a fraction-free echelon form over `ℤ` for tall nullspace problems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{denominator_lcm, Rational};

/// Solves `A x = b` exactly. Returns `None` unless the solution is unique.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    assert_eq!(rows, b.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..cols {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let prow = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
        pivot_row += 1;
    }
    // Leftover rows must be consistent (all zero including the rhs).
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some(m[..cols].iter().map(|row| row[cols].clone()).collect())
}

/// Row-echelon basis built incrementally by fraction-free elimination.
///
/// Rows are kept primitive (content divided out) so entries stay small.
#[derive(Debug, Clone)]
pub struct IntEchelon {
    ncols: usize,
    // (pivot column, row), sorted by pivot column.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntEchelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds a rational row; returns `true` if it increased the rank.
    pub fn push_rational(&mut self, row: &[Rational]) -> bool {
        let l = denominator_lcm(row);
        let l = Rational::from_integer(l);
        let ints: Vec<BigInt> = row.iter().map(|x| (x * &l).to_integer()).collect();
        self.push(ints)
    }

    /// Adds an integer row; returns `true` if it increased the rank.
    pub fn push(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (pc, prow) in &self.rows {
            let c = &row[*pc];
            if c.is_zero() {
                continue;
            }
            // row ← row·(p/g) − prow·(c/g), g = gcd(p, c)
            let p = &prow[*pc];
            let g = p.gcd(c);
            let (mr, mp) = (p / &g, c / &g);
            for (v, pv) in row.iter_mut().zip(prow) {
                *v = &*v * &mr - pv * &mp;
            }
            make_primitive(&mut row);
        }
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        make_primitive(&mut row);
        let at = self.rows.partition_point(|(c, _)| *c < pc);
        self.rows.insert(at, (pc, row));
        true
    }

    /// Integer basis of the right nullspace, one primitive vector per free
    /// column. Ordered by free column.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.into_iter()
            .map(|f| {
                let mut x = vec![Rational::zero(); self.ncols];
                x[f] = Rational::one();
                // Back substitution over the echelon rows, bottom-up.
                for (pc, row) in self.rows.iter().rev() {
                    let s: Rational = row
                        .iter()
                        .enumerate()
                        .skip(pc + 1)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(j, v)| Rational::from_integer(v.clone()) * &x[j])
                        .sum();
                    x[*pc] = -s / Rational::from_integer(row[*pc].clone());
                }
                crate::arith::primitive_integer_vector(&x)
            })
            .collect()
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v /= &g;
    }
}

/// Nullspace of a rational matrix given row by row.
pub fn rational_nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut e = IntEchelon::new(ncols);
    for r in rows {
        e.push_rational(r);
    }
    e.nullspace()
}

/// Sign normalization: first nonzero entry positive.
pub fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = vec![r(&[2, 1]), r(&[1, -1])];
        let x = solve_unique(&a, &r(&[5, 1])).unwrap();
        assert_eq!(x, r(&[2, 1]));
    }

    #[test]
    fn overdetermined_consistent_and_inconsistent() {
        let a = vec![r(&[1, 0]), r(&[0, 1]), r(&[1, 1])];
        assert_eq!(solve_unique(&a, &r(&[1, 2, 3])), Some(r(&[1, 2])));
        assert_eq!(solve_unique(&a, &r(&[1, 2, 4])), None);
    }

    #[test]
    fn singular_system_has_no_unique_solution() {
        let a = vec![r(&[1, 2]), r(&[2, 4])];
        assert_eq!(solve_unique(&a, &r(&[1, 2])), None);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let ns = rational_nullspace(&[vec![rat(1, 2), rat(-1, 3)], vec![int(3), int(-2)]], 2);
        assert_eq!(ns, vec![vec![BigInt::from(2), BigInt::from(3)]]);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let rows = vec![r(&[1, 2, 3, 4]), r(&[2, 4, 7, 9]), r(&[0, 0, 1, 1])];
        let ns = rational_nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * Rational::from_integer(b.clone())).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        assert!(rational_nullspace(&[r(&[1, 0]), r(&[0, 1])], 2).is_empty());
    }
}
