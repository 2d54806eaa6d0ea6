//! Exact linear algebra over Q and over the rational-function field Q(x).
//!
//! Function-field systems are solved by fraction-free (Bareiss) elimination
//! on integer-polynomial rows obtained by clearing denominators, followed by
//! back-substitution and an exact verification of `A x = b`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::poly::{self, Poly};
use crate::scalar::{Rational, ScalarExpr};

/// Row echelon data over Q.
struct RationalEchelon {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

fn rational_rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> RationalEchelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    RationalEchelon { rows, pivots }
}

pub fn rank_rational(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rational_rref(rows.to_vec(), ncols).pivots.len()
}

/// Basis of `{x : A x = 0}` over Q.
pub fn nullspace_rational(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let e = rational_rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &pc) in e.pivots.iter().enumerate() {
                x[pc] = -e.rows[r][f].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `A x = b` over Q, or `None` when inconsistent.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rational_rref(rows, ncols);
    for r in e.pivots.len()..e.rows.len() {
        if !e.rows[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.rows[r][ncols].clone();
    }
    Some(x)
}

/// Result of a function-field solve.
#[derive(Clone, Debug)]
pub struct FieldSolve {
    pub rank: usize,
    pub augmented_rank: usize,
    /// A verified solution with free variables set to zero, when consistent.
    pub solution: Option<Vec<ScalarExpr>>,
}

/// Fraction-free echelon form of polynomial rows; returns pivot positions.
fn bareiss(m: &mut [Vec<Poly>], pivot_cols: usize) -> Vec<(usize, usize)> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = Poly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        // smallest nonzero entry keeps intermediate growth down
        let Some(p) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].num_terms())
        else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = if prev.is_one() {
                    t
                } else {
                    t.exact_div(&prev).expect("Bareiss step divides exactly")
                };
            }
            m[i][c] = Poly::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Clears denominators row by row.
fn to_poly_rows(rows: &[Vec<ScalarExpr>]) -> Vec<Vec<Poly>> {
    rows.iter()
        .map(|row| {
            let mut l = Poly::one();
            for e in row {
                if !e.is_zero() && !e.denominator().is_one() {
                    l = poly::lcm(&l, e.denominator());
                }
            }
            row.iter()
                .map(|e| {
                    if e.is_zero() {
                        Poly::zero()
                    } else {
                        e.numerator()
                            .mul(&l.exact_div(e.denominator()).expect("lcm is a multiple"))
                    }
                })
                .collect()
        })
        .collect()
}

/// Rank over Q(x).
pub fn rank_function_field(rows: &[Vec<ScalarExpr>], ncols: usize) -> usize {
    let mut m = to_poly_rows(rows);
    bareiss(&mut m, ncols).len()
}

/// Solves `A x = b` over Q(x).
pub fn solve_function_field(a: &[Vec<ScalarExpr>], b: &[ScalarExpr]) -> Result<FieldSolve> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("rows of A and b differ".into()));
    }
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<ScalarExpr>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut m = to_poly_rows(&aug);
    let pivots = bareiss(&mut m, ncols + 1);
    let rank = pivots.iter().filter(|&&(_, c)| c < ncols).count();
    let augmented_rank = pivots.len();
    if augmented_rank > rank {
        return Ok(FieldSolve {
            rank,
            augmented_rank,
            solution: None,
        });
    }
    let mut x = vec![ScalarExpr::zero(); ncols];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = ScalarExpr::from_poly(m[r][ncols].clone());
        for j in c + 1..ncols {
            if !m[r][j].is_zero() && !x[j].is_zero() {
                acc = acc.sub(&ScalarExpr::from_poly(m[r][j].clone()).mul(&x[j]));
            }
        }
        x[c] = acc.div(&ScalarExpr::from_poly(m[r][c].clone()))?;
    }
    // exact back-substitution check against the original system
    for (row, bi) in a.iter().zip(b) {
        let mut acc = ScalarExpr::zero();
        for (aij, xj) in row.iter().zip(&x) {
            if !aij.is_zero() && !xj.is_zero() {
                acc = acc.add(&aij.mul(xj));
            }
        }
        if &acc != bi {
            return Err(Error::Invalid(
                "back-substitution check failed in function-field solve".into(),
            ));
        }
    }
    Ok(FieldSolve {
        rank,
        augmented_rank,
        solution: Some(x),
    })
}

/// Basis of the kernel of `A` over Q(x).
pub fn nullspace_function_field(rows: &[Vec<ScalarExpr>], ncols: usize) -> Result<Vec<Vec<ScalarExpr>>> {
    let mut m = to_poly_rows(rows);
    let pivots = bareiss(&mut m, ncols);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![ScalarExpr::zero(); ncols];
        x[f] = ScalarExpr::one();
        for &(r, c) in pivots.iter().rev() {
            let mut acc = ScalarExpr::zero();
            for j in c + 1..ncols {
                if !m[r][j].is_zero() && !x[j].is_zero() {
                    acc = acc.sub(&ScalarExpr::from_poly(m[r][j].clone()).mul(&x[j]));
                }
            }
            x[c] = acc.div(&ScalarExpr::from_poly(m[r][c].clone()))?;
        }
        basis.push(x);
    }
    Ok(basis)
}

/// Determinant over Q by elimination.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}
