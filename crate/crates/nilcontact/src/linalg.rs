//! Exact linear algebra over the rationals, enough for central-series
//! computations: row reduction, rank, kernel and row-space bases.
//!
//! Rows are scaled to integers first and eliminated fraction-free
//! (Bareiss), so intermediate entries stay integral.

use crate::scalars::{rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row echelon form data produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each used row, in order.
    pivots: Vec<usize>,
}

fn to_integer_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            assert_eq!(row.len(), ncols);
            let mut lcm = BigInt::one();
            for c in row {
                lcm = lcm.lcm(c.denom());
            }
            row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        })
        .collect()
}

fn eliminate(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let pivot = rows[r][col].clone();
        for i in (r + 1)..rows.len() {
            for j in 0..ncols {
                if j == col {
                    continue;
                }
                let num = &pivot * &rows[i][j] - &rows[i][col] * &rows[r][j];
                debug_assert!((&num % &prev).is_zero(), "fraction-free step not exact");
                rows[i][j] = num / &prev;
            }
            rows[i][col] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

/// Basis of `{ x : M x = 0 }` for the matrix with the given rows.
pub fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = eliminate(to_integer_rows(rows, ncols), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![rat(0); ncols];
        x[free] = rat(1);
        // echelon rows are upper triangular on the pivot columns
        for (row, &p) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut acc = rat(0);
            for j in (p + 1)..ncols {
                if !row[j].is_zero() && !x[j].numer().is_zero() {
                    acc = &acc + &(Rational::from_integer(row[j].clone()) * &x[j]);
                }
            }
            x[p] = -acc / Rational::from_integer(row[p].clone());
        }
        basis.push(x);
    }
    basis
}

/// Basis of the row space, as reduced echelon rows rescaled to primitive
/// integer vectors.
pub fn row_space_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = eliminate(to_integer_rows(rows, ncols), ncols);
    ech.rows
        .iter()
        .map(|row| {
            let mut content = BigInt::zero();
            for c in row {
                content = content.gcd(c);
            }
            let lead_negative = row.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
            if lead_negative {
                content = -content;
            }
            row.iter()
                .map(|c| Rational::from_integer(c / &content))
                .collect()
        })
        .collect()
}
