//! Exact dense linear solving over the rationals, used to extract the
//! boundary vectors that local charge identities produce.

use num_rational::BigRational;
use num_traits::Zero;

/// Row echelon reduction of `rows` (in place), returning the pivot columns.
fn reduce(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for c in col..ncols {
            let v = &rows[rank][c] * &inv;
            rows[rank][c] = v;
        }
        for r in 0..nrows {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..ncols {
                let v = &rows[r][c] - &(&f * &rows[rank][c]);
                rows[r][c] = v;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    pivots
}

/// Solves the stacked system `sum_j row[j] x_j = rhs` for each row.
///
/// Returns one solution if the system is consistent (free variables are set
/// to zero), `None` otherwise. Rows that are identically zero on both sides
/// may be included; they are skipped.
pub fn solve_rows(rows: &[(Vec<BigRational>, BigRational)]) -> Option<Vec<BigRational>> {
    let ncols = rows.iter().map(|(r, _)| r.len()).max().unwrap_or(0);
    let mut aug: Vec<Vec<BigRational>> = Vec::new();
    for (coeffs, rhs) in rows {
        if coeffs.iter().all(Zero::is_zero) && rhs.is_zero() {
            continue;
        }
        assert_eq!(coeffs.len(), ncols, "ragged row");
        let mut row = coeffs.clone();
        row.push(rhs.clone());
        aug.push(row);
    }
    if ncols == 0 {
        return Some(vec![]);
    }
    if aug.is_empty() {
        return Some(vec![BigRational::zero(); ncols]);
    }
    let pivots = reduce(&mut aug);
    // inconsistent iff a pivot lands in the rhs column
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Rank of a dense rational matrix.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut work: Vec<Vec<BigRational>> = rows.to_vec();
    reduce(&mut work).len()
}

/// Basis of the right nullspace of a dense rational matrix.
pub fn nullspace(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut work: Vec<Vec<BigRational>> = rows.to_vec();
    let pivots = reduce(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let one = BigRational::from_integer(1.into());
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][fc].clone();
            }
            v
        })
        .collect()
}
