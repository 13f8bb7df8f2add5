//! Exact Gaussian elimination over `Q`.

use num_traits::Zero;

use crate::rational::Rational;

/// Row-reduces `rows` in place and returns the rank.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of checking `A x = b` for solvability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consistency {
    pub rank: usize,
    pub augmented_rank: usize,
}

impl Consistency {
    pub fn is_solvable(&self) -> bool {
        self.rank == self.augmented_rank
    }
}

/// Rouché–Capelli test on the system whose rows are `matrix[i] . x = rhs[i]`.
pub fn check_consistency(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Consistency {
    assert_eq!(matrix.len(), rhs.len());
    let augmented = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    Consistency {
        rank: rank(matrix.to_vec()),
        augmented_rank: rank(augmented),
    }
}
