//! GF(2) row reduction.

/// Rank of a binary matrix over GF(2) by Gaussian elimination.
pub fn gf2_rank(rows: &[Vec<bool>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut work: Vec<Vec<bool>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..work.len()).find(|&r| work[r][col]) else {
            continue;
        };
        work.swap(rank, pivot);
        let pivot_row = work[rank].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (a, b) in row.iter_mut().zip(pivot_row.iter()) {
                    *a ^= *b;
                }
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Rank of the column-restricted matrix.
pub fn gf2_rank_cols(rows: &[Vec<bool>], cols: &[usize]) -> usize {
    let sub: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| r[c]).collect())
        .collect();
    gf2_rank(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Independently coded elimination: incremental insertion into a
    /// leading-index basis (no pivot sweep, different algorithm shape from
    /// the production column elimination).
    fn rank_oracle(rows: &[Vec<bool>]) -> usize {
        let mut basis: Vec<Vec<bool>> = Vec::new(); // kept reduced, one leading index each
        for row in rows {
            let mut v = row.clone();
            loop {
                let Some(lead) = v.iter().position(|&x| x) else {
                    break; // reduced to zero: dependent
                };
                match basis.iter().find(|b| b.iter().position(|&x| x) == Some(lead)) {
                    Some(b) => {
                        let b = b.clone();
                        for (a, bb) in v.iter_mut().zip(b.iter()) {
                            *a ^= *bb;
                        }
                    }
                    None => {
                        basis.push(v);
                        break;
                    }
                }
            }
        }
        basis.len()
    }

    #[test]
    fn identity_and_duplicates() {
        let id: Vec<Vec<bool>> = (0..5).map(|i| (0..5).map(|j| i == j).collect()).collect();
        assert_eq!(gf2_rank(&id), 5);
        let dup = vec![vec![true, false, true], vec![true, false, true]];
        assert_eq!(gf2_rank(&dup), 1);
        assert_eq!(gf2_rank(&[]), 0);
    }

    #[test]
    fn random_matches_independent_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let rows: Vec<Vec<bool>> = (0..20)
                .map(|_| (0..40).map(|_| rng.gen_bool(0.4)).collect())
                .collect();
            assert_eq!(gf2_rank(&rows), rank_oracle(&rows));
        }
        // tall skinny case
        let rows: Vec<Vec<bool>> = (0..30)
            .map(|_| (0..7).map(|_| rng.gen_bool(0.5)).collect())
            .collect();
        assert_eq!(gf2_rank(&rows), rank_oracle(&rows));
    }

    #[test]
    fn column_restriction() {
        let rows = vec![
            vec![true, false, true, false],
            vec![false, true, true, false],
        ];
        assert_eq!(gf2_rank_cols(&rows, &[0, 1]), 2);
        assert_eq!(gf2_rank_cols(&rows, &[3]), 0);
    }
}
