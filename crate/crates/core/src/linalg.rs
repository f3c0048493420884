//! Gaussian elimination over a field, just enough for homogeneous systems.

use crate::field::{Field, FieldElement};

/// Basis of the right nullspace of `rows` (each row has `ncols` entries).
/// One basis vector per free column, in column order.
pub(crate) fn nullspace(field: &Field, mut rows: Vec<Vec<FieldElement>>, ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r][col].inv().unwrap();
        for c in col..ncols {
            rows[r][c] = &rows[r][c] * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in col..ncols {
                let sub = &factor * &rows[r][c];
                rows[i][c] = &rows[i][c] - &sub;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[row][fc];
            }
            v
        })
        .collect()
}
