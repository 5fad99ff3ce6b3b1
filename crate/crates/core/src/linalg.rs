//! Exact linear algebra over the constant field.

use crate::arith::Elem;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for e in rows[r].iter_mut() {
            *e = &*e * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            #[allow(clippy::needless_range_loop)]
            for j in col..ncols {
                let sub = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{c : A c = 0}` for the matrix with the given rows. Each vector has
/// first nonzero entry 1; vectors are sorted by the position of that entry.
pub fn nullspace(rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows.iter().filter(|r| r.iter().any(|e| !e.is_zero())).cloned().collect();
    let pivots = row_reduce(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::zero(); ncols];
        v[free] = Elem::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[i][free];
        }
        let lead = v.iter().find(|e| !e.is_zero()).unwrap().inv();
        for e in v.iter_mut() {
            *e = &*e * &lead;
        }
        out.push(v);
    }
    out.sort_by_key(|v| v.iter().position(|e| !e.is_zero()));
    out
}
