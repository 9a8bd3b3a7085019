//! Gaussian elimination over a [`GaloisField`].

use crate::ring::GaloisField;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(k: &GaloisField, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(pr) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(top, pr);
        let inv = k.inv(rows[top][col]).unwrap();
        for x in rows[top].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != top && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..ncols {
                    let sub = k.mul(factor, rows[top][c]);
                    rows[r][c] = k.sub(rows[r][c], sub);
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

/// Basis of `{x : A x = 0}`, one vector per free column, each with a `1` in
/// its own free position and `0` in the other free positions. Also returns
/// the free columns in increasing order.
pub fn nullspace(k: &GaloisField, rows: &[Vec<u32>], ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let pivots = if m.is_empty() { Vec::new() } else { rref(k, &mut m) };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = k.neg(row[fc]);
            }
            v
        })
        .collect();
    (basis, free)
}

/// One solution of `A x = b`, if any.
pub fn solve(k: &GaloisField, a: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(k, &mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    Some(x)
}
