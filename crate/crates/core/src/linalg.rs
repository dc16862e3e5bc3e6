//! Dense Gaussian elimination over a [`FieldSpec`].

use crate::gf::{FieldElement, FieldSpec};

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each surviving row.
pub fn rref(f: &FieldSpec, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = f.inv(rows[rank][col]).expect("nonzero pivot");
        for c in rows[rank].iter_mut().skip(col) {
            *c = f.mul(*c, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = f.sub(row[c], f.mul(factor, pivot_row[c]));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

pub fn rank(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{v : M v = 0}` for an `r x ncols` matrix.
pub fn kernel(f: &FieldSpec, rows: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

pub fn determinant(f: &FieldSpec, m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = FieldElement::ONE;
    for col in 0..n {
        let Some(found) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElement::ZERO;
        };
        if found != col {
            a.swap(found, col);
            det = f.neg(det);
        }
        det = f.mul(det, a[col][col]);
        let inv = f.inv(a[col][col]).expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = f.mul(a[r][col], inv);
            for c in col..n {
                a[r][c] = f.sub(a[r][c], f.mul(factor, a[col][c]));
            }
        }
    }
    det
}

pub fn inverse(f: &FieldSpec, m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let mut aug: Vec<Vec<FieldElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(f: &FieldSpec, m: &[Vec<FieldElement>], v: &[FieldElement]) -> Vec<FieldElement> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect()
}

pub fn mat_mul(
    f: &FieldSpec,
    a: &[Vec<FieldElement>],
    b: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .fold(FieldElement::ZERO, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[c])))
                })
                .collect()
        })
        .collect()
}
