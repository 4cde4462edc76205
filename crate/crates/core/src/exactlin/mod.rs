//! Exact linear algebra over the rationals and small prime fields.
//!
//! Everything is row-oriented: a matrix is a list of row vectors and a
//! subspace is stored as its reduced row-echelon basis, so two equal
//! subspaces have identical representations.

mod field;
mod subspace;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals, MAX_MODULUS};
pub use subspace::{QuotientMap, Subspace};

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][col]);
        if inv != field.one() {
            for x in rows[r].iter_mut().skip(col) {
                *x = field.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if field.is_zero(&other[col]) {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other.iter_mut().zip(pivot_row.iter()).skip(col) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work, ncols).len()
}

/// Nullity of the linear map `x -> M x` where `M` has `ncols` columns.
pub fn solve_dim<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    ncols - rank(field, rows, ncols)
}
