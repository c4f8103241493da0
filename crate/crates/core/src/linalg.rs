//! Exact dense linear algebra: reduced row echelon form over a field and
//! fraction-free elimination over an integral domain.
//!
//! Matrices are plain row-major `Vec<Vec<E>>`. Everything here is exact;
//! there are no pivot-size heuristics beyond first nonzero column.

use alloc::vec::Vec;

use crate::ring::{Field, Ring};

/// Reduced row echelon form in place; returns the pivot column indices.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for c in col..ncols {
            rows[r][c] = field.mul(&rows[r][c], &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][col]) {
                let factor = rows[i][col].clone();
                for c in col..ncols {
                    let delta = field.mul(&factor, &rows[r][c]);
                    rows[i][c] = field.sub(&rows[i][c], &delta);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank over a field.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    rref(field, &mut rows).len()
}

/// Whether `target` lies in the row span of `rows`.
pub fn in_row_span<F: Field>(field: &F, rows: &[Vec<F::Elem>], target: &[F::Elem]) -> bool {
    let mut all: Vec<Vec<F::Elem>> = rows.to_vec();
    let base = rref(field, &mut all);
    all.push(target.to_vec());
    let aug = rref(field, &mut all);
    aug.len() == base.len()
}

/// Nullspace basis of the matrix, canonical from the reduced form: one
/// vector per free column, with a 1 in that column.
pub fn nullspace<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let pivots = rref(field, &mut rows);
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = alloc::vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&rows[r][free]);
        }
        out.push(v);
    }
    out
}

/// Rank over an integral domain by Bareiss elimination. Divisions by the
/// previous pivot are exact in the domain, so no fractions ever appear.
pub fn rank_fraction_free<R: Ring>(ring: &R, mut rows: Vec<Vec<R::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = ring.one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !ring.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, found);
        for i in (r + 1)..rows.len() {
            for c in (col + 1)..ncols {
                // Bareiss step: (pivot*row_i - lead_i*row_r) / prev
                let t1 = ring.mul(&rows[r][col], &rows[i][c]);
                let t2 = ring.mul(&rows[i][col], &rows[r][c]);
                let num = ring.sub(&t1, &t2);
                rows[i][c] = ring
                    .exact_div(&num, &prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            rows[i][col] = ring.zero();
        }
        prev = rows[r][col].clone();
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion; fine at the matrix sizes used here.
pub fn determinant<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = ring.zero();
    for (j, top) in m[0].iter().enumerate() {
        if ring.is_zero(top) {
            continue;
        }
        let minor: Vec<Vec<R::Elem>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = ring.mul(top, &determinant(ring, &minor));
        det = if j % 2 == 0 { ring.add(&det, &cof) } else { ring.sub(&det, &cof) };
    }
    det
}

/// Solve `M x = b` over a field; `None` when inconsistent. When the system
/// is underdetermined the free variables are set to zero.
pub fn solve<F: Field>(
    field: &F,
    rows: &[Vec<F::Elem>],
    b: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F::Elem>> = rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = alloc::vec![field.zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MPolyRing;
    use crate::ring::{PrimeField, Rationals};
    use alloc::vec;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<num_rational::BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn rref_and_rank() {
        let mut m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = rref(&Rationals, &mut m);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rank(&Rationals, qm(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&Rationals, qm(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn span_membership() {
        let rows = qm(&[&[1, 0, 1], &[0, 1, 1]]);
        let yes = qm(&[&[2, 3, 5]]).pop().unwrap();
        let no = qm(&[&[1, 1, 3]]).pop().unwrap();
        assert!(in_row_span(&Rationals, &rows, &yes));
        assert!(!in_row_span(&Rationals, &rows, &no));
    }

    #[test]
    fn nullspace_dimension() {
        // x + y + z = 0 has a 2-dimensional kernel
        let rows = qm(&[&[1, 1, 1]]);
        let ns = nullspace(&Rationals, rows.clone());
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s = v.iter().fold(Rationals.zero(), |acc, x| Rationals.add(&acc, x));
            assert!(Rationals.is_zero(&s));
        }
    }

    #[test]
    fn fraction_free_rank_matches_field_rank() {
        let cases: [&[&[i64]]; 3] = [
            &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]],
            &[&[0, 1], &[1, 0]],
            &[&[2, 3], &[4, 6]],
        ];
        for rows in cases {
            assert_eq!(
                rank(&Rationals, qm(rows)),
                rank_fraction_free(&Rationals, qm(rows))
            );
        }
    }

    #[test]
    fn fraction_free_rank_over_polynomials() {
        // rows (1, a) and (a, a^2) are proportional; (0, 1) breaks it
        let r = MPolyRing::new(Rationals, 1);
        let a = r.parameter(0);
        let one = r.one();
        let zero = r.zero();
        let rows = alloc::vec![
            alloc::vec![one.clone(), a.clone()],
            alloc::vec![a.clone(), r.mul(&a, &a)],
        ];
        assert_eq!(rank_fraction_free(&r, rows.clone()), 1);
        let mut taller = rows;
        taller.push(alloc::vec![zero, one]);
        assert_eq!(rank_fraction_free(&r, taller), 2);
    }

    #[test]
    fn solving_over_a_prime_field() {
        let f = PrimeField::new(5);
        let rows = alloc::vec![alloc::vec![1u64, 2], alloc::vec![3, 4]];
        let b = alloc::vec![0u64, 1];
        let x = solve(&f, &rows, &b).unwrap();
        // check M x = b mod 5
        let r0 = f.add(&f.mul(&rows[0][0], &x[0]), &f.mul(&rows[0][1], &x[1]));
        let r1 = f.add(&f.mul(&rows[1][0], &x[0]), &f.mul(&rows[1][1], &x[1]));
        assert_eq!((r0, r1), (0, 1));
        // inconsistent system
        let rows = alloc::vec![alloc::vec![1u64, 1], alloc::vec![2, 2]];
        assert!(solve(&f, &rows, &alloc::vec![0, 1]).is_none());
    }
}
