//! Row-style Hermite normal form of small integer matrices.

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Reduces `rows` in place to Hermite normal form and drops zero rows.
///
/// Afterwards the rows are in echelon form, every pivot is positive, and the entries
/// above a pivot lie in `[0, pivot)`. The row lattice is unchanged.
#[allow(clippy::needless_range_loop)]
pub(crate) fn hermite(rows: &mut Vec<Vec<i128>>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        for r in pivot_row + 1..rows.len() {
            let (a, b) = (rows[pivot_row][col], rows[r][col]);
            if b == 0 {
                continue;
            }
            // unimodular 2x2 step: [u v; -b/g a/g] has determinant 1
            let (g, u, v) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            for c in 0..cols {
                let (x, y) = (rows[pivot_row][c], rows[r][c]);
                rows[pivot_row][c] = u * x + v * y;
                rows[r][c] = -bg * x + ag * y;
            }
        }
        let p = rows[pivot_row][col];
        if p == 0 {
            continue;
        }
        if p < 0 {
            for x in rows[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = rows[pivot_row][col];
        for r in 0..pivot_row {
            let k = rows[r][col].div_euclid(p);
            if k != 0 {
                for c in 0..cols {
                    rows[r][c] -= k * rows[pivot_row][c];
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows.retain(|r| r.iter().any(|&x| x != 0));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_column_form() {
        let mut m = vec![vec![4, 2], vec![6, 1], vec![0, 8]];
        hermite(&mut m);
        // rows (4,2),(6,1),(0,8) span d = 2 in column 0
        assert_eq!(m[0][0], 2);
        assert_eq!(m.len(), 2);
        assert!(m[1][0] == 0 && m[1][1] > 0);
        assert!((0..m[1][1]).contains(&m[0][1]));
    }

    #[test]
    fn zero_matrix_collapses() {
        let mut m = vec![vec![0, 0], vec![0, 0]];
        hermite(&mut m);
        assert!(m.is_empty());
    }
}
