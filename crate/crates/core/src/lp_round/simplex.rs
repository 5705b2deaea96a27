//! Dense primal simplex for `max c'x, Ax <= b, x >= 0` with `b >= 0`.
//!
//! The slack basis is feasible for this form, so no phase one is needed.
//! Bland's rule keeps degenerate pivots from cycling.

#[derive(Debug, Clone, PartialEq)]
pub enum SimplexStatus {
    Optimal { objective: f64, x: Vec<f64> },
    Unbounded,
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64], tol: f64) -> SimplexStatus {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length");
    assert!(b.iter().all(|&v| v >= 0.0), "rhs must be non-negative");

    let width = n + m + 1;
    let mut tab = vec![vec![0.0; width]; m + 1];
    for (row, (coefs, &rhs)) in tab.iter_mut().zip(a.iter().zip(b)) {
        row[..n].copy_from_slice(coefs);
        row[width - 1] = rhs;
    }
    for i in 0..m {
        tab[i][n + i] = 1.0;
    }
    // objective row holds reduced costs -c
    for (j, &cj) in c.iter().enumerate() {
        tab[m][j] = -cj;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| tab[m][j] < -tol) {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let coef = tab[i][enter];
            if coef > tol {
                let ratio = tab[i][width - 1] / coef;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best - tol
                            || ((ratio - best).abs() <= tol && basis[i] < basis[k])
                        {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
        }
        let Some((pivot_row, _)) = leave else {
            return SimplexStatus::Unbounded;
        };
        pivot(&mut tab, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    let mut x = vec![0.0; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tab[i][width - 1];
        }
    }
    SimplexStatus::Optimal {
        objective: tab[m][width - 1],
        x,
    }
}

fn pivot(tab: &mut [Vec<f64>], row: usize, col: usize) {
    let p = tab[row][col];
    tab[row].iter_mut().for_each(|v| *v /= p);
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let factor = r[col];
        if factor != 0.0 {
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
            }
        }
    }
}
