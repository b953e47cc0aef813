//! Exact integer linear algebra: solving `A x = b` over ℤ and a canonical
//! basis of the kernel lattice.

pub(crate) type Matrix = Vec<Vec<i128>>;

/// Integer solutions of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntegerSolution {
    /// A particular solution reduced modulo the kernel, or `None`.
    pub particular: Option<Vec<i128>>,
    /// Kernel basis in Hermite normal form: echelon rows with positive
    /// pivots and entries above each pivot in `[0, pivot)`.
    pub kernel: Vec<Vec<i128>>,
}

fn axpy(dst: &mut [i128], src: &[i128], factor: i128) {
    if factor != 0 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d += factor * s;
        }
    }
}

/// Reduces the rows of `m` (with `extra` rows carried along) to echelon
/// form by unimodular row operations. Returns the pivot columns.
fn echelon(m: &mut Matrix, extra: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows {
            break;
        }
        loop {
            let best = (top..rows)
                .filter(|&r| m[r][col] != 0)
                .min_by_key(|&r| (m[r][col].abs(), r));
            let Some(best) = best else { break };
            m.swap(top, best);
            extra.swap(top, best);
            let mut clean = true;
            for r in top + 1..rows {
                if m[r][col] != 0 {
                    let f = m[r][col].div_euclid(m[top][col]);
                    let (head, tail) = m.split_at_mut(r);
                    axpy(&mut tail[0], &head[top], -f);
                    let (head, tail) = extra.split_at_mut(r);
                    axpy(&mut tail[0], &head[top], -f);
                    if m[r][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if top < rows && m[top][col] != 0 {
            if m[top][col] < 0 {
                m[top].iter_mut().for_each(|x| *x = -*x);
                extra[top].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(col);
            top += 1;
        }
    }
    pivots
}

/// Hermite normal form of a row lattice; zero rows dropped.
pub(crate) fn hermite_rows(rows: Matrix) -> Matrix {
    let mut m = rows;
    let mut none: Matrix = vec![Vec::new(); m.len()];
    let pivots = echelon(&mut m, &mut none);
    m.truncate(pivots.len());
    for (i, &c) in pivots.iter().enumerate() {
        for r in 0..i {
            let f = m[r][c].div_euclid(m[i][c]);
            let (head, tail) = m.split_at_mut(i);
            axpy(&mut head[r], &tail[0], -f);
        }
    }
    m
}

/// Pivot column of each echelon row.
pub(crate) fn pivot_columns(rows: &Matrix) -> Vec<usize> {
    rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect()
}

/// Reduces `x` modulo a lattice in Hermite normal form.
pub(crate) fn reduce_mod(x: &mut [i128], basis: &Matrix) {
    for row in basis {
        let c = row.iter().position(|&v| v != 0).expect("nonzero row");
        let f = x[c].div_euclid(row[c]);
        axpy(x, row, -f);
    }
}

/// Solves `a x = b` over the integers; `a` has `cols` columns.
pub(crate) fn solve(a: &Matrix, b: &[i128], cols: usize) -> IntegerSolution {
    let eqs = a.len();
    // Work with the transpose: rows are unknowns.
    let mut t: Matrix = (0..cols).map(|j| (0..eqs).map(|i| a[i][j]).collect()).collect();
    let mut u: Matrix = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let pivots = echelon(&mut t, &mut u);
    let rank = pivots.len();
    let kernel = hermite_rows(u[rank..].to_vec());

    // Forward substitution for y with Σ y_i t[i] = b.
    let mut y = vec![0i128; rank];
    let mut feasible = true;
    for (i, &p) in pivots.iter().enumerate() {
        let partial: i128 = (0..i).map(|j| y[j] * t[j][p]).sum();
        let rest = b[p] - partial;
        if rest % t[i][p] != 0 {
            feasible = false;
            break;
        }
        y[i] = rest / t[i][p];
    }
    let particular = if feasible {
        let reached = (0..eqs).all(|e| (0..rank).map(|i| y[i] * t[i][e]).sum::<i128>() == b[e]);
        reached.then(|| {
            let mut x = vec![0i128; cols];
            for (i, &yi) in y.iter().enumerate() {
                axpy(&mut x, &u[i], yi);
            }
            reduce_mod(&mut x, &kernel);
            x
        })
    } else {
        None
    };
    IntegerSolution { particular, kernel }
}
