//! Small dense helpers. Dimensions here stay in the single digits, so plain
//! slices and Gaussian elimination are all that is needed.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn scale(s: f64, a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| s * x).collect()
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<f64>], cols: usize, tol: f64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let (best, best_val) = (row..m.len())
            .map(|r| (r, m[r][col].abs()))
            .fold((row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best_val <= tol {
            continue;
        }
        m.swap(row, best);
        let p = m[row][col];
        for v in m[row].iter_mut() {
            *v /= p;
        }
        for r in 0..m.len() {
            if r != row {
                let f = m[r][col];
                if f != 0.0 {
                    for c in 0..m[r].len() {
                        m[r][c] -= f * m[row][c];
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Numerical rank of the matrix with the given rows.
pub fn rank(rows: &[Vec<f64>], cols: usize, tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    rref(&mut m, cols, tol).len()
}

/// A nonzero vector `v` with `rows * v = 0`, scaled to max-abs 1, if one exists.
pub fn null_vector(rows: &[Vec<f64>], cols: usize, tol: f64) -> Option<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let pivots = rref(&mut m, cols, tol);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![0.0; cols];
    v[free] = 1.0;
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free];
    }
    let n = max_abs(&v);
    Some(scale(1.0 / n, &v))
}

/// Whether `y` lies in the column space of the matrix with the given rows.
pub fn in_column_space(rows: &[Vec<f64>], y: &[f64], tol: f64) -> bool {
    let cols = rows.first().map_or(0, Vec::len);
    let base = rank(rows, cols, tol);
    let augmented: Vec<Vec<f64>> = rows
        .iter()
        .zip(y)
        .map(|(r, yi)| {
            let mut r = r.clone();
            r.push(*yi);
            r
        })
        .collect();
    rank(&augmented, cols + 1, tol) == base
}
