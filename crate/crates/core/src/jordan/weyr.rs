use crate::numerics::{CMatrix, Scalar, Tolerances};

/// Weyr characteristic of `a` at `lambda`:
/// `w_j = dim ker (a - lambda e)^j - dim ker (a - lambda e)^{j-1}`,
/// stopping at the first zero. Empty when `lambda` is not an eigenvalue.
///
/// Float ranks of `(a - lambda e)^j` are measured against `max(1, |a|)^j`.
/// The exact backend never forms the powers; see [`exact_weyr`].
pub fn weyr_sequence<S: Scalar>(a: &CMatrix<S>, lambda: &S, tol: &Tolerances) -> Vec<usize> {
    if S::EXACT {
        return exact_weyr(&a.shifted(lambda));
    }
    let n = a.dim();
    let unit = if S::EXACT { 0.0 } else { operator_scale(a) };
    let mut scale = 1.0;
    let shifted = a.shifted(lambda);
    let mut power = CMatrix::identity(n);
    let mut previous = 0;
    let mut weyr = Vec::new();
    for _ in 0..n {
        power = &power * &shifted;
        scale *= unit;
        let kernel = power.kernel_dim_scaled(tol, scale);
        if kernel <= previous {
            break;
        }
        weyr.push(kernel - previous);
        previous = kernel;
        if kernel == n {
            break;
        }
    }
    weyr
}

/// Exact Weyr characteristic from the ranges `N^j C^n = N (N^{j-1} C^n)`,
/// each kept as a reduced row-echelon basis. Entries stay the size of a
/// reduced basis instead of growing with the power.
fn exact_weyr<S: Scalar>(shifted: &CMatrix<S>) -> Vec<usize> {
    let n = shifted.dim();
    // columns of N span its range
    let mut basis = reduce(
        (0..n)
            .map(|j| (0..n).map(|i| shifted[(i, j)].clone()).collect())
            .collect(),
    );
    let mut previous = 0;
    let mut weyr = Vec::new();
    loop {
        let kernel = n - basis.len();
        if kernel <= previous {
            break;
        }
        weyr.push(kernel - previous);
        previous = kernel;
        if kernel == n {
            break;
        }
        let images = basis
            .iter()
            .map(|v| shifted.mul_vec(v).expect("square operator"))
            .collect();
        basis = reduce(images);
    }
    weyr
}

/// Reduced row-echelon basis of the span of `rows` (exact zero tests).
fn reduce<S: Scalar>(mut rows: Vec<Vec<S>>) -> Vec<Vec<S>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = S::one() / &rows[rank][col];
        let pivot: Vec<S> = rows[rank].iter().map(|x| x.clone() * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                *x = x.clone() - p.clone() * &factor;
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// `max(1, largest singular value)`.
pub(crate) fn operator_scale<S: Scalar>(a: &CMatrix<S>) -> f64 {
    a.singular_values().first().copied().unwrap_or(0.0).max(1.0)
}

/// Conjugate partition. Maps a Weyr characteristic to the Segre
/// characteristic (Jordan block lengths, descending) and back.
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let largest = parts.iter().copied().max().unwrap_or(0);
    (1..=largest)
        .map(|i| parts.iter().filter(|&&p| p >= i).count())
        .collect()
}

pub fn segre_from_weyr(weyr: &[usize]) -> Vec<usize> {
    conjugate_partition(weyr)
}

pub fn weyr_from_segre(segre: &[usize]) -> Vec<usize> {
    conjugate_partition(segre)
}
