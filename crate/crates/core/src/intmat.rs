//! Exact integer linear algebra: Hermite and Smith normal forms, kernels,
//! span membership and fraction-free determinants.
//!
//! Row vectors throughout. The Hermite form is lower echelon: the row owning
//! pivot column `c` vanishes right of `c`, its pivot is positive, and every
//! later row has its entry in column `c` reduced into `[0, pivot)`. For a
//! full-rank square input this is a lower-triangular matrix.

pub type Int = i128;
pub type Matrix = Vec<Vec<Int>>;

pub fn floor_div(a: Int, b: Int) -> Int {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn modulo(a: Int, m: Int) -> Int {
    let r = a % m;
    if r < 0 {
        r + m.abs()
    } else {
        r
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| Int::from(i == j)).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            let mut out = vec![0; cols];
            for (k, &x) in row.iter().enumerate().take(inner) {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o += x * y;
                }
            }
            out
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Int], m: &Matrix) -> Vec<Int> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut out = vec![0; cols];
    for (&x, row) in v.iter().zip(m) {
        if x == 0 {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

fn axpy(target: &mut [Int], q: Int, row: &[Int]) {
    if q == 0 {
        return;
    }
    for (t, &r) in target.iter_mut().zip(row) {
        *t -= q * r;
    }
}

fn pivot_of(row: &[Int]) -> Option<usize> {
    row.iter().rposition(|&x| x != 0)
}

/// Lower-echelon Hermite normal form of the row span. Zero rows are dropped;
/// the result is ordered by ascending pivot column.
pub fn hermite(rows: &[Vec<Int>], ncols: usize) -> Matrix {
    let mut work: Vec<Vec<Int>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            r.clone()
        })
        .collect();
    let mut pivots: Vec<Vec<Int>> = Vec::new();
    for col in (0..ncols).rev() {
        loop {
            let live: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            let &best = live.iter().min_by_key(|&&i| work[i][col].abs()).unwrap();
            let prow = work[best].clone();
            for &i in &live {
                if i != best {
                    let q = floor_div(work[i][col], prow[col]);
                    axpy(&mut work[i], q, &prow);
                }
            }
        }
        if let Some(i) = (0..work.len()).find(|&i| work[i][col] != 0) {
            let mut row = work.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(row);
        }
        work.retain(|r| r.iter().any(|&x| x != 0));
    }
    pivots.reverse();
    for i in 0..pivots.len() {
        for j in (0..i).rev() {
            let c = pivot_of(&pivots[j]).unwrap();
            let q = floor_div(pivots[i][c], pivots[j][c]);
            if q != 0 {
                let pj = pivots[j].clone();
                axpy(&mut pivots[i], q, &pj);
            }
        }
    }
    pivots
}

/// Full-rank Hermite form; `None` when the rows do not span a full-rank lattice.
pub fn hermite_full(rows: &[Vec<Int>], ncols: usize) -> Option<Matrix> {
    let h = hermite(rows, ncols);
    (h.len() == ncols).then_some(h)
}

/// Reduce `v` by an echelon basis. Returns the remainder and the integer
/// multiples of each basis row that were subtracted.
pub fn reduce_by(echelon: &Matrix, v: &[Int]) -> (Vec<Int>, Vec<Int>) {
    let mut rem = v.to_vec();
    let mut coeffs = vec![0; echelon.len()];
    for (i, row) in echelon.iter().enumerate().rev() {
        let c = pivot_of(row).expect("echelon rows are nonzero");
        let q = floor_div(rem[c], row[c]);
        axpy(&mut rem, q, row);
        coeffs[i] = q;
    }
    (rem, coeffs)
}

pub fn in_span(echelon: &Matrix, v: &[Int]) -> bool {
    reduce_by(echelon, v).0.iter().all(|&x| x == 0)
}

/// Integer coefficients `c` with `c · rows = target`, if any exist.
pub fn solve_combination(rows: &[Vec<Int>], target: &[Int]) -> Option<Vec<Int>> {
    let k = rows.len();
    let n = target.len();
    let aug: Matrix = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = vec![0; k + n];
            v[i] = 1;
            v[k..].copy_from_slice(r);
            v
        })
        .collect();
    let h = hermite(&aug, k + n);
    let image: Matrix = h
        .into_iter()
        .filter(|r| pivot_of(r).unwrap() >= k)
        .collect();
    let mut v = vec![0; k + n];
    v[k..].copy_from_slice(target);
    let (rem, _) = reduce_by(&image, &v);
    if rem[k..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(rem[..k].iter().map(|&x| -x).collect())
}

/// Generators (in Hermite form) of `{z ∈ Z^k : z·A ≡ 0}` where column `j` of
/// the product is taken modulo `moduli[j]` (zero means exact).
///
/// Columns that vanish are skipped and the rest are processed in blocks,
/// intersecting the kernel lattice one block at a time, so the Hermite
/// reductions stay of size about `3k × 2k` however many columns there are.
pub fn kernel(rows: &[Vec<Int>], moduli: &[Int]) -> Matrix {
    let k = rows.len();
    let live: Vec<usize> = (0..moduli.len())
        .filter(|&j| {
            let m = moduli[j];
            rows.iter().any(|r| if m == 0 { r[j] != 0 } else { r[j].rem_euclid(m) != 0 })
        })
        .collect();
    let mut basis = identity(k);
    for block in live.chunks(k.max(4)) {
        let image: Matrix = basis
            .iter()
            .map(|b| {
                block
                    .iter()
                    .map(|&j| {
                        let v: Int = (0..k).map(|i| b[i] * rows[i][j]).sum();
                        if moduli[j] == 0 { v } else { v.rem_euclid(moduli[j]) }
                    })
                    .collect()
            })
            .collect();
        let block_moduli: Vec<Int> = block.iter().map(|&j| moduli[j]).collect();
        let sub = kernel_block(&image, &block_moduli);
        basis = hermite(&mat_mul(&sub, &basis), k);
        if basis.is_empty() {
            break;
        }
    }
    basis
}

fn kernel_block(rows: &[Vec<Int>], moduli: &[Int]) -> Matrix {
    let k = rows.len();
    let n = moduli.len();
    let mut aug: Matrix = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = vec![0; k + n];
            v[i] = 1;
            v[k..].copy_from_slice(r);
            v
        })
        .collect();
    for (j, &m) in moduli.iter().enumerate() {
        if m != 0 {
            let mut v = vec![0; k + n];
            v[k + j] = m;
            aug.push(v);
        }
    }
    hermite(&aug, k + n)
        .into_iter()
        .filter(|r| pivot_of(r).unwrap() < k)
        .map(|r| r[..k].to_vec())
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &Matrix) -> Int {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn minor(m: &Matrix, skip_row: usize, skip_col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(m: &Matrix) -> Vec<Int> {
    (1..=m.len())
        .map(|k| det(&m[..k].iter().map(|r| r[..k].to_vec()).collect()))
        .collect()
}

/// Smith form `D = U·A·V` of a square nonsingular matrix. Returns the
/// diagonal (each entry divides the next), `V` and `V⁻¹`.
pub fn smith(a: &Matrix) -> (Vec<Int>, Matrix, Matrix) {
    let n = a.len();
    let mut m = a.clone();
    let mut v = identity(n);
    let mut vinv = identity(n);

    // column op: col_b -= q col_a
    let col_sub = |m: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, a: usize, b: usize, q: Int| {
        for row in m.iter_mut() {
            row[b] -= q * row[a];
        }
        for row in v.iter_mut() {
            row[b] -= q * row[a];
        }
        let rb = vinv[b].clone();
        for (x, y) in vinv[a].iter_mut().zip(rb) {
            *x += q * y;
        }
    };
    let col_swap = |m: &mut Matrix, v: &mut Matrix, vinv: &mut Matrix, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
        vinv.swap(a, b);
    };

    let mut k = 0;
    while k < n {
        let mut best: Option<(usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(k, bi);
        col_swap(&mut m, &mut v, &mut vinv, k, bj);
        let mut clean = true;
        for i in k + 1..n {
            let q = floor_div(m[i][k], m[k][k]);
            if q != 0 {
                let rk = m[k].clone();
                axpy(&mut m[i], q, &rk);
            }
            if m[i][k] != 0 {
                clean = false;
            }
        }
        for j in k + 1..n {
            let q = floor_div(m[k][j], m[k][k]);
            if q != 0 {
                col_sub(&mut m, &mut v, &mut vinv, k, j, q);
            }
            if m[k][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let p = m[k][k];
        if let Some(i) = (k + 1..n).find(|&i| (k + 1..n).any(|j| m[i][j] % p != 0)) {
            let ri = m[i].clone();
            for (x, y) in m[k].iter_mut().zip(ri) {
                *x += y;
            }
            continue;
        }
        if m[k][k] < 0 {
            m[k].iter_mut().for_each(|x| *x = -*x);
        }
        k += 1;
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    (diag, v, vinv)
}

/// Order of the subgroup of `⊕ Z/moduli[j]` generated by `gens`.
/// Every modulus must be positive.
pub fn subgroup_order(gens: &[Vec<Int>], moduli: &[Int]) -> u128 {
    let n = moduli.len();
    let mut rows: Matrix = gens.to_vec();
    for (j, &m) in moduli.iter().enumerate() {
        let mut r = vec![0; n];
        r[j] = m;
        rows.push(r);
    }
    let h = hermite_full(&rows, n).expect("moduli give full rank");
    let index: Int = (0..n).map(|i| h[i][i]).product();
    let total: Int = moduli.iter().product();
    (total / index) as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_lower_triangular_and_reduced() {
        let rows = vec![vec![4, 6, 2], vec![2, 2, 8], vec![0, 4, 6]];
        let h = hermite_full(&rows, 3).unwrap();
        for i in 0..3 {
            assert!(h[i][i] > 0);
            for j in i + 1..3 {
                assert_eq!(h[i][j], 0);
            }
            for j in 0..i {
                assert!(h[i][j] >= 0 && h[i][j] < h[j][j]);
            }
        }
        assert_eq!(det(&h).abs(), det(&rows).abs());
        for r in &rows {
            assert!(in_span(&h, r));
        }
    }

    #[test]
    fn solve_and_kernel() {
        let rows = vec![vec![2, 0], vec![0, 3], vec![1, 1]];
        let c = solve_combination(&rows, &[5, 7]).unwrap();
        assert_eq!(vec_mat(&c, &rows), vec![5, 7]);
        assert!(solve_combination(&[vec![2, 0]], &[1, 0]).is_none());
        let k = kernel(&rows, &[0, 0]);
        assert_eq!(k.len(), 1);
        assert_eq!(vec_mat(&k[0], &rows), vec![0, 0]);
    }

    #[test]
    fn smith_transform_diagonalizes() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, v, vinv) = smith(&a);
        assert_eq!(d, vec![2, 6, 12]);
        assert_eq!(mat_mul(&v, &vinv), identity(3));
        // every row of A·V is in the span of diag(d)
        for row in mat_mul(&a, &v) {
            for (x, di) in row.iter().zip(&d) {
                assert_eq!(x % di, 0);
            }
        }
    }

    #[test]
    fn subgroup_order_of_cyclic_generator() {
        assert_eq!(subgroup_order(&[vec![2, 0]], &[4, 3]), 2);
        assert_eq!(subgroup_order(&[vec![1, 1]], &[4, 3]), 12);
    }
}
