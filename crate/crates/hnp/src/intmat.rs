//! Exact integer matrix and lattice arithmetic: Hermite and Smith normal
//! forms, kernels, linear solves and lattice quotients.
//!
//! Lattices are row lattices: a matrix stands for the subgroup of Z^cols
//! generated by its rows. Arithmetic is checked 128-bit; coefficient growth
//! is tamed by minimal-pivot selection, and an overflow aborts loudly
//! instead of corrupting results.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

#[inline]
fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer overflow in exact arithmetic")
}

#[inline]
fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in exact arithmetic")
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>, cols: usize) -> Mat {
        let mut m = Mat::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<i128> {
        self.row(i).to_vec()
    }

    pub fn push_row(&mut self, r: &[i128]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend_from_slice(r);
        self.rows += 1;
    }

    pub fn stack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0i128; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let r = self.row(i);
            for (o, &x) in out.iter_mut().zip(r.iter()) {
                *o = add(*o, mul(vi, x));
            }
        }
        out
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            let prod = other.apply_row(self.row(i));
            out.data[i * other.cols..(i + 1) * other.cols].copy_from_slice(&prod);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self[(i, j)];
            self[(i, j)] = -v;
        }
    }

    /// row[dst] += q * row[src]
    fn add_multiple(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = add(self[(dst, j)], mul(q, self[(src, j)]));
            self[(dst, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Row Hermite normal form with transform: returns (H, U, rank) with
/// U unimodular, U * M = H, H in row echelon form with positive pivots and
/// reduced entries above each pivot; zero rows at the bottom.
pub fn hnf_row(m: &Mat) -> (Mat, Mat, usize) {
    let mut h = m.clone();
    let mut u = Mat::identity(m.rows);
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..h.cols {
        // Euclidean elimination within this column, below pivot_row.
        loop {
            // Find the row with the smallest nonzero |entry| in this column.
            let mut best: Option<(usize, i128)> = None;
            for i in pivot_row..h.rows {
                let v = h[(i, col)].abs();
                if v != 0 && best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
            let Some((bi, _)) = best else { break };
            h.swap_rows(pivot_row, bi);
            u.swap_rows(pivot_row, bi);
            if h[(pivot_row, col)] < 0 {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let p = h[(pivot_row, col)];
            let mut dirty = false;
            for i in pivot_row + 1..h.rows {
                let q = h[(i, col)].div_euclid(p);
                if q != 0 {
                    h.add_multiple(i, pivot_row, -q);
                    u.add_multiple(i, pivot_row, -q);
                }
                if h[(i, col)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if h[(pivot_row, col)] != 0 {
            pivots.push((pivot_row, col));
            pivot_row += 1;
            if pivot_row == h.rows {
                break;
            }
        }
    }
    // Check remaining columns for a pivot in the final row sweep above may
    // have ended early; handle the case pivot_row == rows cleanly.
    // Reduce entries above each pivot.
    for &(pr, pc) in pivots.iter() {
        let p = h[(pr, pc)];
        for i in 0..pr {
            let q = h[(i, pc)].div_euclid(p);
            if q != 0 {
                h.add_multiple(i, pr, -q);
                u.add_multiple(i, pr, -q);
            }
        }
    }
    (h, u, pivots.len())
}

/// Row Hermite normal form without the transform matrix — use for wide
/// matrices where the rows x rows transform would dominate memory.
pub fn hnf_row_basis(m: &Mat) -> (Mat, usize) {
    let mut h = m.clone();
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..h.cols {
        loop {
            let mut best: Option<(usize, i128)> = None;
            for i in pivot_row..h.rows {
                let v = h[(i, col)].abs();
                if v != 0 && best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
            let Some((bi, _)) = best else { break };
            h.swap_rows(pivot_row, bi);
            if h[(pivot_row, col)] < 0 {
                h.negate_row(pivot_row);
            }
            let p = h[(pivot_row, col)];
            let mut dirty = false;
            for i in pivot_row + 1..h.rows {
                let q = h[(i, col)].div_euclid(p);
                if q != 0 {
                    h.add_multiple(i, pivot_row, -q);
                }
                if h[(i, col)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if pivot_row < h.rows && h[(pivot_row, col)] != 0 {
            pivots.push((pivot_row, col));
            pivot_row += 1;
            if pivot_row == h.rows {
                break;
            }
        }
    }
    for &(pr, pc) in pivots.iter() {
        let p = h[(pr, pc)];
        for i in 0..pr {
            let q = h[(i, pc)].div_euclid(p);
            if q != 0 {
                h.add_multiple(i, pr, -q);
            }
        }
    }
    (h, pivots.len())
}

/// Basis of the left kernel {v : v * M = 0}, rows of the returned matrix.
pub fn left_kernel(m: &Mat) -> Mat {
    let (h, u, rank) = hnf_row(m);
    let _ = h;
    let mut out = Mat::zero(0, m.rows);
    for i in rank..m.rows {
        out.push_row(u.row(i));
    }
    out
}

/// Solve X * M = T row-wise; returns None when some row of T is not in the
/// row lattice of M.
pub fn solve_in_row_lattice(m: &Mat, t: &Mat) -> Option<Mat> {
    assert_eq!(m.cols, t.cols);
    let (h, u, rank) = hnf_row(m);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for i in 0..rank {
        let col = (0..h.cols).find(|&j| h[(i, j)] != 0).expect("nonzero row");
        pivots.push((i, col));
    }
    let mut x = Mat::zero(0, m.rows);
    for ti in 0..t.rows {
        let mut v = t.row_vec(ti);
        let mut coeffs = vec![0i128; h.rows];
        for &(pr, pc) in &pivots {
            let p = h[(pr, pc)];
            if v[pc] % p != 0 {
                return None;
            }
            let q = v[pc] / p;
            if q != 0 {
                for j in 0..h.cols {
                    v[j] = add(v[j], mul(-q, h[(pr, j)]));
                }
            }
            coeffs[pr] = q;
        }
        if v.iter().any(|&c| c != 0) {
            return None;
        }
        // coeffs are in H-row coordinates; U converts them to M-row
        // coordinates: (coeffs * U) * M = coeffs * H = t.
        x.push_row(&u.apply_row(&coeffs));
    }
    Some(x)
}

/// Diagonal of the Smith normal form: nonnegative d_1 | d_2 | ... padded
/// with zeros up to min(rows, cols).
pub fn snf_diagonal(m: &Mat) -> Vec<i128> {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(n);
    let mut top = 0usize;
    // Work on the trailing submatrix starting at (top, top) after column
    // permutation bookkeeping: we physically swap columns too.
    let swap_cols = |a: &mut Mat, x: usize, y: usize| {
        if x == y {
            return;
        }
        for i in 0..a.rows {
            let tmp = a[(i, x)];
            a[(i, x)] = a[(i, y)];
            a[(i, y)] = tmp;
        }
    };
    let add_col = |a: &mut Mat, dst: usize, src: usize, q: i128| {
        if q == 0 {
            return;
        }
        for i in 0..a.rows {
            let v = add(a[(i, dst)], mul(q, a[(i, src)]));
            a[(i, dst)] = v;
        }
    };
    while top < n {
        // Find the minimal nonzero entry in the trailing submatrix.
        let mut best: Option<(usize, usize, i128)> = None;
        for i in top..a.rows {
            for j in top..a.cols {
                let v = a[(i, j)].abs();
                if v != 0 && best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        a.swap_rows(top, bi);
        swap_cols(&mut a, top, bj);
        if a[(top, top)] < 0 {
            a.negate_row(top);
        }
        let p = a[(top, top)];
        // Clear the column and row.
        let mut again = false;
        for i in top + 1..a.rows {
            let q = a[(i, top)].div_euclid(p);
            a.add_multiple(i, top, -q);
            if a[(i, top)] != 0 {
                again = true;
            }
        }
        if again {
            continue;
        }
        for j in top + 1..a.cols {
            let q = a[(top, j)].div_euclid(p);
            add_col(&mut a, j, top, -q);
            if a[(top, j)] != 0 {
                again = true;
            }
        }
        if again {
            continue;
        }
        // Divisibility: p must divide the trailing block.
        let mut fixed = true;
        'scan: for i in top + 1..a.rows {
            for j in top + 1..a.cols {
                if a[(i, j)] % p != 0 {
                    // Fold that row in and restart this pivot.
                    a.add_multiple(top, i, 1);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(p);
        top += 1;
    }
    while diag.len() < n {
        diag.push(0);
    }
    diag
}

/// Basis (nonzero HNF rows) of the lattice spanned by the rows of `m`.
pub fn lattice_basis(m: &Mat) -> Mat {
    let (h, _, rank) = hnf_row(m);
    let mut out = Mat::zero(0, m.cols);
    for i in 0..rank {
        out.push_row(h.row(i));
    }
    out
}

/// Sum of two row lattices.
pub fn lattice_sum(a: &Mat, b: &Mat) -> Mat {
    lattice_basis(&a.stack(b))
}

/// Intersection of two row lattices in the same ambient Z^cols.
pub fn lattice_intersection(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.cols, b.cols);
    let stacked = a.stack(b);
    let ker = left_kernel(&stacked);
    // Each kernel row (x | y) gives x*A = -y*B, a point of the intersection.
    let mut gens = Mat::zero(0, a.cols);
    for i in 0..ker.rows {
        let x = &ker.row(i)[..a.rows];
        gens.push_row(&a.apply_row(x));
    }
    lattice_basis(&gens)
}

/// Whether the row lattice of `a` is contained in the row lattice of `b`.
pub fn is_sublattice(a: &Mat, b: &Mat) -> bool {
    solve_in_row_lattice(b, a).is_some()
}

/// Invariant factors (entries >= 2) of the finite quotient L1 / L2 of row
/// lattices with L2 a finite-index sublattice of L1. Returns None when the
/// quotient is infinite or L2 is not contained in L1.
pub fn quotient_invariant_factors(l1: &Mat, l2: &Mat) -> Option<Vec<u64>> {
    let b1 = lattice_basis(l1);
    let x = solve_in_row_lattice(&b1, l2)?;
    let diag = snf_diagonal(&x);
    let rank_x = diag.iter().filter(|&&d| d != 0).count();
    if rank_x < b1.rows {
        return None; // infinite quotient
    }
    Some(
        diag.into_iter()
            .filter(|&d| d >= 2)
            .map(|d| d as u64)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_reconstructs() {
        let m = Mat::from_rows(
            vec![
                vec![-6, 111, -36, 6],
                vec![5, -672, 210, 74],
                vec![0, -255, 81, 24],
                vec![-7, 255, -81, -10],
            ],
            4,
        );
        let (h, u, rank) = hnf_row(&m);
        // The sample matrix has Smith form diag(1, 3, 21, 0), hence rank 3.
        assert_eq!(rank, 3);
        assert_eq!(u.matmul(&m), h);
        // U unimodular: it has an integer inverse; equivalently the HNF of U
        // is the identity.
        let (hu, _, ru) = hnf_row(&u);
        assert_eq!(ru, 4);
        assert_eq!(hu, Mat::identity(4));
    }

    #[test]
    fn snf_known_example() {
        let m = Mat::from_rows(
            vec![
                vec![-6, 111, -36, 6],
                vec![5, -672, 210, 74],
                vec![0, -255, 81, 24],
                vec![-7, 255, -81, -10],
            ],
            4,
        );
        assert_eq!(snf_diagonal(&m), vec![1, 3, 21, 0]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = Mat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]], 3);
        let d = snf_diagonal(&m);
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn kernel_and_solve() {
        let m = Mat::from_rows(vec![vec![1, 2], vec![2, 4], vec![0, 1]], 2);
        let k = left_kernel(&m);
        assert_eq!(k.rows, 1);
        for i in 0..k.rows {
            assert!(m.apply_row(k.row(i)).iter().all(|&v| v == 0));
        }
        let t = Mat::from_rows(vec![vec![1, 0], vec![3, 7]], 2);
        let x = solve_in_row_lattice(&m, &t).unwrap();
        assert_eq!(x.matmul(&m), t);
        // (0, 1/2) style failure: (1,1) needs half of row 0.
        let t2 = Mat::from_rows(vec![vec![1, 1]], 2);
        assert!(solve_in_row_lattice(&m, &t2).is_some()); // 1*(1,2) - 1*(0,1)
        let m2 = Mat::from_rows(vec![vec![2, 0], vec![0, 2]], 2);
        assert!(solve_in_row_lattice(&m2, &Mat::from_rows(vec![vec![1, 0]], 2)).is_none());
    }

    #[test]
    fn lattice_quotients() {
        // Z^2 / <(2,0),(0,3)> = Z/2 x Z/3 = Z/6.
        let l1 = Mat::identity(2);
        let l2 = Mat::from_rows(vec![vec![2, 0], vec![0, 3]], 2);
        assert_eq!(quotient_invariant_factors(&l1, &l2).unwrap(), vec![6]);
        // Z^2 / <(2,0),(0,2)> = Z/2 x Z/2.
        let l3 = Mat::from_rows(vec![vec![2, 0], vec![0, 2]], 2);
        assert_eq!(quotient_invariant_factors(&l1, &l3).unwrap(), vec![2, 2]);
        // Infinite quotient detected.
        let l4 = Mat::from_rows(vec![vec![2, 0]], 2);
        assert!(quotient_invariant_factors(&l1, &l4).is_none());
        // Not a sublattice.
        let l5 = Mat::from_rows(vec![vec![1, 0], vec![0, 1]], 2);
        assert!(quotient_invariant_factors(&l3, &l5).is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let a = Mat::from_rows(vec![vec![2, 0], vec![0, 1]], 2);
        let b = Mat::from_rows(vec![vec![1, 0], vec![0, 3]], 2);
        let i = lattice_intersection(&a, &b);
        // Intersection is <(2,0),(0,3)>.
        assert!(is_sublattice(&i, &a) && is_sublattice(&i, &b));
        assert!(is_sublattice(&Mat::from_rows(vec![vec![2, 0], vec![0, 3]], 2), &i));
        let s = lattice_sum(&a, &b);
        assert_eq!(s, Mat::identity(2));
    }
}
