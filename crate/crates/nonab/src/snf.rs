//! Integer matrix utilities: column echelon form, kernels and linear
//! solves modulo per-row moduli, and Smith normal form with transform
//! tracking. Sized for the desk-scale cochain systems of this crate.

/// Column-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        self.column(j).iter().all(|&v| v == 0)
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(a * self.rows + i, b * self.rows + i);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for v in &mut self.data[j * self.rows..(j + 1) * self.rows] {
            *v = -*v;
        }
    }

    /// col[dst] += k * col[src]
    pub fn addmul_col(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self.data[src * self.rows + i];
            let d = &mut self.data[dst * self.rows + i];
            *d = d
                .checked_add(v.checked_mul(k).expect("integer overflow in column op"))
                .expect("integer overflow in column op");
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(j * self.rows + a, j * self.rows + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[j * self.rows + i];
            *v = -*v;
        }
    }

    /// row[dst] += k * row[src]
    pub fn addmul_row(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.data[j * self.rows + src];
            let d = &mut self.data[j * self.rows + dst];
            *d = d
                .checked_add(v.checked_mul(k).expect("integer overflow in row op"))
                .expect("integer overflow in row op");
        }
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rows];
        for j in 0..self.cols {
            if x[j] == 0 {
                continue;
            }
            for i in 0..self.rows {
                out[i] += self[(i, j)] * x[j];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[j * self.rows + i]
    }
}

/// Bring `a` to column echelon form by unimodular column operations,
/// mirroring every operation on `t` (if given). Returns the pivot list
/// as (row, col) pairs in order.
pub fn column_echelon(a: &mut IMat, mut t: Option<&mut IMat>) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut pc = 0;
    for r in 0..a.rows {
        if pc == a.cols {
            break;
        }
        loop {
            // pick the column with the smallest nonzero entry in row r
            let mut best: Option<(usize, i64)> = None;
            for j in pc..a.cols {
                let v = a[(r, j)];
                if v != 0 && best.map_or(true, |(_, b)| v.abs() < b.abs()) {
                    best = Some((j, v));
                }
            }
            let Some((bj, bv)) = best else { break };
            let mut done = true;
            for j in pc..a.cols {
                if j == bj || a[(r, j)] == 0 {
                    continue;
                }
                let k = a[(r, j)].div_euclid(bv);
                a.addmul_col(j, bj, -k);
                if let Some(t) = t.as_deref_mut() {
                    t.addmul_col(j, bj, -k);
                }
                if a[(r, j)] != 0 {
                    done = false;
                }
            }
            if done {
                a.swap_cols(pc, bj);
                if let Some(t) = t.as_deref_mut() {
                    t.swap_cols(pc, bj);
                }
                if a[(r, pc)] < 0 {
                    a.negate_col(pc);
                    if let Some(t) = t.as_deref_mut() {
                        t.negate_col(pc);
                    }
                }
                pivots.push((r, pc));
                pc += 1;
                break;
            }
        }
    }
    pivots
}

/// Basis of the lattice { x : d * x = 0 mod row_moduli } as columns of a
/// square full-rank matrix. A modulus of 0 means an exact equation.
pub fn kernel_with_moduli(d: &IMat, row_moduli: &[i64]) -> IMat {
    assert_eq!(row_moduli.len(), d.rows);
    if row_moduli.iter().all(|&m| m >= 1) {
        // finite constraints: the kernel contains lcm * Z^cols, so the
        // whole computation can run modulo the lcm and never overflow
        let m = row_moduli
            .iter()
            .fold(1i64, |acc, &v| acc / gcd(acc, v) * v);
        return kernel_mod(d, row_moduli, m);
    }
    kernel_with_moduli_exact(d, row_moduli)
}

fn kernel_with_moduli_exact(d: &IMat, row_moduli: &[i64]) -> IMat {
    let n = d.cols;
    // augmented [d | diag(m)], tracking only the x-block of the transform
    let mut a = IMat::zeros(d.rows, n + d.rows);
    for j in 0..n {
        for i in 0..d.rows {
            a[(i, j)] = d[(i, j)];
        }
    }
    for i in 0..d.rows {
        a[(i, n + i)] = row_moduli[i];
    }
    let mut t = IMat::zeros(n, n + d.rows);
    for j in 0..n {
        t[(j, j)] = 1;
    }
    column_echelon(&mut a, Some(&mut t));
    let mut gens = Vec::new();
    for j in 0..a.cols {
        if a.col_is_zero(j) {
            gens.push(t.column(j).to_vec());
        }
    }
    let mut basis = IMat::from_columns(n, &gens);
    column_echelon(&mut basis, None);
    let keep: Vec<Vec<i64>> = (0..basis.cols)
        .filter(|&j| !basis.col_is_zero(j))
        .map(|j| basis.column(j).to_vec())
        .collect();
    IMat::from_columns(n, &keep)
}

/// One integer solution x of d * x = target mod row_moduli, if any.
pub fn solve_with_moduli(d: &IMat, row_moduli: &[i64], target: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(row_moduli.len(), d.rows);
    assert_eq!(target.len(), d.rows);
    if row_moduli.iter().all(|&m| m >= 1) {
        let m = row_moduli
            .iter()
            .fold(1i64, |acc, &v| acc / gcd(acc, v) * v);
        return solve_mod(d, row_moduli, target, m);
    }
    solve_with_moduli_exact(d, row_moduli, target)
}

fn solve_with_moduli_exact(d: &IMat, row_moduli: &[i64], target: &[i64]) -> Option<Vec<i64>> {
    let n = d.cols;
    let mut a = IMat::zeros(d.rows, n + d.rows);
    for j in 0..n {
        for i in 0..d.rows {
            a[(i, j)] = d[(i, j)];
        }
    }
    for i in 0..d.rows {
        a[(i, n + i)] = row_moduli[i];
    }
    let mut t = IMat::identity(n + d.rows);
    let pivots = column_echelon(&mut a, Some(&mut t));
    // forward substitution against the echelon columns
    let mut residual = target.to_vec();
    let mut coef = vec![0i64; a.cols];
    for &(r, c) in &pivots {
        let p = a[(r, c)];
        if residual[r] % p != 0 {
            return None;
        }
        let k = residual[r] / p;
        coef[c] = k;
        if k != 0 {
            for i in 0..a.rows {
                residual[i] -= k * a[(i, c)];
            }
        }
    }
    if residual.iter().any(|&v| v != 0) {
        return None;
    }
    let full = t.mul_vec(&coef);
    Some(full[..n].to_vec())
}

/// Smith normal form data: u * a * v = diag(entries), with both u and its
/// inverse tracked (v is discarded).
pub struct Smith {
    pub u: IMat,
    pub u_inv: IMat,
    pub diag: Vec<i64>,
}

pub fn smith(a: &IMat) -> Smith {
    let mut a = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut u_inv = IMat::identity(a.rows);
    let n = a.rows.min(a.cols);
    let mut k = 0;
    while k < n {
        // find the nonzero entry of minimal magnitude in the trailing block
        let mut best: Option<(usize, usize, i64)> = None;
        for j in k..a.cols {
            for i in k..a.rows {
                let v = a[(i, j)];
                if v != 0 && best.map_or(true, |(_, _, b)| v.abs() < b.abs()) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        a.swap_rows(k, bi);
        u.swap_rows(k, bi);
        u_inv.swap_cols(k, bi);
        a.swap_cols(k, bj);
        loop {
            let mut clean = true;
            for i in k + 1..a.rows {
                let q = a[(i, k)].div_euclid(a[(k, k)]);
                if q != 0 {
                    a.addmul_row(i, k, -q);
                    u.addmul_row(i, k, -q);
                    u_inv.addmul_col(k, i, q);
                }
                if a[(i, k)] != 0 {
                    clean = false;
                }
            }
            for j in k + 1..a.cols {
                let q = a[(k, j)].div_euclid(a[(k, k)]);
                if q != 0 {
                    a.addmul_col(j, k, -q);
                }
                if a[(k, j)] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // a smaller remainder appeared off the pivot; bring it in
            let mut best: Option<(usize, usize, i64)> = None;
            for j in k..a.cols {
                for i in k..a.rows {
                    let v = a[(i, j)];
                    if v != 0 && best.map_or(true, |(_, _, b)| v.abs() < b.abs()) {
                        best = Some((i, j, v));
                    }
                }
            }
            let (bi, bj, _) = best.unwrap();
            a.swap_rows(k, bi);
            u.swap_rows(k, bi);
            u_inv.swap_cols(k, bi);
            a.swap_cols(k, bj);
        }
        if a[(k, k)] < 0 {
            a.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        k += 1;
    }
    // enforce the divisibility chain d_i | d_{i+1}
    loop {
        let mut fixed = true;
        for i in 0..k.saturating_sub(1) {
            let (d1, d2) = (a[(i, i)], a[(i + 1, i + 1)]);
            if d1 != 0 && d2 % d1 != 0 {
                fixed = false;
                // fold the pair (d1, d2) into (gcd, lcm)
                let g = gcd(d1, d2);
                let l = d1 / g * d2;
                a[(i, i)] = g;
                a[(i + 1, i + 1)] = l;
                // the row transforms for this classic step: since the
                // matrix is diagonal, realize it abstractly by a basis
                // change on the left captured in u / u_inv
                let (x, y) = bezout(d1, d2);
                // [g 0; 0 l] = P [d1 0; 0 d2] Q for P = [x y; -d2/g d1/g],
                // Q = [1 -y*d2/g; 1 x*d1/g] (Q is absorbed, untracked)
                let (p00, p01, p10, p11) = (x, y, -(d2 / g), d1 / g);
                // u rows i, i+1 <- P * rows
                for j in 0..u.cols {
                    let (r0, r1) = (u[(i, j)], u[(i + 1, j)]);
                    u[(i, j)] = p00 * r0 + p01 * r1;
                    u[(i + 1, j)] = p10 * r0 + p11 * r1;
                }
                // u_inv cols i, i+1 <- cols * P^{-1}; det P = 1
                let (q00, q01, q10, q11) = (p11, -p01, -p10, p00);
                for r in 0..u_inv.rows {
                    let (c0, c1) = (u_inv[(r, i)], u_inv[(r, i + 1)]);
                    u_inv[(r, i)] = c0 * q00 + c1 * q10;
                    u_inv[(r, i + 1)] = c0 * q01 + c1 * q11;
                }
            }
        }
        if fixed {
            break;
        }
    }
    let mut diag = vec![0i64; a.rows.min(a.cols)];
    for i in 0..diag.len() {
        diag[i] = a[(i, i)];
    }
    Smith { u, u_inv, diag }
}

fn reduce_row(a: &mut IMat, i: usize, m: i64) {
    for j in 0..a.cols {
        let v = &mut a[(i, j)];
        *v = v.rem_euclid(m);
    }
}

fn reduce_col(a: &mut IMat, j: usize, m: i64) {
    for i in 0..a.rows {
        let v = &mut a[(i, j)];
        *v = v.rem_euclid(m);
    }
}

fn scale_row(a: &mut IMat, i: usize, t: i64, m: i64) {
    for j in 0..a.cols {
        let v = &mut a[(i, j)];
        *v = (*v * t).rem_euclid(m);
    }
}

fn scale_col(a: &mut IMat, j: usize, t: i64, m: i64) {
    for i in 0..a.rows {
        let v = &mut a[(i, j)];
        *v = (*v * t).rem_euclid(m);
    }
}

/// A unit t mod m with t * v = gcd(v, m) mod m.
fn unit_scaling(v: i64, m: i64) -> i64 {
    let g = gcd(v, m);
    for t in 1..m.max(2) {
        if gcd(t, m) == 1 && (t * v).rem_euclid(m) == g {
            return t;
        }
    }
    unreachable!("every residue is a unit multiple of a divisor of the modulus")
}

fn inverse_mod(t: i64, m: i64) -> i64 {
    let (x, _) = bezout(t, m);
    x.rem_euclid(m.max(1))
}

/// Apply the determinant-one transform [[x, y], [z, w]] to rows (r0, r1).
fn pair_rows(a: &mut IMat, r0: usize, r1: usize, (x, y, z, w): (i64, i64, i64, i64), m: i64) {
    for j in 0..a.cols {
        let (v0, v1) = (a[(r0, j)], a[(r1, j)]);
        a[(r0, j)] = (x * v0 + y * v1).rem_euclid(m);
        a[(r1, j)] = (z * v0 + w * v1).rem_euclid(m);
    }
}

/// Apply the transform on the right to columns (c0, c1).
fn pair_cols(a: &mut IMat, c0: usize, c1: usize, (x, y, z, w): (i64, i64, i64, i64), m: i64) {
    for i in 0..a.rows {
        let (v0, v1) = (a[(i, c0)], a[(i, c1)]);
        a[(i, c0)] = (v0 * x + v1 * z).rem_euclid(m);
        a[(i, c1)] = (v0 * y + v1 * w).rem_euclid(m);
    }
}

/// Diagonalization of a matrix over Z/m by invertible transforms on both
/// sides: u * a * v = diag(d_1, ..., d_rank) with each d_i a divisor of m,
/// all entries kept in [0, m) throughout. u_inv is the inverse of u mod m.
struct DiagMod {
    u: IMat,
    u_inv: IMat,
    v: IMat,
    diag: Vec<i64>,
    rank: usize,
}

fn diagonalize_mod(a0: &IMat, m: i64) -> DiagMod {
    assert!(m >= 1);
    let mut a = a0.clone();
    for i in 0..a.rows {
        reduce_row(&mut a, i, m);
    }
    let mut u = IMat::identity(a.rows);
    let mut u_inv = IMat::identity(a.rows);
    let mut v = IMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut k = 0;
    'outer: while k < n {
        loop {
            // entry of the trailing block with the smallest gcd with m
            let mut best: Option<(usize, usize, i64)> = None;
            for j in k..a.cols {
                for i in k..a.rows {
                    let w = a[(i, j)];
                    if w != 0 {
                        let g = gcd(w, m);
                        if best.map_or(true, |(_, _, b)| g < b) {
                            best = Some((i, j, g));
                        }
                    }
                }
            }
            let Some((bi, bj, g)) = best else {
                break 'outer;
            };
            a.swap_rows(k, bi);
            u.swap_rows(k, bi);
            u_inv.swap_cols(k, bi);
            a.swap_cols(k, bj);
            v.swap_cols(k, bj);
            let t = unit_scaling(a[(k, k)], m);
            scale_row(&mut a, k, t, m);
            scale_row(&mut u, k, t, m);
            scale_col(&mut u_inv, k, inverse_mod(t, m), m);
            debug_assert_eq!(a[(k, k)], g);
            // a residue not divisible by the pivot: fold its line into the
            // pivot line to reach the joint gcd, then pick pivots afresh
            if let Some(i) = (k + 1..a.rows).find(|&i| a[(i, k)] % g != 0) {
                let w = a[(i, k)];
                let d0 = gcd(g, w);
                let (x, y) = bezout(g, w);
                pair_rows(&mut a, k, i, (x, y, -(w / d0), g / d0), m);
                pair_rows(&mut u, k, i, (x, y, -(w / d0), g / d0), m);
                pair_cols(&mut u_inv, k, i, (g / d0, -y, w / d0, x), m);
                continue;
            }
            if let Some(j) = (k + 1..a.cols).find(|&j| a[(k, j)] % g != 0) {
                let w = a[(k, j)];
                let d0 = gcd(g, w);
                let (x, y) = bezout(g, w);
                pair_cols(&mut a, k, j, (x, -(w / d0), y, g / d0), m);
                pair_cols(&mut v, k, j, (x, -(w / d0), y, g / d0), m);
                continue;
            }
            for i in k + 1..a.rows {
                let q = a[(i, k)] / g;
                if q != 0 {
                    a.addmul_row(i, k, -q);
                    reduce_row(&mut a, i, m);
                    u.addmul_row(i, k, -q);
                    reduce_row(&mut u, i, m);
                    u_inv.addmul_col(k, i, q);
                    reduce_col(&mut u_inv, k, m);
                }
            }
            for j in k + 1..a.cols {
                let q = a[(k, j)] / g;
                if q != 0 {
                    a.addmul_col(j, k, -q);
                    reduce_col(&mut a, j, m);
                    v.addmul_col(j, k, -q);
                    reduce_col(&mut v, j, m);
                }
            }
            break;
        }
        k += 1;
    }
    let diag: Vec<i64> = (0..k).map(|i| a[(i, i)]).collect();
    DiagMod {
        u,
        u_inv,
        v,
        diag,
        rank: k,
    }
}

/// Row r of `d` scaled by m / row_moduli[r], turning per-row moduli into
/// a single modulus m (any common multiple of the moduli works).
fn scale_to_common_modulus(d: &IMat, row_moduli: &[i64], m: i64) -> IMat {
    let mut out = d.clone();
    for r in 0..d.rows {
        let f = m / row_moduli[r];
        for j in 0..d.cols {
            let v = &mut out[(r, j)];
            *v = (*v * f).rem_euclid(m);
        }
    }
    out
}

fn kernel_mod(d: &IMat, row_moduli: &[i64], m: i64) -> IMat {
    let dp = scale_to_common_modulus(d, row_moduli, m);
    let dm = diagonalize_mod(&dp, m);
    let n = d.cols;
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for i in 0..dm.rank {
        let f = m / dm.diag[i];
        gens.push(
            dm.v.column(i)
                .iter()
                .map(|&x| (x * f).rem_euclid(m))
                .collect(),
        );
    }
    for j in dm.rank..n {
        gens.push(dm.v.column(j).to_vec());
    }
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = m;
        gens.push(e);
    }
    let mut basis = IMat::from_columns(n, &gens);
    column_echelon(&mut basis, None);
    let keep: Vec<Vec<i64>> = (0..basis.cols)
        .filter(|&j| !basis.col_is_zero(j))
        .map(|j| basis.column(j).to_vec())
        .collect();
    IMat::from_columns(n, &keep)
}

fn solve_mod(d: &IMat, row_moduli: &[i64], target: &[i64], m: i64) -> Option<Vec<i64>> {
    let dp = scale_to_common_modulus(d, row_moduli, m);
    let tp: Vec<i64> = target
        .iter()
        .zip(row_moduli)
        .map(|(&t, &md)| (t * (m / md)).rem_euclid(m))
        .collect();
    let dm = diagonalize_mod(&dp, m);
    let c: Vec<i64> = dm.u.mul_vec(&tp).iter().map(|&x| x.rem_euclid(m)).collect();
    let mut y = vec![0i64; d.cols];
    for i in 0..dm.rank {
        if c[i] % dm.diag[i] != 0 {
            return None;
        }
        y[i] = c[i] / dm.diag[i];
    }
    for i in dm.rank..d.rows {
        if c[i] != 0 {
            return None;
        }
    }
    Some(dm.v.mul_vec(&y).iter().map(|&x| x.rem_euclid(m)).collect())
}

/// Smith normal form of the lattice spanned by the columns of `a`
/// together with m * Z^rows, with all arithmetic modulo m. The diagonal
/// entries are divisors of m (an absent direction reports m itself), and
/// u, u_inv are inverse to each other modulo m. Entry sizes stay below m
/// throughout, so this never overflows; use it whenever the quotient of
/// interest is known to be killed by m.
pub fn smith_mod(a: &IMat, m: i64) -> Smith {
    let dm = diagonalize_mod(a, m);
    let mut u = dm.u;
    let mut u_inv = dm.u_inv;
    // absent directions carry the full modulus, including the rows the
    // column count never reached
    let mut diag = vec![m; a.rows];
    for (i, &d) in dm.diag.iter().enumerate() {
        if d != 0 {
            diag[i] = d;
        }
    }
    // enforce the divisibility chain d_i | d_{i+1}
    loop {
        let mut fixed = true;
        for i in 0..diag.len().saturating_sub(1) {
            let (d1, d2) = (diag[i], diag[i + 1]);
            if d2 % d1 != 0 {
                fixed = false;
                let g = gcd(d1, d2);
                let l = d1 / g * d2;
                diag[i] = g;
                diag[i + 1] = if l % m == 0 { m } else { l % m };
                let (x, y) = bezout(d1, d2);
                let p = (x, y, -(d2 / g), d1 / g);
                pair_rows(&mut u, i, i + 1, p, m);
                pair_cols(&mut u_inv, i, i + 1, (d1 / g, -y, d2 / g, x), m);
            }
        }
        if fixed {
            break;
        }
    }
    Smith { u, u_inv, diag }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// (x, y) with x*a + y*b = gcd(a, b).
pub fn bezout(a: i64, b: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-x0, -y0)
    } else {
        (x0, y0)
    }
}

/// Solve b * x = rhs for x by forward substitution, where b is in column
/// echelon form with full column rank.
pub fn solve_echelon(b: &IMat, rhs: &[i64]) -> Option<Vec<i64>> {
    let mut residual = rhs.to_vec();
    let mut x = vec![0i64; b.cols];
    let mut row = 0;
    for j in 0..b.cols {
        // pivot row of column j: first nonzero entry at or below `row`
        while row < b.rows && b[(row, j)] == 0 {
            if residual[row] != 0 {
                return None;
            }
            row += 1;
        }
        if row == b.rows {
            return None;
        }
        let p = b[(row, j)];
        if residual[row] % p != 0 {
            return None;
        }
        let k = residual[row] / p;
        x[j] = k;
        if k != 0 {
            for i in row..b.rows {
                residual[i] -= k * b[(i, j)];
            }
        }
        row += 1;
    }
    if residual.iter().any(|&v| v != 0) {
        return None;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        // [[2, 4], [6, 8]] has SNF diag (2, 4): det = -8, gcd = 2
        let mut a = IMat::zeros(2, 2);
        a[(0, 0)] = 2;
        a[(0, 1)] = 4;
        a[(1, 0)] = 6;
        a[(1, 1)] = 8;
        let s = smith(&a);
        assert_eq!(s.diag, vec![2, 4]);
        // u * u_inv = identity
        let mut prod = IMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                prod[(i, j)] = (0..2).map(|k| s.u[(i, k)] * s.u_inv[(k, j)]).sum();
            }
        }
        assert_eq!(prod, IMat::identity(2));
    }

    #[test]
    fn smith_mod_matches_quotient_structure() {
        // lattice spanned by (2, 0), (3, 3) plus 6 Z^2 inside Z^2:
        // quotient of order 6, invariants (1, 6)
        let mut a = IMat::zeros(2, 2);
        a[(0, 0)] = 2;
        a[(0, 1)] = 3;
        a[(1, 1)] = 3;
        let s = smith_mod(&a, 6);
        assert_eq!(s.diag, vec![1, 6]);
        // u * u_inv = identity mod 6
        for i in 0..2 {
            for j in 0..2 {
                let v: i64 = (0..2).map(|k| s.u[(i, k)] * s.u_inv[(k, j)]).sum();
                assert_eq!(v.rem_euclid(6), if i == j { 1 } else { 0 });
            }
        }
        // each original column maps into the diagonal lattice
        for j in 0..2 {
            let col: Vec<i64> = (0..2).map(|i| a[(i, j)]).collect();
            let w = s.u.mul_vec(&col);
            for i in 0..2 {
                assert_eq!(w[i].rem_euclid(gcd(s.diag[i], 6)), 0);
            }
        }
    }

    #[test]
    fn smith_mod_with_incomparable_gcds() {
        // single entry 4 mod 12: lattice 4Z + 12Z = 4Z, quotient Z/4 x Z/12
        let mut a = IMat::zeros(2, 1);
        a[(0, 0)] = 4;
        let s = smith_mod(&a, 12);
        assert_eq!(s.diag, vec![4, 12]);
        // entries 4 and 6 mod 12 in one row: together they span 2Z mod 12
        let mut b = IMat::zeros(1, 2);
        b[(0, 0)] = 4;
        b[(0, 1)] = 6;
        let s = smith_mod(&b, 12);
        assert_eq!(s.diag, vec![2]);
    }

    #[test]
    fn modular_kernel_and_solve_agree_with_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for round in 0..800 {
            let rows = rng.gen_range(1..9);
            let cols = rng.gen_range(1..9);
            let moduli: Vec<i64> = (0..rows)
                .map(|_| [2i64, 3, 4, 6][rng.gen_range(0..4)])
                .collect();
            let mut d = IMat::zeros(rows, cols);
            for j in 0..cols {
                for i in 0..rows {
                    d[(i, j)] = rng.gen_range(0..moduli[i]);
                }
            }
            let m = moduli.iter().fold(1i64, |a, &v| a / gcd(a, v) * v);
            let k1 = kernel_with_moduli_exact(&d, &moduli);
            let k2 = kernel_mod(&d, &moduli, m);
            for (ka, kb) in [(&k1, &k2), (&k2, &k1)] {
                for j in 0..ka.cols {
                    let col = ka.column(j).to_vec();
                    for (r, &v) in d.mul_vec(&col).iter().enumerate() {
                        assert_eq!(
                            v.rem_euclid(moduli[r]),
                            0,
                            "round {round}: not a kernel vector"
                        );
                    }
                    assert!(
                        solve_echelon(kb, &col).is_some(),
                        "round {round}: kernel lattices differ"
                    );
                }
            }
            let target: Vec<i64> = moduli.iter().map(|&md| rng.gen_range(0..md)).collect();
            let s1 = solve_with_moduli_exact(&d, &moduli, &target);
            let s2 = super::solve_mod(&d, &moduli, &target, m);
            assert_eq!(
                s1.is_some(),
                s2.is_some(),
                "round {round}: solvability differs"
            );
            if let Some(x) = s2 {
                for (r, &v) in d.mul_vec(&x).iter().enumerate() {
                    assert_eq!(
                        (v - target[r]).rem_euclid(moduli[r]),
                        0,
                        "round {round}: wrong solution"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_mod_two() {
        // x + y = 0 mod 2 over Z^2: kernel index 2
        let mut d = IMat::zeros(1, 2);
        d[(0, 0)] = 1;
        d[(0, 1)] = 1;
        let k = kernel_with_moduli(&d, &[2]);
        assert_eq!(k.cols, 2);
        // determinant magnitude = lattice index = 2
        let det = k[(0, 0)] * k[(1, 1)] - k[(0, 1)] * k[(1, 0)];
        assert_eq!(det.abs(), 2);
        for j in 0..2 {
            assert_eq!((k[(0, j)] + k[(1, j)]).rem_euclid(2), 0);
        }
    }

    #[test]
    fn solve_mod() {
        // 2x = 3 mod 5 -> x = 4 works (8 = 3 mod 5)
        let mut d = IMat::zeros(1, 1);
        d[(0, 0)] = 2;
        let x = solve_with_moduli(&d, &[5], &[3]).unwrap();
        assert_eq!((2 * x[0] - 3).rem_euclid(5), 0);
        // 2x = 1 mod 4 has no solution
        let none = solve_with_moduli(&d, &[4], &[1]);
        assert!(none.is_none());
    }

    #[test]
    fn solve_echelon_works() {
        let mut b = IMat::zeros(3, 2);
        b[(0, 0)] = 2;
        b[(1, 0)] = 1;
        b[(1, 1)] = 3;
        b[(2, 1)] = 1;
        // rhs = 1*col0 + 2*col1
        let rhs = vec![2, 7, 2];
        assert_eq!(solve_echelon(&b, &rhs), Some(vec![1, 2]));
        assert_eq!(solve_echelon(&b, &[1, 0, 0]), None);
    }
}
