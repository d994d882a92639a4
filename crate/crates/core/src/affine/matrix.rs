//! Matrices over `Z_p` and Gaussian elimination.

use crate::error::{parse_err, Error, Result};
use crate::structure::text::{content_lines, parse_kv, parse_row, write_row};
use crate::Elem;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Multiplicative inverse of a nonzero `a` modulo the prime `p`.
pub(crate) fn inverse(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Dense row-major matrix with entries in `[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        ensure_prime(p)?;
        if p > Elem::MAX as u64 {
            return Err(Error::Invalid(format!("modulus {p} too large")));
        }
        Ok(Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Rows of signed integers, reduced mod `p`.
    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as Elem);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % self.p);
                s as Elem
            })
            .collect())
    }

    /// Reduced row echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self) -> (ModMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, pr * m.cols + j);
            }
            let inv = inverse(m.get(r, c) as u64, p);
            for j in c..m.cols {
                let v = m.get(r, j) as u64 * inv % p;
                m.set(r, j, v as Elem);
            }
            for i in 0..m.rows {
                let f = m.get(i, c) as u64;
                if i == r || f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = (m.get(i, j) as u64 + p - f * m.get(r, j) as u64 % p) % p;
                    m.set(i, j, v as Elem);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("matrix p={} rows={} cols={}\n", self.p, self.rows, self.cols);
        for i in 0..self.rows {
            write_row(&mut out, self.row(i));
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (n, head) = lines.next().ok_or_else(|| parse_err(0, "empty matrix file"))?;
        let ["matrix", p, rows, cols] = head.as_slice() else {
            return Err(parse_err(n, "expected `matrix p=P rows=R cols=C`"));
        };
        let p: u64 = parse_kv(n, p, "p")?;
        let rows: usize = parse_kv(n, rows, "rows")?;
        let cols: usize = parse_kv(n, cols, "cols")?;
        let mut m = Self::zeros(p, rows, cols).map_err(|e| parse_err(n, e.to_string()))?;
        for i in 0..rows {
            let (l, row) = lines.next().ok_or_else(|| parse_err(n, format!("expected {rows} rows")))?;
            let row = parse_row(l, &row)?;
            if row.len() != cols {
                return Err(parse_err(l, format!("expected {cols} entries, found {}", row.len())));
            }
            if let Some(v) = row.iter().find(|&&v| v as u64 >= p) {
                return Err(parse_err(l, format!("entry {v} not reduced mod {p}")));
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        if let Some((l, _)) = lines.next() {
            return Err(parse_err(l, "trailing content"));
        }
        Ok(m)
    }
}

/// Solution set of `M x = b`: `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// The solution with every free variable set to 0.
    pub particular: Vec<Elem>,
    /// Basis of `{x : M x = 0}` in reduced row echelon form.
    pub nullspace: Vec<Vec<Elem>>,
}

/// Solves `M x = b` over `Z_p`; `None` when inconsistent.
pub fn gauss_solve(m: &ModMatrix, b: &[Elem]) -> Result<Option<Solution>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let p = m.p;
    let cols = m.cols;
    let mut aug = ModMatrix::zeros(p, m.rows, cols + 1)?;
    for i in 0..m.rows {
        for j in 0..cols {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, cols, (b[i] as u64 % p) as Elem);
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut particular = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = r.get(i, cols);
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut null_rows = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0 as Elem; cols];
        v[f] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = ((p - r.get(i, f) as u64) % p) as Elem;
        }
        null_rows.push(v);
    }
    Ok(Some(Solution {
        particular,
        nullspace: echelon_rows(p, cols, null_rows)?,
    }))
}

/// The nonzero rows of the reduced echelon form of the given vectors.
pub(crate) fn echelon_rows(p: u64, cols: usize, vectors: Vec<Vec<Elem>>) -> Result<Vec<Vec<Elem>>> {
    let mut m = ModMatrix::zeros(p, vectors.len(), cols)?;
    for (i, v) in vectors.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, (x as u64 % p) as Elem);
        }
    }
    Ok(m.rref().0.row_vectors())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rows `x_i - 2 x_{i+1} + x_{i+2}` with indices mod `p`.
    fn second_difference(p: usize) -> ModMatrix {
        let rows: Vec<Vec<i64>> = (0..p)
            .map(|i| {
                let mut r = vec![0i64; p];
                r[i] += 1;
                r[(i + 1) % p] -= 2;
                r[(i + 2) % p] += 1;
                r
            })
            .collect();
        ModMatrix::from_rows(p as u64, p, &rows).unwrap()
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(ModMatrix::zeros(6, 1, 1).is_err());
    }

    #[test]
    fn identity_system() {
        let id = ModMatrix::identity(5, 3).unwrap();
        let s = gauss_solve(&id, &[4, 0, 2]).unwrap().unwrap();
        assert_eq!(s.particular, vec![4, 0, 2]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn second_difference_at_seven() {
        let m = second_difference(7);
        let s = gauss_solve(&m, &[1; 7]).unwrap().unwrap();
        assert_eq!(s.particular, vec![1, 3, 6, 3, 1, 0, 0]);
        assert_eq!(m.mul_vec(&s.particular).unwrap(), vec![1; 7]);
        assert_eq!(s.nullspace.len(), 2);
        for v in [vec![0, 1, 2, 3, 4, 5, 6], vec![1; 7]] {
            assert_eq!(m.mul_vec(&v).unwrap(), vec![0; 7]);
        }
        assert_eq!(s.nullspace, vec![vec![1, 0, 6, 5, 4, 3, 2], vec![0, 1, 2, 3, 4, 5, 6]]);
    }

    #[test]
    fn inconsistent_system() {
        let m = ModMatrix::from_rows(3, 2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(gauss_solve(&m, &[1, 1]).unwrap().is_none());
        assert!(gauss_solve(&m, &[1, 2]).unwrap().is_some());
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = second_difference(5);
        let text = m.to_text();
        assert!(text.starts_with("matrix p=5 rows=5 cols=5\n1 3 1 0 0\n"));
        assert_eq!(ModMatrix::from_text(&text).unwrap(), m);
        assert!(ModMatrix::from_text("matrix p=5 rows=1 cols=2\n1 7\n").is_err());
    }
}
