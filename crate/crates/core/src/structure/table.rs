//! Points of `[n]^p` and function tables `[n]^p -> [m]`.
//!
//! A point `(x_1, ..., x_p)` is ranked lexicographically with `x_1` most
//! significant, so its index is `sum_i x_i * n^(p-i)`. A function table
//! stores `f(x)` at the index of `x`; read as a tuple of arity `n^p` it is
//! exactly a member of the arity-`n^p` relations the sandwich families use.

use crate::error::{invalid, Error, Result};
use crate::Elem;

/// `n^p`, or `None` on overflow.
pub fn point_count(n: usize, p: usize) -> Option<usize> {
    u32::try_from(p).ok().and_then(|p| n.checked_pow(p))
}

pub fn point_index(x: &[Elem], n: usize) -> Result<usize> {
    let mut index = 0usize;
    for &c in x {
        if c as usize >= n {
            return Err(Error::OutOfRange {
                value: c as u64,
                size: n as u64,
            });
        }
        index = index
            .checked_mul(n)
            .and_then(|i| i.checked_add(c as usize))
            .ok_or_else(|| invalid("point index overflows usize"))?;
    }
    Ok(index)
}

/// Inverse of [`point_index`]. `index` must be below `n^p`.
pub fn point_of_index(index: usize, n: usize, p: usize) -> Vec<Elem> {
    let mut out = vec![0; p];
    write_point(index, n, &mut out);
    out
}

pub(crate) fn write_point(mut index: usize, n: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % n) as Elem;
        index /= n;
    }
}

/// Index of the left rotation `(x_2, ..., x_p, x_1)` of the point at `index`.
#[inline]
pub fn rotate_index(index: usize, n: usize, top: usize) -> usize {
    // top = n^(p-1)
    let first = index / top;
    (index % top) * n + first
}

/// A function `[n]^arity -> [m]` stored by point index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    n: usize,
    arity: usize,
    m: usize,
    values: Vec<Elem>,
}

impl FunctionTable {
    pub fn new(n: usize, arity: usize, m: usize, values: Vec<Elem>) -> Result<Self> {
        if n == 0 || arity == 0 || m == 0 {
            return Err(invalid("function table needs n, arity, m >= 1"));
        }
        let len = point_count(n, arity).ok_or_else(|| invalid("n^arity overflows"))?;
        if values.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "table has {} values, expected {n}^{arity} = {len}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v as usize >= m) {
            return Err(Error::OutOfRange {
                value: v as u64,
                size: m as u64,
            });
        }
        Ok(Self {
            n,
            arity,
            m,
            values,
        })
    }

    /// Tabulates `f`; values are checked against `m`.
    pub fn from_fn(
        n: usize,
        arity: usize,
        m: usize,
        mut f: impl FnMut(&[Elem]) -> Elem,
    ) -> Result<Self> {
        let len = point_count(n, arity).ok_or_else(|| invalid("n^arity overflows"))?;
        let mut x = vec![0; arity];
        let values = (0..len)
            .map(|i| {
                write_point(i, n, &mut x);
                f(&x)
            })
            .collect();
        Self::new(n, arity, m, values)
    }

    pub fn constant(n: usize, arity: usize, m: usize, c: Elem) -> Result<Self> {
        Self::from_fn(n, arity, m, |_| c)
    }

    /// The projection `x -> x_i` (0-based `i`) as a table `[n]^arity -> [n]`.
    pub fn projection(n: usize, arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(invalid(format!("projection {i} out of range for arity {arity}")));
        }
        Self::from_fn(n, arity, n, |x| x[i])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn eval(&self, x: &[Elem]) -> Result<Elem> {
        if x.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for arity {}",
                x.len(),
                self.arity
            )));
        }
        Ok(self.values[point_index(x, self.n)?])
    }

    /// The table as a tuple of arity `n^arity` over `[m]`.
    pub fn encode(&self) -> Vec<Elem> {
        self.values.clone()
    }

    pub fn decode(tuple: &[Elem], n: usize, arity: usize, m: usize) -> Result<Self> {
        Self::new(n, arity, m, tuple.to_vec())
    }

    /// `f(x) = f(rotate_left(x))` for every point.
    pub fn is_cyclic(&self) -> bool {
        is_cyclic_values(&self.values, self.n, self.arity)
    }

    /// Invariance under every permutation of the inputs. Rotation plus the
    /// transposition of the first two coordinates generate the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        if !self.is_cyclic() {
            return false;
        }
        if self.arity < 2 {
            return true;
        }
        let mut x = vec![0; self.arity];
        (0..self.values.len()).all(|i| {
            write_point(i, self.n, &mut x);
            x.swap(0, 1);
            let j = point_index(&x, self.n).expect("in range");
            self.values[i] == self.values[j]
        })
    }

    /// Relabels the outputs through `map` (`map.len()` = new alphabet size bound).
    pub fn map_values(&self, map: &[Elem], m: usize) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|&v| {
                map.get(v as usize).copied().ok_or(Error::OutOfRange {
                    value: v as u64,
                    size: map.len() as u64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, self.arity, m, values)
    }
}

/// Cyclicity of a value array read as a table over `[n]^arity`.
pub(crate) fn is_cyclic_values(values: &[Elem], n: usize, arity: usize) -> bool {
    if arity <= 1 {
        return true;
    }
    let top = values.len() / n;
    (0..values.len()).all(|i| values[i] == values[rotate_index(i, n, top)])
}

/// Orbits of the cyclic shift on `[n]^arity`: for each point, the smallest
/// index in its orbit.
pub(crate) fn orbit_representatives(n: usize, arity: usize) -> Result<Vec<usize>> {
    let len = point_count(n, arity).ok_or_else(|| invalid("n^arity overflows"))?;
    let top = len / n;
    let mut rep = vec![usize::MAX; len];
    for i in 0..len {
        if rep[i] != usize::MAX {
            continue;
        }
        let mut j = i;
        loop {
            rep[j] = i;
            j = rotate_index(j, n, top);
            if j == i {
                break;
            }
        }
    }
    Ok(rep)
}
