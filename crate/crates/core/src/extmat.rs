//! Dense matrices over the extension field `F_{q^m}`.

use crate::error::{Error, Result};
use crate::ffield::{Elt, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl ExtMatrix {
    pub fn zeros(t: &FieldTower, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![t.zero(); rows * cols],
        }
    }

    pub fn identity(t: &FieldTower, n: usize) -> Self {
        let mut m = Self::zeros(t, n, n);
        for i in 0..n {
            m.set(i, i, t.one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Elt>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elt {
        &self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, t: &FieldTower, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(t, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = t.add(out.get(i, j), &t.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, t: &FieldTower, v: &[Elt]) -> Vec<Elt> {
        let mut out = vec![t.zero(); self.cols];
        for (i, a) in v.iter().enumerate().take(self.rows) {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = t.add(slot, &t.mul(a, self.get(i, j)));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, t: &FieldTower) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = t.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = t.mul(&inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = t.sub(self.get(i, j), &t.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, t: &FieldTower) -> usize {
        self.clone().rref(t).len()
    }

    pub fn det(&self, t: &FieldTower) -> Result<Elt> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = t.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(t.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = t.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = t.mul(&det, &pivot);
            let inv = t.inv(&pivot)?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = t.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = t.sub(m.get(i, j), &t.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis of `{v : M v = 0}`.
    pub fn null_space(&self, t: &FieldTower) -> Vec<Vec<Elt>> {
        let mut m = self.clone();
        let pivots = m.rref(t);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|fc| {
                let mut v = vec![t.zero(); self.cols];
                v[fc] = t.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = t.neg(m.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y M = 0}`.
    pub fn left_null_space(&self, t: &FieldTower) -> Vec<Vec<Elt>> {
        self.transpose().null_space(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn det_matches_rank_and_leibniz() {
        let t = FieldTower::create(2, 1, 4, 0).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let rows: Vec<Vec<Elt>> = (0..3)
                .map(|_| (0..3).map(|_| t.random(&mut rng)).collect())
                .collect();
            let m = ExtMatrix::from_rows(3, rows.clone()).unwrap();
            let d = m.det(&t).unwrap();
            // cofactor expansion oracle (characteristic 2: signs vanish)
            let minor = |r: usize, a: usize, b: usize| {
                t.sub(
                    &t.mul(&rows[r][a], &rows[r + 1][b]),
                    &t.mul(&rows[r][b], &rows[r + 1][a]),
                )
            };
            let leibniz = t.add(
                &t.add(
                    &t.mul(&rows[0][0], &minor(1, 1, 2)),
                    &t.mul(&rows[0][1], &minor(1, 0, 2)),
                ),
                &t.mul(&rows[0][2], &minor(1, 0, 1)),
            );
            assert_eq!(d, leibniz);
            assert_eq!(d.is_zero(), m.rank(&t) < 3);
        }
    }

    #[test]
    fn null_spaces_annihilate() {
        let t = FieldTower::create(3, 1, 2, 0).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let rows: Vec<Vec<Elt>> = (0..2)
                .map(|_| (0..4).map(|_| t.random(&mut rng)).collect())
                .collect();
            let m = ExtMatrix::from_rows(4, rows).unwrap();
            let ns = m.null_space(&t);
            assert_eq!(ns.len() + m.rank(&t), 4);
            let mt = m.transpose();
            for v in &ns {
                assert!(mt.left_mul_vec(&t, v).iter().all(Elt::is_zero));
            }
            for y in m.transpose().left_null_space(&t) {
                assert!(mt.left_mul_vec(&t, &y).iter().all(Elt::is_zero));
            }
        }
    }
}
