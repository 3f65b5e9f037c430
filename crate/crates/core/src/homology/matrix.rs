use crate::error::{Error, Result};

/// Symmetric difference of two sorted index lists (addition over GF(2)).
pub(crate) fn xor_sorted<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sorts in place and cancels repeated entries in pairs.
pub(crate) fn reduce_mod2<T: Ord + Copy>(v: &mut Vec<T>) {
    v.sort_unstable();
    let mut out = 0;
    let mut i = 0;
    while i < v.len() {
        if i + 1 < v.len() && v[i] == v[i + 1] {
            i += 2;
        } else {
            v[out] = v[i];
            out += 1;
            i += 1;
        }
    }
    v.truncate(out);
}

/// A sparse matrix over GF(2), stored as sorted row lists per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2SparseMatrix {
    rows: usize,
    columns: Vec<Vec<u32>>,
}

impl GF2SparseMatrix {
    /// Validates that every column is strictly increasing and in range.
    pub fn new(rows: usize, columns: Vec<Vec<u32>>) -> Result<Self> {
        for (j, col) in columns.iter().enumerate() {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Precondition(format!("column {j} is not strictly increasing")));
            }
            if col.last().is_some_and(|&r| r as usize >= rows) {
                return Err(Error::Precondition(format!("column {j} has a row index out of range")));
            }
        }
        Ok(GF2SparseMatrix { rows, columns })
    }

    /// Builds from unsorted entries, cancelling repeats mod 2.
    pub fn from_entries(rows: usize, mut columns: Vec<Vec<u32>>) -> Result<Self> {
        for col in &mut columns {
            reduce_mod2(col);
        }
        Self::new(rows, columns)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        GF2SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        GF2SparseMatrix {
            rows: n,
            columns: (0..n as u32).map(|i| vec![i]).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.columns[j].binary_search(&(i as u32)).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// `self · other`.
    pub fn mul(&self, other: &GF2SparseMatrix) -> Result<GF2SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for &k in col {
                    acc.extend_from_slice(&self.columns[k as usize]);
                }
                reduce_mod2(&mut acc);
                acc
            })
            .collect();
        Ok(GF2SparseMatrix {
            rows: self.rows,
            columns,
        })
    }

    /// Rank by column elimination, pivoting on the first nonzero row.
    pub fn rank(&self) -> usize {
        let mut pivot_of: Vec<Option<Vec<u32>>> = vec![None; self.rows];
        let mut rank = 0;
        for col in &self.columns {
            let mut c = col.clone();
            while let Some(&p) = c.first() {
                match &pivot_of[p as usize] {
                    Some(other) => c = xor_sorted(&c, other),
                    None => {
                        pivot_of[p as usize] = Some(c);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    pub fn to_dense(&self) -> Vec<Vec<bool>> {
        let mut d = vec![vec![false; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &i in col {
                d[i as usize][j] = true;
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank(mut m: Vec<Vec<bool>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][c] {
                    let pivot_row = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn from_dense(d: &[Vec<bool>], rows: usize, cols: usize) -> GF2SparseMatrix {
        let columns = (0..cols)
            .map(|j| (0..rows as u32).filter(|&i| d[i as usize][j]).collect())
            .collect();
        GF2SparseMatrix::new(rows, columns).unwrap()
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(GF2SparseMatrix::zero(4, 7).rank(), 0);
        assert_eq!(GF2SparseMatrix::identity(9).rank(), 9);
        assert_eq!(GF2SparseMatrix::identity(0).rank(), 0);
    }

    #[test]
    fn rejects_bad_columns() {
        assert!(GF2SparseMatrix::new(3, vec![vec![2, 1]]).is_err());
        assert!(GF2SparseMatrix::new(3, vec![vec![3]]).is_err());
        let m = GF2SparseMatrix::from_entries(3, vec![vec![2, 0, 2, 1]]).unwrap();
        assert_eq!(m.column(0), &[0, 1]);
    }

    proptest! {
        #[test]
        fn rank_matches_dense_elimination(bits in proptest::collection::vec(any::<bool>(), 400)) {
            let d: Vec<Vec<bool>> = bits.chunks(20).map(<[bool]>::to_vec).collect();
            let m = from_dense(&d, 20, 20);
            prop_assert_eq!(m.rank(), dense_rank(d));
        }

        #[test]
        fn rank_of_sparse_rectangular(rows in 1usize..30, cols in 1usize..30, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let d: Vec<Vec<bool>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_bool(0.15)).collect())
                .collect();
            let m = from_dense(&d, rows, cols);
            prop_assert_eq!(m.rank(), dense_rank(d));
        }

        #[test]
        fn product_matches_dense(a in proptest::collection::vec(any::<bool>(), 48), b in proptest::collection::vec(any::<bool>(), 40)) {
            let da: Vec<Vec<bool>> = a.chunks(8).map(<[bool]>::to_vec).collect(); // 6x8
            let db: Vec<Vec<bool>> = b.chunks(5).map(<[bool]>::to_vec).collect(); // 8x5
            let p = from_dense(&da, 6, 8).mul(&from_dense(&db, 8, 5)).unwrap();
            for i in 0..6 {
                for j in 0..5 {
                    let want = (0..8).fold(false, |acc, k| acc ^ (da[i][k] & db[k][j]));
                    prop_assert_eq!(p.get(i, j), want);
                }
            }
        }
    }
}
