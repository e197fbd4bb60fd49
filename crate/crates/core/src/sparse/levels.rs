//! Exact successive sparsity levels by support enumeration.
//!
//! For each sparsity `s`, the span of the s-sparse lattice vectors is the
//! rational span, over all supports `S` of size `s`, of the integer kernels
//! of the stacked decomposition blocks of the complementary rows. `s_i` is
//! the least `s` whose span has dimension at least `i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::symbol::SymReal;
use crate::intlinalg::matrix::integer_kernel;
use crate::sparse::decompose::row_decompose;
use crate::sparse::find::subsets_colex;
use crate::sparse::lattice::LatticeBasis;

pub const DEFAULT_DIMENSION_CAP: usize = 14;

/// Incremental rational rank tracker (row echelon over Q).
pub(crate) struct RationalEchelon {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    width: usize,
}

impl RationalEchelon {
    pub(crate) fn new(width: usize) -> Self {
        RationalEchelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            width,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns true when the vector enlarges the span.
    pub(crate) fn insert_int(&mut self, v: &[BigInt]) -> bool {
        let row: Vec<BigRational> = v
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        self.insert(row)
    }

    pub(crate) fn insert(&mut self, mut row: Vec<BigRational>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.width {
                    let d = &f * &r[j];
                    row[j] -= d;
                }
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = row[p].clone();
                for x in row.iter_mut() {
                    *x /= &inv;
                }
                self.rows.push(row);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// Witnesses for one distinct sparsity level value.
#[derive(Clone, Debug)]
pub struct LevelWitness {
    /// The sparsity value `s` these vectors achieve.
    pub level: usize,
    /// Independent integer preimages, one batch spanning the s-sparse span.
    pub preimages: Vec<Vec<BigInt>>,
    /// The lattice vectors `A * y`, exactly.
    pub vectors: Vec<Vec<SymReal>>,
    /// Exact 0-norms (all `<= level`).
    pub zero_norms: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SparsityLevels {
    /// `s_1 <= ... <= s_n`.
    pub s: Vec<usize>,
    /// One witness batch per distinct level value.
    pub witnesses: Vec<LevelWitness>,
}

pub fn sparsity_levels(a: &LatticeBasis, cap: usize) -> Result<SparsityLevels> {
    let n = a.n();
    if n > cap {
        return Err(Error::DimensionCapExceeded { n, cap });
    }
    let dec = row_decompose(a);
    let mut s = vec![0usize; n];
    let mut filled = 0usize;
    let mut witnesses = Vec::new();

    for sparsity in 1..=n {
        let mut ech = RationalEchelon::new(n);
        let mut greedy: Vec<Vec<BigInt>> = Vec::new();
        'supports: for support in subsets_colex(n, sparsity) {
            let complement: Vec<usize> = (0..n).filter(|i| !support.contains(i)).collect();
            let kernel_vectors: Vec<Vec<BigInt>> = if complement.is_empty() {
                (0..n)
                    .map(|i| {
                        let mut e = vec![BigInt::zero(); n];
                        e[i] = BigInt::one();
                        e
                    })
                    .collect()
            } else {
                let f = dec
                    .f_submatrix(&complement)
                    .expect("complement rows are nonempty");
                integer_kernel(&f).vectors
            };
            for v in kernel_vectors {
                if ech.insert_int(&v) {
                    greedy.push(v);
                    if ech.rank() == n {
                        break 'supports;
                    }
                }
            }
        }
        let dim = ech.rank();
        if dim > filled {
            for slot in s.iter_mut().take(dim).skip(filled) {
                *slot = sparsity;
            }
            filled = dim;
            let vectors: Vec<Vec<SymReal>> =
                greedy.iter().map(|y| a.mul_int_vector(y)).collect();
            let zero_norms: Vec<usize> = vectors
                .iter()
                .map(|x| x.iter().filter(|v| !v.is_zero()).count())
                .collect();
            debug_assert!(zero_norms.iter().all(|&z| z <= sparsity));
            witnesses.push(LevelWitness {
                level: sparsity,
                preimages: greedy,
                vectors,
                zero_norms,
            });
        }
        if filled == n {
            break;
        }
    }
    debug_assert_eq!(filled, n, "the full support always spans everything");
    Ok(SparsityLevels { s, witnesses })
}
