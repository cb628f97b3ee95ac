//! Valued quivers, Euler data, extended exchange matrices and mutation.
//!
//! Orientation convention: `b0[i][j] > 0` stands for `b0[i][j]` (valued)
//! arrows from `j` to `i`. Only the preset generators need this; every
//! computation below works with the matrices alone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{checked_mul, checked_neg, IntMatrix, QMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExchangeError {
    #[error("rank must be at least 1")]
    EmptyQuiver,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("symmetrizer entry d[{index}] = {value} is not positive")]
    BadSymmetrizer { index: usize, value: i64 },
    #[error("b0 has nonzero diagonal entry at position {0}")]
    NonzeroDiagonal(usize),
    #[error("D*B0 is not skew-symmetric (entries ({i},{j}) and ({j},{i}))")]
    NotSkewSymmetrizable { i: usize, j: usize },
    #[error("quiver has an oriented cycle; no hereditary Euler matrix exists")]
    CyclicQuiver,
    #[error("supplied Euler matrix is inconsistent with b0 and d")]
    EulerMismatch,
    #[error("expected an integral result in {0}")]
    NonIntegralResult(&'static str),
    #[error("c-matrix is singular")]
    SingularC,
    #[error("mutation index {k} outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
}

/// A 1-based mutation direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationIndex(usize);

impl MutationIndex {
    pub fn new(k: usize, n: usize) -> Result<Self, ExchangeError> {
        if (1..=n).contains(&k) {
            Ok(Self(k))
        } else {
            Err(ExchangeError::IndexOutOfRange { k, n })
        }
    }

    /// Builds from a 0-based position. Callers guarantee the range.
    pub(crate) fn from_zero_based(i: usize) -> Self {
        Self(i + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn zero_based(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for MutationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses a list of 1-based indices.
pub fn indices(ks: &[usize], n: usize) -> Result<Vec<MutationIndex>, ExchangeError> {
    ks.iter().map(|&k| MutationIndex::new(k, n)).collect()
}

/// A validated valued quiver: symmetrizer `d` and skew-symmetrizable `b0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverSpec {
    n: usize,
    d: Vec<i64>,
    b0: IntMatrix,
}

impl QuiverSpec {
    /// Checks the invariants and returns the spec.
    pub fn new(d: Vec<i64>, b0: IntMatrix) -> Result<Self, ExchangeError> {
        let n = d.len();
        if n == 0 {
            return Err(ExchangeError::EmptyQuiver);
        }
        if b0.rows() != n || b0.cols() != n {
            return Err(ExchangeError::DimensionMismatch(format!(
                "b0 is {}x{} but d has {} entries",
                b0.rows(),
                b0.cols(),
                n
            )));
        }
        if let Some((index, &value)) = d.iter().enumerate().find(|(_, &x)| x <= 0) {
            return Err(ExchangeError::BadSymmetrizer { index, value });
        }
        if let Some(i) = (0..n).find(|&i| b0.get(i, i) != 0) {
            return Err(ExchangeError::NonzeroDiagonal(i));
        }
        for i in 0..n {
            for j in i + 1..n {
                if checked_mul(d[i], b0.get(i, j)) != -checked_mul(d[j], b0.get(j, i)) {
                    return Err(ExchangeError::NotSkewSymmetrizable { i, j });
                }
            }
        }
        Ok(Self { n, d, b0 })
    }

    pub fn from_rows(d: Vec<i64>, b0: &[Vec<i64>]) -> Result<Self, ExchangeError> {
        let b0 = IntMatrix::from_rows(b0)
            .ok_or_else(|| ExchangeError::DimensionMismatch("ragged b0 rows".into()))?;
        Self::new(d, b0)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn b0(&self) -> &IntMatrix {
        &self.b0
    }

    pub fn d_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.d)
    }

    /// All `d_i = 1` and every `|b_ij| <= 1`.
    pub fn is_simply_laced(&self) -> bool {
        self.d.iter().all(|&x| x == 1)
            && (0..self.n).all(|i| (0..self.n).all(|j| self.b0.get(i, j).abs() <= 1))
    }
}

/// The list of dimension-vector coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|&x| checked_neg(x)).collect())
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Euler matrix `E = L D = D R` of an acyclic valued quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub e: IntMatrix,
    pub l: IntMatrix,
    pub r: IntMatrix,
    pub d: Vec<i64>,
    // Cached rational inverse of E; det E = prod d_i so it always exists.
    #[serde(skip)]
    e_inv: QMatrix,
}

impl EulerData {
    /// Reconstructs the Euler matrix from `b0` and `d`:
    /// `E_ii = d_i` and `E_ij = min(0, -(D B0)_ij)` off the diagonal.
    pub fn from_spec(spec: &QuiverSpec) -> Result<Self, ExchangeError> {
        let n = spec.rank();
        let d = spec.symmetrizer().to_vec();
        let db = spec.d_matrix().mul(spec.b0());
        let mut e = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { d[i] } else { (-db.get(i, j)).min(0) };
                e.set(i, j, v);
            }
        }
        if topological_order(&e).is_none() {
            return Err(ExchangeError::CyclicQuiver);
        }
        let mut l = IntMatrix::zeros(n, n);
        let mut r = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = e.get(i, j);
                if x % d[j] != 0 || x % d[i] != 0 {
                    return Err(ExchangeError::NonIntegralResult("L or R factor"));
                }
                l.set(i, j, x / d[j]);
                r.set(i, j, x / d[i]);
            }
        }
        let e_inv = QMatrix::from_int(&e)
            .inverse()
            .expect("triangular Euler matrix with positive diagonal is invertible");
        Ok(Self { e, l, r, d, e_inv })
    }

    /// Like [`EulerData::from_spec`] but also checks a user-supplied `E`.
    pub fn from_spec_checked(spec: &QuiverSpec, e: &IntMatrix) -> Result<Self, ExchangeError> {
        let data = Self::from_spec(spec)?;
        if data.e != *e {
            return Err(ExchangeError::EulerMismatch);
        }
        Ok(data)
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// `<x, y> = x^t E y`.
    pub fn pairing(&self, x: &DimVector, y: &DimVector) -> i64 {
        assert_eq!(x.len(), self.rank(), "dimension mismatch in pairing");
        let ey = self.e.mul_vec(y.coords());
        x.coords().iter().zip(&ey).fold(0i64, |acc, (&a, &b)| {
            acc.checked_add(checked_mul(a, b)).expect("overflow")
        })
    }

    pub fn e_inverse(&self) -> &QMatrix {
        &self.e_inv
    }

    /// `dim P_i = f_i E^{-t} e_i`, returned in vertex order.
    pub fn projective_dims(&self) -> Result<Vec<DimVector>, ExchangeError> {
        self.scaled_unit_solves(&self.e_inv.transpose(), "projective dimension vector")
    }

    /// `dim I_i = f_i E^{-1} e_i`, returned in vertex order.
    pub fn injective_dims(&self) -> Result<Vec<DimVector>, ExchangeError> {
        self.scaled_unit_solves(&self.e_inv, "injective dimension vector")
    }

    fn scaled_unit_solves(
        &self,
        m: &QMatrix,
        what: &'static str,
    ) -> Result<Vec<DimVector>, ExchangeError> {
        let d = QMatrix::from_int(&IntMatrix::diagonal(&self.d));
        let cols = m
            .mul(&d)
            .to_int()
            .ok_or(ExchangeError::NonIntegralResult(what))?;
        (0..self.rank())
            .map(|i| {
                let v = cols.col(i);
                if v.iter().any(|&x| x < 0) || v[i] < 1 {
                    Err(ExchangeError::NonIntegralResult(what))
                } else {
                    Ok(DimVector(v))
                }
            })
            .collect()
    }

    /// Solves `V^t E Gamma = D` with `Gamma = -C`; column `i` of `V` is
    /// `dim T_i` (negated projective dimension for shifted projectives).
    pub fn dims_from_seed(&self, seed: &Seed) -> Result<Vec<DimVector>, ExchangeError> {
        let n = self.rank();
        assert_eq!(seed.rank(), n, "seed rank differs from Euler data");
        let gamma = QMatrix::from_int(&seed.c().neg());
        let gamma_inv = gamma.inverse().ok_or(ExchangeError::SingularC)?;
        // V = E^{-t} Gamma^{-t} D
        let d = QMatrix::from_int(&IntMatrix::diagonal(&self.d));
        let v = self
            .e_inv
            .transpose()
            .mul(&gamma_inv.transpose())
            .mul(&d)
            .to_int()
            .ok_or(ExchangeError::NonIntegralResult(
                "dimension vectors of a seed",
            ))?;
        Ok((0..n).map(|i| DimVector(v.col(i))).collect())
    }
}

/// Order of vertices in which `E` is lower triangular, i.e. `E_ij != 0`
/// with `i != j` only when `j` comes before `i`. `None` if no such order.
pub(crate) fn topological_order(e: &IntMatrix) -> Option<Vec<usize>> {
    let n = e.rows();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&i| !placed[i] && (0..n).all(|j| j == i || placed[j] || e.get(i, j) == 0))?;
        placed[next] = true;
        order.push(next);
    }
    Some(order)
}

/// Extended exchange matrix `[B; C]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Seed {
    b: IntMatrix,
    c: IntMatrix,
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed {{ b: {}, c: {} }}", self.b, self.c)
    }
}

impl Seed {
    /// `[B0; I]`.
    pub fn initial(spec: &QuiverSpec) -> Self {
        Self {
            b: spec.b0().clone(),
            c: IntMatrix::identity(spec.rank()),
        }
    }

    /// `[B0; -I]`, the seed of the projective cluster.
    pub fn terminal(spec: &QuiverSpec) -> Self {
        Self {
            b: spec.b0().clone(),
            c: IntMatrix::identity(spec.rank()).neg(),
        }
    }

    pub fn from_parts(b: IntMatrix, c: IntMatrix) -> Result<Self, ExchangeError> {
        let n = b.rows();
        if !b.is_square() || c.rows() != n || c.cols() != n {
            return Err(ExchangeError::DimensionMismatch(
                "seed blocks must be n x n".into(),
            ));
        }
        Ok(Self { b, c })
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn c(&self) -> &IntMatrix {
        &self.c
    }

    /// The c-vector in direction `k`.
    pub fn c_vector(&self, k: MutationIndex) -> Vec<i64> {
        self.c.col(k.zero_based())
    }

    /// Mutation in direction `k`, applied to all `2n` rows.
    pub fn mutate(&self, k: MutationIndex) -> Seed {
        let n = self.rank();
        let k = k.zero_based();
        assert!(k < n, "mutation index out of range");
        Seed {
            b: mutate_block(&self.b, &self.b, k, true),
            c: mutate_block(&self.c, &self.b, k, false),
        }
    }

    /// Applies a sequence of mutations left to right.
    pub fn mutate_all(&self, ks: &[MutationIndex]) -> Seed {
        ks.iter().fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Column `k` of `C` is nonzero and entrywise nonnegative.
    pub fn is_green(&self, k: MutationIndex) -> bool {
        let col = self.c_vector(k);
        col.iter().all(|&x| x >= 0) && col.iter().any(|&x| x != 0)
    }

    pub fn green_directions(&self) -> Vec<MutationIndex> {
        (0..self.rank())
            .map(MutationIndex::from_zero_based)
            .filter(|&k| self.is_green(k))
            .collect()
    }

    /// Every entry of `C` is nonpositive.
    pub fn is_final(&self) -> bool {
        (0..self.rank()).all(|i| self.c.row(i).iter().all(|&x| x <= 0))
    }

    /// Each column of `C` is entrywise `>= 0` or entrywise `<= 0`.
    pub fn is_sign_coherent(&self) -> bool {
        (0..self.rank()).all(|j| {
            let col = self.c.col(j);
            col.iter().all(|&x| x >= 0) || col.iter().all(|&x| x <= 0)
        })
    }

    pub fn is_skew_symmetrizable_by(&self, d: &[i64]) -> bool {
        IntMatrix::diagonal(d).mul(&self.b).is_skew_symmetric()
    }

    pub fn c_determinant(&self) -> BigInt {
        self.c.det()
    }

    pub fn has_unimodular_c(&self) -> bool {
        self.c_determinant().abs().is_one()
    }

    /// Relabels directions: position `t` of the result carries label `perm[t]`.
    pub fn relabel(&self, perm: &[usize]) -> Seed {
        Seed {
            b: self.b.permute_square(perm),
            c: self.c.permute_cols(perm),
        }
    }
}

/// One block of the extended matrix under mutation at `k`; `top` is the
/// current `B`, and `is_top` marks the block whose row `k` is negated.
fn mutate_block(m: &IntMatrix, top: &IntMatrix, k: usize, is_top: bool) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        let mik = m.get(i, k);
        for j in 0..m.cols() {
            let v = if j == k || (is_top && i == k) {
                checked_neg(m.get(i, j))
            } else {
                let bkj = top.get(k, j);
                if mik.signum() * bkj.signum() > 0 {
                    m.get(i, j)
                        .checked_add(checked_mul(mik, bkj.abs()))
                        .expect("integer overflow in mutation")
                } else {
                    m.get(i, j)
                }
            };
            out.set(i, j, v);
        }
    }
    out
}

/// Checks `B' = D^{-1} X^t D B X` with `X = C^{-1} C'` for one edge.
pub fn nz_consistent(before: &Seed, after: &Seed, d: &[i64]) -> bool {
    let Some(c_inv) = QMatrix::from_int(before.c()).inverse() else {
        return false;
    };
    let Some(x) = c_inv.mul(&QMatrix::from_int(after.c())).to_int() else {
        return false;
    };
    let dm = IntMatrix::diagonal(d);
    let lhs = dm.mul(after.b());
    let rhs = x.transpose().mul(&dm).mul(before.b()).mul(&x);
    lhs == rhs
}

/// Checks the c-vector rule for a green step in direction `k`:
/// `c'_k = -c_k` and `c'_p = c_p + max(0, b_kp) c_k` otherwise.
pub fn c_vector_rule_holds(before: &Seed, after: &Seed, k: MutationIndex) -> bool {
    let n = before.rank();
    let kk = k.zero_based();
    let ck = before.c().col(kk);
    (0..n).all(|p| {
        let expected: Vec<i64> = if p == kk {
            ck.iter().map(|&x| -x).collect()
        } else {
            let coef = before.b().get(kk, p).max(0);
            before
                .c()
                .col(p)
                .iter()
                .zip(&ck)
                .map(|(&a, &b)| a + coef * b)
                .collect()
        };
        after.c().col(p) == expected
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> QuiverSpec {
        QuiverSpec::from_rows(vec![2, 1], &[vec![0, -1], vec![2, 0]]).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn k(i: usize) -> MutationIndex {
        MutationIndex::new(i, 10).unwrap()
    }

    #[test]
    fn validation_accepts_and_rejects() {
        assert!(QuiverSpec::from_rows(vec![1], &[vec![0]]).is_ok());
        assert_eq!(
            QuiverSpec::from_rows(vec![1, 1], &[vec![0, 1], vec![2, 0]]),
            Err(ExchangeError::NotSkewSymmetrizable { i: 0, j: 1 })
        );
        assert_eq!(
            QuiverSpec::from_rows(vec![1, 1], &[vec![1, 0], vec![0, 0]]),
            Err(ExchangeError::NonzeroDiagonal(0))
        );
        assert!(matches!(
            QuiverSpec::from_rows(vec![0, 1], &[vec![0, 0], vec![0, 0]]),
            Err(ExchangeError::BadSymmetrizer { index: 0, .. })
        ));
        assert!(matches!(
            QuiverSpec::from_rows(vec![1, 1], &[vec![0, 1]]),
            Err(ExchangeError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn euler_data_for_c2() {
        let e = EulerData::from_spec(&c2()).unwrap();
        assert_eq!(e.e, mat(&[&[2, 0], &[-2, 1]]));
        assert_eq!(e.l, mat(&[&[1, 0], &[-1, 1]]));
        assert_eq!(e.r, mat(&[&[1, 0], &[-2, 1]]));
        assert_eq!(e.l.transpose().sub(&e.r), *c2().b0());
    }

    #[test]
    fn euler_data_for_kronecker_by_direct_multiplication() {
        let spec = QuiverSpec::from_rows(vec![1, 1], &[vec![0, 2], vec![-2, 0]]).unwrap();
        let e = EulerData::from_spec(&spec).unwrap();
        assert_eq!(e.e, mat(&[&[1, -2], &[0, 1]]));
        let d = spec.d_matrix();
        assert_eq!(e.l.mul(&d), e.e);
        assert_eq!(d.mul(&e.r), e.e);
        assert_eq!(e.l.transpose().sub(&e.r), *spec.b0());
        assert_eq!(d.mul(spec.b0()), e.e.transpose().sub(&e.e));
    }

    #[test]
    fn cyclic_quiver_has_no_euler_data() {
        // oriented 3-cycle 1 -> 2 -> 3 -> 1
        let spec = QuiverSpec::from_rows(
            vec![1, 1, 1],
            &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]],
        )
        .unwrap();
        assert_eq!(
            EulerData::from_spec(&spec),
            Err(ExchangeError::CyclicQuiver)
        );
        // the mutation engine still accepts it
        let s = Seed::initial(&spec);
        assert_eq!(s.mutate(k(1)).mutate(k(1)), s);
    }

    #[test]
    fn pairing_examples() {
        let e = EulerData::from_spec(&c2()).unwrap();
        let x = DimVector(vec![1, 0]);
        assert_eq!(e.pairing(&x, &DimVector(vec![0, 1])), 0);
        assert_eq!(e.pairing(&x, &x), 2);
        assert_eq!(
            e.pairing(&DimVector(vec![3, -7]), &DimVector(vec![0, 0])),
            0
        );
    }

    #[test]
    fn c2_mutations_match_hand_computation() {
        let s = Seed::initial(&c2());
        let m1 = s.mutate(k(1));
        assert_eq!(*m1.b(), mat(&[&[0, 1], &[-2, 0]]));
        assert_eq!(*m1.c(), mat(&[&[-1, 0], &[0, 1]]));
        let m2 = s.mutate(k(2));
        assert_eq!(*m2.b(), mat(&[&[0, 1], &[-2, 0]]));
        assert_eq!(*m2.c(), mat(&[&[1, 0], &[2, -1]]));
        assert!(!m1.is_green(k(1)));
        assert!(m1.is_green(k(2)));
        assert!(!m1.is_final());
        assert!(s.is_green(k(1)) && s.is_green(k(2)));
        let t = Seed::terminal(&c2());
        assert!(t.is_final());
        assert!(t.green_directions().is_empty());
    }

    #[test]
    fn initial_seeds() {
        let s = Seed::initial(&QuiverSpec::from_rows(vec![1], &[vec![0]]).unwrap());
        assert_eq!(*s.b(), mat(&[&[0]]));
        assert_eq!(*s.c(), mat(&[&[1]]));
        let a2 = QuiverSpec::from_rows(vec![1, 1], &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(*Seed::initial(&a2).b(), *a2.b0());
    }

    #[test]
    fn zero_column_is_not_green() {
        let s = Seed::from_parts(mat(&[&[0, 0], &[0, 0]]), mat(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(!s.is_green(k(1)));
    }

    #[test]
    fn projective_and_injective_dims() {
        let e = EulerData::from_spec(&c2()).unwrap();
        assert_eq!(
            e.projective_dims().unwrap(),
            vec![DimVector(vec![1, 0]), DimVector(vec![1, 1])]
        );
        assert_eq!(
            e.injective_dims().unwrap(),
            vec![DimVector(vec![1, 2]), DimVector(vec![0, 1])]
        );
        let one =
            EulerData::from_spec(&QuiverSpec::from_rows(vec![1], &[vec![0]]).unwrap()).unwrap();
        assert_eq!(one.projective_dims().unwrap(), vec![DimVector(vec![1])]);
        assert_eq!(one.injective_dims().unwrap(), vec![DimVector(vec![1])]);
    }

    #[test]
    fn dims_of_initial_and_terminal_seeds() {
        let spec = c2();
        let e = EulerData::from_spec(&spec).unwrap();
        let v0 = e.dims_from_seed(&Seed::initial(&spec)).unwrap();
        assert_eq!(v0, vec![DimVector(vec![-1, 0]), DimVector(vec![-1, -1])]);
        let p: Vec<DimVector> = e
            .projective_dims()
            .unwrap()
            .iter()
            .map(DimVector::neg)
            .collect();
        assert_eq!(v0, p);
        let v1 = e.dims_from_seed(&Seed::terminal(&spec)).unwrap();
        assert_eq!(v1, vec![DimVector(vec![1, 0]), DimVector(vec![1, 1])]);
    }

    #[test]
    fn singular_c_is_reported() {
        let spec = c2();
        let e = EulerData::from_spec(&spec).unwrap();
        let s = Seed::from_parts(spec.b0().clone(), mat(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(e.dims_from_seed(&s), Err(ExchangeError::SingularC));
    }

    #[test]
    fn supplied_euler_matrix_must_agree() {
        let spec = c2();
        assert!(EulerData::from_spec_checked(&spec, &mat(&[&[2, 0], &[-2, 1]])).is_ok());
        assert_eq!(
            EulerData::from_spec_checked(&spec, &mat(&[&[2, -2], &[0, 1]])),
            Err(ExchangeError::EulerMismatch)
        );
    }

    #[test]
    fn index_range() {
        assert!(MutationIndex::new(0, 2).is_err());
        assert!(MutationIndex::new(3, 2).is_err());
        assert_eq!(MutationIndex::new(2, 2).unwrap().zero_based(), 1);
    }
}
