//! Affine-type toolkit: null root, Coxeter translation, defect signs and
//! regular clusters.

use std::collections::HashMap;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exchange::{DimVector, EulerData, ExchangeError, MutationIndex, Seed};
use crate::matrix::{primitive_integer_vector, IntMatrix, QMatrix};
use crate::search::{canonicalize, CanonicalSeed, SearchError, SearchReport};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TameError {
    #[error("not of tame type: {0}")]
    NotTame(String),
    #[error("seed has {count} regular components, more than n - 2 = {limit}")]
    TooManyRegulars { count: usize, limit: usize },
    #[error("no negative coordinate within {0} iterations of tau^-1")]
    BoundExceeded(usize),
    #[error("tame invariant failed: {0}")]
    InvariantViolated(&'static str),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameData {
    pub eta: DimVector,
    /// `tau = -E^{-1} E^t`.
    pub tau: IntMatrix,
    pub tau_inv: IntMatrix,
}

/// Finds the null root and the Coxeter translation. Tame means the
/// symmetrized form `E + E^t` has a one-dimensional kernel spanned by a
/// positive vector.
pub fn compute_tame_data(e: &EulerData) -> Result<TameData, TameError> {
    let sym = e.e.add(&e.e.transpose());
    let kernel = QMatrix::from_int(&sym).kernel();
    match kernel.len() {
        0 => {
            return Err(TameError::NotTame(
                "symmetrized Euler form is nonsingular".into(),
            ))
        }
        1 => {}
        c => {
            return Err(TameError::NotTame(format!(
                "symmetrized Euler form has corank {c}"
            )))
        }
    }
    let mut eta = primitive_integer_vector(&kernel[0]).ok_or(TameError::NotTame(
        "kernel generator does not fit in i64".into(),
    ))?;
    if eta.iter().all(|&x| x <= 0) {
        eta.iter_mut().for_each(|x| *x = -*x);
    }
    if eta.iter().any(|&x| x < 1) {
        return Err(TameError::NotTame(format!(
            "kernel generator {} is not positive",
            DimVector(eta)
        )));
    }

    let einv = e.e_inverse();
    let et = QMatrix::from_int(&e.e.transpose());
    let tau = einv
        .mul(&et)
        .to_int()
        .ok_or(ExchangeError::NonIntegralResult("Coxeter matrix"))?
        .neg();
    let et_inv = et.inverse().expect("E^t is invertible");
    let tau_inv = et_inv
        .mul(&QMatrix::from_int(&e.e))
        .to_int()
        .ok_or(ExchangeError::NonIntegralResult("inverse Coxeter matrix"))?
        .neg();

    if tau.mul_vec(&eta) != eta {
        return Err(TameError::InvariantViolated("tau does not fix eta"));
    }
    let proj = e.projective_dims()?;
    let inj = e.injective_dims()?;
    for (p, i) in proj.iter().zip(&inj) {
        if tau.mul_vec(p.coords()) != i.neg().0 {
            return Err(TameError::InvariantViolated("tau P_i != -I_i"));
        }
    }
    Ok(TameData {
        eta: DimVector(eta),
        tau,
        tau_inv,
    })
}

/// `<x, eta>`; its sign is the defect sign of `x`.
pub fn defect_pairing(td: &TameData, e: &EulerData, x: &DimVector) -> i64 {
    e.pairing(x, &td.eta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentClass {
    P,
    R,
    J,
}

pub fn classify_component(td: &TameData, e: &EulerData, x: &DimVector) -> ComponentClass {
    match defect_pairing(td, e, x).signum() {
        1 => ComponentClass::P,
        0 => ComponentClass::R,
        _ => ComponentClass::J,
    }
}

pub fn component_classes(
    td: &TameData,
    e: &EulerData,
    seed: &Seed,
) -> Result<Vec<ComponentClass>, TameError> {
    Ok(e.dims_from_seed(seed)?
        .iter()
        .map(|x| classify_component(td, e, x))
        .collect())
}

/// At least one component on the preprojective side and one on the other.
pub fn is_regular_cluster(td: &TameData, e: &EulerData, seed: &Seed) -> Result<bool, TameError> {
    let cls = component_classes(td, e, seed)?;
    Ok(cls.contains(&ComponentClass::P) && cls.contains(&ComponentClass::J))
}

pub fn regular_component_count(
    td: &TameData,
    e: &EulerData,
    seed: &Seed,
) -> Result<usize, TameError> {
    let count = component_classes(td, e, seed)?
        .iter()
        .filter(|&&c| c == ComponentClass::R)
        .count();
    let limit = e.rank().saturating_sub(2);
    if count > limit {
        return Err(TameError::TooManyRegulars { count, limit });
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularGraph {
    /// Regular clusters in order of first appearance along the MGS trails.
    pub nodes: Vec<CanonicalSeed>,
    /// Unordered pairs `(a, b)`, `a < b`, of nodes one mutation apart.
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    /// Per MGS (in report order): first trail position at a regular cluster.
    pub first_regular: Vec<Option<usize>>,
    /// Largest regular component count over all trail seeds.
    pub max_regular_components: usize,
}

impl RegularGraph {
    pub fn every_mgs_passes_regular(&self) -> bool {
        self.first_regular.iter().all(Option::is_some)
    }
}

struct TrailScan {
    regular: Vec<(usize, CanonicalSeed)>,
    first: Option<usize>,
    max_r: usize,
}

pub fn regular_cluster_graph(
    td: &TameData,
    e: &EulerData,
    report: &SearchReport,
) -> Result<RegularGraph, TameError> {
    report.require_mgs_set_complete()?;
    let scans: Vec<TrailScan> = report
        .mgs_list
        .par_iter()
        .map(|m| -> Result<TrailScan, TameError> {
            let mut scan = TrailScan {
                regular: Vec::new(),
                first: None,
                max_r: 0,
            };
            for (t, seed) in m.trail().iter().enumerate() {
                scan.max_r = scan.max_r.max(regular_component_count(td, e, seed)?);
                if is_regular_cluster(td, e, seed)? {
                    scan.first.get_or_insert(t);
                    scan.regular.push((t, canonicalize(seed)));
                }
            }
            Ok(scan)
        })
        .collect::<Result<_, _>>()?;

    let mut ids: HashMap<CanonicalSeed, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut first_regular = Vec::with_capacity(scans.len());
    let mut max_regular_components = 0;
    for scan in scans {
        for (_, c) in scan.regular {
            ids.entry(c.clone()).or_insert_with(|| {
                nodes.push(c);
                nodes.len() - 1
            });
        }
        first_regular.push(scan.first);
        max_regular_components = max_regular_components.max(scan.max_r);
    }

    let n = e.rank();
    let mut edges = Vec::new();
    let mut uf = UnionFind::new(nodes.len());
    for (a, node) in nodes.iter().enumerate() {
        for k in 0..n {
            let next = canonicalize(&node.seed().mutate(MutationIndex::from_zero_based(k)));
            if let Some(&b) = ids.get(&next) {
                if a < b {
                    edges.push((a, b));
                }
                uf.union(a, b);
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let connected = !nodes.is_empty() && uf.groups().len() == 1;
    Ok(RegularGraph {
        nodes,
        edges,
        connected,
        first_regular,
        max_regular_components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    /// Zero-based vertices whose projectives were added, in the order used.
    pub support: Vec<usize>,
    /// `a_j > 0`, aligned with `support`.
    pub coefficients: Vec<i64>,
    pub y: DimVector,
}

/// Vertex order in which each projective is supported on earlier vertices
/// and itself.
fn projective_support_order(proj: &[DimVector]) -> Option<Vec<usize>> {
    let n = proj.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&i| {
            !placed[i]
                && proj[i]
                    .coords()
                    .iter()
                    .enumerate()
                    .all(|(j, &v)| j == i || v == 0 || placed[j])
        })?;
        placed[next] = true;
        order.push(next);
    }
    Some(order)
}

/// Adds positive multiples of projectives to make `x` nonnegative, clearing
/// the coordinates of the vertices used. Works from the last negative
/// vertex in support order, taking `a_k = |x_k| / (dim P_k)_k`.
pub fn project_to_nonnegative(e: &EulerData, x: &DimVector) -> Result<Projection, TameError> {
    let proj = e.projective_dims()?;
    let order = projective_support_order(&proj).ok_or(ExchangeError::CyclicQuiver)?;
    let mut y = x.coords().to_vec();
    let mut support = Vec::new();
    let mut coefficients = Vec::new();
    for &k in order.iter().rev() {
        if y[k] >= 0 {
            continue;
        }
        let pk = proj[k].coords();
        if y[k] % pk[k] != 0 {
            return Err(ExchangeError::NonIntegralResult("projection coefficient").into());
        }
        let a = -y[k] / pk[k];
        for (yi, &p) in y.iter_mut().zip(pk) {
            *yi = yi
                .checked_add(a.checked_mul(p).expect("overflow"))
                .expect("overflow");
        }
        support.push(k);
        coefficients.push(a);
    }
    Ok(Projection {
        support,
        coefficients,
        y: DimVector(y),
    })
}

/// Smallest `k <= bound` such that `tau^{-k} x` has a negative entry.
pub fn find_negative_iterate(
    td: &TameData,
    x: &DimVector,
    bound: usize,
) -> Result<usize, TameError> {
    let mut v = x.coords().to_vec();
    for k in 0..=bound {
        if v.iter().any(|c| c.is_negative()) {
            return Ok(k);
        }
        v = td.tau_inv.mul_vec(&v);
    }
    Err(TameError::BoundExceeded(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::QuiverSpec;
    use crate::search::{enumerate_mgs_with_stability, SearchConfig};

    fn euler(d: Vec<i64>, b: &[Vec<i64>]) -> EulerData {
        EulerData::from_spec(&QuiverSpec::from_rows(d, b).unwrap()).unwrap()
    }

    fn kronecker() -> EulerData {
        euler(vec![1, 1], &[vec![0, 2], vec![-2, 0]])
    }

    fn a21_rows() -> Vec<Vec<i64>> {
        vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]
    }

    #[test]
    fn kronecker_data() {
        let td = compute_tame_data(&kronecker()).unwrap();
        assert_eq!(td.eta, DimVector(vec![1, 1]));
        assert_eq!(td.tau.to_rows(), vec![vec![3, -2], vec![2, -1]]);
        assert_eq!(td.tau.mul(&td.tau_inv), IntMatrix::identity(2));
    }

    #[test]
    fn a21_null_root() {
        let e = euler(vec![1, 1, 1], &a21_rows());
        let td = compute_tame_data(&e).unwrap();
        assert_eq!(td.eta, DimVector(vec![1, 1, 1]));
        assert_eq!(defect_pairing(&td, &e, &td.eta), 0);
        for p in e.projective_dims().unwrap() {
            assert!(defect_pairing(&td, &e, &p) > 0);
            assert_eq!(classify_component(&td, &e, &p.neg()), ComponentClass::J);
        }
    }

    #[test]
    fn finite_type_is_not_tame() {
        let e = euler(vec![2, 1], &[vec![0, -1], vec![2, 0]]);
        assert!(matches!(compute_tame_data(&e), Err(TameError::NotTame(_))));
    }

    #[test]
    fn initial_and_final_seeds_are_not_regular() {
        let spec = QuiverSpec::from_rows(vec![1, 1, 1], &a21_rows()).unwrap();
        let e = EulerData::from_spec(&spec).unwrap();
        let td = compute_tame_data(&e).unwrap();
        for s in [Seed::initial(&spec), Seed::terminal(&spec)] {
            assert!(!is_regular_cluster(&td, &e, &s).unwrap());
            assert_eq!(regular_component_count(&td, &e, &s).unwrap(), 0);
        }
    }

    #[test]
    fn c2_projection_examples() {
        let e = euler(vec![2, 1], &[vec![0, -1], vec![2, 0]]);
        let p = project_to_nonnegative(&e, &DimVector(vec![0, -1])).unwrap();
        assert_eq!(
            (p.support, p.coefficients, p.y),
            (vec![1], vec![1], DimVector(vec![1, 0]))
        );
        let p = project_to_nonnegative(&e, &DimVector(vec![-2, 0])).unwrap();
        assert_eq!(
            (p.support, p.coefficients, p.y),
            (vec![0], vec![2], DimVector(vec![0, 0]))
        );
        let p = project_to_nonnegative(&e, &DimVector(vec![3, 1])).unwrap();
        assert!(p.support.is_empty());
        assert_eq!(p.y, DimVector(vec![3, 1]));
    }

    #[test]
    fn negative_iterates() {
        let td = compute_tame_data(&kronecker()).unwrap();
        assert_eq!(
            find_negative_iterate(&td, &DimVector(vec![1, -1]), 5),
            Ok(0)
        );
        assert_eq!(
            find_negative_iterate(&td, &td.eta, 50),
            Err(TameError::BoundExceeded(50))
        );
    }

    #[test]
    fn kronecker_regular_graph() {
        let spec = QuiverSpec::from_rows(vec![1, 1], &[vec![0, 2], vec![-2, 0]]).unwrap();
        let e = EulerData::from_spec(&spec).unwrap();
        let td = compute_tame_data(&e).unwrap();
        let r = enumerate_mgs_with_stability(&spec, SearchConfig::with_depth(8));
        let g = regular_cluster_graph(&td, &e, &r).unwrap();
        assert!(g.connected);
        assert!(g.every_mgs_passes_regular());
        assert_eq!(g.max_regular_components, 0);
    }
}
