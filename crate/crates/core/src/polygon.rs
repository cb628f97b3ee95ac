//! Rank-2 polygons at a seed and polygonal deformations of maximal green
//! sequences.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exchange::{MutationIndex, Seed};
use crate::search::{format_sequence, Mgs, SearchError, SearchReport};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("direction {0} is not green at this seed")]
    NotGreen(MutationIndex),
    #[error("polygon needs two distinct directions, got {0} twice")]
    SameDirection(MutationIndex),
    #[error(
        "alternation from ({j},{k}) has sides {sides:?}, inconsistent with |b_jk b_kj| = {product}"
    )]
    AlternationMismatch {
        j: MutationIndex,
        k: MutationIndex,
        product: i64,
        sides: (usize, usize),
    },
    #[error("polygon sides from ({j},{k}) end at different seeds")]
    EndSeedMismatch { j: MutationIndex, k: MutationIndex },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("deformed sequence {0} is not a maximal green sequence: {1}")]
    ReplayFailed(String, String),
    #[error("deformation neighbour {0} is missing from the MGS set")]
    MissingNeighbour(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Number of mutations on the long side of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Ell {
    Finite(usize),
    Infinite,
}

impl Ell {
    pub fn from_product(product: i64) -> Self {
        match product {
            0 => Ell::Finite(2),
            1 => Ell::Finite(3),
            2 => Ell::Finite(4),
            3 => Ell::Finite(6),
            _ => Ell::Infinite,
        }
    }

    /// Side count `ell + 2` of the polygon.
    pub fn sides(self) -> Option<usize> {
        match self {
            Ell::Finite(l) => Some(l + 2),
            Ell::Infinite => None,
        }
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Finite(l) => write!(f, "{l}"),
            Ell::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonProfile {
    pub j: MutationIndex,
    pub k: MutationIndex,
    pub product: i64,
    pub ell: Ell,
    pub short_side: Vec<MutationIndex>,
    /// `None` when `ell` is infinite.
    pub long_side: Option<Vec<MutationIndex>>,
}

// Alternations longer than this are treated as non-terminating.
const INFINITE_CAP: usize = 24;

/// Longest green alternation `first, second, first, ...` from `seed`,
/// stopping at `cap` steps. Returns the visited seeds after `seed`.
fn alternate(seed: &Seed, first: MutationIndex, second: MutationIndex, cap: usize) -> Vec<Seed> {
    let mut out = Vec::new();
    let mut cur = seed.clone();
    let mut dir = first;
    while out.len() < cap && cur.is_green(dir) {
        cur = cur.mutate(dir);
        out.push(cur.clone());
        dir = if dir == first { second } else { first };
    }
    out
}

fn alternating(first: MutationIndex, second: MutationIndex, len: usize) -> Vec<MutationIndex> {
    (0..len)
        .map(|t| if t % 2 == 0 { first } else { second })
        .collect()
}

fn transpose_labels(j: usize, k: usize, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(j, k);
    perm
}

pub fn polygon_profile(
    seed: &Seed,
    j: MutationIndex,
    k: MutationIndex,
) -> Result<PolygonProfile, PolygonError> {
    if j == k {
        return Err(PolygonError::SameDirection(j));
    }
    for x in [j, k] {
        if x.get() > seed.rank() || !seed.is_green(x) {
            return Err(PolygonError::NotGreen(x));
        }
    }
    let (jj, kk) = (j.zero_based(), k.zero_based());
    let product = (seed.b().get(jj, kk) * seed.b().get(kk, jj)).abs();
    let ell = Ell::from_product(product);
    let from_j = alternate(seed, j, k, INFINITE_CAP);
    let from_k = alternate(seed, k, j, INFINITE_CAP);
    let sides = (from_j.len(), from_k.len());
    let mismatch = || PolygonError::AlternationMismatch {
        j,
        k,
        product,
        sides,
    };

    let (short_first, long_first, long_trail, short_trail) = match (sides.0, sides.1) {
        (2, b) if b >= 2 => (j, k, &from_k, &from_j),
        (a, 2) if a > 2 => (k, j, &from_j, &from_k),
        _ => return Err(mismatch()),
    };
    let short_second = if short_first == j { k } else { j };
    let short_side = vec![short_first, short_second];

    let l = long_trail.len();
    match ell {
        Ell::Infinite => {
            if l < INFINITE_CAP {
                return Err(mismatch());
            }
            Ok(PolygonProfile {
                j,
                k,
                product,
                ell,
                short_side,
                long_side: None,
            })
        }
        Ell::Finite(expected) => {
            if l != expected {
                return Err(mismatch());
            }
            let short_end = short_trail.last().unwrap();
            let long_end = long_trail.last().unwrap();
            let equal = if expected == 3 {
                *short_end == long_end.relabel(&transpose_labels(jj, kk, seed.rank()))
            } else {
                short_end == long_end
            };
            if !equal {
                return Err(PolygonError::EndSeedMismatch { j, k });
            }
            Ok(PolygonProfile {
                j,
                k,
                product,
                ell,
                short_side,
                long_side: Some(alternating(long_first, short_first, l)),
            })
        }
    }
}

/// `mu_k mu_j B~ = mu_j mu_k mu_j mu_k B~` at a seed with `b_jk = -1`,
/// `b_kj = 2` and both directions green.
pub fn verify_c2_identity(
    seed: &Seed,
    j: MutationIndex,
    k: MutationIndex,
) -> Result<bool, PolygonError> {
    if j == k {
        return Err(PolygonError::SameDirection(j));
    }
    let n = seed.rank();
    if j.get() > n || k.get() > n {
        return Err(PolygonError::PreconditionViolated(
            "direction out of range".into(),
        ));
    }
    let (bjk, bkj) = (
        seed.b().get(j.zero_based(), k.zero_based()),
        seed.b().get(k.zero_based(), j.zero_based()),
    );
    if (bjk, bkj) != (-1, 2) {
        return Err(PolygonError::PreconditionViolated(format!(
            "need b_jk = -1 and b_kj = 2, found {bjk} and {bkj}"
        )));
    }
    if !seed.is_green(j) || !seed.is_green(k) {
        return Err(PolygonError::PreconditionViolated(
            "both directions must be green".into(),
        ));
    }
    Ok(seed.mutate_all(&[j, k]) == seed.mutate_all(&[k, j, k, j]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DeformationDirection {
    ShortToLong,
    LongToShort,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationEdge {
    pub source: Mgs,
    pub target: Mgs,
    /// Zero-based offset of the replaced block.
    pub position: usize,
    pub j: MutationIndex,
    pub k: MutationIndex,
    pub ell: usize,
    pub direction: DeformationDirection,
}

impl DeformationEdge {
    pub fn length_delta(&self) -> isize {
        self.target.len() as isize - self.source.len() as isize
    }
}

/// All green pairs `j < k` at `seed` with their profiles.
pub fn polygon_profiles_at(seed: &Seed) -> Result<Vec<PolygonProfile>, PolygonError> {
    let greens = seed.green_directions();
    let mut out = Vec::new();
    for (a, &j) in greens.iter().enumerate() {
        for &k in &greens[a + 1..] {
            out.push(polygon_profile(seed, j, k)?);
        }
    }
    Ok(out)
}

/// Neighbours of `mgs` under one polygonal move.
pub fn elementary_deformations(mgs: &Mgs) -> Result<Vec<DeformationEdge>, PolygonError> {
    let ks = mgs.indices();
    let trail = mgs.trail();
    let mut out = Vec::new();
    for t in 0..ks.len() {
        for profile in polygon_profiles_at(&trail[t])? {
            let Ell::Finite(ell) = profile.ell else {
                continue;
            };
            let long = profile
                .long_side
                .as_ref()
                .expect("finite polygon has a long side");
            let short = &profile.short_side;
            let moves: [(&[MutationIndex], &[MutationIndex], DeformationDirection); 2] = [
                (short, long, DeformationDirection::ShortToLong),
                (long, short, DeformationDirection::LongToShort),
            ];
            for (from, to, direction) in moves {
                if !ks[t..].starts_with(from) {
                    continue;
                }
                let mut next: Vec<MutationIndex> = ks[..t].to_vec();
                next.extend_from_slice(to);
                let tail = &ks[t + from.len()..];
                if ell == 3 {
                    let (j, k) = (profile.j, profile.k);
                    next.extend(tail.iter().map(|&x| {
                        if x == j {
                            k
                        } else if x == k {
                            j
                        } else {
                            x
                        }
                    }));
                } else {
                    next.extend_from_slice(tail);
                }
                let target = mgs.replay_like(&next).map_err(|e| {
                    let vals: Vec<usize> = next.iter().map(|k| k.get()).collect();
                    PolygonError::ReplayFailed(format_sequence(&vals), e.to_string())
                })?;
                out.push(DeformationEdge {
                    source: mgs.clone(),
                    target,
                    position: t,
                    j: profile.j,
                    k: profile.k,
                    ell,
                    direction,
                });
            }
        }
    }
    Ok(out)
}

/// Connected components of the polygonal-move graph on a complete MGS set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    /// Each class sorted lexicographically; classes ordered by representative.
    pub classes: Vec<Vec<Vec<usize>>>,
    /// Lexicographically least member of each class.
    pub representatives: Vec<Vec<usize>>,
    pub edge_count: usize,
    /// Histogram of `ell - 2` over all edges (signed length changes).
    pub length_deltas: BTreeMap<isize, usize>,
}

impl ClassPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn deformation_classes(report: &SearchReport) -> Result<ClassPartition, PolygonError> {
    report.require_mgs_set_complete()?;
    let seqs = report.sequences();
    let index: HashMap<&[usize], usize> = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let per_mgs: Vec<Vec<DeformationEdge>> = report
        .mgs_list
        .par_iter()
        .map(elementary_deformations)
        .collect::<Result<_, _>>()?;
    let mut uf = UnionFind::new(seqs.len());
    let mut edge_count = 0;
    let mut length_deltas = BTreeMap::new();
    for (i, edges) in per_mgs.iter().enumerate() {
        for e in edges {
            let t = e.target.index_values();
            let Some(&target) = index.get(t.as_slice()) else {
                return Err(PolygonError::MissingNeighbour(format_sequence(&t)));
            };
            uf.union(i, target);
            edge_count += 1;
            *length_deltas.entry(e.length_delta()).or_insert(0) += 1;
        }
    }
    // `seqs` is sorted, so the first member of each group is its least element.
    let classes: Vec<Vec<Vec<usize>>> = uf
        .groups()
        .into_iter()
        .map(|g| g.into_iter().map(|i| seqs[i].clone()).collect())
        .collect();
    let representatives = classes.iter().map(|c| c[0].clone()).collect();
    Ok(ClassPartition {
        classes,
        representatives,
        edge_count,
        length_deltas,
    })
}

/// Counts polygon types over every green pair at every seed of every trail.
pub fn polygon_census(report: &SearchReport) -> Result<BTreeMap<Ell, usize>, PolygonError> {
    let mut census = BTreeMap::new();
    for m in &report.mgs_list {
        for seed in m.trail() {
            for p in polygon_profiles_at(seed)? {
                *census.entry(p.ell).or_insert(0) += 1;
            }
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{indices, QuiverSpec};
    use crate::search::{enumerate_mgs, SearchConfig};

    fn spec(d: Vec<i64>, b: &[Vec<i64>]) -> QuiverSpec {
        QuiverSpec::from_rows(d, b).unwrap()
    }

    fn ix(k: usize, n: usize) -> MutationIndex {
        MutationIndex::new(k, n).unwrap()
    }

    fn vals(ks: &[MutationIndex]) -> Vec<usize> {
        ks.iter().map(|k| k.get()).collect()
    }

    #[test]
    fn c2_square_at_initial_seed() {
        let s = Seed::initial(&spec(vec![2, 1], &[vec![0, -1], vec![2, 0]]));
        let p = polygon_profile(&s, ix(1, 2), ix(2, 2)).unwrap();
        assert_eq!(p.product, 2);
        assert_eq!(p.ell, Ell::Finite(4));
        assert_eq!(vals(&p.short_side), vec![1, 2]);
        assert_eq!(vals(p.long_side.as_ref().unwrap()), vec![2, 1, 2, 1]);
        assert_eq!(verify_c2_identity(&s, ix(1, 2), ix(2, 2)), Ok(true));
    }

    #[test]
    fn commuting_pair() {
        let s = Seed::initial(&spec(vec![1, 1], &[vec![0, 0], vec![0, 0]]));
        let p = polygon_profile(&s, ix(1, 2), ix(2, 2)).unwrap();
        assert_eq!(p.ell, Ell::Finite(2));
        assert_eq!(vals(&p.short_side), vec![1, 2]);
        assert_eq!(vals(p.long_side.as_ref().unwrap()), vec![2, 1]);
        assert!(matches!(
            verify_c2_identity(&s, ix(1, 2), ix(2, 2)),
            Err(PolygonError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn a2_pentagon() {
        let s = Seed::initial(&spec(vec![1, 1], &[vec![0, 1], vec![-1, 0]]));
        let p = polygon_profile(&s, ix(1, 2), ix(2, 2)).unwrap();
        assert_eq!(p.ell, Ell::Finite(3));
        assert_eq!(p.ell.sides(), Some(5));
        assert_eq!(vals(&p.short_side), vec![2, 1]);
        assert_eq!(vals(p.long_side.as_ref().unwrap()), vec![1, 2, 1]);
    }

    #[test]
    fn g2_hexagon_and_kronecker() {
        let s = Seed::initial(&spec(vec![3, 1], &[vec![0, -1], vec![3, 0]]));
        let p = polygon_profile(&s, ix(1, 2), ix(2, 2)).unwrap();
        assert_eq!(p.ell, Ell::Finite(6));
        assert_eq!(p.ell.sides(), Some(8));
        let s = Seed::initial(&spec(vec![1, 1], &[vec![0, 2], vec![-2, 0]]));
        let p = polygon_profile(&s, ix(1, 2), ix(2, 2)).unwrap();
        assert_eq!(p.ell, Ell::Infinite);
        assert_eq!(vals(&p.short_side), vec![2, 1]);
        assert!(p.long_side.is_none());
    }

    #[test]
    fn profile_rejects_red_direction() {
        let sp = spec(vec![2, 1], &[vec![0, -1], vec![2, 0]]);
        let s = Seed::initial(&sp).mutate(ix(1, 2));
        assert_eq!(
            polygon_profile(&s, ix(1, 2), ix(2, 2)),
            Err(PolygonError::NotGreen(ix(1, 2)))
        );
    }

    #[test]
    fn c2_neighbours() {
        let sp = spec(vec![2, 1], &[vec![0, -1], vec![2, 0]]);
        let m = Mgs::replay(&sp, &indices(&[1, 2], 2).unwrap()).unwrap();
        let edges = elementary_deformations(&m).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].target.index_values(), vec![2, 1, 2, 1]);
        assert_eq!(edges[0].length_delta(), 2);
    }

    #[test]
    fn a2_neighbours_swap_labels() {
        let sp = spec(vec![1, 1], &[vec![0, 1], vec![-1, 0]]);
        let m = Mgs::replay(&sp, &indices(&[2, 1], 2).unwrap()).unwrap();
        let edges = elementary_deformations(&m).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].target.index_values(), vec![1, 2, 1]);
    }

    #[test]
    fn rank_one_has_no_neighbours() {
        let sp = spec(vec![1], &[vec![0]]);
        let m = Mgs::replay(&sp, &indices(&[1], 1).unwrap()).unwrap();
        assert!(elementary_deformations(&m).unwrap().is_empty());
    }

    #[test]
    fn classes_of_rank_two() {
        for (d, b) in [
            (vec![2, 1], vec![vec![0, -1], vec![2, 0]]),
            (vec![1, 1], vec![vec![0, 1], vec![-1, 0]]),
            (vec![3, 1], vec![vec![0, -1], vec![3, 0]]),
        ] {
            let r = enumerate_mgs(&spec(d, &b), SearchConfig::with_depth(12));
            let cp = deformation_classes(&r).unwrap();
            assert_eq!(cp.sizes(), vec![2]);
        }
    }
}
