use num_integer::binomial;
use serde::Serialize;
use thiserror::Error;

use super::{Hypergraph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("parameters must satisfy 1 <= t < n <= v <= {MAX_VERTICES}, got t={t}, n={n}, v={v}")]
    InvalidParameters { v: usize, n: usize, t: usize },
    #[error("block {block:?} has {found} points, expected {expected}")]
    BlockSizeMismatch { block: Vec<usize>, expected: usize, found: usize },
    #[error("block {block:?} uses a point outside 1..={v}")]
    VertexOutOfRange { block: Vec<usize>, v: usize },
    #[error("t-subset {0:?} lies in no block")]
    TSubsetUncovered(Vec<usize>),
    #[error("t-subset {subset:?} lies in {} blocks: {blocks:?}", blocks.len())]
    TSubsetMultiplyCovered { subset: Vec<usize>, blocks: Vec<Vec<usize>> },
    #[error("expected C(v,t)/C(n,t) = {expected} blocks, found {found}")]
    CountMismatch { expected: u64, found: usize },
}

/// A validated Steiner system S(t, n, v): every t-subset of `{1..v}` lies in
/// exactly one block, and all blocks have `n` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerSystem {
    v: usize,
    n: usize,
    t: usize,
    blocks: Vec<VertexSet>,
}

impl SteinerSystem {
    /// Checks the design axioms exhaustively over all t-subsets.
    pub fn validate(v: usize, n: usize, t: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        if !(1 <= t && t < n && n <= v && v <= MAX_VERTICES) {
            return Err(DesignError::InvalidParameters { v, n, t });
        }
        let mut packed = Vec::with_capacity(blocks.len());
        for block in &blocks {
            if block.iter().any(|&x| x == 0 || x > v) {
                return Err(DesignError::VertexOutOfRange { block: block.clone(), v });
            }
            let set = VertexSet::from_vertices(block.iter().copied());
            if set.len() != n || block.len() != n {
                return Err(DesignError::BlockSizeMismatch { block: block.clone(), expected: n, found: set.len() });
            }
            packed.push(set);
        }

        for subset in k_subsets(v, t) {
            let mut hits = packed.iter().filter(|b| subset.is_subset(**b));
            match (hits.next(), hits.next()) {
                (None, _) => return Err(DesignError::TSubsetUncovered(subset.to_vec())),
                (Some(_), None) => {}
                (Some(_), Some(_)) => {
                    let blocks = packed.iter().filter(|b| subset.is_subset(**b)).map(|b| b.to_vec()).collect();
                    return Err(DesignError::TSubsetMultiplyCovered { subset: subset.to_vec(), blocks });
                }
            }
        }

        let expected = binomial(v as u64, t as u64) / binomial(n as u64, t as u64);
        if packed.len() as u64 != expected || expected * binomial(n as u64, t as u64) != binomial(v as u64, t as u64) {
            return Err(DesignError::CountMismatch { expected, found: packed.len() });
        }
        Ok(SteinerSystem { v, n, t, blocks: packed })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Blocks in input order.
    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }

    /// The blocks viewed as hypergraph edges on `{1..v}`.
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.v, self.blocks.clone()).expect("a Steiner system is a valid hypergraph")
    }

    /// All n-subsets of `{1..v}` that are not blocks.
    pub fn complement_blocks(&self) -> Vec<VertexSet> {
        let blocks: std::collections::HashSet<_> = self.blocks.iter().copied().collect();
        k_subsets(self.v, self.n).filter(|s| !blocks.contains(s)).collect()
    }
}

/// Free-function form of [`SteinerSystem::complement_blocks`].
pub fn complement_blocks(s: &SteinerSystem) -> Vec<VertexSet> {
    s.complement_blocks()
}

/// The Fano plane S(2,3,7) with blocks 123, 345, 367, 147, 246, 257, 156.
pub fn builtin_fano() -> SteinerSystem {
    let blocks =
        vec![vec![1, 2, 3], vec![3, 4, 5], vec![3, 6, 7], vec![1, 4, 7], vec![2, 4, 6], vec![2, 5, 7], vec![1, 5, 6]];
    SteinerSystem::validate(7, 3, 2, blocks).expect("builtin Fano plane is valid")
}

/// A second labelling of STS(7): 123, 145, 167, 246, 257, 347, 356.
pub fn builtin_sts7() -> SteinerSystem {
    let blocks =
        vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7], vec![2, 4, 6], vec![2, 5, 7], vec![3, 4, 7], vec![3, 5, 6]];
    SteinerSystem::validate(7, 3, 2, blocks).expect("builtin STS(7) is valid")
}

/// The Steiner quadruple system SQS(8) = S(3,4,8) with 14 blocks.
pub fn builtin_sqs8() -> SteinerSystem {
    let blocks = vec![
        vec![1, 2, 3, 4],
        vec![1, 2, 5, 6],
        vec![1, 2, 7, 8],
        vec![1, 3, 5, 7],
        vec![1, 3, 6, 8],
        vec![1, 4, 5, 8],
        vec![1, 4, 6, 7],
        vec![2, 3, 5, 8],
        vec![2, 3, 6, 7],
        vec![2, 4, 5, 7],
        vec![2, 4, 6, 8],
        vec![3, 4, 5, 6],
        vec![3, 4, 7, 8],
        vec![5, 6, 7, 8],
    ];
    SteinerSystem::validate(8, 4, 3, blocks).expect("builtin SQS(8) is valid")
}

/// All k-subsets of `{1..n}` in increasing bit order (Gosper's hack).
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    debug_assert!(n <= MAX_VERTICES);
    let limit: u128 = 1u128 << n;
    let mut current: u128 = if k > n { limit } else { (1u128 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done || current >= limit {
            return None;
        }
        let out = VertexSet::from_bits(current as u64);
        if current == 0 {
            done = true;
        } else {
            let c = current & current.wrapping_neg();
            let r = current + c;
            current = (((r ^ current) >> 2) / c) | r;
        }
        Some(out)
    })
}
