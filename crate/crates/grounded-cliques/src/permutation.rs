//! Permutation-graph maximum clique.
//!
//! An instance is two orderings of one element set; two elements are
//! adjacent iff their relative order differs between the two. A maximum
//! clique is a largest pairwise-inverted subset, i.e. a longest strictly
//! decreasing subsequence of the second ordering read along the first.

use std::collections::HashMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PermutationError {
    #[error("orderings have different lengths")]
    LengthMismatch,
    #[error("element {0} duplicated in an ordering")]
    Duplicate(u32),
    #[error("element {0} missing from one ordering")]
    Missing(u32),
}

#[derive(Debug, Clone)]
pub struct PermutationInstance {
    ids: Vec<u32>,
    /// position of element k (index into `ids`) in ordering a / b, 0-based
    pos_a: Vec<usize>,
    pos_b: Vec<usize>,
}

impl PermutationInstance {
    /// Build from two orderings of the same id set.
    pub fn from_orders(order_a: &[u32], order_b: &[u32]) -> Result<Self, PermutationError> {
        if order_a.len() != order_b.len() {
            return Err(PermutationError::LengthMismatch);
        }
        let mut index = HashMap::new();
        for (i, &id) in order_a.iter().enumerate() {
            if index.insert(id, i).is_some() {
                return Err(PermutationError::Duplicate(id));
            }
        }
        let n = order_a.len();
        let mut pos_b = vec![usize::MAX; n];
        for (p, &id) in order_b.iter().enumerate() {
            let k = *index.get(&id).ok_or(PermutationError::Missing(id))?;
            if pos_b[k] != usize::MAX {
                return Err(PermutationError::Duplicate(id));
            }
            pos_b[k] = p;
        }
        if let Some(k) = pos_b.iter().position(|&p| p == usize::MAX) {
            return Err(PermutationError::Missing(order_a[k]));
        }
        Ok(PermutationInstance {
            ids: order_a.to_vec(),
            pos_a: (0..n).collect(),
            pos_b,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    fn index_of(&self, id: u32) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    /// Adjacent iff the relative order of `i` and `j` is inverted between
    /// the two orderings.
    pub fn adjacent(&self, i: u32, j: u32) -> bool {
        let (ki, kj) = (self.index_of(i).unwrap(), self.index_of(j).unwrap());
        assert!(ki != kj, "adjacency undefined for identical elements");
        let da = self.pos_a[ki] as i64 - self.pos_a[kj] as i64;
        let db = self.pos_b[ki] as i64 - self.pos_b[kj] as i64;
        da.signum() != db.signum()
    }

    /// Sequence of b-positions read in a-order.
    fn sequence(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&k| self.pos_a[k]);
        order.iter().map(|&k| self.pos_b[k]).collect()
    }

    /// Maximum clique with certificate, via patience sorting on the longest
    /// strictly decreasing subsequence. O(n log n).
    pub fn max_clique(&self) -> Vec<u32> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let seq = self.sequence();
        // longest strictly decreasing subsequence of seq == longest strictly
        // increasing subsequence of the reversed-value sequence
        let vals: Vec<usize> = seq.iter().map(|&v| n - v).collect();
        // tails[l] = index of smallest tail value of an increasing
        // subsequence of length l+1
        let mut tails: Vec<usize> = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut at_len: Vec<usize> = Vec::new();
        for (i, &v) in vals.iter().enumerate() {
            // first position whose tail value >= v (strict increase)
            let pos = tails.partition_point(|&t| vals[t] < v);
            if pos > 0 {
                parent[i] = tails[pos - 1];
            }
            if pos == tails.len() {
                tails.push(i);
                at_len.push(i);
            } else {
                tails[pos] = i;
                at_len[pos] = i;
            }
        }
        let mut chain = Vec::new();
        let mut cur = *at_len.last().unwrap();
        loop {
            chain.push(cur);
            if parent[cur] == usize::MAX {
                break;
            }
            cur = parent[cur];
        }
        chain.reverse();
        // chain holds indices into the a-order
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| self.pos_a[k]);
        chain.into_iter().map(|i| self.ids[order[i]]).collect()
    }

    /// Clique size only, via a max-Fenwick tree over rank space. Second,
    /// independent route used to cross-check `max_clique`.
    pub fn max_clique_size_fenwick(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        let seq = self.sequence();
        let vals: Vec<usize> = seq.iter().map(|&v| n - v).collect();
        let mut fen = vec![0usize; n + 1];
        let update = |fen: &mut Vec<usize>, mut i: usize, v: usize| {
            while i <= n {
                fen[i] = fen[i].max(v);
                i += i & i.wrapping_neg();
            }
        };
        let query = |fen: &Vec<usize>, mut i: usize| {
            let mut m = 0;
            while i > 0 {
                m = m.max(fen[i]);
                i -= i & i.wrapping_neg();
            }
            m
        };
        let mut best = 0;
        for &v in &vals {
            // longest strictly increasing subsequence ending with value v:
            // best over values < v, i.e. prefix up to v-1 (values are 1..=n)
            let len = query(&fen, v - 1) + 1;
            update(&mut fen, v, len);
            best = best.max(len);
        }
        best
    }
}
