//! Maximum clique on graphs of at most 64 vertices, stored as `u64` rows.
//!
//! Branch and bound with a greedy colouring bound, in the style of Tomita's
//! MCQ. Independent sets are cliques of the complement.

/// Returns `(clique, nodes)`: a maximum clique within `allowed`, as a bitset,
/// and the number of search nodes visited.
pub fn max_clique(adj: &[u64], allowed: u64) -> (u64, u64) {
    let mut search = Search {
        adj,
        best: 0,
        best_size: 0,
        nodes: 0,
    };
    search.expand(0, 0, allowed);
    (search.best, search.nodes)
}

/// Whether a clique of size `k` exists within `allowed`.
pub fn has_clique_of_size(adj: &[u64], allowed: u64, k: u32) -> bool {
    if k == 0 {
        return true;
    }
    if allowed.count_ones() < k {
        return false;
    }
    let mut search = Search {
        adj,
        best: 0,
        best_size: k - 1,
        nodes: 0,
    };
    search.expand(0, 0, allowed);
    search.best_size >= k
}

/// Complement adjacency restricted to `n` vertices, without loops.
pub fn complement(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let full = full_mask(n);
    adj.iter()
        .enumerate()
        .map(|(i, &row)| !row & full & !(1u64 << i))
        .collect()
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(i)
        }
    })
}

struct Search<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
    nodes: u64,
}

impl Search<'_> {
    fn expand(&mut self, current: u64, size: u32, mut candidates: u64) {
        self.nodes += 1;
        if candidates == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = current;
            }
            return;
        }
        let (order, colours) = self.colour(candidates);
        for idx in (0..order.len()).rev() {
            if size + colours[idx] <= self.best_size {
                return;
            }
            let v = order[idx];
            let bit = 1u64 << v;
            self.expand(current | bit, size + 1, candidates & self.adj[v]);
            candidates &= !bit;
        }
    }

    /// Greedy sequential colouring; `colours[i]` bounds the clique size
    /// reachable using `order[..=i]`.
    fn colour(&self, candidates: u64) -> (Vec<usize>, Vec<u32>) {
        let mut order = Vec::with_capacity(candidates.count_ones() as usize);
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = candidates;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut q = uncoloured;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u64 << v);
                q &= !self.adj[v];
                uncoloured &= !(1u64 << v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}
