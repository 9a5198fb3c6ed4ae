//! Maximum clique on at most 128 vertices, branch and bound with a greedy
//! colouring bound (Tomita–Seki style) over `u128` bitsets.

/// Returns the vertices of one maximum clique, sorted. `adjacency[v]` is the
/// neighbour set of `v`; the graph must be symmetric and loop-free.
pub(crate) fn max_clique_with(adjacency: &[u128]) -> Vec<usize> {
    assert!(adjacency.len() <= 128, "clique search supports at most 128 vertices");
    let all = if adjacency.len() == 128 {
        u128::MAX
    } else {
        (1u128 << adjacency.len()) - 1
    };
    let mut search = Search {
        adjacency,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.expand(all);
    let mut best = search.best;
    best.sort_unstable();
    best
}

struct Search<'a> {
    adjacency: &'a [u128],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, mut candidates: u128) {
        let (order, colours) = self.colour(candidates);
        for k in (0..order.len()).rev() {
            if self.current.len() + colours[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            self.current.push(v);
            let next = candidates & self.adjacency[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates &= !(1u128 << v);
        }
    }

    /// Greedy sequential colouring; returns vertices in colour order with the
    /// running colour count, an upper bound on the clique size among each prefix.
    fn colour(&self, candidates: u128) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(candidates.count_ones() as usize);
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = candidates;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut available = uncoloured;
            while available != 0 {
                let v = available.trailing_zeros() as usize;
                available &= !(1u128 << v) & !self.adjacency[v];
                uncoloured &= !(1u128 << v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}
