use std::collections::BTreeMap;

use super::{Interval, IntervalMatrix};

/// Connected components of the bipartite row/column graph.
///
/// Each balanced component (as many rows as columns) is extracted as its own
/// interval matrix with rows sorted by block. Components with more rows than
/// columns or vice versa can only occur when the permanent is zero; they are
/// merged into one trailing square `deficient` block so that orders still sum
/// to `n` and the product of component permanents still equals the whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<IntervalMatrix>,
    pub orders: Vec<usize>,
    /// Whether the last component is the merged unbalanced block.
    pub deficient: bool,
}

impl ComponentDecomposition {
    /// Components that are genuinely connected (excludes the deficient block).
    pub fn connected(&self) -> &[IntervalMatrix] {
        let k = self.components.len() - usize::from(self.deficient);
        &self.components[..k]
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn decompose_components(m: &IntervalMatrix) -> ComponentDecomposition {
    let n = m.order();
    // vertices: rows 0..n, columns n..2n
    let mut dsu = Dsu((0..2 * n).collect());
    for (i, row) in m.rows().iter().enumerate() {
        if let Some(iv) = row {
            for c in iv.lo..=iv.hi {
                dsu.union(i, n + c - 1);
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in 0..2 * n {
        let g = groups.entry(dsu.find(v)).or_default();
        if v < n {
            g.0.push(v);
        } else {
            g.1.push(v - n + 1);
        }
    }
    // order components by their first column, column-less groups last
    let mut groups: Vec<_> = groups.into_values().collect();
    groups.sort_by_key(|(rows, cols)| (cols.first().copied().unwrap_or(usize::MAX), rows.first().copied()));

    let mut components = Vec::new();
    let (mut bad_rows, mut bad_cols) = (Vec::new(), Vec::new());
    for (rows, cols) in groups {
        if rows.len() == cols.len() {
            components.push(extract(m, &rows, &cols));
        } else {
            bad_rows.extend(rows);
            bad_cols.extend(cols);
        }
    }
    let deficient = !bad_rows.is_empty();
    if deficient {
        bad_rows.sort_unstable();
        bad_cols.sort_unstable();
        components.push(extract(m, &bad_rows, &bad_cols));
    }
    let orders = components.iter().map(IntervalMatrix::order).collect();
    ComponentDecomposition {
        components,
        orders,
        deficient,
    }
}

/// Restricts `m` to the given rows (0-based) and sorted columns (1-based).
/// Every row's block lies inside a contiguous run of the selected columns, so
/// relabelling columns by rank keeps each row contiguous.
fn extract(m: &IntervalMatrix, rows: &[usize], cols: &[usize]) -> IntervalMatrix {
    let rank = |c: usize| cols.binary_search(&c).expect("column belongs to the component") + 1;
    let mut new_rows: Vec<Option<Interval>> = rows
        .iter()
        .map(|&i| m.rows()[i].map(|iv| Interval::new(rank(iv.lo), rank(iv.hi))))
        .collect();
    new_rows.sort_by_key(|r| (r.is_none(), *r));
    IntervalMatrix::new(cols.len(), new_rows).expect("square extraction")
}

/// Whether `m` contains `1_{d×d}` as a sub-matrix. For matrices whose rows all
/// have length `d` this means some length-`d` block is repeated in `d` rows.
pub fn contains_full_block(m: &IntervalMatrix, d: usize) -> bool {
    let mut counts: BTreeMap<Interval, usize> = BTreeMap::new();
    for iv in m.rows().iter().flatten().filter(|iv| iv.len() == d) {
        *counts.entry(*iv).or_default() += 1;
    }
    counts.values().any(|&c| c >= d)
}
