//! Deciding whether a finite relation extends to a partial order.
//!
//! A finite relation extends to a partial order exactly when its digraph has
//! no directed cycle through distinct nodes. [`linearize`] returns either the
//! lexicographically least topological order or an explicit cycle.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness<T> {
    /// A linear order in which every edge points forward.
    Order(Vec<T>),
    /// A closed walk `v₀ → v₁ → … → v₀`; the first node is repeated at the end.
    Cycle(Vec<T>),
}

impl<T> Witness<T> {
    pub fn is_order(&self) -> bool {
        matches!(self, Witness::Order(_))
    }
}

impl<T: fmt::Display> fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (label, items, sep) = match self {
            Witness::Order(v) => ("order", v, " < "),
            Witness::Cycle(v) => ("cycle", v, " → "),
        };
        write!(f, "{label}: ")?;
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

/// Linearizes the relation on `nodes` (which must be sorted and distinct)
/// given by `edges` as index pairs `(from, to)`. Self-loops are ignored.
pub fn linearize<T: Clone>(nodes: &[T], edges: &BTreeSet<(usize, usize)>) -> Witness<T> {
    let n = nodes.len();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(a, b) in edges {
        if a == b {
            continue;
        }
        succ[a].push(b);
        pred[b].push(a);
        indegree[b] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while let Some(Reverse(i)) = heap.pop() {
        order.push(i);
        done[i] = true;
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                heap.push(Reverse(j));
            }
        }
    }
    if order.len() == n {
        return Witness::Order(order.into_iter().map(|i| nodes[i].clone()).collect());
    }

    // Every remaining node has a remaining predecessor; walk backwards until
    // a node repeats.
    let start = (0..n).find(|&i| !done[i]).expect("some node remains");
    let mut walk = vec![start];
    let mut position = vec![usize::MAX; n];
    position[start] = 0;
    loop {
        let cur = *walk.last().unwrap();
        let prev = pred[cur]
            .iter()
            .copied()
            .filter(|&p| !done[p])
            .min()
            .expect("remaining node has a remaining predecessor");
        if position[prev] != usize::MAX {
            let mut cycle: Vec<T> = walk[position[prev]..].iter().rev().map(|&i| nodes[i].clone()).collect();
            cycle.insert(0, nodes[prev].clone());
            return Witness::Cycle(cycle);
        }
        position[prev] = walk.len();
        walk.push(prev);
    }
}
