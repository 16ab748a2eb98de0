//! Integer difference constraints `x_a - x_b >= c`.

use crate::tableau::Position;

/// A system of constraints `x_a - x_b >= c` over nodes `0..nodes`.
#[derive(Clone, Debug, Default)]
pub struct DifferenceSystem {
    nodes: usize,
    constraints: Vec<(usize, usize, i64)>,
}

impl DifferenceSystem {
    pub fn new(nodes: usize) -> Self {
        DifferenceSystem { nodes, constraints: Vec::new() }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    /// `x_a - x_b >= c`.
    pub fn at_least(&mut self, a: usize, b: usize, c: i64) {
        self.constraints.push((a, b, c));
    }

    /// `x_a - x_b = c`.
    pub fn equal(&mut self, a: usize, b: usize, c: i64) {
        self.at_least(a, b, c);
        self.at_least(b, a, -c);
    }

    pub fn constraints(&self) -> &[(usize, usize, i64)] {
        &self.constraints
    }

    /// Bellman-Ford from a virtual source; `None` on a positive cycle.
    pub fn solve(&self) -> Option<Vec<i64>> {
        // x_b <= x_a - c is an edge a -> b of weight -c in shortest-path form.
        let mut dist = vec![0i64; self.nodes];
        for round in 0..=self.nodes {
            let mut changed = false;
            for &(a, b, c) in &self.constraints {
                let cand = dist[a] - c;
                if cand < dist[b] {
                    dist[b] = cand;
                    changed = true;
                }
            }
            if !changed {
                return Some(dist);
            }
            if round == self.nodes {
                break;
            }
        }
        None
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    /// All-pairs tightest implied bounds: `bound(a, b)` is the largest `c`
    /// with `x_a - x_b >= c` implied, or `None` when unbounded.
    pub fn closure(&self) -> Bounds {
        let n = self.nodes;
        let mut d = vec![None; n * n];
        for i in 0..n {
            d[i * n + i] = Some(0);
        }
        for &(a, b, c) in &self.constraints {
            let cell = &mut d[a * n + b];
            if cell.map_or(true, |v| c > v) {
                *cell = Some(c);
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = d[i * n + k] else { continue };
                for j in 0..n {
                    if let Some(kj) = d[k * n + j] {
                        let v = ik.saturating_add(kj);
                        let cell = &mut d[i * n + j];
                        if cell.map_or(true, |w| v > w) {
                            *cell = Some(v);
                        }
                    }
                }
            }
        }
        let feasible = (0..n).all(|i| d[i * n + i] == Some(0));
        Bounds { n, d, feasible }
    }
}

#[derive(Clone, Debug)]
pub struct Bounds {
    n: usize,
    d: Vec<Option<i64>>,
    feasible: bool,
}

impl Bounds {
    pub fn feasible(&self) -> bool {
        self.feasible
    }

    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.d[a * self.n + b]
    }
}

/// Node numbering for a set of tableau positions.
#[derive(Clone, Debug)]
pub struct PositionIndex {
    positions: Vec<Position>,
    slot: Vec<Option<usize>>,
}

impl PositionIndex {
    pub fn new(n: usize, positions: impl IntoIterator<Item = Position>) -> Self {
        let mut slot = vec![None; crate::tableau::shape_size(n)];
        let mut list = Vec::new();
        for p in positions {
            if slot[p.index()].is_none() {
                slot[p.index()] = Some(list.len());
                list.push(p);
            }
        }
        PositionIndex { positions: list, slot }
    }

    pub fn node(&self, p: Position) -> Option<usize> {
        self.slot.get(p.index()).copied().flatten()
    }

    pub fn position(&self, node: usize) -> Position {
        self.positions[node]
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}
