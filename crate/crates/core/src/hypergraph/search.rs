//! Exact backtracking for coverability and weak colourings.
//!
//! Vertices are visited by descending degree (ties by label). The first
//! vertex is pinned to class 0 and class indices must appear in first-use
//! order, so each unordered partition is explored once. Classes are tried in
//! increasing order, which makes the first witness found the
//! lexicographically smallest assignment in visiting order.

use thiserror::Error;

use super::{Hypergraph, Partition, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coverability {
    /// Every edge meets every class of the witness.
    Coverable(Partition),
    NotCoverable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colourability {
    /// No edge lies inside one class of the witness.
    Colourable(Partition),
    NotColourable,
}

impl Coverability {
    pub fn witness(&self) -> Option<&Partition> {
        match self {
            Coverability::Coverable(p) => Some(p),
            Coverability::NotCoverable => None,
        }
    }
}

impl Colourability {
    pub fn witness(&self) -> Option<&Partition> {
        match self {
            Colourability::Colourable(p) => Some(p),
            Colourability::NotColourable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColourError {
    #[error("edge {0} is a singleton, so no weak colouring exists")]
    Uncolourable(VertexSet),
}

struct Layout {
    order: Vec<usize>,
    /// Edge indices incident to each vertex (indexed by label).
    incident: Vec<Vec<usize>>,
}

impl Layout {
    fn new(h: &Hypergraph) -> Self {
        let n = h.vertex_count();
        let mut incident = vec![Vec::new(); n + 1];
        for (i, e) in h.edges().iter().enumerate() {
            for v in e.iter() {
                incident[v].push(i);
            }
        }
        let mut order: Vec<usize> = (1..=n).collect();
        order.sort_by(|&a, &b| incident[b].len().cmp(&incident[a].len()).then(a.cmp(&b)));
        Layout { order, incident }
    }

    /// Classes are numbered in first-use order along the visiting order.
    fn partition(&self, classes: &[usize]) -> Partition {
        let count = classes.iter().max().map_or(0, |&c| c + 1);
        let mut sets = vec![VertexSet::EMPTY; count];
        for (&v, &c) in self.order.iter().zip(classes) {
            sets[c].insert(v);
        }
        Partition { classes: sets }
    }
}

/// Decides whether `V` splits into exactly `c` classes, each meeting every
/// edge. Returns a witness partition or a definitive `NotCoverable`.
pub fn is_coverable(h: &Hypergraph, c: usize) -> Coverability {
    assert!(c >= 1, "class count must be positive");
    let n = h.vertex_count();
    if c > n || c > 64 || h.tau() < c {
        return Coverability::NotCoverable;
    }
    let layout = Layout::new(h);
    let mut search = CoverSearch {
        h,
        layout: &layout,
        c,
        hit: vec![0u64; h.edges().len()],
        unassigned: h.edges().iter().map(|e| e.len()).collect(),
        classes: Vec::with_capacity(n),
    };
    if search.descend(0, 0) {
        Coverability::Coverable(layout.partition(&search.classes))
    } else {
        Coverability::NotCoverable
    }
}

struct CoverSearch<'a> {
    h: &'a Hypergraph,
    layout: &'a Layout,
    c: usize,
    hit: Vec<u64>,
    unassigned: Vec<usize>,
    classes: Vec<usize>,
}

impl CoverSearch<'_> {
    fn descend(&mut self, pos: usize, used: usize) -> bool {
        if pos == self.h.vertex_count() {
            return used == self.c;
        }
        let vertex = self.layout.order[pos];
        let remaining = self.h.vertex_count() - pos;
        // Every class must still be reachable by the remaining vertices.
        if used + remaining < self.c {
            return false;
        }
        let top = (used + 1).min(self.c);
        for class in 0..top {
            let bit = 1u64 << class;
            let mut ok = true;
            let mut saved = Vec::with_capacity(self.layout.incident[vertex].len());
            for &e in &self.layout.incident[vertex] {
                saved.push(self.hit[e]);
                self.hit[e] |= bit;
                self.unassigned[e] -= 1;
                let missing = self.c - self.hit[e].count_ones() as usize;
                if missing > self.unassigned[e] {
                    ok = false;
                }
            }
            if ok {
                self.classes.push(class);
                if self.descend(pos + 1, used.max(class + 1)) {
                    return true;
                }
                self.classes.pop();
            }
            for (&e, &h) in self.layout.incident[vertex].iter().zip(&saved) {
                self.hit[e] = h;
                self.unassigned[e] += 1;
            }
        }
        false
    }
}

/// Decides whether `H` has a weak colouring with at most `m` classes, i.e. a
/// partition where no edge lies inside one class.
pub fn is_colourable(h: &Hypergraph, m: usize) -> Colourability {
    assert!(m >= 1, "colour count must be positive");
    if h.tau() < 2 {
        return Colourability::NotColourable;
    }
    let layout = Layout::new(h);
    let n = h.vertex_count();
    let mut search = ColourSearch {
        h,
        layout: &layout,
        m: m.min(n),
        class_masks: vec![0u64; m.min(n)],
        classes: Vec::with_capacity(n),
    };
    if search.descend(0, 0) {
        Colourability::Colourable(layout.partition(&search.classes))
    } else {
        Colourability::NotColourable
    }
}

struct ColourSearch<'a> {
    h: &'a Hypergraph,
    layout: &'a Layout,
    m: usize,
    class_masks: Vec<u64>,
    classes: Vec<usize>,
}

impl ColourSearch<'_> {
    fn descend(&mut self, pos: usize, used: usize) -> bool {
        if pos == self.h.vertex_count() {
            return true;
        }
        let vertex = self.layout.order[pos];
        let vbit = 1u64 << (vertex - 1);
        let top = (used + 1).min(self.m);
        for class in 0..top {
            let mask = self.class_masks[class] | vbit;
            let monochromatic = self.layout.incident[vertex].iter().any(|&e| self.h.edges()[e].bits() & !mask == 0);
            if monochromatic {
                continue;
            }
            self.class_masks[class] = mask;
            self.classes.push(class);
            if self.descend(pos + 1, used.max(class + 1)) {
                return true;
            }
            self.classes.pop();
            self.class_masks[class] &= !vbit;
        }
        false
    }
}

/// Exact weak chromatic number χ(H).
pub fn chromatic_number(h: &Hypergraph) -> Result<usize, ColourError> {
    if let Some(&e) = h.edges().iter().find(|e| e.len() < 2) {
        return Err(ColourError::Uncolourable(e));
    }
    let n = h.vertex_count();
    Ok((1..=n)
        .find(|&m| matches!(is_colourable(h, m), Colourability::Colourable(_)))
        .expect("singleton classes always colour a hypergraph without singleton edges"))
}
