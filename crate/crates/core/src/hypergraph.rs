//! Hypergraphs, incidence operators, tree decompositions and (generalized)
//! variable elimination orders.
//!
//! Vertices are indices `0..k` into a name table; every vertex subset is a
//! [`VertexSet`] bitmask. Capacity is fixed at 16 vertices, which keeps full
//! `2^k` subset tables in memory and makes subset iteration a machine-word
//! loop; every hypergraph in scope here has at most 6 vertices.

use std::fmt;

use thiserror::Error;

/// Maximum number of vertices a hypergraph may have.
pub const MAX_VERTICES: usize = 16;

/// A subset of hypergraph vertices as a bitmask over indices `0..k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn single(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    pub fn full(k: usize) -> Self {
        debug_assert!(k <= MAX_VERTICES);
        if k == 0 {
            VertexSet(0)
        } else {
            VertexSet(u16::MAX >> (MAX_VERTICES - k))
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet(0);
        for v in it {
            s.0 |= 1 << v;
        }
        s
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn inter(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn diff(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn overlaps(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Ascending vertex indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, the empty set first, ascending bit pattern.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut cur: Option<u16> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == mask {
                None
            } else {
                Some((c.wrapping_sub(mask)) & mask)
            };
            Some(VertexSet(c))
        })
    }

    /// Nonempty subsets of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = VertexSet> {
        self.subsets().filter(|s| !s.is_empty())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("hypergraph needs between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {0} is not a subset of the vertex set")]
    EdgeOutOfRange(usize),
    #[error("vertex `{0}` appears in no edge")]
    IsolatedVertex(String),
    #[error("argument set must be a nonempty subset of the vertices")]
    InvalidArgument,
    #[error("blocks must form an ordered partition of the vertex set")]
    NotAPartition,
    #[error("elimination order must consist of singleton blocks")]
    NotSingletons,
}

/// A hypergraph: named vertices plus a canonical list of hyperedges.
///
/// Edges are sorted by bit pattern and deduplicated. Edges contained in other
/// edges are kept: the matrix-multiplication term enumeration ranges over the
/// literal incident-edge list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    vertex_names: Vec<String>,
    edges: Vec<VertexSet>,
    /// live vertex set of an elimination intermediate (None = all of 0..k)
    live: Option<VertexSet>,
}

impl Hypergraph {
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        edges: Vec<VertexSet>,
    ) -> Result<Self, HypergraphError> {
        let vertex_names: Vec<String> = names.into_iter().map(Into::into).collect();
        let k = vertex_names.len();
        if k == 0 || k > MAX_VERTICES {
            return Err(HypergraphError::VertexCount(k));
        }
        for (i, n) in vertex_names.iter().enumerate() {
            if vertex_names[..i].contains(n) {
                return Err(HypergraphError::DuplicateVertex(n.clone()));
            }
        }
        let full = VertexSet::full(k);
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            if !e.is_subset(full) {
                return Err(HypergraphError::EdgeOutOfRange(i));
            }
        }
        let mut edges = edges;
        edges.sort();
        edges.dedup();
        let covered = edges.iter().fold(VertexSet::EMPTY, |a, e| a.union(*e));
        if covered != full {
            let v = full.diff(covered).iter().next().unwrap();
            return Err(HypergraphError::IsolatedVertex(vertex_names[v].clone()));
        }
        Ok(Hypergraph {
            vertex_names,
            edges,
            live: None,
        })
    }

    /// Internal constructor for elimination intermediates, which may have an
    /// empty vertex set and carry vertex indices of the original hypergraph.
    fn raw(vertex_names: Vec<String>, mut edges: Vec<VertexSet>) -> Self {
        edges.sort();
        edges.dedup();
        Hypergraph {
            vertex_names,
            edges,
            live: None,
        }
    }

    pub fn k(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertices(&self) -> VertexSet {
        // elimination intermediates track their live set via edges
        self.live.unwrap_or_else(|| VertexSet::full(self.k()))
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// Renders a vertex set with this hypergraph's names, e.g. `{X,Y}`.
    pub fn set_name(&self, s: VertexSet) -> String {
        let mut out = String::from("{");
        for (i, v) in s.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&self.vertex_names[v]);
        }
        out.push('}');
        out
    }

    /// Every pair of vertices co-occurs in some edge.
    pub fn is_clustered(&self) -> bool {
        let vs: Vec<usize> = self.vertices().iter().collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let pair = VertexSet::single(a).union(VertexSet::single(b));
                if !self.edges.iter().any(|e| pair.is_subset(*e)) {
                    return false;
                }
            }
        }
        true
    }

    /// All edges are exactly the 2-element subsets.
    pub fn is_clique(&self) -> bool {
        let k = self.vertices().len();
        self.edges.len() == k * (k - 1) / 2 && self.edges.iter().all(|e| e.len() == 2)
    }
}

/// Incidence of a vertex set: the edges it overlaps, their union, and the
/// neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub boundary: Vec<VertexSet>,
    pub union: VertexSet,
    pub neighbors: VertexSet,
}

/// An ordered partition of the vertices: a generalized variable elimination
/// order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gveo(pub Vec<VertexSet>);

impl Gveo {
    pub fn singletons(order: &[usize]) -> Self {
        Gveo(order.iter().map(|&v| VertexSet::single(v)).collect())
    }

    pub fn is_partition_of(&self, v: VertexSet) -> bool {
        let mut seen = VertexSet::EMPTY;
        for b in &self.0 {
            if b.is_empty() || b.overlaps(seen) {
                return false;
            }
            seen = seen.union(*b);
        }
        seen == v
    }

    pub fn all_singletons(&self) -> bool {
        self.0.iter().all(|b| b.len() == 1)
    }
}

/// The full elimination record of a GVEO: per step, the hypergraph it acts
/// on, the incident edges, their union, and which steps survive trimming
/// (`U_i` not contained in any earlier `U_j`).
#[derive(Clone, Debug)]
pub struct EliminationTrace {
    pub hypergraphs: Vec<Hypergraph>,
    pub boundaries: Vec<Vec<VertexSet>>,
    pub unions: Vec<VertexSet>,
    pub trimmed: Vec<usize>,
}

/// `∂(X)`, `U(X)`, `N(X)` of a nonempty vertex set.
pub fn incidence(h: &Hypergraph, x: VertexSet) -> Result<Incidence, HypergraphError> {
    if x.is_empty() || !x.is_subset(h.vertices()) {
        return Err(HypergraphError::InvalidArgument);
    }
    let boundary: Vec<VertexSet> = h.edges.iter().copied().filter(|e| e.overlaps(x)).collect();
    let union = boundary.iter().fold(VertexSet::EMPTY, |a, e| a.union(*e));
    Ok(Incidence {
        boundary,
        union,
        neighbors: union.diff(x),
    })
}

/// Removes `∂(X)` and adds the single edge `N(X)` (dropped when empty); the
/// vertex set shrinks by `X`.
pub fn eliminate(h: &Hypergraph, x: VertexSet) -> Result<Hypergraph, HypergraphError> {
    let inc = incidence(h, x)?;
    let mut edges: Vec<VertexSet> = h
        .edges
        .iter()
        .copied()
        .filter(|e| !e.overlaps(x))
        .collect();
    if !inc.neighbors.is_empty() {
        edges.push(inc.neighbors);
    }
    let mut out = Hypergraph::raw(h.vertex_names.clone(), edges);
    out.live = Some(h.vertices().diff(x));
    Ok(out)
}

/// Runs the full elimination recurrence of a GVEO and records the trimmed
/// index set.
pub fn elimination_trace(h: &Hypergraph, sigma: &Gveo) -> Result<EliminationTrace, HypergraphError> {
    if !sigma.is_partition_of(h.vertices()) {
        return Err(HypergraphError::NotAPartition);
    }
    let mut hypergraphs = Vec::with_capacity(sigma.0.len());
    let mut boundaries = Vec::with_capacity(sigma.0.len());
    let mut unions = Vec::with_capacity(sigma.0.len());
    let mut trimmed = Vec::new();
    let mut cur = h.clone();
    for (i, &block) in sigma.0.iter().enumerate() {
        let inc = incidence(&cur, block)?;
        let is_trimmed = unions.iter().all(|&u: &VertexSet| !inc.union.is_subset(u));
        if is_trimmed {
            trimmed.push(i);
        }
        let next = eliminate(&cur, block)?;
        hypergraphs.push(cur);
        boundaries.push(inc.boundary);
        unions.push(inc.union);
        cur = next;
    }
    Ok(EliminationTrace {
        hypergraphs,
        boundaries,
        unions,
        trimmed,
    })
}

/// Streams every ordered set partition of `{0..k}` exactly once, first block
/// chosen in ascending bit-pattern order, so enumeration order is stable.
pub fn enumerate_gveos(k: usize) -> Result<impl Iterator<Item = Gveo>, HypergraphError> {
    if k == 0 || k > MAX_VERTICES {
        return Err(HypergraphError::VertexCount(k));
    }
    let full = VertexSet::full(k);
    let mut stack: Vec<(VertexSet, Vec<VertexSet>, Option<u16>)> =
        vec![(full, Vec::new(), Some(1))];
    Ok(std::iter::from_fn(move || loop {
        let (remaining, prefix, next_block) = stack.last_mut()?;
        if remaining.is_empty() {
            let done = Gveo(prefix.clone());
            stack.pop();
            return Some(done);
        }
        // next nonempty sub-bitmask of `remaining`, ascending
        let mask = remaining.0;
        let mut block = match *next_block {
            Some(b) => b,
            None => {
                stack.pop();
                continue;
            }
        };
        // advance to the next value whose bits lie inside the mask
        block = ((block.wrapping_sub(1)) | !mask).wrapping_add(1) & mask;
        if block == 0 {
            stack.pop();
            continue;
        }
        *next_block = block.checked_add(1);
        let rem = remaining.diff(VertexSet(block));
        let mut pfx = prefix.clone();
        pfx.push(VertexSet(block));
        stack.push((rem, pfx, Some(1)));
    }))
}

/// A tree decomposition: bags plus tree edges between bag indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    /// `tree_edges` do not form a tree over the bags
    NotATree,
    /// this edge fits in no bag
    EdgeNotCovered(VertexSet),
    /// the bags containing this vertex are not connected in the tree
    Disconnected(usize),
}

/// Checks edge cover and running intersection, reporting the first violated
/// property with a witness.
pub fn validate_td(h: &Hypergraph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let n = td.bags.len();
    if n == 0 {
        return Err(TdViolation::NotATree);
    }
    if td.tree_edges.len() != n - 1 {
        return Err(TdViolation::NotATree);
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &td.tree_edges {
        if a >= n || b >= n || a == b {
            return Err(TdViolation::NotATree);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    // connectivity (n-1 edges + connected = tree)
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(TdViolation::NotATree);
    }
    for e in h.edges() {
        if !td.bags.iter().any(|b| e.is_subset(*b)) {
            return Err(TdViolation::EdgeNotCovered(*e));
        }
    }
    for v in h.vertices().iter() {
        let holders: Vec<usize> = (0..n).filter(|&i| td.bags[i].contains(v)).collect();
        if holders.is_empty() {
            return Err(TdViolation::Disconnected(v));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![holders[0]];
        seen[holders[0]] = true;
        let mut reached = 1;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] && td.bags[u].contains(v) {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        if reached != holders.len() {
            return Err(TdViolation::Disconnected(v));
        }
    }
    Ok(())
}

/// Builds the tree decomposition induced by a single-vertex elimination
/// order: bags are the `U_i`, contained bags pruned, and bag `i` hangs off
/// the step that absorbs its neighbor edge.
pub fn td_from_veo(h: &Hypergraph, sigma: &Gveo) -> Result<TreeDecomposition, HypergraphError> {
    if !sigma.all_singletons() {
        return Err(HypergraphError::NotSingletons);
    }
    let trace = elimination_trace(h, sigma)?;
    let k = sigma.0.len();
    // parent[i] = first later step whose block meets N_i
    let mut parent: Vec<Option<usize>> = vec![None; k];
    for i in 0..k {
        let n_i = trace.unions[i].diff(sigma.0[i]);
        if n_i.is_empty() {
            continue;
        }
        parent[i] = (i + 1..k).find(|&j| sigma.0[j].overlaps(n_i));
    }
    // prune contained bags, remapping each pruned bag onto a container
    let mut keep: Vec<usize> = Vec::new();
    'outer: for i in 0..k {
        for j in 0..k {
            if j != i
                && trace.unions[i].is_subset(trace.unions[j])
                && (trace.unions[i] != trace.unions[j] || j < i)
            {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    let rep = |i: usize| -> usize {
        // the kept bag standing in for step i
        if let Ok(p) = keep.binary_search(&i) {
            return p;
        }
        let target = keep
            .iter()
            .position(|&j| trace.unions[i].is_subset(trace.unions[j]))
            .expect("pruned bag has a container");
        target
    };
    let bags: Vec<VertexSet> = keep.iter().map(|&i| trace.unions[i]).collect();
    let mut tree_edges = Vec::new();
    for i in 0..k {
        if let Some(p) = parent[i] {
            let (a, b) = (rep(i), rep(p));
            if a != b && !tree_edges.contains(&(a.min(b), a.max(b))) {
                tree_edges.push((a.min(b), a.max(b)));
            }
        }
    }
    // steps with empty neighbors start disjoint components; attach them
    let n = bags.len();
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    for &(a, b) in &tree_edges {
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        if ra != rb {
            dsu[ra] = rb;
        }
    }
    for i in 1..n {
        let (ra, rb) = (find(&mut dsu, 0), find(&mut dsu, i));
        if ra != rb {
            dsu[ra] = rb;
            tree_edges.push((0, i));
        }
    }
    Ok(TreeDecomposition { bags, tree_edges })
}
