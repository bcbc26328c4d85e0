//! Hearts between H_Q[-1] and H_Q, recorded by signed c-vectors, and their simple tilts.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::coxeter::{CartanData, Root, Word};
use crate::error::{Error, Result};
use crate::quiver::{FramedSeed, Quiver, Vertex};

/// Exploration depth for quivers whose exchange graph is infinite.
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Shift {
    Zero,
    MinusOne,
}

impl From<Shift> for i8 {
    fn from(s: Shift) -> i8 {
        match s {
            Shift::Zero => 0,
            Shift::MinusOne => -1,
        }
    }
}

impl TryFrom<i8> for Shift {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Shift::Zero),
            -1 => Ok(Shift::MinusOne),
            _ => Err(format!("shift must be 0 or -1, got {v}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedSimple {
    pub root: Root,
    pub shift: Shift,
}

impl SignedSimple {
    pub fn signed_vector(&self) -> Vec<i64> {
        match self.shift {
            Shift::Zero => self.root.clone(),
            Shift::MinusOne => self.root.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_red(&self) -> bool {
        self.shift == Shift::MinusOne
    }
}

/// Shifted simples carry a hat: `^(1,1,0)`.
impl fmt::Display for SignedSimple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.root.iter().map(i64::to_string).collect();
        let hat = if self.is_red() { "^" } else { "" };
        write!(f, "{hat}({})", body.join(","))
    }
}

/// Simples indexed by inherited vertex label, together with the seed realizing them.
#[derive(Clone, Debug, Serialize)]
pub struct Heart {
    pub simples: Vec<SignedSimple>,
    #[serde(skip)]
    pub seed: FramedSeed,
}

impl PartialEq for Heart {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}

impl Eq for Heart {}

impl fmt::Display for Heart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simples.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Heart {
    pub fn from_seed(seed: &FramedSeed) -> Result<Heart> {
        let simples = (1..=seed.n())
            .map(|j| {
                let col = seed.c_vector(j);
                if seed.is_green(j) {
                    Ok(SignedSimple { root: col, shift: Shift::Zero })
                } else if seed.is_red(j) {
                    Ok(SignedSimple { root: col.iter().map(|x| -x).collect(), shift: Shift::MinusOne })
                } else {
                    Err(Error::Invariant(format!("c-vector of vertex {j} is not sign-coherent: {col:?}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Heart { simples, seed: seed.clone() })
    }

    pub fn initial(q: &Quiver) -> Heart {
        Heart::from_seed(&FramedSeed::new(q)).expect("identity c-matrix")
    }

    /// Sorted signed vectors; determines the heart.
    pub fn key(&self) -> Vec<Vec<i64>> {
        let mut k: Vec<Vec<i64>> = self.simples.iter().map(SignedSimple::signed_vector).collect();
        k.sort();
        k
    }

    pub fn simple(&self, j: Vertex) -> &SignedSimple {
        &self.simples[j - 1]
    }

    pub fn red_vertices(&self) -> Vec<Vertex> {
        (1..=self.simples.len()).filter(|&j| self.simple(j).is_red()).collect()
    }

    pub fn green_vertices(&self) -> Vec<Vertex> {
        (1..=self.simples.len()).filter(|&j| !self.simple(j).is_red()).collect()
    }

    pub fn is_terminal(&self) -> bool {
        self.simples.iter().all(SignedSimple::is_red)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltStep {
    pub vertex: Vertex,
    /// Root of the green simple tilted at this step.
    pub root: Root,
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltPath {
    pub steps: Vec<TiltStep>,
    pub hearts: Vec<Heart>,
}

impl TiltPath {
    pub fn last(&self) -> &Heart {
        self.hearts.last().expect("a path holds at least the initial heart")
    }

    /// Tilt-object roots, the support of P(s).
    pub fn support(&self) -> BTreeSet<Root> {
        self.steps.iter().map(|s| s.root.clone()).collect()
    }
}

/// Hearts along the simple tilts of a green sequence.
pub fn heart_of_sequence(q: &Quiver, s: &[Vertex]) -> Result<TiltPath> {
    q.topological_order()?;
    let mut seed = FramedSeed::new(q);
    let mut hearts = vec![Heart::from_seed(&seed)?];
    let mut steps = Vec::with_capacity(s.len());
    for (idx, &k) in s.iter().enumerate() {
        q.check_vertex(k)?;
        if !seed.is_green(k) {
            return Err(Error::NotGreenAt { index: idx + 1, vertex: k });
        }
        steps.push(TiltStep { vertex: k, root: seed.c_vector(k) });
        seed = seed.mutate(k)?;
        hearts.push(Heart::from_seed(&seed)?);
    }
    Ok(TiltPath { steps, hearts })
}

/// Support of P(s) for a green sequence.
pub fn path_support(q: &Quiver, s: &[Vertex]) -> Result<BTreeSet<Root>> {
    Ok(heart_of_sequence(q, s)?.support())
}

/// Indecomposables of the torsion class of a c-sortable word.
pub fn torsion_class_sortable(q: &Quiver, c: &[Vertex], w: &Word) -> Result<BTreeSet<Root>> {
    let cd = CartanData::new(q)?;
    if cd.is_c_sortable(w, c)?.is_none() {
        return Err(Error::NotSortable);
    }
    let t = path_support(q, &w.0)?;
    if t.len() != w.0.len() {
        return Err(Error::Invariant(format!("torsion class of {w} has {} objects", t.len())));
    }
    Ok(t)
}

/// Roots of the red simples of H_s, i.e. the simples of its wide subcategory.
pub fn wide_simples(q: &Quiver, s: &[Vertex]) -> Result<BTreeSet<Root>> {
    let path = heart_of_sequence(q, s)?;
    Ok(path.last().simples.iter().filter(|x| x.is_red()).map(|x| x.root.clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub vertex: Vertex,
    pub tilt_root: Root,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeGraph {
    pub hearts: Vec<Heart>,
    pub edges: Vec<Edge>,
    /// Set when the depth limit cut off unexplored tilts.
    pub truncated: bool,
    /// BFS depth of each heart.
    #[serde(skip)]
    pub depth: Vec<usize>,
}

/// BFS over green mutations from H_Q. `None` explores everything for Dynkin quivers and
/// stops at `DEFAULT_DEPTH` otherwise.
pub fn exchange_graph(q: &Quiver, depth_limit: Option<usize>) -> Result<ExchangeGraph> {
    let cd = CartanData::new(q)?;
    let limit = match depth_limit {
        Some(d) => d,
        None if cd.is_finite_type() => usize::MAX,
        None => DEFAULT_DEPTH,
    };
    let start = Heart::initial(q);
    let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::from([(start.key(), 0)]);
    let mut g = ExchangeGraph { hearts: vec![start], edges: vec![], truncated: false, depth: vec![0] };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let greens = g.hearts[i].green_vertices();
        if g.depth[i] >= limit {
            g.truncated |= !greens.is_empty();
            continue;
        }
        for k in greens {
            let seed = &g.hearts[i].seed;
            let tilt_root = seed.c_vector(k);
            let next = Heart::from_seed(&seed.mutate(k)?)?;
            let key = next.key();
            let to = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = g.hearts.len();
                    index.insert(key, t);
                    g.hearts.push(next);
                    g.depth.push(g.depth[i] + 1);
                    queue.push_back(t);
                    t
                }
            };
            g.edges.push(Edge { from: i, to, vertex: k, tilt_root });
        }
    }
    Ok(g)
}

impl ExchangeGraph {
    pub fn find(&self, h: &Heart) -> Option<usize> {
        let k = h.key();
        self.hearts.iter().position(|x| x.key() == k)
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.from == i).count()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.to == i).count()
    }

    /// Kahn order; `None` if the oriented graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.hearts.len();
        let mut indeg: Vec<usize> = (0..n).map(|i| self.in_degree(i)).collect();
        let mut ready: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_front() {
            order.push(v);
            for e in self.edges.iter().filter(|e| e.from == v) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    ready.push_back(e.to);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Longest directed path length from heart 0 to every heart.
    pub fn longest_from_source(&self) -> Option<Vec<Option<usize>>> {
        let order = self.topological_order()?;
        let mut best: Vec<Option<usize>> = vec![None; self.hearts.len()];
        best[0] = Some(0);
        for v in order {
            let Some(d) = best[v] else { continue };
            for e in self.edges.iter().filter(|e| e.from == v) {
                best[e.to] = Some(best[e.to].map_or(d + 1, |b| b.max(d + 1)));
            }
        }
        Some(best)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "hearts": self.hearts, "edges": self.edges, "truncated": self.truncated })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph exchange {\n  node [shape=box];\n");
        for (i, h) in self.hearts.iter().enumerate() {
            let _ = writeln!(s, "  h{i} [label=\"{h}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  h{} -> h{} [label=\"{}\"];", e.from, e.to, e.vertex);
        }
        s.push_str("}\n");
        s
    }
}

/// Every green sequence ending at the all-red seed. For non-Dynkin quivers only
/// sequences of length ≤ `depth_limit` (default `DEFAULT_DEPTH`) are searched.
pub fn enumerate_maximal_green(q: &Quiver, depth_limit: Option<usize>) -> Result<Vec<Vec<Vertex>>> {
    let cd = CartanData::new(q)?;
    let limit = match depth_limit {
        Some(d) => d,
        None if cd.is_finite_type() => usize::MAX,
        None => DEFAULT_DEPTH,
    };
    let mut out = Vec::new();
    let mut seq = Vec::new();
    dfs_maximal(&FramedSeed::new(q), limit, &mut seq, &mut out)?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn dfs_maximal(seed: &FramedSeed, limit: usize, seq: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) -> Result<()> {
    let greens = seed.green_vertices();
    if greens.is_empty() {
        if seed.is_maximal_green()? {
            out.push(seq.clone());
        }
        return Ok(());
    }
    if seq.len() >= limit {
        return Ok(());
    }
    for k in greens {
        seq.push(k);
        dfs_maximal(&seed.mutate(k)?, limit, seq, out)?;
        seq.pop();
    }
    Ok(())
}

/// l(w) equals the longest directed path from H_Q to H_w.
pub fn longest_path_check(q: &Quiver, c: &[Vertex], w: &Word) -> Result<bool> {
    let cd = CartanData::new(q)?;
    if !cd.is_finite_type() {
        return Err(Error::NonDynkin);
    }
    if cd.is_c_sortable(w, c)?.is_none() {
        return Err(Error::NotSortable);
    }
    let g = exchange_graph(q, None)?;
    let target = heart_of_sequence(q, &w.0)?;
    let idx = g.find(target.last()).ok_or_else(|| Error::Invariant("heart missing from exchange graph".into()))?;
    let longest = g.longest_from_source().ok_or_else(|| Error::Invariant("exchange graph has a cycle".into()))?;
    Ok(longest[idx] == Some(w.0.len()))
}
