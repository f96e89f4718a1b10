//! Undirected interaction graphs.
//!
//! Vertices are `0..n`; edges are unordered pairs kept sorted and deduplicated,
//! so two graphs compare equal exactly when they have the same vertex count and
//! edge set. The family tag records how a graph was built and selects the
//! matching sampler and closed forms downstream, but does not enter equality:
//! a 3-cycle built as a periodic chain equals the complete graph on 3 vertices.

use crate::error::{Error, Result};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

/// Structural family of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    /// No edges; spins are independent.
    Empty,
    /// Path 0-1-...-(n-1), free boundary.
    Chain,
    /// Cycle: the chain plus the wrap-around edge (n-1, 0).
    ChainPbc,
    /// Every unordered pair.
    Complete,
    /// Arbitrary edge list.
    Custom,
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphFamily::Empty => "empty",
            GraphFamily::Chain => "chain",
            GraphFamily::ChainPbc => "chain-pbc",
            GraphFamily::Complete => "complete",
            GraphFamily::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl FromStr for GraphFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "empty" => Ok(GraphFamily::Empty),
            "chain" => Ok(GraphFamily::Chain),
            "chain-pbc" => Ok(GraphFamily::ChainPbc),
            "complete" => Ok(GraphFamily::Complete),
            "custom" => Ok(GraphFamily::Custom),
            other => Err(format!(
                "unknown graph family '{other}' (expected empty|chain|chain-pbc|complete|custom)"
            )),
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Complete graphs defer materializing their `n(n-1)/2` pairs until a caller
/// actually asks for [`Graph::edges`] or [`Graph::neighbors`]; the mean-field
/// routines work from counts alone, which keeps complete graphs on thousands
/// of vertices cheap. Adjacency lists are likewise built on first use.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    family: GraphFamily,
    edges: OnceLock<Vec<(usize, usize)>>,
    adjacency: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges() == other.edges()
    }
}

impl Graph {
    /// Builds a named family on `n` vertices.
    ///
    /// Chains (both boundary conditions) need `n >= 3`; the other families
    /// need `n >= 1`. `Custom` cannot be built this way — it comes from
    /// [`Graph::from_edge_list`].
    pub fn build(family: GraphFamily, n: usize) -> Result<Graph> {
        let min = match family {
            GraphFamily::Chain | GraphFamily::ChainPbc => 3,
            GraphFamily::Custom => return Err(Error::CustomNeedsEdgeList),
            _ => 1,
        };
        if n < min {
            return Err(Error::TooFewVertices { family, n, min });
        }
        let edges: Option<Vec<(usize, usize)>> = match family {
            GraphFamily::Empty => Some(Vec::new()),
            GraphFamily::Chain => Some((0..n - 1).map(|i| (i, i + 1)).collect()),
            GraphFamily::ChainPbc => {
                let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
                e.push((0, n - 1));
                e.sort_unstable();
                Some(e)
            }
            GraphFamily::Complete => None, // materialized lazily by edges()
            GraphFamily::Custom => unreachable!(),
        };
        Ok(Graph::assemble(n, edges, family))
    }

    /// Builds a custom graph from an explicit edge list.
    ///
    /// Pairs are canonicalized to `(min, max)` and deduplicated; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        if n < 1 {
            return Err(Error::TooFewVertices {
                family: GraphFamily::Custom,
                n,
                min: 1,
            });
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            if i == j {
                return Err(Error::SelfLoop { v: i });
            }
            if i >= n || j >= n {
                return Err(Error::EdgeOutOfRange { i, j, n });
            }
            edges.push((i.min(j), i.max(j)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph::assemble(n, Some(edges), GraphFamily::Custom))
    }

    /// Parses the plain-text edge-list format: the first non-comment line is
    /// the vertex count, each following line one `i j` pair. Anything after a
    /// `#` is a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            match n {
                None => {
                    let head = fields.next().expect("non-empty line");
                    if fields.next().is_some() {
                        return Err(Error::GraphParse {
                            line,
                            reason: "expected a single vertex count on the first line".into(),
                        });
                    }
                    n = Some(head.parse().map_err(|_| Error::GraphParse {
                        line,
                        reason: format!("invalid vertex count '{head}'"),
                    })?);
                }
                Some(_) => {
                    let parse = |tok: Option<&str>| -> Result<usize> {
                        let tok = tok.ok_or_else(|| Error::GraphParse {
                            line,
                            reason: "expected 'i j'".into(),
                        })?;
                        tok.parse().map_err(|_| Error::GraphParse {
                            line,
                            reason: format!("invalid vertex '{tok}'"),
                        })
                    };
                    let i = parse(fields.next())?;
                    let j = parse(fields.next())?;
                    if fields.next().is_some() {
                        return Err(Error::GraphParse {
                            line,
                            reason: "expected exactly two vertices per edge line".into(),
                        });
                    }
                    pairs.push((i, j));
                }
            }
        }
        let n = n.ok_or(Error::GraphParse {
            line: 0,
            reason: "empty graph file".into(),
        })?;
        Graph::from_edge_list(n, &pairs)
    }

    /// Reads a graph from a file in the [`Graph::parse`] format.
    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Graph> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
        Graph::parse(&text)
    }

    fn assemble(n: usize, edges: Option<Vec<(usize, usize)>>, family: GraphFamily) -> Graph {
        let cell = OnceLock::new();
        if let Some(e) = edges {
            cell.set(e).expect("fresh cell");
        }
        Graph {
            n,
            family,
            edges: cell,
            adjacency: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, deduplicated `(i, j)` pairs with `i < j`. For complete graphs
    /// the list is materialized on first call (O(n^2) memory).
    pub fn edges(&self) -> &[(usize, usize)] {
        self.edges.get_or_init(|| {
            let mut e = Vec::with_capacity(self.n * (self.n - 1) / 2);
            for i in 0..self.n {
                for j in i + 1..self.n {
                    e.push((i, j));
                }
            }
            e
        })
    }

    pub fn edge_count(&self) -> usize {
        match self.edges.get() {
            Some(e) => e.len(),
            None => self.n * (self.n - 1) / 2,
        }
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    /// Neighbor list of `v`; adjacency is built on first call.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        let adjacency = self.adjacency.get_or_init(|| {
            let mut adjacency = vec![Vec::new(); self.n];
            for &(i, j) in self.edges() {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
            adjacency
        });
        &adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        if self.family == GraphFamily::Complete {
            assert!(
                v < self.n,
                "vertex {v} out of range for {} vertices",
                self.n
            );
            return self.n - 1;
        }
        self.neighbors(v).len()
    }
}
