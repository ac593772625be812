use std::fmt::Write as _;

use super::{content_lines, parse_num};
use crate::mask::{self, SubsetMask};
use crate::{Error, Result};

/// A directed or undirected graph with arc multiplicities. Vertices are
/// `0..n`; the vertex order is the index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    directed: bool,
    adj: Vec<u64>,
}

impl Multigraph {
    pub fn empty(n: usize, directed: bool) -> Self {
        Multigraph {
            n,
            directed,
            adj: vec![0; n * n],
        }
    }

    /// Undirected simple graph from 0-based edges.
    pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n, false);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Directed graph from 0-based arcs; repeated arcs accumulate.
    pub fn directed(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n, true);
        for &(u, v) in arcs {
            g.add_arc(u, v, 1)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Multiplicity of the arc `u -> v` (for undirected graphs, of the edge).
    #[inline]
    pub fn mult(&self, u: usize, v: usize) -> u64 {
        self.adj[u * self.n + v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.mult(u, v) > 0
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidParameters(format!(
                "vertex out of range in ({}, {})",
                u + 1,
                v + 1
            )));
        }
        if u == v {
            return Err(Error::InvalidParameters(format!("loop at vertex {}", u + 1)));
        }
        Ok(())
    }

    /// Adds an undirected edge; duplicates are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.directed {
            return Err(Error::InvalidParameters("add_edge on a directed graph".into()));
        }
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::InvalidParameters(format!("duplicate edge {{{}, {}}}", u + 1, v + 1)));
        }
        self.adj[u * self.n + v] = 1;
        self.adj[v * self.n + u] = 1;
        Ok(())
    }

    pub fn add_arc(&mut self, u: usize, v: usize, mult: u64) -> Result<()> {
        if !self.directed {
            return Err(Error::InvalidParameters("add_arc on an undirected graph".into()));
        }
        self.check_pair(u, v)?;
        self.adj[u * self.n + v] += mult;
        Ok(())
    }

    /// Sets the multiplicity of `u -> v` directly (directed graphs only).
    pub fn set_arc(&mut self, u: usize, v: usize, mult: u64) -> Result<()> {
        if !self.directed {
            return Err(Error::InvalidParameters("set_arc on an undirected graph".into()));
        }
        self.check_pair(u, v)?;
        self.adj[u * self.n + v] = mult;
        Ok(())
    }

    /// The directed graph with both orientations of every edge.
    pub fn to_directed(&self) -> Multigraph {
        Multigraph {
            n: self.n,
            directed: true,
            adj: self.adj.clone(),
        }
    }

    /// Neighbourhood of `v` as a mask (out-neighbours when directed).
    pub fn neighbors(&self, v: usize) -> SubsetMask {
        debug_assert!(self.n <= mask::MAX_UNIVERSE);
        (0..self.n)
            .filter(|&w| self.has_edge(v, w))
            .fold(0, |m, w| m | (1u64 << w))
    }

    pub fn neighbor_masks(&self) -> Vec<SubsetMask> {
        (0..self.n).map(|v| self.neighbors(v)).collect()
    }

    pub fn degree(&self, v: usize) -> u64 {
        (0..self.n).map(|w| self.mult(v, w)).sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        (0..self.n).map(|u| self.mult(u, v)).sum()
    }

    pub fn max_degree(&self) -> u64 {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<u64> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Edges `u < v` (undirected) or arcs `(u, v, mult)` in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                let m = self.mult(u, v);
                if m > 0 && (self.directed || u < v) {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    /// Whether `set` is independent (no edge in either direction inside it).
    pub fn is_independent(&self, set: SubsetMask) -> bool {
        mask::elements(set).all(|v| self.neighbors(v) & set == 0)
    }

    /// Whether `colors` is a proper coloring.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n && self.edges().iter().all(|&(u, v, _)| colors[u] != colors[v])
    }

    pub fn parse(text: &str, directed: bool) -> Result<Self> {
        let mut lines = content_lines(text);
        let Some((hl, header)) = lines.next() else {
            return Err(Error::parse(1, "empty input"));
        };
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(hl, "expected header 'n m'"));
        }
        let n: usize = parse_num(toks[0], hl, "vertex count")?;
        let m: usize = parse_num(toks[1], hl, "edge count")?;
        let mut g = Multigraph::empty(n, directed);
        let mut seen = 0;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 2 || toks.len() > 3 {
                return Err(Error::parse(ln, "expected 'u v [multiplicity]'"));
            }
            let u: usize = parse_num(toks[0], ln, "vertex")?;
            let v: usize = parse_num(toks[1], ln, "vertex")?;
            let mult: u64 = match toks.get(2) {
                Some(t) => parse_num(t, ln, "multiplicity")?,
                None => 1,
            };
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::parse(ln, format!("vertex out of range 1..{n}")));
            }
            if u == v {
                return Err(Error::parse(ln, format!("loop at vertex {u}")));
            }
            let r = if directed {
                g.add_arc(u - 1, v - 1, mult)
            } else if mult != 1 {
                Err(Error::InvalidParameters("undirected multiplicity must be 1".into()))
            } else {
                g.add_edge(u - 1, v - 1)
            };
            r.map_err(|e| Error::parse(ln, e.to_string()))?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::parse(hl, format!("header declares {m} edges, found {seen}")));
        }
        Ok(g)
    }

    pub fn render(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v, m) in edges {
            if m == 1 {
                let _ = writeln!(s, "{} {}", u + 1, v + 1);
            } else {
                let _ = writeln!(s, "{} {} {}", u + 1, v + 1, m);
            }
        }
        s
    }

    /// The cycle `0 - 1 - .. - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::undirected(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n, false);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::undirected(10, &edges).unwrap()
    }
}
