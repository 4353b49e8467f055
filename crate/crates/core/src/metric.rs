//! Convexity on finite metric spaces.
//!
//! A segment `[x, y]` is the set of points `z` with `d(x,z) + d(z,y) = d(x,y)`,
//! a set is convex when it contains the segment between any two of its
//! points, and the hull of `S` is obtained by repeatedly adjoining segments
//! until nothing changes. On graphs this can behave badly: segments need not
//! be convex (see [`k32_fixture`]).

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A finite set of points with an exact rational distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<Vec<Rational64>>,
}

/// A subset of the points of a [`FiniteMetricSpace`], stored by index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    members: BTreeSet<usize>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.members.contains(&p)
    }

    pub fn insert(&mut self, p: usize) -> bool {
        self.members.insert(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self { members: iter.into_iter().collect() }
    }
}

impl FiniteMetricSpace {
    /// Builds a space from labels and a full distance matrix, validating the
    /// metric axioms (including every triangle inequality).
    pub fn from_matrix(labels: Vec<String>, dist: Vec<Vec<Rational64>>) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMetric(format!("distance matrix is not {n}x{n}")));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Duplicate(label.clone()));
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::InvalidMetric(format!("d({0},{0}) != 0", labels[i])));
            }
            for j in 0..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::InvalidMetric(format!(
                        "d({},{}) is not symmetric",
                        labels[i], labels[j]
                    )));
                }
                if i != j && dist[i][j] <= Rational64::zero() {
                    return Err(Error::InvalidMetric(format!(
                        "d({},{}) must be positive",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > dist[i][j] + dist[j][k] {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, index, dist })
    }

    /// Builds a space from arbitrary points and a distance function.
    pub fn from_points<P, F>(labels: Vec<String>, points: &[P], mut distance: F) -> Result<Self>
    where
        F: FnMut(&P, &P) -> Rational64,
    {
        let dist = points
            .iter()
            .map(|a| points.iter().map(|b| distance(a, b)).collect())
            .collect();
        Self::from_matrix(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn distance(&self, a: usize, b: usize) -> Rational64 {
        self.dist[a][b]
    }

    /// Looks up labels and returns the corresponding point set.
    pub fn point_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn whole(&self) -> PointSet {
        (0..self.len()).collect()
    }

    fn check_index(&self, p: usize) -> Result<()> {
        if p < self.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange(p))
        }
    }

    fn check_set(&self, set: &PointSet) -> Result<()> {
        set.iter().try_for_each(|p| self.check_index(p))
    }

    /// `[x, y] = { z | d(x,z) + d(z,y) = d(x,y) }`.
    pub fn segment(&self, x: usize, y: usize) -> Result<PointSet> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.segment_unchecked(x, y))
    }

    fn segment_unchecked(&self, x: usize, y: usize) -> PointSet {
        let target = self.dist[x][y];
        (0..self.len())
            .filter(|&z| self.dist[x][z] + self.dist[z][y] == target)
            .collect()
    }

    pub fn is_convex(&self, set: &PointSet) -> Result<bool> {
        self.check_set(set)?;
        let members: Vec<usize> = set.iter().collect();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if !self.segment_unchecked(x, y).is_subset(set) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// One saturation step: the union of all segments between members.
    pub fn saturate_once(&self, set: &PointSet) -> Result<PointSet> {
        self.check_set(set)?;
        let members: Vec<usize> = set.iter().collect();
        let mut out = set.clone();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                for z in self.segment_unchecked(x, y).iter() {
                    out.insert(z);
                }
            }
        }
        Ok(out)
    }

    /// Least convex superset of `set` by fixpoint saturation, together with
    /// the number of rounds needed before the set stopped growing.
    ///
    /// The empty set is its own hull (depth 0).
    pub fn hull_fixpoint(&self, set: &PointSet) -> Result<(PointSet, usize)> {
        self.check_set(set)?;
        let mut current = set.clone();
        for depth in 0..=self.len() {
            let next = self.saturate_once(&current)?;
            if next == current {
                return Ok((current, depth));
            }
            current = next;
        }
        // Each round adds at least one point, so at most |E| rounds are possible.
        Err(Error::InvalidMetric("hull saturation did not stabilise".into()))
    }
}

/// Parses a graph edge list: one `u v` pair per line, `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Vec<(String, String)>> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [u, v] => edges.push((u.to_string(), v.to_string())),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected `u v`, got `{line}`"),
                })
            }
        }
    }
    Ok(edges)
}

/// Shortest-path metric of an unweighted, connected, simple graph. Points are
/// labelled in order of first appearance in the edge list.
pub fn load_graph_metric<S: AsRef<str>>(edges: &[(S, S)]) -> Result<FiniteMetricSpace> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |name: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            labels.push(name.to_string());
            labels.len() - 1
        })
    };
    let mut pairs = Vec::with_capacity(edges.len());
    for (u, v) in edges {
        let (u, v) = (u.as_ref(), v.as_ref());
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at `{u}`")));
        }
        let a = intern(u, &mut labels);
        let b = intern(v, &mut labels);
        pairs.push((a, b));
    }
    if labels.is_empty() {
        return Err(Error::InvalidGraph("no edges".into()));
    }
    let n = labels.len();
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in &pairs {
        if !adjacency[a].insert(b) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge `{} {}`",
                labels[a], labels[b]
            )));
        }
        adjacency[b].insert(a);
    }

    let mut dist = vec![vec![Rational64::zero(); n]; n];
    for source in 0..n {
        let mut seen = vec![None; n];
        seen[source] = Some(0i64);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = seen[u].unwrap_or_default();
            for &v in &adjacency[u] {
                if seen[v].is_none() {
                    seen[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        for (target, d) in seen.into_iter().enumerate() {
            match d {
                Some(d) => dist[source][target] = Rational64::from_integer(d),
                None => {
                    return Err(Error::InvalidGraph(format!(
                        "graph is disconnected (`{}` cannot reach `{}`)",
                        labels[source], labels[target]
                    )))
                }
            }
        }
    }
    FiniteMetricSpace::from_matrix(labels, dist)
}

/// Edge list of the complete bipartite graph with parts `{x, y, center}` and
/// `{top, bottom}`. Here `[x, y]` misses `center`, but the hull does not.
pub fn k32_fixture() -> Vec<(&'static str, &'static str)> {
    vec![
        ("x", "top"),
        ("top", "y"),
        ("y", "bottom"),
        ("bottom", "x"),
        ("top", "center"),
        ("center", "bottom"),
    ]
}
