//! Hypergraphs, their statistics and the concurrence predictions for
//! excitation states.
//!
//! Vertices are `0..n` internally. The text format and the CLI label them
//! `1..=n`.

use crate::algebra::combinations;
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut clean = Vec::with_capacity(edges.len());
        for e in edges {
            let set: BTreeSet<usize> = e.iter().copied().collect();
            if set.is_empty() || set.len() != e.len() {
                return Err(Error::Invalid(format!("edge {e:?} is empty or repeats a vertex")));
            }
            if let Some(&v) = set.iter().next_back().filter(|&&v| v >= n) {
                return Err(Error::Invalid(format!("vertex {v} out of range for {n} vertices")));
            }
            let sorted: Vec<usize> = set.into_iter().collect();
            if !seen.insert(sorted.clone()) {
                return Err(Error::Invalid(format!("edge {sorted:?} listed twice")));
            }
            clean.push(sorted);
        }
        Ok(Hypergraph { n, edges: clean })
    }

    /// Graph from (u, v) pairs.
    pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Common edge size, if all edges agree.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == k).then_some(k)
    }

    pub fn is_graph(&self) -> bool {
        self.uniformity() == Some(2)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::Invalid(format!("vertex {v} out of range for {} vertices", self.n)));
        }
        Ok(())
    }

    fn check_pair(&self, v: usize, w: usize) -> Result<()> {
        self.check(v)?;
        self.check(w)?;
        if v == w {
            return Err(Error::Invalid("pairwise statistic needs two distinct vertices".into()));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(&v)).count())
    }

    pub fn section(&self, v: usize, w: usize) -> Result<usize> {
        self.check_pair(v, w)?;
        Ok(self.edges.iter().filter(|e| e.contains(&v) && e.contains(&w)).count())
    }

    /// Number of sets W with W+{v} and W+{w} both edges (v, w not in W).
    pub fn joint_neighborhood(&self, v: usize, w: usize) -> Result<usize> {
        self.check_pair(v, w)?;
        let set: HashSet<&Vec<usize>> = self.edges.iter().collect();
        let mut count = 0;
        for e in &self.edges {
            if e.contains(&v) && !e.contains(&w) {
                let mut other: Vec<usize> = e.iter().copied().filter(|&u| u != v).collect();
                other.push(w);
                other.sort_unstable();
                if set.contains(&other) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Vertices sharing an edge with `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for e in self.edges.iter().filter(|e| e.contains(&v)) {
            out.extend(e.iter().copied().filter(|&u| u != v));
        }
        out.into_iter().collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v)).collect()
    }

    /// Path length in the vertex adjacency (two vertices adjacent when they
    /// share an edge); `None` when disconnected.
    pub fn distance(&self, v: usize, w: usize) -> Result<Option<usize>> {
        self.check(v)?;
        self.check(w)?;
        Ok(bfs(&self.adjacency(), v)[w])
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || bfs(&self.adjacency(), 0).iter().all(|d| d.is_some())
    }

    pub fn is_regular(&self) -> bool {
        let degs: Vec<usize> = (0..self.n).map(|v| self.degree(v).unwrap()).collect();
        degs.windows(2).all(|w| w[0] == w[1])
    }

    /// Restriction of the edges to a vertex subset (edges meeting the
    /// subset, intersected with it).
    pub fn restrict(&self, part: &[usize]) -> BTreeSet<Vec<usize>> {
        self.edges
            .iter()
            .map(|e| e.iter().copied().filter(|u| part.contains(u)).collect::<Vec<_>>())
            .filter(|e| !e.is_empty())
            .collect()
    }

    /// Relabels vertex v as perm[v].
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Invalid("relabeling has wrong length".into()));
        }
        Self::new(self.n, self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or(Error::Parse("empty hypergraph file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for l in lines {
            let e: Vec<usize> = l
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad vertex label `{t}`"))),
                })
                .collect::<Result<_>>()?;
            edges.push(e);
        }
        Self::new(n, edges)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

fn bfs(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &x in &adj[u] {
            if dist[x].is_none() {
                dist[x] = Some(du + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

/// C_vw = max{0, (2/|E|)(n_vw - sqrt(s_vw * lambda))} with
/// lambda = |E| - d_v - d_w + s_vw.
pub fn predicted_concurrence(g: &Hypergraph, v: usize, w: usize) -> Result<f64> {
    g.uniformity().ok_or(Error::NonUniform)?;
    let e = g.n_edges() as f64;
    let s = g.section(v, w)? as f64;
    let nvw = g.joint_neighborhood(v, w)? as f64;
    let lambda = e - g.degree(v)? as f64 - g.degree(w)? as f64 + s;
    Ok((2.0 / e * (nvw - (s * lambda).sqrt())).max(0.0))
}

/// The distance-based formula for connected, distance-1 regular graphs.
pub fn predicted_regular_concurrence(g: &Hypergraph, v: usize, w: usize) -> Result<f64> {
    g.uniformity().ok_or(Error::NonUniform)?;
    if !g.is_connected() {
        return Err(Error::NotRegular("hypergraph is disconnected".into()));
    }
    if !g.is_regular() {
        return Err(Error::NotRegular("vertex degrees differ".into()));
    }
    let mut s_adj: Option<usize> = None;
    for a in 0..g.n {
        for b in g.neighbors(a) {
            let s = g.section(a, b)?;
            if *s_adj.get_or_insert(s) != s {
                return Err(Error::NotRegular("sections of adjacent pairs differ".into()));
            }
        }
    }
    let e = g.n_edges() as f64;
    let d = g.degree(v)? as f64;
    let nvw = g.joint_neighborhood(v, w)? as f64;
    Ok(match g.distance(v, w)? {
        Some(1) => {
            let s = s_adj.unwrap_or(0) as f64;
            let cc = nvw - (s * (e - 2.0 * d + s)).sqrt();
            2.0 / e * cc.max(0.0)
        }
        Some(2) => 2.0 / e * nvw,
        _ => 0.0,
    })
}

/// C_{v|rest} = 2 sqrt(d_v (|E| - d_v)) / |E|.
pub fn predicted_generalized_concurrence(g: &Hypergraph, v: usize) -> Result<f64> {
    let e = g.n_edges() as f64;
    if e == 0.0 {
        return Err(Error::Invalid("hypergraph has no edges".into()));
    }
    let d = g.degree(v)? as f64;
    Ok(2.0 * (d * (e - d)).sqrt() / e)
}

/// Gamma_v from the predicted pairwise and generalized concurrences.
pub fn predicted_ratio(g: &Hypergraph, v: usize) -> Result<f64> {
    let total = predicted_generalized_concurrence(g, v)?.powi(2);
    if total == 0.0 {
        return Err(Error::Degenerate(format!("vertex {v} is not entangled with the rest")));
    }
    let mut pair = 0.0;
    for w in (0..g.n).filter(|&w| w != v) {
        pair += predicted_concurrence(g, v, w)?.powi(2);
    }
    Ok(pair / total)
}

/// E equals { e1 + e2 : e1 in E|V1, e2 in E|V2 }.
pub fn is_product_hypergraph(g: &Hypergraph, part: (&[usize], &[usize])) -> Result<bool> {
    let (a, b) = part;
    let mut cover: Vec<usize> = a.iter().chain(b).copied().collect();
    cover.sort_unstable();
    let expected: Vec<usize> = (0..g.n).collect();
    if a.is_empty() || b.is_empty() || cover != expected {
        return Err(Error::Invalid("partition must split the vertices into two nonempty disjoint parts".into()));
    }
    Ok(product_check(g, a, b))
}

fn product_check(g: &Hypergraph, a: &[usize], b: &[usize]) -> bool {
    // an edge inside one part projects to the empty set on the other, which
    // is encoded by the excitation state as the all-zero pattern
    let project = |part: &[usize]| -> BTreeSet<Vec<usize>> {
        g.edges.iter().map(|e| e.iter().copied().filter(|u| part.contains(u)).collect::<Vec<_>>()).collect()
    };
    let ea = project(a);
    let eb = project(b);
    if ea.len() * eb.len() != g.n_edges() {
        return false;
    }
    let edges: HashSet<&Vec<usize>> = g.edges.iter().collect();
    ea.iter().all(|x| {
        eb.iter().all(|y| {
            let mut u: Vec<usize> = x.iter().chain(y).copied().collect();
            u.sort_unstable();
            edges.contains(&u)
        })
    })
}

/// A bipartition (V1 containing vertex 0, V2) across which g is a product,
/// or `None`.
pub fn factorize(g: &Hypergraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n;
    if n < 2 {
        return None;
    }
    // vertices that never appear are product factors on their own
    for v in 0..n {
        if g.degree(v).ok()? == 0 {
            let a = vec![v];
            let b: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            return Some(order_parts(a, b));
        }
    }
    // components of the co-occurrence graph are separable from each other
    let adj = g.adjacency();
    let comp = bfs(&adj, 0);
    if comp.iter().any(|d| d.is_none()) {
        let a: Vec<usize> = (0..n).filter(|&v| comp[v].is_some()).collect();
        let b: Vec<usize> = (0..n).filter(|&v| comp[v].is_none()).collect();
        if product_check(g, &a, &b) {
            return Some(order_parts(a, b));
        }
    }
    if n > 20 {
        return None;
    }
    // brute force over bipartitions with vertex 0 in V1
    let rest: Vec<usize> = (1..n).collect();
    for size in 0..n - 1 {
        for pick in combinations(rest.len(), size) {
            let mut a = vec![0];
            a.extend(pick.iter().map(|&i| rest[i]));
            let b: Vec<usize> = (0..n).filter(|v| !a.contains(v)).collect();
            if product_check(g, &a, &b) {
                return Some((a, b));
            }
        }
    }
    None
}

fn order_parts(a: Vec<usize>, b: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    if a.contains(&0) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Named hypergraph families.
pub mod family {
    use super::*;

    pub fn complete(n: usize, k: usize) -> Result<Hypergraph> {
        if k == 0 || k > n {
            return Err(Error::Invalid(format!("need 1 <= k <= N, got k = {k}, N = {n}")));
        }
        Hypergraph::new(n, combinations(n, k))
    }

    pub fn cycle(n: usize) -> Result<Hypergraph> {
        if n < 3 {
            return Err(Error::Invalid("cycle needs at least 3 vertices".into()));
        }
        Hypergraph::new(n, (0..n).map(|v| vec![v, (v + 1) % n]).collect())
    }

    pub fn path(n: usize) -> Result<Hypergraph> {
        if n < 2 {
            return Err(Error::Invalid("path needs at least 2 vertices".into()));
        }
        Hypergraph::new(n, (0..n - 1).map(|v| vec![v, v + 1]).collect())
    }

    pub fn complete_bipartite(n1: usize, n2: usize) -> Result<Hypergraph> {
        let mut edges = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                edges.push(vec![a, n1 + b]);
            }
        }
        Hypergraph::new(n1 + n2, edges)
    }

    /// k-vertex faces of the hypercube {0,1}^m: vertex v is the integer
    /// with binary digits of the coordinates; only k = 2 (edges) and
    /// k = 2^j (j-dimensional faces) are meaningful.
    pub fn hypercube(m: usize, k: usize) -> Result<Hypergraph> {
        if m == 0 || m > 10 || !k.is_power_of_two() || k < 2 || k > 1 << m {
            return Err(Error::Invalid(format!("hypercube needs 1 <= m <= 10 and k = 2^j <= 2^m, got m = {m}, k = {k}")));
        }
        let j = k.trailing_zeros() as usize;
        let mut edges = Vec::new();
        for free in combinations(m, j) {
            let fixed: Vec<usize> = (0..m).filter(|b| !free.contains(b)).collect();
            for base in 0..(1usize << fixed.len()) {
                let mut anchor = 0usize;
                for (t, &bit) in fixed.iter().enumerate() {
                    if base >> t & 1 == 1 {
                        anchor |= 1 << bit;
                    }
                }
                let face: Vec<usize> = (0..(1usize << j))
                    .map(|sub| {
                        let mut v = anchor;
                        for (t, &bit) in free.iter().enumerate() {
                            if sub >> t & 1 == 1 {
                                v |= 1 << bit;
                            }
                        }
                        v
                    })
                    .collect();
                edges.push(face);
            }
        }
        Hypergraph::new(1 << m, edges)
    }

    /// k-vertex faces of the m-orthoplex on 2m vertices: vertices 2i and
    /// 2i+1 are the antipodal pair +e_i, -e_i; faces are the k-sets with no
    /// antipodal pair (k = 2 gives the edge graph, k = m the facets).
    pub fn orthoplex(m: usize, k: usize) -> Result<Hypergraph> {
        if m < 2 || k == 0 || k > m {
            return Err(Error::Invalid(format!("orthoplex needs m >= 2 and 1 <= k <= m, got m = {m}, k = {k}")));
        }
        let edges = combinations(2 * m, k)
            .into_iter()
            .filter(|s| s.windows(2).all(|w| w[0] / 2 != w[1] / 2))
            .collect();
        Hypergraph::new(2 * m, edges)
    }

    /// The m-simplex family: all k-subsets of m vertices.
    pub fn simplex(m: usize, k: usize) -> Result<Hypergraph> {
        complete(m, k)
    }

    /// Honeycomb on a torus of `rows` x `cols` hexagonal cells, with
    /// 2 rows cols vertices. Labels: A(x, y) = 2(y cols + x) and
    /// B(x, y) = A(x, y) + 1; A(x, y) joins B(x, y), B(x-1, y), B(x, y-1).
    pub fn hexagonal_torus(rows: usize, cols: usize) -> Result<Hypergraph> {
        if rows < 3 || cols < 3 {
            return Err(Error::Invalid("hexagonal torus needs at least 3x3 cells".into()));
        }
        let a = |x: usize, y: usize| 2 * (y * cols + x);
        let mut edges = Vec::new();
        for y in 0..rows {
            for x in 0..cols {
                let xm = (x + cols - 1) % cols;
                let ym = (y + rows - 1) % rows;
                edges.push(vec![a(x, y), a(x, y) + 1]);
                edges.push(vec![a(x, y), a(xm, y) + 1]);
                edges.push(vec![a(x, y), a(x, ym) + 1]);
            }
        }
        Hypergraph::new(2 * rows * cols, edges)
    }

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Solid {
        Tetra,
        Octa,
        Cube,
        Icosa,
        Dodeca,
    }

    impl std::str::FromStr for Solid {
        type Err = Error;
        fn from_str(s: &str) -> Result<Self> {
            Ok(match s {
                "tetra" | "tetrahedron" => Solid::Tetra,
                "octa" | "octahedron" => Solid::Octa,
                "cube" => Solid::Cube,
                "icosa" | "icosahedron" => Solid::Icosa,
                "dodeca" | "dodecahedron" => Solid::Dodeca,
                other => return Err(Error::UnknownFamily(other.to_string())),
            })
        }
    }

    /// Vertex coordinates, in label order.
    ///
    /// tetra: (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
    /// octa: +x, -x, +y, -y, +z, -z.
    /// cube: bits (b2 b1 b0) of the label give (x, y, z) = (b2, b1, b0).
    /// icosa: (0, ±1, ±φ) and its cyclic shifts, signs in the order (+,+),
    /// (+,-), (-,+), (-,-).
    /// dodeca: (±1, ±1, ±1) in binary order, then (0, ±1/φ, ±φ) and its
    /// cyclic shifts.
    pub fn solid_vertices(s: Solid) -> Vec<[f64; 3]> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
        let cyc = |base: &[(f64, f64)], u: f64, w: f64| -> Vec<[f64; 3]> {
            let mut out = Vec::new();
            for shift in 0..3 {
                for &(s1, s2) in base {
                    let p = [0.0, s1 * u, s2 * w];
                    out.push([p[(3 - shift) % 3], p[(4 - shift) % 3], p[(5 - shift) % 3]]);
                }
            }
            out
        };
        match s {
            Solid::Tetra => vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]],
            Solid::Octa => vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            Solid::Cube => (0..8).map(|v| [(v >> 2 & 1) as f64, (v >> 1 & 1) as f64, (v & 1) as f64]).collect(),
            Solid::Icosa => cyc(&signs, 1.0, phi),
            Solid::Dodeca => {
                let mut out: Vec<[f64; 3]> = (0..8)
                    .map(|v| {
                        let sg = |b: usize| if v >> b & 1 == 1 { -1.0 } else { 1.0 };
                        [sg(2), sg(1), sg(0)]
                    })
                    .collect();
                out.extend(cyc(&signs, 1.0 / phi, phi));
                out
            }
        }
    }

    fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
        (0..3).map(|i| (a[i] - b[i]).powi(2)).sum()
    }

    pub fn solid_edges(s: Solid) -> Result<Hypergraph> {
        let pts = solid_vertices(s);
        let n = pts.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(dist2(&pts[i], &pts[j]));
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if (dist2(&pts[i], &pts[j]) - best).abs() < 1e-9 {
                    edges.push(vec![i, j]);
                }
            }
        }
        Hypergraph::new(n, edges)
    }

    /// Faces as vertex sets: vertices of maximal dot product with each face
    /// normal direction, found from vertex triples spanning a supporting plane.
    pub fn solid_faces(s: Solid) -> Result<Hypergraph> {
        let pts = solid_vertices(s);
        let n = pts.len();
        let center: Vec<f64> = (0..3).map(|k| pts.iter().map(|p| p[k]).sum::<f64>() / n as f64).collect();
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for t in combinations(n, 3) {
            let (p, q, r) = (pts[t[0]], pts[t[1]], pts[t[2]]);
            let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
            let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
            let mut nrm = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
            let len = (nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]).sqrt();
            if len < 1e-9 {
                continue;
            }
            let off: f64 = (0..3).map(|k| (p[k] - center[k]) * nrm[k]).sum();
            if off < 0.0 {
                nrm = [-nrm[0], -nrm[1], -nrm[2]];
            }
            let h = |x: &[f64; 3]| (0..3).map(|k| (x[k] - p[k]) * nrm[k]).sum::<f64>() / len;
            if pts.iter().all(|x| h(x) <= 1e-9) {
                let face: Vec<usize> = (0..n).filter(|&i| h(&pts[i]).abs() <= 1e-9).collect();
                faces.insert(face);
            }
        }
        Hypergraph::new(n, faces.into_iter().collect())
    }

    /// Parses `name:params` specs, e.g. `cycle:7`, `complete:4,2`,
    /// `icosa:edges`, `hypercube:3,2`, `orthoplex:3,2`, `hex:3,3`,
    /// `bipartite:1,2`, `path:3`.
    pub fn parse(spec: &str) -> Result<Hypergraph> {
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        let nums = || -> Result<Vec<usize>> {
            params
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter `{t}`"))))
                .collect()
        };
        let need = |k: usize| -> Result<Vec<usize>> {
            let v = nums()?;
            if v.len() != k {
                return Err(Error::Parse(format!("family `{name}` takes {k} parameter(s)")));
            }
            Ok(v)
        };
        match name {
            "cycle" => cycle(need(1)?[0]),
            "path" => path(need(1)?[0]),
            "complete" | "complete-hyper" => {
                let v = need(2)?;
                complete(v[0], v[1])
            }
            "bipartite" => {
                let v = need(2)?;
                complete_bipartite(v[0], v[1])
            }
            "hypercube" => {
                let v = need(2)?;
                hypercube(v[0], v[1])
            }
            "orthoplex" => {
                let v = need(2)?;
                orthoplex(v[0], v[1])
            }
            "simplex" => {
                let v = need(2)?;
                simplex(v[0], v[1])
            }
            "hex" => {
                let v = need(2)?;
                hexagonal_torus(v[0], v[1])
            }
            solid => {
                let s: Solid = solid.parse()?;
                match params {
                    "" | "edges" => solid_edges(s),
                    "faces" => solid_faces(s),
                    other => Err(Error::Parse(format!("solids take `edges` or `faces`, got `{other}`"))),
                }
            }
        }
    }
}
